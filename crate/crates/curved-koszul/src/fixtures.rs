//! Bundled example presentations used by the CLI, the test suite, and the
//! acceptance run.

use crate::qlc::{QlcPresentation, Relation};
use crate::rational::Rat;

fn rel(d: usize, constant: i64, linear: &[(usize, i64)], quadratic: &[(usize, usize, i64)]) -> Relation {
    let mut l = vec![Rat::zero(); d];
    for &(i, c) in linear {
        l[i] = Rat::from_int(c);
    }
    let mut q = vec![Rat::zero(); d * d];
    for &(i, j, c) in quadratic {
        q[i * d + j] = Rat::from_int(c);
    }
    Relation { constant: Rat::from_int(constant), linear: l, quadratic: q }
}

fn gens(names: &[&str]) -> Vec<(String, i64)> {
    names.iter().map(|n| (n.to_string(), 0)).collect()
}

/// First Weyl algebra: T(x,y)/(yx − xy − 1).
pub fn weyl() -> QlcPresentation {
    QlcPresentation {
        name: "weyl".into(),
        gens: gens(&["x", "y"]),
        relations: vec![rel(2, -1, &[], &[(1, 0, 1), (0, 1, -1)])],
    }
}

/// Free algebra on two generators.
pub fn tensor2() -> QlcPresentation {
    QlcPresentation { name: "tensor2".into(), gens: gens(&["x", "y"]), relations: vec![] }
}

/// Sym(Q²) presented as a quadratic algebra: T(x,y)/(yx − xy).
pub fn sym2() -> QlcPresentation {
    QlcPresentation {
        name: "sym2".into(),
        gens: gens(&["x", "y"]),
        relations: vec![rel(2, 0, &[], &[(1, 0, 1), (0, 1, -1)])],
    }
}

/// U(g) for the nonabelian 2-dim Lie algebra [x,y] = y: T(x,y)/(xy − yx − y).
pub fn ug_nonabelian() -> QlcPresentation {
    QlcPresentation {
        name: "ug-nonabelian".into(),
        gens: gens(&["x", "y"]),
        relations: vec![rel(2, 0, &[(1, -1)], &[(0, 1, 1), (1, 0, -1)])],
    }
}

/// Enveloping algebra of an abelian 2-dim "unital" Lie algebra with a
/// nontrivial scalar 2-cocycle: T(x,y)/(xy − yx + 1). The relation spans the
/// same ideal as the Weyl relation, so this is the Weyl algebra presented
/// with the opposite sign; here θ(xy − yx) = +1.
pub fn heisenberg_unital() -> QlcPresentation {
    QlcPresentation {
        name: "heisenberg-unital".into(),
        gens: gens(&["x", "y"]),
        relations: vec![rel(2, 1, &[], &[(0, 1, 1), (1, 0, -1)])],
    }
}

/// Polynomial ring in one variable, k[x] = T(x).
pub fn poly1() -> QlcPresentation {
    QlcPresentation { name: "poly1".into(), gens: gens(&["x"]), relations: vec![] }
}

/// Dual numbers k[e]/(e²).
pub fn dualnumbers() -> QlcPresentation {
    QlcPresentation {
        name: "dualnumbers".into(),
        gens: gens(&["e"]),
        relations: vec![rel(1, 0, &[], &[(0, 0, 1)])],
    }
}

/// All bundled associative fixtures by name.
pub fn associative_by_name(name: &str) -> Option<QlcPresentation> {
    match name {
        "weyl" => Some(weyl()),
        "tensor2" => Some(tensor2()),
        "sym2" => Some(sym2()),
        "ug-nonabelian" => Some(ug_nonabelian()),
        "heisenberg-unital" => Some(heisenberg_unital()),
        "poly1" => Some(poly1()),
        "dualnumbers" => Some(dualnumbers()),
        "non-koszul" => Some(non_koszul()),
        _ => None,
    }
}

pub const ASSOCIATIVE_FIXTURES: &[&str] = &[
    "weyl",
    "tensor2",
    "sym2",
    "ug-nonabelian",
    "heisenberg-unital",
    "poly1",
    "dualnumbers",
];

/// Seeded non-Koszul quadratic presentation: the certificate fails at
/// weight 4 with two-dimensional homology in position 2.
pub fn non_koszul() -> QlcPresentation {
    QlcPresentation {
        name: "non-koszul".into(),
        gens: gens(&["x", "y", "z"]),
        relations: vec![
            rel(3, 0, &[], &[(0, 1, 1)]),
            rel(3, 0, &[], &[(1, 2, 1), (0, 0, 1)]),
        ],
    }
}

use crate::commutative::{CommRelation, CommutativePresentation};

/// k[x,y]/(xy − 1) as a commutative presentation.
pub fn laurent() -> CommutativePresentation {
    CommutativePresentation {
        name: "laurent".into(),
        gens: vec!["x".into(), "y".into()],
        relations: vec![CommRelation {
            constant: -Rat::one(),
            linear: vec![Rat::zero(), Rat::zero()],
            quadratic: vec![Rat::zero(), Rat::one(), Rat::zero()],
        }],
    }
}

/// Sym(Q²) as a commutative presentation with no relations.
pub fn sym2_commutative() -> CommutativePresentation {
    CommutativePresentation {
        name: "sym2-commutative".into(),
        gens: vec!["x".into(), "y".into()],
        relations: vec![],
    }
}

pub fn commutative_by_name(name: &str) -> Option<CommutativePresentation> {
    match name {
        "laurent" => Some(laurent()),
        "sym2-commutative" => Some(sym2_commutative()),
        _ => None,
    }
}

pub const COMMUTATIVE_FIXTURES: &[&str] = &["laurent", "sym2-commutative"];
