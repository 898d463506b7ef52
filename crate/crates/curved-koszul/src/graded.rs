//! Bigraded vector spaces with labeled bases, tensor products with Koszul
//! signs, suspension, and graded duals.
//!
//! Sign conventions, fixed once and used everywhere:
//!
//! * (f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y);
//! * suspension s has degree +1 and (s⊗s)(u⊗v) = (-1)^{|u|} su⊗sv;
//! * dual pairing ⟨f*(ξ), v⟩ = (-1)^{|f||ξ|} ⟨ξ, f(v)⟩.
//!
//! Weights live on basis labels, never in the signs: all sign computations
//! depend only on homological degrees.

use crate::linalg::Matrix;
use crate::rational::sign;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Symbolic basis label: an atom, a suspension of a label, a tensor word, or a dual.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Atom(String),
    Susp(i32, Box<Label>),
    Word(Vec<Label>),
    Dual(Box<Label>),
}

impl Label {
    pub fn atom(name: impl Into<String>) -> Self {
        Label::Atom(name.into())
    }

    /// Tensor concatenation; nested words flatten so the product is strictly associative.
    pub fn tensor(&self, other: &Label) -> Label {
        let mut parts = Vec::new();
        match self {
            Label::Word(w) => parts.extend(w.iter().cloned()),
            l => parts.push(l.clone()),
        }
        match other {
            Label::Word(w) => parts.extend(w.iter().cloned()),
            l => parts.push(l.clone()),
        }
        Label::Word(parts)
    }

    pub fn susp(self, k: i32) -> Label {
        if k == 0 {
            return self;
        }
        match self {
            Label::Susp(j, inner) => {
                if j + k == 0 {
                    *inner
                } else {
                    Label::Susp(j + k, inner)
                }
            }
            l => Label::Susp(k, Box::new(l)),
        }
    }

    pub fn dual(self) -> Label {
        match self {
            Label::Dual(inner) => *inner,
            l => Label::Dual(Box::new(l)),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => write!(f, "{s}"),
            Label::Susp(1, l) => write!(f, "s{l}"),
            Label::Susp(k, l) => write!(f, "s^{k}{l}"),
            Label::Word(w) => {
                let parts: Vec<String> = w.iter().map(|l| l.to_string()).collect();
                write!(f, "({})", parts.join("⊗"))
            }
            Label::Dual(l) => write!(f, "{l}*"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Finite-dimensional bigraded space with an ordered labeled basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Space {
    labels: Vec<Label>,
    deg: Vec<i64>,
    wt: Vec<u32>,
    index: HashMap<Label, usize>,
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space[")?;
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} (d{},w{})", self.labels[i], self.deg[i], self.wt[i])?;
        }
        write!(f, "]")
    }
}

impl Space {
    pub fn new(items: Vec<(Label, i64, u32)>) -> Self {
        let mut labels = Vec::with_capacity(items.len());
        let mut deg = Vec::with_capacity(items.len());
        let mut wt = Vec::with_capacity(items.len());
        let mut index = HashMap::with_capacity(items.len());
        for (l, d, w) in items {
            let i = labels.len();
            let prev = index.insert(l.clone(), i);
            assert!(prev.is_none(), "duplicate basis label {l}");
            labels.push(l);
            deg.push(d);
            wt.push(w);
        }
        Space { labels, deg, wt, index }
    }

    /// The ground field k: one basis label "1" in degree 0, weight 0.
    pub fn scalar() -> Self {
        Space::new(vec![(Label::atom("1"), 0, 0)])
    }

    /// Generator space V: each named generator in the given degree, weight 1.
    pub fn generators(gens: &[(String, i64)]) -> Self {
        Space::new(gens.iter().map(|(n, d)| (Label::atom(n.clone()), *d, 1)).collect())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn deg(&self, i: usize) -> i64 {
        self.deg[i]
    }

    pub fn wt(&self, i: usize) -> u32 {
        self.wt[i]
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Label, i64, u32)> {
        (0..self.dim()).map(move |i| (i, &self.labels[i], self.deg[i], self.wt[i]))
    }
}

/// Tensor product with basis the ordered pairs in a-major order;
/// degrees and weights add.
pub fn tensor(a: &Space, b: &Space) -> Space {
    let mut items = Vec::with_capacity(a.dim() * b.dim());
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            items.push((
                a.label(i).tensor(b.label(j)),
                a.deg(i) + b.deg(j),
                a.wt(i) + b.wt(j),
            ));
        }
    }
    Space::new(items)
}

/// n-fold tensor power; n = 0 gives the scalar space and n = 1 the space itself.
pub fn tensor_power(a: &Space, n: usize) -> Space {
    if n == 0 {
        return Space::scalar();
    }
    let mut out = a.clone();
    for _ in 1..n {
        out = tensor(&out, a);
    }
    out
}

/// Degree shift: degrees rise by k, weights unchanged, labels gain markers.
pub fn shift(a: &Space, k: i32) -> Space {
    Space::new(
        (0..a.dim())
            .map(|i| (a.label(i).clone().susp(k), a.deg(i) + k as i64, a.wt(i)))
            .collect(),
    )
}

/// Graded dual: degrees negate, weights are preserved.
pub fn graded_dual(a: &Space) -> Space {
    Space::new(
        (0..a.dim())
            .map(|i| (a.label(i).clone().dual(), -a.deg(i), a.wt(i)))
            .collect(),
    )
}

/// A degree/weight-homogeneous linear map between bigraded spaces.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub src: Arc<Space>,
    pub tgt: Arc<Space>,
    pub deg_shift: i64,
    pub wt_shift: i64,
    pub matrix: Matrix,
}

impl GradedMap {
    pub fn new(src: Arc<Space>, tgt: Arc<Space>, deg_shift: i64, wt_shift: i64, matrix: Matrix) -> Self {
        assert_eq!(matrix.cols(), src.dim());
        assert_eq!(matrix.rows(), tgt.dim());
        GradedMap { src, tgt, deg_shift, wt_shift, matrix }
    }

    pub fn zero(src: Arc<Space>, tgt: Arc<Space>, deg_shift: i64, wt_shift: i64) -> Self {
        let m = Matrix::zero(tgt.dim(), src.dim());
        GradedMap::new(src, tgt, deg_shift, wt_shift, m)
    }

    pub fn identity(space: Arc<Space>) -> Self {
        let m = Matrix::identity(space.dim());
        GradedMap::new(space.clone(), space, 0, 0, m)
    }

    /// Check that every nonzero entry lands on a label with the declared shifts.
    pub fn validate(&self) -> Result<(), String> {
        for c in 0..self.src.dim() {
            for r in 0..self.tgt.dim() {
                if self.matrix.get(r, c).is_zero() {
                    continue;
                }
                if self.tgt.deg(r) != self.src.deg(c) + self.deg_shift {
                    return Err(format!(
                        "entry ({},{}) violates degree shift: {} -> {}, shift {}",
                        self.tgt.label(r),
                        self.src.label(c),
                        self.src.deg(c),
                        self.tgt.deg(r),
                        self.deg_shift
                    ));
                }
                if self.tgt.wt(r) as i64 != self.src.wt(c) as i64 + self.wt_shift {
                    return Err(format!(
                        "entry ({},{}) violates weight shift",
                        self.tgt.label(r),
                        self.src.label(c)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn compose(&self, first: &GradedMap) -> GradedMap {
        // self ∘ first
        assert_eq!(first.tgt.dim(), self.src.dim(), "composition shape mismatch");
        GradedMap::new(
            first.src.clone(),
            self.tgt.clone(),
            self.deg_shift + first.deg_shift,
            self.wt_shift + first.wt_shift,
            self.matrix.mul(&first.matrix),
        )
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.deg_shift, other.deg_shift);
        GradedMap::new(
            self.src.clone(),
            self.tgt.clone(),
            self.deg_shift,
            self.wt_shift,
            self.matrix.add(&other.matrix),
        )
    }
}

/// (f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y), as a matrix over the pair bases.
pub fn tensor_map(f: &GradedMap, g: &GradedMap) -> GradedMap {
    let src = tensor(&f.src, &g.src);
    let tgt = tensor(&f.tgt, &g.tgt);
    let mut m = Matrix::zero(tgt.dim(), src.dim());
    let g_cols = g.src.dim();
    let g_rows = g.tgt.dim();
    let ft = f.matrix.transpose();
    let gt = g.matrix.transpose();
    for fx in 0..f.src.dim() {
        let s = sign(g.deg_shift * f.src.deg(fx));
        for gy in 0..g_cols {
            let col = fx * g_cols + gy;
            for (fr, fv) in ft.row(fx) {
                for (gr, gv) in gt.row(gy) {
                    let row = fr * g_rows + gr;
                    m.add_to(row, col, &(&(fv * gv) * &s));
                }
            }
        }
    }
    GradedMap::new(
        Arc::new(src),
        Arc::new(tgt),
        f.deg_shift + g.deg_shift,
        f.wt_shift + g.wt_shift,
        m,
    )
}

/// Dual map under ⟨f*(ξ), v⟩ = (-1)^{|f||ξ|}⟨ξ, f(v)⟩: transpose with signs
/// (-1)^{|f|·|w|} on the column belonging to the target label w of f.
pub fn dual_map(f: &GradedMap) -> GradedMap {
    let src = graded_dual(&f.tgt);
    let tgt = graded_dual(&f.src);
    let mut m = Matrix::zero(tgt.dim(), src.dim());
    for w in 0..f.tgt.dim() {
        let s = sign(f.deg_shift * f.tgt.deg(w));
        for v in 0..f.src.dim() {
            let entry = f.matrix.get(w, v);
            if !entry.is_zero() {
                m.add_to(v, w, &(&entry * &s));
            }
        }
    }
    GradedMap::new(
        Arc::new(src),
        Arc::new(tgt),
        f.deg_shift,
        -f.wt_shift,
        m,
    )
}

/// The canonical identification V → V**: ι(v) = (-1)^{|v|} (v*)*.
pub fn double_dual_identification(a: &Space) -> GradedMap {
    let tgt = graded_dual(&graded_dual(a));
    let mut m = Matrix::zero(tgt.dim(), a.dim());
    for i in 0..a.dim() {
        m.set(i, i, sign(a.deg(i)));
    }
    GradedMap::new(Arc::new(a.clone()), Arc::new(tgt), 0, 0, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rat;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn space(names: &[(&str, i64)]) -> Space {
        Space::new(names.iter().map(|(n, d)| (Label::atom(*n), *d, 1)).collect())
    }

    fn random_map(rng: &mut StdRng, src: &Space, tgt: &Space, deg_shift: i64) -> GradedMap {
        let mut m = Matrix::zero(tgt.dim(), src.dim());
        for c in 0..src.dim() {
            for r in 0..tgt.dim() {
                if tgt.deg(r) == src.deg(c) + deg_shift && rng.gen_bool(0.7) {
                    m.set(r, c, Rat::from_int(rng.gen_range(-3i64..=3)));
                }
            }
        }
        GradedMap::new(Arc::new(src.clone()), Arc::new(tgt.clone()), deg_shift, 0, m)
    }

    #[test]
    fn tensor_unit_wraps_labels() {
        let x = space(&[("a", 0), ("b", 2)]);
        let t = tensor(&Space::scalar(), &x);
        assert_eq!(t.dim(), 2);
        assert_eq!(t.deg(1), 2);
        assert_eq!(t.label(0).to_string(), "(1⊗a)");
    }

    #[test]
    fn tensor_of_two_dim_spaces() {
        let x = space(&[("a", 0), ("b", 0)]);
        let t = tensor(&x, &x);
        assert_eq!(t.dim(), 4);
        assert!((0..4).all(|i| t.deg(i) == 0));
        assert!((0..4).all(|i| t.wt(i) == 2));
    }

    #[test]
    fn tensor_dim_multiplies() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..5 {
            let na = rng.gen_range(1usize..5);
            let nb = rng.gen_range(1usize..5);
            let a = Space::new((0..na).map(|i| (Label::atom(format!("a{i}")), 0, 1)).collect());
            let b = Space::new((0..nb).map(|i| (Label::atom(format!("b{i}")), 0, 1)).collect());
            assert_eq!(tensor(&a, &b).dim(), na * nb);
        }
    }

    #[test]
    fn tensor_strictly_associative_on_labels() {
        let a = space(&[("a", 0)]);
        let b = space(&[("b", 1)]);
        let c = space(&[("c", 2)]);
        let left = tensor(&tensor(&a, &b), &c);
        let right = tensor(&a, &tensor(&b, &c));
        assert_eq!(left, right);
    }

    #[test]
    fn tensor_map_of_identities() {
        let a = space(&[("a", 0), ("b", 1)]);
        let id = GradedMap::identity(Arc::new(a.clone()));
        let t = tensor_map(&id, &id);
        assert_eq!(t.matrix, Matrix::identity(4));
    }

    #[test]
    fn tensor_map_sign_rule() {
        // f = id on a degree-1 one-dim space, g of degree -1: (id⊗g)(x⊗y) = -x⊗g(y)
        let x = space(&[("x", 1)]);
        let y = space(&[("y", 0)]);
        let z = space(&[("z", -1)]);
        let idx = GradedMap::identity(Arc::new(x.clone()));
        let mut gm = Matrix::zero(1, 1);
        gm.set(0, 0, Rat::one());
        let g = GradedMap::new(Arc::new(y), Arc::new(z), -1, 0, gm);
        let t = tensor_map(&idx, &g);
        assert_eq!(t.matrix.get(0, 0), -Rat::one());
    }

    #[test]
    fn interchange_law() {
        // (f⊗id)∘(id⊗g) = (-1)^{|f||g|} (id⊗g)∘(f⊗id)
        let mut rng = StdRng::seed_from_u64(11);
        for (df, dg) in [(-1i64, -1i64), (-1, 1), (2, -1), (1, 1)] {
            let u = space(&[("u0", 0), ("u1", 1)]);
            let v = space(&[("v0", 0), ("v1", 1), ("v2", 2)]);
            let up = space(&[("p0", df), ("p1", 1 + df)]);
            let vp = space(&[("q0", dg), ("q1", 1 + dg), ("q2", 2 + dg)]);
            let f = random_map(&mut rng, &u, &up, df);
            let g = random_map(&mut rng, &v, &vp, dg);
            let idu = GradedMap::identity(Arc::new(u.clone()));
            let idvp = GradedMap::identity(Arc::new(vp.clone()));
            let idup = GradedMap::identity(Arc::new(up.clone()));
            let idv = GradedMap::identity(Arc::new(v.clone()));
            let left = tensor_map(&f, &idvp).compose(&tensor_map(&idu, &g));
            let right = tensor_map(&idup, &g).compose(&tensor_map(&f, &idv));
            assert_eq!(left.matrix, right.matrix.scale(&sign(df * dg)), "df={df} dg={dg}");
        }
    }

    #[test]
    fn shift_degrees_and_weights() {
        let v = space(&[("v", 3)]);
        let sv = shift(&v, 1);
        assert_eq!(sv.deg(0), 4);
        assert_eq!(sv.wt(0), 1);
        assert_eq!(sv.label(0).to_string(), "sv");
        let back = shift(&shift(&v, 1), -1);
        assert_eq!(back, v);
    }

    #[test]
    fn dual_negates_degrees() {
        let v = space(&[("v", 2)]);
        let d = graded_dual(&v);
        assert_eq!(d.deg(0), -2);
        assert_eq!(d.wt(0), 1);
    }

    #[test]
    fn dual_of_identity() {
        let v = space(&[("a", 0), ("b", 3)]);
        let id = GradedMap::identity(Arc::new(v));
        assert_eq!(dual_map(&id).matrix, Matrix::identity(2));
    }

    #[test]
    fn dual_composition_sign() {
        let mut rng = StdRng::seed_from_u64(29);
        for (df, dg) in [(-1i64, -1i64), (1, -1), (-2, 1)] {
            let u = space(&[("u0", 0), ("u1", 1)]);
            let v = space(&[("v0", df), ("v1", 1 + df)]);
            let w = space(&[("w0", df + dg), ("w1", 1 + df + dg)]);
            let f = random_map(&mut rng, &u, &v, df);
            let g = random_map(&mut rng, &v, &w, dg);
            let gf = g.compose(&f);
            let lhs = dual_map(&gf);
            let rhs = dual_map(&f).compose(&dual_map(&g));
            assert_eq!(lhs.matrix, rhs.matrix.scale(&sign(df * dg)), "df={df} dg={dg}");
        }
    }

    #[test]
    fn double_dual_is_canonical() {
        let mut rng = StdRng::seed_from_u64(41);
        let u = space(&[("u0", 0), ("u1", 1)]);
        let v = space(&[("v0", -1), ("v1", 0)]);
        let f = random_map(&mut rng, &u, &v, -1);
        let ff = dual_map(&dual_map(&f));
        let iota_u = double_dual_identification(&u);
        let iota_v = double_dual_identification(&v);
        // f** ∘ ι_U = ι_V ∘ f
        assert_eq!(ff.matrix.mul(&iota_u.matrix), iota_v.matrix.mul(&f.matrix));
    }
}
