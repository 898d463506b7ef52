//! Command dispatch: every CLI subcommand maps to one runner function that
//! assembles the needed objects and returns a `Report`.

use crate::cobar_bar;
use crate::commutative;
use crate::cyclic;
use crate::document::Document;
use crate::koszul_complex;
use crate::koszul_dual;
use crate::qlc;
use crate::report::Report;
use crate::strategy::Strategy;

pub type RunResult = Result<Report, Box<dyn std::error::Error>>;

fn dims_line(dims: &[usize]) -> String {
    let parts: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub fn run_validate(doc: &Document) -> RunResult {
    let mut report = Report::new("validate", doc.name());
    match doc {
        Document::Associative(p) => {
            let v = qlc::validate(p)?;
            report.push(
                "qlca1-minimality",
                v.minimality_witness.is_none(),
                v.minimality_witness
                    .as_ref()
                    .map(|w| format!("witness {w:?}"))
                    .unwrap_or_default(),
            );
            report.push(
                "qlca2-weak-consistency",
                v.weak_consistency_witness.is_none(),
                v.weak_consistency_witness
                    .as_ref()
                    .map(|w| format!("witness {w:?}"))
                    .unwrap_or_default(),
            );
        }
        Document::Commutative(p) => {
            match commutative::validate_commutative(p) {
                Ok(()) => {
                    report.push("cqlca1-minimality", true, "");
                    report.push("cqlca2-weak-consistency", true, "");
                }
                Err(e) => report.push("commutative-validation", false, e.to_string()),
            }
            // the associative lift must validate as well
            let lifted = p.to_associative();
            let v = qlc::validate(&lifted)?;
            report.push("lift-validates", v.is_valid(), "");
        }
    }
    Ok(report)
}

pub fn run_split(doc: &Document) -> RunResult {
    let mut report = Report::new("split", doc.name());
    let p = doc.associative();
    qlc::validate(&p)?.into_result()?;
    let s = qlc::split(&p)?;
    report.push("graph-split", true, format!("dim qR = {}", s.q_r.dim()));
    let rebuilt = crate::linalg::Matrix::from_rows(s.reconstruct_relations(), p.ambient_low_dim());
    let original = crate::linalg::Matrix::from_rows(p.relation_vectors(), p.ambient_low_dim());
    let same = crate::linalg::Subspace::from_span(rebuilt) == crate::linalg::Subspace::from_span(original);
    report.push("graph-reconstructs-R", same, "");
    report.push(
        "phi",
        true,
        format!("{} nonzero entries", s.phi.nnz()),
    );
    report.push(
        "theta",
        true,
        format!("{} nonzero entries", s.theta.nnz()),
    );
    Ok(report)
}

pub fn run_dual(doc: &Document, w_max: usize) -> RunResult {
    let mut report = Report::new("dual", doc.name());
    report.param("max-weight", w_max);
    let p = doc.associative();
    let s = qlc::split(&p)?;
    let c = koszul_dual::curved_structure(&s, w_max)?;
    let dims: Vec<usize> = (0..=w_max).map(|n| c.dim(n)).collect();
    report.push("components", true, format!("dims {}", dims_line(&dims)));
    report.push("coderivation-stays-inside", true, "");
    Ok(report)
}

pub fn run_axioms(doc: &Document, w_max: usize) -> RunResult {
    let mut report = Report::new("axioms", doc.name());
    report.param("max-weight", w_max);
    let p = doc.associative();
    let s = qlc::split(&p)?;
    let c = koszul_dual::curved_structure(&s, w_max)?;
    for check in koszul_dual::verify_axioms(&s, &c).checks {
        report.push(check.id, check.pass, check.detail);
    }
    let (_alg, dual_report) = koszul_dual::dual_curved_algebra(&c);
    for check in dual_report.checks {
        report.push(check.id, check.pass, check.detail);
    }
    Ok(report)
}

pub fn run_koszul_cert(doc: &Document, w_max: usize, strategy: Strategy) -> RunResult {
    let mut report = Report::new("koszul-cert", doc.name());
    report.param("max-weight", w_max);
    let p = doc.associative();
    let s = qlc::split(&p)?;
    let cert = koszul_dual::koszulness_certificate(&s, w_max, strategy);
    for slice in &cert.slices {
        report.push(
            format!("weight-{}", slice.weight),
            slice.pass,
            format!("homology {} (qA dim {})", dims_line(&slice.homology), slice.qa_dim),
        );
    }
    // PBW cross-check when the certificate passes
    if cert.all_pass() {
        let algebra = qlc::filtered_basis(&p, w_max);
        let mut ok = true;
        let mut sums = Vec::new();
        for n in 0..=w_max {
            let lhs = algebra.dim_filtration(n);
            let rhs: usize = (0..=n).map(|m| s.qa_component(m).dim()).sum();
            sums.push(lhs);
            ok &= lhs == rhs;
        }
        report.push("pbw-cross-check", ok, format!("dim F≤n A = {}", dims_line(&sums)));
    } else {
        report.skip("pbw-cross-check", "certificate failed");
    }
    Ok(report)
}

pub fn run_cobar(doc: &Document, n_max: usize) -> RunResult {
    let mut report = Report::new("cobar", doc.name());
    report.param("max-weight", n_max);
    let p = doc.associative();
    let s = qlc::split(&p)?;
    let c = koszul_dual::curved_structure(&s, n_max)?;
    let cx = cobar_bar::cobar(&c, n_max, n_max)?;
    report.push("cobar-d-squared", true, format!("{} words", cx.dim()));
    for (name, ok) in cobar_bar::cobar_bullet_identities(&cx) {
        report.push(format!("cobar-{name}"), ok, "");
    }
    let (alg, _) = koszul_dual::dual_curved_algebra(&c);
    let b = cobar_bar::bar(&alg, n_max)?;
    report.push("bar-d-squared", true, format!("{} words", b.dim()));
    for (name, ok) in cobar_bar::bar_bullet_identities(&b) {
        report.push(format!("bar-{name}"), ok, "");
    }
    // Maurer-Cartan for κ
    let algebra = qlc::filtered_basis(&p, n_max);
    let mc = cobar_bar::verify_mc(&s, &c, &algebra);
    report.push("maurer-cartan", mc.all_pass(), "");
    Ok(report)
}

pub fn run_resolve(doc: &Document, n_max: usize) -> RunResult {
    let mut report = Report::new("resolve", doc.name());
    report.param("truncate", n_max);
    let p = doc.associative();
    let s = qlc::split(&p)?;
    let c = koszul_dual::curved_structure(&s, n_max)?;
    let algebra = qlc::filtered_basis(&p, n_max);
    let rep = koszul_complex::resolution_check(&c, &algebra, n_max)?;
    report.push(
        "h0-equals-filtered-algebra",
        rep.homology.first().copied() == Some(rep.dim_filtered_algebra),
        format!("H₀ = {}, dim F≤N A = {}", rep.homology[0], rep.dim_filtered_algebra),
    );
    report.push(
        "higher-homology-vanishes",
        rep.homology[1..].iter().all(|&x| x == 0),
        format!("dims {}", dims_line(&rep.homology)),
    );
    report.push("xi-surjective", rep.xi_rank == rep.dim_filtered_algebra, "");
    report.push("xi-kills-boundaries", rep.xi_vanishes_on_boundaries, "");
    // g_κ quasi-isomorphism on the cobar side
    let gk = cobar_bar::gkappa_quasi_iso(&s, &c, &algebra, n_max)?;
    report.push(
        "gkappa-quasi-iso",
        gk.pass,
        format!("H₀ = {:?}, rank g_κ = {}", gk.homology.get(&0), gk.gkappa_rank_on_cycles),
    );
    Ok(report)
}

pub fn run_hh(doc: &Document, n_max: usize, method: koszul_complex::HochschildMethod, strategy: Strategy) -> RunResult {
    let mut report = Report::new("hh", doc.name());
    report.param("truncate", n_max);
    report.param(
        "method",
        match method {
            koszul_complex::HochschildMethod::Koszul => "koszul",
            koszul_complex::HochschildMethod::Bar => "bar",
        },
    );
    let p = doc.associative();
    let s = qlc::split(&p)?;
    let c = koszul_dual::curved_structure(&s, n_max)?;
    let rep = koszul_complex::hochschild_stable(&s, &c, &p, n_max, method, strategy)?;
    for (&t, &stable) in &rep.stable {
        let raw_b = rep.raw_big.get(&t).copied().unwrap_or(0);
        let raw_s = rep.raw_small.get(&t).copied().unwrap_or(0);
        report.push(
            format!("hh-{t}"),
            true,
            format!("stable {stable} (raw {raw_s} at N−2, {raw_b} at N)"),
        );
    }
    Ok(report)
}

pub fn run_hc(doc: &Document, kind: cyclic::Kind, w_max: usize, n_max: i64, strategy: Strategy) -> RunResult {
    let mut report = Report::new("hc", doc.name());
    report.param("max-weight", w_max);
    report.param("n-max", n_max);
    let p = doc.associative();
    let s = qlc::split(&p)?;
    let c = koszul_dual::curved_structure(&s, w_max)?;
    let (alg, _) = koszul_dual::dual_curved_algebra(&c);
    let (lo, hi) = if kind.is_dual() { (-n_max, 0) } else { (0, n_max) };
    let dims = cyclic::hc_dims(&alg, kind, w_max, lo, hi, strategy)?;
    for (n, d) in &dims {
        report.push(format!("n={n}"), true, format!("dim {d}"));
    }
    // independent routes where available
    let words = cyclic::cyclic_words(&alg, w_max)?;
    match kind {
        cyclic::Kind::Plus => {
            let other = cyclic::hc_plus_cokernel_route(&words, lo, hi, strategy)?;
            report.push("cokernel-route-agrees", other == dims, "");
        }
        cyclic::Kind::Minus => {
            let (other, cocomm) = cyclic::hc_minus_kernel_route(&words, lo, hi, strategy)?;
            report.push("kernel-route-agrees", other == dims, "");
            report.push("cocommutator-subspace-matches", cocomm, "");
        }
        _ => {}
    }
    for (id, ok) in words.lemma_identities() {
        report.push(id, ok, "");
    }
    Ok(report)
}

pub fn run_ft_compare(doc: &Document, n_max: i64, strategy: Strategy) -> RunResult {
    let mut report = Report::new("ft-compare", doc.name());
    report.param("n-max", n_max);
    let p = doc.associative();
    let s = qlc::split(&p)?;
    let w_max = (n_max + 1).max(2) as usize;
    let c = koszul_dual::curved_structure(&s, w_max)?;
    let (alg, _) = koszul_dual::dual_curved_algebra(&c);
    let rep = cyclic::ft_compare(&c, &alg, w_max, n_max, strategy)?;
    for ((n, a), (_, b)) in rep.a_side.iter().zip(rep.dual_side.iter()) {
        report.push(
            format!("n={n}"),
            a == b,
            format!("HC̄_n(A) = {a} vs HC̄₋^(−n)((qA)!) = {b}"),
        );
    }
    report.push("structural-iso", rep.structural_iso, "X⁺ ≅ dual-minus entrywise");
    report.push("per-vanishes", rep.per_vanishes, "");
    report.push("les-consistent", rep.les_consistent, "");
    if let Some(ok) = rep.remark_iso_match {
        report.push("remark-iso", ok, "HC̄_n(A) ≅ HC̄^(−1−n) with per vanishing");
    } else {
        report.skip("remark-iso", "per-theory does not vanish in the window");
    }
    Ok(report)
}

pub fn run_lie(doc: &Document, w_max: usize) -> RunResult {
    let mut report = Report::new("lie", doc.name());
    report.param("max-weight", w_max);
    let p = doc.commutative()?;
    commutative::validate_commutative(&p)?;
    let ld = commutative::lie_dual(&p, w_max)?;
    let dims: Vec<usize> = (1..=w_max).map(|n| ld.lie.dim(n)).collect();
    report.push("lie-dual-components", true, format!("dims {}", dims_line(&dims)));
    for (name, ok) in ld.lie.verify_axioms() {
        report.push(name, ok, "");
    }
    let cb = commutative::lie_cobar(&ld.lie, w_max)?;
    report.push("lie-cobar-d-squared", true, format!("{} monomials", cb.monos.len()));
    for (name, ok) in commutative::lie_cobar_bullets(&cb) {
        report.push(format!("bullet: {name}"), ok, "");
    }
    let res = commutative::c_resolution_check(&p, &ld.lie, w_max)?;
    report.push(
        "resolution-h0",
        res.h0 == res.dim_algebra && res.gkappa_rank == res.dim_algebra,
        format!("H₀ = {}, dim F≤N A = {}", res.h0, res.dim_algebra),
    );
    report.push("resolution-h1-vanishes", res.h1 == 0, format!("H₁ = {}", res.h1));
    Ok(report)
}

pub fn run_uc_compare(doc: &Document) -> RunResult {
    let mut report = Report::new("uc-compare", doc.name());
    let p = doc.commutative()?;
    let rep = commutative::uc_comparison(&p, 4)?;
    for (n, assoc, pbw) in &rep.copbw {
        report.push(
            format!("weight-{n}"),
            assoc == pbw,
            format!("dim (qA⁺)¡ = {assoc}, co-PBW count = {pbw}"),
        );
    }
    for (name, ok) in &rep.weight3_conditions {
        report.push(name.clone(), *ok, "");
    }
    Ok(report)
}
