//! Cobar construction of coaugmented curved DG coalgebras, bar construction
//! of augmented curved DG algebras, the convolution curved algebra, the
//! canonical curved twisting morphism κ, and the truncated quasi-isomorphism
//! induced by κ.
//!
//! Words are truncated by total weight. Every letter carries weight ≥ 1, so
//! word length is bounded by weight and the weight-≤N span is an honest
//! subcomplex on the cobar side (no differential raises weight there) and an
//! honest quotient complex on the bar side (no differential lowers it).

use crate::graded::Label;
use crate::koszul_dual::{CurvedAlgebra, CurvedCoalgebra};
use crate::linalg::{DegComplex, Matrix, SparseVec};
use crate::qlc::{FilteredAlgebra, QlcSplit};
use crate::rational::{sign, Rat};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum CobarBarError {
    #[error("(d0+d1+d2)² ≠ 0: sign convention broken at word {witness}")]
    SignConvention { witness: String },
    #[error("length bound {l} below weight bound {n}: length-truncation is not a complex")]
    LengthBelowWeight { l: usize, n: usize },
}

/// A letter of the cobar word algebra: one basis element of C̄, desuspended.
#[derive(Debug, Clone)]
pub struct CobarLetter {
    pub weight: u32,
    pub comp_index: usize,
    /// degree in C (before desuspension); the letter itself has degree coalg_deg − 1
    pub coalg_deg: i64,
    pub label: Label,
}

pub type LetterWord = Vec<u16>;

fn enumerate_weighted_words(letter_wts: &[u32], n_max: u32) -> Vec<LetterWord> {
    let mut out = vec![LetterWord::new()];
    let mut frontier = vec![(LetterWord::new(), 0u32)];
    while let Some((w, wt)) = frontier.pop() {
        for (l, &lw) in letter_wts.iter().enumerate() {
            let nw = wt + lw;
            if nw <= n_max {
                let mut word = w.clone();
                word.push(l as u16);
                out.push(word.clone());
                frontier.push((word, nw));
            }
        }
    }
    out.sort_by(|a, b| {
        let wa: u32 = a.iter().map(|&l| letter_wts[l as usize]).sum();
        let wb: u32 = b.iter().map(|&l| letter_wts[l as usize]).sum();
        wa.cmp(&wb).then(a.len().cmp(&b.len())).then(a.cmp(b))
    });
    out
}

/// Cobar construction Ω(C) = T(C̄[-1]) truncated to total weight ≤ n_max, with
/// the three derivations d0 (from h), d1 (from d), d2 (from the reduced
/// comultiplication) as exact matrices on the word basis.
#[derive(Debug, Clone)]
pub struct CobarComplex {
    pub n_max: usize,
    pub letters: Vec<CobarLetter>,
    pub words: Vec<LetterWord>,
    pub index: HashMap<LetterWord, usize>,
    pub d0: Matrix,
    pub d1: Matrix,
    pub d2: Matrix,
}

impl CobarComplex {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn word_weight(&self, w: &LetterWord) -> u32 {
        w.iter().map(|&l| self.letters[l as usize].weight).sum()
    }

    /// Homological degree of a word: Σ (coalg_deg − 1) over its letters.
    pub fn word_degree(&self, w: &LetterWord) -> i64 {
        w.iter().map(|&l| self.letters[l as usize].coalg_deg - 1).sum()
    }

    pub fn total(&self) -> Matrix {
        self.d0.add(&self.d1).add(&self.d2)
    }

    pub fn word_label(&self, w: &LetterWord) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = w
            .iter()
            .map(|&l| format!("s⁻¹{}", self.letters[l as usize].label))
            .collect();
        parts.join("⊗")
    }

    /// The word complex graded by homological degree.
    pub fn deg_complex(&self) -> DegComplex {
        deg_complex_of(&self.total(), &(0..self.dim()).map(|i| self.word_degree(&self.words[i])).collect::<Vec<_>>())
    }
}

/// Group a degree -1 endomorphism of a based space into a DegComplex.
pub fn deg_complex_of(total: &Matrix, degs: &[i64]) -> DegComplex {
    let mut by_deg: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &t) in degs.iter().enumerate() {
        by_deg.entry(t).or_default().push(i);
    }
    let pos: HashMap<usize, usize> = by_deg
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(k, &i)| (i, k)))
        .collect();
    let mut dims = BTreeMap::new();
    for (&t, v) in &by_deg {
        dims.insert(t, v.len());
    }
    let mut diffs = BTreeMap::new();
    for (&t, cols) in &by_deg {
        let tgt_dim = by_deg.get(&(t - 1)).map_or(0, |v| v.len());
        let mut m = Matrix::zero(tgt_dim, cols.len());
        for (cpos, &ci) in cols.iter().enumerate() {
            for r in 0..total.rows() {
                let v = total.get(r, ci);
                if !v.is_zero() {
                    assert_eq!(degs[r], t - 1, "differential is not homogeneous of degree -1");
                    m.set(pos[&r], cpos, v);
                }
            }
        }
        diffs.insert(t, m);
    }
    DegComplex { dims, diffs }
}

/// Build the cobar complex of a truncated curved coalgebra. `l_max` must be at
/// least `n_max`: letters have weight ≥ 1 so the weight bound already caps the
/// length, while a genuinely smaller length cap would not be closed under d2.
pub fn cobar(c: &CurvedCoalgebra, l_max: usize, n_max: usize) -> Result<CobarComplex, CobarBarError> {
    if l_max < n_max {
        return Err(CobarBarError::LengthBelowWeight { l: l_max, n: n_max });
    }
    let n_max = n_max.min(c.w_max);
    let mut letters = Vec::new();
    for w in 1..=n_max {
        for m in 0..c.dim(w) {
            letters.push(CobarLetter {
                weight: w as u32,
                comp_index: m,
                coalg_deg: c.comps[w].space.deg(m),
                label: c.comps[w].space.label(m).clone(),
            });
        }
    }
    let letter_wts: Vec<u32> = letters.iter().map(|l| l.weight).collect();
    let words = enumerate_weighted_words(&letter_wts, n_max as u32);
    let index: HashMap<LetterWord, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let dim = words.len();

    // letter-level data: h value, d expansion, Δ̄ expansion
    let letter_of: HashMap<(usize, usize), u16> = letters
        .iter()
        .enumerate()
        .map(|(i, l)| ((l.weight as usize, l.comp_index), i as u16))
        .collect();
    let h_of = |l: &CobarLetter| -> Rat {
        if l.weight == 2 {
            c.h.get(0, l.comp_index)
        } else {
            Rat::zero()
        }
    };
    let d_of = |l: &CobarLetter| -> Vec<(u16, Rat)> {
        let n = l.weight as usize;
        if n < 1 {
            return vec![];
        }
        let block = c.d_block(n);
        let mut out = Vec::new();
        for r in 0..block.rows() {
            let v = block.get(r, l.comp_index);
            if !v.is_zero() {
                out.push((letter_of[&(n - 1, r)], v));
            }
        }
        out
    };
    let delta_of = |l: &CobarLetter| -> Vec<(u16, u16, Rat)> {
        let n = l.weight as usize;
        let mut out = Vec::new();
        for p in 1..n {
            let q = n - p;
            let block = c.delta_block(p, q);
            let dim_q = c.dim(q);
            for row in 0..block.rows() {
                let v = block.get(row, l.comp_index);
                if !v.is_zero() {
                    let (u, wv) = (row / dim_q, row % dim_q);
                    out.push((letter_of[&(p, u)], letter_of[&(q, wv)], v));
                }
            }
        }
        out
    };

    let mut d0 = Matrix::zero(dim, dim);
    let mut d1 = Matrix::zero(dim, dim);
    let mut d2 = Matrix::zero(dim, dim);
    for (col, word) in words.iter().enumerate() {
        // prefix sums of coalgebra degrees |c₁|+…+|c_{i−1}|
        let mut prefix = 0i64;
        for (i, &l) in word.iter().enumerate() {
            let letter = &letters[l as usize];
            // d0: delete letter i with h(cᵢ), sign (-1)^{prefix + i}
            let hval = h_of(letter);
            if !hval.is_zero() {
                let mut nw = word.clone();
                nw.remove(i);
                let s = sign(prefix + i as i64);
                d0.add_to(index[&nw], col, &(&hval * &s));
            }
            // d1: replace cᵢ by d(cᵢ), sign (-1)^{prefix + i + 1}
            for (nl, v) in d_of(letter) {
                let mut nw = word.clone();
                nw[i] = nl;
                let s = sign(prefix + i as i64 + 1);
                d1.add_to(index[&nw], col, &(&v * &s));
            }
            // d2: split cᵢ into c'⊗c″, sign (-1)^{prefix + |c'| + i + 1}
            for (la, lb, v) in delta_of(letter) {
                let mut nw = Vec::with_capacity(word.len() + 1);
                nw.extend_from_slice(&word[..i]);
                nw.push(la);
                nw.push(lb);
                nw.extend_from_slice(&word[i + 1..]);
                // weight is preserved, so nw is always within bounds
                let s = sign(prefix + letters[la as usize].coalg_deg + i as i64 + 1);
                d2.add_to(index[&nw], col, &(&v * &s));
            }
            prefix += letter.coalg_deg;
        }
    }

    let out = CobarComplex { n_max, letters, words, index, d0, d1, d2 };
    let total = out.total();
    let square = total.mul(&total);
    if !square.is_zero() {
        let col = (0..square.cols())
            .find(|&j| (0..square.rows()).any(|r| !square.get(r, j).is_zero()))
            .unwrap();
        return Err(CobarBarError::SignConvention { witness: out.word_label(&out.words[col]) });
    }
    Ok(out)
}

/// The seven pairwise identities from the proof that (d0+d1+d2)² = 0,
/// each restricted to generator words (length 1).
pub fn cobar_bullet_identities(c: &CobarComplex) -> Vec<(String, bool)> {
    let combos: Vec<(String, Matrix)> = vec![
        ("d0d0".into(), c.d0.mul(&c.d0)),
        ("d1d0".into(), c.d1.mul(&c.d0)),
        ("d0d1".into(), c.d0.mul(&c.d1)),
        ("d2d0".into(), c.d2.mul(&c.d0)),
        ("d0d2+d1d1".into(), c.d0.mul(&c.d2).add(&c.d1.mul(&c.d1))),
        ("d1d2+d2d1".into(), c.d1.mul(&c.d2).add(&c.d2.mul(&c.d1))),
        ("d2d2".into(), c.d2.mul(&c.d2)),
    ];
    let gen_cols: Vec<usize> = c
        .words
        .iter()
        .enumerate()
        .filter(|(_, w)| w.len() == 1)
        .map(|(i, _)| i)
        .collect();
    combos
        .into_iter()
        .map(|(name, m)| {
            let ok = gen_cols
                .iter()
                .all(|&j| (0..m.rows()).all(|r| m.get(r, j).is_zero()));
            (name, ok)
        })
        .collect()
}

/// A letter of the bar word coalgebra: a basis element of Ā, suspended.
#[derive(Debug, Clone)]
pub struct BarLetter {
    pub weight: u32,
    pub comp_index: usize,
    /// degree in A (before suspension); the letter has degree alg_deg + 1
    pub alg_deg: i64,
    pub label: Label,
}

/// Bar construction B(A) = T^c(Ā[1]) truncated to total weight ≤ n_max as a
/// quotient complex (the coderivations raise weight; overflowing terms drop).
#[derive(Debug, Clone)]
pub struct BarComplex {
    pub n_max: usize,
    pub letters: Vec<BarLetter>,
    pub words: Vec<LetterWord>,
    pub index: HashMap<LetterWord, usize>,
    pub d0: Matrix,
    pub d1: Matrix,
    pub d2: Matrix,
}

impl BarComplex {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn word_degree(&self, w: &LetterWord) -> i64 {
        w.iter().map(|&l| self.letters[l as usize].alg_deg + 1).sum()
    }

    pub fn word_weight(&self, w: &LetterWord) -> u32 {
        w.iter().map(|&l| self.letters[l as usize].weight).sum()
    }

    pub fn total(&self) -> Matrix {
        self.d0.add(&self.d1).add(&self.d2)
    }

    pub fn word_label(&self, w: &LetterWord) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = w
            .iter()
            .map(|&l| format!("s{}", self.letters[l as usize].label))
            .collect();
        parts.join("⊗")
    }
}

pub fn bar(a: &CurvedAlgebra, n_max: usize) -> Result<BarComplex, CobarBarError> {
    let mut letters = Vec::new();
    for w in 1..=n_max.min(a.w_max) {
        for m in 0..a.dim(w) {
            letters.push(BarLetter {
                weight: w as u32,
                comp_index: m,
                alg_deg: a.comps[w].deg(m),
                label: a.comps[w].label(m).clone(),
            });
        }
    }
    let letter_wts: Vec<u32> = letters.iter().map(|l| l.weight).collect();
    let words = enumerate_weighted_words(&letter_wts, n_max as u32);
    let index: HashMap<LetterWord, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let dim = words.len();

    let letter_of: HashMap<(usize, usize), u16> = letters
        .iter()
        .enumerate()
        .map(|(i, l)| ((l.weight as usize, l.comp_index), i as u16))
        .collect();
    // Θ expanded into weight-2 letters
    let theta_letters: Vec<(u16, Rat)> = a
        .theta
        .iter()
        .map(|(m, v)| (letter_of[&(2, *m)], v.clone()))
        .collect();
    let nabla_of = |l: &BarLetter| -> Vec<(u16, Rat)> {
        let n = l.weight as usize;
        let block = a.nabla_block(n);
        let mut out = Vec::new();
        for r in 0..block.rows() {
            let v = block.get(r, l.comp_index);
            if !v.is_zero() {
                if let Some(&nl) = letter_of.get(&(n + 1, r)) {
                    out.push((nl, v));
                }
            }
        }
        out
    };
    let mult_of = |la: &BarLetter, lb: &BarLetter| -> Vec<(u16, Rat)> {
        let (i, j) = (la.weight as usize, lb.weight as usize);
        let block = a.mult_block(i, j);
        let col = la.comp_index * a.dim(j) + lb.comp_index;
        let mut out = Vec::new();
        for r in 0..block.rows() {
            let v = block.get(r, col);
            if !v.is_zero() {
                if let Some(&nl) = letter_of.get(&(i + j, r)) {
                    out.push((nl, v));
                }
            }
        }
        out
    };

    let mut d0 = Matrix::zero(dim, dim);
    let mut d1 = Matrix::zero(dim, dim);
    let mut d2 = Matrix::zero(dim, dim);
    for (col, word) in words.iter().enumerate() {
        let wt = word
            .iter()
            .map(|&l| letters[l as usize].weight)
            .sum::<u32>() as usize;
        // d0: insert sΘ after position i (i = 0..n), sign (-1)^{|a₁|+…+|aᵢ| + i + 1}
        if !theta_letters.is_empty() && wt + 2 <= n_max {
            let mut prefix = 0i64;
            for i in 0..=word.len() {
                let s = sign(prefix + i as i64 + 1);
                for (tl, tv) in &theta_letters {
                    let mut nw = Vec::with_capacity(word.len() + 1);
                    nw.extend_from_slice(&word[..i]);
                    nw.push(*tl);
                    nw.extend_from_slice(&word[i..]);
                    if let Some(&target) = index.get(&nw) {
                        d0.add_to(target, col, &(tv * &s));
                    }
                }
                if i < word.len() {
                    prefix += letters[word[i] as usize].alg_deg;
                }
            }
        }
        // d1: apply ∇ to letter i, sign (-1)^{|a₁|+…+|a_{i−1}| + i}
        let mut prefix = 0i64;
        for (i, &l) in word.iter().enumerate() {
            let s = sign(prefix + i as i64 + 1);
            for (nl, v) in nabla_of(&letters[l as usize]) {
                let mut nw = word.clone();
                nw[i] = nl;
                if let Some(&target) = index.get(&nw) {
                    d1.add_to(target, col, &(&v * &s));
                }
            }
            prefix += letters[l as usize].alg_deg;
        }
        // d2: merge letters i, i+1 (1-based), sign (-1)^{|a₁|+…+|aᵢ| + i − 1}
        let mut prefix = 0i64;
        for i in 0..word.len().saturating_sub(1) {
            prefix += letters[word[i] as usize].alg_deg;
            let s = sign(prefix + i as i64);
            for (nl, v) in mult_of(&letters[word[i] as usize], &letters[word[i + 1] as usize]) {
                let mut nw = Vec::with_capacity(word.len() - 1);
                nw.extend_from_slice(&word[..i]);
                nw.push(nl);
                nw.extend_from_slice(&word[i + 2..]);
                if let Some(&target) = index.get(&nw) {
                    d2.add_to(target, col, &(&v * &s));
                }
            }
        }
    }

    let out = BarComplex { n_max, letters, words, index, d0, d1, d2 };
    let total = out.total();
    let square = total.mul(&total);
    if !square.is_zero() {
        let col = (0..square.cols())
            .find(|&j| (0..square.rows()).any(|r| !square.get(r, j).is_zero()))
            .unwrap();
        return Err(CobarBarError::SignConvention { witness: out.word_label(&out.words[col]) });
    }
    Ok(out)
}

/// The seven bullet identities for the bar side, corestricted to length-1
/// target words (the coderivation dual of restriction to generators).
pub fn bar_bullet_identities(b: &BarComplex) -> Vec<(String, bool)> {
    let combos: Vec<(String, Matrix)> = vec![
        ("d0d0".into(), b.d0.mul(&b.d0)),
        ("d1d0".into(), b.d1.mul(&b.d0)),
        ("d0d1".into(), b.d0.mul(&b.d1)),
        ("d2d0".into(), b.d2.mul(&b.d0)),
        ("d0d2+d1d1".into(), b.d0.mul(&b.d2).add(&b.d1.mul(&b.d1))),
        ("d1d2+d2d1".into(), b.d1.mul(&b.d2).add(&b.d2.mul(&b.d1))),
        ("d2d2".into(), b.d2.mul(&b.d2)),
    ];
    let gen_rows: Vec<usize> = b
        .words
        .iter()
        .enumerate()
        .filter(|(_, w)| w.len() <= 1)
        .map(|(i, _)| i)
        .collect();
    combos
        .into_iter()
        .map(|(name, m)| {
            let ok = gen_rows
                .iter()
                .all(|&r| (0..m.cols()).all(|j| m.get(r, j).is_zero()));
            (name, ok)
        })
        .collect()
}

/// The canonical curved twisting morphism κ: (qA)¡ ↠ sV → V ↪ A, evaluated
/// against the truncated filtered algebra. Nonzero only on weight 1.
pub struct Kappa<'a> {
    pub split: &'a QlcSplit,
    pub algebra: &'a FilteredAlgebra,
}

impl<'a> Kappa<'a> {
    /// Image of the m-th basis vector of C^(1) = sV: the generator normal form.
    pub fn apply_generator(&self, m: usize) -> SparseVec {
        self.algebra
            .normal_form_word(&vec![m as u16])
            .expect("generators lie in every truncation with N ≥ 1")
    }
}

/// Report entry for the curved Maurer-Cartan verification.
#[derive(Debug, Clone)]
pub struct McReport {
    /// per weight: pass flag and an optional witness description
    pub entries: Vec<(usize, bool, String)>,
}

impl McReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|(_, p, _)| *p)
    }
}

/// Verify κ∘φ̃ + κ∗κ = u∘θ̃ weightwise on the truncation. Both sides live in
/// the filtered algebra; the identity is nonzero only on weight 2.
pub fn verify_mc(split: &QlcSplit, coalg: &CurvedCoalgebra, algebra: &FilteredAlgebra) -> McReport {
    let kappa = Kappa { split, algebra };
    let mut entries = Vec::new();
    for n in 0..=coalg.w_max {
        let dim_n = coalg.dim(n);
        let mut lhs_cols: Vec<SparseVec> = vec![SparseVec::new(); dim_n];
        // κ∘φ̃: nonzero only when d lands in weight 1
        if n >= 1 && n - 1 == 1 {
            let block = coalg.d_block(n);
            for m in 0..dim_n {
                for g in 0..block.rows() {
                    let v = block.get(g, m);
                    if !v.is_zero() {
                        crate::linalg::vec_add_scaled(&mut lhs_cols[m], &kappa.apply_generator(g), &v);
                    }
                }
            }
        }
        // κ∗κ = μ(κ⊗κ)Δ_{1,1}: nonzero only on weight 2
        if n == 2 {
            let block = coalg.delta_block(1, 1);
            let d1 = coalg.dim(1);
            for m in 0..dim_n {
                for row in 0..block.rows() {
                    let v = block.get(row, m);
                    if v.is_zero() {
                        continue;
                    }
                    let (u, w) = (row / d1, row % d1);
                    // (κ⊗κ)(su⊗sv) = (-1)^{|κ||su|} κ(su)⊗κ(sv); |κ| = −1
                    let s = sign(coalg.comps[1].space.deg(u));
                    let prod = algebra
                        .mul(&kappa.apply_generator(u), &kappa.apply_generator(w))
                        .expect("weight-2 products stay in the truncation");
                    crate::linalg::vec_add_scaled(&mut lhs_cols[m], &prod, &(&v * &s));
                }
            }
        }
        // u∘θ̃ on weight 2
        let mut pass = true;
        let mut witness = String::new();
        for m in 0..dim_n {
            let mut rhs = SparseVec::new();
            if n == 2 {
                let t = coalg.h.get(0, m);
                if !t.is_zero() {
                    crate::linalg::vec_add_scaled(&mut rhs, &algebra.unit(), &t);
                }
            }
            if lhs_cols[m] != rhs {
                pass = false;
                witness = format!("weight {n}, basis vector {m} of the dual component");
                break;
            }
        }
        entries.push((n, pass, witness));
    }
    McReport { entries }
}

/// Result of the truncated quasi-isomorphism check for g_κ: Ω((qA)¡) → A.
#[derive(Debug, Clone)]
pub struct GkappaReport {
    pub n_max: usize,
    /// homology dims per homological degree of the truncated cobar complex
    pub homology: BTreeMap<i64, usize>,
    pub dim_filtered_algebra: usize,
    pub gkappa_rank_on_cycles: usize,
    pub chain_map_ok: bool,
    pub pass: bool,
}

/// Build F_{≤N} Ω((qA)¡), check g_κ is a chain map onto A, and compare
/// H₀ against F_{≤N} A (dimension and surjectivity of g_κ on cycles);
/// higher homology must vanish.
pub fn gkappa_quasi_iso(
    split: &QlcSplit,
    coalg: &CurvedCoalgebra,
    algebra: &FilteredAlgebra,
    n_max: usize,
) -> Result<GkappaReport, CobarBarError> {
    let cobar_cx = cobar(coalg, n_max, n_max)?;
    let kappa = Kappa { split, algebra };
    // g_κ matrix: words of weight-1 letters ↦ products of generators, else 0
    let mut g = Matrix::zero(algebra.dim(), cobar_cx.dim());
    for (col, word) in cobar_cx.words.iter().enumerate() {
        if word
            .iter()
            .any(|&l| cobar_cx.letters[l as usize].weight != 1)
        {
            continue;
        }
        let mut acc = algebra.unit();
        for &l in word {
            let gen = kappa.apply_generator(cobar_cx.letters[l as usize].comp_index);
            acc = algebra.mul(&acc, &gen).expect("weight ≤ N products stay inside");
        }
        for (r, v) in &acc {
            g.add_to(*r, col, v);
        }
    }
    // chain map: d_A = 0, so g∘(d0+d1+d2) must vanish
    let chain_map_ok = g.mul(&cobar_cx.total()).is_zero();

    let complex = cobar_cx.deg_complex();
    let homology = complex.homology_dims(crate::strategy::Strategy::Sequential);
    // rank of g on degree-0 cycles
    let cycles = complex.diff_at(0).kernel_basis();
    // translate degree-0 block coordinates back to word indices
    let deg0_words: Vec<usize> = (0..cobar_cx.dim())
        .filter(|&i| cobar_cx.word_degree(&cobar_cx.words[i]) == 0)
        .collect();
    let mut ech = crate::linalg::Echelon::new();
    let mut rank = 0usize;
    for v in cycles.basis_vectors() {
        let mut img = SparseVec::new();
        for (j, cval) in &v {
            let word_idx = deg0_words[*j];
            for r in 0..algebra.dim() {
                let gv = g.get(r, word_idx);
                if !gv.is_zero() {
                    let entry = img.entry(r).or_insert_with(Rat::zero);
                    *entry += &(&gv * cval);
                    if entry.is_zero() {
                        img.remove(&r);
                    }
                }
            }
        }
        if ech.insert(img) {
            rank += 1;
        }
    }
    let h0 = homology.get(&0).copied().unwrap_or(0);
    let higher_vanish = homology.iter().all(|(&t, &d)| t <= 0 || d == 0);
    let pass = chain_map_ok && rank == algebra.dim() && h0 == algebra.dim() && higher_vanish;
    Ok(GkappaReport {
        n_max,
        homology,
        dim_filtered_algebra: algebra.dim(),
        gkappa_rank_on_cycles: rank,
        chain_map_ok,
        pass,
    })
}

/// A block map C → A of pure degree, used for convolution-algebra checks.
#[derive(Debug, Clone)]
pub struct ConvMap {
    pub deg: i64,
    /// (source weight, target weight) → matrix A^(m) ← C^(n)
    pub blocks: HashMap<(usize, usize), Matrix>,
}

impl ConvMap {
    pub fn zero(deg: i64) -> Self {
        ConvMap { deg, blocks: HashMap::new() }
    }

    pub fn block(&self, n: usize, m: usize, c: &CurvedCoalgebra, a: &CurvedAlgebra) -> Matrix {
        self.blocks
            .get(&(n, m))
            .cloned()
            .unwrap_or_else(|| Matrix::zero(a.dim(m), c.dim(n)))
    }

    pub fn add(&self, other: &ConvMap, c: &CurvedCoalgebra, a: &CurvedAlgebra) -> ConvMap {
        assert_eq!(self.deg, other.deg);
        let mut blocks = HashMap::new();
        let keys: std::collections::BTreeSet<(usize, usize)> = self
            .blocks
            .keys()
            .chain(other.blocks.keys())
            .copied()
            .collect();
        for k in keys {
            blocks.insert(k, self.block(k.0, k.1, c, a).add(&other.block(k.0, k.1, c, a)));
        }
        ConvMap { deg: self.deg, blocks }
    }

    pub fn scale(&self, s: &Rat) -> ConvMap {
        ConvMap {
            deg: self.deg,
            blocks: self.blocks.iter().map(|(k, m)| (*k, m.scale(s))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|m| m.is_zero())
    }

    /// Convolution product (self ∗ other)(c) = μ(self⊗other)Δ(c).
    pub fn star(&self, other: &ConvMap, c: &CurvedCoalgebra, a: &CurvedAlgebra) -> ConvMap {
        let mut out = ConvMap::zero(self.deg + other.deg);
        for (&(n1, m1), f) in &self.blocks {
            for (&(n2, m2), g) in &other.blocks {
                let n = n1 + n2;
                let m = m1 + m2;
                if n > c.w_max || m > a.w_max {
                    continue;
                }
                let delta = c.delta_block(n1, n2);
                let mu = a.mult_block(m1, m2);
                // (f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y)
                let dim_c2 = c.dim(n2);
                let dim_a2 = a.dim(m2);
                let mut pair = Matrix::zero(a.dim(m1) * dim_a2, c.dim(n1) * dim_c2);
                for x in 0..c.dim(n1) {
                    let s = sign(other.deg * c.comps[n1].space.deg(x));
                    for y in 0..dim_c2 {
                        let col = x * dim_c2 + y;
                        for (fr, fv) in f.transpose().row(x) {
                            for (gr, gv) in g.transpose().row(y) {
                                pair.add_to(fr * dim_a2 + gr, col, &(&(fv * gv) * &s));
                            }
                        }
                    }
                }
                let total = mu.mul(&pair).mul(&delta);
                let entry = out
                    .blocks
                    .entry((n, m))
                    .or_insert_with(|| Matrix::zero(a.dim(m), c.dim(n)));
                *entry = entry.add(&total);
            }
        }
        out
    }

    /// ∂(f) = ∇∘f − (-1)^{|f|} f∘d.
    pub fn partial(&self, c: &CurvedCoalgebra, a: &CurvedAlgebra) -> ConvMap {
        let mut out = ConvMap::zero(self.deg - 1);
        for (&(n, m), f) in &self.blocks {
            if m + 1 <= a.w_max {
                let up = a.nabla_block(m).mul(f);
                let entry = out
                    .blocks
                    .entry((n, m + 1))
                    .or_insert_with(|| Matrix::zero(a.dim(m + 1), c.dim(n)));
                *entry = entry.add(&up);
            }
            if n + 1 <= c.w_max {
                let down = f.mul(&c.d_block(n + 1)).scale(&-sign(self.deg));
                let entry = out
                    .blocks
                    .entry((n + 1, m))
                    .or_insert_with(|| Matrix::zero(a.dim(m), c.dim(n + 1)));
                *entry = entry.add(&down);
            }
        }
        out
    }
}

/// The curvature element Θε − u∘h of the convolution algebra.
pub fn convolution_curvature(c: &CurvedCoalgebra, a: &CurvedAlgebra) -> ConvMap {
    let mut out = ConvMap::zero(-2);
    // Θε: C^(0) → A^(2)
    if a.w_max >= 2 {
        let mut m = Matrix::zero(a.dim(2), 1);
        for (r, v) in &a.theta {
            m.set(*r, 0, v.clone());
        }
        out.blocks.insert((0, 2), m);
    }
    // −u∘h: C^(2) → A^(0)
    if c.w_max >= 2 {
        let mut m = Matrix::zero(1, c.dim(2));
        for j in 0..c.h.cols() {
            let v = c.h.get(0, j);
            if !v.is_zero() {
                m.set(0, j, -v);
            }
        }
        out.blocks.insert((2, 0), m);
    }
    out
}

/// Verify, on sampled block maps of low degree, that the convolution algebra
/// is curved: ∂²(f) = [Θε − u∘h, f] and ∂(Θε − u∘h) = 0.
pub fn convolution_check(
    c: &CurvedCoalgebra,
    a: &CurvedAlgebra,
    samples: usize,
    seed: u64,
) -> Vec<(String, bool)> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(seed);
    let curv = convolution_curvature(c, a);
    let mut results = Vec::new();

    let dcurv = curv.partial(c, a);
    results.push(("partial-of-curvature-zero".into(), dcurv.is_zero()));

    for k in 0..samples {
        let deg = -(rng.gen_range(0i64..=2));
        let mut f = ConvMap::zero(deg);
        // random degree-homogeneous weight-compatible blocks
        for n in 0..=c.w_max {
            for m in 0..=a.w_max {
                if rng.gen_bool(0.5) {
                    let mut block = Matrix::zero(a.dim(m), c.dim(n));
                    let mut any = false;
                    for col in 0..c.dim(n) {
                        for row in 0..a.dim(m) {
                            if a.comps[m].deg(row) == c.comps[n].space.deg(col) + deg
                                && rng.gen_bool(0.6)
                            {
                                block.set(row, col, Rat::from_int(rng.gen_range(-2i64..=2)));
                                any = true;
                            }
                        }
                    }
                    if any {
                        f.blocks.insert((n, m), block);
                    }
                }
            }
        }
        let lhs = f.partial(c, a).partial(c, a);
        // [curv, f] = curv∗f − (-1)^{|curv||f|} f∗curv; |curv| = −2 keeps the sign +
        let rhs = curv.star(&f, c, a).add(&f.star(&curv, c, a).scale(&-Rat::one()), c, a);
        let diff = lhs.add(&rhs.scale(&-Rat::one()), c, a);
        results.push((format!("partial-squared-bracket-sample-{k}"), diff.is_zero()));
    }
    results
}

/// Block map C → F_{≤N} A into the filtered (uncurved) algebra, with image of
/// C^(n) constrained to F_{≤n}; the convolution algebra here has curvature
/// −u∘h since ∇_A = 0 and Θ_A = 0.
#[derive(Debug, Clone)]
pub struct FilteredConvMap {
    pub deg: i64,
    /// source weight → matrix (dim A × dim C^(n))
    pub blocks: HashMap<usize, Matrix>,
}

impl FilteredConvMap {
    pub fn zero(deg: i64) -> Self {
        FilteredConvMap { deg, blocks: HashMap::new() }
    }

    pub fn block(&self, n: usize, c: &CurvedCoalgebra, a: &FilteredAlgebra) -> Matrix {
        self.blocks
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(a.dim(), c.dim(n)))
    }

    pub fn kappa(split: &QlcSplit, c: &CurvedCoalgebra, a: &FilteredAlgebra) -> Self {
        let k = Kappa { split, algebra: a };
        let mut m = Matrix::zero(a.dim(), c.dim(1));
        for g in 0..c.dim(1) {
            for (r, v) in k.apply_generator(g) {
                m.set(r, g, v);
            }
        }
        let mut blocks = HashMap::new();
        blocks.insert(1, m);
        FilteredConvMap { deg: -1, blocks }
    }

    /// u∘h: C^(2) → k·1_A.
    pub fn unit_h(c: &CurvedCoalgebra, a: &FilteredAlgebra) -> Self {
        let mut m = Matrix::zero(a.dim(), c.dim(2));
        let unit = a.unit();
        for j in 0..c.h.cols() {
            let v = c.h.get(0, j);
            if !v.is_zero() {
                for (r, uv) in &unit {
                    m.add_to(*r, j, &(&v * uv));
                }
            }
        }
        let mut blocks = HashMap::new();
        blocks.insert(2, m);
        FilteredConvMap { deg: -2, blocks }
    }

    pub fn add_scaled(&self, other: &FilteredConvMap, s: &Rat, c: &CurvedCoalgebra, a: &FilteredAlgebra) -> Self {
        assert_eq!(self.deg, other.deg);
        let mut blocks = HashMap::new();
        let keys: std::collections::BTreeSet<usize> =
            self.blocks.keys().chain(other.blocks.keys()).copied().collect();
        for n in keys {
            blocks.insert(n, self.block(n, c, a).add(&other.block(n, c, a).scale(s)));
        }
        FilteredConvMap { deg: self.deg, blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|m| m.is_zero())
    }

    /// ∂(f) = −(-1)^{|f|} f∘d (the filtered algebra has no differential).
    pub fn partial(&self, c: &CurvedCoalgebra, a: &FilteredAlgebra) -> Self {
        let mut out = FilteredConvMap::zero(self.deg - 1);
        let s = -sign(self.deg);
        for (&n, f) in &self.blocks {
            if n + 1 <= c.w_max {
                let m = f.mul(&c.d_block(n + 1)).scale(&s);
                let entry = out
                    .blocks
                    .entry(n + 1)
                    .or_insert_with(|| Matrix::zero(a.dim(), c.dim(n + 1)));
                *entry = entry.add(&m);
            }
        }
        out
    }

    /// Convolution with multiplication in the filtered algebra.
    pub fn star(&self, other: &FilteredConvMap, c: &CurvedCoalgebra, a: &FilteredAlgebra) -> Self {
        let mut out = FilteredConvMap::zero(self.deg + other.deg);
        for (&n1, f) in &self.blocks {
            for (&n2, g) in &other.blocks {
                let n = n1 + n2;
                if n > c.w_max {
                    continue;
                }
                let delta = c.delta_block(n1, n2);
                let dim2 = c.dim(n2);
                let mut total = Matrix::zero(a.dim(), c.dim(n));
                for col in 0..c.dim(n) {
                    for (rc, v) in delta.transpose().row(col) {
                        let (x, y) = (rc / dim2, rc % dim2);
                        let s = sign(other.deg * c.comps[n1].space.deg(x));
                        // μ(f(x), g(y))
                        let fx: SparseVec = (0..a.dim())
                            .filter_map(|r| {
                                let e = f.get(r, x);
                                if e.is_zero() {
                                    None
                                } else {
                                    Some((r, e))
                                }
                            })
                            .collect();
                        let gy: SparseVec = (0..a.dim())
                            .filter_map(|r| {
                                let e = g.get(r, y);
                                if e.is_zero() {
                                    None
                                } else {
                                    Some((r, e))
                                }
                            })
                            .collect();
                        if let Some(prod) = a.mul(&fx, &gy) {
                            for (r, pv) in prod {
                                total.add_to(r, col, &(&(v * &s) * &pv));
                            }
                        }
                    }
                }
                let entry = out
                    .blocks
                    .entry(n)
                    .or_insert_with(|| Matrix::zero(a.dim(), c.dim(n)));
                *entry = entry.add(&total);
            }
        }
        out
    }
}

/// ∂²(κ) = [−u∘h, κ] in the convolution algebra bHom((qA)¡, A) with A the
/// filtered algebra (Θ_A = 0).
pub fn kappa_convolution_check(split: &QlcSplit, c: &CurvedCoalgebra, a: &FilteredAlgebra) -> bool {
    let kappa = FilteredConvMap::kappa(split, c, a);
    let lhs = kappa.partial(c, a).partial(c, a);
    let curv = FilteredConvMap::unit_h(c, a).add_scaled(&FilteredConvMap::zero(-2), &Rat::one(), c, a).add_scaled(&FilteredConvMap::zero(-2), &Rat::one(), c, a);
    // curvature is −u∘h; bracket [curv, κ] = curv∗κ − (-1)^{|curv||κ|} κ∗curv, sign +
    let neg_uh = FilteredConvMap::zero(-2).add_scaled(&FilteredConvMap::unit_h(c, a), &-Rat::one(), c, a);
    let rhs = neg_uh
        .star(&kappa, c, a)
        .add_scaled(&kappa.star(&neg_uh, c, a), &-Rat::one(), c, a);
    let _ = curv;
    lhs.add_scaled(&rhs, &-Rat::one(), c, a).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graded::Space;
    use crate::koszul_dual::{curved_structure, dual_curved_algebra};
    use crate::qlc::{filtered_basis, split};
    use crate::strategy::Strategy;

    fn weyl_setup(w: usize) -> (QlcSplit, CurvedCoalgebra) {
        let s = split(&fixtures::weyl()).unwrap();
        let c = curved_structure(&s, w).unwrap();
        (s, c)
    }

    #[test]
    fn cobar_of_tensor_dual_has_zero_differential() {
        // C = k ⊕ V[1]: all three derivations vanish, cobar = T(V)
        let s = split(&fixtures::tensor2()).unwrap();
        let c = curved_structure(&s, 4).unwrap();
        let cx = cobar(&c, 4, 4).unwrap();
        assert!(cx.d0.is_zero());
        assert!(cx.d1.is_zero());
        assert!(cx.d2.is_zero());
        // dims: words over two weight-1 letters, weight ≤ 4: 1+2+4+8+16
        assert_eq!(cx.dim(), 31);
    }

    #[test]
    fn cobar_weyl_d0_hand_expansion() {
        let (_s, c) = weyl_setup(5);
        let cx = cobar(&c, 5, 5).unwrap();
        // letters: sx, sy (weight 1), ω (weight 2) with h(ω) = θ-value on the
        // RREF basis vector of qR
        let omega: u16 = cx
            .letters
            .iter()
            .position(|l| l.weight == 2)
            .expect("weight-2 letter exists") as u16;
        let h_omega = c.h.get(0, 0);
        assert!(!h_omega.is_zero());
        // d0(s⁻¹ω) = h(ω)·1 with sign (+1)
        let col = cx.index[&vec![omega]];
        let unit_row = cx.index[&LetterWord::new()];
        assert_eq!(cx.d0.get(unit_row, col), h_omega);
        // d0(s⁻¹ω ⊗ s⁻¹ω): the two deletions cancel (alternating two-term form)
        let col2 = cx.index[&vec![omega, omega]];
        let row2 = cx.index[&vec![omega]];
        assert!(cx.d0.get(row2, col2).is_zero());
        // d0(s⁻¹sx ⊗ s⁻¹ω) = (−1)^{|sx|+2−1} h(ω) (s⁻¹sx) = h(ω)·(s⁻¹sx)
        let sx: u16 = cx.letters.iter().position(|l| l.weight == 1).unwrap() as u16;
        let col3 = cx.index[&vec![sx, omega]];
        let row3 = cx.index[&vec![sx]];
        assert_eq!(cx.d0.get(row3, col3), h_omega);
    }

    #[test]
    fn cobar_ug_d1_matches_direct_ce_differential() {
        // For U(g) with [x,y] = y the d1 part replaces the weight-2 letter by
        // s y letterwise; code that rule independently and compare matrices.
        let s = split(&fixtures::ug_nonabelian()).unwrap();
        let c = curved_structure(&s, 3).unwrap();
        let cx = cobar(&c, 3, 3).unwrap();
        let omega: u16 = cx.letters.iter().position(|l| l.weight == 2).unwrap() as u16;
        // the weight-2 RREF basis vector is s²(xy − yx) up to normalization;
        // d sends it to s(φ(xy−yx)) = s y times that normalization
        let dvec = c.d_block(2);
        assert_eq!(dvec.rows(), 2);
        let mut oracle = Matrix::zero(cx.dim(), cx.dim());
        for (col, word) in cx.words.iter().enumerate() {
            let mut prefix = 0i64;
            for (i, &l) in word.iter().enumerate() {
                if l == omega {
                    for target in 0..2u16 {
                        let v = dvec.get(target as usize, 0);
                        if !v.is_zero() {
                            let mut nw = word.clone();
                            nw[i] = target;
                            let sgn = sign(prefix + i as i64 + 1);
                            oracle.add_to(cx.index[&nw], col, &(&v * &sgn));
                        }
                    }
                }
                prefix += cx.letters[l as usize].coalg_deg;
            }
        }
        assert_eq!(cx.d1, oracle);
    }

    #[test]
    fn bar_of_trivial_algebra() {
        // A = k: no letters, bar = k
        let s = split(&fixtures::tensor2()).unwrap();
        let mut c = curved_structure(&s, 0).unwrap();
        c.w_max = 0;
        let (alg, _) = dual_curved_algebra(&c);
        let b = bar(&alg, 3).unwrap();
        assert_eq!(b.dim(), 1);
        assert!(b.total().is_zero());
    }

    #[test]
    fn bar_weyl_dual_d0_inserts_theta() {
        let (_s, c) = weyl_setup(4);
        let (alg, rep) = dual_curved_algebra(&c);
        assert!(rep.all_pass());
        let b = bar(&alg, 4).unwrap();
        // d0(1) = −(sΘ)
        let unit_col = b.index[&LetterWord::new()];
        let theta_letter: u16 = b.letters.iter().position(|l| l.weight == 2).unwrap() as u16;
        let (tidx, tval) = alg.theta.iter().next().unwrap();
        assert_eq!(b.letters[theta_letter as usize].comp_index, *tidx);
        let row = b.index[&vec![theta_letter]];
        assert_eq!(b.d0.get(row, unit_col), -tval.clone());
        // words of length ≤ 3: d0 on a length-1 letter ξ gives the alternating
        // two insertions (sΘ, sξ) and (sξ, sΘ)
        let xi: u16 = b.letters.iter().position(|l| l.weight == 1).unwrap() as u16;
        let col = b.index[&vec![xi]];
        let r1 = b.index[&vec![theta_letter, xi]];
        let r2 = b.index[&vec![xi, theta_letter]];
        // ξ has degree −1: both insertions carry (−1)^{|a…|+i+1} = −1,
        // so d0(sξ) = −(sΘ,sξ) − (sξ,sΘ)
        assert_eq!(b.d0.get(r1, col), -tval.clone());
        assert_eq!(b.d0.get(r2, col), -tval.clone());
    }

    /// Bar homology of k[t]/(t³) (uncurved): Tor is one-dimensional in every
    /// homological degree, with internal weights 1, 3, 4, 6, … — the weights
    /// ≤ 6 truncation must show dims (1,1,1,1,0,0) in degrees 1..6.
    #[test]
    fn bar_truncated_polynomial_tor_dims() {
        use crate::graded::Label;
        use std::collections::HashMap as Map;
        let comps = vec![
            Space::scalar(),
            Space::new(vec![(Label::atom("t"), 0, 1)]),
            Space::new(vec![(Label::atom("t2"), 0, 2)]),
        ];
        let mut mult = Map::new();
        for i in 0..=2usize {
            mult.insert((0, i), Matrix::identity(comps[i].dim()));
            mult.insert((i, 0), Matrix::identity(comps[i].dim()));
        }
        mult.insert((1, 1), Matrix::identity(1));
        let alg = crate::koszul_dual::CurvedAlgebra {
            w_max: 2,
            comps,
            mult,
            nabla: vec![Matrix::zero(0, 1), Matrix::zero(0, 1), Matrix::zero(0, 1)],
            theta: SparseVec::new(),
        };
        let b = bar(&alg, 6).unwrap();
        let degs: Vec<i64> = b.words.iter().map(|w| b.word_degree(w)).collect();
        let complex = deg_complex_of(&b.total(), &degs);
        let h = complex.homology_dims(Strategy::Sequential);
        assert_eq!(h.get(&1), Some(&1));
        assert_eq!(h.get(&2), Some(&1));
        assert_eq!(h.get(&3), Some(&1));
        assert_eq!(h.get(&4), Some(&1));
        assert_eq!(h.get(&5).copied().unwrap_or(0), 0);
        assert_eq!(h.get(&6).copied().unwrap_or(0), 0);
    }

    #[test]
    fn bullets_hold_for_fixture_duals() {
        for p in [fixtures::weyl(), fixtures::ug_nonabelian(), fixtures::dualnumbers()] {
            let s = split(&p).unwrap();
            let c = curved_structure(&s, 4).unwrap();
            let cx = cobar(&c, 4, 4).unwrap();
            for (name, ok) in cobar_bullet_identities(&cx) {
                assert!(ok, "{}: cobar bullet {name}", p.name);
            }
            let (alg, _) = dual_curved_algebra(&c);
            let b = bar(&alg, 4).unwrap();
            for (name, ok) in bar_bullet_identities(&b) {
                assert!(ok, "{}: bar bullet {name}", p.name);
            }
        }
    }

    /// Weight filtration: d0 lowers total word weight by exactly 2, d1 by
    /// exactly 1, d2 by 0 — per matrix block.
    #[test]
    fn cobar_weight_filtration_blocks() {
        let s = split(&fixtures::ug_nonabelian()).unwrap();
        let c = curved_structure(&s, 4).unwrap();
        let cx = cobar(&c, 4, 4).unwrap();
        let wt = |i: usize| cx.word_weight(&cx.words[i]) as i64;
        for (m, drop) in [(&cx.d0, 2i64), (&cx.d1, 1), (&cx.d2, 0)] {
            for colv in 0..cx.dim() {
                for r in 0..cx.dim() {
                    if !m.get(r, colv).is_zero() {
                        assert_eq!(wt(colv) - wt(r), drop);
                    }
                }
            }
        }
    }

    /// The bijection round-trip: the algebra morphism g_κ restricted to the
    /// generators C̄[−1] recovers κ.
    #[test]
    fn gkappa_restriction_is_kappa() {
        let p = fixtures::weyl();
        let s = split(&p).unwrap();
        let c = curved_structure(&s, 3).unwrap();
        let a = filtered_basis(&p, 3);
        let kappa = Kappa { split: &s, algebra: &a };
        let cx = cobar(&c, 3, 3).unwrap();
        for (l, letter) in cx.letters.iter().enumerate() {
            // g_κ on the length-1 word (s⁻¹c): κ(c), i.e. the generator image
            // on weight-1 letters and zero on higher weights
            let word = vec![l as u16];
            let image = if letter.weight == 1 {
                kappa.apply_generator(letter.comp_index)
            } else {
                SparseVec::new()
            };
            // rebuild the same value through the g_κ construction used by
            // gkappa_quasi_iso: products of generator normal forms
            let direct = if letter.weight == 1 {
                a.mul(&a.unit(), &kappa.apply_generator(letter.comp_index)).unwrap()
            } else {
                SparseVec::new()
            };
            assert_eq!(image, direct, "letter {word:?}");
        }
    }

    #[test]
    fn mc_holds_on_fixtures() {
        for p in [
            fixtures::weyl(),
            fixtures::tensor2(),
            fixtures::sym2(),
            fixtures::ug_nonabelian(),
            fixtures::heisenberg_unital(),
            fixtures::poly1(),
            fixtures::dualnumbers(),
        ] {
            let s = split(&p).unwrap();
            let c = curved_structure(&s, 4).unwrap();
            let a = filtered_basis(&p, 4);
            let report = verify_mc(&s, &c, &a);
            assert!(report.all_pass(), "{}: {:?}", p.name, report.entries);
        }
    }

    #[test]
    fn gkappa_weyl() {
        let p = fixtures::weyl();
        let s = split(&p).unwrap();
        let c = curved_structure(&s, 5).unwrap();
        let a = filtered_basis(&p, 5);
        let rep = gkappa_quasi_iso(&s, &c, &a, 5).unwrap();
        assert!(rep.chain_map_ok);
        assert_eq!(rep.dim_filtered_algebra, 21);
        assert_eq!(rep.homology.get(&0), Some(&21));
        assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn gkappa_tensor_algebra() {
        let p = fixtures::tensor2();
        let s = split(&p).unwrap();
        let c = curved_structure(&s, 4).unwrap();
        let a = filtered_basis(&p, 4);
        let rep = gkappa_quasi_iso(&s, &c, &a, 4).unwrap();
        // zero differential: H₀ = T^{≤4}(V), dim 31
        assert_eq!(rep.dim_filtered_algebra, 31);
        assert!(rep.pass);
    }

    #[test]
    fn gkappa_ug() {
        let p = fixtures::ug_nonabelian();
        let s = split(&p).unwrap();
        let c = curved_structure(&s, 4).unwrap();
        let a = filtered_basis(&p, 4);
        let rep = gkappa_quasi_iso(&s, &c, &a, 4).unwrap();
        assert_eq!(rep.dim_filtered_algebra, 15); // PBW count
        assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn convolution_checks() {
        // uncurved pair
        let s = split(&fixtures::tensor2()).unwrap();
        let c = curved_structure(&s, 3).unwrap();
        let (alg, _) = dual_curved_algebra(&c);
        for (name, ok) in convolution_check(&c, &alg, 6, 11) {
            assert!(ok, "uncurved pair: {name}");
        }
        // curved pair from the Weyl dual
        let s = split(&fixtures::weyl()).unwrap();
        let c = curved_structure(&s, 4).unwrap();
        let (alg, _) = dual_curved_algebra(&c);
        for (name, ok) in convolution_check(&c, &alg, 8, 12) {
            assert!(ok, "weyl dual pair: {name}");
        }
        // a random curved pair, 20 sampled maps of degrees −2..0
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(314);
        let p = crate::qlc::random_valid_presentation(&mut rng, 2, 2);
        let s = split(&p).unwrap();
        let c = curved_structure(&s, 4).unwrap();
        let (alg, _) = dual_curved_algebra(&c);
        for (name, ok) in convolution_check(&c, &alg, 20, 999) {
            assert!(ok, "random curved pair: {name}");
        }
        // Weyl pair (C, A) with the filtered algebra target
        let p = fixtures::weyl();
        let s = split(&p).unwrap();
        let c = curved_structure(&s, 4).unwrap();
        let a = filtered_basis(&p, 4);
        assert!(kappa_convolution_check(&s, &c, &a));
    }
}
