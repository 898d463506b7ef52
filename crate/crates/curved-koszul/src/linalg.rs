//! Exact rational linear algebra: sparse matrices, reduced row echelon form,
//! kernels, intersections, quotients with canonical complements, and homology
//! of bounded complexes.
//!
//! Everything is exact. Pivots are chosen by smallest bit length of
//! numerator×denominator in the leftmost nonzero column, which keeps
//! coefficient growth under control during elimination. A dense elimination
//! path is used below 64 columns; both paths apply the same pivot rule and
//! produce identical results.

use crate::rational::Rat;
use crate::strategy::Strategy;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

pub type SparseVec = BTreeMap<usize, Rat>;

pub fn vec_add_scaled(target: &mut SparseVec, source: &SparseVec, scale: &Rat) {
    if scale.is_zero() {
        return;
    }
    for (j, v) in source {
        let entry = target.entry(*j).or_insert_with(Rat::zero);
        *entry += &(v * scale);
        if entry.is_zero() {
            target.remove(j);
        }
    }
}

pub fn vec_scale(v: &SparseVec, scale: &Rat) -> SparseVec {
    if scale.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(j, x)| (*j, x * scale)).collect()
}

pub fn vec_unit(j: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(j, Rat::one());
    v
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("intersection of an empty family of subspaces")]
    EmptyIntersectionFamily,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("not a complex: d∘d ≠ 0 first fails at position {position} (witness basis vector {witness_index})")]
    NotAComplex { position: usize, witness_index: usize },
}

/// Sparse rows × columns matrix, acting on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<SparseVec>, cols: usize) -> Self {
        for r in &rows {
            debug_assert!(r.keys().all(|&j| j < cols));
        }
        Matrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_dense(rows: Vec<Vec<i64>>, cols: usize) -> Self {
        let data = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .enumerate()
                    .filter(|(_, v)| *v != 0)
                    .map(|(j, v)| (j, Rat::from_int(v)))
                    .collect()
            })
            .collect::<Vec<_>>();
        Matrix { rows: data.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.data[r].get(&c).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rat) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of bounds {}x{}", self.rows, self.cols);
        let entry = self.data[r].entry(c).or_insert_with(Rat::zero);
        *entry += v;
        if entry.is_zero() {
            self.data[r].remove(&c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                t.data[*c].insert(r, v.clone());
            }
        }
        t
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|r| r.iter().map(|(j, v)| (*j, -v)).collect()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Rat) -> Matrix {
        let data = self.data.iter().map(|r| vec_scale(r, s)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let mut out = self.clone();
        for (r, row) in other.data.iter().enumerate() {
            for (c, v) in row {
                out.add_to(r, *c, v);
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    /// self (m×k) · other (k×n).
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul: {}x{} · {}x{}", self.rows, self.cols, other.rows, other.cols);
        let mut out = Matrix::zero(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                vec_add_scaled(&mut out.data[r], &other.data[*j], v);
            }
        }
        out
    }

    /// Matrix · column vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = Rat::zero();
            for (j, a) in row {
                if let Some(x) = v.get(j) {
                    acc += &(a * x);
                }
            }
            if !acc.is_zero() {
                out.insert(r, acc);
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zero(self.rows, self.cols + other.cols);
        for (r, row) in self.data.iter().enumerate() {
            out.data[r] = row.clone();
        }
        for (r, row) in other.data.iter().enumerate() {
            for (c, v) in row {
                out.data[r].insert(self.cols + c, v.clone());
            }
        }
        out
    }

    /// Reduced row echelon form together with the ascending pivot columns.
    /// Row space is preserved; zero rows are kept so the shape is unchanged.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        if self.cols < 64 {
            self.rref_dense()
        } else {
            self.rref_sparse()
        }
    }

    fn rref_sparse(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.data.clone();
        let m = rows.len();
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for col in 0..self.cols {
            if next >= m {
                break;
            }
            // pivot choice: smallest bit-size entry in this column among free rows
            let mut best: Option<(u64, usize)> = None;
            for (i, row) in rows.iter().enumerate().skip(next) {
                if let Some(v) = row.get(&col) {
                    let size = v.bit_size();
                    if best.as_ref().map_or(true, |(s, _)| size < *s) {
                        best = Some((size, i));
                    }
                }
            }
            let Some((_, pivot_row)) = best else { continue };
            rows.swap(next, pivot_row);
            let inv = rows[next].get(&col).unwrap().recip();
            rows[next] = vec_scale(&rows[next], &inv);
            let pivot = rows[next].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != next {
                    if let Some(v) = row.get(&col).cloned() {
                        vec_add_scaled(row, &pivot, &-v);
                    }
                }
            }
            pivots.push(col);
            next += 1;
        }
        (Matrix { rows: m, cols: self.cols, data: rows }, pivots)
    }

    fn rref_dense(&self) -> (Matrix, Vec<usize>) {
        let m = self.rows;
        let n = self.cols;
        let mut rows: Vec<Vec<Rat>> = (0..m)
            .map(|r| (0..n).map(|c| self.get(r, c)).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for col in 0..n {
            if next >= m {
                break;
            }
            let mut best: Option<(u64, usize)> = None;
            for (i, row) in rows.iter().enumerate().skip(next) {
                if !row[col].is_zero() {
                    let size = row[col].bit_size();
                    if best.as_ref().map_or(true, |(s, _)| size < *s) {
                        best = Some((size, i));
                    }
                }
            }
            let Some((_, pivot_row)) = best else { continue };
            rows.swap(next, pivot_row);
            let inv = rows[next][col].recip();
            for c in col..n {
                if !rows[next][c].is_zero() {
                    rows[next][c] = &rows[next][c] * &inv;
                }
            }
            for i in 0..m {
                if i != next && !rows[i][col].is_zero() {
                    let factor = rows[i][col].clone();
                    for c in col..n {
                        if !rows[next][c].is_zero() {
                            let delta = &rows[next][c] * &factor;
                            rows[i][c] = &rows[i][c] - &delta;
                        }
                    }
                }
            }
            pivots.push(col);
            next += 1;
        }
        let data = rows
            .into_iter()
            .map(|r| r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        (Matrix { rows: m, cols: n, data }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {v : self·v = 0}, RREF-normalized, as a subspace of k^cols.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for j in 0..self.cols {
            if pivot_set.contains(&j) {
                continue;
            }
            let mut v = SparseVec::new();
            v.insert(j, Rat::one());
            for (i, &p) in pivots.iter().enumerate() {
                let c = r.get(i, j);
                if !c.is_zero() {
                    v.insert(p, -c);
                }
            }
            basis.push(v);
        }
        Subspace::from_span(Matrix::from_rows(basis, self.cols))
    }

    /// Row space as a subspace of k^cols.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_span(self.clone())
    }

    /// Column space, i.e. row space of the transpose.
    pub fn column_space(&self) -> Subspace {
        self.transpose().row_space()
    }
}

/// A subspace of k^ambient, stored as an RREF row basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zero(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`, RREF-normalized.
    pub fn from_span(m: Matrix) -> Self {
        let ambient = m.cols();
        let (r, pivots) = m.rref();
        let dim = pivots.len();
        let mut rows = Vec::with_capacity(dim);
        for i in 0..dim {
            rows.push(r.row(i).clone());
        }
        Subspace { ambient, basis: Matrix::from_rows(rows, ambient), pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<SparseVec> {
        (0..self.dim()).map(|i| self.basis.row(i).clone()).collect()
    }

    /// Coordinates of `v` in the RREF basis, or None if v is outside.
    pub fn coords_of(&self, v: &SparseVec) -> Option<Vec<Rat>> {
        let coords: Vec<Rat> = self
            .pivots
            .iter()
            .map(|p| v.get(p).cloned().unwrap_or_else(Rat::zero))
            .collect();
        // membership check: v - Σ coords_i · basis_i must vanish exactly
        let mut rem = v.clone();
        for (i, c) in coords.iter().enumerate() {
            vec_add_scaled(&mut rem, self.basis.row(i), &-c.clone());
        }
        if rem.is_empty() {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coords_of(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(Subspace::from_span(self.basis.vstack(&other.basis)))
    }

    /// Intersection of two subspaces by the kernel-of-[B₁ᵀ | −B₂ᵀ] method.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::AmbientMismatch(self.ambient, other.ambient));
        }
        // Fast path: intersecting with the full space.
        if self.dim() == self.ambient {
            return Ok(other.clone());
        }
        if other.dim() == other.ambient {
            return Ok(self.clone());
        }
        let d1 = self.dim();
        let stacked = self.basis.transpose().hstack(&other.basis.transpose().neg());
        let ker = stacked.kernel_basis();
        // The first d1 coordinates of each kernel vector express a member in basis 1.
        let mut rows = Vec::new();
        for v in ker.basis_vectors() {
            let mut w = SparseVec::new();
            for (j, c) in v.range(0..d1) {
                vec_add_scaled(&mut w, self.basis.row(*j), c);
            }
            if !w.is_empty() {
                rows.push(w);
            }
        }
        Ok(Subspace::from_span(Matrix::from_rows(rows, self.ambient)))
    }
}

/// Intersection of a non-empty family of subspaces over a common ambient space.
pub fn intersect(spaces: &[Subspace]) -> Result<Subspace, LinAlgError> {
    let mut iter = spaces.iter();
    let first = iter.next().ok_or(LinAlgError::EmptyIntersectionFamily)?;
    let mut acc = first.clone();
    for s in iter {
        acc = acc.intersect(s)?;
    }
    Ok(acc)
}

/// Quotient of k^ambient by `sub`: representatives are the non-pivot coordinate
/// vectors (the canonical complement) and `projection` sends any vector to its
/// representative coordinates. projection ∘ inclusion-of-sub = 0.
pub fn quotient(ambient: usize, sub: &Subspace) -> (Vec<usize>, Matrix) {
    assert_eq!(sub.ambient_dim(), ambient, "quotient: ambient mismatch");
    let pivot_set: std::collections::BTreeSet<usize> = sub.pivots().iter().copied().collect();
    let reps: Vec<usize> = (0..ambient).filter(|j| !pivot_set.contains(j)).collect();
    let mut proj = Matrix::zero(reps.len(), ambient);
    for (row, &j) in reps.iter().enumerate() {
        proj.set(row, j, Rat::one());
        for (i, &p) in sub.pivots().iter().enumerate() {
            let c = sub.basis().get(i, j);
            if !c.is_zero() {
                proj.set(row, p, -c);
            }
        }
    }
    (reps, proj)
}

/// Homology of one position of a complex, with explicit cycle representatives.
#[derive(Clone, Debug)]
pub struct Homology {
    pub dim: usize,
    pub representatives: Vec<SparseVec>,
}

/// Growing echelon basis used for incremental rank / membership bookkeeping.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, SparseVec)>, // (pivot, row with pivot scaled to 1), sorted by pivot
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let mut e = Echelon::new();
        for r in 0..m.rows() {
            e.insert(m.row(r).clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if let Some(c) = v.get(p).cloned() {
                vec_add_scaled(&mut v, row, &-c);
            }
        }
        v
    }

    /// Insert `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(&v);
        let Some((&p, _)) = v.iter().next() else { return false };
        let inv = v.get(&p).unwrap().recip();
        v = vec_scale(&v, &inv);
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }
}

/// Homology of a bounded complex. `spaces[i]` is the dimension at position i
/// and `diffs[i]` maps position i+1 to position i, so `diffs.len() + 1 == spaces.len()`.
/// Fails with `NotAComplex` if some composite is nonzero.
pub fn complex_homology(spaces: &[usize], diffs: &[Matrix]) -> Result<Vec<Homology>, LinAlgError> {
    assert_eq!(diffs.len() + 1, spaces.len(), "complex_homology: need one differential per adjacent pair");
    for (i, d) in diffs.iter().enumerate() {
        assert_eq!(d.cols(), spaces[i + 1], "diff {i} source dim");
        assert_eq!(d.rows(), spaces[i], "diff {i} target dim");
    }
    for i in 0..diffs.len().saturating_sub(1) {
        let composite = diffs[i].mul(&diffs[i + 1]);
        if !composite.is_zero() {
            let witness_index = (0..composite.cols())
                .find(|&j| (0..composite.rows()).any(|r| !composite.get(r, j).is_zero()))
                .unwrap();
            return Err(LinAlgError::NotAComplex { position: i + 2, witness_index });
        }
    }
    let n = spaces.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // kernel of the outgoing map
        let cycles = if i == 0 {
            Subspace::full(spaces[0])
        } else {
            diffs[i - 1].kernel_basis()
        };
        // image of the incoming map (as row space of its transpose)
        let boundaries = if i < diffs.len() {
            diffs[i].transpose().row_space()
        } else {
            Subspace::zero(spaces[i])
        };
        let mut ech = Echelon::from_matrix(boundaries.basis());
        let mut reps = Vec::new();
        for v in cycles.basis_vectors() {
            if ech.insert(v.clone()) {
                reps.push(v);
            }
        }
        out.push(Homology { dim: reps.len(), representatives: reps });
    }
    Ok(out)
}

/// A chain complex indexed by integer degrees with differential of degree -1.
#[derive(Clone, Debug, Default)]
pub struct DegComplex {
    pub dims: BTreeMap<i64, usize>,
    /// diffs[t]: degree t -> degree t-1
    pub diffs: BTreeMap<i64, Matrix>,
}

impl DegComplex {
    pub fn dim_at(&self, t: i64) -> usize {
        self.dims.get(&t).copied().unwrap_or(0)
    }

    pub fn diff_at(&self, t: i64) -> Matrix {
        self.diffs
            .get(&t)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.dim_at(t - 1), self.dim_at(t)))
    }

    /// Exact d² = 0 check; returns the first failing degree with a witness column.
    pub fn verify_squares_to_zero(&self) -> Result<(), (i64, usize)> {
        for (&t, d) in &self.diffs {
            let lower = self.diff_at(t - 1);
            let composite = lower.mul(d);
            if !composite.is_zero() {
                let j = (0..composite.cols())
                    .find(|&j| (0..composite.rows()).any(|r| !composite.get(r, j).is_zero()))
                    .unwrap();
                return Err((t, j));
            }
        }
        Ok(())
    }

    pub fn homology_dims(&self, strategy: Strategy) -> BTreeMap<i64, usize> {
        // one rank computation per differential, parallelized
        let keys: Vec<i64> = self.diffs.keys().copied().collect();
        let ranks = strategy.map(keys.clone(), |t| self.diff_at(t).rank());
        let rank_at: BTreeMap<i64, usize> = keys.into_iter().zip(ranks).collect();
        self.dims
            .iter()
            .map(|(&t, &d)| {
                let out_rank = rank_at.get(&t).copied().unwrap_or(0);
                let in_rank = rank_at.get(&(t + 1)).copied().unwrap_or(0);
                (t, d - out_rank - in_rank)
            })
            .collect()
    }

    /// Homology with representative cycles at each degree.
    pub fn homology(&self, strategy: Strategy) -> BTreeMap<i64, Homology> {
        let degrees: Vec<i64> = self.dims.keys().copied().collect();
        let results = strategy.map(degrees.clone(), |t| {
            let cycles = self.diff_at(t).kernel_basis();
            let boundaries = self.diff_at(t + 1).transpose().row_space();
            let mut ech = Echelon::from_matrix(boundaries.basis());
            let mut reps = Vec::new();
            for v in cycles.basis_vectors() {
                if ech.insert(v.clone()) {
                    reps.push(v);
                }
            }
            Homology { dim: reps.len(), representatives: reps }
        });
        degrees.into_iter().zip(results).collect()
    }
}

/// Rank of the map induced on homology at degree `t` by a chain map `f` between
/// complexes `x` and `y` (f[t]: x_t -> y_t must commute with differentials,
/// which the caller is expected to have verified).
pub fn induced_homology_rank(x: &DegComplex, y: &DegComplex, f: &BTreeMap<i64, Matrix>, t: i64) -> usize {
    let f_t = f
        .get(&t)
        .cloned()
        .unwrap_or_else(|| Matrix::zero(y.dim_at(t), x.dim_at(t)));
    let cycles_x = x.diff_at(t).kernel_basis();
    let boundaries_y = y.diff_at(t + 1).transpose().row_space();
    let mut ech = Echelon::from_matrix(boundaries_y.basis());
    let base = ech.rank();
    // also quotient by images of x-boundaries: f(B_x) ⊆ B_y since f is a chain map,
    // so reducing by B_y alone is enough.
    let mut rank = 0;
    for v in cycles_x.basis_vectors() {
        // column vector convention: f acts by apply
        let image = f_t.apply(&v);
        if ech.insert(image) {
            rank += 1;
        }
    }
    debug_assert!(ech.rank() == base + rank);
    rank
}
