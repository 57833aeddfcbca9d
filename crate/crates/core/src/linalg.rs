//! Exact rational matrices: rank, kernels, characteristic polynomials, Leray
//! reduction, and the three equivalence relations on endomorphisms
//! (conjugacy, shift equivalence, spectrum equivalence).
//!
//! The `0×0` matrix is a valid square matrix throughout; it is the trivial
//! endomorphism and the canonical representative of a trivial index.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use crate::error::{bail, Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// A column vector.
pub type Vector = Vec<Rational>;

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if rows.checked_mul(cols) != Some(entries.len()) {
            bail!(
                Dimension,
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows.saturating_mul(cols),
                entries.len()
            );
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::ONE;
        }
        m
    }

    /// The `0×0` matrix.
    pub fn empty() -> Self {
        Self::zeros(0, 0)
    }

    /// Builds a matrix from equal-length rows. An empty slice gives `0×0`.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            bail!(Dimension, "ragged rows");
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience for literals; panics on ragged input.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| Rational::from_i64(v)).collect())
                .collect(),
        )
        .expect("ragged rows")
    }

    /// `1×1` matrix.
    pub fn scalar(v: Rational) -> Self {
        Self {
            rows: 1,
            cols: 1,
            entries: vec![v],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix, or a dimension error naming `op`.
    pub fn require_square(&self, op: &str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::Dimension(alloc::format!(
                "{op} needs a square matrix, got {}x{}",
                self.rows,
                self.cols
            )))
        }
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_i64(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(Rational::is_integer)
    }

    pub fn trace(&self) -> Result<Rational> {
        let n = self.require_square("trace")?;
        Ok((0..n).map(|i| &self[(i, i)]).sum())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            bail!(
                Dimension,
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                rhs.rows,
                rhs.cols
            );
        }
        Ok(self.mul_sparse(&SparseRows::of(rhs)))
    }

    fn mul_sparse(&self, rhs: &SparseRows) -> Self {
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.entries[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in &rhs.rows[k] {
                    out_row[*j] += &(a * b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vector> {
        if v.len() != self.cols {
            bail!(Dimension, "vector of length {} for {} columns", v.len(), self.cols);
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let n = self.require_square("pow")?;
        let sparse = SparseRows::of(self);
        let mut acc = Self::identity(n);
        for _ in 0..k {
            acc = acc.mul_sparse(&sparse);
        }
        Ok(acc)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self·v = 0}` in reduced echelon form.
    pub fn null_space(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::ZERO; self.cols];
            v[free] = Rational::ONE;
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, free)];
            }
            basis.push(v);
        }
        echelon_basis(basis, self.cols)
    }

    /// Basis of the column space in reduced echelon form.
    pub fn column_space(&self) -> Vec<Vector> {
        let (r, pivots) = self.transpose().rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    pub fn determinant(&self) -> Result<Rational> {
        let n = self.require_square("determinant")?;
        let mut m = self.clone();
        let mut det = Rational::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Rational::ZERO);
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            let inv = pivot.recip();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    if m[(c, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(c, j)];
                    m[(i, j)] -= &d;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Option<Self>> {
        let n = self.require_square("inverse")?;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::ONE;
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(Some(inv))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Nonzero entries of each row; used when multiplying on the right by a
/// sparse factor.
struct SparseRows {
    cols: usize,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl SparseRows {
    fn of(m: &RationalMatrix) -> Self {
        Self {
            cols: m.cols,
            rows: (0..m.rows)
                .map(|i| {
                    m.row(i)
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(j, v)| (j, v.clone()))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Row-reduces the span of `vectors` and returns the nonzero rows.
fn echelon_basis(vectors: Vec<Vector>, dim: usize) -> Vec<Vector> {
    if vectors.is_empty() {
        return vectors;
    }
    let count = vectors.len();
    let m = RationalMatrix::new(count, dim, vectors.into_iter().flatten().collect())
        .expect("vectors of equal length");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// `trace(M^n)` for `n = 1..=n_max`, together with the multiplicative order
/// of `M` if it is at most `n_max` (`M^order = I`).
pub fn trace_powers_with_order(
    m: &RationalMatrix,
    n_max: usize,
) -> Result<(Vec<Rational>, Option<usize>)> {
    m.require_square("trace_power_sequence")?;
    let sparse = SparseRows::of(m);
    let mut traces = Vec::with_capacity(n_max);
    let mut order = None;
    let mut power = m.clone();
    for n in 1..=n_max {
        if n > 1 {
            power = power.mul_sparse(&sparse);
        }
        traces.push(power.trace()?);
        if order.is_none() && power.is_identity() {
            order = Some(n);
        }
    }
    Ok((traces, order))
}

/// `trace(M^n)` for `n = 1..=n_max`, exactly.
pub fn trace_power_sequence(m: &RationalMatrix, n_max: usize) -> Result<Vec<Rational>> {
    Ok(trace_powers_with_order(m, n_max)?.0)
}

/// Bases of the generalized kernel `ker(M^n)` and generalized image
/// `im(M^n)` of an `n×n` matrix, each in reduced echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedSubspaces {
    pub kernel: Vec<Vector>,
    pub image: Vec<Vector>,
}

pub fn generalized_subspaces(m: &RationalMatrix) -> Result<GeneralizedSubspaces> {
    let n = m.require_square("generalized_subspaces")?;
    // Kernels of powers stabilize by the n-th power.
    let p = m.pow(n)?;
    Ok(GeneralizedSubspaces {
        kernel: p.null_space(),
        image: p.column_space(),
    })
}

/// The restriction of `M` to its generalized image, in the echelon basis
/// returned by [`generalized_subspaces`]. Always invertible or `0×0`.
pub fn leray_reduction(m: &RationalMatrix) -> Result<RationalMatrix> {
    let GeneralizedSubspaces { image, .. } = generalized_subspaces(m)?;
    restrict_to_echelon_basis(m, &image)
}

/// Matrix of `M` on the invariant subspace spanned by `basis` (rows of a
/// reduced echelon form). In such a basis the coordinate of a vector along
/// `basis[i]` is its entry at the i-th pivot column.
fn restrict_to_echelon_basis(m: &RationalMatrix, basis: &[Vector]) -> Result<RationalMatrix> {
    let k = basis.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|x| !x.is_zero()).expect("nonzero basis vector"))
        .collect();
    let mut out = RationalMatrix::zeros(k, k);
    for (j, b) in basis.iter().enumerate() {
        let image = m.apply(b)?;
        let coords: Vec<Rational> = pivots.iter().map(|&p| image[p].clone()).collect();
        let mut check = vec![Rational::ZERO; image.len()];
        for (c, v) in coords.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            for (slot, x) in check.iter_mut().zip(v) {
                *slot += &(c * x);
            }
        }
        if check != image {
            bail!(Inconsistency, "subspace is not invariant under the matrix");
        }
        for (i, c) in coords.into_iter().enumerate() {
            out[(i, j)] = c;
        }
    }
    Ok(out)
}

/// Monic `det(xI − M)`; the constant `1` for the `0×0` matrix.
///
/// Reduces to upper Hessenberg form by rational similarity and then expands
/// the Hessenberg determinant by the standard three-term recurrence.
pub fn char_poly(m: &RationalMatrix) -> Result<Polynomial> {
    let n = m.require_square("char_poly")?;
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| !h[(i, j)].is_zero()) else {
            continue;
        };
        if p != j + 1 {
            h.swap_rows(p, j + 1);
            for i in 0..n {
                h.entries.swap(i * n + p, i * n + j + 1);
            }
        }
        let inv = h[(j + 1, j)].recip();
        for i in j + 2..n {
            if h[(i, j)].is_zero() {
                continue;
            }
            let u = &h[(i, j)] * &inv;
            for c in 0..n {
                if h[(j + 1, c)].is_zero() {
                    continue;
                }
                let d = &u * &h[(j + 1, c)];
                h[(i, c)] -= &d;
            }
            for r in 0..n {
                if h[(r, i)].is_zero() {
                    continue;
                }
                let d = &u * &h[(r, i)];
                h[(r, j + 1)] += &d;
            }
        }
    }
    // p[k] = characteristic polynomial of the leading k×k block.
    let mut p: Vec<Polynomial> = Vec::with_capacity(n + 1);
    p.push(Polynomial::one());
    for k in 1..=n {
        let mut next = &Polynomial::linear(h[(k - 1, k - 1)].clone()) * &p[k - 1];
        let mut sub_product = Rational::ONE;
        for i in (1..k).rev() {
            sub_product *= &h[(i, i - 1)];
            if sub_product.is_zero() {
                break;
            }
            let coeff = &h[(i - 1, k - 1)] * &sub_product;
            if !coeff.is_zero() {
                next = &next - &p[i - 1].scale(&coeff);
            }
        }
        p.push(next);
    }
    Ok(p.pop().expect("nonempty"))
}

/// Same nonzero complex eigenvalues with multiplicity: the characteristic
/// polynomials agree once all factors of `x` are removed.
pub fn spectrum_equivalent(a: &RationalMatrix, b: &RationalMatrix) -> Result<bool> {
    Ok(char_poly(a)?.strip_x_factors() == char_poly(b)?.strip_x_factors())
}

/// Nontrivial invariant factors of `xI − M`, monic, each dividing the next.
///
/// Diagonalizes the characteristic matrix over `Q[x]` by row and column
/// operations, pivoting on an entry of minimal degree (ties: lowest row, then
/// column) and reducing the rest of the pivot row and column by division with
/// remainder until the pivot divides everything below and to the right.
pub fn invariant_factors(m: &RationalMatrix) -> Result<Vec<Polynomial>> {
    let n = m.require_square("invariant_factors")?;
    let mut a: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -&m[(i, j)];
                    if i == j {
                        Polynomial::from_coeffs(vec![c, Rational::ONE])
                    } else {
                        Polynomial::constant(c)
                    }
                })
                .collect()
        })
        .collect();

    let mut diagonal = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| (a[i][j].degree(), i, j));
            let Some((pi, pj)) = pivot else {
                // det(xI - M) != 0, so a zero block cannot occur.
                bail!(Inconsistency, "characteristic matrix became singular");
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut reduced = true;
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].div_rem(&a[t][t]);
                for j in t..n {
                    if a[t][j].is_zero() {
                        continue;
                    }
                    let d = &q * &a[t][j];
                    a[i][j] = &a[i][j] - &d;
                }
                reduced &= r.is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    if row[t].is_zero() {
                        continue;
                    }
                    let d = &q * &row[t];
                    row[j] = &row[j] - &d;
                }
                reduced &= r.is_zero();
            }
            if !reduced {
                continue;
            }
            let offender = (t + 1..n).find(|&i| (t + 1..n).any(|j| !a[t][t].divides(&a[i][j])));
            match offender {
                Some(i) => {
                    for j in t..n {
                        a[t][j] = &a[t][j] + &a[i][j];
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].monic());
    }
    let mut factors: Vec<Polynomial> = diagonal
        .into_iter()
        .filter(|p| p.degree().is_some_and(|d| d > 0))
        .collect();
    factors.sort_by_key(Polynomial::degree);
    Ok(factors)
}

/// Similar over `Q`: same size and same invariant factors.
pub fn conjugate(a: &RationalMatrix, b: &RationalMatrix) -> Result<bool> {
    let na = a.require_square("conjugate")?;
    let nb = b.require_square("conjugate")?;
    if na != nb {
        return Ok(false);
    }
    Ok(invariant_factors(a)? == invariant_factors(b)?)
}

/// Shift equivalent over `Q`: the Leray reductions are conjugate.
pub fn shift_equivalent_matrices(a: &RationalMatrix, b: &RationalMatrix) -> Result<bool> {
    conjugate(&leray_reduction(a)?, &leray_reduction(b)?)
}


impl core::ops::Sub for &RationalMatrix {
    type Output = RationalMatrix;
    /// Panics on shape mismatch.
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl core::ops::Add for &RationalMatrix {
    type Output = RationalMatrix;
    /// Panics on shape mismatch.
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}
