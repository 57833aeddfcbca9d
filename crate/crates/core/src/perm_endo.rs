//! Permutation endomorphisms of a finite map and their reduced versions.
//!
//! For `φ : J → J` the permutation endomorphism `u` of `Q^J` sends `e_j` to
//! `e_{φ(j)}`. It preserves the augmentation `δ(Σ x_j e_j) = Σ x_j`, and the
//! reduced endomorphism is the restriction of `u` to `ker δ`, written in the
//! basis `{e_j − e_0 : j ≥ 1}`.

use crate::error::{bail, Result};
use crate::finite_map::FiniteMap;
use crate::linalg::RationalMatrix;
use crate::rational::Rational;

/// `size×size` 0/1 matrix whose column `j` has its 1 in row `φ(j)`.
pub fn perm_endo_matrix(phi: &FiniteMap) -> RationalMatrix {
    let n = phi.size();
    let mut m = RationalMatrix::zeros(n, n);
    for j in 0..n {
        m[(phi.apply(j), j)] = Rational::ONE;
    }
    m
}

/// Matrix of `u|ker δ` in the basis `f_j = e_j − e_0`, `j = 1..size`.
///
/// `u(f_j) = f_{φ(j)} − f_{φ(0)}` with the convention `f_0 = 0`.
pub fn reduced_perm_endo_matrix(phi: &FiniteMap) -> Result<RationalMatrix> {
    let n = phi.size();
    if n == 0 {
        bail!(Domain, "the reduced endomorphism of the empty map is undefined");
    }
    let mut m = RationalMatrix::zeros(n - 1, n - 1);
    let base = phi.apply(0);
    for j in 1..n {
        let target = phi.apply(j);
        if target != 0 {
            m[(target - 1, j - 1)] += &Rational::ONE;
        }
        if base != 0 {
            m[(base - 1, j - 1)] -= &Rational::ONE;
        }
    }
    Ok(m)
}
