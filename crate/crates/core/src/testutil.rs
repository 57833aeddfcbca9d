use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::finite_map::FiniteMap;
use crate::linalg::RationalMatrix;
use crate::rational::Rational;

pub fn mat<R: AsRef<[i64]>>(rows: &[R]) -> RationalMatrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.as_ref().to_vec()).collect();
    RationalMatrix::from_i64_rows(&rows)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Square matrix with small rational entries, each nonzero with probability
/// `density`.
pub fn random_matrix<G: Rng>(rng: &mut G, n: usize, density: f64) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(density) {
                let num = rng.gen_range(-4..=4);
                let den = if rng.gen_bool(0.7) { 1 } else { rng.gen_range(1..=3) };
                m[(i, j)] = Rational::new(num, den);
            }
        }
    }
    m
}

pub fn random_permutation<G: Rng>(rng: &mut G, n: usize) -> FiniteMap {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    FiniteMap::new(images).unwrap()
}

/// Every self-map of an `n`-point set.
pub fn all_maps(n: usize) -> Vec<FiniteMap> {
    let total = n.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let images = (0..n)
                .map(|_| {
                    let v = code % n;
                    code /= n;
                    v
                })
                .collect();
            FiniteMap::new(images).unwrap()
        })
        .collect()
}
