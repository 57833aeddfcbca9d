//! Homological Conley index data of an isolated invariant set and the
//! fixed point indices of the iterates it determines:
//!
//! `i(fⁿ, X) = Σ_r (−1)^r · trace(h_r(f, X)ⁿ)`.
//!
//! Representatives are stored for reduced homology, so no correction term
//! for degree zero appears anywhere.

use alloc::vec;
use alloc::vec::Vec;

use dashu_int::IBig;

use crate::dold::{lcm, sequence_with_cycle, IndexSequence};
use crate::error::{bail, Error, Result};
use crate::linalg::{spectrum_equivalent, trace_powers_with_order, RationalMatrix};
use crate::rational::Rational;

/// Whether the map preserves or reverses orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl Orientation {
    pub fn from_sign(sign: i64) -> Result<Self> {
        match sign {
            1 => Ok(Self::Preserving),
            -1 => Ok(Self::Reversing),
            other => Err(Error::Domain(alloc::format!(
                "orientation must be +1 or -1, got {other}"
            ))),
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Self::Preserving => 1,
            Self::Reversing => -1,
        }
    }

    pub fn as_rational(self) -> Rational {
        Rational::from_i64(self.sign())
    }
}

/// One square representative per homology degree `0..=ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConleyIndexData {
    ambient_dim: usize,
    orientation: Orientation,
    reps: Vec<RationalMatrix>,
}

impl ConleyIndexData {
    pub fn new(
        ambient_dim: usize,
        orientation: Orientation,
        reps: Vec<RationalMatrix>,
    ) -> Result<Self> {
        if reps.len() != ambient_dim + 1 {
            bail!(
                Dimension,
                "ambient dimension {ambient_dim} needs {} representatives, got {}",
                ambient_dim + 1,
                reps.len()
            );
        }
        for (r, m) in reps.iter().enumerate() {
            if !m.is_square() {
                bail!(
                    Dimension,
                    "representative in degree {r} is {}x{}, not square",
                    m.rows(),
                    m.cols()
                );
            }
        }
        Ok(Self {
            ambient_dim,
            orientation,
            reps,
        })
    }

    /// All representatives trivial.
    pub fn trivial(ambient_dim: usize, orientation: Orientation) -> Self {
        Self {
            ambient_dim,
            orientation,
            reps: vec![RationalMatrix::empty(); ambient_dim + 1],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn reps(&self) -> &[RationalMatrix] {
        &self.reps
    }

    pub fn rep(&self, r: usize) -> &RationalMatrix {
        &self.reps[r]
    }

    /// Replaces the representative in degree `r`.
    pub fn with_rep(mut self, r: usize, m: RationalMatrix) -> Result<Self> {
        if r > self.ambient_dim {
            bail!(Dimension, "degree {r} exceeds ambient dimension {}", self.ambient_dim);
        }
        m.require_square("representative")?;
        self.reps[r] = m;
        Ok(self)
    }
}

/// `i(fⁿ, X)` for `n = 1..=n_max`.
///
/// When every representative has finite multiplicative order and the `lcm`
/// `L` of the orders fits in the window, the sequence is exactly
/// `L`-periodic and the returned period is its least period. Otherwise the
/// window is returned with period `n_max`.
pub fn index_sequence(data: &ConleyIndexData, n_max: usize) -> Result<IndexSequence> {
    if n_max == 0 {
        bail!(Domain, "window must contain at least one term");
    }
    let mut totals = vec![Rational::ZERO; n_max];
    let mut joint_order = Some(1usize);
    for (r, m) in data.reps.iter().enumerate() {
        if m.rows() == 0 {
            continue;
        }
        let (traces, order) = trace_powers_with_order(m, n_max)?;
        for (total, t) in totals.iter_mut().zip(&traces) {
            if r % 2 == 0 {
                *total += t;
            } else {
                *total -= t;
            }
        }
        joint_order = match (joint_order, order) {
            (Some(a), Some(b)) => Some(lcm(a, b)),
            _ => None,
        };
    }

    let window = totals
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.to_integer().ok_or_else(|| {
                Error::Inconsistency(alloc::format!(
                    "i(f^{}, X) = {v} is not an integer; the representatives do not come \
                     from an integral index",
                    i + 1
                ))
            })
        })
        .collect::<Result<Vec<IBig>>>()?;

    let cycle = joint_order.filter(|&order| order <= n_max);
    sequence_with_cycle(window, cycle)
}

/// Connected attractor: `h_0 = [1]`, everything else trivial.
pub fn canonical_attractor(d: usize, orientation: Orientation) -> Result<ConleyIndexData> {
    if d == 0 {
        bail!(Domain, "ambient dimension must be at least 1");
    }
    ConleyIndexData::trivial(d, orientation).with_rep(0, RationalMatrix::scalar(Rational::ONE))
}

/// Repeller: `h_d = [d(f)]`, everything else trivial.
pub fn canonical_repeller(d: usize, orientation: Orientation) -> Result<ConleyIndexData> {
    if d == 0 {
        bail!(Domain, "ambient dimension must be at least 1");
    }
    ConleyIndexData::trivial(d, orientation)
        .with_rep(d, RationalMatrix::scalar(orientation.as_rational()))
}

/// Index data for `f⁻¹`: `h_r(f⁻¹) = d(f) · h_{d−r}(f)ᵀ`.
pub fn szymczak_dual(data: &ConleyIndexData) -> ConleyIndexData {
    let d = data.ambient_dim;
    let sign = data.orientation.as_rational();
    let reps = (0..=d).map(|r| data.reps[d - r].transpose().scale(&sign)).collect();
    ConleyIndexData {
        ambient_dim: d,
        orientation: data.orientation,
        reps,
    }
}

/// Whether `data_finv` is dual to `data_f`: for every degree `r`,
/// `h_{d−r}(f)` is spectrum equivalent to `d(f) · h_r(f⁻¹)ᵀ`.
pub fn check_duality(data_f: &ConleyIndexData, data_finv: &ConleyIndexData) -> Result<bool> {
    if data_f.ambient_dim != data_finv.ambient_dim {
        bail!(
            Dimension,
            "ambient dimensions differ: {} vs {}",
            data_f.ambient_dim,
            data_finv.ambient_dim
        );
    }
    if data_f.orientation != data_finv.orientation {
        bail!(Domain, "a map and its inverse have the same orientation behaviour");
    }
    let d = data_f.ambient_dim;
    let sign = data_f.orientation.as_rational();
    for r in 0..=d {
        let dual = data_finv.reps[r].transpose().scale(&sign);
        if !spectrum_equivalent(&data_f.reps[d - r], &dual)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dold::{dold_decompose, DoldCoefficients, IndexSequence};
    use crate::finite_map::{cycle_type, FiniteMap};
    use crate::perm_endo::{perm_endo_matrix, reduced_perm_endo_matrix};
    use crate::testutil::{mat, random_matrix, random_permutation};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const REV: Orientation = Orientation::Reversing;

    fn alternating() -> IndexSequence {
        IndexSequence::from_i64s(&[1, -1], 2).unwrap()
    }

    #[test]
    fn attractor_sequence_is_constant_one() {
        for d in 1..=4 {
            for o in [Orientation::Preserving, REV] {
                let s = index_sequence(&canonical_attractor(d, o).unwrap(), 12).unwrap();
                assert_eq!(s.period(), 1);
                assert!(s.window(12).iter().all(|v| *v == IBig::ONE));
            }
        }
        let a = canonical_attractor(3, REV).unwrap();
        assert_eq!(a.rep(0), &mat(&[[1]]));
        assert!(a.reps()[1..].iter().all(|m| m.rows() == 0));
        assert!(canonical_attractor(0, REV).is_err());
    }

    #[test]
    fn repeller_sequences() {
        let s = index_sequence(&canonical_repeller(3, REV).unwrap(), 12).unwrap();
        assert!(s.agrees_with(&alternating(), 12));
        assert_eq!(s.period(), 2);
        assert_eq!(
            dold_decompose(&s).unwrap(),
            DoldCoefficients::from_i64s(&[(1, 1), (2, -1)]).unwrap()
        );
        let r2 = canonical_repeller(2, Orientation::Preserving).unwrap();
        assert_eq!(r2.rep(2), &mat(&[[1]]));
        let s = index_sequence(&r2, 6).unwrap();
        assert!(s.window(6).iter().all(|v| *v == IBig::ONE));
        // (-1)^d d(f)^n in general
        for d in 1..=4usize {
            for o in [Orientation::Preserving, REV] {
                let s = index_sequence(&canonical_repeller(d, o).unwrap(), 8).unwrap();
                for n in 1..=8u32 {
                    let expected = (-1i64).pow(d as u32) * o.sign().pow(n);
                    assert_eq!(*s.get(n as usize), IBig::from(expected));
                }
            }
        }
    }

    #[test]
    fn direct_evaluation_example() {
        let data = ConleyIndexData::trivial(3, REV).with_rep(1, mat(&[[-1]])).unwrap();
        let s = index_sequence(&data, 8).unwrap();
        assert!(s.agrees_with(&alternating(), 8));
    }

    #[test]
    fn non_integral_totals_are_rejected() {
        let data = ConleyIndexData::trivial(1, REV)
            .with_rep(0, RationalMatrix::scalar(Rational::new(1, 2)))
            .unwrap();
        assert!(matches!(index_sequence(&data, 3), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn infinite_order_is_left_unperiodized() {
        let data = ConleyIndexData::trivial(2, REV).with_rep(2, mat(&[[-2]])).unwrap();
        let s = index_sequence(&data, 10).unwrap();
        assert_eq!(s.period(), 10);
        assert_eq!(*s.get(3), IBig::from(-8));
    }

    #[test]
    fn validation() {
        assert!(matches!(
            ConleyIndexData::new(2, REV, vec![RationalMatrix::empty(); 2]),
            Err(Error::Dimension(_))
        ));
        assert!(ConleyIndexData::new(1, REV, vec![RationalMatrix::empty(), RationalMatrix::zeros(1, 2)]).is_err());
        assert!(Orientation::from_sign(0).is_err());
        assert_eq!(Orientation::from_sign(-1).unwrap(), REV);
    }

    #[test]
    fn dual_examples() {
        let dual = szymczak_dual(&canonical_repeller(3, REV).unwrap());
        assert_eq!(dual, canonical_attractor(3, REV).unwrap());
        let data = ConleyIndexData::trivial(3, REV).with_rep(1, mat(&[[-1]])).unwrap();
        assert_eq!(szymczak_dual(&data).rep(2), &mat(&[[1]]));
    }

    #[test]
    fn duality_check_examples() {
        let rep = canonical_repeller(3, REV).unwrap();
        let att = canonical_attractor(3, REV).unwrap();
        assert!(check_duality(&rep, &att).unwrap());
        assert!(!check_duality(&att, &att).unwrap());
        assert!(matches!(
            check_duality(&att, &canonical_attractor(2, REV).unwrap()),
            Err(Error::Dimension(_))
        ));
    }

    fn random_data(rng: &mut ChaCha8Rng) -> ConleyIndexData {
        let d = rng.gen_range(1..=4);
        let o = if rng.gen_bool(0.5) { REV } else { Orientation::Preserving };
        let reps = (0..=d)
            .map(|_| {
                let n = rng.gen_range(0..=3);
                random_matrix(rng, n, 0.6)
            })
            .collect();
        ConleyIndexData::new(d, o, reps).unwrap()
    }

    #[test]
    fn dual_is_an_involution_up_to_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let data = random_data(&mut rng);
            let dual = szymczak_dual(&data);
            assert!(check_duality(&data, &dual).unwrap());
            let back = szymczak_dual(&dual);
            for (a, b) in data.reps().iter().zip(back.reps()) {
                assert!(spectrum_equivalent(a, b).unwrap());
            }
        }
    }

    #[test]
    fn reduced_representative_traces_bounded_below() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let n = rng.gen_range(1..=7);
            let images = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let phi = FiniteMap::new(images).unwrap();
            let data = ConleyIndexData::trivial(3, REV)
                .with_rep(1, reduced_perm_endo_matrix(&phi).unwrap())
                .unwrap();
            let (traces, _) = trace_powers_with_order(data.rep(1), 24).unwrap();
            assert!(traces.iter().all(|t| *t >= Rational::from_i64(-1)));
        }
    }

    /// Reps built from signed permutation matrices give sequences whose
    /// period divides twice the lcm of the cycle lengths.
    #[test]
    fn signed_permutation_data_is_periodic() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let d = rng.gen_range(1..=4);
            let mut bound = 1;
            let reps: Vec<RationalMatrix> = (0..=d)
                .map(|_| {
                    let n = rng.gen_range(0..=5);
                    let pi = random_permutation(&mut rng, n);
                    bound = lcm(bound, cycle_type(&pi).unwrap().lcm());
                    let mut m = perm_endo_matrix(&pi);
                    for j in 0..n {
                        if rng.gen_bool(0.5) {
                            let i = pi.apply(j);
                            m[(i, j)] = Rational::from_i64(-1);
                        }
                    }
                    m
                })
                .collect();
            let data = ConleyIndexData::new(d, REV, reps).unwrap();
            let s = index_sequence(&data, 2 * 60).unwrap();
            assert_eq!((2 * bound) % s.period(), 0, "period {} vs bound {}", s.period(), bound);
        }
    }
}
