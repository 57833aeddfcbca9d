//! Realizability of index sequences at an isolated fixed point of an
//! orientation reversing homeomorphism of `R³`.
//!
//! A sequence `Σ a_k σᵏ` is realizable iff every `a_k` is an integer,
//! `a_1 ≤ 1` and `a_k ≤ 0` for odd `k > 1`. Realizations are described by
//! two permutations: `φ` acting on the components of the exit set in
//! degree one and `φ′` in degree two.

use alloc::vec::Vec;
use core::fmt;

use dashu_int::IBig;

use crate::conley::{index_sequence, ConleyIndexData, Orientation};
use crate::dold::{lcm, reconstruct_sequence, sequence_with_cycle, DoldCoefficients, IndexSequence};
use crate::error::{bail, Error, Result};
use crate::finite_map::{
    fix_sequence, periodic_cycle_type, permutation_from_cycle_counts, CycleCounts, FiniteMap,
};
use crate::perm_endo::reduced_perm_endo_matrix;
use crate::rational::Rational;

/// First clause of the realizability conditions that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionViolation {
    NonIntegral { k: usize, a: Rational },
    FirstTooLarge { a: Rational },
    OddPositive { k: usize, a: Rational },
}

impl fmt::Display for ConditionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonIntegral { k, a } => write!(f, "a_{k} = {a} is not an integer"),
            Self::FirstTooLarge { a } => write!(f, "a_1 = {a} exceeds 1"),
            Self::OddPositive { k, a } => write!(f, "a_{k} = {a} is positive for odd k > 1"),
        }
    }
}

impl ConditionViolation {
    /// Short machine readable name of the clause.
    pub fn clause(&self) -> &'static str {
        match self {
            Self::NonIntegral { .. } => "integrality",
            Self::FirstTooLarge { .. } => "a1_at_most_one",
            Self::OddPositive { .. } => "odd_nonpositive",
        }
    }

    pub fn k(&self) -> usize {
        match self {
            Self::FirstTooLarge { .. } => 1,
            Self::NonIntegral { k, .. } | Self::OddPositive { k, .. } => *k,
        }
    }
}

/// `Ok(())` iff `a` is realizable; otherwise the violated clause with the
/// smallest `k` (integrality is checked first for each `k`).
pub fn check_conditions(a: &DoldCoefficients) -> core::result::Result<(), ConditionViolation> {
    for (k, v) in a.iter() {
        if !v.is_integer() {
            return Err(ConditionViolation::NonIntegral { k, a: v.clone() });
        }
        if k == 1 && *v > Rational::ONE {
            return Err(ConditionViolation::FirstTooLarge { a: v.clone() });
        }
        if k > 1 && k % 2 == 1 && v.signum() > 0 {
            return Err(ConditionViolation::OddPositive { k, a: v.clone() });
        }
    }
    Ok(())
}

/// `I_n = 2 − #Fix(φⁿ) − #Fix(φ′ⁿ)` for odd `n` and
/// `I_n = −#Fix(φⁿ) + #Fix(φ′ⁿ)` for even `n`.
pub fn index_from_maps(phi: &FiniteMap, phi_prime: &FiniteMap, n_max: usize) -> Result<IndexSequence> {
    if n_max == 0 {
        bail!(Domain, "window must contain at least one term");
    }
    let fix = fix_sequence(phi, n_max);
    let fix_prime = fix_sequence(phi_prime, n_max);
    let window = (1..=n_max)
        .map(|n| {
            let (f, g) = (fix[n - 1] as i64, fix_prime[n - 1] as i64);
            IBig::from(if n % 2 == 1 { 2 - f - g } else { g - f })
        })
        .collect();
    let cycle = lcm(2, lcm(periodic_cycle_type(phi).lcm(), periodic_cycle_type(phi_prime).lcm()));
    sequence_with_cycle(window, Some(cycle))
}

/// Coefficients of the sequence produced by permutations with cycle counts
/// `b` and `c`, cross-checked against [`index_from_maps`].
pub fn coeffs_from_cycle_counts(b: &CycleCounts, c: &CycleCounts) -> Result<DoldCoefficients> {
    let top = b
        .iter()
        .map(|(k, _)| k)
        .chain(c.iter().map(|(k, _)| 2 * k))
        .fold(2, usize::max);
    let bk = |k: usize| b.get(k) as i64;
    let ck = |k: usize| c.get(k) as i64;
    let mut a = DoldCoefficients::new();
    for k in 1..=top {
        let v = match k {
            1 => 2 - bk(1) - ck(1),
            2 => -1 - bk(2) + ck(2) + ck(1),
            _ if k % 2 == 1 => -bk(k) - ck(k),
            _ if (k / 2) % 2 == 0 => -bk(k) + ck(k),
            _ => -bk(k) + ck(k) + ck(k / 2),
        };
        a.set(k, Rational::from_i64(v));
    }

    let window = 2 * lcm(b.lcm(), c.lcm()).max(top);
    let direct = index_from_maps(
        &permutation_from_cycle_counts(b),
        &permutation_from_cycle_counts(c),
        window,
    )?;
    let rebuilt = reconstruct_sequence(&a, window)?;
    if let Some(n) = (1..=window).find(|&n| direct.get(n) != rebuilt.get(n)) {
        bail!(
            Inconsistency,
            "coefficients reproduce I_{n} = {} but the permutations give {}",
            rebuilt.get(n),
            direct.get(n)
        );
    }
    Ok(a)
}

/// Minimal cycle counts realizing `a`: `c_1 = 1`, `b_2 ≥ 1`, `c_k = 0` for
/// odd `k > 1`, and every other entry as small as the equations allow.
pub fn solve_witness(a: &DoldCoefficients) -> Result<(CycleCounts, CycleCounts)> {
    if let Err(v) = check_conditions(a) {
        bail!(Realizability, "{} ({})", v, v.clause());
    }
    let int = |k: usize| a.get(k).to_i64().expect("realizable coefficients are small integers");
    let count = |v: i64| usize::try_from(v).expect("counts are nonnegative");
    let mut b = CycleCounts::new();
    let mut c = CycleCounts::new();
    c.add(1, 1);
    b.add(1, count(1 - int(1)));
    let b2 = (-int(2)).max(1);
    b.add(2, count(b2));
    c.add(2, count(int(2) + b2));
    let top = a.max_index().unwrap_or(0);
    for k in 3..=top {
        let v = int(k);
        if k % 2 == 1 {
            b.add(k, count(-v));
        } else {
            b.add(k, count((-v).max(0)));
            c.add(k, count(v.max(0)));
        }
    }
    // c vanishes on odd k > 1, so the c_{k/2} terms drop out.
    Ok((b, c))
}

/// A verified combinatorial realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationWitness {
    pub a: DoldCoefficients,
    pub b: CycleCounts,
    pub c: CycleCounts,
    pub phi: FiniteMap,
    pub phi_prime: FiniteMap,
    pub data: ConleyIndexData,
    pub verified_window: usize,
    /// `index_sequence(data)` over the verified window.
    pub sequence: IndexSequence,
}

/// Index data of the realization with degree-one action `φ` and
/// degree-two action `φ′`.
pub fn data_from_maps(phi: &FiniteMap, phi_prime: &FiniteMap) -> Result<ConleyIndexData> {
    let orientation = Orientation::Reversing;
    ConleyIndexData::trivial(3, orientation)
        .with_rep(1, reduced_perm_endo_matrix(phi)?)?
        .with_rep(2, reduced_perm_endo_matrix(phi_prime)?.neg())
}

pub fn realize(a: &DoldCoefficients) -> Result<RealizationWitness> {
    let (b, c) = solve_witness(a)?;
    let phi = permutation_from_cycle_counts(&b);
    let phi_prime = permutation_from_cycle_counts(&c);
    let data = data_from_maps(&phi, &phi_prime)?;
    let verified_window = 24.max(2 * lcm(b.lcm(), c.lcm()));

    let sequence = index_sequence(&data, verified_window)?;
    let expected = reconstruct_sequence(a, verified_window)?;
    if let Some(n) = (1..=verified_window).find(|&n| sequence.get(n) != expected.get(n)) {
        return Err(Error::Inconsistency(alloc::format!(
            "witness gives I_{n} = {} but the coefficients give {}",
            sequence.get(n),
            expected.get(n)
        )));
    }
    Ok(RealizationWitness {
        a: a.clone(),
        b,
        c,
        phi,
        phi_prime,
        data,
        verified_window,
        sequence,
    })
}

/// Cycle lengths occurring in a witness.
pub fn witness_cycle_lengths(w: &RealizationWitness) -> Vec<usize> {
    let mut out: Vec<usize> = w.b.iter().chain(w.c.iter()).map(|(k, _)| k).collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dold::dold_decompose;
    use crate::finite_map::cycle_type;
    use crate::linalg::RationalMatrix;
    use crate::testutil::{mat, random_permutation};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn coeffs(v: &[(usize, i64)]) -> DoldCoefficients {
        DoldCoefficients::from_i64s(v).unwrap()
    }

    fn counts(v: &[(usize, usize)]) -> CycleCounts {
        CycleCounts::from_pairs(v.iter().copied()).unwrap()
    }

    fn ints(s: &IndexSequence, n: usize) -> Vec<i64> {
        s.window(n).iter().map(|v| i64::try_from(v).unwrap()).collect()
    }

    #[test]
    fn condition_examples() {
        assert_eq!(check_conditions(&coeffs(&[(1, 1)])), Ok(()));
        assert_eq!(check_conditions(&coeffs(&[(3, 1)])).unwrap_err().clause(), "odd_nonpositive");
        assert_eq!(check_conditions(&coeffs(&[(1, 2)])).unwrap_err().clause(), "a1_at_most_one");
        let half = DoldCoefficients::from_pairs([(2, Rational::new(1, 2))]).unwrap();
        assert_eq!(check_conditions(&half).unwrap_err().k(), 2);
        assert_eq!(check_conditions(&coeffs(&[(2, 5), (4, -3)])), Ok(()));
    }

    #[test]
    fn index_from_maps_examples() {
        let swap = FiniteMap::cycle(2);
        let one = FiniteMap::identity(1);
        assert_eq!(ints(&index_from_maps(&swap, &one, 6).unwrap(), 6), [1, -1, 1, -1, 1, -1]);
        assert_eq!(index_from_maps(&swap, &one, 6).unwrap().period(), 2);
        assert!(ints(&index_from_maps(&one, &one, 6).unwrap(), 6).iter().all(|&v| v == 0));
        let both = one.disjoint_union(&swap);
        assert!(ints(&index_from_maps(&both, &both, 8).unwrap(), 8).iter().all(|&v| v == 0));
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(
            coeffs_from_cycle_counts(&counts(&[(2, 1)]), &counts(&[(1, 1)])).unwrap(),
            coeffs(&[(1, 1), (2, -1)])
        );
        assert!(coeffs_from_cycle_counts(&counts(&[(1, 1)]), &counts(&[(1, 1)]))
            .unwrap()
            .is_empty());
        assert_eq!(
            coeffs_from_cycle_counts(&counts(&[(3, 1), (2, 1)]), &counts(&[(1, 1)])).unwrap(),
            coeffs(&[(1, 1), (2, -1), (3, -1)])
        );
    }

    #[test]
    fn solver_examples() {
        let (b, c) = solve_witness(&coeffs(&[(1, 1)])).unwrap();
        assert_eq!((b, c), (counts(&[(2, 1)]), counts(&[(1, 1), (2, 1)])));
        let (b, c) = solve_witness(&coeffs(&[(1, 1), (2, -1)])).unwrap();
        assert_eq!((b, c), (counts(&[(2, 1)]), counts(&[(1, 1)])));
        let (b, c) = solve_witness(&coeffs(&[(3, -1)])).unwrap();
        assert_eq!((b, c), (counts(&[(1, 1), (2, 1), (3, 1)]), counts(&[(1, 1), (2, 1)])));
        assert!(matches!(solve_witness(&coeffs(&[(3, 1)])), Err(Error::Realizability(_))));
    }

    #[test]
    fn realize_examples() {
        let w = realize(&coeffs(&[(1, 1)])).unwrap();
        assert!(ints(&w.sequence, 24).iter().all(|&v| v == 1));
        let w = realize(&coeffs(&[(1, 1), (2, -1)])).unwrap();
        assert_eq!(ints(&w.sequence, 4), [1, -1, 1, -1]);
        assert_eq!(w.data.rep(1), &mat(&[[-1]]));
        assert_eq!(w.data.rep(2), &RationalMatrix::empty());
        assert_eq!(w.verified_window, 24);
        assert!(matches!(realize(&coeffs(&[(3, 1)])), Err(Error::Realizability(_))));
    }

    #[test]
    fn witness_invariants_over_a_grid() {
        for a1 in -3..=1 {
            for a2 in -3..=3 {
                for a3 in -3..=0 {
                    for a4 in -3..=3 {
                        let a = coeffs(&[(1, a1), (2, a2), (3, a3), (4, a4)]);
                        let w = realize(&a).unwrap();
                        assert_eq!(w.c.get(1), 1);
                        assert!(w.b.get(2) >= 1);
                        assert!(w.c.iter().all(|(k, n)| k == 1 || k % 2 == 0 || n == 0));
                        assert_eq!(cycle_type(&w.phi).unwrap(), w.b);
                        assert_eq!(cycle_type(&w.phi_prime).unwrap(), w.c);
                        assert_eq!(coeffs_from_cycle_counts(&w.b, &w.c).unwrap(), a);
                        assert!(w.verified_window >= 2 * lcm(w.b.lcm(), w.c.lcm()));
                    }
                }
            }
        }
    }

    /// Permutation pairs with `c_1 ≥ 1` and `φ′` of order at most two give
    /// realizable coefficients.
    #[test]
    fn necessity_on_small_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let phi = { let n = rng.gen_range(1..=6); random_permutation(&mut rng, n) };
            let fixed = rng.gen_range(1..=4);
            let swaps = rng.gen_range(0..=2);
            let phi_prime = permutation_from_cycle_counts(&counts(&[(1, fixed), (2, swaps)]));
            let s = index_from_maps(&phi, &phi_prime, 24).unwrap();
            let a = dold_decompose(&s).unwrap();
            assert_eq!(check_conditions(&a), Ok(()), "{phi:?} {phi_prime:?}");
            assert!(i64::try_from(s.get(1)).unwrap() <= 1);
        }
    }

    #[test]
    fn index_from_maps_matches_conley_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let phi = { let n = rng.gen_range(1..=6); random_permutation(&mut rng, n) };
            let phi_prime = { let n = rng.gen_range(1..=6); random_permutation(&mut rng, n) };
            let data = data_from_maps(&phi, &phi_prime).unwrap();
            let lhs = index_sequence(&data, 24).unwrap();
            let rhs = index_from_maps(&phi, &phi_prime, 24).unwrap();
            assert!(lhs.agrees_with(&rhs, 24));
            let cycle = lcm(2, lcm(cycle_type(&phi).unwrap().lcm(), cycle_type(&phi_prime).unwrap().lcm()));
            if cycle <= 24 {
                assert_eq!(lhs.period(), rhs.period());
            }
        }
    }
}
