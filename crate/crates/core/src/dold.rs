//! Arithmetic of periodic index sequences: normalized sequences `σᵏ`,
//! Möbius inversion, Dold congruences.
//!
//! Every sequence `I` of integers with finite period can be written as a
//! rational combination `Σ a_k σᵏ` of the normalized sequences
//! (`σᵏ_n = k` if `k | n`, else `0`) exactly when `a_k` vanishes for `k`
//! beyond the period; Dold's congruences hold iff every `a_k` is an integer.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use dashu_int::IBig;

use crate::error::{bail, Error, Result};
use crate::rational::Rational;

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// The Möbius function.
pub fn mobius(n: usize) -> Result<i32> {
    if n == 0 {
        bail!(Domain, "the Möbius function is defined for n >= 1");
    }
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Möbius values for `0..=n` by a linear sieve (`mu[0]` unused).
fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    if n >= 1 {
        mu[0] = 0;
    }
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let m = i * p;
            if m > n {
                break;
            }
            composite[m] = true;
            if i % p == 0 {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    mu
}

/// A periodic integer sequence `I_1, I_2, …` given by a prefix and a
/// declared period. The prefix length is a positive multiple of the period
/// and the prefix is consistent with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSequence {
    prefix: Vec<IBig>,
    period: usize,
}

impl IndexSequence {
    pub fn new(prefix: Vec<IBig>, period: usize) -> Result<Self> {
        if period == 0 {
            bail!(Format, "period must be at least 1");
        }
        if prefix.is_empty() || prefix.len() % period != 0 {
            bail!(
                Format,
                "prefix length {} is not a positive multiple of the period {period}",
                prefix.len()
            );
        }
        Self::check_consistent(&prefix, period)?;
        Ok(Self { prefix, period })
    }

    pub fn from_i64s(prefix: &[i64], period: usize) -> Result<Self> {
        Self::new(prefix.iter().map(|&v| IBig::from(v)).collect(), period)
    }

    /// Accepts any window of at least one period, checks it against the
    /// period and pads it periodically to a multiple of the period.
    pub fn from_window(mut window: Vec<IBig>, period: usize) -> Result<Self> {
        if period == 0 {
            bail!(Format, "period must be at least 1");
        }
        if window.len() < period {
            bail!(
                Format,
                "window of length {} is shorter than the period {period}",
                window.len()
            );
        }
        Self::check_consistent(&window, period)?;
        while window.len() % period != 0 {
            let v = window[window.len() - period].clone();
            window.push(v);
        }
        Ok(Self {
            prefix: window,
            period,
        })
    }

    fn check_consistent(values: &[IBig], period: usize) -> Result<()> {
        if let Some(n) = (period..values.len()).find(|&i| values[i] != values[i - period]) {
            bail!(
                Format,
                "I_{} = {} differs from I_{} = {} although the declared period is {period}",
                n + 1,
                values[n],
                n + 1 - period,
                values[n - period]
            );
        }
        Ok(())
    }

    pub fn prefix(&self) -> &[IBig] {
        &self.prefix
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// `I_n` for any `n >= 1`, extended periodically.
    pub fn get(&self, n: usize) -> &IBig {
        assert!(n >= 1, "sequences are indexed from 1");
        &self.prefix[(n - 1) % self.period]
    }

    /// `I_1..=I_n_max`.
    pub fn window(&self, n_max: usize) -> Vec<IBig> {
        (1..=n_max).map(|n| self.get(n).clone()).collect()
    }

    /// Agreement with `other` on `1..=n_max`.
    pub fn agrees_with(&self, other: &IndexSequence, n_max: usize) -> bool {
        (1..=n_max).all(|n| self.get(n) == other.get(n))
    }

    /// Default verification window: the prefix, and at least two periods.
    pub fn verification_window(&self) -> usize {
        self.prefix.len().max(2 * self.period)
    }
}

/// Wraps a computed window. When the sequence is known to repeat with
/// period `cycle` and one full cycle fits in the window, the least period
/// dividing `cycle` is used; otherwise the whole window is one period.
pub(crate) fn sequence_with_cycle(window: Vec<IBig>, cycle: Option<usize>) -> Result<IndexSequence> {
    match cycle {
        Some(len) if len >= 1 && len <= window.len() => {
            let first = &window[..len];
            let period = (1..=len)
                .filter(|p| len % p == 0)
                .find(|&p| (0..len).all(|i| first[(i + p) % len] == first[i]))
                .unwrap_or(len);
            IndexSequence::from_window(window, period)
        }
        _ => {
            let len = window.len();
            IndexSequence::new(window, len)
        }
    }
}

/// Sparse coefficients `a_k` of `Σ a_k σᵏ`; zero entries are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DoldCoefficients {
    coeffs: BTreeMap<usize, Rational>,
}

impl DoldCoefficients {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> Result<Self> {
        let mut a = Self::new();
        for (k, v) in pairs {
            if k == 0 {
                bail!(Domain, "normalized sequences are indexed from k = 1");
            }
            if a.coeffs.contains_key(&k) {
                bail!(Format, "coefficient a_{k} given twice");
            }
            a.set(k, v);
        }
        Ok(a)
    }

    pub fn from_i64s(pairs: &[(usize, i64)]) -> Result<Self> {
        Self::from_pairs(pairs.iter().map(|&(k, v)| (k, Rational::from_i64(v))))
    }

    pub fn set(&mut self, k: usize, v: Rational) {
        assert!(k >= 1);
        if v.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, v);
        }
    }

    pub fn get(&self, k: usize) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or(Rational::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.coeffs.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(Rational::is_integer)
    }

    /// Least common multiple of the support (1 for the zero combination).
    pub fn period(&self) -> usize {
        self.coeffs.keys().fold(1, |acc, &k| lcm(acc, k))
    }

    /// Largest `k` with `a_k ≠ 0`.
    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }
}

/// `σᵏ` on `1..=n_max`; `n_max` must be a positive multiple of `k`.
pub fn normalized_sequence(k: usize, n_max: usize) -> Result<IndexSequence> {
    if k == 0 {
        bail!(Domain, "normalized sequences are indexed from k = 1");
    }
    if n_max == 0 || n_max % k != 0 {
        bail!(Domain, "window {n_max} is not a positive multiple of {k}");
    }
    let prefix = (1..=n_max)
        .map(|n| if n % k == 0 { IBig::from(k) } else { IBig::ZERO })
        .collect();
    IndexSequence::new(prefix, k)
}

/// `Σ_{d | n} μ(n/d)·I_d` for `n = 1..=len` (index 0 unused).
fn mobius_sums(seq: &IndexSequence, len: usize) -> Vec<Rational> {
    let mu = mobius_table(len);
    let mut sums = vec![Rational::ZERO; len + 1];
    for d in 1..=len {
        let value = Rational::from_ibig(seq.get(d).clone());
        if value.is_zero() {
            continue;
        }
        for (m, n) in (d..=len).step_by(d).enumerate() {
            match mu[m + 1] {
                1 => sums[n] += &value,
                -1 => sums[n] -= &value,
                _ => {}
            }
        }
    }
    sums
}

/// Möbius inversion `a_k = (1/k)·Σ_{d|k} μ(k/d)·I_d` for `k` up to the
/// period, verified to reproduce the sequence on its verification window
/// with `a_k = 0` beyond the period.
pub fn dold_decompose(seq: &IndexSequence) -> Result<DoldCoefficients> {
    let period = seq.period();
    let sums = mobius_sums(seq, period);
    let mut a = DoldCoefficients::new();
    for (k, s) in sums.into_iter().enumerate().skip(1) {
        a.set(k, &s / &Rational::from(k));
    }
    let window = seq.verification_window();
    let rebuilt = reconstruct(&a, window)?;
    for (i, v) in rebuilt.values.iter().enumerate() {
        let expected = Rational::from_ibig(seq.get(i + 1).clone());
        if *v != expected {
            return Err(Error::Inconsistency(alloc::format!(
                "no finite combination of normalized sequences up to period {period} \
                 reproduces the sequence: first mismatch at n = {} (expected {expected}, got {v})",
                i + 1
            )));
        }
    }
    Ok(a)
}

/// The first non-integral coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoldViolation {
    pub k: usize,
    pub a: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoldCheck {
    pub ok: bool,
    pub coefficients: DoldCoefficients,
    pub first_violation: Option<DoldViolation>,
    /// Smallest `n` in the window with `Σ_{d|n} μ(n/d) I_d ≢ 0 (mod n)`.
    pub first_failing_congruence: Option<usize>,
}

/// Dold's congruences, checked both as integrality of the decomposition and
/// as `Σ_{d|n} μ(n/d)·I_d ≡ 0 (mod n)` over the verification window.
pub fn dold_check(seq: &IndexSequence) -> Result<DoldCheck> {
    let coefficients = dold_decompose(seq)?;
    let first_violation = coefficients
        .iter()
        .find(|(_, v)| !v.is_integer())
        .map(|(k, v)| DoldViolation { k, a: v.clone() });

    let window = seq.verification_window();
    let sums = mobius_sums(seq, window);
    let first_failing_congruence = (1..=window).find(|&n| !(&sums[n] / &Rational::from(n)).is_integer());

    let ok = first_violation.is_none();
    if ok != first_failing_congruence.is_none() {
        bail!(
            Inconsistency,
            "congruence form and inversion form of Dold's condition disagree"
        );
    }
    Ok(DoldCheck {
        ok,
        coefficients,
        first_violation,
        first_failing_congruence,
    })
}

/// Values of `Σ a_k σᵏ` on a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    /// `I_1..=I_{n_max}`.
    pub values: Vec<Rational>,
    /// `lcm` of the support, 1 for the zero combination.
    pub period: usize,
    /// Whether every value in the window is an integer.
    pub integral: bool,
}

/// `I_n = Σ_{k | n} k·a_k` for `n = 1..=n_max`.
pub fn reconstruct(a: &DoldCoefficients, n_max: usize) -> Result<Reconstruction> {
    if n_max == 0 {
        bail!(Domain, "window must contain at least one term");
    }
    let mut values = vec![Rational::ZERO; n_max];
    for (k, v) in a.iter() {
        if k > n_max {
            break;
        }
        let term = v * &Rational::from(k);
        for n in (k..=n_max).step_by(k) {
            values[n - 1] += &term;
        }
    }
    let integral = values.iter().all(Rational::is_integer);
    Ok(Reconstruction {
        values,
        period: a.period(),
        integral,
    })
}

/// [`reconstruct`] as an [`IndexSequence`] covering at least `n_max` terms
/// and a whole number of periods. Requires integral values.
pub fn reconstruct_sequence(a: &DoldCoefficients, n_max: usize) -> Result<IndexSequence> {
    let period = a.period();
    let len = n_max.max(1).div_ceil(period) * period;
    let r = reconstruct(a, len)?;
    let prefix = r
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.to_integer().ok_or_else(|| {
                Error::Domain(alloc::format!("term I_{} = {v} is not an integer", i + 1))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    IndexSequence::new(prefix, period)
}
