//! Exact rationals.
//!
//! Values whose reduced numerator fits an `i64` and denominator fits a `u64`
//! are stored inline and use 128-bit intermediate arithmetic; anything larger
//! spills to an arbitrary-precision [`RBig`]. The representation is canonical:
//! a value is `Small` whenever it fits, so structural equality is value
//! equality.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use dashu_base::UnsignedAbs;
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use crate::error::Error;

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    /// `gcd(|num|, den) == 1`, `den >= 1`.
    Small { num: i64, den: u64 },
    /// Only used for values that do not fit `Small`.
    Big(RBig),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            core::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rational {
    pub const ZERO: Rational = Rational(Repr::Small { num: 0, den: 1 });
    pub const ONE: Rational = Rational(Repr::Small { num: 1, den: 1 });

    pub const fn from_i64(n: i64) -> Self {
        Rational(Repr::Small { num: n, den: 1 })
    }

    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 {
            (-(num as i128), (den as i128).unsigned_abs())
        } else {
            (num as i128, den as u128)
        };
        Self::from_i128_parts(num, den)
    }

    pub fn from_ibig(n: IBig) -> Self {
        Self::from_rbig(RBig::from(n))
    }

    /// Builds `num / den` from arbitrary-precision parts. Panics if `den` is zero.
    pub fn from_parts(num: IBig, den: UBig) -> Self {
        Self::from_rbig(RBig::from_parts(num, den))
    }

    fn from_i128_parts(num: i128, den: u128) -> Self {
        debug_assert!(den != 0);
        let g = gcd_u128(num.unsigned_abs(), den);
        let (num, den) = if g > 1 {
            (num / g as i128, den / g)
        } else {
            (num, den)
        };
        match (i64::try_from(num), u64::try_from(den)) {
            (Ok(num), Ok(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(RBig::from_parts(IBig::from(num), UBig::from(den)))),
        }
    }

    fn from_rbig(r: RBig) -> Self {
        let small = match (
            i64::try_from(r.numerator()),
            u64::try_from(r.denominator()),
        ) {
            (Ok(num), Ok(den)) => Some((num, den)),
            _ => None,
        };
        match small {
            Some((num, den)) => Rational(Repr::Small { num, den }),
            None => Rational(Repr::Big(r)),
        }
    }

    fn to_rbig(&self) -> RBig {
        match &self.0 {
            Repr::Small { num, den } => RBig::from_parts(IBig::from(*num), UBig::from(*den)),
            Repr::Big(r) => r.clone(),
        }
    }

    /// Exact value of a finite `f64` (every finite double is a dyadic rational).
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Self::ZERO);
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i32;
        let fraction = bits & ((1u64 << 52) - 1);
        let (mantissa, exp) = if biased == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), biased - 1075)
        };
        let mut num = IBig::from(mantissa);
        if negative {
            num = -num;
        }
        let value = if exp >= 0 {
            Self::from_ibig(num << exp as usize)
        } else {
            Self::from_parts(num, UBig::ONE << (-exp) as usize)
        };
        Some(value)
    }

    /// Nearest-ish `f64`; only for sampling and diagnostics, never for decisions.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(r) => r.to_f64().value(),
        }
    }

    pub fn numer(&self) -> IBig {
        match &self.0 {
            Repr::Small { num, .. } => IBig::from(*num),
            Repr::Big(r) => r.numerator().clone(),
        }
    }

    pub fn denom(&self) -> UBig {
        match &self.0 {
            Repr::Small { den, .. } => UBig::from(*den),
            Repr::Big(r) => r.denominator().clone(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(r) => r.denominator().is_one(),
        }
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<IBig> {
        if self.is_integer() {
            Some(self.numer())
        } else {
            None
        }
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small { num, den: 1 } => Some(*num),
            _ => None,
        }
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(r) => {
                let n = r.numerator();
                if *n < IBig::ZERO {
                    -1
                } else if *n == IBig::ZERO {
                    0
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small { num, den } => {
                assert!(*num != 0, "reciprocal of zero");
                let n = *num as i128;
                let d = *den as i128;
                if n < 0 {
                    Self::from_i128_parts(-d, n.unsigned_abs())
                } else {
                    Self::from_i128_parts(d, n as u128)
                }
            }
            Repr::Big(r) => {
                assert!(*r.numerator() != IBig::ZERO, "reciprocal of zero");
                let num = r.numerator().clone();
                let den = IBig::from(r.denominator().clone());
                let (sign_neg, mag) = (num < IBig::ZERO, num.unsigned_abs());
                let new_num = if sign_neg { -den } else { den };
                Self::from_parts(new_num, mag)
            }
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::ONE;
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Self::from_i64(n as i64)
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        match i64::try_from(n) {
            Ok(v) => Self::from_i64(v),
            Err(_) => Self::from_ibig(IBig::from(n)),
        }
    }
}

impl From<IBig> for Rational {
    fn from(n: IBig) -> Self {
        Self::from_ibig(n)
    }
}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.numerator().hash(state);
                r.denominator().hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    a.cmp(c)
                } else {
                    (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
                }
            }
            _ => self.to_rbig().cmp(&other.to_rbig()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &'a Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (_, _) if rhs.is_zero() => self.clone(),
            (_, _) if self.is_zero() => rhs.clone(),
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: c, den: 1 }) => {
                match a.checked_add(*c) {
                    Some(s) => Rational::from_i64(s),
                    None => Rational::from_i128_parts(*a as i128 + *c as i128, 1),
                }
            }
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                let lhs = *a as i128 * *d as i128;
                let rhs_ = *c as i128 * *b as i128;
                match lhs.checked_add(rhs_) {
                    Some(n) => Rational::from_i128_parts(n, *b as u128 * *d as u128),
                    None => Rational::from_rbig(self.to_rbig() + rhs.to_rbig()),
                }
            }
            _ => Rational::from_rbig(self.to_rbig() + rhs.to_rbig()),
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &'a Rational) -> Rational {
        if rhs.is_zero() {
            return self.clone();
        }
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &'a Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (_, _) if self.is_zero() || rhs.is_zero() => Rational::ZERO,
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: c, den: 1 }) => {
                match a.checked_mul(*c) {
                    Some(p) => Rational::from_i64(p),
                    None => Rational::from_i128_parts(*a as i128 * *c as i128, 1),
                }
            }
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Rational::from_i128_parts(*a as i128 * *c as i128, *b as u128 * *d as u128)
            }
            _ => Rational::from_rbig(self.to_rbig() * rhs.to_rbig()),
        }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        self * &rhs.recip()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => match num.checked_neg() {
                Some(n) => Rational(Repr::Small { num: n, den: *den }),
                None => Rational::from_i128_parts(-(*num as i128), *den as u128),
            },
            Repr::Big(r) => Rational::from_rbig(-r.clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational { (&self).$m(rhs) }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        if !rhs.is_zero() {
            *self = &*self + rhs;
        }
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self += &rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        if !rhs.is_zero() {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ONE, |acc, x| acc * x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(r) => {
                if r.denominator().is_one() {
                    write!(f, "{}", r.numerator())
                } else {
                    write!(f, "{}/{}", r.numerator(), r.denominator())
                }
            }
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_integer(s: &str) -> Result<IBig, Error> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Format(alloc::format!("not an integer: {s:?}")));
    }
    IBig::from_str(s.strip_prefix('+').unwrap_or(s))
        .map_err(|e| Error::Format(alloc::format!("bad integer {s:?}: {e}")))
}

/// Parses `"p"` or `"p/q"` with decimal integers; `q` must be positive.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Rational::from_ibig(parse_integer(s)?)),
            Some((p, q)) => {
                let num = parse_integer(p.trim())?;
                let q = q.trim();
                if q.starts_with(['-', '+']) {
                    return Err(Error::Format(alloc::format!(
                        "denominator must be an unsigned integer: {s:?}"
                    )));
                }
                let den = parse_integer(q)?;
                if den == IBig::ZERO {
                    return Err(Error::Format(alloc::format!("zero denominator: {s:?}")));
                }
                Ok(Rational::from_parts(num, den.unsigned_abs()))
            }
        }
    }
}

impl Rational {
    /// Same as `to_string`, named for the wire format.
    pub fn to_wire(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big() -> Rational {
        Rational::from_ibig(IBig::from(i64::MAX) * IBig::from(7))
    }

    #[test]
    fn normalizes_sign_and_gcd() {
        assert_eq!(Rational::new(2, -4), Rational::new(-1, 2));
        assert_eq!(Rational::new(0, -5), Rational::ZERO);
        assert_eq!(Rational::new(6, 3).to_string(), "2");
    }

    #[test]
    fn spills_and_returns_to_small() {
        let b = big();
        assert!(matches!(b.0, Repr::Big(_)));
        let back = &b / &Rational::from_i64(7);
        assert_eq!(back, Rational::from_i64(i64::MAX));
        assert!(matches!(back.0, Repr::Small { .. }));
        assert_eq!(-Rational::from_i64(i64::MIN), Rational::from_ibig(-IBig::from(i64::MIN)));
    }

    #[test]
    fn parse_and_display() {
        for s in ["0", "-3", "1/2", "-7/3", "123456789012345678901234567890/11"] {
            assert_eq!(s.parse::<Rational>().unwrap().to_string(), s);
        }
        assert_eq!("4/6".parse::<Rational>().unwrap().to_string(), "2/3");
        assert_eq!("+5".parse::<Rational>().unwrap(), Rational::from_i64(5));
        for bad in ["", "1.5", "1/0", "a", "1/-2", "--1", "1/"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn from_f64_is_exact() {
        assert_eq!(Rational::from_f64(0.5).unwrap(), Rational::new(1, 2));
        assert_eq!(Rational::from_f64(-3.0).unwrap(), Rational::from_i64(-3));
        let tenth = Rational::from_f64(0.1).unwrap();
        assert_eq!(tenth.to_f64(), 0.1);
        assert!(tenth != Rational::new(1, 10));
        assert!(Rational::from_f64(f64::NAN).is_none());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn order_matches_big_backend(a in small_rational(), b in small_rational()) {
            prop_assert_eq!(a.cmp(&b), a.to_rbig().cmp(&b.to_rbig()));
            prop_assert_eq!((&a + &b).to_rbig(), a.to_rbig() + b.to_rbig());
            prop_assert_eq!((&a * &b).to_rbig(), a.to_rbig() * b.to_rbig());
        }
    }
}
