//! Exact integer arithmetic.
//!
//! [`ExactInt`] is an arbitrary-precision signed integer that stays on an
//! inline `i128` while the value fits and promotes to a heap `BigInt`
//! otherwise. Every operation is exact; nothing truncates silently.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::SolveError;

#[derive(Clone)]
enum Repr {
    Small(i128),
    Big(BigInt),
}

/// Arbitrary-precision signed integer.
///
/// The `Big` representation is only used for values outside the `i128`
/// range, so equality and hashing can compare representations directly.
#[derive(Clone)]
pub struct ExactInt(Repr);

impl ExactInt {
    pub const fn zero() -> Self {
        ExactInt(Repr::Small(0))
    }

    pub const fn one() -> Self {
        ExactInt(Repr::Small(1))
    }

    fn from_big(b: BigInt) -> Self {
        match b.to_i128() {
            Some(v) => ExactInt(Repr::Small(v)),
            None => ExactInt(Repr::Big(b)),
        }
    }

    fn to_big(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(v) => v.signum() as i32,
            Repr::Big(b) => match b.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn abs(&self) -> ExactInt {
        match &self.0 {
            Repr::Small(v) => match v.checked_abs() {
                Some(a) => ExactInt(Repr::Small(a)),
                None => ExactInt::from_big(BigInt::from(*v).abs()),
            },
            Repr::Big(b) => ExactInt::from_big(b.abs()),
        }
    }

    /// Number of bits in the magnitude; zero has bit length 0.
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Repr::Small(v) => 128 - u64::from(v.unsigned_abs().leading_zeros()),
            Repr::Big(b) => b.bits(),
        }
    }

    pub fn is_even(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => v % 2 == 0,
            Repr::Big(b) => b.is_even(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => i64::try_from(*v).ok(),
            Repr::Big(_) => None,
        }
    }

    pub fn to_i128(&self) -> Option<i128> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    /// Lossy conversion for reporting and statistics only.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(v) => *v as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn pow(&self, exp: u32) -> ExactInt {
        if let Repr::Small(v) = self.0 {
            if let Some(p) = v.checked_pow(exp) {
                return ExactInt(Repr::Small(p));
            }
        }
        ExactInt::from_big(num_traits::pow(self.to_big(), exp as usize))
    }

    /// `2^k`.
    pub fn pow2(k: u32) -> ExactInt {
        if k < 127 {
            ExactInt(Repr::Small(1i128 << k))
        } else {
            ExactInt::from_big(BigInt::one() << k)
        }
    }

    /// Floor division. Panics when `d` is zero.
    pub fn div_floor(&self, d: &ExactInt) -> ExactInt {
        assert!(!d.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &d.0) {
            if let (Some(q), Some(r)) = (a.checked_div(*b), a.checked_rem(*b)) {
                let q = if r != 0 && ((r < 0) != (*b < 0)) { q - 1 } else { q };
                return ExactInt(Repr::Small(q));
            }
        }
        ExactInt::from_big(Integer::div_floor(&self.to_big(), &d.to_big()))
    }

    /// Floor remainder: the result has the sign of `d`.
    pub fn mod_floor(&self, d: &ExactInt) -> ExactInt {
        self - &(&self.div_floor(d) * d)
    }

    /// True when `d` divides `self` (`d` nonzero).
    pub fn is_multiple_of(&self, d: &ExactInt) -> bool {
        self.mod_floor(d).is_zero()
    }

    pub fn max(self, other: ExactInt) -> ExactInt {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: ExactInt) -> ExactInt {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Default for ExactInt {
    fn default() -> Self {
        ExactInt::zero()
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for ExactInt {
            fn from(v: $t) -> Self {
                ExactInt(Repr::Small(v as i128))
            }
        }
    )*};
}
from_prim!(i8, i16, i32, i64, i128, u8, u16, u32, u64, usize);

impl From<BigInt> for ExactInt {
    fn from(b: BigInt) -> Self {
        ExactInt::from_big(b)
    }
}

impl From<&ExactInt> for BigInt {
    fn from(v: &ExactInt) -> Self {
        v.to_big()
    }
}

impl PartialEq for ExactInt {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for ExactInt {}

impl PartialEq<i64> for ExactInt {
    fn eq(&self, other: &i64) -> bool {
        matches!(self.0, Repr::Small(v) if v == *other as i128)
    }
}

impl PartialOrd<i64> for ExactInt {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(match &self.0 {
            Repr::Small(v) => v.cmp(&(*other as i128)),
            Repr::Big(b) => {
                if b.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        })
    }
}

impl Hash for ExactInt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(v) => v.hash(state),
            Repr::Big(b) => b.hash(state),
        }
    }
}

impl Ord for ExactInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            // A big value always lies outside the i128 range.
            (Repr::Small(_), Repr::Big(b)) => {
                if b.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (Repr::Big(a), Repr::Small(_)) => {
                if a.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Repr::Big(a), Repr::Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExactInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => fmt::Display::fmt(v, f),
            Repr::Big(b) => fmt::Display::fmt(b, f),
        }
    }
}

impl fmt::Debug for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactInt {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<i128>() {
            return Ok(ExactInt(Repr::Small(v)));
        }
        s.parse::<BigInt>().map(ExactInt::from_big)
    }
}

impl serde::Serialize for ExactInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for ExactInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident, $assign_tr:ident, $assign_method:ident) => {
        impl<'a> $tr<&'a ExactInt> for &'a ExactInt {
            type Output = ExactInt;
            #[inline]
            fn $method(self, rhs: &'a ExactInt) -> ExactInt {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(v) = a.$checked(*b) {
                        return ExactInt(Repr::Small(v));
                    }
                }
                ExactInt::from_big($tr::$method(self.to_big(), rhs.to_big()))
            }
        }

        impl $tr<ExactInt> for ExactInt {
            type Output = ExactInt;
            #[inline]
            fn $method(self, rhs: ExactInt) -> ExactInt {
                $tr::$method(&self, &rhs)
            }
        }

        impl<'a> $tr<&'a ExactInt> for ExactInt {
            type Output = ExactInt;
            #[inline]
            fn $method(self, rhs: &'a ExactInt) -> ExactInt {
                $tr::$method(&self, rhs)
            }
        }

        impl<'a> $tr<ExactInt> for &'a ExactInt {
            type Output = ExactInt;
            #[inline]
            fn $method(self, rhs: ExactInt) -> ExactInt {
                $tr::$method(self, &rhs)
            }
        }

        impl $tr<i64> for &ExactInt {
            type Output = ExactInt;
            #[inline]
            fn $method(self, rhs: i64) -> ExactInt {
                $tr::$method(self, &ExactInt::from(rhs))
            }
        }

        impl $tr<i64> for ExactInt {
            type Output = ExactInt;
            #[inline]
            fn $method(self, rhs: i64) -> ExactInt {
                $tr::$method(&self, &ExactInt::from(rhs))
            }
        }

        impl<'a> $assign_tr<&'a ExactInt> for ExactInt {
            #[inline]
            fn $assign_method(&mut self, rhs: &'a ExactInt) {
                *self = $tr::$method(&*self, rhs);
            }
        }

        impl $assign_tr<ExactInt> for ExactInt {
            #[inline]
            fn $assign_method(&mut self, rhs: ExactInt) {
                *self = $tr::$method(&*self, &rhs);
            }
        }
    };
}

binop!(Add, add, checked_add, AddAssign, add_assign);
binop!(Sub, sub, checked_sub, SubAssign, sub_assign);
binop!(Mul, mul, checked_mul, MulAssign, mul_assign);

impl Neg for &ExactInt {
    type Output = ExactInt;
    fn neg(self) -> ExactInt {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => ExactInt(Repr::Small(n)),
                None => ExactInt::from_big(-BigInt::from(*v)),
            },
            Repr::Big(b) => ExactInt::from_big(-b),
        }
    }
}

impl Neg for ExactInt {
    type Output = ExactInt;
    fn neg(self) -> ExactInt {
        -&self
    }
}

impl Sum for ExactInt {
    fn sum<I: Iterator<Item = ExactInt>>(iter: I) -> Self {
        iter.fold(ExactInt::zero(), |acc, v| acc + v)
    }
}

impl<'a> Sum<&'a ExactInt> for ExactInt {
    fn sum<I: Iterator<Item = &'a ExactInt>>(iter: I) -> Self {
        iter.fold(ExactInt::zero(), |acc, v| acc + v)
    }
}

/// The integer nearest to `p / q`, ties toward +∞: `floor((2p + q) / 2q)`.
pub fn round_nearest(p: &ExactInt, q: &ExactInt) -> Result<ExactInt, SolveError> {
    if !q.is_positive() {
        return Err(SolveError::Precondition(format!(
            "round_nearest needs a positive denominator, got {q}"
        )));
    }
    let two_q = q * 2;
    Ok((p * 2 + q).div_floor(&two_q))
}

/// `ceil(p / q)` for `q > 0`.
pub fn ceil_div(p: &ExactInt, q: &ExactInt) -> Result<ExactInt, SolveError> {
    if !q.is_positive() {
        return Err(SolveError::Precondition(format!(
            "ceil_div needs a positive denominator, got {q}"
        )));
    }
    Ok(-((-p).div_floor(q)))
}

/// `floor(sqrt(n))` for `n ≥ 0`.
pub fn isqrt(n: &ExactInt) -> Result<ExactInt, SolveError> {
    if n.is_negative() {
        return Err(SolveError::Precondition(format!(
            "isqrt of a negative number {n}"
        )));
    }
    Ok(ExactInt::from_big(n.to_big().sqrt()))
}

pub fn gcd(a: &ExactInt, b: &ExactInt) -> ExactInt {
    if let (Repr::Small(x), Repr::Small(y)) = (&a.0, &b.0) {
        if let (Some(mut x), Some(mut y)) = (x.checked_abs(), y.checked_abs()) {
            while y != 0 {
                let t = x % y;
                x = y;
                y = t;
            }
            return ExactInt(Repr::Small(x));
        }
    }
    ExactInt::from_big(a.to_big().gcd(&b.to_big()))
}

/// Nonnegative gcd of all entries. Zero entries are skipped; the gcd of an
/// all-zero (or empty) sequence is 0.
pub fn gcd_all<'a, I>(values: I) -> ExactInt
where
    I: IntoIterator<Item = &'a ExactInt>,
{
    values
        .into_iter()
        .filter(|v| !v.is_zero())
        .fold(ExactInt::zero(), |g, v| gcd(&g, v))
}

/// Smallest power of two that is `≥ n` (`n ≥ 1`).
pub fn next_pow2(n: &ExactInt) -> ExactInt {
    if *n <= 1 {
        return ExactInt::one();
    }
    let k = (n - 1i64).bits() as u32;
    ExactInt::pow2(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MonitorMode {
    /// Raise on the first value exceeding the limit.
    Strict,
    /// Track the maximum without failing.
    Log,
}

/// Tracks the largest magnitude of any solver value against the number-size
/// limit `2^31 m^10 U^2 C^2` of the instance being solved.
#[derive(Clone, Debug)]
pub struct BoundMonitor {
    limit: ExactInt,
    max_seen: ExactInt,
    mode: MonitorMode,
    enabled: bool,
}

impl BoundMonitor {
    pub fn new(limit: ExactInt, mode: MonitorMode) -> Self {
        BoundMonitor {
            limit,
            max_seen: ExactInt::zero(),
            mode,
            enabled: true,
        }
    }

    /// `2^31 m^10 U^2 C^2`.
    pub fn size_limit(m: &ExactInt, u: &ExactInt, c: &ExactInt) -> ExactInt {
        ExactInt::pow2(31) * m.pow(10) * u.pow(2) * c.pow(2)
    }

    /// A monitor that records nothing.
    pub fn disabled() -> Self {
        BoundMonitor {
            limit: ExactInt::zero(),
            max_seen: ExactInt::zero(),
            mode: MonitorMode::Log,
            enabled: false,
        }
    }

    pub fn limit(&self) -> &ExactInt {
        &self.limit
    }

    pub fn max_seen(&self) -> &ExactInt {
        &self.max_seen
    }

    pub fn mode(&self) -> MonitorMode {
        self.mode
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    #[inline]
    pub fn record(&mut self, v: &ExactInt) -> Result<(), SolveError> {
        if !self.enabled {
            return Ok(());
        }
        let a = v.abs();
        if a > self.max_seen {
            if self.mode == MonitorMode::Strict && a > self.limit {
                return Err(SolveError::BoundViolation {
                    value_bits: a.bits(),
                    limit_bits: self.limit.bits(),
                });
            }
            self.max_seen = a;
        }
        Ok(())
    }

    pub fn record_all<'a, I>(&mut self, values: I) -> Result<(), SolveError>
    where
        I: IntoIterator<Item = &'a ExactInt>,
    {
        for v in values {
            self.record(v)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use num_traits::Zero;

    fn e(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    #[test]
    fn round_nearest_examples() {
        assert_eq!(round_nearest(&e(7), &e(2)).unwrap(), e(4));
        assert_eq!(round_nearest(&e(10), &e(5)).unwrap(), e(2));
        assert_eq!(round_nearest(&e(-3), &e(2)).unwrap(), e(-1));
        assert_eq!(round_nearest(&e(-7), &e(3)).unwrap(), e(-2));
        assert!(round_nearest(&e(1), &e(0)).is_err());
        assert!(round_nearest(&e(1), &e(-2)).is_err());
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&e(16)).unwrap(), e(4));
        assert_eq!(isqrt(&e(17)).unwrap(), e(4));
        assert_eq!(isqrt(&e(0)).unwrap(), e(0));
        assert!(isqrt(&e(-1)).is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_all(&[e(6), e(9), e(12)]), e(3));
        assert_eq!(gcd_all(&[e(0), e(0)]), e(0));
        assert_eq!(gcd_all(&[e(5)]), e(5));
        assert_eq!(gcd_all(&[e(0), e(6)]), e(6));
        assert_eq!(gcd_all(&[e(-4), e(6)]), e(2));
    }

    #[test]
    fn monitor_examples() {
        let mut m = BoundMonitor::new(e(10), MonitorMode::Strict);
        m.record(&e(5)).unwrap();
        assert_eq!(m.max_seen(), &e(5));
        m.record(&e(0)).unwrap();
        assert_eq!(m.max_seen(), &e(5));
        assert!(matches!(
            m.record(&e(-12)),
            Err(SolveError::BoundViolation { .. })
        ));
        let mut log = BoundMonitor::new(e(10), MonitorMode::Log);
        log.record(&e(-12)).unwrap();
        assert_eq!(log.max_seen(), &e(12));
    }

    #[test]
    fn promotion_and_demotion() {
        let big = ExactInt::pow2(126);
        let sum = &big + &big;
        assert_eq!(sum.bits(), 128);
        let back = &sum - &big;
        assert_eq!(back, big);
        assert_eq!((&sum - &sum), ExactInt::zero());
        let min = ExactInt::from(i128::MIN);
        assert_eq!((-&min).bits(), 128);
        assert_eq!(min.div_floor(&e(-1)), -&min);
        assert!(ExactInt::pow2(200) > ExactInt::pow2(100));
        assert!(-ExactInt::pow2(200) < e(-5));
        assert_eq!(next_pow2(&e(27 * 256)), e(8192));
        assert_eq!(next_pow2(&e(8192)), e(8192));
        assert_eq!(next_pow2(&e(1)), e(1));
    }

    fn big_strategy() -> impl Strategy<Value = BigInt> {
        (any::<bool>(), proptest::collection::vec(any::<u32>(), 1..9)).prop_map(|(neg, digits)| {
            let sign = if neg { Sign::Minus } else { Sign::Plus };
            BigInt::from_slice(sign, &digits)
        })
    }

    proptest! {
        #[test]
        fn round_nearest_error_is_at_most_half(p in big_strategy(), q in big_strategy()) {
            let q = q.abs() + 1u32;
            let r = round_nearest(&ExactInt::from(p.clone()), &ExactInt::from(q.clone())).unwrap();
            let diff = (BigInt::from(&r) * &q - &p).abs() * 2;
            prop_assert!(diff <= q);
        }

        #[test]
        fn isqrt_brackets(n in big_strategy()) {
            let n = ExactInt::from(n.abs());
            let r = isqrt(&n).unwrap();
            prop_assert!(&r * &r <= n);
            let r1 = &r + 1i64;
            prop_assert!(&r1 * &r1 > n);
        }

        #[test]
        fn gcd_all_divides_and_is_maximal(v in proptest::collection::vec(-1000i64..1000, 1..8)) {
            let xs: Vec<ExactInt> = v.iter().map(|&x| e(x)).collect();
            let g = gcd_all(&xs);
            // pairwise Euclid on machine integers
            let mut h: i64 = 0;
            for &x in &v {
                let (mut a, mut b) = (h, x.abs());
                while b != 0 { let t = a % b; a = b; b = t; }
                h = a;
            }
            prop_assert_eq!(g.clone(), e(h));
            if !g.is_zero() {
                for x in &xs { prop_assert!(x.is_multiple_of(&g)); }
            }
        }

        #[test]
        fn arithmetic_matches_bigint(a in big_strategy(), b in big_strategy()) {
            let (x, y) = (ExactInt::from(a.clone()), ExactInt::from(b.clone()));
            prop_assert_eq!(BigInt::from(&(&x + &y)), &a + &b);
            prop_assert_eq!(BigInt::from(&(&x - &y)), &a - &b);
            prop_assert_eq!(BigInt::from(&(&x * &y)), &a * &b);
            prop_assert_eq!(x.cmp(&y), a.cmp(&b));
            if !b.is_zero() {
                prop_assert_eq!(BigInt::from(&x.div_floor(&y)), Integer::div_floor(&a, &b));
            }
        }
    }
}
