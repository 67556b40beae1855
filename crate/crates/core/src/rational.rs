//! Exact rational numbers.
//!
//! Values whose reduced numerator and denominator fit in an `i64` are kept
//! inline and combined with `i128` intermediates; anything larger is promoted
//! to a heap-allocated arbitrary-precision rational. Results are demoted again
//! whenever they fit, so every value has exactly one representation and
//! `Eq`/`Hash` can be derived.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{Ceiling, Floor, Gcd, Reciprocal, Sign};
use malachite_base::num::conversion::traits::{IsInteger, RoundingFrom};
use malachite_base::rounding_modes::RoundingMode;
use malachite_q::Rational as BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision integer returned by [`Rational::ceil`] and
/// [`Rational::floor`].
pub type BigInt = malachite_nz::integer::Integer;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, `den > 0`, `num != i64::MIN`.
    Small { num: i64, den: i64 },
    /// Reduced and never representable as `Small`.
    Big(Box<BigRational>),
}

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid digits in rational literal `{0}`")]
    InvalidDigits(String),
    #[error("zero denominator in rational literal `{0}`")]
    ZeroDenominator(String),
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_i128(n as i128, 1)
    }

    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(mut num: i128, mut den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            num = -num;
            den = -den;
        }
        if den != 1 {
            let (a, d) = (num.unsigned_abs(), den as u128);
            let g = match (u64::try_from(a), u64::try_from(d)) {
                (Ok(a), Ok(d)) => a.gcd(d) as u128,
                _ => a.gcd(d),
            } as i128;
            if g > 1 {
                num /= g;
                den /= g;
            }
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Rational(Repr::Small { num: n, den: d }),
            _ => Rational(Repr::Big(Box::new(BigRational::from_signeds(num, den)))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (i64::try_from(r.numerator_ref()), i64::try_from(r.denominator_ref())) {
            (Ok(n), Ok(d)) => {
                let num = if r.sign() == Ordering::Less { -n } else { n };
                Rational(Repr::Small { num, den: d })
            }
            _ => Rational(Repr::Big(Box::new(r))),
        }
    }

    /// Borrows a big value; only inline values are converted.
    fn as_big(&self) -> Cow<'_, BigRational> {
        match &self.0 {
            Repr::Small { num, den } => Cow::Owned(BigRational::from_signeds(*num, *den)),
            Repr::Big(r) => Cow::Borrowed(r),
        }
    }

    /// True when the value is held in the inline `i64` representation.
    pub fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small { .. })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num > 0,
            Repr::Big(r) => r.sign() == Ordering::Greater,
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(r) => r.sign() == Ordering::Less,
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(r) => (&**r).is_integer(),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small { num, den } => Self::new(*den, *num),
            Repr::Big(r) => Self::from_big((&**r).reciprocal()),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn ceil(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, den } => BigInt::from(-(-num).div_euclid(*den)),
            Repr::Big(r) => (&**r).ceiling(),
        }
    }

    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, den } => BigInt::from(num.div_euclid(*den)),
            Repr::Big(r) => (&**r).floor(),
        }
    }

    /// Nearest `f64`, for display and summary statistics only.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(r) => f64::rounding_from(&**r, RoundingMode::Nearest).0,
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    Self::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Self::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Self::from_big(&*self.as_big() + &*rhs.as_big()),
        }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    Self::from_i128(*a as i128 - *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Self::from_i128(a * d - c * b, b * d)
                }
            }
            _ => Self::from_big(&*self.as_big() - &*rhs.as_big()),
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(&*self.as_big() * &*rhs.as_big()),
        }
    }

    fn div_ref(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Self::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128)
            }
            _ => Self::from_big(&*self.as_big() / &*rhs.as_big()),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.as_big().cmp(&other.as_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
        impl $assign_trait<&Rational> for Rational {
            fn $assign_method(&mut self, rhs: &Rational) {
                *self = self.$imp(rhs);
            }
        }
        impl $assign_trait<Rational> for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                *self = self.$imp(&rhs);
            }
        }
    };
}

forward_binop!(Add, add, add_ref, AddAssign, add_assign);
forward_binop!(Sub, sub, sub_ref, SubAssign, sub_assign);
forward_binop!(Mul, mul, mul_ref, MulAssign, mul_assign);
forward_binop!(Div, div, div_ref, DivAssign, div_assign);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small { num: -num, den: *den }),
            Repr::Big(r) => Rational::from_big(-&**r),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Rational::from_i128(n as i128, 1)
            }
        }
    )*};
}

from_int!(i32, i64, u32, u64, usize);

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_big(BigRational::from(n))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, ParseRationalError> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::InvalidDigits(whole.to_string()));
    }
    let magnitude = digits
        .parse::<BigInt>()
        .map_err(|_| ParseRationalError::InvalidDigits(whole.to_string()))?;
    Ok(if s.starts_with('-') { -magnitude } else { magnitude })
}

/// Accepts `n` or `n/d` with optional sign on the numerator.
impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        match s.split_once('/') {
            None => Ok(Rational::from(parse_int(s, s)?)),
            Some((n, d)) => {
                let num = parse_int(n, s)?;
                if d.starts_with(['+', '-']) {
                    return Err(ParseRationalError::InvalidDigits(s.to_string()));
                }
                let den = parse_int(d, s)?;
                if den == 0u32 {
                    return Err(ParseRationalError::ZeroDenominator(s.to_string()));
                }
                Ok(Rational::from_big(BigRational::from_integers(num, den)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn stays_three_words() {
        assert!(std::mem::size_of::<Rational>() <= 24);
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(q("1/3").to_string(), "1/3");
        assert_eq!(q("2/4").to_string(), "1/2");
        assert_eq!(q("-6/3").to_string(), "-2");
        assert_eq!(q("7"), Rational::from(7i64));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from(i64::MAX);
        let sum = &big + &big;
        assert!(!sum.is_small());
        assert_eq!(sum.to_string(), "18446744073709551614");
        let back = &sum - &big;
        assert!(back.is_small());
        assert_eq!(back, big);
        let tiny = Rational::new(1, i64::MAX);
        let prod = &tiny * &tiny;
        assert!(!prod.is_small());
        assert_eq!(&prod * &Rational::from(i64::MAX), tiny);
    }

    #[test]
    fn min_is_never_small() {
        let m = Rational::from(i64::MIN);
        assert!(!m.is_small());
        assert_eq!(-(-m.clone()), m);
    }

    #[test]
    fn ceil_floor() {
        assert_eq!(q("7/2").ceil(), BigInt::from(4));
        assert_eq!(q("7/2").floor(), BigInt::from(3));
        assert_eq!(q("-7/2").ceil(), BigInt::from(-3));
        assert_eq!(q("4").ceil(), BigInt::from(4));
    }

    fn arb_small() -> impl Strategy<Value = (i64, i64)> {
        (any::<i64>().prop_filter("min", |n| *n != i64::MIN), 1i64..=i64::MAX)
    }

    proptest! {
        #[test]
        fn field_ops_match_bigrational((a, b) in arb_small(), (c, d) in arb_small()) {
            let x = Rational::new(a, b);
            let y = Rational::new(c, d);
            let bx = BigRational::from_signeds(a, b);
            let by = BigRational::from_signeds(c, d);
            prop_assert_eq!((&x + &y).as_big().into_owned(), &bx + &by);
            prop_assert_eq!((&x - &y).as_big().into_owned(), &bx - &by);
            prop_assert_eq!((&x * &y).as_big().into_owned(), &bx * &by);
            if c != 0 {
                prop_assert_eq!((&x / &y).as_big().into_owned(), &bx / &by);
            }
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
        }

        #[test]
        fn display_roundtrip((a, b) in arb_small()) {
            let x = Rational::new(a, b);
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
    }
}
