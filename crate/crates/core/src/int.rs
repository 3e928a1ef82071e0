//! Exact integers with a machine-word fast path.
//!
//! [`Int`] stores values that fit in an `i64` inline and promotes to a
//! heap-allocated [`BigInt`] whenever an operation would overflow. Values are
//! kept normalized: a big representation is only ever used for values outside
//! the `i64` range, so equality, hashing and ordering can be decided on the
//! representation directly.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

#[derive(Clone)]
enum Repr {
    Small(i64),
    Big(BigInt),
}

/// Arbitrary-precision signed integer.
#[derive(Clone)]
pub struct Int(Repr);

impl Int {
    pub const ZERO: Int = Int(Repr::Small(0));
    pub const ONE: Int = Int(Repr::Small(1));

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int(Repr::Small(v)),
            None => Int(Repr::Big(b)),
        }
    }

    /// Returns the value as an `i64` if it fits.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn to_rat(&self) -> Rat {
        Rat::from_integer(self.to_bigint())
    }

    /// True when the value is held in the machine-word representation.
    pub fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

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

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Floor division. Panics on division by zero.
    pub fn div_floor(&self, rhs: &Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if *b != 0 && !(*a == i64::MIN && *b == -1) {
                return Int(Repr::Small(num_integer::Integer::div_floor(a, b)));
            }
        }
        Int::from_big(self.to_bigint().div_floor(&rhs.to_bigint()))
    }

    /// Remainder of floor division; has the sign of `rhs`.
    pub fn mod_floor(&self, rhs: &Int) -> Int {
        self - &(&self.div_floor(rhs) * rhs)
    }

    /// Ceiling division. Panics on division by zero.
    pub fn div_ceil(&self, rhs: &Int) -> Int {
        -&(-self).div_floor(rhs)
    }

    /// Exact quotient if `rhs` divides `self`.
    pub fn checked_div_exact(&self, rhs: &Int) -> Option<Int> {
        if rhs.is_zero() {
            return None;
        }
        let q = self.div_floor(rhs);
        if &(&q * rhs) == self {
            Some(q)
        } else {
            None
        }
    }

    /// Non-negative greatest common divisor.
    pub fn gcd(&self, rhs: &Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if *a != i64::MIN && *b != i64::MIN {
                let (mut x, mut y) = (a.abs(), b.abs());
                while y != 0 {
                    let t = x % y;
                    x = y;
                    y = t;
                }
                return Int(Repr::Small(x));
            }
        }
        Int::from_big(self.to_bigint().gcd(&rhs.to_bigint()))
    }

    /// Returns `(g, s, t)` with `g = gcd(a, b) >= 0` and `s*a + t*b = g`.
    pub fn extended_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
        let (mut old_r, mut r) = (a.clone(), b.clone());
        let (mut old_s, mut s) = (Int::ONE, Int::ZERO);
        let (mut old_t, mut t) = (Int::ZERO, Int::ONE);
        while !r.is_zero() {
            let q = old_r.div_floor(&r);
            let next_r = &old_r - &(&q * &r);
            old_r = std::mem::replace(&mut r, next_r);
            let next_s = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, next_s);
            let next_t = &old_t - &(&q * &t);
            old_t = std::mem::replace(&mut t, next_t);
        }
        if old_r.is_negative() {
            (-old_r, -old_s, -old_t)
        } else {
            (old_r, old_s, old_t)
        }
    }

    fn add_ref(a: &Int, b: &Int) -> Int {
        if let (Repr::Small(x), Repr::Small(y)) = (&a.0, &b.0) {
            if let Some(v) = x.checked_add(*y) {
                return Int(Repr::Small(v));
            }
        }
        Int::from_big(a.to_bigint() + b.to_bigint())
    }

    fn sub_ref(a: &Int, b: &Int) -> Int {
        if let (Repr::Small(x), Repr::Small(y)) = (&a.0, &b.0) {
            if let Some(v) = x.checked_sub(*y) {
                return Int(Repr::Small(v));
            }
        }
        Int::from_big(a.to_bigint() - b.to_bigint())
    }

    fn mul_ref(a: &Int, b: &Int) -> Int {
        if let (Repr::Small(x), Repr::Small(y)) = (&a.0, &b.0) {
            if let Some(v) = x.checked_mul(*y) {
                return Int(Repr::Small(v));
            }
        }
        Int::from_big(a.to_bigint() * b.to_bigint())
    }

    /// Ceiling of `num / den` for a rational; used by box enumeration.
    pub fn ceil_rat(r: &Rat) -> Int {
        Int::from_big(r.ceil().to_integer())
    }

    pub fn floor_rat(r: &Rat) -> Int {
        Int::from_big(r.floor().to_integer())
    }

    /// Converts an integral rational; `None` when the denominator is not one.
    pub fn from_rat(r: &Rat) -> Option<Int> {
        if r.is_integer() {
            Some(Int::from_big(r.to_integer()))
        } else {
            None
        }
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Int) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl Hash for Int {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(v) => {
                0u8.hash(state);
                v.hash(state)
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state)
            }
        }
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Int) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            // a big value lies outside the i64 range, so its sign decides
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

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Int) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Int(Repr::Small(v))
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Int {
        Int(Repr::Small(v as i64))
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Int {
        match i64::try_from(v) {
            Ok(v) => Int(Repr::Small(v)),
            Err(_) => Int::from_big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::from_big(b)
    }
}

impl From<&Int> for Rat {
    fn from(v: &Int) -> Rat {
        v.to_rat()
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Int, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Int(Repr::Small(v)));
        }
        s.parse::<BigInt>().map(Int::from_big)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => fmt::Display::fmt(v, f),
            Repr::Big(b) => fmt::Display::fmt(b, f),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $imp:ident) => {
        impl $Trait<&Int> for &Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                Int::$imp(self, rhs)
            }
        }
        impl $Trait<Int> for Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                Int::$imp(&self, &rhs)
            }
        }
        impl $Trait<&Int> for Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                Int::$imp(&self, rhs)
            }
        }
        impl $Trait<Int> for &Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                Int::$imp(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        if let (Repr::Small(x), Repr::Small(y)) = (&mut self.0, &rhs.0) {
            if let Some(v) = x.checked_add(*y) {
                *x = v;
                return;
            }
        }
        *self = Int::add_ref(self, rhs);
    }
}

impl AddAssign<Int> for Int {
    fn add_assign(&mut self, rhs: Int) {
        *self += &rhs;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        if let (Repr::Small(x), Repr::Small(y)) = (&mut self.0, &rhs.0) {
            if let Some(v) = x.checked_sub(*y) {
                *x = v;
                return;
            }
        }
        *self = Int::sub_ref(self, rhs);
    }
}

impl SubAssign<Int> for Int {
    fn sub_assign(&mut self, rhs: Int) {
        *self -= &rhs;
    }
}

impl MulAssign<&Int> for Int {
    fn mul_assign(&mut self, rhs: &Int) {
        *self = Int::mul_ref(self, rhs);
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Int(Repr::Small(n)),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Repr::Big(b) => Int::from_big(-b),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        let mut acc = Int::ZERO;
        for v in iter {
            acc += &v;
        }
        acc
    }
}

impl<'a> Sum<&'a Int> for Int {
    fn sum<I: Iterator<Item = &'a Int>>(iter: I) -> Int {
        let mut acc = Int::ZERO;
        for v in iter {
            acc += v;
        }
        acc
    }
}

impl Zero for Int {
    fn zero() -> Int {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Int {
        Int::ONE
    }
}

/// Least common multiple of the denominators, as a positive integer.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Int {
    let mut acc = BigInt::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    Int::from_big(acc)
}
