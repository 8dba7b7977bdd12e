//! Exact rational numbers.
//!
//! Values that fit in a pair of `i64`s are kept inline and combined with
//! `i128` intermediates; anything larger falls back to [`BigRational`]. The
//! representation is canonical (reduced, positive denominator, inline
//! whenever it fits), so structural equality and hashing agree with
//! numerical equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(Box<BigRational>),
}

/// An exact rational number.
#[derive(Clone)]
pub struct Rat(Repr);

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
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rat {
    /// Builds `num / den`, reducing. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat::from_i128(num as i128, den as i128)
    }

    pub fn from_int(n: i64) -> Rat {
        Rat(Repr::Small(n, 1))
    }

    pub fn zero() -> Rat {
        Rat(Repr::Small(0, 1))
    }

    pub fn one() -> Rat {
        Rat(Repr::Small(1, 1))
    }

    fn from_i128(mut n: i128, mut d: i128) -> Rat {
        debug_assert!(d != 0);
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Rat::zero();
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        n /= g;
        d /= g;
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat(Repr::Small(n, d)),
            _ => Rat(Repr::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))),
        }
    }

    fn from_big(r: BigRational) -> Rat {
        // BigRational arithmetic keeps values reduced with a positive denominator.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat(Repr::Small(n, d)),
            _ => Rat(Repr::Big(Box::new(r))),
        }
    }

    /// Converts to a [`BigRational`].
    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => (**r).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(r) => match r.numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rat {
        Rat::one() / self
    }

    pub fn min_of(&self, other: &Rat) -> Rat {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn max_of(&self, other: &Rat) -> Rat {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn midpoint(&self, other: &Rat) -> Rat {
        (self + other) / Rat::from_int(2)
    }

    /// True when `0 <= self <= 1`.
    pub fn in_unit(&self) -> bool {
        !self.is_negative() && *self <= Rat::one()
    }

    /// Exact square root, if the value is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &rn * &rn == n && &rd * &rd == d {
            Some(Rat::from_big(BigRational::new(rn, rd)))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Decimal rendering with `digits` places after the point, rounded half away from zero.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let n = self.numer() * &scale;
        let d = self.denom();
        let (q, r) = n.abs().div_rem(&d);
        let q = if r * BigInt::from(2) >= d { q + BigInt::one() } else { q };
        let s = q.to_string();
        let sign = if self.is_negative() && !q.is_zero() { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{s}");
        }
        let padded = format!("{:0>width$}", s, width = digits + 1);
        let (int, frac) = padded.split_at(padded.len() - digits);
        format!("{sign}{int}.{frac}")
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Rat {
        Rat::from_big(r)
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128))),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_ref(x: &Rat, y: &Rat) -> Rat {
    if let (Repr::Small(a, b), Repr::Small(c, d)) = (&x.0, &y.0) {
        let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
        if b == d {
            return Rat::from_i128(a + c, b);
        }
        if let (Some(l), Some(r), Some(den)) = (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
            if let Some(num) = l.checked_add(r) {
                return Rat::from_i128(num, den);
            }
        }
    }
    Rat::from_big(x.to_big() + y.to_big())
}

fn sub_ref(x: &Rat, y: &Rat) -> Rat {
    add_ref(x, &neg_ref(y))
}

fn mul_ref(x: &Rat, y: &Rat) -> Rat {
    if let (Repr::Small(a, b), Repr::Small(c, d)) = (&x.0, &y.0) {
        return Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
    }
    Rat::from_big(x.to_big() * y.to_big())
}

fn div_ref(x: &Rat, y: &Rat) -> Rat {
    assert!(!y.is_zero(), "division by zero");
    if let (Repr::Small(a, b), Repr::Small(c, d)) = (&x.0, &y.0) {
        return Rat::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128);
    }
    Rat::from_big(x.to_big() / y.to_big())
}

fn neg_ref(x: &Rat) -> Rat {
    match &x.0 {
        Repr::Small(n, d) => match n.checked_neg() {
            Some(m) => Rat(Repr::Small(m, *d)),
            None => Rat::from_big(-x.to_big()),
        },
        Repr::Big(r) => Rat::from_big(-(**r).clone()),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $f:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                $f(self, rhs)
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                $f(&self, &rhs)
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                $f(&self, rhs)
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        neg_ref(&self)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        neg_ref(self)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `p/q`, integers and plain decimals (`0.3` parses as `3/10`).
    fn from_str(s: &str) -> Result<Rat, Error> {
        let bad = || Error::BadNumber(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(Rat::from_big(BigRational::new(n, d)));
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if (int.is_empty() && frac.is_empty())
            || !int.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
        let d = BigInt::from(10u32).pow(frac.len() as u32);
        let r = Rat::from_big(BigRational::new(n, d));
        Ok(if neg { -r } else { r })
    }
}

/// Shorthand for `Rat::new(n, d)`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}
