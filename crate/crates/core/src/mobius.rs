//! Linear-fractional pieces `x ↦ (p + q·x) / (r + s·x)` and exact quadratic roots.
//!
//! Affine maps are the common case. The hyperbolic case is needed because
//! principal lower sets inside a product summand behave like `y ↦ x/y`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::rat::Rat;

/// A linear-fractional map in canonical form: either `s = 0, r = 1` (affine)
/// or `s = 1` (hyperbolic with pole `-r`). Constant maps are always affine.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mobius {
    p: Rat,
    q: Rat,
    r: Rat,
    s: Rat,
}

impl Mobius {
    /// Builds and canonicalizes `(p + q x) / (r + s x)`. Panics if the denominator is identically zero.
    pub fn new(p: Rat, q: Rat, r: Rat, s: Rat) -> Mobius {
        assert!(!(r.is_zero() && s.is_zero()), "zero denominator");
        let det = &q * &r - &p * &s;
        if det.is_zero() {
            // Constant: value is p/r or q/s.
            let k = if r.is_zero() { &q / &s } else { &p / &r };
            return Mobius::constant(k);
        }
        if s.is_zero() {
            Mobius { p: &p / &r, q: &q / &r, r: Rat::one(), s: Rat::zero() }
        } else {
            Mobius { p: &p / &s, q: &q / &s, r: &r / &s, s: Rat::one() }
        }
    }

    pub fn constant(k: Rat) -> Mobius {
        Mobius { p: k, q: Rat::zero(), r: Rat::one(), s: Rat::zero() }
    }

    /// `c0 + c1·x`.
    pub fn linear(c0: Rat, c1: Rat) -> Mobius {
        Mobius { p: c0, q: c1, r: Rat::one(), s: Rat::zero() }
    }

    pub fn identity() -> Mobius {
        Mobius::linear(Rat::zero(), Rat::one())
    }

    /// The affine map through `(x0, y0)` and `(x1, y1)`; requires `x0 != x1`.
    pub fn through(x0: &Rat, y0: &Rat, x1: &Rat, y1: &Rat) -> Mobius {
        let slope = (y1 - y0) / (x1 - x0);
        let c0 = y0 - &slope * x0;
        Mobius::linear(c0, slope)
    }

    /// The map `α + β/(x − pole)` through `(x0, y0)` and `(x1, y1)`.
    /// Neither `x0` nor `x1` may equal the pole.
    pub fn hyperbolic_through(pole: &Rat, x0: &Rat, y0: &Rat, x1: &Rat, y1: &Rat) -> Mobius {
        let u0 = (x0 - pole).recip();
        let u1 = (x1 - pole).recip();
        let beta = (y0 - y1) / (&u0 - &u1);
        let alpha = y0 - &beta * &u0;
        // (α(x − pole) + β) / (x − pole)
        Mobius::new(&beta - &alpha * pole, alpha, -pole, Rat::one())
    }

    pub fn coeffs(&self) -> (&Rat, &Rat, &Rat, &Rat) {
        (&self.p, &self.q, &self.r, &self.s)
    }

    pub fn is_affine(&self) -> bool {
        self.s.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.is_affine() && self.q.is_zero()
    }

    /// Pole of a hyperbolic piece.
    pub fn pole(&self) -> Option<Rat> {
        if self.is_affine() {
            None
        } else {
            Some(-&self.r)
        }
    }

    /// `q·r − p·s`; the derivative is `det / (r + s x)²`, so its sign is the direction of the map.
    pub fn det(&self) -> Rat {
        &self.q * &self.r - &self.p * &self.s
    }

    /// Slope of an affine piece.
    pub fn slope(&self) -> Option<&Rat> {
        if self.is_affine() {
            Some(&self.q)
        } else {
            None
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let d = &self.r + &self.s * x;
        (&self.p + &self.q * x) / d
    }

    /// Numerator value `p + q x`.
    pub fn num_at(&self, x: &Rat) -> Rat {
        &self.p + &self.q * x
    }

    /// Denominator value `r + s x`.
    pub fn den_at(&self, x: &Rat) -> Rat {
        &self.r + &self.s * x
    }

    /// `x ↦ self(α x + β)`.
    pub fn precompose(&self, alpha: &Rat, beta: &Rat) -> Mobius {
        Mobius::new(&self.p + &self.q * beta, &self.q * alpha, &self.r + &self.s * beta, &self.s * alpha)
    }

    /// `x ↦ α·self(x) + β`.
    pub fn postcompose(&self, alpha: &Rat, beta: &Rat) -> Mobius {
        Mobius::new(alpha * &self.p + beta * &self.r, alpha * &self.q + beta * &self.s, self.r.clone(), self.s.clone())
    }

    /// The polynomial `N_self·D_other − N_other·D_self`, whose sign (times
    /// the sign of both denominators) is the sign of `self − other`.
    pub fn cross_poly(&self, other: &Mobius) -> Quad {
        let (p1, q1, r1, s1) = self.coeffs();
        let (p2, q2, r2, s2) = other.coeffs();
        Quad::new(q1 * s2 - q2 * s1, p1 * s2 + q1 * r2 - p2 * s1 - q2 * r1, p1 * r2 - p2 * r1)
    }

    /// Points of the open interval `(lo, hi)` where `self` and `other` agree.
    /// Empty when the maps are identical. Irrational crossings are an error.
    pub fn crossings(&self, other: &Mobius, lo: &Rat, hi: &Rat) -> Result<Vec<Rat>> {
        if self == other {
            return Ok(Vec::new());
        }
        self.cross_poly(other).roots_in(lo, hi)
    }
}

/// `a x² + b x + c` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quad {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl Quad {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Quad {
        Quad { a, b, c }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        (&self.a * x + &self.b) * x + &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn discriminant(&self) -> Rat {
        &self.b * &self.b - Rat::from_int(4) * &self.a * &self.c
    }

    /// Distinct real roots in the open interval `(lo, hi)`, ascending.
    /// Fails if an irrational root lies in the interval. The zero polynomial has no isolated roots.
    pub fn roots_in(&self, lo: &Rat, hi: &Rat) -> Result<Vec<Rat>> {
        let inside = |x: &Rat| lo < x && x < hi;
        if self.a.is_zero() {
            if self.b.is_zero() {
                return Ok(Vec::new());
            }
            let x = -&self.c / &self.b;
            return Ok(if inside(&x) { vec![x] } else { Vec::new() });
        }
        let d = self.discriminant();
        if d.is_negative() {
            return Ok(Vec::new());
        }
        let two_a = Rat::from_int(2) * &self.a;
        if let Some(sq) = d.sqrt_exact() {
            let mut v: Vec<Rat> =
                [(-&self.b - &sq) / &two_a, (-&self.b + &sq) / &two_a].into_iter().filter(|x| inside(x)).collect();
            v.sort();
            v.dedup();
            return Ok(v);
        }
        for sgn in [-1, 1] {
            if self.irrational_root_cmp(&d, sgn, lo) == Ordering::Greater
                && self.irrational_root_cmp(&d, sgn, hi) == Ordering::Less
            {
                return Err(Error::Irrational("quadratic root"));
            }
        }
        Ok(Vec::new())
    }

    /// Roots in `(lo, hi)` at which the polynomial changes sign from positive to negative.
    /// Fails only when such a root is irrational.
    pub fn descents_in(&self, lo: &Rat, hi: &Rat) -> Result<Vec<Rat>> {
        if self.a.is_zero() {
            if self.b.is_negative() {
                let x = -&self.c / &self.b;
                if lo < &x && &x < hi {
                    return Ok(vec![x]);
                }
            }
            return Ok(Vec::new());
        }
        let d = self.discriminant();
        if !d.is_positive() {
            return Ok(Vec::new());
        }
        // With two simple roots, the descent is (−b − √d)/(2a) for either sign of a.
        let two_a = Rat::from_int(2) * &self.a;
        if let Some(sq) = d.sqrt_exact() {
            let x = (-&self.b - &sq) / &two_a;
            return Ok(if lo < &x && &x < hi { vec![x] } else { Vec::new() });
        }
        if self.irrational_root_cmp(&d, -1, lo) == Ordering::Greater
            && self.irrational_root_cmp(&d, -1, hi) == Ordering::Less
        {
            return Err(Error::Irrational("interior maximum"));
        }
        Ok(Vec::new())
    }

    /// Compares the root `(−b + sgn·√d)/(2a)` with `t`, exactly. Requires `a != 0`, `d >= 0`.
    fn irrational_root_cmp(&self, d: &Rat, sgn: i32, t: &Rat) -> Ordering {
        let u = Rat::from_int(2) * &self.a * t + &self.b;
        // Sign of sgn·√d − u.
        let s = if sgn > 0 {
            if u.is_negative() {
                Ordering::Greater
            } else {
                d.cmp(&(&u * &u))
            }
        } else if u.is_positive() {
            Ordering::Less
        } else {
            (&u * &u).cmp(d)
        };
        if self.a.is_negative() {
            s.reverse()
        } else {
            s
        }
    }
}
