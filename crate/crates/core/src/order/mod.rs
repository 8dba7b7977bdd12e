//! The canonical fuzzy order `d_L(p, q) = p → q` on `[0, 1]`, principal
//! lower/upper sets, exact tensor products and the lower/upper set checkers.

mod cells;
mod checks;
mod tensor;

pub use cells::{critical_points, gaps, samples};
pub use checks::{
    check_lower_set, check_lower_set_with, check_upper_set, check_upper_set_with, search_pair, CheckOptions,
};
pub use tensor::{sup_min_on, tensor, Span};

use crate::error::Result;
use crate::mobius::Mobius;
use crate::pwfn::PwFn;
use crate::rat::Rat;
use crate::tnorm::{OrdinalSumTNorm, Residuated, SummandKind};

/// `d_L(x, y) = x → y`.
pub fn d_l<R: Residuated + ?Sized>(t: &R, x: &Rat, y: &Rat) -> Rat {
    t.residuum(x, y)
}

/// `d_R(x, y) = y → x`.
pub fn d_r<R: Residuated + ?Sized>(t: &R, x: &Rat, y: &Rat) -> Rat {
    t.residuum(y, x)
}

/// True when `φ(x) & d_L(y, x) > φ(y)`, i.e. the pair refutes "φ is a lower set".
pub fn lower_violation<R: Residuated + ?Sized>(t: &R, phi: &PwFn, x: &Rat, y: &Rat) -> bool {
    t.conj(&phi.value(x), &t.residuum(y, x)) > phi.value(y)
}

/// True when `d_L(x, y) & ψ(x) > ψ(y)`, i.e. the pair refutes "ψ is an upper set".
pub fn upper_violation<R: Residuated + ?Sized>(t: &R, psi: &PwFn, x: &Rat, y: &Rat) -> bool {
    t.conj(&t.residuum(x, y), &psi.value(x)) > psi.value(y)
}

fn build(xs: Vec<Rat>, ats: Vec<Rat>, segs: Vec<Mobius>) -> PwFn {
    PwFn::from_pieces(xs, ats, segs).expect("closed-form construction is valid")
}

/// `y ↦ d_L(y, x) = y → x`.
pub fn principal_lower(t: &OrdinalSumTNorm, x: &Rat) -> Result<PwFn> {
    check_unit(x)?;
    let one = Rat::one();
    if x.is_one() {
        return Ok(PwFn::constant(one));
    }
    let mut xs = Vec::new();
    let mut ats = Vec::new();
    let mut segs = Vec::new();
    if !x.is_zero() {
        xs.push(Rat::zero());
        ats.push(one.clone());
        segs.push(Mobius::constant(one.clone()));
    }
    xs.push(x.clone());
    ats.push(one.clone());
    let mut tail_from = x.clone();
    if let Some(s) = t.summands().iter().find(|s| s.lo <= *x && *x < s.hi) {
        let (a, b) = (&s.lo, &s.hi);
        let scaled = match s.kind {
            // b − y + x
            SummandKind::Lukasiewicz => Mobius::linear(b + x, -Rat::one()),
            // a + (b − a)(x − a)/(y − a)
            SummandKind::Product => {
                let k = (b - a) * (x - a);
                Mobius::new(&k - a * a, a.clone(), -a, Rat::one())
            }
        };
        segs.push(scaled);
        xs.push(b.clone());
        ats.push(x.clone());
        tail_from = b.clone();
    }
    if tail_from < one {
        segs.push(Mobius::constant(x.clone()));
        xs.push(one);
        ats.push(x.clone());
    }
    Ok(build(xs, ats, segs))
}

/// `y ↦ d_L(x, y) = x → y`.
pub fn principal_upper(t: &OrdinalSumTNorm, x: &Rat) -> Result<PwFn> {
    check_unit(x)?;
    let one = Rat::one();
    if x.is_zero() {
        return Ok(PwFn::constant(one));
    }
    let mut xs = vec![Rat::zero()];
    let mut ats = Vec::new();
    let mut segs = Vec::new();
    match t.summands().iter().find(|s| s.lo < *x && *x <= s.hi) {
        Some(s) => {
            let (a, b) = (&s.lo, &s.hi);
            let scaled = match s.kind {
                // b − x + y
                SummandKind::Lukasiewicz => Mobius::linear(b - x, Rat::one()),
                // a + (b − a)(y − a)/(x − a)
                SummandKind::Product => {
                    let k = (b - a) / (x - a);
                    Mobius::linear(a - &k * a, k)
                }
            };
            if a.is_zero() {
                ats.push(scaled.eval(a));
            } else {
                ats.push(Rat::zero());
                segs.push(Mobius::identity());
                xs.push(a.clone());
                ats.push(scaled.eval(a));
            }
            segs.push(scaled);
        }
        None => {
            ats.push(Rat::zero());
            segs.push(Mobius::identity());
        }
    }
    xs.push(x.clone());
    ats.push(one.clone());
    if *x < one {
        segs.push(Mobius::constant(one.clone()));
        xs.push(one.clone());
        ats.push(one);
    }
    Ok(build(xs, ats, segs))
}

fn check_unit(x: &Rat) -> Result<()> {
    if x.in_unit() {
        Ok(())
    } else {
        Err(crate::error::Error::OutOfUnit(x.clone()))
    }
}
