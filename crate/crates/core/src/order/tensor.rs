//! Exact `sup_x conj(φ(x), ψ(x))`.
//!
//! The domain is cut at every breakpoint of either operand and wherever an
//! operand crosses a summand endpoint level. On each open cell the
//! conjunction uses one fixed branch, so the supremum is the best of the
//! one-sided limits at the cell ends and the interior critical points of
//! that branch.

use crate::error::{interval, Error, Result};
use crate::mobius::{Mobius, Quad};
use crate::pwfn::{PwFn, Side, Sup};
use crate::rat::Rat;
use crate::tnorm::{OrdinalSumTNorm, SummandKind};

/// An interval of the domain with inclusion flags for its ends.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub lo: Rat,
    pub hi: Rat,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Span {
    pub fn closed(lo: Rat, hi: Rat) -> Span {
        Span { lo, hi, lo_closed: true, hi_closed: true }
    }

    pub fn point(x: Rat) -> Span {
        Span::closed(x.clone(), x)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        (if self.lo_closed { &self.lo <= x } else { &self.lo < x })
            && (if self.hi_closed { x <= &self.hi } else { x < &self.hi })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Branch<'a> {
    Min,
    Kind(SummandKind, &'a Rat),
}

/// `φ ⊗ ψ`: the exact supremum of `conj(φ(x), ψ(x))` with an attainment flag.
pub fn tensor(t: &OrdinalSumTNorm, phi: &PwFn, psi: &PwFn) -> Result<Sup> {
    if phi.domain() != psi.domain() {
        let (a, b) = phi.domain();
        let (c, d) = psi.domain();
        return Err(Error::DomainMismatch(interval(&a, &b), interval(&c, &d)));
    }
    let (lo, hi) = phi.domain();
    sup_on(t, phi, psi, &Span::closed(lo, hi), false)
}

/// Exact supremum of `min(φ(x), ψ(x))` over `span`.
pub fn sup_min_on(phi: &PwFn, psi: &PwFn, span: &Span) -> Result<Sup> {
    sup_on(&OrdinalSumTNorm::min(), phi, psi, span, true)
}

fn sup_on(t: &OrdinalSumTNorm, phi: &PwFn, psi: &PwFn, span: &Span, force_min: bool) -> Result<Sup> {
    let op = |u: &Rat, v: &Rat| if force_min { u.min_of(v) } else { t.conj(u, v) };
    let (lo, hi) = (&span.lo, &span.hi);
    if lo == hi {
        return Ok(Sup::new(op(&phi.value(lo), &psi.value(lo)), true));
    }
    let inside = |x: &Rat| lo < x && x < hi;
    let mut xs = vec![lo.clone(), hi.clone()];
    xs.extend(phi.xs().chain(psi.xs()).filter(|x| inside(x)).cloned());
    if !force_min {
        for level in t.endpoints() {
            xs.extend(phi.level_crossings(&level).into_iter().filter(|x| inside(x)));
            xs.extend(psi.level_crossings(&level).into_iter().filter(|x| inside(x)));
        }
    }
    xs.sort();
    xs.dedup();

    let mut best: Option<Sup> = None;
    let mut consider = |v: Rat, attained: bool| {
        let s = Sup::new(v, attained);
        best = Some(match best.take() {
            None => s,
            Some(b) => b.join(s),
        });
    };
    let last = xs.len() - 1;
    for (i, x) in xs.iter().enumerate() {
        let closed = (i > 0 && i < last) || (i == 0 && span.lo_closed) || (i == last && span.hi_closed);
        if closed {
            consider(op(&phi.value(x), &psi.value(x)), true);
        }
        if i > 0 {
            consider(op(&phi.eval(x, Side::Below)?, &psi.eval(x, Side::Below)?), false);
        }
        if i < last {
            consider(op(&phi.eval(x, Side::Above)?, &psi.eval(x, Side::Above)?), false);
        }
    }
    for w in xs.windows(2) {
        let (l, r) = (&w[0], &w[1]);
        let m = l.midpoint(r);
        let f = phi.piece_at(&m).expect("midpoint in domain");
        let g = psi.piece_at(&m).expect("midpoint in domain");
        let (fm, gm) = (f.eval(&m), g.eval(&m));
        consider(op(&fm, &gm), true);
        let branch = if force_min {
            Branch::Min
        } else {
            let (u, v) = if fm <= gm { (&fm, &gm) } else { (&gm, &fm) };
            match t.summands().iter().find(|s| s.lo <= *u && *v <= s.hi) {
                Some(s) => Branch::Kind(s.kind, &s.lo),
                None => Branch::Min,
            }
        };
        for x in interior_maxima(branch, f, g, l, r)? {
            consider(op(&f.eval(&x), &g.eval(&x)), true);
        }
    }
    Ok(best.expect("nonempty candidate set"))
}

fn lin_mul(a0: &Rat, a1: &Rat, b0: &Rat, b1: &Rat) -> Quad {
    Quad::new(a1 * b1, a0 * b1 + a1 * b0, a0 * b0)
}

fn quad_add(p: Quad, q: Quad) -> Quad {
    Quad::new(p.a + q.a, p.b + q.b, p.c + q.c)
}

/// Interior local maxima of the branch objective on `(l, r)`.
fn interior_maxima(branch: Branch, f: &Mobius, g: &Mobius, l: &Rat, r: &Rat) -> Result<Vec<Rat>> {
    let (df, dg) = (f.det(), g.det());
    let (_, _, r1, s1) = f.coeffs();
    let (_, _, r2, s2) = g.coeffs();
    match branch {
        Branch::Min => {
            // min of two monotone maps peaks inside only where they cross with opposite directions.
            if df.signum() * dg.signum() < 0 {
                f.crossings(g, l, r)
            } else {
                Ok(Vec::new())
            }
        }
        Branch::Kind(SummandKind::Lukasiewicz, _) => {
            // d/dx (F + G) · D_F² D_G² = det_F D_G² + det_G D_F²
            let p = quad_add(lin_mul(r2, s2, r2, s2).scale(&df), lin_mul(r1, s1, r1, s1).scale(&dg));
            p.descents_in(l, r)
        }
        Branch::Kind(SummandKind::Product, a) => {
            // Objective (F − a)(G − a); derivative numerator det_F Ñ_G D_G + det_G Ñ_F D_F.
            let (p1, q1, _, _) = f.coeffs();
            let (p2, q2, _, _) = g.coeffs();
            let (nf0, nf1) = (p1 - a * r1, q1 - a * s1);
            let (ng0, ng1) = (p2 - a * r2, q2 - a * s2);
            let p = quad_add(lin_mul(&ng0, &ng1, r2, s2).scale(&df), lin_mul(&nf0, &nf1, r1, s1).scale(&dg));
            p.descents_in(l, r)
        }
    }
}

trait Scale {
    fn scale(self, k: &Rat) -> Quad;
}

impl Scale for Quad {
    fn scale(self, k: &Rat) -> Quad {
        Quad::new(&self.a * k, &self.b * k, &self.c * k)
    }
}
