//! Finite decompositions of `[0, 1]` on which the pointwise conditions of the
//! characterizations have constant truth value.

use crate::error::Result;
use crate::mobius::Mobius;
use crate::pwfn::PwFn;
use crate::rat::Rat;
use crate::tnorm::OrdinalSumTNorm;

/// Maximal closed intervals of idempotents (the complement of the open summands).
/// Isolated idempotents between touching summands are included as degenerate intervals.
pub fn gaps(t: &OrdinalSumTNorm) -> Vec<(Rat, Rat)> {
    let mut out = Vec::new();
    let mut start = Rat::zero();
    for s in t.summands() {
        if s.lo >= start {
            out.push((start.clone(), s.lo.clone()));
        }
        start = s.hi.clone();
    }
    out.push((start, Rat::one()));
    out
}

/// Positions where some condition of the form "f(c) vs c⁻ / c⁺ / level" can
/// change truth value: domain ends, breakpoints, summand endpoints, crossings
/// of `f` with the summand endpoint levels and `extra_levels`, and crossings
/// of `f` with the diagonal on idempotent stretches.
///
/// Fails only if a hyperbolic piece meets the diagonal at an irrational point.
pub fn critical_points(t: &OrdinalSumTNorm, f: &PwFn, extra_levels: &[Rat]) -> Result<Vec<Rat>> {
    let (lo, hi) = f.domain();
    let mut pts: Vec<Rat> = f.xs().cloned().collect();
    let ends = t.endpoints();
    pts.extend(ends.iter().filter(|e| **e > lo && **e < hi).cloned());
    for level in ends.iter().chain(extra_levels) {
        pts.extend(f.level_crossings(level));
    }
    let id = Mobius::identity();
    let gs = gaps(t);
    for (i, seg) in f.segments().iter().enumerate() {
        let (x0, x1) = (&f.points()[i].x, &f.points()[i + 1].x);
        for (g0, g1) in &gs {
            let l = x0.max_of(g0);
            let r = x1.min_of(g1);
            if l < r {
                pts.extend(seg.crossings(&id, &l, &r)?);
            }
        }
    }
    pts.sort();
    pts.dedup();
    Ok(pts)
}

/// Representative sample sites in canonical order: every critical point
/// ascending, then the midpoint of every open cell ascending.
pub fn samples(points: &[Rat]) -> Vec<Rat> {
    let mut out = points.to_vec();
    out.extend(points.windows(2).map(|w| w[0].midpoint(&w[1])));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn gap_structure() {
        let t = OrdinalSumTNorm::t4();
        assert_eq!(gaps(&t), vec![(Rat::zero(), rat(1, 4)), (rat(1, 2), rat(1, 2)), (Rat::one(), Rat::one())]);
        assert_eq!(gaps(&OrdinalSumTNorm::min()), vec![(Rat::zero(), Rat::one())]);
    }

    #[test]
    fn diagonal_and_level_crossings() {
        let t = OrdinalSumTNorm::t4();
        let f = PwFn::constant(rat(1, 8));
        let pts = critical_points(&t, &f, &[]).unwrap();
        assert_eq!(pts, vec![Rat::zero(), rat(1, 8), rat(1, 4), rat(1, 2), Rat::one()]);
        let down = PwFn::from_points(vec![
            crate::pwfn::Breakpoint::cont(Rat::zero(), Rat::one()),
            crate::pwfn::Breakpoint::cont(Rat::one(), Rat::zero()),
        ])
        .unwrap();
        let pts = critical_points(&t, &down, &[]).unwrap();
        // levels 1/4, 1/2, 1 are hit at 3/4, 1/2, 0; no diagonal crossing on [0, 1/4].
        assert_eq!(pts, vec![Rat::zero(), rat(1, 4), rat(1, 2), rat(3, 4), Rat::one()]);
    }
}
