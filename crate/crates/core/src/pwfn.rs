//! Exact piecewise functions with one-sided values at breakpoints.
//!
//! Between consecutive breakpoints a function is a single [`Mobius`] piece,
//! usually affine. Values at a breakpoint (`at`) and the one-sided limits
//! (`left`, `right`) are stored independently, so jumps are first-class.

use std::cmp::Ordering;

use crate::error::{interval, Error, Result};
use crate::mobius::Mobius;
use crate::rat::Rat;
use crate::report::{CheckReport, Rule, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Below,
    At,
    Above,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Decreasing,
    Increasing,
}

/// A supremum together with whether some point attains it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sup {
    pub value: Rat,
    pub attained: bool,
}

impl Sup {
    pub fn new(value: Rat, attained: bool) -> Sup {
        Sup { value, attained }
    }

    /// Larger value wins; on ties the result is attained if either side is.
    pub fn join(self, other: Sup) -> Sup {
        match self.value.cmp(&other.value) {
            Ordering::Greater => self,
            Ordering::Less => other,
            Ordering::Equal => Sup::new(self.value, self.attained || other.attained),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Breakpoint {
    pub x: Rat,
    /// Limit from below; equals `at` at the left end of the domain.
    pub left: Rat,
    pub at: Rat,
    /// Limit from above; equals `at` at the right end of the domain.
    pub right: Rat,
}

impl Breakpoint {
    pub fn new(x: Rat, left: Rat, at: Rat, right: Rat) -> Breakpoint {
        Breakpoint { x, left, at, right }
    }

    /// A point without a jump.
    pub fn cont(x: Rat, v: Rat) -> Breakpoint {
        Breakpoint { x, left: v.clone(), at: v.clone(), right: v }
    }

    pub fn is_continuous(&self) -> bool {
        self.left == self.at && self.at == self.right
    }
}

/// A piecewise linear-fractional map `[lo, hi] → [0, 1]` in canonical form.
///
/// Canonical means no interior breakpoint is both jump-free and flanked by
/// the same map on either side. Structural equality is then functional equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PwFn {
    pts: Vec<Breakpoint>,
    segs: Vec<Mobius>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Loc {
    Point(usize),
    Inside(usize),
}

impl PwFn {
    /// Builds from breakpoint positions, point values and one piece per gap.
    /// One-sided limits are read off the pieces.
    pub fn from_pieces(xs: Vec<Rat>, ats: Vec<Rat>, segs: Vec<Mobius>) -> Result<PwFn> {
        if xs.len() < 2 || ats.len() != xs.len() || segs.len() + 1 != xs.len() {
            return Err(Error::BadFunction("shape mismatch between points and pieces".into()));
        }
        for w in xs.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::BadFunction("breakpoints must be strictly increasing".into()));
            }
        }
        for (i, s) in segs.iter().enumerate() {
            if let Some(g) = s.pole() {
                if g >= xs[i] && g <= xs[i + 1] {
                    return Err(Error::BadFunction(format!("pole {g} inside piece [{}, {}]", xs[i], xs[i + 1])));
                }
            }
        }
        let n = xs.len();
        let mut pts = Vec::with_capacity(n);
        for (i, (x, at)) in xs.into_iter().zip(ats).enumerate() {
            let left = if i == 0 { at.clone() } else { segs[i - 1].eval(&x) };
            let right = if i + 1 == n { at.clone() } else { segs[i].eval(&x) };
            pts.push(Breakpoint { x, left, at, right });
        }
        PwFn::checked(pts, segs)
    }

    /// Builds from breakpoints with affine interpolation between `right_i` and `left_{i+1}`.
    pub fn from_points(pts: Vec<Breakpoint>) -> Result<PwFn> {
        let poles = vec![None; pts.len().saturating_sub(1)];
        PwFn::from_points_with_poles(pts, poles)
    }

    /// Like [`PwFn::from_points`], but a piece with `Some(pole)` is the
    /// hyperbola `α + β/(x − pole)` through its two end values.
    pub fn from_points_with_poles(mut pts: Vec<Breakpoint>, poles: Vec<Option<Rat>>) -> Result<PwFn> {
        if pts.len() < 2 || poles.len() + 1 != pts.len() {
            return Err(Error::BadFunction("need at least two points".into()));
        }
        for w in pts.windows(2) {
            if w[0].x >= w[1].x {
                return Err(Error::BadFunction("breakpoints must be strictly increasing".into()));
            }
        }
        let mut segs = Vec::with_capacity(poles.len());
        for (i, pole) in poles.iter().enumerate() {
            let (a, b) = (&pts[i], &pts[i + 1]);
            let m = match pole {
                None => Mobius::through(&a.x, &a.right, &b.x, &b.left),
                Some(g) => {
                    if g >= &a.x && g <= &b.x {
                        return Err(Error::BadFunction(format!("pole {g} inside piece [{}, {}]", a.x, b.x)));
                    }
                    Mobius::hyperbolic_through(g, &a.x, &a.right, &b.x, &b.left)
                }
            };
            segs.push(m);
        }
        let n = pts.len();
        pts[0].left = pts[0].at.clone();
        pts[n - 1].right = pts[n - 1].at.clone();
        PwFn::checked(pts, segs)
    }

    fn checked(pts: Vec<Breakpoint>, segs: Vec<Mobius>) -> Result<PwFn> {
        let (lo, hi) = (&pts[0].x, &pts[pts.len() - 1].x);
        if !lo.in_unit() || !hi.in_unit() {
            return Err(Error::BadFunction(format!("domain [{lo}, {hi}] not inside [0,1]")));
        }
        for p in &pts {
            for v in [&p.left, &p.at, &p.right] {
                if !v.in_unit() {
                    return Err(Error::OutOfUnit(v.clone()));
                }
            }
        }
        Ok(PwFn::normalize(pts, segs))
    }

    fn normalize(pts: Vec<Breakpoint>, segs: Vec<Mobius>) -> PwFn {
        let n = pts.len();
        let mut out_pts = Vec::with_capacity(n);
        let mut out_segs: Vec<Mobius> = Vec::with_capacity(n - 1);
        let mut segs = segs.into_iter();
        for (i, p) in pts.into_iter().enumerate() {
            let next = if i + 1 < n { segs.next() } else { None };
            if i > 0 && i + 1 < n && p.is_continuous() && out_segs.last() == next.as_ref() {
                continue;
            }
            out_pts.push(p);
            if let Some(s) = next {
                out_segs.push(s);
            }
        }
        PwFn { pts: out_pts, segs: out_segs }
    }

    pub fn constant_on(lo: Rat, hi: Rat, k: Rat) -> Result<PwFn> {
        if lo >= hi {
            return Err(Error::DegenerateInterval(lo, hi));
        }
        PwFn::from_pieces(vec![lo, hi], vec![k.clone(), k.clone()], vec![Mobius::constant(k)])
    }

    /// The constant map on `[0, 1]`. Panics if `k` is outside `[0, 1]`.
    pub fn constant(k: Rat) -> PwFn {
        PwFn::constant_on(Rat::zero(), Rat::one(), k).expect("constant outside [0,1]")
    }

    pub fn identity() -> PwFn {
        PwFn::identity_on(Rat::zero(), Rat::one()).unwrap()
    }

    pub fn identity_on(lo: Rat, hi: Rat) -> Result<PwFn> {
        if lo >= hi {
            return Err(Error::DegenerateInterval(lo, hi));
        }
        PwFn::from_pieces(vec![lo.clone(), hi.clone()], vec![lo, hi], vec![Mobius::identity()])
    }

    pub fn points(&self) -> &[Breakpoint] {
        &self.pts
    }

    pub fn segments(&self) -> &[Mobius] {
        &self.segs
    }

    pub fn xs(&self) -> impl Iterator<Item = &Rat> {
        self.pts.iter().map(|p| &p.x)
    }

    pub fn lo(&self) -> &Rat {
        &self.pts[0].x
    }

    pub fn hi(&self) -> &Rat {
        &self.pts[self.pts.len() - 1].x
    }

    pub fn domain(&self) -> (Rat, Rat) {
        (self.lo().clone(), self.hi().clone())
    }

    pub fn has_hyperbolic_piece(&self) -> bool {
        self.segs.iter().any(|s| !s.is_affine())
    }

    pub(crate) fn locate(&self, x: &Rat) -> Option<Loc> {
        if x < self.lo() || x > self.hi() {
            return None;
        }
        Some(match self.pts.binary_search_by(|p| p.x.cmp(x)) {
            Ok(i) => Loc::Point(i),
            Err(i) => Loc::Inside(i - 1),
        })
    }

    /// The piece governing the open interval that contains `x`, or the piece to the right of a breakpoint.
    pub fn piece_at(&self, x: &Rat) -> Option<&Mobius> {
        match self.locate(x)? {
            Loc::Inside(i) => Some(&self.segs[i]),
            Loc::Point(i) => self.segs.get(i),
        }
    }

    /// One-sided limit or point value at `x`.
    pub fn eval(&self, x: &Rat, side: Side) -> Result<Rat> {
        let loc = self
            .locate(x)
            .ok_or_else(|| Error::OutOfDomain { x: x.clone(), domain: interval(self.lo(), self.hi()) })?;
        match side {
            Side::Below if x == self.lo() => return Err(Error::NoLeftLimit(x.clone())),
            Side::Above if x == self.hi() => return Err(Error::NoRightLimit(x.clone())),
            _ => {}
        }
        Ok(match loc {
            Loc::Inside(i) => self.segs[i].eval(x),
            Loc::Point(i) => {
                let p = &self.pts[i];
                match side {
                    Side::Below => p.left.clone(),
                    Side::At => p.at.clone(),
                    Side::Above => p.right.clone(),
                }
            }
        })
    }

    /// `f(x)`. Panics outside the domain.
    pub fn value(&self, x: &Rat) -> Rat {
        self.eval(x, Side::At).expect("point outside domain")
    }

    /// The left limit at `x`, or the value at the left end of the domain.
    pub fn left_or_at(&self, x: &Rat) -> Rat {
        if x == self.lo() {
            self.value(x)
        } else {
            self.eval(x, Side::Below).expect("point outside domain")
        }
    }

    /// The right limit at `x`, or the value at the right end of the domain.
    pub fn right_or_at(&self, x: &Rat) -> Rat {
        if x == self.hi() {
            self.value(x)
        } else {
            self.eval(x, Side::Above).expect("point outside domain")
        }
    }

    fn same_domain(&self, g: &PwFn) -> Result<()> {
        if self.lo() != g.lo() || self.hi() != g.hi() {
            return Err(Error::DomainMismatch(interval(self.lo(), self.hi()), interval(g.lo(), g.hi())));
        }
        Ok(())
    }

    fn combine(&self, g: &PwFn, take_min: bool) -> Result<PwFn> {
        self.same_domain(g)?;
        let pick = |a: Rat, b: Rat| if (a <= b) == take_min { a } else { b };
        let mut xs: Vec<Rat> = self.xs().chain(g.xs()).cloned().collect();
        xs.sort();
        xs.dedup();
        let mut all = xs.clone();
        for w in xs.windows(2) {
            let mid = w[0].midpoint(&w[1]);
            let (fm, gm) = (self.piece_at(&mid).unwrap(), g.piece_at(&mid).unwrap());
            all.extend(fm.crossings(gm, &w[0], &w[1])?);
        }
        all.sort();
        all.dedup();
        let ats = all.iter().map(|x| pick(self.value(x), g.value(x))).collect();
        let segs = all
            .windows(2)
            .map(|w| {
                let mid = w[0].midpoint(&w[1]);
                let (fm, gm) = (self.piece_at(&mid).unwrap(), g.piece_at(&mid).unwrap());
                if (fm.eval(&mid) <= gm.eval(&mid)) == take_min {
                    fm.clone()
                } else {
                    gm.clone()
                }
            })
            .collect();
        PwFn::from_pieces(all, ats, segs)
    }

    /// Pointwise meet. Fails only if two hyperbolic-vs-other pieces cross at an irrational point.
    pub fn pointwise_min(&self, g: &PwFn) -> Result<PwFn> {
        self.combine(g, true)
    }

    /// Pointwise join; see [`PwFn::pointwise_min`].
    pub fn pointwise_max(&self, g: &PwFn) -> Result<PwFn> {
        self.combine(g, false)
    }

    /// Supremum over the domain, including one-sided limits.
    pub fn global_sup(&self) -> Sup {
        self.extremum(true)
    }

    /// Infimum over the domain, including one-sided limits.
    pub fn global_inf(&self) -> Sup {
        self.extremum(false)
    }

    fn extremum(&self, sup: bool) -> Sup {
        let better = |a: &Rat, b: &Rat| if sup { a > b } else { a < b };
        let mut best = Sup::new(self.pts[0].at.clone(), true);
        let mut consider = |v: &Rat, attained: bool| {
            if better(v, &best.value) {
                best = Sup::new(v.clone(), attained);
            } else if *v == best.value && attained {
                best.attained = true;
            }
        };
        for (i, p) in self.pts.iter().enumerate() {
            consider(&p.at, true);
            if i > 0 {
                consider(&p.left, self.segs[i - 1].is_constant());
            }
            if i + 1 < self.pts.len() {
                consider(&p.right, self.segs[i].is_constant());
            }
        }
        best
    }

    /// Restriction to `[lo, hi]`, a nondegenerate subinterval of the domain.
    pub fn restrict(&self, lo: &Rat, hi: &Rat) -> Result<PwFn> {
        if lo >= hi {
            return Err(Error::DegenerateInterval(lo.clone(), hi.clone()));
        }
        if lo < self.lo() || hi > self.hi() {
            return Err(Error::OutOfDomain {
                x: if lo < self.lo() { lo.clone() } else { hi.clone() },
                domain: interval(self.lo(), self.hi()),
            });
        }
        let mut xs = vec![lo.clone()];
        xs.extend(self.xs().filter(|x| *x > lo && *x < hi).cloned());
        xs.push(hi.clone());
        let ats = xs.iter().map(|x| self.value(x)).collect();
        let segs = xs.windows(2).map(|w| self.piece_at(&w[0].midpoint(&w[1])).unwrap().clone()).collect();
        PwFn::from_pieces(xs, ats, segs)
    }

    /// Conjugates by the increasing affine bijection `A: source → target`,
    /// giving `A ∘ f ∘ A⁻¹` on `target`. The domain of `f` must be `source`.
    pub fn affine_transport(&self, source: (&Rat, &Rat), target: (&Rat, &Rat)) -> Result<PwFn> {
        let (s0, s1) = source;
        let (t0, t1) = target;
        if s0 >= s1 {
            return Err(Error::DegenerateInterval(s0.clone(), s1.clone()));
        }
        if t0 >= t1 {
            return Err(Error::DegenerateInterval(t0.clone(), t1.clone()));
        }
        if self.lo() != s0 || self.hi() != s1 {
            return Err(Error::DomainMismatch(interval(self.lo(), self.hi()), interval(s0, s1)));
        }
        let k = (t1 - t0) / (s1 - s0);
        let fwd = |v: &Rat| t0 + &k * (v - s0);
        let inv_a = k.recip();
        let inv_b = s0 - t0 / &k;
        let fwd_b = t0 - &k * s0;
        let xs = self.pts.iter().map(|p| fwd(&p.x)).collect();
        let ats = self.pts.iter().map(|p| fwd(&p.at)).collect();
        let segs = self.segs.iter().map(|m| m.precompose(&inv_a, &inv_b).postcompose(&k, &fwd_b)).collect();
        PwFn::from_pieces(xs, ats, segs)
    }

    /// Holds iff every piece and every jump triple respects `dir`. The witness
    /// is a pair `x < y` whose values go the wrong way.
    pub fn is_monotone(&self, dir: Direction) -> CheckReport {
        let wrong = |a: &Rat, b: &Rat| match dir {
            Direction::Decreasing => a < b,
            Direction::Increasing => a > b,
        };
        let report = |x: Rat, y: Rat| {
            let (fx, fy) = (self.value(&x), self.value(&y));
            debug_assert!(wrong(&fx, &fy));
            CheckReport::violated(Rule::Mono, None, Witness::Pair { x, y, fx, fy })
        };
        for (i, p) in self.pts.iter().enumerate() {
            if i > 0 && wrong(&p.left, &p.at) {
                let t = self.approach(i, true, |v| wrong(v, &p.at));
                return report(t, p.x.clone());
            }
            if i + 1 < self.pts.len() {
                if wrong(&p.at, &p.right) {
                    let t = self.approach(i, false, |v| wrong(&p.at, v));
                    return report(p.x.clone(), t);
                }
                if i + 1 < self.pts.len() {
                    let d = self.segs[i].det();
                    let bad = match dir {
                        Direction::Decreasing => d.is_positive(),
                        Direction::Increasing => d.is_negative(),
                    };
                    if bad {
                        let q = &self.pts[i + 1].x;
                        let w = q - &p.x;
                        let three = Rat::from_int(3);
                        let a = &p.x + &w / &three;
                        let b = &p.x + Rat::from_int(2) * &w / three;
                        return report(a, b);
                    }
                }
            }
        }
        CheckReport::Holds
    }

    /// A point near breakpoint `i`, strictly inside the adjacent piece (left
    /// piece if `from_left`), whose value satisfies `ok`. `ok` must hold for
    /// the one-sided limit as a strict inequality.
    pub fn approach(&self, i: usize, from_left: bool, ok: impl Fn(&Rat) -> bool) -> Rat {
        let x = &self.pts[i].x;
        let other = if from_left { &self.pts[i - 1].x } else { &self.pts[i + 1].x };
        let mut t = x.midpoint(other);
        for _ in 0..256 {
            if ok(&self.value(&t)) {
                return t;
            }
            t = x.midpoint(&t);
        }
        panic!("one-sided approach did not converge at {x}");
    }

    /// Positions where some piece equals `level`, strictly inside its open interval.
    pub fn level_crossings(&self, level: &Rat) -> Vec<Rat> {
        let target = Mobius::constant(level.clone());
        let mut out = Vec::new();
        for (i, s) in self.segs.iter().enumerate() {
            // Level crossings of a linear-fractional piece are roots of a linear equation.
            if let Ok(v) = s.crossings(&target, &self.pts[i].x, &self.pts[i + 1].x) {
                out.extend(v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn jump_half() -> PwFn {
        PwFn::from_points(vec![
            Breakpoint::cont(Rat::zero(), Rat::one()),
            Breakpoint::new(rat(1, 2), Rat::one(), Rat::one(), rat(1, 2)),
            Breakpoint::cont(Rat::one(), rat(1, 2)),
        ])
        .unwrap()
    }

    #[test]
    fn eval_sides() {
        let id = PwFn::identity();
        assert_eq!(id.eval(&rat(1, 2), Side::At).unwrap(), rat(1, 2));
        let f = jump_half();
        assert_eq!(f.eval(&rat(1, 2), Side::Above).unwrap(), rat(1, 2));
        assert_eq!(f.eval(&rat(1, 2), Side::Below).unwrap(), Rat::one());
        assert_eq!(PwFn::constant(Rat::one()).eval(&Rat::zero(), Side::At).unwrap(), Rat::one());
        assert!(f.eval(&Rat::zero(), Side::Below).is_err());
        assert!(f.eval(&Rat::one(), Side::Above).is_err());
        assert!(f.eval(&rat(3, 2), Side::At).is_err());
    }

    #[test]
    fn normalization_merges_collinear_pieces() {
        let f = PwFn::from_points(vec![
            Breakpoint::cont(Rat::zero(), Rat::zero()),
            Breakpoint::cont(rat(1, 3), rat(1, 3)),
            Breakpoint::cont(Rat::one(), Rat::one()),
        ])
        .unwrap();
        assert_eq!(f, PwFn::identity());
        assert_eq!(f.points().len(), 2);
    }

    #[test]
    fn min_with_crossing() {
        let m = PwFn::identity().pointwise_min(&PwFn::constant(rat(1, 2))).unwrap();
        assert_eq!(m.points().len(), 3);
        assert_eq!(m.points()[1].x, rat(1, 2));
        assert_eq!(m.value(&rat(1, 4)), rat(1, 4));
        assert_eq!(m.value(&rat(3, 4)), rat(1, 2));
        let f = jump_half();
        assert_eq!(f.pointwise_min(&f).unwrap(), f);
        assert_eq!(PwFn::constant(Rat::zero()).pointwise_min(&f).unwrap(), PwFn::constant(Rat::zero()));
    }

    #[test]
    fn sups() {
        assert_eq!(PwFn::constant(rat(3, 4)).global_sup(), Sup::new(rat(3, 4), true));
        let open_end = PwFn::from_points(vec![
            Breakpoint::cont(Rat::zero(), Rat::zero()),
            Breakpoint::new(Rat::one(), Rat::one(), Rat::zero(), Rat::zero()),
        ])
        .unwrap();
        assert_eq!(open_end.global_sup(), Sup::new(Rat::one(), false));
        assert_eq!(jump_half().global_sup(), Sup::new(Rat::one(), true));
        assert_eq!(jump_half().global_inf(), Sup::new(rat(1, 2), true));
    }

    #[test]
    fn transport() {
        let (q, h) = (rat(1, 4), rat(1, 2));
        let g = PwFn::identity().affine_transport((&Rat::zero(), &Rat::one()), (&q, &h)).unwrap();
        for k in 0..=8 {
            let u = rat(k, 8);
            let image = &q + &u / rat(4, 1);
            assert_eq!(g.value(&image), image);
        }
        let c = PwFn::constant(rat(1, 2)).affine_transport((&Rat::zero(), &Rat::one()), (&q, &h)).unwrap();
        assert_eq!(c, PwFn::constant_on(q.clone(), h.clone(), rat(3, 8)).unwrap());
        let f = jump_half();
        let back = f
            .affine_transport((&Rat::zero(), &Rat::one()), (&q, &h))
            .unwrap()
            .affine_transport((&q, &h), (&Rat::zero(), &Rat::one()))
            .unwrap();
        assert_eq!(back, f);
        assert!(f.affine_transport((&q, &q), (&Rat::zero(), &Rat::one())).is_err());
    }

    #[test]
    fn monotone_checks() {
        assert!(PwFn::constant(rat(1, 3)).is_monotone(Direction::Decreasing).holds());
        assert!(PwFn::constant(rat(1, 3)).is_monotone(Direction::Increasing).holds());
        let r = PwFn::identity().is_monotone(Direction::Decreasing);
        match r.violation().map(|v| &v.witness) {
            Some(Witness::Pair { x, y, fx, fy }) => assert!(x < y && fx < fy),
            other => panic!("unexpected {other:?}"),
        }
        assert!(jump_half().is_monotone(Direction::Decreasing).holds());
        let up_jump = PwFn::from_points(vec![
            Breakpoint::cont(Rat::zero(), rat(1, 2)),
            Breakpoint::new(rat(1, 2), rat(1, 2), rat(1, 2), Rat::one()),
            Breakpoint::cont(Rat::one(), Rat::one()),
        ])
        .unwrap();
        match up_jump.is_monotone(Direction::Decreasing).violation().map(|v| &v.witness) {
            Some(Witness::Pair { x, y, fx, fy }) => assert!(x < y && fx < fy),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PwFn::from_points(vec![
            Breakpoint::cont(Rat::zero(), rat(3, 2)),
            Breakpoint::cont(Rat::one(), Rat::one())
        ])
        .is_err());
        assert!(PwFn::from_points(vec![
            Breakpoint::cont(Rat::one(), Rat::one()),
            Breakpoint::cont(Rat::zero(), Rat::one())
        ])
        .is_err());
        let bad_pole = PwFn::from_points_with_poles(
            vec![Breakpoint::cont(Rat::zero(), Rat::one()), Breakpoint::cont(Rat::one(), rat(1, 2))],
            vec![Some(rat(1, 2))],
        );
        assert!(bad_pole.is_err());
    }

    fn arb_fn() -> impl Strategy<Value = PwFn> {
        (1usize..5, prop::collection::vec((0i64..=12, 0i64..=12, 0i64..=12), 6)).prop_map(|(n, vals)| {
            let pts = vals[..=n]
                .iter()
                .enumerate()
                .map(|(i, &(l, a, r))| Breakpoint::new(rat(i as i64, n as i64), rat(l, 12), rat(a, 12), rat(r, 12)))
                .collect();
            PwFn::from_points(pts).unwrap()
        })
    }

    proptest! {
        #[test]
        fn min_is_pointwise(f in arb_fn(), g in arb_fn(), xs in prop::collection::vec(0i64..=997, 20)) {
            let m = f.pointwise_min(&g).unwrap();
            let mx = f.pointwise_max(&g).unwrap();
            for k in xs {
                let x = rat(k, 997);
                prop_assert_eq!(m.value(&x), f.value(&x).min_of(&g.value(&x)));
                prop_assert_eq!(mx.value(&x), f.value(&x).max_of(&g.value(&x)));
            }
        }

        #[test]
        fn sup_of_max(f in arb_fn(), g in arb_fn()) {
            let s = f.pointwise_max(&g).unwrap().global_sup();
            let (a, b) = (f.global_sup(), g.global_sup());
            prop_assert_eq!(s.value.clone(), a.value.max_of(&b.value));
            let expect = (a.value == s.value && a.attained) || (b.value == s.value && b.attained);
            prop_assert_eq!(s.attained, expect);
        }

        #[test]
        fn interior_sides_agree(f in arb_fn(), k in 1i64..1000) {
            let x = rat(k, 1000);
            if !f.xs().any(|b| *b == x) {
                let v = f.value(&x);
                prop_assert_eq!(f.eval(&x, Side::Below).unwrap(), v.clone());
                prop_assert_eq!(f.eval(&x, Side::Above).unwrap(), v);
            }
        }

        #[test]
        fn transport_round_trip(f in arb_fn(), a in 0i64..5, w in 1i64..5) {
            let (t0, t1) = (rat(a, 10), rat(a + w, 10));
            let g = f.affine_transport((&Rat::zero(), &Rat::one()), (&t0, &t1)).unwrap();
            let back = g.affine_transport((&t0, &t1), (&Rat::zero(), &Rat::one())).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
