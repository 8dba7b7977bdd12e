//! Exact lower/upper set checkers.
//!
//! Monotonicity is checked first. The pointwise conditions on idempotent
//! hulls are then evaluated on the canonical sample sites, and finally each
//! summand frame is transported onto `[0, 1]` and tested against the
//! closed-form criteria for the basic Łukasiewicz and product t-norms.

use crate::error::{interval, Error, Result};
use crate::mobius::Mobius;
use crate::order::cells::{critical_points, samples};
use crate::order::{lower_violation, upper_violation};
use crate::pwfn::{Direction, PwFn};
use crate::rat::Rat;
use crate::report::{CheckReport, Rule, Witness};
use crate::tnorm::{OrdinalSumTNorm, Summand, SummandKind};

/// Rules listed in `skip` are not evaluated. Only meant for mutation tests.
#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    pub skip: Vec<Rule>,
}

impl CheckOptions {
    fn runs(&self, rule: Rule) -> bool {
        !self.skip.contains(&rule)
    }
}

pub fn check_lower_set(t: &OrdinalSumTNorm, phi: &PwFn) -> Result<CheckReport> {
    check_lower_set_with(t, phi, &CheckOptions::default())
}

pub fn check_upper_set(t: &OrdinalSumTNorm, psi: &PwFn) -> Result<CheckReport> {
    check_upper_set_with(t, psi, &CheckOptions::default())
}

fn require_unit_domain(f: &PwFn) -> Result<()> {
    if f.lo().is_zero() && f.hi().is_one() {
        Ok(())
    } else {
        Err(Error::DomainMismatch(interval(f.lo(), f.hi()), interval(&Rat::zero(), &Rat::one())))
    }
}

fn pair(f: &PwFn, rule: Rule, at: Option<Rat>, x: Rat, y: Rat) -> CheckReport {
    let (fx, fy) = (f.value(&x), f.value(&y));
    CheckReport::violated(rule, at, Witness::Pair { x, y, fx, fy })
}

/// Sample sites for the pointwise conditions. Besides the critical points of
/// `f`, the position `x = f(1)` matters: "f(1) < c" flips there.
fn sites(t: &OrdinalSumTNorm, f: &PwFn, at_one: &Rat) -> Result<Vec<Rat>> {
    let mut pts = critical_points(t, f, std::slice::from_ref(at_one))?;
    if let Err(i) = pts.binary_search(at_one) {
        pts.insert(i, at_one.clone());
    }
    Ok(samples(&pts))
}

pub fn check_lower_set_with(t: &OrdinalSumTNorm, phi: &PwFn, opts: &CheckOptions) -> Result<CheckReport> {
    require_unit_domain(phi)?;
    if opts.runs(Rule::L1) {
        if let CheckReport::Violated(v) = phi.is_monotone(Direction::Decreasing) {
            if let Witness::Pair { x, y, .. } = v.witness {
                return Ok(pair(phi, Rule::L1, None, y, x));
            }
        }
    }
    let one = Rat::one();
    let at_one = phi.value(&one);
    let sites = sites(t, phi, &at_one)?;

    if opts.runs(Rule::L2) {
        for c in &sites {
            let v = phi.value(c);
            if v <= t.hull_lo(c) && v != at_one {
                return Ok(pair(phi, Rule::L2, Some(c.clone()), c.clone(), one.clone()));
            }
        }
    }
    if opts.runs(Rule::L4) {
        for c in &sites {
            if t.is_idempotent(c) && phi.value(c) >= *c && at_one < *c {
                return Ok(pair(phi, Rule::L4, Some(c.clone()), c.clone(), one.clone()));
            }
        }
    }
    if opts.runs(Rule::L3) {
        for s in t.summands() {
            let (a, b) = (&s.lo, &s.hi);
            if phi.value(a) < *a {
                continue;
            }
            if phi.value(b) < *a {
                return Ok(pair(phi, Rule::L3, Some(a.clone()), a.clone(), b.clone()));
            }
            if let Some(site) = frame_defect(phi, s, true)? {
                let found = search_pair(&site, a, b, |x, y| lower_violation(t, phi, x, y));
                return Ok(match found {
                    Some((x, y)) => pair(phi, Rule::L3, Some(site), x, y),
                    None => {
                        let value = phi.value(&site);
                        CheckReport::violated(Rule::L3, Some(site.clone()), Witness::Point { c: site, value })
                    }
                });
            }
        }
    }
    Ok(CheckReport::Holds)
}

pub fn check_upper_set_with(t: &OrdinalSumTNorm, psi: &PwFn, opts: &CheckOptions) -> Result<CheckReport> {
    require_unit_domain(psi)?;
    if opts.runs(Rule::U1) {
        if let CheckReport::Violated(v) = psi.is_monotone(Direction::Increasing) {
            if let Witness::Pair { x, y, .. } = v.witness {
                return Ok(pair(psi, Rule::U1, None, x, y));
            }
        }
    }
    let one = Rat::one();
    let at_one = psi.value(&one);
    let sites = sites(t, psi, &at_one)?;

    if opts.runs(Rule::U2) {
        for c in &sites {
            let v = psi.value(c);
            if v < t.hull_lo(c) && v != at_one {
                return Ok(pair(psi, Rule::U2, Some(c.clone()), one.clone(), c.clone()));
            }
        }
    }
    if opts.runs(Rule::U3) {
        for s in t.summands() {
            let (a, b) = (&s.lo, &s.hi);
            if psi.value(a) < *a {
                continue;
            }
            if let Some(site) = frame_defect(psi, s, false)? {
                let found = search_pair(&site, a, b, |x, y| upper_violation(t, psi, x, y));
                return Ok(match found {
                    Some((x, y)) => pair(psi, Rule::U3, Some(site), x, y),
                    None => {
                        let value = psi.value(&site);
                        CheckReport::violated(Rule::U3, Some(site.clone()), Witness::Point { c: site, value })
                    }
                });
            }
        }
    }
    Ok(CheckReport::Holds)
}

/// Transports `min(f, b)` on the summand frame onto `[0, 1]` and returns the
/// first position (in global coordinates) where the basic criterion fails.
fn frame_defect(f: &PwFn, s: &Summand, lower: bool) -> Result<Option<Rat>> {
    let (a, b) = (&s.lo, &s.hi);
    let capped = f.pointwise_min(&PwFn::constant(b.clone()))?.restrict(a, b)?;
    let (zero, one) = (Rat::zero(), Rat::one());
    let sigma = capped.affine_transport((a, b), (&zero, &one))?;
    let back = |u: &Rat| a + s.width() * u;
    let pts = sigma.points();
    for (i, p) in pts.iter().enumerate() {
        let jump_ok = match s.kind {
            SummandKind::Lukasiewicz => p.is_continuous(),
            // Only the value at the origin may differ from its right limit.
            SummandKind::Product => p.x.is_zero() || p.is_continuous(),
        };
        if !jump_ok {
            return Ok(Some(back(&p.x)));
        }
        if i + 1 == pts.len() {
            break;
        }
        let (l, r) = (&p.x, &pts[i + 1].x);
        if let Some(u) = piece_defect(s.kind, &sigma.segments()[i], l, r, lower) {
            return Ok(Some(back(&u)));
        }
    }
    Ok(None)
}

/// A point of `[l, r]` where the basic criterion fails on the piece `m`.
fn piece_defect(kind: SummandKind, m: &Mobius, l: &Rat, r: &Rat, lower: bool) -> Option<Rat> {
    let (p, q, rr, s) = m.coeffs();
    match kind {
        SummandKind::Lukasiewicz => {
            // The derivative is det / D², so 1-Lipschitz means |det| <= D² at both ends.
            let d = m.det().abs();
            let mid = l.midpoint(r);
            if m.is_affine() {
                return (d > Rat::one()).then_some(mid);
            }
            [l, r].into_iter().find(|x| d > m.den_at(x) * m.den_at(x)).cloned()
        }
        SummandKind::Product => {
            // Lower: u·f(u) nondecreasing. Upper: f(u)/u nonincreasing.
            // Both reduce to a quadratic numerator being nonnegative.
            let two = Rat::from_int(2);
            let quad = if lower {
                crate::mobius::Quad::new(q * s, &two * q * rr, p * rr)
            } else {
                crate::mobius::Quad::new(q * s, &two * p * s, p * rr)
            };
            let mut probe = vec![l.clone(), r.clone()];
            if !quad.a.is_zero() {
                let vertex = -&quad.b / (&two * &quad.a);
                if l < &vertex && &vertex < r {
                    probe.push(vertex);
                }
            }
            let bad = probe.into_iter().find(|u| quad.eval(u).is_negative())?;
            if lower || !bad.is_zero() {
                return Some(bad);
            }
            // The upper criterion is vacuous at the origin itself; the defect
            // lives just to its right.
            let mut u = r.clone();
            while !quad.eval(&u).is_negative() {
                u = u.midpoint(l);
            }
            Some(u)
        }
    }
}

/// Looks for a pair `(x, y)` near `site`, inside `[lo, hi]`, satisfying
/// `pred`, shrinking the search radius geometrically.
pub fn search_pair(site: &Rat, lo: &Rat, hi: &Rat, pred: impl Fn(&Rat, &Rat) -> bool) -> Option<(Rat, Rat)> {
    let width = hi - lo;
    let two = Rat::from_int(2);
    let mut delta = width.clone();
    for _ in 0..300 {
        delta = &delta / &two;
        let d2 = &delta * &two;
        let cands: Vec<Rat> = [site - &d2, site - &delta, site.clone(), site + &delta, site + &d2]
            .into_iter()
            .filter(|c| lo <= c && c <= hi)
            .collect();
        for x in &cands {
            for y in &cands {
                if x != y && pred(x, y) {
                    return Some((x.clone(), y.clone()));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{principal_lower, principal_upper};
    use crate::pwfn::Breakpoint;
    use crate::rat::rat;

    fn families() -> Vec<OrdinalSumTNorm> {
        vec![
            OrdinalSumTNorm::min(),
            OrdinalSumTNorm::lukasiewicz(),
            OrdinalSumTNorm::product(),
            OrdinalSumTNorm::t4(),
            OrdinalSumTNorm::new(vec![
                Summand::new(Rat::zero(), rat(1, 3), SummandKind::Product),
                Summand::new(rat(1, 2), rat(3, 4), SummandKind::Lukasiewicz),
            ])
            .unwrap(),
        ]
    }

    fn revalidate_lower(t: &OrdinalSumTNorm, phi: &PwFn, r: &CheckReport) {
        let v = r.violation().expect("violated");
        match &v.witness {
            Witness::Pair { x, y, .. } => assert!(lower_violation(t, phi, x, y), "{r}"),
            w => panic!("unexpected witness {w}"),
        }
    }

    fn revalidate_upper(t: &OrdinalSumTNorm, psi: &PwFn, r: &CheckReport) {
        let v = r.violation().expect("violated");
        match &v.witness {
            Witness::Pair { x, y, .. } => assert!(upper_violation(t, psi, x, y), "{r}"),
            w => panic!("unexpected witness {w}"),
        }
    }

    #[test]
    fn principals_and_constants_hold() {
        for t in families() {
            for k in 0..=12 {
                let x = rat(k, 12);
                assert!(check_lower_set(&t, &principal_lower(&t, &x).unwrap()).unwrap().holds(), "{t} {x}");
                assert!(check_upper_set(&t, &principal_upper(&t, &x).unwrap()).unwrap().holds(), "{t} {x}");
                assert!(check_lower_set(&t, &PwFn::constant(x.clone())).unwrap().holds());
                assert!(check_upper_set(&t, &PwFn::constant(x)).unwrap().holds());
            }
        }
    }

    #[test]
    fn drop_at_the_right_end() {
        // 1 on [0, 1), 7/10 at 1: fails at every idempotent c in (7/10, 1).
        let t = OrdinalSumTNorm::min();
        let phi = PwFn::from_points(vec![
            Breakpoint::cont(Rat::zero(), Rat::one()),
            Breakpoint::new(Rat::one(), Rat::one(), rat(7, 10), rat(7, 10)),
        ])
        .unwrap();
        let r = check_lower_set(&t, &phi).unwrap();
        assert_eq!(r.rule(), Some(Rule::L4));
        if let Witness::Pair { x, y, .. } = &r.violation().unwrap().witness {
            assert!(lower_violation(&t, &phi, x, y));
        }
    }

    #[test]
    fn godel_three_step() {
        let t = OrdinalSumTNorm::min();
        let phi = PwFn::from_points(vec![
            Breakpoint::cont(Rat::zero(), rat(3, 4)),
            Breakpoint::new(rat(1, 2), rat(3, 4), rat(1, 2), rat(1, 2)),
            Breakpoint::new(rat(3, 4), rat(1, 2), rat(1, 4), rat(1, 4)),
            Breakpoint::cont(Rat::one(), rat(1, 4)),
        ])
        .unwrap();
        let r = check_lower_set(&t, &phi).unwrap();
        assert_eq!(r.rule(), Some(Rule::L2));
        revalidate_lower(&t, &phi, &r);
        // 3/5 violates the same condition.
        assert!(phi.value(&rat(3, 5)) <= rat(3, 5) && phi.value(&rat(3, 5)) != phi.value(&Rat::one()));
        assert!(lower_violation(&t, &phi, &rat(3, 5), &Rat::one()));
    }

    #[test]
    fn steep_lukasiewicz() {
        let t = OrdinalSumTNorm::lukasiewicz();
        let phi = PwFn::from_points(vec![
            Breakpoint::cont(Rat::zero(), Rat::one()),
            Breakpoint::cont(rat(1, 2), Rat::zero()),
            Breakpoint::cont(Rat::one(), Rat::zero()),
        ])
        .unwrap();
        let r = check_lower_set(&t, &phi).unwrap();
        assert_eq!(r.rule(), Some(Rule::L3));
        revalidate_lower(&t, &phi, &r);
        if let Witness::Pair { x, y, .. } = &r.violation().unwrap().witness {
            assert!(*x <= rat(1, 2) && *y <= rat(1, 2));
        }
    }

    #[test]
    fn identity_is_not_lower() {
        for t in families() {
            let r = check_lower_set(&t, &PwFn::identity()).unwrap();
            assert_eq!(r.rule(), Some(Rule::L1));
            revalidate_lower(&t, &PwFn::identity(), &r);
        }
    }

    #[test]
    fn godel_half_identity_upper() {
        let t = OrdinalSumTNorm::min();
        let psi = PwFn::from_points(vec![
            Breakpoint::cont(Rat::zero(), Rat::zero()),
            Breakpoint::cont(Rat::one(), rat(1, 2)),
        ])
        .unwrap();
        let r = check_upper_set(&t, &psi).unwrap();
        assert_eq!(r.rule(), Some(Rule::U2));
        revalidate_upper(&t, &psi, &r);
        assert!(upper_violation(&t, &psi, &Rat::one(), &rat(1, 2)));
    }

    #[test]
    fn product_ratio_conditions() {
        let p = OrdinalSumTNorm::product();
        // f(u) = 1 − u: u·f(u) decreases after 1/2.
        let down = PwFn::from_points(vec![
            Breakpoint::cont(Rat::zero(), Rat::one()),
            Breakpoint::cont(Rat::one(), Rat::zero()),
        ])
        .unwrap();
        let r = check_lower_set(&p, &down).unwrap();
        assert_eq!(r.rule(), Some(Rule::L3));
        revalidate_lower(&p, &down, &r);
        // ψ(u) = (1 + u)/2: ψ(u)/u is nonincreasing, so it is an upper set.
        let up =
            PwFn::from_points(vec![Breakpoint::cont(Rat::zero(), rat(1, 2)), Breakpoint::cont(Rat::one(), Rat::one())])
                .unwrap();
        assert!(check_upper_set(&p, &up).unwrap().holds());
        // Flat at 1/4, then rising to 1: ψ(u)/u increases after the kink.
        let steep = PwFn::from_points(vec![
            Breakpoint::cont(Rat::zero(), rat(1, 4)),
            Breakpoint::cont(rat(1, 2), rat(1, 4)),
            Breakpoint::cont(Rat::one(), Rat::one()),
        ])
        .unwrap();
        let r = check_upper_set(&p, &steep).unwrap();
        assert!(!r.holds());
        revalidate_upper(&p, &steep, &r);
    }

    #[test]
    fn search_pair_finds_local_pairs() {
        let hit = search_pair(&rat(1, 2), &Rat::zero(), &Rat::one(), |x, y| x < &rat(1, 2) && y > &rat(1, 2));
        assert!(hit.is_some());
        assert!(search_pair(&rat(1, 2), &Rat::zero(), &Rat::one(), |_, _| false).is_none());
    }
}
