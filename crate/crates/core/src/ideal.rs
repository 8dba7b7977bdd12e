//! Flat ideals of `([0, 1], d_L)`.
//!
//! A lower set is flat iff `φ(0) = 1`, no value `φ(c) >= c⁺` is a
//! non-idempotent, and on every summand frame entered from above the capped
//! restriction `c⁺ ∧ φ` is a frame-principal ideal.

use std::fmt;

use crate::error::{Error, Result};
use crate::mobius::Mobius;
use crate::order::{
    check_lower_set, critical_points, principal_lower, principal_upper, samples, sup_min_on, tensor, Span,
};
use crate::pwfn::{Breakpoint, PwFn, Sup};
use crate::rat::Rat;
use crate::report::{CheckReport, Rule, Witness};
use crate::tnorm::{OrdinalSumTNorm, Summand, SummandKind};

/// Holds iff the supremum of `φ` reaches 1, attained or not.
pub fn is_inhabited(phi: &PwFn) -> (CheckReport, Sup) {
    let sup = phi.global_sup();
    let report = if sup.value.is_one() {
        CheckReport::Holds
    } else {
        CheckReport::violated(Rule::Inhabited, None, Witness::Sup(sup.clone()))
    };
    (report, sup)
}

/// `(φ⊗(ψ₁∧ψ₂), φ⊗ψ₁, φ⊗ψ₂)`.
pub fn flatness_values(t: &OrdinalSumTNorm, phi: &PwFn, psi1: &PwFn, psi2: &PwFn) -> Result<(Sup, Sup, Sup)> {
    let meet = psi1.pointwise_min(psi2)?;
    Ok((tensor(t, phi, &meet)?, tensor(t, phi, psi1)?, tensor(t, phi, psi2)?))
}

/// True when the pair breaks flatness, i.e. the meet side is strictly smaller.
pub fn breaks_flatness(values: &(Sup, Sup, Sup)) -> bool {
    values.0.value < values.1.value.min_of(&values.2.value)
}

fn flatness_witness(t: &OrdinalSumTNorm, phi: &PwFn, c: &Rat, psi1: PwFn, psi2: PwFn) -> Result<(Witness, bool)> {
    let values = flatness_values(t, phi, &psi1, &psi2)?;
    let strict = breaks_flatness(&values);
    let (lhs, t1, t2) = values;
    Ok((Witness::Flatness { c: c.clone(), psi1, psi2, lhs, t1, t2 }, strict))
}

/// The constant upper set `φ(c)` and the principal upper set `c → −`.
pub fn witness_upper_pair(t: &OrdinalSumTNorm, phi: &PwFn, c: &Rat) -> Result<(PwFn, PwFn)> {
    if !c.in_unit() {
        return Err(Error::OutOfUnit(c.clone()));
    }
    Ok((PwFn::constant(phi.value(c)), principal_upper(t, c)?))
}

/// `x ↦ min(b, x → β)` on the summand frame `[a, b]`.
pub fn frame_principal(t: &OrdinalSumTNorm, s: &Summand, beta: &Rat) -> Result<PwFn> {
    principal_lower(t, beta)?.pointwise_min(&PwFn::constant(s.hi.clone()))?.restrict(&s.lo, &s.hi)
}

fn capped_restriction(phi: &PwFn, s: &Summand) -> Result<PwFn> {
    phi.pointwise_min(&PwFn::constant(s.hi.clone()))?.restrict(&s.lo, &s.hi)
}

/// Independent verdicts for the three flatness conditions. Each one is
/// evaluated regardless of the others.
#[derive(Clone, Debug)]
pub struct FlatConditions {
    pub f1: CheckReport,
    pub f2: CheckReport,
    pub f3: CheckReport,
}

impl FlatConditions {
    pub fn all_hold(&self) -> bool {
        self.f1.holds() && self.f2.holds() && self.f3.holds()
    }

    pub fn failing(&self) -> Vec<Rule> {
        [(&self.f1, Rule::F1), (&self.f2, Rule::F2), (&self.f3, Rule::F3)]
            .into_iter()
            .filter(|(r, _)| !r.holds())
            .map(|(_, rule)| rule)
            .collect()
    }
}

pub fn flat_conditions(t: &OrdinalSumTNorm, phi: &PwFn) -> Result<FlatConditions> {
    Ok(FlatConditions { f1: check_f1(phi), f2: check_f2(t, phi)?, f3: check_f3(t, phi)? })
}

fn check_f1(phi: &PwFn) -> CheckReport {
    let zero = Rat::zero();
    let value = phi.value(&zero);
    if value.is_one() {
        CheckReport::Holds
    } else {
        CheckReport::violated(Rule::F1, Some(zero.clone()), Witness::Point { c: zero, value })
    }
}

fn check_f2(t: &OrdinalSumTNorm, phi: &PwFn) -> Result<CheckReport> {
    for c in samples(&critical_points(t, phi, &[])?) {
        let v = phi.value(&c);
        if v >= t.hull_hi(&c) && !t.is_idempotent(&v) {
            let (psi1, psi2) = witness_upper_pair(t, phi, &c)?;
            let (w, _) = flatness_witness(t, phi, &c, psi1, psi2)?;
            return Ok(CheckReport::violated(Rule::F2, Some(c), w));
        }
    }
    Ok(CheckReport::Holds)
}

fn check_f3(t: &OrdinalSumTNorm, phi: &PwFn) -> Result<CheckReport> {
    for s in t.summands() {
        let (a, b) = (&s.lo, &s.hi);
        if phi.value(a) <= *a {
            continue;
        }
        let sigma = capped_restriction(phi, s)?;
        let beta = b.min_of(&phi.value(b));
        let target = frame_principal(t, s, &beta)?;
        if sigma == target {
            continue;
        }
        return f3_violation(t, phi, s, &sigma, &target);
    }
    Ok(CheckReport::Holds)
}

/// Points of `(a, b)` where the restriction differs from the frame-principal
/// ideal, preferring those where `φ` is below `b`.
fn mismatch_sites(phi: &PwFn, s: &Summand, sigma: &PwFn, target: &PwFn) -> Result<Vec<Rat>> {
    let mut xs: Vec<Rat> = sigma.xs().chain(target.xs()).cloned().collect();
    xs.extend(sigma.pointwise_min(target)?.xs().cloned());
    xs.sort();
    xs.dedup();
    let bad: Vec<Rat> =
        samples(&xs).into_iter().filter(|c| s.contains_open(c) && sigma.value(c) != target.value(c)).collect();
    let (mut below, rest): (Vec<Rat>, Vec<Rat>) = bad.into_iter().partition(|c| phi.value(c) < s.hi);
    below.extend(rest);
    Ok(below)
}

fn f3_violation(t: &OrdinalSumTNorm, phi: &PwFn, s: &Summand, sigma: &PwFn, target: &PwFn) -> Result<CheckReport> {
    let sites = mismatch_sites(phi, s, sigma, target)?;
    let mut fallback = None;
    for c in sites.iter().take(8) {
        let (psi1, psi2) = witness_upper_pair(t, phi, c)?;
        let (w, strict) = flatness_witness(t, phi, c, psi1, psi2)?;
        if strict {
            return Ok(CheckReport::violated(Rule::F3, Some(c.clone()), w));
        }
        let (lift1, lift2) = lifted_pair(t, s, sigma, c)?;
        let (w2, strict) = flatness_witness(t, phi, c, lift1, lift2)?;
        if strict {
            return Ok(CheckReport::violated(Rule::F3, Some(c.clone()), w2));
        }
        fallback.get_or_insert((c.clone(), w));
    }
    let (c, w) = match fallback {
        Some(f) => f,
        None => {
            let c = s.lo.midpoint(&s.hi);
            (c.clone(), Witness::Point { value: phi.value(&c), c })
        }
    };
    Ok(CheckReport::violated(Rule::F3, Some(c), w))
}

/// The frame pair `(ψ₁ ≡ σ(c), ψ₂ = c →ᶜ −)` extended to `[0, 1]` by the
/// identity below the frame and by its top value above it.
fn lifted_pair(t: &OrdinalSumTNorm, s: &Summand, sigma: &PwFn, c: &Rat) -> Result<(PwFn, PwFn)> {
    let (a, b) = (&s.lo, &s.hi);
    let level = sigma.value(c);
    let (zero, one) = (Rat::zero(), Rat::one());
    let psi1 = if a.is_zero() {
        PwFn::constant(level)
    } else {
        PwFn::from_points(vec![
            Breakpoint::cont(zero.clone(), zero),
            Breakpoint::new(a.clone(), a.clone(), level.clone(), level.clone()),
            Breakpoint::cont(one, level),
        ])?
    };
    let psi2 = principal_upper(t, c)?.pointwise_min(&PwFn::constant(b.clone()))?;
    Ok((psi1, psi2))
}

/// Decides flatness. A function that is not a lower set is reported with the
/// lower-set violation; otherwise conditions are tried in the order F1, F2, F3.
pub fn check_flat(t: &OrdinalSumTNorm, phi: &PwFn) -> Result<CheckReport> {
    let lower = check_lower_set(t, phi)?;
    if !lower.holds() {
        return Ok(lower);
    }
    let f1 = check_f1(phi);
    if !f1.holds() {
        return Ok(f1);
    }
    let f2 = check_f2(t, phi)?;
    if !f2.holds() {
        return Ok(f2);
    }
    check_f3(t, phi)
}

/// For a t-norm with a single summand covering `(0, 1)`, the point `x` with
/// `φ = d_L(−, x)`, or `None` if `φ` is not of that form.
pub fn extract_principal(t: &OrdinalSumTNorm, phi: &PwFn) -> Result<Option<Rat>> {
    if !t.is_basic() {
        return Err(Error::Precondition("principal extraction needs a single summand covering (0, 1)".into()));
    }
    let x = phi.value(&Rat::one());
    Ok((principal_lower(t, &x)? == *phi).then_some(x))
}

/// `c⁺ ∧ φ` on `[c⁻, c⁺]` for a non-idempotent `c` with `φ(c⁻) > c⁻`.
pub fn restrict_ideal(t: &OrdinalSumTNorm, phi: &PwFn, c: &Rat) -> Result<PwFn> {
    let s = t.summand_of(c).ok_or_else(|| Error::Precondition(format!("{c} is idempotent")))?;
    if phi.value(&s.lo) <= s.lo {
        return Err(Error::Precondition(format!("φ({}) does not exceed {}", s.lo, s.lo)));
    }
    let report = check_flat(t, phi)?;
    if !report.holds() {
        return Err(Error::Precondition(format!("not a flat ideal: {report}")));
    }
    capped_restriction(phi, s)
}

/// An increasing sequence with a declared limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetSpec {
    pub points: Vec<Rat>,
    pub limit: Rat,
    /// Whether the sequence is eventually constant at `limit`.
    pub attained: bool,
}

impl NetSpec {
    fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::Precondition("net needs at least one point".into()));
        }
        for p in self.points.iter().chain([&self.limit]) {
            if !p.in_unit() {
                return Err(Error::OutOfUnit(p.clone()));
            }
        }
        if self.points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("net points must increase strictly".into()));
        }
        let last = self.points.last().unwrap();
        if *last > self.limit || (!self.attained && *last == self.limit) {
            return Err(Error::Precondition("net limit must lie above its points".into()));
        }
        Ok(())
    }
}

/// `y ↦ lim (y → x_λ)`: the lower set induced by the net.
pub fn net_ideal(t: &OrdinalSumTNorm, net: &NetSpec) -> Result<PwFn> {
    net.validate()?;
    let x = &net.limit;
    if net.attained {
        return principal_lower(t, x);
    }
    let (zero, one) = (Rat::zero(), Rat::one());
    let top = Mobius::constant(one.clone());
    let floor = Mobius::constant(x.clone());
    let built = match t.summands().iter().find(|s| s.lo < *x && *x <= s.hi) {
        Some(s) => {
            let (a, b) = (&s.lo, &s.hi);
            let scaled = match s.kind {
                SummandKind::Lukasiewicz => Mobius::linear(b + x, -Rat::one()),
                SummandKind::Product => {
                    let k = (b - a) * (x - a);
                    Mobius::new(&k - a * a, a.clone(), -a, Rat::one())
                }
            };
            let mut xs = vec![zero, x.clone()];
            let mut ats = vec![one, b.clone()];
            let mut segs = vec![top];
            if x < b {
                segs.push(scaled);
                xs.push(b.clone());
                ats.push(x.clone());
            }
            if !b.is_one() {
                segs.push(floor);
                xs.push(Rat::one());
                ats.push(x.clone());
            }
            PwFn::from_pieces(xs, ats, segs)?
        }
        None => {
            let mut xs = vec![zero, x.clone()];
            let mut ats = vec![one, x.clone()];
            let mut segs = vec![top];
            if !x.is_one() {
                segs.push(floor);
                xs.push(Rat::one());
                ats.push(x.clone());
            }
            PwFn::from_pieces(xs, ats, segs)?
        }
    };
    Ok(built)
}

/// `{x : φ(x) >= x⁺}` as a union of disjoint intervals in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSet {
    pub spans: Vec<Span>,
}

impl KSet {
    pub fn contains(&self, x: &Rat) -> bool {
        self.spans.iter().any(|s| s.contains(x))
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spans.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self
            .spans
            .iter()
            .map(|s| {
                if s.lo == s.hi {
                    format!("{{{}}}", s.lo)
                } else {
                    let l = if s.lo_closed { '[' } else { '(' };
                    let r = if s.hi_closed { ']' } else { ')' };
                    format!("{l}{}, {}{r}", s.lo, s.hi)
                }
            })
            .collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

pub fn k_set(t: &OrdinalSumTNorm, phi: &PwFn) -> Result<KSet> {
    let pts = critical_points(t, phi, &[])?;
    let member = |x: &Rat| phi.value(x) >= t.hull_hi(x);
    let mut spans: Vec<Span> = Vec::new();
    // Extend the last span if it ends exactly where the new piece starts.
    let push = |spans: &mut Vec<Span>, lo: Rat, hi: Rat, lo_closed: bool, hi_closed: bool| {
        if let Some(last) = spans.last_mut() {
            if last.hi == lo && (last.hi_closed || lo_closed) {
                last.hi = hi;
                last.hi_closed = hi_closed;
                return;
            }
        }
        spans.push(Span { lo, hi, lo_closed, hi_closed });
    };
    for (i, p) in pts.iter().enumerate() {
        if member(p) {
            push(&mut spans, p.clone(), p.clone(), true, true);
        }
        if let Some(q) = pts.get(i + 1) {
            if member(&p.midpoint(q)) {
                push(&mut spans, p.clone(), q.clone(), false, false);
            }
        }
    }
    Ok(KSet { spans })
}

/// `⋁_{x ∈ K_φ} φ(x) ∧ ψ(x)`. Requires `φ` to be a lower set meeting F2 and F3.
pub fn tensor_via_k(t: &OrdinalSumTNorm, phi: &PwFn, psi: &PwFn) -> Result<Sup> {
    let lower = check_lower_set(t, phi)?;
    if !lower.holds() {
        return Err(Error::Precondition(format!("not a lower set: {lower}")));
    }
    for r in [check_f2(t, phi)?, check_f3(t, phi)?] {
        if !r.holds() {
            return Err(Error::Precondition(format!("flatness condition fails: {r}")));
        }
    }
    let k = k_set(t, phi)?;
    let mut best: Option<Sup> = None;
    for span in &k.spans {
        let s = sup_min_on(phi, psi, span)?;
        best = Some(match best {
            None => s,
            Some(b) => b.join(s),
        });
    }
    best.ok_or_else(|| Error::Precondition("empty K set".into()))
}
