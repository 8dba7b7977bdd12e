//! Seeded random t-norms and candidate functions.
//!
//! Every generator draws only from the supplied RNG, so a seed fixes the
//! whole stream.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::ideal::{net_ideal, NetSpec};
use crate::mobius::Mobius;
use crate::order::{principal_lower, principal_upper};
use crate::pwfn::{Breakpoint, PwFn};
use crate::rat::{rat, Rat};
use crate::tnorm::{OrdinalSumTNorm, Summand, SummandKind};

pub type Rng8 = ChaCha8Rng;

const DENS: [i64; 8] = [2, 3, 4, 5, 6, 8, 10, 12];

/// A rational in `[0, 1]` with a small denominator.
pub fn unit(rng: &mut Rng8) -> Rat {
    let d = *DENS.choose(rng).unwrap();
    rat(rng.gen_range(0..=d), d)
}

/// A rational strictly between `lo` and `hi`.
pub fn strictly_between(rng: &mut Rng8, lo: &Rat, hi: &Rat) -> Rat {
    let k = rng.gen_range(1..8);
    lo + (hi - lo) * rat(k, 8)
}

/// 0 to 4 summands with endpoints on a 1/24 grid; neighbours may touch.
pub fn random_tnorm(rng: &mut Rng8) -> OrdinalSumTNorm {
    let k = rng.gen_range(0..=4usize);
    loop {
        let mut cuts: Vec<i64> = (0..2 * k).map(|_| rng.gen_range(0..=24)).collect();
        cuts.sort();
        if cuts.chunks(2).any(|c| c[0] == c[1]) {
            continue;
        }
        let summands = cuts
            .chunks(2)
            .map(|c| {
                let kind = if rng.gen_bool(0.5) { SummandKind::Lukasiewicz } else { SummandKind::Product };
                Summand::new(rat(c[0], 24), rat(c[1], 24), kind)
            })
            .collect();
        return OrdinalSumTNorm::new(summands).expect("sorted disjoint cuts");
    }
}

/// A random idempotent of `t`.
pub fn idempotent(rng: &mut Rng8, t: &OrdinalSumTNorm) -> Rat {
    let u = unit(rng);
    match t.summand_of(&u) {
        None => u,
        Some(s) if rng.gen_bool(0.5) => s.lo.clone(),
        Some(s) => s.hi.clone(),
    }
}

fn sorted_interior(rng: &mut Rng8, m: usize) -> Vec<Rat> {
    let mut xs: Vec<Rat> = (0..m).map(|_| rat(rng.gen_range(1..48), 48)).collect();
    xs.sort();
    xs.dedup();
    xs
}

fn values_sorted(rng: &mut Rng8, n: usize, decreasing: bool) -> Vec<Rat> {
    let mut vs: Vec<Rat> = (0..n).map(|_| unit(rng)).collect();
    vs.sort();
    if decreasing {
        vs.reverse();
    }
    vs
}

/// A random piecewise-linear function with jumps. Monotone in the requested
/// direction unless `scramble` is set.
pub fn raw(rng: &mut Rng8, decreasing: bool, scramble: bool) -> PwFn {
    let m = rng.gen_range(0..=4);
    let mut xs = vec![Rat::zero()];
    xs.extend(sorted_interior(rng, m));
    xs.push(Rat::one());
    // Three values per breakpoint, monotone along the whole sequence.
    let mut vs = values_sorted(rng, 3 * xs.len(), decreasing);
    if scramble {
        vs.shuffle(rng);
    }
    let n = xs.len();
    let pts = xs
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            let (l, a, r) = (&vs[3 * i], &vs[3 * i + 1], &vs[3 * i + 2]);
            let jump = rng.gen_bool(0.4);
            let at = a.clone();
            let left = if i == 0 {
                at.clone()
            } else if jump {
                l.clone()
            } else {
                at.clone()
            };
            let right = if i + 1 == n {
                at.clone()
            } else if jump {
                r.clone()
            } else {
                at.clone()
            };
            Breakpoint::new(x, left, at, right)
        })
        .collect();
    PwFn::from_points(pts).expect("valid raw draft")
}

/// Changes one point value or replaces one piece by a random line.
pub fn mutate(rng: &mut Rng8, f: &PwFn) -> PwFn {
    let xs: Vec<Rat> = f.xs().cloned().collect();
    let mut ats: Vec<Rat> = f.points().iter().map(|p| p.at.clone()).collect();
    let mut segs: Vec<Mobius> = f.segments().to_vec();
    if rng.gen_bool(0.5) {
        let i = rng.gen_range(0..ats.len());
        ats[i] = unit(rng);
    } else {
        let i = rng.gen_range(0..segs.len());
        segs[i] = Mobius::through(&xs[i], &unit(rng), &xs[i + 1], &unit(rng));
    }
    PwFn::from_pieces(xs, ats, segs).expect("values stay in [0,1]")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowerProfile {
    Principal,
    Net,
    Constant,
    Pasted,
    Raw,
    Scrambled,
    Mutated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpperProfile {
    Principal,
    Constant,
    Pasted,
    Repaired,
    Raw,
    Scrambled,
    Mutated,
}

/// The lower set of a random increasing net, attained or not.
pub fn net(rng: &mut Rng8, t: &OrdinalSumTNorm) -> PwFn {
    let mut limit = unit(rng);
    if limit.is_zero() {
        limit = Rat::one();
    }
    let attained = rng.gen_bool(0.3);
    let points = vec![&limit * rat(1, 2), &limit * rat(3, 4)];
    net_ideal(t, &NetSpec { points, limit, attained }).expect("valid net")
}

fn lower_atom(rng: &mut Rng8, t: &OrdinalSumTNorm) -> PwFn {
    match rng.gen_range(0..3) {
        0 => principal_lower(t, &unit(rng)).unwrap(),
        1 => net(rng, t),
        _ => PwFn::constant(unit(rng)),
    }
}

/// Pointwise joins and meets of lower sets are lower sets.
fn pasted_lower(rng: &mut Rng8, t: &OrdinalSumTNorm) -> PwFn {
    let mut f = lower_atom(rng, t);
    for _ in 0..rng.gen_range(1..=2) {
        let g = lower_atom(rng, t);
        f = if rng.gen_bool(0.5) { f.pointwise_max(&g) } else { f.pointwise_min(&g) }.expect("affine or shared poles");
    }
    f
}

pub fn random_lower(rng: &mut Rng8, t: &OrdinalSumTNorm) -> (PwFn, LowerProfile) {
    let profile = *[
        LowerProfile::Principal,
        LowerProfile::Net,
        LowerProfile::Constant,
        LowerProfile::Pasted,
        LowerProfile::Pasted,
        LowerProfile::Raw,
        LowerProfile::Raw,
        LowerProfile::Scrambled,
        LowerProfile::Mutated,
        LowerProfile::Mutated,
    ]
    .choose(rng)
    .unwrap();
    let f = match profile {
        LowerProfile::Principal => principal_lower(t, &unit(rng)).unwrap(),
        LowerProfile::Net => net(rng, t),
        LowerProfile::Constant => PwFn::constant(unit(rng)),
        LowerProfile::Pasted => pasted_lower(rng, t),
        LowerProfile::Raw => raw(rng, true, false),
        LowerProfile::Scrambled => raw(rng, true, true),
        LowerProfile::Mutated => {
            let base = pasted_lower(rng, t);
            mutate(rng, &base)
        }
    };
    (f, profile)
}

fn upper_atom(rng: &mut Rng8, t: &OrdinalSumTNorm) -> PwFn {
    match rng.gen_range(0..3) {
        0 => principal_upper(t, &unit(rng)).unwrap(),
        1 => repaired_upper(rng, t),
        _ => PwFn::constant(unit(rng)),
    }
}

fn pasted_upper(rng: &mut Rng8, t: &OrdinalSumTNorm) -> PwFn {
    let mut f = upper_atom(rng, t);
    for _ in 0..rng.gen_range(1..=2) {
        let g = upper_atom(rng, t);
        f = if rng.gen_bool(0.5) { f.pointwise_max(&g) } else { f.pointwise_min(&g) }.expect("affine or shared poles");
    }
    f
}

pub fn random_upper(rng: &mut Rng8, t: &OrdinalSumTNorm) -> (PwFn, UpperProfile) {
    let profile = *[
        UpperProfile::Principal,
        UpperProfile::Constant,
        UpperProfile::Pasted,
        UpperProfile::Repaired,
        UpperProfile::Repaired,
        UpperProfile::Raw,
        UpperProfile::Raw,
        UpperProfile::Scrambled,
        UpperProfile::Mutated,
        UpperProfile::Mutated,
    ]
    .choose(rng)
    .unwrap();
    let f = match profile {
        UpperProfile::Principal => principal_upper(t, &unit(rng)).unwrap(),
        UpperProfile::Constant => PwFn::constant(unit(rng)),
        UpperProfile::Pasted => pasted_upper(rng, t),
        UpperProfile::Repaired => repaired_upper(rng, t),
        UpperProfile::Raw => raw(rng, false, false),
        UpperProfile::Scrambled => raw(rng, false, true),
        UpperProfile::Mutated => {
            let base = pasted_upper(rng, t);
            mutate(rng, &base)
        }
    };
    (f, profile)
}

/// A random increasing draft projected onto the upper-set conditions, built
/// left to right over nodes that include every summand endpoint.
///
/// - On idempotent stretches the value may not dip below the diagonal; if the
///   draft would, the function freezes at its current value.
/// - Inside a summand `(a, b)` entered at or above `a`, Łukasiewicz pieces
///   rise with slope at most 1 and product pieces keep `(ψ(x) − a)/(x − a)`
///   nonincreasing, until the value reaches `b`.
/// - Upward jumps are only placed at idempotent nodes that touch no summand.
pub fn repaired_upper(rng: &mut Rng8, t: &OrdinalSumTNorm) -> PwFn {
    let mut nodes = vec![Rat::zero(), Rat::one()];
    let k = rng.gen_range(1..=5);
    nodes.extend(sorted_interior(rng, k));
    nodes.extend(t.endpoints());
    nodes.sort();
    nodes.dedup();
    let draft = values_sorted(rng, nodes.len(), false);

    let mut left = vec![draft[0].clone()];
    let mut right = vec![draft[0].clone()];
    let mut frozen: Option<Rat> = None;
    for i in 1..nodes.len() {
        let (x0, x1) = (&nodes[i - 1], &nodes[i]);
        let v0 = right[i - 1].clone();
        let node_lo = t.hull_lo(x0);
        if frozen.is_none() && v0 < node_lo {
            frozen = Some(v0.clone());
        }
        if let Some(v) = &frozen {
            left.push(v.clone());
            right.push(v.clone());
            continue;
        }
        let mid = x0.midpoint(x1);
        let mut w = v0.max_of(&draft[i]);
        match t.summand_of(&mid) {
            None => {
                if &w < x1 {
                    frozen = Some(v0.clone());
                    left.push(v0.clone());
                    right.push(v0);
                    continue;
                }
            }
            Some(s) if v0 < s.hi => {
                let cap = match s.kind {
                    SummandKind::Lukasiewicz => &v0 + (x1 - x0),
                    SummandKind::Product if *x0 == s.lo => Rat::one(),
                    SummandKind::Product => &s.lo + (&v0 - &s.lo) * (x1 - &s.lo) / (x0 - &s.lo),
                };
                w = w.min_of(&cap).min_of(&Rat::one());
            }
            Some(_) => {}
        }
        let touches = t.summands().iter().any(|s| s.contains_closed(x1));
        let mut r = w.clone();
        if i + 1 < nodes.len() && !touches && rng.gen_bool(0.3) {
            r = strictly_between(rng, &w, &Rat::one()).max_of(&w);
        }
        left.push(w);
        right.push(r);
    }
    let pts = nodes
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            let at = left[i].clone();
            Breakpoint::new(x, left[i].clone(), at, right[i].clone())
        })
        .collect::<Vec<_>>();
    // The value at a jump node sits with the left limit; the right end has no right limit.
    let n = pts.len();
    let pts = pts
        .into_iter()
        .enumerate()
        .map(|(i, mut p)| {
            if i + 1 == n {
                p.right = p.at.clone();
            }
            p
        })
        .collect();
    PwFn::from_points(pts).expect("repaired draft is valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlatProfile {
    Principal,
    Net,
    Pasted,
}

/// A flat ideal built from principal ideals, nets, or a principal ideal
/// raised to an idempotent floor.
pub fn flat_ideal(rng: &mut Rng8, t: &OrdinalSumTNorm) -> (PwFn, FlatProfile) {
    match rng.gen_range(0..3) {
        0 => (principal_lower(t, &unit(rng)).unwrap(), FlatProfile::Principal),
        1 => (net(rng, t), FlatProfile::Net),
        _ => {
            let k = idempotent(rng, t);
            let p = principal_lower(t, &unit(rng)).unwrap();
            (p.pointwise_max(&PwFn::constant(k)).unwrap(), FlatProfile::Pasted)
        }
    }
}

/// A lower set failing only `φ(0) = 1`: a flat ideal capped at an idempotent below 1.
pub fn violate_f1(rng: &mut Rng8, t: &OrdinalSumTNorm) -> PwFn {
    let (base, _) = flat_ideal(rng, t);
    let mut k = idempotent(rng, t);
    if k.is_one() {
        k = t.summands().first().map_or(rat(1, 2), |s| s.lo.clone());
        if k.is_one() {
            k = Rat::zero();
        }
    }
    base.pointwise_min(&PwFn::constant(k)).unwrap()
}

/// A lower set failing only the idempotent-value condition: 1 on `[0, p]`,
/// a non-idempotent `w ∈ (a, b)` on `(p, a)`, and `a` from `a` on, where
/// `(a, b)` is a summand with `a > 0`.
pub fn violate_f2(rng: &mut Rng8, t: &OrdinalSumTNorm) -> Option<PwFn> {
    let choices: Vec<&Summand> = t.summands().iter().filter(|s| s.lo.is_positive()).collect();
    let s = *choices.choose(rng)?;
    let (a, b) = (&s.lo, &s.hi);
    let p = if rng.gen_bool(0.3) { Rat::zero() } else { strictly_between(rng, &Rat::zero(), a) };
    let w = strictly_between(rng, a, b);
    let one = Rat::one();
    let mut pts =
        vec![Breakpoint::new(Rat::zero(), one.clone(), one.clone(), if p.is_zero() { w.clone() } else { one.clone() })];
    if !p.is_zero() {
        pts.push(Breakpoint::new(p, one.clone(), one.clone(), w.clone()));
    }
    pts.push(Breakpoint::new(a.clone(), w.clone(), a.clone(), a.clone()));
    if !a.is_one() {
        pts.push(Breakpoint::cont(one, a.clone()));
    }
    Some(PwFn::from_points(pts).expect("valid step function"))
}

/// A lower set failing only the frame-principal condition on a summand
/// `(a, b)`: 1 on `[0, a]`, then a non-principal shape inside the frame
/// (a shallow line from `b` for Łukasiewicz, a constant below `b` for
/// product), then constant.
pub fn violate_f3(rng: &mut Rng8, t: &OrdinalSumTNorm) -> Option<PwFn> {
    let s = t.summands().choose(rng)?;
    let (a, b) = (&s.lo, &s.hi);
    let one = Rat::one();
    let pts = match s.kind {
        SummandKind::Lukasiewicz => {
            let slope = rat(rng.gen_range(1..8), 8);
            let m = b - &slope * s.width();
            let mut pts = vec![];
            if a.is_zero() {
                pts.push(Breakpoint::new(Rat::zero(), one.clone(), one.clone(), b.clone()));
            } else {
                pts.push(Breakpoint::cont(Rat::zero(), one.clone()));
                pts.push(Breakpoint::new(a.clone(), one.clone(), one.clone(), b.clone()));
            }
            pts.push(Breakpoint::cont(b.clone(), m.clone()));
            if !b.is_one() {
                pts.push(Breakpoint::cont(one, m));
            }
            pts
        }
        SummandKind::Product => {
            let w = strictly_between(rng, a, b);
            let mut pts = vec![];
            if a.is_zero() {
                pts.push(Breakpoint::new(Rat::zero(), one.clone(), one.clone(), w.clone()));
            } else {
                pts.push(Breakpoint::cont(Rat::zero(), one.clone()));
                pts.push(Breakpoint::new(a.clone(), one.clone(), one.clone(), w.clone()));
            }
            pts.push(Breakpoint::cont(one, w));
            pts
        }
    };
    Some(PwFn::from_points(pts).expect("valid frame shape"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{check_flat, flat_conditions};
    use crate::order::{check_lower_set, check_upper_set};
    use crate::report::Rule;
    use rand::SeedableRng;

    #[test]
    fn repaired_uppers_pass_the_checker() {
        let mut rng = Rng8::seed_from_u64(7);
        for _ in 0..300 {
            let t = random_tnorm(&mut rng);
            let psi = repaired_upper(&mut rng, &t);
            let r = check_upper_set(&t, &psi).unwrap();
            assert!(r.holds(), "{t}\n{psi:?}\n{r}");
        }
    }

    #[test]
    fn pasted_lowers_are_lower_sets() {
        let mut rng = Rng8::seed_from_u64(8);
        for _ in 0..300 {
            let t = random_tnorm(&mut rng);
            let phi = pasted_lower(&mut rng, &t);
            assert!(check_lower_set(&t, &phi).unwrap().holds(), "{t}\n{phi:?}");
        }
    }

    #[test]
    fn flat_constructions_are_flat() {
        let mut rng = Rng8::seed_from_u64(9);
        for _ in 0..300 {
            let t = random_tnorm(&mut rng);
            let (phi, profile) = flat_ideal(&mut rng, &t);
            let r = check_flat(&t, &phi).unwrap();
            assert!(r.holds(), "{t} {profile:?}\n{phi:?}\n{r}");
        }
    }

    #[test]
    fn single_condition_violators() {
        let mut rng = Rng8::seed_from_u64(10);
        for _ in 0..300 {
            let t = random_tnorm(&mut rng);
            let cases = [
                (Some(violate_f1(&mut rng, &t)), Rule::F1),
                (violate_f2(&mut rng, &t), Rule::F2),
                (violate_f3(&mut rng, &t), Rule::F3),
            ];
            for (phi, rule) in cases {
                let Some(phi) = phi else { continue };
                assert!(check_lower_set(&t, &phi).unwrap().holds(), "{t} {rule}\n{phi:?}");
                assert_eq!(flat_conditions(&t, &phi).unwrap().failing(), vec![rule], "{t}\n{phi:?}");
            }
        }
    }

    #[test]
    fn determinism() {
        let draw = |seed| {
            let mut rng = Rng8::seed_from_u64(seed);
            let t = random_tnorm(&mut rng);
            (t.clone(), random_lower(&mut rng, &t).0, random_upper(&mut rng, &t).0)
        };
        assert_eq!(draw(3), draw(3));
    }
}
