//! Brute-force verifiers that check the closed forms against the raw
//! definitions on finite grids, plus seeded randomized harnesses.
//!
//! A grid falsifier that finds nothing proves nothing beyond its budget; the
//! exact checkers in [`crate::order`] and [`crate::ideal`] are the decision
//! procedures.

pub mod gen;
mod harness;

pub use harness::{
    distributivity_suite, equivalence_harness, falsify_flat, DistributivitySummary, Family, HarnessConfig,
    HarnessSummary, TrialConfig, UpperSource,
};

use crate::order::{lower_violation, upper_violation};
use crate::pwfn::PwFn;
use crate::rat::{rat, Rat};
use crate::report::{CheckReport, Rule, Witness};
use crate::tnorm::{OrdinalSumTNorm, Residuated};

/// The grid `{k/n}` plus extra points, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub resolution: u32,
    pub extra_points: Vec<Rat>,
}

impl GridSpec {
    pub fn new(resolution: u32) -> GridSpec {
        GridSpec { resolution: resolution.max(1), extra_points: Vec::new() }
    }

    /// Adds the summand endpoints of `t`.
    pub fn with_tnorm(mut self, t: &OrdinalSumTNorm) -> GridSpec {
        self.extra_points.extend(t.endpoints());
        self
    }

    /// Adds every breakpoint of `f` and, for one-sided behaviour, points a
    /// tiny distance to either side.
    pub fn with_fn(mut self, f: &PwFn) -> GridSpec {
        let eps = rat(1, 1 << 20) / Rat::from_int(i64::from(self.resolution));
        for x in f.xs() {
            self.extra_points.push(x.clone());
            self.extra_points.push(x - &eps);
            self.extra_points.push(x + &eps);
        }
        self
    }

    pub fn points(&self) -> Vec<Rat> {
        let n = i64::from(self.resolution);
        let mut pts: Vec<Rat> = (0..=n).map(|k| rat(k, n)).collect();
        pts.extend(self.extra_points.iter().filter(|p| p.in_unit()).cloned());
        pts.sort();
        pts.dedup();
        pts
    }
}

/// A t-norm whose residuum returns `y` below the diagonal, ignoring the
/// scaled formulas. Used to show the suites catch a wrong implication.
#[derive(Clone, Debug)]
pub struct BrokenResiduum(pub OrdinalSumTNorm);

impl Residuated for BrokenResiduum {
    fn conj(&self, x: &Rat, y: &Rat) -> Rat {
        self.0.conj(x, y)
    }
    fn residuum(&self, x: &Rat, y: &Rat) -> Rat {
        if x <= y {
            Rat::one()
        } else {
            y.clone()
        }
    }
    fn is_idempotent(&self, c: &Rat) -> bool {
        self.0.is_idempotent(c)
    }
}

/// `conj(x, y) <= z ⟺ y <= residuum(x, z)` on the grid cubed, and the grid
/// maximum of `{y : conj(x, y) <= z}` never exceeds the residuum, matching
/// it whenever the residuum is a grid point.
pub fn verify_adjunction<R: Residuated + ?Sized>(t: &R, grid: &GridSpec) -> CheckReport {
    let pts = grid.points();
    let n = pts.len();
    let conj: Vec<Vec<Rat>> = pts.iter().map(|x| pts.iter().map(|y| t.conj(x, y)).collect()).collect();
    let res: Vec<Vec<Rat>> = pts.iter().map(|x| pts.iter().map(|z| t.residuum(x, z)).collect()).collect();
    let triple =
        |i: usize, j: usize, k: usize| Witness::Triple { x: pts[i].clone(), y: pts[j].clone(), z: pts[k].clone() };
    for i in 0..n {
        for k in 0..n {
            let r = &res[i][k];
            let mut grid_max: Option<usize> = None;
            for j in 0..n {
                let below = conj[i][j] <= pts[k];
                if below != (pts[j] <= *r) {
                    return CheckReport::violated(Rule::Adjunction, None, triple(i, j, k));
                }
                if below {
                    grid_max = Some(j);
                }
            }
            let gm = grid_max.map(|j| &pts[j]);
            let on_grid = pts.binary_search(r).is_ok();
            let ok = match gm {
                Some(g) => g <= r && (!on_grid || g == r),
                None => !on_grid,
            };
            if !ok {
                let j = grid_max.unwrap_or(0);
                return CheckReport::violated(Rule::Adjunction, None, triple(i, j, k));
            }
        }
    }
    CheckReport::Holds
}

/// For idempotent `c` and grid points `x <= c <= y`: `conj(x, y) = min(x, y)`.
pub fn verify_sandwich<R: Residuated + ?Sized>(t: &R, grid: &GridSpec) -> CheckReport {
    let pts = grid.points();
    let idem: Vec<&Rat> = pts.iter().filter(|c| t.is_idempotent(c)).collect();
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i..] {
            let v = t.conj(x, y);
            if v == *x {
                continue;
            }
            // Only a violation if some idempotent lies between x and y.
            if let Some(c) = idem.iter().find(|c| x <= **c && **c <= y) {
                return CheckReport::violated(
                    Rule::Sandwich,
                    None,
                    Witness::Triple { x: x.clone(), y: (*c).clone(), z: y.clone() },
                );
            }
        }
    }
    CheckReport::Holds
}

/// Searches the grid for `x, y` with `φ(x) & d_L(y, x) > φ(y)`.
pub fn falsify_lower_set<R: Residuated + ?Sized>(t: &R, phi: &PwFn, grid: &GridSpec) -> CheckReport {
    let pts = grid.points();
    let vals: Vec<Rat> = pts.iter().map(|p| phi.value(p)).collect();
    for (i, x) in pts.iter().enumerate() {
        for (j, y) in pts.iter().enumerate() {
            // The conjunction never exceeds φ(x).
            if vals[i] <= vals[j] {
                continue;
            }
            let hit = if y <= x { true } else { t.conj(&vals[i], &t.residuum(y, x)) > vals[j] };
            if hit {
                debug_assert!(lower_violation(t, phi, x, y));
                let witness = Witness::Pair { x: x.clone(), y: y.clone(), fx: vals[i].clone(), fy: vals[j].clone() };
                return CheckReport::violated(Rule::Def, None, witness);
            }
        }
    }
    CheckReport::Holds
}

/// Searches the grid for `x, y` with `d_L(x, y) & ψ(x) > ψ(y)`.
pub fn falsify_upper_set<R: Residuated + ?Sized>(t: &R, psi: &PwFn, grid: &GridSpec) -> CheckReport {
    let pts = grid.points();
    let vals: Vec<Rat> = pts.iter().map(|p| psi.value(p)).collect();
    for (i, x) in pts.iter().enumerate() {
        for (j, y) in pts.iter().enumerate() {
            if vals[i] <= vals[j] {
                continue;
            }
            let hit = if x <= y { true } else { t.conj(&t.residuum(x, y), &vals[i]) > vals[j] };
            if hit {
                debug_assert!(upper_violation(t, psi, x, y));
                let witness = Witness::Pair { x: x.clone(), y: y.clone(), fx: vals[i].clone(), fy: vals[j].clone() };
                return CheckReport::violated(Rule::Def, None, witness);
            }
        }
    }
    CheckReport::Holds
}
