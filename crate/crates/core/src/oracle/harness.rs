use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use super::gen::{self, Rng8};
use super::{falsify_lower_set, falsify_upper_set, GridSpec};
use crate::error::{Error, Result};
use crate::ideal::{breaks_flatness, check_flat, flatness_values, is_inhabited, witness_upper_pair};
use crate::order::{
    check_lower_set, check_lower_set_with, check_upper_set, check_upper_set_with, lower_violation, principal_upper,
    upper_violation, CheckOptions,
};
use crate::pwfn::PwFn;
use crate::rat::Rat;
use crate::report::{CheckReport, Rule, Witness};
use crate::tnorm::OrdinalSumTNorm;

/// Where the upper sets of a flatness trial come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpperSource {
    Principal,
    Constant,
    Repaired,
    /// `ψ₁ ≡ φ(c)` and `ψ₂ = c → −` at a random `c`.
    WitnessPair,
    /// Each trial picks one of the above.
    Mixed,
}

#[derive(Clone, Debug)]
pub struct TrialConfig {
    pub trials: usize,
    pub seed: u64,
    pub source: UpperSource,
}

impl TrialConfig {
    pub fn new(trials: usize, seed: u64) -> TrialConfig {
        TrialConfig { trials, seed, source: UpperSource::Mixed }
    }
}

fn draw_upper(rng: &mut Rng8, t: &OrdinalSumTNorm, source: UpperSource) -> (PwFn, Rat) {
    let c = gen::unit(rng);
    let f = match source {
        UpperSource::Principal => principal_upper(t, &c).unwrap(),
        UpperSource::Constant => PwFn::constant(c.clone()),
        _ => gen::repaired_upper(rng, t),
    };
    (f, c)
}

/// Samples pairs of upper sets and compares `φ⊗(ψ₁∧ψ₂)` with
/// `(φ⊗ψ₁) ∧ (φ⊗ψ₂)`, exactly. Requires a lower set; a function whose
/// supremum stays below 1 is reported as not inhabited.
pub fn falsify_flat(t: &OrdinalSumTNorm, phi: &PwFn, cfg: &TrialConfig) -> Result<CheckReport> {
    let lower = check_lower_set(t, phi)?;
    if !lower.holds() {
        return Err(Error::Precondition(format!("not a lower set: {lower}")));
    }
    let (inhabited, _) = is_inhabited(phi);
    if !inhabited.holds() {
        return Ok(inhabited);
    }
    let mut rng = Rng8::seed_from_u64(cfg.seed);
    let sources = [UpperSource::Principal, UpperSource::Constant, UpperSource::Repaired, UpperSource::WitnessPair];
    for _ in 0..cfg.trials {
        let source = match cfg.source {
            UpperSource::Mixed => *sources.choose(&mut rng).unwrap(),
            s => s,
        };
        let (psi1, psi2, c) = if source == UpperSource::WitnessPair {
            let c = gen::unit(&mut rng);
            let (a, b) = witness_upper_pair(t, phi, &c)?;
            (a, b, c)
        } else {
            let inner = if cfg.source == UpperSource::Mixed { *sources[..3].choose(&mut rng).unwrap() } else { source };
            let (a, c) = draw_upper(&mut rng, t, source);
            let (b, _) = draw_upper(&mut rng, t, inner);
            (a, b, c)
        };
        let values = flatness_values(t, phi, &psi1, &psi2)?;
        if breaks_flatness(&values) {
            let (lhs, t1, t2) = values;
            return Ok(CheckReport::violated(
                Rule::Def,
                Some(c.clone()),
                Witness::Flatness { c, psi1, psi2, lhs, t1, t2 },
            ));
        }
    }
    Ok(CheckReport::Holds)
}

/// The t-norms a harness run draws from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Godel,
    Lukasiewicz,
    Product,
    T4,
    /// A fresh random ordinal sum for every candidate.
    Random,
    /// A named t-norm supplied by the caller.
    Fixed(String, OrdinalSumTNorm),
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Godel, Family::Lukasiewicz, Family::Product, Family::T4, Family::Random];

    pub fn name(&self) -> &str {
        match self {
            Family::Godel => "godel",
            Family::Lukasiewicz => "lukasiewicz",
            Family::Product => "product",
            Family::T4 => "t4",
            Family::Random => "random",
            Family::Fixed(name, _) => name,
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    fn draw(&self, rng: &mut Rng8) -> OrdinalSumTNorm {
        match self {
            Family::Godel => OrdinalSumTNorm::min(),
            Family::Lukasiewicz => OrdinalSumTNorm::lukasiewicz(),
            Family::Product => OrdinalSumTNorm::product(),
            Family::T4 => OrdinalSumTNorm::t4(),
            Family::Random => gen::random_tnorm(rng),
            Family::Fixed(_, t) => t.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub candidates: usize,
    pub seed: u64,
    pub grid: u32,
    /// Flatness trials per candidate that the checker declares flat.
    pub flat_trials: usize,
    pub lower: CheckOptions,
    pub upper: CheckOptions,
}

impl Default for HarnessConfig {
    fn default() -> HarnessConfig {
        HarnessConfig {
            candidates: 500,
            seed: 42,
            grid: 128,
            flat_trials: 10,
            lower: CheckOptions::default(),
            upper: CheckOptions::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HarnessSummary {
    pub family: String,
    pub candidates: usize,
    pub lower_holds: usize,
    pub lower_violated: usize,
    pub upper_holds: usize,
    pub upper_violated: usize,
    pub flat_holds: usize,
    pub flat_violated: usize,
    /// Checker violations the grid did not reproduce (resolution-limited, not a disagreement).
    pub grid_silent: usize,
    pub disagreements: usize,
    pub first_disagreement: Option<String>,
}

impl HarnessSummary {
    pub fn passed(&self) -> bool {
        self.disagreements == 0
    }

    fn disagree(&mut self, msg: String) {
        self.disagreements += 1;
        self.first_disagreement.get_or_insert(msg);
    }
}

impl fmt::Display for HarnessSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "family={} candidates={} lower={}/{} upper={}/{} flat={}/{} grid_silent={} disagreements={}",
            self.family,
            self.candidates,
            self.lower_holds,
            self.lower_violated,
            self.upper_holds,
            self.upper_violated,
            self.flat_holds,
            self.flat_violated,
            self.grid_silent,
            self.disagreements
        )?;
        if let Some(d) = &self.first_disagreement {
            write!(f, " first: {d}")?;
        }
        Ok(())
    }
}

fn pair_revalidates(report: &CheckReport, valid: impl Fn(&Rat, &Rat) -> bool) -> bool {
    match report.violation().map(|v| &v.witness) {
        Some(Witness::Pair { x, y, .. }) => valid(x, y),
        _ => false,
    }
}

/// Random candidates checked by the exact procedures and by the grid
/// falsifiers. A disagreement is a checker "holds" refuted by the grid, or a
/// checker witness that fails to re-validate. For the min t-norm flatness
/// is also compared with "lower set and φ(0) = 1".
pub fn equivalence_harness(family: &Family, cfg: &HarnessConfig) -> Result<HarnessSummary> {
    let mut rng = Rng8::seed_from_u64(cfg.seed);
    let mut sum =
        HarnessSummary { family: family.name().to_string(), candidates: cfg.candidates, ..Default::default() };
    for i in 0..cfg.candidates {
        let t = family.draw(&mut rng);
        let (phi, lp) = gen::random_lower(&mut rng, &t);
        let (psi, up) = gen::random_upper(&mut rng, &t);
        let flat_seed: u64 = rng.gen();

        let lower = check_lower_set_with(&t, &phi, &cfg.lower)?;
        let grid = GridSpec::new(cfg.grid).with_tnorm(&t).with_fn(&phi);
        let found = falsify_lower_set(&t, &phi, &grid);
        if lower.holds() {
            sum.lower_holds += 1;
            if !found.holds() {
                sum.disagree(format!("#{i} lower {lp:?} on {t}: checker holds, grid {found}"));
            }
        } else {
            sum.lower_violated += 1;
            if !pair_revalidates(&lower, |x, y| lower_violation(&t, &phi, x, y)) {
                sum.disagree(format!("#{i} lower {lp:?} on {t}: witness does not re-validate: {lower}"));
            }
            if found.holds() {
                sum.grid_silent += 1;
            }
        }

        let upper = check_upper_set_with(&t, &psi, &cfg.upper)?;
        let grid = GridSpec::new(cfg.grid).with_tnorm(&t).with_fn(&psi);
        let found = falsify_upper_set(&t, &psi, &grid);
        if upper.holds() {
            sum.upper_holds += 1;
            if !found.holds() {
                sum.disagree(format!("#{i} upper {up:?} on {t}: checker holds, grid {found}"));
            }
        } else {
            sum.upper_violated += 1;
            if !pair_revalidates(&upper, |x, y| upper_violation(&t, &psi, x, y)) {
                sum.disagree(format!("#{i} upper {up:?} on {t}: witness does not re-validate: {upper}"));
            }
            if found.holds() {
                sum.grid_silent += 1;
            }
        }

        if !lower.holds() || !check_lower_set(&t, &phi)?.holds() {
            continue;
        }
        let flat = check_flat(&t, &phi)?;
        if t.summands().is_empty() && flat.holds() != phi.value(&Rat::zero()).is_one() {
            sum.disagree(format!("#{i} min flatness on {lp:?}: checker {flat}"));
        }
        if flat.holds() {
            sum.flat_holds += 1;
            let found = falsify_flat(&t, &phi, &TrialConfig::new(cfg.flat_trials, flat_seed))?;
            if !found.holds() {
                sum.disagree(format!("#{i} flat {lp:?} on {t}: checker holds, trials {found}"));
            }
            continue;
        }
        sum.flat_violated += 1;
        let v = flat.violation().unwrap();
        let ok = match (&v.rule, &v.witness) {
            (Rule::F1, _) => !phi.value(&Rat::zero()).is_one(),
            (Rule::F2 | Rule::F3, Witness::Flatness { psi1, psi2, .. }) => {
                check_upper_set(&t, psi1)?.holds()
                    && check_upper_set(&t, psi2)?.holds()
                    && breaks_flatness(&flatness_values(&t, &phi, psi1, psi2)?)
            }
            _ => false,
        };
        if !ok {
            sum.disagree(format!("#{i} flat {lp:?} on {t}: witness does not re-validate: {flat}"));
        }
    }
    Ok(sum)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributivitySummary {
    pub triples: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

/// On random finite grids, for decreasing `φ` and increasing `ψ₁, ψ₂`:
/// `⋁(φ∧ψ₁∧ψ₂) = (⋁φ∧ψ₁) ∧ (⋁φ∧ψ₂)`.
pub fn distributivity_suite(triples: usize, seed: u64) -> DistributivitySummary {
    let mut rng = Rng8::seed_from_u64(seed);
    let mut out = DistributivitySummary { triples, failures: 0, first_failure: None };
    for i in 0..triples {
        let n = rng.gen_range(1..=12);
        let sorted = |rng: &mut Rng8, rev: bool| {
            let mut v: Vec<Rat> = (0..n).map(|_| gen::unit(rng)).collect();
            v.sort();
            if rev {
                v.reverse();
            }
            v
        };
        let phi = sorted(&mut rng, true);
        let p1 = sorted(&mut rng, false);
        let p2 = sorted(&mut rng, false);
        let sup = |f: &dyn Fn(usize) -> Rat| (0..n).map(f).max().unwrap();
        let lhs = sup(&|k| phi[k].min_of(&p1[k]).min_of(&p2[k]));
        let rhs = sup(&|k| phi[k].min_of(&p1[k])).min_of(&sup(&|k| phi[k].min_of(&p2[k])));
        if lhs != rhs {
            out.failures += 1;
            out.first_failure.get_or_insert(format!("#{i}: {lhs} vs {rhs}"));
        }
    }
    out
}
