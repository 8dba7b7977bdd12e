use std::fmt;

use crate::pwfn::{PwFn, Sup};
use crate::rat::Rat;

/// The condition a report refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    L1,
    L2,
    L3,
    L4,
    U1,
    U2,
    U3,
    F1,
    F2,
    F3,
    /// The raw definitional inequality.
    Def,
    /// Monotonicity in a requested direction.
    Mono,
    Inhabited,
    Adjunction,
    Sandwich,
    Distributive,
    Equivalence,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::L1 => "L1",
            Rule::L2 => "L2",
            Rule::L3 => "L3",
            Rule::L4 => "L4",
            Rule::U1 => "U1",
            Rule::U2 => "U2",
            Rule::U3 => "U3",
            Rule::F1 => "F1",
            Rule::F2 => "F2",
            Rule::F3 => "F3",
            Rule::Def => "DEF",
            Rule::Mono => "MONO",
            Rule::Inhabited => "INHABITED",
            Rule::Adjunction => "ADJUNCTION",
            Rule::Sandwich => "SANDWICH",
            Rule::Distributive => "DISTRIBUTIVE",
            Rule::Equivalence => "EQUIVALENCE",
        };
        f.write_str(s)
    }
}

/// Evidence attached to a violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Two points and the function values there. For lower/upper set checks the
    /// definitional inequality fails at `(x, y)`; for monotonicity `x < y`.
    Pair {
        x: Rat,
        y: Rat,
        fx: Rat,
        fy: Rat,
    },
    /// A single point and the function value there.
    Point {
        c: Rat,
        value: Rat,
    },
    /// Two upper sets with `lhs = φ⊗(ψ₁∧ψ₂)` strictly below `min(t1, t2)`.
    Flatness {
        c: Rat,
        psi1: PwFn,
        psi2: PwFn,
        lhs: Sup,
        t1: Sup,
        t2: Sup,
    },
    /// A grid triple (adjunction / sandwich suites).
    Triple {
        x: Rat,
        y: Rat,
        z: Rat,
    },
    Sup(Sup),
    Text(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Pair { x, y, fx, fy } => write!(f, "pair x={x} y={y} f(x)={fx} f(y)={fy}"),
            Witness::Point { c, value } => write!(f, "point c={c} f(c)={value}"),
            Witness::Flatness { c, lhs, t1, t2, .. } => write!(
                f,
                "upper pair at c={c}: tensor(meet)={} tensor1={} tensor2={} min={}",
                lhs.value,
                t1.value,
                t2.value,
                t1.value.min_of(&t2.value)
            ),
            Witness::Triple { x, y, z } => write!(f, "triple x={x} y={y} z={z}"),
            Witness::Sup(s) => write!(f, "sup={} attained={}", s.value, s.attained),
            Witness::Text(t) => f.write_str(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    /// The critical point the violation was detected at, when there is one.
    pub at: Option<Rat>,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckReport {
    Holds,
    Violated(Box<Violation>),
}

impl CheckReport {
    pub fn violated(rule: Rule, at: Option<Rat>, witness: Witness) -> CheckReport {
        CheckReport::Violated(Box::new(Violation { rule, at, witness }))
    }

    pub fn holds(&self) -> bool {
        matches!(self, CheckReport::Holds)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            CheckReport::Holds => None,
            CheckReport::Violated(v) => Some(v),
        }
    }

    pub fn rule(&self) -> Option<Rule> {
        self.violation().map(|v| v.rule)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckReport::Holds => f.write_str("HOLDS"),
            CheckReport::Violated(v) => {
                write!(f, "VIOLATED {}", v.rule)?;
                if let Some(c) = &v.at {
                    write!(f, " at c={c}")?;
                }
                write!(f, " {}", v.witness)
            }
        }
    }
}
