//! Continuous t-norms as finite ordinal sums of rescaled Łukasiewicz and
//! product summands, with min everywhere else.

use std::fmt;

use crate::error::{interval, Error, Result};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SummandKind {
    Lukasiewicz,
    Product,
}

impl SummandKind {
    pub fn name(self) -> &'static str {
        match self {
            SummandKind::Lukasiewicz => "lukasiewicz",
            SummandKind::Product => "product",
        }
    }

    pub fn parse(s: &str) -> Option<SummandKind> {
        match s {
            "lukasiewicz" | "luk" => Some(SummandKind::Lukasiewicz),
            "product" | "prod" => Some(SummandKind::Product),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Summand {
    pub lo: Rat,
    pub hi: Rat,
    pub kind: SummandKind,
}

impl Summand {
    pub fn new(lo: Rat, hi: Rat, kind: SummandKind) -> Summand {
        Summand { lo, hi, kind }
    }

    /// `lo < c < hi`.
    pub fn contains_open(&self, c: &Rat) -> bool {
        &self.lo < c && c < &self.hi
    }

    /// `lo <= c <= hi`.
    pub fn contains_closed(&self, c: &Rat) -> bool {
        &self.lo <= c && c <= &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// The kind's conjunction on `[lo, hi]`; both arguments must lie there.
    pub fn conj(&self, x: &Rat, y: &Rat) -> Rat {
        match self.kind {
            SummandKind::Lukasiewicz => self.lo.max_of(&(x + y - &self.hi)),
            SummandKind::Product => &self.lo + (x - &self.lo) * (y - &self.lo) / self.width(),
        }
    }

    /// The kind's residuum for `lo <= y < x <= hi`.
    fn residuum_below(&self, x: &Rat, y: &Rat) -> Rat {
        match self.kind {
            SummandKind::Lukasiewicz => &self.hi - x + y,
            SummandKind::Product => &self.lo + self.width() * (y - &self.lo) / (x - &self.lo),
        }
    }
}

/// The idempotent hull `(c⁻, c⁺)` of a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    pub lo: Rat,
    pub hi: Rat,
    /// Present iff `lo < hi`.
    pub summand: Option<Summand>,
}

impl Frame {
    pub fn is_degenerate(&self) -> bool {
        self.summand.is_none()
    }
}

/// A continuous t-norm given by its ordinal-sum decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OrdinalSumTNorm {
    summands: Vec<Summand>,
}

/// The operations the oracles need; implemented by [`OrdinalSumTNorm`] and
/// by deliberately broken variants in mutation tests.
pub trait Residuated {
    fn conj(&self, x: &Rat, y: &Rat) -> Rat;
    fn residuum(&self, x: &Rat, y: &Rat) -> Rat;
    fn is_idempotent(&self, c: &Rat) -> bool;
}

impl OrdinalSumTNorm {
    /// Validates and sorts. An empty list is the t-norm min.
    pub fn new(mut summands: Vec<Summand>) -> Result<OrdinalSumTNorm> {
        for s in &summands {
            if !s.lo.in_unit() || !s.hi.in_unit() {
                return Err(Error::BadSummand {
                    summand: format!("({}, {})", s.lo, s.hi),
                    reason: "endpoint outside [0,1]",
                });
            }
            if s.lo >= s.hi {
                return Err(Error::BadSummand {
                    summand: format!("({}, {})", s.lo, s.hi),
                    reason: "lo must be below hi",
                });
            }
        }
        summands.sort_by(|a, b| a.lo.cmp(&b.lo));
        for w in summands.windows(2) {
            if w[1].lo < w[0].hi {
                return Err(Error::BadSummand {
                    summand: format!("({}, {})", w[1].lo, w[1].hi),
                    reason: "overlaps another summand",
                });
            }
        }
        Ok(OrdinalSumTNorm { summands })
    }

    pub fn min() -> OrdinalSumTNorm {
        OrdinalSumTNorm::default()
    }

    pub fn lukasiewicz() -> OrdinalSumTNorm {
        OrdinalSumTNorm { summands: vec![Summand::new(Rat::zero(), Rat::one(), SummandKind::Lukasiewicz)] }
    }

    pub fn product() -> OrdinalSumTNorm {
        OrdinalSumTNorm { summands: vec![Summand::new(Rat::zero(), Rat::one(), SummandKind::Product)] }
    }

    /// Łukasiewicz on `(1/4, 1/2)`, product on `(1/2, 1)`.
    pub fn t4() -> OrdinalSumTNorm {
        OrdinalSumTNorm {
            summands: vec![
                Summand::new(Rat::new(1, 4), Rat::new(1, 2), SummandKind::Lukasiewicz),
                Summand::new(Rat::new(1, 2), Rat::one(), SummandKind::Product),
            ],
        }
    }

    /// Built-in names: `godel`/`min`, `lukasiewicz`, `product`, `t4`.
    pub fn builtin(name: &str) -> Option<OrdinalSumTNorm> {
        match name.to_ascii_lowercase().as_str() {
            "godel" | "min" | "goedel" => Some(OrdinalSumTNorm::min()),
            "lukasiewicz" | "luk" => Some(OrdinalSumTNorm::lukasiewicz()),
            "product" | "prod" => Some(OrdinalSumTNorm::product()),
            "t4" => Some(OrdinalSumTNorm::t4()),
            _ => None,
        }
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Single summand spanning `(0, 1)`.
    pub fn is_basic(&self) -> bool {
        self.summands.len() == 1 && self.summands[0].lo.is_zero() && self.summands[0].hi.is_one()
    }

    /// The summand whose open interval contains `c`.
    pub fn summand_of(&self, c: &Rat) -> Option<&Summand> {
        let i = self.summands.partition_point(|s| &s.hi <= c);
        self.summands.get(i).filter(|s| s.contains_open(c))
    }

    /// All summand endpoints, sorted and deduplicated.
    pub fn endpoints(&self) -> Vec<Rat> {
        let mut v: Vec<Rat> = self.summands.iter().flat_map(|s| [s.lo.clone(), s.hi.clone()]).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn conj(&self, x: &Rat, y: &Rat) -> Rat {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        match self.summand_of_pair(lo, hi) {
            Some(s) => s.conj(x, y),
            None => lo.clone(),
        }
    }

    fn summand_of_pair(&self, lo: &Rat, hi: &Rat) -> Option<&Summand> {
        self.summands.iter().find(|s| s.lo <= *lo && *hi <= s.hi)
    }

    /// `x → y`, the largest `z` with `conj(x, z) <= y`.
    pub fn residuum(&self, x: &Rat, y: &Rat) -> Rat {
        if x <= y {
            return Rat::one();
        }
        match self.summands.iter().find(|s| s.lo <= *y && *y < s.hi && *x <= s.hi) {
            Some(s) => s.residuum_below(x, y),
            None => y.clone(),
        }
    }

    pub fn is_idempotent(&self, c: &Rat) -> bool {
        self.summand_of(c).is_none()
    }

    pub fn idem_hull(&self, c: &Rat) -> Frame {
        match self.summand_of(c) {
            Some(s) => Frame { lo: s.lo.clone(), hi: s.hi.clone(), summand: Some(s.clone()) },
            None => Frame { lo: c.clone(), hi: c.clone(), summand: None },
        }
    }

    /// `c⁺`.
    pub fn hull_hi(&self, c: &Rat) -> Rat {
        self.summand_of(c).map_or_else(|| c.clone(), |s| s.hi.clone())
    }

    /// `c⁻`.
    pub fn hull_lo(&self, c: &Rat) -> Rat {
        self.summand_of(c).map_or_else(|| c.clone(), |s| s.lo.clone())
    }

    /// The implication of the subquantale on a nondegenerate frame: `min(c⁺, x → y)`.
    pub fn frame_residuum(&self, frame: &Frame, x: &Rat, y: &Rat) -> Result<Rat> {
        if frame.is_degenerate() {
            return Err(Error::DegenerateInterval(frame.lo.clone(), frame.hi.clone()));
        }
        for v in [x, y] {
            if v < &frame.lo || v > &frame.hi {
                return Err(Error::OutOfDomain { x: v.clone(), domain: interval(&frame.lo, &frame.hi) });
            }
        }
        Ok(frame.hi.min_of(&self.residuum(x, y)))
    }
}

impl Residuated for OrdinalSumTNorm {
    fn conj(&self, x: &Rat, y: &Rat) -> Rat {
        OrdinalSumTNorm::conj(self, x, y)
    }
    fn residuum(&self, x: &Rat, y: &Rat) -> Rat {
        OrdinalSumTNorm::residuum(self, x, y)
    }
    fn is_idempotent(&self, c: &Rat) -> bool {
        OrdinalSumTNorm::is_idempotent(self, c)
    }
}

impl fmt::Display for OrdinalSumTNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("min");
        }
        let parts: Vec<String> =
            self.summands.iter().map(|s| format!("({}, {}) {}", s.lo, s.hi, s.kind.name())).collect();
        f.write_str(&parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn grid(n: i64) -> Vec<Rat> {
        (0..=n).map(|k| rat(k, n)).collect()
    }

    /// Largest grid `z` with `conj(x, z) <= y`; independent of the closed-form residuum.
    fn brute_residuum(t: &OrdinalSumTNorm, x: &Rat, y: &Rat, g: &[Rat]) -> Rat {
        g.iter().filter(|z| t.conj(x, z) <= *y).max().cloned().unwrap()
    }

    #[test]
    fn construction() {
        assert!(OrdinalSumTNorm::new(vec![]).unwrap().summands().is_empty());
        let t = OrdinalSumTNorm::new(vec![
            Summand::new(rat(1, 2), Rat::one(), SummandKind::Product),
            Summand::new(rat(1, 4), rat(1, 2), SummandKind::Lukasiewicz),
        ])
        .unwrap();
        assert_eq!(t, OrdinalSumTNorm::t4());
        let bad = |lo, hi| OrdinalSumTNorm::new(vec![Summand::new(lo, hi, SummandKind::Product)]).is_err();
        assert!(bad(rat(1, 2), rat(1, 2)));
        assert!(bad(rat(-1, 2), rat(1, 2)));
        assert!(bad(rat(1, 2), rat(3, 2)));
        assert!(OrdinalSumTNorm::new(vec![
            Summand::new(Rat::zero(), rat(1, 2), SummandKind::Product),
            Summand::new(rat(1, 4), Rat::one(), SummandKind::Product),
        ])
        .is_err());
    }

    #[test]
    fn basic_closed_forms() {
        let l = OrdinalSumTNorm::lukasiewicz();
        assert_eq!(l.conj(&rat(7, 10), &rat(1, 2)), rat(1, 5));
        assert_eq!(l.residuum(&rat(7, 10), &rat(1, 2)), rat(4, 5));
        let p = OrdinalSumTNorm::product();
        assert_eq!(p.conj(&rat(1, 2), &rat(1, 2)), rat(1, 4));
        assert_eq!(p.residuum(&rat(1, 2), &rat(1, 4)), rat(1, 2));
        let g = OrdinalSumTNorm::min();
        assert_eq!(g.conj(&rat(7, 10), &rat(1, 2)), rat(1, 2));
        assert_eq!(g.residuum(&rat(7, 10), &rat(1, 2)), rat(1, 2));
    }

    #[test]
    fn two_summand_values_match_independent_oracles() {
        let t = OrdinalSumTNorm::t4();
        // Rescaled Łukasiewicz on [1/4, 1/2]: a + (b−a)·max(0, u + v − 1).
        let (a, b) = (rat(1, 4), rat(1, 2));
        let u = (rat(3, 10) - &a) / (&b - &a);
        let v = (rat(2, 5) - &a) / (&b - &a);
        let scaled = &a + (&b - &a) * Rat::zero().max_of(&(u + v - Rat::one()));
        assert_eq!(t.conj(&rat(3, 10), &rat(2, 5)), scaled);
        assert_eq!(scaled, rat(1, 4));
        assert_eq!(t.conj(&rat(3, 10), &rat(4, 5)), rat(3, 10));

        let g = grid(1000);
        let r = brute_residuum(&t, &rat(3, 4), &rat(3, 5), &g);
        assert_eq!(t.residuum(&rat(3, 4), &rat(3, 5)), r);
        assert_eq!(r, rat(7, 10));
        let r = brute_residuum(&t, &rat(3, 5), &rat(3, 10), &g);
        assert_eq!(t.residuum(&rat(3, 5), &rat(3, 10)), r);
        assert_eq!(r, rat(3, 10));
    }

    #[test]
    fn frame_residuum_values() {
        let t = OrdinalSumTNorm::t4();
        let f = t.idem_hull(&rat(3, 10));
        assert_eq!((f.lo.clone(), f.hi.clone()), (rat(1, 4), rat(1, 2)));
        assert_eq!(t.frame_residuum(&f, &rat(1, 3), &rat(1, 3)).unwrap(), rat(1, 2));
        let frame_grid: Vec<Rat> = (0..=1000).map(|k| rat(1, 4) + rat(k, 4000)).collect();
        let brute = frame_grid.iter().filter(|z| t.conj(&rat(2, 5), z) <= rat(3, 10)).max().unwrap().clone();
        assert_eq!(t.frame_residuum(&f, &rat(2, 5), &rat(3, 10)).unwrap(), brute);
        assert_eq!(brute, rat(2, 5));
        let upper = t.idem_hull(&rat(3, 4));
        let frame_grid: Vec<Rat> = (0..=1000).map(|k| rat(1, 2) + rat(k, 2000)).collect();
        let brute = frame_grid.iter().filter(|z| t.conj(&rat(3, 4), z) <= rat(3, 5)).max().unwrap().clone();
        assert_eq!(t.frame_residuum(&upper, &rat(3, 4), &rat(3, 5)).unwrap(), brute);
        assert_eq!(brute, rat(7, 10));
        assert!(t.frame_residuum(&f, &rat(3, 4), &rat(1, 3)).is_err());
        assert!(t.frame_residuum(&t.idem_hull(&rat(1, 8)), &rat(1, 8), &rat(1, 8)).is_err());
    }

    #[test]
    fn idempotents_and_hulls() {
        let t = OrdinalSumTNorm::t4();
        assert!(OrdinalSumTNorm::min().is_idempotent(&rat(3, 7)));
        assert!(!t.is_idempotent(&rat(3, 10)));
        assert!(t.is_idempotent(&rat(1, 2)));
        assert_eq!(t.idem_hull(&rat(1, 8)), Frame { lo: rat(1, 8), hi: rat(1, 8), summand: None });
        let p = OrdinalSumTNorm::product().idem_hull(&rat(1, 2));
        assert_eq!((p.lo, p.hi), (Rat::zero(), Rat::one()));
    }

    #[test]
    fn boundary_agrees_with_scaled_formula() {
        let t = OrdinalSumTNorm::t4();
        for s in t.summands() {
            for k in 0..=20 {
                let y = &s.lo + s.width() * rat(k, 20);
                assert_eq!(s.conj(&s.lo, &y), s.lo.min_of(&y));
                assert_eq!(s.conj(&s.hi, &y), s.hi.min_of(&y));
            }
        }
    }

    #[test]
    fn algebraic_laws_on_grid() {
        let g = grid(24);
        for t in
            [OrdinalSumTNorm::min(), OrdinalSumTNorm::lukasiewicz(), OrdinalSumTNorm::product(), OrdinalSumTNorm::t4()]
        {
            for x in &g {
                assert_eq!(t.conj(&Rat::one(), x), *x);
                assert_eq!(t.conj(&Rat::zero(), x), Rat::zero());
                assert_eq!(t.residuum(x, x), Rat::one());
                assert_eq!(t.residuum(&Rat::one(), x), *x);
                for y in &g {
                    assert_eq!(t.conj(x, y), t.conj(y, x));
                    for z in &g {
                        assert_eq!(t.conj(&t.conj(x, y), z), t.conj(x, &t.conj(y, z)));
                        assert_eq!(t.conj(x, y) <= *z, *y <= t.residuum(x, z));
                        if x <= y {
                            assert!(t.residuum(y, z) <= t.residuum(x, z));
                            assert!(t.residuum(z, x) <= t.residuum(z, y));
                            assert!(t.conj(x, z) <= t.conj(y, z));
                        }
                    }
                }
            }
        }
    }
}
