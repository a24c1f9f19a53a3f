//! Finite unions of rational intervals inside `[0, ∞)`, combined by a sweep over endpoints.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{self, int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: Rat,
    pub lo_open: bool,
    /// `None` is `+∞` (always open).
    pub hi: Option<Rat>,
    pub hi_open: bool,
}

impl Interval {
    pub fn new(lo: Rat, hi: Option<Rat>, lo_open: bool, hi_open: bool) -> Result<Interval> {
        if !rat::is_nonneg(&lo) {
            return Err(Error::NegativePoint(rat::fmt_rat(&lo)));
        }
        let iv = Interval {
            lo,
            lo_open,
            hi,
            hi_open: hi_open || hi.is_none(),
        };
        if let Some(h) = hi {
            if h < lo || (h == lo && (lo_open || hi_open)) {
                return Err(Error::InvalidSet(format!("empty interval {iv}")));
            }
        }
        Ok(iv)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above = if self.lo_open {
            *x > self.lo
        } else {
            *x >= self.lo
        };
        let below = match self.hi {
            None => true,
            Some(h) => {
                if self.hi_open {
                    *x < h
                } else {
                    *x <= h
                }
            }
        };
        above && below
    }

    pub fn is_point(&self) -> bool {
        self.hi == Some(self.lo)
    }

    pub fn is_unbounded(&self) -> bool {
        self.hi.is_none()
    }

    /// A point strictly inside (or the point itself when degenerate).
    pub fn sample(&self) -> Rat {
        match self.hi {
            Some(h) => (self.lo + h) / int(2),
            None => self.lo + int(1),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        match self.hi {
            Some(h) => {
                let r = if self.hi_open { ')' } else { ']' };
                write!(f, "{l}{}, {}{r}", self.lo, h)
            }
            None => write!(f, "{l}{}, ∞)", self.lo),
        }
    }
}

type WireInterval = (String, String, bool, bool);

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let hi = self
            .hi
            .as_ref()
            .map_or_else(|| "inf".to_string(), rat::fmt_rat);
        (rat::fmt_rat(&self.lo), hi, self.lo_open, self.hi_open).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (lo, hi, lo_open, hi_open) = WireInterval::deserialize(d)?;
        let lo = rat::parse_rat(&lo).map_err(serde::de::Error::custom)?;
        let hi = if hi == "inf" {
            None
        } else {
            Some(rat::parse_rat(&hi).map_err(serde::de::Error::custom)?)
        };
        Interval::new(lo, hi, lo_open, hi_open).map_err(serde::de::Error::custom)
    }
}

/// Canonical finite union of intervals: sorted, disjoint, and never two
/// components whose union is itself an interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

enum Piece {
    Point(Rat),
    Gap(Rat, Rat),
    Ray(Rat),
}

impl Piece {
    fn sample(&self) -> Rat {
        match self {
            Piece::Point(p) => *p,
            Piece::Gap(a, b) => (*a + *b) / int(2),
            Piece::Ray(a) => *a + int(1),
        }
    }
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet::default()
    }

    /// `[0, ∞)`.
    pub fn all() -> IntervalSet {
        IntervalSet {
            parts: vec![Interval {
                lo: rat::zero(),
                lo_open: false,
                hi: None,
                hi_open: true,
            }],
        }
    }

    pub fn single(iv: Interval) -> IntervalSet {
        IntervalSet::from_intervals(vec![iv])
    }

    pub fn point(x: Rat) -> Result<IntervalSet> {
        Ok(IntervalSet::single(Interval::new(
            x,
            Some(x),
            false,
            false,
        )?))
    }

    /// Union of arbitrary (possibly overlapping) intervals.
    pub fn from_intervals(ivs: Vec<Interval>) -> IntervalSet {
        let raw = IntervalSet { parts: ivs };
        IntervalSet::sweep(&raw, &IntervalSet::empty(), |a, _| a)
    }

    pub fn components(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.parts.iter().any(|iv| iv.contains(x))
    }

    pub fn has_unbounded(&self) -> bool {
        self.parts.last().is_some_and(Interval::is_unbounded)
    }

    /// Left endpoint of the unbounded component, if any.
    pub fn unbounded_start(&self) -> Option<Rat> {
        self.parts
            .last()
            .filter(|iv| iv.is_unbounded())
            .map(|iv| iv.lo)
    }

    /// Supremum of the set when it is bounded.
    pub fn bounded_sup(&self) -> Option<Rat> {
        self.parts.last().and_then(|iv| iv.hi)
    }

    /// All finite endpoints.
    pub fn endpoints(&self) -> BTreeSet<Rat> {
        let mut out = BTreeSet::new();
        for iv in &self.parts {
            out.insert(iv.lo);
            if let Some(h) = iv.hi {
                out.insert(h);
            }
        }
        out
    }

    fn sweep(a: &IntervalSet, b: &IntervalSet, f: impl Fn(bool, bool) -> bool) -> IntervalSet {
        let mut cuts = a.endpoints();
        cuts.extend(b.endpoints());
        cuts.insert(rat::zero());
        let cuts: Vec<Rat> = cuts.into_iter().collect();
        let mut pieces = Vec::with_capacity(2 * cuts.len());
        for (i, c) in cuts.iter().enumerate() {
            pieces.push(Piece::Point(*c));
            match cuts.get(i + 1) {
                Some(n) => pieces.push(Piece::Gap(*c, *n)),
                None => pieces.push(Piece::Ray(*c)),
            }
        }

        let mut parts = Vec::new();
        let mut open: Option<(Rat, bool)> = None;
        let mut last_end: Option<(Option<Rat>, bool)> = None;
        for p in &pieces {
            let s = p.sample();
            let member = f(a.contains(&s), b.contains(&s));
            if member {
                if open.is_none() {
                    open = Some(match p {
                        Piece::Point(x) => (*x, false),
                        Piece::Gap(x, _) | Piece::Ray(x) => (*x, true),
                    });
                }
                last_end = Some(match p {
                    Piece::Point(x) => (Some(*x), false),
                    Piece::Gap(_, y) => (Some(*y), true),
                    Piece::Ray(_) => (None, true),
                });
            } else if let (Some((lo, lo_open)), Some((hi, hi_open))) =
                (open.take(), last_end.take())
            {
                parts.push(Interval {
                    lo,
                    lo_open,
                    hi,
                    hi_open,
                });
            }
        }
        if let (Some((lo, lo_open)), Some((hi, hi_open))) = (open, last_end) {
            parts.push(Interval {
                lo,
                lo_open,
                hi,
                hi_open,
            });
        }
        IntervalSet { parts }
    }

    pub fn combine(&self, other: &IntervalSet, f: impl Fn(bool, bool) -> bool) -> IntervalSet {
        IntervalSet::sweep(self, other, f)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn inter(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn diff(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> IntervalSet {
        self.combine(self, |a, _| !a)
    }

    /// `{x + c : x ∈ S} ∩ [0, ∞)`.
    pub fn translate(&self, c: &Rat) -> IntervalSet {
        let zero = rat::zero();
        let shifted = self
            .parts
            .iter()
            .filter_map(|iv| {
                let hi = iv.hi.map(|h| h + *c);
                if let Some(h) = hi {
                    if h < zero || (h == zero && iv.hi_open) {
                        return None;
                    }
                }
                let lo = iv.lo + *c;
                let (lo, lo_open) = if lo < zero {
                    (zero, false)
                } else {
                    (lo, iv.lo_open)
                };
                Some(Interval {
                    lo,
                    lo_open,
                    hi,
                    hi_open: iv.hi_open,
                })
            })
            .collect();
        IntervalSet::from_intervals(shifted)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(IntervalSet::from_intervals(Vec::<Interval>::deserialize(
            d,
        )?))
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "{}", s.join(" ∪ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn iv(lo: Rat, hi: Option<Rat>, lo_open: bool, hi_open: bool) -> Interval {
        Interval::new(lo, hi, lo_open, hi_open).unwrap()
    }

    #[test]
    fn touching_components_merge() {
        let s = IntervalSet::from_intervals(vec![
            iv(int(0), Some(int(1)), false, true),
            iv(int(1), Some(int(2)), false, false),
        ]);
        assert_eq!(s.components(), &[iv(int(0), Some(int(2)), false, false)]);
        let gap = IntervalSet::from_intervals(vec![
            iv(int(0), Some(int(1)), true, true),
            iv(int(1), Some(int(2)), true, true),
        ]);
        assert_eq!(gap.components().len(), 2);
        assert!(!gap.contains(&int(1)));
    }

    #[test]
    fn complement_of_open_unit_interval() {
        let a = IntervalSet::single(iv(int(0), Some(int(1)), true, true));
        let c = a.complement();
        assert!(c.contains(&int(0)) && c.contains(&int(1)) && c.contains(&int(7)));
        assert!(!c.contains(&rat(1, 2)));
        assert_eq!(c.complement(), a);
    }

    #[test]
    fn translation_clips_at_zero() {
        let a = IntervalSet::single(iv(int(1), Some(int(3)), true, false));
        let t = a.translate(&int(-2));
        assert_eq!(t.components(), &[iv(int(0), Some(int(1)), false, false)]);
        assert!(a.translate(&int(-5)).is_empty());
    }

    #[test]
    fn rejects_empty_and_negative() {
        assert!(Interval::new(int(1), Some(int(1)), true, false).is_err());
        assert!(Interval::new(int(-1), Some(int(1)), false, false).is_err());
        assert!(Interval::new(int(2), Some(int(1)), false, false).is_err());
    }
}
