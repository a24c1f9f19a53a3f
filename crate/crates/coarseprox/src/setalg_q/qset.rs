//! Subsets of ℚ≥0 of the form `(U ∖ P) ∪ Q`.
//!
//! Stored as `U ⊕ S` (symmetric difference) where `U` is a canonical union of
//! positive-length intervals and `S = P ∪ Q` is discrete. After normalization
//! `U` never has degenerate components or single-point gaps, its endpoint
//! flags record actual membership, and `S` avoids every endpoint of `U`.
//! That makes the representation unique, so `==` is set equality.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::discrete::{DiscreteSet, RatAP};
use super::interval::{Interval, IntervalSet};
use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::setalg_z::BoolOp;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QSet {
    intervals: IntervalSet,
    flips: DiscreteSet,
}

/// Wire form `{U, P, Q}` meaning `(U ∖ P) ∪ Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSetWire {
    #[serde(rename = "U")]
    pub intervals: IntervalSet,
    #[serde(rename = "P")]
    pub removed: DiscreteSet,
    #[serde(rename = "Q")]
    pub added: DiscreteSet,
}

/// Coarse features of a set; everything the half-line relations look at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Features {
    pub empty: bool,
    pub finite: bool,
    /// Some interval of positive length.
    pub interval: bool,
    /// Contains a ray `[t, ∞)` up to a discrete set.
    pub ray: bool,
    /// Infinitely many isolated points outside the interval part.
    pub discrete_tail: bool,
}

impl QSet {
    fn build(intervals: IntervalSet, flips: DiscreteSet) -> QSet {
        let raw_member = |x: &Rat| intervals.contains(x) ^ flips.contains(x);

        // Fatten: drop points and close single-point gaps.
        let mut fat: Vec<(Rat, Option<Rat>)> = Vec::new();
        for iv in intervals.components().iter().filter(|iv| !iv.is_point()) {
            if let Some(last) = fat.last_mut() {
                if last.1 == Some(iv.lo) {
                    last.1 = iv.hi;
                    continue;
                }
            }
            fat.push((iv.lo, iv.hi));
        }
        let fat_parts: Vec<Interval> = fat
            .iter()
            .map(|&(lo, hi)| Interval {
                lo,
                lo_open: !raw_member(&lo),
                hi,
                hi_open: hi.is_none_or(|h| !raw_member(&h)),
            })
            .collect();
        let fat_set = IntervalSet::from_intervals(fat_parts);

        let mut touched = intervals.endpoints();
        touched.extend(fat_set.endpoints());
        let moved: Vec<Rat> = touched
            .into_iter()
            .filter(|p| intervals.contains(p) != fat_set.contains(p))
            .collect();
        let flips = flips.xor(&DiscreteSet::points(&moved).expect("endpoints are nonnegative"));
        QSet {
            intervals: fat_set,
            flips,
        }
    }

    pub fn empty() -> QSet {
        QSet {
            intervals: IntervalSet::empty(),
            flips: DiscreteSet::empty(),
        }
    }

    /// `ℚ≥0`.
    pub fn all() -> QSet {
        QSet {
            intervals: IntervalSet::all(),
            flips: DiscreteSet::empty(),
        }
    }

    pub fn from_intervals(ivs: IntervalSet) -> QSet {
        QSet::build(ivs, DiscreteSet::empty())
    }

    pub fn interval(lo: Rat, hi: Option<Rat>, lo_open: bool, hi_open: bool) -> Result<QSet> {
        Ok(QSet::from_intervals(IntervalSet::single(Interval::new(
            lo, hi, lo_open, hi_open,
        )?)))
    }

    pub fn from_discrete(d: DiscreteSet) -> QSet {
        QSet {
            intervals: IntervalSet::empty(),
            flips: d,
        }
    }

    pub fn points(points: &[Rat]) -> Result<QSet> {
        Ok(QSet::from_discrete(DiscreteSet::points(points)?))
    }

    pub fn ap(ap: &RatAP) -> QSet {
        QSet::from_discrete(DiscreteSet::from_ap(ap))
    }

    pub fn naturals() -> QSet {
        QSet::from_discrete(DiscreteSet::naturals())
    }

    /// `(U ∖ P) ∪ Q` for arbitrary parts.
    pub fn from_parts(intervals: &IntervalSet, removed: &DiscreteSet, added: &DiscreteSet) -> QSet {
        let u = QSet::from_intervals(intervals.clone());
        u.diff(&QSet::from_discrete(removed.clone()))
            .union(&QSet::from_discrete(added.clone()))
    }

    pub fn to_wire(&self) -> QSetWire {
        QSetWire {
            intervals: self.intervals.clone(),
            removed: self.flips.restrict(&self.intervals),
            added: self.flips.restrict(&self.intervals.complement()),
        }
    }

    pub fn intervals(&self) -> &IntervalSet {
        &self.intervals
    }

    /// Discrete part outside the intervals.
    pub fn isolated(&self) -> DiscreteSet {
        self.flips.restrict(&self.intervals.complement())
    }

    /// Points excised from the intervals.
    pub fn excised(&self) -> DiscreteSet {
        self.flips.restrict(&self.intervals)
    }

    pub fn flips(&self) -> &DiscreteSet {
        &self.flips
    }

    pub fn contains(&self, x: &Rat) -> Result<bool> {
        if !rat::is_nonneg(x) {
            return Err(Error::NegativePoint(rat::fmt_rat(x)));
        }
        Ok(self.intervals.contains(x) ^ self.flips.contains(x))
    }

    /// Membership for points already known to be nonnegative.
    pub fn has(&self, x: &Rat) -> bool {
        rat::is_nonneg(x) && (self.intervals.contains(x) ^ self.flips.contains(x))
    }

    pub fn boolean(&self, op: BoolOp, other: &QSet) -> QSet {
        let f = |a: bool, b: bool| op.apply(a, b);
        let u1 = &self.intervals;
        let u2 = &other.intervals;
        let u = u1.combine(u2, f);
        let mut s = DiscreteSet::empty();
        for a in [false, true] {
            for b in [false, true] {
                let region = u1.combine(u2, |x, y| x == a && y == b);
                if region.is_empty() {
                    continue;
                }
                let base = f(a, b);
                let d = self
                    .flips
                    .combine(&other.flips, |s1, s2| f(a ^ s1, b ^ s2) ^ base);
                s = s.union(&d.restrict(&region));
            }
        }
        QSet::build(u, s)
    }

    pub fn union(&self, other: &QSet) -> QSet {
        self.boolean(BoolOp::Union, other)
    }

    pub fn inter(&self, other: &QSet) -> QSet {
        self.boolean(BoolOp::Inter, other)
    }

    pub fn diff(&self, other: &QSet) -> QSet {
        self.boolean(BoolOp::Diff, other)
    }

    pub fn complement(&self) -> QSet {
        self.boolean(BoolOp::Compl, self)
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.flips.is_empty()
    }

    pub fn is_subset(&self, other: &QSet) -> bool {
        self.diff(other).is_empty()
    }

    /// Finite cardinality, the bounded sets of the half-line structure.
    pub fn is_finite(&self) -> bool {
        self.intervals.is_empty() && !self.flips.is_infinite()
    }

    pub fn finite_points(&self) -> Option<Vec<Rat>> {
        if self.intervals.is_empty() {
            self.flips.finite_points()
        } else {
            None
        }
    }

    /// `{x + c : x ∈ S} ∩ ℚ≥0`.
    pub fn translate(&self, c: &Rat) -> QSet {
        QSet::build(self.intervals.translate(c), self.flips.translate(c))
    }

    /// `S ∩ [t, ∞)`.
    pub fn from_threshold(&self, t: &Rat) -> QSet {
        if *t <= rat::zero() {
            return self.clone();
        }
        let ray = QSet::interval(*t, None, false, true).expect("threshold is positive");
        self.inter(&ray)
    }

    pub fn features(&self) -> Features {
        let interval = !self.intervals.is_empty();
        let ray = self.intervals.has_unbounded();
        let discrete_tail = !ray && self.flips.is_infinite();
        Features {
            empty: self.is_empty(),
            finite: !interval && !self.flips.is_infinite(),
            interval,
            ray,
            discrete_tail,
        }
    }
}

impl Serialize for QSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = QSetWire::deserialize(d)?;
        Ok(QSet::from_parts(&w.intervals, &w.removed, &w.added))
    }
}

impl fmt::Display for QSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.to_wire();
        write!(f, "({}", w.intervals)?;
        if !w.removed.is_empty() {
            write!(f, " ∖ {:?}", w.removed.view())?;
        }
        write!(f, ")")?;
        if !w.added.is_empty() {
            write!(f, " ∪ {:?}", w.added.view())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn probes(bound: i64, max_den: i64) -> Vec<Rat> {
        let mut v: Vec<Rat> = (1..=max_den)
            .flat_map(|q| (0..=bound * q).map(move |p| Rat::new(p, q)))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    fn unit_open() -> QSet {
        QSet::interval(int(0), Some(int(1)), true, true).unwrap()
    }

    #[test]
    fn complement_of_naturals() {
        let b = QSet::naturals().complement();
        let w = b.to_wire();
        let positive = IntervalSet::all().diff(&IntervalSet::point(int(0)).unwrap());
        assert_eq!(w.intervals, positive);
        assert_eq!(w.removed, DiscreteSet::naturals().translate(&int(1)));
        assert!(w.added.is_empty());
        assert!(!b.contains(&int(3)).unwrap());
        assert!(b.contains(&rat(7, 2)).unwrap());
    }

    #[test]
    fn open_unit_interval_misses_integers() {
        let a = unit_open();
        assert!(!a.contains(&int(1)).unwrap());
        assert!(a.inter(&QSet::naturals()).is_empty());
        assert!(a.contains(&int(-1)).is_err());
    }

    #[test]
    fn progression_difference_in_qsets() {
        let a = QSet::ap(&RatAP::new(int(0), int(1)).unwrap());
        let b = QSet::ap(&RatAP::new(int(0), int(2)).unwrap());
        let d = a.diff(&b);
        assert_eq!(d, QSet::ap(&RatAP::new(int(1), int(2)).unwrap()));
        for x in probes(50, 4) {
            assert_eq!(d.has(&x), a.has(&x) && !b.has(&x));
        }
    }

    #[test]
    fn boolean_ops_match_membership() {
        let a = unit_open()
            .union(&QSet::interval(int(3), None, false, true).unwrap())
            .diff(&QSet::ap(&RatAP::new(rat(7, 2), rat(1, 2)).unwrap()));
        let b =
            QSet::naturals().union(&QSet::interval(rat(1, 2), Some(int(4)), false, true).unwrap());
        for op in [BoolOp::Union, BoolOp::Inter, BoolOp::Diff, BoolOp::Compl] {
            let c = a.boolean(op, &b);
            for x in probes(12, 6) {
                assert_eq!(c.has(&x), op.apply(a.has(&x), b.has(&x)), "{op:?} at {x}");
            }
        }
    }

    #[test]
    fn representation_is_canonical() {
        let left = QSet::interval(int(0), Some(int(1)), false, true).unwrap();
        let right = QSet::interval(int(1), Some(int(2)), true, false).unwrap();
        let split = left.union(&right);
        let whole = QSet::interval(int(0), Some(int(2)), false, false)
            .unwrap()
            .diff(&QSet::points(&[int(1)]).unwrap());
        assert_eq!(split, whole);
        assert_eq!(split.complement().complement(), split);
    }

    #[test]
    fn translation_shifts_both_parts() {
        let a = unit_open().union(&QSet::naturals());
        let t = a.translate(&int(2));
        for x in probes(10, 4) {
            let expect = x >= int(2) && a.has(&(x - int(2)));
            assert_eq!(t.has(&x), expect);
        }
    }

    #[test]
    fn wire_form_round_trips() {
        let a = unit_open()
            .union(&QSet::interval(int(5), None, true, true).unwrap())
            .diff(&QSet::naturals())
            .union(&QSet::points(&[rat(7, 3)]).unwrap());
        let j = serde_json::to_string(&a).unwrap();
        let back: QSet = serde_json::from_str(&j).unwrap();
        assert_eq!(back, a);
        assert!(j.contains("\"inf\""));
    }
}
