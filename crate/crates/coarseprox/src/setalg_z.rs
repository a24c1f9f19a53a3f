//! Eventually periodic subsets of ℤ.
//!
//! A set is stored as a period `L`, two residue sets (one per end of ℤ), a
//! threshold `T` and a finite exception set inside the open window `(−T, T)`:
//!
//! ```text
//! x ∈ S  ⇔  (x ≥ T ∧ x mod L ∈ pos) ∨ (x ≤ −T ∧ (−x) mod L ∈ neg) ∨ x ∈ F
//! ```
//!
//! Every constructor normalizes to the canonical form (minimal `L`, then
//! minimal `T`), so two sets are equal exactly when their representations are.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::lcm_u;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoolOp {
    Union,
    Inter,
    Compl,
    Diff,
}

impl BoolOp {
    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::Union => a || b,
            BoolOp::Inter => a && b,
            BoolOp::Compl => !a,
            BoolOp::Diff => a && !b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawEPSet", into = "RawEPSet")]
pub struct EPSet {
    period: u64,
    pos: BTreeSet<u64>,
    neg: BTreeSet<u64>,
    threshold: u64,
    exceptions: BTreeSet<i64>,
}

/// Unnormalized wire form `{L, pos, neg, T, F}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEPSet {
    #[serde(rename = "L")]
    pub period: u64,
    pub pos: Vec<u64>,
    pub neg: Vec<u64>,
    #[serde(rename = "T")]
    pub threshold: u64,
    #[serde(rename = "F")]
    pub exceptions: Vec<i64>,
}

impl TryFrom<RawEPSet> for EPSet {
    type Error = Error;
    fn try_from(raw: RawEPSet) -> Result<Self> {
        EPSet::normalize(raw)
    }
}

impl From<EPSet> for RawEPSet {
    fn from(s: EPSet) -> Self {
        RawEPSet {
            period: s.period,
            pos: s.pos.into_iter().collect(),
            neg: s.neg.into_iter().collect(),
            threshold: s.threshold,
            exceptions: s.exceptions.into_iter().collect(),
        }
    }
}

fn minimal_period(pattern: &[bool]) -> u64 {
    let l = pattern.len();
    (1..=l)
        .filter(|d| l.is_multiple_of(*d))
        .find(|&d| (0..l).all(|i| pattern[i] == pattern[i % d]))
        .unwrap_or(l) as u64
}

impl EPSet {
    /// Validates raw data and returns the canonical representative.
    pub fn normalize(raw: RawEPSet) -> Result<EPSet> {
        let RawEPSet {
            period,
            pos,
            neg,
            threshold,
            exceptions,
        } = raw;
        if period == 0 {
            return Err(Error::InvalidSet("period must be positive".into()));
        }
        if let Some(r) = pos.iter().chain(neg.iter()).find(|&&r| r >= period) {
            return Err(Error::InvalidSet(format!(
                "residue {r} not below period {period}"
            )));
        }
        let t = threshold as i64;
        if let Some(x) = exceptions.iter().find(|&&x| x.abs() >= t) {
            return Err(Error::InvalidSet(format!(
                "exception {x} outside window (-{t}, {t})"
            )));
        }

        let l = period as usize;
        let mut pos_pat = vec![false; l];
        let mut neg_pat = vec![false; l];
        pos.iter().for_each(|&r| pos_pat[r as usize] = true);
        neg.iter().for_each(|&r| neg_pat[r as usize] = true);
        let new_l = lcm_u(minimal_period(&pos_pat), minimal_period(&neg_pat));
        let pos: BTreeSet<u64> = (0..new_l).filter(|&r| pos_pat[r as usize]).collect();
        let neg: BTreeSet<u64> = (0..new_l).filter(|&r| neg_pat[r as usize]).collect();

        let mut f: BTreeSet<i64> = exceptions.into_iter().collect();
        let mut t = threshold;
        let li = new_l as i64;
        while t > 0 {
            let x = (t - 1) as i64;
            let res = x.rem_euclid(li) as u64;
            let ok = if t >= 2 {
                f.contains(&x) == pos.contains(&res) && f.contains(&-x) == neg.contains(&res)
            } else {
                f.contains(&0) == (pos.contains(&0) || neg.contains(&0))
            };
            if !ok {
                break;
            }
            f.remove(&x);
            f.remove(&-x);
            t -= 1;
        }
        Ok(EPSet {
            period: new_l,
            pos,
            neg,
            threshold: t,
            exceptions: f,
        })
    }

    /// Builds a set from tail data and a predicate that fixes membership on `(−T, T)`.
    pub fn from_fn(
        period: u64,
        pos: impl IntoIterator<Item = u64>,
        neg: impl IntoIterator<Item = u64>,
        threshold: u64,
        inside: impl Fn(i64) -> bool,
    ) -> Result<EPSet> {
        let t = threshold as i64;
        EPSet::normalize(RawEPSet {
            period,
            pos: pos.into_iter().collect(),
            neg: neg.into_iter().collect(),
            threshold,
            exceptions: (-t + 1..t).filter(|&x| inside(x)).collect(),
        })
    }

    pub fn empty() -> EPSet {
        EPSet {
            period: 1,
            pos: BTreeSet::new(),
            neg: BTreeSet::new(),
            threshold: 0,
            exceptions: BTreeSet::new(),
        }
    }

    pub fn all() -> EPSet {
        EPSet {
            period: 1,
            pos: [0].into(),
            neg: [0].into(),
            threshold: 0,
            exceptions: BTreeSet::new(),
        }
    }

    pub fn finite(points: impl IntoIterator<Item = i64>) -> EPSet {
        let f: BTreeSet<i64> = points.into_iter().collect();
        let t = f.iter().map(|x| x.unsigned_abs() + 1).max().unwrap_or(0);
        EPSet::normalize(RawEPSet {
            period: 1,
            pos: vec![],
            neg: vec![],
            threshold: t,
            exceptions: f.into_iter().collect(),
        })
        .expect("finite set data is valid")
    }

    pub fn singleton(x: i64) -> EPSet {
        EPSet::finite([x])
    }

    /// `{a + d·k : k ≥ 0}`.
    pub fn tail_ap(a: i64, d: u64) -> Result<EPSet> {
        if d == 0 {
            return Err(Error::InvalidSet(
                "progression step must be positive".into(),
            ));
        }
        let di = d as i64;
        let t = a.unsigned_abs() + 1;
        EPSet::from_fn(d, [a.rem_euclid(di) as u64], [], t, |x| {
            x >= a && (x - a) % di == 0
        })
    }

    /// All multiples of `d` shifted by `r`, on both ends of ℤ.
    pub fn residue_class(r: i64, d: u64) -> Result<EPSet> {
        if d == 0 {
            return Err(Error::InvalidSet("modulus must be positive".into()));
        }
        let di = d as i64;
        let p = r.rem_euclid(di) as u64;
        let n = (-r).rem_euclid(di) as u64;
        EPSet::from_fn(d, [p], [n], 1, |x| (x - r).rem_euclid(di) == 0)
    }

    pub fn evens() -> EPSet {
        EPSet::residue_class(0, 2).unwrap()
    }

    pub fn odds() -> EPSet {
        EPSet::residue_class(1, 2).unwrap()
    }

    /// `[t, ∞) ∩ ℤ`.
    pub fn ray_up(t: i64) -> EPSet {
        EPSet::tail_ap(t, 1).unwrap()
    }

    /// `(−∞, −t] ∩ ℤ`.
    pub fn ray_down(t: i64) -> EPSet {
        EPSet::ray_up(t).reflect()
    }

    /// Image under `x ↦ −x`.
    pub fn reflect(&self) -> EPSet {
        EPSet {
            period: self.period,
            pos: self.neg.clone(),
            neg: self.pos.clone(),
            threshold: self.threshold,
            exceptions: self.exceptions.iter().map(|x| -x).collect(),
        }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn pos_residues(&self) -> &BTreeSet<u64> {
        &self.pos
    }

    pub fn neg_residues(&self) -> &BTreeSet<u64> {
        &self.neg
    }

    pub fn exceptions(&self) -> &BTreeSet<i64> {
        &self.exceptions
    }

    pub fn contains(&self, x: i64) -> bool {
        let t = self.threshold as i64;
        let l = self.period as i64;
        (x >= t && self.pos.contains(&(x.rem_euclid(l) as u64)))
            || (x <= -t && self.neg.contains(&((-x).rem_euclid(l) as u64)))
            || self.exceptions.contains(&x)
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty() && self.exceptions.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn has_pos_end(&self) -> bool {
        !self.pos.is_empty()
    }

    pub fn has_neg_end(&self) -> bool {
        !self.neg.is_empty()
    }

    /// Explicit points of a finite set.
    pub fn finite_points(&self) -> Option<Vec<i64>> {
        self.is_finite()
            .then(|| self.exceptions.iter().copied().collect())
    }

    pub fn boolean(&self, op: BoolOp, other: &EPSet) -> EPSet {
        let l = lcm_u(self.period, other.period);
        let t = self.threshold.max(other.threshold) + 1;
        let pick = |s: &EPSet, side: &BTreeSet<u64>, r: u64| side.contains(&(r % s.period));
        let pos: Vec<u64> = (0..l)
            .filter(|&r| op.apply(pick(self, &self.pos, r), pick(other, &other.pos, r)))
            .collect();
        let neg: Vec<u64> = (0..l)
            .filter(|&r| op.apply(pick(self, &self.neg, r), pick(other, &other.neg, r)))
            .collect();
        EPSet::from_fn(l, pos, neg, t, |x| {
            op.apply(self.contains(x), other.contains(x))
        })
        .expect("boolean combination of canonical sets is valid")
    }

    pub fn union(&self, other: &EPSet) -> EPSet {
        self.boolean(BoolOp::Union, other)
    }

    pub fn inter(&self, other: &EPSet) -> EPSet {
        self.boolean(BoolOp::Inter, other)
    }

    pub fn diff(&self, other: &EPSet) -> EPSet {
        self.boolean(BoolOp::Diff, other)
    }

    pub fn complement(&self) -> EPSet {
        self.boolean(BoolOp::Compl, self)
    }

    pub fn is_subset(&self, other: &EPSet) -> bool {
        self.diff(other).is_empty()
    }

    /// `{x : d(x, S) ≤ k}`, i.e. the image under the metric entourage of radius `k + 1`.
    pub fn thicken(&self, k: u64) -> EPSet {
        let l = self.period;
        let spread = |side: &BTreeSet<u64>| -> Vec<u64> {
            let li = l as i64;
            let ki = k as i64;
            let mut out = BTreeSet::new();
            for &p in side {
                for j in -ki..=ki {
                    out.insert((p as i64 + j).rem_euclid(li) as u64);
                }
            }
            out.into_iter().collect()
        };
        let ki = k as i64;
        EPSet::from_fn(
            l,
            spread(&self.pos),
            spread(&self.neg),
            self.threshold + k + 1,
            |x| (-ki..=ki).any(|j| self.contains(x + j)),
        )
        .expect("thickening of a canonical set is valid")
    }

    /// Distance from `x` to the nearest point of the set.
    pub fn dist_to(&self, x: i64) -> Option<u64> {
        let mut best: Option<u64> = self.exceptions.iter().map(|f| f.abs_diff(x)).min();
        let t = self.threshold as i64;
        let l = self.period as i64;
        let mut consider = |d: u64| best = Some(best.map_or(d, |b| b.min(d)));
        if !self.pos.is_empty() {
            let start = t.max(x - l);
            for y in start..=start.max(x) + l {
                if y >= t && self.pos.contains(&(y.rem_euclid(l) as u64)) {
                    consider(y.abs_diff(x));
                }
            }
        }
        if !self.neg.is_empty() {
            let nx = -x;
            let start = t.max(nx - l);
            for y in start..=start.max(nx) + l {
                if y >= t && self.neg.contains(&(y.rem_euclid(l) as u64)) {
                    consider(y.abs_diff(nx));
                }
            }
        }
        best
    }

    /// Members inside `[lo, hi]`.
    pub fn points_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&x| self.contains(x)).collect()
    }

    /// A window `[-M, M]` beyond which both sets are purely periodic with a common period.
    pub fn joint_horizon(&self, other: &EPSet) -> i64 {
        (self.threshold.max(other.threshold) + 2 * lcm_u(self.period, other.period)) as i64 + 1
    }
}

impl fmt::Display for EPSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "EP(L={}, pos={:?}, neg={:?}, T={}, F={:?})",
            self.period, self.pos, self.neg, self.threshold, self.exceptions
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(l: u64, pos: &[u64], neg: &[u64], t: u64, f: &[i64]) -> RawEPSet {
        RawEPSet {
            period: l,
            pos: pos.to_vec(),
            neg: neg.to_vec(),
            threshold: t,
            exceptions: f.to_vec(),
        }
    }

    fn raw_member(r: &RawEPSet, x: i64) -> bool {
        let t = r.threshold as i64;
        let l = r.period as i64;
        (x >= t && r.pos.contains(&(x.rem_euclid(l) as u64)))
            || (x <= -t && r.neg.contains(&((-x).rem_euclid(l) as u64)))
            || r.exceptions.contains(&x)
    }

    #[test]
    fn period_is_minimized() {
        let s = EPSet::normalize(raw(4, &[0, 2], &[], 0, &[])).unwrap();
        assert_eq!(s.period(), 2);
        assert_eq!(s.pos_residues(), &BTreeSet::from([0]));
        assert_eq!(s.threshold(), 0);
    }

    #[test]
    fn empty_tail_collapses_threshold() {
        let s = EPSet::normalize(raw(1, &[], &[], 5, &[])).unwrap();
        assert_eq!(s, EPSet::empty());
    }

    #[test]
    fn exception_matching_the_tail_is_absorbed() {
        let r = raw(2, &[0], &[], 10, &[4, 6, 8]);
        let s = EPSet::normalize(r.clone()).unwrap();
        for x in -50..=50 {
            assert_eq!(s.contains(x), raw_member(&r, x), "x = {x}");
        }
        assert_eq!(s.threshold(), 3);
        assert!(s.exceptions().is_empty());

        let r = raw(2, &[0], &[], 10, &[4]);
        let s = EPSet::normalize(r.clone()).unwrap();
        for x in -50..=50 {
            assert_eq!(s.contains(x), raw_member(&r, x), "x = {x}");
        }
        assert_eq!(s.threshold(), 9);
    }

    #[test]
    fn rejects_bad_raw_data() {
        assert!(EPSet::normalize(raw(0, &[], &[], 0, &[])).is_err());
        assert!(EPSet::normalize(raw(2, &[], &[], 3, &[3])).is_err());
        assert!(EPSet::normalize(raw(2, &[2], &[], 0, &[])).is_err());
    }

    #[test]
    fn complement_of_empty_is_everything() {
        assert_eq!(EPSet::empty().complement(), EPSet::all());
        let z = EPSet::all();
        assert_eq!(z.period(), 1);
        assert!(z.pos_residues().contains(&0) && z.neg_residues().contains(&0));
    }

    #[test]
    fn evens_and_odds_tails_make_naturals() {
        let u = EPSet::tail_ap(0, 2)
            .unwrap()
            .union(&EPSet::tail_ap(1, 2).unwrap());
        assert_eq!(u, EPSet::ray_up(0));
    }

    #[test]
    fn intersection_of_progressions() {
        let a = EPSet::tail_ap(0, 2).unwrap();
        let b = EPSet::tail_ap(0, 3).unwrap();
        let c = a.inter(&b);
        assert_eq!(c, EPSet::tail_ap(0, 6).unwrap());
        for x in -100..=100 {
            assert_eq!(c.contains(x), x >= 0 && x % 6 == 0);
        }
    }

    #[test]
    fn membership_examples() {
        let e = EPSet::tail_ap(0, 2).unwrap();
        assert!(e.contains(4));
        assert!(!e.contains(-2));
        let s = EPSet::normalize(raw(1, &[0], &[], 5, &[3])).unwrap();
        assert!(s.contains(3));
        assert!(!s.contains(2));
    }

    #[test]
    fn thickening_by_one_fills_evens() {
        assert_eq!(EPSet::evens().thicken(0), EPSet::evens());
        let t = EPSet::evens().thicken(1);
        for x in -40..=40 {
            assert!(t.contains(x));
        }
        assert_eq!(t, EPSet::all());
    }

    #[test]
    fn distance_to_tails_and_exceptions() {
        let s = EPSet::tail_ap(10, 5).unwrap();
        assert_eq!(s.dist_to(0), Some(10));
        assert_eq!(s.dist_to(12), Some(2));
        assert_eq!(s.dist_to(-3), Some(13));
        assert_eq!(EPSet::empty().dist_to(0), None);
        assert_eq!(EPSet::ray_down(4).dist_to(0), Some(4));
    }

    #[test]
    fn json_wire_form_round_trips() {
        let s = EPSet::tail_ap(-3, 4)
            .unwrap()
            .union(&EPSet::finite([7, -9]));
        let j = serde_json::to_string(&s).unwrap();
        let back: EPSet = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert!(j.contains("\"L\""));
    }
}
