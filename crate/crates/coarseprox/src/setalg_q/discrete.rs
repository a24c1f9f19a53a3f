//! Uniformly discrete subsets of ℚ≥0 generated by rational progressions.
//!
//! Internally a [`DiscreteSet`] lives on a lattice `(1/N)·ℕ` and is an
//! eventually periodic subset of it. The progression view (`aps`, `extra`,
//! `removed`) is derived from that canonical form on demand.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::interval::IntervalSet;
use super::upset::UpSet;
use crate::error::{Error, Result};
use crate::rat::{self, den, gcd_q, int, lcm_u, rem_q, scaled, Rat};

/// `{a + d·k : k ∈ ℤ≥0}` with `a ≥ 0`, `d > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RatAP {
    #[serde(rename = "a", with = "rat::serde_rat")]
    anchor: Rat,
    #[serde(rename = "d", with = "rat::serde_rat")]
    step: Rat,
}

impl RatAP {
    pub fn new(anchor: Rat, step: Rat) -> Result<RatAP> {
        if anchor < rat::zero() {
            return Err(Error::InvalidSet(format!("anchor {anchor} is negative")));
        }
        if step <= rat::zero() {
            return Err(Error::InvalidSet(format!("step {step} is not positive")));
        }
        Ok(RatAP { anchor, step })
    }

    pub fn anchor(&self) -> Rat {
        self.anchor
    }

    pub fn step(&self) -> Rat {
        self.step
    }

    pub fn contains(&self, x: &Rat) -> bool {
        if *x < self.anchor {
            return false;
        }
        ((*x - self.anchor) / self.step).is_integer()
    }

    /// The `k`-th element.
    pub fn nth(&self, k: u64) -> Rat {
        self.anchor + self.step * int(k as i64)
    }

    fn lattice(&self) -> u64 {
        lcm_u(den(&self.anchor), den(&self.step))
    }
}

impl fmt::Display for RatAP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AP({}, {})", self.anchor, self.step)
    }
}

/// A two-sided rational lattice coset `{anchor + step·k : k ∈ ℤ}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OffsetLattice {
    #[serde(with = "rat::serde_rat")]
    pub anchor: Rat,
    #[serde(with = "rat::serde_rat")]
    pub step: Rat,
}

impl OffsetLattice {
    pub fn new(anchor: Rat, step: Rat) -> OffsetLattice {
        OffsetLattice {
            anchor: rem_q(&anchor, &step),
            step,
        }
    }

    pub fn contains(&self, c: &Rat) -> bool {
        ((*c - self.anchor) / self.step).is_integer()
    }
}

/// Finite union of progressions with finitely many points removed and added.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscreteSet {
    scale: u64,
    set: UpSet,
}

/// Progression view of a [`DiscreteSet`]: `(∪ aps ∖ removed) ∪ extra`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteView {
    pub aps: Vec<RatAP>,
    #[serde(with = "rat::serde_rat_vec")]
    pub extra: Vec<Rat>,
    #[serde(with = "rat::serde_rat_vec")]
    pub removed: Vec<Rat>,
}

impl DiscreteSet {
    fn from_parts(scale: u64, set: UpSet) -> DiscreteSet {
        let g = set.content();
        if g == 0 {
            return DiscreteSet {
                scale: 1,
                set: set.normalized(),
            };
        }
        let g = rat::gcd_u(g, scale);
        DiscreteSet {
            scale: scale / g,
            set: set.contract(g),
        }
    }

    pub fn empty() -> DiscreteSet {
        DiscreteSet {
            scale: 1,
            set: UpSet::empty(),
        }
    }

    /// Nonnegative integers.
    pub fn naturals() -> DiscreteSet {
        DiscreteSet {
            scale: 1,
            set: UpSet::all(),
        }
    }

    pub fn points(points: &[Rat]) -> Result<DiscreteSet> {
        if let Some(x) = points.iter().find(|x| !rat::is_nonneg(x)) {
            return Err(Error::NegativePoint(rat::fmt_rat(x)));
        }
        let n = points.iter().fold(1, |acc, x| lcm_u(acc, den(x)));
        let set = UpSet::points(points.iter().map(|x| scaled(x, n).unwrap() as u64));
        Ok(DiscreteSet::from_parts(n, set))
    }

    pub fn singleton(x: Rat) -> Result<DiscreteSet> {
        DiscreteSet::points(&[x])
    }

    pub fn from_ap(ap: &RatAP) -> DiscreteSet {
        let n = ap.lattice();
        let a = scaled(&ap.anchor, n).unwrap() as u64;
        let d = scaled(&ap.step, n).unwrap() as u64;
        DiscreteSet::from_parts(n, UpSet::progression(a, d))
    }

    pub fn from_view(view: &DiscreteView) -> Result<DiscreteSet> {
        let covered = view.aps.iter().fold(DiscreteSet::empty(), |acc, ap| {
            acc.union(&DiscreteSet::from_ap(ap))
        });
        let removed = DiscreteSet::points(&view.removed)?;
        let extra = DiscreteSet::points(&view.extra)?;
        Ok(covered.diff(&removed).union(&extra))
    }

    /// Lattice denominator `N`: every member lies in `(1/N)·ℕ`.
    pub fn scale(&self) -> u64 {
        self.scale
    }

    fn lift(&self, n: u64) -> UpSet {
        debug_assert_eq!(n % self.scale, 0);
        self.set.dilate(n / self.scale)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        if !rat::is_nonneg(x) {
            return false;
        }
        match scaled(x, self.scale) {
            Some(n) => self.set.contains(n as u64),
            None => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    /// Infinite iff some progression survives.
    pub fn is_infinite(&self) -> bool {
        self.set.has_tail()
    }

    /// Pointwise combination; `f(false, false)` must be `false`.
    pub fn combine(&self, other: &DiscreteSet, f: impl Fn(bool, bool) -> bool) -> DiscreteSet {
        debug_assert!(!f(false, false));
        let n = lcm_u(self.scale, other.scale);
        DiscreteSet::from_parts(n, self.lift(n).combine(&other.lift(n), f))
    }

    pub fn union(&self, other: &DiscreteSet) -> DiscreteSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn inter(&self, other: &DiscreteSet) -> DiscreteSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn diff(&self, other: &DiscreteSet) -> DiscreteSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn xor(&self, other: &DiscreteSet) -> DiscreteSet {
        self.combine(other, |a, b| a ^ b)
    }

    pub fn is_subset(&self, other: &DiscreteSet) -> bool {
        self.diff(other).is_empty()
    }

    /// Members lying in `ivs`.
    pub fn restrict(&self, ivs: &IntervalSet) -> DiscreteSet {
        let n = self.scale;
        let mut t = self.set.threshold;
        let keep_tail = match ivs.unbounded_start() {
            Some(lo) => {
                t = t.max(rat::above_i(&(lo * int(n as i64))).max(0) as u64);
                true
            }
            None => {
                if let Some(sup) = ivs.bounded_sup() {
                    t = t.max(rat::above_i(&(sup * int(n as i64))).max(0) as u64);
                }
                false
            }
        };
        let finite = (0..t)
            .filter(|&k| self.set.contains(k) && ivs.contains(&Rat::new(k as i64, n as i64)))
            .collect();
        let residues = if keep_tail {
            self.set.residues.clone()
        } else {
            BTreeSet::new()
        };
        let set = UpSet {
            period: self.set.period,
            residues,
            threshold: t,
            finite,
        }
        .normalized();
        DiscreteSet::from_parts(n, set)
    }

    /// `{x + c : x ∈ S} ∩ ℚ≥0`.
    pub fn translate(&self, c: &Rat) -> DiscreteSet {
        let n = lcm_u(self.scale, den(c));
        let m = scaled(c, n).unwrap();
        DiscreteSet::from_parts(n, self.lift(n).shift(m))
    }

    /// Points of a finite set, ascending.
    pub fn finite_points(&self) -> Option<Vec<Rat>> {
        (!self.is_infinite()).then(|| self.points_below_threshold())
    }

    fn points_below_threshold(&self) -> Vec<Rat> {
        let n = self.scale as i64;
        self.set
            .finite
            .iter()
            .map(|&k| Rat::new(k as i64, n))
            .collect()
    }

    /// Every member up to and including `bound`.
    pub fn members_up_to(&self, bound: &Rat) -> Vec<Rat> {
        let n = self.scale as i64;
        let top = (*bound * int(n)).floor().to_integer();
        (0..=top.max(-1))
            .filter(|&k| self.set.contains(k as u64))
            .map(|k| Rat::new(k, n))
            .collect()
    }

    /// Tail progressions, one per surviving residue class.
    pub fn tail_aps(&self) -> Vec<RatAP> {
        let n = self.scale as i64;
        let step = Rat::new(self.set.period as i64, n);
        self.set
            .residues
            .iter()
            .map(|&r| RatAP {
                anchor: Rat::new(r as i64, n),
                step,
            })
            .collect()
    }

    /// Threshold beyond which the set is purely periodic.
    pub fn horizon(&self) -> Rat {
        Rat::new(self.set.threshold as i64, self.scale as i64)
    }

    pub fn view(&self) -> DiscreteView {
        let n = self.scale as i64;
        let l = self.set.period;
        let aps = self.tail_aps();
        let in_class = |k: u64| self.set.residues.contains(&(k % l));
        let removed = (0..self.set.threshold)
            .filter(|&k| in_class(k) && !self.set.contains(k))
            .map(|k| Rat::new(k as i64, n))
            .collect();
        let extra = self
            .set
            .finite
            .iter()
            .filter(|&&k| !in_class(k))
            .map(|&k| Rat::new(k as i64, n))
            .collect();
        DiscreteView {
            aps,
            extra,
            removed,
        }
    }
}

impl Serialize for DiscreteSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.view().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiscreteSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let view = DiscreteView::deserialize(d)?;
        DiscreteSet::from_view(&view).map_err(serde::de::Error::custom)
    }
}

/// Exact intersection of two progressions: empty or another progression.
pub fn intersect(p: &RatAP, q: &RatAP) -> Option<RatAP> {
    let m = lcm_u(p.lattice(), q.lattice());
    let (a1, d1) = (scaled(&p.anchor, m)? as i128, scaled(&p.step, m)? as i128);
    let (a2, d2) = (scaled(&q.anchor, m)? as i128, scaled(&q.step, m)? as i128);
    let (g, u, _) = ext_gcd(d1, d2);
    if (a2 - a1) % g != 0 {
        return None;
    }
    let l = d1 / g * d2;
    let k = ((a2 - a1) / g * u).rem_euclid(d2 / g);
    let base = (a1 + d1 * k).rem_euclid(l);
    let lo = a1.max(a2);
    let first = if base >= lo {
        base
    } else {
        base + (lo - base + l - 1) / l * l
    };
    Some(RatAP {
        anchor: Rat::new(first as i64, m as i64),
        step: Rat::new(l as i64, m as i64),
    })
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// `p ∖ (q₁ ∪ … ∪ qₖ)`.
pub fn subtract(p: &RatAP, qs: &[RatAP]) -> DiscreteSet {
    qs.iter().fold(DiscreteSet::from_ap(p), |acc, q| {
        acc.diff(&DiscreteSet::from_ap(q))
    })
}

/// Offsets `c` for which `(source + c) ∩ target` is infinite.
pub fn solve_offset(source: &RatAP, target: &RatAP) -> OffsetLattice {
    OffsetLattice::new(
        target.anchor - source.anchor,
        gcd_q(&source.step, &target.step),
    )
}

/// The smallest `1/q` with `q ≥ 2` lying in none of the lattices.
pub fn avoid_offset(lattices: &[OffsetLattice]) -> Rat {
    (2..)
        .map(|q| Rat::new(1, q))
        .find(|c| !lattices.iter().any(|l| l.contains(c)))
        .expect("finitely many lattices cannot cover every unit fraction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn ap(a: Rat, d: Rat) -> RatAP {
        RatAP::new(a, d).unwrap()
    }

    fn probes(bound: i64, max_den: i64) -> Vec<Rat> {
        let mut out = BTreeSet::new();
        for q in 1..=max_den {
            for p in 0..=bound * q {
                out.insert(Rat::new(p, q));
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn intersect_matches_enumeration() {
        let r = intersect(&ap(int(0), int(2)), &ap(int(0), int(3))).unwrap();
        assert_eq!(r, ap(int(0), int(6)));
        for x in 0..=100 {
            assert_eq!(r.contains(&int(x)), x % 6 == 0);
        }
        assert_eq!(intersect(&ap(int(0), int(1)), &ap(rat(1, 2), int(1))), None);
    }

    #[test]
    fn intersect_respects_anchors() {
        let p = ap(int(7), int(4));
        let q = ap(int(1), int(6));
        let r = intersect(&p, &q).unwrap();
        for x in 0..=300 {
            let x = int(x);
            assert_eq!(r.contains(&x), p.contains(&x) && q.contains(&x));
        }
    }

    #[test]
    fn progression_difference() {
        let d = subtract(&ap(int(0), int(1)), &[ap(int(0), int(2))]);
        assert_eq!(d, DiscreteSet::from_ap(&ap(int(1), int(2))));
        for x in probes(50, 4) {
            assert_eq!(d.contains(&x), x.is_integer() && x.to_integer() % 2 == 1);
        }
    }

    #[test]
    fn offsets_between_naturals_form_the_integer_lattice() {
        let nat = ap(int(0), int(1));
        let lat = solve_offset(&nat, &nat);
        assert_eq!(lat, OffsetLattice::new(int(0), int(1)));
        for (c, expect) in [
            (int(0), true),
            (rat(1, 2), false),
            (int(1), true),
            (rat(3, 2), false),
        ] {
            let shifted = DiscreteSet::from_ap(&nat).translate(&c);
            let meet = shifted.inter(&DiscreteSet::naturals());
            assert_eq!(meet.is_infinite(), expect);
            assert_eq!(lat.contains(&c), expect);
        }
    }

    #[test]
    fn view_round_trips() {
        let s = DiscreteSet::from_ap(&ap(int(0), rat(1, 2)))
            .diff(&DiscreteSet::points(&[int(1), rat(3, 2)]).unwrap())
            .union(&DiscreteSet::points(&[rat(1, 3)]).unwrap());
        let v = s.view();
        assert_eq!(v.removed, vec![int(1), rat(3, 2)]);
        assert_eq!(v.extra, vec![rat(1, 3)]);
        assert_eq!(DiscreteSet::from_view(&v).unwrap(), s);
    }

    #[test]
    fn translation_by_negative_offset_clips() {
        let s = DiscreteSet::from_ap(&ap(rat(1, 3), int(1)));
        let t = s.translate(&rat(-4, 3));
        for x in probes(20, 6) {
            assert_eq!(t.contains(&x), s.contains(&(x + rat(4, 3))));
        }
    }

    #[test]
    fn avoided_offsets() {
        let z = OffsetLattice::new(int(0), int(1));
        assert_eq!(avoid_offset(std::slice::from_ref(&z)), rat(1, 2));
        assert_eq!(
            avoid_offset(&[OffsetLattice::new(int(0), rat(1, 2))]),
            rat(1, 3)
        );
        let c = avoid_offset(&[z.clone(), OffsetLattice::new(rat(1, 3), rat(1, 3))]);
        assert!(!z.contains(&c) && !OffsetLattice::new(rat(1, 3), rat(1, 3)).contains(&c));
        assert_eq!(avoid_offset(&[]), rat(1, 2));
    }
}
