//! Windowed exploration of arbitrary subsets of ℤ with the metric structure.
//!
//! Nothing about the behaviour of a predicate at infinity can be proved from
//! finitely many probes, so decisions come back as
//! [`Verdict::UnknownAtWindow`] together with what the window showed. The
//! same probes serve as the brute-force oracle for the exact rules on ℤ.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::setalg_z::EPSet;

/// Default probe bound for windowed decisions.
pub const DEFAULT_WINDOW: u64 = 1000;

/// Largest gap between close points the oracle looks for.
pub const CLOSE_PAIR_REACH: u64 = 16;

/// Serialized as a JSON boolean, or `{"unknown_at_window": W}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "VerdictWire", into = "VerdictWire")]
pub enum Verdict {
    True,
    False,
    UnknownAtWindow(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum VerdictWire {
    Exact(bool),
    Unknown { unknown_at_window: u64 },
}

impl From<VerdictWire> for Verdict {
    fn from(w: VerdictWire) -> Verdict {
        match w {
            VerdictWire::Exact(b) => b.into(),
            VerdictWire::Unknown { unknown_at_window } => {
                Verdict::UnknownAtWindow(unknown_at_window)
            }
        }
    }
}

impl From<Verdict> for VerdictWire {
    fn from(v: Verdict) -> VerdictWire {
        match v {
            Verdict::UnknownAtWindow(w) => VerdictWire::Unknown {
                unknown_at_window: w,
            },
            exact => VerdictWire::Exact(exact.is_true()),
        }
    }
}

impl Verdict {
    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    /// The exact value, if there is one.
    pub fn exact(self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::UnknownAtWindow(_) => None,
        }
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::True => f.write_str("true"),
            Verdict::False => f.write_str("false"),
            Verdict::UnknownAtWindow(w) => write!(f, "unknown at window {w}"),
        }
    }
}

type Pred = Arc<dyn Fn(i64) -> bool + Send + Sync>;
type PairPred = Arc<dyn Fn(i64, i64) -> bool + Send + Sync>;

/// A subset of ℤ given by a membership predicate.
#[derive(Clone)]
pub struct GeneratorSet {
    pred: Pred,
    /// `[lo, hi]` containing every member, when known.
    support: Option<(i64, i64)>,
    description: String,
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorSet")
            .field("description", &self.description)
            .field("support", &self.support)
            .finish()
    }
}

fn isqrt(x: i64) -> i64 {
    let mut r = (x as f64).sqrt() as i64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

impl GeneratorSet {
    pub fn new(
        description: impl Into<String>,
        pred: impl Fn(i64) -> bool + Send + Sync + 'static,
    ) -> GeneratorSet {
        GeneratorSet {
            pred: Arc::new(pred),
            support: None,
            description: description.into(),
        }
    }

    pub fn from_epset(s: &EPSet) -> GeneratorSet {
        let owned = s.clone();
        let support = s
            .finite_points()
            .map(|pts| match (pts.first(), pts.last()) {
                (Some(lo), Some(hi)) => (*lo, *hi),
                _ => (1, 0),
            });
        GeneratorSet {
            pred: Arc::new(move |x| owned.contains(x)),
            support,
            description: s.to_string(),
        }
    }

    pub fn squares() -> GeneratorSet {
        GeneratorSet::new("squares", |x| x >= 0 && isqrt(x).pow(2) == x)
    }

    pub fn powers_of_two() -> GeneratorSet {
        GeneratorSet::new("pow2", |x| x > 0 && x & (x - 1) == 0)
    }

    pub fn contains(&self, x: i64) -> bool {
        (self.pred)(x)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        self.support
    }

    /// Members of `[lo, hi]`, ascending.
    pub fn enumerate(&self, lo: i64, hi: i64) -> impl Iterator<Item = i64> + '_ {
        let (lo, hi) = match self.support {
            Some((a, b)) => (lo.max(a), hi.min(b)),
            None => (lo, hi),
        };
        (lo..=hi).filter(move |&x| self.contains(x))
    }

    fn combine(&self, other: &GeneratorSet, name: &str, f: fn(bool, bool) -> bool) -> GeneratorSet {
        let (p, q) = (self.pred.clone(), other.pred.clone());
        let hull = |a: (i64, i64), b: (i64, i64)| (a.0.min(b.0), a.1.max(b.1));
        let support = match (self.support, other.support) {
            (Some(a), Some(b)) if !f(false, false) => Some(hull(a, b)),
            (Some(a), _) if !f(false, true) && !f(false, false) => Some(a),
            (_, Some(b)) if !f(true, false) && !f(false, false) => Some(b),
            _ => None,
        };
        GeneratorSet {
            pred: Arc::new(move |x| f(p(x), q(x))),
            support,
            description: format!("{name}({}, {})", self.description, other.description),
        }
    }

    pub fn union(&self, other: &GeneratorSet) -> GeneratorSet {
        self.combine(other, "union", |a, b| a || b)
    }

    pub fn inter(&self, other: &GeneratorSet) -> GeneratorSet {
        self.combine(other, "inter", |a, b| a && b)
    }

    pub fn diff(&self, other: &GeneratorSet) -> GeneratorSet {
        self.combine(other, "diff", |a, b| a && !b)
    }

    pub fn complement(&self) -> GeneratorSet {
        let p = self.pred.clone();
        GeneratorSet {
            pred: Arc::new(move |x| !p(x)),
            support: None,
            description: format!("compl({})", self.description),
        }
    }

    pub fn reflect(&self) -> GeneratorSet {
        let p = self.pred.clone();
        GeneratorSet {
            pred: Arc::new(move |x| p(-x)),
            support: self.support.map(|(lo, hi)| (-hi, -lo)),
            description: format!("neg({})", self.description),
        }
    }

    fn any_in(&self, lo: i64, hi: i64) -> bool {
        self.enumerate(lo, hi).next().is_some()
    }

    /// Members `x` with `W/2 ≤ |x| ≤ W`.
    fn shell(&self, w: u64) -> Vec<i64> {
        let (w, h) = (w as i64, (w / 2) as i64);
        self.enumerate(-w, -h).chain(self.enumerate(h, w)).collect()
    }

    fn dist_within(&self, x: i64, reach: i64) -> Option<i64> {
        (0..=reach).find(|&d| self.contains(x - d) || self.contains(x + d))
    }
}

/// A controlled set on ℤ: a pair predicate that never relates points farther apart than `reach`.
#[derive(Clone)]
pub struct WindowedEntourage {
    pairs: PairPred,
    reach: u64,
    description: String,
}

impl fmt::Debug for WindowedEntourage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "WindowedEntourage({}, reach {})",
            self.description, self.reach
        )
    }
}

impl WindowedEntourage {
    pub fn new(
        description: impl Into<String>,
        reach: u64,
        pairs: impl Fn(i64, i64) -> bool + Send + Sync + 'static,
    ) -> WindowedEntourage {
        WindowedEntourage {
            pairs: Arc::new(pairs),
            reach,
            description: description.into(),
        }
    }

    /// `{(x, y) : |x − y| < r}`.
    pub fn ball(r: u64) -> WindowedEntourage {
        let reach = r.saturating_sub(1);
        WindowedEntourage::new(format!("ball({r})"), reach, move |x, y| x.abs_diff(y) < r)
    }

    pub fn reach(&self) -> u64 {
        self.reach
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn relates(&self, x: i64, y: i64) -> bool {
        x.abs_diff(y) <= self.reach && (self.pairs)(x, y)
    }

    pub fn inverse(&self) -> WindowedEntourage {
        let p = self.pairs.clone();
        WindowedEntourage {
            pairs: Arc::new(move |x, y| p(y, x)),
            reach: self.reach,
            description: format!("inv({})", self.description),
        }
    }

    pub fn union(&self, other: &WindowedEntourage) -> WindowedEntourage {
        let (a, b) = (self.clone(), other.clone());
        WindowedEntourage {
            pairs: Arc::new(move |x, y| a.relates(x, y) || b.relates(x, y)),
            reach: self.reach.max(other.reach),
            description: format!("union({}, {})", self.description, other.description),
        }
    }

    pub fn compose(&self, other: &WindowedEntourage) -> WindowedEntourage {
        let (a, b) = (self.clone(), other.clone());
        let r = self.reach as i64;
        WindowedEntourage {
            pairs: Arc::new(move |x, z| {
                (x - r..=x + r).any(|y| a.relates(x, y) && b.relates(y, z))
            }),
            reach: self.reach + other.reach,
            description: format!("compose({}, {})", self.description, other.description),
        }
    }

    /// `E[A] = {x : ∃ a ∈ A, (x, a) ∈ E}`.
    pub fn image(&self, a: &GeneratorSet) -> GeneratorSet {
        let (e, s) = (self.clone(), a.clone());
        let r = self.reach as i64;
        GeneratorSet {
            pred: Arc::new(move |x| (x - r..=x + r).any(|y| s.contains(y) && e.relates(x, y))),
            support: a.support.map(|(lo, hi)| (lo - r, hi + r)),
            description: format!("{}[{}]", self.description, a.description),
        }
    }
}

/// Boundedness can only be confirmed, and only for sets with known finite support.
pub fn bounded(a: &GeneratorSet, w: u64) -> Verdict {
    match a.support {
        Some((lo, hi)) if lo > hi || lo.unsigned_abs().max(hi.unsigned_abs()) <= w => Verdict::True,
        _ => Verdict::UnknownAtWindow(w),
    }
}

/// What the shell `W/2 ≤ |x| ≤ W` shows about a set or a pair of sets.
pub mod observe {
    use super::*;

    pub fn bounded(a: &GeneratorSet, w: u64) -> bool {
        a.shell(w).is_empty()
    }

    /// Some point of `A` in the shell has a point of `B` within [`CLOSE_PAIR_REACH`].
    pub fn close(a: &GeneratorSet, b: &GeneratorSet, w: u64) -> bool {
        let r = CLOSE_PAIR_REACH as i64;
        a.shell(w).into_iter().any(|x| b.any_in(x - r, x + r))
    }

    /// Mutual coverage of the shells within a quarter of the window.
    pub fn resemble(a: &GeneratorSet, b: &GeneratorSet, w: u64) -> bool {
        let wi = w as i64;
        let (ea, eb) = (!a.any_in(-wi, wi), !b.any_in(-wi, wi));
        if ea || eb {
            return ea == eb;
        }
        let (ba, bb) = (bounded(a, w), bounded(b, w));
        if ba || bb {
            return ba == bb;
        }
        let reach = wi / 4;
        a.shell(w)
            .into_iter()
            .all(|x| b.dist_within(x, reach).is_some())
            && b.shell(w)
                .into_iter()
                .all(|x| a.dist_within(x, reach).is_some())
    }

    pub fn prec(a: &GeneratorSet, b: &GeneratorSet, w: u64) -> bool {
        !close(a, &b.complement(), w)
    }
}
