//! Eventually periodic subsets of ℕ: `n ∈ S ⇔ (n ≥ T ∧ n mod L ∈ R) ∨ n ∈ F`, `F ⊆ [0, T)`.

use std::collections::BTreeSet;

use crate::rat::{gcd_u, lcm_u};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct UpSet {
    pub period: u64,
    pub residues: BTreeSet<u64>,
    pub threshold: u64,
    pub finite: BTreeSet<u64>,
}

impl UpSet {
    pub fn empty() -> UpSet {
        UpSet {
            period: 1,
            residues: BTreeSet::new(),
            threshold: 0,
            finite: BTreeSet::new(),
        }
    }

    pub fn all() -> UpSet {
        UpSet {
            period: 1,
            residues: [0].into(),
            threshold: 0,
            finite: BTreeSet::new(),
        }
    }

    pub fn points(points: impl IntoIterator<Item = u64>) -> UpSet {
        let finite: BTreeSet<u64> = points.into_iter().collect();
        let threshold = finite.iter().max().map_or(0, |m| m + 1);
        UpSet {
            period: 1,
            residues: BTreeSet::new(),
            threshold,
            finite,
        }
        .normalized()
    }

    /// `{a + d·k : k ≥ 0}`.
    pub fn progression(a: u64, d: u64) -> UpSet {
        UpSet {
            period: d,
            residues: [a % d].into(),
            threshold: a,
            finite: BTreeSet::new(),
        }
        .normalized()
    }

    pub fn contains(&self, n: u64) -> bool {
        if n >= self.threshold {
            self.residues.contains(&(n % self.period))
        } else {
            self.finite.contains(&n)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty() && self.finite.is_empty()
    }

    pub fn has_tail(&self) -> bool {
        !self.residues.is_empty()
    }

    pub fn normalized(self) -> UpSet {
        let l = self.period as usize;
        let pat: Vec<bool> = (0..self.period)
            .map(|r| self.residues.contains(&r))
            .collect();
        let p = (1..=l)
            .filter(|d| l.is_multiple_of(*d))
            .find(|&d| (0..l).all(|i| pat[i] == pat[i % d]))
            .unwrap_or(l) as u64;
        let residues: BTreeSet<u64> = (0..p).filter(|&r| pat[r as usize]).collect();
        let mut finite = self.finite;
        let mut t = self.threshold;
        while t > 0 && finite.contains(&(t - 1)) == residues.contains(&((t - 1) % p)) {
            finite.remove(&(t - 1));
            t -= 1;
        }
        UpSet {
            period: p,
            residues,
            threshold: t,
            finite,
        }
    }

    /// Pointwise combination; `f(false, false)` may be anything.
    pub fn combine(&self, other: &UpSet, f: impl Fn(bool, bool) -> bool) -> UpSet {
        let l = lcm_u(self.period, other.period);
        let t = self.threshold.max(other.threshold);
        let residues = (0..l)
            .filter(|&r| {
                f(
                    self.residues.contains(&(r % self.period)),
                    other.residues.contains(&(r % other.period)),
                )
            })
            .collect();
        let finite = (0..t)
            .filter(|&n| f(self.contains(n), other.contains(n)))
            .collect();
        UpSet {
            period: l,
            residues,
            threshold: t,
            finite,
        }
        .normalized()
    }

    /// The set `{k·n : n ∈ S}`.
    pub fn dilate(&self, k: u64) -> UpSet {
        if k == 1 {
            return self.clone();
        }
        UpSet {
            period: self.period * k,
            residues: self.residues.iter().map(|r| r * k).collect(),
            threshold: self.threshold * k,
            finite: self.finite.iter().map(|n| n * k).collect(),
        }
        .normalized()
    }

    /// Largest `g` dividing every member (and the period when there is a tail).
    pub fn content(&self) -> u64 {
        let mut g = if self.has_tail() { self.period } else { 0 };
        for &r in &self.residues {
            g = gcd_u(g, r);
        }
        for &n in &self.finite {
            g = gcd_u(g, n);
        }
        g
    }

    /// `{n / g : n ∈ S}`; every member must be a multiple of `g`.
    pub fn contract(&self, g: u64) -> UpSet {
        if g <= 1 {
            return self.clone();
        }
        if !self.has_tail() {
            return UpSet::points(self.finite.iter().map(|n| n / g));
        }
        UpSet {
            period: self.period / g,
            residues: self.residues.iter().map(|r| r / g).collect(),
            threshold: self.threshold.div_ceil(g),
            finite: self.finite.iter().map(|n| n / g).collect(),
        }
        .normalized()
    }

    /// `{n + m : n ∈ S}` for signed `m`, dropping anything that falls below zero.
    pub fn shift(&self, m: i64) -> UpSet {
        if m >= 0 {
            let m = m as u64;
            UpSet {
                period: self.period,
                residues: self
                    .residues
                    .iter()
                    .map(|r| (r + m) % self.period)
                    .collect(),
                threshold: self.threshold + m,
                finite: self.finite.iter().map(|n| n + m).collect(),
            }
            .normalized()
        } else {
            let m = m.unsigned_abs();
            let l = self.period;
            UpSet {
                period: l,
                residues: self.residues.iter().map(|r| (r + l - m % l) % l).collect(),
                threshold: self.threshold.saturating_sub(m),
                finite: self
                    .finite
                    .iter()
                    .filter(|&&n| n >= m)
                    .map(|n| n - m)
                    .collect(),
            }
            .normalized()
        }
    }
}
