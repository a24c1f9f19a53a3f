//! Deterministic instance generation.
//!
//! Random data stays inside the limits the window oracles rely on: periods
//! up to 6 and thresholds up to 10 on ℤ; on ℚ≥0, denominators dividing the
//! plan's bound, bounded data inside `[0, 12]` and progression steps from a
//! short list whose least common multiple is 12.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::SeedPlan;
use crate::backends::GeneratorSet;
use crate::normality::{off_naturals, unit_interval};
use crate::rat::{int, rat, Rat};
use crate::relations::{QHalfline, Space, ZMetric};
use crate::setalg_q::{DiscreteSet, Interval, IntervalSet, QSet, RatAP};
use crate::setalg_z::{EPSet, RawEPSet};

const STEPS: [(i64, i64); 8] = [
    (1, 2),
    (1, 3),
    (1, 1),
    (3, 2),
    (2, 1),
    (3, 1),
    (4, 1),
    (6, 1),
];

/// A backend whose sets can be generated from a plan.
pub trait Sampled: Space {
    /// How many sets a plan asks for.
    fn count(plan: &SeedPlan) -> usize;
    /// Edge cases that every generated list starts with.
    fn injected() -> Vec<Self::Set>;
    fn random(rng: &mut ChaCha8Rng, plan: &SeedPlan) -> Self::Set;
    fn random_finite(rng: &mut ChaCha8Rng, plan: &SeedPlan) -> Self::Set;
    /// A set resembling `a`.
    fn perturb(a: &Self::Set, rng: &mut ChaCha8Rng, plan: &SeedPlan) -> Self::Set;
}

pub fn gen_sets<S: Sampled>(plan: &SeedPlan, rng: &mut ChaCha8Rng) -> Vec<S::Set> {
    let mut out = S::injected();
    while out.len() < S::count(plan) {
        out.push(S::random(rng, plan));
    }
    out
}

fn residues(rng: &mut ChaCha8Rng, l: u64) -> Vec<u64> {
    if rng.gen_bool(0.3) {
        return Vec::new();
    }
    let picked: Vec<u64> = (0..l).filter(|_| rng.gen_bool(0.4)).collect();
    if picked.is_empty() {
        vec![rng.gen_range(0..l)]
    } else {
        picked
    }
}

impl Sampled for ZMetric {
    fn count(plan: &SeedPlan) -> usize {
        plan.epsets
    }

    fn injected() -> Vec<EPSet> {
        let evens_up = EPSet::tail_ap(0, 2).expect("valid");
        vec![
            EPSet::empty(),
            EPSet::all(),
            EPSet::singleton(0),
            EPSet::singleton(5),
            EPSet::finite(0..10),
            EPSet::ray_up(0),
            EPSet::ray_down(1),
            EPSet::evens(),
            evens_up.clone(),
            EPSet::tail_ap(1, 2).expect("valid"),
            evens_up.reflect(),
        ]
    }

    fn random(rng: &mut ChaCha8Rng, _plan: &SeedPlan) -> EPSet {
        let period = rng.gen_range(1..=6u64);
        let threshold = rng.gen_range(0..=10u64);
        let t = threshold as i64;
        let exceptions = (-t + 1..t).filter(|_| rng.gen_bool(0.2)).collect();
        let raw = RawEPSet {
            period,
            pos: residues(rng, period),
            neg: residues(rng, period),
            threshold,
            exceptions,
        };
        EPSet::normalize(raw).expect("generated data is valid")
    }

    fn random_finite(rng: &mut ChaCha8Rng, _plan: &SeedPlan) -> EPSet {
        let n = rng.gen_range(0..=4);
        EPSet::finite((0..n).map(|_| rng.gen_range(-12..=12)))
    }

    fn perturb(a: &EPSet, rng: &mut ChaCha8Rng, plan: &SeedPlan) -> EPSet {
        if a.is_empty() {
            return EPSet::empty();
        }
        let f = Self::random_finite(rng, plan);
        match rng.gen_range(0..4) {
            0 => crate::backends::zmetric::image(rng.gen_range(1..=4), a),
            1 if !a.is_finite() => a.diff(&f),
            2 => a.union(&f),
            _ => {
                let k = rng.gen_range(1..=6u64);
                let class = EPSet::residue_class(rng.gen_range(0..k as i64), k).expect("valid");
                a.union(&crate::backends::zmetric::image(2, a).inter(&class))
            }
        }
    }
}

fn grid_point(rng: &mut ChaCha8Rng, den: i64, max: i64) -> Rat {
    rat(rng.gen_range(0..=max * den), den)
}

fn random_discrete(rng: &mut ChaCha8Rng, den: i64) -> DiscreteSet {
    let mut d = DiscreteSet::empty();
    if rng.gen_bool(0.5) {
        let &(p, q) = STEPS.choose(rng).expect("nonempty");
        let ap = RatAP::new(grid_point(rng, den, 10), rat(p, q)).expect("valid");
        d = d.union(&DiscreteSet::from_ap(&ap));
    }
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(1..=3);
        let pts: Vec<Rat> = (0..n).map(|_| grid_point(rng, den, 12)).collect();
        d = d.union(&DiscreteSet::points(&pts).expect("nonnegative"));
    }
    d
}

impl Sampled for QHalfline {
    fn count(plan: &SeedPlan) -> usize {
        plan.qsets
    }

    fn injected() -> Vec<QSet> {
        let nat = QSet::naturals();
        let ray = QSet::interval(int(3), None, false, true).expect("valid");
        vec![
            QSet::empty(),
            QSet::all(),
            QSet::points(&[int(0)]).expect("valid"),
            QSet::points(&[rat(1, 2)]).expect("valid"),
            unit_interval(),
            off_naturals(),
            nat.clone(),
            QSet::ap(&RatAP::new(rat(1, 2), int(1)).expect("valid")),
            ray.clone(),
            ray.diff(&nat),
            unit_interval().union(&nat),
            QSet::ap(&RatAP::new(int(0), rat(1, 2)).expect("valid")),
        ]
    }

    fn random(rng: &mut ChaCha8Rng, plan: &SeedPlan) -> QSet {
        let den = plan.max_den;
        let mut ivs = Vec::new();
        for _ in 0..rng.gen_range(0..=2) {
            let (a, b) = (grid_point(rng, den, 12), grid_point(rng, den, 12));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                ivs.push(
                    Interval::new(lo, Some(hi), rng.gen_bool(0.5), rng.gen_bool(0.5))
                        .expect("valid"),
                );
            }
        }
        if rng.gen_bool(0.3) {
            ivs.push(
                Interval::new(grid_point(rng, den, 10), None, rng.gen_bool(0.5), true)
                    .expect("valid"),
            );
        }
        let removed = random_discrete(rng, den);
        let added = random_discrete(rng, den);
        QSet::from_parts(&IntervalSet::from_intervals(ivs), &removed, &added)
    }

    fn random_finite(rng: &mut ChaCha8Rng, plan: &SeedPlan) -> QSet {
        let n = rng.gen_range(0..=4);
        let pts: Vec<Rat> = (0..n).map(|_| grid_point(rng, plan.max_den, 12)).collect();
        QSet::points(&pts).expect("nonnegative")
    }

    fn perturb(a: &QSet, rng: &mut ChaCha8Rng, plan: &SeedPlan) -> QSet {
        if a.is_empty() {
            return QSet::empty();
        }
        let f = Self::random_finite(rng, plan);
        match rng.gen_range(0..3) {
            0 => {
                let c = grid_point(rng, plan.max_den, 4);
                crate::backends::halfline::image_by(&c, a)
            }
            1 if !a.is_finite() => a.diff(&f),
            _ => a.union(&f),
        }
    }
}

/// Candidates `C` with `(0, 1) ≺ C`: everything outside a generated discrete set.
pub fn gen_cocountable(plan: &SeedPlan, rng: &mut ChaCha8Rng, n: usize) -> Vec<QSet> {
    let mut out = vec![
        off_naturals(),
        QSet::all(),
        QSet::ap(&RatAP::new(int(0), rat(1, 2)).expect("valid")).complement(),
    ];
    while out.len() < n {
        let mut d = random_discrete(rng, plan.max_den);
        if rng.gen_bool(0.5) {
            d = d.union(&random_discrete(rng, plan.max_den));
        }
        out.push(QSet::from_discrete(d).complement());
    }
    out
}

/// Predicates on ℤ: exact sets viewed through their predicates plus a few sparse sets.
pub fn gen_generator_sets(plan: &SeedPlan, rng: &mut ChaCha8Rng) -> Vec<GeneratorSet> {
    let mut out = vec![GeneratorSet::squares(), GeneratorSet::powers_of_two()];
    out.extend(
        gen_sets::<ZMetric>(plan, rng)
            .iter()
            .map(GeneratorSet::from_epset),
    );
    out
}
