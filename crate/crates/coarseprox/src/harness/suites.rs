//! The suites, written once against [`Space`] and instantiated per backend.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::gen::{gen_cocountable, gen_sets, Sampled};
use super::{CheckReport, SeedPlan, Tally};
use crate::backends::zmetric;
use crate::normality::{
    halfline_interpolant, interpolate, interpolate_star, nonnormality_certificate, off_naturals,
    split_asymptotic, unit_interval, Certificate, TRACE_FLOOR,
};
use crate::relations::{self, z, BMode, PrecMode, QHalfline, Space, ZMetric};
use crate::setalg_q::QSet;
use crate::setalg_z::EPSet;

/// How the proximity suite evaluates closeness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BEvaluator {
    /// The backend's own rule.
    Native,
    /// Recovered from `≺` (computed through entourage images).
    Derived,
}

/// Backend hooks for the parts of the suites that are not generic.
pub trait Checked: Sampled {
    /// Some `C` with `A ≺ C ≺ B`, when one exists.
    fn interpolant(a: &Self::Set, b: &Self::Set) -> Option<Self::Set>;

    /// `A₁, A₂` with `B₁ λ A₁`, `B₂ λ A₂` and `A = A₁ ∪ A₂`, given `(B₁ ∪ B₂) λ A`.
    fn decompose(
        _b1: &Self::Set,
        _b2: &Self::Set,
        _a: &Self::Set,
    ) -> Option<(Self::Set, Self::Set)> {
        None
    }

    /// Witness constructions on one pair.
    fn normality_probes(_a: &Self::Set, _b: &Self::Set, _t: &mut Tally) {}

    /// Extra neighbourhood checks that need their own instances.
    fn nbhd_extra(_plan: &SeedPlan, _t: &mut Tally) {}
}

impl Checked for ZMetric {
    fn interpolant(a: &EPSet, b: &EPSet) -> Option<EPSet> {
        interpolate(a, b).ok().map(|w| w.c)
    }

    fn decompose(b1: &EPSet, b2: &EPSet, a: &EPSet) -> Option<(EPSet, EPSet)> {
        let r = z::lambda_radius(&b1.union(b2), a)?;
        let a1 = a.inter(&zmetric::image(r, b1));
        let a2 = a.diff(&a1).union(&a.inter(&zmetric::image(r, b2)));
        Some((a1, a2))
    }

    fn normality_probes(a: &EPSet, b: &EPSet, t: &mut Tally) {
        let here = || inst::<ZMetric>(&[("A", a), ("B", b)]);
        if ZMetric::prec(a, b) {
            let ok = interpolate(a, b)
                .map(|w| {
                    Certificate::Normal {
                        a: a.clone(),
                        b: b.clone(),
                        witness: w,
                    }
                    .validate()
                    .is_ok()
                })
                .unwrap_or(false);
            t.check("crosscheck.interpolate", ok, here);
            let inner = a.inter(b);
            let ok = interpolate_star(&inner, b)
                .map(|c| {
                    Certificate::Star {
                        a: inner.clone(),
                        b: b.clone(),
                        c,
                    }
                    .validate()
                    .is_ok()
                })
                .unwrap_or(false);
            t.check("crosscheck.star", ok, here);
        }
        if !ZMetric::b(a, b) {
            let ok = match split_asymptotic(a, b) {
                Ok((x1, x2)) => {
                    let interpolates = ZMetric::prec(a, &x2) && ZMetric::prec(&x2, &b.complement());
                    let cert = Certificate::Split {
                        a1: a.clone(),
                        a2: b.clone(),
                        x1,
                        x2,
                    };
                    interpolates && cert.validate().is_ok()
                }
                Err(_) => false,
            };
            t.check("crosscheck.split", ok, here);
        }
    }
}

impl Checked for QHalfline {
    fn interpolant(a: &QSet, b: &QSet) -> Option<QSet> {
        halfline_interpolant(a, b).ok().flatten()
    }

    fn nbhd_extra(plan: &SeedPlan, t: &mut Tally) {
        certify_candidates(plan, t);
    }
}

fn inst<S: Space>(named: &[(&str, &S::Set)]) -> Value {
    let mut m = Map::new();
    for (k, v) in named {
        m.insert(
            k.to_string(),
            serde_json::to_value(v).expect("sets serialize"),
        );
    }
    Value::Object(m)
}

/// The instance each expected half-line failure must be reported on.
pub fn canonical_instance(clause: &str) -> Value {
    let a = unit_interval();
    let b = if clause == "proximity.strong" {
        QSet::naturals()
    } else {
        off_naturals()
    };
    inst::<QHalfline>(&[("A", &a), ("B", &b)])
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

/// All pairs of injected sets, then random pairs up to the plan's count.
fn pairs<S: Sampled>(
    plan: &SeedPlan,
    rng: &mut ChaCha8Rng,
    sets: &[S::Set],
) -> Vec<(S::Set, S::Set)> {
    let injected = S::injected();
    let mut out: Vec<(S::Set, S::Set)> = injected
        .iter()
        .flat_map(|a| injected.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    while out.len() < plan.pairs {
        out.push((pick(rng, sets).clone(), pick(rng, sets).clone()));
    }
    out
}

fn triples<S: Sampled>(plan: &SeedPlan, rng: &mut ChaCha8Rng, sets: &[S::Set]) -> Vec<[S::Set; 3]> {
    (0..plan.triples)
        .map(|_| {
            [
                pick(rng, sets).clone(),
                pick(rng, sets).clone(),
                pick(rng, sets).clone(),
            ]
        })
        .collect()
}

fn tally_all<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Tally {
    items
        .par_iter()
        .map(|x| {
            let mut t = Tally::default();
            f(x, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

pub fn check_bornology<S: Checked>(plan: &SeedPlan) -> CheckReport {
    let mut rng = plan.rng("bornology");
    let sets = gen_sets::<S>(plan, &mut rng);
    let finite: Vec<S::Set> = (0..plan.pairs)
        .map(|_| S::random_finite(&mut rng, plan))
        .collect();
    let pairs = pairs::<S>(plan, &mut rng, &sets);

    let mut t = tally_all(&finite, |f, t| {
        t.check("bornology.finite", S::bounded(f), || inst::<S>(&[("A", f)]));
        t.check(
            "bornology.cobounded",
            !S::bounded(&S::complement(f)),
            || inst::<S>(&[("A", f)]),
        );
    });
    t = t.merge(tally_all(&pairs, |(a, b), t| {
        let here = || inst::<S>(&[("A", a), ("B", b)]);
        if S::bounded(a) {
            t.check("bornology.subset", S::bounded(&S::inter(a, b)), here);
            if S::bounded(b) {
                t.check("bornology.union", S::bounded(&S::union(a, b)), here);
            }
        }
        let asym = relations::asym_bounded(&S::wrap(a)).exact();
        t.check("bornology.asymptotic", asym == Some(S::bounded(a)), || {
            inst::<S>(&[("A", a)])
        });
    }));
    t.into_report("bornology", S::KIND, plan, finite.len() + pairs.len())
}

fn evaluator<S: Space>(which: BEvaluator) -> impl Fn(&S::Set, &S::Set) -> bool + Sync {
    move |a: &S::Set, b: &S::Set| match which {
        BEvaluator::Native => S::b(a, b),
        BEvaluator::Derived => {
            relations::derive_b_from_nbhd::<S>(|x, y| S::prec_mode(x, y, PrecMode::Image).holds())(
                a, b,
            )
        }
    }
}

pub fn check_coarse_proximity<S: Checked>(which: BEvaluator, plan: &SeedPlan) -> CheckReport {
    let mut rng = plan.rng("proximity");
    let sets = gen_sets::<S>(plan, &mut rng);
    let pairs = pairs::<S>(plan, &mut rng, &sets);
    let triples = triples::<S>(plan, &mut rng, &sets);
    let pool: Vec<S::Set> = sets
        .iter()
        .flat_map(|s| [s.clone(), S::complement(s)])
        .collect();
    let b = evaluator::<S>(which);

    let mut t = tally_all(&pairs, |(x, y), t| {
        let here = || inst::<S>(&[("A", x), ("B", y)]);
        let bxy = b(x, y);
        t.check("proximity.symmetry", bxy == b(y, x), here);
        if bxy {
            t.check(
                "proximity.unbounded",
                !S::bounded(x) && !S::bounded(y),
                here,
            );
        }
        if !S::bounded(&S::inter(x, y)) {
            t.check("proximity.overlap", bxy, here);
        }
        if !bxy {
            let far = |e: &S::Set| !b(x, e) && !b(&S::complement(e), y);
            match S::interpolant(x, &S::complement(y)) {
                Some(c) => t.check("proximity.strong", far(&S::complement(&c)), here),
                None => {
                    t.check("proximity.strong", false, here);
                    t.oracle("proximity.strong-search", !pool.iter().any(far), here);
                }
            }
        }
    });
    t = t.merge(tally_all(&triples, |[x, y, z], t| {
        let here = || inst::<S>(&[("A", x), ("B", y), ("C", z)]);
        let joint = b(x, &S::union(y, z));
        let split = b(x, y) || b(x, z);
        if joint {
            t.check("proximity.union-forward", split, here);
        }
        if split {
            t.check("proximity.union-backward", joint, here);
        }
    }));
    t.into_report("proximity", S::KIND, plan, pairs.len() + triples.len())
}

/// Pairs with `A ≺ B`, built from pairs that are far apart.
fn prec_pairs<S: Space>(pairs: &[(S::Set, S::Set)]) -> Vec<(S::Set, S::Set)> {
    pairs
        .iter()
        .filter(|(a, c)| !S::b(a, c))
        .map(|(a, c)| (a.clone(), S::complement(c)))
        .collect()
}

pub fn check_nbhd_properties<S: Checked>(plan: &SeedPlan) -> CheckReport {
    let mut rng = plan.rng("nbhd");
    let sets = gen_sets::<S>(plan, &mut rng);
    let mut pairs = pairs::<S>(plan, &mut rng, &sets);
    pairs.extend(prec_pairs::<S>(&pairs));
    let probes: Vec<[S::Set; 4]> = pairs
        .iter()
        .map(|(a, b)| {
            [
                a.clone(),
                b.clone(),
                pick(&mut rng, &sets).clone(),
                S::random_finite(&mut rng, plan),
            ]
        })
        .collect();

    let mut t = tally_all(&probes, |[a, b, c, d], t| {
        let here = || inst::<S>(&[("A", a), ("B", b), ("C", c), ("D", d)]);
        let x = S::everything();
        t.check("nbhd.cofinite", S::prec(&x, &S::diff(&x, d)), here);
        let ab = S::prec(a, b);
        t.check(
            "nbhd.complement",
            ab == S::prec(&S::complement(b), &S::complement(a)),
            here,
        );
        let both = ab && S::prec(a, c);
        t.check(
            "nbhd.intersection",
            both == S::prec(a, &S::inter(b, c)),
            here,
        );
        if ab {
            t.check("nbhd.remainder", S::bounded(&S::diff(a, b)), here);
            t.check(
                "nbhd.monotone",
                S::prec(&S::inter(a, c), &S::union(b, d)),
                here,
            );
            let ok = S::interpolant(a, b).is_some_and(|m| S::prec(a, &m) && S::prec(&m, b));
            t.check("nbhd.interpolation", ok, || {
                inst::<S>(&[("A", a), ("B", b)])
            });
        }
    });
    let mut extra = Tally::default();
    S::nbhd_extra(plan, &mut extra);
    t = t.merge(extra);
    t.into_report("nbhd", S::KIND, plan, probes.len())
}

pub fn check_asym_resemblance<S: Checked>(plan: &SeedPlan) -> CheckReport {
    let mut rng = plan.rng("resemblance");
    let sets = gen_sets::<S>(plan, &mut rng);
    let chains: Vec<[S::Set; 3]> = sets
        .iter()
        .map(|a| {
            let b = S::perturb(a, &mut rng, plan);
            let c = S::perturb(&b, &mut rng, plan);
            [a.clone(), b, c]
        })
        .collect();
    let n = plan.pairs;
    let quads: Vec<[S::Set; 4]> = (0..n)
        .map(|_| {
            let (a1, a2) = (pick(&mut rng, &sets).clone(), pick(&mut rng, &sets).clone());
            let (b1, b2) = (
                S::perturb(&a1, &mut rng, plan),
                S::perturb(&a2, &mut rng, plan),
            );
            [a1, b1, a2, b2]
        })
        .collect();
    let random = triples::<S>(plan, &mut rng, &sets);
    let nonempty: Vec<S::Set> = sets
        .iter()
        .filter(|s| **s != S::nothing())
        .cloned()
        .collect();
    let splits: Vec<[S::Set; 3]> = (0..n)
        .map(|_| {
            let (b1, b2) = (
                pick(&mut rng, &nonempty).clone(),
                pick(&mut rng, &nonempty).clone(),
            );
            let a = S::perturb(&S::union(&b1, &b2), &mut rng, plan);
            [b1, b2, a]
        })
        .collect();

    let mut t = tally_all(&chains, |[a, b, c], t| {
        let here = || inst::<S>(&[("A", a), ("B", b), ("C", c)]);
        t.check("resemblance.reflexive", S::lambda(a, a), || {
            inst::<S>(&[("A", a)])
        });
        t.check(
            "resemblance.perturbation",
            S::lambda(a, b) && S::lambda(b, c),
            here,
        );
        t.check("resemblance.transitive", S::lambda(a, c), here);
    });
    t = t.merge(tally_all(&random, |[a, b, c], t| {
        let here = || inst::<S>(&[("A", a), ("B", b), ("C", c)]);
        let ab = S::lambda(a, b);
        t.check("resemblance.symmetric", ab == S::lambda(b, a), here);
        if ab && S::lambda(b, c) {
            t.check("resemblance.transitive", S::lambda(a, c), here);
        }
    }));
    t = t.merge(tally_all(&quads, |[a1, b1, a2, b2], t| {
        let here = || inst::<S>(&[("A1", a1), ("B1", b1), ("A2", a2), ("B2", b2)]);
        t.check(
            "resemblance.union",
            S::lambda(&S::union(a1, a2), &S::union(b1, b2)),
            here,
        );
    }));
    t = t.merge(tally_all(&splits, |[b1, b2, a], t| {
        let here = || inst::<S>(&[("B1", b1), ("B2", b2), ("A", a)]);
        let Some((a1, a2)) = S::decompose(b1, b2, a) else {
            return;
        };
        let nothing = S::nothing();
        let ok = S::lambda(&S::union(b1, b2), a)
            && S::lambda(b1, &a1)
            && S::lambda(b2, &a2)
            && S::union(&a1, &a2) == *a
            && a1 != nothing
            && a2 != nothing;
        t.check("resemblance.decomposition", ok, here);
    }));
    t.into_report(
        "resemblance",
        S::KIND,
        plan,
        chains.len() + random.len() + quads.len() + splits.len(),
    )
}

/// `≺` ignores finite changes on either side.
fn finite_invariance<S: Checked>(
    plan: &SeedPlan,
    rng: &mut ChaCha8Rng,
    sets: &[S::Set],
) -> (usize, Tally) {
    let mut base = pairs::<S>(plan, rng, sets);
    base.extend(prec_pairs::<S>(&base.clone()));
    let probes: Vec<_> = base
        .into_iter()
        .map(|(a, b)| {
            (
                a,
                b,
                S::random_finite(rng, plan),
                S::random_finite(rng, plan),
            )
        })
        .collect();
    let t = tally_all(&probes, |(a, b, d1, d2), t| {
        let here = || inst::<S>(&[("A", a), ("B", b), ("D1", d1), ("D2", d2)]);
        let v = S::prec(a, b);
        t.check(
            "invariance.grow-shrink",
            v == S::prec(&S::union(a, d1), &S::diff(b, d2)),
            here,
        );
        t.check(
            "invariance.shrink-grow",
            v == S::prec(&S::diff(a, d1), &S::union(b, d2)),
            here,
        );
    });
    (probes.len(), t)
}

pub fn check_finite_invariance<S: Checked>(plan: &SeedPlan) -> CheckReport {
    let mut rng = plan.rng("invariance");
    let sets = gen_sets::<S>(plan, &mut rng);
    let (n, t) = finite_invariance::<S>(plan, &mut rng, &sets);
    t.into_report("invariance", S::KIND, plan, n)
}

pub fn crosscheck<S: Checked>(plan: &SeedPlan) -> CheckReport {
    let mut rng = plan.rng("crosscheck");
    let sets = gen_sets::<S>(plan, &mut rng);
    let pairs = pairs::<S>(plan, &mut rng, &sets);
    let derived = evaluator::<S>(BEvaluator::Derived);

    let mut t = tally_all(&pairs, |(a, b), t| {
        let here = || inst::<S>(&[("A", a), ("B", b)]);
        let p = S::prec(a, b);
        let modes = [PrecMode::Image, PrecMode::Disjoint, PrecMode::Pairs];
        t.check(
            "crosscheck.prec-modes",
            modes.iter().all(|&m| S::prec_mode(a, b, m).holds() == p),
            here,
        );
        let c = S::b(a, b);
        let modes = [BMode::Image, BMode::Resemblance, BMode::Pairs];
        t.check(
            "crosscheck.b-modes",
            modes.iter().all(|&m| S::b_mode(a, b, m).holds() == c),
            here,
        );
        t.check("crosscheck.derived-b", derived(a, b) == c, here);
        let back = relations::nbhd_from_b::<S>(&derived)(a, b);
        t.check("crosscheck.round-trip", back == p, here);
        S::normality_probes(a, b, t);
    });
    let oracle_pairs = &pairs[..pairs.len().min(300)];
    t = t.merge(tally_all(oracle_pairs, |(a, b), t| {
        for &w in &plan.windows {
            let here = || json!({"A": a, "B": b, "window": w});
            t.oracle(
                "oracle.bounded",
                S::oracle_bounded(a, w) == S::bounded(a),
                here,
            );
            t.oracle("oracle.b", S::oracle_b(a, b, w) == S::b(a, b), here);
            t.oracle(
                "oracle.lambda",
                S::oracle_lambda(a, b, w) == S::lambda(a, b),
                here,
            );
            t.oracle(
                "oracle.prec",
                S::oracle_prec(a, b, w) == S::prec(a, b),
                here,
            );
        }
    }));
    let (n, inv) = finite_invariance::<S>(plan, &mut rng, &sets);
    t = t.merge(inv);
    t.into_report("crosscheck", S::KIND, plan, pairs.len() + n)
}

fn certify_candidates(plan: &SeedPlan, t: &mut Tally) {
    let mut rng = plan.rng("certificates");
    let a = unit_interval();
    let b = off_naturals();
    for c in gen_cocountable(plan, &mut rng, TRACE_FLOOR.max(plan.qsets)) {
        let here = || inst::<QHalfline>(&[("A", &a), ("C", &c)]);
        if !QHalfline::prec(&a, &c) {
            t.check("normality.candidate", false, here);
            continue;
        }
        let ok = nonnormality_certificate(&c, TRACE_FLOOR).is_ok_and(|cert| {
            Certificate::Nonnormal(cert).validate().is_ok() && !QHalfline::prec(&c, &b)
        });
        t.check("normality.certificate", ok, here);
    }
}

/// Certificates for every generated candidate `C` with `(0, 1) ≺ C`.
pub fn check_nonnormality(plan: &SeedPlan) -> CheckReport {
    let mut t = Tally::default();
    certify_candidates(plan, &mut t);
    let n = t.checked.values().sum();
    t.into_report("nonnormality", QHalfline::KIND, plan, n)
}
