//! Coarse structures the deciders run on.
//!
//! Two exact backends ([`zmetric`] on ℤ, [`halfline`] on ℚ≥0) and a windowed
//! one over predicates on ℤ. Every structure here is generated by a family
//! of entourages ([`EntourageSpec`]); relations only ever quantify over
//! those generators.

pub mod grid;
pub mod halfline;
pub mod windowed;
pub mod zmetric;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use num::Signed;

use crate::rat::{self, Rat};
use crate::setalg_q::QSet;
use crate::setalg_z::EPSet;
pub use windowed::{GeneratorSet, Verdict, WindowedEntourage};

/// Which coarse space a set lives in.
#[derive(
    Debug,
    Clone,
    Copy,
    PartialEq,
    Eq,
    Hash,
    PartialOrd,
    Ord,
    Serialize,
    Deserialize,
    clap::ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum BackendKind {
    ZMetric,
    QHalfline,
    Windowed,
}

impl BackendKind {
    pub fn name(self) -> &'static str {
        match self {
            BackendKind::ZMetric => "z-metric",
            BackendKind::QHalfline => "q-halfline",
            BackendKind::Windowed => "windowed",
        }
    }

    /// Whether verdicts are always `True` or `False`.
    pub fn is_exact(self) -> bool {
        !matches!(self, BackendKind::Windowed)
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A set together with the backend it belongs to.
#[derive(Debug, Clone)]
pub enum AnySet {
    Z(EPSet),
    Q(QSet),
    W(GeneratorSet),
}

impl AnySet {
    pub fn kind(&self) -> BackendKind {
        match self {
            AnySet::Z(_) => BackendKind::ZMetric,
            AnySet::Q(_) => BackendKind::QHalfline,
            AnySet::W(_) => BackendKind::Windowed,
        }
    }

    pub fn as_z(&self) -> Result<&EPSet> {
        match self {
            AnySet::Z(s) => Ok(s),
            other => Err(mismatch(BackendKind::ZMetric, other.kind())),
        }
    }

    pub fn as_q(&self) -> Result<&QSet> {
        match self {
            AnySet::Q(s) => Ok(s),
            other => Err(mismatch(BackendKind::QHalfline, other.kind())),
        }
    }

    pub fn as_w(&self) -> Result<&GeneratorSet> {
        match self {
            AnySet::W(s) => Ok(s),
            other => Err(mismatch(BackendKind::Windowed, other.kind())),
        }
    }

    /// JSON form used in reports and CLI output.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            AnySet::Z(s) => serde_json::to_value(s).expect("sets serialize"),
            AnySet::Q(s) => serde_json::to_value(s).expect("sets serialize"),
            AnySet::W(s) => serde_json::json!({ "generator": s.description() }),
        }
    }
}

pub(crate) fn mismatch(want: BackendKind, got: BackendKind) -> Error {
    Error::ClassMismatch(format!("expected a {want} set, got a {got} set"))
}

/// A generating entourage of one of the backends.
#[derive(Debug, Clone)]
pub enum EntourageSpec {
    /// `{(x, y) : |x − y| < r}` on ℤ.
    Metric {
        r: u64,
    },
    /// The diagonal together with `{(x, y) : y − x = ±c, min(x, y) ≥ t}` for each offset `c`.
    HalfLine {
        offsets: BTreeSet<Rat>,
        threshold: Rat,
    },
    Windowed(WindowedEntourage),
}

impl EntourageSpec {
    pub fn metric(r: u64) -> EntourageSpec {
        EntourageSpec::Metric { r }
    }

    /// Half-line generator with threshold 0; the zero offset is always present.
    pub fn halfline(offsets: impl IntoIterator<Item = Rat>) -> EntourageSpec {
        let mut offsets: BTreeSet<Rat> = offsets.into_iter().collect();
        offsets.insert(rat::zero());
        EntourageSpec::HalfLine {
            offsets,
            threshold: rat::zero(),
        }
    }

    pub fn kind(&self) -> BackendKind {
        match self {
            EntourageSpec::Metric { .. } => BackendKind::ZMetric,
            EntourageSpec::HalfLine { .. } => BackendKind::QHalfline,
            EntourageSpec::Windowed(_) => BackendKind::Windowed,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            EntourageSpec::Metric { r } => serde_json::json!({ "r": r }),
            EntourageSpec::HalfLine { offsets, threshold } => serde_json::json!({
                "offsets": offsets.iter().map(rat::fmt_rat).collect::<Vec<_>>(),
                "threshold": rat::fmt_rat(threshold),
            }),
            EntourageSpec::Windowed(w) => serde_json::json!({
                "reach": w.reach(),
                "description": w.description(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntourageOp {
    Compose,
    Invert,
    Union,
}

/// Symmetric offsets `±c`, always including 0.
pub(crate) fn symmetric(offsets: &BTreeSet<Rat>) -> BTreeSet<Rat> {
    let mut out: BTreeSet<Rat> = offsets.iter().flat_map(|c| [*c, -*c]).collect();
    out.insert(rat::zero());
    out
}

/// A generator containing `E ∘ F`, `E⁻¹` or `E ∪ F`. `Invert` ignores `f`.
pub fn entourage_ops(
    op: EntourageOp,
    e: &EntourageSpec,
    f: &EntourageSpec,
) -> Result<EntourageSpec> {
    use EntourageSpec::*;
    if op == EntourageOp::Invert {
        return Ok(match e {
            Metric { r } => Metric { r: *r },
            HalfLine { offsets, threshold } => HalfLine {
                offsets: offsets.iter().map(|c| -*c).collect(),
                threshold: *threshold,
            },
            Windowed(w) => Windowed(w.inverse()),
        });
    }
    match (e, f) {
        (Metric { r }, Metric { r: s }) => Ok(match op {
            EntourageOp::Compose => Metric {
                r: if *r == 0 || *s == 0 { 0 } else { r + s - 1 },
            },
            _ => Metric { r: *r.max(s) },
        }),
        (
            HalfLine {
                offsets: o1,
                threshold: t1,
            },
            HalfLine {
                offsets: o2,
                threshold: t2,
            },
        ) => {
            let offsets = match op {
                EntourageOp::Compose => {
                    let (s1, s2) = (symmetric(o1), symmetric(o2));
                    s1.iter()
                        .flat_map(|a| s2.iter().map(move |b| *a + *b))
                        .collect()
                }
                _ => o1.union(o2).copied().collect(),
            };
            Ok(HalfLine {
                offsets,
                threshold: (*t1).min(*t2),
            })
        }
        (Windowed(a), Windowed(b)) => Ok(Windowed(match op {
            EntourageOp::Compose => a.compose(b),
            _ => a.union(b),
        })),
        _ => Err(Error::MixedEntourages(format!(
            "{} and {}",
            e.kind(),
            f.kind()
        ))),
    }
}

/// Boundedness in the backend's bornology.
pub fn bounded(a: &AnySet) -> Verdict {
    match a {
        AnySet::Z(s) => zmetric::bounded(s).into(),
        AnySet::Q(s) => halfline::bounded(s).into(),
        AnySet::W(s) => windowed::bounded(s, windowed::DEFAULT_WINDOW),
    }
}

/// `E[A]`.
pub fn image(e: &EntourageSpec, a: &AnySet) -> Result<AnySet> {
    match (e, a) {
        (EntourageSpec::Metric { r }, AnySet::Z(s)) => Ok(AnySet::Z(zmetric::image(*r, s))),
        (EntourageSpec::HalfLine { offsets, threshold }, AnySet::Q(s)) => {
            Ok(AnySet::Q(halfline::image(offsets, threshold, s)))
        }
        (EntourageSpec::Windowed(w), AnySet::W(s)) => Ok(AnySet::W(w.image(s))),
        _ => Err(mismatch(e.kind(), a.kind())),
    }
}

/// A generator containing the pair `(x, y)`, if the backend has one.
pub fn covering_entourage(kind: BackendKind, x: &Rat, y: &Rat) -> Option<EntourageSpec> {
    match kind {
        BackendKind::ZMetric | BackendKind::Windowed => {
            if !x.is_integer() || !y.is_integer() {
                return None;
            }
            let r = (x - y).abs().to_integer().unsigned_abs() + 1;
            Some(if kind == BackendKind::ZMetric {
                EntourageSpec::metric(r)
            } else {
                EntourageSpec::Windowed(WindowedEntourage::ball(r))
            })
        }
        BackendKind::QHalfline => {
            if !rat::is_nonneg(x) || !rat::is_nonneg(y) {
                return None;
            }
            Some(EntourageSpec::halfline([*y - *x]))
        }
    }
}

/// Whether every probe pair lies in some generator, and each found generator really contains it.
pub fn connectivity_check(kind: BackendKind, probes: &[(Rat, Rat)]) -> bool {
    probes.iter().all(|(x, y)| {
        covering_entourage(kind, x, y).is_some_and(|e| match e {
            EntourageSpec::Metric { r } => (x - y).abs() < Rat::from_integer(r as i64),
            EntourageSpec::HalfLine { offsets, threshold } => {
                x == y || (symmetric(&offsets).contains(&(*y - *x)) && (*x).min(*y) >= threshold)
            }
            EntourageSpec::Windowed(w) => w.relates(x.to_integer(), y.to_integer()),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn metric_composition_adds_distances() {
        let e = entourage_ops(
            EntourageOp::Compose,
            &EntourageSpec::metric(2),
            &EntourageSpec::metric(3),
        )
        .unwrap();
        assert!(matches!(e, EntourageSpec::Metric { r: 4 }));
        let e = entourage_ops(
            EntourageOp::Compose,
            &EntourageSpec::metric(0),
            &EntourageSpec::metric(3),
        )
        .unwrap();
        assert!(matches!(e, EntourageSpec::Metric { r: 0 }));
    }

    #[test]
    fn halfline_inverse_and_union() {
        let e = EntourageSpec::HalfLine {
            offsets: [rat(1, 2)].into(),
            threshold: int(0),
        };
        let inv = entourage_ops(EntourageOp::Invert, &e, &e).unwrap();
        match inv {
            EntourageSpec::HalfLine { offsets, .. } => assert_eq!(offsets, [rat(-1, 2)].into()),
            _ => unreachable!(),
        }
        let f = EntourageSpec::HalfLine {
            offsets: [int(1)].into(),
            threshold: int(0),
        };
        match entourage_ops(EntourageOp::Union, &f, &e).unwrap() {
            EntourageSpec::HalfLine { offsets, .. } => {
                assert_eq!(offsets, [rat(1, 2), int(1)].into())
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn mixed_variants_are_rejected() {
        let e = EntourageSpec::metric(1);
        let f = EntourageSpec::halfline([int(1)]);
        assert!(matches!(
            entourage_ops(EntourageOp::Union, &e, &f),
            Err(Error::MixedEntourages(_))
        ));
    }

    #[test]
    fn connectivity_examples() {
        assert!(connectivity_check(
            BackendKind::ZMetric,
            &[(int(0), int(7))]
        ));
        match covering_entourage(BackendKind::ZMetric, &int(0), &int(7)).unwrap() {
            EntourageSpec::Metric { r } => assert_eq!(r, 8),
            _ => unreachable!(),
        }
        assert!(connectivity_check(
            BackendKind::QHalfline,
            &[(rat(1, 3), rat(5, 2))]
        ));
        match covering_entourage(BackendKind::QHalfline, &rat(1, 3), &rat(5, 2)).unwrap() {
            EntourageSpec::HalfLine { offsets, .. } => assert!(offsets.contains(&rat(13, 6))),
            _ => unreachable!(),
        }
        assert!(!connectivity_check(
            BackendKind::QHalfline,
            &[(int(-1), int(2))]
        ));
    }
}
