//! Binary relations between subsets of a coarse space: resemblance `λ`,
//! closeness `b`, the neighbourhood relation `≺` and `≪`.

pub mod q;
pub mod z;

use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::backends::{grid, windowed, AnySet, BackendKind, EntourageSpec, GeneratorSet, Verdict};
use crate::error::{Error, Result};
use crate::setalg_q::QSet;
use crate::setalg_z::EPSet;

/// Which characterization produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// A closed-form rule on the representation.
    Closed,
    /// Images of entourages.
    Image,
    /// Resembling unbounded subsets of `A` and the complement of `B`.
    Disjoint,
    /// Bounded sets separating the pairs an entourage joins.
    Pairs,
    /// Resembling unbounded subsets of `A` and `B`.
    Resemblance,
    /// Windowed probes.
    Window,
}

/// Data backing a verdict; each variant can be rechecked by direct computation.
#[derive(Debug, Clone)]
pub enum Witness {
    /// The generator realizing a resemblance.
    Entourage(EntourageSpec),
    /// `E[A] ⊆ B ∪ K` with `K` bounded.
    Remainder {
        entourage: EntourageSpec,
        bounded: AnySet,
    },
    /// An unbounded set inside `E[A]` and the other side.
    Trace {
        entourage: EntourageSpec,
        trace: AnySet,
    },
    /// Unbounded subsets that resemble each other.
    Subsets {
        left: AnySet,
        right: AnySet,
        entourage: Option<EntourageSpec>,
    },
    /// For each probed entourage, the bounded set of points it joins across.
    Separators(Vec<(EntourageSpec, AnySet)>),
    /// An entourage joining infinitely many points across.
    Unseparated {
        entourage: EntourageSpec,
        pairs: AnySet,
    },
    /// What a window showed.
    Observed { window: u64, holds_in_window: bool },
}

impl Witness {
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            Witness::Entourage(e) => json!({ "entourage": e.to_json() }),
            Witness::Remainder { entourage, bounded } => {
                json!({ "entourage": entourage.to_json(), "bounded": bounded.to_json() })
            }
            Witness::Trace { entourage, trace } => {
                json!({ "entourage": entourage.to_json(), "unbounded_trace": trace.to_json() })
            }
            Witness::Subsets {
                left,
                right,
                entourage,
            } => json!({
                "left": left.to_json(),
                "right": right.to_json(),
                "entourage": entourage.as_ref().map(EntourageSpec::to_json),
            }),
            Witness::Separators(list) => json!({
                "separators": list
                    .iter()
                    .map(|(e, d)| json!({ "entourage": e.to_json(), "bounded": d.to_json() }))
                    .collect::<Vec<_>>(),
            }),
            Witness::Unseparated { entourage, pairs } => {
                json!({ "entourage": entourage.to_json(), "unbounded_pairs": pairs.to_json() })
            }
            Witness::Observed {
                window,
                holds_in_window,
            } => {
                json!({ "window": window, "holds_in_window": holds_in_window })
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct RelationResult {
    pub verdict: Verdict,
    pub mode: Mode,
    pub witness: Option<Witness>,
}

impl RelationResult {
    pub fn exact(holds: bool, mode: Mode, witness: Option<Witness>) -> RelationResult {
        RelationResult {
            verdict: holds.into(),
            mode,
            witness,
        }
    }

    fn observed(window: u64, holds_in_window: bool) -> RelationResult {
        RelationResult {
            verdict: Verdict::UnknownAtWindow(window),
            mode: Mode::Window,
            witness: Some(Witness::Observed {
                window,
                holds_in_window,
            }),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict.is_true()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": self.verdict,
            "mode": self.mode,
            "witness": self.witness.as_ref().map(Witness::to_json),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrecMode {
    Image,
    Disjoint,
    Pairs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BMode {
    Image,
    Resemblance,
    Pairs,
}

/// An exact backend seen as a space of sets with its deciders and oracles.
pub trait Space: Sync + Send + 'static {
    type Set: Clone + Debug + PartialEq + Send + Sync + Serialize + 'static;
    const KIND: BackendKind;

    fn everything() -> Self::Set;
    fn nothing() -> Self::Set;
    fn complement(a: &Self::Set) -> Self::Set;
    fn union(a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn inter(a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn diff(a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn wrap(a: &Self::Set) -> AnySet;

    fn bounded(a: &Self::Set) -> bool;
    fn lambda(a: &Self::Set, b: &Self::Set) -> bool;
    fn b(a: &Self::Set, b: &Self::Set) -> bool;
    fn prec_mode(a: &Self::Set, b: &Self::Set, mode: PrecMode) -> RelationResult;
    fn b_mode(a: &Self::Set, b: &Self::Set, mode: BMode) -> RelationResult;

    fn prec(a: &Self::Set, b: &Self::Set) -> bool {
        !Self::b(a, &Self::complement(b))
    }

    fn is_subset(a: &Self::Set, b: &Self::Set) -> bool {
        Self::diff(a, b) == Self::nothing()
    }

    fn oracle_bounded(a: &Self::Set, w: u64) -> bool;
    fn oracle_lambda(a: &Self::Set, b: &Self::Set, w: u64) -> bool;
    fn oracle_b(a: &Self::Set, b: &Self::Set, w: u64) -> bool;
    fn oracle_prec(a: &Self::Set, b: &Self::Set, w: u64) -> bool;
}

/// The metric structure on ℤ.
pub struct ZMetric;

/// The half-line structure on ℚ≥0.
pub struct QHalfline;

impl Space for ZMetric {
    type Set = EPSet;
    const KIND: BackendKind = BackendKind::ZMetric;

    fn everything() -> EPSet {
        EPSet::all()
    }
    fn nothing() -> EPSet {
        EPSet::empty()
    }
    fn complement(a: &EPSet) -> EPSet {
        a.complement()
    }
    fn union(a: &EPSet, b: &EPSet) -> EPSet {
        a.union(b)
    }
    fn inter(a: &EPSet, b: &EPSet) -> EPSet {
        a.inter(b)
    }
    fn diff(a: &EPSet, b: &EPSet) -> EPSet {
        a.diff(b)
    }
    fn wrap(a: &EPSet) -> AnySet {
        AnySet::Z(a.clone())
    }
    fn bounded(a: &EPSet) -> bool {
        a.is_finite()
    }
    fn lambda(a: &EPSet, b: &EPSet) -> bool {
        z::lambda(a, b)
    }
    fn b(a: &EPSet, b: &EPSet) -> bool {
        z::b(a, b)
    }
    fn prec_mode(a: &EPSet, b: &EPSet, mode: PrecMode) -> RelationResult {
        match mode {
            PrecMode::Image => z::prec_image(a, b),
            PrecMode::Disjoint => z::prec_disjoint(a, b),
            PrecMode::Pairs => z::prec_pairs(a, b),
        }
    }
    fn b_mode(a: &EPSet, b: &EPSet, mode: BMode) -> RelationResult {
        match mode {
            BMode::Image => z::b_image(a, b),
            BMode::Resemblance => z::b_resemblance(a, b),
            BMode::Pairs => z::b_pairs(a, b),
        }
    }
    fn oracle_bounded(a: &EPSet, w: u64) -> bool {
        windowed::observe::bounded(&GeneratorSet::from_epset(a), w)
    }
    fn oracle_lambda(a: &EPSet, b: &EPSet, w: u64) -> bool {
        windowed::observe::resemble(
            &GeneratorSet::from_epset(a),
            &GeneratorSet::from_epset(b),
            w,
        )
    }
    fn oracle_b(a: &EPSet, b: &EPSet, w: u64) -> bool {
        windowed::observe::close(
            &GeneratorSet::from_epset(a),
            &GeneratorSet::from_epset(b),
            w,
        )
    }
    fn oracle_prec(a: &EPSet, b: &EPSet, w: u64) -> bool {
        windowed::observe::prec(
            &GeneratorSet::from_epset(a),
            &GeneratorSet::from_epset(b),
            w,
        )
    }
}

impl Space for QHalfline {
    type Set = QSet;
    const KIND: BackendKind = BackendKind::QHalfline;

    fn everything() -> QSet {
        QSet::all()
    }
    fn nothing() -> QSet {
        QSet::empty()
    }
    fn complement(a: &QSet) -> QSet {
        a.complement()
    }
    fn union(a: &QSet, b: &QSet) -> QSet {
        a.union(b)
    }
    fn inter(a: &QSet, b: &QSet) -> QSet {
        a.inter(b)
    }
    fn diff(a: &QSet, b: &QSet) -> QSet {
        a.diff(b)
    }
    fn wrap(a: &QSet) -> AnySet {
        AnySet::Q(a.clone())
    }
    fn bounded(a: &QSet) -> bool {
        a.is_finite()
    }
    fn lambda(a: &QSet, b: &QSet) -> bool {
        q::lambda(a, b)
    }
    fn b(a: &QSet, b: &QSet) -> bool {
        q::b(a, b)
    }
    fn prec_mode(a: &QSet, b: &QSet, mode: PrecMode) -> RelationResult {
        match mode {
            PrecMode::Image => q::prec_image(a, b),
            PrecMode::Disjoint => q::prec_disjoint(a, b),
            PrecMode::Pairs => q::prec_pairs(a, b),
        }
    }
    fn b_mode(a: &QSet, b: &QSet, mode: BMode) -> RelationResult {
        match mode {
            BMode::Image => q::b_image(a, b),
            BMode::Resemblance => q::b_resemblance(a, b),
            BMode::Pairs => q::b_pairs(a, b),
        }
    }
    fn oracle_bounded(a: &QSet, w: u64) -> bool {
        grid::bounded(a, w)
    }
    fn oracle_lambda(a: &QSet, b: &QSet, w: u64) -> bool {
        grid::resemble(a, b, w)
    }
    fn oracle_b(a: &QSet, b: &QSet, w: u64) -> bool {
        grid::close(a, b, w)
    }
    fn oracle_prec(a: &QSet, b: &QSet, w: u64) -> bool {
        grid::prec(a, b, w)
    }
}

/// `≪` from a closeness relation: `A ≪ B` iff not `b(A, X ∖ B)`.
pub fn nbhd_from_b<S: Space>(
    b: impl Fn(&S::Set, &S::Set) -> bool,
) -> impl Fn(&S::Set, &S::Set) -> bool {
    move |x, y| !b(x, &S::complement(y))
}

/// Closeness from a neighbourhood relation: `b(A, B)` iff not `A ≪ X ∖ B`.
pub fn derive_b_from_nbhd<S: Space>(
    nbhd: impl Fn(&S::Set, &S::Set) -> bool,
) -> impl Fn(&S::Set, &S::Set) -> bool {
    move |x, y| !nbhd(x, &S::complement(y))
}

fn pair_kind(a: &AnySet, b: &AnySet) -> Result<BackendKind> {
    if a.kind() != b.kind() {
        return Err(crate::backends::mismatch(a.kind(), b.kind()));
    }
    Ok(a.kind())
}

pub fn lambda_rel(a: &AnySet, b: &AnySet, window: u64) -> Result<RelationResult> {
    Ok(match pair_kind(a, b)? {
        BackendKind::ZMetric => z::lambda_rel(a.as_z()?, b.as_z()?),
        BackendKind::QHalfline => q::lambda_rel(a.as_q()?, b.as_q()?),
        BackendKind::Windowed => RelationResult::observed(
            window,
            windowed::observe::resemble(a.as_w()?, b.as_w()?, window),
        ),
    })
}

/// Asymptotic boundedness: empty, or resembling a single point.
pub fn asym_bounded(a: &AnySet) -> Verdict {
    match a {
        AnySet::Z(s) => (s.is_empty() || z::lambda(s, &EPSet::singleton(0))).into(),
        AnySet::Q(s) => (s.is_empty()
            || q::lambda(s, &QSet::points(&[crate::rat::zero()]).expect("0 ≥ 0")))
        .into(),
        AnySet::W(s) => windowed::bounded(s, windowed::DEFAULT_WINDOW),
    }
}

pub fn prec(a: &AnySet, b: &AnySet, mode: PrecMode, window: u64) -> Result<RelationResult> {
    Ok(match pair_kind(a, b)? {
        BackendKind::ZMetric => ZMetric::prec_mode(a.as_z()?, b.as_z()?, mode),
        BackendKind::QHalfline => QHalfline::prec_mode(a.as_q()?, b.as_q()?, mode),
        BackendKind::Windowed => RelationResult::observed(
            window,
            windowed::observe::prec(a.as_w()?, b.as_w()?, window),
        ),
    })
}

pub fn b_rel(a: &AnySet, b: &AnySet, mode: BMode, window: u64) -> Result<RelationResult> {
    Ok(match pair_kind(a, b)? {
        BackendKind::ZMetric => ZMetric::b_mode(a.as_z()?, b.as_z()?, mode),
        BackendKind::QHalfline => QHalfline::b_mode(a.as_q()?, b.as_q()?, mode),
        BackendKind::Windowed => RelationResult::observed(
            window,
            windowed::observe::close(a.as_w()?, b.as_w()?, window),
        ),
    })
}

/// `A ≪ B`, i.e. `A` is not close to `X ∖ B`.
pub fn nbhd(a: &AnySet, b: &AnySet, window: u64) -> Result<RelationResult> {
    let complement = match b {
        AnySet::Z(s) => AnySet::Z(s.complement()),
        AnySet::Q(s) => AnySet::Q(s.complement()),
        AnySet::W(s) => AnySet::W(s.complement()),
    };
    let r = b_rel(a, &complement, BMode::Image, window)?;
    let verdict = match r.verdict {
        Verdict::True => Verdict::False,
        Verdict::False => Verdict::True,
        unknown => unknown,
    };
    let witness = match r.witness {
        Some(Witness::Observed {
            window,
            holds_in_window,
        }) => Some(Witness::Observed {
            window,
            holds_in_window: !holds_in_window,
        }),
        other => other,
    };
    Ok(RelationResult {
        verdict,
        mode: r.mode,
        witness,
    })
}

/// Errors unless the backend decides exactly.
pub fn require_exact(kind: BackendKind) -> Result<()> {
    if kind.is_exact() {
        Ok(())
    } else {
        Err(Error::ClassMismatch(format!(
            "{kind} sets have no exact decision procedure"
        )))
    }
}
