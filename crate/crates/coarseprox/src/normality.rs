//! Interpolating sets on ℤ and certificates that the half-line structure has none.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::relations::{q, z, PrecMode, QHalfline, Space, ZMetric};
use crate::setalg_q::{solve_offset, OffsetLattice, QSet, RatAP};
use crate::setalg_z::EPSet;

pub use crate::setalg_q::avoid_offset;

/// Shortest trace a non-normality certificate carries.
pub const TRACE_FLOOR: usize = 50;

/// A set `C` with `A ≺ C ≺ B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalityWitness {
    pub c: EPSet,
    pub prec_a_c: bool,
    pub prec_c_b: bool,
}

/// Each exact characterization of `≺` must agree with the closed form.
fn prec_checked(a: &EPSet, b: &EPSet) -> bool {
    let closed = ZMetric::prec(a, b);
    for mode in [PrecMode::Image, PrecMode::Disjoint, PrecMode::Pairs] {
        debug_assert_eq!(
            ZMetric::prec_mode(a, b, mode).holds(),
            closed,
            "{mode:?} disagrees"
        );
    }
    closed
}

/// Half-lines on the ends `A` reaches.
pub fn interpolate(a: &EPSet, b: &EPSet) -> Result<NormalityWitness> {
    if !prec_checked(a, b) {
        return Err(Error::PrecFails);
    }
    let t = a.threshold() as i64;
    let mut c = EPSet::empty();
    if a.has_pos_end() {
        c = c.union(&EPSet::ray_up(t));
    }
    if a.has_neg_end() {
        c = c.union(&EPSet::ray_down(t));
    }
    let w = NormalityWitness {
        prec_a_c: prec_checked(a, &c),
        prec_c_b: prec_checked(&c, b),
        c,
    };
    if !(w.prec_a_c && w.prec_c_b) {
        return Err(Error::NotNormal(format!(
            "half-lines failed to interpolate between {a} and {b}"
        )));
    }
    Ok(w)
}

/// An interpolant squeezed between the two sets: `A ⊆ C ⊆ B`.
pub fn interpolate_star(a: &EPSet, b: &EPSet) -> Result<EPSet> {
    if !a.is_subset(b) {
        return Err(Error::NotNested);
    }
    let outer = interpolate(a, b)?.c;
    let missing = a.diff(&outer);
    let spill = outer.diff(b);
    debug_assert!(missing.is_finite() && spill.is_finite());
    let c = outer.union(&missing).diff(&spill);
    debug_assert!(a.is_subset(&c) && c.is_subset(b));
    Ok(c)
}

/// `X = X₁ ∪ X₂` with `A₁` far from `X₁` and `A₂` far from `X₂`.
pub fn split_asymptotic(a1: &EPSet, a2: &EPSet) -> Result<(EPSet, EPSet)> {
    if z::b(a1, a2) {
        return Err(Error::NotDisjoint);
    }
    let x2 = interpolate(a1, &a2.complement())?.c;
    let x1 = x2.complement();
    debug_assert!(!z::b(a1, &x1) && !z::b(a2, &x2));
    Ok((x1, x2))
}

/// The only interpolants the half-line structure admits: `∅` below a finite
/// `A`, or everything above a cofinite `B`. `None` means no `C` exists.
pub fn halfline_interpolant(a: &QSet, b: &QSet) -> Result<Option<QSet>> {
    if !QHalfline::prec(a, b) {
        return Err(Error::PrecFails);
    }
    Ok(if a.is_finite() {
        Some(QSet::empty())
    } else if b.complement().is_finite() {
        Some(QSet::all())
    } else {
        None
    })
}

/// `(0, 1)`.
pub fn unit_interval() -> QSet {
    QSet::interval(rat::zero(), Some(rat::one()), true, true).expect("valid interval")
}

/// `ℚ≥0 ∖ ℕ`.
pub fn off_naturals() -> QSet {
    QSet::naturals().complement()
}

/// Evidence that a candidate `C` with `(0,1) ≺ C` fails `C ≺ ℚ≥0 ∖ ℕ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonNormalityCertificate {
    pub candidate: QSet,
    /// `X ∖ C`, necessarily discrete.
    pub complement: QSet,
    /// Translations `c` under which `(D ∪ ℕ) + c` meets `ℕ` infinitely often.
    pub lattices: Vec<OffsetLattice>,
    #[serde(with = "rat::serde_rat")]
    pub offset: Rat,
    /// The first naturals `x ≥ c` with `x − c ∈ C`.
    #[serde(with = "rat::serde_rat_vec")]
    pub trace: Vec<Rat>,
    /// A tail of ℕ on which every point is such an `x`.
    pub tail: RatAP,
}

fn avoidance_lattices(d: &QSet) -> Vec<OffsetLattice> {
    let nat = RatAP::new(rat::zero(), rat::one()).expect("valid progression");
    let mut out = vec![solve_offset(&nat, &nat)];
    for p in d.flips().tail_aps() {
        let l = solve_offset(&p, &nat);
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

/// Naturals `x` with `x − c ∈ C`.
fn hits(c: &QSet, offset: &Rat) -> QSet {
    QSet::naturals().inter(&c.translate(offset))
}

pub fn nonnormality_certificate(c: &QSet, trace_len: usize) -> Result<NonNormalityCertificate> {
    if !QHalfline::prec(&unit_interval(), c) {
        return Err(Error::PrecFails);
    }
    let d = c.complement();
    let lattices = avoidance_lattices(&d);
    let offset = avoid_offset(&lattices);
    let hit = hits(c, &offset);
    let missed = QSet::naturals().diff(&hit);
    let start = match missed.finite_points() {
        Some(pts) => pts.last().map_or(rat::one(), |m| *m + rat::one()),
        None => {
            return Err(Error::NotNormal(format!(
                "offset {offset} leaves infinitely many naturals uncovered"
            )))
        }
    };
    let start = start.max(rat::one());
    let tail = RatAP::new(start, rat::one()).expect("valid progression");
    let mut trace = Vec::with_capacity(trace_len);
    let mut x = rat::zero();
    while trace.len() < trace_len {
        if hit.has(&x) {
            trace.push(x);
        }
        x += rat::one();
    }
    Ok(NonNormalityCertificate {
        candidate: c.clone(),
        complement: d,
        lattices,
        offset,
        trace,
        tail,
    })
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidCertificate(msg.into())
}

impl NonNormalityCertificate {
    /// Rechecks every claim from the candidate alone.
    pub fn validate(&self) -> Result<()> {
        let c = &self.candidate;
        if !q::prec_image(&unit_interval(), c).holds() || !QHalfline::prec(&unit_interval(), c) {
            return Err(invalid("(0,1) does not precede the candidate"));
        }
        if self.complement != c.complement() {
            return Err(invalid("complement does not match the candidate"));
        }
        if !self.complement.intervals().is_empty() {
            return Err(invalid("complement has interval content"));
        }
        if self.offset <= rat::zero() {
            return Err(invalid("offset must be positive"));
        }
        let needed = avoidance_lattices(&self.complement);
        if needed.iter().any(|l| !self.lattices.contains(l)) {
            return Err(invalid("lattice list is incomplete"));
        }
        if self.lattices.iter().any(|l| l.contains(&self.offset)) {
            return Err(invalid(format!(
                "offset {} lies in an avoided lattice",
                rat::fmt_rat(&self.offset)
            )));
        }
        if self.trace.len() < TRACE_FLOOR {
            return Err(invalid(format!("trace shorter than {TRACE_FLOOR}")));
        }
        if self.trace.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("trace is not strictly increasing"));
        }
        for x in &self.trace {
            if !x.is_integer() || *x < self.offset || !c.has(&(*x - self.offset)) {
                return Err(invalid(format!(
                    "trace point {} is not a translate of the candidate",
                    rat::fmt_rat(x)
                )));
            }
        }
        if !(self.tail.step() == rat::one()
            && self.tail.anchor().is_integer()
            && self.tail.anchor() >= self.offset)
        {
            return Err(invalid(
                "tail must be a progression of naturals beyond the offset",
            ));
        }
        if !QSet::ap(&self.tail).is_subset(&hits(c, &self.offset)) {
            return Err(invalid("tail is not covered by the translated candidate"));
        }
        if QHalfline::prec(c, &off_naturals()) {
            return Err(invalid("the candidate precedes ℚ≥0 ∖ ℕ after all"));
        }
        Ok(())
    }
}

/// Any certificate the tool emits, in replayable form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Normal {
        a: EPSet,
        b: EPSet,
        witness: NormalityWitness,
    },
    Star {
        a: EPSet,
        b: EPSet,
        c: EPSet,
    },
    Split {
        a1: EPSet,
        a2: EPSet,
        x1: EPSet,
        x2: EPSet,
    },
    Nonnormal(NonNormalityCertificate),
}

impl Certificate {
    pub fn validate(&self) -> Result<()> {
        match self {
            Certificate::Normal { a, b, witness } => {
                let (ac, cb) = (ZMetric::prec(a, &witness.c), ZMetric::prec(&witness.c, b));
                if !(ac && cb && witness.prec_a_c && witness.prec_c_b) {
                    return Err(invalid("interpolant does not sit between the two sets"));
                }
            }
            Certificate::Star { a, b, c } => {
                if !(a.is_subset(c) && c.is_subset(b)) {
                    return Err(invalid("interpolant is not nested between the two sets"));
                }
                if !(ZMetric::prec(a, c) && ZMetric::prec(c, b)) {
                    return Err(invalid("interpolant does not sit between the two sets"));
                }
            }
            Certificate::Split { a1, a2, x1, x2 } => {
                if x1.union(x2) != EPSet::all() {
                    return Err(invalid("the two parts do not cover ℤ"));
                }
                if z::b(a1, x1) || z::b(a2, x2) {
                    return Err(invalid("a part is close to the set it should avoid"));
                }
            }
            Certificate::Nonnormal(cert) => cert.validate()?,
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn evens_up() -> EPSet {
        EPSet::tail_ap(0, 2).unwrap()
    }

    #[test]
    fn interpolation_on_progressions() {
        let w = interpolate(&evens_up(), &EPSet::ray_up(0)).unwrap();
        assert_eq!(w.c, EPSet::ray_up(0));
        assert!(w.prec_a_c && w.prec_c_b);
        let w = interpolate(&EPSet::finite([3, 4]), &EPSet::ray_up(7)).unwrap();
        assert!(w.c.is_empty());
        let away = evens_up().reflect().complement();
        assert!(interpolate(&evens_up(), &away).unwrap().c.has_pos_end());
        assert_eq!(
            interpolate(&evens_up(), &EPSet::tail_ap(1, 2).unwrap()),
            Err(Error::PrecFails)
        );
    }

    #[test]
    fn nested_interpolation() {
        let c = interpolate_star(&evens_up(), &EPSet::ray_up(0)).unwrap();
        assert!(evens_up().is_subset(&c) && c.is_subset(&EPSet::ray_up(0)));
        assert!(interpolate_star(&EPSet::empty(), &EPSet::ray_up(4))
            .unwrap()
            .is_empty());
        assert_eq!(
            interpolate_star(&evens_up(), &evens_up()),
            Err(Error::PrecFails)
        );
        assert_eq!(
            interpolate_star(&EPSet::ray_up(0), &evens_up()),
            Err(Error::NotNested)
        );
    }

    #[test]
    fn splitting_far_apart_sets() {
        let (x1, x2) = split_asymptotic(&evens_up(), &evens_up().reflect()).unwrap();
        assert!(x2.has_pos_end() && x1.has_neg_end());
        let (x1, x2) = split_asymptotic(&EPSet::finite([1]), &EPSet::finite([2])).unwrap();
        assert_eq!((x1, x2), (EPSet::all(), EPSet::empty()));
        assert_eq!(
            split_asymptotic(&evens_up(), &EPSet::tail_ap(1, 2).unwrap()),
            Err(Error::NotDisjoint)
        );
    }

    #[test]
    fn complement_of_naturals_certificate() {
        let cert = nonnormality_certificate(&off_naturals(), TRACE_FLOOR).unwrap();
        assert_eq!(cert.offset, rat(1, 2));
        assert_eq!(cert.trace, (1..=50).map(int).collect::<Vec<_>>());
        cert.validate().unwrap();
        let json = serde_json::to_string(&Certificate::Nonnormal(cert.clone())).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        back.validate().unwrap();
    }

    #[test]
    fn other_candidates() {
        let halves = QSet::ap(&RatAP::new(int(0), rat(1, 2)).unwrap()).complement();
        let cert = nonnormality_certificate(&halves, TRACE_FLOOR).unwrap();
        assert_eq!(cert.offset, rat(1, 3));
        cert.validate().unwrap();
        let everything = nonnormality_certificate(&QSet::all(), TRACE_FLOOR).unwrap();
        assert_eq!(everything.offset, rat(1, 2));
        everything.validate().unwrap();
        assert_eq!(
            nonnormality_certificate(&QSet::naturals(), TRACE_FLOOR),
            Err(Error::PrecFails)
        );
    }

    #[test]
    fn tampered_certificates_fail() {
        let mut cert = nonnormality_certificate(&off_naturals(), TRACE_FLOOR).unwrap();
        cert.offset = int(1);
        assert!(cert.validate().is_err());
        let mut cert = nonnormality_certificate(&off_naturals(), TRACE_FLOOR).unwrap();
        cert.trace.truncate(10);
        assert!(cert.validate().is_err());
    }

    #[test]
    fn halfline_interpolants() {
        let unit = unit_interval();
        assert_eq!(halfline_interpolant(&unit, &off_naturals()).unwrap(), None);
        assert_eq!(
            halfline_interpolant(&QSet::points(&[int(2)]).unwrap(), &unit).unwrap(),
            Some(QSet::empty())
        );
        let cofinite = QSet::points(&[int(3)]).unwrap().complement();
        assert_eq!(
            halfline_interpolant(&unit, &cofinite).unwrap(),
            Some(QSet::all())
        );
    }
}
