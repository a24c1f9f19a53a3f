//! Deciders on the metric structure of ℤ.
//!
//! Everything reduces to which of the two ends a set reaches: two unbounded
//! sets are close exactly when they share an end, and resemble each other
//! exactly when they reach the same ends.

use super::{Mode, RelationResult, Witness};
use crate::backends::{zmetric, AnySet, EntourageSpec};
use crate::setalg_z::EPSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ends {
    pub pos: bool,
    pub neg: bool,
}

pub fn ends(a: &EPSet) -> Ends {
    Ends {
        pos: a.has_pos_end(),
        neg: a.has_neg_end(),
    }
}

fn shares_end(a: &EPSet, b: &EPSet) -> bool {
    (a.has_pos_end() && b.has_pos_end()) || (a.has_neg_end() && b.has_neg_end())
}

pub fn lambda(a: &EPSet, b: &EPSet) -> bool {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => true,
        (false, false) => ends(a) == ends(b),
        _ => false,
    }
}

/// Hausdorff distance between two nonempty sets reaching the same ends.
fn hausdorff(a: &EPSet, b: &EPSet) -> u64 {
    let h = a.joint_horizon(b);
    let one_way = |s: &EPSet, t: &EPSet| {
        s.points_in(-h, h)
            .into_iter()
            .filter_map(|x| t.dist_to(x))
            .max()
            .unwrap_or(0)
    };
    one_way(a, b).max(one_way(b, a))
}

/// The smallest radius `r` with `A ⊆ E_r[B]` and `B ⊆ E_r[A]`, when λ holds.
pub fn lambda_radius(a: &EPSet, b: &EPSet) -> Option<u64> {
    if !lambda(a, b) {
        return None;
    }
    if a.is_empty() {
        return Some(1);
    }
    Some(hausdorff(a, b) + 1)
}

pub fn lambda_rel(a: &EPSet, b: &EPSet) -> RelationResult {
    let r = lambda_radius(a, b);
    RelationResult::exact(
        r.is_some(),
        Mode::Closed,
        r.map(|r| Witness::Entourage(EntourageSpec::metric(r))),
    )
}

pub fn b(a: &EPSet, bs: &EPSet) -> bool {
    shares_end(a, bs)
}

/// One radius whose image swallows a whole end of ℤ wherever `A` reaches it.
fn saturating_radius(a: &EPSet) -> u64 {
    a.period() + 1
}

/// Least `r ≤ limit` with `E_r[A] ∩ C` infinite, and that intersection.
fn first_unbounded(a: &EPSet, c: &EPSet, limit: u64) -> Option<(u64, EPSet)> {
    (1..=limit).find_map(|r| {
        let hit = zmetric::image(r, a).inter(c);
        (!hit.is_finite()).then_some((r, hit))
    })
}

/// `A ≺ B` via a single image: `E_r[A] ∖ B` is finite for every `r` iff it is for a saturating one.
pub fn prec_image(a: &EPSet, bset: &EPSet) -> RelationResult {
    let c = bset.complement();
    let r = saturating_radius(a);
    match first_unbounded(a, &c, r) {
        Some((r, trace)) => RelationResult::exact(
            false,
            Mode::Image,
            Some(Witness::Trace {
                entourage: EntourageSpec::metric(r),
                trace: AnySet::Z(trace),
            }),
        ),
        None => {
            let k = zmetric::image(r, a).diff(bset);
            RelationResult::exact(
                true,
                Mode::Image,
                Some(Witness::Remainder {
                    entourage: EntourageSpec::metric(r),
                    bounded: AnySet::Z(k),
                }),
            )
        }
    }
}

/// The parts of a set living on each end.
pub fn end_pieces(a: &EPSet) -> Vec<EPSet> {
    let mut out = Vec::new();
    if a.has_pos_end() {
        out.push(a.inter(&EPSet::ray_up(0)));
    }
    if a.has_neg_end() {
        out.push(a.inter(&EPSet::ray_down(1)));
    }
    out
}

/// Searches the end pieces of `A` and `C` for a resembling unbounded pair.
fn resembling_pieces(a: &EPSet, c: &EPSet) -> Option<Witness> {
    for p in end_pieces(a) {
        for q in end_pieces(c) {
            if let Some(r) = lambda_radius(&p, &q) {
                return Some(Witness::Subsets {
                    left: AnySet::Z(p),
                    right: AnySet::Z(q),
                    entourage: Some(EntourageSpec::metric(r)),
                });
            }
        }
    }
    None
}

/// `A ≺ B` iff no unbounded part of `A` resembles an unbounded part of `X ∖ B`.
pub fn prec_disjoint(a: &EPSet, bset: &EPSet) -> RelationResult {
    let w = resembling_pieces(a, &bset.complement());
    RelationResult::exact(w.is_none(), Mode::Disjoint, w)
}

/// `A ≺ B` iff for each radius the pairs of `A × (X ∖ B)` it joins involve finitely many points.
pub fn prec_pairs(a: &EPSet, bset: &EPSet) -> RelationResult {
    let c = bset.complement();
    let limit = a.period().max(c.period()) + 1;
    let mut probes = Vec::new();
    for r in 1..=limit {
        let d = a
            .inter(&zmetric::image(r, &c))
            .union(&c.inter(&zmetric::image(r, a)));
        let finite = d.is_finite();
        probes.push((EntourageSpec::metric(r), AnySet::Z(d)));
        if !finite {
            let (e, d) = probes.pop().expect("just pushed");
            return RelationResult::exact(
                false,
                Mode::Pairs,
                Some(Witness::Unseparated {
                    entourage: e,
                    pairs: d,
                }),
            );
        }
    }
    RelationResult::exact(true, Mode::Pairs, Some(Witness::Separators(probes)))
}

pub fn b_image(a: &EPSet, bset: &EPSet) -> RelationResult {
    match first_unbounded(a, bset, saturating_radius(a)) {
        Some((r, trace)) => RelationResult::exact(
            true,
            Mode::Image,
            Some(Witness::Trace {
                entourage: EntourageSpec::metric(r),
                trace: AnySet::Z(trace),
            }),
        ),
        None => RelationResult::exact(false, Mode::Image, None),
    }
}

/// Tails of single residue classes on each end.
fn residue_pieces(a: &EPSet) -> Vec<EPSet> {
    let l = a.period();
    let t = a.threshold() as i64;
    let mut out = Vec::new();
    for &r in a.pos_residues() {
        let start = t + (r as i64 - t).rem_euclid(l as i64);
        out.push(EPSet::tail_ap(start, l).expect("period is positive"));
    }
    for &r in a.neg_residues() {
        let start = t + (r as i64 - t).rem_euclid(l as i64);
        out.push(
            EPSet::tail_ap(start, l)
                .expect("period is positive")
                .reflect(),
        );
    }
    out
}

/// `b(A, B)` via resembling unbounded subsets drawn from residue-class tails.
pub fn b_resemblance(a: &EPSet, bset: &EPSet) -> RelationResult {
    for p in residue_pieces(a) {
        for q in residue_pieces(bset) {
            if let Some(r) = lambda_radius(&p, &q) {
                let w = Witness::Subsets {
                    left: AnySet::Z(p),
                    right: AnySet::Z(q),
                    entourage: Some(EntourageSpec::metric(r)),
                };
                return RelationResult::exact(true, Mode::Resemblance, Some(w));
            }
        }
    }
    RelationResult::exact(false, Mode::Resemblance, None)
}

pub fn b_pairs(a: &EPSet, bset: &EPSet) -> RelationResult {
    let p = prec_pairs(a, &bset.complement());
    RelationResult {
        verdict: (!p.holds()).into(),
        mode: Mode::Pairs,
        witness: p.witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn evens_up() -> EPSet {
        EPSet::tail_ap(0, 2).unwrap()
    }

    fn odds_up() -> EPSet {
        EPSet::tail_ap(1, 2).unwrap()
    }

    #[test]
    fn resemblance_of_progressions() {
        assert_eq!(lambda_radius(&evens_up(), &odds_up()), Some(2));
        assert!(!lambda(&evens_up(), &evens_up().reflect()));
        assert!(!lambda(&EPSet::empty(), &EPSet::singleton(5)));
        assert!(lambda(&EPSet::finite([0, 9]), &EPSet::singleton(100)));
        assert_eq!(
            lambda_radius(&EPSet::finite([0, 9]), &EPSet::singleton(100)),
            Some(101)
        );
    }

    #[test]
    fn witnessed_radius_really_works() {
        let a = evens_up().union(&EPSet::finite([-3, 17]));
        let b = EPSet::tail_ap(5, 3).unwrap();
        let r = lambda_radius(&a, &b).unwrap();
        assert!(a.is_subset(&zmetric::image(r, &b)) && b.is_subset(&zmetric::image(r, &a)));
        assert!(
            !(a.is_subset(&zmetric::image(r - 1, &b)) && b.is_subset(&zmetric::image(r - 1, &a)))
        );
    }

    #[test]
    fn closeness_needs_a_shared_end() {
        let r = b_image(&evens_up(), &odds_up());
        assert!(r.holds());
        match r.witness {
            Some(Witness::Trace {
                entourage: EntourageSpec::Metric { r },
                ..
            }) => assert_eq!(r, 2),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(!b(&evens_up(), &evens_up().reflect()));
        assert!(b_resemblance(&evens_up(), &odds_up()).holds());
        assert!(!b_pairs(&EPSet::finite([1, 2]), &EPSet::all()).holds());
    }

    #[test]
    fn prec_modes_on_examples() {
        let nat = EPSet::ray_up(0);
        for f in [prec_image, prec_disjoint, prec_pairs] {
            assert!(f(&evens_up(), &nat).holds());
            assert!(f(&evens_up(), &EPSet::all()).holds());
            assert!(!f(&evens_up(), &odds_up()).holds());
            assert!(f(&evens_up(), &evens_up().reflect().complement()).holds());
        }
    }
}
