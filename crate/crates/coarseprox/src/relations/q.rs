//! Deciders on the half-line structure of ℚ≥0.
//!
//! A translate `A + c` can only meet `B` in an infinite set through one of
//! four overlaps: an interval with an interval, a ray with a discrete tail,
//! a discrete tail with a ray, or two discrete tails. The closed forms read
//! these off [`Features`]; the characterizations build explicit entourages
//! and subsets from the same case split and recompute with set algebra.

use std::collections::BTreeSet;

use super::{Mode, RelationResult, Witness};
use crate::backends::{halfline, AnySet, EntourageSpec};
use crate::rat::{self, Rat};
use crate::setalg_q::{avoid_offset, solve_offset, Features, QSet, RatAP};

pub fn b(a: &QSet, bset: &QSet) -> bool {
    close_features(&a.features(), &bset.features())
}

pub fn close_features(fa: &Features, fb: &Features) -> bool {
    (fa.interval && fb.interval)
        || (fa.ray && fb.discrete_tail)
        || (fa.discrete_tail && fb.ray)
        || (fa.discrete_tail && fb.discrete_tail)
}

/// Whether `A ⊆ E[B]` for some generator `E`.
pub fn covers(a: &QSet, bset: &QSet) -> bool {
    let (fa, fb) = (a.features(), bset.features());
    if fa.empty {
        return true;
    }
    !fb.empty
        && (!fa.interval || fb.interval)
        && (!fa.ray || fb.ray)
        && (!fa.discrete_tail || fb.ray || fb.discrete_tail)
        && (fa.finite || !fb.finite)
}

pub fn lambda(a: &QSet, bset: &QSet) -> bool {
    covers(a, bset) && covers(bset, a)
}

pub fn lambda_rel(a: &QSet, bset: &QSet) -> RelationResult {
    RelationResult::exact(lambda(a, bset), Mode::Closed, None)
}

/// Offsets `c ∈ (0, 1)` pushing a progression with step 1 off the tail of `excised`.
fn dodge(source: &RatAP, excised: &QSet) -> Rat {
    let lattices: Vec<_> = excised
        .excised()
        .tail_aps()
        .iter()
        .map(|p| solve_offset(source, p))
        .collect();
    avoid_offset(&lattices)
}

/// Translations that realize every possible infinite overlap of `A + c` with `C`.
pub fn candidate_offsets(a: &QSet, c: &QSet) -> BTreeSet<Rat> {
    let mut out: BTreeSet<Rat> = [rat::zero()].into();
    let (fa, fc) = (a.features(), c.features());
    for i in a.intervals().components() {
        for j in c.intervals().components() {
            out.insert(j.sample() - i.sample());
        }
    }
    let a_tail = a.isolated().tail_aps();
    let c_tail = c.isolated().tail_aps();
    if fa.discrete_tail && fc.discrete_tail {
        for p in &a_tail {
            for q in &c_tail {
                out.insert(q.anchor() - p.anchor());
            }
        }
    }
    if fa.ray && fc.discrete_tail {
        for q in &c_tail {
            let lattices: Vec<_> = a
                .excised()
                .tail_aps()
                .iter()
                .map(|p| solve_offset(p, q))
                .collect();
            out.insert(avoid_offset(&lattices));
        }
    }
    if fa.discrete_tail && fc.ray {
        for p in &a_tail {
            out.insert(dodge(p, c));
        }
    }
    out
}

fn composite(offsets: BTreeSet<Rat>) -> EntourageSpec {
    EntourageSpec::halfline(offsets)
}

fn image_of(e: &EntourageSpec, a: &QSet) -> QSet {
    match e {
        EntourageSpec::HalfLine { offsets, threshold } => halfline::image(offsets, threshold, a),
        _ => unreachable!("half-line deciders only build half-line entourages"),
    }
}

/// `A ≺ B` via one composite entourage built from the candidate offsets.
pub fn prec_image(a: &QSet, bset: &QSet) -> RelationResult {
    let c = bset.complement();
    let e = composite(candidate_offsets(a, &c));
    let img = image_of(&e, a);
    let leak = img.inter(&c);
    if leak.is_finite() {
        let w = Witness::Remainder {
            entourage: e,
            bounded: AnySet::Q(img.diff(bset)),
        };
        RelationResult::exact(true, Mode::Image, Some(w))
    } else {
        RelationResult::exact(
            false,
            Mode::Image,
            Some(Witness::Trace {
                entourage: e,
                trace: AnySet::Q(leak),
            }),
        )
    }
}

/// `A ≺ B` iff for every offset the pairs between `A` and `X∖B` it joins involve finitely many points.
pub fn prec_pairs(a: &QSet, bset: &QSet) -> RelationResult {
    let c = bset.complement();
    let mut probes = Vec::new();
    for off in candidate_offsets(a, &c) {
        let e = EntourageSpec::halfline([off]);
        let d = a.inter(&image_of(&e, &c)).union(&c.inter(&image_of(&e, a)));
        if !d.is_finite() {
            let w = Witness::Unseparated {
                entourage: e,
                pairs: AnySet::Q(d),
            };
            return RelationResult::exact(false, Mode::Pairs, Some(w));
        }
        probes.push((e, AnySet::Q(d)));
    }
    RelationResult::exact(true, Mode::Pairs, Some(Witness::Separators(probes)))
}

/// Unbounded subsets of `S` that between them exhibit every kind of infinite content.
pub fn pieces(s: &QSet) -> Vec<QSet> {
    let mut out = Vec::new();
    for iv in s.intervals().components() {
        let hi = iv.hi.unwrap_or(iv.lo + rat::one());
        let part =
            QSet::interval(iv.lo, Some(hi), true, true).expect("components have positive length");
        out.push(part.inter(s));
        if iv.is_unbounded() {
            let start = Rat::from_integer(rat::above_i(&iv.lo));
            let unit = RatAP::new(start, rat::one()).expect("start is nonnegative");
            let shift = dodge(&unit, s);
            let ap = RatAP::new(start + shift, rat::one()).expect("start is nonnegative");
            out.push(QSet::ap(&ap).inter(s));
        }
    }
    for p in s.isolated().tail_aps() {
        out.push(QSet::ap(&p).inter(s));
    }
    out
}

fn resembling_pieces(a: &QSet, c: &QSet) -> Option<Witness> {
    let cp = pieces(c);
    pieces(a).into_iter().find_map(|p| {
        cp.iter().find(|q| lambda(&p, q)).map(|q| Witness::Subsets {
            left: AnySet::Q(p.clone()),
            right: AnySet::Q(q.clone()),
            entourage: None,
        })
    })
}

/// `A ≺ B` iff no unbounded piece of `A` resembles an unbounded piece of `X ∖ B`.
pub fn prec_disjoint(a: &QSet, bset: &QSet) -> RelationResult {
    let w = resembling_pieces(a, &bset.complement());
    RelationResult::exact(w.is_none(), Mode::Disjoint, w)
}

pub fn b_image(a: &QSet, bset: &QSet) -> RelationResult {
    let e = composite(candidate_offsets(a, bset));
    let hit = image_of(&e, a).inter(bset);
    if hit.is_finite() {
        RelationResult::exact(false, Mode::Image, None)
    } else {
        RelationResult::exact(
            true,
            Mode::Image,
            Some(Witness::Trace {
                entourage: e,
                trace: AnySet::Q(hit),
            }),
        )
    }
}

pub fn b_resemblance(a: &QSet, bset: &QSet) -> RelationResult {
    let w = resembling_pieces(a, bset);
    RelationResult::exact(w.is_some(), Mode::Resemblance, w)
}

pub fn b_pairs(a: &QSet, bset: &QSet) -> RelationResult {
    let p = prec_pairs(a, &bset.complement());
    RelationResult {
        verdict: (!p.holds()).into(),
        mode: Mode::Pairs,
        witness: p.witness,
    }
}
