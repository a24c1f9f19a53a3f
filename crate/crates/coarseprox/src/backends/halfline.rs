//! The half-line structure on ℚ≥0: entourages are finitely many translates of the diagonal.

use std::collections::BTreeSet;

use super::symmetric;
use crate::rat::Rat;
use crate::setalg_q::QSet;

/// Bounded sets are exactly the finite ones.
pub fn bounded(a: &QSet) -> bool {
    a.is_finite()
}

/// `A ∪ ⋃_c ((A ∩ [t, ∞)) + c) ∩ [t, ∞)` over the symmetrized offsets.
pub fn image(offsets: &BTreeSet<Rat>, threshold: &Rat, a: &QSet) -> QSet {
    let tail = a.from_threshold(threshold);
    symmetric(offsets).iter().fold(a.clone(), |acc, c| {
        acc.union(&tail.translate(c).from_threshold(threshold))
    })
}

/// Image under the single offset pair `±c` (plus the diagonal), threshold 0.
pub fn image_by(c: &Rat, a: &QSet) -> QSet {
    image(&[*c].into(), &Rat::from_integer(0), a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn offset_two_on_unit_interval() {
        let a = QSet::interval(int(0), Some(int(1)), true, true).unwrap();
        let img = image_by(&int(2), &a);
        let expect = a.union(&QSet::interval(int(2), Some(int(3)), true, true).unwrap());
        assert_eq!(img, expect);
        for q in 1..=4 {
            for p in 0..=16 {
                let x = rat(p, q);
                let inside = (x > int(0) && x < int(1)) || (x > int(2) && x < int(3));
                assert_eq!(img.has(&x), inside, "x = {x}");
            }
        }
    }

    #[test]
    fn threshold_limits_translation() {
        let a = QSet::points(&[int(1), int(5)]).unwrap();
        let img = image(&[int(1)].into(), &int(3), &a);
        assert_eq!(
            img,
            QSet::points(&[int(1), int(4), int(5), int(6)]).unwrap()
        );
    }

    #[test]
    fn finite_sets_are_bounded() {
        assert!(bounded(&QSet::points(&[rat(1, 3)]).unwrap()));
        assert!(!bounded(
            &QSet::interval(int(0), Some(int(1)), true, true).unwrap()
        ));
    }
}
