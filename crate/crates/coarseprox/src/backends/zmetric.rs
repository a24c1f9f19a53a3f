//! The metric coarse structure on ℤ.

use crate::setalg_z::EPSet;

/// On ℤ a set has finite diameter exactly when it is finite.
pub fn bounded(a: &EPSet) -> bool {
    a.is_finite()
}

/// `E_r[A] = {x : d(x, A) < r}`.
pub fn image(r: u64, a: &EPSet) -> EPSet {
    match r {
        0 => EPSet::empty(),
        r => a.thicken(r - 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_one_is_identity() {
        let a = EPSet::tail_ap(3, 4).unwrap().union(&EPSet::finite([-7, 0]));
        assert_eq!(image(1, &a), a);
        assert!(image(0, &a).is_empty());
    }

    #[test]
    fn radius_two_fills_evens() {
        let img = image(2, &EPSet::evens());
        for x in -40..=40 {
            assert!(img.contains(x));
        }
        assert_eq!(img, EPSet::all());
    }

    #[test]
    fn boundedness() {
        assert!(bounded(&EPSet::finite([1, 2, 3])));
        assert!(!bounded(&EPSet::tail_ap(0, 2).unwrap()));
    }
}
