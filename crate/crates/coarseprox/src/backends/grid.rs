//! Rasterized probes of half-line sets, the brute-force oracle for the exact rules on ℚ≥0.
//!
//! Sets are sampled on the grid `(1/120)ℤ` over `[0, W + 32]` and translated by
//! every offset in `(1/60)ℤ ∩ [−16, 16]`. The probes are meaningful for sets
//! whose endpoints and discrete points have denominators dividing 12, whose
//! bounded data lies in `[0, 12]` and whose progressions have steps at most 6.
//! Under those limits a positive-length overlap always shows up at an odd
//! grid index, and an infinite discrete overlap shows up in `[W/2, W]`.

use crate::rat::Rat;
use crate::setalg_q::QSet;

/// Grid points per unit length.
pub const FINE: i64 = 120;
/// Translations are multiples of `COARSE / FINE`.
pub const COARSE: i64 = 2;
/// Largest translation tried.
pub const OFFSET_REACH: i64 = 16;
const MARGIN: i64 = 2 * OFFSET_REACH;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Raster {
    words: Vec<u64>,
    len: usize,
}

impl Raster {
    fn zeros(len: usize) -> Raster {
        Raster {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    fn set(&mut self, i: usize, v: bool) {
        let (w, b) = (i / 64, i % 64);
        if v {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn of(s: &QSet, w: u64) -> Raster {
        let top = w as i64 + MARGIN;
        let len = (top * FINE + 1) as usize;
        let mut r = Raster::zeros(len);
        let scale = Rat::from_integer(FINE);
        for iv in s.intervals().components() {
            let lo = iv.lo * scale;
            let mut first = lo.ceil().to_integer();
            if iv.lo_open && lo.is_integer() {
                first += 1;
            }
            let last = match iv.hi {
                None => len as i64 - 1,
                Some(h) => {
                    let h = h * scale;
                    let mut l = h.floor().to_integer();
                    if iv.hi_open && h.is_integer() {
                        l -= 1;
                    }
                    l.min(len as i64 - 1)
                }
            };
            for i in first.max(0)..=last {
                r.set(i as usize, true);
            }
        }
        for x in s.flips().members_up_to(&Rat::from_integer(top)) {
            let k = x * scale;
            if k.is_integer() {
                let i = k.to_integer() as usize;
                let v = !r.get(i);
                r.set(i, v);
            }
        }
        r
    }

    /// The raster of `{x + k/FINE}` (clipped to the raster).
    fn shifted(&self, k: i64) -> Raster {
        let mut out = Raster::zeros(self.len);
        let n = self.words.len() as i64;
        let (ws, bs) = (k.div_euclid(64), k.rem_euclid(64) as u32);
        for i in 0..n {
            let src = i - ws;
            let hi = if (0..n).contains(&src) {
                self.words[src as usize]
            } else {
                0
            };
            let lo = if (0..n).contains(&(src - 1)) {
                self.words[(src - 1) as usize]
            } else {
                0
            };
            out.words[i as usize] = if bs == 0 {
                hi
            } else {
                hi << bs | lo >> (64 - bs)
            };
        }
        let spare = out.words.len() * 64 - out.len;
        if spare > 0 {
            let last = out.words.len() - 1;
            out.words[last] &= u64::MAX >> spare;
        }
        out
    }

    /// Whether some index in `[lo, hi]` is set in both rasters (and odd, if asked).
    fn meets(&self, other: &Raster, lo: usize, hi: usize, odd_only: bool) -> bool {
        let odd = 0xAAAA_AAAA_AAAA_AAAAu64;
        (lo / 64..=hi / 64).any(|w| {
            let mut m = self.words[w] & other.words[w];
            if odd_only {
                m &= odd;
            }
            if w == lo / 64 {
                m &= u64::MAX << (lo % 64);
            }
            if w == hi / 64 && hi % 64 < 63 {
                m &= (1u64 << (hi % 64 + 1)) - 1;
            }
            m != 0
        })
    }

    fn ones(len: usize) -> Raster {
        let mut r = Raster {
            words: vec![u64::MAX; len.div_ceil(64)],
            len,
        };
        let spare = r.words.len() * 64 - len;
        if spare > 0 {
            let last = r.words.len() - 1;
            r.words[last] &= u64::MAX >> spare;
        }
        r
    }
}

fn offsets() -> impl Iterator<Item = i64> {
    (-OFFSET_REACH * FINE / COARSE..=OFFSET_REACH * FINE / COARSE).map(|j| j * COARSE)
}

fn end(w: u64) -> usize {
    (w as i64 * FINE) as usize
}

/// Some translate `A + c` meets `B` in an interval or far out in the window.
pub fn close(a: &QSet, b: &QSet, w: u64) -> bool {
    let (ra, rb) = (Raster::of(a, w), Raster::of(b, w));
    let (half, top) = (end(w / 2), end(w));
    offsets().any(|k| {
        let s = ra.shifted(k);
        s.meets(&rb, 0, top, true) || s.meets(&rb, half, top, false)
    })
}

/// `A ∩ [0, W]` lies in the union of all translates of `B`.
pub fn covers(a: &QSet, b: &QSet, w: u64) -> bool {
    let (ra, rb) = (Raster::of(a, w), Raster::of(b, w));
    let mut cover = Raster::zeros(rb.len);
    for k in offsets() {
        let s = rb.shifted(k);
        cover
            .words
            .iter_mut()
            .zip(&s.words)
            .for_each(|(c, x)| *c |= x);
    }
    let missed: Vec<u64> = cover.words.iter().map(|c| !c).collect();
    let gaps = Raster {
        words: missed,
        len: rb.len,
    };
    !ra.meets(&gaps, 0, end(w), false)
}

pub fn resemble(a: &QSet, b: &QSet, w: u64) -> bool {
    covers(a, b, w) && covers(b, a, w)
}

/// No interval content and nothing in `[W/2, W]`.
pub fn bounded(a: &QSet, w: u64) -> bool {
    let ra = Raster::of(a, w);
    let all = Raster::ones(ra.len);
    !ra.meets(&all, 0, end(w), true) && !ra.meets(&all, end(w / 2), end(w), false)
}

pub fn prec(a: &QSet, b: &QSet, w: u64) -> bool {
    !close(a, &b.complement(), w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};
    use crate::setalg_q::RatAP;

    fn unit() -> QSet {
        QSet::interval(int(0), Some(int(1)), true, true).unwrap()
    }

    #[test]
    fn raster_respects_open_endpoints() {
        let r = Raster::of(&unit(), 100);
        assert!(!r.get(0) && r.get(1) && r.get(119) && !r.get(120));
        let s = r.shifted(-1);
        assert!(s.get(0) && !s.get(119));
    }

    #[test]
    fn unit_interval_against_naturals() {
        let nat = QSet::naturals();
        assert!(!close(&unit(), &nat, 100));
        assert!(prec(&unit(), &nat.complement(), 100));
        assert!(!bounded(&unit(), 100));
        assert!(bounded(&QSet::points(&[int(3), rat(1, 4)]).unwrap(), 100));
    }

    #[test]
    fn progressions_and_rays() {
        let evens = QSet::ap(&RatAP::new(int(0), int(2)).unwrap());
        let thirds = QSet::ap(&RatAP::new(rat(1, 3), int(3)).unwrap());
        let ray = QSet::interval(int(4), None, false, true).unwrap();
        assert!(close(&evens, &thirds, 100));
        assert!(close(&ray.diff(&QSet::naturals()), &evens, 100));
        assert!(resemble(&evens, &thirds, 100));
        assert!(!resemble(&evens, &ray, 100));
        assert!(covers(&evens, &ray, 100));
        assert!(!close(&unit(), &evens, 1000));
    }
}
