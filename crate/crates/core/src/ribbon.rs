//! A disk with `2g` attached bands, used to derive the action of Dehn twists
//! on the fundamental group.
//!
//! The disk boundary is a circle of integer positions with the basepoint at
//! position 0.  Handle `h` contributes bands `A(h)` and `B(h)` attached at
//! interleaved positions `pA < pB < qA < qB`, which makes the surface a genus
//! `g` surface with one boundary component.  The band generator `y_k` runs
//! from the basepoint through the disk to `p_k`, across band `k` to `q_k`, and
//! back.  A simple closed curve is a cyclic list of band traversals; between
//! traversals it follows a straight chord of the disk.

use crate::word::{FreeWord, Letter};

/// One traversal of a band: band id (1-based), direction, and offset of the
/// strand from the band core.  Entering forward at `p + offset`, the strand
/// leaves at `q - offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub band: usize,
    pub dir: i32,
    pub offset: i64,
}

pub type Curve = Vec<Segment>;

#[derive(Debug, Clone)]
pub struct BandSurface {
    genus: usize,
    p: Vec<i64>,
    q: Vec<i64>,
}

pub fn band_a(h: usize) -> usize {
    2 * h + 1
}

pub fn band_b(h: usize) -> usize {
    2 * h + 2
}

fn seg(band: usize, dir: i32, offset: i64) -> Segment {
    Segment { band, dir, offset }
}

type Chord = (i64, i64);

impl BandSurface {
    pub fn new(genus: usize) -> Self {
        let mut p = vec![0; 2 * genus + 1];
        let mut q = vec![0; 2 * genus + 1];
        for h in 0..genus {
            let base = 100 * (h as i64 + 1);
            p[band_a(h)] = base + 10;
            p[band_b(h)] = base + 20;
            q[band_a(h)] = base + 30;
            q[band_b(h)] = base + 40;
        }
        BandSurface { genus, p, q }
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    fn entry(&self, s: &Segment) -> i64 {
        if s.dir > 0 {
            self.p[s.band] + s.offset
        } else {
            self.q[s.band] - s.offset
        }
    }

    fn exit(&self, s: &Segment) -> i64 {
        if s.dir > 0 {
            self.q[s.band] - s.offset
        } else {
            self.p[s.band] + s.offset
        }
    }

    /// The chord leaving segment `m` and entering segment `m + 1`.
    fn chords(&self, curve: &Curve) -> Vec<Chord> {
        let k = curve.len();
        (0..k)
            .map(|m| (self.exit(&curve[m]), self.entry(&curve[(m + 1) % k])))
            .collect()
    }

    pub fn is_simple(&self, curve: &Curve) -> bool {
        let ch = self.chords(curve);
        let mut pts: Vec<i64> = ch.iter().flat_map(|&(a, b)| [a, b]).collect();
        let n = pts.len();
        pts.sort_unstable();
        pts.dedup();
        if pts.len() != n {
            return false;
        }
        for i in 0..ch.len() {
            for j in i + 1..ch.len() {
                if cross(ch[i], ch[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn are_disjoint(&self, c1: &Curve, c2: &Curve) -> bool {
        let a = self.chords(c1);
        let b = self.chords(c2);
        let mut pts: Vec<i64> = a.iter().chain(&b).flat_map(|&(x, y)| [x, y]).collect();
        let n = pts.len();
        pts.sort_unstable();
        pts.dedup();
        pts.len() == n && !a.iter().any(|&x| b.iter().any(|&y| cross(x, y)))
    }

    /// The loop obtained by following the curve from the chord after
    /// segment `m`, written in the band generators.
    fn loop_from(&self, curve: &Curve, m: usize) -> FreeWord {
        let k = curve.len();
        FreeWord::reduce_unchecked((1..=k).map(|t| {
            let s = &curve[(m + t) % k];
            s.band as Letter * s.dir
        }))
    }

    /// A based loop freely homotopic to the curve, in band generators.
    pub fn curve_word(&self, curve: &Curve) -> FreeWord {
        self.loop_from(curve, curve.len() - 1)
    }

    /// Images of the band generators under the Dehn twist along `curve`
    /// (`sign = 1`) or its inverse (`sign = -1`).
    ///
    /// Each generator is the out-chord from the basepoint to `p_k`, the band,
    /// and the return chord from `q_k`.  Every crossing of a chord of the curve
    /// along the way inserts one copy of the curve, read from that chord and
    /// oriented by the side on which the crossing happens.
    pub fn twist_images(&self, curve: &Curve, sign: i32) -> Vec<FreeWord> {
        let ch = self.chords(curve);
        (1..=self.rank())
            .map(|k| {
                let mut w = self.leg(curve, &ch, (0, self.p[k]), sign);
                w.push(k as Letter);
                w.extend_from(&self.leg(curve, &ch, (self.q[k], 0), sign));
                w
            })
            .collect()
    }

    fn leg(&self, curve: &Curve, ch: &[Chord], (u, v): Chord, sign: i32) -> FreeWord {
        let mut hits: Vec<(usize, FreeWord)> = Vec::new();
        for (m, &(s, t)) in ch.iter().enumerate() {
            if cross((u, v), (s, t)) {
                let forward = in_arc(t, u, v);
                let l = self.loop_from(curve, m);
                hits.push((m, if forward == (sign > 0) { l } else { l.inverse() }));
            }
        }
        // Crossed chords are pairwise disjoint, so they are totally ordered
        // along the leg: `a` precedes `b` when `b` lies on the far side of `a`.
        let before = |a: usize, b: usize| {
            let (s, t) = ch[a];
            let (s2, t2) = ch[b];
            let vside = in_arc(v, s, t);
            in_arc(s2, s, t) == vside && in_arc(t2, s, t) == vside
        };
        hits.sort_by(|x, y| {
            if x.0 == y.0 {
                std::cmp::Ordering::Equal
            } else if before(x.0, y.0) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let mut w = FreeWord::empty();
        for (_, l) in &hits {
            w.extend_from(l);
        }
        w
    }

    /// The standard generator curves `c_0..c_{2g}` of the chain picture.
    pub fn generator_curves(&self) -> Vec<Curve> {
        let g = self.genus;
        let mut c = vec![Vec::new(); 2 * g + 1];
        for i in 1..=g {
            c[2 * i] = vec![seg(band_a(i - 1), 1, 1)];
        }
        c[1] = vec![seg(band_b(0), 1, 1)];
        c[0] = vec![seg(band_b(1), 1, 1)];
        for i in 1..g {
            c[2 * i + 1] = vec![
                seg(band_b(i - 1), 1, -3),
                seg(band_a(i), 1, -3),
                seg(band_b(i), -1, 3),
                seg(band_a(i), -1, -1),
            ];
        }
        c
    }
}

/// Whether `x` lies in the open counterclockwise arc from `a` to `b`.
fn in_arc(x: i64, a: i64, b: i64) -> bool {
    if a < b {
        a < x && x < b
    } else {
        x > a || x < b
    }
}

fn cross((a, b): Chord, (c, d): Chord) -> bool {
    in_arc(c, a, b) != in_arc(d, a, b)
}

/// Rewrites a word in band generators into the symplectic basis
/// `x_{2i-1} = y_{2i-1}`, `x_{2i} = y_{2i}^{-1}`.
pub fn to_symplectic(w: &FreeWord) -> FreeWord {
    FreeWord::reduce_unchecked(w.letters().iter().map(|&y| {
        if y.unsigned_abs() % 2 == 0 {
            -y
        } else {
            y
        }
    }))
}

/// Images of `x_1..x_{2g}` under the twist, in the symplectic basis.
pub fn symplectic_twist_images(surface: &BandSurface, curve: &Curve, sign: i32) -> Vec<FreeWord> {
    surface
        .twist_images(curve, sign)
        .into_iter()
        .enumerate()
        .map(|(i, img)| {
            let img = to_symplectic(&img);
            if i % 2 == 1 {
                img.inverse()
            } else {
                img
            }
        })
        .collect()
}
