//! Automorphisms of a free group, given by the images of the generators.
//!
//! Composition reads left to right: `f.then(g)` applies `f` first, so its
//! images are `g` substituted into the images of `f`.

use crate::error::{Error, Result};
use crate::homology::IntMatrix;
use crate::word::{FreeWord, Letter};

/// Default bound on the length of any image produced during composition.
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    rank: usize,
    images: Vec<FreeWord>,
}

impl Automorphism {
    pub fn identity(rank: usize) -> Self {
        Automorphism {
            rank,
            images: (1..=rank).map(FreeWord::generator).collect(),
        }
    }

    pub fn from_images(rank: usize, images: Vec<FreeWord>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::InvalidParameter(format!(
                "expected {rank} images, got {}",
                images.len()
            )));
        }
        for w in &images {
            FreeWord::reduce(w.letters(), rank)?;
        }
        Ok(Automorphism { rank, images })
    }

    /// Conjugation `x ↦ w x w⁻¹`.
    pub fn inner(rank: usize, w: &FreeWord) -> Self {
        let images = (1..=rank)
            .map(|k| {
                let mut img = w.clone();
                img.push(k as Letter);
                img.extend_inverse_of(w);
                img
            })
            .collect();
        Automorphism { rank, images }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn genus(&self) -> usize {
        self.rank / 2
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn image(&self, k: usize) -> &FreeWord {
        &self.images[k - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.letters() == [i as Letter + 1])
    }

    /// Image of a word, without a length bound.
    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        self.apply_capped(w, usize::MAX).expect("uncapped")
    }

    pub fn apply_capped(&self, w: &FreeWord, cap: usize) -> Result<FreeWord> {
        let mut out = FreeWord::empty();
        for &x in w.letters() {
            let img = &self.images[x.unsigned_abs() as usize - 1];
            if x > 0 {
                out.extend_from(img);
            } else {
                out.extend_inverse_of(img);
            }
            if out.len() > cap {
                return Err(Error::WordTooLong { len: out.len(), cap });
            }
        }
        Ok(out)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Automorphism, cap: usize) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::GenusMismatch {
                left: self.genus(),
                right: other.genus(),
            });
        }
        let images = self
            .images
            .iter()
            .map(|w| other.apply_capped(w, cap))
            .collect::<Result<Vec<_>>>()?;
        Ok(Automorphism {
            rank: self.rank,
            images,
        })
    }

    /// The inverse, found by Nielsen reduction of the image tuple.
    pub fn inverse(&self) -> Result<Self> {
        invert_by_nielsen(self)
    }

    /// Matrix of the induced map on the abelianization; column `j` is the
    /// exponent-sum vector of the image of `x_{j+1}`.
    pub fn abelianize(&self) -> IntMatrix {
        let cols: Vec<Vec<i64>> = self
            .images
            .iter()
            .map(|w| w.exponent_sums(self.rank))
            .collect();
        IntMatrix::from_columns(self.rank, &cols)
    }

    /// Returns `m` when `self` is conjugation by `∂^m`, where `∂` is the
    /// boundary word of a genus `rank/2` surface.
    pub fn detect_boundary_power(&self) -> Option<i64> {
        if self.rank % 2 != 0 {
            return None;
        }
        if self.is_identity() {
            return Some(0);
        }
        let d = boundary_word(self.genus());
        let longest = self.images.iter().map(FreeWord::len).max().unwrap_or(0);
        let mut m: i64 = 1;
        while 2 * m as usize * d.len() <= longest + 1 {
            for s in [m, -m] {
                if *self == Automorphism::inner(self.rank, &d.pow(s)) {
                    return Some(s);
                }
            }
            m += 1;
        }
        None
    }
}

/// `∂ = ∏_{i=1..g} [x_{2i-1}, x_{2i}]`.
pub fn boundary_word(genus: usize) -> FreeWord {
    partial_boundary_word(genus)
}

/// `∏_{i=1..h} [x_{2i-1}, x_{2i}]`, the boundary of the first `h` handles.
pub fn partial_boundary_word(h: usize) -> FreeWord {
    let mut w = FreeWord::empty();
    for i in 1..=h {
        let a = FreeWord::generator(2 * i - 1);
        let b = FreeWord::generator(2 * i);
        w.extend_from(&FreeWord::commutator(&a, &b));
    }
    w
}

/// `compose(f, g)`: apply `f`, then `g`.
pub fn compose(f: &Automorphism, g: &Automorphism) -> Result<Automorphism> {
    f.then(g, DEFAULT_WORD_CAP)
}

/// Nielsen reduction: repeatedly shorten the tuple of images by multiplying
/// one element by another (or its inverse) while recording the same moves on
/// a tuple that starts as the basis.  When the tuple becomes the basis up to
/// permutation and inversion, the recorded tuple is the inverse.
fn invert_by_nielsen(f: &Automorphism) -> Result<Automorphism> {
    let n = f.rank;
    let mut u: Vec<FreeWord> = f.images.clone();
    let mut v: Vec<FreeWord> = (1..=n).map(FreeWord::generator).collect();
    // Invariant: u[k] = f(v[k]) for every k.
    loop {
        let mut improved = false;
        'search: for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for (si, sj) in [(false, false), (false, true), (true, false), (true, true)] {
                    let cand = combine(&u[i], si, &u[j], sj);
                    if cand.len() < u[i].len() {
                        u[i] = cand;
                        v[i] = combine(&v[i], si, &v[j], sj);
                        improved = true;
                        break 'search;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    let mut images = vec![FreeWord::empty(); n];
    for k in 0..n {
        if u[k].len() != 1 {
            return Err(Error::Internal("not an automorphism".into()));
        }
        let x = u[k].letters()[0];
        let target = x.unsigned_abs() as usize - 1;
        images[target] = if x > 0 { v[k].clone() } else { v[k].inverse() };
    }
    Ok(Automorphism { rank: n, images })
}

fn combine(a: &FreeWord, inv_a: bool, b: &FreeWord, inv_b: bool) -> FreeWord {
    let mut w = if inv_a { a.inverse() } else { a.clone() };
    if inv_b {
        w.extend_inverse_of(b);
    } else {
        w.extend_from(b);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(rank: usize) -> Automorphism {
        // x1 -> x1 x2, x2 -> x2, x3 -> x3 x1^-1 ...
        let mut images: Vec<FreeWord> = (1..=rank).map(FreeWord::generator).collect();
        images[0] = FreeWord::reduce(&[1, 2], rank).unwrap();
        images[2] = FreeWord::reduce(&[3, -1, 2], rank).unwrap();
        Automorphism::from_images(rank, images).unwrap()
    }

    #[test]
    fn identity_laws() {
        let f = sample(4);
        let id = Automorphism::identity(4);
        assert_eq!(compose(&id, &f).unwrap(), f);
        assert_eq!(compose(&f, &id).unwrap(), f);
    }

    #[test]
    fn inverse_law() {
        let f = sample(4);
        let g = f.inverse().unwrap();
        assert!(compose(&f, &g).unwrap().is_identity());
        assert!(compose(&g, &f).unwrap().is_identity());
    }

    #[test]
    fn composition_order() {
        let f = sample(4);
        let g = Automorphism::inner(4, &FreeWord::generator(2));
        let fg = compose(&f, &g).unwrap();
        let x1 = FreeWord::generator(1);
        assert_eq!(fg.apply(&x1), g.apply(&f.apply(&x1)));
    }

    #[test]
    fn boundary_power_detection() {
        let d = boundary_word(3);
        assert_eq!(Automorphism::identity(6).detect_boundary_power(), Some(0));
        let t = Automorphism::inner(6, &d);
        assert_eq!(t.detect_boundary_power(), Some(1));
        let t2 = compose(&t, &t).unwrap();
        assert_eq!(t2.detect_boundary_power(), Some(2));
        let ti = Automorphism::inner(6, &d.inverse());
        assert_eq!(ti.detect_boundary_power(), Some(-1));
        assert_eq!(sample(6).detect_boundary_power(), None);
    }

    #[test]
    fn cap_is_enforced() {
        let f = sample(4);
        let mut g = f.clone();
        let mut hit = false;
        for _ in 0..40 {
            match g.then(&f, 50) {
                Ok(h) => g = h,
                Err(Error::WordTooLong { .. }) => {
                    hit = true;
                    break;
                }
                Err(e) => panic!("{e}"),
            }
        }
        assert!(hit);
    }

    #[test]
    fn abelianization_is_a_homomorphism() {
        let f = sample(4);
        let g = Automorphism::inner(4, &FreeWord::generator(3)).then(&f, 1000).unwrap();
        let fg = compose(&f, &g).unwrap();
        assert_eq!(fg.abelianize(), &g.abelianize() * &f.abelianize());
    }
}
