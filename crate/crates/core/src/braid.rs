//! Braid words and the Artin action on the free group.

use crate::automorphism::{Automorphism, DEFAULT_WORD_CAP};
use crate::error::{Error, Result};
use crate::word::FreeWord;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    /// `(i, sign)` for `σ_i^{sign}`, `1 ≤ i < strands`.
    letters: Vec<(usize, i32)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i32)>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::InvalidParameter(format!("{strands} strands")));
        }
        for &(i, s) in &letters {
            if i == 0 || i >= strands || s.abs() != 1 {
                return Err(Error::InvalidParameter(format!("σ_{i}^{s} in B_{strands}")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// The positive word `σ_{i_1} σ_{i_2} ⋯`.
    pub fn positive(strands: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(strands, indices.into_iter().map(|i| (i, 1)).collect())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, i32)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::InvalidParameter("strand mismatch".into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn pow(&self, n: usize) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.repeat(n),
        }
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect(),
        }
    }

    /// `Δ² = (σ_1 ⋯ σ_{n-1})^n`.
    pub fn full_twist(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: (1..strands).map(|i| (i, 1)).collect::<Vec<_>>().repeat(strands),
        }
    }
}

fn sigma(n: usize, i: usize, sign: i32) -> Automorphism {
    let mut images: Vec<FreeWord> = (1..=n).map(FreeWord::generator).collect();
    let xi = FreeWord::generator(i);
    let xj = FreeWord::generator(i + 1);
    if sign > 0 {
        images[i - 1] = xi.concat(&xj).concat(&xi.inverse());
        images[i] = xi;
    } else {
        images[i - 1] = xj.clone();
        images[i] = xj.inverse().concat(&xi).concat(&xj);
    }
    Automorphism::from_images(n, images).expect("valid images")
}

/// The Artin automorphism of `F_n`: `σ_i` sends `x_i ↦ x_i x_{i+1} x_i⁻¹`
/// and `x_{i+1} ↦ x_i`, and letters act left to right.
pub fn artin_auto(b: &BraidWord) -> Result<Automorphism> {
    let mut f = Automorphism::identity(b.strands);
    for &(i, s) in &b.letters {
        f = f.then(&sigma(b.strands, i, s), DEFAULT_WORD_CAP)?;
    }
    Ok(f)
}

pub fn braid_equal(b1: &BraidWord, b2: &BraidWord) -> Result<bool> {
    if b1.strands != b2.strands {
        return Err(Error::InvalidParameter(format!(
            "strand mismatch: {} vs {}",
            b1.strands, b2.strands
        )));
    }
    Ok(artin_auto(b1)? == artin_auto(b2)?)
}

/// The four pieces `a′, a″, b′, b″` of the full twist of `B_{2g+1}` used to
/// build `R_n`.
#[derive(Debug, Clone)]
pub struct RnBraidParts {
    pub a1: BraidWord,
    pub a2: BraidWord,
    pub b1: BraidWord,
    pub b2: BraidWord,
}

/// Index sequences of the four pieces, shared with the surface version.
pub fn rn_index_parts(g: usize, n: usize) -> Result<[Vec<usize>; 4]> {
    if g < 3 || n <= 1 || n >= 2 * g {
        return Err(Error::InvalidParameter(format!("need 1 < n < 2g, got g={g}, n={n}")));
    }
    let a1 = (1..n).collect::<Vec<_>>().repeat(n);
    let a2 = (n + 1..=2 * g).collect::<Vec<_>>().repeat(2 * g - n + 1);
    let b1 = (1..=n).rev().flat_map(|i| i..=i + 2 * g - n).collect();
    let b2 = (1..=2 * g - n + 1).rev().flat_map(|i| i..=i + n - 1).collect();
    Ok([a1, a2, b1, b2])
}

pub fn build_rn_braid_parts(g: usize, n: usize) -> Result<RnBraidParts> {
    let [a1, a2, b1, b2] = rn_index_parts(g, n)?;
    let strands = 2 * g + 1;
    Ok(RnBraidParts {
        a1: BraidWord::positive(strands, a1)?,
        a2: BraidWord::positive(strands, a2)?,
        b1: BraidWord::positive(strands, b1)?,
        b2: BraidWord::positive(strands, b2)?,
    })
}
