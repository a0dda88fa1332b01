//! Invariants of the Lefschetz fibration described by a factorization.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::homology::{HomologyVector, IntMatrix};
use crate::linalg::{kernel_basis, symmetric_signature};
use crate::mcg::{Generator, TwistTable};

/// `χ = 4 − 4g + r`.
pub fn euler_characteristic(f: &Factorization, g: usize) -> i64 {
    4 - 4 * g as i64 + f.len() as i64
}

/// `−m` when the product is `T_δ^m`.
pub fn section_square(f: &Factorization, t: &TwistTable) -> Result<i64> {
    match f.boundary_power(t)? {
        Some(m) => Ok(-m),
        None => Err(Error::NotBoundaryPower),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FiberCensus {
    pub total: usize,
    pub irreducible: usize,
    /// Number of separating factors of each type `h`.
    pub separating: BTreeMap<usize, usize>,
}

impl FiberCensus {
    pub fn separating_total(&self) -> usize {
        self.separating.values().sum()
    }
}

impl fmt::Display for FiberCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "irreducible: {}", self.irreducible)?;
        for (h, n) in &self.separating {
            write!(f, "\nseparating-{h}: {n}")?;
        }
        Ok(())
    }
}

pub fn census(f: &Factorization) -> FiberCensus {
    let mut c = FiberCensus {
        total: f.len(),
        ..FiberCensus::default()
    };
    for x in &f.factors {
        match x.base {
            Generator::A(_) => c.irreducible += 1,
            Generator::S(h) => *c.separating.entry(h).or_insert(0) += 1,
        }
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureReport {
    pub r: usize,
    /// Dimension of the kernel of the antisymmetrized matrix.
    pub kernel_rank: usize,
    /// Rank of the restricted form.
    pub form_rank: usize,
    pub signature: i64,
    pub census: FiberCensus,
    /// Set when separating vanishing cycles are present; the recipe is then
    /// applied beyond the irreducible case it is established for.
    pub recipe_extrapolated: bool,
}

/// Signature of the fibration; the product must be a boundary power.
pub fn signature(f: &Factorization, t: &TwistTable) -> Result<SignatureReport> {
    section_square(f, t)?;
    signature_unchecked(f, t)
}

/// The recipe applied to any factorization, without the section check.
pub fn signature_unchecked(f: &Factorization, t: &TwistTable) -> Result<SignatureReport> {
    f.check_genus(t)?;
    let classes = f.factors.iter().map(|x| x.class(t)).collect::<Result<Vec<_>>>()?;
    let (kernel_rank, form_rank, signature) = signature_from_classes(&classes, t.pairing())?;
    let census = census(f);
    Ok(SignatureReport {
        r: f.len(),
        kernel_rank,
        form_rank,
        signature,
        recipe_extrapolated: census.separating_total() > 0,
        census,
    })
}

/// `(dim Ker A, rank Q′, σ(Q′))` for vanishing cycle classes `δ_1..δ_r`,
/// where `Q` is upper triangular with `−1` on the diagonal and `δ_i·δ_j`
/// above it, and `A = Q − Qᵗ`.
pub fn signature_from_classes(classes: &[HomologyVector], pairing: &IntMatrix) -> Result<(usize, usize, i64)> {
    let r = classes.len();
    if r == 0 {
        return Ok((0, 0, 0));
    }
    let dim = pairing.rows;
    // A = Dᵗ J D with J unimodular, so Ker A = Ker D.
    let d: Vec<Vec<i64>> = (0..dim).map(|row| classes.iter().map(|c| c.coords[row]).collect()).collect();
    let kernel = kernel_basis(&d, r);
    let jd: Vec<Vec<i64>> = classes.iter().map(|c| pairing.apply(&c.coords)).collect();
    let mut table = vec![0i64; r * r];
    for i in 0..r {
        table[i * r + i] = -1;
        for j in i + 1..r {
            table[i * r + j] = classes[i].coords.iter().zip(&jd[j]).map(|(a, b)| a * b).sum();
        }
    }
    let q = |i: usize, j: usize| table[i * r + j];
    let m = kernel.len();
    let small: Option<Vec<Vec<(usize, i128)>>> = kernel
        .iter()
        .map(|v| v.iter().map(|(i, x)| x.to_i128().filter(|x| x.abs() < 1 << 40).map(|x| (*i, x))).collect())
        .collect();
    let mut qp = vec![vec![BigInt::default(); m]; m];
    for a in 0..m {
        for b in 0..m {
            let entry = match &small {
                Some(k) => {
                    let mut s: i128 = 0;
                    for &(i, x) in &k[a] {
                        for &(j, y) in &k[b] {
                            s += x * y * q(i, j) as i128;
                        }
                    }
                    BigInt::from(s)
                }
                None => {
                    let mut s = BigInt::default();
                    for (i, x) in &kernel[a] {
                        for (j, y) in &kernel[b] {
                            s += x * y * BigInt::from(q(*i, *j));
                        }
                    }
                    s
                }
            };
            qp[a][b] = entry;
        }
    }
    for a in 0..m {
        for b in a + 1..m {
            if qp[a][b] != qp[b][a] {
                return Err(Error::Internal("restricted form is not symmetric".into()));
            }
        }
    }
    let (rank, sig) = symmetric_signature(qp);
    Ok((m, rank, sig))
}

/// `−((g+1)/(2g+1)) s_0 + Σ_h (4h(g−h)/(2g+1) − 1) s_h`, which must be an
/// integer.
pub fn endo_signature(c: &FiberCensus, g: usize) -> Result<i64> {
    let g = g as i64;
    let den = 2 * g + 1;
    let mut num = -(g + 1) * c.irreducible as i64;
    for (&h, &n) in &c.separating {
        let h = h as i64;
        num += (4 * h * (g - h) - den) * n as i64;
    }
    if num % den != 0 {
        return Err(Error::NonInteger(format!("{num}/{den}")));
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::Factor;
    use crate::universal::{build_universal, UniversalKind};

    #[test]
    fn euler_and_section() {
        let t = TwistTable::new(3).unwrap();
        let a = build_universal(UniversalKind::A, 3).unwrap();
        assert_eq!(euler_characteristic(&a, 3), 76);
        assert_eq!(euler_characteristic(&Factorization::from_indices(3, vec![1; 20]), 2), 16);
        assert_eq!(section_square(&a, &t).unwrap(), -1);
        assert_eq!(section_square(&a.concat(&a).unwrap(), &t).unwrap(), -2);
        assert!(section_square(&Factorization::from_indices(3, [1]), &t).is_err());
    }

    #[test]
    fn census_counts() {
        let mut f = build_universal(UniversalKind::A, 3).unwrap();
        assert_eq!(census(&f).irreducible, 84);
        f.factors.push(Factor::bare(Generator::S(1)));
        let c = census(&f);
        assert_eq!(c.separating.get(&1), Some(&1));
        assert_eq!(c.total, 85);
    }

    #[test]
    fn endo_values() {
        let c = |s0| FiberCensus {
            total: s0,
            irreducible: s0,
            separating: BTreeMap::new(),
        };
        assert_eq!(endo_signature(&c(84), 3).unwrap(), -48);
        assert_eq!(endo_signature(&c(144), 4).unwrap(), -80);
        assert_eq!(endo_signature(&c(0), 3).unwrap(), 0);
        assert!(endo_signature(&c(1), 3).is_err());
    }

    #[test]
    fn empty_signature() {
        let t = TwistTable::new(3).unwrap();
        let r = signature(&Factorization::empty(3), &t).unwrap();
        assert_eq!((r.r, r.signature), (0, 0));
    }

    #[test]
    fn hyperelliptic_signature() {
        let t = TwistTable::new(3).unwrap();
        let h = build_universal(UniversalKind::Hyperelliptic, 3).unwrap();
        let r = signature(&h, &t).unwrap();
        assert_eq!(r.signature, -48);
        assert_eq!(r.kernel_rank, 84 - 6);
        assert_eq!(r.form_rank, 84 - 12);
        assert!(!r.recipe_extrapolated);
    }
}
