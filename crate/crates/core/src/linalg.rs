//! Exact kernels and signatures of integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A basis of the rational kernel of a `rows × cols` integer matrix, each
/// vector scaled to a primitive integer vector.  Vectors are returned
/// sparse, as `(index, value)` pairs.
pub fn kernel_basis(m: &[Vec<i64>], cols: usize) -> Vec<Vec<(usize, BigInt)>> {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let rows = a.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for f in 0..cols {
        if pivots.contains(&f) {
            continue;
        }
        let mut entries: Vec<(usize, BigRational)> = vec![(f, BigRational::one())];
        for (row, &p) in pivots.iter().enumerate() {
            if !a[row][f].is_zero() {
                entries.push((p, -a[row][f].clone()));
            }
        }
        let den = entries.iter().fold(BigInt::one(), |l, (_, x)| l.lcm(x.denom()));
        let mut ints: Vec<(usize, BigInt)> = entries
            .into_iter()
            .map(|(i, x)| (i, (x * BigRational::from_integer(den.clone())).to_integer()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
        if !g.is_one() {
            for (_, x) in ints.iter_mut() {
                *x /= &g;
            }
        }
        ints.sort_by_key(|(i, _)| *i);
        basis.push(ints);
    }
    basis
}

/// Rank and signature of a symmetric integer matrix.
///
/// Fraction-free symmetric elimination: after `k` steps the trailing block
/// holds the previous pivot times the Schur complement, and the sign of the
/// `k`-th diagonal entry of the congruent diagonal form is the sign of the
/// ratio of consecutive pivots.  When the trailing diagonal vanishes but the
/// block does not, adding row and column `j` to row and column `k` makes the
/// diagonal `2 a_kj`.
pub fn symmetric_signature(mut a: Vec<Vec<BigInt>>) -> (usize, i64) {
    let n = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    let mut sig = 0i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                swap_sym(&mut a, k, j);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                swap_sym(&mut a, k, i);
                add_sym(&mut a, k, j);
            } else {
                break;
            }
        }
        let p = a[k][k].clone();
        let s = if p.is_positive() == prev.is_positive() { 1 } else { -1 };
        sig += s;
        rank += 1;
        for i in k + 1..n {
            for j in i..n {
                let v = (&p * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v.clone();
                a[j][i] = v;
            }
        }
        prev = p;
    }
    (rank, sig)
}

fn swap_sym(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Row `k` += row `j`, then column `k` += column `j`.
fn add_sym(a: &mut [Vec<BigInt>], k: usize, j: usize) {
    let row_j = a[j].clone();
    for (x, v) in a[k].iter_mut().zip(row_j) {
        *x += v;
    }
    for row in a.iter_mut() {
        let v = row[j].clone();
        row[k] += v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn diagonal_and_hyperbolic() {
        assert_eq!(symmetric_signature(big(&[&[1, 0], &[0, -3]])), (2, 0));
        assert_eq!(symmetric_signature(big(&[&[0, 1], &[1, 0]])), (2, 0));
        assert_eq!(symmetric_signature(big(&[&[-2, 1, 0], &[1, -2, 1], &[0, 1, -2]])), (3, -3));
        assert_eq!(symmetric_signature(big(&[&[0, 0], &[0, 0]])), (0, 0));
        assert_eq!(symmetric_signature(big(&[&[0, 0, 0], &[0, 0, 2], &[0, 2, 5]])), (2, 0));
        assert_eq!(symmetric_signature(Vec::new()), (0, 0));
    }

    #[test]
    fn degenerate_with_zero_leading_minor() {
        // 2xy + 4z²: one hyperbolic pair and one positive square.
        assert_eq!(symmetric_signature(big(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 4]])), (3, 1));
        assert_eq!(symmetric_signature(big(&[&[1, 1], &[1, 1]])), (1, 1));
    }

    #[test]
    fn kernel_of_small_matrix() {
        let k = kernel_basis(&[vec![1, 2, 3], vec![2, 4, 6]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigInt = v.iter().map(|(i, x)| x * BigInt::from([1, 2, 3][*i])).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(kernel_basis(&[vec![0, 0]], 2).len(), 2);
        assert!(kernel_basis(&[vec![1, 0], vec![0, 1]], 2).is_empty());
    }
}
