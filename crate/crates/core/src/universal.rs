//! The named factorizations of the boundary twist and the copies with one
//! factor removed that absorb negative twists.

use std::fmt;

use crate::braid::rn_index_parts;
use crate::certificate::{rotate_moves, MoveCertificate};
use crate::error::{Error, Result};
use crate::factorization::Factorization;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UniversalKind {
    A,
    B,
    C,
    D,
    F0,
    Hyperelliptic,
    Rn(usize),
}

impl fmt::Display for UniversalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniversalKind::A => write!(f, "A"),
            UniversalKind::B => write!(f, "B"),
            UniversalKind::C => write!(f, "C"),
            UniversalKind::D => write!(f, "D"),
            UniversalKind::F0 => write!(f, "F0"),
            UniversalKind::Hyperelliptic => write!(f, "H"),
            UniversalKind::Rn(n) => write!(f, "R{n}"),
        }
    }
}

impl std::str::FromStr for UniversalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" => UniversalKind::A,
            "B" => UniversalKind::B,
            "C" => UniversalKind::C,
            "D" => UniversalKind::D,
            "F0" => UniversalKind::F0,
            "H" | "hyperelliptic" => UniversalKind::Hyperelliptic,
            _ => match s.strip_prefix('R').map(str::parse::<usize>) {
                Some(Ok(n)) => UniversalKind::Rn(n),
                _ => return Err(Error::InvalidParameter(format!("unknown factorization kind {s:?}"))),
            },
        })
    }
}

fn check_genus(g: usize) -> Result<()> {
    if g < 3 {
        return Err(Error::GenusTooSmall(g));
    }
    Ok(())
}

/// Generator indices of `R_n`: `a″`, then `b′`, then `b″` of the braid
/// picture, with the outer products taken for descending `i`.
pub fn rn_indices(g: usize, n: usize) -> Result<Vec<usize>> {
    let [_, a2, b1, b2] = rn_index_parts(g, n)?;
    Ok([a2, b1, b2].concat())
}

pub fn build_rn(g: usize, n: usize) -> Result<Factorization> {
    Ok(Factorization::from_indices(g, rn_indices(g, n)?))
}

/// `(a_1 ⋯ a_{n-1})^{2n} · (R_n)²`.
pub fn rn_full_indices(g: usize, n: usize) -> Result<Vec<usize>> {
    let r = rn_indices(g, n)?;
    let mut v = (1..n).collect::<Vec<_>>().repeat(2 * n);
    v.extend(&r);
    v.extend(&r);
    Ok(v)
}

/// `(R_7)²`, empty at genus 3.
fn r7_squared(g: usize) -> Result<Vec<usize>> {
    if g == 3 {
        Ok(Vec::new())
    } else {
        Ok(rn_indices(g, 7)?.repeat(2))
    }
}

pub fn universal_indices(kind: UniversalKind, g: usize) -> Result<Vec<usize>> {
    check_genus(g)?;
    let block = |head: &[usize], power: usize, tail: Vec<usize>| {
        let mut v = head.repeat(power);
        v.extend(tail);
        v
    };
    Ok(match kind {
        UniversalKind::A => block(&[0, 2, 3, 4], 10, rn_indices(g, 5)?.repeat(2)),
        UniversalKind::B => block(&[0, 1, 2, 3, 4], 6, rn_indices(g, 5)?.repeat(2)),
        UniversalKind::C => block(&[0, 1, 2, 3, 4, 5, 6], 9, r7_squared(g)?),
        UniversalKind::D => block(&[0, 2, 3, 4, 5, 6], 12, r7_squared(g)?),
        UniversalKind::F0 => [UniversalKind::A, UniversalKind::B, UniversalKind::C, UniversalKind::D]
            .into_iter()
            .map(|k| universal_indices(k, g))
            .collect::<Result<Vec<_>>>()?
            .concat(),
        UniversalKind::Hyperelliptic => (1..=2 * g).collect::<Vec<_>>().repeat(4 * g + 2),
        UniversalKind::Rn(n) => rn_indices(g, n)?,
    })
}

pub fn build_universal(kind: UniversalKind, g: usize) -> Result<Factorization> {
    Ok(Factorization::from_indices(g, universal_indices(kind, g)?))
}

/// `𝒜` with the first occurrence of `a_i` removed, as a copy of `𝒜` rotated
/// to start right after that occurrence.
#[derive(Debug, Clone)]
pub struct AiData {
    pub i: usize,
    /// 0-based position of the first `a_i` in `𝒜`.
    pub first: usize,
    pub ai: Factorization,
    /// `𝒜 ∼ a_i · 𝒜_i`.
    pub to_front: MoveCertificate,
    /// `𝒜 ∼ 𝒜_i · a_i`.
    pub to_back: MoveCertificate,
}

/// Position of the first `a_i` in `𝒜`.
pub fn first_occurrence_in_a(i: usize, g: usize) -> Result<usize> {
    let a = universal_indices(UniversalKind::A, g)?;
    a.iter()
        .position(|&x| x == i)
        .ok_or_else(|| Error::InvalidParameter(format!("a{i} does not occur in A at genus {g}")))
}

/// Indices of `𝒜_i`.
pub fn ai_indices(i: usize, g: usize) -> Result<Vec<usize>> {
    let mut a = universal_indices(UniversalKind::A, g)?;
    let k = first_occurrence_in_a(i, g)?;
    a.rotate_left(k);
    a.remove(0);
    Ok(a)
}

pub fn build_ai(i: usize, g: usize) -> Result<AiData> {
    if i > 2 * g {
        return Err(Error::GeneratorOutOfRange {
            name: format!("a{i}"),
            genus: g,
        });
    }
    let first = first_occurrence_in_a(i, g)?;
    let len = universal_indices(UniversalKind::A, g)?.len();
    let rot = rotate_moves(0, len);
    let to_front = MoveCertificate::new(std::iter::repeat(rot.clone()).take(first).flatten().collect());
    let to_back = MoveCertificate::new(std::iter::repeat(rot).take(first + 1).flatten().collect());
    Ok(AiData {
        i,
        first,
        ai: Factorization::from_indices(g, ai_indices(i, g)?),
        to_front,
        to_back,
    })
}

pub fn fiber_sum(f1: &Factorization, f2: &Factorization) -> Result<Factorization> {
    f1.concat(f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::check_certificate;
    use crate::factorization::Factor;
    use crate::mcg::TwistTable;

    #[test]
    fn r5_sequence_at_genus_3() {
        assert_eq!(
            rn_indices(3, 5).unwrap(),
            vec![6, 6, 5, 6, 4, 5, 3, 4, 2, 3, 1, 2, 2, 3, 4, 5, 6, 1, 2, 3, 4, 5]
        );
        assert!(build_rn(3, 6).is_err());
    }

    #[test]
    fn lengths() {
        let len = |k, g| build_universal(k, g).unwrap().len();
        assert_eq!(
            [len(UniversalKind::A, 3), len(UniversalKind::B, 3), len(UniversalKind::C, 3), len(UniversalKind::D, 3)],
            [84, 74, 63, 72]
        );
        assert_eq!(len(UniversalKind::F0, 3), 84 + 74 + 63 + 72);
        assert_eq!(build_rn(4, 5).unwrap().len(), 52);
    }

    #[test]
    fn parse_kinds() {
        assert_eq!("R5".parse::<UniversalKind>().unwrap(), UniversalKind::Rn(5));
        assert_eq!("F0".parse::<UniversalKind>().unwrap(), UniversalKind::F0);
        assert!("Q".parse::<UniversalKind>().is_err());
    }

    #[test]
    fn ai_certificates_replay() {
        let t = TwistTable::new(3).unwrap();
        let a = build_universal(UniversalKind::A, 3).unwrap();
        for i in 0..=6 {
            let d = build_ai(i, 3).unwrap();
            assert_eq!(d.ai.len(), 83);
            let front = Factorization::new(3, vec![Factor::a(i)]).concat(&d.ai).unwrap();
            let back = d.ai.concat(&Factorization::new(3, vec![Factor::a(i)])).unwrap();
            assert!(check_certificate(&a, &d.to_front, &front, &t).unwrap(), "front {i}");
            assert!(check_certificate(&a, &d.to_back, &back, &t).unwrap(), "back {i}");
        }
        let d0 = build_ai(0, 3).unwrap();
        assert_eq!(d0.first, 0);
        assert!(d0.to_front.is_empty());
        assert_eq!(d0.ai, Factorization::from_indices(3, universal_indices(UniversalKind::A, 3).unwrap()[1..].to_vec()));
    }
}
