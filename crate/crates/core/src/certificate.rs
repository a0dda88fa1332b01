//! Replayable move certificates for Hurwitz equivalence, and the move macros
//! for factorizations of central elements.
//!
//! Positions are 0-based throughout.

use std::fmt;

use crate::error::{Error, Result};
use crate::factorization::{factor_equal, Factor, Factorization};
use crate::mcg::{McgWord, TwistTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockRelation {
    Chain,
    Lantern,
}

impl BlockRelation {
    /// Generator indices of the two sides: `forward` rewrites the first into
    /// the second.
    pub fn sides(self) -> (Vec<usize>, Vec<usize>) {
        match self {
            BlockRelation::Chain => ([0, 2, 3, 4].repeat(10), [0, 1, 2, 3, 4].repeat(6)),
            BlockRelation::Lantern => (
                [0, 1, 2, 3, 4, 5, 6].repeat(9),
                [0, 2, 3, 4, 5, 6].repeat(12),
            ),
        }
    }

    /// `(source, target)` for a direction.
    pub fn oriented(self, forward: bool) -> (Vec<usize>, Vec<usize>) {
        let (a, b) = self.sides();
        if forward {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BlockRelation::Chain => "chain",
            BlockRelation::Lantern => "lantern",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    HurwitzR(usize),
    HurwitzL(usize),
    GlobalConj(McgWord),
    Subst {
        relation: BlockRelation,
        forward: bool,
        start: usize,
    },
}

impl Move {
    pub fn inverse(&self) -> Move {
        match self {
            Move::HurwitzR(i) => Move::HurwitzL(*i),
            Move::HurwitzL(i) => Move::HurwitzR(*i),
            Move::GlobalConj(w) => Move::GlobalConj(w.inverse()),
            Move::Subst {
                relation,
                forward,
                start,
            } => Move::Subst {
                relation: *relation,
                forward: !forward,
                start: *start,
            },
        }
    }

    /// The same move acting `k` positions further right.
    pub fn shifted(&self, k: usize) -> Move {
        match self {
            Move::HurwitzR(i) => Move::HurwitzR(i + k),
            Move::HurwitzL(i) => Move::HurwitzL(i + k),
            Move::GlobalConj(w) => Move::GlobalConj(w.clone()),
            Move::Subst {
                relation,
                forward,
                start,
            } => Move::Subst {
                relation: *relation,
                forward: *forward,
                start: start + k,
            },
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::HurwitzR(i) => write!(f, "R {i}"),
            Move::HurwitzL(i) => write!(f, "L {i}"),
            Move::GlobalConj(w) => {
                let parts: Vec<String> = w.letters().iter().map(ToString::to_string).collect();
                write!(f, "CONJ {}", parts.join(","))
            }
            Move::Subst {
                relation,
                forward,
                start,
            } => write!(
                f,
                "SUBST {} {} {start}",
                relation.name(),
                if *forward { "fwd" } else { "bwd" }
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoveCertificate {
    pub moves: Vec<Move>,
}

impl MoveCertificate {
    pub fn new(moves: Vec<Move>) -> Self {
        MoveCertificate { moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn extend(&mut self, other: &MoveCertificate) {
        self.moves.extend(other.moves.iter().cloned());
    }

    /// The certificate acting on a factorization with `k` extra factors in
    /// front.
    pub fn shifted(&self, k: usize) -> MoveCertificate {
        MoveCertificate::new(self.moves.iter().map(|m| m.shifted(k)).collect())
    }

    /// The reverse certificate: replaying it from the end returns to the
    /// start up to factor equality.
    pub fn inverse(&self) -> MoveCertificate {
        MoveCertificate::new(self.moves.iter().rev().map(Move::inverse).collect())
    }
}

impl fmt::Display for MoveCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.moves {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Applies one move.  `step` is only used for error reports.
pub fn apply_move(f: &mut Factorization, m: &Move, step: usize, t: &TwistTable) -> Result<()> {
    let illegal = |reason: String| Error::IllegalMove { step, reason };
    match m {
        Move::HurwitzR(i) => f
            .hurwitz_right_in_place(*i)
            .map_err(|e| illegal(e.to_string())),
        Move::HurwitzL(i) => f
            .hurwitz_left_in_place(*i)
            .map_err(|e| illegal(e.to_string())),
        Move::GlobalConj(w) => {
            w.validate(f.genus).map_err(|e| illegal(e.to_string()))?;
            *f = f.global_conjugate(w);
            Ok(())
        }
        Move::Subst {
            relation,
            forward,
            start,
        } => {
            let (source, target) = relation.oriented(*forward);
            let block = match f.factors.get(*start..*start + source.len()) {
                Some(b) => b,
                None => {
                    return Err(illegal(format!(
                        "{} block at {start} exceeds {} factors",
                        relation.name(),
                        f.len()
                    )))
                }
            };
            for (k, (have, &want)) in block.iter().zip(&source).enumerate() {
                if !factor_equal(have, &Factor::a(want), t)? {
                    return Err(illegal(format!(
                        "{} block factor {} is not a{want}",
                        relation.name(),
                        start + k
                    )));
                }
            }
            if !t.mcg_equal(&McgWord::chain(source.iter().copied()), &McgWord::chain(target.iter().copied()))? {
                return Err(illegal(format!("{} block products differ", relation.name())));
            }
            let replacement = target.iter().map(|&i| Factor::a(i));
            f.factors.splice(*start..*start + source.len(), replacement);
            Ok(())
        }
    }
}

pub fn replay(start: &Factorization, cert: &MoveCertificate, t: &TwistTable) -> Result<Factorization> {
    let mut f = start.clone();
    for (step, m) in cert.moves.iter().enumerate() {
        apply_move(&mut f, m, step, t)?;
    }
    Ok(f)
}

/// Replays `cert` from `start` and compares with `end` factor by factor.
pub fn check_certificate(
    start: &Factorization,
    cert: &MoveCertificate,
    end: &Factorization,
    t: &TwistTable,
) -> Result<bool> {
    let reached = replay(start, cert, t)?;
    reached.equal_factorwise(end, t)
}

fn require_central(f: &Factorization, t: &TwistTable) -> Result<()> {
    match f.boundary_power(t)? {
        Some(_) => Ok(()),
        None => Err(Error::NotCentral),
    }
}

/// Moves turning the block `τ X` at `offset` (length `len`, central product)
/// into `X τ`.
pub fn rotate_moves(offset: usize, len: usize) -> Vec<Move> {
    (0..len.saturating_sub(1)).map(|k| Move::HurwitzR(offset + k)).collect()
}

/// `X · C → C · (X)_T` for a block `X` of `m` factors at `offset` followed by
/// a block `C` of `n` factors with central product `T`.
pub fn pass_right_over_central(offset: usize, m: usize, n: usize) -> Vec<Move> {
    let mut moves = Vec::with_capacity(m * n);
    for j in (0..m).rev() {
        for p in 0..n {
            moves.push(Move::HurwitzR(offset + j + p));
        }
    }
    moves
}

/// `C · X → (X)_{T⁻¹} · C` for a central block `C` of `n` factors at
/// `offset` followed by a block `X` of `m` factors.
pub fn pass_left_over_central(offset: usize, n: usize, m: usize) -> Vec<Move> {
    let mut moves = Vec::with_capacity(m * n);
    for k in 0..m {
        for p in (0..n).rev() {
            moves.push(Move::HurwitzL(offset + k + p));
        }
    }
    moves
}

/// Moves conjugating a whole central factorization of length `r` by its
/// factor at `p` (or by the inverse of that factor), leaving every factor
/// in place.
pub fn conjugation_step_moves(r: usize, p: usize, inverse: bool) -> Vec<Move> {
    if r < 2 {
        return Vec::new();
    }
    let mut moves = Vec::with_capacity(2 * r);
    if !inverse {
        moves.extend((0..p).rev().map(Move::HurwitzR));
        moves.extend((0..r - 1).map(Move::HurwitzR));
        moves.extend((p..r - 1).rev().map(Move::HurwitzR));
    } else {
        moves.extend((p..r - 1).map(Move::HurwitzL));
        moves.extend((0..r - 1).rev().map(Move::HurwitzL));
        moves.extend((0..p).map(Move::HurwitzL));
    }
    moves
}

/// Rotation moving the first factor to the end, with its certificate.
pub fn rotate_certificate(f: &Factorization, t: &TwistTable) -> Result<(Factorization, MoveCertificate)> {
    require_central(f, t)?;
    let mut rotated = f.clone();
    if !rotated.is_empty() {
        rotated.factors.rotate_left(1);
    }
    Ok((rotated, MoveCertificate::new(rotate_moves(0, f.len()))))
}

/// A word in the factors of a factorization: `(position, inverse)` letters.
pub type FactorWord = Vec<(usize, bool)>;

/// The mapping class of a factor word, as a generator word.
pub fn factor_word_value(f: &Factorization, phi: &[(usize, bool)]) -> Result<McgWord> {
    let mut w = McgWord::empty();
    for &(p, inv) in phi {
        let x = f.factors.get(p).ok_or(Error::IndexOutOfRange { index: p, len: f.len() })?;
        w.extend_from(&if inv { x.inverse_word() } else { x.word() });
    }
    Ok(w)
}

/// Certificate from `f` to `(f)_φ`, where `φ` is given as a word in the
/// factors of `f`.
pub fn conjugation_certificate(f: &Factorization, phi: &[(usize, bool)], t: &TwistTable) -> Result<MoveCertificate> {
    require_central(f, t)?;
    for &(p, _) in phi {
        if p >= f.len() {
            return Err(Error::IndexOutOfRange { index: p, len: f.len() });
        }
    }
    let mut moves = Vec::new();
    for &(p, inv) in phi.iter().rev() {
        moves.extend(conjugation_step_moves(f.len(), p, inv));
    }
    Ok(MoveCertificate::new(moves))
}

/// Certificate from `f′ · f` to `f · f′` when `f` has central product.
pub fn block_commute_certificate(f_prime: &Factorization, f: &Factorization, t: &TwistTable) -> Result<MoveCertificate> {
    require_central(f, t)?;
    Ok(MoveCertificate::new(pass_right_over_central(0, f_prime.len(), f.len())))
}
