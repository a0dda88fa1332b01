#![allow(dead_code)]

use hurwitz::derivation::{apply_step, DerivationCertificate, RelationKind, SignedFactorization, Step};
use hurwitz::{Factor, Factorization, Generator, McgLetter, McgWord, Move, MoveCertificate, TwistTable};
use rand::Rng;

pub fn random_generator<R: Rng>(rng: &mut R, g: usize, separating: bool) -> Generator {
    if separating && rng.gen_bool(0.15) {
        Generator::S(rng.gen_range(1..=g / 2))
    } else {
        Generator::A(rng.gen_range(0..=2 * g))
    }
}

pub fn random_word<R: Rng>(rng: &mut R, g: usize, max_len: usize) -> McgWord {
    let len = rng.gen_range(0..=max_len);
    McgWord::from_letters((0..len).map(|_| McgLetter::new(Generator::A(rng.gen_range(0..=2 * g)), rng.gen())))
}

pub fn random_factorization<R: Rng>(rng: &mut R, g: usize, max_r: usize, separating: bool) -> Factorization {
    let r = rng.gen_range(1..=max_r);
    let factors = (0..r)
        .map(|_| Factor::new(random_generator(rng, g, separating), random_word(rng, g, 3)))
        .collect();
    Factorization::new(g, factors)
}

pub fn random_hurwitz_moves<R: Rng>(rng: &mut R, r: usize, count: usize) -> MoveCertificate {
    if r < 2 {
        return MoveCertificate::default();
    }
    MoveCertificate::new(
        (0..count)
            .map(|_| {
                let i = rng.gen_range(0..r - 1);
                if rng.gen() {
                    Move::HurwitzR(i)
                } else {
                    Move::HurwitzL(i)
                }
            })
            .collect(),
    )
}

/// A random legal derivation of `len` steps from `start`, keeping at most
/// `max_negatives` negative factors.
pub fn random_derivation<R: Rng>(
    rng: &mut R,
    start: &SignedFactorization,
    len: usize,
    max_negatives: usize,
    t: &TwistTable,
) -> (DerivationCertificate, SignedFactorization) {
    let g = start.genus;
    let mut cur = start.clone();
    let mut steps = Vec::new();
    let mut attempts = 0;
    while steps.len() < len && attempts < 50 * len {
        attempts += 1;
        let r = cur.len();
        let pos = rng.gen_range(0..r.max(1));
        let step = match rng.gen_range(0..6) {
            0 => Step::HurwitzR(pos),
            1 => Step::HurwitzL(pos),
            2 if cur.negative_count() < max_negatives => {
                Step::PairCreate(rng.gen_range(0..=r), McgLetter::new(Generator::A(rng.gen_range(0..=2 * g)), rng.gen()))
            }
            3 => Step::PairCancel(pos),
            4 => Step::Relation {
                kind: RelationKind::Commute,
                forward: true,
                pos,
            },
            _ => Step::Relation {
                kind: RelationKind::Braid,
                forward: true,
                pos,
            },
        };
        let mut next = cur.clone();
        if apply_step(&mut next, &step, steps.len(), t).is_ok() {
            cur = next;
            steps.push(step);
        }
    }
    (DerivationCertificate::new(steps), cur)
}
