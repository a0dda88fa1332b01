//! Compilation of derivations into positive Hurwitz certificates, stabilized
//! by universal factorizations appended on the right.
//!
//! The working factorization is kept as a list of segments followed by a
//! pool of universal copies.  A negative factor `a_i⁻¹` is represented by
//! the block `𝒜_i`; chain and lantern substitutions are realized by trading
//! one pool copy for another.

use std::fmt;

use crate::certificate::{check_certificate, pass_left_over_central, pass_right_over_central, replay, rotate_moves, BlockRelation, Move, MoveCertificate};
use crate::derivation::{apply_step, inverse_derivation, replay_derivation, simplify, DerivationCertificate, RelationKind, SignedFactorization, Step};
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::invariants::{census, section_square, signature};
use crate::mcg::{Generator, McgLetter, TwistTable};
use crate::universal::{universal_indices, UniversalKind};

/// The pool kinds, in the order used for counts and layouts.
pub const POOL_KINDS: [UniversalKind; 4] = [UniversalKind::A, UniversalKind::B, UniversalKind::C, UniversalKind::D];

fn kind_index(k: UniversalKind) -> usize {
    match k {
        UniversalKind::A => 0,
        UniversalKind::B => 1,
        UniversalKind::C => 2,
        UniversalKind::D => 3,
        _ => unreachable!("not a pool kind"),
    }
}

/// Counts of the pool kinds `𝒜, ℬ, 𝒞, 𝒟`.
pub type PoolCounts = [usize; 4];

/// Pool layout for the given counts: rounds of `𝒜ℬ𝒞𝒟`, skipping exhausted
/// kinds, so equal counts `t` give `(ℱ₀)^t`.
pub fn canonical_pool(counts: PoolCounts) -> Vec<UniversalKind> {
    let mut left = counts;
    let mut out = Vec::with_capacity(counts.iter().sum());
    while left.iter().any(|&c| c > 0) {
        for (i, c) in left.iter_mut().enumerate() {
            if *c > 0 {
                *c -= 1;
                out.push(POOL_KINDS[i]);
            }
        }
    }
    out
}

pub fn pool_factorization(pool: &[UniversalKind], g: usize) -> Result<Factorization> {
    let mut idx = Vec::new();
    for &k in pool {
        idx.extend(universal_indices(k, g)?);
    }
    Ok(Factorization::from_indices(g, idx))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StabilizationLedger {
    /// Largest number of negative factors along the derivation.
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub k: i64,
    pub l: i64,
    /// Copies of `𝒜` used up by the separating factors.
    pub reducible_copies: usize,
}

impl fmt::Display for StabilizationLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n: {}\nN: {}\na: {}\nb: {}\nc: {}\nd: {}\nk: {}\nl: {}",
            self.n, self.reducible_copies, self.a, self.b, self.c, self.d, self.k, self.l
        )
    }
}

/// The copy consumed and the copy produced when a block relation is traded.
pub fn trade_kinds(rel: BlockRelation, forward: bool) -> (UniversalKind, UniversalKind) {
    let (consumed, produced) = match rel {
        BlockRelation::Chain => (UniversalKind::B, UniversalKind::A),
        BlockRelation::Lantern => (UniversalKind::D, UniversalKind::C),
    };
    if forward {
        (consumed, produced)
    } else {
        (produced, consumed)
    }
}

/// Chain and lantern substitutions counted into `l` and `k`, with the pool
/// copies needed to trade them in order.
pub fn trade_ledger(cert: &MoveCertificate) -> StabilizationLedger {
    let mut demand = Demand::default();
    for m in &cert.moves {
        if let Move::Subst { relation, forward, .. } = m {
            demand.trade(*relation, *forward);
        }
    }
    demand.ledger()
}

/// Pool usage of a derivation, tracked step by step.
#[derive(Debug, Clone, Default)]
struct Demand {
    balance: [i64; 4],
    need: PoolCounts,
    negatives: usize,
    n: usize,
    k: i64,
    l: i64,
}

impl Demand {
    fn shift(&mut self, kind: UniversalKind, delta: i64) {
        let i = kind_index(kind);
        self.balance[i] += delta;
        self.need[i] = self.need[i].max((-self.balance[i]).max(0) as usize);
    }

    fn trade(&mut self, rel: BlockRelation, forward: bool) {
        let (consumed, produced) = trade_kinds(rel, forward);
        self.shift(consumed, -1);
        self.shift(produced, 1);
        let delta = if forward { 1 } else { -1 };
        match rel {
            BlockRelation::Chain => self.l += delta,
            BlockRelation::Lantern => self.k += delta,
        }
    }

    fn step(&mut self, s: &Step) {
        match s {
            Step::PairCreate(..) => {
                self.shift(UniversalKind::A, -1);
                self.negatives += 1;
                self.n = self.n.max(self.negatives);
            }
            Step::PairCancel(_) => {
                self.shift(UniversalKind::A, 1);
                self.negatives = self.negatives.saturating_sub(1);
            }
            Step::Relation { kind, forward, .. } => {
                if let Some(rel) = kind.block() {
                    self.trade(rel, *forward);
                }
            }
            _ => {}
        }
    }

    fn of(d: &DerivationCertificate) -> Self {
        let mut demand = Demand::default();
        for s in &d.steps {
            demand.step(s);
        }
        demand
    }

    fn ledger(&self) -> StabilizationLedger {
        StabilizationLedger {
            n: self.n,
            a: self.need[0],
            b: self.need[1],
            c: self.need[2],
            d: self.need[3],
            k: self.k,
            l: self.l,
            reducible_copies: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Seg {
    One,
    /// The block `𝒜_i` standing for `a_i⁻¹`.
    Neg(usize),
}

/// Move emitter for `[prefix][segments][pool]`.
struct Engine<'a> {
    t: &'a TwistTable,
    genus: usize,
    lens: [usize; 4],
    a_indices: Vec<usize>,
    prefix: usize,
    segs: Vec<Seg>,
    pool: Vec<UniversalKind>,
    moves: Vec<Move>,
}

impl<'a> Engine<'a> {
    fn new(t: &'a TwistTable, segments: usize, pool: Vec<UniversalKind>) -> Result<Self> {
        let genus = t.genus();
        let mut lens = [0; 4];
        for (i, k) in POOL_KINDS.iter().enumerate() {
            lens[i] = universal_indices(*k, genus)?.len();
        }
        Ok(Engine {
            t,
            genus,
            lens,
            a_indices: universal_indices(UniversalKind::A, genus)?,
            prefix: 0,
            segs: vec![Seg::One; segments],
            pool,
            moves: Vec::new(),
        })
    }

    fn len_a(&self) -> usize {
        self.lens[0]
    }

    fn len_of(&self, k: UniversalKind) -> usize {
        self.lens[kind_index(k)]
    }

    fn seg_len(&self, s: Seg) -> usize {
        match s {
            Seg::One => 1,
            Seg::Neg(_) => self.len_a() - 1,
        }
    }

    fn seg_pos(&self, j: usize) -> usize {
        self.prefix + self.segs[..j].iter().map(|&s| self.seg_len(s)).sum::<usize>()
    }

    fn pool_start(&self) -> usize {
        self.seg_pos(self.segs.len())
    }

    fn counts(&self) -> PoolCounts {
        let mut c = [0; 4];
        for &k in &self.pool {
            c[kind_index(k)] += 1;
        }
        c
    }

    fn first_in_a(&self, i: usize) -> Result<usize> {
        self.a_indices
            .iter()
            .position(|&x| x == i)
            .ok_or_else(|| Error::InvalidParameter(format!("a{i} does not occur in A")))
    }

    /// Brings the first pool copy of `kind` left so that it starts at `to`.
    /// The caller accounts for the copy in the segments.
    fn take(&mut self, kind: UniversalKind, to: usize) -> Result<()> {
        let q = self
            .pool
            .iter()
            .position(|&k| k == kind)
            .ok_or_else(|| Error::Internal(format!("no copy of {kind} left in the pool")))?;
        let at = self.pool_start() + self.pool[..q].iter().map(|&k| self.len_of(k)).sum::<usize>();
        self.moves.extend(pass_right_over_central(to, at - to, self.len_of(kind)));
        self.pool.remove(q);
        Ok(())
    }

    /// Sends the copy starting at `from`, no longer counted in the segments,
    /// to the front of the pool.
    fn give(&mut self, kind: UniversalKind, from: usize) {
        let n = self.len_of(kind);
        let m = self.pool_start() - from;
        self.moves.extend(pass_left_over_central(from, n, m));
        self.pool.insert(0, kind);
    }

    /// Rotates the central block at `p` left by `k` factors, going whichever
    /// way round is shorter.
    fn rotate(&mut self, p: usize, len: usize, k: usize) {
        let k = k % len;
        if k <= len - k {
            for _ in 0..k {
                self.moves.extend(rotate_moves(p, len));
            }
        } else {
            for _ in 0..len - k {
                self.moves.extend((p..p + len - 1).rev().map(Move::HurwitzL));
            }
        }
    }

    fn one_at(&self, i: usize) -> Result<usize> {
        match self.segs.get(i) {
            Some(Seg::One) => Ok(self.seg_pos(i)),
            _ => Err(Error::Internal(format!("segment {i} is not a positive factor"))),
        }
    }

    /// Emits the moves for one derivation step applied to `cur`.
    fn step(&mut self, s: &Step, expand: bool) -> Result<()> {
        match s {
            Step::HurwitzR(i) | Step::HurwitzL(i) => {
                let p = self.one_at(*i)?;
                self.one_at(*i + 1)?;
                self.moves.push(match s {
                    Step::HurwitzR(_) => Move::HurwitzR(p),
                    _ => Move::HurwitzL(p),
                });
            }
            Step::PairCreate(i, l) => {
                let Generator::A(k) = l.gen else {
                    return Err(Error::Internal(format!("cannot create {l}")));
                };
                let p = self.seg_pos(*i);
                self.take(UniversalKind::A, p)?;
                let first = self.first_in_a(k)?;
                let len = self.len_a();
                if l.inverse {
                    self.rotate(p, len, first + 1);
                    self.segs.splice(*i..*i, [Seg::Neg(k), Seg::One]);
                } else {
                    self.rotate(p, len, first);
                    self.segs.splice(*i..*i, [Seg::One, Seg::Neg(k)]);
                }
            }
            Step::PairCancel(i) => {
                let p = self.seg_pos(*i);
                let len = self.len_a();
                let back = match (self.segs.get(*i), self.segs.get(*i + 1)) {
                    (Some(Seg::One), Some(Seg::Neg(k))) => len - self.first_in_a(*k)?,
                    (Some(Seg::Neg(k)), Some(Seg::One)) => len - self.first_in_a(*k)? - 1,
                    _ => return Err(Error::Internal(format!("no inverse pair at {i}"))),
                };
                self.rotate(p, len, back);
                self.segs.drain(*i..*i + 2);
                self.give(UniversalKind::A, p);
            }
            Step::Relation { kind, forward, pos } => {
                let p = self.one_at(*pos)?;
                match kind {
                    RelationKind::Commute => self.moves.push(Move::HurwitzR(p)),
                    RelationKind::Braid => {
                        self.moves.push(Move::HurwitzR(p));
                        self.moves.push(Move::HurwitzR(p + 1));
                    }
                    RelationKind::Chain | RelationKind::Lantern => {
                        let rel = kind.block().expect("block relation");
                        let (source, target) = rel.oriented(*forward);
                        for j in 0..source.len() {
                            self.one_at(pos + j)?;
                        }
                        if expand {
                            self.trade(p, rel, *forward, source.len(), target.len())?;
                        } else {
                            self.moves.push(Move::Subst {
                                relation: rel,
                                forward: *forward,
                                start: p,
                            });
                        }
                        self.segs.splice(*pos..*pos + source.len(), vec![Seg::One; target.len()]);
                    }
                }
            }
        }
        Ok(())
    }

    /// `S · F″ · [pool with T·R²] ∼ T · F″ · [pool with S·R²]`: the copy
    /// `T·R²` is brought next to the block, rotated to `R²·T`, the block
    /// `S·R²` now standing in front of `T` is passed over it, and the new
    /// copy is sent back to the pool.
    fn trade(&mut self, p: usize, rel: BlockRelation, forward: bool, s: usize, t: usize) -> Result<()> {
        let (consumed, produced) = trade_kinds(rel, forward);
        let g = self.genus;
        let (source, target) = rel.oriented(forward);
        if universal_indices(consumed, g)?[..t] != target[..] || universal_indices(produced, g)?[..s] != source[..] {
            return Err(Error::Internal(format!("{} copies do not start with the relation sides", rel.name())));
        }
        let kc = self.len_of(consumed);
        self.take(consumed, p + s)?;
        self.rotate(p + s, kc, t);
        let kp = self.len_of(produced);
        self.moves.extend(pass_left_over_central(p, kp, t));
        // The segments still list the source block; the caller swaps it for
        // the target, after which the produced copy starts at `p + t` and
        // the segments after the block follow it.
        let tail: usize = self.pool_start() - (p + s);
        self.moves.extend(pass_left_over_central(p + t, kp, tail));
        self.pool.insert(0, produced);
        Ok(())
    }

    /// Adjacent copy swaps bringing the pool into the canonical layout.
    fn sort_pool(&mut self) {
        let target = canonical_pool(self.counts());
        for idx in 0..target.len() {
            let j = (idx..self.pool.len()).find(|&j| self.pool[j] == target[idx]).expect("same counts");
            for q in (idx..j).rev() {
                let at = self.pool_start() + self.pool[..q].iter().map(|&k| self.len_of(k)).sum::<usize>();
                let (u, v) = (self.pool[q], self.pool[q + 1]);
                self.moves.extend(pass_left_over_central(at, self.len_of(u), self.len_of(v)));
                self.pool.swap(q, q + 1);
            }
        }
    }

    /// Compiles a derivation starting from `start`, which matches the
    /// segments.
    fn run(&mut self, start: &SignedFactorization, d: &DerivationCertificate, expand: bool) -> Result<SignedFactorization> {
        let mut cur = start.clone();
        for (k, s) in d.steps.iter().enumerate() {
            self.step(s, expand)?;
            apply_step(&mut cur, s, k, self.t)?;
        }
        Ok(cur)
    }
}

/// A derivation from `F` to `F′` as signed factorizations: `d` itself when
/// it replays between them, or `d` conjugated by the simplification
/// derivations when it relates the simplified forms.
pub fn lift_derivation(f: &Factorization, f_prime: &Factorization, d: &DerivationCertificate, t: &TwistTable) -> Result<DerivationCertificate> {
    let sf = SignedFactorization::from_positive(f);
    let sf_prime = SignedFactorization::from_positive(f_prime);
    if let Ok(end) = replay_derivation(&sf, d, t) {
        if end.equal_factorwise(&sf_prime, t)? {
            return Ok(d.clone());
        }
    }
    let (bar, s) = simplify(f)?;
    let (bar_prime, s_prime) = simplify(f_prime)?;
    let end = replay_derivation(&bar, d, t).map_err(|e| Error::EndpointMismatch(format!("derivation start ({e})")))?;
    if !end.equal_factorwise(&bar_prime, t)? {
        return Err(Error::EndpointMismatch("derivation end".into()));
    }
    let back = inverse_derivation(&sf_prime, &s_prime, t)?;
    Ok(s.concat(d).concat(&back))
}

/// `F · (𝒜)ⁿ ≡⁺ F′ · (𝒜)ⁿ`: chain and lantern steps stay as substitutions.
pub fn compile_positive(f: &Factorization, f_prime: &Factorization, d: &DerivationCertificate, t: &TwistTable) -> Result<(usize, MoveCertificate)> {
    let full = lift_derivation(f, f_prime, d, t)?;
    let n = Demand::of(&full).n;
    let mut e = Engine::new(t, f.len(), vec![UniversalKind::A; n])?;
    e.run(&SignedFactorization::from_positive(f), &full, false)?;
    Ok((n, MoveCertificate::new(e.moves)))
}

/// Pool copies needed to compile `d` with trades expanded.
pub fn pool_demand(d: &DerivationCertificate) -> StabilizationLedger {
    Demand::of(d).ledger()
}

/// Pool counts before each step of a compiled, trade-expanded derivation
/// and after the last one.
pub fn pool_history(f: &Factorization, d: &DerivationCertificate, pool: PoolCounts, t: &TwistTable) -> Result<Vec<PoolCounts>> {
    let mut e = Engine::new(t, f.len(), canonical_pool(pool))?;
    let mut cur = SignedFactorization::from_positive(f);
    let mut out = vec![e.counts()];
    for (k, s) in d.steps.iter().enumerate() {
        e.step(s, true)?;
        apply_step(&mut cur, s, k, t)?;
        out.push(e.counts());
    }
    Ok(out)
}

/// Moves bringing the separating factors to the front, ordered by type,
/// using only moves that leave them unchanged.  Returns the moves, the
/// rearranged factorization and the number of separating factors.
fn gather_separating(f: &Factorization, t: &TwistTable) -> Result<(Vec<Move>, Factorization, usize)> {
    let mut order: Vec<(usize, usize)> = f
        .factors
        .iter()
        .enumerate()
        .filter_map(|(i, x)| match x.base {
            Generator::S(h) => Some((h, i)),
            _ => None,
        })
        .collect();
    order.sort();
    let mut pos: Vec<usize> = (0..f.len()).collect();
    let mut moves = Vec::new();
    for (placed, &(_, orig)) in order.iter().enumerate() {
        let q = pos.iter().position(|&o| o == orig).expect("present");
        for i in (placed..q).rev() {
            moves.push(Move::HurwitzR(i));
        }
        let o = pos.remove(q);
        pos.insert(placed, o);
    }
    let gathered = replay(f, &MoveCertificate::new(moves.clone()), t)?;
    Ok((moves, gathered, order.len()))
}

/// Conjugating letters taking each front separating factor of `f` to the
/// corresponding one of `f_prime`.
fn separating_letters(f: &Factorization, f_prime: &Factorization, s: usize) -> Result<Vec<Vec<McgLetter>>> {
    (0..s)
        .map(|j| {
            let (x, y) = (&f.factors[j], &f_prime.factors[j]);
            if x.base != y.base {
                return Err(Error::Hypothesis(format!("separating factor {j} has types {} and {}", x.base, y.base)));
            }
            Ok(x.conj.inverse().concat(&y.conj).expand_separating().letters().to_vec())
        })
        .collect()
}

impl Engine<'_> {
    /// Replaces the separating factors at the front by their conjugates by
    /// `letters[j]`, one letter and one copy of `𝒜` at a time; the used
    /// copies stay behind as non-separating factors.
    fn conjugate_separating(&mut self, letters: &[Vec<McgLetter>]) -> Result<()> {
        let len = self.len_a();
        for (j, word) in letters.iter().enumerate() {
            let q = self.seg_pos(j) + letters[..j].iter().map(|w| w.len() * len).sum::<usize>();
            let p = self.seg_pos(j);
            for i in (p..q).rev() {
                self.moves.push(Move::HurwitzR(i));
            }
            for l in word {
                let Generator::A(i) = l.gen else {
                    return Err(Error::Internal("separating letter after expansion".into()));
                };
                let first = self.first_in_a(i)?;
                if !l.inverse {
                    self.take(UniversalKind::A, p + 1)?;
                    self.segs.splice(j + 1..j + 1, vec![Seg::One; len]);
                    self.rotate(p + 1, len, first);
                    self.moves.push(Move::HurwitzR(p));
                    self.moves.push(Move::HurwitzR(p));
                } else {
                    self.take(UniversalKind::A, p)?;
                    self.segs.splice(j..j, vec![Seg::One; len]);
                    self.rotate(p, len, first + 1);
                    self.moves.push(Move::HurwitzL(p + len - 1));
                    self.moves.extend((p..p + len - 1).rev().map(Move::HurwitzR));
                }
            }
        }
        Ok(())
    }

    /// Appends `count` copies of `𝒜` from the pool to the segments.
    fn absorb_copies(&mut self, count: usize) -> Result<()> {
        for _ in 0..count {
            let at = self.pool_start();
            self.take(UniversalKind::A, at)?;
            self.segs.extend(vec![Seg::One; self.len_a()]);
        }
        Ok(())
    }

    /// Treats the first `s` factors as fixed.
    fn freeze_prefix(&mut self, s: usize) {
        self.segs.drain(..s);
        self.prefix += s;
    }
}

/// Result of normalizing the separating factors of `F` and `F′`.
#[derive(Debug, Clone)]
pub struct ReducibleNormalization {
    pub copies: usize,
    pub separating: usize,
    /// `F·(𝒜)^N ∼ τ′₁⋯τ′_s · F̃`, with `F̃` the returned factorization.
    pub f_tilde: Factorization,
    pub f_prime_tilde: Factorization,
    pub certificate: MoveCertificate,
    pub certificate_prime: MoveCertificate,
}

/// Separating factors of `F` conjugated into those of `F′` at the cost of
/// `N` copies of `𝒜`, both brought to the front in order of type.
pub fn reducible_normalize(f: &Factorization, f_prime: &Factorization, t: &TwistTable) -> Result<ReducibleNormalization> {
    if census(f).separating != census(f_prime).separating {
        return Err(Error::Hypothesis("different numbers of reducible fibers".into()));
    }
    let (gm, gf, s) = gather_separating(f, t)?;
    let (gm_prime, gf_prime, _) = gather_separating(f_prime, t)?;
    let letters = separating_letters(&gf, &gf_prime, s)?;
    let copies: usize = letters.iter().map(Vec::len).sum();
    let pool = vec![UniversalKind::A; copies];

    let mut e = Engine::new(t, f.len(), pool.clone())?;
    e.moves = gm;
    e.conjugate_separating(&letters)?;
    let mut e_prime = Engine::new(t, f_prime.len(), pool.clone())?;
    e_prime.moves = gm_prime;
    e_prime.absorb_copies(copies)?;

    let tail = pool_factorization(&pool, f.genus)?;
    let cert = MoveCertificate::new(e.moves);
    let cert_prime = MoveCertificate::new(e_prime.moves);
    let end = replay(&f.concat(&tail)?, &cert, t)?;
    let end_prime = replay(&f_prime.concat(&tail)?, &cert_prime, t)?;
    Ok(ReducibleNormalization {
        copies,
        separating: s,
        f_tilde: Factorization::new(f.genus, end.factors[s..].to_vec()),
        f_prime_tilde: Factorization::new(f.genus, end_prime.factors[s..].to_vec()),
        certificate: cert,
        certificate_prime: cert_prime,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilizeMode {
    /// Requires equal `χ`, `σ`, section square and fiber census, and ends
    /// with `k = l = 0`.
    Strict,
    /// Only requires equal products; `k` and `l` are reported.
    General,
}

#[derive(Debug, Clone)]
pub struct Stabilization {
    pub ledger: StabilizationLedger,
    /// Trade counts of the compiled derivation before padding.
    pub trades: StabilizationLedger,
    pub start: Factorization,
    pub end: Factorization,
    pub certificate: MoveCertificate,
    pub chi_defect: i64,
    pub sigma_defect: i64,
}

/// Changes of `(r, σ)` when a copy of `ℬ` becomes `𝒜` and when a copy of
/// `𝒟` becomes `𝒞`.
fn trade_constants(t: &TwistTable) -> Result<[(i64, i64); 2]> {
    let g = t.genus();
    let inv = |k| -> Result<(i64, i64)> {
        let f = Factorization::from_indices(g, universal_indices(k, g)?);
        Ok((f.len() as i64, signature(&f, t)?.signature))
    };
    let [a, b, c, d] = POOL_KINDS.map(inv);
    let (a, b, c, d) = (a?, b?, c?, d?);
    Ok([(a.0 - b.0, a.1 - b.1), (c.0 - d.0, c.1 - d.1)])
}

/// `F·(ℱ₀)^t ∼ F′·P′` from a derivation between the non-separating parts
/// after normalization (or between their simplified forms), where the pool
/// `P′` differs from `(ℱ₀)^t` by the traded copies.
pub fn stable_equivalence(
    f: &Factorization,
    f_prime: &Factorization,
    d: &DerivationCertificate,
    mode: StabilizeMode,
    t: &TwistTable,
) -> Result<Stabilization> {
    f.check_genus(t)?;
    f_prime.check_genus(t)?;
    let m = section_square(f, t)?;
    let m_prime = section_square(f_prime, t)?;
    if m != m_prime {
        return Err(Error::Hypothesis(format!("section squares {m} and {m_prime}")));
    }
    let sigma = signature(f, t)?.signature;
    let sigma_prime = signature(f_prime, t)?.signature;
    let dchi = f_prime.len() as i64 - f.len() as i64;
    let dsigma = sigma_prime - sigma;
    if mode == StabilizeMode::Strict {
        if dchi != 0 {
            return Err(Error::Hypothesis(format!("Euler characteristics differ by {dchi}")));
        }
        if dsigma != 0 {
            return Err(Error::Hypothesis(format!("signatures differ by {dsigma}")));
        }
    }
    let red = reducible_normalize(f, f_prime, t)?;
    let s = red.separating;
    let full = lift_derivation(&red.f_tilde, &red.f_prime_tilde, d, t)?;
    let demand = Demand::of(&full);
    let trades = demand.ledger();
    let need = demand.need;
    let pad = (need[0] + red.copies).max(need[1]).max(need[2]).max(need[3]);

    let [(rl, sl), (rk, sk)] = trade_constants(t)?;
    let (k, l) = (demand.k, demand.l);
    let chi_defect = dchi + rl * l + rk * k;
    let sigma_defect = dsigma + sl * l + sk * k;
    if chi_defect != 0 || sigma_defect != 0 {
        return Err(Error::Ledger(format!("defects {chi_defect} and {sigma_defect}")));
    }
    if mode == StabilizeMode::Strict && (k != 0 || l != 0) {
        return Err(Error::Ledger(format!("k = {k}, l = {l}")));
    }

    let (gm, gf, _) = gather_separating(f, t)?;
    let (gm_prime, gf_prime, _) = gather_separating(f_prime, t)?;
    let letters = separating_letters(&gf, &gf_prime, s)?;
    let start_pool = canonical_pool([pad; 4]);
    let end_counts = [
        (pad as i64 + l) as usize,
        (pad as i64 - l) as usize,
        (pad as i64 + k) as usize,
        (pad as i64 - k) as usize,
    ];
    let end_pool = canonical_pool(end_counts);

    let mut e = Engine::new(t, f.len(), start_pool.clone())?;
    e.moves = gm;
    e.conjugate_separating(&letters)?;
    e.freeze_prefix(s);
    e.sort_pool();
    e.run(&SignedFactorization::from_positive(&red.f_tilde), &full, true)?;
    e.sort_pool();
    if e.pool != end_pool {
        return Err(Error::Internal("final pool layout".into()));
    }

    let mut e_prime = Engine::new(t, f_prime.len(), end_pool.clone())?;
    e_prime.moves = gm_prime;
    e_prime.absorb_copies(red.copies)?;
    e_prime.sort_pool();
    let mut moves = e.moves;
    moves.extend(MoveCertificate::new(e_prime.moves).inverse().moves);

    let start = f.concat(&pool_factorization(&start_pool, f.genus)?)?;
    let end = f_prime.concat(&pool_factorization(&end_pool, f.genus)?)?;
    let certificate = MoveCertificate::new(moves);
    if !check_certificate(&start, &certificate, &end, t)? {
        return Err(Error::Internal("stabilized certificate does not replay".into()));
    }
    Ok(Stabilization {
        ledger: StabilizationLedger {
            n: demand.n,
            a: pad - red.copies,
            b: pad,
            c: pad,
            d: pad,
            k,
            l,
            reducible_copies: red.copies,
        },
        trades,
        start,
        end,
        certificate,
        chi_defect,
        sigma_defect,
    })
}

/// A derivation consisting of the Hurwitz moves of a move certificate.
pub fn hurwitz_derivation(cert: &MoveCertificate) -> Result<DerivationCertificate> {
    DerivationCertificate::from_hurwitz(cert)
}
