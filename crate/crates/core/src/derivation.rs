//! Factorizations with inverse twists, the moves generating `≡` on them,
//! and replayable derivations.
//!
//! Hurwitz moves and the defining relations only act on positive factors;
//! negative factors are created and destroyed in adjacent inverse pairs.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::certificate::BlockRelation;
use crate::error::{Error, Result};
use crate::factorization::{factor_equal, Factor, Factorization};
use crate::mcg::{chain_curves_meet, Generator, McgLetter, McgWord, TwistTable};
use crate::word::FreeWord;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedFactor {
    pub factor: Factor,
    pub positive: bool,
}

impl SignedFactor {
    pub fn pos(factor: Factor) -> Self {
        SignedFactor { factor, positive: true }
    }

    pub fn neg(factor: Factor) -> Self {
        SignedFactor {
            factor,
            positive: false,
        }
    }

    /// A bare generator with the sign of a letter.
    pub fn from_letter(l: McgLetter) -> Self {
        SignedFactor {
            factor: Factor::bare(l.gen),
            positive: !l.inverse,
        }
    }

    pub fn word(&self) -> McgWord {
        if self.positive {
            self.factor.word()
        } else {
            self.factor.inverse_word()
        }
    }
}

impl fmt::Display for SignedFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.factor)
        } else {
            write!(f, "-{}", self.factor)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedFactorization {
    pub genus: usize,
    pub factors: Vec<SignedFactor>,
}

impl SignedFactorization {
    pub fn from_positive(f: &Factorization) -> Self {
        SignedFactorization {
            genus: f.genus,
            factors: f.factors.iter().cloned().map(SignedFactor::pos).collect(),
        }
    }

    pub fn from_letters(genus: usize, letters: impl IntoIterator<Item = McgLetter>) -> Self {
        SignedFactorization {
            genus,
            factors: letters.into_iter().map(SignedFactor::from_letter).collect(),
        }
    }

    /// The positive factorization, when there are no negative factors.
    pub fn to_positive(&self) -> Option<Factorization> {
        self.factors
            .iter()
            .map(|s| s.positive.then(|| s.factor.clone()))
            .collect::<Option<Vec<_>>>()
            .map(|fs| Factorization::new(self.genus, fs))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn negative_count(&self) -> usize {
        self.factors.iter().filter(|s| !s.positive).count()
    }

    pub fn word(&self) -> McgWord {
        let mut w = McgWord::empty();
        for s in &self.factors {
            w.extend_from(&s.word());
        }
        w
    }

    pub fn equal_factorwise(&self, other: &SignedFactorization, t: &TwistTable) -> Result<bool> {
        if self.genus != other.genus || self.len() != other.len() {
            return Ok(false);
        }
        for (a, b) in self.factors.iter().zip(&other.factors) {
            if a.positive != b.positive || !factor_equal(&a.factor, &b.factor, t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for SignedFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Commute,
    Braid,
    Chain,
    Lantern,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Commute => "commute",
            RelationKind::Braid => "braid",
            RelationKind::Chain => "chain",
            RelationKind::Lantern => "lantern",
        }
    }

    pub fn block(self) -> Option<BlockRelation> {
        match self {
            RelationKind::Chain => Some(BlockRelation::Chain),
            RelationKind::Lantern => Some(BlockRelation::Lantern),
            _ => None,
        }
    }
}

impl FromStr for RelationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "commute" => RelationKind::Commute,
            "braid" => RelationKind::Braid,
            "chain" => RelationKind::Chain,
            "lantern" => RelationKind::Lantern,
            _ => return Err(Error::InvalidParameter(format!("unknown relation {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Step {
    HurwitzR(usize),
    HurwitzL(usize),
    /// Inserts `l · l⁻¹` at the position.
    PairCreate(usize, McgLetter),
    /// Removes the inverse pair at `i, i+1`.
    PairCancel(usize),
    Relation {
        kind: RelationKind,
        forward: bool,
        pos: usize,
    },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::HurwitzR(i) => write!(f, "R {i}"),
            Step::HurwitzL(i) => write!(f, "L {i}"),
            Step::PairCreate(i, l) => write!(f, "PCREATE {i} {l}"),
            Step::PairCancel(i) => write!(f, "PCANCEL {i}"),
            Step::Relation { kind, forward, pos } => {
                write!(f, "REL {} {} {pos}", kind.name(), if *forward { "fwd" } else { "bwd" })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DerivationCertificate {
    pub steps: Vec<Step>,
}

impl DerivationCertificate {
    pub fn new(steps: Vec<Step>) -> Self {
        DerivationCertificate { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn concat(&self, other: &DerivationCertificate) -> Self {
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        DerivationCertificate { steps }
    }

    /// Hurwitz moves of a move certificate as a derivation; other moves are
    /// rejected.
    pub fn from_hurwitz(cert: &crate::certificate::MoveCertificate) -> Result<Self> {
        use crate::certificate::Move;
        cert.moves
            .iter()
            .map(|m| match m {
                Move::HurwitzR(i) => Ok(Step::HurwitzR(*i)),
                Move::HurwitzL(i) => Ok(Step::HurwitzL(*i)),
                Move::Subst {
                    relation,
                    forward,
                    start,
                } => Ok(Step::Relation {
                    kind: match relation {
                        BlockRelation::Chain => RelationKind::Chain,
                        BlockRelation::Lantern => RelationKind::Lantern,
                    },
                    forward: *forward,
                    pos: *start,
                }),
                Move::GlobalConj(_) => Err(Error::InvalidParameter(
                    "global conjugation has no derivation step".into(),
                )),
            })
            .collect::<Result<Vec<_>>>()
            .map(DerivationCertificate::new)
    }
}

impl fmt::Display for DerivationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The `A` generator a positive factor equals, if any.
fn generator_index(s: &SignedFactor, t: &TwistTable) -> Result<Option<usize>> {
    Ok(match s.factor.as_generator(t)? {
        Some(Generator::A(i)) => Some(i),
        _ => None,
    })
}

/// The bare generator letter equal to a factor of the derivation, if any.
pub fn signed_letter(s: &SignedFactor, t: &TwistTable) -> Result<Option<McgLetter>> {
    Ok(s.factor.as_generator(t)?.map(|g| McgLetter::new(g, !s.positive)))
}

/// Identifies a block of positive generator factors starting at `pos`.
fn block_generators(f: &SignedFactorization, pos: usize, len: usize, t: &TwistTable) -> std::result::Result<Vec<usize>, String> {
    let block = f
        .factors
        .get(pos..pos + len)
        .ok_or_else(|| format!("block {pos}..{} exceeds {} factors", pos + len, f.len()))?;
    block
        .iter()
        .enumerate()
        .map(|(k, s)| {
            if !s.positive {
                return Err(format!("factor {} is negative", pos + k));
            }
            generator_index(s, t)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("factor {} is not a generator", pos + k))
        })
        .collect()
}

/// The replacement for a relation block, or why it does not apply.
fn relation_target(
    f: &SignedFactorization,
    kind: RelationKind,
    forward: bool,
    pos: usize,
    t: &TwistTable,
) -> std::result::Result<(usize, Vec<usize>), String> {
    match kind {
        RelationKind::Commute => {
            let g = block_generators(f, pos, 2, t)?;
            if g[0] == g[1] || chain_curves_meet(g[0], g[1]) {
                return Err(format!("a{} and a{} do not commute", g[0], g[1]));
            }
            Ok((2, vec![g[1], g[0]]))
        }
        RelationKind::Braid => {
            let g = block_generators(f, pos, 3, t)?;
            if g[0] != g[2] || !chain_curves_meet(g[0], g[1]) {
                return Err(format!("no braid relation for a{} a{} a{}", g[0], g[1], g[2]));
            }
            Ok((3, vec![g[1], g[0], g[1]]))
        }
        RelationKind::Chain | RelationKind::Lantern => {
            let rel = kind.block().expect("block relation");
            let (source, target) = rel.oriented(forward);
            let g = block_generators(f, pos, source.len(), t)?;
            if g != source {
                return Err(format!("block at {pos} is not the {} source", kind.name()));
            }
            Ok((source.len(), target))
        }
    }
}

pub fn apply_step(f: &mut SignedFactorization, s: &Step, step: usize, t: &TwistTable) -> Result<()> {
    let illegal = |reason: String| Error::IllegalMove { step, reason };
    let pair = |i: usize, f: &SignedFactorization| -> Result<()> {
        if i + 1 >= f.len() {
            return Err(illegal(format!("position {i} out of range for {} factors", f.len())));
        }
        if !f.factors[i].positive || !f.factors[i + 1].positive {
            return Err(illegal(format!("Hurwitz move at {i} involves a negative factor")));
        }
        Ok(())
    };
    match s {
        Step::HurwitzR(i) => {
            pair(*i, f)?;
            let w = f.factors[*i + 1].factor.word();
            let moved = f.factors[*i].factor.conjugated(&w);
            f.factors[*i] = f.factors[*i + 1].clone();
            f.factors[*i + 1] = SignedFactor::pos(moved);
        }
        Step::HurwitzL(i) => {
            pair(*i, f)?;
            let w = f.factors[*i].factor.inverse_word();
            let moved = f.factors[*i + 1].factor.conjugated(&w);
            f.factors[*i + 1] = f.factors[*i].clone();
            f.factors[*i] = SignedFactor::pos(moved);
        }
        Step::PairCreate(i, l) => {
            if *i > f.len() {
                return Err(illegal(format!("position {i} out of range for {} factors", f.len())));
            }
            if !matches!(l.gen, Generator::A(_)) || !l.gen.in_range(f.genus) {
                return Err(illegal(format!("cannot create a pair of {l}")));
            }
            let first = SignedFactor::from_letter(*l);
            let second = SignedFactor::from_letter(l.inv());
            f.factors.splice(*i..*i, [first, second]);
        }
        Step::PairCancel(i) => {
            if i + 1 >= f.len() {
                return Err(illegal(format!("position {i} out of range for {} factors", f.len())));
            }
            let (a, b) = (&f.factors[*i], &f.factors[*i + 1]);
            if a.positive == b.positive || !factor_equal(&a.factor, &b.factor, t)? {
                return Err(illegal(format!("factors {i} and {} are not inverse", i + 1)));
            }
            f.factors.drain(*i..*i + 2);
        }
        Step::Relation { kind, forward, pos } => {
            let (len, target) = relation_target(f, *kind, *forward, *pos, t).map_err(illegal)?;
            let replacement = target.into_iter().map(|i| SignedFactor::pos(Factor::a(i)));
            f.factors.splice(*pos..*pos + len, replacement);
        }
    }
    Ok(())
}

pub fn replay_derivation(start: &SignedFactorization, d: &DerivationCertificate, t: &TwistTable) -> Result<SignedFactorization> {
    let mut f = start.clone();
    for (k, s) in d.steps.iter().enumerate() {
        apply_step(&mut f, s, k, t)?;
    }
    Ok(f)
}

/// Replay that also compares the product with the starting product after
/// every step.
pub fn replay_derivation_checked(
    start: &SignedFactorization,
    d: &DerivationCertificate,
    t: &TwistTable,
) -> Result<SignedFactorization> {
    let target = t.mcg_to_auto(&start.word())?;
    let mut f = start.clone();
    for (k, s) in d.steps.iter().enumerate() {
        apply_step(&mut f, s, k, t)?;
        if t.mcg_to_auto(&f.word())? != target {
            return Err(Error::IllegalMove {
                step: k,
                reason: "product changed".into(),
            });
        }
    }
    Ok(f)
}

/// The derivation undoing `d`, which must replay from `start`.
pub fn inverse_derivation(start: &SignedFactorization, d: &DerivationCertificate, t: &TwistTable) -> Result<DerivationCertificate> {
    let mut f = start.clone();
    let mut inv = Vec::with_capacity(d.len());
    for (k, s) in d.steps.iter().enumerate() {
        inv.push(match s {
            Step::HurwitzR(i) => Step::HurwitzL(*i),
            Step::HurwitzL(i) => Step::HurwitzR(*i),
            Step::PairCreate(i, _) => Step::PairCancel(*i),
            Step::PairCancel(i) => {
                let first = f.factors.get(*i).ok_or(Error::IllegalMove {
                    step: k,
                    reason: format!("position {i} out of range"),
                })?;
                let l = signed_letter(first, t)?.ok_or_else(|| Error::IllegalMove {
                    step: k,
                    reason: format!("factor {i} is not a generator"),
                })?;
                Step::PairCreate(*i, l)
            }
            Step::Relation { kind, forward, pos } => Step::Relation {
                kind: *kind,
                forward: !forward,
                pos: *pos,
            },
        });
        apply_step(&mut f, s, k, t)?;
    }
    inv.reverse();
    Ok(DerivationCertificate::new(inv))
}

/// Rewrites every factor `(a_i)_{g_1⋯g_k}` as the signed generator word
/// `g_k⁻¹ ⋯ g_1⁻¹ a_i g_1 ⋯ g_k`, peeling the last conjugating letter with a
/// pair creation and one Hurwitz move at a time.
pub fn simplify(f: &Factorization) -> Result<(SignedFactorization, DerivationCertificate)> {
    let mut steps = Vec::new();
    let mut out = Vec::new();
    let mut p = 0usize;
    for (idx, x) in f.factors.iter().enumerate() {
        if x.is_separating() {
            return Err(Error::SeparatingFactor(idx));
        }
        let conj = x.conj.expand_separating();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for &l in conj.letters().iter().rev() {
            if l.inverse {
                steps.push(Step::PairCreate(p + 1, l.inv()));
                steps.push(Step::HurwitzR(p));
            } else {
                steps.push(Step::PairCreate(p, l.inv()));
                steps.push(Step::HurwitzL(p + 1));
            }
            left.push(l.inv());
            right.push(l);
            p += 1;
        }
        out.extend(left);
        out.push(McgLetter::new(x.base, false));
        out.extend(right.into_iter().rev());
        p += 1 + conj.len();
    }
    Ok((SignedFactorization::from_letters(f.genus, out), DerivationCertificate::new(steps)))
}

type StateKey = Vec<(bool, FreeWord)>;

fn state_key(f: &SignedFactorization, t: &TwistTable) -> Result<StateKey> {
    f.factors
        .iter()
        .map(|s| Ok((s.positive, s.factor.curve(t)?.canonical_cycle())))
        .collect()
}

/// Breadth-first search for a derivation from `f` to `target`, expanding at
/// most `budget` factorizations.  Pair creations are limited to keep the
/// length at most two above the longer endpoint.
pub fn bounded_search(
    f: &SignedFactorization,
    target: &SignedFactorization,
    budget: usize,
    t: &TwistTable,
) -> Result<Option<DerivationCertificate>> {
    let goal = state_key(target, t)?;
    let max_len = f.len().max(target.len()) + 2;
    let start_key = state_key(f, t)?;
    if start_key == goal {
        return Ok(Some(DerivationCertificate::default()));
    }
    let mut parents: HashMap<StateKey, Option<(StateKey, Step)>> = HashMap::new();
    parents.insert(start_key.clone(), None);
    let mut queue = VecDeque::from([(f.clone(), start_key)]);
    let mut expanded = 0;
    while let Some((cur, key)) = queue.pop_front() {
        if expanded >= budget {
            break;
        }
        expanded += 1;
        for s in candidate_steps(&cur, max_len, t)? {
            let mut next = cur.clone();
            if apply_step(&mut next, &s, 0, t).is_err() {
                continue;
            }
            let nk = state_key(&next, t)?;
            if parents.contains_key(&nk) {
                continue;
            }
            parents.insert(nk.clone(), Some((key.clone(), s)));
            if nk == goal {
                let mut steps = Vec::new();
                let mut k = nk;
                while let Some(Some((prev, s))) = parents.get(&k) {
                    steps.push(s.clone());
                    k = prev.clone();
                }
                steps.reverse();
                return Ok(Some(DerivationCertificate::new(steps)));
            }
            queue.push_back((next, nk));
        }
    }
    Ok(None)
}

fn candidate_steps(f: &SignedFactorization, max_len: usize, t: &TwistTable) -> Result<Vec<Step>> {
    let r = f.len();
    let mut steps = Vec::new();
    for pos in 0..r {
        for kind in [RelationKind::Commute, RelationKind::Braid, RelationKind::Chain, RelationKind::Lantern] {
            for forward in [true, false] {
                if (forward || kind.block().is_some()) && relation_target(f, kind, forward, pos, t).is_ok() {
                    steps.push(Step::Relation { kind, forward, pos });
                }
            }
        }
    }
    for i in 0..r.saturating_sub(1) {
        let (a, b) = (&f.factors[i], &f.factors[i + 1]);
        if a.positive && b.positive {
            steps.push(Step::HurwitzR(i));
            steps.push(Step::HurwitzL(i));
        } else if a.positive != b.positive && factor_equal(&a.factor, &b.factor, t)? {
            steps.push(Step::PairCancel(i));
        }
    }
    if r + 2 <= max_len {
        for i in 0..=r {
            for k in 0..=2 * f.genus {
                for inverse in [false, true] {
                    steps.push(Step::PairCreate(i, McgLetter::new(Generator::A(k), inverse)));
                }
            }
        }
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> TwistTable {
        TwistTable::new(3).unwrap()
    }

    fn letters(s: &str) -> Vec<McgLetter> {
        McgWord::parse(s).unwrap().letters().to_vec()
    }

    #[test]
    fn simplify_examples() {
        let t = table();
        let cases = [("", "a1"), ("a2", "a2^-1 a1 a2"), ("a2 a3^-1", "a3 a2^-1 a1 a2 a3^-1")];
        for (conj, expected) in cases {
            let f = Factorization::new(3, vec![Factor::new(Generator::A(1), McgWord::parse(conj).unwrap())]);
            let (bar, d) = simplify(&f).unwrap();
            let want = SignedFactorization::from_letters(3, letters(expected));
            assert_eq!(bar, want);
            let reached = replay_derivation_checked(&SignedFactorization::from_positive(&f), &d, &t).unwrap();
            assert!(reached.equal_factorwise(&want, &t).unwrap(), "{conj}");
        }
    }

    #[test]
    fn simplify_several_factors() {
        let t = table();
        let f = Factorization::new(
            3,
            vec![
                Factor::new(Generator::A(2), McgWord::parse("a1 a4^-1").unwrap()),
                Factor::a(0),
                Factor::new(Generator::A(5), McgWord::parse("a6^-1").unwrap()),
            ],
        );
        let (bar, d) = simplify(&f).unwrap();
        assert_eq!(bar.len(), 5 + 1 + 3);
        let reached = replay_derivation(&SignedFactorization::from_positive(&f), &d, &t).unwrap();
        assert!(reached.equal_factorwise(&bar, &t).unwrap());
        let sep = Factorization::new(3, vec![Factor::bare(Generator::S(1))]);
        assert!(matches!(simplify(&sep), Err(Error::SeparatingFactor(0))));
    }

    #[test]
    fn pair_create_then_cancel() {
        let t = table();
        let f = SignedFactorization::from_letters(3, letters("a1 a2"));
        let d = DerivationCertificate::new(vec![
            Step::PairCreate(1, McgLetter::new(Generator::A(4), true)),
            Step::PairCancel(1),
        ]);
        assert_eq!(replay_derivation_checked(&f, &d, &t).unwrap(), f);
    }

    #[test]
    fn relations() {
        let t = table();
        let f = SignedFactorization::from_letters(3, [0, 2, 3, 4].repeat(10).into_iter().map(|i| McgLetter::new(Generator::A(i), false)));
        let d = DerivationCertificate::new(vec![Step::Relation {
            kind: RelationKind::Chain,
            forward: true,
            pos: 0,
        }]);
        let end = replay_derivation(&f, &d, &t).unwrap();
        assert_eq!(end, SignedFactorization::from_letters(3, [0, 1, 2, 3, 4].repeat(6).into_iter().map(|i| McgLetter::new(Generator::A(i), false))));
        let b = SignedFactorization::from_letters(3, letters("a1 a2 a1"));
        let braid = DerivationCertificate::new(vec![Step::Relation {
            kind: RelationKind::Braid,
            forward: true,
            pos: 0,
        }]);
        assert_eq!(replay_derivation_checked(&b, &braid, &t).unwrap(), SignedFactorization::from_letters(3, letters("a2 a1 a2")));
        let bad = SignedFactorization::from_letters(3, letters("a1 a2"));
        let commute = DerivationCertificate::new(vec![Step::Relation {
            kind: RelationKind::Commute,
            forward: true,
            pos: 0,
        }]);
        assert!(matches!(replay_derivation(&bad, &commute, &t), Err(Error::IllegalMove { step: 0, .. })));
        let neg = SignedFactorization::from_letters(3, letters("a1 a3^-1"));
        assert!(replay_derivation(&neg, &commute, &t).is_err());
        assert!(replay_derivation(&neg, &DerivationCertificate::new(vec![Step::HurwitzR(0)]), &t).is_err());
    }

    #[test]
    fn inverse_derivation_returns() {
        let t = table();
        let f = Factorization::new(3, vec![Factor::new(Generator::A(1), McgWord::parse("a2 a3^-1").unwrap())]);
        let (bar, d) = simplify(&f).unwrap();
        let inv = inverse_derivation(&SignedFactorization::from_positive(&f), &d, &t).unwrap();
        let back = replay_derivation(&bar, &inv, &t).unwrap();
        assert!(back.equal_factorwise(&SignedFactorization::from_positive(&f), &t).unwrap());
    }

    #[test]
    fn search_examples() {
        let t = table();
        let f = SignedFactorization::from_letters(3, letters("a1 a2 a1"));
        let g = SignedFactorization::from_letters(3, letters("a2 a1 a2"));
        let d = bounded_search(&f, &g, 1000, &t).unwrap().unwrap();
        assert_eq!(d.len(), 1);
        assert!(bounded_search(&f, &f, 10, &t).unwrap().unwrap().is_empty());
        let x = SignedFactorization::from_letters(3, letters("a1 a3 a5"));
        let y = SignedFactorization::from_letters(3, letters("a5 a3 a1"));
        let d = bounded_search(&x, &y, 10_000, &t).unwrap().unwrap();
        assert!(d.len() <= 3);
        assert!(replay_derivation(&x, &d, &t).unwrap().equal_factorwise(&y, &t).unwrap());
        let p = SignedFactorization::from_letters(3, letters("a1 a3 a6"));
        let q = SignedFactorization::from_letters(3, letters("a3 a6 a1"));
        let d = bounded_search(&p, &q, 10_000, &t).unwrap().unwrap();
        assert!(d.len() <= 2);
    }
}
