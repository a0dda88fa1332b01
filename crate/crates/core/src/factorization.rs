//! Ordered factorizations into positive Dehn twists and the Hurwitz moves
//! between them.

use std::fmt;

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::homology::HomologyVector;
use crate::mcg::{Generator, McgLetter, McgWord, TwistTable};
use crate::word::FreeWord;

/// The twist `(base)_conj = conj⁻¹ · base · conj`, i.e. the twist along the
/// image of the base curve under `conj`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    pub base: Generator,
    pub conj: McgWord,
}

impl Factor {
    pub fn new(base: Generator, conj: McgWord) -> Self {
        Factor { base, conj }
    }

    pub fn bare(base: Generator) -> Self {
        Factor {
            base,
            conj: McgWord::empty(),
        }
    }

    pub fn a(i: usize) -> Self {
        Self::bare(Generator::A(i))
    }

    pub fn is_separating(&self) -> bool {
        self.base.is_separating()
    }

    /// The word `conj⁻¹ base conj`.
    pub fn word(&self) -> McgWord {
        let mut w = self.conj.inverse();
        w.push(McgLetter::new(self.base, false));
        w.extend_from(&self.conj);
        w
    }

    /// The inverse twist as a word.
    pub fn inverse_word(&self) -> McgWord {
        let mut w = self.conj.inverse();
        w.push(McgLetter::new(self.base, true));
        w.extend_from(&self.conj);
        w
    }

    /// `(self)_φ`.
    pub fn conjugated(&self, phi: &McgWord) -> Factor {
        Factor {
            base: self.base,
            conj: self.conj.concat(phi),
        }
    }

    pub fn validate(&self, genus: usize) -> Result<()> {
        self.base.check(genus)?;
        self.conj.validate(genus)
    }

    pub fn twist(&self, t: &TwistTable) -> Result<Automorphism> {
        t.mcg_to_auto(&self.word())
    }

    /// A cyclically reduced word for the twisting curve.
    pub fn curve(&self, t: &TwistTable) -> Result<FreeWord> {
        t.curve_image(&self.conj, t.curve(self.base))
    }

    /// The class `[φ(c)]` of the twisting curve; zero when separating.
    pub fn class(&self, t: &TwistTable) -> Result<HomologyVector> {
        if self.is_separating() {
            return Ok(HomologyVector::zero(t.rank()));
        }
        let m = t.homology_matrix(&self.conj)?;
        Ok(HomologyVector {
            coords: m.apply(&t.class(self.base).coords),
        })
    }

    /// The bare generator equal to this twist, if any.
    pub fn as_generator(&self, t: &TwistTable) -> Result<Option<Generator>> {
        if self.conj.is_empty() {
            return Ok(Some(self.base));
        }
        let c = self.curve(t)?;
        for g in t.generators() {
            if g.is_separating() == self.is_separating()
                && (!g.is_separating() || g == self.base)
                && c.same_unoriented_cycle(t.curve(g))
            {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if !self.conj.is_empty() {
            let parts: Vec<String> = self.conj.letters().iter().map(ToString::to_string).collect();
            write!(f, " @ {}", parts.join(","))?;
        }
        Ok(())
    }
}

/// Whether two factors are the same mapping class.  Twists along curves
/// are equal exactly when the curves are isotopic, which for the
/// non-peripheral curves used here means equal unoriented free homotopy
/// classes; separating twists also carry their type.
pub fn factor_equal(f1: &Factor, f2: &Factor, t: &TwistTable) -> Result<bool> {
    match (f1.base, f2.base) {
        (Generator::S(h1), Generator::S(h2)) if h1 != h2 => return Ok(false),
        (Generator::S(_), Generator::A(_)) | (Generator::A(_), Generator::S(_)) => return Ok(false),
        _ => {}
    }
    if f1 == f2 {
        return Ok(true);
    }
    if f1.base == f2.base && f1.conj == f2.conj {
        return Ok(true);
    }
    Ok(f1.curve(t)?.same_unoriented_cycle(&f2.curve(t)?))
}

pub fn curve_class(f: &Factor, t: &TwistTable) -> Result<HomologyVector> {
    f.class(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub genus: usize,
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn new(genus: usize, factors: Vec<Factor>) -> Self {
        Factorization { genus, factors }
    }

    pub fn empty(genus: usize) -> Self {
        Factorization {
            genus,
            factors: Vec::new(),
        }
    }

    /// Bare positive generators `a_{i_1} a_{i_2} ⋯`.
    pub fn from_indices(genus: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Factorization {
            genus,
            factors: indices.into_iter().map(Factor::a).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus < 3 {
            return Err(Error::GenusTooSmall(self.genus));
        }
        self.factors.iter().try_for_each(|f| f.validate(self.genus))
    }

    pub fn concat(&self, other: &Factorization) -> Result<Factorization> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(Factorization::new(self.genus, factors))
    }

    /// The product of the factor twists as one word.
    pub fn word(&self) -> McgWord {
        let mut w = McgWord::empty();
        for f in &self.factors {
            w.extend_from(&f.word());
        }
        w
    }

    fn check_pair(&self, i: usize) -> Result<()> {
        if i + 1 >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// `τ_i τ_{i+1} → τ_{i+1} (τ_i)_{τ_{i+1}}` at 0-based position `i`.
    pub fn hurwitz_right(&self, i: usize) -> Result<Factorization> {
        let mut f = self.clone();
        f.hurwitz_right_in_place(i)?;
        Ok(f)
    }

    /// `τ_i τ_{i+1} → (τ_{i+1})_{τ_i⁻¹} τ_i` at 0-based position `i`.
    pub fn hurwitz_left(&self, i: usize) -> Result<Factorization> {
        let mut f = self.clone();
        f.hurwitz_left_in_place(i)?;
        Ok(f)
    }

    pub fn hurwitz_right_in_place(&mut self, i: usize) -> Result<()> {
        self.check_pair(i)?;
        let moved = self.factors[i].conjugated(&self.factors[i + 1].word());
        self.factors[i] = self.factors[i + 1].clone();
        self.factors[i + 1] = moved;
        Ok(())
    }

    pub fn hurwitz_left_in_place(&mut self, i: usize) -> Result<()> {
        self.check_pair(i)?;
        let moved = self.factors[i + 1].conjugated(&self.factors[i].inverse_word());
        self.factors[i + 1] = self.factors[i].clone();
        self.factors[i] = moved;
        Ok(())
    }

    /// Every factor conjugated by `φ`.
    pub fn global_conjugate(&self, phi: &McgWord) -> Factorization {
        Factorization {
            genus: self.genus,
            factors: self.factors.iter().map(|f| f.conjugated(phi)).collect(),
        }
    }

    pub fn product(&self, t: &TwistTable) -> Result<Automorphism> {
        self.check_genus(t)?;
        let mut p = Automorphism::identity(t.rank());
        for f in &self.factors {
            p = p.then(&f.twist(t)?, t.word_cap())?;
        }
        Ok(p)
    }

    /// `m` with `product = T_δ^m`, if the product is a boundary power.
    pub fn boundary_power(&self, t: &TwistTable) -> Result<Option<i64>> {
        Ok(self.product(t)?.detect_boundary_power())
    }

    pub fn check_genus(&self, t: &TwistTable) -> Result<()> {
        if self.genus != t.genus() {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: t.genus(),
            });
        }
        Ok(())
    }

    /// Factor-wise equality of mapping classes.
    pub fn equal_factorwise(&self, other: &Factorization, t: &TwistTable) -> Result<bool> {
        if self.genus != other.genus || self.len() != other.len() {
            return Ok(false);
        }
        for (a, b) in self.factors.iter().zip(&other.factors) {
            if !factor_equal(a, b, t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The first position where two factorizations differ, if any.
    pub fn first_difference(&self, other: &Factorization, t: &TwistTable) -> Result<Option<usize>> {
        if self.len() != other.len() {
            return Ok(Some(self.len().min(other.len())));
        }
        for (k, (a, b)) in self.factors.iter().zip(&other.factors).enumerate() {
            if !factor_equal(a, b, t)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "genus {}", self.genus)?;
        for x in &self.factors {
            writeln!(f, "factor {x}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> TwistTable {
        TwistTable::new(3).unwrap()
    }

    #[test]
    fn hurwitz_right_unfolds_definition() {
        let f = Factorization::from_indices(3, [1, 2]);
        let h = f.hurwitz_right(0).unwrap();
        assert_eq!(h.factors[0], Factor::a(2));
        assert_eq!(h.factors[1], Factor::new(Generator::A(1), McgWord::a(2)));
    }

    #[test]
    fn moves_preserve_product_and_invert() {
        let t = table();
        let f = Factorization::new(
            3,
            vec![
                Factor::a(1),
                Factor::new(Generator::A(3), McgWord::parse("a2 a4^-1").unwrap()),
                Factor::a(0),
                Factor::new(Generator::A(5), McgWord::parse("a6").unwrap()),
            ],
        );
        let p = f.product(&t).unwrap();
        for i in 0..3 {
            let r = f.hurwitz_right(i).unwrap();
            assert_eq!(r.product(&t).unwrap(), p);
            let l = f.hurwitz_left(i).unwrap();
            assert_eq!(l.product(&t).unwrap(), p);
            let back = r.hurwitz_left(i).unwrap();
            assert_eq!(back, f);
            assert!(back.equal_factorwise(&f, &t).unwrap());
        }
        assert!(f.hurwitz_right(3).is_err());
    }

    #[test]
    fn factor_equality_oracle() {
        let t = table();
        let conj = |b: usize, w: &str| Factor::new(Generator::A(b), McgWord::parse(w).unwrap());
        assert!(factor_equal(&conj(1, "a3"), &Factor::a(1), &t).unwrap());
        assert!(!factor_equal(&Factor::bare(Generator::S(1)), &Factor::a(1), &t).unwrap());
        // (a1)_{a2} and (a2)_{a1^-1} are both a1 a2 ... twists along a2(c1) = a1^-1(c2).
        let lhs = conj(1, "a2");
        let rhs = conj(2, "a1^-1");
        let dual = lhs.twist(&t).unwrap() == rhs.twist(&t).unwrap();
        assert!(dual);
        assert_eq!(factor_equal(&lhs, &rhs, &t).unwrap(), dual);
        assert!(!factor_equal(&conj(1, "a2"), &conj(1, "a2^-1"), &t).unwrap());
    }

    #[test]
    fn curve_classes() {
        let t = table();
        assert_eq!(Factor::a(1).class(&t).unwrap(), t.class(Generator::A(1)));
        assert!(Factor::new(Generator::S(1), McgWord::a(3)).class(&t).unwrap().is_zero());
        let f = Factor::new(Generator::A(1), McgWord::a(2));
        let m = t.homology_matrix(&McgWord::a(2)).unwrap();
        assert_eq!(f.class(&t).unwrap().coords, m.apply(&t.class(Generator::A(1)).coords));
    }

    #[test]
    fn global_conjugation_conjugates_product() {
        let t = table();
        let f = Factorization::from_indices(3, [1, 2, 4]);
        let phi = McgWord::parse("a3 a0^-1").unwrap();
        let g = f.global_conjugate(&phi);
        let expected = t
            .mcg_to_auto(&phi.inverse().concat(&f.word()).concat(&phi))
            .unwrap();
        assert_eq!(g.product(&t).unwrap(), expected);
        assert_eq!(f.global_conjugate(&McgWord::empty()), f);
    }

    #[test]
    fn identify_generators() {
        let t = table();
        let f = Factor::new(Generator::A(1), McgWord::parse("a3 a5").unwrap());
        assert_eq!(f.as_generator(&t).unwrap(), Some(Generator::A(1)));
        let g = Factor::new(Generator::A(1), McgWord::a(2));
        assert_eq!(g.as_generator(&t).unwrap(), None);
    }
}
