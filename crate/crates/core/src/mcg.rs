//! Words in the Dehn twist generators of the mapping class group and their
//! evaluation through the action on the fundamental group.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::automorphism::{partial_boundary_word, Automorphism, DEFAULT_WORD_CAP};
use crate::error::{Error, Result};
use crate::homology::{HomologyVector, IntMatrix};
use crate::ribbon::{symplectic_twist_images, to_symplectic, BandSurface};
use crate::word::FreeWord;

/// A twist generator: `A(i)` is the twist along the chain curve `c_i`
/// (`0 ≤ i ≤ 2g`), `S(h)` the twist along the separating curve bounding the
/// first `h` handles (`1 ≤ h ≤ g/2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A(usize),
    S(usize),
}

impl Generator {
    pub fn is_separating(self) -> bool {
        matches!(self, Generator::S(_))
    }

    pub fn in_range(self, genus: usize) -> bool {
        match self {
            Generator::A(i) => i <= 2 * genus,
            Generator::S(h) => h >= 1 && h <= genus / 2,
        }
    }

    pub fn check(self, genus: usize) -> Result<()> {
        if self.in_range(genus) {
            Ok(())
        } else {
            Err(Error::GeneratorOutOfRange {
                name: self.to_string(),
                genus,
            })
        }
    }

    fn slot(self, genus: usize) -> usize {
        match self {
            Generator::A(i) => i,
            Generator::S(h) => 2 * genus + h,
        }
    }

    /// All generators for a genus, `a_0..a_{2g}` then `s_1..s_{g/2}`.
    pub fn all(genus: usize) -> Vec<Generator> {
        (0..=2 * genus)
            .map(Generator::A)
            .chain((1..=genus / 2).map(Generator::S))
            .collect()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::A(i) => write!(f, "a{i}"),
            Generator::S(h) => write!(f, "s{h}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad generator {s:?}"));
        let (kind, digits) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: usize = digits.parse().map_err(|_| bad())?;
        match kind {
            "a" => Ok(Generator::A(n)),
            "s" => Ok(Generator::S(n)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct McgLetter {
    pub gen: Generator,
    pub inverse: bool,
}

impl McgLetter {
    pub fn new(gen: Generator, inverse: bool) -> Self {
        McgLetter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        McgLetter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

impl FromStr for McgLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, inverse) = match s.trim().strip_suffix("^-1") {
            Some(name) => (name, true),
            None => (s.trim(), false),
        };
        Ok(McgLetter::new(name.parse()?, inverse))
    }
}

impl fmt::Display for McgLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

/// A freely reduced word in the twist generators, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct McgWord {
    letters: Vec<McgLetter>,
}

impl McgWord {
    pub fn empty() -> Self {
        McgWord::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = McgLetter>) -> Self {
        let mut w = McgWord::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn gen(g: Generator) -> Self {
        McgWord {
            letters: vec![McgLetter::new(g, false)],
        }
    }

    pub fn a(i: usize) -> Self {
        Self::gen(Generator::A(i))
    }

    /// `a_{i_1} a_{i_2} ⋯` for a list of indices.
    pub fn chain(indices: impl IntoIterator<Item = usize>) -> Self {
        Self::from_letters(indices.into_iter().map(|i| McgLetter::new(Generator::A(i), false)))
    }

    /// Parses words such as `a1 a2^-1 (a0 a2 a3 a4)^10`; tokens may be
    /// separated by whitespace or commas.
    pub fn parse(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut pos = 0;
        let w = parse_seq(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::InvalidParameter(format!("unbalanced parentheses in {s:?}")));
        }
        Ok(w)
    }

    pub fn letters(&self) -> &[McgLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: McgLetter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn extend_from(&mut self, other: &McgWord) {
        for &l in &other.letters {
            self.push(l);
        }
    }

    pub fn extend_inverse_of(&mut self, other: &McgWord) {
        for &l in other.letters.iter().rev() {
            self.push(l.inv());
        }
    }

    pub fn concat(&self, other: &McgWord) -> Self {
        let mut w = self.clone();
        w.extend_from(other);
        w
    }

    pub fn inverse(&self) -> Self {
        McgWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = McgWord::empty();
        for _ in 0..n.unsigned_abs() {
            w.extend_from(&base);
        }
        w
    }

    pub fn validate(&self, genus: usize) -> Result<()> {
        self.letters.iter().try_for_each(|l| l.gen.check(genus))
    }

    pub fn has_separating(&self) -> bool {
        self.letters.iter().any(|l| l.gen.is_separating())
    }

    /// Rewrites every `s_h` as `(a_1 ⋯ a_{2h})^{4h+2}`, the boundary twist of
    /// the chain neighbourhood, which is the same mapping class.
    pub fn expand_separating(&self) -> Self {
        let mut w = McgWord::empty();
        for &l in &self.letters {
            match l.gen {
                Generator::A(_) => w.push(l),
                Generator::S(h) => {
                    let block = McgWord::chain(1..=2 * h).pow(4 * h as i64 + 2);
                    if l.inverse {
                        w.extend_inverse_of(&block);
                    } else {
                        w.extend_from(&block);
                    }
                }
            }
        }
        w
    }
}

impl fmt::Display for McgWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close(i64),
    Letter(McgLetter, i64),
}

fn split_exponent(tok: &str) -> Result<(&str, i64)> {
    match tok.split_once('^') {
        None => Ok((tok, 1)),
        Some((head, e)) => {
            let e: i64 = e
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad exponent in {tok:?}")))?;
            Ok((head, e))
        }
    }
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let spaced = s.replace('(', " ( ").replace(')', " ) ").replace(',', " ");
    let raw: Vec<&str> = spaced.split_whitespace().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < raw.len() {
        let t = raw[i];
        if t == "(" {
            out.push(Token::Open);
        } else if t == ")" {
            let mut e = 1;
            if let Some(next) = raw.get(i + 1) {
                if let Some(rest) = next.strip_prefix('^') {
                    e = rest
                        .parse()
                        .map_err(|_| Error::InvalidParameter(format!("bad exponent {next:?}")))?;
                    i += 1;
                }
            }
            out.push(Token::Close(e));
        } else {
            let (head, e) = split_exponent(t)?;
            out.push(Token::Letter(McgLetter::new(head.parse()?, false), e));
        }
        i += 1;
    }
    Ok(out)
}

fn parse_seq(tokens: &[Token], pos: &mut usize) -> Result<McgWord> {
    let mut w = McgWord::empty();
    while *pos < tokens.len() {
        match &tokens[*pos] {
            Token::Letter(l, e) => {
                w.extend_from(&McgWord::from_letters([*l]).pow(*e));
                *pos += 1;
            }
            Token::Open => {
                *pos += 1;
                let inner = parse_seq(tokens, pos)?;
                match tokens.get(*pos) {
                    Some(Token::Close(e)) => {
                        w.extend_from(&inner.pow(*e));
                        *pos += 1;
                    }
                    _ => return Err(Error::InvalidParameter("missing ')'".into())),
                }
            }
            Token::Close(_) => break,
        }
    }
    Ok(w)
}

/// Twist automorphisms of all generators for one genus, together with their
/// homological shadow.
#[derive(Debug, Clone)]
pub struct TwistTable {
    genus: usize,
    twists: Vec<Automorphism>,
    inverses: Vec<Automorphism>,
    curves: Vec<FreeWord>,
    matrices: Vec<IntMatrix>,
    inverse_matrices: Vec<IntMatrix>,
    classes: Vec<HomologyVector>,
    pairing: IntMatrix,
    word_cap: usize,
}

impl TwistTable {
    pub fn new(genus: usize) -> Result<Self> {
        if genus < 3 {
            return Err(Error::GenusTooSmall(genus));
        }
        let rank = 2 * genus;
        let surface = BandSurface::new(genus);
        let mut twists = Vec::new();
        let mut inverses = Vec::new();
        let mut curves = Vec::new();
        for c in surface.generator_curves() {
            twists.push(Automorphism::from_images(rank, symplectic_twist_images(&surface, &c, 1))?);
            inverses.push(Automorphism::from_images(rank, symplectic_twist_images(&surface, &c, -1))?);
            curves.push(to_symplectic(&surface.curve_word(&c)).cyclically_reduced());
        }
        for h in 1..=genus / 2 {
            let d = partial_boundary_word(h);
            twists.push(partial_inner(rank, 2 * h, &d));
            inverses.push(partial_inner(rank, 2 * h, &d.inverse()));
            curves.push(d);
        }
        let matrices: Vec<IntMatrix> = twists.iter().map(Automorphism::abelianize).collect();
        let inverse_matrices: Vec<IntMatrix> = inverses.iter().map(Automorphism::abelianize).collect();

        let mut classes = Vec::new();
        let mut rows = Vec::new();
        for m in matrices.iter().take(2 * genus + 1) {
            let (v, lambda) = transvection_data(m)?;
            classes.push(v);
            rows.push(lambda);
        }
        let pairing = derive_pairing(&classes[1..], &rows[1..])?;

        let table = TwistTable {
            genus,
            twists,
            inverses,
            curves,
            matrices,
            inverse_matrices,
            classes,
            pairing,
            word_cap: DEFAULT_WORD_CAP,
        };
        table.check_construction()?;
        Ok(table)
    }

    pub fn with_word_cap(mut self, cap: usize) -> Self {
        self.word_cap = cap;
        self
    }

    pub fn word_cap(&self) -> usize {
        self.word_cap
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn generators(&self) -> Vec<Generator> {
        Generator::all(self.genus)
    }

    pub fn twist(&self, g: Generator) -> &Automorphism {
        &self.twists[g.slot(self.genus)]
    }

    pub fn twist_inverse(&self, g: Generator) -> &Automorphism {
        &self.inverses[g.slot(self.genus)]
    }

    fn letter_auto(&self, l: McgLetter) -> &Automorphism {
        if l.inverse {
            self.twist_inverse(l.gen)
        } else {
            self.twist(l.gen)
        }
    }

    /// A cyclically reduced word representing the generator's curve.
    pub fn curve(&self, g: Generator) -> &FreeWord {
        &self.curves[g.slot(self.genus)]
    }

    /// The derived class `[c_i]`; zero for separating generators.
    pub fn class(&self, g: Generator) -> HomologyVector {
        match g {
            Generator::A(i) => self.classes[i].clone(),
            Generator::S(_) => HomologyVector::zero(self.rank()),
        }
    }

    /// The intersection pairing on `H_1` in the `x` basis.
    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    pub fn generator_matrix(&self, l: McgLetter) -> &IntMatrix {
        let s = l.gen.slot(self.genus);
        if l.inverse {
            &self.inverse_matrices[s]
        } else {
            &self.matrices[s]
        }
    }

    fn check_word(&self, w: &McgWord) -> Result<()> {
        w.validate(self.genus)
    }

    pub fn mcg_to_auto(&self, w: &McgWord) -> Result<Automorphism> {
        self.check_word(w)?;
        let mut f = Automorphism::identity(self.rank());
        for &l in w.letters() {
            f = f.then(self.letter_auto(l), self.word_cap)?;
        }
        Ok(f)
    }

    pub fn mcg_equal(&self, w1: &McgWord, w2: &McgWord) -> Result<bool> {
        Ok(self.mcg_to_auto(w1)? == self.mcg_to_auto(w2)?)
    }

    /// The induced matrix on `H_1`, computed from generator matrices only.
    pub fn homology_matrix(&self, w: &McgWord) -> Result<IntMatrix> {
        self.check_word(w)?;
        let mut m = IntMatrix::identity(self.rank());
        for &l in w.letters() {
            m = self.generator_matrix(l) * &m;
        }
        Ok(m)
    }

    /// The image of a loop under the mapping class `w`, as a cyclically
    /// reduced word (only its conjugacy class is meaningful).
    pub fn curve_image(&self, w: &McgWord, curve: &FreeWord) -> Result<FreeWord> {
        self.check_word(w)?;
        let mut c = curve.cyclically_reduced();
        for &l in w.letters() {
            c = self.letter_auto(l).apply_capped(&c, self.word_cap)?.cyclically_reduced();
        }
        Ok(c)
    }

    fn check_construction(&self) -> Result<()> {
        let d = partial_boundary_word(self.genus);
        for (k, (t, ti)) in self.twists.iter().zip(&self.inverses).enumerate() {
            if t.apply(&d) != d {
                return Err(Error::Internal(format!("twist {k} moves the boundary word")));
            }
            if !t.then(ti, self.word_cap)?.is_identity() {
                return Err(Error::Internal(format!("twist {k} and its inverse disagree")));
            }
        }
        if !self.pairing.is_skew() {
            return Err(Error::Internal("derived pairing is not skew".into()));
        }
        Ok(())
    }

    /// Evaluates every defining relation and the hyperelliptic identity,
    /// returning the names of those that fail.
    pub fn relation_failures(&self) -> Result<Vec<String>> {
        let mut failed = Vec::new();
        for (name, lhs, rhs) in defining_relations(self.genus) {
            if !self.mcg_equal(&lhs, &rhs)? {
                failed.push(name);
            }
        }
        let hyper = McgWord::chain(1..=2 * self.genus).pow(4 * self.genus as i64 + 2);
        if self.mcg_to_auto(&hyper)?.detect_boundary_power() != Some(1) {
            failed.push("hyperelliptic".into());
        }
        Ok(failed)
    }
}

/// Whether the chain curves `c_i` and `c_j` intersect.
pub fn chain_curves_meet(i: usize, j: usize) -> bool {
    let (i, j) = (i.min(j), i.max(j));
    (i >= 1 && j == i + 1) || (i == 0 && j == 4)
}

/// The presentation's relations as named pairs `(lhs, rhs)`: commutation of
/// disjoint twists, braid relations, the chain relation and the lantern
/// relation.
pub fn defining_relations(genus: usize) -> Vec<(String, McgWord, McgWord)> {
    let n = 2 * genus;
    let mut out = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            let (ai, aj) = (McgWord::a(i), McgWord::a(j));
            if chain_curves_meet(i, j) {
                out.push((
                    format!("braid a{i} a{j}"),
                    ai.concat(&aj).concat(&ai),
                    aj.concat(&ai).concat(&aj),
                ));
            } else {
                out.push((format!("commute a{i} a{j}"), ai.concat(&aj), aj.concat(&ai)));
            }
        }
    }
    out.push((
        "chain".into(),
        McgWord::chain([0, 2, 3, 4]).pow(10),
        McgWord::chain([0, 1, 2, 3, 4]).pow(6),
    ));
    out.push((
        "lantern".into(),
        McgWord::chain([0, 1, 2, 3, 4, 5, 6]).pow(9),
        McgWord::chain([0, 2, 3, 4, 5, 6]).pow(12),
    ));
    out
}

fn partial_inner(rank: usize, upto: usize, w: &FreeWord) -> Automorphism {
    let full = Automorphism::inner(rank, w);
    let images = (1..=rank)
        .map(|k| {
            if k <= upto {
                full.image(k).clone()
            } else {
                FreeWord::generator(k)
            }
        })
        .collect();
    Automorphism::from_images(rank, images).expect("valid images")
}

/// For a transvection matrix `m = I + v λ`, returns the primitive vector `v`
/// (first nonzero entry positive) and the row `λ`.
fn transvection_data(m: &IntMatrix) -> Result<(HomologyVector, Vec<i64>)> {
    let n = m.rows;
    let diff = m.sub(&IntMatrix::identity(n));
    let col = (0..n)
        .map(|j| diff.column(j))
        .find(|c| c.iter().any(|&x| x != 0))
        .ok_or_else(|| Error::Internal("twist acts trivially on homology".into()))?;
    let g = col.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    let mut v: Vec<i64> = col.iter().map(|x| x / g).collect();
    if v.iter().find(|&&x| x != 0).copied().unwrap_or(0) < 0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    let k = v.iter().position(|&x| x != 0).unwrap();
    let mut lambda = Vec::with_capacity(n);
    for j in 0..n {
        let c = diff.column(j);
        let l = c[k] / v[k];
        if c.iter().zip(&v).any(|(a, b)| *a != l * b) {
            return Err(Error::Internal("twist is not a transvection".into()));
        }
        lambda.push(l);
    }
    Ok((HomologyVector { coords: v }, lambda))
}

/// Solves `J v_i = λ_i` for the pairing matrix `J`, given a basis of classes.
fn derive_pairing(classes: &[HomologyVector], lambdas: &[Vec<i64>]) -> Result<IntMatrix> {
    let n = classes.len();
    let cols: Vec<Vec<i64>> = classes.iter().map(|c| c.coords.clone()).collect();
    let v = IntMatrix::from_columns(n, &cols);
    let vinv = rational_inverse(&v)?;
    let mut j = IntMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            // (Λ V⁻¹)[r][c] where Λ[r][i] = λ_i[r].
            let mut acc = BigRational::zero();
            for (i, lam) in lambdas.iter().enumerate() {
                acc += BigRational::from_integer(lam[r].into()) * &vinv[i][c];
            }
            if !acc.is_integer() {
                return Err(Error::Internal("derived pairing is not integral".into()));
            }
            j[(r, c)] = acc.to_integer().to_i64().expect("small entry");
        }
    }
    Ok(j)
}

fn rational_inverse(m: &IntMatrix) -> Result<Vec<Vec<BigRational>>> {
    let n = m.rows;
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        BigRational::from_integer(m[(i, j)].into())
                    } else if j - n == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Internal("curve classes are not a basis".into()))?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

impl HomologyVector {
    /// Whether the vector is primitive up to sign of a derived class.
    pub fn is_plus_minus(&self, other: &HomologyVector) -> bool {
        self == other || *self == other.neg()
    }

    pub fn abs_pair(&self, other: &HomologyVector, j: &IntMatrix) -> i64 {
        self.pair(other, j).abs()
    }
}
