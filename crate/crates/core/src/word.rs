//! Reduced words in a free group of finite rank.
//!
//! A letter is a nonzero `i32`: `k` stands for the generator `x_k` and `-k`
//! for its inverse.

use std::fmt;

use crate::error::{Error, Result};

pub type Letter = i32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn generator(k: usize) -> Self {
        FreeWord {
            letters: vec![k as Letter],
        }
    }

    /// Freely reduces `raw`, checking that every index lies in `1..=rank`.
    pub fn reduce(raw: &[Letter], rank: usize) -> Result<Self> {
        for &x in raw {
            let index = x.unsigned_abs() as usize;
            if x == 0 || index > rank {
                return Err(Error::LetterOutOfRange { index, rank });
            }
        }
        Ok(Self::reduce_unchecked(raw.iter().copied()))
    }

    pub(crate) fn reduce_unchecked(raw: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = FreeWord::empty();
        for x in raw {
            w.push(x);
        }
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends a letter, cancelling against the last one when possible.
    pub fn push(&mut self, x: Letter) {
        if self.letters.last() == Some(&-x) {
            self.letters.pop();
        } else {
            self.letters.push(x);
        }
    }

    pub fn extend_from(&mut self, other: &FreeWord) {
        for &x in &other.letters {
            self.push(x);
        }
    }

    pub fn extend_inverse_of(&mut self, other: &FreeWord) {
        for &x in other.letters.iter().rev() {
            self.push(-x);
        }
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|&x| -x).collect(),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> Self {
        let mut w = self.clone();
        w.extend_from(other);
        w
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = FreeWord::empty();
        for _ in 0..n.unsigned_abs() {
            w.extend_from(&base);
        }
        w
    }

    /// The commutator `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> Self {
        let mut w = a.clone();
        w.extend_from(b);
        w.extend_inverse_of(a);
        w.extend_inverse_of(b);
        w
    }

    /// Removes matching letters from both ends until the word is cyclically
    /// reduced.
    pub fn cyclically_reduced(&self) -> Self {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j > i + 1 && l[i] == -l[j - 1] {
            i += 1;
            j -= 1;
        }
        FreeWord {
            letters: l[i..j].to_vec(),
        }
    }

    /// Whether two words define the same unoriented conjugacy class, i.e. the
    /// same free homotopy class of an unoriented loop.
    pub fn same_unoriented_cycle(&self, other: &FreeWord) -> bool {
        let a = self.cyclically_reduced();
        let b = other.cyclically_reduced();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        is_rotation(&a.letters, &b.letters) || is_rotation(&a.letters, &b.inverse().letters)
    }

    /// A canonical representative of the unoriented conjugacy class: the
    /// least rotation of the cyclic reduction or of its inverse.
    pub fn canonical_cycle(&self) -> Self {
        let a = self.cyclically_reduced();
        let b = a.inverse();
        let ra = least_rotation(&a.letters);
        let rb = least_rotation(&b.letters);
        if ra <= rb {
            FreeWord { letters: ra }
        } else {
            FreeWord { letters: rb }
        }
    }

    /// Exponent sums of the generators `x_1..x_rank`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for &x in &self.letters {
            v[x.unsigned_abs() as usize - 1] += x.signum() as i64;
        }
        v
    }
}

fn is_rotation(a: &[Letter], b: &[Letter]) -> bool {
    // Knuth-Morris-Pratt search for `b` in `a a`.
    let n = b.len();
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && b[i] != b[k] {
            k = fail[k - 1];
        }
        if b[i] == b[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut q = 0;
    for i in 0..(2 * n - 1) {
        let c = a[i % n];
        while q > 0 && c != b[q] {
            q = fail[q - 1];
        }
        if c == b[q] {
            q += 1;
        }
        if q == n {
            return true;
        }
    }
    false
}

fn least_rotation(s: &[Letter]) -> Vec<Letter> {
    let n = s.len();
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        let (a, b) = (s[(i + k) % n], s[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    let start = i.min(j);
    (0..n).map(|t| s[(start + t) % n]).collect()
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, &x) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if x > 0 {
                write!(f, "x{x}")?;
            } else {
                write!(f, "x{}^-1", -x)?;
            }
        }
        Ok(())
    }
}
