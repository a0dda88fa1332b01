//! Line-based text formats for factorizations, move certificates and
//! derivations.  Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use hurwitz::derivation::{DerivationCertificate, RelationKind, Step};
use hurwitz::{BlockRelation, Factor, Factorization, Generator, McgLetter, McgWord, Move, MoveCertificate};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

fn fail<T>(line: usize, reason: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        reason: reason.into(),
    })
}

/// Non-empty lines with comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn number(line: usize, s: Option<&str>, what: &str) -> Result<usize, ParseError> {
    match s.map(str::parse::<usize>) {
        Some(Ok(n)) => Ok(n),
        _ => fail(line, format!("expected {what}")),
    }
}

fn direction(line: usize, s: Option<&str>) -> Result<bool, ParseError> {
    match s {
        Some("fwd") => Ok(true),
        Some("bwd") => Ok(false),
        _ => fail(line, "expected fwd or bwd"),
    }
}

fn no_more<'a>(line: usize, mut rest: impl Iterator<Item = &'a str>) -> Result<(), ParseError> {
    match rest.next() {
        None => Ok(()),
        Some(extra) => fail(line, format!("unexpected {extra:?}")),
    }
}

fn conjugator(line: usize, s: &str) -> Result<McgWord, ParseError> {
    let letters = s
        .split(',')
        .map(|tok| tok.trim().parse::<McgLetter>())
        .collect::<Result<Vec<_>, _>>()
        .or_else(|e| fail(line, e.to_string()))?;
    Ok(McgWord::from_letters(letters))
}

fn conjugator_text(w: &McgWord) -> String {
    w.letters().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_factorization(text: &str) -> Result<Factorization, ParseError> {
    let mut genus = None;
    let mut factors = Vec::new();
    let mut last = 0;
    for (line, l) in content_lines(text) {
        last = line;
        let (keyword, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        match keyword {
            "genus" => {
                if genus.is_some() {
                    return fail(line, "genus given twice");
                }
                let g = number(line, Some(rest.trim()), "a genus")?;
                if g < 3 {
                    return fail(line, format!("genus {g} unsupported (need at least 3)"));
                }
                genus = Some(g);
            }
            "factor" => {
                let Some(g) = genus else {
                    return fail(line, "factor before genus");
                };
                let (base, conj) = match rest.split_once('@') {
                    Some((b, c)) => (b.trim(), conjugator(line, c.trim())?),
                    None => (rest.trim(), McgWord::empty()),
                };
                let base: Generator = base.parse().or_else(|e: hurwitz::Error| fail(line, e.to_string()))?;
                let factor = Factor::new(base, conj);
                factor.validate(g).or_else(|e| fail(line, e.to_string()))?;
                factors.push(factor);
            }
            other => return fail(line, format!("unknown keyword {other:?}")),
        }
    }
    match genus {
        Some(g) => Ok(Factorization::new(g, factors)),
        None => fail(last.max(1), "missing genus line"),
    }
}

pub fn serialize_factorization(f: &Factorization) -> String {
    let mut out = format!("genus {}\n", f.genus);
    for x in &f.factors {
        let _ = writeln!(out, "factor {x}");
    }
    out
}

fn block_relation(line: usize, s: Option<&str>) -> Result<BlockRelation, ParseError> {
    match s {
        Some("chain") => Ok(BlockRelation::Chain),
        Some("lantern") => Ok(BlockRelation::Lantern),
        _ => fail(line, "expected chain or lantern"),
    }
}

pub fn parse_certificate(text: &str) -> Result<MoveCertificate, ParseError> {
    let mut moves = Vec::new();
    for (line, l) in content_lines(text) {
        let mut toks = l.split_whitespace();
        let m = match toks.next() {
            Some("R") => Move::HurwitzR(number(line, toks.next(), "a position")?),
            Some("L") => Move::HurwitzL(number(line, toks.next(), "a position")?),
            Some("CONJ") => {
                let rest = l["CONJ".len()..].trim();
                moves.push(Move::GlobalConj(conjugator(line, rest)?));
                continue;
            }
            Some("SUBST") => {
                let relation = block_relation(line, toks.next())?;
                let forward = direction(line, toks.next())?;
                let start = number(line, toks.next(), "a position")?;
                Move::Subst {
                    relation,
                    forward,
                    start,
                }
            }
            Some(other) => return fail(line, format!("unknown move {other:?}")),
            None => unreachable!("content lines are non-empty"),
        };
        no_more(line, toks)?;
        moves.push(m);
    }
    Ok(MoveCertificate::new(moves))
}

pub fn serialize_certificate(c: &MoveCertificate) -> String {
    let mut out = String::new();
    for m in &c.moves {
        let _ = match m {
            Move::GlobalConj(w) => writeln!(out, "CONJ {}", conjugator_text(w)),
            _ => writeln!(out, "{m}"),
        };
    }
    out
}

pub fn parse_derivation(text: &str) -> Result<DerivationCertificate, ParseError> {
    let mut steps = Vec::new();
    for (line, l) in content_lines(text) {
        let mut toks = l.split_whitespace();
        let s = match toks.next() {
            Some("R") => Step::HurwitzR(number(line, toks.next(), "a position")?),
            Some("L") => Step::HurwitzL(number(line, toks.next(), "a position")?),
            Some("PCREATE") => {
                let i = number(line, toks.next(), "a position")?;
                let letter: McgLetter = match toks.next() {
                    Some(tok) => tok.parse().or_else(|e: hurwitz::Error| fail(line, e.to_string()))?,
                    None => return fail(line, "expected a generator"),
                };
                Step::PairCreate(i, letter)
            }
            Some("PCANCEL") => Step::PairCancel(number(line, toks.next(), "a position")?),
            Some("REL") => {
                let kind: RelationKind = match toks.next() {
                    Some(k) => k.parse().or_else(|e: hurwitz::Error| fail(line, e.to_string()))?,
                    None => return fail(line, "expected a relation"),
                };
                let forward = direction(line, toks.next())?;
                let pos = number(line, toks.next(), "a position")?;
                Step::Relation { kind, forward, pos }
            }
            Some(other) => return fail(line, format!("unknown step {other:?}")),
            None => unreachable!("content lines are non-empty"),
        };
        no_more(line, toks)?;
        steps.push(s);
    }
    Ok(DerivationCertificate::new(steps))
}

pub fn serialize_derivation(d: &DerivationCertificate) -> String {
    d.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_examples() {
        let f = parse_factorization("genus 3\nfactor a0\n").unwrap();
        assert_eq!(f.len(), 1);
        let f = parse_factorization("genus 3\nfactor a1 @ a2,a3^-1\n").unwrap();
        assert_eq!(f.factors[0].conj, McgWord::parse("a2 a3^-1").unwrap());
        let f = parse_factorization("# reducible\ngenus 3\nfactor s1 @ a4\n").unwrap();
        assert_eq!(f.factors[0].base, Generator::S(1));
        assert_eq!(serialize_factorization(&f), "genus 3\nfactor s1 @ a4\n");
    }

    #[test]
    fn factorization_errors_name_the_line() {
        let e = parse_factorization("genus 3\nfactor a7\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(parse_factorization("factor a1\n").unwrap_err().line, 1);
        assert_eq!(parse_factorization("genus 3\n\nfactor a1 @ b2\n").unwrap_err().line, 3);
        assert_eq!(parse_factorization("genus 2\n").unwrap_err().line, 1);
        assert!(parse_factorization("").is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let text = "R 0\nL 3\nCONJ a1,a2^-1\nSUBST chain fwd 4\nSUBST lantern bwd 0\n";
        let c = parse_certificate(text).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(serialize_certificate(&c), text);
        assert_eq!(parse_certificate("R\n").unwrap_err().line, 1);
        assert_eq!(parse_certificate("R 1 2\n").unwrap_err().line, 1);
        assert_eq!(parse_certificate("R 1\nSUBST braid fwd 0\n").unwrap_err().line, 2);
    }

    #[test]
    fn derivation_round_trip() {
        let text = "R 0\nL 1\nPCREATE 2 a1^-1\nPCANCEL 2\nREL braid fwd 3\nREL chain bwd 0\n";
        let d = parse_derivation(text).unwrap();
        assert_eq!(d.len(), 6);
        assert_eq!(serialize_derivation(&d), text);
        assert!(parse_derivation("PCREATE 0\n").is_err());
        assert!(parse_derivation("REL twist fwd 0\n").is_err());
    }
}
