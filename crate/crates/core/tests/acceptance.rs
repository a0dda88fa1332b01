//! Acceptance checks, one line per criterion.  Run with
//! `cargo test --release --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use hurwitz::braid::build_rn_braid_parts;
use hurwitz::certificate::{block_commute_certificate, conjugation_certificate, factor_word_value, rotate_certificate};
use hurwitz::derivation::{DerivationCertificate, RelationKind, Step};
use hurwitz::invariants::signature_unchecked;
use hurwitz::stabilize::{compile_positive, stable_equivalence, trade_ledger, StabilizeMode};
use hurwitz::universal::{rn_full_indices, universal_indices};
use hurwitz::{
    braid_equal, build_universal, census, check_certificate, endo_signature, euler_characteristic, replay, section_square, signature,
    BraidWord, Factorization, TwistTable, UniversalKind,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

const KINDS: [UniversalKind; 4] = [UniversalKind::A, UniversalKind::B, UniversalKind::C, UniversalKind::D];

fn relator_suite() -> Outcome {
    for g in 3..=5 {
        let t = TwistTable::new(g).map_err(err)?;
        let failed = t.relation_failures().map_err(err)?;
        ensure(failed.is_empty(), || format!("genus {g}: {failed:?}"))?;
    }
    Ok("all relations and the hyperelliptic power hold at genus 3, 4, 5".into())
}

fn universal_products() -> Outcome {
    for g in 3..=5 {
        let t = TwistTable::new(g).map_err(err)?;
        for kind in KINDS {
            let f = build_universal(kind, g).map_err(err)?;
            ensure(f.boundary_power(&t).map_err(err)? == Some(1), || format!("{kind} at genus {g}"))?;
        }
        let f0 = build_universal(UniversalKind::F0, g).map_err(err)?;
        ensure(f0.boundary_power(&t).map_err(err)? == Some(4), || format!("F0 at genus {g}"))?;
    }
    let t = TwistTable::new(3).map_err(err)?;
    for n in 2..=5 {
        let f = Factorization::from_indices(3, rn_full_indices(3, n).map_err(err)?);
        ensure(f.boundary_power(&t).map_err(err)? == Some(1), || format!("R{n} family"))?;
    }
    Ok("A, B, C, D give T_d and F0 gives T_d^4 at genus 3-5; R_n families for n = 2..5".into())
}

fn golden_signatures() -> Outcome {
    let mut report = Vec::new();
    for g in 3..=5 {
        let t = TwistTable::new(g).map_err(err)?;
        let mut s = [0i64; 4];
        for (i, kind) in KINDS.iter().enumerate() {
            s[i] = signature(&build_universal(*kind, g).map_err(err)?, &t).map_err(err)?.signature;
        }
        if g == 3 {
            ensure(s == [-48, -42, -35, -40], || format!("genus 3 signatures {s:?}"))?;
        }
        ensure(s[0] - s[1] == -6 && s[2] - s[3] == 5, || format!("genus {g} differences from {s:?}"))?;
        report.push(format!("g={g}: {s:?}"));
    }
    Ok(report.join("; "))
}

fn count_identities() -> Outcome {
    for g in 3..=6 {
        let len = |k| universal_indices(k, g).map(|v| v.len() as i64).map_err(err);
        ensure(len(UniversalKind::A)? - len(UniversalKind::B)? == 10, || format!("|A|-|B| at genus {g}"))?;
        ensure(len(UniversalKind::D)? - len(UniversalKind::C)? == 9, || format!("|D|-|C| at genus {g}"))?;
        for n in 2..2 * g {
            let r = rn_full_indices(g, n).map_err(err)?.len();
            ensure(r == 2 * g * (4 * g + 2), || format!("R{n} family at genus {g} has {r} factors"))?;
        }
    }
    Ok("length differences 10 and 9, R_n families of length 2g(4g+2) for g = 3..6".into())
}

fn endo_cross_check() -> Outcome {
    for g in 3..=4 {
        let t = TwistTable::new(g).map_err(err)?;
        let h = build_universal(UniversalKind::Hyperelliptic, g).map_err(err)?;
        let s = signature(&h, &t).map_err(err)?.signature;
        let e = endo_signature(&census(&h), g).map_err(err)?;
        let want = -4 * (g as i64) * (g as i64 + 1);
        ensure(s == want && e == want, || format!("genus {g}: recipe {s}, Endo {e}, expected {want}"))?;
    }
    Ok("-48 at genus 3, -80 at genus 4".into())
}

fn braid_identity() -> Outcome {
    let delta2 = BraidWord::full_twist(7);
    for n in 3..=5 {
        let p = build_rn_braid_parts(3, n).map_err(err)?;
        let first = p.a1.concat(&p.a2).and_then(|w| w.concat(&p.b1)).and_then(|w| w.concat(&p.b2)).map_err(err)?;
        let second = p.a2.concat(&p.b1).and_then(|w| w.concat(&p.b2)).and_then(|w| w.concat(&p.a1)).map_err(err)?;
        ensure(braid_equal(&first, &delta2).map_err(err)?, || format!("a'a''b'b'' for n={n}"))?;
        ensure(braid_equal(&second, &delta2).map_err(err)?, || format!("a''b'b''a' for n={n}"))?;
    }
    Ok("both products equal the full twist in B_7 for n = 3, 4, 5".into())
}

fn move_system_properties() -> Outcome {
    let t = TwistTable::new(3).map_err(err)?.with_word_cap(20_000);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let trials = 10_000;
    let mut full_products = 0;
    for trial in 0..trials {
        let f = common::random_factorization(&mut rng, 3, 12, true);
        let cert = common::random_hurwitz_moves(&mut rng, f.len(), 4);
        let h = replay(&f, &cert, &t).map_err(err)?;
        let fail = |what: &str| format!("trial {trial}: {what}");
        ensure(h.word() == f.word(), || fail("product word"))?;
        ensure(
            t.homology_matrix(&h.word()).map_err(err)? == t.homology_matrix(&f.word()).map_err(err)?,
            || fail("homology action"),
        )?;
        if trial % 10 == 0 {
            if let (Ok(x), Ok(y)) = (f.product(&t), h.product(&t)) {
                ensure(x == y, || fail("product automorphism"))?;
                full_products += 1;
            }
        }
        if f.len() >= 2 {
            let i = rng.gen_range(0..f.len() - 1);
            let back = f.hurwitz_right(i).and_then(|x| x.hurwitz_left(i)).map_err(err)?;
            ensure(back.equal_factorwise(&f, &t).map_err(err)?, || fail("L after R"))?;
        }
        let sf = signature_unchecked(&f, &t).map_err(err)?.signature;
        ensure(signature_unchecked(&h, &t).map_err(err)?.signature == sf, || fail("signature under Hurwitz moves"))?;
        ensure(euler_characteristic(&h, 3) == euler_characteristic(&f, 3), || fail("euler characteristic"))?;
        ensure(census(&h) == census(&f), || fail("census"))?;
        let w = common::random_word(&mut rng, 3, 3);
        let c = f.global_conjugate(&w);
        ensure(signature_unchecked(&c, &t).map_err(err)?.signature == sf, || fail("signature under conjugation"))?;
        ensure(census(&c) == census(&f), || fail("census under conjugation"))?;
    }
    // Section squares need a boundary power; use perturbed universal ones.
    let t = TwistTable::new(3).map_err(err)?;
    for trial in 0..200 {
        let (f, h) = perturbed_universal(&mut rng, &t)?;
        let m = section_square(&f, &t).map_err(err)?;
        ensure(section_square(&h, &t).map_err(err)? == m, || format!("section trial {trial}"))?;
        let c = h.global_conjugate(&common::random_word(&mut rng, 3, 3));
        ensure(section_square(&c, &t).map_err(err)? == m, || format!("section under conjugation, trial {trial}"))?;
    }
    Ok(format!("{trials} random trials ({full_products} with full products), 200 section trials"))
}

/// A universal factorization and a copy moved by a few Hurwitz moves and a
/// global conjugation.
fn perturbed_universal(rng: &mut ChaCha8Rng, t: &TwistTable) -> Result<(Factorization, Factorization), String> {
    let kinds = [UniversalKind::A, UniversalKind::B, UniversalKind::C, UniversalKind::D, UniversalKind::Hyperelliptic];
    let f = build_universal(*kinds.choose(rng).expect("kinds"), 3).map_err(err)?;
    let k = rng.gen_range(0..=12);
    let cert = common::random_hurwitz_moves(rng, f.len(), k);
    let h = replay(&f, &cert, t).map_err(err)?.global_conjugate(&common::random_word(rng, 3, 2));
    Ok((f, h))
}

fn certificate_macros() -> Outcome {
    let t = TwistTable::new(3).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xce47);
    let a = build_universal(UniversalKind::A, 3).map_err(err)?;
    let mut cases = vec![a];
    for _ in 0..100 {
        cases.push(perturbed_universal(&mut rng, &t)?.1);
    }
    for (i, f) in cases.iter().enumerate() {
        let fail = |what: &str| format!("case {i}: {what}");
        let (rotated, cert) = rotate_certificate(f, &t).map_err(err)?;
        ensure(check_certificate(f, &cert, &rotated, &t).map_err(err)?, || fail("rotation"))?;
        let phi: Vec<(usize, bool)> = (0..rng.gen_range(1..=2)).map(|_| (rng.gen_range(0..f.len()), rng.gen())).collect();
        let cert = conjugation_certificate(f, &phi, &t).map_err(err)?;
        let value = factor_word_value(f, &phi).map_err(err)?;
        ensure(check_certificate(f, &cert, &f.global_conjugate(&value), &t).map_err(err)?, || fail("conjugation"))?;
        let g = common::random_factorization(&mut rng, 3, 4, false);
        let cert = block_commute_certificate(&g, f, &t).map_err(err)?;
        let start = g.concat(f).map_err(err)?;
        let end = f.concat(&g).map_err(err)?;
        ensure(check_certificate(&start, &cert, &end, &t).map_err(err)?, || fail("block commute"))?;
    }
    Ok(format!("rotation, conjugation and block-commute certificates replay on {} factorizations", cases.len()))
}

fn chain_step(forward: bool, pos: usize) -> Step {
    Step::Relation {
        kind: RelationKind::Chain,
        forward,
        pos,
    }
}

fn pipeline() -> Outcome {
    let t = TwistTable::new(3).map_err(err)?;
    let a = build_universal(UniversalKind::A, 3).map_err(err)?;
    let b = build_universal(UniversalKind::B, 3).map_err(err)?;
    let ab = a.concat(&b).map_err(err)?;
    let ba = b.concat(&a).map_err(err)?;
    let mut report = Vec::new();

    let d = DerivationCertificate::from_hurwitz(&block_commute_certificate(&a, &b, &t).map_err(err)?).map_err(err)?;
    let st = stable_equivalence(&ab, &ba, &d, StabilizeMode::Strict, &t).map_err(err)?;
    ensure(st.ledger.k == 0 && st.ledger.l == 0, || "(a) k, l".into())?;
    report.push(format!("(a) {} moves", st.certificate.len()));

    let p = a.factors.iter().position(|x| x.base == hurwitz::Generator::A(5)).ok_or("no a5 in A")?;
    let cert = conjugation_certificate(&a, &[(p, false)], &t).map_err(err)?;
    let a5 = a.global_conjugate(&hurwitz::McgWord::a(5));
    let d = DerivationCertificate::from_hurwitz(&cert).map_err(err)?;
    let st = stable_equivalence(&a, &a5, &d, StabilizeMode::Strict, &t).map_err(err)?;
    ensure(st.ledger.k == 0 && st.ledger.l == 0, || "(b) k, l".into())?;
    report.push(format!("(b) {} moves", st.certificate.len()));

    let one = DerivationCertificate::new(vec![chain_step(true, 0)]);
    let (_, compiled) = compile_positive(&a, &b, &one, &t).map_err(err)?;
    let before = trade_ledger(&compiled);
    ensure(before.l == 1 && before.k == 0, || format!("(c) trade ledger l={} k={}", before.l, before.k))?;
    let st = stable_equivalence(&a, &b, &one, StabilizeMode::General, &t).map_err(err)?;
    ensure(st.ledger.l == 1 && st.chi_defect == 0 && st.sigma_defect == 0, || "(c) single chain bookkeeping".into())?;
    let both = DerivationCertificate::new(vec![chain_step(true, 0), chain_step(false, 74)]);
    let (_, compiled) = compile_positive(&ab, &ba, &both, &t).map_err(err)?;
    let steps: Vec<i64> = compiled
        .moves
        .iter()
        .filter(|m| matches!(m, hurwitz::Move::Subst { .. }))
        .map(|m| trade_ledger(&hurwitz::MoveCertificate::new(vec![m.clone()])).l)
        .collect();
    ensure(steps == [1, -1], || format!("(c) per-step trades {steps:?}"))?;
    let st = stable_equivalence(&ab, &ba, &both, StabilizeMode::Strict, &t).map_err(err)?;
    ensure(st.ledger.k == 0 && st.ledger.l == 0, || "(c) balanced k, l".into())?;
    ensure(st.chi_defect == 0 && st.sigma_defect == 0, || "(c) balanced defects".into())?;
    report.push(format!(
        "(c) A->B: l=1, 10l-9k and -6l+5k match; AB->BA: trades {steps:?}, k=l=0, padding t={}, {} moves",
        st.ledger.b,
        st.certificate.len()
    ));
    Ok(report.join("; "))
}

fn novikov() -> Outcome {
    let t = TwistTable::new(3).map_err(err)?;
    let kinds = [UniversalKind::A, UniversalKind::B, UniversalKind::C, UniversalKind::D, UniversalKind::Hyperelliptic];
    let mut sigma = std::collections::HashMap::new();
    for k in kinds {
        let f = build_universal(k, 3).map_err(err)?;
        sigma.insert(k, signature(&f, &t).map_err(err)?.signature);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x40b1);
    for i in 0..20 {
        let (x, y) = (*kinds.choose(&mut rng).expect("kinds"), *kinds.choose(&mut rng).expect("kinds"));
        let f = build_universal(x, 3).and_then(|f| f.concat(&build_universal(y, 3)?)).map_err(err)?;
        let s = signature(&f, &t).map_err(err)?.signature;
        ensure(s == sigma[&x] + sigma[&y], || format!("pair {i}: {x}{y} gives {s}"))?;
    }
    Ok("20 sampled fiber sums".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("relator suite", relator_suite),
        ("universal products", universal_products),
        ("golden signatures", golden_signatures),
        ("count identities", count_identities),
        ("Endo cross-check", endo_cross_check),
        ("braid identity", braid_identity),
        ("move-system properties", move_system_properties),
        ("certificate macros", certificate_macros),
        ("pipeline end-to-end", pipeline),
        ("Novikov additivity", novikov),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("AC{:<2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("AC{:<2} FAIL  {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
