//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! and enforcing its runtime budget.  Budgets are asserted strictly under an
//! optimized build; unoptimized builds get a 10x allowance so `cargo test`
//! stays meaningful in both profiles.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;

use qsieve_core::coxeter;
use qsieve_core::exceptional;
use qsieve_core::kreweras::{
    krew, krew_a, krew_d, narayana, verify_divisibility_positivity, verify_sum_identity,
};
use qsieve_core::ncmodels;
use qsieve_core::nilcount;
use qsieve_core::partitions::{enumerate, is_principal_in_levi, Partition};
use qsieve_core::qpoly::QPoly;
use qsieve_core::sieve::{cross_check, divisors, eval_exact};
use qsieve_core::weyl::{degrees_of, q_catalan, Family};

fn finish(criterion: u32, what: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    let allowance = if cfg!(debug_assertions) {
        budget * 10
    } else {
        budget
    };
    let ok = elapsed <= allowance;
    println!(
        "criterion {criterion}: {} — {what} ({:.2?} of {:.0?} budget)",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        budget
    );
    assert!(
        ok,
        "criterion {criterion} exceeded its runtime budget: {elapsed:.2?}"
    );
}

fn pt(parts: &[u64]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

/// Sum-identity / property grid shared by criteria 2-4.
fn grid() -> Vec<(Family, u64, u64)> {
    let mut grid = Vec::new();
    for n in 2..=8u64 {
        for m in (1..=17u64).filter(|m| m.gcd(&n) == 1) {
            grid.push((Family::A, n, m));
        }
    }
    for family in [Family::B, Family::C] {
        for n in 1..=6u64 {
            for m in (1..=15u64).step_by(2) {
                grid.push((family, n, m));
            }
        }
    }
    for n in 2..=6u64 {
        for m in (1..=15u64).step_by(2) {
            grid.push((Family::D, n, m));
        }
    }
    grid
}

#[test]
fn criterion_01_intro_table() {
    let start = Instant::now();
    let expected: &[(&[u64], i64)] = &[
        (&[4], 1),
        (&[3, 1], 4),
        (&[2, 2], 2),
        (&[2, 1, 1], 6),
        (&[1, 1, 1, 1], 1),
    ];
    for &(parts, v) in expected {
        let kr = krew_a(4, &pt(parts), 5).unwrap();
        assert_eq!(kr.poly.eval_at_one(), BigInt::from(v), "lambda {parts:?}");
    }
    let w = degrees_of(Family::A, 4).unwrap();
    for (k, v) in [1i64, 6, 6, 1].into_iter().enumerate() {
        assert_eq!(
            narayana(&w, 5, k as u64).unwrap().eval_at_one(),
            BigInt::from(v),
            "k={k}"
        );
    }
    finish(
        1,
        "intro table Kreweras and Narayana values",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_02_sum_identity_grid() {
    let start = Instant::now();
    let mut cases = 0;
    for (family, n, m) in grid() {
        let w = degrees_of(family, n).unwrap();
        let report = verify_sum_identity(&w, m).unwrap();
        assert!(report.pass(), "{family:?} n={n} m={m}");
        cases += 1;
    }
    finish(
        2,
        &format!("sum identity over {cases} (W,m) pairs"),
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_03_narayana_identities() {
    let start = Instant::now();
    // Type A: closed form vs grouped sum (checked inside narayana) and the
    // total recovers the q-Catalan polynomial.
    for n in 2..=8u64 {
        let w = degrees_of(Family::A, n).unwrap();
        for m in (1..=17u64).filter(|m| m.gcd(&n) == 1) {
            let mut total = QPoly::zero();
            for k in 0..n {
                total = &total + &narayana(&w, m, k).unwrap();
            }
            assert_eq!(total, q_catalan(&w, m).unwrap(), "A n={n} m={m}");
        }
    }
    // Types B/C: equality of the two closed forms, plus the Catalan total.
    for n in 1..=6u64 {
        let b = degrees_of(Family::B, n).unwrap();
        let c = degrees_of(Family::C, n).unwrap();
        for m in (1..=15u64).step_by(2) {
            let mut total = QPoly::zero();
            for k in 0..=n {
                let nb = narayana(&b, m, k).unwrap();
                let nc = narayana(&c, m, k).unwrap();
                assert_eq!(nb, nc, "B/C n={n} m={m} k={k}");
                total = &total + &nb;
            }
            assert_eq!(total, q_catalan(&b, m).unwrap(), "B n={n} m={m}");
        }
    }
    finish(
        3,
        "Narayana closed forms, B=C, and Catalan totals",
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_04_divisibility_positivity_grid() {
    let start = Instant::now();
    let mut cases = 0;
    for (family, n, m) in grid() {
        let w = degrees_of(family, n).unwrap();
        let report = verify_divisibility_positivity(&w, m).unwrap();
        assert!(report.pass(), "{family:?} n={n} m={m}");
        cases += 1;
    }
    finish(
        4,
        &format!("positivity/divisibility dichotomy over {cases} (W,m) pairs"),
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_05_d4_polynomial() {
    let start = Instant::now();
    let kr = krew_d(4, &pt(&[3, 3, 1, 1]), 9).unwrap();
    let expected = QPoly::from_terms(
        [
            (14u64, 2i64),
            (16, 4),
            (18, 6),
            (20, 7),
            (22, 5),
            (24, 3),
            (26, 1),
        ]
        .into_iter()
        .map(|(e, c)| (e, BigInt::from(c))),
    );
    assert_eq!(kr.poly, expected);
    finish(
        5,
        "Krew(D4, (3,3,1,1), 9; q) coefficient-exact",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_06_root_of_unity_cross_checks() {
    let start = Instant::now();
    let mut checks = 0u64;
    let mut run = |family: Family, n: u64, s: u64| {
        let w = degrees_of(family, n).unwrap();
        let total = match family {
            Family::A => n,
            Family::B => 2 * n + 1,
            _ => 2 * n,
        };
        let m = s * w.coxeter_number + 1;
        for lambda in enumerate(total, family).unwrap() {
            for d in divisors(m - 1) {
                if is_principal_in_levi(&lambda, family) {
                    let se = cross_check(family, n, &lambda, s, d).unwrap();
                    assert!(se.agrees, "{family:?} n={n} s={s} {lambda} d={d}");
                } else {
                    // Non-principal orbits vanish at every root of unity of
                    // order dividing m-1.
                    let kr = krew(&w, &lambda, m).unwrap();
                    assert!(
                        eval_exact(&kr, d).unwrap().is_zero(),
                        "{family:?} n={n} s={s} {lambda} d={d}"
                    );
                }
                checks += 1;
            }
        }
    };
    for n in 2..=6u64 {
        for s in 1..=2u64 {
            run(Family::A, n, s);
        }
    }
    for family in [Family::B, Family::C] {
        for n in 1..=4u64 {
            for s in 1..=2u64 {
                run(family, n, s);
            }
        }
    }
    for n in 2..=4u64 {
        for s in 1..=2u64 {
            run(Family::D, n, s);
        }
    }
    finish(
        6,
        &format!("{checks} exact vs closed-form evaluations"),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_07_cyclic_sieving_brute_force() {
    let start = Instant::now();
    let mut instances = Vec::new();
    for n in 2..=5u64 {
        instances.push((Family::A, n, 1u64));
    }
    for n in 2..=4u64 {
        instances.push((Family::A, n, 2));
    }
    instances.push((Family::A, 3, 3));
    for family in [Family::B, Family::C] {
        for n in 1..=3u64 {
            instances.push((family, n, 1));
        }
        for s in 2..=3u64 {
            instances.push((family, 2, s));
        }
    }
    instances.push((Family::D, 4, 1));
    for &(family, n, s) in &instances {
        let report = ncmodels::verify_csp(family, n, s).unwrap();
        assert!(report.pass(), "{family:?} n={n} s={s}");
    }
    finish(
        7,
        &format!(
            "fixed-point censuses vs evaluations on {} instances",
            instances.len()
        ),
        start,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_08_group_theoretic_census() {
    let start = Instant::now();
    let mut instances = Vec::new();
    for n in 2..=5u64 {
        for s in 1..=2u64 {
            instances.push((Family::A, n, s));
        }
    }
    for n in 1..=3u64 {
        for s in 1..=2u64 {
            instances.push((Family::B, n, s));
        }
    }
    instances.push((Family::D, 4, 1));
    for &(family, n, s) in &instances {
        let w = degrees_of(family, n).unwrap();
        let poset = coxeter::nc_poset(&w).unwrap();
        let m = s * w.coxeter_number + 1;
        let chains = coxeter::multichains(&poset, s).unwrap();
        assert_eq!(
            BigInt::from(chains.len()),
            q_catalan(&w, m).unwrap().eval_at_one(),
            "{family:?} n={n} s={s} cardinality"
        );
        let census = coxeter::multichain_census(&poset, s, family, n).unwrap();
        let total = match family {
            Family::A => n,
            Family::B => 2 * n + 1,
            _ => 2 * n,
        };
        for lambda in enumerate(total, family).unwrap() {
            let kr = krew(&w, &lambda, m).unwrap();
            let count = census.get(&lambda).copied().unwrap_or(0);
            assert_eq!(
                kr.poly.eval_at_one(),
                BigInt::from(count),
                "{family:?} n={n} s={s} lambda={lambda}"
            );
        }
    }
    finish(
        8,
        &format!(
            "multichain cardinalities and orbit-type censuses on {} instances",
            instances.len()
        ),
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_09_finite_field_oracles() {
    let start = Instant::now();
    // gl_n rank censuses; the library call asserts every closed form.
    for n in 2..=4usize {
        nilcount::count_nilpotent_by_rank_a(n, 2).unwrap();
    }
    for n in 2..=3usize {
        nilcount::count_nilpotent_by_rank_a(n, 3).unwrap();
    }
    // so_5 / sp_4 over F_3.
    let (b, c) = nilcount::verify_bc_rank_lemma(2, 3).unwrap();
    let b_total: BigInt = b.values().sum();
    let c_total: BigInt = c.values().sum();
    assert!(b_total > BigInt::from(1));
    assert!(c_total > BigInt::from(1));
    finish(
        9,
        "nilpotent rank censuses match closed forms",
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_10_exceptional_tables() {
    let start = Instant::now();
    let entries = exceptional::builtin_entries().unwrap();
    // G2 and F4 at every very good m <= 2h+1.
    for (group, h) in [(Family::G2, 6u64), (Family::F4, 12)] {
        for m in (1..=2 * h + 1).filter(|m| m.gcd(&h) == 1) {
            let report = exceptional::verify_exceptional_sum(&entries, group, m).unwrap();
            assert!(report.pass(), "{group:?} m={m}");
        }
    }
    // E-series at three very good m values each.
    let e_cases: BTreeMap<Family, [u64; 3]> = [
        (Family::E6, [5, 7, 13]),
        (Family::E7, [5, 7, 11]),
        (Family::E8, [7, 11, 13]),
    ]
    .into_iter()
    .collect();
    for (group, ms) in &e_cases {
        for &m in ms {
            let report = exceptional::verify_exceptional_sum(&entries, *group, m).unwrap();
            assert!(report.pass(), "{group:?} m={m}");
        }
    }
    // Factorization/positivity shape for every group.
    for group in [Family::G2, Family::F4, Family::E6, Family::E7, Family::E8] {
        let report = exceptional::verify_factorization_shape(&entries, group).unwrap();
        assert!(report.pass(), "{group:?} shape");
    }
    finish(
        10,
        "exceptional sum identities and shape checks",
        start,
        Duration::from_secs(120),
    );
}
