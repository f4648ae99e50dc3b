//! The formula engine: q-Kreweras polynomials for the classical types, the
//! orbit statistic `d`, q-Narayana polynomials, and the identity and
//! positivity verifiers.
//!
//! All exponent bookkeeping runs in exact quarter-integers and the assembled
//! exponents are asserted integral; every division is exact with a hard
//! failure on a nonzero remainder, so a transcription slip in any formula is
//! detected immediately rather than silently absorbed.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::partitions::{enumerate, is_principal_in_levi, Partition, PartitionStats, Quarters};
use crate::qpoly::{exact_div, q_int, q_multinomial, q_multinomial_q2, QPoly, ShiftedPoly};
use crate::report::Report;
use crate::weyl::{degrees_of, is_very_good, q_catalan, Family, WeylType};

/// A computed q-Kreweras polynomial together with the data reports need.
#[derive(Clone, Debug)]
pub struct KrewerasResult {
    pub weyl: WeylType,
    pub lambda: Partition,
    pub m: u64,
    pub poly: QPoly,
    /// Trailing exponent of `poly` (0 for the zero polynomial); the leading
    /// q-power of the formula once all quarter-integer terms cancel.
    pub exponent_offset: i64,
    pub principal_in_levi: bool,
    /// `d = r - c`, the rank statistic grouping orbits into Narayana classes.
    pub d_stat: u64,
    /// Type D partitions with all parts even index two special-orthogonal
    /// orbits; `poly` is then the full orthogonal-orbit value and each of the
    /// two orbits carries `poly / 2`.
    pub very_even: bool,
}

impl KrewerasResult {
    /// Per-orbit value for a very-even type D partition: half of `poly`.
    pub fn so_orbit_poly(&self) -> Option<QPoly> {
        if !self.very_even {
            return None;
        }
        let half = QPoly::from_terms(self.poly.terms().map(|(e, c)| {
            let (h, r) = c.div_rem(&2.into());
            assert!(
                num_traits::Zero::is_zero(&r),
                "very-even coefficients are even"
            );
            (e, h)
        }));
        Some(half)
    }
}

/// `(q^e - 1)`, or `None` when `e = 0` (the factor vanishes identically).
fn q_pow_minus_one(e: u64) -> Option<QPoly> {
    if e == 0 {
        None
    } else {
        Some(QPoly::from_terms([(e, 1.into()), (0, (-1).into())]))
    }
}

/// `prod_{i=1}^{count} (q^{m-2i+1} - 1)`; `None` when some factor vanishes.
/// Exponents step down by 2 from `m-1`, so they reach 0 before ever going
/// negative (`m` odd).
fn descending_product(m: u64, count: u64) -> Option<QPoly> {
    let mut acc = QPoly::one();
    for i in 1..=count {
        let e = (m as i64) - 2 * (i as i64) + 1;
        debug_assert!(e >= 0);
        acc = &acc * &q_pow_minus_one(e as u64)?;
    }
    Some(acc)
}

fn nonzero_parts(v: &[u64]) -> Vec<u64> {
    v.iter().copied().filter(|&x| x > 0).collect()
}

fn finish(
    weyl: WeylType,
    lambda: Partition,
    m: u64,
    value: ShiftedPoly,
    d_stat: u64,
    very_even: bool,
) -> Result<KrewerasResult> {
    let principal = is_principal_in_levi(&lambda, weyl.family);
    let poly = value
        .into_qpoly()
        .map_err(|e| Error::NonIntegerExponent(format!("Krew({weyl}, {lambda}, {m}): {e}")))?;
    let exponent_offset = poly.trailing_degree().unwrap_or(0) as i64;
    Ok(KrewerasResult {
        weyl,
        lambda,
        m,
        poly,
        exponent_offset,
        principal_in_levi: principal,
        d_stat,
        very_even,
    })
}

fn quarter_exponent_bc(s: &PartitionStats, n: u64, m: u64, sigma: Quarters) -> Result<i64> {
    let base = Quarters::from_integer((m * (n - s.ell_hat)) as i64)
        - Quarters::from_halves(s.c as i64)
        - Quarters(s.big_l as i64)
        + sigma;
    base.as_integer().ok_or_else(|| {
        Error::NonIntegerExponent(format!(
            "quarter terms fail to cancel ({} quarters)",
            base.0
        ))
    })
}

/// Type A: for a partition of `n` and `gcd(m,n) = 1`,
/// `q^{m(n-l)-c} (1/[m]_q) [m; mu]_q`.
pub fn krew_a(n: u64, lambda: &Partition, m: u64) -> Result<KrewerasResult> {
    let weyl = degrees_of(Family::A, n)?;
    if lambda.size() != n {
        return Err(Error::BadPartition(format!(
            "{lambda} is not a partition of {n}"
        )));
    }
    if m == 0 || m.gcd(&n) != 1 {
        return Err(Error::NotVeryGood {
            weyl: weyl.to_string(),
            m: m as i64,
        });
    }
    let s = lambda.stats();
    let body = exact_div(&q_multinomial(m, &nonzero_parts(&s.mu)), &q_int(m))?;
    let value = if body.is_zero() {
        ShiftedPoly::zero()
    } else {
        let e = (m * n) as i64 - (m * s.ell) as i64 - s.c as i64;
        ShiftedPoly {
            shift: e,
            poly: body,
        }
    };
    let d_stat = s.ell - 1;
    finish(weyl, lambda.clone(), m, value, d_stat, false)
}

fn krew_bc(family: Family, n: u64, lambda: &Partition, m: u64) -> Result<KrewerasResult> {
    let weyl = degrees_of(family, n)?;
    let expected = if family == Family::B {
        2 * n + 1
    } else {
        2 * n
    };
    if lambda.size() != expected || !lambda.is_valid_for(family) {
        return Err(Error::BadPartition(format!(
            "{lambda} is not in the type {family:?} index set on {expected}"
        )));
    }
    if m % 2 == 0 || m == 0 {
        return Err(Error::NotVeryGood {
            weyl: weyl.to_string(),
            m: m as i64,
        });
    }
    let s = lambda.stats();
    let m_hat = (m - 1) / 2;
    let sigma = if family == Family::B {
        s.tau1 + Quarters(1)
    } else {
        s.tau0 + s.delta
    };
    let e = quarter_exponent_bc(&s, n, m, sigma)?;
    let body = match descending_product(m, s.big_l_hat) {
        None => QPoly::zero(),
        Some(product) => {
            // product nonzero means big_l_hat <= m_hat
            let mult = q_multinomial_q2(m_hat - s.big_l_hat, &nonzero_parts(&s.mu_hat));
            &product * &mult
        }
    };
    let value = if body.is_zero() {
        ShiftedPoly::zero()
    } else {
        ShiftedPoly {
            shift: e,
            poly: body,
        }
    };
    finish(weyl, lambda.clone(), m, value, s.ell_hat, false)
}

/// Type B: partition of `2n+1`, `m` odd.
pub fn krew_b(n: u64, lambda: &Partition, m: u64) -> Result<KrewerasResult> {
    krew_bc(Family::B, n, lambda, m)
}

/// Type C: partition of `2n`, `m` odd.
pub fn krew_c(n: u64, lambda: &Partition, m: u64) -> Result<KrewerasResult> {
    krew_bc(Family::C, n, lambda, m)
}

/// Type D: partition of `2n` with even parts of even multiplicity, `m` odd,
/// `n >= 2`.  Three-case formula split on the parity of `mu_1` and on
/// whether any multiplicity is odd.  For very-even partitions the returned
/// polynomial is the orthogonal-orbit value (see [`KrewerasResult::very_even`]).
pub fn krew_d(n: u64, lambda: &Partition, m: u64) -> Result<KrewerasResult> {
    let weyl = degrees_of(Family::D, n)?;
    if lambda.size() != 2 * n || !lambda.is_valid_for(Family::D) {
        return Err(Error::BadPartition(format!(
            "{lambda} is not in the type D index set on {}",
            2 * n
        )));
    }
    if m % 2 == 0 || m == 0 {
        return Err(Error::NotVeryGood {
            weyl: weyl.to_string(),
            m: m as i64,
        });
    }
    let s = lambda.stats();
    let m_hat = (m - 1) / 2;
    let mu1 = s.mu_of(1);
    let tau1 = s.tau1.as_integer().expect("tau_1 is an integer");
    let prefix = quarter_exponent_bc(&s, n, m, s.tau1)?;
    let mu_hat_ge2 = nonzero_parts(&s.mu_hat_ge2());
    let mu_hat_ge2_sum: u64 = mu_hat_ge2.iter().sum();
    let mu1_hat = s.mu_hat_of(1);

    let (value, d_stat) = if mu1 % 2 == 1 {
        let body = match descending_product(m, s.big_l_hat - 1) {
            None => QPoly::zero(),
            Some(product) => {
                let mult = q_multinomial_q2(m_hat + 1 - s.big_l_hat, &nonzero_parts(&s.mu_hat));
                &product * &mult
            }
        };
        let value = if body.is_zero() {
            ShiftedPoly::zero()
        } else {
            ShiftedPoly {
                shift: prefix + m as i64 + 1 - s.ell_hat as i64,
                poly: body,
            }
        };
        (value, s.ell_hat - 1)
    } else if s.big_l_hat >= 1 {
        let body = match descending_product(m, s.big_l_hat) {
            None => QPoly::zero(),
            Some(product) => {
                let mult1 = q_multinomial_q2(m_hat - s.big_l_hat, &mu_hat_ge2);
                if mult1.is_zero() {
                    QPoly::zero()
                } else {
                    // mult1 nonzero forces the second argument nonnegative
                    let mult2 =
                        q_multinomial_q2(m_hat + 1 - s.big_l_hat - mu_hat_ge2_sum, &[mu1_hat]);
                    &(&product * &mult1) * &mult2
                }
            }
        };
        let value = if body.is_zero() {
            ShiftedPoly::zero()
        } else {
            ShiftedPoly {
                shift: prefix + s.ell_hat as i64 - mu1 as i64,
                poly: body,
            }
        };
        (value, s.ell_hat)
    } else {
        // All multiplicities even: sum of two positive terms.
        let s1 = ShiftedPoly {
            shift: s.ell_hat as i64 - tau1,
            poly: q_multinomial_q2(m_hat, &nonzero_parts(&s.mu_hat)),
        };
        let first = q_multinomial_q2(m_hat, &mu_hat_ge2);
        let s2 = if first.is_zero() {
            ShiftedPoly::zero()
        } else {
            ShiftedPoly {
                shift: s.ell_hat as i64 - mu1 as i64,
                poly: &first * &q_multinomial_q2(m_hat + 1 - mu_hat_ge2_sum, &[mu1_hat]),
            }
        };
        let body = s1.add(&s2);
        let value = body.mul(&ShiftedPoly::monomial(1, prefix));
        (value, s.ell_hat)
    };
    let very_even = lambda.parts().iter().all(|&p| p % 2 == 0);
    finish(weyl, lambda.clone(), m, value, d_stat, very_even)
}

/// Dispatch on the classical family carried by `w`.
pub fn krew(w: &WeylType, lambda: &Partition, m: u64) -> Result<KrewerasResult> {
    match w.family {
        Family::A => krew_a(w.n, lambda, m),
        Family::B => krew_b(w.n, lambda, m),
        Family::C => krew_c(w.n, lambda, m),
        Family::D => krew_d(w.n, lambda, m),
        other => Err(Error::UnsupportedType(format!(
            "{other:?} q-Kreweras values come from the exceptional tables"
        ))),
    }
}

/// All q-Kreweras polynomials of `w` at parameter `m`, one per orbit, in the
/// canonical partition order.
pub fn krew_all(w: &WeylType, m: u64) -> Result<Vec<KrewerasResult>> {
    let total = match w.family {
        Family::A => w.n,
        Family::B => 2 * w.n + 1,
        Family::C | Family::D => 2 * w.n,
        _ => return Err(Error::UnsupportedType("classical types only".into())),
    };
    enumerate(total, w.family)?
        .iter()
        .map(|lambda| krew(w, lambda, m))
        .collect()
}

/// Closed-form q-Narayana polynomial, cross-checked internally against the
/// grouped sum of q-Kreweras polynomials over orbits with `d = k`.
/// Types A, B, C only.
pub fn narayana(w: &WeylType, m: u64, k: u64) -> Result<QPoly> {
    if !is_very_good(w, m) {
        return Err(Error::NotVeryGood {
            weyl: w.to_string(),
            m: m as i64,
        });
    }
    let closed = match w.family {
        Family::A => {
            let n = w.n;
            if m.gcd(&n) != 1 {
                return Err(Error::NotVeryGood {
                    weyl: w.to_string(),
                    m: m as i64,
                });
            }
            if k > n - 1 {
                return Err(Error::BadRank(format!("k={k} exceeds rank {}", n - 1)));
            }
            let num = &q_multinomial(n - 1, &[k]) * &q_multinomial(m - 1, &[k]);
            let body = exact_div(&num, &q_int(k + 1))?;
            if body.is_zero() {
                QPoly::zero()
            } else {
                body.shift_up((n - 1 - k) * (m - 1 - k))
            }
        }
        Family::B | Family::C => {
            let n = w.n;
            if k > n {
                return Err(Error::BadRank(format!("k={k} exceeds rank {n}")));
            }
            let m_hat = (m - 1) / 2;
            let body = &q_multinomial_q2(n, &[k]) * &q_multinomial_q2(m_hat, &[k]);
            if body.is_zero() {
                QPoly::zero()
            } else {
                body.shift_up(2 * (n - k) * (m_hat - k))
            }
        }
        other => {
            return Err(Error::UnsupportedType(format!(
                "q-Narayana polynomials are defined here for types A, B, C only (got {other:?})"
            )))
        }
    };
    // The definition sums q-Kreweras polynomials over orbits with d = k;
    // any disagreement with the closed form is a hard failure.
    let mut grouped = QPoly::zero();
    for kr in krew_all(w, m)? {
        if kr.d_stat == k {
            grouped = &grouped + &kr.poly;
        }
    }
    if grouped != closed {
        return Err(Error::Mismatch(format!(
            "Narayana({w}, m={m}, k={k}): closed form {closed} != grouped sum {grouped}"
        )));
    }
    Ok(closed)
}

/// Check `sum_orbits Krew = Cat(W,m;q)` exactly; the report lists every
/// partition with its polynomial.
pub fn verify_sum_identity(w: &WeylType, m: u64) -> Result<Report> {
    let mut report = Report::new(format!("sum identity {w} m={m}"));
    let mut total = QPoly::zero();
    for kr in krew_all(w, m)? {
        report.push_poly(kr.lambda.to_string(), &kr.poly, true);
        total = &total + &kr.poly;
    }
    let cat = q_catalan(w, m)?;
    if total != cat {
        let diff = &total - &cat;
        return Err(Error::IdentityViolation(format!(
            "sum over orbits differs from Cat({w},{m}) by {diff}"
        )));
    }
    report.push_poly("total", &cat, true);
    Ok(report)
}

/// Check the divisibility/positivity dichotomy: principal-in-a-Levi orbits
/// have nonnegative coefficients; all other orbits are exactly divisible by
/// `q^{m-1} - 1`.
pub fn verify_divisibility_positivity(w: &WeylType, m: u64) -> Result<Report> {
    let mut report = Report::new(format!("divisibility/positivity {w} m={m}"));
    for kr in krew_all(w, m)? {
        if kr.principal_in_levi {
            if !kr.poly.has_nonnegative_coeffs() {
                return Err(Error::PropertyViolation(format!(
                    "principal orbit {} has a negative coefficient in {}",
                    kr.lambda, kr.poly
                )));
            }
            report.push_text(kr.lambda.to_string(), "nonnegative", true);
        } else if m == 1 {
            // The divisor q^{m-1}-1 degenerates; the polynomial itself must
            // vanish.
            if !kr.poly.is_zero() {
                return Err(Error::PropertyViolation(format!(
                    "non-principal orbit {} nonzero at m=1",
                    kr.lambda
                )));
            }
            report.push_text(kr.lambda.to_string(), "zero at m=1", true);
        } else {
            let divisor = QPoly::from_terms([((m - 1), 1.into()), (0, (-1).into())]);
            if exact_div(&kr.poly, &divisor).is_err() {
                return Err(Error::PropertyViolation(format!(
                    "non-principal orbit {} not divisible by q^{}-1",
                    kr.lambda,
                    m - 1
                )));
            }
            report.push_text(
                kr.lambda.to_string(),
                format!("divisible by q^{}-1", m - 1),
                true,
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn pt(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn poly(pairs: &[(u64, i64)]) -> QPoly {
        QPoly::from_terms(pairs.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn type_a_intro_values() {
        // Kreweras numbers for partitions of 4 at m = 5.
        let expect: &[(&[u64], i64)] = &[
            (&[4], 1),
            (&[3, 1], 4),
            (&[2, 2], 2),
            (&[2, 1, 1], 6),
            (&[1, 1, 1, 1], 1),
        ];
        for &(parts, v) in expect {
            let kr = krew_a(4, &pt(parts), 5).unwrap();
            assert_eq!(kr.poly.eval_at_one(), BigInt::from(v), "lambda={parts:?}");
        }
    }

    #[test]
    fn type_a_hook_polynomial() {
        let kr = krew_a(4, &pt(&[3, 1]), 5).unwrap();
        assert_eq!(kr.poly, poly(&[(7, 1), (8, 1), (9, 1), (10, 1)]));
        assert_eq!(kr.exponent_offset, 7);
        assert_eq!(kr.d_stat, 1);
    }

    #[test]
    fn type_a_single_row_collapses_to_monomial() {
        // lambda = (n) has c = n-1, so the single-row orbit contributes the
        // top monomial q^{(m-1)(n-1)} of Cat(A_{n-1}, m; q).
        for n in 2..=7u64 {
            for m in (2..=13u64).filter(|m| m.gcd(&n) == 1) {
                let kr = krew_a(n, &pt(&[n]), m).unwrap();
                assert_eq!(kr.poly, poly(&[((m - 1) * (n - 1), 1)]), "n={n} m={m}");
                let w = degrees_of(Family::A, n).unwrap();
                assert_eq!(q_catalan(&w, m).unwrap().degree(), kr.poly.degree());
            }
        }
    }

    #[test]
    fn d4_very_uneven_remark_polynomial() {
        let kr = krew_d(4, &pt(&[3, 3, 1, 1]), 9).unwrap();
        assert_eq!(
            kr.poly,
            poly(&[
                (14, 2),
                (16, 4),
                (18, 6),
                (20, 7),
                (22, 5),
                (24, 3),
                (26, 1)
            ])
        );
        assert_eq!(kr.d_stat, 2);
        assert!(kr.principal_in_levi);
        assert!(!kr.very_even);
    }

    #[test]
    fn very_even_d_partitions_have_even_coefficients() {
        let kr = krew_d(2, &pt(&[2, 2]), 3).unwrap();
        assert!(kr.very_even);
        let half = kr.so_orbit_poly().unwrap();
        assert_eq!(&(&half + &half), &kr.poly);
        // And at a bigger instance.
        let kr = krew_d(4, &pt(&[4, 4]), 7).unwrap();
        assert!(kr.very_even);
        kr.so_orbit_poly().unwrap();
    }

    #[test]
    fn sum_identity_small_instances() {
        for (family, n, m) in [
            (Family::A, 4, 5),
            (Family::A, 5, 3),
            (Family::B, 2, 5),
            (Family::B, 3, 7),
            (Family::C, 2, 5),
            (Family::C, 3, 5),
            (Family::D, 4, 7),
            (Family::D, 2, 3),
        ] {
            let w = degrees_of(family, n).unwrap();
            let report = verify_sum_identity(&w, m).unwrap();
            assert!(report.pass(), "{family:?} n={n} m={m}");
        }
    }

    #[test]
    fn non_principal_orbits_vanish_at_one() {
        // At m = h+1 the q=1 specialization counts noncrossing partitions by
        // orbit type, so principal orbits are strictly positive; non-principal
        // orbits vanish at q=1 for every odd m.
        for (n, m) in [(3u64, 7u64), (3, 5), (4, 9), (4, 7)] {
            let w = degrees_of(Family::B, n).unwrap();
            for kr in krew_all(&w, m).unwrap() {
                if kr.principal_in_levi {
                    if m == w.coxeter_number + 1 {
                        assert!(kr.poly.eval_at_one() > BigInt::from(0), "{}", kr.lambda);
                    }
                } else {
                    assert_eq!(kr.poly.eval_at_one(), BigInt::from(0), "{}", kr.lambda);
                }
            }
        }
    }

    #[test]
    fn rank_one_c_catalan_consistency() {
        // Par_C(2) = {(2), (1,1)}; the two values at q=1 sum to Cat(C1,3;1) = 2.
        let a = krew_c(1, &pt(&[2]), 3).unwrap();
        let b = krew_c(1, &pt(&[1, 1]), 3).unwrap();
        assert_eq!(a.poly.eval_at_one() + b.poly.eval_at_one(), BigInt::from(2));
        let w = degrees_of(Family::C, 1).unwrap();
        assert_eq!(q_catalan(&w, 3).unwrap().eval_at_one(), BigInt::from(2));
    }

    #[test]
    fn narayana_intro_row() {
        let w = degrees_of(Family::A, 4).unwrap();
        let expect = [1i64, 6, 6, 1];
        for (k, &v) in expect.iter().enumerate() {
            let nar = narayana(&w, 5, k as u64).unwrap();
            assert_eq!(nar.eval_at_one(), BigInt::from(v), "k={k}");
        }
    }

    #[test]
    fn narayana_b2_top_is_one() {
        let w = degrees_of(Family::B, 2).unwrap();
        assert_eq!(narayana(&w, 5, 2).unwrap(), QPoly::one());
    }

    #[test]
    fn narayana_b_equals_c_and_sums_to_catalan() {
        for n in 1..=4u64 {
            for m in [3u64, 5, 7] {
                let b = degrees_of(Family::B, n).unwrap();
                let c = degrees_of(Family::C, n).unwrap();
                let mut total = QPoly::zero();
                for k in 0..=n {
                    let nb = narayana(&b, m, k).unwrap();
                    let nc = narayana(&c, m, k).unwrap();
                    assert_eq!(nb, nc, "n={n} m={m} k={k}");
                    assert!(nb.has_nonnegative_coeffs());
                    total = &total + &nb;
                }
                assert_eq!(total, q_catalan(&b, m).unwrap(), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn narayana_rejects_type_d() {
        let w = degrees_of(Family::D, 4).unwrap();
        assert!(matches!(narayana(&w, 7, 1), Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn divisibility_positivity_small() {
        for (family, n, m) in [
            (Family::C, 3, 7),
            (Family::B, 2, 9),
            (Family::A, 5, 7),
            (Family::D, 3, 5),
        ] {
            let w = degrees_of(family, n).unwrap();
            assert!(verify_divisibility_positivity(&w, m).unwrap().pass());
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            krew_a(4, &pt(&[3, 1]), 4),
            Err(Error::NotVeryGood { .. })
        ));
        assert!(matches!(
            krew_a(4, &pt(&[3, 2]), 5),
            Err(Error::BadPartition(_))
        ));
        assert!(matches!(
            krew_b(2, &pt(&[5]), 4),
            Err(Error::NotVeryGood { .. })
        ));
        // (2,1,1) has an even part with odd multiplicity: not in Par_D(4).
        assert!(matches!(
            krew_d(2, &pt(&[2, 1, 1]), 3),
            Err(Error::BadPartition(_))
        ));
    }
}
