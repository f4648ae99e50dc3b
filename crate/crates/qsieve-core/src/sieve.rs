//! Root-of-unity evaluation of q-Kreweras polynomials: exactly, by cyclotomic
//! reduction, and through the closed-form counting expressions valid for
//! principal-in-a-Levi orbits, with mandatory cross-checks between the two.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kreweras::{krew, KrewerasResult};
use crate::partitions::{is_principal_in_levi, Partition};
use crate::qpoly::{reduce_mod_cyclo, CycloElt};
use crate::weyl::{degrees_of, Family, WeylType};

/// Outcome of evaluating one q-Kreweras polynomial at a primitive d-th root
/// of unity both ways.
#[derive(Clone, Debug)]
pub struct SieveEval {
    pub weyl: WeylType,
    pub lambda: Partition,
    pub m: u64,
    pub d: u64,
    pub exact_value: CycloElt,
    /// Closed-form count; `None` for orbits outside the closed form's scope
    /// (non-principal), where the exact value must be zero instead.
    pub closed_form: Option<BigInt>,
    pub agrees: bool,
}

/// Exact value of `kr.poly` at a primitive d-th root of unity, as a residue
/// modulo the d-th cyclotomic polynomial.  Requires `d | m-1`.
pub fn eval_exact(kr: &KrewerasResult, d: u64) -> Result<CycloElt> {
    if d == 0 || (kr.m - 1) % d != 0 {
        return Err(Error::BadDivisor {
            d,
            m_minus_1: kr.m - 1,
        });
    }
    Ok(reduce_mod_cyclo(&kr.poly, d))
}

/// Integer multinomial `n! / (parts_1! ... parts_k! (n - sum)!)`, zero when
/// the parts overflow `n`.
pub fn multinomial(n: u64, parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    if total > n {
        return BigInt::zero();
    }
    let mut value = BigInt::one();
    let mut remaining = n;
    for &p in parts {
        value *= binomial(remaining, p);
        remaining -= p;
    }
    value
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut value = BigInt::one();
    for i in 0..k {
        value = value * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    value
}

fn nonzero(v: &[u64]) -> Vec<u64> {
    v.iter().copied().filter(|&x| x > 0).collect()
}

/// `d / gcd(2,d)`.
fn d_minus(d: u64) -> u64 {
    if d % 2 == 0 {
        d / 2
    } else {
        d
    }
}

/// `lcm(2,d)`.
fn d_plus(d: u64) -> u64 {
    2 * d_minus(d)
}

/// Closed-form value of `Krew(w, lambda, sh+1; q)` at a primitive d-th root
/// of unity, for principal-in-a-Levi `lambda` and `d | sh`.  Returns the
/// counting expression (possibly zero).
pub fn eval_closed_form(w: &WeylType, lambda: &Partition, s: u64, d: u64) -> Result<BigInt> {
    let h = w.coxeter_number;
    if d == 0 || (s * h) % d != 0 {
        return Err(Error::BadDivisor {
            d,
            m_minus_1: s * h,
        });
    }
    let expected_total = match w.family {
        Family::A => w.n,
        Family::B => 2 * w.n + 1,
        Family::C | Family::D => 2 * w.n,
        other => {
            return Err(Error::UnsupportedType(format!(
                "{other:?} has no classical closed form"
            )))
        }
    };
    if lambda.size() != expected_total || !lambda.is_valid_for(w.family) {
        return Err(Error::BadPartition(format!(
            "{lambda} is not in the {} index set on {expected_total}",
            w
        )));
    }
    if !is_principal_in_levi(lambda, w.family) {
        return Err(Error::OutOfScope(format!(
            "{lambda} is not principal-in-a-Levi; the closed form does not apply"
        )));
    }
    let st = lambda.stats();
    match w.family {
        Family::A => {
            let n = w.n;
            let m = s * n + 1;
            if d == 1 {
                // Kreweras count: multinomial(m; mu, m - l) / m.
                let numer = multinomial(m, &nonzero(&st.mu));
                let (v, r) = num_integer::Integer::div_rem(&numer, &BigInt::from(m));
                assert!(r.is_zero(), "Kreweras count is an integer");
                return Ok(v);
            }
            // Nonvanishing needs at most one multiplicity not divisible by d,
            // with remainder 1.
            let mut bad = 0u64;
            for &mu in &st.mu {
                let r = mu % d;
                if r != 0 {
                    bad += 1;
                    if r != 1 || bad > 1 {
                        return Ok(BigInt::zero());
                    }
                }
            }
            let parts: Vec<u64> = st.mu.iter().map(|&mu| mu / d).collect();
            Ok(multinomial(s * n / d, &nonzero(&parts)))
        }
        Family::B | Family::C => {
            let n = w.n;
            let dm = d_minus(d);
            if st.mu_hat.iter().any(|&mh| mh % dm != 0) {
                return Ok(BigInt::zero());
            }
            let parts: Vec<u64> = st.mu_hat.iter().map(|&mh| mh / dm).collect();
            Ok(multinomial(s * n / dm, &nonzero(&parts)))
        }
        Family::D => {
            let n = w.n;
            let dm = d_minus(d);
            let dp = d_plus(d);
            if st.big_l_hat == 1 {
                if st.mu_hat.iter().any(|&mh| mh % dm != 0) {
                    return Ok(BigInt::zero());
                }
                let parts: Vec<u64> = st.mu_hat.iter().map(|&mh| mh / dm).collect();
                return Ok(multinomial(s * (n - 1) / dm, &nonzero(&parts)));
            }
            // All multiplicities even from here on.
            let mu1 = st.mu_of(1);
            let mu_hat_ge2 = st.mu_hat_ge2();
            let sum_ge2: u64 = mu_hat_ge2.iter().sum();
            match d {
                1 | 2 => {
                    let a = multinomial(s * (n - 1), &nonzero(&mu_hat_ge2));
                    let a = if a.is_zero() {
                        BigInt::zero()
                    } else {
                        a * binomial(s * (n - 1) + 1 - sum_ge2, st.mu_hat_of(1))
                    };
                    let b = multinomial(s * (n - 1), &nonzero(&st.mu_hat));
                    if d == 1 || n % 2 == 0 {
                        Ok(a + b)
                    } else {
                        Ok(a - b)
                    }
                }
                _ => {
                    if st.mu.iter().skip(1).any(|&mu| mu % dp != 0) {
                        return Ok(BigInt::zero());
                    }
                    if mu1 % dp == 0 {
                        if (2 * n / d) % 2 == 1 {
                            return Ok(BigInt::zero());
                        }
                        let parts: Vec<u64> = st.mu.iter().map(|&mu| mu / dp).collect();
                        Ok(BigInt::from(2) * multinomial(2 * s * (n - 1) / dp, &nonzero(&parts)))
                    } else if mu1 % dp == 2 {
                        let mut parts: Vec<u64> = vec![(mu1 - 2) / dp];
                        parts.extend(st.mu.iter().skip(1).map(|&mu| mu / dp));
                        Ok(multinomial(2 * s * (n - 1) / dp, &nonzero(&parts)))
                    } else {
                        Ok(BigInt::zero())
                    }
                }
            }
        }
        other => Err(Error::UnsupportedType(format!(
            "{other:?} has no classical closed form"
        ))),
    }
}

/// Evaluate both ways at `m = sh+1` and assert agreement for
/// principal-in-a-Levi orbits.  [`Error::Mismatch`] would falsify the
/// root-of-unity propositions and must never fire.
pub fn cross_check(
    family: Family,
    n: u64,
    lambda: &Partition,
    s: u64,
    d: u64,
) -> Result<SieveEval> {
    let w = degrees_of(family, n)?;
    let m = s * w.coxeter_number + 1;
    let kr = krew(&w, lambda, m)?;
    let exact = eval_exact(&kr, d)?;
    let closed = eval_closed_form(&w, lambda, s, d)?;
    let agrees = exact.equals_integer(&closed);
    if !agrees {
        return Err(Error::Mismatch(format!(
            "Krew({w}, {lambda}, {m}) at omega_{d}: exact {:?} vs closed form {closed}",
            exact
        )));
    }
    Ok(SieveEval {
        weyl: w,
        lambda: lambda.clone(),
        m,
        d,
        exact_value: exact,
        closed_form: Some(closed),
        agrees,
    })
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}
