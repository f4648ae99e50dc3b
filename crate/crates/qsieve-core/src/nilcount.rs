//! Finite-field brute-force oracle: censuses of nilpotent matrices by rank in
//! `gl_n`, `so_{2n+1}` and `sp_{2n}` over small prime fields, checked against
//! the closed-form counting formulas that drive the q-Narayana identities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::qpoly::{q_factorial, q_multinomial, q_multinomial_q2};
use crate::weyl::Family;

/// Dense matrix over the prime field `F_q`, entries reduced mod `q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixFq {
    pub n: usize,
    pub q: u64,
    entries: Vec<u64>,
}

impl MatrixFq {
    pub fn zero(n: usize, q: u64) -> MatrixFq {
        MatrixFq {
            n,
            q,
            entries: vec![0; n * n],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.n + j] = v % self.q;
    }

    pub fn mul(&self, rhs: &MatrixFq) -> MatrixFq {
        let n = self.n;
        let mut out = MatrixFq::zero(n, self.q);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = (out.get(i, j) + a * rhs.get(k, j)) % self.q;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// `M^n = 0` decides nilpotency for an n x n matrix.
    pub fn is_nilpotent(&self) -> bool {
        let mut p = self.clone();
        // Repeated squaring up to exponent >= n.
        let mut e = 1;
        while e < self.n {
            p = p.mul(&p);
            e *= 2;
        }
        p.is_zero()
    }

    /// Rank by Gaussian elimination (q prime).
    pub fn rank(&self) -> usize {
        let n = self.n;
        let q = self.q;
        let mut m = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let pivot = (rank..n).find(|&r| m[r * n + col] != 0);
            let Some(p) = pivot else { continue };
            for j in 0..n {
                m.swap(p * n + j, rank * n + j);
            }
            let inv = mod_inverse(m[rank * n + col], q);
            for j in 0..n {
                m[rank * n + j] = m[rank * n + j] * inv % q;
            }
            for r in 0..n {
                if r != rank && m[r * n + col] != 0 {
                    let f = m[r * n + col];
                    for j in 0..n {
                        let v = (m[r * n + j] + (q - f) * m[rank * n + j]) % q;
                        m[r * n + j] = v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn commutes_with(&self, rhs: &MatrixFq) -> bool {
        self.mul(rhs) == rhs.mul(self)
    }
}

fn mod_inverse(a: u64, q: u64) -> u64 {
    // q is a small prime; Fermat.
    let mut result = 1u64;
    let mut base = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    result
}

/// Odometer over all assignments of `dim` entries in `F_q`.
struct Odometer {
    digits: Vec<u64>,
    q: u64,
    done: bool,
}

impl Odometer {
    fn new(dim: usize, q: u64) -> Odometer {
        Odometer {
            digits: vec![0; dim],
            q,
            done: false,
        }
    }

    fn next(&mut self) -> Option<&[u64]> {
        if self.done {
            return None;
        }
        let out = &mut self.digits;
        Some(out.as_slice())
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < self.q {
                return;
            }
            *d = 0;
        }
        self.done = true;
    }
}

fn check_space(count: u128) -> Result<()> {
    if count > 10_000_000 {
        return Err(Error::TooLarge(format!(
            "{count} matrices exceed the brute-force budget"
        )));
    }
    Ok(())
}

/// Brute-force census of nilpotent `n x n` matrices over `F_q` by rank,
/// asserted against the closed form
/// `q^C(n-k-1,2) (q-1)^{n-k-1} [n]!_q / [k+1]!_q * [n-1 choose k]_q`
/// for rank `n-k-1`.
pub fn count_nilpotent_by_rank_a(n: usize, q: u64) -> Result<BTreeMap<usize, BigInt>> {
    check_space((q as u128).pow((n * n) as u32))?;
    let mut census: BTreeMap<usize, BigInt> = BTreeMap::new();
    let mut odo = Odometer::new(n * n, q);
    while let Some(digits) = odo.next() {
        let m = MatrixFq {
            n,
            q,
            entries: digits.to_vec(),
        };
        if m.is_nilpotent() {
            *census.entry(m.rank()).or_insert_with(BigInt::zero) += 1;
        }
        odo.advance();
    }
    // Checksum: total nilpotent count is q^(n^2 - n).
    let total: BigInt = census.values().sum();
    let expect = BigInt::from(q).pow((n * n - n) as u32);
    if total != expect {
        return Err(Error::FormulaMismatch(format!(
            "nilpotent total {total} != q^(n^2-n) = {expect}"
        )));
    }
    for k in 0..n {
        let rank = n - k - 1;
        let closed = closed_form_nilpotent_rank_a(n as u64, k as u64, q);
        let got = census.get(&rank).cloned().unwrap_or_else(BigInt::zero);
        if got != closed {
            return Err(Error::FormulaMismatch(format!(
                "gl_{n}(F_{q}) rank {rank}: census {got} != closed form {closed}"
            )));
        }
    }
    Ok(census)
}

/// The closed form for the number of rank `n-k-1` nilpotent matrices,
/// evaluated at the integer `q`.
pub fn closed_form_nilpotent_rank_a(n: u64, k: u64, q: u64) -> BigInt {
    let qq = BigInt::from(q);
    let rank = n - k - 1;
    let mut v = qq.pow((rank * rank.saturating_sub(1) / 2) as u32);
    v *= (qq.clone() - 1u32).pow(rank as u32);
    let fact = |t: u64| q_factorial(t).eval(&qq);
    v *= fact(n);
    let den = fact(k + 1);
    let (quot, rem) = num_integer::Integer::div_rem(&v, &den);
    assert!(rem.is_zero());
    quot * q_multinomial(n - 1, &[k]).eval(&qq)
}

/// `eta(N) = prod_{i=1}^{floor(N/2)} (q^{2i} - 1)` at the integer `q`.
fn eta(big_n: u64, q: u64) -> BigInt {
    let qq = BigInt::from(q);
    let mut v = BigInt::one();
    for i in 1..=(big_n / 2) {
        v *= qq.pow(2 * i as u32) - 1u32;
    }
    v
}

/// Basis of the Lie algebra `{X : X^T J + J X = 0}` for the family's
/// bilinear form `J` on `F_q^N`, by nullspace of the defining linear system.
fn lie_algebra_basis(family: Family, n: u64, q: u64) -> (usize, Vec<MatrixFq>) {
    let big_n = match family {
        Family::B => (2 * n + 1) as usize,
        Family::C => (2 * n) as usize,
        _ => panic!("families B and C only"),
    };
    // Antidiagonal form; symplectic with signs in type C.
    let mut j = MatrixFq::zero(big_n, q);
    for i in 0..big_n {
        let v = if family == Family::C && i >= big_n / 2 {
            q - 1
        } else {
            1
        };
        j.set(i, big_n - 1 - i, v);
    }
    // Constraint rows over the N^2 entry variables: (X^T J + J X)_{ab} = 0.
    let vars = big_n * big_n;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for a in 0..big_n {
        for b in 0..big_n {
            let mut row = vec![0u64; vars];
            for k in 0..big_n {
                // (X^T J)_{ab} = sum_k X_{ka} J_{kb}
                row[k * big_n + a] = (row[k * big_n + a] + j.get(k, b)) % q;
                // (J X)_{ab} = sum_k J_{ak} X_{kb}
                row[k * big_n + b] = (row[k * big_n + b] + j.get(a, k)) % q;
            }
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        }
    }
    // Row reduce to find pivot variables; the free variables parametrize it.
    let mut pivots: Vec<usize> = Vec::new();
    let mut reduced: Vec<Vec<u64>> = Vec::new();
    for mut row in rows {
        for (r, &p) in reduced.iter().zip(&pivots) {
            if row[p] != 0 {
                let f = row[p];
                for (x, &y) in row.iter_mut().zip(r.iter()) {
                    *x = (*x + (q - f) * y) % q;
                }
            }
        }
        if let Some(p) = row.iter().position(|&x| x != 0) {
            let inv = mod_inverse(row[p], q);
            for x in row.iter_mut() {
                *x = *x * inv % q;
            }
            // Back-substitute into earlier rows.
            for (r, _) in reduced.iter_mut().zip(&pivots) {
                if r[p] != 0 {
                    let f = r[p];
                    for (x, &y) in r.iter_mut().zip(row.iter()) {
                        *x = (*x + (q - f) * y) % q;
                    }
                }
            }
            reduced.push(row);
            pivots.push(p);
        }
    }
    let free: Vec<usize> = (0..vars).filter(|v| !pivots.contains(v)).collect();
    let mut basis = Vec::new();
    for &fv in &free {
        let mut m = MatrixFq::zero(big_n, q);
        m.entries[fv] = 1;
        for (r, &p) in reduced.iter().zip(&pivots) {
            if r[fv] != 0 {
                m.entries[p] = (q - r[fv]) % q;
            }
        }
        basis.push(m);
    }
    (big_n, basis)
}

/// Brute-force census by rank of the nilpotent elements of `so_{2n+1}`
/// (family B) or `sp_{2n}` (family C) over `F_q`, `q` an odd prime.
pub fn count_nilpotent_by_rank_bc(
    n: u64,
    q: u64,
    family: Family,
) -> Result<BTreeMap<usize, BigInt>> {
    if q % 2 == 0 {
        return Err(Error::BadRank("odd characteristic required".into()));
    }
    if !matches!(family, Family::B | Family::C) {
        return Err(Error::UnsupportedType(format!("{family:?}")));
    }
    let (big_n, basis) = lie_algebra_basis(family, n, q);
    check_space((q as u128).pow(basis.len() as u32))?;
    let mut census: BTreeMap<usize, BigInt> = BTreeMap::new();
    let mut odo = Odometer::new(basis.len(), q);
    while let Some(coords) = odo.next() {
        let mut m = MatrixFq::zero(big_n, q);
        for (c, b) in coords.iter().zip(&basis) {
            if *c == 0 {
                continue;
            }
            for (dst, src) in m.entries.iter_mut().zip(&b.entries) {
                *dst = (*dst + c * src) % q;
            }
        }
        if m.is_nilpotent() {
            *census.entry(m.rank()).or_insert_with(BigInt::zero) += 1;
        }
        odo.advance();
    }
    Ok(census)
}

/// Closed form `q^{s^2-s} eta(2n)/eta(2n-2s) [n choose s]_{q^2}` for the
/// number of type B nilpotents of rank `2s` (equal to the type C count of
/// rank `2s` or `2s-1`).
pub fn closed_form_nilpotent_rank_bc(n: u64, s: u64, q: u64) -> BigInt {
    let qq = BigInt::from(q);
    let num = eta(2 * n, q);
    let den = eta(2 * n - 2 * s, q);
    let (quot, rem) = num_integer::Integer::div_rem(&num, &den);
    assert!(rem.is_zero());
    qq.pow((s * s - s) as u32) * quot * q_multinomial_q2(n, &[s]).eval(&qq)
}

/// Check the rank-census lemma relating types B and C over `F_q`, returning
/// the pair of censuses.
pub fn verify_bc_rank_lemma(
    n: u64,
    q: u64,
) -> Result<(BTreeMap<usize, BigInt>, BTreeMap<usize, BigInt>)> {
    let b = count_nilpotent_by_rank_bc(n, q, Family::B)?;
    let c = count_nilpotent_by_rank_bc(n, q, Family::C)?;
    // Type B has no odd ranks.
    if b.keys().any(|&r| r % 2 == 1) {
        return Err(Error::FormulaMismatch(
            "type B census has an odd rank".into(),
        ));
    }
    for s in 0..=n {
        let rank = 2 * s as usize;
        let b_count = b.get(&rank).cloned().unwrap_or_else(BigInt::zero);
        let c_count = c.get(&rank).cloned().unwrap_or_else(BigInt::zero)
            + if rank > 0 {
                c.get(&(rank - 1)).cloned().unwrap_or_else(BigInt::zero)
            } else {
                BigInt::zero()
            };
        let closed = closed_form_nilpotent_rank_bc(n, s, q);
        if b_count != closed || c_count != closed {
            return Err(Error::FormulaMismatch(format!(
                "n={n} q={q} s={s}: B {b_count}, C {c_count}, closed {closed}"
            )));
        }
    }
    Ok((b, c))
}

/// `|GL_n(F_q)| = q^C(n,2) (q-1)^n [n]!_q`.
pub fn gl_order(n: u64, q: u64) -> BigInt {
    let qq = BigInt::from(q);
    qq.pow((n * (n - 1) / 2) as u32) * (qq.clone() - 1u32).pow(n as u32) * q_factorial(n).eval(&qq)
}

/// Jordan nilpotent with block sizes `lambda`.
pub fn jordan_matrix(lambda: &Partition, q: u64) -> MatrixFq {
    let n: u64 = lambda.size();
    let mut m = MatrixFq::zero(n as usize, q);
    let mut offset = 0usize;
    for &p in lambda.parts() {
        for i in 0..(p as usize - 1) {
            m.set(offset + i, offset + i + 1, 1);
        }
        offset += p as usize;
    }
    m
}

/// Closed-form centralizer order `q^{d^u} (q-1)^l prod_j [mu_j]!_q` with
/// `d^u = C(l,2) + c(lambda)`, cross-checked by brute force over `GL_n(F_q)`
/// when the matrix space fits the budget.
pub fn centralizer_order_a(lambda: &Partition, q: u64) -> Result<BigInt> {
    let n = lambda.size();
    let s = lambda.stats();
    let qq = BigInt::from(q);
    let d_u = s.ell * (s.ell - 1) / 2 + s.c;
    let mut closed = qq.pow(d_u as u32) * (qq.clone() - 1u32).pow(s.ell as u32);
    for &mu in &s.mu {
        closed *= q_factorial(mu).eval(&qq);
    }
    if (q as u128).pow((n * n) as u32) <= 10_000_000 {
        let e = jordan_matrix(lambda, q);
        let mut count = BigInt::zero();
        let mut odo = Odometer::new((n * n) as usize, q);
        while let Some(digits) = odo.next() {
            let g = MatrixFq {
                n: n as usize,
                q,
                entries: digits.to_vec(),
            };
            if g.rank() == n as usize && g.commutes_with(&e) {
                count += 1;
            }
            odo.advance();
        }
        if count != closed {
            return Err(Error::FormulaMismatch(format!(
                "centralizer of {lambda} over F_{q}: brute force {count} != closed {closed}"
            )));
        }
    }
    Ok(closed)
}

/// The type A Narayana value at the prime power `q0`, reconstructed from the
/// rank census of nilpotent matrices:
/// `q0^{m(n-k-1)+C(k+1,2)} (q0-1)^{k+1} [m-1]!/[m-k-1]! * N_rank / |GL_n|`.
pub fn narayana_from_rank_census(n: u64, k: u64, m: u64, q0: u64, census_value: &BigInt) -> BigInt {
    let qq = BigInt::from(q0);
    let mut v = qq.pow((m * (n - k - 1) + k * (k + 1) / 2) as u32);
    v *= (qq.clone() - 1u32).pow((k + 1) as u32);
    v *= q_factorial(m - 1).eval(&qq);
    let den = q_factorial(m - k - 1).eval(&qq) * gl_order(n, q0);
    v *= census_value;
    let (quot, rem) = num_integer::Integer::div_rem(&v, &den);
    assert!(
        rem.is_zero(),
        "rank-census Narayana expression must be integral"
    );
    quot
}
