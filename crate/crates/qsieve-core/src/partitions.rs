//! Integer partitions, the parity-constrained families indexing nilpotent
//! orbits of the classical Lie algebras, and the statistics consumed by the
//! formula engine.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::weyl::Family;

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::BadPartition(format!(
                    "parts not weakly decreasing: {parts:?}"
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::BadPartition("zero part".into()));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    /// Build from an unsorted multiset of parts, dropping zeros.
    pub fn from_unsorted(mut parts: Vec<u64>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> u64 {
        self.parts.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of the part `j`.
    pub fn multiplicity(&self, j: u64) -> u64 {
        self.parts.iter().filter(|&&p| p == j).count() as u64
    }

    /// Multiplicities indexed by part size `1..=largest`; empty when the
    /// partition is empty.
    pub fn multiplicities(&self) -> Vec<u64> {
        match self.parts.first() {
            None => vec![],
            Some(&max) => {
                let mut mu = vec![0u64; max as usize];
                for &p in &self.parts {
                    mu[p as usize - 1] += 1;
                }
                mu
            }
        }
    }

    pub fn conjugate(&self) -> Partition {
        match self.parts.first() {
            None => Partition::empty(),
            Some(&max) => {
                let parts = (1..=max)
                    .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u64)
                    .collect();
                Partition { parts }
            }
        }
    }

    /// Membership in the family's parity-constrained index set
    /// (A: unrestricted; B/D: even multiplicity for even parts;
    /// C: even multiplicity for odd parts).
    pub fn is_valid_for(&self, family: Family) -> bool {
        let mu = self.multiplicities();
        match family {
            Family::A => true,
            Family::B | Family::D => mu
                .iter()
                .enumerate()
                .all(|(i, &m)| (i + 1) % 2 != 0 || m % 2 == 0),
            Family::C => mu
                .iter()
                .enumerate()
                .all(|(i, &m)| (i + 1) % 2 != 1 || m % 2 == 0),
            _ => false,
        }
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats::new(self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the CLI text format `[3,1,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::BadPartition(format!("expected [a,b,...], got {s:?}")))?;
        let mut parts = Vec::new();
        if !inner.trim().is_empty() {
            for tok in inner.split(',') {
                let v: u64 = tok
                    .trim()
                    .parse()
                    .map_err(|_| Error::BadPartition(format!("bad part {tok:?} in {s:?}")))?;
                parts.push(v);
            }
        }
        Partition::new(parts)
    }
}

/// Exact quarter-integer, the denominator all fractional partition statistics
/// share.  Only the formula engine consumes these; it asserts integrality of
/// the final exponents.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Quarters(pub i64);

impl Quarters {
    pub fn from_integer(n: i64) -> Self {
        Quarters(4 * n)
    }

    pub fn from_halves(h: i64) -> Self {
        Quarters(2 * h)
    }

    pub fn as_integer(self) -> Option<i64> {
        (self.0 % 4 == 0).then_some(self.0 / 4)
    }
}

impl std::ops::Add for Quarters {
    type Output = Quarters;
    fn add(self, rhs: Quarters) -> Quarters {
        Quarters(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Quarters {
    type Output = Quarters;
    fn sub(self, rhs: Quarters) -> Quarters {
        Quarters(self.0 - rhs.0)
    }
}

/// All statistics of a partition used by the Kreweras formulas.
#[derive(Clone, Debug)]
pub struct PartitionStats {
    /// Multiplicities `mu_j` indexed by part size, slot 0 = part 1.
    pub mu: Vec<u64>,
    pub conjugate: Partition,
    /// `c = sum_j conj_j * conj_{j+1}`.
    pub c: u64,
    pub ell: u64,
    /// Number of part sizes with odd multiplicity.
    pub big_l: u64,
    /// Half-sum of even multiplicities over odd part sizes (epsilon = 1).
    pub tau1: Quarters,
    /// Half-sum of even multiplicities over even part sizes (epsilon = 0).
    pub tau0: Quarters,
    pub ell_hat: u64,
    pub big_l_hat: u64,
    /// `floor(mu_j / 2)` per part size.
    pub mu_hat: Vec<u64>,
    /// `1/4 - ell/2` for odd length, `0` for even length.
    pub delta: Quarters,
}

impl PartitionStats {
    fn new(lambda: &Partition) -> Self {
        let mu = lambda.multiplicities();
        let conjugate = lambda.conjugate();
        let conj = conjugate.parts();
        let c = (0..conj.len())
            .map(|j| conj[j] * conj.get(j + 1).copied().unwrap_or(0))
            .sum();
        let ell = lambda.len();
        let big_l = mu.iter().filter(|&&m| m % 2 == 1).count() as u64;
        let half_sum = |parity: u64| -> i64 {
            mu.iter()
                .enumerate()
                .filter(|(i, &m)| (i + 1) as u64 % 2 == parity && m % 2 == 0)
                .map(|(_, &m)| m as i64 / 2)
                .sum()
        };
        let tau1 = Quarters::from_integer(half_sum(1));
        let tau0 = Quarters::from_integer(half_sum(0));
        let delta = if ell % 2 == 1 {
            Quarters(1) - Quarters::from_halves(ell as i64)
        } else {
            Quarters(0)
        };
        PartitionStats {
            mu_hat: mu.iter().map(|&m| m / 2).collect(),
            mu,
            conjugate,
            c,
            ell,
            big_l,
            tau1,
            tau0,
            ell_hat: ell / 2,
            big_l_hat: big_l / 2,
            delta,
        }
    }

    pub fn mu_of(&self, j: u64) -> u64 {
        self.mu.get(j as usize - 1).copied().unwrap_or(0)
    }

    pub fn mu_hat_of(&self, j: u64) -> u64 {
        self.mu_hat.get(j as usize - 1).copied().unwrap_or(0)
    }

    /// Multiplicity vector restricted to part sizes `>= 2`, halved.
    pub fn mu_hat_ge2(&self) -> Vec<u64> {
        self.mu_hat.iter().skip(1).copied().collect()
    }
}

/// All partitions of `n` in the family's index set, in lexicographically
/// decreasing order.  For family B the argument is the odd number `2n+1`;
/// for C and D it is the even number `2n`.
pub fn enumerate(n: u64, family: Family) -> Result<Vec<Partition>> {
    match family {
        Family::A => {}
        Family::B => {
            if n % 2 == 0 {
                return Err(Error::BadParity(format!(
                    "family B partitions an odd total, got {n}"
                )));
            }
        }
        Family::C | Family::D => {
            if n % 2 == 1 {
                return Err(Error::BadParity(format!(
                    "family {family:?} partitions an even total, got {n}"
                )));
            }
        }
        _ => {
            return Err(Error::UnsupportedType(format!(
                "{family:?} has no partition family"
            )))
        }
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    descend(n, n, &mut stack, &mut out, family);
    Ok(out)
}

fn descend(
    remaining: u64,
    max_part: u64,
    stack: &mut Vec<u64>,
    out: &mut Vec<Partition>,
    family: Family,
) {
    if remaining == 0 {
        let p = Partition {
            parts: stack.clone(),
        };
        if p.is_valid_for(family) {
            out.push(p);
        }
        return;
    }
    let mut part = remaining.min(max_part);
    while part >= 1 {
        stack.push(part);
        descend(remaining - part, part, stack, out, family);
        stack.pop();
        part -= 1;
    }
}

/// Whether the orbit indexed by `lambda` contains a principal nilpotent of a
/// Levi subalgebra: always in type A; `floor(L/2) = 0` in types B and C; in
/// type D either `floor(L/2) = 0`, or `floor(L/2) = 1` with `mu_1` odd.
pub fn is_principal_in_levi(lambda: &Partition, family: Family) -> bool {
    let s = lambda.stats();
    match family {
        Family::A => true,
        Family::B | Family::C => s.big_l_hat == 0,
        Family::D => s.big_l_hat == 0 || (s.big_l_hat == 1 && s.mu_of(1) % 2 == 1),
        _ => false,
    }
}

/// Classical partition count via the pentagonal-number recurrence; the
/// independent oracle for `enumerate(n, A)`.
pub fn partition_count(n: u64) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    let n = n as usize;
    let mut p = vec![BigInt::from(0); n + 1];
    p[0] = BigInt::from(1);
    for m in 1..=n {
        let mut total = BigInt::from(0);
        let mut k: i64 = 1;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 as usize > m && g2 as usize > m {
                break;
            }
            let sign = if k % 2 == 0 { -1 } else { 1 };
            if g1 as usize <= m {
                total += sign * &p[m - g1 as usize];
            }
            if g2 as usize <= m {
                total += sign * &p[m - g2 as usize];
            }
            k += 1;
        }
        p[m] = total;
    }
    p[n].clone()
}


#[cfg(test)]
mod congruence_tests {
    use super::*;

    // The c(lambda) congruences behind the root-of-unity evaluations, in the
    // exact scaled form c - 2X = 0 mod 2d, tested exhaustively for all
    // partitions of total <= 14 and all d <= 12.
    #[test]
    fn c_congruences_type_a() {
        for n in 1..=14u64 {
            for lambda in enumerate(n, Family::A).unwrap() {
                let s = lambda.stats();
                for d in 1..=12u64 {
                    let bad: Vec<(usize, u64)> =
                        s.mu.iter()
                            .enumerate()
                            .filter(|(_, &m)| m % d != 0)
                            .map(|(i, &m)| (i, m % d))
                            .collect();
                    if bad.is_empty() {
                        assert_eq!(s.c % d, 0, "{lambda} d={d}");
                    } else if bad.len() == 1 && bad[0].1 == 1 {
                        let j0 = bad[0].0 as u64 + 1;
                        assert_eq!(s.c % d, (j0 - 1) % d, "{lambda} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn c_congruences_types_bcd() {
        for family in [Family::B, Family::C, Family::D] {
            let totals: Vec<u64> = match family {
                Family::B => (1..=13).step_by(2).collect(),
                _ => (2..=14).step_by(2).collect(),
            };
            for &n in &totals {
                for lambda in enumerate(n, family).unwrap() {
                    if !is_principal_in_levi(&lambda, family) {
                        continue;
                    }
                    let s = lambda.stats();
                    let odd: Vec<u64> =
                        s.mu.iter()
                            .enumerate()
                            .filter(|(_, &m)| m % 2 == 1)
                            .map(|(i, _)| i as u64 + 1)
                            .collect();
                    for d in 1..=12u64 {
                        let hats_ok = s.mu_hat.iter().all(|&mh| (2 * mh) % d == 0);
                        if !hats_ok {
                            continue;
                        }
                        match (family, odd.as_slice()) {
                            // All multiplicities even: c/2 = 0 mod d.
                            (_, []) => {
                                assert_eq!(s.c % (2 * d), 0, "{family:?} {lambda} d={d}");
                            }
                            // B/C with a single odd multiplicity at j0:
                            // c/2 = (j0-1)/2 + ell_hat - mu_hat_{j0} mod d.
                            (Family::B | Family::C, [j0]) => {
                                let lhs = s.c as i64 - (*j0 as i64 - 1) - 2 * s.ell_hat as i64
                                    + 2 * s.mu_hat_of(*j0) as i64;
                                assert_eq!(
                                    lhs.rem_euclid(2 * d as i64),
                                    0,
                                    "{family:?} {lambda} d={d}"
                                );
                            }
                            // D with odd multiplicities at 1 and j0 >= 3:
                            // c/2 = j0/2 + mu_hat_1 + mu_hat_{j0} mod d.
                            (Family::D, [one, j0]) if *one == 1 => {
                                let lhs = s.c as i64
                                    - *j0 as i64
                                    - 2 * s.mu_hat_of(1) as i64
                                    - 2 * s.mu_hat_of(*j0) as i64;
                                assert_eq!(
                                    lhs.rem_euclid(2 * d as i64),
                                    0,
                                    "{family:?} {lambda} d={d}"
                                );
                            }
                            other => panic!("unexpected principal shape {other:?}"),
                        }
                    }
                }
            }
        }
    }

    // d^u = C(l,2) + c also equals sum conj_i^2 - sum C(mu_j + 1, 2).
    #[test]
    fn unipotent_dimension_identity() {
        for n in 1..=14u64 {
            for lambda in enumerate(n, Family::A).unwrap() {
                let s = lambda.stats();
                let lhs: u64 = s.ell * (s.ell - 1) / 2 + s.c;
                let sq: u64 = s.conjugate.parts().iter().map(|&c| c * c).sum();
                let tri: u64 = s.mu.iter().map(|&m| m * (m + 1) / 2).sum();
                assert_eq!(lhs, sq - tri, "{lambda}");
            }
        }
    }
}
