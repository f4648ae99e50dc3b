//! Exact sparse integer-coefficient polynomial arithmetic in one variable `q`,
//! with q-analog constructors and cyclotomic reduction.
//!
//! [`QPoly`] is the universal value type for every formula in this crate:
//! q-integers `[n]_q`, q-factorials, q-multinomials, Catalan/Kreweras/Narayana
//! polynomials.  Root-of-unity values are represented exactly as residues
//! modulo a cyclotomic polynomial ([`CycloElt`]); floating point is never used
//! to decide equality.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sparse integer polynomial in `q`.  Zero is the empty term map; no stored
/// coefficient is zero, so structural equality is canonical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    terms: BTreeMap<u64, BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        QPoly { terms }
    }

    /// The monomial `c * q^e`.
    pub fn monomial<T: Into<BigInt>>(c: T, e: u64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        QPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (u64, BigInt)>>(iter: I) -> Self {
        let mut p = QPoly::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    /// Largest exponent, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest exponent with nonzero coefficient.
    pub fn trailing_degree(&self) -> Option<u64> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, e: u64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Term iterator in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: u64) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute `q -> q^2` (every exponent doubles, coefficients unchanged).
    pub fn substitute_q_squared(&self) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(e, c)| (2 * e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        // Horner over the sparse terms, highest exponent first.
        let mut acc = BigInt::zero();
        let mut last_e: Option<u64> = None;
        for (e, c) in self.terms.iter().rev() {
            if let Some(prev) = last_e {
                for _ in 0..(prev - e) {
                    acc *= x;
                }
            }
            acc += c;
            last_e = Some(*e);
        }
        if let Some(e) = last_e {
            for _ in 0..e {
                acc *= x;
            }
        }
        acc
    }

    /// Value at `q = 1`, i.e. the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// A polynomial with nonnegative coefficients is palindromic when its
    /// coefficient sequence reads the same from both ends.
    pub fn is_palindromic(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let lo = self.trailing_degree().unwrap();
        let hi = self.degree().unwrap();
        self.terms
            .iter()
            .all(|(e, c)| *c == self.coeff(hi - (e - lo)))
    }

    /// Quotient and remainder of `self / den`, requiring every elimination
    /// step to divide exactly over the integers.
    fn div_rem(&self, den: &QPoly) -> Result<(QPoly, QPoly)> {
        if den.is_zero() {
            return Err(Error::DivisionNotExact(
                "division by zero polynomial".into(),
            ));
        }
        let dd = den.degree().unwrap();
        let dlc = den.coeff(dd);
        let mut rem = self.clone();
        let mut quot = QPoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let rlc = rem.coeff(rd);
            let (f, r) = num_integer::Integer::div_rem(&rlc, &dlc);
            if !r.is_zero() {
                return Err(Error::DivisionNotExact(format!(
                    "leading coefficient {rlc} not divisible by {dlc}"
                )));
            }
            let shift = rd - dd;
            quot.add_term(shift, f.clone());
            for (e, c) in den.terms.iter() {
                rem.add_term(e + shift, -(c * &f));
            }
        }
        Ok((quot, rem))
    }

    fn fmt_term(c: &BigInt, e: u64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let abs = c.abs();
        if e == 0 {
            write!(f, "{abs}")
        } else {
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            if e == 1 {
                write!(f, "q")
            } else {
                write!(f, "q^{e}")
            }
        }
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            QPoly::fmt_term(c, *e, f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in rhs.terms.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)`; `q_int(0)` is the zero polynomial.
pub fn q_int(n: u64) -> QPoly {
    QPoly::from_terms((0..n).map(|e| (e, BigInt::one())))
}

/// `[n]!_q = [n]_q [n-1]_q ... [1]_q`; empty product for `n = 0`.
pub fn q_factorial(n: u64) -> QPoly {
    let mut acc = QPoly::one();
    for k in 1..=n {
        acc = &acc * &q_int(k);
    }
    acc
}

/// q-multinomial `[n]!_q / ([nu_1]!_q ... [nu_t]!_q [n - |nu|]!_q)`,
/// zero whenever `|nu| > n`.
pub fn q_multinomial(n: u64, nu: &[u64]) -> QPoly {
    let total: u64 = nu.iter().sum();
    if total > n {
        return QPoly::zero();
    }
    let mut den = q_factorial(n - total);
    for &v in nu {
        den = &den * &q_factorial(v);
    }
    exact_div(&q_factorial(n), &den).expect("q-multinomial division is always exact")
}

/// q-multinomial in the variable `q^2`.
pub fn q_multinomial_q2(n: u64, nu: &[u64]) -> QPoly {
    q_multinomial(n, nu).substitute_q_squared()
}

/// Exact quotient `num / den`; [`Error::DivisionNotExact`] when the remainder
/// is nonzero.
pub fn exact_div(num: &QPoly, den: &QPoly) -> Result<QPoly> {
    let (q, r) = num.div_rem(den)?;
    if !r.is_zero() {
        return Err(Error::DivisionNotExact(format!(
            "remainder {r} dividing {num} by {den}"
        )));
    }
    Ok(q)
}

pub fn euler_phi(d: u64) -> u64 {
    let mut n = d;
    let mut result = d;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

static CYCLOTOMIC_MEMO: LazyLock<Mutex<HashMap<u64, QPoly>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The d-th cyclotomic polynomial, computed by dividing `q^d - 1` by the
/// product of `cyclotomic(e)` over proper divisors `e` of `d`.  Memoized.
pub fn cyclotomic(d: u64) -> QPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    if let Some(p) = CYCLOTOMIC_MEMO.lock().unwrap().get(&d) {
        return p.clone();
    }
    let result = if d == 1 {
        QPoly::from_terms([(1, BigInt::one()), (0, -BigInt::one())])
    } else {
        let mut den = QPoly::one();
        for e in 1..d {
            if d % e == 0 {
                den = &den * &cyclotomic(e);
            }
        }
        let num = QPoly::from_terms([(d, BigInt::one()), (0, -BigInt::one())]);
        exact_div(&num, &den).expect("cyclotomic division is exact")
    };
    CYCLOTOMIC_MEMO.lock().unwrap().insert(d, result.clone());
    result
}

/// Residue of a [`QPoly`] modulo the d-th cyclotomic polynomial: the exact
/// value of the polynomial at a primitive d-th root of unity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloElt {
    d: u64,
    residue: Vec<BigInt>,
}

impl CycloElt {
    pub fn order(&self) -> u64 {
        self.d
    }

    /// Coefficient vector of length `phi(d)` (trailing zeros allowed).
    pub fn residue(&self) -> &[BigInt] {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.iter().all(|c| c.is_zero())
    }

    /// Embedding of an ordinary integer (constant vector).
    pub fn from_integer(d: u64, n: &BigInt) -> CycloElt {
        let mut residue = vec![BigInt::zero(); euler_phi(d) as usize];
        residue[0] = n.clone();
        CycloElt { d, residue }
    }

    /// Whether this element is the embedding of the given integer.
    pub fn equals_integer(&self, n: &BigInt) -> bool {
        *self == CycloElt::from_integer(self.d, n)
    }

    /// When the residue is a constant vector `(c, 0, ..., 0)`, return `c`.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.residue.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.residue[0].clone())
        } else {
            None
        }
    }

    /// Double-precision complex modulus, for human-readable reports only;
    /// equality decisions always go through the exact residue.
    pub fn complex_modulus(&self) -> f64 {
        let theta = 2.0 * std::f64::consts::PI / self.d as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.residue.iter().enumerate() {
            let cf = bigint_to_f64(c);
            re += cf * (theta * k as f64).cos();
            im += cf * (theta * k as f64).sin();
        }
        (re * re + im * im).sqrt()
    }
}

fn bigint_to_f64(c: &BigInt) -> f64 {
    c.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

/// Remainder of `p` modulo the d-th cyclotomic polynomial, padded to the
/// full `phi(d)` coefficient slots.  `p` vanishes at a primitive d-th root
/// of unity iff the result is the zero vector.
pub fn reduce_mod_cyclo(p: &QPoly, d: u64) -> CycloElt {
    let phi = cyclotomic(d);
    let (_, rem) = p.div_rem(&phi).expect("cyclotomic polynomials are monic");
    let slots = euler_phi(d) as usize;
    let mut residue = vec![BigInt::zero(); slots];
    for (e, c) in rem.terms() {
        residue[e as usize] = c.clone();
    }
    CycloElt { d, residue }
}

/// Laurent-style intermediate: the value `q^shift * poly` with `shift`
/// possibly negative.  Formula assembly works here so that factors like
/// `[m-5]_q` at small `m` stay exact; converting back to a [`QPoly`]
/// asserts that every negative power has cancelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ShiftedPoly {
    pub shift: i64,
    pub poly: QPoly,
}

impl ShiftedPoly {
    pub fn zero() -> Self {
        ShiftedPoly {
            shift: 0,
            poly: QPoly::zero(),
        }
    }

    pub fn from_poly(poly: QPoly) -> Self {
        ShiftedPoly { shift: 0, poly }
    }

    pub fn monomial<T: Into<BigInt>>(c: T, shift: i64) -> Self {
        ShiftedPoly {
            shift,
            poly: QPoly::constant(c),
        }
    }

    /// `[n]_q` for any integer `n`, via `[-k]_q = -q^(-k) [k]_q`.
    pub fn q_int_signed(n: i64) -> Self {
        if n >= 0 {
            ShiftedPoly::from_poly(q_int(n as u64))
        } else {
            ShiftedPoly {
                shift: n,
                poly: -&q_int((-n) as u64),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn mul(&self, rhs: &ShiftedPoly) -> ShiftedPoly {
        ShiftedPoly {
            shift: self.shift + rhs.shift,
            poly: &self.poly * &rhs.poly,
        }
    }

    pub fn add(&self, rhs: &ShiftedPoly) -> ShiftedPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let shift = self.shift.min(rhs.shift);
        let a = self.poly.shift_up((self.shift - shift) as u64);
        let b = rhs.poly.shift_up((rhs.shift - shift) as u64);
        ShiftedPoly {
            shift,
            poly: &a + &b,
        }
    }

    pub fn neg(&self) -> ShiftedPoly {
        ShiftedPoly {
            shift: self.shift,
            poly: -&self.poly,
        }
    }

    pub fn sub(&self, rhs: &ShiftedPoly) -> ShiftedPoly {
        self.add(&rhs.neg())
    }

    pub fn pow(&self, k: u32) -> ShiftedPoly {
        ShiftedPoly {
            shift: self.shift * k as i64,
            poly: self.poly.pow(k),
        }
    }

    pub fn exact_div(&self, den: &ShiftedPoly) -> Result<ShiftedPoly> {
        Ok(ShiftedPoly {
            shift: self.shift - den.shift,
            poly: exact_div(&self.poly, &den.poly)?,
        })
    }

    /// Collapse to an ordinary polynomial; fails if a nonzero term would sit
    /// at a negative exponent.
    pub fn into_qpoly(self) -> Result<QPoly> {
        if self.poly.is_zero() {
            return Ok(QPoly::zero());
        }
        let trailing = self.poly.trailing_degree().unwrap() as i64;
        if self.shift + trailing < 0 {
            return Err(Error::NonIntegerExponent(format!(
                "value q^{} * ({}) is not a polynomial",
                self.shift, self.poly
            )));
        }
        Ok(if self.shift >= 0 {
            self.poly.shift_up(self.shift as u64)
        } else {
            let mut out = QPoly::zero();
            for (e, c) in self.poly.terms() {
                out.add_term((e as i64 + self.shift) as u64, c.clone());
            }
            out
        })
    }
}
