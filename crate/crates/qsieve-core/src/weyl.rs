//! Root-system metadata: fundamental degrees, Coxeter numbers, the very-good
//! parameter predicate, and the q-Catalan polynomial
//! `Cat(W,m;q) = prod_i [m-1+d_i]_q / [d_i]_q`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::qpoly::{exact_div, q_int, QPoly};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl Family {
    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    pub fn is_exceptional(self) -> bool {
        !self.is_classical()
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "G2" => Ok(Family::G2),
            "F4" => Ok(Family::F4),
            "E6" => Ok(Family::E6),
            "E7" => Ok(Family::E7),
            "E8" => Ok(Family::E8),
            _ => Err(Error::BadRank(format!("unknown type {s:?}"))),
        }
    }
}

/// Root-system descriptor.  For the classical families `n` is the defining
/// parameter: `A` with parameter `n` means `A_{n-1}` acting on partitions of
/// `n`; `B`, `C`, `D` have rank `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylType {
    pub family: Family,
    pub n: u64,
    pub rank: u64,
    pub degrees: Vec<u64>,
    pub coxeter_number: u64,
}

impl fmt::Display for WeylType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A{}", self.rank),
            Family::B => write!(f, "B{}", self.n),
            Family::C => write!(f, "C{}", self.n),
            Family::D => write!(f, "D{}", self.n),
            other => write!(f, "{other:?}"),
        }
    }
}

/// Degrees of the fundamental invariants, validated against the closed-form
/// group order.
pub fn degrees_of(family: Family, n: u64) -> Result<WeylType> {
    let (degrees, order): (Vec<u64>, BigInt) = match family {
        Family::A => {
            if n < 2 {
                return Err(Error::BadRank(format!("type A needs n >= 2, got {n}")));
            }
            ((2..=n).collect(), factorial(n))
        }
        Family::B | Family::C => {
            if n < 1 {
                return Err(Error::BadRank("types B/C need n >= 1".into()));
            }
            (
                (1..=n).map(|i| 2 * i).collect(),
                factorial(n) * BigInt::from(2).pow(n as u32),
            )
        }
        Family::D => {
            if n < 2 {
                return Err(Error::BadRank(format!("type D needs n >= 2, got {n}")));
            }
            let mut d: Vec<u64> = (1..n).map(|i| 2 * i).collect();
            d.push(n);
            d.sort_unstable();
            (d, factorial(n) * BigInt::from(2).pow(n as u32 - 1))
        }
        Family::G2 => (vec![2, 6], BigInt::from(12)),
        Family::F4 => (vec![2, 6, 8, 12], BigInt::from(1152)),
        Family::E6 => (vec![2, 5, 6, 8, 9, 12], BigInt::from(51840)),
        Family::E7 => (vec![2, 6, 8, 10, 12, 14, 18], BigInt::from(2903040)),
        Family::E8 => (vec![2, 8, 12, 14, 18, 20, 24, 30], BigInt::from(696729600)),
    };
    let product: BigInt = degrees.iter().map(|&d| BigInt::from(d)).product();
    assert_eq!(product, order, "degree product must equal the group order");
    let rank = degrees.len() as u64;
    let coxeter_number = *degrees.iter().max().unwrap();
    Ok(WeylType {
        family,
        n,
        rank,
        degrees,
        coxeter_number,
    })
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Very good parameter: `gcd(m,h) = 1` in types A/E/F/G, `m` odd in B/C/D.
pub fn is_very_good(w: &WeylType, m: u64) -> bool {
    match w.family {
        Family::B | Family::C | Family::D => m % 2 == 1,
        _ => m.gcd(&w.coxeter_number) == 1,
    }
}

/// `Cat(W,m;q)`, assembled as one numerator product divided exactly by one
/// denominator product.
pub fn q_catalan(w: &WeylType, m: u64) -> Result<QPoly> {
    if !is_very_good(w, m) {
        return Err(Error::NotVeryGood {
            weyl: w.to_string(),
            m: m as i64,
        });
    }
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for &d in &w.degrees {
        num = &num * &q_int(m - 1 + d);
        den = &den * &q_int(d);
    }
    exact_div(&num, &den)
}
