//! Group-theoretic cross-validation, independent of the planar models:
//! signed permutations, reflection length by breadth-first search, the
//! noncrossing-partition lattice `NC(W)` inside absolute order, multichain
//! enumeration, and orbit-type extraction from fixed spaces.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::weyl::{Family, WeylType};

/// A signed permutation: position `i` (0-based) maps to `images[i]`, a
/// 1-based value with sign.  Type A elements carry no signs; type D elements
/// flip an even number of signs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SignedPerm {
    images: Vec<i32>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> SignedPerm {
        SignedPerm {
            images: (1..=n as i32).collect(),
        }
    }

    pub fn from_images(images: Vec<i32>) -> Result<SignedPerm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a > n || seen[a - 1] {
                return Err(Error::BadRank(format!(
                    "not a signed permutation: {images:?}"
                )));
            }
            seen[a - 1] = true;
        }
        Ok(SignedPerm { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the signed value `v` (1-based, sign carried through).
    fn apply(&self, v: i32) -> i32 {
        let img = self.images[v.unsigned_abs() as usize - 1];
        if v > 0 {
            img
        } else {
            -img
        }
    }

    /// Group law: `(self * rhs)(x) = self(rhs(x))`.
    pub fn compose(&self, rhs: &SignedPerm) -> SignedPerm {
        SignedPerm {
            images: (1..=self.len() as i32)
                .map(|i| self.apply(rhs.apply(i)))
                .collect(),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v.unsigned_abs() as usize - 1] =
                if v > 0 { i as i32 + 1 } else { -(i as i32 + 1) };
        }
        SignedPerm { images }
    }

    pub fn sign_flips(&self) -> usize {
        self.images.iter().filter(|&&v| v < 0).count()
    }

    /// Signed cycle decomposition: for each cycle of the underlying
    /// permutation, its length and whether the sign product is negative.
    pub fn signed_cycles(&self) -> Vec<(u64, bool)> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut negative = false;
            let mut cur = start;
            loop {
                seen[cur] = true;
                len += 1;
                let img = self.images[cur];
                if img < 0 {
                    negative = !negative;
                }
                cur = img.unsigned_abs() as usize - 1;
                if cur == start {
                    break;
                }
            }
            out.push((len, negative));
        }
        out
    }
}

/// All reflections: transpositions in type A; in type B also sign changes and
/// signed transpositions (`n^2` total); in type D the `n^2 - n` signed and
/// unsigned transpositions.
pub fn reflections(w: &WeylType) -> Result<Vec<SignedPerm>> {
    let n = match w.family {
        Family::A => w.n,
        Family::B | Family::C | Family::D => w.n,
        other => return Err(Error::UnsupportedType(format!("{other:?}"))),
    } as usize;
    if w.rank > 5 {
        return Err(Error::TooLarge(format!(
            "rank {} exceeds the brute-force guard 5",
            w.rank
        )));
    }
    let mut out = Vec::new();
    let transposition = |i: usize, j: usize, negate: bool| {
        let mut images: Vec<i32> = (1..=n as i32).collect();
        images[i] = if negate {
            -(j as i32 + 1)
        } else {
            j as i32 + 1
        };
        images[j] = if negate {
            -(i as i32 + 1)
        } else {
            i as i32 + 1
        };
        SignedPerm { images }
    };
    for i in 0..n {
        for j in i + 1..n {
            out.push(transposition(i, j, false));
        }
    }
    match w.family {
        Family::A => {}
        Family::B | Family::C => {
            for i in 0..n {
                let mut images: Vec<i32> = (1..=n as i32).collect();
                images[i] = -(i as i32 + 1);
                out.push(SignedPerm { images });
            }
            for i in 0..n {
                for j in i + 1..n {
                    out.push(transposition(i, j, true));
                }
            }
        }
        Family::D => {
            for i in 0..n {
                for j in i + 1..n {
                    out.push(transposition(i, j, true));
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(out)
}

/// Coxeter element: the product of the simple reflections in the standard
/// order.  All noncrossing-partition counts are independent of this choice;
/// fixing it keeps runs reproducible.
pub fn coxeter_element(w: &WeylType) -> Result<SignedPerm> {
    let n = w.n as usize;
    let adjacent = |i: usize, size: usize| {
        let mut images: Vec<i32> = (1..=size as i32).collect();
        images[i] = i as i32 + 2;
        images[i + 1] = i as i32 + 1;
        SignedPerm { images }
    };
    let simples: Vec<SignedPerm> = match w.family {
        Family::A => (0..n - 1).map(|i| adjacent(i, n)).collect(),
        Family::B | Family::C => {
            let mut v: Vec<SignedPerm> = (0..n - 1).map(|i| adjacent(i, n)).collect();
            let mut images: Vec<i32> = (1..=n as i32).collect();
            images[n - 1] = -(n as i32);
            v.push(SignedPerm { images });
            v
        }
        Family::D => {
            let mut v: Vec<SignedPerm> = (0..n - 1).map(|i| adjacent(i, n)).collect();
            let mut images: Vec<i32> = (1..=n as i32).collect();
            images[n - 2] = -(n as i32);
            images[n - 1] = -(n as i32 - 1);
            v.push(SignedPerm { images });
            v
        }
        other => return Err(Error::UnsupportedType(format!("{other:?}"))),
    };
    let mut c = SignedPerm::identity(n);
    for s in &simples {
        c = c.compose(s);
    }
    Ok(c)
}

/// Reflection-length table for the whole group, by breadth-first search over
/// the reflection generators from the identity.
pub fn reflection_length_table(w: &WeylType) -> Result<HashMap<SignedPerm, u32>> {
    let refls = reflections(w)?;
    let n = w.n as usize;
    let start = SignedPerm::identity(n);
    let mut dist: HashMap<SignedPerm, u32> = HashMap::new();
    dist.insert(start.clone(), 0);
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some(g) = queue.pop_front() {
        let d = dist[&g];
        for t in &refls {
            let next = g.compose(t);
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    Ok(dist)
}

/// The noncrossing-partition poset `NC(W)`: elements on geodesics from the
/// identity to the fixed Coxeter element in the all-reflections Cayley graph,
/// ordered by `x <= y` iff `l(x) + l(x^-1 y) = l(y)`.
pub struct NcPoset {
    pub weyl: WeylType,
    pub elements: Vec<SignedPerm>,
    pub refl_length: Vec<u32>,
    /// `leq[i][j]` iff element i is below element j.
    pub leq: Vec<Vec<bool>>,
}

pub fn nc_poset(w: &WeylType) -> Result<NcPoset> {
    let table = reflection_length_table(w)?;
    let c = coxeter_element(w)?;
    let lc = table[&c];
    let mut elements: Vec<SignedPerm> = table
        .iter()
        .filter(|(g, &d)| d + table[&g.inverse().compose(&c)] == lc)
        .map(|(g, _)| g.clone())
        .collect();
    elements.sort();
    let refl_length: Vec<u32> = elements.iter().map(|g| table[g]).collect();
    let leq: Vec<Vec<bool>> = elements
        .iter()
        .map(|x| {
            elements
                .iter()
                .map(|y| table[x] + table[&x.inverse().compose(y)] == table[y])
                .collect()
        })
        .collect();
    Ok(NcPoset {
        weyl: w.clone(),
        elements,
        refl_length,
        leq,
    })
}

/// All weakly increasing s-tuples in the poset, as index vectors.
pub fn multichains(poset: &NcPoset, s: u64) -> Result<Vec<Vec<usize>>> {
    let n = poset.elements.len() as u128;
    if n.pow(s as u32) > 10_000_000 {
        return Err(Error::TooLarge(format!("{n}^{s} multichain candidates")));
    }
    let mut chains: Vec<Vec<usize>> = (0..poset.elements.len()).map(|i| vec![i]).collect();
    for _ in 1..s {
        let mut next = Vec::new();
        for chain in &chains {
            let last = *chain.last().unwrap();
            for (j, &ok) in poset.leq[last].iter().enumerate() {
                if ok {
                    let mut c = chain.clone();
                    c.push(j);
                    next.push(c);
                }
            }
        }
        chains = next;
    }
    Ok(chains)
}

/// The partition naming the conjugacy class of the parabolic fixing the
/// element's fixed space, from the signed cycle type: positive cycle lengths
/// form `nu`; the negative cycles pool into the family's residual part.
pub fn orbit_type(w1: &SignedPerm, family: Family, n: u64) -> Partition {
    let cycles = w1.signed_cycles();
    let nu: Vec<u64> = cycles
        .iter()
        .filter(|(_, neg)| !neg)
        .map(|&(l, _)| l)
        .collect();
    let total: u64 = nu.iter().sum();
    let mut parts: Vec<u64> = nu.iter().flat_map(|&v| [v, v]).collect();
    match family {
        Family::A => Partition::from_unsorted(cycles.iter().map(|&(l, _)| l).collect()),
        Family::B | Family::C => {
            let cap = if family == Family::B {
                2 * n + 1
            } else {
                2 * n
            };
            parts.push(cap - 2 * total);
            Partition::from_unsorted(parts)
        }
        Family::D => {
            if total < n {
                parts.push(2 * (n - total) - 1);
                parts.push(1);
            }
            Partition::from_unsorted(parts)
        }
        _ => unreachable!("classical families only"),
    }
}

/// Per-orbit-type census of the multichains, keyed by `orbit_type(w1)`.
pub fn multichain_census(
    poset: &NcPoset,
    s: u64,
    family: Family,
    n: u64,
) -> Result<BTreeMap<Partition, u64>> {
    let chains = multichains(poset, s)?;
    let mut census = BTreeMap::new();
    for chain in &chains {
        let w1 = &poset.elements[chain[0]];
        *census.entry(orbit_type(w1, family, n)).or_insert(0) += 1;
    }
    Ok(census)
}
