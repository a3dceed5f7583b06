//! Ordered r-subsets of `[n]`, the two compression orders and exact binomials.
//!
//! Elements are 1-based and always listed in increasing order, so the `i`-th
//! element of a set `A` is `a_i` with `a_1 < a_2 < ... < a_r`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer used for every count.
pub type BigNat = BigUint;

/// A strictly increasing r-tuple over `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RSet {
    elems: Vec<u32>,
    n: u32,
}

impl RSet {
    pub fn new(elems: Vec<u32>, n: u32) -> Result<Self> {
        check_increasing(&elems)?;
        if elems.is_empty() {
            return Err(Error::InvalidSet {
                elems,
                reason: "an r-set needs r >= 1".into(),
            });
        }
        if let Some(&last) = elems.last() {
            if last > n {
                return Err(Error::InvalidSet {
                    elems,
                    reason: format!("largest element exceeds n = {n}"),
                });
            }
        }
        Ok(RSet { elems, n })
    }

    /// Builds without validation; callers guarantee the invariants.
    pub(crate) fn from_raw(elems: Vec<u32>, n: u32) -> Self {
        debug_assert!(check_increasing(&elems).is_ok() && !elems.is_empty());
        debug_assert!(*elems.last().unwrap() <= n);
        RSet { elems, n }
    }

    pub fn elems(&self) -> &[u32] {
        &self.elems
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> usize {
        self.elems.len()
    }

    /// 1-based accessor `a_i`.
    pub fn get(&self, i: usize) -> u32 {
        self.elems[i - 1]
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    /// Pointwise order; both sets must have the same length.
    pub fn leq(&self, other: &RSet) -> bool {
        debug_assert_eq!(self.r(), other.r());
        pointwise_leq(&self.elems, &other.elems)
    }

    pub fn into_elems(self) -> Vec<u32> {
        self.elems
    }
}

impl fmt::Display for RSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_set(&self.elems))
    }
}

pub(crate) fn pointwise_leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn check_increasing(elems: &[u32]) -> Result<()> {
    if elems.first() == Some(&0) {
        return Err(Error::InvalidSet {
            elems: elems.to_vec(),
            reason: "elements are 1-based".into(),
        });
    }
    if elems.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSet {
            elems: elems.to_vec(),
            reason: "elements must be strictly increasing".into(),
        });
    }
    Ok(())
}

/// `A <= B` in the compression order: `a_i <= b_i` for every `i`.
pub fn leq_compression(a: &RSet, b: &RSet) -> Result<bool> {
    if a.r() != b.r() {
        return Err(Error::LengthMismatch {
            left: a.r(),
            right: b.r(),
        });
    }
    Ok(a.leq(b))
}

/// `B ≺ C`: `B` is at least as long as `C` and dominated by it on the first
/// `|C|` positions.
pub fn prec(b: &[u32], c: &[u32]) -> bool {
    b.len() >= c.len() && pointwise_leq(&b[..c.len()], c)
}

/// Binomial coefficient, zero whenever `k < 0` or `k > m` (so every negative
/// upper index gives zero, including `binom(-1, 0)`).
pub fn binomial(m: i64, k: i64) -> BigNat {
    if k < 0 || k > m {
        return BigNat::zero();
    }
    let k = k.min(m - k) as u64;
    let m = m as u64;
    let mut acc = BigNat::one();
    for i in 1..=k {
        acc *= m - k + i;
        acc /= i;
    }
    acc
}

/// Every element of `C([n], r)` in lexicographic order.
pub fn enumerate_rsets(n: u32, r: u32) -> RSets {
    let cur = if r == 0 || r > n {
        None
    } else {
        Some((1..=r).collect())
    };
    RSets { n, cur }
}

pub struct RSets {
    n: u32,
    cur: Option<Vec<u32>>,
}

impl Iterator for RSets {
    type Item = RSet;

    fn next(&mut self) -> Option<RSet> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().unwrap();
        let r = cur.len();
        // rightmost position that can still move up
        match (0..r).rev().find(|&i| cur[i] < self.n - (r - 1 - i) as u32) {
            Some(i) => {
                cur[i] += 1;
                for j in i + 1..r {
                    cur[j] = cur[j - 1] + 1;
                }
            }
            None => self.cur = None,
        }
        Some(RSet::from_raw(out, self.n))
    }
}

/// Renders `{a,b,c}`.
pub fn format_set(elems: &[u32]) -> String {
    let body: Vec<String> = elems.iter().map(u32::to_string).collect();
    format!("{{{}}}", body.join(","))
}

/// Parses a set literal `{a,b,c}` of strictly increasing positive integers.
/// Whitespace is ignored and `{}` is the empty set.
pub fn parse_set(text: &str) -> Result<Vec<u32>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("expected {{a,b,...}}, got {text:?}")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let elems = inner
        .split(',')
        .map(|tok| {
            tok.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad set element {tok:?} in {text:?}")))
        })
        .collect::<Result<Vec<u32>>>()?;
    check_increasing(&elems)?;
    Ok(elems)
}
