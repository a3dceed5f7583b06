//! Compressed families presented by generators, `F(r,n,G)`.
//!
//! A family is stored as a reduced antichain of normalized r-set generators;
//! its members are all r-sets lying below at least one generator.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::counting::AvoidCounter;
use crate::error::{Error, Result};
use crate::sets::{format_set, parse_set, pointwise_leq, BigNat, RSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorFamily {
    n: u32,
    r: u32,
    gens: Vec<RSet>,
}

fn check_dims(n: u32, r: u32) -> Result<()> {
    if r == 0 || r > n {
        return Err(Error::OutOfRange(format!(
            "need 1 <= r <= n, got n={n}, r={r}"
        )));
    }
    Ok(())
}

/// Pads a short generator with the top `r - |G|` elements of `[n]`, giving
/// the r-set `G'` with `A <= G'` iff `A ≺ G`. Returns `None` when `|G| > r`,
/// since no r-set sits below a longer set.
pub fn normalize_generator(gen: &[u32], n: u32, r: u32) -> Result<Option<RSet>> {
    check_dims(n, r)?;
    let invalid = |reason: String| Error::InvalidGenerator {
        gen: gen.to_vec(),
        n,
        r,
        reason,
    };
    if gen.first() == Some(&0) || gen.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid(
            "elements must be strictly increasing and 1-based".into(),
        ));
    }
    if let Some(&last) = gen.last() {
        if last > n {
            return Err(invalid(format!("element {last} exceeds n")));
        }
    }
    if gen.len() > r as usize {
        return Ok(None);
    }
    let pad = r - gen.len() as u32;
    let tail_start = n - pad + 1;
    if let Some(&last) = gen.last() {
        if pad > 0 && last >= tail_start {
            return Err(invalid(format!(
                "padding [{tail_start},{n}] overlaps the generator"
            )));
        }
    }
    let mut elems = gen.to_vec();
    elems.extend(tail_start..=n);
    Ok(Some(RSet::from_raw(elems, n)))
}

/// Pointwise minimum; `F({meet(G,H)}) = F({G}) ∩ F({H})`.
pub fn meet(g: &RSet, h: &RSet) -> Result<RSet> {
    if g.r() != h.r() {
        return Err(Error::LengthMismatch {
            left: g.r(),
            right: h.r(),
        });
    }
    if g.n() != h.n() {
        return Err(Error::Precondition(format!(
            "meet of sets over different ground sets ({} vs {})",
            g.n(),
            h.n()
        )));
    }
    let elems: Vec<u32> = g
        .elems()
        .iter()
        .zip(h.elems())
        .map(|(a, b)| *a.min(b))
        .collect();
    RSet::new(elems, g.n())
}

/// Drops duplicates and every generator dominated by another one. Output is
/// sorted lexicographically.
pub fn reduce_antichain(mut gens: Vec<RSet>) -> Result<Vec<RSet>> {
    if gens.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let r = gens[0].r();
    if let Some(bad) = gens.iter().find(|g| g.r() != r) {
        return Err(Error::LengthMismatch {
            left: r,
            right: bad.r(),
        });
    }
    gens.sort();
    gens.dedup();
    let kept: Vec<RSet> = gens
        .iter()
        .filter(|g| !gens.iter().any(|h| h != *g && g.leq(h)))
        .cloned()
        .collect();
    Ok(kept)
}

/// Inclusion–exclusion over the generators with equal meets merged:
/// returns `(M, c)` pairs with `1_F = Σ c · 1_{F({M})}`, which is the sum over
/// nonempty subsets `T` of `(-1)^{|T|+1} · 1_{F({meet T})}` grouped by meet.
pub fn inclusion_exclusion_terms(gens: &[RSet]) -> Vec<(RSet, i64)> {
    let mut terms: BTreeMap<RSet, i64> = BTreeMap::new();
    for g in gens {
        let mut next = terms.clone();
        for (m, c) in &terms {
            let joint = meet(m, g).expect("generators share n and r");
            *next.entry(joint).or_insert(0) -= c;
        }
        *next.entry(g.clone()).or_insert(0) += 1;
        next.retain(|_, c| *c != 0);
        terms = next;
    }
    terms.into_iter().collect()
}

impl GeneratorFamily {
    /// Normalizes raw generators (any length), drops those longer than `r`
    /// and reduces the rest to an antichain.
    pub fn new(n: u32, r: u32, raw: &[Vec<u32>]) -> Result<Self> {
        check_dims(n, r)?;
        let mut gens = Vec::with_capacity(raw.len());
        for g in raw {
            if let Some(g) = normalize_generator(g, n, r)? {
                gens.push(g);
            }
        }
        Self::from_rsets(n, r, gens)
    }

    pub fn from_rsets(n: u32, r: u32, gens: Vec<RSet>) -> Result<Self> {
        check_dims(n, r)?;
        if let Some(bad) = gens.iter().find(|g| g.r() != r as usize || g.n() != n) {
            return Err(Error::InvalidGenerator {
                gen: bad.elems().to_vec(),
                n,
                r,
                reason: "generator must be an r-set over [n]".into(),
            });
        }
        let gens = reduce_antichain(gens)?;
        Ok(GeneratorFamily { n, r, gens })
    }

    /// The star `S_{n,r}`: every r-set containing 1.
    pub fn star(n: u32, r: u32) -> Result<Self> {
        Self::new(n, r, &[vec![1]])
    }

    /// `A_{n,r,s} = F(r,n,{[s,2s-1]})`.
    pub fn slice(n: u32, r: u32, s: u32) -> Result<Self> {
        if s == 0 || s > r {
            return Err(Error::OutOfRange(format!(
                "need 1 <= s <= r, got s={s}, r={r}"
            )));
        }
        Self::new(n, r, &[(s..2 * s).collect()])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn gens(&self) -> &[RSet] {
        &self.gens
    }

    pub fn member(&self, b: &RSet) -> bool {
        b.r() == self.r as usize && self.gens.iter().any(|g| b.leq(g))
    }

    pub fn contains_elems(&self, b: &[u32]) -> bool {
        b.len() == self.r as usize && self.gens.iter().any(|g| pointwise_leq(b, g.elems()))
    }

    /// Streams the members in lexicographic order.
    pub fn members(&self) -> Members<'_> {
        let r = self.r as usize;
        Members {
            gens: &self.gens,
            n: self.n,
            cur: Some((1..=r as u32).collect()),
        }
    }

    /// `|F(r,n,G)|` by inclusion–exclusion over generator meets.
    pub fn size(&self) -> BigNat {
        let mut counter = AvoidCounter::new(&[]);
        let total: BigInt = inclusion_exclusion_terms(&self.gens)
            .iter()
            .map(|(m, c)| BigInt::from(*c) * BigInt::from(counter.count(m.elems())))
            .sum();
        debug_assert!(!total.is_negative());
        total.to_biguint().expect("family size is nonnegative")
    }
}

/// Lexicographic walk over the union of the generators' down-sets.
pub struct Members<'a> {
    gens: &'a [RSet],
    n: u32,
    cur: Option<Vec<u32>>,
}

impl Members<'_> {
    // Some generator dominates `prefix` followed by `next` at position `prefix.len()`.
    fn extendable(&self, prefix: &[u32], next: u32) -> bool {
        let i = prefix.len();
        self.gens
            .iter()
            .any(|g| next <= g.elems()[i] && pointwise_leq(prefix, &g.elems()[..i]))
    }
}

impl Iterator for Members<'_> {
    type Item = RSet;

    fn next(&mut self) -> Option<RSet> {
        let out = self.cur.take()?;
        let mut cur = out.clone();
        let r = cur.len();
        for i in (0..r).rev() {
            let v = cur[i] + 1;
            if self.extendable(&cur[..i], v) {
                cur[i] = v;
                for j in i + 1..r {
                    cur[j] = cur[j - 1] + 1;
                }
                self.cur = Some(cur);
                break;
            }
        }
        Some(RSet::from_raw(out, self.n))
    }
}

impl fmt::Display for GeneratorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| format_set(g.elems())).collect();
        write!(f, "n={} r={} gens=[{}]", self.n, self.r, gens.join(";"))
    }
}

impl FromStr for GeneratorFamily {
    type Err = Error;

    /// Parses `n=<int> r=<int> gens=[{a,b,...};{...}]`, ignoring whitespace.
    fn from_str(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |what: &str| Error::Parse(format!("{what} in family literal {text:?}"));
        let rest = compact
            .strip_prefix("n=")
            .ok_or_else(|| bad("missing n="))?;
        let (n, rest) = rest.split_once("r=").ok_or_else(|| bad("missing r="))?;
        let (r, rest) = rest
            .split_once("gens=")
            .ok_or_else(|| bad("missing gens="))?;
        let n: u32 = n.parse().map_err(|_| bad("bad n"))?;
        let r: u32 = r.parse().map_err(|_| bad("bad r"))?;
        let list = rest
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| bad("gens must be [..]"))?;
        if list.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let raw = list
            .split(';')
            .map(parse_set)
            .collect::<Result<Vec<Vec<u32>>>>()?;
        GeneratorFamily::new(n, r, &raw)
    }
}
