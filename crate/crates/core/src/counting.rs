//! Counting `|A(X)|` three ways (enumeration, the generating-function
//! recursion evaluated at 0/1 points, and closed forms for the slices
//! `A_{n,r,s}`), plus the pieces the closed forms are assembled from.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{inclusion_exclusion_terms, GeneratorFamily};
use crate::sets::{binomial, BigNat, RSet};

/// Which counting path produced a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Naive,
    Genfunc,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Naive => "naive",
            Method::Genfunc => "genfunc",
            Method::ClosedForm => "closed_form",
        })
    }
}

/// `|A(X)|` next to `|S(X)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: u32,
    pub r: u32,
    #[serde(rename = "X")]
    pub x: Vec<u32>,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub hits: BigNat,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub star: BigNat,
    pub method: Method,
    pub leq_star: bool,
}

impl CountReport {
    pub fn new(n: u32, r: u32, x: &[u32], hits: BigNat, method: Method) -> Self {
        let star = star_hits(n, r, x);
        CountReport {
            n,
            r,
            x: x.to_vec(),
            leq_star: hits <= star,
            hits,
            star,
            method,
        }
    }
}

/// Evaluates the generating function of a single-generator family at the
/// point `x_i = 0 (i ∈ X)`, `x_i = 1` otherwise, i.e. counts the sets below a
/// generator that avoid `X`. Results are memoized on the reduced generator.
pub struct AvoidCounter {
    blocked: Vec<bool>,
    cache: HashMap<Vec<u32>, BigNat>,
}

impl AvoidCounter {
    pub fn new(x: &[u32]) -> Self {
        let len = x.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut blocked = vec![false; len];
        for &e in x {
            blocked[e as usize] = true;
        }
        AvoidCounter {
            blocked,
            cache: HashMap::new(),
        }
    }

    fn is_blocked(&self, i: u32) -> bool {
        self.blocked.get(i as usize).copied().unwrap_or(false)
    }

    /// `#{B <= gen : B ∩ X = ∅}`.
    pub fn count(&mut self, gen: &[u32]) -> BigNat {
        if let Some(hit) = self.cache.get(gen) {
            return hit.clone();
        }
        let value = self.compute(gen, true);
        self.cache.insert(gen.to_vec(), value.clone());
        value
    }

    /// Same recursion with the memo table bypassed.
    pub fn count_uncached(&mut self, gen: &[u32]) -> BigNat {
        self.compute(gen, false)
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    fn compute(&mut self, gen: &[u32], memo: bool) -> BigNat {
        let k = gen.len();
        if k == 1 {
            return BigNat::from((1..=gen[0]).filter(|&i| !self.is_blocked(i)).count());
        }
        let mut total = BigNat::zero();
        let mut sub = vec![0u32; k - 1];
        for top in k as u32..=gen[k - 1] {
            if self.is_blocked(top) {
                continue;
            }
            for (j, slot) in sub.iter_mut().enumerate() {
                // j-th entry (1-based j+1) is min(a_j, top + j - k)
                *slot = gen[j].min(top + j as u32 + 1 - k as u32);
            }
            total += if memo {
                self.count(&sub)
            } else {
                self.compute(&sub, false)
            };
        }
        total
    }
}

/// `#{B <= A : B ∩ X = ∅}` via the memoized recursion.
pub fn count_avoid(a: &RSet, x: &[u32]) -> BigNat {
    AvoidCounter::new(x).count(a.elems())
}

/// `|F(X)|` by inclusion–exclusion over generator meets, each single
/// generator term evaluated as `f(1,…,1) − f|_{X=0}(1,…,1)`.
pub fn count_hits(f: &GeneratorFamily, x: &[u32]) -> BigNat {
    let mut all = AvoidCounter::new(&[]);
    let mut avoid = AvoidCounter::new(x);
    count_hits_with(f, &mut all, &mut avoid)
}

/// `count_hits` with caller-owned memo tables, so repeated queries with the
/// same `X` share work. `all` must have been built with an empty `X`.
pub fn count_hits_with(
    f: &GeneratorFamily,
    all: &mut AvoidCounter,
    avoid: &mut AvoidCounter,
) -> BigNat {
    let total: BigInt = inclusion_exclusion_terms(f.gens())
        .iter()
        .map(|(m, c)| {
            let hits = BigInt::from(all.count(m.elems())) - BigInt::from(avoid.count(m.elems()));
            BigInt::from(*c) * hits
        })
        .sum();
    debug_assert!(!total.is_negative());
    total.to_biguint().expect("hit count is nonnegative")
}

/// `|F(X)|` by walking every member.
pub fn count_hits_naive(f: &GeneratorFamily, x: &[u32]) -> BigNat {
    let mut hit = vec![false; f.n() as usize + 1];
    for &e in x.iter().filter(|&&e| e <= f.n()) {
        hit[e as usize] = true;
    }
    let count = f
        .members()
        .filter(|b| b.elems().iter().any(|&e| hit[e as usize]))
        .count();
    BigNat::from(count)
}

/// `|S_{n,r}(X)|` for `X ⊆ [2,n]` with `|X| = t`.
pub fn star_count(n: u32, r: u32, t: u32) -> Result<BigNat> {
    if t == 0 || t >= n {
        return Err(Error::OutOfRange(format!(
            "need 1 <= t <= n-1, got t={t}, n={n}"
        )));
    }
    let (n, r, t) = (n as i64, r as i64, t as i64);
    Ok(binomial(n - 1, r - 1) - binomial(n - 1 - t, r - 1))
}

/// `|S_{n,r}(X)|` for an arbitrary `X` (elements outside `[n]` ignored).
pub fn star_hits(n: u32, r: u32, x: &[u32]) -> BigNat {
    let (ni, ri) = (n as i64, r as i64);
    if x.contains(&1) {
        return binomial(ni - 1, ri - 1);
    }
    let t = x.iter().filter(|&&e| (2..=n).contains(&e)).count() as i64;
    binomial(ni - 1, ri - 1) - binomial(ni - 1 - t, ri - 1)
}

/// The minimal sets `X` of the four eventually-EKR shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MinimalX {
    /// `{r+2}`
    Single,
    /// `{4, r+2}`
    Pair,
    /// `{2, 4, r+2}`
    Triple,
    /// `{2, …, t, r+2}` with `4 <= t <= r`
    Run(u32),
}

impl MinimalX {
    /// Shape from its case number (1..=4), with `t` only for case 4.
    pub fn from_case(r: u32, case: u32, t: Option<u32>) -> Result<Self> {
        if r < 3 {
            return Err(Error::OutOfRange(format!(
                "minimal X needs r >= 3, got {r}"
            )));
        }
        match (case, t) {
            (1, _) => Ok(MinimalX::Single),
            (2, _) => Ok(MinimalX::Pair),
            (3, _) => Ok(MinimalX::Triple),
            (4, Some(t)) if (4..=r).contains(&t) => Ok(MinimalX::Run(t)),
            (4, t) => Err(Error::OutOfRange(format!(
                "case 4 needs 4 <= t <= r = {r}, got {t:?}"
            ))),
            _ => Err(Error::OutOfRange(format!("case must be 1..=4, got {case}"))),
        }
    }

    /// Every shape available at this `r`.
    pub fn all(r: u32) -> Vec<MinimalX> {
        let mut out = vec![MinimalX::Single, MinimalX::Pair, MinimalX::Triple];
        out.extend((4..=r).map(MinimalX::Run));
        out
    }

    /// Recognizes a concrete set as one of the shapes.
    pub fn classify(r: u32, x: &[u32]) -> Option<MinimalX> {
        MinimalX::all(r).into_iter().find(|m| m.set(r) == x)
    }

    pub fn case(self) -> u32 {
        match self {
            MinimalX::Single => 1,
            MinimalX::Pair => 2,
            MinimalX::Triple => 3,
            MinimalX::Run(_) => 4,
        }
    }

    /// `|X|`.
    pub fn t(self) -> u32 {
        match self {
            MinimalX::Single => 1,
            MinimalX::Pair => 2,
            MinimalX::Triple => 3,
            MinimalX::Run(t) => t,
        }
    }

    pub fn set(self, r: u32) -> Vec<u32> {
        match self {
            MinimalX::Single => vec![r + 2],
            MinimalX::Pair => vec![4, r + 2],
            MinimalX::Triple => vec![2, 4, r + 2],
            MinimalX::Run(t) => (2..=t).chain([r + 2]).collect(),
        }
    }
}

/// The three displayed sums whose total is `|A_{n,r,s}(X)|` in the general
/// case, with `D = count1 + count2` and the numerator of `Q` (= count3).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaParts {
    #[serde(serialize_with = "crate::serde_decimal")]
    pub count1: BigNat,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub count2: BigNat,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub count3: BigNat,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub d_sum: BigNat,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub q_num: BigNat,
}

impl FormulaParts {
    pub fn total(&self) -> BigNat {
        &self.count1 + &self.count2 + &self.count3
    }
}

fn b(m: i64, k: i64) -> BigInt {
    BigInt::from(binomial(m, k))
}

fn nonneg(v: BigInt) -> BigNat {
    v.to_biguint()
        .expect("sum of binomial terms is nonnegative")
}

fn check_formula_range(n: u32, r: u32, s: u32) -> Result<()> {
    if r < 4 || s < 2 || s > r || n < r {
        return Err(Error::OutOfRange(format!(
            "formula needs r >= 4, 2 <= s <= r, n >= r; got n={n}, r={r}, s={s}"
        )));
    }
    Ok(())
}

/// `g(n,r,s,t) = Σ_{i=s}^{2s−1} (C(i−1,s−1) − C(i−t,s−1)) C(n−i,r−s)`.
pub fn g_sum(n: u32, r: u32, s: u32, t: u32) -> Result<BigNat> {
    check_formula_range(n, r, s)?;
    let (n, r, s, t) = (n as i64, r as i64, s as i64, t as i64);
    let total: BigInt = (s..=2 * s - 1)
        .map(|i| (b(i - 1, s - 1) - b(i - t, s - 1)) * b(n - i, r - s))
        .sum();
    Ok(nonneg(total))
}

fn count2(n: i64, r: i64, s: i64, t: i64) -> BigNat {
    (s..=(r + 1).min(2 * s - 1))
        .map(|i| binomial(i - t, s - 1) * binomial(n - i - 1, r - s - 1))
        .sum()
}

fn count3(n: i64, r: i64, s: i64, t: i64) -> BigNat {
    if 2 * s - 1 < r + 2 {
        return BigNat::zero();
    }
    let head = binomial(r + 2 - t, s - 1) * binomial(n - r - 2, r - s);
    let tail: BigNat = (r + 3..=2 * s - 1)
        .map(|i| binomial(i - t - 1, s - 2) * binomial(n - i, r - s))
        .sum();
    head + tail
}

pub fn formula_parts(n: u32, r: u32, s: u32, t: u32) -> Result<FormulaParts> {
    if t == 0 || t > r {
        return Err(Error::OutOfRange(format!(
            "need 1 <= t <= r, got t={t}, r={r}"
        )));
    }
    let count1 = g_sum(n, r, s, t)?;
    let (n, r, s, t) = (n as i64, r as i64, s as i64, t as i64);
    let count2 = count2(n, r, s, t);
    let count3 = count3(n, r, s, t);
    Ok(FormulaParts {
        d_sum: &count1 + &count2,
        q_num: count3.clone(),
        count1,
        count2,
        count3,
    })
}

/// `D(n,r,s,t) = count1 + count2`.
pub fn d_sum(n: u32, r: u32, s: u32, t: u32) -> Result<BigNat> {
    Ok(formula_parts(n, r, s, t)?.d_sum)
}

/// `Q(n,r,s,t) = count3 / C(n−2, r−2)`, zero when `2s−1 < r+2`.
pub fn q_ratio(n: u32, r: u32, s: u32, t: u32) -> Result<BigRational> {
    let parts = formula_parts(n, r, s, t)?;
    let denom = binomial(n as i64 - 2, r as i64 - 2);
    Ok(BigRational::new(
        BigInt::from(parts.q_num),
        BigInt::from(denom),
    ))
}

/// Exact test of `q <= 3.25 · r^{3/2} · 0.954^r`.
///
/// With `L = q · 4 · 500^r / (13 · 477^r)` the bound reads `L <= r^{3/2}`,
/// i.e. `L² <= r³` since both sides are nonnegative.
pub fn q_bound_holds(q: &BigRational, r: u32) -> bool {
    let scale = BigRational::new(
        BigInt::from(4) * BigInt::from(500).pow(r),
        BigInt::from(13) * BigInt::from(477).pow(r),
    );
    let l = q * scale;
    let r3 = BigRational::from_integer(BigInt::from(r).pow(3));
    &l * &l <= r3
}

/// Floating-point value of `3.25 · r^{3/2} · 0.954^r`, for display only.
pub fn q_bound_value(r: u32) -> f64 {
    3.25 * (r as f64).powf(1.5) * 0.954f64.powi(r as i32)
}

/// `C(n−2, r−2) / |S(X)|` with `|X| = t`.
pub fn star_lead_ratio(n: u32, r: u32, t: u32) -> Result<BigRational> {
    let star = star_count(n, r, t)?;
    if star.is_zero() {
        return Err(Error::OutOfRange(format!(
            "|S(X)| = 0 at n={n}, r={r}, t={t}"
        )));
    }
    Ok(BigRational::new(
        BigInt::from(binomial(n as i64 - 2, r as i64 - 2)),
        BigInt::from(star),
    ))
}

/// Closed form for `|A_{n,r,s}(X)|` at a canonical minimal `X`.
pub fn slice_count(n: u32, r: u32, s: u32, x: MinimalX) -> Result<BigNat> {
    if r < 3 || s == 0 || s > r {
        return Err(Error::OutOfRange(format!(
            "slice needs r >= 3 and 1 <= s <= r, got r={r}, s={s}"
        )));
    }
    if n < 2 * r {
        return Err(Error::OutOfRange(format!(
            "slice needs n >= 2r, got n={n}, r={r}"
        )));
    }
    if let MinimalX::Run(t) = x {
        if !(4..=r).contains(&t) {
            return Err(Error::NonCanonical(x.set(r)));
        }
    }
    let t = x.t();
    if s == 1 {
        return star_count(n, r, t);
    }
    let (ni, ri) = (n as i64, r as i64);
    if r == 3 {
        let v: u64 = match (s, x) {
            (2, MinimalX::Single) => 3,
            (2, MinimalX::Pair) => 6,
            (2, MinimalX::Triple) => 2 * n as u64 - 3,
            (3, MinimalX::Single) => 6,
            (3, MinimalX::Pair) => 9,
            (3, MinimalX::Triple) => 10,
            _ => unreachable!("r = 3 admits only s <= 3 and |X| <= 3"),
        };
        return Ok(BigNat::from(v));
    }
    let special = match (t, s) {
        (2, 2) => Some(
            b(ni - 3, ri - 3) * 2 - b(ni - 4, ri - 4)
                + (b(ni - 4, ri - 3) * 2 - b(ni - 5, ri - 4)) * 2,
        ),
        (2, 3) => Some(
            b(ni - 4, ri - 4) * 2 - b(ni - 5, ri - 5)
                + b(ni - 4, ri - 3) * 3
                + b(ni - 6, ri - 4) * 3
                + b(ni - 5, ri - 3) * 3,
        ),
        (3, 2) => {
            Some(b(ni - 2, ri - 2) + b(ni - 3, ri - 2) + b(ni - 4, ri - 3) * 2 - b(ni - 5, ri - 4))
        }
        (3, 3) => Some(
            b(ni - 3, ri - 3) + b(ni - 4, ri - 3) * 3 + b(ni - 5, ri - 3) * 5 + b(ni - 6, ri - 4),
        ),
        _ => None,
    };
    match special {
        Some(v) => Ok(nonneg(v)),
        None => Ok(formula_parts(n, r, s, t)?.total()),
    }
}

/// `(3r + 1 + √(5r² − 22r + 25)) / 2`, below which the `{2,3}` family beats
/// the star on `X = {2, 4, r+2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CounterexampleThreshold {
    pub r: u32,
    /// `5r² − 22r + 25`
    pub discriminant: u64,
    pub value: f64,
}

impl CounterexampleThreshold {
    pub fn new(r: u32) -> Result<Self> {
        if r < 4 {
            return Err(Error::OutOfRange(format!(
                "threshold needs r >= 4, got {r}"
            )));
        }
        let ri = r as u64;
        let discriminant = 5 * ri * ri + 25 - 22 * ri;
        let value = (3.0 * r as f64 + 1.0 + (discriminant as f64).sqrt()) / 2.0;
        Ok(CounterexampleThreshold {
            r,
            discriminant,
            value,
        })
    }

    /// Exact `n < threshold`, i.e. `2n − 3r − 1 < √disc`.
    pub fn is_below(&self, n: u32) -> bool {
        let lhs = 2 * n as i64 - 3 * self.r as i64 - 1;
        lhs < 0 || (lhs as u64).pow(2) < self.discriminant
    }

    /// Largest integer strictly below the threshold.
    pub fn largest_below(&self) -> u32 {
        let root = self.discriminant.sqrt();
        let mut n = ((3 * self.r as u64 + 1 + root) / 2) as u32;
        while !self.is_below(n) {
            n -= 1;
        }
        while self.is_below(n + 1) {
            n += 1;
        }
        n
    }
}

pub fn counterexample_threshold(r: u32) -> Result<CounterexampleThreshold> {
    CounterexampleThreshold::new(r)
}

/// Exact `n > φ² r`: `2n − 3r > √5 r`, i.e. `2n > 3r` and `(2n − 3r)² > 5r²`.
pub fn exceeds_phi_squared(n: u32, r: u32) -> bool {
    let lhs = 2 * n as i64 - 3 * r as i64;
    lhs > 0 && lhs * lhs > 5 * (r as i64) * (r as i64)
}

/// Smallest integer `n` with `n > φ² r` (which is `⌈φ² r⌉` for `r >= 1`).
pub fn phi_squared_ceil(r: u32) -> u32 {
    let mut n = (2.618 * r as f64).floor().max(0.0) as u32;
    while n > 0 && exceeds_phi_squared(n - 1, r) {
        n -= 1;
    }
    while !exceeds_phi_squared(n, r) {
        n += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::enumerate_rsets;

    fn nat(v: u64) -> BigNat {
        BigNat::from(v)
    }

    fn rs(v: &[u32], n: u32) -> RSet {
        RSet::new(v.to_vec(), n).unwrap()
    }

    // Straight from the definition: every r-set below `a` avoiding `x`.
    fn avoid_by_brute_force(a: &RSet, x: &[u32]) -> usize {
        enumerate_rsets(a.n(), a.r() as u32)
            .filter(|b| b.leq(a) && !b.elems().iter().any(|e| x.contains(e)))
            .count()
    }

    #[test]
    fn count_avoid_examples() {
        let a = rs(&[2, 4], 4);
        assert_eq!(avoid_by_brute_force(&a, &[]), 5);
        assert_eq!(count_avoid(&a, &[]), nat(5));
        assert_eq!(avoid_by_brute_force(&a, &[2]), 2);
        assert_eq!(count_avoid(&a, &[2]), nat(2));
        let a = rs(&[2, 5, 7, 9], 9);
        assert_eq!(count_avoid(&a, &(1..=9).collect::<Vec<_>>()), nat(0));
    }

    #[test]
    fn count_avoid_matches_brute_force_on_all_generators() {
        for a in enumerate_rsets(8, 3) {
            for x in [vec![], vec![3], vec![2, 5], vec![1, 4, 8], vec![6, 7]] {
                let want = avoid_by_brute_force(&a, &x);
                assert_eq!(count_avoid(&a, &x), nat(want as u64), "a={a} x={x:?}");
            }
        }
    }

    #[test]
    fn memo_is_transparent() {
        let mut cached = AvoidCounter::new(&[3, 6, 10]);
        let mut plain = AvoidCounter::new(&[3, 6, 10]);
        for a in enumerate_rsets(12, 4).step_by(17) {
            assert_eq!(cached.count(a.elems()), plain.count_uncached(a.elems()));
        }
        assert!(cached.cache_len() > 0);
        assert_eq!(plain.cache_len(), 0);
    }

    #[test]
    fn count_hits_two_generator_family() {
        let f: GeneratorFamily = "n=11 r=5 gens=[{2,3,4};{3,4,6,7}]".parse().unwrap();
        assert_eq!(count_hits(&f, &[4, 7]), nat(142));
        assert_eq!(count_hits_naive(&f, &[4, 7]), nat(142));
        assert_eq!(count_hits(&f, &[]), nat(0));
    }

    #[test]
    fn count_hits_naive_examples() {
        let f = GeneratorFamily::new(4, 2, &[vec![2, 3]]).unwrap();
        assert_eq!(count_hits_naive(&f, &[3]), nat(2));
        let f = GeneratorFamily::new(7, 3, &[vec![2, 4], vec![1, 5]]).unwrap();
        assert_eq!(count_hits_naive(&f, &(1..=9).collect::<Vec<_>>()), f.size());
        let s = GeneratorFamily::star(11, 5).unwrap();
        assert_eq!(count_hits_naive(&s, &[4, 7]), nat(140));
    }

    #[test]
    fn star_count_examples() {
        assert_eq!(star_count(11, 5, 2).unwrap(), nat(140));
        assert_eq!(star_count(12, 4, 11).unwrap(), binomial(11, 3));
        // C(6,2) − C(4,2) = 15 − 6, confirmed by brute force below
        assert_eq!(star_count(7, 3, 2).unwrap(), nat(9));
        let s = GeneratorFamily::star(7, 3).unwrap();
        assert_eq!(count_hits_naive(&s, &[5, 6]), nat(9));
        assert!(star_count(7, 3, 0).is_err());
        assert!(star_count(7, 3, 7).is_err());
    }

    #[test]
    fn star_hits_handles_one_and_empty() {
        assert_eq!(star_hits(9, 3, &[1, 5]), binomial(8, 2));
        assert_eq!(star_hits(9, 3, &[]), nat(0));
        assert_eq!(star_hits(11, 5, &[4, 7]), nat(140));
    }

    #[test]
    fn slice_count_reference_table() {
        let want = [140u64, 121, 136, 140, 105];
        for (s, w) in (1..=5).zip(want) {
            assert_eq!(
                slice_count(11, 5, s, MinimalX::Pair).unwrap(),
                nat(w),
                "s={s}"
            );
        }
        for n in 6..=20 {
            assert_eq!(slice_count(n, 3, 3, MinimalX::Triple).unwrap(), nat(10));
        }
    }

    #[test]
    fn slice_count_rejects_bad_input() {
        assert!(slice_count(11, 5, 0, MinimalX::Pair).is_err());
        assert!(slice_count(11, 5, 6, MinimalX::Pair).is_err());
        assert!(slice_count(9, 5, 2, MinimalX::Pair).is_err());
        assert_eq!(
            slice_count(12, 5, 2, MinimalX::Run(6)),
            Err(Error::NonCanonical(vec![2, 3, 4, 5, 6, 7]))
        );
    }

    #[test]
    fn formula_parts_examples() {
        // t = 1: the difference of binomials vanishes
        for n in 8..20 {
            for r in 4..=n / 2 {
                assert!(formula_parts(n, r, 2, 1).unwrap().count1.is_zero());
            }
        }
        // 2s − 1 < r + 2 kills count3
        let p = formula_parts(20, 8, 4, 3).unwrap();
        assert!(p.count3.is_zero() && p.q_num.is_zero());
        let p = formula_parts(20, 8, 6, 3).unwrap();
        assert!(!p.count3.is_zero());
        assert_eq!(p.d_sum, &p.count1 + &p.count2);
        assert_eq!(p.q_num, p.count3);
    }

    #[test]
    fn g_sum_examples() {
        assert!(g_sum(20, 8, 3, 1).unwrap().is_zero());
        assert!(g_sum(20, 8, 2, 3).unwrap() >= g_sum(20, 8, 3, 3).unwrap());
        assert_eq!(
            g_sum(20, 8, 5, 2).unwrap(),
            formula_parts(20, 8, 5, 2).unwrap().count1
        );
    }

    #[test]
    fn q_ratio_examples() {
        assert!(q_ratio(30, 10, 5, 2).unwrap().is_zero());
        let r = 20;
        let n = phi_squared_ceil(r);
        assert_eq!(n, 53);
        let q = q_ratio(n, r, 18, 1).unwrap();
        assert!(q_bound_holds(&q, r));
        let q_next = q_ratio(n + 1, r, 18, 1).unwrap();
        assert!(q_next < q);
    }

    #[test]
    fn q_bound_comparison_is_exact() {
        // the bound at r = 4 is 3.25 · 8 · 0.954^4 = 21.53...
        let just_below = BigRational::new(BigInt::from(2153), BigInt::from(100));
        let just_above = BigRational::new(BigInt::from(2154), BigInt::from(100));
        assert!(q_bound_holds(&just_below, 4));
        assert!(!q_bound_holds(&just_above, 4));
        assert!((q_bound_value(4) - 21.5357).abs() < 1e-3);
    }

    #[test]
    fn threshold_examples() {
        let t4 = counterexample_threshold(4).unwrap();
        assert_eq!(t4.discriminant, 17);
        assert!((t4.value - (13.0 + 17f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((t4.value - 8.5616).abs() < 1e-4);
        assert!(t4.is_below(8) && !t4.is_below(9));
        assert_eq!(t4.largest_below(), 8);
        let t5 = counterexample_threshold(5).unwrap();
        assert_eq!(t5.discriminant, 40);
        assert!((t5.value - 11.1623).abs() < 1e-4);
        assert!(t5.is_below(11) && !t5.is_below(12));
        let big = counterexample_threshold(10_000).unwrap();
        let phi2 = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((big.value / 10_000.0 - phi2).abs() < 1e-3);
        assert!(counterexample_threshold(3).is_err());
    }

    #[test]
    fn threshold_integer_boundary_is_exact() {
        // r = 6: disc = 73, threshold = (19 + √73)/2 ≈ 13.77
        let t = counterexample_threshold(6).unwrap();
        assert_eq!(t.largest_below(), 13);
        for r in 4..200 {
            let t = counterexample_threshold(r).unwrap();
            let n = t.largest_below();
            assert!(
                (n as f64) < t.value && (n + 1) as f64 >= t.value - 1e-9,
                "r={r}"
            );
        }
    }

    #[test]
    fn phi_squared_test_is_exact() {
        assert!(!exceeds_phi_squared(13, 5));
        assert!(exceeds_phi_squared(14, 5));
        assert_eq!(phi_squared_ceil(5), 14);
        assert_eq!(phi_squared_ceil(3), 8);
        for r in 1..300 {
            let c = phi_squared_ceil(r);
            let x = 2.618_033_988_749_895 * r as f64;
            assert_eq!(c, x.ceil() as u32, "r={r}");
        }
    }

    #[test]
    fn minimal_x_shapes() {
        assert_eq!(MinimalX::Single.set(5), vec![7]);
        assert_eq!(MinimalX::Pair.set(5), vec![4, 7]);
        assert_eq!(MinimalX::Run(4).set(6), vec![2, 3, 4, 8]);
        assert_eq!(MinimalX::classify(5, &[2, 4, 7]), Some(MinimalX::Triple));
        assert_eq!(MinimalX::classify(5, &[2, 5, 7]), None);
        assert!(MinimalX::from_case(5, 4, Some(6)).is_err());
        assert!(MinimalX::from_case(5, 4, None).is_err());
        assert!(MinimalX::from_case(5, 5, None).is_err());
        assert_eq!(MinimalX::all(3).len(), 3);
    }
}
