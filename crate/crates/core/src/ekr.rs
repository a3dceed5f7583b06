//! EKR verdicts for a set `X`: single-generator and exhaustive maxima of
//! `|A(X)|` against `|S(X)|`, conjecture scans and the covering family used
//! for multi-generator bounds.
//!
//! Exhaustive verdicts range over the maximal compressed intersecting
//! families. Whether two r-sets cross-intersect only depends on the entries
//! `a_i < i + r` (larger entries can never satisfy `i + j > a_i`), so r-sets
//! sharing that uncapped prefix are interchangeable. Each prefix class is
//! represented by its normalized generator, and for `n >= 2r` the maximal
//! families are exactly the maximal cliques of the cross-intersecting graph
//! on the self-intersecting classes.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::cliques::Graph;
use crate::counting::{
    count_hits, count_hits_with, exceeds_phi_squared, star_hits, AvoidCounter, MinimalX,
};
use crate::error::{Error, Result};
use crate::families::{normalize_generator, GeneratorFamily};
use crate::intersecting::{cross_intersecting, star_index_elems};
use crate::sets::{BigNat, RSet};

/// Limits on exhaustive enumeration. These bound work, not semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaleGuard {
    pub max_candidates: usize,
    pub max_cliques: usize,
}

impl Default for ScaleGuard {
    fn default() -> Self {
        ScaleGuard {
            max_candidates: 5000,
            max_cliques: 1_000_000,
        }
    }
}

impl ScaleGuard {
    /// One integer limit applied to both candidates and cliques.
    pub fn uniform(limit: usize) -> Self {
        ScaleGuard {
            max_candidates: limit,
            max_cliques: limit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    SingleGenerator,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EkrVerdict {
    pub n: u32,
    pub r: u32,
    #[serde(rename = "X")]
    pub x: Vec<u32>,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub max_hits: BigNat,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub star: BigNat,
    /// Generators of a family attaining `max_hits`.
    #[serde(serialize_with = "crate::serde_sets")]
    pub witness: Vec<RSet>,
    /// For single-generator verdicts, the least `s` attaining the maximum.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_s: Option<u32>,
    /// For single-generator verdicts, `|A_{n,r,s}(X)|` for `s = 1..=r`.
    #[serde(
        serialize_with = "crate::serde_decimals",
        skip_serializing_if = "Vec::is_empty"
    )]
    pub per_s: Vec<BigNat>,
    pub families_examined: usize,
    pub is_ekr_here: bool,
    pub scope: Scope,
}

/// The minimal `X` of each eventually-EKR case: `{r+2}`, `{4,r+2}`,
/// `{2,4,r+2}` and `{2,…,t,r+2}`.
pub fn canonical_minimal_x(r: u32, case: u32, t: Option<u32>) -> Result<Vec<u32>> {
    Ok(MinimalX::from_case(r, case, t)?.set(r))
}

/// Whether `X` is EKR for all large enough `n` at this `r`, for `X` outside
/// `[2, r+1]` with `|X| <= r`.
pub fn eventually_ekr(x: &[u32], r: u32) -> Result<bool> {
    if r < 3 {
        return Err(Error::OutOfRange(format!(
            "classification needs r >= 3, got {r}"
        )));
    }
    if x.contains(&1) || x.windows(2).any(|w| w[0] >= w[1]) || x.contains(&0) {
        return Err(Error::Precondition(format!(
            "X must be a strictly increasing subset of [2,n], got {x:?}"
        )));
    }
    if x.len() > r as usize || x.iter().all(|&e| e <= r + 1) {
        return Err(Error::OutsideHypothesis(x.to_vec()));
    }
    Ok(match x.len() {
        1 => true,
        2 => !x.contains(&2) && !x.contains(&3),
        3 => !(x.contains(&2) && x.contains(&3)),
        _ => true,
    })
}

fn check_verdict_dims(n: u32, r: u32) -> Result<()> {
    if r < 3 || n < 2 * r {
        return Err(Error::OutOfRange(format!(
            "verdicts need r >= 3 and n >= 2r, got n={n}, r={r}"
        )));
    }
    Ok(())
}

/// Maximum of `|A_{n,r,s}(X)|` over `s`, i.e. over all intersecting
/// single-generator families.
pub fn single_gen_verdict(n: u32, r: u32, x: &[u32]) -> Result<EkrVerdict> {
    check_verdict_dims(n, r)?;
    let mut all = AvoidCounter::new(&[]);
    let mut avoid = AvoidCounter::new(x);
    let mut per_s = Vec::with_capacity(r as usize);
    for s in 1..=r {
        let family = GeneratorFamily::slice(n, r, s)?;
        per_s.push(count_hits_with(&family, &mut all, &mut avoid));
    }
    let (best, max_hits) =
        per_s.iter().enumerate().fold(
            (0, &per_s[0]),
            |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
        );
    let max_hits = max_hits.clone();
    let witness_s = best as u32 + 1;
    let star = star_hits(n, r, x);
    Ok(EkrVerdict {
        n,
        r,
        x: x.to_vec(),
        is_ekr_here: max_hits <= star,
        witness: GeneratorFamily::slice(n, r, witness_s)?.gens().to_vec(),
        witness_s: Some(witness_s),
        per_s,
        families_examined: r as usize,
        max_hits,
        star,
        scope: Scope::SingleGenerator,
    })
}

/// Uncapped prefixes `p` (`i <= p_i <= i + r - 1`) that are self-intersecting,
/// in lexicographic order.
fn candidate_prefixes(r: u32) -> Vec<Vec<u32>> {
    fn extend(r: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !prefix.is_empty() && star_index_elems(prefix).is_some() {
            out.push(prefix.clone());
        }
        let i = prefix.len() as u32 + 1;
        if i > r {
            return;
        }
        let lo = prefix.last().map_or(1, |&p| p + 1);
        for v in lo..=i + r - 1 {
            prefix.push(v);
            extend(r, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(r, &mut Vec::new(), &mut out);
    out
}

/// Normalized representatives of the self-intersecting prefix classes.
pub fn maximal_family_candidates(n: u32, r: u32) -> Result<Vec<RSet>> {
    check_verdict_dims(n, r)?;
    candidate_prefixes(r)
        .iter()
        .map(|p| Ok(normalize_generator(p, n, r)?.expect("prefix is at most r long")))
        .collect()
}

/// Every maximal compressed intersecting family in `C([n], r)`, sorted by
/// generator list.
pub fn enumerate_maximal_families(
    n: u32,
    r: u32,
    guard: ScaleGuard,
) -> Result<Vec<GeneratorFamily>> {
    if r == 0 || r > n {
        return Err(Error::OutOfRange(format!(
            "need 1 <= r <= n, got n={n}, r={r}"
        )));
    }
    if n < 2 * r {
        // any two r-sets of [n] meet
        return Ok(vec![GeneratorFamily::new(n, r, &[vec![]])?]);
    }
    let candidates = if r >= 3 {
        maximal_family_candidates(n, r)?
    } else {
        candidate_prefixes(r)
            .iter()
            .map(|p| Ok(normalize_generator(p, n, r)?.expect("prefix is at most r long")))
            .collect::<Result<Vec<_>>>()?
    };
    if candidates.len() > guard.max_candidates {
        return Err(Error::ScaleGuard {
            what: "candidate generators",
            count: candidates.len(),
            limit: guard.max_candidates,
        });
    }
    let mut graph = Graph::new(candidates.len());
    for (u, a) in candidates.iter().enumerate() {
        for (v, b) in candidates.iter().enumerate().skip(u + 1) {
            if cross_intersecting(a, b) {
                graph.add_edge(u, v);
            }
        }
    }
    let mut families = Vec::new();
    let mut failed = None;
    let complete = graph.for_each_maximal_clique(guard.max_cliques, |clique| {
        let gens: Vec<RSet> = clique.iter().map(|&i| candidates[i].clone()).collect();
        match GeneratorFamily::from_rsets(n, r, gens) {
            Ok(f) => families.push(f),
            Err(e) => failed = Some(e),
        }
    });
    if let Some(e) = failed {
        return Err(e);
    }
    if !complete {
        return Err(Error::ScaleGuard {
            what: "maximal cliques",
            count: guard.max_cliques + 1,
            limit: guard.max_cliques,
        });
    }
    families.sort_by(|a, b| a.gens().cmp(b.gens()));
    Ok(families)
}

/// Maximum of `|A(X)|` over every compressed intersecting family.
pub fn exhaustive_verdict(n: u32, r: u32, x: &[u32], guard: ScaleGuard) -> Result<EkrVerdict> {
    check_verdict_dims(n, r)?;
    let families = enumerate_maximal_families(n, r, guard)?;
    exhaustive_over(n, r, x, &families)
}

/// Exhaustive verdict over an already enumerated list of maximal families.
pub fn exhaustive_over(
    n: u32,
    r: u32,
    x: &[u32],
    families: &[GeneratorFamily],
) -> Result<EkrVerdict> {
    check_verdict_dims(n, r)?;
    let hits: Vec<BigNat> = families
        .par_iter()
        .map_init(
            || (AvoidCounter::new(&[]), AvoidCounter::new(x)),
            |(all, avoid), f| count_hits_with(f, all, avoid),
        )
        .collect();
    let (best, max_hits) = hits
        .iter()
        .enumerate()
        .fold(None, |acc: Option<(usize, &BigNat)>, (i, v)| match acc {
            Some((_, m)) if v <= m => acc,
            _ => Some((i, v)),
        })
        .ok_or(Error::EmptyFamily)?;
    let star = star_hits(n, r, x);
    Ok(EkrVerdict {
        n,
        r,
        x: x.to_vec(),
        is_ekr_here: *max_hits <= star,
        max_hits: max_hits.clone(),
        star,
        witness: families[best].gens().to_vec(),
        witness_s: None,
        per_s: Vec::new(),
        families_examined: families.len(),
        scope: Scope::Exhaustive,
    })
}

pub fn verdict(n: u32, r: u32, x: &[u32], scope: Scope, guard: ScaleGuard) -> Result<EkrVerdict> {
    match scope {
        Scope::SingleGenerator => single_gen_verdict(n, r, x),
        Scope::Exhaustive => exhaustive_verdict(n, r, x, guard),
    }
}

/// The covering family `F({1,r+1}) ∪ F({2,3,r+2}) ∪ ⋃_{s>=3} A_{n,r,s}`.
pub fn nicegens_cover(n: u32, r: u32) -> Result<GeneratorFamily> {
    check_verdict_dims(n, r)?;
    let mut raw = vec![vec![1, r + 1], vec![2, 3, r + 2]];
    raw.extend((3..=r).map(|s| (s..2 * s).collect()));
    GeneratorFamily::new(n, r, &raw)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub n: u32,
    pub r: u32,
    #[serde(serialize_with = "crate::serde_sets")]
    pub cover: Vec<RSet>,
    pub families: usize,
    /// Families inside the star or inside `A_{n,r,2}`.
    pub skipped: usize,
    #[serde(serialize_with = "crate::serde_families")]
    pub uncovered: Vec<GeneratorFamily>,
    pub holds: bool,
}

/// Checks that every maximal intersecting family outside both the star and
/// `A_{n,r,2}` lies inside the covering family.
pub fn nicegens_cover_report(n: u32, r: u32, guard: ScaleGuard) -> Result<CoverReport> {
    let cover = nicegens_cover(n, r)?;
    let two_three = GeneratorFamily::slice(n, r, 2)?;
    let families = enumerate_maximal_families(n, r, guard)?;
    let mut skipped = 0;
    let mut uncovered = Vec::new();
    for f in &families {
        let in_star = f.gens().iter().all(|g| g.get(1) == 1);
        let in_slice2 = f.gens().iter().all(|g| two_three.member(g));
        if in_star || in_slice2 {
            skipped += 1;
        } else if !f.gens().iter().all(|g| cover.member(g)) {
            uncovered.push(f.clone());
        }
    }
    Ok(CoverReport {
        n,
        r,
        cover: cover.gens().to_vec(),
        families: families.len(),
        skipped,
        holds: uncovered.is_empty(),
        uncovered,
    })
}

pub fn nicegens_cover_check(n: u32, r: u32, guard: ScaleGuard) -> Result<bool> {
    Ok(nicegens_cover_report(n, r, guard)?.holds)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub n: u32,
    pub r: u32,
    #[serde(rename = "X")]
    pub x: Vec<u32>,
    pub case: u32,
    pub t: u32,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub max_hits: BigNat,
    #[serde(serialize_with = "crate::serde_decimal")]
    pub star: BigNat,
    pub is_ekr_here: bool,
    /// `n > φ² r`, decided exactly.
    pub above_phi_squared: bool,
    #[serde(serialize_with = "crate::serde_sets")]
    pub witness: Vec<RSet>,
}

impl ScanRow {
    pub fn is_violation(&self) -> bool {
        self.above_phi_squared && !self.is_ekr_here
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub r: u32,
    pub n_lo: u32,
    pub n_hi: u32,
    pub scope: Scope,
    pub rows: Vec<ScanRow>,
    pub violations: Vec<ScanRow>,
}

/// Verdicts for every canonical minimal `X` and every `n` in
/// `[max(n_lo, 2r), n_hi]`; rows with `n > φ² r` that are not EKR are
/// conjecture violations.
pub fn scan_conjecture(
    r: u32,
    n_lo: u32,
    n_hi: u32,
    scope: Scope,
    guard: ScaleGuard,
) -> Result<ScanReport> {
    if r < 3 {
        return Err(Error::OutOfRange(format!("scans need r >= 3, got {r}")));
    }
    let lo = n_lo.max(2 * r);
    let shapes = MinimalX::all(r);
    let work: Vec<(u32, MinimalX)> = (lo..=n_hi)
        .flat_map(|n| shapes.iter().map(move |&m| (n, m)))
        .collect();
    // the maximal families depend on n only
    let by_n: Vec<(u32, Option<Vec<GeneratorFamily>>)> = (lo..=n_hi)
        .map(|n| match scope {
            Scope::Exhaustive => enumerate_maximal_families(n, r, guard).map(|f| (n, Some(f))),
            Scope::SingleGenerator => Ok((n, None)),
        })
        .collect::<Result<_>>()?;
    let mut rows = work
        .par_iter()
        .map(|&(n, shape)| {
            let x = shape.set(r);
            let v = match &by_n[(n - lo) as usize].1 {
                Some(families) => exhaustive_over(n, r, &x, families)?,
                None => single_gen_verdict(n, r, &x)?,
            };
            Ok(ScanRow {
                n,
                r,
                case: shape.case(),
                t: shape.t(),
                above_phi_squared: exceeds_phi_squared(n, r),
                is_ekr_here: v.is_ekr_here,
                max_hits: v.max_hits,
                star: v.star,
                witness: v.witness,
                x,
            })
        })
        .collect::<Result<Vec<ScanRow>>>()?;
    rows.sort_by_key(|row| (row.n, row.case, row.t));
    let violations = rows.iter().filter(|r| r.is_violation()).cloned().collect();
    Ok(ScanReport {
        r,
        n_lo,
        n_hi,
        scope,
        rows,
        violations,
    })
}

/// `|A(X)| >= |A(X')|` for `X <= X'` pointwise.
pub fn borg_monotone_check(f: &GeneratorFamily, x: &[u32], x2: &[u32]) -> Result<bool> {
    if x.len() != x2.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: x2.len(),
        });
    }
    let sorted = |s: &[u32]| s.windows(2).all(|w| w[0] < w[1]);
    if !sorted(x) || !sorted(x2) || x.iter().zip(x2).any(|(a, b)| a > b) {
        return Err(Error::Precondition(format!(
            "need sorted X <= X' pointwise, got {x:?} and {x2:?}"
        )));
    }
    Ok(count_hits(f, x) >= count_hits(f, x2))
}

/// Distinct member sets, used to compare family lists independent of how
/// they are presented.
pub fn member_sets(families: &[GeneratorFamily]) -> BTreeSet<Vec<Vec<u32>>> {
    families
        .iter()
        .map(|f| f.members().map(RSet::into_elems).collect())
        .collect()
}
