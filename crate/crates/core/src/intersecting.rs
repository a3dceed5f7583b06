//! Deciding whether compressed families are intersecting.
//!
//! For generators `A` and `B`, every `C <= A` meets every `D <= B` exactly
//! when some pair of positions `i, j` has `i + j > max(a_i, b_j)`; a family
//! is intersecting iff every ordered pair of its generators (including a
//! generator with itself) passes that test.

use crate::families::GeneratorFamily;
use crate::sets::{prec, RSet};

/// The pigeonhole criterion on raw element slices.
pub(crate) fn cross_intersecting_elems(a: &[u32], b: &[u32]) -> bool {
    a.iter().enumerate().any(|(i, &ai)| {
        b.iter()
            .enumerate()
            .any(|(j, &bj)| (i + j + 2) as u32 > ai.max(bj))
    })
}

/// Every set below `a` meets every set below `b`.
pub fn cross_intersecting(a: &RSet, b: &RSet) -> bool {
    cross_intersecting_elems(a.elems(), b.elems())
}

/// Least `s` in `[1, r]` with `A ≺ [s, 2s−1]`, or `None` when `a_i >= 2i`
/// for every `i`.
pub fn star_index(a: &RSet) -> Option<u32> {
    star_index_elems(a.elems())
}

pub(crate) fn star_index_elems(a: &[u32]) -> Option<u32> {
    (1..=a.len() as u32).find(|&s| {
        let block: Vec<u32> = (s..2 * s).collect();
        prec(a, &block)
    })
}

pub fn is_intersecting(f: &GeneratorFamily) -> bool {
    let gens = f.gens();
    gens.iter()
        .enumerate()
        .all(|(i, g)| gens[i..].iter().all(|h| cross_intersecting(g, h)))
}

/// Pairwise check over all members.
pub fn is_intersecting_naive(f: &GeneratorFamily) -> bool {
    let members: Vec<RSet> = f.members().collect();
    members.iter().enumerate().all(|(i, b)| {
        members[i..]
            .iter()
            .all(|c| b.elems().iter().any(|e| c.contains(*e)))
    })
}
