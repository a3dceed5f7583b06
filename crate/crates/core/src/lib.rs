//! Exact counting and EKR verification for compressed intersecting families
//! `F(r,n,G) ⊆ C([n],r)`.
//!
//! * [`sets`]: r-sets, the compression orders and exact binomials.
//! * [`families`]: generator-presented families, meets and inclusion–exclusion.
//! * [`intersecting`]: the pairwise generator criterion and a naive oracle.
//! * [`counting`]: `|A(X)|` by enumeration, by the generating-function
//!   recursion and by closed forms for the slice families `A_{n,r,s}`.
//! * [`ekr`]: verdicts, maximal-family enumeration and conjecture scans.
//! * [`cli`]: the `ekrlab` command line.

pub mod cli;
mod cliques;
pub mod counting;
pub mod ekr;
pub mod error;
pub mod families;
pub mod intersecting;
pub mod sets;

pub use counting::{
    count_avoid, count_hits, count_hits_naive, counterexample_threshold, d_sum, formula_parts,
    g_sum, q_ratio, slice_count, star_count, CountReport, FormulaParts, Method, MinimalX,
};
pub use ekr::{
    borg_monotone_check, canonical_minimal_x, enumerate_maximal_families, eventually_ekr,
    exhaustive_verdict, nicegens_cover_check, scan_conjecture, single_gen_verdict, EkrVerdict,
    ScaleGuard, Scope,
};
pub use error::{Error, Result};
pub use families::{meet, normalize_generator, reduce_antichain, GeneratorFamily};
pub use intersecting::{cross_intersecting, is_intersecting, is_intersecting_naive, star_index};
pub use sets::{binomial, enumerate_rsets, leq_compression, prec, BigNat, RSet};

use serde::ser::{SerializeSeq, Serializer};

// Big integers go out as decimal strings so JSON stays exact.
pub(crate) fn serde_decimal<S: Serializer>(
    v: &BigNat,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn serde_decimals<S: Serializer>(
    v: &[BigNat],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub(crate) fn serde_sets<S: Serializer>(v: &[RSet], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub(crate) fn serde_families<S: Serializer>(
    v: &[GeneratorFamily],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}
