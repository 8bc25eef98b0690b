//! `Tor^A_*(𝟙, 𝟙)` and `Ext_A^*(𝟙, 𝟙)` for diagram algebras, and the
//! symmetric group oracle they are compared against.
//!
//! Two independent routes compute the same groups: the normalized bar
//! complex, and a small free resolution. [`Method::Auto`] takes the bar
//! complex while it stays small.

pub mod bar;
pub mod group;
pub mod resolution;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraContext;
use crate::coeff::RingSpec;
use crate::complex::{ChainComplex, HomologyGroup};
use crate::error::{Error, Result};

pub use bar::{bar_complex, BarComplex};
pub use group::{group_cohomology, group_homology};
pub use resolution::{resolve, Resolution};

/// Total bar rank up to which [`Method::Auto`] picks the bar complex.
pub const AUTO_BAR_LIMIT: u128 = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bar,
    Resolution,
    Auto,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bar" => Ok(Method::Bar),
            "resolution" => Ok(Method::Resolution),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::parse(s, 0, "expected bar, resolution or auto")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Bar => "bar",
            Method::Resolution => "resolution",
            Method::Auto => "auto",
        };
        f.write_str(s)
    }
}

/// The method `Auto` resolves to for this context and truncation.
pub fn choose_method(ctx: &AlgebraContext, max_degree: usize, method: Method) -> Method {
    match method {
        Method::Auto if bar::total_rank(ctx.dim() - 1, max_degree) <= AUTO_BAR_LIMIT => Method::Bar,
        Method::Auto => Method::Resolution,
        m => m,
    }
}

/// A complex of free `k`-modules in degrees `0..=max_degree` whose homology
/// below `max_degree` is `Tor^A_*(𝟙, 𝟙)`.
pub fn tor_complex(ctx: &AlgebraContext, max_degree: usize, method: Method) -> Result<ChainComplex> {
    match choose_method(ctx, max_degree, method) {
        Method::Bar => Ok(bar_complex(ctx, max_degree)?.complex),
        _ => Ok(resolve(ctx, max_degree)?.reduced),
    }
}

/// `Tor_q` for `q < max_degree`.
pub fn compute_tor(ctx: &AlgebraContext, max_degree: usize, method: Method) -> Result<Vec<HomologyGroup>> {
    let c = tor_complex(ctx, max_degree, method)?;
    (0..max_degree as i64).map(|q| c.homology(q)).collect()
}

/// `Ext^q` for `q < max_degree`, the cohomology of the dual complex.
pub fn compute_ext(ctx: &AlgebraContext, max_degree: usize, method: Method) -> Result<Vec<HomologyGroup>> {
    let c = tor_complex(ctx, max_degree, method)?.dualize();
    (0..max_degree as i64).map(|q| c.homology(-q)).collect()
}

/// Both `Tor` and `Ext` from one complex.
pub fn compute_both(
    ctx: &AlgebraContext,
    max_degree: usize,
    method: Method,
) -> Result<(Vec<HomologyGroup>, Vec<HomologyGroup>)> {
    let c = tor_complex(ctx, max_degree, method)?;
    let tor = (0..max_degree as i64).map(|q| c.homology(q)).collect::<Result<_>>()?;
    let dual = c.dualize();
    let ext = (0..max_degree as i64).map(|q| dual.homology(-q)).collect::<Result<_>>()?;
    Ok((tor, ext))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub q: usize,
    pub left: Option<HomologyGroup>,
    pub right: Option<HomologyGroup>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchReport {
    pub through: usize,
    pub matches: bool,
    pub mismatches: Vec<Mismatch>,
}

/// Degreewise equality for `q <= through`; a degree missing on either side
/// counts as a mismatch.
pub fn compare(left: &[HomologyGroup], right: &[HomologyGroup], through: usize) -> MatchReport {
    let mismatches: Vec<Mismatch> = (0..=through)
        .filter_map(|q| {
            let (l, r) = (left.get(q), right.get(q));
            match (l, r) {
                (Some(a), Some(b)) if a == b => None,
                _ => Some(Mismatch {
                    q,
                    left: l.cloned(),
                    right: r.cloned(),
                }),
            }
        })
        .collect();
    MatchReport {
        through,
        matches: mismatches.is_empty(),
        mismatches,
    }
}

/// Serialized result of one `Tor` or `Ext` computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRecord {
    pub context: String,
    pub ring: RingSpec,
    pub delta: String,
    pub degrees: Vec<DegreeRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub q: usize,
    #[serde(flatten)]
    pub group: HomologyGroup,
}

impl HomologyRecord {
    pub fn new(context: String, ring: RingSpec, delta: String, groups: &[HomologyGroup]) -> Self {
        HomologyRecord {
            context,
            ring,
            delta,
            degrees: groups
                .iter()
                .enumerate()
                .map(|(q, g)| DegreeRecord { q, group: g.clone() })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize, fam: &str, ring: &str, delta: i64) -> AlgebraContext {
        AlgebraContext::with_int_delta(n, fam.parse().unwrap(), ring.parse().unwrap(), delta).unwrap()
    }

    fn free_ranks(h: &[HomologyGroup]) -> Vec<usize> {
        h.iter().map(|g| g.free_rank).collect()
    }

    #[test]
    fn tanabe_two_mod_two() {
        for delta in [0, 1] {
            let c = ctx(2, "T:2", "Z/2", delta);
            assert_eq!(free_ranks(&compute_tor(&c, 4, Method::Bar).unwrap()), vec![1, 1, 1, 1]);
            assert_eq!(free_ranks(&compute_ext(&c, 4, Method::Bar).unwrap()), vec![1, 1, 1, 1]);
        }
    }

    #[test]
    fn uniform_two_integral() {
        let c = ctx(2, "U", "Z", 0);
        let expect = vec![HomologyGroup::free(1), HomologyGroup::with_torsion(0, &[2]), HomologyGroup::zero()];
        assert_eq!(compute_tor(&c, 3, Method::Bar).unwrap(), expect);
        assert_eq!(compute_tor(&c, 3, Method::Resolution).unwrap(), expect);
        let ext = compute_ext(&ctx(2, "T:2", "Z", 0), 3, Method::Auto).unwrap();
        assert_eq!(ext, vec![HomologyGroup::free(1), HomologyGroup::zero(), HomologyGroup::with_torsion(0, &[2])]);
    }

    #[test]
    fn partition_one() {
        let c = ctx(1, "P", "Z/2", 0);
        assert_eq!(compute_tor(&c, 1, Method::Auto).unwrap(), vec![HomologyGroup::free(1)]);
    }

    #[test]
    fn routes_agree() {
        for (fam, ring, delta) in [("T:2", "Z", 2), ("TPP", "Z/3", 0), ("P", "Z/2", 1), ("U", "Q", 0)] {
            let c = ctx(2, fam, ring, delta);
            assert_eq!(
                compute_tor(&c, 3, Method::Bar).unwrap(),
                compute_tor(&c, 3, Method::Resolution).unwrap(),
                "{fam} {ring}"
            );
            assert_eq!(
                compute_ext(&c, 3, Method::Bar).unwrap(),
                compute_ext(&c, 3, Method::Resolution).unwrap(),
                "{fam} {ring}"
            );
        }
    }

    #[test]
    fn compare_reports_degrees() {
        let a = vec![HomologyGroup::free(1), HomologyGroup::with_torsion(0, &[2])];
        let b = vec![HomologyGroup::free(1), HomologyGroup::with_torsion(0, &[3])];
        assert!(compare(&a, &a, 1).matches);
        let r = compare(&a, &b, 1);
        assert_eq!(r.mismatches.len(), 1);
        assert_eq!(r.mismatches[0].q, 1);
        assert!(!compare(&a, &a, 2).matches);
    }

    #[test]
    fn record_shape() {
        let rec = HomologyRecord::new("U n=2".into(), RingSpec::Integers, "0".into(), &[HomologyGroup::with_torsion(0, &[2])]);
        let v = serde_json::to_value(&rec).unwrap();
        assert_eq!(v["degrees"][0], serde_json::json!({"q": 0, "free_rank": 0, "torsion": [2]}));
        assert_eq!(v["ring"], "Z");
    }
}
