//! Homology and cohomology of `Σ_n` with trivial coefficients, from the
//! bar complex of the group algebra.
//!
//! The group is built from permutations alone and never touches diagram
//! composition, so agreement with the diagram side is a genuine check.

use crate::coeff::RingSpec;
use crate::complex::{ChainComplex, HomologyGroup};
use crate::error::{Error, Result};

use super::bar::{reduced_bar_complex, XProducts};

pub const MAX_GROUP_N: usize = 4;

/// All permutations of `0..n` in lexicographic order, as image lists.
pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// `(g h)(x) = g(h(x))`.
fn compose(g: &[u8], h: &[u8]) -> Vec<u8> {
    h.iter().map(|&x| g[x as usize]).collect()
}

/// The reduced bar complex of `k[Σ_n]` through degree `max_degree`.
pub fn group_bar_complex(n: usize, ring: RingSpec, max_degree: usize) -> Result<ChainComplex> {
    if n == 0 || n > MAX_GROUP_N {
        return Err(Error::ResourceGuard {
            what: format!("symmetric group oracle for n = {n}"),
            projected: (1..=n as u128).product(),
            limit: 24,
        });
    }
    let elems = permutations(n);
    let index = |p: &[u8]| elems.iter().position(|q| q == p).expect("closed under composition");
    // x_g = g - 1 for g ≠ e; element 0 is the identity
    let m = elems.len() - 1;
    let mut products: XProducts = vec![vec![Vec::new(); m]; m];
    for a in 1..elems.len() {
        for b in 1..elems.len() {
            // x_a x_b = x_{ab} - x_a - x_b
            let mut terms: Vec<(usize, i64)> = vec![(a - 1, -1), (b - 1, -1)];
            let ab = index(&compose(&elems[a], &elems[b]));
            if ab != 0 {
                terms.push((ab - 1, 1));
            }
            terms.sort_unstable();
            let mut merged: Vec<(usize, i64)> = Vec::new();
            for (k, c) in terms {
                match merged.last_mut() {
                    Some(last) if last.0 == k => last.1 += c,
                    _ => merged.push((k, c)),
                }
            }
            products[a - 1][b - 1] = merged
                .into_iter()
                .map(|(k, c)| (k, ring.from_i64(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
    }
    reduced_bar_complex(ring, m, &products, max_degree)
}

/// `H_q(Σ_n; k)` for `q < max_degree`.
pub fn group_homology(n: usize, ring: RingSpec, max_degree: usize) -> Result<Vec<HomologyGroup>> {
    let c = group_bar_complex(n, ring, max_degree)?;
    (0..max_degree as i64).map(|q| c.homology(q)).collect()
}

/// `H^q(Σ_n; k)` for `q < max_degree`.
pub fn group_cohomology(n: usize, ring: RingSpec, max_degree: usize) -> Result<Vec<HomologyGroup>> {
    let c = group_bar_complex(n, ring, max_degree)?.dualize();
    (0..max_degree as i64).map(|q| c.homology(-q)).collect()
}
