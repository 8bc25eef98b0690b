//! Test-side oracles. None of these call into the library's composition,
//! enumeration or elimination code: they work from raw blocks and small
//! dense arithmetic so that agreement means something.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use diagram_homology::{Column, Diagram, FamilySpec, Vertex};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Vertices as signed integers: `i` on the left, `-i` on the right.
pub type Blocks = BTreeSet<BTreeSet<i32>>;

pub fn signed(v: Vertex) -> i32 {
    match v.column {
        Column::Left => v.index as i32,
        Column::Right => -(v.index as i32),
    }
}

pub fn blocks_of(d: &Diagram) -> Blocks {
    d.blocks()
        .into_iter()
        .map(|b| b.into_iter().map(signed).collect())
        .collect()
}

/// Every set partition of `items`, built by inserting one element at a time
/// into an existing block or a fresh one.
pub fn set_partitions(items: &[i32]) -> Vec<Vec<Vec<i32>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for k in 0..p.len() {
            let mut q = p.clone();
            q[k].push(first);
            out.push(q);
        }
        let mut q = p;
        q.push(vec![first]);
        out.push(q);
    }
    out
}

/// All partition `n`-diagrams as block sets.
pub fn all_diagram_blocks(n: usize) -> Vec<Blocks> {
    let verts: Vec<i32> = (1..=n as i32).chain((1..=n as i32).map(|i| -i)).collect();
    set_partitions(&verts)
        .into_iter()
        .map(|p| p.into_iter().map(|b| b.into_iter().collect()).collect())
        .collect()
}

/// Bell numbers from the recurrence `B(m+1) = Σ C(m,k) B(k)`.
pub fn bell(m: usize) -> u128 {
    let mut b = vec![1u128];
    for k in 0..m {
        let mut c = 1u128;
        let mut s = 0u128;
        for j in 0..=k {
            s += c * b[j];
            c = c * (k - j) as u128 / (j + 1) as u128;
        }
        b.push(s);
    }
    b[m]
}

pub fn in_family(blocks: &Blocks, fam: FamilySpec) -> bool {
    blocks.iter().all(|b| {
        let left = b.iter().filter(|&&v| v > 0).count();
        let right = b.len() - left;
        match fam {
            FamilySpec::Partition => true,
            FamilySpec::Tanabe(r) => left.abs_diff(right) % r == 0,
            FamilySpec::TotallyPropagating => left > 0 && right > 0,
            FamilySpec::UniformBlock => left == right,
            FamilySpec::Permutations => left == 1 && right == 1,
        }
    })
}

/// Permutation diagram: every block is one left and one right vertex.
pub fn epsilon(blocks: &Blocks) -> bool {
    in_family(blocks, FamilySpec::Permutations)
}

/// `d1 d2` by breadth-first search on the stacked graph. Nodes are
/// `(layer, i)` with layer 0 the left of `d1`, 1 the middle and 2 the right
/// of `d2`.
pub fn compose(n: usize, d1: &Blocks, d2: &Blocks) -> (usize, Blocks) {
    let node = |layer: usize, i: usize| layer * n + (i - 1);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 3 * n];
    let place = |v: i32, shift: usize| -> usize {
        if v > 0 {
            node(shift, v as usize)
        } else {
            node(shift + 1, (-v) as usize)
        }
    };
    for (blocks, shift) in [(d1, 0), (d2, 1)] {
        for b in blocks {
            let nodes: Vec<usize> = b.iter().map(|&v| place(v, shift)).collect();
            for w in nodes.windows(2) {
                adj[w[0]].push(w[1]);
                adj[w[1]].push(w[0]);
            }
        }
    }
    let mut comp = vec![usize::MAX; 3 * n];
    let mut count = 0;
    for s in 0..3 * n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    let mut outer: Vec<BTreeSet<i32>> = vec![BTreeSet::new(); count];
    for i in 1..=n {
        outer[comp[node(0, i)]].insert(i as i32);
        outer[comp[node(2, i)]].insert(-(i as i32));
    }
    let alpha = (1..=n)
        .map(|i| comp[node(1, i)])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .filter(|&c| outer[c].is_empty())
        .count();
    (alpha, outer.into_iter().filter(|b| !b.is_empty()).collect())
}

/// Rank over `Q` by plain fraction Gaussian elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                for k in 0..ncols {
                    let sub = &f * &m[rank][k];
                    m[i][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    // cofactor expansion along the first row; matrices here are at most 6x6
    match m.len() {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        k => {
            let mut total = BigInt::zero();
            for j in 0..k {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Invariant factors as ratios of successive gcds of `k x k` minors.
pub fn invariant_factors_by_minors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=nrows.min(ncols) {
        let mut g = BigInt::zero();
        for rs in combinations(nrows, k) {
            for cs in combinations(ncols, k) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| big[r][c].clone()).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs());
        prev = g;
    }
    out
}

/// Known `H_q(Σ_n; F)` dimensions for `n` in {2, 3}, `q < 8`; cohomology
/// has the same dimensions over a field. `p = 0` stands for `Q`.
pub fn sigma_field_dims(n: usize, p: u64) -> Vec<usize> {
    match (n, p) {
        // the Sylow 2-subgroup of Σ_3 is Σ_2 and detects all mod 2 classes
        (2 | 3, 2) => vec![1; 8],
        (2, _) => [1, 0, 0, 0, 0, 0, 0, 0].to_vec(),
        // Σ_3 mod 3: periodic of period 4, classes in degrees 0 and 3 mod 4
        (3, 3) => [1, 0, 0, 1, 1, 0, 0, 1].to_vec(),
        (3, _) => [1, 0, 0, 0, 0, 0, 0, 0].to_vec(),
        _ => panic!("no frozen table for n = {n}"),
    }
}
