//! The normalized bar complex `𝟙 ⊗_A B(A) ⊗_A 𝟙`.
//!
//! In degree `q` it is free on tuples `[x_1 | ... | x_q]` of augmentation
//! ideal basis vectors `x_b = b - ε(b)·1`, `b ≠ 1`. Both outer faces die
//! because `A` acts on `𝟙` through `ε`, leaving
//! `d[x_1|...|x_q] = Σ_{i=1}^{q-1} (-1)^i [...|x_i x_{i+1}|...]`.

use crate::algebra::AlgebraContext;
use crate::coeff::{RingSpec, Scalar};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Largest total rank `Σ_q m^q` a bar complex may have.
pub const BAR_RANK_LIMIT: u128 = 2_000_000;

/// `products[a][b]` is `x_a x_b` expanded in the `x` basis.
pub type XProducts = Vec<Vec<Vec<(usize, Scalar)>>>;

/// `Σ_{q=0}^{max_degree} m^q`.
pub fn total_rank(m: usize, max_degree: usize) -> u128 {
    (0..=max_degree as u32).map(|q| (m as u128).saturating_pow(q)).fold(0u128, u128::saturating_add)
}

#[derive(Debug, Clone)]
pub struct BarComplex {
    pub context: AlgebraContext,
    pub max_degree: usize,
    /// Basis indices `b ≠ 1` labelling the generators `x_b`.
    pub generators: Vec<usize>,
    pub complex: ChainComplex,
}

/// Truncated bar complex in degrees `0..=max_degree`.
pub fn bar_complex(ctx: &AlgebraContext, max_degree: usize) -> Result<BarComplex> {
    let basis = ctx.basis();
    let ring = ctx.ring();
    let id = basis.identity_index();
    let generators: Vec<usize> = (0..ctx.dim()).filter(|&b| b != id).collect();
    let m = generators.len();
    guard(m, max_degree)?;
    let mut xpos = vec![usize::MAX; ctx.dim()];
    for (k, &b) in generators.iter().enumerate() {
        xpos[b] = k;
    }
    let eps = |b: usize| if basis.is_permutation(b) { ring.one() } else { ring.zero() };
    let mut products: XProducts = vec![vec![Vec::new(); m]; m];
    for (ka, &a) in generators.iter().enumerate() {
        for (kb, &b) in generators.iter().enumerate() {
            // ab - ε(b)a - ε(a)b + ε(a)ε(b)·1, dropping the 1 coefficient
            let mut acc = vec![ring.zero(); m];
            let p = basis.product(a, b);
            if p.index as usize != id {
                acc[xpos[p.index as usize]] = ctx.delta_power(p.alpha as usize).clone();
            }
            let (ea, eb) = (eps(a), eps(b));
            acc[ka] = acc[ka].try_sub(&eb)?;
            acc[kb] = acc[kb].try_sub(&ea)?;
            products[ka][kb] = acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        }
    }
    let complex = reduced_bar_complex(ring, m, &products, max_degree)?;
    Ok(BarComplex {
        context: ctx.clone(),
        max_degree,
        generators,
        complex,
    })
}

pub(crate) fn guard(m: usize, max_degree: usize) -> Result<()> {
    let projected = total_rank(m, max_degree);
    if projected > BAR_RANK_LIMIT {
        return Err(Error::ResourceGuard {
            what: format!("bar complex on {m} generators through degree {max_degree}"),
            projected,
            limit: BAR_RANK_LIMIT,
        });
    }
    Ok(())
}

/// Assembles the bar differentials from an `x`-basis product table.
pub(crate) fn reduced_bar_complex(ring: RingSpec, m: usize, products: &XProducts, max_degree: usize) -> Result<ChainComplex> {
    guard(m, max_degree)?;
    let dims: Vec<usize> = (0..=max_degree as u32).map(|q| m.pow(q)).collect();
    let mut diffs = Vec::with_capacity(max_degree);
    for q in 1..=max_degree {
        let mut d = Matrix::zeros(ring, dims[q - 1], dims[q]);
        let mut tuple = vec![0usize; q];
        for col in 0..dims[q] {
            decode(col, m, &mut tuple);
            for i in 0..q.saturating_sub(1) {
                // face merging positions i and i+1; sign (-1)^(i+1)
                let negate = i % 2 == 0;
                for (k, c) in &products[tuple[i]][tuple[i + 1]] {
                    let mut row = 0usize;
                    for (pos, &t) in tuple.iter().enumerate() {
                        if pos == i + 1 {
                            continue;
                        }
                        row = row * m + if pos == i { *k } else { t };
                    }
                    d.push(row, col, if negate { c.neg() } else { c.clone() });
                }
            }
        }
        diffs.push(d);
    }
    ChainComplex::new(ring, 0, dims, diffs)
}

fn decode(mut index: usize, m: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = index % m;
        index /= m;
    }
}
