//! A free resolution `... -> A^{g_1} -> A^{g_0} = A -> 𝟙` of the trivial
//! left module, built one kernel at a time.
//!
//! Over a field, generators of each kernel are seeded random combinations
//! of a `k`-basis of it, which keeps the ranks `g_q` close to minimal; the
//! bar complex grows like `(dim A)^q` instead. Over `Z` they are basis
//! vectors picked by orbit size, so entries stay small, and the generated
//! lattice is then checked to be the whole kernel. Applying `𝟙 ⊗_A -`
//! collapses `A^{g}` to `k^{g}` and every generator to its image under `ε`
//! in each coordinate.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraContext;
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::int::Int;
use crate::linalg::snf::invariant_factors_of_columns;
use crate::linalg::{collect_sparse, kernel, Domain, Echelon, Integers, LinRing, PrimeField, Rationals, SparseVec};
use crate::matrix::Matrix;

/// Largest rank `g_q · dim A` of a single free module we will build.
pub const RESOLUTION_RANK_LIMIT: usize = 250_000;

const SEED: u64 = 0x5eed_d1a6;

/// Failed random draws in a row before scanning the kernel basis instead.
const MAX_MISSES: usize = 6;

/// Kernel vectors compared per generator over `Z`.
const SAMPLE: usize = 12;

/// Over `Z`, spans are tracked modulo this prime: full rank mod `p` forces
/// full rank over `Q`, and saturation is settled separately.
const TRACKING_PRIME: u64 = 2_147_483_647;

/// The `ε`-reduced complex `k^{g_0} <- k^{g_1} <- ... <- k^{g_Q}` together
/// with the generator counts.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub ranks: Vec<usize>,
    pub reduced: ChainComplex,
}

/// Resolves `𝟙` through free degree `max_degree`.
pub fn resolve(ctx: &AlgebraContext, max_degree: usize) -> Result<Resolution> {
    match LinRing::for_ring(ctx.ring())? {
        LinRing::Prime(f) => Resolver::new(f, ctx)?.run(max_degree),
        LinRing::Rational => Resolver::new(Rationals, ctx)?.run(max_degree),
        LinRing::Integer => {
            let mut r = Resolver::new(Integers, ctx)?;
            r.integral = Some(|a: &Int| a.clone());
            r.run(max_degree)
        }
    }
}

struct Resolver<'a, D: Domain> {
    dom: D,
    ctx: &'a AlgebraContext,
    dim: usize,
    delta_pows: Vec<D::Elem>,
    rng: ChaCha8Rng,
    /// Set over `Z`, where spans are lattices.
    integral: Option<fn(&D::Elem) -> Int>,
}

impl<'a, D: Domain + Clone> Resolver<'a, D> {
    fn new(dom: D, ctx: &'a AlgebraContext) -> Result<Self> {
        let delta_pows = (0..=2 * ctx.n())
            .map(|a| dom.from_scalar(ctx.delta_power(a)))
            .collect::<Result<_>>()?;
        Ok(Resolver {
            dom,
            ctx,
            dim: ctx.dim(),
            delta_pows,
            rng: ChaCha8Rng::seed_from_u64(SEED),
            integral: None,
        })
    }

    /// `b · v` for `v` in `A^g`, coordinates `j·dim + d`.
    fn act(&self, b: usize, v: &[(usize, D::Elem)]) -> SparseVec<D::Elem> {
        let basis = self.ctx.basis();
        let mut out = Vec::with_capacity(v.len());
        for (idx, c) in v {
            let (j, d) = (idx / self.dim, idx % self.dim);
            let p = basis.product(b, d);
            let coeff = &self.delta_pows[p.alpha as usize];
            if !self.dom.is_zero(coeff) {
                out.push((j * self.dim + p.index as usize, self.dom.mul(coeff, c)));
            }
        }
        collect_sparse(&self.dom, out)
    }

    fn random_scalar(&mut self) -> D::Elem {
        let v = self.rng.gen_range(-3i64..=3);
        self.dom.from_i64(v)
    }

    fn random_combination(&mut self, kernel: &[SparseVec<D::Elem>]) -> SparseVec<D::Elem> {
        let mut acc = Vec::new();
        for v in kernel {
            let c = self.random_scalar();
            if !self.dom.is_zero(&c) {
                acc.extend(v.iter().map(|(i, x)| (*i, self.dom.mul(&c, x))));
            }
        }
        collect_sparse(&self.dom, acc)
    }

    /// Submodule generators whose `A`-span is the span of `kernel`.
    fn generators(&mut self, kernel: &[SparseVec<D::Elem>], nrows: usize) -> Vec<SparseVec<D::Elem>> {
        match self.integral {
            Some(to_int) => self.lattice_generators(kernel, nrows, to_int),
            None => self.field_generators(kernel),
        }
    }

    fn field_generators(&mut self, kernel: &[SparseVec<D::Elem>]) -> Vec<SparseVec<D::Elem>> {
        let mut span = Echelon::new(self.dom.clone());
        let mut gens: Vec<SparseVec<D::Elem>> = Vec::new();
        let mut misses = 0;
        let mut scan = 0;
        while span.rank() < kernel.len() {
            let cand = if misses < MAX_MISSES {
                self.random_combination(kernel)
            } else {
                // first kernel vector not yet reached
                while scan < kernel.len() && span.contains(kernel[scan].clone()) {
                    scan += 1;
                }
                kernel[scan].clone()
            };
            if cand.is_empty() || span.contains(cand.clone()) {
                misses += 1;
                continue;
            }
            misses = 0;
            for b in 0..self.dim {
                span.insert(self.act(b, &cand));
            }
            gens.push(cand);
        }
        gens
    }

    /// Over `Z` the generated lattice must be the whole kernel lattice, not
    /// just of full rank. Rank is reached modulo a large prime; then every
    /// prime dividing an invariant factor of the generated lattice gets the
    /// kernel vectors it misses mod that prime. Since the kernel is
    /// saturated, `K = L + pK` rules out `p`-torsion in `K / L`.
    fn lattice_generators(
        &mut self,
        kernel: &[SparseVec<D::Elem>],
        nrows: usize,
        to_int: fn(&D::Elem) -> Int,
    ) -> Vec<SparseVec<D::Elem>> {
        let kernel_int: Vec<SparseVec<Int>> =
            kernel.iter().map(|v| v.iter().map(|(i, x)| (*i, to_int(x))).collect()).collect();
        // Kernel basis vectors only: combinations would trade the unit
        // entries that keep integer elimination small. Each round samples a
        // few unreached vectors and keeps the one whose orbit adds most.
        let mut span = Echelon::new(PrimeField::new(TRACKING_PRIME));
        let mut gens: Vec<SparseVec<D::Elem>> = Vec::new();
        let mut open: Vec<usize> = (0..kernel.len()).collect();
        while span.rank() < kernel.len() {
            open.retain(|&i| !span.contains(residues(&kernel_int[i], TRACKING_PRIME)));
            let mut best: Option<(usize, usize)> = None;
            for _ in 0..SAMPLE.min(open.len()) {
                let i = open[self.rng.gen_range(0..open.len())];
                let mut gain = Echelon::new(PrimeField::new(TRACKING_PRIME));
                for b in 0..self.dim {
                    gain.insert(span.reduce(residues(&self.act_int(b, &kernel_int[i]), TRACKING_PRIME)));
                }
                if best.is_none_or(|(g, _)| gain.rank() > g) {
                    best = Some((gain.rank(), i));
                }
            }
            let (_, i) = best.expect("an unreached kernel vector remains");
            for b in 0..self.dim {
                span.insert(residues(&self.act_int(b, &kernel_int[i]), TRACKING_PRIME));
            }
            gens.push(kernel[i].clone());
        }
        // [K : L] is the product of the invariant factors; one pass per
        // prime clears it, since enlarging L only shrinks the index
        let factors = invariant_factors_of_columns(nrows, self.lattice_columns(&gens, to_int));
        let Some(primes) = prime_divisors(&factors) else { return kernel.to_vec() };
        for p in primes {
            let mut span = Echelon::new(PrimeField::new(p));
            for c in &self.lattice_columns(&gens, to_int) {
                span.insert(residues(c, p));
            }
            for (v, vi) in kernel.iter().zip(&kernel_int) {
                if !span.contains(residues(vi, p)) {
                    for b in 0..self.dim {
                        span.insert(residues(&self.act_int(b, vi), p));
                    }
                    gens.push(v.clone());
                }
            }
        }
        gens
    }

    /// The vectors `b · g` spanning the lattice generated by `gens`.
    fn lattice_columns(&self, gens: &[SparseVec<D::Elem>], to_int: fn(&D::Elem) -> Int) -> Vec<SparseVec<Int>> {
        gens.iter()
            .flat_map(|g| {
                let gi: SparseVec<Int> = g.iter().map(|(i, x)| (*i, to_int(x))).collect();
                (0..self.dim).map(move |b| (b, gi.clone()))
            })
            .map(|(b, g)| self.act_int(b, &g))
            .collect()
    }

    /// `b · v` with integer coefficients.
    fn act_int(&self, b: usize, v: &[(usize, Int)]) -> SparseVec<Int> {
        let basis = self.ctx.basis();
        let out = v
            .iter()
            .filter_map(|(idx, c)| {
                let (j, d) = (idx / self.dim, idx % self.dim);
                let p = basis.product(b, d);
                let coeff = to_int_scalar(self.ctx.delta_power(p.alpha as usize));
                (!coeff.is_zero()).then(|| (j * self.dim + p.index as usize, Integers.mul(&coeff, c)))
            })
            .collect();
        collect_sparse(&Integers, out)
    }

    fn run(mut self, max_degree: usize) -> Result<Resolution> {
        let basis = self.ctx.basis();
        let id = basis.identity_index();
        let one = self.dom.one();
        // ker ε on A = F_0
        let mut current: Vec<SparseVec<D::Elem>> = (0..self.dim)
            .filter(|&b| b != id)
            .map(|b| {
                if basis.is_permutation(b) {
                    collect_sparse(&self.dom, vec![(b, one.clone()), (id, self.dom.neg(&one))])
                } else {
                    vec![(b, one.clone())]
                }
            })
            .collect();
        let mut ranks = vec![1usize];
        let mut diffs = Vec::with_capacity(max_degree);
        for q in 1..=max_degree {
            let prev = ranks[q - 1];
            let gens = self.generators(&current, prev * self.dim);
            let g = gens.len();
            if g * self.dim > RESOLUTION_RANK_LIMIT {
                return Err(Error::ResourceGuard {
                    what: format!("free module of rank {g} over an algebra of dimension {}", self.dim),
                    projected: (g * self.dim) as u128,
                    limit: RESOLUTION_RANK_LIMIT as u128,
                });
            }
            // ε-reduction of φ_q: entry (j, i) = Σ_b ε(b) gen_i[j·dim + b]
            let mut d = Matrix::zeros(self.ctx.ring(), prev, g);
            for (i, gen) in gens.iter().enumerate() {
                for (idx, c) in gen {
                    if basis.is_permutation(idx % self.dim) {
                        d.push(idx / self.dim, i, self.dom.to_scalar(c));
                    }
                }
            }
            diffs.push(d);
            ranks.push(g);
            if q < max_degree {
                let columns: Vec<SparseVec<D::Elem>> = gens
                    .iter()
                    .flat_map(|gen| (0..self.dim).map(move |b| (b, gen)))
                    .map(|(b, gen)| self.act(b, gen))
                    .collect();
                // column i·dim + b of φ_q is b·gen_i
                current = kernel(&self.dom, prev * self.dim, &columns);
            }
        }
        let reduced = ChainComplex::new(self.ctx.ring(), 0, ranks.clone(), diffs)?;
        Ok(Resolution { ranks, reduced })
    }
}

fn residues(v: &[(usize, Int)], p: u64) -> SparseVec<u64> {
    v.iter().map(|(i, x)| (*i, x.residue(p))).filter(|(_, r)| *r != 0).collect()
}

fn to_int_scalar(s: &crate::coeff::Scalar) -> Int {
    Int::from_big(s.to_bigint().expect("integral context has integer powers of delta"))
}

/// Distinct primes dividing some factor, or `None` when one does not split
/// into primes below `2^32` by trial division.
fn prime_divisors(factors: &[Int]) -> Option<Vec<u64>> {
    let mut primes = Vec::new();
    for f in factors {
        let mut n = f.abs().to_big().to_u64()?;
        let mut p = 2u64;
        while p * p <= n && p < 1 << 20 {
            if n % p == 0 {
                primes.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            if n >= 1 << 32 {
                return None;
            }
            primes.push(n);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    Some(primes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RingSpec;
    use crate::complex::HomologyGroup;

    #[test]
    fn symmetric_group_two_over_integers() {
        let ctx = AlgebraContext::with_int_delta(2, "S".parse().unwrap(), RingSpec::Integers, 0).unwrap();
        let r = resolve(&ctx, 4).unwrap();
        let h: Vec<HomologyGroup> = (0..4).map(|q| r.reduced.homology(q).unwrap()).collect();
        assert_eq!(
            h,
            vec![
                HomologyGroup::free(1),
                HomologyGroup::with_torsion(0, &[2]),
                HomologyGroup::zero(),
                HomologyGroup::with_torsion(0, &[2])
            ]
        );
    }

    #[test]
    fn ranks_stay_small() {
        let ctx = AlgebraContext::with_int_delta(2, "P".parse().unwrap(), RingSpec::ModM(2), 0).unwrap();
        let r = resolve(&ctx, 4).unwrap();
        assert!(r.ranks.iter().all(|&g| g <= 8), "{:?}", r.ranks);
    }
}
