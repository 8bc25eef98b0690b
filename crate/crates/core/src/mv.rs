//! Mayer-Vietoris complexes of idempotent left covers.
//!
//! `C_{-1} = A/I` on the permutation diagrams, `C_0 = A`, and
//! `C_p = ⊕_{|S| = p} ⋂_{i in S} J_i` with signed inclusions. Empty
//! intersections contribute no coordinates.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraContext;
use crate::complex::{ChainComplex, ComplexRecord, Exactness};
use crate::cover::{subsets_up_to, CoverSpec};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::matrix::Matrix;

/// `|{s in S : s < j}|`.
pub fn sign_count(subset: &[usize], j: usize) -> Result<usize> {
    if !subset.contains(&j) {
        return Err(Error::invalid(format!("{j} is not in {subset:?}")));
    }
    Ok(subset.iter().filter(|&&s| s < j).count())
}

/// One direct summand `⋂_{i in S} J_i` of `C_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub p: usize,
    /// Positions in the cover's ideal list, ascending.
    pub subset: Vec<usize>,
    /// Algebra basis indices spanning the intersection.
    pub basis: Vec<usize>,
    /// First coordinate of this summand inside `C_p`.
    pub offset: usize,
}

#[derive(Debug, Clone)]
pub struct MvComplex {
    cover: CoverSpec,
    complex: ChainComplex,
    summands: Vec<Summand>,
    quotient_basis: Vec<usize>,
}

/// Assembles the complex and checks `d∘d = 0`.
pub fn build_mv(cover: &CoverSpec) -> Result<MvComplex> {
    let ctx = cover.context();
    let ring = ctx.ring();
    let dim = ctx.dim();
    let w = cover.width();
    let basis = ctx.basis();
    let one = ring.one();

    let quotient_basis: Vec<usize> = (0..dim).filter(|&i| basis.is_permutation(i)).collect();
    let mut d0 = Matrix::zeros(ring, quotient_basis.len(), dim);
    for (r, &i) in quotient_basis.iter().enumerate() {
        d0.push(r, i, one.clone());
    }

    let mut summands: Vec<Summand> = Vec::new();
    let mut dims = vec![quotient_basis.len(), dim];
    for subset in subsets_up_to(w, w) {
        let p = subset.len();
        let members = cover.intersection(&subset);
        if members.is_empty() {
            continue;
        }
        if dims.len() <= p + 1 {
            dims.resize(p + 2, 0);
        }
        let offset = dims[p + 1];
        dims[p + 1] += members.len();
        summands.push(Summand {
            p,
            subset,
            basis: members,
            offset,
        });
    }
    // keep every degree up to the width, even when it is zero
    dims.resize(w + 2, 0);

    let mut diffs = vec![d0];
    for p in 1..=w {
        let mut d = Matrix::zeros(ring, dims[p], dims[p + 1]);
        for s in summands.iter().filter(|s| s.p == p) {
            for &j in &s.subset {
                let sign = sign_count(&s.subset, j)?;
                let coeff = if sign % 2 == 0 { one.clone() } else { one.neg() };
                let face: Vec<usize> = s.subset.iter().copied().filter(|&x| x != j).collect();
                for (k, &m) in s.basis.iter().enumerate() {
                    let row = if p == 1 {
                        m
                    } else {
                        let t = summands
                            .iter()
                            .find(|t| t.subset == face)
                            .ok_or_else(|| Error::Consistency(format!("missing face {face:?}")))?;
                        let pos = t.basis.binary_search(&m).map_err(|_| {
                            Error::Consistency(format!("{} not in the face {face:?}", basis.diagram(m)))
                        })?;
                        t.offset + pos
                    };
                    d.push(row, s.offset + k, coeff.clone());
                }
            }
        }
        diffs.push(d);
    }
    let complex = ChainComplex::new(ring, -1, dims, diffs)?;
    Ok(MvComplex {
        cover: cover.clone(),
        complex,
        summands,
        quotient_basis,
    })
}

impl MvComplex {
    pub fn cover(&self) -> &CoverSpec {
        &self.cover
    }

    pub fn context(&self) -> &AlgebraContext {
        self.cover.context()
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Basis indices of the permutation diagrams spanning `A/I`.
    pub fn quotient_basis(&self) -> &[usize] {
        &self.quotient_basis
    }

    /// Coordinate of `d` inside the summand for `subset`, if present.
    pub fn summand_index(&self, subset: &[usize], d: &Diagram) -> Option<usize> {
        let i = self.context().basis().index_of(d)?;
        let s = self.summands.iter().find(|s| s.subset == subset)?;
        s.basis.binary_search(&i).ok().map(|k| s.offset + k)
    }

    /// Exactness at the module degrees `0..=through` and surjectivity onto
    /// `A/I`.
    pub fn exactness(&self, through: usize) -> Result<MvExactness> {
        let at_quotient = self.complex.homology(-1)?.is_zero();
        let upper = self.complex.check_exactness(0..=through as i64)?;
        Ok(MvExactness {
            surjective: at_quotient,
            modules: upper,
        })
    }

    /// `𝟙 ⊗_A C_p` for `0 <= p <= height`, computed through the idempotent
    /// generators: `𝟙 ⊗_A Ae = ε(e)·k`, and `𝟙 ⊗_A A = k`.
    pub fn tensor_with_trivial(&self, height: usize) -> Result<ChainComplex> {
        let ring = self.context().ring();
        let basis = self.context().basis();
        let mut kept: Vec<Vec<&Summand>> = vec![Vec::new(); height + 1];
        for s in self.summands.iter().filter(|s| s.p <= height) {
            let e = self
                .cover
                .retraction(&s.subset)?
                .ok_or_else(|| Error::Consistency(format!("no idempotent generator for {:?}", s.subset)))?;
            let idx = basis
                .index_of(&e)
                .ok_or_else(|| Error::Consistency(format!("generator {e} is not in the algebra")))?;
            if basis.is_permutation(idx) {
                kept[s.p].push(s);
            }
        }
        let mut dims = vec![1];
        dims.extend(kept.iter().skip(1).map(Vec::len));
        let mut diffs = Vec::new();
        for p in 1..=height {
            let mut d = Matrix::zeros(ring, dims[p - 1], dims[p]);
            for (col, s) in kept[p].iter().enumerate() {
                for &j in &s.subset {
                    let sign = sign_count(&s.subset, j)?;
                    let coeff = if sign % 2 == 0 { ring.one() } else { ring.one().neg() };
                    let row = if p == 1 {
                        Some(0)
                    } else {
                        let face: Vec<usize> = s.subset.iter().copied().filter(|&x| x != j).collect();
                        kept[p - 1].iter().position(|t| t.subset == face)
                    };
                    if let Some(row) = row {
                        d.push(row, col, coeff);
                    }
                }
            }
            diffs.push(d);
        }
        ChainComplex::new(ring, 0, dims, diffs)
    }

    /// Dimension of `𝟙 ⊗_A C_p` for each summand of degree `1..=height`,
    /// from the coinvariant presentation `J / span{b·x - ε(b)x}` with no
    /// reference to generators. Needs a field.
    pub fn coinvariant_dims(&self, height: usize) -> Result<Vec<(Vec<usize>, usize)>> {
        let ctx = self.context();
        let ring = ctx.ring();
        if !ring.is_field() {
            return Err(Error::UnsupportedRing(ring.to_string()));
        }
        let basis = ctx.basis();
        let mut out = Vec::new();
        for s in self.summands.iter().filter(|s| s.p <= height) {
            let mut rel = Matrix::zeros(ring, s.basis.len(), ctx.dim() * s.basis.len());
            let mut col = 0;
            for b in 0..ctx.dim() {
                for (k, &m) in s.basis.iter().enumerate() {
                    let prod = basis.product(b, m);
                    let c = ctx.delta_power(prod.alpha as usize);
                    let pos = s
                        .basis
                        .binary_search(&(prod.index as usize))
                        .map_err(|_| Error::Consistency("summand is not a left ideal".into()))?;
                    rel.push(pos, col, c.clone());
                    if basis.is_permutation(b) {
                        rel.push(k, col, ring.one().neg());
                    }
                    col += 1;
                }
            }
            out.push((s.subset.clone(), s.basis.len() - rank(&rel)?));
        }
        Ok(out)
    }

    /// For every summand up to `height`: does `A·e` have the summand's rank
    /// over the context ring? `e` is the idempotent generator.
    pub fn projectivity_witnesses(&self, height: usize) -> Result<Vec<(Vec<usize>, bool)>> {
        let ctx = self.context();
        let ring = ctx.ring();
        let basis = ctx.basis();
        let mut out = Vec::new();
        for s in self.summands.iter().filter(|s| s.p <= height) {
            let Some(e) = self.cover.retraction(&s.subset)? else {
                out.push((s.subset.clone(), false));
                continue;
            };
            let Some(ei) = basis.index_of(&e) else {
                out.push((s.subset.clone(), false));
                continue;
            };
            let mut m = Matrix::zeros(ring, ctx.dim(), ctx.dim());
            let mut inside = true;
            for b in 0..ctx.dim() {
                let prod = basis.product(b, ei);
                let c = ctx.delta_power(prod.alpha as usize);
                if !c.is_zero() {
                    inside &= s.basis.binary_search(&(prod.index as usize)).is_ok();
                    m.push(prod.index as usize, b, c.clone());
                }
            }
            out.push((s.subset.clone(), inside && rank(&m)? == s.basis.len()));
        }
        Ok(out)
    }

    pub fn to_record(&self) -> MvRecord {
        MvRecord {
            context: self.context().label(),
            ideals: self.cover.ideals().iter().map(ToString::to_string).collect(),
            complex: self.complex.to_record(),
            summands: self
                .summands
                .iter()
                .map(|s| SummandRecord {
                    p: s.p,
                    subset: self.cover.ideals_of(&s.subset).iter().map(ToString::to_string).collect(),
                    dim: s.basis.len(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MvExactness {
    pub surjective: bool,
    pub modules: Exactness,
}

impl MvExactness {
    pub fn holds(&self) -> bool {
        self.surjective && self.modules.exact
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MvRecord {
    pub context: String,
    pub ideals: Vec<String>,
    pub complex: ComplexRecord,
    pub summands: Vec<SummandRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandRecord {
    pub p: usize,
    #[serde(rename = "S")]
    pub subset: Vec<String>,
    pub dim: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RingSpec;

    fn mv(n: usize, fam: &str, ring: RingSpec, delta: i64) -> MvComplex {
        let ctx = AlgebraContext::with_int_delta(n, fam.parse().unwrap(), ring, delta).unwrap();
        build_mv(&CoverSpec::standard(&ctx)).unwrap()
    }

    #[test]
    fn sign_counts() {
        assert_eq!(sign_count(&[1, 3, 5], 3).unwrap(), 1);
        assert_eq!(sign_count(&[1, 3, 5], 1).unwrap(), 0);
        assert_eq!(sign_count(&[1, 3, 5], 5).unwrap(), 2);
        assert!(sign_count(&[1, 3, 5], 2).is_err());
    }

    #[test]
    fn tanabe_two_is_a_resolution() {
        let m = mv(2, "T:2", RingSpec::Integers, 0);
        assert_eq!(m.complex().dims(), &[2, 4, 2]);
        assert!(m.exactness(1).unwrap().holds());
        let t = m.tensor_with_trivial(1).unwrap();
        assert_eq!(t.dims(), &[1, 0]);
    }

    #[test]
    fn tanabe_three_full_width() {
        let m = mv(3, "T:2", RingSpec::ModM(2), 1);
        assert_eq!(m.cover().width(), 3);
        assert!(m.exactness(3).unwrap().holds());
        assert!(m.coinvariant_dims(3).unwrap().iter().all(|(_, d)| *d == 0));
        assert!(m.projectivity_witnesses(3).unwrap().iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn partition_two_through_height() {
        let m = mv(2, "P", RingSpec::Integers, 0);
        assert_eq!(m.cover().width(), 3);
        assert!(m.exactness(1).unwrap().holds());
        let d = AlgebraContext::with_int_delta(2, "P".parse().unwrap(), RingSpec::Integers, 0).unwrap();
        let i = d.basis().diagrams().iter().position(|x| x.to_string() == "2:{1 2 -1 -2}").unwrap();
        assert!(m.summand_index(&[2], d.basis().diagram(i)).is_some());
        assert!(m.summand_index(&[0], d.basis().diagram(i)).is_none());
    }

    #[test]
    fn record_lists_summands() {
        let m = mv(2, "U", RingSpec::Integers, 0);
        let rec = m.to_record();
        assert_eq!(rec.summands.len(), 1);
        assert_eq!(rec.summands[0].subset, vec!["L(1,2)"]);
        assert_eq!(rec.summands[0].dim, 1);
    }
}
