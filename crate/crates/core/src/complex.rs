//! Finitely generated free chain complexes and their homology.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coeff::RingSpec;
use crate::error::{Error, Result};
use crate::linalg::{rank_profile, LinRing, RankProfile};
use crate::matrix::{Matrix, MatrixRecord};

/// `C_lo <- C_lo+1 <- ... <- C_hi` with `d_q : C_q -> C_{q-1}`.
///
/// Modules outside `[lo, hi]` are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainComplex {
    ring: RingSpec,
    lo: i64,
    dims: Vec<usize>,
    // diffs[k] is d_{lo+k+1}
    diffs: Vec<Matrix>,
}

impl ChainComplex {
    /// `dims[k]` is the rank in degree `lo + k`; `diffs[k]` is
    /// `d_{lo+k+1}`. Checks shapes, rings and `d∘d = 0`.
    pub fn new(ring: RingSpec, lo: i64, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        let c = ChainComplex { ring, lo, dims, diffs };
        c.validate()?;
        Ok(c)
    }

    /// A single module in degree `lo` when `dims` has one entry, or the zero
    /// complex when it is empty.
    pub fn concentrated(ring: RingSpec, lo: i64, dim: usize) -> Self {
        ChainComplex {
            ring,
            lo,
            dims: vec![dim],
            diffs: Vec::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let expected = self.dims.len().saturating_sub(1);
        if self.diffs.len() != expected {
            return Err(Error::invalid(format!(
                "{} modules need {expected} differentials, got {}",
                self.dims.len(),
                self.diffs.len()
            )));
        }
        for (k, d) in self.diffs.iter().enumerate() {
            let q = self.lo + k as i64 + 1;
            if d.ring() != self.ring {
                return Err(Error::RingMismatch {
                    left: self.ring.to_string(),
                    right: d.ring().to_string(),
                });
            }
            if d.nrows() != self.dims[k] || d.ncols() != self.dims[k + 1] {
                return Err(Error::invalid(format!(
                    "d_{q} is {}x{} but C_{q} -> C_{} needs {}x{}",
                    d.nrows(),
                    d.ncols(),
                    q - 1,
                    self.dims[k],
                    self.dims[k + 1]
                )));
            }
        }
        for (k, pair) in self.diffs.windows(2).enumerate() {
            if !pair[0].mul(&pair[1])?.is_zero() {
                let q = self.lo + k as i64 + 1;
                return Err(Error::Consistency(format!("d_{q} d_{} is not zero", q + 1)));
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn dim(&self, q: i64) -> usize {
        if q < self.lo || q > self.hi() {
            0
        } else {
            self.dims[(q - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_q`, or `None` when it is a map to or from zero.
    pub fn differential(&self, q: i64) -> Option<&Matrix> {
        if q <= self.lo || q > self.hi() {
            None
        } else {
            Some(&self.diffs[(q - self.lo - 1) as usize])
        }
    }

    fn profile(&self, q: i64) -> Result<RankProfile> {
        match self.differential(q) {
            Some(d) => rank_profile(d),
            None => Ok(RankProfile {
                rank: 0,
                torsion: Vec::new(),
            }),
        }
    }

    /// `H_q`.
    pub fn homology(&self, q: i64) -> Result<HomologyGroup> {
        LinRing::for_ring(self.ring)?;
        let out = self.profile(q)?;
        let inc = self.profile(q + 1)?;
        Ok(HomologyGroup::from_ranks(self.dim(q), &out, inc))
    }

    /// Homology in every degree `lo..=hi`, computing each rank once.
    pub fn homology_all(&self) -> Result<Vec<(i64, HomologyGroup)>> {
        LinRing::for_ring(self.ring)?;
        let profiles: Vec<RankProfile> = (self.lo..=self.hi() + 1).map(|q| self.profile(q)).collect::<Result<_>>()?;
        Ok(self
            .degrees()
            .enumerate()
            .map(|(k, q)| {
                (
                    q,
                    HomologyGroup::from_ranks(self.dim(q), &profiles[k], profiles[k + 1].clone()),
                )
            })
            .collect())
    }

    /// The `Hom(-, R)` dual, regraded so that `H^q(C) = H_{-q}(dual)`.
    pub fn dualize(&self) -> ChainComplex {
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let diffs: Vec<Matrix> = self.diffs.iter().rev().map(Matrix::transpose).collect();
        ChainComplex {
            ring: self.ring,
            lo: -self.hi(),
            dims,
            diffs,
        }
    }

    /// Exactness at every degree in `range`.
    pub fn check_exactness(&self, range: std::ops::RangeInclusive<i64>) -> Result<Exactness> {
        for q in range {
            if !self.homology(q)?.is_zero() {
                return Ok(Exactness {
                    exact: false,
                    first_failure: Some(q),
                });
            }
        }
        Ok(Exactness {
            exact: true,
            first_failure: None,
        })
    }

    /// Same complex over another ring, entries read as integers.
    pub fn change_ring(&self, ring: RingSpec) -> Result<ChainComplex> {
        ChainComplex::new(
            ring,
            self.lo,
            self.dims.clone(),
            self.diffs.iter().map(|d| d.change_ring(ring)).collect::<Result<_>>()?,
        )
    }

    pub fn to_record(&self) -> ComplexRecord {
        ComplexRecord {
            ring: self.ring,
            lo: self.lo,
            dims: self.dims.clone(),
            differentials: self
                .diffs
                .iter()
                .enumerate()
                .map(|(k, d)| DifferentialRecord {
                    degree: self.lo + k as i64 + 1,
                    matrix: d.to_record(),
                })
                .collect(),
        }
    }

    pub fn from_record(rec: &ComplexRecord) -> Result<ChainComplex> {
        let mut diffs = Vec::with_capacity(rec.differentials.len());
        for (k, d) in rec.differentials.iter().enumerate() {
            let q = rec.lo + k as i64 + 1;
            if d.degree != q {
                return Err(Error::invalid(format!("expected d_{q}, found d_{}", d.degree)));
            }
            diffs.push(Matrix::from_record(rec.ring, &d.matrix)?);
        }
        ChainComplex::new(rec.ring, rec.lo, rec.dims.clone(), diffs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exactness {
    pub exact: bool,
    pub first_failure: Option<i64>,
}

/// JSON exchange form of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub ring: RingSpec,
    pub lo: i64,
    pub dims: Vec<usize>,
    pub differentials: Vec<DifferentialRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialRecord {
    pub degree: i64,
    #[serde(flatten)]
    pub matrix: MatrixRecord,
}

/// `R^free_rank ⊕ R/t_1 ⊕ ... ⊕ R/t_k` with `t_1 | t_2 | ... | t_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    #[serde(with = "torsion_serde")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup::free(0)
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn with_torsion(rank: usize, torsion: &[u64]) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    fn from_ranks(dim: usize, out: &RankProfile, inc: RankProfile) -> Self {
        HomologyGroup {
            free_rank: dim - out.rank - inc.rank,
            torsion: inc.torsion,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Rendered with `ring` as the base, e.g. `Z^2 + Z/2`.
    pub fn describe(&self, ring: RingSpec) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let base = match ring {
            RingSpec::Integers => "Z".to_string(),
            RingSpec::Rationals => "Q".to_string(),
            RingSpec::ModM(m) => format!("F{m}"),
        };
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(base.clone()),
            r => parts.push(format!("{base}^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        parts.join(" + ")
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe(RingSpec::Integers))
    }
}

/// Torsion coefficients as JSON numbers, falling back to decimal strings
/// beyond `u64`.
mod torsion_serde {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Coeff {
        Num(u64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<Coeff> = v
            .iter()
            .map(|t| u64::try_from(t).map_or_else(|_| Coeff::Text(t.to_string()), Coeff::Num))
            .collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Coeff>::deserialize(d)?
            .into_iter()
            .map(|c| match c {
                Coeff::Num(n) => Ok(BigInt::from(n)),
                Coeff::Text(t) => t.parse().map_err(serde::de::Error::custom),
            })
            .collect()
    }
}
