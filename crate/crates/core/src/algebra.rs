//! The diagram algebras `P_n(δ)`, `T_n(δ, r)`, `TPP_n`, `U_n` as free
//! `k`-modules on enumerated diagram bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::coeff::{RingSpec, Scalar};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::setpart::{bell, RestrictedGrowth};

/// Largest `n` whose `Bell(2n)` set partitions we are willing to enumerate.
pub const MAX_ENUMERATION_N: usize = 5;

// above this dimension products are composed on demand instead of tabulated
const MAX_TABLE_DIM: usize = 1024;

/// Which subalgebra of the partition algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FamilySpec {
    /// `P`: every diagram.
    Partition,
    /// `T:r`: every block has `κ ≡ 0 (mod r)`.
    Tanabe(usize),
    /// `TPP`: every block meets both columns.
    TotallyPropagating,
    /// `U`: every block has as many left as right vertices.
    UniformBlock,
    /// `S`: permutation diagrams only, a copy of `k[Σ_n]`.
    Permutations,
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Tanabe(0) => Err(Error::invalid("Tanabe parameter r must be >= 1")),
            _ => Ok(()),
        }
    }

    /// Whether products can create closed middle components, so that `δ`
    /// actually enters the multiplication.
    pub fn uses_delta(&self) -> bool {
        matches!(self, FamilySpec::Partition | FamilySpec::Tanabe(_))
    }

    /// Families with no isolated vertices, covered by the `L(i,j)` alone.
    pub fn is_merge_covered(&self) -> bool {
        match self {
            FamilySpec::Tanabe(r) => *r >= 2,
            FamilySpec::TotallyPropagating | FamilySpec::UniformBlock => true,
            _ => false,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Partition => write!(f, "P"),
            FamilySpec::Tanabe(r) => write!(f, "T:{r}"),
            FamilySpec::TotallyPropagating => write!(f, "TPP"),
            FamilySpec::UniformBlock => write!(f, "U"),
            FamilySpec::Permutations => write!(f, "S"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fam = match s.trim() {
            "P" => FamilySpec::Partition,
            "TPP" => FamilySpec::TotallyPropagating,
            "U" => FamilySpec::UniformBlock,
            "S" => FamilySpec::Permutations,
            t => {
                let r = t
                    .strip_prefix("T:")
                    .ok_or_else(|| Error::parse(s, 0, "expected P, T:r, TPP, U or S"))?;
                let r = r
                    .parse::<usize>()
                    .map_err(|_| Error::parse(s, 2, "expected a positive integer r"))?;
                FamilySpec::Tanabe(r)
            }
        };
        fam.validate().map_err(|_| Error::parse(s, 2, "r must be >= 1"))?;
        Ok(fam)
    }
}

impl TryFrom<String> for FamilySpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FamilySpec> for String {
    fn from(f: FamilySpec) -> String {
        f.to_string()
    }
}

/// `d_i d_j = δ^alpha d_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Product {
    pub alpha: u8,
    pub index: u32,
}

/// The enumerated diagram basis of one family, with its lazily built
/// product table. Shared between contexts that differ only in ring or δ.
#[derive(Debug)]
pub struct Basis {
    n: usize,
    family: FamilySpec,
    diagrams: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
    identity: usize,
    permutation: Vec<bool>,
    products: OnceLock<Vec<Product>>,
}

impl Basis {
    fn enumerate(n: usize, family: FamilySpec) -> Result<Basis> {
        family.validate()?;
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        if n > MAX_ENUMERATION_N {
            return Err(Error::ResourceGuard {
                what: format!("enumerating set partitions of {} vertices", 2 * n),
                projected: bell(2 * n),
                limit: bell(2 * MAX_ENUMERATION_N),
            });
        }
        let diagrams: Vec<Diagram> = RestrictedGrowth::new(2 * n)
            .map(|rgs| Diagram::from_rgs(n, rgs))
            .filter(|d| d.satisfies(&family))
            .collect();
        let index: HashMap<Diagram, usize> =
            diagrams.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        let identity = index[&Diagram::identity(n)];
        let permutation = diagrams.iter().map(Diagram::is_permutation).collect();
        Ok(Basis {
            n,
            family,
            diagrams,
            index,
            identity,
            permutation,
            products: OnceLock::new(),
        })
    }

    /// Returns the process-wide shared basis for `(n, family)`.
    pub fn shared(n: usize, family: FamilySpec) -> Result<Arc<Basis>> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, FamilySpec), Arc<Basis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(b) = cache.lock().unwrap().get(&(n, family)) {
            return Ok(Arc::clone(b));
        }
        // enumerate outside the lock; a racing duplicate is harmless
        let basis = Arc::new(Basis::enumerate(n, family)?);
        let mut guard = cache.lock().unwrap();
        Ok(Arc::clone(guard.entry((n, family)).or_insert(basis)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> FamilySpec {
        self.family
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn diagrams(&self) -> &[Diagram] {
        &self.diagrams
    }

    pub fn diagram(&self, i: usize) -> &Diagram {
        &self.diagrams[i]
    }

    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn is_permutation(&self, i: usize) -> bool {
        self.permutation[i]
    }

    /// Product of basis elements `i` and `j`.
    pub fn product(&self, i: usize, j: usize) -> Product {
        if self.len() > MAX_TABLE_DIM {
            let c = self.diagrams[i].compose_unchecked(&self.diagrams[j]);
            return Product {
                alpha: c.alpha as u8,
                index: self.index[&c.diagram] as u32,
            };
        }
        let table = self.products.get_or_init(|| self.build_products());
        table[i * self.len() + j]
    }

    fn build_products(&self) -> Vec<Product> {
        let dim = self.len();
        let mut table = Vec::with_capacity(dim * dim);
        for a in &self.diagrams {
            for b in &self.diagrams {
                let c = a.compose_unchecked(b);
                let index = *self
                    .index
                    .get(&c.diagram)
                    .expect("family closed under composition") as u32;
                table.push(Product {
                    alpha: c.alpha as u8,
                    index,
                });
            }
        }
        table
    }
}

/// The canonical basis of a family, as a list of diagrams.
pub fn enumerate_basis(n: usize, family: FamilySpec) -> Result<Vec<Diagram>> {
    Ok(Basis::shared(n, family)?.diagrams().to_vec())
}

/// An algebra `A = family_n(δ)` over a ring. Cheap to clone.
#[derive(Clone)]
pub struct AlgebraContext {
    inner: Arc<ContextInner>,
}

struct ContextInner {
    ring: RingSpec,
    delta: Scalar,
    basis: Arc<Basis>,
    delta_powers: Vec<Scalar>,
    structure: OnceLock<Arc<StructureMatrices>>,
}

impl fmt::Debug for AlgebraContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraContext({})", self.label())
    }
}

impl PartialEq for AlgebraContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.n() == other.n()
                && self.family() == other.family()
                && self.ring() == other.ring()
                && self.delta() == other.delta())
    }
}

impl AlgebraContext {
    pub fn new(n: usize, family: FamilySpec, ring: RingSpec, delta: Scalar) -> Result<Self> {
        if delta.ring() != ring {
            return Err(Error::RingMismatch {
                left: ring.to_string(),
                right: delta.ring().to_string(),
            });
        }
        let basis = Basis::shared(n, family)?;
        let delta_powers = (0..=2 * n as u32).map(|k| delta.pow(k)).collect();
        Ok(AlgebraContext {
            inner: Arc::new(ContextInner {
                ring,
                delta,
                basis,
                delta_powers,
                structure: OnceLock::new(),
            }),
        })
    }

    /// Convenience constructor taking `δ` as an integer.
    pub fn with_int_delta(n: usize, family: FamilySpec, ring: RingSpec, delta: i64) -> Result<Self> {
        AlgebraContext::new(n, family, ring, ring.from_i64(delta))
    }

    /// The same algebra with a different ground ring (δ read as an integer).
    pub fn over(&self, ring: RingSpec) -> Result<Self> {
        let delta = self
            .delta()
            .to_bigint()
            .ok_or_else(|| Error::invalid(format!("δ = {} has no image in {ring}", self.delta())))?;
        AlgebraContext::new(self.n(), self.family(), ring, ring.from_bigint(&delta))
    }

    pub fn n(&self) -> usize {
        self.inner.basis.n()
    }

    pub fn family(&self) -> FamilySpec {
        self.inner.basis.family()
    }

    pub fn ring(&self) -> RingSpec {
        self.inner.ring
    }

    pub fn delta(&self) -> &Scalar {
        &self.inner.delta
    }

    pub fn basis(&self) -> &Basis {
        &self.inner.basis
    }

    pub fn dim(&self) -> usize {
        self.basis().len()
    }

    /// `δ^alpha` in the ground ring.
    pub fn delta_power(&self, alpha: usize) -> &Scalar {
        &self.inner.delta_powers[alpha]
    }

    /// e.g. `T:2 n=3 δ=0 over Z/2`.
    pub fn label(&self) -> String {
        format!("{} n={} δ={} over {}", self.family(), self.n(), self.delta(), self.ring())
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            ctx: self.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis_element(self.basis().identity_index())
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(i, self.ring().one());
        AlgebraElement {
            ctx: self.clone(),
            coeffs,
        }
    }

    /// `d` as an element; fails if `d` is not in this family.
    pub fn element(&self, d: &Diagram) -> Result<AlgebraElement> {
        let i = self.basis().index_of(d).ok_or_else(|| {
            Error::ContextMismatch(format!("{d} is not a basis diagram of {}", self.family()))
        })?;
        Ok(self.basis_element(i))
    }

    /// A linear combination of diagrams.
    pub fn combination(&self, terms: &[(Scalar, Diagram)]) -> Result<AlgebraElement> {
        let mut acc = self.zero();
        for (c, d) in terms {
            acc = acc.add(&self.element(d)?.scale(c)?)?;
        }
        Ok(acc)
    }

    /// The augmentation as a `1 × dim` matrix.
    pub fn augmentation_matrix(&self) -> Matrix {
        let ring = self.ring();
        let mut m = Matrix::zeros(ring, 1, self.dim());
        for j in 0..self.dim() {
            if self.basis().is_permutation(j) {
                m.push(0, j, ring.one());
            }
        }
        m
    }

    /// Left and right regular representations of every basis element.
    pub fn structure_matrices(&self) -> Arc<StructureMatrices> {
        Arc::clone(self.inner.structure.get_or_init(|| Arc::new(self.build_structure())))
    }

    fn build_structure(&self) -> StructureMatrices {
        let dim = self.dim();
        let ring = self.ring();
        let basis = self.basis();
        let mut left = Vec::with_capacity(dim);
        let mut right = Vec::with_capacity(dim);
        for b in 0..dim {
            let mut l = Matrix::zeros(ring, dim, dim);
            let mut r = Matrix::zeros(ring, dim, dim);
            for x in 0..dim {
                let p = basis.product(b, x);
                let c = self.delta_power(p.alpha as usize);
                if !c.is_zero() {
                    l.push(p.index as usize, x, c.clone());
                }
                let p = basis.product(x, b);
                let c = self.delta_power(p.alpha as usize);
                if !c.is_zero() {
                    r.push(p.index as usize, x, c.clone());
                }
            }
            left.push(l);
            right.push(r);
        }
        StructureMatrices { left, right }
    }
}

/// `left[b]` is the matrix of `x ↦ b·x`, `right[b]` of `x ↦ x·b`.
#[derive(Debug, Clone)]
pub struct StructureMatrices {
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

/// A finitely supported combination of basis diagrams. Zero coefficients
/// are never stored.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    ctx: AlgebraContext,
    coeffs: BTreeMap<usize, Scalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.coeffs == other.coeffs
    }
}

impl AlgebraElement {
    pub fn context(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms as `(basis index, coefficient)` in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn coefficient(&self, d: &Diagram) -> Scalar {
        self.ctx
            .basis()
            .index_of(d)
            .and_then(|i| self.coeffs.get(&i).cloned())
            .unwrap_or_else(|| self.ctx.ring().zero())
    }

    fn check_same(&self, other: &AlgebraElement) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!(
                "{} vs {}",
                self.ctx.label(),
                other.ctx.label()
            )));
        }
        Ok(())
    }

    fn accumulate(coeffs: &mut BTreeMap<usize, Scalar>, i: usize, c: Scalar) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match coeffs.get_mut(&i) {
            Some(v) => {
                let s = v.try_add(&c)?;
                if s.is_zero() {
                    coeffs.remove(&i);
                } else {
                    *v = s;
                }
            }
            None => {
                coeffs.insert(i, c);
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(other)?;
        let mut coeffs = self.coeffs.clone();
        for (&i, c) in &other.coeffs {
            Self::accumulate(&mut coeffs, i, c.clone())?;
        }
        Ok(AlgebraElement {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Result<AlgebraElement> {
        let mut coeffs = BTreeMap::new();
        for (&i, v) in &self.coeffs {
            Self::accumulate(&mut coeffs, i, v.try_mul(c)?)?;
        }
        Ok(AlgebraElement {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    /// Bilinear extension of `d1 d2 = δ^alpha d3`.
    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(other)?;
        let basis = self.ctx.basis();
        let mut coeffs = BTreeMap::new();
        for (&i, a) in &self.coeffs {
            for (&j, b) in &other.coeffs {
                let p = basis.product(i, j);
                let w = self.ctx.delta_power(p.alpha as usize);
                if w.is_zero() {
                    continue;
                }
                let c = a.try_mul(b)?.try_mul(w)?;
                Self::accumulate(&mut coeffs, p.index as usize, c)?;
            }
        }
        Ok(AlgebraElement {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    /// `ε(x)`: the sum of the coefficients on permutation diagrams.
    pub fn augmentation(&self) -> Scalar {
        let basis = self.ctx.basis();
        self.coeffs
            .iter()
            .filter(|(&i, _)| basis.is_permutation(i))
            .fold(self.ctx.ring().zero(), |acc, (_, c)| acc.try_add(c).expect("same ring"))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (&i, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·[{}]", self.ctx.basis().diagram(i))?;
        }
        Ok(())
    }
}
