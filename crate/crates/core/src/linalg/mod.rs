//! Exact sparse linear algebra over `Z/p`, `Q` and `Z`.
//!
//! Everything is built on one primitive, an echelon basis of a submodule of
//! `R^m` kept under unimodular row operations ([`Echelon`]). Over a field
//! that is ordinary Gaussian elimination; over `Z` a pivot that does not
//! divide the incoming entry is replaced by a gcd combination, so the rows
//! stay a `Z`-basis of the lattice spanned so far.

pub mod int;
pub mod snf;

use std::collections::HashMap;
use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::{RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use int::Int;

/// A principal ideal domain we can eliminate over.
pub trait Domain {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `q` with `a = q b`, if one exists (`b != 0`).
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// `[g, s, t, u, v]` with `s a + t b = g`, `u a + v b = 0` and
    /// `s v - t u = 1`. Only called when `b` is not a multiple of `a`.
    fn bezout(&self, a: &Self::Elem, b: &Self::Elem) -> [Self::Elem; 5];
    /// A unit `u` making `u a` the preferred associate of `a`.
    fn normalizer(&self, a: &Self::Elem) -> Self::Elem;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// Pivot preference: smaller is better. Every nonzero field element
    /// is as good as `1`.
    fn magnitude(&self, _a: &Self::Elem) -> u128 {
        1
    }
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem>;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// `Z/p` for a prime `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(crate::coeff::is_prime(p) && p < (1 << 32), "unsupported prime {p}");
        PrimeField { p }
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverting zero");
        let (mut r0, mut r1) = (a as i64, self.p as i64);
        let (mut s0, mut s1) = (1i64, 0i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        s0.rem_euclid(self.p as i64) as u64
    }
}

impl Domain for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        Some(self.mul(a, &self.inv(*b)))
    }
    fn bezout(&self, a: &u64, b: &u64) -> [u64; 5] {
        // unreachable in practice: every nonzero pivot divides
        let u = self.neg(&self.mul(b, &self.inv(*a)));
        [*a, 1, 0, u, 1]
    }
    fn normalizer(&self, a: &u64) -> u64 {
        self.inv(*a)
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_scalar(&self, s: &Scalar) -> Result<u64> {
        let z = s
            .to_bigint()
            .ok_or_else(|| Error::invalid(format!("{s} has no image in Z/{}", self.p)))?;
        let r = z % num_bigint::BigInt::from(self.p);
        let r: i64 = r.try_into().expect("residue fits");
        Ok(self.from_i64(r))
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Mod {
            value: *a,
            modulus: self.p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals;

impl Domain for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn div_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        Some(a / b)
    }
    fn bezout(&self, a: &BigRational, b: &BigRational) -> [BigRational; 5] {
        [a.clone(), self.one(), self.zero(), -(b / a), self.one()]
    }
    fn normalizer(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn from_scalar(&self, s: &Scalar) -> Result<BigRational> {
        match s {
            Scalar::Rat(q) => Ok(q.clone()),
            Scalar::Int(z) => Ok(BigRational::from_integer(z.clone())),
            other => Err(Error::invalid(format!("{other} has no image in Q"))),
        }
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rat(a.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Integers;

impl Domain for Integers {
    type Elem = Int;

    fn zero(&self) -> Int {
        Int::ZERO
    }
    fn one(&self) -> Int {
        Int::ONE
    }
    fn is_zero(&self, a: &Int) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Int, b: &Int) -> Int {
        a.add(b)
    }
    fn mul(&self, a: &Int, b: &Int) -> Int {
        a.mul(b)
    }
    fn neg(&self, a: &Int) -> Int {
        a.neg()
    }
    fn sub(&self, a: &Int, b: &Int) -> Int {
        a.sub(b)
    }
    fn div_exact(&self, a: &Int, b: &Int) -> Option<Int> {
        a.div_exact(b)
    }
    fn bezout(&self, a: &Int, b: &Int) -> [Int; 5] {
        let (g, s, t) = a.extended_gcd(b);
        let u = b.div_exact(&g).expect("gcd divides").neg();
        let v = a.div_exact(&g).expect("gcd divides");
        [g, s, t, u, v]
    }
    fn normalizer(&self, a: &Int) -> Int {
        if a.is_negative() {
            Int::Small(-1)
        } else {
            Int::ONE
        }
    }
    fn is_unit(&self, a: &Int) -> bool {
        a.is_unit()
    }
    fn magnitude(&self, a: &Int) -> u128 {
        match a {
            Int::Small(v) => v.unsigned_abs() as u128,
            Int::Big(_) => u128::MAX,
        }
    }
    fn from_i64(&self, v: i64) -> Int {
        Int::Small(v)
    }
    fn from_scalar(&self, s: &Scalar) -> Result<Int> {
        match s {
            Scalar::Int(z) => Ok(Int::from(z)),
            other => Err(Error::invalid(format!("{other} is not an integer"))),
        }
    }
    fn to_scalar(&self, a: &Int) -> Scalar {
        Scalar::Int(a.to_big())
    }
}

/// Sorted `(index, value)` pairs without zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `a·x + b·y`.
pub fn lincomb<D: Domain>(d: &D, a: &D::Elem, x: &[(usize, D::Elem)], b: &D::Elem, y: &[(usize, D::Elem)]) -> SparseVec<D::Elem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let a_zero = d.is_zero(a);
    let b_zero = d.is_zero(b);
    while i < x.len() || j < y.len() {
        let (idx, val) = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            let r = (x[i].0, if a_zero { d.zero() } else { d.mul(a, &x[i].1) });
            i += 1;
            r
        } else if i >= x.len() || y[j].0 < x[i].0 {
            let r = (y[j].0, if b_zero { d.zero() } else { d.mul(b, &y[j].1) });
            j += 1;
            r
        } else {
            let r = (x[i].0, d.add(&d.mul(a, &x[i].1), &d.mul(b, &y[j].1)));
            i += 1;
            j += 1;
            r
        };
        if !d.is_zero(&val) {
            out.push((idx, val));
        }
    }
    out
}

/// `x + c·y`.
pub fn axpy<D: Domain>(d: &D, x: &[(usize, D::Elem)], c: &D::Elem, y: &[(usize, D::Elem)]) -> SparseVec<D::Elem> {
    lincomb(d, &d.one(), x, c, y)
}

pub fn scale<D: Domain>(d: &D, c: &D::Elem, x: &[(usize, D::Elem)]) -> SparseVec<D::Elem> {
    x.iter()
        .map(|(i, v)| (*i, d.mul(c, v)))
        .filter(|(_, v)| !d.is_zero(v))
        .collect()
}

/// Sums duplicate indices of an unsorted list and drops zeros.
pub fn collect_sparse<D: Domain>(d: &D, mut entries: Vec<(usize, D::Elem)>) -> SparseVec<D::Elem> {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec<D::Elem> = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = d.add(&last.1, &v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !d.is_zero(v));
    out
}

/// Echelon basis of the submodule spanned by inserted vectors.
///
/// Rows have pairwise distinct leading indices. Over a field every row is
/// monic at its lead.
#[derive(Debug, Clone)]
pub struct Echelon<D: Domain> {
    dom: D,
    rows: Vec<SparseVec<D::Elem>>,
    pivot: HashMap<usize, usize>,
}

impl<D: Domain + Clone> Echelon<D> {
    pub fn new(dom: D) -> Self {
        Echelon {
            dom,
            rows: Vec::new(),
            pivot: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<D::Elem>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseVec<D::Elem>> {
        self.rows
    }

    /// Reduces `v` using exact divisions only. The result is empty exactly
    /// when `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec<D::Elem>) -> SparseVec<D::Elem> {
        let d = &self.dom;
        // skip past leads we cannot clear; only the first matters for
        // membership but fields can keep going
        let mut start = 0;
        while start < v.len() {
            let (lead, ref val) = v[start];
            let Some(&r) = self.pivot.get(&lead) else {
                start += 1;
                continue;
            };
            let row = &self.rows[r];
            match d.div_exact(val, &row[0].1) {
                Some(q) => {
                    let tail = axpy(d, &v[start..], &d.neg(&q), row);
                    v.truncate(start);
                    v.extend(tail);
                }
                None => return v,
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec<D::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns true if the span changed.
    pub fn insert(&mut self, v: SparseVec<D::Elem>) -> bool {
        match self.insert_until(v, usize::MAX) {
            Insert::Unchanged => false,
            _ => true,
        }
    }

    /// Inserts `v`, but stops (returning the remainder) as soon as its lead
    /// index reaches `limit`.
    pub fn insert_until(&mut self, mut v: SparseVec<D::Elem>, limit: usize) -> Insert<D::Elem> {
        let d = self.dom.clone();
        let mut changed = false;
        loop {
            let Some((lead, val)) = v.first().cloned() else {
                return if changed { Insert::Changed } else { Insert::Unchanged };
            };
            if lead >= limit {
                return Insert::Escaped(v, changed);
            }
            let Some(&r) = self.pivot.get(&lead) else {
                let u = d.normalizer(&val);
                let row = scale(&d, &u, &v);
                self.pivot.insert(lead, self.rows.len());
                self.rows.push(row);
                return Insert::Changed;
            };
            let a = self.rows[r][0].1.clone();
            match d.div_exact(&val, &a) {
                Some(q) => v = axpy(&d, &v, &d.neg(&q), &self.rows[r]),
                None => {
                    let [g, s, t, u, w] = d.bezout(&a, &val);
                    let new_row = lincomb(&d, &s, &self.rows[r], &t, &v);
                    debug_assert_eq!(new_row[0], (lead, g));
                    v = lincomb(&d, &u, &self.rows[r], &w, &v);
                    self.rows[r] = new_row;
                    changed = true;
                }
            }
        }
    }
}

pub enum Insert<E> {
    Unchanged,
    Changed,
    /// Remainder whose lead reached the limit, and whether the span changed
    /// on the way.
    Escaped(SparseVec<E>, bool),
}

/// A basis of the kernel of the map whose columns are `columns` (vectors in
/// `R^m`), as vectors in `R^{columns.len()}`. Over `Z` it is a `Z`-basis of
/// the kernel lattice.
///
/// Unimodular column operations only, pivoting on units first and then on
/// the smallest remaining entry, each time on the sparsest row; a fixed
/// pivot order over `Z` would let coefficients grow without bound. A pivot
/// column ends with the only nonzero entry in its row, so the columns left
/// with zero image span the kernel.
pub fn kernel<D: Domain + Clone>(dom: &D, m: usize, columns: &[SparseVec<D::Elem>]) -> Vec<SparseVec<D::Elem>> {
    let mut k = ColumnReducer::new(dom, m, columns);
    let mut order: Vec<usize> = (0..columns.len()).collect();
    order.sort_by_key(|&j| columns[j].len());
    // units, column by column
    loop {
        let mut progress = false;
        for &j in &order {
            let Some((image, _)) = k.cols[j].as_ref() else { continue };
            let Some(row) = image
                .iter()
                .filter(|(_, v)| dom.is_unit(v))
                .min_by_key(|(i, _)| k.by_row[*i].len())
                .map(|e| e.0)
            else {
                continue;
            };
            k.pivot(j, row);
            progress = true;
        }
        if !progress {
            break;
        }
    }
    // whatever is left, smallest entry first
    while let Some((j, row)) = k.best_pivot() {
        k.pivot(j, row);
    }
    k.cols.into_iter().flatten().filter(|(image, _)| image.is_empty()).map(|(_, t)| t).collect()
}

struct ColumnReducer<'a, D: Domain> {
    dom: &'a D,
    /// live columns as (image, transform)
    cols: Vec<Option<(SparseVec<D::Elem>, SparseVec<D::Elem>)>>,
    by_row: Vec<std::collections::HashSet<usize>>,
}

impl<'a, D: Domain> ColumnReducer<'a, D> {
    fn new(dom: &'a D, m: usize, columns: &[SparseVec<D::Elem>]) -> Self {
        let mut by_row: Vec<std::collections::HashSet<usize>> = vec![Default::default(); m];
        for (j, c) in columns.iter().enumerate() {
            for (i, _) in c {
                by_row[*i].insert(j);
            }
        }
        let cols = columns
            .iter()
            .enumerate()
            .map(|(j, c)| Some((c.clone(), vec![(j, dom.one())])))
            .collect();
        ColumnReducer { dom, cols, by_row }
    }

    fn best_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<((u128, usize, usize), usize, usize)> = None;
        for (j, c) in self.cols.iter().enumerate() {
            let Some((image, _)) = c else { continue };
            for (i, v) in image {
                let key = (self.dom.magnitude(v), self.by_row[*i].len(), image.len());
                if best.as_ref().map_or(true, |b| key < b.0) {
                    best = Some((key, j, *i));
                }
            }
        }
        best.map(|(_, j, i)| (j, i))
    }

    fn entry(&self, j: usize, row: usize) -> D::Elem {
        let image = &self.cols[j].as_ref().expect("live column").0;
        image.iter().find(|e| e.0 == row).expect("indexed entry").1.clone()
    }

    fn replace(&mut self, k: usize, new: (SparseVec<D::Elem>, SparseVec<D::Elem>)) {
        if let Some((old, _)) = &self.cols[k] {
            for (i, _) in old {
                self.by_row[*i].remove(&k);
            }
        }
        for (i, _) in &new.0 {
            self.by_row[*i].insert(k);
        }
        self.cols[k] = Some(new);
    }

    /// Clears `row` from every other live column using column `j`, then
    /// retires `j`.
    fn pivot(&mut self, j: usize, row: usize) {
        let dom = self.dom;
        loop {
            let Some(&k) = self.by_row[row].iter().find(|&&k| k != j) else { break };
            let (x, y) = (self.entry(j, row), self.entry(k, row));
            let (cj, ck) = (self.cols[j].clone().expect("live"), self.cols[k].clone().expect("live"));
            match dom.div_exact(&y, &x) {
                Some(q) => {
                    let f = dom.neg(&q);
                    self.replace(k, (axpy(dom, &ck.0, &f, &cj.0), axpy(dom, &ck.1, &f, &cj.1)));
                }
                None => {
                    let [_, s, t, u, v] = dom.bezout(&x, &y);
                    let nj = (lincomb(dom, &s, &cj.0, &t, &ck.0), lincomb(dom, &s, &cj.1, &t, &ck.1));
                    let nk = (lincomb(dom, &u, &cj.0, &v, &ck.0), lincomb(dom, &u, &cj.1, &v, &ck.1));
                    self.replace(j, nj);
                    self.replace(k, nk);
                }
            }
        }
        let (image, _) = self.cols[j].take().expect("live pivot");
        for (i, _) in &image {
            self.by_row[*i].remove(&j);
        }
    }
}

/// Which elimination domain a ring uses, if it supports homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinRing {
    Prime(PrimeField),
    Rational,
    Integer,
}

impl LinRing {
    pub fn for_ring(ring: RingSpec) -> Result<LinRing> {
        match ring {
            RingSpec::Integers => Ok(LinRing::Integer),
            RingSpec::Rationals => Ok(LinRing::Rational),
            RingSpec::ModM(p) if crate::coeff::is_prime(p) && p < (1 << 32) => Ok(LinRing::Prime(PrimeField::new(p))),
            other => Err(Error::UnsupportedRing(other.to_string())),
        }
    }
}

pub fn columns_of<D: Domain>(dom: &D, m: &Matrix) -> Result<Vec<SparseVec<D::Elem>>> {
    m.columns()
        .map(|col| {
            col.iter()
                .map(|(r, v)| Ok((*r, dom.from_scalar(v)?)))
                .collect::<Result<Vec<_>>>()
                .map(|v| v.into_iter().filter(|(_, x)| !dom.is_zero(x)).collect())
        })
        .collect()
}

fn rank_in<D: Domain + Clone>(dom: D, m: &Matrix) -> Result<usize> {
    let mut ech = Echelon::new(dom.clone());
    for col in columns_of(&dom, m)? {
        ech.insert(col);
    }
    Ok(ech.rank())
}

/// Rank of a matrix over `Z`, `Q` or a prime field (for `Z`, the rank of
/// the column lattice).
pub fn rank(m: &Matrix) -> Result<usize> {
    match LinRing::for_ring(m.ring())? {
        LinRing::Prime(f) => rank_in(f, m),
        LinRing::Rational => rank_in(Rationals, m),
        LinRing::Integer => rank_in(Integers, m),
    }
}

/// Rank and invariant factors (over `Z`; empty over a field) of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    pub rank: usize,
    /// Invariant factors greater than one, ascending.
    pub torsion: Vec<num_bigint::BigInt>,
}

pub fn rank_profile(m: &Matrix) -> Result<RankProfile> {
    match LinRing::for_ring(m.ring())? {
        LinRing::Integer => {
            let f = snf::invariant_factors(m)?;
            Ok(RankProfile {
                rank: f.len(),
                torsion: f.into_iter().filter(|x| !x.is_unit()).map(|x| x.to_big()).collect(),
            })
        }
        _ => Ok(RankProfile {
            rank: rank(m)?,
            torsion: Vec::new(),
        }),
    }
}
