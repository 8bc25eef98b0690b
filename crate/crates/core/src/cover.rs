//! The ideal `I_{n-1}`, its left ideals `K(i)` and `L(i,j)`, and machine
//! verification of the idempotent left cover axioms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraContext, FamilySpec};
use crate::diagram::{Diagram, Vertex};
use crate::error::{Error, Result};

/// A left ideal spanned by the basis diagrams satisfying a predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LeftIdealSpec {
    /// `ī` is an isolated vertex.
    K(usize),
    /// `ī` and `j̄` lie in the same block (`i < j`).
    L(usize, usize),
}

impl LeftIdealSpec {
    pub fn contains(&self, d: &Diagram) -> bool {
        match *self {
            LeftIdealSpec::K(i) => d.is_isolated(Vertex::right(i)),
            LeftIdealSpec::L(i, j) => d.same_block(Vertex::right(i), Vertex::right(j)),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let ok = match *self {
            LeftIdealSpec::K(i) => (1..=n).contains(&i),
            LeftIdealSpec::L(i, j) => 1 <= i && i < j && j <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("{self} is not an ideal of n = {n} diagrams")))
        }
    }
}

impl fmt::Display for LeftIdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeftIdealSpec::K(i) => write!(f, "K({i})"),
            LeftIdealSpec::L(i, j) => write!(f, "L({i},{j})"),
        }
    }
}

/// Indices of the diagrams with fewer than `n` propagating blocks.
pub fn target_basis(ctx: &AlgebraContext) -> Vec<usize> {
    (0..ctx.dim()).filter(|&i| !ctx.basis().is_permutation(i)).collect()
}

/// Basis indices of one left ideal. Empty for `K(i)` in families without
/// isolated vertices.
pub fn ideal_basis(ctx: &AlgebraContext, spec: LeftIdealSpec) -> Vec<usize> {
    intersection_basis(ctx, &[spec])
}

/// Basis indices of `⋂_{J in specs} J`; the whole basis for no ideals.
pub fn intersection_basis(ctx: &AlgebraContext, specs: &[LeftIdealSpec]) -> Vec<usize> {
    let basis = ctx.basis();
    (0..ctx.dim())
        .filter(|&i| specs.iter().all(|s| s.contains(basis.diagram(i))))
        .collect()
}

/// The merge idempotent `ν_{a,b}` with blocks `{a, b, ā, b̄}` and `{i, ī}`.
pub fn nu(n: usize, a: usize, b: usize) -> Result<Diagram> {
    if !(1 <= a && a < b && b <= n) {
        return Err(Error::invalid(format!("ν_{{{a},{b}}} needs 1 <= a < b <= {n}")));
    }
    let mut blocks = vec![vec![Vertex::left(a), Vertex::left(b), Vertex::right(a), Vertex::right(b)]];
    blocks.extend((1..=n).filter(|&i| i != a && i != b).map(|i| vec![Vertex::left(i), Vertex::right(i)]));
    Diagram::from_blocks(n, &blocks)
}

/// Right multiplication by this diagram isolates `ī` and leaves every
/// other block alone, provided `j̄` stays joined to something outside.
fn isolator(n: usize, i: usize, j: usize) -> Result<Diagram> {
    let mut blocks = vec![vec![Vertex::left(i), Vertex::left(j), Vertex::right(j)], vec![Vertex::right(i)]];
    blocks.extend((1..=n).filter(|&k| k != i && k != j).map(|k| vec![Vertex::left(k), Vertex::right(k)]));
    Diagram::from_blocks(n, &blocks)
}

/// An algebra with an ordered list of left ideals meant to cover
/// `I_{n-1}`.
#[derive(Debug, Clone)]
pub struct CoverSpec {
    ctx: AlgebraContext,
    ideals: Vec<LeftIdealSpec>,
}

impl CoverSpec {
    /// All `K(i)` then all `L(i,j)` for the partition algebra (and `T:1`);
    /// the `L(i,j)` alone for every other family.
    pub fn standard(ctx: &AlgebraContext) -> CoverSpec {
        let n = ctx.n();
        let mut ideals = Vec::new();
        if !ctx.family().is_merge_covered() && ctx.family() != FamilySpec::Permutations {
            ideals.extend((1..=n).map(LeftIdealSpec::K));
        }
        for i in 1..=n {
            for j in i + 1..=n {
                ideals.push(LeftIdealSpec::L(i, j));
            }
        }
        CoverSpec { ctx: ctx.clone(), ideals }
    }

    pub fn new(ctx: &AlgebraContext, ideals: Vec<LeftIdealSpec>) -> Result<CoverSpec> {
        for s in &ideals {
            s.validate(ctx.n())?;
        }
        Ok(CoverSpec { ctx: ctx.clone(), ideals })
    }

    pub fn context(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn ideals(&self) -> &[LeftIdealSpec] {
        &self.ideals
    }

    pub fn width(&self) -> usize {
        self.ideals.len()
    }

    /// Height the axioms are known to hold to: the width when the cover is
    /// made of merges only, `n - 1` once isolation ideals take part.
    pub fn expected_height(&self) -> usize {
        if self.ideals.iter().any(|s| matches!(s, LeftIdealSpec::K(_))) {
            (self.ctx.n() - 1).min(self.width())
        } else {
            self.width()
        }
    }

    pub fn ideals_of(&self, subset: &[usize]) -> Vec<LeftIdealSpec> {
        subset.iter().map(|&k| self.ideals[k]).collect()
    }

    /// Basis indices of the intersection over positions `subset`.
    pub fn intersection(&self, subset: &[usize]) -> Vec<usize> {
        intersection_basis(&self.ctx, &self.ideals_of(subset))
    }

    /// The right identity for the intersection over `subset`: isolators for
    /// the `K(i)` followed by merges for the `L(i,j)`, multiplied in list
    /// order. `None` when every right vertex would have to be isolated.
    pub fn retraction(&self, subset: &[usize]) -> Result<Option<Diagram>> {
        let n = self.ctx.n();
        let specs = self.ideals_of(subset);
        let isolated: Vec<usize> = specs
            .iter()
            .filter_map(|s| match s {
                LeftIdealSpec::K(i) => Some(*i),
                _ => None,
            })
            .collect();
        let Some(free) = (1..=n).find(|j| !isolated.contains(j)) else {
            return Ok(None);
        };
        let mut factors = Vec::new();
        for s in &specs {
            if let LeftIdealSpec::K(i) = s {
                factors.push(isolator(n, *i, free)?);
            }
        }
        for s in &specs {
            if let LeftIdealSpec::L(i, j) = s {
                factors.push(nu(n, *i, *j)?);
            }
        }
        let mut acc = Diagram::identity(n);
        for f in &factors {
            let c = acc.compose(f)?;
            if c.alpha != 0 {
                return Err(Error::Consistency(format!("closed loop while forming the retraction for {specs:?}")));
            }
            acc = c.diagram;
        }
        Ok(Some(acc))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessStatus {
    Zero,
    Idempotent,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionWitness {
    #[serde(rename = "S")]
    pub subset: Vec<String>,
    pub dim: usize,
    pub status: WitnessStatus,
    pub generator_diagram: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFailure {
    #[serde(rename = "S")]
    pub subset: Vec<String>,
    pub diagram: Option<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub covers: bool,
    pub width: usize,
    pub verified_height: usize,
    pub failures: Vec<CoverFailure>,
    pub intersections: Vec<IntersectionWitness>,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.covers && self.failures.is_empty()
    }
}

/// Index subsets of `0..w` of size `1..=h`, by size then lexicographically.
pub fn subsets_up_to(w: usize, h: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=h.min(w) {
        let mut cur: Vec<usize> = (0..size).collect();
        loop {
            out.push(cur.clone());
            // advance to the next combination
            let Some(k) = (0..size).rev().find(|&k| cur[k] < w - size + k) else { break };
            cur[k] += 1;
            for m in k + 1..size {
                cur[m] = cur[m - 1] + 1;
            }
        }
    }
    out
}

/// Checks that the ideals sum to `I_{n-1}` and that every intersection of
/// at most `height_limit` of them (default [`CoverSpec::expected_height`])
/// is zero or generated by an idempotent.
pub fn verify_cover(cover: &CoverSpec, height_limit: Option<usize>) -> Result<CoverReport> {
    let ctx = cover.context();
    let basis = ctx.basis();
    let labels = |subset: &[usize]| -> Vec<String> { cover.ideals_of(subset).iter().map(ToString::to_string).collect() };
    let mut failures = Vec::new();

    let target = target_basis(ctx);
    let mut in_some = vec![false; ctx.dim()];
    for (k, spec) in cover.ideals().iter().enumerate() {
        for i in ideal_basis(ctx, *spec) {
            in_some[i] = true;
            if basis.is_permutation(i) {
                failures.push(CoverFailure {
                    subset: labels(&[k]),
                    diagram: Some(basis.diagram(i).to_string()),
                    reason: "ideal diagram outside I_{n-1}".into(),
                });
            }
        }
    }
    let mut covers = failures.is_empty();
    for &i in &target {
        if !in_some[i] {
            covers = false;
            failures.push(CoverFailure {
                subset: Vec::new(),
                diagram: Some(basis.diagram(i).to_string()),
                reason: "diagram of I_{n-1} in no ideal".into(),
            });
        }
    }

    let height = height_limit.unwrap_or_else(|| cover.expected_height()).min(cover.width());
    let mut intersections = Vec::new();
    let mut first_bad_size: Option<usize> = None;
    for subset in subsets_up_to(cover.width(), height) {
        let members = cover.intersection(&subset);
        let witness = check_intersection(cover, &subset, &members)?;
        let status = match &witness {
            Ok(None) => WitnessStatus::Zero,
            Ok(Some(_)) => WitnessStatus::Idempotent,
            Err(_) => WitnessStatus::Failed,
        };
        if let Err((diagram, reason)) = &witness {
            first_bad_size = Some(first_bad_size.map_or(subset.len(), |s| s.min(subset.len())));
            failures.push(CoverFailure {
                subset: labels(&subset),
                diagram: diagram.as_ref().map(ToString::to_string),
                reason: reason.clone(),
            });
        }
        intersections.push(IntersectionWitness {
            subset: labels(&subset),
            dim: members.len(),
            status,
            generator_diagram: witness.ok().flatten().map(|d| d.to_string()),
        });
    }
    let verified_height = match first_bad_size {
        Some(s) => s - 1,
        None => height,
    };
    Ok(CoverReport {
        covers,
        width: cover.width(),
        verified_height,
        failures,
        intersections,
    })
}

type Witness = std::result::Result<Option<Diagram>, (Option<Diagram>, String)>;

fn check_intersection(cover: &CoverSpec, subset: &[usize], members: &[usize]) -> Result<Witness> {
    if members.is_empty() {
        return Ok(Ok(None));
    }
    let basis = cover.context().basis();
    let Some(pi) = cover.retraction(subset)? else {
        return Ok(Err((None, "no retraction available".into())));
    };
    if basis.index_of(&pi).is_none() {
        return Ok(Err((Some(pi), "retraction is not an algebra diagram".into())));
    }
    if !cover.ideals_of(subset).iter().all(|s| s.contains(&pi)) {
        return Ok(Err((Some(pi), "retraction lies outside the intersection".into())));
    }
    let sq = pi.compose(&pi)?;
    if sq.alpha != 0 || sq.diagram != pi {
        return Ok(Err((Some(pi), "retraction is not idempotent".into())));
    }
    for &m in members {
        let rho = basis.diagram(m);
        let c = rho.compose(&pi)?;
        if c.alpha != 0 || &c.diagram != rho {
            return Ok(Err((Some(rho.clone()), "right multiplication does not fix this diagram".into())));
        }
    }
    Ok(Ok(Some(pi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RingSpec;

    fn ctx(n: usize, fam: &str) -> AlgebraContext {
        AlgebraContext::with_int_delta(n, fam.parse().unwrap(), RingSpec::Integers, 0).unwrap()
    }

    fn diagrams(c: &AlgebraContext, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| c.basis().diagram(i).to_string()).collect()
    }

    #[test]
    fn ideal_bases() {
        let t = ctx(2, "T:2");
        assert_eq!(
            diagrams(&t, &ideal_basis(&t, LeftIdealSpec::L(1, 2))),
            vec!["2:{1 2 -1 -2}", "2:{1 2}|{-1 -2}"]
        );
        let p = ctx(2, "P");
        assert_eq!(ideal_basis(&p, LeftIdealSpec::K(1)).len(), 5);
        let u = ctx(2, "U");
        assert_eq!(diagrams(&u, &ideal_basis(&u, LeftIdealSpec::L(1, 2))), vec!["2:{1 2 -1 -2}"]);
        assert!(ideal_basis(&t, LeftIdealSpec::K(1)).is_empty());
        assert!(intersection_basis(&p, &[LeftIdealSpec::K(1), LeftIdealSpec::L(1, 2)]).is_empty());
        assert_eq!(intersection_basis(&p, &[]).len(), 15);
    }

    #[test]
    fn triple_merge_in_tanabe_three() {
        let t = ctx(3, "T:2");
        let both = intersection_basis(&t, &[LeftIdealSpec::L(1, 2), LeftIdealSpec::L(1, 3)]);
        let all = intersection_basis(&t, &[LeftIdealSpec::L(1, 2), LeftIdealSpec::L(1, 3), LeftIdealSpec::L(2, 3)]);
        assert_eq!(both, all);
        assert!(!both.is_empty());
    }

    #[test]
    fn nu_shape_and_idempotence() {
        assert_eq!(nu(3, 1, 2).unwrap().to_string(), "3:{1 2 -1 -2}|{3 -3}");
        let v = nu(3, 1, 3).unwrap();
        let sq = v.compose(&v).unwrap();
        assert_eq!((sq.alpha, sq.diagram), (0, v));
        assert!(nu(3, 2, 2).is_err());
        for fam in ["T:2", "T:3", "TPP", "U"] {
            assert!(ctx(3, fam).basis().index_of(&nu(3, 2, 3).unwrap()).is_some());
        }
    }

    #[test]
    fn left_ideals_are_closed() {
        for (n, fam) in [(2, "P"), (3, "P"), (2, "T:2"), (3, "T:2"), (3, "T:3"), (3, "TPP"), (3, "U")] {
            let c = ctx(n, fam);
            let cover = CoverSpec::standard(&c);
            for spec in cover.ideals() {
                for r in ideal_basis(&c, *spec) {
                    for b in 0..c.dim() {
                        let p = c.basis().product(b, r);
                        assert!(spec.contains(c.basis().diagram(p.index as usize)), "{fam} {spec}");
                    }
                }
            }
        }
    }

    #[test]
    fn merge_retraction_is_order_independent() {
        let n = 3;
        let pairs = [(1, 2), (1, 3), (2, 3)];
        let mut products = Vec::new();
        for order in [[0, 1, 2], [2, 1, 0], [1, 0, 2], [1, 2, 0]] {
            let mut acc = Diagram::identity(n);
            for k in order {
                let (a, b) = pairs[k];
                acc = acc.compose(&nu(n, a, b).unwrap()).unwrap().diagram;
            }
            products.push(acc);
        }
        assert!(products.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn right_merge_fixes_its_ideal() {
        let c = ctx(3, "U");
        let v = nu(3, 1, 2).unwrap();
        for r in ideal_basis(&c, LeftIdealSpec::L(1, 2)) {
            let rho = c.basis().diagram(r);
            let p = rho.compose(&v).unwrap();
            assert_eq!((p.alpha, &p.diagram), (0, rho));
        }
    }

    #[test]
    fn non_permutations_have_two_right_vertices_together() {
        for fam in ["T:2", "T:3", "TPP", "U"] {
            let c = ctx(3, fam);
            for d in c.basis().diagrams().iter().filter(|d| !d.is_permutation()) {
                assert!(d.component_stats().iter().any(|s| s.right >= 2), "{fam} {d}");
            }
        }
    }

    #[test]
    fn reports_for_small_covers() {
        let r = verify_cover(&CoverSpec::standard(&ctx(2, "T:2")), None).unwrap();
        assert!(r.passed());
        assert_eq!((r.width, r.verified_height), (1, 1));
        assert_eq!(r.intersections[0].generator_diagram.as_deref(), Some("2:{1 2 -1 -2}"));

        let r = verify_cover(&CoverSpec::standard(&ctx(2, "P")), None).unwrap();
        assert!(r.passed());
        assert_eq!((r.width, r.verified_height), (3, 1));

        let r = verify_cover(&CoverSpec::standard(&ctx(3, "U")), None).unwrap();
        assert!(r.passed());
        assert_eq!((r.width, r.verified_height), (3, 3));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["intersections"][6]["S"], serde_json::json!(["L(1,2)", "L(1,3)", "L(2,3)"]));
    }

    #[test]
    fn subset_order() {
        assert_eq!(
            subsets_up_to(3, 2),
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        assert_eq!(subsets_up_to(2, 5).len(), 3);
    }
}
