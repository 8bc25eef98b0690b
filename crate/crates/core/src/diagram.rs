//! Partition `n`-diagrams.
//!
//! A diagram is a set partition of the `2n` vertices `1..n` (left column)
//! and `1̄..n̄` (right column). Vertices are totally ordered as
//! `(Left,1) < .. < (Left,n) < (Right,1) < .. < (Right,n)` and a diagram is
//! stored as the restricted-growth labelling of that sequence, which is a
//! canonical form: two diagrams are equal exactly when they determine the
//! same partition.
//!
//! Text form: `n:{1 3 -2}|{2}|{4}|{-1}|{-3 -4}` where `i` is left vertex `i`
//! and `-i` is right vertex `i`; blocks are ordered by their least vertex.

use std::fmt;
use std::str::FromStr;

use crate::algebra::FamilySpec;
use crate::error::{Error, Result};
use crate::setpart::canonical_labels;
use crate::unionfind::DisjointSets;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    Left,
    Right,
}

/// One of the `2n` labelled vertices; `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub column: Column,
    pub index: usize,
}

impl Vertex {
    pub fn left(index: usize) -> Self {
        Vertex { column: Column::Left, index }
    }

    pub fn right(index: usize) -> Self {
        Vertex { column: Column::Right, index }
    }

    /// Position in the fixed vertex order of an `n`-diagram.
    pub fn position(&self, n: usize) -> usize {
        match self.column {
            Column::Left => self.index - 1,
            Column::Right => n + self.index - 1,
        }
    }

    pub fn from_position(n: usize, pos: usize) -> Self {
        if pos < n {
            Vertex::left(pos + 1)
        } else {
            Vertex::right(pos - n + 1)
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.column {
            Column::Left => write!(f, "{}", self.index),
            Column::Right => write!(f, "-{}", self.index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: usize,
    labels: Box<[u8]>,
}

/// Left/right vertex counts of one block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentStats {
    pub left: usize,
    pub right: usize,
    pub kappa: usize,
}

/// `d1 d2 = delta^alpha * diagram`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionResult {
    pub alpha: usize,
    pub diagram: Diagram,
}

impl Diagram {
    /// Builds a diagram from any block labelling of the `2n` vertices in
    /// vertex order.
    pub fn from_labels(n: usize, labels: &[usize]) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("diagrams need n >= 1"));
        }
        if labels.len() != 2 * n {
            return Err(Error::invalid(format!(
                "expected {} vertex labels, got {}",
                2 * n,
                labels.len()
            )));
        }
        Ok(Diagram {
            n,
            labels: canonical_labels(labels).into_boxed_slice(),
        })
    }

    /// Trusted constructor for restricted-growth labellings.
    pub(crate) fn from_rgs(n: usize, rgs: Vec<u8>) -> Self {
        debug_assert_eq!(rgs.len(), 2 * n);
        Diagram {
            n,
            labels: rgs.into_boxed_slice(),
        }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<Vertex>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; 2 * n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::invalid("empty block"));
            }
            for v in block {
                if v.index == 0 || v.index > n {
                    return Err(Error::invalid(format!("vertex {v} out of range for n = {n}")));
                }
                let p = v.position(n);
                if labels[p] != usize::MAX {
                    return Err(Error::invalid(format!("vertex {v} appears twice")));
                }
                labels[p] = b;
            }
        }
        if let Some(p) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::invalid(format!(
                "vertex {} is missing",
                Vertex::from_position(n, p)
            )));
        }
        Diagram::from_labels(n, &labels)
    }

    /// The identity: blocks `{i, ī}`.
    pub fn identity(n: usize) -> Self {
        let labels: Vec<usize> = (0..2 * n).map(|p| p % n).collect();
        Diagram::from_labels(n, &labels).expect("valid identity")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Block labels in vertex order (restricted-growth form).
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    /// Blocks in canonical order, each sorted in vertex order.
    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (p, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(Vertex::from_position(self.n, p));
        }
        blocks
    }

    pub fn same_block(&self, a: Vertex, b: Vertex) -> bool {
        self.labels[a.position(self.n)] == self.labels[b.position(self.n)]
    }

    /// True if `v` is a singleton block.
    pub fn is_isolated(&self, v: Vertex) -> bool {
        let l = self.labels[v.position(self.n)];
        self.labels.iter().filter(|&&x| x == l).count() == 1
    }

    /// Composite `d1 d2`: stack `other` to the right of `self`, glue the
    /// middle column, count closed middle components.
    pub fn compose(&self, other: &Diagram) -> Result<CompositionResult> {
        if self.n != other.n {
            return Err(Error::ContextMismatch(format!(
                "cannot compose an {}-diagram with an {}-diagram",
                self.n, other.n
            )));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Diagram) -> CompositionResult {
        let n = self.n;
        // nodes: 0..n left of self, n..2n middle, 2n..3n right of other
        let mut ds = DisjointSets::new(3 * n);
        let mut first = [usize::MAX; 256];
        for (p, &l) in self.labels.iter().enumerate() {
            let slot = &mut first[l as usize];
            if *slot == usize::MAX {
                *slot = p;
            } else {
                ds.union(*slot, p);
            }
        }
        let mut first = [usize::MAX; 256];
        for (p, &l) in other.labels.iter().enumerate() {
            let node = p + n;
            let slot = &mut first[l as usize];
            if *slot == usize::MAX {
                *slot = node;
            } else {
                ds.union(*slot, node);
            }
        }
        let mut outer_roots = Vec::with_capacity(2 * n);
        for node in (0..n).chain(2 * n..3 * n) {
            outer_roots.push(ds.find(node));
        }
        let mut closed: Vec<usize> = Vec::new();
        for node in n..2 * n {
            let r = ds.find(node);
            if !outer_roots.contains(&r) && !closed.contains(&r) {
                closed.push(r);
            }
        }
        let labels = canonical_labels(&outer_roots);
        CompositionResult {
            alpha: closed.len(),
            diagram: Diagram::from_rgs(n, labels),
        }
    }

    /// Per-block statistics in canonical block order.
    pub fn component_stats(&self) -> Vec<ComponentStats> {
        let mut stats = vec![(0usize, 0usize); self.block_count()];
        for (p, &l) in self.labels.iter().enumerate() {
            if p < self.n {
                stats[l as usize].0 += 1;
            } else {
                stats[l as usize].1 += 1;
            }
        }
        stats
            .into_iter()
            .map(|(left, right)| ComponentStats {
                left,
                right,
                kappa: left.abs_diff(right),
            })
            .collect()
    }

    /// Number of blocks meeting both columns.
    pub fn propagating_count(&self) -> usize {
        self.component_stats()
            .iter()
            .filter(|s| s.left > 0 && s.right > 0)
            .count()
    }

    pub fn is_permutation(&self) -> bool {
        self.propagating_count() == self.n
    }

    /// For a permutation diagram with blocks `{i, σ(i)‾}`, returns
    /// `[σ(1), .., σ(n)]`.
    pub fn as_permutation(&self) -> Result<Vec<usize>> {
        if !self.is_permutation() {
            return Err(Error::NotPermutation(self.to_string()));
        }
        let n = self.n;
        Ok((0..n)
            .map(|i| {
                let l = self.labels[i];
                (n..2 * n).find(|&p| self.labels[p] == l).unwrap() - n + 1
            })
            .collect())
    }

    /// Whether this diagram is a basis element of the given family.
    pub fn satisfies(&self, family: &FamilySpec) -> bool {
        let stats = self.component_stats();
        match *family {
            FamilySpec::Partition => true,
            FamilySpec::Tanabe(r) => stats.iter().all(|s| s.kappa % r == 0),
            FamilySpec::TotallyPropagating => stats.iter().all(|s| s.left > 0 && s.right > 0),
            FamilySpec::UniformBlock => stats.iter().all(|s| s.left == s.right),
            FamilySpec::Permutations => self.is_permutation(),
        }
    }
}

/// Checked form of [`Diagram::satisfies`]: rejects `Tanabe(0)`.
pub fn family_predicate(d: &Diagram, family: &FamilySpec) -> Result<bool> {
    family.validate()?;
    Ok(d.satisfies(family))
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                write!(f, "|")?;
            }
            write!(f, "{{")?;
            for (i, v) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let colon = s
            .find(':')
            .ok_or_else(|| Error::parse(s, 0, "expected `n:` prefix"))?;
        let n: usize = s[..colon]
            .parse()
            .map_err(|_| Error::parse(s, 0, "expected a positive integer before `:`"))?;
        if n == 0 {
            return Err(Error::parse(s, 0, "n must be positive"));
        }
        let mut blocks = Vec::new();
        let mut pos = colon + 1;
        let bytes = s.as_bytes();
        loop {
            if bytes.get(pos) != Some(&b'{') {
                return Err(Error::parse(s, pos, "expected `{`"));
            }
            let close = s[pos..]
                .find('}')
                .map(|i| pos + i)
                .ok_or_else(|| Error::parse(s, pos, "unterminated block"))?;
            let inner = &s[pos + 1..close];
            let mut block = Vec::new();
            let mut at = pos + 1;
            for tok in inner.split(' ') {
                let v: i64 = tok
                    .parse()
                    .map_err(|_| Error::parse(s, at, format!("bad vertex {tok:?}")))?;
                let idx = v.unsigned_abs() as usize;
                if v == 0 || idx > n {
                    return Err(Error::parse(s, at, format!("vertex {v} out of range for n = {n}")));
                }
                block.push(if v > 0 { Vertex::left(idx) } else { Vertex::right(idx) });
                at += tok.len() + 1;
            }
            blocks.push(block);
            pos = close + 1;
            match bytes.get(pos) {
                None => break,
                Some(b'|') => pos += 1,
                Some(_) => return Err(Error::parse(s, pos, "expected `|` or end of input")),
            }
        }
        Diagram::from_blocks(n, &blocks).map_err(|e| match e {
            Error::InvalidArgument(m) => Error::parse(s, colon + 1, m),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn worked_composition() {
        let d1 = d("4:{1 3 -2}|{2}|{4}|{-1}|{-3 -4}");
        let d2 = d("4:{2 -3}|{3 4}|{1}|{-1 -2}|{-4}");
        let c = d1.compose(&d2).unwrap();
        assert_eq!(c.alpha, 2);
        assert_eq!(c.diagram.to_string(), "4:{1 3 -3}|{2}|{4}|{-1 -2}|{-4}");
    }

    #[test]
    fn identity_is_neutral() {
        let x = d("3:{1 2 -3}|{3}|{-1 -2}");
        let id = Diagram::identity(3);
        assert_eq!(id.to_string(), "3:{1 -1}|{2 -2}|{3 -3}");
        assert_eq!(id.compose(&x).unwrap(), CompositionResult { alpha: 0, diagram: x.clone() });
        assert_eq!(x.compose(&id).unwrap(), CompositionResult { alpha: 0, diagram: x });
    }

    #[test]
    fn lone_middle_vertex_is_closed() {
        let x = d("1:{1}|{-1}");
        let c = x.compose(&x).unwrap();
        assert_eq!(c.alpha, 1);
        assert_eq!(c.diagram, x);
    }

    #[test]
    fn mismatched_sizes() {
        assert!(Diagram::identity(2).compose(&Diagram::identity(3)).is_err());
    }

    #[test]
    fn stats_and_propagation() {
        let x = d("4:{1 3 -2}|{2}|{4}|{-1}|{-3 -4}");
        let s = x.component_stats();
        assert_eq!(s[0], ComponentStats { left: 2, right: 1, kappa: 1 });
        assert_eq!(s[4], ComponentStats { left: 0, right: 2, kappa: 2 });
        assert_eq!(d("2:{1 -1}|{2 -2}").component_stats()[0], ComponentStats { left: 1, right: 1, kappa: 0 });
        assert_eq!(Diagram::identity(2).propagating_count(), 2);
        assert_eq!(d("2:{1 2 -1 -2}").propagating_count(), 1);
        assert_eq!(d("2:{1 2}|{-1 -2}").propagating_count(), 0);
    }

    #[test]
    fn permutations() {
        assert_eq!(Diagram::identity(3).as_permutation().unwrap(), vec![1, 2, 3]);
        let swap = d("2:{1 -2}|{2 -1}");
        assert!(swap.is_permutation());
        assert_eq!(swap.as_permutation().unwrap(), vec![2, 1]);
        let merged = d("2:{1 2 -1 -2}");
        assert!(!merged.is_permutation());
        assert!(matches!(merged.as_permutation(), Err(Error::NotPermutation(_))));
    }

    #[test]
    fn family_membership() {
        let t2 = FamilySpec::Tanabe(2);
        assert!(family_predicate(&d("2:{1 2}|{-1 -2}"), &t2).unwrap());
        assert!(!family_predicate(&d("2:{1}|{2}|{-1}|{-2}"), &t2).unwrap());
        assert!(family_predicate(&d("2:{1}|{2}|{-1}|{-2}"), &FamilySpec::Tanabe(1)).unwrap());
        assert!(family_predicate(&Diagram::identity(2), &FamilySpec::Tanabe(0)).is_err());
        assert!(d("2:{1 2 -1 -2}").satisfies(&FamilySpec::UniformBlock));
        assert!(!d("2:{1 2}|{-1 -2}").satisfies(&FamilySpec::TotallyPropagating));
        assert!(d("2:{1 2 -1}|{-2}").satisfies(&FamilySpec::Partition));
    }

    #[test]
    fn text_form() {
        let x = d("2:{-2 1}|{-1 2}");
        assert_eq!(x.to_string(), "2:{1 -2}|{2 -1}");
        for bad in ["{1 -1}", "2:{1 -1}", "2:{1 -1}|{2 -2", "2:{1 -1}{2 -2}", "2:{1 -1}|{2 -3}", "2:{1 -1}|{2 -2}|{1}", "0:{1}", "2:{1  -1}|{2 -2}"] {
            assert!(matches!(bad.parse::<Diagram>(), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn canonical_form_is_stable() {
        let x = d("3:{-3 2}|{1 -1 -2}|{3}");
        let again: Diagram = x.to_string().parse().unwrap();
        assert_eq!(again, x);
        assert_eq!(Diagram::from_blocks(3, &x.blocks()).unwrap(), x);
    }
}
