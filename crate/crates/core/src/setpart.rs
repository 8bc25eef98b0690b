//! Set partitions of `{0, .., m-1}` as restricted-growth strings.
//!
//! A restricted-growth string `a` has `a[0] = 0` and
//! `a[i] <= 1 + max(a[0..i])`; it labels element `i` with its block, blocks
//! numbered in order of their smallest element.

/// Iterates over all restricted-growth strings of length `m` in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct RestrictedGrowth {
    current: Vec<u8>,
    // prefix maxima: max[i] = max(current[0..=i])
    max: Vec<u8>,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(m: usize) -> Self {
        assert!(m < 256, "set too large for u8 labels");
        RestrictedGrowth {
            current: vec![0; m],
            max: vec![0; m],
            done: false,
        }
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let m = self.current.len();
        // advance: rightmost position that can still grow
        let mut i = m;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] <= self.max[i - 1] {
                self.current[i] += 1;
                self.max[i] = self.max[i - 1].max(self.current[i]);
                for j in i + 1..m {
                    self.current[j] = 0;
                    self.max[j] = self.max[j - 1];
                }
                break;
            }
        }
        Some(out)
    }
}

/// Bell number `B(m)` via the Bell triangle.
pub fn bell(m: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for v in &row {
            let prev = *next.last().unwrap();
            next.push(prev + v);
        }
        row = next;
    }
    row[0]
}

/// Relabels an arbitrary block labelling into restricted-growth form.
pub fn canonical_labels(labels: &[usize]) -> Vec<u8> {
    let mut map: Vec<(usize, u8)> = Vec::new();
    labels
        .iter()
        .map(|&l| match map.iter().find(|(k, _)| *k == l) {
            Some(&(_, v)) => v,
            None => {
                let v = map.len() as u8;
                map.push((l, v));
                v
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        let all: Vec<_> = RestrictedGrowth::new(3).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![0, 1, 2]
            ]
        );
        assert_eq!(RestrictedGrowth::new(1).count(), 1);
        assert_eq!(RestrictedGrowth::new(0).count(), 1);
    }

    #[test]
    fn counts_match_bell_triangle() {
        for m in 0..=8 {
            assert_eq!(RestrictedGrowth::new(m).count() as u128, bell(m), "m = {m}");
        }
        assert_eq!(bell(10), 115_975);
    }

    #[test]
    fn relabelling() {
        assert_eq!(canonical_labels(&[7, 3, 7, 9]), vec![0, 1, 0, 2]);
    }
}
