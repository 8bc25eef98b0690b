//! Integral homology and cohomology of S_2 and S_3 from the bar complex of
//! the group algebra.

use diagram_homology::homcompute::{group_cohomology, group_homology};
use diagram_homology::{Result, RingSpec};

fn main() -> Result<()> {
    let ring = RingSpec::Integers;
    for n in [2, 3] {
        let h = group_homology(n, ring, 4)?;
        let c = group_cohomology(n, ring, 4)?;
        for q in 0..4 {
            println!("S_{n} q = {q}: H_q = {}, H^q = {}", h[q].describe(ring), c[q].describe(ring));
        }
    }
    Ok(())
}
