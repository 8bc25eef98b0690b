//! Tor and Ext of the trivial module of T_3(δ, 2) against the symmetric
//! group, for two values of δ over F_3.

use diagram_homology::cli::{theorem_rows, TheoremKind};
use diagram_homology::homcompute::Method;
use diagram_homology::{RingSpec, Result};

fn main() -> Result<()> {
    let ring = RingSpec::ModM(3);
    let deltas = [ring.from_i64(0), ring.from_i64(2)];
    let rows = theorem_rows(TheoremKind::Tanabe, 3, Some(2), ring, &deltas, 4, Method::Auto)?;
    for r in &rows {
        println!(
            "δ = {} q = {}: Tor {} vs {}, Ext {} vs {}",
            r.delta,
            r.q,
            r.tor.describe(ring),
            r.tor_oracle.describe(ring),
            r.ext.describe(ring),
            r.ext_oracle.describe(ring)
        );
    }
    println!("all match: {}", rows.iter().all(|r| r.holds()));
    Ok(())
}
