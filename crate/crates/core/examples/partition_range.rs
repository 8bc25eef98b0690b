//! P_3(0) over Z: Tor agrees with the homology of S_3 for q <= 2. The
//! integral resolution route keeps this fast.

use diagram_homology::homcompute::{compute_tor, group_homology, Method};
use diagram_homology::{AlgebraContext, RingSpec, Result};

fn main() -> Result<()> {
    let ring = RingSpec::Integers;
    let ctx = AlgebraContext::with_int_delta(3, "P".parse()?, ring, 0)?;
    let tor = compute_tor(&ctx, 3, Method::Resolution)?;
    let oracle = group_homology(3, ring, 3)?;
    for (q, (a, b)) in tor.iter().zip(&oracle).enumerate() {
        println!("q = {q}: Tor = {}, H(S_3) = {}", a.describe(ring), b.describe(ring));
    }
    Ok(())
}
