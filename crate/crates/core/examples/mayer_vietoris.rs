//! Build the Mayer-Vietoris complex of the standard cover and check that it
//! resolves A/I, and that tensoring with the trivial module kills it.

use diagram_homology::cover::CoverSpec;
use diagram_homology::mv::build_mv;
use diagram_homology::{AlgebraContext, Result};

fn main() -> Result<()> {
    for (fam, ring) in [("U", "Z"), ("T:2", "Z/2"), ("P", "Z/3")] {
        let ctx = AlgebraContext::with_int_delta(3, fam.parse()?, ring.parse()?, 1)?;
        let cover = CoverSpec::standard(&ctx);
        let h = cover.expected_height();
        let mv = build_mv(&cover)?;
        let exact = mv.exactness(h)?;
        let tensor = mv.tensor_with_trivial(h)?;
        println!("{}", ctx.label());
        println!("  C_p ranks (from p = -1): {:?}", mv.complex().dims());
        println!("  exact through {h}: {}", exact.holds());
        println!("  ranks of 1 ⊗ C_p: {:?}", tensor.dims());
    }
    Ok(())
}
