//! Check the cover axioms of the standard cover for every family at n = 3.

use diagram_homology::cover::{verify_cover, CoverSpec};
use diagram_homology::{AlgebraContext, Result};

fn main() -> Result<()> {
    for fam in ["P", "T:2", "T:3", "TPP", "U"] {
        let ctx = AlgebraContext::with_int_delta(3, fam.parse()?, "Z".parse()?, 0)?;
        let cover = CoverSpec::standard(&ctx);
        let report = verify_cover(&cover, None)?;
        let ideals: Vec<String> = cover.ideals().iter().map(ToString::to_string).collect();
        println!(
            "{fam:>4}: ideals [{}], covers = {}, width = {}, verified height = {}",
            ideals.join(", "),
            report.covers,
            report.width,
            report.verified_height
        );
        for w in report.intersections.iter().filter(|w| w.generator_diagram.is_some()).take(2) {
            println!("      {:?} has idempotent generator {}", w.subset, w.generator_diagram.as_deref().unwrap_or(""));
        }
    }
    Ok(())
}
