//! Basis sizes of each family for small n, and the diagrams of T:2 at n = 2.

use diagram_homology::algebra::enumerate_basis;
use diagram_homology::{FamilySpec, Result};

fn main() -> Result<()> {
    let families = ["P", "T:2", "T:3", "TPP", "U", "S"];
    println!("{:>5} {:>6} {:>6} {:>6}", "", "n=1", "n=2", "n=3");
    for f in families {
        let fam: FamilySpec = f.parse()?;
        let sizes: Vec<usize> = (1..=3).map(|n| enumerate_basis(n, fam).map(|b| b.len())).collect::<Result<_>>()?;
        println!("{f:>5} {:>6} {:>6} {:>6}", sizes[0], sizes[1], sizes[2]);
    }
    println!();
    for d in enumerate_basis(2, FamilySpec::Tanabe(2))? {
        println!("{d}  propagating = {}", d.propagating_count());
    }
    Ok(())
}
