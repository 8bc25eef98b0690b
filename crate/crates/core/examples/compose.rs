//! Multiply two partition diagrams and report the number of closed loops.

use diagram_homology::{Diagram, Result};

fn main() -> Result<()> {
    let d1: Diagram = "4:{1 3 -2}|{2}|{4}|{-1}|{-3 -4}".parse()?;
    let d2: Diagram = "4:{2 -3}|{3 4}|{1}|{-1 -2}|{-4}".parse()?;
    let c = d1.compose(&d2)?;
    println!("d1 = {d1}");
    println!("d2 = {d2}");
    println!("d1 d2 = δ^{} {}", c.alpha, c.diagram);

    let e: Diagram = "1:{1}|{-1}".parse()?;
    let sq = e.compose(&e)?;
    println!("{e} squared = δ^{} {}", sq.alpha, sq.diagram);
    Ok(())
}
