//! Smith normal form of a small integer matrix and the homology of a
//! complex built from it.

use diagram_homology::complex::ChainComplex;
use diagram_homology::linalg::snf::smith_normal_form;
use diagram_homology::{Matrix, Result, RingSpec};

fn main() -> Result<()> {
    let m = Matrix::from_rows(RingSpec::Integers, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&m)?;
    let factors: Vec<String> = snf.factors.iter().map(ToString::to_string).collect();
    println!("invariant factors: {}", factors.join(", "));

    // Z^3 --m--> Z^3 in degrees 1 -> 0
    let c = ChainComplex::new(RingSpec::Integers, 0, vec![3, 3], vec![m])?;
    for (q, h) in c.homology_all()? {
        println!("H_{q} = {}", h.describe(RingSpec::Integers));
    }
    Ok(())
}
