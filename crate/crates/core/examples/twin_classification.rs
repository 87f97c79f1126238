// Classify a few two-spin states as twinned or not.
//
// ```bash
// cargo run --example twin_classification
// ```

use std::error::Error;
use std::fmt::Write;

use twinspin::correlations::DensityMatrix;
use twinspin::linop::{SpaceShape, Vector};
use twinspin::scalar::{ExactScalar, Scalar};
use twinspin::theorem::{classify_twin_state, DirectionSet};

type E = ExactScalar;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let shape = SpaceShape::uniform(3, 2);
    let singlet = DensityMatrix::<E>::singlet();
    let mixed = DensityMatrix::<E>::maximally_mixed(shape.clone());
    let states = [
        ("singlet", singlet.clone()),
        ("|0,0>", DensityMatrix::from_pure(&Vector::basis(shape.clone(), 4))?),
        ("|+1,-1>", DensityMatrix::from_pure(&Vector::basis(shape, 2))?),
        ("I/9", mixed.clone()),
        (
            "0.999 singlet + 0.001 I/9",
            singlet.mix(&E::from_ratio(999, 1000), &mixed)?,
        ),
    ];
    let dirs = DirectionSet::<E>::certifying();
    for (name, rho) in &states {
        let c = classify_twin_state(rho, &dirs, 0.0)?;
        match (&c.witness, c.singlet_gap) {
            (Some(w), _) => writeln!(
                out,
                "{name:<28} {:?}, max functional {:.6} at {w}",
                c.verdict, c.max_functional
            )?,
            (None, Some(gap)) => writeln!(out, "{name:<28} {:?}, distance to singlet {gap}", c.verdict)?,
            (None, None) => unreachable!("twinned states report a gap"),
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
