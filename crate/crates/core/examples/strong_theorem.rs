// The joint kernel of the twin conditions: one direction leaves a
// five-dimensional kernel, six certifying directions leave only the singlet.
//
// ```bash
// cargo run --example strong_theorem
// ```

use std::error::Error;
use std::fmt::Write;

use num_complex::Complex64;
use twinspin::scalar::ExactScalar;
use twinspin::spin::{singlet, Axis, Direction};
use twinspin::theorem::{joint_kernel, verify_strong_theorem, DirectionSet};

type E = ExactScalar;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let z_only = DirectionSet::single(Direction::<E>::axis(Axis::Z));
    writeln!(
        out,
        "kernel along z alone: dimension {}",
        joint_kernel(&z_only, 0.0).len()
    )?;

    let mut dirs = Vec::new();
    for n in DirectionSet::<E>::certifying().iter() {
        dirs.push(n.clone());
        let k = joint_kernel(&DirectionSet::new(dirs.clone())?, 0.0);
        writeln!(out, "after {} directions (last {n}): dimension {}", dirs.len(), k.len())?;
    }
    let kernel = joint_kernel(&DirectionSet::new(dirs)?, 0.0);
    let v: Vec<String> = kernel[0].entries().iter().map(|x| x.to_string()).collect();
    writeln!(out, "kernel vector ({})", v.join(", "))?;
    writeln!(out, "overlap with the singlet: {}", singlet::<E>().overlap(&kernel[0]))?;

    let report = verify_strong_theorem::<E>(&DirectionSet::certifying(), 0.0);
    writeln!(out, "exact report: {:?}, failing {:?}", report.verdict, report.failing)?;
    let float = verify_strong_theorem::<Complex64>(&DirectionSet::random(50, 7)?, 1e-10);
    writeln!(
        out,
        "float report (50 random directions): {:?}, overlap {:.15}",
        float.verdict, float.singlet_overlap
    )?;
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
