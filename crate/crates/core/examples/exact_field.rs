// Arithmetic in ℚ(i, √2, √3): parsing, inverses, conjugation, float images.
//
// ```bash
// cargo run --example exact_field
// ```

use std::error::Error;
use std::fmt::Write;

use twinspin::scalar::{parse_exact, ExactScalar, Scalar};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let a = parse_exact("1 + sqrt2")?;
    let inv = a.try_inv()?;
    writeln!(out, "1/(1 + sqrt2) = {inv}")?;
    writeln!(out, "check: {}", a.clone() * inv.clone())?;

    let r = parse_exact("1/2*sqrt2")?;
    writeln!(out, "(sqrt2/2)^2 = {}", r.clone() * r)?;

    let z = parse_exact("3 - 2*i*sqrt3")?;
    writeln!(out, "conj({z}) = {}", z.conj())?;
    writeln!(out, "|z|^2 = {}", z.abs_sq())?;

    let big = parse_exact("sqrt2 + sqrt3 + sqrt6")?;
    writeln!(out, "{big} ~ {:.15}", big.to_complex().re)?;

    let six = ExactScalar::sqrt_int(24).ok_or("24 = 4*6")?;
    writeln!(out, "sqrt(24) = {six}")?;
    writeln!(out, "sqrt(5) representable: {}", ExactScalar::sqrt_int(5).is_some())?;
    writeln!(out, "1/0 -> {}", ExactScalar::zero().try_inv().unwrap_err())?;
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
