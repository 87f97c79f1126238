// The spectrum of L·S on two spin-1 sites, both from exact projectors and
// from the Jacobi eigensolver.
//
// ```bash
// cargo run --example ls_spectrum
// ```

use std::error::Error;
use std::fmt::Write;

use num_complex::Complex64;
use twinspin::linop::hermitian_eigen;
use twinspin::scalar::{ExactScalar, Scalar};
use twinspin::spin::{dot_ls, j_projectors};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let x = dot_ls::<ExactScalar>();
    for (j, lambda, p) in j_projectors::<ExactScalar>().iter() {
        let eigen_ok = &x * p == p.scale(&ExactScalar::from_i64(lambda));
        writeln!(
            out,
            "j = {j}: L·S = {lambda:>2}, dimension {}, L·S p = λ p: {eigen_ok}",
            p.trace()
        )?;
    }

    let eig = hermitian_eigen(&dot_ls::<Complex64>(), 1e-10)?;
    writeln!(
        out,
        "Jacobi eigenvalues: {:?}",
        eig.eigenvalues.iter().map(|v| format!("{v:.12}")).collect::<Vec<_>>()
    )?;
    for (value, count) in eig.multiplicities(1e-10) {
        writeln!(out, "  {value:>6.3} x{count}")?;
    }
    writeln!(
        out,
        "reconstruction residual {:.1e}",
        eig.reconstruction_residual(&dot_ls::<Complex64>())
    )?;
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
