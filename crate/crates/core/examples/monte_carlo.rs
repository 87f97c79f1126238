// Seeded sampling of spin-zero answers for singlet twins.
//
// ```bash
// cargo run --example monte_carlo -- 100000 1
// ```

use std::error::Error;
use std::fmt::Write;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twinspin::correlations::{sample_outcomes, DensityMatrix};
use twinspin::spin::Direction;

pub fn simulate(count: u64, seed: u64) -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let n = Direction::random(&mut ChaCha8Rng::seed_from_u64(seed));
    let rho = DensityMatrix::<Complex64>::singlet();
    let stats = sample_outcomes(&rho, &[Some(n.clone()), Some(n.clone())], count, seed)?;
    writeln!(out, "{count} samples along {n}")?;
    for (label, c) in &stats.counts {
        writeln!(out, "  {label}: {c:>8}  ({:.5})", *c as f64 / count as f64)?;
    }
    let sigma = ((1.0 / 3.0) * (2.0 / 3.0) / count as f64).sqrt();
    let dev = stats.frequency(&[true, true]) - 1.0 / 3.0;
    writeln!(
        out,
        "discord {}, yy deviation {:.2} sigma",
        stats.discord_count(),
        dev / sigma
    )?;
    Ok(out)
}

pub fn run_example() -> Result<String, Box<dyn Error>> {
    simulate(10_000, 1)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let mut args = std::env::args().skip(1);
    let count = args.next().map(|s| s.parse()).transpose()?.unwrap_or(100_000);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    print!("{}", simulate(count, seed)?);
    Ok(())
}
