// A third spin cannot share the twins' answer: the pair is a pure singlet, so
// any joint state factorizes and the best agreement is 2/3.
//
// ```bash
// cargo run --example third_spin
// ```

use std::error::Error;
use std::fmt::Write;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twinspin::correlations::{
    agreement_grid_search, factorization_gap, joint_spin_zero_distribution, max_agreement_probability, partial_trace,
    purity, random_density, random_gaussian_integer_vector, Bipartition, DensityMatrix,
};
use twinspin::linop::SpaceShape;
use twinspin::scalar::ExactScalar;
use twinspin::spin::{Axis, Direction};

type E = ExactScalar;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let rho_c = random_density::<E, _>(SpaceShape::single(3), 2, &mut rng);
    let abc = DensityMatrix::<E>::singlet().tensor(&rho_c);
    writeln!(
        out,
        "singlet ⊗ rho_C: factorization gap {}",
        factorization_gap(&abc, &Bipartition::first(2))?
    )?;

    let z = Direction::<E>::axis(Axis::Z);
    let x = Direction::<E>::axis(Axis::X);
    let dist = joint_spin_zero_distribution(&abc, &[Some(z.clone()), Some(z.clone()), Some(x)])?;
    writeln!(out, "joint statistics {dist}")?;
    writeln!(out, "|P(ab, c) - P(ab)P(c)| max {}", dist.independence_gap(2))?;

    let entangled = DensityMatrix::from_pure(&random_gaussian_integer_vector::<E, _>(
        SpaceShape::uniform(3, 3),
        &mut rng,
    ))?;
    let pair = partial_trace(&entangled, &[0, 1])?;
    writeln!(
        out,
        "generic 27-dim pure state: gap {:.4}, pair purity {:.4}",
        factorization_gap(&entangled, &Bipartition::first(2))?,
        twinspin::scalar::Scalar::re(&purity(&pair))
    )?;

    let bound = max_agreement_probability(&z)?;
    writeln!(out, "best agreement {} ({})", bound.value, bound.argmax)?;
    let searched = agreement_grid_search(&Direction::<Complex64>::axis(Axis::Z), 500, &mut rng)?;
    writeln!(out, "random search over third-spin states: best {searched:.4}")?;
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
