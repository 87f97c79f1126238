// The singlet is unchanged by joint rotations exp(-iθ n·J).
//
// ```bash
// cargo run --example rotation_invariance
// ```

use std::error::Error;
use std::fmt::Write;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twinspin::linop::{spectral_apply, SpaceShape, Vector};
use twinspin::scalar::{ExactScalar, Scalar};
use twinspin::spin::{singlet, Direction, SpinPair};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let exact = SpinPair::<ExactScalar>::new();
    let phi = singlet::<ExactScalar>().vector;
    let n = Direction::<ExactScalar>::new(
        ExactScalar::from_ratio(3, 5),
        ExactScalar::zero(),
        ExactScalar::from_ratio(4, 5),
    )?;
    writeln!(
        out,
        "(n·J)|singlet> == 0 for n = {n}: {}",
        (&exact.n_dot_j(&n) * &phi).is_zero()
    )?;

    let pair = SpinPair::<Complex64>::new();
    let phi = singlet::<Complex64>().vector;
    let basis = Vector::<Complex64>::basis(SpaceShape::uniform(3, 2), 0);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for theta in [0.3, 1.0, 2.5] {
        let n = Direction::random(&mut rng);
        let u = spectral_apply(&pair.n_dot_j(&n), |x| Complex64::from_polar(1.0, -theta * x), 1e-10)?;
        let moved = (&(&u * &phi) - &phi).norm();
        let other = (&(&u * &basis) - &basis).norm();
        writeln!(
            out,
            "theta {theta}: singlet moves {moved:.1e}, |+1,+1> moves {other:.3}"
        )?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
