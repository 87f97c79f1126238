// Spin matrices from ladder operators, with the commutation relations and
// Casimir checked exactly.
//
// ```bash
// cargo run --example spin_operators
// ```

use std::error::Error;
use std::fmt::Write;

use twinspin::linop::Matrix;
use twinspin::scalar::{ExactScalar, Scalar};
use twinspin::spin::{make_spin, spin_one, spin_zero_projector, Direction, HalfInteger};
use twinspin::theorem::{casimir_gap, commutation_gap};

type E = ExactScalar;

fn show(m: &Matrix<E>) -> String {
    (0..m.dim())
        .map(|r| m.row(r).iter().map(|x| format!("{x:>14}")).collect::<Vec<_>>().join(""))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let s = spin_one::<E>();
    writeln!(out, "S_x for spin 1:\n{}", show(&s.sx))?;
    writeln!(out, "S_y for spin 1:\n{}", show(&s.sy))?;

    let comm = &(&s.sx * &s.sy) - &(&s.sy * &s.sx);
    writeln!(out, "[S_x, S_y] == i S_z: {}", comm == s.sz.scale(&E::imag_unit()))?;
    writeln!(
        out,
        "S^2 == 2 I: {}",
        s.casimir() == Matrix::identity(s.sx.shape().clone()).scale(&E::from_i64(2))
    )?;

    let half = make_spin::<E>(HalfInteger::HALF)?;
    writeln!(out, "spin 1/2 S_x:\n{}", show(&half.sx))?;
    let three_halves = make_spin::<E>(HalfInteger::from_twice(3))?;
    writeln!(out, "spin 3/2 Casimir diagonal: {}", three_halves.casimir().get(0, 0))?;

    let n = Direction::<E>::bisector(twinspin::spin::Axis::X, twinspin::spin::Axis::Z);
    let p0 = spin_zero_projector(&s, &n)?;
    writeln!(out, "P0 along {n}:\n{}", show(&p0))?;
    writeln!(out, "P0 idempotent: {}", &p0 * &p0 == p0)?;

    writeln!(
        out,
        "two-spin commutator gap {}, Casimir gap {}",
        commutation_gap::<E>(),
        casimir_gap::<E>()
    )?;
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
