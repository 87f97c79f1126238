//! Acceptance harness: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twinspin::correlations::{
    factorization_gap, joint_spin_zero_distribution, max_agreement_probability, random_density,
    random_gaussian_integer_vector, sample_outcomes, Bipartition, DensityMatrix,
};
use twinspin::linop::{hermitian_eigen, spectral_apply, SpaceShape, Vector};
use twinspin::scalar::{ExactScalar, Scalar};
use twinspin::spin::{dot_ls, j_projectors, singlet, Axis, Direction, SpinPair};
use twinspin::theorem::{
    anticommutator_residual, axis_pairs, casimir_gap, classify_twin_state, commutation_gap, contraction_identity_check,
    defect, joint_kernel, twin_functional, DirectionSet, TwinVerdict,
};

type E = ExactScalar;
type F = Complex64;

const SEED: u64 = 20_240_601;

struct Criterion {
    id: &'static str,
    title: &'static str,
    limit: Option<Duration>,
    check: fn() -> Result<String, String>,
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn ac1() -> Result<String, String> {
    let phi = DensityMatrix::<E>::singlet();
    for n in DirectionSet::<E>::certifying().iter() {
        let v = twin_functional(&phi, n).map_err(|e| e.to_string())?;
        ensure(v.is_zero(), || format!("exact functional {v} at {n}"))?;
    }
    let phi = DensityMatrix::<F>::singlet();
    let mut worst = 0.0f64;
    for n in DirectionSet::<F>::random(1000, SEED).map_err(|e| e.to_string())?.iter() {
        worst = worst.max(twin_functional(&phi, n).map_err(|e| e.to_string())?.norm());
    }
    ensure(worst < 1e-12, || format!("float functional {worst:e}"))?;
    Ok(format!(
        "exact 0 on 6 directions; float max {worst:.1e} over 1000 (< 1e-12)"
    ))
}

fn ac2() -> Result<String, String> {
    let exact = joint_kernel(&DirectionSet::<E>::certifying(), 0.0);
    ensure(exact.len() == 1, || format!("exact kernel dimension {}", exact.len()))?;
    let overlap = singlet::<E>().overlap(&exact[0]);
    ensure(overlap == E::one(), || format!("exact overlap {overlap}"))?;
    let dirs = DirectionSet::<F>::random(50, SEED).map_err(|e| e.to_string())?;
    let float = joint_kernel(&dirs, 1e-10);
    ensure(float.len() == 1, || format!("float kernel dimension {}", float.len()))?;
    let o = singlet::<F>().overlap(&float[0]).re;
    ensure(o >= 1.0 - 1e-10, || format!("float overlap {o}"))?;
    Ok(format!(
        "exact dim 1, overlap 1; float (50 random) dim 1, overlap {o:.15}"
    ))
}

fn ac3() -> Result<String, String> {
    let eig = hermitian_eigen(&dot_ls::<F>(), 1e-10).map_err(|e| e.to_string())?;
    let want = [-2.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 1.0, 1.0];
    let err = eig
        .eigenvalues
        .iter()
        .zip(want)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    ensure(err < 1e-10, || format!("eigenvalue error {err:e}"))?;
    let traces: Vec<E> = j_projectors::<E>().iter().map(|(_, _, p)| p.trace()).collect();
    ensure(traces == [E::from_i64(1), E::from_i64(3), E::from_i64(5)], || {
        format!("traces {traces:?}")
    })?;
    Ok(format!(
        "{{1 x5, -1 x3, -2 x1}}, error {err:.1e}; projector traces 5, 3, 1 exact"
    ))
}

fn ac4() -> Result<String, String> {
    let exact = contraction_identity_check::<E>();
    ensure(exact.max() == 0.0, || format!("exact residuals {exact:?}"))?;
    let float = contraction_identity_check::<F>();
    ensure(float.max() < 1e-12, || format!("float residuals {float:?}"))?;
    // Independent float evaluation of the first identity.
    let s = spin1();
    let l: Vec<Dense> = s.iter().map(|m| kron(m, &eye(3))).collect();
    let sp: Vec<Dense> = s.iter().map(|m| kron(&eye(3), m)).collect();
    let mut lhs = zeros(9);
    for i in 0..3 {
        for j in 0..3 {
            let anti = add(&matmul(&sp[i], &sp[j]), &matmul(&sp[j], &sp[i]));
            lhs = add(&lhs, &matmul(&matmul(&l[i], &l[j]), &anti));
        }
    }
    let x = (0..3).fold(zeros(9), |acc, k| add(&acc, &matmul(&l[k], &sp[k])));
    let target = add(&scale(&matmul(&x, &x), c(2.0, 0.0)), &x);
    let oracle = dist(&lhs, &target);
    ensure(oracle < 1e-12, || format!("oracle residual {oracle:e}"))?;
    Ok(format!(
        "exact 0, 0; float max {:.1e}; oracle {oracle:.1e}",
        float.max()
    ))
}

fn ac5() -> Result<String, String> {
    let (comm, cas) = (commutation_gap::<E>(), casimir_gap::<E>());
    ensure(comm == 0.0 && cas == 0.0, || {
        format!("commutators {comm}, Casimir {cas}")
    })?;
    Ok("9 commutators and L² = S² = 2I hold exactly".into())
}

fn ac6() -> Result<String, String> {
    let tol = 1e-10;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let shape = SpaceShape::uniform(3, 2);
    let certifying = DirectionSet::<F>::certifying();
    let phi = singlet::<F>().vector;
    let (mut members, mut agree) = (0, 0);
    for k in 0..200 {
        let alpha = Complex64::from_polar(1.0 + k as f64 / 50.0, k as f64);
        let psi = match k % 4 {
            0 => phi.scale(&alpha),
            1 => random_gaussian_integer_vector::<F, _>(shape.clone(), &mut rng),
            2 => {
                let w = random_gaussian_integer_vector::<F, _>(shape.clone(), &mut rng);
                phi.scale(&alpha)
                    .try_add(&w.scale(&Complex64::new(1e-4, 0.0)))
                    .map_err(|e| e.to_string())?
            }
            _ => random_density::<F, _>(SpaceShape::single(9), 1, &mut rng)
                .matrix()
                .column(0)
                .reshape(shape.clone())
                .map_err(|e| e.to_string())?,
        };
        let norm = psi.norm();
        let in_kernel = certifying.iter().all(|n| (&defect(n) * &psi).norm() <= tol * norm);
        let satisfies = axis_pairs().all(|(i, j)| {
            anticommutator_residual(&psi, i, j)
                .map(|r| r.norm() <= tol * norm)
                .unwrap_or(false)
        });
        members += in_kernel as usize;
        agree += (in_kernel == satisfies) as usize;
    }
    ensure(agree == 200, || format!("{} disagreements", 200 - agree))?;
    Ok(format!("200 states, {members} in the kernel, all decisions agree"))
}

fn ac7() -> Result<String, String> {
    let zz = DensityMatrix::from_pure(&Vector::<F>::basis(SpaceShape::uniform(3, 2), 4)).map_err(|e| e.to_string())?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let n = Direction::from_f64(r, 0.0, r).map_err(|e| e.to_string())?;
    let v = twin_functional(&zz, &n).map_err(|e| e.to_string())?.re;
    ensure((v - 0.5).abs() < 1e-12, || format!("|00> functional {v}"))?;
    let mixed = DensityMatrix::<E>::maximally_mixed(SpaceShape::uniform(3, 2));
    let near = DensityMatrix::<E>::singlet()
        .mix(&E::from_ratio(999, 1000), &mixed)
        .map_err(|e| e.to_string())?;
    let dirs = DirectionSet::<E>::certifying();
    let mut detail = Vec::new();
    for (name, rho) in [("I/9", &mixed), ("0.999 singlet", &near)] {
        let c = classify_twin_state(rho, &dirs, 1e-10).map_err(|e| e.to_string())?;
        ensure(c.verdict == TwinVerdict::NotTwinned && c.witness.is_some(), || {
            format!("{name} classified {:?}", c.verdict)
        })?;
        detail.push(format!("{name} NOT_TWINNED at {}", c.witness.expect("checked")));
    }
    Ok(format!("|00> gives {v}; {}", detail.join("; ")))
}

fn ac8() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let singlet_e = DensityMatrix::<E>::singlet();
    for rank in 1..=3 {
        let rho_c = random_density::<E, _>(SpaceShape::single(3), rank, &mut rng);
        let gap = factorization_gap(&singlet_e.tensor(&rho_c), &Bipartition::first(2)).map_err(|e| e.to_string())?;
        ensure(gap == 0.0, || format!("exact factorization gap {gap}"))?;
    }
    let singlet_f = DensityMatrix::<F>::singlet();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let rho_c = random_density::<F, _>(SpaceShape::single(3), 3, &mut rng);
        let abc = singlet_f.tensor(&rho_c);
        let (n, m) = (Direction::random(&mut rng), Direction::random(&mut rng));
        let d = joint_spin_zero_distribution(&abc, &[Some(n.clone()), Some(n), Some(m)]).map_err(|e| e.to_string())?;
        worst = worst.max(d.independence_gap(2));
    }
    ensure(worst < 1e-12, || format!("|P(a,c) - P(a)P(c)| = {worst:e}"))?;
    let bound = max_agreement_probability::<F>(&Direction::random(&mut rng)).map_err(|e| e.to_string())?;
    ensure((bound.value.re - 2.0 / 3.0).abs() < 1e-12, || {
        format!("agreement {}", bound.value)
    })?;
    let z = Direction::<E>::axis(Axis::Z);
    let pair = joint_spin_zero_distribution(&singlet_e, &[Some(z.clone()), Some(z)]).map_err(|e| e.to_string())?;
    let third = E::from_ratio(1, 3);
    ensure(pair.marginal(&[0]).probability(&[true]) == third, || {
        "P(yes) != 1/3".into()
    })?;
    ensure(pair.probability(&[true, true]) == third, || "P(yy) != 1/3".into())?;
    ensure(pair.probability(&[false, false]) == E::from_ratio(2, 3), || {
        "P(nn) != 2/3".into()
    })?;
    ensure(pair.discord().is_zero(), || "discord != 0".into())?;
    Ok(format!(
        "gap 0 exact; independence {worst:.1e}; agreement {:.15}; yy 1/3, nn 2/3, discord 0",
        bound.value.re
    ))
}

fn ac9() -> Result<String, String> {
    let z = Direction::<F>::axis(Axis::Z);
    let stats = sample_outcomes(
        &DensityMatrix::<F>::singlet(),
        &[Some(z.clone()), Some(z)],
        100_000,
        SEED,
    )
    .map_err(|e| e.to_string())?;
    ensure(stats.discord_count() == 0, || {
        format!("discord {}", stats.discord_count())
    })?;
    let f = stats.frequency(&[true, true]);
    let bound = 3.0 * ((1.0 / 3.0) * (2.0 / 3.0) / 1e5f64).sqrt();
    ensure((f - 1.0 / 3.0).abs() < bound, || format!("freq(yy) {f}, bound {bound}"))?;
    Ok(format!("1e5 samples, discord 0, freq(yy) {f:.5} (|dev| < {bound:.4})"))
}

fn ac10() -> Result<String, String> {
    let pair = SpinPair::<E>::new();
    let phi = singlet::<E>().vector;
    let s2 = E::sqrt_int(2).expect("sqrt2");
    let s3 = E::sqrt_int(3).expect("sqrt3");
    let field_dirs = [
        Direction::axis(Axis::Y),
        Direction::bisector(Axis::Y, Axis::Z),
        Direction::new(
            E::from_ratio(1, 2),
            E::from_ratio(1, 2),
            s2.clone() * E::from_ratio(1, 2),
        )
        .map_err(|e| e.to_string())?,
        Direction::new(
            s3.clone() * E::from_ratio(1, 3),
            s3.clone() * E::from_ratio(-1, 3),
            s3 * E::from_ratio(1, 3),
        )
        .map_err(|e| e.to_string())?,
        Direction::new(E::from_ratio(3, 5), E::zero(), E::from_ratio(-4, 5)).map_err(|e| e.to_string())?,
    ];
    for n in &field_dirs {
        ensure((&pair.n_dot_j(n) * &phi).is_zero(), || format!("(n·J)Φ != 0 at {n}"))?;
    }
    let fpair = SpinPair::<F>::new();
    let fphi = singlet::<F>().vector;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for k in 0..100 {
        let n = Direction::random(&mut rng);
        let theta = 0.0628 * k as f64 + 0.01;
        let u = spectral_apply(&fpair.n_dot_j(&n), |x| Complex64::from_polar(1.0, -theta * x), 1e-10)
            .map_err(|e| e.to_string())?;
        worst = worst.max((&(&u * &fphi) - &fphi).norm());
    }
    ensure(worst < 1e-10, || format!("rotation error {worst:e}"))?;
    Ok(format!(
        "exact on {} field directions; max rotation error {worst:.1e}",
        field_dirs.len()
    ))
}

fn main() {
    let criteria = [
        Criterion {
            id: "AC1",
            title: "twin condition on the singlet",
            limit: Some(Duration::from_secs(1)),
            check: ac1,
        },
        Criterion {
            id: "AC2",
            title: "joint kernel is the singlet ray",
            limit: Some(Duration::from_secs(1)),
            check: ac2,
        },
        Criterion {
            id: "AC3",
            title: "spectrum of L·S",
            limit: None,
            check: ac3,
        },
        Criterion {
            id: "AC4",
            title: "contraction identities",
            limit: None,
            check: ac4,
        },
        Criterion {
            id: "AC5",
            title: "commutation and Casimir",
            limit: None,
            check: ac5,
        },
        Criterion {
            id: "AC6",
            title: "anticommutator/kernel equivalence",
            limit: None,
            check: ac6,
        },
        Criterion {
            id: "AC7",
            title: "counterexamples",
            limit: None,
            check: ac7,
        },
        Criterion {
            id: "AC8",
            title: "third-spin independence",
            limit: None,
            check: ac8,
        },
        Criterion {
            id: "AC9",
            title: "Monte Carlo",
            limit: Some(Duration::from_secs(5)),
            check: ac9,
        },
        Criterion {
            id: "AC10",
            title: "rotation invariance",
            limit: None,
            check: ac10,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.check)();
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:?}, limit {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("[PASS] {} {}: {detail} ({:.0?})", c.id, c.title, elapsed),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {} {}: {why}", c.id, c.title);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
