//! Library results checked against the independent reference code in `common`.

mod common;

use common::*;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twinspin::correlations::{
    agreement_with_third, joint_spin_zero_distribution, max_agreement_probability, partial_trace as lib_partial_trace,
    random_density, DensityMatrix,
};
use twinspin::linop::{hermitian_eigen, kernel_by_elimination, null_space, Matrix, SpaceShape, Vector};
use twinspin::scalar::{ExactScalar, Scalar};
use twinspin::spin::{
    dot_ls, make_spin, singlet, spin_one, spin_zero_projector, Axis, Direction, HalfInteger, SpinPair,
};
use twinspin::theorem::{defect, joint_kernel, twin_functional, DirectionSet};

type E = ExactScalar;
type F = Complex64;

fn float_dir(n: [f64; 3]) -> Direction<F> {
    Direction::from_f64(n[0], n[1], n[2]).unwrap()
}

#[test]
fn spin_one_matches_textbook_matrices() {
    let want = spin1();
    for backend in [spin_one::<F>(), {
        let e = spin_one::<E>();
        twinspin::spin::SpinTriple {
            j: e.j,
            sx: e.sx.to_float(),
            sy: e.sy.to_float(),
            sz: e.sz.to_float(),
        }
    }] {
        for axis in Axis::ALL {
            assert!(
                dist(&to_dense(backend.component(axis)), &want[axis.index()]) < 1e-15,
                "{axis}"
            );
        }
    }
}

#[test]
fn ladder_construction_matches_oracle_for_several_spins() {
    for twice in 1..=6u32 {
        let want = spin_j(twice);
        let got = make_spin::<F>(HalfInteger::from_twice(twice)).unwrap();
        for axis in Axis::ALL {
            assert!(dist(&to_dense(got.component(axis)), &want[axis.index()]) < 1e-14);
        }
    }
}

#[test]
fn exact_spin_half_and_three_halves_agree_with_float() {
    for twice in [1u32, 3] {
        let e = make_spin::<E>(HalfInteger::from_twice(twice)).unwrap();
        let want = spin_j(twice);
        assert!(dist(&to_dense(&e.sx.to_float()), &want[0]) < 1e-15);
        assert!(dist(&to_dense(&e.sy.to_float()), &want[1]) < 1e-15);
    }
}

#[test]
fn defect_matches_oracle_on_random_directions() {
    let mut rng = Lcg(11);
    for _ in 0..20 {
        let n = rng.unit_vector();
        let got = to_dense(&defect(&float_dir(n)));
        assert!(dist(&got, &common::defect(n)) < 1e-13);
    }
}

#[test]
fn zero_zero_functional_at_bisector_is_one_half() {
    let n = [std::f64::consts::FRAC_1_SQRT_2, 0.0, std::f64::consts::FRAC_1_SQRT_2];
    let mut psi = vec![c(0.0, 0.0); 9];
    psi[4] = c(1.0, 0.0);
    let dpsi = apply(&common::defect(n), &psi);
    let oracle: f64 = dpsi.iter().map(|x| x.norm_sqr()).sum();
    assert!((oracle - 0.5).abs() < 1e-14);

    let rho = DensityMatrix::from_pure(&Vector::<E>::basis(SpaceShape::uniform(3, 2), 4)).unwrap();
    let exact = twin_functional(&rho, &Direction::bisector(Axis::X, Axis::Z)).unwrap();
    assert_eq!(exact, E::from_ratio(1, 2));
    let float = twin_functional(&rho.to_float(), &float_dir(n)).unwrap();
    assert!((float.re - oracle).abs() < 1e-12);
}

#[test]
fn zero_zero_functional_follows_oracle_everywhere() {
    let mut rng = Lcg(5);
    let rho = DensityMatrix::from_pure(&Vector::<F>::basis(SpaceShape::uniform(3, 2), 4)).unwrap();
    for _ in 0..50 {
        let n = rng.unit_vector();
        let mut psi = vec![c(0.0, 0.0); 9];
        psi[4] = c(1.0, 0.0);
        let oracle: f64 = apply(&common::defect(n), &psi).iter().map(|x| x.norm_sqr()).sum();
        assert!((twin_functional(&rho, &float_dir(n)).unwrap().re - oracle).abs() < 1e-12);
    }
}

#[test]
fn maximally_mixed_functional_along_z() {
    let oracle = trace(&matmul(
        &common::defect([0.0, 0.0, 1.0]),
        &common::defect([0.0, 0.0, 1.0]),
    ))
    .re / 9.0;
    assert!((oracle - 4.0 / 9.0).abs() < 1e-15);
    let rho = DensityMatrix::<E>::maximally_mixed(SpaceShape::uniform(3, 2));
    assert_eq!(
        twin_functional(&rho, &Direction::axis(Axis::Z)).unwrap(),
        E::from_ratio(4, 9)
    );
}

#[test]
fn single_direction_kernel_has_dimension_five() {
    let oracle = common::defect([0.0, 0.0, 1.0]);
    let zero_diagonal = (0..9).filter(|&k| oracle[k][k].norm() == 0.0).count();
    let off_diagonal: f64 = (0..9)
        .flat_map(|r| (0..9).map(move |c| (r, c)))
        .filter(|(r, c)| r != c)
        .map(|(r, c)| oracle[r][c].norm())
        .sum();
    assert_eq!(off_diagonal, 0.0);
    assert_eq!(zero_diagonal, 5);
    assert_eq!(
        null_space(&defect::<E>(&Direction::axis(Axis::Z)), 0.0).len(),
        zero_diagonal
    );
}

#[test]
fn stacked_elimination_agrees_with_joint_kernel() {
    let dirs = DirectionSet::<E>::certifying();
    let mut rows = Vec::new();
    for n in dirs.iter() {
        let d = defect(n);
        for r in 0..9 {
            rows.push(d.row(r).to_vec());
        }
    }
    assert_eq!(rows.len(), 54);
    let kernel = kernel_by_elimination(rows, 9, 0.0);
    assert_eq!(kernel.len(), 1);
    let via_lib = joint_kernel(&dirs, 0.0);
    assert_eq!(via_lib.len(), 1);
    // Both are multiples of the same ray.
    let a = Vector::new(SpaceShape::uniform(3, 2), kernel[0].clone()).unwrap();
    let b = &via_lib[0];
    assert_eq!(a.inner(b).abs_sq(), a.norm_sq() * b.norm_sq());
}

#[test]
fn singlet_matches_clebsch_gordan() {
    let cg = singlet_cg();
    let phi = singlet::<F>();
    let got = phi.vector.entries();
    let amp: Complex64 = got.iter().zip(&cg).map(|(x, y)| x.conj() * y).sum();
    assert!((amp.norm() - 1.0).abs() < 1e-15);
    let e = singlet::<E>();
    assert_eq!(e.norm_sq, E::from_i64(3));
    let expected: Vec<i64> = vec![0, 0, -1, 0, 1, 0, -1, 0, 0];
    assert_eq!(
        e.vector,
        Vector::from_i64(SpaceShape::uniform(3, 2), &expected).unwrap()
    );
}

#[test]
fn ls_spectrum_matches_angular_momentum_addition() {
    // L·S = (J² − L² − S²)/2 = j(j+1)/2 − 2 with multiplicity 2j + 1.
    let mut oracle: Vec<f64> = Vec::new();
    for j in 0..=2u32 {
        let value = (j * (j + 1)) as f64 / 2.0 - 2.0;
        oracle.extend(std::iter::repeat_n(value, (2 * j + 1) as usize));
    }
    oracle.sort_by(f64::total_cmp);
    let eig = hermitian_eigen(&dot_ls::<F>(), 1e-10).unwrap();
    for (got, want) in eig.eigenvalues.iter().zip(&oracle) {
        assert!((got - want).abs() < 1e-12);
    }
    let s = spin1();
    let ls = (0..3).fold(zeros(9), |acc, k| add(&acc, &kron(&s[k], &s[k])));
    assert!(dist(&to_dense(&dot_ls::<F>()), &ls) < 1e-14);
}

#[test]
fn partial_trace_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for keep in [vec![0], vec![1], vec![2], vec![0, 2], vec![1, 2], vec![0, 1]] {
        let rho = random_density::<F, _>(SpaceShape::uniform(3, 3), 2, &mut rng);
        let want = partial_trace(&to_dense(rho.matrix()), &[3, 3, 3], &keep);
        let got = lib_partial_trace(&rho, &keep).unwrap();
        assert!(dist(&to_dense(got.matrix()), &want) < 1e-14, "{keep:?}");
    }
}

#[test]
fn rotated_singlet_is_invariant() {
    let mut rng = Lcg(99);
    let pair = SpinPair::<F>::new();
    let phi = singlet_cg();
    for _ in 0..100 {
        let n = rng.unit_vector();
        let theta = 2.0 * std::f64::consts::PI * rng.next_f64();
        let nj = to_dense(&pair.n_dot_j(&float_dir(n)));
        let u = expm(&scale(&nj, c(0.0, -theta)));
        let rotated = apply(&u, &phi);
        let err: f64 = rotated
            .iter()
            .zip(&phi)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(err < 1e-10);
    }
}

#[test]
fn singlet_annihilated_by_field_directions() {
    let pair = SpinPair::<E>::new();
    let phi = singlet::<E>();
    let dirs = [
        Direction::axis(Axis::X),
        Direction::bisector(Axis::X, Axis::Y),
        Direction::new(
            E::from_ratio(1, 2),
            E::from_ratio(1, 2),
            E::sqrt_int(2).unwrap() * E::from_ratio(1, 2),
        )
        .unwrap(),
        Direction::new(
            E::sqrt_int(3).unwrap() * E::from_ratio(1, 3),
            E::sqrt_int(3).unwrap() * E::from_ratio(1, 3),
            E::sqrt_int(3).unwrap() * E::from_ratio(-1, 3),
        )
        .unwrap(),
    ];
    for n in &dirs {
        assert!((&pair.n_dot_j(n) * &phi.vector).is_zero());
    }
}

#[test]
fn singlet_statistics_match_projector_oracle() {
    let mut rng = Lcg(17);
    let s = spin1();
    let phi = singlet_cg();
    for _ in 0..20 {
        let n = rng.unit_vector();
        let ns = along(&s, n);
        let p0 = add(&eye(3), &scale(&matmul(&ns, &ns), c(-1.0, 0.0)));
        let yy: f64 = apply(&kron(&p0, &p0), &phi)
            .iter()
            .zip(&phi)
            .map(|(x, y)| (y.conj() * x).re)
            .sum();
        let dist_lib = joint_spin_zero_distribution(
            &DensityMatrix::<F>::singlet(),
            &[Some(float_dir(n)), Some(float_dir(n))],
        )
        .unwrap();
        assert!((dist_lib.probability(&[true, true]).re - yy).abs() < 1e-12);
        assert!((yy - 1.0 / 3.0).abs() < 1e-12);
    }
}

#[test]
fn agreement_with_basis_third_spins() {
    // Oracle: three-site projector sums for a product state singlet ⊗ |k⟩⟨k|.
    let s = spin1();
    let p0 = add(&eye(3), &scale(&matmul(&s[2], &s[2]), c(-1.0, 0.0)));
    let q0 = add(&eye(3), &scale(&p0, c(-1.0, 0.0)));
    let phi = singlet_cg();
    let phi_rho: Dense = phi.iter().map(|a| phi.iter().map(|b| a * b.conj()).collect()).collect();
    let mut best: f64 = 0.0;
    for k in 0..3 {
        let mut third = zeros(3);
        third[k][k] = c(1.0, 0.0);
        let rho = kron(&phi_rho, &third);
        let agree = add(&kron(&kron(&p0, &p0), &p0), &kron(&kron(&q0, &q0), &q0));
        let oracle = trace(&matmul(&rho, &agree)).re;
        let mut v = vec![E::zero(); 3];
        v[k] = E::one();
        let rho_c = DensityMatrix::from_pure(&Vector::new(SpaceShape::single(3), v).unwrap()).unwrap();
        let got = agreement_with_third(&rho_c, &Direction::axis(Axis::Z)).unwrap();
        assert!((got.re() - oracle).abs() < 1e-14);
        best = best.max(oracle);
    }
    assert!((best - 2.0 / 3.0).abs() < 1e-14);
    let bound = max_agreement_probability::<E>(&Direction::axis(Axis::Z)).unwrap();
    assert_eq!(bound.value, E::from_ratio(2, 3));
}

#[test]
fn spin_zero_projector_matches_oracle() {
    let mut rng = Lcg(23);
    let s = spin1();
    for _ in 0..10 {
        let n = rng.unit_vector();
        let ns = along(&s, n);
        let want = add(&eye(3), &scale(&matmul(&ns, &ns), c(-1.0, 0.0)));
        let got = spin_zero_projector(&spin_one::<F>(), &float_dir(n)).unwrap();
        assert!(dist(&to_dense(&got), &want) < 1e-14);
        assert!((trace(&want).re - 1.0).abs() < 1e-14);
    }
}

#[test]
fn matrix_products_match_oracle() {
    let mut rng = Lcg(41);
    let mut random = |n: usize| -> Dense {
        (0..n)
            .map(|_| (0..n).map(|_| c(rng.next_f64() - 0.5, rng.next_f64() - 0.5)).collect())
            .collect()
    };
    let (a, b) = (random(3), random(3));
    let to_lib = |d: &Dense| Matrix::<F>::from_rows(SpaceShape::single(d.len()), d.clone()).unwrap();
    let got = to_lib(&a).tensor(&to_lib(&b));
    assert!(dist(&to_dense(&got), &kron(&a, &b)) < 1e-15);
    let (x, y) = (random(9), random(9));
    assert!(dist(&to_dense(&(&to_lib(&x) * &to_lib(&y))), &matmul(&x, &y)) < 1e-13);
}
