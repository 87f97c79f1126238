//! The twin condition and the argument that it forces the singlet.
//!
//! For a direction `n` the *defect* `D(n) = (n·L)² − (n·S)²` measures how far
//! the two spins' squared components along `n` disagree. A state is twinned
//! when `Tr(ρ D(n)²) = 0` for every `n`; the checks here show that the joint
//! kernel of all `D(n)` is the singlet ray and nothing else.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::correlations::{CorrelationError, DensityMatrix};
use crate::linop::{hermitian_eigen, LinopError, Matrix, NullSpace, SpaceShape, Vector};
use crate::scalar::Scalar;
use crate::spin::{j_projectors, singlet, Axis, Direction, SpinPair};

/// Finite stand-in for "every direction".
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet<S> {
    directions: Vec<Direction<S>>,
}

impl<S: Scalar> DirectionSet<S> {
    pub fn new(directions: Vec<Direction<S>>) -> Result<Self, LinopError> {
        if directions.is_empty() {
            return Err(LinopError::InvalidShape("direction set must be nonempty".into()));
        }
        Ok(Self { directions })
    }

    /// The three axes and the three bisectors `(e_a + e_b)/√2`.
    ///
    /// Axes pin down the diagonal anticommutators (`i = j`), bisectors the
    /// off-diagonal ones, so the joint kernel over this set equals the joint
    /// kernel over all directions.
    pub fn certifying() -> Self {
        let mut directions: Vec<Direction<S>> = Axis::ALL.iter().map(|&a| Direction::axis(a)).collect();
        directions.push(Direction::bisector(Axis::X, Axis::Y));
        directions.push(Direction::bisector(Axis::Y, Axis::Z));
        directions.push(Direction::bisector(Axis::X, Axis::Z));
        Self { directions }
    }

    pub fn single(n: Direction<S>) -> Self {
        Self { directions: vec![n] }
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Direction<S>> {
        self.directions.iter()
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }
}

impl DirectionSet<Complex64> {
    /// `count` uniformly random directions from a ChaCha8 stream seeded with `seed`.
    pub fn random(count: usize, seed: u64) -> Result<Self, LinopError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::new((0..count).map(|_| Direction::random(&mut rng)).collect())
    }
}

/// `D(n) = (n·L)² − (n·S)²` on the two-spin-1 space.
pub fn defect<S: Scalar>(n: &Direction<S>) -> Matrix<S> {
    defect_in(&SpinPair::new(), n)
}

fn defect_in<S: Scalar>(pair: &SpinPair<S>, n: &Direction<S>) -> Matrix<S> {
    let nl = pair.n_dot_l(n);
    let ns = pair.n_dot_s(n);
    &(&nl * &nl) - &(&ns * &ns)
}

fn require_two_spin(shape: &SpaceShape) -> Result<(), CorrelationError> {
    if shape.dims() != [3, 3] {
        return Err(CorrelationError::BadSites(format!(
            "expected a two-spin-1 state, got shape {shape}"
        )));
    }
    Ok(())
}

/// `Tr(ρ D(n)²)`: nonnegative, and zero exactly when `D(n)ρ = 0`.
pub fn twin_functional<S: Scalar>(rho: &DensityMatrix<S>, n: &Direction<S>) -> Result<S, CorrelationError> {
    require_two_spin(rho.shape())?;
    let d = defect(n);
    rho.expectation(&(&d * &d))
}

/// `[(S_iS_j + S_jS_i) − (L_iL_j + L_jL_i)]|ψ⟩`
pub fn anticommutator_residual<S: Scalar>(psi: &Vector<S>, i: Axis, j: Axis) -> Result<Vector<S>, LinopError> {
    anticommutator_residual_in(&SpinPair::new(), psi, i, j)
}

fn anticommutator_residual_in<S: Scalar>(
    pair: &SpinPair<S>,
    psi: &Vector<S>,
    i: Axis,
    j: Axis,
) -> Result<Vector<S>, LinopError> {
    let op = pair
        .s(i)
        .anticommutator(pair.s(j))?
        .try_sub(&pair.l(i).anticommutator(pair.l(j))?)?;
    op.try_apply(psi)
}

/// The six unordered axis pairs `(i, j)` with `i ≤ j`.
pub fn axis_pairs() -> impl Iterator<Item = (Axis, Axis)> {
    Axis::ALL
        .into_iter()
        .flat_map(|i| Axis::ALL.into_iter().filter(move |&j| i <= j).map(move |j| (i, j)))
}

/// Frobenius gaps of the operator identities obtained by contracting the
/// anticommutator condition with `L_iL_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionResiduals {
    /// `‖Σ_ij L_iL_j{S_i, S_j} − [2(L·S)² + L·S]‖`
    pub lhs: f64,
    /// `‖Σ_ij L_iL_j{L_i, L_j} − [2(L²)² − L²]‖`
    pub rhs: f64,
    /// `‖2(L²)² − L² − 6·I‖`
    pub rhs_six: f64,
}

impl ContractionResiduals {
    pub fn max(&self) -> f64 {
        self.lhs.max(self.rhs).max(self.rhs_six)
    }
}

pub fn contraction_identity_check<S: Scalar>() -> ContractionResiduals {
    let pair = SpinPair::<S>::new();
    let x = pair.dot_ls();
    let l2 = pair.l_squared();
    let id = pair.identity();
    let contract = |other: &dyn Fn(Axis) -> Matrix<S>| {
        let terms: Vec<Matrix<S>> = Axis::ALL
            .iter()
            .flat_map(|&i| Axis::ALL.iter().map(move |&j| (i, j)))
            .map(|(i, j)| &(pair.l(i) * pair.l(j)) * &other(i).anticommutator(&other(j)).expect("same shape"))
            .collect();
        Matrix::sum(&terms).expect("nine terms")
    };
    let lhs_op = contract(&|a| pair.s(a).clone());
    let rhs_op = contract(&|a| pair.l(a).clone());
    let lhs_target = &(&x * &x).scale(&S::from_i64(2)) + &x;
    let rhs_target = &(&l2 * &l2).scale(&S::from_i64(2)) - &l2;
    ContractionResiduals {
        lhs: lhs_op.distance(&lhs_target).expect("same shape"),
        rhs: rhs_op.distance(&rhs_target).expect("same shape"),
        rhs_six: rhs_target.distance(&id.scale(&S::from_i64(6))).expect("same shape"),
    }
}

/// Basis of `∩_n ker D(n)`: unnormalized and exact for exact backends,
/// orthonormal for floats.
pub fn joint_kernel<S: NullSpace>(dirs: &DirectionSet<S>, tol: f64) -> Vec<Vector<S>> {
    let pair = SpinPair::<S>::new();
    let defects: Vec<Matrix<S>> = dirs.iter().map(|n| defect_in(&pair, n)).collect();
    S::joint_null_space(&defects, tol)
}

/// Largest commutator-relation residual: `[L_a, L_b] − iL_c` (cyclic), the same
/// for `S`, and all nine `[L_a, S_b]`.
pub fn commutation_gap<S: Scalar>() -> f64 {
    let pair = SpinPair::<S>::new();
    let i = S::imag_unit();
    let mut worst = 0.0f64;
    for a in Axis::ALL {
        let (b, c) = (a.cyclic_successor(), a.cyclic_successor().cyclic_successor());
        for ops in [&pair.l, &pair.s] {
            let lhs = ops[a.index()].commutator(&ops[b.index()]).expect("same shape");
            worst = worst.max(lhs.distance(&ops[c.index()].scale(&i)).expect("same shape"));
        }
        for b in Axis::ALL {
            let cross = pair.l(a).commutator(pair.s(b)).expect("same shape");
            worst = worst.max(cross.distance(&Matrix::zeros(pair.shape.clone())).expect("same shape"));
        }
    }
    worst
}

/// `max(‖L² − 2I‖, ‖S² − 2I‖)`
pub fn casimir_gap<S: Scalar>() -> f64 {
    let pair = SpinPair::<S>::new();
    let two = pair.identity().scale(&S::from_i64(2));
    pair.l_squared()
        .distance(&two)
        .expect("same shape")
        .max(pair.s_squared().distance(&two).expect("same shape"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// One named residual and whether it met the tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub name: &'static str,
    pub value: f64,
    pub passed: bool,
}

/// Everything [`verify_strong_theorem`] measured.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub backend: &'static str,
    pub tol: f64,
    pub directions: usize,
    pub commutator_gap: f64,
    pub casimir_gap: f64,
    /// Largest anticommutator residual over kernel vectors and axis pairs, relative to ‖ψ‖.
    pub anticommutator_residual: f64,
    pub contraction_gap: f64,
    pub contraction: ContractionResiduals,
    /// `‖L·S·p_j − λ_j p_j‖` maximized over j.
    pub spectrum_gap: f64,
    /// Idempotence, orthogonality, completeness, and commutation with `L·S`.
    pub projector_gap: f64,
    /// `2(L·S)² + L·S − 6` acting on each subspace versus `2λ² + λ − 6`.
    pub elimination_gap: f64,
    /// `max_n ‖(n·J)Φ‖` and `max_n ‖D(n)Φ‖`.
    pub singlet_annihilation_gap: f64,
    pub kernel_dimension: usize,
    pub singlet_overlap: f64,
    /// `(eigenvalue of L·S, multiplicity)`, ascending.
    pub spectrum: Vec<(f64, usize)>,
    /// Traces of the j = 0, 1, 2 projectors.
    pub subspace_dims: [f64; 3],
    pub checks: Vec<CheckRecord>,
    pub verdict: Verdict,
    pub failing: Vec<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn within<S: Scalar>(value: f64, tol: f64) -> bool {
    if S::EXACT {
        value == 0.0
    } else {
        value.is_finite() && value <= tol
    }
}

fn gap_of<S: Scalar>(m: &Matrix<S>, target: &Matrix<S>) -> f64 {
    m.distance(target).expect("same shape")
}

/// Runs every check of the argument and collects the outcome; nothing here
/// returns an error, failures are recorded in the report.
pub fn verify_strong_theorem<S: NullSpace>(dirs: &DirectionSet<S>, tol: f64) -> TheoremReport {
    let pair = SpinPair::<S>::new();
    let id = pair.identity();
    let x = pair.dot_ls();
    let proj = j_projectors::<S>();
    let phi = singlet::<S>();

    let commutator_gap = commutation_gap::<S>();
    let casimir = casimir_gap::<S>();
    let contraction = contraction_identity_check::<S>();

    // Subspace structure: eigen-relations, idempotence, orthogonality, completeness.
    let mut spectrum_gap = 0.0f64;
    let mut projector_gap = 0.0f64;
    let mut elimination_gap = 0.0f64;
    let elim_op = &(&(&x * &x).scale(&S::from_i64(2)) + &x) - &id.scale(&S::from_i64(6));
    let list: Vec<(u32, i64, &Matrix<S>)> = proj.iter().collect();
    for &(_, lambda, p) in &list {
        spectrum_gap = spectrum_gap.max(gap_of(&(&x * p), &p.scale(&S::from_i64(lambda))));
        projector_gap = projector_gap.max(gap_of(&(p * p), p));
        projector_gap = projector_gap.max(gap_of(&p.adjoint(), p));
        projector_gap = projector_gap.max(gap_of(
            &p.commutator(&x).expect("same shape"),
            &Matrix::zeros(id.shape().clone()),
        ));
        let shift = 2 * lambda * lambda + lambda - 6;
        elimination_gap = elimination_gap.max(gap_of(&(&elim_op * p), &p.scale(&S::from_i64(shift))));
        for &(_, other, q) in &list {
            if other != lambda {
                projector_gap = projector_gap.max(gap_of(&(p * q), &Matrix::zeros(id.shape().clone())));
            }
        }
    }
    let completeness = Matrix::sum(list.iter().map(|(_, _, p)| *p)).expect("three projectors");
    projector_gap = projector_gap.max(gap_of(&completeness, &id));
    let subspace_dims = [proj.p0.trace().re(), proj.p1.trace().re(), proj.p2.trace().re()];

    let spectrum = if S::EXACT {
        // Multiplicities are the exact projector traces.
        list.iter()
            .map(|&(_, lambda, p)| (lambda as f64, p.trace().re().round() as usize))
            .collect()
    } else {
        match hermitian_eigen(&x.to_float(), tol) {
            Ok(eig) => {
                let groups = eig.multiplicities(tol);
                let worst = eig
                    .eigenvalues
                    .iter()
                    .map(|&v| {
                        [1.0f64, -1.0, -2.0]
                            .iter()
                            .map(|t| (v - t).abs())
                            .fold(f64::INFINITY, f64::min)
                    })
                    .fold(0.0, f64::max);
                spectrum_gap = spectrum_gap.max(worst);
                groups
            }
            Err(_) => {
                spectrum_gap = f64::INFINITY;
                Vec::new()
            }
        }
    };

    let mut annihilation = 0.0f64;
    for n in dirs.iter() {
        let nj = pair.n_dot_j(n);
        annihilation = annihilation.max((&nj * &phi.vector).norm_if_nonzero());
        annihilation = annihilation.max((&defect_in(&pair, n) * &phi.vector).norm_if_nonzero());
    }

    let kernel = joint_kernel(dirs, tol);
    let kernel_dimension = kernel.len();
    let mut anti = 0.0f64;
    for k in &kernel {
        let scale = k.norm();
        for (i, j) in axis_pairs() {
            let r = anticommutator_residual_in(&pair, k, i, j).expect("two-spin vector");
            if !r.is_zero() {
                anti = anti.max(r.norm() / scale);
            }
        }
    }
    let (singlet_overlap, overlap_ok) = match kernel.as_slice() {
        [k] => {
            let o = phi.overlap(k);
            let ok = if S::EXACT { o == S::one() } else { o.re() >= 1.0 - tol };
            (o.re(), ok)
        }
        _ => (0.0, false),
    };

    let expected_spectrum = [(-2.0, 1usize), (-1.0, 3), (1.0, 5)];
    let spectrum_ok = spectrum.len() == 3
        && spectrum
            .iter()
            .zip(expected_spectrum)
            .all(|(&(v, m), (ev, em))| m == em && if S::EXACT { v == ev } else { (v - ev).abs() <= tol });

    let checks = vec![
        CheckRecord {
            name: "commutation_relations",
            value: commutator_gap,
            passed: within::<S>(commutator_gap, tol),
        },
        CheckRecord {
            name: "casimir",
            value: casimir,
            passed: within::<S>(casimir, tol),
        },
        CheckRecord {
            name: "contraction_lhs",
            value: contraction.lhs,
            passed: within::<S>(contraction.lhs, tol),
        },
        CheckRecord {
            name: "contraction_rhs",
            value: contraction.rhs,
            passed: within::<S>(contraction.rhs, tol),
        },
        CheckRecord {
            name: "contraction_rhs_six",
            value: contraction.rhs_six,
            passed: within::<S>(contraction.rhs_six, tol),
        },
        CheckRecord {
            name: "ls_spectrum",
            value: spectrum_gap,
            passed: within::<S>(spectrum_gap, tol) && spectrum_ok,
        },
        CheckRecord {
            name: "subspace_projectors",
            value: projector_gap,
            passed: within::<S>(projector_gap, tol),
        },
        CheckRecord {
            name: "eigenvalue_elimination",
            value: elimination_gap,
            passed: within::<S>(elimination_gap, tol),
        },
        CheckRecord {
            name: "singlet_annihilation",
            value: annihilation,
            passed: within::<S>(annihilation, tol),
        },
        CheckRecord {
            name: "kernel_anticommutators",
            value: anti,
            passed: within::<S>(anti, tol),
        },
        CheckRecord {
            name: "kernel_dimension",
            value: kernel_dimension as f64,
            passed: kernel_dimension == 1,
        },
        CheckRecord {
            name: "singlet_overlap",
            value: singlet_overlap,
            passed: overlap_ok,
        },
    ];
    let failing: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.to_string())
        .collect();
    TheoremReport {
        backend: S::NAME,
        tol,
        directions: dirs.len(),
        commutator_gap,
        casimir_gap: casimir,
        anticommutator_residual: anti,
        contraction_gap: contraction.max(),
        contraction,
        spectrum_gap,
        projector_gap,
        elimination_gap,
        singlet_annihilation_gap: annihilation,
        kernel_dimension,
        singlet_overlap,
        spectrum,
        subspace_dims,
        verdict: if failing.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        checks,
        failing,
    }
}

trait NormIfNonzero {
    fn norm_if_nonzero(&self) -> f64;
}

impl<S: Scalar> NormIfNonzero for Vector<S> {
    fn norm_if_nonzero(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.norm()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwinVerdict {
    Twinned,
    NotTwinned,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwinClassification<S> {
    pub verdict: TwinVerdict,
    /// `max_n Tr(ρ D(n)²)` over the direction set.
    pub max_functional: f64,
    /// Direction attaining the maximum, reported when not twinned.
    pub witness: Option<Direction<S>>,
    /// `‖ρ − |Φ⟩⟨Φ|‖_F`, reported when twinned.
    pub singlet_gap: Option<f64>,
    /// Whether a twinned state satisfied `singlet_gap ≤ tol`.
    pub conclusion_holds: Option<bool>,
}

/// Twinned iff the twin functional vanishes (within `tol`, or exactly) at
/// every direction of the set. A twinned state must then be the singlet.
pub fn classify_twin_state<S: Scalar>(
    rho: &DensityMatrix<S>,
    dirs: &DirectionSet<S>,
    tol: f64,
) -> Result<TwinClassification<S>, CorrelationError> {
    require_two_spin(rho.shape())?;
    let pair = SpinPair::<S>::new();
    let mut worst: Option<(f64, &Direction<S>)> = None;
    let mut all_zero = true;
    for n in dirs.iter() {
        let d = defect_in(&pair, n);
        let value = rho.expectation(&(&d * &d))?;
        all_zero &= value.is_negligible(tol);
        let v = if value.is_zero() { 0.0 } else { value.re() };
        if worst.is_none_or(|(w, _)| v > w) {
            worst = Some((v, n));
        }
    }
    let (max_functional, witness_dir) = worst.expect("direction set is nonempty");
    if all_zero {
        let gap = rho.matrix().distance(&DensityMatrix::<S>::singlet().matrix().clone())?;
        let holds = within::<S>(gap, tol);
        Ok(TwinClassification {
            verdict: TwinVerdict::Twinned,
            max_functional,
            witness: None,
            singlet_gap: Some(gap),
            conclusion_holds: Some(holds),
        })
    } else {
        Ok(TwinClassification {
            verdict: TwinVerdict::NotTwinned,
            max_functional,
            witness: Some(witness_dir.clone()),
            singlet_gap: None,
            conclusion_holds: None,
        })
    }
}
