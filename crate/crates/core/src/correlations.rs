//! Density matrices, marginals, and spin-zero measurement statistics.
//!
//! A pure two-spin state cannot be correlated with anything outside it. Here
//! that shows up twice: as an operator identity `ρ_ABC = ρ_AB ⊗ ρ_C`, and as
//! factorized outcome statistics for spin-zero measurements.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::linop::{hermitian_eigen, LinopError, Matrix, SpaceShape, Vector, DEFAULT_TOL};
use crate::scalar::Scalar;
use crate::spin::{singlet, spin_one, spin_zero_projector, Direction, SpinError};

/// Smallest eigenvalue accepted (and clipped to zero) in a density matrix.
pub const NEGATIVITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CorrelationError {
    #[error("density matrix is not Hermitian (‖ρ − ρ†‖_F = {0:e})")]
    NotHermitian(f64),
    #[error("density matrix has trace {0}, expected 1")]
    BadTrace(String),
    #[error("density matrix has eigenvalue {0:e} below −{NEGATIVITY_TOL:e}")]
    NotPositive(f64),
    #[error("invalid site selection: {0}")]
    BadSites(String),
    #[error("measured site {site} has dimension {dim}, expected a spin-1 site")]
    NotSpinOne { site: usize, dim: usize },
    #[error("sample count must be at least 1")]
    EmptySample,
    #[error("probabilities do not form a distribution: {0}")]
    BadDistribution(String),
    #[error(transparent)]
    Linop(#[from] LinopError),
    #[error(transparent)]
    Spin(#[from] SpinError),
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> DensityMatrix<S> {
    /// Validates Hermiticity and unit trace (exactly for exact backends, within
    /// `tol` otherwise) and positivity down to −[`NEGATIVITY_TOL`].
    pub fn new(matrix: Matrix<S>, tol: f64) -> Result<Self, CorrelationError> {
        if !matrix.is_hermitian(tol) {
            return Err(CorrelationError::NotHermitian(matrix.hermiticity_gap()));
        }
        let trace = matrix.trace();
        if !(trace.clone() - S::one()).is_negligible(tol) {
            return Err(CorrelationError::BadTrace(trace.to_string()));
        }
        let float = matrix.to_float();
        let eig = hermitian_eigen(&float, tol.max(NEGATIVITY_TOL))?;
        let min = eig.eigenvalues.first().copied().unwrap_or(0.0);
        if min < -NEGATIVITY_TOL {
            return Err(CorrelationError::NotPositive(min));
        }
        Ok(Self { matrix })
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`; the vector need not be normalized.
    pub fn from_pure(psi: &Vector<S>) -> Result<Self, CorrelationError> {
        let norm_sq = psi.norm_sq();
        let inv = norm_sq
            .try_inv()
            .map_err(|_| CorrelationError::BadTrace("0 (zero vector)".into()))?;
        Ok(Self {
            matrix: psi.outer(psi).scale(&inv),
        })
    }

    pub fn maximally_mixed(shape: SpaceShape) -> Self {
        let inv = S::from_ratio(1, shape.total() as i64);
        Self {
            matrix: Matrix::identity(shape).scale(&inv),
        }
    }

    /// Projector onto the two-spin-1 singlet.
    pub fn singlet() -> Self {
        Self {
            matrix: singlet::<S>().projector(),
        }
    }

    /// Convex combination `w·self + (1 − w)·other`.
    pub fn mix(&self, weight: &S, other: &Self) -> Result<Self, CorrelationError> {
        let rest = S::one() - weight.clone();
        Ok(Self {
            matrix: self.matrix.scale(weight).try_add(&other.matrix.scale(&rest))?,
        })
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn shape(&self) -> &SpaceShape {
        self.matrix.shape()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.tensor(&other.matrix),
        }
    }

    /// `Tr(ρA)`
    pub fn expectation(&self, op: &Matrix<S>) -> Result<S, CorrelationError> {
        if op.shape() != self.shape() {
            return Err(LinopError::ShapeMismatch {
                left: self.shape().clone(),
                right: op.shape().clone(),
            }
            .into());
        }
        let n = op.dim();
        let mut acc = S::zero();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (self.matrix.get(i, j), op.get(j, i));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
        }
        Ok(acc)
    }

    pub fn to_float(&self) -> DensityMatrix<Complex64> {
        DensityMatrix {
            matrix: self.matrix.to_float(),
        }
    }
}

fn check_sites(shape: &SpaceShape, sites: &[usize]) -> Result<Vec<usize>, CorrelationError> {
    let mut sorted = sites.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty() || sorted.len() != sites.len() || sorted.last().is_some_and(|&s| s >= shape.sites()) {
        return Err(CorrelationError::BadSites(format!("{sites:?} for shape {shape}")));
    }
    Ok(sorted)
}

/// Reduced state on the `keep` sites (returned in ascending site order).
pub fn partial_trace<S: Scalar>(rho: &DensityMatrix<S>, keep: &[usize]) -> Result<DensityMatrix<S>, CorrelationError> {
    let shape = rho.shape();
    let keep = check_sites(shape, keep)?;
    let traced: Vec<usize> = (0..shape.sites()).filter(|s| !keep.contains(s)).collect();
    let out_shape = SpaceShape::new(keep.iter().map(|&s| shape.dims()[s]).collect())?;
    let n = shape.total();
    let digits: Vec<Vec<usize>> = (0..n).map(|i| shape.unflatten(i)).collect();
    let project = |d: &[usize], sites: &[usize]| sites.iter().map(|&s| d[s]).collect::<Vec<_>>();
    let kept_index: Vec<usize> = digits.iter().map(|d| out_shape.flatten(&project(d, &keep))).collect();
    let traced_key: Vec<Vec<usize>> = digits.iter().map(|d| project(d, &traced)).collect();

    let m = out_shape.total();
    let mut entries = vec![S::zero(); m * m];
    for i in 0..n {
        for j in 0..n {
            if traced_key[i] != traced_key[j] {
                continue;
            }
            let x = rho.matrix().get(i, j);
            if x.is_zero() {
                continue;
            }
            let slot = &mut entries[kept_index[i] * m + kept_index[j]];
            *slot = slot.clone() + x.clone();
        }
    }
    Ok(DensityMatrix {
        matrix: Matrix::new(out_shape, entries)?,
    })
}

/// `Tr(ρ²)`
pub fn purity<S: Scalar>(rho: &DensityMatrix<S>) -> S {
    rho.expectation(rho.matrix()).expect("same shape")
}

/// A split of the sites into `block` and its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    block: Vec<usize>,
}

impl Bipartition {
    pub fn new(block: Vec<usize>) -> Self {
        Self { block }
    }

    /// Sites `0..k` against the rest: the twin pair `AB` against `C` is `first(2)`.
    pub fn first(k: usize) -> Self {
        Self {
            block: (0..k).collect(),
        }
    }

    pub fn block(&self) -> &[usize] {
        &self.block
    }
}

/// `‖ρ − ρ_block ⊗ ρ_rest‖_F`, with the product laid out in `rho`'s site order.
pub fn factorization_gap<S: Scalar>(rho: &DensityMatrix<S>, cut: &Bipartition) -> Result<f64, CorrelationError> {
    let shape = rho.shape();
    let block = check_sites(shape, cut.block())?;
    let rest: Vec<usize> = (0..shape.sites()).filter(|s| !block.contains(s)).collect();
    if rest.is_empty() {
        return Err(CorrelationError::BadSites(format!(
            "cut {block:?} leaves no complement in {shape}"
        )));
    }
    let product = partial_trace(rho, &block)?.tensor(&partial_trace(rho, &rest)?);
    let order: Vec<usize> = block.iter().chain(&rest).copied().collect();
    let pshape = product.shape().clone();
    let n = shape.total();
    let relabel: Vec<usize> = (0..n)
        .map(|i| {
            let d = shape.unflatten(i);
            pshape.flatten(&order.iter().map(|&s| d[s]).collect::<Vec<_>>())
        })
        .collect();
    let reordered = Matrix::from_fn(shape.clone(), |r, c| {
        product.matrix().get(relabel[r], relabel[c]).clone()
    })?;
    Ok(rho.matrix().distance(&reordered)?)
}

/// Yes/no answers, one per measured site (`true` = "spin component is zero").
pub type Outcome = Vec<bool>;

pub fn outcome_label(outcome: &[bool]) -> String {
    outcome.iter().map(|&b| if b { 'y' } else { 'n' }).collect()
}

/// Probabilities over all `2^k` outcome tuples of `k` measured sites.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution<S> {
    pub sites: Vec<usize>,
    probs: BTreeMap<Outcome, S>,
}

fn all_outcomes(k: usize) -> Vec<Outcome> {
    // "yes" first: yy, yn, ny, nn
    (0..1usize << k)
        .map(|bits| (0..k).map(|pos| bits >> (k - 1 - pos) & 1 == 0).collect())
        .collect()
}

impl<S: Scalar> JointDistribution<S> {
    pub fn new(sites: Vec<usize>, probs: BTreeMap<Outcome, S>, tol: f64) -> Result<Self, CorrelationError> {
        let k = sites.len();
        if probs.keys().any(|o| o.len() != k) {
            return Err(CorrelationError::BadDistribution(
                "outcome length differs from site count".into(),
            ));
        }
        if probs.values().any(|p| p.re() < -tol || !p.is_real(tol)) {
            return Err(CorrelationError::BadDistribution(
                "negative or complex probability".into(),
            ));
        }
        let total = probs.values().fold(S::zero(), |acc, p| acc + p.clone());
        if !(total.clone() - S::one()).is_negligible(tol) {
            return Err(CorrelationError::BadDistribution(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Self { sites, probs })
    }

    pub fn probability(&self, outcome: &[bool]) -> S {
        self.probs.get(outcome).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Outcome, &S)> {
        self.probs.iter()
    }

    /// Marginal over the given positions of the outcome tuple.
    pub fn marginal(&self, positions: &[usize]) -> JointDistribution<S> {
        let mut probs: BTreeMap<Outcome, S> = all_outcomes(positions.len())
            .into_iter()
            .map(|o| (o, S::zero()))
            .collect();
        for (o, p) in &self.probs {
            let key: Outcome = positions.iter().map(|&k| o[k]).collect();
            let slot = probs.get_mut(&key).expect("all outcomes present");
            *slot = slot.clone() + p.clone();
        }
        JointDistribution {
            sites: positions.iter().map(|&k| self.sites[k]).collect(),
            probs,
        }
    }

    /// Probability that the first two measured sites disagree.
    pub fn discord(&self) -> S {
        self.probs
            .iter()
            .filter(|(o, _)| o[0] != o[1])
            .fold(S::zero(), |acc, (_, p)| acc + p.clone())
    }

    /// `max |P(a, c) − P(a)P(c)|` over outcome tuples, splitting positions
    /// `0..split` from the rest.
    pub fn independence_gap(&self, split: usize) -> f64 {
        let k = self.sites.len();
        let left: Vec<usize> = (0..split).collect();
        let right: Vec<usize> = (split..k).collect();
        let (pa, pc) = (self.marginal(&left), self.marginal(&right));
        self.probs
            .iter()
            .map(|(o, p)| {
                let joint = p.clone() - pa.probability(&o[..split]) * pc.probability(&o[split..]);
                if joint.is_zero() {
                    0.0
                } else {
                    joint.to_complex().norm()
                }
            })
            .fold(0.0, f64::max)
    }

    pub fn to_float(&self) -> JointDistribution<Complex64> {
        JointDistribution {
            sites: self.sites.clone(),
            probs: self.probs.iter().map(|(o, p)| (o.clone(), p.to_complex())).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for JointDistribution<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .probs
            .iter()
            .map(|(o, p)| format!("{}: {}", outcome_label(o), p))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Born-rule statistics of spin-zero measurements; `dirs[site]` is `None` for
/// unmeasured sites.
pub fn joint_spin_zero_distribution<S: Scalar>(
    rho: &DensityMatrix<S>,
    dirs: &[Option<Direction<S>>],
) -> Result<JointDistribution<S>, CorrelationError> {
    let shape = rho.shape();
    if dirs.len() != shape.sites() {
        return Err(CorrelationError::BadSites(format!(
            "{} directions for shape {shape}",
            dirs.len()
        )));
    }
    let spin = spin_one::<S>();
    let mut measured = Vec::new();
    let mut yes_no: Vec<Option<(Matrix<S>, Matrix<S>)>> = Vec::new();
    for (site, dir) in dirs.iter().enumerate() {
        match dir {
            Some(n) => {
                let dim = shape.dims()[site];
                if dim != 3 {
                    return Err(CorrelationError::NotSpinOne { site, dim });
                }
                let p = spin_zero_projector(&spin, n)?;
                let q = &Matrix::identity(p.shape().clone()) - &p;
                measured.push(site);
                yes_no.push(Some((p, q)));
            }
            None => yes_no.push(None),
        }
    }
    let mut probs = BTreeMap::new();
    for outcome in all_outcomes(measured.len()) {
        let mut answers = outcome.iter();
        let factors = yes_no.iter().zip(shape.dims()).map(|(pq, &d)| match pq {
            Some((yes, no)) => {
                if *answers.next().expect("one answer per measured site") {
                    yes.clone()
                } else {
                    no.clone()
                }
            }
            None => Matrix::identity(SpaceShape::single(d)),
        });
        let op = factors
            .reduce(|acc, f| acc.tensor(&f))
            .expect("at least one site")
            .reshape(shape.clone())?;
        probs.insert(outcome, rho.expectation(&op)?);
    }
    JointDistribution::new(measured, probs, DEFAULT_TOL)
}

/// Best achievable agreement between a third spin and the twins' common answer.
#[derive(Debug, Clone, PartialEq)]
pub struct AgreementBound<S> {
    /// Maximum over third-spin states of P(third answer = twins' answer).
    pub value: S,
    /// P(twins both say yes) along `n0` in the singlet.
    pub twins_yes: S,
    /// Probability P(third says yes) at the optimum.
    pub optimal_third_yes: S,
    pub argmax: String,
}

/// Agreement of a product `singlet ⊗ ρ_C` when all three spins measure along `n0`.
pub fn agreement_with_third<S: Scalar>(rho_c: &DensityMatrix<S>, n0: &Direction<S>) -> Result<S, CorrelationError> {
    let state = DensityMatrix::<S>::singlet()
        .tensor(rho_c)
        .reshaped(SpaceShape::uniform(3, 3))?;
    let dist = joint_spin_zero_distribution(&state, &[Some(n0.clone()), Some(n0.clone()), Some(n0.clone())])?;
    Ok(dist.probability(&[true, true, true]) + dist.probability(&[false, false, false]))
}

/// Twinning forces the singlet, so the third spin is independent of the pair
/// and agreement is linear in `p = P(third says yes)`:
/// `q·p + (1 − q)(1 − p)` with `q` the twins' yes-probability. The maximum sits
/// at an endpoint of `p ∈ [0, 1]`.
pub fn max_agreement_probability<S: Scalar>(n0: &Direction<S>) -> Result<AgreementBound<S>, CorrelationError> {
    let twins = joint_spin_zero_distribution(&DensityMatrix::<S>::singlet(), &[Some(n0.clone()), Some(n0.clone())])?;
    let q = twins.probability(&[true, true]);
    let not_q = S::one() - q.clone();
    let (value, p, argmax) = if q.re() <= not_q.re() {
        (
            not_q,
            S::zero(),
            format!("third spin with <P0(n0)> = 0 (never answers yes), n0 = {n0}"),
        )
    } else {
        (
            q.clone(),
            S::one(),
            format!("third spin with <P0(n0)> = 1 (always answers yes), n0 = {n0}"),
        )
    };
    Ok(AgreementBound {
        value,
        twins_yes: q,
        optimal_third_yes: p,
        argmax,
    })
}

/// Largest agreement seen over `samples` random third-spin states (float).
pub fn agreement_grid_search<R: Rng + ?Sized>(
    n0: &Direction<Complex64>,
    samples: usize,
    rng: &mut R,
) -> Result<f64, CorrelationError> {
    let mut best = 0.0f64;
    for _ in 0..samples {
        let rho_c = random_density::<Complex64, _>(SpaceShape::single(3), 3, rng);
        best = best.max(agreement_with_third(&rho_c, n0)?.re);
    }
    Ok(best)
}

/// Monte Carlo counts drawn from a joint distribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleStats {
    pub counts: BTreeMap<String, u64>,
    pub total: u64,
    pub seed: u64,
}

impl SampleStats {
    pub fn count(&self, outcome: &[bool]) -> u64 {
        self.counts.get(&outcome_label(outcome)).copied().unwrap_or(0)
    }

    pub fn frequency(&self, outcome: &[bool]) -> f64 {
        self.count(outcome) as f64 / self.total as f64
    }

    /// Samples where the first two answers differ.
    pub fn discord_count(&self) -> u64 {
        self.counts
            .iter()
            .filter(|(label, _)| {
                let b = label.as_bytes();
                b.len() >= 2 && b[0] != b[1]
            })
            .map(|(_, &c)| c)
            .sum()
    }
}

/// Inverse-CDF sampling over the outcome tuples with a seeded ChaCha8 stream.
pub fn sample_distribution<S: Scalar>(
    dist: &JointDistribution<S>,
    count: u64,
    seed: u64,
) -> Result<SampleStats, CorrelationError> {
    if count == 0 {
        return Err(CorrelationError::EmptySample);
    }
    let mut cdf: Vec<(String, f64)> = Vec::new();
    let mut acc = 0.0;
    for (o, p) in dist.iter() {
        let p = p.re();
        if p < -NEGATIVITY_TOL {
            return Err(CorrelationError::BadDistribution(format!("probability {p:e}")));
        }
        acc += p.max(0.0);
        cdf.push((outcome_label(o), acc));
    }
    let mut counts: BTreeMap<String, u64> = cdf.iter().map(|(l, _)| (l.clone(), 0)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let u = rng.random::<f64>() * acc;
        let label = cdf
            .iter()
            .find(|(_, c)| u < *c)
            .or(cdf.last())
            .map(|(l, _)| l)
            .expect("nonempty");
        *counts.get_mut(label).expect("label present") += 1;
    }
    Ok(SampleStats {
        counts,
        total: count,
        seed,
    })
}

pub fn sample_outcomes<S: Scalar>(
    rho: &DensityMatrix<S>,
    dirs: &[Option<Direction<S>>],
    count: u64,
    seed: u64,
) -> Result<SampleStats, CorrelationError> {
    if count == 0 {
        return Err(CorrelationError::EmptySample);
    }
    sample_distribution(&joint_spin_zero_distribution(rho, dirs)?, count, seed)
}

/// `AA†/Tr(AA†)` for `A` with `rank` columns of small random Gaussian integers.
/// Works in both backends, so exact tests can use it too.
pub fn random_density<S: Scalar, R: Rng + ?Sized>(shape: SpaceShape, rank: usize, rng: &mut R) -> DensityMatrix<S> {
    loop {
        let mut sum = Matrix::zeros(shape.clone());
        for _ in 0..rank {
            let v = random_gaussian_integer_vector::<S, R>(shape.clone(), rng);
            sum = &sum + &v.outer(&v);
        }
        let trace = sum.trace();
        if let Ok(inv) = trace.try_inv() {
            return DensityMatrix {
                matrix: sum.scale(&inv),
            };
        }
    }
}

/// Vector with entries `a + b·i`, `a, b ∈ [−3, 3]`; never the zero vector.
pub fn random_gaussian_integer_vector<S: Scalar, R: Rng + ?Sized>(shape: SpaceShape, rng: &mut R) -> Vector<S> {
    loop {
        let entries: Vec<S> = (0..shape.total())
            .map(|_| S::from_i64(rng.random_range(-3..=3)) + S::imag_unit() * S::from_i64(rng.random_range(-3..=3)))
            .collect();
        let v = Vector::new(shape.clone(), entries).expect("length matches");
        if !v.is_zero() {
            return v;
        }
    }
}

impl<S: Scalar> DensityMatrix<S> {
    /// Retags the underlying matrix with a new factorization of the same dimension.
    pub fn reshaped(self, shape: SpaceShape) -> Result<Self, CorrelationError> {
        Ok(Self {
            matrix: self.matrix.reshape(shape)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactScalar;
    use crate::spin::Axis;

    type E = ExactScalar;

    #[test]
    fn singlet_marginal_is_maximally_mixed() {
        let rho = DensityMatrix::<E>::singlet();
        let a = partial_trace(&rho, &[0]).unwrap();
        assert_eq!(a, DensityMatrix::maximally_mixed(SpaceShape::single(3)));
        assert_eq!(purity(&a), E::from_ratio(1, 3));
        assert_eq!(purity(&rho), E::one());
        assert_eq!(
            purity(&DensityMatrix::<E>::maximally_mixed(SpaceShape::uniform(3, 2))),
            E::from_ratio(1, 9)
        );
    }

    #[test]
    fn product_marginals() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_density::<E, _>(SpaceShape::single(3), 2, &mut rng);
        let b = random_density::<E, _>(SpaceShape::single(2), 1, &mut rng);
        let ab = a.tensor(&b);
        assert_eq!(partial_trace(&ab, &[0]).unwrap(), a);
        assert_eq!(partial_trace(&ab, &[1]).unwrap(), b);
        assert_eq!(factorization_gap(&ab, &Bipartition::first(1)).unwrap(), 0.0);
        // non-contiguous cut on a three-site product
        let abc = ab.tensor(&a);
        assert_eq!(factorization_gap(&abc, &Bipartition::new(vec![0, 2])).unwrap(), 0.0);
    }

    #[test]
    fn bad_site_sets() {
        let rho = DensityMatrix::<E>::singlet();
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &[2]).is_err());
        assert!(partial_trace(&rho, &[0, 0]).is_err());
        assert!(factorization_gap(&rho, &Bipartition::first(2)).is_err());
    }

    #[test]
    fn validation_rejects_bad_matrices() {
        let shape = SpaceShape::single(2);
        let not_herm = Matrix::from_rows(
            shape.clone(),
            vec![
                vec![E::from_ratio(1, 2), E::one()],
                vec![E::zero(), E::from_ratio(1, 2)],
            ],
        )
        .unwrap();
        assert!(matches!(
            DensityMatrix::new(not_herm, 0.0),
            Err(CorrelationError::NotHermitian(_))
        ));
        let bad_trace = Matrix::<E>::identity(shape.clone());
        assert!(matches!(
            DensityMatrix::new(bad_trace, 0.0),
            Err(CorrelationError::BadTrace(_))
        ));
        let negative = Matrix::diagonal(shape.clone(), vec![E::from_ratio(3, 2), E::from_ratio(-1, 2)]).unwrap();
        assert!(matches!(
            DensityMatrix::new(negative, 0.0),
            Err(CorrelationError::NotPositive(_))
        ));
        let fine = Matrix::diagonal(shape, vec![E::from_ratio(1, 4), E::from_ratio(3, 4)]).unwrap();
        assert!(DensityMatrix::new(fine, 0.0).is_ok());
    }

    #[test]
    fn ket_zero_zero_along_z() {
        let zz = Vector::<E>::basis(SpaceShape::uniform(3, 2), 4);
        let rho = DensityMatrix::from_pure(&zz).unwrap();
        let z = Direction::axis(Axis::Z);
        let dist = joint_spin_zero_distribution(&rho, &[Some(z.clone()), Some(z)]).unwrap();
        assert_eq!(dist.probability(&[true, true]), E::one());
        assert!(dist.probability(&[true, false]).is_zero());
        assert!(dist.probability(&[false, false]).is_zero());
    }

    #[test]
    fn measuring_a_non_spin_one_site() {
        let rho = DensityMatrix::<E>::maximally_mixed(SpaceShape::new(vec![3, 2]).unwrap());
        let z = Direction::axis(Axis::Z);
        assert!(matches!(
            joint_spin_zero_distribution(&rho, &[None, Some(z.clone())]),
            Err(CorrelationError::NotSpinOne { site: 1, dim: 2 })
        ));
        assert!(joint_spin_zero_distribution(&rho, &[Some(z)]).is_err());
    }

    #[test]
    fn sampler_contracts() {
        let probs: BTreeMap<Outcome, E> = [(vec![true, true], E::one()), (vec![false, false], E::zero())].into();
        let dist = JointDistribution::new(vec![0, 1], probs, 0.0).unwrap();
        let stats = sample_distribution(&dist, 1000, 5).unwrap();
        assert_eq!(stats.count(&[true, true]), 1000);
        assert_eq!(stats, sample_distribution(&dist, 1000, 5).unwrap());
        assert!(matches!(
            sample_distribution(&dist, 0, 5),
            Err(CorrelationError::EmptySample)
        ));
    }

    #[test]
    fn agreement_endpoints() {
        let z = Direction::<E>::axis(Axis::Z);
        let bound = max_agreement_probability(&z).unwrap();
        assert_eq!(bound.value, E::from_ratio(2, 3));
        assert_eq!(bound.twins_yes, E::from_ratio(1, 3));
        // a third spin that always says yes along z
        let always_yes = DensityMatrix::from_pure(&Vector::<E>::basis(SpaceShape::single(3), 1)).unwrap();
        assert_eq!(agreement_with_third(&always_yes, &z).unwrap(), E::from_ratio(1, 3));
        let never_yes = DensityMatrix::from_pure(&Vector::<E>::basis(SpaceShape::single(3), 0)).unwrap();
        assert_eq!(agreement_with_third(&never_yes, &z).unwrap(), E::from_ratio(2, 3));
    }
}

/// Outcome of the pure-pair independence checks used by the verifier.
#[derive(Debug, Clone, PartialEq)]
pub struct IndependenceReport {
    pub product_states: usize,
    /// `max ‖ρ_ABC − ρ_AB ⊗ ρ_C‖` over `singlet ⊗ ρ_C` samples.
    pub factorization_gap: f64,
    /// `max |Tr(ρ_AB²) − 1|` for the twin marginal of those samples.
    pub pair_purity_gap: f64,
    /// `max |P(a, c) − P(a)P(c)|` over outcomes and measurement settings.
    pub statistics_gap: f64,
    /// Gap and pair purity of a generic entangled 27-dimensional pure state.
    pub entangled_gap: f64,
    pub entangled_pair_purity: f64,
    /// `max |P(twin yes) − 1/3|` and `max P(discord)` over directions.
    pub twin_yes_gap: f64,
    pub twin_discord: f64,
    pub agreement: f64,
    /// `max |agreement − 2/3|` over directions.
    pub agreement_gap: f64,
    /// Best agreement seen in a random search over third-spin states (float only).
    pub agreement_search: Option<f64>,
    pub checks: Vec<(&'static str, f64, bool)>,
}

impl IndependenceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.2)
    }
}

fn exact_or<S: Scalar>(x: &S) -> f64 {
    if x.is_zero() {
        0.0
    } else {
        x.to_complex().norm()
    }
}

/// Checks that a pure twin pair carries no correlation with a third spin,
/// and that the third spin's best agreement with the twins is 2/3.
pub fn independence_suite<S: Scalar>(
    dirs: &[Direction<S>],
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<IndependenceReport, CorrelationError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pass = |v: f64| if S::EXACT { v == 0.0 } else { v <= tol };
    let singlet = DensityMatrix::<S>::singlet();
    let third = S::from_ratio(1, 3);
    let two_thirds = S::from_ratio(2, 3);

    let mut factorization = 0.0f64;
    let mut purity_gap = 0.0f64;
    let mut statistics = 0.0f64;
    for k in 0..samples {
        let rho_c = random_density::<S, _>(SpaceShape::single(3), 1 + k % 3, &mut rng);
        let abc = singlet.tensor(&rho_c);
        factorization = factorization.max(factorization_gap(&abc, &Bipartition::first(2))?);
        let ab = partial_trace(&abc, &[0, 1])?;
        purity_gap = purity_gap.max(exact_or(&(purity(&ab) - S::one())));
        for (i, n) in dirs.iter().enumerate() {
            let m = &dirs[(i + 1) % dirs.len()];
            let dist = joint_spin_zero_distribution(&abc, &[Some(n.clone()), Some(n.clone()), Some(m.clone())])?;
            statistics = statistics.max(dist.independence_gap(2));
        }
    }

    let w = random_gaussian_integer_vector::<S, _>(SpaceShape::uniform(3, 3), &mut rng);
    let entangled = DensityMatrix::from_pure(&w)?;
    let entangled_gap = factorization_gap(&entangled, &Bipartition::first(2))?;
    let entangled_pair_purity = purity(&partial_trace(&entangled, &[0, 1])?).re();

    let mut twin_yes_gap = 0.0f64;
    let mut twin_discord = 0.0f64;
    let mut agreement = 0.0f64;
    let mut agreement_gap = 0.0f64;
    for n in dirs {
        let dist = joint_spin_zero_distribution(&singlet, &[Some(n.clone()), Some(n.clone())])?;
        twin_yes_gap = twin_yes_gap.max(exact_or(&(dist.marginal(&[0]).probability(&[true]) - third.clone())));
        twin_discord = twin_discord.max(exact_or(&dist.discord()));
        let bound = max_agreement_probability(n)?;
        agreement = agreement.max(bound.value.re());
        agreement_gap = agreement_gap.max(exact_or(&(bound.value - two_thirds.clone())));
    }
    let agreement_search = if S::EXACT {
        None
    } else {
        let n0 = dirs[0].to_float();
        Some(agreement_grid_search(&n0, 200, &mut rng)?)
    };

    let mut checks = vec![
        ("pure_pair_factorizes", factorization, pass(factorization)),
        ("pair_marginal_is_pure", purity_gap, pass(purity_gap)),
        ("statistics_factorize", statistics, pass(statistics)),
        (
            "entangled_contrapositive",
            entangled_gap,
            entangled_gap > tol.max(1e-12) && entangled_pair_purity < 1.0 - tol.max(1e-12),
        ),
        ("twin_yes_one_third", twin_yes_gap, pass(twin_yes_gap)),
        ("twin_discord_zero", twin_discord, pass(twin_discord)),
        (
            "agreement_two_thirds",
            agreement_gap,
            pass(agreement_gap) && agreement < 1.0,
        ),
    ];
    if let Some(best) = agreement_search {
        checks.push(("agreement_search_below_bound", best, best <= 2.0 / 3.0 + tol.max(1e-12)));
    }
    Ok(IndependenceReport {
        product_states: samples,
        factorization_gap: factorization,
        pair_purity_gap: purity_gap,
        statistics_gap: statistics,
        entangled_gap,
        entangled_pair_purity,
        twin_yes_gap,
        twin_discord,
        agreement,
        agreement_gap,
        agreement_search,
        checks,
    })
}
