//! Spin operators and the two-spin-1 constructions built from them.
//!
//! Matrices use the Condon–Shortley phase convention with `S_z` diagonal and
//! its eigenvalues descending (`m = j, j−1, …, −j`).

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linop::{LinopError, Matrix, SpaceShape, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpinError {
    #[error("invalid spin label {0}: 2j must be a nonnegative integer")]
    InvalidSpin(f64),
    #[error("spin {0} matrices need square roots the {1} backend cannot represent")]
    Unrepresentable(HalfInteger, &'static str),
    #[error("operation requires spin 1, got spin {0}")]
    NotSpinOne(HalfInteger),
    #[error("direction components must be real")]
    NotReal,
    #[error("direction is not a unit vector (|n|² − 1 = {0:e})")]
    NotUnit(f64),
    #[error(transparent)]
    Linop(#[from] LinopError),
}

/// A nonnegative half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInteger(u32);

impl HalfInteger {
    pub const HALF: Self = Self(1);
    pub const ONE: Self = Self(2);

    pub fn from_twice(twice: u32) -> Self {
        Self(twice)
    }

    pub fn try_from_f64(j: f64) -> Result<Self, SpinError> {
        let twice = 2.0 * j;
        if !twice.is_finite() || twice < 0.0 || twice.fract() != 0.0 || twice > u32::MAX as f64 {
            return Err(SpinError::InvalidSpin(j));
        }
        Ok(Self(twice as u32))
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Dimension `2j + 1` of the spin-j representation.
    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The axis completing `(self, other, next)` to a cyclic triple.
    pub fn cyclic_successor(self) -> Axis {
        Axis::ALL[(self.index() + 1) % 3]
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Real unit 3-vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction<S> {
    components: [S; 3],
}

impl<S: Scalar> Direction<S> {
    /// Validates reality and unit length: exactly for exact backends, within
    /// 1e−12 otherwise.
    pub fn new(nx: S, ny: S, nz: S) -> Result<Self, SpinError> {
        let components = [nx, ny, nz];
        if components.iter().any(|c| !c.is_real(1e-12)) {
            return Err(SpinError::NotReal);
        }
        let norm_sq = components.iter().fold(S::zero(), |acc, c| acc + c.clone() * c.clone());
        let excess = norm_sq - S::one();
        if !excess.is_negligible(1e-12) {
            return Err(SpinError::NotUnit(excess.re()));
        }
        Ok(Self { components })
    }

    pub fn axis(axis: Axis) -> Self {
        let mut components = [S::zero(), S::zero(), S::zero()];
        components[axis.index()] = S::one();
        Self { components }
    }

    /// `(e_a + e_b)/√2` for two distinct axes.
    pub fn bisector(a: Axis, b: Axis) -> Self {
        assert_ne!(a, b, "bisector needs two distinct axes");
        let inv_sqrt2 = S::sqrt_int(2)
            .and_then(|r| r.try_inv().ok())
            .expect("every backend represents 1/√2");
        let mut components = [S::zero(), S::zero(), S::zero()];
        components[a.index()] = inv_sqrt2.clone();
        components[b.index()] = inv_sqrt2;
        Self { components }
    }

    pub fn components(&self) -> &[S; 3] {
        &self.components
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [
            self.components[0].re(),
            self.components[1].re(),
            self.components[2].re(),
        ]
    }

    pub fn to_float(&self) -> Direction<Complex64> {
        Direction {
            components: self.to_f64().map(|x| Complex64::new(x, 0.0)),
        }
    }
}

impl Direction<Complex64> {
    /// Normalizes an arbitrary nonzero real triple.
    pub fn from_f64(x: f64, y: f64, z: f64) -> Result<Self, SpinError> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(SpinError::NotUnit(-1.0));
        }
        Self::new(
            Complex64::new(x / norm, 0.0),
            Complex64::new(y / norm, 0.0),
            Complex64::new(z / norm, 0.0),
        )
    }

    /// Uniform on the sphere: a normalized standard-Gaussian triple.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let (x, y, z): (f64, f64, f64) = (
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            );
            if let Ok(n) = Self::from_f64(x, y, z) {
                return n;
            }
        }
    }
}

impl<S: Scalar> fmt::Display for Direction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.to_f64();
        write!(f, "({x:.6}, {y:.6}, {z:.6})")
    }
}

/// `(S_x, S_y, S_z)` for a single spin j.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinTriple<S> {
    pub j: HalfInteger,
    pub sx: Matrix<S>,
    pub sy: Matrix<S>,
    pub sz: Matrix<S>,
}

impl<S: Scalar> SpinTriple<S> {
    pub fn component(&self, axis: Axis) -> &Matrix<S> {
        match axis {
            Axis::X => &self.sx,
            Axis::Y => &self.sy,
            Axis::Z => &self.sz,
        }
    }

    /// `S_x² + S_y² + S_z²`
    pub fn casimir(&self) -> Matrix<S> {
        let sq = |m: &Matrix<S>| m * m;
        &(&sq(&self.sx) + &sq(&self.sy)) + &sq(&self.sz)
    }
}

/// Builds the spin-j matrices from the raising operator
/// `J₊|j,m⟩ = √(j(j+1) − m(m+1)) |j,m+1⟩`.
pub fn make_spin<S: Scalar>(j: HalfInteger) -> Result<SpinTriple<S>, SpinError> {
    let tj = j.twice() as i64;
    let shape = SpaceShape::single(j.dim());
    let n = j.dim();
    let half = S::from_ratio(1, 2);
    // twice-m of basis index k
    let tm = |k: usize| tj - 2 * k as i64;

    let mut raise_rows = vec![vec![S::zero(); n]; n];
    for k in 1..n {
        // 4·(j(j+1) − m(m+1)) with m = m_k
        let radicand = (tj * (tj + 2) - tm(k) * (tm(k) + 2)) as u64;
        let root = S::sqrt_int(radicand).ok_or(SpinError::Unrepresentable(j, S::NAME))?;
        raise_rows[k - 1][k] = half.clone() * root;
    }
    let raise = Matrix::from_rows(shape.clone(), raise_rows)?;
    let lower = raise.adjoint();
    let sx = (&raise + &lower).scale(&half);
    let minus_half_i = -(half.clone() * S::imag_unit());
    let sy = (&raise - &lower).scale(&minus_half_i);
    let sz = Matrix::diagonal(shape, (0..n).map(|k| S::from_ratio(tm(k), 2)).collect())?;
    Ok(SpinTriple { j, sx, sy, sz })
}

pub fn spin_one<S: Scalar>() -> SpinTriple<S> {
    make_spin(HalfInteger::ONE).expect("spin-1 matrices only need √2")
}

/// `n·S = n_x S_x + n_y S_y + n_z S_z`
pub fn component_along<S: Scalar>(spin: &SpinTriple<S>, n: &Direction<S>) -> Matrix<S> {
    let terms: Vec<Matrix<S>> = Axis::ALL
        .iter()
        .map(|&a| spin.component(a).scale(&n.components()[a.index()]))
        .collect();
    Matrix::sum(&terms).expect("three same-shape terms")
}

/// `P₀(n) = I − (n·S)²`, the projector onto spin component zero along `n`.
pub fn spin_zero_projector<S: Scalar>(spin: &SpinTriple<S>, n: &Direction<S>) -> Result<Matrix<S>, SpinError> {
    if spin.j != HalfInteger::ONE {
        return Err(SpinError::NotSpinOne(spin.j));
    }
    let ns = component_along(spin, n);
    Ok(&Matrix::identity(ns.shape().clone()) - &(&ns * &ns))
}

/// Places `op` on `site` of `shape`, with identities on every other site.
pub fn embed<S: Scalar>(op: &Matrix<S>, site: usize, shape: &SpaceShape) -> Result<Matrix<S>, SpinError> {
    let dims = shape.dims();
    if site >= dims.len() {
        return Err(LinopError::InvalidShape(format!("site {site} out of range for {shape}")).into());
    }
    if op.dim() != dims[site] {
        return Err(
            LinopError::InvalidShape(format!("operator of dimension {} on site {site} of {shape}", op.dim())).into(),
        );
    }
    let factors = dims.iter().enumerate().map(|(k, &d)| {
        if k == site {
            op.clone().reshape(SpaceShape::single(d)).expect("dimension checked")
        } else {
            Matrix::identity(SpaceShape::single(d))
        }
    });
    let full = factors
        .reduce(|acc, f| acc.tensor(&f))
        .expect("shape has at least one site");
    Ok(full.reshape(shape.clone())?)
}

/// Spin operators `L` (first spin) and `S` (second spin) on the two-spin-1 space.
#[derive(Debug, Clone)]
pub struct SpinPair<S> {
    pub shape: SpaceShape,
    pub l: [Matrix<S>; 3],
    pub s: [Matrix<S>; 3],
}

impl<S: Scalar> SpinPair<S> {
    pub fn new() -> Self {
        let spin = spin_one::<S>();
        let shape = SpaceShape::uniform(3, 2);
        let on = |site| Axis::ALL.map(|a| embed(spin.component(a), site, &shape).expect("3 on [3, 3]"));
        Self {
            l: on(0),
            s: on(1),
            shape,
        }
    }

    pub fn l(&self, axis: Axis) -> &Matrix<S> {
        &self.l[axis.index()]
    }

    pub fn s(&self, axis: Axis) -> &Matrix<S> {
        &self.s[axis.index()]
    }

    /// `J_a = L_a + S_a`
    pub fn j(&self, axis: Axis) -> Matrix<S> {
        self.l(axis) + self.s(axis)
    }

    pub fn identity(&self) -> Matrix<S> {
        Matrix::identity(self.shape.clone())
    }

    fn along(ops: &[Matrix<S>; 3], n: &Direction<S>) -> Matrix<S> {
        let terms: Vec<Matrix<S>> = ops.iter().zip(n.components()).map(|(m, c)| m.scale(c)).collect();
        Matrix::sum(&terms).expect("three same-shape terms")
    }

    pub fn n_dot_l(&self, n: &Direction<S>) -> Matrix<S> {
        Self::along(&self.l, n)
    }

    pub fn n_dot_s(&self, n: &Direction<S>) -> Matrix<S> {
        Self::along(&self.s, n)
    }

    pub fn n_dot_j(&self, n: &Direction<S>) -> Matrix<S> {
        &self.n_dot_l(n) + &self.n_dot_s(n)
    }

    pub fn l_squared(&self) -> Matrix<S> {
        let sq: Vec<Matrix<S>> = self.l.iter().map(|m| m * m).collect();
        Matrix::sum(&sq).expect("three terms")
    }

    pub fn s_squared(&self) -> Matrix<S> {
        let sq: Vec<Matrix<S>> = self.s.iter().map(|m| m * m).collect();
        Matrix::sum(&sq).expect("three terms")
    }

    pub fn j_squared(&self) -> Matrix<S> {
        let sq: Vec<Matrix<S>> = Axis::ALL
            .iter()
            .map(|&a| {
                let j = self.j(a);
                &j * &j
            })
            .collect();
        Matrix::sum(&sq).expect("three terms")
    }

    /// `L·S = Σ_a L_a S_a`
    pub fn dot_ls(&self) -> Matrix<S> {
        let terms: Vec<Matrix<S>> = self.l.iter().zip(&self.s).map(|(l, s)| l * s).collect();
        Matrix::sum(&terms).expect("three terms")
    }
}

impl<S: Scalar> Default for SpinPair<S> {
    fn default() -> Self {
        Self::new()
    }
}

/// `L·S` on two spin-1 sites.
pub fn dot_ls<S: Scalar>() -> Matrix<S> {
    SpinPair::<S>::new().dot_ls()
}

/// Projectors onto total angular momentum j = 0, 1, 2 of two spin-1 sites.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceProjectors<S> {
    pub p0: Matrix<S>,
    pub p1: Matrix<S>,
    pub p2: Matrix<S>,
}

impl<S: Scalar> SubspaceProjectors<S> {
    /// `(j, eigenvalue of L·S, projector)`
    pub fn iter(&self) -> impl Iterator<Item = (u32, i64, &Matrix<S>)> {
        [(0, -2, &self.p0), (1, -1, &self.p1), (2, 1, &self.p2)].into_iter()
    }
}

/// Eigenvalue of `L·S` on the total-j subspace: `(j(j+1) − 4)/2`.
pub fn ls_eigenvalue(j: u32) -> i64 {
    let j = j as i64;
    (j * (j + 1) - 4) / 2
}

/// Lagrange interpolation in `X = L·S` through its eigenvalues 1, −1, −2.
pub fn j_projectors<S: Scalar>() -> SubspaceProjectors<S> {
    let x = dot_ls::<S>();
    let id = Matrix::identity(x.shape().clone());
    let shifted = |c: i64| &x - &id.scale(&S::from_i64(c));
    let eigen = [1i64, -1, -2];
    let project = |target: i64| {
        let mut acc = id.clone();
        let mut denom = 1i64;
        for &other in eigen.iter().filter(|&&e| e != target) {
            acc = &acc * &shifted(other);
            denom *= target - other;
        }
        acc.scale(&S::from_ratio(1, denom))
    };
    SubspaceProjectors {
        p2: project(1),
        p1: project(-1),
        p0: project(-2),
    }
}

/// A state known up to normalization, stored with its squared norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Ray<S> {
    pub vector: Vector<S>,
    pub norm_sq: S,
}

impl<S: Scalar> Ray<S> {
    pub fn new(vector: Vector<S>) -> Self {
        let norm_sq = vector.norm_sq();
        Self { vector, norm_sq }
    }

    /// True when the stored vector is not unit-normalized.
    pub fn is_projective(&self) -> bool {
        self.norm_sq != S::one()
    }

    /// `|v⟩⟨v| / ⟨v|v⟩`
    pub fn projector(&self) -> Matrix<S> {
        let inv = self.norm_sq.try_inv().expect("ray has nonzero norm");
        self.vector.outer(&self.vector).scale(&inv)
    }

    /// `|⟨v|w⟩|² / (⟨v|v⟩⟨w|w⟩)`; zero if `w` vanishes.
    pub fn overlap(&self, w: &Vector<S>) -> S {
        let amp = self.vector.inner(w);
        let denom = self.norm_sq.clone() * w.norm_sq();
        match denom.try_inv() {
            Ok(inv) => amp.abs_sq() * inv,
            Err(_) => S::zero(),
        }
    }
}

/// The two-spin-1 singlet `(|0,0⟩ − |1,−1⟩ − |−1,1⟩)/√3`.
///
/// Exact backends return the integer representative with `norm_sq = 3`; the
/// float backend returns the normalized vector.
pub fn singlet<S: Scalar>() -> Ray<S> {
    let shape = SpaceShape::uniform(3, 2);
    let raw = Vector::from_i64(shape, &[0, 0, -1, 0, 1, 0, -1, 0, 0]).expect("nine amplitudes");
    if S::EXACT {
        Ray {
            vector: raw,
            norm_sq: S::from_i64(3),
        }
    } else {
        let inv = S::sqrt_int(3).and_then(|r| r.try_inv().ok()).expect("float √3");
        Ray {
            vector: raw.scale(&inv),
            norm_sq: S::one(),
        }
    }
}
