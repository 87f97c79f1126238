use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{Scalar, ScalarError};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `re + im·i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    fn scale_int(&self, k: i64) -> Self {
        if k == 1 {
            return self.clone();
        }
        let k = Rational::from_integer(BigInt::from(k));
        Self::new(&self.re * &k, &self.im * &k)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

fn imaginary(im: &Rational) -> String {
    if im.is_one() {
        "i".to_string()
    } else if (-im.clone()).is_one() {
        "-i".to_string()
    } else {
        format!("{im}*i")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => self.re.to_string(),
            (true, false) => imaginary(&self.im),
            (false, false) => {
                let im = imaginary(&self.im);
                match im.strip_prefix('-') {
                    Some(rest) => format!("({} - {rest})", self.re),
                    None => format!("({} + {im})", self.re),
                }
            }
        };
        f.pad(&s)
    }
}

/// Element `a + b√2 + c√3 + d√6` of ℚ(i, √2, √3), with Gaussian-rational
/// coefficients. The representation is canonical, so derived equality is
/// field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    coeffs: [GaussianRational; 4],
}

// Product table for the basis {1, √2, √3, √6}: e_i·e_j = FACTOR[i][j]·e_(i xor j).
const FACTOR: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, 2, 1, 2], [1, 1, 3, 3], [1, 2, 3, 6]];
const RADICAND: [u64; 4] = [1, 2, 3, 6];

impl ExactScalar {
    pub fn from_coeffs(coeffs: [GaussianRational; 4]) -> Self {
        Self { coeffs }
    }

    /// Coefficients of 1, √2, √3, √6.
    pub fn coeffs(&self) -> &[GaussianRational; 4] {
        &self.coeffs
    }

    pub fn rational(r: Rational) -> Self {
        let mut coeffs: [GaussianRational; 4] = Default::default();
        coeffs[0] = GaussianRational::real(r);
        Self { coeffs }
    }

    pub fn gaussian(re: Rational, im: Rational) -> Self {
        let mut coeffs: [GaussianRational; 4] = Default::default();
        coeffs[0] = GaussianRational::new(re, im);
        Self { coeffs }
    }

    pub fn sqrt2() -> Self {
        Self::basis(1)
    }

    pub fn sqrt3() -> Self {
        Self::basis(2)
    }

    pub fn sqrt6() -> Self {
        Self::basis(3)
    }

    fn basis(k: usize) -> Self {
        let mut coeffs: [GaussianRational; 4] = Default::default();
        coeffs[k] = GaussianRational::real(Rational::one());
        Self { coeffs }
    }

    /// The rational value if this element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        let rational_only = self.coeffs[0].im.is_zero() && self.coeffs[1..].iter().all(|c| c.is_zero());
        rational_only.then_some(&self.coeffs[0].re)
    }

    // Galois automorphisms fixing i: √2 → −√2 and √3 → −√3.
    fn flip_sqrt2(&self) -> Self {
        let [a, b, c, d] = self.coeffs.clone();
        Self {
            coeffs: [a, neg_g(b), c, neg_g(d)],
        }
    }

    fn flip_sqrt3(&self) -> Self {
        let [a, b, c, d] = self.coeffs.clone();
        Self {
            coeffs: [a, b, neg_g(c), neg_g(d)],
        }
    }

    fn scale(&self, g: &GaussianRational) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] * g),
        }
    }
}

fn neg_g(g: GaussianRational) -> GaussianRational {
    GaussianRational::new(-g.re, -g.im)
}

impl Add for ExactScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] + &rhs.coeffs[k]),
        }
    }
}

impl Sub for ExactScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| &self.coeffs[k] - &rhs.coeffs[k]),
        }
    }
}

impl Neg for ExactScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.map(neg_g),
        }
    }
}

impl Mul for ExactScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out: [GaussianRational; 4] = Default::default();
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let term = (x * y).scale_int(FACTOR[i][j]);
                let k = i ^ j;
                out[k] = &out[k] + &term;
            }
        }
        ExactScalar { coeffs: out }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match k {
                0 => c.to_string(),
                _ if c.im.is_zero() && c.re.is_one() => format!("sqrt{}", RADICAND[k]),
                _ if c.im.is_zero() && (-c.re.clone()).is_one() => format!("-sqrt{}", RADICAND[k]),
                _ => format!("{c}*sqrt{}", RADICAND[k]),
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.pad(&out)
    }
}

// Splits n = k²·f with f squarefree.
fn square_free_split(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        while n.is_multiple_of(p * p) {
            n /= p * p;
            square *= p;
        }
        if n.is_multiple_of(p) {
            n /= p;
            free *= p;
        }
        p += 1;
    }
    (square, free * n)
}

impl Scalar for ExactScalar {
    const EXACT: bool = true;
    const NAME: &'static str = "exact";

    fn zero() -> Self {
        Self::default()
    }

    fn one() -> Self {
        Self::rational(Rational::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::rational(rat(num, den))
    }

    fn imag_unit() -> Self {
        Self::gaussian(Rational::zero(), Rational::one())
    }

    fn sqrt_int(n: u64) -> Option<Self> {
        if n == 0 {
            return Some(Self::zero());
        }
        let (square, free) = square_free_split(n);
        let k = RADICAND.iter().position(|&r| r == free)?;
        let mut out = Self::basis(k);
        out.coeffs[k] = GaussianRational::real(Rational::from_integer(BigInt::from(square)));
        Some(out)
    }

    fn conj(&self) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| self.coeffs[k].conj()),
        }
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // x·σ₂(x) lies in ℚ(i, √3); multiplying by its σ₃-image lands in ℚ(i).
        let x2 = self.flip_sqrt2();
        let y = self * &x2;
        let y3 = y.flip_sqrt3();
        let z = &y * &y3;
        debug_assert!(z.coeffs[1..].iter().all(|c| c.is_zero()));
        let z_inv = z.coeffs[0].inv()?;
        Ok((&x2 * &y3).scale(&z_inv))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn to_complex(&self) -> Complex64 {
        let roots = [1.0, 2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt()];
        let parts = self.coeffs.iter().map(|c| c.to_complex());
        let mut re = 0.0f64;
        let mut im = 0.0f64;
        for (p, r) in parts.zip(roots) {
            re = p.re.mul_add(r, re);
            im = p.im.mul_add(r, im);
        }
        Complex64::new(re, im)
    }

    fn is_real(&self, _tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.im.is_zero())
    }
}
