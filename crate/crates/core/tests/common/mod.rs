//! Reference implementations used as oracles by the integration tests.
//!
//! Everything here is written directly on nested `Vec`s of `Complex64` from
//! textbook formulas and shares no code with the library.

#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64 as C;

pub type Dense = Vec<Vec<C>>;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn zeros(n: usize) -> Dense {
    vec![vec![c(0.0, 0.0); n]; n]
}

pub fn eye(n: usize) -> Dense {
    let mut m = zeros(n);
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = c(1.0, 0.0);
    }
    m
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![c(0.0, 0.0); p]; n];
    for i in 0..n {
        for k in 0..b.len() {
            for j in 0..p {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Dense, b: &Dense) -> Dense {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn scale(a: &Dense, k: C) -> Dense {
    a.iter().map(|r| r.iter().map(|x| x * k).collect()).collect()
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (n, m) = (a.len(), b.len());
    let mut out = zeros(n * m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn apply(a: &Dense, v: &[C]) -> Vec<C> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn trace(a: &Dense) -> C {
    (0..a.len()).map(|k| a[k][k]).sum()
}

pub fn dist(a: &Dense, b: &Dense) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Textbook spin-1 matrices in the basis m = +1, 0, −1.
pub fn spin1() -> [Dense; 3] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let o = c(0.0, 0.0);
    let sx = vec![
        vec![o, c(r, 0.0), o],
        vec![c(r, 0.0), o, c(r, 0.0)],
        vec![o, c(r, 0.0), o],
    ];
    let sy = vec![
        vec![o, c(0.0, -r), o],
        vec![c(0.0, r), o, c(0.0, -r)],
        vec![o, c(0.0, r), o],
    ];
    let sz = vec![vec![c(1.0, 0.0), o, o], vec![o, o, o], vec![o, o, c(-1.0, 0.0)]];
    [sx, sy, sz]
}

pub fn along(s: &[Dense; 3], n: [f64; 3]) -> Dense {
    add(
        &add(&scale(&s[0], c(n[0], 0.0)), &scale(&s[1], c(n[1], 0.0))),
        &scale(&s[2], c(n[2], 0.0)),
    )
}

/// `(n·L)² − (n·S)²` on two spin-1 sites.
pub fn defect(n: [f64; 3]) -> Dense {
    let s = spin1();
    let ns = along(&s, n);
    let ns2 = matmul(&ns, &ns);
    add(&kron(&ns2, &eye(3)), &scale(&kron(&eye(3), &ns2), c(-1.0, 0.0)))
}

/// Spin-j matrices from `⟨j,m+1|J₊|j,m⟩ = √((j−m)(j+m+1))`, basis m = j … −j.
pub fn spin_j(twice_j: u32) -> [Dense; 3] {
    let j = twice_j as f64 / 2.0;
    let n = twice_j as usize + 1;
    let m_of = |k: usize| j - k as f64;
    let mut plus = zeros(n);
    for k in 1..n {
        let m = m_of(k);
        plus[k - 1][k] = c(((j - m) * (j + m + 1.0)).sqrt(), 0.0);
    }
    let minus: Dense = (0..n).map(|r| (0..n).map(|s| plus[s][r].conj()).collect()).collect();
    let sx = scale(&add(&plus, &minus), c(0.5, 0.0));
    let sy = scale(&add(&plus, &scale(&minus, c(-1.0, 0.0))), c(0.0, -0.5));
    let mut sz = zeros(n);
    for (k, row) in sz.iter_mut().enumerate() {
        row[k] = c(m_of(k), 0.0);
    }
    [sx, sy, sz]
}

/// Singlet from Clebsch–Gordan coefficients `⟨1,m;1,−m|0,0⟩ = (−1)^(1−m)/√3`.
pub fn singlet_cg() -> Vec<C> {
    let mut v = vec![c(0.0, 0.0); 9];
    for (k, m) in [1i32, 0, -1].iter().enumerate() {
        let partner = (1 - (-m)) as usize;
        let sign = if (1 - m) % 2 == 0 { 1.0 } else { -1.0 };
        v[k * 3 + partner] = c(sign / 3f64.sqrt(), 0.0);
    }
    v
}

/// `exp(A)` by a long Taylor series with scaling and squaring.
pub fn expm(a: &Dense) -> Dense {
    let norm: f64 = a.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let mut squarings = 0;
    let mut scaled = a.clone();
    let mut size = norm;
    while size > 0.5 {
        scaled = scale(&scaled, c(0.5, 0.0));
        size /= 2.0;
        squarings += 1;
    }
    let n = a.len();
    let mut term = eye(n);
    let mut sum = eye(n);
    for k in 1..30 {
        term = scale(&matmul(&term, &scaled), c(1.0 / k as f64, 0.0));
        sum = add(&sum, &term);
    }
    for _ in 0..squarings {
        sum = matmul(&sum, &sum);
    }
    sum
}

/// Trace out every site not in `keep` from a density matrix on `dims`.
pub fn partial_trace(rho: &Dense, dims: &[usize], keep: &[usize]) -> Dense {
    let total: usize = dims.iter().product();
    let digits = |mut idx: usize| {
        let mut d = vec![0; dims.len()];
        for s in (0..dims.len()).rev() {
            d[s] = idx % dims[s];
            idx /= dims[s];
        }
        d
    };
    let kept_dim: usize = keep.iter().map(|&s| dims[s]).product();
    let kept_index = |d: &[usize]| keep.iter().fold(0, |acc, &s| acc * dims[s] + d[s]);
    let mut out = zeros(kept_dim);
    for r in 0..total {
        for col in 0..total {
            let (dr, dc) = (digits(r), digits(col));
            let traced_match = (0..dims.len()).filter(|s| !keep.contains(s)).all(|s| dr[s] == dc[s]);
            if traced_match {
                out[kept_index(&dr)][kept_index(&dc)] += rho[r][col];
            }
        }
    }
    out
}

/// Splitmix-style generator so oracles do not share the library's RNG plumbing.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn unit_vector(&mut self) -> [f64; 3] {
        loop {
            let v = [
                2.0 * self.next_f64() - 1.0,
                2.0 * self.next_f64() - 1.0,
                2.0 * self.next_f64() - 1.0,
            ];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 0.1 && n <= 1.0 {
                return [v[0] / n, v[1] / n, v[2] / n];
            }
        }
    }
}

pub fn to_dense(m: &twinspin::linop::Matrix<C>) -> Dense {
    (0..m.dim()).map(|r| m.row(r).to_vec()).collect()
}
