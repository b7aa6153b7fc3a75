//! Independent dense oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64 as C64;

pub type Dense = Vec<Vec<C64>>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn zeros(n: usize) -> Dense {
    vec![vec![c(0.0, 0.0); n]; n]
}

pub fn eye(n: usize) -> Dense {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(1.0, 0.0);
    }
    m
}

pub fn pauli(k: char) -> Dense {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match k {
        'I' => vec![vec![o, z], vec![z, o]],
        'X' => vec![vec![z, o], vec![o, z]],
        'Y' => vec![vec![z, -i], vec![i, z]],
        'Z' => vec![vec![o, z], vec![z, -o]],
        _ => panic!("unknown Pauli {k}"),
    }
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

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == c(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Dense, b: &Dense) -> Dense {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn scale(a: &Dense, s: C64) -> Dense {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn adjoint(a: &Dense) -> Dense {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

pub fn max_abs_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn one_norm(a: &Dense) -> f64 {
    let n = a.len();
    (0..n).map(|j| (0..n).map(|i| a[i][j].norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// `exp(A)` by scaling and squaring around a 30-term Taylor series.
pub fn expm(a: &Dense) -> Dense {
    let n = a.len();
    let mut s = 0;
    let mut scaled = a.clone();
    while one_norm(&scaled) > 0.25 {
        scaled = scale(&scaled, c(0.5, 0.0));
        s += 1;
    }
    let mut term = eye(n);
    let mut sum = eye(n);
    for k in 1..30 {
        term = scale(&mul(&term, &scaled), c(1.0 / k as f64, 0.0));
        sum = add(&sum, &term);
    }
    for _ in 0..s {
        sum = mul(&sum, &sum);
    }
    sum
}

/// `exp(-(i/2)(txx (XX + YY) + tzz ZZ))` in the basis `2 s_a + s_b`.
pub fn rxxz_oracle(txx: f64, tzz: f64) -> Dense {
    let h = add(
        &scale(&add(&kron(&pauli('X'), &pauli('X')), &kron(&pauli('Y'), &pauli('Y'))), c(txx, 0.0)),
        &scale(&kron(&pauli('Z'), &pauli('Z')), c(tzz, 0.0)),
    );
    expm(&scale(&h, c(0.0, -0.5)))
}

pub fn to_dense4(m: &[[C64; 4]; 4]) -> Dense {
    m.iter().map(|r| r.to_vec()).collect()
}

pub fn to_dense2(m: &[[C64; 2]; 2]) -> Dense {
    m.iter().map(|r| r.to_vec()).collect()
}

/// Deterministic uniform stream for test inputs (SplitMix64).
pub struct Stream(pub u64);

impl Stream {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Direct `O(N^2)` discrete analytic signal of a mean-removed real series.
pub fn analytic_signal_dft(series: &[f64]) -> Vec<C64> {
    let n = series.len();
    let mean = series.iter().sum::<f64>() / n as f64;
    let tau = 2.0 * std::f64::consts::PI / n as f64;
    let spectrum: Vec<C64> = (0..n)
        .map(|k| (0..n).map(|t| C64::from_polar(series[t] - mean, -tau * (k * t) as f64)).sum())
        .collect();
    (0..n)
        .map(|t| {
            let mut acc = c(0.0, 0.0);
            for (k, s) in spectrum.iter().enumerate() {
                let w = if k == 0 || 2 * k == n {
                    1.0
                } else if 2 * k < n {
                    2.0
                } else {
                    0.0
                };
                acc += s * w * C64::from_polar(1.0, tau * (k * t) as f64);
            }
            acc / n as f64
        })
        .collect()
}
