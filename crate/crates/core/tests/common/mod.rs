//! Shared oracles and fixtures for the integration suites.
#![allow(dead_code)]

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_6, PI};

use ptsym::linalg::{c, r, CMatrix, CVector, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn alpha_grid() -> Vec<f64> {
    vec![0.0, PI / 12.0, FRAC_PI_6, FRAC_PI_4, 0.45 * PI]
}

/// `exp(scale·m)` by scaling and squaring around a truncated Taylor series.
pub fn taylor_exp(m: &CMatrix, scale: C64) -> CMatrix {
    let a = m.scale(scale);
    let norm: f64 = (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| a.get(i, j).norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0;
    let mut s = 1.0;
    while norm * s > 0.25 {
        s /= 2.0;
        squarings += 1;
    }
    let a = a.scale(r(s));
    let n = a.rows();
    let mut term = CMatrix::identity(n);
    let mut sum = CMatrix::identity(n);
    for k in 1..=30 {
        term = (&term * &a).scale(r(1.0 / k as f64));
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

pub fn random_complex(rng: &mut ChaCha8Rng, radius: f64) -> C64 {
    c(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> CMatrix {
    CMatrix::new(n, n, (0..n * n).map(|_| random_complex(rng, radius)).collect()).unwrap()
}

pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> CVector {
    loop {
        let v = CVector::new((0..n).map(|_| random_complex(rng, 1.0)).collect()).unwrap();
        if v.norm() > 1e-2 {
            return v.normalized().unwrap();
        }
    }
}

fn vec4(xs: [C64; 4]) -> CVector {
    CVector::new(xs.to_vec()).unwrap()
}

/// One-sided final states `ψ±_f` as printed.
pub fn printed_psi_f(alpha: f64) -> [CVector; 2] {
    let k = 1.0 / (2f64.sqrt() * alpha.cos());
    let s = alpha.sin();
    [
        vec4([r(s * k), c(0.0, -k), c(0.0, -k), r(-s * k)]),
        vec4([c(0.0, -k), r(s * k), r(-s * k), c(0.0, -k)]),
    ]
}

/// `Φ±_f` as printed.
pub fn printed_phi_f() -> [CVector; 2] {
    let k = FRAC_1_SQRT_2;
    [
        vec4([r(0.0), c(0.0, -k), c(0.0, -k), r(0.0)]),
        vec4([c(0.0, -k), r(0.0), r(0.0), c(0.0, -k)]),
    ]
}

/// Composite eigenfunctions ψ₁…ψ₄ of `H ⊗ I` as printed.
pub fn printed_composite_eigenvectors(alpha: f64) -> [CVector; 4] {
    let k = 1.0 / (2.0 * alpha.cos().sqrt());
    let e = C64::from_polar(k, alpha / 2.0);
    let f = C64::from_polar(k, -alpha / 2.0);
    let i = c(0.0, 1.0);
    [
        vec4([e, e, f, f]),
        vec4([e, -e, f, -f]),
        vec4([i * f, i * f, -i * e, -i * e]),
        vec4([i * f, -i * f, -i * e, i * e]),
    ]
}

/// Two-sided final states `ψ^{ij}_f` in the order `++, +−, −+, −−`.
pub fn printed_two_sided_psi(alpha_a: f64, alpha_b: f64) -> [CVector; 4] {
    let (sa, sb) = (alpha_a.sin(), alpha_b.sin());
    let k = 1.0 / (2f64.sqrt() * alpha_a.cos() * alpha_b.cos());
    let even = vec4([
        r((sa * sb - 1.0) * k),
        c(0.0, (-sa + sb) * k),
        c(0.0, (-sb + sa) * k),
        r((-1.0 + sa * sb) * k),
    ]);
    let odd = vec4([
        c(0.0, -(sa + sb) * k),
        r((-1.0 - sa * sb) * k),
        r((-1.0 - sa * sb) * k),
        c(0.0, (sa + sb) * k),
    ]);
    [even.clone(), odd.clone(), odd, even]
}

pub fn printed_two_sided_phi() -> [CVector; 4] {
    let k = FRAC_1_SQRT_2;
    let even = CVector::from_real(&[-k, 0.0, 0.0, -k]).unwrap();
    let odd = CVector::from_real(&[0.0, -k, -k, 0.0]).unwrap();
    [even.clone(), odd.clone(), odd, even]
}

/// The printed projectors for `(+y,+y)` and `(−y,+y)`.
pub fn printed_projectors() -> [CMatrix; 2] {
    let q = |rows: [[(f64, f64); 4]; 4]| CMatrix::from_rows(rows.map(|row| row.map(|(x, y)| c(x / 4.0, y / 4.0)))).unwrap();
    [
        q([
            [(1.0, 0.0), (0.0, -1.0), (0.0, -1.0), (-1.0, 0.0)],
            [(0.0, 1.0), (1.0, 0.0), (1.0, 0.0), (0.0, -1.0)],
            [(0.0, 1.0), (1.0, 0.0), (1.0, 0.0), (0.0, -1.0)],
            [(-1.0, 0.0), (0.0, 1.0), (0.0, 1.0), (1.0, 0.0)],
        ]),
        q([
            [(1.0, 0.0), (0.0, -1.0), (0.0, 1.0), (1.0, 0.0)],
            [(0.0, 1.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 1.0)],
            [(0.0, -1.0), (-1.0, 0.0), (1.0, 0.0), (0.0, -1.0)],
            [(1.0, 0.0), (0.0, -1.0), (0.0, 1.0), (1.0, 0.0)],
        ]),
    ]
}

pub fn printed_eta() -> [CVector; 4] {
    let h = |xs: [(f64, f64); 4]| CVector::new(xs.iter().map(|&(x, y)| c(x / 2.0, y / 2.0)).collect()).unwrap();
    [
        h([(1.0, 0.0), (0.0, -1.0), (0.0, 1.0), (1.0, 0.0)]),
        h([(1.0, 0.0), (0.0, 1.0), (0.0, 1.0), (-1.0, 0.0)]),
        h([(1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, 0.0)]),
        h([(-1.0, 0.0), (0.0, 1.0), (0.0, 1.0), (1.0, 0.0)]),
    ]
}
