//! The CHSH game played with PT-symmetric local evolution.
//!
//! Each party rotates their half of the Bell pair by an angle picked from
//! their input bit, evolves it for one period under their own Hamiltonian and
//! measures in the computational basis. They win when `a ⊕ b = A·B`.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use serde::{Deserialize, Serialize};

use super::projectors::{bit_projector, Bit};
use crate::composite::{bell_state, local_unitary, BipartiteSystem};
use crate::error::{Error, Result};
use crate::linalg::{tensor, CMatrix, CVector};

/// Measurement angles per input bit, indexed by `Bit::index`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshStrategy {
    pub theta_a: [f64; 2],
    pub theta_b: [f64; 2],
    pub zeta: f64,
}

impl ChshStrategy {
    /// `θ_A = {0, 2ζ}`, `θ_B = {ζ, −ζ}`: relative angles `ζ, ζ, ζ, 3ζ`.
    pub fn from_zeta(zeta: f64) -> Self {
        ChshStrategy {
            theta_a: [0.0, 2.0 * zeta],
            theta_b: [zeta, -zeta],
            zeta,
        }
    }

    pub fn angles(&self, inputs: (Bit, Bit)) -> (f64, f64) {
        (self.theta_a[inputs.0.index()], self.theta_b[inputs.1.index()])
    }
}

impl Default for ChshStrategy {
    /// Angles `0, π/4` for Alice and `π/8, −π/8` for Bob.
    fn default() -> Self {
        ChshStrategy::from_zeta(FRAC_PI_8)
    }
}

/// Real rotation `[[cosθ, −sinθ], [sinθ, cosθ]]`.
pub fn rotation(theta: f64) -> CMatrix {
    let (s, c) = theta.sin_cos();
    CMatrix::from_real_rows([[c, -s], [s, c]]).expect("finite angle")
}

pub fn wins(inputs: (Bit, Bit), a: Bit, b: Bit) -> bool {
    (a.index() ^ b.index()) == (inputs.0.index() & inputs.1.index())
}

/// `Φ_f = C†P ψ_f` with `ψ_f = (U_A R_A ⊗ U_B R_B)ψ₀`, each side evolved
/// for its own period under the Hamiltonian at the given α.
pub fn chsh_final_phi(strategy: &ChshStrategy, inputs: (Bit, Bit), alphas: (f64, f64)) -> Result<CVector> {
    let sys = BipartiteSystem::from_alphas(alphas.0, Some(alphas.1))?;
    let (ta, tb) = strategy.angles(inputs);
    let u = &local_unitary(&sys)? * &tensor(&rotation(ta), &rotation(tb));
    let psi_f = u.apply(&bell_state())?;
    sys.frame().phi_map().apply(&psi_f)
}

/// `⟨Φ_f|(|a⟩⟨a| ⊗ |b⟩⟨b|)|Φ_f⟩ / ⟨Φ_f|Φ_f⟩`.
pub fn chsh_marginal(
    strategy: &ChshStrategy,
    inputs: (Bit, Bit),
    a: Bit,
    b: Bit,
    alphas: (f64, f64),
) -> Result<f64> {
    let phi = chsh_final_phi(strategy, inputs, alphas)?;
    let norm = phi.dot_conj(&phi)?.re;
    Ok(phi.dot_conj(&bit_projector(a, b).apply(&phi)?)?.re / norm)
}

/// `½[cos²(θA−θB) δ_ab + sin²(θA−θB)(1 − δ_ab)]`.
pub fn chsh_joint_closed_form(theta_a: f64, theta_b: f64, a: Bit, b: Bit) -> f64 {
    let d = theta_a - theta_b;
    if a == b {
        0.5 * d.cos().powi(2)
    } else {
        0.5 * d.sin().powi(2)
    }
}

/// `¼[3cos²ζ + sin²(3ζ)]`.
pub fn chsh_win_probability(zeta: f64) -> f64 {
    0.25 * (3.0 * zeta.cos().powi(2) + (3.0 * zeta).sin().powi(2))
}

/// Win probability of the ζ-strategy with uniformly drawn inputs, summed
/// from the evolved-state marginals.
pub fn chsh_win_probability_from_marginals(zeta: f64, alphas: (f64, f64)) -> Result<f64> {
    let strategy = ChshStrategy::from_zeta(zeta);
    let mut total = 0.0;
    for x in Bit::ALL {
        for y in Bit::ALL {
            for a in Bit::ALL {
                for b in Bit::ALL {
                    if wins((x, y), a, b) {
                        total += chsh_marginal(&strategy, (x, y), a, b, alphas)?;
                    }
                }
            }
        }
    }
    Ok(total / 4.0)
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// The endpoints are compared with the interior optimum so that monotone
/// functions return the boundary.
pub fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)> {
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::InvalidParameter(format!("bad search interval [{lo}, {hi}]")));
    }
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..500 {
        if b - a <= tol {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (a + b);
    let best = [(mid, f(mid)), (lo, f(lo)), (hi, f(hi))]
        .into_iter()
        .fold((mid, f64::NEG_INFINITY), |acc, p| if p.1 > acc.1 { p } else { acc });
    Ok(best)
}

/// Best ζ-strategy on `[0, π/4]`.
pub fn chsh_optimize() -> (f64, f64) {
    chsh_optimize_on(0.0, FRAC_PI_4).expect("fixed interval is valid")
}

pub fn chsh_optimize_on(lo: f64, hi: f64) -> Result<(f64, f64)> {
    golden_section_max(chsh_win_probability, lo, hi, 1e-12)
}
