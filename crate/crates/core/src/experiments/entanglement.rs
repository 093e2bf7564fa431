//! Entanglement entropy of the evolved Bell pair under both prescriptions.

use serde::{Deserialize, Serialize};

use crate::composite::{bell_state, evolve_entangled, AliceChoice, BipartiteSystem};
use crate::error::Result;
use crate::linalg::{c, eig_2x2, entropy_bits, partial_trace, r, tensor, C64, CMatrix, Subsystem};
use crate::pt::{check_alpha, Prescription};

/// Imaginary parts and excursions outside `[0, 1]` beyond this are reported
/// instead of being fed into the logarithm.
pub const EIGENVALUE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Entropy {
    Bits { value: f64 },
    Diagnostic { reason: String },
}

impl Entropy {
    pub fn bits(&self) -> Option<f64> {
        match self {
            Entropy::Bits { value } => Some(*value),
            Entropy::Diagnostic { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub prescription: Prescription,
    pub alpha: f64,
    /// Evolution time in units of the one-sided period τ.
    pub time_over_tau: f64,
    /// Factor kept by the partial trace.
    pub kept: Subsystem,
    pub reduced: CMatrix,
    /// Descending by real part.
    pub eigenvalues: [C64; 2],
    pub entropy: Entropy,
    /// Closed-form eigenvalues `(1 ± √(1 − cos⁴α))/2` (Hilbert) or `½, ½` (CPT).
    pub expected_eigenvalues: [f64; 2],
    /// Max entrywise distance between `reduced` and an independent route: the
    /// closed-form matrix for Hilbert, the trace of the evolved `|Φ_f⟩⟨Φ_f|` for CPT.
    pub cross_check_deviation: f64,
}

/// `(1 ± √(1 − cos⁴α))/2`, larger first.
pub fn hilbert_eigenvalues(alpha: f64) -> [f64; 2] {
    let root = (1.0 - alpha.cos().powi(4)).max(0.0).sqrt();
    [(1.0 + root) / 2.0, (1.0 - root) / 2.0]
}

/// `½[[1 + sinα cosα, i sinα], [−i sinα, 1 − sinα cosα]]`.
pub fn bob_reduced_hilbert(alpha: f64) -> Result<CMatrix> {
    check_alpha(alpha)?;
    let (s, co) = alpha.sin_cos();
    CMatrix::from_rows([
        [r((1.0 + s * co) / 2.0), c(0.0, s / 2.0)],
        [c(0.0, -s / 2.0), r((1.0 - s * co) / 2.0)],
    ])
}

/// The averaged CPT pair density `½(|ψ⁺⟩⟨Φ⁺| + |ψ⁻⟩⟨Φ⁻|)` in closed form.
pub fn cpt_pair_density(alpha: f64) -> Result<CMatrix> {
    check_alpha(alpha)?;
    let (s, co) = alpha.sin_cos();
    let cc = co * co;
    let one = r(0.25);
    let off = c(0.0, 2.0 * s / cc / 4.0);
    let cross = r((1.0 + s * s) / cc / 4.0);
    let z = r(0.0);
    CMatrix::from_rows([
        [one, off, z, cross],
        [off, one, cross, z],
        [z, cross, one, off],
        [cross, z, off, one],
    ])
}

/// Hilbert-normalized reduced density of `(U(t) ⊗ I)ψ₀`.
pub fn hilbert_reduced_density(alpha: f64, t: f64, keep: Subsystem) -> Result<CMatrix> {
    let sys = BipartiteSystem::from_alphas(alpha, None)?;
    let u = tensor(&sys.side_a().evolution(t)?, &CMatrix::identity(2));
    let psi = u.apply(&bell_state())?;
    let norm = psi.dot_conj(&psi)?.re;
    partial_trace(&psi.outer(&psi).scale(r(1.0 / norm)), keep)
}

/// Reduced density of `½ Σ± |Φ±_f⟩⟨Φ±_f| / ⟨Φ±_f|Φ±_f⟩` after the full period.
pub fn cpt_evolved_reduced_density(alpha: f64, keep: Subsystem) -> Result<CMatrix> {
    let sys = BipartiteSystem::from_alphas(alpha, None)?;
    let mut rho = CMatrix::zeros(4, 4);
    for choice in AliceChoice::ALL {
        let phi = evolve_entangled(&sys, choice)?.phi_f;
        let norm = phi.dot_conj(&phi)?.re;
        rho = &rho + &phi.outer(&phi).scale(r(0.5 / norm));
    }
    partial_trace(&rho, keep)
}

/// Von Neumann entropy in bits from a 2×2 spectrum, or a diagnostic when the
/// spectrum is not a probability distribution.
pub fn entropy_from_eigenvalues(values: &[C64; 2]) -> Entropy {
    for v in values {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Entropy::Diagnostic { reason: "non-finite eigenvalue".into() };
        }
        if v.im.abs() > EIGENVALUE_TOL {
            return Entropy::Diagnostic { reason: format!("complex eigenvalue {v}") };
        }
        if v.re < -EIGENVALUE_TOL || v.re > 1.0 + EIGENVALUE_TOL {
            return Entropy::Diagnostic { reason: format!("eigenvalue {} outside [0, 1]", v.re) };
        }
    }
    let probs: Vec<f64> = values.iter().map(|v| v.re.clamp(0.0, 1.0)).collect();
    Entropy::Bits { value: entropy_bits(&probs) }
}

/// Hilbert: Bob's reduced density of the state evolved to `τ/2`, where the
/// spread of the spectrum matches `(1 ± √(1 − cos⁴α))/2`. CPT: the averaged
/// pair density traced over the second factor.
pub fn entanglement_report(alpha: f64, p: Prescription) -> Result<EntanglementReport> {
    check_alpha(alpha)?;
    let (time_over_tau, kept, reduced, expected, reference) = match p {
        Prescription::Hilbert => {
            let tau = BipartiteSystem::from_alphas(alpha, None)?.tau();
            let reduced = hilbert_reduced_density(alpha, tau / 2.0, Subsystem::Second)?;
            (0.5, Subsystem::Second, reduced, hilbert_eigenvalues(alpha), bob_reduced_hilbert(alpha)?)
        }
        Prescription::Cpt => {
            let reduced = partial_trace(&cpt_pair_density(alpha)?, Subsystem::First)?;
            let reference = cpt_evolved_reduced_density(alpha, Subsystem::First)?;
            (1.0, Subsystem::First, reduced, [0.5, 0.5], reference)
        }
    };
    let [hi, lo] = eig_2x2(&reduced)?;
    let eigenvalues = [hi.value, lo.value];
    Ok(EntanglementReport {
        prescription: p,
        alpha,
        time_over_tau,
        kept,
        cross_check_deviation: reduced.max_abs_diff(&reference),
        entropy: entropy_from_eigenvalues(&eigenvalues),
        reduced,
        eigenvalues,
        expected_eigenvalues: expected,
    })
}
