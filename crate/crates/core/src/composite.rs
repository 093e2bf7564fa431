//! Two-qubit systems in which Alice (the first tensor factor), and optionally
//! Bob, evolves under a PT-symmetric Hamiltonian.
//!
//! Basis ordering is |00⟩, |01⟩, |10⟩, |11⟩ with Alice's qubit the slow index.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{r, spectral_exp_eigen, tensor, tensor_vec, C64, CMatrix, CVector, Eigensystem, ONE, ZERO};
use crate::pt::{parity_eigenbasis, CptFrame, PtHamiltonian};

/// Operation a party applies before the evolution: identity or bit flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AliceChoice {
    Plus,
    Minus,
}

impl AliceChoice {
    pub const ALL: [AliceChoice; 2] = [AliceChoice::Plus, AliceChoice::Minus];

    pub fn operator(&self) -> CMatrix {
        match self {
            AliceChoice::Plus => CMatrix::identity(2),
            AliceChoice::Minus => CMatrix::from_vec_unchecked(2, 2, vec![ZERO, ONE, ONE, ZERO]),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            AliceChoice::Plus => "plus",
            AliceChoice::Minus => "minus",
        }
    }
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn bell_state() -> CVector {
    CVector::from_vec_unchecked(vec![r(FRAC_1_SQRT_2), ZERO, ZERO, r(FRAC_1_SQRT_2)])
}

/// `|00⟩`.
pub fn separable_state() -> CVector {
    CVector::from_vec_unchecked(vec![ONE, ZERO, ZERO, ZERO])
}

#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteSystem {
    side_a: PtHamiltonian,
    side_b: Option<PtHamiltonian>,
    frame: CptFrame,
    tau: f64,
}

impl BipartiteSystem {
    /// Alice carries `H`; Bob's dynamics is the identity.
    pub fn one_sided(side_a: PtHamiltonian) -> Self {
        Self::build(side_a, None)
    }

    pub fn two_sided(side_a: PtHamiltonian, side_b: PtHamiltonian) -> Self {
        Self::build(side_a, Some(side_b))
    }

    /// Unit energy scales; `alpha_b = None` gives the one-sided system.
    pub fn from_alphas(alpha_a: f64, alpha_b: Option<f64>) -> Result<Self> {
        let a = PtHamiltonian::with_alpha(alpha_a)?;
        Ok(match alpha_b {
            Some(b) => Self::two_sided(a, PtHamiltonian::with_alpha(b)?),
            None => Self::one_sided(a),
        })
    }

    fn build(side_a: PtHamiltonian, side_b: Option<PtHamiltonian>) -> Self {
        let frame = side_a
            .frame()
            .lift(side_b.map(|b| b.frame()).as_ref())
            .expect("single-qubit frames lift to 4x4");
        Self {
            tau: side_a.tau(),
            side_a,
            side_b,
            frame,
        }
    }

    pub fn side_a(&self) -> &PtHamiltonian {
        &self.side_a
    }

    pub fn side_b(&self) -> Option<&PtHamiltonian> {
        self.side_b.as_ref()
    }

    pub fn is_two_sided(&self) -> bool {
        self.side_b.is_some()
    }

    /// `τ = π/(E₊ − E₋)` of Alice's Hamiltonian.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Bob's own half-period, when he carries a PT Hamiltonian.
    pub fn tau_b(&self) -> Option<f64> {
        self.side_b.map(|b| b.tau())
    }

    /// Lifted CPT frame of the pair.
    pub fn frame(&self) -> &CptFrame {
        &self.frame
    }

    pub fn lifted_p(&self) -> &CMatrix {
        self.frame.p()
    }

    pub fn lifted_c_dagger(&self) -> &CMatrix {
        self.frame.c_dagger()
    }

    /// `H_A ⊗ I` for the one-sided system, `H_A ⊗ H_B` for the two-sided
    /// one. The product form is kept for reference only; the two-sided
    /// evolution is generated locally on each side (see [`evolve_state`]).
    pub fn hamiltonian(&self) -> CMatrix {
        let hb = self.side_b.map_or_else(|| CMatrix::identity(2), |b| b.matrix());
        tensor(&self.side_a.matrix(), &hb)
    }
}

/// Final state of an evolution and its CPT dual `Φ = C†P ψ`.
#[derive(Debug, Clone, PartialEq)]
pub struct FinalStatePair {
    pub psi_f: CVector,
    pub phi_f: CVector,
    pub alpha_a: f64,
    pub alpha_b: Option<f64>,
    pub choice_a: AliceChoice,
    pub choice_b: Option<AliceChoice>,
}

pub fn lift_frame(sys: &BipartiteSystem) -> (CMatrix, CMatrix) {
    (sys.lifted_p().clone(), sys.lifted_c_dagger().clone())
}

/// Eigenpairs of the composite Hamiltonian assembled from the single-qubit
/// eigenvectors in the PT gauge (`P₄T ψⱼ = ψⱼ`).
///
/// One-sided: `ψ± ⊗ (|0⟩ ± |1⟩)/√2` in the order `(+,+), (+,−), (−,+), (−,−)`,
/// with eigenvalues `E, E, −E, −E` of `H ⊗ I`. Two-sided: `ψᴬᵢ ⊗ ψᴮⱼ` with
/// eigenvalues `Eᴬᵢ·Eᴮⱼ` of `H_A ⊗ H_B`.
pub fn composite_eigensystem(sys: &BipartiteSystem) -> Result<Vec<(f64, CVector)>> {
    let sa = sys.side_a.spectrum();
    let a_vecs = sa.pt_gauged();
    let a_vals = [sa.e_plus, sa.e_minus];
    let (b_vals, b_vecs) = match sys.side_b {
        None => ([1.0, 1.0], parity_eigenbasis()),
        Some(b) => {
            let sb = b.spectrum();
            ([sb.e_plus, sb.e_minus], sb.pt_gauged())
        }
    };
    let mut out = Vec::with_capacity(4);
    for (ea, va) in a_vals.iter().zip(&a_vecs) {
        for (eb, vb) in b_vals.iter().zip(&b_vecs) {
            out.push((ea * eb, tensor_vec(va, vb)?));
        }
    }
    Ok(out)
}

/// Product of the local unitaries `U_A(τ_A) ⊗ U_B(τ_B)` (identity on Bob's
/// side when he carries no Hamiltonian).
///
/// Each unitary comes from the spectral exponential of the 2×2 generator; the
/// 4×4 operator is the exponential of the lifted generator `−iτ_A H_A ⊗ I −
/// iτ_B I ⊗ H_B`, whose eigensystem is the Kronecker sum of the factors.
pub fn local_unitary(sys: &BipartiteSystem) -> Result<CMatrix> {
    let eig_a = Eigensystem::of_2x2(&sys.side_a.matrix().scale(r(sys.tau)))?;
    let eig_b = match sys.side_b {
        Some(b) => Eigensystem::of_2x2(&b.matrix().scale(r(b.tau())))?,
        None => Eigensystem::of_2x2(&CMatrix::zeros(2, 2))?,
    };
    let generator = Eigensystem::kron_sum(&eig_a, &eig_b)?;
    spectral_exp_eigen(&generator, C64::new(0.0, -1.0))
}

/// Local evolution operator `U_A(τ_A)·A ⊗ U_B(τ_B)·B` for the pre-measurement
/// choices of both parties (Bob's defaults to the identity).
pub fn local_evolution(
    sys: &BipartiteSystem,
    choice_a: AliceChoice,
    choice_b: Option<AliceChoice>,
) -> Result<CMatrix> {
    let choices = tensor(
        &choice_a.operator(),
        &choice_b.unwrap_or(AliceChoice::Plus).operator(),
    );
    Ok(&local_unitary(sys)? * &choices)
}

/// General entry point: evolve any initial two-qubit state.
pub fn evolve_state(
    sys: &BipartiteSystem,
    initial: &CVector,
    choice_a: AliceChoice,
    choice_b: Option<AliceChoice>,
) -> Result<FinalStatePair> {
    if initial.dim() != 4 {
        return Err(Error::InvalidDimension {
            expected: "two-qubit state",
            found: initial.dim(),
        });
    }
    if sys.is_two_sided() != choice_b.is_some() {
        return Err(Error::InvalidConfig(
            "Bob's choice must be given exactly when he carries a PT Hamiltonian".into(),
        ));
    }
    let psi_f = local_evolution(sys, choice_a, choice_b)?.apply(initial)?;
    let phi_f = sys.frame.phi_map().apply(&psi_f)?;
    Ok(FinalStatePair {
        psi_f,
        phi_f,
        alpha_a: sys.side_a.alpha(),
        alpha_b: sys.side_b.map(|b| b.alpha()),
        choice_a,
        choice_b,
    })
}

/// `ψ±_f = (U(τ)A± ⊗ I) ψ₀` for the shared Bell state ψ₀.
pub fn evolve_entangled(sys: &BipartiteSystem, choice: AliceChoice) -> Result<FinalStatePair> {
    if sys.is_two_sided() {
        return Err(Error::InvalidConfig("evolve_entangled takes a one-sided system".into()));
    }
    evolve_state(sys, &bell_state(), choice, None)
}

pub fn evolve_entangled_two_sided(
    sys: &BipartiteSystem,
    choice_a: AliceChoice,
    choice_b: AliceChoice,
) -> Result<FinalStatePair> {
    if !sys.is_two_sided() {
        return Err(Error::InvalidConfig("two-sided evolution needs Bob's Hamiltonian".into()));
    }
    evolve_state(sys, &bell_state(), choice_a, Some(choice_b))
}
