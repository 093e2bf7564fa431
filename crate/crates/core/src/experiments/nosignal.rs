//! Joint σ_y statistics of the evolved pair and the no-signaling test.
//!
//! Under the Hilbert prescription probabilities are read off `ψ_f`; under the
//! CPT prescription they are read off its dual `Φ_f` at both ends of the
//! bracket. In both cases the state is divided by its own squared norm so
//! that each setting's four outcomes sum to one.

use serde::{Deserialize, Serialize};

use super::projectors::{eta_basis, y_projector, YOutcome};
use crate::composite::{bell_state, evolve_state, separable_state, AliceChoice, BipartiteSystem};
use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::pt::{check_alpha, Prescription};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialState {
    /// `(|00⟩ + |11⟩)/√2`
    Entangled,
    /// `|00⟩`
    Separable,
}

impl InitialState {
    pub fn vector(&self) -> CVector {
        match self {
            InitialState::Entangled => bell_state(),
            InitialState::Separable => separable_state(),
        }
    }
}

/// Which party's outcomes are summed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Marginal {
    /// `Σ_a P(a, b)`: Bob's marginal.
    OverAlice,
    /// `Σ_b P(a, b)`: Alice's marginal.
    OverBob,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoSignalConfig {
    pub prescription: Prescription,
    pub alpha_a: f64,
    pub alpha_b: Option<f64>,
    pub initial: InitialState,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointEntry {
    pub alice_choice: AliceChoice,
    pub bob_choice: Option<AliceChoice>,
    pub a: YOutcome,
    pub b: YOutcome,
    pub probability: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarginalEntry {
    pub alice_choice: AliceChoice,
    pub bob_choice: Option<AliceChoice>,
    pub outcome: YOutcome,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointProbabilityTable {
    pub prescription: Prescription,
    pub alpha_a: f64,
    pub alpha_b: Option<f64>,
    pub initial: InitialState,
    /// Vector the probabilities are read from and how it is normalized.
    pub normalization: String,
    pub entries: Vec<JointEntry>,
    /// `Σ_a P(a, b | A, B)` per setting and b.
    pub bob_marginals: Vec<MarginalEntry>,
    /// `Σ_b P(a, b | A, B)` per setting and a.
    pub alice_marginals: Vec<MarginalEntry>,
    /// `max |Σ_a P(a,b|A,B) − P(b|B)|`, with `P(b|B)` the mean over Alice's settings.
    pub deviation: f64,
    /// Same test for Alice's marginals against Bob's settings (two-sided only).
    pub reverse_deviation: f64,
}

impl JointProbabilityTable {
    pub fn bob_marginal(&self, alice: AliceChoice, bob: Option<AliceChoice>, b: YOutcome) -> Option<f64> {
        self.bob_marginals
            .iter()
            .find(|m| m.alice_choice == alice && m.bob_choice == bob && m.outcome == b)
            .map(|m| m.value)
    }
}

/// `[[P(a, b)]]` indexed by `(a, b)` in `YOutcome::ALL` order, read from `v`.
pub fn joint_y_probabilities(v: &CVector) -> Result<[[f64; 2]; 2]> {
    let norm = v.dot_conj(v)?.re;
    if norm <= 0.0 {
        return Err(Error::InvalidParameter("zero state has no outcome statistics".into()));
    }
    let mut out = [[0.0; 2]; 2];
    for (i, a) in YOutcome::ALL.iter().enumerate() {
        for (j, b) in YOutcome::ALL.iter().enumerate() {
            let proj = y_projector(*a, *b).matrix;
            out[i][j] = v.dot_conj(&proj.apply(v)?)?.re / norm;
        }
    }
    Ok(out)
}

fn marginal_from_joint(joint: &[[f64; 2]; 2], outcome: YOutcome, direction: Marginal) -> f64 {
    let k = YOutcome::ALL.iter().position(|o| *o == outcome).expect("known outcome");
    match direction {
        Marginal::OverAlice => joint[0][k] + joint[1][k],
        Marginal::OverBob => joint[k][0] + joint[k][1],
    }
}

/// Bob's σ_y marginal under the Hilbert prescription for the one-sided system
/// (unit energy scale), normalized by `⟨ψ_f|ψ_f⟩`.
pub fn marginal_hilbert(alpha: f64, choice: AliceChoice, b: YOutcome) -> Result<f64> {
    let sys = BipartiteSystem::from_alphas(alpha, None)?;
    let f = evolve_state(&sys, &bell_state(), choice, None)?;
    Ok(marginal_from_joint(&joint_y_probabilities(&f.psi_f)?, b, Marginal::OverAlice))
}

/// `(1 ∓ sin α)² / (2(1 + sin²α))` for b = +y (upper sign for `Plus`);
/// b = −y takes the complementary sign.
pub fn hilbert_marginal_closed_form(alpha: f64, choice: AliceChoice, b: YOutcome) -> Result<f64> {
    check_alpha(alpha)?;
    let s = alpha.sin();
    let sign = match (choice, b) {
        (AliceChoice::Plus, YOutcome::PlusY) | (AliceChoice::Minus, YOutcome::MinusY) => -1.0,
        _ => 1.0,
    };
    Ok((1.0 + sign * s).powi(2) / (2.0 * (1.0 + s * s)))
}

/// CPT marginal `Σ ⟨Φ_f|(|a⟩⟨a| ⊗ |b⟩⟨b|)|Φ_f⟩` over the chosen party, for
/// the entangled initial state.
pub fn marginal_cpt(
    sys: &BipartiteSystem,
    choice_a: AliceChoice,
    choice_b: Option<AliceChoice>,
    outcome: YOutcome,
    direction: Marginal,
) -> Result<f64> {
    let f = evolve_state(sys, &bell_state(), choice_a, choice_b)?;
    Ok(marginal_from_joint(&joint_y_probabilities(&f.phi_f)?, outcome, direction))
}

/// Bob's CPT marginal evaluated by inserting the η resolution of identity
/// between the projector and the ket: `Σ_a Σ_j ⟨Φ|Π_ab|η_j⟩⟨η_j|Φ⟩`.
pub fn marginal_cpt_via_eta(
    sys: &BipartiteSystem,
    choice_a: AliceChoice,
    choice_b: Option<AliceChoice>,
    b: YOutcome,
) -> Result<f64> {
    let f = evolve_state(sys, &bell_state(), choice_a, choice_b)?;
    let phi = &f.phi_f;
    let norm = phi.dot_conj(phi)?.re;
    let eta = eta_basis();
    let mut total = 0.0;
    for a in YOutcome::ALL {
        let proj = y_projector(a, b).matrix;
        for e in &eta {
            let left = phi.dot_conj(&proj.apply(e)?)?;
            let right = e.dot_conj(phi)?;
            total += (left * right).re;
        }
    }
    Ok(total / norm)
}

fn max_spread(groups: impl Iterator<Item = Vec<f64>>) -> f64 {
    groups
        .map(|vals| {
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            vals.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

pub fn nosignaling_report(config: &NoSignalConfig) -> Result<JointProbabilityTable> {
    let sys = BipartiteSystem::from_alphas(config.alpha_a, config.alpha_b)?;
    let initial = config.initial.vector();
    let bob_settings: Vec<Option<AliceChoice>> = if sys.is_two_sided() {
        AliceChoice::ALL.iter().copied().map(Some).collect()
    } else {
        vec![None]
    };

    let mut entries = Vec::new();
    let mut bob_marginals = Vec::new();
    let mut alice_marginals = Vec::new();
    for &alice in &AliceChoice::ALL {
        for &bob in &bob_settings {
            let f = evolve_state(&sys, &initial, alice, bob)?;
            let v = match config.prescription {
                Prescription::Hilbert => &f.psi_f,
                Prescription::Cpt => &f.phi_f,
            };
            let joint = joint_y_probabilities(v)?;
            for (i, a) in YOutcome::ALL.iter().enumerate() {
                for (j, b) in YOutcome::ALL.iter().enumerate() {
                    entries.push(JointEntry { alice_choice: alice, bob_choice: bob, a: *a, b: *b, probability: joint[i][j] });
                }
            }
            for o in YOutcome::ALL {
                bob_marginals.push(MarginalEntry {
                    alice_choice: alice,
                    bob_choice: bob,
                    outcome: o,
                    value: marginal_from_joint(&joint, o, Marginal::OverAlice),
                });
                alice_marginals.push(MarginalEntry {
                    alice_choice: alice,
                    bob_choice: bob,
                    outcome: o,
                    value: marginal_from_joint(&joint, o, Marginal::OverBob),
                });
            }
        }
    }

    // Bob's marginal must not depend on Alice's setting, at fixed Bob setting
    let deviation = max_spread(bob_settings.iter().flat_map(|&bob| {
        let bm = &bob_marginals;
        YOutcome::ALL.iter().map(move |&o| {
            bm.iter()
                .filter(|m| m.bob_choice == bob && m.outcome == o)
                .map(|m| m.value)
                .collect::<Vec<_>>()
        })
    }));
    let reverse_deviation = max_spread(AliceChoice::ALL.iter().flat_map(|&alice| {
        let am = &alice_marginals;
        YOutcome::ALL.iter().map(move |&o| {
            am.iter()
                .filter(|m| m.alice_choice == alice && m.outcome == o)
                .map(|m| m.value)
                .collect::<Vec<_>>()
        })
    }));

    let normalization = match config.prescription {
        Prescription::Hilbert => "psi_f / <psi_f|psi_f>",
        Prescription::Cpt => "phi_f / <phi_f|phi_f>",
    };
    Ok(JointProbabilityTable {
        prescription: config.prescription,
        alpha_a: config.alpha_a,
        alpha_b: config.alpha_b,
        initial: config.initial,
        normalization: normalization.to_string(),
        entries,
        bob_marginals,
        alice_marginals,
        deviation,
        reverse_deviation,
    })
}
