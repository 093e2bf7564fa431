//! Measurement apparatus: σ_y-basis product projectors and their common
//! eigenbasis, plus computational-basis projectors for the CHSH game.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::linalg::{c, r, tensor, tensor_vec, CMatrix, CVector};

/// Outcome of a σ_y measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum YOutcome {
    #[serde(rename = "+y")]
    PlusY,
    #[serde(rename = "-y")]
    MinusY,
}

impl YOutcome {
    pub const ALL: [YOutcome; 2] = [YOutcome::PlusY, YOutcome::MinusY];

    /// `|±y⟩ = (|0⟩ ± i|1⟩)/√2`.
    pub fn ket(&self) -> CVector {
        let sign = match self {
            YOutcome::PlusY => 1.0,
            YOutcome::MinusY => -1.0,
        };
        CVector::from_vec_unchecked(vec![r(FRAC_1_SQRT_2), c(0.0, sign * FRAC_1_SQRT_2)])
    }

    pub fn projector(&self) -> CMatrix {
        let k = self.ket();
        k.outer(&k)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            YOutcome::PlusY => "+y",
            YOutcome::MinusY => "-y",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct YProjector {
    pub a_outcome: YOutcome,
    pub b_outcome: YOutcome,
    pub matrix: CMatrix,
}

/// `|a⟩⟨a| ⊗ |b⟩⟨b|` for σ_y outcomes of Alice (a) and Bob (b).
pub fn y_projector(a: YOutcome, b: YOutcome) -> YProjector {
    YProjector {
        a_outcome: a,
        b_outcome: b,
        matrix: tensor(&a.projector(), &b.projector()),
    }
}

/// Common eigenbasis of the four σ_y product projectors:
/// `η₁ = |+y,−y⟩, η₂ = |+y,+y⟩, η₃ = |−y,+y⟩, η₄ = −|−y,−y⟩`.
pub fn eta_basis() -> [CVector; 4] {
    use YOutcome::*;
    let prod = |a: YOutcome, b: YOutcome| tensor_vec(&a.ket(), &b.ket()).expect("qubit kets");
    [
        prod(PlusY, MinusY),
        prod(PlusY, PlusY),
        prod(MinusY, PlusY),
        prod(MinusY, MinusY).scale(r(-1.0)),
    ]
}

/// Computational-basis bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Bit {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
}

impl Bit {
    pub const ALL: [Bit; 2] = [Bit::Zero, Bit::One];

    pub fn index(&self) -> usize {
        match self {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Bit> {
        match i {
            0 => Some(Bit::Zero),
            1 => Some(Bit::One),
            _ => None,
        }
    }

    pub fn projector(&self) -> CMatrix {
        let k = CVector::basis(2, self.index()).expect("qubit basis");
        k.outer(&k)
    }
}

/// `|a⟩⟨a| ⊗ |b⟩⟨b|` in the computational basis.
pub fn bit_projector(a: Bit, b: Bit) -> CMatrix {
    tensor(&a.projector(), &b.projector())
}
