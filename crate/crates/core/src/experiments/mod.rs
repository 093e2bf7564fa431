//! The three two-qubit experiments and the measurement apparatus they share.

pub mod chsh;
pub mod entanglement;
pub mod nosignal;
pub mod projectors;

pub use chsh::{
    chsh_final_phi, chsh_joint_closed_form, chsh_marginal, chsh_optimize, chsh_optimize_on,
    chsh_win_probability, chsh_win_probability_from_marginals, ChshStrategy,
};
pub use entanglement::{cpt_pair_density, entanglement_report, EntanglementReport, Entropy};
pub use nosignal::{
    marginal_cpt, marginal_hilbert, nosignaling_report, InitialState, JointProbabilityTable, Marginal,
    NoSignalConfig,
};
pub use projectors::{bit_projector, eta_basis, y_projector, Bit, YOutcome, YProjector};
