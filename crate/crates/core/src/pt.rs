//! Single-qubit PT-symmetric machinery: the two-level Hamiltonian family,
//! parity and time reversal, the C operator and the CPT inner product.
//!
//! Time reversal is antilinear, so it is never stored as a matrix. It is the
//! entrywise complex conjugation [`time_reversal`].

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, r, spectral_exp, C64, CMatrix, CVector, I, ONE, ZERO};

/// Relative guard band below the exceptional point at |α| = π/2.
pub const ALPHA_GUARD: f64 = 1e-9;

/// Largest admissible |α|.
pub fn alpha_limit() -> f64 {
    FRAC_PI_2 * (1.0 - ALPHA_GUARD)
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha.abs() >= alpha_limit() {
        return Err(Error::BrokenPtSymmetry { alpha });
    }
    Ok(())
}

/// `H = s·[[i sin α, 1], [1, −i sin α]]` in the unbroken region |α| < π/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PtHamiltonian {
    s: f64,
    alpha: f64,
}

impl PtHamiltonian {
    pub fn new(s: f64, alpha: f64) -> Result<Self> {
        if !s.is_finite() || s <= 0.0 {
            return Err(Error::InvalidParameter(format!("energy scale s must be positive and finite, got {s}")));
        }
        check_alpha(alpha)?;
        Ok(Self { s, alpha })
    }

    /// Unit energy scale.
    pub fn with_alpha(alpha: f64) -> Result<Self> {
        Self::new(1.0, alpha)
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn matrix(&self) -> CMatrix {
        hamiltonian_matrix(self)
    }

    /// `E₊ = s cos α`.
    pub fn energy(&self) -> f64 {
        self.s * self.alpha.cos()
    }

    /// Evolution time `τ = π / (E₊ − E₋)` that turns `U(τ)` into `−i·C`.
    pub fn tau(&self) -> f64 {
        PI / (2.0 * self.energy())
    }

    /// `U(t) = exp(−iHt)`.
    pub fn evolution(&self, t: f64) -> Result<CMatrix> {
        spectral_exp(&self.matrix(), c(0.0, -t))
    }

    pub fn spectrum(&self) -> Spectrum2 {
        eigensystem(self)
    }

    pub fn frame(&self) -> CptFrame {
        cpt_frame(self)
    }
}

pub fn hamiltonian_matrix(h: &PtHamiltonian) -> CMatrix {
    let (s, sa) = (h.s, h.alpha.sin());
    CMatrix::from_vec_unchecked(2, 2, vec![c(0.0, s * sa), r(s), r(s), c(0.0, -s * sa)])
}

/// Parity on a qubit: the bit flip.
pub fn parity() -> CMatrix {
    CMatrix::from_vec_unchecked(2, 2, vec![ZERO, ONE, ONE, ZERO])
}

/// `T(x, y) = (x⋆, y⋆)`.
pub fn time_reversal(v: &CVector) -> CVector {
    v.conj()
}

/// `P·T·v` for a parity operator of matching size.
pub fn pt_image(v: &CVector, p: &CMatrix) -> Result<CVector> {
    p.apply(&time_reversal(v))
}

/// Real spectrum `E± = ±s cos α` with the eigenvectors in the printed gauge
/// `ψ± = (e^{±iα/2}, ±e^{∓iα/2}) / √(2 cos α)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum2 {
    pub e_plus: f64,
    pub e_minus: f64,
    pub psi_plus: CVector,
    pub psi_minus: CVector,
}

impl Spectrum2 {
    /// Eigenvectors rephased so that `PTψ = ψ` for both. Only `ψ₋` changes,
    /// by a factor `i`, and its PT norm `ψ₋ᵀψ₋` becomes −1.
    pub fn pt_gauged(&self) -> [CVector; 2] {
        [self.psi_plus.clone(), self.psi_minus.scale(I)]
    }
}

pub fn eigensystem(h: &PtHamiltonian) -> Spectrum2 {
    let a = h.alpha;
    let k = 1.0 / (2.0 * a.cos()).sqrt();
    let half = C64::from_polar(1.0, a / 2.0);
    let psi_plus = CVector::from_vec_unchecked(vec![half * k, half.conj() * k]);
    let psi_minus = CVector::from_vec_unchecked(vec![half.conj() * k, -half * k]);
    Spectrum2 {
        e_plus: h.energy(),
        e_minus: -h.energy(),
        psi_plus,
        psi_minus,
    }
}

/// `C = (1/cos α)·[[i sin α, 1], [1, −i sin α]]`.
pub fn c_closed_form(alpha: f64) -> Result<CMatrix> {
    check_alpha(alpha)?;
    let k = 1.0 / alpha.cos();
    let sa = alpha.sin();
    Ok(CMatrix::from_vec_unchecked(2, 2, vec![c(0.0, sa * k), r(k), r(k), c(0.0, -sa * k)]))
}

/// `C = Σₙ ψₙψₙᵀ` over a complete set of PT-symmetric eigenvectors.
///
/// Each vector is first rephased so that `PTψₙ = ψₙ` and then scaled so that
/// `|ψₙᵀψₙ| = 1`; the sign of `ψₙᵀψₙ` is then the sign of its PT norm, and
/// the plain sum of outer products carries that sign into C. The result is
/// independent of the gauge the eigenvectors arrive in.
pub fn c_from_eigenvectors(vectors: &[CVector], p: &CMatrix) -> Result<CMatrix> {
    let n = p.rows();
    let mut out = CMatrix::zeros(n, n);
    for v in vectors {
        let w = pt_image(v, p)?;
        // PTψ = λψ with |λ| = 1 for an unbroken eigenvector
        let lambda = v.dot_conj(&w)? / v.dot_conj(v)?;
        if w.max_abs_diff(&v.scale(lambda)) > 1e-10 * v.norm() || (lambda.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter("eigenvector is not PT-symmetric up to a phase".into()));
        }
        let gauged = v.scale(lambda.sqrt());
        let pt_norm = gauged.dot_plain(&gauged)?;
        if pt_norm.norm() <= 1e-14 {
            return Err(Error::ZeroCptNorm { norm: pt_norm.re });
        }
        out = &out + &gauged.outer_plain(&gauged).scale(r(1.0 / pt_norm.norm()));
    }
    Ok(out)
}

pub fn build_c_spectral(spec: &Spectrum2) -> Result<CMatrix> {
    c_from_eigenvectors(&[spec.psi_plus.clone(), spec.psi_minus.clone()], &parity())
}

/// The operators that define the CPT metric of one system: P, C and `C† = TCT`.
#[derive(Debug, Clone, PartialEq)]
pub struct CptFrame {
    p_op: CMatrix,
    c_op: CMatrix,
    c_dagger_op: CMatrix,
}

impl CptFrame {
    /// Build a frame from P and C; `C†` is the entrywise conjugate of C.
    pub fn new(p: CMatrix, c_op: CMatrix) -> Result<Self> {
        if !p.is_square() || p.rows() != c_op.rows() || p.cols() != c_op.cols() {
            return Err(Error::DimensionMismatch {
                op: "CptFrame::new",
                left: (p.rows(), p.cols()),
                right: (c_op.rows(), c_op.cols()),
            });
        }
        if (&p * &p).max_abs_diff(&CMatrix::identity(p.rows())) > 1e-12 {
            return Err(Error::InvalidParameter("parity operator must square to identity".into()));
        }
        let c_dagger_op = c_op.conj();
        Ok(Self { p_op: p, c_op, c_dagger_op })
    }

    /// Frame of a two-qubit system: `P_A ⊗ P_B`, `C_A ⊗ C_B`, with identities
    /// on side B when it carries no PT Hamiltonian.
    pub fn lift(&self, side_b: Option<&CptFrame>) -> Result<Self> {
        if self.dim() != 2 || side_b.is_some_and(|b| b.dim() != 2) {
            return Err(Error::InvalidDimension {
                expected: "single-qubit frames",
                found: self.dim(),
            });
        }
        let id = CMatrix::identity(2);
        let (pb, cb) = match side_b {
            Some(b) => (&b.p_op, &b.c_op),
            None => (&id, &id),
        };
        Self::new(
            crate::linalg::tensor(&self.p_op, pb),
            crate::linalg::tensor(&self.c_op, cb),
        )
    }

    pub fn dim(&self) -> usize {
        self.p_op.rows()
    }

    pub fn p(&self) -> &CMatrix {
        &self.p_op
    }

    pub fn c(&self) -> &CMatrix {
        &self.c_op
    }

    pub fn c_dagger(&self) -> &CMatrix {
        &self.c_dagger_op
    }

    /// `C†P`, the map from ψ to its dual Φ.
    pub fn phi_map(&self) -> CMatrix {
        &self.c_dagger_op * &self.p_op
    }

    /// `CPT·ψ = C·P·ψ⋆`.
    pub fn cpt_image(&self, v: &CVector) -> Result<CVector> {
        self.c_op.apply(&self.p_op.apply(&time_reversal(v))?)
    }
}

pub fn cpt_frame(h: &PtHamiltonian) -> CptFrame {
    let cm = c_closed_form(h.alpha).expect("alpha validated at construction");
    CptFrame::new(parity(), cm).expect("parity is an involution")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Prescription {
    Hilbert,
    Cpt,
}

impl Prescription {
    pub fn as_str(&self) -> &'static str {
        match self {
            Prescription::Hilbert => "hilbert",
            Prescription::Cpt => "cpt",
        }
    }
}

fn check_frame_dim(v: &CVector, frame: &CptFrame) -> Result<()> {
    if v.dim() != frame.dim() {
        return Err(Error::DimensionMismatch {
            op: "frame",
            left: (v.dim(), 1),
            right: (frame.dim(), frame.dim()),
        });
    }
    Ok(())
}

/// `Φ = C†Pψ`.
pub fn phi_of(state: &CVector, frame: &CptFrame) -> Result<CVector> {
    check_frame_dim(state, frame)?;
    frame.phi_map().apply(state)
}

/// CPT branch: `(CPTa)ᵀ b`. Hilbert branch: `a⋆ᵀ b`.
pub fn inner(a: &CVector, b: &CVector, frame: &CptFrame, p: Prescription) -> Result<C64> {
    check_frame_dim(a, frame)?;
    check_frame_dim(b, frame)?;
    match p {
        Prescription::Cpt => frame.cpt_image(a)?.dot_plain(b),
        Prescription::Hilbert => a.dot_conj(b),
    }
}

fn cpt_norm(v: &CVector, frame: &CptFrame) -> Result<f64> {
    let n = phi_of(v, frame)?.dot_conj(v)?;
    let floor = 1e-14 * v.norm().powi(2).max(f64::MIN_POSITIVE);
    if n.re <= floor || n.im.abs() > 1e-10 * n.re.abs().max(1.0) {
        return Err(Error::ZeroCptNorm { norm: n.re });
    }
    Ok(n.re)
}

/// `p = |⟨Φa|b⟩|² / (⟨Φa|a⟩⟨Φb|b⟩)`.
pub fn transition_probability(a: &CVector, b: &CVector, frame: &CptFrame) -> Result<f64> {
    let na = cpt_norm(a, frame)?;
    let nb = cpt_norm(b, frame)?;
    let amp = phi_of(a, frame)?.dot_conj(b)?;
    Ok(amp.norm_sqr() / (na * nb))
}

/// Weighted mixture of `|ψᵢ⟩⟨Φᵢ|` (CPT) or `|ψᵢ⟩⟨ψᵢ|` (Hilbert). Weights are
/// explicit and must be a probability vector.
pub fn density_matrix(
    states: &[CVector],
    weights: &[f64],
    frame: &CptFrame,
    p: Prescription,
) -> Result<CMatrix> {
    if states.is_empty() || states.len() != weights.len() {
        return Err(Error::InvalidWeights(format!(
            "{} states but {} weights",
            states.len(),
            weights.len()
        )));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::InvalidWeights("weights must be finite and non-negative".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidWeights(format!("weights sum to {total}, not 1")));
    }
    let n = frame.dim();
    let mut rho = CMatrix::zeros(n, n);
    for (psi, &w) in states.iter().zip(weights) {
        check_frame_dim(psi, frame)?;
        let term = match p {
            Prescription::Cpt => psi.outer(&phi_of(psi, frame)?),
            Prescription::Hilbert => psi.outer(psi),
        };
        rho = &rho + &term.scale(r(w));
    }
    Ok(rho)
}

/// `(|0⟩ + |1⟩)/√2` and `(|0⟩ − |1⟩)/√2`, the parity eigenbasis.
pub(crate) fn parity_eigenbasis() -> [CVector; 2] {
    [
        CVector::from_vec_unchecked(vec![r(FRAC_1_SQRT_2), r(FRAC_1_SQRT_2)]),
        CVector::from_vec_unchecked(vec![r(FRAC_1_SQRT_2), r(-FRAC_1_SQRT_2)]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_2x2, matmul};
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};
    const FRAC_PI_12: f64 = FRAC_PI_6 / 2.0;

    pub(crate) fn alpha_grid() -> Vec<f64> {
        let edge = 0.49 * PI * 0.99;
        vec![0.0, FRAC_PI_12, -FRAC_PI_12, FRAC_PI_6, -FRAC_PI_6, FRAC_PI_4, -FRAC_PI_4, edge, -edge]
    }

    #[test]
    fn hermitian_limit_matrix() {
        let h = PtHamiltonian::new(1.0, 0.0).unwrap();
        assert_eq!(h.matrix(), CMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]]).unwrap());
        assert_eq!(h.matrix(), h.matrix().adjoint());
    }

    #[test]
    fn matrix_at_s2_alpha_pi_6() {
        let h = PtHamiltonian::new(2.0, FRAC_PI_6).unwrap();
        let expected = CMatrix::from_rows([[I, r(2.0)], [r(2.0), -I]]).unwrap();
        assert!(h.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn rejects_broken_symmetry_and_bad_scale() {
        assert!(matches!(PtHamiltonian::new(1.0, FRAC_PI_2), Err(Error::BrokenPtSymmetry { .. })));
        assert!(PtHamiltonian::new(1.0, -FRAC_PI_2).is_err());
        assert!(PtHamiltonian::new(1.0, 1.6).is_err());
        assert!(PtHamiltonian::new(1.0, FRAC_PI_2 * (1.0 - 0.5 * ALPHA_GUARD)).is_err());
        assert!(PtHamiltonian::new(1.0, f64::NAN).is_err());
        assert!(PtHamiltonian::new(0.0, 0.1).is_err());
        assert!(PtHamiltonian::new(f64::INFINITY, 0.1).is_err());
        assert!(PtHamiltonian::new(1.0, FRAC_PI_2 * (1.0 - 2.0 * ALPHA_GUARD)).is_ok());
    }

    #[test]
    fn eigenpairs_satisfy_eigen_equations() {
        for alpha in alpha_grid() {
            for s in [0.5, 1.0, 3.0] {
                let h = PtHamiltonian::new(s, alpha).unwrap();
                let sp = h.spectrum();
                assert_eq!(sp.e_plus, s * alpha.cos());
                assert_eq!(sp.e_minus, -sp.e_plus);
                let m = h.matrix();
                for (e, v) in [(sp.e_plus, &sp.psi_plus), (sp.e_minus, &sp.psi_minus)] {
                    let res = m.apply(v).unwrap().max_abs_diff(&v.scale(r(e)));
                    assert!(res < 1e-12 * (1.0 + s / alpha.cos()), "alpha={alpha} residual {res}");
                }
            }
        }
    }

    #[test]
    fn hermitian_limit_eigenvectors() {
        let sp = PtHamiltonian::with_alpha(0.0).unwrap().spectrum();
        let [plus, minus] = parity_eigenbasis();
        assert!(sp.psi_plus.max_abs_diff(&plus) < 1e-15);
        assert!(sp.psi_minus.max_abs_diff(&minus) < 1e-15);
        assert_eq!((sp.e_plus, sp.e_minus), (1.0, -1.0));
    }

    #[test]
    fn eigenvectors_agree_with_numeric_solver_up_to_phase() {
        let h = PtHamiltonian::with_alpha(0.7).unwrap();
        let sp = h.spectrum();
        let [p, q] = eig_2x2(&h.matrix()).unwrap();
        let scale = sp.psi_plus.norm();
        assert!(p.vector.scale(r(scale)).max_abs_diff_up_to_phase(&sp.psi_plus) < 1e-12);
        assert!(q.vector.scale(r(scale)).max_abs_diff_up_to_phase(&sp.psi_minus) < 1e-12);
    }

    #[test]
    fn cpt_norms_are_one_and_hilbert_overlap_is_tan_alpha() {
        let h = PtHamiltonian::with_alpha(FRAC_PI_6).unwrap();
        let (sp, fr) = (h.spectrum(), h.frame());
        for v in [&sp.psi_plus, &sp.psi_minus] {
            let n = inner(v, v, &fr, Prescription::Cpt).unwrap();
            assert!((n - ONE).norm() < 1e-12);
        }
        let overlap = inner(&sp.psi_plus, &sp.psi_minus, &fr, Prescription::Hilbert).unwrap();
        // (ψ⁺)⋆·ψ⁻ = −i tan α; its modulus is tan α
        assert!((overlap.norm() - FRAC_PI_6.tan()).abs() < 1e-12);
        assert!((overlap - c(0.0, -FRAC_PI_6.tan())).norm() < 1e-12);
        assert!((overlap.norm() - 0.5773502691896257).abs() < 1e-12);
    }

    #[test]
    fn spectral_c_matches_closed_form() {
        for alpha in alpha_grid() {
            let h = PtHamiltonian::with_alpha(alpha).unwrap();
            let spectral = build_c_spectral(&h.spectrum()).unwrap();
            let closed = c_closed_form(alpha).unwrap();
            let tol = 1e-12 * (1.0 / alpha.cos()).max(1.0);
            assert!(spectral.max_abs_diff(&closed) < tol, "alpha={alpha}");
            let id = CMatrix::identity(2);
            assert!(matmul(&closed, &closed).unwrap().max_abs_diff(&id) < 1e-12 / alpha.cos().powi(2));
            assert!(closed.commutator(&h.matrix()).unwrap().max_abs() < 1e-12 / alpha.cos());
        }
    }

    #[test]
    fn c_at_pi_6_by_hand() {
        let k = 1.0 / FRAC_PI_6.cos();
        let expected = CMatrix::from_rows([[c(0.0, 0.5 * k), r(k)], [r(k), c(0.0, -0.5 * k)]]).unwrap();
        let spectral = build_c_spectral(&PtHamiltonian::with_alpha(FRAC_PI_6).unwrap().spectrum()).unwrap();
        assert!(spectral.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn hermitian_limit_c_is_parity() {
        let f = PtHamiltonian::with_alpha(0.0).unwrap().frame();
        assert!(f.c().max_abs_diff(&parity()) < 1e-15);
        assert!(f.c_dagger().max_abs_diff(&parity()) < 1e-15);
    }

    #[test]
    fn printed_gauge_plain_sum_is_identity() {
        // the literal Σψψᵀ over the printed eigenvectors is the completeness
        // relation, not C; only the PT gauge carries the sign of the norm
        let sp = PtHamiltonian::with_alpha(FRAC_PI_6).unwrap().spectrum();
        let naive = &sp.psi_plus.outer_plain(&sp.psi_plus) + &sp.psi_minus.outer_plain(&sp.psi_minus);
        assert!(naive.max_abs_diff(&CMatrix::identity(2)) < 1e-12);
        let [gp, gm] = sp.pt_gauged();
        for g in [&gp, &gm] {
            assert!(pt_image(g, &parity()).unwrap().max_abs_diff(g) < 1e-14);
        }
        assert!((gm.dot_plain(&gm).unwrap() + ONE).norm() < 1e-12);
        let gauged = &gp.outer_plain(&gp) + &gm.outer_plain(&gm);
        assert!(gauged.max_abs_diff(&c_closed_form(FRAC_PI_6).unwrap()) < 1e-12);
    }

    #[test]
    fn c_dagger_at_pi_6() {
        let f = PtHamiltonian::with_alpha(FRAC_PI_6).unwrap().frame();
        let k = 1.0 / FRAC_PI_6.cos();
        let expected = CMatrix::from_rows([[c(0.0, -0.5 * k), r(k)], [r(k), c(0.0, 0.5 * k)]]).unwrap();
        assert!(f.c_dagger().max_abs_diff(&expected) < 1e-12);
        assert!((&f.p().clone() * f.p()).max_abs_diff(&CMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn c_is_hamiltonian_over_energy() {
        let h = PtHamiltonian::new(2.5, 0.4).unwrap();
        let scaled = h.matrix().scale(r(1.0 / h.energy()));
        assert!(h.frame().c().max_abs_diff(&scaled) < 1e-12);
    }

    #[test]
    fn phi_in_hermitian_limit_is_psi() {
        let h = PtHamiltonian::with_alpha(0.0).unwrap();
        let sp = h.spectrum();
        let phi = phi_of(&sp.psi_plus, &h.frame()).unwrap();
        assert!(phi.max_abs_diff(&sp.psi_plus) < 1e-15);
    }

    #[test]
    fn phi_biorthonormality_across_grid() {
        for alpha in alpha_grid() {
            let h = PtHamiltonian::with_alpha(alpha).unwrap();
            let (sp, fr) = (h.spectrum(), h.frame());
            let psis = [&sp.psi_plus, &sp.psi_minus];
            for (j, pj) in psis.iter().enumerate() {
                let phi = phi_of(pj, &fr).unwrap();
                for (k, pk) in psis.iter().enumerate() {
                    let expected = if j == k { ONE } else { ZERO };
                    let got = phi.dot_conj(pk).unwrap();
                    assert!((got - expected).norm() < 1e-12, "alpha={alpha} j={j} k={k} got={got}");
                }
            }
        }
    }

    #[test]
    fn phi_is_conjugate_of_cpt_image() {
        let h = PtHamiltonian::with_alpha(FRAC_PI_6).unwrap();
        let fr = h.frame();
        let v = CVector::new(vec![c(0.3, -0.2), c(1.1, 0.4)]).unwrap();
        let phi = phi_of(&v, &fr).unwrap();
        assert!(phi.max_abs_diff(&fr.cpt_image(&v).unwrap().conj()) < 1e-15);
        let w = CVector::new(vec![c(-0.7, 0.1), c(0.2, 0.9)]).unwrap();
        let via_bbb = inner(&v, &w, &fr, Prescription::Cpt).unwrap();
        let via_phi = phi.dot_conj(&w).unwrap();
        assert!((via_bbb - via_phi).norm() < 1e-14);
    }

    #[test]
    fn cpt_and_hilbert_agree_in_hermitian_limit_for_real_states() {
        let fr = PtHamiltonian::with_alpha(0.0).unwrap().frame();
        let a = CVector::from_real(&[0.3, -1.2]).unwrap();
        let b = CVector::from_real(&[2.0, 0.5]).unwrap();
        let x = inner(&a, &b, &fr, Prescription::Cpt).unwrap();
        let y = inner(&a, &b, &fr, Prescription::Hilbert).unwrap();
        assert!((x - y).norm() < 1e-14);
    }

    #[test]
    fn inner_rejects_dimension_mismatch() {
        let fr = PtHamiltonian::with_alpha(0.1).unwrap().frame();
        let a = CVector::basis(2, 0).unwrap();
        let b = CVector::basis(4, 0).unwrap();
        assert!(inner(&a, &b, &fr, Prescription::Cpt).is_err());
        assert!(phi_of(&b, &fr).is_err());
    }

    #[test]
    fn transition_probabilities() {
        let h = PtHamiltonian::with_alpha(FRAC_PI_6).unwrap();
        let (sp, fr) = (h.spectrum(), h.frame());
        assert!((transition_probability(&sp.psi_plus, &sp.psi_plus, &fr).unwrap() - 1.0).abs() < 1e-12);
        assert!(transition_probability(&sp.psi_plus, &sp.psi_minus, &fr).unwrap() < 1e-24);
        let zero = CVector::basis(2, 0).unwrap();
        let p = transition_probability(&sp.psi_plus, &zero, &fr).unwrap();
        // brute force: amplitude ⟨Φ⁺|0⟩ = conj(Φ⁺₀), ⟨Φ₀|0⟩ = conj((C†P)₀₀)
        let phi_plus = fr.phi_map().apply(&sp.psi_plus).unwrap();
        let n0 = fr.phi_map().get(0, 0).conj().re;
        let brute = phi_plus.get(0).norm_sqr() / n0;
        assert!((p - brute).abs() < 1e-12);
        assert!((0.0..=1.0).contains(&p));
        // conj(Φ⁺₀) = e^{iα/2}/√(2cosα); (C†P)₀₀ = 1/cosα ⇒ p = ½
        assert!((p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn transition_probability_rejects_zero_state() {
        let fr = PtHamiltonian::with_alpha(0.3).unwrap().frame();
        let zero = CVector::new(vec![ZERO, ZERO]).unwrap();
        let v = CVector::basis(2, 0).unwrap();
        assert!(matches!(transition_probability(&zero, &v, &fr), Err(Error::ZeroCptNorm { .. })));
    }

    #[test]
    fn mixed_cpt_density_is_half_identity() {
        let h = PtHamiltonian::with_alpha(FRAC_PI_6).unwrap();
        let sp = h.spectrum();
        let rho = density_matrix(
            &[sp.psi_plus.clone(), sp.psi_minus.clone()],
            &[0.5, 0.5],
            &h.frame(),
            Prescription::Cpt,
        )
        .unwrap();
        assert!(rho.max_abs_diff(&CMatrix::identity(2).scale(r(0.5))) < 1e-12);
    }

    #[test]
    fn pure_density_idempotence_depends_on_prescription() {
        let h = PtHamiltonian::with_alpha(FRAC_PI_6).unwrap();
        let (sp, fr) = (h.spectrum(), h.frame());
        let states = [sp.psi_plus.clone()];
        let cpt = density_matrix(&states, &[1.0], &fr, Prescription::Cpt).unwrap();
        assert!((&cpt * &cpt).max_abs_diff(&cpt) < 1e-12);
        let hil = density_matrix(&states, &[1.0], &fr, Prescription::Hilbert).unwrap();
        assert!((&hil * &hil).max_abs_diff(&hil) >= 1e-3);
    }

    #[test]
    fn density_matrix_rejects_bad_weights() {
        let h = PtHamiltonian::with_alpha(0.2).unwrap();
        let (sp, fr) = (h.spectrum(), h.frame());
        let st = [sp.psi_plus.clone(), sp.psi_minus.clone()];
        for w in [vec![0.5], vec![0.7, 0.7], vec![1.5, -0.5], vec![f64::NAN, 1.0]] {
            assert!(matches!(
                density_matrix(&st, &w, &fr, Prescription::Cpt),
                Err(Error::InvalidWeights(_))
            ));
        }
        assert!(density_matrix(&[], &[], &fr, Prescription::Cpt).is_err());
    }

    #[test]
    fn evolution_at_tau_is_minus_i_c() {
        for alpha in [0.0, 0.3, -1.0] {
            let h = PtHamiltonian::new(1.7, alpha).unwrap();
            let u = h.evolution(h.tau()).unwrap();
            assert!(u.max_abs_diff(&h.frame().c().scale(-I)) < 1e-12);
        }
    }

    #[test]
    fn lifted_frame_shapes() {
        let a = PtHamiltonian::with_alpha(0.3).unwrap().frame();
        let b = PtHamiltonian::with_alpha(-0.2).unwrap().frame();
        assert_eq!(a.lift(None).unwrap().dim(), 4);
        assert_eq!(a.lift(Some(&b)).unwrap().dim(), 4);
        assert!(a.lift(None).unwrap().lift(None).is_err());
    }
}
