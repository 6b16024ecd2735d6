//! Partial transpose and negativity of two-qubit states.
//!
//! Negativity is `E = Σ|μ_i| − 1` over the eigenvalues `μ_i` of the partial
//! transpose. Since `Σμ_i = 1`, this equals twice the magnitude of the
//! negative part of the spectrum: 0 for PPT (separable, for two qubits)
//! states and 1 for a Bell state.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::evolution::{assemble_density, InitialStateClass};
use crate::pauli::{hermitian_eigenvalues, ComplexMatrix, HERMITIAN_TOL};

/// Trace tolerance accepted by [`negativity`].
pub const TRACE_TOL: f64 = 1e-9;
/// Raw negativities below this are reported as exactly zero.
pub const NEGATIVITY_FLOOR: f64 = 1e-12;
/// Smallest eigenvalue still treated as non-negative.
pub const PHYSICALITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityResult {
    /// Partial-transpose spectrum, ascending.
    pub eigenvalues: [f64; 4],
    /// `Σ|μ_i| − 1`, clamped to zero below [`NEGATIVITY_FLOOR`].
    pub value: f64,
    /// Unclamped `Σ|μ_i| − 1`.
    pub raw_value: f64,
    /// Imaginary residue of the evolution that produced the state, if any.
    pub imag_residue: f64,
}

impl NegativityResult {
    pub fn with_residue(mut self, imag_residue: f64) -> Self {
        self.imag_residue = imag_residue;
        self
    }
}

/// Transposes the second qubit's indices: `ρ_{(ij),(kl)} → ρ_{(il),(kj)}`.
pub fn partial_transpose_b(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    rho.require_shape(4, 4, "4x4")?;
    Ok(ComplexMatrix::from_fn(4, 4, |row, col| {
        let (i, j) = (row / 2, row % 2);
        let (k, l) = (col / 2, col % 2);
        rho[(2 * i + l, 2 * k + j)]
    }))
}

pub fn negativity(rho: &ComplexMatrix) -> Result<NegativityResult> {
    rho.require_shape(4, 4, "4x4")?;
    let deviation = rho.hermitian_deviation();
    if deviation.is_nan() || deviation > HERMITIAN_TOL {
        return Err(Error::NonHermitianInput { deviation });
    }
    let trace = rho.trace();
    if (trace - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
        return Err(Error::TraceNotOne { trace: trace.re });
    }
    let eigenvalues = hermitian_eigenvalues(&partial_transpose_b(rho)?)?;
    let raw_value = eigenvalues.iter().map(|m| m.abs()).sum::<f64>() - 1.0;
    let value = if raw_value < NEGATIVITY_FLOOR { 0.0 } else { raw_value };
    Ok(NegativityResult { eigenvalues, value, raw_value, imag_residue: 0.0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WernerClass {
    Entangled,
    Separable,
    Unphysical,
}

/// Classifies the Werner state `¼(I + x Σ σ_k⊗σ_k)` from its computed spectra.
pub fn classify_werner(x: f64) -> WernerClass {
    let rho = assemble_density(&InitialStateClass::Werner(x).state());
    let physical = hermitian_eigenvalues(&rho).map(|ev| ev[0] >= -PHYSICALITY_TOL).unwrap_or(false);
    if !physical {
        return WernerClass::Unphysical;
    }
    match negativity(&rho) {
        Ok(n) if n.value > NEGATIVITY_FLOOR => WernerClass::Entangled,
        Ok(_) => WernerClass::Separable,
        Err(_) => WernerClass::Unphysical,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::CorrelationState;
    use crate::pauli::{kron, sigma_x, sigma_y};

    fn neg(c: [f64; 3]) -> NegativityResult {
        negativity(&assemble_density(&CorrelationState::bell_diagonal(c))).unwrap()
    }

    #[test]
    fn maximally_mixed_is_pt_invariant() {
        let m = ComplexMatrix::identity(4).scale_real(0.25);
        assert_eq!(partial_transpose_b(&m).unwrap(), m);
    }

    #[test]
    fn pt_flips_sigma_y_on_b() {
        let xy = kron(&sigma_x(), &sigma_y());
        assert_eq!(partial_transpose_b(&xy).unwrap(), xy.scale_real(-1.0));
    }

    #[test]
    fn pt_is_an_involution() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| C64::new(i as f64 + 0.5 * j as f64, (i * j) as f64 - 1.0));
        assert_eq!(partial_transpose_b(&partial_transpose_b(&m).unwrap()).unwrap(), m);
    }

    #[test]
    fn singlet_pt_spectrum() {
        let r = neg([-1.0; 3]);
        let expected = [-0.5, 0.5, 0.5, 0.5];
        assert!(r.eigenvalues.iter().zip(&expected).all(|(a, b)| (a - b).abs() < 1e-14), "{r:?}");
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pinned_werner_values() {
        // PT eigenvalue (1 + 3x)/4 for the Werner line; (1 + c1 − c2 + c3)/4
        // is the negative branch for the generalized state.
        assert!((neg([-0.9; 3]).value - 0.85).abs() < 1e-10);
        assert!((neg([-0.9, -0.8, -0.6]).value - 0.65).abs() < 1e-10);
        assert!((neg([-0.9, -0.8, -0.7]).value - 0.70).abs() < 1e-10);
        assert!((neg([-0.5; 3]).value - 0.25).abs() < 1e-10);
        assert!(neg([-1.0 / 3.0; 3]).value.abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_trace_and_non_hermitian() {
        let doubled = ComplexMatrix::identity(4).scale_real(0.5);
        assert!(matches!(negativity(&doubled), Err(Error::TraceNotOne { .. })));
        let mut e = ComplexMatrix::identity(4).scale_real(0.25).entries().to_vec();
        e[1] = C64::new(0.0, 0.3);
        let skew = ComplexMatrix::from_row_major(4, 4, e);
        assert!(matches!(negativity(&skew), Err(Error::NonHermitianInput { .. })));
    }

    #[test]
    fn werner_classes() {
        assert_eq!(classify_werner(-1.0), WernerClass::Entangled);
        assert_eq!(classify_werner(0.0), WernerClass::Separable);
        assert_eq!(classify_werner(-0.5), WernerClass::Entangled);
        assert_eq!(classify_werner(-1.0 / 3.0), WernerClass::Separable);
        assert_eq!(classify_werner(1.0 / 3.0), WernerClass::Separable);
        assert_eq!(classify_werner(0.5), WernerClass::Unphysical);
        assert_eq!(classify_werner(-1.2), WernerClass::Unphysical);
    }
}
