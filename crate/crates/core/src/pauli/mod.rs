//! Complex matrices, the Pauli basis and small Hermitian eigenproblems.

mod eigen;
mod matrix;

pub use eigen::{hermitian_eigenvalues, jacobi_eigenvalues, HERMITIAN_TOL};
pub use matrix::{kron, ComplexMatrix};
pub use num_complex::Complex64 as C64;

/// Complex scalar used throughout the crate.
pub type ComplexScalar = C64;

const COMMUTATOR_TOL: f64 = 1e-12;

/// The three Pauli matrices plus the 2×2 identity.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliBasis {
    pub sigma_x: ComplexMatrix,
    pub sigma_y: ComplexMatrix,
    pub sigma_z: ComplexMatrix,
    pub identity: ComplexMatrix,
}

impl Default for PauliBasis {
    fn default() -> Self {
        Self { sigma_x: sigma_x(), sigma_y: sigma_y(), sigma_z: sigma_z(), identity: ComplexMatrix::identity(2) }
    }
}

impl PauliBasis {
    /// `[σ_x, σ_y, σ_z]`, indexed by axis.
    pub fn sigmas(&self) -> [&ComplexMatrix; 3] {
        [&self.sigma_x, &self.sigma_y, &self.sigma_z]
    }

    /// Checks the SU(2) algebra on the stored matrices: `[σ_j, σ_k] = 2i ε_jkl σ_l`
    /// for the cyclic pairs and `σ_k² = I`, all within 1e-12.
    pub fn commutator_check(&self) -> bool {
        let two_i = C64::new(0.0, 2.0);
        let [x, y, z] = self.sigmas();
        let cyclic = [(x, y, z), (y, z, x), (z, x, y)];
        let algebra = cyclic.iter().all(|(a, b, c)| a.commutator(b).max_abs_diff(&c.scale(two_i)) <= COMMUTATOR_TOL);
        let involutions = self.sigmas().iter().all(|s| (*s * *s).max_abs_diff(&self.identity) <= COMMUTATOR_TOL);
        algebra && involutions
    }

    /// Raising operator `S₊ = (σ_x + iσ_y)/2`.
    pub fn s_plus(&self) -> ComplexMatrix {
        (&self.sigma_x + &self.sigma_y.scale(C64::i())).scale_real(0.5)
    }

    /// Lowering operator `S₋ = (σ_x − iσ_y)/2`.
    pub fn s_minus(&self) -> ComplexMatrix {
        (&self.sigma_x - &self.sigma_y.scale(C64::i())).scale_real(0.5)
    }

    /// `S_z = σ_z/2`.
    pub fn s_z(&self) -> ComplexMatrix {
        self.sigma_z.scale_real(0.5)
    }
}

pub fn sigma_x() -> ComplexMatrix {
    let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    ComplexMatrix::from_row_major(2, 2, vec![o, l, l, o])
}

pub fn sigma_y() -> ComplexMatrix {
    let o = C64::new(0.0, 0.0);
    ComplexMatrix::from_row_major(2, 2, vec![o, C64::new(0.0, -1.0), C64::new(0.0, 1.0), o])
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&[1.0, -1.0])
}

/// Pauli matrix for axis `k` (0 = x, 1 = y, 2 = z).
pub fn sigma(k: usize) -> ComplexMatrix {
    match k {
        0 => sigma_x(),
        1 => sigma_y(),
        2 => sigma_z(),
        _ => panic!("Pauli axis index {k} out of range"),
    }
}
