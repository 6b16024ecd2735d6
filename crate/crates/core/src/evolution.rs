//! Two-qubit state evolution under local pulses.
//!
//! States are carried in Fano form: a 3×3 correlation tensor `C_kl` plus two
//! local Bloch vectors, so that
//!
//! ```text
//! ρ = ¼ (I + Σ a_k σ_k⊗I + Σ b_l I⊗σ_l + Σ C_kl σ_k⊗σ_l)
//! ```
//!
//! The analytic route transforms a diagonal initial tensor with the per-qubit
//! coefficient maps `M₁`, `M₂` (rows `A`, `B`, `D`):
//! `C̃_kl = A_k⁽¹⁾A_l⁽²⁾c_xx + B_k⁽¹⁾B_l⁽²⁾c_yy + D_k⁽¹⁾D_l⁽²⁾c_zz`, i.e.
//! `C̃ = M₁ᵀ diag(c) M₂`. This substitutes the Heisenberg-evolved operators
//! `σ(t) = U†σU` into `ρ₀`, which is the Fano tensor of `(U₁⊗U₂)† ρ₀ (U₁⊗U₂)`
//! (see [`conjugate_by_adjoint`]).
//!
//! Two independent oracles back the analytic route: the closed-form 2×2
//! propagator ([`unitary_oracle`]) and a fourth-order Runge–Kutta integration
//! of the rotating-frame Schrödinger equation ([`rk4_oracle`]).

use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::pauli::{kron, sigma, ComplexMatrix};
use crate::pulse::{coefficients, envelope, CoefficientMatrix, Mode, PulseShape, PulseSpec, Rotation3};

/// Default RK4 step in normalized time.
pub const DEFAULT_RK4_STEP: f64 = 1e-3;

/// Two-qubit state in Fano form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationState {
    pub tensor: [[f64; 3]; 3],
    pub bloch_a: [f64; 3],
    pub bloch_b: [f64; 3],
}

impl CorrelationState {
    /// Bell-diagonal state `¼(I + Σ c_k σ_k⊗σ_k)`.
    pub fn bell_diagonal(c: [f64; 3]) -> Self {
        let mut tensor = [[0.0; 3]; 3];
        for k in 0..3 {
            tensor[k][k] = c[k];
        }
        Self { tensor, bloch_a: [0.0; 3], bloch_b: [0.0; 3] }
    }

    /// True for a diagonal tensor with zero Bloch vectors.
    pub fn is_bell_diagonal(&self) -> bool {
        let off_diagonal = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).filter(|(i, j)| i != j);
        off_diagonal.clone().all(|(i, j)| self.tensor[i][j] == 0.0)
            && self.bloch_a == [0.0; 3]
            && self.bloch_b == [0.0; 3]
    }

    pub fn diagonal(&self) -> [f64; 3] {
        [self.tensor[0][0], self.tensor[1][1], self.tensor[2][2]]
    }

    pub fn density(&self) -> ComplexMatrix {
        assemble_density(self)
    }

    /// Largest entrywise difference to `other`, Bloch vectors included.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let t = self.tensor.iter().flatten().zip(other.tensor.iter().flatten());
        let a = self.bloch_a.iter().zip(&other.bloch_a);
        let b = self.bloch_b.iter().zip(&other.bloch_b);
        t.chain(a).chain(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }
}

/// The initial-state families studied in the sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialStateClass {
    /// `c = (−1, −1, −1)`, the singlet `|ψ⁻⟩`.
    BellSinglet,
    /// `c = (x, x, x)`; physical for `x ∈ [−1, 1/3]`.
    Werner(f64),
    GeneralizedWerner([f64; 3]),
}

impl InitialStateClass {
    pub fn correlations(&self) -> [f64; 3] {
        match *self {
            InitialStateClass::BellSinglet => [-1.0; 3],
            InitialStateClass::Werner(x) => [x; 3],
            InitialStateClass::GeneralizedWerner(c) => c,
        }
    }

    pub fn state(&self) -> CorrelationState {
        CorrelationState::bell_diagonal(self.correlations())
    }

    /// Short column label: `bell`, `werner` or `genwerner`.
    pub fn label(&self) -> &'static str {
        match self {
            InitialStateClass::BellSinglet => "bell",
            InitialStateClass::Werner(_) => "werner",
            InitialStateClass::GeneralizedWerner(_) => "genwerner",
        }
    }
}

impl fmt::Display for InitialStateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialStateClass::BellSinglet => f.write_str("bell"),
            InitialStateClass::Werner(x) => write!(f, "werner({x:?})"),
            InitialStateClass::GeneralizedWerner([a, b, c]) => write!(f, "genwerner({a:?}, {b:?}, {c:?})"),
        }
    }
}

impl std::str::FromStr for InitialStateClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(open) => {
                let close = s.rfind(')').filter(|&c| c == s.len() - 1).ok_or_else(|| format!("unbalanced `{s}`"))?;
                let args = s[open + 1..close]
                    .split(',')
                    .map(|a| a.trim().parse::<f64>().map_err(|e| format!("bad number `{}`: {e}", a.trim())))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                (s[..open].trim(), args)
            }
            None => (s, Vec::new()),
        };
        match (name.to_ascii_lowercase().as_str(), args.as_slice()) {
            ("bell", []) => Ok(InitialStateClass::BellSinglet),
            ("werner", [x]) => Ok(InitialStateClass::Werner(*x)),
            ("genwerner", [a, b, c]) => Ok(InitialStateClass::GeneralizedWerner([*a, *b, *c])),
            _ => Err(format!("unrecognized initial state `{s}` (bell, werner(x), genwerner(cxx, cyy, czz))")),
        }
    }
}

/// An evolved state with its literal-mode diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evolved {
    pub state: CorrelationState,
    /// Largest `|Im C̃_kl|` discarded when taking the real part; zero in
    /// Unitary mode.
    pub imag_residue: f64,
}

/// `C̃ = M₁ᵀ diag(c) M₂` for a Bell-diagonal initial state.
pub fn evolve_correlations(c0: &CorrelationState, m1: &CoefficientMatrix, m2: &CoefficientMatrix) -> Result<Evolved> {
    if !c0.is_bell_diagonal() {
        return Err(Error::NonDiagonalInput);
    }
    let c = c0.diagonal();
    let (r1, r2) = (m1.rows(), m2.rows());
    let mut tensor = [[0.0; 3]; 3];
    let mut imag_residue = 0.0_f64;
    for k in 0..3 {
        for l in 0..3 {
            let z: C64 = (0..3).map(|m| r1[m][k] * r2[m][l] * c[m]).sum();
            tensor[k][l] = z.re;
            imag_residue = imag_residue.max(z.im.abs());
        }
    }
    Ok(Evolved { state: CorrelationState { tensor, bloch_a: [0.0; 3], bloch_b: [0.0; 3] }, imag_residue })
}

fn pauli_products() -> &'static [[ComplexMatrix; 3]; 3] {
    static PRODUCTS: OnceLock<[[ComplexMatrix; 3]; 3]> = OnceLock::new();
    PRODUCTS.get_or_init(|| std::array::from_fn(|k| std::array::from_fn(|l| kron(&sigma(k), &sigma(l)))))
}

fn local_paulis() -> &'static [[ComplexMatrix; 3]; 2] {
    static LOCAL: OnceLock<[[ComplexMatrix; 3]; 2]> = OnceLock::new();
    let id = ComplexMatrix::identity(2);
    LOCAL.get_or_init(|| [std::array::from_fn(|k| kron(&sigma(k), &id)), std::array::from_fn(|l| kron(&id, &sigma(l)))])
}

/// Builds the 4×4 density matrix from Fano coefficients.
pub fn assemble_density(c: &CorrelationState) -> ComplexMatrix {
    let products = pauli_products();
    let [on_a, on_b] = local_paulis();
    let mut entries = vec![C64::new(0.0, 0.0); 16];
    for i in 0..4 {
        entries[i * 5] = C64::new(1.0, 0.0);
    }
    let mut accumulate = |m: &ComplexMatrix, w: f64| {
        if w != 0.0 {
            for (e, z) in entries.iter_mut().zip(m.entries()) {
                *e += z * w;
            }
        }
    };
    for k in 0..3 {
        accumulate(&on_a[k], c.bloch_a[k]);
        accumulate(&on_b[k], c.bloch_b[k]);
        for (product, weight) in products[k].iter().zip(c.tensor[k]) {
            accumulate(product, weight);
        }
    }
    ComplexMatrix::from_row_major(4, 4, entries).scale_real(0.25)
}

fn trace_against(rho: &ComplexMatrix, op: &ComplexMatrix) -> f64 {
    // tr(ρ·op) without forming the product.
    let mut sum = C64::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            sum += rho[(i, j)] * op[(j, i)];
        }
    }
    sum.re
}

/// Fano coefficients of a 4×4 density matrix: `C_kl = tr(ρ σ_k⊗σ_l)`,
/// `a_k = tr(ρ σ_k⊗I)`, `b_l = tr(ρ I⊗σ_l)`.
pub fn extract_correlations(rho: &ComplexMatrix) -> Result<CorrelationState> {
    rho.require_shape(4, 4, "4x4")?;
    let products = pauli_products();
    let [on_a, on_b] = local_paulis();
    Ok(CorrelationState {
        tensor: std::array::from_fn(|k| std::array::from_fn(|l| trace_against(rho, &products[k][l]))),
        bloch_a: std::array::from_fn(|k| trace_against(rho, &on_a[k])),
        bloch_b: std::array::from_fn(|l| trace_against(rho, &on_b[l])),
    })
}

/// `(U_a⊗U_b)† ρ (U_a⊗U_b)`: the state obtained by substituting the
/// Heisenberg-evolved operators into `ρ`.
pub fn conjugate_by_adjoint(rho: &ComplexMatrix, ua: &ComplexMatrix, ub: &ComplexMatrix) -> ComplexMatrix {
    let u = kron(ua, ub);
    &(&u.adjoint() * rho) * &u
}

/// `U ρ U†`.
pub fn conjugate(rho: &ComplexMatrix, u: &ComplexMatrix) -> ComplexMatrix {
    &(u * rho) * &u.adjoint()
}

/// Heisenberg map of a single-qubit unitary: `U†σ_kU = Σ_l M_kl σ_l`, with
/// `M_kl = ½ Re tr(U†σ_kU σ_l)`.
pub fn heisenberg_map(u: &ComplexMatrix) -> Rotation3 {
    let sigmas = [sigma(0), sigma(1), sigma(2)];
    let ud = u.adjoint();
    std::array::from_fn(|k| {
        let evolved = &(&ud * &sigmas[k]) * u;
        std::array::from_fn(|l| 0.5 * (&evolved * &sigmas[l]).trace().re)
    })
}

/// `exp(−iθ n·σ/2) = cos(θ/2) I − i sin(θ/2) n·σ` for a unit vector `n`.
fn spin_rotation(axis: [f64; 3], angle: f64) -> ComplexMatrix {
    let (s, c) = (0.5 * angle).sin_cos();
    let [x, y, z] = axis;
    ComplexMatrix::from_row_major(
        2,
        2,
        vec![C64::new(c, -s * z), C64::new(-s * y, -s * x), C64::new(s * y, -s * x), C64::new(c, s * z)],
    )
}

/// Exact rotating-frame propagator `U(t)` for one qubit, solving
/// `dU/dt = −i H(t) U` with `H(t) = (Δσ_z + Ω₀ f(t) σ_x)/2` and `U(0) = I`.
///
/// Past the end of a rectangular pulse the qubit keeps precessing at the
/// detuning.
pub fn unitary_oracle(p: &PulseSpec, t: f64) -> Result<ComplexMatrix> {
    p.validate()?;
    if !t.is_finite() || t < 0.0 {
        return Err(Error::OutOfWindow { t, duration: p.duration });
    }
    Ok(match p.shape {
        PulseShape::None => ComplexMatrix::identity(2),
        PulseShape::Exponential => spin_rotation([1.0, 0.0, 0.0], p.exp_angle(t)),
        PulseShape::Rectangular => {
            let w1 = p.generalized_rabi();
            let driven_time = t.min(p.duration);
            let driven = if w1 == 0.0 {
                ComplexMatrix::identity(2)
            } else {
                spin_rotation([p.omega0 / w1, 0.0, p.delta / w1], w1 * driven_time)
            };
            if t > p.duration {
                let free = spin_rotation([0.0, 0.0, 1.0], p.delta * (t - p.duration));
                &free * &driven
            } else {
                driven
            }
        }
    })
}

type Mat2 = [[C64; 2]; 2];

fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

fn mat2_axpy(a: &Mat2, s: f64, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] + b[i][j] * s))
}

/// `−iH(t)` for the rotating-frame Hamiltonian.
fn generator(p: &PulseSpec, t: f64) -> Mat2 {
    let rabi = p.omega0 * envelope(p, t);
    let zero = C64::new(0.0, 0.0);
    let mut h = [[zero; 2]; 2];
    h[0][0] = C64::new(0.0, -0.5 * p.delta);
    h[1][1] = C64::new(0.0, 0.5 * p.delta);
    h[0][1] = C64::new(0.0, -0.5 * rabi);
    h[1][0] = C64::new(0.0, -0.5 * rabi);
    h
}

fn rk4_segment(p: &PulseSpec, mut u: Mat2, t0: f64, t1: f64, max_step: f64) -> Mat2 {
    let span = t1 - t0;
    if span <= 0.0 {
        return u;
    }
    let n = (span / max_step).ceil().max(1.0) as usize;
    let h = span / n as f64;
    let sample = |t: f64| generator(p, t);
    for i in 0..n {
        let t = t0 + h * i as f64;
        let t_mid = t + 0.5 * h;
        let t_next = if i + 1 == n { t1 } else { t + h };
        let g0 = sample(t);
        let gm = sample(t_mid);
        let g1 = sample(t_next);
        let k1 = mat2_mul(&g0, &u);
        let k2 = mat2_mul(&gm, &mat2_axpy(&u, 0.5 * h, &k1));
        let k3 = mat2_mul(&gm, &mat2_axpy(&u, 0.5 * h, &k2));
        let k4 = mat2_mul(&g1, &mat2_axpy(&u, h, &k3));
        u = std::array::from_fn(|r| {
            std::array::from_fn(|c| u[r][c] + (k1[r][c] + 2.0 * k2[r][c] + 2.0 * k3[r][c] + k4[r][c]) * (h / 6.0))
        });
    }
    u
}

/// Classical RK4 integration of `dU/dt = −iH(t)U` from `U(0) = I` to `t_end`.
///
/// The span is cut into uniform steps no longer than `step`. A rectangular
/// pulse that ends before `t_end` is integrated as two segments so the
/// envelope edge falls on a step boundary.
pub fn rk4_oracle(p: &PulseSpec, t_end: f64, step: f64) -> Result<ComplexMatrix> {
    p.validate()?;
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::InvalidConfig(format!("RK4 step must be positive, got {step}")));
    }
    if !t_end.is_finite() || t_end < 0.0 {
        return Err(Error::OutOfWindow { t: t_end, duration: f64::INFINITY });
    }
    if t_end > 0.0 && step > t_end / 10.0 {
        return Err(Error::StepTooLarge { step, t_end });
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let mut u = [[one, zero], [zero, one]];
    if p.shape == PulseShape::Rectangular && p.duration < t_end {
        u = rk4_segment(p, u, 0.0, p.duration, step);
        // Past the window only the detuning acts.
        let free = PulseSpec { shape: PulseShape::None, ..*p };
        u = rk4_segment(&free, u, p.duration, t_end, step);
    } else {
        u = rk4_segment(p, u, 0.0, t_end, step);
    }
    Ok(ComplexMatrix::from_row_major(2, 2, vec![u[0][0], u[0][1], u[1][0], u[1][1]]))
}

/// Evolves a Bell-diagonal state with one pulse per qubit, evaluated at `t`.
pub fn evolve_state(
    c0: &CorrelationState,
    pulse_a: &PulseSpec,
    pulse_b: &PulseSpec,
    t: f64,
    mode: Mode,
) -> Result<Evolved> {
    let m1 = coefficients(pulse_a, t, mode)?;
    let m2 = coefficients(pulse_b, t, mode)?;
    evolve_correlations(c0, &m1, &m2)
}
