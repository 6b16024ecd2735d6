//! Pulse envelopes and the per-qubit Heisenberg coefficient map.
//!
//! A driven qubit's Pauli operators evolve linearly,
//!
//! ```text
//! σ_x(t) = A_x σ_x + A_y σ_y + A_z σ_z
//! σ_y(t) = B_x σ_x + B_y σ_y + B_z σ_z
//! σ_z(t) = D_x σ_x + D_y σ_y + D_z σ_z
//! ```
//!
//! and the 3×3 matrix with rows `A`, `B`, `D` is the [`CoefficientMatrix`].
//! The closed-form `D` row and the intermediate coefficients `C₊`, `C₋`, `C_z`
//! are evaluated for rectangular and resonant exponential pulses. The `A` and
//! `B` rows are then assembled in one of two ways:
//!
//! * [`Mode::Literal`] takes the closed-form `A`/`B` relations term by term,
//!   which make `B_y` and `B_z` imaginary.
//! * [`Mode::Unitary`] completes the map to the rotation generated by the
//!   rotating-frame Hamiltonian. Its third row is the same `D` row.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type Rotation3 = [[f64; 3]; 3];

/// Which completion of the coefficient map to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    Literal,
    #[default]
    Unitary,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Literal => "literal",
            Mode::Unitary => "unitary",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "literal" => Ok(Mode::Literal),
            "unitary" => Ok(Mode::Unitary),
            other => Err(format!("unknown mode `{other}` (expected literal or unitary)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PulseShape {
    Rectangular,
    Exponential,
    None,
}

/// Drive applied to one qubit.
///
/// `omega0` and `delta` share the same inverse-time unit; `duration` is only
/// read for rectangular pulses and `gamma_p` only for exponential ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    pub shape: PulseShape,
    pub omega0: f64,
    pub delta: f64,
    pub duration: f64,
    pub gamma_p: f64,
}

impl PulseSpec {
    pub fn rectangular(omega0: f64, delta: f64, duration: f64) -> Self {
        Self { shape: PulseShape::Rectangular, omega0, delta, duration, gamma_p: 0.0 }
    }

    /// Resonant exponential pulse `Ω₀ e^{−γ_p t}`.
    pub fn exponential(omega0: f64, gamma_p: f64) -> Self {
        Self { shape: PulseShape::Exponential, omega0, delta: 0.0, duration: 0.0, gamma_p }
    }

    pub fn none() -> Self {
        Self { shape: PulseShape::None, omega0: 0.0, delta: 0.0, duration: 0.0, gamma_p: 0.0 }
    }

    /// Checks the parameter invariants for the pulse's shape.
    ///
    /// A nonzero detuning on an exponential pulse is reported as
    /// [`Error::ResonanceRequired`].
    pub fn validate(&self) -> Result<()> {
        let finite = [self.omega0, self.delta, self.duration, self.gamma_p].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidPulse("parameters must be finite".into()));
        }
        match self.shape {
            PulseShape::None => Ok(()),
            _ if self.omega0 < 0.0 => Err(Error::InvalidPulse(format!("omega0 = {} < 0", self.omega0))),
            PulseShape::Rectangular if self.duration <= 0.0 => {
                Err(Error::InvalidPulse(format!("duration = {} must be positive", self.duration)))
            }
            PulseShape::Exponential if self.gamma_p <= 0.0 => {
                Err(Error::InvalidPulse(format!("gamma_p = {} must be positive", self.gamma_p)))
            }
            PulseShape::Exponential if self.delta != 0.0 => Err(Error::ResonanceRequired { delta: self.delta }),
            _ => Ok(()),
        }
    }

    /// Generalized Rabi frequency `Ω₁ = √(Ω₀² + Δ²)`.
    pub fn generalized_rabi(&self) -> f64 {
        self.omega0.hypot(self.delta)
    }

    /// Accumulated rotation angle of a resonant exponential pulse,
    /// `λ(t) = (Ω₀/γ_p)(1 − e^{−γ_p t})`.
    pub fn exp_angle(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        (self.omega0 / self.gamma_p) * -(-self.gamma_p * t).exp_m1()
    }

    /// Duration of a rectangular pulse with area parameter `n = Ω₀T/2π`.
    pub fn duration_for_area(omega0: f64, n: f64) -> f64 {
        TAU * n / omega0
    }
}

/// Pulse shape `f(t)`, so that the instantaneous Rabi frequency is `Ω₀ f(t)`.
pub fn envelope(p: &PulseSpec, t: f64) -> f64 {
    match p.shape {
        PulseShape::Rectangular if (0.0..=p.duration).contains(&t) => 1.0,
        PulseShape::Exponential if t >= 0.0 => (-p.gamma_p * t).exp(),
        _ => 0.0,
    }
}

/// The `C₊`, `C₋`, `C_z` coefficients feeding the literal `A`/`B` relations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntermediateCoefficients {
    pub c_plus: C64,
    pub c_minus: C64,
    pub c_z: C64,
}

impl IntermediateCoefficients {
    /// Rectangular-pulse coefficients at time `t`, term by term.
    pub fn rectangular(omega0: f64, delta: f64, t: f64) -> Self {
        let w1 = omega0.hypot(delta);
        if w1 == 0.0 {
            return Self::identity();
        }
        let (sin, cos) = (w1 * t).sin_cos();
        let w1_sq = w1 * w1;
        let ratio_sq = (omega0 / w1).powi(2);
        Self {
            c_plus: C64::new(0.5 * (ratio_sq + (delta * delta + w1_sq) / w1_sq * cos), delta / w1 * sin),
            c_minus: C64::new(0.5 * ratio_sq * (1.0 - cos), 0.0),
            c_z: C64::new(delta * omega0 / w1_sq * (1.0 - cos), -omega0 / w1 * sin),
        }
    }

    /// Resonant exponential-pulse coefficients for rotation angle `lambda`.
    pub fn exponential(lambda: f64) -> Self {
        let (sin, cos) = lambda.sin_cos();
        Self {
            c_plus: C64::new(0.5 * (1.0 + cos), 0.0),
            c_minus: C64::new(0.5 * (1.0 - cos), 0.0),
            c_z: C64::new(0.0, -sin),
        }
    }

    fn identity() -> Self {
        Self { c_plus: C64::new(1.0, 0.0), c_minus: C64::new(0.0, 0.0), c_z: C64::new(0.0, 0.0) }
    }

    /// `A` and `B` rows from the closed-form relations, reading "c.c." as the
    /// complex conjugate of the preceding bracket:
    ///
    /// ```text
    /// A_x = ½[C₊ + C₋ + c.c.]     A_y = (i/2)[C₊ − C₋ − c.c.]     A_z = ½(C_z + c.c.)
    /// B_x = −(i/2)[C₊ + C₋ − c.c.]   B_y = i B_x                  B_z = −i A_z
    /// ```
    pub fn literal_rows(&self) -> ([C64; 3], [C64; 3]) {
        let i = C64::i();
        let sum = self.c_plus + self.c_minus;
        let diff = self.c_plus - self.c_minus;
        let a_x = 0.5 * (sum + sum.conj());
        let a_y = 0.5 * i * (diff - diff.conj());
        let a_z = 0.5 * (self.c_z + self.c_z.conj());
        let b_x = -0.5 * i * (sum - sum.conj());
        let b_y = i * b_x;
        let b_z = -i * a_z;
        ([a_x, a_y, a_z], [b_x, b_y, b_z])
    }
}

/// Rows `A`, `B`, `D` of the Heisenberg map for one qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientMatrix {
    pub mode: Mode,
    pub a_row: [C64; 3],
    pub b_row: [C64; 3],
    pub d_row: [C64; 3],
}

impl CoefficientMatrix {
    pub fn identity(mode: Mode) -> Self {
        Self::from_real(mode, &IDENTITY3)
    }

    pub fn from_real(mode: Mode, m: &Rotation3) -> Self {
        let row = |r: &[f64; 3]| r.map(|v| C64::new(v, 0.0));
        Self { mode, a_row: row(&m[0]), b_row: row(&m[1]), d_row: row(&m[2]) }
    }

    pub fn rows(&self) -> [[C64; 3]; 3] {
        [self.a_row, self.b_row, self.d_row]
    }

    pub fn real_part(&self) -> Rotation3 {
        self.rows().map(|r| r.map(|z| z.re))
    }

    /// Largest imaginary magnitude over all nine entries.
    pub fn max_imag(&self) -> f64 {
        self.rows().iter().flatten().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.rows().iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Determinant of the (complex) 3×3 matrix.
    pub fn determinant(&self) -> C64 {
        let [a, b, d] = self.rows();
        a[0] * (b[1] * d[2] - b[2] * d[1]) - a[1] * (b[0] * d[2] - b[2] * d[0]) + a[2] * (b[0] * d[1] - b[1] * d[0])
    }

    /// Largest entry of `|MᵀM − I|`, using real parts.
    pub fn orthogonality_error(&self) -> f64 {
        let m = self.real_part();
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| m[k][i] * m[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

pub const IDENTITY3: Rotation3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

/// Active rotation by `angle` about the unit vector `axis` (Rodrigues form).
pub fn axis_angle_rotation(axis: [f64; 3], angle: f64) -> Rotation3 {
    let (s, c) = angle.sin_cos();
    let k = 1.0 - c;
    let [x, y, z] = axis;
    [
        [c + k * x * x, k * x * y - s * z, k * x * z + s * y],
        [k * y * x + s * z, c + k * y * y, k * y * z - s * x],
        [k * z * x - s * y, k * z * y + s * x, c + k * z * z],
    ]
}

/// Published closed-form `D` row of a rectangular pulse, in a form that stays
/// finite at `Ω₀ = 0`.
pub fn rect_d_row(omega0: f64, delta: f64, t: f64) -> [f64; 3] {
    let w1 = omega0.hypot(delta);
    if w1 == 0.0 {
        return [0.0, 0.0, 1.0];
    }
    let (sin, cos) = (w1 * t).sin_cos();
    let w1_sq = w1 * w1;
    [delta * omega0 / w1_sq * (1.0 - cos), omega0 / w1 * sin, (omega0 * omega0 * cos + delta * delta) / w1_sq]
}

/// Published closed-form `D` row of a resonant exponential pulse.
pub fn exp_d_row(lambda: f64) -> [f64; 3] {
    let (sin, cos) = lambda.sin_cos();
    [0.0, sin, cos]
}

/// Coefficient map of a rectangular pulse at `t ∈ [0, T]`.
pub fn rect_coefficients(p: &PulseSpec, t: f64, mode: Mode) -> Result<CoefficientMatrix> {
    if p.shape != PulseShape::Rectangular {
        return Err(Error::InvalidPulse(format!("expected a rectangular pulse, got {:?}", p.shape)));
    }
    p.validate()?;
    if !(0.0..=p.duration).contains(&t) {
        return Err(Error::OutOfWindow { t, duration: p.duration });
    }
    let d_row = rect_d_row(p.omega0, p.delta, t).map(|v| C64::new(v, 0.0));
    Ok(match mode {
        Mode::Literal => {
            let (a_row, b_row) = IntermediateCoefficients::rectangular(p.omega0, p.delta, t).literal_rows();
            CoefficientMatrix { mode, a_row, b_row, d_row }
        }
        Mode::Unitary => {
            let w1 = p.generalized_rabi();
            let rot =
                if w1 == 0.0 { IDENTITY3 } else { axis_angle_rotation([p.omega0 / w1, 0.0, p.delta / w1], w1 * t) };
            let mut m = CoefficientMatrix::from_real(mode, &rot);
            m.d_row = d_row;
            m
        }
    })
}

/// Coefficient map of a resonant exponential pulse at `t ≥ 0`.
pub fn exp_coefficients(p: &PulseSpec, t: f64, mode: Mode) -> Result<CoefficientMatrix> {
    if p.shape != PulseShape::Exponential {
        return Err(Error::InvalidPulse(format!("expected an exponential pulse, got {:?}", p.shape)));
    }
    p.validate()?;
    if !t.is_finite() || t < 0.0 {
        return Err(Error::OutOfWindow { t, duration: f64::INFINITY });
    }
    let lambda = p.exp_angle(t);
    let d_row = exp_d_row(lambda).map(|v| C64::new(v, 0.0));
    Ok(match mode {
        Mode::Literal => {
            let (a_row, b_row) = IntermediateCoefficients::exponential(lambda).literal_rows();
            CoefficientMatrix { mode, a_row, b_row, d_row }
        }
        Mode::Unitary => {
            let mut m = CoefficientMatrix::from_real(mode, &axis_angle_rotation([1.0, 0.0, 0.0], lambda));
            m.d_row = d_row;
            m
        }
    })
}

/// An undriven qubit is static in its rotating frame.
pub fn undriven_coefficients(mode: Mode) -> CoefficientMatrix {
    CoefficientMatrix::identity(mode)
}

/// Dispatches on the pulse shape.
pub fn coefficients(p: &PulseSpec, t: f64, mode: Mode) -> Result<CoefficientMatrix> {
    match p.shape {
        PulseShape::Rectangular => rect_coefficients(p, t, mode),
        PulseShape::Exponential => exp_coefficients(p, t, mode),
        PulseShape::None => Ok(undriven_coefficients(mode)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn assert_real_matrix(m: &CoefficientMatrix, expected: &Rotation3, tol: f64) {
        let got = m.real_part();
        for i in 0..3 {
            for j in 0..3 {
                assert!((got[i][j] - expected[i][j]).abs() <= tol, "entry ({i},{j}): {got:?} vs {expected:?}");
            }
        }
        assert!(m.max_imag() <= tol);
    }

    /// Matrix exponential of `angle·[n]×` by scaling and squaring a Taylor series.
    fn expm_generator(axis: [f64; 3], angle: f64) -> Rotation3 {
        let [x, y, z] = axis;
        let k = [[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]];
        let squarings = 10;
        let h = angle / f64::from(1 << squarings);
        let mut term = IDENTITY3;
        let mut sum = IDENTITY3;
        for order in 1..30 {
            let mut next = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    next[i][j] = (0..3).map(|l| term[i][l] * k[l][j]).sum::<f64>() * h / order as f64;
                }
            }
            term = next;
            for i in 0..3 {
                for j in 0..3 {
                    sum[i][j] += term[i][j];
                }
            }
        }
        for _ in 0..squarings {
            let mut sq = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    sq[i][j] = (0..3).map(|l| sum[i][l] * sum[l][j]).sum();
                }
            }
            sum = sq;
        }
        sum
    }

    #[test]
    fn envelope_shapes() {
        assert_eq!(envelope(&PulseSpec::rectangular(1.0, 0.0, 2.0), 1.0), 1.0);
        assert_eq!(envelope(&PulseSpec::rectangular(1.0, 0.0, 2.0), 2.5), 0.0);
        assert_eq!(envelope(&PulseSpec::rectangular(1.0, 0.0, 2.0), -0.1), 0.0);
        assert_eq!(envelope(&PulseSpec::exponential(1.0, 1.0), 0.0), 1.0);
        assert!((envelope(&PulseSpec::exponential(1.0, 2.0), 1.0) - (-2.0_f64).exp()).abs() < 1e-16);
        assert!((envelope(&PulseSpec::exponential(1.0, 2.0), 1.0) - 0.135335).abs() < 1e-6);
        assert_eq!(envelope(&PulseSpec::exponential(1.0, 2.0), -1.0), 0.0);
        assert_eq!(envelope(&PulseSpec::none(), 0.5), 0.0);
    }

    #[test]
    fn full_rabi_cycle_is_identity() {
        let p = PulseSpec::rectangular(1.0, 0.0, 10.0);
        let m = rect_coefficients(&p, TAU, Mode::Unitary).unwrap();
        assert_real_matrix(&m, &IDENTITY3, 1e-14);
    }

    #[test]
    fn quarter_cycle_d_row() {
        let p = PulseSpec::rectangular(1.0, 0.0, 10.0);
        for mode in [Mode::Literal, Mode::Unitary] {
            let m = rect_coefficients(&p, FRAC_PI_2, mode).unwrap();
            let d = m.d_row.map(|z| z.re);
            assert!((d[0]).abs() < 1e-15 && (d[1] - 1.0).abs() < 1e-15 && d[2].abs() < 1e-15, "{d:?}");
        }
    }

    #[test]
    fn detuned_half_turn_matches_generator_exponential() {
        // Δ = Ω₀ = 1: axis (1,0,1)/√2, Ω₁t = π. The Taylor/squaring oracle
        // (and a LAPACK expm) give [[0,0,1],[0,-1,0],[1,0,0]].
        let w1 = 2.0_f64.sqrt();
        let p = PulseSpec::rectangular(1.0, 1.0, 10.0);
        let m = rect_coefficients(&p, PI / w1, Mode::Unitary).unwrap();
        let axis = [1.0 / w1, 0.0, 1.0 / w1];
        let oracle = expm_generator(axis, PI);
        assert_real_matrix(&m, &oracle, 1e-12);
        assert_real_matrix(&m, &[[0.0, 0.0, 1.0], [0.0, -1.0, 0.0], [1.0, 0.0, 0.0]], 1e-12);
    }

    #[test]
    fn rodrigues_matches_generator_exponential() {
        for &(axis, angle) in &[([0.6, 0.0, 0.8], 1.3), ([0.0, 1.0, 0.0], -2.0), ([0.48, 0.6, 0.64], 5.5)] {
            let a = axis_angle_rotation(axis, angle);
            let b = expm_generator(axis, angle);
            for i in 0..3 {
                for j in 0..3 {
                    assert!((a[i][j] - b[i][j]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn out_of_window_is_an_error() {
        let p = PulseSpec::rectangular(1.0, 0.5, 2.0);
        assert!(matches!(rect_coefficients(&p, 2.1, Mode::Unitary), Err(Error::OutOfWindow { .. })));
        assert!(matches!(rect_coefficients(&p, -0.1, Mode::Literal), Err(Error::OutOfWindow { .. })));
        assert!(rect_coefficients(&p, 2.0, Mode::Unitary).is_ok());
    }

    #[test]
    fn exponential_requires_resonance() {
        let mut p = PulseSpec::exponential(5.0, 1.0);
        p.delta = 0.2;
        assert!(matches!(exp_coefficients(&p, 1.0, Mode::Unitary), Err(Error::ResonanceRequired { .. })));
    }

    #[test]
    fn exponential_at_zero_is_identity() {
        let p = PulseSpec::exponential(5.0, 1.0);
        let m = exp_coefficients(&p, 0.0, Mode::Unitary).unwrap();
        assert_real_matrix(&m, &IDENTITY3, 0.0);
    }

    #[test]
    fn exponential_saturates_at_ratio() {
        let p = PulseSpec::exponential(5.0, 1.0);
        let lambda = p.exp_angle(1e3);
        assert_eq!(lambda, 5.0);
        let m = exp_coefficients(&p, 1e3, Mode::Unitary).unwrap();
        let d = m.d_row.map(|z| z.re);
        assert_eq!(d, [0.0, 5.0_f64.sin(), 5.0_f64.cos()]);
    }

    #[test]
    fn exponential_half_decay_coincidence() {
        // Ω/γ_p = 10 at γ_p t = ln 2 accumulates λ = 10·(1 − ½) = 5, the same
        // angle as Ω/γ_p = 5 at t → ∞.
        let p = PulseSpec::exponential(10.0, 1.0);
        let lambda = p.exp_angle(std::f64::consts::LN_2);
        assert!((lambda - 5.0).abs() < 1e-14);
        let d = exp_coefficients(&p, std::f64::consts::LN_2, Mode::Unitary).unwrap().d_row.map(|z| z.re);
        let saturated = exp_d_row(5.0);
        for k in 0..3 {
            assert!((d[k] - saturated[k]).abs() < 1e-13);
        }
    }

    #[test]
    fn undriven_is_identity() {
        for mode in [Mode::Literal, Mode::Unitary] {
            let m = undriven_coefficients(mode);
            assert_real_matrix(&m, &IDENTITY3, 0.0);
            assert_eq!(m.determinant(), C64::new(1.0, 0.0));
        }
    }

    #[test]
    fn rectangular_intermediates_at_zero() {
        for delta in [0.0, 0.7, -3.0] {
            let c = IntermediateCoefficients::rectangular(1.3, delta, 0.0);
            assert!((c.c_plus - C64::new(1.0, 0.0)).norm() < 1e-15, "{c:?}");
            assert_eq!(c.c_minus, C64::new(0.0, 0.0));
            assert_eq!(c.c_z, C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn literal_b_row_is_imaginary_when_detuned() {
        let p = PulseSpec::rectangular(1.0, 1.0, 10.0);
        let m = rect_coefficients(&p, 1.0, Mode::Literal).unwrap();
        assert!(m.b_row[1].im.abs() > 0.1);
        assert!(m.b_row[1].re.abs() < 1e-15);
    }

    #[test]
    fn literal_b_row_vanishes_on_resonance() {
        let p = PulseSpec::exponential(5.0, 1.0);
        for t in [0.0, 0.3, 2.0] {
            let m = exp_coefficients(&p, t, Mode::Literal).unwrap();
            assert!(m.b_row.iter().all(|z| z.norm() < 1e-15), "{m:?}");
        }
    }

    #[test]
    fn zero_drive_rotates_about_z() {
        let p = PulseSpec::rectangular(0.0, 2.0, 5.0);
        let m = rect_coefficients(&p, 0.4, Mode::Unitary).unwrap();
        assert_real_matrix(&m, &axis_angle_rotation([0.0, 0.0, 1.0], 0.8), 1e-15);
        let still = PulseSpec::rectangular(0.0, 0.0, 5.0);
        let m = rect_coefficients(&still, 0.4, Mode::Literal).unwrap();
        assert!(m.is_finite());
        assert_real_matrix(&m, &[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]], 0.0);
    }

    #[test]
    fn invalid_pulses() {
        assert!(PulseSpec::rectangular(-1.0, 0.0, 1.0).validate().is_err());
        assert!(PulseSpec::rectangular(1.0, 0.0, 0.0).validate().is_err());
        assert!(PulseSpec::exponential(1.0, 0.0).validate().is_err());
        assert!(PulseSpec::rectangular(f64::NAN, 0.0, 1.0).validate().is_err());
        assert!(PulseSpec::none().validate().is_ok());
    }
}
