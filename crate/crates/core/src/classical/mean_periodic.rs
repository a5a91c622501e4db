//! Convolution and Fourier–Carleman identities for `g₀`, which solves
//! `(i d/dt)³[(i d/dt)² − 1] f = 0`.

use num_complex::Complex64;

use crate::quad;
use crate::screw::{eval_screw, laplace_check, ScrewFunctionData};
use crate::spectra::example_q0;

/// Half-width of the quadrature window; `φ` is below `e^{−90}` outside it.
pub const QUAD_RANGE: f64 = 10.0;
const PANELS: usize = 80;

/// `φ(t) = (i d/dt)³[(i d/dt)² − 1] e^{−t²} = −4it(8t⁴ − 38t² + 27)e^{−t²}`.
pub fn annihilator(t: f64) -> Complex64 {
    let p = t * (8.0 * t.powi(4) - 38.0 * t * t + 27.0);
    Complex64::new(0.0, -4.0 * p * (-t * t).exp())
}

/// `φ̂(z) = √π e^{−z²/4} z³(z² − 1)`.
pub fn annihilator_hat(z: Complex64) -> Complex64 {
    std::f64::consts::PI.sqrt() * (-z * z / 4.0).exp() * z.powu(3) * (z * z - 1.0)
}

/// `(g₀ ∗ φ)(t)` by quadrature over the window.
pub fn full_convolution(g: &ScrewFunctionData, t: f64) -> Complex64 {
    quad::gauss_legendre(|u| eval_screw(g, t - u) * annihilator(u), -QUAD_RANGE, QUAD_RANGE, PANELS)
}

/// `(g⁺ ∗ φ)(t) = ∫_{u ≤ t} g(t − u)φ(u) du`.
pub fn half_convolution(g: &ScrewFunctionData, t: f64) -> Complex64 {
    let hi = t.min(QUAD_RANGE);
    if hi <= -QUAD_RANGE {
        return Complex64::new(0.0, 0.0);
    }
    let panels = ((hi + QUAD_RANGE) / (2.0 * QUAD_RANGE) * PANELS as f64).ceil().max(1.0) as usize;
    quad::gauss_legendre(|u| eval_screw(g, t - u) * annihilator(u), -QUAD_RANGE, hi, panels)
}

/// `(g₀⁺ ∗ φ)(t) = −i(8t² − 3)e^{−t²}`.
pub fn half_convolution_closed(t: f64) -> Complex64 {
    Complex64::new(0.0, -(8.0 * t * t - 3.0) * (-t * t).exp())
}

/// `FC(g)(z) = (g⁺ ∗ φ)^(z) / φ̂(z)`, with the outer Fourier integral taken
/// over the window.
pub fn fourier_carleman(g: &ScrewFunctionData, z: Complex64) -> Complex64 {
    let num = quad::gauss_legendre(
        |t| half_convolution(g, t) * (Complex64::i() * z * t).exp(),
        -QUAD_RANGE,
        QUAD_RANGE,
        PANELS,
    );
    num / annihilator_hat(z)
}

/// `−(i/z²)Q₀(z)`.
pub fn fourier_carleman_closed(z: Complex64) -> Complex64 {
    -Complex64::i() * example_q0().eval_c64(z) / (z * z)
}

/// Residuals of the mean-periodicity identities for `g₀`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanPeriodicReport {
    /// `max |(g₀ ∗ φ)(t)|` over the grid.
    pub annihilation: f64,
    /// `max |φ̂(z) − √π e^{−z²/4}z³(z² − 1)|` over sample points.
    pub fourier: f64,
    /// `max |(g₀⁺ ∗ φ)(t) + i(8t² − 3)e^{−t²}|` over the grid.
    pub half_convolution: f64,
    /// `|FC(g₀)(2i) + (i/z²)Q₀(2i)|`.
    pub fourier_carleman: f64,
    /// `|∫₀^∞ g₀(t)e^{izt} dt + (i/z²)Q₀(z)|` at `z = 2i`.
    pub laplace: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Sample points for the transform residual.
pub const FOURIER_SAMPLES: [(f64, f64); 5] = [(0.0, 0.0), (0.5, 0.0), (1.5, 0.3), (-2.0, 1.0), (0.0, 2.0)];

pub fn mean_periodic_checks(grid: &[f64], tol: f64) -> MeanPeriodicReport {
    let g = ScrewFunctionData::example_g0();
    let max = |it: &mut dyn Iterator<Item = f64>| it.fold(0.0_f64, f64::max);
    let annihilation = max(&mut grid.iter().map(|&t| full_convolution(&g, t).norm()));
    let half = max(&mut grid.iter().map(|&t| (half_convolution(&g, t) - half_convolution_closed(t)).norm()));
    let fourier = max(&mut FOURIER_SAMPLES.iter().map(|&(x, y)| {
        let z = Complex64::new(x, y);
        let q = quad::gauss_legendre(|t| annihilator(t) * (Complex64::i() * z * t).exp(), -QUAD_RANGE, QUAD_RANGE, PANELS);
        (q - annihilator_hat(z)).norm()
    }));
    let z = Complex64::new(0.0, 2.0);
    let fc = (fourier_carleman(&g, z) - fourier_carleman_closed(z)).norm();
    let laplace = laplace_check(&g, &example_q0(), z, 40.0).unwrap_or(f64::INFINITY);
    let pass = [annihilation, fourier, half, fc, laplace].iter().all(|r| *r < tol);
    MeanPeriodicReport {
        annihilation,
        fourier,
        half_convolution: half,
        fourier_carleman: fc,
        laplace,
        tol,
        pass,
    }
}
