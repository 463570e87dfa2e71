//! Self-convergence of the walk as the lattice spacing ε shrinks.
//!
//! A study fixes the physical mass `m`, the angle `ρ`, the final time `T`
//! and the physical domain, then halves ε level by level with `R = m·ε`,
//! `n·ε` and `t·ε` held fixed. Each pair of consecutive levels is compared
//! on the physical sites they share, and the order is the least-squares
//! slope of `log(error)` against `log(ε)`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::coin::{solve_coefficients, WalkParameters};
use crate::error::{Result, WalkError};
use crate::evolve::evolve_steps;
use crate::lattice::{probability_profile, Spinor, SpinorField};

/// Physical length targeted by the coarsest lattice.
pub const DEFAULT_DOMAIN_LENGTH: f64 = 4.0;

/// Concentration of the periodic wavepacket `exp(κ(cos θ − 1))`.
pub const PACKET_CONCENTRATION: f64 = 4.0;

/// Pairwise errors at or below this are treated as exact agreement.
pub const EXACT_AGREEMENT: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementLevel {
    pub epsilon: f64,
    pub n: usize,
    pub steps: usize,
    pub mass: f64,
    /// Probability per unit length at sites `x_j = j·ε`.
    pub final_density: Vec<f64>,
    pub total_probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementStudy {
    pub m: f64,
    pub rho: f64,
    pub final_time: f64,
    pub domain_length: f64,
    pub levels: Vec<RefinementLevel>,
    /// `pairwise_errors[l]` compares level `l` with level `l + 1`.
    pub pairwise_errors: Vec<f64>,
    /// `None` when every pairwise error is at rounding level.
    pub estimated_order: Option<f64>,
    pub fit_r_squared: Option<f64>,
}

/// Smooth periodic wavepacket centred in the domain, normalized to unit
/// probability on the lattice.
pub fn smooth_wavepacket(n: usize, epsilon: f64) -> Result<SpinorField> {
    let length = n as f64 * epsilon;
    let shape = |j: usize| {
        let theta = TAU * (j as f64 * epsilon - 0.5 * length) / length;
        (PACKET_CONCENTRATION * (theta.cos() - 1.0)).exp()
    };
    let mut field = SpinorField::from_fn(n, |j| {
        let a = shape(j);
        Spinor::new(Complex64::new(a, 0.0), Complex64::new(0.0, 0.5 * a))
    })?;
    let scale = 1.0 / field.total_probability().sqrt();
    for s in field.sites_mut() {
        s.plus *= scale;
        s.minus *= scale;
    }
    Ok(field)
}

/// A single Fourier mode `e^{2πij/n}` on both components.
pub fn fourier_mode_field(n: usize) -> Result<SpinorField> {
    SpinorField::from_fn(n, |j| {
        let z = Complex64::from_polar(1.0, TAU * j as f64 / n as f64);
        Spinor::new(z, z)
    })
}

/// `max_x |R·sin ρ·(ψ₊(x−1) − ψ₊(x))|`: the error of replacing the shifted
/// moving-flip term by its unshifted value.
pub fn continuum_residual(params: &WalkParameters, field: &SpinorField) -> f64 {
    let coupling = params.mass_sin();
    (0..field.len() as isize)
        .map(|x| (coupling * (field.at(x - 1).plus - field.at(x).plus)).norm())
        .fold(0.0, f64::max)
}

/// Least-squares line through `(ln x, ln y)`; returns `(slope, R²)`.
pub fn fit_log_slope(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    (slope, r2)
}

pub fn run_refinement(m: f64, rho: f64, final_time: f64, base_n: usize, num_levels: usize) -> Result<RefinementStudy> {
    run_refinement_on(m, rho, final_time, base_n, num_levels, DEFAULT_DOMAIN_LENGTH)
}

pub fn run_refinement_on(
    m: f64,
    rho: f64,
    final_time: f64,
    base_n: usize,
    num_levels: usize,
    domain_length: f64,
) -> Result<RefinementStudy> {
    if num_levels < 3 {
        return Err(WalkError::Parameter(format!("need at least 3 levels, got {num_levels}")));
    }
    if base_n < 4 {
        return Err(WalkError::Parameter(format!("base lattice too small: {base_n}")));
    }
    if !(final_time > 0.0 && domain_length > 0.0 && m >= 0.0) {
        return Err(WalkError::Parameter(
            "mass must be non-negative, final time and domain length positive".into(),
        ));
    }

    // snap ε₀ so that T/ε₀ is an integer; the realized domain is base_n·ε₀
    let base_steps = ((final_time * base_n as f64 / domain_length).round() as usize).max(1);
    let eps0 = final_time / base_steps as f64;

    let mut levels = Vec::with_capacity(num_levels);
    for l in 0..num_levels {
        let factor = 1usize << l;
        let epsilon = eps0 / factor as f64;
        let n = base_n * factor;
        let steps = base_steps * factor;
        let mass = m * epsilon;
        if mass > 1.0 {
            return Err(WalkError::Parameter(format!(
                "R = m·ε = {mass} exceeds 1 at level {l} (ε = {epsilon})"
            )));
        }
        let params = WalkParameters::new(mass, rho)?;
        let coin = solve_coefficients(&params)?;
        let init = smooth_wavepacket(n, epsilon)?;
        let fin = evolve_steps(&init, &coin, &params, steps);
        let profile = probability_profile(&fin);
        levels.push(RefinementLevel {
            epsilon,
            n,
            steps,
            mass,
            final_density: profile.total.iter().map(|p| p / epsilon).collect(),
            total_probability: profile.sum,
        });
    }

    let pairwise_errors: Vec<f64> = levels
        .windows(2)
        .map(|w| {
            let (coarse, fine) = (&w[0], &w[1]);
            let sq: f64 = coarse
                .final_density
                .iter()
                .enumerate()
                .map(|(j, d)| (d - fine.final_density[2 * j]).powi(2))
                .sum();
            (coarse.epsilon * sq).sqrt()
        })
        .collect();

    let (estimated_order, fit_r_squared) = if pairwise_errors.iter().all(|&e| e <= EXACT_AGREEMENT) {
        (None, None)
    } else {
        let eps: Vec<f64> = levels[..levels.len() - 1].iter().map(|l| l.epsilon).collect();
        let (slope, r2) = fit_log_slope(&eps, &pairwise_errors);
        (Some(slope), Some(r2))
    };

    Ok(RefinementStudy {
        m,
        rho,
        final_time,
        domain_length: base_n as f64 * eps0,
        levels,
        pairwise_errors,
        estimated_order,
        fit_r_squared,
    })
}
