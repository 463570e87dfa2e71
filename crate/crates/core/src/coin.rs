//! Coin coefficients of the walk.
//!
//! With the ansatz `g1 = i·r1`, `g2 = r2`, `f1 = conj(g1)`, `f2 = conj(g2)`
//! the unitarity conditions of the transition matrix collapse to
//!
//! ```text
//! r1·r2       = R²·sin ρ·cos ρ
//! r1² + r2²   = 1 − R²
//! ```
//!
//! so `r1` and `r2` are the roots of `x² − S·x + P = 0` with
//! `S = sqrt(1 − R² + R²·sin 2ρ)` and `P = R²·sin 2ρ / 2`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Result, WalkError};

/// Discriminant values in `(-DISCRIMINANT_CLAMP, 0)` are treated as zero.
pub const DISCRIMINANT_CLAMP: f64 = 1e-14;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Physical parameters of the walk: the mass term `R = m·ε` and the mixing
/// angle `ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParameters {
    mass: f64,
    rho: f64,
}

impl WalkParameters {
    /// Validates `0 ≤ R ≤ 1` and reduces `ρ` to `[0, 2π)`.
    pub fn new(mass: f64, rho: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&mass) {
            return Err(WalkError::Domain(mass));
        }
        if !rho.is_finite() {
            return Err(WalkError::Parameter(format!("rho must be finite, got {rho}")));
        }
        let mut rho = rho.rem_euclid(TAU);
        // rem_euclid can round up to exactly TAU for tiny negative inputs
        if rho >= TAU {
            rho = 0.0;
        }
        Ok(Self { mass, rho })
    }

    /// The mass term `R`.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// The mixing angle, in `[0, 2π)`.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// `R·cos ρ`, the amplitude of the stationary spin flip (times `i`).
    pub fn mass_cos(&self) -> f64 {
        self.mass * self.rho.cos()
    }

    /// `R·sin ρ`, the amplitude of the moving spin flip.
    pub fn mass_sin(&self) -> f64 {
        self.mass * self.rho.sin()
    }

    /// Smallest of the two quantities that must be non-negative for real
    /// roots: the discriminant `1 − R² − R²·sin 2ρ` and the squared root sum
    /// `1 − R² + R²·sin 2ρ`. Equals the discriminant whenever `sin 2ρ ≥ 0`.
    pub fn solvability_margin(&self) -> f64 {
        let (sum_sq, disc) = self.quadratic_terms();
        sum_sq.min(disc)
    }

    /// Returns `(S², D)` for the coin quadratic.
    fn quadratic_terms(&self) -> (f64, f64) {
        let r2 = self.mass * self.mass;
        let s2 = (2.0 * self.rho).sin();
        let base = 1.0 - r2;
        (base + r2 * s2, base - r2 * s2)
    }
}

/// Which root of the coin quadratic is assigned to `r1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootOrder {
    /// `r1 ≤ r2`.
    #[default]
    Ascending,
    /// `r1 ≥ r2`; the swapped walk is also unitary.
    Swapped,
}

/// The amplitudes of the local moves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinCoefficients {
    pub r1: f64,
    pub r2: f64,
    pub g1: Complex64,
    pub g2: Complex64,
    pub f1: Complex64,
    pub f2: Complex64,
}

impl CoinCoefficients {
    /// Builds the full coefficient set from a pair of real roots.
    pub fn from_roots(r1: f64, r2: f64) -> Self {
        let g1 = I * r1;
        let g2 = Complex64::new(r2, 0.0);
        Self {
            r1,
            r2,
            g1,
            g2,
            f1: g1.conj(),
            f2: g2.conj(),
        }
    }

    pub fn swapped(&self) -> Self {
        Self::from_roots(self.r2, self.r1)
    }
}

/// Solves the coin quadratic with `r1 ≤ r2`.
pub fn solve_coefficients(params: &WalkParameters) -> Result<CoinCoefficients> {
    solve_coefficients_ordered(params, RootOrder::Ascending)
}

pub fn solve_coefficients_ordered(
    params: &WalkParameters,
    order: RootOrder,
) -> Result<CoinCoefficients> {
    let (mut sum_sq, mut disc) = params.quadratic_terms();
    let margin = sum_sq.min(disc);
    if margin < -DISCRIMINANT_CLAMP {
        return Err(WalkError::NoRealCoin {
            mass: params.mass,
            rho: params.rho,
            discriminant: margin,
        });
    }
    sum_sq = sum_sq.max(0.0);
    disc = disc.max(0.0);

    let r = params.mass;
    let sum = sum_sq.sqrt();
    let product = r * r * (2.0 * params.rho).sin() / 2.0;

    // larger root first, smaller via Vieta to avoid cancellation
    let big = (sum + disc.sqrt()) / 2.0;
    let small = if big == 0.0 { 0.0 } else { product / big };

    let coin = CoinCoefficients::from_roots(small, big);
    Ok(match order {
        RootOrder::Ascending => coin,
        RootOrder::Swapped => coin.swapped(),
    })
}

/// Absolute residuals of every unitarity relation for a concrete coin.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    /// The eight conditions from the product `M·M† = I`, in order.
    pub full_system: [f64; 8],
    /// The four reduced conditions (`f1 = ḡ1`, `f2 = ḡ2`, the cross term,
    /// and the norm condition).
    pub reduced_system: [f64; 4],
    /// `r1·r2 − R² sin ρ cos ρ` and `r1² + r2² − (1 − R²)`.
    pub root_identities: [f64; 2],
    /// `g1 − i·r1` and `g2 − r2`.
    pub ansatz: [f64; 2],
}

impl ResidualReport {
    pub fn max(&self) -> f64 {
        self.full_system
            .iter()
            .chain(&self.reduced_system)
            .chain(&self.root_identities)
            .chain(&self.ansatz)
            .fold(0.0, |acc, &x| acc.max(x))
    }

    pub fn named(&self) -> Vec<(String, f64)> {
        let mut out = Vec::with_capacity(16);
        for (i, v) in self.full_system.iter().enumerate() {
            out.push((format!("unitarity[{}]", i + 1), *v));
        }
        for (i, v) in self.reduced_system.iter().enumerate() {
            out.push((format!("reduced[{}]", i + 1), *v));
        }
        out.push(("root_product".to_string(), self.root_identities[0]));
        out.push(("root_norm".to_string(), self.root_identities[1]));
        out.push(("ansatz_g1".to_string(), self.ansatz[0]));
        out.push(("ansatz_g2".to_string(), self.ansatz[1]));
        out
    }
}

/// Substitutes the coefficients into every unitarity relation.
pub fn verify_unitarity_system(c: &CoinCoefficients, params: &WalkParameters) -> ResidualReport {
    let r = params.mass;
    let (sin, cos) = params.rho.sin_cos();
    let (g1, g2, f1, f2) = (c.g1, c.g2, c.f1, c.f2);
    let rc = Complex64::new(r * cos, 0.0);
    let rs = Complex64::new(r * sin, 0.0);
    let mass_sq = r * r;

    let full = [
        g1 * g1.conj() + g2 * g2.conj() + rc * rc.conj() + rs * rs.conj() - 1.0,
        -I * f1 * rc + f2 * rs + I * g1.conj() * rc - g2.conj() * rs,
        g1 * g2.conj() - I * mass_sq * cos * sin,
        -I * f2 * rc + I * g2.conj() * rc,
        g2 * g1.conj() + I * mass_sq * cos * sin,
        f1 * rs - g1.conj() * rs,
        -I * g1 * rc - g2 * rs + I * f1.conj() * rc + f2.conj() * rs,
        f1 * f1.conj() + f2 * f2.conj() + rc * rc.conj() + rs * rs.conj() - 1.0,
    ];
    let reduced = [
        f1 - g1.conj(),
        f2 - g2.conj(),
        g2 * g1.conj() + I * mass_sq * sin * cos,
        Complex64::new(g1.norm_sqr() + g2.norm_sqr() + mass_sq - 1.0, 0.0),
    ];

    ResidualReport {
        full_system: full.map(|z| z.norm()),
        reduced_system: reduced.map(|z| z.norm()),
        root_identities: [
            (c.r1 * c.r2 - mass_sq * sin * cos).abs(),
            (c.r1 * c.r1 + c.r2 * c.r2 - (1.0 - mass_sq)).abs(),
        ],
        ansatz: [(g1 - I * c.r1).norm(), (g2 - c.r2).norm()],
    }
}
