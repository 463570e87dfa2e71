//! Exact spectrum of the evolution operator.
//!
//! The operator is block circulant, so plane waves `e^{−iθx}` with
//! `θ = 2πk/n` reduce it to the 2×2 momentum blocks
//! `B(θ) = D + U·e^{−iθ} + L·e^{+iθ}`. The 2n eigenvalues are the roots of
//! the `n` characteristic quadratics.

use std::f64::consts::TAU;

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::coin::{CoinCoefficients, WalkParameters};
use crate::error::{Result, WalkError};
use crate::evolve::{EvolutionOperator, SiteBlocks};
use crate::mat2::{self, Mat2};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumBlock {
    pub k: usize,
    pub theta: f64,
    pub block: Mat2,
}

impl MomentumBlock {
    pub fn unitarity_defect(&self) -> f64 {
        mat2::unitarity_defect(&self.block)
    }

    pub fn det(&self) -> Complex64 {
        mat2::det(&self.block)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n < 3 {
        return Err(WalkError::Size {
            n,
            reason: "momentum blocks need at least three sites",
        });
    }
    Ok(())
}

pub fn momentum_blocks(c: &CoinCoefficients, params: &WalkParameters, n: usize) -> Result<Vec<MomentumBlock>> {
    check_size(n)?;
    let blocks = SiteBlocks::new(c, params);
    Ok((0..n)
        .map(|k| {
            let theta = TAU * k as f64 / n as f64;
            let phase = Complex64::from_polar(1.0, -theta);
            let block = mat2::add(
                &blocks.diagonal,
                &mat2::add(&mat2::scale(&blocks.upper, phase), &mat2::scale(&blocks.lower, phase.conj())),
            );
            MomentumBlock { k, theta, block }
        })
        .collect())
}

/// One eigenvalue, labelled by its momentum mode and branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub k: usize,
    pub branch: usize,
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub n: usize,
    /// Sorted by `k`, then by phase angle within the mode.
    pub eigenvalues: Vec<Eigenvalue>,
    /// Full-space eigenvectors, aligned with `eigenvalues`, when requested.
    pub eigenvectors: Option<Vec<Array1<Complex64>>>,
    pub max_modulus_deviation: f64,
}

pub fn spectrum(c: &CoinCoefficients, params: &WalkParameters, n: usize) -> Result<SpectrumResult> {
    compute(c, params, n, false)
}

pub fn spectrum_with_vectors(c: &CoinCoefficients, params: &WalkParameters, n: usize) -> Result<SpectrumResult> {
    compute(c, params, n, true)
}

fn compute(c: &CoinCoefficients, params: &WalkParameters, n: usize, vectors: bool) -> Result<SpectrumResult> {
    let blocks = momentum_blocks(c, params, n)?;
    let mut eigenvalues = Vec::with_capacity(2 * n);
    let mut eigenvectors = vectors.then(|| Vec::with_capacity(2 * n));
    let norm = 1.0 / (n as f64).sqrt();

    for mb in &blocks {
        let mut pair = mat2::eigenvalues(&mb.block);
        if pair[0].arg() > pair[1].arg() {
            pair.swap(0, 1);
        }
        for (branch, lambda) in pair.into_iter().enumerate() {
            eigenvalues.push(Eigenvalue {
                k: mb.k,
                branch,
                value: lambda,
            });
            if let Some(out) = eigenvectors.as_mut() {
                let v = mat2::eigenvector(&mb.block, lambda, branch);
                let full: Array1<Complex64> = (0..n)
                    .flat_map(|x| {
                        let wave = Complex64::from_polar(norm, -mb.theta * x as f64);
                        [wave * v[0], wave * v[1]]
                    })
                    .collect();
                out.push(full);
            }
        }
    }

    let max_modulus_deviation = eigenvalues.iter().map(|e| (e.value.norm() - 1.0).abs()).fold(0.0, f64::max);
    Ok(SpectrumResult {
        n,
        eigenvalues,
        eigenvectors,
        max_modulus_deviation,
    })
}

/// Largest entry modulus of `M·M† − I`.
pub fn unitarity_residual(op: &EvolutionOperator) -> f64 {
    let m = op.matrix();
    let adj = m.t().mapv(|z| z.conj());
    let product = m.dot(&adj);
    let id: Array2<Complex64> = Array2::eye(product.nrows());
    product.iter().zip(id.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

/// `max_j ‖M·v_j − λ_j·v_j‖` over the eigenpairs of `result`.
pub fn eigenpair_residual(op: &EvolutionOperator, result: &SpectrumResult) -> Option<f64> {
    let vectors = result.eigenvectors.as_ref()?;
    Some(
        result
            .eigenvalues
            .iter()
            .zip(vectors)
            .map(|(e, v)| {
                let mv = op.matrix().dot(v);
                mv.iter().zip(v.iter()).map(|(a, b)| (a - e.value * b).norm_sqr()).sum::<f64>().sqrt()
            })
            .fold(0.0, f64::max),
    )
}
