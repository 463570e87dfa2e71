//! Time stepping: the local stencil, the explicit block-circulant operator,
//! and full simulations.
//!
//! The stencil, with all site indices taken mod `n`:
//!
//! ```text
//! ψ₋'(x) = i·R·cos ρ·ψ₊(x) + R·sin ρ·ψ₊(x−1) + i·r1·ψ₋(x) + r2·ψ₋(x+1)
//! ψ₊'(x) = i·R·cos ρ·ψ₋(x) − R·sin ρ·ψ₋(x+1) − i·r1·ψ₊(x) + r2·ψ₊(x−1)
//! ```
//!
//! The dense operator stores the field interleaved by site with component
//! 0 = ψ₋ and component 1 = ψ₊, so amplitude `(x, c)` lives at row `2x + c`.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::coin::{solve_coefficients, CoinCoefficients, WalkParameters};
use crate::error::{Result, WalkError};
use crate::lattice::{probability_profile, ProbabilityProfile, Spinor, SpinorField};
use crate::mat2::Mat2;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Applies one step of the walk to a field.
pub trait Propagator {
    fn lattice_size(&self) -> Option<usize>;
    fn advance(&self, field: &SpinorField) -> Result<SpinorField>;
}

/// One stencil step.
pub fn step_stencil(field: &SpinorField, c: &CoinCoefficients, params: &WalkParameters) -> SpinorField {
    let flip_stay = I * params.mass_cos();
    let flip_move = params.mass_sin();
    let n = field.len() as isize;
    let sites = (0..n)
        .map(|x| {
            let here = field.at(x);
            let left = field.at(x - 1);
            let right = field.at(x + 1);
            let minus = flip_stay * here.plus + flip_move * left.plus + c.g1 * here.minus + c.g2 * right.minus;
            let plus = flip_stay * here.minus - flip_move * right.minus + c.f1 * here.plus + c.f2 * left.plus;
            Spinor::new(plus, minus)
        })
        .collect();
    SpinorField::from_sites(sites).expect("stencil preserves lattice size")
}

/// Stencil engine bound to one coin.
#[derive(Debug, Clone, Copy)]
pub struct StencilPropagator {
    pub coin: CoinCoefficients,
    pub params: WalkParameters,
}

impl Propagator for StencilPropagator {
    fn lattice_size(&self) -> Option<usize> {
        None
    }

    fn advance(&self, field: &SpinorField) -> Result<SpinorField> {
        Ok(step_stencil(field, &self.coin, &self.params))
    }
}

/// The three 2×2 blocks of the block-circulant operator, in (ψ₋, ψ₊) order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteBlocks {
    /// Couples a site to itself.
    pub diagonal: Mat2,
    /// Couples output site `x` to input site `x + 1`.
    pub upper: Mat2,
    /// Couples output site `x` to input site `x − 1`.
    pub lower: Mat2,
}

impl SiteBlocks {
    pub fn new(c: &CoinCoefficients, params: &WalkParameters) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let rc = I * params.mass_cos();
        let rs = Complex64::new(params.mass_sin(), 0.0);
        Self {
            diagonal: [[c.g1, rc], [rc, c.f1]],
            upper: [[c.g2, zero], [-rs, zero]],
            lower: [[zero, rs], [zero, c.f2]],
        }
    }
}

/// Dense `2n × 2n` evolution matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionOperator {
    n: usize,
    blocks: SiteBlocks,
    matrix: Array2<Complex64>,
}

impl EvolutionOperator {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &SiteBlocks {
        &self.blocks
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// Wraps an arbitrary matrix; used to build deliberately broken
    /// operators for negative checks.
    pub fn from_matrix(matrix: Array2<Complex64>, blocks: SiteBlocks) -> Result<Self> {
        let (rows, cols) = matrix.dim();
        if rows != cols || rows % 2 != 0 {
            return Err(WalkError::Parameter(format!(
                "evolution matrix must be square with even size, got {rows}x{cols}"
            )));
        }
        Ok(Self {
            n: rows / 2,
            blocks,
            matrix,
        })
    }

    pub fn matrix_mut(&mut self) -> &mut Array2<Complex64> {
        &mut self.matrix
    }
}

pub fn build_evolution_matrix(n: usize, c: &CoinCoefficients, params: &WalkParameters) -> Result<EvolutionOperator> {
    if n < 3 {
        return Err(WalkError::Size {
            n,
            reason: "the dense operator needs three distinct neighbouring sites",
        });
    }
    let blocks = SiteBlocks::new(c, params);
    let mut matrix = Array2::zeros((2 * n, 2 * n));
    for x in 0..n {
        let right = (x + 1) % n;
        let left = (x + n - 1) % n;
        for (col_site, block) in [(x, &blocks.diagonal), (right, &blocks.upper), (left, &blocks.lower)] {
            for a in 0..2 {
                for b in 0..2 {
                    matrix[[2 * x + a, 2 * col_site + b]] += block[a][b];
                }
            }
        }
    }
    Ok(EvolutionOperator { n, blocks, matrix })
}

pub(crate) fn field_to_vector(field: &SpinorField) -> Array1<Complex64> {
    field.sites().iter().flat_map(|s| [s.minus, s.plus]).collect()
}

pub(crate) fn vector_to_field(v: &Array1<Complex64>) -> SpinorField {
    let sites = v.as_slice().expect("contiguous").chunks_exact(2).map(|p| Spinor::new(p[1], p[0])).collect();
    SpinorField::from_sites(sites).expect("operator size is at least 3")
}

/// Matrix–vector product `M·ψ`.
pub fn step_dense(field: &SpinorField, op: &EvolutionOperator) -> Result<SpinorField> {
    if field.len() != op.n {
        return Err(WalkError::DimensionMismatch {
            expected: op.n,
            found: field.len(),
        });
    }
    let v = field_to_vector(field);
    Ok(vector_to_field(&op.matrix.dot(&v)))
}

impl Propagator for EvolutionOperator {
    fn lattice_size(&self) -> Option<usize> {
        Some(self.n)
    }

    fn advance(&self, field: &SpinorField) -> Result<SpinorField> {
        step_dense(field, self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Stencil,
    Dense,
}

/// Probability profiles of a run, frame 0 being the initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationRecord {
    pub params: WalkParameters,
    pub coin: CoinCoefficients,
    pub n: usize,
    /// Number of frames; the run takes `t − 1` steps.
    pub t: usize,
    pub frames: Vec<ProbabilityProfile>,
    /// `max_k |sum_k − sum_0|`.
    pub conservation_drift: f64,
    pub final_field: SpinorField,
}

impl SimulationRecord {
    pub fn ensure_conserved(&self, tolerance: f64) -> Result<()> {
        if self.conservation_drift > tolerance {
            return Err(WalkError::ConservationDrift {
                drift: self.conservation_drift,
                tolerance,
            });
        }
        Ok(())
    }

    pub fn last_frame(&self) -> &ProbabilityProfile {
        self.frames.last().expect("records hold at least one frame")
    }
}

/// Runs `t` frames (`t − 1` steps) from `init`.
pub fn simulate(
    params: &WalkParameters,
    n: usize,
    t: usize,
    init: &SpinorField,
    engine: Engine,
) -> Result<SimulationRecord> {
    let coin = solve_coefficients(params)?;
    simulate_with_coin(params, &coin, n, t, init, engine)
}

pub fn simulate_with_coin(
    params: &WalkParameters,
    coin: &CoinCoefficients,
    n: usize,
    t: usize,
    init: &SpinorField,
    engine: Engine,
) -> Result<SimulationRecord> {
    if t < 1 {
        return Err(WalkError::Parameter("a simulation needs at least one frame".into()));
    }
    if init.len() != n {
        return Err(WalkError::DimensionMismatch {
            expected: n,
            found: init.len(),
        });
    }
    let propagator: Box<dyn Propagator> = match engine {
        Engine::Stencil => Box::new(StencilPropagator {
            coin: *coin,
            params: *params,
        }),
        Engine::Dense => Box::new(build_evolution_matrix(n, coin, params)?),
    };
    run_frames(params, coin, n, t, init, propagator.as_ref())
}

fn run_frames(
    params: &WalkParameters,
    coin: &CoinCoefficients,
    n: usize,
    t: usize,
    init: &SpinorField,
    propagator: &dyn Propagator,
) -> Result<SimulationRecord> {
    let mut frames = Vec::with_capacity(t);
    let mut field = init.clone();
    frames.push(probability_profile(&field));
    for _ in 1..t {
        field = propagator.advance(&field)?;
        frames.push(probability_profile(&field));
    }
    let initial = frames[0].sum;
    let conservation_drift = frames.iter().map(|f| (f.sum - initial).abs()).fold(0.0, f64::max);
    Ok(SimulationRecord {
        params: *params,
        coin: *coin,
        n,
        t,
        frames,
        conservation_drift,
        final_field: field,
    })
}

/// Applies `steps` stencil steps.
pub fn evolve_steps(field: &SpinorField, c: &CoinCoefficients, params: &WalkParameters, steps: usize) -> SpinorField {
    (0..steps).fold(field.clone(), |f, _| step_stencil(&f, c, params))
}
