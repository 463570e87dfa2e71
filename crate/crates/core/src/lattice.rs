//! Two-component wavefunctions on a periodic lattice.

use num_complex::Complex64;

use crate::error::{Result, WalkError};

/// Spin (chirality) component of the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spin {
    Plus,
    Minus,
}

impl Spin {
    pub fn flipped(self) -> Self {
        match self {
            Spin::Plus => Spin::Minus,
            Spin::Minus => Spin::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Spin::Plus => '+',
            Spin::Minus => '-',
        }
    }
}

/// The amplitude pair `(ψ₊, ψ₋)` at one site.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor {
    pub plus: Complex64,
    pub minus: Complex64,
}

impl Spinor {
    pub const ZERO: Spinor = Spinor {
        plus: Complex64::new(0.0, 0.0),
        minus: Complex64::new(0.0, 0.0),
    };

    pub fn new(plus: Complex64, minus: Complex64) -> Self {
        Self { plus, minus }
    }

    pub fn get(&self, spin: Spin) -> Complex64 {
        match spin {
            Spin::Plus => self.plus,
            Spin::Minus => self.minus,
        }
    }

    pub fn get_mut(&mut self, spin: Spin) -> &mut Complex64 {
        match spin {
            Spin::Plus => &mut self.plus,
            Spin::Minus => &mut self.minus,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.plus.norm_sqr() + self.minus.norm_sqr()
    }
}

/// Which centered two-site initial condition to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitMode {
    /// Amplitude 1/4 on both components of the two central sites, total
    /// probability 1/4.
    Quarter,
    /// The same pattern with amplitude 1/2, total probability 1.
    #[default]
    Normalized,
}

/// A length-`n` periodic sequence of spinors. Index `i` and `i + n` address
/// the same site.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    sites: Vec<Spinor>,
}

impl SpinorField {
    pub fn zero(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(WalkError::Size {
                n,
                reason: "the lattice needs at least two sites",
            });
        }
        Ok(Self {
            sites: vec![Spinor::ZERO; n],
        })
    }

    pub fn from_sites(sites: Vec<Spinor>) -> Result<Self> {
        if sites.len() < 2 {
            return Err(WalkError::Size {
                n: sites.len(),
                reason: "the lattice needs at least two sites",
            });
        }
        Ok(Self { sites })
    }

    /// Nonzero only at the two central sites `n/2 − 1` and `n/2` (0-based).
    pub fn centered_initial_state(n: usize, mode: InitMode) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(WalkError::Size {
                n,
                reason: "the centered initial state needs an even size of at least 4",
            });
        }
        let a = match mode {
            InitMode::Quarter => 0.25,
            InitMode::Normalized => 0.5,
        };
        let amp = Complex64::new(a, 0.0);
        let mut field = Self::zero(n)?;
        for site in [n / 2 - 1, n / 2] {
            field.sites[site] = Spinor::new(amp, amp);
        }
        Ok(field)
    }

    /// Samples `f(x)` at `x = j` for every site `j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> Spinor) -> Result<Self> {
        Self::from_sites((0..n).map(&mut f).collect())
    }

    /// Builder-style setter, periodic in `site`.
    pub fn with_amplitude(mut self, site: isize, spin: Spin, value: Complex64) -> Self {
        let idx = self.wrap(site);
        *self.sites[idx].get_mut(spin) = value;
        self
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn wrap(&self, site: isize) -> usize {
        site.rem_euclid(self.sites.len() as isize) as usize
    }

    /// Periodic access.
    pub fn at(&self, site: isize) -> Spinor {
        self.sites[self.wrap(site)]
    }

    pub fn sites(&self) -> &[Spinor] {
        &self.sites
    }

    pub fn sites_mut(&mut self) -> &mut [Spinor] {
        &mut self.sites
    }

    pub fn total_probability(&self) -> f64 {
        self.sites.iter().map(Spinor::norm_sqr).sum()
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: Complex64, other: &SpinorField, b: Complex64) -> Result<Self> {
        if self.len() != other.len() {
            return Err(WalkError::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        let sites = self
            .sites
            .iter()
            .zip(&other.sites)
            .map(|(x, y)| Spinor::new(a * x.plus + b * y.plus, a * x.minus + b * y.minus))
            .collect();
        Ok(Self { sites })
    }

    /// Largest per-amplitude distance between two fields of equal size.
    pub fn max_abs_diff(&self, other: &SpinorField) -> f64 {
        assert_eq!(self.len(), other.len(), "fields differ in size");
        self.sites
            .iter()
            .zip(&other.sites)
            .map(|(x, y)| (x.plus - y.plus).norm().max((x.minus - y.minus).norm()))
            .fold(0.0, f64::max)
    }
}

/// Per-site probabilities `|ψ₊|² + |ψ₋|²`, with the per-component parts kept
/// for output.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityProfile {
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
    pub total: Vec<f64>,
    pub sum: f64,
}

impl ProbabilityProfile {
    pub fn len(&self) -> usize {
        self.total.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.total.iter().copied().fold(0.0, f64::max)
    }

    /// Total-variation distance to the uniform distribution, after
    /// normalizing the profile to unit mass.
    pub fn tv_distance_to_uniform(&self) -> f64 {
        if self.sum == 0.0 {
            return 1.0;
        }
        let u = 1.0 / self.len() as f64;
        0.5 * self.total.iter().map(|p| (p / self.sum - u).abs()).sum::<f64>()
    }

    /// `max_x |p(x) − p(n−1−x)|`.
    pub fn mirror_asymmetry(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|x| (self.total[x] - self.total[n - 1 - x]).abs())
            .fold(0.0, f64::max)
    }
}

pub fn probability_profile(field: &SpinorField) -> ProbabilityProfile {
    let plus: Vec<f64> = field.sites.iter().map(|s| s.plus.norm_sqr()).collect();
    let minus: Vec<f64> = field.sites.iter().map(|s| s.minus.norm_sqr()).collect();
    let total: Vec<f64> = plus.iter().zip(&minus).map(|(p, m)| p + m).collect();
    let sum = total.iter().sum();
    ProbabilityProfile {
        plus,
        minus,
        total,
        sum,
    }
}
