use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::coin::{CoinCoefficients, WalkParameters};
use crate::error::{Result, WalkError};
use crate::lattice::Spin;

/// Enumeration cost grows as `4^t`; `4^12 ≈ 1.7e7` strings.
pub const MAX_PATH_STEPS: usize = 12;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// One letter of a base-4 path string. Moving steps go right for `ψ₊` and
/// left for `ψ₋`, judged by the spin before the step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    StayKeep = 0,
    StayFlip = 1,
    MoveKeep = 2,
    MoveFlip = 3,
}

impl Move {
    pub const ALL: [Move; 4] = [Move::StayKeep, Move::StayFlip, Move::MoveKeep, Move::MoveFlip];

    pub fn from_digit(d: usize) -> Self {
        Self::ALL[d & 3]
    }

    /// `(amplitude, displacement, spin after)` for a step taken from `spin`.
    pub fn apply(self, spin: Spin, c: &CoinCoefficients, params: &WalkParameters) -> (Complex64, i64, Spin) {
        let direction = match spin {
            Spin::Plus => 1,
            Spin::Minus => -1,
        };
        let rs = Complex64::new(params.mass_sin(), 0.0);
        match (self, spin) {
            (Move::StayKeep, Spin::Plus) => (c.f1, 0, spin),
            (Move::StayKeep, Spin::Minus) => (c.g1, 0, spin),
            (Move::StayFlip, _) => (I * params.mass_cos(), 0, spin.flipped()),
            (Move::MoveKeep, Spin::Plus) => (c.f2, direction, spin),
            (Move::MoveKeep, Spin::Minus) => (c.g2, direction, spin),
            (Move::MoveFlip, Spin::Plus) => (rs, direction, spin.flipped()),
            (Move::MoveFlip, Spin::Minus) => (-rs, direction, spin.flipped()),
        }
    }
}

/// Aggregated amplitude of every path string ending at `(site, spin)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathAmplitude {
    pub site: usize,
    pub spin: Spin,
    pub amplitude: Complex64,
    /// Number of strings ending here, including those whose weight is zero.
    pub path_count: u64,
}

/// Follows one move string; returns the end point and the product of the
/// per-step coefficients.
pub fn path_weight(
    moves: &[Move],
    c: &CoinCoefficients,
    params: &WalkParameters,
    n: usize,
    init_site: usize,
    init_spin: Spin,
) -> (usize, Spin, Complex64) {
    let mut site = init_site as i64;
    let mut spin = init_spin;
    let mut weight = Complex64::new(1.0, 0.0);
    for m in moves {
        let (amp, dx, next) = m.apply(spin, c, params);
        weight *= amp;
        site += dx;
        spin = next;
    }
    (site.rem_euclid(n as i64) as usize, spin, weight)
}

/// Decodes string number `index` into `t` moves, least significant digit
/// first.
fn decode(mut index: u64, moves: &mut [Move]) {
    for m in moves.iter_mut() {
        *m = Move::from_digit((index & 3) as usize);
        index >>= 2;
    }
}

/// Sums over all `4^t` move strings from a unit excitation at
/// `(init_site, init_spin)`. Results are sorted by site, then spin.
pub fn enumerate_paths(
    c: &CoinCoefficients,
    params: &WalkParameters,
    t: usize,
    n: usize,
    init_site: usize,
    init_spin: Spin,
) -> Result<Vec<PathAmplitude>> {
    if t > MAX_PATH_STEPS {
        return Err(WalkError::Budget {
            steps: t,
            cap: MAX_PATH_STEPS,
        });
    }
    if n < 3 {
        return Err(WalkError::Size {
            n,
            reason: "path enumeration needs at least three sites",
        });
    }
    let mut acc: BTreeMap<(usize, Spin), (Complex64, u64)> = BTreeMap::new();
    let mut moves = vec![Move::StayKeep; t];
    for index in 0..(1u64 << (2 * t)) {
        decode(index, &mut moves);
        let (site, spin, w) = path_weight(&moves, c, params, n, init_site % n, init_spin);
        let entry = acc.entry((site, spin)).or_insert((Complex64::new(0.0, 0.0), 0));
        entry.0 += w;
        entry.1 += 1;
    }
    Ok(acc
        .into_iter()
        .map(|((site, spin), (amplitude, path_count))| PathAmplitude {
            site,
            spin,
            amplitude,
            path_count,
        })
        .collect())
}
