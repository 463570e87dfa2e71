use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Result, WalkError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Rotation,
    Reflection,
}

/// `R_i` (rotation by `i` units) or `S_i` (rotation by `i` units, then a
/// reflection), with `i` taken mod `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DihedralElement {
    pub kind: Kind,
    pub index: usize,
    pub n: usize,
}

impl DihedralElement {
    pub fn rotation(index: i64, n: usize) -> Self {
        Self {
            kind: Kind::Rotation,
            index: index.rem_euclid(n as i64) as usize,
            n,
        }
    }

    pub fn reflection(index: i64, n: usize) -> Self {
        Self {
            kind: Kind::Reflection,
            index: index.rem_euclid(n as i64) as usize,
            n,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::rotation(0, n)
    }

    /// All `2n` elements, rotations first.
    pub fn all(n: usize) -> impl Iterator<Item = DihedralElement> {
        (0..n as i64)
            .map(move |i| Self::rotation(i, n))
            .chain((0..n as i64).map(move |i| Self::reflection(i, n)))
    }

    /// Position in the dense layout used by [`GroupAlgebraElement`].
    fn slot(&self) -> usize {
        match self.kind {
            Kind::Rotation => self.index,
            Kind::Reflection => self.n + self.index,
        }
    }

    fn from_slot(slot: usize, n: usize) -> Self {
        if slot < n {
            Self::rotation(slot as i64, n)
        } else {
            Self::reflection((slot - n) as i64, n)
        }
    }

    /// Group product: `R_iR_j = R_{i+j}`, `R_iS_j = S_{i+j}`,
    /// `S_iR_j = S_{i−j}`, `S_iS_j = R_{i−j}`.
    pub fn compose(&self, other: &DihedralElement) -> Result<DihedralElement> {
        if self.n != other.n {
            return Err(WalkError::GroupMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let (i, j, n) = (self.index as i64, other.index as i64, self.n);
        Ok(match (self.kind, other.kind) {
            (Kind::Rotation, Kind::Rotation) => Self::rotation(i + j, n),
            (Kind::Rotation, Kind::Reflection) => Self::reflection(i + j, n),
            (Kind::Reflection, Kind::Rotation) => Self::reflection(i - j, n),
            (Kind::Reflection, Kind::Reflection) => Self::rotation(i - j, n),
        })
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            Kind::Rotation => 'R',
            Kind::Reflection => 'S',
        };
        write!(f, "{tag}{}", self.index)
    }
}

/// `R_k` is the rotation by `2πk/n`; `S_k = [[cos, sin], [sin, −cos]]`.
pub fn dihedral_representation(g: &DihedralElement) -> [[f64; 2]; 2] {
    let angle = TAU * g.index as f64 / g.n as f64;
    let (s, c) = angle.sin_cos();
    match g.kind {
        Kind::Rotation => [[c, -s], [s, c]],
        Kind::Reflection => [[c, s], [s, -c]],
    }
}

/// An element of the group algebra `ℂ[D_n]`, stored densely over the `2n`
/// group elements.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAlgebraElement {
    n: usize,
    coeffs: Vec<Complex64>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "D_n needs n >= 1");
        Self {
            n,
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * n],
        }
    }

    pub fn unit(n: usize) -> Self {
        Self::basis(DihedralElement::identity(n), Complex64::new(1.0, 0.0))
    }

    pub fn basis(g: DihedralElement, coeff: Complex64) -> Self {
        let mut out = Self::zero(g.n);
        out.coeffs[g.slot()] = coeff;
        out
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (DihedralElement, Complex64)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (g, c) in terms {
            if g.n != n {
                return Err(WalkError::GroupMismatch { left: n, right: g.n });
            }
            out.coeffs[g.slot()] += c;
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, g: &DihedralElement) -> Complex64 {
        assert_eq!(g.n, self.n, "element from a different group");
        self.coeffs[g.slot()]
    }

    /// Elements with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = (DihedralElement, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Complex64::new(0.0, 0.0))
            .map(move |(slot, c)| (DihedralElement::from_slot(slot, self.n), *c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(WalkError::GroupMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Image under the 2×2 representation, extended linearly.
    pub fn represent(&self) -> [[Complex64; 2]; 2] {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (g, c) in self.support() {
            let m = dihedral_representation(&g);
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] += c * m[i][j];
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Convolution product over the multiplication table.
pub fn algebra_multiply(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    if a.n != b.n {
        return Err(WalkError::GroupMismatch { left: a.n, right: b.n });
    }
    let mut out = GroupAlgebraElement::zero(a.n);
    for (g, x) in a.support() {
        for (h, y) in b.support() {
            let gh = g.compose(&h)?;
            out.coeffs[gh.slot()] += x * y;
        }
    }
    Ok(out)
}

/// `(a0·R_0 + a1·R_1 + b0·S_0 + b1·S_1)^t`, with `t = 0` giving `R_0`.
pub fn algebra_power(
    a0: Complex64,
    a1: Complex64,
    b0: Complex64,
    b1: Complex64,
    t: usize,
    n: usize,
) -> GroupAlgebraElement {
    let generator = GroupAlgebraElement::from_terms(
        n,
        [
            (DihedralElement::rotation(0, n), a0),
            (DihedralElement::rotation(1, n), a1),
            (DihedralElement::reflection(0, n), b0),
            (DihedralElement::reflection(1, n), b1),
        ],
    )
    .expect("all terms share n");
    (0..t).fold(GroupAlgebraElement::unit(n), |acc, _| {
        algebra_multiply(&acc, &generator).expect("same group")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn relation_instances() {
        let n = 7;
        let r1 = DihedralElement::rotation(1, n);
        assert_eq!(r1.compose(&DihedralElement::rotation(n as i64 - 1, n)).unwrap(), DihedralElement::identity(n));
        let s1 = DihedralElement::reflection(1, n);
        assert_eq!(s1.compose(&s1).unwrap(), DihedralElement::identity(n));
        assert_eq!(
            DihedralElement::reflection(0, n).compose(&r1).unwrap(),
            DihedralElement::reflection(-1, n)
        );
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let a = GroupAlgebraElement::unit(4);
        let b = GroupAlgebraElement::unit(5);
        assert_eq!(algebra_multiply(&a, &b), Err(WalkError::GroupMismatch { left: 4, right: 5 }));
        assert!(DihedralElement::identity(3).compose(&DihedralElement::identity(4)).is_err());
    }

    #[test]
    fn printed_matrices() {
        assert_eq!(dihedral_representation(&DihedralElement::identity(5)), [[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(dihedral_representation(&DihedralElement::reflection(0, 5)), [[1.0, 0.0], [0.0, -1.0]]);
        let r = dihedral_representation(&DihedralElement::rotation(1, 4));
        assert!((r[0][1] + 1.0).abs() < 1e-15 && (r[1][0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn difference_of_squares_vanishes() {
        let n = 6;
        let r0 = GroupAlgebraElement::unit(n);
        let s0 = GroupAlgebraElement::basis(DihedralElement::reflection(0, n), c(1.0));
        let lhs = algebra_multiply(&r0.add(&s0).unwrap(), &r0.add(&s0.scale(c(-1.0))).unwrap()).unwrap();
        assert_eq!(lhs.support().count(), 0);
        let rep = lhs.represent();
        assert!(rep.iter().flatten().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn power_edge_cases() {
        let (a0, a1, b0, b1) = (c(0.1), c(0.2), c(0.3), c(0.4));
        let p0 = algebra_power(a0, a1, b0, b1, 0, 5);
        assert_eq!(p0, GroupAlgebraElement::unit(5));
        let p1 = algebra_power(a0, a1, b0, b1, 1, 5);
        assert_eq!(p1.coeff(&DihedralElement::rotation(0, 5)), a0);
        assert_eq!(p1.coeff(&DihedralElement::rotation(1, 5)), a1);
        assert_eq!(p1.coeff(&DihedralElement::reflection(0, 5)), b0);
        assert_eq!(p1.coeff(&DihedralElement::reflection(1, 5)), b1);
        assert_eq!(p1.support().count(), 4);
    }

    #[test]
    fn display_names() {
        assert_eq!(DihedralElement::reflection(-1, 8).to_string(), "S7");
        assert_eq!(DihedralElement::rotation(9, 8).to_string(), "R1");
    }
}
