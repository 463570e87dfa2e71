//! Minimal 2×2 complex matrix algebra for site blocks and momentum blocks.

use num_complex::Complex64;

pub type Mat2 = [[Complex64; 2]; 2];

pub const ZERO: Mat2 = [[Complex64::new(0.0, 0.0); 2]; 2];

pub fn identity() -> Mat2 {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    [[one, zero], [zero, one]]
}

pub fn add(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = ZERO;
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][j] + b[i][j];
        }
    }
    out
}

pub fn scale(a: &Mat2, s: Complex64) -> Mat2 {
    a.map(|row| row.map(|z| z * s))
}

pub fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = ZERO;
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn adjoint(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

pub fn apply(a: &Mat2, v: [Complex64; 2]) -> [Complex64; 2] {
    [
        a[0][0] * v[0] + a[0][1] * v[1],
        a[1][0] * v[0] + a[1][1] * v[1],
    ]
}

pub fn trace(a: &Mat2) -> Complex64 {
    a[0][0] + a[1][1]
}

pub fn det(a: &Mat2) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Largest entry modulus of `A·A† − I`.
pub fn unitarity_defect(a: &Mat2) -> f64 {
    let p = mul(a, &adjoint(a));
    let id = identity();
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((p[i][j] - id[i][j]).norm());
        }
    }
    worst
}

/// Eigenvalues from the characteristic quadratic `λ² − tr·λ + det = 0`.
pub fn eigenvalues(a: &Mat2) -> [Complex64; 2] {
    let tr = trace(a);
    let d = det(a);
    let root = (tr * tr - 4.0 * d).sqrt();
    // pick the sign that avoids cancellation, recover the other from det
    let q = if (tr.conj() * root).re >= 0.0 {
        (tr + root) / 2.0
    } else {
        (tr - root) / 2.0
    };
    if q.norm() == 0.0 {
        return [q, q];
    }
    [q, d / q]
}

/// Unit eigenvector for an eigenvalue `lambda` of `a`.
///
/// Uses whichever null vector of `a − λI` built from the two rows is
/// larger. When both vanish the matrix is scalar and `fallback` selects the
/// basis vector.
pub fn eigenvector(a: &Mat2, lambda: Complex64, fallback: usize) -> [Complex64; 2] {
    let from_top = [a[0][1], lambda - a[0][0]];
    let from_bottom = [lambda - a[1][1], a[1][0]];
    let n_top = from_top[0].norm_sqr() + from_top[1].norm_sqr();
    let n_bottom = from_bottom[0].norm_sqr() + from_bottom[1].norm_sqr();
    let (v, norm_sq) = if n_top >= n_bottom {
        (from_top, n_top)
    } else {
        (from_bottom, n_bottom)
    };
    if norm_sq < 1e-28 {
        let mut e = [Complex64::new(0.0, 0.0); 2];
        e[fallback.min(1)] = Complex64::new(1.0, 0.0);
        return e;
    }
    let inv = 1.0 / norm_sq.sqrt();
    [v[0] * inv, v[1] * inv]
}
