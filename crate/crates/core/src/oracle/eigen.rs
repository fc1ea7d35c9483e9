use num_complex::Complex64;

use crate::error::{domain, Result};

/// Eigenvalues of a 2×2 Hermitian matrix from its trace and determinant,
/// sorted descending.
pub fn hermitian_2x2_eigenvalues(m: &[[Complex64; 2]; 2]) -> Result<[f64; 2]> {
    let off = m[0][1];
    if (m[1][0] - off.conj()).norm() > 1e-10 || m[0][0].im.abs() > 1e-10 || m[1][1].im.abs() > 1e-10
    {
        return domain("matrix is not Hermitian");
    }
    let a = m[0][0].re;
    let d = m[1][1].re;
    let mean = 0.5 * (a + d);
    let half_gap = 0.5 * (a - d);
    let radius = half_gap.hypot(off.norm());
    let hi = mean + radius;
    let lo = mean - radius;
    // when both have the same sign, recover the smaller one from the determinant
    let det = a * d - off.norm_sqr();
    let lo = if hi != 0.0 && det > 0.0 && mean > 0.0 {
        det / hi
    } else {
        lo
    };
    Ok([hi, lo])
}
