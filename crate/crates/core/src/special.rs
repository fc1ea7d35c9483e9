//! Special functions.

/// Complementary error function, `erfc(x) = 1 - erf(x)`.
///
/// Backed by the FreeBSD/musl rational approximations (about 1 ulp over the
/// whole real line), which keeps tails like `erfc(6)` at full relative precision.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}
