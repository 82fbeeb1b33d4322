//! Thin wrappers over `libm` plus a few shared numeric helpers.
//!
//! The crate is `no_std`, so the float transcendentals come from `libm`.
//! Keeping them behind one module also pins a single implementation for
//! every module, which matters for bit-reproducibility.

pub(crate) use core::f64::consts::LN_2;

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// x ln x with the 0 ln 0 = 0 convention.
#[inline]
pub(crate) fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * ln(x)
    } else {
        0.0
    }
}

/// Pairwise (cascade) summation over a slice.
///
/// The reduction tree depends only on the slice layout, so partial sums
/// computed over fixed index ranges recombine to the same value no matter
/// how the ranges were distributed across workers.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    const LINEAR_CUTOFF: usize = 32;
    if values.len() <= LINEAR_CUTOFF {
        let mut acc = 0.0;
        for &v in values {
            acc += v;
        }
        acc
    } else {
        let mid = values.len() / 2;
        pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
    }
}
