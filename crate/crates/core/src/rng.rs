//! Seeded random streams.
//!
//! Every random draw in the crate comes from a [`Streams`] value built from a
//! single root seed. A stream is addressed by a name and an index, so sample
//! `i` of a check sees the same numbers no matter which thread runs it or in
//! what order samples are evaluated.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::geometry::Vector;
use crate::scalar::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Streams {
    root: u64,
}

impl Streams {
    pub fn new(root: u64) -> Self {
        Self { root }
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    /// Generator for stream `(name, index)`.
    pub fn stream(&self, name: &str, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.root ^ fnv1a(name.as_bytes()));
        rng.set_stream(index);
        rng
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(rng.sample::<f64, _>(StandardNormal))
}

/// Standard Gaussian vector in `R^n`.
pub fn gaussian_real<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vector<T> {
    Vector::from_vec((0..n).map(|_| gaussian(rng)).collect())
}

/// Standard complex Gaussian vector in `C^n`.
pub fn gaussian_complex<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vector<Complex<T>> {
    Vector::from_vec((0..n).map(|_| Complex::new(gaussian(rng), gaussian(rng))).collect())
}

/// Uniform point on the unit sphere of `R^n`.
pub fn unit_real<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vector<T> {
    loop {
        if let Some(v) = gaussian_real::<T, _>(rng, n).normalized() {
            return v;
        }
    }
}

/// Uniform point on the unit sphere of `C^n`.
pub fn unit_complex<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vector<Complex<T>> {
    loop {
        if let Some(v) = gaussian_complex::<T, _>(rng, n).normalized() {
            return v;
        }
    }
}
