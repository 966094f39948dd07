//! Scalar abstractions shared by every module.
//!
//! [`Real`] is the floating-point type (f32 or f64). [`Field`] is what a
//! vector coordinate may be: a real number or a complex number over some
//! [`Real`]. Everything in the crate is written against these two traits.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::Neg;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
    + Field<Real = Self>
{
    /// Default relative singular-value threshold for this precision.
    fn default_rank_tol() -> Self;
    /// Default absolute orthogonality / equality threshold.
    fn default_eq_tol() -> Self;

    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable")
    }

    #[inline]
    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize representable")
    }
}

impl Real for f64 {
    fn default_rank_tol() -> Self {
        1e-8
    }
    fn default_eq_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn default_rank_tol() -> Self {
        1e-4
    }
    fn default_eq_tol() -> Self {
        1e-4
    }
}

/// Coordinate field: either `T` itself or `Complex<T>`.
pub trait Field: Copy + Debug + PartialEq + NumAssign + Neg<Output = Self> + Sum + Send + Sync + 'static {
    type Real: Real;
    /// `true` for complex coordinates.
    const IS_COMPLEX: bool;

    fn conj(self) -> Self;
    fn re(self) -> Self::Real;
    fn im(self) -> Self::Real;
    fn from_real(r: Self::Real) -> Self;
    fn modulus_sq(self) -> Self::Real;

    #[inline]
    fn modulus(self) -> Self::Real {
        self.modulus_sq().sqrt()
    }

    #[inline]
    fn scale(self, r: Self::Real) -> Self {
        self * Self::from_real(r)
    }

    #[inline]
    fn all_finite(self) -> bool {
        self.re().is_finite() && self.im().is_finite()
    }
}

macro_rules! real_field {
    ($t:ty) => {
        impl Field for $t {
            type Real = $t;
            const IS_COMPLEX: bool = false;
            #[inline]
            fn conj(self) -> Self {
                self
            }
            #[inline]
            fn re(self) -> $t {
                self
            }
            #[inline]
            fn im(self) -> $t {
                0.0
            }
            #[inline]
            fn from_real(r: $t) -> Self {
                r
            }
            #[inline]
            fn modulus_sq(self) -> $t {
                self * self
            }
            #[inline]
            fn modulus(self) -> $t {
                self.abs()
            }
        }
    };
}

impl<T: Real> Field for Complex<T> {
    type Real = T;
    const IS_COMPLEX: bool = true;
    #[inline]
    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    #[inline]
    fn re(self) -> T {
        self.re
    }
    #[inline]
    fn im(self) -> T {
        self.im
    }
    #[inline]
    fn from_real(r: T) -> Self {
        Complex::new(r, T::zero())
    }
    #[inline]
    fn modulus_sq(self) -> T {
        self.re * self.re + self.im * self.im
    }
    #[inline]
    fn modulus(self) -> T {
        self.re.hypot(self.im)
    }
    #[inline]
    fn scale(self, r: T) -> Self {
        Complex::new(self.re * r, self.im * r)
    }
}

real_field!(f32);
real_field!(f64);

/// Builds a complex scalar from its parts.
#[inline]
pub fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

/// `cos(theta) + i sin(theta)`.
#[inline]
pub fn unimodular<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Traits most modules need in scope for generic numeric code.
pub(crate) mod prelude {
    pub use super::{Field, Real};
    pub use num_traits::{Float, One, ToPrimitive, Zero};
}
