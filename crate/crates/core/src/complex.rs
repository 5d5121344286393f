use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Finite complex number in double precision.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct ComplexF(Complex64);

impl ComplexF {
    pub const ZERO: ComplexF = ComplexF(Complex64::new(0.0, 0.0));
    pub const ONE: ComplexF = ComplexF(Complex64::new(1.0, 0.0));
    pub const I: ComplexF = ComplexF(Complex64::new(0.0, 1.0));

    pub fn new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(ComplexF(Complex64::new(re, im)))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub(crate) const fn from_real(re: f64) -> Self {
        ComplexF(Complex64::new(re, 0.0))
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn scale(self, s: f64) -> Self {
        ComplexF(self.0 * s)
    }

    pub fn powu(self, e: u32) -> Self {
        ComplexF(self.0.powu(e))
    }

    pub fn is_finite(&self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }

    pub fn into_inner(self) -> Complex64 {
        self.0
    }
}

impl TryFrom<Complex64> for ComplexF {
    type Error = Error;
    fn try_from(z: Complex64) -> Result<Self> {
        ComplexF::new(z.re, z.im)
    }
}

impl From<f64> for ComplexF {
    fn from(re: f64) -> Self {
        ComplexF::from_real(re)
    }
}

impl fmt::Display for ComplexF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for ComplexF {
            type Output = ComplexF;
            fn $m(self, rhs: ComplexF) -> ComplexF {
                ComplexF(self.0.$m(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for ComplexF {
    type Output = ComplexF;
    fn neg(self) -> ComplexF {
        ComplexF(-self.0)
    }
}
