//! Unit complex gains with an optional exact root-of-unity representation.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Inputs whose modulus is within this distance of 1 are renormalized.
pub const INPUT_MODULUS_TOL: f64 = 1e-6;

/// A rational fraction of a full turn, `num/den` in lowest terms with `0 <= num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Angle {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Angle {
    pub const ZERO: Angle = Angle { num: 0, den: 1 };
    pub const HALF: Angle = Angle { num: 1, den: 2 };
    pub const QUARTER: Angle = Angle { num: 1, den: 4 };
    pub const THREE_QUARTERS: Angle = Angle { num: 3, den: 4 };

    /// Builds `p/q` reduced modulo 1. Returns `None` when `q == 0`.
    pub fn new(p: i64, q: u64) -> Option<Angle> {
        if q == 0 {
            return None;
        }
        let q_i = i128::from(q);
        let p = (i128::from(p).rem_euclid(q_i)) as u64;
        let g = gcd(p, q);
        Some(Angle { num: p / g, den: q / g })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// Sum of two angles; `None` if the common denominator overflows.
    pub fn checked_add(self, other: Angle) -> Option<Angle> {
        let g = gcd(self.den, other.den);
        let den = (self.den / g).checked_mul(other.den)?;
        let a = u128::from(self.num) * u128::from(den / self.den);
        let b = u128::from(other.num) * u128::from(den / other.den);
        let num = ((a + b) % u128::from(den)) as u64;
        let g = gcd(num, den);
        Some(Angle { num: num / g, den: den / g })
    }

    pub fn neg(self) -> Angle {
        if self.num == 0 {
            self
        } else {
            Angle { num: self.den - self.num, den: self.den }
        }
    }

    pub fn to_complex(self) -> Complex64 {
        // Exact values on the axes avoid 6e-17 residues from sin/cos.
        match (self.num, self.den) {
            (0, 1) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            _ => {
                let theta = std::f64::consts::TAU * self.num as f64 / self.den as f64;
                Complex64::new(theta.cos(), theta.sin())
            }
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// An element of the circle group, stored as a complex value and, when known,
/// as an exact rational angle.
/// Equality compares exact angles when both sides carry one, values otherwise.
#[derive(Debug, Clone, Copy)]
pub struct Gain {
    value: Complex64,
    exact: Option<Angle>,
}

impl Gain {
    pub const ONE: Gain = Gain { value: Complex64::new(1.0, 0.0), exact: Some(Angle::ZERO) };
    pub const MINUS_ONE: Gain = Gain { value: Complex64::new(-1.0, 0.0), exact: Some(Angle::HALF) };
    pub const I: Gain = Gain { value: Complex64::new(0.0, 1.0), exact: Some(Angle::QUARTER) };
    pub const MINUS_I: Gain = Gain {
        value: Complex64::new(0.0, -1.0),
        exact: Some(Angle::THREE_QUARTERS),
    };

    pub fn from_angle(angle: Angle) -> Gain {
        Gain { value: angle.to_complex(), exact: Some(angle) }
    }

    /// `e^(2πi·p/q)`.
    pub fn root_of_unity(p: i64, q: u64) -> Result<Gain> {
        Angle::new(p, q)
            .map(Gain::from_angle)
            .ok_or_else(|| Error::Precondition("root of unity with denominator 0".into()))
    }

    /// Accepts `z` with `||z| - 1| <= 1e-6` and renormalizes it to modulus 1.
    pub fn from_complex(z: Complex64) -> Result<Gain> {
        let modulus = z.norm();
        if !modulus.is_finite() || (modulus - 1.0).abs() > INPUT_MODULUS_TOL {
            return Err(Error::NonUnitGain { re: z.re, im: z.im, modulus });
        }
        // Values already unit to within a few ulps are kept verbatim so that
        // parse/serialize is idempotent.
        let value = if (modulus - 1.0).abs() <= 1e-14 { z } else { z / modulus };
        Ok(Gain { value, exact: None })
    }

    /// `e^(iθ)` for a real angle in radians; always inexact.
    pub fn from_radians(theta: f64) -> Gain {
        Gain { value: Complex64::new(theta.cos(), theta.sin()), exact: None }
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn exact_angle(&self) -> Option<Angle> {
        self.exact
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn conj(&self) -> Gain {
        match self.exact {
            Some(a) => Gain::from_angle(a.neg()),
            None => Gain { value: self.value.conj(), exact: None },
        }
    }

    pub fn mul(&self, other: &Gain) -> Gain {
        let exact = match (self.exact, other.exact) {
            (Some(a), Some(b)) => a.checked_add(b),
            _ => None,
        };
        match exact {
            Some(angle) => Gain::from_angle(angle),
            None => {
                let z = self.value * other.value;
                Gain { value: z / z.norm(), exact: None }
            }
        }
    }

    /// True when the gain lies in {1, -1, i, -i}.
    pub fn is_gaussian_unit(&self) -> bool {
        match self.exact {
            Some(a) => 4 % a.den() == 0,
            None => false,
        }
    }

    /// Compares against another gain: exactly when both carry angles,
    /// otherwise within `tol` in the complex plane.
    pub fn approx_eq(&self, other: &Gain, tol: f64) -> bool {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => (self.value - other.value).norm() <= tol,
        }
    }

    /// `(-1)^k` as an exact gain.
    pub fn sign_power(k: usize) -> Gain {
        if k.is_multiple_of(2) {
            Gain::ONE
        } else {
            Gain::MINUS_ONE
        }
    }

    /// Rendering in the text format's gain token syntax.
    pub fn token(&self) -> String {
        match self.exact {
            Some(Angle { num: 0, den: 1 }) => "1".into(),
            Some(Angle { num: 1, den: 2 }) => "-1".into(),
            Some(Angle { num: 1, den: 4 }) => "i".into(),
            Some(Angle { num: 3, den: 4 }) => "-i".into(),
            Some(a) => format!("rot({}/{})", a.num(), a.den()),
            None => format!("c({:?},{:?})", self.value.re, self.value.im),
        }
    }
}

impl PartialEq for Gain {
    fn eq(&self, other: &Gain) -> bool {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) => a == b,
            (None, None) => self.value == other.value,
            _ => false,
        }
    }
}

impl Default for Gain {
    fn default() -> Self {
        Gain::ONE
    }
}

impl fmt::Display for Gain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}
