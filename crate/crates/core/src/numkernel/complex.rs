use num_complex::Complex64;

pub type C64 = Complex64;

/// Principal logarithm with the branch cut on the negative real axis and the
/// cut itself attached to the upper half plane (arg in (-π, π]).
///
/// `num_complex` follows the sign of a zero imaginary part, so `-(1+0i)`
/// would land on arg = -π. Normalizing `-0.0` keeps every `(-x)^a` in the
/// crate on the same side of the cut.
#[inline]
pub fn principal_ln(z: C64) -> C64 {
    C64::new(z.re, z.im + 0.0).ln()
}

/// Principal power `base^expo`.
///
/// `0^expo` is 0 for `Re expo > 0` and 1 for `expo == 0`; other zero-base
/// cases return `None`.
pub fn cpow(base: C64, expo: C64) -> Option<C64> {
    if base.re == 0.0 && base.im == 0.0 {
        if expo.re == 0.0 && expo.im == 0.0 {
            return Some(C64::new(1.0, 0.0));
        }
        if expo.re > 0.0 {
            return Some(C64::new(0.0, 0.0));
        }
        return None;
    }
    if expo.im == 0.0 && base.im == 0.0 && base.re > 0.0 {
        return Some(C64::new(base.re.powf(expo.re), 0.0));
    }
    Some((expo * principal_ln(base)).exp())
}

#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

pub fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// A complex number stored as `mant * exp(log)` so that quantities far
/// outside the f64 exponent range can be combined before the final rescale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mant: C64,
    pub log: f64,
}

impl Scaled {
    pub fn new(mant: C64, log: f64) -> Self {
        Scaled { mant, log }.normalized()
    }

    pub fn from_value(v: C64) -> Self {
        Scaled { mant: v, log: 0.0 }.normalized()
    }

    /// `exp(z)` without forming it.
    pub fn exp_of(z: C64) -> Self {
        Scaled {
            mant: cis(z.im),
            log: z.re,
        }
    }

    pub fn zero() -> Self {
        Scaled {
            mant: C64::new(0.0, 0.0),
            log: 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.re == 0.0 && self.mant.im == 0.0
    }

    fn normalized(self) -> Self {
        let m = self.mant.norm();
        if m == 0.0 || !m.is_finite() {
            return self;
        }
        let shift = m.ln();
        Scaled {
            mant: self.mant / m,
            log: self.log + shift,
        }
    }

    pub fn mul(self, other: Scaled) -> Scaled {
        Scaled {
            mant: self.mant * other.mant,
            log: self.log + other.log,
        }
        .normalized()
    }

    pub fn mul_value(self, v: C64) -> Scaled {
        Scaled {
            mant: self.mant * v,
            log: self.log,
        }
        .normalized()
    }

    pub fn add(self, other: Scaled) -> Scaled {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) = if self.log >= other.log {
            (self, other)
        } else {
            (other, self)
        };
        let rel = (small.log - big.log).exp();
        Scaled {
            mant: big.mant + small.mant * rel,
            log: big.log,
        }
        .normalized()
    }

    /// Collapses to an ordinary complex number (may overflow or underflow).
    pub fn value(self) -> C64 {
        if self.is_zero() {
            return self.mant;
        }
        self.mant * self.log.exp()
    }

    /// Natural log of the magnitude.
    pub fn ln_abs(&self) -> f64 {
        self.log + self.mant.norm().ln()
    }
}
