//! Scalar abstraction: the exact fields the linear-algebra kernel works over.
//!
//! Everything downstream of [`crate::linalg`] is generic over a [`Field`].
//! The two instances shipped here are the rationals ([`Rat`]) and the prime
//! residue fields ([`Fp`]).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// An exact field scalar. Blanket-implemented for anything with the right
/// arithmetic; `BigRational` and [`Fp`] both qualify.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Div<Output = T>
{
}

/// Arbitrary-precision rational, the base field for all exact modules.
pub type Rat = num_rational::BigRational;

/// Build a rational from an integer pair, reducing as `BigRational` does.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

/// Shorthand for an integer rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Best-effort conversion of a big rational to `f64`.
pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// An element of the prime field `F_p` with a runtime modulus.
///
/// `Zero::zero()` and `One::one()` cannot know a modulus, so elements carry
/// `p = 0` as "unbound"; arithmetic unifies moduli and panics on a genuine
/// mismatch. Values are kept reduced whenever the modulus is known, and
/// equality reduces an unbound side modulo the bound one.
#[derive(Clone, Copy, Debug, Eq)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl PartialEq for Fp {
    fn eq(&self, other: &Fp) -> bool {
        match (self.modulus, other.modulus) {
            (0, 0) => self.value == other.value,
            (0, p) => self.value % p == other.value,
            (p, 0) => self.value == other.value % p,
            (p, q) => p == q && self.value == other.value,
        }
    }
}

impl Fp {
    pub fn new(value: i64, p: u64) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        let m = p as i64;
        let v = ((value % m) + m) % m;
        Fp {
            value: v as u64,
            modulus: p,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn unify(a: u64, b: u64) -> u64 {
        match (a, b) {
            (0, p) | (p, 0) => p,
            (p, q) => {
                assert_eq!(p, q, "mixed moduli {p} and {q}");
                p
            }
        }
    }

    fn reduced(value: u64, modulus: u64) -> Self {
        let value = if modulus == 0 { value } else { value % modulus };
        Fp { value, modulus }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let p = Fp::unify(self.modulus, rhs.modulus);
        Fp::reduced(self.value + rhs.value, p)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let p = Fp::unify(self.modulus, rhs.modulus);
        if p == 0 {
            // only reachable for unbound 0/1 constants
            assert!(self.value >= rhs.value, "unbound Fp underflow");
            return Fp::reduced(self.value - rhs.value, 0);
        }
        Fp::reduced(self.value + p - (rhs.value % p), p)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let p = Fp::unify(self.modulus, rhs.modulus);
        Fp::reduced(self.value * rhs.value, p)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.value == 0 {
            return self;
        }
        assert!(self.modulus != 0, "cannot negate an unbound Fp");
        Fp::reduced(self.modulus - self.value, self.modulus)
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp) -> Fp {
        assert!(rhs.value != 0, "division by zero in F_p");
        let p = Fp::unify(self.modulus, rhs.modulus);
        assert!(p != 0, "cannot invert an unbound Fp");
        self * Fp::reduced(mod_inverse(rhs.value % p, p), p)
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp {
            value: 0,
            modulus: 0,
        }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp {
            value: 1,
            modulus: 0,
        }
    }
}

/// Inverse of `a` mod `p` by extended Euclid; `a` must be nonzero mod `p`.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "{a} is not invertible mod {p}");
    (((t0 % p as i128) + p as i128) % p as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let p = 7;
        let a = Fp::new(3, p);
        let b = Fp::new(5, p);
        assert_eq!(a + b, Fp::new(1, p));
        assert_eq!(a * b, Fp::new(1, p));
        assert_eq!(a - b, Fp::new(-2, p));
        assert_eq!(a / b, Fp::new(3, p) * Fp::new(3, p));
        assert_eq!(-a, Fp::new(4, p));
    }

    #[test]
    fn fp_unbound_constants_unify() {
        let a = Fp::new(4, 5);
        assert_eq!(a + Fp::zero(), a);
        assert_eq!(a * Fp::one(), a);
        assert!(Fp::zero().is_zero());
    }

    #[test]
    fn mod_inverse_small() {
        for p in [2u64, 3, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(a * mod_inverse(a, p) % p, 1);
            }
        }
    }

    #[test]
    fn rat_helpers() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rint(3) + rat(1, 2), rat(7, 2));
    }
}
