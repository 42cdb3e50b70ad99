//! Residues in `ℤ_m`, with `m = 0` standing for ℤ itself.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModulusError {
    #[error("moduli differ: {left} vs {right}")]
    Mismatch { left: BigInt, right: BigInt },
    #[error("cannot reduce from Z_{from} to Z_{to}: {to} does not divide {from}")]
    NotDivisor { from: BigInt, to: BigInt },
    #[error("modulus must be non-negative, got {0}")]
    Negative(BigInt),
    #[error("parity is undefined in Z_{0}")]
    OddModulus(BigInt),
}

/// An element of `ℤ_m`. For `m > 0` the value lies in `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicValue {
    modulus: BigInt,
    value: BigInt,
}

impl CyclicValue {
    pub fn new(value: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Result<Self, ModulusError> {
        let modulus = modulus.into();
        if modulus.is_negative() {
            return Err(ModulusError::Negative(modulus));
        }
        let value = value.into();
        let value = if modulus.is_zero() { value } else { value.mod_floor(&modulus) };
        Ok(CyclicValue { modulus, value })
    }

    /// An element of ℤ.
    pub fn integer(value: impl Into<BigInt>) -> Self {
        CyclicValue { modulus: BigInt::zero(), value: value.into() }
    }

    pub fn zero(modulus: impl Into<BigInt>) -> Result<Self, ModulusError> {
        Self::new(0, modulus)
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn is_infinite_cyclic(&self) -> bool {
        self.modulus.is_zero()
    }

    fn same_modulus(&self, other: &Self) -> Result<(), ModulusError> {
        if self.modulus != other.modulus {
            return Err(ModulusError::Mismatch { left: self.modulus.clone(), right: other.modulus.clone() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ModulusError> {
        self.same_modulus(other)?;
        Self::new(&self.value + &other.value, self.modulus.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ModulusError> {
        self.same_modulus(other)?;
        Self::new(&self.value - &other.value, self.modulus.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.value, self.modulus.clone()).expect("modulus already valid")
    }

    /// Adds an integer, reduced into this group.
    pub fn shift(&self, n: &BigInt) -> Self {
        Self::new(&self.value + n, self.modulus.clone()).expect("modulus already valid")
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        Self::new(&self.value * n, self.modulus.clone()).expect("modulus already valid")
    }

    /// Image under the projection `ℤ_m → ℤ_k`, defined when `k | m` (every `k` when `m = 0`).
    pub fn reduce_to(&self, target: &BigInt) -> Result<Self, ModulusError> {
        if target.is_negative() {
            return Err(ModulusError::Negative(target.clone()));
        }
        let ok = if target.is_zero() { self.modulus.is_zero() } else { (&self.modulus % target).is_zero() };
        if !ok {
            return Err(ModulusError::NotDivisor { from: self.modulus.clone(), to: target.clone() });
        }
        Self::new(self.value.clone(), target.clone())
    }

    /// Parity, defined when the modulus is even or zero.
    pub fn is_even(&self) -> Result<bool, ModulusError> {
        if self.modulus.is_odd() {
            return Err(ModulusError::OddModulus(self.modulus.clone()));
        }
        Ok(self.value.is_even())
    }

    /// Number of elements, `None` for ℤ.
    pub fn group_order(&self) -> Option<&BigInt> {
        (!self.modulus.is_zero()).then_some(&self.modulus)
    }
}

impl fmt::Display for CyclicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus.is_zero() {
            write!(f, "{} in Z", self.value)
        } else {
            write!(f, "{} mod {}", self.value, self.modulus)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_arithmetic() {
        let a = CyclicValue::new(-1, 6).unwrap();
        assert_eq!(a.value(), &BigInt::from(5));
        let b = CyclicValue::new(4, 6).unwrap();
        assert_eq!(a.add(&b).unwrap(), CyclicValue::new(3, 6).unwrap());
        assert_eq!(a.sub(&b).unwrap(), CyclicValue::new(1, 6).unwrap());
        assert!(a.add(&CyclicValue::new(1, 4).unwrap()).is_err());
        assert_eq!(CyclicValue::integer(-7).shift(&BigInt::from(7)), CyclicValue::integer(0));
        assert!(CyclicValue::new(1, -2).is_err());
    }

    #[test]
    fn projections() {
        let x = CyclicValue::new(7, 12).unwrap();
        assert_eq!(x.reduce_to(&BigInt::from(4)).unwrap(), CyclicValue::new(3, 4).unwrap());
        assert!(x.reduce_to(&BigInt::from(5)).is_err());
        assert!(x.reduce_to(&BigInt::zero()).is_err());
        let z = CyclicValue::integer(-3);
        assert_eq!(z.reduce_to(&BigInt::from(4)).unwrap(), CyclicValue::new(1, 4).unwrap());
        assert_eq!(z.reduce_to(&BigInt::zero()).unwrap(), z);
    }

    #[test]
    fn parity() {
        assert!(CyclicValue::new(4, 12).unwrap().is_even().unwrap());
        assert!(!CyclicValue::integer(-3).is_even().unwrap());
        assert!(CyclicValue::new(2, 3).unwrap().is_even().is_err());
    }
}
