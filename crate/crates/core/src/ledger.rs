//! Arithmetic of rotation and Seifert-surface invariants.
//!
//! Rotations, signatures and cusp counts are **inputs**: nothing here derives
//! them from a map or a surface. The ledger owns their formulas, reductions
//! (`ℤ_{4d} → ℤ_{2d} → ℤ₂`), parity gates and consistency relations. Every
//! parity gate corresponds to an integrality or evenness theorem, so a
//! violation means the census data cannot come from any generic map, and is
//! reported as a hard error.
//!
//! `d = 0` is handled by modulus-0 residues, so every formula degrades to an
//! identity in ℤ.
//!
//! Signed cusp counts are opaque integers: the sign convention of a cusp is
//! taken from whatever source produced the census. The value `R(F)` depends on
//! the spin structure of the 3-manifold; that dependence is not tracked.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclic::{CyclicValue, ModulusError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LedgerError {
    #[error("{quantity} = {value} is odd, so no generic map realizes this data")]
    Parity { quantity: &'static str, value: String },

    #[error("{0} is required but was not supplied")]
    Missing(&'static str),

    #[error("{0} must be non-negative")]
    Negative(&'static str),

    #[error("inconsistent rotation data: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Modulus(#[from] ModulusError),

    #[error("census: {0}")]
    Census(String),
}

pub type LedgerResult<T> = Result<T, LedgerError>;

fn residue(v: impl Into<BigInt>, m: &BigInt) -> CyclicValue {
    CyclicValue::new(v, m.clone()).expect("moduli here are non-negative")
}

/// Census data for one Seifert 4-manifold `W⁴` bounding an immersion, with a generic extension `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub sigma: BigInt,
    pub cusps: BigInt,
    /// `R(F)` in `ℤ_{4d}`.
    pub rotation_big: Option<CyclicValue>,
    /// `r(F)` in `ℤ_{2d}`; filled from `R(F)` when only that is given.
    pub rotation: Option<CyclicValue>,
    pub alpha: BigInt,
    pub d: BigInt,
}

impl SeifertData {
    /// Validates `α, d ≥ 0` and `R ≡ r mod 2d`; reduces the rotations into their groups.
    pub fn new(
        sigma: impl Into<BigInt>,
        cusps: impl Into<BigInt>,
        alpha: impl Into<BigInt>,
        d: impl Into<BigInt>,
        rotation_big: Option<BigInt>,
        rotation: Option<BigInt>,
    ) -> LedgerResult<Self> {
        let (alpha, d) = (alpha.into(), d.into());
        if alpha.is_negative() {
            return Err(LedgerError::Negative("alpha"));
        }
        if d.is_negative() {
            return Err(LedgerError::Negative("d"));
        }
        let big = rotation_big.map(|v| residue(v, &(&d * 4)));
        let small = rotation.map(|v| residue(v, &(&d * 2)));
        let small = match (&big, small) {
            (Some(b), Some(s)) => {
                let reduced = b.reduce_to(s.modulus())?;
                if reduced != s {
                    return Err(LedgerError::Inconsistent(format!("R = {b} reduces to {reduced}, but r = {s}")));
                }
                Some(s)
            }
            (Some(b), None) => Some(b.reduce_to(&(&d * 2))?),
            (None, s) => s,
        };
        Ok(SeifertData { sigma: sigma.into(), cusps: cusps.into(), rotation_big: big, rotation: small, alpha, d })
    }

    /// `3σ − 3α + #cusps`.
    fn base(&self) -> BigInt {
        (&self.sigma - &self.alpha) * 3 + &self.cusps
    }
}

/// Rotation data of one framed curve `(C, ν)` against a fixed reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedCurveRecord {
    pub label: String,
    /// `r` in `ℤ_{2d}`.
    pub rotation: CyclicValue,
    /// `r₂` in `ℤ₂`.
    pub rotation_mod2: CyclicValue,
    /// `R` in `ℤ_{4d}`.
    pub rotation_big: Option<CyclicValue>,
}

impl FramedCurveRecord {
    /// Values are reduced into `ℤ_{2d}`, `ℤ₂`, `ℤ_{4d}`; congruences are not checked here.
    pub fn new(
        label: impl Into<String>,
        d: impl Into<BigInt>,
        r: impl Into<BigInt>,
        r2: impl Into<BigInt>,
        big: Option<BigInt>,
    ) -> LedgerResult<Self> {
        let d = d.into();
        if d.is_negative() {
            return Err(LedgerError::Negative("d"));
        }
        Ok(FramedCurveRecord {
            label: label.into(),
            rotation: residue(r, &(&d * 2)),
            rotation_mod2: residue(r2, &BigInt::from(2)),
            rotation_big: big.map(|v| residue(v, &(&d * 4))),
        })
    }
}

/// `r_x − r_y` in `ℤ_{2d}`.
pub fn rotation_difference(x: &FramedCurveRecord, y: &FramedCurveRecord) -> LedgerResult<CyclicValue> {
    Ok(x.rotation.sub(&y.rotation)?)
}

/// Whether `R ↦ r ↦ r₂` are compatible reductions (`R ≡ r mod 2d`, `r ≡ r₂ mod 2`).
pub fn lift_check(x: &FramedCurveRecord) -> bool {
    let two = BigInt::from(2);
    let big_ok = match &x.rotation_big {
        Some(b) => b.reduce_to(x.rotation.modulus()).is_ok_and(|v| v == x.rotation),
        None => true,
    };
    big_ok && x.rotation.reduce_to(&two).is_ok_and(|v| v == x.rotation_mod2)
}

fn halve(quantity: &'static str, v: BigInt) -> LedgerResult<BigInt> {
    if v.is_odd() {
        return Err(LedgerError::Parity { quantity, value: v.to_string() });
    }
    Ok(v / 2)
}

/// Smale invariant `(3σ + #cusps)/2` of an immersion bounded by a generic map.
pub fn smale_invariant(sigma: &BigInt, cusps: &BigInt) -> LedgerResult<BigInt> {
    halve("3σ + cusps", sigma * 3i32 + cusps)
}

/// For a generic map of a closed oriented 4-manifold, `3σ + #cusps = 0`.
pub fn closed_cusp_check(sigma: &BigInt, cusps: &BigInt) -> bool {
    (sigma * 3i32 + cusps).is_zero()
}

/// Trivial-normal-bundle invariant `(3(σ − α) + #cusps)/2`.
pub fn takase_i(sigma: &BigInt, alpha: &BigInt, cusps: &BigInt) -> LedgerResult<BigInt> {
    if alpha.is_negative() {
        return Err(LedgerError::Negative("alpha"));
    }
    halve("3(σ − α) + cusps", (sigma - alpha) * 3 + cusps)
}

/// `I = 3σ − 3α + #cusps + R` in `ℤ_{4d}`; always even for realizable data.
#[allow(non_snake_case)]
pub fn invariant_I(data: &SeifertData) -> LedgerResult<CyclicValue> {
    let big = data.rotation_big.as_ref().ok_or(LedgerError::Missing("R"))?;
    let value = big.shift(&data.base());
    if !value.is_even()? {
        return Err(LedgerError::Parity { quantity: "I", value: value.to_string() });
    }
    Ok(value)
}

/// Halving isomorphism `2ℤ_{4d} → ℤ_{2d}`.
#[allow(non_snake_case)]
pub fn invariant_i_from_I(big_i: &CyclicValue) -> LedgerResult<CyclicValue> {
    let m = big_i.modulus();
    if !(m % 4u32).is_zero() {
        return Err(LedgerError::Inconsistent(format!("I must live in Z_(4d), got modulus {m}")));
    }
    if !big_i.is_even()? {
        return Err(LedgerError::Parity { quantity: "I", value: big_i.to_string() });
    }
    Ok(residue(big_i.value() / 2, &(m / 2)))
}

/// `j = 3σ − 3α + #cusps + r` in `ℤ_{2d}`; checked against `2·(I/2)` when `R` is present.
pub fn invariant_j(data: &SeifertData) -> LedgerResult<CyclicValue> {
    let r = data.rotation.as_ref().ok_or(LedgerError::Missing("r"))?;
    let j = r.shift(&data.base());
    if !j.is_even()? {
        return Err(LedgerError::Parity { quantity: "j", value: j.to_string() });
    }
    if data.rotation_big.is_some() {
        let i = invariant_i_from_I(&invariant_I(data)?)?;
        let twice = i.scale(&BigInt::from(2));
        if twice != j {
            return Err(LedgerError::Inconsistent(format!("j = {j} but 2i = {twice}")));
        }
    }
    Ok(j)
}

/// Whether two Seifert data sets can bound the same immersion.
///
/// Requires equal `d` and `α` and an `r` (possibly derived from `R`) on both
/// sides; compares `3σ + #cusps + r` mod `2d`, and `3σ + #cusps + R` mod `4d`
/// when both carry `R`.
pub fn seifert_consistency(a: &SeifertData, b: &SeifertData) -> bool {
    if a.d != b.d || a.alpha != b.alpha {
        return false;
    }
    let key = |x: &SeifertData, rot: &CyclicValue| rot.shift(&(&x.sigma * 3 + &x.cusps));
    let small = match (&a.rotation, &b.rotation) {
        (Some(ra), Some(rb)) => key(a, ra) == key(b, rb),
        _ => return false,
    };
    let big = match (&a.rotation_big, &b.rotation_big) {
        (Some(ra), Some(rb)) => key(a, ra) == key(b, rb),
        _ => true,
    };
    small && big
}

/// A census document: labelled Seifert data and framed-curve records.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Census {
    #[serde(default)]
    pub seifert: Vec<SeifertEntry>,
    #[serde(default)]
    pub curves: Vec<CurveEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeifertEntry {
    pub label: String,
    pub sigma: i64,
    pub cusps: i64,
    #[serde(default)]
    pub alpha: i64,
    #[serde(default)]
    pub d: i64,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub rotation_big: Option<i64>,
    #[serde(rename = "r", default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveEntry {
    pub label: String,
    #[serde(default)]
    pub d: i64,
    pub r: i64,
    pub r2: i64,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub rotation_big: Option<i64>,
}

impl SeifertEntry {
    pub fn to_data(&self) -> LedgerResult<SeifertData> {
        SeifertData::new(
            self.sigma,
            self.cusps,
            self.alpha,
            self.d,
            self.rotation_big.map(BigInt::from),
            self.rotation.map(BigInt::from),
        )
        .map_err(|e| LedgerError::Census(format!("{}: {e}", self.label)))
    }
}

impl CurveEntry {
    pub fn to_record(&self) -> LedgerResult<FramedCurveRecord> {
        FramedCurveRecord::new(self.label.clone(), self.d, self.r, self.r2, self.rotation_big.map(BigInt::from))
    }
}

impl Census {
    pub fn parse(text: &str) -> LedgerResult<Self> {
        let census: Census = serde_json::from_str(text).map_err(|e| LedgerError::Census(e.to_string()))?;
        let mut labels: Vec<&str> = census
            .seifert
            .iter()
            .map(|s| s.label.as_str())
            .chain(census.curves.iter().map(|c| c.label.as_str()))
            .collect();
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(LedgerError::Census(format!("duplicate label {:?}", w[0])));
        }
        Ok(census)
    }

    pub fn seifert(&self, label: &str) -> LedgerResult<SeifertData> {
        self.seifert
            .iter()
            .find(|s| s.label == label)
            .ok_or_else(|| LedgerError::Census(format!("no Seifert entry labelled {label:?}")))?
            .to_data()
    }

    pub fn curve(&self, label: &str) -> LedgerResult<FramedCurveRecord> {
        self.curves
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| LedgerError::Census(format!("no curve labelled {label:?}")))?
            .to_record()
    }
}
