//! Connected-sum arithmetic on complete invariants `(c, i)`.
//!
//! Connected sum acts on algebraic summaries only: `H¹` and `H²` add as direct
//! sums, Wu classes concatenate, `d(χ)` becomes `gcd(d_A, d_B)` (with
//! `gcd(0, 0) = 0`), and the fiber labels add after reduction mod `2d(χ)`.
//!
//! Summands are kept in a canonical order (sorted by modulus, free summands
//! first, then by component), so `A # B` and `B # A` have identical normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::classification::{ImmersionClass, ManifoldAlgebra};
use crate::cyclic::CyclicValue;
use crate::error::Result;
use crate::homology::{cohomology, Coefficients, GroupShape};

/// Cyclic decompositions of `H¹` and `H²`, one modulus per summand (0 for ℤ).
/// `H³ ≅ ℤ` for every closed oriented connected 3-manifold and is not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HomologySummary {
    pub h1: Vec<BigInt>,
    pub h2: Vec<BigInt>,
}

fn summand_key(m: &BigInt) -> (bool, BigInt) {
    (!m.is_zero(), m.clone())
}

impl HomologySummary {
    pub fn new(mut h1: Vec<BigInt>, mut h2: Vec<BigInt>) -> Self {
        h1.sort_by_key(summand_key);
        h2.sort_by_key(summand_key);
        HomologySummary { h1, h2 }
    }

    pub fn h1_shape(&self) -> GroupShape {
        GroupShape::from_cyclic(&self.h1)
    }

    pub fn h2_shape(&self) -> GroupShape {
        GroupShape::from_cyclic(&self.h2)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(
            self.h1.iter().chain(&other.h1).cloned().collect(),
            self.h2.iter().chain(&other.h2).cloned().collect(),
        )
    }
}

/// An element of the connected-sum semigroup of immersion classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemigroupElement {
    summary: HomologySummary,
    /// One component per `H²` summand, each carrying that summand's modulus.
    c: Vec<CyclicValue>,
    /// `d(χ)` for `χ = 2c`.
    d: BigInt,
    /// Fiber label in `ℤ_{2d}`.
    i: CyclicValue,
}

fn sort_components(c: &mut [CyclicValue]) {
    c.sort_by(|a, b| summand_key(a.modulus()).cmp(&summand_key(b.modulus())).then_with(|| a.value().cmp(b.value())));
}

impl SemigroupElement {
    /// Arbitrary `(summary, c, d, i)` data; `i` is reduced mod `2d`. Negative `d` is taken in absolute value.
    pub fn raw(summary: HomologySummary, mut c: Vec<CyclicValue>, d: impl Into<BigInt>, i: impl Into<BigInt>) -> Self {
        let d = num_traits::Signed::abs(&d.into());
        sort_components(&mut c);
        let i = CyclicValue::new(i, &d * 2).expect("non-negative modulus");
        SemigroupElement { summary, c, d, i }
    }

    /// The element of an immersion class: `d = d(2c) = 2d(c)`, `i` in `ℤ_{4d(c)}`.
    pub fn from_class(alg: &ManifoldAlgebra, class: &ImmersionClass) -> Result<Self> {
        let h2 = alg.h2();
        h2.check(&class.c)?;
        let h1 = cohomology(alg.presentation(), 1, Coefficients::Integers)?;
        let summary = HomologySummary::new(h1.moduli(), h2.moduli());
        let c = class
            .c
            .coords()
            .iter()
            .zip(h2.moduli())
            .map(|(v, m)| CyclicValue::new(v.clone(), m).expect("non-negative modulus"))
            .collect();
        let d = alg.divisibility(&class.c)? * 2;
        Ok(Self::raw(summary, c, d, class.i.value().clone()))
    }

    /// The sphere class with fiber label `n ∈ ℤ`.
    pub fn sphere(n: impl Into<BigInt>) -> Self {
        Self::raw(HomologySummary::default(), vec![], 0, n)
    }

    pub fn summary(&self) -> &HomologySummary {
        &self.summary
    }

    pub fn c(&self) -> &[CyclicValue] {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn i(&self) -> &CyclicValue {
        &self.i
    }

    /// `d` recomputed from the free components of `c`: `2·gcd`.
    pub fn d_from_c(&self) -> BigInt {
        let g = self.c.iter().filter(|x| x.is_infinite_cyclic()).fold(BigInt::zero(), |g, x| g.gcd(x.value()));
        g * 2
    }

    /// `A # B`.
    pub fn connected_sum(&self, other: &Self) -> Self {
        let d = self.d.gcd(&other.d);
        let m = &d * 2;
        let reduce = |v: &CyclicValue| v.reduce_to(&m).expect("2·gcd divides both moduli");
        let i = reduce(&self.i).add(&reduce(&other.i)).expect("same modulus");
        Self::raw(
            self.summary.direct_sum(&other.summary),
            self.c.iter().chain(&other.c).cloned().collect(),
            d,
            i.value().clone(),
        )
    }

    /// `A # (S³ with label n)`: same `c`, `i ← i + n`.
    pub fn sum_with_sphere(&self, n: impl Into<BigInt>) -> Self {
        SemigroupElement { i: self.i.shift(&n.into()), ..self.clone() }
    }

    /// `{i + n : n ∈ ℤ}` enumerated over `n = 0..2d`; requires `d > 0`.
    pub fn sphere_orbit(&self) -> Option<Vec<CyclicValue>> {
        let m = self.i.group_order()?.clone();
        let mut out = Vec::new();
        let mut n = BigInt::zero();
        while n < m {
            out.push(self.sum_with_sphere(n.clone()).i);
            n += 1;
        }
        Some(out)
    }
}

impl fmt::Display for SemigroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
        write!(f, "H2 = {}, c = ({}), d = {}, i = {}", self.summary.h2_shape(), c.join(", "), self.d, self.i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::builtin;
    use proptest::prelude::*;

    fn bare(d: i64, i: i64) -> SemigroupElement {
        SemigroupElement::raw(HomologySummary::default(), vec![], d, i)
    }

    #[test]
    fn gcd_example() {
        let s = bare(2, 3).connected_sum(&bare(3, 5));
        assert_eq!(s.d(), &BigInt::from(1));
        assert_eq!(s.i(), &CyclicValue::new(0, 2).unwrap());
    }

    #[test]
    fn sphere_shift_examples() {
        assert_eq!(bare(3, 5).sum_with_sphere(4).i(), &CyclicValue::new(3, 6).unwrap());
        assert_eq!(bare(0, 7).sum_with_sphere(-7).i(), &CyclicValue::integer(0));
        assert_eq!(bare(3, 5).sum_with_sphere(0), bare(3, 5));
        let a = bare(4, 1);
        assert_eq!(a.connected_sum(&SemigroupElement::sphere(9)), a.sum_with_sphere(9));
    }

    #[test]
    fn torsion_classes_add_in_z() {
        let s = bare(0, 7).connected_sum(&bare(0, -3));
        assert_eq!(s.i(), &CyclicValue::integer(4));
    }

    #[test]
    fn from_builtin_classes() {
        let t = builtin("T3").unwrap();
        let alg = ManifoldAlgebra::from_builtin(&t).unwrap();
        let c = alg.h2().class_i64(&[2, 0, 6]).unwrap();
        let e = SemigroupElement::from_class(&alg, &ImmersionClass::new(&alg, c, 13).unwrap()).unwrap();
        assert_eq!(e.d(), &BigInt::from(4));
        assert_eq!(e.d_from_c(), BigInt::from(4));
        assert_eq!(e.i(), &CyclicValue::new(5, 8).unwrap());

        let rp3 = ManifoldAlgebra::from_builtin(&builtin("L(2,1)").unwrap()).unwrap();
        let w = rp3.h2().generator(0);
        let f = SemigroupElement::from_class(&rp3, &ImmersionClass::new(&rp3, w, -2).unwrap()).unwrap();
        assert_eq!(f.summary().h2, vec![BigInt::from(2)]);
        let sum = e.connected_sum(&f);
        assert_eq!(sum.summary().h2_shape().to_string(), "Z^3 + Z_2");
        assert_eq!(sum.d(), &BigInt::from(4));
        assert_eq!(sum.i(), &CyclicValue::new(3, 8).unwrap());
    }

    fn element() -> impl Strategy<Value = SemigroupElement> {
        (
            prop::collection::vec((-6i64..=6, 0usize..3), 0..3),
            prop::collection::vec(prop::sample::select(vec![0i64, 2, 3, 4]), 0..2),
            -50i64..50,
        )
            .prop_map(|(free, tors, i)| {
                let mut c: Vec<CyclicValue> = free.iter().map(|&(v, _)| CyclicValue::integer(v)).collect();
                c.extend(tors.iter().filter(|&&m| m > 0).map(|&m| CyclicValue::new(1, m).unwrap()));
                let h2: Vec<BigInt> = c.iter().map(|x| x.modulus().clone()).collect();
                let summary = HomologySummary::new(h2.clone(), h2);
                let d = free.iter().fold(0i64, |g, &(v, _)| g.gcd(&v)) * 2;
                SemigroupElement::raw(summary, c, d, i)
            })
    }

    proptest! {
        #[test]
        fn commutative(a in element(), b in element()) {
            prop_assert_eq!(a.connected_sum(&b), b.connected_sum(&a));
        }

        #[test]
        fn associative(a in element(), b in element(), c in element()) {
            prop_assert_eq!(a.connected_sum(&b).connected_sum(&c), a.connected_sum(&b.connected_sum(&c)));
        }

        #[test]
        fn gcd_law(a in element(), b in element()) {
            let s = a.connected_sum(&b);
            prop_assert_eq!(s.i().modulus(), &(a.d().gcd(b.d()) * 2));
            prop_assert_eq!(s.d_from_c(), s.d().clone());
        }

        #[test]
        fn sphere_sums_keep_c(a in element(), n in -100i64..100) {
            let s = a.sum_with_sphere(n);
            prop_assert_eq!(s.c(), a.c());
            prop_assert_eq!(a.connected_sum(&SemigroupElement::sphere(0)), a.clone());
        }
    }

    #[test]
    fn orbit_is_everything() {
        for d in 1..=12 {
            let orbit = bare(d, 5).sphere_orbit().unwrap();
            let mut values: Vec<BigInt> = orbit.iter().map(|v| v.value().clone()).collect();
            values.sort();
            values.dedup();
            assert_eq!(values.len() as i64, 2 * d);
        }
        assert!(bare(0, 1).sphere_orbit().is_none());
    }
}
