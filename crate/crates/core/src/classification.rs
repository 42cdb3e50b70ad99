//! Regular-homotopy classification of immersions `M³ → ℝ⁵` and of maps `M³ → S²`.
//!
//! For a normal Euler class χ the immersions with that class are indexed by
//! the Wu invariants `c ∈ Γ₂(χ) = {c : 2c = χ}`, each carrying a fiber
//! `H³/(2χ ∪ H¹) ≅ ℤ_{2d(χ)}`. Summing over χ gives one fiber `ℤ_{4d(c)}` per
//! `c ∈ H²`. Modulus 0 means ℤ throughout.
//!
//! The fiber invariant `i` is only pinned down after choosing base immersions
//! and a spin structure, so its values are labels in a torsor: this module
//! fixes label 0 per Wu class, and only differences of labels are canonical.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::ChainPresentation;
use crate::cup::CupPairing;
use crate::cyclic::CyclicValue;
use crate::error::Result;
use crate::homology::{cohomology, divisibility, halves, Coefficients, FgAbelianGroup, GroupClass, GroupShape};
use crate::library::BuiltinManifold;

/// Size of a set that may be infinite.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cardinality {
    Finite(BigInt),
    Infinite,
}

impl Cardinality {
    /// Cardinality of `ℤ_m`.
    pub fn of_cyclic(modulus: &BigInt) -> Self {
        if modulus.is_zero() {
            Cardinality::Infinite
        } else {
            Cardinality::Finite(modulus.clone())
        }
    }

    pub fn times(&self, other: &Cardinality) -> Cardinality {
        use Cardinality::*;
        match (self, other) {
            (Finite(a), _) | (_, Finite(a)) if a.is_zero() => Finite(BigInt::zero()),
            (Finite(a), Finite(b)) => Finite(a * b),
            _ => Infinite,
        }
    }

    pub fn plus(&self, other: &Cardinality) -> Cardinality {
        use Cardinality::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => Infinite,
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => write!(f, "infinite"),
        }
    }
}

/// Cohomology and cup data of one manifold, computed once.
#[derive(Clone, Debug)]
pub struct ManifoldAlgebra {
    presentation: ChainPresentation,
    h2: FgAbelianGroup,
    h2_mod2: FgAbelianGroup,
    cup: Option<CupPairing>,
}

impl ManifoldAlgebra {
    pub fn new(presentation: ChainPresentation, cup: Option<CupPairing>) -> Result<Self> {
        let h2 = match &cup {
            Some(c) => c.h2().clone(),
            None => cohomology(&presentation, 2, Coefficients::Integers)?,
        };
        let h2_mod2 = cohomology(&presentation, 2, Coefficients::Mod2)?;
        Ok(ManifoldAlgebra { presentation, h2, h2_mod2, cup })
    }

    pub fn from_builtin(m: &BuiltinManifold) -> Result<Self> {
        Self::new(m.presentation.clone(), Some(m.cup_pairing()?))
    }

    pub fn presentation(&self) -> &ChainPresentation {
        &self.presentation
    }

    pub fn h2(&self) -> &FgAbelianGroup {
        &self.h2
    }

    pub fn cup(&self) -> Option<&CupPairing> {
        self.cup.as_ref()
    }

    pub fn divisibility(&self, cls: &GroupClass) -> Result<BigInt> {
        divisibility(&self.h2, cls)
    }

    /// Index of `2χ ∪ H¹` in `H³ ≅ ℤ`, when cup data is present.
    pub fn cup_index(&self, chi: &GroupClass) -> Result<Option<BigInt>> {
        self.cup.as_ref().map(|c| c.index_two_chi_cup_h1(chi)).transpose()
    }
}

/// A complete invariant `(c, i)`: Wu class and fiber label in `ℤ_{4d(c)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ImmersionClass {
    pub c: GroupClass,
    pub i: CyclicValue,
}

impl ImmersionClass {
    /// The class with Wu invariant `c` and fiber label `i` reduced mod `4d(c)`.
    pub fn new(alg: &ManifoldAlgebra, c: GroupClass, i: impl Into<BigInt>) -> Result<Self> {
        let modulus = alg.divisibility(&c)? * 4;
        let i = CyclicValue::new(i, modulus).expect("modulus is non-negative");
        Ok(ImmersionClass { c, i })
    }

    /// Normal Euler class `χ = 2c`.
    pub fn euler_class(&self, alg: &ManifoldAlgebra) -> Result<GroupClass> {
        alg.h2().scale(&self.c, &BigInt::from(2))
    }
}

/// One normal Euler class χ with its Wu classes and fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiRow {
    pub chi: GroupClass,
    pub divisibility: BigInt,
    /// `Γ₂(χ)`; empty when χ is not a normal Euler class.
    pub halves: Vec<GroupClass>,
    /// `2d(χ)`.
    pub fiber_modulus: BigInt,
    /// Index of `2χ ∪ H¹` in `H³`, when cup data is present.
    pub cup_index: Option<BigInt>,
}

impl ChiRow {
    pub fn is_normal_euler_class(&self) -> bool {
        !self.halves.is_empty()
    }

    /// Whether the cup index agrees with `2d(χ)`; `None` without cup data.
    pub fn duality_holds(&self) -> Option<bool> {
        self.cup_index.as_ref().map(|k| *k == self.fiber_modulus)
    }

    /// Number of immersion classes with this normal Euler class.
    pub fn class_count(&self) -> Cardinality {
        Cardinality::Finite(BigInt::from(self.halves.len())).times(&Cardinality::of_cyclic(&self.fiber_modulus))
    }
}

/// One Wu class `c` with its fiber `ℤ_{4d(c)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WuRow {
    pub c: GroupClass,
    pub divisibility: BigInt,
    /// `4d(c)`.
    pub fiber_modulus: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationTable {
    pub h2: GroupShape,
    /// Free coordinates of swept classes lie in `[-window, window]`.
    pub window: u32,
    pub wu_rows: Vec<WuRow>,
    pub chi_rows: Vec<ChiRow>,
    /// `|H²|`, the number of Wu classes.
    pub wu_classes: Cardinality,
    /// Always infinite: the Wu class 0 has fiber ℤ.
    pub total: Cardinality,
    pub description: String,
}

impl ClassificationTable {
    /// Checks `|Γ₂(χ)|·|ℤ_{2d(χ)}| = Σ_{c∈Γ₂(χ)} |ℤ_{4d(c)}|` on every χ row.
    pub fn check_consistency(&self, alg: &ManifoldAlgebra) -> Result<bool> {
        for row in &self.chi_rows {
            let mut sum = Cardinality::Finite(BigInt::zero());
            for c in &row.halves {
                let m = alg.divisibility(c)? * 4;
                sum = sum.plus(&Cardinality::of_cyclic(&m));
            }
            if sum != row.class_count() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn symbolic_description(h2: &GroupShape) -> String {
    if h2.free_rank == 0 {
        format!(
            "Imm[M,R^5] = disjoint union over the {} classes c in H^2 = {h2} of Z (every fiber is Z)",
            h2.torsion.iter().product::<BigInt>()
        )
    } else {
        let vars: Vec<String> = (1..=h2.free_rank).map(|i| format!("c{i}")).collect();
        format!(
            "Imm[M,R^5] = disjoint union over c in H^2 = {h2} of Z_(4*gcd({})), read as Z when c{} = 0",
            vars.join(","),
            if h2.free_rank == 1 { String::new() } else { format!("1..c{}", h2.free_rank) }
        )
    }
}

/// Row for a single χ: `Γ₂(χ)`, `ℤ_{2d(χ)}`, and the cup-index cross-check.
pub fn classify_chi(alg: &ManifoldAlgebra, chi: &GroupClass) -> Result<ChiRow> {
    let d = alg.divisibility(chi)?;
    Ok(ChiRow {
        chi: chi.clone(),
        halves: halves(alg.h2(), chi)?,
        fiber_modulus: &d * 2,
        divisibility: d,
        cup_index: alg.cup_index(chi)?,
    })
}

/// Wu rows for every `c` in the window, χ rows for every χ in the window, and the symbolic union.
pub fn classify(alg: &ManifoldAlgebra, window: u32) -> Result<ClassificationTable> {
    let h2 = alg.h2();
    let classes = h2.elements_in_window(window);
    let mut wu_rows = Vec::with_capacity(classes.len());
    let mut chi_rows = Vec::with_capacity(classes.len());
    for cls in &classes {
        let d = alg.divisibility(cls)?;
        wu_rows.push(WuRow { c: cls.clone(), fiber_modulus: &d * 4, divisibility: d });
        chi_rows.push(classify_chi(alg, cls)?);
    }
    let wu_classes = match h2.order() {
        Some(n) => Cardinality::Finite(n),
        None => Cardinality::Infinite,
    };
    Ok(ClassificationTable {
        h2: h2.shape().clone(),
        window,
        wu_rows,
        chi_rows,
        wu_classes,
        total: Cardinality::Infinite,
        description: symbolic_description(h2.shape()),
    })
}

/// One framed-cobordism family `χ` of maps `M³ → S²` with fiber `ℤ_{2d(χ)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S2Row {
    pub chi: GroupClass,
    pub divisibility: BigInt,
    pub fiber_modulus: BigInt,
    pub cup_index: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S2Table {
    pub h2: GroupShape,
    pub window: u32,
    pub rows: Vec<S2Row>,
}

/// `[M³, S²] ≅ ⊔_{χ ∈ H²} ℤ_{2d(χ)}`; every χ occurs, even or not.
pub fn maps_to_s2(alg: &ManifoldAlgebra, window: u32) -> Result<S2Table> {
    let rows = alg
        .h2()
        .elements_in_window(window)
        .into_iter()
        .map(|chi| {
            let d = alg.divisibility(&chi)?;
            Ok(S2Row { fiber_modulus: &d * 2, divisibility: d, cup_index: alg.cup_index(&chi)?, chi })
        })
        .collect::<Result<_>>()?;
    Ok(S2Table { h2: alg.h2().shape().clone(), window, rows })
}

/// The four terms of `H²(M;ℤ₂) → [M,S²] → Imm[M,ℝ⁵] → ℤ₂ → 0`.
///
/// Only the terms are computed; the maps between them are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequenceReport {
    pub h2_mod2: GroupShape,
    pub maps_to_s2: S2Table,
    pub immersions: ClassificationTable,
    pub last: BigInt,
}

pub fn exact_sequence_report(alg: &ManifoldAlgebra, window: u32) -> Result<ExactSequenceReport> {
    Ok(ExactSequenceReport {
        h2_mod2: alg.h2_mod2.shape().clone(),
        maps_to_s2: maps_to_s2(alg, window)?,
        immersions: classify(alg, window)?,
        last: BigInt::from(2),
    })
}

/// Reference classes in the natural cochain basis, for presentations whose
/// 2-cochains are all cocycles.
pub fn class_from_cochain(alg: &ManifoldAlgebra, cochain: &[i64]) -> Result<GroupClass> {
    let v: Vec<BigInt> = cochain.iter().map(|&x| x.into()).collect();
    alg.h2().express(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::builtin;
    use num_integer::Integer;
    use num_traits::One;

    fn alg(name: &str) -> ManifoldAlgebra {
        ManifoldAlgebra::from_builtin(&builtin(name).unwrap()).unwrap()
    }

    #[test]
    fn sphere_has_one_row_with_fiber_z() {
        let a = alg("S3");
        let t = classify(&a, 3).unwrap();
        assert_eq!(t.wu_rows.len(), 1);
        assert!(t.wu_rows[0].fiber_modulus.is_zero());
        assert_eq!(t.wu_classes, Cardinality::Finite(BigInt::one()));
        assert_eq!(t.total, Cardinality::Infinite);
        assert!(t.check_consistency(&a).unwrap());
    }

    #[test]
    fn s1xs2_rows() {
        let a = alg("S1xS2");
        let t = classify(&a, 4).unwrap();
        assert_eq!(t.wu_rows.len(), 9);
        for row in &t.wu_rows {
            let k = row.c.coords()[0].clone();
            assert_eq!(row.fiber_modulus, BigInt::from(k.magnitude().clone()) * 4);
        }
        let g = class_from_cochain(&a, &[1]).unwrap();
        let two_g = a.h2().scale(&g, &BigInt::from(2)).unwrap();
        let row = classify_chi(&a, &two_g).unwrap();
        assert_eq!(row.halves, vec![g.clone()]);
        assert_eq!(row.fiber_modulus, BigInt::from(4));
        assert_eq!(row.duality_holds(), Some(true));
        let odd = classify_chi(&a, &g).unwrap();
        assert!(!odd.is_normal_euler_class());
        assert_eq!(odd.class_count(), Cardinality::Finite(BigInt::zero()));
    }

    #[test]
    fn rp3_has_two_wu_classes_with_fiber_z() {
        let a = alg("L(2,1)");
        let t = classify(&a, 2).unwrap();
        assert_eq!(t.wu_rows.len(), 2);
        assert!(t.wu_rows.iter().all(|r| r.fiber_modulus.is_zero()));
        let zero_row = classify_chi(&a, &a.h2().zero()).unwrap();
        assert_eq!(zero_row.halves.len(), 2);
        assert_eq!(zero_row.cup_index, Some(BigInt::zero()));
    }

    #[test]
    fn maps_to_s2_examples() {
        let s3 = maps_to_s2(&alg("S3"), 3).unwrap();
        assert_eq!(s3.rows.len(), 1);
        assert!(s3.rows[0].fiber_modulus.is_zero());

        let a = alg("S1xS2");
        let g = class_from_cochain(&a, &[1]).unwrap();
        let table = maps_to_s2(&a, 2).unwrap();
        let row = table.rows.iter().find(|r| r.chi == g).unwrap();
        assert_eq!(row.fiber_modulus, BigInt::from(2));

        let t = alg("T3");
        let beta1 = class_from_cochain(&t, &[1, 0, 0]).unwrap();
        let row = maps_to_s2(&t, 1).unwrap().rows.into_iter().find(|r| r.chi == beta1).unwrap();
        assert_eq!(row.fiber_modulus, BigInt::from(2));
        assert_eq!(row.cup_index, Some(BigInt::from(2)));
    }

    #[test]
    fn exact_sequence_terms() {
        let s3 = exact_sequence_report(&alg("S3"), 1).unwrap();
        assert_eq!(s3.h2_mod2, GroupShape::trivial());
        assert_eq!(s3.last, BigInt::from(2));
        let rp3 = exact_sequence_report(&alg("L(2,1)"), 1).unwrap();
        assert_eq!(rp3.h2_mod2.torsion.len(), 1);
        let t3 = exact_sequence_report(&alg("T3"), 1).unwrap();
        assert_eq!(t3.h2_mod2.torsion.len(), 3);
        assert_eq!(t3.h2_mod2.free_rank, 0);
    }

    #[test]
    fn immersion_class_modulus() {
        let a = alg("T3");
        let c = class_from_cochain(&a, &[2, 4, 0]).unwrap();
        let f = ImmersionClass::new(&a, c.clone(), 11).unwrap();
        assert_eq!(f.i, CyclicValue::new(3, 8).unwrap());
        let chi = f.euler_class(&a).unwrap();
        assert_eq!(a.divisibility(&chi).unwrap(), BigInt::from(4));
        let zero = ImmersionClass::new(&a, a.h2().zero(), -5).unwrap();
        assert_eq!(zero.i, CyclicValue::integer(-5));
    }

    #[test]
    fn fiber_modulus_agrees_between_tables() {
        for name in ["T3", "S1xS2", "L(4,1)"] {
            let a = alg(name);
            let imm = classify(&a, 2).unwrap();
            let s2 = maps_to_s2(&a, 2).unwrap();
            for (r, s) in imm.chi_rows.iter().zip(&s2.rows) {
                assert_eq!(r.chi, s.chi);
                if r.is_normal_euler_class() {
                    assert_eq!(r.fiber_modulus, s.fiber_modulus);
                }
                assert!(r.fiber_modulus.is_even());
            }
        }
    }

    #[test]
    fn cardinality_arithmetic() {
        let inf = Cardinality::Infinite;
        let two = Cardinality::Finite(BigInt::from(2));
        let zero = Cardinality::Finite(BigInt::zero());
        assert_eq!(two.times(&inf), inf);
        assert_eq!(zero.times(&inf), zero);
        assert_eq!(two.plus(&two), Cardinality::Finite(BigInt::from(4)));
        assert_eq!(two.plus(&inf), inf);
    }
}
