//! The cup pairing `H¹ × H² → H³` and its evaluation on the fundamental class.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::complex::{ChainPresentation, CupEntry, SimplicialComplex3};
use crate::error::{Error, Result};
use crate::homology::{cohomology, kernel_basis, Coefficients, FgAbelianGroup, GroupClass};
use crate::matrix::{dot, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CupMode {
    /// Alexander–Whitney front/back faces on ascending vertex lists.
    Simplicial,
    /// A user-supplied `C¹ × C² → C³` tensor.
    Tensor,
}

/// Cochain-level products together with the cohomology groups they act on.
#[derive(Clone, Debug)]
pub struct CupPairing {
    mode: CupMode,
    one_two: Vec<CupEntry>,
    /// `C² × C¹ → C³` entries, stored with the same field names; simplicial mode only.
    two_one: Option<Vec<CupEntry>>,
    h1: FgAbelianGroup,
    h2: FgAbelianGroup,
    h3: FgAbelianGroup,
    coboundary_0: IntMatrix,
    coboundary_1: IntMatrix,
    coboundary_2: IntMatrix,
    cell_counts: [usize; 4],
    fundamental: Vec<BigInt>,
}

impl CupPairing {
    /// Alexander–Whitney products on a triangulation:
    /// `(α∪β)[v₀v₁v₂v₃] = α[v₀v₁]·β[v₁v₂v₃]` and `(β∪α)[v₀v₁v₂v₃] = β[v₀v₁v₂]·α[v₂v₃]`.
    pub fn simplicial(c: &SimplicialComplex3, p: &ChainPresentation) -> Result<Self> {
        let counts = [c.vertex_count(), c.edges().len(), c.triangles().len(), c.tetrahedra().len()];
        if counts != p.cell_counts() {
            return Err(Error::Presentation("presentation was not built from this complex".into()));
        }
        let mut one_two = Vec::with_capacity(counts[3]);
        let mut two_one = Vec::with_capacity(counts[3]);
        for (ti, t) in c.tetrahedra().iter().enumerate() {
            let [a, b, cc, d] = t.vertices;
            let idx = |e| c.edge_index(e).expect("face edge indexed");
            let tri = |f| c.triangle_index(f).expect("face triangle indexed");
            one_two.push(CupEntry {
                edge: idx([a, b]),
                triangle: tri([b, cc, d]),
                tetrahedron: ti,
                coefficient: 1.into(),
            });
            two_one.push(CupEntry {
                edge: idx([cc, d]),
                triangle: tri([a, b, cc]),
                tetrahedron: ti,
                coefficient: 1.into(),
            });
        }
        Self::build(CupMode::Simplicial, one_two, Some(two_one), p)
    }

    /// Tensor-mode pairing. Fails unless the tensor descends to cohomology.
    pub fn tensor(p: &ChainPresentation) -> Result<Self> {
        let entries = p.cup_tensor().ok_or(Error::NoCupData)?.to_vec();
        let pairing = Self::build(CupMode::Tensor, entries, None, p)?;
        pairing.check_descent()?;
        Ok(pairing)
    }

    fn build(
        mode: CupMode,
        one_two: Vec<CupEntry>,
        two_one: Option<Vec<CupEntry>>,
        p: &ChainPresentation,
    ) -> Result<Self> {
        Ok(CupPairing {
            mode,
            one_two,
            two_one,
            h1: cohomology(p, 1, Coefficients::Integers)?,
            h2: cohomology(p, 2, Coefficients::Integers)?,
            h3: cohomology(p, 3, Coefficients::Integers)?,
            coboundary_0: p.coboundary(0)?,
            coboundary_1: p.coboundary(1)?,
            coboundary_2: p.coboundary(2)?,
            cell_counts: p.cell_counts(),
            fundamental: p.fundamental_cycle().to_vec(),
        })
    }

    pub fn mode(&self) -> CupMode {
        self.mode
    }

    pub fn h1(&self) -> &FgAbelianGroup {
        &self.h1
    }

    pub fn h2(&self) -> &FgAbelianGroup {
        &self.h2
    }

    pub fn h3(&self) -> &FgAbelianGroup {
        &self.h3
    }

    fn contract(entries: &[CupEntry], a: &[BigInt], b: &[BigInt], top: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); top];
        for e in entries {
            let (x, y) = (&a[e.edge], &b[e.triangle]);
            if !x.is_zero() && !y.is_zero() {
                out[e.tetrahedron] += &e.coefficient * x * y;
            }
        }
        out
    }

    /// Cochain-level `a ∪ b` for `a ∈ C¹`, `b ∈ C²`.
    pub fn cup_cochains(&self, a: &[BigInt], b: &[BigInt]) -> Result<Vec<BigInt>> {
        let [_, n1, n2, n3] = self.cell_counts;
        if a.len() != n1 {
            return Err(Error::CoordinateCount { expected: n1, got: a.len() });
        }
        if b.len() != n2 {
            return Err(Error::CoordinateCount { expected: n2, got: b.len() });
        }
        Ok(Self::contract(&self.one_two, a, b, n3))
    }

    /// The class of `a ∪ b` for cocycles `a ∈ Z¹`, `b ∈ Z²`.
    pub fn cup_cocycles(&self, a: &[BigInt], b: &[BigInt]) -> Result<GroupClass> {
        if !self.h1.is_cycle(a) || !self.h2.is_cycle(b) {
            return Err(Error::NotCocycle);
        }
        self.h3.express(&self.cup_cochains(a, b)?)
    }

    /// `a ∪ b ∈ H³` for `a ∈ H¹`, `b ∈ H²`.
    pub fn cup_1_2(&self, a: &GroupClass, b: &GroupClass) -> Result<GroupClass> {
        let ra = self.h1.reconstruct(a)?;
        let rb = self.h2.reconstruct(b)?;
        self.h3.express(&self.cup_cochains(&ra, &rb)?)
    }

    /// `b ∪ a ∈ H³` for `b ∈ H²`, `a ∈ H¹`. Only available in simplicial mode.
    pub fn cup_2_1(&self, b: &GroupClass, a: &GroupClass) -> Result<GroupClass> {
        let entries = self.two_one.as_ref().ok_or(Error::NoCupData)?;
        let ra = self.h1.reconstruct(a)?;
        let rb = self.h2.reconstruct(b)?;
        self.h3.express(&Self::contract(entries, &ra, &rb, self.cell_counts[3]))
    }

    /// `⟨cls, [M]⟩`.
    pub fn pair_with_fundamental(&self, cls: &GroupClass) -> Result<BigInt> {
        let rep = self.h3.reconstruct(cls)?;
        Ok(dot(&rep, &self.fundamental))
    }

    /// The class in `H³` pairing to 1 with `[M]`.
    pub fn fundamental_dual(&self) -> Result<GroupClass> {
        let g = self.h3.generator(0);
        let sign = self.pair_with_fundamental(&g)?;
        self.h3.scale(&g, &sign)
    }

    /// Index of `{⟨2χ ∪ x, [M]⟩ : x ∈ H¹}` in ℤ, i.e. the gcd of the pairings on a basis of H¹.
    pub fn index_two_chi_cup_h1(&self, chi: &GroupClass) -> Result<BigInt> {
        let two_chi = self.h2.scale(chi, &BigInt::from(2))?;
        let mut g = BigInt::zero();
        for i in 0..self.h1.generator_count() {
            let cup = self.cup_1_2(&self.h1.generator(i), &two_chi)?;
            g = g.gcd(&self.pair_with_fundamental(&cup)?);
        }
        Ok(g)
    }

    /// `⟨aᵢ ∪ bⱼ, [M]⟩` over the normal-form generators of `H¹` (rows) and `H²` (columns).
    pub fn pairing_table(&self) -> Result<Vec<Vec<BigInt>>> {
        (0..self.h1.generator_count())
            .map(|i| {
                (0..self.h2.generator_count())
                    .map(|j| {
                        let cup = self.cup_1_2(&self.h1.generator(i), &self.h2.generator(j))?;
                        self.pair_with_fundamental(&cup)
                    })
                    .collect()
            })
            .collect()
    }

    /// Checks that `Z¹ ∪ B²` and `B¹ ∪ Z²` land in `B³`.
    pub fn check_descent(&self) -> Result<()> {
        let z1 = kernel_basis(&self.coboundary_1);
        let z2 = kernel_basis(&self.coboundary_2);
        for i in 0..z1.cols() {
            let z = z1.column(i);
            for j in 0..self.coboundary_1.cols() {
                let b = self.coboundary_1.column(j);
                let cls = self.h3.express(&self.cup_cochains(&z, &b)?)?;
                if !self.h3.is_zero(&cls) {
                    return Err(Error::CupDescent(format!(
                        "cocycle {i} cup the coboundary of 1-cell {j} is not a coboundary"
                    )));
                }
            }
        }
        for i in 0..self.coboundary_0.cols() {
            let a = self.coboundary_0.column(i);
            for j in 0..z2.cols() {
                let z = z2.column(j);
                let cls = self.h3.express(&self.cup_cochains(&a, &z)?)?;
                if !self.h3.is_zero(&cls) {
                    return Err(Error::CupDescent(format!(
                        "the coboundary of 0-cell {i} cup cocycle {j} is not a coboundary"
                    )));
                }
            }
        }
        Ok(())
    }
}
