//! Homology and cohomology of chain presentations over ℤ and ℤ₂.
//!
//! Groups come back in divisor-chain normal form together with explicit
//! generators in the ambient (co)chain basis and a projection expressing any
//! (co)cycle in normal-form coordinates. Class coordinates list the free part
//! first and then the torsion part, each torsion coordinate reduced into
//! `0..t`.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::complex::ChainPresentation;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::snf::smith_normal_form;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Mod2,
}

/// Opaque identity of a computed group, used to reject classes from a different group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupId(u64);

/// Isomorphism type `ℤ^r ⊕ ℤ_{t₁} ⊕ … ⊕ ℤ_{tₖ}` with `t₁ | … | tₖ`, each `tᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupShape {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl GroupShape {
    pub fn trivial() -> Self {
        GroupShape { free_rank: 0, torsion: vec![] }
    }

    /// Normal form of a direct sum of cyclic groups `ℤ_m` (`m = 0` meaning ℤ).
    pub fn from_cyclic(moduli: &[BigInt]) -> Self {
        let free_rank = moduli.iter().filter(|m| m.is_zero()).count();
        let finite: Vec<BigInt> = moduli.iter().filter(|m| !m.is_zero()).cloned().collect();
        let diag = IntMatrix::diagonal(finite.len(), finite.len(), &finite);
        let torsion = smith_normal_form(&diag).invariant_factors().into_iter().filter(|t| !t.is_one()).collect();
        GroupShape { free_rank, torsion }
    }

    pub fn even_torsion_count(&self) -> usize {
        self.torsion.iter().filter(|t| t.is_even()).count()
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A finitely generated abelian group realized as a subquotient of a free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianGroup {
    id: GroupId,
    shape: GroupShape,
    coefficients: Coefficients,
    /// Ambient representatives of the normal-form generators, one per column.
    generators: IntMatrix,
    /// Maps an ambient (co)cycle to unreduced normal-form coordinates.
    projection: IntMatrix,
    /// A vector is a (co)cycle iff this map kills it (mod 2 for ℤ₂ coefficients).
    cycle_test: IntMatrix,
}

/// An element of an [`FgAbelianGroup`], in normal-form coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupClass {
    group: GroupId,
    coords: Vec<BigInt>,
}

impl GroupClass {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn group_id(&self) -> GroupId {
        self.group
    }
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", c.join(", "))
    }
}

impl FgAbelianGroup {
    fn assemble(
        tag: &str,
        shape: GroupShape,
        coefficients: Coefficients,
        generators: IntMatrix,
        projection: IntMatrix,
        cycle_test: IntMatrix,
    ) -> Self {
        let mut h = DefaultHasher::new();
        tag.hash(&mut h);
        coefficients.hash(&mut h);
        shape.hash(&mut h);
        generators.hash(&mut h);
        projection.hash(&mut h);
        cycle_test.hash(&mut h);
        FgAbelianGroup { id: GroupId(h.finish()), shape, coefficients, generators, projection, cycle_test }
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    pub fn shape(&self) -> &GroupShape {
        &self.shape
    }

    pub fn free_rank(&self) -> usize {
        self.shape.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.shape.torsion
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    /// Number of normal-form generators (free plus torsion).
    pub fn generator_count(&self) -> usize {
        self.shape.free_rank + self.shape.torsion.len()
    }

    /// Dimension of the ambient (co)chain module.
    pub fn ambient_dim(&self) -> usize {
        self.generators.rows()
    }

    /// Cyclic order of each coordinate, `0` for free coordinates.
    pub fn moduli(&self) -> Vec<BigInt> {
        let mut m = vec![BigInt::zero(); self.shape.free_rank];
        m.extend(self.shape.torsion.iter().cloned());
        m
    }

    pub fn is_finite(&self) -> bool {
        self.shape.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.shape.torsion.iter().product())
    }

    /// Normal-form generator matrix, one ambient representative per column.
    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn zero(&self) -> GroupClass {
        GroupClass { group: self.id, coords: vec![BigInt::zero(); self.generator_count()] }
    }

    /// The class with the given coordinates, torsion entries reduced.
    pub fn class(&self, coords: &[BigInt]) -> Result<GroupClass> {
        if coords.len() != self.generator_count() {
            return Err(Error::CoordinateCount { expected: self.generator_count(), got: coords.len() });
        }
        let coords = coords
            .iter()
            .zip(self.moduli())
            .map(|(x, m)| if m.is_zero() { x.clone() } else { x.mod_floor(&m) })
            .collect();
        Ok(GroupClass { group: self.id, coords })
    }

    pub fn class_i64(&self, coords: &[i64]) -> Result<GroupClass> {
        let big: Vec<BigInt> = coords.iter().map(|&x| x.into()).collect();
        self.class(&big)
    }

    /// The `i`-th normal-form generator.
    pub fn generator(&self, i: usize) -> GroupClass {
        let mut coords = vec![BigInt::zero(); self.generator_count()];
        coords[i] = BigInt::one();
        self.class(&coords).expect("generator index in range")
    }

    pub fn check(&self, c: &GroupClass) -> Result<()> {
        if c.group != self.id {
            return Err(Error::ForeignClass);
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupClass, b: &GroupClass) -> Result<GroupClass> {
        self.check(a)?;
        self.check(b)?;
        let s: Vec<BigInt> = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        self.class(&s)
    }

    pub fn neg(&self, a: &GroupClass) -> Result<GroupClass> {
        self.scale(a, &BigInt::from(-1))
    }

    pub fn sub(&self, a: &GroupClass, b: &GroupClass) -> Result<GroupClass> {
        self.add(a, &self.neg(b)?)
    }

    pub fn scale(&self, a: &GroupClass, n: &BigInt) -> Result<GroupClass> {
        self.check(a)?;
        let s: Vec<BigInt> = a.coords.iter().map(|x| x * n).collect();
        self.class(&s)
    }

    pub fn is_zero(&self, a: &GroupClass) -> bool {
        a.coords.iter().all(Zero::is_zero)
    }

    /// Free coordinates of a class.
    pub fn free_part<'a>(&self, a: &'a GroupClass) -> &'a [BigInt] {
        &a.coords[..self.shape.free_rank]
    }

    /// Whether `v` is a (co)cycle of the underlying complex.
    pub fn is_cycle(&self, v: &[BigInt]) -> bool {
        if v.len() != self.cycle_test.cols() {
            return false;
        }
        let image = self.cycle_test.mul_vec(v);
        match self.coefficients {
            Coefficients::Integers => image.iter().all(Zero::is_zero),
            Coefficients::Mod2 => image.iter().all(|x| x.is_even()),
        }
    }

    /// The class of an ambient (co)cycle.
    pub fn express(&self, v: &[BigInt]) -> Result<GroupClass> {
        if v.len() != self.ambient_dim() {
            return Err(Error::CoordinateCount { expected: self.ambient_dim(), got: v.len() });
        }
        if !self.is_cycle(v) {
            return Err(Error::NotCocycle);
        }
        self.class(&self.projection.mul_vec(v))
    }

    /// An ambient representative of a class.
    pub fn reconstruct(&self, a: &GroupClass) -> Result<Vec<BigInt>> {
        self.check(a)?;
        let v = self.generators.mul_vec(&a.coords);
        Ok(match self.coefficients {
            Coefficients::Integers => v,
            Coefficients::Mod2 => v.into_iter().map(|x| x.mod_floor(&BigInt::from(2))).collect(),
        })
    }

    /// All classes whose free coordinates lie in `[-bound, bound]`, torsion
    /// coordinates ranging over every residue. Ordered lexicographically.
    pub fn elements_in_window(&self, bound: u32) -> Vec<GroupClass> {
        let bound = i64::from(bound);
        let ranges: Vec<(BigInt, BigInt)> = self
            .moduli()
            .into_iter()
            .map(|m| if m.is_zero() { (BigInt::from(-bound), BigInt::from(bound)) } else { (BigInt::zero(), m - 1) })
            .collect();
        let mut out = vec![Vec::new()];
        for (lo, hi) in ranges {
            let mut next = Vec::new();
            for prefix in &out {
                let mut x = lo.clone();
                while x <= hi {
                    let mut v: Vec<BigInt> = prefix.clone();
                    v.push(x.clone());
                    next.push(v);
                    x += 1;
                }
            }
            out = next;
        }
        out.into_iter().map(|c| GroupClass { group: self.id, coords: c }).collect()
    }
}

/// A ℤ-basis of `ker m`, one vector per column.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    snf.v.col_range(snf.rank(), m.cols())
}

/// `ker(outgoing) / im(incoming)` over ℤ.
fn subquotient_integers(tag: &str, outgoing: &IntMatrix, incoming: &IntMatrix) -> FgAbelianGroup {
    let n = outgoing.cols();
    debug_assert_eq!(incoming.rows(), n);
    let out_snf = smith_normal_form(outgoing);
    let r = out_snf.rank();

    // Kernel basis: trailing columns of V. Image coordinates in that basis: rows r.. of V⁻¹·incoming.
    let kernel = out_snf.v.col_range(r, n);
    let kernel_proj = out_snf.v_inv.row_range(r, n);
    let relations = kernel_proj.mul(incoming);
    debug_assert!(out_snf.v_inv.row_range(0, r).mul(incoming).is_zero(), "∂∘∂ ≠ 0");

    let rel_snf = smith_normal_form(&relations);
    let rel_rank = rel_snf.rank();
    let all_gens = kernel.mul(&rel_snf.u_inv);
    let all_proj = rel_snf.u.mul(&kernel_proj);
    let diag = rel_snf.diagonal();

    let kernel_dim = n - r;
    let free: Vec<usize> = (rel_rank..kernel_dim).collect();
    let torsion_idx: Vec<usize> = (0..rel_rank).filter(|&i| !diag[i].is_one()).collect();
    let order: Vec<usize> = free.iter().chain(&torsion_idx).copied().collect();

    let shape = GroupShape { free_rank: free.len(), torsion: torsion_idx.iter().map(|&i| diag[i].clone()).collect() };
    FgAbelianGroup::assemble(
        tag,
        shape,
        Coefficients::Integers,
        all_gens.select_cols(&order),
        all_proj.select_rows(&order),
        outgoing.clone(),
    )
}

mod gf2 {
    //! Minimal linear algebra over the two-element field.

    /// Independent vectors kept in insertion order, each with a distinct pivot
    /// that every later vector has cleared.
    #[derive(Default)]
    pub struct Span {
        basis: Vec<(usize, Vec<u8>)>,
    }

    impl Span {
        pub fn reduce(&self, v: &mut [u8]) {
            for (p, b) in &self.basis {
                if v[*p] == 1 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
            }
        }

        /// Adds `v` if independent; returns whether it was added.
        pub fn insert(&mut self, v: &[u8]) -> bool {
            let mut w = v.to_vec();
            self.reduce(&mut w);
            match w.iter().position(|&x| x == 1) {
                Some(p) => {
                    self.basis.push((p, w));
                    true
                }
                None => false,
            }
        }

        pub fn vectors(&self) -> impl Iterator<Item = &Vec<u8>> {
            self.basis.iter().map(|(_, v)| v)
        }
    }

    /// Basis of the kernel of a `rows × cols` matrix given by its rows.
    pub fn kernel(mut rows: Vec<Vec<u8>>, cols: usize) -> Vec<Vec<u8>> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] == 1) else { continue };
            rows.swap(r, p);
            for i in 0..rows.len() {
                if i != r && rows[i][c] == 1 {
                    let pivot_row = rows[r].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                        *x ^= y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut basis = Vec::new();
        for f in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u8; cols];
            v[f] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = rows[i][f];
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of an invertible square matrix given by its columns.
    pub fn invert_columns(cols: &[Vec<u8>]) -> Vec<Vec<u8>> {
        let n = cols.len();
        // Row-major copy augmented with the identity.
        let mut a: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                let mut row: Vec<u8> = cols.iter().map(|c| c[i]).collect();
                row.extend((0..n).map(|j| u8::from(i == j)));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| a[i][c] == 1).expect("matrix is invertible");
            a.swap(c, p);
            for i in 0..n {
                if i != c && a[i][c] == 1 {
                    let pivot_row = a[c].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x ^= y;
                    }
                }
            }
        }
        a.into_iter().map(|row| row[n..].to_vec()).collect()
    }
}

/// `ker(outgoing) / im(incoming)` over ℤ₂.
fn subquotient_mod2(tag: &str, outgoing: &IntMatrix, incoming: &IntMatrix) -> FgAbelianGroup {
    let two = BigInt::from(2);
    let bit = |x: &BigInt| u8::from(x.mod_floor(&two).is_one());
    let n = outgoing.cols();
    let out_rows: Vec<Vec<u8>> = (0..outgoing.rows()).map(|i| outgoing.row(i).iter().map(bit).collect()).collect();
    let kernel = gf2::kernel(out_rows, n);

    let mut span = gf2::Span::default();
    for j in 0..incoming.cols() {
        let col: Vec<u8> = incoming.column(j).iter().map(bit).collect();
        span.insert(&col);
    }
    let image_dim = span.vectors().count();
    let mut gens = Vec::new();
    for k in &kernel {
        if span.insert(k) {
            gens.push(k.clone());
        }
    }
    // Basis: reduced image vectors, then generators, then a completion.
    let reduced: Vec<Vec<u8>> = span.vectors().cloned().collect();
    let mut basis: Vec<Vec<u8>> = reduced[..image_dim].to_vec();
    basis.extend(gens.iter().cloned());
    for i in 0..n {
        let mut e = vec![0u8; n];
        e[i] = 1;
        if span.insert(&e) {
            basis.push(e);
        }
    }
    let inverse = gf2::invert_columns(&basis);
    let g = gens.len();
    let generators = IntMatrix::from_fn(n, g, |i, j| BigInt::from(gens[j][i]));
    let projection = IntMatrix::from_fn(g, n, |i, j| BigInt::from(inverse[image_dim + i][j]));
    let shape = GroupShape { free_rank: 0, torsion: vec![two.clone(); g] };
    FgAbelianGroup::assemble(tag, shape, Coefficients::Mod2, generators, projection, outgoing.clone())
}

fn subquotient(tag: &str, outgoing: &IntMatrix, incoming: &IntMatrix, coeffs: Coefficients) -> FgAbelianGroup {
    match coeffs {
        Coefficients::Integers => subquotient_integers(tag, outgoing, incoming),
        Coefficients::Mod2 => subquotient_mod2(tag, outgoing, incoming),
    }
}

/// `Hₖ = ker ∂ₖ / im ∂ₖ₊₁` for `k` in `0..=3`.
pub fn homology(p: &ChainPresentation, k: usize, coeffs: Coefficients) -> Result<FgAbelianGroup> {
    if k > 3 {
        return Err(Error::DegreeOutOfRange(k));
    }
    let out = p.boundary(k)?;
    let inc = p.boundary(k + 1)?;
    Ok(subquotient(&format!("H_{k}"), &out, &inc, coeffs))
}

/// `Hᵏ = ker δᵏ / im δᵏ⁻¹` with `δᵏ = ∂ₖ₊₁ᵀ`, for `k` in `0..=3`.
pub fn cohomology(p: &ChainPresentation, k: usize, coeffs: Coefficients) -> Result<FgAbelianGroup> {
    if k > 3 {
        return Err(Error::DegreeOutOfRange(k));
    }
    let out = p.boundary(k + 1)?.transpose();
    let inc = p.boundary(k)?.transpose();
    Ok(subquotient(&format!("H^{k}"), &out, &inc, coeffs))
}

/// Number of even torsion coefficients of `H₁(M;ℤ)`, i.e. `dim τH₁ ⊗ ℤ₂`.
pub fn alpha(p: &ChainPresentation) -> Result<usize> {
    Ok(homology(p, 1, Coefficients::Integers)?.shape().even_torsion_count())
}

/// Divisibility of a class modulo torsion: the gcd of its free coordinates, 0 for torsion classes.
pub fn divisibility(group: &FgAbelianGroup, chi: &GroupClass) -> Result<BigInt> {
    group.check(chi)?;
    Ok(group.free_part(chi).iter().fold(BigInt::zero(), |g, x| g.gcd(x)))
}

/// The solution set `{c : 2c = χ}`, sorted by coordinates.
///
/// Solves `2c + D·k = χ` over ℤ, where `D` holds the coordinate moduli,
/// through the Smith form of `[2I | D]`. Solutions differ by the 2-torsion
/// subgroup, enumerated as the closure of the kernel lattice's projection.
pub fn halves(group: &FgAbelianGroup, chi: &GroupClass) -> Result<Vec<GroupClass>> {
    group.check(chi)?;
    let n = group.generator_count();
    let moduli = group.moduli();
    let mut system = IntMatrix::zeros(n, 2 * n);
    for i in 0..n {
        system[(i, i)] = BigInt::from(2);
        system[(i, n + i)] = moduli[i].clone();
    }
    let snf = smith_normal_form(&system);
    let rank = snf.rank();
    let rhs = snf.u.mul_vec(chi.coords());
    let mut y = vec![BigInt::zero(); 2 * n];
    for i in 0..n {
        if i < rank {
            let (q, rem) = rhs[i].div_rem(&snf.s[(i, i)]);
            if !rem.is_zero() {
                return Ok(vec![]);
            }
            y[i] = q;
        } else if !rhs[i].is_zero() {
            return Ok(vec![]);
        }
    }
    let particular = snf.v.mul_vec(&y);
    let base = group.class(&particular[..n])?;

    let kernel_gens: Vec<GroupClass> =
        (rank..2 * n).map(|j| group.class(&snf.v.column(j)[..n])).collect::<Result<_>>()?;
    let mut subgroup = BTreeSet::from([group.zero()]);
    let mut queue = VecDeque::from([group.zero()]);
    while let Some(h) = queue.pop_front() {
        for g in &kernel_gens {
            let next = group.add(&h, g)?;
            if subgroup.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<GroupClass> = subgroup.iter().map(|h| group.add(&base, h)).collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// Degree-by-degree comparison of `Hₖ` with `H³⁻ᵏ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    /// `(k, Hₖ, H³⁻ᵏ)` for `k = 0..=3`.
    pub degrees: Vec<(usize, GroupShape, GroupShape)>,
}

impl DualityReport {
    pub fn passes(&self) -> bool {
        self.degrees.iter().all(|(_, h, c)| h == c)
    }
}

/// Group-level Poincaré duality check `Hₖ ≅ H³⁻ᵏ`.
pub fn verify_duality(p: &ChainPresentation) -> Result<DualityReport> {
    let mut degrees = Vec::with_capacity(4);
    for k in 0..=3 {
        let h = homology(p, k, Coefficients::Integers)?;
        let c = cohomology(p, 3 - k, Coefficients::Integers)?;
        degrees.push((k, h.shape().clone(), c.shape().clone()));
    }
    Ok(DualityReport { degrees })
}
