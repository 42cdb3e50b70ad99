//! Builtin 3-manifolds with closed-form expected invariants.
//!
//! | name          | mode          | model                                           |
//! |---------------|---------------|-------------------------------------------------|
//! | `S3`          | triangulation | boundary of the 4-simplex                        |
//! | `S1xS2`       | presentation  | one cell per degree, all differentials zero      |
//! | `T3`          | presentation  | cube with opposite faces identified              |
//! | `L(p,q)`      | presentation  | genus-1 Heegaard cells, `∂₂ = p`                 |
//! | `S1xS2-tri`   | triangulation | staircase product of ∂Δ³ and a 3-cycle           |
//! | `T3-tri`      | triangulation | staircase product of three 3-cycles              |
//!
//! The cellular lens-space model only sees `p`; `q` is validated and kept in
//! the name. Its cup tensor is empty, which is exact because `H¹ = 0`.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::complex::{chain_presentation, ChainPresentation, CupEntry, SimplicialComplex3};
use crate::cup::CupPairing;
use crate::error::{Error, Result};
use crate::homology::GroupShape;
use crate::matrix::IntMatrix;

#[derive(Clone, Debug)]
pub enum Ingestion {
    Triangulation(SimplicialComplex3),
    Presentation,
}

/// Invariants known in closed form for a builtin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    /// `H₀ … H₃` over ℤ.
    pub homology: [GroupShape; 4],
    /// `H⁰ … H³` over ℤ.
    pub cohomology: [GroupShape; 4],
    pub alpha: usize,
    /// `(χ as an ambient 2-cocycle, d(χ))` samples.
    pub divisibility: Vec<(Vec<i64>, i64)>,
    /// `⟨eᵢ ∪ fⱼ, [M]⟩` for the cochains dual to the 1-cells and 2-cells,
    /// when those are all cocycles.
    pub cup_table: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug)]
pub struct BuiltinManifold {
    pub name: String,
    pub ingestion: Ingestion,
    pub presentation: ChainPresentation,
    pub expected: Expected,
}

impl BuiltinManifold {
    /// The cup pairing for this manifold: Alexander–Whitney for triangulations,
    /// the shipped tensor otherwise.
    pub fn cup_pairing(&self) -> Result<CupPairing> {
        match &self.ingestion {
            Ingestion::Triangulation(c) => CupPairing::simplicial(c, &self.presentation),
            Ingestion::Presentation => CupPairing::tensor(&self.presentation),
        }
    }

    pub fn complex(&self) -> Option<&SimplicialComplex3> {
        match &self.ingestion {
            Ingestion::Triangulation(c) => Some(c),
            Ingestion::Presentation => None,
        }
    }
}

/// Names accepted by [`builtin`] that the test sweeps iterate over.
pub fn standard_names() -> Vec<&'static str> {
    vec!["S3", "S1xS2", "T3", "L(2,1)", "L(3,1)", "L(4,1)", "L(5,2)", "L(6,1)", "S1xS2-tri", "T3-tri"]
}

fn z() -> GroupShape {
    GroupShape { free_rank: 1, torsion: vec![] }
}

fn free(r: usize) -> GroupShape {
    GroupShape { free_rank: r, torsion: vec![] }
}

fn cyclic(p: i64) -> GroupShape {
    GroupShape::from_cyclic(&[BigInt::from(p)])
}

/// Looks up a builtin by name.
pub fn builtin(name: &str) -> Result<BuiltinManifold> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.as_str() {
        "S3" => sphere(),
        "S1xS2" => s1xs2(),
        "T3" => torus(),
        "S1xS2-tri" => product_manifold(&compact, &boundary_tetrahedron(), 4, 1),
        "T3-tri" => product_manifold(&compact, &[], 0, 3),
        _ => match parse_lens(&compact)? {
            Some((p, q)) => lens(p, q),
            None => Err(Error::UnknownBuiltin(name.to_string())),
        },
    }
}

fn parse_lens(name: &str) -> Result<Option<(i64, i64)>> {
    let Some(inner) = name.strip_prefix("L(").and_then(|s| s.strip_suffix(')')) else {
        return Ok(None);
    };
    let bad = || Error::LensParameters(format!("cannot read {name:?}"));
    let (p, q) = inner.split_once(',').ok_or_else(bad)?;
    let p: i64 = p.parse().map_err(|_| bad())?;
    let q: i64 = q.parse().map_err(|_| bad())?;
    if p <= 0 {
        return Err(Error::LensParameters(format!("p must be positive, got {p}")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::LensParameters(format!("gcd({p}, {q}) ≠ 1")));
    }
    Ok(Some((p, q)))
}

/// Presentation with one cell in each degree.
fn one_cell_each(d2: i64, tensor: Vec<CupEntry>) -> Result<ChainPresentation> {
    ChainPresentation::new(
        IntMatrix::from_rows(&[vec![0]], 1),
        IntMatrix::from_rows(&[vec![d2]], 1),
        IntMatrix::from_rows(&[vec![0]], 1),
        Some(tensor),
        vec![BigInt::from(1)],
    )
}

fn entry(edge: usize, triangle: usize, tetrahedron: usize, c: i64) -> CupEntry {
    CupEntry { edge, triangle, tetrahedron, coefficient: c.into() }
}

fn sphere() -> Result<BuiltinManifold> {
    let listed = [([1, 2, 3, 4], 1), ([0, 2, 3, 4], -1), ([0, 1, 3, 4], 1), ([0, 1, 2, 4], -1), ([0, 1, 2, 3], 1)];
    let c = SimplicialComplex3::new(5, &listed)?;
    let p = chain_presentation(&c, &c.signs())?;
    Ok(BuiltinManifold {
        name: "S3".into(),
        ingestion: Ingestion::Triangulation(c),
        presentation: p,
        expected: Expected {
            homology: [z(), free(0), free(0), z()],
            cohomology: [z(), free(0), free(0), z()],
            alpha: 0,
            divisibility: vec![],
            cup_table: None,
        },
    })
}

fn s1xs2() -> Result<BuiltinManifold> {
    let p = one_cell_each(0, vec![entry(0, 0, 0, 1)])?;
    Ok(BuiltinManifold {
        name: "S1xS2".into(),
        ingestion: Ingestion::Presentation,
        presentation: p,
        expected: Expected {
            homology: [z(), z(), z(), z()],
            cohomology: [z(), z(), z(), z()],
            alpha: 0,
            divisibility: vec![(vec![0], 0), (vec![1], 1), (vec![-6], 6)],
            cup_table: Some(vec![vec![1]]),
        },
    })
}

/// Edges x, y, z; squares yz, zx, xy; so `eᵢ ∪ fᵢ` is the top cell for each `i`.
fn torus() -> Result<BuiltinManifold> {
    let p = ChainPresentation::new(
        IntMatrix::zeros(1, 3),
        IntMatrix::zeros(3, 3),
        IntMatrix::zeros(3, 1),
        Some(vec![entry(0, 0, 0, 1), entry(1, 1, 0, 1), entry(2, 2, 0, 1)]),
        vec![BigInt::from(1)],
    )?;
    Ok(BuiltinManifold {
        name: "T3".into(),
        ingestion: Ingestion::Presentation,
        presentation: p,
        expected: Expected {
            homology: [z(), free(3), free(3), z()],
            cohomology: [z(), free(3), free(3), z()],
            alpha: 0,
            divisibility: vec![(vec![0, 0, 0], 0), (vec![2, 2, 0], 2), (vec![4, -6, 8], 2), (vec![0, 3, 0], 3)],
            cup_table: Some(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
        },
    })
}

fn lens(p: i64, q: i64) -> Result<BuiltinManifold> {
    let pres = one_cell_each(p, vec![])?;
    Ok(BuiltinManifold {
        name: format!("L({p},{q})"),
        ingestion: Ingestion::Presentation,
        presentation: pres,
        expected: Expected {
            homology: [z(), cyclic(p), free(0), z()],
            cohomology: [z(), free(0), cyclic(p), z()],
            alpha: usize::from(p % 2 == 0),
            divisibility: vec![(vec![0], 0), (vec![1], 0)],
            cup_table: Some(vec![]),
        },
    })
}

fn boundary_tetrahedron() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
}

fn triangle_cycle() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![1, 2], vec![0, 2]]
}

/// Staircase triangulation of `|K| × |L|` for complexes with globally ordered vertices.
///
/// Each pair of simplices `σ × τ` contributes one simplex per monotone lattice
/// path through the grid of their vertices. Product vertex `(i, j)` gets index
/// `i · |V(L)| + j`, which keeps every chain ascending.
pub fn staircase_product(
    k: &[Vec<usize>],
    k_vertices: usize,
    l: &[Vec<usize>],
    l_vertices: usize,
) -> (Vec<Vec<usize>>, usize) {
    fn paths(p: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
        if p == 0 && q == 0 {
            return vec![vec![(0, 0)]];
        }
        let mut out = Vec::new();
        if p > 0 {
            for mut path in paths(p - 1, q) {
                path.push((p, q));
                out.push(path);
            }
        }
        if q > 0 {
            for mut path in paths(p, q - 1) {
                path.push((p, q));
                out.push(path);
            }
        }
        out
    }
    let mut simplices = Vec::new();
    for s in k {
        for t in l {
            for path in paths(s.len() - 1, t.len() - 1) {
                simplices.push(path.iter().map(|&(i, j)| s[i] * l_vertices + t[j]).collect());
            }
        }
    }
    (simplices, k_vertices * l_vertices)
}

/// `base × (S¹)^circles` as a triangulation; `T3-tri` uses `S¹` itself as the base.
fn product_manifold(name: &str, base: &[Vec<usize>], base_vertices: usize, circles: usize) -> Result<BuiltinManifold> {
    let (mut simplices, mut n, mut remaining) =
        if base.is_empty() { (triangle_cycle(), 3, circles - 1) } else { (base.to_vec(), base_vertices, circles) };
    while remaining > 0 {
        let (s, m) = staircase_product(&simplices, n, &triangle_cycle(), 3);
        simplices = s;
        n = m;
        remaining -= 1;
    }
    let tets: Vec<[usize; 4]> = simplices.iter().map(|s| [s[0], s[1], s[2], s[3]]).collect();
    let c = SimplicialComplex3::coherently_oriented(n, &tets)?;
    let p = chain_presentation(&c, &c.signs())?;
    let expected = if base.is_empty() {
        Expected {
            homology: [z(), free(3), free(3), z()],
            cohomology: [z(), free(3), free(3), z()],
            alpha: 0,
            divisibility: vec![],
            cup_table: None,
        }
    } else {
        Expected {
            homology: [z(), z(), z(), z()],
            cohomology: [z(), z(), z(), z()],
            alpha: 0,
            divisibility: vec![],
            cup_table: None,
        }
    };
    Ok(BuiltinManifold { name: name.into(), ingestion: Ingestion::Triangulation(c), presentation: p, expected })
}
