//! Tetrahedral triangulations, their validation, and integer chain presentations.
//!
//! Simplices are stored with ascending vertex lists. A tetrahedron listed as
//! `(v₀, v₁, v₂, v₃)` carries the sign of the permutation sorting it, times
//! its declared `+`/`-` flag. Edges, triangles and tetrahedra are indexed in
//! lexicographic order of their vertex lists, so bases depend only on the
//! vertex sets.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// A tetrahedron with ascending vertices and an orientation sign (±1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tetrahedron {
    pub vertices: [usize; 4],
    pub sign: i8,
}

impl Tetrahedron {
    /// The triangle opposite the vertex at `position`.
    pub fn face(&self, position: usize) -> [usize; 3] {
        let v = self.vertices;
        match position {
            0 => [v[1], v[2], v[3]],
            1 => [v[0], v[2], v[3]],
            2 => [v[0], v[1], v[3]],
            3 => [v[0], v[1], v[2]],
            _ => panic!("face position {position} out of range"),
        }
    }
}

/// Sign of the permutation that sorts `v` ascending. Entries must be distinct.
fn sort_parity(v: &[usize]) -> i8 {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Ordered-vertex tetrahedral complex, meant to triangulate a closed oriented 3-manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex3 {
    vertex_count: usize,
    tetrahedra: Vec<Tetrahedron>,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    edge_index: HashMap<[usize; 2], usize>,
    triangle_index: HashMap<[usize; 3], usize>,
}

impl SimplicialComplex3 {
    /// Builds a complex from listed tetrahedra with declared signs.
    ///
    /// Errors report the 1-based position in `listed` as the line number.
    pub fn new(vertex_count: usize, listed: &[([usize; 4], i8)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut tetrahedra = Vec::with_capacity(listed.len());
        for (pos, &(verts, declared)) in listed.iter().enumerate() {
            let line = pos + 1;
            for &v in &verts {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange { line, vertex: v, count: vertex_count });
                }
            }
            let mut sorted = verts;
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex { line, vertex: w[0] });
            }
            if !seen.insert(sorted) {
                return Err(Error::DuplicateTetrahedron { line, vertices: verts });
            }
            let declared = if declared < 0 { -1 } else { 1 };
            tetrahedra.push(Tetrahedron { vertices: sorted, sign: sort_parity(&verts) * declared });
        }
        tetrahedra.sort();

        let mut edge_set = BTreeSet::new();
        let mut tri_set = BTreeSet::new();
        for t in &tetrahedra {
            let v = t.vertices;
            for i in 0..4 {
                for j in i + 1..4 {
                    edge_set.insert([v[i], v[j]]);
                }
                tri_set.insert(t.face(i));
            }
        }
        let edges: Vec<_> = edge_set.into_iter().collect();
        let triangles: Vec<_> = tri_set.into_iter().collect();
        let edge_index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let triangle_index = triangles.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        Ok(SimplicialComplex3 { vertex_count, tetrahedra, edges, triangles, edge_index, triangle_index })
    }

    /// Builds a complex whose declared signs are chosen by propagating a
    /// coherent orientation from the first tetrahedron of each component.
    pub fn coherently_oriented(vertex_count: usize, tets: &[[usize; 4]]) -> Result<Self> {
        let listed: Vec<_> = tets.iter().map(|&t| (t, 1)).collect();
        let mut c = Self::new(vertex_count, &listed)?;
        let cofaces = c.triangle_cofaces();
        let signs = propagate_orientation(&c, &cofaces, |_| 1)
            .map_err(|f| Error::OrientationInconsistent(format!("cannot orient coherently: {f}")))?;
        for (t, s) in c.tetrahedra.iter_mut().zip(signs) {
            t.sign = s;
        }
        Ok(c)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn tetrahedra(&self) -> &[Tetrahedron] {
        &self.tetrahedra
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edge_index(&self, e: [usize; 2]) -> Option<usize> {
        self.edge_index.get(&e).copied()
    }

    pub fn triangle_index(&self, t: [usize; 3]) -> Option<usize> {
        self.triangle_index.get(&t).copied()
    }

    /// Tetrahedra as `(ascending vertices, sign)` pairs, suitable for [`Self::new`].
    pub fn listed(&self) -> Vec<([usize; 4], i8)> {
        self.tetrahedra.iter().map(|t| (t.vertices, t.sign)).collect()
    }

    /// The same complex with every orientation sign flipped.
    pub fn reversed(&self) -> Self {
        let mut c = self.clone();
        for t in &mut c.tetrahedra {
            t.sign = -t.sign;
        }
        c
    }

    /// Declared orientation signs, one per tetrahedron in canonical order.
    pub fn signs(&self) -> Vec<i8> {
        self.tetrahedra.iter().map(|t| t.sign).collect()
    }

    /// Serializes to the line-oriented triangulation format.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count);
        for t in &self.tetrahedra {
            let v = t.vertices;
            let flag = if t.sign > 0 { '+' } else { '-' };
            let _ = writeln!(out, "tet {} {} {} {} {}", v[0], v[1], v[2], v[3], flag);
        }
        out
    }

    /// For each triangle, the `(tetrahedron, face position)` pairs containing it.
    fn triangle_cofaces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut cofaces = vec![Vec::new(); self.triangles.len()];
        for (ti, t) in self.tetrahedra.iter().enumerate() {
            for pos in 0..4 {
                cofaces[self.triangle_index[&t.face(pos)]].push((ti, pos));
            }
        }
        cofaces
    }
}

/// Parses the triangulation text format.
///
/// ```text
/// # comment
/// vertices 5
/// tet 1 2 3 4 +
/// tet 0 2 3 4 -
/// ```
///
/// Vertices that no tetrahedron uses are dropped and the rest renumbered
/// densely in ascending order, which preserves every orientation sign.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex3> {
    let mut declared: Option<usize> = None;
    let mut listed = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut words = content.split_whitespace();
        let syntax = |message: String| Error::Syntax { line, message };
        match words.next() {
            Some("vertices") => {
                if declared.is_some() {
                    return Err(syntax("repeated vertices header".into()));
                }
                let n = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .ok_or_else(|| syntax("expected `vertices N`".into()))?;
                if words.next().is_some() {
                    return Err(syntax("trailing tokens after vertex count".into()));
                }
                declared = Some(n);
            }
            Some("tet") => {
                let count = declared.ok_or_else(|| syntax("tetrahedron before the vertices header".into()))?;
                let toks: Vec<&str> = words.collect();
                if toks.len() != 4 && toks.len() != 5 {
                    return Err(syntax("expected `tet v0 v1 v2 v3 [+|-]`".into()));
                }
                let mut v = [0usize; 4];
                for (slot, tok) in v.iter_mut().zip(&toks) {
                    *slot = tok.parse().map_err(|_| syntax(format!("bad vertex index {tok:?}")))?;
                }
                let sign = match toks.get(4).copied() {
                    None | Some("+") => 1,
                    Some("-") => -1,
                    Some(other) => return Err(syntax(format!("bad orientation flag {other:?}"))),
                };
                for &x in &v {
                    if x >= count {
                        return Err(Error::VertexOutOfRange { line, vertex: x, count });
                    }
                }
                listed.push((v, sign));
                lines.push(line);
            }
            Some(other) => return Err(syntax(format!("unknown directive {other:?}"))),
            None => unreachable!(),
        }
    }
    if declared.is_none() {
        return Err(Error::Syntax { line: 0, message: "missing vertices header".into() });
    }

    let used: BTreeSet<usize> = listed.iter().flat_map(|(v, _)| v.iter().copied()).collect();
    let relabel: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let normalized: Vec<_> = listed.iter().map(|(v, s)| (v.map(|x| relabel[&x]), *s)).collect();
    // Re-map positional errors back to file lines.
    SimplicialComplex3::new(used.len(), &normalized).map_err(|e| match e {
        Error::RepeatedVertex { line, .. } => {
            let (orig, _) = listed[line - 1];
            let mut s = orig;
            s.sort_unstable();
            let vertex = s.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]).unwrap_or(orig[0]);
            Error::RepeatedVertex { line: lines[line - 1], vertex }
        }
        Error::DuplicateTetrahedron { line, .. } => {
            Error::DuplicateTetrahedron { line: lines[line - 1], vertices: listed[line - 1].0 }
        }
        other => other,
    })
}

/// Why orientation propagation failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrientationFailure {
    /// Some triangle lies in more than two tetrahedra.
    Branching { triangle: [usize; 3] },
    /// Propagation around a loop of tetrahedra returned the opposite sign.
    NonOrientable { triangle: [usize; 3] },
    /// The complex is orientable but this tetrahedron's declared sign disagrees
    /// with the orientation propagated from its component's first tetrahedron.
    Incoherent { tetrahedron: [usize; 4] },
}

impl std::fmt::Display for OrientationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrientationFailure::Branching { triangle } => {
                write!(f, "triangle {triangle:?} has more than two cofaces")
            }
            OrientationFailure::NonOrientable { triangle } => {
                write!(f, "orientation reverses across triangle {triangle:?}")
            }
            OrientationFailure::Incoherent { tetrahedron } => {
                write!(f, "tetrahedron {tetrahedron:?} is listed with the wrong orientation")
            }
        }
    }
}

/// Propagates signs across shared triangles, seeding each component with `seed(first_tet)`.
fn propagate_orientation(
    c: &SimplicialComplex3,
    cofaces: &[Vec<(usize, usize)>],
    seed: impl Fn(usize) -> i8,
) -> std::result::Result<Vec<i8>, OrientationFailure> {
    let n = c.tetrahedra.len();
    let mut signs = vec![0i8; n];
    for start in 0..n {
        if signs[start] != 0 {
            continue;
        }
        signs[start] = seed(start);
        let mut queue = VecDeque::from([start]);
        while let Some(ti) = queue.pop_front() {
            let t = c.tetrahedra[ti];
            for pos in 0..4 {
                let tri = t.face(pos);
                let cf = &cofaces[c.triangle_index[&tri]];
                if cf.len() > 2 {
                    return Err(OrientationFailure::Branching { triangle: tri });
                }
                for &(other, opos) in cf {
                    if other == ti {
                        continue;
                    }
                    // Induced orientations on the shared face must cancel.
                    let parity = if (pos + opos) % 2 == 0 { 1 } else { -1 };
                    let forced = -signs[ti] * parity;
                    if signs[other] == 0 {
                        signs[other] = forced;
                        queue.push_back(other);
                    } else if signs[other] != forced {
                        return Err(OrientationFailure::NonOrientable { triangle: tri });
                    }
                }
            }
        }
    }
    Ok(signs)
}

/// Outcome of [`validate_closed_oriented`]. Failures are data, not errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub is_closed: bool,
    pub is_connected: bool,
    pub euler_characteristic: i64,
    pub orientation: std::result::Result<Vec<i8>, OrientationFailure>,
    pub link_check: bool,
    /// Human-readable notes on the first failing link, if any.
    pub link_failure: Option<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.is_closed && self.is_connected && self.orientation.is_ok() && self.link_check
    }
}

/// Runs closedness, connectivity, Euler characteristic, orientation and link checks.
pub fn validate_closed_oriented(c: &SimplicialComplex3) -> ValidationReport {
    let cofaces = c.triangle_cofaces();
    let is_closed = !c.tetrahedra.is_empty() && cofaces.iter().all(|cf| cf.len() == 2);

    let is_connected = {
        let n = c.tetrahedra.len();
        let mut adj = vec![Vec::new(); n];
        for cf in &cofaces {
            for a in cf {
                for b in cf {
                    if a.0 != b.0 {
                        adj[a.0].push(b.0);
                    }
                }
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        let mut count = 0;
        if n > 0 {
            seen[0] = true;
        } else {
            stack.clear();
        }
        while let Some(t) = stack.pop() {
            count += 1;
            for &o in &adj[t] {
                if !seen[o] {
                    seen[o] = true;
                    stack.push(o);
                }
            }
        }
        n > 0 && count == n
    };

    let euler_characteristic =
        c.vertex_count as i64 - c.edges.len() as i64 + c.triangles.len() as i64 - c.tetrahedra.len() as i64;

    let orientation = propagate_orientation(c, &cofaces, |t| c.tetrahedra[t].sign).and_then(|signs| {
        match c.tetrahedra.iter().zip(&signs).find(|(t, s)| t.sign != **s) {
            Some((t, _)) => Err(OrientationFailure::Incoherent { tetrahedron: t.vertices }),
            None => Ok(signs),
        }
    });

    let link_failure = check_links(c);
    ValidationReport {
        is_closed,
        is_connected,
        euler_characteristic,
        orientation,
        link_check: link_failure.is_none(),
        link_failure,
    }
}

/// Vertex links must be 2-spheres and edge links single circles.
fn check_links(c: &SimplicialComplex3) -> Option<String> {
    let mut vertex_star: Vec<Vec<[usize; 3]>> = vec![Vec::new(); c.vertex_count];
    let mut edge_star: HashMap<[usize; 2], Vec<[usize; 2]>> = HashMap::new();
    for t in &c.tetrahedra {
        let v = t.vertices;
        for i in 0..4 {
            vertex_star[v[i]].push(t.face(i));
            for j in i + 1..4 {
                let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).map(|k| v[k]).collect();
                edge_star.entry([v[i], v[j]]).or_default().push([rest[0], rest[1]]);
            }
        }
    }

    for (v, link) in vertex_star.iter().enumerate() {
        if link.is_empty() {
            return Some(format!("vertex {v} lies in no tetrahedron"));
        }
        if let Err(msg) = check_sphere(link) {
            return Some(format!("link of vertex {v}: {msg}"));
        }
    }
    for e in &c.edges {
        if let Err(msg) = check_circle(&edge_star[e]) {
            return Some(format!("link of edge {e:?}: {msg}"));
        }
    }
    None
}

fn check_sphere(triangles: &[[usize; 3]]) -> std::result::Result<(), String> {
    let mut edge_uses: HashMap<[usize; 2], Vec<usize>> = HashMap::new();
    let mut verts = BTreeSet::new();
    for (ti, t) in triangles.iter().enumerate() {
        verts.extend(t.iter().copied());
        for e in [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]] {
            edge_uses.entry(e).or_default().push(ti);
        }
    }
    if let Some((e, uses)) = edge_uses.iter().find(|(_, u)| u.len() != 2) {
        return Err(format!("edge {e:?} bounds {} triangles", uses.len()));
    }
    let mut seen = vec![false; triangles.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 0;
    while let Some(t) = stack.pop() {
        reached += 1;
        let tr = triangles[t];
        for e in [[tr[0], tr[1]], [tr[0], tr[2]], [tr[1], tr[2]]] {
            for &o in &edge_uses[&e] {
                if !seen[o] {
                    seen[o] = true;
                    stack.push(o);
                }
            }
        }
    }
    if reached != triangles.len() {
        return Err("disconnected".into());
    }
    let chi = verts.len() as i64 - edge_uses.len() as i64 + triangles.len() as i64;
    if chi != 2 {
        return Err(format!("Euler characteristic {chi}, expected 2"));
    }
    Ok(())
}

fn check_circle(edges: &[[usize; 2]]) -> std::result::Result<(), String> {
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in edges {
        adj.entry(e[0]).or_default().push(e[1]);
        adj.entry(e[1]).or_default().push(e[0]);
    }
    if let Some((v, n)) = adj.iter().find(|(_, n)| n.len() != 2) {
        return Err(format!("vertex {v} has degree {}", n.len()));
    }
    let start = edges[0][0];
    let (mut prev, mut cur) = (start, edges[0][1]);
    let mut steps = 1;
    while cur != start {
        let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
        prev = cur;
        cur = next;
        steps += 1;
    }
    if steps != edges.len() {
        return Err("more than one circle".into());
    }
    Ok(())
}

/// One entry of a cochain-level product `C¹ × C² → C³`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CupEntry {
    pub edge: usize,
    pub triangle: usize,
    pub tetrahedron: usize,
    pub coefficient: BigInt,
}

/// Boundary matrices `∂₁, ∂₂, ∂₃`, an optional cup tensor, and the fundamental cycle.
///
/// `∂ₖ` has one row per (k−1)-cell and one column per k-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPresentation {
    boundaries: [IntMatrix; 3],
    cup_tensor: Option<Vec<CupEntry>>,
    fundamental_cycle: Vec<BigInt>,
}

impl ChainPresentation {
    /// Checks shapes, `∂∘∂ = 0`, and that the fundamental cycle is a ±1 cycle.
    pub fn new(
        boundary_1: IntMatrix,
        boundary_2: IntMatrix,
        boundary_3: IntMatrix,
        cup_tensor: Option<Vec<CupEntry>>,
        fundamental_cycle: Vec<BigInt>,
    ) -> Result<Self> {
        let bad = |m: String| Error::Presentation(m);
        if boundary_1.cols() != boundary_2.rows() {
            return Err(bad(format!("∂₁ has {} columns but ∂₂ has {} rows", boundary_1.cols(), boundary_2.rows())));
        }
        if boundary_2.cols() != boundary_3.rows() {
            return Err(bad(format!("∂₂ has {} columns but ∂₃ has {} rows", boundary_2.cols(), boundary_3.rows())));
        }
        if !boundary_1.mul(&boundary_2).is_zero() {
            return Err(bad("∂₁∘∂₂ ≠ 0".into()));
        }
        if !boundary_2.mul(&boundary_3).is_zero() {
            return Err(bad("∂₂∘∂₃ ≠ 0".into()));
        }
        if fundamental_cycle.len() != boundary_3.cols() {
            return Err(bad(format!(
                "fundamental cycle has {} entries for {} top cells",
                fundamental_cycle.len(),
                boundary_3.cols()
            )));
        }
        if fundamental_cycle.iter().any(|x| !x.abs().is_one()) {
            return Err(bad("fundamental cycle entries must be ±1".into()));
        }
        if boundary_3.mul_vec(&fundamental_cycle).iter().any(|x| !x.is_zero()) {
            return Err(bad("fundamental cycle is not a cycle".into()));
        }
        if let Some(entries) = &cup_tensor {
            let (n1, n2, n3) = (boundary_1.cols(), boundary_2.cols(), boundary_3.cols());
            if let Some(e) = entries.iter().find(|e| e.edge >= n1 || e.triangle >= n2 || e.tetrahedron >= n3) {
                return Err(bad(format!("cup entry ({}, {}, {}) out of range", e.edge, e.triangle, e.tetrahedron)));
            }
        }
        Ok(ChainPresentation { boundaries: [boundary_1, boundary_2, boundary_3], cup_tensor, fundamental_cycle })
    }

    /// Number of cells in degrees 0 through 3.
    pub fn cell_counts(&self) -> [usize; 4] {
        [self.boundaries[0].rows(), self.boundaries[0].cols(), self.boundaries[1].cols(), self.boundaries[2].cols()]
    }

    /// `∂ₖ : Cₖ → Cₖ₋₁` for `k` in `0..=4`; the outer two are zero maps.
    pub fn boundary(&self, k: usize) -> Result<IntMatrix> {
        let n = self.cell_counts();
        match k {
            0 => Ok(IntMatrix::zeros(0, n[0])),
            1..=3 => Ok(self.boundaries[k - 1].clone()),
            4 => Ok(IntMatrix::zeros(n[3], 0)),
            _ => Err(Error::DegreeOutOfRange(k)),
        }
    }

    /// `δᵏ : Cᵏ → Cᵏ⁺¹` for `k` in `-1..=3`, encoded with `k + 1` as the index.
    pub fn coboundary(&self, k: usize) -> Result<IntMatrix> {
        Ok(self.boundary(k + 1)?.transpose())
    }

    pub fn cup_tensor(&self) -> Option<&[CupEntry]> {
        self.cup_tensor.as_deref()
    }

    pub fn fundamental_cycle(&self) -> &[BigInt] {
        &self.fundamental_cycle
    }

    /// Replaces the cup tensor.
    pub fn with_cup_tensor(mut self, entries: Option<Vec<CupEntry>>) -> Result<Self> {
        let [b1, b2, b3] = self.boundaries;
        self = ChainPresentation::new(b1, b2, b3, entries, self.fundamental_cycle)?;
        Ok(self)
    }

    pub fn to_file(&self) -> PresentationFile {
        let dense = |m: &IntMatrix| -> Vec<Vec<i64>> {
            m.to_rows().iter().map(|r| r.iter().map(|x| x.to_i64().expect("entry exceeds i64")).collect()).collect()
        };
        PresentationFile {
            cell_counts: Some(self.cell_counts()),
            boundary_1: dense(&self.boundaries[0]),
            boundary_2: dense(&self.boundaries[1]),
            boundary_3: dense(&self.boundaries[2]),
            cup_tensor: self.cup_tensor.as_ref().map(|entries| {
                entries
                    .iter()
                    .map(|e| {
                        [
                            e.edge as i64,
                            e.triangle as i64,
                            e.tetrahedron as i64,
                            e.coefficient.to_i64().expect("coefficient exceeds i64"),
                        ]
                    })
                    .collect()
            }),
            fundamental_cycle: self.fundamental_cycle.iter().map(|x| x.to_i64().expect("entry exceeds i64")).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("presentation serializes")
    }
}

/// On-disk form of a [`ChainPresentation`].
///
/// `cell_counts` is optional; without it the counts are read off the
/// matrix shapes, which is ambiguous only when some matrix has no rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell_counts: Option<[usize; 4]>,
    pub boundary_1: Vec<Vec<i64>>,
    pub boundary_2: Vec<Vec<i64>>,
    pub boundary_3: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cup_tensor: Option<Vec<[i64; 4]>>,
    pub fundamental_cycle: Vec<i64>,
}

impl PresentationFile {
    pub fn into_presentation(self) -> Result<ChainPresentation> {
        let bad = |m: String| Error::Presentation(m);
        let width = |rows: &[Vec<i64>], name: &str| -> Result<Option<usize>> {
            let Some(first) = rows.first() else { return Ok(None) };
            if rows.iter().any(|r| r.len() != first.len()) {
                return Err(bad(format!("{name} has ragged rows")));
            }
            Ok(Some(first.len()))
        };
        let w1 = width(&self.boundary_1, "boundary_1")?;
        let w2 = width(&self.boundary_2, "boundary_2")?;
        let w3 = width(&self.boundary_3, "boundary_3")?;
        let counts = match self.cell_counts {
            Some(c) => c,
            None => {
                let n0 = self.boundary_1.len();
                let n1 = w1.unwrap_or(self.boundary_2.len());
                let n2 = w2.unwrap_or(self.boundary_3.len());
                let n3 = w3.unwrap_or(self.fundamental_cycle.len());
                [n0, n1, n2, n3]
            }
        };
        let build = |rows: &[Vec<i64>], r: usize, c: usize, name: &str| -> Result<IntMatrix> {
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(bad(format!("{name} must be {r}×{c}")));
            }
            Ok(IntMatrix::from_rows(rows, c))
        };
        let b1 = build(&self.boundary_1, counts[0], counts[1], "boundary_1")?;
        let b2 = build(&self.boundary_2, counts[1], counts[2], "boundary_2")?;
        let b3 = build(&self.boundary_3, counts[2], counts[3], "boundary_3")?;
        let tensor = match self.cup_tensor {
            None => None,
            Some(entries) => Some(
                entries
                    .into_iter()
                    .map(|[e, t, k, c]| {
                        if e < 0 || t < 0 || k < 0 {
                            return Err(bad("negative index in cup tensor".into()));
                        }
                        Ok(CupEntry {
                            edge: e as usize,
                            triangle: t as usize,
                            tetrahedron: k as usize,
                            coefficient: c.into(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let fundamental = self.fundamental_cycle.into_iter().map(BigInt::from).collect();
        ChainPresentation::new(b1, b2, b3, tensor, fundamental)
    }
}

/// Parses a JSON presentation document. Cup-tensor descent is checked separately
/// by [`crate::cup::CupPairing::tensor`].
pub fn parse_presentation(text: &str) -> Result<ChainPresentation> {
    let file: PresentationFile = serde_json::from_str(text).map_err(|e| Error::Presentation(e.to_string()))?;
    file.into_presentation()
}

/// Simplicial chain presentation with standard alternating-sign incidences.
///
/// `orientation` gives the fundamental-cycle coefficient of each tetrahedron
/// in canonical order and must make it a cycle.
pub fn chain_presentation(c: &SimplicialComplex3, orientation: &[i8]) -> Result<ChainPresentation> {
    if orientation.len() != c.tetrahedra.len() {
        return Err(Error::OrientationInconsistent(format!(
            "{} signs for {} tetrahedra",
            orientation.len(),
            c.tetrahedra.len()
        )));
    }
    if orientation.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::OrientationInconsistent("signs must be ±1".into()));
    }
    let (n0, n1, n2, n3) = (c.vertex_count, c.edges.len(), c.triangles.len(), c.tetrahedra.len());
    let mut d1 = IntMatrix::zeros(n0, n1);
    for (j, e) in c.edges.iter().enumerate() {
        d1[(e[1], j)] = BigInt::one();
        d1[(e[0], j)] = -BigInt::one();
    }
    let mut d2 = IntMatrix::zeros(n1, n2);
    for (j, t) in c.triangles.iter().enumerate() {
        d2[(c.edge_index[&[t[1], t[2]]], j)] = BigInt::one();
        d2[(c.edge_index[&[t[0], t[2]]], j)] = -BigInt::one();
        d2[(c.edge_index[&[t[0], t[1]]], j)] = BigInt::one();
    }
    let mut d3 = IntMatrix::zeros(n2, n3);
    for (j, t) in c.tetrahedra.iter().enumerate() {
        for pos in 0..4 {
            let s = if pos % 2 == 0 { 1 } else { -1 };
            d3[(c.triangle_index[&t.face(pos)], j)] = BigInt::from(s);
        }
    }
    let fundamental: Vec<BigInt> = orientation.iter().map(|&s| BigInt::from(s)).collect();
    if d3.mul_vec(&fundamental).iter().any(|x| !x.is_zero()) {
        return Err(Error::OrientationInconsistent("signed sum of tetrahedra has nonzero boundary".into()));
    }
    ChainPresentation::new(d1, d2, d3, None, fundamental)
}
