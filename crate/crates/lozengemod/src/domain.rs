//! Triangular-lattice domains, boundary heights, tileability and hexagon peeling.
//!
//! Heights are stored as integers `h = φ + ½`, so the boundary of the
//! canonical domains alternates between 0 and 1.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap, HashSet, VecDeque};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::LozengeError;

/// Lattice point `a·e₁ + b·e₂`.
pub type Vertex = (i64, i64);

/// Largest domain accepted from input.
pub const MAX_FACES: usize = 600;
const MAX_COORD: i64 = 10_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum TriKind {
    U,
    D,
}

/// Unit face. `U(a,b)` has corners (a,b), (a+1,b), (a,b+1); `D(a,b)` has
/// (a+1,b), (a+1,b+1), (a,b+1).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Tri {
    pub kind: TriKind,
    pub a: i64,
    pub b: i64,
}

impl Tri {
    pub fn up(a: i64, b: i64) -> Self {
        Tri { kind: TriKind::U, a, b }
    }

    pub fn down(a: i64, b: i64) -> Self {
        Tri { kind: TriKind::D, a, b }
    }

    pub fn verts(&self) -> [Vertex; 3] {
        let (a, b) = (self.a, self.b);
        match self.kind {
            TriKind::U => [(a, b), (a + 1, b), (a, b + 1)],
            TriKind::D => [(a + 1, b), (a + 1, b + 1), (a, b + 1)],
        }
    }

    /// Prism sublattice: `R` towers stand on down faces, `L` towers on up faces.
    pub fn sublattice(&self) -> char {
        match self.kind {
            TriKind::U => 'L',
            TriKind::D => 'R',
        }
    }

    /// Edge of class `k` (0 along e₁, 1 along e₂, 2 along e₂ − e₁).
    pub fn edge(&self, k: u8) -> [Vertex; 2] {
        let (a, b) = (self.a, self.b);
        match (self.kind, k) {
            (TriKind::U, 0) => [(a, b), (a + 1, b)],
            (TriKind::U, 1) => [(a, b), (a, b + 1)],
            (TriKind::U, _) => [(a + 1, b), (a, b + 1)],
            (TriKind::D, 0) => [(a + 1, b + 1), (a, b + 1)],
            (TriKind::D, 1) => [(a + 1, b), (a + 1, b + 1)],
            (TriKind::D, _) => [(a, b + 1), (a + 1, b)],
        }
    }

    /// The face sharing the class-`k` edge.
    pub fn across(&self, k: u8) -> Tri {
        let (a, b) = (self.a, self.b);
        match (self.kind, k) {
            (TriKind::U, 0) => Tri::down(a, b - 1),
            (TriKind::U, 1) => Tri::down(a - 1, b),
            (TriKind::U, _) => Tri::down(a, b),
            (TriKind::D, 0) => Tri::up(a, b + 1),
            (TriKind::D, 1) => Tri::up(a + 1, b),
            (TriKind::D, _) => Tri::up(a, b),
        }
    }

    /// Corner opposite the class-`k` edge.
    pub fn apex(&self, k: u8) -> Vertex {
        let e = self.edge(k);
        *self.verts().iter().find(|v| !e.contains(v)).expect("three corners")
    }
}

impl std::fmt::Display for Tri {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}({},{})", self.kind, self.a, self.b)
    }
}

/// Class of the lattice edge `u–v`, if they are neighbours.
pub fn edge_class(u: Vertex, v: Vertex) -> Option<u8> {
    match (v.0 - u.0, v.1 - u.1) {
        (1, 0) | (-1, 0) => Some(0),
        (0, 1) | (0, -1) => Some(1),
        (-1, 1) | (1, -1) => Some(2),
        _ => None,
    }
}

fn forward(u: Vertex, v: Vertex) -> bool {
    matches!((v.0 - u.0, v.1 - u.1), (1, 0) | (-1, 1) | (0, -1))
}

/// Height change along `u → v`: +1 / −2 in the three forward directions
/// (ordinary edge / lozenge diagonal), −1 / +2 backwards.
pub fn height_step(u: Vertex, v: Vertex, diagonal: bool) -> i64 {
    match (forward(u, v), diagonal) {
        (true, false) => 1,
        (true, true) => -2,
        (false, false) => -1,
        (false, true) => 2,
    }
}

/// The six faces around `c` in counter-clockwise order, starting between
/// the e₁ and e₂ spokes. Faces `i` and `i+1` share a spoke.
pub fn hexagon_ring(c: Vertex) -> [Tri; 6] {
    let (a, b) = c;
    [Tri::up(a, b), Tri::down(a - 1, b), Tri::up(a - 1, b), Tri::down(a - 1, b - 1), Tri::up(a, b - 1), Tri::down(a, b - 1)]
}

/// Class of the outer side of ring face `i`.
pub fn ring_outer_class(i: usize) -> u8 {
    ((i + 2) % 3) as u8
}

/// A set of faces with integer heights on its boundary vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct TriDomain {
    faces: Vec<Tri>,
    index: HashMap<Tri, usize>,
    vertices: Vec<Vertex>,
    degree: HashMap<Vertex, usize>,
    boundary: BTreeMap<Vertex, i64>,
}

impl TriDomain {
    /// Domain with explicit boundary heights (`h = φ + ½`) on every boundary vertex.
    pub fn new(faces: impl IntoIterator<Item = Tri>, boundary: BTreeMap<Vertex, i64>) -> Result<Self, LozengeError> {
        let mut d = Self::bare(faces)?;
        for v in d.boundary_vertices() {
            if !boundary.contains_key(&v) {
                return Err(LozengeError::MissingHeight(v));
            }
        }
        if let Some(v) = boundary.keys().find(|v| !d.is_boundary_vertex(**v)) {
            return Err(LozengeError::ExtraHeight(*v));
        }
        d.boundary = boundary;
        Ok(d)
    }

    fn bare(faces: impl IntoIterator<Item = Tri>) -> Result<Self, LozengeError> {
        let mut set = BTreeSet::new();
        for t in faces {
            if t.a.abs() > MAX_COORD || t.b.abs() > MAX_COORD {
                return Err(LozengeError::BadDomain(format!("face {t} too far out")));
            }
            if !set.insert(t) {
                return Err(LozengeError::BadDomain(format!("face {t} listed twice")));
            }
            if set.len() > MAX_FACES {
                return Err(LozengeError::TooLarge(format!("more than {MAX_FACES} faces")));
            }
        }
        if set.is_empty() {
            return Err(LozengeError::BadDomain("empty domain".into()));
        }
        let faces: Vec<Tri> = set.into_iter().collect();
        let index: HashMap<Tri, usize> = faces.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let mut degree: HashMap<Vertex, usize> = HashMap::new();
        for t in &faces {
            for v in t.verts() {
                *degree.entry(v).or_default() += 1;
            }
        }
        let mut vertices: Vec<Vertex> = degree.keys().copied().collect();
        vertices.sort();
        let d = TriDomain { faces, index, vertices, degree, boundary: BTreeMap::new() };
        // connected through shared edges
        let mut seen = vec![false; d.faces.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for k in 0..3 {
                if let Some(j) = d.index_of(&d.faces[i].across(k)) {
                    if !seen[j] {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(LozengeError::BadDomain("faces are not edge-connected".into()));
        }
        Ok(d)
    }

    /// Domain whose boundary heights follow from walking its boundary (no
    /// boundary edge is a lozenge diagonal); the lowest boundary height is 0.
    pub fn from_faces(faces: impl IntoIterator<Item = Tri>) -> Result<Self, LozengeError> {
        let mut d = Self::bare(faces)?;
        let mut adj: BTreeMap<Vertex, Vec<(Vertex, i64)>> = BTreeMap::new();
        for (i, k) in d.boundary_edges() {
            let [u, v] = d.faces[i].edge(k);
            adj.entry(u).or_default().push((v, height_step(u, v, false)));
            adj.entry(v).or_default().push((u, height_step(v, u, false)));
        }
        let mut h: BTreeMap<Vertex, i64> = BTreeMap::new();
        let mut components = 0;
        for &root in adj.keys() {
            if h.contains_key(&root) {
                continue;
            }
            components += 1;
            h.insert(root, 0);
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for &(v, dh) in &adj[&u] {
                    match h.get(&v) {
                        Some(&hv) if hv != h[&u] + dh => {
                            return Err(LozengeError::BoundaryLoop(format!("heights around {v:?} do not close")))
                        }
                        Some(_) => {}
                        None => {
                            h.insert(v, h[&u] + dh);
                            stack.push(v);
                        }
                    }
                }
            }
        }
        if components != 1 {
            return Err(LozengeError::BoundaryLoop(format!("{components} boundary components; give heights explicitly")));
        }
        let min = *h.values().min().expect("nonempty boundary");
        d.boundary = h.into_iter().map(|(v, x)| (v, x - min)).collect();
        Ok(d)
    }

    /// Union of the hexagons around the given centres.
    pub fn hexagons(centers: &[Vertex]) -> Result<Self, LozengeError> {
        let mut faces = Vec::new();
        let mut seen = HashSet::new();
        for &c in centers {
            for t in hexagon_ring(c) {
                if !seen.insert(t) {
                    return Err(LozengeError::BadDomain(format!("hexagons overlap at {t}")));
                }
                faces.push(t);
            }
        }
        Self::from_faces(faces)
    }

    /// The built-in domains `hex1`, `hex3`, `hex6`.
    pub fn named(name: &str) -> Result<Self, LozengeError> {
        let centers: &[Vertex] = match name {
            "hex1" => &[(0, 0)],
            "hex3" => &[(0, 0), (1, 1), (2, -1)],
            "hex6" => &[(0, 0), (1, 1), (2, 2), (2, -1), (3, 0), (4, -2)],
            _ => return Err(LozengeError::BadDomain(format!("unknown domain {name:?}"))),
        };
        Self::hexagons(centers)
    }

    /// Sorted faces; their order is the physical site order.
    pub fn faces(&self) -> &[Tri] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn index_of(&self, t: &Tri) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn contains(&self, t: &Tri) -> bool {
        self.index.contains_key(t)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Number of domain faces touching `v`.
    pub fn degree(&self, v: Vertex) -> usize {
        self.degree.get(&v).copied().unwrap_or(0)
    }

    pub fn is_boundary_vertex(&self, v: Vertex) -> bool {
        (1..6).contains(&self.degree(v))
    }

    pub fn boundary_vertices(&self) -> Vec<Vertex> {
        self.vertices.iter().copied().filter(|&v| self.is_boundary_vertex(v)).collect()
    }

    pub fn interior_vertices(&self) -> Vec<Vertex> {
        self.vertices.iter().copied().filter(|&v| self.degree(v) == 6).collect()
    }

    /// Integer boundary heights `h = φ + ½`.
    pub fn boundary_heights(&self) -> &BTreeMap<Vertex, i64> {
        &self.boundary
    }

    pub fn boundary_phi(&self, v: Vertex) -> Option<Ratio<i64>> {
        self.boundary.get(&v).map(|&h| Ratio::from_integer(h) - Ratio::new(1, 2))
    }

    /// `(face, class)` of every edge with no face on the other side.
    pub fn boundary_edges(&self) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        for (i, t) in self.faces.iter().enumerate() {
            for k in 0..3 {
                if !self.contains(&t.across(k)) {
                    out.push((i, k));
                }
            }
        }
        out
    }

    /// Every edge of the domain once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut set = BTreeSet::new();
        for t in &self.faces {
            for k in 0..3 {
                let [u, v] = t.edge(k);
                set.insert(if u < v { (u, v) } else { (v, u) });
            }
        }
        set.into_iter().collect()
    }

    pub fn to_json(&self) -> String {
        let faces = self.faces.iter().map(|t| (format!("{:?}", t.kind), t.a, t.b)).collect();
        let heights = self.boundary.iter().map(|(&(a, b), &h)| (a, b, h as f64 - 0.5)).collect();
        let j = DomainJson { hexagons: Vec::new(), faces, boundary_heights: Some(heights) };
        serde_json::to_string_pretty(&j).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self, LozengeError> {
        let j: DomainJson = serde_json::from_str(text).map_err(|e| LozengeError::Json(e.to_string()))?;
        let mut faces = Vec::new();
        let mut seen = HashSet::new();
        for &c in &j.hexagons {
            for t in hexagon_ring(c) {
                if !seen.insert(t) {
                    return Err(LozengeError::BadDomain(format!("hexagons overlap at {t}")));
                }
                faces.push(t);
            }
            if faces.len() > MAX_FACES {
                return Err(LozengeError::TooLarge(format!("more than {MAX_FACES} faces")));
            }
        }
        for (kind, a, b) in &j.faces {
            let kind = match kind.as_str() {
                "U" => TriKind::U,
                "D" => TriKind::D,
                other => return Err(LozengeError::BadDomain(format!("face kind {other:?} is not U or D"))),
            };
            faces.push(Tri { kind, a: *a, b: *b });
            if faces.len() > MAX_FACES {
                return Err(LozengeError::TooLarge(format!("more than {MAX_FACES} faces")));
            }
        }
        match j.boundary_heights {
            None => Self::from_faces(faces),
            Some(hs) => {
                let mut map = BTreeMap::new();
                for (a, b, phi) in hs {
                    let twice = phi * 2.0;
                    if !phi.is_finite() || phi.abs() > 1e6 || twice.fract() != 0.0 || (twice as i64).rem_euclid(2) != 1 {
                        return Err(LozengeError::BadHeight(phi));
                    }
                    if map.insert((a, b), (phi + 0.5) as i64).is_some() {
                        return Err(LozengeError::BadDomain(format!("height at ({a},{b}) given twice")));
                    }
                }
                Self::new(faces, map)
            }
        }
    }
}

/// On-disk domain description. Faces may be given one by one or as whole
/// hexagons; boundary heights (`φ`, half-odd integers) default to the
/// values implied by the boundary shape.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainJson {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hexagons: Vec<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<(String, i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_heights: Option<Vec<(i64, i64, f64)>>,
}

/// Every boundary edge steps by ±1 in its own direction (never a diagonal).
pub fn boundary_steps_ok(d: &TriDomain) -> bool {
    d.boundary_edges().iter().all(|&(i, k)| {
        let [u, v] = d.faces[i].edge(k);
        d.boundary[&v] - d.boundary[&u] == height_step(u, v, false)
    })
}

/// Largest height gain from `src` to every vertex along domain edges.
fn max_gain(d: &TriDomain, src: Vertex, adj: &HashMap<Vertex, Vec<(Vertex, i64)>>) -> HashMap<Vertex, i64> {
    let mut dist: HashMap<Vertex, i64> = HashMap::new();
    let mut heap = BinaryHeap::from([Reverse((0i64, src))]);
    while let Some(Reverse((du, u))) = heap.pop() {
        if dist.contains_key(&u) {
            continue;
        }
        dist.insert(u, du);
        for &(v, w) in adj.get(&u).map(|x| x.as_slice()).unwrap_or(&[]) {
            if !dist.contains_key(&v) {
                heap.push(Reverse((du + w, v)));
            }
        }
    }
    debug_assert!(dist.len() <= d.vertices.len());
    dist
}

/// Thurston-type criterion: boundary steps are exact, heights sit in the
/// right residue class mod 3, and `h_v − h_u ≤ d(u,v)` for every pair of
/// boundary vertices, with `d` the largest gain along domain edges
/// (+1 forward, +2 backward).
pub fn is_tileable(d: &TriDomain) -> bool {
    if !boundary_steps_ok(d) {
        return false;
    }
    let residues: BTreeSet<i64> = d.boundary.iter().map(|(&(a, b), &h)| (h - (a - b)).rem_euclid(3)).collect();
    if residues.len() > 1 {
        return false;
    }
    let mut adj: HashMap<Vertex, Vec<(Vertex, i64)>> = HashMap::new();
    for (u, v) in d.edges() {
        adj.entry(u).or_default().push((v, if forward(u, v) { 1 } else { 2 }));
        adj.entry(v).or_default().push((u, if forward(v, u) { 1 } else { 2 }));
    }
    for (&u, &hu) in &d.boundary {
        let dist = max_gain(d, u, &adj);
        for (v, &hv) in &d.boundary {
            if hv - hu > dist[v] {
                return false;
            }
        }
    }
    true
}

/// All boundary heights within one unit of each other.
pub fn strong_boundary_ok(d: &TriDomain) -> bool {
    let lo = d.boundary.values().min();
    let hi = d.boundary.values().max();
    matches!((lo, hi), (Some(lo), Some(hi)) if hi - lo <= 1)
}

/// Removes, one at a time, the hexagon forced at some boundary face, and
/// returns the centres in peel order.
pub fn hexagon_peel(d: &TriDomain) -> Result<Vec<Vertex>, LozengeError> {
    if !strong_boundary_ok(d) {
        return Err(LozengeError::NotStrong);
    }
    let mut rest: BTreeSet<Tri> = d.faces.iter().copied().collect();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let mut forced = None;
        for t in &rest {
            if (0..3).all(|k| rest.contains(&t.across(k))) {
                continue;
            }
            let options: Vec<Vertex> =
                t.verts().into_iter().filter(|&c| hexagon_ring(c).iter().all(|f| rest.contains(f))).collect();
            match options.len() {
                0 => return Err(LozengeError::PeelStuck(rest.into_iter().collect())),
                1 => {
                    forced = Some(options[0]);
                    break;
                }
                _ => {}
            }
        }
        let c = forced.ok_or_else(|| LozengeError::PeelStuck(rest.iter().copied().collect()))?;
        for f in hexagon_ring(c) {
            rest.remove(&f);
        }
        out.push(c);
    }
    Ok(out)
}

/// Brute-force exact covers of the domain by hexagons (at most `limit`).
pub fn hexagon_tilings(d: &TriDomain, limit: usize) -> Vec<Vec<Vertex>> {
    hexagon_covers(d.faces.iter().copied(), limit)
}

/// Exact covers of an arbitrary face set by hexagons (at most `limit`), centres sorted.
pub fn hexagon_covers(faces: impl IntoIterator<Item = Tri>, limit: usize) -> Vec<Vec<Vertex>> {
    fn rec(rest: &mut BTreeSet<Tri>, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        let Some(&t) = rest.iter().next() else {
            let mut c = cur.clone();
            c.sort();
            out.push(c);
            return;
        };
        for c in t.verts() {
            let ring = hexagon_ring(c);
            if ring.iter().all(|f| rest.contains(f)) {
                for f in &ring {
                    rest.remove(f);
                }
                cur.push(c);
                rec(rest, cur, out, limit);
                cur.pop();
                rest.extend(ring);
            }
        }
    }
    let mut rest: BTreeSet<Tri> = faces.into_iter().collect();
    let mut out = Vec::new();
    rec(&mut rest, &mut Vec::new(), &mut out, limit);
    out
}
