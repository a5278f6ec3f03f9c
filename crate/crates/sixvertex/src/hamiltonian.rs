//! 2D Fredkin moves and the local terms `H₀ + H_∂ + H_S + H_C`.

use std::collections::{HashMap, HashSet, VecDeque};

use fredkin1d::ColoredSpin;
use statevec::{apply_diagonal, apply_local_operator, LocalOp, WeightedState};

use crate::{boundary_energy, enumerate_ground_basis, ground_state, Kind, Site, SixVertexConfig, SixVertexError};

/// Row and column variant (1 = left/lower control, 2 = right/upper control) of move `j ∈ 1..=4`.
pub fn move_variants(j: u8) -> Option<(u8, u8)> {
    match j {
        1 => Some((1, 1)),
        2 => Some((1, 2)),
        3 => Some((2, 1)),
        4 => Some((2, 2)),
        _ => None,
    }
}

/// The three sites a variant acts on in chain `kind` at the plaquette `(x, y)`.
fn triple(l: usize, kind: Kind, x: usize, y: usize, variant: u8) -> Option<[Site; 3]> {
    let (j, i) = match kind {
        Kind::H => (y, x),
        Kind::V => (x, y),
    };
    let start = if variant == 1 { i.checked_sub(1)? } else { i };
    if start + 2 >= l {
        return None;
    }
    let site = |p| match kind {
        Kind::H => Site::h(p, j),
        Kind::V => Site::v(j, p),
    };
    Some([site(start), site(start + 1), site(start + 2)])
}

/// Support of move `j` at `(x, y)`: row triple then column triple.
pub fn move_support(l: usize, x: usize, y: usize, j: u8) -> Option<[Site; 6]> {
    let (rv, cv) = move_variants(j)?;
    if x + 1 >= l || y + 1 >= l {
        return None;
    }
    let r = triple(l, Kind::H, x, y, rv)?;
    let c = triple(l, Kind::V, x, y, cv)?;
    Some([r[0], r[1], r[2], c[0], c[1], c[2]])
}

/// `Some(true)` for the raised pattern, `Some(false)` for the lowered one.
fn classify(t: [ColoredSpin; 3], variant: u8) -> Option<bool> {
    match (variant, t[0].up, t[1].up, t[2].up) {
        (1, true, true, false) | (2, true, false, false) => Some(true),
        (1, true, false, true) | (2, false, true, false) => Some(false),
        _ => None,
    }
}

/// Colour-transporting rearrangement of a triple (raised → lowered or back).
fn transport(t: [ColoredSpin; 3], variant: u8, raised: bool) -> [ColoredSpin; 3] {
    let [a, b, c] = t;
    match (variant, raised) {
        (1, true) | (2, false) => [b, c, a],
        _ => [c, a, b],
    }
}

/// Applies (or reverses) the 2D Fredkin move `j` at dual point `(x+½, y+½)`.
pub fn fredkin_move_2d(c: &SixVertexConfig, x: usize, y: usize, j: u8) -> Option<SixVertexConfig> {
    let (rv, cv) = move_variants(j)?;
    let sup = move_support(c.l(), x, y, j)?;
    let row = [c.get(sup[0]), c.get(sup[1]), c.get(sup[2])];
    let col = [c.get(sup[3]), c.get(sup[4]), c.get(sup[5])];
    let raised = classify(row, rv)?;
    if classify(col, cv)? != raised {
        return None;
    }
    let mut out = c.clone();
    for (k, sp) in transport(row, rv, raised).into_iter().chain(transport(col, cv, raised)).enumerate() {
        out.set(sup[k], sp);
    }
    Some(out)
}

/// Adjacent matched pairs `↑c ↓c` inside a chain, as site pairs.
fn adjacent_pairs(l: usize) -> Vec<(Site, Site)> {
    let mut out = Vec::new();
    for a in 0..l - 1 {
        for b in 0..l - 1 {
            out.push((Site::h(a, b), Site::h(a + 1, b)));
            out.push((Site::v(a, b), Site::v(a, b + 1)));
        }
    }
    out
}

/// Configurations one 2D Fredkin move or one colour swap away.
pub fn neighbours(c: &SixVertexConfig) -> Vec<SixVertexConfig> {
    let l = c.l();
    let mut out = Vec::new();
    for x in 1..l - 1 {
        for y in 1..l - 1 {
            for j in 1..=4 {
                out.extend(fredkin_move_2d(c, x, y, j));
            }
        }
    }
    for (a, b) in adjacent_pairs(l) {
        let (sa, sb) = (c.get(a), c.get(b));
        if sa.up && !sb.up && sa.color == sb.color {
            for col in (1..=c.s()).filter(|&k| k != sa.color) {
                let mut d = c.clone();
                d.set(a, ColoredSpin::up(col));
                d.set(b, ColoredSpin::down(col));
                out.push(d);
            }
        }
    }
    out
}

/// Components of the ground basis under [`neighbours`].
pub fn move_graph_components(l: usize, s: u8) -> Result<usize, SixVertexError> {
    let basis = enumerate_ground_basis(l, s)?;
    let index: HashMap<&SixVertexConfig, usize> = basis.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut seen = HashSet::new();
    let mut comps = 0;
    for start in 0..basis.len() {
        if !seen.insert(start) {
            continue;
        }
        comps += 1;
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            for nb in neighbours(&basis[k]) {
                let j = *index.get(&nb).ok_or(SixVertexError::MoveLeftBasis)?;
                if seen.insert(j) {
                    queue.push_back(j);
                }
            }
        }
    }
    Ok(comps)
}

fn code(up: bool, c: u8) -> u8 {
    ColoredSpin { up, color: c }.code()
}

/// Local `H_S` projector for move `j` (support from [`move_support`]).
pub fn move_projector(s: u8, j: u8, q: f64) -> LocalOp {
    let (rv, cv) = move_variants(j).expect("j in 1..=4");
    let norm = (q.powi(-2) + q.powi(2)).sqrt();
    let raised = |v: u8, a: u8, b: u8, c: u8| match v {
        1 => [ColoredSpin::up(a), ColoredSpin::up(b), ColoredSpin::down(c)],
        _ => [ColoredSpin::up(a), ColoredSpin::down(b), ColoredSpin::down(c)],
    };
    let mut vecs = Vec::new();
    let cs: Vec<u8> = (1..=s).collect();
    for &a in &cs {
        for &b in &cs {
            for &c in &cs {
                for &d in &cs {
                    for &e in &cs {
                        for &f in &cs {
                            let (r, k) = (raised(rv, a, b, c), raised(cv, d, e, f));
                            let hi: Vec<u8> = r.iter().chain(&k).map(|sp| sp.code()).collect();
                            let lo: Vec<u8> =
                                transport(r, rv, true).iter().chain(&transport(k, cv, true)).map(|sp| sp.code()).collect();
                            vecs.push(vec![(hi, q.recip() / norm), (lo, -q / norm)]);
                        }
                    }
                }
            }
        }
    }
    LocalOp::from_projectors(&vecs)
}

/// Colour term on an adjacent pair.
pub fn color_term(s: u8) -> LocalOp {
    let mut op = LocalOp::default();
    for c1 in 1..=s {
        for c2 in 1..=s {
            if c1 == c2 {
                continue;
            }
            let t = vec![code(true, c1), code(false, c2)];
            op.add(t.clone(), t, 1.0);
            let (a, b) = (vec![code(true, c1), code(false, c1)], vec![code(true, c2), code(false, c2)]);
            op.add(a.clone(), a.clone(), 1.0);
            op.add(b.clone(), b.clone(), 1.0);
            op.add(a.clone(), b.clone(), -1.0);
            op.add(b, a, -1.0);
        }
    }
    op
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnihilationReport {
    pub terms_checked: usize,
    pub max_residual: f64,
    pub worst_term: String,
    /// `⟨GS|H_∂|GS⟩` including the constant offset.
    pub boundary_expectation: f64,
}

impl AnnihilationReport {
    fn record(&mut self, name: impl Into<String>, r: f64) {
        self.terms_checked += 1;
        if r >= self.max_residual {
            self.max_residual = r;
            self.worst_term = name.into();
        }
    }
}

/// Applies every local term to the normalized ground state.
pub fn verify_annihilation(l: usize, s: u8, q: f64) -> Result<AnnihilationReport, SixVertexError> {
    let gs = ground_state(l, s, q)?;
    verify_state(&gs, l, s, q)
}

pub fn verify_state(gs: &WeightedState, l: usize, s: u8, q: f64) -> Result<AnnihilationReport, SixVertexError> {
    let mut rep = AnnihilationReport {
        terms_checked: 0,
        max_residual: 0.0,
        worst_term: String::new(),
        boundary_expectation: 0.0,
    };
    let li = l as i64;
    let decode = |lab: &[u8]| SixVertexConfig::from_label(l, s, lab).expect("labels of the right shape");
    for x in 0..li {
        for y in 0..li {
            let r = apply_diagonal(gs, |lab| {
                let c = decode(lab);
                let q = c.sh2(x, y - 1) - c.sh2(x, y) - c.sv2(x - 1, y) + c.sv2(x, y);
                (q * q) as f64 / 4.0
            });
            rep.record(format!("H0({x},{y})"), r.norm());
        }
    }
    let hb = apply_diagonal(gs, |lab| boundary_energy(&decode(lab)));
    rep.record("Hboundary", hb.norm());
    rep.boundary_expectation = gs.inner(&hb);
    let idx = |site| SixVertexConfig::site_index(l, site);
    for j in 1..=4u8 {
        let op = move_projector(s, j, q);
        for x in 1..l - 1 {
            for y in 1..l - 1 {
                if let Some(sup) = move_support(l, x, y, j) {
                    let support: Vec<usize> = sup.iter().map(|&st| idx(st)).collect();
                    let r = apply_local_operator(gs, &support, &op)?.norm();
                    rep.record(format!("HS{j}({x},{y})"), r);
                }
            }
        }
    }
    let op = color_term(s);
    for (a, b) in adjacent_pairs(l) {
        let r = apply_local_operator(gs, &[idx(a), idx(b)], &op)?.norm();
        rep.record(format!("HC({a:?},{b:?})"), r);
    }
    Ok(rep)
}
