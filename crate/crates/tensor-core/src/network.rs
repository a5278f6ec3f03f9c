//! Tensor networks: placement, greedy planning and exact contraction.

use std::collections::HashMap;
use std::sync::Arc;

use crate::{contract_pair, QMonomial, SparseTensor, TensorError, Weight};

/// Role of an open leg.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LegRole {
    Physical,
    Boundary,
}

/// `(node, leg)` address.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LegRef {
    pub node: usize,
    pub leg: usize,
}

impl LegRef {
    pub fn new(node: usize, leg: usize) -> Self {
        LegRef { node, leg }
    }
}

/// A placed tensor. Tiles of the same kind share one `Arc`.
#[derive(Clone, Debug)]
pub struct Node<W = QMonomial> {
    pub tensor: Arc<SparseTensor<W>>,
    pub tag: String,
}

#[derive(Clone, Debug)]
pub struct NetworkGraph<W = QMonomial> {
    nodes: Vec<Node<W>>,
    edges: Vec<(LegRef, LegRef)>,
    open: Vec<(LegRef, LegRole)>,
}

impl<W: Weight> Default for NetworkGraph<W> {
    fn default() -> Self {
        Self::new()
    }
}

impl<W: Weight> NetworkGraph<W> {
    pub fn new() -> Self {
        NetworkGraph { nodes: Vec::new(), edges: Vec::new(), open: Vec::new() }
    }

    pub fn add_node(&mut self, tensor: Arc<SparseTensor<W>>, tag: impl Into<String>) -> usize {
        self.nodes.push(Node { tensor, tag: tag.into() });
        self.nodes.len() - 1
    }

    pub fn connect(&mut self, a: LegRef, b: LegRef) {
        self.edges.push((a, b));
    }

    pub fn open_leg(&mut self, at: LegRef, role: LegRole) {
        self.open.push((at, role));
    }

    /// Attaches a one-leg cap tensor to `at`.
    pub fn cap(&mut self, at: LegRef, cap: Arc<SparseTensor<W>>, tag: impl Into<String>) -> usize {
        let id = self.add_node(cap, tag);
        self.connect(at, LegRef::new(id, 0));
        id
    }

    pub fn nodes(&self) -> &[Node<W>] {
        &self.nodes
    }
    pub fn edges(&self) -> &[(LegRef, LegRef)] {
        &self.edges
    }
    pub fn open_legs(&self) -> &[(LegRef, LegRole)] {
        &self.open
    }
    pub fn physical_legs(&self) -> Vec<LegRef> {
        self.open.iter().filter(|(_, r)| *r == LegRole::Physical).map(|(l, _)| *l).collect()
    }

    fn leg(&self, at: LegRef) -> Result<&crate::Leg, TensorError> {
        let node = self.nodes.get(at.node).ok_or(TensorError::NoSuchNode(at.node))?;
        node.tensor.legs().get(at.leg).ok_or_else(|| TensorError::BadLeg {
            node: at.node,
            leg: at.leg,
            problem: "no such leg".into(),
        })
    }

    /// Every leg used exactly once; paired alphabets agree.
    pub fn validate(&self) -> Result<(), TensorError> {
        let mut uses: HashMap<LegRef, usize> = HashMap::new();
        for (a, b) in &self.edges {
            let (la, lb) = (self.leg(*a)?, self.leg(*b)?);
            if la.alphabet != lb.alphabet {
                return Err(TensorError::AlphabetMismatch { a: la.name.clone(), b: lb.name.clone() });
            }
            *uses.entry(*a).or_default() += 1;
            *uses.entry(*b).or_default() += 1;
        }
        for (l, _) in &self.open {
            self.leg(*l)?;
            *uses.entry(*l).or_default() += 1;
        }
        for (n, node) in self.nodes.iter().enumerate() {
            for leg in 0..node.tensor.rank() {
                match uses.get(&LegRef::new(n, leg)).copied().unwrap_or(0) {
                    1 => {}
                    0 => return Err(TensorError::BadLeg { node: n, leg, problem: "dangling".into() }),
                    k => return Err(TensorError::BadLeg { node: n, leg, problem: format!("used {k} times") }),
                }
            }
        }
        Ok(())
    }

    fn partners(&self) -> HashMap<LegRef, LegRef> {
        let mut p = HashMap::new();
        for (a, b) in &self.edges {
            p.insert(*a, *b);
            p.insert(*b, *a);
        }
        p
    }
}

/// One pairwise step, naming clusters by their smallest node id.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PlanStep {
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContractionPlan {
    pub steps: Vec<PlanStep>,
    /// Largest estimated intermediate entry count.
    pub estimated_peak: f64,
}

/// Measured statistics of a contraction run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ContractionStats {
    pub steps: usize,
    pub peak_entries: usize,
}

struct Cluster {
    size: f64,
    legs: Vec<LegRef>,
    support: Vec<f64>,
}

/// Greedy order: always merge the connected pair with the smallest estimated result.
pub fn plan_contraction<W: Weight>(net: &NetworkGraph<W>) -> Result<ContractionPlan, TensorError> {
    net.validate()?;
    let partner = net.partners();
    let n = net.nodes.len();
    let mut owner: Vec<usize> = (0..n).collect();
    let mut clusters: Vec<Option<Cluster>> = net
        .nodes
        .iter()
        .enumerate()
        .map(|(id, node)| {
            let t = &node.tensor;
            Some(Cluster {
                size: t.len() as f64,
                legs: (0..t.rank()).map(|l| LegRef::new(id, l)).collect(),
                support: t.support_sizes().into_iter().map(|s| s.max(1) as f64).collect(),
            })
        })
        .collect();
    let mut steps = Vec::new();
    let mut peak: f64 = clusters.iter().flatten().map(|c| c.size).fold(0.0, f64::max);

    loop {
        let live: Vec<usize> = (0..n).filter(|&i| clusters[i].is_some()).collect();
        if live.len() <= 1 {
            break;
        }
        let mut best: Option<(f64, usize, usize)> = None;
        for &a in &live {
            let ca = clusters[a].as_ref().unwrap();
            let mut shared: HashMap<usize, f64> = HashMap::new();
            for (i, l) in ca.legs.iter().enumerate() {
                if let Some(p) = partner.get(l) {
                    let b = owner[p.node];
                    if b != a {
                        let cb = clusters[b].as_ref().unwrap();
                        let j = cb.legs.iter().position(|x| x == p).unwrap();
                        *shared.entry(b).or_insert(1.0) *= ca.support[i].max(cb.support[j]);
                    }
                }
            }
            for (b, div) in shared {
                if b < a {
                    continue;
                }
                let est = (ca.size * clusters[b].as_ref().unwrap().size / div).max(1.0);
                let cand = (est, a, b);
                if best.is_none_or(|x| (cand.0, cand.1, cand.2) < x) {
                    best = Some(cand);
                }
            }
        }
        // Disconnected remainder: outer product of the two smallest ids.
        let (est, a, b) = best.unwrap_or_else(|| {
            let (a, b) = (live[0], live[1]);
            (clusters[a].as_ref().unwrap().size * clusters[b].as_ref().unwrap().size, a, b)
        });
        let cb = clusters[b].take().unwrap();
        let ca = clusters[a].take().unwrap();
        let mut legs = Vec::new();
        let mut support = Vec::new();
        for (l, s) in ca.legs.iter().zip(&ca.support).chain(cb.legs.iter().zip(&cb.support)) {
            let internal = partner.get(l).is_some_and(|p| {
                let (x, y) = (owner[l.node], owner[p.node]);
                (x == a && y == b) || (x == b && y == a)
            });
            if !internal {
                legs.push(*l);
                support.push(*s);
            }
        }
        for o in owner.iter_mut() {
            if *o == b {
                *o = a;
            }
        }
        peak = peak.max(est);
        clusters[a] = Some(Cluster { size: est, legs, support });
        steps.push(PlanStep { left: a, right: b });
    }
    Ok(ContractionPlan { steps, estimated_peak: peak })
}

/// Contracts the whole network; result legs follow `open_legs()` order.
pub fn contract_network<W: Weight>(net: &NetworkGraph<W>) -> Result<SparseTensor<W>, TensorError> {
    contract_network_with_stats(net).map(|(t, _)| t)
}

pub fn contract_network_with_stats<W: Weight>(
    net: &NetworkGraph<W>,
) -> Result<(SparseTensor<W>, ContractionStats), TensorError> {
    let plan = plan_contraction(net)?;
    execute_plan(net, &plan)
}

/// Runs a given plan (any valid plan gives the same result).
pub fn execute_plan<W: Weight>(
    net: &NetworkGraph<W>,
    plan: &ContractionPlan,
) -> Result<(SparseTensor<W>, ContractionStats), TensorError> {
    let partner = net.partners();
    let n = net.nodes.len();
    if n == 0 {
        return Ok((SparseTensor::scalar(W::one()), ContractionStats::default()));
    }
    let mut owner: Vec<usize> = (0..n).collect();
    let mut work: Vec<Option<(SparseTensor<W>, Vec<LegRef>)>> = net
        .nodes
        .iter()
        .enumerate()
        .map(|(id, node)| {
            let t = (*node.tensor).clone();
            let legs = (0..t.rank()).map(|l| LegRef::new(id, l)).collect();
            Some((t, legs))
        })
        .collect();
    let mut stats = ContractionStats { steps: 0, peak_entries: work.iter().flatten().map(|w| w.0.len()).max().unwrap_or(0) };
    for step in &plan.steps {
        let (a, b) = (step.left, step.right);
        let (tb, lb) = work[b].take().ok_or(TensorError::NoSuchNode(b))?;
        let (ta, la) = work[a].take().ok_or(TensorError::NoSuchNode(a))?;
        let mut pairs = Vec::new();
        for (i, l) in la.iter().enumerate() {
            if let Some(p) = partner.get(l) {
                if let Some(j) = lb.iter().position(|x| x == p) {
                    pairs.push((i, j));
                }
            }
        }
        let t = contract_pair(&ta, &tb, &pairs)?;
        let legs: Vec<LegRef> = la
            .iter()
            .enumerate()
            .filter(|(i, _)| !pairs.iter().any(|p| p.0 == *i))
            .map(|(_, l)| *l)
            .chain(lb.iter().enumerate().filter(|(j, _)| !pairs.iter().any(|p| p.1 == *j)).map(|(_, l)| *l))
            .collect();
        for o in owner.iter_mut() {
            if *o == b {
                *o = a;
            }
        }
        stats.steps += 1;
        stats.peak_entries = stats.peak_entries.max(t.len());
        work[a] = Some((t, legs));
    }
    let mut rest: Vec<(SparseTensor<W>, Vec<LegRef>)> = work.into_iter().flatten().collect();
    if rest.len() != 1 {
        return Err(TensorError::BadLeg { node: 0, leg: 0, problem: "plan left several clusters".into() });
    }
    let (t, legs) = rest.pop().unwrap();
    let order: Vec<usize> = net
        .open
        .iter()
        .map(|(l, _)| legs.iter().position(|x| x == l).expect("open leg survives contraction"))
        .collect();
    Ok((t.permute(&order), stats))
}

/// Fixes the physical legs to the given symbols (in `physical_legs()` order) and contracts to a scalar.
pub fn evaluate_amplitude(net: &NetworkGraph<QMonomial>, assignment: &[u32]) -> Result<QMonomial, TensorError> {
    let fixed = fix_physical(net, assignment)?;
    let t = contract_network(&fixed)?;
    Ok(t.scalar_value()?.unwrap_or_else(QMonomial::zero))
}

/// Same network with every physical leg capped by a δ on the given symbol.
pub fn fix_physical<W: Weight>(net: &NetworkGraph<W>, assignment: &[u32]) -> Result<NetworkGraph<W>, TensorError> {
    let phys = net.physical_legs();
    if phys.len() != assignment.len() {
        return Err(TensorError::AssignmentArity { got: assignment.len(), expected: phys.len() });
    }
    if let Some((l, _)) = net.open.iter().find(|(_, r)| *r == LegRole::Boundary) {
        return Err(TensorError::UncappedBoundary { node: l.node, leg: l.leg });
    }
    let mut out = NetworkGraph { nodes: net.nodes.clone(), edges: net.edges.clone(), open: Vec::new() };
    for (l, &sym) in phys.iter().zip(assignment) {
        let leg = net.leg(*l)?.clone();
        let delta = SparseTensor::delta(leg, sym, W::one())?;
        out.cap(*l, Arc::new(delta), "fixed");
    }
    Ok(out)
}

/// All nonzero terms of the contraction sum with physical legs fixed: for each
/// term, the chosen entry (index tuple) of every node. At most `limit` terms.
pub fn enumerate_terms<W: Weight>(
    net: &NetworkGraph<W>,
    assignment: &[u32],
    limit: usize,
) -> Result<Vec<Vec<Vec<u32>>>, TensorError> {
    net.validate()?;
    let phys = net.physical_legs();
    if phys.len() != assignment.len() {
        return Err(TensorError::AssignmentArity { got: assignment.len(), expected: phys.len() });
    }
    let partner = net.partners();
    let n = net.nodes.len();
    let fixed: HashMap<LegRef, u32> = phys.iter().copied().zip(assignment.iter().copied()).collect();

    // Static order: most constrained node next.
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let score = |id: usize| {
            (0..net.nodes[id].tensor.rank())
                .filter(|&l| {
                    let r = LegRef::new(id, l);
                    fixed.contains_key(&r) || partner.get(&r).is_some_and(|p| placed[p.node])
                })
                .count()
        };
        let next = (0..n).filter(|&i| !placed[i]).max_by_key(|&i| (score(i), std::cmp::Reverse(i))).unwrap();
        placed[next] = true;
        order.push(next);
    }
    let entries: Vec<Vec<Vec<u32>>> =
        net.nodes.iter().map(|nd| nd.tensor.entries().map(|(k, _)| k.clone()).collect()).collect();
    let mut chosen: Vec<Option<usize>> = vec![None; n];
    let mut out = Vec::new();
    search(0, &order, &entries, &partner, &fixed, &mut chosen, &mut out, limit);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    depth: usize,
    order: &[usize],
    entries: &[Vec<Vec<u32>>],
    partner: &HashMap<LegRef, LegRef>,
    fixed: &HashMap<LegRef, u32>,
    chosen: &mut Vec<Option<usize>>,
    out: &mut Vec<Vec<Vec<u32>>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if depth == order.len() {
        out.push(chosen.iter().enumerate().map(|(id, c)| entries[id][c.unwrap()].clone()).collect());
        return;
    }
    let id = order[depth];
    'entry: for (e, key) in entries[id].iter().enumerate() {
        for (l, &v) in key.iter().enumerate() {
            let r = LegRef::new(id, l);
            if let Some(&f) = fixed.get(&r) {
                if f != v {
                    continue 'entry;
                }
            }
            if let Some(p) = partner.get(&r) {
                if let Some(pe) = chosen[p.node] {
                    if entries[p.node][pe][p.leg] != v {
                        continue 'entry;
                    }
                }
            }
        }
        chosen[id] = Some(e);
        search(depth + 1, order, entries, partner, fixed, chosen, out, limit);
        chosen[id] = None;
    }
}
