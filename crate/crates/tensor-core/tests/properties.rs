use std::sync::Arc;

use proptest::prelude::*;
use tensor_core::*;

fn alphabet() -> Arc<LegAlphabet> {
    Arc::new(LegAlphabet::new(1, [Label(vec![Component::plus(1)]), Label(vec![Component::minus(1)])]).unwrap())
}

/// Random ring of rank-3 tensors (left, right, physical). Each tensor has a
/// single exponent, so every contraction sum is between equal exponents.
fn ring(specs: &[(Vec<(u32, u32, u32, i64)>, i64)]) -> NetworkGraph {
    let a = alphabet();
    let mut net = NetworkGraph::new();
    for (i, (entries, exp)) in specs.iter().enumerate() {
        let mut t = SparseTensor::new(vec![
            Leg::new("l", a.clone()),
            Leg::new("r", a.clone()),
            Leg::new("p", a.clone()),
        ]);
        for &(x, y, z, c) in entries {
            let _ = t.accumulate(vec![x, y, z], QMonomial::new(Coeff::from_integer(c), *exp));
        }
        net.add_node(Arc::new(t), format!("t{i}"));
    }
    let n = specs.len();
    for i in 0..n {
        net.connect(LegRef::new(i, 1), LegRef::new((i + 1) % n, 0));
        net.open_leg(LegRef::new(i, 2), LegRole::Physical);
    }
    net
}

fn spec_strategy() -> impl Strategy<Value = Vec<(Vec<(u32, u32, u32, i64)>, i64)>> {
    prop::collection::vec(
        (prop::collection::vec((0u32..3, 0u32..3, 0u32..3, 1i64..4), 1..8), -12i64..24),
        2..6,
    )
}

fn sequential(n: usize) -> ContractionPlan {
    ContractionPlan { steps: (1..n).map(|i| PlanStep { left: 0, right: i }).collect(), estimated_peak: 0.0 }
}

proptest! {
    #[test]
    fn contraction_is_plan_independent(specs in spec_strategy()) {
        let net = ring(&specs);
        let greedy = contract_network(&net).unwrap();
        let (seq, _) = execute_plan(&net, &sequential(specs.len())).unwrap();
        prop_assert_eq!(greedy, seq);
    }

    #[test]
    fn numeric_after_equals_numeric_before(specs in spec_strategy(), qi in 0usize..3) {
        let q = [0.5, 1.0, 2.0][qi];
        let net = ring(&specs);
        let exact = contract_network(&net).unwrap().map_values(|m| m.eval(q));
        let mut numeric: NetworkGraph<f64> = NetworkGraph::new();
        for node in net.nodes() {
            numeric.add_node(Arc::new(node.tensor.map_values(|m| m.eval(q))), node.tag.clone());
        }
        for (a, b) in net.edges() { numeric.connect(*a, *b); }
        for (l, r) in net.open_legs() { numeric.open_leg(*l, *r); }
        let direct = contract_network(&numeric).unwrap();
        prop_assert_eq!(exact.len(), direct.len());
        for (k, v) in exact.entries() {
            let w = direct.get(k).copied().unwrap_or(0.0);
            prop_assert!((v - w).abs() <= 1e-12 * v.abs().max(1.0));
        }
    }

    #[test]
    fn scalar_one_is_identity(entries in prop::collection::vec((0u32..3, 0u32..3, 1i64..5, -24i64..24), 1..10)) {
        let a = alphabet();
        let mut t: SparseTensor = SparseTensor::new(vec![Leg::new("x", a.clone()), Leg::new("y", a)]);
        for (x, y, c, e) in entries {
            let _ = t.insert(vec![x, y], QMonomial::new(Coeff::from_integer(c), e));
        }
        let one = SparseTensor::scalar(QMonomial::one());
        prop_assert_eq!(&contract_pair(&t, &one, &[]).unwrap(), &t);
        prop_assert_eq!(&contract_pair(&one, &t, &[]).unwrap(), &t);
    }
}
