use flowsched::revenue_path::{CostRevenueTree, SwitchingCase};
use rand::rngs::StdRng;
use rand::Rng;

/// Random tree with n <= 10, costs <= 5, revenues <= 9, switching terms <= 3.
pub fn random_instance(rng: &mut StdRng, case: SwitchingCase) -> CostRevenueTree {
    let n = rng.gen_range(1..=10);
    let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v, rng.gen_range(0..=5), rng.gen_range(0..=9))).collect();
    let mut tree = CostRevenueTree::new(n, &edges, rng.gen_range(0..=8), case).unwrap();
    if case == SwitchingCase::BoundedDegree {
        for u in 0..n {
            let nb: Vec<usize> = tree.neighbors(u).collect();
            for (a, &v) in nb.iter().enumerate() {
                for &w in &nb[a + 1..] {
                    tree.set_switching_cost(u, v, w, rng.gen_range(0..=3)).unwrap();
                    tree.set_switching_revenue(u, v, w, rng.gen_range(0..=3)).unwrap();
                }
            }
        }
    }
    tree
}

/// Best affordable revenue over all simple paths, walking each one.
pub fn brute_force_best(tree: &CostRevenueTree) -> Option<i64> {
    let mut best = None;
    for u in 0..tree.len() {
        for v in u..tree.len() {
            let (cost, revenue) = tree.walk_totals(&tree.path_vertices(u, v).unwrap()).unwrap();
            if cost <= tree.c_max() && best.is_none_or(|b| revenue > b) {
                best = Some(revenue);
            }
        }
    }
    best
}

/// Same instance with every switching term dropped.
pub fn zero_switching_projection(tree: &CostRevenueTree) -> CostRevenueTree {
    let edges: Vec<_> = (0..tree.len())
        .flat_map(|u| tree.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
        .map(|(u, v)| {
            let (c, p) = tree.edge(u, v).unwrap();
            (u, v, c, p)
        })
        .collect();
    CostRevenueTree::new(tree.len(), &edges, tree.c_max(), SwitchingCase::ZeroSwitching).unwrap()
}
