use flowsched::generate::tree_spec;
use flowsched::oracle::{naive_lca, naive_path_weights, naive_subtree_weights};
use flowsched::tree_aggregates::{EulerTour, LiftTables, Max, Min, Sum, WeightKind, WeightedRootedTree};
use rand::Rng;

pub const KINDS: [WeightKind; 2] = [WeightKind::Edge, WeightKind::Vertex];

fn sum(w: &[i64]) -> i64 {
    w.iter().sum()
}

fn set(tree: &mut WeightedRootedTree, kind: WeightKind, v: usize, w: i64) {
    match kind {
        WeightKind::Edge => tree.set_edge_weight(v, w).unwrap(),
        WeightKind::Vertex => tree.set_vertex_weight(v, w).unwrap(),
    }
}

/// Random tree (`n <= max_n`) under `ops` random updates and Euler-tour
/// queries, every answer compared with a naive walk.
pub fn dynamic_session<R: Rng>(rng: &mut R, max_n: usize, ops: usize, kind: WeightKind) -> Result<(), String> {
    let mut tree = tree_spec(rng, max_n).build().map_err(|e| e.to_string())?;
    let n = tree.len();
    let mut paths = EulerTour::<Sum>::for_paths(&tree, kind);
    let mut sums = EulerTour::<Sum>::for_subtrees(&tree, kind);
    let mut mins = EulerTour::<Min>::for_subtrees(&tree, kind);
    let mut maxs = EulerTour::<Max>::for_subtrees(&tree, kind);
    let lifts = LiftTables::<Sum>::build(&tree, kind);
    for step in 0..ops {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let fail = |what: &str, got: String, want: String| Err(format!("step {step} {what}({u}, {v}) on {kind:?}: got {got}, want {want}"));
        match rng.gen_range(0..5) {
            0 if kind == WeightKind::Vertex || v != tree.root() => {
                let delta = rng.gen_range(-5..=5);
                let w = tree.weight(v, kind).unwrap() + delta;
                paths.update_weight(v, delta).map_err(|e| e.to_string())?;
                for result in [sums.set_weight(v, w), mins.set_weight(v, w), maxs.set_weight(v, w)] {
                    result.map_err(|e| e.to_string())?;
                }
                set(&mut tree, kind, v, w);
            }
            1 => {
                let (got, want) = (paths.path_from_root(v).unwrap(), sum(&naive_path_weights(&tree, kind, tree.root(), v)));
                if got != want {
                    return fail("path_from_root", got.to_string(), want.to_string());
                }
            }
            2 => {
                // lifting only supplies the (static) LCA here
                let (got, want) = (paths.path_between(&lifts, u, v).unwrap(), sum(&naive_path_weights(&tree, kind, u, v)));
                if got != want {
                    return fail("path", got.to_string(), want.to_string());
                }
            }
            _ => {
                let w = naive_subtree_weights(&tree, kind, v);
                let got = (sums.subtree_aggregate(v).unwrap(), mins.subtree_aggregate(v).unwrap(), maxs.subtree_aggregate(v).unwrap());
                let want = (sum(&w), w.iter().copied().min().unwrap_or(i64::MAX), w.iter().copied().max().unwrap_or(i64::MIN));
                if got != want {
                    return fail("subtree", format!("{got:?}"), format!("{want:?}"));
                }
            }
        }
    }
    static_check(&tree, kind)
}

/// Binary-lifting aggregates and LCA over every vertex pair.
pub fn static_check(tree: &WeightedRootedTree, kind: WeightKind) -> Result<(), String> {
    let plus = LiftTables::<Sum>::build(tree, kind);
    let low = LiftTables::<Min>::build(tree, kind);
    let high = LiftTables::<Max>::build(tree, kind);
    for u in 0..tree.len() {
        for v in 0..tree.len() {
            let lca = naive_lca(tree, u, v);
            for (name, got) in [("sum", plus.lca(u, v)), ("min", low.lca(u, v)), ("max", high.lca(u, v))] {
                if got != Ok(lca) {
                    return Err(format!("{name} lca({u}, {v}) = {got:?}, want {lca}"));
                }
            }
            let w = naive_path_weights(tree, kind, u, v);
            let want = (
                (!w.is_empty()).then(|| sum(&w)),
                w.iter().copied().min(),
                w.iter().copied().max(),
            );
            let got = (
                plus.path_aggregate_static(u, v).unwrap(),
                low.path_aggregate_static(u, v).unwrap(),
                high.path_aggregate_static(u, v).unwrap(),
            );
            if got != want {
                return Err(format!("{kind:?} path ({u}, {v}): got {got:?}, want {want:?}"));
            }
        }
    }
    Ok(())
}
