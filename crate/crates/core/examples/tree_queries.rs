// Path and subtree aggregates on a weighted tree.

use std::error::Error;

use flowsched::tree_aggregates::{EulerTour, LiftTables, Min, Sum, WeightKind, WeightedRootedTree};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    //      0
    //     / \
    //    1   3
    //    |   |\
    //    2   4 5
    let edges = [(0, 1, 3), (1, 2, 4), (0, 3, -2), (3, 4, 5), (3, 5, 1)];
    let tree = WeightedRootedTree::from_edges(6, 0, &edges, vec![1, 2, 3, 4, 5, 6])?;

    let mut paths = EulerTour::<Sum>::for_paths(&tree, WeightKind::Edge);
    println!("tour {:?}", paths.sequence());
    assert_eq!(paths.path_from_root(2)?, 7);
    paths.update_weight(1, 10)?;
    println!("root -> 2 after +10 on edge (0,1): {}", paths.path_from_root(2)?);

    let lifts = LiftTables::<Sum>::build(&tree, WeightKind::Edge);
    println!("lca(2, 4) = {}", lifts.lca(2, 4)?);
    println!("sum on 2 .. 5 = {}", paths.path_between(&lifts, 2, 5)?);

    let subtrees = EulerTour::<Sum>::for_subtrees(&tree, WeightKind::Vertex).compact()?;
    assert_eq!(subtrees.subtree_aggregate(0)?, 21);
    println!("vertex sum under 3: {}", subtrees.subtree_aggregate(3)?);

    let mins = LiftTables::<Min>::build(&tree, WeightKind::Edge);
    println!("min edge on 2 .. 4: {:?}", mins.path_aggregate_static(2, 4)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
