// Largest-revenue path under a cost cap, with switching terms.

use std::error::Error;

use flowsched::revenue_path::{centroid_decomposition, solve_with, CostRevenueTree, SwitchingCase, TwoArmStrategy};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let path = CostRevenueTree::new(3, &[(0, 1, 1, 5), (1, 2, 1, 5)], 2, SwitchingCase::ZeroSwitching)?;
    let best = solve_with(&path, TwoArmStrategy::Search)?.expect("a path exists");
    println!("path of 3, C_max 2: {best:?}");
    assert_eq!(best.revenue, 10);

    // a star whose center charges 100 for every turn
    let mut star = CostRevenueTree::new(4, &[(0, 1, 1, 4), (0, 2, 1, 6), (0, 3, 2, 3)], 5, SwitchingCase::BoundedDegree)?;
    for (v, w) in [(1, 2), (1, 3), (2, 3)] {
        star.set_switching_cost(0, v, w, 100)?;
    }
    for strategy in [TwoArmStrategy::Search, TwoArmStrategy::BoundedCost, TwoArmStrategy::TwoPointer] {
        let best = solve_with(&star, strategy)?.expect("a path exists");
        println!("{strategy:?}: {best:?} via {:?}", star.path_vertices(best.u, best.v)?);
        assert_eq!(best.revenue, 6);
    }
    println!("centroid tree height {}", centroid_decomposition(&star).height);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
