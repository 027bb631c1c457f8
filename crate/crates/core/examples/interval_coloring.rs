// Three ways to color slot intervals: online, offline sweep and reverse
// DSU.

use std::error::Error;

use flowsched::interval_coloring::{color_offline_dsu, color_offline_sweep, ColoredIntervalSet, ColoringOp};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ops = [ColoringOp::new(3, 5, 1), ColoringOp::new(6, 8, 1), ColoringOp::new(1, 10, 0)];
    let mut online = ColoredIntervalSet::new(10, 0)?;
    for op in ops {
        online.color_online(op)?;
        let parts: Vec<_> = online.intervals().iter().map(|i| format!("[{},{}]:{}", i.lo, i.hi, i.color)).collect();
        println!("after {op:?}: {}", parts.join(" "));
    }
    let sweep = color_offline_sweep(10, &ops, 0)?;
    let dsu = color_offline_dsu(10, &ops, 0)?;
    assert_eq!(online.intervals(), sweep.intervals());
    assert_eq!(sweep.intervals(), dsu.intervals());

    // the sweep never allocates per slot
    let long = color_offline_sweep(1_000_000_000, &[ColoringOp::new(2, 999_999_999, 4)], 0)?;
    println!("T = 10^9: {} intervals", long.len());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
