// Spreading content along a line of mobile nodes.

use std::error::Error;

use flowsched::wireless_distribution::{mobile_feasible, mobile_makespan_bsearch, mobile_makespan_linear, MobilePathInstance};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let inst = MobilePathInstance::new(vec![0.0, 1.5, 2.0, 6.0, 6.5, 9.0], 1.0, 0.5)?;
    let schedule = mobile_makespan_linear(&inst)?;
    schedule.verify(&inst, 1e-9)?;
    for (i, (t, x)) in schedule.tmin.iter().zip(&schedule.xmax).enumerate() {
        println!("node {}: receives at {t:.3}, reaches {x:.3}", i + 1);
    }
    let searched = mobile_makespan_bsearch(&inst, inst.makespan_upper_bound(), 1e-9)?;
    println!("makespan {:.6} (binary search {searched:.6})", schedule.makespan());
    assert!((schedule.makespan() - searched).abs() < 1e-6);
    assert!(!mobile_feasible(&inst, schedule.makespan() - 0.01));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
