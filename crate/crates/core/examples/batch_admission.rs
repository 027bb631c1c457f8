// Admission on a single link: a preemptive batch through max-flow, then
// fixed and single-slot requests.

use std::error::Error;

use flowsched::link_scheduler::{
    admit_nonpreemptive_fixed, admit_nonpreemptive_unit, schedule_batch_preemptive, BatchMode, DesirabilityConfig,
    TransferRequest, UnitPolicy,
};
use flowsched::timeline::{Backend, SlotTimeline};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut tl = SlotTimeline::from_values(vec![10, 10], 1.0, 10, Backend::SegmentTree)?;
    let batch = [
        TransferRequest::preemptive("a", 1, 2, 15.0, 1.0),
        TransferRequest::preemptive("b", 1, 2, 15.0, 1.0),
    ];
    let decisions = schedule_batch_preemptive(&mut tl, &batch, BatchMode::DesirabilityCutoff, &DesirabilityConfig::new(1.0)?)?;
    for d in &decisions {
        println!("{}: granted={} allocation={:?}", d.request_id, d.granted, d.allocation);
    }
    assert_eq!(decisions.iter().filter(|d| d.granted).count(), 1);

    let mut tl = SlotTimeline::from_values(vec![10, 6, 6, 10], 1.0, 10, Backend::SegmentTree)?;
    let fixed = admit_nonpreemptive_fixed(&mut tl, &TransferRequest::fixed("f", 1, 4, 6, 2.0))?;
    assert!(fixed.granted);
    println!("fixed B=6 over [1,4] -> avb {:?}", tl.values());

    let mut tl = SlotTimeline::from_values(vec![9, 3, 5, 8], 1.0, 10, Backend::grouped_sorted())?;
    let unit = admit_nonpreemptive_unit(&mut tl, &TransferRequest::unit("u", 1, 4, 4, 1.0), UnitPolicy::BestFit)?;
    println!("unit B=4 best fit -> {:?}, avb {:?}", unit.allocation, tl.values());
    assert_eq!(tl.values(), vec![9, 3, 1, 8]);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
