// Replays a bundled request trace through the batching loop.

use std::error::Error;

use flowsched::cli::LinkInput;
use flowsched::link_scheduler::BatchMode;
use flowsched::timeline::SlotTimeline;
use flowsched::trace::{run_trace, BatchConfig};

const TRACE: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/data/link/mixed_trace.json"));

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let input: LinkInput = serde_json::from_str(TRACE)?;
    for (label, cfg) in [
        ("cutoff, R=4", BatchConfig::default()),
        ("iterative, R=2", BatchConfig { max_batch: 2, flush_timeout: 10.0, mode: BatchMode::IterativeGrant, ..BatchConfig::default() }),
        ("online", BatchConfig::online()),
    ] {
        let mut tl = SlotTimeline::from_snapshot(&input.timeline, cfg.backend)?;
        let report = run_trace(&input.requests, &mut tl, &cfg)?;
        println!("{label}: batches {:?}", report.batches);
        println!("  granted {} profit {} avb {:?}", report.granted, report.total_profit, report.timeline.avb);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
