// The same reservation history on the three timeline backends, plus the
// longest-free-run array.

use std::error::Error;

use flowsched::timeline::{Backend, SignedSlotArray, SlotTimeline};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let backends = [Backend::SegmentTree, Backend::blocks(), Backend::grouped_sorted(), Backend::grouped_hashed()];
    for backend in backends {
        let mut tl = SlotTimeline::new(4, 1.0, 10, backend)?;
        tl.range_add(2, 3, -4)?;
        assert_eq!(tl.values(), vec![10, 6, 6, 10]);
        assert_eq!(tl.range_min(1, 4)?, 6);
        assert_eq!(tl.range_max(2, 4)?, (10, 4));
        println!("{backend:?}: avb {:?}", tl.values());
    }

    let tl = SlotTimeline::from_values(vec![9, 3, 5, 8], 1.0, 10, Backend::grouped_sorted())?;
    assert_eq!(tl.find_best_fit(1, 4, 4)?, Some(3));
    assert_eq!(tl.find_exact(1, 4, 7)?, None);
    println!("best fit for 4 units in [1,4]: slot 3");

    let mut runs = SignedSlotArray::new(6, 1)?;
    runs.reserve(3, 3)?;
    let run = runs.longest_free_interval(1, 6)?;
    println!("longest free run: {run:?}");
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
