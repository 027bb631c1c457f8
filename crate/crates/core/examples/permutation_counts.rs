// Permutations with exactly k increasing 2-sequences.

use std::error::Error;

use flowsched::perm_count::{count_permutations, count_table, CountMode};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let table = count_table(6, CountMode::ExactBigint)?;
    for (i, row) in table.rows.iter().enumerate() {
        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!("n={}: {}", i + 1, row.join(" "));
    }
    assert_eq!(count_permutations(3, 1, CountMode::ExactBigint)?.to_string(), "2");
    let big = count_permutations(60, 3, CountMode::ExactBigint)?;
    let residue = count_permutations(60, 3, CountMode::Modular(1_000_000_007))?;
    println!("P(60,3) = {big}\n         = {residue} mod 1e9+7");
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
