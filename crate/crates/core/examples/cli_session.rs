// Drives the command line in-process, the way the binary does.

use std::error::Error;

use flowsched::cli;

fn call(args: &[&str], stdin: &str) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("flowsched").chain(args.iter().copied());
    let status = cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (status, String::from_utf8_lossy(&out).into_owned())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (status, out) = call(&["permcount", "--n", "3", "--k", "1"], "");
    println!("permcount -> {status}: {}", out.trim());
    assert_eq!(serde_json::from_str::<serde_json::Value>(&out)?, serde_json::json!({ "count": "2" }));

    let doc = r#"{"T": 6, "ops": [{"a": 1, "b": 4, "color": 2}, {"a": 3, "b": 6, "color": 3}]}"#;
    let (status, out) = call(&["color", "sweep", "--oracle"], doc);
    println!("color sweep -> {status}: {}", out.split_whitespace().collect::<String>());
    assert_eq!(status, cli::EXIT_OK);

    let (status, _) = call(&["color", "sweep"], r#"{"T": 6, "ops": [{"a": 1, "b": 9, "colour": 2}]}"#);
    assert_eq!(status, cli::EXIT_INPUT);

    let (status, out) = call(&["revpath", "solve", "--seed", "7", "--oracle"], "");
    println!("generated revpath -> {status}: {}", out.split_whitespace().collect::<String>());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
