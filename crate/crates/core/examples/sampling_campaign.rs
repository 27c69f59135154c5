// A seeded sampling campaign through the command interface. Two runs with
// the same seed produce identical bytes.
//
// ```bash
// cargo run --example sampling_campaign
// ```

use curvlike::cli::run_command;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let args = [
        "curvlike",
        "sample",
        "--n",
        "3",
        "--bundle",
        "4",
        "--count",
        "200",
        "--seed",
        "42",
        "--family",
        "symmetric",
        "--ambient",
        "complex_lagrangian",
        "--c",
        "1",
    ];
    let first = run_command(args);
    let second = run_command(args);
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first.stdout)?;
    println!(
        "exit {} with summary {}",
        first.code,
        serde_json::to_string_pretty(&v["summary"])?
    );

    let general = run_command([
        "curvlike", "sample", "--n", "3", "--bundle", "4", "--count", "200", "--seed", "42", "--family", "general",
    ]);
    let v: serde_json::Value = serde_json::from_str(&general.stdout)?;
    println!(
        "general family: symmetric fraction {}",
        v["summary"]["symmetric_fraction"]
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("sampling_campaign example");
}
