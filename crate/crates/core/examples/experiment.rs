//! A small two-suite experiment written to a temporary directory.
use hamorient::workbench::{run, ExperimentConfig};

fn main() -> hamorient::Result<()> {
    let cfg = ExperimentConfig::from_json(
        r#"{
          "name": "demo",
          "suites": [
            {"suite": "two_factor", "n_grid": [10, 12], "k_grid": [1, 2], "trials": 5, "seed": 1},
            {"suite": "ghouila_houri", "max_n": 4, "mode": {"kind": "exhaustive"}, "control": true}
          ]
        }"#,
        "demo",
    )?;
    let out = std::env::temp_dir().join("hamorient-demo");
    let s = run(&cfg, &out)?;
    println!("{}", serde_json::to_string_pretty(&s).unwrap());
    println!("results in {}", out.display());
    Ok(())
}
