//! Running a TOML experiment config in-process and printing its CSV.
//!
//! ```bash
//! cargo run --example experiment_config
//! ```

use thermaneg::cli::config::ExperimentConfig;
use thermaneg::cli::{cmd_sweep, cmd_threshold, presets};

const CONFIG: &str = r#"
[model]
kind = "harmonic"
topology = "star"
n_list = [4, 8]
c = 1.0

[schedule]
T_range = [0.5, 1.0]
count = 3

[partitions]
families = ["half-half", "central"]
"#;

fn main() {
    let cfg = ExperimentConfig::parse(CONFIG, &[]).expect("valid config");
    let sweep = cmd_sweep(&cfg).expect("sweep runs");
    print!("{}", sweep.csv.as_str());
    let thresholds = cmd_threshold(&cfg).expect("thresholds run");
    print!("\n{}", thresholds.csv.as_str());
    println!("\nbuilt-in presets:");
    for p in presets::PRESETS {
        println!("  {:<11} {}", p.id, p.description);
    }
}
