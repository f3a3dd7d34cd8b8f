//! Built-in experiment presets, one per reproduced figure.

use super::config::{ConfigError, ExperimentConfig};

/// Which command a preset drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetCommand {
    Sweep,
    Threshold,
}

#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub id: &'static str,
    pub command: PresetCommand,
    pub description: &'static str,
    pub toml: &'static str,
}

impl Preset {
    pub fn config(&self) -> Result<ExperimentConfig, ConfigError> {
        ExperimentConfig::parse(self.toml, &[])
    }

    pub fn config_with(&self, overrides: &[String]) -> Result<ExperimentConfig, ConfigError> {
        ExperimentConfig::parse(self.toml, overrides)
    }
}

pub const PRESETS: &[Preset] = &[
    Preset {
        id: "fig2",
        command: PresetCommand::Sweep,
        description: "harmonic ring n=128, c=0.4, alternating blocks, beta = 2.5, 2.4, 2",
        toml: r#"
[model]
kind = "harmonic"
topology = "ring_nn"
n = 128
c = 0.4

[schedule]
beta_list = [2.5, 2.4, 2.0]

[partitions]
families = ["blocks"]
blocks_nb = [1, 2, 3, 4, 5, 6, 7]
"#,
    },
    Preset {
        id: "fig3",
        command: PresetCommand::Sweep,
        description: "harmonic ring n=100, c=0.4, transfer sweep, beta = 1.87, 1.865, 1.863",
        toml: r#"
[model]
kind = "harmonic"
topology = "ring_nn"
n = 100
c = 0.4

[schedule]
beta_list = [1.87, 1.865, 1.863]

[partitions]
families = ["transfer"]
"#,
    },
    Preset {
        id: "fig4",
        command: PresetCommand::Threshold,
        description: "harmonic star c=1, half-half and central thresholds versus n",
        toml: r#"
[model]
kind = "harmonic"
topology = "star"
n_list = [4, 6, 8, 10, 12, 14, 16, 20, 24, 28, 32]
c = 1.0

[partitions]
families = ["half-half", "central"]
"#,
    },
    Preset {
        id: "fig4-inset",
        command: PresetCommand::Sweep,
        description: "harmonic star c=1, beta=1, central log-negativity versus n",
        toml: r#"
[model]
kind = "harmonic"
topology = "star"
n_list = [2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 24, 32, 48, 64, 96, 128, 192, 256]
c = 1.0

[schedule]
beta_list = [1.0]

[partitions]
families = ["central"]
"#,
    },
    Preset {
        id: "fig5",
        command: PresetCommand::Sweep,
        description: "spin ring n=10, h=1.9, transfer sweep from the half-half end, T = 3, 3.15, 3.25",
        toml: r#"
[model]
kind = "spin_half"
topology = "ring_nn"
n = 10
h = 1.9

[schedule]
T_list = [3.0, 3.15, 3.25]

[partitions]
families = ["transfer-reverse"]
"#,
    },
    Preset {
        id: "fig6",
        command: PresetCommand::Sweep,
        description: "spin star n = 4, 6, 8, 10, h=0, central negativity versus T",
        toml: r#"
[model]
kind = "spin_half"
topology = "star"
n_list = [4, 6, 8, 10]
h = 0.0

[schedule]
T_range = [0.05, 4.0]
count = 80

[partitions]
families = ["central"]
"#,
    },
    Preset {
        id: "fig7",
        command: PresetCommand::Sweep,
        description: "spin star n = 4, 6, 8, 10, h=0, single external site negativity versus T",
        toml: r#"
[model]
kind = "spin_half"
topology = "star"
n_list = [4, 6, 8, 10]
h = 0.0

[schedule]
T_range = [0.05, 4.0]
count = 80

[partitions]
families = ["external"]
external_sites = [2]
"#,
    },
    Preset {
        id: "ring16",
        command: PresetCommand::Threshold,
        description: "harmonic ring n=16, c=0.4, even-odd and half-half thresholds",
        toml: r#"
[model]
kind = "harmonic"
topology = "ring_nn"
n = 16
c = 0.4

[partitions]
families = ["even-odd", "half-half"]

[window]
certificate = "half-half"
witness = "even-odd"
"#,
    },
];

/// Figure ids accepted by `reproduce`.
pub const FIGURES: &[&str] = &["fig2", "fig3", "fig4", "fig4-inset", "fig5", "fig6", "fig7"];

pub fn find(id: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.id == id)
}
