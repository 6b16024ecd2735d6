//! The replayable record of one invocation, in the sweep config format.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use pulsepair::scenarios::parse_key_values;
use pulsepair::{Error, Result, SweepConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Sweep,
    Preset,
    Negativity,
    Validate,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Sweep => "sweep",
            Command::Preset => "preset",
            Command::Negativity => "negativity",
            Command::Validate => "validate",
        })
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sweep" => Ok(Command::Sweep),
            "preset" => Ok(Command::Preset),
            "negativity" => Ok(Command::Negativity),
            "validate" => Ok(Command::Validate),
            other => Err(format!("unknown command `{other}`")),
        }
    }
}

/// One command with every parameter it ran with.
///
/// Sweep parameters are stored resolved (preset and flag overrides applied),
/// so a saved `sweep` or `preset` manifest can be fed back to
/// `pulsepair sweep --config`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub command: Command,
    pub preset: Option<String>,
    pub sweep: Option<SweepConfig>,
    pub negativity: Option<[f64; 3]>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

impl RunManifest {
    pub fn new(command: Command) -> Self {
        Self { command, preset: None, sweep: None, negativity: None, seed: None, out: None }
    }

    /// Parses manifest text. A file without `command` is a sweep config.
    pub fn parse(text: &str) -> Result<Self> {
        let mut kv = parse_key_values(text)?;
        let command = kv.take_parsed::<Command>("command")?.unwrap_or(Command::Sweep);
        let mut m = RunManifest::new(command);
        m.preset = kv.take("preset").map(|(v, _)| v);
        m.out = kv.take("out").map(|(v, _)| PathBuf::from(v));
        m.seed = kv.take_parsed("seed")?;
        if let Some((v, line)) = kv.take("negativity") {
            let parts = v
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::ConfigParse { line, message: format!("negativity: {e}") })?;
            let c: [f64; 3] = parts
                .try_into()
                .map_err(|_| Error::ConfigParse { line, message: "negativity: expected three numbers".into() })?;
            m.negativity = Some(c);
        }
        if matches!(command, Command::Sweep | Command::Preset) {
            m.sweep = Some(SweepConfig::from_key_values(&mut kv)?);
        }
        kv.finish()?;
        Ok(m)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# pulsepair run manifest\ncommand = {}\n", self.command);
        if let Some(p) = &self.preset {
            s += &format!("preset = {p}\n");
        }
        if let Some(out) = &self.out {
            s += &format!("out = {}\n", out.display());
        }
        if let Some(seed) = self.seed {
            s += &format!("seed = {seed}\n");
        }
        if let Some([a, b, c]) = self.negativity {
            s += &format!("negativity = {a:?}, {b:?}, {c:?}\n");
        }
        if let Some(cfg) = &self.sweep {
            s += &cfg.to_key_values();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pulsepair::figure_presets;

    #[test]
    fn preset_manifests_round_trip() {
        for p in figure_presets() {
            let m = RunManifest {
                preset: Some(p.name.to_string()),
                sweep: Some(p.config),
                out: Some(PathBuf::from("out dir/curve.csv")),
                ..RunManifest::new(Command::Preset)
            };
            assert_eq!(RunManifest::parse(&m.to_text()).unwrap(), m);
        }
    }

    #[test]
    fn other_commands_round_trip() {
        let neg = RunManifest { negativity: Some([-0.9, -0.8, -0.7]), ..RunManifest::new(Command::Negativity) };
        assert_eq!(RunManifest::parse(&neg.to_text()).unwrap(), neg);
        let val = RunManifest { seed: Some(42), ..RunManifest::new(Command::Validate) };
        assert_eq!(RunManifest::parse(&val.to_text()).unwrap(), val);
    }

    #[test]
    fn bare_sweep_config_is_a_sweep_manifest() {
        let m = RunManifest::parse("family = exp_vs_time\nrabi_ratio = 5\n").unwrap();
        assert_eq!(m.command, Command::Sweep);
        assert_eq!(m.sweep.unwrap().rabi_ratio, [5.0, 5.0]);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(RunManifest::parse("command = validate\nfamily = exp_vs_time\n").is_err());
        assert!(RunManifest::parse("command = negativity\nnegativity = 1, 2\n").is_err());
        assert!(RunManifest::parse("command = launch\n").is_err());
    }
}
