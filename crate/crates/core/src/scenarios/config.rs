//! Flat `key = value` configuration text with `#` comments.

use super::{Drive, Grid, SweepConfig, SweepFamily};
use crate::error::{Error, Result};
use crate::evolution::InitialStateClass;
use crate::pulse::Mode;

/// Parsed key-value pairs, remembering the line each came from.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KeyValues {
    entries: Vec<(String, String, usize)>,
}

pub fn parse_key_values(text: &str) -> Result<KeyValues> {
    let mut kv = KeyValues::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::ConfigParse {
            line: line_no,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim().to_ascii_lowercase();
        if key.is_empty() {
            return Err(Error::ConfigParse { line: line_no, message: "empty key".into() });
        }
        if kv.entries.iter().any(|(k, _, _)| *k == key) {
            return Err(Error::ConfigParse { line: line_no, message: format!("duplicate key `{key}`") });
        }
        kv.entries.push((key, value.trim().to_string(), line_no));
    }
    Ok(kv)
}

impl KeyValues {
    /// Removes and returns `key`'s value and line number.
    pub fn take(&mut self, key: &str) -> Option<(String, usize)> {
        let pos = self.entries.iter().position(|(k, _, _)| k == key)?;
        let (_, v, line) = self.entries.remove(pos);
        Some((v, line))
    }

    /// Removes `key` and parses its value with `FromStr`.
    pub fn take_parsed<T>(&mut self, key: &str) -> Result<Option<T>>
    where
        T: std::str::FromStr,
        T::Err: std::fmt::Display,
    {
        match self.take(key) {
            None => Ok(None),
            Some((v, line)) => {
                v.parse::<T>().map(Some).map_err(|e| Error::ConfigParse { line, message: format!("{key}: {e}") })
            }
        }
    }

    /// Fails on the first key nobody consumed.
    pub fn finish(self) -> Result<()> {
        match self.entries.first() {
            None => Ok(()),
            Some((k, _, line)) => Err(Error::ConfigParse { line: *line, message: format!("unknown key `{k}`") }),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn parse_pair(key: &str, value: &str, line: usize) -> Result<[f64; 2]> {
    let parts = value
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::ConfigParse { line, message: format!("{key}: {e}") })?;
    match parts.as_slice() {
        [x] => Ok([*x, *x]),
        [a, b] => Ok([*a, *b]),
        _ => Err(Error::ConfigParse { line, message: format!("{key}: expected one or two numbers") }),
    }
}

impl SweepConfig {
    /// Reads the sweep keys out of `kv`, leaving any others in place.
    ///
    /// `family` is required; everything else defaults to
    /// [`SweepConfig::new`]'s values.
    pub fn from_key_values(kv: &mut KeyValues) -> Result<Self> {
        let family: SweepFamily = kv
            .take_parsed("family")?
            .ok_or_else(|| Error::ConfigParse { line: 0, message: "missing required key `family`".into() })?;
        let drive: Drive = kv.take_parsed("drive")?.unwrap_or(match family {
            SweepFamily::CombinedVsTime => Drive::BothQubits,
            _ => Drive::OneQubit,
        });
        let mut cfg = SweepConfig::new(family, drive);
        if let Some(mode) = kv.take_parsed::<Mode>("mode")? {
            cfg.mode = mode;
        }
        if let Some((v, line)) = kv.take("initial_states") {
            cfg.initial_states = v
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.parse::<InitialStateClass>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|message| Error::ConfigParse { line, message })?;
        }
        if let Some((v, line)) = kv.take("detuning_prime") {
            cfg.detuning_prime = parse_pair("detuning_prime", &v, line)?;
        }
        if let Some((v, line)) = kv.take("rabi_ratio") {
            cfg.rabi_ratio = parse_pair("rabi_ratio", &v, line)?;
        }
        if let Some(w) = kv.take_parsed("rect_omega")? {
            cfg.rect_omega = w;
        }
        let Grid { mut start, mut stop, mut points } = cfg.grid;
        if let Some(v) = kv.take_parsed("grid_start")? {
            start = v;
        }
        if let Some(v) = kv.take_parsed("grid_stop")? {
            stop = v;
        }
        if let Some(v) = kv.take_parsed("grid_points")? {
            points = v;
        }
        cfg.grid = Grid::new(start, stop, points);
        Ok(cfg)
    }

    /// Writes every sweep key; the output parses back to an equal config.
    pub fn to_key_values(&self) -> String {
        let states: Vec<String> = self.initial_states.iter().map(|s| s.to_string()).collect();
        let [d0, d1] = self.detuning_prime;
        let [r0, r1] = self.rabi_ratio;
        format!(
            "family = {}\ndrive = {}\nmode = {}\ninitial_states = {}\ndetuning_prime = {d0:?}, {d1:?}\n\
             rabi_ratio = {r0:?}, {r1:?}\nrect_omega = {:?}\ngrid_start = {:?}\ngrid_stop = {:?}\ngrid_points = {}\n",
            self.family,
            self.drive,
            self.mode,
            states.join("; "),
            self.rect_omega,
            self.grid.start,
            self.grid.stop,
            self.grid.points,
        )
    }
}
