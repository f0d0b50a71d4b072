//! Physics parameters from defaults, a key=value config file and flags, and
//! the optional one-parameter sweep.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{domain, Error, Result};

/// Recognized parameter names with their defaults. `omega-max` defaults to
/// ten times `omega0`.
pub const PARAMETERS: [(&str, f64); 14] = [
    ("a", 1.0),
    ("T", 0.0),
    ("n", 1.0),
    ("D", 4.0),
    ("eps-bar", 2.0),
    ("omega0", 10.0),
    ("cutoff-lambda", 0.2),
    ("omega-max", f64::NAN),
    ("delta-resonance", 0.05),
    ("L", 1.0),
    ("C0", 1.0),
    ("phi-sq", 1.0),
    ("tol-rel", 1e-10),
    ("tol-abs", 1e-14),
];

fn is_known(name: &str) -> bool {
    PARAMETERS.iter().any(|(k, _)| *k == name)
}

/// Explicitly set parameters; everything else falls back to the defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params(BTreeMap<String, f64>);

impl Params {
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !is_known(name) {
            return domain(format!("unknown parameter '{name}'"));
        }
        if !value.is_finite() {
            return domain(format!("parameter '{name}' must be finite, got {value}"));
        }
        self.0.insert(name.to_string(), value);
        Ok(())
    }

    pub fn get(&self, name: &str) -> f64 {
        if let Some(v) = self.0.get(name) {
            return *v;
        }
        if name == "omega-max" {
            return 10.0 * self.get("omega0");
        }
        PARAMETERS
            .iter()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| *v)
            .unwrap_or_else(|| panic!("no parameter named {name}"))
    }

    /// The dimension as an integer.
    pub fn dim(&self) -> Result<u32> {
        let d = self.get("D");
        if d.fract() != 0.0 || d < 0.0 || d > u32::MAX as f64 {
            return domain(format!("D must be a whole number, got {d}"));
        }
        Ok(d as u32)
    }

    /// Merges `key = value` lines; `#` starts a comment.
    pub fn merge_config(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return domain(format!("config line {}: expected key = value", i + 1));
            };
            let key = key.trim();
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::Domain(format!("config line {}: '{}' is not a number", i + 1, value.trim()))
            })?;
            self.set(key, value)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Lin,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub param: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub scale: Scale,
}

impl Sweep {
    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let s = i as f64 / last;
                match self.scale {
                    Scale::Lin => self.start + s * (self.stop - self.start),
                    Scale::Log => (self.start.ln() + s * (self.stop.ln() - self.start.ln())).exp(),
                }
            })
            .collect()
    }
}

impl std::str::FromStr for Sweep {
    type Err = Error;

    /// `param:start:stop:count:scale` with scale `lin` or `log`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 5 {
            return domain(format!("sweep '{s}' must have the form param:start:stop:count:scale"));
        }
        let param = parts[0].to_string();
        if !is_known(&param) || param.starts_with("tol-") {
            return domain(format!("'{param}' is not a sweepable physics parameter"));
        }
        let num = |t: &str| -> Result<f64> {
            t.parse()
                .map_err(|_| Error::Domain(format!("sweep bound '{t}' is not a number")))
        };
        let (start, stop) = (num(parts[1])?, num(parts[2])?);
        let count: usize = parts[3]
            .parse()
            .map_err(|_| Error::Domain(format!("sweep count '{}' is not an integer", parts[3])))?;
        if count < 2 {
            return domain("sweep count must be >= 2");
        }
        let scale = match parts[4] {
            "lin" => Scale::Lin,
            "log" => Scale::Log,
            other => return domain(format!("sweep scale must be lin or log, got '{other}'")),
        };
        if !start.is_finite() || !stop.is_finite() {
            return domain("sweep bounds must be finite");
        }
        if scale == Scale::Log && !(start > 0.0 && stop > 0.0) {
            return domain("log sweep needs positive bounds");
        }
        Ok(Sweep {
            param,
            start,
            stop,
            count,
            scale,
        })
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = match self.scale {
            Scale::Lin => "lin",
            Scale::Log => "log",
        };
        write!(f, "{}:{}:{}:{}:{scale}", self.param, self.start, self.stop, self.count)
    }
}
