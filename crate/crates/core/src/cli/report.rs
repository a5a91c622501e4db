//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified statement. `provenance` names the mathematical object checked.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub example: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(example: &str, seed: u64) -> Self {
        VerificationReport { example: example.into(), seed, pass: true, checks: Vec::new() }
    }

    /// Adds a check that passes iff `residual ≤ tolerance`. Non-finite
    /// residuals are stored as `f64::MAX` and fail.
    pub fn numeric(&mut self, name: &str, provenance: &str, residual: f64, tolerance: f64) -> &mut Check {
        let ok = residual.is_finite() && residual <= tolerance;
        let residual = if residual.is_finite() { residual } else { f64::MAX };
        self.push(Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual,
            tolerance,
            provenance: provenance.into(),
            value: None,
            message: None,
        })
    }

    /// Adds an exact check: residual 0 on success and 1 otherwise, tolerance 0.
    pub fn exact(&mut self, name: &str, provenance: &str, ok: bool) -> &mut Check {
        self.numeric(name, provenance, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    /// Records a module error as a failed check.
    pub fn error(&mut self, name: &str, provenance: &str, err: &Error) -> &mut Check {
        let c = self.numeric(name, provenance, f64::INFINITY, 0.0);
        c.message = Some(err.to_string());
        c
    }

    /// Unwraps `r` into a numeric check, or records its error.
    pub fn from_result(&mut self, name: &str, provenance: &str, r: crate::Result<f64>, tolerance: f64) -> &mut Check {
        match r {
            Ok(x) => self.numeric(name, provenance, x, tolerance),
            Err(e) => {
                let c = self.error(name, provenance, &e);
                c.tolerance = tolerance;
                c
            }
        }
    }

    /// Same as [`VerificationReport::from_result`] for exact checks.
    pub fn from_exact(&mut self, name: &str, provenance: &str, r: crate::Result<bool>) -> &mut Check {
        match r {
            Ok(ok) => self.exact(name, provenance, ok),
            Err(e) => self.error(name, provenance, &e),
        }
    }

    fn push(&mut self, c: Check) -> &mut Check {
        self.pass &= c.status == Status::Pass;
        self.checks.push(c);
        self.checks.last_mut().expect("just pushed")
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

impl Check {
    pub fn with_value(&mut self, v: serde_json::Value) -> &mut Self {
        self.value = Some(v);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_and_fail() {
        let mut r = VerificationReport::new("demo", 0);
        r.numeric("a", "x", 1e-9, 1e-8);
        assert!(r.pass);
        r.exact("b", "y", false);
        assert!(!r.pass);
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.failures().count(), 1);
        r.numeric("c", "z", f64::NAN, 1.0);
        assert_eq!(r.get("c").unwrap().residual, f64::MAX);
        let text = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.contains("\"status\":\"fail\""));
    }

    #[test]
    fn errors_become_failures() {
        let mut r = VerificationReport::new("demo", 3);
        r.from_result("q", "object", Err(Error::Degenerate("x".into())), 1e-3);
        let c = r.get("q").unwrap();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.tolerance, 1e-3);
        assert!(c.message.as_deref().unwrap().contains('x'));
        r.from_exact("e", "object", Ok(true));
        assert_eq!(r.get("e").unwrap().status, Status::Pass);
    }
}
