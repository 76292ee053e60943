use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    /// Malformed JSON; `path` is the JSON path of the offending field.
    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// One failed identity together with the first basis tuple violating it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: String,
    pub witness: Vec<usize>,
}

/// Outcome of an axiom check. Each rule is recorded at most once, with the
/// first witness found in lexicographic tuple order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn record(&mut self, rule: &str, witness: &[usize]) {
        if !self.violates(rule) {
            self.violations.push(Violation { rule: rule.to_string(), witness: witness.to_vec() });
        }
    }

    pub fn violates(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn rules(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.rule.as_str()).collect()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn merge(&mut self, other: Report) {
        for v in other.violations {
            self.record(&v.rule, &v.witness);
        }
    }

    /// Like [`Report::merge`] but prefixes every rule name.
    pub fn merge_prefixed(&mut self, prefix: &str, other: Report) {
        for v in other.violations {
            self.record(&format!("{prefix}{}", v.rule), &v.witness);
        }
    }

    pub fn into_result(self, what: &str) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{what}: {self}")))
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        let parts: Vec<String> =
            self.violations.iter().map(|v| format!("{} fails at {:?}", v.rule, v.witness)).collect();
        write!(f, "{}", parts.join("; "))
    }
}
