//! Check records produced by the verification suites.

use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    /// The identity or property being checked, as a formula.
    pub anchor: String,
    pub trials: usize,
    pub failures: usize,
    /// First failing sample, rendered.
    pub counterexample: Option<String>,
    /// Set when the check could not run at all.
    pub error: Option<String>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            trials: 0,
            failures: 0,
            counterexample: None,
            error: None,
        }
    }

    pub fn failed_with(name: impl Into<String>, anchor: impl Into<String>, error: impl Into<String>) -> Self {
        let mut r = Self::new(name, anchor);
        r.error = Some(error.into());
        r
    }

    /// Records one trial; `witness` is only evaluated on failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.error.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Check(CheckRecord),
    Value { key: String, value: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub seed: u64,
    pub trials: usize,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(seed: u64, trials: usize) -> Self {
        Report { seed, trials, entries: Vec::new() }
    }

    pub fn check(&mut self, r: CheckRecord) {
        self.entries.push(Entry::Check(r));
    }

    pub fn checks(&mut self, rs: impl IntoIterator<Item = CheckRecord>) {
        self.entries.extend(rs.into_iter().map(Entry::Check));
    }

    pub fn value(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.entries.push(Entry::Value { key: key.into(), value: value.into() });
    }

    pub fn records(&self) -> impl Iterator<Item = &CheckRecord> {
        self.entries.iter().filter_map(|e| match e {
            Entry::Check(c) => Some(c),
            Entry::Value { .. } => None,
        })
    }

    pub fn all_passed(&self) -> bool {
        self.records().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> usize {
        self.records().filter(|r| !r.passed()).count()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "seed {} trials {}", self.seed, self.trials);
        for e in &self.entries {
            match e {
                Entry::Value { key, value } => {
                    let _ = writeln!(out, "  {key} = {value}");
                }
                Entry::Check(c) => {
                    let status = if c.passed() { "PASS" } else { "FAIL" };
                    let _ = writeln!(
                        out,
                        "{status} {}  [{}]  {}/{}",
                        c.name,
                        c.anchor,
                        c.trials - c.failures,
                        c.trials
                    );
                    if let Some(err) = &c.error {
                        let _ = writeln!(out, "     error: {err}");
                    }
                    if let Some(cx) = &c.counterexample {
                        let _ = writeln!(out, "     counterexample: {cx}");
                    }
                }
            }
        }
        let _ = writeln!(
            out,
            "{} checks, {} failed",
            self.records().count(),
            self.failures()
        );
        out
    }

    /// One `key=value` record per line, values quoted with `\"` and `\\` escaped.
    pub fn render_structured(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "report seed={} trials={}", self.seed, self.trials);
        for e in &self.entries {
            match e {
                Entry::Value { key, value } => {
                    let _ = writeln!(out, "value key={} value={}", quote(key), quote(value));
                }
                Entry::Check(c) => {
                    let _ = write!(
                        out,
                        "check name={} status={} trials={} failures={} anchor={}",
                        quote(&c.name),
                        if c.passed() { "pass" } else { "fail" },
                        c.trials,
                        c.failures,
                        quote(&c.anchor)
                    );
                    if let Some(err) = &c.error {
                        let _ = write!(out, " error={}", quote(err));
                    }
                    if let Some(cx) = &c.counterexample {
                        let _ = write!(out, " counterexample={}", quote(cx));
                    }
                    out.push('\n');
                }
            }
        }
        let _ = writeln!(out, "summary checks={} failed={}", self.records().count(), self.failures());
        out
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
