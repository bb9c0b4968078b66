//! Pass/fail reports shared by every verification routine.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// One checked identity.
#[derive(Clone, PartialEq, Debug)]
pub struct CheckEntry {
    /// Short identifier, e.g. `[E12,E21]`.
    pub label: String,
    pub pass: bool,
    /// Number of surviving terms (exact checks) or 0.
    pub residual_terms: usize,
    /// Numeric error where meaningful (0 for exact checks).
    pub error: f64,
    /// Residual text or a short note; empty when nothing to say.
    pub detail: String,
}

/// Ordered list of checks with a title.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct CheckReport {
    pub title: String,
    pub entries: Vec<CheckEntry>,
    /// Free-form findings (conventions determined, warnings).
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(title: impl Into<String>) -> Self {
        CheckReport { title: title.into(), entries: Vec::new(), notes: Vec::new() }
    }

    pub fn exact(&mut self, label: impl Into<String>, residual_terms: usize, detail: impl Into<String>) {
        self.entries.push(CheckEntry {
            label: label.into(),
            pass: residual_terms == 0,
            residual_terms,
            error: 0.0,
            detail: detail.into(),
        });
    }

    pub fn numeric(&mut self, label: impl Into<String>, error: f64, tol: f64, detail: impl Into<String>) {
        self.entries.push(CheckEntry {
            label: label.into(),
            pass: error.is_finite() && error < tol,
            residual_terms: 0,
            error,
            detail: detail.into(),
        });
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.entries.extend(other.entries);
        self.notes.extend(other.notes);
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn max_error(&self) -> f64 {
        self.entries.iter().map(|e| e.error).fold(0.0, f64::max)
    }
}

impl fmt::Display for CheckReport {
    /// One line per identity, then notes, then a summary line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let status = if e.pass { "PASS" } else { "FAIL" };
            write!(f, "{status} {} residual_terms={}", e.label, e.residual_terms)?;
            if e.error != 0.0 {
                write!(f, " err={:.3e}", e.error)?;
            }
            if !e.detail.is_empty() {
                write!(f, " {}", e.detail)?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        let failed = self.failures().count();
        if failed == 0 {
            write!(f, "{}: PASS ({} checks)", self.title, self.entries.len())
        } else {
            write!(f, "{}: FAIL ({failed} of {} checks)", self.title, self.entries.len())
        }
    }
}
