//! Check results shared by every module and the CLI.

use serde::Serialize;

/// Number of failing witnesses kept in a report.
pub const MAX_WITNESSES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub residue: String,
}

/// Outcome of one machine check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub checked: usize,
    pub failed: usize,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            passed: true,
            checked: 0,
            failed: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, label: impl Into<String>, residue: impl ToString) {
        self.checked += 1;
        self.failed += 1;
        self.passed = false;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness {
                label: label.into(),
                residue: residue.to_string(),
            });
        }
    }

    /// Record a pass when `ok`, otherwise a failure with the residue.
    pub fn record(&mut self, ok: bool, label: impl Into<String>, residue: impl ToString) {
        if ok {
            self.pass()
        } else {
            self.fail(label, residue)
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Fold another report's counts and witnesses into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failed += other.failed;
        self.passed &= other.passed;
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(Witness {
                    label: format!("{}: {}", other.check, w.label),
                    residue: w.residue,
                });
            }
        }
        self.notes.extend(other.notes);
    }
}
