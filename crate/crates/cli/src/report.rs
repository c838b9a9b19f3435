//! Reports assembled by the command pipelines and the exact-value
//! formatting they share. A report renders deterministically: same input,
//! same bytes. Verification output is all exact (reduced fractions and
//! canonical expression strings); floats appear only in CSV artifacts.

use std::fmt::Write as _;
use std::path::PathBuf;

use flatlab::connection::{FlatnessWitness, VectorField};
use flatlab::exactmath::Rational;
use flatlab::lsa::{BasisOrigin, RationalMatrix};
use num_traits::{One, Zero};

/// Outcome of one command: named pass/fail checks (each fail carries a
/// witness), rendered tables/notes, and paths of files written.
pub struct RunReport {
    pub command: String,
    pub verdicts: Vec<VerdictLine>,
    pub tables: Vec<String>,
    pub artifacts: Vec<PathBuf>,
}

pub struct VerdictLine {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport { command: command.into(), verdicts: Vec::new(), tables: Vec::new(), artifacts: Vec::new() }
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.verdicts.push(VerdictLine { name: name.into(), pass: true, witness: String::new() });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        let witness = witness.into();
        assert!(!witness.is_empty(), "every failing check needs a witness");
        self.verdicts.push(VerdictLine { name: name.into(), pass: false, witness });
    }

    pub fn verdict(&mut self, name: impl Into<String>, pass: bool, witness: impl Into<String>) {
        if pass {
            self.pass(name);
        } else {
            self.fail(name, witness);
        }
    }

    pub fn table(&mut self, block: impl Into<String>) {
        self.tables.push(block.into());
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for v in &self.verdicts {
            if v.pass {
                let _ = writeln!(out, "check {}: pass", v.name);
            } else {
                let _ = writeln!(out, "check {}: fail", v.name);
                for line in v.witness.lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
        }
        for t in &self.tables {
            let _ = writeln!(out);
            out.push_str(t.trim_end_matches('\n'));
            out.push('\n');
        }
        if !self.artifacts.is_empty() {
            let _ = writeln!(out);
            for a in &self.artifacts {
                let _ = writeln!(out, "wrote {}", a.display());
            }
        }
        out
    }
}

/// Linear combination of labelled basis elements, e.g. "2*e2- - 2*C4",
/// "e1- + C5", "0".
pub fn fmt_combo(coords: &[Rational], labels: &[String]) -> String {
    assert_eq!(coords.len(), labels.len());
    let mut out = String::new();
    for (c, label) in coords.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let magnitude = if c < &Rational::zero() { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if c < &Rational::zero() {
                out.push('-');
            }
        } else if c < &Rational::zero() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if magnitude.is_one() {
            out.push_str(label);
        } else {
            let _ = write!(out, "{magnitude}*{label}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Column-aligned table with row and column labels; the corner cell is
/// "*" (rows act from the left).
pub fn fmt_table(row_labels: &[String], col_labels: &[String], cells: &[Vec<String>]) -> String {
    let mut widths = vec![0usize; col_labels.len() + 1];
    widths[0] = 1.max(row_labels.iter().map(String::len).max().unwrap_or(0));
    for (j, label) in col_labels.iter().enumerate() {
        widths[j + 1] = label.len();
    }
    for row in cells {
        for (j, cell) in row.iter().enumerate() {
            widths[j + 1] = widths[j + 1].max(cell.len());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, entries: Vec<&str>| {
        let mut line = String::new();
        for (j, e) in entries.iter().enumerate() {
            if j > 0 {
                line.push_str(" | ");
            }
            let _ = write!(line, "{:width$}", e, width = widths[j]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    let mut header: Vec<&str> = vec!["*"];
    header.extend(col_labels.iter().map(String::as_str));
    emit(&mut out, header);
    for (i, row) in cells.iter().enumerate() {
        let mut entries: Vec<&str> = vec![&row_labels[i]];
        entries.extend(row.iter().map(String::as_str));
        emit(&mut out, entries);
    }
    out
}

/// Component tuple of a vector field, e.g. "(x, y)".
pub fn fmt_field(f: &VectorField) -> String {
    let comps: Vec<String> = f.components().iter().map(|c| c.to_string()).collect();
    format!("({})", comps.join(", "))
}

/// Point tuple, e.g. "(1, 0)".
pub fn fmt_point(p: &[Rational]) -> String {
    let comps: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("({})", comps.join(", "))
}

/// Row-list rendering of a rational matrix, e.g. "[[2, 0], [0, 1]]".
pub fn fmt_matrix(m: &RationalMatrix) -> String {
    let rows: Vec<String> = (0..m.size())
        .map(|i| {
            let row: Vec<String> = (0..m.size()).map(|j| m.get(i, j).to_string()).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Where a closure-basis element came from, using 1-based basis indexes.
pub fn fmt_origin(origin: &BasisOrigin, generator_labels: &[String]) -> String {
    match origin {
        BasisOrigin::Generator(g) => format!("generator {}", generator_labels[*g]),
        BasisOrigin::Product(i, j) => format!("product [{}]*[{}]", i + 1, j + 1),
    }
}

/// Human form of a flatness counterexample on a chart with these
/// variable names.
pub fn fmt_flatness_witness(w: &FlatnessWitness, names: &[String]) -> String {
    match w {
        FlatnessWitness::Torsion { upper, lower: (i, j), value } => format!(
            "nonzero torsion: T(d/d{}, d/d{}) has d/d{}-component {}",
            names[*i], names[*j], names[*upper], value
        ),
        FlatnessWitness::Curvature { upper, args: (i, j, k), value } => format!(
            "nonzero curvature: R(d/d{}, d/d{}) d/d{} has d/d{}-component {}",
            names[*i], names[*j], names[*k], names[*upper], value
        ),
    }
}
