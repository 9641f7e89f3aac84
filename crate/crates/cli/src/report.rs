//! Report types emitted by the subcommands, with text rendering. The
//! structured form is the serde JSON encoding of the same types.

use std::fmt::Write as _;

use depthzero::mackey::{CoincidenceMarker, MackeyComponent};
use depthzero::verify::{Status, VerifyReport};
use depthzero::QPolynomial;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInfoReport {
    pub spec: String,
    pub rank: usize,
    pub roots: usize,
    pub positive_roots: usize,
    pub long_roots: usize,
    pub short_roots: usize,
    pub simply_laced: bool,
    pub weyl_order: usize,
    pub degrees: Vec<usize>,
    pub poincare: QPolynomial,
    pub coxeter_torus_order: QPolynomial,
    pub group_order: QPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeyRow {
    pub component: MackeyComponent,
    pub marker: CoincidenceMarker,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeyReport {
    pub spec: String,
    pub x: String,
    pub y: String,
    pub bound: i64,
    pub local_type: String,
    pub tau_degree: QPolynomial,
    pub rows: Vec<MackeyRow>,
    /// Number of unordered pairs of rows with disjoint depth intervals.
    pub disjoint_pairs: usize,
    pub total_pairs: usize,
}

/// Any report the binary can emit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Report {
    Rootinfo(RootInfoReport),
    Mackey(MackeyReport),
    Verify(VerifyReport),
}

impl Report {
    pub fn to_structured(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn from_structured(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        match self {
            Report::Rootinfo(r) => rootinfo_text(r),
            Report::Mackey(r) => mackey_text(r),
            Report::Verify(r) => verify_text(r),
        }
    }
}

fn rootinfo_text(r: &RootInfoReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "type            {}", r.spec);
    let _ = writeln!(s, "rank            {}", r.rank);
    let _ = writeln!(s, "roots           {} ({} positive)", r.roots, r.positive_roots);
    if !r.simply_laced {
        let _ = writeln!(s, "long / short    {} / {}", r.long_roots, r.short_roots);
    }
    let _ = writeln!(s, "|W|             {}", r.weyl_order);
    let _ = writeln!(s, "degrees         {:?}", r.degrees);
    let _ = writeln!(s, "Poincare        {}", r.poincare);
    let _ = writeln!(s, "Coxeter torus   {}", r.coxeter_torus_order);
    let _ = writeln!(s, "|G(F_q)|        {}", r.group_order);
    s
}

fn mackey_text(r: &MackeyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} x=({}) y=({}) bound {}", r.spec, r.x, r.y, r.bound);
    let _ = writeln!(s, "tau: local type {}, degree {}", r.local_type, r.tau_degree);
    let _ = writeln!(s, "{:<14} {:<9} {:<7} {:<40} marker", "l", "interior", "depths", "degree");
    for row in &r.rows {
        let c = &row.component;
        let degree = match (&c.degree, c.is_tau) {
            (_, true) => "component = tau".to_string(),
            (Some(d), false) => d.to_string(),
            (None, false) => "-".to_string(),
        };
        let _ = writeln!(
            s,
            "{:<14} {:<9} {:<7} {:<40} {:?}",
            format!("{:?}", c.ell),
            c.interior,
            format!("[{},{}]", c.depth_lower, c.depth_upper),
            degree,
            row.marker
        );
    }
    let _ = writeln!(s, "disjoint depth intervals: {} of {} pairs", r.disjoint_pairs, r.total_pairs);
    s
}

fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let note = c.note.as_deref().map(|n| format!(" [{n}]")).unwrap_or_default();
        let _ = writeln!(s, "[{tag}] {}: {}{note}", c.id, c.description);
        let _ = writeln!(s, "       expected {}", c.expected);
        let _ = writeln!(s, "       computed {}", c.computed);
    }
    let _ = writeln!(
        s,
        "{} passed, {} failed, {} skipped",
        r.count(Status::Pass),
        r.count(Status::Fail),
        r.count(Status::Skipped)
    );
    s
}
