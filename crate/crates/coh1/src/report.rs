//! Serializable reports emitted by the CLI.

use std::collections::BTreeMap;

use coh1_core::solve::{Classification, OrbitSolution};
use coh1_core::Param;
use serde::{Deserialize, Serialize};

use crate::format::{g17, g6};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub geometry: String,
    pub params: BTreeMap<String, Param>,
    pub cheeger_s: f64,
    pub order_r: u32,
    /// `"biharmonic"`, `"r_harmonic"` or `"minimal"`.
    pub functional: String,
    /// Sorted by `t_root`.
    pub roots: Vec<OrbitSolution>,
    pub elapsed_ms: f64,
}

pub fn classification_name(c: &Classification) -> String {
    match c {
        Classification::Minimal => "minimal".into(),
        Classification::ProperBiharmonic => "proper_biharmonic".into(),
        Classification::ProperRHarmonic { r } => format!("proper_{r}_harmonic"),
    }
}

pub const CSV_HEADER: [&str; 12] = [
    "geometry",
    "cheeger_s",
    "order_r",
    "functional",
    "t_root",
    "bracket_lo",
    "bracket_hi",
    "residual",
    "tr_a",
    "classification",
    "x_value",
    "tangential",
];

impl SolveReport {
    /// One CSV record per root.
    pub fn csv_records(&self) -> Vec<Vec<String>> {
        self.roots
            .iter()
            .map(|s| {
                vec![
                    self.geometry.clone(),
                    g17(self.cheeger_s),
                    self.order_r.to_string(),
                    self.functional.clone(),
                    g17(s.t_root),
                    g17(s.bracket.0),
                    g17(s.bracket.1),
                    g17(s.residual),
                    g17(s.tr_a_at_root),
                    classification_name(&s.classification),
                    s.x_value.map(g17).unwrap_or_default(),
                    s.tangential.to_string(),
                ]
            })
            .collect()
    }

    /// Human-readable table, numbers rounded to 6 digits.
    pub fn table(&self) -> String {
        let mut out = format!(
            "{} (cheeger_s = {}, r = {}, {}): {} root(s)\n",
            self.geometry,
            g6(self.cheeger_s),
            self.order_r,
            self.functional,
            self.roots.len()
        );
        if self.roots.is_empty() {
            return out;
        }
        out.push_str(&format!(
            "{:>14} {:>14} {:>14} {:>14}  {}\n",
            "t", "x=cos^2 t", "residual", "trA", "class"
        ));
        for s in &self.roots {
            let x = s.x_value.map(g6).unwrap_or_else(|| "-".into());
            let mut class = classification_name(&s.classification);
            if s.tangential {
                class.push_str(" (tangential)");
            }
            out.push_str(&format!(
                "{:>14} {:>14} {:>14} {:>14}  {}\n",
                g6(s.t_root),
                x,
                g6(s.residual),
                g6(s.tr_a_at_root),
                class
            ));
        }
        out
    }
}
