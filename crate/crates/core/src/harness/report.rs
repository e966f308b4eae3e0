//! CSV and fixed-width renderings of batch summaries.

use std::fmt::Write;

use super::batch::BatchSummary;
use super::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Table,
}

impl std::str::FromStr for ReportFormat {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "table" => Ok(ReportFormat::Table),
            _ => Err(HarnessError::Config(format!("unknown report format '{s}'"))),
        }
    }
}

pub const CSV_HEADER: [&str; 20] = [
    "scenario",
    "policy",
    "info",
    "alien_mode",
    "explorers",
    "aliens",
    "obstacles",
    "trials",
    "wins",
    "win_rate",
    "c_se_per_win",
    "c_shp_per_win",
    "lost_per_win",
    "lost_per_round",
    "mean_c_se",
    "mean_c_shp",
    "lost_per_kill",
    "lost_per_alien",
    "hp_cost_per_kill",
    "hp_cost_per_alien",
];

fn num(x: f64) -> String {
    format!("{x:.4}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cells(s: &BatchSummary) -> Vec<String> {
    vec![
        s.scenario.clone(),
        s.policy.to_string(),
        s.info.to_string(),
        s.alien_mode.to_string(),
        s.explorers.to_string(),
        s.aliens.to_string(),
        s.obstacles.to_string(),
        s.trials.to_string(),
        s.wins.to_string(),
        num(s.win_rate),
        opt(s.c_se_per_win),
        opt(s.c_shp_per_win),
        opt(s.explorers_lost_per_win),
        num(s.explorers_lost_per_round),
        num(s.mean_system_energy_cost),
        num(s.mean_system_hp_cost),
        opt(s.lost_per_kill),
        num(s.lost_per_alien),
        opt(s.hp_cost_per_kill),
        num(s.hp_cost_per_alien),
    ]
}

pub fn report(summaries: &[BatchSummary], format: ReportFormat) -> Result<String, HarnessError> {
    if summaries.is_empty() {
        return Err(HarnessError::EmptyInput);
    }
    let rows: Vec<Vec<String>> = summaries.iter().map(cells).collect();
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str(&CSV_HEADER.join(","));
            out.push('\n');
            for r in &rows {
                let line: Vec<String> = r.iter().map(|c| csv_field(c)).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
        }
        ReportFormat::Table => {
            let mut widths: Vec<usize> = CSV_HEADER.iter().map(|h| h.len()).collect();
            for r in &rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |out: &mut String, r: &[&str]| {
                let padded: Vec<String> = r
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{:>w$}", if c.is_empty() { "-" } else { c }))
                    .collect();
                let _ = writeln!(out, "{}", padded.join("  ").trim_end());
            };
            line(&mut out, &CSV_HEADER);
            for r in &rows {
                let refs: Vec<&str> = r.iter().map(String::as_str).collect();
                line(&mut out, &refs);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{summarize, ScenarioConfig, TrialMetrics};

    fn summary(name: &str, wins: usize, of: usize) -> BatchSummary {
        let cfg = ScenarioConfig {
            name: name.into(),
            ..Default::default()
        };
        let recs = (0..of)
            .map(|i| TrialMetrics {
                win: i < wins,
                draw: false,
                ticks: 1,
                mean_explorer_energy_cost: 0.5,
                mean_explorer_hp_cost: 0.25,
                system_energy_cost: 10.0,
                system_hp_cost: 5.0,
                explorers_lost: 0,
                aliens_killed: 0,
            })
            .collect();
        summarize(&cfg, recs).unwrap()
    }

    #[test]
    fn win_rate_formatting() {
        let csv = report(&[summary("a", 7, 10)], ReportFormat::Csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert!(lines[1].split(',').any(|f| f == "0.7000"));
    }

    #[test]
    fn absent_values_are_empty_fields() {
        let csv = report(&[summary("a", 0, 3)], ReportFormat::Csv).unwrap();
        let f: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(f.len(), CSV_HEADER.len());
        assert_eq!(&f[10..13], &["", "", ""]);
        // no kills, so the per-kill ratios are absent too
        assert_eq!(f[16], "");
        assert_eq!(f[18], "");
    }

    #[test]
    fn stable_order_and_quoting() {
        let csv = report(&[summary("b,x", 1, 2), summary("a", 2, 2)], ReportFormat::Csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("\"b,x\","));
        assert!(lines[2].starts_with("a,"));
    }

    #[test]
    fn table_and_empty() {
        let t = report(&[summary("a", 1, 2)], ReportFormat::Table).unwrap();
        assert_eq!(t.lines().count(), 2);
        assert!(t.contains("0.5000"));
        assert!(matches!(report(&[], ReportFormat::Csv), Err(HarnessError::EmptyInput)));
    }
}
