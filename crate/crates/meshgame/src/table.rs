//! Plain-text tables and CSV renderings of game results. Payoffs print
//! with four decimals; text columns are aligned, CSV fields quoted only
//! when needed.

use crate::allocation::{Allocation, CoreReport};
use crate::game::{CharacteristicFunction, PayoffBreakdown};
use crate::partition::PayoffMatrix;

/// Four-decimal rendering; a rounded-to-zero negative loses its sign so
/// tiny numerical noise never prints as `-0.0000`.
pub fn fmt4(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        s[1..].to_string()
    } else {
        s
    }
}

/// First column left-aligned, the rest right-aligned, two spaces between.
fn aligned(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut width = vec![0usize; headers.len()];
    for row in std::iter::once(headers).chain(rows.iter().map(|r| &r[..])) {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(headers).chain(rows.iter().map(|r| &r[..])) {
        let mut line = String::new();
        for (k, (cell, w)) in row.iter().zip(&width).enumerate() {
            if k > 0 {
                line.push_str("  ");
            }
            if k == 0 {
                line.push_str(&format!("{cell:<w$}"));
            } else {
                line.push_str(&format!("{cell:>w$}"));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for row in std::iter::once(headers).chain(rows.iter().map(|r| &r[..])) {
        let line: Vec<String> = row.iter().map(|c| csv_field(c)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn strs(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn cf_rows(cf: &CharacteristicFunction) -> (Vec<String>, Vec<Vec<String>>) {
    let rows = cf
        .entries()
        .map(|(c, v)| vec![c.to_string(), fmt4(v)])
        .collect();
    (strs(&["coalition", "value"]), rows)
}

pub fn cf_table(cf: &CharacteristicFunction) -> String {
    let (headers, rows) = cf_rows(cf);
    aligned(&headers, &rows)
}

pub fn cf_csv(cf: &CharacteristicFunction) -> String {
    let (headers, rows) = cf_rows(cf);
    csv(&headers, &rows)
}

fn allocation_rows(a: &Allocation) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rows: Vec<Vec<String>> = a
        .payoffs
        .iter()
        .enumerate()
        .map(|(i, x)| vec![format!("SP{}", i + 1), fmt4(*x)])
        .collect();
    rows.push(vec!["total".to_string(), fmt4(a.total())]);
    (strs(&["provider", "payoff"]), rows)
}

pub fn allocation_table(a: &Allocation) -> String {
    let (headers, rows) = allocation_rows(a);
    aligned(&headers, &rows)
}

pub fn allocation_csv(a: &Allocation) -> String {
    let (headers, rows) = allocation_rows(a);
    csv(&headers, &rows)
}

fn matrix_rows(pm: &PayoffMatrix) -> (Vec<String>, Vec<Vec<String>>) {
    let m = pm.providers as usize;
    let mut headers = vec!["structure".to_string()];
    headers.extend((1..=m).map(|k| format!("mu{k}")));
    headers.extend((1..=m).map(|k| format!("phi{k}")));
    headers.push("v".to_string());
    let rows = pm
        .rows
        .iter()
        .map(|row| {
            let mut cells = vec![row.structure.to_string()];
            cells.extend(row.dual.iter().map(|x| fmt4(*x)));
            cells.extend(row.shapley.iter().map(|x| fmt4(*x)));
            cells.push(fmt4(row.total));
            cells
        })
        .collect();
    (headers, rows)
}

pub fn structure_matrix_table(pm: &PayoffMatrix) -> String {
    let (headers, rows) = matrix_rows(pm);
    aligned(&headers, &rows)
}

pub fn structure_matrix_csv(pm: &PayoffMatrix) -> String {
    let (headers, rows) = matrix_rows(pm);
    csv(&headers, &rows)
}

fn breakdown_rows(b: &PayoffBreakdown) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rows: Vec<Vec<String>> = b
        .shares
        .iter()
        .map(|s| {
            vec![
                format!("SP{}", s.provider),
                fmt4(s.revenue),
                fmt4(s.forwarding_cost),
                fmt4(s.net),
            ]
        })
        .collect();
    rows.push(vec![
        "total".to_string(),
        fmt4(b.shares.iter().map(|s| s.revenue).sum()),
        fmt4(b.shares.iter().map(|s| s.forwarding_cost).sum()),
        fmt4(b.total_net()),
    ]);
    (strs(&["provider", "revenue", "forwarding_cost", "net"]), rows)
}

pub fn breakdown_table(b: &PayoffBreakdown) -> String {
    let (headers, rows) = breakdown_rows(b);
    aligned(&headers, &rows)
}

pub fn breakdown_csv(b: &PayoffBreakdown) -> String {
    let (headers, rows) = breakdown_rows(b);
    csv(&headers, &rows)
}

pub fn core_report_text(r: &CoreReport) -> String {
    let payoffs: Vec<String> = r.payoffs.iter().map(|x| fmt4(*x)).collect();
    let mut out = format!("payoffs: [{}]\n", payoffs.join(", "));
    out.push_str(&format!("efficiency gap: {}\n", fmt4(r.efficiency_gap)));
    out.push_str(&format!(
        "imputation: {}\n",
        if r.is_imputation { "yes" } else { "no" }
    ));
    if r.in_core {
        out.push_str("in core: yes\n");
    } else if r.violations.is_empty() {
        out.push_str("in core: no\n");
    } else {
        out.push_str(&format!(
            "in core: no ({} blocking coalition{})\n",
            r.violations.len(),
            if r.violations.len() == 1 { "" } else { "s" }
        ));
        for v in &r.violations {
            out.push_str(&format!(
                "  {}: worth {}, paid {}, shortfall {}\n",
                v.coalition,
                fmt4(v.coalition_value),
                fmt4(v.payoff_sum),
                fmt4(v.shortfall())
            ));
        }
    }
    out
}

pub fn core_violations_csv(r: &CoreReport) -> String {
    let headers = strs(&["coalition", "value", "paid", "shortfall"]);
    let rows: Vec<Vec<String>> = r
        .violations
        .iter()
        .map(|v| {
            vec![
                v.coalition.to_string(),
                fmt4(v.coalition_value),
                fmt4(v.payoff_sum),
                fmt4(v.shortfall()),
            ]
        })
        .collect();
    csv(&headers, &rows)
}
