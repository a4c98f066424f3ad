//! Byte-stable renderings of a ratio report: CSV, JSON, and markdown.

use std::fmt::Write as _;

use crate::harness::experiment::{OptSource, RatioReport, RatioRow};

fn opt_cell(row: &RatioRow, value: &Option<crate::core::rational::Rat>) -> String {
    match value {
        Some(v) => v.to_string(),
        None if row.opt_source == OptSource::Unresolved => "UNRESOLVED".to_string(),
        None => String::new(),
    }
}

pub fn to_csv(report: &RatioReport) -> String {
    let mut out = String::from("params,A,OPT_A,OPT,ratio,opt_source\n");
    for row in &report.rows {
        let opt_a = opt_cell(row, &row.opt_a);
        // An absent unconstrained optimum is an empty cell, not a failure:
        // it is only computed when the oracle is consulted.
        let opt = match &row.opt {
            Some(v) => v.to_string(),
            None => String::new(),
        };
        let ratio = opt_cell(row, &row.ratio);
        writeln!(
            out,
            "{},{},{},{},{},{}",
            row.params, row.alg, opt_a, opt, ratio, row.opt_source
        )
        .unwrap();
    }
    out
}

pub fn to_json(report: &RatioReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

pub fn to_markdown(report: &RatioReport) -> String {
    let mut out = format!(
        "## {} vs {}\n\n| params | A | OPT_A | OPT | ratio | source |\n|---|---|---|---|---|---|\n",
        report.algorithm, report.construction
    );
    for row in &report.rows {
        let opt_a = opt_cell(row, &row.opt_a);
        let opt = match &row.opt {
            Some(v) => v.to_string(),
            None => "-".to_string(),
        };
        let ratio = opt_cell(row, &row.ratio);
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            row.params, row.alg, opt_a, opt, ratio, row.opt_source
        )
        .unwrap();
    }
    if let Some(fitted) = &report.fitted {
        writeln!(out, "\nfit: A = {} * OPT_A + {}", fitted.c, fitted.alpha).unwrap();
        if let Some(warning) = &fitted.warning {
            writeln!(out, "warning: {warning}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::rational::{rat, Rat};
    use crate::harness::experiment::{Fitted, OptSource, RatioReport, RatioRow};

    fn sample_report() -> RatioReport {
        RatioReport {
            construction: "makespan-greedy-lb".into(),
            algorithm: "greedy-identical".into(),
            rows: vec![
                RatioRow {
                    params: "m=3".into(),
                    alg: Rat::int(3),
                    opt_a: Some(Rat::int(2)),
                    opt: Some(Rat::int(2)),
                    ratio: Some(rat(3, 2)),
                    opt_source: OptSource::Both,
                },
                RatioRow {
                    params: "m=9".into(),
                    alg: Rat::int(9),
                    opt_a: None,
                    opt: None,
                    ratio: None,
                    opt_source: OptSource::Unresolved,
                },
            ],
            fitted: Some(Fitted {
                c: rat(3, 2),
                alpha: Rat::zero(),
                warning: None,
            }),
        }
    }

    #[test]
    fn csv_layout_is_stable() {
        let csv = to_csv(&sample_report());
        assert_eq!(
            csv,
            "params,A,OPT_A,OPT,ratio,opt_source\n\
             m=3,3/1,2/1,2/1,3/2,both\n\
             m=9,9/1,UNRESOLVED,,UNRESOLVED,UNRESOLVED\n"
        );
    }

    #[test]
    fn json_round_trips() {
        let report = sample_report();
        let json = to_json(&report);
        let back: RatioReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.rows.len(), 2);
        assert_eq!(back.rows[0].ratio, Some(rat(3, 2)));
        assert_eq!(back.fitted.unwrap().c, rat(3, 2));
    }

    #[test]
    fn markdown_includes_fit_line() {
        let md = to_markdown(&sample_report());
        assert!(md.contains("| m=3 | 3/1 | 2/1 | 2/1 | 3/2 | both |"));
        assert!(md.contains("fit: A = 3/2 * OPT_A + 0/1"));
    }
}
