//! Report serialization: canonical JSON, CSV and markdown tables.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::analysis::axioms::AxiomAuditReport;
use crate::analysis::census::CensusReport;
use crate::analysis::completeness::{AvalancheMatrix, EquationModelReport, LagCompletenessReport, MinkFullReport};
use crate::analysis::perfectness::{LagPerfectnessReport, MinkPerfectnessReport, StepReport};
use crate::analysis::representation::RepresentationReport;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    #[value(alias = "markdown")]
    Md,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            _ => Err(Error::Parse {
                what: "format",
                input: s.into(),
            }),
        }
    }
}

/// Tabular renderings of a report.
pub trait Tabular {
    fn csv(&self) -> String;
    fn markdown(&self) -> String;
}

/// Renders `report` in `format`. JSON is pretty-printed with a trailing newline.
pub fn emit<R: Serialize + Tabular>(report: &R, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            s
        }
        Format::Csv => report.csv(),
        Format::Md => report.markdown(),
    })
}

fn md_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "| {} |", header.join(" | "));
    let _ = writeln!(s, "|{}", "---|".repeat(header.len()));
    for r in rows {
        let _ = writeln!(s, "| {} |", r.join(" | "));
    }
    s
}

fn csv_lines(header: &[&str], rows: &[Vec<String>]) -> String {
    let quote = |f: &String| {
        if f.contains([',', '"', '\n']) {
            format!("\"{}\"", f.replace('"', "\"\""))
        } else {
            f.clone()
        }
    };
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.iter().map(quote).collect::<Vec<_>>().join(","));
        s.push('\n');
    }
    s
}

fn bits(row: &[bool]) -> Vec<String> {
    row.iter().map(|&b| if b { "1" } else { "0" }.to_string()).collect()
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl Tabular for AvalancheMatrix {
    /// One line per input bit, one 0/1 column per output bit, no header.
    fn csv(&self) -> String {
        self.cells.iter().map(|r| bits(r).join(",") + "\n").collect()
    }

    fn markdown(&self) -> String {
        let header: Vec<String> = std::iter::once("i \\ j".to_string())
            .chain((0..self.cols).map(|j| j.to_string()))
            .collect();
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        let rows: Vec<Vec<String>> = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, r)| std::iter::once(i.to_string()).chain(bits(r)).collect())
            .collect();
        md_table(&header, &rows)
    }
}

impl Tabular for CensusReport {
    fn csv(&self) -> String {
        csv_lines(&["name", "measured", "expected", "formula", "pass"], &self.rows())
    }

    fn markdown(&self) -> String {
        format!(
            "## {} census over {}\n\n{}",
            self.geometry,
            self.field,
            md_table(&["Count", "Measured", "Expected", "Formula", "Pass"], &self.rows())
        )
    }
}

impl CensusReport {
    fn rows(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|e| {
                vec![
                    e.name.clone(),
                    e.measured.to_string(),
                    e.expected.to_string(),
                    e.formula.clone(),
                    e.pass.to_string(),
                ]
            })
            .collect()
    }
}

impl AxiomAuditReport {
    fn rows(&self) -> Vec<Vec<String>> {
        self.verdicts
            .iter()
            .map(|v| {
                vec![
                    format!("{:?}", v.axiom),
                    format!("{:?}", v.scope).to_lowercase(),
                    if v.holds { "holds" } else { "fails" }.into(),
                    v.checked.to_string(),
                    v.skipped.map_or(String::new(), |s| s.to_string()),
                    v.counterexample.as_ref().map_or(String::new(), |c| c.description.clone()),
                ]
            })
            .collect()
    }
}

impl Tabular for AxiomAuditReport {
    fn csv(&self) -> String {
        csv_lines(&["axiom", "scope", "verdict", "checked", "skipped", "counterexample"], &self.rows())
    }

    fn markdown(&self) -> String {
        format!(
            "## {} axioms over {}\n\n{}",
            self.structure,
            self.field,
            md_table(&["Axiom", "Scope", "Verdict", "Checked", "Skipped", "Counterexample"], &self.rows())
        )
    }
}

impl Tabular for LagPerfectnessReport {
    /// The key-count matrix, one row per message.
    fn csv(&self) -> String {
        let header: Vec<String> = std::iter::once("m".to_string())
            .chain((0..self.q).map(|c| format!("c={c}")))
            .collect();
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        let rows: Vec<Vec<String>> = self
            .counts
            .iter()
            .enumerate()
            .map(|(m, r)| std::iter::once(m.to_string()).chain(r.iter().map(u64::to_string)).collect())
            .collect();
        csv_lines(&header, &rows)
    }

    fn markdown(&self) -> String {
        let measured = if self.count_min == self.count_max {
            format!("{}/{}", self.count_min, self.count_min * self.q as u64)
        } else {
            format!("max deviation {}", self.max_deviation)
        };
        let row = vec![
            "every (m, c)".to_string(),
            self.a_priori.to_string(),
            measured,
            self.a_priori.to_string(),
        ];
        format!(
            "## Laguerre perfectness over {} (generators {:?}, lambda {})\n\n{}\nkeys per (m, c): {}..{}; verdict: {:?}\n",
            self.field,
            self.generators,
            self.lambda,
            md_table(&["Case", "A-priori", "A-posteriori measured", "A-posteriori formula"], &[row]),
            self.count_min,
            self.count_max,
            self.verdict
        )
    }
}

fn range(min: &crate::analysis::Fraction, max: &crate::analysis::Fraction) -> String {
    if min == max {
        min.to_string()
    } else {
        format!("{min} .. {max}")
    }
}

fn step_rows(s: &StepReport) -> Vec<Vec<String>> {
    s.rows
        .iter()
        .map(|r| {
            let measured = if r.instances == 0 {
                "not reached".to_string()
            } else {
                range(&r.measured_min, &r.measured_max)
            };
            vec![
                r.case.clone(),
                r.a_priori.to_string(),
                measured,
                r.formula.to_string(),
                join(&r.numerators),
                join(&r.denominators),
                r.formula_denominator.to_string(),
            ]
        })
        .collect()
}

impl Tabular for MinkPerfectnessReport {
    fn csv(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .steps
            .iter()
            .flat_map(|s| {
                step_rows(s).into_iter().map(move |mut r| {
                    r.insert(0, s.step.to_string());
                    r
                })
            })
            .collect();
        csv_lines(
            &[
                "step",
                "case",
                "a_priori",
                "a_posteriori_measured",
                "a_posteriori_formula",
                "numerators",
                "denominators",
                "formula_denominator",
            ],
            &rows,
        )
    }

    fn markdown(&self) -> String {
        let mut s = format!(
            "## Minkowski perfectness over {}\n\nmessage {:?} on hyperbola {:?}\n",
            self.field, self.message, self.cycle
        );
        for step in &self.steps {
            let _ = write!(
                s,
                "\n### Point m{}\n\nprefixes {}, dead {}, valid key totals {}",
                step.step,
                step.prefixes,
                step.dead_prefixes,
                join(&step.valid_key_totals)
            );
            if let Some(p) = step.unrestricted_key_total {
                let _ = write!(s, ", key total without the asymptote rule {p}");
            }
            s.push_str("\n\n");
            s.push_str(&md_table(
                &[
                    "Case",
                    "A-priori",
                    "A-posteriori measured",
                    "A-posteriori formula",
                    "Numerators",
                    "Denominators",
                    "Formula denominator",
                ],
                &step_rows(step),
            ));
        }
        let _ = writeln!(
            s,
            "\nmax |nu - mu| = {} ({:.4}); bound 3/q = {}; within bound: {}",
            self.max_deviation, self.max_deviation_f64, self.first_approximation_bound, self.within_bound
        );
        s
    }
}

impl Tabular for LagCompletenessReport {
    fn csv(&self) -> String {
        self.matrix.csv()
    }

    fn markdown(&self) -> String {
        format!(
            "## Laguerre completeness over {} ({}, lambda {})\n\n{}\nmatches oracle: {}; verdict: {:?}\n",
            self.field,
            self.scope,
            self.lambda,
            self.matrix.markdown(),
            self.matches_oracle,
            self.verdict
        )
    }
}

impl Tabular for MinkFullReport {
    fn csv(&self) -> String {
        self.matrix.csv()
    }

    fn markdown(&self) -> String {
        format!(
            "## Minkowski full-cipher completeness over {} ({})\n\n{}\npairs {}, coverage {}, true cells {}/{}; verdict: {:?}\n",
            self.field,
            self.matrix.scope,
            self.matrix.markdown(),
            self.pairs,
            self.coverage,
            self.matrix.true_cells(),
            self.matrix.rows * self.matrix.cols,
            self.verdict
        )
    }
}

impl EquationModelReport {
    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for s in [&self.mixed, &self.same] {
            rows.push(vec![
                s.name.clone(),
                s.equations.clone(),
                format!("{} of {} pairs", s.witnesses.len(), s.witnesses.len() + s.missing.len()),
                if s.all_found { "witness for every (i, j)" } else { "pairs without witness" }.into(),
            ]);
        }
        for p in [&self.parallel_gen1, &self.parallel_gen2] {
            rows.push(vec![
                p.name.clone(),
                format!("{} ({})", p.equations, p.constraint),
                format!("{} legitimate of {} searched", p.legitimate_solutions, p.searched),
                if p.legitimate_solutions == 0 { "no legitimate solution" } else { "solvable" }.into(),
            ]);
        }
        rows
    }
}

impl Tabular for EquationModelReport {
    fn csv(&self) -> String {
        csv_lines(&["system", "equations", "result", "verdict"], &self.rows())
    }

    fn markdown(&self) -> String {
        format!(
            "## Minkowski completeness equation model over {}\n\n{}",
            self.field,
            md_table(&["System", "Equations", "Result", "Verdict"], &self.rows())
        )
    }
}

impl Tabular for RepresentationReport {
    fn csv(&self) -> String {
        csv_lines(
            &["field", "cycles", "comparisons", "disagreements"],
            &[vec![
                self.field.clone(),
                self.cycles.to_string(),
                self.comparisons.to_string(),
                self.disagreements.to_string(),
            ]],
        )
    }

    fn markdown(&self) -> String {
        format!(
            "## Double ratio versus equation over {}\n\n{} cycles, {} comparisons, {} disagreements\n",
            self.field, self.cycles, self.comparisons, self.disagreements
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::census::laguerre_census;
    use crate::analysis::perfectness::minkowski_perfectness_audit;
    use crate::field::{Field, FieldElement};
    use crate::minkowski::MinkPoint;
    use crate::minkowski_cipher::MinkowskiCipher;

    #[test]
    fn json_is_stable() {
        let f = Field::prime(5).unwrap();
        let a = emit(&laguerre_census(&f), Format::Json).unwrap();
        let b = emit(&laguerre_census(&f), Format::Json).unwrap();
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
    }

    #[test]
    fn perfectness_markdown_has_table_columns() {
        let c = MinkowskiCipher::new(Field::prime(5).unwrap());
        let p = |x, y| MinkPoint::new(FieldElement::from_raw(x), FieldElement::from_raw(y));
        let msg = c.message([p(0, 1), p(1, 2), p(2, 4)]).unwrap();
        let md = emit(&minkowski_perfectness_audit(&c, &msg).unwrap(), Format::Md).unwrap();
        assert!(md.contains("| Case | A-priori | A-posteriori measured | A-posteriori formula |"));
        assert!(md.contains("m1=c1, m2≠c2"));
    }

    #[test]
    fn matrix_csv_shape() {
        let m = AvalancheMatrix {
            rows: 2,
            cols: 3,
            scope: "t".into(),
            cells: vec![vec![true, false, true], vec![false, false, false]],
            witnesses: vec![],
        };
        assert_eq!(m.csv(), "1,0,1\n0,0,0\n");
    }

    #[test]
    fn formats_parse() {
        assert_eq!("md".parse::<Format>().unwrap(), Format::Md);
        assert!("xml".parse::<Format>().is_err());
    }
}
