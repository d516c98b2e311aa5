//! The aggregated `analyze` report and its text rendering.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::cone::{self, Convexity, Ray};
use crate::directsum::{is_general_bipyramidal, BoundReport};
use crate::error::{Error, Result};
use crate::gluing::{self, Certificate, Decision, DecompositionTree, SearchOptions};
use crate::linalg::IntVector;
use crate::semigroup::GeneratorSet;
use crate::toric::{self, OracleConfig, OracleReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub search: SearchOptions,
    /// Run the toric-ideal oracle with this configuration.
    pub oracle: Option<OracleConfig>,
    pub timings: bool,
}

/// Oracle section: a report, or the reason it was skipped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum OracleOutcome {
    Report(OracleReport),
    Skipped { skipped: String },
}

/// Wall-clock phases in microseconds. Never part of the canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Timings {
    pub cone_us: u128,
    pub is_ci_us: u128,
    pub is_ci_cone_us: u128,
    pub bipyramidal_us: u128,
    pub oracle_us: u128,
}

/// Everything known about one generator set.
///
/// Verdict fields are `null` when the cone is not pointed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub name: Option<String>,
    pub m: usize,
    pub n: usize,
    pub dim: usize,
    pub pointed: bool,
    /// `x` with `±x` in the cone, when not pointed.
    pub lineality_witness: Option<IntVector>,
    pub extreme_rays: Option<Vec<Ray>>,
    pub is_ci: Option<Decision>,
    pub is_ci_cone: Option<Decision>,
    pub bipyramidal: Option<bool>,
    /// Present for complete intersection cones of dimension at least 2.
    pub ray_bound: Option<BoundReport>,
    pub oracle: Option<OracleOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

pub fn analyze(a: &GeneratorSet, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let mut timings = Timings::default();
    let clock = Instant::now();
    let dim = cone::cone_dim(a);
    let convexity = cone::is_strongly_convex(a);
    let mut report = AnalysisReport {
        name: a.name().map(str::to_owned),
        m: a.len(),
        n: a.ambient(),
        dim,
        pointed: convexity.is_pointed(),
        lineality_witness: None,
        extreme_rays: None,
        is_ci: None,
        is_ci_cone: None,
        bipyramidal: None,
        ray_bound: None,
        oracle: None,
        timings: None,
    };
    if let Convexity::NotPointed { lineality } = convexity {
        report.lineality_witness = Some(lineality);
        timings.cone_us = clock.elapsed().as_micros();
        report.timings = opts.timings.then_some(timings);
        return Ok(report);
    }
    let rays = cone::extreme_rays(a)?;
    timings.cone_us = clock.elapsed().as_micros();

    let clock = Instant::now();
    let ci = gluing::is_complete_intersection_with(a, opts.search)?;
    timings.is_ci_us = clock.elapsed().as_micros();

    let clock = Instant::now();
    let ci_cone = gluing::is_ci_cone_with(a, opts.search)?;
    timings.is_ci_cone_us = clock.elapsed().as_micros();

    let clock = Instant::now();
    let bipyramidal = is_general_bipyramidal(a)?.is_some();
    timings.bipyramidal_us = clock.elapsed().as_micros();

    if dim >= 2 && ci_cone.verdict {
        let k = rays.len();
        let (bound_holds, equality) = (k <= 2 * dim - 2, k == 2 * dim - 2);
        report.ray_bound = Some(BoundReport {
            n: dim,
            k,
            bound_holds,
            equality,
            bipyramidal,
            consistent: bound_holds && equality == bipyramidal,
        });
    }

    if let Some(cfg) = &opts.oracle {
        let clock = Instant::now();
        report.oracle = Some(match toric::is_ci_oracle_with(a, cfg) {
            Ok(r) => OracleOutcome::Report(r),
            Err(Error::BudgetExceeded(why)) => OracleOutcome::Skipped { skipped: why },
            Err(e) => return Err(e),
        });
        timings.oracle_us = clock.elapsed().as_micros();
    }

    report.extreme_rays = Some(rays);
    report.is_ci = Some(ci);
    report.is_ci_cone = Some(ci_cone);
    report.bipyramidal = Some(bipyramidal);
    report.timings = opts.timings.then_some(timings);
    Ok(report)
}

impl AnalysisReport {
    /// Sorted keys, lossless integers, trailing newline.
    pub fn to_json(&self) -> String {
        crate::json::to_canonical_string(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.name {
            let _ = writeln!(out, "instance: {n}");
        }
        let _ = writeln!(
            out,
            "generators: {} in Z^{}, cone dimension {}",
            self.m, self.n, self.dim
        );
        if let Some(w) = &self.lineality_witness {
            let _ = writeln!(out, "pointed: no (contains the line through {w})");
        } else {
            let _ = writeln!(out, "pointed: yes");
        }
        if let Some(rays) = &self.extreme_rays {
            let _ = writeln!(out, "extreme rays: {}", rays.len());
            for r in rays {
                let _ = writeln!(out, "  {r}");
            }
        }
        if let Some(d) = &self.is_ci {
            out.push_str(&render_decision("complete intersection", d));
        }
        if let Some(d) = &self.is_ci_cone {
            out.push_str(&render_decision("complete intersection cone", d));
        }
        if let Some(b) = self.bipyramidal {
            let _ = writeln!(out, "general bipyramidal: {}", yes_no(b));
        }
        if let Some(b) = &self.ray_bound {
            let _ = writeln!(
                out,
                "ray bound: k = {} <= 2n - 2 = {}: {}{}",
                b.k,
                2 * b.n - 2,
                yes_no(b.bound_holds),
                if b.equality { " (equality)" } else { "" }
            );
        }
        match &self.oracle {
            Some(OracleOutcome::Report(r)) => {
                let _ = writeln!(
                    out,
                    "oracle: mu = {}, height = {}, complete intersection: {}",
                    r.mu,
                    r.height,
                    yes_no(r.is_ci)
                );
            }
            Some(OracleOutcome::Skipped { skipped }) => {
                let _ = writeln!(out, "oracle: skipped ({skipped})");
            }
            None => {}
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(
                out,
                "timings (us): cone {}, is-ci {}, is-ci-cone {}, bipyramidal {}, oracle {}",
                t.cone_us, t.is_ci_us, t.is_ci_cone_us, t.bipyramidal_us, t.oracle_us
            );
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Verdict line followed by the indented tree.
pub fn render_decision(label: &str, d: &Decision) -> String {
    let mut out = format!("{label}: {}\n", yes_no(d.verdict));
    if let Some(t) = &d.tree {
        render_tree(t, 1, &mut out);
    }
    out
}

pub fn render_tree(t: &DecompositionTree, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match t {
        DecompositionTree::Leaf { indices } => {
            let _ = writeln!(out, "{pad}leaf {}", index_set(indices));
        }
        DecompositionTree::Node {
            left,
            right,
            cert,
            sum_type,
        } => {
            let how = match cert {
                Certificate::Gluing(_) => "glue".to_owned(),
                Certificate::SGluing(c) => format!("s-glue (t = {})", c.t),
            };
            let _ = writeln!(
                out,
                "{pad}{how} {} | {} along {} [{}]",
                index_set(cert.e1()),
                index_set(cert.e2()),
                cert.a(),
                match sum_type {
                    gluing::SumType::Internal => "internal",
                    gluing::SumType::External => "external",
                }
            );
            render_tree(left, depth + 1, out);
            render_tree(right, depth + 1, out);
        }
    }
}

fn index_set(ix: &[usize]) -> String {
    let parts: Vec<String> = ix.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs(rows: &[&[i64]]) -> GeneratorSet {
        GeneratorSet::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn numerical_report() {
        let r = analyze(&gs(&[&[3], &[4], &[5]]), &AnalyzeOptions::default()).unwrap();
        assert_eq!((r.m, r.n, r.dim, r.pointed), (3, 1, 1, true));
        assert!(!r.is_ci.as_ref().unwrap().verdict);
        assert!(r.is_ci_cone.as_ref().unwrap().verdict);
        // Dimension one carries no ray bound.
        assert!(r.ray_bound.is_none());
        assert!(r.timings.is_none());
        assert!(!r.to_json().contains("timings"));
    }

    #[test]
    fn non_pointed_report_has_null_verdicts() {
        let r = analyze(&gs(&[&[1, 0], &[-1, 0], &[0, 1]]), &AnalyzeOptions::default()).unwrap();
        assert!(!r.pointed);
        assert!(r.lineality_witness.is_some());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(v["is_ci"].is_null() && v["extreme_rays"].is_null());
        assert!(r.to_text().contains("pointed: no"));
    }

    #[test]
    fn bipyramid_report_with_oracle() {
        let opts = AnalyzeOptions {
            oracle: Some(OracleConfig::default()),
            ..Default::default()
        };
        let r = analyze(&crate::directsum::bipyramid(3).unwrap(), &opts).unwrap();
        let b = r.ray_bound.as_ref().unwrap();
        assert!(b.equality && b.bipyramidal && b.consistent);
        match r.oracle.as_ref().unwrap() {
            OracleOutcome::Report(o) => assert_eq!((o.mu, o.height), (1, 1)),
            other => panic!("{other:?}"),
        }
        let text = r.to_text();
        assert!(text.contains("instance: bipyramid-3"));
        assert!(text.contains("(equality)"));
        assert_eq!(r.to_json(), analyze(&crate::directsum::bipyramid(3).unwrap(), &opts).unwrap().to_json());
    }

    #[test]
    fn oracle_budget_is_reported() {
        let opts = AnalyzeOptions {
            oracle: Some(OracleConfig {
                max_entry: 3,
                ..Default::default()
            }),
            ..Default::default()
        };
        let r = analyze(&gs(&[&[4], &[6], &[9]]), &opts).unwrap();
        assert!(matches!(r.oracle, Some(OracleOutcome::Skipped { .. })));
    }
}
