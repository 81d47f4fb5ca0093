//! Structured-text benchmark reports (TOML documents).
//!
//! The schema is documented in the repository README; every value a report
//! needs to be re-run — case id, parameters, scheme and grids — is included.

use std::fmt::Write as _;

use swbench_core::catalog::Params;
use swbench_core::harness::{BenchmarkReport, OrderStep, TopographyScheme};
use swbench_core::FrictionLaw;

fn toml_string(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn scheme_name(t: TopographyScheme) -> &'static str {
    match t {
        TopographyScheme::HydrostaticReconstruction => "hydrostatic",
        TopographyScheme::NaiveCentered => "naive",
    }
}

/// Renders a benchmark report as a self-describing TOML document.
///
/// `timestamp` is the wall-clock second count to stamp the report with;
/// `None` omits the line so test output is byte-stable.
pub fn render(
    report: &BenchmarkReport<f64>,
    params: &Params,
    cells: &[usize],
    timestamp: Option<u64>,
) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "schema = \"swbench-report-v1\"");
    let _ = writeln!(w, "case = {}", toml_string(&report.case_id));
    if let Some(stamp) = timestamp {
        let _ = writeln!(w, "generated_unix = {stamp}");
    }
    let _ = writeln!(w, "scheme = {}", toml_string(scheme_name(report.topography)));
    let _ = writeln!(w, "cfl = {}", report.cfl);
    let cell_list: Vec<String> = cells.iter().map(|n| n.to_string()).collect();
    let _ = writeln!(w, "cells = [{}]", cell_list.join(", "));
    let _ = writeln!(w, "passed = {}", report.passed());

    let orders: Vec<String> = report
        .orders
        .iter()
        .map(|o| match o {
            OrderStep::Measured(p) => toml_string(&format!("{p:.4}")),
            OrderStep::Exact => toml_string("exact"),
        })
        .collect();
    let _ = writeln!(w, "orders_l1_h = [{}]", orders.join(", "));

    let _ = writeln!(w, "\n[channel]");
    let spec = &report.spec;
    let _ = writeln!(w, "gravity = {}", spec.gravity);
    let _ = writeln!(w, "length = {}", spec.length);
    let (family, coefficient) = match spec.friction {
        FrictionLaw::None => ("none", 0.0),
        FrictionLaw::Manning(n) => ("manning", n),
        FrictionLaw::DarcyWeisbach(f) => ("darcy-weisbach", f),
        FrictionLaw::Chezy(c) => ("chezy", c),
    };
    let _ = writeln!(w, "friction = {}", toml_string(family));
    let _ = writeln!(w, "friction_coefficient = {coefficient}");
    let _ = writeln!(w, "rain_rate = {}", spec.rain_rate);
    let _ = writeln!(w, "viscosity = {}", spec.viscosity);
    let _ = writeln!(w, "dry_tolerance = {}", spec.dry_tolerance);

    let _ = writeln!(w, "\n[params]");
    for (key, value) in params.iter() {
        if value.is_nan() {
            let _ = writeln!(w, "{key} = \"default\"");
        } else {
            let _ = writeln!(w, "{key} = {value}");
        }
    }

    for grid in &report.grids {
        let _ = writeln!(w, "\n[[grid]]");
        let _ = writeln!(w, "cells = {}", grid.cells);
        if let Some(errors) = &grid.errors {
            let _ = writeln!(w, "l1_h = {}", errors.h.l1);
            let _ = writeln!(w, "l2_h = {}", errors.h.l2);
            let _ = writeln!(w, "linf_h = {}", errors.h.linf);
            let _ = writeln!(w, "l1_q = {}", errors.q.l1);
            let _ = writeln!(w, "l2_q = {}", errors.q.l2);
            let _ = writeln!(w, "linf_q = {}", errors.q.linf);
        }
        if let Some(message) = &grid.failure {
            let _ = writeln!(w, "failure = {}", toml_string(message));
        }
        if grid.steps > 0 {
            let _ = writeln!(w, "steps = {}", grid.steps);
        }
        let _ = writeln!(w, "wall_clock_s = {}", grid.wall_clock_s);
        if let Some(drift) = grid.mass_drift {
            let _ = writeln!(w, "mass_drift = {drift}");
        }
        if let Some(relaxed) = grid.relaxed {
            let _ = writeln!(w, "relaxed = {relaxed}");
        }
    }

    for verdict in &report.verdicts {
        let _ = writeln!(w, "\n[[verdict]]");
        let _ = writeln!(w, "name = {}", toml_string(verdict.name));
        let _ = writeln!(w, "passed = {}", verdict.passed);
        let _ = writeln!(w, "detail = {}", toml_string(&verdict.detail));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use swbench_core::catalog;
    use swbench_core::harness::{bench_case, SchemeConfig};

    #[test]
    fn report_is_valid_toml_and_self_describing() {
        let id = "steady/lake-at-rest";
        let params = catalog::find(id).unwrap().resolve(&[]).unwrap();
        let report =
            bench_case::<f64>(id, &params, &[32], &SchemeConfig::hydrostatic()).unwrap();
        let text = render(&report, &params, &[32], Some(1_700_000_000));
        let doc: toml::Value = text.parse().expect("report must parse as TOML");
        assert_eq!(doc["case"].as_str(), Some(id));
        assert_eq!(doc["schema"].as_str(), Some("swbench-report-v1"));
        assert!(doc["passed"].as_bool().unwrap());
        assert!(doc["channel"]["gravity"].as_float().unwrap() > 9.0);
        assert!(doc["grid"].as_array().unwrap().len() == 1);
        assert!(!doc["verdict"].as_array().unwrap().is_empty());
        // Timestamp only when requested.
        let bare = render(&report, &params, &[32], None);
        assert!(!bare.contains("generated_unix"));
    }
}
