//! Report serialization. CSV is the canonical interchange format: UTF-8,
//! LF line endings, `.` decimal separator, and shortest round-trip decimal
//! printing for reals. JSON mirrors each CSV with configuration and
//! manifest embedded.

use crate::bench::BenchmarkResult;
use crate::bootstrap::ReconstructionEstimate;
use crate::ensemble::{Calibration, ConfigurationModelFit};
use crate::metrics::MetricsReport;

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    writer.write_record(header).expect("in-memory write");
    for row in rows {
        writer.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("CSV output is UTF-8")
}

fn fmt(v: f64) -> String {
    format!("{v}")
}

/// `property,value` rows; the rich-club row is omitted when undefined.
pub fn metrics_csv(report: &MetricsReport) -> String {
    let mut rows = vec![
        vec!["density".to_string(), fmt(report.density)],
        vec!["knn".to_string(), fmt(report.knn)],
        vec!["clustering".to_string(), fmt(report.clustering)],
    ];
    if let Some(rc) = report.rich_club {
        rows.push(vec!["rich_club".to_string(), fmt(rc)]);
    }
    csv_rows(&["property", "value"], rows)
}

/// Single-row summary of a coupling calibration.
pub fn calibration_csv(cal: &Calibration, subset_size: usize, n_nodes: usize) -> String {
    csv_rows(
        &[
            "z",
            "residual",
            "target_sum",
            "evaluations",
            "subset_size",
            "n_nodes",
        ],
        [vec![
            fmt(cal.z),
            fmt(cal.residual),
            fmt(cal.target_sum),
            cal.evaluations.to_string(),
            subset_size.to_string(),
            n_nodes.to_string(),
        ]],
    )
}

/// `property,mean,std,method,samples,z` rows; std is empty where no
/// standard deviation is available.
pub fn estimates_csv(estimates: &[ReconstructionEstimate]) -> String {
    csv_rows(
        &["property", "mean", "std", "method", "samples", "z"],
        estimates.iter().map(|e| {
            vec![
                e.property.name().to_string(),
                fmt(e.mean),
                e.std.map(fmt).unwrap_or_default(),
                e.method.to_string(),
                e.samples.to_string(),
                fmt(e.z),
            ]
        }),
    )
}

/// `node,degree,x` rows, one per node.
pub fn cm_fit_csv(fit: &ConfigurationModelFit, degrees: &[f64], labels: &[String]) -> String {
    csv_rows(
        &["node", "degree", "x"],
        fit.x.iter().enumerate().map(|(i, &x)| {
            vec![labels[i].clone(), fmt(degrees[i]), fmt(x)]
        }),
    )
}

/// Two-column `fitness,x` scatter pairing each node's fitness with its
/// fitted multiplier.
pub fn scatter_csv(fitness: &[f64], x: &[f64]) -> String {
    csv_rows(
        &["fitness", "x"],
        fitness
            .iter()
            .zip(x)
            .map(|(&y, &xi)| vec![fmt(y), fmt(xi)]),
    )
}

/// Long-form benchmark table: `property,n,flavor,rrmse,M,seed`.
pub fn bench_csv(result: &BenchmarkResult) -> String {
    csv_rows(
        &["property", "n", "flavor", "rrmse", "M", "seed"],
        result.rrmse.iter().map(|cell| {
            vec![
                cell.property.name().to_string(),
                cell.n.to_string(),
                cell.flavor.token().to_string(),
                fmt(cell.rrmse),
                result.subsets_per_n.to_string(),
                result.seed.to_string(),
            ]
        }),
    )
}
