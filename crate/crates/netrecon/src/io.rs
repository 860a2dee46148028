//! File ingestion and emission. All formats are CSV with fixed headers,
//! UTF-8, LF line endings, `.` decimal separator, and round-trip decimal
//! printing for reals.
//!
//! - edge lists: `src,dst,weight`, arbitrary string labels mapped to dense
//!   indices in first-appearance order, duplicate (src, dst) rows summed;
//! - fitness files: `node,fitness`, one positive value per node;
//! - degree files: `node,degree`, the observed subset.

use crate::graph::{FitnessVector, Graph, GraphError, WeightedDigraph};
use std::collections::HashMap;
use std::io::Write;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("write failed: {0}")]
    Write(#[from] std::io::Error),
    #[error("CSV write failed: {0}")]
    CsvWrite(#[from] csv::Error),
    #[error("{path}: malformed CSV: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: expected header {expected:?}, got {got:?}")]
    BadHeader {
        path: String,
        expected: &'static str,
        got: String,
    },
    #[error("{path}: no data rows")]
    Empty { path: String },
    #[error("{path}:{line}: {message}")]
    BadRow {
        path: String,
        line: u64,
        message: String,
    },
    #[error("{path}:{line}: node {node:?} listed more than once")]
    DuplicateNode {
        path: String,
        line: u64,
        node: String,
    },
    #[error("fitness file does not match the node set: missing {missing:?}, unexpected {extra:?}")]
    NodeSetMismatch {
        missing: Vec<String>,
        extra: Vec<String>,
    },
    #[error("unknown node labels: {nodes:?}")]
    UnknownNodes { nodes: Vec<String> },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn display_path(path: &Path) -> String {
    path.display().to_string()
}

fn open_reader(path: &Path) -> Result<csv::Reader<std::fs::File>, IoError> {
    let file = std::fs::File::open(path).map_err(|source| IoError::Read {
        path: display_path(path),
        source,
    })?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(file))
}

fn check_header(
    reader: &mut csv::Reader<std::fs::File>,
    path: &Path,
    expected: &'static str,
) -> Result<(), IoError> {
    let headers = reader.headers().map_err(|source| IoError::Csv {
        path: display_path(path),
        source,
    })?;
    let got = headers.iter().collect::<Vec<_>>().join(",");
    if got != expected {
        return Err(IoError::BadHeader {
            path: display_path(path),
            expected,
            got,
        });
    }
    Ok(())
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

/// Reads a weighted edge list. Row order determines label-to-index
/// mapping (first appearance, src before dst); duplicate (src, dst) pairs
/// are summed; self-rows and zero weights are legal and register labels.
pub fn ingest_edge_list(path: impl AsRef<Path>) -> Result<WeightedDigraph, IoError> {
    let path = path.as_ref();
    let mut reader = open_reader(path)?;
    check_header(&mut reader, path, "src,dst,weight")?;

    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut intern = |label: &str, labels: &mut Vec<String>| -> usize {
        if let Some(&i) = index.get(label) {
            i
        } else {
            let i = labels.len();
            index.insert(label.to_string(), i);
            labels.push(label.to_string());
            i
        }
    };

    for record in reader.records() {
        let record = record.map_err(|source| IoError::Csv {
            path: display_path(path),
            source,
        })?;
        let line = record_line(&record);
        if record.len() != 3 {
            return Err(IoError::BadRow {
                path: display_path(path),
                line,
                message: format!("expected 3 fields (src,dst,weight), got {}", record.len()),
            });
        }
        let weight: f64 = record[2].parse().map_err(|_| IoError::BadRow {
            path: display_path(path),
            line,
            message: format!("weight {:?} is not a decimal number", &record[2]),
        })?;
        if !weight.is_finite() || weight < 0.0 {
            return Err(IoError::BadRow {
                path: display_path(path),
                line,
                message: format!("weight must be finite and nonnegative, got {weight}"),
            });
        }
        let src = intern(&record[0], &mut labels);
        let dst = intern(&record[1], &mut labels);
        edges.push((src, dst, weight));
    }
    if labels.is_empty() {
        return Err(IoError::Empty {
            path: display_path(path),
        });
    }
    let graph = WeightedDigraph::from_edges(labels.len(), &edges)?;
    Ok(graph.with_labels(labels)?)
}

/// Reads a fitness file. With `expected` labels, the file must cover
/// exactly that node set (the symmetric difference is reported otherwise)
/// and values are returned in `expected` order; without, the file itself
/// defines the node set and order.
pub fn ingest_fitness(
    path: impl AsRef<Path>,
    expected: Option<&[String]>,
) -> Result<(FitnessVector, Vec<String>), IoError> {
    let path = path.as_ref();
    let mut reader = open_reader(path)?;
    check_header(&mut reader, path, "node,fitness")?;

    let mut values: Vec<(String, f64)> = Vec::new();
    let mut seen: HashMap<String, u64> = HashMap::new();
    for record in reader.records() {
        let record = record.map_err(|source| IoError::Csv {
            path: display_path(path),
            source,
        })?;
        let line = record_line(&record);
        if record.len() != 2 {
            return Err(IoError::BadRow {
                path: display_path(path),
                line,
                message: format!("expected 2 fields (node,fitness), got {}", record.len()),
            });
        }
        let node = record[0].to_string();
        if seen.insert(node.clone(), line).is_some() {
            return Err(IoError::DuplicateNode {
                path: display_path(path),
                line,
                node,
            });
        }
        let value: f64 = record[1].parse().map_err(|_| IoError::BadRow {
            path: display_path(path),
            line,
            message: format!("fitness {:?} is not a decimal number", &record[1]),
        })?;
        if !value.is_finite() || value <= 0.0 {
            return Err(IoError::BadRow {
                path: display_path(path),
                line,
                message: format!("fitness must be positive and finite, got {value}"),
            });
        }
        values.push((node, value));
    }
    if values.is_empty() {
        return Err(IoError::Empty {
            path: display_path(path),
        });
    }

    match expected {
        None => {
            let labels: Vec<String> = values.iter().map(|(l, _)| l.clone()).collect();
            let y = FitnessVector::new(values.into_iter().map(|(_, v)| v).collect())?;
            Ok((y, labels))
        }
        Some(expected) => {
            let by_label: HashMap<&str, f64> =
                values.iter().map(|(l, v)| (l.as_str(), *v)).collect();
            let mut missing: Vec<String> = expected
                .iter()
                .filter(|l| !by_label.contains_key(l.as_str()))
                .cloned()
                .collect();
            let expected_set: std::collections::HashSet<&str> =
                expected.iter().map(|s| s.as_str()).collect();
            let mut extra: Vec<String> = values
                .iter()
                .map(|(l, _)| l.clone())
                .filter(|l| !expected_set.contains(l.as_str()))
                .collect();
            if !missing.is_empty() || !extra.is_empty() {
                missing.sort();
                extra.sort();
                return Err(IoError::NodeSetMismatch { missing, extra });
            }
            let y = FitnessVector::new(
                expected
                    .iter()
                    .map(|l| by_label[l.as_str()])
                    .collect::<Vec<_>>(),
            )?;
            Ok((y, expected.to_vec()))
        }
    }
}

/// Reads an observed-degree file for a subset of nodes; degrees may be
/// real-valued (expected degrees are legal calibration targets).
pub fn ingest_degrees(path: impl AsRef<Path>) -> Result<Vec<(String, f64)>, IoError> {
    let path = path.as_ref();
    let mut reader = open_reader(path)?;
    check_header(&mut reader, path, "node,degree")?;

    let mut out: Vec<(String, f64)> = Vec::new();
    let mut seen: HashMap<String, u64> = HashMap::new();
    for record in reader.records() {
        let record = record.map_err(|source| IoError::Csv {
            path: display_path(path),
            source,
        })?;
        let line = record_line(&record);
        if record.len() != 2 {
            return Err(IoError::BadRow {
                path: display_path(path),
                line,
                message: format!("expected 2 fields (node,degree), got {}", record.len()),
            });
        }
        let node = record[0].to_string();
        if seen.insert(node.clone(), line).is_some() {
            return Err(IoError::DuplicateNode {
                path: display_path(path),
                line,
                node,
            });
        }
        let value: f64 = record[1].parse().map_err(|_| IoError::BadRow {
            path: display_path(path),
            line,
            message: format!("degree {:?} is not a number", &record[1]),
        })?;
        if !value.is_finite() || value < 0.0 {
            return Err(IoError::BadRow {
                path: display_path(path),
                line,
                message: format!("degree must be finite and nonnegative, got {value}"),
            });
        }
        out.push((node, value));
    }
    if out.is_empty() {
        return Err(IoError::Empty {
            path: display_path(path),
        });
    }
    Ok(out)
}

/// Maps degree-file labels onto a label set, preserving file order.
/// Unknown labels are collected and reported together.
pub fn resolve_degree_labels(
    degrees: &[(String, f64)],
    labels: &[String],
) -> Result<(Vec<usize>, Vec<f64>), IoError> {
    let index: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let unknown: Vec<String> = degrees
        .iter()
        .map(|(l, _)| l.clone())
        .filter(|l| !index.contains_key(l.as_str()))
        .collect();
    if !unknown.is_empty() {
        return Err(IoError::UnknownNodes { nodes: unknown });
    }
    Ok((
        degrees.iter().map(|(l, _)| index[l.as_str()]).collect(),
        degrees.iter().map(|(_, v)| *v).collect(),
    ))
}

/// Writes a graph as an ingestible edge list. Every node is first declared
/// with a zero-weight self-row (in index order), so that node count, label
/// order, and isolated nodes survive the round trip exactly; edges follow
/// as weight-1 rows in row-major upper-triangle order.
pub fn write_edge_list<W: Write>(
    out: W,
    g: &Graph,
    labels: Option<&[String]>,
) -> Result<(), IoError> {
    let n = g.n();
    if let Some(l) = labels {
        if l.len() != n {
            return Err(IoError::Graph(GraphError::BadLabelCount { n, count: l.len() }));
        }
    }
    let label = |i: usize| -> String {
        match labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    };
    let mut writer = csv::WriterBuilder::new().from_writer(out);
    writer.write_record(["src", "dst", "weight"])?;
    for i in 0..n {
        let l = label(i);
        writer.write_record([l.as_str(), l.as_str(), "0"])?;
    }
    for (i, j) in g.edges() {
        writer.write_record([label(i).as_str(), label(j).as_str(), "1"])?;
    }
    writer.flush()?;
    Ok(())
}
