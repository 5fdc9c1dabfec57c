//! File formats: complex JSON, edge-signal CSV, dictionary CSV with JSON
//! sidecar, and Slepian-set CSV.
//!
//! Vertex indices are 1-based on disk and 0-based in memory. Floats are
//! written with Rust's shortest round-trip formatting, so a load followed
//! by a save reproduces the file byte for byte.

use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::dictionary::{AtomMeta, ConcentrationPlan, FrameCertificate, SlepianDictionary};
use crate::error::{Error, Result};
use crate::slepian::SlepianSet;
use crate::spectral::EdgeSignal;

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    vertices: usize,
    #[serde(default)]
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    triangles: Vec<[usize; 3]>,
}

fn to_zero_based<const N: usize>(simplex: &[usize; N]) -> Result<[usize; N]> {
    let mut out = [0usize; N];
    for (o, &v) in out.iter_mut().zip(simplex) {
        if v == 0 {
            return Err(Error::Format(
                "vertex indices are 1-based; found 0".to_string(),
            ));
        }
        *o = v - 1;
    }
    Ok(out)
}

/// Writes a complex as JSON with 1-based vertex indices.
pub fn save_complex(path: &Path, complex: &SimplicialComplex) -> Result<()> {
    let file = ComplexFile {
        vertices: complex.vertex_count(),
        edges: complex
            .edges()
            .iter()
            .map(|e| [e[0] + 1, e[1] + 1])
            .collect(),
        triangles: complex
            .triangles()
            .iter()
            .map(|t| [t[0] + 1, t[1] + 1, t[2] + 1])
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Loads and validates a complex from the JSON format.
pub fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    let text = std::fs::read_to_string(path)?;
    let file: ComplexFile = serde_json::from_str(&text)?;
    let edges = file
        .edges
        .iter()
        .map(to_zero_based)
        .collect::<Result<Vec<_>>>()?;
    let triangles = file
        .triangles
        .iter()
        .map(to_zero_based)
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::build(file.vertices, &edges, &triangles)
}

/// Writes an edge signal as CSV with columns `edge_u,edge_v,value`, one row
/// per edge in canonical order.
pub fn save_signal(path: &Path, complex: &SimplicialComplex, signal: &EdgeSignal) -> Result<()> {
    if signal.len() != complex.edge_count() {
        return Err(Error::DimensionMismatch {
            what: "signal length",
            expected: complex.edge_count(),
            got: signal.len(),
        });
    }
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["edge_u", "edge_v", "value"])?;
    for (i, e) in complex.edges().iter().enumerate() {
        writer.write_record(&[
            (e[0] + 1).to_string(),
            (e[1] + 1).to_string(),
            format!("{}", signal[i]),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Loads an edge signal, matching each row to the canonical edge order.
/// Every edge must appear exactly once.
pub fn load_signal(path: &Path, complex: &SimplicialComplex) -> Result<EdgeSignal> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["edge_u", "edge_v", "value"] {
        return Err(Error::Format(format!(
            "expected signal header edge_u,edge_v,value, got {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut values = vec![None::<f64>; complex.edge_count()];
    for record in reader.records() {
        let record = record?;
        let parse_vertex = |field: &str| -> Result<usize> {
            let v: usize = field
                .parse()
                .map_err(|_| Error::Format(format!("bad vertex index {field:?}")))?;
            if v == 0 {
                return Err(Error::Format(
                    "vertex indices are 1-based; found 0".to_string(),
                ));
            }
            Ok(v - 1)
        };
        let u = parse_vertex(&record[0])?;
        let v = parse_vertex(&record[1])?;
        let value: f64 = record[2]
            .parse()
            .map_err(|_| Error::Format(format!("bad signal value {:?}", &record[2])))?;
        let index = complex.edge_index(u, v).ok_or_else(|| {
            Error::Format(format!(
                "row references unknown edge ({}, {})",
                u + 1,
                v + 1
            ))
        })?;
        if values[index].is_some() {
            return Err(Error::Format(format!(
                "duplicate row for edge ({}, {})",
                u + 1,
                v + 1
            )));
        }
        values[index] = Some(value);
    }
    let missing = values.iter().filter(|v| v.is_none()).count();
    if missing > 0 {
        return Err(Error::Format(format!("{missing} edges have no signal row")));
    }
    Ok(DVector::from_iterator(
        values.len(),
        values.into_iter().map(|v| v.unwrap()),
    ))
}

/// Everything needed to reload a dictionary and audit its construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DictionarySidecar {
    pub edge_count: usize,
    pub atom_count: usize,
    pub k_tilde: Option<usize>,
    pub lower_set_count: usize,
    pub upper_set_count: usize,
    pub harmonic_count: usize,
    pub atom_meta: Vec<AtomMeta>,
    pub plan: ConcentrationPlan,
    pub certificate: Option<FrameCertificate>,
}

/// Writes the atom matrix as CSV (one column per atom, header `a0..`) plus
/// a JSON sidecar of metadata and the optional certificate.
pub fn save_dictionary(
    csv_path: &Path,
    sidecar_path: &Path,
    dictionary: &SlepianDictionary,
    certificate: Option<&FrameCertificate>,
) -> Result<()> {
    let atoms = dictionary.atoms();
    let mut writer = csv::Writer::from_path(csv_path)?;
    writer.write_record((0..atoms.ncols()).map(|j| format!("a{j}")))?;
    for i in 0..atoms.nrows() {
        writer.write_record((0..atoms.ncols()).map(|j| format!("{}", atoms[(i, j)])))?;
    }
    writer.flush()?;

    let sidecar = DictionarySidecar {
        edge_count: dictionary.edge_count(),
        atom_count: dictionary.atom_count(),
        k_tilde: dictionary.k_tilde(),
        lower_set_count: dictionary.lower_set_count(),
        upper_set_count: dictionary.upper_set_count(),
        harmonic_count: dictionary.harmonic_atom_count(),
        atom_meta: dictionary.meta().to_vec(),
        plan: dictionary.plan().clone(),
        certificate: certificate.cloned(),
    };
    let mut text = serde_json::to_string_pretty(&sidecar)?;
    text.push('\n');
    std::fs::write(sidecar_path, text)?;
    Ok(())
}

/// Reloads a dictionary from its CSV matrix and JSON sidecar.
pub fn load_dictionary(
    csv_path: &Path,
    sidecar_path: &Path,
) -> Result<(SlepianDictionary, Option<FrameCertificate>)> {
    let text = std::fs::read_to_string(sidecar_path)?;
    let sidecar: DictionarySidecar = serde_json::from_str(&text)?;

    let mut reader = csv::Reader::from_path(csv_path)?;
    let headers = reader.headers()?.clone();
    let atom_count = headers.len();
    if atom_count != sidecar.atom_count {
        return Err(Error::DimensionMismatch {
            what: "dictionary columns",
            expected: sidecar.atom_count,
            got: atom_count,
        });
    }
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let row = record
            .iter()
            .map(|field| {
                field
                    .parse::<f64>()
                    .map_err(|_| Error::Format(format!("bad atom entry {field:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != atom_count {
            return Err(Error::Format("ragged dictionary CSV".to_string()));
        }
        rows.push(row);
    }
    if rows.len() != sidecar.edge_count {
        return Err(Error::DimensionMismatch {
            what: "dictionary rows",
            expected: sidecar.edge_count,
            got: rows.len(),
        });
    }
    let atoms = DMatrix::from_fn(rows.len(), atom_count, |i, j| rows[i][j]);
    let dictionary =
        SlepianDictionary::from_parts(atoms, sidecar.atom_meta, sidecar.plan, sidecar.k_tilde)?;
    Ok((dictionary, sidecar.certificate))
}

/// Writes one Slepian set as CSV: a header row of concentration values,
/// then the vectors as columns.
pub fn save_slepian_set(path: &Path, set: &SlepianSet) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(set.concentrations.iter().map(|l| format!("{l}")))?;
    let vectors = &set.vectors;
    for i in 0..vectors.nrows() {
        writer.write_record((0..vectors.ncols()).map(|j| format!("{}", vectors[(i, j)])))?;
    }
    writer.flush()?;
    Ok(())
}
