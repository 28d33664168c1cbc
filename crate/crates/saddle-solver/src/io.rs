//! Structured-text I/O for observables and states: row-major complex
//! entries as (re, im) pairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SaddleError};
use crate::linalg::CMat;
use crate::types::{DensityMatrix, Observable};

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    dims: Vec<usize>,
    entries: Vec<[f64; 2]>,
}

fn to_doc(m: &CMat, dims: Vec<usize>) -> MatrixDoc {
    let n = m.nrows();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push([m[(i, j)].re, m[(i, j)].im]);
        }
    }
    MatrixDoc { dims, entries }
}

fn from_doc(doc: &MatrixDoc) -> Result<(CMat, Vec<usize>)> {
    let n: usize = doc.dims.iter().product();
    if doc.entries.len() != n * n {
        return Err(SaddleError::Json(serde_json::Error::io(
            std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                format!("expected {} entries, found {}", n * n, doc.entries.len()),
            ),
        )));
    }
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let [re, im] = doc.entries[i * n + j];
            m[(i, j)] = Complex64::new(re, im);
        }
    }
    Ok((m, doc.dims.clone()))
}

pub fn observable_to_json(obs: &Observable, dims: Vec<usize>) -> String {
    serde_json::to_string_pretty(&to_doc(obs.entries(), dims)).expect("serialization")
}

pub fn observable_from_json(text: &str) -> Result<(Observable, Vec<usize>)> {
    let doc: MatrixDoc = serde_json::from_str(text)?;
    let (m, dims) = from_doc(&doc)?;
    Ok((Observable::new(m)?, dims))
}

pub fn density_to_json(state: &DensityMatrix, dims: Vec<usize>) -> String {
    serde_json::to_string_pretty(&to_doc(state.entries(), dims)).expect("serialization")
}

pub fn density_from_json(text: &str) -> Result<(DensityMatrix, Vec<usize>)> {
    let doc: MatrixDoc = serde_json::from_str(text)?;
    let (m, dims) = from_doc(&doc)?;
    Ok((DensityMatrix::new(m)?, dims))
}
