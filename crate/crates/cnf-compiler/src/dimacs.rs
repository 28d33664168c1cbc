//! DIMACS CNF output and input, plus the sidecar map that records which
//! formula variables carry the original problem variables.

use serde::{Deserialize, Serialize};

use crate::error::{CnfError, Result};
use crate::formula::{CnfFormula, Lit, VarRole};

pub fn to_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    out.push_str(&format!("p cnf {} {}\n", f.num_vars(), f.num_clauses()));
    for clause in f.clauses() {
        for lit in clause {
            out.push_str(&format!("{} ", lit.code()));
        }
        out.push_str("0\n");
    }
    out
}

/// Sidecar document: formula variable indices of the originals, ordered by
/// original index.
#[derive(Serialize, Deserialize)]
pub struct SidecarMap {
    pub num_vars: u32,
    pub original_vars: Vec<u32>,
}

pub fn sidecar_json(f: &CnfFormula) -> String {
    let doc = SidecarMap {
        num_vars: f.num_vars(),
        original_vars: f.original_vars(),
    };
    serde_json::to_string_pretty(&doc).expect("sidecar serialization")
}

/// Parses DIMACS text. Roles default to `Original(1..=V)`; pass a sidecar to
/// mark auxiliaries explicitly.
pub fn parse_dimacs(text: &str, sidecar: Option<&str>) -> Result<CnfFormula> {
    let mut num_vars: Option<u32> = None;
    let mut declared_clauses = 0usize;
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            let mut it = rest.split_whitespace();
            num_vars = Some(
                it.next()
                    .ok_or_else(|| CnfError::Dimacs("missing variable count".into()))?
                    .parse()
                    .map_err(|e| CnfError::Dimacs(format!("bad variable count: {e}")))?,
            );
            declared_clauses = it
                .next()
                .ok_or_else(|| CnfError::Dimacs("missing clause count".into()))?
                .parse()
                .map_err(|e| CnfError::Dimacs(format!("bad clause count: {e}")))?;
            continue;
        }
        for tok in line.split_whitespace() {
            let code: i32 = tok
                .parse()
                .map_err(|e| CnfError::Dimacs(format!("bad literal {tok:?}: {e}")))?;
            if code == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(Lit::from_code(code).unwrap());
            }
        }
    }
    if !current.is_empty() {
        return Err(CnfError::Dimacs("unterminated clause".into()));
    }
    let num_vars = num_vars.ok_or_else(|| CnfError::Dimacs("missing p cnf header".into()))?;
    if clauses.len() != declared_clauses {
        return Err(CnfError::Dimacs(format!(
            "header declares {declared_clauses} clauses, found {}",
            clauses.len()
        )));
    }
    let roles = match sidecar {
        None => (1..=num_vars).map(VarRole::Original).collect(),
        Some(text) => {
            let doc: SidecarMap = serde_json::from_str(text)?;
            if doc.num_vars != num_vars {
                return Err(CnfError::Dimacs(format!(
                    "sidecar variable count {} disagrees with header {num_vars}",
                    doc.num_vars
                )));
            }
            let mut roles = vec![VarRole::Aux { gate: 0 }; num_vars as usize];
            for (i, &v) in doc.original_vars.iter().enumerate() {
                if v == 0 || v > num_vars {
                    return Err(CnfError::VarOutOfRange(v));
                }
                roles[(v - 1) as usize] = VarRole::Original(i as u32 + 1);
            }
            roles
        }
    };
    CnfFormula::from_parts(roles, clauses)
}
