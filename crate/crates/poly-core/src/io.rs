//! Structured-text (JSON) instance documents.
//!
//! Field layout:
//! `{num_vars, degree_bound, scale_bits, coeff_den, terms: [{vars, coeff}],
//!   threshold_num, threshold_den, gap_num, gap_den}`.
//! Term order is canonical (sorted), so serialize → parse → serialize is
//! byte-identical.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::instance::{MtpInstance, Rat};
use crate::poly::MultilinearPoly;

#[derive(Serialize, Deserialize)]
struct TermDoc {
    vars: Vec<u32>,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    num_vars: u32,
    degree_bound: u32,
    scale_bits: u32,
    #[serde(default = "one")]
    coeff_den: u64,
    terms: Vec<TermDoc>,
    threshold_num: i64,
    threshold_den: i64,
    gap_num: i64,
    gap_den: i64,
}

fn one() -> u64 {
    1
}

impl MtpInstance {
    pub fn to_json(&self) -> String {
        let doc = InstanceDoc {
            num_vars: self.poly().num_vars(),
            degree_bound: self.poly().degree_bound(),
            scale_bits: self.poly().scale_bits(),
            coeff_den: self.poly().coeff_den(),
            terms: self
                .poly()
                .terms()
                .map(|(vars, coeff)| TermDoc {
                    vars: vars.to_vec(),
                    coeff,
                })
                .collect(),
            threshold_num: *self.threshold().numer(),
            threshold_den: *self.threshold().denom(),
            gap_num: *self.gap().numer(),
            gap_den: *self.gap().denom(),
        };
        serde_json::to_string_pretty(&doc).expect("instance document serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InstanceDoc = serde_json::from_str(text)?;
        let poly = MultilinearPoly::with_denominator(
            doc.num_vars,
            doc.degree_bound,
            doc.scale_bits,
            doc.coeff_den,
            doc.terms.into_iter().map(|t| (t.vars, t.coeff)),
        )?;
        MtpInstance::new_unchecked_range(
            poly,
            Rat::new(doc.threshold_num, doc.threshold_den),
            Rat::new(doc.gap_num, doc.gap_den),
        )
    }
}
