//! The threshold-instance compiler: monomial gates, constant-multiplier bit
//! selection, a balanced tree of ripple-carry adders, and a final threshold
//! comparator, all Tseytin-encoded.
//!
//! For every original assignment `y` the auxiliary extension is unique, so
//! `|SAT(compile(inst))| = |{y : P(y) ≥ a}|` exactly.

use poly_core::MtpInstance;

use crate::builder::CircuitBuilder;
use crate::error::Result;
use crate::formula::{CnfFormula, Lit};
use crate::wires::{Wire, WireBundle};

/// Deterministic polynomial-time reduction from a threshold instance to CNF.
pub fn mtp_to_sat(inst: &MtpInstance) -> Result<CnfFormula> {
    let poly = inst.poly();
    let n = poly.num_vars();
    let mut b = CircuitBuilder::new(n);

    let signed = poly.terms().any(|(_, c)| c < 0);
    // k bits for the largest |v_S|, one more for the sign when needed
    let width = poly.coeff_bits().max(1) + u32::from(signed);

    let mut bundles: Vec<WireBundle> = Vec::with_capacity(poly.num_terms());
    for (vars, coeff) in poly.terms() {
        let inputs: Vec<Wire> = vars.iter().map(|&v| Wire::Lit(Lit::positive(v))).collect();
        let gate = b.and_gate(&inputs);
        bundles.push(b.scale_by_constant(gate, coeff, width, signed)?);
    }
    if bundles.is_empty() {
        bundles.push(WireBundle::zero(1, signed));
    }

    // balanced binary reduction keeps widths at k + ⌈log₂ #terms⌉ + 1
    while bundles.len() > 1 {
        let mut next = Vec::with_capacity(bundles.len().div_ceil(2));
        let mut it = bundles.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(c) => next.push(b.add_bundles(&a, &c)?),
                None => next.push(a),
            }
        }
        bundles = next;
    }
    let sum = bundles.pop().expect("at least one bundle");

    let out = b.compare_geq_const(&sum, inst.scaled_threshold());
    b.assert_wire(out);
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly_core::{brute_force_decide, Decision, MultilinearPoly, Rat};

    fn inst(
        n: u32,
        scale: u32,
        terms: Vec<(Vec<u32>, i64)>,
        a: Rat,
        gap: Rat,
    ) -> MtpInstance {
        let p = MultilinearPoly::new(n, n, scale, terms).unwrap();
        MtpInstance::new(p, a, gap).unwrap()
    }

    fn assert_projection_matches(inst: &MtpInstance) {
        let f = mtp_to_sat(inst).unwrap();
        let sat_witnesses = f.project_witnesses(20).unwrap();
        let poly_witnesses = match brute_force_decide(inst, None).unwrap() {
            Decision::Yes(ws) => ws.into_iter().map(|w| w.bits().to_vec()).collect(),
            Decision::No => Vec::<Vec<bool>>::new(),
        };
        assert_eq!(sat_witnesses, poly_witnesses);
        // witness-count preservation includes auxiliaries
        assert_eq!(
            f.count_models(20).unwrap(),
            poly_witnesses.len() as u64,
            "auxiliary extensions must be unique"
        );
    }

    #[test]
    fn conjunction_projects_to_single_witness() {
        let i = inst(
            2,
            0,
            vec![(vec![1, 2], 1)],
            Rat::new(1, 1),
            Rat::new(1, 1),
        );
        assert_projection_matches(&i);
    }

    #[test]
    fn unreachable_threshold_is_unsat() {
        // P = y1/2, a = 1
        let i = inst(1, 1, vec![(vec![1], 1)], Rat::new(1, 1), Rat::new(1, 2));
        let f = mtp_to_sat(&i).unwrap();
        assert_eq!(f.count_models(20).unwrap(), 0);
    }

    #[test]
    fn average_threshold_half_has_three_witnesses() {
        // P = (y1+y2)/2, a = 1/2 → {(0,1),(1,0),(1,1)}
        let i = inst(
            2,
            1,
            vec![(vec![1], 1), (vec![2], 1)],
            Rat::new(1, 2),
            Rat::new(1, 2),
        );
        let f = mtp_to_sat(&i).unwrap();
        let ws = f.project_witnesses(20).unwrap();
        assert_eq!(
            ws,
            vec![
                vec![false, true],
                vec![true, false],
                vec![true, true],
            ]
        );
        assert_eq!(f.count_models(20).unwrap(), 3);
    }

    #[test]
    fn mixed_sign_witnesses_preserved() {
        // P = y1 + y2 − y1y2 (OR indicator), a = 1
        let i = inst(
            2,
            0,
            vec![(vec![1], 1), (vec![2], 1), (vec![1, 2], -1)],
            Rat::new(1, 1),
            Rat::new(1, 1),
        );
        assert_projection_matches(&i);
    }

    #[test]
    fn compiler_is_deterministic() {
        let i = inst(
            3,
            2,
            vec![(vec![1], 2), (vec![2, 3], 1), (vec![3], 1)],
            Rat::new(1, 2),
            Rat::new(1, 4),
        );
        let a = crate::dimacs::to_dimacs(&mtp_to_sat(&i).unwrap());
        let b = crate::dimacs::to_dimacs(&mtp_to_sat(&i).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn compiled_size_stays_polynomial() {
        let terms: Vec<(Vec<u32>, i64)> = (1..=8).map(|v| (vec![v], 1)).collect();
        let i = inst(8, 3, terms, Rat::new(1, 1), Rat::new(1, 8));
        let f = mtp_to_sat(&i).unwrap();
        let budget = 8 * (3 + 4 + 1) * 40; // terms · width · constant
        assert!(f.num_clauses() < budget, "clauses = {}", f.num_clauses());
    }
}
