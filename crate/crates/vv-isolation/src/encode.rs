//! Parity-chain CNF encoding of XOR rows.
//!
//! A row of length L is reduced by pairing: ⌈L/2⌉−1 fresh auxiliaries each
//! defined as the XOR of two variables, then a direct parity constraint over
//! the remaining signals. The auxiliaries are if-and-only-if gates, so each
//! original assignment keeps a unique satisfying extension.

use cnf_compiler::{CircuitBuilder, CnfFormula, Lit, Wire};

use crate::hash::HashRow;

/// Conjoins the given rows onto the formula. Row variables are original
/// indices and are translated through the formula's role map.
pub fn conjoin_rows(cnf: &CnfFormula, rows: &[HashRow]) -> CnfFormula {
    let original = cnf.original_vars();
    let mut b = CircuitBuilder::extend(cnf.clone());
    for row in rows {
        encode_row(&mut b, &original, row);
    }
    b.finish()
}

fn encode_row(b: &mut CircuitBuilder, original: &[u32], row: &HashRow) {
    let mut signals: Vec<Lit> = row
        .vars
        .iter()
        .map(|&i| Lit::positive(original[(i - 1) as usize]))
        .collect();

    match signals.len() {
        0 => {
            // vacuous when the parity target is 0, contradictory otherwise
            if row.parity {
                b.assert_wire(Wire::Const(false));
            }
            return;
        }
        1 => {
            let l = signals[0];
            b.clause(vec![if row.parity { l } else { !l }]);
            return;
        }
        _ => {}
    }

    // pair off until ⌈L/2⌉−1 auxiliaries have been introduced
    let pairs = signals.len().div_ceil(2) - 1;
    let mut reduced: Vec<Lit> = Vec::with_capacity(signals.len() - pairs);
    let mut it = signals.drain(..);
    for _ in 0..pairs {
        let a = it.next().unwrap();
        let c = it.next().unwrap();
        match cnf_xor2(b, a, c) {
            Some(t) => reduced.push(t),
            None => {}
        }
    }
    reduced.extend(it);

    emit_parity_constraint(b, &reduced, row.parity);
}

fn cnf_xor2(b: &mut CircuitBuilder, x: Lit, y: Lit) -> Option<Lit> {
    match b.xor2(Wire::Lit(x), Wire::Lit(y)) {
        Wire::Lit(t) => Some(t),
        // distinct original variables never fold to a constant
        Wire::Const(_) => None,
    }
}

/// Direct CNF of `⊕ signals = parity`: one clause per wrong-parity pattern.
fn emit_parity_constraint(b: &mut CircuitBuilder, signals: &[Lit], parity: bool) {
    let m = signals.len();
    debug_assert!(m >= 1);
    for pattern in 0..(1u32 << m) {
        let ones = pattern.count_ones() % 2 == 1;
        if ones == parity {
            continue; // right parity, allowed
        }
        let clause = signals
            .iter()
            .enumerate()
            .map(|(i, &l)| if (pattern >> i) & 1 == 1 { !l } else { l })
            .collect();
        b.clause(clause);
    }
}
