//! Gate-level Tseytin encoding with aggressive constant folding.
//!
//! Every auxiliary variable is introduced by an if-and-only-if gate
//! definition, so for any assignment of the gate inputs the auxiliary's
//! value is forced. That functional-consistency property is what preserves
//! witness counts through the whole compilation.

use crate::error::{CnfError, Result};
use crate::formula::{CnfFormula, Lit};
use crate::wires::{Wire, WireBundle};

pub struct CircuitBuilder {
    formula: CnfFormula,
    next_gate: u32,
}

impl CircuitBuilder {
    /// Starts a circuit over original variables `1..=num_original`.
    pub fn new(num_original: u32) -> Self {
        CircuitBuilder {
            formula: CnfFormula::with_originals(num_original),
            next_gate: 0,
        }
    }

    /// Continues allocation on top of an existing formula.
    pub fn extend(formula: CnfFormula) -> Self {
        CircuitBuilder {
            formula,
            next_gate: 0,
        }
    }

    pub fn num_original(&self) -> u32 {
        self.formula.num_original()
    }

    pub fn fresh_aux(&mut self) -> Lit {
        let gate = self.next_gate;
        self.next_gate += 1;
        Lit::positive(self.formula.add_aux_var(gate))
    }

    pub fn clause(&mut self, lits: Vec<Lit>) {
        self.formula.add_clause(lits);
    }

    pub fn finish(self) -> CnfFormula {
        self.formula
    }

    /// Forces a wire true: unit clause for literals, nothing for constant
    /// true, an explicit empty clause (UNSAT marker) for constant false.
    pub fn assert_wire(&mut self, w: Wire) {
        match w {
            Wire::Const(true) => {}
            Wire::Const(false) => self.formula.add_empty_clause(),
            Wire::Lit(l) => self.formula.add_clause(vec![l]),
        }
    }

    /// g ⟺ ⋀ inputs. One-input conjunctions return the input unchanged;
    /// empty conjunctions are the constant-1 wire.
    pub fn and_gate(&mut self, inputs: &[Wire]) -> Wire {
        let mut lits: Vec<Lit> = Vec::with_capacity(inputs.len());
        for w in inputs {
            match w {
                Wire::Const(false) => return Wire::Const(false),
                Wire::Const(true) => {}
                Wire::Lit(l) => {
                    if lits.contains(&!*l) {
                        return Wire::Const(false);
                    }
                    if !lits.contains(l) {
                        lits.push(*l);
                    }
                }
            }
        }
        match lits.len() {
            0 => Wire::Const(true),
            1 => Wire::Lit(lits[0]),
            _ => {
                let g = self.fresh_aux();
                for &l in &lits {
                    self.formula.add_clause(vec![!g, l]);
                }
                let mut long = vec![g];
                long.extend(lits.iter().map(|&l| !l));
                self.formula.add_clause(long);
                Wire::Lit(g)
            }
        }
    }

    /// g ⟺ ⋁ inputs, by duality with the AND gate.
    pub fn or_gate(&mut self, inputs: &[Wire]) -> Wire {
        let negs: Vec<Wire> = inputs.iter().map(|w| w.negated()).collect();
        self.and_gate(&negs).negated()
    }

    pub fn and2(&mut self, a: Wire, b: Wire) -> Wire {
        self.and_gate(&[a, b])
    }

    pub fn or2(&mut self, a: Wire, b: Wire) -> Wire {
        self.or_gate(&[a, b])
    }

    /// t ⟺ a ⊕ b.
    pub fn xor2(&mut self, a: Wire, b: Wire) -> Wire {
        match (a, b) {
            (Wire::Const(x), w) | (w, Wire::Const(x)) => {
                if x {
                    w.negated()
                } else {
                    w
                }
            }
            (Wire::Lit(la), Wire::Lit(lb)) => {
                if la == lb {
                    return Wire::Const(false);
                }
                if la == !lb {
                    return Wire::Const(true);
                }
                let t = self.fresh_aux();
                self.formula.add_clause(vec![!t, la, lb]);
                self.formula.add_clause(vec![!t, !la, !lb]);
                self.formula.add_clause(vec![t, la, !lb]);
                self.formula.add_clause(vec![t, !la, lb]);
                Wire::Lit(t)
            }
        }
    }

    /// Chained parity of any number of wires.
    pub fn xor_gate(&mut self, inputs: &[Wire]) -> Wire {
        let mut acc = Wire::Const(false);
        for &w in inputs {
            acc = self.xor2(acc, w);
        }
        acc
    }

    /// g ⟺ majority(a, b, c); used as the carry of a full adder.
    pub fn maj3(&mut self, a: Wire, b: Wire, c: Wire) -> Wire {
        // fold constants down to two-input gates
        match (a, b, c) {
            (Wire::Const(x), y, z) | (y, Wire::Const(x), z) | (y, z, Wire::Const(x)) => {
                return if x { self.or2(y, z) } else { self.and2(y, z) };
            }
            _ => {}
        }
        let (la, lb, lc) = match (a, b, c) {
            (Wire::Lit(la), Wire::Lit(lb), Wire::Lit(lc)) => (la, lb, lc),
            _ => unreachable!(),
        };
        // literal coincidences
        if la == lb || la == lc {
            return Wire::Lit(la);
        }
        if lb == lc {
            return Wire::Lit(lb);
        }
        if la == !lb {
            return Wire::Lit(lc);
        }
        if la == !lc {
            return Wire::Lit(lb);
        }
        if lb == !lc {
            return Wire::Lit(la);
        }
        let g = self.fresh_aux();
        self.formula.add_clause(vec![!g, la, lb]);
        self.formula.add_clause(vec![!g, la, lc]);
        self.formula.add_clause(vec![!g, lb, lc]);
        self.formula.add_clause(vec![g, !la, !lb]);
        self.formula.add_clause(vec![g, !la, !lc]);
        self.formula.add_clause(vec![g, !lb, !lc]);
        Wire::Lit(g)
    }

    pub fn half_add(&mut self, a: Wire, b: Wire) -> (Wire, Wire) {
        (self.xor2(a, b), self.and2(a, b))
    }

    pub fn full_add(&mut self, a: Wire, b: Wire, cin: Wire) -> (Wire, Wire) {
        let sum = self.xor_gate(&[a, b, cin]);
        let carry = self.maj3(a, b, cin);
        (sum, carry)
    }

    /// Ripple-carry addition. The output is one bit wider than the wider
    /// input, which always holds the exact sum.
    pub fn add_bundles(&mut self, a: &WireBundle, b: &WireBundle) -> Result<WireBundle> {
        if a.is_signed() != b.is_signed() {
            return Err(CnfError::SignednessMismatch);
        }
        let signed = a.is_signed();
        let w = a.width().max(b.width()) + 1;
        let aa = a.extend(w);
        let bb = b.extend(w);
        let mut bits = Vec::with_capacity(w as usize);
        let mut carry = Wire::Const(false);
        for i in 0..w as usize {
            let (s, c) = self.full_add(aa.bits()[i], bb.bits()[i], carry);
            bits.push(s);
            carry = c;
        }
        // the final carry is redundant at this width: unsigned sums fit in
        // w bits, signed sums wrap correctly in two's complement
        Ok(WireBundle::new(bits, signed))
    }

    /// Bundle with value `v · g`: bit i is `g` where the binary (or two's
    /// complement) pattern of `v` has a 1, constant 0 elsewhere.
    pub fn scale_by_constant(
        &mut self,
        g: Wire,
        v: i64,
        width: u32,
        signed: bool,
    ) -> Result<WireBundle> {
        debug_assert!(width <= 64);
        let needed = if v == 0 {
            1
        } else if v > 0 {
            64 - v.unsigned_abs().leading_zeros() + u32::from(signed)
        } else {
            // two's complement needs one more bit than |v|-1's magnitude
            65 - (v.unsigned_abs() - 1).leading_zeros()
        };
        if (v < 0 && !signed) || needed > width {
            return Err(CnfError::WidthOverflow {
                value: v,
                width,
                signedness: if signed { "signed" } else { "unsigned" },
            });
        }
        let pattern = (v as u64) & (u64::MAX >> (64 - width));
        let bits = (0..width)
            .map(|i| {
                if (pattern >> i) & 1 == 1 {
                    g
                } else {
                    Wire::Const(false)
                }
            })
            .collect();
        Ok(WireBundle::new(bits, signed))
    }

    /// Output wire true ⟺ bundle value ≥ threshold, for every assignment.
    pub fn compare_geq_const(&mut self, sum: &WireBundle, threshold: i128) -> Wire {
        if threshold <= sum.min_value() {
            return Wire::Const(true);
        }
        if threshold > sum.max_value() {
            return Wire::Const(false);
        }
        let w = sum.width();
        // biased trick: flip the sign bit to compare as unsigned
        let (bits, theta) = if sum.is_signed() {
            let mut bits = sum.bits().to_vec();
            let msb = bits.pop().unwrap();
            bits.push(msb.negated());
            (bits, (threshold + (1i128 << (w - 1))) as u128)
        } else {
            (sum.bits().to_vec(), threshold as u128)
        };
        // LSB-to-MSB prefix comparison: geq' = b ∨ geq where the threshold
        // bit is 0, geq' = b ∧ geq where it is 1
        let mut geq = Wire::Const(true);
        for (i, &b) in bits.iter().enumerate() {
            geq = if (theta >> i) & 1 == 1 {
                self.and2(b, geq)
            } else {
                self.or2(b, geq)
            };
        }
        geq
    }
}
