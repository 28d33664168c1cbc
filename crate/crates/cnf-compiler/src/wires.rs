//! Signals and bit bundles flowing through the encoded circuit.
//!
//! A `Wire` is either a compile-time constant or a literal (possibly
//! negated, negation being free). A `WireBundle` is an LSB-first vector of
//! wires read as a binary integer, two's complement when signed.

use crate::formula::Lit;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Wire {
    Const(bool),
    Lit(Lit),
}

impl Wire {
    pub fn negated(self) -> Wire {
        match self {
            Wire::Const(b) => Wire::Const(!b),
            Wire::Lit(l) => Wire::Lit(!l),
        }
    }

    pub fn value_in(self, bits: &[bool]) -> bool {
        match self {
            Wire::Const(b) => b,
            Wire::Lit(l) => l.value_in(bits),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WireBundle {
    bits: Vec<Wire>,
    signed: bool,
}

impl WireBundle {
    pub fn new(bits: Vec<Wire>, signed: bool) -> Self {
        debug_assert!(!bits.is_empty());
        WireBundle { bits, signed }
    }

    /// All-zero bundle of the given width.
    pub fn zero(width: u32, signed: bool) -> Self {
        WireBundle {
            bits: vec![Wire::Const(false); width as usize],
            signed,
        }
    }

    pub fn bits(&self) -> &[Wire] {
        &self.bits
    }

    pub fn width(&self) -> u32 {
        self.bits.len() as u32
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    /// Zero- or sign-extends to `width` (must not shrink).
    pub fn extend(&self, width: u32) -> WireBundle {
        debug_assert!(width >= self.width());
        let mut bits = self.bits.clone();
        let fill = if self.signed {
            *bits.last().unwrap()
        } else {
            Wire::Const(false)
        };
        while (bits.len() as u32) < width {
            bits.push(fill);
        }
        WireBundle {
            bits,
            signed: self.signed,
        }
    }

    /// Integer value under a full variable assignment.
    pub fn value_in(&self, bits: &[bool]) -> i128 {
        let mut acc: i128 = 0;
        let w = self.bits.len();
        for (i, wire) in self.bits.iter().enumerate() {
            if wire.value_in(bits) {
                if self.signed && i == w - 1 {
                    acc -= 1i128 << i;
                } else {
                    acc += 1i128 << i;
                }
            }
        }
        acc
    }

    pub fn min_value(&self) -> i128 {
        if self.signed {
            -(1i128 << (self.width() - 1))
        } else {
            0
        }
    }

    pub fn max_value(&self) -> i128 {
        if self.signed {
            (1i128 << (self.width() - 1)) - 1
        } else {
            (1i128 << self.width()) - 1
        }
    }
}
