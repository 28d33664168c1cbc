//! The XOR hash family `h(x) = Ax ⊕ b` over the original variables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One row: `⊕_{i∈vars} x_i = parity`, over 1-based original indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HashRow {
    pub vars: Vec<u32>,
    pub parity: bool,
}

impl HashRow {
    pub fn satisfied_by(&self, orig_bits: &[bool]) -> bool {
        let mut acc = false;
        for &v in &self.vars {
            acc ^= orig_bits[(v - 1) as usize];
        }
        acc == self.parity
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HashConstraint {
    pub rows: Vec<HashRow>,
}

impl HashConstraint {
    /// Samples `num_rows` rows for `num_original` variables. Deterministic
    /// in the seed; each membership and parity bit is an independent fair
    /// coin.
    pub fn sample(num_original: u32, num_rows: u32, seed: u64) -> HashConstraint {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = (0..num_rows)
            .map(|_| {
                let vars = (1..=num_original)
                    .filter(|_| rng.random::<bool>())
                    .collect();
                let parity = rng.random::<bool>();
                HashRow { vars, parity }
            })
            .collect();
        HashConstraint { rows }
    }

    /// Whether the first `k` rows all hold at the given original assignment.
    pub fn prefix_satisfied(&self, k: usize, orig_bits: &[bool]) -> bool {
        self.rows[..k].iter().all(|r| r.satisfied_by(orig_bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let a = HashConstraint::sample(8, 9, 42);
        let b = HashConstraint::sample(8, 9, 42);
        assert_eq!(a, b);
        let c = HashConstraint::sample(8, 9, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn row_parity_evaluation() {
        let row = HashRow {
            vars: vec![1, 3],
            parity: true,
        };
        assert!(row.satisfied_by(&[true, true, false]));
        assert!(!row.satisfied_by(&[true, false, true]));
        // empty row holds iff parity is 0
        let empty = HashRow {
            vars: vec![],
            parity: false,
        };
        assert!(empty.satisfied_by(&[false, false, false]));
    }

    /// Pairwise independence of h(x) = Ax ⊕ b: for x ≠ x' and any target
    /// pair (u, v), Pr[h(x)=u ∧ h(x')=v] = 2^{-2k}. Verified by exhaustive
    /// enumeration of the family at small size.
    #[test]
    fn pairwise_independence_exhaustive() {
        for (n, k) in [(3u32, 1usize), (3, 2), (4, 2), (4, 3)] {
            let family_bits = k * (n as usize + 1);
            let family_size = 1u64 << family_bits;
            let points = 1u32 << n;
            for x in 0..points {
                for xp in 0..points {
                    if x == xp {
                        continue;
                    }
                    let xb: Vec<bool> = (0..n).map(|i| (x >> i) & 1 == 1).collect();
                    let xpb: Vec<bool> = (0..n).map(|i| (xp >> i) & 1 == 1).collect();
                    let mut counts = vec![0u64; 1 << (2 * k)];
                    for code in 0..family_size {
                        // decode: per row, n membership bits then one parity bit
                        let mut hu = 0usize;
                        let mut hv = 0usize;
                        for r in 0..k {
                            let base = r * (n as usize + 1);
                            let mut pu = false;
                            let mut pv = false;
                            for i in 0..n as usize {
                                if (code >> (base + i)) & 1 == 1 {
                                    pu ^= xb[i];
                                    pv ^= xpb[i];
                                }
                            }
                            let b = (code >> (base + n as usize)) & 1 == 1;
                            pu ^= b;
                            pv ^= b;
                            hu |= usize::from(pu) << r;
                            hv |= usize::from(pv) << r;
                        }
                        counts[hu | (hv << k)] += 1;
                    }
                    let expected = family_size >> (2 * k);
                    assert!(
                        counts.iter().all(|&c| c == expected),
                        "n={n} k={k} x={x} x'={xp}"
                    );
                }
            }
        }
    }
}
