//! Brute-force decision and promise classification by exhaustive
//! enumeration. This is the oracle the rest of the chain is measured
//! against, so it stays as plain as possible.

use crate::error::{PolyError, Result};
use crate::instance::MtpInstance;
use crate::poly::Assignment;

/// Default cap on exhaustive enumeration.
pub const DEFAULT_ENUM_BUDGET: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    /// Witness list, sorted lexicographically.
    Yes(Vec<Assignment>),
    No,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PromiseClass {
    UniqueYes,
    MultiYes,
    No,
}

fn check_budget(inst: &MtpInstance, budget: Option<u32>) -> Result<u32> {
    let budget = budget.unwrap_or(DEFAULT_ENUM_BUDGET);
    let n = inst.num_vars();
    if n > budget {
        return Err(PolyError::BudgetExceeded { num_vars: n, budget });
    }
    Ok(n)
}

/// Enumerates all assignments and returns every `y` with `P(y) ≥ a`.
pub fn brute_force_decide(inst: &MtpInstance, budget: Option<u32>) -> Result<Decision> {
    let n = check_budget(inst, budget)?;
    let threshold = inst.scaled_threshold();
    let mut witnesses = Vec::new();
    for index in 0..(1u64 << n) {
        let y = Assignment::from_index(index, n);
        if inst.poly().evaluate(&y)? >= threshold {
            witnesses.push(y);
        }
    }
    // from_index counts in lexicographic order already
    if witnesses.is_empty() {
        Ok(Decision::No)
    } else {
        Ok(Decision::Yes(witnesses))
    }
}

/// Counts witnesses without materializing them.
pub fn count_witnesses(inst: &MtpInstance, budget: Option<u32>) -> Result<u64> {
    let n = check_budget(inst, budget)?;
    let threshold = inst.scaled_threshold();
    let mut count = 0;
    for index in 0..(1u64 << n) {
        let y = Assignment::from_index(index, n);
        if inst.poly().evaluate(&y)? >= threshold {
            count += 1;
        }
    }
    Ok(count)
}

pub fn classify_promise(inst: &MtpInstance, budget: Option<u32>) -> Result<PromiseClass> {
    Ok(match count_witnesses(inst, budget)? {
        0 => PromiseClass::No,
        1 => PromiseClass::UniqueYes,
        _ => PromiseClass::MultiYes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Rat;
    use crate::poly::MultilinearPoly;

    fn inst(terms: Vec<(Vec<u32>, i64)>, scale: u32, a: Rat, gap: Rat) -> MtpInstance {
        let n = terms.iter().flat_map(|(vs, _)| vs.iter().copied()).max().unwrap_or(1);
        let p = MultilinearPoly::new(n, n, scale, terms).unwrap();
        MtpInstance::new(p, a, gap).unwrap()
    }

    #[test]
    fn identity_polynomial_yes() {
        let i = inst(vec![(vec![1], 1)], 0, Rat::new(1, 1), Rat::new(1, 1));
        match brute_force_decide(&i, None).unwrap() {
            Decision::Yes(ws) => {
                assert_eq!(ws.len(), 1);
                assert_eq!(ws[0].bits(), &[true]);
            }
            Decision::No => panic!("expected YES"),
        }
    }

    #[test]
    fn unreachable_threshold_is_no() {
        // a=1 but P = y1/2 maxes out at 1/2
        let i = inst(vec![(vec![1], 1)], 1, Rat::new(1, 1), Rat::new(1, 2));
        assert_eq!(brute_force_decide(&i, None).unwrap(), Decision::No);
    }

    #[test]
    fn average_has_unique_top_witness() {
        // P = (y1+y2)/2, a = 1 → only (1,1)
        let i = inst(
            vec![(vec![1], 1), (vec![2], 1)],
            1,
            Rat::new(1, 1),
            Rat::new(1, 2),
        );
        match brute_force_decide(&i, None).unwrap() {
            Decision::Yes(ws) => {
                assert_eq!(ws.len(), 1);
                assert_eq!(ws[0].bits(), &[true, true]);
            }
            Decision::No => panic!("expected YES"),
        }
        assert_eq!(classify_promise(&i, None).unwrap(), PromiseClass::UniqueYes);
    }

    #[test]
    fn promise_classes() {
        // P = y1y2, a=1 → unique
        let i = inst(vec![(vec![1, 2], 1)], 0, Rat::new(1, 1), Rat::new(1, 1));
        assert_eq!(classify_promise(&i, None).unwrap(), PromiseClass::UniqueYes);

        // P = y1 + y2 − y1y2, a=1 → three witnesses
        let i = inst(
            vec![(vec![1], 1), (vec![2], 1), (vec![1, 2], -1)],
            0,
            Rat::new(1, 1),
            Rat::new(1, 1),
        );
        assert_eq!(classify_promise(&i, None).unwrap(), PromiseClass::MultiYes);

        // zero polynomial, a = δ_D → no
        let p = MultilinearPoly::new(2, 2, 2, vec![]).unwrap();
        let i = MtpInstance::new(p, Rat::new(1, 4), Rat::new(1, 4)).unwrap();
        assert_eq!(classify_promise(&i, None).unwrap(), PromiseClass::No);
    }

    #[test]
    fn budget_is_enforced() {
        let p = MultilinearPoly::new(30, 1, 0, vec![(vec![1], 1)]).unwrap();
        let i = MtpInstance::new_unchecked_range(p, Rat::new(1, 1), Rat::new(1, 1)).unwrap();
        assert!(matches!(
            brute_force_decide(&i, None),
            Err(PolyError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn witnesses_agree_with_evaluate() {
        let i = inst(
            vec![(vec![1], 1), (vec![2], 1), (vec![1, 2], -1)],
            0,
            Rat::new(1, 1),
            Rat::new(1, 1),
        );
        if let Decision::Yes(ws) = brute_force_decide(&i, None).unwrap() {
            for w in ws {
                assert!(i.meets_threshold(&w).unwrap());
            }
        }
    }
}
