//! Deterministic instance generators: random k-CNF at a clause density,
//! random sparse threshold polynomials, and planted-unique-witness
//! instances of both kinds.

use cnf_compiler::{CnfFormula, Lit};
use poly_core::{
    classify_promise, MtpInstance, MultilinearPoly, PolyError, PromiseClass, Rat,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub type Result<T> = std::result::Result<T, GenError>;

#[derive(Clone, Debug)]
pub enum Profile {
    /// Random k-CNF: `num_clauses` clauses of exactly `width` distinct
    /// literals with fair polarities.
    RandomCnf {
        num_vars: u32,
        width: u32,
        num_clauses: u32,
    },
    /// Random CNF with a planted satisfying assignment and, by rejection,
    /// a unique one. All clauses contain at least one literal of the
    /// planted witness.
    PlantedCnf {
        num_vars: u32,
        width: u32,
        extra_clauses: u32,
    },
    /// Random sparse multilinear polynomial with mixed-sign coefficients,
    /// rejected until every achievable value lies in [0,1].
    RandomPoly {
        num_vars: u32,
        degree: u32,
        num_terms: u32,
        scale_bits: u32,
    },
    /// All-positive sparse polynomial covering every variable; the unique
    /// threshold witness is the all-ones assignment by construction.
    PlantedPoly {
        num_vars: u32,
        degree: u32,
        num_terms: u32,
    },
    /// Same construction with the threshold raised one grid step above the
    /// maximum: a NO instance.
    PlantedNoPoly {
        num_vars: u32,
        degree: u32,
        num_terms: u32,
    },
}

pub fn gen_cnf(profile: &Profile, seed: u64) -> Result<CnfFormula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *profile {
        Profile::RandomCnf {
            num_vars,
            width,
            num_clauses,
        } => {
            if width == 0 || width > num_vars {
                return Err(GenError::InvalidProfile(format!(
                    "clause width {width} out of range for {num_vars} variables"
                )));
            }
            Ok(random_cnf(&mut rng, num_vars, width, num_clauses))
        }
        Profile::PlantedCnf {
            num_vars,
            width,
            extra_clauses,
        } => {
            if width == 0 || width > num_vars || num_vars > 16 {
                return Err(GenError::InvalidProfile(format!(
                    "planted CNF needs 1 ≤ width ≤ vars ≤ 16, got {width}/{num_vars}"
                )));
            }
            Ok(planted_unique_cnf(&mut rng, num_vars, width, extra_clauses))
        }
        _ => Err(GenError::InvalidProfile(
            "profile generates an instance, not a formula".into(),
        )),
    }
}

pub fn gen_instance(profile: &Profile, seed: u64) -> Result<MtpInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *profile {
        Profile::RandomPoly {
            num_vars,
            degree,
            num_terms,
            scale_bits,
        } => random_poly_instance(&mut rng, num_vars, degree, num_terms, scale_bits),
        Profile::PlantedPoly {
            num_vars,
            degree,
            num_terms,
        } => planted_poly_instance(&mut rng, num_vars, degree, num_terms, false),
        Profile::PlantedNoPoly {
            num_vars,
            degree,
            num_terms,
        } => planted_poly_instance(&mut rng, num_vars, degree, num_terms, true),
        _ => Err(GenError::InvalidProfile(
            "profile generates a formula, not an instance".into(),
        )),
    }
}

fn random_clause(rng: &mut ChaCha8Rng, num_vars: u32, width: u32) -> Vec<Lit> {
    let mut vars: Vec<u32> = (1..=num_vars).collect();
    // partial Fisher-Yates for a deterministic width-subset
    for i in 0..width as usize {
        let j = rng.random_range(i..vars.len());
        vars.swap(i, j);
    }
    vars[..width as usize]
        .iter()
        .map(|&v| {
            if rng.random::<bool>() {
                Lit::positive(v)
            } else {
                Lit::negative(v)
            }
        })
        .collect()
}

fn random_cnf(rng: &mut ChaCha8Rng, num_vars: u32, width: u32, num_clauses: u32) -> CnfFormula {
    let mut f = CnfFormula::with_originals(num_vars);
    for _ in 0..num_clauses {
        f.add_clause(random_clause(rng, num_vars, width));
    }
    f
}

/// Plants a random witness, emits width-1..width clauses satisfied by it,
/// and keeps adding clauses until the witness is unique.
fn planted_unique_cnf(
    rng: &mut ChaCha8Rng,
    num_vars: u32,
    width: u32,
    extra_clauses: u32,
) -> CnfFormula {
    let witness: Vec<bool> = (0..num_vars).map(|_| rng.random()).collect();
    loop {
        let mut f = CnfFormula::with_originals(num_vars);
        // unit scaffolding pins the witness coordinates that random
        // clauses leave undetermined
        for (i, &b) in witness.iter().enumerate() {
            let v = i as u32 + 1;
            f.add_clause(vec![if b { Lit::positive(v) } else { Lit::negative(v) }]);
        }
        for _ in 0..extra_clauses {
            // any clause containing a witness-true literal stays satisfied
            loop {
                let w = rng.random_range(1..=width);
                let clause = random_clause(rng, num_vars, w);
                if clause.iter().any(|l| l.value_in(&witness)) {
                    f.add_clause(clause);
                    break;
                }
            }
        }
        // units force uniqueness already; the loop shape leaves room for
        // profiles that drop the full unit scaffold
        let count = f.project_witnesses(20).map(|w| w.len()).unwrap_or(0);
        if count == 1 {
            return f;
        }
    }
}

fn random_poly_instance(
    rng: &mut ChaCha8Rng,
    num_vars: u32,
    degree: u32,
    num_terms: u32,
    scale_bits: u32,
) -> Result<MtpInstance> {
    let den = 1i64 << scale_bits;
    for _ in 0..400 {
        let mut terms = std::collections::BTreeMap::new();
        for _ in 0..num_terms {
            let width = rng.random_range(1..=degree.min(num_vars));
            let clause = random_clause(rng, num_vars, width);
            let vars: Vec<u32> = {
                let mut v: Vec<u32> = clause.iter().map(|l| l.var()).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            let coeff = loop {
                let c = rng.random_range(-3i64..=3);
                if c != 0 {
                    break c;
                }
            };
            terms.entry(vars).or_insert(coeff);
        }
        let poly = MultilinearPoly::new(num_vars, degree.min(num_vars), scale_bits, terms)?;
        // threshold on the dyadic grid, within the feasible band
        let step = rng.random_range(1..=den);
        let threshold = Rat::new(step, den);
        let gap = Rat::new(1, den);
        match MtpInstance::new(poly, threshold, gap) {
            Ok(inst) => return Ok(inst),
            Err(_) => continue, // out-of-range draw; try again
        }
    }
    Err(GenError::InvalidProfile(
        "could not draw an in-range polynomial; lower the coefficient budget".into(),
    ))
}

/// All-positive polynomial with every variable covered: the maximum sits
/// uniquely at the all-ones assignment. YES plants the threshold at that
/// maximum, NO one grid step above it.
fn planted_poly_instance(
    rng: &mut ChaCha8Rng,
    num_vars: u32,
    degree: u32,
    num_terms: u32,
    no_instance: bool,
) -> Result<MtpInstance> {
    let mut terms: std::collections::BTreeMap<Vec<u32>, i64> = std::collections::BTreeMap::new();
    // cover every variable with a singleton so the all-ones witness is
    // strictly better than any neighbor
    for v in 1..=num_vars {
        terms.insert(vec![v], rng.random_range(1..=2));
    }
    for _ in num_vars..num_terms.max(num_vars) {
        let width = rng.random_range(1..=degree.min(num_vars));
        let clause = random_clause(rng, num_vars, width);
        let mut vars: Vec<u32> = clause.iter().map(|l| l.var()).collect();
        vars.sort_unstable();
        vars.dedup();
        *terms.entry(vars).or_insert(0) += 1;
    }
    let total: i64 = terms.values().sum();
    // scale to keep values in [0,1]: denominator = total (+1 for NO room)
    let den = total + i64::from(no_instance);
    let scale_bits = 0;
    let poly = MultilinearPoly::with_denominator(
        num_vars,
        degree.min(num_vars),
        scale_bits,
        den as u64,
        terms,
    )?;
    let threshold = if no_instance {
        Rat::new(total + 1, den) // one grid step above the maximum
    } else {
        Rat::new(total, den)
    };
    let inst = MtpInstance::new_unchecked_range(poly, threshold, Rat::new(1, den))?;
    debug_assert!({
        let class = classify_promise(&inst, Some(20)).unwrap();
        if no_instance {
            class == PromiseClass::No
        } else {
            class == PromiseClass::UniqueYes
        }
    });
    Ok(inst)
}
