//! The S-adic embedding pipeline: substitutions from an action, their
//! language, minimality and aperiodicity evidence, and the centralizer
//! embedding, collected as one list of checks.

use crate::action::GroupAction;
use crate::automorphism::LetterMap;
use crate::embedding::embed_centralizer;
use crate::group::Elem;
use crate::language::{
    aperiodicity_check, generate_language, recurrence_profile, Budget, Independence, Periodicity,
    Recurrence, SubshiftError,
};
use crate::scenario::report::{Check, Status};
use crate::substitution::{primitivity_check, SubstitutionSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Horizons {
    /// Length horizon `L` of the language.
    pub max_len: usize,
    /// Composition depth `K`.
    pub depth: usize,
    /// Recurrence horizon `H`.
    pub recurrence: usize,
    /// Largest period tested for aperiodicity.
    pub p_max: usize,
    /// Language length used for the aperiodicity test.
    pub aperiodicity_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SadicReport {
    pub checks: Vec<Check>,
    pub embedded: usize,
}

impl SadicReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn run_sadic_embedding(
    action: &GroupAction,
    schedule: &[Vec<Elem>],
    auts: &[LetterMap],
    horizons: Horizons,
    budget: &Budget,
) -> SadicReport {
    let mut checks = Vec::new();
    let seq = match SubstitutionSequence::from_action_schedule(action, schedule) {
        Ok(seq) => seq,
        Err(e) => {
            checks.push(Check::fail("substitution", e.to_string()));
            return SadicReport {
                checks,
                embedded: 0,
            };
        }
    };
    checks.push(
        Check::pass("substitution")
            .count("alphabet", seq.alphabet_size())
            .count("schedule", seq.schedule_len()),
    );

    let mut worst_power = 0;
    let mut not_primitive = None;
    for i in 0..seq.schedule_len() {
        match primitivity_check(seq.get(i), None).power {
            Some(k) => worst_power = worst_power.max(k),
            None => {
                not_primitive.get_or_insert(i);
            }
        }
    }
    checks.push(match not_primitive {
        None => Check::pass("primitivity").count("power", worst_power),
        Some(i) => Check::fail(
            "primitivity",
            format!("substitution {i} has no positive incidence power; minimality evidence absent"),
        ),
    });

    let long_len = horizons
        .max_len
        .max(horizons.recurrence)
        .max(horizons.aperiodicity_len);
    let long = match generate_language(&seq, 0, long_len, horizons.depth, budget) {
        Ok(l) => l,
        Err(e @ SubshiftError::BudgetExceeded { .. }) => {
            checks.push(Check::inconclusive("language", e.to_string()));
            return SadicReport {
                checks,
                embedded: 0,
            };
        }
        Err(e) => {
            checks.push(Check::fail("language", e.to_string()));
            return SadicReport {
                checks,
                embedded: 0,
            };
        }
    };
    let lang = long.truncated(horizons.max_len);
    checks.push(match lang.factor_closure_violation() {
        None => Check::pass("language").count("words", lang.counts().iter().sum::<usize>()),
        Some((len, w)) => Check::fail(
            "language",
            format!("stratum {len} is not factor closed at `{w}`"),
        ),
    });

    let mut differs = None;
    for b in 1..seq.alphabet_size() {
        match crate::language::language_independence_check(
            &seq,
            0,
            b,
            horizons.max_len,
            horizons.depth,
            budget,
        ) {
            Ok(Independence::Equal { .. }) => {}
            Ok(Independence::Differs {
                length,
                word,
                only_in,
            }) => {
                differs = Some(format!(
                    "seeds 0 and {b} differ at length {length}: `{word}` only from {only_in}"
                ));
                break;
            }
            Err(e) => {
                differs = Some(e.to_string());
                break;
            }
        }
    }
    checks.push(Check::from_failure("independence", differs).count("seeds", seq.alphabet_size()));

    let rec_lang = long.truncated(horizons.recurrence);
    let mut worst_r = 0;
    let mut rec_failure = None;
    for a in 0..seq.alphabet_size() {
        match recurrence_profile(&rec_lang, &[a], horizons.recurrence) {
            Ok(Recurrence::Bounded(r)) => worst_r = worst_r.max(r),
            Ok(Recurrence::NotWithin { horizon, witness }) => {
                rec_failure = Some(format!(
                    "letter {a} not recurrent within {horizon}{}",
                    witness.map_or(String::new(), |w| format!(", avoided by `{w}`"))
                ));
                break;
            }
            Err(e) => {
                rec_failure = Some(format!("letter {a}: {e}"));
                break;
            }
        }
    }
    checks.push(Check::from_failure("recurrence", rec_failure).count("max_return", worst_r));

    let ap_lang = long.truncated(horizons.aperiodicity_len);
    checks.push(match aperiodicity_check(&ap_lang, horizons.p_max) {
        Ok(Periodicity::Aperiodic) => Check::pass("aperiodicity").count("p_max", horizons.p_max),
        Ok(Periodicity::PossiblyPeriodic { period, word }) => Check::fail(
            "aperiodicity",
            format!("compatible with period {period} word `{word}`"),
        ),
        Err(e) => Check::inconclusive("aperiodicity", e.to_string()),
    });

    let mut embedded = 0;
    checks.push(match embed_centralizer(action, &schedule[0], auts, &lang) {
        Ok(r) => {
            let failure = if let Some((label, letter)) = r.equivariance_failures.first() {
                Some(format!("`{label}` not equivariant at letter {letter}"))
            } else if let Some((x, y)) = &r.duplicate {
                Some(format!("`{x}` and `{y}` lift to the same map"))
            } else if let Some((x, y)) = &r.composition_failure {
                Some(format!("lift of `{x}`∘`{y}` is not the composite lift"))
            } else {
                r.language_failure
                    .as_ref()
                    .map(|(label, len)| format!("`{label}` does not preserve stratum {len}"))
            };
            if failure.is_none() {
                embedded = r.lift_count;
            }
            let mut c = Check::from_failure("embedding", failure).count("lifts", r.lift_count);
            if c.status == Status::Pass && r.composition_table.is_none() {
                c = Check::inconclusive(
                    "embedding",
                    "automorphism list is not closed under composition",
                );
            }
            c
        }
        Err(e) => Check::fail("embedding", e.to_string()),
    });

    SadicReport { checks, embedded }
}
