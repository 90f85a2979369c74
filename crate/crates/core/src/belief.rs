//! Exact Bayesian belief state over the twelve worlds.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::oracle::{answer_distribution, NatureViolation, RandomVariant};
use crate::question::{Answer, Question};
use crate::rational::{format_ratio, parse_ratio, Rational};
use crate::world::{GodName, Prior, ScenarioId, World, WORLD_COUNT};

/// A probability distribution over worlds: nonnegative exact weights that sum
/// to exactly 1, with non-empty support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefState {
    weights: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BeliefError {
    #[error("belief must assign a weight to each of the {WORLD_COUNT} worlds, got {0}")]
    WrongLength(usize),
    #[error("belief weight for world {world} is negative")]
    Negative { world: String },
    #[error("belief weights must sum to exactly 1, got {sum}")]
    SumNotOne { sum: String },
    #[error("malformed belief serialization: {0}")]
    BadSerialization(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UpdateError {
    #[error(transparent)]
    Nature(#[from] NatureViolation),
    #[error("the observed answer has probability zero under the current belief")]
    ImpossibleObservation,
}

impl BeliefState {
    /// Weights in canonical world order; must be nonnegative, sum to 1, and
    /// have non-empty support.
    pub fn new(weights: Vec<Rational>) -> Result<BeliefState, BeliefError> {
        if weights.len() != WORLD_COUNT {
            return Err(BeliefError::WrongLength(weights.len()));
        }
        for (i, w) in weights.iter().enumerate() {
            if *w < Rational::zero() {
                return Err(BeliefError::Negative {
                    world: World::from_index(i).unwrap().label(),
                });
            }
        }
        let sum: Rational = weights.iter().sum();
        if !sum.is_one() {
            return Err(BeliefError::SumNotOne {
                sum: format_ratio(&sum),
            });
        }
        Ok(BeliefState { weights })
    }

    pub fn weight(&self, world: World) -> &Rational {
        &self.weights[world.index()]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Worlds with positive weight, in canonical order.
    pub fn support(&self) -> Vec<World> {
        (0..WORLD_COUNT)
            .filter(|i| !self.weights[*i].is_zero())
            .map(|i| World::from_index(i).unwrap())
            .collect()
    }

    /// Total weight of the two worlds sharing a scenario.
    pub fn scenario_mass(&self, scenario: ScenarioId) -> Rational {
        &self.weights[scenario.index() * 2] + &self.weights[scenario.index() * 2 + 1]
    }

    /// The scenario with the largest posterior mass; ties break to the lowest
    /// scenario index.
    pub fn best_guess(&self) -> ScenarioId {
        let mut best = ScenarioId::S1;
        let mut best_mass = self.scenario_mass(ScenarioId::S1);
        for s in &ScenarioId::ALL[1..] {
            let mass = self.scenario_mass(*s);
            if mass > best_mass {
                best = *s;
                best_mass = mass;
            }
        }
        best
    }

    /// Serializes as a map from world label to `num/den`.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for i in 0..WORLD_COUNT {
            map.insert(
                World::from_index(i).unwrap().label(),
                Value::String(format_ratio(&self.weights[i])),
            );
        }
        Value::Object(map)
    }

    pub fn from_json(value: &Value) -> Result<BeliefState, BeliefError> {
        let weights = world_map_from_json(value).map_err(BeliefError::BadSerialization)?;
        BeliefState::new(weights)
    }
}

impl fmt::Display for BeliefState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for world in self.support() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{}: {}", world, format_ratio(self.weight(world)))?;
            first = false;
        }
        Ok(())
    }
}

/// Parses a `{world label: "num/den"}` map into canonical-order weights.
/// Missing worlds default to zero weight.
pub fn world_map_from_json(value: &Value) -> Result<Vec<Rational>, String> {
    let obj = value.as_object().ok_or("expected a JSON object")?;
    let mut weights = vec![Rational::zero(); WORLD_COUNT];
    for (label, entry) in obj {
        let world = World::from_label(label).map_err(|e| e.to_string())?;
        let text = entry
            .as_str()
            .ok_or("weights must be \"num/den\" strings")?;
        weights[world.index()] = parse_ratio(text).map_err(|e| e.to_string())?;
    }
    Ok(weights)
}

/// The belief an interrogator starts with: the prior itself.
pub fn initial_belief(prior: &Prior) -> BeliefState {
    BeliefState {
        weights: prior.weights().to_vec(),
    }
}

/// Exact probability of hearing `a` in world `w`: 0, 1/2, or 1. The coin is
/// marginalized analytically for a Random addressee, and two-word answer sets
/// contribute 1/2 per word.
pub fn likelihood(
    a: Answer,
    q: &Question,
    world: &World,
    addressee: GodName,
    variant: RandomVariant,
) -> Result<Rational, NatureViolation> {
    let p_da = answer_distribution(q, world, addressee, variant)?;
    Ok(match a {
        Answer::Da => p_da,
        Answer::Ja => Rational::one() - p_da,
    })
}

/// Standard Bayes update on an observed answer, renormalized exactly.
pub fn update(
    belief: &BeliefState,
    q: &Question,
    addressee: GodName,
    a: Answer,
    variant: RandomVariant,
) -> Result<BeliefState, UpdateError> {
    let mut posterior = vec![Rational::zero(); WORLD_COUNT];
    let mut total = Rational::zero();
    for world in belief.support() {
        let l = likelihood(a, q, &world, addressee, variant)?;
        if l.is_zero() {
            continue;
        }
        let w = belief.weight(world) * l;
        total += &w;
        posterior[world.index()] = w;
    }
    if total.is_zero() {
        return Err(UpdateError::ImpossibleObservation);
    }
    for w in &mut posterior {
        *w /= total.clone();
    }
    Ok(BeliefState { weights: posterior })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::question::parse;
    use crate::rational::ratio;
    use crate::world::{all_worlds, role_of, uniform_prior, LanguageMap, Role};

    #[test]
    fn initial_belief_copies_the_prior() {
        let b = initial_belief(&uniform_prior());
        for w in all_worlds() {
            assert_eq!(*b.weight(w), ratio(1, 12));
        }
        let w0 = World::new(ScenarioId::S1, LanguageMap::da_yes());
        let b = initial_belief(&Prior::concentrated(w0));
        assert_eq!(*b.weight(w0), ratio(1, 1));
        assert_eq!(b.support(), vec![w0]);
    }

    #[test]
    fn likelihoods_are_zero_half_or_one() {
        let q = parse("da means yes iff B is Random").unwrap();
        // A is True in S2 and B is Random there: "da" is forced.
        for lang in LanguageMap::ALL {
            let w = World::new(ScenarioId::S2, lang);
            assert_eq!(
                likelihood(Answer::Da, &q, &w, GodName::A, RandomVariant::BoolosCoin).unwrap(),
                ratio(1, 1)
            );
        }
        // A is Random in S5: fifty-fifty.
        let w = World::new(ScenarioId::S5, LanguageMap::da_no());
        assert_eq!(
            likelihood(Answer::Da, &q, &w, GodName::A, RandomVariant::BoolosCoin).unwrap(),
            ratio(1, 2)
        );
        // True cannot deny a tautology.
        let w = World::new(ScenarioId::S1, LanguageMap::da_yes());
        assert_eq!(
            likelihood(
                Answer::Ja,
                &parse("true").unwrap(),
                &w,
                GodName::A,
                RandomVariant::BoolosCoin
            )
            .unwrap(),
            ratio(0, 1)
        );
    }

    /// Independent oracle: enumerate the twelve worlds and apply the
    /// {0, 1/2, 1} likelihoods by hand from the answer rule.
    fn enumerated_posterior(q: &Question, addressee: GodName, a: Answer) -> Vec<Rational> {
        let prior = uniform_prior();
        let mut weights = vec![ratio(0, 1); WORLD_COUNT];
        let mut total = ratio(0, 1);
        for w in all_worlds() {
            let l = likelihood(a, q, &w, addressee, RandomVariant::BoolosCoin).unwrap();
            let mass = prior.weight(w) * l;
            total += &mass;
            weights[w.index()] = mass;
        }
        weights.into_iter().map(|w| w / total.clone()).collect()
    }

    #[test]
    fn update_matches_exhaustive_enumeration_and_frozen_masses() {
        let q = parse("da means yes iff B is Random").unwrap();
        let b = initial_belief(&uniform_prior());
        let posterior = update(&b, &q, GodName::A, Answer::Da, RandomVariant::BoolosCoin).unwrap();
        assert_eq!(
            posterior.weights().to_vec(),
            enumerated_posterior(&q, GodName::A, Answer::Da)
        );
        // Frozen from the enumeration: hearing "da" from A keeps the scenarios
        // where A truthfully affirms (S2), where A lies about a false fact
        // (S3), and the Random placements (S5, S6) at half strength.
        assert_eq!(posterior.scenario_mass(ScenarioId::S1), ratio(0, 1));
        assert_eq!(posterior.scenario_mass(ScenarioId::S2), ratio(1, 3));
        assert_eq!(posterior.scenario_mass(ScenarioId::S3), ratio(1, 3));
        assert_eq!(posterior.scenario_mass(ScenarioId::S4), ratio(0, 1));
        assert_eq!(posterior.scenario_mass(ScenarioId::S5), ratio(1, 6));
        assert_eq!(posterior.scenario_mass(ScenarioId::S6), ratio(1, 6));
        let sum: Rational = posterior.weights().iter().sum();
        assert_eq!(sum, ratio(1, 1));
    }

    #[test]
    fn consistent_answers_leave_a_concentrated_belief_unchanged() {
        let w0 = World::new(ScenarioId::S2, LanguageMap::da_no());
        let b = initial_belief(&Prior::concentrated(w0));
        let q = parse("da means yes iff B is Random").unwrap();
        let after = update(&b, &q, GodName::A, Answer::Da, RandomVariant::BoolosCoin).unwrap();
        assert_eq!(after, b);
    }

    #[test]
    fn impossible_observations_are_rejected() {
        let w0 = World::new(ScenarioId::S1, LanguageMap::da_yes());
        let b = initial_belief(&Prior::concentrated(w0));
        // A is True in S1 and da means yes: denying a tautology with "ja" is
        // impossible.
        let err = update(
            &b,
            &parse("true").unwrap(),
            GodName::A,
            Answer::Ja,
            RandomVariant::BoolosCoin,
        )
        .unwrap_err();
        assert_eq!(err, UpdateError::ImpossibleObservation);
    }

    #[test]
    fn update_never_grows_the_support() {
        let q = parse("da means yes iff A is True").unwrap();
        let b = initial_belief(&uniform_prior());
        let after = update(&b, &q, GodName::B, Answer::Ja, RandomVariant::BoolosCoin).unwrap();
        let before: Vec<World> = b.support();
        for w in after.support() {
            assert!(before.contains(&w));
        }
        assert!(after.support().len() < before.len());
    }

    #[test]
    fn law_of_total_probability_holds_exactly() {
        let b = initial_belief(&uniform_prior());
        for text in ["A is Random", "da means yes iff B is Random", "true"] {
            let q = parse(text).unwrap();
            for g in GodName::ALL {
                let total: Rational = Answer::ALL
                    .iter()
                    .map(|a| {
                        b.support()
                            .iter()
                            .map(|w| {
                                b.weight(*w)
                                    * likelihood(*a, &q, w, g, RandomVariant::BoolosCoin).unwrap()
                            })
                            .sum::<Rational>()
                    })
                    .sum();
                assert_eq!(total, ratio(1, 1), "{text} to {g}");
            }
        }
    }

    #[test]
    fn non_random_certain_addressees_split_supports_disjointly() {
        // Support without Random-A worlds.
        let mut weights = vec![ratio(0, 1); WORLD_COUNT];
        for w in all_worlds() {
            if role_of(w.scenario, GodName::A) != Role::Random {
                weights[w.index()] = ratio(1, 8);
            }
        }
        let b = BeliefState::new(weights).unwrap();
        let q = parse("da means yes iff B is Random").unwrap();
        let da = update(&b, &q, GodName::A, Answer::Da, RandomVariant::BoolosCoin).unwrap();
        let ja = update(&b, &q, GodName::A, Answer::Ja, RandomVariant::BoolosCoin).unwrap();
        for w in da.support() {
            assert!(!ja.support().contains(&w), "supports must be disjoint");
        }
    }

    #[test]
    fn serializes_as_world_label_to_num_den() {
        let b = initial_belief(&uniform_prior());
        let json = b.to_json();
        assert_eq!(json["S1/da=yes"], "1/12");
        assert_eq!(json["S4/da=no"], "1/12");
        assert_eq!(BeliefState::from_json(&json).unwrap(), b);
    }
}
