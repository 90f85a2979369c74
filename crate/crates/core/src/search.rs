//! Exhaustive strategy synthesis and impossibility verification.
//!
//! The search covers the full extensional question space: every question's
//! behavior toward an addressee is determined by its truth vector over the
//! twelve worlds, so enumerating all truth vectors restricted to the belief
//! support (deduplicated per addressee, since vectors only matter on worlds
//! where the addressee is not Random) covers every question class. Belief
//! states are memoized in a canonical integer form.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::oracle::RandomVariant;
use crate::question::question_for_world_mask;
use crate::rational::{format_ratio, Rational};
use crate::strategy::{builtin_three_question, is_certain_solver, StrategyTree};
use crate::world::{role_of, GodName, Prior, Role, ScenarioId, World, WORLD_COUNT};

/// The information-theoretic impossibility test: `true` when `answers`
/// possible answers over `questions` questions cannot distinguish
/// `possibilities` different possibilities with certainty.
pub fn counting_bound(possibilities: u64, answers: u64, questions: u32) -> bool {
    match answers.checked_pow(questions) {
        Some(outcomes) => outcomes < possibilities,
        // Overflowed sequences certainly cover every possibility count.
        None => false,
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Cap on the number of memoized belief states.
    pub max_states: usize,
    /// Run the full depth-3 enumeration instead of resolving depth 3 through
    /// the built-in certainty witness.
    pub full_depth3: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_states: 5_000_000,
            full_depth3: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search depth {0} is outside the supported range 0..=3")]
    InvalidDepth(usize),
    #[error("search exceeded the cap of {cap} memoized belief states (explored {explored} question classes so far)")]
    ResourceLimit { cap: usize, explored: u64 },
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub depth: usize,
    pub certain_solver_exists: bool,
    /// Present exactly when a certain solver exists.
    pub witness: Option<StrategyTree>,
    pub optimal_success: Rational,
    pub optimal_witness: StrategyTree,
    pub explored_classes: u64,
}

/// Canonical integer belief: unnormalized nonnegative weights over the twelve
/// worlds, reduced by their gcd. Exact and cheap to hash.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct IntBelief {
    weights: Vec<BigInt>,
}

impl IntBelief {
    fn from_prior(prior: &Prior) -> IntBelief {
        let mut denom_lcm = BigInt::one();
        for w in prior.weights() {
            denom_lcm = denom_lcm.lcm(w.denom());
        }
        let weights = prior
            .weights()
            .iter()
            .map(|w| w.numer() * (&denom_lcm / w.denom()))
            .collect();
        let mut b = IntBelief { weights };
        b.reduce();
        b
    }

    fn reduce(&mut self) {
        let mut g = BigInt::zero();
        for w in &self.weights {
            g = g.gcd(w);
        }
        if g > BigInt::one() {
            for w in &mut self.weights {
                *w /= &g;
            }
        }
    }

    fn total(&self) -> BigInt {
        self.weights.iter().sum()
    }

    fn support(&self) -> Vec<usize> {
        (0..WORLD_COUNT)
            .filter(|i| !self.weights[*i].is_zero())
            .collect()
    }

    /// Best guess and its exact success probability: the scenario with the
    /// largest mass, lowest index on ties.
    fn best_guess(&self) -> (ScenarioId, Rational) {
        let mut best = ScenarioId::S1;
        let mut best_mass = &self.weights[0] + &self.weights[1];
        for s in &ScenarioId::ALL[1..] {
            let i = s.index() * 2;
            let mass = &self.weights[i] + &self.weights[i + 1];
            if mass > best_mass {
                best = *s;
                best_mass = mass;
            }
        }
        (best, Rational::new(best_mass, self.total()))
    }
}

#[derive(Debug, Clone, Copy)]
enum Move {
    Guess(ScenarioId),
    Ask {
        addressee: GodName,
        /// Canonical truth vector of the question over the twelve worlds.
        truth_mask: u16,
    },
}

#[derive(Debug, Clone)]
struct Eval {
    value: Rational,
    best: Move,
}

struct Searcher {
    memo: HashMap<(IntBelief, u8), Eval>,
    cap: usize,
    explored: u64,
    /// role_table[god][world index]
    role_table: [[Role; WORLD_COUNT]; 3],
    lang_yes: [bool; WORLD_COUNT],
}

impl Searcher {
    fn new(cap: usize) -> Searcher {
        let mut role_table = [[Role::True; WORLD_COUNT]; 3];
        let mut lang_yes = [false; WORLD_COUNT];
        for i in 0..WORLD_COUNT {
            let world = World::from_index(i).unwrap();
            lang_yes[i] = world.language.da_means_yes();
            for (gi, g) in GodName::ALL.iter().enumerate() {
                role_table[gi][i] = role_of(world.scenario, *g);
            }
        }
        Searcher {
            memo: HashMap::new(),
            cap,
            explored: 0,
            role_table,
            lang_yes,
        }
    }

    /// Probability that the god in `world_index` answers "da" to a question
    /// whose truth value there is `truth`, doubled to stay integral:
    /// 0, 1 (the coin-marginalized half for Random), or 2.
    fn doubled_p_da(&self, god: usize, world_index: usize, truth: bool) -> u8 {
        match self.role_table[god][world_index] {
            Role::Random => 1,
            role => {
                // A truth-teller utters the word meaning the truth value, a
                // liar the other word; which word that is depends on the
                // language map.
                let says_da = (self.lang_yes[world_index] == truth) != (role == Role::False);
                if says_da {
                    2
                } else {
                    0
                }
            }
        }
    }

    /// Both posteriors (da, ja) for a question class, as reduced integer
    /// beliefs with their unnormalized branch numerators. The branch
    /// probability is numerator / (2 × total).
    fn branches(
        &self,
        belief: &IntBelief,
        god: usize,
        truth_mask: u16,
    ) -> [(IntBelief, BigInt); 2] {
        let mut post_da = vec![BigInt::zero(); WORLD_COUNT];
        let mut post_ja = vec![BigInt::zero(); WORLD_COUNT];
        let mut sum_da = BigInt::zero();
        let mut sum_ja = BigInt::zero();
        for i in 0..WORLD_COUNT {
            let w = &belief.weights[i];
            if w.is_zero() {
                continue;
            }
            let truth = truth_mask & (1 << i) != 0;
            let t_da = self.doubled_p_da(god, i, truth);
            if t_da > 0 {
                let scaled = w * t_da;
                sum_da += &scaled;
                post_da[i] = scaled;
            }
            let t_ja = 2 - t_da;
            if t_ja > 0 {
                let scaled = w * t_ja;
                sum_ja += &scaled;
                post_ja[i] = scaled;
            }
        }
        let mut da = IntBelief { weights: post_da };
        da.reduce();
        let mut ja = IntBelief { weights: post_ja };
        ja.reduce();
        [(da, sum_da), (ja, sum_ja)]
    }

    fn eval(&mut self, belief: &IntBelief, depth: u8) -> Result<Eval, SearchError> {
        let key = (belief.clone(), depth);
        if let Some(e) = self.memo.get(&key) {
            return Ok(e.clone());
        }
        let (guess, guess_value) = belief.best_guess();
        let mut best = Eval {
            value: guess_value,
            best: Move::Guess(guess),
        };
        // Guessing is the first candidate in the lexicographic order, so a
        // certain guess never loses a tie, and nothing can exceed 1.
        if depth > 0 && !best.value.is_one() {
            let support = belief.support();
            let doubled_total = Rational::from(belief.total() * BigInt::from(2));
            for (gi, _) in GodName::ALL.iter().enumerate() {
                // Truth values only matter on support worlds where the
                // addressee is not Random; everything else is canonically 0.
                let free: Vec<usize> = support
                    .iter()
                    .copied()
                    .filter(|i| self.role_table[gi][*i] != Role::Random)
                    .collect();
                for bits in 0..(1u32 << free.len()) {
                    self.explored += 1;
                    let mut truth_mask = 0u16;
                    for (j, world_index) in free.iter().enumerate() {
                        if bits & (1 << j) != 0 {
                            truth_mask |= 1 << world_index;
                        }
                    }
                    let mut value = Rational::zero();
                    for (posterior, numerator) in self.branches(belief, gi, truth_mask) {
                        if numerator.is_zero() {
                            continue;
                        }
                        let child = self.eval(&posterior, depth - 1)?;
                        value += Rational::from(numerator) / &doubled_total * child.value;
                    }
                    if value > best.value {
                        best = Eval {
                            value,
                            best: Move::Ask {
                                addressee: GodName::ALL[gi],
                                truth_mask,
                            },
                        };
                    }
                }
            }
        }
        if self.memo.len() >= self.cap {
            return Err(SearchError::ResourceLimit {
                cap: self.cap,
                explored: self.explored,
            });
        }
        self.memo.insert(key, best.clone());
        Ok(best)
    }

    fn witness(&self, belief: &IntBelief, depth: u8) -> StrategyTree {
        let eval = self
            .memo
            .get(&(belief.clone(), depth))
            .expect("witness requested for an evaluated state");
        match eval.best {
            Move::Guess(s) => StrategyTree::Guess(s),
            Move::Ask {
                addressee,
                truth_mask,
            } => {
                let gi = GodName::ALL.iter().position(|g| *g == addressee).unwrap();
                let question = question_for_world_mask(truth_mask);
                let children =
                    self.branches(belief, gi, truth_mask)
                        .map(|(posterior, numerator)| {
                            if numerator.is_zero() {
                                // Unreachable branch; close it with the parent's guess.
                                StrategyTree::Guess(belief.best_guess().0)
                            } else {
                                self.witness(&posterior, depth - 1)
                            }
                        });
                let [on_da, on_ja] = children;
                StrategyTree::ask(addressee, question, on_da, on_ja)
            }
        }
    }
}

/// Searches all strategy trees of at most the given depth over the
/// extensional question space and returns the exact optimum with a
/// deterministic lexicographically tie-broken witness.
///
/// Depth 3 resolves through the built-in certainty witness unless
/// `config.full_depth3` forces the enumeration: the optimum can never exceed
/// 1, and the built-in tree already attains it in every world.
///
/// The enumeration itself does not branch on `variant`: an extensional
/// question drawn from a Random addressee is uniform noise under both rules,
/// so their likelihoods coincide on the whole search space.
pub fn exhaustive_search(
    depth: usize,
    prior: &Prior,
    variant: RandomVariant,
    config: &SearchConfig,
) -> Result<SearchResult, SearchError> {
    if depth > 3 {
        return Err(SearchError::InvalidDepth(depth));
    }
    if depth == 3 && !config.full_depth3 {
        let witness = builtin_three_question();
        if is_certain_solver(&witness, prior, variant) {
            return Ok(SearchResult {
                depth,
                certain_solver_exists: true,
                witness: Some(witness.clone()),
                optimal_success: Rational::one(),
                optimal_witness: witness,
                explored_classes: 0,
            });
        }
    }
    let mut searcher = Searcher::new(config.max_states);
    let root = IntBelief::from_prior(prior);
    let eval = searcher.eval(&root, depth as u8)?;
    let optimal_witness = searcher.witness(&root, depth as u8);
    let certain = eval.value.is_one();
    Ok(SearchResult {
        depth,
        certain_solver_exists: certain,
        witness: certain.then(|| optimal_witness.clone()),
        optimal_success: eval.value,
        optimal_witness,
        explored_classes: searcher.explored,
    })
}

/// The exact maximum success probability over all valid trees of at most the
/// given depth.
pub fn optimal_success(
    depth: usize,
    prior: &Prior,
    variant: RandomVariant,
    config: &SearchConfig,
) -> Result<Rational, SearchError> {
    exhaustive_search(depth, prior, variant, config).map(|r| r.optimal_success)
}

/// Serializes a search report with exact rationals as `num/den` and witness
/// trees in the strategy file format.
pub fn report_json(result: &SearchResult) -> Value {
    json!({
        "depth": result.depth,
        "certain_solver_exists": result.certain_solver_exists,
        "optimal_success": format_ratio(&result.optimal_success),
        "explored_classes": result.explored_classes,
        "witness": result
            .witness
            .as_ref()
            .map(|t| t.to_json())
            .unwrap_or(Value::Null),
        "optimal_witness": result.optimal_witness.to_json(),
    })
}

pub fn report_text(result: &SearchResult) -> String {
    let mut out = String::new();
    out.push_str(&format!("depth:                 {}\n", result.depth));
    out.push_str(&format!(
        "certain solver exists: {}\n",
        result.certain_solver_exists
    ));
    out.push_str(&format!(
        "optimal success:       {}\n",
        format_ratio(&result.optimal_success)
    ));
    out.push_str(&format!(
        "explored classes:      {}\n",
        result.explored_classes
    ));
    out.push_str("optimal witness:\n");
    out.push_str(&result.optimal_witness.render_text());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::strategy::{success_probability, validate};
    use crate::world::uniform_prior;

    #[test]
    fn counting_bound_matches_the_lemma() {
        assert!(counting_bound(6, 2, 1));
        assert!(counting_bound(6, 2, 2));
        assert!(!counting_bound(6, 2, 3));
        assert!(counting_bound(4, 2, 1));
        assert!(!counting_bound(1, 2, 0));
        assert!(counting_bound(2, 2, 0));
        assert!(!counting_bound(u64::MAX, 2, 64));
    }

    #[test]
    fn depth_zero_is_a_bare_guess() {
        let r = exhaustive_search(
            0,
            &uniform_prior(),
            RandomVariant::BoolosCoin,
            &SearchConfig::default(),
        )
        .unwrap();
        assert_eq!(r.optimal_success, ratio(1, 6));
        assert!(!r.certain_solver_exists);
        assert!(r.witness.is_none());
        assert_eq!(r.optimal_witness, StrategyTree::Guess(ScenarioId::S1));
    }

    #[test]
    fn one_question_tops_out_at_one_third() {
        let prior = uniform_prior();
        let r = exhaustive_search(
            1,
            &prior,
            RandomVariant::BoolosCoin,
            &SearchConfig::default(),
        )
        .unwrap();
        assert_eq!(r.optimal_success, ratio(1, 3));
        assert!(!r.certain_solver_exists);
        // The optimal witness is a real, valid tree attaining the optimum.
        assert!(validate(&r.optimal_witness, &prior, RandomVariant::BoolosCoin).is_ok());
        assert_eq!(
            success_probability(&r.optimal_witness, &prior, RandomVariant::BoolosCoin).unwrap(),
            ratio(1, 3)
        );
    }

    #[test]
    fn two_questions_top_out_at_two_thirds() {
        let prior = uniform_prior();
        let r = exhaustive_search(
            2,
            &prior,
            RandomVariant::BoolosCoin,
            &SearchConfig::default(),
        )
        .unwrap();
        assert_eq!(r.optimal_success, ratio(2, 3));
        assert!(!r.certain_solver_exists);
        assert!(r.witness.is_none());
        assert_eq!(
            success_probability(&r.optimal_witness, &prior, RandomVariant::BoolosCoin).unwrap(),
            ratio(2, 3)
        );
    }

    #[test]
    fn depth_three_resolves_through_the_certainty_witness() {
        let r = exhaustive_search(
            3,
            &uniform_prior(),
            RandomVariant::BoolosCoin,
            &SearchConfig::default(),
        )
        .unwrap();
        assert!(r.certain_solver_exists);
        assert_eq!(r.optimal_success, ratio(1, 1));
        assert_eq!(r.witness, Some(builtin_three_question()));
    }

    #[test]
    fn optimum_never_decreases_with_depth_and_respects_the_bound() {
        let prior = uniform_prior();
        let config = SearchConfig::default();
        let mut last = ratio(0, 1);
        for depth in 0..=3 {
            let v = optimal_success(depth, &prior, RandomVariant::BoolosCoin, &config).unwrap();
            assert!(v >= last, "optimum dropped at depth {depth}");
            let bound = ratio(1 << depth, 1) * prior.max_scenario_mass();
            assert!(
                v <= bound.min(ratio(1, 1)),
                "counting bound at depth {depth}"
            );
            last = v;
        }
        assert_eq!(last, ratio(1, 1));
    }

    #[test]
    fn search_is_deterministic_across_runs() {
        let prior = uniform_prior();
        let config = SearchConfig::default();
        let a = exhaustive_search(2, &prior, RandomVariant::BoolosCoin, &config).unwrap();
        let b = exhaustive_search(2, &prior, RandomVariant::BoolosCoin, &config).unwrap();
        assert_eq!(a.optimal_witness, b.optimal_witness);
        assert_eq!(a.optimal_success, b.optimal_success);
        assert_eq!(a.explored_classes, b.explored_classes);
        assert_eq!(
            serde_json::to_string(&report_json(&a)).unwrap(),
            serde_json::to_string(&report_json(&b)).unwrap()
        );
    }

    #[test]
    fn the_variants_agree_on_extensional_search() {
        // Random's answers to extensional questions are uniform noise under
        // both rules, so the optima coincide.
        let prior = uniform_prior();
        let config = SearchConfig::default();
        for depth in 0..=2 {
            assert_eq!(
                optimal_success(depth, &prior, RandomVariant::BoolosCoin, &config).unwrap(),
                optimal_success(depth, &prior, RandomVariant::RabernUniform, &config).unwrap()
            );
        }
    }

    #[test]
    fn a_tiny_state_cap_fails_with_a_resource_error() {
        let err = exhaustive_search(
            2,
            &uniform_prior(),
            RandomVariant::BoolosCoin,
            &SearchConfig {
                max_states: 1,
                full_depth3: false,
            },
        )
        .unwrap_err();
        assert!(matches!(err, SearchError::ResourceLimit { cap: 1, .. }));
    }

    #[test]
    fn depth_beyond_three_is_rejected() {
        let err = exhaustive_search(
            4,
            &uniform_prior(),
            RandomVariant::BoolosCoin,
            &SearchConfig::default(),
        )
        .unwrap_err();
        assert_eq!(err, SearchError::InvalidDepth(4));
    }

    #[test]
    fn full_depth3_enumeration_agrees_on_a_small_support() {
        // Two scenarios in the support: the hard part is only the language
        // bit, so the enumeration stays tiny and must land on certainty.
        let mut weights = vec![ratio(0, 1); 12];
        weights[ScenarioId::S4.index() * 2] = ratio(1, 3);
        weights[ScenarioId::S4.index() * 2 + 1] = ratio(1, 3);
        weights[ScenarioId::S5.index() * 2] = ratio(1, 6);
        weights[ScenarioId::S5.index() * 2 + 1] = ratio(1, 6);
        let prior = Prior::new(weights).unwrap();
        let config = SearchConfig {
            max_states: 100_000,
            full_depth3: true,
        };
        let r = exhaustive_search(3, &prior, RandomVariant::BoolosCoin, &config).unwrap();
        assert!(r.certain_solver_exists);
        assert_eq!(r.optimal_success, ratio(1, 1));
        assert!(r.explored_classes > 0, "the full enumeration really ran");
        assert!(
            success_probability(&r.optimal_witness, &prior, RandomVariant::BoolosCoin).unwrap()
                == ratio(1, 1)
        );
    }

    #[test]
    fn full_depth3_respects_the_state_cap() {
        let err = exhaustive_search(
            3,
            &uniform_prior(),
            RandomVariant::BoolosCoin,
            &SearchConfig {
                max_states: 1000,
                full_depth3: true,
            },
        )
        .unwrap_err();
        assert!(matches!(err, SearchError::ResourceLimit { cap: 1000, .. }));
    }

    #[test]
    fn concentrated_priors_are_solved_by_guessing() {
        let w = World::from_index(7).unwrap();
        let prior = Prior::concentrated(w);
        let r = exhaustive_search(
            1,
            &prior,
            RandomVariant::BoolosCoin,
            &SearchConfig::default(),
        )
        .unwrap();
        assert!(r.certain_solver_exists);
        assert_eq!(r.optimal_witness, StrategyTree::Guess(w.scenario));
    }
}
