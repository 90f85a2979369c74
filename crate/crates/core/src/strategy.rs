//! Interrogation plans: adaptive trees of questions with scenario guesses at
//! the leaves, their validation against admissibility, and their exact
//! success probabilities.

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::belief::{initial_belief, likelihood, update, BeliefState};
use crate::oracle::{askable_witness, NatureViolation, RandomVariant, SpeakingMode};
use crate::question::{self, iff, Answer, ParseError, Question};
use crate::rational::Rational;
use crate::world::{GodName, Prior, Role, ScenarioId, World};

/// A depth-bounded decision tree: ask nodes branch on the answer word, leaves
/// guess a scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyTree {
    Ask {
        addressee: GodName,
        question: Question,
        on_da: Box<StrategyTree>,
        on_ja: Box<StrategyTree>,
    },
    Guess(ScenarioId),
}

impl StrategyTree {
    pub fn ask(
        addressee: GodName,
        question: Question,
        on_da: StrategyTree,
        on_ja: StrategyTree,
    ) -> StrategyTree {
        StrategyTree::Ask {
            addressee,
            question,
            on_da: Box::new(on_da),
            on_ja: Box::new(on_ja),
        }
    }

    /// Maximum number of questions along any path.
    pub fn depth(&self) -> usize {
        match self {
            StrategyTree::Guess(_) => 0,
            StrategyTree::Ask { on_da, on_ja, .. } => 1 + on_da.depth().max(on_ja.depth()),
        }
    }

    /// Serializes in the strategy file format:
    /// `{"ask": {"to": .., "q": .., "da": .., "ja": ..}}` or `{"guess": "S3"}`.
    pub fn to_json(&self) -> Value {
        match self {
            StrategyTree::Guess(s) => json!({ "guess": s.to_string() }),
            StrategyTree::Ask {
                addressee,
                question,
                on_da,
                on_ja,
            } => json!({
                "ask": {
                    "to": addressee.to_string(),
                    "q": question.to_string(),
                    "da": on_da.to_json(),
                    "ja": on_ja.to_json(),
                }
            }),
        }
    }

    /// Loads a tree from the strategy file format. `max_depth` defaults to 3
    /// at the interface boundary; pass `None` to override the limit.
    pub fn from_json(value: &Value, max_depth: Option<usize>) -> Result<StrategyTree, LoadError> {
        let tree = Self::node_from_json(value)?;
        if let Some(limit) = max_depth {
            let depth = tree.depth();
            if depth > limit {
                return Err(LoadError::DepthExceeded { depth, limit });
            }
        }
        Ok(tree)
    }

    fn node_from_json(value: &Value) -> Result<StrategyTree, LoadError> {
        let obj = value
            .as_object()
            .ok_or_else(|| LoadError::BadNode("node is not an object".into()))?;
        if let Some(guess) = obj.get("guess") {
            let label = guess
                .as_str()
                .ok_or_else(|| LoadError::BadNode("\"guess\" must be a scenario string".into()))?;
            let scenario = label
                .parse::<ScenarioId>()
                .map_err(|e| LoadError::BadNode(e.to_string()))?;
            return Ok(StrategyTree::Guess(scenario));
        }
        let ask = obj
            .get("ask")
            .and_then(Value::as_object)
            .ok_or_else(|| LoadError::BadNode("node needs an \"ask\" or \"guess\" key".into()))?;
        let to = ask
            .get("to")
            .and_then(Value::as_str)
            .ok_or_else(|| LoadError::BadNode("\"ask\" needs a \"to\" god".into()))?
            .parse::<GodName>()
            .map_err(|e| LoadError::BadNode(e.to_string()))?;
        let q_text = ask
            .get("q")
            .and_then(Value::as_str)
            .ok_or_else(|| LoadError::BadNode("\"ask\" needs a \"q\" question string".into()))?;
        let question = question::parse(q_text)?;
        let on_da = ask
            .get("da")
            .ok_or_else(|| LoadError::BadNode("\"ask\" needs a \"da\" branch".into()))?;
        let on_ja = ask
            .get("ja")
            .ok_or_else(|| LoadError::BadNode("\"ask\" needs a \"ja\" branch".into()))?;
        Ok(StrategyTree::ask(
            to,
            question,
            Self::node_from_json(on_da)?,
            Self::node_from_json(on_ja)?,
        ))
    }

    /// Indented plain-text rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent);
        match self {
            StrategyTree::Guess(s) => out.push_str(&format!("{pad}guess {s}\n")),
            StrategyTree::Ask {
                addressee,
                question,
                on_da,
                on_ja,
            } => {
                out.push_str(&format!("{pad}ask {addressee}: {question}\n"));
                out.push_str(&format!("{pad}on da:\n"));
                on_da.render_into(out, indent + 1);
                out.push_str(&format!("{pad}on ja:\n"));
                on_ja.render_into(out, indent + 1);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("malformed strategy node: {0}")]
    BadNode(String),
    #[error("bad question in strategy file: {0}")]
    BadQuestion(#[from] ParseError),
    #[error("strategy depth {depth} exceeds the limit {limit}")]
    DepthExceeded { depth: usize, limit: usize },
}

/// Why a tree failed validation: the first ask node whose question is not
/// askable, with a (world, mode) witness from the node's belief support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Answers along the path from the root to the offending node.
    pub path: Vec<Answer>,
    pub addressee: GodName,
    pub question: String,
    pub world: World,
    pub mode: SpeakingMode,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let path = if self.path.is_empty() {
            "at the root".to_string()
        } else {
            format!(
                "after answers [{}]",
                self.path
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        };
        write!(
            f,
            "{path}, {:?} to {} is not askable: in world {} the god could be {} with no consistent answer",
            self.question, self.addressee, self.world, self.mode
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Ok,
    Violation(Violation),
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        matches!(self, Validation::Ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("strategy failed validation: {0}")]
    Invalid(Violation),
    #[error(transparent)]
    Nature(#[from] NatureViolation),
}

/// Walks the tree with belief propagation and checks that every question is
/// askable where it is asked. Branches that can never be reached (answer
/// probability zero) are skipped.
pub fn validate(tree: &StrategyTree, prior: &Prior, variant: RandomVariant) -> Validation {
    let belief = initial_belief(prior);
    let mut path = Vec::new();
    match validate_node(tree, &belief, variant, &mut path) {
        None => Validation::Ok,
        Some(v) => Validation::Violation(v),
    }
}

fn validate_node(
    tree: &StrategyTree,
    belief: &BeliefState,
    variant: RandomVariant,
    path: &mut Vec<Answer>,
) -> Option<Violation> {
    let StrategyTree::Ask {
        addressee,
        question,
        on_da,
        on_ja,
    } = tree
    else {
        return None;
    };
    if let Some((world, mode)) = askable_witness(question, *addressee, belief, variant) {
        return Some(Violation {
            path: path.clone(),
            addressee: *addressee,
            question: question.to_string(),
            world,
            mode,
        });
    }
    for (answer, child) in [(Answer::Da, on_da), (Answer::Ja, on_ja)] {
        match update(belief, question, *addressee, answer, variant) {
            Ok(next) => {
                path.push(answer);
                let v = validate_node(child, &next, variant, path);
                path.pop();
                if v.is_some() {
                    return v;
                }
            }
            // The answer has probability zero here, so the branch is dead.
            Err(_) => continue,
        }
    }
    None
}

/// Exact probability that the reached guess equals the true scenario, under
/// the prior, independent fair coins, and uniform sampling of two-word answer
/// sets. Requires a valid tree.
pub fn success_probability(
    tree: &StrategyTree,
    prior: &Prior,
    variant: RandomVariant,
) -> Result<Rational, StrategyError> {
    if let Validation::Violation(v) = validate(tree, prior, variant) {
        return Err(StrategyError::Invalid(v));
    }
    let mut total = Rational::zero();
    for world in crate::world::all_worlds() {
        let p = prior.weight(world);
        if p.is_zero() {
            continue;
        }
        total += p * success_in_world(tree, &world, variant)?;
    }
    Ok(total)
}

fn success_in_world(
    tree: &StrategyTree,
    world: &World,
    variant: RandomVariant,
) -> Result<Rational, StrategyError> {
    match tree {
        StrategyTree::Guess(s) => Ok(if *s == world.scenario {
            Rational::one()
        } else {
            Rational::zero()
        }),
        StrategyTree::Ask {
            addressee,
            question,
            on_da,
            on_ja,
        } => {
            let mut acc = Rational::zero();
            for (answer, child) in [(Answer::Da, on_da), (Answer::Ja, on_ja)] {
                let l = likelihood(answer, question, world, *addressee, variant)?;
                if l.is_zero() {
                    continue;
                }
                acc += l * success_in_world(child, world, variant)?;
            }
            Ok(acc)
        }
    }
}

/// A certain solver guesses correctly in every world of the prior's support,
/// under every coin and tie outcome; equivalently its success probability is
/// exactly 1.
pub fn is_certain_solver(tree: &StrategyTree, prior: &Prior, variant: RandomVariant) -> bool {
    match success_probability(tree, prior, variant) {
        Ok(p) => p.is_one(),
        Err(_) => false,
    }
}

/// The embedded form "da means yes iff (you are True iff p)": any non-Random
/// god answers it with "da" exactly when p holds, regardless of the language
/// map and of whether the god lies.
fn embedded(p: Question) -> Question {
    iff(
        question::da_means_yes(),
        iff(question::you_are(Role::True), p),
    )
}

/// The plain form "da means yes iff p": a non-Random god answers "da" exactly
/// when p's truth value matches being the truth-teller. With p known true it
/// identifies True versus False.
fn plain_iff(p: Question) -> Question {
    iff(question::da_means_yes(), p)
}

/// A three-question certain solver.
///
/// The first question to A asks, in embedded form, whether B is Random; the
/// answer singles out a god that cannot be Random (C on "da", B on "ja").
/// The second question identifies that god as True or False, and the third
/// asks it whether A is Random, which pins the scenario.
pub fn builtin_three_question() -> StrategyTree {
    use GodName::{A, B, C};
    use ScenarioId::*;
    use StrategyTree::Guess;
    let q1 = embedded(question::is_role(B, Role::Random));
    let q2 = plain_iff(Question::ConstTrue);
    let q3 = plain_iff(question::is_role(A, Role::Random));

    StrategyTree::ask(
        A,
        q1,
        // "da": B or A is Random, so C is safe.
        StrategyTree::ask(
            C,
            q2.clone(),
            // C is True: S4 or S6 remain.
            StrategyTree::ask(C, q3.clone(), Guess(S6), Guess(S4)),
            // C is False: S2 or S5 remain; the liar inverts the third answer.
            StrategyTree::ask(C, q3.clone(), Guess(S2), Guess(S5)),
        ),
        // "ja": C or A is Random, so B is safe.
        StrategyTree::ask(
            B,
            q2,
            // B is True: S3 or S5 remain.
            StrategyTree::ask(B, q3.clone(), Guess(S5), Guess(S3)),
            // B is False: S1 or S6 remain.
            StrategyTree::ask(B, q3, Guess(S1), Guess(S6)),
        ),
    )
}

/// The two-question fragment behind the one-in-three chance of solving the
/// puzzle early: locate Random relative to A, then put the known-true-fact
/// question ("Does da mean yes iff Rome is in Italy?", with the fact encoded
/// as `true`) to the god the first answer proved non-Random, and guess the
/// maximum-posterior scenario at each leaf (lowest index on ties).
pub fn two_question_fragment() -> StrategyTree {
    use GodName::{A, B, C};
    let q1 = embedded(question::is_role(B, Role::Random));
    let rome = plain_iff(Question::ConstTrue);
    let prior = crate::world::uniform_prior();
    let variant = RandomVariant::BoolosCoin;
    let root_belief = initial_belief(&prior);

    let branch = |first_answer: Answer, second_addressee: GodName| -> StrategyTree {
        let after_first = update(&root_belief, &q1, A, first_answer, variant)
            .expect("both first answers have positive probability");
        let leaf = |second_answer: Answer| -> StrategyTree {
            let after_second = update(
                &after_first,
                &rome,
                second_addressee,
                second_answer,
                variant,
            )
            .expect("both second answers have positive probability");
            StrategyTree::Guess(after_second.best_guess())
        };
        StrategyTree::ask(
            second_addressee,
            rome.clone(),
            leaf(Answer::Da),
            leaf(Answer::Ja),
        )
    };

    let on_da = branch(Answer::Da, C);
    let on_ja = branch(Answer::Ja, B);
    StrategyTree::ask(A, q1, on_da, on_ja)
}
