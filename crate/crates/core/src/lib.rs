//! An exact, deterministic engine for Boolos' Hardest Logic Puzzle Ever.
//!
//! Three gods called True, False, and Random (in some unknown order) answer
//! yes-no questions with "da" and "ja", whose meanings are also unknown. The
//! engine models the twelve possible worlds, evaluates questions against them
//! (including the self-referential question no truth-teller can answer),
//! tracks exact rational beliefs through Bayes updates, verifies by
//! exhaustive search that no one- or two-question strategy identifies the
//! gods with certainty while a three-question strategy does, and computes
//! the exact chances of getting lucky with fewer questions.

pub mod belief;
pub mod cli;
pub mod oracle;
pub mod probability;
pub mod question;
pub mod rational;
pub mod search;
pub mod strategy;
pub mod world;

pub use belief::{initial_belief, likelihood, update, BeliefState};
pub use oracle::{
    admissible, answer_set, askable, draw_answer, speaking_mode, AnswerSet, RandomVariant,
    SpeakingMode,
};
pub use question::{
    evaluate, is_self_referential, likelihood_signature, parse, print, Answer, Question,
};
pub use rational::Rational;
pub use search::{counting_bound, exhaustive_search, optimal_success, SearchConfig, SearchResult};
pub use strategy::{
    builtin_three_question, is_certain_solver, success_probability, two_question_fragment,
    validate, StrategyTree,
};
pub use world::{
    all_worlds, role_of, uniform_prior, CoinFace, GodName, LanguageMap, Prior, Role, ScenarioId,
    World,
};
