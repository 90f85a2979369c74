//! Command-line surface: the verification suite, exhaustive search, question
//! evaluation, and a seeded interactive interrogation session.

use std::fs;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::belief::{initial_belief, update, world_map_from_json, BeliefState};
use crate::oracle::{
    admissible, answer_set, askable_witness, draw_answer, realizable_modes, speaking_mode,
    RandomVariant, SpeakingMode,
};
use crate::probability::{
    chances_report, claimed_case_terms, claimed_probability, first_step_admissibility,
};
use crate::question::{self, Answer, Question};
use crate::rational::{format_ratio, ratio};
use crate::search::{
    counting_bound, exhaustive_search, report_json, report_text, SearchConfig, SearchError,
};
use crate::strategy::{builtin_three_question, is_certain_solver, success_probability, validate};
use crate::world::{
    all_worlds, role_of, uniform_prior, CoinFace, GodName, Prior, Role, ScenarioId, World,
    WORLD_COUNT,
};

#[derive(Parser)]
#[command(
    name = "hlpe",
    about = "Exact engine for Boolos' Hardest Logic Puzzle Ever",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    /// Random's hidden coin picks a speaking mode (the original rule).
    Boolos,
    /// Random utters a uniformly random word, ignoring the question.
    Rabern,
}

impl From<VariantArg> for RandomVariant {
    fn from(v: VariantArg) -> RandomVariant {
        match v {
            VariantArg::Boolos => RandomVariant::BoolosCoin,
            VariantArg::Rabern => RandomVariant::RabernUniform,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite and exit nonzero on any failed check.
    Verify {
        #[arg(long, value_enum, default_value_t = VariantArg::Boolos)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Cap on memoized belief states in the searches.
        #[arg(long, default_value_t = SearchConfig::default().max_states)]
        max_states: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively search strategies up to a depth and report the optimum.
    Search {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        depth: u8,
        #[arg(long, value_enum, default_value_t = VariantArg::Boolos)]
        variant: VariantArg,
        /// Prior file: JSON map from world label to "num/den".
        #[arg(long)]
        prior: Option<PathBuf>,
        #[arg(long, default_value_t = SearchConfig::default().max_states)]
        max_states: usize,
        /// Force the full depth-3 enumeration instead of the certainty witness.
        #[arg(long)]
        full_depth3: bool,
        /// Re-verify any found witness with the strategy checker.
        #[arg(long)]
        check_witness: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play an interrogation session against a hidden world.
    Play {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = VariantArg::Boolos)]
        variant: VariantArg,
        #[arg(long)]
        prior: Option<PathBuf>,
        /// Question budget; the puzzle allows three.
        #[arg(long, default_value_t = 3)]
        max_questions: usize,
        /// Write the transcript here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a question's answer sets across worlds and speaking modes.
    Eval {
        /// Question in the DSL, e.g. "da means yes iff B is Random".
        question: String,
        /// World label like "S4/da=no", or "all".
        #[arg(long, default_value = "all")]
        world: String,
        #[arg(long)]
        addressee: String,
        /// truthful | lying | both | heads | tails
        #[arg(long, default_value = "both")]
        mode: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Boolos)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

/// Exit codes: 0 success, 1 check failure, 2 usage error, 3 resource cap.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            variant,
            format,
            max_states,
            out,
        } => cmd_verify(variant.into(), format, max_states, out),
        Command::Search {
            depth,
            variant,
            prior,
            max_states,
            full_depth3,
            check_witness,
            format,
            out,
        } => cmd_search(
            depth as usize,
            variant.into(),
            prior,
            max_states,
            full_depth3,
            check_witness,
            format,
            out,
        ),
        Command::Play {
            seed,
            variant,
            prior,
            max_questions,
            out,
        } => cmd_play(seed, variant.into(), prior, max_questions, out),
        Command::Eval {
            question,
            world,
            addressee,
            mode,
            variant,
            format,
        } => cmd_eval(&question, &world, &addressee, &mode, variant.into(), format),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {path:?}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_prior(path: &Option<PathBuf>) -> Result<Prior, String> {
    match path {
        None => Ok(uniform_prior()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| format!("cannot read {p:?}: {e}"))?;
            let value: Value =
                serde_json::from_str(&text).map_err(|e| format!("bad prior JSON: {e}"))?;
            let weights = world_map_from_json(&value)?;
            Prior::new(weights).map_err(|e| e.to_string())
        }
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct CheckResult {
    name: &'static str,
    passed: bool,
    resource_limited: bool,
    detail: String,
}

impl CheckResult {
    fn pass(name: &'static str, detail: impl Into<String>) -> CheckResult {
        CheckResult {
            name,
            passed: true,
            resource_limited: false,
            detail: detail.into(),
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> CheckResult {
        CheckResult {
            name,
            passed: false,
            resource_limited: false,
            detail: detail.into(),
        }
    }

    fn from_search_error(name: &'static str, err: &SearchError) -> CheckResult {
        CheckResult {
            name,
            passed: false,
            resource_limited: matches!(err, SearchError::ResourceLimit { .. }),
            detail: err.to_string(),
        }
    }
}

/// The verification suite behind `hlpe verify`: counting bounds, depth-1/2
/// impossibility, the built-in depth-3 certainty, the admissibility table of
/// the self-referential question, the claimed-probability constants and
/// report, the first-step admissibility chances, and the Random-variant
/// contrast.
pub fn run_verification(variant: RandomVariant, max_states: usize) -> Vec<CheckOutcome> {
    let prior = uniform_prior();
    let config = SearchConfig {
        max_states,
        full_depth3: false,
    };
    let checks = vec![
        check_counting_bound(),
        check_impossibility(1, &prior, variant, &config),
        check_impossibility(2, &prior, variant, &config),
        check_builtin_certainty(&prior, variant),
        check_q_admissibility_table(variant),
        check_first_step_chances(variant),
        check_claimed_constants(),
        check_zero_question_optimum(&prior, variant, &config),
        check_chances_report(&prior, variant, &config),
        check_rabern_contrast(),
    ];

    checks
        .into_iter()
        .map(|c| CheckOutcome {
            name: c.name,
            passed: c.passed,
            resource_limited: c.resource_limited,
            detail: c.detail,
        })
        .collect()
}

/// Public view of one verification check.
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub resource_limited: bool,
    pub detail: String,
}

fn check_counting_bound() -> CheckResult {
    let name = "counting bound (6 scenarios, 2 answers)";
    if counting_bound(6, 2, 1) && counting_bound(6, 2, 2) && !counting_bound(6, 2, 3) {
        CheckResult::pass(name, "2^1 < 6, 2^2 < 6, 2^3 >= 6")
    } else {
        CheckResult::fail(name, "counting bound verdicts are wrong")
    }
}

fn check_impossibility(
    depth: usize,
    prior: &Prior,
    variant: RandomVariant,
    config: &SearchConfig,
) -> CheckResult {
    let name = match depth {
        1 => "no certain one-question strategy",
        _ => "no certain two-question strategy",
    };
    match exhaustive_search(depth, prior, variant, config) {
        Ok(r) if !r.certain_solver_exists => CheckResult::pass(
            name,
            format!(
                "optimum {} over {} explored classes",
                format_ratio(&r.optimal_success),
                r.explored_classes
            ),
        ),
        Ok(r) => CheckResult::fail(name, format!("found a certain solver: {}", report_text(&r))),
        Err(e) => CheckResult::from_search_error(name, &e),
    }
}

fn check_builtin_certainty(prior: &Prior, variant: RandomVariant) -> CheckResult {
    let name = "built-in three-question certainty";
    let tree = builtin_three_question();
    if tree.depth() != 3 {
        return CheckResult::fail(name, format!("depth {} instead of 3", tree.depth()));
    }
    if !validate(&tree, prior, variant).is_ok() {
        return CheckResult::fail(name, "built-in tree failed validation");
    }
    match success_probability(&tree, prior, variant) {
        Ok(p) if p == ratio(1, 1) && is_certain_solver(&tree, prior, variant) => {
            CheckResult::pass(name, "success probability exactly 1/1")
        }
        Ok(p) => CheckResult::fail(name, format!("success probability {}", format_ratio(&p))),
        Err(e) => CheckResult::fail(name, e.to_string()),
    }
}

fn check_q_admissibility_table(variant: RandomVariant) -> CheckResult {
    let name = "self-referential question admissibility table";
    let q = question::question_q();
    for world in all_worlds() {
        for g in GodName::ALL {
            let role = role_of(world.scenario, g);
            for mode in [SpeakingMode::Truthful, SpeakingMode::Lying] {
                let set = answer_set(&q, &world, g, mode, variant);
                let expected_len =
                    if variant == RandomVariant::RabernUniform && role == Role::Random {
                        2
                    } else if mode == SpeakingMode::Truthful {
                        0
                    } else {
                        2
                    };
                if set.len() != expected_len {
                    return CheckResult::fail(name, format!("{world}, god {g}, {mode}: got {set}"));
                }
            }
        }
    }
    let belief = initial_belief(&uniform_prior());
    for g in GodName::ALL {
        if crate::oracle::askable(&q, g, &belief, variant) {
            return CheckResult::fail(name, format!("askable to {g} under the initial belief"));
        }
    }
    CheckResult::pass(
        name,
        "blocked for truthful modes, free for liars, never askable first",
    )
}

fn check_first_step_chances(variant: RandomVariant) -> CheckResult {
    let name = "first-step admissibility chances";
    let (heads, tails) = first_step_admissibility(&question::question_q(), variant);
    let expected = match variant {
        RandomVariant::BoolosCoin => (ratio(1, 6), ratio(1, 3)),
        RandomVariant::RabernUniform => (ratio(1, 3), ratio(1, 3)),
    };
    if (heads.clone(), tails.clone()) == expected {
        CheckResult::pass(
            name,
            format!(
                "heads {}, tails {}",
                format_ratio(&heads),
                format_ratio(&tails)
            ),
        )
    } else {
        CheckResult::fail(
            name,
            format!(
                "got heads {}, tails {}",
                format_ratio(&heads),
                format_ratio(&tails)
            ),
        )
    }
}

fn check_claimed_constants() -> CheckResult {
    let name = "claimed probability constants";
    let ok = claimed_probability(0) == Ok(ratio(1, 6))
        && claimed_probability(1) == Ok(ratio(1, 6))
        && claimed_probability(2) == Ok(ratio(1, 3))
        && claimed_case_terms(1).as_deref() == Ok(&[ratio(1, 6), ratio(1, 6)][..])
        && claimed_case_terms(2).as_deref() == Ok(&[ratio(1, 3), ratio(1, 3)][..]);
    if ok {
        CheckResult::pass(
            name,
            "1/6, 1/6, 1/3 with case products [1/6,1/6] and [1/3,1/3]",
        )
    } else {
        CheckResult::fail(name, "constants do not reproduce")
    }
}

fn check_zero_question_optimum(
    prior: &Prior,
    variant: RandomVariant,
    config: &SearchConfig,
) -> CheckResult {
    let name = "zero-question optimum";
    match crate::search::optimal_success(0, prior, variant, config) {
        Ok(v) if v == ratio(1, 6) => CheckResult::pass(name, "1/6, matching the claimed value"),
        Ok(v) => CheckResult::fail(name, format!("got {}", format_ratio(&v))),
        Err(e) => CheckResult::from_search_error(name, &e),
    }
}

fn check_chances_report(
    prior: &Prior,
    variant: RandomVariant,
    config: &SearchConfig,
) -> CheckResult {
    let name = "claimed-versus-computed probability report";
    match chances_report(prior, variant, config) {
        Ok(report) => {
            let v1 = &report.rows[1].engine_optimum;
            let v2 = &report.rows[2].engine_optimum;
            let bounds_ok =
                *v1 >= ratio(1, 3) && *v1 <= ratio(2, 6) && *v2 <= ratio(4, 6) && *v2 >= *v1;
            if bounds_ok {
                CheckResult::pass(name, format!("\n{}", report.render_text()))
            } else {
                CheckResult::fail(
                    name,
                    format!("optima outside counting bounds\n{}", report.render_text()),
                )
            }
        }
        Err(e) => CheckResult::from_search_error(name, &e),
    }
}

fn check_rabern_contrast() -> CheckResult {
    let name = "Rabern variant contrast";
    let q = question::question_q();
    for world in all_worlds() {
        for g in GodName::ALL {
            let role = role_of(world.scenario, g);
            if role == Role::Random {
                for coin in CoinFace::ALL {
                    let mode = speaking_mode(role, coin);
                    if !admissible(&q, &world, g, mode, RandomVariant::RabernUniform) {
                        return CheckResult::fail(
                            name,
                            format!("blocked for Random {g} in {world} on {coin}"),
                        );
                    }
                }
            }
            if role == Role::True
                && admissible(
                    &q,
                    &world,
                    g,
                    SpeakingMode::Truthful,
                    RandomVariant::RabernUniform,
                )
            {
                return CheckResult::fail(name, format!("admissible for True {g} in {world}"));
            }
        }
    }
    CheckResult::pass(
        name,
        "free for Random on both coin faces, still blocked for True",
    )
}

fn cmd_verify(
    variant: RandomVariant,
    format: FormatArg,
    max_states: usize,
    out: Option<PathBuf>,
) -> ExitCode {
    let checks = run_verification(variant, max_states);
    let all_passed = checks.iter().all(|c| c.passed);
    let any_resource = checks.iter().any(|c| c.resource_limited);

    let text = match format {
        FormatArg::Text => {
            let mut s = String::new();
            for c in &checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!("{mark} {}: {}\n", c.name, c.detail));
            }
            s.push_str(&format!(
                "{} of {} checks passed\n",
                checks.iter().filter(|c| c.passed).count(),
                checks.len()
            ));
            s
        }
        FormatArg::Json => {
            let rows: Vec<Value> = checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "passed": c.passed,
                        "resource_limited": c.resource_limited,
                        "detail": c.detail,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&json!({ "checks": rows, "all_passed": all_passed }))
                .unwrap()
                + "\n"
        }
    };
    if let Err(e) = emit(&text, &out) {
        eprintln!("{e}");
        return ExitCode::from(2);
    }
    if all_passed {
        ExitCode::SUCCESS
    } else if any_resource {
        ExitCode::from(3)
    } else {
        ExitCode::from(1)
    }
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    depth: usize,
    variant: RandomVariant,
    prior_path: Option<PathBuf>,
    max_states: usize,
    full_depth3: bool,
    check_witness: bool,
    format: FormatArg,
    out: Option<PathBuf>,
) -> ExitCode {
    let prior = match load_prior(&prior_path) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let config = SearchConfig {
        max_states,
        full_depth3,
    };
    let result = match exhaustive_search(depth, &prior, variant, &config) {
        Ok(r) => r,
        Err(e @ SearchError::ResourceLimit { .. }) => {
            eprintln!("{e}");
            return ExitCode::from(3);
        }
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let witness_check = check_witness.then(|| {
        result
            .witness
            .as_ref()
            .map(|w| is_certain_solver(w, &prior, variant))
    });
    let text = match format {
        FormatArg::Text => {
            let mut s = report_text(&result);
            if let Some(check) = witness_check {
                s.push_str(&format!(
                    "witness check:         {}\n",
                    match check {
                        Some(true) => "certain solver confirmed",
                        Some(false) => "WITNESS FAILED RE-VERIFICATION",
                        None => "no certainty witness to check",
                    }
                ));
            }
            s
        }
        FormatArg::Json => {
            let mut v = report_json(&result);
            if let Some(check) = witness_check {
                v["witness_is_certain_solver"] = json!(check);
            }
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
    };
    if let Err(e) = emit(&text, &out) {
        eprintln!("{e}");
        return ExitCode::from(2);
    }
    if witness_check == Some(Some(false)) {
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

// ---------------------------------------------------------------------------
// play
// ---------------------------------------------------------------------------

struct AskRecord {
    addressee: GodName,
    question: String,
    answer: Answer,
    belief_after: BeliefState,
}

struct Outcome {
    guess: ScenarioId,
    success: bool,
}

/// One seeded interrogation session. A single deterministic stream drives the
/// hidden-world sample, every coin flip, and any two-word answer draws, so a
/// fixed seed and input script reproduce the transcript byte for byte.
pub struct PlaySession {
    seed: u64,
    variant: RandomVariant,
    max_questions: usize,
    hidden: World,
    belief: BeliefState,
    rng: ChaCha8Rng,
    coin_faces: Vec<CoinFace>,
    events: Vec<AskRecord>,
    outcome: Option<Outcome>,
}

/// What the session says back to one submitted line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlayReply {
    /// The god answered; the belief state has been updated.
    Answered { addressee: GodName, answer: Answer },
    /// The question was refused; no turn was consumed.
    Rejected { reason: String },
    /// The guess was made; the session is over.
    Finished {
        hidden: World,
        guess: ScenarioId,
        success: bool,
    },
    /// The line could not be understood; no turn was consumed.
    Error { message: String },
}

impl PlaySession {
    pub fn new(
        seed: u64,
        prior: &Prior,
        variant: RandomVariant,
        max_questions: usize,
    ) -> PlaySession {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hidden = sample_world(prior, &mut rng);
        PlaySession {
            seed,
            variant,
            max_questions,
            hidden,
            belief: initial_belief(prior),
            rng,
            coin_faces: Vec::new(),
            events: Vec::new(),
            outcome: None,
        }
    }

    pub fn questions_asked(&self) -> usize {
        self.events.len()
    }

    pub fn is_over(&self) -> bool {
        self.outcome.is_some()
    }

    pub fn belief(&self) -> &BeliefState {
        &self.belief
    }

    /// Handles one command line: `ask <god>: <question>` or `guess <S1..S6>`.
    pub fn submit(&mut self, line: &str) -> PlayReply {
        if self.outcome.is_some() {
            return PlayReply::Error {
                message: "the session is over".into(),
            };
        }
        let line = line.trim();
        let lower = line.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("ask") {
            if !rest.starts_with([' ', '\t']) {
                return PlayReply::Error {
                    message: "usage: ask <god>: <question>".into(),
                };
            }
            // Work on the original string to keep byte offsets honest.
            let rest = &line[3..];
            let Some((god_text, q_text)) = rest.split_once(':') else {
                return PlayReply::Error {
                    message: "usage: ask <god>: <question>".into(),
                };
            };
            let god: GodName = match god_text.parse() {
                Ok(g) => g,
                Err(e) => {
                    return PlayReply::Error {
                        message: e.to_string(),
                    }
                }
            };
            let q = match question::parse(q_text) {
                Ok(q) => q,
                Err(e) => {
                    return PlayReply::Error {
                        message: e.to_string(),
                    }
                }
            };
            self.ask(god, q)
        } else if let Some(rest) = lower.strip_prefix("guess") {
            let scenario: ScenarioId = match rest.trim().parse() {
                Ok(s) => s,
                Err(e) => {
                    return PlayReply::Error {
                        message: e.to_string(),
                    }
                }
            };
            let success = scenario == self.hidden.scenario;
            self.outcome = Some(Outcome {
                guess: scenario,
                success,
            });
            PlayReply::Finished {
                hidden: self.hidden,
                guess: scenario,
                success,
            }
        } else {
            PlayReply::Error {
                message: "unknown command; use \"ask <god>: <question>\" or \"guess <S1..S6>\""
                    .into(),
            }
        }
    }

    fn ask(&mut self, god: GodName, q: Question) -> PlayReply {
        if self.events.len() >= self.max_questions {
            return PlayReply::Rejected {
                reason: format!(
                    "the {}-question budget is spent; make a guess",
                    self.max_questions
                ),
            };
        }
        if let Some((world, mode)) = askable_witness(&q, god, &self.belief, self.variant) {
            return PlayReply::Rejected {
                reason: format!(
                    "not askable: in world {world} god {god} could be {mode} with no consistent answer (turn not consumed)"
                ),
            };
        }
        let coin = if self.rng.next_u32().is_multiple_of(2) {
            CoinFace::Heads
        } else {
            CoinFace::Tails
        };
        self.coin_faces.push(coin);
        let answer = draw_answer(&q, &self.hidden, god, coin, &mut self.rng, self.variant)
            .expect("askable questions always have an answer in the hidden world");
        self.belief = update(&self.belief, &q, god, answer, self.variant)
            .expect("observed answers always have positive probability");
        self.events.push(AskRecord {
            addressee: god,
            question: q.to_string(),
            answer,
            belief_after: self.belief.clone(),
        });
        PlayReply::Answered {
            addressee: god,
            answer,
        }
    }

    /// The full transcript, with every probability rendered as `num/den`.
    pub fn transcript(&self) -> Value {
        json!({
            "seed": self.seed,
            "variant": self.variant.to_string(),
            "hidden_world": self.hidden.label(),
            "coin_faces": self.coin_faces.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "questions": self.events.iter().map(|e| json!({
                "to": e.addressee.to_string(),
                "question": e.question,
                "answer": e.answer.to_string(),
                "belief_after": e.belief_after.to_json(),
            })).collect::<Vec<_>>(),
            "final_guess": self.outcome.as_ref().map(|o| o.guess.to_string()),
            "verdict": match &self.outcome {
                Some(o) if o.success => "success",
                Some(_) => "failure",
                None => "abandoned",
            },
        })
    }

    pub fn transcript_string(&self) -> String {
        serde_json::to_string_pretty(&self.transcript()).unwrap() + "\n"
    }
}

/// Draws a world index exactly according to the prior: the weights are scaled
/// to a common denominator and a uniform integer below the total is drawn by
/// rejection sampling on the rng's bit stream.
fn sample_world(prior: &Prior, rng: &mut ChaCha8Rng) -> World {
    let mut denom_lcm = BigInt::one();
    for w in prior.weights() {
        denom_lcm = denom_lcm.lcm(w.denom());
    }
    let scaled: Vec<BigUint> = prior
        .weights()
        .iter()
        .map(|w| (w.numer() * (&denom_lcm / w.denom())).to_biguint().unwrap())
        .collect();
    // The weights sum to 1, so the scaled weights sum to the denominator.
    let total = denom_lcm.to_biguint().unwrap();
    let draw = uniform_below(rng, &total);
    let mut acc = BigUint::zero();
    for (i, w) in scaled.iter().enumerate() {
        acc += w;
        if draw < acc {
            return World::from_index(i).unwrap();
        }
    }
    World::from_index(WORLD_COUNT - 1).unwrap()
}

fn uniform_below(rng: &mut ChaCha8Rng, bound: &BigUint) -> BigUint {
    debug_assert!(!bound.is_zero());
    if *bound == BigUint::one() {
        return BigUint::zero();
    }
    let bits = bound.bits();
    let bytes = bits.div_ceil(8) as usize;
    let excess = (bytes as u64 * 8 - bits) as u32;
    loop {
        let mut buf = vec![0u8; bytes];
        rng.fill_bytes(&mut buf);
        buf[0] >>= excess;
        let candidate = BigUint::from_bytes_be(&buf);
        if candidate < *bound {
            return candidate;
        }
    }
}

fn cmd_play(
    seed: u64,
    variant: RandomVariant,
    prior_path: Option<PathBuf>,
    max_questions: usize,
    out: Option<PathBuf>,
) -> ExitCode {
    let prior = match load_prior(&prior_path) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let mut session = PlaySession::new(seed, &prior, variant, max_questions);
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let mut output = stdout.lock();
    let _ = writeln!(
        output,
        "Three gods, {} questions. Commands: \"ask <god>: <question>\", \"guess <S1..S6>\".",
        max_questions
    );
    for line in stdin.lock().lines() {
        let Ok(line) = line else { break };
        if line.trim().is_empty() {
            continue;
        }
        match session.submit(&line) {
            PlayReply::Answered { addressee, answer } => {
                let _ = writeln!(output, "{addressee} answers: {answer}");
            }
            PlayReply::Rejected { reason } => {
                let _ = writeln!(output, "rejected: {reason}");
            }
            PlayReply::Error { message } => {
                let _ = writeln!(output, "error: {message}");
            }
            PlayReply::Finished {
                hidden,
                guess,
                success,
            } => {
                let _ = writeln!(
                    output,
                    "The hidden world was {hidden}. Your guess {guess} is {}.",
                    if success { "correct" } else { "wrong" }
                );
                break;
            }
        }
    }
    let transcript = session.transcript_string();
    if let Err(e) = emit(&transcript, &out) {
        eprintln!("{e}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

fn cmd_eval(
    question_text: &str,
    world_spec: &str,
    addressee: &str,
    mode_spec: &str,
    variant: RandomVariant,
    format: FormatArg,
) -> ExitCode {
    let q = match question::parse(question_text) {
        Ok(q) => q,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let god: GodName = match addressee.parse() {
        Ok(g) => g,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let worlds: Vec<World> = if world_spec.eq_ignore_ascii_case("all") {
        all_worlds()
    } else {
        match World::from_label(world_spec) {
            Ok(w) => vec![w],
            Err(e) => {
                eprintln!("{e}");
                return ExitCode::from(2);
            }
        }
    };
    // Rows of (world, mode, answer set).
    let mut rows: Vec<(World, SpeakingMode, String)> = Vec::new();
    for world in &worlds {
        let modes: Vec<SpeakingMode> = match mode_spec.to_ascii_lowercase().as_str() {
            "truthful" => vec![SpeakingMode::Truthful],
            "lying" => vec![SpeakingMode::Lying],
            "both" => vec![SpeakingMode::Truthful, SpeakingMode::Lying],
            "heads" => vec![speaking_mode(role_of(world.scenario, god), CoinFace::Heads)],
            "tails" => vec![speaking_mode(role_of(world.scenario, god), CoinFace::Tails)],
            "realizable" => realizable_modes(world, god).to_vec(),
            other => {
                eprintln!(
                    "unknown mode {other:?} (expected truthful, lying, both, heads, tails, or realizable)"
                );
                return ExitCode::from(2);
            }
        };
        for mode in modes {
            let set = answer_set(&q, world, god, mode, variant);
            rows.push((*world, mode, set.to_string()));
        }
    }
    let text = match format {
        FormatArg::Text => {
            let mut s = format!("question: {q}\naddressee: {god}\n");
            s.push_str(&format!(
                "{:<12} {:<10} {}\n",
                "world", "mode", "answer set"
            ));
            for (world, mode, set) in &rows {
                s.push_str(&format!(
                    "{:<12} {:<10} {}\n",
                    world.label(),
                    mode.to_string(),
                    set
                ));
            }
            s
        }
        FormatArg::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(world, mode, set)| {
                    json!({"world": world.label(), "mode": mode.to_string(), "answer_set": set})
                })
                .collect();
            serde_json::to_string_pretty(&json!({
                "question": q.to_string(),
                "addressee": god.to_string(),
                "rows": rows,
            }))
            .unwrap()
                + "\n"
        }
    };
    print!("{text}");
    ExitCode::SUCCESS
}
