//! Question ASTs, the text DSL, and question evaluation.
//!
//! A question is a boolean formula over world facts (`A is Random`,
//! `da means yes`), addressee facts (`you are True`), and one self-referential
//! atom (`you answer no-word`) whose truth depends on the answer being given.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::oracle::{answer_set, RandomVariant, SpeakingMode};
use crate::rational::{ratio, Rational};
use crate::world::{
    role_of, GodName, LabelError, LanguageMap, Role, ScenarioId, World, WORLD_COUNT,
};

/// A word a god can utter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Answer {
    Da,
    Ja,
}

impl Answer {
    pub const ALL: [Answer; 2] = [Answer::Da, Answer::Ja];

    /// Whether this word means "yes" under the given language map.
    pub fn means_yes(self, language: LanguageMap) -> bool {
        (self == Answer::Da) == language.da_means_yes()
    }

    /// The word that carries the given meaning under the language map.
    pub fn word_meaning(language: LanguageMap, yes: bool) -> Answer {
        if language.da_means_yes() == yes {
            Answer::Da
        } else {
            Answer::Ja
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Da => write!(f, "da"),
            Answer::Ja => write!(f, "ja"),
        }
    }
}

impl FromStr for Answer {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, LabelError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "da" => Ok(Answer::Da),
            "ja" => Ok(Answer::Ja),
            _ => Err(LabelError::Answer(s.to_owned())),
        }
    }
}

/// A yes-no question.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Question {
    ConstTrue,
    ConstFalse,
    IsRole(GodName, Role),
    DaMeansYes,
    YouAre(Role),
    AnswerMeansNo,
    Not(Box<Question>),
    And(Box<Question>, Box<Question>),
    Or(Box<Question>, Box<Question>),
    Implies(Box<Question>, Box<Question>),
    Iff(Box<Question>, Box<Question>),
}

pub fn not(q: Question) -> Question {
    Question::Not(Box::new(q))
}

pub fn and(a: Question, b: Question) -> Question {
    Question::And(Box::new(a), Box::new(b))
}

pub fn or(a: Question, b: Question) -> Question {
    Question::Or(Box::new(a), Box::new(b))
}

pub fn implies(a: Question, b: Question) -> Question {
    Question::Implies(Box::new(a), Box::new(b))
}

pub fn iff(a: Question, b: Question) -> Question {
    Question::Iff(Box::new(a), Box::new(b))
}

pub fn is_role(god: GodName, role: Role) -> Question {
    Question::IsRole(god, role)
}

pub fn you_are(role: Role) -> Question {
    Question::YouAre(role)
}

pub fn da_means_yes() -> Question {
    Question::DaMeansYes
}

pub fn answer_means_no() -> Question {
    Question::AnswerMeansNo
}

/// The self-referential question of the puzzle: "Are you going to answer this
/// question with a word that means no in your language?"
pub fn question_q() -> Question {
    Question::AnswerMeansNo
}

/// True iff the question contains the self-referential atom, so that its
/// truth value depends on the answer being given.
pub fn is_self_referential(q: &Question) -> bool {
    match q {
        Question::AnswerMeansNo => true,
        Question::ConstTrue
        | Question::ConstFalse
        | Question::IsRole(..)
        | Question::DaMeansYes
        | Question::YouAre(..) => false,
        Question::Not(x) => is_self_referential(x),
        Question::And(l, r)
        | Question::Or(l, r)
        | Question::Implies(l, r)
        | Question::Iff(l, r) => is_self_referential(l) || is_self_referential(r),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("the question is self-referential: a candidate answer is required to evaluate it")]
    MissingCandidate,
}

/// Truth value of a question in a world, relative to the god it is addressed
/// to and (for self-referential questions) the answer under consideration.
pub fn evaluate(
    q: &Question,
    world: &World,
    addressee: GodName,
    candidate: Option<Answer>,
) -> Result<bool, EvalError> {
    Ok(match q {
        Question::ConstTrue => true,
        Question::ConstFalse => false,
        Question::IsRole(god, role) => role_of(world.scenario, *god) == *role,
        Question::DaMeansYes => world.language.da_means_yes(),
        Question::YouAre(role) => role_of(world.scenario, addressee) == *role,
        Question::AnswerMeansNo => {
            let answer = candidate.ok_or(EvalError::MissingCandidate)?;
            !answer.means_yes(world.language)
        }
        Question::Not(x) => !evaluate(x, world, addressee, candidate)?,
        Question::And(l, r) => {
            evaluate(l, world, addressee, candidate)? && evaluate(r, world, addressee, candidate)?
        }
        Question::Or(l, r) => {
            evaluate(l, world, addressee, candidate)? || evaluate(r, world, addressee, candidate)?
        }
        Question::Implies(l, r) => {
            !evaluate(l, world, addressee, candidate)? || evaluate(r, world, addressee, candidate)?
        }
        Question::Iff(l, r) => {
            evaluate(l, world, addressee, candidate)? == evaluate(r, world, addressee, candidate)?
        }
    })
}

// Printer precedence levels. `not` always parenthesizes its operand, so it
// needs no level of its own.
fn level(q: &Question) -> u8 {
    match q {
        Question::Iff(..) | Question::Implies(..) => 0,
        Question::Or(..) => 1,
        Question::And(..) => 2,
        _ => 3,
    }
}

fn print_prec(q: &Question, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(q) < min {
        write!(out, "(")?;
        print_prec(q, 0, out)?;
        return write!(out, ")");
    }
    match q {
        Question::ConstTrue => write!(out, "true"),
        Question::ConstFalse => write!(out, "false"),
        Question::IsRole(god, role) => write!(out, "{god} is {role}"),
        Question::DaMeansYes => write!(out, "da means yes"),
        Question::YouAre(role) => write!(out, "you are {role}"),
        Question::AnswerMeansNo => write!(out, "you answer no-word"),
        Question::Not(x) => {
            write!(out, "not (")?;
            print_prec(x, 0, out)?;
            write!(out, ")")
        }
        Question::And(l, r) => {
            print_prec(l, 2, out)?;
            write!(out, " and ")?;
            print_prec(r, 3, out)
        }
        Question::Or(l, r) => {
            print_prec(l, 1, out)?;
            write!(out, " or ")?;
            print_prec(r, 2, out)
        }
        Question::Implies(l, r) => {
            print_prec(l, 1, out)?;
            write!(out, " implies ")?;
            print_prec(r, 1, out)
        }
        Question::Iff(l, r) => {
            print_prec(l, 1, out)?;
            write!(out, " iff ")?;
            print_prec(r, 1, out)
        }
    }
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print_prec(self, 0, f)
    }
}

/// Canonical DSL text for a question; `parse(print(q))` is structurally `q`.
pub fn print(q: &Question) -> String {
    q.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

struct Token {
    text: String,
    start: usize,
}

fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_ascii_whitespace() {
            chars.next();
        } else if c == '(' || c == ')' {
            chars.next();
            tokens.push(Token {
                text: c.to_string(),
                start: pos,
            });
        } else if c.is_ascii_alphabetic() || c == '-' {
            let mut word = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_alphabetic() || c == '-' {
                    word.push(c.to_ascii_lowercase());
                    chars.next();
                } else {
                    break;
                }
            }
            tokens.push(Token {
                text: word,
                start: pos,
            });
        } else {
            return Err(ParseError {
                position: pos,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(|t| t.text.as_str())
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|t| t.start)
            .unwrap_or(self.input_len)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.here(),
            message: message.into(),
        }
    }

    fn expect_word(&mut self, word: &str) -> Result<(), ParseError> {
        if self.peek() == Some(word) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {:?}, found {}",
                word,
                self.peek()
                    .map(|t| format!("{t:?}"))
                    .unwrap_or_else(|| "end of input".into())
            )))
        }
    }

    fn parse_role(&mut self) -> Result<Role, ParseError> {
        match self.peek() {
            Some("true") => {
                self.pos += 1;
                Ok(Role::True)
            }
            Some("false") => {
                self.pos += 1;
                Ok(Role::False)
            }
            Some("random") => {
                self.pos += 1;
                Ok(Role::Random)
            }
            Some(other) => Err(self.error(format!(
                "unknown role {other:?} (expected True, False, or Random)"
            ))),
            None => Err(self.error("expected a role, found end of input")),
        }
    }

    fn parse_formula(&mut self) -> Result<Question, ParseError> {
        let lhs = self.parse_or()?;
        match self.peek() {
            Some("iff") => {
                self.pos += 1;
                let rhs = self.parse_or()?;
                Ok(iff(lhs, rhs))
            }
            Some("implies") => {
                self.pos += 1;
                let rhs = self.parse_or()?;
                Ok(implies(lhs, rhs))
            }
            _ => Ok(lhs),
        }
    }

    fn parse_or(&mut self) -> Result<Question, ParseError> {
        let mut lhs = self.parse_and()?;
        while self.peek() == Some("or") {
            self.pos += 1;
            let rhs = self.parse_and()?;
            lhs = or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Question, ParseError> {
        let mut lhs = self.parse_unary()?;
        while self.peek() == Some("and") {
            self.pos += 1;
            let rhs = self.parse_unary()?;
            lhs = and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Question, ParseError> {
        match self.peek() {
            Some("not") => {
                self.pos += 1;
                Ok(not(self.parse_unary()?))
            }
            Some("(") => {
                self.pos += 1;
                let inner = self.parse_formula()?;
                if self.peek() == Some(")") {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(self.error("expected \")\""))
                }
            }
            _ => self.parse_atom(),
        }
    }

    fn parse_atom(&mut self) -> Result<Question, ParseError> {
        let word = match self.peek() {
            Some(w) => w.to_owned(),
            None => return Err(self.error("expected a question atom, found end of input")),
        };
        match word.as_str() {
            "true" => {
                self.pos += 1;
                Ok(Question::ConstTrue)
            }
            "false" => {
                self.pos += 1;
                Ok(Question::ConstFalse)
            }
            "da" => {
                self.pos += 1;
                self.expect_word("means")?;
                self.expect_word("yes")?;
                Ok(Question::DaMeansYes)
            }
            "ja" => {
                self.pos += 1;
                self.expect_word("means")?;
                self.expect_word("yes")?;
                Ok(not(Question::DaMeansYes))
            }
            "you" => {
                self.pos += 1;
                match self.peek() {
                    Some("are") => {
                        self.pos += 1;
                        Ok(Question::YouAre(self.parse_role()?))
                    }
                    Some("answer") => {
                        self.pos += 1;
                        self.expect_word("no-word")?;
                        Ok(Question::AnswerMeansNo)
                    }
                    _ => Err(self.error("expected \"are\" or \"answer\" after \"you\"")),
                }
            }
            "a" | "b" | "c" => {
                let god = match word.as_str() {
                    "a" => GodName::A,
                    "b" => GodName::B,
                    _ => GodName::C,
                };
                self.pos += 1;
                self.expect_word("is")?;
                Ok(Question::IsRole(god, self.parse_role()?))
            }
            other => Err(self.error(format!("expected a question atom, found {other:?}"))),
        }
    }
}

/// Parses DSL text into a question AST.
pub fn parse(text: &str) -> Result<Question, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError {
            position: 0,
            message: "empty question".into(),
        });
    }
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        input_len: text.len(),
    };
    let q = parser.parse_formula()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.error(format!(
            "unexpected trailing input {:?}",
            parser.peek().unwrap()
        )));
    }
    Ok(q)
}

/// Per-world answer behavior that a question induces for a given addressee.
///
/// Two questions with equal signatures are interchangeable in any strategy:
/// they produce the same answer distributions and the same askability in
/// every belief state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LikelihoodSignature {
    entries: Vec<SignatureEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SignatureEntry {
    /// Every mode the addressee could be in answers; `p_da` is the exact
    /// probability of hearing "da" (coin and ties marginalized).
    Marginal(Rational),
    /// Some realizable speaking mode has an empty answer set.
    Blocked { modes: Vec<SpeakingMode> },
}

impl LikelihoodSignature {
    pub fn entries(&self) -> &[SignatureEntry] {
        &self.entries
    }
}

/// Canonical dedupe key for search: the tuple over all twelve worlds of the
/// answer behavior the oracle produces for this (question, addressee) pair.
pub fn likelihood_signature(
    q: &Question,
    addressee: GodName,
    variant: RandomVariant,
) -> LikelihoodSignature {
    let entries = crate::world::all_worlds()
        .iter()
        .map(|world| {
            if variant == RandomVariant::RabernUniform
                && role_of(world.scenario, addressee) == Role::Random
            {
                return SignatureEntry::Marginal(ratio(1, 2));
            }
            let modes = crate::oracle::realizable_modes(world, addressee);
            let sets: Vec<_> = modes
                .iter()
                .map(|m| answer_set(q, world, addressee, *m, variant))
                .collect();
            let blocked: Vec<SpeakingMode> = modes
                .iter()
                .zip(&sets)
                .filter(|(_, s)| s.is_empty())
                .map(|(m, _)| *m)
                .collect();
            if !blocked.is_empty() {
                return SignatureEntry::Blocked { modes: blocked };
            }
            // Each realizable mode is equally likely (the coin is fair), and a
            // two-word answer set is sampled uniformly.
            let p_da: Rational = sets
                .iter()
                .map(|s| {
                    if s.contains(Answer::Da) {
                        ratio(1, s.len() as i64)
                    } else {
                        ratio(0, 1)
                    }
                })
                .sum::<Rational>()
                / ratio(modes.len() as i64, 1);
            SignatureEntry::Marginal(p_da)
        })
        .collect();
    LikelihoodSignature { entries }
}

/// Builds an extensional question whose truth vector over the twelve worlds
/// (in canonical order) equals the given bitmask. Used to span the full
/// extensional question space in search and tests.
pub fn question_for_world_mask(mask: u16) -> Question {
    assert!(mask < 1 << WORLD_COUNT, "mask must cover exactly 12 worlds");
    if mask == 0 {
        return Question::ConstFalse;
    }
    if mask == (1 << WORLD_COUNT) - 1 {
        return Question::ConstTrue;
    }
    let mut terms: Vec<Question> = Vec::new();
    for (i, s) in ScenarioId::ALL.iter().enumerate() {
        let with_da_yes = mask & (1 << (2 * i)) != 0;
        let with_da_no = mask & (1 << (2 * i + 1)) != 0;
        // Two role atoms pin a scenario: the roles are a bijection, so the
        // third god's role is forced.
        let descriptor = and(
            is_role(GodName::A, role_of(*s, GodName::A)),
            is_role(GodName::B, role_of(*s, GodName::B)),
        );
        match (with_da_yes, with_da_no) {
            (true, true) => terms.push(descriptor),
            (true, false) => terms.push(and(descriptor, da_means_yes())),
            (false, true) => terms.push(and(descriptor, not(da_means_yes()))),
            (false, false) => {}
        }
    }
    terms.into_iter().reduce(or).unwrap()
}

/// The truth vector of an extensional question, as a bitmask over the twelve
/// worlds in canonical order.
pub fn world_mask(q: &Question, addressee: GodName) -> Result<u16, EvalError> {
    let mut mask = 0u16;
    for world in crate::world::all_worlds() {
        if evaluate(q, &world, addressee, None)? {
            mask |= 1 << world.index();
        }
    }
    Ok(mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::LanguageMap;
    use std::collections::BTreeSet;

    fn world(scenario: ScenarioId, da_yes: bool) -> World {
        World::new(
            scenario,
            if da_yes {
                LanguageMap::da_yes()
            } else {
                LanguageMap::da_no()
            },
        )
    }

    #[test]
    fn parses_the_basic_atoms() {
        assert_eq!(
            parse("A is Random").unwrap(),
            Question::IsRole(GodName::A, Role::Random)
        );
        assert_eq!(
            parse("da means yes iff true").unwrap(),
            iff(Question::DaMeansYes, Question::ConstTrue)
        );
        assert_eq!(
            parse("you answer no-word").unwrap(),
            Question::AnswerMeansNo
        );
        assert_eq!(parse("ja means yes").unwrap(), not(Question::DaMeansYes));
        assert_eq!(
            parse("you are Random").unwrap(),
            Question::YouAre(Role::Random)
        );
    }

    #[test]
    fn keywords_are_case_insensitive() {
        assert_eq!(parse("a IS random").unwrap(), parse("A is Random").unwrap());
        assert_eq!(parse("DA MEANS YES").unwrap(), Question::DaMeansYes);
    }

    #[test]
    fn parses_connectives_with_expected_precedence() {
        // "and" binds tighter than "or", which binds tighter than "iff".
        let q = parse("A is True and da means yes or false iff B is Random").unwrap();
        assert_eq!(
            q,
            iff(
                or(
                    and(is_role(GodName::A, Role::True), Question::DaMeansYes),
                    Question::ConstFalse
                ),
                is_role(GodName::B, Role::Random)
            )
        );
        // Left associativity of chains.
        assert_eq!(
            parse("true or false or true").unwrap(),
            or(
                or(Question::ConstTrue, Question::ConstFalse),
                Question::ConstTrue
            )
        );
    }

    #[test]
    fn rejects_malformed_input_with_a_position() {
        let err = parse("A is Blue").unwrap_err();
        assert!(err.message.contains("Blue") || err.message.contains("blue"));
        assert_eq!(err.position, 5);
        assert!(parse("").is_err());
        assert!(parse("D is True").is_err());
        let trailing = parse("true true").unwrap_err();
        assert!(trailing.message.contains("trailing"));
        assert!(parse("da means no").is_err());
        assert!(parse("not").is_err());
        assert!(parse("(true").is_err());
        assert!(parse("true iff false iff true").is_err());
    }

    #[test]
    fn prints_the_canonical_forms() {
        assert_eq!(print(&is_role(GodName::B, Role::True)), "B is True");
        assert_eq!(print(&not(Question::DaMeansYes)), "not (da means yes)");
        assert_eq!(
            print(&iff(
                Question::DaMeansYes,
                is_role(GodName::B, Role::Random)
            )),
            "da means yes iff B is Random"
        );
    }

    #[test]
    fn printing_preserves_structure_through_reparse() {
        let samples = [
            iff(
                Question::DaMeansYes,
                iff(you_are(Role::True), is_role(GodName::B, Role::Random)),
            ),
            or(
                Question::ConstTrue,
                or(Question::ConstFalse, Question::ConstTrue),
            ),
            and(
                or(Question::DaMeansYes, Question::ConstFalse),
                not(you_are(Role::Random)),
            ),
            not(not(is_role(GodName::A, Role::Random))),
            implies(Question::AnswerMeansNo, Question::ConstFalse),
        ];
        for q in samples {
            assert_eq!(parse(&print(&q)).unwrap(), q, "round trip failed for {q}");
        }
    }

    #[test]
    fn detects_self_reference_anywhere_in_the_tree() {
        assert!(is_self_referential(&parse("you answer no-word").unwrap()));
        assert!(!is_self_referential(
            &parse("da means yes iff true").unwrap()
        ));
        assert!(is_self_referential(
            &parse("not (you answer no-word)").unwrap()
        ));
    }

    #[test]
    fn evaluates_atoms_against_the_world() {
        // A is Random in S5.
        let q = parse("A is Random").unwrap();
        assert!(evaluate(&q, &world(ScenarioId::S5, true), GodName::B, None).unwrap());
        // "you answer no-word" under da=yes with candidate Da: Da means yes.
        let q = parse("you answer no-word").unwrap();
        assert!(!evaluate(
            &q,
            &world(ScenarioId::S1, true),
            GodName::A,
            Some(Answer::Da)
        )
        .unwrap());
        // Derived by direct truth-table evaluation: in S2 B is Random, and with
        // da=no the biconditional pairs false with true.
        let q = parse("da means yes iff B is Random").unwrap();
        assert!(!evaluate(&q, &world(ScenarioId::S2, false), GodName::A, None).unwrap());
    }

    #[test]
    fn missing_candidate_is_an_error_only_when_the_atom_is_reached() {
        let q = parse("you answer no-word").unwrap();
        assert_eq!(
            evaluate(&q, &world(ScenarioId::S1, true), GodName::A, None),
            Err(EvalError::MissingCandidate)
        );
        // Short-circuiting skips the self-referential atom.
        let q = parse("false and you answer no-word").unwrap();
        assert_eq!(
            evaluate(&q, &world(ScenarioId::S1, true), GodName::A, None),
            Ok(false)
        );
    }

    #[test]
    fn negation_is_pointwise_over_all_worlds() {
        let q = parse("da means yes iff B is Random").unwrap();
        let n = not(q.clone());
        for w in crate::world::all_worlds() {
            for g in GodName::ALL {
                assert_eq!(
                    evaluate(&n, &w, g, None).unwrap(),
                    !evaluate(&q, &w, g, None).unwrap()
                );
            }
        }
    }

    #[test]
    fn world_mask_round_trips_through_question_building() {
        for mask in [0u16, 1, 0b1010_1010_1010, 0xfff, 0x123, 0x800] {
            let q = question_for_world_mask(mask);
            assert_eq!(world_mask(&q, GodName::A).unwrap(), mask, "mask {mask:#x}");
        }
    }

    #[test]
    fn signature_ignores_syntactic_differences() {
        let a = parse("A is Random").unwrap();
        let b = parse("not (not (A is Random))").unwrap();
        assert_eq!(
            likelihood_signature(&a, GodName::A, RandomVariant::BoolosCoin),
            likelihood_signature(&b, GodName::A, RandomVariant::BoolosCoin)
        );
        let t = Question::ConstTrue;
        let taut = parse("da means yes iff da means yes").unwrap();
        assert_eq!(
            likelihood_signature(&t, GodName::A, RandomVariant::BoolosCoin),
            likelihood_signature(&taut, GodName::A, RandomVariant::BoolosCoin)
        );
    }

    #[test]
    fn extensional_questions_collapse_to_at_most_256_signatures() {
        // Answers can only depend on the question's restriction to the eight
        // worlds where the addressee is not Random, hence at most 2^8 classes.
        for g in GodName::ALL {
            let mut seen = BTreeSet::new();
            for mask in 0..(1u16 << WORLD_COUNT) {
                let q = question_for_world_mask(mask);
                let sig = likelihood_signature(&q, g, RandomVariant::BoolosCoin);
                seen.insert(format!("{sig:?}"));
            }
            assert_eq!(seen.len(), 256, "addressee {g}");
        }
    }
}
