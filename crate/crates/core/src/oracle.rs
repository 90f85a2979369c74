//! God answering semantics.
//!
//! A god uttering a word asserts the question's truth value: a word meaning
//! "yes" asserts the question holds, a word meaning "no" asserts it does not.
//! A truthful god's assertion must be correct, a lying god's must be wrong.
//! For self-referential questions the uttered word feeds back into the
//! question's own truth value, so the set of consistent words can be empty
//! (the god cannot answer at all) or contain both words.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::belief::BeliefState;
use crate::question::{evaluate, Answer, Question};
use crate::rational::{ratio, Rational};
use crate::world::{role_of, CoinFace, GodName, LabelError, Role, World};

/// Whether a god currently asserts truths or falsehoods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpeakingMode {
    Truthful,
    Lying,
}

impl fmt::Display for SpeakingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpeakingMode::Truthful => write!(f, "Truthful"),
            SpeakingMode::Lying => write!(f, "Lying"),
        }
    }
}

/// How the Random god behaves.
///
/// `BoolosCoin` is the original rule: the hidden coin picks a speaking mode,
/// and Random then answers the question in that mode like a truth-teller or a
/// liar would. `RabernUniform` is the modified rule in which Random ignores
/// the question entirely and utters a uniformly random word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RandomVariant {
    BoolosCoin,
    RabernUniform,
}

impl fmt::Display for RandomVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RandomVariant::BoolosCoin => write!(f, "boolos"),
            RandomVariant::RabernUniform => write!(f, "rabern"),
        }
    }
}

impl FromStr for RandomVariant {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, LabelError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "boolos" => Ok(RandomVariant::BoolosCoin),
            "rabern" => Ok(RandomVariant::RabernUniform),
            _ => Err(LabelError::Variant(s.to_owned())),
        }
    }
}

/// The words a god can utter without violating its nature. Empty encodes
/// inadmissibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AnswerSet(u8);

impl AnswerSet {
    pub fn empty() -> AnswerSet {
        AnswerSet(0)
    }

    pub fn both() -> AnswerSet {
        AnswerSet(0b11)
    }

    pub fn singleton(a: Answer) -> AnswerSet {
        let mut s = AnswerSet::empty();
        s.insert(a);
        s
    }

    fn bit(a: Answer) -> u8 {
        match a {
            Answer::Da => 0b01,
            Answer::Ja => 0b10,
        }
    }

    pub fn insert(&mut self, a: Answer) {
        self.0 |= Self::bit(a);
    }

    pub fn contains(self, a: Answer) -> bool {
        self.0 & Self::bit(a) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Answer> {
        Answer::ALL.into_iter().filter(move |a| self.contains(*a))
    }
}

impl fmt::Display for AnswerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for a in self.iter() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// Speaking modes the addressee could actually be in, in a given world.
pub fn realizable_modes(world: &World, addressee: GodName) -> &'static [SpeakingMode] {
    match role_of(world.scenario, addressee) {
        Role::True => &[SpeakingMode::Truthful],
        Role::False => &[SpeakingMode::Lying],
        Role::Random => &[SpeakingMode::Truthful, SpeakingMode::Lying],
    }
}

/// The mode a role speaks in for a given coin face. The coin matters only for
/// Random: heads means truthful, tails means lying.
pub fn speaking_mode(role: Role, coin: CoinFace) -> SpeakingMode {
    match role {
        Role::True => SpeakingMode::Truthful,
        Role::False => SpeakingMode::Lying,
        Role::Random => match coin {
            CoinFace::Heads => SpeakingMode::Truthful,
            CoinFace::Tails => SpeakingMode::Lying,
        },
    }
}

/// Fixed-point answer set: the words the addressee can utter in the given
/// speaking mode. Under `RabernUniform`, a Random addressee always has both
/// words available regardless of the question.
pub fn answer_set(
    q: &Question,
    world: &World,
    addressee: GodName,
    mode: SpeakingMode,
    variant: RandomVariant,
) -> AnswerSet {
    if variant == RandomVariant::RabernUniform && role_of(world.scenario, addressee) == Role::Random
    {
        return AnswerSet::both();
    }
    let mut set = AnswerSet::empty();
    for a in Answer::ALL {
        // The candidate is always supplied, so evaluation cannot fail.
        let holds = evaluate(q, world, addressee, Some(a)).expect("candidate supplied");
        let asserted = a.means_yes(world.language);
        let consistent = match mode {
            SpeakingMode::Truthful => asserted == holds,
            SpeakingMode::Lying => asserted != holds,
        };
        if consistent {
            set.insert(a);
        }
    }
    set
}

/// A question is admissible when the god will answer it: the answer set is
/// non-empty.
pub fn admissible(
    q: &Question,
    world: &World,
    addressee: GodName,
    mode: SpeakingMode,
    variant: RandomVariant,
) -> bool {
    !answer_set(q, world, addressee, mode, variant).is_empty()
}

/// A question is askable relative to a belief state when it is admissible for
/// the addressee in every world of the support and every speaking mode the
/// addressee could be in there.
pub fn askable(
    q: &Question,
    addressee: GodName,
    belief: &BeliefState,
    variant: RandomVariant,
) -> bool {
    askable_witness(q, addressee, belief, variant).is_none()
}

/// The first (world, mode) pair, in canonical order, that makes the question
/// unaskable; `None` when the question is askable.
pub fn askable_witness(
    q: &Question,
    addressee: GodName,
    belief: &BeliefState,
    variant: RandomVariant,
) -> Option<(World, SpeakingMode)> {
    for world in belief.support() {
        for mode in realizable_modes(&world, addressee) {
            if !admissible(q, &world, addressee, *mode, variant) {
                return Some((world, *mode));
            }
        }
    }
    None
}

/// Raised when a god is forced into a question it cannot answer; a question
/// like that should have been rejected as unaskable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error(
    "in world {world}, god {addressee} speaking {mode} has no consistent answer to {question:?}"
)]
pub struct NatureViolation {
    pub world: World,
    pub addressee: GodName,
    pub mode: SpeakingMode,
    pub question: String,
}

/// The word the god actually utters. Singleton sets are deterministic; a
/// two-word set is sampled uniformly from the rng.
pub fn draw_answer(
    q: &Question,
    world: &World,
    addressee: GodName,
    coin: CoinFace,
    rng: &mut impl Rng,
    variant: RandomVariant,
) -> Result<Answer, NatureViolation> {
    let mode = speaking_mode(role_of(world.scenario, addressee), coin);
    let set = answer_set(q, world, addressee, mode, variant);
    match set.len() {
        0 => Err(NatureViolation {
            world: *world,
            addressee,
            mode,
            question: q.to_string(),
        }),
        1 => Ok(set.iter().next().unwrap()),
        _ => Ok(if rng.gen_range(0..2u8) == 0 {
            Answer::Da
        } else {
            Answer::Ja
        }),
    }
}

/// Exact probability that the addressee utters "da" in this world, with the
/// coin and any two-word ties marginalized out. Errors when some realizable
/// mode has an empty answer set.
pub fn answer_distribution(
    q: &Question,
    world: &World,
    addressee: GodName,
    variant: RandomVariant,
) -> Result<Rational, NatureViolation> {
    if variant == RandomVariant::RabernUniform && role_of(world.scenario, addressee) == Role::Random
    {
        return Ok(ratio(1, 2));
    }
    let modes = realizable_modes(world, addressee);
    let mut p_da = ratio(0, 1);
    for mode in modes {
        let set = answer_set(q, world, addressee, *mode, variant);
        if set.is_empty() {
            return Err(NatureViolation {
                world: *world,
                addressee,
                mode: *mode,
                question: q.to_string(),
            });
        }
        if set.contains(Answer::Da) {
            p_da += ratio(1, set.len() as i64);
        }
    }
    Ok(p_da / ratio(modes.len() as i64, 1))
}
