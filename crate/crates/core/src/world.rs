//! The finite sample space of the puzzle: three gods, three roles, the six
//! identification scenarios, the two possible word meanings, coin faces, and
//! priors over the twelve resulting worlds.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{format_ratio, ratio, Rational};

/// The three gods, in their fixed tie-breaking order `A < B < C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GodName {
    A,
    B,
    C,
}

impl GodName {
    pub const ALL: [GodName; 3] = [GodName::A, GodName::B, GodName::C];
}

impl fmt::Display for GodName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GodName::A => write!(f, "A"),
            GodName::B => write!(f, "B"),
            GodName::C => write!(f, "C"),
        }
    }
}

impl FromStr for GodName {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, LabelError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(GodName::A),
            "B" => Ok(GodName::B),
            "C" => Ok(GodName::C),
            _ => Err(LabelError::God(s.to_owned())),
        }
    }
}

/// A god's nature: truth-teller, liar, or coin-driven.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    True,
    False,
    Random,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::True, Role::False, Role::Random];
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::True => write!(f, "True"),
            Role::False => write!(f, "False"),
            Role::Random => write!(f, "Random"),
        }
    }
}

impl FromStr for Role {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, LabelError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "true" => Ok(Role::True),
            "false" => Ok(Role::False),
            "random" => Ok(Role::Random),
            _ => Err(LabelError::Role(s.to_owned())),
        }
    }
}

/// One of the six ways of assigning True, False, and Random to A, B, and C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScenarioId {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 6] = [
        ScenarioId::S1,
        ScenarioId::S2,
        ScenarioId::S3,
        ScenarioId::S4,
        ScenarioId::S5,
        ScenarioId::S6,
    ];

    /// Zero-based position in the canonical `S1..S6` order.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<ScenarioId> {
        ScenarioId::ALL.get(i).copied()
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", self.index() + 1)
    }
}

impl FromStr for ScenarioId {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, LabelError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "S1" => Ok(ScenarioId::S1),
            "S2" => Ok(ScenarioId::S2),
            "S3" => Ok(ScenarioId::S3),
            "S4" => Ok(ScenarioId::S4),
            "S5" => Ok(ScenarioId::S5),
            "S6" => Ok(ScenarioId::S6),
            _ => Err(LabelError::Scenario(s.to_owned())),
        }
    }
}

/// Which role each god has in a given scenario.
pub fn role_of(scenario: ScenarioId, god: GodName) -> Role {
    use GodName::*;
    use Role::*;
    use ScenarioId::*;
    match (scenario, god) {
        (S1, A) => True,
        (S1, B) => False,
        (S1, C) => Random,
        (S2, A) => True,
        (S2, B) => Random,
        (S2, C) => False,
        (S3, A) => False,
        (S3, B) => True,
        (S3, C) => Random,
        (S4, A) => False,
        (S4, B) => Random,
        (S4, C) => True,
        (S5, A) => Random,
        (S5, B) => True,
        (S5, C) => False,
        (S6, A) => Random,
        (S6, B) => False,
        (S6, C) => True,
    }
}

/// What "da" and "ja" mean. The two words always mean different things, so a
/// single bit pins the whole bijection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LanguageMap {
    da_means_yes: bool,
}

impl LanguageMap {
    pub const ALL: [LanguageMap; 2] = [
        LanguageMap { da_means_yes: true },
        LanguageMap {
            da_means_yes: false,
        },
    ];

    pub fn da_yes() -> LanguageMap {
        LanguageMap { da_means_yes: true }
    }

    pub fn da_no() -> LanguageMap {
        LanguageMap {
            da_means_yes: false,
        }
    }

    pub fn da_means_yes(self) -> bool {
        self.da_means_yes
    }

    pub fn label(self) -> &'static str {
        if self.da_means_yes {
            "da=yes"
        } else {
            "da=no"
        }
    }

    pub fn from_label(s: &str) -> Result<LanguageMap, LabelError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "da=yes" => Ok(LanguageMap::da_yes()),
            "da=no" => Ok(LanguageMap::da_no()),
            _ => Err(LabelError::Language(s.to_owned())),
        }
    }
}

impl fmt::Display for LanguageMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The full hidden state: a scenario plus a word meaning. Twelve in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct World {
    pub scenario: ScenarioId,
    pub language: LanguageMap,
}

pub const WORLD_COUNT: usize = 12;

impl World {
    pub fn new(scenario: ScenarioId, language: LanguageMap) -> World {
        World { scenario, language }
    }

    /// Zero-based position in the canonical order: scenarios `S1..S6`, and
    /// within each scenario `da=yes` before `da=no`.
    pub fn index(self) -> usize {
        self.scenario.index() * 2 + if self.language.da_means_yes() { 0 } else { 1 }
    }

    pub fn from_index(i: usize) -> Option<World> {
        if i >= WORLD_COUNT {
            return None;
        }
        let scenario = ScenarioId::from_index(i / 2)?;
        let language = if i.is_multiple_of(2) {
            LanguageMap::da_yes()
        } else {
            LanguageMap::da_no()
        };
        Some(World { scenario, language })
    }

    /// Canonical label, e.g. `S4/da=no`.
    pub fn label(self) -> String {
        format!("{}/{}", self.scenario, self.language)
    }

    pub fn from_label(s: &str) -> Result<World, LabelError> {
        let (sc, lang) = s
            .split_once('/')
            .ok_or_else(|| LabelError::World(s.to_owned()))?;
        Ok(World {
            scenario: sc.parse()?,
            language: LanguageMap::from_label(lang)?,
        })
    }
}

impl fmt::Display for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// All twelve worlds in canonical order.
pub fn all_worlds() -> Vec<World> {
    (0..WORLD_COUNT)
        .map(|i| World::from_index(i).unwrap())
        .collect()
}

/// The outcome of the coin in Random's head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoinFace {
    Heads,
    Tails,
}

impl CoinFace {
    pub const ALL: [CoinFace; 2] = [CoinFace::Heads, CoinFace::Tails];
}

impl fmt::Display for CoinFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoinFace::Heads => write!(f, "heads"),
            CoinFace::Tails => write!(f, "tails"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("unknown god name {0:?} (expected A, B, or C)")]
    God(String),
    #[error("unknown role {0:?} (expected True, False, or Random)")]
    Role(String),
    #[error("unknown scenario {0:?} (expected S1..S6)")]
    Scenario(String),
    #[error("unknown language map {0:?} (expected da=yes or da=no)")]
    Language(String),
    #[error("unknown world label {0:?} (expected e.g. S4/da=no)")]
    World(String),
    #[error("unknown answer word {0:?} (expected da or ja)")]
    Answer(String),
    #[error("unknown variant {0:?} (expected boolos or rabern)")]
    Variant(String),
}

/// An exact probability distribution over the twelve worlds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prior {
    weights: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PriorError {
    #[error("prior must assign a weight to each of the {WORLD_COUNT} worlds, got {0}")]
    WrongLength(usize),
    #[error("prior weight for world {world} is negative")]
    Negative { world: String },
    #[error("prior weights must sum to exactly 1, got {sum}")]
    SumNotOne { sum: String },
}

impl Prior {
    /// Weights in canonical world order; must be nonnegative and sum to exactly 1.
    pub fn new(weights: Vec<Rational>) -> Result<Prior, PriorError> {
        if weights.len() != WORLD_COUNT {
            return Err(PriorError::WrongLength(weights.len()));
        }
        for (i, w) in weights.iter().enumerate() {
            if *w < Rational::zero() {
                return Err(PriorError::Negative {
                    world: World::from_index(i).unwrap().label(),
                });
            }
        }
        let sum: Rational = weights.iter().sum();
        if !sum.is_one() {
            return Err(PriorError::SumNotOne {
                sum: format_ratio(&sum),
            });
        }
        Ok(Prior { weights })
    }

    /// A prior that puts all mass on one world.
    pub fn concentrated(world: World) -> Prior {
        let mut weights = vec![Rational::zero(); WORLD_COUNT];
        weights[world.index()] = Rational::one();
        Prior { weights }
    }

    pub fn weight(&self, world: World) -> &Rational {
        &self.weights[world.index()]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Total weight of the two worlds sharing a scenario.
    pub fn scenario_mass(&self, scenario: ScenarioId) -> Rational {
        &self.weights[scenario.index() * 2] + &self.weights[scenario.index() * 2 + 1]
    }

    /// Largest mass any single scenario carries.
    pub fn max_scenario_mass(&self) -> Rational {
        ScenarioId::ALL
            .iter()
            .map(|s| self.scenario_mass(*s))
            .max()
            .unwrap()
    }
}

/// The independent uniform prior: each scenario 1/6, each language map 1/2,
/// so each world exactly 1/12.
pub fn uniform_prior() -> Prior {
    Prior {
        weights: vec![ratio(1, 12); WORLD_COUNT],
    }
}
