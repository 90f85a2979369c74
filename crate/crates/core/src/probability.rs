//! The chances of solving the puzzle early: the claimed totals and per-case
//! products for zero, one, and two questions, the admissibility chances of
//! the self-referential question, and a report that puts the claimed values
//! beside the engine-computed optima without resolving their disagreements.

use serde_json::{json, Value};
use thiserror::Error;

use crate::oracle::{admissible, speaking_mode, RandomVariant};
use crate::question::Question;
use crate::rational::{format_ratio, ratio, Rational};
use crate::search::{optimal_success, SearchConfig, SearchError};
use crate::world::{all_worlds, role_of, CoinFace, GodName, Prior};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no claimed probability for solving in {0} questions (supported: 0, 1, 2)")]
pub struct OutOfRange(pub usize);

/// The claimed probability of solving the puzzle with `k` questions:
/// 1/6, 1/6, and 1/3 for k = 0, 1, 2.
pub fn claimed_probability(k: usize) -> Result<Rational, OutOfRange> {
    match k {
        0 => Ok(ratio(1, 6)),
        1 => Ok(ratio(1, 6)),
        2 => Ok(ratio(1, 3)),
        _ => Err(OutOfRange(k)),
    }
}

/// The per-case products in the proofs of the one- and two-question chances,
/// each evaluated as the exact product of its stated factors:
/// k = 1 → [(1/3)×(1/2), (2/3)×(1/4)]; k = 2 → [(1/3)×1, (2/3)×1×(1/2)].
pub fn claimed_case_terms(k: usize) -> Result<Vec<Rational>, OutOfRange> {
    match k {
        1 => Ok(vec![ratio(1, 3) * ratio(1, 2), ratio(2, 3) * ratio(1, 4)]),
        2 => Ok(vec![
            ratio(1, 3) * ratio(1, 1),
            ratio(2, 3) * ratio(1, 1) * ratio(1, 2),
        ]),
        _ => Err(OutOfRange(k)),
    }
}

/// Probability that `q` is admissible as a first question, split by coin
/// face: a uniform addressee (1/3 each) over uniform worlds, with each case
/// carrying the 1/2 coin weight.
pub fn first_step_admissibility(q: &Question, variant: RandomVariant) -> (Rational, Rational) {
    let mut per_face = [ratio(0, 1), ratio(0, 1)];
    for (fi, coin) in CoinFace::ALL.iter().enumerate() {
        let mut admissible_weight = ratio(0, 1);
        for g in GodName::ALL {
            for world in all_worlds() {
                let mode = speaking_mode(role_of(world.scenario, g), *coin);
                if admissible(q, &world, g, mode, variant) {
                    admissible_weight += ratio(1, 3) * ratio(1, 12);
                }
            }
        }
        per_face[fi] = ratio(1, 2) * admissible_weight;
    }
    let [heads, tails] = per_face;
    (heads, tails)
}

/// One row of the report: everything known about solving with `k` questions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub k: usize,
    pub claimed: Rational,
    /// Per-case products from the proof; empty for k = 0, where the claim is
    /// direct.
    pub case_terms: Vec<Rational>,
    pub case_sum: Option<Rational>,
    pub engine_optimum: Rational,
    pub engine_matches_claimed: bool,
    pub engine_matches_case_sum: Option<bool>,
}

/// Claimed values, per-case products, and engine-computed optima side by
/// side, with agreement flags computed rather than assumed. Neither source of
/// numbers is ever suppressed in favor of the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChancesReport {
    pub rows: Vec<ReportRow>,
}

pub fn chances_report(
    prior: &Prior,
    variant: RandomVariant,
    config: &SearchConfig,
) -> Result<ChancesReport, SearchError> {
    let mut rows = Vec::new();
    for k in 0..=2 {
        let claimed = claimed_probability(k).expect("k is in range");
        let case_terms = claimed_case_terms(k).unwrap_or_default();
        let case_sum = (!case_terms.is_empty()).then(|| case_terms.iter().sum::<Rational>());
        let engine_optimum = optimal_success(k, prior, variant, config)?;
        rows.push(ReportRow {
            k,
            engine_matches_claimed: engine_optimum == claimed,
            engine_matches_case_sum: case_sum.as_ref().map(|s| *s == engine_optimum),
            claimed,
            case_terms,
            case_sum,
            engine_optimum,
        });
    }
    Ok(ChancesReport { rows })
}

impl ChancesReport {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "questions": r.k,
                    "claimed": format_ratio(&r.claimed),
                    "case_terms": r.case_terms.iter().map(format_ratio).collect::<Vec<_>>(),
                    "case_sum": r.case_sum.as_ref().map(format_ratio),
                    "engine_optimum": format_ratio(&r.engine_optimum),
                    "engine_matches_claimed": r.engine_matches_claimed,
                    "engine_matches_case_sum": r.engine_matches_case_sum,
                })
            })
            .collect();
        json!({ "chances": rows })
    }

    /// Aligned plain-text table.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<10} {:<10} {:<18} {:<10} {:<10} {:<8} {:<8}\n",
            "questions", "claimed", "case terms", "case sum", "engine", "=claim", "=cases"
        ));
        for r in &self.rows {
            let terms = if r.case_terms.is_empty() {
                "-".to_string()
            } else {
                r.case_terms
                    .iter()
                    .map(format_ratio)
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            out.push_str(&format!(
                "{:<10} {:<10} {:<18} {:<10} {:<10} {:<8} {:<8}\n",
                r.k,
                format_ratio(&r.claimed),
                terms,
                r.case_sum
                    .as_ref()
                    .map(format_ratio)
                    .unwrap_or_else(|| "-".into()),
                format_ratio(&r.engine_optimum),
                if r.engine_matches_claimed {
                    "yes"
                } else {
                    "no"
                },
                r.engine_matches_case_sum
                    .map(|b| if b { "yes" } else { "no" })
                    .unwrap_or("-"),
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::question::{parse, question_q};
    use crate::world::uniform_prior;

    #[test]
    fn claimed_values_are_one_sixth_one_sixth_one_third() {
        assert_eq!(claimed_probability(0).unwrap(), ratio(1, 6));
        assert_eq!(claimed_probability(1).unwrap(), ratio(1, 6));
        assert_eq!(claimed_probability(2).unwrap(), ratio(1, 3));
        assert_eq!(claimed_probability(3), Err(OutOfRange(3)));
    }

    #[test]
    fn case_terms_are_the_exact_products() {
        assert_eq!(
            claimed_case_terms(1).unwrap(),
            vec![ratio(1, 6), ratio(1, 6)]
        );
        assert_eq!(
            claimed_case_terms(2).unwrap(),
            vec![ratio(1, 3), ratio(1, 3)]
        );
        assert_eq!(
            claimed_case_terms(1).unwrap().iter().sum::<Rational>(),
            ratio(1, 3)
        );
        assert!(claimed_case_terms(0).is_err());
    }

    #[test]
    fn the_blocked_question_has_the_stated_admissibility_chances() {
        let (heads, tails) = first_step_admissibility(&question_q(), RandomVariant::BoolosCoin);
        assert_eq!(heads, ratio(1, 6));
        assert_eq!(tails, ratio(1, 3));
        assert_eq!(heads + tails, ratio(1, 2));
    }

    #[test]
    fn extensional_questions_are_always_admissible() {
        let q = parse("da means yes iff B is Random").unwrap();
        let (heads, tails) = first_step_admissibility(&q, RandomVariant::BoolosCoin);
        assert_eq!(heads, ratio(1, 2));
        assert_eq!(tails, ratio(1, 2));
    }

    #[test]
    fn the_rabern_variant_frees_random_in_both_coin_cases() {
        let (heads, tails) = first_step_admissibility(&question_q(), RandomVariant::RabernUniform);
        assert_eq!(heads, ratio(1, 3));
        assert_eq!(tails, ratio(1, 3));
    }

    #[test]
    fn the_report_shows_both_sources_and_computes_the_flags() {
        let report = chances_report(
            &uniform_prior(),
            RandomVariant::BoolosCoin,
            &SearchConfig::default(),
        )
        .unwrap();
        assert_eq!(report.rows.len(), 3);

        let r0 = &report.rows[0];
        assert_eq!(r0.engine_optimum, ratio(1, 6));
        assert!(r0.engine_matches_claimed);
        assert!(r0.case_terms.is_empty());

        // The engine optima exceed the claimed totals for one and two
        // questions but equal the proofs' own case sums.
        let r1 = &report.rows[1];
        assert_eq!(r1.engine_optimum, ratio(1, 3));
        assert!(!r1.engine_matches_claimed);
        assert_eq!(r1.engine_matches_case_sum, Some(true));

        let r2 = &report.rows[2];
        assert_eq!(r2.engine_optimum, ratio(2, 3));
        assert!(!r2.engine_matches_claimed);
        assert_eq!(r2.engine_matches_case_sum, Some(true));

        let text = report.render_text();
        assert!(text.contains("1/6") && text.contains("1/3") && text.contains("2/3"));
        let json = report.to_json();
        assert_eq!(json["chances"][1]["claimed"], "1/6");
        assert_eq!(json["chances"][1]["engine_optimum"], "1/3");
    }
}
