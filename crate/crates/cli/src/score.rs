//! Rating-card scoring shared by `ontology score` and `POST /api/v1/score`.

use std::collections::BTreeMap;

use ontology_core::exact::{format_rational, two_decimals};
use ontology_core::rubric::RubricError;
use ontology_core::{Category, RatingCard};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScoreReport {
    pub scores: BTreeMap<Category, String>,
    pub scores_exact: BTreeMap<Category, String>,
    pub average: String,
    pub average_exact: String,
    pub endorsed: bool,
}

pub fn score_card(card: &RatingCard) -> Result<ScoreReport, RubricError> {
    let scores = card.scores()?;
    let agg = ontology_core::aggregate(card)?;
    Ok(ScoreReport {
        scores: scores.iter().map(|(c, s)| (c, two_decimals(s.to_rational()))).collect(),
        scores_exact: scores.iter().map(|(c, s)| (c, format_rational(s.to_rational()))).collect(),
        average: agg.display,
        average_exact: format_rational(agg.average),
        endorsed: agg.endorsed,
    })
}

impl ScoreReport {
    /// Plain-text rendering: one line per category, then the average.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (c, s) in &self.scores {
            out.push_str(&format!("{:<14} {s}\n", c.as_str()));
        }
        let verdict = if self.endorsed { "ENDORSED" } else { "NOT ENDORSED" };
        out.push_str(&format!("{:<14} {} {verdict}\n", "average", self.average));
        out.push_str(&format!("{:<14} {}\n", "exact", self.average_exact));
        out
    }
}
