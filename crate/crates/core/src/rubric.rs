//! Six-category benchmark rating rubric and the endorsement rule.
//!
//! Four categories are five-statement checklists worth one point per true
//! statement. Performance metrics combine a 0-3 definitions scale with a 0-2
//! quality scale. Any category may instead carry an explicit override in
//! half-point steps, which is how aggregate-only ratings are stored.
//!
//! All arithmetic is exact: category scores are counted in half points and the
//! average is a rational, so the endorsement threshold is never decided on a
//! rounded or floating-point value.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exact::{self, format_rational, two_decimals, Rational};

/// Averages at or above this value earn the endorsement.
pub const ENDORSEMENT_THRESHOLD: Rational = Ratio::new_raw(9, 2);

/// Maximum score of any single category.
pub const MAX_CATEGORY_SCORE: u8 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RubricError {
    #[error("missing score for category `{0}`: no checklist and no override")]
    MissingCategory(Category),
    #[error("metrics {scale} level {level} outside 0..={max}")]
    LevelOutOfRange { scale: &'static str, level: u8, max: u8 },
    #[error("invalid score {0}: must be a multiple of 1/2 in [0, 5]")]
    InvalidScore(String),
}

/// A category score in half-point steps within `[0, 5]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Score(u8);

impl Score {
    pub const ZERO: Score = Score(0);
    pub const MAX: Score = Score(2 * MAX_CATEGORY_SCORE);

    pub fn from_half_points(half_points: u8) -> Option<Score> {
        (half_points <= 2 * MAX_CATEGORY_SCORE).then_some(Score(half_points))
    }

    pub fn whole(points: u8) -> Option<Score> {
        points.checked_mul(2).and_then(Score::from_half_points)
    }

    pub fn from_rational(value: Rational) -> Result<Score, RubricError> {
        let doubled = value * 2;
        if !doubled.is_integer() || *doubled.numer() < 0 || *doubled.numer() > i64::from(Score::MAX.0) {
            return Err(RubricError::InvalidScore(format_rational(value)));
        }
        Ok(Score(*doubled.numer() as u8))
    }

    pub fn half_points(self) -> u8 {
        self.0
    }

    pub fn to_rational(self) -> Rational {
        Ratio::new(i64::from(self.0), 2)
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self.to_rational()))
    }
}

impl Serialize for Score {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Score {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let value = exact::deserialize(d)?;
        Score::from_rational(value).map_err(de::Error::custom)
    }
}

/// The six rubric categories, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Software,
    Specification,
    Dataset,
    Metrics,
    Reference,
    Documentation,
}

impl Category {
    pub const ALL: [Category; 6] = [
        Category::Software,
        Category::Specification,
        Category::Dataset,
        Category::Metrics,
        Category::Reference,
        Category::Documentation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Software => "software",
            Category::Specification => "specification",
            Category::Dataset => "dataset",
            Category::Metrics => "metrics",
            Category::Reference => "reference",
            Category::Documentation => "documentation",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A five-statement checklist worth one point per satisfied statement.
pub trait Checklist {
    fn criteria(&self) -> [bool; 5];
}

/// Counts the satisfied statements of a checklist.
pub fn score_category<C: Checklist + ?Sized>(checklist: &C) -> Score {
    let points = checklist.criteria().iter().filter(|&&c| c).count() as u8;
    Score(2 * points)
}

macro_rules! checklist {
    ($(#[$meta:meta])* $name:ident { $($field:ident),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
        #[serde(deny_unknown_fields)]
        pub struct $name {
            $(pub $field: bool,)+
        }

        impl $name {
            pub const FIELDS: [&'static str; 5] = [$(stringify!($field)),+];

            pub fn all(value: bool) -> Self {
                Self { $($field: value,)+ }
            }

            pub fn from_criteria(c: [bool; 5]) -> Self {
                let [$($field),+] = c;
                Self { $($field,)+ }
            }
        }

        impl Checklist for $name {
            fn criteria(&self) -> [bool; 5] {
                [$(self.$field),+]
            }
        }
    };
}

checklist!(
    /// Software environment of the reference solution.
    SoftwareChecklist {
        code_available,
        code_complete,
        code_documented,
        runs_unmodified,
        environment_provided,
    }
);

checklist!(
    /// Problem specification and system constraints.
    SpecificationChecklist {
        constraints_provided,
        task_clear,
        dataset_format_specified,
        inputs_specified,
        outputs_specified,
    }
);

checklist!(
    /// FAIR principles plus a defined train/test(/validation) split.
    DatasetChecklist {
        fair_findable,
        fair_accessible,
        fair_interoperable,
        fair_reusable,
        has_splits,
    }
);

checklist!(
    /// Availability and completeness of the reference solution.
    ReferenceChecklist {
        publicly_available,
        well_documented,
        requirements_listed,
        metrics_evaluated,
        baseline_open,
    }
);

checklist!(
    /// Task, background, motivation and evaluation documentation.
    DocumentationChecklist {
        task_documented,
        background_explained,
        motivation_explained,
        evaluation_explained,
        paper_exists,
    }
);

/// Performance metrics rating: how well defined (0-3) and how well they
/// capture a solution's performance (0-2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricsRating {
    pub definitions_level: u8,
    pub quality_level: u8,
}

impl MetricsRating {
    pub const MAX_DEFINITIONS: u8 = 3;
    pub const MAX_QUALITY: u8 = 2;
}

pub fn score_metrics(m: &MetricsRating) -> Result<Score, RubricError> {
    if m.definitions_level > MetricsRating::MAX_DEFINITIONS {
        return Err(RubricError::LevelOutOfRange {
            scale: "definitions",
            level: m.definitions_level,
            max: MetricsRating::MAX_DEFINITIONS,
        });
    }
    if m.quality_level > MetricsRating::MAX_QUALITY {
        return Err(RubricError::LevelOutOfRange {
            scale: "quality",
            level: m.quality_level,
            max: MetricsRating::MAX_QUALITY,
        });
    }
    Ok(Score(2 * (m.definitions_level + m.quality_level)))
}

/// Where a card's scores came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Every category was rated criterion by criterion.
    Checklist,
    /// Only the published average is known; overrides reconstruct it.
    AggregateOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatingCard {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub software: Option<SoftwareChecklist>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub specification: Option<SpecificationChecklist>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<DatasetChecklist>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<MetricsRating>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<ReferenceChecklist>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub documentation: Option<DocumentationChecklist>,
    /// Explicit category scores; these supersede checklist-derived scores.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<Category, Score>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl RatingCard {
    /// A card with every checklist filled and the given metrics levels.
    pub fn full(value: bool, metrics: MetricsRating) -> Self {
        RatingCard {
            software: Some(SoftwareChecklist::all(value)),
            specification: Some(SpecificationChecklist::all(value)),
            dataset: Some(DatasetChecklist::all(value)),
            metrics: Some(metrics),
            reference: Some(ReferenceChecklist::all(value)),
            documentation: Some(DocumentationChecklist::all(value)),
            overrides: BTreeMap::new(),
            provenance: Some(Provenance::Checklist),
        }
    }

    /// A card carrying only per-category scores.
    pub fn from_scores(scores: [Score; 6], provenance: Provenance) -> Self {
        RatingCard {
            overrides: Category::ALL.into_iter().zip(scores).collect(),
            provenance: Some(provenance),
            ..RatingCard::default()
        }
    }

    pub fn category_score(&self, category: Category) -> Result<Score, RubricError> {
        if let Some(score) = self.overrides.get(&category) {
            return Ok(*score);
        }
        let derived = match category {
            Category::Software => self.software.as_ref().map(score_category),
            Category::Specification => self.specification.as_ref().map(score_category),
            Category::Dataset => self.dataset.as_ref().map(score_category),
            Category::Reference => self.reference.as_ref().map(score_category),
            Category::Documentation => self.documentation.as_ref().map(score_category),
            Category::Metrics => self.metrics.as_ref().map(score_metrics).transpose()?,
        };
        derived.ok_or(RubricError::MissingCategory(category))
    }

    pub fn scores(&self) -> Result<CategoryScores, RubricError> {
        let mut out = [Score::ZERO; 6];
        for category in Category::ALL {
            out[category.index()] = self.category_score(category)?;
        }
        Ok(CategoryScores(out))
    }
}

/// The six category scores in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CategoryScores(pub [Score; 6]);

impl CategoryScores {
    pub fn get(&self, category: Category) -> Score {
        self.0[category.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Category, Score)> + '_ {
        Category::ALL.into_iter().zip(self.0)
    }

    pub fn sum(&self) -> Rational {
        let half_points: i64 = self.0.iter().map(|s| i64::from(s.half_points())).sum();
        Ratio::new(half_points, 2)
    }
}

impl Serialize for CategoryScores {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(6))?;
        for (category, score) in self.iter() {
            map.serialize_entry(category.as_str(), &score)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AggregateRating {
    /// Exact mean of the six category scores.
    #[serde(serialize_with = "exact::serialize")]
    pub average: Rational,
    /// `average` rounded half-up to two decimals.
    pub display: String,
    pub endorsed: bool,
}

impl AggregateRating {
    pub fn from_scores(scores: &CategoryScores) -> Self {
        let average = scores.sum() / 6;
        AggregateRating { average, display: two_decimals(average), endorsed: average >= ENDORSEMENT_THRESHOLD }
    }
}

/// Scores every category and derives the average and endorsement.
pub fn aggregate(card: &RatingCard) -> Result<AggregateRating, RubricError> {
    Ok(AggregateRating::from_scores(&card.scores()?))
}
