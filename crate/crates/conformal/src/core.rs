//! Shared domain types and the score-based conformity measure.
//!
//! An example is an object (feature vector) with an optional discrete label.
//! A conformity measure turns a labeled example into a real score measuring
//! how well it agrees with the proper training set; the shipped form is
//! `Δ(y, f(x))` for a pluggable object scorer `f`, which for binary labels
//! is `f(x)` on the positive label and `-f(x)` on the negative one.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::conditional::Taxonomy;
use crate::error::ConformalError;

/// A label identifier: an index into the dataset's [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label(pub u32);

/// A calibration category identifier.
///
/// Meaning depends on the taxonomy that produced it: the label id under the
/// label taxonomy, a 0/1 bin under a feature-threshold taxonomy, and
/// [`Category::UNCONDITIONAL`] when no taxonomy is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Category(pub u32);

impl Category {
    /// The single category of the constant taxonomy.
    pub const UNCONDITIONAL: Category = Category(0);
}

/// The finite label alphabet discovered at ingestion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn from_names(names: Vec<String>) -> Result<Self, ConformalError> {
        if names.is_empty() {
            return Err(ConformalError::InvalidParameter(
                "label alphabet is empty".into(),
            ));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(ConformalError::InvalidParameter(format!(
                    "duplicate label name {name:?}"
                )));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn id(&self, name: &str) -> Option<Label> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Label(i as u32))
    }

    pub fn name(&self, label: Label) -> &str {
        &self.names[label.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        (0..self.names.len() as u32).map(Label)
    }
}

/// One data point: a feature vector plus an optional label.
///
/// `id` is the example's provenance index (its row in the ingested dataset,
/// before any permutation); score files and split-disjointness checks key on
/// it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Example {
    pub id: usize,
    pub features: Vec<f64>,
    pub label: Option<Label>,
}

impl Example {
    pub fn labeled(id: usize, features: Vec<f64>, label: Label) -> Self {
        Example {
            id,
            features,
            label: Some(label),
        }
    }

    pub fn unlabeled(id: usize, features: Vec<f64>) -> Self {
        Example {
            id,
            features,
            label: None,
        }
    }

    /// A copy with the label removed, as presented to a set predictor.
    pub fn without_label(&self) -> Example {
        Example {
            id: self.id,
            features: self.features.clone(),
            label: None,
        }
    }
}

/// A dataset split into proper training, calibration, and test parts.
#[derive(Debug, Clone)]
pub struct SplitDataset {
    pub proper_training: Vec<Example>,
    pub calibration: Vec<Example>,
    pub test: Vec<Example>,
}

impl SplitDataset {
    /// Checks the split invariants: both training parts nonempty and all
    /// three parts disjoint by example id.
    pub fn new(
        proper_training: Vec<Example>,
        calibration: Vec<Example>,
        test: Vec<Example>,
    ) -> Result<Self, ConformalError> {
        if proper_training.is_empty() {
            return Err(ConformalError::InvalidSplit(
                "proper training set is empty".into(),
            ));
        }
        if calibration.is_empty() {
            return Err(ConformalError::InvalidSplit(
                "calibration set is empty".into(),
            ));
        }
        let mut seen = HashSet::new();
        for ex in proper_training
            .iter()
            .chain(calibration.iter())
            .chain(test.iter())
        {
            if !seen.insert(ex.id) {
                return Err(ConformalError::InvalidSplit(format!(
                    "example id {} appears in more than one part",
                    ex.id
                )));
            }
        }
        Ok(SplitDataset {
            proper_training,
            calibration,
            test,
        })
    }

    pub fn calibration_size(&self) -> usize {
        self.calibration.len()
    }
}

/// The underlying point predictor `f` mapping an object to a real score.
///
/// Implementations are fitted from (or otherwise bound to) the proper
/// training set before use, so `value` is a pure function of the example.
pub trait ObjectScorer: Send + Sync {
    fn value(&self, example: &Example) -> Result<f64, ConformalError>;
}

impl<S: ObjectScorer + ?Sized> ObjectScorer for &S {
    fn value(&self, example: &Example) -> Result<f64, ConformalError> {
        (**self).value(example)
    }
}

impl<S: ObjectScorer + ?Sized> ObjectScorer for Arc<S> {
    fn value(&self, example: &Example) -> Result<f64, ConformalError> {
        (**self).value(example)
    }
}

/// A rule assigning a conformity score to `(object, candidate label)`.
///
/// The proper training set enters through construction (e.g. by fitting the
/// underlying scorer), after which scoring is deterministic: identical
/// inputs yield identical scores, bit for bit.
pub trait ConformityMeasure: Send + Sync {
    fn score(&self, example: &Example, candidate: Label) -> Result<f64, ConformalError>;
}

/// The score-based binary conformity measure: `f(x)` for the positive label
/// and `-f(x)` otherwise.
#[derive(Debug, Clone)]
pub struct BinaryScoreMeasure<S> {
    scorer: S,
    positive: Label,
}

impl<S: ObjectScorer> BinaryScoreMeasure<S> {
    pub fn new(scorer: S, positive: Label) -> Self {
        BinaryScoreMeasure { scorer, positive }
    }

    pub fn positive_label(&self) -> Label {
        self.positive
    }

    pub fn scorer(&self) -> &S {
        &self.scorer
    }
}

impl<S: ObjectScorer> ConformityMeasure for BinaryScoreMeasure<S> {
    fn score(&self, example: &Example, candidate: Label) -> Result<f64, ConformalError> {
        let f = self.scorer.value(example)?;
        Ok(if candidate == self.positive { f } else { -f })
    }
}

/// Conformity score of a labeled example.
pub fn score_example(
    measure: &dyn ConformityMeasure,
    example: &Example,
) -> Result<f64, ConformalError> {
    let label = example
        .label
        .ok_or(ConformalError::UnlabeledExample { id: example.id })?;
    measure.score(example, label)
}

/// One calibrated data point: a conformity score and its category.
///
/// Records are immutable once the predictor is constructed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationRecord {
    pub score: f64,
    pub category: Category,
}

/// Scores the calibration part of `dataset` and assigns categories.
///
/// With `taxonomy = None` every record lands in [`Category::UNCONDITIONAL`].
/// Output is order-aligned with `dataset.calibration`, one record per
/// example.
pub fn calibrate(
    measure: &dyn ConformityMeasure,
    dataset: &SplitDataset,
    taxonomy: Option<&Taxonomy>,
) -> Result<Vec<CalibrationRecord>, ConformalError> {
    calibrate_examples(measure, &dataset.calibration, taxonomy)
}

/// As [`calibrate`], over a bare slice of labeled examples.
pub fn calibrate_examples(
    measure: &dyn ConformityMeasure,
    calibration: &[Example],
    taxonomy: Option<&Taxonomy>,
) -> Result<Vec<CalibrationRecord>, ConformalError> {
    if calibration.is_empty() {
        return Err(ConformalError::EmptyCalibration);
    }
    calibration
        .iter()
        .map(|ex| {
            let label = ex
                .label
                .ok_or(ConformalError::UnlabeledExample { id: ex.id })?;
            let score = measure.score(ex, label)?;
            let category = match taxonomy {
                Some(t) => t.category(ex, label),
                None => Category::UNCONDITIONAL,
            };
            Ok(CalibrationRecord { score, category })
        })
        .collect()
}
