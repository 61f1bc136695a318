//! Binary classification scores with the minority class as positive.

use serde::{Deserialize, Serialize};

use crate::data::Label;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: usize,
    pub fn_: usize,
    pub fp: usize,
    pub tn: usize,
}

impl Confusion {
    pub fn tally(truth: &[Label], pred: &[Label], positive: Label) -> Result<Confusion> {
        if truth.len() != pred.len() {
            return Err(Error::LengthMismatch(truth.len(), pred.len()));
        }
        if truth.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut c = Confusion::default();
        for (&t, &p) in truth.iter().zip(pred) {
            match (t == positive, p == positive) {
                (true, true) => c.tp += 1,
                (true, false) => c.fn_ += 1,
                (false, true) => c.fp += 1,
                (false, false) => c.tn += 1,
            }
        }
        Ok(c)
    }

    pub fn total(&self) -> usize {
        self.tp + self.fn_ + self.fp + self.tn
    }
}

/// Degenerate denominators encountered while scoring. Each affected score is
/// reported as 0.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UndefinedFlags {
    pub no_positives: bool,
    pub no_predicted_positives: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    pub recall: f64,
    pub accuracy: f64,
    pub f1: f64,
    pub confusion: Confusion,
    pub undefined: UndefinedFlags,
}

pub fn score(truth: &[Label], pred: &[Label], minority: Label) -> Result<Scores> {
    let c = Confusion::tally(truth, pred, minority)?;
    let mut undefined = UndefinedFlags::default();
    let recall = if c.tp + c.fn_ == 0 {
        undefined.no_positives = true;
        0.0
    } else {
        c.tp as f64 / (c.tp + c.fn_) as f64
    };
    if c.tp + c.fp == 0 {
        undefined.no_predicted_positives = true;
    }
    let f1_den = 2 * c.tp + c.fp + c.fn_;
    let f1 = if f1_den == 0 { 0.0 } else { 2.0 * c.tp as f64 / f1_den as f64 };
    let accuracy = (c.tp + c.tn) as f64 / c.total() as f64;
    Ok(Scores { recall, accuracy, f1, confusion: c, undefined })
}
