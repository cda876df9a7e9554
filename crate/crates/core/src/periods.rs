//! Period sequences `Σ [fⁱ] tⁱ` and the period condition.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::iseries::{iseries, SeriesPrefix};
use crate::laurent::{Coefficient, LaurentPolynomial};
use crate::quiver::{decompose, ModelSpec};
use crate::superpotential::eliminate;
use crate::IntPoly;

/// `[f⁰], [f¹], …, [f^order]` over any coefficient ring.
///
/// Only the powers up to `⌈order/2⌉` are expanded, each from the previous
/// one; `[f^i]` is then the pairing of `f^{⌈i/2⌉}` with `f^{⌊i/2⌋}`.
pub fn power_constant_terms<C: Coefficient>(f: &LaurentPolynomial<C>, order: usize) -> Vec<C> {
    let half = order.div_ceil(2);
    let powers = f.powers(half);
    (0..=order)
        .map(|i| {
            powers[i - i / 2]
                .pairing(&powers[i / 2])
                .expect("powers share a variable table")
        })
        .collect()
}

pub fn constant_terms_of_powers(f: &IntPoly, order: usize) -> SeriesPrefix {
    SeriesPrefix {
        coefficients: power_constant_terms(f, order),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch { index: usize, lhs: BigInt, rhs: BigInt },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Match => write!(f, "match"),
            Verdict::Mismatch { index, lhs, rhs } => {
                write!(f, "mismatch at t^{index}: [f^{index}] = {lhs}, I-series {rhs}")
            }
        }
    }
}

/// Order-by-order comparison of the period sequence with the I-series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub spec: ModelSpec,
    pub order: usize,
    pub lhs: SeriesPrefix,
    pub rhs: SeriesPrefix,
    pub verdict: Verdict,
}

impl PeriodReport {
    pub fn compare(spec: ModelSpec, lhs: SeriesPrefix, rhs: SeriesPrefix) -> Self {
        let order = lhs.order();
        let verdict = lhs
            .coefficients
            .iter()
            .zip(&rhs.coefficients)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map_or(Verdict::Match, |(index, (a, b))| Verdict::Mismatch {
                index,
                lhs: a.clone(),
                rhs: b.clone(),
            });
        Self { spec, order, lhs, rhs, verdict }
    }

    pub fn is_match(&self) -> bool {
        self.verdict == Verdict::Match
    }

    pub fn to_json(&self) -> PeriodReportJson<'_> {
        let first_mismatch = match &self.verdict {
            Verdict::Match => None,
            Verdict::Mismatch { index, .. } => Some(*index),
        };
        PeriodReportJson {
            spec: &self.spec,
            order: self.order,
            lhs: self.lhs.to_strings(),
            rhs: self.rhs.to_strings(),
            verdict: if self.is_match() { "match" } else { "mismatch" },
            first_mismatch,
        }
    }
}

/// `{"order": N, "lhs": [...], "rhs": [...], "verdict": "match"}` plus the spec.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodReportJson<'a> {
    pub spec: &'a ModelSpec,
    pub order: usize,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<usize>,
}

/// Eliminates the model and compares its period sequence with the I-series up to `order`.
pub fn check_period(spec: &ModelSpec, order: usize) -> Result<PeriodReport> {
    let f = eliminate(&decompose(spec))?;
    let lhs = constant_terms_of_powers(&f, order);
    let rhs = iseries(spec, order)?;
    Ok(PeriodReport::compare(spec.clone(), lhs, rhs))
}
