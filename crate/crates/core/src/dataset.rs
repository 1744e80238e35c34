//! Paired samples of a bivariate relationship, the unit of analysis.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The five generated relationship families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationshipClass {
    Linear,
    Quadratic,
    Quartic,
    Gaussian,
    Sinusoid,
}

impl RelationshipClass {
    /// All classes in canonical order.
    pub const ALL: [RelationshipClass; 5] = [
        RelationshipClass::Linear,
        RelationshipClass::Quadratic,
        RelationshipClass::Quartic,
        RelationshipClass::Gaussian,
        RelationshipClass::Sinusoid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationshipClass::Linear => "Linear",
            RelationshipClass::Quadratic => "Quadratic",
            RelationshipClass::Quartic => "Quartic",
            RelationshipClass::Gaussian => "Gaussian",
            RelationshipClass::Sinusoid => "Sinusoid",
        }
    }

    /// Number of coefficients the class's generator expects.
    pub fn arity(self) -> usize {
        match self {
            RelationshipClass::Linear => 2,
            RelationshipClass::Quadratic => 3,
            RelationshipClass::Quartic => 5,
            RelationshipClass::Gaussian => 3,
            RelationshipClass::Sinusoid => 3,
        }
    }
}

impl fmt::Display for RelationshipClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationshipClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        for class in Self::ALL {
            if s.eq_ignore_ascii_case(class.name()) {
                return Ok(class);
            }
        }
        Err(Error::UnknownClass(s.to_string()))
    }
}

/// Paired numeric samples (x, y) of equal length, optionally tagged with the
/// relationship class that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    xs: Vec<f64>,
    ys: Vec<f64>,
    label: Option<RelationshipClass>,
}

impl Dataset {
    /// Builds a dataset, validating that both sequences have the same length,
    /// hold at least two samples, and contain only finite values.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        Self::with_label(xs, ys, None)
    }

    pub fn with_label(
        xs: Vec<f64>,
        ys: Vec<f64>,
        label: Option<RelationshipClass>,
    ) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch(xs.len(), ys.len()));
        }
        if xs.len() < 2 {
            return Err(Error::TooFewSamples {
                got: xs.len(),
                min: 2,
            });
        }
        if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { xs, ys, label })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn label(&self) -> Option<RelationshipClass> {
        self.label
    }

    pub fn set_label(&mut self, label: Option<RelationshipClass>) {
        self.label = label;
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn is_sorted_by_x(&self) -> bool {
        self.xs.windows(2).all(|w| w[0] <= w[1])
    }

    /// Returns a copy ordered by ascending x. The sort is stable, so samples
    /// with equal x keep their original relative order.
    pub fn sorted_by_x(&self) -> Dataset {
        if self.is_sorted_by_x() {
            return self.clone();
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.xs[a].partial_cmp(&self.xs[b]).unwrap());
        Dataset {
            xs: order.iter().map(|&i| self.xs[i]).collect(),
            ys: order.iter().map(|&i| self.ys[i]).collect(),
            label: self.label,
        }
    }
}
