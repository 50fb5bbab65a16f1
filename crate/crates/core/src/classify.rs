//! The linear-forest dichotomy for forbidden graphs on at most seven vertices.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_CLASSIFY: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// `H` is a disjoint union of paths.
    PolynomialLinearForest,
    /// `H` has a cycle or a vertex of degree three.
    NPCompleteExpected,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::PolynomialLinearForest => "PolynomialLinearForest",
            Classification::NPCompleteExpected => "NPCompleteExpected",
        })
    }
}

pub fn classify(h: &Graph) -> Result<Classification> {
    if h.vertex_count() > MAX_CLASSIFY {
        return Err(Error::usage(format!(
            "classification covers graphs on at most {MAX_CLASSIFY} vertices, got {}",
            h.vertex_count()
        )));
    }
    Ok(if h.is_linear_forest() {
        Classification::PolynomialLinearForest
    } else {
        Classification::NPCompleteExpected
    })
}
