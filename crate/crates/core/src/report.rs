//! The intersection-multiplicity report shared by `chi` and the
//! transversality check.

use std::collections::BTreeMap;

use crate::field::Coeff;
use crate::groebner::Ideal;

/// Which of the conjectural cases an intersection falls in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    /// `dim A/I + dim A/J <= dim A`.
    pub decent: bool,
    /// `dim A/I + dim A/J < dim A`.
    pub vanishing_case: bool,
    /// `dim A/I + dim A/J = dim A`.
    pub positivity_case: bool,
    /// Set by the transversality check only.
    pub transverse: Option<bool>,
}

impl Classification {
    pub fn from_dims(dim_i: usize, dim_j: usize, ambient: usize) -> Self {
        let sum = dim_i + dim_j;
        Classification {
            decent: sum <= ambient,
            vanishing_case: sum < ambient,
            positivity_case: sum == ambient,
            transverse: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MultiplicityReport<C: Coeff> {
    /// `(dim A/I, dim A/J)`.
    pub dims: (usize, usize),
    pub ambient_dim: usize,
    /// `dim_k Tor_i(A/I, A/J)` for `i` up to the resolution length.
    pub tor_lengths: Vec<u64>,
    pub chi: i64,
    /// Point multiplicities `(e(A/I), e(A/J))`, when computed.
    pub e_values: Option<(u64, u64)>,
    /// Krull dimension of the sum of the tangent cones, when computed.
    pub cone_dimension: Option<usize>,
    pub classification: Classification,
    pub witnesses: BTreeMap<String, Ideal<C>>,
}

impl<C: Coeff> MultiplicityReport<C> {
    /// `e(A/I) e(A/J)`, when the multiplicities are known.
    pub fn e_product(&self) -> Option<u64> {
        self.e_values.map(|(a, b)| a * b)
    }
}
