use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Degree;

/// Dimensions per degree, zero entries omitted. Serialized as a JSON object
/// keyed by the degree as a string.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(BTreeMap<Degree, usize>);

impl GradedDims {
    pub fn get(&self, k: Degree) -> usize {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Degree, usize)> + '_ {
        self.0.iter().map(|(&k, &n)| (k, n))
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimensions of a tensor product: `(a * b)_n = Σ_{p+q=n} a_p b_q`.
    pub fn convolve(&self, other: &GradedDims) -> GradedDims {
        let mut out = BTreeMap::new();
        for (&p, &a) in &self.0 {
            for (&q, &b) in &other.0 {
                *out.entry(p + q).or_insert(0) += a * b;
            }
        }
        GradedDims::from_iter(out)
    }

    pub fn add(&self, other: &GradedDims) -> GradedDims {
        let mut out = self.0.clone();
        for (&k, &n) in &other.0 {
            *out.entry(k).or_insert(0) += n;
        }
        GradedDims(out)
    }

    pub fn scale(&self, s: usize) -> GradedDims {
        GradedDims::from_iter(self.0.iter().map(|(&k, &n)| (k, n * s)))
    }

    pub fn shift(&self, by: Degree) -> GradedDims {
        GradedDims(self.0.iter().map(|(&k, &n)| (k + by, n)).collect())
    }

    /// `Σ (-1)^k dim_k`.
    pub fn euler(&self) -> i64 {
        self.0.iter().map(|(&k, &n)| if k.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Sum of the dimensions in even (`parity = 0`) or odd degrees.
    pub fn parity_total(&self, parity: Degree) -> usize {
        self.0.iter().filter(|(&k, _)| k.rem_euclid(2) == parity).map(|(_, &n)| n).sum()
    }
}

impl FromIterator<(Degree, usize)> for GradedDims {
    fn from_iter<I: IntoIterator<Item = (Degree, usize)>>(iter: I) -> GradedDims {
        let mut out = BTreeMap::new();
        for (k, n) in iter {
            *out.entry(k).or_insert(0) += n;
        }
        out.retain(|_, n| *n > 0);
        GradedDims(out)
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let cells: Vec<String> = self.0.iter().map(|(k, n)| format!("{k}:{n}")).collect();
        write!(f, "{{{}}}", cells.join(", "))
    }
}

impl fmt::Debug for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
