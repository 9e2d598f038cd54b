//! Bounded chain complexes of finite-dimensional Q-vector spaces.
//!
//! Differentials have degree `-1`: `d_k : C_k -> C_{k-1}` is stored as a
//! `dim C_{k-1} x dim C_k` matrix. Degrees with zero dimension and zero
//! differentials are never stored, so structural equality is equality of
//! complexes with their chosen bases.

mod chain_map;
mod dims;
mod ops;
mod tensor;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use chain_map::{ChainMap, Subcomplex};
pub use dims::GradedDims;
pub use ops::{
    cone, direct_sum, image_subcomplex, quotient, schur_split, BlockTriangleInput, Cone, Quotient, SchurReport,
    SplitImage,
};
pub use tensor::{braiding, tensor, TensorIndex, TensorProduct};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

pub type Degree = i32;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Complex {
    dims: BTreeMap<Degree, usize>,
    diffs: BTreeMap<Degree, Matrix>,
}

impl Complex {
    /// Validates shapes and `d ∘ d = 0`.
    pub fn new<D, M>(dims: D, differentials: M) -> Result<Complex>
    where
        D: IntoIterator<Item = (Degree, usize)>,
        M: IntoIterator<Item = (Degree, Matrix)>,
    {
        let c = Complex::from_parts(dims, differentials)?;
        c.check_square_zero()?;
        Ok(c)
    }

    /// Shape-checked but without the `d ∘ d` test, for callers whose
    /// construction guarantees it.
    pub(crate) fn from_parts<D, M>(dims: D, differentials: M) -> Result<Complex>
    where
        D: IntoIterator<Item = (Degree, usize)>,
        M: IntoIterator<Item = (Degree, Matrix)>,
    {
        let dims: BTreeMap<Degree, usize> = dims.into_iter().filter(|&(_, n)| n > 0).collect();
        let mut c = Complex { dims, diffs: BTreeMap::new() };
        for (k, m) in differentials {
            let expected = (c.dim(k - 1), c.dim(k));
            if m.shape() != expected {
                return Err(Error::Shape(format!(
                    "differential in degree {k} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    expected.0,
                    expected.1
                )));
            }
            if !m.is_zero() {
                c.diffs.insert(k, m);
            }
        }
        Ok(c)
    }

    fn check_square_zero(&self) -> Result<()> {
        for (&k, dk) in &self.diffs {
            if let Some(dk1) = self.diffs.get(&(k + 1)) {
                if !dk.mul(dk1)?.is_zero() {
                    return Err(Error::NonzeroSquare { degree: k + 1 });
                }
            }
        }
        Ok(())
    }

    /// A graded vector space with zero differential.
    pub fn graded<D: IntoIterator<Item = (Degree, usize)>>(dims: D) -> Complex {
        Complex::from_parts(dims, std::iter::empty()).expect("no differentials")
    }

    pub fn zero() -> Complex {
        Complex::default()
    }

    /// `Q` in degree 0, the tensor unit.
    pub fn unit() -> Complex {
        Complex::line(0)
    }

    /// `Q` in degree `k`.
    pub fn line(k: Degree) -> Complex {
        Complex::graded([(k, 1)])
    }

    pub fn dim(&self, k: Degree) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> GradedDims {
        GradedDims::from_iter(self.dims.iter().map(|(&k, &n)| (k, n)))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Degrees with nonzero dimension, increasing.
    pub fn degrees(&self) -> impl Iterator<Item = Degree> + '_ {
        self.dims.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// `d_k`, materialized as a zero matrix when not stored.
    pub fn d(&self, k: Degree) -> Matrix {
        self.diffs.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(k - 1), self.dim(k)))
    }

    pub(crate) fn d_ref(&self, k: Degree) -> Option<&Matrix> {
        self.diffs.get(&k)
    }

    /// Stored (nonzero) differentials.
    pub fn differentials(&self) -> impl Iterator<Item = (Degree, &Matrix)> {
        self.diffs.iter().map(|(&k, m)| (k, m))
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diffs.is_empty()
    }

    /// `(ΣC)_k = C_{k-1}` with the differential negated.
    pub fn shift(&self) -> Complex {
        self.shift_by(1)
    }

    /// `n`-fold suspension; the differential picks up `(-1)^n`.
    pub fn shift_by(&self, n: Degree) -> Complex {
        let neg = n.rem_euclid(2) == 1;
        Complex {
            dims: self.dims.iter().map(|(&k, &d)| (k + n, d)).collect(),
            diffs: self.diffs.iter().map(|(&k, m)| (k + n, if neg { m.neg() } else { m.clone() })).collect(),
        }
    }

    /// `dim H_k = dim C_k - rank d_k - rank d_{k+1}`.
    pub fn homology(&self) -> GradedDims {
        let ranks: BTreeMap<Degree, usize> = self.diffs.iter().map(|(&k, m)| (k, m.rank())).collect();
        let rank = |k: Degree| ranks.get(&k).copied().unwrap_or(0);
        GradedDims::from_iter(self.dims.iter().map(|(&k, &n)| (k, n - rank(k) - rank(k + 1))))
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology().is_zero()
    }

    /// The homology as a complex with zero differential.
    pub fn homology_complex(&self) -> Complex {
        Complex::graded(self.homology().iter())
    }

    /// Pieces in degrees of the given parity (0 even, 1 odd), with the
    /// differential dropped; used on complexes whose differential is zero.
    pub fn parity_part(&self, parity: Degree) -> Complex {
        Complex::graded(self.dims.iter().filter(|(&k, _)| k.rem_euclid(2) == parity).map(|(&k, &n)| (k, n)))
    }

    /// Transports the differential along degreewise invertible matrices:
    /// the result has `d'_k = P_{k-1}^{-1} d_k P_k`.
    pub fn change_basis(&self, basis: &BTreeMap<Degree, Matrix>) -> Result<Complex> {
        let p = |k: Degree| basis.get(&k).cloned().unwrap_or_else(|| Matrix::identity(self.dim(k)));
        let mut diffs = Vec::new();
        for (&k, dk) in &self.diffs {
            let inv = p(k - 1).inverse().ok_or(Error::NotInvertible { degree: k - 1 })?;
            diffs.push((k, inv.mul(dk)?.mul(&p(k))?));
        }
        Complex::from_parts(self.dims.clone(), diffs)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims().euler()
    }
}

/// Wire form: `{"degrees": {"0": 2}, "differentials": {"1": [["0"], ["1"]]}}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct ComplexJson {
    degrees: BTreeMap<Degree, usize>,
    #[serde(default)]
    differentials: BTreeMap<Degree, Vec<Vec<Rational>>>,
}

impl Serialize for Complex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson {
            degrees: self.dims.clone(),
            differentials: self.diffs.iter().map(|(&k, m)| (k, m.to_rows())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Complex, D::Error> {
        let raw = ComplexJson::deserialize(d)?;
        let dims = raw.degrees;
        let dim = |k: Degree| dims.get(&k).copied().unwrap_or(0);
        let mut diffs = Vec::new();
        for (k, rows) in raw.differentials {
            let m = matrix_from_rows(rows, dim(k - 1), dim(k)).map_err(serde::de::Error::custom)?;
            diffs.push((k, m));
        }
        Complex::new(dims.clone(), diffs).map_err(serde::de::Error::custom)
    }
}

/// Rows read from JSON, shaped against the dimensions they must have.
pub(crate) fn matrix_from_rows(rows: Vec<Vec<Rational>>, r: usize, c: usize) -> Result<Matrix> {
    if rows.len() != r {
        return Err(Error::Shape(format!("{} rows given, expected {r}", rows.len())));
    }
    Matrix::from_rows(rows, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(rows)
    }

    /// `0 -> Q -> Q^2 -> 0` in degrees 1, 0.
    fn injective() -> Complex {
        Complex::new([(0, 2), (1, 1)], [(1, m(&[&[1], &[1]]))]).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(matches!(Complex::new([(0, 2), (1, 1)], [(1, m(&[&[1, 0]]))]), Err(Error::Shape(_))));
        let nonzero_sq = Complex::new([(0, 1), (1, 1), (2, 1)], [(1, m(&[&[1]])), (2, m(&[&[1]]))]);
        assert_eq!(nonzero_sq, Err(Error::NonzeroSquare { degree: 2 }));
        let c = Complex::new([(0, 1), (3, 0)], [(1, Matrix::zeros(1, 0))]).unwrap();
        assert_eq!(c.degrees().collect::<Vec<_>>(), vec![0]);
        assert!(c.has_zero_differential());
    }

    #[test]
    fn homology_examples() {
        let g = Complex::graded([(0, 2), (3, 1)]);
        assert_eq!(g.homology(), g.dims());
        assert_eq!(injective().homology(), GradedDims::from_iter([(0, 1)]));
        let contractible = Complex::new([(0, 1), (1, 1)], [(1, m(&[&[2]]))]).unwrap();
        assert!(contractible.is_acyclic());
    }

    #[test]
    fn shifts() {
        assert_eq!(Complex::unit().shift(), Complex::line(1));
        let c = injective();
        let s = c.shift();
        assert_eq!(s.d(2), c.d(1).neg());
        assert_eq!(s.shift().dims(), c.dims().shift(2));
        assert_eq!(s.shift().d(3), c.d(1));
        assert_eq!(s.homology(), c.homology().shift(1));
    }

    #[test]
    fn json_round_trip() {
        let c = injective();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"degrees":{"0":2,"1":1},"differentials":{"1":[["1"],["1"]]}}"#);
        assert_eq!(serde_json::from_str::<Complex>(&s).unwrap(), c);
        let bad = r#"{"degrees":{"0":2,"1":1},"differentials":{"1":[["1","0"],["0","1"]]}}"#;
        assert!(serde_json::from_str::<Complex>(bad).is_err());
        let empty_rows = r#"{"degrees":{"1":2},"differentials":{"1":[]}}"#;
        assert_eq!(serde_json::from_str::<Complex>(empty_rows).unwrap(), Complex::graded([(1, 2)]));
    }

    #[test]
    fn change_basis_preserves_homology() {
        let c = injective();
        let mut basis = BTreeMap::new();
        basis.insert(0, m(&[&[1, 1], &[0, 1]]));
        let d = c.change_basis(&basis).unwrap();
        assert_eq!(d.d(1), m(&[&[0], &[1]]));
        assert_eq!(d.homology(), c.homology());
    }
}
