use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;

use super::{Complex, Degree, GradedDims};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

/// A degree-0 map of complexes. Blocks `f_k : source_k -> target_k` are
/// `dim target_k x dim source_k`; zero blocks are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Arc<Complex>,
    target: Arc<Complex>,
    blocks: BTreeMap<Degree, Matrix>,
}

impl ChainMap {
    /// Checks shapes and `d ∘ f = f ∘ d` in every degree.
    pub fn new<I>(source: Arc<Complex>, target: Arc<Complex>, blocks: I) -> Result<ChainMap>
    where
        I: IntoIterator<Item = (Degree, Matrix)>,
    {
        let f = ChainMap::from_parts(source, target, blocks)?;
        f.check_commutes()?;
        Ok(f)
    }

    pub(crate) fn from_parts<I>(source: Arc<Complex>, target: Arc<Complex>, blocks: I) -> Result<ChainMap>
    where
        I: IntoIterator<Item = (Degree, Matrix)>,
    {
        let mut stored = BTreeMap::new();
        for (k, m) in blocks {
            let expected = (target.dim(k), source.dim(k));
            if m.shape() != expected {
                return Err(Error::Shape(format!(
                    "block in degree {k} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    expected.0,
                    expected.1
                )));
            }
            if !m.is_zero() {
                stored.insert(k, m);
            }
        }
        Ok(ChainMap { source, target, blocks: stored })
    }

    pub(crate) fn check_commutes(&self) -> Result<()> {
        let mut degrees: BTreeSet<Degree> = self.source.degrees().collect();
        degrees.extend(self.target.degrees());
        for k in degrees {
            let left = self.target.d(k).mul(&self.block(k))?;
            let right = self.block(k - 1).mul(&self.source.d(k))?;
            if left != right {
                return Err(Error::NotChainMap { degree: k });
            }
        }
        Ok(())
    }

    pub fn identity(c: Arc<Complex>) -> ChainMap {
        let blocks: Vec<_> = c.degrees().map(|k| (k, Matrix::identity(c.dim(k)))).collect();
        ChainMap::from_parts(c.clone(), c, blocks).expect("identity shapes")
    }

    pub fn zero(source: Arc<Complex>, target: Arc<Complex>) -> ChainMap {
        ChainMap { source, target, blocks: BTreeMap::new() }
    }

    pub fn source(&self) -> &Arc<Complex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Complex> {
        &self.target
    }

    pub fn block(&self, k: Degree) -> Matrix {
        self.blocks.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(self.target.dim(k), self.source.dim(k)))
    }

    /// Stored (nonzero) blocks.
    pub fn blocks(&self) -> impl Iterator<Item = (Degree, &Matrix)> {
        self.blocks.iter().map(|(&k, m)| (k, m))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        if *other.target != *self.source {
            return Err(Error::Shape("composition of maps whose ends do not match".into()));
        }
        let mut blocks = Vec::new();
        for (&k, g) in &other.blocks {
            if let Some(f) = self.blocks.get(&k) {
                blocks.push((k, f.mul(g)?));
            }
        }
        ChainMap::from_parts(other.source.clone(), self.target.clone(), blocks)
    }

    fn check_parallel(&self, other: &ChainMap) -> Result<()> {
        if *self.source != *other.source || *self.target != *other.target {
            return Err(Error::Shape("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.check_parallel(other)?;
        let degrees: BTreeSet<Degree> = self.blocks.keys().chain(other.blocks.keys()).copied().collect();
        let mut blocks = Vec::new();
        for k in degrees {
            blocks.push((k, self.block(k).add(&other.block(k))?));
        }
        ChainMap::from_parts(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.add(&other.scale(&-Rational::from(1)))
    }

    pub fn scale(&self, s: &Rational) -> ChainMap {
        if s.is_zero() {
            return ChainMap::zero(self.source.clone(), self.target.clone());
        }
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|(&k, m)| (k, m.scale(s))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Fails with the first degree in which the map has a kernel.
    pub fn check_injective(&self) -> Result<()> {
        for k in self.source.degrees() {
            if self.block(k).rank() < self.source.dim(k) {
                return Err(Error::NotInjective { degree: k });
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        self.check_injective().is_ok()
    }

    pub fn is_isomorphism(&self) -> bool {
        let mut degrees: BTreeSet<Degree> = self.source.degrees().collect();
        degrees.extend(self.target.degrees());
        degrees.into_iter().all(|k| self.block(k).inverse().is_some())
    }

    /// Degreewise inverse of an isomorphism.
    pub fn inverse(&self) -> Result<ChainMap> {
        let mut degrees: BTreeSet<Degree> = self.source.degrees().collect();
        degrees.extend(self.target.degrees());
        let mut blocks = Vec::new();
        for k in degrees {
            let inv = self.block(k).inverse().ok_or(Error::NotInvertible { degree: k })?;
            blocks.push((k, inv));
        }
        ChainMap::from_parts(self.target.clone(), self.source.clone(), blocks)
    }

    /// Degreewise image of the map as a subcomplex of the target.
    pub fn image(&self) -> Result<Subcomplex> {
        let spans: Vec<_> = self.target.degrees().map(|k| (k, self.block(k))).collect();
        Subcomplex::new(self.target.clone(), spans)
    }
}

/// A subcomplex given by degreewise bases (columns) of subspaces closed
/// under the differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    ambient: Arc<Complex>,
    basis: BTreeMap<Degree, Matrix>,
}

impl Subcomplex {
    /// Columns of each matrix span the subspace; they are reduced to a basis
    /// and closure under the differential is checked.
    pub fn new<I>(ambient: Arc<Complex>, spans: I) -> Result<Subcomplex>
    where
        I: IntoIterator<Item = (Degree, Matrix)>,
    {
        let mut basis = BTreeMap::new();
        for (k, span) in spans {
            if span.rows() != ambient.dim(k) {
                return Err(Error::Shape(format!(
                    "spanning set in degree {k} has {} rows, expected {}",
                    span.rows(),
                    ambient.dim(k)
                )));
            }
            let b = span.image_basis();
            if b.cols() > 0 {
                basis.insert(k, b);
            }
        }
        let s = Subcomplex { ambient, basis };
        s.check_closed()?;
        Ok(s)
    }

    fn check_closed(&self) -> Result<()> {
        for (&k, b) in &self.basis {
            let Some(dk) = self.ambient.d_ref(k) else { continue };
            let image = dk.mul(b)?;
            if image.is_zero() {
                continue;
            }
            match self.basis(k - 1).solve(&image) {
                Ok(_) => {}
                Err(Error::Inconsistent) => return Err(Error::NotClosed { degree: k }),
                Err(e) => return Err(e),
            }
        }
        Ok(())
    }

    pub fn whole(ambient: Arc<Complex>) -> Subcomplex {
        let basis = ambient.degrees().map(|k| (k, Matrix::identity(ambient.dim(k)))).collect();
        Subcomplex { ambient, basis }
    }

    pub fn zero(ambient: Arc<Complex>) -> Subcomplex {
        Subcomplex { ambient, basis: BTreeMap::new() }
    }

    pub fn ambient(&self) -> &Arc<Complex> {
        &self.ambient
    }

    pub fn basis(&self, k: Degree) -> Matrix {
        self.basis.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(self.ambient.dim(k), 0))
    }

    pub fn dims(&self) -> GradedDims {
        self.basis.iter().map(|(&k, b)| (k, b.cols())).collect()
    }

    /// The subcomplex in its own basis, with the inclusion into the ambient.
    pub fn as_complex(&self) -> Result<(Arc<Complex>, ChainMap)> {
        let mut diffs = Vec::new();
        for (&k, b) in &self.basis {
            let Some(dk) = self.ambient.d_ref(k) else { continue };
            let image = dk.mul(b)?;
            if image.is_zero() {
                continue;
            }
            diffs.push((k, self.basis(k - 1).solve(&image)?));
        }
        let c = Arc::new(Complex::from_parts(self.dims().iter(), diffs)?);
        let inclusion = ChainMap::from_parts(c.clone(), self.ambient.clone(), self.basis.clone())?;
        Ok((c, inclusion))
    }

    /// Coordinates of a subcomplex of the same ambient inside this one.
    pub fn locate(&self, inner: &Subcomplex) -> Result<Subcomplex> {
        let (own, _) = self.as_complex()?;
        let mut spans = Vec::new();
        for (&k, b) in &inner.basis {
            let coords = self.basis(k).solve(b).map_err(|e| match e {
                Error::Inconsistent => Error::Range(format!("subspace in degree {k} is not contained")),
                other => other,
            })?;
            spans.push((k, coords));
        }
        Subcomplex::new(own, spans)
    }
}
