use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::{ChainMap, Complex, Degree, GradedDims, Subcomplex};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// `A ⊕ B`, with the basis of `A` first in every degree.
pub fn direct_sum(a: &Complex, b: &Complex) -> Complex {
    let degrees: BTreeSet<Degree> = a.degrees().chain(b.degrees()).collect();
    let dims: Vec<_> = degrees.iter().map(|&k| (k, a.dim(k) + b.dim(k))).collect();
    let diffs: Vec<_> = degrees
        .iter()
        .map(|&k| {
            let top = a.d(k).hstack(&Matrix::zeros(a.dim(k - 1), b.dim(k))).expect("rows agree");
            let bottom = Matrix::zeros(b.dim(k - 1), a.dim(k)).hstack(&b.d(k)).expect("rows agree");
            (k, top.vstack(&bottom).expect("cols agree"))
        })
        .collect();
    Complex::from_parts(dims, diffs).expect("direct sum shapes")
}

/// The mapping cone of `f : X -> Y` with the maps of its triangle
/// `Y -> Cf -> ΣX`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Arc<Complex>,
    pub from_target: ChainMap,
    pub to_shift: ChainMap,
}

/// `Cf_k = Y_k ⊕ X_{k-1}` with differential `[[d_Y, f], [0, -d_X]]`.
pub fn cone(f: &ChainMap) -> Result<Cone> {
    let x = f.source();
    let y = f.target();
    let degrees: BTreeSet<Degree> = y.degrees().chain(x.degrees().map(|k| k + 1)).collect();
    let dims: Vec<_> = degrees.iter().map(|&k| (k, y.dim(k) + x.dim(k - 1))).collect();
    let mut diffs = Vec::new();
    for &k in &degrees {
        let d = Matrix::block(&y.d(k), &f.block(k - 1), &Matrix::zeros(x.dim(k - 2), y.dim(k)), &x.d(k - 1).neg())?;
        diffs.push((k, d));
    }
    let complex = Arc::new(Complex::from_parts(dims, diffs)?);
    let shifted = Arc::new(x.shift());
    let mut inc = Vec::new();
    let mut proj = Vec::new();
    for &k in &degrees {
        let (ny, nx) = (y.dim(k), x.dim(k - 1));
        inc.push((k, Matrix::identity(ny).vstack(&Matrix::zeros(nx, ny))?));
        proj.push((k, Matrix::zeros(nx, ny).hstack(&Matrix::identity(nx))?));
    }
    let from_target = ChainMap::from_parts(y.clone(), complex.clone(), inc)?;
    let to_shift = ChainMap::from_parts(complex.clone(), shifted, proj)?;
    Ok(Cone { complex, from_target, to_shift })
}

/// Image of an idempotent endomorphism, split degreewise.
#[derive(Clone, Debug)]
pub struct SplitImage {
    pub complex: Arc<Complex>,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// Splits `P` degreewise as `C R` with `R C = 1`; the image carries the
/// differential `R d C`.
pub fn image_subcomplex(p: &ChainMap) -> Result<SplitImage> {
    if p.source() != p.target() {
        return Err(Error::Shape("idempotent must be an endomorphism".into()));
    }
    // the restricted differential is only well defined when P commutes with d
    p.check_commutes()?;
    let ambient = p.source().clone();
    let mut splits = std::collections::BTreeMap::new();
    for k in ambient.degrees() {
        splits.insert(k, p.block(k).split_idempotent()?);
    }
    let mut diffs = Vec::new();
    for (&k, s) in &splits {
        let Some(dk) = ambient.d_ref(k) else { continue };
        let Some(below) = splits.get(&(k - 1)) else { continue };
        diffs.push((k, below.projection.mul(dk)?.mul(&s.inclusion)?));
    }
    let dims: Vec<_> = splits.iter().map(|(&k, s)| (k, s.rank())).collect();
    let complex = Arc::new(Complex::from_parts(dims, diffs)?);
    let inclusion =
        ChainMap::from_parts(complex.clone(), ambient.clone(), splits.iter().map(|(&k, s)| (k, s.inclusion.clone())))?;
    let projection =
        ChainMap::from_parts(ambient.clone(), complex.clone(), splits.iter().map(|(&k, s)| (k, s.projection.clone())))?;
    Ok(SplitImage { complex, inclusion, projection })
}

/// `C / S` with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub complex: Arc<Complex>,
    pub projection: ChainMap,
    /// Degreewise lift of the quotient basis into `C`, as unit vectors.
    pub section: std::collections::BTreeMap<Degree, Matrix>,
}

/// Degreewise quotient. The complement of `S_k` is spanned by the unit
/// vectors that are pivots of `rref([S_k | I])`; coordinates along it give
/// the projection.
pub fn quotient(c: &Arc<Complex>, s: &Subcomplex) -> Result<Quotient> {
    if s.ambient().as_ref() != c.as_ref() {
        return Err(Error::Shape("subcomplex lives in a different complex".into()));
    }
    let mut section = std::collections::BTreeMap::new();
    let mut proj = std::collections::BTreeMap::new();
    for k in c.degrees() {
        let n = c.dim(k);
        let v = s.basis(k);
        let r = v.cols();
        let pivots = v.hstack(&Matrix::identity(n))?.rref().pivots;
        let units: Vec<usize> = pivots.iter().filter(|&&p| p >= r).map(|&p| p - r).collect();
        let e = Matrix::identity(n).select_cols(&units);
        let t = v.hstack(&e)?;
        let inv = t.inverse().ok_or(Error::NotInvertible { degree: k })?;
        let rows: Vec<usize> = (r..n).collect();
        proj.insert(k, inv.select_rows(&rows));
        section.insert(k, e);
    }
    let mut diffs = Vec::new();
    for k in c.degrees() {
        let Some(dk) = c.d_ref(k) else { continue };
        let Some(below) = proj.get(&(k - 1)) else { continue };
        diffs.push((k, below.mul(dk)?.mul(&section[&k])?));
    }
    let dims: Vec<_> = proj.iter().map(|(&k, p)| (k, p.rows())).collect();
    let complex = Arc::new(Complex::from_parts(dims, diffs)?);
    let projection = ChainMap::new(c.clone(), complex.clone(), proj)?;
    Ok(Quotient { complex, projection, section })
}

/// A map `A ⊕ B -> A ⊕ C` given by its four blocks.
#[derive(Clone, Debug)]
pub struct BlockTriangleInput {
    pub a: ChainMap,
    pub b: ChainMap,
    pub c: ChainMap,
    pub d: ChainMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurReport {
    pub homology_full_cone: GradedDims,
    pub homology_reduced_cone: GradedDims,
    pub agree: bool,
}

impl BlockTriangleInput {
    fn check_ends(&self) -> Result<()> {
        let same = |x: &Arc<Complex>, y: &Arc<Complex>| x.as_ref() == y.as_ref();
        let ok = same(self.a.source(), self.a.target())
            && same(self.b.target(), self.a.source())
            && same(self.c.source(), self.a.source())
            && same(self.d.source(), self.b.source())
            && same(self.d.target(), self.c.target());
        if !ok {
            return Err(Error::Shape("blocks must be a: A→A, b: B→A, c: A→C, d: B→C".into()));
        }
        Ok(())
    }

    /// The assembled map `[[a, b], [c, d]]`.
    pub fn full_map(&self) -> Result<ChainMap> {
        self.check_ends()?;
        let (a, b, c) = (self.a.source(), self.b.source(), self.c.target());
        let source = Arc::new(direct_sum(a, b));
        let target = Arc::new(direct_sum(a, c));
        let degrees: BTreeSet<Degree> = source.degrees().chain(target.degrees()).collect();
        let mut blocks = Vec::new();
        for k in degrees {
            let m = Matrix::block(&self.a.block(k), &self.b.block(k), &self.c.block(k), &self.d.block(k))?;
            blocks.push((k, m));
        }
        ChainMap::new(source, target, blocks)
    }
}

/// `t = d - c a^{-1} b`, and a comparison of the homology of the cones of
/// the full block map and of `t`.
pub fn schur_split(input: &BlockTriangleInput) -> Result<(ChainMap, SchurReport)> {
    input.check_ends()?;
    let a_inv = input.a.inverse()?;
    let t = input.d.sub(&input.c.compose(&a_inv)?.compose(&input.b)?)?;
    let full = input.full_map()?;
    let homology_full_cone = cone(&full)?.complex.homology();
    let homology_reduced_cone = cone(&t)?.complex.homology();
    let agree = homology_full_cone == homology_reduced_cone;
    Ok((t, SchurReport { homology_full_cone, homology_reduced_cone, agree }))
}
