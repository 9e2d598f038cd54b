//! Cube objects of a cofibration `f : X -> Y`, mixed idempotents on them, the
//! induced filtration of an extreme power of `Y` and its graded pieces, and
//! the propagation of vanishing powers from `X` and `Z = Y/X` to `Y`.
//!
//! Cofibrations are degreewise injective chain maps. Cube objects are
//! realized as internal sums of subcomplexes of `Y^⊗m`.

mod adapted;
mod cube;

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use adapted::ScalarCheck;
pub use cube::{cube_object, cube_quotient_check, mixed_idempotent_image, CubeObject, CubeQuotientReport, MixedImage};

use adapted::Adapted;

use crate::complex::{quotient, tensor, ChainMap, Complex, GradedDims, SplitImage};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::powers::{extreme_power, Sign};

/// `J_{m,i}` compared with `Z^{[m-i)} ⊗ X^{[i)}` (or the symmetric variant).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPieceReport {
    pub i: usize,
    pub dims: GradedDims,
    pub homology: GradedDims,
    pub expected_dims: GradedDims,
    pub expected_homology: GradedDims,
    pub scalar_check: ScalarCheck,
    pub pass: bool,
}

/// One row of the filtration. Level `i` carries `I_{m,i}` and, for
/// `i ≥ 1`, the graded piece `J_{m,i-1} = I_{m,i-1} / I_{m,i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub i: usize,
    pub sign: Sign,
    #[serde(rename = "dims_I")]
    pub dims_i: GradedDims,
    #[serde(rename = "dims_J")]
    pub dims_j: Option<GradedDims>,
    #[serde(rename = "homology_J")]
    pub homology_j: Option<GradedDims>,
    pub expected_dims: Option<GradedDims>,
    pub expected_homology: Option<GradedDims>,
    pub scalar_check: Option<ScalarCheck>,
    pub verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub m: usize,
    pub sign: Sign,
    /// The extreme power of `Y`, computed directly.
    pub power_dims: GradedDims,
    pub power_homology: GradedDims,
    pub levels: Vec<LevelRecord>,
    /// The expected graded pieces add up to the power of `Y`.
    pub telescoping: bool,
    /// `I_{m,0}` is the power of `Y` and `I_{m,m}` the power of `X`.
    pub boundary: bool,
    pub verdict: bool,
}

impl FiltrationReport {
    pub fn graded_pieces_acyclic(&self) -> bool {
        self.levels.iter().all(|l| l.homology_j.as_ref().is_none_or(GradedDims::is_zero))
    }
}

fn par_map<T, F>(limits: &Limits, n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    match limits.pool() {
        Some(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
        None => (0..n).map(f).collect(),
    }
}

/// Cokernel of `I_{m,i+1} -> I_{m,i}`.
fn cokernel(upper: &SplitImage, lower: &SplitImage) -> Result<Arc<Complex>> {
    let blocks: Vec<_> = upper
        .complex
        .degrees()
        .map(|k| Ok((k, lower.projection.block(k).mul(&upper.inclusion.block(k))?)))
        .collect::<Result<_>>()?;
    let w = ChainMap::new(upper.complex.clone(), lower.complex.clone(), blocks)?;
    w.check_injective()?;
    Ok(quotient(&lower.complex, &w.image()?)?.complex)
}

fn expected_piece(ad: &Adapted, i: usize, sign: Sign, limits: &Limits) -> Result<Complex> {
    let m = ad.ctx.m();
    let zp = extreme_power(&ad.z, m - i, sign, limits)?;
    let xp = extreme_power(&ad.x, i, sign, limits)?;
    Ok(tensor(&zp, &xp).complex.as_ref().clone())
}

fn piece_report(ad: &Adapted, j: &Complex, i: usize, sign: Sign, limits: &Limits) -> Result<GradedPieceReport> {
    let expected = expected_piece(ad, i, sign, limits)?;
    let scalar_check = ad.scalar_check(i, sign, limits)?;
    let (dims, homology) = (j.dims(), j.homology());
    let (expected_dims, expected_homology) = (expected.dims(), expected.homology());
    let pass = dims == expected_dims && homology == expected_homology && scalar_check.pass;
    Ok(GradedPieceReport { i, dims, homology, expected_dims, expected_homology, scalar_check, pass })
}

/// `J^±_{m,i} = I^±_{m,i} / I^±_{m,i+1}` for `0 ≤ i ≤ m`, with its comparison
/// against the expected tensor product.
pub fn graded_piece(
    f: &ChainMap,
    m: usize,
    i: usize,
    sign: Sign,
    limits: &Limits,
) -> Result<(Complex, GradedPieceReport)> {
    if i > m {
        return Err(Error::Range(format!("graded piece {i} exceeds the power {m}")));
    }
    let ad = Adapted::new(f, m, limits)?;
    let e = sign.element(m, limits)?;
    let j = cokernel(&ad.level(&e, i + 1)?, &ad.level(&e, i)?)?;
    let report = piece_report(&ad, &j, i, sign, limits)?;
    Ok((j.as_ref().clone(), report))
}

/// All levels `0..=m+1` of the filtration of the extreme power of `Y`.
pub fn filtration_report(f: &ChainMap, m: usize, sign: Sign, limits: &Limits) -> Result<FiltrationReport> {
    let ad = Adapted::new(f, m, limits)?;
    let e = sign.element(m, limits)?;
    let images = par_map(limits, m + 2, |i| ad.level(&e, i))?;
    let pieces = par_map(limits, m + 1, |i| {
        let j = cokernel(&images[i + 1], &images[i])?;
        piece_report(&ad, &j, i, sign, limits)
    })?;

    let power = extreme_power(f.target(), m, sign, limits)?;
    let (power_dims, power_homology) = (power.dims(), power.homology());
    let top = extreme_power(&ad.x, m, sign, limits)?;
    let bottom = &images[0].complex;
    let boundary = bottom.dims() == power_dims
        && bottom.homology() == power_homology
        && images[m].complex.dims() == top.dims()
        && images[m].complex.homology() == top.homology()
        && images[m + 1].complex.is_zero();

    let mut levels = vec![LevelRecord {
        i: 0,
        sign,
        dims_i: bottom.dims(),
        dims_j: None,
        homology_j: None,
        expected_dims: None,
        expected_homology: None,
        scalar_check: None,
        verdict: bottom.dims() == power_dims && bottom.homology() == power_homology,
    }];
    for (p, image) in pieces.into_iter().zip(&images[1..]) {
        levels.push(LevelRecord {
            i: p.i + 1,
            sign,
            dims_i: image.complex.dims(),
            dims_j: Some(p.dims),
            homology_j: Some(p.homology),
            expected_dims: Some(p.expected_dims),
            expected_homology: Some(p.expected_homology),
            scalar_check: Some(p.scalar_check),
            verdict: p.pass,
        });
    }
    let total = levels.iter().filter_map(|l| l.expected_dims.as_ref()).fold(GradedDims::default(), |acc, d| acc.add(d));
    let telescoping = total == power_dims;
    let verdict = telescoping && boundary && levels.iter().all(|l| l.verdict);
    Ok(FiltrationReport { m, sign, power_dims, power_homology, levels, telescoping, boundary, verdict })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub sign: Sign,
    pub a_x: usize,
    pub b_z: usize,
    pub m: usize,
    /// Every graded piece of the filtration is acyclic.
    pub pieces_acyclic: bool,
    /// The power of `Y` at `m`, computed directly.
    pub power_homology: GradedDims,
    pub power_acyclic: bool,
    pub filtration_verdict: bool,
    pub pass: bool,
}

/// Given acyclic `Λ^{a}X` and `Λ^{b}Z` (or `Sym` for `-`), checks that the
/// power of `Y` at `a + b - 1` is acyclic through the filtration.
pub fn verify_main_theorem(f: &ChainMap, a_x: usize, b_z: usize, sign: Sign, limits: &Limits) -> Result<TheoremReport> {
    f.check_injective()?;
    let x = f.source();
    let z = quotient(f.target(), &f.image()?)?.complex;
    let name = sign.power_name();
    if !extreme_power(x, a_x, sign, limits)?.is_acyclic() {
        return Err(Error::Inapplicable(format!("{name} power {a_x} of X is not acyclic")));
    }
    if !extreme_power(&z, b_z, sign, limits)?.is_acyclic() {
        return Err(Error::Inapplicable(format!("{name} power {b_z} of Z is not acyclic")));
    }
    let m = a_x + b_z - 1;
    let report = filtration_report(f, m, sign, limits)?;
    let pieces_acyclic = report.graded_pieces_acyclic();
    let power_acyclic = report.power_homology.is_zero();
    Ok(TheoremReport {
        sign,
        a_x,
        b_z,
        m,
        pieces_acyclic,
        power_homology: report.power_homology.clone(),
        power_acyclic,
        filtration_verdict: report.verdict,
        pass: pieces_acyclic && power_acyclic && report.verdict,
    })
}
