use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complex::{
    image_subcomplex, quotient, ChainMap, Complex, Degree, GradedDims, SplitImage, Subcomplex, TensorIndex,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::{Matrix, Rational};
use crate::powers::{PowerContext, Sign};
use crate::symgroup::{binomial, subsets};

/// The subcomplex `(Y,X,m-i,i) = Σ_{|S|=i} (Y,X)_S` of `Y^⊗m`, where
/// `(Y,X)_S` has the factors in positions `S` taken from `f(X)`.
#[derive(Clone, Debug)]
pub struct CubeObject {
    pub m: usize,
    pub i: usize,
    pub power: PowerContext,
    pub subcomplex: Subcomplex,
}

/// A homogeneous vector of `Y` as sparse `(local index, coefficient)` pairs.
type Generator = (Degree, Vec<(usize, Rational)>);

fn generators(c: &Matrix, k: Degree) -> Vec<Generator> {
    (0..c.cols())
        .map(|j| {
            let entries = (0..c.rows()).filter(|&r| !c[(r, j)].is_zero()).map(|r| (r, c[(r, j)].clone())).collect();
            (k, entries)
        })
        .collect()
}

pub fn cube_object(f: &ChainMap, m: usize, i: usize, limits: &Limits) -> Result<CubeObject> {
    if i > m {
        return Err(Error::Range(format!("cube level {i} exceeds the power {m}")));
    }
    f.check_injective()?;
    let y = f.target();
    let power = PowerContext::new(y.clone(), m, limits)?;
    let from_x: Vec<Generator> = f.source().degrees().flat_map(|k| generators(&f.block(k), k)).collect();
    let from_y: Vec<Generator> = y.degrees().flat_map(|k| generators(&Matrix::identity(y.dim(k)), k)).collect();

    let index = power.index();
    let mut columns: BTreeMap<Degree, Vec<Vec<Rational>>> = BTreeMap::new();
    for s in subsets(m, i) {
        let lists: Vec<&[Generator]> = (0..m).map(|j| if s.contains(j) { &from_x[..] } else { &from_y[..] }).collect();
        if lists.iter().any(|l| l.is_empty()) {
            continue;
        }
        let mut choice = vec![0; m];
        loop {
            let gens: Vec<&Generator> = (0..m).map(|j| &lists[j][choice[j]]).collect();
            let degree: Degree = gens.iter().map(|g| g.0).sum();
            let mut column = vec![Rational::zero(); index.dim(degree)];
            expand(index, &gens, 0, &mut Vec::new(), Rational::from(1), &mut column);
            columns.entry(degree).or_default().push(column);
            if !advance(&mut choice, &lists) {
                break;
            }
        }
    }
    let spans = columns
        .into_iter()
        .map(|(k, cols)| Ok((k, Matrix::from_rows(cols, index.dim(k))?.transpose())))
        .collect::<Result<Vec<_>>>()?;
    let subcomplex = Subcomplex::new(power.complex().clone(), spans)?;
    Ok(CubeObject { m, i, power, subcomplex })
}

fn advance(choice: &mut [usize], lists: &[&[Generator]]) -> bool {
    for j in (0..choice.len()).rev() {
        choice[j] += 1;
        if choice[j] < lists[j].len() {
            return true;
        }
        choice[j] = 0;
    }
    false
}

fn expand(
    index: &TensorIndex,
    gens: &[&Generator],
    slot: usize,
    picked: &mut Vec<(Degree, usize)>,
    coeff: Rational,
    column: &mut [Rational],
) {
    if slot == gens.len() {
        let (_, pos) = index.position(picked);
        column[pos] += &coeff;
        return;
    }
    let (k, entries) = gens[slot];
    for (local, c) in entries {
        picked.push((*k, *local));
        expand(index, gens, slot + 1, picked, &coeff * c, column);
        picked.pop();
    }
}

/// Graded dimensions of `X^⊗a ⊗ Z^⊗b`.
fn mixed_dims(x: &GradedDims, z: &GradedDims, a: usize, b: usize) -> GradedDims {
    let mut out = GradedDims::from_iter([(0, 1)]);
    for _ in 0..a {
        out = out.convolve(x);
    }
    for _ in 0..b {
        out = out.convolve(z);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeQuotientReport {
    pub m: usize,
    pub i: usize,
    /// `(Y,X,m-i+1,i-1) / (Y,X,m-i,i)`.
    pub quotient_dims: GradedDims,
    /// `Σ_{|S|=i-1} (Z,X)_S`, each summand built as a tensor complex.
    pub expected_dims: GradedDims,
    pub quotient_homology: GradedDims,
    /// Künneth: `C(m,i-1)` copies of `H(Z)^{⊗(m-i+1)} ⊗ H(X)^{⊗(i-1)}`.
    pub expected_homology: GradedDims,
    pub cube_dims: GradedDims,
    /// `Σ_{j≥i} C(m,j) · dims(X^⊗j ⊗ Z^⊗(m-j))`.
    pub cube_expected_dims: GradedDims,
    pub pass: bool,
}

/// Compares the quotient of consecutive cube objects with the sum of the
/// `(Z,X)_S` over `|S| = i - 1`. At `i = 0` the quotient is `Y^⊗m` by itself.
pub fn cube_quotient_check(f: &ChainMap, m: usize, i: usize, limits: &Limits) -> Result<CubeQuotientReport> {
    let small = cube_object(f, m, i, limits)?;
    let big = if i == 0 { small.clone() } else { cube_object(f, m, i - 1, limits)? };
    let (ambient, _) = big.subcomplex.as_complex()?;
    let inner = big.subcomplex.locate(&small.subcomplex)?;
    let q = quotient(&ambient, &inner)?.complex;

    let x = f.source();
    let z = quotient(f.target(), &f.image()?)?.complex;
    let (xd, zd) = (x.dims(), z.dims());
    let (mut expected_dims, mut expected_homology) = (GradedDims::default(), GradedDims::default());
    if i > 0 {
        for s in subsets(m, i - 1) {
            let factors: Vec<&Complex> = (0..m).map(|j| if s.contains(j) { x.as_ref() } else { z.as_ref() }).collect();
            let piece = TensorIndex::new(&factors).complex(&factors);
            expected_dims = expected_dims.add(&piece.dims());
        }
        expected_homology =
            mixed_dims(&x.homology(), &z.homology(), i - 1, m - i + 1).scale(binomial(m, i - 1) as usize);
    }
    let cube_dims = small.subcomplex.dims();
    let cube_expected_dims = (i..=m)
        .map(|j| mixed_dims(&xd, &zd, j, m - j).scale(binomial(m, j) as usize))
        .fold(GradedDims::default(), |acc, d| acc.add(&d));
    let quotient_dims = q.dims();
    let quotient_homology = q.homology();
    let pass =
        quotient_dims == expected_dims && quotient_homology == expected_homology && cube_dims == cube_expected_dims;
    Ok(CubeQuotientReport {
        m,
        i,
        quotient_dims,
        expected_dims,
        quotient_homology,
        expected_homology,
        cube_dims,
        cube_expected_dims,
        pass,
    })
}

/// `I^±_{m,i}` computed on the cube object itself: the idempotent of `Y^⊗m`
/// is restricted to the `Σ_m`-stable subcomplex and split there.
#[derive(Clone, Debug)]
pub struct MixedImage {
    pub cube: Arc<Complex>,
    /// The cube object's inclusion into `Y^⊗m`.
    pub cube_inclusion: ChainMap,
    /// Image of the restricted idempotent, with inclusion into and
    /// projection from the cube object.
    pub image: SplitImage,
}

pub fn mixed_idempotent_image(f: &ChainMap, m: usize, i: usize, sign: Sign, limits: &Limits) -> Result<MixedImage> {
    let cube = cube_object(f, m, i, limits)?;
    let (cc, inclusion) = cube.subcomplex.as_complex()?;
    let e = sign.element(m, limits)?;
    let mut blocks = BTreeMap::new();
    for k in cc.degrees() {
        let basis = inclusion.block(k);
        let moved = cube.power.apply(&e, k, &basis)?;
        let restricted = basis.solve(&moved).map_err(|err| match err {
            Error::Inconsistent => Error::NotClosed { degree: k },
            other => other,
        })?;
        blocks.insert(k, restricted);
    }
    let restricted = ChainMap::new(cc.clone(), cc.clone(), blocks)?;
    let image = image_subcomplex(&restricted)?;
    Ok(MixedImage { cube: cc, cube_inclusion: inclusion, image })
}
