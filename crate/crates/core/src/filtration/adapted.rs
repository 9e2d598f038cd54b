use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{quotient, ChainMap, Complex, Degree, SplitImage, TensorIndex};
use crate::error::Result;
use crate::group_algebra::GroupAlgebraElement;
use crate::limits::Limits;
use crate::linalg::{Matrix, Rational};
use crate::powers::{PowerContext, Sign};
use crate::symgroup::{binomial, shuffles};

/// `Y^⊗m` written in a basis of `Y` that starts, in every degree, with the
/// image of `f` and continues with unit vectors spanning a complement. In
/// these coordinates the cube object `(Y,X,m-i,i)` is spanned by the basis
/// tuples with at least `i` factors from `X`, a union of `Σ_m`-orbits.
pub(crate) struct Adapted {
    pub x: Arc<Complex>,
    pub z: Arc<Complex>,
    pub ctx: PowerContext,
    x_type: Vec<bool>,
}

impl Adapted {
    pub fn new(f: &ChainMap, m: usize, limits: &Limits) -> Result<Adapted> {
        f.check_injective()?;
        let y = f.target();
        let q = quotient(y, &f.image()?)?;
        let mut frame = BTreeMap::new();
        for k in y.degrees() {
            frame.insert(k, f.block(k).hstack(&q.section[&k])?);
        }
        let adapted = Arc::new(y.change_basis(&frame)?);
        let x = f.source().clone();
        let single = TensorIndex::new(&[adapted.as_ref()]);
        let x_type = (0..single.len())
            .map(|b| {
                let (k, local) = single.factor_element(0, b);
                local < x.dim(k)
            })
            .collect();
        let ctx = PowerContext::new(adapted, m, limits)?;
        Ok(Adapted { x, z: q.complex, ctx, x_type })
    }

    pub fn x_count(&self, digits: &[usize]) -> usize {
        digits.iter().filter(|&&b| self.x_type[b]).count()
    }

    /// `I_{m,i}`: the image of the idempotent on the cube object of level `i`.
    pub fn level(&self, e: &GroupAlgebraElement, i: usize) -> Result<SplitImage> {
        self.ctx.split_image(e, |digits| self.x_count(digits) >= i)
    }

    fn ids<F: Fn(&[usize]) -> bool>(&self, k: Degree, pred: F) -> Vec<usize> {
        let index = self.ctx.index();
        index.ids_in_degree(k).iter().copied().filter(|&id| pred(&index.digits(id))).collect()
    }

    fn graded_differential(&self, k: Degree, cols: &[usize], rows: &[usize]) -> Matrix {
        let index = self.ctx.index();
        let d = self.ctx.complex().d(k);
        let r: Vec<usize> = rows.iter().map(|&id| index.position_of(id)).collect();
        let c: Vec<usize> = cols.iter().map(|&id| index.position_of(id)).collect();
        d.select_rows(&r).select_cols(&c)
    }

    /// The comparison maps between the `i`-th graded piece and
    /// `Z^{⊗(m-i)} ⊗ X^{⊗i}`, built from shuffle representatives and checked
    /// against the scalar identities degree by degree.
    pub fn scalar_check(&self, i: usize, sign: Sign, limits: &Limits) -> Result<ScalarCheck> {
        let m = self.ctx.m();
        let reps = shuffles(m, i)?;
        let weight = |s: &crate::symgroup::Permutation| Rational::from(sign.weight(s));
        let d_elem = GroupAlgebraElement::from_terms(m, reps.iter().map(|(_, s)| (s.clone(), weight(s))))?;
        let u_elem = GroupAlgebraElement::from_terms(m, reps.iter().map(|(_, s)| (s.inverse(), weight(s))))?;
        let young = sign.element(m - i, limits)?.shifted(m, 0).multiply(&sign.element(i, limits)?.shifted(m, m - i))?;
        let e = sign.element(m, limits)?;
        let scalar = binomial(m, i) as u64;
        let alpha = Rational::from(scalar as i64);

        let in_piece = |digits: &[usize]| self.x_count(digits) == i;
        let in_block = |digits: &[usize]| digits.iter().enumerate().all(|(j, &b)| self.x_type[b] == (j >= m - i));

        let mut check = ScalarCheck {
            scalar,
            u_after_d: true,
            conjugation: true,
            ranks_agree: true,
            isomorphism: true,
            commutes: true,
            pass: false,
        };
        let degrees: Vec<Degree> = self.ctx.index().dims().map(|(k, _)| k).collect();
        for &k in &degrees {
            let q = self.ids(k, in_piece);
            let b = self.ids(k, in_block);
            if q.is_empty() {
                continue;
            }
            let eq = self.ctx.action_matrix(&e, &q, &q)?;
            let d = self.ctx.action_matrix(&d_elem, &b, &q)?;
            let u = self.ctx.action_matrix(&u_elem, &q, &b)?;
            let bb = self.ctx.action_matrix(&young, &b, &b)?;
            check.u_after_d &= u.mul(&d)? == Matrix::scalar(b.len(), &alpha);
            check.conjugation &= d.mul(&bb)?.mul(&u)? == eq.scale(&alpha);
            let (se, sb) = (eq.split_idempotent()?, bb.split_idempotent()?);
            check.ranks_agree &= se.rank() == sb.rank();
            if se.rank() == sb.rank() && se.rank() > 0 {
                let iso = sb.projection.mul(&u)?.mul(&se.inclusion)?;
                check.isomorphism &= iso.inverse().is_some();
            }
            let (q_below, b_below) = (self.ids(k - 1, in_piece), self.ids(k - 1, in_block));
            if q_below.is_empty() {
                continue;
            }
            let dq = self.graded_differential(k, &q, &q_below);
            let db = self.graded_differential(k, &b, &b_below);
            let u_below = self.ctx.action_matrix(&u_elem, &q_below, &b_below)?;
            let d_below = self.ctx.action_matrix(&d_elem, &b_below, &q_below)?;
            check.commutes &= u_below.mul(&dq)? == db.mul(&u)? && d_below.mul(&db)? == dq.mul(&d)?;
        }
        check.pass = check.u_after_d && check.conjugation && check.ranks_agree && check.isomorphism && check.commutes;
        Ok(check)
    }
}

/// Outcome of the explicit comparison of a graded piece with the tensor
/// product of powers of `Z` and `X`, with `u = Σ_S ε_S Γ_{ς_S^{-1}}` followed
/// by the projection onto the block with `X` in the last `i` slots, and
/// `d = Σ_S ε_S Γ_{ς_S}` over the shuffles `ς_S`; `ε_S` is `sgn(ς_S)` for
/// `+` and `1` for `-`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarCheck {
    /// `C(m, i)`.
    pub scalar: u64,
    /// `u ∘ d = C(m,i) · id`.
    pub u_after_d: bool,
    /// `C(m,i) · e = d ∘ b ∘ u` with `b` the Young-subgroup idempotent.
    pub conjugation: bool,
    pub ranks_agree: bool,
    /// `u` restricts to an isomorphism between the two images.
    pub isomorphism: bool,
    /// `u` and `d` are chain maps for the graded differentials.
    pub commutes: bool,
    pub pass: bool,
}
