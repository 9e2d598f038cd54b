//! Symmetric-group actions on tensor powers, wedge, symmetric and Schur
//! powers, and Kimura finite dimensionality.

mod context;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use context::PowerContext;

use crate::complex::{tensor, ChainMap, Complex, GradedDims, SplitImage};
use crate::error::{Error, Result};
use crate::group_algebra::{self, GroupAlgebraElement};
use crate::limits::Limits;
use crate::symgroup::{Partition, Permutation};

/// Which extreme idempotent: `+` is the antisymmetrizer (wedge powers),
/// `-` the symmetrizer (symmetric powers).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn element(self, n: usize, limits: &Limits) -> Result<GroupAlgebraElement> {
        match self {
            Sign::Plus => group_algebra::antisymmetrizer(n, limits),
            Sign::Minus => group_algebra::symmetrizer(n, limits),
        }
    }

    /// The coefficient `sgn(σ)` or `1` with which `σ` enters the idempotent.
    pub fn weight(self, sigma: &Permutation) -> i64 {
        match self {
            Sign::Plus => sigma.sign(),
            Sign::Minus => 1,
        }
    }

    pub fn power_name(self) -> &'static str {
        match self {
            Sign::Plus => "wedge",
            Sign::Minus => "sym",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "+" | "plus" | "wedge" => Ok(Sign::Plus),
            "-" | "minus" | "sym" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("unknown sign {s:?}, expected + or -"))),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Sign, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub fn gamma_action(sigma: &Permutation, ctx: &PowerContext) -> Result<ChainMap> {
    ctx.gamma(sigma)
}

pub fn algebra_action(a: &GroupAlgebraElement, ctx: &PowerContext) -> Result<ChainMap> {
    ctx.action(a)
}

/// Image of `Γ(e)` on `C^{⊗n}` for an idempotent `e ∈ Q[Σ_n]`.
pub fn power_image(c: &Complex, e: &GroupAlgebraElement, limits: &Limits) -> Result<SplitImage> {
    let ctx = PowerContext::new(Arc::new(c.clone()), e.degree(), limits)?;
    ctx.split_image(e, |_| true)
}

pub fn wedge_power(c: &Complex, n: usize, limits: &Limits) -> Result<Complex> {
    extreme_power(c, n, Sign::Plus, limits)
}

pub fn sym_power(c: &Complex, n: usize, limits: &Limits) -> Result<Complex> {
    extreme_power(c, n, Sign::Minus, limits)
}

pub fn extreme_power(c: &Complex, n: usize, sign: Sign, limits: &Limits) -> Result<Complex> {
    let e = sign.element(n, limits)?;
    Ok(power_image(c, &e, limits)?.complex.as_ref().clone())
}

pub fn schur_power(c: &Complex, lambda: &Partition, limits: &Limits) -> Result<Complex> {
    let e = group_algebra::central_idempotent(lambda, limits)?;
    Ok(power_image(c, &e, limits)?.complex.as_ref().clone())
}

/// Parity of a complex judged by where its homology lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Zero,
    Even,
    Odd,
    Mixed,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Zero => "zero",
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Mixed => "mixed",
        })
    }
}

/// Exponents at which the even part's wedge powers and the odd part's
/// symmetric powers first vanish, checked on the homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KimuraWitness {
    pub wedge_of_even_part_vanishes_at: usize,
    pub sym_of_odd_part_vanishes_at: usize,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KimuraProfile {
    pub even_dimension: usize,
    pub odd_dimension: usize,
    /// Largest exponent with a nonvanishing power; additive over sums.
    pub dimension: usize,
    pub parity: Parity,
    /// Absent when checking it would exceed the configured caps.
    pub witness: Option<KimuraWitness>,
}

impl KimuraProfile {
    /// Exponent `a` with `Λ^a` (for `+`) or `Sym^a` (for `-`) of the complex
    /// acyclic, when the complex is purely of the matching parity.
    pub fn vanishing_exponent(&self, sign: Sign) -> Option<usize> {
        match (sign, self.parity) {
            (_, Parity::Zero) => Some(1),
            (Sign::Plus, Parity::Even) => Some(self.even_dimension + 1),
            (Sign::Minus, Parity::Odd) => Some(self.odd_dimension + 1),
            _ => None,
        }
    }
}

fn parity_of(h: &GradedDims) -> Parity {
    match (h.parity_total(0) > 0, h.parity_total(1) > 0) {
        (false, false) => Parity::Zero,
        (true, false) => Parity::Even,
        (false, true) => Parity::Odd,
        (true, true) => Parity::Mixed,
    }
}

pub fn kimura_profile(c: &Complex, limits: &Limits) -> Result<KimuraProfile> {
    let h = c.homology();
    let even_dimension = h.parity_total(0);
    let odd_dimension = h.parity_total(1);
    let hc = Complex::graded(h.iter());
    let witness = kimura_witness(&hc, even_dimension, odd_dimension, limits)?;
    Ok(KimuraProfile {
        even_dimension,
        odd_dimension,
        dimension: even_dimension + odd_dimension,
        parity: parity_of(&h),
        witness,
    })
}

fn kimura_witness(h: &Complex, even: usize, odd: usize, limits: &Limits) -> Result<Option<KimuraWitness>> {
    let within = |d: usize| d < limits.max_power && d <= limits.max_dim;
    if !within(even) || !within(odd) {
        return Ok(None);
    }
    let (plus, minus) = (h.parity_part(0), h.parity_part(1));
    let first_vanishing = |part: &Complex, sign: Sign, d: usize| -> Result<bool> {
        let vanishes = extreme_power(part, d + 1, sign, limits)?.is_zero();
        let before = d == 0 || !extreme_power(part, d, sign, limits)?.is_zero();
        Ok(vanishes && before)
    };
    let verified = first_vanishing(&plus, Sign::Plus, even)? && first_vanishing(&minus, Sign::Minus, odd)?;
    Ok(Some(KimuraWitness { wedge_of_even_part_vanishes_at: even + 1, sym_of_odd_part_vanishes_at: odd + 1, verified }))
}

/// Comparison of powers of `ΣC` with shifted powers of `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityFlipReport {
    pub n: usize,
    pub wedge_of_shift: GradedDims,
    pub shifted_sym: GradedDims,
    pub sym_of_shift: GradedDims,
    pub shifted_wedge: GradedDims,
    pub homology_agrees: bool,
    pub pass: bool,
}

/// `Λ^n(ΣC) ≅ Σ^n Sym^n(C)` and `Sym^n(ΣC) ≅ Σ^n Λ^n(C)`, compared on graded
/// dimensions and homology.
pub fn parity_flip_check(c: &Complex, n: usize, limits: &Limits) -> Result<ParityFlipReport> {
    limits.check_power(n)?;
    let s = c.shift();
    let shift = n as i32;
    let wedge_s = wedge_power(&s, n, limits)?;
    let sym_s = sym_power(&s, n, limits)?;
    let wedge_c = wedge_power(c, n, limits)?;
    let sym_c = sym_power(c, n, limits)?;
    let homology_agrees =
        wedge_s.homology() == sym_c.homology().shift(shift) && sym_s.homology() == wedge_c.homology().shift(shift);
    let report = ParityFlipReport {
        n,
        wedge_of_shift: wedge_s.dims(),
        shifted_sym: sym_c.dims().shift(shift),
        sym_of_shift: sym_s.dims(),
        shifted_wedge: wedge_c.dims().shift(shift),
        homology_agrees,
        pass: false,
    };
    let pass =
        homology_agrees && report.wedge_of_shift == report.shifted_sym && report.sym_of_shift == report.shifted_wedge;
    Ok(ParityFlipReport { pass, ..report })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorParityReport {
    pub left: Parity,
    pub right: Parity,
    pub product: Parity,
    pub left_dimension: usize,
    pub right_dimension: usize,
    pub product_dimension: usize,
    pub pass: bool,
}

/// For purely even or odd `C` and `D`, checks that `C ⊗ D` is pure of the
/// expected parity with dimension `dim C · dim D`.
pub fn tensor_parity_check(c: &Complex, d: &Complex, limits: &Limits) -> Result<TensorParityReport> {
    let pc = kimura_profile(c, limits)?;
    let pd = kimura_profile(d, limits)?;
    if pc.parity == Parity::Mixed || pd.parity == Parity::Mixed {
        return Err(Error::MixedParity);
    }
    let product = tensor(c, d).complex;
    let h = product.homology();
    let parity = parity_of(&h);
    let expected = match (pc.parity, pd.parity) {
        (Parity::Zero, _) | (_, Parity::Zero) => Parity::Zero,
        (a, b) if a == b => Parity::Even,
        _ => Parity::Odd,
    };
    let product_dimension = h.total();
    Ok(TensorParityReport {
        left: pc.parity,
        right: pd.parity,
        product: parity,
        left_dimension: pc.dimension,
        right_dimension: pd.dimension,
        product_dimension,
        pass: parity == expected && product_dimension == pc.dimension * pd.dimension,
    })
}
