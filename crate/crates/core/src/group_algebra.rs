//! Elements of the rational group algebra `Q[Σ_n]` and its central idempotents.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::Rational;
use crate::symgroup::{self, Partition, Permutation};

/// A sparse formal combination `Σ c_σ σ`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: BTreeMap<Permutation, Rational>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(Permutation::identity(n))
    }

    pub fn basis(sigma: Permutation) -> Self {
        Self::from_terms(sigma.degree(), [(sigma, Rational::one())]).expect("single term")
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Permutation, Rational)>,
    {
        let mut out = Self::zero(n);
        for (sigma, c) in terms {
            if sigma.degree() != n {
                return Err(Error::DegreeMismatch { expected: n, found: sigma.degree() });
            }
            out.add_term(sigma, &c);
        }
        Ok(out)
    }

    fn add_term(&mut self, sigma: Permutation, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let sum = self.coefficient(&sigma) + c;
        if sum.is_zero() {
            self.terms.remove(&sigma);
        } else {
            self.terms.insert(sigma, sum);
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, sigma: &Permutation) -> Rational {
        self.terms.get(sigma).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        GroupAlgebraElement { n: self.n, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect() }
    }

    /// Convolution product `(Σ a_σ σ)(Σ b_τ τ) = Σ a_σ b_τ (σ∘τ)`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut acc: BTreeMap<Permutation, Rational> = BTreeMap::new();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                let slot = acc.entry(s.compose(t)).or_insert_with(Rational::zero);
                *slot += &(a * b);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(GroupAlgebraElement { n: self.n, terms: acc })
    }

    /// `σ x σ⁻¹`.
    pub fn conjugate_by(&self, sigma: &Permutation) -> Self {
        let inv = sigma.inverse();
        GroupAlgebraElement {
            n: self.n,
            terms: self.terms.iter().map(|(t, c)| (sigma.compose(t).compose(&inv), c.clone())).collect(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.multiply(self).map(|sq| &sq == self).unwrap_or(false)
    }

    /// Embeds `a ∈ Q[Σ_k]` into `Q[Σ_n]` acting on positions `offset..offset+k`.
    pub fn shifted(&self, n: usize, offset: usize) -> Self {
        GroupAlgebraElement { n, terms: self.terms.iter().map(|(s, c)| (s.shifted(n, offset), c.clone())).collect() }
    }
}

impl Serialize for GroupAlgebraElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupAlgebraJson {
            n: self.n,
            terms: self.terms.iter().map(|(p, c)| TermJson { perm: p.clone(), coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupAlgebraElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GroupAlgebraJson::deserialize(d)?;
        GroupAlgebraElement::from_terms(raw.n, raw.terms.into_iter().map(|t| (t.perm, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupAlgebraJson {
    n: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    perm: Permutation,
    coeff: Rational,
}

fn averaged(n: usize, limits: &Limits, signed: bool) -> Result<GroupAlgebraElement> {
    let group = symgroup::enumerate_group(n, limits)?;
    let w = Rational::one() / Rational::from(group.len());
    let neg = -&w;
    let terms = group.into_iter().map(|s| {
        let c = if signed && s.sign() < 0 { neg.clone() } else { w.clone() };
        (s, c)
    });
    GroupAlgebraElement::from_terms(n, terms)
}

/// `(1/n!) Σ sgn(σ) σ`.
pub fn antisymmetrizer(n: usize, limits: &Limits) -> Result<GroupAlgebraElement> {
    averaged(n, limits, true)
}

/// `(1/n!) Σ σ`.
pub fn symmetrizer(n: usize, limits: &Limits) -> Result<GroupAlgebraElement> {
    averaged(n, limits, false)
}

/// `e_λ = (f_λ / n!) Σ_σ χ_λ(σ) σ`, with `f_λ` the dimension of the irreducible.
pub fn central_idempotent(lambda: &Partition, limits: &Limits) -> Result<GroupAlgebraElement> {
    let n = lambda.size();
    let group = symgroup::enumerate_group(n, limits)?;
    let table = symgroup::character_table(n);
    let row = &table.iter().find(|(l, _)| l == lambda).expect("partition of n").1;
    Ok(idempotent_from_row(n, lambda, row, &group))
}

fn idempotent_from_row(
    n: usize,
    lambda: &Partition,
    row: &[(Partition, i64)],
    group: &[Permutation],
) -> GroupAlgebraElement {
    let scale =
        Rational::from(symgroup::hook_dimension(lambda) as usize) / Rational::from(symgroup::factorial(n) as usize);
    let by_class: BTreeMap<&[usize], Rational> =
        row.iter().map(|(mu, chi)| (mu.parts(), &scale * &Rational::from_integer(*chi))).collect();
    let terms = group.iter().filter_map(|s| {
        let ct = s.cycle_type();
        let c = by_class[ct.as_slice()].clone();
        (!c.is_zero()).then(|| (s.clone(), c))
    });
    GroupAlgebraElement::from_terms(n, terms).expect("degrees agree")
}

/// The full system `{e_λ}` for `λ ⊢ n`, in the order of [`symgroup::partitions_of`].
pub fn idempotent_system(n: usize, limits: &Limits) -> Result<Vec<(Partition, GroupAlgebraElement)>> {
    let group = symgroup::enumerate_group(n, limits)?;
    let table = symgroup::character_table(n);
    let build = |(lambda, row): &(Partition, Vec<(Partition, i64)>)| {
        (lambda.clone(), idempotent_from_row(n, lambda, row, &group))
    };
    Ok(match limits.pool() {
        Some(pool) => {
            use rayon::prelude::*;
            pool.install(|| table.par_iter().map(build).collect())
        }
        None => table.iter().map(build).collect(),
    })
}

/// One row of [`check_system`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentRow {
    pub partition: Vec<usize>,
    pub dimension: u64,
    pub idempotent: bool,
    pub central: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemCheck {
    pub n: usize,
    pub rows: Vec<IdempotentRow>,
    pub orthogonal: bool,
    pub complete: bool,
    pub dimension_square_sum: u64,
    pub group_order: u64,
    pub pass: bool,
}

/// Checks that the `e_λ` are central, idempotent, pairwise orthogonal and sum
/// to `1`.
///
/// An element is central exactly when its coefficients are constant on
/// conjugacy classes, and a product of central elements is again central, so
/// products are evaluated only at one representative `τ` per class through
/// the counts `#{σ ∈ C_1 : σ⁻¹τ ∈ C_2}`.
pub fn check_system(n: usize, limits: &Limits) -> Result<SystemCheck> {
    let system = idempotent_system(n, limits)?;
    let group = symgroup::enumerate_group(n, limits)?;
    let classes = symgroup::partitions_of(n);
    let class_index: BTreeMap<Vec<usize>, usize> =
        classes.iter().enumerate().map(|(i, p)| (p.parts().to_vec(), i)).collect();
    let class_of: Vec<usize> = group.iter().map(|s| class_index[&s.cycle_type()]).collect();
    let p = classes.len();
    let mut reps = vec![usize::MAX; p];
    for (g, &c) in class_of.iter().enumerate() {
        if reps[c] == usize::MAX {
            reps[c] = g;
        }
    }
    // counts[c][c1 * p + c2]
    let mut counts = vec![vec![0u64; p * p]; p];
    for (c, &r) in reps.iter().enumerate() {
        let tau = &group[r];
        for (g, sigma) in group.iter().enumerate() {
            let c2 = class_index[&sigma.inverse().compose(tau).cycle_type()];
            counts[c][class_of[g] * p + c2] += 1;
        }
    }
    let class_vector = |e: &GroupAlgebraElement| -> (Vec<Rational>, bool) {
        let v: Vec<Rational> = reps.iter().map(|&r| e.coefficient(&group[r])).collect();
        let central = group.iter().zip(&class_of).all(|(s, &c)| e.coefficient(s) == v[c]);
        (v, central)
    };
    let product = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        (0..p)
            .map(|c| {
                let mut acc = Rational::zero();
                for c1 in 0..p {
                    for c2 in 0..p {
                        let k = counts[c][c1 * p + c2];
                        if k > 0 && !a[c1].is_zero() && !b[c2].is_zero() {
                            acc += &(&(&a[c1] * &b[c2]) * &Rational::from(k as usize));
                        }
                    }
                }
                acc
            })
            .collect()
    };

    let vectors: Vec<(Vec<Rational>, bool)> = system.iter().map(|(_, e)| class_vector(e)).collect();
    let rows: Vec<IdempotentRow> = system
        .iter()
        .zip(&vectors)
        .map(|((lambda, _), (v, central))| IdempotentRow {
            partition: lambda.parts().to_vec(),
            dimension: symgroup::hook_dimension(lambda) as u64,
            idempotent: *central && product(v, v) == *v,
            central: *central,
        })
        .collect();
    let all_central = vectors.iter().all(|(_, c)| *c);
    let orthogonal = all_central
        && (0..vectors.len())
            .all(|i| (i + 1..vectors.len()).all(|j| product(&vectors[i].0, &vectors[j].0).iter().all(Zero::is_zero)));
    let total = system.iter().try_fold(GroupAlgebraElement::zero(n), |acc, (_, e)| acc.add(e))?;
    let complete = total == GroupAlgebraElement::one(n);
    let dimension_square_sum = rows.iter().map(|r| r.dimension * r.dimension).sum();
    let group_order = symgroup::factorial(n) as u64;
    let pass =
        orthogonal && complete && rows.iter().all(|r| r.idempotent && r.central) && dimension_square_sum == group_order;
    Ok(SystemCheck { n, rows, orthogonal, complete, dimension_square_sum, group_order, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn unit_and_inverse() {
        let x = GroupAlgebraElement::from_terms(
            3,
            [(perm(&[1, 2, 0]), Rational::new(2, 3)), (perm(&[0, 2, 1]), Rational::from(-1))],
        )
        .unwrap();
        assert_eq!(GroupAlgebraElement::one(3).multiply(&x).unwrap(), x);
        let s = perm(&[2, 0, 1]);
        let prod = GroupAlgebraElement::basis(s.clone()).multiply(&GroupAlgebraElement::basis(s.inverse())).unwrap();
        assert_eq!(prod, GroupAlgebraElement::one(3));
        assert!(matches!(x.multiply(&GroupAlgebraElement::one(2)), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn extreme_projectors() {
        assert_eq!(antisymmetrizer(1, &lim()).unwrap(), GroupAlgebraElement::one(1));
        assert_eq!(symmetrizer(1, &lim()).unwrap(), GroupAlgebraElement::one(1));

        let half = Rational::new(1, 2);
        let a2 = antisymmetrizer(2, &lim()).unwrap();
        assert_eq!(
            a2,
            GroupAlgebraElement::from_terms(2, [(perm(&[0, 1]), half.clone()), (perm(&[1, 0]), -&half)]).unwrap()
        );
        assert_eq!(a2.multiply(&a2).unwrap(), a2);
        let s2 = symmetrizer(2, &lim()).unwrap();
        assert_eq!(
            s2,
            GroupAlgebraElement::from_terms(2, [(perm(&[0, 1]), half.clone()), (perm(&[1, 0]), half)]).unwrap()
        );

        let a3 = antisymmetrizer(3, &lim()).unwrap();
        assert_eq!(a3.len(), 6);
        assert!(a3.terms().all(|(_, c)| c.abs() == Rational::new(1, 6)));
        assert!(symmetrizer(3, &lim()).unwrap().multiply(&a3).unwrap().is_zero());
        assert!(matches!(antisymmetrizer(9, &lim()), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn absorbs_permutations() {
        let a = antisymmetrizer(4, &lim()).unwrap();
        let s = symmetrizer(4, &lim()).unwrap();
        for sigma in symgroup::enumerate_group(4, &lim()).unwrap() {
            let g = GroupAlgebraElement::basis(sigma.clone());
            assert_eq!(a.multiply(&g).unwrap(), a.scale(&Rational::from_integer(sigma.sign())));
            assert_eq!(s.multiply(&g).unwrap(), s);
        }
    }

    #[test]
    fn central_idempotent_extremes() {
        for n in 1..=5 {
            assert_eq!(central_idempotent(&Partition::column(n), &lim()).unwrap(), antisymmetrizer(n, &lim()).unwrap());
            assert_eq!(central_idempotent(&Partition::row(n), &lim()).unwrap(), symmetrizer(n, &lim()).unwrap());
        }
        let mixed = central_idempotent(&Partition::new(vec![2, 1]).unwrap(), &lim()).unwrap();
        let expected = GroupAlgebraElement::one(3)
            .sub(&symmetrizer(3, &lim()).unwrap())
            .unwrap()
            .sub(&antisymmetrizer(3, &lim()).unwrap())
            .unwrap();
        assert_eq!(mixed, expected);
    }

    #[test]
    fn system_small() {
        let sys2 = idempotent_system(2, &lim()).unwrap();
        assert_eq!(sys2.len(), 2);
        let total = sys2.iter().fold(GroupAlgebraElement::zero(2), |acc, (_, e)| acc.add(e).unwrap());
        assert_eq!(total, GroupAlgebraElement::one(2));

        let sys4 = idempotent_system(4, &lim()).unwrap();
        assert_eq!(sys4.len(), 5);
        let mut products = 0;
        for (i, (_, a)) in sys4.iter().enumerate() {
            for (_, b) in sys4.iter().skip(i + 1) {
                assert!(a.multiply(b).unwrap().is_zero());
                products += 1;
            }
        }
        assert_eq!(products, 10);
    }

    #[test]
    fn parallel_matches_serial() {
        let serial = idempotent_system(4, &lim()).unwrap();
        let par = idempotent_system(4, &Limits { threads: 3, ..lim() }).unwrap();
        assert_eq!(serial, par);
    }

    #[test]
    fn system_check_agrees_with_direct_products() {
        for n in 1..=4 {
            let report = check_system(n, &lim()).unwrap();
            assert!(report.pass, "n = {n}");
            let sys = idempotent_system(n, &lim()).unwrap();
            for (i, (_, a)) in sys.iter().enumerate() {
                assert_eq!(&a.multiply(a).unwrap(), a);
                for (_, b) in &sys[i + 1..] {
                    assert!(b.multiply(a).unwrap().is_zero());
                }
            }
        }
        assert_eq!(check_system(3, &lim()).unwrap().rows.len(), 3);
    }

    #[test]
    fn json_form() {
        let a = antisymmetrizer(2, &lim()).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"n":2,"terms":[{"perm":[0,1],"coeff":"1/2"},{"perm":[1,0],"coeff":"-1/2"}]}"#);
        let back: GroupAlgebraElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<GroupAlgebraElement>(r#"{"n":3,"terms":[{"perm":[1,0],"coeff":"1"}]}"#).is_err());
    }
}
