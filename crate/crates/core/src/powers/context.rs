use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use crate::complex::{ChainMap, Complex, Degree, GradedDims, SplitImage, TensorIndex};
use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElement;
use crate::limits::Limits;
use crate::linalg::Matrix;
use crate::symgroup::Permutation;

/// The `m`-th tensor power of a complex with its basis bookkeeping.
///
/// `Γ_σ` moves the factor in position `j` to position `σ(j)`, with the
/// Koszul sign `(-1)^{|v_j||v_k|}` for every pair `j < k` that it reverses.
#[derive(Clone, Debug)]
pub struct PowerContext {
    base: Arc<Complex>,
    m: usize,
    index: TensorIndex,
    power: Arc<Complex>,
    /// Σ_m-orbits of basis tuples: tuple ids sharing a multiset of factors.
    orbits: Vec<Orbit>,
}

#[derive(Clone, Debug)]
struct Orbit {
    pub degree: Degree,
    /// Increasing tuple ids.
    pub ids: Vec<usize>,
}

impl PowerContext {
    pub fn new(base: Arc<Complex>, m: usize, limits: &Limits) -> Result<PowerContext> {
        limits.check_power(m)?;
        limits.check_dim(base.total_dim())?;
        let mut dims = GradedDims::from_iter([(0, 1)]);
        for _ in 0..m {
            dims = dims.convolve(&base.dims());
        }
        limits.check_blocks(dims.iter().map(|(_, n)| n))?;
        let factors = vec![base.as_ref(); m];
        let index = TensorIndex::new(&factors);
        let power = Arc::new(index.complex(&factors));
        let mut by_key: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for id in 0..index.len() {
            let mut key = index.digits(id);
            key.sort_unstable();
            by_key.entry(key).or_default().push(id);
        }
        let orbits = by_key.into_values().map(|ids| Orbit { degree: index.degree_of(ids[0]), ids }).collect();
        Ok(PowerContext { base, m, index, power, orbits })
    }

    pub fn base(&self) -> &Arc<Complex> {
        &self.base
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn index(&self) -> &TensorIndex {
        &self.index
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.power
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n != self.m {
            return Err(Error::DegreeMismatch { expected: self.m, found: n });
        }
        Ok(())
    }

    /// Image of basis tuple `id` under `Γ_σ`: the target tuple and whether
    /// the Koszul sign is negative.
    pub(crate) fn permute(&self, sigma: &Permutation, id: usize) -> (usize, bool) {
        let digits = self.index.digits(id);
        let mut moved = vec![0; self.m];
        for (j, &b) in digits.iter().enumerate() {
            moved[sigma.apply(j)] = b;
        }
        let odd: Vec<bool> =
            digits.iter().enumerate().map(|(j, &b)| self.index.factor_element(j, b).0.rem_euclid(2) == 1).collect();
        let mut negative = false;
        for j in 0..self.m {
            if !odd[j] {
                continue;
            }
            for (k, &odd_k) in odd.iter().enumerate().skip(j + 1) {
                if odd_k && sigma.apply(j) > sigma.apply(k) {
                    negative = !negative;
                }
            }
        }
        (self.index.id_of(&moved), negative)
    }

    /// `Γ(a) = Σ a_σ Γ_σ` as dense blocks per degree.
    pub fn action_blocks(&self, a: &GroupAlgebraElement) -> Result<BTreeMap<Degree, Matrix>> {
        self.check_degree(a.degree())?;
        let mut blocks: BTreeMap<Degree, Matrix> = self.index.dims().map(|(k, n)| (k, Matrix::zeros(n, n))).collect();
        for (sigma, c) in a.terms() {
            for id in 0..self.index.len() {
                let (t, neg) = self.permute(sigma, id);
                let block = blocks.get_mut(&self.index.degree_of(id)).expect("degree present");
                let slot = &mut block[(self.index.position_of(t), self.index.position_of(id))];
                if neg {
                    *slot -= c;
                } else {
                    *slot += c;
                }
            }
        }
        Ok(blocks)
    }

    pub fn gamma(&self, sigma: &Permutation) -> Result<ChainMap> {
        self.action(&GroupAlgebraElement::basis(sigma.clone()))
    }

    pub fn action(&self, a: &GroupAlgebraElement) -> Result<ChainMap> {
        let blocks = self.action_blocks(a)?;
        ChainMap::from_parts(self.power.clone(), self.power.clone(), blocks)
    }

    /// `Γ(a)` restricted to one orbit, in the orbit's own coordinates.
    fn action_on_orbit(&self, a: &GroupAlgebraElement, orbit: &Orbit) -> Matrix {
        let size = orbit.ids.len();
        let mut out = Matrix::zeros(size, size);
        for (sigma, c) in a.terms() {
            for (col, &id) in orbit.ids.iter().enumerate() {
                let (t, neg) = self.permute(sigma, id);
                let row = orbit.ids.binary_search(&t).expect("Γ preserves orbits");
                if neg {
                    out[(row, col)] -= c;
                } else {
                    out[(row, col)] += c;
                }
            }
        }
        out
    }

    /// `Γ(a)` between coordinate subsets: columns indexed by the tuple ids
    /// `cols`, rows by `rows`. Components landing outside `rows` are dropped,
    /// so this is `π_rows ∘ Γ(a) ∘ ι_cols`.
    pub fn action_matrix(&self, a: &GroupAlgebraElement, cols: &[usize], rows: &[usize]) -> Result<Matrix> {
        self.check_degree(a.degree())?;
        let row_of: HashMap<usize, usize> = rows.iter().enumerate().map(|(r, &id)| (id, r)).collect();
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (sigma, c) in a.terms() {
            for (col, &id) in cols.iter().enumerate() {
                let (t, neg) = self.permute(sigma, id);
                let Some(&row) = row_of.get(&t) else { continue };
                if neg {
                    out[(row, col)] -= c;
                } else {
                    out[(row, col)] += c;
                }
            }
        }
        Ok(out)
    }

    /// Applies `Γ(a)` to the columns of `v`, a block of vectors in degree `k`.
    pub fn apply(&self, a: &GroupAlgebraElement, k: Degree, v: &Matrix) -> Result<Matrix> {
        self.check_degree(a.degree())?;
        let ids = self.index.ids_in_degree(k);
        if v.rows() != ids.len() {
            return Err(Error::Shape(format!("{} rows for a degree of dimension {}", v.rows(), ids.len())));
        }
        let mut out = Matrix::zeros(v.rows(), v.cols());
        for (sigma, c) in a.terms() {
            for (pos, &id) in ids.iter().enumerate() {
                let (t, neg) = self.permute(sigma, id);
                let row = self.index.position_of(t);
                for col in 0..v.cols() {
                    let x = &v[(pos, col)];
                    if x.is_zero() {
                        continue;
                    }
                    let term = c * x;
                    if neg {
                        out[(row, col)] -= &term;
                    } else {
                        out[(row, col)] += &term;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Image of the idempotent `Γ(e)`, split orbit by orbit and restricted to
    /// the orbits accepted by `keep`. The kept orbits must span a subcomplex.
    pub(crate) fn split_image<F>(&self, e: &GroupAlgebraElement, keep: F) -> Result<SplitImage>
    where
        F: Fn(&[usize]) -> bool,
    {
        self.check_degree(e.degree())?;
        let mut pieces: BTreeMap<Degree, Vec<(Vec<usize>, Matrix, Matrix)>> = BTreeMap::new();
        for orbit in &self.orbits {
            if !keep(&self.index.digits(orbit.ids[0])) {
                continue;
            }
            let local = self.action_on_orbit(e, orbit);
            let split = local.split_idempotent()?;
            if split.rank() == 0 {
                continue;
            }
            let positions = orbit.ids.iter().map(|&id| self.index.position_of(id)).collect();
            pieces.entry(orbit.degree).or_default().push((positions, split.inclusion, split.projection));
        }
        let mut inc = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for (&k, list) in &pieces {
            let n = self.index.dim(k);
            let r: usize = list.iter().map(|(_, c, _)| c.cols()).sum();
            let mut c_mat = Matrix::zeros(n, r);
            let mut r_mat = Matrix::zeros(r, n);
            let mut offset = 0;
            for (positions, c, p) in list {
                for (li, &gi) in positions.iter().enumerate() {
                    for j in 0..c.cols() {
                        c_mat[(gi, offset + j)] = c[(li, j)].clone();
                        r_mat[(offset + j, gi)] = p[(j, li)].clone();
                    }
                }
                offset += c.cols();
            }
            inc.insert(k, c_mat);
            proj.insert(k, r_mat);
        }
        let mut diffs = Vec::new();
        for (&k, c) in &inc {
            let (Some(dk), Some(below)) = (self.power.d_ref(k), proj.get(&(k - 1))) else { continue };
            diffs.push((k, below.mul(&dk.mul(c)?)?));
        }
        let dims: Vec<_> = inc.iter().map(|(&k, c)| (k, c.cols())).collect();
        let complex = Arc::new(Complex::from_parts(dims, diffs)?);
        let inclusion = ChainMap::from_parts(complex.clone(), self.power.clone(), inc)?;
        let projection = ChainMap::from_parts(self.power.clone(), complex.clone(), proj)?;
        Ok(SplitImage { complex, inclusion, projection })
    }
}
