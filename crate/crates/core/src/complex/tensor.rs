//! Tensor products with the Koszul sign rule.
//!
//! Each factor's basis is numbered globally by `(degree, index within the
//! degree)`. A basis tensor is a tuple of such global indices; within each
//! total degree tuples are listed lexicographically, so for two factors the
//! order is by `(p, i, j)` with `p` the degree of the first factor.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{ChainMap, Complex, Degree};
use crate::error::Result;
use crate::linalg::{Matrix, Rational};

/// Bookkeeping for the basis of `C_1 ⊗ … ⊗ C_m`.
#[derive(Clone, Debug)]
pub struct TensorIndex {
    /// Per factor, `(degree, local index)` of each global basis vector.
    factor_basis: Vec<Vec<(Degree, usize)>>,
    /// Per factor, first global index of each degree.
    factor_offset: Vec<BTreeMap<Degree, usize>>,
    tuple_degree: Vec<Degree>,
    tuple_pos: Vec<usize>,
    by_degree: BTreeMap<Degree, Vec<usize>>,
}

impl TensorIndex {
    pub fn new(factors: &[&Complex]) -> TensorIndex {
        let mut factor_basis = Vec::new();
        let mut factor_offset = Vec::new();
        for c in factors {
            let mut basis = Vec::new();
            let mut offsets = BTreeMap::new();
            for k in c.degrees() {
                offsets.insert(k, basis.len());
                basis.extend((0..c.dim(k)).map(|i| (k, i)));
            }
            factor_basis.push(basis);
            factor_offset.push(offsets);
        }
        let count: usize = factor_basis.iter().map(Vec::len).product();
        let mut tuple_degree = Vec::with_capacity(count);
        let mut digits = vec![0usize; factors.len()];
        for id in 0..count {
            if id > 0 {
                // odometer increment, last factor fastest
                let mut j = factors.len();
                loop {
                    j -= 1;
                    digits[j] += 1;
                    if digits[j] < factor_basis[j].len() {
                        break;
                    }
                    digits[j] = 0;
                }
            }
            tuple_degree.push(digits.iter().enumerate().map(|(j, &b)| factor_basis[j][b].0).sum());
        }
        let mut by_degree: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
        let mut tuple_pos = vec![0; count];
        for (id, &n) in tuple_degree.iter().enumerate() {
            let list = by_degree.entry(n).or_default();
            tuple_pos[id] = list.len();
            list.push(id);
        }
        TensorIndex { factor_basis, factor_offset, tuple_degree, tuple_pos, by_degree }
    }

    pub fn factors(&self) -> usize {
        self.factor_basis.len()
    }

    /// Number of basis tensors over all degrees.
    pub fn len(&self) -> usize {
        self.tuple_degree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuple_degree.is_empty()
    }

    pub fn dims(&self) -> impl Iterator<Item = (Degree, usize)> + '_ {
        self.by_degree.iter().map(|(&k, v)| (k, v.len()))
    }

    pub fn dim(&self, k: Degree) -> usize {
        self.by_degree.get(&k).map_or(0, Vec::len)
    }

    /// Tuple ids of total degree `k`, in basis order.
    pub fn ids_in_degree(&self, k: Degree) -> &[usize] {
        self.by_degree.get(&k).map_or(&[], Vec::as_slice)
    }

    pub fn degree_of(&self, id: usize) -> Degree {
        self.tuple_degree[id]
    }

    pub fn position_of(&self, id: usize) -> usize {
        self.tuple_pos[id]
    }

    /// Global basis indices of each factor.
    pub fn digits(&self, mut id: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors()];
        for j in (0..self.factors()).rev() {
            let r = self.factor_basis[j].len();
            out[j] = id % r;
            id /= r;
        }
        out
    }

    pub fn id_of(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.factor_basis).fold(0, |acc, (&b, basis)| acc * basis.len() + b)
    }

    /// `(degree, local index)` of global basis vector `b` of factor `j`.
    pub fn factor_element(&self, j: usize, b: usize) -> (Degree, usize) {
        self.factor_basis[j][b]
    }

    pub fn factor_global(&self, j: usize, degree: Degree, local: usize) -> usize {
        self.factor_offset[j][&degree] + local
    }

    /// Position of `v_1 ⊗ … ⊗ v_m` given each `v_j` as `(degree, local index)`.
    pub fn position(&self, elements: &[(Degree, usize)]) -> (Degree, usize) {
        let digits: Vec<usize> = elements.iter().enumerate().map(|(j, &(k, i))| self.factor_global(j, k, i)).collect();
        let id = self.id_of(&digits);
        (self.tuple_degree[id], self.tuple_pos[id])
    }

    /// Differential of the product,
    /// `d(v_1 ⊗ … ⊗ v_m) = Σ_j (-1)^{|v_1|+…+|v_{j-1}|} v_1 ⊗ … ⊗ dv_j ⊗ … ⊗ v_m`.
    pub fn differential(&self, factors: &[&Complex]) -> Vec<(Degree, Matrix)> {
        let mut out = Vec::new();
        for (&n, ids) in &self.by_degree {
            let rows = self.dim(n - 1);
            if rows == 0 {
                continue;
            }
            let mut m = Matrix::zeros(rows, ids.len());
            for (col, &id) in ids.iter().enumerate() {
                let digits = self.digits(id);
                let mut prefix: Degree = 0;
                for (j, c) in factors.iter().enumerate() {
                    let (p, local) = self.factor_basis[j][digits[j]];
                    if let Some(dp) = c.d_ref(p) {
                        let negate = prefix.rem_euclid(2) == 1;
                        for r in 0..dp.rows() {
                            let v = &dp[(r, local)];
                            if v.is_zero() {
                                continue;
                            }
                            let mut target = digits.clone();
                            target[j] = self.factor_global(j, p - 1, r);
                            let row = self.tuple_pos[self.id_of(&target)];
                            if negate {
                                m[(row, col)] -= v;
                            } else {
                                m[(row, col)] += v;
                            }
                        }
                    }
                    prefix += p;
                }
            }
            out.push((n, m));
        }
        out
    }

    /// The product complex.
    pub fn complex(&self, factors: &[&Complex]) -> Complex {
        Complex::from_parts(self.dims(), self.differential(factors)).expect("tensor shapes")
    }
}

/// `C ⊗ D` with its basis bookkeeping.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub complex: Arc<Complex>,
    pub index: TensorIndex,
}

impl TensorProduct {
    /// Basis position of `x ⊗ y` for `x = (p, i)` in `C` and `y = (q, j)` in `D`.
    pub fn position(&self, x: (Degree, usize), y: (Degree, usize)) -> (Degree, usize) {
        self.index.position(&[x, y])
    }
}

pub fn tensor(c: &Complex, d: &Complex) -> TensorProduct {
    let index = TensorIndex::new(&[c, d]);
    let complex = Arc::new(index.complex(&[c, d]));
    TensorProduct { complex, index }
}

/// `x ⊗ y ↦ (-1)^{|x||y|} y ⊗ x`, as a map `C ⊗ D -> D ⊗ C`.
pub fn braiding(c: &Complex, d: &Complex) -> Result<ChainMap> {
    let cd = tensor(c, d);
    let dc = tensor(d, c);
    let mut blocks = Vec::new();
    for (n, size) in cd.index.dims() {
        let mut m = Matrix::zeros(dc.index.dim(n), size);
        for (col, &id) in cd.index.ids_in_degree(n).iter().enumerate() {
            let digits = cd.index.digits(id);
            let x = cd.index.factor_element(0, digits[0]);
            let y = cd.index.factor_element(1, digits[1]);
            let (_, row) = dc.position(y, x);
            let sign = if (x.0 * y.0).rem_euclid(2) == 1 { -Rational::one() } else { Rational::one() };
            m[(row, col)] = sign;
        }
        blocks.push((n, m));
    }
    ChainMap::new(cd.complex, dc.complex, blocks)
}
