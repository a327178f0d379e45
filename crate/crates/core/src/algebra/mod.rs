//! Finite-dimensional algebras given by structure constants, their
//! multiplier algebras, tensor products and functionals.

mod extend;
mod multiplier;
mod typed;

pub use extend::{HomImage, TensorHom};
pub use multiplier::Multiplier;
pub use typed::{faithful, functional_actions, multiply, Element, Functional};

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result, Witness};
use crate::exactnum::{Echelon, LinearSystem, Matrix, Scalar};

/// Default bound on algebra dimension accepted from input.
pub const DEFAULT_MAX_DIM: usize = 64;

/// Sparse product `e_i·e_j = Σ_k c[k] e_k`.
pub type SparseVec = Vec<(usize, Scalar)>;

pub struct Algebra {
    dim: usize,
    table: Vec<SparseVec>,
    star: Option<Matrix>,
    unit: OnceLock<Option<Vec<Scalar>>>,
    recovery: OnceLock<Option<Recovery>>,
}

/// Inverts `x ↦ (x·e_j)_j` on a chosen set of coordinates.
struct Recovery {
    rows: Vec<(usize, usize)>,
    inverse: Matrix,
}

impl Clone for Algebra {
    fn clone(&self) -> Self {
        Algebra {
            dim: self.dim,
            table: self.table.clone(),
            star: self.star.clone(),
            unit: OnceLock::new(),
            recovery: OnceLock::new(),
        }
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.table == other.table && self.star == other.star
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("dim", &self.dim)
            .field("products", &self.triples().len())
            .field("star", &self.star.is_some())
            .finish()
    }
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn basis_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut s = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s.add_mul(x, y);
        }
    }
    s
}

pub fn add_scaled(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            a.add_mul(c, x);
        }
    }
}

pub fn scale_vec(v: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x * c).collect()
}

pub fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Kronecker product of two vectors, row-major in the first factor.
pub fn kron_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = zero_vec(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i * b.len() + j] = x * y;
            }
        }
    }
    out
}

/// Rank of the span of `vectors`.
pub fn span_rank<'a, I>(len: usize, vectors: I) -> usize
where
    I: IntoIterator<Item = &'a Vec<Scalar>>,
{
    let mut ech = Echelon::new(len, len);
    for v in vectors {
        ech.push(v.clone());
        if ech.rank() == len {
            break;
        }
    }
    ech.rank()
}

/// Index of `e_i ⊗ f_j` in a tensor product whose second factor has
/// dimension `m`.
#[inline]
pub fn pair_index(i: usize, j: usize, m: usize) -> usize {
    i * m + j
}

/// Permutation taking `e_i ⊗ f_j` in `A⊗B` to `f_j ⊗ e_i` in `B⊗A`.
pub fn flip_permutation(n: usize, m: usize) -> Vec<usize> {
    let mut perm = vec![0; n * m];
    for i in 0..n {
        for j in 0..m {
            perm[i * m + j] = j * n + i;
        }
    }
    perm
}

/// Flips the legs of a vector in `A⊗B` (dims `n`, `m`).
pub fn flip_vec(x: &[Scalar], n: usize, m: usize) -> Vec<Scalar> {
    assert_eq!(x.len(), n * m);
    let perm = flip_permutation(n, m);
    let mut out = zero_vec(n * m);
    for (k, v) in x.iter().enumerate() {
        out[perm[k]] = v.clone();
    }
    out
}

impl Algebra {
    /// Builds an algebra from sparse triples `(i, j, k, c)` meaning
    /// `e_i·e_j` has coefficient `c` at `e_k`. Repeated triples accumulate.
    pub fn from_structure_constants<I>(dim: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let mut dense: Vec<Vec<Scalar>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in triples {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::DimensionMismatch(format!(
                    "structure constant ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            let row = &mut dense[i * dim + j];
            if row.is_empty() {
                *row = zero_vec(dim);
            }
            row[k] += &c;
        }
        let table = dense
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        Ok(Algebra::from_table(dim, table))
    }

    fn from_table(dim: usize, table: Vec<SparseVec>) -> Self {
        Algebra {
            dim,
            table,
            star: None,
            unit: OnceLock::new(),
            recovery: OnceLock::new(),
        }
    }

    /// Attaches a conjugate-linear involution; column `i` of `star` holds
    /// the coefficients of `e_i*`.
    pub fn with_star(mut self, star: Matrix) -> Result<Self> {
        if star.rows() != self.dim || star.cols() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "star matrix is {}x{}, algebra has dimension {}",
                star.rows(),
                star.cols(),
                self.dim
            )));
        }
        self.star = Some(star);
        Ok(self)
    }

    pub fn without_star(&self) -> Algebra {
        let mut a = self.clone();
        a.star = None;
        a
    }

    /// The one-dimensional algebra `ℂ` with its usual star.
    pub fn scalars() -> Algebra {
        Algebra::from_structure_constants(1, [(0, 0, 0, Scalar::one())])
            .expect("valid")
            .with_star(Matrix::identity(1))
            .expect("valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn star(&self) -> Option<&Matrix> {
        self.star.as_ref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.basis_product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Nonzero structure constants in lexicographic order.
    pub fn triples(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.basis_product(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(a.len(), self.dim);
        debug_assert_eq!(b.len(), self.dim);
        let mut out = zero_vec(self.dim);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.basis_product(i, j) {
                    out[*k].add_mul(&xy, c);
                }
            }
        }
        out
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim);
        for (k, c) in self.basis_product(i, j) {
            out[*k] = c.clone();
        }
        out
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.basis_product(i, j) {
                    m[(*k, j)].add_mul(x, c);
                }
            }
        }
        m
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_matrix(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.basis_product(j, i) {
                    m[(*k, j)].add_mul(x, c);
                }
            }
        }
        m
    }

    /// First basis triple violating associativity.
    pub fn check_associativity(&self) -> std::result::Result<(), Witness> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_basis(i, j);
                for k in 0..n {
                    let lhs = self.mul(&ij, &basis_vec(n, k));
                    let rhs = self.mul(&basis_vec(n, i), &self.mul_basis(j, k));
                    if lhs != rhs {
                        return Err(Witness::new(&[i, j, k], fmt_vec(&lhs), fmt_vec(&rhs)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply_star(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        let k = self.star.as_ref()?;
        let c: Vec<Scalar> = x.iter().map(Scalar::conj).collect();
        Some(k.mul_vec(&c))
    }

    /// Checks that the star is an involutive anti-multiplicative map.
    pub fn check_star(&self) -> std::result::Result<(), Witness> {
        let Some(k) = &self.star else { return Ok(()) };
        let n = self.dim;
        let twice = k * &k.conj();
        if let Some((r, c)) = twice.first_difference(&Matrix::identity(n)) {
            return Err(Witness::new(&[c, r], twice[(r, c)].clone(), if r == c { "1" } else { "0" }));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.apply_star(&self.mul_basis(i, j)).expect("star");
                let rhs = self.mul(&k.column(j), &k.column(i));
                if lhs != rhs {
                    return Err(Witness::new(&[i, j], fmt_vec(&lhs), fmt_vec(&rhs)));
                }
            }
        }
        Ok(())
    }

    /// Matrix of `x ↦ (x·e_j)_j` (if `right`) or `x ↦ (e_j·x)_j`, with
    /// rows indexed by `j·n + k`.
    fn product_map(&self, right: bool) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                let (a, b) = if right { (i, j) } else { (j, i) };
                for (k, c) in self.basis_product(a, b) {
                    m[(j * n + k, i)] = c.clone();
                }
            }
        }
        m
    }

    /// Both `x ↦ (x·e_j)_j` and `x ↦ (e_j·x)_j` are injective.
    pub fn is_nondegenerate(&self) -> bool {
        self.product_map(true).rank() == self.dim && self.product_map(false).rank() == self.dim
    }

    pub fn unit(&self) -> Option<&[Scalar]> {
        self.unit
            .get_or_init(|| {
                let n = self.dim;
                let mut sys = LinearSystem::new(n);
                for j in 0..n {
                    for k in 0..n {
                        let target = if j == k { Scalar::one() } else { Scalar::zero() };
                        let left: Vec<(usize, Scalar)> = (0..n)
                            .map(|i| (i, self.structure_constant(i, j, k)))
                            .collect();
                        sys.push_sparse(left, target.clone());
                        let right: Vec<(usize, Scalar)> = (0..n)
                            .map(|i| (i, self.structure_constant(j, i, k)))
                            .collect();
                        sys.push_sparse(right, target);
                    }
                }
                sys.solve().particular
            })
            .as_deref()
    }

    fn recovery(&self) -> Option<&Recovery> {
        self.recovery
            .get_or_init(|| {
                let phi = self.product_map(true);
                let rows = phi.independent_rows();
                if rows.len() < self.dim {
                    return None;
                }
                let sub = Matrix::from_fn(self.dim, self.dim, |r, c| phi[(rows[r], c)].clone());
                let inverse = sub.invert().ok()?;
                let n = self.dim;
                Some(Recovery {
                    rows: rows.into_iter().map(|r| (r / n, r % n)).collect(),
                    inverse,
                })
            })
            .as_ref()
    }

    /// The element of `A` realizing the multiplier, if there is one.
    pub fn element_of(&self, m: &Multiplier) -> Option<Vec<Scalar>> {
        assert_eq!(m.dim(), self.dim);
        let x = match self.unit() {
            Some(u) => m.apply_left(u),
            None => {
                let rec = self.recovery()?;
                let mut cols: Vec<Option<Vec<Scalar>>> = vec![None; self.dim];
                let y: Vec<Scalar> = rec
                    .rows
                    .iter()
                    .map(|&(j, k)| {
                        cols[j]
                            .get_or_insert_with(|| m.left().column(j))[k]
                            .clone()
                    })
                    .collect();
                rec.inverse.mul_vec(&y)
            }
        };
        let xm = Multiplier::from_element(self, &x);
        (xm == *m).then_some(x)
    }

    /// The element `m_1·m_2·…·m_r`, computed on the assumption that the
    /// product of the given multipliers lies in `A`.
    pub fn element_of_product(&self, chain: &[&Multiplier]) -> Option<Vec<Scalar>> {
        if let Some(u) = self.unit() {
            let mut v = u.to_vec();
            for m in chain.iter().rev() {
                v = m.apply_left(&v);
            }
            return Some(v);
        }
        let mut prod = Multiplier::unit(self.dim);
        for m in chain {
            prod = prod.mul(m);
        }
        self.element_of(&prod)
    }

    /// Tensor product algebra; `e_i⊗f_j` has index `i·dim(B) + j`.
    pub fn tensor(&self, other: &Algebra) -> Algebra {
        let (n, m) = (self.dim, other.dim);
        let mut table = vec![Vec::new(); n * m * n * m];
        for i in 0..n {
            for k in 0..n {
                let ik = self.basis_product(i, k);
                if ik.is_empty() {
                    continue;
                }
                for j in 0..m {
                    for l in 0..m {
                        let jl = other.basis_product(j, l);
                        let entry: &mut SparseVec =
                            &mut table[(i * m + j) * (n * m) + (k * m + l)];
                        for (p, c) in ik {
                            for (q, d) in jl {
                                entry.push((p * m + q, c * d));
                            }
                        }
                        entry.sort_by_key(|(idx, _)| *idx);
                    }
                }
            }
        }
        let mut alg = Algebra::from_table(n * m, table);
        if let (Some(ka), Some(kb)) = (&self.star, &other.star) {
            alg.star = Some(ka.kron(kb));
        }
        alg
    }

    /// All pairs `(L, R)` satisfying the two-sided multiplier relations.
    pub fn multiplier_algebra(&self) -> Result<Vec<Multiplier>> {
        if !self.is_nondegenerate() {
            return Err(Error::DegenerateAlgebra);
        }
        let n = self.dim;
        let l = |k: usize, j: usize| k * n + j;
        let r = |k: usize, j: usize| n * n + k * n + j;
        let mut sys = LinearSystem::new(2 * n * n);
        for a in 0..n {
            for b in 0..n {
                for t in 0..n {
                    // R(e_a)·e_b = e_a·L(e_b), coefficient of e_t.
                    let mut eq = Vec::new();
                    for k in 0..n {
                        let c1 = self.structure_constant(k, b, t);
                        if !c1.is_zero() {
                            eq.push((r(k, a), c1));
                        }
                        let c2 = self.structure_constant(a, k, t);
                        if !c2.is_zero() {
                            eq.push((l(k, b), -c2));
                        }
                    }
                    sys.push_sparse(eq, Scalar::zero());
                    // L(e_a e_b) = L(e_a)·e_b.
                    let mut eq = Vec::new();
                    for (s, c) in self.basis_product(a, b) {
                        eq.push((l(t, *s), c.clone()));
                    }
                    for k in 0..n {
                        let c = self.structure_constant(k, b, t);
                        if !c.is_zero() {
                            eq.push((l(k, a), -c));
                        }
                    }
                    sys.push_sparse(eq, Scalar::zero());
                    // R(e_a e_b) = e_a·R(e_b).
                    let mut eq = Vec::new();
                    for (s, c) in self.basis_product(a, b) {
                        eq.push((r(t, *s), c.clone()));
                    }
                    for k in 0..n {
                        let c = self.structure_constant(a, k, t);
                        if !c.is_zero() {
                            eq.push((r(k, b), -c));
                        }
                    }
                    sys.push_sparse(eq, Scalar::zero());
                }
            }
        }
        Ok(sys
            .solve()
            .nullspace_basis
            .into_iter()
            .map(|v| {
                let left = Matrix::from_fn(n, n, |k, j| v[l(k, j)].clone());
                let right = Matrix::from_fn(n, n, |k, j| v[r(k, j)].clone());
                Multiplier::new(left, right)
            })
            .collect())
    }

    /// Some `c` with `c·a = a·c = a` for every given `a`.
    pub fn local_unit(&self, items: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        let n = self.dim;
        let mut sys = LinearSystem::new(n);
        for a in items {
            if a.len() != n {
                return Err(Error::AlgebraMismatch("element length".into()));
            }
            let l = self.right_matrix(a);
            let r = self.left_matrix(a);
            for t in 0..n {
                sys.push_row(l.row(t), a[t].clone());
                sys.push_row(r.row(t), a[t].clone());
            }
        }
        sys.solve().particular.ok_or(Error::NoLocalUnit)
    }

    /// Gram matrix `G_ij = ω(e_i e_j)`.
    pub fn gram(&self, omega: &[Scalar]) -> Matrix {
        let n = self.dim;
        Matrix::from_fn(n, n, |i, j| {
            let mut s = Scalar::zero();
            for (k, c) in self.basis_product(i, j) {
                s.add_mul(c, &omega[*k]);
            }
            s
        })
    }
}
