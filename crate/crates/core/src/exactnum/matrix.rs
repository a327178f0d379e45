//! Dense exact matrices and row reduction.
//!
//! All elimination goes through [`Echelon`], an incremental row-echelon
//! builder. Rows can be fed one at a time, which keeps large overdetermined
//! systems (tens of thousands of equations in a few dozen unknowns) down to
//! at most `unknowns` stored rows. The final reduced form is canonical, so
//! nullspace bases do not depend on the order equations were added in.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::error::{Error, Result};
use crate::exactnum::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    /// A permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let mut m = Matrix::zeros(perm.len(), perm.len());
        for (j, &i) in perm.iter().enumerate() {
            m[(i, j)] = Scalar::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn set_column(&mut self, c: usize, values: &[Scalar]) {
        assert_eq!(values.len(), self.rows);
        for (r, v) in values.iter().enumerate() {
            self[(r, c)] = v.clone();
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::conj).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = &self[(r, c)];
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// First entry where `self` and `other` differ, as `(row, col)`.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols, k % self.cols))
    }

    /// Matrix-vector product, skipping zero entries of `v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "mul_vec dimension");
        let mut out = vec![Scalar::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                o.add_mul(&self.data[r * self.cols + c], x);
            }
        }
        out
    }

    /// Row-vector product `vᵀ·M`.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows, "vec_mul dimension");
        let mut out = vec![Scalar::zero(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                o.add_mul(x, &self.data[r * self.cols + c]);
            }
        }
        out
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        // Column sparsity of the left factor.
        let mut col_nz: Vec<Vec<usize>> = vec![Vec::new(); self.cols];
        for r in 0..self.rows {
            for (c, nz) in col_nz.iter_mut().enumerate() {
                if !self.data[r * self.cols + c].is_zero() {
                    nz.push(r);
                }
            }
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for k in 0..rhs.rows {
            for j in 0..rhs.cols {
                let b = &rhs.data[k * rhs.cols + j];
                if b.is_zero() {
                    continue;
                }
                for &i in &col_nz[k] {
                    out.data[i * rhs.cols + j].add_mul(&self.data[i * self.cols + k], b);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; row index `(i, k)` maps to `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Full affine solution set of `self · x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Result<AffineSolutionSet> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows but right-hand side has length {}",
                self.rows,
                b.len()
            )));
        }
        let mut sys = LinearSystem::new(self.cols);
        for (r, rhs) in b.iter().enumerate() {
            sys.push_row(self.row(r), rhs.clone());
        }
        Ok(sys.solve())
    }

    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut sys = LinearSystem::new(self.cols);
        for r in 0..self.rows {
            sys.push_row(self.row(r), Scalar::zero());
        }
        sys.solve().nullspace_basis
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols, self.cols);
        for r in 0..self.rows {
            ech.push(self.row(r).to_vec());
        }
        ech.rank()
    }

    /// Indices of the leftmost maximal set of linearly independent columns.
    pub fn independent_columns(&self) -> Vec<usize> {
        let mut ech = Echelon::new(self.cols, self.cols);
        for r in 0..self.rows {
            ech.push(self.row(r).to_vec());
        }
        ech.pivot_columns()
    }

    /// Indices of the first maximal set of linearly independent rows.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut ech = Echelon::new(self.cols, self.cols);
        let mut chosen = Vec::new();
        for r in 0..self.rows {
            if ech.push(self.row(r).to_vec()) {
                chosen.push(r);
            }
        }
        chosen
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn invert(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut ech = Echelon::new(2 * n, n);
        for r in 0..n {
            let mut row = self.row(r).to_vec();
            row.extend((0..n).map(|c| if c == r { Scalar::one() } else { Scalar::zero() }));
            ech.push(row);
        }
        if ech.rank() != n {
            return Err(Error::Singular);
        }
        let reduced = ech.into_reduced();
        Ok(Matrix::from_fn(n, n, |r, c| reduced[&r][n + c].clone()))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product dimensions")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Solution set `{particular + span(nullspace_basis)}` of a linear system.
/// `particular` is absent iff the system is inconsistent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutionSet {
    pub particular: Option<Vec<Scalar>>,
    pub nullspace_basis: Vec<Vec<Scalar>>,
}

impl AffineSolutionSet {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }

    /// The solution when it exists and is unique.
    pub fn unique(&self) -> Option<&[Scalar]> {
        match &self.particular {
            Some(p) if self.nullspace_basis.is_empty() => Some(p),
            _ => None,
        }
    }
}

/// Incremental row-echelon form over the first `coef_cols` columns of rows
/// of length `width`. Trailing columns ride along as right-hand sides.
#[derive(Debug, Clone)]
pub struct Echelon {
    width: usize,
    coef_cols: usize,
    pivots: BTreeMap<usize, Vec<Scalar>>,
    inconsistent: bool,
}

impl Echelon {
    pub fn new(width: usize, coef_cols: usize) -> Self {
        assert!(coef_cols <= width);
        Echelon {
            width,
            coef_cols,
            pivots: BTreeMap::new(),
            inconsistent: false,
        }
    }

    fn reduce(&self, row: &mut [Scalar]) {
        for (&c, prow) in &self.pivots {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for k in c..self.width {
                if !prow[k].is_zero() {
                    row[k].sub_mul(&f, &prow[k]);
                }
            }
        }
    }

    /// Adds a row; returns true if it was independent of the rows so far
    /// (on the coefficient columns).
    pub fn push(&mut self, mut row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.width, "row width");
        self.reduce(&mut row);
        let Some(lead) = (0..self.coef_cols).find(|&k| !row[k].is_zero()) else {
            if row[self.coef_cols..].iter().any(|x| !x.is_zero()) {
                self.inconsistent = true;
            }
            return false;
        };
        let inv = row[lead].inv().expect("nonzero pivot");
        for x in row[lead..].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.pivots.insert(lead, row);
        true
    }

    /// True if `row` already lies in the span of the pushed rows.
    pub fn contains(&self, row: &[Scalar]) -> bool {
        let mut row = row.to_vec();
        self.reduce(&mut row);
        row.iter().all(Scalar::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Back-substitutes to reduced row-echelon form, keyed by pivot column.
    pub fn into_reduced(mut self) -> BTreeMap<usize, Vec<Scalar>> {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &c in &cols {
            let prow = self.pivots[&c].clone();
            for (&other, row) in self.pivots.range_mut(..c) {
                debug_assert!(other < c);
                if row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for k in c..self.width {
                    if !prow[k].is_zero() {
                        row[k].sub_mul(&f, &prow[k]);
                    }
                }
            }
        }
        self.pivots
    }
}

/// A linear system in a fixed number of unknowns, built one equation at a
/// time.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    unknowns: usize,
    echelon: Echelon,
}

impl LinearSystem {
    pub fn new(unknowns: usize) -> Self {
        LinearSystem {
            unknowns,
            echelon: Echelon::new(unknowns + 1, unknowns),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn push_row(&mut self, coeffs: &[Scalar], rhs: Scalar) {
        assert_eq!(coeffs.len(), self.unknowns);
        let mut row = coeffs.to_vec();
        row.push(rhs);
        self.echelon.push(row);
    }

    /// Adds `Σ coeff·x[index] = rhs`; repeated indices accumulate.
    pub fn push_sparse<I>(&mut self, coeffs: I, rhs: Scalar)
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut row = vec![Scalar::zero(); self.unknowns + 1];
        for (k, v) in coeffs {
            row[k] += &v;
        }
        row[self.unknowns] = rhs;
        self.echelon.push(row);
    }

    pub fn is_inconsistent(&self) -> bool {
        self.echelon.is_inconsistent()
    }

    pub fn solve(self) -> AffineSolutionSet {
        let n = self.unknowns;
        if self.echelon.is_inconsistent() {
            let reduced = self.echelon.into_reduced();
            return AffineSolutionSet {
                particular: None,
                nullspace_basis: nullspace_from(&reduced, n),
            };
        }
        let reduced = self.echelon.into_reduced();
        let mut particular = vec![Scalar::zero(); n];
        for (&c, row) in &reduced {
            particular[c] = row[n].clone();
        }
        AffineSolutionSet {
            particular: Some(particular),
            nullspace_basis: nullspace_from(&reduced, n),
        }
    }
}

fn nullspace_from(reduced: &BTreeMap<usize, Vec<Scalar>>, n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .filter(|c| !reduced.contains_key(c))
        .map(|free| {
            let mut v = vec![Scalar::zero(); n];
            v[free] = Scalar::one();
            for (&c, row) in reduced {
                if !row[free].is_zero() {
                    v[c] = -&row[free];
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn solve_identity() {
        let b = v(&[3, -1, 7]);
        let sol = Matrix::identity(3).solve(&b).unwrap();
        assert_eq!(sol.particular.as_deref(), Some(&b[..]));
        assert!(sol.nullspace_basis.is_empty());
    }

    #[test]
    fn solve_zero_map() {
        let sol = Matrix::zeros(2, 2).solve(&v(&[0, 0])).unwrap();
        assert_eq!(sol.particular, Some(v(&[0, 0])));
        assert_eq!(sol.nullspace_basis.len(), 2);
    }

    #[test]
    fn solve_rank_one() {
        // Hand reduction: [[1,1],[2,2]] -> [[1,1],[0,0]]; x = (1,0) + t(-1,1).
        let a = m(&[&[1, 1], &[2, 2]]);
        let sol = a.solve(&v(&[1, 2])).unwrap();
        assert_eq!(sol.particular, Some(v(&[1, 0])));
        assert_eq!(sol.nullspace_basis, vec![v(&[-1, 1])]);
        // (1,-1) spans the same line.
        let n = &sol.nullspace_basis[0];
        assert_eq!(&n[0] + &n[1], Scalar::zero());
    }

    #[test]
    fn solve_inconsistent() {
        let sol = m(&[&[1, 1], &[2, 2]]).solve(&v(&[1, 3])).unwrap();
        assert!(sol.particular.is_none());
    }

    #[test]
    fn solve_dimension_mismatch() {
        assert!(matches!(
            Matrix::identity(2).solve(&v(&[1])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(Matrix::identity(4).invert().unwrap(), Matrix::identity(4));
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.invert().unwrap(), swap);
        let shear = m(&[&[1, 1], &[0, 1]]);
        let inv = shear.invert().unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[0, 1]]));
        assert!((&inv * &shear).is_identity());
        assert!(matches!(m(&[&[1, 2], &[2, 4]]).invert(), Err(Error::Singular)));
    }

    #[test]
    fn kron_and_independence() {
        let a = m(&[&[1, 2], &[0, 1]]);
        let k = a.kron(&Matrix::identity(2));
        assert_eq!(k[(0, 2)], Scalar::from_int(2));
        assert_eq!(k[(1, 3)], Scalar::from_int(2));
        let c = m(&[&[1, 2, 3], &[2, 4, 7]]);
        assert_eq!(c.independent_columns(), vec![0, 2]);
        assert_eq!(m(&[&[1, 1], &[2, 2], &[0, 1]]).independent_rows(), vec![0, 2]);
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-3i64..4, n * n).prop_map(move |xs| {
            Matrix::from_fn(n, n, |r, c| Scalar::from_int(xs[r * n + c]))
        })
    }

    proptest! {
        #[test]
        fn inverse_both_sides(a in arb_matrix(4)) {
            if let Ok(inv) = a.invert() {
                prop_assert!((&inv * &a).is_identity());
                prop_assert!((&a * &inv).is_identity());
            } else {
                prop_assert!(a.rank() < 4);
            }
        }

        #[test]
        fn solutions_satisfy_system(
            a in proptest::collection::vec(-3i64..4, 12),
            b in proptest::collection::vec(-3i64..4, 3),
        ) {
            let a = Matrix::from_fn(3, 4, |r, c| Scalar::from_int(a[r * 4 + c]));
            let b = v(&b);
            let sol = a.solve(&b).unwrap();
            for n in &sol.nullspace_basis {
                prop_assert!(a.mul_vec(n).iter().all(Scalar::is_zero));
            }
            if let Some(p) = &sol.particular {
                prop_assert_eq!(a.mul_vec(p), b);
            }
            prop_assert_eq!(sol.nullspace_basis.len(), 4 - a.rank());
        }
    }
}
