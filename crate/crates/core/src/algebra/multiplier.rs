use crate::algebra::{basis_vec, fmt_vec, Algebra};
use crate::error::{Error, Result, Witness};
use crate::exactnum::{Matrix, Scalar};

/// A two-sided multiplier, stored as the pair of maps `x ↦ m·x` (left)
/// and `x ↦ x·m` (right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplier {
    left: Matrix,
    right: Matrix,
}

impl Multiplier {
    pub fn new(left: Matrix, right: Matrix) -> Self {
        assert!(left.is_square() && right.is_square() && left.rows() == right.rows());
        Multiplier { left, right }
    }

    pub fn unit(n: usize) -> Self {
        Multiplier::new(Matrix::identity(n), Matrix::identity(n))
    }

    pub fn zero(n: usize) -> Self {
        Multiplier::new(Matrix::zeros(n, n), Matrix::zeros(n, n))
    }

    pub fn from_element(alg: &Algebra, a: &[Scalar]) -> Self {
        Multiplier::new(alg.left_matrix(a), alg.right_matrix(a))
    }

    pub fn dim(&self) -> usize {
        self.left.rows()
    }

    pub fn left(&self) -> &Matrix {
        &self.left
    }

    pub fn right(&self) -> &Matrix {
        &self.right
    }

    pub fn into_parts(self) -> (Matrix, Matrix) {
        (self.left, self.right)
    }

    /// `m·x`
    pub fn apply_left(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.left.mul_vec(x)
    }

    /// `x·m`
    pub fn apply_right(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.right.mul_vec(x)
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.left.is_identity() && self.right.is_identity()
    }

    /// Product `self·other`.
    pub fn mul(&self, other: &Multiplier) -> Multiplier {
        Multiplier::new(&self.left * &other.left, &other.right * &self.right)
    }

    pub fn add(&self, other: &Multiplier) -> Multiplier {
        Multiplier::new(self.left.add(&other.left), self.right.add(&other.right))
    }

    pub fn sub(&self, other: &Multiplier) -> Multiplier {
        Multiplier::new(self.left.sub(&other.left), self.right.sub(&other.right))
    }

    pub fn scale(&self, c: &Scalar) -> Multiplier {
        Multiplier::new(self.left.scale(c), self.right.scale(c))
    }

    pub fn is_invertible(&self) -> bool {
        self.left.is_invertible() && self.right.is_invertible()
    }

    pub fn inverse(&self) -> Result<Multiplier> {
        let l = self
            .left
            .invert()
            .map_err(|_| Error::NotInvertible("left action is singular".into()))?;
        let r = self
            .right
            .invert()
            .map_err(|_| Error::NotInvertible("right action is singular".into()))?;
        Ok(Multiplier::new(l, r))
    }

    /// `m₁⊗m₂` on the tensor product of the underlying algebras.
    pub fn kron(&self, other: &Multiplier) -> Multiplier {
        Multiplier::new(self.left.kron(&other.left), self.right.kron(&other.right))
    }

    /// Image under an algebra isomorphism with matrix `alpha`.
    pub fn transport(&self, alpha: &Matrix, alpha_inv: &Matrix) -> Multiplier {
        Multiplier::new(
            &(alpha * &self.left) * alpha_inv,
            &(alpha * &self.right) * alpha_inv,
        )
    }

    /// Image under an algebra anti-isomorphism with matrix `beta`; left and
    /// right actions trade places.
    pub fn transport_anti(&self, beta: &Matrix, beta_inv: &Matrix) -> Multiplier {
        Multiplier::new(
            &(beta * &self.right) * beta_inv,
            &(beta * &self.left) * beta_inv,
        )
    }

    /// Relabels the basis by a permutation (`j ↦ perm[j]`).
    pub fn permute(&self, perm: &[usize]) -> Multiplier {
        let n = self.dim();
        let mut l = Matrix::zeros(n, n);
        let mut r = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                l[(perm[i], perm[j])] = self.left[(i, j)].clone();
                r[(perm[i], perm[j])] = self.right[(i, j)].clone();
            }
        }
        Multiplier::new(l, r)
    }

    /// Adjoint multiplier: `m*·x = (x*·m)*` and `x·m* = (m·x*)*`.
    pub fn star(&self, alg: &Algebra) -> Result<Multiplier> {
        let k = alg.star().ok_or(Error::NoStarStructure)?;
        let kc = k.conj();
        Ok(Multiplier::new(
            &(k * &self.right.conj()) * &kc,
            &(k * &self.left.conj()) * &kc,
        ))
    }

    /// Checks `R(e_a)·e_b = e_a·L(e_b)`, `L(e_b e_c) = L(e_b)e_c` and
    /// `R(e_a e_b) = e_a R(e_b)` on all basis elements.
    pub fn check_compatibility(&self, alg: &Algebra) -> std::result::Result<(), Witness> {
        let n = alg.dim();
        assert_eq!(n, self.dim());
        let lcols: Vec<Vec<Scalar>> = (0..n).map(|j| self.left.column(j)).collect();
        let rcols: Vec<Vec<Scalar>> = (0..n).map(|j| self.right.column(j)).collect();
        for a in 0..n {
            let ea = basis_vec(n, a);
            for b in 0..n {
                let eb = basis_vec(n, b);
                let lhs = alg.mul(&rcols[a], &eb);
                let rhs = alg.mul(&ea, &lcols[b]);
                if lhs != rhs {
                    return Err(Witness::new(&[a, b], fmt_vec(&lhs), fmt_vec(&rhs)));
                }
                let ab = alg.mul_basis(a, b);
                let lhs = self.left.mul_vec(&ab);
                let rhs = alg.mul(&lcols[a], &eb);
                if lhs != rhs {
                    return Err(Witness::new(&[a, b], fmt_vec(&lhs), fmt_vec(&rhs)));
                }
                let lhs = self.right.mul_vec(&ab);
                let rhs = alg.mul(&ea, &rcols[b]);
                if lhs != rhs {
                    return Err(Witness::new(&[a, b], fmt_vec(&lhs), fmt_vec(&rhs)));
                }
            }
        }
        Ok(())
    }

    /// First basis vector on which two multipliers differ, reported as
    /// `(side, index)` with side 0 for the left action, 1 for the right.
    pub fn difference(&self, other: &Multiplier) -> Option<Witness> {
        if let Some((r, c)) = self.left.first_difference(&other.left) {
            return Some(Witness::new(
                &[0, c, r],
                self.left[(r, c)].clone(),
                other.left[(r, c)].clone(),
            ));
        }
        self.right.first_difference(&other.right).map(|(r, c)| {
            Witness::new(&[1, c, r], self.right[(r, c)].clone(), other.right[(r, c)].clone())
        })
    }
}
