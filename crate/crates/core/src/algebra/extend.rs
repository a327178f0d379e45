//! Extension of non-degenerate homomorphisms `α: A → M(C)` to multipliers.
//!
//! For `m ∈ M(A)` the extension is fixed by `α(m)·(α(a)c) = α(ma)c` and
//! `(cα(a))·α(m) = cα(am)`. Since the products `α(a)c` span `C`, it is
//! enough to evaluate on a basis of `C` chosen among them.

use std::sync::OnceLock;

use crate::algebra::{kron_vec, Multiplier};
use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Scalar};

/// A homomorphism into a multiplier algebra, given on basis elements.
pub struct HomImage {
    images: Vec<Multiplier>,
    target_dim: usize,
    left_span: OnceLock<Option<Spanning>>,
    right_span: OnceLock<Option<Spanning>>,
}

/// Basis of the target chosen among vectors `α(e_s)g_q` (or `g_qα(e_s)`),
/// together with the inverse of the matrix of those vectors.
struct Spanning {
    picks: Vec<(usize, usize)>,
    inverse: Matrix,
}

impl Clone for HomImage {
    fn clone(&self) -> Self {
        HomImage::new(self.target_dim, self.images.clone())
    }
}

impl std::fmt::Debug for HomImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HomImage")
            .field("source_dim", &self.images.len())
            .field("target_dim", &self.target_dim)
            .finish()
    }
}

impl PartialEq for HomImage {
    fn eq(&self, other: &Self) -> bool {
        self.target_dim == other.target_dim && self.images == other.images
    }
}

impl HomImage {
    pub fn new(target_dim: usize, images: Vec<Multiplier>) -> Self {
        assert!(images.iter().all(|m| m.dim() == target_dim));
        HomImage {
            images,
            target_dim,
            left_span: OnceLock::new(),
            right_span: OnceLock::new(),
        }
    }

    /// The inclusion of an algebra into its own multiplier algebra.
    pub fn inclusion(alg: &crate::algebra::Algebra) -> Self {
        let n = alg.dim();
        HomImage::new(
            n,
            (0..n)
                .map(|i| Multiplier::from_element(alg, &crate::algebra::basis_vec(n, i)))
                .collect(),
        )
    }

    /// The identity of `ℂ`.
    pub fn scalar_identity() -> Self {
        HomImage::new(1, vec![Multiplier::unit(1)])
    }

    pub fn source_dim(&self) -> usize {
        self.images.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn image(&self, s: usize) -> &Multiplier {
        &self.images[s]
    }

    pub fn images(&self) -> &[Multiplier] {
        &self.images
    }

    /// `α(x)` for `x = Σ x_s e_s`.
    pub fn apply(&self, x: &[Scalar]) -> Multiplier {
        assert_eq!(x.len(), self.images.len());
        let n = self.target_dim;
        let mut l = Matrix::zeros(n, n);
        let mut r = Matrix::zeros(n, n);
        for (c, m) in x.iter().zip(&self.images) {
            if c.is_zero() {
                continue;
            }
            l = l.add(&m.left().scale(c));
            r = r.add(&m.right().scale(c));
        }
        Multiplier::new(l, r)
    }

    fn vector(&self, right: bool, s: usize, q: usize) -> Vec<Scalar> {
        let m = &self.images[s];
        if right {
            m.right().column(q)
        } else {
            m.left().column(q)
        }
    }

    fn spanning(&self, right: bool) -> Option<&Spanning> {
        let cell = if right { &self.right_span } else { &self.left_span };
        cell.get_or_init(|| {
            let n = self.target_dim;
            let mut ech = crate::exactnum::Echelon::new(n, n);
            let mut picks = Vec::new();
            let mut cols = Vec::new();
            'outer: for s in 0..self.images.len() {
                for q in 0..n {
                    let v = self.vector(right, s, q);
                    if ech.push(v.clone()) {
                        picks.push((s, q));
                        cols.push(v);
                        if picks.len() == n {
                            break 'outer;
                        }
                    }
                }
            }
            if picks.len() < n {
                return None;
            }
            let inverse = Matrix::from_columns(n, &cols).invert().ok()?;
            Some(Spanning { picks, inverse })
        })
        .as_ref()
    }

    /// `α(A)C = C = Cα(A)`.
    pub fn is_nondegenerate(&self) -> bool {
        self.spanning(false).is_some() && self.spanning(true).is_some()
    }

    /// Extension of the homomorphism to `M(A)`.
    pub fn extend(&self, x: &Multiplier) -> Result<Multiplier> {
        let id = HomImage::scalar_identity();
        TensorHom::new(self, &id).extend(x)
    }
}

/// `α⊗β` for homomorphisms `α: A → M(C)`, `β: B → M(D)`, acting from
/// `M(A⊗B)` to `M(C⊗D)`.
pub struct TensorHom<'a> {
    first: &'a HomImage,
    second: &'a HomImage,
}

impl<'a> TensorHom<'a> {
    pub fn new(first: &'a HomImage, second: &'a HomImage) -> Self {
        TensorHom { first, second }
    }

    fn side(&self, x: &Matrix, right: bool) -> Result<Matrix> {
        let (f, g) = (self.first, self.second);
        let sf = f.spanning(right).ok_or_else(|| {
            Error::DegenerateHomomorphism("first factor does not span its target".into())
        })?;
        let sg = g.spanning(right).ok_or_else(|| {
            Error::DegenerateHomomorphism("second factor does not span its target".into())
        })?;
        let (nb, nc, nd) = (g.source_dim(), f.target_dim, g.target_dim);
        let big = nc * nd;
        // Cache of α(e_s)g_q and β(f_t)h_r vectors.
        let mut fcache: Vec<Option<Vec<Scalar>>> = vec![None; f.source_dim() * nc];
        let mut gcache: Vec<Option<Vec<Scalar>>> = vec![None; nb * nd];
        let mut y = Matrix::zeros(big, big);
        for (i, &(s, q)) in sf.picks.iter().enumerate() {
            for (j, &(t, r)) in sg.picks.iter().enumerate() {
                let col_x = x.column(s * nb + t);
                let mut acc = vec![Scalar::zero(); big];
                for (idx, c) in col_x.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (s2, t2) = (idx / nb, idx % nb);
                    let u = fcache[s2 * nc + q]
                        .get_or_insert_with(|| f.vector(right, s2, q))
                        .clone();
                    let v = gcache[t2 * nd + r].get_or_insert_with(|| g.vector(right, t2, r));
                    let uv = kron_vec(&u, v);
                    crate::algebra::add_scaled(&mut acc, c, &uv);
                }
                y.set_column(i * nd + j, &acc);
            }
        }
        Ok(&y * &sf.inverse.kron(&sg.inverse))
    }

    pub fn extend(&self, x: &Multiplier) -> Result<Multiplier> {
        let expected = self.first.source_dim() * self.second.source_dim();
        if x.dim() != expected {
            return Err(Error::DimensionMismatch(format!(
                "multiplier of dimension {} where {} was expected",
                x.dim(),
                expected
            )));
        }
        Ok(Multiplier::new(
            self.side(x.left(), false)?,
            self.side(x.right(), true)?,
        ))
    }
}
