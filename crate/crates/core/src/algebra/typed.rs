//! Elements and functionals that carry their algebra.

use std::sync::Arc;

use crate::algebra::{dot, Algebra, Multiplier};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    algebra: Arc<Algebra>,
    coeffs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    algebra: Arc<Algebra>,
    covector: Vec<Scalar>,
}

fn same(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch(format!(
            "dimension {} vs {}",
            a.dim(),
            b.dim()
        )))
    }
}

impl Element {
    pub fn new(algebra: Arc<Algebra>, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in algebra of dimension {}",
                coeffs.len(),
                algebra.dim()
            )));
        }
        Ok(Element { algebra, coeffs })
    }

    pub fn basis(algebra: Arc<Algebra>, i: usize) -> Self {
        let n = algebra.dim();
        Element {
            algebra,
            coeffs: crate::algebra::basis_vec(n, i),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn to_multiplier(&self) -> Multiplier {
        Multiplier::from_element(&self.algebra, &self.coeffs)
    }
}

impl Functional {
    pub fn new(algebra: Arc<Algebra>, covector: Vec<Scalar>) -> Result<Self> {
        if covector.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "functional of length {} on algebra of dimension {}",
                covector.len(),
                algebra.dim()
            )));
        }
        Ok(Functional { algebra, covector })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn covector(&self) -> &[Scalar] {
        &self.covector
    }

    pub fn apply(&self, x: &Element) -> Result<Scalar> {
        same(&self.algebra, &x.algebra)?;
        Ok(dot(&self.covector, &x.coeffs))
    }
}

pub fn multiply(a: &Element, b: &Element) -> Result<Element> {
    same(&a.algebra, &b.algebra)?;
    Ok(Element {
        algebra: a.algebra.clone(),
        coeffs: a.algebra.mul(&a.coeffs, &b.coeffs),
    })
}

/// Returns `(aω, ωa)` with `(aω)(x) = ω(xa)` and `(ωa)(x) = ω(ax)`.
pub fn functional_actions(omega: &Functional, a: &Element) -> Result<(Functional, Functional)> {
    same(&omega.algebra, &a.algebra)?;
    let alg = &omega.algebra;
    // (aω)_k = ω(e_k a): the functional composed with right multiplication.
    let aw = alg.right_matrix(&a.coeffs).transpose().mul_vec(&omega.covector);
    let wa = alg.left_matrix(&a.coeffs).transpose().mul_vec(&omega.covector);
    Ok((
        Functional {
            algebra: alg.clone(),
            covector: aw,
        },
        Functional {
            algebra: alg.clone(),
            covector: wa,
        },
    ))
}

/// A functional is faithful when its Gram matrix `ω(e_i e_j)` is
/// non-singular.
pub fn faithful(omega: &Functional) -> bool {
    omega.algebra.gram(&omega.covector).is_invertible()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64) -> Scalar {
        Scalar::from_int(x)
    }

    fn fun_c2() -> Arc<Algebra> {
        Arc::new(
            Algebra::from_structure_constants(2, [(0, 0, 0, s(1)), (1, 1, 1, s(1))]).unwrap(),
        )
    }

    fn grp_c2() -> Arc<Algebra> {
        let t = |a: usize, b: usize| (a, b, (a + b) % 2, s(1));
        Arc::new(
            Algebra::from_structure_constants(2, [t(0, 0), t(0, 1), t(1, 0), t(1, 1)]).unwrap(),
        )
    }

    #[test]
    fn actions_on_function_algebra() {
        let a = fun_c2();
        let omega = Functional::new(a.clone(), vec![s(1), s(1)]).unwrap();
        let d0 = Element::basis(a.clone(), 0);
        let (aw, wa) = functional_actions(&omega, &d0).unwrap();
        assert_eq!(aw.covector(), &[s(1), s(0)]);
        assert_eq!(wa.covector(), &[s(1), s(0)]);
        let unit = Element::new(a.clone(), vec![s(1), s(1)]).unwrap();
        let (aw, wa) = functional_actions(&omega, &unit).unwrap();
        assert_eq!(aw, omega);
        assert_eq!(wa, omega);
        let zero = Element::new(a.clone(), vec![s(0), s(0)]).unwrap();
        let (aw, _) = functional_actions(&omega, &zero).unwrap();
        assert_eq!(aw.covector(), &[s(0), s(0)]);
    }

    #[test]
    fn faithfulness() {
        assert!(faithful(&Functional::new(fun_c2(), vec![s(1), s(1)]).unwrap()));
        assert!(!faithful(&Functional::new(fun_c2(), vec![s(0), s(0)]).unwrap()));
        assert!(faithful(&Functional::new(grp_c2(), vec![s(1), s(0)]).unwrap()));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = Element::basis(fun_c2(), 0);
        let b = Element::basis(Arc::new(Algebra::scalars()), 0);
        assert!(matches!(multiply(&a, &b), Err(Error::AlgebraMismatch(_))));
        let d0 = Element::basis(fun_c2(), 0);
        assert_eq!(multiply(&d0, &d0).unwrap(), d0);
        let d1 = Element::basis(fun_c2(), 1);
        assert_eq!(multiply(&d0, &d1).unwrap().coeffs(), &[s(0), s(0)]);
    }
}
