//! Corepresentations `V ∈ M(A⊗B)` of a quantum group on an arbitrary
//! non-degenerate algebra `B`, slice maps by functionals, the universal
//! corepresentation on `Â` and the correspondence with homomorphisms of
//! `Â`.
//!
//! Every identity in a multiplier algebra is compared through the left and
//! right actions on basis tensors, which is sandwiched evaluation.

use std::sync::Arc;

use crate::algebra::{
    basis_vec, flip_permutation, fmt_vec, kron_vec, span_rank, zero_vec, Algebra, HomImage,
    Multiplier, TensorHom,
};
use crate::duality::{act_right, Dual};
use crate::error::{Error, Result, Witness};
use crate::exactnum::{Matrix, Scalar};
use crate::haar::{eq_vec, prefix, QuantumGroup};
use crate::mhopf::{contract_first, TMap};
use crate::report::{first_failure, Check, Report};

type Outcome = std::result::Result<(), Witness>;

fn diff(idx: &[usize], lhs: &Multiplier, rhs: &Multiplier) -> Outcome {
    match lhs.difference(rhs) {
        None => Ok(()),
        Some(w) => Err(Witness {
            indices: idx.iter().copied().chain(w.indices).collect(),
            ..w
        }),
    }
}

fn as_witness(e: Error) -> Witness {
    Witness::new(&[], e, "defined")
}

/// `V₁₃` on `X⊗Z⊗Y` from `V` on `X⊗Y`, with `dim Z = k`.
pub fn leg13(v: &Multiplier, n: usize, m: usize, k: usize) -> Multiplier {
    let mut perm = vec![0; n * m * k];
    for x in 0..n {
        for y in 0..m {
            for z in 0..k {
                perm[(x * m + y) * k + z] = (x * k + z) * m + y;
            }
        }
    }
    v.kron(&Multiplier::unit(k)).permute(&perm)
}

/// `(a⊗1)` as a multiplier of `A⊗B`.
fn first_leg(alg: &Algebra, a: &[Scalar], m: usize) -> Multiplier {
    Multiplier::from_element(alg, a).kron(&Multiplier::unit(m))
}

/// `(1⊗b)` as a multiplier of `A⊗B`.
fn second_leg(n: usize, target: &Algebra, b: &[Scalar]) -> Multiplier {
    Multiplier::unit(n).kron(&Multiplier::from_element(target, b))
}

/// `x ↦ conj(ω(x*))`.
pub fn conjugate_functional(star: &Matrix, omega: &[Scalar]) -> Vec<Scalar> {
    star.transpose()
        .mul_vec(omega)
        .iter()
        .map(Scalar::conj)
        .collect()
}

/// A basis of `A° = span{aω}`, each vector remembering the pair
/// `(e_a, e^k)` it came from; `(e_a e^k)(x) = e^k(x e_a)`.
#[derive(Clone, Debug)]
pub struct SliceSpace {
    alg: Arc<Algebra>,
    generators: Vec<(usize, usize)>,
    covectors: Vec<Vec<Scalar>>,
}

impl SliceSpace {
    pub fn new(alg: Arc<Algebra>) -> Self {
        let n = alg.dim();
        let mut ech = crate::exactnum::Echelon::new(n, n);
        let mut generators = Vec::new();
        let mut covectors = Vec::new();
        for a in 0..n {
            let r = alg.right_matrix(&basis_vec(n, a));
            for k in 0..n {
                let cov = r.row(k).to_vec();
                if ech.push(cov.clone()) {
                    generators.push((a, k));
                    covectors.push(cov);
                }
            }
        }
        SliceSpace {
            alg,
            generators,
            covectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// `(a, k)` for the basis vector `e_a e^k`.
    pub fn generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    pub fn covector(&self, i: usize) -> &[Scalar] {
        &self.covectors[i]
    }

    pub fn contains(&self, omega: &[Scalar]) -> bool {
        self.coordinates(omega).is_some()
    }

    fn coordinates(&self, omega: &[Scalar]) -> Option<Vec<Scalar>> {
        let n = self.alg.dim();
        Matrix::from_columns(n, &self.covectors)
            .solve(omega)
            .ok()?
            .particular
    }

    /// Terms `(a_i, ω_i)` with `Σ a_iω_i = ω`, all `ω_i` basis functionals.
    pub fn decompose(&self, omega: &[Scalar]) -> Option<Vec<(Vec<Scalar>, Vec<Scalar>)>> {
        let n = self.alg.dim();
        let c = self.coordinates(omega)?;
        Some(
            c.iter()
                .zip(&self.generators)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, &(a, k))| {
                    let mut av = zero_vec(n);
                    av[a] = c.clone();
                    (av, basis_vec(n, k))
                })
                .collect(),
        )
    }

    /// `Σ a_iω_i` as a covector.
    pub fn assemble(&self, terms: &[(Vec<Scalar>, Vec<Scalar>)]) -> Vec<Scalar> {
        let n = self.alg.dim();
        let mut out = zero_vec(n);
        for (a, w) in terms {
            let t = crate::duality::times_functional(&self.alg, a, w);
            crate::algebra::add_scaled(&mut out, &Scalar::one(), &t);
        }
        out
    }
}

/// A homomorphism from `Â` into `M(B)`, given on the generators `φe_i`.
#[derive(Clone, Debug)]
pub struct DualHomomorphism {
    dual: Arc<Dual>,
    target: Arc<Algebra>,
    hom: HomImage,
}

impl DualHomomorphism {
    /// Checks that every image is a multiplier of `B` and that
    /// `θ(ω_iω_j) = θ(ω_i)θ(ω_j)` on all generator pairs.
    pub fn new(dual: Arc<Dual>, target: Arc<Algebra>, images: Vec<Multiplier>) -> Result<Self> {
        let n = dual.dim();
        if images.len() != n || images.iter().any(|m| m.dim() != target.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "{} images of dimension {:?} for a {}-dimensional dual acting on dimension {}",
                images.len(),
                images.first().map(Multiplier::dim),
                n,
                target.dim()
            )));
        }
        for (i, m) in images.iter().enumerate() {
            m.check_compatibility(&target).map_err(|w| Error::AxiomViolation {
                axiom: "θ(ω) is a multiplier of B".into(),
                witness: prefix(i, w),
            })?;
        }
        let theta = DualHomomorphism {
            hom: HomImage::new(target.dim(), images),
            dual,
            target,
        };
        theta.check_multiplicative().map_err(|w| Error::AxiomViolation {
            axiom: "θ(ω₁ω₂) = θ(ω₁)θ(ω₂)".into(),
            witness: w,
        })?;
        Ok(theta)
    }

    /// The identity of `Â`, acting on itself by multiplication.
    pub fn identity(dual: Arc<Dual>) -> Result<Self> {
        let alg = dual.quantum_group().hopf().algebra().clone();
        let images = HomImage::inclusion(&alg).images().to_vec();
        DualHomomorphism::new(dual, alg, images)
    }

    /// `ε̂` as a homomorphism into `ℂ`.
    pub fn counit(dual: Arc<Dual>) -> Result<Self> {
        let eps = dual.quantum_group().hopf().counit().to_vec();
        let images = eps
            .iter()
            .map(|c| Multiplier::unit(1).scale(c))
            .collect();
        DualHomomorphism::new(dual, Arc::new(Algebra::scalars()), images)
    }

    /// `θ(ω) = P·diag(ω(g_1), …, ω(g_k))·P⁻¹` in `M_k`; a homomorphism
    /// exactly when every `g_i` is group-like.
    pub fn evaluations(dual: Arc<Dual>, points: &[Vec<Scalar>], p: &Matrix) -> Result<Self> {
        let k = points.len();
        let p_inv = p.invert()?;
        let target = Arc::new(crate::models::matrix_algebra(k));
        let images = (0..dual.dim())
            .map(|i| {
                let w = dual.generator(i);
                let mut diag = Matrix::zeros(k, k);
                for (j, g) in points.iter().enumerate() {
                    diag[(j, j)] = crate::algebra::dot(&w, g);
                }
                let m = &(p * &diag) * &p_inv;
                let el: Vec<Scalar> = (0..k * k).map(|idx| m[(idx / k, idx % k)].clone()).collect();
                Multiplier::from_element(&target, &el)
            })
            .collect();
        DualHomomorphism::new(dual, target, images)
    }

    fn check_multiplicative(&self) -> Outcome {
        let d = self.dual.quantum_group();
        let dalg = d.hopf().algebra();
        first_failure(crate::haar::pairs(self.dual.dim()), |(i, j)| {
            let lhs = self.hom.apply(&dalg.mul_basis(i, j));
            let rhs = self.hom.image(i).mul(self.hom.image(j));
            diff(&[i, j], &lhs, &rhs)
        })
    }

    pub fn dual(&self) -> &Arc<Dual> {
        &self.dual
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn hom(&self) -> &HomImage {
        &self.hom
    }

    pub fn image(&self, i: usize) -> &Multiplier {
        self.hom.image(i)
    }

    /// `θ(ω)` for `ω` in generator coordinates.
    pub fn apply(&self, coords: &[Scalar]) -> Multiplier {
        self.hom.apply(coords)
    }

    /// `θ(Â)B = Bθ(Â) = B`.
    pub fn is_nondegenerate(&self) -> bool {
        self.hom.is_nondegenerate()
    }

    /// `θ(ω*) = θ(ω)*` on generators.
    pub fn check_star(&self) -> Result<Outcome> {
        let dalg = self.dual.quantum_group().hopf().algebra();
        let k = dalg.star().ok_or(Error::NoStarStructure)?;
        if self.target.star().is_none() {
            return Err(Error::NoStarStructure);
        }
        let mut out = Ok(());
        for i in 0..self.dual.dim() {
            let lhs = self.apply(&k.column(i));
            let rhs = self.image(i).star(&self.target)?;
            if let Err(w) = diff(&[i], &lhs, &rhs) {
                out = Err(w);
                break;
            }
        }
        Ok(out)
    }

    /// Same images on every generator.
    pub fn same_as(&self, other: &DualHomomorphism) -> Outcome {
        first_failure(0..self.dual.dim(), |i| diff(&[i], self.image(i), other.image(i)))
    }
}

/// `V ∈ M(A⊗B)` with `(Δ⊙ι)(V) = V₁₃V₂₃`.
#[derive(Clone, Debug)]
pub struct Corepresentation {
    q: Arc<QuantumGroup>,
    target: Arc<Algebra>,
    tensor: Arc<Algebra>,
    unit: Vec<Scalar>,
    v: Multiplier,
    inverse: Option<Multiplier>,
}

impl Corepresentation {
    /// Fails with `NotACorep` when the comultiplication identity does not
    /// hold.
    pub fn new(q: Arc<QuantumGroup>, target: Arc<Algebra>, v: Multiplier) -> Result<Self> {
        let c = Corepresentation::unchecked(q, target, v)?;
        c.check_comultiplication().map_err(Error::NotACorep)?;
        Ok(c)
    }

    /// Builds the pair without checking the comultiplication identity; `V`
    /// must still be a multiplier of `A⊗B`.
    pub fn unchecked(q: Arc<QuantumGroup>, target: Arc<Algebra>, v: Multiplier) -> Result<Self> {
        let alg = q.hopf().algebra().clone();
        let (n, m) = (alg.dim(), target.dim());
        if v.dim() != n * m {
            return Err(Error::DimensionMismatch(format!(
                "multiplier of dimension {} on a tensor product of dimension {}",
                v.dim(),
                n * m
            )));
        }
        if !target.is_nondegenerate() {
            return Err(Error::DegenerateAlgebra);
        }
        let tensor = Arc::new(alg.tensor(&target));
        v.check_compatibility(&tensor).map_err(|w| Error::AxiomViolation {
            axiom: "V is a multiplier of A⊗B".into(),
            witness: w,
        })?;
        let all: Vec<Vec<Scalar>> = (0..n).map(|i| basis_vec(n, i)).collect();
        let unit = alg.local_unit(&all)?;
        let inverse = v.inverse().ok();
        Ok(Corepresentation {
            q,
            target,
            tensor,
            unit,
            v,
            inverse,
        })
    }

    /// `V = 1`.
    pub fn trivial(q: Arc<QuantumGroup>, target: Arc<Algebra>) -> Result<Self> {
        let d = q.dim() * target.dim();
        Corepresentation::new(q, target, Multiplier::unit(d))
    }

    pub fn quantum_group(&self) -> &Arc<QuantumGroup> {
        &self.q
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn tensor(&self) -> &Arc<Algebra> {
        &self.tensor
    }

    pub fn multiplier(&self) -> &Multiplier {
        &self.v
    }

    pub fn inverse(&self) -> Option<&Multiplier> {
        self.inverse.as_ref()
    }

    /// Invertible in `M(A⊗B)`.
    pub fn is_nondegenerate(&self) -> bool {
        self.inverse.is_some()
    }

    fn dims(&self) -> (usize, usize) {
        (self.q.dim(), self.target.dim())
    }

    /// `(Δ⊙ι)(V) = V₁₃V₂₃`, compared on all basis triples from both sides.
    pub fn check_comultiplication(&self) -> Outcome {
        let (n, m) = self.dims();
        let inc = HomImage::inclusion(&self.target);
        let lhs = TensorHom::new(self.q.hopf().delta().as_hom(), &inc)
            .extend(&self.v)
            .map_err(as_witness)?;
        let v13 = leg13(&self.v, n, m, n);
        let v23 = Multiplier::unit(n).kron(&self.v);
        diff(&[], &lhs, &v13.mul(&v23))
    }

    pub fn is_corep(&self) -> bool {
        self.check_comultiplication().is_ok()
    }

    /// `(ω⊙ι)(V)` for `ω ∈ A′`, through `ω = 1·ω·1`.
    pub fn slice(&self, omega: &[Scalar]) -> Multiplier {
        self.slice_two_sided(&self.unit, omega, &self.unit)
    }

    /// `(aωb⊙ι)(V)`: `x ↦ (ω⊙ι)((b⊗1)V(a⊗x))` on the left and
    /// `x ↦ (ω⊙ι)((b⊗x)V(a⊗1))` on the right.
    pub fn slice_two_sided(&self, a: &[Scalar], omega: &[Scalar], b: &[Scalar]) -> Multiplier {
        let (n, m) = self.dims();
        let alg = self.q.hopf().algebra();
        let lb = alg.left_matrix(b).kron(&Matrix::identity(m));
        let ra = alg.right_matrix(a).kron(&Matrix::identity(m));
        let mut l = Matrix::zeros(m, m);
        let mut r = Matrix::zeros(m, m);
        for x in 0..m {
            let ex = basis_vec(m, x);
            let left = lb.mul_vec(&self.v.apply_left(&kron_vec(a, &ex)));
            let right = ra.mul_vec(&self.v.apply_right(&kron_vec(b, &ex)));
            l.set_column(x, &contract_first(&left, omega, m));
            r.set_column(x, &contract_first(&right, omega, m));
        }
        debug_assert_eq!(n * m, self.v.dim());
        Multiplier::new(l, r)
    }

    /// The left multiplier `x ↦ Σ (ω_i⊙ι)(V(a_i⊗x))` of `Σ a_iω_i`.
    pub fn slice_decomposed(&self, terms: &[(Vec<Scalar>, Vec<Scalar>)]) -> Matrix {
        let m = self.target.dim();
        let mut l = Matrix::zeros(m, m);
        for x in 0..m {
            let ex = basis_vec(m, x);
            let mut col = zero_vec(m);
            for (a, w) in terms {
                let y = self.v.apply_left(&kron_vec(a, &ex));
                crate::algebra::add_scaled(&mut col, &Scalar::one(), &contract_first(&y, w, m));
            }
            l.set_column(x, &col);
        }
        l
    }

    /// `(ε⊙ι)(V)`.
    pub fn counit_slice(&self) -> Multiplier {
        self.slice(self.q.hopf().counit())
    }

    /// `(ω₁⊙ι)(V)(ω₂⊙ι)(V) = (ω₁ω₂⊙ι)(V)` on the generators `φe_i`.
    pub fn check_slice_multiplicative(&self) -> Outcome {
        let q = &*self.q;
        let gram = q.hopf().algebra().gram(q.phi());
        let n = q.dim();
        let slices: Vec<Multiplier> = (0..n).map(|i| self.slice(gram.row(i))).collect();
        first_failure(crate::haar::pairs(n), |(i, j)| {
            let prod = act_right(q, gram.row(i), gram.row(j)).map_err(as_witness)?;
            diff(&[i, j], &slices[i].mul(&slices[j]), &self.slice(&prod))
        })
    }

    /// `V = 0` exactly when `(ω⊙ι)(V) = 0` for every `ω ∈ Â`.
    pub fn check_separation(&self) -> Outcome {
        let q = &*self.q;
        let gram = q.hopf().algebra().gram(q.phi());
        let all_zero = (0..q.dim()).all(|i| self.slice(gram.row(i)).is_zero());
        if all_zero == self.v.is_zero() {
            Ok(())
        } else {
            Err(Witness::new(&[], format!("slices vanish: {all_zero}"), format!("V = 0: {}", self.v.is_zero())))
        }
    }

    /// `π_V(ω) = (ω⊙ι)(V)` on the generators of `Â`.
    pub fn pi(&self, dual: &Arc<Dual>) -> Result<DualHomomorphism> {
        if dual.dim() != self.q.dim() {
            return Err(Error::DimensionMismatch("dual of a different quantum group".into()));
        }
        self.check_comultiplication().map_err(Error::NotACorep)?;
        let images = (0..dual.dim()).map(|i| self.slice(&dual.generator(i))).collect();
        DualHomomorphism::new(dual.clone(), self.target.clone(), images)
    }

    /// `(S⊙ι)(V)` from `(S⊙ι)(V)(a⊗b) = (S⊙ι)((S⁻¹(a)⊗1)V(1⊗b))` and
    /// `(a⊗b)(S⊙ι)(V) = (S⊙ι)((1⊗b)V(S⁻¹(a)⊗1))`.
    pub fn antipode_slice(&self) -> Result<Multiplier> {
        if !self.is_nondegenerate() {
            return Err(Error::NotNondegenerate("(S⊙ι)(V) is defined for invertible V".into()));
        }
        let (n, m) = self.dims();
        let h = self.q.hopf();
        let alg = h.algebra();
        let s_id = h.antipode().kron(&Matrix::identity(m));
        let mut l = Matrix::zeros(n * m, n * m);
        let mut r = Matrix::zeros(n * m, n * m);
        for a in 0..n {
            let sa = h.antipode_inverse().column(a);
            let left_a = first_leg(alg, &sa, m);
            for b in 0..m {
                let right_b = second_leg(n, &self.target, &basis_vec(m, b));
                let x = self
                    .tensor
                    .element_of_product(&[&left_a, &self.v, &right_b])
                    .ok_or(Error::NotInAlgebra)?;
                let y = self
                    .tensor
                    .element_of_product(&[&right_b, &self.v, &left_a])
                    .ok_or(Error::NotInAlgebra)?;
                l.set_column(a * m + b, &s_id.mul_vec(&x));
                r.set_column(a * m + b, &s_id.mul_vec(&y));
            }
        }
        Ok(Multiplier::new(l, r))
    }

    /// The three conditions of the non-degeneracy theorem, each computed
    /// on its own.
    pub fn nondegeneracy(&self, dual: &Arc<Dual>) -> Result<Nondegeneracy> {
        let pi = self.pi(dual)?;
        let (n, m) = self.dims();
        let nm = n * m;
        let spans_full = self.v.left().rank() == nm && self.v.right().rank() == nm;
        let sandwiches = self.inverse.as_ref().map(|inv| {
            let alg = self.q.hopf().algebra();
            let mut out = [false; 4];
            for (k, w) in [&self.v, inv].into_iter().enumerate() {
                let mut outer = Vec::new();
                let mut inner = Vec::new();
                for a in 0..n {
                    let la = first_leg(alg, &basis_vec(n, a), m);
                    for b in 0..m {
                        let rb = second_leg(n, &self.target, &basis_vec(m, b));
                        outer.extend(self.tensor.element_of_product(&[&la, w, &rb]));
                        inner.extend(self.tensor.element_of_product(&[&rb, w, &la]));
                    }
                }
                out[k] = span_rank(nm, &outer) == nm;
                out[2 + k] = span_rank(nm, &inner) == nm;
            }
            out
        });
        Ok(Nondegeneracy {
            invertible: self.is_nondegenerate(),
            pi_nondegenerate: pi.is_nondegenerate(),
            spans_full,
            sandwiches,
        })
    }

    /// `V*V = VV* = 1` against `π_V(ω*) = π_V(ω)*`, plus
    /// `(ω⊙ι)(V*) = π_V(ω̄)*`.
    pub fn unitarity(&self, dual: &Arc<Dual>) -> Result<Unitarity> {
        let ka = self.q.hopf().algebra().star().ok_or(Error::NoStarStructure)?;
        if self.target.star().is_none() {
            return Err(Error::NoStarStructure);
        }
        if !self.is_nondegenerate() {
            return Err(Error::NotNondegenerate("unitarity is tested on invertible V".into()));
        }
        let vs = self.v.star(&self.tensor)?;
        let unit = Multiplier::unit(self.v.dim());
        let unitary = vs.mul(&self.v) == unit && self.v.mul(&vs) == unit;
        let pi = self.pi(dual)?;
        let star_preserving = pi.check_star()?.is_ok();
        let mut slice_star = Ok(());
        for i in 0..dual.dim() {
            let w = dual.generator(i);
            let lhs = self.slice_with(&vs, &w);
            let rhs = self.slice(&conjugate_functional(ka, &w)).star(&self.target)?;
            if let Err(wit) = diff(&[i], &lhs, &rhs) {
                slice_star = Err(wit);
                break;
            }
        }
        Ok(Unitarity {
            unitary,
            star_preserving,
            slice_star,
        })
    }

    /// Slice of another multiplier on the same tensor product.
    fn slice_with(&self, w: &Multiplier, omega: &[Scalar]) -> Multiplier {
        let mut other = self.clone();
        other.v = w.clone();
        other.slice(omega)
    }

    /// All identities that apply to this `V`: comultiplication, slice
    /// rules, and, for invertible `V`, counit, antipode and inverse-slice.
    pub fn report(&self, dual: &Arc<Dual>) -> Report {
        let mut rep = Report::new();
        rep.push(Check::from_result(
            "corep.comultiplication",
            "(Δ⊙ι)(V) = V₁₃V₂₃",
            self.check_comultiplication(),
        ));
        rep.push(Check::from_result(
            "corep.slice-multiplicative",
            "(ω₁⊙ι)(V)(ω₂⊙ι)(V) = (ω₁ω₂⊙ι)(V)",
            self.check_slice_multiplicative(),
        ));
        rep.push(Check::from_result(
            "corep.slice-decomposition",
            "Σ(ω_i⊙ι)(V(a_i⊗x)) depends only on Σa_iω_i",
            self.check_decompositions(dual),
        ));
        rep.push(Check::from_result(
            "corep.separation",
            "V = 0 ⇔ (ω⊙ι)(V) = 0 for every ω ∈ Â",
            self.check_separation(),
        ));
        if !self.is_nondegenerate() {
            return rep;
        }
        rep.push(Check::from_result(
            "corep.counit",
            "(ε⊙ι)(V) = 1",
            diff(&[], &self.counit_slice(), &Multiplier::unit(self.target.dim())),
        ));
        let inv = self.inverse.as_ref().expect("invertible");
        rep.push(Check::from_result(
            "corep.antipode",
            "(S⊙ι)(V) = V⁻¹",
            self.antipode_slice()
                .map_err(as_witness)
                .and_then(|s| diff(&[], &s, inv)),
        ));
        rep.push(Check::from_result(
            "corep.inverse-slice",
            "(ω⊙ι)(V⁻¹) = π_V(Ŝ(ω))",
            self.pi(dual).map_err(as_witness).and_then(|pi| {
                let sh = dual.quantum_group().hopf().antipode();
                first_failure(0..dual.dim(), |i| {
                    diff(&[i], &self.slice_with(inv, &dual.generator(i)), &pi.apply(&sh.column(i)))
                })
            }),
        ));
        rep
    }

    /// The canonical slice against one built from a decomposition through
    /// a basis of `A°`, for each generator of `Â` and the counit.
    fn check_decompositions(&self, dual: &Dual) -> Outcome {
        let space = SliceSpace::new(self.q.hopf().algebra().clone());
        let mut functionals: Vec<Vec<Scalar>> = (0..dual.dim()).map(|i| dual.generator(i)).collect();
        functionals.push(self.q.hopf().counit().to_vec());
        first_failure(functionals.iter().enumerate(), |(i, w)| {
            let terms = space
                .decompose(w)
                .ok_or_else(|| Witness::new(&[i], fmt_vec(w), "element of A°"))?;
            let l = self.slice_decomposed(&terms);
            match l.first_difference(self.slice(w).left()) {
                None => Ok(()),
                Some((r, c)) => Err(Witness::new(&[i, c, r], l[(r, c)].clone(), self.slice(w).left()[(r, c)].clone())),
            }
        })
    }
}

/// Outcome of the three-way non-degeneracy test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nondegeneracy {
    pub invertible: bool,
    pub pi_nondegenerate: bool,
    /// `V(A⊙B) = (A⊙B)V = A⊙B`.
    pub spans_full: bool,
    /// For invertible `V`: `(a⊗1)V(1⊗b)`, `(a⊗1)V⁻¹(1⊗b)`, `(1⊗b)V(a⊗1)`,
    /// `(1⊗b)V⁻¹(a⊗1)` each span `A⊗B`.
    pub sandwiches: Option<[bool; 4]>,
}

impl Nondegeneracy {
    pub fn agree(&self) -> bool {
        self.invertible == self.pi_nondegenerate && self.invertible == self.spans_full
    }

    pub fn report(&self) -> Report {
        let mut rep = Report::new();
        rep.push(Check::from_result(
            "nondegeneracy.equivalence",
            "V invertible ⇔ π_V non-degenerate ⇔ V(A⊙B) = (A⊙B)V = A⊙B",
            if self.agree() {
                Ok(())
            } else {
                Err(Witness::new(
                    &[],
                    format!("invertible {}", self.invertible),
                    format!("π_V {} / spans {}", self.pi_nondegenerate, self.spans_full),
                ))
            },
        ));
        if let Some(s) = self.sandwiches {
            rep.push(Check::from_result(
                "nondegeneracy.sandwich-spans",
                "A⊙B = ⟨(a⊗1)V^{±1}(1⊗b)⟩ = ⟨(1⊗b)V^{±1}(a⊗1)⟩",
                match s.iter().position(|x| !x) {
                    None => Ok(()),
                    Some(k) => Err(Witness::new(&[k], "proper subspace", "A⊗B")),
                },
            ));
        }
        rep
    }
}

/// Outcome of the unitarity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unitarity {
    pub unitary: bool,
    pub star_preserving: bool,
    pub slice_star: Outcome,
}

impl Unitarity {
    pub fn report(&self) -> Report {
        let mut rep = Report::new();
        rep.push(Check::from_result(
            "unitarity.equivalence",
            "V*V = VV* = 1 ⇔ π_V(ω*) = π_V(ω)*",
            if self.unitary == self.star_preserving {
                Ok(())
            } else {
                Err(Witness::new(
                    &[],
                    format!("unitary {}", self.unitary),
                    format!("star-preserving {}", self.star_preserving),
                ))
            },
        ));
        rep.push(Check::from_result(
            "unitarity.slice-star",
            "(ω⊙ι)(V*) = π_V(ω̄)*",
            self.slice_star.clone(),
        ));
        rep
    }
}

fn universal_failure(what: &str, witness: Witness) -> Error {
    Error::UniversalConstructionFailure {
        what: what.to_string(),
        witness,
    }
}

/// The universal corepresentation `U ∈ M(A⊗Â)`, from
/// `[U(x⊗ω)](y) = (ι⊙ω)(Δ(y)(x⊗1))` and `[(x⊗ω)U](y) = (ω⊙ι)((1⊗x)Δ(y))`,
/// where `x⊗ω` acts on `A` as `y ↦ ω(y)x`.
pub fn build_universal(dual: &Arc<Dual>) -> Result<Corepresentation> {
    let q = dual.base().clone();
    let n = q.dim();
    let h = q.hopf();
    let target = dual.quantum_group().hopf().algebra().clone();
    let tm = h.tmaps();
    let gens: Vec<Vec<Scalar>> = (0..n).map(|j| dual.generator(j)).collect();
    // An operator y ↦ F(y) on A, given by its values on the basis, as an
    // element Σ_k e_k ⊗ (y ↦ F(y)_k) of A⊗Â.
    let as_tensor = |values: &[Vec<Scalar>]| -> Vec<Scalar> {
        let mut out = zero_vec(n * n);
        for k in 0..n {
            let f: Vec<Scalar> = (0..n).map(|y| values[y][k].clone()).collect();
            for (c, v) in dual.to_coords(&f).into_iter().enumerate() {
                out[k * n + c] = v;
            }
        }
        out
    };
    let mut l = Matrix::zeros(n * n, n * n);
    let mut r = Matrix::zeros(n * n, n * n);
    for x in 0..n {
        for (j, w) in gens.iter().enumerate() {
            let left: Vec<Vec<Scalar>> = (0..n)
                .map(|y| crate::mhopf::contract_second(&tm.column(TMap::T1, y, x), w, n))
                .collect();
            let right: Vec<Vec<Scalar>> = (0..n)
                .map(|y| contract_first(&tm.column(TMap::T4, y, x), w, n))
                .collect();
            l.set_column(x * n + j, &as_tensor(&left));
            r.set_column(x * n + j, &as_tensor(&right));
        }
    }
    let u = Multiplier::new(l, r);
    let c = Corepresentation::unchecked(q, target.clone(), u).map_err(|e| match e {
        Error::AxiomViolation { witness, .. } => universal_failure("(U_l, U_r) is a multiplier", witness),
        other => other,
    })?;
    if !c.is_nondegenerate() {
        return Err(universal_failure("U is invertible", Witness::new(&[], "singular", "invertible")));
    }
    c.check_comultiplication()
        .map_err(|w| universal_failure("(Δ⊙ι)(U) = U₁₃U₂₃", w))?;
    first_failure(0..n, |i| {
        diff(&[i], &c.slice(&gens[i]), &Multiplier::from_element(&target, &basis_vec(n, i)))
    })
    .map_err(|w| universal_failure("(ω⊙ι)(U) = ω", w))?;
    diff(&[], &c.counit_slice(), &Multiplier::unit(n)).map_err(|w| universal_failure("(ε⊙ι)(U) = 1", w))?;
    Ok(c)
}

/// `(ι⊙ε̂)(U) = 1`, the counit of `Â` on the second leg.
pub fn check_dual_counit_slice(u: &Corepresentation, dual: &Dual) -> Outcome {
    let (n, m) = u.dims();
    let eps = dual.quantum_group().hopf().counit();
    let x = u
        .tensor
        .element_of(&u.v)
        .ok_or_else(|| Witness::new(&[], "U outside A⊗Â", "element"))?;
    let got = crate::mhopf::contract_second(&x, eps, m);
    let one = u
        .q
        .hopf()
        .algebra()
        .unit()
        .map(<[Scalar]>::to_vec)
        .unwrap_or_else(|| zero_vec(n));
    eq_vec(&[], got, one)
}

/// Checks of the universal corepresentation beyond its construction.
pub fn universal_report(u: &Corepresentation, dual: &Arc<Dual>) -> Report {
    let mut rep = u.report(dual);
    rep.push(Check::from_result(
        "universal.pi-identity",
        "π_U = ι",
        DualHomomorphism::identity(dual.clone())
            .and_then(|id| u.pi(dual).map(|pi| pi.same_as(&id)))
            .unwrap_or_else(|e| Err(as_witness(e))),
    ));
    rep.push(Check::from_result(
        "universal.dual-counit",
        "(ι⊙ε̂)(U) = 1",
        check_dual_counit_slice(u, dual),
    ));
    rep.extend(
        u.nondegeneracy(dual)
            .map(|nd| nd.report())
            .unwrap_or_else(|e| {
                let mut r = Report::new();
                r.push(Check::fail("nondegeneracy.equivalence", "V invertible ⇔ π_V non-degenerate", as_witness(e)));
                r
            }),
    );
    if u.q.hopf().algebra().star().is_some() && u.target.star().is_some() {
        match u.unitarity(dual) {
            Ok(un) => {
                rep.extend(un.report());
                rep.push(Check::from_result(
                    "universal.unitary",
                    "U*U = UU* = 1",
                    if un.unitary { Ok(()) } else { Err(Witness::new(&[], "not unitary", "unitary")) },
                ));
            }
            Err(e) => rep.push(Check::fail("universal.unitary", "U*U = UU* = 1", as_witness(e))),
        }
    }
    rep
}

/// `(ι⊙θ)(U)` for a non-degenerate homomorphism `θ: Â → M(B)`, checked to
/// satisfy `π_{(ι⊙θ)(U)} = θ`.
pub fn corep_from_hom(theta: &DualHomomorphism, u: &Corepresentation) -> Result<Corepresentation> {
    if !theta.is_nondegenerate() {
        return Err(Error::DegenerateHomomorphism("θ(Â)B = Bθ(Â) = B fails".into()));
    }
    let inc = HomImage::inclusion(u.q.hopf().algebra());
    let v = TensorHom::new(&inc, theta.hom()).extend(&u.v)?;
    let c = Corepresentation::new(u.q.clone(), theta.target().clone(), v)?;
    let pi = c.pi(theta.dual())?;
    pi.same_as(theta)
        .map_err(|w| universal_failure("π_{(ι⊙θ)(U)} = θ", w))?;
    Ok(c)
}

/// `Σ e_k⊗θ(u_k)` for `U = Σ e_k⊗u_k ∈ A⊗Â`. Unlike [`corep_from_hom`]
/// this needs no non-degeneracy of `θ`, so it also produces degenerate
/// corepresentations.
pub fn push_forward(theta: &DualHomomorphism, u: &Corepresentation) -> Result<Corepresentation> {
    let (n, m) = u.dims();
    let x = u.tensor.element_of(&u.v).ok_or(Error::NotInAlgebra)?;
    let alg = u.q.hopf().algebra();
    let d = n * theta.target().dim();
    let mut v = Multiplier::zero(d);
    for k in 0..n {
        let coords = &x[k * m..(k + 1) * m];
        if coords.iter().all(Scalar::is_zero) {
            continue;
        }
        let leg = Multiplier::from_element(alg, &basis_vec(n, k));
        v = v.add(&leg.kron(&theta.apply(coords)));
    }
    Corepresentation::new(u.q.clone(), theta.target().clone(), v)
}

/// Group-like elements `Δ(g) = g⊗g`, `g ≠ 0`, among the basis vectors and
/// the vectors with entries in `{±1, ±i}`, in a fixed order, at most
/// `limit` of them.
pub fn group_likes(h: &crate::mhopf::MultiplierHopf, limit: usize) -> Vec<Vec<Scalar>> {
    let n = h.dim();
    let images = match h.delta().elements(h.tensor()) {
        Some(im) => im,
        None => return Vec::new(),
    };
    let is_group_like = |g: &[Scalar]| {
        let mut d = zero_vec(n * n);
        for (c, im) in g.iter().zip(&images) {
            if !c.is_zero() {
                crate::algebra::add_scaled(&mut d, c, im);
            }
        }
        d == kron_vec(g, g)
    };
    let mut out: Vec<Vec<Scalar>> = Vec::new();
    let units = [Scalar::one(), -Scalar::one(), Scalar::i(), -Scalar::i()];
    let basis = (0..n).map(|i| basis_vec(n, i));
    let signed = (0..4usize.pow(n as u32)).map(|mut code| {
        (0..n)
            .map(|_| {
                let c = units[code % 4].clone();
                code /= 4;
                c
            })
            .collect::<Vec<Scalar>>()
    });
    for g in basis.chain(signed) {
        if out.len() >= limit {
            break;
        }
        if !out.contains(&g) && is_group_like(&g) {
            out.push(g);
        }
    }
    out
}

/// `(ι⊙π_V)(U) = V`.
pub fn check_round_trip(v: &Corepresentation, u: &Corepresentation, dual: &Arc<Dual>) -> Outcome {
    let pi = v.pi(dual).map_err(as_witness)?;
    let back = corep_from_hom(&pi, u).map_err(as_witness)?;
    diff(&[], &back.v, &v.v)
}

/// `χ(U)` against the universal corepresentation of the dual under
/// `A ≅ Â̂`, and `(ι⊙Δ̂)(U) = U₁₂U₁₃`.
pub fn flip_universal(dual: &Arc<Dual>, bidual: &Arc<Dual>) -> Report {
    let mut rep = Report::new();
    let anchor_flip = "χ(U) is the universal corepresentation of (Â, Δ̂)";
    let anchor_comult = "(ι⊙Δ̂)(U) = U₁₂U₁₃";
    let u = match build_universal(dual) {
        Ok(u) => u,
        Err(e) => {
            rep.push(Check::fail("flip.universal", anchor_flip, as_witness(e)));
            return rep;
        }
    };
    let n = dual.dim();
    rep.push(Check::from_result(
        "flip.universal",
        anchor_flip,
        (|| {
            let ups = crate::duality::bidual_iso(dual, bidual).map_err(as_witness)?;
            let ups_inv = ups.invert().map_err(as_witness)?;
            let hat_u = build_universal(bidual).map_err(as_witness)?;
            let id = Matrix::identity(n);
            let flipped = u
                .v
                .permute(&flip_permutation(n, n))
                .transport(&id.kron(&ups), &id.kron(&ups_inv));
            diff(&[], &flipped, &hat_u.v)
        })(),
    ));
    rep.push(Check::from_result(
        "flip.comultiplication",
        anchor_comult,
        (|| {
            let inc = HomImage::inclusion(u.q.hopf().algebra());
            let dh = dual.quantum_group().hopf();
            let lhs = TensorHom::new(&inc, dh.delta().as_hom())
                .extend(&u.v)
                .map_err(as_witness)?;
            let u12 = u.v.kron(&Multiplier::unit(n));
            let u13 = leg13(&u.v, n, n, n);
            diff(&[], &lhs, &u12.mul(&u13))
        })(),
    ));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_MAX_DIM;
    use crate::models::{function_algebra, group_algebra, matrix_algebra, sweedler, GroupTable, Spec};

    fn dual_of(spec: Spec) -> Arc<Dual> {
        let h = spec.load(DEFAULT_MAX_DIM).unwrap();
        let q = Arc::new(QuantumGroup::new(h).unwrap());
        Arc::new(Dual::new(q).unwrap())
    }

    fn failures(r: &Report) -> Vec<&Check> {
        r.failures().collect()
    }

    #[test]
    fn universal_on_functions_is_the_evaluation_sum() {
        let d = dual_of(function_algebra("f", &GroupTable::cyclic(2)));
        let u = build_universal(&d).unwrap();
        // U = Σ_g δ_g ⊗ ev_g.
        let mut expected = zero_vec(4);
        for g in 0..2 {
            let ev = d.to_coords(&basis_vec(2, g));
            for (c, v) in ev.into_iter().enumerate() {
                expected[g * 2 + c] = v;
            }
        }
        assert_eq!(u.tensor().element_of(u.multiplier()), Some(expected));
        let rep = universal_report(&u, &d);
        assert!(rep.all_passed(), "{:?}", failures(&rep));
        // S = ι and U² = 1 here.
        assert_eq!(u.antipode_slice().unwrap(), *u.multiplier());
    }

    #[test]
    fn universal_on_sweedler() {
        let d = dual_of(sweedler());
        let u = build_universal(&d).unwrap();
        assert_eq!(u.multiplier().dim(), 16);
        let rep = universal_report(&u, &d);
        assert!(rep.all_passed(), "{:?}", failures(&rep));
    }

    #[test]
    fn trivial_and_zero() {
        let d = dual_of(group_algebra("g", &GroupTable::cyclic(2)));
        let q = d.base().clone();
        let c = Arc::new(Algebra::scalars());
        let t = Corepresentation::trivial(q.clone(), c.clone()).unwrap();
        let nd = t.nondegeneracy(&d).unwrap();
        assert!(nd.invertible && nd.pi_nondegenerate && nd.spans_full);
        assert_eq!(t.antipode_slice().unwrap(), *t.multiplier());
        assert!(t.report(&d).all_passed());
        let z = Corepresentation::new(q, c, Multiplier::zero(2)).unwrap();
        let nd = z.nondegeneracy(&d).unwrap();
        assert!(!nd.invertible && !nd.pi_nondegenerate && !nd.spans_full);
        assert!(nd.agree());
        assert!(z.slice(&[Scalar::one(), Scalar::one()]).is_zero());
        assert!(matches!(z.antipode_slice(), Err(Error::NotNondegenerate(_))));
    }

    #[test]
    fn corrupted_universal_is_rejected() {
        let d = dual_of(function_algebra("f", &GroupTable::cyclic(2)));
        let u = build_universal(&d).unwrap();
        let (mut l, r) = u.multiplier().clone().into_parts();
        l[(0, 0)] = &l[(0, 0)] + &Scalar::one();
        let bad = Multiplier::new(l, r);
        let err = Corepresentation::new(d.base().clone(), u.target().clone(), bad);
        assert!(err.is_err());
        // Twice U is not a corepresentation either.
        let twice = u.multiplier().scale(&Scalar::from_int(2));
        assert!(matches!(
            Corepresentation::new(d.base().clone(), u.target().clone(), twice),
            Err(Error::NotACorep(_))
        ));
    }

    #[test]
    fn homomorphisms_round_trip() {
        let d = dual_of(sweedler());
        let u = build_universal(&d).unwrap();
        let id = DualHomomorphism::identity(d.clone()).unwrap();
        let back = corep_from_hom(&id, &u).unwrap();
        assert_eq!(back.multiplier(), u.multiplier());
        let eps = DualHomomorphism::counit(d.clone()).unwrap();
        let triv = corep_from_hom(&eps, &u).unwrap();
        assert!(triv.multiplier().is_unit());
        assert!(check_round_trip(&triv, &u, &d).is_ok());
    }

    #[test]
    fn non_unitary_conjugate_of_universal() {
        // Ad(b)∘ι with b invertible but not unitary in the dual of F(S₃).
        let d = dual_of(function_algebra("f", &GroupTable::symmetric3()));
        let u = build_universal(&d).unwrap();
        let dalg = d.quantum_group().hopf().algebra().clone();
        let one = dalg.unit().unwrap().to_vec();
        let mut b = one.clone();
        b[1] = Scalar::from_int(2);
        let b = Multiplier::from_element(&dalg, &b);
        let b_inv = b.inverse().unwrap();
        let images = (0..6)
            .map(|i| b.mul(&Multiplier::from_element(&dalg, &basis_vec(6, i))).mul(&b_inv))
            .collect();
        let theta = DualHomomorphism::new(d.clone(), dalg, images).unwrap();
        let v = corep_from_hom(&theta, &u).unwrap();
        let un = v.unitarity(&d).unwrap();
        assert!(!un.unitary && !un.star_preserving);
        assert!(un.report().all_passed(), "{:?}", un.report());
        assert!(check_round_trip(&v, &u, &d).is_ok());
    }

    #[test]
    fn matrix_target_from_group_likes() {
        let d = dual_of(function_algebra("f", &GroupTable::cyclic(2)));
        let u = build_universal(&d).unwrap();
        let s = |x: i64| Scalar::from_int(x);
        let points = vec![vec![s(1), s(1)], vec![s(1), s(-1)]];
        let p = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(0), s(1)]]).unwrap();
        let theta = DualHomomorphism::evaluations(d.clone(), &points, &p).unwrap();
        assert_eq!(theta.target().triples(), matrix_algebra(2).triples());
        let v = corep_from_hom(&theta, &u).unwrap();
        assert!(v.report(&d).all_passed(), "{:?}", failures(&v.report(&d)));
        assert!(check_round_trip(&v, &u, &d).is_ok());
        // A point that is not group-like gives no homomorphism.
        let bad = vec![vec![s(1), s(2)], vec![s(1), s(-1)]];
        assert!(DualHomomorphism::evaluations(d.clone(), &bad, &p).is_err());
        // Killing one evaluation gives a degenerate corepresentation.
        let half = vec![vec![s(1), s(1)], vec![s(0), s(0)]];
        let theta = DualHomomorphism::evaluations(d.clone(), &half, &p).unwrap();
        assert!(!theta.is_nondegenerate());
        assert!(matches!(corep_from_hom(&theta, &u), Err(Error::DegenerateHomomorphism(_))));
        let w = push_forward(&theta, &u).unwrap();
        let nd = w.nondegeneracy(&d).unwrap();
        assert!(!nd.invertible && !nd.pi_nondegenerate && !nd.spans_full);
    }

    #[test]
    fn group_likes_of_models() {
        let d = dual_of(function_algebra("f", &GroupTable::symmetric3()));
        let g = group_likes(d.base().hopf(), 4);
        // The trivial and the sign character.
        assert_eq!(g.len(), 2);
        let d = dual_of(sweedler());
        assert_eq!(group_likes(d.base().hopf(), 4).len(), 2);
    }

    #[test]
    fn flip_results() {
        for spec in [function_algebra("f", &GroupTable::cyclic(2)), sweedler()] {
            let d = dual_of(spec);
            let bd = Arc::new(Dual::new(d.quantum_group().clone()).unwrap());
            let rep = flip_universal(&d, &bd);
            assert!(rep.all_passed(), "{:?}", failures(&rep));
        }
    }

    #[test]
    fn slice_space_spans_the_dual_space() {
        let d = dual_of(sweedler());
        let s = SliceSpace::new(d.base().hopf().algebra().clone());
        assert_eq!(s.dim(), 4);
        let w = d.generator(2);
        let terms = s.decompose(&w).unwrap();
        assert_eq!(s.assemble(&terms), w);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;
        use std::sync::OnceLock;

        fn universal() -> &'static (Arc<Dual>, Corepresentation) {
            static U: OnceLock<(Arc<Dual>, Corepresentation)> = OnceLock::new();
            U.get_or_init(|| {
                let d = dual_of(sweedler());
                let u = build_universal(&d).unwrap();
                (d, u)
            })
        }

        fn functional() -> impl Strategy<Value = Vec<Scalar>> {
            prop::collection::vec((-4i64..=4, -2i64..=2), 4)
                .prop_map(|v| v.into_iter().map(|(re, im)| Scalar::from_parts((re, 1), (im, 1))).collect())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn slicing_is_linear(w1 in functional(), w2 in functional()) {
                let (_, u) = universal();
                let sum: Vec<Scalar> = w1.iter().zip(&w2).map(|(a, b)| a + b).collect();
                prop_assert_eq!(u.slice(&sum), u.slice(&w1).add(&u.slice(&w2)));
            }

            #[test]
            fn decomposed_slices_agree(w in functional()) {
                let (d, u) = universal();
                let space = SliceSpace::new(d.base().hopf().algebra().clone());
                let terms = space.decompose(&w).unwrap();
                prop_assert_eq!(space.assemble(&terms), w.clone());
                prop_assert_eq!(u.slice_decomposed(&terms), u.slice(&w).left().clone());
            }

            #[test]
            fn universal_slices_recover_the_functional(w in functional()) {
                let (d, u) = universal();
                let coords = d.to_coords(&w);
                prop_assert_eq!(u.slice(&w), Multiplier::from_element(u.target(), &coords));
            }
        }
    }
}
