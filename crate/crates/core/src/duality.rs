//! The dual quantum group, realized both as a space of functionals on `A`
//! and as a structure-constant algebra in the basis `ω_i = φe_i`.
//!
//! A functional is a covector over the basis of `A`. Its coordinates in the
//! generator basis are `G⁻ᵀt`, with `G_ij = φ(e_i e_j)`; the generator
//! `ω_i` has covector row `i` of `G`.

use std::sync::Arc;

use crate::algebra::{basis_vec, dot, fmt_vec, zero_vec, Algebra, Multiplier};
use crate::error::{Error, Result, Witness};
use crate::exactnum::{Matrix, Scalar};
use crate::haar::{eq_matrix, eq_scalar, eq_vec, pairs, QuantumGroup};
use crate::mhopf::{Comultiplication, MultiplierHopf, Side, TMap};
use crate::models::{DeltaSpec, PairEntry, Spec};
use crate::report::{first_failure, Check, Report};

/// `φa`: `x ↦ φ(ax)`.
pub fn functional_times(alg: &Algebra, omega: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
    alg.left_matrix(a).transpose().mul_vec(omega)
}

/// `aω`: `x ↦ ω(xa)`.
pub fn times_functional(alg: &Algebra, a: &[Scalar], omega: &[Scalar]) -> Vec<Scalar> {
    alg.right_matrix(a).transpose().mul_vec(omega)
}

/// `(θ⊙ι)Δ(a)` (`Side::First`) or `(ι⊙θ)Δ(a)` as an element of `A`.
pub fn slice_of_delta(q: &QuantumGroup, theta: &[Scalar], a: &[Scalar], side: Side) -> Result<Vec<Scalar>> {
    q.hopf().slice_element(theta, a, side)
}

/// `(ωθ)(x) = θ((ω⊙ι)Δ(x))`.
pub fn act_left(q: &QuantumGroup, omega: &[Scalar], theta: &[Scalar]) -> Result<Vec<Scalar>> {
    let n = q.dim();
    (0..n)
        .map(|x| Ok(dot(theta, &slice_of_delta(q, omega, &basis_vec(n, x), Side::First)?)))
        .collect()
}

/// `(θω)(x) = θ((ι⊙ω)Δ(x))`.
pub fn act_right(q: &QuantumGroup, theta: &[Scalar], omega: &[Scalar]) -> Result<Vec<Scalar>> {
    let n = q.dim();
    (0..n)
        .map(|x| Ok(dot(theta, &slice_of_delta(q, omega, &basis_vec(n, x), Side::Second)?)))
        .collect()
}

/// Both slices of `Δ(e_a)` by `θ` lie in `A` for every basis `a`.
pub fn in_multiplier_dual(q: &QuantumGroup, theta: &[Scalar]) -> bool {
    let n = q.dim();
    (0..n).all(|a| {
        let ea = basis_vec(n, a);
        [Side::First, Side::Second]
            .iter()
            .all(|&s| q.hopf().algebra().element_of(&q.hopf().slice(theta, &ea, s)).is_some())
    })
}

/// Product in `M(Â)`: `θ₁((ι⊙θ₂)Δ(a)) = θ₂((θ₁⊙ι)Δ(a))`.
pub fn mdual_product(q: &QuantumGroup, t1: &[Scalar], t2: &[Scalar]) -> Result<Vec<Scalar>> {
    if !in_multiplier_dual(q, t1) || !in_multiplier_dual(q, t2) {
        return Err(Error::NotInMultiplierDual);
    }
    let lhs = act_right(q, t1, t2)?;
    let rhs = act_left(q, t1, t2)?;
    if lhs != rhs {
        let k = (0..lhs.len()).find(|&k| lhs[k] != rhs[k]).unwrap_or(0);
        return Err(Error::ProductMismatch(Witness::new(&[k], lhs[k].clone(), rhs[k].clone())));
    }
    Ok(lhs)
}

/// `ω*(x) = conj(ω(S(x)*))`.
pub fn dual_star(q: &QuantumGroup, omega: &[Scalar]) -> Result<Vec<Scalar>> {
    let k = q.hopf().algebra().star().ok_or(Error::NoStarStructure)?;
    let m = &k.conj() * q.hopf().antipode();
    let c: Vec<Scalar> = omega.iter().map(Scalar::conj).collect();
    Ok(m.transpose().mul_vec(&c))
}

/// The dual of a quantum group together with the maps between its two
/// realizations.
#[derive(Clone, Debug)]
pub struct Dual {
    base: Arc<QuantumGroup>,
    gram: Matrix,
    coord: Matrix,
    qg: Arc<QuantumGroup>,
    phi_hat: Vec<Scalar>,
    psi_hat: Vec<Scalar>,
}

/// `ω(m)` for the generator `ω_i = φe_i` and a multiplier `m`:
/// `φ(e_i m)`.
fn generator_on_multiplier(phi: &[Scalar], i: usize, m: &Multiplier) -> Scalar {
    dot(phi, &m.apply_right(&basis_vec(phi.len(), i)))
}

fn mismatch(what: &str, witness: Witness) -> Error {
    Error::DualStructureMismatch {
        what: what.to_string(),
        witness,
    }
}

impl Dual {
    pub fn new(base: Arc<QuantumGroup>) -> Result<Self> {
        let n = base.dim();
        let h = base.hopf();
        let alg = h.algebra();
        let phi = base.phi();
        let gram = alg.gram(phi);
        let coord = gram.transpose().invert().map_err(|_| Error::NotFaithful)?;
        let gens: Vec<Vec<Scalar>> = gram.to_rows();
        let to_coords = |t: &[Scalar]| coord.mul_vec(t);

        // Products of generators, through both slice formulas.
        let mut sc = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut p = zero_vec(n);
                for x in 0..n {
                    let ex = basis_vec(n, x);
                    let lhs = generator_on_multiplier(phi, i, &h.slice(&gens[j], &ex, Side::Second));
                    let rhs = generator_on_multiplier(phi, j, &h.slice(&gens[i], &ex, Side::First));
                    if lhs != rhs {
                        return Err(Error::ConvolutionMismatch(Witness::new(&[i, j, x], lhs, rhs)));
                    }
                    p[x] = lhs;
                }
                for (k, c) in to_coords(&p).into_iter().enumerate() {
                    if !c.is_zero() {
                        sc.push((i, j, k, c));
                    }
                }
            }
        }
        let mut dual_alg = Algebra::from_structure_constants(n, sc)?;
        if alg.star().is_some() {
            let cols: Vec<Vec<Scalar>> = (0..n)
                .map(|i| Ok(to_coords(&dual_star(&base, &gens[i])?)))
                .collect::<Result<_>>()?;
            dual_alg = dual_alg.with_star(Matrix::from_columns(n, &cols))?;
            dual_alg.check_star().map_err(|w| mismatch("involution", w))?;
        }

        let delta = dual_comultiplication(&base, &gens, &coord)?;
        let dual_hopf = MultiplierHopf::new(dual_alg, delta)?;
        crate::models::check_star_compatibility(&dual_hopf)?;

        // Closed formulas for the counit and antipode.
        let eps_formula = phi.to_vec();
        if let Some(i) = (0..n).find(|&i| dual_hopf.counit()[i] != eps_formula[i]) {
            return Err(mismatch(
                "counit: ε̂(φa) = φ(a)",
                Witness::new(&[i], dual_hopf.counit()[i].clone(), eps_formula[i].clone()),
            ));
        }
        let s_formula = &(&coord * &h.antipode().transpose()) * &gram.transpose();
        eq_matrix(dual_hopf.antipode(), &s_formula).map_err(|w| mismatch("antipode: Ŝ(ω) = ω∘S", w))?;

        // Invariant functionals from their defining formulas.
        let eps = h.counit();
        let psi_gram = alg.gram(base.psi());
        let from_psi = &coord * &psi_gram.transpose();
        let phi_hat = from_psi
            .transpose()
            .solve(eps)?
            .unique()
            .map(<[Scalar]>::to_vec)
            .ok_or_else(|| Error::NotInvertible("the functionals ψa do not form a basis".into()))?;
        let from_phi = &coord * &gram;
        let psi_hat = from_phi
            .transpose()
            .solve(eps)?
            .unique()
            .map(<[Scalar]>::to_vec)
            .ok_or_else(|| Error::NotInvertible("the functionals aφ do not form a basis".into()))?;

        let qg = QuantumGroup::new(dual_hopf)?;
        if proportional(qg.phi(), &phi_hat).is_none() {
            return Err(mismatch(
                "left Haar functional of the dual",
                Witness::new(&[], fmt_vec(qg.phi()), fmt_vec(&phi_hat)),
            ));
        }
        if proportional(qg.psi(), &psi_hat).is_none() {
            return Err(mismatch(
                "right Haar functional of the dual",
                Witness::new(&[], fmt_vec(qg.psi()), fmt_vec(&psi_hat)),
            ));
        }
        Ok(Dual {
            base,
            gram,
            coord,
            qg: Arc::new(qg),
            phi_hat,
            psi_hat,
        })
    }

    pub fn base(&self) -> &Arc<QuantumGroup> {
        &self.base
    }

    /// The dual as a quantum group in its own right.
    pub fn quantum_group(&self) -> &Arc<QuantumGroup> {
        &self.qg
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Covector of the generator `φe_i`.
    pub fn generator(&self, i: usize) -> Vec<Scalar> {
        self.gram.row(i).to_vec()
    }

    /// Coordinates of a functional on `A` in the generator basis.
    pub fn to_coords(&self, t: &[Scalar]) -> Vec<Scalar> {
        self.coord.mul_vec(t)
    }

    /// The functional on `A` with the given generator coordinates.
    pub fn to_functional(&self, c: &[Scalar]) -> Vec<Scalar> {
        self.gram.transpose().mul_vec(c)
    }

    /// `φ̂` normalized by `φ̂(ψa) = ε(a)`, in generator coordinates.
    pub fn phi_hat(&self) -> &[Scalar] {
        &self.phi_hat
    }

    /// `ψ̂` normalized by `ψ̂(aφ) = ε(a)`, in generator coordinates.
    pub fn psi_hat(&self) -> &[Scalar] {
        &self.psi_hat
    }

    /// `φ̂` evaluated on a functional on `A`.
    pub fn phi_hat_of(&self, t: &[Scalar]) -> Scalar {
        dot(&self.phi_hat, &self.to_coords(t))
    }

    /// The dual as a spec file.
    pub fn to_spec(&self, name: &str) -> Spec {
        let h = self.qg.hopf();
        let alg = h.algebra();
        let n = alg.dim();
        let delta = match h.delta().elements(h.tensor()) {
            Some(images) => DeltaSpec::Tensor(images.into_iter().enumerate().collect()),
            None => DeltaSpec::Pair(
                (0..n)
                    .map(|i| PairEntry {
                        basis: i,
                        left: h.delta().image(i).left().to_rows(),
                        right: h.delta().image(i).right().to_rows(),
                    })
                    .collect(),
            ),
        };
        Spec {
            name: name.to_string(),
            dim: n,
            sc: alg.triples(),
            delta,
            star: alg.star().map(Matrix::to_rows),
            counit: None,
            antipode: None,
        }
    }

    /// Identities relating the dual to the original quantum group,
    /// evaluated on generators and basis elements.
    pub fn report(&self) -> Report {
        let n = self.dim();
        let q = &*self.base;
        let d = &*self.qg;
        let alg = q.hopf().algebra();
        let mut rep = Report::new();
        let gens: Vec<Vec<Scalar>> = (0..n).map(|i| self.generator(i)).collect();

        rep.push(Check::from_result(
            "dual.product",
            "(ω₁ω₂)(a) = ω₁((ι⊙ω₂)Δ(a)) = ω₂((ω₁⊙ι)Δ(a))",
            first_failure(pairs(n), |(i, j)| {
                let lhs = act_right(q, &gens[i], &gens[j]).map_err(|e| Witness::new(&[i, j], e, "element"))?;
                let rhs = act_left(q, &gens[i], &gens[j]).map_err(|e| Witness::new(&[i, j], e, "element"))?;
                eq_vec(&[i, j], lhs.clone(), rhs)?;
                let coords = self.to_coords(&lhs);
                eq_vec(&[i, j], coords, d.hopf().algebra().mul_basis(i, j))
            }),
        ));
        rep.push(Check::from_result(
            "dual.comultiplication",
            "Δ̂(ω)(a⊗b) = ω(ab)",
            self.check_comultiplication_pairing(),
        ));
        rep.push(Check::from_result(
            "dual.counit",
            "ε̂(φa) = ε̂(aφ) = φ(a) and ε̂(ψa) = ε̂(aψ) = ψ(a)",
            first_failure(0..n, |a| {
                let ea = basis_vec(n, a);
                let eps_hat = d.hopf().counit();
                for (w, f) in [(q.phi(), 0usize), (q.psi(), 1usize)] {
                    let l = dot(eps_hat, &self.to_coords(&functional_times(alg, w, &ea)));
                    let r = dot(eps_hat, &self.to_coords(&times_functional(alg, &ea, w)));
                    eq_scalar(&[a, f, 0], l, w[a].clone())?;
                    eq_scalar(&[a, f, 1], r, w[a].clone())?;
                }
                Ok(())
            }),
        ));
        rep.push(Check::from_result(
            "dual.antipode",
            "Ŝ(ω) = ω∘S and Ŝ⁻¹(ω) = ω∘S⁻¹",
            first_failure(0..n, |i| {
                let lhs = d.hopf().antipode().column(i);
                let rhs = self.to_coords(&q.hopf().antipode().transpose().mul_vec(&gens[i]));
                eq_vec(&[i, 0], lhs, rhs)?;
                let lhs = d.hopf().antipode_inverse().column(i);
                let rhs = self.to_coords(&q.hopf().antipode_inverse().transpose().mul_vec(&gens[i]));
                eq_vec(&[i, 1], lhs, rhs)
            }),
        ));
        rep.push(Check::from_result(
            "dual.left-haar",
            "φ̂(ψa) = ε(a) defines a left invariant functional on Â",
            match proportional(d.phi(), &self.phi_hat) {
                Some(_) => Ok(()),
                None => Err(Witness::new(&[], fmt_vec(d.phi()), fmt_vec(&self.phi_hat))),
            },
        ));
        rep.push(Check::from_result(
            "dual.right-haar",
            "ψ̂(aφ) = ε(a) defines a right invariant functional on Â",
            match proportional(d.psi(), &self.psi_hat) {
                Some(_) => Ok(()),
                None => Err(Witness::new(&[], fmt_vec(d.psi()), fmt_vec(&self.psi_hat))),
            },
        ));
        rep.push(Check::from_result(
            "dual.spanning",
            "Â = {φa} = {aφ} = {ψa} = {aψ}",
            first_failure(0..4usize, |f| {
                let cols: Vec<Vec<Scalar>> = (0..n)
                    .map(|a| {
                        let ea = basis_vec(n, a);
                        match f {
                            0 => functional_times(alg, q.phi(), &ea),
                            1 => times_functional(alg, &ea, q.phi()),
                            2 => functional_times(alg, q.psi(), &ea),
                            _ => times_functional(alg, &ea, q.psi()),
                        }
                    })
                    .collect();
                let r = Matrix::from_columns(n, &cols).rank();
                if r == n { Ok(()) } else { Err(Witness::new(&[f], r, n)) }
            }),
        ));
        let eps = q.hopf().counit().to_vec();
        rep.push(Check::from_result(
            "dual.multiplier-unit",
            "ε is the unit of M(Â)",
            first_failure(0..n, |i| {
                let l = mdual_product(q, &eps, &gens[i]).map_err(|e| Witness::new(&[i], e, "product"))?;
                let r = mdual_product(q, &gens[i], &eps).map_err(|e| Witness::new(&[i], e, "product"))?;
                eq_vec(&[i, 0], l, gens[i].clone())?;
                eq_vec(&[i, 1], r, gens[i].clone())
            }),
        ));
        rep.push(Check::from_result(
            "dual.lemmas",
            "action, counit and Haar identities on basis functionals",
            first_failure(0..n, |i| {
                let theta = basis_vec(n, i);
                self.check_lemmas(&theta).map_err(|w| crate::haar::prefix(i, w))
            }),
        ));
        if alg.star().is_some() {
            rep.push(Check::from_result(
                "dual.star",
                "ω*(x) = conj(ω(S(x)*)) is an involution with (ω₁ω₂)* = ω₂*ω₁*",
                self.check_star(),
            ));
        }
        rep
    }

    /// `[Δ̂(ω)(ω₁⊗ω₂)](x⊗y) = ω((ι⊙ω₁)Δ(x)(ι⊙ω₂)Δ(y))` on generators.
    fn check_comultiplication_pairing(&self) -> std::result::Result<(), Witness> {
        let n = self.dim();
        let q = &*self.base;
        let alg = q.hopf().algebra();
        let dh = self.qg.hopf();
        let s2 = slices(q, &self.gram, Side::Second).map_err(|e| Witness::new(&[], e, "element"))?;
        for k in 0..n {
            let dk = dh.delta().image(k);
            for i in 0..n {
                for j in 0..n {
                    let col = dk.left().column(i * n + j);
                    for x in 0..n {
                        for y in 0..n {
                            let prod = alg.mul(&s2[i][x], &s2[j][y]);
                            let lhs = dot(self.gram.row(k), &prod);
                            let mut rhs = Scalar::zero();
                            for (pq, c) in col.iter().enumerate() {
                                if !c.is_zero() {
                                    rhs.add_mul(c, &(&self.gram[(pq / n, x)] * &self.gram[(pq % n, y)]));
                                }
                            }
                            if lhs != rhs {
                                return Err(Witness::new(&[k, i, j, x, y], lhs, rhs));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The identities for the actions of `Â` on `A′`, the counit slices,
    /// and the Haar normalizations, for one functional `θ` on `A` and all
    /// basis elements.
    pub fn check_lemmas(&self, theta: &[Scalar]) -> std::result::Result<(), Witness> {
        let n = self.dim();
        let q = &*self.base;
        let h = q.hopf();
        let alg = h.algebra();
        let s = h.antipode();
        let s_inv = h.antipode_inverse();
        let (phi, psi, eps) = (q.phi(), q.psi(), h.counit());
        let err = |tag: usize, a: usize| move |e: Error| Witness::new(&[tag, a], e, "element");
        let slice = |t: &[Scalar], x: &[Scalar], side: Side, tag: usize, a: usize| {
            slice_of_delta(q, t, x, side).map_err(err(tag, a))
        };
        for a in 0..n {
            let ea = basis_vec(n, a);
            let sa = s.column(a);
            let sia = s_inv.column(a);
            // θ(φa) = φ[S⁻¹((ι⊙θ)Δ(S(a)))]
            let lhs = act_right(q, theta, &functional_times(alg, phi, &ea)).map_err(err(0, a))?;
            let inner = s_inv.mul_vec(&slice(theta, &sa, Side::Second, 0, a)?);
            eq_vec(&[0, a], lhs, functional_times(alg, phi, &inner))?;
            // θ(aφ) = [S((ι⊙θ)Δ(S⁻¹(a)))]φ
            let lhs = act_right(q, theta, &times_functional(alg, &ea, phi)).map_err(err(1, a))?;
            let inner = s.mul_vec(&slice(theta, &sia, Side::Second, 1, a)?);
            eq_vec(&[1, a], lhs, times_functional(alg, &inner, phi))?;
            // (ψa)θ = ψ[S((θ⊙ι)Δ(S⁻¹(a)))]
            let lhs = act_left(q, &functional_times(alg, psi, &ea), theta).map_err(err(2, a))?;
            let inner = s.mul_vec(&slice(theta, &sia, Side::First, 2, a)?);
            eq_vec(&[2, a], lhs, functional_times(alg, psi, &inner))?;
            // (aψ)θ = [S⁻¹((θ⊙ι)Δ(S(a)))]ψ
            let lhs = act_left(q, &times_functional(alg, &ea, psi), theta).map_err(err(3, a))?;
            let inner = s_inv.mul_vec(&slice(theta, &sa, Side::First, 3, a)?);
            eq_vec(&[3, a], lhs, times_functional(alg, &inner, psi))?;
            // ε((ι⊙θ)Δ(a)) = ε((θ⊙ι)Δ(a)) = θ(a)
            let l = dot(eps, &slice(theta, &ea, Side::Second, 4, a)?);
            let r = dot(eps, &slice(theta, &ea, Side::First, 4, a)?);
            eq_scalar(&[4, a, 0], l, theta[a].clone())?;
            eq_scalar(&[4, a, 1], r, theta[a].clone())?;
            // φ̂((ψa)θ) = θ(S⁻¹(a))
            let prod = act_left(q, &functional_times(alg, psi, &ea), theta).map_err(err(5, a))?;
            eq_scalar(&[5, a], self.phi_hat_of(&prod), dot(theta, &sia))?;
            // ε̂(θa) = ε̂(aθ) = θ(a)
            let eps_hat = self.qg.hopf().counit();
            let l = dot(eps_hat, &self.to_coords(&functional_times(alg, theta, &ea)));
            let r = dot(eps_hat, &self.to_coords(&times_functional(alg, &ea, theta)));
            eq_scalar(&[6, a, 0], l, theta[a].clone())?;
            eq_scalar(&[6, a, 1], r, theta[a].clone())?;
        }
        // θ ∈ Ã ⇔ both slices of every Δ(a) lie in A
        let in_tilde = (0..n).all(|i| {
            let w = self.generator(i);
            act_left(q, &w, theta).is_ok() && act_right(q, theta, &w).is_ok()
        });
        if in_tilde != in_multiplier_dual(q, theta) {
            return Err(Witness::new(&[7], in_tilde, !in_tilde));
        }
        Ok(())
    }

    /// `φ̂((ψδS²(b))ω) = φ̂(ω(ψb))` for a functional `ω` in `Â`.
    pub fn check_modular_lemma(&self, omega: &[Scalar]) -> std::result::Result<(), Witness> {
        let n = self.dim();
        let q = &*self.base;
        let h = q.hopf();
        let alg = h.algebra();
        let s2 = h.antipode() * h.antipode();
        first_failure(0..n, |b| {
            let eb = basis_vec(n, b);
            let x = q.delta_element().apply_left(&s2.column(b));
            let err = |e: Error| Witness::new(&[b], e, "element");
            let lhs = act_left(q, &functional_times(alg, q.psi(), &x), omega).map_err(err)?;
            let rhs = act_right(q, omega, &functional_times(alg, q.psi(), &eb)).map_err(err)?;
            eq_scalar(&[b], self.phi_hat_of(&lhs), self.phi_hat_of(&rhs))
        })
    }

    fn check_star(&self) -> std::result::Result<(), Witness> {
        let n = self.dim();
        let q = &*self.base;
        let err = |e: Error| Witness::new(&[], e, "star");
        let eps = q.hopf().counit().to_vec();
        eq_vec(&[0], dual_star(q, &eps).map_err(err)?, eps)?;
        for i in 0..n {
            let w = self.generator(i);
            let back = dual_star(q, &dual_star(q, &w).map_err(err)?).map_err(err)?;
            eq_vec(&[1, i], back, w)?;
        }
        for (i, j) in pairs(n) {
            let (wi, wj) = (self.generator(i), self.generator(j));
            let lhs = dual_star(q, &mdual_product(q, &wi, &wj).map_err(err)?).map_err(err)?;
            let rhs = mdual_product(
                q,
                &dual_star(q, &wj).map_err(err)?,
                &dual_star(q, &wi).map_err(err)?,
            )
            .map_err(err)?;
            eq_vec(&[2, i, j], lhs, rhs)?;
        }
        Ok(())
    }
}

/// `c` with `x = c·y` and `c ≠ 0`.
pub fn proportional(x: &[Scalar], y: &[Scalar]) -> Option<Scalar> {
    let k = y.iter().position(|c| !c.is_zero())?;
    let c = x[k].checked_div(&y[k]).ok()?;
    (!c.is_zero() && x.iter().zip(y).all(|(a, b)| *a == &c * b)).then_some(c)
}

/// Slices `(ι⊙ω_i)Δ(e_x)` (or `(ω_i⊙ι)Δ(e_x)`) as elements, indexed `[i][x]`.
fn slices(q: &QuantumGroup, gram: &Matrix, side: Side) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let n = q.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|x| q.hopf().slice_element(gram.row(i), &basis_vec(n, x), side))
                .collect()
        })
        .collect()
}

/// `Δ̂` on generators, built from `Δ̂(ω)(a⊗b) = ω(ab)` and checked against
/// the sandwich formulas `[Δ̂(ω₁)(1⊗ω₂)](x⊗y) = (ω₁⊙ω₂)((x⊗1)Δ(y))` and
/// `[(ω₁⊗1)Δ̂(ω₂)](x⊗y) = (ω₁⊙ω₂)(Δ(x)(1⊗y))`.
fn dual_comultiplication(q: &QuantumGroup, gens: &[Vec<Scalar>], coord: &Matrix) -> Result<Comultiplication> {
    let n = q.dim();
    let nn = n * n;
    let h = q.hopf();
    let alg = h.algebra();
    let gram = Matrix::from_rows(gens.to_vec())?;
    let s1 = slices(q, &gram, Side::First)?;
    let s2 = slices(q, &gram, Side::Second)?;
    let cc = coord.kron(coord);
    let pair_value = |k: usize, j: usize, z: &[Scalar]| -> Scalar {
        let mut acc = Scalar::zero();
        for (pq, c) in z.iter().enumerate() {
            if !c.is_zero() {
                acc.add_mul(c, &(&gens[k][pq / n] * &gens[j][pq % n]));
            }
        }
        acc
    };
    // (ω_k⊙ω_j)((y⊗1)Δ(e_p)) and (ω_i⊙ω_k)(Δ(x)(1⊗e_p)).
    let mut b3 = vec![Scalar::zero(); nn * nn];
    let mut b2 = vec![Scalar::zero(); nn * nn];
    for p in 0..n {
        for y in 0..n {
            let t3 = h.tmaps().column(TMap::T3, y, p);
            let t2 = h.tmaps().column(TMap::T2, y, p);
            for k in 0..n {
                for j in 0..n {
                    b3[((k * n + j) * n + y) * n + p] = pair_value(k, j, &t3);
                    b2[((j * n + k) * n + y) * n + p] = pair_value(j, k, &t2);
                }
            }
        }
    }
    // Products of slices, indexed by (i, j, x, y).
    let prod = |s: &Vec<Vec<Vec<Scalar>>>| -> Vec<Vec<Scalar>> {
        let mut out = Vec::with_capacity(nn * nn);
        for i in 0..n {
            for j in 0..n {
                for x in 0..n {
                    for y in 0..n {
                        out.push(alg.mul(&s[i][x], &s[j][y]));
                    }
                }
            }
        }
        out
    };
    let p2 = prod(&s2);
    let p1 = prod(&s1);
    let mut images = Vec::with_capacity(n);
    for k in 0..n {
        let mut fl = Matrix::zeros(nn, nn);
        let mut fr = Matrix::zeros(nn, nn);
        let mut sl = Matrix::zeros(nn, nn);
        let mut sr = Matrix::zeros(nn, nn);
        for i in 0..n {
            for j in 0..n {
                let col = i * n + j;
                for x in 0..n {
                    for y in 0..n {
                        let row = x * n + y;
                        let idx = ((i * n + j) * n + x) * n + y;
                        fl[(row, col)] = dot(&gens[k], &p2[idx]);
                        fr[(row, col)] = dot(&gens[k], &p1[idx]);
                        let mut l = Scalar::zero();
                        let mut r = Scalar::zero();
                        for p in 0..n {
                            let u = &s2[i][x][p];
                            if !u.is_zero() {
                                l.add_mul(u, &b3[((k * n + j) * n + y) * n + p]);
                            }
                            let v = &s1[j][y][p];
                            if !v.is_zero() {
                                r.add_mul(v, &b2[((i * n + k) * n + x) * n + p]);
                            }
                        }
                        sl[(row, col)] = l;
                        sr[(row, col)] = r;
                    }
                }
            }
        }
        for (side, a, b) in [(0, &fl, &sl), (1, &fr, &sr)] {
            if let Some((r, c)) = a.first_difference(b) {
                return Err(Error::DualComultMismatch(Witness::new(
                    &[k, side, c, r],
                    a[(r, c)].clone(),
                    b[(r, c)].clone(),
                )));
            }
        }
        images.push(Multiplier::new(&cc * &fl, &cc * &fr));
    }
    Ok(Comultiplication::from_pairs(nn, images))
}

/// The evaluation map `Υ(x)(ω) = ω(x)` from `A` to the dual of its dual,
/// checked to be an isomorphism intertwining the comultiplications.
pub fn bidual_iso(dual: &Dual, bidual: &Dual) -> Result<Matrix> {
    let q = dual.base();
    let n = q.dim();
    let fail = |what: &str, witness: Witness| Error::BidualityFailure {
        what: what.to_string(),
        witness,
    };
    if bidual.dim() != n {
        return Err(Error::DimensionMismatch("bidual does not sit over the dual".into()));
    }
    let cols: Vec<Vec<Scalar>> = (0..n).map(|k| bidual.to_coords(&dual.gram.column(k))).collect();
    let ups = Matrix::from_columns(n, &cols);
    let ups_inv = ups
        .invert()
        .map_err(|_| fail("bijective", Witness::new(&[], "singular", "invertible")))?;
    let alg = q.hopf().algebra();
    let bi = bidual.quantum_group();
    let bialg = bi.hopf().algebra();
    first_failure(pairs(n), |(a, b)| {
        eq_vec(&[a, b], ups.mul_vec(&alg.mul_basis(a, b)), bialg.mul(&cols[a], &cols[b]))
    })
    .map_err(|w| fail("Υ(ab) = Υ(a)Υ(b)", w))?;
    let uu = ups.kron(&ups);
    let uu_inv = ups_inv.kron(&ups_inv);
    first_failure(0..n, |i| {
        let lhs = bi.hopf().delta().apply(&cols[i]);
        let rhs = q.hopf().delta().image(i).transport(&uu, &uu_inv);
        match lhs.difference(&rhs) {
            None => Ok(()),
            Some(w) => Err(crate::haar::prefix(i, w)),
        }
    })
    .map_err(|w| fail("ΔΥ = (Υ⊙Υ)Δ", w))?;
    if let (Some(k), Some(kk)) = (alg.star(), bialg.star()) {
        first_failure(0..n, |i| {
            let lhs = ups.mul_vec(&k.column(i));
            let rhs = kk.mul_vec(&cols[i].iter().map(Scalar::conj).collect::<Vec<_>>());
            eq_vec(&[i], lhs, rhs)
        })
        .map_err(|w| fail("Υ(a*) = Υ(a)*", w))?;
    }
    Ok(ups)
}

/// Report form of [`bidual_iso`].
pub fn bidual_report(dual: &Dual, bidual: &Dual) -> Report {
    let mut rep = Report::new();
    rep.push(match bidual_iso(dual, bidual) {
        Ok(_) => Check::pass("bidual.isomorphism", "Υ(x)(ω) = ω(x) with ΔΥ = (Υ⊙Υ)Δ"),
        Err(Error::BidualityFailure { what, witness }) => Check::fail(
            "bidual.isomorphism",
            "Υ(x)(ω) = ω(x) with ΔΥ = (Υ⊙Υ)Δ",
            Witness { lhs: format!("{what}: {}", witness.lhs), ..witness },
        ),
        Err(e) => Check::fail(
            "bidual.isomorphism",
            "Υ(x)(ω) = ω(x) with ΔΥ = (Υ⊙Υ)Δ",
            Witness::new(&[], e, "isomorphism"),
        ),
    });
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_MAX_DIM;
    use crate::models::{function_algebra, group_algebra, sweedler, GroupTable};

    fn qg(spec: Spec) -> Arc<QuantumGroup> {
        Arc::new(QuantumGroup::new(spec.load(DEFAULT_MAX_DIM).unwrap()).unwrap())
    }

    #[test]
    fn dual_of_functions_is_group_algebra() {
        for g in [GroupTable::cyclic(2), GroupTable::symmetric3()] {
            let d = Dual::new(qg(function_algebra("f", &g))).unwrap();
            let grp = group_algebra("g", &g).algebra(DEFAULT_MAX_DIM).unwrap();
            assert_eq!(d.quantum_group().hopf().algebra().triples(), grp.triples());
            assert!(d.report().all_passed(), "{:?}", d.report().failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn sweedler_dual_and_bidual() {
        let q = qg(sweedler());
        let d = Dual::new(q).unwrap();
        let rep = d.report();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        let s = d.quantum_group().hopf().antipode();
        assert!(!(s * s).is_identity());
        let bd = Dual::new(d.quantum_group().clone()).unwrap();
        assert!(bidual_iso(&d, &bd).is_ok());
        for i in 0..4 {
            assert!(d.check_modular_lemma(&d.generator(i)).is_ok());
        }
    }

    #[test]
    fn functional_products() {
        let q = qg(function_algebra("f", &GroupTable::cyclic(2)));
        let ev = |s: usize| basis_vec(2, s);
        // ev_1 · ev_1 = ev_0 on functions of C₂
        assert_eq!(mdual_product(&q, &ev(1), &ev(1)).unwrap(), ev(0));
        let eps = q.hopf().counit().to_vec();
        assert_eq!(dual_star(&q, &eps).unwrap(), eps);
    }
}
