//! Invariant functionals and the modular data attached to them.

use num_traits::Zero;

use crate::algebra::{basis_vec, dot, fmt_vec, scale_vec, Multiplier};
use crate::error::{Error, Result, Witness};
use crate::exactnum::{LinearSystem, Matrix, Scalar};
use crate::mhopf::{contract_first, contract_second, MultiplierHopf, Side, TMap};
use crate::report::{first_failure, Check, Report};

/// Solves `(ι⊙ω)(Δ(a)(b⊗1)) = ω(a)b` and returns the solution normalized
/// so that its first non-zero coordinate is 1.
pub fn solve_left_haar(h: &MultiplierHopf) -> Result<Vec<Scalar>> {
    let n = h.dim();
    let mut sys = LinearSystem::new(n);
    for a in 0..n {
        for b in 0..n {
            let t1 = h.tmaps().column(TMap::T1, a, b);
            for p in 0..n {
                let mut row: Vec<(usize, Scalar)> = (0..n)
                    .filter(|&q| !t1[p * n + q].is_zero())
                    .map(|q| (q, t1[p * n + q].clone()))
                    .collect();
                if p == b {
                    row.push((a, -Scalar::one()));
                }
                sys.push_sparse(row, Scalar::zero());
            }
        }
    }
    let sol = sys.solve();
    let basis = sol.nullspace_basis;
    match basis.len() {
        0 => return Err(Error::NoHaar),
        1 => {}
        d => return Err(Error::NonUniqueHaar(d)),
    }
    let phi = normalize_first_nonzero(&basis[0]);
    if !h.algebra().gram(&phi).is_invertible() {
        return Err(Error::NotFaithful);
    }
    Ok(phi)
}

fn normalize_first_nonzero(v: &[Scalar]) -> Vec<Scalar> {
    match v.iter().find(|c| !c.is_zero()) {
        Some(c) => {
            let inv = c.inv().expect("non-zero");
            scale_vec(v, &inv)
        }
        None => v.to_vec(),
    }
}

/// A self-adjoint multiple of `ω`: `(ω+ω̄)/2` or, if that vanishes,
/// `(ω−ω̄)/2i`, where `ω̄(x) = conj(ω(x*))`. It is rescaled by a real number
/// so that its first non-zero coordinate is 1 when that coordinate is real.
pub fn self_adjoint(omega: &[Scalar], star: &Matrix) -> Vec<Scalar> {
    let bar: Vec<Scalar> = star.transpose().mul_vec(omega).iter().map(Scalar::conj).collect();
    let half = Scalar::from_frac(1, 2);
    let sum: Vec<Scalar> = omega.iter().zip(&bar).map(|(a, b)| &(a + b) * &half).collect();
    let v = if sum.iter().any(|c| !c.is_zero()) {
        sum
    } else {
        let factor = (&Scalar::i() * &Scalar::from_int(2)).inv().expect("non-zero");
        omega.iter().zip(&bar).map(|(a, b)| &(a - b) * &factor).collect()
    };
    let Some(c) = v.iter().find(|c| !c.is_zero()) else { return v };
    let r = if !c.re().is_zero() { Scalar::from(c.re().clone()) } else { Scalar::from(c.im().clone()) };
    scale_vec(&v, &r.inv().expect("non-zero"))
}

/// `ω∘T` as a covector, for a linear map with matrix `t`.
fn compose(omega: &[Scalar], t: &Matrix) -> Vec<Scalar> {
    t.transpose().mul_vec(omega)
}

/// The automorphism `σ` with `ω(ab) = ω(bσ(a))`, i.e. `G⁻¹Gᵀ` for the Gram
/// matrix `G` of `ω`.
pub fn modular_automorphism(h: &MultiplierHopf, omega: &[Scalar]) -> Result<Matrix> {
    let g = h.algebra().gram(omega);
    let ginv = g.invert().map_err(|_| Error::NotFaithful)?;
    Ok(&ginv * &g.transpose())
}

/// Ratio `c` with `x = c·y`, if any.
fn proportionality(x: &[Scalar], y: &[Scalar]) -> Option<Scalar> {
    let k = y.iter().position(|c| !c.is_zero())?;
    let c = x[k].checked_div(&y[k]).ok()?;
    if x.iter().zip(y).all(|(a, b)| *a == &c * b) {
        Some(c)
    } else {
        None
    }
}

/// An algebraic quantum group: a regular multiplier Hopf algebra with its
/// invariant functionals and modular data.
#[derive(Clone, Debug)]
pub struct QuantumGroup {
    hopf: MultiplierHopf,
    phi: Vec<Scalar>,
    psi: Vec<Scalar>,
    rho: Matrix,
    rho_inv: Matrix,
    rho_prime: Matrix,
    rho_prime_inv: Matrix,
    delta: Multiplier,
    delta_inv: Multiplier,
    mu: Scalar,
}

impl QuantumGroup {
    /// Solves for `φ` and derives the rest.
    pub fn new(hopf: MultiplierHopf) -> Result<Self> {
        let mut phi = solve_left_haar(&hopf)?;
        if let Some(k) = hopf.algebra().star() {
            phi = self_adjoint(&phi, k);
        }
        QuantumGroup::with_left_haar(hopf, phi)
    }

    /// Builds the modular data from a given left invariant functional.
    pub fn with_left_haar(hopf: MultiplierHopf, phi: Vec<Scalar>) -> Result<Self> {
        let n = hopf.dim();
        if phi.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "functional of length {} on algebra of dimension {n}",
                phi.len()
            )));
        }
        if phi.iter().all(Scalar::is_zero) {
            return Err(Error::NoHaar);
        }
        let psi = compose(&phi, hopf.antipode());
        let rho = modular_automorphism(&hopf, &phi)?;
        let rho_prime = modular_automorphism(&hopf, &psi)?;
        let rho_inv = rho.invert().map_err(|_| Error::NotFaithful)?;
        let rho_prime_inv = rho_prime.invert().map_err(|_| Error::NotFaithful)?;
        let delta = modular_element(&hopf, &phi)?;
        let delta_inv = delta.inverse()?;
        let s2 = hopf.antipode() * hopf.antipode();
        let mu = proportionality(&compose(&phi, &s2), &phi).ok_or(Error::NotProportional)?;
        if mu.is_zero() {
            return Err(Error::NotProportional);
        }
        let qg = QuantumGroup {
            hopf,
            phi,
            psi,
            rho,
            rho_inv,
            rho_prime,
            rho_prime_inv,
            delta,
            delta_inv,
            mu,
        };
        qg.check_companion()
            .map_err(|w| Error::NoModularElement(format!("(ι⊙ψ)(Δ(a)(b⊗1)) ≠ ψ(a)δ⁻¹b {w}")))?;
        Ok(qg)
    }

    pub fn hopf(&self) -> &MultiplierHopf {
        &self.hopf
    }

    pub fn dim(&self) -> usize {
        self.hopf.dim()
    }

    pub fn phi(&self) -> &[Scalar] {
        &self.phi
    }

    pub fn psi(&self) -> &[Scalar] {
        &self.psi
    }

    pub fn rho(&self) -> &Matrix {
        &self.rho
    }

    pub fn rho_inverse(&self) -> &Matrix {
        &self.rho_inv
    }

    pub fn rho_prime(&self) -> &Matrix {
        &self.rho_prime
    }

    pub fn rho_prime_inverse(&self) -> &Matrix {
        &self.rho_prime_inv
    }

    pub fn delta_element(&self) -> &Multiplier {
        &self.delta
    }

    pub fn delta_inverse(&self) -> &Multiplier {
        &self.delta_inv
    }

    pub fn mu(&self) -> &Scalar {
        &self.mu
    }

    /// `(ι⊙ψ)(Δ(a)(b⊗1)) = ψ(a)δ⁻¹b`.
    fn check_companion(&self) -> std::result::Result<(), Witness> {
        let n = self.dim();
        let tm = self.hopf.tmaps();
        first_failure(pairs(n), |(a, b)| {
            let lhs = contract_second(&tm.column(TMap::T1, a, b), &self.psi, n);
            let rhs = scale_vec(&self.delta_inv.apply_left(&basis_vec(n, b)), &self.psi[a]);
            eq_vec(&[a, b], lhs, rhs)
        })
    }

    /// `ε` extended to multipliers: `ε(m)` with `ε(ma) = ε(m)ε(a)`.
    pub fn counit_of_multiplier(&self, m: &Multiplier) -> Option<Scalar> {
        let eps = self.hopf.counit();
        let a = eps.iter().position(|c| !c.is_zero())?;
        let v = dot(eps, &m.apply_left(&basis_vec(self.dim(), a)));
        v.checked_div(&eps[a]).ok()
    }

    /// Every relation among `φ, ψ, ρ, ρ′, δ, μ`, evaluated on basis elements.
    pub fn modular_report(&self) -> Report {
        let n = self.dim();
        let h = &self.hopf;
        let alg = h.algebra();
        let tm = h.tmaps();
        let s = h.antipode();
        let s_inv = h.antipode_inverse();
        let s2 = s * s;
        let s2_inv = s_inv * s_inv;
        let mut rep = Report::new();

        rep.push(Check::from_result(
            "haar.left-invariance",
            "(ι⊙φ)(Δ(a)(b⊗1)) = φ(a)b",
            first_failure(pairs(n), |(a, b)| {
                let lhs = contract_second(&tm.column(TMap::T1, a, b), &self.phi, n);
                eq_vec(&[a, b], lhs, scale_vec(&basis_vec(n, b), &self.phi[a]))
            }),
        ));
        rep.push(Check::from_result(
            "haar.right-invariance",
            "(ψ⊙ι)(Δ(a)(1⊗b)) = ψ(a)b",
            first_failure(pairs(n), |(a, b)| {
                let lhs = contract_first(&tm.column(TMap::T2, a, b), &self.psi, n);
                eq_vec(&[a, b], lhs, scale_vec(&basis_vec(n, b), &self.psi[a]))
            }),
        ));
        rep.push(Check::from_result(
            "haar.uniqueness",
            "left invariant functionals form a 1-dimensional space",
            match solve_left_haar(h) {
                Ok(phi) => match proportionality(&self.phi, &phi) {
                    Some(_) => Ok(()),
                    None => Err(Witness::new(&[], fmt_vec(&self.phi), fmt_vec(&phi))),
                },
                Err(Error::NonUniqueHaar(d)) => Err(Witness::new(
                    &[],
                    format!("solution space dimension {d}"),
                    "1",
                )),
                Err(e) => Err(Witness::new(&[], e, "1-dimensional solution space")),
            },
        ));
        for (id, anchor, w) in [
            ("haar.phi-faithful", "φ is faithful", &self.phi),
            ("haar.psi-faithful", "ψ = φS is faithful", &self.psi),
        ] {
            rep.push(Check::from_result(
                id,
                anchor,
                if alg.gram(w).is_invertible() {
                    Ok(())
                } else {
                    Err(Witness::new(&[], "singular Gram matrix", "invertible"))
                },
            ));
        }
        rep.push(Check::from_result(
            "haar.first-slice-identity",
            "(ι⊙φ)((1⊗a)Δ(b)) = S((ι⊙φ)(Δ(a)(1⊗b)))",
            first_failure(pairs(n), |(a, b)| {
                let lhs = contract_second(&tm.column(TMap::T4, b, a), &self.phi, n);
                let rhs = s.mul_vec(&contract_second(&tm.column(TMap::T2, a, b), &self.phi, n));
                eq_vec(&[a, b], lhs, rhs)
            }),
        ));
        rep.push(Check::from_result(
            "haar.second-slice-identity",
            "(ψ⊙ι)((a⊗1)Δ(b)) = S⁻¹((ψ⊙ι)(Δ(a)(b⊗1)))",
            first_failure(pairs(n), |(a, b)| {
                let lhs = contract_first(&tm.column(TMap::T3, b, a), &self.psi, n);
                let rhs = s_inv.mul_vec(&contract_first(&tm.column(TMap::T1, a, b), &self.psi, n));
                eq_vec(&[a, b], lhs, rhs)
            }),
        ));

        for (id, anchor, w, r) in [
            ("rho.kms", "φ(ab) = φ(bρ(a))", &self.phi, &self.rho),
            ("rho-prime.kms", "ψ(ab) = ψ(bρ′(a))", &self.psi, &self.rho_prime),
        ] {
            rep.push(Check::from_result(
                id,
                anchor,
                first_failure(pairs(n), |(a, b)| {
                    let lhs = dot(w, &alg.mul_basis(a, b));
                    let rhs = dot(w, &alg.mul(&basis_vec(n, b), &r.column(a)));
                    eq_scalar(&[a, b], lhs, rhs)
                }),
            ));
        }
        for (id, anchor, r) in [
            ("rho.automorphism", "ρ(ab) = ρ(a)ρ(b)", &self.rho),
            ("rho-prime.automorphism", "ρ′(ab) = ρ′(a)ρ′(b)", &self.rho_prime),
        ] {
            rep.push(Check::from_result(
                id,
                anchor,
                first_failure(pairs(n), |(a, b)| {
                    let lhs = r.mul_vec(&alg.mul_basis(a, b));
                    let rhs = alg.mul(&r.column(a), &r.column(b));
                    eq_vec(&[a, b], lhs, rhs)
                }),
            ));
        }
        rep.push(Check::from_result(
            "rho.antipode-intertwines",
            "Sρ′ = ρS",
            eq_matrix(&(s * &self.rho_prime), &(&self.rho * s)),
        ));
        let delta_transport = |alpha: &Matrix, alpha_inv: &Matrix, r: &Matrix| {
            first_failure(0..n, |i| {
                let lhs = h.delta().apply(&r.column(i));
                let rhs = h.delta().image(i).transport(alpha, alpha_inv);
                match lhs.difference(&rhs) {
                    None => Ok(()),
                    Some(w) => Err(prefix(i, w)),
                }
            })
        };
        rep.push(Check::from_result(
            "rho.comultiplication",
            "Δρ = (S²⊙ρ)Δ",
            delta_transport(&s2.kron(&self.rho), &s2_inv.kron(&self.rho_inv), &self.rho),
        ));
        rep.push(Check::from_result(
            "rho-prime.comultiplication",
            "Δρ′ = (ρ′⊙S⁻²)Δ",
            delta_transport(
                &self.rho_prime.kron(&s2_inv),
                &self.rho_prime_inv.kron(&s2),
                &self.rho_prime,
            ),
        ));
        rep.push(Check::from_result(
            "delta.defining",
            "(φ⊙ι)(Δ(a)(1⊗b)) = φ(a)δb and (φ⊙ι)((1⊗b)Δ(a)) = φ(a)bδ",
            check_delta(h, &self.phi, &self.delta),
        ));
        rep.push(Check::from_result(
            "delta.companion",
            "(ι⊙ψ)(Δ(a)(b⊗1)) = ψ(a)δ⁻¹b",
            self.check_companion(),
        ));
        rep.push(Check::from_result(
            "delta.group-like",
            "Δ(δ) = δ⊗δ",
            match h.delta().as_hom().extend(&self.delta) {
                Ok(m) => match m.difference(&self.delta.kron(&self.delta)) {
                    None => Ok(()),
                    Some(w) => Err(w),
                },
                Err(e) => Err(Witness::new(&[], e, "δ⊗δ")),
            },
        ));
        rep.push(Check::from_result(
            "delta.counit",
            "ε(δ) = 1",
            match self.counit_of_multiplier(&self.delta) {
                Some(c) if c.is_one() => Ok(()),
                Some(c) => Err(Witness::new(&[], c, 1)),
                None => Err(Witness::new(&[], "undefined", 1)),
            },
        ));
        rep.push(Check::from_result(
            "delta.antipode",
            "S(δ) = δ⁻¹",
            match self.delta.transport_anti(s, s_inv).difference(&self.delta_inv) {
                None => Ok(()),
                Some(w) => Err(w),
            },
        ));
        rep.push(Check::from_result(
            "phi.antipode",
            "φ(S(a)) = φ(aδ)",
            first_failure(0..n, |a| {
                let lhs = dot(&self.phi, &s.column(a));
                let rhs = dot(&self.phi, &self.delta.apply_right(&basis_vec(n, a)));
                eq_scalar(&[a], lhs, rhs)
            }),
        ));
        rep.push(Check::from_result(
            "phi.delta-sides",
            "φ(aδ) = μφ(δa)",
            first_failure(0..n, |a| {
                let ea = basis_vec(n, a);
                let lhs = dot(&self.phi, &self.delta.apply_right(&ea));
                let rhs = &self.mu * &dot(&self.phi, &self.delta.apply_left(&ea));
                eq_scalar(&[a], lhs, rhs)
            }),
        ));
        rep.push(Check::from_result(
            "phi.scaling",
            "φS² = μφ",
            first_failure(0..n, |a| {
                let lhs = dot(&self.phi, &s2.column(a));
                eq_scalar(&[a], lhs, &self.mu * &self.phi[a])
            }),
        ));
        let mu_inv = self.mu.inv().unwrap_or_else(|_| Scalar::zero());
        let delta_scaled = self.delta.scale(&mu_inv);
        for (id, anchor, r, r_inv) in [
            ("rho.delta", "ρ(δ) = μ⁻¹δ", &self.rho, &self.rho_inv),
            ("rho-prime.delta", "ρ′(δ) = μ⁻¹δ", &self.rho_prime, &self.rho_prime_inv),
        ] {
            rep.push(Check::from_result(
                id,
                anchor,
                match self.delta.transport(r, r_inv).difference(&delta_scaled) {
                    None => Ok(()),
                    Some(w) => Err(w),
                },
            ));
        }
        let conj = &(self.delta.left() * self.delta_inv.right()) * &self.rho;
        rep.push(Check::from_result(
            "rho-prime.conjugation",
            "ρ′(a) = δρ(a)δ⁻¹",
            eq_matrix(&self.rho_prime, &conj),
        ));
        rep.push(Check::from_result(
            "antipode-square.rho",
            "S²ρ = ρS²",
            eq_matrix(&(&s2 * &self.rho), &(&self.rho * &s2)),
        ));
        rep.push(Check::from_result(
            "antipode-square.rho-prime",
            "S²ρ′ = ρ′S²",
            eq_matrix(&(&s2 * &self.rho_prime), &(&self.rho_prime * &s2)),
        ));
        rep
    }

    /// Structural flags that exercise the non-trivial branches.
    pub fn is_unimodular(&self) -> bool {
        self.delta.is_unit()
    }
}

/// Solves `(φ⊙ι)(Δ(a)(1⊗b)) = φ(a)δb` for the multiplier `δ`.
pub fn modular_element(h: &MultiplierHopf, phi: &[Scalar]) -> Result<Multiplier> {
    let n = h.dim();
    let a0 = phi
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::NoModularElement("φ vanishes".into()))?;
    let inv = phi[a0].inv()?;
    let m = h.slice(phi, &basis_vec(n, a0), Side::First).scale(&inv);
    check_delta(h, phi, &m)
        .map_err(|w| Error::NoModularElement(format!("defining identity fails {w}")))?;
    Ok(m)
}

fn check_delta(h: &MultiplierHopf, phi: &[Scalar], delta: &Multiplier) -> std::result::Result<(), Witness> {
    let n = h.dim();
    let tm = h.tmaps();
    first_failure(pairs(n), |(a, b)| {
        let eb = basis_vec(n, b);
        let lhs = contract_first(&tm.column(TMap::T2, a, b), phi, n);
        eq_vec(&[a, b, 0], lhs, scale_vec(&delta.apply_left(&eb), &phi[a]))?;
        let lhs = contract_first(&tm.column(TMap::T4, a, b), phi, n);
        eq_vec(&[a, b, 1], lhs, scale_vec(&delta.apply_right(&eb), &phi[a]))
    })
}

pub(crate) fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

pub(crate) fn eq_vec(idx: &[usize], lhs: Vec<Scalar>, rhs: Vec<Scalar>) -> std::result::Result<(), Witness> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Witness::new(idx, fmt_vec(&lhs), fmt_vec(&rhs)))
    }
}

pub(crate) fn eq_scalar(idx: &[usize], lhs: Scalar, rhs: Scalar) -> std::result::Result<(), Witness> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Witness::new(idx, lhs, rhs))
    }
}

pub(crate) fn eq_matrix(lhs: &Matrix, rhs: &Matrix) -> std::result::Result<(), Witness> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((r, c)) => Err(Witness::new(&[c, r], lhs[(r, c)].clone(), rhs[(r, c)].clone())),
    }
}

pub(crate) fn prefix(i: usize, w: Witness) -> Witness {
    let mut idx = vec![i];
    idx.extend(w.indices);
    Witness { indices: idx, ..w }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_MAX_DIM;
    use crate::models::{function_algebra, group_algebra, sweedler, GroupTable};

    fn s(x: i64) -> Scalar {
        Scalar::from_int(x)
    }

    fn qg(spec: crate::models::Spec) -> QuantumGroup {
        QuantumGroup::new(spec.load(DEFAULT_MAX_DIM).unwrap()).unwrap()
    }

    #[test]
    fn function_algebra_counts() {
        let q = qg(function_algebra("f", &GroupTable::cyclic(2)));
        assert_eq!(q.phi(), &[s(1), s(1)]);
        assert_eq!(q.psi(), q.phi());
        assert!(q.rho().is_identity());
        assert!(q.is_unimodular());
        assert!(q.mu().is_one());
    }

    #[test]
    fn group_algebra_trace() {
        let q = qg(group_algebra("g", &GroupTable::symmetric3()));
        assert_eq!(q.phi(), &basis_vec(6, 0)[..]);
        assert_eq!(q.psi(), q.phi());
        assert!(q.rho().is_identity());
        let rep = q.modular_report();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn sweedler_is_not_unimodular() {
        let q = qg(sweedler());
        assert_eq!(q.phi()[0], s(0));
        assert_eq!(q.phi()[1], s(0));
        assert_ne!(q.psi(), q.phi());
        assert!(!q.rho().is_identity());
        let g = Multiplier::from_element(q.hopf().algebra(), &basis_vec(4, 1));
        assert_eq!(q.delta_element(), &g);
        let rep = q.modular_report();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn wrong_functional_fails_invariance() {
        let h = function_algebra("f", &GroupTable::cyclic(2)).load(DEFAULT_MAX_DIM).unwrap();
        // Faithful but not invariant.
        let q = QuantumGroup::with_left_haar(h, vec![s(1), s(2)]);
        match q {
            Ok(q) => assert!(!q.modular_report().passed("haar.left-invariance")),
            Err(e) => assert!(matches!(e, Error::NoModularElement(_) | Error::NotProportional)),
        }
    }
}
