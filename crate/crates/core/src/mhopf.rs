//! Comultiplications, the four canonical maps, and the counit and antipode
//! derived from them.

use std::sync::Arc;

use crate::algebra::{
    basis_vec, dot, flip_permutation, fmt_vec, zero_vec, Algebra, HomImage, Multiplier,
};
use crate::error::{Error, Result, Witness};
use crate::exactnum::{LinearSystem, Matrix, Scalar};
use crate::report::{first_failure, Check, Report};

/// `Δ` on basis elements, each image a multiplier of `A⊗A`.
#[derive(Clone, Debug, PartialEq)]
pub struct Comultiplication {
    hom: HomImage,
}

impl Comultiplication {
    /// From images given as elements of `A⊗A`.
    pub fn from_tensors(tensor: &Algebra, images: &[Vec<Scalar>]) -> Self {
        Comultiplication {
            hom: HomImage::new(
                tensor.dim(),
                images
                    .iter()
                    .map(|x| Multiplier::from_element(tensor, x))
                    .collect(),
            ),
        }
    }

    pub fn from_pairs(tensor_dim: usize, pairs: Vec<Multiplier>) -> Self {
        Comultiplication {
            hom: HomImage::new(tensor_dim, pairs),
        }
    }

    pub fn dim(&self) -> usize {
        self.hom.source_dim()
    }

    pub fn image(&self, i: usize) -> &Multiplier {
        self.hom.image(i)
    }

    pub fn apply(&self, x: &[Scalar]) -> Multiplier {
        self.hom.apply(x)
    }

    pub fn as_hom(&self) -> &HomImage {
        &self.hom
    }

    /// Each `Δ(e_i)` is a genuine two-sided multiplier.
    pub fn check_pairs(&self, tensor: &Algebra) -> std::result::Result<(), Witness> {
        for i in 0..self.dim() {
            self.image(i).check_compatibility(tensor).map_err(|w| {
                let mut idx = vec![i];
                idx.extend(w.indices);
                Witness { indices: idx, ..w }
            })?;
        }
        Ok(())
    }

    /// `Δ(e_i)Δ(e_j) = Δ(e_i e_j)` as multiplier pairs.
    pub fn check_homomorphism(&self, alg: &Algebra) -> std::result::Result<(), Witness> {
        let n = alg.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.image(i).mul(self.image(j));
                let rhs = self.apply(&alg.mul_basis(i, j));
                if let Some(w) = lhs.difference(&rhs) {
                    let mut idx = vec![i, j];
                    idx.extend(w.indices);
                    return Err(Witness { indices: idx, ..w });
                }
            }
        }
        Ok(())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.hom.is_nondegenerate()
    }

    /// Elements `Δ(e_i)` of `A⊗A` when they exist.
    pub fn elements(&self, tensor: &Algebra) -> Option<Vec<Vec<Scalar>>> {
        (0..self.dim())
            .map(|i| tensor.element_of(self.image(i)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TMap {
    /// `a⊗b ↦ Δ(a)(b⊗1)`
    T1,
    /// `a⊗b ↦ Δ(a)(1⊗b)`
    T2,
    /// `a⊗b ↦ (b⊗1)Δ(a)`
    T3,
    /// `a⊗b ↦ (1⊗b)Δ(a)`
    T4,
}

impl TMap {
    pub const ALL: [TMap; 4] = [TMap::T1, TMap::T2, TMap::T3, TMap::T4];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["T1", "T2", "T3", "T4"][self.index()]
    }

    pub fn formula(self) -> &'static str {
        [
            "a⊗b ↦ Δ(a)(b⊗1)",
            "a⊗b ↦ Δ(a)(1⊗b)",
            "a⊗b ↦ (b⊗1)Δ(a)",
            "a⊗b ↦ (1⊗b)Δ(a)",
        ][self.index()]
    }
}

/// The four canonical maps as `n²×n²` matrices; column `a·n + b` holds the
/// image of `e_a⊗e_b`.
#[derive(Clone, Debug)]
pub struct TMaps {
    n: usize,
    mats: [Matrix; 4],
}

fn leg_multipliers(alg: &Algebra) -> (Vec<Multiplier>, Vec<Multiplier>) {
    let n = alg.dim();
    let unit = Multiplier::unit(n);
    let mut first = Vec::with_capacity(n);
    let mut second = Vec::with_capacity(n);
    for b in 0..n {
        let mb = Multiplier::from_element(alg, &basis_vec(n, b));
        first.push(mb.kron(&unit));
        second.push(unit.kron(&mb));
    }
    (first, second)
}

impl TMaps {
    /// Fails with a witness `(map, a, b)` when some product leaves `A⊗A`.
    pub fn compute(
        alg: &Algebra,
        tensor: &Algebra,
        delta: &Comultiplication,
    ) -> std::result::Result<TMaps, Witness> {
        let n = alg.dim();
        let nn = n * n;
        let (b_first, b_second) = leg_multipliers(alg);
        let mut mats = [
            Matrix::zeros(nn, nn),
            Matrix::zeros(nn, nn),
            Matrix::zeros(nn, nn),
            Matrix::zeros(nn, nn),
        ];
        for a in 0..n {
            let da = delta.image(a);
            for b in 0..n {
                let chains: [[&Multiplier; 2]; 4] = [
                    [da, &b_first[b]],
                    [da, &b_second[b]],
                    [&b_first[b], da],
                    [&b_second[b], da],
                ];
                for (k, chain) in chains.iter().enumerate() {
                    let x = tensor.element_of_product(chain).ok_or_else(|| {
                        Witness::new(&[k, a, b], "product outside A⊗A", "element of A⊗A")
                    })?;
                    mats[k].set_column(a * n + b, &x);
                }
            }
        }
        Ok(TMaps { n, mats })
    }

    pub fn matrix(&self, t: TMap) -> &Matrix {
        &self.mats[t.index()]
    }

    pub fn column(&self, t: TMap, a: usize, b: usize) -> Vec<Scalar> {
        self.mats[t.index()].column(a * self.n + b)
    }

    /// Image of `x⊗y` under the map.
    pub fn apply(&self, t: TMap, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.mats[t.index()].mul_vec(&crate::algebra::kron_vec(x, y))
    }

    pub fn invertible(&self, t: TMap) -> bool {
        self.mats[t.index()].is_invertible()
    }

    pub fn is_regular(&self) -> bool {
        TMap::ALL.iter().all(|&t| self.invertible(t))
    }
}

/// `(ω⊙ι)x` for `x ∈ A⊗B` with `ω` on the first leg.
pub fn contract_first(x: &[Scalar], omega: &[Scalar], m: usize) -> Vec<Scalar> {
    let mut out = zero_vec(m);
    for (p, w) in omega.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        for q in 0..m {
            let v = &x[p * m + q];
            if !v.is_zero() {
                out[q].add_mul(w, v);
            }
        }
    }
    out
}

/// `(ι⊙ω)x` for `x ∈ A⊗B` with `ω` on the second leg.
pub fn contract_second(x: &[Scalar], omega: &[Scalar], m: usize) -> Vec<Scalar> {
    let n = x.len() / m;
    (0..n).map(|p| dot(&x[p * m..(p + 1) * m], omega)).collect()
}

/// `m(x)` for `x ∈ A⊗A`: the multiplication map.
pub fn multiply_legs(alg: &Algebra, x: &[Scalar]) -> Vec<Scalar> {
    let n = alg.dim();
    let mut out = zero_vec(n);
    for (idx, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (k, v) in alg.basis_product(idx / n, idx % n) {
            out[*k].add_mul(c, v);
        }
    }
    out
}

/// Which leg a functional is applied to when slicing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `(ω⊙ι)(m)`
    First,
    /// `(ι⊙ω)(m)`
    Second,
}

/// Slice of `m ∈ M(A⊗B)`: for `Side::First` the multiplier of `B` with
/// `x ↦ (ω⊙ι)(m(1⊗x))` and `x ↦ (ω⊙ι)((1⊗x)m)`; symmetrically for
/// `Side::Second`.
pub fn slice_multiplier(
    a: &Algebra,
    b: &Algebra,
    ab: &Algebra,
    omega: &[Scalar],
    m: &Multiplier,
    side: Side,
) -> Result<Multiplier> {
    let (n, k) = (a.dim(), b.dim());
    let target = match side {
        Side::First => b,
        Side::Second => a,
    };
    let t = target.dim();
    let mut l = Matrix::zeros(t, t);
    let mut r = Matrix::zeros(t, t);
    for x in 0..t {
        let ex = Multiplier::from_element(target, &basis_vec(t, x));
        let leg = match side {
            Side::First => Multiplier::unit(n).kron(&ex),
            Side::Second => ex.kron(&Multiplier::unit(k)),
        };
        let right = ab.element_of_product(&[m, &leg]).ok_or(Error::NotInAlgebra)?;
        let left = ab.element_of_product(&[&leg, m]).ok_or(Error::NotInAlgebra)?;
        let (lc, rc) = match side {
            Side::First => (contract_first(&right, omega, k), contract_first(&left, omega, k)),
            Side::Second => (contract_second(&right, omega, k), contract_second(&left, omega, k)),
        };
        l.set_column(x, &lc);
        r.set_column(x, &rc);
    }
    Ok(Multiplier::new(l, r))
}

/// Sandwiched coassociativity:
/// `(a⊗1⊗1)(Δ⊙ι)(Δ(b)(1⊗c)) = (ι⊙Δ)((a⊗1)Δ(b))(1⊗1⊗c)`.
pub fn check_coassociativity(n: usize, tm: &TMaps) -> std::result::Result<(), Witness> {
    let nn = n * n;
    let t3: Vec<Vec<Scalar>> = (0..nn).map(|i| tm.matrix(TMap::T3).column(i)).collect();
    let t2: Vec<Vec<Scalar>> = (0..nn).map(|i| tm.matrix(TMap::T2).column(i)).collect();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut lhs = zero_vec(nn * n);
                for (pq, v) in t2[b * n + c].iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let (p, q) = (pq / n, pq % n);
                    for (xy, w) in t3[p * n + a].iter().enumerate() {
                        if !w.is_zero() {
                            lhs[xy * n + q].add_mul(v, w);
                        }
                    }
                }
                let mut rhs = zero_vec(nn * n);
                for (pq, v) in t3[b * n + a].iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let (p, q) = (pq / n, pq % n);
                    for (yz, w) in t2[q * n + c].iter().enumerate() {
                        if !w.is_zero() {
                            rhs[p * nn + yz].add_mul(v, w);
                        }
                    }
                }
                if lhs != rhs {
                    return Err(Witness::new(&[a, b, c], fmt_vec(&lhs), fmt_vec(&rhs)));
                }
            }
        }
    }
    Ok(())
}

/// Solves `(ε⊙ι)(Δ(a)(1⊗b)) = ab` and `(ι⊙ε)(Δ(a)(b⊗1)) = ab` for `ε`.
pub fn derive_counit(alg: &Algebra, tm: &TMaps) -> Result<Vec<Scalar>> {
    let n = alg.dim();
    let mut sys = LinearSystem::new(n);
    for a in 0..n {
        for b in 0..n {
            let ab = alg.mul_basis(a, b);
            let t2 = tm.column(TMap::T2, a, b);
            let t1 = tm.column(TMap::T1, a, b);
            for q in 0..n {
                sys.push_sparse((0..n).map(|p| (p, t2[p * n + q].clone())), ab[q].clone());
                sys.push_sparse((0..n).map(|p| (p, t1[q * n + p].clone())), ab[q].clone());
            }
        }
    }
    let sol = sys.solve();
    let eps = match (&sol.particular, sol.nullspace_basis.len()) {
        (None, _) => return Err(Error::NoCounit("the counit equations are inconsistent".into())),
        (Some(_), d) if d > 0 => {
            return Err(Error::NoCounit(format!(
                "the counit equations leave a {d}-dimensional family"
            )))
        }
        (Some(p), _) => p.clone(),
    };
    if eps.iter().all(Scalar::is_zero) {
        return Err(Error::NoCounit("the only solution is zero".into()));
    }
    Ok(eps)
}

/// Solves `m(S⊙ι)(Δ(a)(1⊗b)) = ε(a)b` and `m(ι⊙S)((b⊗1)Δ(a)) = ε(a)b`
/// for the matrix of `S`.
pub fn derive_antipode(alg: &Algebra, tm: &TMaps, counit: &[Scalar]) -> Result<Matrix> {
    let n = alg.dim();
    let var = |k: usize, p: usize| k * n + p;
    let mut sys = LinearSystem::new(n * n);
    for a in 0..n {
        for b in 0..n {
            let t2 = tm.column(TMap::T2, a, b);
            let t3 = tm.column(TMap::T3, a, b);
            for r in 0..n {
                let rhs = if r == b { counit[a].clone() } else { Scalar::zero() };
                let mut eq = Vec::new();
                let mut eq3 = Vec::new();
                for p in 0..n {
                    for q in 0..n {
                        let v = &t2[p * n + q];
                        if !v.is_zero() {
                            for k in 0..n {
                                let c = alg.structure_constant(k, q, r);
                                if !c.is_zero() {
                                    eq.push((var(k, p), v * &c));
                                }
                            }
                        }
                        let w = &t3[p * n + q];
                        if !w.is_zero() {
                            for k in 0..n {
                                let c = alg.structure_constant(p, k, r);
                                if !c.is_zero() {
                                    eq3.push((var(k, q), w * &c));
                                }
                            }
                        }
                    }
                }
                sys.push_sparse(eq, rhs.clone());
                sys.push_sparse(eq3, rhs);
            }
        }
    }
    let sol = sys.solve();
    match (&sol.particular, sol.nullspace_basis.len()) {
        (None, _) => Err(Error::NoAntipode(
            "the antipode equations are inconsistent".into(),
        )),
        (Some(_), d) if d > 0 => Err(Error::NoAntipode(format!(
            "the antipode equations leave a {d}-dimensional family"
        ))),
        (Some(p), _) => Ok(Matrix::from_fn(n, n, |k, q| p[var(k, q)].clone())),
    }
}

/// A regular multiplier Hopf algebra with its derived counit and antipode.
#[derive(Clone, Debug)]
pub struct MultiplierHopf {
    algebra: Arc<Algebra>,
    tensor: Arc<Algebra>,
    delta: Comultiplication,
    tmaps: TMaps,
    counit: Vec<Scalar>,
    antipode: Matrix,
    antipode_inverse: Matrix,
}

fn violation(axiom: &str, witness: Witness) -> Error {
    Error::AxiomViolation {
        axiom: axiom.to_string(),
        witness,
    }
}

impl MultiplierHopf {
    /// Validates the comultiplication and derives `ε` and `S`.
    pub fn new(algebra: Algebra, delta: Comultiplication) -> Result<Self> {
        let n = algebra.dim();
        if delta.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "comultiplication given on {} elements, algebra has dimension {n}",
                delta.dim()
            )));
        }
        let tensor = algebra.tensor(&algebra);
        delta
            .check_pairs(&tensor)
            .map_err(|w| violation("Δ(a) is a two-sided multiplier", w))?;
        delta
            .check_homomorphism(&algebra)
            .map_err(|w| violation("Δ(ab) = Δ(a)Δ(b)", w))?;
        if !delta.is_nondegenerate() {
            return Err(violation(
                "Δ is non-degenerate",
                Witness::new(&[], "Δ(A)(A⊗A) is a proper subspace", "A⊗A"),
            ));
        }
        let tmaps = TMaps::compute(&algebra, &tensor, &delta)
            .map_err(|w| violation("Δ(a)(b⊗1) etc. lie in A⊗A", w))?;
        for t in TMap::ALL {
            if !tmaps.invertible(t) {
                return Err(violation(
                    &format!("{} is bijective", t.formula()),
                    Witness::new(&[t.index()], "singular", "invertible"),
                ));
            }
        }
        check_coassociativity(n, &tmaps).map_err(|w| violation("(Δ⊙ι)Δ = (ι⊙Δ)Δ", w))?;
        let counit = derive_counit(&algebra, &tmaps)?;
        let antipode = derive_antipode(&algebra, &tmaps, &counit)?;
        let antipode_inverse = antipode
            .invert()
            .map_err(|_| Error::NoAntipode("the solved antipode is not bijective".into()))?;
        Ok(MultiplierHopf {
            algebra: Arc::new(algebra),
            tensor: Arc::new(tensor),
            delta,
            tmaps,
            counit,
            antipode,
            antipode_inverse,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn tensor(&self) -> &Arc<Algebra> {
        &self.tensor
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn delta(&self) -> &Comultiplication {
        &self.delta
    }

    pub fn tmaps(&self) -> &TMaps {
        &self.tmaps
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    pub fn antipode_inverse(&self) -> &Matrix {
        &self.antipode_inverse
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.algebra.mul(a, b)
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        basis_vec(self.dim(), i)
    }

    /// `(ω⊙ι)Δ(a)` or `(ι⊙ω)Δ(a)`, read off the canonical maps.
    pub fn slice(&self, omega: &[Scalar], a: &[Scalar], side: Side) -> Multiplier {
        let n = self.dim();
        let (lt, rt) = match side {
            Side::First => (TMap::T2, TMap::T4),
            Side::Second => (TMap::T1, TMap::T3),
        };
        let mut l = Matrix::zeros(n, n);
        let mut r = Matrix::zeros(n, n);
        for b in 0..n {
            let eb = basis_vec(n, b);
            let x = self.tmaps.apply(lt, a, &eb);
            let y = self.tmaps.apply(rt, a, &eb);
            let (lc, rc) = match side {
                Side::First => (contract_first(&x, omega, n), contract_first(&y, omega, n)),
                Side::Second => (contract_second(&x, omega, n), contract_second(&y, omega, n)),
            };
            l.set_column(b, &lc);
            r.set_column(b, &rc);
        }
        Multiplier::new(l, r)
    }

    /// A slice of `Δ(a)` as an element of `A`.
    pub fn slice_element(&self, omega: &[Scalar], a: &[Scalar], side: Side) -> Result<Vec<Scalar>> {
        self.algebra
            .element_of(&self.slice(omega, a, side))
            .ok_or(Error::NotInAlgebra)
    }

    /// Checks every identity of the regular multiplier Hopf algebra layer.
    pub fn axiom_report(&self) -> Report {
        let n = self.dim();
        let alg = &*self.algebra;
        let eps = &self.counit;
        let s = &self.antipode;
        let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
        let mut rep = Report::new();

        rep.push(Check::from_result(
            "delta.homomorphism",
            "Δ(ab) = Δ(a)Δ(b)",
            self.delta.check_homomorphism(alg),
        ));
        for t in TMap::ALL {
            rep.push(Check::from_result(
                &format!("regularity.{}", t.name().to_lowercase()),
                &format!("{} is a bijection of A⊙A", t.formula()),
                if self.tmaps.invertible(t) {
                    Ok(())
                } else {
                    Err(Witness::new(&[t.index()], "singular", "invertible"))
                },
            ));
        }
        rep.push(Check::from_result(
            "coassociativity",
            "(Δ⊙ι)Δ = (ι⊙Δ)Δ",
            check_coassociativity(n, &self.tmaps),
        ));

        let counit_law = |t: TMap, first: bool, swap: bool| {
            first_failure(pairs(), |(a, b)| {
                let x = self.tmaps.column(t, a, b);
                let lhs = if first {
                    contract_first(&x, eps, n)
                } else {
                    contract_second(&x, eps, n)
                };
                let rhs = if swap { alg.mul_basis(b, a) } else { alg.mul_basis(a, b) };
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(Witness::new(&[a, b], fmt_vec(&lhs), fmt_vec(&rhs)))
                }
            })
        };
        rep.push(Check::from_result(
            "counit.left",
            "(ε⊙ι)(Δ(a)(1⊗b)) = ab",
            counit_law(TMap::T2, true, false),
        ));
        rep.push(Check::from_result(
            "counit.right",
            "(ι⊙ε)(Δ(a)(b⊗1)) = ab",
            counit_law(TMap::T1, false, false),
        ));
        rep.push(Check::from_result(
            "counit.left-opposite",
            "(ε⊙ι)((1⊗b)Δ(a)) = ba",
            counit_law(TMap::T4, true, true),
        ));
        rep.push(Check::from_result(
            "counit.right-opposite",
            "(ι⊙ε)((b⊗1)Δ(a)) = ba",
            counit_law(TMap::T3, false, true),
        ));
        rep.push(Check::from_result(
            "counit.slices",
            "(ε⊙ι)Δ(a) = (ι⊙ε)Δ(a) = a",
            first_failure(0..n, |a| {
                let ea = basis_vec(n, a);
                for side in [Side::First, Side::Second] {
                    let x = self.slice_element(eps, &ea, side);
                    if !matches!(&x, Ok(v) if *v == ea) {
                        let got = x.map(|v| fmt_vec(&v)).unwrap_or_else(|e| e.to_string());
                        return Err(Witness::new(&[a], got, fmt_vec(&ea)));
                    }
                }
                Ok(())
            }),
        ));
        rep.push(Check::from_result(
            "counit.multiplicative",
            "ε(ab) = ε(a)ε(b)",
            first_failure(pairs(), |(a, b)| {
                let lhs = dot(eps, &alg.mul_basis(a, b));
                let rhs = &eps[a] * &eps[b];
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(Witness::new(&[a, b], lhs, rhs))
                }
            }),
        ));
        rep.push(Check::from_result(
            "counit.nonzero",
            "ε ≠ 0",
            if eps.iter().any(|e| !e.is_zero()) {
                Ok(())
            } else {
                Err(Witness::new(&[], "0", "nonzero"))
            },
        ));

        let s_kron_id = s.kron(&Matrix::identity(n));
        let id_kron_s = Matrix::identity(n).kron(s);
        let antipode_law = |t: TMap, map: &Matrix| {
            first_failure(pairs(), |(a, b)| {
                let x = map.mul_vec(&self.tmaps.column(t, a, b));
                let lhs = multiply_legs(alg, &x);
                let rhs = crate::algebra::scale_vec(&basis_vec(n, b), &eps[a]);
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(Witness::new(&[a, b], fmt_vec(&lhs), fmt_vec(&rhs)))
                }
            })
        };
        rep.push(Check::from_result(
            "antipode.left",
            "m(S⊙ι)(Δ(a)(1⊗b)) = ε(a)b",
            antipode_law(TMap::T2, &s_kron_id),
        ));
        rep.push(Check::from_result(
            "antipode.right",
            "m(ι⊙S)((b⊗1)Δ(a)) = ε(a)b",
            antipode_law(TMap::T3, &id_kron_s),
        ));
        rep.push(Check::from_result(
            "antipode.anti-multiplicative",
            "S(ab) = S(b)S(a)",
            first_failure(pairs(), |(a, b)| {
                let lhs = s.mul_vec(&alg.mul_basis(a, b));
                let rhs = alg.mul(&s.column(b), &s.column(a));
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(Witness::new(&[a, b], fmt_vec(&lhs), fmt_vec(&rhs)))
                }
            }),
        ));
        rep.push(Check::from_result(
            "antipode.bijective",
            "S is bijective",
            if (&self.antipode_inverse * s).is_identity() {
                Ok(())
            } else {
                Err(Witness::new(&[], "S⁻¹S ≠ ι", "ι"))
            },
        ));
        rep.push(Check::from_result(
            "antipode.comultiplication",
            "χ(S⊙S)Δ = ΔS",
            self.check_antipode_comultiplication(),
        ));
        rep
    }

    fn check_antipode_comultiplication(&self) -> std::result::Result<(), Witness> {
        let n = self.dim();
        let ss = self.antipode.kron(&self.antipode);
        let ss_inv = self.antipode_inverse.kron(&self.antipode_inverse);
        let flip = flip_permutation(n, n);
        for i in 0..n {
            let lhs = self
                .delta
                .image(i)
                .transport_anti(&ss, &ss_inv)
                .permute(&flip);
            let rhs = self.delta.apply(&self.antipode.column(i));
            if let Some(w) = lhs.difference(&rhs) {
                let mut idx = vec![i];
                idx.extend(w.indices);
                return Err(Witness { indices: idx, ..w });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::kron_vec;

    fn s(x: i64) -> Scalar {
        Scalar::from_int(x)
    }

    fn fun_c2() -> (Algebra, Comultiplication) {
        let a = Algebra::from_structure_constants(2, [(0, 0, 0, s(1)), (1, 1, 1, s(1))]).unwrap();
        let t = a.tensor(&a);
        let d = |u: usize, v: usize| kron_vec(&basis_vec(2, u), &basis_vec(2, v));
        let add = |x: Vec<Scalar>, y: Vec<Scalar>| -> Vec<Scalar> {
            x.iter().zip(&y).map(|(p, q)| p + q).collect()
        };
        let images = vec![add(d(0, 0), d(1, 1)), add(d(0, 1), d(1, 0))];
        let delta = Comultiplication::from_tensors(&t, &images);
        (a, delta)
    }

    fn grp_c2() -> (Algebra, Comultiplication) {
        let tri = |a: usize, b: usize| (a, b, (a + b) % 2, s(1));
        let a = Algebra::from_structure_constants(2, [tri(0, 0), tri(0, 1), tri(1, 0), tri(1, 1)])
            .unwrap();
        let t = a.tensor(&a);
        let images: Vec<Vec<Scalar>> =
            (0..2).map(|g| kron_vec(&basis_vec(2, g), &basis_vec(2, g))).collect();
        let delta = Comultiplication::from_tensors(&t, &images);
        (a, delta)
    }

    #[test]
    fn function_algebra_derivations() {
        let (a, d) = fun_c2();
        let h = MultiplierHopf::new(a, d).unwrap();
        assert_eq!(h.counit(), &[s(1), s(0)]);
        assert!(h.antipode().is_identity());
        assert!(h.tmaps().is_regular());
        let rep = h.axiom_report();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        // (ev_1⊙ι)Δ(δ_0) = δ_1
        let x = h.slice_element(&[s(0), s(1)], &basis_vec(2, 0), Side::First).unwrap();
        assert_eq!(x, basis_vec(2, 1));
    }

    #[test]
    fn group_algebra_tmap() {
        let (a, d) = grp_c2();
        let h = MultiplierHopf::new(a, d).unwrap();
        // T1(λ_a⊗λ_b) = λ_{ab}⊗λ_a
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(
                    h.tmaps().column(TMap::T1, x, y),
                    kron_vec(&basis_vec(2, (x + y) % 2), &basis_vec(2, x))
                );
            }
        }
        assert_eq!(h.counit(), &[s(1), s(1)]);
    }

    #[test]
    fn zero_comultiplication_is_not_regular() {
        let (a, _) = fun_c2();
        let t = a.tensor(&a);
        let d = Comultiplication::from_tensors(&t, &[zero_vec(4), zero_vec(4)]);
        let tm = TMaps::compute(&a, &t, &d).unwrap();
        assert!(!tm.is_regular());
        assert!(TMap::ALL.iter().all(|&k| tm.matrix(k).is_zero()));
        assert!(matches!(MultiplierHopf::new(a, d), Err(Error::AxiomViolation { .. })));
    }

    #[test]
    fn corrupted_coproduct_breaks_coassociativity() {
        let (a, _) = grp_c2();
        let t = a.tensor(&a);
        // Δ(λ_1) = λ_1⊗λ_0 is multiplicative but not coassociative with Δ(λ_0) = λ_0⊗λ_0?
        // It is; instead use λ_1 ↦ λ_0⊗λ_1 + λ_1⊗λ_0 - λ_0⊗λ_0 style breakage.
        let images = vec![
            kron_vec(&basis_vec(2, 0), &basis_vec(2, 0)),
            kron_vec(&basis_vec(2, 1), &basis_vec(2, 0)),
        ];
        let d = Comultiplication::from_tensors(&t, &images);
        let tm = TMaps::compute(&a, &t, &d).unwrap();
        // Coassociative (it is λ_g ↦ λ_g⊗1), but T-maps are not bijective.
        assert!(check_coassociativity(2, &tm).is_ok());
        assert!(!tm.is_regular());
    }

    #[test]
    fn generic_slice_agrees_with_tmap_slice() {
        let (a, d) = fun_c2();
        let h = MultiplierHopf::new(a, d).unwrap();
        let omega = vec![s(2), s(-3)];
        for i in 0..2 {
            for side in [Side::First, Side::Second] {
                let generic = slice_multiplier(
                    h.algebra(),
                    h.algebra(),
                    h.tensor(),
                    &omega,
                    h.delta().image(i),
                    side,
                )
                .unwrap();
                assert_eq!(generic, h.slice(&omega, &basis_vec(2, i), side));
            }
        }
        let zero = h.slice(&[s(0), s(0)], &basis_vec(2, 0), Side::First);
        assert!(zero.is_zero());
    }
}
