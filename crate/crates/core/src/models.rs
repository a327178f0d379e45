//! Concrete quantum groups and the JSON spec format they travel in.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{basis_vec, kron_vec, zero_vec, Algebra, Multiplier};
use crate::error::{Error, Result, Witness};
use crate::exactnum::{Matrix, Scalar};
use crate::mhopf::{Comultiplication, MultiplierHopf};

/// A finite group by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    mul: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl GroupTable {
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self> {
        let m = mul.len();
        if m == 0 || mul.iter().any(|row| row.len() != m || row.iter().any(|&x| x >= m)) {
            return Err(Error::InvalidGroup("table must be square with entries in range".into()));
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let inverse = (0..m)
            .map(|a| {
                (0..m)
                    .find(|&b| mul[a][b] == identity && mul[b][a] == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupTable { mul, inverse, identity })
    }

    pub fn cyclic(m: usize) -> Self {
        GroupTable::new(
            (0..m)
                .map(|a| (0..m).map(|b| (a + b) % m).collect())
                .collect(),
        )
        .expect("cyclic group")
    }

    pub fn trivial() -> Self {
        GroupTable::cyclic(1)
    }

    /// Permutations of three points in lexicographic order, identity first.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let mul = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        GroupTable::new(mul).expect("symmetric group")
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }
}

/// Images `Δ(e_i)`, either as elements of `A⊗A` or as explicit pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaSpec {
    Tensor(Vec<(usize, Vec<Scalar>)>),
    Pair(Vec<PairEntry>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairEntry {
    pub basis: usize,
    pub left: Vec<Vec<Scalar>>,
    pub right: Vec<Vec<Scalar>>,
}

/// The on-disk description of a multiplier Hopf algebra. Matrices are
/// row-major with entry `[k][i]` the coefficient of `e_k` in the image of
/// `e_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spec {
    pub name: String,
    pub dim: usize,
    pub sc: Vec<(usize, usize, usize, Scalar)>,
    pub delta: DeltaSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<Vec<Scalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Vec<Scalar>>>,
}

fn violation(axiom: &str, witness: Witness) -> Error {
    Error::AxiomViolation {
        axiom: axiom.to_string(),
        witness,
    }
}

fn square(rows: &[Vec<Scalar>], n: usize, what: &str) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("{what} must be {n}x{n}")));
    }
    Matrix::from_rows(rows.to_vec())
}

impl Spec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Reads a file, or standard input for `-`.
    pub fn read(path: &Path) -> Result<Self> {
        Spec::from_json(&read_text(path)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Builds and validates the algebra (associativity, non-degeneracy,
    /// involution).
    pub fn algebra(&self, max_dim: usize) -> Result<Algebra> {
        build_algebra(self.dim, &self.sc, self.star.as_deref(), max_dim)
    }

    pub fn comultiplication(&self, tensor: &Algebra) -> Result<Comultiplication> {
        let n = self.dim;
        let nn = n * n;
        match &self.delta {
            DeltaSpec::Tensor(entries) => {
                let mut images: Vec<Option<Vec<Scalar>>> = vec![None; n];
                for (i, coeffs) in entries {
                    if *i >= n || coeffs.len() != nn {
                        return Err(Error::DimensionMismatch(format!(
                            "delta entry {i} must index a basis element and have {nn} coefficients"
                        )));
                    }
                    if images[*i].replace(coeffs.clone()).is_some() {
                        return Err(Error::Parse(format!("delta given twice for basis {i}")));
                    }
                }
                let images: Vec<Vec<Scalar>> =
                    images.into_iter().map(|x| x.unwrap_or_else(|| zero_vec(nn))).collect();
                Ok(Comultiplication::from_tensors(tensor, &images))
            }
            DeltaSpec::Pair(entries) => {
                let mut pairs: Vec<Option<Multiplier>> = vec![None; n];
                for e in entries {
                    if e.basis >= n {
                        return Err(Error::DimensionMismatch(format!(
                            "delta entry {} out of range",
                            e.basis
                        )));
                    }
                    let m = Multiplier::new(
                        square(&e.left, nn, "left action")?,
                        square(&e.right, nn, "right action")?,
                    );
                    if pairs[e.basis].replace(m).is_some() {
                        return Err(Error::Parse(format!("delta given twice for basis {}", e.basis)));
                    }
                }
                let pairs = pairs
                    .into_iter()
                    .map(|p| p.unwrap_or_else(|| Multiplier::zero(nn)))
                    .collect();
                Ok(Comultiplication::from_pairs(nn, pairs))
            }
        }
    }

    /// Full ingestion: validation, derivation of `ε` and `S`, and the
    /// cross-check against supplied values.
    pub fn load(&self, max_dim: usize) -> Result<MultiplierHopf> {
        let alg = self.algebra(max_dim)?;
        let tensor = alg.tensor(&alg);
        let delta = self.comultiplication(&tensor)?;
        let h = MultiplierHopf::new(alg, delta)?;
        check_star_compatibility(&h)?;
        let n = self.dim;
        if let Some(eps) = &self.counit {
            if eps.len() != n {
                return Err(Error::DimensionMismatch(format!("counit must have {n} entries")));
            }
            if let Some(i) = (0..n).find(|&i| eps[i] != h.counit()[i]) {
                return Err(violation(
                    "supplied counit equals the derived one",
                    Witness::new(&[i], eps[i].clone(), h.counit()[i].clone()),
                ));
            }
        }
        if let Some(rows) = &self.antipode {
            let s = square(rows, n, "antipode")?;
            if let Some((r, c)) = s.first_difference(h.antipode()) {
                return Err(violation(
                    "supplied antipode equals the derived one",
                    Witness::new(&[c, r], s[(r, c)].clone(), h.antipode()[(r, c)].clone()),
                ));
            }
        }
        Ok(h)
    }
}

fn read_text(path: &Path) -> Result<String> {
    Ok(if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path)?
    })
}

fn build_algebra(
    n: usize,
    sc: &[(usize, usize, usize, Scalar)],
    star: Option<&[Vec<Scalar>]>,
    max_dim: usize,
) -> Result<Algebra> {
    if n > max_dim {
        return Err(Error::TooLarge { dim: n, max: max_dim });
    }
    if n == 0 {
        return Err(Error::Parse("dimension must be positive".into()));
    }
    let mut alg = Algebra::from_structure_constants(n, sc.iter().cloned())?;
    alg.check_associativity()
        .map_err(|w| violation("(e_i e_j) e_k = e_i (e_j e_k)", w))?;
    if !alg.is_nondegenerate() {
        return Err(Error::DegenerateAlgebra);
    }
    if let Some(rows) = star {
        alg = alg.with_star(square(rows, n, "star")?)?;
        alg.check_star()
            .map_err(|w| violation("(ab)* = b*a* and a** = a", w))?;
    }
    Ok(alg)
}

/// A plain algebra with optional involution, as stored on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub dim: usize,
    pub sc: Vec<(usize, usize, usize, Scalar)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<Vec<Scalar>>>,
}

impl AlgebraSpec {
    pub fn from_algebra(alg: &Algebra) -> Self {
        AlgebraSpec {
            dim: alg.dim(),
            sc: alg.triples(),
            star: alg.star().map(dense),
        }
    }

    pub fn algebra(&self, max_dim: usize) -> Result<Algebra> {
        build_algebra(self.dim, &self.sc, self.star.as_deref(), max_dim)
    }
}

/// An element of `M(A⊗B)` together with `B`: the left and right actions
/// on `A⊗B`, row-major, basis `e_i⊗f_j` at index `i·dim(B) + j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorepSpec {
    pub target: AlgebraSpec,
    pub left: Vec<Vec<Scalar>>,
    pub right: Vec<Vec<Scalar>>,
}

impl CorepSpec {
    pub fn new(target: &Algebra, v: &Multiplier) -> Self {
        CorepSpec {
            target: AlgebraSpec::from_algebra(target),
            left: v.left().to_rows(),
            right: v.right().to_rows(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        CorepSpec::from_json(&read_text(path)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// The target algebra and the multiplier over `A⊗B` with `dim A = n`.
    pub fn load(&self, n: usize, max_dim: usize) -> Result<(Algebra, Multiplier)> {
        let b = self.target.algebra(max_dim)?;
        let nm = n * b.dim();
        let v = Multiplier::new(
            square(&self.left, nm, "left action")?,
            square(&self.right, nm, "right action")?,
        );
        Ok((b, v))
    }
}

/// With an involution present, `Δ(a*) = Δ(a)*`.
pub fn check_star_compatibility(h: &MultiplierHopf) -> Result<()> {
    let alg = h.algebra();
    let Some(k) = alg.star() else { return Ok(()) };
    for i in 0..h.dim() {
        let lhs = h.delta().apply(&k.column(i));
        let rhs = h.delta().image(i).star(h.tensor())?;
        if let Some(w) = lhs.difference(&rhs) {
            let mut idx = vec![i];
            idx.extend(w.indices);
            return Err(violation("Δ(a*) = Δ(a)*", Witness { indices: idx, ..w }));
        }
    }
    Ok(())
}

fn one() -> Scalar {
    Scalar::one()
}

fn dense(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.to_rows()
}

fn tensor_entries(images: Vec<Vec<Scalar>>) -> DeltaSpec {
    DeltaSpec::Tensor(images.into_iter().enumerate().collect())
}

/// Functions on `G`: `δ_sδ_t = [s=t]δ_s`, `Δ(δ_s) = Σ_{uv=s} δ_u⊗δ_v`,
/// coefficientwise conjugation as involution.
pub fn function_algebra(name: &str, g: &GroupTable) -> Spec {
    let m = g.order();
    let sc = (0..m).map(|s| (s, s, s, one())).collect();
    let mut images = vec![zero_vec(m * m); m];
    for u in 0..m {
        for v in 0..m {
            images[g.mul(u, v)][u * m + v] = one();
        }
    }
    Spec {
        name: name.to_string(),
        dim: m,
        sc,
        delta: tensor_entries(images),
        star: Some(dense(&Matrix::identity(m))),
        counit: None,
        antipode: None,
    }
}

/// The group algebra: `λ_sλ_t = λ_{st}`, `Δ(λ_s) = λ_s⊗λ_s`,
/// `λ_s* = λ_{s⁻¹}`.
pub fn group_algebra(name: &str, g: &GroupTable) -> Spec {
    let m = g.order();
    let mut sc = Vec::new();
    for s in 0..m {
        for t in 0..m {
            sc.push((s, t, g.mul(s, t), one()));
        }
    }
    let images = (0..m)
        .map(|s| kron_vec(&basis_vec(m, s), &basis_vec(m, s)))
        .collect();
    let inv: Vec<usize> = (0..m).map(|s| g.inverse(s)).collect();
    Spec {
        name: name.to_string(),
        dim: m,
        sc,
        delta: tensor_entries(images),
        star: Some(dense(&Matrix::permutation(&inv))),
        counit: None,
        antipode: None,
    }
}

/// The four-dimensional Hopf algebra on `1, g, x, gx` with `g² = 1`,
/// `x² = 0`, `xg = −gx`, `Δ(g) = g⊗g`, `Δ(x) = x⊗1 + g⊗x`; involution
/// fixing `g` and `x`.
pub fn sweedler() -> Spec {
    let (e, g, x, gx) = (0, 1, 2, 3);
    let neg = -Scalar::one();
    let mut sc = Vec::new();
    for b in 0..4 {
        sc.push((e, b, b, one()));
    }
    for a in 1..4 {
        sc.push((a, e, a, one()));
    }
    sc.extend([
        (g, g, e, one()),
        (g, x, gx, one()),
        (g, gx, x, one()),
        (x, g, gx, neg.clone()),
        (gx, g, x, neg.clone()),
    ]);
    let t = |a: usize, b: usize| kron_vec(&basis_vec(4, a), &basis_vec(4, b));
    let sum = |u: Vec<Scalar>, v: Vec<Scalar>| -> Vec<Scalar> {
        u.iter().zip(&v).map(|(p, q)| p + q).collect()
    };
    let images = vec![t(e, e), t(g, g), sum(t(x, e), t(g, x)), sum(t(gx, g), t(e, gx))];
    let mut star = Matrix::identity(4);
    star[(gx, gx)] = neg;
    Spec {
        name: "sweedler".into(),
        dim: 4,
        sc,
        delta: tensor_entries(images),
        star: Some(dense(&star)),
        counit: None,
        antipode: None,
    }
}

/// The `k×k` matrices with matrix units `E_ij` at index `i·k + j` and the
/// conjugate transpose as involution.
pub fn matrix_algebra(k: usize) -> Algebra {
    let mut t = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                t.push((i * k + j, j * k + l, i * k + l, one()));
            }
        }
    }
    let perm: Vec<usize> = (0..k * k).map(|idx| (idx % k) * k + idx / k).collect();
    Algebra::from_structure_constants(k * k, t)
        .expect("valid")
        .with_star(Matrix::permutation(&perm))
        .expect("valid")
}

/// The standard models used by the suites.
pub fn standard_models() -> Vec<Spec> {
    let groups = [
        ("c2", GroupTable::cyclic(2)),
        ("c4", GroupTable::cyclic(4)),
        ("s3", GroupTable::symmetric3()),
    ];
    let mut out = Vec::new();
    for (name, g) in &groups {
        out.push(function_algebra(&format!("fun_{name}"), g));
        out.push(group_algebra(&format!("grp_{name}"), g));
    }
    out.push(sweedler());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_MAX_DIM;

    #[test]
    fn corep_file_round_trip() {
        let b = matrix_algebra(2);
        let v = Multiplier::unit(8);
        let f = CorepSpec::new(&b, &v);
        let back = CorepSpec::from_json(&f.to_json()).unwrap();
        let (b2, v2) = back.load(2, 64).unwrap();
        assert_eq!(b2.triples(), b.triples());
        assert_eq!(v2, v);
        assert!(matches!(back.load(3, 64), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn group_tables() {
        let s3 = GroupTable::symmetric3();
        assert_eq!(s3.identity(), 0);
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
        assert!(GroupTable::new(vec![vec![0, 0], vec![0, 1]]).is_err());
        assert_eq!(GroupTable::trivial().order(), 1);
    }

    #[test]
    fn round_trip_is_byte_identical() {
        for spec in standard_models() {
            let text = spec.to_json();
            let back = Spec::from_json(&text).unwrap();
            assert_eq!(back, spec);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn broken_associativity_is_named() {
        let mut spec = function_algebra("f", &GroupTable::cyclic(2));
        spec.sc.push((0, 1, 1, one()));
        match spec.load(DEFAULT_MAX_DIM) {
            Err(Error::AxiomViolation { witness, .. }) => assert_eq!(witness.indices.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_star_gives_plain_algebra() {
        let mut spec = group_algebra("g", &GroupTable::cyclic(2));
        spec.star = None;
        let json = spec.to_json();
        assert!(!json.contains("star"));
        let h = Spec::from_json(&json).unwrap().load(DEFAULT_MAX_DIM).unwrap();
        assert!(h.algebra().star().is_none());
    }

    #[test]
    fn sweedler_derivations() {
        let h = sweedler().load(DEFAULT_MAX_DIM).unwrap();
        let s = |x: i64| Scalar::from_int(x);
        assert_eq!(h.counit(), &[s(1), s(1), s(0), s(0)]);
        // S(x) = −gx, S(g) = g
        assert_eq!(h.antipode().column(2), vec![s(0), s(0), s(0), s(-1)]);
        assert_eq!(h.antipode().column(1), basis_vec(4, 1));
        let s2 = h.antipode() * h.antipode();
        assert_eq!(s2.column(2), vec![s(0), s(0), s(-1), s(0)]);
        assert!(h.axiom_report().all_passed());
    }

    #[test]
    fn cross_check_detects_wrong_counit() {
        let mut spec = sweedler();
        spec.counit = Some(vec![one(), one(), one(), Scalar::zero()]);
        assert!(matches!(spec.load(DEFAULT_MAX_DIM), Err(Error::AxiomViolation { .. })));
        spec.counit = Some(vec![one(), one(), Scalar::zero(), Scalar::zero()]);
        assert!(spec.load(DEFAULT_MAX_DIM).is_ok());
    }

    #[test]
    fn pair_format_agrees_with_tensor_format() {
        let spec = group_algebra("g", &GroupTable::cyclic(2));
        let h = spec.load(DEFAULT_MAX_DIM).unwrap();
        let entries = (0..2)
            .map(|i| PairEntry {
                basis: i,
                left: h.delta().image(i).left().to_rows(),
                right: h.delta().image(i).right().to_rows(),
            })
            .collect();
        let mut pair = spec.clone();
        pair.delta = DeltaSpec::Pair(entries);
        let h2 = Spec::from_json(&pair.to_json()).unwrap().load(DEFAULT_MAX_DIM).unwrap();
        assert_eq!(h2.antipode(), h.antipode());
        assert_eq!(h2.counit(), h.counit());
    }
}
