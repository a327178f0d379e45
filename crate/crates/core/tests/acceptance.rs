//! End-to-end acceptance over the standard models. Every comparison is
//! exact. Each test prints one PASS/FAIL line; run with `--nocapture` to
//! see them.

use std::sync::{Arc, OnceLock};
use std::time::Instant;

use aqg::algebra::{Multiplier, DEFAULT_MAX_DIM};
use aqg::corep::{
    build_universal, check_round_trip, corep_from_hom, group_likes, push_forward, universal_report,
    Corepresentation, DualHomomorphism, SliceSpace,
};
use aqg::duality::{bidual_report, proportional, Dual};
use aqg::haar::{solve_left_haar, QuantumGroup};
use aqg::models::{function_algebra, group_algebra, standard_models, DeltaSpec, GroupTable, Spec};
use aqg::report::Report;
use aqg::{suite, Matrix, Scalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Model {
    spec: Spec,
    dual: Arc<Dual>,
    bidual: Arc<Dual>,
    universal: Corepresentation,
}

impl Model {
    fn q(&self) -> &Arc<QuantumGroup> {
        self.dual.base()
    }

    fn is_classical(&self) -> bool {
        self.spec.name.starts_with("fun_") || self.spec.name.starts_with("grp_")
    }
}

fn models() -> &'static [Model] {
    static MODELS: OnceLock<Vec<Model>> = OnceLock::new();
    MODELS.get_or_init(|| {
        standard_models()
            .into_iter()
            .map(|spec| {
                let h = spec.load(DEFAULT_MAX_DIM).unwrap();
                let q = Arc::new(QuantumGroup::new(h).unwrap());
                let dual = Arc::new(Dual::new(q).unwrap());
                let bidual = Arc::new(Dual::new(dual.quantum_group().clone()).unwrap());
                let universal = build_universal(&dual).unwrap();
                Model { spec, dual, bidual, universal }
            })
            .collect()
    })
}

/// Collects failure descriptions and prints the verdict line.
struct Criterion {
    number: u32,
    title: &'static str,
    failures: Vec<String>,
    start: Instant,
}

impl Criterion {
    fn new(number: u32, title: &'static str) -> Self {
        let _ = models();
        Criterion { number, title, failures: Vec::new(), start: Instant::now() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    /// Requires the listed checks (or all, if `ids` is empty) to be present
    /// and passing.
    fn checks(&mut self, model: &str, rep: &Report, ids: &[&str]) {
        if ids.is_empty() {
            for c in rep.failures() {
                self.failures.push(format!("{model}: {} failed: {:?}", c.id, c.witness));
            }
            return;
        }
        for id in ids {
            match rep.get(id) {
                None => self.failures.push(format!("{model}: {id} missing")),
                Some(c) if !c.passed => self.failures.push(format!("{model}: {id} failed: {:?}", c.witness)),
                Some(_) => {}
            }
        }
    }

    fn finish(self) {
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {} {verdict}: {} ({:.1}s)",
            self.number,
            self.title,
            self.start.elapsed().as_secs_f64()
        );
        for f in &self.failures {
            println!("    {f}");
        }
        assert!(self.failures.is_empty(), "criterion {} failed", self.number);
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_scalar(r: &mut ChaCha8Rng) -> Scalar {
    let re = (r.gen_range(-5..=5), r.gen_range(1..=3));
    let im = if r.gen_bool(0.3) { (r.gen_range(-3..=3), r.gen_range(1..=2)) } else { (0, 1) };
    Scalar::from_parts(re, im)
}

fn random_vec(r: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..n).map(|_| random_scalar(r)).collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

fn random_invertible(r: &mut ChaCha8Rng, k: usize) -> Matrix {
    loop {
        let m = Matrix::from_fn(k, k, |_, _| Scalar::from_int(r.gen_range(-3..=3)));
        if m.is_invertible() {
            return m;
        }
    }
}

fn basis(n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()
}

const AXIOM_IDS: &[&str] = &[
    "delta.homomorphism",
    "regularity.t1",
    "regularity.t2",
    "regularity.t3",
    "regularity.t4",
    "coassociativity",
    "counit.left",
    "counit.right",
    "counit.left-opposite",
    "counit.right-opposite",
    "counit.slices",
    "counit.multiplicative",
    "counit.nonzero",
    "antipode.left",
    "antipode.right",
    "antipode.anti-multiplicative",
    "antipode.bijective",
    "antipode.comultiplication",
];

const HAAR_IDS: &[&str] = &[
    "haar.left-invariance",
    "haar.right-invariance",
    "haar.uniqueness",
    "haar.phi-faithful",
    "haar.psi-faithful",
    "haar.first-slice-identity",
    "haar.second-slice-identity",
];

#[test]
fn axiom_suite() {
    let mut c = Criterion::new(1, "counit and antipode laws on every model");
    for m in models() {
        let rep = m.q().hopf().axiom_report();
        c.checks(&m.spec.name, &rep, AXIOM_IDS);
        c.checks(&m.spec.name, &rep, &[]);
    }
    c.finish();
}

#[test]
fn haar_suite() {
    let mut c = Criterion::new(2, "unique faithful left Haar functional");
    for m in models() {
        let q = m.q();
        let rep = q.modular_report();
        c.checks(&m.spec.name, &rep, HAAR_IDS);
        match solve_left_haar(q.hopf()) {
            Ok(phi) => c.expect(proportional(&phi, q.phi()).is_some(), || {
                format!("{}: re-solved Haar functional is not proportional", m.spec.name)
            }),
            Err(e) => c.expect(false, || format!("{}: {e}", m.spec.name)),
        }
    }
    c.finish();
}

#[test]
fn modular_suite() {
    let mut c = Criterion::new(3, "modular relations, nontrivial on the four-dimensional model");
    for m in models() {
        let q = m.q();
        c.checks(&m.spec.name, &q.modular_report(), &[]);
        if m.spec.name == "sweedler" {
            let s = q.hopf().antipode();
            c.expect(!q.delta_element().is_unit(), || "sweedler: modular element is 1".into());
            c.expect(!q.rho().is_identity(), || "sweedler: modular automorphism is trivial".into());
            c.expect(!(s * s).is_identity(), || "sweedler: S² is trivial".into());
        }
    }
    c.finish();
}

#[test]
fn duality_suite() {
    let mut c = Criterion::new(4, "dual product, coproduct, Haar functionals and lemmas");
    let ids = [
        "dual.product",
        "dual.comultiplication",
        "dual.counit",
        "dual.antipode",
        "dual.left-haar",
        "dual.right-haar",
        "dual.lemmas",
    ];
    for (k, m) in models().iter().enumerate() {
        let d = &m.dual;
        let rep = d.report();
        c.checks(&m.spec.name, &rep, &ids);
        c.checks(&m.spec.name, &rep, &[]);
        let n = d.dim();
        let mut r = rng(400 + k as u64);
        for t in 0..100 {
            let theta = random_vec(&mut r, n);
            if let Err(w) = d.check_lemmas(&theta) {
                c.expect(false, || format!("{} functional {t}: lemmas fail at {w}", m.spec.name));
            }
            if let Err(w) = d.check_modular_lemma(&theta) {
                c.expect(false, || format!("{} functional {t}: modular lemma fails at {w}", m.spec.name));
            }
        }
        for i in 0..n {
            if let Err(w) = d.check_modular_lemma(&d.generator(i)) {
                c.expect(false, || format!("{} generator {i}: modular lemma fails at {w}", m.spec.name));
            }
        }
    }
    c.finish();
}

#[test]
fn biduality() {
    let mut c = Criterion::new(5, "evaluation is an isomorphism onto the bidual; dual of functions is the group algebra");
    for m in models() {
        let rep = bidual_report(&m.dual, &m.bidual);
        c.checks(&m.spec.name, &rep, &["bidual.isomorphism"]);
        c.checks(&m.spec.name, &rep, &[]);
    }
    for (name, g) in [
        ("c2", GroupTable::cyclic(2)),
        ("c4", GroupTable::cyclic(4)),
        ("s3", GroupTable::symmetric3()),
    ] {
        let m = models().iter().find(|m| m.spec.name == format!("fun_{name}")).unwrap();
        let dual_hopf = m.dual.quantum_group().hopf();
        let grp = group_algebra("g", &g).load(DEFAULT_MAX_DIM).unwrap();
        c.expect(dual_hopf.algebra().triples() == grp.algebra().triples(), || {
            format!("fun_{name}: dual structure constants differ from the group algebra")
        });
        let same_delta = (0..grp.dim()).all(|i| dual_hopf.delta().image(i) == grp.delta().image(i));
        c.expect(same_delta, || format!("fun_{name}: dual coproduct differs from the group algebra"));
    }
    c.finish();
}

#[test]
fn universal_corepresentation() {
    let mut c = Criterion::new(6, "universal corepresentation identities");
    let ids = [
        "corep.comultiplication",
        "corep.counit",
        "corep.antipode",
        "universal.pi-identity",
        "flip.comultiplication",
    ];
    for m in models() {
        let u = &m.universal;
        c.expect(u.is_nondegenerate() && u.inverse().is_some(), || format!("{}: U not invertible", m.spec.name));
        let mut rep = universal_report(u, &m.dual);
        rep.extend(aqg::corep::flip_universal(&m.dual, &m.bidual));
        c.checks(&m.spec.name, &rep, &ids);
        c.checks(&m.spec.name, &rep, &[]);
        let n = m.dual.dim();
        for i in 0..n {
            let w = m.dual.generator(i);
            let expected = Multiplier::from_element(u.target(), &basis(n, i));
            c.expect(u.slice(&w) == expected, || format!("{}: slice by generator {i} is not that generator", m.spec.name));
        }
        c.expect(u.counit_slice() == Multiplier::unit(n), || format!("{}: counit slice is not 1", m.spec.name));
        match u.antipode_slice() {
            Ok(s) => c.expect(Some(&s) == u.inverse(), || format!("{}: antipode slice is not U⁻¹", m.spec.name)),
            Err(e) => c.expect(false, || format!("{}: {e}", m.spec.name)),
        }
    }
    c.finish();
}

/// `θ` into `M_k` built from `k` points, each a group-like or zero.
fn random_evaluation(r: &mut ChaCha8Rng, d: &Arc<Dual>, likes: &[Vec<Scalar>]) -> DualHomomorphism {
    let k = r.gen_range(1..=2);
    let n = d.dim();
    let points: Vec<Vec<Scalar>> = (0..k)
        .map(|_| {
            if r.gen_bool(0.25) {
                vec![Scalar::zero(); n]
            } else {
                likes.choose(r).unwrap().clone()
            }
        })
        .collect();
    let p = random_invertible(r, k);
    DualHomomorphism::evaluations(d.clone(), &points, &p).unwrap()
}

#[test]
fn bijection() {
    let mut c = Criterion::new(7, "homomorphism and corepresentation round trips; three-way non-degeneracy");
    for (k, m) in models().iter().enumerate() {
        let name = &m.spec.name;
        let d = &m.dual;
        let u = &m.universal;
        let likes = group_likes(d.base().hopf(), 8);
        c.expect(likes.len() >= 2, || format!("{name}: fewer than two group-likes"));
        let pair = vec![likes[0].clone(), likes[1].clone()];
        let p = Matrix::from_rows(vec![
            vec![Scalar::from_int(2), Scalar::from_int(1)],
            vec![Scalar::from_int(1), Scalar::from_int(1)],
        ])
        .unwrap();
        let thetas = [
            ("dual", DualHomomorphism::identity(d.clone())),
            ("scalars", DualHomomorphism::counit(d.clone())),
            ("2x2 matrices", DualHomomorphism::evaluations(d.clone(), &pair, &p)),
        ];
        for (target, theta) in thetas {
            let theta = match theta {
                Ok(t) => t,
                Err(e) => {
                    c.expect(false, || format!("{name} into {target}: {e}"));
                    continue;
                }
            };
            c.expect(theta.is_nondegenerate(), || format!("{name} into {target}: θ degenerate"));
            match corep_from_hom(&theta, u) {
                Ok(v) => {
                    c.checks(&format!("{name} into {target}"), &v.report(d), &[]);
                    let pi = v.pi(d).unwrap();
                    c.expect(pi.same_as(&theta).is_ok(), || format!("{name} into {target}: π_V ≠ θ"));
                    c.expect(check_round_trip(&v, u, d).is_ok(), || format!("{name} into {target}: (ι⊙π_V)(U) ≠ V"));
                }
                Err(e) => c.expect(false, || format!("{name} into {target}: {e}")),
            }
        }

        let mut r = rng(700 + k as u64);
        let (mut degenerate, mut invertible) = (0, 0);
        for t in 0..20 {
            let theta = random_evaluation(&mut r, d, &likes);
            let v = push_forward(&theta, u).unwrap();
            c.expect(v.is_corep(), || format!("{name} V{t}: not a corepresentation"));
            let nd = v.nondegeneracy(d).unwrap();
            c.expect(nd.agree(), || format!("{name} V{t}: conditions disagree: {nd:?}"));
            if let Some(s) = nd.sandwiches {
                c.expect(s.iter().all(|x| *x), || format!("{name} V{t}: sandwich spans {s:?}"));
            }
            if nd.invertible {
                invertible += 1;
                c.expect(check_round_trip(&v, u, d).is_ok(), || format!("{name} V{t}: round trip fails"));
            } else {
                degenerate += 1;
            }
        }
        c.expect(degenerate > 0 && invertible > 0, || {
            format!("{name}: random sample not mixed ({invertible} invertible, {degenerate} degenerate)")
        });

        let space = SliceSpace::new(d.base().hopf().algebra().clone());
        for t in 0..5 {
            let w = random_vec(&mut r, d.dim());
            match space.decompose(&w) {
                Some(terms) => {
                    let direct = u.slice(&w);
                    let via = u.slice_decomposed(&terms);
                    c.expect(direct.left() == &via, || format!("{name} functional {t}: decomposed slice differs"));
                }
                None => c.expect(false, || format!("{name} functional {t}: not decomposable")),
            }
        }
    }
    c.finish();
}

#[test]
fn star_suite() {
    let mut c = Criterion::new(8, "involution on the dual, unitary U, unitarity equivalence in both truth values");
    for m in models().iter().filter(|m| m.is_classical()) {
        let name = &m.spec.name;
        let d = &m.dual;
        let u = &m.universal;
        c.checks(name, &d.report(), &["dual.star"]);
        let rep = universal_report(u, d);
        c.checks(name, &rep, &["universal.unitary", "unitarity.equivalence", "unitarity.slice-star"]);
        let un = u.unitarity(d).unwrap();
        c.expect(un.unitary && un.star_preserving, || format!("{name}: U gives {un:?}"));

        let likes = group_likes(d.base().hopf(), 8);
        let pair = vec![likes[0].clone(), likes[1].clone()];
        let s = Scalar::from_int;
        for (label, p, expect_unitary) in [
            ("identity conjugation", Matrix::identity(2), true),
            ("shear conjugation", Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(0), s(1)]]).unwrap(), false),
        ] {
            let theta = DualHomomorphism::evaluations(d.clone(), &pair, &p).unwrap();
            let v = corep_from_hom(&theta, u).unwrap();
            let un = v.unitarity(d).unwrap();
            c.expect(un.unitary == expect_unitary, || format!("{name} {label}: unitary = {}", un.unitary));
            c.checks(&format!("{name} {label}"), &un.report(), &[]);
        }
    }
    c.finish();
}

fn bump(x: &Scalar, r: &mut ChaCha8Rng) -> Scalar {
    let mut k = 0;
    while k == 0 {
        k = r.gen_range(-4..=4);
    }
    x + &Scalar::from_int(k)
}

/// Changes one structure constant or one coproduct coefficient.
fn corrupt(spec: &Spec, r: &mut ChaCha8Rng) -> (Spec, String) {
    let mut s = spec.clone();
    let n = s.dim;
    if r.gen_bool(0.5) {
        let (i, j, k) = (r.gen_range(0..n), r.gen_range(0..n), r.gen_range(0..n));
        let value = match s.sc.iter_mut().find(|t| (t.0, t.1, t.2) == (i, j, k)) {
            Some(t) => {
                t.3 = bump(&t.3, r);
                t.3.clone()
            }
            None => {
                let v = bump(&Scalar::zero(), r);
                s.sc.push((i, j, k, v.clone()));
                v
            }
        };
        (s, format!("structure constant ({i},{j},{k}) set to {value}"))
    } else {
        let DeltaSpec::Tensor(ref mut images) = s.delta else {
            panic!("standard models store the coproduct as tensors");
        };
        let e = r.gen_range(0..images.len());
        let idx = r.gen_range(0..n * n);
        images[e].1[idx] = bump(&images[e].1[idx], r);
        let what = format!("coproduct of e{} at {idx} set to {}", images[e].0, images[e].1[idx]);
        (s, what)
    }
}

#[test]
fn falsification_sensitivity() {
    let mut c = Criterion::new(9, "single-coefficient corruptions are caught with witnesses");
    for (k, m) in models().iter().enumerate() {
        let mut r = rng(900 + k as u64);
        for t in 0..20 {
            let (bad, what) = corrupt(&m.spec, &mut r);
            match suite::run(&bad, DEFAULT_MAX_DIM) {
                Ok(p) => {
                    let fails: Vec<_> = p.report.failures().collect();
                    c.expect(!fails.is_empty(), || format!("{} #{t} ({what}): no check failed", m.spec.name));
                    c.expect(fails.iter().all(|f| f.witness.is_some()), || {
                        format!("{} #{t} ({what}): failure without witness", m.spec.name)
                    });
                }
                Err(e) => c.expect(false, || format!("{} #{t} ({what}): rejected as input: {e}", m.spec.name)),
            }
        }
    }
    c.finish();
}

#[test]
fn unmodified_models_pass_the_full_pipeline() {
    let mut c = Criterion::new(0, "every standard model passes every suite unmodified");
    for spec in standard_models() {
        let p = suite::run(&spec, DEFAULT_MAX_DIM).unwrap();
        c.checks(&spec.name, &p.report, &[]);
    }
    let extra = function_algebra("fun_trivial", &GroupTable::trivial());
    c.checks("fun_trivial", &suite::run(&extra, DEFAULT_MAX_DIM).unwrap().report, &[]);
    c.finish();
}
