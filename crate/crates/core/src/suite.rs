//! The full verification pipeline over one spec: axioms, Haar and modular
//! data, dual, bidual, universal corepresentation and the flip results.
//!
//! A stage whose construction fails contributes one failed check carrying
//! the error's witness, and the later stages are skipped.

use std::sync::Arc;

use crate::corep::{build_universal, corep_from_hom, flip_universal, universal_report, DualHomomorphism};
use crate::duality::{bidual_report, Dual};
use crate::error::{Error, Result, Witness};
use crate::haar::QuantumGroup;
use crate::models::Spec;
use crate::report::{Check, Report};

/// The witness carried by an error, or one describing the error itself.
pub fn error_witness(e: &Error) -> Witness {
    match e {
        Error::AxiomViolation { axiom, witness } => Witness {
            lhs: format!("{axiom}: {}", witness.lhs),
            ..witness.clone()
        },
        Error::DualStructureMismatch { what, witness }
        | Error::BidualityFailure { what, witness }
        | Error::UniversalConstructionFailure { what, witness } => Witness {
            lhs: format!("{what}: {}", witness.lhs),
            ..witness.clone()
        },
        Error::ConvolutionMismatch(w)
        | Error::DualComultMismatch(w)
        | Error::ProductMismatch(w)
        | Error::NotACorep(w) => w.clone(),
        other => Witness::new(&[], other, "construction succeeds"),
    }
}

fn stage<T>(rep: &mut Report, id: &str, anchor: &str, r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => {
            rep.push(Check::pass(id, anchor));
            Ok(Some(v))
        }
        Err(e) if e.is_input_error() => Err(e),
        Err(e) => {
            rep.push(Check::fail(id, anchor, error_witness(&e)));
            Ok(None)
        }
    }
}

/// Everything built along the way, for callers that want to print it.
#[derive(Clone, Debug, Default)]
pub struct Pipeline {
    pub quantum_group: Option<Arc<QuantumGroup>>,
    pub dual: Option<Arc<Dual>>,
    pub report: Report,
}

/// Runs every suite on the spec. Only malformed input is an `Err`; any
/// falsified identity shows up as a failed check.
pub fn run(spec: &Spec, max_dim: usize) -> Result<Pipeline> {
    let mut out = Pipeline::default();
    let rep = &mut out.report;
    let Some(h) = stage(rep, "construct.hopf", "regular multiplier Hopf algebra from the spec", spec.load(max_dim))? else {
        return Ok(out);
    };
    rep.extend(h.axiom_report());
    let Some(q) = stage(rep, "construct.haar", "left invariant functional, faithful and unique", QuantumGroup::new(h))? else {
        return Ok(out);
    };
    let q = Arc::new(q);
    out.quantum_group = Some(q.clone());
    rep.extend(q.modular_report());

    let Some(d) = stage(rep, "construct.dual", "(Â, Δ̂) is an algebraic quantum group", Dual::new(q))? else {
        return Ok(out);
    };
    let d = Arc::new(d);
    out.dual = Some(d.clone());
    rep.extend(d.report());
    let Some(bd) = stage(
        rep,
        "construct.bidual",
        "(Â̂, Δ̂̂) is an algebraic quantum group",
        Dual::new(d.quantum_group().clone()),
    )?
    else {
        return Ok(out);
    };
    let bd = Arc::new(bd);
    rep.extend(bidual_report(&d, &bd));

    let Some(u) = stage(rep, "construct.universal", "U ∈ M(A⊙Â) is an invertible corepresentation", build_universal(&d))? else {
        return Ok(out);
    };
    rep.extend(universal_report(&u, &d));
    rep.extend(flip_universal(&d, &bd));

    let bijection = |theta: Result<DualHomomorphism>| -> std::result::Result<(), Witness> {
        let theta = theta.map_err(|e| error_witness(&e))?;
        corep_from_hom(&theta, &u).map(|_| ()).map_err(|e| error_witness(&e))
    };
    rep.push(Check::from_result(
        "bijection.identity",
        "π_{(ι⊙θ)(U)} = θ for θ = ι",
        bijection(DualHomomorphism::identity(d.clone())),
    ));
    rep.push(Check::from_result(
        "bijection.counit",
        "π_{(ι⊙θ)(U)} = θ for θ = ε̂",
        bijection(DualHomomorphism::counit(d.clone())),
    ));
    Ok(out)
}
