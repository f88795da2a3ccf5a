//! One function per subcommand.  Each returns a status and a payload;
//! errors propagate to the report writer.

use std::path::Path;

use gsa_core::constructions::{
    enumerate_classification, exchange_double_with_model, matrix_twisted_with_model, tensor_truncated_polynomial,
    truncated_free_radical, upper_triangular, ElementaryInvolutionSpec, InvolutionChoice, Modelled,
};
use gsa_core::identities::{
    check_trace_identities, fit_cayley_hamilton_with_cap, identity_space_dimension, is_exact, is_identity,
    kemer_witness, multidegree_variables, trace_test_polynomial, ExactnessVerdict, IdentityVerdict,
    TraceTestPolynomial,
};
use gsa_core::json::{self as js, cocycle_from_json, complete_degree_to_json, vector_to_json};
use gsa_core::linalg::Subspace;
use gsa_core::structure::{
    canonical_decomposition, gi_parameters, is_star_graded_simple, jacobson_radical, nilpotency_degree,
    parameters_from_radical, reduced_product_witness, verify_decomposition, DecompositionData, Elementary,
    ElementaryKind, SimplicityVerdict, VerifiedDecomposition,
};
use gsa_core::{Budget, Error, FiniteAbelianGroup, GradedStarAlgebra, Result, Sign, TwoCocycle, Violation};
use serde_json::{json, Value};

use crate::input::{load_algebra, load_decomposition, load_polynomial, load_polynomials, parse_elements, read_json, section};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Inconclusive,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Inconclusive => "inconclusive",
        }
    }

    fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Violation
        }
    }
}

pub type Outcome = (Status, Value);

pub struct Ctx {
    pub seed: u64,
    pub budget: Budget,
}

fn violations_json(v: &[Violation]) -> Value {
    Value::Array(v.iter().map(Violation::to_json).collect())
}

fn subspace_json(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": s.rows().iter().map(|r| vector_to_json(r)).collect::<Vec<_>>() })
}

fn elementary_json(e: &Elementary) -> Value {
    let source = match &e.kind {
        ElementaryKind::D { component, index } => json!({ "set": "D", "component": component, "index": index }),
        ElementaryKind::U { pair, index } => json!({ "set": "U", "pair": [pair.0, pair.1], "index": index }),
    };
    json!({ "source": source, "cd": complete_degree_to_json(&e.cd), "vector": vector_to_json(&e.vector) })
}

/// Runs `f` on a checked decomposition, or reports why the check failed.
fn with_decomposition(
    ctx: &Ctx,
    algebra: &Path,
    decomposition: &Path,
    f: impl FnOnce(&VerifiedDecomposition) -> Result<Outcome>,
) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    match load_decomposition(&a, decomposition, ctx.seed, &ctx.budget)? {
        Ok(dec) => f(&dec),
        Err(v) => Ok((Status::Violation, json!({ "decomposition_violations": violations_json(&v) }))),
    }
}

pub fn verify(algebra: &Path) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let v = a.verify_axioms();
    Ok((
        Status::from_ok(v.is_empty()),
        json!({
            "dim": a.dim(),
            "group": js::group_to_json(a.group()),
            "conductor": a.conductor(),
            "violations": violations_json(&v),
        }),
    ))
}

pub fn radical(algebra: &Path) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let j = jacobson_radical(&a);
    let nd = nilpotency_degree(&a, &j)?;
    let mut payload = subspace_json(&j);
    payload["nilpotency_degree"] = json!(nd);
    payload["semisimple"] = json!(j.is_zero());
    Ok((Status::Ok, payload))
}

fn simplicity_json(v: &SimplicityVerdict) -> (Status, Value) {
    match v {
        SimplicityVerdict::Simple { burnside_dim } => {
            (Status::Ok, json!({ "verdict": "simple", "burnside_dim": burnside_dim }))
        }
        SimplicityVerdict::NotSimple { witness } => {
            (Status::Violation, json!({ "verdict": "not_simple", "witness": subspace_json(witness) }))
        }
        SimplicityVerdict::Inconclusive { burnside_dim } => {
            (Status::Inconclusive, json!({ "verdict": "inconclusive", "burnside_dim": burnside_dim }))
        }
    }
}

pub fn simple(ctx: &Ctx, algebra: &Path) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    Ok(simplicity_json(&is_star_graded_simple(&a, ctx.seed, &ctx.budget)?))
}

pub fn decomp_verify(ctx: &Ctx, algebra: &Path, decomposition: &Path) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let data = DecompositionData::from_json(section(&read_json(decomposition)?, "decomposition"), &a)?;
    let check = verify_decomposition(&a, &data, ctx.seed, &ctx.budget)?;
    let mut payload = json!({ "violations": violations_json(&check.violations) });
    if let Some(d) = check.decomposition.as_ref().filter(|_| check.is_ok()) {
        payload["p"] = json!(d.p());
        payload["t"] = json!(d.t());
        payload["nd"] = json!(d.nd());
    }
    Ok((Status::from_ok(check.is_ok()), payload))
}

pub fn params(ctx: &Ctx, algebra: &Path, decomposition: &Path) -> Result<Outcome> {
    with_decomposition(ctx, algebra, decomposition, |dec| {
        let gi = gi_parameters(dec);
        let direct = parameters_from_radical(dec.algebra())?;
        let witness = reduced_product_witness(dec, &ctx.budget)?;
        Ok((
            Status::from_ok(gi == direct),
            json!({
                "parameters": gi.to_json(),
                "from_radical": direct.to_json(),
                "reduced_witness": witness.map(|w| w.to_json()),
            }),
        ))
    })
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum Family {
    /// M_k(F^ζ[H]) with an elementary grading.
    Matrix,
    /// The exchange double of the matrix algebra.
    Exchange,
    /// Upper triangular k × k matrices over Z/2.
    UpperTriangular,
    /// The matrix algebra tensored with F[t]/(t^s).
    Truncated,
}

#[derive(Clone, Debug, clap::Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub family: Family,
    /// Orders of the cyclic factors of G.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub group: Vec<u32>,
    /// Matrix size.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Elements of H, e.g. "0;1" (components separated by ',').
    #[arg(long)]
    pub subgroup: Option<String>,
    /// Grading tuple θ_1, …, θ_k.
    #[arg(long)]
    pub tuple: Option<String>,
    /// Cocycle document; overrides --subgroup.
    #[arg(long)]
    pub cocycle: Option<std::path::PathBuf>,
    /// transpose, symplectic, reflection, none, or a path to an explicit spec.
    #[arg(long, default_value = "transpose")]
    pub involution: String,
    /// Sign α of the transpose or symplectic family.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub alpha: i64,
    /// Truncation degree for the truncated family.
    #[arg(long, default_value_t = 2)]
    pub s: usize,
    /// Whether t is symmetric (+) or skew (-).
    #[arg(long, default_value = "+")]
    pub t_sign: String,
}

fn matrix_from_args(args: &ConstructArgs, force_none: bool) -> Result<Modelled> {
    let g = FiniteAbelianGroup::new(args.group.clone())?;
    let m = g.conductor();
    let z = match &args.cocycle {
        Some(p) => cocycle_from_json(&read_json(p)?, &g, m)?,
        None => {
            let h = match &args.subgroup {
                Some(s) => parse_elements(s, &g)?,
                None => vec![g.identity()],
            };
            TwoCocycle::trivial(h, m)
        }
    };
    let tuple = match &args.tuple {
        Some(s) => parse_elements(s, &g)?,
        None => vec![g.identity(); args.k],
    };
    if tuple.len() != args.k {
        return Err(Error::Parse(format!("tuple has {} entries, expected k = {}", tuple.len(), args.k)));
    }
    let inv = if force_none {
        InvolutionChoice::None
    } else {
        match args.involution.as_str() {
            "transpose" => InvolutionChoice::TransposeFamily(args.alpha),
            "symplectic" => InvolutionChoice::SymplecticFamily(args.alpha),
            "reflection" => InvolutionChoice::Elementary(ElementaryInvolutionSpec::reflection(args.k, &z.subgroup, m)),
            "none" => InvolutionChoice::None,
            path => InvolutionChoice::Elementary(ElementaryInvolutionSpec::from_json(
                section(&read_json(Path::new(path))?, "involution"),
                &g,
                m,
            )?),
        }
    };
    matrix_twisted_with_model(args.k, &g, &z, &tuple, &inv)
}

pub fn construct(args: &ConstructArgs) -> Result<Outcome> {
    let built = match args.family {
        Family::Matrix => matrix_from_args(args, false)?,
        Family::Exchange => exchange_double_with_model(&matrix_from_args(args, true)?)?,
        Family::UpperTriangular => upper_triangular(args.k)?,
        Family::Truncated => {
            let sign = match args.t_sign.as_str() {
                "+" | "plus" => Sign::Plus,
                "-" | "minus" => Sign::Minus,
                other => return Err(Error::Parse(format!("t sign must be + or -, got {other:?}"))),
            };
            tensor_truncated_polynomial(&matrix_from_args(args, false)?, args.s, sign)?
        }
    };
    let v = built.algebra.verify_axioms();
    let decomposition = if v.is_empty() { canonical_decomposition(&built).ok().map(|d| d.to_json()) } else { None };
    Ok((
        Status::from_ok(v.is_empty()),
        json!({
            "algebra": built.algebra.to_json(),
            "decomposition": decomposition,
            "violations": violations_json(&v),
        }),
    ))
}

pub fn classify(ctx: &Ctx, q: u32, kmax: usize, full: bool) -> Result<Outcome> {
    let list = enumerate_classification(q, kmax)?;
    let mut status = Status::Ok;
    let mut entries = Vec::new();
    for c in &list {
        let a = &c.built.algebra;
        let axioms = a.verify_axioms();
        let radical = jacobson_radical(a).dim();
        let (s, verdict) = simplicity_json(&is_star_graded_simple(a, ctx.seed, &ctx.budget)?);
        let s = if axioms.is_empty() && radical == 0 { s } else { Status::Violation };
        status = match (status, s) {
            (Status::Violation, _) | (_, Status::Violation) => Status::Violation,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Ok,
        };
        let mut e = json!({
            "family": c.family,
            "tag": c.tag,
            "tuple": c.tuple,
            "dim": a.dim(),
            "axiom_violations": violations_json(&axioms),
            "radical_dim": radical,
            "simplicity": verdict,
        });
        if full {
            e["algebra"] = a.to_json();
        }
        entries.push(e);
    }
    Ok((status, json!({ "q": q, "kmax": kmax, "count": entries.len(), "algebras": entries })))
}

fn identity_json(v: &IdentityVerdict) -> Outcome {
    match v {
        IdentityVerdict::Yes => (Status::Ok, json!({ "identity": true })),
        IdentityVerdict::No { witness, value } => (
            Status::Violation,
            json!({
                "identity": false,
                "witness": witness.iter().map(|w| vector_to_json(w)).collect::<Vec<_>>(),
                "value": vector_to_json(value),
            }),
        ),
    }
}

pub fn check_id(ctx: &Ctx, algebra: &Path, polynomial: &Path) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let f = load_polynomial(polynomial, &a, &ctx.budget)?;
    Ok(identity_json(&is_identity(&a, &f, &ctx.budget)?))
}

pub fn iddim(ctx: &Ctx, algebra: &Path, counts: &[usize]) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let vars = multidegree_variables(a.group(), counts)?;
    let space = identity_space_dimension(&a, &vars, &ctx.budget)?;
    Ok((
        Status::Ok,
        json!({
            "multidegree": counts,
            "variables": vars.iter().map(|v| v.name()).collect::<Vec<_>>(),
            "identities": space.identities,
            "quotient": space.quotient,
            "kernel": space.kernel.iter().map(|f| f.to_json()).collect::<Vec<_>>(),
        }),
    ))
}

pub fn exact(ctx: &Ctx, algebra: &Path, decomposition: &Path, polynomial: &Path) -> Result<Outcome> {
    with_decomposition(ctx, algebra, decomposition, |dec| {
        let f = load_polynomial(polynomial, dec.algebra(), &ctx.budget)?;
        Ok(match is_exact(dec, &f, &ctx.budget)? {
            ExactnessVerdict::Exact => (Status::Ok, json!({ "exact": true })),
            ExactnessVerdict::NotExact { evaluation, value, thin, incomplete } => (
                Status::Violation,
                json!({
                    "exact": false,
                    "evaluation": evaluation.iter().map(elementary_json).collect::<Vec<_>>(),
                    "value": vector_to_json(&value),
                    "thin": thin,
                    "incomplete": incomplete,
                }),
            ),
        })
    })
}

pub fn forms_check(ctx: &Ctx, algebra: &Path, decomposition: &Path, polynomial: Option<&Path>) -> Result<Outcome> {
    with_decomposition(ctx, algebra, decomposition, |dec| {
        let poly = match polynomial {
            Some(p) => TraceTestPolynomial::from_json(section(&read_json(p)?, "polynomial"), dec.algebra())?,
            None => trace_test_polynomial(dec)?,
        };
        let report = check_trace_identities(dec, &poly, &ctx.budget)?;
        Ok((Status::from_ok(report.holds()), json!({ "polynomial": poly.to_json(), "report": report.to_json() })))
    })
}

pub fn ch_fit(ctx: &Ctx, algebra: &Path, decomposition: &Path, max_t: usize) -> Result<Outcome> {
    with_decomposition(ctx, algebra, decomposition, |dec| match fit_cayley_hamilton_with_cap(dec, max_t, &ctx.budget) {
        Ok(fit) => Ok((Status::from_ok(fit.verified), fit.to_json())),
        Err(Error::NoSolution(why)) => Ok((Status::Violation, json!({ "found": false, "reason": why }))),
        Err(e) => Err(e),
    })
}

pub fn witness(ctx: &Ctx, algebra: &Path, decomposition: &Path, mu: usize) -> Result<Outcome> {
    with_decomposition(ctx, algebra, decomposition, |dec| match kemer_witness(dec, mu, &ctx.budget) {
        Ok(w) => {
            let mut payload = w.to_json();
            payload["beta_lower_bound"] = json!(gi_parameters(dec).dims_gi);
            Ok((Status::Ok, payload))
        }
        Err(Error::NoReducedWitness) => {
            Ok((Status::Violation, json!({ "found": false, "reason": Error::NoReducedWitness.to_string() })))
        }
        Err(e) => Err(e),
    })
}

pub fn freerad(ctx: &Ctx, algebra: &Path, q: usize, s: usize, identities: Option<&Path>) -> Result<Outcome> {
    let b: GradedStarAlgebra = load_algebra(algebra)?;
    let ids = match identities {
        Some(p) => load_polynomials(p, &b, &ctx.budget)?,
        None => Vec::new(),
    };
    let a = truncated_free_radical(&b, q, s, &ids, &ctx.budget)?;
    Ok((Status::Ok, json!({ "dim": a.dim(), "identities": ids.len(), "algebra": a.to_json() })))
}
