//! One function per subcommand, each producing a [`Report`].

use std::ops::RangeInclusive;
use std::path::Path;

use ainf_core::bar::ComplexWindow;
use ainf_core::cochain::{random_cochain, Cochain};
use ainf_core::cyclic::traces::{closed_graded_traces, is_closed_trace};
use ainf_core::cyclic::CyclicComplexes;
use ainf_core::deformation::{
    format_witness, is_closed, obstruction_class, FormalDeformation, Trace,
};
use ainf_core::error::{Error, Result};
use ainf_core::gerstenhaber::{bracket as gbracket, deformation_differential, DeformationComplex};
use ainf_core::scalar::{fmt_q, sign};
use ainf_core::specfile::{parse_spec, read_spec, AlgebraSpec};
use ainf_core::verify::{
    conjecture_check_one_connected, degree_one_contractible_ideal, describe_vector, is_derivation,
    quotient, verify_equivalence_invariance, verify_hp_of_h0, verify_lie_derivative,
    verify_nilpotent_quotient, verify_quasi_iso, verify_sbi, AInfinityIdeal, Derivation, Status,
    StrictMorphism,
};
use ainf_core::AInfinityAlgebra;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{status_word, Report, Row};
use crate::{Claim, Options};

fn window(o: &Options) -> Result<ComplexWindow> {
    ComplexWindow::new(o.max_weight, o.max_degree)
}

fn title(cmd: &str, path: &Path) -> String {
    format!("{cmd} {}", path.display())
}

fn degrees(o: &Options, default: RangeInclusive<i64>) -> RangeInclusive<i64> {
    o.degrees.clone().unwrap_or(default)
}

fn load(path: &Path, w: ComplexWindow) -> Result<AlgebraSpec> {
    let spec = parse_spec(path)?;
    w.check_algebra(&spec.algebra)?;
    Ok(spec)
}

pub fn validate(path: &Path, o: &Options) -> Result<Report> {
    let w = window(o)?;
    let mut r = Report::new(title("validate", path), w);
    let spec = match parse_spec(path) {
        Ok(spec) => spec,
        Err(Error::Invariant(msg)) => {
            r.row(Row::value("algebra", msg).with_status(Status::Fail));
            let (basis, violations) = read_spec(path)?.stasheff_violations()?;
            for v in violations {
                let value: Vec<String> = v
                    .value
                    .iter()
                    .map(|(e, c)| format!("{}*{}", fmt_q(c), basis.label(*e)))
                    .collect();
                r.evidence(
                    format!("Stasheff witness, arity {}", v.arity),
                    format!(
                        "(m∘m){} = {}",
                        basis.format_tensor(&v.input),
                        value.join(" + ")
                    ),
                );
            }
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    let a = &spec.algebra;
    r.row(Row::value(
        "dims",
        format!("{:?}", a.space().dims_from_zero()),
    ));
    r.row(Row::value(
        "unit",
        a.unit()
            .map_or("none".to_string(), |u| a.basis().label(u).to_string()),
    ));
    let arities: Vec<usize> = a.m().components().map(|(n, _)| n).collect();
    r.row(Row::value("structure maps", format!("arities {arities:?}")));
    r.row(Row::value("Stasheff identities", "hold"));
    if let Err(e) = w.check_algebra(a) {
        r.row(Row::value("window", e).with_status(Status::Fail));
    }
    if let Some(gens) = &spec.ideal {
        match AInfinityIdeal::new(a, gens) {
            Ok(i) => r.row(Row::value("ideal", format!("dimension {}", i.dim()))),
            Err(e) => r.row(Row::value("ideal", e).with_status(Status::Fail)),
        }
    }
    if let Some(t) = &spec.trace {
        let closed = is_closed_trace(a, t);
        r.row(
            Row::value("trace", if closed { "closed" } else { "not closed" })
                .with_status(Status::from_bool(closed)),
        );
    }
    if let Some(d) = &spec.derivation {
        let check = is_derivation(d, a);
        r.row(
            Row::value(
                "derivation",
                if check.holds {
                    "[m, D] = 0"
                } else {
                    "[m, D] ≠ 0"
                },
            )
            .with_status(Status::from_bool(check.holds)),
        );
        if let Some(wt) = check.witness {
            r.evidence("derivation witness", wt);
        }
    }
    if let Some(terms) = &spec.deformation {
        match FormalDeformation::new(a.clone(), terms.clone()) {
            Ok(def) => {
                r.row(Row::value(
                    "deformation",
                    format!("Maurer–Cartan through order {}", def.order()),
                ));
                if let Some(t) = &spec.trace {
                    let check = is_closed(&def, &Trace::new(a, t.clone())?);
                    r.row(
                        Row::value("deformation closed for trace", check.closed)
                            .with_status(Status::from_bool(check.closed)),
                    );
                    if let Some(f) = check.failure {
                        r.evidence("closedness witness", f);
                    }
                }
            }
            Err(e) => r.row(Row::value("deformation", e).with_status(Status::Fail)),
        }
    }
    Ok(r)
}

pub fn hh(path: &Path, o: &Options) -> Result<Report> {
    let w = window(o)?;
    let spec = load(path, w)?;
    let cx = CyclicComplexes::new(&spec.algebra, w)?;
    let mut r = Report::new(title("hh", path), w);
    for n in degrees(o, 0..=w.reliable_bound()) {
        r.row(Row::value(format!("HH{n}"), cx.hh_dim(n)?));
    }
    Ok(r)
}

pub fn hc(path: &Path, o: &Options) -> Result<Report> {
    let w = window(o)?;
    let spec = load(path, w)?;
    let cx = CyclicComplexes::new(&spec.algebra, w)?;
    let mut r = Report::new(title("hc", path), w);
    for n in degrees(o, 0..=w.reliable_bound()) {
        r.row(Row::value(format!("HC{n}"), cx.hc_dim(n)?));
    }
    Ok(r)
}

/// `k` counts the `S` steps needed to see the ladder settle: ranks constant
/// from step `stable_from` on, confirmed one step later.
pub fn hp(path: &Path, o: &Options) -> Result<Report> {
    let w = window(o)?;
    let spec = load(path, w)?;
    let cx = CyclicComplexes::new(&spec.algebra, w)?;
    let mut r = Report::new(title("hp", path), w);
    let ladders = [0, 1].map(|p| cx.hp_with_depth(p, o.stabilize));
    let mut parts = Vec::new();
    let mut steps = Vec::new();
    for ladder in ladders {
        let ladder = ladder?;
        let name = format!("HP{}", ladder.parity);
        match ladder.dim {
            Some(d) => {
                let k = ladder.stable_from.expect("settled ladders have a start") + 1;
                parts.push(format!("{name} = {d}"));
                steps.push(k);
                r.row(Row::value(&name, d));
                r.row(Row::value(format!("{name} stabilized at k"), k));
            }
            None => {
                parts.push(format!("{name} not stabilized"));
                r.row(Row::value(&name, "not stabilized").with_status(Status::Inconclusive));
            }
        }
        r.evidence(format!("{name} ladder"), &ladder);
    }
    let line = match steps.as_slice() {
        [a, b] if a == b => format!("{}, stabilized at k={a}", parts.join(", ")),
        _ => parts.join(", "),
    };
    r.summary(line);
    Ok(r)
}

pub fn traces(path: &Path, o: &Options) -> Result<Report> {
    let w = window(o)?;
    let spec = load(path, w)?;
    let a = &spec.algebra;
    let mut r = Report::new(title("traces", path), w);
    let basis = closed_graded_traces(a);
    let cx = CyclicComplexes::new(a, w)?;
    r.row(Row::value("closed graded traces", basis.len()));
    let hc0 = cx.hc_cohomology_dim(0)?;
    r.row(
        Row {
            expected: Some(basis.len().to_string()),
            ..Row::value("HC^0", hc0)
        }
        .with_status(Status::from_bool(hc0 == basis.len())),
    );
    let described: Vec<String> = basis.iter().map(|v| describe_vector(a, v)).collect();
    r.evidence("trace basis (values on basis elements)", described);
    Ok(r)
}

fn random_draw(a: &AInfinityAlgebra, rng: &mut ChaCha8Rng) -> Cochain {
    let k: i64 = rng.gen_range(-1..=1);
    random_cochain(a.basis(), k, 1..=3, 0.3, rng)
}

pub fn bracket(path: &Path, o: &Options) -> Result<Report> {
    let w = window(o)?;
    let spec = load(path, w)?;
    let a = &spec.algebra;
    let b = a.basis();
    let mut r = Report::new(title("bracket", path), w);
    let mm = gbracket(a.m(), a.m(), b);
    r.row(
        Row::value("[m, m]", if mm.is_zero() { "0" } else { "nonzero" })
            .with_status(Status::from_bool(mm.is_zero())),
    );
    if let Some(d) = &spec.derivation {
        let md = gbracket(a.m(), d, b);
        r.row(Row::value(
            "[m, D]",
            if md.is_zero() { "0" } else { "nonzero" },
        ));
        if !md.is_zero() {
            r.evidence("[m, D]", format_witness(&md, b));
        }
        let dd = gbracket(d, d, b);
        r.row(Row::value(
            "[D, D]",
            if dd.is_zero() {
                "0".to_string()
            } else {
                format!("{} terms", dd.triples().len())
            },
        ));
        if !dd.is_zero() {
            r.evidence("[D, D]", format_witness(&dd, b));
        }
    }
    if let Some(seed) = o.seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut anti, mut jacobi, mut square, mut leibniz) = (0, 0, 0, 0);
        for _ in 0..o.cases {
            let (x, y, z) = (
                random_draw(a, &mut rng),
                random_draw(a, &mut rng),
                random_draw(a, &mut rng),
            );
            let (kx, ky, kz) = (x.sdeg(), y.sdeg(), z.sdeg());
            let xy = gbracket(&x, &y, b);
            let yx = gbracket(&y, &x, b).scale(&-sign(kx * ky));
            anti += usize::from(xy.minus(&yx)?.is_zero());
            let cyc = gbracket(&x, &gbracket(&y, &z, b), b)
                .scale(&sign(kx * kz))
                .plus(&gbracket(&y, &gbracket(&z, &x, b), b).scale(&sign(ky * kx)))?
                .plus(&gbracket(&z, &xy, b).scale(&sign(kz * ky)))?;
            jacobi += usize::from(cyc.is_zero());
            let d = |c: &Cochain| deformation_differential(c, a);
            square += usize::from(d(&d(&x)).is_zero());
            let rhs = gbracket(&d(&x), &y, b).plus(&gbracket(&x, &d(&y), b).scale(&sign(kx)))?;
            leibniz += usize::from(d(&xy).minus(&rhs)?.is_zero());
        }
        let n = o.cases;
        for (name, ok) in [
            ("antisymmetry", anti),
            ("Jacobi", jacobi),
            ("δ² = 0", square),
            ("δ is a derivation", leibniz),
        ] {
            r.row(
                Row {
                    expected: Some(format!("{n}/{n}")),
                    ..Row::value(name, format!("{ok}/{n}"))
                }
                .with_status(Status::from_bool(ok == n)),
            );
        }
        r.evidence(
            "random cases",
            serde_json::json!({ "seed": seed, "cases": n }),
        );
    }
    Ok(r)
}

pub fn cohomology(path: &Path, o: &Options) -> Result<Report> {
    let w = window(o)?;
    let spec = load(path, w)?;
    let dc = DeformationComplex::new(&spec.algebra, w)?;
    let mut r = Report::new(title("cohomology", path), w);
    for p in degrees(o, 0..=3) {
        r.row(Row::value(format!("HH^{p}(A,A)"), dc.cohomology_dim(p)?));
    }
    Ok(r)
}

fn terms_or_zero(x: &Cochain, a: &AInfinityAlgebra) -> Vec<String> {
    if x.is_zero() {
        vec!["0".to_string()]
    } else {
        format_witness(x, a.basis())
    }
}

pub fn deform(path: &Path, o: &Options) -> Result<Report> {
    let w = window(o)?;
    let spec = load(path, w)?;
    let a = &spec.algebra;
    let terms = spec
        .deformation
        .clone()
        .ok_or_else(|| Error::Precondition("the spec has no deformation block".into()))?;
    let def = FormalDeformation::new(a.clone(), terms)?;
    let tau = spec.trace.clone().map(|t| Trace::new(a, t)).transpose()?;
    let rep = obstruction_class(&def, tau.as_ref(), w)?;
    let mut r = Report::new(title("deform", path), w);
    r.row(Row::value("order", rep.order));
    r.row(
        Row::value(
            "obstruction class in HH^3 vanishes",
            rep.hochschild_vanishes,
        )
        .with_status(Status::from_bool(rep.hochschild_vanishes)),
    );
    if let (Some(cocycle), Some(vanishes)) = (rep.cyclic_cocycle, rep.cyclic_vanishes) {
        r.row(
            Row::value("paired obstruction is a cyclic cocycle", cocycle)
                .with_status(Status::from_bool(cocycle)),
        );
        r.row(
            Row::value("obstruction class in HC^3 vanishes", vanishes)
                .with_status(Status::from_bool(vanishes)),
        );
    }
    r.evidence("obstruction cochain", terms_or_zero(&rep.cochain, a));
    match rep.witness {
        Some(next) => {
            r.evidence("next term", terms_or_zero(&next, a));
            let extended = def.extend(next)?;
            let mc = extended.mc_defect(rep.order).is_zero();
            r.row(
                Row::value("extension satisfies Maurer–Cartan", mc)
                    .with_status(Status::from_bool(mc)),
            );
            if let Some(t) = &tau {
                let closed = is_closed(&extended, t).closed;
                r.row(
                    Row::value("extension is closed", closed)
                        .with_status(Status::from_bool(closed)),
                );
            }
        }
        None => r.row(Row::value("next term", "none exists").with_status(Status::Fail)),
    }
    Ok(r)
}

/// `A → A/J` for the contractible ideal `J`, or the identity when `J = 0`.
fn contraction_map(a: &AInfinityAlgebra) -> Result<StrictMorphism> {
    let j = degree_one_contractible_ideal(a)?;
    if j.dim() == 0 {
        return Ok(StrictMorphism::identity(a));
    }
    Ok(quotient(a, &j)?.1)
}

pub fn verify(claim: Claim, path: &Path, conjecture: bool, o: &Options) -> Result<Report> {
    let w = window(o)?;
    let spec = load(path, w)?;
    let a = &spec.algebra;
    let name = match claim {
        Claim::EquivalenceInvariance => "prop23",
        Claim::NilpotentQuotient => "thm44",
        Claim::HpOfH0 => "thm45",
        Claim::LieDerivative => "cor42",
        Claim::Sbi => "sbi",
        Claim::QuasiIso => "quasi-iso",
    };
    let mut r = Report::new(title(&format!("verify {name}"), path), w);
    let ideal = || -> Result<AInfinityIdeal> {
        match &spec.ideal {
            Some(gens) => AInfinityIdeal::new(a, gens),
            None => AInfinityIdeal::positive_part(a),
        }
    };
    match claim {
        Claim::EquivalenceInvariance => {
            let f = contraction_map(a)?;
            r.evidence(
                "morphism",
                format!("A → A/J with dim J = {}", a.dim() - f.target().dim()),
            );
            r.absorb(verify_equivalence_invariance(&f, w)?);
            if conjecture {
                let (_, g) = quotient(a, &ideal()?)?;
                let check = conjecture_check_one_connected(&g, w)?;
                let lines: Vec<String> = check
                    .checks
                    .iter()
                    .map(|c| {
                        format!(
                            "{} expected {} observed {} ({})",
                            c.name,
                            c.expected,
                            c.observed,
                            status_word(c.status)
                        )
                    })
                    .collect();
                r.evidence(
                    format!("conjecture check, A → A/I ({})", status_word(check.status)),
                    lines,
                );
            }
        }
        Claim::NilpotentQuotient => r.absorb(verify_nilpotent_quotient(a, &ideal()?, w)?),
        Claim::HpOfH0 => r.absorb(verify_hp_of_h0(a, w)?),
        Claim::LieDerivative => {
            let d = spec
                .derivation
                .clone()
                .ok_or_else(|| Error::Precondition("the spec has no derivation block".into()))?;
            r.absorb(verify_lie_derivative(a, &Derivation::new(a, d)?, w)?);
        }
        Claim::Sbi => {
            let top = *degrees(o, 0..=w.reliable_bound()).end();
            r.absorb(verify_sbi(a, w, top)?);
        }
        Claim::QuasiIso => r.absorb(verify_quasi_iso(a, w)?),
    }
    if conjecture && claim != Claim::EquivalenceInvariance {
        r.evidence("conjecture check", "only available with prop23");
    }
    Ok(r)
}
