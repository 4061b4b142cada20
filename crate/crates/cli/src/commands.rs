//! Dispatch of parsed commands to the core library.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Value};

use qchar_core::analytic::{eval_at, UnivariateSeries};
use qchar_core::catalog::{make_classical_ring, make_ring, RingId};
use qchar_core::jfun::{
    binomial_identity_check, f2_reduction, hbar_infinity_check, j_milnor, j_product, verify_operators, DegreeResidual,
    DifferenceExpression,
};
use qchar_core::mirror::{chain_identities, direct_nzd_check, ideal_equality, verify_phi, NzdCheck};
use qchar_core::qch::{
    flag_proof_residuals, solve_novikov_equation, todd_simplification_residuals, QuantumChernMap, Space,
};
use qchar_core::rational::render_rational;
use qchar_core::{AlgebraElement, Error};

use crate::cert::Certificate;
use crate::{ClassicalCmd, Command, IdentityCmd, JfunCmd, MirrorCmd, QchCmd, RingArgs, RingCmd, SpaceArgs, ToddArgs};

/// Usage errors exit with 2; everything else that aborts a command exits with 1.
pub fn error_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(
            Error::Parameter(_)
            | Error::Parse(_)
            | Error::UnknownVariable(_)
            | Error::NegativeExponent(_)
            | Error::NotInvertible(_)
            | Error::NotDegreeTwo(_)
            | Error::TruncationTooHigh { .. },
        ) => 2,
        _ => 1,
    }
}

pub fn run(cmd: Command) -> anyhow::Result<i32> {
    match cmd {
        Command::Ring(c) => ring(c),
        Command::Qch(c) => qch(c),
        Command::Todd(a) => todd(a),
        Command::Jfun(c) => jfun(c),
        Command::Identity(c) => identity(c),
        Command::Mirror(c) => mirror(c),
        Command::Classical(c) => classical(c),
    }
}

fn ring_id(a: &RingArgs) -> anyhow::Result<RingId> {
    let id = RingId::new(a.family, a.n, a.m, a.trunc);
    id.validate()?;
    Ok(id)
}

fn ring_params(c: &mut Certificate, a: &RingArgs) {
    c.param("family", a.family.as_str()).param("n", a.n);
    if a.family.uses_m() {
        c.param("m", a.m);
    }
    let trunc = if a.family.is_classical() { 0 } else { a.trunc };
    c.truncation(trunc);
}

/// `{monomial: coefficient}` over generators and Novikov variables.
fn coords_json(e: &AlgebraElement) -> Value {
    let p = e.to_polynomial();
    let map: serde_json::Map<String, Value> = p
        .terms()
        .map(|(m, c)| {
            let key = if m.is_one() { "1".to_string() } else { m.render(p.vars()) };
            (key, Value::String(render_rational(c)))
        })
        .collect();
    Value::Object(map)
}

fn out(o: &crate::OutArg) -> Option<&Path> {
    o.out.as_deref()
}

fn ring(cmd: RingCmd) -> anyhow::Result<i32> {
    match cmd {
        RingCmd::Show { ring: a, out: o } => {
            let id = ring_id(&a)?;
            let r = make_ring(&id)?;
            let mut c = Certificate::new("ring show");
            ring_params(&mut c, &a);
            println!("{}", r.label());
            let mut rels = serde_json::Map::new();
            for (name, rel) in r.presentation().relations() {
                println!("  {name} = {}", rel.render());
                rels.insert(name.clone(), rel.render().into());
            }
            println!("  dim = {}", r.dim());
            c.payload("ring", r.label()).payload("relations", Value::Object(rels)).payload("dim", r.dim());
            c.check("dimension", r.dim() == id.expected_dim(), format!("{} (expected {})", r.dim(), id.expected_dim()));
            c.finish(out(&o))
        }
        RingCmd::Basis { ring: a, out: o } => {
            let id = ring_id(&a)?;
            let r = make_ring(&id)?;
            let mut c = Certificate::new("ring basis");
            ring_params(&mut c, &a);
            let basis = r.basis_strings();
            println!("{}", basis.join(", "));
            c.payload("ring", r.label()).payload("basis", basis);
            c.check("dimension", r.dim() == id.expected_dim(), format!("{} (expected {})", r.dim(), id.expected_dim()));
            c.finish(out(&o))
        }
        RingCmd::Mul { ring: a, lhs, rhs, out: o } => {
            let r = make_ring(&ring_id(&a)?)?;
            let product = &r.parse(&lhs)? * &r.parse(&rhs)?;
            println!("{}", product.render());
            let mut c = Certificate::new("ring mul");
            ring_params(&mut c, &a);
            c.param("lhs", lhs).param("rhs", rhs);
            c.payload("ring", r.label()).payload("product", product.render());
            c.finish(out(&o))
        }
        RingCmd::Table { ring: a, trials, seed, out: o } => {
            let r = make_ring(&ring_id(&a)?)?;
            let mut c = Certificate::new("ring table");
            ring_params(&mut c, &a);
            c.param("trials", trials as u64).param("seed", seed);
            let mut table = Vec::new();
            for (i, row) in r.structure_constants().iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    table.push(json!({"i": i, "j": j, "coords": coords_json(e)}));
                }
            }
            let basis = r.basis_strings();
            for (i, bi) in basis.iter().enumerate() {
                for (j, bj) in basis.iter().enumerate().skip(i) {
                    println!("{bi} * {bj} = {}", r.structure_constants()[i][j].render());
                }
            }
            c.payload("ring", r.label()).payload("basis", basis).payload("table", table);
            match r.confluence_check(trials, seed)? {
                None => c.check("confluence", true, format!("{trials} random reductions agree")),
                Some((p, x, y)) => {
                    c.check("confluence", false, format!("{}: {} vs {}", p.render(), x.render(), y.render()))
                }
            };
            c.finish(out(&o))
        }
    }
}

fn space(a: &SpaceArgs) -> anyhow::Result<Space> {
    let s = Space::from_name(&a.space, a.n, a.m)?;
    s.source_id(a.trunc).validate()?;
    Ok(s)
}

fn space_params(c: &mut Certificate, a: &SpaceArgs) {
    c.param("space", a.space.clone()).param("n", a.n);
    if let Some(m) = a.m {
        c.param("m", m);
    }
    c.truncation(a.trunc);
}

fn images_json(map: &QuantumChernMap) -> Value {
    let m: serde_json::Map<String, Value> =
        map.images().iter().map(|(v, e)| (v.clone(), Value::String(e.render()))).collect();
    Value::Object(m)
}

fn qch(cmd: QchCmd) -> anyhow::Result<i32> {
    match cmd {
        QchCmd::Build { space: a, out: o } => {
            let map = QuantumChernMap::build(space(&a)?, a.trunc)?;
            let mut c = Certificate::new("qch build");
            space_params(&mut c, &a);
            for (v, e) in map.images() {
                println!("{v} -> {}", e.render());
            }
            c.payload("space", map.space().to_string()).payload("images", images_json(&map));
            c.finish(out(&o))
        }
        QchCmd::Apply { space: a, expr, out: o } => {
            let map = QuantumChernMap::build(space(&a)?, a.trunc)?;
            let image = map.apply_str(&expr)?;
            println!("{}", image.render());
            let mut c = Certificate::new("qch apply");
            space_params(&mut c, &a);
            c.param("expr", expr);
            c.payload("space", map.space().to_string()).payload("image", image.render());
            c.finish(out(&o))
        }
        QchCmd::Verify { space: a, out: o } => {
            let s = space(&a)?;
            let map = QuantumChernMap::build(s, a.trunc)?;
            let mut c = Certificate::new("qch verify");
            space_params(&mut c, &a);
            let mut relations = Vec::new();
            for r in map.verify_relations()? {
                let zero = r.residual.is_zero();
                relations
                    .push(json!({"name": r.name, "residual_is_zero": zero, "residual_rendering": r.residual.render()}));
                c.check(format!("relation {} maps to zero", r.name), zero, r.residual.render());
            }
            let limits = map.verify_classical_limit()?;
            let classical_ok = limits.iter().all(|l| l.holds());
            for l in limits.iter().filter(|l| !l.holds()) {
                c.check(
                    format!("classical limit of {}", l.monomial),
                    false,
                    format!("{} vs {}", l.image.render(), l.expected.render()),
                );
            }
            c.check("classical limit equals ch", classical_ok, format!("{} basis monomials", limits.len()));
            if let Space::Fl(n) = s {
                let [r1, r2] = todd_simplification_residuals(n, a.trunc)?;
                for (k, r) in [(1, r1), (2, r2)] {
                    c.check(format!("(1 - e^-(h1+h2)) * qch(Q{k}) = (1 - e^-h{k})^n"), r.is_zero(), r.render());
                }
                let [lhs, tele] = flag_proof_residuals(n, a.trunc)?;
                c.check("second relation expansion", lhs.is_zero(), lhs.render());
                c.check("telescoping identity", tele.is_zero(), tele.render());
            }
            c.payload("space", s.to_string())
                .payload("relations", relations)
                .payload("classical_limit", if classical_ok { "pass" } else { "fail" });
            c.finish(out(&o))
        }
        QchCmd::Unique { space: a, out: o } => {
            let s = space(&a)?;
            let mut c = Certificate::new("qch unique");
            space_params(&mut c, &a);
            match s {
                Space::Pn(n) => {
                    let map = QuantumChernMap::build(s, a.trunc)?;
                    let sol = solve_novikov_equation(n, a.trunc, false)?;
                    let homogeneous = solve_novikov_equation(n, a.trunc, true)?;
                    let expected = map.image("Q").expect("Novikov image");
                    println!("solution: {}", sol.solution.render());
                    c.check("solution equals the Novikov image", &sol.solution == expected, sol.solution.render());
                    c.check("solution is unique", sol.unique, format!("rank {} of {}", sol.rank, sol.unknowns));
                    c.check(
                        "homogeneous equation has only the zero solution",
                        homogeneous.solution.is_zero() && homogeneous.unique,
                        homogeneous.solution.render(),
                    );
                    c.payload("solution", sol.solution.render());
                }
                _ => {
                    c.skip("uniqueness of the Novikov images", format!("not implemented for {s}"));
                }
            }
            c.finish(out(&o))
        }
    }
}

fn series_by_name(name: &str) -> anyhow::Result<UnivariateSeries> {
    let all = [
        UnivariateSeries::ExpNeg,
        UnivariateSeries::OneMinusExp,
        UnivariateSeries::OneMinusExpOverX,
        UnivariateSeries::XOverOneMinusExp,
    ];
    all.into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| Error::Parameter(format!("unknown series `{name}`")).into())
}

fn todd(a: ToddArgs) -> anyhow::Result<i32> {
    let r = make_ring(&ring_id(&a.ring)?)?;
    let f = series_by_name(&a.series)?;
    let value = eval_at(&r, &f, &a.at)?.pow(a.power);
    println!("{}", value.render());
    let mut c = Certificate::new("todd");
    ring_params(&mut c, &a.ring);
    c.param("series", a.series.clone()).param("at", a.at.clone()).param("power", a.power);
    c.payload("ring", r.label()).payload("value", value.render());
    c.finish(out(&a.out))
}

fn residual_checks(c: &mut Certificate, residuals: &[DegreeResidual], label: &str) -> Vec<Value> {
    let mut rows = Vec::new();
    for r in residuals {
        let (d1, d2) = r.degree;
        let zero = r.is_zero();
        c.check(format!("{label}{} at Q1^{d1}*Q2^{d2}", r.operator), zero, r.residual.render());
        rows.push(json!({"operator": r.operator, "d1": d1, "d2": d2, "residual_is_zero": zero}));
    }
    rows
}

fn jfun(cmd: JfunCmd) -> anyhow::Result<i32> {
    match cmd {
        JfunCmd::Coeff { nm, d1, d2, product, out: o } => {
            let j = if product { j_product(nm.n, nm.m, d1 + d2)? } else { j_milnor(nm.n, nm.m, d1 + d2)? };
            let f = j.coeff(d1, d2).expect("degree within bound");
            let den: Vec<String> =
                f.den.iter().map(|(a, &m)| if m == 1 { a.render() } else { format!("{}^{m}", a.render()) }).collect();
            let den = if den.is_empty() { "1".to_string() } else { den.join("*") };
            println!("numerator: {}", f.num.render());
            println!("denominator: {den}");
            let mut c = Certificate::new("jfun coeff");
            c.param("n", nm.n).param("m", nm.m).param("d1", d1).param("d2", d2).param("product", product);
            c.payload("numerator", f.num.render()).payload("denominator", den);
            c.finish(out(&o))
        }
        JfunCmd::Verify { nm, max_deg, out: o } => {
            let (n, m) = (nm.n, nm.m);
            let mut c = Certificate::new("jfun verify");
            c.param("n", n).param("m", m).truncation(max_deg);
            let j = j_milnor(n, m, max_deg)?;
            let ops = [
                ("D1".to_string(), DifferenceExpression::first_operator(m)),
                ("D2".to_string(), DifferenceExpression::second_operator(n, m)),
            ];
            let rows = residual_checks(&mut c, &verify_operators(&j, &ops), "");
            c.payload("operators", json!({"D1": ops[0].1.render(), "D2": ops[1].1.render()}));
            c.payload("residuals", rows);

            let perturbed = DifferenceExpression::first_with_exponent(m - 1);
            let bad = verify_operators(&j, &[("D1".into(), perturbed)]);
            let witness = bad.iter().find(|r| !r.is_zero());
            c.check(
                "negative control: perturbed D1 leaves a nonzero residual",
                witness.is_some(),
                witness
                    .map(|r| format!("Q1^{}*Q2^{}: {}", r.degree.0, r.degree.1, r.residual.render()))
                    .unwrap_or_default(),
            );
            let jp = j_product(n, m, max_deg)?;
            let [p1, p2] = DifferenceExpression::product_operators(n, m);
            let controls = verify_operators(&jp, &[("t2^m - Q2".into(), p1), ("t1^n - Q1".into(), p2)]);
            c.check(
                "product J-function is annihilated by the uncorrected operators",
                controls.iter().all(DegreeResidual::is_zero),
                format!("{} coefficients", controls.len()),
            );
            let full = verify_operators(&jp, &ops);
            c.check(
                "product J-function is not annihilated by the hypersurface operators",
                full.iter().any(|r| !r.is_zero()),
                "",
            );
            c.finish(out(&o))
        }
        JfunCmd::Infinity { nm, max_deg, out: o } => {
            let mut c = Certificate::new("jfun infinity");
            c.param("n", nm.n).param("m", nm.m).truncation(max_deg);
            let mut rows = Vec::new();
            for k in hbar_infinity_check(nm.n, nm.m, max_deg)? {
                let (d1, d2) = k.degree;
                c.check(
                    format!("u{} * hbar^d{} * J at Q1^{d1}*Q2^{d2} vanishes at hbar = infinity", k.index, k.index),
                    k.holds(),
                    format!(
                        "numerator degree {} < denominator degree {}, leading coefficient {}",
                        k.numerator_degree,
                        k.denominator_degree,
                        if k.leading_unit { "a unit" } else { "not a unit" }
                    ),
                );
                rows.push(json!({
                    "i": k.index, "d1": d1, "d2": d2,
                    "numerator_degree": k.numerator_degree,
                    "denominator_degree": k.denominator_degree,
                    "leading_unit": k.leading_unit,
                }));
            }
            c.payload("degree_counts", rows).payload("reconstruction", "hypothesis checked");
            c.finish(out(&o))
        }
    }
}

fn identity(cmd: IdentityCmd) -> anyhow::Result<i32> {
    match cmd {
        IdentityCmd::Binomial { max_n, out: o } => {
            let sweep = binomial_identity_check(max_n);
            let mut c = Certificate::new("identity binomial");
            c.param("max_n", max_n);
            let detail = match sweep.failures.first() {
                None => format!("{} triples (n, t, b)", sweep.checked),
                Some((n, t, b, l, r)) => format!("n={n} t={t} b={b}: {l} != {r}"),
            };
            c.check("alternating binomial sum", sweep.holds(), detail);
            c.payload("checked", sweep.checked as u64);
            c.finish(out(&o))
        }
        IdentityCmd::F2Reduction { n, m, max_n, out: o } => {
            let mut c = Certificate::new("identity f2-reduction");
            let pairs: Vec<(u32, u32)> = match (n, m) {
                (Some(n), Some(m)) => {
                    c.param("n", n).param("m", m);
                    vec![(n, m)]
                }
                (None, None) => {
                    c.param("max_n", max_n);
                    (3..=max_n).flat_map(|n| (3..=n).map(move |m| (n, m))).collect()
                }
                _ => return Err(Error::Parameter("give both --n and --m, or neither".into()).into()),
            };
            let mut rows = Vec::new();
            for (n, m) in pairs {
                let k = f2_reduction(n, m)?;
                c.check(
                    format!("({n},{m}) F2 - multiplier*F1 equals the closed form"),
                    k.identity_holds(),
                    (&k.difference - &k.closed_form).render(),
                );
                c.check(
                    format!("({n},{m}) closed form equals the bundle form"),
                    k.forms_agree(),
                    (&k.closed_form - &k.bundle_form).render(),
                );
                c.check(format!("({n},{m}) y-degree at most n"), k.degree_bound_holds(n), k.y_degree.to_string());
                rows.push(json!({"n": n, "m": m, "a": k.a.render(), "multiplier": k.multiplier.render(), "difference": k.difference.render()}));
            }
            c.payload("cases", rows);
            c.finish(out(&o))
        }
    }
}

fn nzd_checks(c: &mut Certificate, k: &NzdCheck) {
    c.check(
        "M_h1^n = q1 * M_(h1+h2) entrywise",
        k.identity_mismatches.is_empty(),
        format!("{} mismatched entries", k.identity_mismatches.len()),
    );
    c.check("determinant algorithms agree", k.determinant == k.determinant_cross_check, k.determinant.render());
    c.check(
        "det M_(h1+h2) has a nonzero lowest-degree part",
        !k.lowest_part.is_zero(),
        format!("degree {:?}: {}", k.lowest_degree, k.lowest_part.render()),
    );
    c.check("det(M_h1)^n = q1^(n(n-1)) * det M_(h1+h2)", k.power_determinant_identity, "");
    c.check("zero control: det M_0 = 0", k.zero_control, "");
    c.payload(
        "determinant_witness",
        json!({"lowest_degree": k.lowest_degree, "lowest_part": k.lowest_part.render(), "determinant": k.determinant.render()}),
    );
}

fn mirror(cmd: MirrorCmd) -> anyhow::Result<i32> {
    match cmd {
        MirrorCmd::Verify { n, trunc, step_cap, out: o } => {
            let mut c = Certificate::new("mirror verify");
            c.param("n", n).param("step_cap", step_cap).truncation(trunc);
            match verify_phi(n, step_cap) {
                Ok(report) => {
                    c.check("image of h1 is a unit monomial", report.h1_image_is_unit, "");
                    let mut rows = Vec::new();
                    for k in &report.checks {
                        let label = if k.expected {
                            k.name.clone()
                        } else {
                            format!("negative control: {} is not a member", k.name)
                        };
                        c.check(label, k.holds(), format!("normal form {}", k.normal_form.render()));
                        rows.push(json!({"name": k.name, "member": k.member(), "expected": k.expected, "normal_form": k.normal_form.render()}));
                    }
                    c.payload("superpotential", report.superpotential.render())
                        .payload("jacobi_relations", report.relations.iter().map(|r| r.render()).collect::<Vec<_>>())
                        .payload("groebner", json!({"size": report.groebner_size, "steps": report.groebner_steps}))
                        .payload("memberships", rows);
                }
                Err(Error::StepCap(cap)) => {
                    c.check("Jacobi ideal Gröbner basis", false, format!("step cap {cap} reached"));
                }
                Err(e) => return Err(e.into()),
            }
            if n >= 4 {
                let mut rows = Vec::new();
                for k in chain_identities(n)? {
                    c.check(format!("elimination: {}", k.name), k.residual.is_zero(), k.residual.render());
                    rows.push(json!({"name": k.name, "residual": k.residual.render()}));
                }
                c.payload("elimination_identities", rows);
                match ideal_equality(n, step_cap) {
                    Ok(eq) => {
                        c.check(
                            "eliminated relations lie in the image ideal",
                            eq.forward.iter().all(|k| k.holds()),
                            "",
                        );
                        c.check(
                            "image relations lie in the eliminated ideal",
                            eq.backward.iter().all(|k| k.holds()),
                            "",
                        );
                    }
                    Err(Error::StepCap(cap)) => {
                        c.skip("ideal equality", format!("step cap {cap} reached"));
                    }
                    Err(e) => return Err(e.into()),
                }
            } else {
                c.skip("elimination identities", "the elimination chain needs n >= 4");
            }
            nzd_checks(&mut c, &direct_nzd_check(n, trunc)?);
            c.skip("injectivity of the mirror homomorphism", "not mechanically verified");
            c.finish(out(&o))
        }
        MirrorCmd::Nzd { n, trunc, out: o } => {
            let mut c = Certificate::new("mirror nzd");
            c.param("n", n).truncation(trunc);
            nzd_checks(&mut c, &direct_nzd_check(n, trunc)?);
            c.finish(out(&o))
        }
    }
}

fn classical(cmd: ClassicalCmd) -> anyhow::Result<i32> {
    match cmd {
        ClassicalCmd::Dim { family, n, m, out: o } => {
            let id = RingId::new(family, n, m, 0);
            id.validate()?;
            let r = make_classical_ring(&id)?;
            println!("{}", r.dim());
            let mut c = Certificate::new("classical dim");
            c.param("family", family.as_str()).param("n", n);
            if family.uses_m() {
                c.param("m", m);
            }
            c.truncation(0);
            c.check(
                "classical dimension",
                r.dim() == id.expected_dim(),
                format!("{} (expected {})", r.dim(), id.expected_dim()),
            );
            c.payload("dim", r.dim()).payload("basis", r.basis_strings());
            c.finish(out(&o))
        }
        ClassicalCmd::Chern { space: name, n, m, expr, out: o } => {
            let s = Space::from_name(&name, n, m)?;
            s.source_id(0).validate()?;
            let map = QuantumChernMap::build(s, 0)?;
            let mut c = Certificate::new("classical chern");
            c.param("space", name).param("n", n);
            if let Some(m) = m {
                c.param("m", m);
            }
            c.truncation(0);
            if let Some(e) = &expr {
                let image = map.apply_str(e)?.classical_limit();
                println!("{}", image.render());
                c.param("expr", e.clone());
                c.payload("chern_character", image.render());
            }
            let limits = map.verify_classical_limit()?;
            let mut rows = BTreeMap::new();
            for l in &limits {
                c.check(format!("ch({})", l.monomial), l.holds(), l.expected.render());
                rows.insert(l.monomial.clone(), l.expected.render());
            }
            c.payload("basis_images", json!(rows));
            c.finish(out(&o))
        }
    }
}
