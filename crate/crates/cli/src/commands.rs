//! Subcommand implementations. Each returns a value tree plus a success flag.

use std::path::Path;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};

use immclass_core::classification::{
    classify, classify_chi, maps_to_s2, ClassificationTable, ImmersionClass, ManifoldAlgebra,
};
use immclass_core::complex::validate_closed_oriented;
use immclass_core::homology::{alpha, cohomology, divisibility, homology, verify_duality, Coefficients};
use immclass_core::ledger::{
    invariant_I, invariant_i_from_I, invariant_j, lift_check, rotation_difference, seifert_consistency,
    smale_invariant, takase_i, Census, SeifertData,
};
use immclass_core::library::builtin;
use immclass_core::semigroup::SemigroupElement;

use crate::input::{load, parse_file, Parsed, Source};
use crate::render::{cardinality, class, cyclic, group_with_basis, int, ints, shape};
use crate::{Command, LedgerCommand, Ring, SeifertArgs};

pub enum Outcome {
    /// Rendered in the requested format; `ok = false` exits nonzero after printing.
    Value { value: Value, ok: bool },
    /// Printed verbatim (file exports).
    Raw(String),
}

fn done(value: Value) -> Result<Outcome> {
    Ok(Outcome::Value { value, ok: true })
}

/// Fiber labels are torsor coordinates; this is attached to every output that shows them.
const LABEL_CONVENTION: &str = "fiber values i are labels in a torsor: label 0 is fixed per Wu class by a \
choice of base immersion and spin structure; only differences of labels are canonical";

pub fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Validate { source } => validate(&source),
        Command::Homology { source, coefficients } => homology_report(&source, coefficients),
        Command::Classify { source, window } => {
            let loaded = load(&source)?;
            let alg = loaded.algebra()?;
            let table = classify(&alg, window)?;
            let mut v = classification_json(&alg, &table)?;
            v["input"] = json!(loaded.name);
            done(v)
        }
        Command::ClassifyChi { source, chi, cochain } => {
            let loaded = load(&source)?;
            let alg = loaded.algebra()?;
            let h2 = alg.h2();
            let chi = match (chi, cochain) {
                (Some(c), _) => h2.class(&parse_coords(&c)?)?,
                (None, Some(c)) => h2.express(&parse_coords(&c)?).context("--cochain must be a 2-cocycle")?,
                (None, None) => unreachable!("clap requires one of --chi and --cochain"),
            };
            let row = classify_chi(&alg, &chi)?;
            let wu: Vec<Value> = row
                .halves
                .iter()
                .map(|c| Ok(json!({ "c": class(c), "fiber_modulus": int(&(divisibility(h2, c)? * 4)) })))
                .collect::<Result<_>>()?;
            done(json!({
                "input": loaded.name,
                "h2": group_with_basis(h2),
                "chi": class(&chi),
                "d": int(&row.divisibility),
                "normal_euler_class": row.is_normal_euler_class(),
                "wu_classes": wu,
                "fiber_modulus": int(&row.fiber_modulus),
                "class_count": cardinality(&row.class_count()),
                "cup_index": row.cup_index.as_ref().map(int),
                "label_convention": LABEL_CONVENTION,
            }))
        }
        Command::S2 { source, window } => {
            let loaded = load(&source)?;
            let alg = loaded.algebra()?;
            let table = maps_to_s2(&alg, window)?;
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "chi": class(&r.chi),
                        "d": int(&r.divisibility),
                        "fiber_modulus": int(&r.fiber_modulus),
                        "cup_index": r.cup_index.as_ref().map(int),
                    })
                })
                .collect();
            done(json!({
                "input": loaded.name,
                "h2": group_with_basis(alg.h2()),
                "window": window,
                "rows": rows,
            }))
        }
        Command::DualitySweep { source, bound } => duality_sweep(&source, bound),
        Command::Consum { left, right } => {
            let a = descriptor(&left)?;
            let b = descriptor(&right)?;
            let sum = a.connected_sum(&b);
            done(json!({
                "left": element(&a),
                "right": element(&b),
                "sum": element(&sum),
                "label_convention": LABEL_CONVENTION,
            }))
        }
        Command::Ledger { command } => ledger(command),
        Command::Export { builtin: name, presentation } => {
            let m = builtin(&name)?;
            match (m.complex(), presentation) {
                (Some(c), false) => Ok(Outcome::Raw(c.to_file_string())),
                _ => Ok(Outcome::Raw(m.presentation.to_json_string())),
            }
        }
    }
}

fn parse_coords(s: &str) -> Result<Vec<BigInt>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(|x| x.trim().parse::<BigInt>().with_context(|| format!("malformed coordinate {x:?}"))).collect()
}

fn validate(source: &Source) -> Result<Outcome> {
    let (name, parsed) = match (&source.builtin, &source.file) {
        (Some(n), _) => {
            let m = builtin(n)?;
            let parsed = match m.complex() {
                Some(c) => Parsed::Triangulation(c.clone()),
                None => Parsed::Presentation(m.presentation.clone()),
            };
            (m.name, parsed)
        }
        (None, Some(path)) => (path.display().to_string(), parse_file(path)?),
        (None, None) => unreachable!("clap enforces one source"),
    };
    match parsed {
        Parsed::Presentation(p) => done(json!({
            "input": name,
            "kind": "presentation",
            "cell_counts": p.cell_counts(),
            "cup_data": p.cup_tensor().is_some(),
            "valid": true,
        })),
        Parsed::Triangulation(c) => {
            let r = validate_closed_oriented(&c);
            let ok = r.is_valid();
            let value = json!({
                "input": name,
                "kind": "triangulation",
                "vertices": c.vertex_count(),
                "tetrahedra": c.tetrahedra().len(),
                "closed": r.is_closed,
                "connected": r.is_connected,
                "euler_characteristic": r.euler_characteristic,
                "orientation": match &r.orientation {
                    Ok(_) => "coherent".to_string(),
                    Err(e) => e.to_string(),
                },
                "links_are_spheres": r.link_check,
                "link_failure": r.link_failure,
                "valid": ok,
            });
            Ok(Outcome::Value { value, ok })
        }
    }
}

fn homology_report(source: &Source, ring: Ring) -> Result<Outcome> {
    let loaded = load(source)?;
    let p = &loaded.presentation;
    let coeffs = match ring {
        Ring::Z => Coefficients::Integers,
        Ring::Z2 => Coefficients::Mod2,
    };
    let mut hom = Vec::new();
    let mut cohom = Vec::new();
    for k in 0..=3 {
        hom.push(shape(homology(p, k, coeffs)?.shape()));
        cohom.push(shape(cohomology(p, k, coeffs)?.shape()));
    }
    done(json!({
        "input": loaded.name,
        "kind": loaded.kind,
        "coefficients": match ring { Ring::Z => "Z", Ring::Z2 => "Z2" },
        "cell_counts": p.cell_counts(),
        "homology": hom,
        "cohomology": cohom,
        "alpha": alpha(p)?,
        "poincare_duality": verify_duality(p)?.passes(),
        "h2": group_with_basis(&cohomology(p, 2, Coefficients::Integers)?),
    }))
}

fn classification_json(alg: &ManifoldAlgebra, t: &ClassificationTable) -> Result<Value> {
    let wu: Vec<Value> = t
        .wu_rows
        .iter()
        .map(|r| json!({ "c": class(&r.c), "d": int(&r.divisibility), "fiber_modulus": int(&r.fiber_modulus) }))
        .collect();
    let chi: Vec<Value> = t
        .chi_rows
        .iter()
        .map(|r| {
            json!({
                "chi": class(&r.chi),
                "d": int(&r.divisibility),
                "wu_classes": r.halves.iter().map(class).collect::<Vec<_>>(),
                "fiber_modulus": int(&r.fiber_modulus),
                "cup_index": r.cup_index.as_ref().map(int),
            })
        })
        .collect();
    Ok(json!({
        "h2": group_with_basis(alg.h2()),
        "window": t.window,
        "wu_rows": wu,
        "chi_rows": chi,
        "wu_class_count": cardinality(&t.wu_classes),
        "total": cardinality(&t.total),
        "description": t.description,
        "consistent": t.check_consistency(alg)?,
        "label_convention": LABEL_CONVENTION,
    }))
}

fn duality_sweep(source: &Source, bound: u32) -> Result<Outcome> {
    let loaded = load(source)?;
    let Some(cup) = &loaded.cup else {
        bail!(
            "{} carries no cup data; the sweep needs a triangulation or a presentation with a cup tensor",
            loaded.name
        );
    };
    let h2 = cup.h2();
    let mut rows = Vec::new();
    let mut all = true;
    for chi in h2.elements_in_window(bound) {
        let d = divisibility(h2, &chi)?;
        let index = cup.index_two_chi_cup_h1(&chi)?;
        let pass = index == &d * 2;
        all &= pass;
        rows.push(json!({
            "chi": class(&chi),
            "d": int(&d),
            "two_d": int(&(&d * 2)),
            "index": int(&index),
            "status": if pass { "PASS" } else { "FAIL" },
        }));
    }
    let value = json!({
        "input": loaded.name,
        "h2": group_with_basis(h2),
        "bound": bound,
        "checked": rows.len(),
        "rows": rows,
        "status": if all { "PASS" } else { "FAIL" },
    });
    Ok(Outcome::Value { value, ok: all })
}

/// `NAME:c1,c2,...:i` with `NAME` a builtin or a file.
fn descriptor(text: &str) -> Result<SemigroupElement> {
    let mut parts = text.rsplitn(3, ':');
    let (Some(i), Some(c), Some(name)) = (parts.next(), parts.next(), parts.next()) else {
        bail!("class descriptor {text:?} must look like NAME:c1,c2,...:i");
    };
    let source = if builtin(name).is_ok() {
        Source { builtin: Some(name.to_string()), file: None }
    } else if Path::new(name).exists() {
        Source { builtin: None, file: Some(name.into()) }
    } else {
        bail!("{name:?} is neither a builtin nor a file");
    };
    let alg = load(&source)?.algebra()?;
    let c = alg.h2().class(&parse_coords(c)?).with_context(|| format!("Wu class in {text:?}"))?;
    let i: BigInt = i.trim().parse().with_context(|| format!("fiber label in {text:?}"))?;
    Ok(SemigroupElement::from_class(&alg, &ImmersionClass::new(&alg, c, i)?)?)
}

fn element(e: &SemigroupElement) -> Value {
    json!({
        "h1": ints(&e.summary().h1),
        "h2": ints(&e.summary().h2),
        "h2_display": e.summary().h2_shape().to_string(),
        "c": e.c().iter().map(cyclic).collect::<Vec<_>>(),
        "d": int(e.d()),
        "i": cyclic(e.i()),
    })
}

fn read_census(path: &Path) -> Result<Census> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(Census::parse(&text)?)
}

fn seifert(args: &SeifertArgs) -> Result<SeifertData> {
    if let Some(path) = &args.census {
        let label = args.label.as_deref().expect("clap requires --label with --census");
        return Ok(read_census(path)?.seifert(label)?);
    }
    let (Some(sigma), Some(cusps)) = (&args.sigma, &args.cusps) else {
        bail!("--sigma and --cusps are required without --census");
    };
    Ok(SeifertData::new(
        sigma.clone(),
        cusps.clone(),
        args.alpha.clone(),
        args.d.clone(),
        args.big_r.clone(),
        args.r.clone(),
    )?)
}

fn seifert_json(s: &SeifertData) -> Value {
    json!({
        "sigma": int(&s.sigma),
        "cusps": int(&s.cusps),
        "alpha": int(&s.alpha),
        "d": int(&s.d),
        "R": s.rotation_big.as_ref().map(cyclic),
        "r": s.rotation.as_ref().map(cyclic),
    })
}

fn ledger(command: LedgerCommand) -> Result<Outcome> {
    match command {
        LedgerCommand::Smale { sigma, cusps } => done(json!({
            "quantity": "smale",
            "sigma": int(&sigma),
            "cusps": int(&cusps),
            "value": int(&smale_invariant(&sigma, &cusps)?),
        })),
        LedgerCommand::Takase { sigma, alpha, cusps } => done(json!({
            "quantity": "takase_i",
            "sigma": int(&sigma),
            "alpha": int(&alpha),
            "cusps": int(&cusps),
            "value": int(&takase_i(&sigma, &alpha, &cusps)?),
        })),
        LedgerCommand::BigI { data } => {
            let s = seifert(&data)?;
            let big_i = invariant_I(&s)?;
            done(json!({
                "quantity": "I",
                "data": seifert_json(&s),
                "value": cyclic(&big_i),
                "half": cyclic(&invariant_i_from_I(&big_i)?),
            }))
        }
        LedgerCommand::J { data } => {
            let s = seifert(&data)?;
            done(json!({ "quantity": "j", "data": seifert_json(&s), "value": cyclic(&invariant_j(&s)?) }))
        }
        LedgerCommand::Consistency { census, left, right } => {
            let c = read_census(&census)?;
            let (a, b) = (c.seifert(&left)?, c.seifert(&right)?);
            done(json!({
                "quantity": "consistency",
                "left": seifert_json(&a),
                "right": seifert_json(&b),
                "consistent": seifert_consistency(&a, &b),
            }))
        }
        LedgerCommand::Lift { census, label } => {
            let rec = read_census(&census)?.curve(&label)?;
            done(json!({
                "quantity": "lift",
                "label": rec.label,
                "r": cyclic(&rec.rotation),
                "r2": cyclic(&rec.rotation_mod2),
                "R": rec.rotation_big.as_ref().map(cyclic),
                "coherent": lift_check(&rec),
            }))
        }
        LedgerCommand::Rd { census, left, right } => {
            let c = read_census(&census)?;
            let (x, y) = (c.curve(&left)?, c.curve(&right)?);
            done(json!({
                "quantity": "rotation_difference",
                "left": x.label,
                "right": y.label,
                "value": cyclic(&rotation_difference(&x, &y)?),
            }))
        }
    }
}
