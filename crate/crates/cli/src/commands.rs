use std::io::Read;

use curvetta::arrangement::{
    builtin as named, bundle_extend, unexpected_certify, CertificateVerdict, IncidenceStructure, StructureJson,
};
use curvetta::germ::{derive_germ, validate_germ, DecoratedGerm};
use curvetta::lefschetz::{self, IncidenceMatrix, LefschetzFibration};
use curvetta::mcg::{product_record, records_equal};
use curvetta::plumbing::{isomorphism_classes, ExtendedGraph, GraphJson, PlumbingGraph};
use curvetta::scott;
use curvetta::wiring::{WiringDiagram, WiringJson};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{Common, Failure, Report, Status};

fn read_text(o: &Common) -> Result<(String, String), Failure> {
    let path = o.input.as_ref().or(o.file.as_ref());
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map(|t| (t, p.display().to_string()))
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut t = String::new();
            std::io::stdin()
                .read_to_string(&mut t)
                .map_err(|e| Failure::Input(format!("cannot read stdin: {e}")))?;
            Ok((t, "<stdin>".into()))
        }
    }
}

fn parse<T: DeserializeOwned>(text: &str, name: &str) -> Result<T, Failure> {
    // serde's message already ends with "at line L column C".
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("{name}: {e}")))
}

fn read<T: DeserializeOwned>(o: &Common) -> Result<T, Failure> {
    let (text, name) = read_text(o)?;
    parse(&text, &name)
}

fn has_input(o: &Common) -> bool {
    o.input.is_some() || o.file.is_some()
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn ok(body: Value) -> Report {
    Report { headline: None, body, status: Status::Ok }
}

fn graph(o: &Common) -> Result<PlumbingGraph, Failure> {
    Ok(PlumbingGraph::from_json(&read::<GraphJson>(o)?)?)
}

pub fn validate_graph(o: &Common) -> Result<Report, Failure> {
    let g = graph(o)?;
    let r = g.validate_reduced_cycle();
    let valid = r.tree && r.negative_definite && r.reduced_cycle;
    let mut body = json!({ "report": value(&r), "valid": valid, "slots": g.slot_list().len() });
    if valid {
        body["fundamental_cycle"] = value(&g.fundamental_cycle()?);
    }
    Ok(Report {
        headline: Some(if valid { "VALID" } else { "INVALID" }.into()),
        body,
        status: if valid { Status::Ok } else { Status::Invalid },
    })
}

fn extension_json(e: &ExtendedGraph) -> Result<Value, Failure> {
    let germ = derive_germ(e)?;
    let curvettas: Vec<u64> = e.attached_indices().iter().map(|&i| e.base.id(i)).collect();
    Ok(json!({
        "root": e.root_id(),
        "curvettas": curvettas,
        "germ": value(&germ),
        "germ_report": value(&validate_germ(&germ)),
    }))
}

pub fn germ(o: &Common, slot: usize, curvettas: Option<Vec<u64>>) -> Result<Report, Failure> {
    let g = graph(o)?;
    let e = match curvettas {
        Some(ids) => ExtendedGraph::new(g, ids)?,
        None => g.extension_for_slot(slot)?,
    };
    Ok(ok(extension_json(&e)?))
}

pub fn extensions(o: &Common) -> Result<Report, Failure> {
    let exts = graph(o)?.enumerate_extensions()?;
    let classes = isomorphism_classes(&exts);
    let mut list = Vec::with_capacity(exts.len());
    for (k, e) in exts.iter().enumerate() {
        let mut v = extension_json(e)?;
        v["slot"] = json!(k);
        v["class"] = json!(classes[k]);
        list.push(v);
    }
    let distinct = classes.iter().max().map_or(0, |c| c + 1);
    Ok(ok(json!({ "extensions": list, "classes": distinct })))
}

pub fn scott(o: &Common) -> Result<Report, Failure> {
    let g: DecoratedGerm = read(o)?;
    let g = DecoratedGerm::new(g.weights, g.tangency)?;
    let out = scott::scott_deformation(&g)?;
    Ok(ok(json!({
        "family": value(&out.family),
        "fibration": value(&out.fibration.to_json()),
        "incidence": out.incidence.to_rows(),
    })))
}

pub fn gay_mark(o: &Common, slot: usize) -> Result<Report, Failure> {
    let g = graph(o)?;
    let (m, sets) = scott::gay_mark(&g, slot)?;
    Ok(ok(json!({ "m": m, "sets": sets })))
}

fn wiring(o: &Common) -> Result<WiringDiagram, Failure> {
    Ok(WiringDiagram::from_json(&read::<WiringJson>(o)?)?)
}

pub fn wiring_to_lefschetz(o: &Common) -> Result<Report, Failure> {
    let w = wiring(o)?;
    let f = w.to_lefschetz();
    Ok(ok(json!({
        "fibration": value(&f.to_json()),
        "incidence": f.incidence_matrix().to_rows(),
        "hole_weights": w.hole_weights(),
    })))
}

fn matrix(o: &Common) -> Result<IncidenceMatrix, Failure> {
    Ok(IncidenceMatrix::from_rows(&read::<Vec<Vec<i64>>>(o)?)?)
}

pub fn invariants(o: &Common) -> Result<Report, Failure> {
    let im = matrix(o)?;
    let mut body = value(&lefschetz::invariants(&im));
    body["simply_connected"] = json!(lefschetz::simply_connected_sufficient(&im));
    Ok(ok(body))
}

pub fn compare_monodromy(o: &Common) -> Result<Report, Failure> {
    let w = wiring(o)?;
    let around = w.circumnavigation_monodromy();
    let twists = product_record(w.strands, &w.vanishing_cycles())?;
    let holds = records_equal(&around, &twists);
    Ok(Report {
        headline: Some(if holds { "IDENTITY HOLDS" } else { "IDENTITY FAILS" }.into()),
        body: json!({
            "holds": holds,
            "circumnavigation": value(&around.to_json()),
            "twist_product": value(&twists.to_json()),
        }),
        status: if holds { Status::Ok } else { Status::Invalid },
    })
}

pub fn lantern(o: &Common, column: usize) -> Result<Report, Failure> {
    let im = matrix(o)?;
    if column == 0 || column > im.n() {
        return Err(Failure::Invalid(format!("column {column} out of range 1..={}", im.n())));
    }
    let out = lefschetz::lantern_substitute(&im, column - 1)?;
    let f = LefschetzFibration::from_incidence(&im);
    let g = f.lantern_substitute(column - 1)?;
    let same = records_equal(&f.monodromy(), &g.monodromy());
    Ok(ok(json!({
        "incidence": out.to_rows(),
        "euler_before": lefschetz::invariants(&im).euler,
        "euler_after": lefschetz::invariants(&out).euler,
        "monodromy_preserved": same,
    })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    m: usize,
    sets: Vec<Vec<usize>>,
}

pub fn artin_recognize(o: &Common) -> Result<Report, Failure> {
    let f: FamilyJson = read(o)?;
    let g = lefschetz::artin_recognize(f.m, &f.sets)?;
    Ok(ok(value(&g.to_json())))
}

fn structure(o: &Common, builtin: Option<&str>) -> Result<IncidenceStructure, Failure> {
    match builtin {
        Some(name) => Ok(named(name)?),
        None => Ok(IncidenceStructure::from_json(&read::<StructureJson>(o)?)?),
    }
}

pub fn certify(o: &Common, builtin: Option<&str>, seed: u64, trials: usize) -> Result<Report, Failure> {
    let s = structure(o, builtin)?;
    let c = unexpected_certify(&s, seed, trials)?;
    Ok(Report {
        headline: Some(c.verdict.to_string()),
        status: if c.verdict == CertificateVerdict::Inconclusive { Status::Inconclusive } else { Status::Ok },
        body: value(&c),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeJson {
    /// 1-based line.
    line: usize,
    graph: GraphJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleInput {
    #[serde(default)]
    structure: Option<StructureJson>,
    #[serde(default)]
    trees: Vec<TreeJson>,
}

pub fn bundle(o: &Common, builtin: Option<&str>) -> Result<Report, Failure> {
    let input = if builtin.is_some() && !has_input(o) {
        BundleInput { structure: None, trees: vec![] }
    } else {
        read(o)?
    };
    let s = match (builtin, &input.structure) {
        (Some(name), None) => named(name)?,
        (None, Some(j)) => IncidenceStructure::from_json(j)?,
        (Some(_), Some(_)) => return Err(Failure::Invalid("give the structure either inline or via --builtin".into())),
        (None, None) => return Err(Failure::Invalid("no structure: add \"structure\" or --builtin".into())),
    };
    let mut trees = Vec::with_capacity(input.trees.len());
    for t in &input.trees {
        if t.line == 0 {
            return Err(Failure::Invalid("lines are 1-based".into()));
        }
        trees.push((t.line - 1, PlumbingGraph::from_json(&t.graph)?));
    }
    let out = bundle_extend(&s, &trees)?;
    Ok(ok(value(&out.to_json())))
}
