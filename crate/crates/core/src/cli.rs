//! Algebra-spec files, reports, and the commands behind the `wsa` binary.
//!
//! A spec names a field and then either a family with parameters or a quiver,
//! given with a permutation `f` and weights (a weighted surface algebra) or
//! with explicit relations. An optional `idempotent` list of vertex names
//! replaces the algebra by its corner `eAe`.

use std::collections::BTreeMap;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{field_make, AnyField, Field, FieldSpec};
use crate::homology::{period, projective_module, simple_module, syzygy_orbit, ModuleIso};
use crate::isocheck::{iso_search, socle_equivalent, IsoVerdict, DEFAULT_BUDGET};
use crate::presentation::*;
use crate::quiver::{Quiver, TriangulationQuiver, WeightData};
use crate::rewrite::{idempotent_algebra, quotient_algebra, radical_socle, symmetrizing_form, FiniteDimAlgebra};

pub const SPEC_SCHEMA: &str = "wsa-spec/1";
pub const REPORT_SCHEMA: &str = "wsa-report/1";
/// Environment variable overriding the default node budget.
pub const BUDGET_ENV: &str = "WSA_BUDGET";
const DEFAULT_DEGREE_CAP: usize = 40;

/// A field given by short name (`"GF(4)"`, `"Q"`) or in full.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDecl {
    Short(String),
    Full(FieldSpec),
}

impl FieldDecl {
    pub fn spec(&self) -> Result<FieldSpec> {
        match self {
            FieldDecl::Short(s) => FieldSpec::parse_short(s),
            FieldDecl::Full(s) => Ok(s.clone()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub tag: String,
    #[serde(default)]
    pub params: Map<String, Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    /// `[name, source, target]`
    pub arrows: Vec<(String, String, String)>,
}

/// Weights and parameters keyed by any arrow of the g-orbit; `b` by border vertex.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsSpec {
    pub m: BTreeMap<String, u32>,
    #[serde(default)]
    pub c: BTreeMap<String, Value>,
    #[serde(default)]
    pub b: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// free-form labels; the corpus marks weighted surface type with `surface-type`
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
    pub field: FieldDecl,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotent: Option<Vec<String>>,
    #[serde(default)]
    pub options: Options,
}

impl AlgebraSpecFile {
    pub fn parse(text: &str) -> Result<AlgebraSpecFile> {
        let s: AlgebraSpecFile = serde_json::from_str(text).map_err(|e| Error::input(format!("spec: {e}")))?;
        s.check()?;
        Ok(s)
    }

    pub fn load(path: &FsPath) -> Result<(AlgebraSpecFile, String)> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        let spec = AlgebraSpecFile::parse(&text)?;
        Ok((spec, sha256_hex(text.as_bytes())))
    }

    fn check(&self) -> Result<()> {
        if let Some(s) = &self.schema {
            if s != SPEC_SCHEMA {
                return Err(Error::input(format!("unsupported schema {s:?}, expected {SPEC_SCHEMA:?}")));
            }
        }
        match (&self.family, &self.quiver) {
            (Some(_), None) => {
                if self.f.is_some() || self.weights.is_some() || self.relations.is_some() {
                    return Err(Error::input("family specs take no f, weights or relations"));
                }
            }
            (None, Some(_)) => match (&self.f, &self.weights, &self.relations) {
                (Some(_), Some(_), None) | (None, None, Some(_)) => {}
                _ => return Err(Error::input("a quiver needs either f and weights, or relations")),
            },
            _ => return Err(Error::input("exactly one of family and quiver is required")),
        }
        Ok(())
    }

    pub fn display_name(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        match &self.family {
            Some(fam) => fam.tag.clone(),
            None => "quiver".into(),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// A built algebra; `surface` is kept for weighted surface algebras on their
/// full vertex set, which the bimodule check needs.
pub struct Built<F: Field> {
    pub name: String,
    pub algebra: FiniteDimAlgebra<F>,
    pub surface: Option<SurfaceData<F>>,
}

struct Params<'a, F: Field> {
    field: &'a F,
    map: &'a Map<String, Value>,
}

impl<F: Field> Params<'_, F> {
    fn value(&self, key: &str) -> Option<&Value> {
        self.map.get(key)
    }

    fn elem_of(&self, key: &str, v: &Value) -> Result<F::Elem> {
        let s = match v {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return Err(Error::input(format!("parameter {key}: expected a field element"))),
        };
        self.field.parse(&s)
    }

    fn elem(&self, key: &str, default: Option<&str>) -> Result<F::Elem> {
        match (self.value(key), default) {
            (Some(v), _) => self.elem_of(key, v),
            (None, Some(d)) => self.field.parse(d),
            (None, None) => Err(Error::input(format!("missing parameter {key}"))),
        }
    }

    fn triple(&self, key: &str, default: Option<&[F::Elem; 3]>) -> Result<[F::Elem; 3]> {
        match (self.value(key), default) {
            (Some(Value::Array(xs)), _) if xs.len() == 3 => {
                Ok([self.elem_of(key, &xs[0])?, self.elem_of(key, &xs[1])?, self.elem_of(key, &xs[2])?])
            }
            (Some(_), _) => Err(Error::input(format!("parameter {key}: expected three field elements"))),
            (None, Some(d)) => Ok(d.clone()),
            (None, None) => Err(Error::input(format!("missing parameter {key}"))),
        }
    }

    fn int(&self, key: &str, default: Option<u64>) -> Result<u64> {
        match (self.value(key), default) {
            (Some(v), _) => v.as_u64().ok_or_else(|| Error::input(format!("parameter {key}: expected a natural number"))),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(Error::input(format!("missing parameter {key}"))),
        }
    }

    fn only(&self, keys: &[&str]) -> Result<()> {
        match self.map.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(Error::input(format!("unknown parameter {k}"))),
            None => Ok(()),
        }
    }
}

/// Family tags accepted in specs.
pub const FAMILIES: &[&str] = &["A", "B", "D", "Q2A", "Q2B3", "disc_2_2", "two_vertex", "corner_b", "corner_d", "triangle"];

enum Source<F: Field> {
    Plain(Presentation<F>),
    Surface(SurfaceData<F>),
}

fn family_source<F: Field>(field: &F, fam: &FamilySpec) -> Result<Source<F>> {
    let p = Params { field, map: &fam.params };
    let small = |k: u64| u32::try_from(k).map_err(|_| Error::input("weight too large"));
    Ok(match fam.tag.as_str() {
        "A" => {
            p.only(&["m", "c", "b"])?;
            Source::Plain(family_a(field, p.int("m", None)? as usize, &p.elem("c", Some("1"))?, &p.elem("b", Some("0"))?)?)
        }
        "B" => {
            p.only(&["r", "c", "b"])?;
            Source::Plain(family_b(field, p.int("r", None)? as usize, &p.elem("c", Some("1"))?, &p.elem("b", Some("0"))?)?)
        }
        "D" => {
            p.only(&["b", "c", "l"])?;
            let ones = [field.one(), field.one(), field.one()];
            let c = p.triple("c", Some(&ones))?;
            let l = p.triple("l", Some(&c))?;
            Source::Plain(family_d_split(field, &p.triple("b", None)?, &c, &l)?)
        }
        "Q2A" => {
            p.only(&["k", "b"])?;
            Source::Plain(family_q2a(field, p.int("k", None)? as usize, &p.elem("b", None)?)?)
        }
        "Q2B3" => {
            p.only(&["t", "a", "b"])?;
            Source::Plain(family_q2b3(field, p.int("t", None)? as usize, &p.elem("a", Some("1"))?, &p.elem("b", None)?)?)
        }
        "disc_2_2" => {
            p.only(&["c", "b3", "b4"])?;
            Source::Surface(disc_2_2(field, &p.elem("c", Some("1"))?, &p.elem("b3", None)?, &p.elem("b4", None)?)?)
        }
        "two_vertex" => {
            p.only(&["m_alpha", "m_eta", "c_alpha", "c_eta", "b"])?;
            Source::Surface(two_vertex(
                field,
                small(p.int("m_alpha", None)?)?,
                small(p.int("m_eta", None)?)?,
                &p.elem("c_alpha", Some("1"))?,
                &p.elem("c_eta", Some("1"))?,
                &p.elem("b", None)?,
            )?)
        }
        "corner_b" => {
            p.only(&["r", "c", "c2", "bi", "br"])?;
            Source::Surface(corner_b_config(
                field,
                small(p.int("r", None)?)?,
                &p.elem("c", Some("1"))?,
                &p.elem("c2", Some("1"))?,
                &p.elem("bi", None)?,
                &p.elem("br", Some("0"))?,
            )?)
        }
        "corner_d" => {
            p.only(&["m_lambda", "c", "c_lambda", "b1", "b3"])?;
            Source::Surface(corner_d_config(
                field,
                small(p.int("m_lambda", Some(2))?)?,
                &p.elem("c", Some("1"))?,
                &p.elem("c_lambda", Some("1"))?,
                &p.elem("b1", None)?,
                &p.elem("b3", Some("0"))?,
            )?)
        }
        "triangle" => {
            p.only(&["m", "c", "b"])?;
            Source::Surface(triangle_config(field, small(p.int("m", Some(1))?)?, &p.elem("c", Some("1"))?, &p.triple("b", None)?)?)
        }
        t => return Err(Error::input(format!("unknown family {t:?}; known: {}", FAMILIES.join(", ")))),
    })
}

fn quiver_source<F: Field>(field: &F, spec: &AlgebraSpecFile) -> Result<Source<F>> {
    let qs = spec.quiver.as_ref().expect("checked");
    let vs: Vec<&str> = qs.vertices.iter().map(|s| s.as_str()).collect();
    let arrows: Vec<(&str, &str, &str)> = qs.arrows.iter().map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str())).collect();
    let q = Quiver::new(&vs, &arrows)?;
    if let Some(rels) = &spec.relations {
        let rels: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
        return Ok(Source::Plain(Presentation::from_strings(field, q, &rels, spec.display_name())?));
    }
    let tq = TriangulationQuiver::from_cycles(q, spec.f.as_deref().expect("checked"))?;
    let ws = spec.weights.as_ref().expect("checked");
    let p = Params { field, map: &Map::new() };
    let no = tq.g_orbits.len();
    let mut m: Vec<Option<u32>> = vec![None; no];
    let mut c: Vec<F::Elem> = vec![field.one(); no];
    for (arrow, &w) in &ws.m {
        let o = tq.orbit_by_arrow(arrow).ok_or_else(|| Error::input(format!("weights: unknown arrow {arrow}")))?;
        if m[o].replace(w).is_some_and(|old| old != w) {
            return Err(Error::input(format!("weights: conflicting m on the orbit of {arrow}")));
        }
    }
    for (arrow, v) in &ws.c {
        let o = tq.orbit_by_arrow(arrow).ok_or_else(|| Error::input(format!("weights: unknown arrow {arrow}")))?;
        c[o] = p.elem_of(arrow, v)?;
    }
    let m = m
        .into_iter()
        .enumerate()
        .map(|(o, x)| x.ok_or_else(|| Error::input(format!("weights: no m for the g-orbit {}", tq.orbit_string(o)))))
        .collect::<Result<Vec<_>>>()?;
    let mut b = BTreeMap::new();
    for (v, x) in &ws.b {
        let i = tq.quiver.vertex(v).ok_or_else(|| Error::input(format!("weights: unknown vertex {v}")))?;
        b.insert(i, p.elem_of(v, x)?);
    }
    let w = WeightData::new(field, &tq, m, c, b)?;
    Ok(Source::Surface(SurfaceData { tq, w }))
}

/// Builds the algebra a spec describes.
pub fn build<F: Field>(field: &F, spec: &AlgebraSpecFile) -> Result<Built<F>> {
    let cap = spec.options.degree_cap.unwrap_or(DEFAULT_DEGREE_CAP);
    let src = match &spec.family {
        Some(fam) => family_source(field, fam)?,
        None => quiver_source(field, spec)?,
    };
    let (algebra, surface) = match src {
        Source::Plain(p) => (quotient_algebra(&p, cap)?, None),
        Source::Surface(sd) => {
            let p = sd.gabriel_presentation(field, &sd.weighted_surface_relations(field))?;
            (quotient_algebra(&p, cap)?, Some(sd))
        }
    };
    let Some(names) = &spec.idempotent else {
        return Ok(Built { name: spec.display_name(), algebra, surface });
    };
    let vs = names
        .iter()
        .map(|v| algebra.quiver.vertex(v).ok_or_else(|| Error::input(format!("idempotent: unknown vertex {v}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Built { name: spec.display_name(), algebra: idempotent_algebra(&algebra, &vs)?, surface: None })
}

/// Runs `body` with the concrete field of a spec.
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match field_make(&$spec)? {
            AnyField::Finite($f) => $body,
            AnyField::Rational($f) => $body,
        }
    };
}

/// A finished command: the JSON report and the process exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

pub struct Input {
    pub path: String,
    pub spec: AlgebraSpecFile,
    pub sha256: String,
}

impl Input {
    pub fn load(path: &FsPath) -> Result<Input> {
        let (spec, sha256) = AlgebraSpecFile::load(path)?;
        Ok(Input { path: path.display().to_string(), spec, sha256 })
    }

    pub fn from_text(label: &str, text: &str) -> Result<Input> {
        Ok(Input { path: label.into(), spec: AlgebraSpecFile::parse(text)?, sha256: sha256_hex(text.as_bytes()) })
    }
}

fn envelope(command: Value, inputs: &[&Input], field: Option<&FieldSpec>, result: Value) -> Value {
    let mut r = json!({
        "schema": REPORT_SCHEMA,
        "tool": "wsa",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "inputs": inputs.iter().map(|i| json!({"path": i.path, "sha256": i.sha256})).collect::<Vec<_>>(),
    });
    if let Some(fs) = field {
        r["field"] = json!({"name": fs.short_name(), "spec": fs});
    }
    r["result"] = result;
    r
}

/// Dimension, basis, Cartan matrix, socle and symmetry of an algebra, plus the
/// multiplication table as sparse `[i, j, k, coeff]` triples.
pub fn algebra_summary<F: Field>(a: &FiniteDimAlgebra<F>) -> Value {
    let f = &a.field;
    let r = radical_socle(a);
    let form = symmetrizing_form(a, &r);
    let mut table = Vec::new();
    for (i, row) in a.mult.iter().enumerate() {
        for (j, prod) in row.iter().enumerate() {
            for (k, c) in prod {
                table.push(json!([i, j, k, f.format(c)]));
            }
        }
    }
    json!({
        "origin": a.origin,
        "dimension": a.dim(),
        "vertices": a.quiver.vertices,
        "arrows": a.quiver.arrows.iter().map(|x| json!([x.name, a.quiver.vertices[x.source], a.quiver.vertices[x.target]])).collect::<Vec<_>>(),
        "basis": a.labels,
        "cartan": a.cartan_matrix(),
        "loewy_layers": r.layer_dims(),
        "socle": r.socle.iter().map(|v| a.format_vec(v)).collect::<Vec<_>>(),
        "symmetric": form.is_some(),
        "symmetrizing_form": form.map(|s| a.format_vec(&s.phi)),
        "table": table,
    })
}

pub fn cmd_build(input: &Input) -> Result<Outcome> {
    let fs = input.spec.field.spec()?;
    let result = with_field!(fs, |f| {
        let b = build(&f, &input.spec)?;
        let mut v = algebra_summary(&b.algebra);
        v["name"] = json!(b.name);
        v
    });
    Ok(Outcome { report: envelope(json!({"name": "build"}), &[input], Some(&fs), result), code: 0 })
}

/// `S<v>` or `P<v>` with `v` a vertex name, optionally `S_<v>`.
pub fn parse_module_name(s: &str) -> Result<(bool, String)> {
    let (kind, rest) = s.split_at(s.chars().next().map(|c| c.len_utf8()).unwrap_or(0));
    let simple = match kind {
        "S" => true,
        "P" => false,
        _ => return Err(Error::input(format!("module {s:?}: expected S<vertex> or P<vertex>"))),
    };
    let v = rest.strip_prefix('_').unwrap_or(rest);
    if v.is_empty() {
        return Err(Error::input(format!("module {s:?}: missing vertex")));
    }
    Ok((simple, v.to_string()))
}

pub fn cmd_syzygy(input: &Input, module: &str, steps: usize) -> Result<Outcome> {
    let fs = input.spec.field.spec()?;
    let (simple, vname) = parse_module_name(module)?;
    let (result, code) = with_field!(fs, |f| {
        let b = build(&f, &input.spec)?;
        let a = &b.algebra;
        let v = a.quiver.vertex(&vname).ok_or_else(|| Error::input(format!("unknown vertex {vname}")))?;
        let m = if simple { simple_module(a, v) } else { projective_module(a, v) };
        let orbit = syzygy_orbit(a, &m, steps);
        let p = period(&orbit);
        let unsure = orbit.iter().any(|s| s.iso_to_start == ModuleIso::ProbablyNotIso);
        let (verdict, code) = match p {
            Some(n) => (format!("PERIODIC({n})"), 0),
            None if orbit.last().is_some_and(|s| s.dimension == 0) => ("PROJECTIVE".to_string(), 0),
            None if unsure => (format!("INCONCLUSIVE(up to {steps})"), 4),
            None => (format!("NOT-PERIODIC(up to {steps})"), 1),
        };
        let res = json!({
            "name": b.name,
            "algebra_dimension": a.dim(),
            "module": module,
            "module_dimension": m.dim(),
            "orbit": orbit,
            "period": p,
            "verdict": verdict,
        });
        (res, code)
    });
    Ok(Outcome { report: envelope(json!({"name": "syzygy", "module": module, "steps": steps}), &[input], Some(&fs), result), code })
}

/// Budget from the flag, then the input file, then the environment, then the default.
pub fn resolve_budget(flag: Option<u64>, spec: &AlgebraSpecFile) -> Result<u64> {
    if let Some(b) = flag.or(spec.options.budget) {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Error::input(format!("{BUDGET_ENV}={s:?} is not a number"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

pub fn verdict_code(v: &IsoVerdict) -> i32 {
    match v {
        IsoVerdict::Iso { .. } => 0,
        IsoVerdict::NotIso { .. } => 1,
        IsoVerdict::Inconclusive { .. } => 4,
    }
}

fn compare(a: &Input, b: &Input, budget: Option<u64>, socle: bool) -> Result<Outcome> {
    let fs = a.spec.field.spec()?;
    let fb = b.spec.field.spec()?;
    if fam_spec(&field_make(&fs)?) != fam_spec(&field_make(&fb)?) {
        return Err(Error::input(format!("fields differ: {} and {}", fs.short_name(), fb.short_name())));
    }
    let budget = resolve_budget(budget, &a.spec)?;
    let (result, code) = with_field!(fs, |f| {
        let x = build(&f, &a.spec)?;
        let y = build(&f, &b.spec)?;
        let v = if socle { socle_equivalent(&x.algebra, &y.algebra, budget)? } else { iso_search(&x.algebra, &y.algebra, budget)? };
        let code = verdict_code(&v);
        (json!({"a": x.name, "b": y.name, "budget": budget, "verdict": v}), code)
    });
    let name = if socle { "socle-equiv" } else { "iso" };
    Ok(Outcome { report: envelope(json!({"name": name, "budget": budget}), &[a, b], Some(&fs), result), code })
}

fn fam_spec(f: &AnyField) -> FieldSpec {
    match f {
        AnyField::Finite(x) => x.spec(),
        AnyField::Rational(x) => x.spec(),
    }
}

pub fn cmd_iso(a: &Input, b: &Input, budget: Option<u64>) -> Result<Outcome> {
    compare(a, b, budget, false)
}

pub fn cmd_socle_equiv(a: &Input, b: &Input, budget: Option<u64>) -> Result<Outcome> {
    compare(a, b, budget, true)
}

/// Runs the named suite; any failing check gives exit code 1. Wall-clock
/// times are reported only with `timing`, so reports stay byte-identical.
pub fn cmd_verify_paper(suite: &str, timing: bool) -> Result<Outcome> {
    let mut criteria = Vec::new();
    let mut all = true;
    for &c in crate::suites::suite_criteria(suite)? {
        let r = crate::suites::run(c)?;
        all &= r.passed();
        let mut v = json!({
            "criterion": r.criterion,
            "title": r.title,
            "passed": r.passed(),
            "limit_s": r.limit_s,
            "checks": r.checks,
        });
        if timing {
            v["elapsed_ms"] = json!(r.elapsed.as_millis() as u64);
        }
        criteria.push(v);
    }
    let result = json!({"suite": suite, "passed": all, "criteria": criteria});
    Ok(Outcome { report: envelope(json!({"name": "verify-paper", "suite": suite}), &[], None, result), code: if all { 0 } else { 1 } })
}

/// Report for a failed command; the exit code comes from the error class.
pub fn error_outcome(command: &str, e: &Error) -> Outcome {
    let report = envelope(json!({"name": command}), &[], None, json!({"error": e.to_string()}));
    Outcome { report, code: e.exit_code() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(text: &str) -> Input {
        Input::from_text("inline", text).unwrap()
    }

    #[test]
    fn family_and_quiver_modes() {
        let d = input(r#"{"field": "GF(2)", "family": {"tag": "D", "params": {"b": [0, 0, 1]}}}"#);
        let out = cmd_build(&d).unwrap();
        assert_eq!(out.report["result"]["dimension"], 36);
        assert_eq!(out.report["result"]["symmetric"], true);
        let tv = input(
            r#"{"field": "GF(3)", "quiver": {"vertices": ["1", "2"],
                 "arrows": [["alpha","1","1"],["beta","1","2"],["gamma","2","1"],["eta","2","2"]]},
                "f": "(alpha)(beta eta gamma)",
                "weights": {"m": {"alpha": 2, "eta": 2}, "c": {"alpha": "2"}, "b": {"1": 1}}}"#,
        );
        assert_eq!(cmd_build(&tv).unwrap().report["result"]["dimension"], 20);
    }

    #[test]
    fn malformed_specs_are_input_errors() {
        for text in [
            "{",
            r#"{"field": "GF(6)", "family": {"tag": "A", "params": {"m": 2}}}"#,
            r#"{"field": "GF(2)", "family": {"tag": "Z"}}"#,
            r#"{"field": "GF(2)", "family": {"tag": "A", "params": {"m": 2, "q": 1}}}"#,
            r#"{"field": "GF(2)"}"#,
            r#"{"field": "GF(2)", "family": {"tag": "A", "params": {"m": 2}}, "relations": []}"#,
        ] {
            let err = Input::from_text("x", text).and_then(|i| cmd_build(&i)).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{text}");
        }
    }

    #[test]
    fn relations_mode_and_corner() {
        let ctl = input(r#"{"field": "GF(2)", "quiver": {"vertices": ["1", "2"], "arrows": [["x","1","2"]]}, "relations": []}"#);
        let r = cmd_build(&ctl).unwrap().report;
        assert_eq!(r["result"]["dimension"], 3);
        assert_eq!(r["result"]["symmetric"], false);
        let c = input(r#"{"field": "GF(2)", "family": {"tag": "disc_2_2", "params": {"b3": 1, "b4": 0}}, "idempotent": ["3"]}"#);
        assert_eq!(cmd_build(&c).unwrap().report["result"]["dimension"], 12);
    }

    #[test]
    fn iso_exit_codes_and_determinism() {
        let a0 = input(r#"{"field": "GF(2)", "family": {"tag": "A", "params": {"m": 2, "b": 0}}}"#);
        let a1 = input(r#"{"field": "GF(2)", "family": {"tag": "A", "params": {"m": 2, "b": 1}}}"#);
        let out = cmd_iso(&a0, &a1, None).unwrap();
        assert_eq!(out.code, 1);
        assert_eq!(out.report["result"]["verdict"]["result"], "NOT-ISO");
        assert_eq!(serde_json::to_string(&out.report).unwrap(), serde_json::to_string(&cmd_iso(&a0, &a1, None).unwrap().report).unwrap());
        assert_eq!(cmd_iso(&a0, &a0, None).unwrap().code, 0);
        assert_eq!(cmd_iso(&a0, &a1, Some(1)).unwrap().code, 4);
        assert_eq!(cmd_socle_equiv(&a0, &a1, None).unwrap().code, 0);
        let g3 = input(r#"{"field": "GF(3)", "family": {"tag": "A", "params": {"m": 2, "b": 0}}}"#);
        assert_eq!(cmd_iso(&a0, &g3, None).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn syzygy_command() {
        let q = input(r#"{"field": "GF(2)", "family": {"tag": "Q2A", "params": {"k": 2, "b": 1}}}"#);
        let out = cmd_syzygy(&q, "S1", 6).unwrap();
        assert_eq!(out.code, 0);
        assert_eq!(out.report["result"]["period"], 4);
        assert_eq!(cmd_syzygy(&q, "P_2", 3).unwrap().report["result"]["verdict"], "PROJECTIVE");
        let b2 = input(r#"{"field": "GF(2)", "family": {"tag": "B", "params": {"r": 2}}}"#);
        assert_eq!(cmd_syzygy(&b2, "S1", 4).unwrap().code, 1);
        assert!(cmd_syzygy(&q, "X1", 3).is_err());
    }
}
