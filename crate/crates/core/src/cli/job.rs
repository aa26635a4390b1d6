//! Job specifications: a preset or inline lattice data, plus output flags.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::intlattice::{IntMatrix, QVector};
use crate::realform::{e7_preset, eigenspace_involution, involution_from_matrix_lattice_only, involution_from_matrix, E7Form, Involution};
use crate::rootdata::{
    build_preset, validate, CartanType, DatumKind, DisplayWeight, Isogeny, NamedVector, PresetSpec, RootDatum, SimpleReal,
};

/// Named preset with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresetSource {
    Standard(PresetSpec),
    E7(E7Form),
}

impl PresetSource {
    /// Parses a preset name such as `GL`, `PSO`, `E7` or `TORUS_WEIL`.
    /// `param` looks up integer and string parameters by key.
    pub fn from_params(name: &str, param: &dyn Fn(&str) -> Result<Option<String>>) -> Result<PresetSource> {
        let int = |key: &str| -> Result<usize> {
            let v = param(key)?.ok_or_else(|| Error::Parse(format!("preset {name} needs parameter {key:?}")))?;
            v.parse().map_err(|_| Error::Parse(format!("parameter {key:?} must be a non-negative integer, got {v:?}")))
        };
        let text = |key: &str| -> Result<String> {
            param(key)?.ok_or_else(|| Error::Parse(format!("preset {name} needs parameter {key:?}")))
        };
        let key = name.trim().to_ascii_uppercase().replace('-', "_");
        let spec = match key.as_str() {
            "GL" => PresetSpec::Gl { n: int("n")? },
            "SO" => PresetSpec::So { p: int("p")?, q: int("q")? },
            "PSO" => PresetSpec::Pso { p: int("p")?, q: int("q")? },
            "TORUS_SPLIT" | "SPLIT_TORUS" => PresetSpec::TorusSplit { n: int("n")? },
            "TORUS_COMPACT" | "COMPACT_TORUS" => PresetSpec::TorusCompact { n: int("n")? },
            "TORUS_WEIL" | "WEIL" => PresetSpec::TorusWeil,
            "E7" => return Ok(PresetSource::E7(text("form")?.parse()?)),
            "SIMPLE" => PresetSpec::Simple {
                cartan: text("type")?.parse::<CartanType>()?,
                rank: int("rank")?,
                isogeny: text("isogeny")?.parse::<Isogeny>()?,
                real: Some(param("real")?.unwrap_or_else(|| "split".into()).parse::<SimpleReal>()?),
            },
            _ => return Err(Error::Parse(format!("unknown preset {name:?}"))),
        };
        Ok(PresetSource::Standard(spec))
    }

    pub fn build(&self) -> Result<(RootDatum, Involution)> {
        match self {
            PresetSource::E7(form) => e7_preset(*form),
            PresetSource::Standard(spec) => {
                let (rd, inv) = build_preset(spec)?;
                let inv = inv.ok_or_else(|| Error::InvalidParams("preset has no real form".into()))?;
                Ok((rd, inv))
            }
        }
    }
}

/// How θ is given for inline data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaSource {
    Matrix(IntMatrix),
    Eigenspaces { split: Vec<QVector>, compact: Vec<QVector> },
}

/// Raw lattice data: `X∨ = ℤⁿ`, coroot generators, θ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InlineData {
    pub name: String,
    pub rank: usize,
    pub coroots: Vec<QVector>,
    pub theta: ThetaSource,
    pub display_weights: Option<Vec<DisplayWeight>>,
    pub named_vectors: Option<Vec<NamedVector>>,
    /// Require θ to permute the coroots up to sign.
    pub check_coroot_set: bool,
}

impl InlineData {
    pub fn build(&self) -> Result<(RootDatum, Involution)> {
        let n = self.rank;
        let kind = if self.coroots.is_empty() { DatumKind::Torus } else { DatumKind::Reductive };
        let torus = RootDatum::torus(self.name.clone(), n);
        let mut rd = RootDatum::new(self.name.clone(), kind, n, self.coroots.clone())?
            .with_display_weights(self.display_weights.clone().unwrap_or_else(|| torus.display_weights().to_vec()))?
            .with_named_vectors(self.named_vectors.clone().unwrap_or_else(|| torus.named_vectors().to_vec()))?;
        let problems = validate(&rd);
        if !problems.is_empty() {
            return Err(Error::InvalidParams(problems.join("; ")));
        }
        if rd.coroots().rank() == n && n > 0 {
            rd = RootDatum::new(self.name.clone(), DatumKind::Semisimple, n, self.coroots.clone())?
                .with_display_weights(rd.display_weights().to_vec())?
                .with_named_vectors(rd.named_vectors().to_vec())?;
        }
        let inv = match &self.theta {
            ThetaSource::Matrix(m) if self.check_coroot_set => involution_from_matrix(&rd, m)?,
            ThetaSource::Matrix(m) => involution_from_matrix_lattice_only(&rd, m)?,
            ThetaSource::Eigenspaces { split, compact } => eigenspace_involution(&rd, split, compact, self.check_coroot_set)?,
        };
        Ok((rd, inv.renamed("inline")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Preset(PresetSource),
    Inline(InlineData),
}

/// Which parts of the report to compute.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Outputs {
    pub pi0: bool,
    pub h1: bool,
    pub reps: bool,
    pub oracle: bool,
}

impl Outputs {
    pub fn any(&self) -> bool {
        self.pi0 || self.h1 || self.reps || self.oracle
    }

    pub fn union(self, o: Outputs) -> Outputs {
        Outputs { pi0: self.pi0 || o.pi0, h1: self.h1 || o.h1, reps: self.reps || o.reps, oracle: self.oracle || o.oracle }
    }

    /// With nothing selected, π₀ and its representatives.
    pub fn or_default(self) -> Outputs {
        if self.any() {
            self
        } else {
            Outputs { pi0: true, reps: true, ..Outputs::default() }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "json" | "json-like" | "structured" => Ok(Format::Json),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub source: Source,
    pub outputs: Outputs,
    pub format: Format,
}

impl JobSpec {
    pub fn build(&self) -> Result<(RootDatum, Involution)> {
        match &self.source {
            Source::Preset(p) => p.build(),
            Source::Inline(d) => d.build(),
        }
    }
}

const PRESET_KEYS: &[&str] = &["preset", "n", "p", "q", "form", "type", "rank", "isogeny", "real"];
const INLINE_KEYS: &[&str] =
    &["name", "rank", "coroots", "theta", "split_span", "compact_span", "display_weights", "named_vectors", "check_coroot_set"];
const COMMON_KEYS: &[&str] = &["outputs", "format"];

/// Parses a JSON job document.
pub fn parse_jobspec(input: &str) -> Result<JobSpec> {
    let doc: Value = serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| Error::Parse("top level must be an object".into()))?;

    let is_preset = obj.contains_key("preset");
    let allowed: &[&str] = if is_preset { PRESET_KEYS } else { INLINE_KEYS };
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) && !COMMON_KEYS.contains(&k.as_str()) {
            return Err(Error::Parse(format!("unexpected field {k:?}")));
        }
    }

    let source = if is_preset {
        let name = obj["preset"].as_str().ok_or_else(|| Error::Parse("field \"preset\": expected a string".into()))?;
        let param = |k: &str| -> Result<Option<String>> {
            match obj.get(k) {
                None => Ok(None),
                Some(Value::String(s)) => Ok(Some(s.clone())),
                Some(Value::Number(x)) => Ok(Some(x.to_string())),
                Some(_) => Err(Error::Parse(format!("field {k:?}: expected a string or integer"))),
            }
        };
        Source::Preset(PresetSource::from_params(name, &param)?)
    } else {
        Source::Inline(parse_inline(obj)?)
    };

    let mut outputs = Outputs::default();
    if let Some(v) = obj.get("outputs") {
        let arr = v.as_array().ok_or_else(|| Error::Parse("field \"outputs\": expected an array".into()))?;
        for (i, x) in arr.iter().enumerate() {
            match x.as_str() {
                Some("pi0") => outputs.pi0 = true,
                Some("h1") => outputs.h1 = true,
                Some("reps") | Some("representatives") => outputs.reps = true,
                Some("oracle") => outputs.oracle = true,
                _ => return Err(Error::Parse(format!("outputs[{i}]: expected one of pi0, h1, reps, oracle"))),
            }
        }
    }
    let format = match obj.get("format") {
        None => Format::Text,
        Some(Value::String(s)) => s.parse()?,
        Some(_) => return Err(Error::Parse("field \"format\": expected a string".into())),
    };
    Ok(JobSpec { source, outputs, format })
}

fn parse_inline(obj: &Map<String, Value>) -> Result<InlineData> {
    let rank = obj
        .get("rank")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("field \"rank\": expected a non-negative integer".into()))? as usize;
    let coroots = match obj.get("coroots") {
        None => return Err(Error::Parse("missing field \"coroots\"".into())),
        Some(v) => rational_rows(v, rank, "coroots")?,
    };
    let theta = match (obj.get("theta"), obj.get("split_span"), obj.get("compact_span")) {
        (Some(t), None, None) => {
            let rows = integer_rows(t, rank, "theta")?;
            if rows.len() != rank {
                return Err(Error::Parse(format!("field \"theta\": expected {rank} rows, found {}", rows.len())));
            }
            ThetaSource::Matrix(IntMatrix::from_bigint_rows(rank, rows)?)
        }
        (None, s, c) if s.is_some() || c.is_some() => ThetaSource::Eigenspaces {
            split: s.map(|v| rational_rows(v, rank, "split_span")).transpose()?.unwrap_or_default(),
            compact: c.map(|v| rational_rows(v, rank, "compact_span")).transpose()?.unwrap_or_default(),
        },
        (None, None, None) => return Err(Error::Parse("missing \"theta\" or \"split_span\"/\"compact_span\"".into())),
        _ => return Err(Error::Parse("give either \"theta\" or eigenspace spans, not both".into())),
    };
    let display_weights = match obj.get("display_weights") {
        None => None,
        Some(v) => Some(
            labelled(v, rank, "display_weights", "label", "weight")?
                .into_iter()
                .map(|(label, weight)| DisplayWeight { label, weight })
                .collect(),
        ),
    };
    let named_vectors = match obj.get("named_vectors") {
        None => None,
        Some(v) => Some(
            labelled(v, rank, "named_vectors", "name", "vector")?
                .into_iter()
                .map(|(name, vector)| NamedVector { name, vector })
                .collect(),
        ),
    };
    let check_coroot_set = match obj.get("check_coroot_set") {
        None => true,
        Some(Value::Bool(b)) => *b,
        Some(_) => return Err(Error::Parse("field \"check_coroot_set\": expected a boolean".into())),
    };
    let name = match obj.get("name") {
        None => format!("inline datum of rank {rank}"),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(Error::Parse("field \"name\": expected a string".into())),
    };
    Ok(InlineData { name, rank, coroots, theta, display_weights, named_vectors, check_coroot_set })
}

fn rows_of<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("field {field:?}: expected an array of rows")))
}

fn rational_rows(v: &Value, rank: usize, field: &str) -> Result<Vec<QVector>> {
    rows_of(v, field)?.iter().enumerate().map(|(i, r)| rational_row(r, rank, &format!("{field}[{i}]"))).collect()
}

fn integer_rows(v: &Value, rank: usize, field: &str) -> Result<Vec<Vec<BigInt>>> {
    rational_rows(v, rank, field)?
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            r.into_iter()
                .map(|x| if x.is_integer() { Ok(x.to_integer()) } else { Err(Error::Parse(format!("{field}[{i}]: entries must be integers"))) })
                .collect()
        })
        .collect()
}

fn rational_row(v: &Value, rank: usize, at: &str) -> Result<QVector> {
    let arr = v.as_array().ok_or_else(|| Error::Parse(format!("{at}: expected an array")))?;
    if arr.len() != rank {
        return Err(Error::Parse(format!("{at}: expected {rank} entries, found {}", arr.len())));
    }
    arr.iter().enumerate().map(|(j, x)| rational(x).ok_or_else(|| Error::Parse(format!("{at}[{j}]: expected an integer or \"a/b\"")))).collect()
}

/// An integer, or a string `"a"` / `"a/b"`.
fn rational(v: &Value) -> Option<BigRational> {
    match v {
        Value::Number(n) => n.as_i64().map(|x| BigRational::from_integer(BigInt::from(x))),
        Value::String(s) => {
            let s = s.trim();
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a.trim().parse::<BigInt>().ok()?, b.trim().parse::<BigInt>().ok()?),
                None => (s.parse::<BigInt>().ok()?, BigInt::one()),
            };
            if den.is_zero() {
                None
            } else {
                Some(BigRational::new(num, den))
            }
        }
        _ => None,
    }
}

fn labelled(v: &Value, rank: usize, field: &str, label_key: &str, vec_key: &str) -> Result<Vec<(String, QVector)>> {
    rows_of(v, field)?
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let at = format!("{field}[{i}]");
            let o = item.as_object().ok_or_else(|| Error::Parse(format!("{at}: expected an object")))?;
            let label = o
                .get(label_key)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse(format!("{at}: missing string {label_key:?}")))?;
            let vec = o.get(vec_key).ok_or_else(|| Error::Parse(format!("{at}: missing {vec_key:?}")))?;
            Ok((label.to_owned(), rational_row(vec, rank, &format!("{at}.{vec_key}"))?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_jobs() {
        let j = parse_jobspec(r#"{"preset":"GL","n":8}"#).unwrap();
        assert_eq!(j.source, Source::Preset(PresetSource::Standard(PresetSpec::Gl { n: 8 })));
        let j = parse_jobspec(r#"{"preset":"E7","form":"EVII"}"#).unwrap();
        assert_eq!(j.source, Source::Preset(PresetSource::E7(E7Form::EVII)));
        let j = parse_jobspec(r#"{"preset":"simple","type":"E","rank":"6","isogeny":"adj","outputs":["h1"],"format":"json"}"#).unwrap();
        assert!(j.outputs.h1 && !j.outputs.pi0);
        assert_eq!(j.format, Format::Json);
    }

    #[test]
    fn inline_weil_matches_preset() {
        let j = parse_jobspec(r#"{"rank":2,"coroots":[],"theta":[[0,-1],[-1,0]]}"#).unwrap();
        let (rd, inv) = j.build().unwrap();
        let (prd, pinv) = PresetSource::Standard(PresetSpec::TorusWeil).build().unwrap();
        assert_eq!(rd.cochar(), prd.cochar());
        assert_eq!(rd.coroots(), prd.coroots());
        assert_eq!(inv.theta(), pinv.theta());
    }

    #[test]
    fn inline_eigenspaces() {
        let j = parse_jobspec(r#"{"rank":2,"coroots":[[1,-1]],"split_span":[[1,-1]],"compact_span":[[1,1]]}"#).unwrap();
        let (_, inv) = j.build().unwrap();
        assert_eq!(inv.theta(), &IntMatrix::from_rows(2, &[[0, 1], [1, 0]]).unwrap());
    }

    #[test]
    fn rational_entries() {
        let j = parse_jobspec(
            r#"{"rank":1,"coroots":[],"theta":[[-1]],"display_weights":[{"label":"x","weight":["1/2"]}]}"#,
        )
        .unwrap();
        let Source::Inline(d) = j.source else { panic!() };
        assert_eq!(d.display_weights.unwrap()[0].weight, vec![BigRational::new(1.into(), 2.into())]);
    }

    #[test]
    fn schema_errors() {
        for (doc, needle) in [
            ("{", "line 1"),
            (r#"{"preset":"XYZ"}"#, "unknown preset"),
            (r#"{"preset":"GL"}"#, "\"n\""),
            (r#"{"rank":2,"coroots":[[1]],"theta":[[1,0],[0,1]]}"#, "coroots[0]"),
            (r#"{"rank":1,"coroots":[]}"#, "missing"),
            (r#"{"rank":1,"coroots":[],"theta":[[1]],"bogus":1}"#, "bogus"),
            (r#"{"rank":1,"coroots":[],"theta":[["1/2"]]}"#, "integers"),
            (r#"{"preset":"GL","n":2,"outputs":["x"]}"#, "outputs[0]"),
        ] {
            let err = parse_jobspec(doc).unwrap_err();
            assert!(matches!(err, Error::Parse(_)), "{doc}: {err}");
            assert!(err.to_string().contains(needle), "{doc}: {err}");
        }
    }

    #[test]
    fn coroot_set_escape() {
        // the swap preserves Q∨ = ℤ² but not the generator set {e1, e1+e2}
        let doc = r#"{"rank":2,"coroots":[[1,0],[1,1]],"theta":[[0,1],[1,0]]%}"#;
        let strict = parse_jobspec(&doc.replace('%', "")).unwrap();
        assert!(matches!(strict.build(), Err(Error::CorootSetNotNormalized(_))));
        let loose = parse_jobspec(&doc.replace('%', r#","check_coroot_set":false"#)).unwrap();
        assert!(loose.build().is_ok());
    }
}
