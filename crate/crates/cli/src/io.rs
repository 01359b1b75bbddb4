//! Tensor and result files: structured JSON with every float written to 17
//! significant digits, so files round-trip bit-for-bit across tools.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use serde_json::Value;
use teneig::eig::{EigenPair, SolveMeta};
use teneig::tensor::{DenseTensor, MonomialForm};
use teneig::tracker::Classification;

/// A tensor as stored on disk: dense entries or a symmetric polynomial form.
#[derive(Clone, Debug)]
pub enum TensorInput {
    Dense(DenseTensor),
    Monomials(MonomialForm),
}

impl TensorInput {
    pub fn to_tensor(&self) -> Result<DenseTensor> {
        match self {
            TensorInput::Dense(t) => Ok(t.clone()),
            TensorInput::Monomials(f) => Ok(f.to_tensor()?),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            TensorInput::Dense(t) => t.order(),
            TensorInput::Monomials(f) => f.degree(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            TensorInput::Dense(t) => t.dim(),
            TensorInput::Monomials(f) => f.dim(),
        }
    }
}

/// 17 significant digits: enough to identify any f64 uniquely.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_complex(z: Complex64) -> String {
    format!("[{}, {}]", fmt_f64(z.re), fmt_f64(z.im))
}

pub fn tensor_file_string(t: &TensorInput) -> String {
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"order\": {},", t.order());
    let _ = writeln!(s, "  \"dim\": {},", t.dim());
    match t {
        TensorInput::Dense(dense) => {
            s.push_str("  \"format\": \"dense\",\n");
            s.push_str("  \"entries\": [\n");
            let n = dense.entries().len();
            for (i, z) in dense.entries().iter().enumerate() {
                let comma = if i + 1 < n { "," } else { "" };
                let _ = writeln!(s, "    {}{}", fmt_complex(*z), comma);
            }
            s.push_str("  ]\n");
        }
        TensorInput::Monomials(form) => {
            s.push_str("  \"format\": \"monomials\",\n");
            s.push_str("  \"entries\": [\n");
            let n = form.terms().len();
            for (i, (coeff, alpha)) in form.terms().iter().enumerate() {
                let comma = if i + 1 < n { "," } else { "" };
                let alpha_str = alpha
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                let _ = writeln!(
                    s,
                    "    {{\"coeff\": {}, \"alpha\": [{}]}}{}",
                    fmt_complex(*coeff),
                    alpha_str,
                    comma
                );
            }
            s.push_str("  ]\n");
        }
    }
    s.push_str("}\n");
    s
}

pub fn write_tensor_file(path: &Path, t: &TensorInput) -> Result<()> {
    std::fs::write(path, tensor_file_string(t))
        .with_context(|| format!("writing {}", path.display()))
}

fn parse_complex(v: &Value) -> Result<Complex64> {
    let arr = v
        .as_array()
        .ok_or_else(|| anyhow!("expected [re, im] pair"))?;
    if arr.len() != 2 {
        bail!("complex entry must have exactly two components");
    }
    let re = arr[0]
        .as_f64()
        .ok_or_else(|| anyhow!("re is not a number"))?;
    let im = arr[1]
        .as_f64()
        .ok_or_else(|| anyhow!("im is not a number"))?;
    Ok(Complex64::new(re, im))
}

pub fn parse_tensor_file(text: &str) -> Result<TensorInput> {
    let doc: Value = serde_json::from_str(text).context("tensor file is not valid JSON")?;
    let order = doc["order"]
        .as_u64()
        .ok_or_else(|| anyhow!("missing integer 'order'"))? as usize;
    let dim = doc["dim"]
        .as_u64()
        .ok_or_else(|| anyhow!("missing integer 'dim'"))? as usize;
    let format = doc["format"]
        .as_str()
        .ok_or_else(|| anyhow!("missing 'format'"))?;
    let entries = doc["entries"]
        .as_array()
        .ok_or_else(|| anyhow!("missing 'entries' array"))?;
    match format {
        "dense" => {
            let vals: Result<Vec<Complex64>> = entries.iter().map(parse_complex).collect();
            Ok(TensorInput::Dense(DenseTensor::new(order, dim, vals?)?))
        }
        "monomials" => {
            let mut terms = Vec::with_capacity(entries.len());
            for e in entries {
                let coeff = parse_complex(&e["coeff"]).context("monomial coeff")?;
                let alpha: Result<Vec<usize>> = e["alpha"]
                    .as_array()
                    .ok_or_else(|| anyhow!("monomial alpha must be an array"))?
                    .iter()
                    .map(|a| {
                        a.as_u64()
                            .map(|v| v as usize)
                            .ok_or_else(|| anyhow!("alpha entry"))
                    })
                    .collect();
                terms.push((coeff, alpha?));
            }
            Ok(TensorInput::Monomials(MonomialForm::new(
                order, dim, terms,
            )?))
        }
        other => bail!("unknown tensor format {other:?}"),
    }
}

pub fn read_tensor_file(path: &Path) -> Result<TensorInput> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_tensor_file(&text).with_context(|| format!("parsing {}", path.display()))
}

fn classification_str(c: Classification) -> &'static str {
    match c {
        Classification::Regular => "regular",
        Classification::SingularIsolated => "singular_isolated",
        Classification::PositiveDimensional => "positive_dimensional",
    }
}

/// Serializes a solve outcome. `pairs` are the reported representatives;
/// the metadata block records path bookkeeping that always reconciles.
pub fn result_file_string(meta: &SolveMeta, pairs: &[EigenPair]) -> String {
    let mut s = String::new();
    s.push_str("{\n  \"metadata\": {\n");
    let _ = writeln!(s, "    \"m\": {},", meta.m);
    let _ = writeln!(s, "    \"mprime\": {},", meta.mprime);
    let _ = writeln!(s, "    \"n\": {},", meta.n);
    let _ = writeln!(s, "    \"k\": {},", meta.mode);
    let _ = writeln!(s, "    \"seed\": {},", meta.seed);
    let _ = writeln!(s, "    \"path_count\": {},", meta.paths_tracked);
    let _ = writeln!(s, "    \"paths_at_infinity\": {},", meta.paths_at_infinity);
    let _ = writeln!(s, "    \"paths_failed\": {},", meta.paths_failed);
    let _ = writeln!(
        s,
        "    \"curve_jump_warnings\": {}",
        meta.curve_jump_warnings
    );
    s.push_str("  },\n  \"eigenpairs\": [\n");
    let count = pairs.len();
    for (i, p) in pairs.iter().enumerate() {
        s.push_str("    {");
        let _ = write!(s, "\"lambda\": {}, ", fmt_complex(p.lambda));
        s.push_str("\"x\": [");
        for (j, z) in p.x.iter().enumerate() {
            let comma = if j + 1 < p.x.len() { ", " } else { "" };
            let _ = write!(s, "{}{}", fmt_complex(*z), comma);
        }
        let _ = write!(
            s,
            "], \"multiplicity\": {}, \"residual\": {}, \"classification\": \"{}\", \"is_real\": {}, \"component_id\": {}",
            p.multiplicity,
            fmt_f64(p.residual),
            classification_str(p.classification),
            p.is_real,
            p.component_id.map_or("null".to_string(), |id| id.to_string()),
        );
        let comma = if i + 1 < count { "," } else { "" };
        let _ = writeln!(s, "}}{}", comma);
    }
    s.push_str("  ]\n}\n");
    s
}
