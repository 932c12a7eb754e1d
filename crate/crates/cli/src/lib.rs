//! Command dispatch for the `jumploci` binary. Every invocation produces a
//! single JSON document and an exit status: 0 on success, 1 when the
//! mathematics refuses (unsupported class, no witness, oracle/formula
//! disagreement), 2 for bad input.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use jumploci::charvar::CharComponent;
use jumploci::resonance::{
    enumerate_components_with_diagonal, predicted_h1_dim, resonance_k_with_diagonal,
    select_diagonal,
};
use jumploci::{
    admissible_witness, aomoto_h1_dim, char_components, classify, gallery, intersection_lattice,
    local_system_h1, make_chart, parse_arrangement, tutte_polynomial, verify_oracle, Arrangement,
    Chart, ClassInfo, ClassTag, Error, LocalSystem, OneForm,
};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Lattice,
    Classify,
    Tutte,
    Resonance,
    Charvar,
    H1,
    Verify,
    Gallery,
}

impl Verb {
    fn name(self) -> &'static str {
        match self {
            Verb::Lattice => "lattice",
            Verb::Classify => "classify",
            Verb::Tutte => "tutte",
            Verb::Resonance => "resonance",
            Verb::Charvar => "charvar",
            Verb::H1 => "h1",
            Verb::Verify => "verify",
            Verb::Gallery => "gallery",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Formula,
    Both,
}

/// Resonance and characteristic varieties of rational line arrangements.
///
/// ARRANGEMENT is a file of coefficient triples `a b c` (one line
/// `ax + by + cz = 0` per row, `#` comments) or `gallery:NAME`. For the
/// `gallery` verb it is the fixture name; omit it to list fixtures.
#[derive(Debug, Clone, Parser)]
#[command(name = "jumploci", version)]
pub struct Command {
    pub verb: Verb,
    pub arrangement: Option<String>,
    /// Index of the line sent to infinity.
    #[arg(long)]
    pub infinity: Option<usize>,
    /// Index of the affine diagonal paired with the line at infinity.
    #[arg(long)]
    pub h0: Option<usize>,
    /// File of residues of a one-form, one per affine line in order.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// File of classes in [0, 1), one per line of the arrangement.
    #[arg(long = "local-system")]
    pub local_system: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// Jump threshold: report components of R_k with dimension > k.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Usage(String),
    Io { path: String, message: String },
    Mismatch(String),
    VerificationFailed,
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_input_error() => 2,
            Failure::Core(_) | Failure::Mismatch(_) | Failure::VerificationFailed => 1,
            Failure::Usage(_) | Failure::Io { .. } => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
            Failure::Io { path, message } => format!("{path}: {message}"),
            Failure::Mismatch(m) => format!("oracle and formula disagree: {m}"),
            Failure::VerificationFailed => "verification found a failing check".into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Outcome of one invocation.
#[derive(Debug)]
pub struct Report {
    pub exit_code: i32,
    pub document: Value,
    /// One-line message for standard error on failure.
    pub diagnostic: Option<String>,
}

struct Context {
    input: serde_json::Map<String, Value>,
    /// Result produced before a late failure (verification, mismatch).
    partial: Option<Value>,
}

pub fn run(cmd: &Command) -> Report {
    let mut ctx = Context {
        input: serde_json::Map::new(),
        partial: None,
    };
    let outcome = dispatch(cmd, &mut ctx);
    let mut doc = serde_json::Map::new();
    doc.insert("verb".into(), json!(cmd.verb.name()));
    doc.insert("input".into(), Value::Object(ctx.input));
    if randomized(cmd) {
        doc.insert("seed".into(), json!(cmd.seed));
    }
    match outcome {
        Ok(result) => {
            doc.insert("result".into(), result);
            Report {
                exit_code: 0,
                document: Value::Object(doc),
                diagnostic: None,
            }
        }
        Err(failure) => {
            if let Some(partial) = ctx.partial {
                doc.insert("result".into(), partial);
            }
            let message = failure.message();
            doc.insert("error".into(), json!({ "message": message }));
            Report {
                exit_code: failure.exit_code(),
                document: Value::Object(doc),
                diagnostic: Some(message),
            }
        }
    }
}

fn randomized(cmd: &Command) -> bool {
    match cmd.verb {
        Verb::Verify => true,
        Verb::Resonance => cmd.weights.is_none() && cmd.method == Some(Method::Both),
        _ => false,
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load_arrangement(cmd: &Command, ctx: &mut Context) -> Result<Arrangement, Failure> {
    let source = cmd
        .arrangement
        .as_deref()
        .ok_or_else(|| Failure::Usage(format!("`{}` needs an arrangement", cmd.verb.name())))?;
    ctx.input.insert("arrangement".into(), json!(source));
    let arr = match source.strip_prefix("gallery:") {
        Some(name) => gallery::gallery(name)?,
        None => parse_arrangement(&read(&PathBuf::from(source))?)?,
    };
    ctx.input.insert("lines".into(), json!(arr.len()));
    Ok(arr)
}

/// Explicit `--infinity`, else the second line of the first cover for C2,
/// the cover line for C1 and the last line otherwise.
fn default_infinity(arr: &Arrangement, info: &ClassInfo) -> usize {
    match info.tag {
        ClassTag::C2 { .. } => info.covers[0][1],
        ClassTag::C1 { h0 } => h0,
        ClassTag::Nodal | ClassTag::Other => arr.len() - 1,
    }
}

fn load_chart(cmd: &Command, arr: &Arrangement, ctx: &mut Context) -> Result<Chart, Failure> {
    let infinity = match cmd.infinity {
        Some(i) => i,
        None => default_infinity(arr, &classify(arr)),
    };
    ctx.input.insert("infinity".into(), json!(infinity));
    Ok(make_chart(arr, infinity)?)
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable")
}

fn dispatch(cmd: &Command, ctx: &mut Context) -> Result<Value, Failure> {
    match cmd.verb {
        Verb::Gallery => gallery_verb(cmd, ctx),
        Verb::Lattice => {
            let arr = load_arrangement(cmd, ctx)?;
            let lattice = intersection_lattice(&arr);
            Ok(json!({
                "flats": lattice.flats(),
                "high_points": lattice.high_points(),
                "pair_count": lattice.pair_count(),
            }))
        }
        Verb::Classify => {
            let arr = load_arrangement(cmd, ctx)?;
            Ok(to_value(&classify(&arr)))
        }
        Verb::Tutte => {
            let arr = load_arrangement(cmd, ctx)?;
            let t = tutte_polynomial(&arr);
            let terms: Vec<Value> = t
                .terms()
                .map(|((i, j), c)| json!({ "x": i, "y": j, "coeff": c }))
                .collect();
            Ok(json!({
                "polynomial": t.to_string(),
                "terms": terms,
                "bases": t.eval(1, 1).to_string(),
                "subsets": t.eval(2, 2).to_string(),
            }))
        }
        Verb::Resonance => resonance_verb(cmd, ctx),
        Verb::Charvar => charvar_verb(cmd, ctx),
        Verb::H1 => h1_verb(cmd, ctx),
        Verb::Verify => {
            let arr = load_arrangement(cmd, ctx)?;
            let chart = load_chart(cmd, &arr, ctx)?;
            ctx.input.insert("samples".into(), json!(cmd.samples));
            let report = verify_oracle(&chart, cmd.h0, cmd.samples, cmd.seed)?;
            let value = to_value(&report);
            if report.all_passed() {
                Ok(value)
            } else {
                ctx.partial = Some(value);
                Err(Failure::VerificationFailed)
            }
        }
    }
}

fn gallery_verb(cmd: &Command, ctx: &mut Context) -> Result<Value, Failure> {
    let Some(name) = cmd.arrangement.as_deref() else {
        return Ok(json!({ "fixtures": gallery::NAMES }));
    };
    let name = name.strip_prefix("gallery:").unwrap_or(name);
    ctx.input.insert("name".into(), json!(name));
    let arr = gallery::gallery(name)?;
    let forms: Vec<String> = arr.lines().iter().map(ToString::to_string).collect();
    Ok(json!({
        "lines": arr.lines(),
        "forms": forms,
        "text": arr.to_text(),
    }))
}

fn load_weights(cmd: &Command, chart: &Chart, ctx: &mut Context) -> Result<Option<OneForm>, Failure> {
    let Some(path) = &cmd.weights else {
        return Ok(None);
    };
    ctx.input.insert("weights".into(), json!(path.display().to_string()));
    let alpha = OneForm::parse(&read(path)?)?;
    if alpha.len() != chart.dim() {
        return Err(Error::DimensionMismatch {
            expected: chart.dim(),
            found: alpha.len(),
        }
        .into());
    }
    Ok(Some(alpha))
}

fn resonance_verb(cmd: &Command, ctx: &mut Context) -> Result<Value, Failure> {
    let arr = load_arrangement(cmd, ctx)?;
    let chart = load_chart(cmd, &arr, ctx)?;
    if cmd.k == 0 {
        return Err(Failure::Usage("--k must be at least 1".into()));
    }
    ctx.input.insert("k".into(), json!(cmd.k));
    let alpha = load_weights(cmd, &chart, ctx)?;
    let Some(alpha) = alpha else {
        return match cmd.method.unwrap_or(Method::Formula) {
            Method::Oracle => Err(Failure::Usage(
                "--method oracle evaluates a form; pass --weights".into(),
            )),
            Method::Formula => {
                let h0 = select_diagonal(&chart, cmd.h0)?;
                let rk = resonance_k_with_diagonal(&chart, cmd.h0, cmd.k)?;
                let dims: Vec<usize> = rk.components.iter().map(|c| c.dimension).collect();
                Ok(json!({
                    "h0": h0,
                    "k": rk.k,
                    "contains_origin": rk.contains_origin,
                    "dimensions": dims,
                    "components": rk.components,
                }))
            }
            Method::Both => {
                ctx.input.insert("samples".into(), json!(cmd.samples));
                let report = verify_oracle(&chart, cmd.h0, cmd.samples, cmd.seed)?;
                let value = json!({ "agree": report.all_passed(), "verification": report });
                if report.all_passed() {
                    Ok(value)
                } else {
                    ctx.partial = Some(value);
                    Err(Failure::Mismatch("sampled verification failed".into()))
                }
            }
        };
    };

    let method = cmd.method.unwrap_or(Method::Both);
    let mut result = serde_json::Map::new();
    result.insert("alpha".into(), to_value(&alpha));
    let oracle = match method {
        Method::Oracle | Method::Both => Some(aomoto_h1_dim(&chart, &alpha)?),
        Method::Formula => None,
    };
    let formula = match method {
        Method::Formula | Method::Both => {
            let comps = enumerate_components_with_diagonal(&chart, cmd.h0)?;
            let containing: Vec<String> = comps
                .iter()
                .filter(|c| c.space.contains(&alpha.residues))
                .map(|c| c.kind.to_string())
                .collect();
            result.insert("components_containing".into(), json!(containing));
            Some(predicted_h1_dim(&chart, &comps, &alpha))
        }
        Method::Oracle => None,
    };
    if let Some(h) = oracle {
        result.insert("oracle_h1".into(), json!(h));
    }
    if let Some(h) = formula {
        result.insert("formula_h1".into(), json!(h));
    }
    let h1 = oracle.or(formula).expect("one method ran");
    result.insert("resonant".into(), json!(h1 >= cmd.k));
    match (oracle, formula) {
        (Some(o), Some(f)) if o != f => {
            result.insert("agree".into(), json!(false));
            ctx.partial = Some(Value::Object(result));
            Err(Failure::Mismatch(format!("oracle h1 = {o}, formula h1 = {f}")))
        }
        (Some(_), Some(_)) => {
            result.insert("agree".into(), json!(true));
            Ok(Value::Object(result))
        }
        _ => Ok(Value::Object(result)),
    }
}

fn load_local_system(cmd: &Command, ctx: &mut Context) -> Result<Option<LocalSystem>, Failure> {
    let Some(path) = &cmd.local_system else {
        return Ok(None);
    };
    ctx.input.insert("local_system".into(), json!(path.display().to_string()));
    Ok(Some(LocalSystem::parse(&read(path)?)?))
}

fn charvar_verb(cmd: &Command, ctx: &mut Context) -> Result<Value, Failure> {
    let arr = load_arrangement(cmd, ctx)?;
    let chart = load_chart(cmd, &arr, ctx)?;
    let tori = char_components(&chart, cmd.h0)?;
    let mut result = json!({ "components": tori });
    if let Some(lambda) = load_local_system(cmd, ctx)? {
        if lambda.len() != arr.len() {
            return Err(Error::DimensionMismatch {
                expected: arr.len(),
                found: lambda.len(),
            }
            .into());
        }
        let membership: Vec<bool> = tori.iter().map(|t| t.contains(&lambda)).collect();
        result["membership"] = json!(membership);
        result["trivial"] = json!(lambda.is_trivial());
    }
    Ok(result)
}

/// `dim H¹` predicted by the subtori: `n` at the trivial character, else
/// the largest `dim − 1` over subtori containing `λ`.
fn predicted_local_h1(chart: &Chart, tori: &[CharComponent], lambda: &LocalSystem) -> usize {
    if lambda.is_trivial() {
        return chart.dim();
    }
    tori.iter()
        .filter(|t| t.contains(lambda))
        .map(|t| t.dimension - 1)
        .max()
        .unwrap_or(0)
}

fn h1_verb(cmd: &Command, ctx: &mut Context) -> Result<Value, Failure> {
    let arr = load_arrangement(cmd, ctx)?;
    let chart = load_chart(cmd, &arr, ctx)?;
    let lambda = load_local_system(cmd, ctx)?
        .ok_or_else(|| Failure::Usage("`h1` needs --local-system".into()))?;
    let method = cmd.method.unwrap_or(Method::Oracle);
    let mut result = serde_json::Map::new();
    let oracle = match method {
        Method::Oracle | Method::Both => {
            let report = admissible_witness(&arr, &lambda)?;
            result.insert("admissibility".into(), to_value(&report));
            Some(local_system_h1(&chart, &lambda)?)
        }
        Method::Formula => None,
    };
    let formula = match method {
        Method::Formula | Method::Both => {
            if lambda.len() != arr.len() {
                return Err(Error::DimensionMismatch {
                    expected: arr.len(),
                    found: lambda.len(),
                }
                .into());
            }
            let tori = char_components(&chart, cmd.h0)?;
            Some(predicted_local_h1(&chart, &tori, &lambda))
        }
        Method::Oracle => None,
    };
    if let Some(h) = oracle {
        result.insert("oracle_h1".into(), json!(h));
    }
    if let Some(h) = formula {
        result.insert("formula_h1".into(), json!(h));
    }
    result.insert("h1".into(), json!(oracle.or(formula)));
    match (oracle, formula) {
        (Some(o), Some(f)) if o != f => {
            result.insert("agree".into(), json!(false));
            ctx.partial = Some(Value::Object(result));
            Err(Failure::Mismatch(format!("oracle h1 = {o}, formula h1 = {f}")))
        }
        (Some(_), Some(_)) => {
            result.insert("agree".into(), json!(true));
            Ok(Value::Object(result))
        }
        _ => Ok(Value::Object(result)),
    }
}
