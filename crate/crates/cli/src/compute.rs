//! Thin wrappers over single library operations, reading and writing module
//! files.

use std::path::PathBuf;

use fimhom_core::category::Truncation;
use fimhom_core::functors::{coind_definitional, shift};
use fimhom_core::homological::{ext1, nakayama, torsion_submodule, Recipe};
use fimhom_core::module::{external_tensor_pair, FunctorModule};
use serde_json::json;

use crate::error::{CliError, Result};
use crate::io::{load_module, module_to_string, write_atomic};
use crate::report::{Cases, Report};

pub const OPS: &[&str] = &["build", "coind", "shift", "tensor", "nakayama", "torsion", "ext1"];

#[derive(Clone, Debug, Default)]
pub struct ComputeArgs {
    pub op: String,
    /// 1-based coordinate.
    pub i: Option<usize>,
    pub inputs: Vec<PathBuf>,
    pub v: Option<PathBuf>,
    pub w: Option<PathBuf>,
    pub out: Option<PathBuf>,
    /// For `build`: a recipe such as `free:1,1` and a truncation bound.
    pub recipe: Option<String>,
    pub t: Option<Vec<usize>>,
}

/// What a compute operation produced: text destined for `--out` or stdout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    /// A short line for the terminal when the main output went to a file.
    pub summary: String,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn single_input(args: &ComputeArgs) -> Result<FunctorModule> {
    match args.inputs.as_slice() {
        [p] => load_module(p),
        _ => Err(usage(format!("{} takes exactly one --in", args.op))),
    }
}

fn coordinate(args: &ComputeArgs, v: &FunctorModule) -> Result<usize> {
    let i = args.i.ok_or_else(|| usage(format!("{} needs --i", args.op)))?;
    if i == 0 || i > v.m() {
        return Err(usage(format!("--i must be in 1..={}, got {i}", v.m())));
    }
    Ok(i - 1)
}

fn module_output(v: &FunctorModule) -> Output {
    Output {
        text: module_to_string(v),
        summary: format!("module over {} with dims {:?}", v.truncation(), v.dims()),
    }
}

pub fn compute(args: &ComputeArgs) -> Result<Output> {
    match args.op.as_str() {
        "build" => {
            let (Some(r), Some(t)) = (&args.recipe, &args.t) else {
                return Err(usage("build needs --recipe and --t"));
            };
            let recipe: Recipe = r.parse()?;
            if t.is_empty() || recipe.arity().is_some_and(|m| m != t.len()) {
                return Err(usage(format!("recipe {recipe} does not match --t {t:?}")));
            }
            let t = Truncation::new(t.clone());
            let v = recipe
                .build(&t)?
                .ok_or_else(|| usage(format!("recipe {recipe} does not fit under {t}")))?;
            Ok(module_output(&v))
        }
        "coind" => {
            let v = single_input(args)?;
            let i = coordinate(args, &v)?;
            Ok(module_output(&coind_definitional(&v, i)?))
        }
        "shift" => {
            let v = single_input(args)?;
            let i = coordinate(args, &v)?;
            Ok(module_output(&shift(&v, i)?))
        }
        "tensor" => {
            if args.inputs.len() < 2 {
                return Err(usage("tensor takes at least two --in"));
            }
            let mods = args
                .inputs
                .iter()
                .map(|p| load_module(p))
                .collect::<Result<Vec<_>>>()?;
            let mut it = mods.into_iter();
            let first = it.next().expect("checked length");
            Ok(module_output(&it.fold(first, |acc, m| external_tensor_pair(&acc, &m))))
        }
        "nakayama" => Ok(module_output(&nakayama(&single_input(args)?)?)),
        "torsion" => {
            let v = single_input(args)?;
            let tp = torsion_submodule(&v)?;
            Ok(Output {
                text: module_to_string(&tp.sub),
                summary: format!(
                    "torsion dims {:?} of {:?}; stable under lowering t: {}",
                    tp.sub.dims(),
                    v.dims(),
                    tp.stable.map_or("n/a".to_string(), |b| b.to_string())
                ),
            })
        }
        "ext1" => {
            if !args.inputs.is_empty() {
                return Err(usage("ext1 takes --v and --w, not --in"));
            }
            let (Some(vp), Some(wp)) = (&args.v, &args.w) else {
                return Err(usage("ext1 needs --v and --w"));
            };
            let v = load_module(vp)?;
            let w = load_module(wp)?;
            let e = ext1(&v, &w)?;
            let mut cases = Cases::new("");
            cases.record(
                "ext1",
                json!({
                    "v": vp.display().to_string(),
                    "w": wp.display().to_string(),
                    "dim": e.dim,
                    "hom_k_w": e.hom_k_w,
                    "restriction_rank": e.restriction_rank,
                }),
            );
            let report = Report::new("ext1", json!({ "op": "ext1" }), cases.cases);
            Ok(Output {
                text: report.to_json(),
                summary: format!("dim Ext^1 = {}", e.dim),
            })
        }
        other => Err(usage(format!("unknown op {other:?}; known ops: {}", OPS.join(", ")))),
    }
}

/// Writes the output atomically to `--out`, or returns it for stdout.
pub fn emit(args: &ComputeArgs, out: &Output) -> Result<String> {
    match &args.out {
        Some(p) => {
            write_atomic(p, &out.text)?;
            Ok(format!("{}\nwrote {}\n", out.summary, p.display()))
        }
        None => Ok(out.text.clone()),
    }
}
