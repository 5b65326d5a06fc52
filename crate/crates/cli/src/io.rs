//! The JSON module file format.
//!
//! Coordinates (`coord`) and transposition positions (`pos`) are 1-based in
//! files; the library uses 0-based coordinates.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use fimhom_core::category::Truncation;
use fimhom_core::fi::{FimObject, Generator};
use fimhom_core::linalg::{Rat, RatMatrix};
use fimhom_core::module::FunctorModule;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    m: usize,
    t: Vec<usize>,
    dims: Vec<DimEntry>,
    actions: Vec<ActionEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DimEntry {
    obj: Vec<usize>,
    dim: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionEntry {
    gen: GenEntry,
    matrix: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GenEntry {
    kind: String,
    obj: Vec<usize>,
    coord: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pos: Option<usize>,
}

fn gen_entry(g: &Generator) -> GenEntry {
    match g {
        Generator::Transposition { obj, coord, pos } => GenEntry {
            kind: "transposition".into(),
            obj: obj.0.clone(),
            coord: coord + 1,
            pos: Some(*pos),
        },
        Generator::Inclusion { obj, coord } => GenEntry {
            kind: "inclusion".into(),
            obj: obj.0.clone(),
            coord: coord + 1,
            pos: None,
        },
    }
}

/// Canonical text of a module: objects and generators in canonical order,
/// rationals in lowest terms, pretty-printed JSON with a trailing newline.
pub fn module_to_string(v: &FunctorModule) -> String {
    let t = v.truncation();
    let file = ModuleFile {
        m: v.m(),
        t: t.bound().0.clone(),
        dims: t
            .objects()
            .into_iter()
            .zip(v.dims())
            .map(|(o, &dim)| DimEntry { obj: o.0, dim })
            .collect(),
        actions: v
            .generators()
            .iter()
            .zip(v.actions())
            .map(|(g, a)| ActionEntry {
                gen: gen_entry(g),
                matrix: a
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(Rat::to_string).collect())
                    .collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("module serializes");
    s.push('\n');
    s
}

/// A generator as it is spelled in files (1-based coordinate).
pub fn describe_generator(g: &Generator) -> String {
    match g {
        Generator::Transposition { obj, coord, pos } => {
            format!("transposition at {obj} coord {} pos {pos}", coord + 1)
        }
        Generator::Inclusion { obj, coord } => format!("inclusion at {obj} coord {}", coord + 1),
    }
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Usage(format!("malformed module file: {}", msg.into()))
}

/// Parses and shape-checks a module. Functoriality is not checked here.
pub fn parse_module(text: &str) -> Result<FunctorModule> {
    let file: ModuleFile = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    if file.m == 0 || file.t.len() != file.m {
        return Err(malformed(format!("field t has {} entries but m = {}", file.t.len(), file.m)));
    }
    let t = Truncation::new(file.t.clone());
    let objects = t.objects();
    if file.dims.len() != objects.len() {
        return Err(malformed(format!(
            "field dims lists {} objects, truncation {t} has {}",
            file.dims.len(),
            objects.len()
        )));
    }
    for (k, (d, o)) in file.dims.iter().zip(&objects).enumerate() {
        if d.obj != o.0 {
            return Err(malformed(format!(
                "dims[{k}].obj is {:?}, expected {:?} (objects must be in canonical order)",
                d.obj, o.0
            )));
        }
    }
    let dims: Vec<usize> = file.dims.iter().map(|d| d.dim).collect();
    let mut by_gen: HashMap<Generator, RatMatrix> = HashMap::new();
    for (k, a) in file.actions.iter().enumerate() {
        let g = parse_gen(&a.gen, &t).map_err(|e| malformed(format!("actions[{k}].gen: {e}")))?;
        let src = dims[t.index_of(g.source()).unwrap()];
        let tgt = dims[t.index_of(&g.target()).unwrap()];
        if a.matrix.len() != tgt || a.matrix.iter().any(|r| r.len() != src) {
            let cols = a.matrix.first().map_or(0, Vec::len);
            return Err(malformed(format!(
                "actions[{k}].matrix for {}: expected shape {tgt}x{src}, found {}x{cols}",
                describe_generator(&g),
                a.matrix.len()
            )));
        }
        let mut entries = Vec::with_capacity(tgt * src);
        for (i, row) in a.matrix.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let r = Rat::parse_canonical(x)
                    .map_err(|e| malformed(format!("actions[{k}].matrix[{i}][{j}]: {e}")))?;
                entries.push(r);
            }
        }
        let mat = RatMatrix::from_vec(tgt, src, entries).expect("shape checked");
        if by_gen.insert(g.clone(), mat).is_some() {
            return Err(malformed(format!("actions[{k}]: duplicate entry for {}", describe_generator(&g))));
        }
    }
    let mut actions = Vec::new();
    for g in t.generators() {
        match by_gen.remove(&g) {
            Some(a) => actions.push(a),
            None => return Err(malformed(format!("missing action entry for {}", describe_generator(&g)))),
        }
    }
    FunctorModule::new(&t, dims, actions).map_err(|e| malformed(e.to_string()))
}

fn parse_gen(g: &GenEntry, t: &Truncation) -> std::result::Result<Generator, String> {
    let obj = FimObject(g.obj.clone());
    if obj.arity() != t.m() || !t.contains(&obj) {
        return Err(format!("object {:?} is not in truncation {t}", g.obj));
    }
    if g.coord == 0 || g.coord > t.m() {
        return Err(format!("coord {} out of range 1..={}", g.coord, t.m()));
    }
    let coord = g.coord - 1;
    let gen = match (g.kind.as_str(), g.pos) {
        ("transposition", Some(pos)) => Generator::Transposition { obj, coord, pos },
        ("inclusion", None) => Generator::Inclusion { obj, coord },
        ("transposition", None) => return Err("transposition needs pos".into()),
        ("inclusion", Some(_)) => return Err("inclusion takes no pos".into()),
        (k, _) => return Err(format!("unknown kind {k:?}")),
    };
    if !Generator::all_from(gen.source(), t.bound()).contains(&gen) {
        return Err(format!("{} is not a generator of {t}", describe_generator(&gen)));
    }
    Ok(gen)
}

/// Loads a module and checks functoriality.
pub fn load_module(path: &Path) -> Result<FunctorModule> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let v = parse_module(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let violations = v.validate();
    if !violations.is_empty() {
        return Err(CliError::Invariant(format!(
            "{}: not a functor:\n  {}",
            path.display(),
            violations.join("\n  ")
        )));
    }
    Ok(v)
}

pub fn save_module(v: &FunctorModule, path: &Path) -> Result<()> {
    write_atomic(path, &module_to_string(v))
}

/// Writes through a temporary file in the same directory and renames it
/// into place, so readers never see a partial file.
/// Special files such as `/dev/stdout` are written in place.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    if fs::metadata(path).is_ok_and(|md| !md.is_file()) {
        fs::write(path, text)?;
        return Ok(());
    }
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Usage(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}
