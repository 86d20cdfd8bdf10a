use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rigidlift::{io, Multigraph, OrCycMorphism};
use serde::Deserialize;

use crate::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn graph(path: &Path) -> Result<Multigraph, CliError> {
    io::parse_graph(&read(path)?).map_err(|e| CliError::at(path, e))
}

#[derive(Debug, Deserialize)]
struct MorphismFile {
    source: PathBuf,
    target: PathBuf,
    edge_map: BTreeMap<String, String>,
}

/// Either a bare `{"e1": "r1", ...}` object or one wrapped as `{"edge_map": {...}}`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum MapFile {
    Wrapped { edge_map: BTreeMap<String, String> },
    Bare(BTreeMap<String, String>),
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn edge_map(g: &Multigraph, h: &Multigraph, pairs: &BTreeMap<String, String>) -> Result<Vec<usize>, CliError> {
    let mut map = vec![usize::MAX; g.num_edges()];
    for (a, b) in pairs {
        map[g.edge(a)?] = h.edge(b)?;
    }
    if map.contains(&usize::MAX) {
        return Err(rigidlift::Error::NotBijection("some source edges are unmapped".into()).into());
    }
    Ok(map)
}

/// Loads a morphism file; graph paths are resolved against the file's own directory.
pub fn morphism(path: &Path) -> Result<OrCycMorphism, CliError> {
    let file: MorphismFile = parse_json(path)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let g = graph(&dir.join(&file.source))?;
    let h = graph(&dir.join(&file.target))?;
    let pairs: Vec<(&String, &String)> = file.edge_map.iter().collect();
    Ok(OrCycMorphism::from_names(&g, &h, &pairs)?)
}

pub fn map_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    Ok(match parse_json(path)? {
        MapFile::Wrapped { edge_map } | MapFile::Bare(edge_map) => edge_map,
    })
}
