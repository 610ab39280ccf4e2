//! Plain-text edge lists and clique-registry sidecars.
//!
//! Edge list: `#` header lines with `key=value` pairs, then one `u<TAB>v`
//! line per edge with `u < v`, sorted by `(u, v)`:
//!
//! ```text
//! # model=pran d=2 seed=42 n=10 nc=22
//! 0	1
//! 0	2
//! ```
//!
//! The registry sidecar (same stem, `.cliques` extension) holds one clique
//! per line: its members followed by its parallel degree, tab separated.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::generators::Model;
use crate::graph::{Dimension, Graph};

pub const CLIQUE_EXTENSION: &str = "cliques";

/// Metadata carried in the edge-list header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListHeader {
    pub model: Option<Model>,
    pub dimension: usize,
    pub seed: Option<u64>,
    pub vertices: usize,
    pub cliques: Option<usize>,
}

impl EdgeListHeader {
    pub fn for_graph(g: &Graph, model: Option<Model>, seed: Option<u64>) -> Self {
        EdgeListHeader {
            model,
            dimension: g.dimension().get(),
            seed,
            vertices: g.vertex_count(),
            cliques: g.clique_count(),
        }
    }

    fn render(&self) -> String {
        let mut line = String::from("#");
        if let Some(model) = self.model {
            line += &format!(" model={model}");
        }
        line += &format!(" d={}", self.dimension);
        if let Some(seed) = self.seed {
            line += &format!(" seed={seed}");
        }
        line += &format!(" n={}", self.vertices);
        if let Some(nc) = self.cliques {
            line += &format!(" nc={nc}");
        }
        line
    }
}

/// Sidecar path for an edge-list path.
pub fn clique_sidecar_path(edge_list: &Path) -> PathBuf {
    edge_list.with_extension(CLIQUE_EXTENSION)
}

pub fn write_edge_list<W: Write>(
    g: &Graph,
    header: &EdgeListHeader,
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "{}", header.render())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u}\t{v}")?;
    }
    out.flush()
}

pub fn write_clique_registry<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    let Some(registry) = g.registry() else {
        return out.flush();
    };
    writeln!(out, "# d={} nc={}", g.dimension(), registry.len())?;
    let mut line = String::new();
    for c in registry.iter() {
        line.clear();
        for v in c.members {
            line += &v.to_string();
            line.push('\t');
        }
        line += &c.parallel_degree.to_string();
        writeln!(out, "{line}")?;
    }
    out.flush()
}

/// Writes the edge list to `path` and, when the graph has a registry, the
/// sidecar next to it.
pub fn save_graph(g: &Graph, header: &EdgeListHeader, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_edge_list(g, header, BufWriter::new(file)).map_err(|e| Error::io(path, e))?;
    if g.has_registry() {
        let side = clique_sidecar_path(path);
        let file = File::create(&side).map_err(|e| Error::io(&side, e))?;
        write_clique_registry(g, BufWriter::new(file)).map_err(|e| Error::io(&side, e))?;
    }
    Ok(())
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn parse_header_line(
    text: &str,
    header: &mut PartialHeader,
    path: &Path,
    line: usize,
) -> Result<()> {
    for field in text.trim_start_matches('#').split_whitespace() {
        let Some((key, value)) = field.split_once('=') else {
            continue;
        };
        let bad = |what: &str| parse_error(path, line, format!("bad {what} value {value:?}"));
        match key {
            "model" => header.model = Some(value.parse().map_err(|_| bad("model"))?),
            "d" => header.dimension = Some(value.parse().map_err(|_| bad("d"))?),
            "seed" => header.seed = Some(value.parse().map_err(|_| bad("seed"))?),
            "n" => header.vertices = Some(value.parse().map_err(|_| bad("n"))?),
            "nc" => header.cliques = Some(value.parse().map_err(|_| bad("nc"))?),
            _ => {}
        }
    }
    Ok(())
}

#[derive(Default)]
struct PartialHeader {
    model: Option<Model>,
    dimension: Option<usize>,
    seed: Option<u64>,
    vertices: Option<usize>,
    cliques: Option<usize>,
}

fn parse_ids<'a>(
    fields: impl Iterator<Item = &'a str>,
    path: &Path,
    line: usize,
) -> Result<Vec<u32>> {
    fields
        .map(|f| {
            f.parse::<u32>()
                .map_err(|_| parse_error(path, line, format!("not a vertex id: {f:?}")))
        })
        .collect()
}

/// Reads an edge list. The clique registry is restored from the sidecar when
/// one exists; otherwise the graph has no registry.
pub fn read_edge_list(path: &Path) -> Result<(Graph, EdgeListHeader)> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut header = PartialHeader::default();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut max_id = None;
    for (idx, text) in BufReader::new(file).lines().enumerate() {
        let line = idx + 1;
        let text = text.map_err(|e| Error::io(path, e))?;
        let text = text.trim();
        if text.is_empty() {
            continue;
        }
        if text.starts_with('#') {
            parse_header_line(text, &mut header, path, line)?;
            continue;
        }
        let ids = parse_ids(text.split_whitespace(), path, line)?;
        let [u, v] = ids[..] else {
            return Err(parse_error(path, line, "expected two vertex ids"));
        };
        if u == v {
            return Err(parse_error(path, line, format!("self-loop on vertex {u}")));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(parse_error(
                path,
                line,
                format!("duplicate edge {}-{}", key.0, key.1),
            ));
        }
        max_id = max_id.max(Some(key.1));
        edges.push(key);
    }
    let dimension = header
        .dimension
        .ok_or_else(|| parse_error(path, 1, "header does not give the dimension d"))?;
    let inferred = max_id.map_or(0, |m| m as usize + 1);
    let vertices = header.vertices.unwrap_or(inferred);
    if vertices < inferred {
        return Err(parse_error(
            path,
            1,
            format!("n={vertices} but edges use vertex {}", inferred - 1),
        ));
    }
    let dim = Dimension::new(dimension).map_err(|e| parse_error(path, 1, e.to_string()))?;
    let mut g = Graph::from_edges(dim, vertices, edges)?;

    let side = clique_sidecar_path(path);
    if side.exists() {
        let cliques = read_clique_sidecar(&side)?;
        g.attach_registry(cliques)?;
        if let Some(nc) = header.cliques {
            if g.clique_count() != Some(nc) {
                return Err(parse_error(
                    path,
                    1,
                    format!("nc={nc} disagrees with the sidecar"),
                ));
            }
        }
    }
    let header = EdgeListHeader {
        model: header.model,
        dimension,
        seed: header.seed,
        vertices,
        cliques: g.clique_count(),
    };
    Ok((g, header))
}

fn read_clique_sidecar(path: &Path) -> Result<Vec<(Vec<u32>, u32)>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut cliques = Vec::new();
    for (idx, text) in BufReader::new(file).lines().enumerate() {
        let line = idx + 1;
        let text = text.map_err(|e| Error::io(path, e))?;
        let text = text.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut ids = parse_ids(text.split_whitespace(), path, line)?;
        let Some(m) = ids.pop() else {
            return Err(parse_error(path, line, "empty clique record"));
        };
        cliques.push((ids, m));
    }
    Ok(cliques)
}
