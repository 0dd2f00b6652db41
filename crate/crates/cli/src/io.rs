use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use sizeramsey::graph::codec::{decode_edge_list, decode_graph6, encode_edge_list, encode_graph6};
use sizeramsey::{Color, Coloring, Graph};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Files read and written by one run, with their hashes.
#[derive(Debug, Default)]
pub struct FileLog {
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
}

impl FileLog {
    pub fn read(&mut self, path: &Path) -> anyhow::Result<String> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.inputs.insert(path.display().to_string(), sha256_hex(&bytes));
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    pub fn write(&mut self, path: &Path, text: &str) -> anyhow::Result<()> {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
        self.outputs.insert(path.display().to_string(), sha256_hex(text.as_bytes()));
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum GraphFormat {
    Graph6,
    EdgeList,
}

fn format_of(path: &Path) -> anyhow::Result<GraphFormat> {
    match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
        Some("g6" | "graph6") => Ok(GraphFormat::Graph6),
        Some("txt" | "el" | "edges" | "edgelist") => Ok(GraphFormat::EdgeList),
        _ => bail!(crate::Usage(format!(
            "cannot tell the graph format of {}: use .g6/.graph6 or .txt/.el/.edges",
            path.display()
        ))),
    }
}

pub fn read_graph(log: &mut FileLog, path: &Path) -> anyhow::Result<Graph> {
    let format = format_of(path)?;
    let text = log.read(path)?;
    Ok(match format {
        GraphFormat::Graph6 => decode_graph6(text.lines().next().unwrap_or("").trim())?,
        GraphFormat::EdgeList => decode_edge_list(&text)?,
    })
}

pub fn write_graph(log: &mut FileLog, path: &Path, g: &Graph) -> anyhow::Result<()> {
    let text = match format_of(path)? {
        GraphFormat::Graph6 => format!("{}\n", encode_graph6(g)),
        GraphFormat::EdgeList => encode_edge_list(g),
    };
    log.write(path, &text)
}

/// Colouring as JSON: red and blue edge lists; unlisted edges are uncoloured.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    #[serde(default)]
    pub red: Vec<(usize, usize)>,
    #[serde(default)]
    pub blue: Vec<(usize, usize)>,
}

impl ColoringFile {
    pub fn of(g: &Graph, c: &Coloring) -> Self {
        ColoringFile { red: c.edges_of(g, Color::Red).collect(), blue: c.edges_of(g, Color::Blue).collect() }
    }

    pub fn to_coloring(&self, g: &Graph) -> anyhow::Result<Coloring> {
        let mut c = Coloring::uncolored(g);
        for (list, color) in [(&self.red, Color::Red), (&self.blue, Color::Blue)] {
            for &(u, v) in list {
                if c.get(g.edge_index(u, v).ok_or(sizeramsey::Error::MissingEdge(u, v))?).is_some() {
                    bail!(crate::Usage(format!("edge {u}-{v} is listed twice")));
                }
                c.set_pair(g, u, v, Some(color))?;
            }
        }
        Ok(c)
    }
}

pub fn read_coloring(log: &mut FileLog, path: &Path, g: &Graph) -> anyhow::Result<Coloring> {
    let text = log.read(path)?;
    let file: ColoringFile =
        serde_json::from_str(&text).map_err(|e| crate::Usage(format!("{}: {e}", path.display())))?;
    file.to_coloring(g)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(log: &mut FileLog, path: &Path) -> anyhow::Result<T> {
    let text = log.read(path)?;
    Ok(serde_json::from_str(&text).map_err(|e| crate::Usage(format!("{}: {e}", path.display())))?)
}
