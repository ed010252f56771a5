//! The instance interchange format: a JSON document with `name`, `grid`
//! (rows over `#`/`.`, top row first), `particles` (`[x, y]` pairs) and an
//! optional string-to-string `meta` map.

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use crate::grid::{Cell, GridError, Polyomino};
use crate::sim::Configuration;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("grid: {0}")]
    Grid(#[from] GridError),
    #[error("particle {index} at ({x},{y}) is not on a free cell")]
    Particle { index: usize, x: i64, y: i64 },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    name: String,
    grid: Vec<String>,
    particles: Vec<[i64; 2]>,
    #[serde(default)]
    meta: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub polyomino: Polyomino,
    pub particles: Configuration,
    pub meta: BTreeMap<String, String>,
}

impl Instance {
    pub fn new(name: impl Into<String>, polyomino: Polyomino, particles: Configuration) -> Self {
        Instance { name: name.into(), polyomino, particles, meta: BTreeMap::new() }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("string serialization");
        let mut out = String::from("{\n");
        out += &format!("  \"name\": {},\n  \"grid\": [\n", q(&self.name));
        let rows = self.polyomino.to_rows();
        for (i, r) in rows.iter().enumerate() {
            out += &format!("    {}{}\n", q(r), if i + 1 < rows.len() { "," } else { "" });
        }
        out += "  ],\n  \"particles\": [";
        let cells = self.particles.cells(&self.polyomino);
        out += &cells.iter().map(|c| format!("[{},{}]", c.x, c.y)).collect::<Vec<_>>().join(", ");
        out += "]";
        if !self.meta.is_empty() {
            out += ",\n  \"meta\": {\n";
            let n = self.meta.len();
            for (i, (k, v)) in self.meta.iter().enumerate() {
                out += &format!("    {}: {}{}\n", q(k), q(v), if i + 1 < n { "," } else { "" });
            }
            out += "  }";
        }
        out += "\n}\n";
        out
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let doc: Doc = serde_json::from_str(text).map_err(|e| InstanceError::Syntax {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let polyomino = Polyomino::from_rows(&doc.grid)?;
    let mut cells = Vec::with_capacity(doc.particles.len());
    for (index, [x, y]) in doc.particles.into_iter().enumerate() {
        let c = i32::try_from(x).ok().zip(i32::try_from(y).ok()).map(|(x, y)| Cell::new(x, y));
        match c.filter(|&c| polyomino.is_free(c)) {
            Some(c) => cells.push(c),
            None => return Err(InstanceError::Particle { index, x, y }),
        }
    }
    let particles = Configuration::from_cells(&polyomino, &cells)?;
    Ok(Instance { name: doc.name, polyomino, particles, meta: doc.meta })
}
