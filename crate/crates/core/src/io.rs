//! Text formats: fan documents, chamber graphs (DOT) and instance resolution.
//!
//! A fan document is line oriented:
//!
//! ```text
//! # comment
//! fan p2 dim 2
//! meta source builder
//! ray 0 1 0
//! ray 1 0 1
//! ray 2 -1 -1
//! cone 0 1
//! cone 0 2
//! cone 1 2
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::catalog;
use crate::error::{Error, Result};
use crate::mds::ChamberAtlas;
use crate::scalar::Int;
use crate::toric::Fan;

/// Environment variable naming a directory of `NAME.fan` files consulted
/// before the built-in catalog when resolving `catalog:NAME`.
pub const CATALOG_DIR_ENV: &str = "MORIDREAM_CATALOG_DIR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanDocument<I> {
    pub name: String,
    pub dim: usize,
    pub rays: Vec<Vec<I>>,
    pub cones: Vec<Vec<usize>>,
    pub metadata: Vec<(String, String)>,
}

impl<I: Int> FanDocument<I> {
    pub fn from_fan(name: &str, fan: &Fan<I>) -> Self {
        FanDocument {
            name: name.into(),
            dim: fan.dim(),
            rays: fan.rays().to_vec(),
            cones: fan.cones().to_vec(),
            metadata: Vec::new(),
        }
    }

    pub fn to_fan(&self) -> Result<Fan<I>> {
        Fan::new(self.rays.clone(), self.cones.clone())
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse().map_err(|_| perr(line, format!("invalid {what} `{tok}`")))
}

/// Parses a fan document without validating the fan itself.
pub fn parse_document<I: Int>(text: &str) -> Result<FanDocument<I>> {
    let mut header: Option<(String, usize)> = None;
    let mut rays: Vec<Vec<I>> = Vec::new();
    let mut cones = Vec::new();
    let mut metadata = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "fan" => {
                if header.is_some() {
                    return Err(perr(line, "duplicate header"));
                }
                if toks.len() != 4 || toks[2] != "dim" {
                    return Err(perr(line, "expected `fan <name> dim <n>`"));
                }
                let dim: usize = parse_num(line, toks[3], "dimension")?;
                if dim == 0 {
                    return Err(perr(line, "dimension must be positive"));
                }
                header = Some((toks[1].to_string(), dim));
            }
            kw @ ("meta" | "ray" | "cone") => {
                let Some((_, dim)) = &header else {
                    return Err(perr(line, format!("`{kw}` before the `fan` header")));
                };
                let dim = *dim;
                match kw {
                    "meta" => {
                        if toks.len() < 2 {
                            return Err(perr(line, "expected `meta <key> <value…>`"));
                        }
                        metadata.push((toks[1].to_string(), toks[2..].join(" ")));
                    }
                    "ray" => {
                        if !cones.is_empty() {
                            return Err(perr(line, "ray after cone lines"));
                        }
                        if toks.len() != dim + 2 {
                            return Err(perr(line, format!("ray needs an index and {dim} coordinates")));
                        }
                        let i: usize = parse_num(line, toks[1], "ray index")?;
                        if i != rays.len() {
                            return Err(perr(line, format!("expected ray index {}, found {i}", rays.len())));
                        }
                        let v: Vec<i64> = toks[2..]
                            .iter()
                            .map(|t| parse_num(line, t, "coordinate"))
                            .collect::<Result<_>>()?;
                        let v: Vec<I> = v.into_iter().map(I::from_i64_exact).collect();
                        if let Some(k) = rays.iter().position(|r| *r == v) {
                            return Err(perr(line, format!("duplicate ray (same as ray {k})")));
                        }
                        rays.push(v);
                    }
                    _ => {
                        let c: Vec<usize> = toks[1..]
                            .iter()
                            .map(|t| parse_num(line, t, "ray index"))
                            .collect::<Result<_>>()?;
                        if c.len() != dim {
                            return Err(perr(line, format!("cone needs {dim} ray indices")));
                        }
                        if let Some(&bad) = c.iter().find(|&&r| r >= rays.len()) {
                            return Err(perr(line, format!("unknown ray {bad}")));
                        }
                        cones.push(c);
                    }
                }
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }
    let (name, dim) = header.ok_or_else(|| perr(0, "missing `fan` header"))?;
    Ok(FanDocument {
        name,
        dim,
        rays,
        cones,
        metadata,
    })
}

/// Parses and validates a fan document.
pub fn parse_fan<I: Int>(text: &str) -> Result<(FanDocument<I>, Fan<I>)> {
    let doc = parse_document(text)?;
    let fan = doc.to_fan()?;
    Ok((doc, fan))
}

/// Canonical text: header, metadata in order, rays by index, cones sorted.
pub fn write_fan<I: Int>(doc: &FanDocument<I>) -> String {
    let mut s = format!("fan {} dim {}\n", doc.name, doc.dim);
    for (k, v) in &doc.metadata {
        let _ = writeln!(s, "meta {k} {v}");
    }
    for (i, r) in doc.rays.iter().enumerate() {
        let coords: Vec<String> = r.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "ray {i} {}", coords.join(" "));
    }
    let mut cones: Vec<Vec<usize>> = doc
        .cones
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    cones.sort();
    for c in cones {
        let idx: Vec<String> = c.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "cone {}", idx.join(" "));
    }
    s
}

/// Resolves `catalog:NAME` (directory from [`CATALOG_DIR_ENV`] first, then
/// the built-in catalog) or a path to a fan document.
pub fn resolve_instance<I: Int>(spec: &str) -> Result<(String, Fan<I>)> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        if let Ok(dir) = std::env::var(CATALOG_DIR_ENV) {
            let path = Path::new(&dir).join(format!("{name}.fan"));
            if path.is_file() {
                return load_file(&path);
            }
        }
        let entry = catalog::lookup(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown catalog instance `{name}`")))?;
        return Ok((entry.name.clone(), entry.build()));
    }
    load_file(Path::new(spec))
}

fn load_file<I: Int>(path: &Path) -> Result<(String, Fan<I>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    let (doc, fan) = parse_fan(&text)?;
    Ok((doc.name, fan))
}

/// Chamber adjacency graph in DOT format.
pub fn atlas_dot<I: Int>(atlas: &ChamberAtlas<I>) -> String {
    let mut s = String::from("graph chambers {\n  node [shape=box];\n");
    for (i, ch) in atlas.chambers.iter().enumerate() {
        let fano = ch.model.is_fano();
        let _ = writeln!(
            s,
            "  c{i} [label=\"{i}{}{}\"{}];",
            if i == atlas.base { " (X)" } else { "" },
            if fano { " fano" } else { "" },
            if fano { ", style=bold" } else { "" }
        );
    }
    for e in &atlas.adjacency {
        let circuit: Vec<String> = e.circuit.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "  c{} -- c{} [label=\"{{{}}}\"];", e.from, e.to, circuit.join(","));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mds;

    const P2: &str = "# the plane\nfan p2 dim 2\nmeta source hand\nray 0 1 0\nray 1 0 1\nray 2 -1 -1\ncone 0 1\ncone 2 0  # unsorted\ncone 1 2\n";

    #[test]
    fn plane_document() {
        let (doc, fan) = parse_fan::<i64>(P2).unwrap();
        assert_eq!((fan.num_rays(), fan.cones().len()), (3, 3));
        assert_eq!(doc.metadata, vec![("source".to_string(), "hand".to_string())]);
        let text = write_fan(&doc);
        let (doc2, _) = parse_fan::<i64>(&text).unwrap();
        assert_eq!(write_fan(&doc2), text);
    }

    #[test]
    fn positioned_errors() {
        let dup = "fan x dim 2\nray 0 1 0\nray 1 0 1\nray 2 1 0\n";
        assert_eq!(parse_document::<i64>(dup).unwrap_err(), Error::Parse { line: 4, message: "duplicate ray (same as ray 0)".into() });
        let bad = "fan x dim 2\nray 0 1 zero\n";
        assert!(matches!(parse_document::<i64>(bad), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_document::<i64>("ray 0 1 0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_document::<i64>("fan x dim 2\ncone 0 7\n"), Err(Error::Parse { line: 2, .. })));
        // well-formed but not a complete fan
        let incomplete = "fan x dim 2\nray 0 1 0\nray 1 0 1\nray 2 -1 -1\ncone 0 1\n";
        assert!(matches!(parse_fan::<i64>(incomplete), Err(Error::InvalidFan(_))));
    }

    #[test]
    fn dot_output() {
        let f = catalog::lookup("blpt2-p3").unwrap().build::<i64>();
        let atlas = mds::chamber_atlas(&f, mds::DEFAULT_CHAMBER_CAP).unwrap();
        let dot = atlas_dot(&atlas);
        assert!(dot.starts_with("graph chambers {"));
        assert_eq!(dot.matches(" -- ").count(), 1);
    }
}
