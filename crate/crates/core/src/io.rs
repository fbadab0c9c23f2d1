//! Text and JSON input formats.
//!
//! * simplicial complex: one facet per line, whitespace-separated vertex ids
//! * face poset: `{"cells":[{"id","dim"}],"covers":[[face,coface]],"regular_asserted":true}`
//! * matching: lines `d_id u_id`
//! * Morse function: lines `cell_id integer`
//!
//! `#` starts a comment in the line formats. Cell ids of simplicial input are
//! the vertex ids joined by commas, e.g. `v0,v1`.

use std::collections::HashMap;

use serde::Deserialize;
use thiserror::Error;

use crate::cw::{Cell, FacePoset, SimplicialComplex};
use crate::morse::{DiscreteMorseFunction, PartialMatching};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Input(String),
}

fn at(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line { line, message: message.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

pub fn parse_simplicial(text: &str) -> Result<SimplicialComplex, ParseError> {
    let mut facets = Vec::new();
    for (line, words) in content_lines(text) {
        let mut seen = words.clone();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(at(line, format!("vertex `{}` repeated in facet", w[0])));
        }
        if let Some(w) = words.iter().find(|w| w.contains(',')) {
            return Err(at(line, format!("vertex id `{w}` contains a comma")));
        }
        facets.push(words.into_iter().map(String::from).collect());
    }
    if facets.is_empty() {
        return Err(ParseError::Input("no facets".into()));
    }
    Ok(SimplicialComplex::new(facets))
}

pub fn write_simplicial(sc: &SimplicialComplex) -> String {
    sc.facets.iter().map(|f| f.join(" ") + "\n").collect()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FacePosetFile {
    cells: Vec<CellEntry>,
    covers: Vec<(String, String)>,
    regular_asserted: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellEntry {
    id: String,
    dim: usize,
}

pub fn parse_face_poset(text: &str) -> Result<FacePoset, ParseError> {
    let file: FacePosetFile = serde_json::from_str(text).map_err(|e| at(e.line(), e.to_string()))?;
    if !file.regular_asserted {
        return Err(ParseError::Input("face poset input requires \"regular_asserted\": true".into()));
    }
    let cells = file.cells.into_iter().map(|c| Cell { id: c.id, dim: c.dim }).collect();
    FacePoset::new(cells, &file.covers).map_err(|e| ParseError::Input(e.to_string()))
}

/// Face-poset JSON, one cell or cover per line, cells in index order.
pub fn write_face_poset(fp: &FacePoset) -> String {
    let q = |s: &str| serde_json::to_string(s).expect("strings serialize");
    let cells: Vec<String> =
        fp.cells().iter().map(|c| format!("    {{\"id\": {}, \"dim\": {}}}", q(&c.id), c.dim)).collect();
    let mut covers = Vec::new();
    for e in 0..fp.len() {
        for &c in fp.cofaces(e) {
            covers.push(format!("    [{}, {}]", q(fp.id(e)), q(fp.id(c))));
        }
    }
    format!(
        "{{\n  \"cells\": [\n{}\n  ],\n  \"covers\": [\n{}\n  ],\n  \"regular_asserted\": true\n}}\n",
        cells.join(",\n"),
        covers.join(",\n")
    )
}

fn cell_index(fp: &FacePoset, line: usize, id: &str) -> Result<usize, ParseError> {
    fp.index_of(id).ok_or_else(|| at(line, format!("unknown cell `{id}`")))
}

pub fn parse_matching(text: &str, fp: &FacePoset) -> Result<PartialMatching, ParseError> {
    let mut pairs = Vec::new();
    for (line, words) in content_lines(text) {
        if words.len() != 2 {
            return Err(at(line, "expected `lower_cell upper_cell`"));
        }
        let (d, u) = (cell_index(fp, line, words[0])?, cell_index(fp, line, words[1])?);
        if !fp.is_codim_one(d, u) {
            return Err(at(line, format!("`{}` is not a codimension-one face of `{}`", words[0], words[1])));
        }
        pairs.push((d, u));
    }
    PartialMatching::new(fp, &pairs).map_err(|e| ParseError::Input(e.to_string()))
}

pub fn write_matching(fp: &FacePoset, m: &PartialMatching) -> String {
    m.pairs().iter().map(|&(d, u)| format!("{} {}\n", fp.id(d), fp.id(u))).collect()
}

pub fn parse_morse(text: &str, fp: &FacePoset) -> Result<DiscreteMorseFunction, ParseError> {
    let mut values: HashMap<usize, i64> = HashMap::new();
    for (line, words) in content_lines(text) {
        if words.len() != 2 {
            return Err(at(line, "expected `cell integer`"));
        }
        let e = cell_index(fp, line, words[0])?;
        let v: i64 = words[1].parse().map_err(|_| at(line, format!("`{}` is not an integer", words[1])))?;
        if values.insert(e, v).is_some() {
            return Err(at(line, format!("cell `{}` assigned twice", words[0])));
        }
    }
    let missing: Vec<&str> = (0..fp.len()).filter(|e| !values.contains_key(e)).map(|e| fp.id(e)).collect();
    if !missing.is_empty() {
        return Err(ParseError::Input(format!("no value for cells: {}", missing.join(", "))));
    }
    let vals = (0..fp.len()).map(|e| values[&e]).collect();
    DiscreteMorseFunction::new(fp, vals).map_err(|e| ParseError::Input(e.to_string()))
}

pub fn write_morse(fp: &FacePoset, f: &DiscreteMorseFunction) -> String {
    (0..fp.len()).map(|e| format!("{} {}\n", fp.id(e), f.value(e))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplicial_round_trip() {
        let sc = parse_simplicial("# circle\nv0 v1\nv1 v2 # edge\n\nv0 v2\n").unwrap();
        assert_eq!(sc.facets.len(), 3);
        assert_eq!(parse_simplicial(&write_simplicial(&sc)).unwrap(), sc);
    }

    #[test]
    fn simplicial_errors_carry_lines() {
        assert_eq!(
            parse_simplicial("a b\nc c\n").unwrap_err(),
            ParseError::Line { line: 2, message: "vertex `c` repeated in facet".into() }
        );
        assert!(matches!(parse_simplicial("# nothing\n"), Err(ParseError::Input(_))));
    }

    #[test]
    fn morse_and_matching() {
        let fp = FacePoset::from_simplicial(&parse_simplicial("a b\n").unwrap()).unwrap();
        let f = parse_morse("a 0\nb 2\na,b 1\n", &fp).unwrap();
        assert_eq!(parse_morse(&write_morse(&fp, &f), &fp).unwrap(), f);
        assert!(matches!(parse_morse("a 0\nb 2.5\na,b 1\n", &fp), Err(ParseError::Line { line: 2, .. })));
        assert!(matches!(parse_morse("a 0\n", &fp), Err(ParseError::Input(_))));
        let m = parse_matching("b a,b\n", &fp).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(write_matching(&fp, &m), "b a,b\n");
        assert!(matches!(parse_matching("x a,b\n", &fp), Err(ParseError::Line { line: 1, .. })));
    }

    #[test]
    fn face_poset_round_trip() {
        let fp = crate::cw::torus_fixture();
        let text = write_face_poset(&fp);
        let back = parse_face_poset(&text).unwrap();
        assert_eq!(back.cells(), fp.cells());
        assert_eq!(write_face_poset(&back), text);
        let unasserted = text.replace("\"regular_asserted\": true", "\"regular_asserted\": false");
        assert!(parse_face_poset(&unasserted).is_err());
        assert!(matches!(parse_face_poset("{\"cells\": [\n}"), Err(ParseError::Line { line: 2, .. })));
    }
}
