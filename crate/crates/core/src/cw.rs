//! Face posets of finite regular CW complexes.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::poset::{FinitePoset, PosetError};

/// Largest facet size accepted from simplicial input (a facet expands to
/// `2^k - 1` cells).
pub const MAX_FACET_SIZE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CwError {
    #[error("complex has no cells")]
    EmptyComplex,
    #[error("vertex `{vertex}` repeated in facet {facet}")]
    RepeatedVertex { facet: usize, vertex: String },
    #[error("facet {facet} has {size} vertices, limit is {MAX_FACET_SIZE}")]
    FacetTooLarge { facet: usize, size: usize },
    #[error("duplicate cell `{0}`")]
    DuplicateCell(String),
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct FacePoset {
    cells: Vec<Cell>,
    labels: Vec<String>,
    order: FinitePoset,
    faces: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
}

impl FacePoset {
    /// Builds the face order generated by `covers` (face, coface) pairs.
    pub fn new(cells: Vec<Cell>, covers: &[(String, String)]) -> Result<Self, CwError> {
        if cells.is_empty() {
            return Err(CwError::EmptyComplex);
        }
        let mut index = HashMap::new();
        for (i, c) in cells.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(CwError::DuplicateCell(c.id.clone()));
            }
        }
        let get = |s: &String| index.get(s).copied().ok_or_else(|| CwError::UnknownCell(s.clone()));
        let pairs = covers
            .iter()
            .map(|(a, b)| Ok((get(a)?, get(b)?)))
            .collect::<Result<Vec<_>, CwError>>()?;
        let labels = cells.iter().map(|c| c.id.clone()).collect();
        Self::from_indexed(cells, labels, &pairs)
    }

    fn from_indexed(cells: Vec<Cell>, labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, CwError> {
        let ids = cells.iter().map(|c| c.id.clone()).collect();
        let order = FinitePoset::from_relation(ids, pairs)?;
        let n = cells.len();
        let mut faces = vec![Vec::new(); n];
        let mut cofaces = vec![Vec::new(); n];
        for a in 0..n {
            for b in order.up_set(a) {
                if cells[b].dim == cells[a].dim + 1 {
                    faces[b].push(a);
                    cofaces[a].push(b);
                }
            }
        }
        Ok(FacePoset { cells, labels, order, faces, cofaces })
    }

    /// All non-empty faces of the facets. Cell ids are sorted vertex lists
    /// joined by commas; labels read like `[v0 v1]`.
    pub fn from_simplicial(input: &SimplicialComplex) -> Result<Self, CwError> {
        let facets = input.normalized()?;
        let mut simplices: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for f in &facets {
            for mask in 1u32..(1 << f.len()) {
                let s: Vec<usize> = (0..f.len()).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
                simplices.insert((s.len() - 1, s));
            }
        }
        let verts = input.vertex_order();
        let simplices: Vec<Vec<usize>> = simplices.into_iter().map(|(_, s)| s).collect();
        let index: HashMap<&[usize], usize> =
            simplices.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut pairs = Vec::new();
        for (i, s) in simplices.iter().enumerate() {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let mut f = s.clone();
                f.remove(skip);
                pairs.push((index[f.as_slice()], i));
            }
        }
        let name = |s: &[usize], sep: &str| s.iter().map(|&v| verts[v].as_str()).collect::<Vec<_>>().join(sep);
        let cells = simplices.iter().map(|s| Cell { id: name(s, ","), dim: s.len() - 1 }).collect();
        let labels = simplices.iter().map(|s| format!("[{}]", name(s, " "))).collect();
        Self::from_indexed(cells, labels, &pairs)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn id(&self, e: usize) -> &str {
        &self.cells[e].id
    }

    /// Display name; simplicial cells print as bracketed vertex lists.
    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn dim(&self, e: usize) -> usize {
        self.cells[e].dim
    }

    pub fn top_dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.order.index_of(id)
    }

    /// The face order `a ⪯ b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    /// `a` is a proper face of `b`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.order.lt(a, b)
    }

    /// `a ≺₁ b`: `a` is a face of `b` of one lower dimension.
    pub fn is_codim_one(&self, a: usize, b: usize) -> bool {
        self.cells[b].dim == self.cells[a].dim + 1 && self.order.leq(a, b)
    }

    /// Codimension-one faces of `e`.
    pub fn faces(&self, e: usize) -> &[usize] {
        &self.faces[e]
    }

    /// Codimension-one cofaces of `e`.
    pub fn cofaces(&self, e: usize) -> &[usize] {
        &self.cofaces[e]
    }

    /// Cells having `e` as a proper face.
    pub fn strictly_above(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        self.order.up_set(e).filter(move |&x| x != e)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.order
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.top_dim() + 1];
        for c in &self.cells {
            counts[c.dim] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cell_counts()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Maximal cells as vertex lists, for re-ingesting a simplicial complex.
    pub fn maximal_cells(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.order.upper_covers(e).is_empty()).collect()
    }
}

/// Facet list of a simplicial complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub facets: Vec<Vec<String>>,
}

/// Compares digit runs numerically so that `v2 < v10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let ord = match (x.0, y.0) {
            (true, true) => {
                let (tx, ty) = (x.1.trim_start_matches('0'), y.1.trim_start_matches('0'));
                tx.len().cmp(&ty.len()).then(tx.cmp(ty)).then(x.1.len().cmp(&y.1.len()))
            }
            _ => x.1.cmp(y.1),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len())
}

impl SimplicialComplex {
    pub fn new(facets: Vec<Vec<String>>) -> Self {
        SimplicialComplex { facets }
    }

    /// Distinct vertices in natural order.
    pub fn vertex_order(&self) -> Vec<String> {
        let mut v: Vec<String> = self.facets.iter().flatten().cloned().collect();
        v.sort_by(|a, b| natural_cmp(a, b));
        v.dedup();
        v
    }

    /// Facets as sorted vertex-index lists with non-maximal ones removed.
    pub fn normalized(&self) -> Result<Vec<Vec<usize>>, CwError> {
        let verts = self.vertex_order();
        let pos: HashMap<&str, usize> = verts.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for (k, f) in self.facets.iter().enumerate() {
            if f.is_empty() {
                continue;
            }
            if f.len() > MAX_FACET_SIZE {
                return Err(CwError::FacetTooLarge { facet: k, size: f.len() });
            }
            let mut s: Vec<usize> = f.iter().map(|v| pos[v.as_str()]).collect();
            s.sort_unstable();
            if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
                return Err(CwError::RepeatedVertex { facet: k, vertex: verts[w[0]].clone() });
            }
            facets.push(s);
        }
        if facets.is_empty() {
            return Err(CwError::EmptyComplex);
        }
        facets.sort();
        facets.dedup();
        let keep: Vec<Vec<usize>> = facets
            .iter()
            .filter(|f| !facets.iter().any(|g| g.len() > f.len() && f.iter().all(|v| g.contains(v))))
            .cloned()
            .collect();
        Ok(keep)
    }
}

/// Result of the graded and diamond checks; empty diagnostics means pass.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RegularityReport {
    pub diagnostics: Vec<String>,
}

impl RegularityReport {
    pub fn ok(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

/// Necessary conditions for a regular CW face poset: covers raise
/// dimension by one, positive-dimensional cells have faces, edges have
/// two endpoints, and every length-two interval has two middle elements.
/// Passing does not prove regularity.
pub fn validate_regular(fp: &FacePoset) -> RegularityReport {
    let mut diagnostics = Vec::new();
    let p = fp.poset();
    for (a, b) in p.cover_pairs() {
        if fp.dim(b) != fp.dim(a) + 1 {
            diagnostics.push(format!(
                "not graded: `{}` (dim {}) is covered by `{}` (dim {})",
                fp.id(a),
                fp.dim(a),
                fp.id(b),
                fp.dim(b)
            ));
        }
    }
    for e in 0..fp.len() {
        let k = fp.faces(e).len();
        if fp.dim(e) == 1 && k != 2 {
            diagnostics.push(format!("edge `{}` has {k} vertices", fp.id(e)));
        } else if fp.dim(e) > 1 && k == 0 {
            diagnostics.push(format!("cell `{}` of dimension {} has no faces", fp.id(e), fp.dim(e)));
        }
    }
    for a in 0..fp.len() {
        for b in p.up_set(a) {
            if fp.dim(b) != fp.dim(a) + 2 {
                continue;
            }
            let mid: Vec<&str> =
                fp.cofaces(a).iter().filter(|&&m| fp.leq(m, b)).map(|&m| fp.id(m)).collect();
            if mid.len() != 2 {
                diagnostics.push(format!(
                    "diamond fails between `{}` and `{}`: {} middle cells [{}]",
                    fp.id(a),
                    fp.id(b),
                    mid.len(),
                    mid.join(", ")
                ));
            }
        }
    }
    RegularityReport { diagnostics }
}

/// The 3×3 cubical grid with opposite sides identified. Coordinates are
/// taken mod 3: `p(i,j)` is a vertex, `h(i,j)` joins `p(i,j)` to `p(i+1,j)`,
/// `v(i,j)` joins `p(i,j)` to `p(i,j+1)`, and `s(i,j)` is the square with
/// lower-left corner `p(i,j)`.
pub fn torus_fixture() -> FacePoset {
    let name = |k: char, i: usize, j: usize| format!("{k}({},{})", i % 3, j % 3);
    let mut cells = Vec::new();
    for (k, dim) in [('p', 0), ('h', 1), ('v', 1), ('s', 2)] {
        for j in 0..3 {
            for i in 0..3 {
                cells.push(Cell { id: name(k, i, j), dim });
            }
        }
    }
    let mut covers = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            covers.push((name('p', i, j), name('h', i, j)));
            covers.push((name('p', i + 1, j), name('h', i, j)));
            covers.push((name('p', i, j), name('v', i, j)));
            covers.push((name('p', i, j + 1), name('v', i, j)));
            covers.push((name('h', i, j), name('s', i, j)));
            covers.push((name('h', i, j + 1), name('s', i, j)));
            covers.push((name('v', i, j), name('s', i, j)));
            covers.push((name('v', i + 1, j), name('s', i, j)));
        }
    }
    FacePoset::new(cells, &covers).expect("torus grid is a valid face poset")
}
