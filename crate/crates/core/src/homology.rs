//! Integer chain complexes and their homology.

use std::fmt;

use num_bigint::BigUint;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::poset::{order_complex, DeltaSet, FinitePoset, PosetError};
use crate::snf::{smith_normal_form, SparseMatrix};

/// `boundary[n]` maps `C_n` to `C_{n-1}`; `boundary[0]` is the zero map to
/// the zero group. A truncated complex is missing the boundary out of its
/// top degree, so its homology is only reported below that degree.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    boundary: Vec<SparseMatrix>,
    truncated: bool,
}

impl ChainComplex {
    pub fn new(ranks: &[usize], mut boundary: Vec<SparseMatrix>, truncated: bool) -> Self {
        assert_eq!(ranks.len(), boundary.len() + 1, "need one boundary per positive degree");
        boundary.insert(0, SparseMatrix::zero(0, ranks.first().copied().unwrap_or(0)));
        for (n, b) in boundary.iter().enumerate() {
            assert_eq!(b.ncols(), ranks[n]);
            if n > 0 {
                assert_eq!(b.nrows(), ranks[n - 1]);
            }
        }
        ChainComplex { boundary, truncated }
    }

    /// Simplicial chains with `d = sum (-1)^i d_i`.
    pub fn from_delta_set(ds: &DeltaSet) -> Self {
        let top = match ds.top_dim() {
            Some(t) => t,
            None => return ChainComplex { boundary: Vec::new(), truncated: false },
        };
        let ranks: Vec<usize> = (0..=top).map(|n| ds.count(n)).collect();
        let boundary = (1..=top)
            .map(|n| {
                let cols = (0..ds.count(n))
                    .map(|s| {
                        ds.faces(n, s)
                            .iter()
                            .enumerate()
                            .map(|(i, &f)| (f, if i % 2 == 0 { 1 } else { -1 }))
                            .collect()
                    })
                    .collect();
                SparseMatrix::from_columns(ranks[n - 1], cols)
            })
            .collect();
        Self::new(&ranks, boundary, false)
    }

    /// Chains of the order complex of `p`.
    pub fn of_poset(p: &FinitePoset) -> Result<Self, PosetError> {
        Ok(Self::from_delta_set(&order_complex(p)?.delta))
    }

    /// Number of stored degrees.
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn rank(&self, n: usize) -> usize {
        self.boundary.get(n).map_or(0, SparseMatrix::ncols)
    }

    pub fn boundary(&self, n: usize) -> &SparseMatrix {
        &self.boundary[n]
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Checks that every composite of consecutive boundaries vanishes.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.boundary.len()).all(|n| self.boundary[n - 1].mul(&self.boundary[n]).is_zero())
    }

    pub fn homology(&self) -> HomologyResult {
        let len = self.boundary.len();
        let smith: Vec<_> = self.boundary.iter().map(smith_normal_form).collect();
        let reported = if self.truncated { len.saturating_sub(1) } else { len };
        let degrees: Vec<DegreeHomology> = (0..reported)
            .map(|n| {
                let out_rank = smith[n].rank();
                let (in_rank, torsion) = match smith.get(n + 1) {
                    Some(s) => (s.rank(), s.torsion()),
                    None => (0, Vec::new()),
                };
                DegreeHomology { dim: n, betti: self.rank(n) - out_rank - in_rank, torsion }
            })
            .collect();
        let euler = degrees
            .iter()
            .map(|d| if d.dim % 2 == 0 { d.betti as i64 } else { -(d.betti as i64) })
            .sum();
        HomologyResult { degrees, euler }
    }

    /// Alternating sum of chain ranks.
    pub fn chain_euler(&self) -> i64 {
        (0..self.len())
            .map(|n| if n % 2 == 0 { self.rank(n) as i64 } else { -(self.rank(n) as i64) })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHomology {
    pub dim: usize,
    pub betti: usize,
    pub torsion: Vec<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub degrees: Vec<DegreeHomology>,
    pub euler: i64,
}

impl HomologyResult {
    /// Homology with the given Betti numbers and no torsion.
    pub fn free(betti: &[usize]) -> Self {
        let degrees: Vec<DegreeHomology> = betti
            .iter()
            .enumerate()
            .map(|(dim, &betti)| DegreeHomology { dim, betti, torsion: Vec::new() })
            .collect();
        let euler = betti
            .iter()
            .enumerate()
            .map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        HomologyResult { degrees, euler }
    }

    pub fn betti(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.betti)
    }

    fn degree_is_zero(&self, n: usize) -> bool {
        self.degrees.get(n).map_or(true, |d| d.betti == 0 && d.torsion.is_empty())
    }

    /// Same groups in every degree below `bound`, absent degrees counting as zero.
    pub fn agrees_below(&self, other: &HomologyResult, bound: usize) -> bool {
        (0..bound).all(|n| match (self.degrees.get(n), other.degrees.get(n)) {
            (Some(a), Some(b)) => a.betti == b.betti && a.torsion == b.torsion,
            (Some(_), None) => self.degree_is_zero(n),
            (None, Some(_)) => other.degree_is_zero(n),
            (None, None) => true,
        })
    }

    /// Reduced homology vanishes: a single point up to homology.
    pub fn is_reduced_acyclic(&self) -> bool {
        self.betti(0) == 1
            && self.degrees.iter().all(|d| d.torsion.is_empty())
            && self.degrees.iter().skip(1).all(|d| d.betti == 0)
    }
}

struct Torsion<'a>(&'a [BigUint]);

impl Serialize for Torsion<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for t in self.0 {
            match u64::try_from(t) {
                Ok(v) => seq.serialize_element(&v)?,
                Err(_) => seq.serialize_element(&t.to_string())?,
            }
        }
        seq.end()
    }
}

impl Serialize for DegreeHomology {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DegreeHomology", 3)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("betti", &self.betti)?;
        st.serialize_field("torsion", &Torsion(&self.torsion))?;
        st.end()
    }
}

impl Serialize for HomologyResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("HomologyResult", 2)?;
        st.serialize_field("degrees", &self.degrees)?;
        st.serialize_field("euler", &self.euler)?;
        st.end()
    }
}

impl fmt::Display for HomologyResult {
    /// Written like `(Z, Z^2 + Z/2, 0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .degrees
            .iter()
            .map(|d| {
                let mut terms = Vec::new();
                match d.betti {
                    0 => {}
                    1 => terms.push("Z".to_string()),
                    b => terms.push(format!("Z^{b}")),
                }
                terms.extend(d.torsion.iter().map(|t| format!("Z/{t}")));
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ")
                }
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn circle_as_poset() {
        // Face poset of a square boundary: four vertices below four edges.
        let pairs = [(0, 4), (1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 7), (0, 7)];
        let p = FinitePoset::from_relation(names(8), &pairs).unwrap();
        let c = ChainComplex::of_poset(&p).unwrap();
        assert!(c.boundary_squares_to_zero());
        let h = c.homology();
        assert_eq!(h, HomologyResult::free(&[1, 1]));
        assert_eq!(h.euler, c.chain_euler());
        assert_eq!(h.to_string(), "(Z, Z)");
    }

    #[test]
    fn projective_plane_torsion() {
        // Minimal 6-vertex triangulation of the real projective plane.
        let tris = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for t in &tris {
            let mut t = t.to_vec();
            t.sort();
            for mask in 1..8u32 {
                let c: Vec<usize> = (0..3).filter(|i| mask & (1 << i) != 0).map(|i| t[i]).collect();
                if !cells.contains(&c) {
                    cells.push(c);
                }
            }
        }
        let mut pairs = Vec::new();
        for (a, x) in cells.iter().enumerate() {
            for (b, y) in cells.iter().enumerate() {
                if x.len() + 1 == y.len() && x.iter().all(|v| y.contains(v)) {
                    pairs.push((a, b));
                }
            }
        }
        let p = FinitePoset::from_relation(names(cells.len()), &pairs).unwrap();
        let h = ChainComplex::of_poset(&p).unwrap().homology();
        assert_eq!(h.to_string(), "(Z, Z/2, 0)");
        assert_eq!(
            serde_json::to_string(&h).unwrap(),
            r#"{"degrees":[{"dim":0,"betti":1,"torsion":[]},{"dim":1,"betti":0,"torsion":[2]},{"dim":2,"betti":0,"torsion":[]}],"euler":1}"#
        );
    }

    #[test]
    fn empty_complex() {
        let p = FinitePoset::from_relation(Vec::new(), &[]).unwrap();
        let h = ChainComplex::of_poset(&p).unwrap().homology();
        assert!(h.degrees.is_empty());
        assert!(!h.is_reduced_acyclic());
    }

    #[test]
    fn agreement_below_bound() {
        let a = HomologyResult::free(&[1, 2, 1]);
        let b = HomologyResult::free(&[1, 2, 1, 0]);
        let c = HomologyResult::free(&[1, 2]);
        assert!(a.agrees_below(&b, 5));
        assert!(a.agrees_below(&c, 2));
        assert!(!a.agrees_below(&c, 3));
    }
}
