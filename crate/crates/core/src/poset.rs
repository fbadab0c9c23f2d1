//! Finite posets stored as reachability bitsets, plus closure operators and
//! order complexes.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt::Write as _;
use std::ptr;

use fixedbitset::FixedBitSet;
use serde_json::{json, Value};
use thiserror::Error;

/// Largest number of strict relation pairs a poset may hold.
pub const MAX_RELATION_PAIRS: usize = 1_000_000;

/// Largest number of elements; the reachability matrix is quadratic.
pub const MAX_ELEMENTS: usize = 20_000;

/// Default limit on the number of simplices of an order complex.
pub const MAX_SIMPLICES: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation has a cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("not a partial order: {0}")]
    NotAnOrder(String),
    #[error("map is not order-preserving: `{0}` <= `{1}` but their images are not ordered")]
    NotMonotone(String, String),
    #[error("map table has {got} entries, expected {expected}")]
    BadTable { got: usize, expected: usize },
}

#[derive(Debug, Clone)]
pub struct FinitePoset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<FixedBitSet>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

fn intern(ids: Vec<String>) -> Result<HashMap<String, usize>, PosetError> {
    if ids.len() > MAX_ELEMENTS {
        return Err(PosetError::Capacity(format!(
            "{} elements, limit is {MAX_ELEMENTS}",
            ids.len()
        )));
    }
    let mut index = HashMap::with_capacity(ids.len());
    for (i, id) in ids.into_iter().enumerate() {
        if index.contains_key(&id) {
            return Err(PosetError::DuplicateElement(id));
        }
        index.insert(id, i);
    }
    Ok(index)
}

impl FinitePoset {
    /// Transitive closure of a relation given on element indices. Self-loops
    /// are ignored; any longer cycle is an error.
    pub fn from_relation(ids: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let index = intern(ids.clone())?;
        let n = ids.len();
        if pairs.len() > MAX_RELATION_PAIRS {
            return Err(PosetError::Capacity(format!(
                "{} input pairs, limit is {MAX_RELATION_PAIRS}",
                pairs.len()
            )));
        }
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(PosetError::UnknownElement(format!("#{}", a.max(b))));
            }
            if a != b {
                succ[a].push(b);
                pred[b].push(a);
            }
        }
        for s in succ.iter_mut().chain(pred.iter_mut()) {
            s.sort_unstable();
            s.dedup();
        }
        let mut indeg: Vec<usize> = pred.iter().map(Vec::len).collect();
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&x| indeg[x] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(x)) = heap.pop() {
            order.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    heap.push(Reverse(y));
                }
            }
        }
        if order.len() < n {
            // Every leftover node has a leftover predecessor; walk back until a repeat.
            let start = (0..n).find(|&x| indeg[x] > 0).unwrap();
            let mut seen = vec![usize::MAX; n];
            let mut walk = Vec::new();
            let mut x = start;
            while seen[x] == usize::MAX {
                seen[x] = walk.len();
                walk.push(x);
                x = *pred[x].iter().find(|&&p| indeg[p] > 0).unwrap();
            }
            let mut cycle: Vec<String> = walk[seen[x]..].iter().rev().map(|&v| ids[v].clone()).collect();
            cycle.push(cycle[0].clone());
            return Err(PosetError::Cycle(cycle));
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut total = 0usize;
        for &x in order.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(x);
            for &y in &succ[x] {
                set.union_with(&up[y]);
            }
            total += set.count_ones(..) - 1;
            if total > MAX_RELATION_PAIRS {
                return Err(PosetError::Capacity(format!(
                    "more than {MAX_RELATION_PAIRS} relation pairs"
                )));
            }
            up[x] = set;
        }
        Ok(Self::finish(ids, index, up))
    }

    /// Like [`FinitePoset::from_relation`] but with pairs given by element id.
    pub fn from_named_relation(ids: Vec<String>, pairs: &[(&str, &str)]) -> Result<Self, PosetError> {
        let lookup: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let get = |s: &str| lookup.get(s).copied().ok_or_else(|| PosetError::UnknownElement(s.to_string()));
        let idx: Result<Vec<_>, _> = pairs.iter().map(|&(a, b)| Ok((get(a)?, get(b)?))).collect();
        Self::from_relation(ids, &idx?)
    }

    /// Builds a poset from a full order predicate, checking reflexivity,
    /// antisymmetry and transitivity.
    pub fn from_leq(ids: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, PosetError> {
        let n = ids.len();
        for x in 0..n {
            if !leq(x, x) {
                return Err(PosetError::NotAnOrder(format!("`{}` is not <= itself", ids[x])));
            }
        }
        Self::from_up_sets(ids, |x| (0..n).filter(|&y| leq(x, y)).collect())
    }

    /// Builds a poset from the up-set of each element (the element itself may
    /// be omitted), checking antisymmetry and transitivity.
    pub fn from_up_sets(ids: Vec<String>, above: impl Fn(usize) -> Vec<usize>) -> Result<Self, PosetError> {
        let index = intern(ids.clone())?;
        let n = ids.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut total = 0usize;
        for (x, row) in up.iter_mut().enumerate() {
            row.insert(x);
            for y in above(x) {
                if y >= n {
                    return Err(PosetError::UnknownElement(format!("#{y}")));
                }
                row.insert(y);
            }
            total += row.count_ones(..) - 1;
            if total > MAX_RELATION_PAIRS {
                return Err(PosetError::Capacity(format!(
                    "more than {MAX_RELATION_PAIRS} relation pairs"
                )));
            }
        }
        for x in 0..n {
            for y in up[x].ones() {
                if y != x && up[y].contains(x) {
                    return Err(PosetError::NotAnOrder(format!(
                        "`{}` and `{}` are distinct but mutually related",
                        ids[x], ids[y]
                    )));
                }
                if !up[y].is_subset(&up[x]) {
                    let z = up[y].difference(&up[x]).next().unwrap();
                    return Err(PosetError::NotAnOrder(format!(
                        "`{}` <= `{}` <= `{}` but not `{}` <= `{}`",
                        ids[x], ids[y], ids[z], ids[x], ids[z]
                    )));
                }
            }
        }
        Ok(Self::finish(ids, index, up))
    }

    fn finish(ids: Vec<String>, index: HashMap<String, usize>, up: Vec<FixedBitSet>) -> Self {
        let n = ids.len();
        let sizes: Vec<usize> = up.iter().map(|s| s.count_ones(..)).collect();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for x in 0..n {
            // Larger elements have strictly smaller up-sets, so this is a topological order.
            let mut above: Vec<usize> = up[x].ones().filter(|&y| y != x).collect();
            above.sort_by_key(|&y| (Reverse(sizes[y]), y));
            let mut hidden = FixedBitSet::with_capacity(n);
            for z in above {
                if hidden.contains(z) {
                    continue;
                }
                upper[x].push(z);
                hidden.union_with(&up[z]);
            }
            upper[x].sort_unstable();
            for &z in &upper[x] {
                lower[z].push(x);
            }
        }
        FinitePoset { ids, index, up, upper, lower }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// Elements `y` with `x <= y`, ascending.
    pub fn up_set(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[x].ones()
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    /// All cover pairs `(lo, hi)` sorted by interned id.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (x, ups) in self.upper.iter().enumerate() {
            out.extend(ups.iter().map(|&y| (x, y)));
        }
        out
    }

    /// Number of strict relation pairs.
    pub fn relation_size(&self) -> usize {
        self.up.iter().map(|s| s.count_ones(..) - 1).sum()
    }

    /// Linear extension, smallest available interned id first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut indeg: Vec<usize> = self.lower.iter().map(Vec::len).collect();
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&x| indeg[x] == 0).map(Reverse).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(Reverse(x)) = heap.pop() {
            out.push(x);
            for &y in &self.upper[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    heap.push(Reverse(y));
                }
            }
        }
        out
    }

    /// Induced subposet on `members`, which keep their relative order.
    pub fn induced(&self, members: &[usize]) -> FinitePoset {
        let ids: Vec<String> = members.iter().map(|&m| self.ids[m].clone()).collect();
        let index = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let k = members.len();
        let up = members
            .iter()
            .map(|&a| {
                let mut row = FixedBitSet::with_capacity(k);
                for (j, &b) in members.iter().enumerate() {
                    if self.leq(a, b) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Self::finish(ids, index, up)
    }

    /// Exhaustive check of the order axioms on the stored relation.
    pub fn check_axioms(&self) -> Result<(), PosetError> {
        let n = self.len();
        for x in 0..n {
            if !self.leq(x, x) {
                return Err(PosetError::NotAnOrder(format!("`{}` not reflexive", self.ids[x])));
            }
            for y in self.up[x].ones() {
                if y != x && self.leq(y, x) {
                    return Err(PosetError::NotAnOrder(format!(
                        "`{}` and `{}` violate antisymmetry",
                        self.ids[x], self.ids[y]
                    )));
                }
                if !self.up[y].is_subset(&self.up[x]) {
                    return Err(PosetError::NotAnOrder(format!("transitivity fails at `{}`", self.ids[x])));
                }
            }
        }
        Ok(())
    }

    /// `{"elements":[...],"covers":[[lo,hi],...]}`.
    pub fn to_json(&self) -> Value {
        let covers: Vec<Value> = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| json!([self.ids[a], self.ids[b]]))
            .collect();
        json!({ "elements": self.ids, "covers": covers })
    }

    /// Hasse diagram in DOT, edges pointing from lower to higher elements.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {} {{", dot_quote(name));
        let _ = writeln!(s, "  rankdir=BT;");
        for id in &self.ids {
            let _ = writeln!(s, "  {};", dot_quote(id));
        }
        for (a, b) in self.cover_pairs() {
            let _ = writeln!(s, "  {} -> {};", dot_quote(&self.ids[a]), dot_quote(&self.ids[b]));
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// An order-preserving map between two posets, given as a table of images.
#[derive(Debug, Clone)]
pub struct PosetMap<'a> {
    domain: &'a FinitePoset,
    codomain: &'a FinitePoset,
    table: Vec<usize>,
}

impl<'a> PosetMap<'a> {
    pub fn new(domain: &'a FinitePoset, codomain: &'a FinitePoset, table: Vec<usize>) -> Result<Self, PosetError> {
        if table.len() != domain.len() {
            return Err(PosetError::BadTable { got: table.len(), expected: domain.len() });
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= codomain.len()) {
            return Err(PosetError::UnknownElement(format!("#{bad}")));
        }
        for (x, y) in domain.cover_pairs() {
            if !codomain.leq(table[x], table[y]) {
                return Err(PosetError::NotMonotone(domain.id(x).into(), domain.id(y).into()));
            }
        }
        Ok(PosetMap { domain, codomain, table })
    }

    pub fn endo(p: &'a FinitePoset, table: Vec<usize>) -> Result<Self, PosetError> {
        Self::new(p, p, table)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Sorted, deduplicated image.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.table.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn is_idempotent_endo(&self) -> bool {
        ptr::eq(self.domain, self.codomain) && self.table.iter().all(|&y| self.table[y] == y)
    }

    /// Idempotent and `f(x) <= x` for all `x`.
    pub fn is_descending_closure_operator(&self) -> bool {
        self.is_idempotent_endo() && (0..self.table.len()).all(|x| self.domain.leq(self.table[x], x))
    }

    /// Idempotent and `x <= f(x)` for all `x`.
    pub fn is_ascending_closure_operator(&self) -> bool {
        self.is_idempotent_endo() && (0..self.table.len()).all(|x| self.domain.leq(x, self.table[x]))
    }
}

/// A semi-simplicial set given by face tables. `faces[n][s]` lists the
/// `n + 1` faces of the `n`-simplex `s` as indices into dimension `n - 1`.
#[derive(Debug, Clone, Default)]
pub struct DeltaSet {
    faces: Vec<Vec<Vec<usize>>>,
}

impl DeltaSet {
    pub fn new(faces: Vec<Vec<Vec<usize>>>) -> Self {
        DeltaSet { faces }
    }

    /// Highest dimension with a simplex, or `None` if empty.
    pub fn top_dim(&self) -> Option<usize> {
        (0..self.faces.len()).rev().find(|&n| !self.faces[n].is_empty())
    }

    pub fn count(&self, n: usize) -> usize {
        self.faces.get(n).map_or(0, Vec::len)
    }

    pub fn faces(&self, n: usize, s: usize) -> &[usize] {
        &self.faces[n][s]
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for all `i < j`.
    pub fn check_identities(&self) -> bool {
        for n in 2..self.faces.len() {
            for f in &self.faces[n] {
                for j in 0..=n {
                    for i in 0..j {
                        if self.faces[n - 1][f[j]][i] != self.faces[n - 1][f[i]][j - 1] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Order complex: `n`-simplices are chains `x_0 < ... < x_n`.
#[derive(Debug, Clone)]
pub struct OrderComplex {
    pub chains: Vec<Vec<Vec<usize>>>,
    pub delta: DeltaSet,
}

pub fn order_complex(p: &FinitePoset) -> Result<OrderComplex, PosetError> {
    order_complex_capped(p, MAX_SIMPLICES)
}

pub fn order_complex_capped(p: &FinitePoset, cap: usize) -> Result<OrderComplex, PosetError> {
    let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut total = p.len();
    if total > cap {
        return Err(PosetError::Capacity(format!("order complex exceeds {cap} simplices")));
    }
    let mut level: Vec<Vec<usize>> = (0..p.len()).map(|x| vec![x]).collect();
    let mut lookup: HashMap<Vec<usize>, usize> = level.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    faces.push(vec![Vec::new(); level.len()]);
    while !level.is_empty() {
        let mut next = Vec::new();
        for c in &level {
            let last = *c.last().unwrap();
            for y in p.up_set(last).filter(|&y| y != last) {
                let mut d = c.clone();
                d.push(y);
                next.push(d);
            }
        }
        total += next.len();
        if total > cap {
            return Err(PosetError::Capacity(format!("order complex exceeds {cap} simplices")));
        }
        let next_faces: Vec<Vec<usize>> = next
            .iter()
            .map(|c| {
                (0..c.len())
                    .map(|i| {
                        let mut f = c.clone();
                        f.remove(i);
                        lookup[&f]
                    })
                    .collect()
            })
            .collect();
        chains.push(std::mem::replace(&mut level, next));
        lookup = level.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        if !level.is_empty() {
            faces.push(next_faces);
        }
    }
    Ok(OrderComplex { chains, delta: DeltaSet::new(faces) })
}
