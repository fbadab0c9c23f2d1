//! Discrete Morse functions, partial matchings, acyclicity and faithful
//! functions.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cw::FacePoset;
use crate::poset::{FinitePoset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorseError {
    #[error("function has {got} values for {expected} cells")]
    WrongLength { got: usize, expected: usize },
    #[error("not a discrete Morse function; offending cells: {}", .0.join(", "))]
    NotMorse(Vec<String>),
    #[error("`{0}` is not a codimension-one face of `{1}`")]
    NotCodimOne(String, String),
    #[error("cell `{0}` is matched twice")]
    MatchedTwice(String),
    #[error("matching is not acyclic; closed path through {}", .0.join(", "))]
    Cyclic(Vec<String>),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Integer values indexed by cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteMorseFunction {
    values: Vec<i64>,
}

impl DiscreteMorseFunction {
    pub fn new(fp: &FacePoset, values: Vec<i64>) -> Result<Self, MorseError> {
        if values.len() != fp.len() {
            return Err(MorseError::WrongLength { got: values.len(), expected: fp.len() });
        }
        Ok(DiscreteMorseFunction { values })
    }

    /// `f(e) = dim e`.
    pub fn dimension(fp: &FacePoset) -> Self {
        DiscreteMorseFunction { values: (0..fp.len()).map(|e| fp.dim(e) as i64).collect() }
    }

    pub fn value(&self, e: usize) -> i64 {
        self.values[e]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

/// Cofaces `e'` of `e` with `f(e) >= f(e')`.
pub fn upper_neighbors(fp: &FacePoset, f: &DiscreteMorseFunction, e: usize) -> Vec<usize> {
    fp.cofaces(e).iter().copied().filter(|&c| f.value(e) >= f.value(c)).collect()
}

/// Faces `e'` of `e` with `f(e') >= f(e)`.
pub fn lower_neighbors(fp: &FacePoset, f: &DiscreteMorseFunction, e: usize) -> Vec<usize> {
    fp.faces(e).iter().copied().filter(|&c| f.value(c) >= f.value(e)).collect()
}

/// Cells with more than one upper or lower neighbor; empty iff `f` is Morse.
pub fn morse_violations(fp: &FacePoset, f: &DiscreteMorseFunction) -> Vec<usize> {
    (0..fp.len())
        .filter(|&e| upper_neighbors(fp, f, e).len() > 1 || lower_neighbors(fp, f, e).len() > 1)
        .collect()
}

pub fn is_discrete_morse(fp: &FacePoset, f: &DiscreteMorseFunction) -> bool {
    morse_violations(fp, f).is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMatching {
    pairs: Vec<(usize, usize)>,
    up: Vec<Option<usize>>,
    down: Vec<Option<usize>>,
}

impl PartialMatching {
    pub fn new(fp: &FacePoset, pairs: &[(usize, usize)]) -> Result<Self, MorseError> {
        let n = fp.len();
        let mut up = vec![None; n];
        let mut down = vec![None; n];
        let mut seen = vec![false; n];
        for &(d, u) in pairs {
            if !fp.is_codim_one(d, u) {
                return Err(MorseError::NotCodimOne(fp.id(d).into(), fp.id(u).into()));
            }
            for x in [d, u] {
                if seen[x] {
                    return Err(MorseError::MatchedTwice(fp.id(x).into()));
                }
                seen[x] = true;
            }
            up[d] = Some(u);
            down[u] = Some(d);
        }
        let mut pairs = pairs.to_vec();
        pairs.sort_unstable();
        Ok(PartialMatching { pairs, up, down })
    }

    pub fn empty(fp: &FacePoset) -> Self {
        PartialMatching { pairs: Vec::new(), up: vec![None; fp.len()], down: vec![None; fp.len()] }
    }

    /// Matched pairs `(d, μ(d))`, sorted.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `μ(d)` for `d ∈ D`.
    pub fn mate_up(&self, d: usize) -> Option<usize> {
        self.up[d]
    }

    /// `μ⁻¹(u)` for `u ∈ U`.
    pub fn mate_down(&self, u: usize) -> Option<usize> {
        self.down[u]
    }

    pub fn in_d(&self, e: usize) -> bool {
        self.up[e].is_some()
    }

    pub fn in_u(&self, e: usize) -> bool {
        self.down[e].is_some()
    }

    pub fn is_critical(&self, e: usize) -> bool {
        !self.in_d(e) && !self.in_u(e)
    }

    pub fn critical_cells(&self) -> Vec<usize> {
        (0..self.up.len()).filter(|&e| self.is_critical(e)).collect()
    }

    pub fn cell_count(&self) -> usize {
        self.up.len()
    }
}

pub fn matching_from_function(fp: &FacePoset, f: &DiscreteMorseFunction) -> Result<PartialMatching, MorseError> {
    let bad = morse_violations(fp, f);
    if !bad.is_empty() {
        return Err(MorseError::NotMorse(bad.iter().map(|&e| fp.id(e).to_string()).collect()));
    }
    let pairs: Vec<(usize, usize)> =
        (0..fp.len()).filter_map(|e| upper_neighbors(fp, f, e).first().map(|&u| (e, u))).collect();
    PartialMatching::new(fp, &pairs)
}

/// Arcs `u -> u'` of the matched digraph: `u ≻₁ μ⁻¹(u')`, `u ≠ u'`.
fn matched_successors<'a>(fp: &'a FacePoset, m: &'a PartialMatching, u: usize) -> impl Iterator<Item = usize> + 'a {
    fp.faces(u).iter().filter_map(move |&d| m.mate_up(d)).filter(move |&v| v != u)
}

/// A closed Forman path as pairs `(d_i, μ(d_i))`, or `None` if acyclic.
pub fn find_cycle(fp: &FacePoset, m: &PartialMatching) -> Option<Vec<(usize, usize)>> {
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let n = fp.len();
    let mut color = vec![WHITE; n];
    for &(_, root) in m.pairs() {
        if color[root] != WHITE {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        color[root] = GREY;
        stack.push((root, matched_successors(fp, m, root).collect(), 0));
        while let Some(top) = stack.last_mut() {
            if top.2 < top.1.len() {
                let v = top.1[top.2];
                top.2 += 1;
                match color[v] {
                    WHITE => {
                        color[v] = GREY;
                        let succ = matched_successors(fp, m, v).collect();
                        stack.push((v, succ, 0));
                    }
                    GREY => {
                        let start = stack.iter().position(|s| s.0 == v).unwrap();
                        let cycle = stack[start..].iter().map(|s| (m.mate_down(s.0).unwrap(), s.0)).collect();
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                color[top.0] = BLACK;
                stack.pop();
            }
        }
    }
    None
}

pub fn is_acyclic(fp: &FacePoset, m: &PartialMatching) -> bool {
    find_cycle(fp, m).is_none()
}

/// The order ⊵ on cells, stored so that `leq(a, b)` means `b ⊵ a`.
pub fn unrhd_order(fp: &FacePoset, m: &PartialMatching) -> Result<FinitePoset, PosetError> {
    let mut pairs = Vec::new();
    for a in 0..fp.len() {
        for b in fp.strictly_above(a) {
            // b ⪰ a gives b ⊳₁ a unless a is matched up to b.
            if m.mate_up(a) == Some(b) {
                pairs.push((b, a));
            } else {
                pairs.push((a, b));
            }
        }
    }
    let ids = fp.cells().iter().map(|c| c.id.clone()).collect();
    FinitePoset::from_relation(ids, &pairs)
}

/// Injective function read off the min-id linear extension of ⊵.
pub fn faithful_function(fp: &FacePoset, m: &PartialMatching) -> Result<DiscreteMorseFunction, MorseError> {
    let order = unrhd_order(fp, m).map_err(|e| match e {
        PosetError::Cycle(c) => MorseError::Cyclic(c),
        other => MorseError::Poset(other),
    })?;
    let mut values = vec![0; fp.len()];
    for (rank, e) in order.linear_extension().into_iter().enumerate() {
        values[e] = rank as i64;
    }
    Ok(DiscreteMorseFunction { values })
}

pub fn is_faithful(fp: &FacePoset, f: &DiscreteMorseFunction) -> bool {
    let Ok(m) = matching_from_function(fp, f) else {
        return false;
    };
    let distinct: HashSet<i64> = f.values.iter().copied().collect();
    if distinct.len() != f.values.len() {
        return false;
    }
    (0..fp.len()).all(|e| fp.strictly_above(e).all(|x| m.mate_up(e) == Some(x) || f.value(e) < f.value(x)))
}

/// Same strict comparisons across every cover pair.
pub fn equivalent(fp: &FacePoset, f: &DiscreteMorseFunction, g: &DiscreteMorseFunction) -> bool {
    (0..fp.len()).all(|e| {
        fp.cofaces(e).iter().all(|&c| (f.value(e) < f.value(c)) == (g.value(e) < g.value(c)))
    })
}

/// Matches unmatched cover pairs in a seeded shuffle, keeping a pair only if
/// the matching stays acyclic.
pub fn greedy_matching(fp: &FacePoset, seed: u64) -> PartialMatching {
    let mut candidates: Vec<(usize, usize)> =
        (0..fp.len()).flat_map(|d| fp.cofaces(d).iter().map(move |&u| (d, u))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    candidates.shuffle(&mut rng);
    let mut m = PartialMatching::empty(fp);
    for (d, u) in candidates {
        if !m.is_critical(d) || !m.is_critical(u) {
            continue;
        }
        // A new cycle must pass through u and return via some x ≻₁ d.
        let closes = |x: usize| x != u && fp.faces(x).contains(&d);
        let mut seen = vec![false; fp.len()];
        let mut stack = vec![u];
        seen[u] = true;
        let mut cyclic = false;
        while let Some(x) = stack.pop() {
            if closes(x) {
                cyclic = true;
                break;
            }
            for y in fp.faces(x).iter().filter_map(|&f| m.mate_up(f)).filter(|&y| y != x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if !cyclic {
            m.up[d] = Some(u);
            m.down[u] = Some(d);
            m.pairs.push((d, u));
        }
    }
    m.pairs.sort_unstable();
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::{torus_fixture, SimplicialComplex};
    use proptest::prelude::*;

    fn circle() -> FacePoset {
        let c = SimplicialComplex::new(vec![
            vec!["v0".into(), "v1".into()],
            vec!["v1".into(), "v2".into()],
            vec!["v0".into(), "v2".into()],
        ]);
        FacePoset::from_simplicial(&c).unwrap()
    }

    fn ix(fp: &FacePoset, id: &str) -> usize {
        fp.index_of(id).unwrap()
    }

    fn values(fp: &FacePoset, vals: &[(&str, i64)]) -> DiscreteMorseFunction {
        let mut v = vec![0; fp.len()];
        for &(id, x) in vals {
            v[ix(fp, id)] = x;
        }
        DiscreteMorseFunction::new(fp, v).unwrap()
    }

    fn triangle_f(fp: &FacePoset) -> DiscreteMorseFunction {
        values(fp, &[("v0", 0), ("v0,v1", 1), ("v0,v2", 2), ("v1", 4), ("v2", 5), ("v1,v2", 6)])
    }

    /// Brute force: every Forman path is gradient.
    fn forman_acyclic(fp: &FacePoset, m: &PartialMatching) -> bool {
        fn extend(fp: &FacePoset, m: &PartialMatching, path: &mut Vec<usize>) -> bool {
            let last = *path.last().unwrap();
            let u = m.mate_up(last).unwrap();
            if path.len() >= 2 && fp.is_codim_one(path[0], u) {
                return false;
            }
            for &d in fp.faces(u) {
                if d != last && m.in_d(d) && !path.contains(&d) {
                    path.push(d);
                    if !extend(fp, m, path) {
                        return false;
                    }
                    path.pop();
                }
            }
            true
        }
        m.pairs().iter().all(|&(d, _)| extend(fp, m, &mut vec![d]))
    }

    #[test]
    fn triangle_function() {
        let fp = circle();
        let f = triangle_f(&fp);
        assert!(is_discrete_morse(&fp, &f));
        assert!(is_faithful(&fp, &f));
        let m = matching_from_function(&fp, &f).unwrap();
        assert_eq!(m.mate_up(ix(&fp, "v1")), Some(ix(&fp, "v0,v1")));
        assert_eq!(m.mate_up(ix(&fp, "v2")), Some(ix(&fp, "v0,v2")));
        assert_eq!(m.critical_cells(), vec![ix(&fp, "v0"), ix(&fp, "v1,v2")]);
        assert!(is_acyclic(&fp, &m));
        let g = faithful_function(&fp, &m).unwrap();
        assert!(is_faithful(&fp, &g));
        assert_eq!(matching_from_function(&fp, &g).unwrap(), m);
        assert!(equivalent(&fp, &f, &g));
        let scaled = DiscreteMorseFunction::new(&fp, f.values().iter().map(|v| 2 * v + 7).collect()).unwrap();
        assert!(equivalent(&fp, &f, &scaled));
    }

    #[test]
    fn unrhd_on_triangle() {
        let fp = circle();
        let m = matching_from_function(&fp, &triangle_f(&fp)).unwrap();
        let o = unrhd_order(&fp, &m).unwrap();
        assert!(o.leq(ix(&fp, "v0"), ix(&fp, "v0,v1")));
        assert!(o.leq(ix(&fp, "v0,v1"), ix(&fp, "v1")));
        let empty = unrhd_order(&fp, &PartialMatching::empty(&fp)).unwrap();
        for a in 0..fp.len() {
            for b in 0..fp.len() {
                assert_eq!(empty.leq(a, b), fp.leq(a, b));
            }
        }
    }

    #[test]
    fn non_morse_functions() {
        let fp = circle();
        let constant = DiscreteMorseFunction::new(&fp, vec![0; 6]).unwrap();
        assert!(!is_discrete_morse(&fp, &constant));
        assert!(matches!(matching_from_function(&fp, &constant), Err(MorseError::NotMorse(_))));
        let dim = DiscreteMorseFunction::dimension(&fp);
        assert!(is_discrete_morse(&fp, &dim));
        assert!(matching_from_function(&fp, &dim).unwrap().is_empty());
        assert!(!is_faithful(&fp, &dim));
    }

    #[test]
    fn cyclic_matching() {
        let fp = circle();
        let pairs = [("v0", "v0,v1"), ("v1", "v1,v2"), ("v2", "v0,v2")];
        let pairs: Vec<_> = pairs.iter().map(|(a, b)| (ix(&fp, a), ix(&fp, b))).collect();
        let m = PartialMatching::new(&fp, &pairs).unwrap();
        let cycle = find_cycle(&fp, &m).unwrap();
        assert_eq!(cycle.len(), 3);
        assert!(!forman_acyclic(&fp, &m));
        assert!(matches!(unrhd_order(&fp, &m), Err(PosetError::Cycle(_))));
        assert!(matches!(faithful_function(&fp, &m), Err(MorseError::Cyclic(_))));
    }

    #[test]
    fn bad_matchings_rejected() {
        let fp = circle();
        let (v0, v1, e01, e12) = (ix(&fp, "v0"), ix(&fp, "v1"), ix(&fp, "v0,v1"), ix(&fp, "v1,v2"));
        assert!(matches!(PartialMatching::new(&fp, &[(v0, e12)]), Err(MorseError::NotCodimOne(..))));
        assert!(matches!(PartialMatching::new(&fp, &[(v0, e01), (v1, e01)]), Err(MorseError::MatchedTwice(_))));
    }

    #[test]
    fn greedy_on_small_complexes() {
        let fp = circle();
        let m = greedy_matching(&fp, 0);
        assert!(is_acyclic(&fp, &m));
        assert!(m.critical_cells().len() >= 2);
        let simplex = FacePoset::from_simplicial(&SimplicialComplex::new(vec![vec!["a".into(), "b".into(), "c".into()]])).unwrap();
        for seed in 0..20 {
            let m = greedy_matching(&simplex, seed);
            assert!(is_acyclic(&simplex, &m));
            assert_eq!(m.critical_cells().len() % 2, 1);
            assert_eq!(greedy_matching(&simplex, seed), m);
        }
    }

    #[test]
    fn torus_round_trip() {
        let t = torus_fixture();
        for seed in 0..5 {
            let m = greedy_matching(&t, seed);
            let g = faithful_function(&t, &m).unwrap();
            assert!(is_faithful(&t, &g));
            assert_eq!(matching_from_function(&t, &g).unwrap(), m);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn digraph_test_matches_forman_paths(facets in proptest::collection::vec(proptest::collection::btree_set(0u8..6, 1..4), 1..5), picks in proptest::collection::vec(any::<bool>(), 40)) {
            let sc = SimplicialComplex::new(facets.iter().map(|f| f.iter().map(|v| format!("x{v}")).collect()).collect());
            let fp = FacePoset::from_simplicial(&sc).unwrap();
            prop_assume!(fp.len() <= 30);
            // Arbitrary (possibly cyclic) matching from the boolean picks.
            let mut used = vec![false; fp.len()];
            let mut pairs = Vec::new();
            let mut k = 0;
            for d in 0..fp.len() {
                for &u in fp.cofaces(d) {
                    let take = picks[k % picks.len()];
                    k += 1;
                    if take && !used[d] && !used[u] {
                        used[d] = true;
                        used[u] = true;
                        pairs.push((d, u));
                    }
                }
            }
            let m = PartialMatching::new(&fp, &pairs).unwrap();
            let acyclic = is_acyclic(&fp, &m);
            prop_assert_eq!(acyclic, forman_acyclic(&fp, &m));
            prop_assert_eq!(acyclic, unrhd_order(&fp, &m).is_ok());
            if acyclic {
                let g = faithful_function(&fp, &m).unwrap();
                prop_assert!(is_faithful(&fp, &g));
                prop_assert_eq!(matching_from_function(&fp, &g).unwrap(), m);
            }
        }
    }
}
