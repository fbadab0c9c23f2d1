//! Diagonal of the bisimplicial nerve of a poset-enriched category.
//!
//! An n-simplex is a string of objects `x0 -> x1 -> ... -> xn` together with,
//! for each arrow `i`, a weak chain `a_i^0 <= ... <= a_i^n` in `hom(x_{i-1}, x_i)`.
//! Face `d_k` is the horizontal face (compose arrows `k` and `k+1` entrywise,
//! or drop an end) combined with the vertical face (delete entry `k` of every
//! chain). Degeneracy `s_k` repeats `x_k` with an identity chain and repeats
//! entry `k` of every chain, so a simplex is degenerate iff for some `k`,
//! `x_k = x_{k+1}` and every chain has `a^k = a^{k+1}`.

use std::collections::HashMap;

use crate::category::{FlowCategory, Mor};
use crate::homology::ChainComplex;
use crate::poset::{FinitePoset, PosetError, MAX_SIMPLICES};
use crate::snf::SparseMatrix;

/// A small category whose homs are finite posets and whose composition is
/// monotone in both arguments.
pub trait PosetCategory {
    fn object_count(&self) -> usize;
    fn hom_poset(&self, x: usize, y: usize) -> &FinitePoset;
    fn identity_of(&self, x: usize) -> usize;
    /// `g ∘ f` for `f ∈ hom(x, y)` and `g ∈ hom(y, z)`.
    fn compose_at(&self, x: usize, y: usize, z: usize, g: usize, f: usize) -> usize;
}

impl PosetCategory for FlowCategory {
    fn object_count(&self) -> usize {
        FlowCategory::object_count(self)
    }

    fn hom_poset(&self, x: usize, y: usize) -> &FinitePoset {
        self.hom(x, y).poset()
    }

    fn identity_of(&self, x: usize) -> usize {
        self.identity(x).idx
    }

    fn compose_at(&self, x: usize, y: usize, z: usize, g: usize, f: usize) -> usize {
        self.compose(Mor { src: y, dst: z, idx: g }, Mor { src: x, dst: y, idx: f }).idx
    }
}

/// A poset-enriched category given by explicit tables.
#[derive(Debug, Clone)]
pub struct TableCategory {
    objects: usize,
    homs: Vec<FinitePoset>,
    identities: Vec<usize>,
    comp: HashMap<(usize, usize, usize), Vec<usize>>,
}

impl TableCategory {
    /// `homs[x * n + y]` is `hom(x, y)`. `compose` is tabulated on every
    /// composable pair, then identity, associativity and monotonicity are checked.
    pub fn new(
        objects: usize,
        homs: Vec<FinitePoset>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize, usize, usize, usize) -> usize,
    ) -> Result<Self, PosetError> {
        assert_eq!(homs.len(), objects * objects);
        assert_eq!(identities.len(), objects);
        let mut comp = HashMap::new();
        for x in 0..objects {
            for y in 0..objects {
                for z in 0..objects {
                    let (nf, ng) = (homs[x * objects + y].len(), homs[y * objects + z].len());
                    if nf == 0 || ng == 0 {
                        continue;
                    }
                    let table = (0..ng * nf).map(|i| compose(x, y, z, i / nf, i % nf)).collect();
                    comp.insert((x, y, z), table);
                }
            }
        }
        let cat = TableCategory { objects, homs, identities, comp };
        cat.check()?;
        Ok(cat)
    }

    /// A poset viewed as a category with one-element homs.
    pub fn from_poset(p: &FinitePoset) -> Self {
        let n = p.len();
        let point = FinitePoset::from_relation(vec!["*".into()], &[]).unwrap();
        let empty = FinitePoset::from_relation(Vec::new(), &[]).unwrap();
        let homs = (0..n * n).map(|i| if p.leq(i / n, i % n) { point.clone() } else { empty.clone() }).collect();
        TableCategory::new(n, homs, vec![0; n], |_, _, _, _, _| 0).expect("posets are categories")
    }

    fn check(&self) -> Result<(), PosetError> {
        let n = self.objects;
        let bad = |what: &str| PosetError::NotAnOrder(format!("composition {what}"));
        for (&(x, y, z), table) in &self.comp {
            let (pf, pg, pc) = (self.hom_poset(x, y), self.hom_poset(y, z), self.hom_poset(x, z));
            if table.iter().any(|&r| r >= pc.len()) {
                return Err(bad("lands outside its hom"));
            }
            for g in 0..pg.len() {
                for f in 0..pf.len() {
                    let c = self.compose_at(x, y, z, g, f);
                    let mono = pf.up_set(f).all(|f2| pc.leq(c, self.compose_at(x, y, z, g, f2)))
                        && pg.up_set(g).all(|g2| pc.leq(c, self.compose_at(x, y, z, g2, f)));
                    if !mono {
                        return Err(bad("is not monotone"));
                    }
                    for w in 0..n {
                        for h in 0..self.hom_poset(z, w).len() {
                            let a = self.compose_at(x, z, w, h, c);
                            let b = self.compose_at(x, y, w, self.compose_at(y, z, w, h, g), f);
                            if a != b {
                                return Err(bad("is not associative"));
                            }
                        }
                    }
                }
            }
            if x == y && pg.len() > 0 && (0..pg.len()).any(|g| self.compose_at(x, x, z, g, self.identities[x]) != g) {
                return Err(bad("has a non-neutral identity"));
            }
            if y == z && (0..pf.len()).any(|f| self.compose_at(x, y, y, self.identities[y], f) != f) {
                return Err(bad("has a non-neutral identity"));
            }
        }
        Ok(())
    }
}

impl PosetCategory for TableCategory {
    fn object_count(&self) -> usize {
        self.objects
    }

    fn hom_poset(&self, x: usize, y: usize) -> &FinitePoset {
        &self.homs[x * self.objects + y]
    }

    fn identity_of(&self, x: usize) -> usize {
        self.identities[x]
    }

    fn compose_at(&self, x: usize, y: usize, z: usize, g: usize, f: usize) -> usize {
        let nf = self.homs[x * self.objects + y].len();
        self.comp[&(x, y, z)][g * nf + f]
    }
}

/// A diagonal simplex in dimension `n`: `n + 1` objects followed by `n`
/// chains of `n + 1` hom elements each.
pub type SimplexKey = Vec<u32>;

#[derive(Debug, Clone)]
pub struct DiagonalNerve {
    simplices: Vec<Vec<SimplexKey>>,
    index: Vec<HashMap<SimplexKey, usize>>,
    exhausted: bool,
}

impl DiagonalNerve {
    /// Nondegenerate simplices in dimensions `0..=max_dim`.
    pub fn build<C: PosetCategory>(cat: &C, max_dim: usize) -> Result<Self, PosetError> {
        let mut simplices = Vec::new();
        let mut total = 0usize;
        let mut exhausted = false;
        for n in 0..=max_dim {
            let layer = enumerate(cat, n, MAX_SIMPLICES - total)?;
            total += layer.len();
            let empty = layer.is_empty();
            simplices.push(layer);
            if empty {
                exhausted = true;
                if simplices.len() > 1 {
                    simplices.pop();
                }
                break;
            }
        }
        let index = simplices
            .iter()
            .map(|layer| layer.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(DiagonalNerve { simplices, index, exhausted })
    }

    /// Highest dimension enumerated.
    pub fn max_dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn count(&self, n: usize) -> usize {
        self.simplices.get(n).map_or(0, Vec::len)
    }

    pub fn simplices(&self, n: usize) -> &[SimplexKey] {
        &self.simplices[n]
    }

    pub fn index_of(&self, n: usize, key: &[u32]) -> Option<usize> {
        self.index.get(n)?.get(key).copied()
    }

    /// True when some dimension came out empty, so nothing lies above it.
    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    /// Normalized chains. Unless the nerve is exhausted, the top degree has no
    /// incoming boundary and is left out of the reported homology.
    pub fn chain_complex<C: PosetCategory>(&self, cat: &C) -> ChainComplex {
        let ranks: Vec<usize> = self.simplices.iter().map(Vec::len).collect();
        let boundary = (1..ranks.len())
            .map(|n| {
                let cols = self.simplices[n]
                    .iter()
                    .map(|s| {
                        let mut col: Vec<(usize, i64)> = Vec::new();
                        for k in 0..=n {
                            let face = face(cat, n, s, k);
                            if is_degenerate(n - 1, &face) {
                                continue;
                            }
                            let row = self.index[n - 1][&face];
                            let sign = if k % 2 == 0 { 1 } else { -1 };
                            match col.iter_mut().find(|(r, _)| *r == row) {
                                Some(e) => e.1 += sign,
                                None => col.push((row, sign)),
                            }
                        }
                        col.retain(|&(_, v)| v != 0);
                        col.sort_unstable();
                        col
                    })
                    .collect();
                SparseMatrix::from_columns(ranks[n - 1], cols)
            })
            .collect();
        ChainComplex::new(&ranks, boundary, !self.exhausted)
    }
}

fn objects_of(n: usize, s: &[u32]) -> &[u32] {
    &s[..=n]
}

fn chain_of(n: usize, s: &[u32], i: usize) -> &[u32] {
    let start = n + 1 + (i - 1) * (n + 1);
    &s[start..start + n + 1]
}

/// Whether an `n`-simplex lies in the image of a diagonal degeneracy.
pub fn is_degenerate(n: usize, s: &[u32]) -> bool {
    let obj = objects_of(n, s);
    (0..n).any(|k| obj[k] == obj[k + 1] && (1..=n).all(|i| chain_of(n, s, i)[k] == chain_of(n, s, i)[k + 1]))
}

/// The face `d_k` of an `n`-simplex, `n >= 1`.
pub fn face<C: PosetCategory>(cat: &C, n: usize, s: &[u32], k: usize) -> SimplexKey {
    let obj = objects_of(n, s);
    let drop_entry = |c: &[u32]| -> Vec<u32> { c.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect() };
    let mut out: Vec<u32> = obj.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
    for i in 1..=n {
        if (k == 0 && i == 1) || (k == n && i == n) || (k > 0 && k < n && i == k + 1) {
            continue;
        }
        if k > 0 && k < n && i == k {
            let (x, y, z) = (obj[k - 1] as usize, obj[k] as usize, obj[k + 1] as usize);
            let (f, g) = (chain_of(n, s, k), chain_of(n, s, k + 1));
            let composed: Vec<u32> =
                (0..=n).map(|j| cat.compose_at(x, y, z, g[j] as usize, f[j] as usize) as u32).collect();
            out.extend(drop_entry(&composed));
        } else {
            out.extend(drop_entry(chain_of(n, s, i)));
        }
    }
    out
}

/// Weak chains of `len` elements in `p`, in lexicographic order.
fn multichains(p: &FinitePoset, len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(p: &FinitePoset, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let mut next: Vec<usize> = match cur.last() {
            None => (0..p.len()).collect(),
            Some(&l) => p.up_set(l as usize).collect(),
        };
        next.sort_unstable();
        for x in next {
            cur.push(x as u32);
            go(p, len, cur, out);
            cur.pop();
        }
    }
    if len > 0 {
        go(p, len, &mut cur, &mut out);
    }
    out
}

fn enumerate<C: PosetCategory>(cat: &C, n: usize, cap: usize) -> Result<Vec<SimplexKey>, PosetError> {
    let k = cat.object_count();
    let chains: Vec<Vec<Vec<u32>>> =
        (0..k * k).map(|i| multichains(cat.hom_poset(i / k, i % k), n + 1)).collect();
    let mut out = Vec::new();
    let mut objs = Vec::with_capacity(n + 1);
    for x in 0..k {
        objs.push(x);
        strings(k, n, &chains, &mut objs, cap, &mut out)?;
        objs.pop();
    }
    Ok(out)
}

fn strings(
    k: usize,
    n: usize,
    chains: &[Vec<Vec<u32>>],
    objs: &mut Vec<usize>,
    cap: usize,
    out: &mut Vec<SimplexKey>,
) -> Result<(), PosetError> {
    if objs.len() == n + 1 {
        let lists: Vec<&[Vec<u32>]> = (1..=n).map(|i| chains[objs[i - 1] * k + objs[i]].as_slice()).collect();
        let mut key: SimplexKey = objs.iter().map(|&x| x as u32).collect();
        return product(n, &lists, &mut key, cap, out);
    }
    let last = *objs.last().unwrap();
    for y in 0..k {
        if !chains[last * k + y].is_empty() {
            objs.push(y);
            strings(k, n, chains, objs, cap, out)?;
            objs.pop();
        }
    }
    Ok(())
}

fn product(
    n: usize,
    lists: &[&[Vec<u32>]],
    key: &mut SimplexKey,
    cap: usize,
    out: &mut Vec<SimplexKey>,
) -> Result<(), PosetError> {
    let depth = (key.len() - (n + 1)) / (n + 1);
    if depth == lists.len() {
        if !is_degenerate(n, key) {
            if out.len() >= cap {
                return Err(PosetError::Capacity(format!("diagonal nerve exceeds {MAX_SIMPLICES} simplices")));
            }
            out.push(key.clone());
        }
        return Ok(());
    }
    for c in lists[depth] {
        key.extend_from_slice(c);
        product(n, lists, key, cap, out)?;
        key.truncate(key.len() - c.len());
    }
    Ok(())
}

/// Homology of the diagonal nerve up to `max_dim`.
pub fn nerve_homology<C: PosetCategory>(cat: &C, max_dim: usize) -> Result<crate::homology::HomologyResult, PosetError> {
    Ok(DiagonalNerve::build(cat, max_dim)?.chain_complex(cat).homology())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::HomologyResult;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("a{i}")).collect()
    }

    fn antichain(n: usize) -> FinitePoset {
        FinitePoset::from_relation(names(n), &[]).unwrap()
    }

    fn empty() -> FinitePoset {
        antichain(0)
    }

    /// Two objects and a single hom poset `p` from the first to the second.
    fn interval(p: FinitePoset) -> TableCategory {
        let homs = vec![antichain(1), p, empty(), antichain(1)];
        TableCategory::new(2, homs, vec![0, 0], |x, y, _, g, f| if x == y { g } else { f }).unwrap()
    }

    fn hexagon() -> FinitePoset {
        let pairs = [(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)];
        FinitePoset::from_relation(names(6), &pairs).unwrap()
    }

    fn all_identities<C: PosetCategory>(cat: &C, nerve: &DiagonalNerve) {
        for n in 2..=nerve.max_dim() {
            for s in nerve.simplices(n) {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = face(cat, n - 1, &face(cat, n, s, j), i);
                        let rhs = face(cat, n - 1, &face(cat, n, s, i), j - 1);
                        assert_eq!(lhs, rhs, "d{i} d{j} on {s:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn point_and_arrow() {
        let point = TableCategory::from_poset(&antichain(1));
        assert_eq!(nerve_homology(&point, 3).unwrap(), HomologyResult::free(&[1]));
        let arrow = interval(antichain(1));
        let nerve = DiagonalNerve::build(&arrow, 4).unwrap();
        assert_eq!(nerve.count(0), 2);
        assert!(nerve.chain_complex(&arrow).homology().is_reduced_acyclic());
    }

    #[test]
    fn suspension_of_hom() {
        // B of an interval category is the suspension of B(hom).
        let parallel = interval(antichain(2));
        assert_eq!(nerve_homology(&parallel, 3).unwrap(), HomologyResult::free(&[1, 1]));
        let chain = interval(FinitePoset::from_relation(names(2), &[(0, 1)]).unwrap());
        assert!(nerve_homology(&chain, 3).unwrap().is_reduced_acyclic());
        let three = interval(antichain(3));
        assert_eq!(nerve_homology(&three, 3).unwrap().betti(1), 2);
        let sphere = interval(hexagon());
        let h = nerve_homology(&sphere, 3).unwrap();
        assert!(h.agrees_below(&HomologyResult::free(&[1, 0, 1]), 3));
    }

    #[test]
    fn poset_categories_match_order_complex() {
        let p = hexagon();
        let cat = TableCategory::from_poset(&p);
        let nerve = DiagonalNerve::build(&cat, 3).unwrap();
        assert!(nerve.is_exhausted());
        assert_eq!((nerve.max_dim(), nerve.count(0), nerve.count(1)), (1, 6, 6));
        let h = nerve.chain_complex(&cat).homology();
        assert_eq!(h, ChainComplex::of_poset(&p).unwrap().homology());
    }

    #[test]
    fn simplicial_identities() {
        for cat in [interval(hexagon()), interval(antichain(2))] {
            let nerve = DiagonalNerve::build(&cat, 4).unwrap();
            all_identities(&cat, &nerve);
            assert!(nerve.chain_complex(&cat).boundary_squares_to_zero());
        }
    }

    #[test]
    fn degeneracies_detected() {
        // 1-simplex x0 = x1 = 0 with identity chain (0, 0): degenerate.
        assert!(is_degenerate(1, &[0, 0, 0, 0]));
        // Same objects, distinct chain entries cannot occur in a trivial hom,
        // but a vertical repeat alone does not make a simplex degenerate.
        assert!(!is_degenerate(1, &[0, 1, 2, 2]));
        assert!(!is_degenerate(1, &[0, 1, 2, 3]));
    }

    #[test]
    fn rejects_bad_tables() {
        let homs = vec![antichain(1), antichain(2), empty(), antichain(1)];
        let err = TableCategory::new(2, homs, vec![0, 0], |_, _, _, _, _| 0);
        assert!(err.is_err());
    }
}
