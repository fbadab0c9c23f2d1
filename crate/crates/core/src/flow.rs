//! Flow paths, the reduction map and the subpath order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::cw::FacePoset;
use crate::morse::{faithful_function, is_acyclic, DiscreteMorseFunction, MorseError, PartialMatching};
use crate::poset::{FinitePoset, PosetError};

/// Default cap on the number of enumerated flow paths.
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("invalid flow path: {0}")]
    Invalid(String),
    #[error("path of length zero has no first step")]
    Length,
    #[error("paths do not compose: {0}")]
    TypeMismatch(String),
    #[error("more than {0} flow paths")]
    Capacity(usize),
    #[error("subpath relation is not a partial order: {0}")]
    OrderViolation(String),
    #[error(transparent)]
    Poset(PosetError),
    #[error(transparent)]
    Morse(#[from] MorseError),
}

impl From<PosetError> for FlowError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::NotAnOrder(s) => FlowError::OrderViolation(s),
            other => FlowError::Poset(other),
        }
    }
}

/// A face poset with an acyclic matching and a faithful function for it.
#[derive(Debug, Clone)]
pub struct FlowContext {
    fp: FacePoset,
    m: PartialMatching,
    f: DiscreteMorseFunction,
    u_above: Vec<Vec<usize>>,
}

impl FlowContext {
    pub fn new(fp: FacePoset, m: PartialMatching) -> Result<Self, MorseError> {
        let f = faithful_function(&fp, &m)?;
        debug_assert!(is_acyclic(&fp, &m));
        let u_above = (0..fp.len()).map(|e| fp.strictly_above(e).filter(|&u| m.in_u(u)).collect()).collect();
        Ok(FlowContext { fp, m, f, u_above })
    }

    pub fn face_poset(&self) -> &FacePoset {
        &self.fp
    }

    pub fn matching(&self) -> &PartialMatching {
        &self.m
    }

    /// The faithful function read off the ⊵ order.
    pub fn faithful(&self) -> &DiscreteMorseFunction {
        &self.f
    }

    pub fn critical_cells(&self) -> Vec<usize> {
        self.m.critical_cells()
    }

    pub fn label(&self, e: usize) -> &str {
        self.fp.label(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub e: usize,
    pub u: usize,
}

/// `(e_1, u_1, ..., e_n, u_n; c)`. Each `e_i` is `u_i` or `μ⁻¹(u_i)`, so the
/// step list is equivalent to the `u_i` together with a lower/upper flag.
/// Each `u_i` has `e_{i+1}` as a proper face other than `μ⁻¹(u_i)`; the
/// matched pair would break the strict decrease of faithful values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlowPath {
    steps: Vec<Step>,
    target: usize,
}

impl Ord for FlowPath {
    fn cmp(&self, other: &Self) -> Ordering {
        self.target
            .cmp(&other.target)
            .then(self.steps.len().cmp(&other.steps.len()))
            .then_with(|| self.steps.cmp(&other.steps))
    }
}

impl PartialOrd for FlowPath {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FlowPath {
    pub fn new(ctx: &FlowContext, steps: Vec<Step>, target: usize) -> Result<Self, FlowError> {
        let p = FlowPath { steps, target };
        p.validate(ctx)?;
        Ok(p)
    }

    /// The length-zero path `(c)`.
    pub fn trivial(target: usize) -> Self {
        FlowPath { steps: Vec::new(), target }
    }

    /// Builds from cell ids: `seq` alternates `e_1, u_1, ..., e_n, u_n`.
    pub fn from_ids(ctx: &FlowContext, seq: &[&str], target: &str) -> Result<Self, FlowError> {
        let get = |s: &str| ctx.fp.index_of(s).ok_or_else(|| FlowError::Invalid(format!("unknown cell `{s}`")));
        if seq.len() % 2 != 0 {
            return Err(FlowError::Invalid("odd number of cells before the target".into()));
        }
        let steps = seq
            .chunks(2)
            .map(|w| Ok(Step { e: get(w[0])?, u: get(w[1])? }))
            .collect::<Result<Vec<_>, FlowError>>()?;
        Self::new(ctx, steps, get(target)?)
    }

    fn validate(&self, ctx: &FlowContext) -> Result<(), FlowError> {
        let bad = |msg: String| Err(FlowError::Invalid(msg));
        if !ctx.m.is_critical(self.target) {
            return bad(format!("target `{}` is not critical", ctx.fp.id(self.target)));
        }
        for (i, s) in self.steps.iter().enumerate() {
            let Some(d) = ctx.m.mate_down(s.u) else {
                return bad(format!("`{}` is not matched with a face", ctx.fp.id(s.u)));
            };
            if s.e != s.u && s.e != d {
                return bad(format!("step {} starts at `{}`", i + 1, ctx.fp.id(s.e)));
            }
            let next = self.cell(i + 2);
            if !ctx.fp.lt(next, s.u) {
                return bad(format!("`{}` is not a proper face of `{}`", ctx.fp.id(next), ctx.fp.id(s.u)));
            }
            if next == d {
                return bad(format!("`{}` follows its own mate `{}`", ctx.fp.id(next), ctx.fp.id(s.u)));
            }
        }
        Ok(())
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// `e_1`, or the target for the trivial path.
    pub fn initial(&self) -> usize {
        self.cell(1)
    }

    /// `e_p` for `1 <= p <= n + 1`, where `e_{n+1}` is the target.
    pub fn cell(&self, p: usize) -> usize {
        if p == self.steps.len() + 1 {
            self.target
        } else {
            self.steps[p - 1].e
        }
    }

    /// `u_j` for `1 <= j <= n`.
    pub fn u(&self, j: usize) -> usize {
        self.steps[j - 1].u
    }

    /// `γ^(i) = (e_i, u_i, ..., e_n, u_n; c)` for `1 <= i <= n + 1`.
    pub fn suffix(&self, i: usize) -> FlowPath {
        FlowPath { steps: self.steps[i - 1..].to_vec(), target: self.target }
    }

    pub fn suffixes(&self) -> Vec<FlowPath> {
        (1..=self.len() + 1).map(|i| self.suffix(i)).collect()
    }

    /// Replaces `e_1` by `u_1`.
    pub fn upgrade(&self) -> Result<FlowPath, FlowError> {
        let mut steps = self.steps.clone();
        let first = steps.first_mut().ok_or(FlowError::Length)?;
        first.e = first.u;
        Ok(FlowPath { steps, target: self.target })
    }

    /// Drops the first step.
    pub fn drop_first(&self) -> Result<FlowPath, FlowError> {
        if self.steps.is_empty() {
            return Err(FlowError::Length);
        }
        Ok(self.suffix(2))
    }

    /// `self.steps ++ other.steps` with the target of `other`, unchecked.
    pub(crate) fn join(&self, other: &FlowPath) -> FlowPath {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        FlowPath { steps, target: other.target }
    }

    /// Written like `([v1],[v0 v1];[v0])` using cell labels.
    pub fn display(&self, ctx: &FlowContext) -> String {
        let mut s = String::from("(");
        for st in &self.steps {
            let _ = write!(s, "{},{},", ctx.label(st.e), ctx.label(st.u));
        }
        if !self.steps.is_empty() {
            s.pop();
            s.push(';');
        }
        s.push_str(ctx.label(self.target));
        s.push(')');
        s
    }

    /// `{"steps":[{"e":id,"u":id}...],"target":id}`.
    pub fn to_json(&self, ctx: &FlowContext) -> Value {
        let steps: Vec<Value> =
            self.steps.iter().map(|s| json!({"e": ctx.fp.id(s.e), "u": ctx.fp.id(s.u)})).collect();
        json!({"steps": steps, "target": ctx.fp.id(self.target)})
    }
}

/// All flow paths, by backward extension from each critical cell, sorted.
pub fn enumerate_flow_paths(ctx: &FlowContext, cap: usize) -> Result<Vec<FlowPath>, FlowError> {
    let mut out: Vec<FlowPath> = ctx.critical_cells().into_iter().map(FlowPath::trivial).collect();
    if out.len() > cap {
        return Err(FlowError::Capacity(cap));
    }
    let mut frontier = 0;
    while frontier < out.len() {
        let base = out[frontier].clone();
        frontier += 1;
        for &u in &ctx.u_above[base.initial()] {
            let d = ctx.m.mate_down(u).unwrap();
            if d == base.initial() {
                continue;
            }
            for e in [u, d] {
                let mut steps = Vec::with_capacity(base.len() + 1);
                steps.push(Step { e, u });
                steps.extend_from_slice(&base.steps);
                out.push(FlowPath { steps, target: base.target });
                if out.len() > cap {
                    return Err(FlowError::Capacity(cap));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Step indices removed by the reduction, found by a right-to-left scan:
/// step `i` goes when the next kept cell is a proper face of `μ⁻¹(u_i)`.
fn dropped_steps(ctx: &FlowContext, g: &FlowPath) -> Vec<bool> {
    let n = g.len();
    let mut drop = vec![false; n + 1];
    let mut next = g.target;
    for i in (1..=n).rev() {
        let d = ctx.m.mate_down(g.u(i)).unwrap();
        if ctx.fp.lt(next, d) {
            drop[i] = true;
        } else {
            next = g.cell(i);
        }
    }
    drop
}

/// No `e_{i+1}` is a proper face of `μ⁻¹(u_i)`.
pub fn is_reduced(ctx: &FlowContext, g: &FlowPath) -> bool {
    (1..=g.len()).all(|i| !ctx.fp.lt(g.cell(i + 1), ctx.m.mate_down(g.u(i)).unwrap()))
}

/// Maximal runs `(a, b)` of consecutive step indices removed by [`reduce`].
pub fn reducible_intervals(ctx: &FlowContext, g: &FlowPath) -> Vec<(usize, usize)> {
    let drop = dropped_steps(ctx, g);
    let mut out: Vec<(usize, usize)> = Vec::new();
    for i in 1..=g.len() {
        if drop[i] {
            match out.last_mut() {
                Some(run) if run.1 + 1 == i => run.1 = i,
                _ => out.push((i, i)),
            }
        }
    }
    out
}

/// The reduction map onto reduced flow paths.
pub fn reduce(ctx: &FlowContext, g: &FlowPath) -> FlowPath {
    let drop = dropped_steps(ctx, g);
    let steps = g.steps.iter().enumerate().filter(|(i, _)| !drop[i + 1]).map(|(_, s)| *s).collect();
    FlowPath { steps, target: g.target }
}

/// Removes the single step `i`; valid when `e_{i+1} ≺ μ⁻¹(u_i)`.
pub fn remove_step(ctx: &FlowContext, g: &FlowPath, i: usize) -> Option<FlowPath> {
    if i == 0 || i > g.len() || !ctx.fp.lt(g.cell(i + 1), ctx.m.mate_down(g.u(i)).unwrap()) {
        return None;
    }
    let mut steps = g.steps.clone();
    steps.remove(i - 1);
    Some(FlowPath { steps, target: g.target })
}

/// A witness `φ : {0..k} -> {0..n+1}` for `γ ≼ γ'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub phi: Vec<usize>,
}

impl Embedding {
    pub fn k(&self) -> usize {
        self.phi.len() - 1
    }
}

fn search(
    fp: &FacePoset,
    a: &FlowPath,
    b: &FlowPath,
    phi: &mut Vec<usize>,
    found: &mut Vec<Embedding>,
    first_only: bool,
) -> bool {
    let (m, n) = (a.len(), b.len());
    let j = phi.len();
    let prev = phi[j - 1];
    let ej = a.cell(j);
    for q in prev + 1..=n + 1 {
        if !fp.leq(ej, b.cell(q)) {
            break;
        }
        if q == n + 1 {
            let mut done = phi.clone();
            done.push(q);
            found.push(Embedding { phi: done });
            if first_only {
                return true;
            }
        } else if j <= m && a.u(j) == b.u(q) {
            phi.push(q);
            let stop = search(fp, a, b, phi, found, first_only);
            phi.pop();
            if stop {
                return true;
            }
        }
    }
    false
}

/// The embedding witnessing `a ≼ b`, if any.
pub fn subpath_leq(ctx: &FlowContext, a: &FlowPath, b: &FlowPath) -> Option<Embedding> {
    if !ctx.fp.leq(a.initial(), b.initial()) {
        return None;
    }
    let mut found = Vec::new();
    search(&ctx.fp, a, b, &mut vec![0], &mut found, true);
    found.pop()
}

/// Every embedding of `a` into `b`; used to check uniqueness.
pub fn all_embeddings(ctx: &FlowContext, a: &FlowPath, b: &FlowPath) -> Vec<Embedding> {
    let mut found = Vec::new();
    search(&ctx.fp, a, b, &mut vec![0], &mut found, false);
    found
}

/// The morphism `τ(γ ≼ γ')`: the suffix of `γ` from `e_k`.
pub fn tau_on_morphism(g: &FlowPath, emb: &Embedding) -> FlowPath {
    g.suffix(emb.k())
}

/// `γ ∗ γ'`, defined when the target of `γ` lies above the initial cell of `γ'`.
pub fn concatenate(ctx: &FlowContext, g: &FlowPath, h: &FlowPath) -> Result<FlowPath, FlowError> {
    if !ctx.fp.leq(h.initial(), g.target) {
        return Err(FlowError::TypeMismatch(format!(
            "`{}` is not a face of `{}`",
            ctx.fp.id(h.initial()),
            ctx.fp.id(g.target)
        )));
    }
    Ok(g.join(h))
}

/// Paths indexing the stable subspace along `γ`: its suffixes together with
/// the upgrades of the suffixes that start at a cell of `D`.
pub fn stable_cells(ctx: &FlowContext, g: &FlowPath) -> Vec<FlowPath> {
    let mut set = BTreeSet::new();
    for (i, s) in g.suffixes().into_iter().enumerate() {
        if i < g.len() && ctx.m.in_d(g.cell(i + 1)) {
            set.insert(s.upgrade().unwrap());
        }
        set.insert(s);
    }
    set.into_iter().collect()
}

/// Union of the stable sets of all reduced paths ending at `c`.
pub fn stable_space(ctx: &FlowContext, c: usize, cap: usize) -> Result<Vec<FlowPath>, FlowError> {
    let mut set = BTreeSet::new();
    for g in enumerate_flow_paths(ctx, cap)? {
        if g.target == c && is_reduced(ctx, &g) {
            set.extend(stable_cells(ctx, &g));
        }
    }
    Ok(set.into_iter().collect())
}

/// The poset of flow paths (all, or only reduced ones) under `≼`.
#[derive(Debug, Clone)]
pub struct FlowPoset {
    paths: Vec<FlowPath>,
    reduced: Vec<bool>,
    index: HashMap<FlowPath, usize>,
    poset: FinitePoset,
}

impl FlowPoset {
    pub fn build(ctx: &FlowContext, reduced_only: bool, cap: usize) -> Result<Self, FlowError> {
        let mut paths = enumerate_flow_paths(ctx, cap)?;
        if reduced_only {
            paths.retain(|g| is_reduced(ctx, g));
        }
        Self::from_paths(ctx, paths)
    }

    /// Poset on a given sorted set of paths.
    pub fn from_paths(ctx: &FlowContext, paths: Vec<FlowPath>) -> Result<Self, FlowError> {
        let ids = paths.iter().map(|g| g.display(ctx)).collect();
        let poset = FinitePoset::from_leq(ids, |a, b| a == b || subpath_leq(ctx, &paths[a], &paths[b]).is_some())?;
        let reduced = paths.iter().map(|g| is_reduced(ctx, g)).collect();
        let index = paths.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        Ok(FlowPoset { paths, reduced, index, poset })
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[FlowPath] {
        &self.paths
    }

    pub fn path(&self, i: usize) -> &FlowPath {
        &self.paths[i]
    }

    pub fn is_reduced(&self, i: usize) -> bool {
        self.reduced[i]
    }

    pub fn index_of(&self, g: &FlowPath) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    /// Number of paths ending at each critical cell, in cell order.
    pub fn tallies(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for g in &self.paths {
            match out.last_mut() {
                Some((c, k)) if *c == g.target => *k += 1,
                _ => out.push((g.target, 1)),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::SimplicialComplex;
    use crate::morse::PartialMatching;

    fn simplicial(facets: &[&[&str]]) -> FacePoset {
        FacePoset::from_simplicial(&SimplicialComplex::new(
            facets.iter().map(|f| f.iter().map(|s| s.to_string()).collect()).collect(),
        ))
        .unwrap()
    }

    fn ctx(fp: FacePoset, pairs: &[(&str, &str)]) -> FlowContext {
        let pairs: Vec<_> = pairs.iter().map(|(a, b)| (fp.index_of(a).unwrap(), fp.index_of(b).unwrap())).collect();
        let m = PartialMatching::new(&fp, &pairs).unwrap();
        FlowContext::new(fp, m).unwrap()
    }

    fn triangle() -> FlowContext {
        ctx(simplicial(&[&["v0", "v1"], &["v1", "v2"], &["v0", "v2"]]), &[("v1", "v0,v1"), ("v2", "v0,v2")])
    }

    fn two_simplex() -> FlowContext {
        ctx(
            simplicial(&[&["v0", "v1", "v2"]]),
            &[("v0,v1", "v0,v1,v2"), ("v1", "v1,v2"), ("v2", "v0,v2")],
        )
    }

    fn p(c: &FlowContext, seq: &[&str], t: &str) -> FlowPath {
        FlowPath::from_ids(c, seq, t).unwrap()
    }

    #[test]
    fn triangle_paths() {
        let c = triangle();
        let all = enumerate_flow_paths(&c, DEFAULT_PATH_CAP).unwrap();
        let shown: Vec<String> = all.iter().map(|g| g.display(&c)).collect();
        assert_eq!(
            shown,
            vec![
                "([v0])",
                "([v1],[v0 v1];[v0])",
                "([v2],[v0 v2];[v0])",
                "([v0 v1],[v0 v1];[v0])",
                "([v0 v2],[v0 v2];[v0])",
                "([v1 v2])",
            ]
        );
        assert!(all.iter().all(|g| is_reduced(&c, g)));
    }

    #[test]
    fn triangle_subpath_examples() {
        let c = triangle();
        let g0 = p(&c, &[], "v0");
        let g1 = p(&c, &["v1", "v0,v1"], "v0");
        let g01 = p(&c, &["v0,v1", "v0,v1"], "v0");
        assert!(subpath_leq(&c, &g0, &g01).is_some());
        assert!(subpath_leq(&c, &g0, &g1).is_none());
        assert_eq!(g1.upgrade().unwrap(), g01);
        assert_eq!(subpath_leq(&c, &g1, &g01).unwrap().phi, vec![0, 1, 2]);
        assert_eq!(g0.upgrade(), Err(FlowError::Length));
        assert_eq!(concatenate(&c, &g01, &g0).unwrap(), g01);
    }

    #[test]
    fn two_simplex_embedding() {
        let c = two_simplex();
        let delta = p(&c, &["v0,v1", "v0,v1,v2", "v1,v2", "v1,v2", "v2", "v0,v2"], "v0");
        let gamma = p(&c, &["v0,v1", "v0,v1,v2", "v2", "v0,v2"], "v0");
        assert!(is_reduced(&c, &delta) && is_reduced(&c, &gamma));
        assert_eq!(subpath_leq(&c, &gamma, &delta).unwrap().phi, vec![0, 1, 3, 4]);
        assert_eq!(all_embeddings(&c, &gamma, &delta).len(), 1);
        assert!(subpath_leq(&c, &delta, &gamma).is_none());
        let all = enumerate_flow_paths(&c, DEFAULT_PATH_CAP).unwrap();
        assert!(all.contains(&delta) && all.contains(&gamma));
    }

    #[test]
    fn two_simplex_stable_sets() {
        let c = two_simplex();
        let gamma = p(&c, &["v0,v1", "v0,v1,v2", "v2", "v0,v2"], "v0");
        let expect = vec![
            gamma.clone(),
            p(&c, &["v2", "v0,v2"], "v0"),
            p(&c, &[], "v0"),
            p(&c, &["v0,v1,v2", "v0,v1,v2", "v2", "v0,v2"], "v0"),
            p(&c, &["v0,v2", "v0,v2"], "v0"),
        ];
        let mut expect_sorted = expect.clone();
        expect_sorted.sort();
        assert_eq!(stable_cells(&c, &gamma), expect_sorted);
        assert_eq!(stable_cells(&c, &FlowPath::trivial(gamma.target())), vec![FlowPath::trivial(gamma.target())]);
    }

    #[test]
    fn reduction_matches_single_step_rewriting() {
        // Apply single removals in every possible order; all branches must end at reduce(γ).
        fn normal_forms(c: &FlowContext, g: &FlowPath, out: &mut BTreeSet<FlowPath>) {
            let mut any = false;
            for i in 1..=g.len() {
                if let Some(h) = remove_step(c, g, i) {
                    any = true;
                    normal_forms(c, &h, out);
                }
            }
            if !any {
                out.insert(g.clone());
            }
        }
        let c = two_simplex();
        let mut saw_reducible = false;
        for g in enumerate_flow_paths(&c, DEFAULT_PATH_CAP).unwrap() {
            let mut nf = BTreeSet::new();
            normal_forms(&c, &g, &mut nf);
            assert_eq!(nf.len(), 1, "{}", g.display(&c));
            let r = reduce(&c, &g);
            assert_eq!(nf.into_iter().next().unwrap(), r);
            assert!(is_reduced(&c, &r));
            assert_eq!(reducible_intervals(&c, &g).is_empty(), is_reduced(&c, &g));
            saw_reducible |= !is_reduced(&c, &g);
        }
        assert!(saw_reducible);
    }

    #[test]
    fn reducible_example_on_two_simplex() {
        let c = two_simplex();
        // u1 = [v0 v1 v2] sits over d1 = [v0 v1], which has [v1] as a face.
        let g = p(&c, &["v0,v1,v2", "v0,v1,v2", "v1", "v1,v2", "v2", "v0,v2"], "v0");
        assert!(!is_reduced(&c, &g));
        assert_eq!(reducible_intervals(&c, &g), vec![(1, 1)]);
        assert_eq!(reduce(&c, &g), p(&c, &["v1", "v1,v2", "v2", "v0,v2"], "v0"));
    }

    #[test]
    fn empty_matching_gives_face_poset() {
        let fp = simplicial(&[&["a", "b", "c"]]);
        let m = PartialMatching::empty(&fp);
        let c = FlowContext::new(fp.clone(), m).unwrap();
        let fpo = FlowPoset::build(&c, false, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(fpo.len(), fp.len());
        for a in 0..fp.len() {
            for b in 0..fp.len() {
                let (x, y) = (fpo.index_of(&FlowPath::trivial(a)).unwrap(), fpo.index_of(&FlowPath::trivial(b)).unwrap());
                assert_eq!(fpo.leq(x, y), fp.leq(a, b));
            }
        }
    }

    #[test]
    fn invalid_paths_rejected() {
        let c = triangle();
        assert!(FlowPath::from_ids(&c, &[], "v1").is_err());
        assert!(FlowPath::from_ids(&c, &["v0", "v0,v1"], "v0").is_err());
        assert!(FlowPath::from_ids(&c, &["v1", "v0,v1"], "v1,v2").is_err());
        let g1 = p(&c, &["v1", "v0,v1"], "v0");
        assert_eq!(g1.to_json(&c).to_string(), r#"{"steps":[{"e":"v1","u":"v0,v1"}],"target":"v0"}"#);
    }

    #[test]
    fn capacity_guard() {
        let c = two_simplex();
        assert_eq!(enumerate_flow_paths(&c, 3), Err(FlowError::Capacity(3)));
    }
}
