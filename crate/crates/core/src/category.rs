//! The flow category of an acyclic matching, its reduced version, the
//! collapsing functor τ and its homotopy fibers.
//!
//! Objects are the critical cells. A morphism `c -> c'` is a flow path with
//! target `c` whose initial cell is a proper face of `c'`; the identity of `c`
//! is the length-zero path `(c)`. Composition `g ∘ f` lists the steps of `g`
//! and then those of `f`, followed by `r` in the reduced category.

use std::collections::{BTreeSet, HashMap};

use serde_json::{json, Value};
use thiserror::Error;

use crate::flow::{reduce, subpath_leq, tau_on_morphism, FlowContext, FlowError, FlowPath, FlowPoset};
use crate::homology::ChainComplex;
use crate::poset::{FinitePoset, PosetError, PosetMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("structural invariant violated: {0}")]
    Invariant(String),
    #[error("`{0}` is not a critical cell")]
    NotCritical(String),
}

/// A hom poset; its elements are indices into the category's path poset.
#[derive(Debug, Clone)]
pub struct Hom {
    members: Vec<usize>,
    local: HashMap<usize, usize>,
    poset: FinitePoset,
}

impl Hom {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Position of a path-poset index in this hom.
    pub fn local(&self, path: usize) -> Option<usize> {
        self.local.get(&path).copied()
    }
}

/// A morphism `src -> dst` between objects, by position in its hom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor {
    pub src: usize,
    pub dst: usize,
    pub idx: usize,
}

#[derive(Debug, Clone)]
pub struct FlowCategory {
    ctx: FlowContext,
    reduced: bool,
    paths: FlowPoset,
    objects: Vec<usize>,
    object_of: HashMap<usize, usize>,
    homs: Vec<Hom>,
    comp: HashMap<(usize, usize, usize), Vec<usize>>,
    taus: HashMap<(usize, usize), Mor>,
}

impl FlowCategory {
    /// Builds C(μ), or the reduced category when `reduced` is set, with every
    /// hom poset and composition table materialized.
    pub fn build(ctx: &FlowContext, reduced: bool, cap: usize) -> Result<Self, CategoryError> {
        let paths = FlowPoset::build(ctx, reduced, cap)?;
        let objects = ctx.critical_cells();
        let object_of: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let k = objects.len();
        let fp = ctx.face_poset();
        let mut members = vec![Vec::new(); k * k];
        for (i, g) in paths.paths().iter().enumerate() {
            let x = object_of[&g.target()];
            if g.is_empty() {
                members[x * k + x].push(i);
            }
            for (y, &c) in objects.iter().enumerate() {
                if fp.lt(g.initial(), c) {
                    if y == x {
                        return Err(CategoryError::Invariant(format!(
                            "nontrivial endomorphism {} of {}",
                            g.display(ctx),
                            ctx.label(c)
                        )));
                    }
                    members[x * k + y].push(i);
                }
            }
        }
        let homs = members
            .into_iter()
            .map(|m| Hom {
                local: m.iter().enumerate().map(|(j, &p)| (p, j)).collect(),
                poset: paths.poset().induced(&m),
                members: m,
            })
            .collect();
        let mut cat = FlowCategory { ctx: ctx.clone(), reduced, paths, objects, object_of, homs, comp: HashMap::new(), taus: HashMap::new() };
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    let (hf, hg) = (cat.hom(x, y), cat.hom(y, z));
                    if hf.is_empty() || hg.is_empty() {
                        continue;
                    }
                    let mut table = Vec::with_capacity(hf.len() * hg.len());
                    for g in 0..hg.len() {
                        for f in 0..hf.len() {
                            let path = cat.compose_paths(cat.path_of(Mor { src: y, dst: z, idx: g }), cat.path_of(Mor { src: x, dst: y, idx: f }));
                            let idx = cat.morphism_of(x, z, &path).ok_or_else(|| {
                                CategoryError::Invariant(format!("composite {} is not a morphism", path.display(ctx)))
                            })?;
                            table.push(idx);
                        }
                    }
                    cat.comp.insert((x, y, z), table);
                }
            }
        }
        let mut taus = HashMap::new();
        for a in 0..cat.paths.len() {
            for b in cat.paths.poset().up_set(a) {
                if let Some(t) = cat.compute_tau(a, b) {
                    taus.insert((a, b), t);
                }
            }
        }
        cat.taus = taus;
        Ok(cat)
    }

    pub fn context(&self) -> &FlowContext {
        &self.ctx
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// The path poset underlying the homs: FP, or its reduced subposet.
    pub fn paths(&self) -> &FlowPoset {
        &self.paths
    }

    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_of(&self, cell: usize) -> Option<usize> {
        self.object_of.get(&cell).copied()
    }

    pub fn hom(&self, x: usize, y: usize) -> &Hom {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn identity(&self, x: usize) -> Mor {
        Mor { src: x, dst: x, idx: 0 }
    }

    pub fn path_of(&self, m: Mor) -> &FlowPath {
        self.paths.path(self.hom(m.src, m.dst).members[m.idx])
    }

    /// Position in `hom(x, y)` of a path, if it is a morphism there.
    pub fn morphism_of(&self, x: usize, y: usize, g: &FlowPath) -> Option<usize> {
        self.hom(x, y).local(self.paths.index_of(g)?)
    }

    /// Steps of `g` then steps of `f`; reduced in the reduced category.
    pub fn compose_paths(&self, g: &FlowPath, f: &FlowPath) -> FlowPath {
        let joined = g.join(f);
        if self.reduced {
            reduce(&self.ctx, &joined)
        } else {
            joined
        }
    }

    /// `g ∘ f` for `f: x -> y` and `g: y -> z`.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        assert_eq!(f.dst, g.src, "morphisms are not composable");
        let table = &self.comp[&(f.src, f.dst, g.dst)];
        let nf = self.hom(f.src, f.dst).len();
        Mor { src: f.src, dst: g.dst, idx: table[g.idx * nf + f.idx] }
    }

    /// `hom(x, y) <= hom(x, y)` comparison of two morphisms.
    pub fn mor_leq(&self, a: Mor, b: Mor) -> bool {
        debug_assert_eq!((a.src, a.dst), (b.src, b.dst));
        self.hom(a.src, a.dst).poset.leq(a.idx, b.idx)
    }

    /// `τ(γ ≼ γ')` for path-poset indices with `a ≼ b`; `None` when the
    /// suffix is not a morphism `τ(γ) -> τ(γ')`.
    pub fn tau(&self, a: usize, b: usize) -> Option<Mor> {
        self.taus.get(&(a, b)).copied()
    }

    fn compute_tau(&self, a: usize, b: usize) -> Option<Mor> {
        let (ga, gb) = (self.paths.path(a), self.paths.path(b));
        let emb = subpath_leq(&self.ctx, ga, gb)?;
        let piece = tau_on_morphism(ga, &emb);
        let (x, y) = (self.object_of[&ga.target()], self.object_of[&gb.target()]);
        Some(Mor { src: x, dst: y, idx: self.morphism_of(x, y, &piece)? })
    }

    /// Label of an object.
    pub fn object_label(&self, x: usize) -> &str {
        self.ctx.label(self.objects[x])
    }

    /// Objects, hom posets and composition tables as JSON.
    pub fn to_json(&self) -> Value {
        let k = self.object_count();
        let ids: Vec<&str> = (0..k).map(|x| self.ctx.face_poset().id(self.objects[x])).collect();
        let mut homs = Vec::new();
        let mut comps = Vec::new();
        for x in 0..k {
            for y in 0..k {
                let h = self.hom(x, y);
                if h.is_empty() {
                    continue;
                }
                let mut entry = h.poset.to_json();
                entry["source"] = json!(ids[x]);
                entry["target"] = json!(ids[y]);
                entry["paths"] = Value::Array(h.members.iter().map(|&p| self.paths.path(p).to_json(&self.ctx)).collect());
                homs.push(entry);
            }
        }
        let mut keys: Vec<_> = self.comp.keys().copied().collect();
        keys.sort_unstable();
        for (x, y, z) in keys {
            let nf = self.hom(x, y).len();
            let table: Vec<Value> = self.comp[&(x, y, z)]
                .iter()
                .enumerate()
                .map(|(i, &r)| json!([i / nf, i % nf, r]))
                .collect();
            comps.push(json!({"objects": [ids[x], ids[y], ids[z]], "table": table}));
        }
        json!({"reduced": self.reduced, "objects": ids, "homs": homs, "compositions": comps})
    }

    /// Every composable pair lands in a hom, identities are neutral, and
    /// composition is associative and monotone in each argument.
    pub fn check_laws(&self) -> Result<(), String> {
        let k = self.object_count();
        let nonempty = |x: usize, y: usize| !self.hom(x, y).is_empty();
        for x in 0..k {
            for y in (0..k).filter(|&y| nonempty(x, y)) {
                for f in 0..self.hom(x, y).len() {
                    let f = Mor { src: x, dst: y, idx: f };
                    if self.compose(self.identity(y), f) != f || self.compose(f, self.identity(x)) != f {
                        return Err(format!("identity law fails at {}", self.path_of(f).display(&self.ctx)));
                    }
                }
                for z in (0..k).filter(|&z| nonempty(y, z)) {
                    let (hf, hg) = (self.hom(x, y), self.hom(y, z));
                    for f in 0..hf.len() {
                        for g in 0..hg.len() {
                            let (mf, mg) = (Mor { src: x, dst: y, idx: f }, Mor { src: y, dst: z, idx: g });
                            let c = self.compose(mg, mf);
                            for f2 in hf.poset.up_set(f) {
                                let c2 = self.compose(mg, Mor { src: x, dst: y, idx: f2 });
                                if !self.mor_leq(c, c2) {
                                    return Err("composition is not monotone in its first argument".into());
                                }
                            }
                            for g2 in hg.poset.up_set(g) {
                                let c2 = self.compose(Mor { src: y, dst: z, idx: g2 }, mf);
                                if !self.mor_leq(c, c2) {
                                    return Err("composition is not monotone in its second argument".into());
                                }
                            }
                            for w in (0..k).filter(|&w| nonempty(z, w)) {
                                for h in 0..self.hom(z, w).len() {
                                    let mh = Mor { src: z, dst: w, idx: h };
                                    if self.compose(mh, c) != self.compose(self.compose(mh, mg), mf) {
                                        return Err("composition is not associative".into());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Normality and the colax inequality `τ(a≼c) ≤ τ(b≼c) ∘ τ(a≼b)` on every 2-chain.
    pub fn check_colax(&self) -> Result<(), String> {
        let n = self.paths.len();
        let p = self.paths.poset();
        let mut taus: HashMap<(usize, usize), Mor> = HashMap::new();
        for a in 0..n {
            for b in p.up_set(a) {
                let t = self.tau(a, b).ok_or_else(|| {
                    format!(
                        "τ of {} ≼ {} is not a morphism",
                        self.paths.path(a).display(&self.ctx),
                        self.paths.path(b).display(&self.ctx)
                    )
                })?;
                if a == b && t != self.identity(t.src) {
                    return Err("τ does not preserve identities".into());
                }
                taus.insert((a, b), t);
            }
        }
        for a in 0..n {
            for b in p.up_set(a) {
                for c in p.up_set(b) {
                    let lhs = taus[&(a, c)];
                    let rhs = self.compose(taus[&(b, c)], taus[&(a, b)]);
                    if !self.mor_leq(lhs, rhs) {
                        return Err(format!(
                            "colax inequality fails on {} ≼ {} ≼ {}",
                            self.paths.path(a).display(&self.ctx),
                            self.paths.path(b).display(&self.ctx),
                            self.paths.path(c).display(&self.ctx)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn object_arg(&self, c: usize) -> Result<usize, CategoryError> {
        self.object_of(c).ok_or_else(|| CategoryError::NotCritical(self.ctx.face_poset().id(c).to_string()))
    }

    /// τ⁻¹(c): paths with target `c`.
    pub fn genuine_fiber(&self, c: usize) -> Result<FiberPoset, CategoryError> {
        let x = self.object_arg(c)?;
        let members: Vec<usize> = (0..self.paths.len()).filter(|&i| self.paths.path(i).target() == c).collect();
        let elements = members.iter().map(|&path| FiberElement { path, morphism: None }).collect();
        Ok(FiberPoset { kind: FiberKind::Genuine, base: x, elements, poset: self.paths.poset().induced(&members) })
    }

    /// `c↓τ`: pairs `(δ, γ)` with `δ: c -> τ(γ)`.
    pub fn right_fiber(&self, c: usize) -> Result<FiberPoset, CategoryError> {
        let x = self.object_arg(c)?;
        let mut elements = Vec::new();
        for path in 0..self.paths.len() {
            let y = self.object_of[&self.paths.path(path).target()];
            for idx in 0..self.hom(x, y).len() {
                elements.push(FiberElement { path, morphism: Some(Mor { src: x, dst: y, idx }) });
            }
        }
        let poset = self.fiber_poset(FiberKind::Right, &elements, |a, b| {
            let t = self.tau(a.path, b.path).unwrap();
            self.mor_leq(self.compose(t, a.morphism.unwrap()), b.morphism.unwrap())
        })?;
        Ok(FiberPoset { kind: FiberKind::Right, base: x, elements, poset })
    }

    /// `τ↓c`: pairs `(γ, δ)` with `δ: τ(γ) -> c`.
    pub fn left_fiber(&self, c: usize) -> Result<FiberPoset, CategoryError> {
        let z = self.object_arg(c)?;
        let mut elements = Vec::new();
        for path in 0..self.paths.len() {
            let y = self.object_of[&self.paths.path(path).target()];
            for idx in 0..self.hom(y, z).len() {
                elements.push(FiberElement { path, morphism: Some(Mor { src: y, dst: z, idx }) });
            }
        }
        let poset = self.fiber_poset(FiberKind::Left, &elements, |a, b| {
            let t = self.tau(a.path, b.path).unwrap();
            self.mor_leq(self.compose(b.morphism.unwrap(), t), a.morphism.unwrap())
        })?;
        Ok(FiberPoset { kind: FiberKind::Left, base: z, elements, poset })
    }

    /// Order on a comma fiber: `γ ≼ γ'` in the path poset plus `second`,
    /// which may assume that `τ(γ ≼ γ')` exists.
    fn fiber_poset(
        &self,
        kind: FiberKind,
        elements: &[FiberElement],
        second: impl Fn(&FiberElement, &FiberElement) -> bool,
    ) -> Result<FinitePoset, CategoryError> {
        let mut by_path = vec![Vec::new(); self.paths.len()];
        for (i, e) in elements.iter().enumerate() {
            by_path[e.path].push(i);
        }
        let ids = elements.iter().map(|e| self.element_label(kind, e)).collect();
        let p = self.paths.poset();
        Ok(FinitePoset::from_up_sets(ids, |i| {
            let a = &elements[i];
            p.up_set(a.path)
                .filter(|&b| self.tau(a.path, b).is_some())
                .flat_map(|b| by_path[b].iter().copied())
                .filter(|&j| second(a, &elements[j]))
                .collect()
        })?)
    }

    /// Display label of a fiber element, written `(δ, γ)` or `(γ, δ)`.
    pub fn element_label(&self, kind: FiberKind, e: &FiberElement) -> String {
        let g = self.paths.path(e.path).display(&self.ctx);
        match (kind, e.morphism) {
            (_, None) => g,
            (FiberKind::Left, Some(m)) => format!("({g}, {})", self.path_of(m).display(&self.ctx)),
            (_, Some(m)) => format!("({}, {g})", self.path_of(m).display(&self.ctx)),
        }
    }

    /// `ρ_c(δ, γ) = (1_c, γ ∗ δ)` as a table on the right fiber over `c`.
    pub fn rho_table(&self, fiber: &FiberPoset) -> Result<Vec<usize>, CategoryError> {
        if fiber.kind != FiberKind::Right {
            return Err(CategoryError::Invariant("ρ acts on the right fiber".into()));
        }
        let x = fiber.base;
        let lookup: HashMap<(usize, Option<Mor>), usize> =
            fiber.elements.iter().enumerate().map(|(i, e)| ((e.path, e.morphism), i)).collect();
        fiber
            .elements
            .iter()
            .map(|e| {
                let joined = self.compose_paths(self.paths.path(e.path), self.path_of(e.morphism.unwrap()));
                let path = self.paths.index_of(&joined).ok_or_else(|| {
                    CategoryError::Invariant(format!("{} is not a flow path here", joined.display(&self.ctx)))
                })?;
                lookup
                    .get(&(path, Some(self.identity(x))))
                    .copied()
                    .ok_or_else(|| CategoryError::Invariant("ρ leaves the fiber".into()))
            })
            .collect()
    }

    /// ρ_c is a descending closure operator whose image is the genuine fiber,
    /// embedded as `γ ↦ (1_c, γ)` with the same order.
    pub fn check_rho(&self, c: usize) -> Result<(), String> {
        let right = self.right_fiber(c).map_err(|e| e.to_string())?;
        let genuine = self.genuine_fiber(c).map_err(|e| e.to_string())?;
        let table = self.rho_table(&right).map_err(|e| e.to_string())?;
        let rho = PosetMap::endo(&right.poset, table).map_err(|e| e.to_string())?;
        if !rho.is_descending_closure_operator() {
            return Err(format!("ρ over {} is not a descending closure operator", self.ctx.label(c)));
        }
        let image = rho.image();
        let id = Some(self.identity(right.base));
        let fixed: Vec<usize> = (0..right.elements.len()).filter(|&i| right.elements[i].morphism == id).collect();
        if image != fixed || image.len() != genuine.elements.len() {
            return Err(format!("image of ρ over {} is not the genuine fiber", self.ctx.label(c)));
        }
        for (i, &a) in image.iter().enumerate() {
            for (j, &b) in image.iter().enumerate() {
                if right.elements[a].path != genuine.elements[i].path
                    || right.poset.leq(a, b) != genuine.poset.leq(i, j)
                {
                    return Err(format!("image of ρ over {} is not order-isomorphic to τ⁻¹(c)", self.ctx.label(c)));
                }
            }
        }
        Ok(())
    }

    /// Replays the contraction of τ⁻¹(c) level by level along the faithful
    /// function, then cross-checks that its reduced homology vanishes.
    pub fn verify_fiber_contractible(&self, c: usize) -> Result<FiberContraction, CategoryError> {
        let fiber = self.genuine_fiber(c)?;
        let ctx = &self.ctx;
        let m = ctx.matching();
        let f = ctx.faithful();
        let mut current: BTreeSet<usize> = fiber.elements.iter().map(|e| e.path).collect();
        let mut levels: Vec<usize> = current.iter().map(|&i| self.paths.path(i).initial()).collect();
        levels.sort_by_key(|&e| std::cmp::Reverse(f.value(e)));
        levels.dedup();
        let mut log = Vec::new();
        let mut failure = None;
        for x in levels {
            if x == c {
                break;
            }
            let members: Vec<usize> = current.iter().copied().collect();
            let at_level: BTreeSet<usize> =
                members.iter().copied().filter(|&i| self.paths.path(i).initial() == x).collect();
            let upward = m.in_d(x);
            let mut table = Vec::with_capacity(members.len());
            let local: HashMap<usize, usize> = members.iter().enumerate().map(|(j, &i)| (i, j)).collect();
            for &i in &members {
                let g = self.paths.path(i);
                let img = if !at_level.contains(&i) {
                    Some(i)
                } else {
                    let moved = if upward { g.upgrade() } else { g.drop_first() };
                    moved.ok().and_then(|h| self.paths.index_of(&h))
                };
                match img.and_then(|k| local.get(&k)) {
                    Some(&j) => table.push(j),
                    None => {
                        failure = Some(format!("level {}: a path leaves the filtration", ctx.label(x)));
                        break;
                    }
                }
            }
            if failure.is_some() {
                break;
            }
            let stage = self.paths.poset().induced(&members);
            let ok = match PosetMap::endo(&stage, table) {
                Ok(map) => {
                    let closure =
                        if upward { map.is_ascending_closure_operator() } else { map.is_descending_closure_operator() };
                    let image: BTreeSet<usize> = map.image().into_iter().map(|j| members[j]).collect();
                    let expect: BTreeSet<usize> = current.difference(&at_level).copied().collect();
                    closure && image == expect
                }
                Err(_) => false,
            };
            let kind = if upward { "ascending (upgrade)" } else { "descending (drop first step)" };
            log.push(format!("level {}: {} paths, {kind}", ctx.label(x), at_level.len()));
            if !ok {
                failure = Some(format!("level {}: {kind} closure law fails", ctx.label(x)));
                break;
            }
            current = current.difference(&at_level).copied().collect();
        }
        let base = self.paths.index_of(&FlowPath::trivial(c));
        let collapsed = failure.is_none() && current.len() == 1 && current.iter().next().copied() == base;
        if failure.is_none() && !collapsed {
            failure = Some("filtration does not end at the trivial path".into());
        }
        let homology_acyclic = ChainComplex::of_poset(&fiber.poset)?.homology().is_reduced_acyclic();
        Ok(FiberContraction { collapsed, homology_acyclic, log, failure })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberKind {
    Genuine,
    Right,
    Left,
}

/// An element of a fiber: a path, and for comma fibers a morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiberElement {
    pub path: usize,
    pub morphism: Option<Mor>,
}

#[derive(Debug, Clone)]
pub struct FiberPoset {
    pub kind: FiberKind,
    pub base: usize,
    pub elements: Vec<FiberElement>,
    pub poset: FinitePoset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberContraction {
    pub collapsed: bool,
    pub homology_acyclic: bool,
    pub log: Vec<String>,
    pub failure: Option<String>,
}

impl FiberContraction {
    pub fn contractible(&self) -> bool {
        self.collapsed && self.homology_acyclic
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::{FacePoset, SimplicialComplex};
    use crate::flow::DEFAULT_PATH_CAP;
    use crate::morse::PartialMatching;

    fn triangle() -> FlowContext {
        let fp = FacePoset::from_simplicial(&SimplicialComplex::new(vec![
            vec!["v0".into(), "v1".into()],
            vec!["v1".into(), "v2".into()],
            vec!["v0".into(), "v2".into()],
        ]))
        .unwrap();
        let ix = |s: &str| fp.index_of(s).unwrap();
        let m = PartialMatching::new(&fp, &[(ix("v1"), ix("v0,v1")), (ix("v2"), ix("v0,v2"))]).unwrap();
        FlowContext::new(fp, m).unwrap()
    }

    #[test]
    fn triangle_category() {
        let ctx = triangle();
        let cat = FlowCategory::build(&ctx, false, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(cat.object_count(), 2);
        let h = cat.hom(0, 1);
        let shown: Vec<String> = h.members().iter().map(|&p| cat.paths().path(p).display(&ctx)).collect();
        assert_eq!(shown, vec!["([v1],[v0 v1];[v0])", "([v2],[v0 v2];[v0])"]);
        assert!(h.poset().cover_pairs().is_empty());
        assert!(cat.hom(1, 0).is_empty());
        assert_eq!(cat.hom(0, 0).len(), 1);
        cat.check_laws().unwrap();
        cat.check_colax().unwrap();
    }

    #[test]
    fn triangle_right_fiber() {
        let ctx = triangle();
        let cat = FlowCategory::build(&ctx, false, DEFAULT_PATH_CAP).unwrap();
        let v0 = ctx.face_poset().index_of("v0").unwrap();
        let fib = cat.right_fiber(v0).unwrap();
        assert_eq!(fib.elements.len(), 7);
        assert_eq!(fib.poset.cover_pairs().len(), 6);
        cat.check_rho(v0).unwrap();
        let top = ctx.face_poset().index_of("v1,v2").unwrap();
        assert_eq!(cat.right_fiber(top).unwrap().elements.len(), 1);
        assert!(cat.verify_fiber_contractible(v0).unwrap().contractible());
        assert!(cat.verify_fiber_contractible(top).unwrap().contractible());
        cat.left_fiber(v0).unwrap().poset.check_axioms().unwrap();
    }
}
