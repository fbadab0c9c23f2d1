//! Exhaustive property checks over one complex with a matching, and the
//! chain of homology comparisons from F(X) to the diagonal nerves.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::category::{CategoryError, FiberKind, FlowCategory};
use crate::cw::{FacePoset, SimplicialComplex};
use crate::flow::{all_embeddings, concatenate, reduce, FlowContext, FlowError};
use crate::homology::{ChainComplex, HomologyResult};
use crate::morse::{faithful_function, is_acyclic, is_faithful, matching_from_function};
use crate::nerve::DiagonalNerve;
use crate::poset::{PosetError, PosetMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

impl From<FlowError> for VerifyError {
    fn from(e: FlowError) -> Self {
        VerifyError::Category(e.into())
    }
}

impl VerifyError {
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            VerifyError::Poset(PosetError::Capacity(_))
                | VerifyError::Category(CategoryError::Flow(FlowError::Capacity(_)))
                | VerifyError::Category(CategoryError::Poset(PosetError::Capacity(_)))
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn check(name: &'static str, outcome: Result<(), String>) -> Check {
    match outcome {
        Ok(()) => Check { name, passed: true, detail: None },
        Err(d) => Check { name, passed: false, detail: Some(d) },
    }
}

/// The two flow categories of one matching.
pub struct Pipeline {
    pub ctx: FlowContext,
    pub full: FlowCategory,
    pub reduced: FlowCategory,
}

impl Pipeline {
    pub fn build(ctx: &FlowContext, cap: usize) -> Result<Self, VerifyError> {
        Ok(Pipeline {
            ctx: ctx.clone(),
            full: FlowCategory::build(ctx, false, cap)?,
            reduced: FlowCategory::build(ctx, true, cap)?,
        })
    }

    /// Every lemma-level check, in a fixed order.
    pub fn lemma_suite(&self) -> Vec<Check> {
        type Run = fn(&Pipeline) -> Result<(), String>;
        let suite: [(&'static str, Run); 12] = [
            ("faithful round trip", Pipeline::faithful),
            ("poset axioms of FP and reduced FP", Pipeline::poset_axioms),
            ("embedding functions unique", Pipeline::embeddings_unique),
            ("subpath order lemmas", Pipeline::subpath_lemmas),
            ("reduce is a descending closure retraction", Pipeline::reduce_closure),
            ("concatenation lemmas", Pipeline::concatenation),
            ("composition laws of C", |p| p.full.check_laws()),
            ("composition laws of reduced C", |p| p.reduced.check_laws()),
            ("reduction commutes with composition", Pipeline::reduction_functor),
            ("τ is normal colax", |p| p.full.check_colax().and_then(|_| p.reduced.check_colax())),
            ("ρ_c is a descending closure onto τ⁻¹(c)", Pipeline::rho),
            ("fibers of τ are contractible", Pipeline::fibers),
        ];
        suite.iter().map(|&(name, run)| check(name, run(self))).collect()
    }

    fn faithful(&self) -> Result<(), String> {
        let (fp, m) = (self.ctx.face_poset(), self.ctx.matching());
        if !is_acyclic(fp, m) {
            return Err("matching is not acyclic".into());
        }
        let f = faithful_function(fp, m).map_err(|e| e.to_string())?;
        if !is_faithful(fp, &f) {
            return Err("constructed function is not faithful".into());
        }
        if matching_from_function(fp, &f).map_err(|e| e.to_string())? != *m {
            return Err("matching of the faithful function differs".into());
        }
        // f(e1) >= f(u1) > f(e2) >= ... >= f(un) > f(c) along every path.
        for g in self.full.paths().paths() {
            let mut prev = None;
            for (i, s) in g.steps().iter().enumerate() {
                let (fe, fu) = (f.value(s.e), f.value(s.u));
                if fe < fu || prev.is_some_and(|p| p <= fe) || (i == 0 && prev.is_some()) {
                    return Err(format!("values not decreasing along {}", g.display(&self.ctx)));
                }
                prev = Some(fu);
            }
            if prev.is_some_and(|p| p <= f.value(g.target())) {
                return Err(format!("values not decreasing along {}", g.display(&self.ctx)));
            }
        }
        Ok(())
    }

    fn poset_axioms(&self) -> Result<(), String> {
        for cat in [&self.full, &self.reduced] {
            let p = cat.paths().poset();
            p.check_axioms().map_err(|e| e.to_string())?;
            let ext = p.linear_extension();
            for (i, &a) in ext.iter().enumerate() {
                if ext[i + 1..].iter().any(|&b| p.lt(b, a)) {
                    return Err("linear extension violates the order".into());
                }
            }
        }
        Ok(())
    }

    fn embeddings_unique(&self) -> Result<(), String> {
        let fpo = self.full.paths();
        for a in 0..fpo.len() {
            for b in 0..fpo.len() {
                let n = all_embeddings(&self.ctx, fpo.path(a), fpo.path(b)).len();
                if n > 1 || (a != b && (n == 1) != fpo.leq(a, b)) {
                    return Err(format!(
                        "{} embeddings of {} into {}",
                        n,
                        fpo.path(a).display(&self.ctx),
                        fpo.path(b).display(&self.ctx)
                    ));
                }
            }
        }
        Ok(())
    }

    fn subpath_lemmas(&self) -> Result<(), String> {
        let fpo = self.full.paths();
        let f = self.ctx.faithful();
        for a in 0..fpo.len() {
            for b in fpo.poset().up_set(a) {
                let (g, h) = (fpo.path(a), fpo.path(b));
                if f.value(g.target()) > f.value(h.target()) {
                    return Err(format!("f(τ) increases along {} ≼ {}", g.display(&self.ctx), h.display(&self.ctx)));
                }
                if g.target() == h.target() && g.len() > h.len() {
                    return Err(format!("length drops along {} ≼ {}", g.display(&self.ctx), h.display(&self.ctx)));
                }
            }
        }
        Ok(())
    }

    fn reduce_closure(&self) -> Result<(), String> {
        let (full, red) = (self.full.paths(), self.reduced.paths());
        let mut to_reduced = Vec::with_capacity(full.len());
        let mut endo = Vec::with_capacity(full.len());
        for g in full.paths() {
            let r = reduce(&self.ctx, g);
            if reduce(&self.ctx, &r) != r {
                return Err(format!("reduce is not idempotent on {}", g.display(&self.ctx)));
            }
            if full.is_reduced(full.index_of(g).unwrap()) && r != *g {
                return Err(format!("reduce moves the reduced path {}", g.display(&self.ctx)));
            }
            to_reduced.push(red.index_of(&r).ok_or("reduce leaves the reduced paths")?);
            endo.push(full.index_of(&r).ok_or("reduce leaves FP")?);
        }
        PosetMap::new(full.poset(), red.poset(), to_reduced).map_err(|e| e.to_string())?;
        let closure = PosetMap::endo(full.poset(), endo).map_err(|e| e.to_string())?;
        if !closure.is_descending_closure_operator() {
            return Err("inclusion ∘ reduce is not a descending closure operator".into());
        }
        Ok(())
    }

    fn concatenation(&self) -> Result<(), String> {
        let fpo = self.full.paths();
        let ctx = &self.ctx;
        let fp = ctx.face_poset();
        for g in fpo.paths() {
            for d in fpo.paths().iter().filter(|d| fp.leq(d.initial(), g.target())) {
                let gd = concatenate(ctx, g, d).map_err(|e| e.to_string())?;
                let k = fpo.index_of(&gd).ok_or_else(|| format!("{} is not a flow path", gd.display(ctx)))?;
                let (gi, di) = (fpo.index_of(g).unwrap(), fpo.index_of(d).unwrap());
                // δ ≼ γ∗δ needs ι(δ) below every e_p of γ, whatever ℓ(δ) is.
                let below_all = (1..=g.len()).all(|p| fp.leq(d.initial(), g.cell(p)));
                if below_all && !fpo.leq(di, k) {
                    return Err(format!("{} ⋠ {}", d.display(ctx), gd.display(ctx)));
                }
                if !fpo.leq(k, gi) {
                    return Err(format!("{} ⋠ {}", gd.display(ctx), g.display(ctx)));
                }
            }
        }
        Ok(())
    }

    fn reduction_functor(&self) -> Result<(), String> {
        let (c, r) = (&self.full, &self.reduced);
        let k = c.object_count();
        for x in 0..k {
            for y in 0..k {
                let (hc, hr) = (c.hom(x, y), r.hom(x, y));
                let (a, b) = (
                    ChainComplex::of_poset(hc.poset()).map_err(|e| e.to_string())?.homology(),
                    ChainComplex::of_poset(hr.poset()).map_err(|e| e.to_string())?.homology(),
                );
                if !a.agrees_below(&b, a.degrees.len().max(b.degrees.len())) {
                    return Err(format!("hom({}, {}) changes homology under reduction", c.object_label(x), c.object_label(y)));
                }
                for z in 0..k {
                    let hg = c.hom(y, z);
                    if hc.is_empty() || hg.is_empty() {
                        continue;
                    }
                    for fi in 0..hc.len() {
                        for gi in 0..hg.len() {
                            let (f, g) = (c.paths().path(hc.members()[fi]), c.paths().path(hg.members()[gi]));
                            let lhs = reduce(&self.ctx, &c.compose_paths(g, f));
                            let rhs = r.compose_paths(&reduce(&self.ctx, g), &reduce(&self.ctx, f));
                            if lhs != rhs {
                                return Err(format!(
                                    "r(g∘f) ≠ r(g)∘r(f) for f = {}, g = {}",
                                    f.display(&self.ctx),
                                    g.display(&self.ctx)
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn rho(&self) -> Result<(), String> {
        for cat in [&self.full, &self.reduced] {
            for &c in cat.objects() {
                cat.check_rho(c)?;
            }
        }
        Ok(())
    }

    fn fibers(&self) -> Result<(), String> {
        for cat in [&self.full, &self.reduced] {
            for &c in cat.objects() {
                let label = self.ctx.label(c);
                let run = cat.verify_fiber_contractible(c).map_err(|e| e.to_string())?;
                if let Some(f) = run.failure {
                    return Err(format!("τ⁻¹({label}): {f}"));
                }
                if !run.contractible() {
                    return Err(format!("τ⁻¹({label}) has nonzero reduced homology"));
                }
                for fiber in [cat.right_fiber(c), cat.left_fiber(c)] {
                    let fiber = fiber.map_err(|e| e.to_string())?;
                    fiber.poset.check_axioms().map_err(|e| e.to_string())?;
                    if fiber.kind == FiberKind::Right {
                        let h = ChainComplex::of_poset(&fiber.poset).map_err(|e| e.to_string())?.homology();
                        if !h.is_reduced_acyclic() {
                            return Err(format!("{label}↓τ has nonzero reduced homology"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Homology of F(X), FP̄, FP and the two diagonal nerves.
    pub fn homology_chain(&self, max_dim: usize) -> Result<HomologyChain, VerifyError> {
        let of = |p| -> Result<HomologyResult, VerifyError> { Ok(ChainComplex::of_poset(p)?.homology()) };
        let mut spaces = vec![
            ("F(X)", of(self.ctx.face_poset().poset())?),
            ("FP reduced", of(self.reduced.paths().poset())?),
            ("FP", of(self.full.paths().poset())?),
        ];
        let mut squares = true;
        for (name, cat) in [("B² C reduced", &self.reduced), ("B² C", &self.full)] {
            let cc = DiagonalNerve::build(cat, max_dim)?.chain_complex(cat);
            squares &= cc.boundary_squares_to_zero();
            spaces.push((name, cc.homology()));
        }
        let base = &spaces[0].1;
        let bound = max_dim.max(base.degrees.len());
        let agree = spaces.iter().all(|(_, h)| h.agrees_below(base, bound.min(max_dim)))
            && base.degrees.len() <= max_dim;
        Ok(HomologyChain { max_dim, spaces, agree, boundaries_square_to_zero: squares })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HomologyChain {
    pub max_dim: usize,
    pub spaces: Vec<(&'static str, HomologyResult)>,
    pub agree: bool,
    pub boundaries_square_to_zero: bool,
}

impl HomologyChain {
    pub fn of(&self, name: &str) -> Option<&HomologyResult> {
        self.spaces.iter().find(|(n, _)| *n == name).map(|(_, h)| h)
    }
}

/// Lemma suite and homology chain for one matching.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub homology: HomologyChain,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.homology.agree && self.homology.boundaries_square_to_zero
    }
}

pub fn verify(ctx: &FlowContext, max_dim: usize, cap: usize) -> Result<VerifyReport, VerifyError> {
    let pipe = Pipeline::build(ctx, cap)?;
    Ok(VerifyReport { checks: pipe.lemma_suite(), homology: pipe.homology_chain(max_dim)? })
}

/// A random simplicial complex of dimension at most 2 with at most
/// `max_cells` cells, deterministic in `seed`.
pub fn random_complex(seed: u64, max_cells: usize) -> FacePoset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de);
    let n = rng.gen_range(3..=6);
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            candidates.push(vec![a, b]);
            for c in b + 1..n {
                candidates.push(vec![a, b, c]);
            }
        }
    }
    candidates.shuffle(&mut rng);
    let mut cells: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    let mut facets = Vec::new();
    for f in candidates {
        let faces: Vec<Vec<usize>> = (1..(1u32 << f.len()))
            .map(|mask| (0..f.len()).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect())
            .collect();
        let new = faces.iter().filter(|c| !cells.contains(*c)).count();
        if cells.len() + new > max_cells || new == 0 {
            continue;
        }
        cells.extend(faces);
        facets.push(f.iter().map(|v| format!("v{v}")).collect());
    }
    FacePoset::from_simplicial(&SimplicialComplex::new(facets)).expect("random complexes are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::flow::DEFAULT_PATH_CAP;

    #[test]
    fn fixtures_pass() {
        for f in fixtures::all() {
            let report = verify(&f.context(), f.fp.top_dim() + 1, DEFAULT_PATH_CAP).unwrap();
            for c in &report.checks {
                assert!(c.passed, "{}: {} ({:?})", f.name, c.name, c.detail);
            }
            assert!(report.homology.agree, "{}: {:?}", f.name, report.homology);
        }
    }

    #[test]
    fn suffix_of_concatenation_needs_initial_below_prefix() {
        // ℓ(δ) ≥ 1 alone does not give δ ≼ γ∗δ.
        let t = fixtures::torus();
        let ctx = t.context();
        let g = crate::flow::FlowPath::from_ids(&ctx, &["h(1,1)", "s(1,0)"], "h(1,0)").unwrap();
        let d = crate::flow::FlowPath::from_ids(&ctx, &["p(1,0)", "h(0,0)"], "p(0,0)").unwrap();
        let gd = concatenate(&ctx, &g, &d).unwrap();
        assert!(crate::flow::subpath_leq(&ctx, &d, &gd).is_none());
        assert!(crate::flow::subpath_leq(&ctx, &gd, &g).is_some());
    }

    #[test]
    fn random_complexes_are_small_and_deterministic() {
        for seed in 0..20 {
            let fp = random_complex(seed, 25);
            assert!(fp.len() <= 25 && fp.top_dim() <= 2);
            assert_eq!(fp.cells(), random_complex(seed, 25).cells());
        }
    }
}
