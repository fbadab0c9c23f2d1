//! The worked examples shipped under `fixtures/`, compiled in.

use crate::cw::FacePoset;
use crate::flow::FlowContext;
use crate::io::{parse_face_poset, parse_matching, parse_morse, parse_simplicial};
use crate::morse::{matching_from_function, DiscreteMorseFunction, PartialMatching};

/// A complex with an acyclic matching, optionally induced by a Morse function.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub fp: FacePoset,
    pub matching: PartialMatching,
    pub morse: Option<DiscreteMorseFunction>,
}

impl Fixture {
    pub fn context(&self) -> FlowContext {
        FlowContext::new(self.fp.clone(), self.matching.clone()).expect("fixture matchings are acyclic")
    }

    /// Index of a cell by id; panics on unknown ids.
    pub fn cell(&self, id: &str) -> usize {
        self.fp.index_of(id).unwrap_or_else(|| panic!("no cell `{id}` in {}", self.name))
    }
}

fn simplicial(text: &str) -> FacePoset {
    FacePoset::from_simplicial(&parse_simplicial(text).expect("fixture parses")).expect("fixture is a complex")
}

fn with_morse(name: &'static str, fp: FacePoset, text: &str) -> Fixture {
    let f = parse_morse(text, &fp).expect("fixture parses");
    let matching = matching_from_function(&fp, &f).expect("fixture is Morse");
    Fixture { name, fp, matching, morse: Some(f) }
}

fn with_matching(name: &'static str, fp: FacePoset, text: &str) -> Fixture {
    let matching = parse_matching(text, &fp).expect("fixture parses");
    Fixture { name, fp, matching, morse: None }
}

/// Boundary of a triangle with two matched vertices.
pub fn triangle() -> Fixture {
    with_morse(
        "triangle",
        simplicial(include_str!("../../../fixtures/triangle.txt")),
        include_str!("../../../fixtures/triangle.morse"),
    )
}

/// Full 2-simplex with the matching of the stable-subspace pictures.
pub fn two_simplex() -> Fixture {
    with_matching(
        "two_simplex",
        simplicial(include_str!("../../../fixtures/two_simplex.txt")),
        include_str!("../../../fixtures/two_simplex.matching"),
    )
}

/// Boundary of a tetrahedron with the height matching.
pub fn tetra_boundary() -> Fixture {
    with_morse(
        "tetra_boundary",
        simplicial(include_str!("../../../fixtures/tetra_boundary.txt")),
        include_str!("../../../fixtures/tetra_boundary.morse"),
    )
}

/// Full 2-simplex collapsed to a vertex by a Morse function.
pub fn full_delta2() -> Fixture {
    with_morse(
        "full_delta2",
        simplicial(include_str!("../../../fixtures/full_delta2.txt")),
        include_str!("../../../fixtures/full_delta2.morse"),
    )
}

/// The 3×3 cubical torus.
pub fn torus() -> Fixture {
    let fp = parse_face_poset(include_str!("../../../fixtures/torus.json")).expect("fixture parses");
    with_matching("torus", fp, include_str!("../../../fixtures/torus.matching"))
}

pub fn all() -> Vec<Fixture> {
    vec![triangle(), two_simplex(), tetra_boundary(), full_delta2(), torus()]
}
