//! The in-repo diagram corpus. Every entry mirrors one of the worked
//! examples (split unions, the two-Hopf pair, small knots) or a standard
//! tabulated diagram; expected invariant values are frozen in
//! [`Expected`] blocks and re-checked by the regression tests.

use crate::diagram::{split_union, Arc, Crossing, LinkDiagram};
use crate::error::{Error, Result};

fn arc(id: &str, component: usize) -> Arc {
    Arc { id: id.to_string(), component }
}

fn crossing(id: &str, over: &str, under_in: &str, under_out: &str, writhe: i8) -> Crossing {
    Crossing {
        id: id.to_string(),
        over: over.to_string(),
        under_in: under_in.to_string(),
        under_out: under_out.to_string(),
        writhe,
    }
}

/// Zero-crossing unknot: a single closed arc.
pub fn unknot() -> LinkDiagram {
    LinkDiagram { arcs: vec![arc("c", 1)], crossings: vec![], mu: 1 }
}

/// Positive Hopf link, one arc per component.
pub fn hopf() -> LinkDiagram {
    LinkDiagram {
        arcs: vec![arc("a", 1), arc("b", 2)],
        crossings: vec![crossing("c1", "a", "b", "b", 1), crossing("c2", "b", "a", "a", 1)],
        mu: 2,
    }
}

/// Standard 3-crossing trefoil.
pub fn trefoil() -> LinkDiagram {
    LinkDiagram {
        arcs: vec![arc("a", 1), arc("b", 1), arc("c", 1)],
        crossings: vec![
            crossing("c1", "c", "b", "a", 1),
            crossing("c2", "b", "a", "c", 1),
            crossing("c3", "a", "c", "b", 1),
        ],
        mu: 1,
    }
}

/// Figure-eight knot 4_1 from its tabulated PD code.
pub fn figure_eight() -> LinkDiagram {
    crate::diagram::parse_pd_code("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap()
}

/// Torus knot 5_1 from its tabulated PD code.
pub fn cinquefoil() -> LinkDiagram {
    crate::diagram::parse_pd_code("X[2,8,3,7] X[4,10,5,9] X[6,2,7,1] X[8,4,9,3] X[10,6,1,5]")
        .unwrap()
}

/// Split union of a Hopf link and an unknot, arcs a, b, c on components
/// 1, 2, 3.
pub fn hopf_unknot() -> LinkDiagram {
    LinkDiagram {
        arcs: vec![arc("a", 1), arc("b", 2), arc("c", 3)],
        crossings: vec![crossing("c1", "a", "b", "b", 1), crossing("c2", "b", "a", "a", 1)],
        mu: 3,
    }
}

/// hopf_unknot with component indices 2 and 3 interchanged.
pub fn hopf_unknot_swapped() -> LinkDiagram {
    hopf_unknot().permute_components(&[1, 3, 2]).unwrap()
}

/// Split union of a trefoil and an unknot: arcs a, b, c on component 1 and
/// d on component 2.
pub fn trefoil_unknot() -> LinkDiagram {
    LinkDiagram {
        arcs: vec![arc("a", 1), arc("b", 1), arc("c", 1), arc("d", 2)],
        crossings: vec![
            crossing("c1", "c", "b", "a", 1),
            crossing("c2", "b", "a", "c", 1),
            crossing("c3", "a", "c", "b", 1),
        ],
        mu: 2,
    }
}

/// trefoil_unknot with the two component indices interchanged.
pub fn trefoil_unknot_swapped() -> LinkDiagram {
    trefoil_unknot().permute_components(&[2, 1]).unwrap()
}

/// Split union of two Hopf links: arcs a, b, c, d on components 1-4.
pub fn two_hopf() -> LinkDiagram {
    LinkDiagram {
        arcs: vec![arc("a", 1), arc("b", 2), arc("c", 3), arc("d", 4)],
        crossings: vec![
            crossing("c1", "a", "b", "b", 1),
            crossing("c2", "b", "a", "a", 1),
            crossing("c3", "c", "d", "d", 1),
            crossing("c4", "d", "c", "c", 1),
        ],
        mu: 4,
    }
}

/// The four-component chained link whose reduced module matches two_hopf
/// but whose finite-order elements have different Crowell images.
/// Components: {v}, {w, x}, {y}, {z}; the writhes are not load-bearing for
/// the module and are chosen to satisfy validation.
pub fn l_prime() -> LinkDiagram {
    LinkDiagram {
        arcs: vec![arc("v", 1), arc("w", 2), arc("x", 2), arc("y", 3), arc("z", 4)],
        crossings: vec![
            crossing("c1", "w", "v", "v", 1),
            crossing("c2", "v", "x", "w", 1),
            crossing("c3", "x", "y", "y", 1),
            crossing("c4", "y", "w", "x", 1),
        ],
        mu: 4,
    }
}

/// Granny knot (connected sum of two same-handed trefoils); stretch fixture.
pub fn granny() -> LinkDiagram {
    LinkDiagram {
        arcs: vec![arc("a1", 1), arc("p", 1), arc("r", 1), arc("a2", 1), arc("c", 1), arc("b", 1)],
        crossings: vec![
            crossing("c1", "c", "b", "a1", 1),
            crossing("c2", "b", "a2", "c", 1),
            crossing("c3", "a2", "c", "b", 1),
            crossing("c4", "r", "a1", "p", 1),
            crossing("c5", "a1", "p", "r", 1),
            crossing("c6", "p", "r", "a2", 1),
        ],
        mu: 1,
    }
}

/// Connected sum of the torus links T(2,2) and T(2,4), chained through the
/// shared middle component; stretch fixture.
pub fn torus_chain_sum() -> LinkDiagram {
    LinkDiagram {
        arcs: vec![
            arc("u", 1),
            arc("v1", 2),
            arc("v2", 2),
            arc("v3", 2),
            arc("w1", 3),
            arc("w2", 3),
        ],
        crossings: vec![
            crossing("c1", "v1", "u", "u", 1),
            crossing("c2", "u", "v3", "v1", 1),
            crossing("c3", "v3", "w1", "w2", 1),
            crossing("c4", "w2", "v1", "v2", 1),
            crossing("c5", "v2", "w2", "w1", 1),
            crossing("c6", "w1", "v2", "v3", 1),
        ],
        mu: 3,
    }
}

/// Frozen expected values for a fixture. Absent fields are not pinned for
/// that entry (stretch fixtures are property-checked only).
#[derive(Clone, Debug, Default)]
pub struct Expected {
    /// Rational invariant factors of the reduced module plus its free rank.
    pub rational: Option<(Vec<&'static str>, usize)>,
    /// Free rank and torsion of the specialization at t = -1.
    pub nu: Option<(usize, Vec<u64>)>,
    /// First Alexander polynomial of the reduced module.
    pub delta1: Option<&'static str>,
    /// Orbit count (always the component count).
    pub orbits: Option<usize>,
    /// Selected coloring counts as (modulus, unit, count).
    pub colorings: Vec<(u64, u64, u64)>,
}

pub struct FixtureEntry {
    pub name: &'static str,
    pub diagram: LinkDiagram,
    pub expected: Expected,
    pub provenance: &'static str,
}

pub fn corpus() -> Vec<FixtureEntry> {
    vec![
        FixtureEntry {
            name: "unknot",
            diagram: unknot(),
            expected: Expected {
                rational: Some((vec![], 1)),
                nu: Some((1, vec![])),
                delta1: Some("1"),
                orbits: Some(1),
                colorings: vec![(5, 2, 5), (7, 3, 7)],
            },
            provenance: "zero-crossing circle",
        },
        FixtureEntry {
            name: "hopf",
            diagram: hopf(),
            expected: Expected {
                rational: Some((vec!["t - 1"], 1)),
                nu: Some((1, vec![2])),
                delta1: None,
                orbits: Some(2),
                colorings: vec![(4, 3, 8)],
            },
            provenance: "positive Hopf link, both writhes +1",
        },
        FixtureEntry {
            name: "trefoil",
            diagram: trefoil(),
            expected: Expected {
                rational: Some((vec!["t^2 - t + 1"], 1)),
                nu: Some((1, vec![3])),
                delta1: Some("1 - t + t^2"),
                orbits: Some(1),
                colorings: vec![(3, 2, 9)],
            },
            provenance: "standard 3-crossing diagram",
        },
        FixtureEntry {
            name: "figure-eight",
            diagram: figure_eight(),
            expected: Expected {
                rational: Some((vec!["t^2 - 3*t + 1"], 1)),
                nu: Some((1, vec![5])),
                delta1: Some("1 - 3*t + t^2"),
                orbits: Some(1),
                colorings: vec![(5, 2, 5), (5, 4, 25)],
            },
            provenance: "4_1 from its tabulated PD code",
        },
        FixtureEntry {
            name: "5_1",
            diagram: cinquefoil(),
            expected: Expected {
                rational: Some((vec!["t^4 - t^3 + t^2 - t + 1"], 1)),
                nu: Some((1, vec![5])),
                delta1: Some("1 - t + t^2 - t^3 + t^4"),
                orbits: Some(1),
                colorings: vec![(5, 2, 5)],
            },
            provenance: "5_1 from its tabulated PD code",
        },
        FixtureEntry {
            name: "hopf-unknot",
            diagram: hopf_unknot(),
            expected: Expected {
                rational: Some((vec!["t - 1"], 2)),
                nu: Some((2, vec![2])),
                delta1: None,
                orbits: Some(3),
                colorings: vec![],
            },
            provenance: "split union of a Hopf link and an unknot",
        },
        FixtureEntry {
            name: "hopf-unknot-swapped",
            diagram: hopf_unknot_swapped(),
            expected: Expected {
                rational: Some((vec!["t - 1"], 2)),
                nu: Some((2, vec![2])),
                delta1: None,
                orbits: Some(3),
                colorings: vec![],
            },
            provenance: "hopf-unknot with components 2 and 3 interchanged",
        },
        FixtureEntry {
            name: "trefoil-unknot",
            diagram: trefoil_unknot(),
            expected: Expected {
                rational: Some((vec!["t^2 - t + 1"], 2)),
                nu: Some((2, vec![3])),
                delta1: None,
                orbits: Some(2),
                colorings: vec![(3, 2, 27)],
            },
            provenance: "split union of a trefoil and an unknot",
        },
        FixtureEntry {
            name: "trefoil-unknot-swapped",
            diagram: trefoil_unknot_swapped(),
            expected: Expected {
                rational: Some((vec!["t^2 - t + 1"], 2)),
                nu: Some((2, vec![3])),
                delta1: None,
                orbits: Some(2),
                colorings: vec![(3, 2, 27)],
            },
            provenance: "trefoil-unknot with component indices interchanged",
        },
        FixtureEntry {
            name: "two-hopf",
            diagram: two_hopf(),
            expected: Expected {
                rational: Some((vec!["t - 1", "t - 1"], 2)),
                nu: Some((2, vec![2, 2])),
                delta1: None,
                orbits: Some(4),
                colorings: vec![],
            },
            provenance: "split union of two Hopf links",
        },
        FixtureEntry {
            name: "l-prime",
            diagram: l_prime(),
            expected: Expected {
                rational: Some((vec!["t - 1", "t - 1"], 2)),
                nu: Some((2, vec![2, 2])),
                delta1: None,
                orbits: Some(4),
                colorings: vec![],
            },
            provenance: "the chained four-component companion of two-hopf",
        },
        FixtureEntry {
            name: "granny",
            diagram: granny(),
            expected: Expected {
                rational: None,
                nu: None,
                delta1: Some("1 - 2*t + 3*t^2 - 2*t^3 + t^4"),
                orbits: Some(1),
                colorings: vec![],
            },
            provenance: "stretch fixture: connected sum of two trefoils",
        },
        FixtureEntry {
            name: "torus-chain-sum",
            diagram: torus_chain_sum(),
            expected: Expected {
                rational: None,
                nu: None,
                delta1: None,
                orbits: Some(3),
                colorings: vec![],
            },
            provenance: "stretch fixture: T(2,2) # T(2,4) chained through the middle component",
        },
    ]
}

/// Look up a fixture by name.
pub fn by_name(name: &str) -> Result<LinkDiagram> {
    corpus()
        .into_iter()
        .find(|f| f.name == name)
        .map(|f| f.diagram)
        .ok_or_else(|| Error::Usage(format!("unknown fixture `{}`", name)))
}

/// Convenience used by the CLI: also accepts ad-hoc split unions like
/// `hopf+unknot`.
pub fn resolve(name: &str) -> Result<LinkDiagram> {
    if let Some((a, b)) = name.split_once('+') {
        return Ok(split_union(&resolve(a)?, &resolve(b)?));
    }
    by_name(name)
}
