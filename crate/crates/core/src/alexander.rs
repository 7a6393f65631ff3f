//! Alexander presentations from diagrams: the multivariate relation matrix
//! and Crowell vector, the one-variable reduction, the specialization at
//! t = -1, the difference-submodule presentation, and a unit-pivot
//! simplifier that shrinks presentations without changing the module.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::Zero;
use serde_json::{json, Value};

use crate::diagram::{validate, LinkDiagram};
use crate::error::{Error, Result};
use crate::laurent::IntLaurent;

/// Coordinates of a Crowell image inside `Λ ⊕ Z^(μ-1)` (after the
/// identification of the tensored augmentation ideal): a free coordinate
/// and one residue per component beyond the first. At the τ level the
/// residues live in `Z`; after ν they are read mod 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrowellCoord {
    pub free: IntLaurent,
    pub tors: Vec<i64>,
}

impl CrowellCoord {
    /// Canonical coordinates of an arc on the given component: free part 1
    /// and torsion part the standard basis vector of that component (zero
    /// for component 1).
    pub fn for_component(component: usize, mu: usize) -> Self {
        let mut tors = vec![0i64; mu.saturating_sub(1)];
        if component >= 2 {
            tors[component - 2] = 1;
        }
        CrowellCoord { free: IntLaurent::one(1), tors }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrowellVector {
    /// One entry `t_{κ(a)} - 1` per generator.
    Multivariate(Vec<IntLaurent>),
    /// Specialized coordinates, one per generator.
    Coord(Vec<CrowellCoord>),
}

/// Presentation of an Alexander-type module: one generator per arc, one
/// relation column per crossing, over `Λ_μ` (`varcount = μ`) or `Λ`
/// (`varcount = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub varcount: usize,
    pub mu: usize,
    /// Generator labels (arc ids).
    pub generators: Vec<String>,
    /// Component index per generator.
    pub components: Vec<usize>,
    /// `matrix[row][col]`, rows indexed like `generators`.
    pub matrix: Vec<Vec<IntLaurent>>,
    pub crowell: CrowellVector,
}

impl Presentation {
    pub fn rows(&self) -> usize {
        self.generators.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map(|r| r.len()).unwrap_or(0)
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == label)
    }

    pub fn render_json(&self) -> Value {
        let matrix: Vec<Vec<String>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|p| p.to_string()).collect())
            .collect();
        let crowell: Value = match &self.crowell {
            CrowellVector::Multivariate(v) => {
                json!(v.iter().map(|p| p.to_string()).collect::<Vec<_>>())
            }
            CrowellVector::Coord(v) => json!(v
                .iter()
                .map(|c| json!({"free": c.free.to_string(), "tors": c.tors}))
                .collect::<Vec<_>>()),
        };
        json!({
            "crowell": crowell,
            "generators": self.generators,
            "components": self.components,
            "matrix": matrix,
            "mu": self.mu,
            "varcount": self.varcount,
        })
    }
}

/// Build the multivariate presentation: for each crossing with roles
/// `(a_1, a_2, a_3)`, the column carries `1 - t_{κ(a_2)}` at the `a_1` row,
/// `t_{κ(a_1)}` at the `a_2` row and `-1` at the `a_3` row, coefficients
/// merging additively when the arcs coincide. The Crowell vector holds
/// `t_{κ(a)} - 1` per arc.
pub fn build_presentation(d: &LinkDiagram) -> Result<Presentation> {
    let violations = validate(d);
    if !violations.is_empty() {
        return Err(Error::InvalidDiagram(violations));
    }
    let mu = d.mu;
    let generators: Vec<String> = d.arcs.iter().map(|a| a.id.clone()).collect();
    let components: Vec<usize> = d.arcs.iter().map(|a| a.component).collect();
    let index: BTreeMap<&str, usize> =
        generators.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
    let mut matrix = vec![vec![IntLaurent::zero(mu); d.crossings.len()]; generators.len()];
    for (col, c) in d.crossings.iter().enumerate() {
        let (a1, a2, a3) = c.roles();
        let k1 = components[index[a1]];
        let k2 = components[index[a2]];
        let one = IntLaurent::one(mu);
        let coef_a1 = one.sub(&IntLaurent::var(k2, mu));
        let coef_a2 = IntLaurent::var(k1, mu);
        let coef_a3 = one.neg();
        for (arc, coef) in [(a1, coef_a1), (a2, coef_a2), (a3, coef_a3)] {
            let r = index[arc];
            matrix[r][col] = matrix[r][col].add(&coef);
        }
    }
    let crowell = CrowellVector::Multivariate(
        components
            .iter()
            .map(|&k| IntLaurent::var(k, mu).sub(&IntLaurent::one(mu)))
            .collect(),
    );
    let p = Presentation { varcount: mu, mu, generators, components, matrix, crowell };
    debug_assert!(check_crowell_compat(&p));
    Ok(p)
}

/// True iff every relation column is annihilated by the Crowell vector.
/// For coordinate-level presentations this checks the free coordinate sum
/// and, per component beyond the first, the augmentation sum of that
/// component's rows.
pub fn check_crowell_compat(p: &Presentation) -> bool {
    match &p.crowell {
        CrowellVector::Multivariate(phi) => {
            for col in 0..p.cols() {
                let mut acc = IntLaurent::zero(p.varcount);
                for row in 0..p.rows() {
                    acc = acc.add(&p.matrix[row][col].mul(&phi[row]));
                }
                if !acc.is_zero() {
                    return false;
                }
            }
            true
        }
        CrowellVector::Coord(coords) => {
            for col in 0..p.cols() {
                let mut free = IntLaurent::zero(1);
                let mut tors = vec![BigInt::zero(); p.mu.saturating_sub(1)];
                for row in 0..p.rows() {
                    let entry = &p.matrix[row][col];
                    free = free.add(&entry.mul(&coords[row].free));
                    let aug = entry.augmentation();
                    for (k, &tv) in coords[row].tors.iter().enumerate() {
                        tors[k] += &aug * BigInt::from(tv);
                    }
                }
                if !free.is_zero() || tors.iter().any(|x| !x.is_zero()) {
                    return false;
                }
            }
            true
        }
    }
}

/// Map every entry through `t_i ↦ t` and replace the Crowell vector by the
/// canonical coordinates: an arc of component `i` goes to free part 1,
/// torsion part the `i`-th basis vector (zero for component 1).
pub fn reduce_tau(p: &Presentation) -> Presentation {
    let matrix: Vec<Vec<IntLaurent>> = p
        .matrix
        .iter()
        .map(|row| row.iter().map(|e| e.substitute_tau()).collect())
        .collect();
    let coords = p
        .components
        .iter()
        .map(|&k| CrowellCoord::for_component(k, p.mu))
        .collect();
    Presentation {
        varcount: 1,
        mu: p.mu,
        generators: p.generators.clone(),
        components: p.components.clone(),
        matrix,
        crowell: CrowellVector::Coord(coords),
    }
}

/// A presentation specialized at all variables equal to -1: an integer
/// matrix plus the per-generator Crowell coordinates with torsion residues
/// mod 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuSpecialization {
    pub mu: usize,
    pub generators: Vec<String>,
    pub components: Vec<usize>,
    /// `matrix[row][col]`.
    pub matrix: Vec<Vec<BigInt>>,
    /// Free coordinate per generator (1 for arc generators).
    pub free: Vec<BigInt>,
    /// Torsion residues mod 2 per generator, length μ-1.
    pub tors: Vec<Vec<u8>>,
}

/// Evaluate a presentation at all variables equal to -1.
pub fn specialize_nu(p: &Presentation) -> NuSpecialization {
    let matrix: Vec<Vec<BigInt>> = p
        .matrix
        .iter()
        .map(|row| row.iter().map(|e| e.evaluate_nu()).collect())
        .collect();
    let (free, tors): (Vec<BigInt>, Vec<Vec<u8>>) = match &p.crowell {
        CrowellVector::Multivariate(_) => p
            .components
            .iter()
            .map(|&k| {
                let c = CrowellCoord::for_component(k, p.mu);
                (c.free.evaluate_nu(), c.tors.iter().map(|&t| (t.rem_euclid(2)) as u8).collect())
            })
            .unzip(),
        CrowellVector::Coord(coords) => coords
            .iter()
            .map(|c| {
                (
                    c.free.evaluate_nu(),
                    c.tors.iter().map(|&t| (t.rem_euclid(2)) as u8).collect::<Vec<u8>>(),
                )
            })
            .unzip(),
    };
    NuSpecialization {
        mu: p.mu,
        generators: p.generators.clone(),
        components: p.components.clone(),
        matrix,
        free,
        tors,
    }
}

/// Presentation of the difference submodule on generators
/// `δ_a = a - base`: every reduced relation column has coefficient sum
/// zero (a consequence of Crowell compatibility), so rewriting in the δ
/// basis just deletes the base row.
pub fn m0_presentation(p: &Presentation, base: &str) -> Result<Presentation> {
    assert_eq!(p.varcount, 1, "difference submodule is taken at the reduced level");
    let base_row = p
        .generator_index(base)
        .ok_or_else(|| Error::UnknownArc(base.to_string()))?;
    for col in 0..p.cols() {
        let mut sum = IntLaurent::zero(1);
        for row in 0..p.rows() {
            sum = sum.add(&p.matrix[row][col]);
        }
        if !sum.is_zero() {
            return Err(Error::Internal(format!(
                "column {} has nonzero coefficient sum; presentation is not Crowell compatible",
                col
            )));
        }
    }
    let mut generators = Vec::new();
    let mut components = Vec::new();
    let mut matrix = Vec::new();
    let mut coords = Vec::new();
    let base_comp = p.components[base_row];
    for row in 0..p.rows() {
        if row == base_row {
            continue;
        }
        generators.push(format!("{}-{}", p.generators[row], base));
        components.push(p.components[row]);
        matrix.push(p.matrix[row].clone());
        let a = CrowellCoord::for_component(p.components[row], p.mu);
        let b = CrowellCoord::for_component(base_comp, p.mu);
        coords.push(CrowellCoord {
            free: a.free.sub(&b.free),
            tors: a.tors.iter().zip(&b.tors).map(|(x, y)| x - y).collect(),
        });
    }
    Ok(Presentation {
        varcount: 1,
        mu: p.mu,
        generators,
        components,
        matrix,
        crowell: CrowellVector::Coord(coords),
    })
}

/// Shrink a presentation by Tietze moves: wherever an entry is a unit
/// (`±` monomial), clear its row by column operations and delete the
/// generator/relation pair. Column operations and pivot deletions leave
/// the module, its elementary ideals, and the Crowell data of the
/// surviving generators untouched. Zero columns are dropped at the end.
pub fn simplify(p: &Presentation) -> Presentation {
    let mut gens = p.generators.clone();
    let mut comps = p.components.clone();
    let mut matrix = p.matrix.clone();
    let mut crowell: Vec<Option<(IntLaurent, CrowellCoord)>> = match &p.crowell {
        CrowellVector::Multivariate(v) => v.iter().map(|x| Some((x.clone(), CrowellCoord { free: IntLaurent::zero(1), tors: vec![] }))).collect(),
        CrowellVector::Coord(v) => v
            .iter()
            .map(|c| Some((IntLaurent::zero(p.varcount), c.clone())))
            .collect(),
    };
    let is_multi = matches!(p.crowell, CrowellVector::Multivariate(_));
    loop {
        let rows = matrix.len();
        let cols = matrix.first().map(|r| r.len()).unwrap_or(0);
        if rows == 0 || cols == 0 {
            break;
        }
        // deterministic pivot: sparsest column first, then row-major
        let mut pivot: Option<(usize, usize, usize)> = None;
        for c in 0..cols {
            let nonzero = (0..rows).filter(|&r| !matrix[r][c].is_zero()).count();
            for r in 0..rows {
                if matrix[r][c].is_unit_monomial() {
                    let cand = (nonzero, r, c);
                    if pivot.map(|(n, pr, pc)| cand < (n, pr, pc)).unwrap_or(true) {
                        pivot = Some(cand);
                    }
                }
            }
        }
        let Some((_, pr, pc)) = pivot else { break };
        let u = matrix[pr][pc].clone();
        // u is ±t^e; its inverse is ±t^-e
        let inv_exp: Vec<i32> = u.terms().next().unwrap().0.iter().map(|e| -e).collect();
        let sign = u.terms().next().unwrap().1.clone();
        let u_inv = IntLaurent::monomial(inv_exp, sign);
        for c in 0..cols {
            if c == pc || matrix[pr][c].is_zero() {
                continue;
            }
            let factor = matrix[pr][c].mul(&u_inv);
            for r in 0..rows {
                let delta = factor.mul(&matrix[r][pc]);
                matrix[r][c] = matrix[r][c].sub(&delta);
            }
        }
        for row in matrix.iter_mut() {
            row.remove(pc);
        }
        matrix.remove(pr);
        gens.remove(pr);
        comps.remove(pr);
        crowell.remove(pr);
    }
    // drop all-zero relation columns
    let cols = matrix.first().map(|r| r.len()).unwrap_or(0);
    let keep: Vec<usize> =
        (0..cols).filter(|&c| matrix.iter().any(|row| !row[c].is_zero())).collect();
    let matrix: Vec<Vec<IntLaurent>> = matrix
        .iter()
        .map(|row| keep.iter().map(|&c| row[c].clone()).collect())
        .collect();
    let crowell = if is_multi {
        CrowellVector::Multivariate(crowell.into_iter().map(|x| x.unwrap().0).collect())
    } else {
        CrowellVector::Coord(crowell.into_iter().map(|x| x.unwrap().1).collect())
    };
    Presentation {
        varcount: p.varcount,
        mu: p.mu,
        generators: gens,
        components: comps,
        matrix,
        crowell,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::laurent::parse_laurent;

    fn col(p: &Presentation, c: usize) -> Vec<IntLaurent> {
        (0..p.rows()).map(|r| p.matrix[r][c].clone()).collect()
    }

    #[test]
    fn hopf_columns_match_displayed_relation() {
        let p = build_presentation(&fixtures::hopf()).unwrap();
        assert_eq!(p.rows(), 2);
        assert_eq!(p.cols(), 2);
        // both columns reduce to (1 - t2) a - (1 - t1) b
        let expect = vec![
            parse_laurent("1 - t2", 2).unwrap(),
            parse_laurent("t1 - 1", 2).unwrap(),
        ];
        let c1 = col(&p, 0);
        let c2 = col(&p, 1);
        assert_eq!(c1, expect);
        assert_eq!(c2, vec![expect[0].neg(), expect[1].neg()]);
    }

    #[test]
    fn trefoil_unknot_columns_match() {
        let p = build_presentation(&fixtures::trefoil_unknot()).unwrap();
        assert_eq!((p.rows(), p.cols()), (4, 3));
        // first crossing: (1 - t1) c + t1 b - a, and arc d appears nowhere
        let c1 = col(&p, 0);
        assert_eq!(c1[0], parse_laurent("-1", 2).unwrap());
        assert_eq!(c1[1], parse_laurent("t1", 2).unwrap());
        assert_eq!(c1[2], parse_laurent("1 - t1", 2).unwrap());
        assert!(c1[3].is_zero());
        let d_row = p.generator_index("d").unwrap();
        assert!((0..p.cols()).all(|c| p.matrix[d_row][c].is_zero()));
    }

    #[test]
    fn zero_crossing_unknot_presentation() {
        let p = build_presentation(&fixtures::unknot()).unwrap();
        assert_eq!((p.rows(), p.cols()), (1, 0));
    }

    #[test]
    fn crowell_compat_on_corpus_and_corruption() {
        for f in fixtures::corpus() {
            let p = build_presentation(&f.diagram).unwrap();
            assert!(check_crowell_compat(&p), "fixture {}", f.name);
            let red = reduce_tau(&p);
            assert!(check_crowell_compat(&red), "reduced fixture {}", f.name);
        }
        let mut p = build_presentation(&fixtures::hopf()).unwrap();
        p.matrix[0][0] = p.matrix[0][0].neg();
        assert!(!check_crowell_compat(&p));
    }

    #[test]
    fn reduce_tau_hopf() {
        let p = reduce_tau(&build_presentation(&fixtures::hopf()).unwrap());
        let expect = vec![
            parse_laurent("1 - t", 1).unwrap(),
            parse_laurent("t - 1", 1).unwrap(),
        ];
        assert_eq!(col(&p, 0), expect);
        match &p.crowell {
            CrowellVector::Coord(coords) => {
                assert_eq!(coords[0], CrowellCoord::for_component(1, 2));
                assert_eq!(coords[0].tors, vec![0]);
                assert_eq!(coords[1].tors, vec![1]);
            }
            _ => panic!("expected coordinates"),
        }
    }

    #[test]
    fn nu_matrix_of_hopf() {
        let nu = specialize_nu(&build_presentation(&fixtures::hopf()).unwrap());
        assert_eq!(nu.matrix[0][0], BigInt::from(2));
        assert_eq!(nu.matrix[1][0], BigInt::from(-2));
        assert_eq!(nu.free, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(nu.tors, vec![vec![0], vec![1]]);
    }

    #[test]
    fn nu_commutes_with_tau() {
        for f in fixtures::corpus() {
            let p = build_presentation(&f.diagram).unwrap();
            let via_multi = specialize_nu(&p);
            let via_tau = specialize_nu(&reduce_tau(&p));
            assert_eq!(via_multi.matrix, via_tau.matrix, "fixture {}", f.name);
            assert_eq!(via_multi.tors, via_tau.tors, "fixture {}", f.name);
        }
    }

    #[test]
    fn m0_of_hopf_is_one_relation() {
        let red = reduce_tau(&build_presentation(&fixtures::hopf()).unwrap());
        let m0 = m0_presentation(&red, "a").unwrap();
        assert_eq!(m0.generators, vec!["b-a"]);
        assert_eq!(m0.cols(), 2);
        let e = &m0.matrix[0][0];
        assert!(
            *e == parse_laurent("t - 1", 1).unwrap() || *e == parse_laurent("1 - t", 1).unwrap()
        );
        assert!(m0_presentation(&red, "zz").is_err());
    }

    #[test]
    fn m0_of_unknot_is_zero_module() {
        let red = reduce_tau(&build_presentation(&fixtures::unknot()).unwrap());
        let m0 = m0_presentation(&red, "c").unwrap();
        assert_eq!(m0.rows(), 0);
    }

    #[test]
    fn simplify_forces_w_equal_x_on_l_prime() {
        let red = reduce_tau(&build_presentation(&fixtures::l_prime()).unwrap());
        let s = simplify(&red);
        assert!(check_crowell_compat(&s));
        // the relation t w = t x eliminates one generator of component 2
        assert!(s.rows() < red.rows());
        assert!(!s.generators.iter().any(|g| g == "w") || !s.generators.iter().any(|g| g == "x"));
    }

    #[test]
    fn simplify_preserves_crowell_compat_on_corpus() {
        for f in fixtures::corpus() {
            let p = build_presentation(&f.diagram).unwrap();
            let s = simplify(&p);
            assert!(check_crowell_compat(&s), "fixture {}", f.name);
            let rs = simplify(&reduce_tau(&p));
            assert!(check_crowell_compat(&rs), "reduced fixture {}", f.name);
        }
    }
}
