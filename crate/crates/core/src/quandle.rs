//! Finite quandle verification (axioms, mediality, semiregularity and the
//! displacement group), affine coloring counts of diagrams, orbit counts,
//! and the displacement-module computation.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::{Integer, One, Zero};
use serde_json::{json, Value};

use crate::alexander::{m0_presentation, Presentation};
use crate::diagram::{validate, LinkDiagram};
use crate::error::{Error, Result};
use crate::laurent::{IntLaurent, RatLaurent};
use crate::modulealg::{smith_integer, IntMatrix, RatSmithResult};

/// Finite quandle as an operation table: `table[x][y] = x ▷ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyQuandle {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

impl CayleyQuandle {
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn render_json(&self) -> Value {
        json!(self.table)
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) || rows.iter().flatten().any(|&v| v >= n) {
            return Err(Error::Usage("Cayley table must be square with entries in range".into()));
        }
        Ok(CayleyQuandle { size: n, table: rows })
    }
}

/// Affine (standard Alexander) quandle target `Z_n` with `t` acting as a
/// unit `u`: `x ▷ y = u·x + (1-u)·y mod n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct AffineQuandleSpec {
    pub modulus: u64,
    pub unit: u64,
}

impl AffineQuandleSpec {
    pub fn new(modulus: u64, unit: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Usage("modulus must be positive".into()));
        }
        if gcd_u64(unit % modulus, modulus) != 1 && modulus != 1 {
            return Err(Error::Usage(format!("{} is not a unit mod {}", unit, modulus)));
        }
        Ok(AffineQuandleSpec { modulus, unit })
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub fn affine_quandle(spec: &AffineQuandleSpec) -> CayleyQuandle {
    let n = spec.modulus as usize;
    let u = (spec.unit % spec.modulus) as i64;
    let table = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let v = u * x as i64 + (1 - u) * y as i64;
                    v.rem_euclid(spec.modulus as i64) as usize
                })
                .collect()
        })
        .collect();
    CayleyQuandle { size: n, table }
}

/// Check idempotence, column bijectivity, and right self-distributivity;
/// each violation names its witness.
pub fn check_quandle_axioms(q: &CayleyQuandle) -> Vec<String> {
    let n = q.size;
    let mut out = Vec::new();
    for x in 0..n {
        if q.op(x, x) != x {
            out.push(format!("idempotence fails at {}", x));
        }
    }
    for y in 0..n {
        let mut seen = vec![false; n];
        for x in 0..n {
            seen[q.op(x, y)] = true;
        }
        if seen.iter().any(|&s| !s) {
            out.push(format!("translation by {} is not a permutation", y));
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if q.op(q.op(x, y), z) != q.op(q.op(x, z), q.op(y, z)) {
                    out.push(format!("self-distributivity fails at ({}, {}, {})", x, y, z));
                    if out.len() > 16 {
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// Quantifier sweep over all quadruples.
pub fn check_medial(q: &CayleyQuandle) -> bool {
    let n = q.size;
    for w in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if q.op(q.op(w, x), q.op(y, z)) != q.op(q.op(w, y), q.op(x, z)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The displacement group as an explicit permutation group: the closure of
/// the elementary displacements `β_y β_z^{-1}` under composition.
pub fn displacement_group(q: &CayleyQuandle) -> Vec<Vec<usize>> {
    let n = q.size;
    let mut translations = Vec::with_capacity(n);
    let mut inverses = Vec::with_capacity(n);
    for y in 0..n {
        let mut beta = vec![0; n];
        for x in 0..n {
            beta[x] = q.op(x, y);
        }
        let mut inv = vec![0; n];
        for x in 0..n {
            inv[beta[x]] = x;
        }
        translations.push(beta);
        inverses.push(inv);
    }
    let compose = |f: &[usize], g: &[usize]| -> Vec<usize> { g.iter().map(|&x| f[x]).collect() };
    let mut gens: BTreeSet<Vec<usize>> = BTreeSet::new();
    for y in 0..n {
        for z in 0..n {
            gens.insert(compose(&translations[y], &inverses[z]));
        }
    }
    let mut group: BTreeSet<Vec<usize>> = gens.clone();
    let mut frontier: Vec<Vec<usize>> = gens.iter().cloned().collect();
    while let Some(f) = frontier.pop() {
        for g in &gens {
            let h = compose(&f, g);
            if group.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    group.into_iter().collect()
}

/// Semiregularity: only the identity displacement has a fixed point.
pub fn check_semiregular(q: &CayleyQuandle) -> bool {
    let identity: Vec<usize> = (0..q.size).collect();
    displacement_group(q)
        .into_iter()
        .all(|d| d == identity || d.iter().enumerate().all(|(x, &fx)| fx != x))
}

pub fn dis_group_order(q: &CayleyQuandle) -> usize {
    displacement_group(q).len()
}

/// The coloring system of a diagram for an affine target: one congruence
/// `u·a_2 + (1-u)·a_1 - a_3 ≡ 0 (mod n)` per crossing, with the roles
/// derived from the writhe. Rows are crossings, columns arcs.
pub fn coloring_matrix(d: &LinkDiagram, spec: &AffineQuandleSpec) -> IntMatrix {
    let arc_index = |id: &str| d.arcs.iter().position(|a| a.id == id).unwrap();
    let u = BigInt::from(spec.unit);
    let mut m = vec![vec![BigInt::zero(); d.arcs.len()]; d.crossings.len()];
    for (row, c) in d.crossings.iter().enumerate() {
        let (a1, a2, a3) = c.roles();
        m[row][arc_index(a1)] += BigInt::one() - &u;
        m[row][arc_index(a2)] += &u;
        m[row][arc_index(a3)] -= BigInt::one();
    }
    m
}

/// Exact coloring count via the integer Smith form of the coloring system.
pub fn count_colorings(d: &LinkDiagram, spec: &AffineQuandleSpec) -> Result<BigInt> {
    let violations = validate(d);
    if !violations.is_empty() {
        return Err(Error::InvalidDiagram(violations));
    }
    let m = coloring_matrix(d, spec);
    let n = BigInt::from(spec.modulus);
    let diag = smith_integer(&m).diag;
    let mut count = BigInt::one();
    for dentry in &diag {
        count *= dentry.gcd(&n);
    }
    let free = d.arcs.len() - diag.len();
    for _ in 0..free {
        count *= &n;
    }
    Ok(count)
}

/// Brute-force coloring count by enumerating all assignments; guarded by
/// the `n^arcs` budget.
pub fn count_colorings_brute(
    d: &LinkDiagram,
    spec: &AffineQuandleSpec,
    budget: u64,
) -> Result<BigInt> {
    let n = spec.modulus;
    let arcs = d.arcs.len();
    let total = (n as f64).powi(arcs as i32);
    if total > budget as f64 {
        return Err(Error::CapExceeded(format!(
            "brute-force space {}^{} exceeds budget {}",
            n, arcs, budget
        )));
    }
    let m: Vec<Vec<i64>> = coloring_matrix(d, spec)
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| c.mod_floor(&BigInt::from(n)).to_string().parse::<i64>().unwrap())
                .collect()
        })
        .collect();
    let nn = n as i64;
    let mut assignment = vec![0i64; arcs];
    let mut count = BigInt::zero();
    loop {
        let ok = m.iter().all(|row| {
            row.iter().zip(&assignment).map(|(c, x)| c * x).sum::<i64>() % nn == 0
        });
        if ok {
            count += 1;
        }
        let mut carry = 0;
        while carry < arcs {
            assignment[carry] += 1;
            if assignment[carry] < nn {
                break;
            }
            assignment[carry] = 0;
            carry += 1;
        }
        if carry == arcs || arcs == 0 {
            break;
        }
    }
    Ok(count)
}

/// Coloring count through a (possibly simplified) reduced presentation:
/// evaluating the relation matrix at `t = u` over `Z_n` presents the same
/// solution set because unit-pivot eliminations stay invertible mod n.
pub fn count_colorings_presentation(p: &Presentation, spec: &AffineQuandleSpec) -> Result<BigInt> {
    assert_eq!(p.varcount, 1);
    let n = BigInt::from(spec.modulus);
    let point = [spec.unit as i64];
    let mut m: IntMatrix = Vec::with_capacity(p.rows());
    for row in &p.matrix {
        let mut out = Vec::with_capacity(row.len());
        for e in row {
            out.push(BigInt::from(e.evaluate_mod(&point, spec.modulus)?));
        }
        m.push(out);
    }
    let diag = smith_integer(&m).diag;
    let mut count = BigInt::one();
    for d in &diag {
        count *= d.gcd(&n);
    }
    for _ in 0..p.rows().saturating_sub(diag.len()) {
        count *= &n;
    }
    Ok(count)
}

/// Orbit count of the fundamental medial quandle: the component count,
/// verified independently by identifying the two under arcs at every
/// crossing and counting the resulting classes.
pub fn orbit_count(d: &LinkDiagram) -> Result<usize> {
    let violations = validate(d);
    if !violations.is_empty() {
        return Err(Error::InvalidDiagram(violations));
    }
    let n = d.arcs.len();
    let mut dsu: Vec<usize> = (0..n).collect();
    fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
        if dsu[x] != x {
            let r = find(dsu, dsu[x]);
            dsu[x] = r;
        }
        dsu[x]
    }
    let idx = |id: &str| d.arcs.iter().position(|a| a.id == id).unwrap();
    for c in &d.crossings {
        let (a, b) = (idx(&c.under_in), idx(&c.under_out));
        let (ra, rb) = (find(&mut dsu, a), find(&mut dsu, b));
        dsu[ra] = rb;
    }
    let classes: BTreeSet<usize> = (0..n).map(|x| find(&mut dsu, x)).collect();
    if classes.len() != d.mu {
        return Err(Error::Internal(format!(
            "orbit sweep found {} classes but mu = {} (validation gap)",
            classes.len(),
            d.mu
        )));
    }
    Ok(d.mu)
}

/// Presentation of the displacement module upper bound: generators `d_a`
/// per arc, one column `(1-t)·d_{a_1} + t·d_{a_2} - d_{a_3}` per crossing,
/// plus the column that kills the base generator.
#[derive(Clone, Debug)]
pub struct DisplacementPresentation {
    pub generators: Vec<String>,
    pub base: String,
    /// `matrix[row][col]`; the last column is the base-killing relation.
    pub matrix: Vec<Vec<IntLaurent>>,
}

pub fn displacement_presentation(d: &LinkDiagram, base: &str) -> Result<DisplacementPresentation> {
    let violations = validate(d);
    if !violations.is_empty() {
        return Err(Error::InvalidDiagram(violations));
    }
    d.arc(base)?;
    let generators: Vec<String> = d.arcs.iter().map(|a| format!("d({})", a.id)).collect();
    let idx = |id: &str| d.arcs.iter().position(|a| a.id == id).unwrap();
    let one = IntLaurent::one(1);
    let t = IntLaurent::var(1, 1);
    let mut matrix = vec![vec![IntLaurent::zero(1); d.crossings.len() + 1]; d.arcs.len()];
    for (col, c) in d.crossings.iter().enumerate() {
        let (a1, a2, a3) = c.roles();
        matrix[idx(a1)][col] = matrix[idx(a1)][col].add(&one.sub(&t));
        matrix[idx(a2)][col] = matrix[idx(a2)][col].add(&t);
        matrix[idx(a3)][col] = matrix[idx(a3)][col].sub(&one);
    }
    let base_col = d.crossings.len();
    matrix[idx(base)][base_col] = one;
    Ok(DisplacementPresentation { generators, base: base.to_string(), matrix })
}

/// Certified rational invariant factors of the displacement module,
/// computed as `(1-t)·M_0`: take the rational Smith form of the difference
/// submodule and divide each cyclic factor by its `(t-1)` part
/// (multiplication by `1-t` is injective on free summands, kills
/// `Λ/(t-1)`, and divides one `t-1` out of everything else).
pub fn displacement_rational_factors(reduced: &Presentation, base: &str) -> Result<RatSmithResult> {
    let m0 = m0_presentation(reduced, base)?;
    let smith = crate::modulealg::rational_factors(&m0);
    let t_minus_1 = RatLaurent::from_int_laurent(
        &IntLaurent::var(1, 1).sub(&IntLaurent::one(1)),
    );
    let mut factors = Vec::new();
    for f in smith.factors {
        let out = if t_minus_1.divides(&f) {
            let (q, _) = f.divmod(&t_minus_1)?;
            q.normalize_monic()
        } else {
            f
        };
        if !out.is_unit() && !out.is_zero() {
            factors.push(out);
        }
    }
    Ok(RatSmithResult { factors, rank: smith.rank })
}
