//! Matrix normal forms and the invariants derived from them: integer Smith
//! normal form with transform tracking, the rational univariate-Laurent
//! Smith form, elementary-ideal minors and Alexander polynomials, ideal
//! evaluation fingerprints, and the ν fingerprint with its torsion-image
//! set.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use serde_json::{json, Value};

use crate::alexander::{NuSpecialization, Presentation};
use crate::error::{Error, Result};
use crate::laurent::{gcd_univariate, IntLaurent, RatLaurent};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Integer Smith normal form `U·A·V = D` with unimodular transforms and a
/// nonnegative divisibility-chain diagonal. The pivot policy (smallest
/// nonzero absolute value, ties row-major) makes the reduction
/// deterministic.
#[derive(Clone, Debug)]
pub struct SmithResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    /// The `min(rows, cols)` diagonal entries, zeros included.
    pub diag: Vec<BigInt>,
}

pub fn smith_integer(a: &IntMatrix) -> SmithResult {
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut m = a.clone();
    let mut u = identity(rows);
    let mut u_inv = identity(rows);
    let mut v = identity(cols);

    let row_sub = |m: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize, r: usize, q: &BigInt| {
        for c in 0..cols {
            let t = &m[r][c] * q;
            m[i][c] -= t;
        }
        for c in 0..rows {
            let t = &u[r][c] * q;
            u[i][c] -= t;
        }
        for j in 0..rows {
            let t = &u_inv[j][i] * q;
            u_inv[j][r] += t;
        }
    };
    let col_sub = |m: &mut IntMatrix, v: &mut IntMatrix, j: usize, c: usize, q: &BigInt| {
        for r in 0..rows {
            let t = &m[r][c] * q;
            m[r][j] -= t;
        }
        for r in 0..cols {
            let t = &v[r][c] * q;
            v[r][j] -= t;
        }
    };

    let mut r = 0;
    while r < rows && r < cols {
        // pivot: smallest nonzero absolute value, ties row-major
        let mut pivot: Option<(BigInt, usize, usize)> = None;
        for i in r..rows {
            for j in r..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                let a = m[i][j].abs();
                if pivot.as_ref().map(|(p, _, _)| a < *p).unwrap_or(true) {
                    pivot = Some((a, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = pivot else { break };
        if pi != r {
            m.swap(pi, r);
            u.swap(pi, r);
            for row in u_inv.iter_mut() {
                row.swap(pi, r);
            }
        }
        if pj != r {
            for row in m.iter_mut() {
                row.swap(pj, r);
            }
            for row in v.iter_mut() {
                row.swap(pj, r);
            }
        }
        let mut dirty = false;
        for i in r + 1..rows {
            if m[i][r].is_zero() {
                continue;
            }
            let q = &m[i][r] / &m[r][r];
            if !q.is_zero() {
                row_sub(&mut m, &mut u, &mut u_inv, i, r, &q);
            }
            if !m[i][r].is_zero() {
                dirty = true;
            }
        }
        for j in r + 1..cols {
            if m[r][j].is_zero() {
                continue;
            }
            let q = &m[r][j] / &m[r][r];
            if !q.is_zero() {
                col_sub(&mut m, &mut v, j, r, &q);
            }
            if !m[r][j].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue; // smaller residues exist; re-select the pivot
        }
        // enforce divisibility of the remaining block by the pivot
        let mut fixed = true;
        'outer: for i in r + 1..rows {
            for j in r + 1..cols {
                if !(&m[i][j] % &m[r][r]).is_zero() {
                    let one = BigInt::one();
                    // row_r += row_i
                    for c in 0..cols {
                        let t = m[i][c].clone();
                        m[r][c] += t;
                    }
                    for c in 0..rows {
                        let t = u[i][c].clone();
                        u[r][c] += t;
                    }
                    for jj in 0..rows {
                        let t = &u_inv[jj][r] * &one;
                        u_inv[jj][i] -= t;
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        if m[r][r].is_negative() {
            for c in 0..cols {
                m[r][c] = -m[r][c].clone();
            }
            for c in 0..rows {
                u[r][c] = -u[r][c].clone();
            }
            for j in 0..rows {
                u_inv[j][r] = -u_inv[j][r].clone();
            }
        }
        r += 1;
    }
    let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| m[i][i].clone()).collect();
    SmithResult { d: m, u, u_inv, v, diag }
}

/// Free rank and torsion coefficients of the abelian group presented by an
/// integer matrix on `gens` generators (relation columns).
pub fn abelian_invariants(a: &IntMatrix, gens: usize) -> (usize, Vec<BigInt>) {
    assert_eq!(a.len(), gens, "matrix must have one row per generator");
    let s = smith_integer(a);
    let nonzero = s.diag.iter().filter(|d| !d.is_zero()).count();
    let torsion: Vec<BigInt> =
        s.diag.iter().filter(|d| !d.is_zero() && !d.abs().is_one()).cloned().collect();
    (gens - nonzero, torsion)
}

/// Invariant factors of a module over the rational Laurent ring: monic
/// polynomials with nonzero constant term, unit factors dropped, plus the
/// free rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatSmithResult {
    pub factors: Vec<RatLaurent>,
    pub rank: usize,
}

impl RatSmithResult {
    pub fn render_json(&self) -> Value {
        json!({
            "factors": self.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "rank": self.rank,
        })
    }

    pub fn zero_module(&self) -> bool {
        self.rank == 0 && self.factors.is_empty()
    }
}

/// Smith form over the rational univariate Laurent ring by Euclidean
/// elimination, pivoting on the entry with the narrowest exponent window.
pub fn smith_rational_univariate(a: &[Vec<RatLaurent>], gens: usize) -> RatSmithResult {
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    assert_eq!(rows, gens, "matrix must have one row per generator");
    let mut m = a.to_vec();
    let mut r = 0;
    while r < rows && r < cols {
        let mut pivot: Option<(i32, usize, usize)> = None;
        for i in r..rows {
            for j in r..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                let s = m[i][j].span();
                if pivot.as_ref().map(|(p, _, _)| s < *p).unwrap_or(true) {
                    pivot = Some((s, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = pivot else { break };
        m.swap(pi, r);
        for row in m.iter_mut() {
            row.swap(pj, r);
        }
        let mut dirty = false;
        for i in r + 1..rows {
            if m[i][r].is_zero() {
                continue;
            }
            let (q, rem) = m[i][r].divmod(&m[r][r]).expect("nonzero pivot");
            if !q.is_zero() {
                for c in 0..cols {
                    let t = m[r][c].mul(&q);
                    m[i][c] = m[i][c].sub(&t);
                }
            }
            if !rem.is_zero() {
                dirty = true;
            }
        }
        for j in r + 1..cols {
            if m[r][j].is_zero() {
                continue;
            }
            let (q, rem) = m[r][j].divmod(&m[r][r]).expect("nonzero pivot");
            if !q.is_zero() {
                for i in 0..rows {
                    let t = m[i][r].mul(&q);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
            if !rem.is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        let mut fixed = true;
        'outer: for i in r + 1..rows {
            for j in r + 1..cols {
                if !m[r][r].divides(&m[i][j]) {
                    for c in 0..cols {
                        let t = m[i][c].clone();
                        m[r][c] = m[r][c].add(&t);
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        r += 1;
    }
    let mut nonzero = 0;
    let mut factors = Vec::new();
    for i in 0..rows.min(cols) {
        if m[i][i].is_zero() {
            continue;
        }
        nonzero += 1;
        let f = m[i][i].normalize_monic();
        if !f.is_unit() {
            factors.push(f);
        }
    }
    RatSmithResult { factors, rank: gens - nonzero }
}

/// Convert a presentation's matrix to rational entries.
pub fn presentation_to_rational(p: &Presentation) -> Vec<Vec<RatLaurent>> {
    p.matrix
        .iter()
        .map(|row| row.iter().map(RatLaurent::from_int_laurent).collect())
        .collect()
}

/// Rational invariant factors of the module a reduced presentation
/// presents.
pub fn rational_factors(p: &Presentation) -> RatSmithResult {
    assert_eq!(p.varcount, 1);
    smith_rational_univariate(&presentation_to_rational(p), p.rows())
}

/// Caps for symbolic minor enumeration.
#[derive(Clone, Copy, Debug)]
pub struct MinorCaps {
    pub max_rows: usize,
    pub max_minor: usize,
}

impl Default for MinorCaps {
    fn default() -> Self {
        MinorCaps { max_rows: 14, max_minor: 10 }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Fraction-free determinant of a square matrix of Laurent polynomials.
/// Columns are first scaled by unit monomials so every entry is an ordinary
/// polynomial (a unit-monomial change that the caller must account for, or
/// accept up-to-unit output; elementary ideals do).
pub fn det_laurent(mat: &[Vec<IntLaurent>]) -> IntLaurent {
    let n = mat.len();
    if n == 0 {
        return IntLaurent::one(1);
    }
    let varcount = mat[0][0].varcount();
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut m = mat.to_vec();
    // clear negative exponents columnwise; unit column scalings only
    for c in 0..n {
        let mut mins = vec![0i32; varcount];
        let mut any = false;
        for r in 0..n {
            for (e, _) in m[r][c].terms() {
                for (i, &x) in e.iter().enumerate() {
                    if !any || x < mins[i] {
                        mins[i] = mins[i].min(x);
                    }
                }
                any = true;
            }
        }
        let shift: Vec<i32> = mins.iter().map(|&x| if x < 0 { -x } else { 0 }).collect();
        if shift.iter().any(|&x| x != 0) {
            for r in 0..n {
                m[r][c] = m[r][c].shift(&shift);
            }
        }
    }
    let mut sign = false;
    let mut prev = IntLaurent::one(varcount);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return IntLaurent::zero(varcount),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        for i in k + 1..n {
            m[i][k] = IntLaurent::zero(varcount);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// All `(g-k) x (g-k)` minors of the relation matrix, unnormalized, in
/// deterministic (lexicographic row-set, then column-set) order. By the
/// usual convention the empty minor is 1 (`E_k` is the full ring for
/// `k >= g`) and an oversized minor request yields the zero ideal.
pub fn elementary_ideal_generators(
    p: &Presentation,
    k: usize,
    caps: &MinorCaps,
) -> Result<Vec<IntLaurent>> {
    let g = p.rows();
    if k > g {
        return Err(Error::IndexOutOfRange { k, what: "elementary ideal", max: g });
    }
    let m = g - k;
    if m == 0 {
        return Ok(vec![IntLaurent::one(p.varcount)]);
    }
    if m > p.cols() {
        return Ok(vec![]);
    }
    if g > caps.max_rows {
        return Err(Error::CapExceeded(format!(
            "presentation has {} generators (cap {})",
            g, caps.max_rows
        )));
    }
    if m > caps.max_minor {
        return Err(Error::CapExceeded(format!("minor size {} (cap {})", m, caps.max_minor)));
    }
    let mut out = Vec::new();
    for rows in combinations(g, m) {
        for cols in combinations(p.cols(), m) {
            let sub: Vec<Vec<IntLaurent>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| p.matrix[r][c].clone()).collect())
                .collect();
            out.push(det_laurent(&sub));
        }
    }
    Ok(out)
}

/// `Δ_k`: the normalized gcd of the k-th elementary ideal's minors of a
/// one-variable presentation; 0 when the ideal is zero.
pub fn alexander_poly(p: &Presentation, k: usize, caps: &MinorCaps) -> Result<IntLaurent> {
    assert_eq!(p.varcount, 1, "alexander polynomials are taken at the reduced level");
    let gens = elementary_ideal_generators(p, k, caps)?;
    let mut acc = IntLaurent::zero(1);
    for g in gens {
        acc = gcd_univariate(&acc, &g);
        if !acc.is_zero() && acc.is_unit_monomial() {
            return Ok(IntLaurent::one(1));
        }
    }
    Ok(acc.normalize_unit())
}

/// Deterministic evaluation-point schedule: all tuples over
/// `{1, 3, 5, -3}` of length `mu` in lexicographic order, capped.
pub fn point_schedule(mu: usize, cap: usize) -> Vec<Vec<i64>> {
    const BASE: [i64; 4] = [1, 3, 5, -3];
    let mut out = vec![vec![]];
    for _ in 0..mu {
        let mut next = Vec::new();
        for prefix in &out {
            for &b in BASE.iter() {
                let mut p = prefix.clone();
                p.push(b);
                next.push(p);
                if next.len() >= cap && prefix.len() + 1 == mu {
                    break;
                }
            }
        }
        out = next;
        if out.len() > cap {
            out.truncate(cap);
        }
    }
    out
}

/// Remove every prime factor shared with the point coordinates; evaluation
/// lands in the localization where those coordinates are units, so equal
/// ideals keep equal values.
fn strip_point_primes(mut v: BigInt, point: &[i64]) -> BigInt {
    if v.is_zero() {
        return v;
    }
    v = v.abs();
    let p: BigInt = point.iter().map(|&x| BigInt::from(x.abs().max(1))).product();
    if p.is_one() {
        return v;
    }
    loop {
        let g = v.gcd(&p);
        if g.is_one() {
            return v;
        }
        v /= g;
    }
}

/// Evaluation fingerprint of an ideal given by explicit generators: the
/// gcd of the generators' values at every scheduled point (unit-shifted so
/// values are integers, with point primes stripped).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFingerprint {
    pub k: usize,
    pub points: Vec<Vec<i64>>,
    pub values: Vec<BigInt>,
}

impl IdealFingerprint {
    pub fn render_json(&self) -> Value {
        json!({
            "k": self.k,
            "points": self.points,
            "values": self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })
    }
}

fn eval_nonneg(p: &IntLaurent, point: &[i64]) -> BigInt {
    let mut acc = BigInt::zero();
    for (e, c) in p.terms() {
        debug_assert!(e.iter().all(|&x| x >= 0));
        let mut term = c.clone();
        for (&x, &k) in point.iter().zip(e) {
            for _ in 0..k {
                term *= BigInt::from(x);
            }
        }
        acc += term;
    }
    acc
}

fn eval_at_integer_point(p: &IntLaurent, point: &[i64]) -> BigInt {
    // shift to nonnegative exponents first; a unit multiple is irrelevant
    // for a standalone ideal generator after point primes are stripped
    let mut mins = vec![0i32; p.varcount()];
    for (e, _) in p.terms() {
        for (i, &x) in e.iter().enumerate() {
            mins[i] = mins[i].min(x);
        }
    }
    let shift: Vec<i32> = mins.iter().map(|&x| -x.min(0)).collect();
    eval_nonneg(&p.shift(&shift), point)
}

pub fn ideal_evaluation_fingerprint(
    gens: &[IntLaurent],
    mu: usize,
    k: usize,
    point_cap: usize,
) -> IdealFingerprint {
    let points = point_schedule(mu, point_cap);
    let values = points
        .iter()
        .map(|pt| {
            let mut acc = BigInt::zero();
            for g in gens {
                let v = strip_point_primes(eval_at_integer_point(g, pt), pt);
                acc = acc.gcd(&v);
                if acc.is_one() {
                    break;
                }
            }
            acc
        })
        .collect();
    IdealFingerprint { k, points, values }
}

/// Evaluation fingerprints for a whole range of elementary ideals at once:
/// per point, one integer Smith reduction of the evaluated matrix gives the
/// gcd of all m-minors as the product of the first m invariant factors.
/// Columns are first rescaled by unit monomials so that entries evaluate to
/// integers; a relation column scaled by a unit presents the same module,
/// and the per-minor unit discrepancies disappear with the stripped point
/// primes.
pub fn presentation_ideal_fingerprints(
    p: &Presentation,
    k_max: usize,
    point_cap: usize,
) -> Vec<IdealFingerprint> {
    let g = p.rows();
    let vars = p.varcount;
    let mut matrix = p.matrix.clone();
    for c in 0..p.cols() {
        let mut mins = vec![0i32; vars];
        for row in matrix.iter() {
            for (e, _) in row[c].terms() {
                for (i, &x) in e.iter().enumerate() {
                    mins[i] = mins[i].min(x);
                }
            }
        }
        let shift: Vec<i32> = mins.iter().map(|&x| -x.min(0)).collect();
        if shift.iter().any(|&x| x != 0) {
            for row in matrix.iter_mut() {
                row[c] = row[c].shift(&shift);
            }
        }
    }
    let points = point_schedule(p.mu, point_cap);
    let mut values: Vec<Vec<BigInt>> = vec![Vec::with_capacity(points.len()); k_max + 1];
    for pt in &points {
        let full_point: Vec<i64> = if p.varcount == p.mu {
            pt.clone()
        } else {
            // reduced presentation: a single variable evaluated at the
            // first coordinate
            vec![pt[0]]
        };
        let m: IntMatrix = matrix
            .iter()
            .map(|row| row.iter().map(|e| eval_nonneg(e, &full_point)).collect())
            .collect();
        let diag = smith_integer(&m).diag;
        for k in 0..=k_max {
            let need = g.saturating_sub(k);
            let v = if k >= g {
                BigInt::one()
            } else if need > diag.len() {
                BigInt::zero()
            } else {
                let mut prod = BigInt::one();
                for d in diag.iter().take(need) {
                    prod *= d;
                }
                strip_point_primes(prod, pt)
            };
            values[k].push(v);
        }
    }
    (0..=k_max)
        .map(|k| IdealFingerprint { k, points: points.clone(), values: values[k].clone() })
        .collect()
}

/// Canonical invariants of the ν-specialized module: the free rank, the
/// torsion coefficients, and the set of Crowell images of every
/// finite-order element (vectors over Z_2, first coordinate provably
/// zero and therefore omitted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuFingerprint {
    pub mu: usize,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    pub torsion_image: BTreeSet<Vec<u8>>,
    pub truncated: bool,
}

impl NuFingerprint {
    pub fn render_json(&self) -> Value {
        json!({
            "mu": self.mu,
            "rank": self.rank,
            "torsion": self.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "torsion_image": self.torsion_image.iter().cloned().collect::<Vec<_>>(),
            "truncated": self.truncated,
        })
    }
}

/// Compute the ν fingerprint of a specialized presentation. The Smith
/// transforms rebase the generators; torsion generators are the new basis
/// elements with diagonal entry > 1 and the whole (finite) torsion
/// subgroup is enumerated up to `enumeration_cap` elements.
pub fn nu_fingerprint(nu: &NuSpecialization, enumeration_cap: u64) -> Result<NuFingerprint> {
    let gens = nu.generators.len();
    let tors_len = nu.mu.saturating_sub(1);
    let s = smith_integer(&nu.matrix);
    let nonzero = s.diag.iter().filter(|d| !d.is_zero()).count();
    let rank = gens - nonzero;
    let torsion: Vec<BigInt> =
        s.diag.iter().filter(|d| !d.is_zero() && !d.abs().is_one()).cloned().collect();

    // Crowell coordinates of the rebased generators: new generator i is
    // the combination of old generators given by column i of U^{-1}.
    let mut new_free = vec![BigInt::zero(); gens];
    let mut new_tors = vec![vec![0u8; tors_len]; gens];
    for i in 0..gens {
        for j in 0..gens {
            let c = &s.u_inv[j][i];
            new_free[i] += c * &nu.free[j];
            let c2 = c.mod_floor(&BigInt::from(2)).to_string().parse::<u8>().unwrap();
            if c2 == 1 {
                for (k, &t) in nu.tors[j].iter().enumerate() {
                    new_tors[i][k] ^= t & 1;
                }
            }
        }
    }

    let torsion_positions: Vec<usize> = (0..s.diag.len())
        .filter(|&i| !s.diag[i].is_zero() && !s.diag[i].abs().is_one())
        .collect();
    for &i in &torsion_positions {
        if !new_free[i].is_zero() {
            return Err(Error::Internal(format!(
                "torsion generator {} has nonzero free Crowell coordinate",
                i
            )));
        }
    }

    let mut order = BigInt::one();
    for &i in &torsion_positions {
        order *= s.diag[i].abs();
    }
    let mut image = BTreeSet::new();
    image.insert(vec![0u8; tors_len]);
    let truncated = order > BigInt::from(enumeration_cap);
    if truncated {
        for &i in &torsion_positions {
            image.insert(new_tors[i].clone());
        }
    } else {
        // mixed-radix enumeration of the torsion subgroup
        let radices: Vec<u64> = torsion_positions
            .iter()
            .map(|&i| s.diag[i].abs().to_string().parse::<u64>().unwrap())
            .collect();
        let mut counters = vec![0u64; radices.len()];
        loop {
            let mut vec = vec![0u8; tors_len];
            for (idx, &pos) in torsion_positions.iter().enumerate() {
                if counters[idx] % 2 == 1 {
                    for k in 0..tors_len {
                        vec[k] ^= new_tors[pos][k];
                    }
                }
            }
            image.insert(vec);
            let mut carry = 0;
            while carry < counters.len() {
                counters[carry] += 1;
                if counters[carry] < radices[carry] {
                    break;
                }
                counters[carry] = 0;
                carry += 1;
            }
            if carry == counters.len() {
                break;
            }
            if counters.is_empty() {
                break;
            }
        }
    }
    Ok(NuFingerprint { mu: nu.mu, rank, torsion, torsion_image: image, truncated })
}

/// Rewrite a ν torsion-image vector through a permutation of component
/// indices (1-based `perm`, component `i` becomes `perm[i-1]`). The vector
/// is expressed in the base-component-1 coordinates, so the rewrite adds
/// the permuted base generator once per set bit.
pub fn permute_nu_image(v: &[u8], perm: &[usize]) -> Vec<u8> {
    let mu = perm.len();
    let ebar = |comp: usize, out: &mut Vec<u8>| {
        if comp >= 2 {
            out[comp - 2] ^= 1;
        }
    };
    let mut out = vec![0u8; mu.saturating_sub(1)];
    let mut count = 0u32;
    for (idx, &bit) in v.iter().enumerate() {
        if bit & 1 == 1 {
            count += 1;
            ebar(perm[idx + 1], &mut out);
        }
    }
    if count % 2 == 1 {
        ebar(perm[0], &mut out);
    }
    out
}

/// Determinant over the rational Laurent ring by cofactor expansion; test
/// support for the Smith-form product property.
pub fn rat_det(m: &[Vec<RatLaurent>]) -> RatLaurent {
    let n = m.len();
    if n == 0 {
        return RatLaurent::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = RatLaurent::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<RatLaurent>> = (1..n)
            .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
            .collect();
        let mut term = m[0][j].mul(&rat_det(&minor));
        if j % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    acc
}
