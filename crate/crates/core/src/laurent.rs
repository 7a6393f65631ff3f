//! Exact sparse Laurent-polynomial arithmetic: multivariate over the
//! integers (the ring `Λ_μ = Z[t_1^{±1},…,t_μ^{±1}]`) and univariate over
//! the rationals (used for invariant-factor computations).
//!
//! Values are immutable after construction and every operation is a pure
//! function, so everything here is safe to use from any number of threads.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent vector of a monomial `t_1^{e_1}…t_μ^{e_μ}`.
pub type ExponentVector = Vec<i32>;

/// Compare exponent vectors colexicographically (last variable most
/// significant). This is the term order used for display and for leading
/// terms in exact division.
pub fn colex_cmp(a: &[i32], b: &[i32]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Sparse Laurent polynomial with integer coefficients in `varcount`
/// variables. Stored coefficients are never zero and every key has length
/// `varcount`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntLaurent {
    varcount: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl IntLaurent {
    pub fn zero(varcount: usize) -> Self {
        assert!(varcount >= 1, "varcount must be at least 1");
        IntLaurent { varcount, terms: BTreeMap::new() }
    }

    pub fn constant(varcount: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(varcount);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(vec![0; varcount], c);
        }
        p
    }

    pub fn one(varcount: usize) -> Self {
        Self::constant(varcount, 1)
    }

    /// The variable `t_i` (1-based index) in `varcount` variables.
    pub fn var(index: usize, varcount: usize) -> Self {
        assert!(index >= 1 && index <= varcount, "variable index out of range");
        let mut e = vec![0; varcount];
        e[index - 1] = 1;
        Self::monomial(e, 1)
    }

    pub fn monomial(exps: ExponentVector, coef: impl Into<BigInt>) -> Self {
        let varcount = exps.len();
        assert!(varcount >= 1);
        let mut p = Self::zero(varcount);
        let c = coef.into();
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Univariate polynomial from `(exponent, coefficient)` pairs.
    pub fn from_pairs(pairs: &[(i32, i64)]) -> Self {
        let mut p = Self::zero(1);
        for &(e, c) in pairs {
            p.add_term(&[e], &BigInt::from(c));
        }
        p
    }

    pub fn varcount(&self) -> usize {
        self.varcount
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    /// True iff `self` is `±t^e` for some monomial, i.e. a unit of the ring.
    pub fn is_unit_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().abs().is_one()
    }

    fn add_term(&mut self, exps: &[i32], coef: &BigInt) {
        if coef.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.varcount);
        let entry = self.terms.entry(exps.to_vec()).or_insert_with(BigInt::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(exps);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.varcount, other.varcount, "mismatched varcount in lp_add");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.varcount, other.varcount, "mismatched varcount in lp_mul");
        let mut out = Self::zero(self.varcount);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(&e, &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.varcount);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c;
        }
        out
    }

    /// Multiply by the unit monomial `t^shift` (componentwise exponent shift).
    pub fn shift(&self, shift: &[i32]) -> Self {
        debug_assert_eq!(shift.len(), self.varcount);
        let mut out = Self::zero(self.varcount);
        for (e, c) in &self.terms {
            let ne: Vec<i32> = e.iter().zip(shift).map(|(x, s)| x + s).collect();
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Image under the ring homomorphism `τ : t_i ↦ t` into one variable.
    pub fn substitute_tau(&self) -> IntLaurent {
        let mut out = IntLaurent::zero(1);
        for (e, c) in &self.terms {
            let total: i32 = e.iter().sum();
            out.add_term(&[total], c);
        }
        out
    }

    /// Evaluate at a point of nonzero rationals. Negative exponents are
    /// meaningful because every coordinate is invertible.
    pub fn evaluate_rat(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.varcount {
            return Err(Error::Usage(format!(
                "evaluation point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.varcount
            )));
        }
        for (i, x) in point.iter().enumerate() {
            if x.is_zero() {
                return Err(Error::NonInvertible(format!("coordinate {} is zero", i + 1)));
            }
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e) {
                term *= rat_pow(x, k);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Evaluate at all-ones (the augmentation `ε`).
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Evaluate at all variables equal to −1 (the homomorphism `ν`).
    pub fn evaluate_nu(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let total: i32 = e.iter().sum();
            if total.rem_euclid(2) == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }

    /// Evaluate at a point whose coordinates are units modulo `m`.
    pub fn evaluate_mod(&self, point: &[i64], m: u64) -> Result<u64> {
        if point.len() != self.varcount {
            return Err(Error::Usage("point length does not match varcount".into()));
        }
        let m = m as i128;
        let mut invs = Vec::with_capacity(point.len());
        for &x in point {
            let x = (x as i128).rem_euclid(m);
            match mod_inverse(x, m) {
                Some(inv) => invs.push((x, inv)),
                None => {
                    return Err(Error::NonInvertible(format!("{} is not a unit mod {}", x, m)))
                }
            }
        }
        let mut acc: i128 = 0;
        for (e, c) in &self.terms {
            let mut term = c.mod_floor(&BigInt::from(m)).to_i128().unwrap();
            for (&(x, inv), &k) in invs.iter().zip(e) {
                let base = if k >= 0 { x } else { inv };
                for _ in 0..k.unsigned_abs() {
                    term = term * base % m;
                }
            }
            acc = (acc + term) % m;
        }
        Ok(acc.rem_euclid(m) as u64)
    }

    /// Minimum exponent, univariate only. `None` for the zero polynomial.
    pub fn min_exp(&self) -> Option<i32> {
        assert_eq!(self.varcount, 1);
        self.terms.keys().map(|e| e[0]).min()
    }

    pub fn max_exp(&self) -> Option<i32> {
        assert_eq!(self.varcount, 1);
        self.terms.keys().map(|e| e[0]).max()
    }

    /// Canonical associate under multiplication by units `±t^m`, univariate:
    /// lowest exponent shifted to 0 and lowest coefficient positive.
    /// Idempotent; maps 0 to 0.
    pub fn normalize_unit(&self) -> IntLaurent {
        assert_eq!(self.varcount, 1, "normalize_unit is defined for one variable");
        if self.is_zero() {
            return self.clone();
        }
        let m = self.min_exp().unwrap();
        let mut out = self.shift(&[-m]);
        if out.terms[&vec![0]].is_negative() {
            out = out.neg();
        }
        out
    }

    /// gcd of the absolute values of the coefficients (0 for the zero poly).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        g
    }

    /// Exact division: `Some(q)` with `self = q·other`, or `None` when
    /// `other` does not divide `self`. Works in any number of variables
    /// using colex leading terms.
    pub fn div_exact(&self, other: &Self) -> Option<IntLaurent> {
        assert_eq!(self.varcount, other.varcount);
        if other.is_zero() {
            return if self.is_zero() { Some(self.clone()) } else { None };
        }
        if self.is_zero() {
            return Some(Self::zero(self.varcount));
        }
        // Any exact quotient has exponents confined to this window.
        let lo: Vec<i32> = (0..self.varcount)
            .map(|i| {
                self.terms.keys().map(|e| e[i]).min().unwrap()
                    - other.terms.keys().map(|e| e[i]).max().unwrap()
            })
            .collect();
        let hi: Vec<i32> = (0..self.varcount)
            .map(|i| {
                self.terms.keys().map(|e| e[i]).max().unwrap()
                    - other.terms.keys().map(|e| e[i]).min().unwrap()
            })
            .collect();
        let (lt_e, lt_c) = other
            .terms
            .iter()
            .max_by(|a, b| colex_cmp(a.0, b.0))
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.varcount);
        while !rem.is_zero() {
            let (re, rc) = rem
                .terms
                .iter()
                .max_by(|a, b| colex_cmp(a.0, b.0))
                .map(|(e, c)| (e.clone(), c.clone()))
                .unwrap();
            let (qc, r) = rc.div_rem(&lt_c);
            if !r.is_zero() {
                return None;
            }
            let qe: Vec<i32> = re.iter().zip(&lt_e).map(|(a, b)| a - b).collect();
            if qe.iter().zip(&lo).any(|(x, l)| x < l) || qe.iter().zip(&hi).any(|(x, h)| x > h) {
                return None;
            }
            let qterm = Self::monomial(qe, qc);
            rem = rem.sub(&qterm.mul(other));
            quot = quot.add(&qterm);
        }
        Some(quot)
    }

    /// True when `other` divides `self` exactly (0 divides only 0).
    pub fn divisible_by(&self, other: &Self) -> bool {
        self.div_exact(other).is_some()
    }

    /// Rename variables: position `i` becomes position `perm[i]` (0-based
    /// permutation of the variable slots).
    pub fn permute_vars(&self, perm: &[usize]) -> IntLaurent {
        assert_eq!(perm.len(), self.varcount);
        let mut out = Self::zero(self.varcount);
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.varcount];
            for (i, &x) in e.iter().enumerate() {
                ne[perm[i]] = x;
            }
            out.terms.insert(ne, c.clone());
        }
        out
    }
}

fn rat_pow(x: &BigRational, k: i32) -> BigRational {
    if k == 0 {
        return BigRational::one();
    }
    let base = if k > 0 { x.clone() } else { x.recip() };
    let mut acc = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m, a.rem_euclid(m));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m))
}

/// gcd in `Z[t^{±1}]`: gcd of contents times the gcd of primitive parts,
/// the latter by a pseudo-remainder sequence with primitive-part reduction
/// to keep coefficients small. Output is in `normalize_unit` form;
/// `gcd(p, 0) = normalize(p)`.
pub fn gcd_univariate(p: &IntLaurent, q: &IntLaurent) -> IntLaurent {
    assert_eq!(p.varcount(), 1);
    assert_eq!(q.varcount(), 1);
    if p.is_zero() {
        return q.normalize_unit();
    }
    if q.is_zero() {
        return p.normalize_unit();
    }
    let content = p.content().gcd(&q.content());
    let mut a = primitive_poly(p);
    let mut b = primitive_poly(q);
    if poly_deg(&a) < poly_deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive_poly(&r);
    }
    a.scale(&content).normalize_unit()
}

/// Shift to an ordinary polynomial (lowest exponent 0) and divide out the
/// content; the unit and content are irrelevant for gcd purposes.
fn primitive_poly(p: &IntLaurent) -> IntLaurent {
    if p.is_zero() {
        return p.clone();
    }
    let shifted = p.shift(&[-p.min_exp().unwrap()]);
    let c = shifted.content();
    let mut out = IntLaurent::zero(1);
    for (e, coef) in shifted.terms() {
        out.add_term(e, &(coef / &c));
    }
    out.normalize_unit()
}

fn poly_deg(p: &IntLaurent) -> i32 {
    p.max_exp().unwrap_or(-1)
}

fn leading_coef(p: &IntLaurent) -> BigInt {
    let d = p.max_exp().unwrap();
    p.terms()
        .find(|(e, _)| e[0] == d)
        .map(|(_, c)| c.clone())
        .unwrap()
}

/// Pseudo-remainder of ordinary polynomials: `lc(b)^(deg a − deg b + 1)·a mod b`.
fn pseudo_rem(a: &IntLaurent, b: &IntLaurent) -> IntLaurent {
    let db = poly_deg(b);
    let lb = leading_coef(b);
    let mut r = a.clone();
    while !r.is_zero() && poly_deg(&r) >= db {
        let dr = poly_deg(&r);
        let lr = leading_coef(&r);
        let m = IntLaurent::monomial(vec![dr - db], lr);
        r = r.scale(&lb).sub(&m.mul(b));
    }
    r
}

impl fmt::Display for IntLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&ExponentVector, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| colex_cmp(a.0, b.0));
        for (i, (e, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = render_monomial(e, self.varcount);
            if mono.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", mag, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn render_monomial(e: &[i32], varcount: usize) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let name = if varcount == 1 { "t".to_string() } else { format!("t{}", i + 1) };
        if k == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{}^{}", name, k));
        }
    }
    parts.join("*")
}

/// Parse the rendering grammar, e.g. `1 - t1 - t2 + t1*t2` or `2*t^-1 + 3`.
/// The expected variable count must be supplied; the univariate variable is
/// spelled `t`, multivariate ones `t1..tμ`.
pub fn parse_laurent(text: &str, varcount: usize) -> Result<IntLaurent> {
    let mut p = IntLaurent::zero(varcount);
    let s: Vec<char> = text.chars().collect();
    let mut i = 0;
    let n = s.len();
    let err = |i: usize, msg: &str| Error::Parse { pos: format!("column {}", i + 1), msg: msg.into() };
    let skip_ws = |i: &mut usize| {
        while *i < n && s[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == n {
        return Err(err(i, "empty polynomial"));
    }
    let mut first = true;
    while i < n {
        skip_ws(&mut i);
        if i == n {
            break;
        }
        let mut sign = BigInt::one();
        if s[i] == '+' || s[i] == '-' {
            if s[i] == '-' {
                sign = -sign;
            }
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err(err(i, "expected '+' or '-' between terms"));
        }
        first = false;
        // coefficient
        let mut coef = BigInt::one();
        let mut saw_digits = false;
        let start = i;
        while i < n && s[i].is_ascii_digit() {
            i += 1;
            saw_digits = true;
        }
        if saw_digits {
            coef = s[start..i].iter().collect::<String>().parse().unwrap();
        }
        skip_ws(&mut i);
        if i < n && s[i] == '*' && saw_digits {
            i += 1;
            skip_ws(&mut i);
        }
        // monomial
        let mut exps = vec![0i32; varcount];
        let mut saw_var = false;
        loop {
            skip_ws(&mut i);
            if i >= n || s[i] != 't' {
                break;
            }
            i += 1;
            let vstart = i;
            while i < n && s[i].is_ascii_digit() {
                i += 1;
            }
            let vi = if vstart == i {
                if varcount != 1 {
                    return Err(err(vstart, "variable index required for multivariate input"));
                }
                1
            } else {
                s[vstart..i].iter().collect::<String>().parse::<usize>().unwrap()
            };
            if vi < 1 || vi > varcount {
                return Err(err(vstart, "variable index out of range"));
            }
            let mut e: i32 = 1;
            if i < n && s[i] == '^' {
                i += 1;
                let mut esign = 1;
                if i < n && s[i] == '-' {
                    esign = -1;
                    i += 1;
                }
                let estart = i;
                while i < n && s[i].is_ascii_digit() {
                    i += 1;
                }
                if estart == i {
                    return Err(err(i, "expected exponent digits after '^'"));
                }
                e = esign * s[estart..i].iter().collect::<String>().parse::<i32>().unwrap();
            }
            exps[vi - 1] += e;
            saw_var = true;
            skip_ws(&mut i);
            if i < n && s[i] == '*' {
                i += 1;
                continue;
            }
            break;
        }
        if !saw_digits && !saw_var {
            return Err(err(i, "expected a term"));
        }
        p.add_term(&exps, &(sign * coef));
    }
    Ok(p)
}

/// Univariate Laurent polynomial with rational coefficients, the Euclidean
/// workhorse behind the rational Smith form.
#[derive(Clone, PartialEq, Eq)]
pub struct RatLaurent {
    coeffs: BTreeMap<i32, BigRational>,
}

impl RatLaurent {
    pub fn zero() -> Self {
        RatLaurent { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.coeffs.insert(0, c);
        }
        p
    }

    pub fn from_int_laurent(p: &IntLaurent) -> Self {
        assert_eq!(p.varcount(), 1);
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            out.coeffs.insert(e[0], BigRational::from_integer(c.clone()));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Width of the exponent window; the pivot-quality measure for the
    /// Euclidean elimination.
    pub fn span(&self) -> i32 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => b - a,
            _ => -1,
        }
    }

    fn add_term(&mut self, e: i32, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }

    pub fn shift(&self, k: i32) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.coeffs {
            out.coeffs.insert(e + k, c.clone());
        }
        out
    }

    /// Division with remainder. Both operands are shifted to ordinary
    /// polynomials, divided there, and the shift is restored, so
    /// `self = q·quot + rem` with the remainder's polynomial degree smaller
    /// than the divisor's.
    pub fn divmod(&self, q: &Self) -> Result<(Self, Self)> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok((Self::zero(), Self::zero()));
        }
        let a = self.min_exp().unwrap();
        let b = q.min_exp().unwrap();
        let pp = self.shift(-a);
        let qq = q.shift(-b);
        let dq = qq.max_exp().unwrap();
        let lq = qq.coeffs[&dq].clone();
        let mut rem = pp;
        let mut quot = Self::zero();
        while !rem.is_zero() && rem.max_exp().unwrap() >= dq {
            let dr = rem.max_exp().unwrap();
            let c = &rem.coeffs[&dr] / &lq;
            let mut m = Self::zero();
            m.coeffs.insert(dr - dq, c);
            rem = rem.sub(&m.mul(&qq));
            quot = quot.add(&m);
        }
        Ok((quot.shift(a - b), rem.shift(a)))
    }

    pub fn rem(&self, q: &Self) -> Result<Self> {
        Ok(self.divmod(q)?.1)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.normalize_monic()
    }

    /// Canonical form: monic with nonzero constant term (all `c·t^k` units
    /// stripped). Maps 0 to 0.
    pub fn normalize_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let shifted = self.shift(-self.min_exp().unwrap());
        let lead = shifted.coeffs[&shifted.max_exp().unwrap()].clone();
        let mut out = Self::zero();
        for (e, c) in &shifted.coeffs {
            out.coeffs.insert(*e, c / &lead);
        }
        out
    }

    pub fn coeff(&self, e: i32) -> BigRational {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }
}

impl fmt::Display for RatLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = match *e {
                0 => String::new(),
                1 => "t".to_string(),
                k => format!("t^{}", k),
            };
            if mono.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", mag, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(s: &str) -> IntLaurent {
        parse_laurent(s, 1).unwrap()
    }

    fn p2(s: &str) -> IntLaurent {
        parse_laurent(s, 2).unwrap()
    }

    #[test]
    fn add_cancels_inverse() {
        let a = p2("t1 - 1");
        let b = p2("1 - t1");
        assert!(a.add(&b).is_zero());
        assert_eq!(p1("t - 1").add(&p1("t - 1")).to_string(), "-2 + 2*t");
        assert_eq!(p2("t1*t2 + 1").add(&p2("t1*t2")).to_string(), "1 + 2*t1*t2");
    }

    #[test]
    fn mul_examples() {
        assert!(p1("t^-1").mul(&p1("t")).is_unit_monomial());
        assert_eq!(p1("t^-1").mul(&p1("t")), IntLaurent::one(1));
        assert_eq!(p1("t - 1").mul(&p1("t + 1")), p1("t^2 - 1"));
        let lhs = p2("1 - t2").mul(&p2("1 - t1"));
        assert_eq!(lhs, p2("1 - t1 - t2 + t1*t2"));
        assert_eq!(lhs.to_string(), "1 - t1 - t2 + t1*t2");
    }

    #[test]
    fn substitute_tau_examples() {
        assert_eq!(p2("t1*t2^-1").substitute_tau(), IntLaurent::one(1));
        assert_eq!(p2("1 - t2").substitute_tau(), p1("1 - t"));
        assert_eq!(p2("1 - t1 + t1^2").substitute_tau(), p1("1 - t + t^2"));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(p2("t1 - 1").augmentation(), BigInt::zero());
        assert_eq!(p1("1 - t").evaluate_nu(), BigInt::from(2));
        let pt = vec![
            BigRational::from_integer(3.into()),
            BigRational::from_integer(5.into()),
        ];
        let v = p2("1 - t2").mul(&p2("1 - t1")).evaluate_rat(&pt).unwrap();
        assert_eq!(v, BigRational::from_integer(8.into()));
        assert!(p1("t").evaluate_rat(&[BigRational::zero()]).is_err());
    }

    #[test]
    fn normalize_unit_examples() {
        assert_eq!(p1("-t^3 + 3*t^2 - t").normalize_unit(), p1("t^2 - 3*t + 1"));
        assert!(IntLaurent::zero(1).normalize_unit().is_zero());
        let canonical = p1("t^2 - t + 1");
        assert_eq!(canonical.normalize_unit(), canonical);
        let n = canonical.normalize_unit();
        assert_eq!(n.normalize_unit(), n);
    }

    #[test]
    fn gcd_examples() {
        // canonical associates have positive trailing coefficient, so the
        // gcd of t^2-1 and t-1 prints as 1-t
        assert_eq!(gcd_univariate(&p1("t^2 - 1"), &p1("t - 1")), p1("1 - t"));
        assert_eq!(gcd_univariate(&p1("2*t - 2"), &p1("4*t - 4")), p1("2 - 2*t"));
        assert_eq!(gcd_univariate(&p1("t^2 - t + 1"), &p1("t - 1")), IntLaurent::one(1));
        assert_eq!(gcd_univariate(&p1("t^2 - 1"), &IntLaurent::zero(1)), p1("1 - t^2"));
    }

    #[test]
    fn div_exact_works() {
        let prod = p1("t^2 - 1");
        assert_eq!(prod.div_exact(&p1("t - 1")), Some(p1("t + 1")));
        assert_eq!(p1("t").div_exact(&p1("t - 1")), None);
        let m = p2("1 - t1 - t2 + t1*t2");
        assert_eq!(m.div_exact(&p2("1 - t1")), Some(p2("1 - t2")));
        // division by unit monomials always succeeds
        assert_eq!(p1("t - 1").div_exact(&p1("t")), Some(p1("1 - t^-1")));
    }

    #[test]
    fn rat_divmod_examples() {
        let p = RatLaurent::from_int_laurent(&p1("t^2 - 1"));
        let q = RatLaurent::from_int_laurent(&p1("t - 1"));
        let (quot, rem) = p.divmod(&q).unwrap();
        assert_eq!(quot, RatLaurent::from_int_laurent(&p1("t + 1")));
        assert!(rem.is_zero());

        let p = RatLaurent::from_int_laurent(&p1("t"));
        let (quot, rem) = p.divmod(&q).unwrap();
        assert_eq!(q.mul(&quot).add(&rem), p);

        let (quot, rem) = q.divmod(&q).unwrap();
        assert_eq!(quot, RatLaurent::one());
        assert!(rem.is_zero());

        assert!(q.divmod(&RatLaurent::zero()).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "1 - t1 - t2 + t1*t2", "-t1^-2 + 5*t2^3", "3"] {
            let p = p2(s);
            assert_eq!(parse_laurent(&p.to_string(), 2).unwrap(), p);
        }
        assert!(parse_laurent("t3", 2).is_err());
        assert!(parse_laurent("", 1).is_err());
        assert!(parse_laurent("1 +", 1).is_err());
    }

    #[test]
    fn permute_vars_relabels() {
        let p = p2("t1 - t2");
        assert_eq!(p.permute_vars(&[1, 0]), p2("t2 - t1"));
    }
}
