//! Exact sparse multivariate polynomials over ℚ and 𝔽_p.
//!
//! Coefficients live in [`Coeff`], which keeps machine integers inline and
//! falls back to arbitrary precision rationals only when needed. All
//! arithmetic goes through a [`Field`] so that residues mod `p` stay
//! canonical. A [`Poly`] is a bare term list sorted descending by the
//! ring's [`MonomialOrder`]; the ring is passed explicitly to every
//! operation. [`Polynomial`] bundles a `Poly` with its ring for the public
//! API and the textual syntax.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A field element. Integers that fit in an `i64` are stored inline;
/// everything else is a reduced big rational. Over 𝔽_p only `Small`
/// values in `[0, p)` occur.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Small(i64),
    Big(Box<BigRational>),
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Small(0)
    }

    pub fn one() -> Self {
        Coeff::Small(1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coeff::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::Small(1))
    }

    fn from_big(r: BigRational) -> Coeff {
        if r.is_integer() {
            if let Some(v) = r.numer().to_i64() {
                return Coeff::Small(v);
            }
        }
        Coeff::Big(Box::new(r))
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            Coeff::Small(v) => BigRational::from_integer(BigInt::from(*v)),
            Coeff::Big(r) => (**r).clone(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Small(v) => *v < 0,
            Coeff::Big(r) => r.is_negative(),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Coeff::Small(v) => Some(*v),
            Coeff::Big(_) => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Small(v) => write!(f, "{v}"),
            Coeff::Big(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// Coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u32),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if p >= (1u32 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `QQ`, `Fp:p` or `GF(p)`.
    pub fn parse(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "QQ" || s == "Q" {
            return Ok(Field::Rationals);
        }
        let num = if let Some(rest) = s.strip_prefix("Fp:") {
            rest
        } else if let Some(rest) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            rest
        } else if let Some(rest) = s.strip_prefix("ZZ/") {
            rest
        } else {
            return Err(Error::InvalidField(s.to_string()));
        };
        let p: u32 = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidField(s.to_string()))?;
        Field::prime(p)
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Field::Rationals => Coeff::Small(v),
            Field::Prime(p) => Coeff::Small(v.rem_euclid(*p as i64)),
        }
    }

    /// Brings a machine-integer coefficient into the canonical range of the field.
    pub fn canonical(&self, c: Coeff) -> Coeff {
        match (self, c) {
            (Field::Prime(_), Coeff::Small(v)) => self.from_i64(v),
            (_, c) => c,
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Coeff> {
        match self {
            Field::Rationals => Ok(Coeff::from_big(r.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = r.numer().mod_floor(&pb).to_i64().unwrap();
                let d = r.denom().mod_floor(&pb).to_i64().unwrap();
                if d == 0 {
                    return Err(Error::InvalidField(format!(
                        "denominator of {r} vanishes mod {p}"
                    )));
                }
                Ok(self.mul(&Coeff::Small(n), &self.inv(&Coeff::Small(d))))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self {
            Field::Prime(p) => {
                let (x, y) = (small(a), small(b));
                Coeff::Small((x + y) % *p as i64)
            }
            Field::Rationals => match (a, b) {
                (Coeff::Small(x), Coeff::Small(y)) => match x.checked_add(*y) {
                    Some(v) => Coeff::Small(v),
                    None => Coeff::from_big(a.to_rational() + b.to_rational()),
                },
                _ => Coeff::from_big(a.to_rational() + b.to_rational()),
            },
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match self {
            Field::Prime(p) => {
                let x = small(a);
                Coeff::Small(if x == 0 { 0 } else { *p as i64 - x })
            }
            Field::Rationals => match a {
                Coeff::Small(x) => match x.checked_neg() {
                    Some(v) => Coeff::Small(v),
                    None => Coeff::from_big(-a.to_rational()),
                },
                Coeff::Big(r) => Coeff::from_big(-(**r).clone()),
            },
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match self {
            Field::Prime(p) => Coeff::Small(small(a) * small(b) % *p as i64),
            Field::Rationals => match (a, b) {
                (Coeff::Small(x), Coeff::Small(y)) => match x.checked_mul(*y) {
                    Some(v) => Coeff::Small(v),
                    None => Coeff::from_big(a.to_rational() * b.to_rational()),
                },
                _ => Coeff::from_big(a.to_rational() * b.to_rational()),
            },
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            Field::Prime(p) => {
                let p = *p as i64;
                let (mut t, mut new_t, mut r, mut new_r) = (0i64, 1i64, p, small(a));
                while new_r != 0 {
                    let q = r / new_r;
                    (t, new_t) = (new_t, t - q * new_t);
                    (r, new_r) = (new_r, r - q * new_r);
                }
                Coeff::Small(t.rem_euclid(p))
            }
            Field::Rationals => match a {
                Coeff::Small(1) => Coeff::Small(1),
                Coeff::Small(-1) => Coeff::Small(-1),
                _ => Coeff::from_big(a.to_rational().recip()),
            },
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    /// Residue of an integer in this field.
    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        self.from_rational(&BigRational::from_integer(v.clone()))
            .expect("integers are always representable")
    }
}

fn small(a: &Coeff) -> i64 {
    match a {
        Coeff::Small(v) => *v,
        Coeff::Big(_) => unreachable!("prime field coefficients are always small"),
    }
}

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[u16; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(e: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Monomial order. Block orders compare consecutive variable ranges in turn.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    Block(Vec<(MonomialOrder, usize)>),
}

impl MonomialOrder {
    pub fn parse(s: &str) -> Result<MonomialOrder> {
        match s.trim() {
            "degrevlex" | "grevlex" | "drl" => Ok(MonomialOrder::DegRevLex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(Error::Precondition(format!("unknown monomial order `{other}`"))),
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                expected: a.len(),
                got: b.len(),
            });
        }
        Ok(self.cmp(a, b))
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        cmp_slice(self, &a.0, &b.0)
    }
}

fn cmp_slice(order: &MonomialOrder, a: &[u16], b: &[u16]) -> Ordering {
    match order {
        MonomialOrder::Lex => a.cmp(b),
        MonomialOrder::DegRevLex => {
            let da: u32 = a.iter().map(|&e| e as u32).sum();
            let db: u32 = b.iter().map(|&e| e as u32).sum();
            match da.cmp(&db) {
                Ordering::Equal => {
                    for i in (0..a.len()).rev() {
                        match a[i].cmp(&b[i]) {
                            Ordering::Equal => continue,
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            }
        }
        MonomialOrder::Block(blocks) => {
            let mut start = 0;
            for (sub, len) in blocks {
                let end = (start + len).min(a.len());
                let o = cmp_slice(sub, &a[start..end], &b[start..end]);
                if o != Ordering::Equal {
                    return o;
                }
                start = end;
            }
            if start < a.len() {
                cmp_slice(&MonomialOrder::DegRevLex, &a[start..], &b[start..])
            } else {
                Ordering::Equal
            }
        }
    }
}

/// Bare polynomial: terms sorted descending by the ring's order, no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub terms: Vec<(Monomial, Coeff)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Constant term coefficient (zero if none).
    pub fn constant_term(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Coeff::zero(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Weighted degree if homogeneous for `weights`; `None` for zero or
    /// inhomogeneous polynomials.
    pub fn homogeneous_degree(&self, weights: &[i64]) -> Option<i64> {
        let mut it = self.terms.iter().map(|(m, _)| m.weighted_degree(weights));
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self, weights: &[i64]) -> bool {
        self.is_zero() || self.homogeneous_degree(weights).is_some()
    }

    /// Variables occurring in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut out = Vec::new();
        if let Some((m, _)) = self.terms.first() {
            for i in 0..m.len() {
                if self.terms.iter().any(|(mm, _)| mm.0[i] > 0) {
                    out.push(i);
                }
            }
        }
        out
    }
}

/// Polynomial ring over a field with named variables and a monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: Field,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

pub(crate) fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new(field: Field, vars: &[&str], order: MonomialOrder) -> Result<PolyRing> {
        Self::from_names(field, vars.iter().map(|s| s.to_string()).collect(), order)
    }

    pub fn from_names(field: Field, vars: Vec<String>, order: MonomialOrder) -> Result<PolyRing> {
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::InvalidVariableName(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        Ok(PolyRing { field, vars, order })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn zero(&self) -> Poly {
        Poly::zero()
    }

    pub fn one(&self) -> Poly {
        self.constant(Coeff::one())
    }

    pub fn constant(&self, c: Coeff) -> Poly {
        let c = self.field.canonical(c);
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(self.one_monomial(), c)],
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Poly {
        self.constant(self.field.from_i64(v))
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly {
            terms: vec![(Monomial::var(self.nvars(), i), Coeff::one())],
        }
    }

    pub fn var_by_name(&self, name: &str) -> Result<Poly> {
        Ok(self.var(self.var_index(name)?))
    }

    pub fn term(&self, c: Coeff, m: Monomial) -> Poly {
        let c = self.field.canonical(c);
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, Coeff)>) -> Poly {
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = self.field.canonical(c);
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = self.field.add(&last.1, &c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.add_scaled(a, &Coeff::one(), None, b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add_scaled(a, &self.field.from_i64(-1), None, b)
    }

    /// `a + c * m * b`.
    pub fn add_scaled(&self, a: &Poly, c: &Coeff, m: Option<&Monomial>, b: &Poly) -> Poly {
        if c.is_zero() || b.is_zero() {
            return a.clone();
        }
        let f = &self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut i = 0;
        let mut bi = b.terms.iter().map(|(bm, bc)| {
            let mm = match m {
                Some(m) => bm.mul(m),
                None => bm.clone(),
            };
            (mm, f.mul(bc, c))
        });
        let mut next_b = bi.next();
        while i < a.terms.len() || next_b.is_some() {
            match (&a.terms.get(i), &next_b) {
                (Some(ta), Some(tb)) => match self.order.cmp(&ta.0, &tb.0) {
                    Ordering::Greater => {
                        out.push((*ta).clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(next_b.take().unwrap());
                        next_b = bi.next();
                    }
                    Ordering::Equal => {
                        let s = f.add(&ta.1, &tb.1);
                        if !s.is_zero() {
                            out.push((ta.0.clone(), s));
                        }
                        i += 1;
                        next_b = bi.next();
                    }
                },
                (Some(ta), None) => {
                    out.push((*ta).clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(next_b.take().unwrap());
                    next_b = bi.next();
                }
                (None, None) => break,
            }
        }
        Poly { terms: out }
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, a: &Poly, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: a
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), self.field.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, a: &Poly, c: &Coeff, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: a
                .terms
                .iter()
                .map(|(am, x)| (am.mul(m), self.field.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        if a.len() == 1 {
            return self.mul_term(b, &a.terms[0].1, &a.terms[0].0);
        }
        if b.len() == 1 {
            return self.mul_term(a, &b.terms[0].1, &b.terms[0].0);
        }
        let mut prods = Vec::with_capacity(a.len() * b.len());
        for (am, ac) in &a.terms {
            for (bm, bc) in &b.terms {
                prods.push((am.mul(bm), self.field.mul(ac, bc)));
            }
        }
        self.from_terms(prods)
    }

    pub fn pow(&self, a: &Poly, mut e: u32) -> Poly {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Scales so the leading coefficient is one.
    pub fn make_monic(&self, a: &Poly) -> Poly {
        match a.lead_coeff() {
            Some(c) if !c.is_one() => self.scale(a, &self.field.inv(c)),
            _ => a.clone(),
        }
    }

    pub fn derivative(&self, a: &Poly, var: usize) -> Poly {
        let terms = a
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let mut mm = m.clone();
                let e = mm.0[var];
                mm.0[var] -= 1;
                (mm, self.field.mul(c, &self.field.from_i64(e as i64)))
            })
            .collect();
        self.from_terms(terms)
    }

    /// Substitutes `images[i]` (polynomials of `target`) for variable `i`.
    pub fn substitute(&self, a: &Poly, images: &[Poly], target: &PolyRing) -> Poly {
        let mut cache: HashMap<(usize, u16), Poly> = HashMap::new();
        let mut acc = Poly::zero();
        for (m, c) in &a.terms {
            let c = if self.field == target.field {
                c.clone()
            } else {
                target
                    .field
                    .from_rational(&c.to_rational())
                    .unwrap_or_else(|_| Coeff::zero())
            };
            let mut t = target.constant(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 || t.is_zero() {
                    continue;
                }
                let p = cache
                    .entry((i, e))
                    .or_insert_with(|| target.pow(&images[i], e as u32))
                    .clone();
                t = target.mul(&t, &p);
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    /// Re-sorts a polynomial whose terms come from a ring with the same
    /// variables but a different order.
    pub fn reorder(&self, a: &Poly) -> Poly {
        self.from_terms(a.terms.clone())
    }

    /// Evaluates at a point of the field.
    pub fn evaluate(&self, a: &Poly, point: &[Coeff]) -> Coeff {
        let f = &self.field;
        let mut acc = Coeff::zero();
        for (m, c) in &a.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = f.mul(&t, &point[i]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        Parser::new(self, s).parse_all()
    }

    pub fn format(&self, a: &Poly) -> String {
        format_poly(self, a)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn format_poly(ring: &PolyRing, a: &Poly) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in a.terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { ring.field.neg(c) } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if m.is_one() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&ring.format_monomial(m));
        } else {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&ring.format_monomial(m));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct Parser<'a> {
    ring: &'a PolyRing,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = s[start..i].parse().unwrap();
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
            {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn new(ring: &'a PolyRing, s: &str) -> Parser<'a> {
        let toks = tokenize(s).unwrap_or_default();
        Parser {
            ring,
            toks,
            pos: 0,
            len: s.len(),
        }
    }

    fn parse_all(&mut self) -> Result<Poly> {
        // tokenizer errors surface here with their position
        if self.toks.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty polynomial".into(),
            });
        }
        let p = self.expr()?;
        if self.pos != self.toks.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(p)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.len)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.here(),
            msg: msg.to_string(),
        }
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some((_, Tok::Sym(x))) if *x == c)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.peek_sym('+') {
                self.pos += 1;
                let t = self.term()?;
                acc = self.ring.add(&acc, &t);
            } else if self.peek_sym('-') {
                self.pos += 1;
                let t = self.term()?;
                acc = self.ring.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            if self.peek_sym('*') {
                self.pos += 1;
                let t = self.unary()?;
                acc = self.ring.mul(&acc, &t);
            } else if self.peek_sym('/') {
                self.pos += 1;
                let t = self.unary()?;
                if !t.is_constant() || t.is_zero() {
                    return Err(self.err("division only by nonzero constants"));
                }
                let inv = self.ring.field.inv(&t.terms[0].1);
                acc = self.ring.scale(&acc, &inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.peek_sym('-') {
            self.pos += 1;
            let p = self.unary()?;
            return Ok(self.ring.neg(&p));
        }
        if self.peek_sym('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek_sym('^') {
            self.pos += 1;
            match self.toks.get(self.pos).cloned() {
                Some((_, Tok::Num(n))) => {
                    self.pos += 1;
                    let e = n
                        .to_u32()
                        .ok_or_else(|| self.err("exponent too large"))?;
                    Ok(self.ring.pow(&base, e))
                }
                _ => Err(self.err("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Num(n))) => {
                self.pos += 1;
                Ok(self.ring.constant(self.ring.field.from_bigint(&n)))
            }
            Some((p, Tok::Ident(name))) => {
                self.pos += 1;
                let i = self.ring.var_index(&name).map_err(|_| Error::Parse {
                    pos: p,
                    msg: format!("unknown variable `{name}`"),
                })?;
                Ok(self.ring.var(i))
            }
            Some((_, Tok::Sym('('))) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.peek_sym(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected number, variable or `(`")),
        }
    }
}

/// Checked parse that also reports tokenizer failures.
pub fn parse_poly(ring: &PolyRing, s: &str) -> Result<Poly> {
    tokenize(s)?;
    ring.parse(s)
}

/// A polynomial bundled with its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub ring: Arc<PolyRing>,
    pub poly: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Polynomial {
    pub fn parse(ring: &Arc<PolyRing>, s: &str) -> Result<Polynomial> {
        Ok(Polynomial {
            ring: ring.clone(),
            poly: parse_poly(ring, s)?,
        })
    }

    pub fn new(ring: &Arc<PolyRing>, poly: Poly) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            poly,
        }
    }

    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                "operands belong to different polynomial rings".into(),
            ));
        }
        let r = &self.ring;
        let poly = match op {
            ArithOp::Add => r.add(&self.poly, &other.poly),
            ArithOp::Sub => r.sub(&self.poly, &other.poly),
            ArithOp::Mul => r.mul(&self.poly, &other.poly),
        };
        Ok(Polynomial::new(r, poly))
    }

    pub fn differentiate(&self, var: &str) -> Result<Polynomial> {
        let i = self.ring.var_index(var)?;
        Ok(Polynomial::new(&self.ring, self.ring.derivative(&self.poly, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.poly))
    }
}

/// Arithmetic entry point with ring checking.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    a.arith(b, op)
}

/// Compares two exponent vectors under `order`.
pub fn compare_monomials(a: &Monomial, b: &Monomial, order: &MonomialOrder) -> Result<Ordering> {
    order.compare(a, b)
}

/// Parses `-3/4` style rationals.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, s) = match s.strip_prefix('-') {
        Some(r) => (true, r.trim()),
        None => (false, s),
    };
    let r = match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            BigRational::new(a, b)
        }
        None => BigRational::from_integer(s.parse().ok()?),
    };
    Some(if neg { -r } else { r })
}


#[cfg(test)]
mod tests {
    use super::*;

    fn qq(vars: &[&str]) -> Arc<PolyRing> {
        Arc::new(PolyRing::new(Field::Rationals, vars, MonomialOrder::DegRevLex).unwrap())
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn cancellation_and_squares() {
        let r = qq(&["x", "y"]);
        let s = p(&r, "x+y").arith(&p(&r, "x-y"), ArithOp::Add).unwrap();
        assert_eq!(s, p(&r, "2*x"));
        let m = p(&r, "x+y").arith(&p(&r, "x-y"), ArithOp::Mul).unwrap();
        assert_eq!(m.to_string(), "x^2 - y^2");
    }

    #[test]
    fn frobenius_over_f2() {
        let r = Arc::new(PolyRing::new(Field::prime(2).unwrap(), &["x", "y"], MonomialOrder::DegRevLex).unwrap());
        let a = p(&r, "x+y");
        let sq = a.arith(&a, ArithOp::Mul).unwrap();
        assert_eq!(sq, p(&r, "x^2+y^2"));
    }

    #[test]
    fn derivatives() {
        let r = qq(&["x", "y"]);
        let f = p(&r, "x^2 - y^3");
        assert_eq!(f.differentiate("x").unwrap(), p(&r, "2*x"));
        assert_eq!(f.differentiate("y").unwrap(), p(&r, "-3*y^2"));
        assert!(p(&r, "7").differentiate("x").unwrap().is_zero());
        assert!(matches!(f.differentiate("z"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn monomial_comparisons() {
        let x2 = Monomial::from_exponents(&[2, 0]);
        let xy = Monomial::from_exponents(&[1, 1]);
        let y3 = Monomial::from_exponents(&[0, 3]);
        let x = Monomial::from_exponents(&[1, 0]);
        assert_eq!(compare_monomials(&x2, &xy, &MonomialOrder::DegRevLex).unwrap(), Ordering::Greater);
        assert_eq!(compare_monomials(&y3, &x, &MonomialOrder::Lex).unwrap(), Ordering::Less);
        assert_eq!(compare_monomials(&xy, &xy, &MonomialOrder::DegRevLex).unwrap(), Ordering::Equal);
        let short = Monomial::from_exponents(&[1]);
        assert!(compare_monomials(&short, &xy, &MonomialOrder::Lex).is_err());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r1 = qq(&["x", "y"]);
        let r2 = qq(&["x", "z"]);
        assert!(matches!(
            p(&r1, "x").arith(&p(&r2, "x"), ArithOp::Add),
            Err(Error::RingMismatch(_))
        ));
    }

    #[test]
    fn printer_matches_documented_syntax() {
        let r = qq(&["x", "y"]);
        let f = p(&r, "2*x^2*y - 1/3*y^3");
        assert_eq!(f.to_string(), "2*x^2*y - 1/3*y^3");
        assert_eq!(p(&r, "-(x - 1)").to_string(), "-x + 1");
        assert_eq!(p(&r, "0*x").to_string(), "0");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let r = qq(&["x", "y"]);
        match Polynomial::parse(&r, "x + $") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match Polynomial::parse(&r, "x + w") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(Polynomial::parse(&r, "x/y").is_err());
    }

    #[test]
    fn field_parsing() {
        assert_eq!(Field::parse("QQ").unwrap(), Field::Rationals);
        assert_eq!(Field::parse("Fp:101").unwrap(), Field::Prime(101));
        assert_eq!(Field::parse("GF(7)").unwrap(), Field::Prime(7));
        assert!(Field::parse("Fp:100").is_err());
    }

    #[test]
    fn big_rational_fallback() {
        let f = Field::Rationals;
        let a = Coeff::Small(i64::MAX);
        let s = f.add(&a, &a);
        assert!(matches!(s, Coeff::Big(_)));
        assert_eq!(f.sub(&s, &a), a);
        let third = f.inv(&Coeff::Small(3));
        assert_eq!(f.mul(&third, &Coeff::Small(3)), Coeff::one());
    }
}
