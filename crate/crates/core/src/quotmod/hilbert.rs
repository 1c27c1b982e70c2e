//! Hilbert series of graded modules from leading-term data.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::polyring::Monomial;

/// Laurent polynomial in `t` with integer coefficients.
pub type Laurent = BTreeMap<i64, i64>;

fn clean(mut p: Laurent) -> Laurent {
    p.retain(|_, c| *c != 0);
    p
}

fn l_add(a: &Laurent, b: &Laurent, sign: i64) -> Laurent {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(*e).or_insert(0) += sign * c;
    }
    clean(out)
}

fn l_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    clean(out)
}

fn l_shift(a: &Laurent, s: i64) -> Laurent {
    a.iter().map(|(e, c)| (e + s, *c)).collect()
}

fn one_minus(w: i64) -> Laurent {
    l_add(&Laurent::from([(0, 1)]), &Laurent::from([(w, 1)]), -1)
}

/// Exact division by `1 - t^w`, if it divides.
fn div_one_minus(a: &Laurent, w: i64) -> Option<Laurent> {
    // a = (1 - t^w) q; solve from the lowest degree upward
    let top = *a.keys().next_back()?;
    let mut rem = a.clone();
    let mut q = Laurent::new();
    while let Some((&e, &c)) = rem.iter().next() {
        if e + w > top {
            return None;
        }
        q.insert(e, c);
        rem = l_add(&rem, &l_mul(&Laurent::from([(e, c)]), &one_minus(w)), -1);
    }
    Some(q)
}

/// `numerator(t) / ∏ (1 - t^{w_i})`.
#[derive(Clone, Debug, Serialize)]
pub struct HilbertSeries {
    pub numerator: Laurent,
    pub weights: Vec<i64>,
}

impl PartialEq for HilbertSeries {
    fn eq(&self, other: &Self) -> bool {
        let mut a = self.numerator.clone();
        for w in &other.weights {
            a = l_mul(&a, &one_minus(*w));
        }
        let mut b = other.numerator.clone();
        for w in &self.weights {
            b = l_mul(&b, &one_minus(*w));
        }
        a == b
    }
}

impl HilbertSeries {
    pub fn zero() -> Self {
        HilbertSeries {
            numerator: Laurent::new(),
            weights: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Cancels denominator factors that divide the numerator.
    pub fn reduced(&self) -> HilbertSeries {
        let mut num = self.numerator.clone();
        let mut weights = Vec::new();
        if num.is_empty() {
            return HilbertSeries::zero();
        }
        for &w in &self.weights {
            match div_one_minus(&num, w) {
                Some(q) => num = q,
                None => weights.push(w),
            }
        }
        HilbertSeries { numerator: num, weights }
    }

    /// Coefficients of the expansion for degrees `lo..=hi`.
    pub fn expansion(&self, lo: i64, hi: i64) -> Vec<i64> {
        // multiply the numerator by 1/(1 - t^w) = Σ t^{kw}, truncated at hi
        let mut cur = self.numerator.clone();
        for &w in &self.weights {
            let mut next = Laurent::new();
            for (&e, &c) in &cur {
                let mut k = e;
                while k <= hi {
                    *next.entry(k).or_insert(0) += c;
                    k += w;
                }
            }
            cur = clean(next);
        }
        (lo..=hi).map(|d| *cur.get(&d).unwrap_or(&0)).collect()
    }

    /// Order of the pole at `t = 1`, the Krull dimension of the module.
    pub fn dimension(&self) -> usize {
        self.reduced().weights.len()
    }

    pub fn sum(&self, other: &HilbertSeries) -> HilbertSeries {
        let mut a = self.numerator.clone();
        for w in &other.weights {
            a = l_mul(&a, &one_minus(*w));
        }
        let mut b = other.numerator.clone();
        for w in &self.weights {
            b = l_mul(&b, &one_minus(*w));
        }
        let mut weights = self.weights.clone();
        weights.extend(&other.weights);
        HilbertSeries {
            numerator: l_add(&a, &b, 1),
            weights,
        }
        .reduced()
    }

    pub fn numerator_vec(&self) -> Vec<(i64, i64)> {
        self.numerator.iter().map(|(e, c)| (*e, *c)).collect()
    }
}

fn format_laurent(p: &Laurent) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (&e, &c)) in p.iter().enumerate() {
        let (neg, a) = (c < 0, c.abs());
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        match (e, a) {
            (0, _) => s.push_str(&a.to_string()),
            (_, 1) => {}
            _ => s.push_str(&format!("{a}*")),
        }
        match e {
            0 => {}
            1 => s.push('t'),
            _ => s.push_str(&format!("t^{e}")),
        }
    }
    s
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        let num = format_laurent(&r.numerator);
        if r.weights.is_empty() {
            return f.write_str(&num);
        }
        let dens: Vec<String> = r
            .weights
            .iter()
            .map(|&w| if w == 1 { "(1 - t)".to_string() } else { format!("(1 - t^{w})") })
            .collect();
        let num = if r.numerator.len() > 1 { format!("({num})") } else { num };
        write!(f, "{}/{}", num, dens.join(""))
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `P / (gens)` over `∏(1 - t^{w_i})`.
pub fn monomial_numerator(gens: &[Monomial], weights: &[i64]) -> Laurent {
    let gens = minimalize(gens.to_vec());
    if gens.is_empty() {
        return Laurent::from([(0, 1)]);
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = Laurent::from([(0, 1)]);
        for g in &gens {
            acc = l_mul(&acc, &one_minus(g.weighted_degree(weights)));
        }
        return acc;
    }
    // pivot on a variable shared by several generators:
    // N(J) = N(J + (x)) + t^{w} N(J : x)
    let nv = weights.len();
    let var = (0..nv)
        .max_by_key(|&v| (gens.iter().filter(|g| g.0[v] > 0).count(), std::cmp::Reverse(v)))
        .unwrap();
    let x = Monomial::var(nv, var);
    let mut with_x: Vec<Monomial> = gens.iter().filter(|g| g.0[var] == 0).cloned().collect();
    with_x.push(x.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            if h.0[var] > 0 {
                h.0[var] -= 1;
            }
            h
        })
        .collect();
    let a = monomial_numerator(&with_x, weights);
    let b = monomial_numerator(&colon, weights);
    l_add(&a, &l_shift(&b, weights[var]), 1)
}

/// Series of `⊕_p P(-shift_p) / L_p` for monomial submodule data.
pub fn series_from_leads(leads: &[(usize, Monomial)], shifts: &[i64], weights: &[i64]) -> HilbertSeries {
    let mut num = Laurent::new();
    for (p, &s) in shifts.iter().enumerate() {
        let gens: Vec<Monomial> = leads.iter().filter(|(q, _)| *q == p).map(|(_, m)| m.clone()).collect();
        num = l_add(&num, &l_shift(&monomial_numerator(&gens, weights), s), 1);
    }
    HilbertSeries {
        numerator: num,
        weights: weights.to_vec(),
    }
}
