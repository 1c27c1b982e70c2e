//! Buchberger's algorithm for submodules of free modules `P^n`.
//!
//! Vectors are dense lists of polynomials, one per coordinate. The module
//! order is term-over-position: monomials are compared first and, on a tie,
//! the lower coordinate index counts as larger. Ideals are the rank one case.
//!
//! Optionally every basis element carries its expression in the input
//! generators, which gives lifting (explicit membership) and Schreyer
//! syzygies.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::polyring::{Coeff, Monomial, MonomialOrder, Poly, PolyRing};

/// Element of a free module `P^n`, stored coordinatewise.
pub type Vector = Vec<Poly>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Poly::zero(); n]
}

pub fn unit_vector(ring: &PolyRing, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = ring.one();
    v
}

pub fn is_zero_vector(v: &[Poly]) -> bool {
    v.iter().all(|p| p.is_zero())
}

pub fn vec_add(ring: &PolyRing, a: &[Poly], b: &[Poly]) -> Vector {
    a.iter().zip(b).map(|(x, y)| ring.add(x, y)).collect()
}

pub fn vec_sub(ring: &PolyRing, a: &[Poly], b: &[Poly]) -> Vector {
    a.iter().zip(b).map(|(x, y)| ring.sub(x, y)).collect()
}

pub fn vec_scale(ring: &PolyRing, a: &[Poly], f: &Poly) -> Vector {
    a.iter().map(|x| ring.mul(x, f)).collect()
}

/// `a += c * m * b` in place.
fn vec_axpy(ring: &PolyRing, a: &mut [Poly], c: &Coeff, m: &Monomial, b: &[Poly]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = ring.add_scaled(x, c, Some(m), y);
        }
    }
}

/// Leading term `(position, monomial, coefficient)` under the module order.
pub fn lead_term<'a>(ring: &PolyRing, v: &'a [Poly]) -> Option<(usize, &'a Monomial, &'a Coeff)> {
    let mut best: Option<(usize, &Monomial, &Coeff)> = None;
    for (pos, p) in v.iter().enumerate() {
        if let Some((m, c)) = p.lead() {
            match best {
                Some((_, bm, _)) if ring.order.cmp(m, bm) != Ordering::Greater => {}
                _ => best = Some((pos, m, c)),
            }
        }
    }
    best
}

/// Compares module terms: monomial first, then lower position is larger.
pub fn cmp_module_terms(order: &MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    order.cmp(a.1, b.1).then(b.0.cmp(&a.0))
}

/// Options for the Buchberger engine.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbOptions {
    /// Skip S-pairs by the coprime-leads rule (ideals only) and by a strict
    /// form of the chain criterion.
    pub criteria: bool,
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub ring: Arc<PolyRing>,
    pub rank: usize,
    pub elems: Vec<Vector>,
    /// Expression of each element in the input generators, if tracked.
    pub reps: Option<Vec<Vector>>,
    pub ninputs: usize,
    pub reduced: bool,
    leads: Vec<(usize, Monomial)>,
    by_pos: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionResult {
    pub remainder: Vector,
    /// One quotient per basis element: `v = Σ q_i g_i + remainder`.
    pub quotients: Vec<Poly>,
}

enum Track<'a> {
    Off,
    Quot(&'a mut Vec<Poly>),
    Rep { rep: &'a mut Vector, reps: &'a [Vector] },
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: u32,
}

fn reduce_vec(
    ring: &PolyRing,
    mut work: Vector,
    elems: &[Vector],
    leads: &[(usize, Monomial)],
    by_pos: &[Vec<usize>],
    mut track: Track<'_>,
) -> Vector {
    let f = &ring.field;
    let mut rem = zero_vector(work.len());
    loop {
        let (pos, m, c) = match lead_term(ring, &work) {
            Some((p, m, c)) => (p, m.clone(), c.clone()),
            None => break,
        };
        let div = by_pos
            .get(pos)
            .and_then(|ks| ks.iter().copied().find(|&k| leads[k].1.divides(&m)));
        match div {
            Some(k) => {
                let q = m.div(&leads[k].1).unwrap();
                let lc = elems[k][pos].lead_coeff().unwrap();
                let coef = f.div(&c, lc);
                let neg = f.neg(&coef);
                vec_axpy(ring, &mut work, &neg, &q, &elems[k]);
                match &mut track {
                    Track::Off => {}
                    Track::Quot(qs) => {
                        qs[k] = ring.add_scaled(&qs[k], &coef, Some(&q), &ring.one());
                    }
                    Track::Rep { rep, reps } => vec_axpy(ring, rep, &neg, &q, &reps[k]),
                }
            }
            None => {
                let t = work[pos].terms.remove(0);
                rem[pos].terms.push(t);
            }
        }
    }
    rem
}

fn s_vector(ring: &PolyRing, gi: &[Poly], gj: &[Poly], li: &(usize, Monomial), lj: &(usize, Monomial)) -> (Vector, Monomial, Monomial, Coeff, Coeff) {
    let f = &ring.field;
    let lcm = li.1.lcm(&lj.1);
    let mi = lcm.div(&li.1).unwrap();
    let mj = lcm.div(&lj.1).unwrap();
    let ci = f.inv(gi[li.0].lead_coeff().unwrap());
    let cj = f.neg(&f.inv(gj[lj.0].lead_coeff().unwrap()));
    let mut s = zero_vector(gi.len());
    vec_axpy(ring, &mut s, &ci, &mi, gi);
    vec_axpy(ring, &mut s, &cj, &mj, gj);
    (s, mi, mj, ci, cj)
}

fn strict_chain_skip(leads: &[(usize, Monomial)], i: usize, j: usize, lcm: &Monomial, alive: usize) -> bool {
    let pos = leads[i].0;
    (0..alive).any(|k| {
        k != i
            && k != j
            && leads[k].0 == pos
            && leads[k].1.divides(lcm)
            && leads[k].1.lcm(&leads[i].1) != *lcm
            && leads[k].1.lcm(&leads[j].1) != *lcm
    })
}

impl GroebnerBasis {
    fn build(ring: &Arc<PolyRing>, rank: usize, gens: &[Vector], track: bool, opts: GbOptions) -> GroebnerBasis {
        let r: &PolyRing = ring;
        let f = &r.field;
        let ninputs = gens.len();
        let mut elems: Vec<Vector> = Vec::new();
        let mut reps: Vec<Vector> = Vec::new();
        let mut leads: Vec<(usize, Monomial)> = Vec::new();
        let mut by_pos: Vec<Vec<usize>> = vec![Vec::new(); rank];
        let mut pairs: Vec<Pair> = Vec::new();

        let insert = |v: Vector, rep: Vector, elems: &mut Vec<Vector>, reps: &mut Vec<Vector>, leads: &mut Vec<(usize, Monomial)>, by_pos: &mut Vec<Vec<usize>>, pairs: &mut Vec<Pair>| {
            let (pos, m, c) = {
                let (p, m, c) = lead_term(r, &v).unwrap();
                (p, m.clone(), c.clone())
            };
            let inv = f.inv(&c);
            let v: Vector = v.iter().map(|p| r.scale(p, &inv)).collect();
            let rep: Vector = rep.iter().map(|p| r.scale(p, &inv)).collect();
            let idx = elems.len();
            for &k in &by_pos[pos] {
                let lcm = leads[k].1.lcm(&m);
                if opts.criteria && rank == 1 && leads[k].1.is_coprime(&m) {
                    continue;
                }
                pairs.push(Pair {
                    i: k,
                    j: idx,
                    deg: lcm.degree(),
                    lcm,
                });
            }
            elems.push(v);
            reps.push(rep);
            leads.push((pos, m));
            by_pos[pos].push(idx);
        };

        for (j, g) in gens.iter().enumerate() {
            let mut rep = if track { unit_vector(r, ninputs, j) } else { Vec::new() };
            let red = {
                let t = if track {
                    Track::Rep { rep: &mut rep, reps: &reps }
                } else {
                    Track::Off
                };
                reduce_vec(r, g.clone(), &elems, &leads, &by_pos, t)
            };
            if !is_zero_vector(&red) {
                insert(red, rep, &mut elems, &mut reps, &mut leads, &mut by_pos, &mut pairs);
            }
        }

        while !pairs.is_empty() {
            let mut best = 0;
            for k in 1..pairs.len() {
                let (a, b) = (&pairs[k], &pairs[best]);
                let o = a
                    .deg
                    .cmp(&b.deg)
                    .then_with(|| r.order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| leads[a.i].0.cmp(&leads[b.i].0))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
                if o == Ordering::Less {
                    best = k;
                }
            }
            let p = pairs.swap_remove(best);
            if opts.criteria && strict_chain_skip(&leads, p.i, p.j, &p.lcm, elems.len()) {
                continue;
            }
            let (s, mi, mj, ci, cj) = s_vector(r, &elems[p.i], &elems[p.j], &leads[p.i], &leads[p.j]);
            let mut rep = Vec::new();
            if track {
                rep = zero_vector(ninputs);
                vec_axpy(r, &mut rep, &ci, &mi, &reps[p.i]);
                vec_axpy(r, &mut rep, &cj, &mj, &reps[p.j]);
            }
            let red = {
                let t = if track {
                    Track::Rep { rep: &mut rep, reps: &reps }
                } else {
                    Track::Off
                };
                reduce_vec(r, s, &elems, &leads, &by_pos, t)
            };
            if !is_zero_vector(&red) {
                insert(red, rep, &mut elems, &mut reps, &mut leads, &mut by_pos, &mut pairs);
            }
        }

        let mut gb = GroebnerBasis {
            ring: ring.clone(),
            rank,
            elems,
            reps: if track { Some(reps) } else { None },
            ninputs,
            reduced: false,
            leads,
            by_pos,
        };
        gb.make_reduced();
        gb
    }

    fn reindex(&mut self) {
        let r = self.ring.clone();
        self.leads = self
            .elems
            .iter()
            .map(|v| {
                let (p, m, _) = lead_term(&r, v).unwrap();
                (p, m.clone())
            })
            .collect();
        self.by_pos = vec![Vec::new(); self.rank];
        for (k, (p, _)) in self.leads.iter().enumerate() {
            self.by_pos[*p].push(k);
        }
    }

    fn make_reduced(&mut self) {
        let r = self.ring.clone();
        let n = self.elems.len();
        let keep: Vec<usize> = (0..n)
            .filter(|&i| {
                !(0..n).any(|j| {
                    j != i
                        && self.leads[j].0 == self.leads[i].0
                        && self.leads[j].1.divides(&self.leads[i].1)
                        && (self.leads[j].1 != self.leads[i].1 || j < i)
                })
            })
            .collect();
        let mut elems: Vec<Vector> = keep.iter().map(|&i| self.elems[i].clone()).collect();
        let mut reps: Option<Vec<Vector>> = self
            .reps
            .as_ref()
            .map(|rs| keep.iter().map(|&i| rs[i].clone()).collect());
        self.elems = elems.clone();
        self.reps = reps.clone();
        self.reindex();
        // tail reduction against the other minimal elements
        for i in 0..elems.len() {
            let (pos, m) = self.leads[i].clone();
            let mut v = elems[i].clone();
            let lead_c = v[pos].terms.remove(0).1;
            let others: Vec<Vec<usize>> = self
                .by_pos
                .iter()
                .map(|ks| ks.iter().copied().filter(|&k| k != i).collect())
                .collect();
            let tail = match &mut reps {
                Some(rs) => {
                    let mut rep = rs[i].clone();
                    let out = reduce_vec(&r, v, &self.elems, &self.leads, &others, Track::Rep { rep: &mut rep, reps: self.reps.as_ref().unwrap() });
                    rs[i] = rep;
                    out
                }
                None => {
                    v = reduce_vec(&r, v, &self.elems, &self.leads, &others, Track::Off);
                    v
                }
            };
            let mut full = tail;
            full[pos].terms.insert(0, (m, lead_c));
            elems[i] = full;
        }
        // sort ascending by leading term for a canonical layout
        let mut idx: Vec<usize> = (0..elems.len()).collect();
        let order = r.order.clone();
        idx.sort_by(|&a, &b| {
            cmp_module_terms(&order, (self.leads[a].0, &self.leads[a].1), (self.leads[b].0, &self.leads[b].1))
        });
        self.elems = idx.iter().map(|&i| elems[i].clone()).collect();
        self.reps = reps.map(|rs| idx.iter().map(|&i| rs[i].clone()).collect());
        self.reindex();
        self.reduced = true;
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn lead_terms(&self) -> &[(usize, Monomial)] {
        &self.leads
    }

    /// Division with quotients.
    pub fn normal_form(&self, v: &[Poly]) -> DivisionResult {
        let mut q = vec![Poly::zero(); self.elems.len()];
        let remainder = reduce_vec(&self.ring, v.to_vec(), &self.elems, &self.leads, &self.by_pos, Track::Quot(&mut q));
        DivisionResult { remainder, quotients: q }
    }

    /// Remainder only.
    pub fn reduce(&self, v: &[Poly]) -> Vector {
        reduce_vec(&self.ring, v.to_vec(), &self.elems, &self.leads, &self.by_pos, Track::Off)
    }

    pub fn reduce_poly(&self, p: &Poly) -> Poly {
        self.reduce(std::slice::from_ref(p)).pop().unwrap()
    }

    pub fn contains(&self, v: &[Poly]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    pub fn contains_poly(&self, p: &Poly) -> bool {
        self.reduce_poly(p).is_zero()
    }

    /// True when every unit vector lies in the submodule.
    pub fn is_everything(&self) -> bool {
        (0..self.rank).all(|p| self.by_pos[p].iter().any(|&k| self.leads[k].1.is_one()))
    }

    /// Expresses `v` in the input generators, if it lies in their span.
    /// Requires a tracked basis.
    pub fn lift(&self, v: &[Poly]) -> Option<Vector> {
        let reps = self.reps.as_ref().expect("lift needs a tracked basis");
        let d = self.normal_form(v);
        if !is_zero_vector(&d.remainder) {
            return None;
        }
        let r = &self.ring;
        let mut out = zero_vector(self.ninputs);
        for (q, rep) in d.quotients.iter().zip(reps) {
            if !q.is_zero() {
                out = vec_add(r, &out, &vec_scale(r, rep, q));
            }
        }
        Some(out)
    }

    /// Recomputes every S-pair and checks that it reduces to zero.
    pub fn is_confluent(&self) -> bool {
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                if self.leads[i].0 != self.leads[j].0 {
                    continue;
                }
                let (s, ..) = s_vector(&self.ring, &self.elems[i], &self.elems[j], &self.leads[i], &self.leads[j]);
                if !self.contains(&s) {
                    return false;
                }
            }
        }
        true
    }

    /// Standard monomials of `P^rank / M`, or `None` if infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<(usize, Monomial)>> {
        let n = self.ring.nvars();
        let mut out = Vec::new();
        for pos in 0..self.rank {
            let ls: Vec<&Monomial> = self.by_pos[pos].iter().map(|&k| &self.leads[k].1).collect();
            let mut bounds = vec![0u16; n];
            for (v, b) in bounds.iter_mut().enumerate() {
                *b = ls
                    .iter()
                    .filter(|m| m.0.iter().enumerate().all(|(i, &e)| (i == v) == (e > 0)))
                    .map(|m| m.0[v])
                    .min()?;
            }
            if n == 0 {
                if ls.is_empty() {
                    out.push((pos, Monomial::one(0)));
                }
                continue;
            }
            let mut mons = Vec::new();
            let mut cur = vec![0u16; n];
            'outer: loop {
                let m = Monomial::from_exponents(&cur);
                if !ls.iter().any(|l| l.divides(&m)) {
                    mons.push(m);
                }
                for i in 0..n {
                    cur[i] += 1;
                    if cur[i] < bounds[i] {
                        continue 'outer;
                    }
                    cur[i] = 0;
                }
                break;
            }
            mons.sort_by(|a, b| self.ring.order.cmp(a, b));
            out.extend(mons.into_iter().map(|m| (pos, m)));
        }
        Some(out)
    }

    /// Krull dimension of `P/I` from the leading-term ideal; `-1` for the
    /// unit ideal. Only meaningful in rank one.
    pub fn lead_ideal_dimension(&self) -> i64 {
        let n = self.ring.nvars();
        let supports: Vec<u64> = self
            .leads
            .iter()
            .map(|(_, m)| m.0.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |acc, (i, _)| acc | (1 << i)))
            .collect();
        if supports.contains(&0) {
            return -1;
        }
        let mut best = 0;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as i64;
            if size > best && supports.iter().all(|&s| s & !set != 0) {
                best = size;
            }
        }
        best
    }
}

pub fn buchberger(ring: &Arc<PolyRing>, rank: usize, gens: &[Vector]) -> GroebnerBasis {
    GroebnerBasis::build(ring, rank, gens, false, GbOptions::default())
}

pub fn buchberger_with(ring: &Arc<PolyRing>, rank: usize, gens: &[Vector], opts: GbOptions) -> GroebnerBasis {
    GroebnerBasis::build(ring, rank, gens, false, opts)
}

/// Basis that remembers how each element arises from the inputs.
pub fn buchberger_tracked(ring: &Arc<PolyRing>, rank: usize, gens: &[Vector]) -> GroebnerBasis {
    GroebnerBasis::build(ring, rank, gens, true, GbOptions::default())
}

pub fn ideal_gb(ring: &Arc<PolyRing>, gens: &[Poly]) -> GroebnerBasis {
    let vs: Vec<Vector> = gens.iter().map(|g| vec![g.clone()]).collect();
    buchberger(ring, 1, &vs)
}

/// Solves `Σ v_j cols_j = b`.
pub fn lift(ring: &Arc<PolyRing>, rank: usize, b: &[Poly], cols: &[Vector]) -> Option<Vector> {
    buchberger_tracked(ring, rank, cols).lift(b)
}

/// Generators of `{ v : Σ v_j cols_j = 0 }` via Schreyer's construction.
pub fn syzygies(ring: &Arc<PolyRing>, rank: usize, cols: &[Vector]) -> Vec<Vector> {
    let s = cols.len();
    if s == 0 {
        return Vec::new();
    }
    let r: &PolyRing = ring;
    let gb = buchberger_tracked(ring, rank, cols);
    let reps = gb.reps.as_ref().unwrap();
    let t = gb.elems.len();
    let combine = |coeffs: &[Poly]| -> Vector {
        let mut out = zero_vector(s);
        for (c, rep) in coeffs.iter().zip(reps) {
            if !c.is_zero() {
                out = vec_add(r, &out, &vec_scale(r, rep, c));
            }
        }
        out
    };
    let mut out: Vec<Vector> = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut push = |v: Vector, out: &mut Vec<Vector>| {
        if is_zero_vector(&v) {
            return;
        }
        let v = normalize_sign(r, v);
        let key = format!("{:?}", v);
        if seen.insert(key) {
            out.push(v);
        }
    };
    for i in 0..t {
        for j in i + 1..t {
            if gb.leads[i].0 != gb.leads[j].0 {
                continue;
            }
            let lcm = gb.leads[i].1.lcm(&gb.leads[j].1);
            if strict_chain_skip(&gb.leads, i, j, &lcm, t) {
                continue;
            }
            let (sv, mi, mj, ci, cj) = s_vector(r, &gb.elems[i], &gb.elems[j], &gb.leads[i], &gb.leads[j]);
            let d = gb.normal_form(&sv);
            debug_assert!(is_zero_vector(&d.remainder));
            let mut coeffs: Vec<Poly> = d.quotients.iter().map(|q| r.neg(q)).collect();
            coeffs[i] = r.add(&coeffs[i], &r.term(ci, mi));
            coeffs[j] = r.add(&coeffs[j], &r.term(cj, mj));
            push(combine(&coeffs), &mut out);
        }
    }
    for (j, col) in cols.iter().enumerate() {
        let d = gb.normal_form(col);
        let v = vec_sub(r, &unit_vector(r, s, j), &combine(&d.quotients));
        push(v, &mut out);
    }
    out
}

fn normalize_sign(ring: &PolyRing, v: Vector) -> Vector {
    match lead_term(ring, &v) {
        Some((_, _, c)) if c.is_negative() => v.iter().map(|p| ring.neg(p)).collect(),
        _ => v,
    }
}

/// Generators of `(gens) ∩ k[other variables]`, as polynomials of `ring`.
pub fn eliminate(ring: &Arc<PolyRing>, gens: &[Poly], elim: &[usize]) -> Vec<Poly> {
    let n = ring.nvars();
    let mut perm: Vec<usize> = elim.to_vec();
    perm.extend((0..n).filter(|i| !elim.contains(i)));
    let names: Vec<String> = perm.iter().map(|&i| ring.vars[i].clone()).collect();
    let order = MonomialOrder::Block(vec![
        (MonomialOrder::DegRevLex, elim.len()),
        (MonomialOrder::DegRevLex, n - elim.len()),
    ]);
    let er = Arc::new(PolyRing::from_names(ring.field, names, order).expect("permuted names stay valid"));
    let to_e = |p: &Poly| -> Poly {
        er.from_terms(
            p.terms
                .iter()
                .map(|(m, c)| (Monomial(perm.iter().map(|&i| m.0[i]).collect()), c.clone()))
                .collect(),
        )
    };
    let from_e = |p: &Poly| -> Poly {
        let mut terms = Vec::new();
        for (m, c) in &p.terms {
            let mut e = Monomial::one(n);
            for (k, &i) in perm.iter().enumerate() {
                e.0[i] = m.0[k];
            }
            terms.push((e, c.clone()));
        }
        ring.from_terms(terms)
    };
    let eg: Vec<Poly> = gens.iter().map(to_e).collect();
    let gb = ideal_gb(&er, &eg);
    gb.elems
        .iter()
        .map(|v| &v[0])
        .filter(|p| p.terms.iter().all(|(m, _)| m.0[..elim.len()].iter().all(|&e| e == 0)))
        .map(from_e)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Field;

    fn ring(vars: &[&str], order: MonomialOrder) -> Arc<PolyRing> {
        Arc::new(PolyRing::new(Field::Rationals, vars, order).unwrap())
    }

    fn polys(r: &PolyRing, ss: &[&str]) -> Vec<Poly> {
        ss.iter().map(|s| r.parse(s).unwrap()).collect()
    }

    fn gb_strings(gb: &GroebnerBasis) -> Vec<String> {
        gb.elems.iter().map(|v| gb.ring.format(&v[0])).collect()
    }

    #[test]
    fn single_monomial() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let gb = ideal_gb(&r, &polys(&r, &["x*y"]));
        assert_eq!(gb_strings(&gb), vec!["x*y"]);
    }

    #[test]
    fn linear_generators_under_lex() {
        let r = ring(&["x", "y", "b", "c"], MonomialOrder::Lex);
        let gb = ideal_gb(&r, &polys(&r, &["x - b", "y - c"]));
        assert_eq!(gb_strings(&gb), vec!["y - c", "x - b"]);
    }

    #[test]
    fn sum_of_squares_and_product() {
        // S(x^2+y^2, xy) = y(x^2+y^2) - x(xy) = y^3, irreducible.
        // S(xy, y^3) = 0 and S(x^2+y^2, y^3) reduces to 0 via xy.
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let gb = ideal_gb(&r, &polys(&r, &["x^2 + y^2", "x*y"]));
        assert_eq!(gb_strings(&gb), vec!["x*y", "x^2 + y^2", "y^3"]);
        assert!(gb.is_confluent());
    }

    #[test]
    fn division_examples() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let gb = ideal_gb(&r, &polys(&r, &["x*y"]));
        let d = gb.normal_form(&polys(&r, &["x^2*y"]));
        assert!(d.remainder[0].is_zero());
        assert_eq!(r.format(&d.quotients[0]), "x");
        let d = gb.normal_form(&polys(&r, &["x^2 + y"]));
        assert_eq!(r.format(&d.remainder[0]), "x^2 + y");

        let r = ring(&["x", "s"], MonomialOrder::DegRevLex);
        let gb = ideal_gb(&r, &polys(&r, &["x - s"]));
        let d = gb.normal_form(&polys(&r, &["x^2 - s^2"]));
        assert!(d.remainder[0].is_zero());
        assert_eq!(r.format(&d.quotients[0]), "x + s");
    }

    #[test]
    fn koszul_syzygy() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let cols: Vec<Vector> = polys(&r, &["x", "y"]).into_iter().map(|p| vec![p]).collect();
        let syz = syzygies(&r, 1, &cols);
        assert_eq!(syz.len(), 1);
        let s: Vec<String> = syz[0].iter().map(|p| r.format(p)).collect();
        assert_eq!(s, vec!["-y", "x"]);
    }

    #[test]
    fn identity_has_no_syzygies() {
        let r = ring(&["x"], MonomialOrder::DegRevLex);
        let cols = vec![unit_vector(&r, 2, 0), unit_vector(&r, 2, 1)];
        assert!(syzygies(&r, 2, &cols).is_empty());
    }

    #[test]
    fn lifts() {
        let r = ring(&["x", "s"], MonomialOrder::DegRevLex);
        let cols: Vec<Vector> = polys(&r, &["x - s", "x + s"]).into_iter().map(|p| vec![p]).collect();
        let b = polys(&r, &["x^2 - s^2"]);
        let v = lift(&r, 1, &b, &cols).unwrap();
        let back = r.add(&r.mul(&v[0], &cols[0][0]), &r.mul(&v[1], &cols[1][0]));
        assert_eq!(back, b[0]);

        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let cols: Vec<Vector> = polys(&r, &["x", "y"]).into_iter().map(|p| vec![p]).collect();
        assert!(lift(&r, 1, &[r.one()], &cols).is_none());
    }

    #[test]
    fn two_point_lift() {
        // (x1+s1)(x1-s1) - (x2+s2)(x2-s2) = x1^2 - x2^2 - s1^2 + s2^2
        let r = ring(&["x1", "x2", "s1", "s2"], MonomialOrder::DegRevLex);
        let cols: Vec<Vector> = polys(&r, &["x1 - s1", "x2 - s2"]).into_iter().map(|p| vec![p]).collect();
        let b = polys(&r, &["x1^2 - x2^2 - s1^2 + s2^2"]);
        let v = lift(&r, 1, &b, &cols).unwrap();
        assert_eq!(r.format(&v[0]), "x1 + s1");
        assert_eq!(r.format(&v[1]), "-x2 - s2");
    }

    #[test]
    fn dimensions() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        assert_eq!(ideal_gb(&r, &polys(&r, &["x*y"])).lead_ideal_dimension(), 1);
        assert_eq!(ideal_gb(&r, &polys(&r, &["x", "y"])).lead_ideal_dimension(), 0);
        assert_eq!(ideal_gb(&r, &polys(&r, &["x + 1", "x"])).lead_ideal_dimension(), -1);
        let r = ring(&["x", "y", "u", "v"], MonomialOrder::DegRevLex);
        assert_eq!(ideal_gb(&r, &polys(&r, &["x*y - u*v"])).lead_ideal_dimension(), 3);
    }

    #[test]
    fn elimination() {
        let r = ring(&["z", "x", "y"], MonomialOrder::DegRevLex);
        let e = eliminate(&r, &polys(&r, &["z - x", "z - y^2"]), &[0]);
        assert_eq!(e.len(), 1);
        assert_eq!(r.format(&e[0]), "y^2 - x");
    }

    #[test]
    fn cusp_standard_monomials() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let gb = ideal_gb(&r, &polys(&r, &["3*x^2", "2*y", "y^2 - x^3"]));
        let sm = gb.standard_monomials().unwrap();
        let names: Vec<String> = sm.iter().map(|(_, m)| r.format_monomial(m)).collect();
        assert_eq!(names, vec!["1", "x"]);
    }
}
