use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::matrix::Matrix;
use crate::polyring::{Coeff, Poly, PolyRing};

use super::module::{prune_generators, r_syzygies, vector_degree, FPModule};
use super::ring::{QuotientRing, RingMap};

/// Free resolution `F_len → … → F_0 → M`, with `maps[i-1] = ∂_i: F_i → F_{i-1}`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: Arc<QuotientRing>,
    /// `coker ∂_1`, the module actually resolved.
    pub module: FPModule,
    /// Basis of `F_0` in terms of the original generators of `M`.
    pub augmentation: Matrix,
    /// Original generators of `M` in terms of the basis of `F_0`.
    pub coaugmentation: Matrix,
    pub maps: Vec<Matrix>,
    pub degrees: Option<Vec<Vec<i64>>>,
    /// True when the resolution reached a zero module.
    pub complete: bool,
}

impl Resolution {
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![self.module.ngens()];
        r.extend(self.maps.iter().map(|m| m.ncols));
        if self.complete {
            while r.len() > 1 && *r.last().unwrap() == 0 {
                r.pop();
            }
        }
        r
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `F_i` generator degrees.
    pub fn degrees_at(&self, i: usize) -> Option<&[i64]> {
        self.degrees.as_ref().and_then(|d| d.get(i)).map(|v| v.as_slice())
    }

    pub fn rank(&self, i: usize) -> usize {
        if i == 0 {
            self.module.ngens()
        } else {
            self.maps.get(i - 1).map_or(0, |m| m.ncols)
        }
    }

    /// `∂_i`, zero outside the computed range.
    pub fn map(&self, i: usize) -> Matrix {
        match self.maps.get(i.wrapping_sub(1)) {
            Some(m) if i >= 1 => m.clone(),
            _ => Matrix::zeros(self.rank(i.saturating_sub(1)), self.rank(i)),
        }
    }

    /// Projective dimension when the resolution finished.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.complete.then(|| self.ranks().len() - 1)
    }
}

/// Free resolution of length `length`; minimal in the graded case.
pub fn free_resolution(m: &FPModule, length: usize) -> Resolution {
    let ring = m.ring.clone();
    let pruned = m.minimal_presentation();
    let base = pruned.module;
    let mut degrees = base.gen_degrees().map(|g| vec![g.to_vec()]);
    let mut maps = Vec::new();
    let mut complete = false;
    if base.nrels() == 0 {
        complete = true;
    } else if length >= 1 {
        maps.push(base.pres.clone());
        if let Some(d) = &mut degrees {
            d.push(base.grading.as_ref().unwrap().rels.clone());
        }
        for i in 2..=length {
            let prev: &Matrix = maps.last().unwrap();
            let rank = prev.ncols;
            let syz = r_syzygies(&ring, prev.nrows, &prev.cols());
            let prev_degs = degrees.as_ref().map(|d| d[i - 1].clone());
            let sdegs: Option<Vec<i64>> = prev_degs
                .as_ref()
                .and_then(|pd| syz.iter().map(|v| vector_degree(&ring, v, pd)).collect());
            if prev_degs.is_some() && sdegs.is_none() {
                degrees = None;
            }
            let keep = prune_generators(&ring, rank, &syz, &[], sdegs.as_deref());
            if keep.is_empty() {
                complete = true;
                break;
            }
            let cols: Vec<Vector> = keep.iter().map(|&k| syz[k].clone()).collect();
            if let (Some(d), Some(sd)) = (&mut degrees, &sdegs) {
                d.push(keep.iter().map(|&k| sd[k]).collect());
            }
            maps.push(Matrix::from_cols(rank, &cols));
        }
    }
    Resolution {
        ring,
        module: base,
        augmentation: pruned.to_old,
        coaugmentation: pruned.to_new,
        maps,
        degrees,
        complete,
    }
}

/// `Ω^n M`: the image of `∂_n`, presented as `coker ∂_{n+1}`.
pub fn syzygy(m: &FPModule, n: usize) -> FPModule {
    if n == 0 {
        return m.clone();
    }
    let res = free_resolution(m, n + 1);
    let ring = &m.ring;
    if res.rank(n) == 0 {
        return FPModule::zero(ring);
    }
    let pres = if res.maps.len() > n { res.maps[n].clone() } else { Matrix::zeros(res.rank(n), 0) };
    match res.degrees_at(n) {
        Some(d) => FPModule::auto(ring, pres, Some(d.to_vec())),
        None => FPModule::new(ring, pres, None).unwrap(),
    }
}

/// Indices of the ring variables that the base variables map to, when
/// every base variable maps to a distinct variable.
pub fn base_variables(h: &RingMap) -> Option<Vec<usize>> {
    let vars: Vec<usize> = h
        .images
        .iter()
        .map(|img| {
            let sv = img.support_vars();
            (img.len() == 1 && sv.len() == 1 && img.terms[0].1.is_one() && img.terms[0].0.degree() == 1).then(|| sv[0])
        })
        .collect::<Option<_>>()?;
    let mut w = vars.clone();
    w.sort();
    w.dedup();
    (w.len() == vars.len()).then_some(vars)
}

/// Generators `x_j - σ(x_j)` of the kernel of a section `σ: R → S` of
/// `h: S → R`, one per fibre variable, written in `R`.
pub fn section_ideal_gens(h: &RingMap, section: &RingMap) -> Result<Vec<Poly>> {
    let base = base_variables(h).ok_or_else(|| Error::Precondition("base variables must map to distinct ring variables".into()))?;
    if *section.source != *h.target || *section.target != *h.source {
        return Err(Error::RingMismatch("section must map the total ring back to the base".into()));
    }
    if !h.then(section)?.is_identity() {
        return Err(Error::InvalidMap("section composed with the structure map is not the identity".into()));
    }
    let p = &h.target.poly;
    let to_p: Vec<Poly> = base.iter().map(|&b| p.var(b)).collect();
    Ok((0..p.nvars())
        .filter(|i| !base.contains(i))
        .map(|i| {
            let c = h.source.poly.substitute(&section.images[i], &to_p, p);
            h.target.reduce(&p.sub(&p.var(i), &c))
        })
        .collect())
}

/// The fibre ring `R ⊗_S k(s)` with the projection `R → R_s`. When the
/// base variables map to distinct ring variables these are substituted
/// away; otherwise the relations `h(b_j) - s_j` are adjoined.
pub fn fibre_map(h: &RingMap, point: &[Coeff]) -> Result<RingMap> {
    let s = &h.source;
    let r = &h.target;
    if point.len() != s.nvars() {
        return Err(Error::LengthMismatch {
            expected: s.nvars(),
            got: point.len(),
        });
    }
    let p = &r.poly;
    if let Some(base_vars) = base_variables(h) {
        let keep: Vec<usize> = (0..p.nvars()).filter(|i| !base_vars.contains(i)).collect();
        let names: Vec<String> = keep.iter().map(|&i| p.vars[i].clone()).collect();
        let fp = Arc::new(PolyRing::from_names(p.field, names, p.order.clone())?);
        let mut images = vec![fp.zero(); p.nvars()];
        for (k, &i) in keep.iter().enumerate() {
            images[i] = fp.var(k);
        }
        for (j, &i) in base_vars.iter().enumerate() {
            images[i] = fp.constant(point[j].clone());
        }
        let gens: Vec<_> = r.ideal_gens().iter().map(|g| p.substitute(g, &images, &fp)).collect();
        let fibre = match &r.weights {
            Some(w) => {
                let w2: Vec<i64> = keep.iter().map(|&i| w[i]).collect();
                QuotientRing::with_weights_if_homogeneous(fp.clone(), &gens, w2)
            }
            None => QuotientRing::with_weights_if_homogeneous(fp.clone(), &gens, vec![1; keep.len()]),
        };
        RingMap::new(r.clone(), fibre, images)
    } else {
        let mut gens = r.ideal_gens();
        for (j, img) in h.images.iter().enumerate() {
            gens.push(p.sub(img, &p.constant(point[j].clone())));
        }
        let fibre = match &r.weights {
            Some(w) => QuotientRing::with_weights_if_homogeneous(p.clone(), &gens, w.clone()),
            None => QuotientRing::with_weights_if_homogeneous(p.clone(), &gens, vec![1; p.nvars()]),
        };
        let images = fibre.variables();
        RingMap::new(r.clone(), fibre, images)
    }
}

/// `M ⊗_S k(s)` as a module over the fibre ring.
pub fn fibre(m: &FPModule, h: &RingMap, point: &[Coeff]) -> Result<FPModule> {
    let map = fibre_map(h, point)?;
    m.base_change(&map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Field, MonomialOrder};

    fn ring(vars: &[&str], rel: &[&str]) -> Arc<QuotientRing> {
        let p = Arc::new(PolyRing::new(Field::Rationals, vars, MonomialOrder::DegRevLex).unwrap());
        let gens: Vec<_> = rel.iter().map(|s| p.parse(s).unwrap()).collect();
        QuotientRing::auto(p, &gens)
    }

    #[test]
    fn betti_numbers_of_residue_fields() {
        let a = ring(&["x", "y"], &["x*y"]);
        let res = free_resolution(&FPModule::residue_field(&a), 5);
        assert_eq!(res.ranks(), vec![1, 2, 2, 2, 2, 2]);
        let p = ring(&["x", "y"], &[]);
        let res = free_resolution(&FPModule::residue_field(&p), 5);
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        assert!(res.complete);
        let free = free_resolution(&FPModule::free(&p, 3), 4);
        assert_eq!(free.ranks(), vec![3]);
    }

    #[test]
    fn first_syzygy_of_k_is_the_maximal_ideal() {
        let a = ring(&["x", "y"], &["x*y"]);
        let om = syzygy(&FPModule::residue_field(&a), 1);
        let m = FPModule::ideal(&a, &a.variables());
        assert_eq!(om.hilbert_series().unwrap(), m.hilbert_series().unwrap());
        assert_eq!(om.ngens(), 2);
    }

    #[test]
    fn fibres_of_the_knudsen_example() {
        let s = ring(&["b", "c"], &[]);
        let r = ring(&["b", "c", "x", "y"], &["x*y - b*c"]);
        let sp = &r.poly;
        let h = RingMap::new(s.clone(), r.clone(), vec![sp.parse("b").unwrap(), sp.parse("c").unwrap()]).unwrap();
        let i = FPModule::ideal(&r, &[sp.parse("x - b").unwrap(), sp.parse("y - c").unwrap()]);
        let f0 = fibre(&i, &h, &[Coeff::Small(0), Coeff::Small(0)]).unwrap();
        assert_eq!(f0.ring.to_string(), "QQ[x,y]/(x*y)");
        assert!(f0.is_graded());
        let f1 = fibre(&i, &h, &[Coeff::Small(1), Coeff::Small(1)]).unwrap();
        assert_eq!(f1.ring.to_string(), "QQ[x,y]/(x*y - 1)");
        let emb: Vec<String> = f1.embedding.as_ref().unwrap().iter().map(|p| f1.ring.format(p)).collect();
        assert_eq!(emb, vec!["x - 1", "y - 1"]);
    }
}
