//! Bounded-window cochain complexes of finite free modules.
//!
//! A [`FreeComplex`] stores `E^lo, …, E^hi` with `d^i: E^i → E^{i+1}`;
//! everything outside the window is zero.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::matrix::Matrix;
use crate::polyring::{Coeff, Poly};
use crate::quotmod::{
    fibre_map, free_resolution, r_syzygies, subquotient, DualData, FPModule, QuotientRing, RingMap, Resolution,
};

#[derive(Clone, Debug)]
pub struct FreeComplex {
    pub ring: Arc<QuotientRing>,
    pub lo: i64,
    pub ranks: Vec<usize>,
    /// `diffs[k]` is `d^{lo+k}`, a `rank(lo+k+1) × rank(lo+k)` matrix.
    pub diffs: Vec<Matrix>,
    pub degrees: Option<Vec<Vec<i64>>>,
}

impl FreeComplex {
    /// Validates shapes and `d∘d = 0`.
    pub fn new(ring: &Arc<QuotientRing>, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>, degrees: Option<Vec<Vec<i64>>>) -> Result<FreeComplex> {
        if diffs.len() + 1 != ranks.len().max(1) {
            return Err(Error::Dimension(format!("{} terms need {} differentials, got {}", ranks.len(), ranks.len().saturating_sub(1), diffs.len())));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.ncols != ranks[k] || d.nrows != ranks[k + 1] {
                return Err(Error::Dimension(format!("d^{} has shape {}x{}", lo + k as i64, d.nrows, d.ncols)));
            }
        }
        if let Some(g) = &degrees {
            if g.len() != ranks.len() || g.iter().zip(&ranks).any(|(a, &r)| a.len() != r) {
                return Err(Error::Dimension("degree data does not match the ranks".into()));
            }
        }
        let diffs: Vec<Matrix> = diffs.iter().map(|d| ring.reduce_matrix(d)).collect();
        let c = FreeComplex {
            ring: ring.clone(),
            lo,
            ranks,
            diffs,
            degrees,
        };
        for i in c.lo..c.hi() - 1 {
            let dd = c.diff(i + 1).mul(&ring.poly, &c.diff(i));
            if !ring.reduce_matrix(&dd).is_zero() {
                return Err(Error::InvalidMap(format!("d^{} d^{} is not zero", i + 1, i)));
            }
        }
        Ok(c)
    }

    pub fn zero(ring: &Arc<QuotientRing>) -> FreeComplex {
        FreeComplex {
            ring: ring.clone(),
            lo: 0,
            ranks: vec![0],
            diffs: Vec::new(),
            degrees: None,
        }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    pub fn degrees_at(&self, i: i64) -> Option<Vec<i64>> {
        if i < self.lo || i > self.hi() {
            return self.degrees.as_ref().map(|_| Vec::new());
        }
        self.degrees.as_ref().map(|g| g[(i - self.lo) as usize].clone())
    }

    /// `d^i`, zero outside the window.
    pub fn diff(&self, i: i64) -> Matrix {
        if i >= self.lo && i < self.hi() {
            self.diffs[(i - self.lo) as usize].clone()
        } else {
            Matrix::zeros(self.rank(i + 1), self.rank(i))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// Indices whose cohomology depends on data outside the window.
    pub fn is_edge(&self, i: i64) -> bool {
        i <= self.lo || i >= self.hi()
    }

    /// `H^i = ker d^i / im d^{i-1}`.
    pub fn cohomology(&self, i: i64) -> FPModule {
        let n = self.rank(i);
        let zero_rel = Matrix::zeros(n, 0);
        let next_rel = Matrix::zeros(self.rank(i + 1), 0);
        homology_at(&self.ring, &self.diff(i - 1), &self.diff(i), &zero_rel, &next_rel, self.degrees_at(i).as_deref())
    }

    pub fn to_strings(&self) -> Vec<Vec<Vec<String>>> {
        self.diffs.iter().map(|d| d.to_strings(&self.ring.poly)).collect()
    }

    /// Shifts indices: `E[s]^i = E^{i+s}` (no sign change).
    pub fn shift(&self, s: i64) -> FreeComplex {
        FreeComplex {
            lo: self.lo - s,
            ..self.clone()
        }
    }

    /// Componentwise equality of ranks and differentials on the union of windows.
    pub fn equals(&self, other: &FreeComplex) -> bool {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        (lo..=hi).all(|i| self.rank(i) == other.rank(i))
            && (lo..hi).all(|i| self.ring.reduce_matrix(&self.diff(i)) == other.ring.reduce_matrix(&other.diff(i)))
    }
}

/// `ker(cur mod rel_next) / (im prev + im rel_here)` inside `R^n`.
pub fn homology_at(ring: &Arc<QuotientRing>, prev: &Matrix, cur: &Matrix, rel_here: &Matrix, rel_next: &Matrix, degrees: Option<&[i64]>) -> FPModule {
    let n = cur.ncols;
    if n == 0 {
        return FPModule::zero(ring);
    }
    let m = cur.nrows;
    let cycles: Vec<Vector> = if m == 0 || (cur.is_zero()) {
        Matrix::identity(&ring.poly, n).cols()
    } else {
        let mut cols = cur.cols();
        cols.extend(rel_next.cols());
        r_syzygies(ring, m, &cols).into_iter().map(|v| v[..n].to_vec()).collect()
    };
    if cycles.is_empty() {
        return FPModule::zero(ring);
    }
    let z = Matrix::from_cols(n, &cycles);
    let b = prev.hconcat(rel_here);
    let (module, _) = subquotient(ring, &z, &b, degrees);
    tidy(module)
}

/// Minimal presentation in the graded case, otherwise unchanged.
fn tidy(m: FPModule) -> FPModule {
    if m.is_graded() {
        m.minimal_presentation().module
    } else {
        m
    }
}

/// `(E^∨)^i = (E^{1-i})^*` with differential `(d^{-i})ᵗ`.
pub fn dual_complex(e: &FreeComplex) -> FreeComplex {
    let lo = 1 - e.hi();
    let ranks: Vec<usize> = e.ranks.iter().rev().cloned().collect();
    let diffs: Vec<Matrix> = (lo..lo + ranks.len() as i64 - 1).map(|i| e.diff(-i).transpose()).collect();
    let degrees = e
        .degrees
        .as_ref()
        .map(|g| g.iter().rev().map(|v| v.iter().map(|x| -x).collect()).collect());
    FreeComplex {
        ring: e.ring.clone(),
        lo,
        ranks,
        diffs,
        degrees,
    }
}

/// A chain map given by `maps[k]: source^{lo+k} → target^{lo+k}`.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    pub source: FreeComplex,
    pub target: FreeComplex,
    pub lo: i64,
    pub maps: Vec<Matrix>,
}

impl ComplexMap {
    pub fn new(source: &FreeComplex, target: &FreeComplex, lo: i64, maps: Vec<Matrix>) -> Result<ComplexMap> {
        let f = ComplexMap {
            source: source.clone(),
            target: target.clone(),
            lo,
            maps,
        };
        for (k, m) in f.maps.iter().enumerate() {
            let i = lo + k as i64;
            if m.nrows != target.rank(i) || m.ncols != source.rank(i) {
                return Err(Error::Dimension(format!("f^{i} has shape {}x{}", m.nrows, m.ncols)));
            }
        }
        let r = &source.ring;
        let a = source.lo.min(target.lo) - 1;
        let b = source.hi().max(target.hi()) + 1;
        for i in a..b {
            let lhs = target.diff(i).mul(&r.poly, &f.at(i));
            let rhs = f.at(i + 1).mul(&r.poly, &source.diff(i));
            if !r.reduce_matrix(&lhs.sub(&r.poly, &rhs)).is_zero() {
                return Err(Error::InvalidMap(format!("chain map does not commute at index {i}")));
            }
        }
        Ok(f)
    }

    pub fn at(&self, i: i64) -> Matrix {
        let k = i - self.lo;
        if k >= 0 && (k as usize) < self.maps.len() {
            self.maps[k as usize].clone()
        } else {
            Matrix::zeros(self.target.rank(i), self.source.rank(i))
        }
    }

    pub fn identity(e: &FreeComplex) -> ComplexMap {
        let maps = e.ranks.iter().map(|&r| Matrix::identity(&e.ring.poly, r)).collect();
        ComplexMap {
            source: e.clone(),
            target: e.clone(),
            lo: e.lo,
            maps,
        }
    }
}

/// `C^i = Q^{i+1} ⊕ P^i` with `d = [[-d_Q, 0], [f, d_P]]` for `f: Q → P`.
pub fn mapping_cone(f: &ComplexMap) -> FreeComplex {
    let (q, p) = (&f.source, &f.target);
    let ring = &q.ring;
    let r = &ring.poly;
    let lo = (q.lo - 1).min(p.lo);
    let hi = (q.hi() - 1).max(p.hi());
    let ranks: Vec<usize> = (lo..=hi).map(|i| q.rank(i + 1) + p.rank(i)).collect();
    let diffs: Vec<Matrix> = (lo..hi)
        .map(|i| {
            let top = q.diff(i + 1).neg(r).hconcat(&Matrix::zeros(q.rank(i + 2), p.rank(i)));
            let bot = f.at(i + 1).hconcat(&p.diff(i));
            top.vconcat(&bot)
        })
        .collect();
    let degrees = match (&q.degrees, &p.degrees) {
        (Some(_), Some(_)) => Some(
            (lo..=hi)
                .map(|i| {
                    let mut v = q.degrees_at(i + 1).unwrap();
                    v.extend(p.degrees_at(i).unwrap());
                    v
                })
                .collect(),
        ),
        _ => None,
    };
    FreeComplex {
        ring: ring.clone(),
        lo,
        ranks,
        diffs,
        degrees,
    }
}

/// `τ^{≤n}`: the terms up to `E^n`, with the cycle module `ker d^n`.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub complex: FreeComplex,
    /// `ker d^n` as a submodule of `E^n`.
    pub cycles: FPModule,
    pub cycle_gens: Matrix,
}

pub fn truncate(e: &FreeComplex, n: i64) -> Truncation {
    let ring = &e.ring;
    if n < e.lo {
        return Truncation {
            complex: FreeComplex::zero(ring),
            cycles: FPModule::zero(ring),
            cycle_gens: Matrix::zeros(0, 0),
        };
    }
    let top = n.min(e.hi());
    let len = (top - e.lo + 1) as usize;
    let complex = FreeComplex {
        ring: ring.clone(),
        lo: e.lo,
        ranks: e.ranks[..len].to_vec(),
        diffs: e.diffs[..len - 1].to_vec(),
        degrees: e.degrees.as_ref().map(|g| g[..len].to_vec()),
    };
    let d = e.diff(n);
    let rank = e.rank(n);
    let gens: Vec<Vector> = if d.nrows == 0 || d.is_zero() {
        Matrix::identity(&ring.poly, rank).cols()
    } else {
        r_syzygies(ring, d.nrows, &d.cols())
    };
    let gens = Matrix::from_cols(rank, &gens);
    let (cycles, cycle_gens) = subquotient(ring, &gens, &Matrix::zeros(rank, 0), e.degrees_at(n).as_deref());
    Truncation {
        complex,
        cycles: tidy(cycles),
        cycle_gens,
    }
}

/// `E^{-i} = F_i`, so that `coker d^{-1} = M`.
pub fn resolution_complex(res: &Resolution) -> FreeComplex {
    let len = res.ranks().len();
    let lo = -(len as i64 - 1);
    let ranks: Vec<usize> = (0..len).rev().map(|i| res.rank(i)).collect();
    let diffs: Vec<Matrix> = (1..len).rev().map(|i| res.map(i)).collect();
    let degrees = res
        .degrees
        .as_ref()
        .map(|_| (0..len).rev().map(|i| res.degrees_at(i).map(|d| d.to_vec()).unwrap_or_default()).collect());
    FreeComplex {
        ring: res.ring.clone(),
        lo,
        ranks,
        diffs,
        degrees,
    }
}

/// Splices a resolution `P ↠ M` with the dual of a resolution `Q ↠ M*`
/// along `P_0 ↠ M → M** ↪ (Q_0)^*`. `dual` must be the dual of the
/// module `P` resolves, before pruning.
pub fn splice(p: &Resolution, q: &Resolution, dual: &DualData) -> FreeComplex {
    let ring = &p.ring;
    let r = &ring.poly;
    let left = resolution_complex(p);
    let right = dual_complex(&resolution_complex(q)).shift(-1);
    let d0 = dual.gens.mul(r, &q.augmentation).transpose().mul(r, &p.augmentation);
    let d0 = ring.reduce_matrix(&d0);
    let mut ranks = left.ranks.clone();
    ranks.extend(&right.ranks);
    let mut diffs = left.diffs.clone();
    diffs.push(d0);
    diffs.extend(right.diffs.iter().cloned());
    let degrees = match (&left.degrees, &right.degrees) {
        (Some(a), Some(b)) => {
            let mut v = a.clone();
            v.extend(b.iter().cloned());
            Some(v)
        }
        _ => None,
    };
    FreeComplex {
        ring: ring.clone(),
        lo: left.lo,
        ranks,
        diffs,
        degrees,
    }
}

/// Koszul cochain complex: `E^p = Λ^p R^n`, `d(e_S) = Σ_{j∉S} ± f_j e_{S∪j}`.
pub fn koszul_complex(ring: &Arc<QuotientRing>, seq: &[Poly]) -> FreeComplex {
    let n = seq.len();
    let r = &ring.poly;
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|p| crate::quotmod::subsets(n, p)).collect();
    let seq_degs: Option<Vec<i64>> = seq.iter().map(|f| ring.degree(f)).collect();
    let mut diffs = Vec::new();
    for p in 0..n {
        let (src, tgt) = (&subsets[p], &subsets[p + 1]);
        let mut d = Matrix::zeros(tgt.len(), src.len());
        for (c, s) in src.iter().enumerate() {
            for j in (0..n).filter(|j| !s.contains(j)) {
                let mut t = s.clone();
                t.push(j);
                t.sort();
                let row = tgt.iter().position(|x| *x == t).unwrap();
                let sign = s.iter().filter(|&&i| i < j).count() % 2;
                let f = if sign == 1 { r.neg(&seq[j]) } else { seq[j].clone() };
                d.set(row, c, ring.reduce(&f));
            }
        }
        diffs.push(d);
    }
    let degrees = seq_degs.map(|sd| {
        subsets
            .iter()
            .map(|level| level.iter().map(|s| -s.iter().map(|&j| sd[j]).sum::<i64>()).collect())
            .collect()
    });
    FreeComplex {
        ring: ring.clone(),
        lo: 0,
        ranks: subsets.iter().map(|s| s.len()).collect(),
        diffs,
        degrees,
    }
}

/// Koszul test: `H^i` of the sequence vanishes for `i` below the top.
pub fn is_regular_sequence(ring: &Arc<QuotientRing>, seq: &[Poly]) -> bool {
    let k = koszul_complex(ring, seq);
    (0..seq.len() as i64).all(|i| k.cohomology(i).is_zero())
}

/// Regularity of the image of `seq` in the fibre of `h` over `point`.
pub fn is_regular_sequence_on_fibre(seq: &[Poly], h: &RingMap, point: &[Coeff]) -> Result<bool> {
    let map = fibre_map(h, point)?;
    let images: Vec<Poly> = seq.iter().map(|f| map.apply(f)).collect();
    Ok(is_regular_sequence(&map.target, &images))
}

/// `Ext^i(M, N)` for every `i` in `indices`, from one resolution of `M`.
pub fn ext_from_resolution(res: &Resolution, n: &FPModule, indices: &[usize]) -> Result<Vec<FPModule>> {
    let ring = &res.ring;
    let r = &ring.poly;
    let p = n.ngens();
    let top = indices.iter().copied().max().unwrap_or(0);
    if !res.complete && res.length() < top + 1 {
        return Err(Error::Window(format!("Ext^{top} needs a resolution of length {}, have {}", top + 1, res.length())));
    }
    let ip = Matrix::identity(r, p);
    // Hom(F_j, N) = N^{b_j}, coordinates ordered as vec of a p × b_j matrix
    let rel = |j: usize| Matrix::identity(r, res.rank(j)).kron(r, &n.pres);
    let alpha = |j: usize| res.map(j + 1).transpose().kron(r, &ip);
    let degs = |j: usize| -> Option<Vec<i64>> {
        let a = res.degrees_at(j)?;
        let c = n.gen_degrees()?;
        Some(a.iter().flat_map(|aj| c.iter().map(move |ck| ck - aj)).collect())
    };
    let mut out = Vec::new();
    for &i in indices {
        let prev = if i == 0 { Matrix::zeros(p * res.rank(0), 0) } else { alpha(i - 1) };
        out.push(homology_at(ring, &prev, &alpha(i), &rel(i), &rel(i + 1), degs(i).as_deref()));
    }
    Ok(out)
}

pub fn ext(m: &FPModule, n: &FPModule, i: usize) -> Result<FPModule> {
    let res = free_resolution(m, i + 1);
    Ok(ext_from_resolution(&res, n, &[i])?.remove(0))
}

/// `Ext^i(M, N)` for `i = 0..=top`.
pub fn ext_table(m: &FPModule, n: &FPModule, top: usize) -> Result<Vec<FPModule>> {
    let res = free_resolution(m, top + 1);
    ext_from_resolution(&res, n, &(0..=top).collect::<Vec<_>>())
}

/// `Hom(M, N) = Ext^0(M, N)`.
pub fn hom_module(m: &FPModule, n: &FPModule) -> FPModule {
    ext(m, n, 0).expect("length one resolution suffices")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    Exact(usize),
    AtLeast(usize),
}

/// First `i ≤ window` with `Ext^i(k, M) ≠ 0`.
pub fn depth_at_irrelevant(m: &FPModule, window: usize) -> Result<Depth> {
    let k = FPModule::residue_field(&m.ring);
    let res = free_resolution(&k, window + 1);
    for i in 0..=window {
        if !ext_from_resolution(&res, m, &[i])?[0].is_zero() {
            return Ok(Depth::Exact(i));
        }
    }
    Ok(Depth::AtLeast(window + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Field, MonomialOrder, PolyRing};

    fn ring(vars: &[&str], rel: &[&str]) -> Arc<QuotientRing> {
        let p = Arc::new(PolyRing::new(Field::Rationals, vars, MonomialOrder::DegRevLex).unwrap());
        let gens: Vec<_> = rel.iter().map(|s| p.parse(s).unwrap()).collect();
        QuotientRing::auto(p, &gens)
    }

    #[test]
    fn koszul_on_regular_and_nonregular_sequences() {
        let p = ring(&["x", "y"], &[]);
        let k = koszul_complex(&p, &p.variables());
        assert_eq!(k.ranks, vec![1, 2, 1]);
        assert!(k.cohomology(0).is_zero());
        assert!(k.cohomology(1).is_zero());
        assert_eq!(k.cohomology(2).hilbert_series().unwrap().to_string(), "t^-2");
        let a = ring(&["x", "y"], &["x*y"]);
        let k = koszul_complex(&a, &a.variables());
        assert!(!k.cohomology(1).is_zero());
        assert!(!is_regular_sequence(&a, &a.variables()));
        assert!(is_regular_sequence(&a, &[a.parse("x + y").unwrap()]));
        assert!(is_regular_sequence(&a, &[]));
    }

    #[test]
    fn node_ext_table() {
        let a = ring(&["x", "y"], &["x*y"]);
        let k = FPModule::residue_field(&a);
        let table = ext_table(&k, &FPModule::free(&a, 1), 6).unwrap();
        let zero: Vec<bool> = table.iter().map(|e| e.is_zero()).collect();
        assert_eq!(zero, vec![true, false, true, true, true, true, true]);
        assert_eq!(table[1].hilbert_series().unwrap().to_string(), "1");
    }

    #[test]
    fn ext_zero_of_free_is_power_of_target() {
        let a = ring(&["x", "y"], &["x*y"]);
        let m = FPModule::free(&a, 2);
        let n = FPModule::cyclic(&a, &[a.parse("x").unwrap()]);
        let h = hom_module(&m, &n);
        assert_eq!(h.hilbert_series().unwrap(), n.direct_sum(&n).hilbert_series().unwrap());
    }

    #[test]
    fn depths() {
        let a = ring(&["x", "y"], &["x*y"]);
        assert_eq!(depth_at_irrelevant(&FPModule::free(&a, 1), 3).unwrap(), Depth::Exact(1));
        let q = ring(&["x", "y", "u", "v"], &["x*y - u*v"]);
        assert_eq!(depth_at_irrelevant(&FPModule::free(&q, 1), 3).unwrap(), Depth::Exact(3));
    }

    #[test]
    fn dual_convention_and_double_dual() {
        let a = ring(&["x", "y"], &[]);
        let d = Matrix::parse(&a.poly, &[vec!["x", "y"]]).unwrap();
        let e = FreeComplex::new(&a, 0, vec![2, 1], vec![d.clone()], None).unwrap();
        let dual = dual_complex(&e);
        assert_eq!((dual.lo, dual.hi()), (0, 1));
        assert_eq!(dual.ranks, vec![1, 2]);
        assert_eq!(dual.diff(0), d.transpose());
        assert!(dual_complex(&dual).equals(&e));
        assert!(dual_complex(&FreeComplex::zero(&a)).is_zero());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let p = ring(&["x", "y"], &[]);
        let k = koszul_complex(&p, &p.variables());
        let c = mapping_cone(&ComplexMap::new(&k, &k, k.lo, ComplexMap::identity(&k).maps).unwrap());
        assert!(FreeComplex::new(&p, c.lo, c.ranks.clone(), c.diffs.clone(), None).is_ok());
        for i in c.lo..=c.hi() {
            assert!(c.cohomology(i).is_zero(), "H^{i}");
        }
    }

    #[test]
    fn truncation_of_koszul_gives_syzygy() {
        let p = ring(&["x", "y"], &[]);
        let k = koszul_complex(&p, &p.variables());
        let t = truncate(&k, 1);
        assert_eq!(t.complex.ranks, vec![1, 2]);
        // ker d^1 is the rank one free module spanned by (-y, x)
        assert_eq!(t.cycles.ngens(), 1);
        assert!(t.cycles.nrels() == 0);
        assert!(truncate(&k, 2).complex.equals(&k));
        assert!(truncate(&k, -1).complex.is_zero());
    }

    #[test]
    fn zero_differentials_give_free_cohomology() {
        let a = ring(&["x"], &[]);
        let e = FreeComplex::new(&a, 0, vec![2, 3], vec![Matrix::zeros(3, 2)], None).unwrap();
        assert_eq!(e.cohomology(0).ngens(), 2);
        assert_eq!(e.cohomology(1).ngens(), 3);
        assert!(e.cohomology(1).nrels() == 0);
    }
}
