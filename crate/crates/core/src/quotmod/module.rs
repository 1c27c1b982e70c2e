use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{self, buchberger, is_zero_vector, GroebnerBasis, Vector};
use crate::matrix::Matrix;
use crate::polyring::{Coeff, Field, Poly};

use super::hilbert::{series_from_leads, HilbertSeries};
use super::ring::{Ideal, QuotientRing, RingMap};

/// Columns `g·e_i` for every defining generator `g` of the ring.
fn relation_columns(ring: &QuotientRing, rank: usize) -> Vec<Vector> {
    let gens = ring.ideal_gens();
    let mut out = Vec::with_capacity(gens.len() * rank);
    for i in 0..rank {
        for g in &gens {
            let mut v = groebner::zero_vector(rank);
            v[i] = g.clone();
            out.push(v);
        }
    }
    out
}

/// Gröbner basis in `P^rank` of the preimage of the submodule of `R^rank`
/// spanned by `cols`.
pub fn submodule_gb(ring: &QuotientRing, rank: usize, cols: &[Vector]) -> GroebnerBasis {
    let mut all = cols.to_vec();
    all.extend(relation_columns(ring, rank));
    buchberger(&ring.poly, rank, &all)
}

pub fn reduce_vector(ring: &QuotientRing, v: &[Poly]) -> Vector {
    v.iter().map(|p| ring.reduce(p)).collect()
}

/// Generators of the syzygies over `R` of the columns.
pub fn r_syzygies(ring: &QuotientRing, rank: usize, cols: &[Vector]) -> Vec<Vector> {
    let s = cols.len();
    let mut all = cols.to_vec();
    all.extend(relation_columns(ring, rank));
    let syz = groebner::syzygies(&ring.poly, rank, &all);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in syz {
        let w = reduce_vector(ring, &v[..s]);
        if is_zero_vector(&w) {
            continue;
        }
        if seen.insert(format!("{w:?}")) {
            out.push(w);
        }
    }
    out
}

/// Solves `Σ v_j cols_j = b` over `R`.
pub fn r_lift(ring: &QuotientRing, rank: usize, b: &[Poly], cols: &[Vector]) -> Option<Vector> {
    let s = cols.len();
    let mut all = cols.to_vec();
    all.extend(relation_columns(ring, rank));
    let v = groebner::lift(&ring.poly, rank, b, &all)?;
    Some(reduce_vector(ring, &v[..s]))
}

/// Lifts several right-hand sides against one matrix.
pub fn r_lift_many(ring: &QuotientRing, rank: usize, bs: &[Vector], cols: &[Vector]) -> Option<Vec<Vector>> {
    let s = cols.len();
    let mut all = cols.to_vec();
    all.extend(relation_columns(ring, rank));
    let gb = groebner::buchberger_tracked(&ring.poly, rank, &all);
    bs.iter()
        .map(|b| gb.lift(b).map(|v| reduce_vector(ring, &v[..s])))
        .collect()
}

/// Degree of a homogeneous vector of `⊕ R(-shift_i)`.
pub fn vector_degree(ring: &QuotientRing, v: &[Poly], shifts: &[i64]) -> Option<i64> {
    let w = ring.weights.as_ref()?;
    let mut deg = None;
    for (p, s) in v.iter().zip(shifts) {
        if p.is_zero() {
            continue;
        }
        let d = p.homogeneous_degree(w)? + s;
        match deg {
            None => deg = Some(d),
            Some(e) if e == d => {}
            _ => return None,
        }
    }
    deg
}

/// Indices of a minimal (graded) or irredundant (ungraded) subset of
/// `gens` that together with `fixed` spans the same submodule.
pub fn prune_generators(ring: &QuotientRing, rank: usize, gens: &[Vector], fixed: &[Vector], degrees: Option<&[i64]>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..gens.len()).filter(|&i| !is_zero_vector(&gens[i])).collect();
    if let Some(d) = degrees {
        order.sort_by_key(|&i| d[i]);
    }
    let mut kept: Vec<usize> = Vec::new();
    let mut span: Vec<Vector> = fixed.to_vec();
    let mut gb = submodule_gb(ring, rank, &span);
    for &i in &order {
        if !gb.contains(&gens[i]) {
            kept.push(i);
            span.push(gens[i].clone());
            gb = submodule_gb(ring, rank, &span);
        }
    }
    if degrees.is_none() && kept.len() > 1 {
        // second pass: drop anything the others already generate
        let mut k = kept.len();
        while k > 0 {
            k -= 1;
            let mut others: Vec<Vector> = fixed.to_vec();
            others.extend(kept.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, &i)| gens[i].clone()));
            if submodule_gb(ring, rank, &others).contains(&gens[kept[k]]) {
                kept.remove(k);
            }
        }
    }
    kept.sort();
    kept
}

/// Generator and relation degrees of a graded presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub gens: Vec<i64>,
    pub rels: Vec<i64>,
}

/// `M = coker(pres: R^m → R^n)`.
#[derive(Clone, Debug)]
pub struct FPModule {
    pub ring: Arc<QuotientRing>,
    pub pres: Matrix,
    pub grading: Option<Grading>,
    /// Images of the generators in `R` when `M` is given as an ideal.
    pub embedding: Option<Vec<Poly>>,
}

impl FPModule {
    /// Builds a module, dropping zero relations. With `gen_degrees` on a
    /// graded ring the relation degrees are inferred and checked.
    pub fn new(ring: &Arc<QuotientRing>, pres: Matrix, gen_degrees: Option<Vec<i64>>) -> Result<FPModule> {
        let pres = ring.reduce_matrix(&pres);
        let keep: Vec<Vector> = pres.cols().into_iter().filter(|c| !is_zero_vector(c)).collect();
        let pres = Matrix::from_cols(pres.nrows, &keep);
        let grading = match gen_degrees {
            Some(g) => {
                if g.len() != pres.nrows {
                    return Err(Error::LengthMismatch {
                        expected: pres.nrows,
                        got: g.len(),
                    });
                }
                if !ring.is_graded() {
                    return Err(Error::NotGraded("ring has no grading".into()));
                }
                let mut rels = Vec::new();
                for (j, c) in keep.iter().enumerate() {
                    match vector_degree(ring, c, &g) {
                        Some(d) => rels.push(d),
                        None => return Err(Error::NotGraded(format!("relation {j} is not homogeneous"))),
                    }
                }
                Some(Grading { gens: g, rels })
            }
            None => None,
        };
        Ok(FPModule {
            ring: ring.clone(),
            pres,
            grading,
            embedding: None,
        })
    }

    /// Graded with the given generator degrees when possible, else ungraded.
    pub fn auto(ring: &Arc<QuotientRing>, pres: Matrix, gen_degrees: Option<Vec<i64>>) -> FPModule {
        let n = pres.nrows;
        let g = gen_degrees.unwrap_or_else(|| vec![0; n]);
        if ring.is_graded() {
            if let Ok(m) = FPModule::new(ring, pres.clone(), Some(g)) {
                return m;
            }
        }
        FPModule::new(ring, pres, None).expect("ungraded construction cannot fail")
    }

    pub fn free(ring: &Arc<QuotientRing>, rank: usize) -> FPModule {
        Self::free_graded(ring, vec![0; rank])
    }

    pub fn free_graded(ring: &Arc<QuotientRing>, degrees: Vec<i64>) -> FPModule {
        let pres = Matrix::zeros(degrees.len(), 0);
        let grading = ring.is_graded().then(|| Grading { gens: degrees, rels: vec![] });
        FPModule {
            ring: ring.clone(),
            pres,
            grading,
            embedding: None,
        }
    }

    pub fn zero(ring: &Arc<QuotientRing>) -> FPModule {
        FPModule::free(ring, 0)
    }

    /// `R / (gens)`.
    pub fn cyclic(ring: &Arc<QuotientRing>, gens: &[Poly]) -> FPModule {
        let pres = Matrix::from_rows(vec![gens.to_vec()]);
        FPModule::auto(ring, pres, None)
    }

    /// `R / (x_1, …, x_n)`, the residue field at the origin.
    pub fn residue_field(ring: &Arc<QuotientRing>) -> FPModule {
        FPModule::cyclic(ring, &ring.variables())
    }

    /// The ideal generated by `gens`, as a module presented by its syzygies.
    pub fn ideal(ring: &Arc<QuotientRing>, gens: &[Poly]) -> FPModule {
        let gens: Vec<Poly> = gens.iter().map(|g| ring.reduce(g)).filter(|g| !g.is_zero()).collect();
        let cols: Vec<Vector> = gens.iter().map(|g| vec![g.clone()]).collect();
        let syz = r_syzygies(ring, 1, &cols);
        let pres = Matrix::from_cols(gens.len(), &syz);
        let degs: Option<Vec<i64>> = gens.iter().map(|g| ring.degree(g)).collect();
        let mut m = FPModule::auto(ring, pres, degs);
        m.embedding = Some(gens);
        m
    }

    pub fn ngens(&self) -> usize {
        self.pres.nrows
    }

    pub fn nrels(&self) -> usize {
        self.pres.ncols
    }

    pub fn is_graded(&self) -> bool {
        self.grading.is_some()
    }

    pub fn gen_degrees(&self) -> Option<&[i64]> {
        self.grading.as_ref().map(|g| g.gens.as_slice())
    }

    /// Relations as generators of a submodule of `R^n`.
    pub fn relation_gb(&self) -> GroebnerBasis {
        submodule_gb(&self.ring, self.ngens(), &self.pres.cols())
    }

    /// Exact zero test: every generator lies in the relation span.
    pub fn is_zero(&self) -> bool {
        self.ngens() == 0 || self.relation_gb().is_everything()
    }

    /// Whether `v ∈ R^n` maps to zero in `M`.
    pub fn is_zero_element(&self, v: &[Poly]) -> bool {
        self.relation_gb().contains(v)
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        let g = self.grading.as_ref().ok_or_else(|| Error::NotGraded("module has no grading".into()))?;
        let w = self.ring.weights.as_ref().unwrap();
        let gb = self.relation_gb();
        Ok(series_from_leads(gb.lead_terms(), &g.gens, w))
    }

    /// Shifts every degree by `d`: `M(-d)`.
    pub fn shifted(&self, d: i64) -> FPModule {
        let mut m = self.clone();
        if let Some(g) = &mut m.grading {
            g.gens.iter_mut().for_each(|x| *x += d);
            g.rels.iter_mut().for_each(|x| *x += d);
        }
        m
    }

    pub fn direct_sum(&self, other: &FPModule) -> FPModule {
        let pres = self.pres.direct_sum(&other.pres);
        let grading = match (&self.grading, &other.grading) {
            (Some(a), Some(b)) => Some(Grading {
                gens: a.gens.iter().chain(&b.gens).copied().collect(),
                rels: a.rels.iter().chain(&b.rels).copied().collect(),
            }),
            _ => None,
        };
        FPModule {
            ring: self.ring.clone(),
            pres,
            grading,
            embedding: None,
        }
    }

    /// Removes unit entries and redundant relations. Returns the new module
    /// and the change of generators in both directions.
    pub fn minimal_presentation(&self) -> Pruned {
        let ring = &self.ring;
        let r = &ring.poly;
        let f = ring.field();
        let mut d = self.pres.clone();
        let mut to_old = Matrix::identity(r, self.ngens());
        let mut to_new = Matrix::identity(r, self.ngens());
        let mut degs = self.gen_degrees().map(|g| g.to_vec());
        loop {
            let mut hit = None;
            'search: for j in 0..d.ncols {
                for i in 0..d.nrows {
                    let e = d.get(i, j);
                    if !e.is_zero() && e.is_constant() {
                        hit = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((i, j)) = hit else { break };
            let u = d.get(i, j).terms[0].1.clone();
            let uinv = f.inv(&u);
            // e_i = -(1/u) Σ_{k≠i} d_kj e_k in M
            let col_j = d.col(j);
            let mut nd = d.clone();
            for l in 0..d.ncols {
                if l == j || d.get(i, l).is_zero() {
                    continue;
                }
                let factor = r.scale(d.get(i, l), &uinv);
                for k in 0..d.nrows {
                    let v = r.sub(d.get(k, l), &r.mul(&factor, &col_j[k]));
                    nd.set(k, l, ring.reduce(&v));
                }
            }
            let rows: Vec<usize> = (0..d.nrows).filter(|&k| k != i).collect();
            let cols: Vec<usize> = (0..d.ncols).filter(|&l| l != j).collect();
            // old generator e_i in terms of the remaining ones
            let mut express = Matrix::zeros(rows.len(), d.nrows);
            for (a, &k) in rows.iter().enumerate() {
                express.set(a, k, r.one());
                express.set(a, i, ring.reduce(&r.neg(&r.scale(&col_j[k], &uinv))));
            }
            to_new = express.mul(r, &to_new).map(|p| ring.reduce(p));
            let keep_rows = Matrix::identity(r, d.nrows).submatrix(&(0..d.nrows).collect::<Vec<_>>(), &rows);
            to_old = to_old.mul(r, &keep_rows);
            d = nd.submatrix(&rows, &cols);
            if let Some(g) = &mut degs {
                g.remove(i);
            }
        }
        let cols = d.cols();
        let rel_degs: Option<Vec<i64>> = degs.as_ref().and_then(|g| cols.iter().map(|c| vector_degree(ring, c, g)).collect());
        let keep = prune_generators(ring, d.nrows, &cols, &[], rel_degs.as_deref());
        let kept: Vec<Vector> = keep.iter().map(|&k| cols[k].clone()).collect();
        let pres = Matrix::from_cols(d.nrows, &kept);
        let module = match degs {
            Some(g) if self.is_graded() => FPModule::new(ring, pres.clone(), Some(g)).unwrap_or_else(|_| FPModule::new(ring, pres, None).unwrap()),
            _ => FPModule::new(ring, pres, None).unwrap(),
        };
        Pruned { module, to_new, to_old }
    }

    /// `dim_k (M ⊗ k)` at the origin: generators minus the rank of the
    /// constant part of the presentation.
    pub fn minimal_generator_count(&self) -> usize {
        let rows: Vec<Vec<Coeff>> = (0..self.pres.nrows)
            .map(|i| (0..self.pres.ncols).map(|j| self.pres.get(i, j).constant_term()).collect())
            .collect();
        self.ngens() - constant_rank(self.ring.field(), rows)
    }

    /// Ideal of `(n - i)`-minors of the presentation.
    pub fn fitting_ideal(&self, i: usize) -> Ideal {
        let n = self.ngens();
        if i >= n {
            return Ideal::unit(&self.ring);
        }
        let k = n - i;
        if k > self.nrels() {
            return Ideal::zero(&self.ring);
        }
        let r = &self.ring.poly;
        let mut minors = Vec::new();
        for rows in subsets(n, k) {
            for cols in subsets(self.nrels(), k) {
                let m = self.ring.reduce(&self.pres.minor(r, &rows, &cols));
                if !m.is_zero() {
                    minors.push(m);
                }
            }
        }
        Ideal::new(&self.ring, minors)
    }

    /// Transfers the module along a ring map.
    pub fn base_change(&self, map: &RingMap) -> Result<FPModule> {
        if *map.source != *self.ring {
            return Err(Error::RingMismatch("module does not live on the map's source".into()));
        }
        let pres = map.apply_matrix(&self.pres);
        let m = match self.gen_degrees() {
            Some(g) if map.target.is_graded() => FPModule::auto(&map.target, pres, Some(g.to_vec())),
            _ => FPModule::new(&map.target, pres, None)?,
        };
        Ok(FPModule {
            embedding: self.embedding.as_ref().map(|e| e.iter().map(|p| map.apply(p)).collect()),
            ..m
        })
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.pres.to_strings(&self.ring.poly)
    }
}

/// Result of [`FPModule::minimal_presentation`]: `to_new` expresses the old
/// generators in the new ones, `to_old` the new ones in the old ones.
#[derive(Clone, Debug)]
pub struct Pruned {
    pub module: FPModule,
    pub to_new: Matrix,
    pub to_old: Matrix,
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Rank of a matrix of field elements.
pub fn constant_rank(field: Field, mut rows: Vec<Vec<Coeff>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = field.inv(&rows[rank][c]);
        for r in 0..nrows {
            if r != rank && !rows[r][c].is_zero() {
                let factor = field.mul(&rows[r][c], &inv);
                for k in c..ncols {
                    let v = field.sub(&rows[r][k], &field.mul(&factor, &rows[rank][k]));
                    rows[r][k] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Submodule of `R^n` generated by `gens`, modulo the span of `rels`.
/// Zero generators are dropped; the kept generator matrix is returned too.
pub fn subquotient(ring: &Arc<QuotientRing>, gens: &Matrix, rels: &Matrix, ambient_degrees: Option<&[i64]>) -> (FPModule, Matrix) {
    let n = gens.nrows;
    let gcols: Vec<Vector> = gens.cols().into_iter().map(|c| reduce_vector(ring, &c)).filter(|c| !is_zero_vector(c)).collect();
    let k = gcols.len();
    let g = Matrix::from_cols(n, &gcols);
    let mut all = gcols.clone();
    all.extend(rels.cols());
    let syz = r_syzygies(ring, n, &all);
    let proj: Vec<Vector> = syz.iter().map(|v| v[..k].to_vec()).collect();
    let pres = Matrix::from_cols(k, &proj);
    let degs: Option<Vec<i64>> = ambient_degrees.and_then(|a| gcols.iter().map(|c| vector_degree(ring, c, a)).collect());
    let m = match degs {
        Some(d) => FPModule::new(ring, pres.clone(), Some(d)).unwrap_or_else(|_| FPModule::new(ring, pres, None).unwrap()),
        None => FPModule::new(ring, pres, None).unwrap(),
    };
    (m, g)
}

/// Homomorphism given on generators: column `j` is the image of `e_j`.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    pub source: FPModule,
    pub target: FPModule,
    pub matrix: Matrix,
}

impl ModuleHom {
    /// Checks that relations of the source map into relations of the target.
    pub fn new(source: &FPModule, target: &FPModule, matrix: Matrix) -> Result<ModuleHom> {
        if matrix.nrows != target.ngens() || matrix.ncols != source.ngens() {
            return Err(Error::Dimension(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.nrows,
                matrix.ncols,
                target.ngens(),
                source.ngens()
            )));
        }
        let r = &source.ring.poly;
        let matrix = source.ring.reduce_matrix(&matrix);
        let image = matrix.mul(r, &source.pres);
        let gb = target.relation_gb();
        for (j, c) in image.cols().iter().enumerate() {
            if !gb.contains(c) {
                return Err(Error::InvalidMap(format!("relation {j} does not map into the target relations")));
            }
        }
        Ok(ModuleHom {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn new_unchecked(source: &FPModule, target: &FPModule, matrix: Matrix) -> ModuleHom {
        ModuleHom {
            source: source.clone(),
            target: target.clone(),
            matrix,
        }
    }

    pub fn identity(m: &FPModule) -> ModuleHom {
        ModuleHom::new_unchecked(m, m, Matrix::identity(&m.ring.poly, m.ngens()))
    }

    pub fn zero(source: &FPModule, target: &FPModule) -> ModuleHom {
        ModuleHom::new_unchecked(source, target, Matrix::zeros(target.ngens(), source.ngens()))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleHom) -> ModuleHom {
        let r = &self.source.ring.poly;
        let m = other.matrix.mul(r, &self.matrix);
        ModuleHom::new_unchecked(&self.source, &other.target, self.source.ring.reduce_matrix(&m))
    }

    /// Whether the two maps agree as maps of modules.
    pub fn equals(&self, other: &ModuleHom) -> bool {
        let r = &self.source.ring.poly;
        let diff = self.matrix.sub(r, &other.matrix);
        let gb = self.target.relation_gb();
        diff.cols().iter().all(|c| gb.contains(c))
    }

    pub fn is_zero(&self) -> bool {
        let gb = self.target.relation_gb();
        self.matrix.cols().iter().all(|c| gb.contains(c))
    }

    /// Preimage generators: vectors of `R^n` mapping into the target relations.
    fn preimage_generators(&self) -> Matrix {
        let t = &self.target;
        if t.ngens() == 0 {
            return Matrix::identity(&self.source.ring.poly, self.source.ngens());
        }
        let mut all = self.matrix.cols();
        all.extend(t.pres.cols());
        let syz = r_syzygies(&self.source.ring, t.ngens(), &all);
        let n = self.source.ngens();
        let cols: Vec<Vector> = syz.iter().map(|v| v[..n].to_vec()).collect();
        Matrix::from_cols(n, &cols)
    }

    /// Kernel with its inclusion matrix into the source generators.
    pub fn kernel(&self) -> (FPModule, Matrix) {
        let pre = self.preimage_generators();
        subquotient(&self.source.ring, &pre, &self.source.pres, self.source.gen_degrees())
    }

    pub fn image(&self) -> FPModule {
        subquotient(&self.target.ring, &self.matrix, &self.target.pres, self.target.gen_degrees()).0
    }

    pub fn cokernel(&self) -> FPModule {
        let pres = self.matrix.hconcat(&self.target.pres);
        match self.target.gen_degrees() {
            Some(g) => FPModule::auto(&self.target.ring, pres, Some(g.to_vec())),
            None => FPModule::new(&self.target.ring, pres, None).unwrap(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Exactness of `A --f--> B --g--> C` at `B`.
pub fn is_exact_at(f: &ModuleHom, g: &ModuleHom) -> bool {
    if !f.then(g).is_zero() {
        return false;
    }
    let (_, inc) = g.kernel();
    let mut span = f.matrix.cols();
    span.extend(g.source.pres.cols());
    let gb = submodule_gb(&g.source.ring, g.source.ngens(), &span);
    inc.cols().iter().all(|c| gb.contains(c))
}

/// Solves for `X` (r×c) with `A X B ≡ W` modulo the columns of `D` and
/// `X E` in the column span of `F`. All congruences are columnwise.
#[allow(clippy::too_many_arguments)]
pub fn solve_hom_equation(ring: &QuotientRing, a: &Matrix, b: &Matrix, w: &Matrix, d: &Matrix, e: &Matrix, f: &Matrix) -> Option<Matrix> {
    let r = &ring.poly;
    let (rr, cc) = (a.ncols, b.nrows);
    let (p, k) = (w.nrows, w.ncols);
    let q = d.ncols;
    let (ee, ff) = (e.ncols, f.ncols);
    // unknowns: vec X (rr*cc), vec Y (q*k), vec Z (ff*ee)
    let top_x = b.transpose().kron(r, a);
    let top_y = Matrix::identity(r, k).kron(r, d).neg(r);
    let bot_x = e.transpose().kron(r, &Matrix::identity(r, rr));
    let bot_z = Matrix::identity(r, ee).kron(r, f).neg(r);
    let top = top_x.hconcat(&top_y).hconcat(&Matrix::zeros(p * k, ff * ee));
    let bot = bot_x.hconcat(&Matrix::zeros(rr * ee, q * k)).hconcat(&bot_z);
    let big = top.vconcat(&bot);
    let mut rhs = w.vec();
    rhs.extend(std::iter::repeat_n(Poly::zero(), rr * ee));
    let sol = r_lift(ring, big.nrows, &rhs, &big.cols())?;
    Some(Matrix::unvec(rr, cc, &sol[..rr * cc]))
}

/// A lift `ψ: M₁ → M` with `π ∘ ψ = φ`, if one exists.
pub fn hom_lift(phi: &ModuleHom, pi: &ModuleHom) -> Option<ModuleHom> {
    let ring = &phi.source.ring;
    let m1 = &phi.source;
    let m = &pi.source;
    let n = &pi.target;
    let ident = Matrix::identity(&ring.poly, m1.ngens());
    let x = solve_hom_equation(ring, &pi.matrix, &ident, &phi.matrix, &n.pres, &m1.pres, &m.pres)?;
    Some(ModuleHom::new_unchecked(m1, m, x))
}

/// `M* = Hom(M, R)` together with the evaluation data: column `l` of
/// `gens` lists `φ_l(e_i)` for the generators `e_i` of `M`.
#[derive(Clone, Debug)]
pub struct DualData {
    pub module: FPModule,
    pub gens: Matrix,
}

pub fn dual_module(m: &FPModule) -> DualData {
    let ring = &m.ring;
    let n = m.ngens();
    let r = &ring.poly;
    let dt = m.pres.transpose();
    let amb: Option<Vec<i64>> = m.gen_degrees().map(|g| g.iter().map(|x| -x).collect());
    let kcols: Vec<Vector> = if m.nrels() == 0 {
        Matrix::identity(r, n).cols()
    } else {
        r_syzygies(ring, m.nrels(), &dt.cols())
    };
    let kdegs: Option<Vec<i64>> = amb.as_ref().and_then(|a| kcols.iter().map(|c| vector_degree(ring, c, a)).collect());
    let keep = prune_generators(ring, n, &kcols, &[], kdegs.as_deref());
    let kcols: Vec<Vector> = keep.iter().map(|&i| kcols[i].clone()).collect();
    let k = Matrix::from_cols(n, &kcols);
    let (module, k) = subquotient(ring, &k, &Matrix::zeros(n, 0), amb.as_deref());
    DualData { module, gens: k }
}

/// `D(M) = coker(dᵗ)` for the stored presentation `d`.
pub fn transpose(m: &FPModule) -> FPModule {
    let dt = m.pres.transpose();
    let degs: Option<Vec<i64>> = m.grading.as_ref().map(|g| g.rels.iter().map(|x| -x).collect());
    match degs {
        Some(d) => FPModule::auto(&m.ring, dt, Some(d)),
        None => FPModule::new(&m.ring, dt, None).unwrap(),
    }
}

/// `σ_M: M → M**` with its kernel and cokernel.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub dual: DualData,
    pub double_dual: DualData,
    /// `σ` as a map into the ambient free module of `M**`.
    pub sigma: Matrix,
    pub kernel: FPModule,
    pub cokernel: FPModule,
}

pub fn evaluation_map(m: &FPModule) -> Evaluation {
    let ring = &m.ring;
    let dual = dual_module(m);
    let dd = dual_module(&dual.module);
    let sigma = dual.gens.transpose();
    let k = sigma.nrows;
    let pre: Vec<Vector> = if k == 0 {
        Matrix::identity(&ring.poly, m.ngens()).cols()
    } else {
        r_syzygies(ring, k, &sigma.cols())
    };
    let pre = Matrix::from_cols(m.ngens(), &pre);
    let (kernel, _) = subquotient(ring, &pre, &m.pres, m.gen_degrees());
    let amb: Option<Vec<i64>> = dual.module.gen_degrees().map(|g| g.iter().map(|x| -x).collect());
    let (cok_sub, _) = subquotient(ring, &dd.gens, &sigma, amb.as_deref());
    Evaluation {
        dual,
        double_dual: dd,
        sigma,
        kernel,
        cokernel: cok_sub,
    }
}

/// Ideal generated by `φ(u)` for `φ ∈ M*` and `u ∈ M`, for `M` given as an ideal.
pub fn pairing_image(m: &FPModule) -> Result<Ideal> {
    if m.embedding.is_none() {
        return Err(Error::Precondition("pairing image needs the module given as an ideal".into()));
    }
    let dual = dual_module(m);
    Ok(Ideal::new(&m.ring, dual.gens.entries.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{MonomialOrder, PolyRing};

    fn node() -> Arc<QuotientRing> {
        let p = Arc::new(PolyRing::new(Field::Rationals, &["x", "y"], MonomialOrder::DegRevLex).unwrap());
        QuotientRing::auto(p.clone(), &[p.parse("x*y").unwrap()])
    }

    #[test]
    fn node_ideal_syzygies() {
        // over Q[x,y]/(xy) the relations of (x, y) are (y, 0) and (0, x)
        let a = node();
        let cols = vec![vec![a.poly.parse("x").unwrap()], vec![a.poly.parse("y").unwrap()]];
        let syz = r_syzygies(&a, 1, &cols);
        for v in &syz {
            let g = a.reduce(&a.poly.add(&a.poly.mul(&v[0], &cols[0][0]), &a.poly.mul(&v[1], &cols[1][0])));
            assert!(g.is_zero());
        }
        let want = vec![vec![a.poly.parse("y").unwrap(), a.poly.zero()], vec![a.poly.zero(), a.poly.parse("x").unwrap()]];
        assert_eq!(submodule_gb(&a, 2, &syz).elems, submodule_gb(&a, 2, &want).elems);
    }

    #[test]
    fn node_maximal_ideal_dual() {
        let a = node();
        let m = FPModule::ideal(&a, &a.variables());
        let d = dual_module(&m);
        assert_eq!(d.module.ngens(), 2);
        let img = pairing_image(&m).unwrap();
        assert_eq!(img, Ideal::maximal_at_origin(&a));
        let ev = evaluation_map(&m);
        assert!(ev.kernel.is_zero());
        assert!(ev.cokernel.is_zero());
    }

    #[test]
    fn residue_field_is_not_torsionless() {
        let a = node();
        let k = FPModule::residue_field(&a);
        let d = dual_module(&k);
        assert!(d.module.is_zero());
        let ev = evaluation_map(&k);
        assert_eq!(ev.kernel.hilbert_series().unwrap().to_string(), "1");
    }

    #[test]
    fn node_hilbert_series() {
        let a = node();
        let h = FPModule::free(&a, 1).hilbert_series().unwrap();
        assert_eq!(h.to_string(), "(1 + t)/(1 - t)");
        assert_eq!(FPModule::residue_field(&a).hilbert_series().unwrap().to_string(), "1");
    }

    #[test]
    fn minimal_presentation_removes_units() {
        let a = node();
        let r = &a.poly;
        let pres = Matrix::from_rows(vec![vec![r.one(), r.parse("x").unwrap()], vec![r.parse("y").unwrap(), r.zero()]]);
        let m = FPModule::auto(&a, pres, None);
        let p = m.minimal_presentation();
        assert_eq!(p.module.ngens(), 1);
        assert_eq!(m.minimal_generator_count(), 1);
    }

    #[test]
    fn fitting_of_cyclic() {
        let p = Arc::new(PolyRing::new(Field::Rationals, &["b", "c"], MonomialOrder::DegRevLex).unwrap());
        let s = QuotientRing::polynomial(p.clone());
        let m = FPModule::cyclic(&s, &s.variables());
        assert_eq!(m.fitting_ideal(0), Ideal::new(&s, s.variables()));
        assert!(m.fitting_ideal(1).is_unit());
    }
}
