//! Approximation sequences `0 → L → M → N → 0` and `0 → N → L' → M' → 0`
//! built from a mapping cone, plus the lifting and extension operations
//! they support.
//!
//! Given a free resolution `P → N`, a free complex `Q` is built degree by
//! degree together with a chain map `f: Q → P^∨` so that the cone `C(f)`
//! has `H^i(C) = 0` for `i ≤ n+1`. Dualising `Q` gives the row
//! `… → (Q^3)^* → (Q^2)^* → (Q^1)^* → (Q^0)^* → (Q^{-1})^* → …` and
//! `L = coker d^{-2}`, `M = ker d^0`, `L' = coker d^{-1}`, `M' = ker d^1`.

use std::sync::Arc;

use crate::complexes::{dual_complex, is_regular_sequence, mapping_cone, resolution_complex, ComplexMap, FreeComplex};
use crate::error::{Error, Result};
use crate::groebner::{is_zero_vector, Vector};
use crate::matrix::Matrix;
use crate::polyring::{Coeff, Poly};
use crate::quotmod::{
    dual_module, fibre_map, free_resolution, hom_lift, is_exact_at, prune_generators, r_lift, r_lift_many, r_syzygies,
    section_ideal_gens, solve_hom_equation, subquotient, syzygy, vector_degree, FPModule, Ideal, ModuleHom, QuotientRing,
    RingMap,
};
use crate::reflexivity::{describe, is_n_stably_reflexive, Certificate, Verdict};

/// `0 → left --inc--> middle --proj--> right → 0`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub left: FPModule,
    pub middle: FPModule,
    pub right: FPModule,
    pub inc: Matrix,
    pub proj: Matrix,
}

impl ShortExact {
    pub fn inc_hom(&self) -> ModuleHom {
        ModuleHom::new_unchecked(&self.left, &self.middle, self.inc.clone())
    }

    pub fn proj_hom(&self) -> ModuleHom {
        ModuleHom::new_unchecked(&self.middle, &self.right, self.proj.clone())
    }

    /// Well-definedness of both maps and exactness at all three spots.
    pub fn check(&self, cert: &mut Certificate, name: &str) {
        let wd = ModuleHom::new(&self.left, &self.middle, self.inc.clone()).is_ok()
            && ModuleHom::new(&self.middle, &self.right, self.proj.clone()).is_ok();
        cert.push("well-defined", name, Verdict::from_bool(wd), "relations map into relations");
        if !wd {
            return;
        }
        let (i, p) = (self.inc_hom(), self.proj_hom());
        let (k, _) = i.kernel();
        cert.push("exact", format!("{name}: left"), Verdict::from_bool(k.is_zero()), format!("kernel {}", describe(&k)));
        cert.push("exact", format!("{name}: middle"), Verdict::from_bool(is_exact_at(&i, &p)), "ker proj = im inc");
        let c = p.cokernel();
        cert.push("exact", format!("{name}: right"), Verdict::from_bool(c.is_zero()), format!("cokernel {}", describe(&c)));
    }

    pub fn base_change(&self, map: &RingMap) -> Result<ShortExact> {
        Ok(ShortExact {
            left: self.left.base_change(map)?,
            middle: self.middle.base_change(map)?,
            right: self.right.base_change(map)?,
            inc: map.apply_matrix(&self.inc),
            proj: map.apply_matrix(&self.proj),
        })
    }
}

/// The diagram attached to a pointed family: the column
/// `0 → I* → F* → (ΩI)* → 0` next to `seq_b`, and the boxed square
/// `I* → F*, I* → S, F* → L', S → L'`.
#[derive(Clone, Debug)]
pub struct BoxDiagram {
    /// Generators of `I = ker(σ)`.
    pub ideal: Vec<Poly>,
    pub column: ShortExact,
}

#[derive(Clone, Debug)]
pub struct ApproximationResult {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    /// `0 → L → M → N → 0`.
    pub seq_a: ShortExact,
    /// `0 → N → L' → M' → 0`.
    pub seq_b: ShortExact,
    pub q: Option<FreeComplex>,
    pub cone: Option<FreeComplex>,
    pub diagram: Option<BoxDiagram>,
    pub certificate: Certificate,
}

impl ApproximationResult {
    pub fn module(&self) -> &FPModule {
        &self.seq_a.right
    }

    /// `π: M → N`.
    pub fn projection(&self) -> ModuleHom {
        self.seq_a.proj_hom()
    }

    /// `N → L'`.
    pub fn coprojection(&self) -> ModuleHom {
        self.seq_b.inc_hom()
    }
}

fn kernel_of(ring: &Arc<QuotientRing>, d: &Matrix, degrees: Option<&[i64]>) -> (FPModule, Matrix) {
    let n = d.ncols;
    let gens: Vec<Vector> = if d.nrows == 0 || d.is_zero() {
        Matrix::identity(&ring.poly, n).cols()
    } else {
        r_syzygies(ring, d.nrows, &d.cols())
    };
    subquotient(ring, &Matrix::from_cols(n, &gens), &Matrix::zeros(n, 0), degrees)
}

fn coker_of(ring: &Arc<QuotientRing>, d: &Matrix, degrees: Option<Vec<i64>>) -> FPModule {
    match degrees {
        Some(g) => FPModule::auto(ring, d.clone(), Some(g)),
        None => FPModule::new(ring, d.clone(), None).expect("shapes agree"),
    }
}

fn negate(v: &Option<Vec<i64>>) -> Option<Vec<i64>> {
    v.as_ref().map(|g| g.iter().map(|x| -x).collect())
}

/// Columns of `vs` written in terms of `gens` (which must span them).
fn coordinates(ring: &QuotientRing, rank: usize, vs: &[Vector], gens: &Matrix) -> Result<Matrix> {
    if vs.is_empty() {
        return Ok(Matrix::zeros(gens.ncols, 0));
    }
    if gens.ncols == 0 {
        if vs.iter().all(|v| v.iter().all(|p| ring.is_zero(p))) {
            return Ok(Matrix::zeros(0, vs.len()));
        }
        return Err(Error::InvalidMap("vector outside the span of the generators".into()));
    }
    let sol = r_lift_many(ring, rank, vs, &gens.cols()).ok_or_else(|| Error::InvalidMap("vector outside the span of the generators".into()))?;
    Ok(Matrix::from_cols(gens.ncols, &sol))
}

fn membership(cert: &mut Certificate, name: &str, m: &FPModule, bound: usize) {
    let res = free_resolution(m, bound + 1);
    match res.projective_dimension() {
        Some(p) => cert.push(
            "projective-dimension",
            name,
            Verdict::from_bool(p <= bound),
            format!("pdim {p}, bound {bound}, Betti {:?}", res.ranks()),
        ),
        None => cert.push("projective-dimension", name, Verdict::Fails, format!("resolution longer than {bound}")),
    }
}

fn stable(cert: &mut Certificate, name: &str, m: &FPModule, level: usize) -> Result<()> {
    if level == 0 {
        cert.push("stably-reflexive", name, Verdict::Holds, "level 0 imposes nothing");
        return Ok(());
    }
    let sub = is_n_stably_reflexive(m, level)?;
    cert.absorb(sub, &format!("{name} at level {level}"));
    Ok(())
}

/// The two approximation sequences of `N` for `Ω^n N` being
/// `(r+n)`-stably reflexive. With `minimal` and graded input every
/// choice is minimal.
pub fn approximate(m: &FPModule, n: usize, r: usize, minimal: bool) -> Result<ApproximationResult> {
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    let ring = m.ring.clone();
    let poly = ring.poly.clone();
    let mut cert = Certificate::new(r + n);
    let om = syzygy(m, n);
    let hyp = is_n_stably_reflexive(&om, r + n)?;
    if !hyp.holds() {
        return Err(Error::Precondition(format!("Omega^{n} N is not {}-stably reflexive", r + n)));
    }
    cert.absorb(hyp, &format!("hypothesis Omega^{n} N"));

    let p = free_resolution(m, n + 1);
    let pd = dual_complex(&resolution_complex(&p));
    let graded = pd.degrees.is_some();
    let top = n as i64 + 1;
    let bottom = (-1i64).min(1 - r as i64);

    // Q^i with d_Q^i: Q^i → Q^{i+1} and f^i: Q^i → (P^∨)^i, built downwards
    let count = (top - bottom + 1) as usize;
    let idx = |i: i64| (i - bottom) as usize;
    let mut rank = vec![0usize; count + 1];
    let mut dq: Vec<Matrix> = vec![Matrix::zeros(0, 0); count + 1];
    let mut fq: Vec<Matrix> = vec![Matrix::zeros(0, 0); count + 1];
    let mut qdeg: Vec<Vec<i64>> = vec![Vec::new(); count + 1];
    let mut graded_q = graded;
    let qr = |rank: &Vec<usize>, i: i64| if i > top || i < bottom { 0 } else { rank[idx(i)] };
    for i in (bottom..=top).rev() {
        let (a, b) = (qr(&rank, i + 1), pd.rank(i));
        // d_C^i on C^i = Q^{i+1} ⊕ (P^∨)^i
        let a2 = qr(&rank, i + 2);
        let b2 = pd.rank(i + 1);
        let dq_next = if i < top { dq[idx(i + 1)].clone() } else { Matrix::zeros(a2, a) };
        let fq_next = if i < top { fq[idx(i + 1)].clone() } else { Matrix::zeros(b2, a) };
        let d_top = dq_next.neg(&poly).hconcat(&Matrix::zeros(a2, b));
        let d_bot = fq_next.hconcat(&pd.diff(i));
        let dc = d_top.vconcat(&d_bot);
        let cycles: Vec<Vector> = if dc.nrows == 0 || dc.is_zero() {
            Matrix::identity(&poly, a + b).cols()
        } else {
            r_syzygies(&ring, dc.nrows, &dc.cols())
        };
        // boundaries already present: d_C^{i-1} on (P^∨)^{i-1}
        let fixed: Vec<Vector> = pd
            .diff(i - 1)
            .cols()
            .into_iter()
            .map(|c| {
                let mut v = vec![Poly::zero(); a];
                v.extend(c);
                v
            })
            .collect();
        let cdeg: Option<Vec<i64>> = graded_q.then(|| {
            let mut v = if i < top { qdeg[idx(i + 1)].clone() } else { Vec::new() };
            v.extend(pd.degrees_at(i).unwrap_or_default());
            v
        });
        let degs: Option<Vec<i64>> = cdeg.as_ref().and_then(|c| cycles.iter().map(|v| vector_degree(&ring, v, c)).collect());
        if graded_q && degs.is_none() {
            graded_q = false;
        }
        let keep: Vec<usize> = if minimal {
            prune_generators(&ring, a + b, &cycles, &fixed, degs.as_deref())
        } else {
            let gb = crate::quotmod::submodule_gb(&ring, a + b, &fixed);
            (0..cycles.len()).filter(|&k| !is_zero_vector(&cycles[k]) && !gb.contains(&cycles[k])).collect()
        };
        let k = keep.len();
        let gens: Vec<&Vector> = keep.iter().map(|&j| &cycles[j]).collect();
        let dcols: Vec<Vector> = gens.iter().map(|v| v[..a].iter().map(|p| poly.neg(p)).collect()).collect();
        let fcols: Vec<Vector> = gens.iter().map(|v| v[a..].to_vec()).collect();
        rank[idx(i)] = k;
        dq[idx(i)] = Matrix::from_cols(a, &dcols);
        fq[idx(i)] = Matrix::from_cols(b, &fcols);
        if let Some(d) = &degs {
            qdeg[idx(i)] = keep.iter().map(|&j| d[j]).collect();
        }
    }

    let ranks: Vec<usize> = (bottom..=top).map(|i| rank[idx(i)]).collect();
    let diffs: Vec<Matrix> = (bottom..top).map(|i| dq[idx(i)].clone()).collect();
    let degrees = graded_q.then(|| (bottom..=top).map(|i| qdeg[idx(i)].clone()).collect());
    let q = FreeComplex::new(&ring, bottom, ranks, diffs, degrees)?;
    let fmaps: Vec<Matrix> = (bottom..=top).map(|i| fq[idx(i)].clone()).collect();
    let pd = if graded_q { pd } else { FreeComplex { degrees: None, ..pd } };
    let f = ComplexMap::new(&q, &pd, bottom, fmaps)?;
    let cone = mapping_cone(&f);

    if graded_q && minimal {
        let unit = q.diffs.iter().any(|d| d.entries.iter().any(|e| !e.is_zero() && e.is_constant()));
        cert.push("minimal", "Q", Verdict::from_bool(!unit), "no unit entries in the differentials of Q");
    }

    // the dual row
    let qd = |i: i64| negate(&q.degrees_at(i));
    let d_m2 = q.diff(2).transpose();
    let d_m1 = q.diff(1).transpose();
    let d_0 = q.diff(0).transpose();
    let d_1 = q.diff(-1).transpose();
    let l = coker_of(&ring, &d_m2, qd(2));
    let lp = coker_of(&ring, &d_m1, qd(1));
    let (mm, kgen) = kernel_of(&ring, &d_0, qd(1).as_deref());
    let (mp, kpgen) = kernel_of(&ring, &d_1, qd(0).as_deref());

    let iota = coordinates(&ring, q.rank(1), &d_m1.cols(), &kgen)?;
    let p_map = coordinates(&ring, q.rank(0), &d_0.cols(), &kpgen)?;
    let f1t = f.at(1).transpose();
    let b0 = p.rank(0);
    let span = f1t.hconcat(&d_m1);
    let mut pi_cols = Vec::new();
    for c in kgen.cols() {
        let x = r_lift(&ring, q.rank(1), &c, &span.cols()).ok_or_else(|| Error::InvalidMap("M does not map onto N".into()))?;
        pi_cols.push(p.augmentation.mul_vec(&poly, &x[..b0]));
    }
    let pi = Matrix::from_cols(m.ngens(), &pi_cols);
    let j = ring.reduce_matrix(&f1t.mul(&poly, &p.coaugmentation));

    let seq_a = ShortExact {
        left: l,
        middle: mm,
        right: m.clone(),
        inc: ring.reduce_matrix(&iota),
        proj: ring.reduce_matrix(&pi),
    };
    let seq_b = ShortExact {
        left: m.clone(),
        middle: lp,
        right: mp,
        inc: j,
        proj: ring.reduce_matrix(&p_map),
    };
    let mut result = ApproximationResult {
        n,
        r,
        s: n + 1,
        seq_a,
        seq_b,
        q: Some(q),
        cone: Some(cone),
        diagram: None,
        certificate: Certificate::new(r + n),
    };
    cert.absorb(verify(&result, None)?, "");
    result.certificate = cert;
    Ok(result)
}

/// Re-checks exactness and memberships from scratch, optionally after a
/// base change, along with the cone vanishing when a cone is present.
pub fn verify(res: &ApproximationResult, base_change: Option<&RingMap>) -> Result<Certificate> {
    let mut cert = Certificate::new(res.r + res.n);
    let (a, b) = match base_change {
        Some(map) => (res.seq_a.base_change(map)?, res.seq_b.base_change(map)?),
        None => (res.seq_a.clone(), res.seq_b.clone()),
    };
    a.check(&mut cert, "0 -> L -> M -> N -> 0");
    b.check(&mut cert, "0 -> N -> L' -> M' -> 0");
    membership(&mut cert, "L", &a.left, res.s.saturating_sub(2));
    membership(&mut cert, "L'", &b.middle, res.s.saturating_sub(1));
    stable(&mut cert, "M", &a.middle, res.r)?;
    stable(&mut cert, "M'", &b.right, res.r - 1)?;
    if let (None, Some(c)) = (base_change, &res.cone) {
        for i in c.lo + 1..=(res.n as i64 + 1).min(c.hi()) {
            let h = c.cohomology(i);
            cert.push("cone-cohomology", format!("H^{i}(C)"), Verdict::from_bool(h.is_zero()), describe(&h));
        }
        let cd = dual_complex(c);
        for i in cd.lo + 1..=(res.r as i64).min(cd.hi() - 1) {
            let h = cd.cohomology(i);
            cert.push("cone-cohomology", format!("H^{i}(C^v)"), Verdict::from_bool(h.is_zero()), describe(&h));
        }
    }
    if let Some(d) = &res.diagram {
        let col = match base_change {
            Some(map) => d.column.base_change(map)?,
            None => d.column.clone(),
        };
        col.check(&mut cert, "0 -> I* -> F* -> (Omega I)* -> 0");
        square(&mut cert, &col, &a, &b);
    }
    Ok(cert)
}

/// Lifts `φ: M₁ → N` through `π: M → N`. Needs `s ≤ r` so that
/// `Ext^1(M₁, L)` vanishes, and `M₁` certified `r`-stably reflexive.
pub fn lift_through(phi: &ModuleHom, res: &ApproximationResult) -> Result<Option<ModuleHom>> {
    if res.s > res.r {
        return Err(Error::Precondition(format!(
            "s = {} exceeds r = {}: Ext^i(M1, L) is only known to vanish for 0 < i < r - pdim L = {}",
            res.s,
            res.r,
            res.r as i64 - (res.s as i64 - 2)
        )));
    }
    if phi.target.ngens() != res.module().ngens() || phi.target.pres != res.module().pres {
        return Err(Error::InvalidMap("the map must land in N".into()));
    }
    let cert = is_n_stably_reflexive(&phi.source, res.r)?;
    if !cert.holds() {
        return Err(Error::Precondition(format!("M1 is not {}-stably reflexive", res.r)));
    }
    Ok(hom_lift(phi, &res.projection()))
}

/// Extends `ι: N → L₁` along `N → L'`. Needs `s ≤ r - 2` and `L₁` of
/// projective dimension at most `s - 1`.
pub fn coapprox_extend(iota: &ModuleHom, res: &ApproximationResult) -> Result<Option<ModuleHom>> {
    if res.s + 2 > res.r {
        return Err(Error::Precondition(format!("s = {} exceeds r - 2 = {}", res.s, res.r as i64 - 2)));
    }
    if iota.source.ngens() != res.module().ngens() || iota.source.pres != res.module().pres {
        return Err(Error::InvalidMap("the map must start at N".into()));
    }
    let l1 = &iota.target;
    let bound = res.s - 1;
    match free_resolution(l1, bound + 1).projective_dimension() {
        Some(p) if p <= bound => {}
        _ => return Err(Error::Precondition(format!("target is not certified of projective dimension at most {bound}"))),
    }
    let ring = &l1.ring;
    let lp = &res.seq_b.middle;
    let ident = Matrix::identity(&ring.poly, l1.ngens());
    let x = solve_hom_equation(ring, &ident, &res.seq_b.inc, &iota.matrix, &l1.pres, &lp.pres, &l1.pres);
    Ok(x.map(|x| ModuleHom::new_unchecked(lp, l1, ring.reduce_matrix(&x))))
}

/// The boxed square is cocartesian: `I* → F* ⊕ S → L' → 0` is exact.
fn square(cert: &mut Certificate, col: &ShortExact, a: &ShortExact, b: &ShortExact) {
    let ring = &col.left.ring;
    let r = &ring.poly;
    let sum = col.middle.direct_sum(&a.right);
    let alpha = col.inc.vconcat(&a.proj.neg(r));
    let beta = Matrix::identity(r, col.middle.ngens()).hconcat(&b.inc);
    let (Ok(al), Ok(be)) = (ModuleHom::new(&col.left, &sum, alpha), ModuleHom::new(&sum, &b.middle, beta)) else {
        cert.push("cocartesian", "box", Verdict::Fails, "square maps not well defined");
        return;
    };
    let ok = is_exact_at(&al, &be) && be.is_surjective();
    cert.push("cocartesian", "box", Verdict::from_bool(ok), "I* -> F* + S -> L' -> 0 exact");
}

/// The pointed case: for a section `σ` of `h: S → R` with Gorenstein
/// one-dimensional closed fibre, `I = ker σ` gives `0 → R → I* → S → 0`
/// and `0 → S → L' → (ΩI)* → 0` with `L' = coker(R → I* → F*)`.
pub fn pointed_approximation(h: &RingMap, section: &RingMap) -> Result<ApproximationResult> {
    let ring = h.target.clone();
    let poly = ring.poly.clone();
    let gens = section_ideal_gens(h, section)?;
    let zero = vec![Coeff::Small(0); h.source.nvars()];
    let fm = fibre_map(h, &zero)?;
    let fib = &fm.target;
    let mut cert = Certificate::new(2);
    if fib.dim() != 1 {
        return Err(Error::Precondition(format!("closed fibre has dimension {}, expected 1", fib.dim())));
    }
    let ci = is_regular_sequence(&QuotientRing::polynomial(fib.poly.clone()), &fib.ideal_gens());
    if !ci {
        return Err(Error::Precondition("closed fibre has no complete-intersection witness".into()));
    }
    cert.push("gorenstein-fibre", fib.to_string(), Verdict::Holds, "dimension 1, complete intersection");

    let ideal = FPModule::ideal(&ring, &gens);
    let k = gens.len();
    let dual = dual_module(&ideal);
    let i_dual = dual.module.clone();
    // R → I*: 1 ↦ the inclusion I ⊂ R
    let incl = coordinates(&ring, k, std::slice::from_ref(&gens), &dual.gens)?;
    let unit = FPModule::free_graded(&ring, vec![0]);
    let unit = if ring.is_graded() && i_dual.is_graded() { unit } else { FPModule::free(&ring, 1) };
    let s_mod = coker_of(&ring, &incl.hconcat(&i_dual.pres), i_dual.gen_degrees().map(|g| g.to_vec()));
    let pruned = s_mod.minimal_presentation().module;
    let fitt = pruned.fitting_ideal(0);
    let target = Ideal::new(&ring, gens.clone());
    let same = pruned.ngens() == 1 && fitt.gens.iter().all(|g| target.contains(g)) && gens.iter().all(|g| fitt.contains(g));
    cert.push("cokernel-is-S", "I*/R", Verdict::from_bool(same), "cyclic with Fitt_0 = I");

    // F = R^k → I; F* ⊃ I* via the evaluation columns
    let fdeg = negate(&ideal.gen_degrees().map(|g| g.to_vec()));
    let f_dual = match &fdeg {
        Some(d) if ring.is_graded() => FPModule::free_graded(&ring, d.clone()),
        _ => FPModule::free(&ring, k),
    };
    let gcol = Matrix::from_cols(k, std::slice::from_ref(&gens));
    let lp = coker_of(&ring, &gcol, fdeg.clone());
    // ΩI ⊂ F and its dual; F* → (ΩI)* restricts
    let z = Matrix::from_cols(k, &r_syzygies(&ring, 1, &gens.iter().map(|g| vec![g.clone()]).collect::<Vec<_>>()));
    let (omega, zk) = subquotient(&ring, &z, &Matrix::zeros(k, 0), ideal.gen_degrees());
    let od = dual_module(&omega);
    let restrict = coordinates(&ring, zk.ncols, &zk.transpose().cols(), &od.gens)?;
    let sd = s_mod.clone();
    let seq_a = ShortExact {
        left: unit,
        middle: i_dual.clone(),
        right: sd.clone(),
        inc: incl,
        proj: Matrix::identity(&poly, i_dual.ngens()),
    };
    let seq_b = ShortExact {
        left: sd,
        middle: lp,
        right: od.module.clone(),
        inc: dual.gens.clone(),
        proj: restrict.clone(),
    };
    let column = ShortExact {
        left: i_dual,
        middle: f_dual,
        right: od.module,
        inc: dual.gens,
        proj: restrict,
    };
    let mut result = ApproximationResult {
        n: 1,
        r: 2,
        s: 2,
        seq_a,
        seq_b,
        q: None,
        cone: None,
        diagram: Some(BoxDiagram { ideal: gens, column }),
        certificate: Certificate::new(2),
    };
    cert.absorb(verify(&result, None)?, "");
    result.certificate = cert;
    Ok(result)
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

    fn failures(c: &Certificate) -> Vec<String> {
        c.witnesses
            .iter()
            .filter(|w| w.verdict != Verdict::Holds)
            .map(|w| format!("{} {} {}", w.check, w.subject, w.detail))
            .collect()
    }

    #[test]
    fn residue_field_of_the_node() {
        let a = ring(&["x", "y"], &["x*y"]);
        let k = FPModule::residue_field(&a);
        let res = approximate(&k, 1, 2, true).unwrap();
        assert!(res.certificate.holds(), "{:?}", failures(&res.certificate));
        let l = &res.seq_a.left;
        assert_eq!((l.ngens(), l.nrels()), (1, 0));
        let mstar = dual_module(&FPModule::ideal(&a, &a.variables())).module;
        assert_eq!(res.seq_a.middle.hilbert_series().unwrap(), mstar.hilbert_series().unwrap());
        assert_eq!(res.seq_b.middle.ngens(), 2);
        assert_eq!(res.seq_b.middle.minimal_presentation().module.nrels(), 1);
    }

    #[test]
    fn stably_reflexive_input_needs_no_correction() {
        let a = ring(&["x", "y"], &["x*y"]);
        let m = FPModule::ideal(&a, &a.variables());
        let res = approximate(&m, 0, 2, true).unwrap();
        assert!(res.certificate.holds(), "{:?}", failures(&res.certificate));
        assert!(res.seq_a.left.is_zero());
        assert!(res.seq_a.proj_hom().is_iso());
    }

    #[test]
    fn corrupted_sequence_fails() {
        let a = ring(&["x", "y"], &["x*y"]);
        let k = FPModule::residue_field(&a);
        let mut res = approximate(&k, 1, 2, true).unwrap();
        res.seq_a.inc = Matrix::zeros(res.seq_a.inc.nrows, res.seq_a.inc.ncols);
        assert!(!verify(&res, None).unwrap().holds());
    }

    #[test]
    fn pointed_knudsen_family_specialises() {
        let s = ring(&["b", "c"], &[]);
        let r = ring(&["b", "c", "x", "y"], &["x*y - b*c"]);
        let rp = &r.poly;
        let h = RingMap::new(s.clone(), r.clone(), vec![rp.parse("b").unwrap(), rp.parse("c").unwrap()]).unwrap();
        let sp = &s.poly;
        let sec = RingMap::new(r.clone(), s.clone(), ["b", "c", "b", "c"].iter().map(|v| sp.parse(v).unwrap()).collect()).unwrap();
        let res = pointed_approximation(&h, &sec).unwrap();
        assert!(res.certificate.holds(), "{:?}", failures(&res.certificate));
        let at = fibre_map(&h, &[Coeff::Small(1), Coeff::Small(1)]).unwrap();
        let cert = verify(&res, Some(&at)).unwrap();
        assert!(cert.holds(), "{:?}", failures(&cert));
    }

    #[test]
    fn maps_into_k_lift_through_m_star() {
        let a = ring(&["x", "y"], &["x*y"]);
        let k = FPModule::residue_field(&a);
        let res = approximate(&k, 1, 2, true).unwrap();
        let m = FPModule::ideal(&a, &a.variables());
        let p = &a.poly;
        for row in [["1", "0"], ["0", "1"], ["1", "1"]] {
            let mat = Matrix::parse(p, &[row.to_vec()]).unwrap();
            let phi = ModuleHom::new(&m, &k, mat).unwrap();
            let psi = lift_through(&phi, &res).unwrap().expect("lift exists");
            assert!(psi.then(&res.projection()).equals(&phi));
        }
        let back = lift_through(&res.projection(), &res).unwrap().unwrap();
        assert!(back.then(&res.projection()).equals(&res.projection()));
    }

    #[test]
    fn lifting_refuses_when_s_exceeds_r() {
        let a = ring(&["x", "y"], &["x*y"]);
        let k = FPModule::residue_field(&a);
        let res = approximate(&k, 2, 1, true).unwrap();
        let phi = ModuleHom::identity(&k);
        assert!(matches!(lift_through(&phi, &res), Err(Error::Precondition(_))));
    }

    #[test]
    fn coprojection_extends_to_the_identity() {
        let a = ring(&["x", "y"], &["x*y"]);
        let k = FPModule::residue_field(&a);
        let res = approximate(&k, 1, 4, true).unwrap();
        let j = res.coprojection();
        let ext = coapprox_extend(&j, &res).unwrap().expect("extension exists");
        assert!(j.then(&ext).equals(&j));
        let zero = ModuleHom::zero(&k, &res.seq_b.middle);
        let ext0 = coapprox_extend(&zero, &res).unwrap().unwrap();
        assert!(zero.then(&ext0).is_zero());
        let short = approximate(&k, 1, 2, true).unwrap();
        assert!(coapprox_extend(&short.coprojection(), &short).is_err());
    }
}
