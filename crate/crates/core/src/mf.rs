//! Matrix factorizations, their 2-periodic complexes, and the factorization
//! attached to a pointed plane-curve family.

use std::sync::Arc;

use crate::complexes::{is_regular_sequence_on_fibre, FreeComplex};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::polyring::{Coeff, Poly, PolyRing};
use crate::quotmod::{r_syzygies, submodule_gb, FPModule, QuotientRing, RingMap};
use crate::reflexivity::{Certificate, Verdict};

/// `(Φ, Ψ)` with `ΦΨ = ΨΦ = F·Id` over the ambient ring `T`.
#[derive(Clone, Debug)]
pub struct MatrixFactorization {
    pub ambient: Arc<QuotientRing>,
    pub f: Poly,
    pub phi: Matrix,
    pub psi: Matrix,
}

fn check_product(t: &QuotientRing, a: &Matrix, b: &Matrix, f: &Poly, label: &str) -> Result<()> {
    let prod = a.mul(&t.poly, b);
    for i in 0..prod.nrows {
        for j in 0..prod.ncols {
            let want = if i == j { f.clone() } else { Poly::zero() };
            let diff = t.reduce(&t.poly.sub(prod.get(i, j), &want));
            if !diff.is_zero() {
                return Err(Error::NotAFactorization {
                    row: i,
                    col: j,
                    detail: format!("{label} entry is {}", t.format(&t.reduce(prod.get(i, j)))),
                });
            }
        }
    }
    Ok(())
}

impl MatrixFactorization {
    /// Validates both products.
    pub fn new(ambient: &Arc<QuotientRing>, phi: Matrix, psi: Matrix, f: Poly) -> Result<MatrixFactorization> {
        let n = phi.nrows;
        if phi.ncols != n || psi.nrows != n || psi.ncols != n {
            return Err(Error::Dimension(format!(
                "factorization needs square matrices of one size, got {}x{} and {}x{}",
                phi.nrows, phi.ncols, psi.nrows, psi.ncols
            )));
        }
        check_product(ambient, &phi, &psi, &f, "PhiPsi")?;
        check_product(ambient, &psi, &phi, &f, "PsiPhi")?;
        Ok(MatrixFactorization {
            ambient: ambient.clone(),
            f,
            phi,
            psi,
        })
    }

    pub fn size(&self) -> usize {
        self.phi.nrows
    }

    /// `(Φᵗ, Ψᵗ)`, again a factorization of `F`.
    pub fn transpose(&self) -> MatrixFactorization {
        MatrixFactorization {
            ambient: self.ambient.clone(),
            f: self.f.clone(),
            phi: self.phi.transpose(),
            psi: self.psi.transpose(),
        }
    }

    /// `det Φ · det Ψ = F^size`.
    pub fn determinant_identity(&self) -> bool {
        let r = &self.ambient.poly;
        let lhs = r.mul(&self.phi.det(r), &self.psi.det(r));
        let rhs = r.pow(&self.f, self.size() as u32);
        self.ambient.reduce(&r.sub(&lhs, &rhs)).is_zero()
    }

    /// Exact test that `F` is a nonzerodivisor on `T`: its annihilator is zero.
    pub fn f_is_nonzerodivisor(&self) -> bool {
        let t = &self.ambient;
        let f = t.reduce(&self.f);
        !f.is_zero() && r_syzygies(t, 1, &[vec![f]]).is_empty()
    }

    /// `R = T/(F)`.
    pub fn quotient_ring(&self) -> Result<Arc<QuotientRing>> {
        let t = &self.ambient;
        let mut gens = t.ideal_gens();
        gens.push(self.f.clone());
        match &t.weights {
            Some(w) => Ok(QuotientRing::with_weights_if_homogeneous(t.poly.clone(), &gens, w.clone())),
            None => QuotientRing::new(t.poly.clone(), &gens, None),
        }
    }

    /// `coker Φ` as a module over `R`.
    pub fn cokernel(&self) -> Result<FPModule> {
        let r = self.quotient_ring()?;
        Ok(FPModule::auto(&r, self.phi.clone(), None))
    }
}

/// The 2-periodic complex on a window, with its certificate.
#[derive(Clone, Debug)]
pub struct TwoPeriodic {
    pub complex: FreeComplex,
    pub certificate: Certificate,
}

/// `C(Φ, Ψ)` over `T/(F)` on `[lo, hi]`: `d^i = Φ` for odd `i`, `Ψ` for even
/// `i`, so that `coker d^{-1} = coker Φ`. Acyclicity in every degree follows
/// from the two identities once `F` is a nonzerodivisor on `T`; the window's
/// cohomology is computed as well.
pub fn two_periodic(mf: &MatrixFactorization, lo: i64, hi: i64) -> Result<TwoPeriodic> {
    if hi < lo {
        return Err(Error::Window(format!("empty window [{lo}, {hi}]")));
    }
    let r = mf.quotient_ring()?;
    let n = mf.size();
    let diffs: Vec<Matrix> = (lo..hi).map(|i| if i.rem_euclid(2) == 1 { mf.phi.clone() } else { mf.psi.clone() }).collect();
    let complex = FreeComplex::new(&r, lo, vec![n; (hi - lo + 1) as usize], diffs, None)?;
    let mut cert = Certificate::new((hi - lo) as usize);
    cert.push("factorization", "PhiPsi = PsiPhi = F Id", Verdict::Holds, "checked entrywise");
    let nzd = mf.f_is_nonzerodivisor();
    cert.push(
        "periodicity",
        "F nonzerodivisor on the ambient ring",
        Verdict::from_bool(nzd),
        if nzd { "annihilator of F is zero; acyclic in all degrees" } else { "F annihilated by a nonzero element" },
    );
    for i in lo..=hi {
        if complex.is_edge(i) {
            continue;
        }
        let h = complex.cohomology(i);
        cert.push("cohomology", format!("H^{i}"), Verdict::from_bool(h.is_zero()), crate::reflexivity::describe(&h));
    }
    Ok(TwoPeriodic { complex, certificate: cert })
}

/// Fibre-regularity of `F`: its image in `T_s` is a regular element at
/// every sampled point.
pub fn fibre_regularity(mf: &MatrixFactorization, h: &RingMap, points: &[Vec<Coeff>]) -> Result<Certificate> {
    let mut cert = Certificate::new(1);
    for pt in points {
        let label: Vec<String> = pt.iter().map(|c| c.to_string()).collect();
        let ok = is_regular_sequence_on_fibre(std::slice::from_ref(&mf.f), h, pt)?;
        cert.push("fibre-regular", format!("({})", label.join(",")), Verdict::from_bool(ok), "Koszul test on the image of F");
        cert.sampled_points.push(label);
    }
    Ok(cert)
}

/// Exact quotient of `a` by `x_var - c`, where `c` does not involve `x_var`.
pub fn divide_by_linear(ring: &PolyRing, a: &Poly, var: usize, c: &Poly) -> Option<Poly> {
    if c.support_vars().contains(&var) {
        return None;
    }
    // coefficients of a as a polynomial in x_var
    let top = a.terms.iter().map(|(m, _)| m.0[var] as usize).max().unwrap_or(0);
    let mut coeffs = vec![Poly::zero(); top + 1];
    for (m, k) in &a.terms {
        let e = m.0[var] as usize;
        let mut m2 = m.clone();
        m2.0[var] = 0;
        coeffs[e] = ring.add(&coeffs[e], &ring.term(k.clone(), m2));
    }
    if top == 0 {
        return coeffs[0].is_zero().then(Poly::zero);
    }
    // synthetic division: q_{k-1} = a_k + c q_k
    let mut q = vec![Poly::zero(); top];
    q[top - 1] = coeffs[top].clone();
    for k in (1..top).rev() {
        q[k - 1] = ring.add(&coeffs[k], &ring.mul(c, &q[k]));
    }
    let rem = ring.add(&coeffs[0], &ring.mul(c, &q[0]));
    if !rem.is_zero() {
        return None;
    }
    let x = ring.var(var);
    let mut out = Poly::zero();
    for qk in q.iter().rev() {
        out = ring.add(&ring.mul(&out, &x), qk);
    }
    Some(out)
}

/// Data of a pointed plane-curve family `S → R = S[x₁,x₂]/(F) → S`.
#[derive(Clone, Debug)]
pub struct PlaneCurveData {
    pub h: RingMap,
    pub section: RingMap,
    pub f: Poly,
    /// Indices of `x₁, x₂` among the variables of `R`.
    pub fibre_vars: [usize; 2],
    /// `X_i = x_i - section(x_i)`.
    pub x: [Poly; 2],
    pub g: [Poly; 2],
    pub mf: MatrixFactorization,
}

impl PlaneCurveData {
    /// The ideal `I_R = (X₁, X₂)` of the section.
    pub fn section_ideal(&self) -> FPModule {
        FPModule::ideal(&self.h.target, &self.x)
    }

    /// `coker Φ ≅ I_R`: the columns of `Φ` span the syzygies of `(X₁, X₂)`.
    pub fn cokernel_is_section_ideal(&self) -> bool {
        let r = &self.h.target;
        let cols = vec![vec![self.x[0].clone()], vec![self.x[1].clone()]];
        let syz = r_syzygies(r, 1, &cols);
        let phi = r.reduce_matrix(&self.mf.phi);
        let row = Matrix::from_rows(vec![self.x.to_vec()]).mul(&r.poly, &phi);
        r.reduce_matrix(&row).is_zero() && submodule_gb(r, 2, &syz).elems == submodule_gb(r, 2, &phi.cols()).elems
    }
}

/// `X₁G₁ + X₂G₂ = F` with `G` the divided differences of `F` along the
/// section, and the factorization `Φ = [X₂ G₁; -X₁ G₂]`, `Ψ = [G₂ -G₁; X₁ X₂]`
/// over the ambient polynomial ring.
pub fn plane_curve_mf(h: &RingMap, section: &RingMap) -> Result<PlaneCurveData> {
    let r = &h.target;
    let p = &r.poly;
    let gens = r.ideal_gens();
    if gens.len() != 1 {
        return Err(Error::Precondition(format!("expected a hypersurface, got {} relations", gens.len())));
    }
    let base: Vec<usize> = h
        .images
        .iter()
        .map(|img| {
            let vars = img.support_vars();
            if vars.len() == 1 && img.len() == 1 && img.terms[0].0.degree() == 1 && img.terms[0].1.is_one() {
                Ok(vars[0])
            } else {
                Err(Error::Precondition("base variables must map to ring variables".into()))
            }
        })
        .collect::<Result<_>>()?;
    let fibre: Vec<usize> = (0..p.nvars()).filter(|i| !base.contains(i)).collect();
    if fibre.len() != 2 {
        return Err(Error::Precondition(format!("expected two fibre variables, got {}", fibre.len())));
    }
    if *section.source != **r || *section.target != *h.source {
        return Err(Error::RingMismatch("section must map R back to the base".into()));
    }
    let (i1, i2) = (fibre[0], fibre[1]);
    // the stored generator is monic for the term order; orient it by its fibre part
    let f = {
        let lead_fibre = gens[0].terms.iter().find(|(m, _)| base.iter().all(|&b| m.0[b] == 0));
        match lead_fibre {
            Some((_, k)) if k.is_negative() => p.neg(&gens[0]),
            _ => gens[0].clone(),
        }
    };
    // section(x_i) as polynomials in the base variables of P
    let to_p: Vec<Poly> = (0..h.source.nvars()).map(|j| p.var(base[j])).collect();
    let c: Vec<Poly> = [i1, i2].iter().map(|&i| h.source.poly.substitute(&section.images[i], &to_p, p)).collect();
    let x1 = p.sub(&p.var(i1), &c[0]);
    let x2 = p.sub(&p.var(i2), &c[1]);
    let mut at_c1: Vec<Poly> = (0..p.nvars()).map(|i| p.var(i)).collect();
    at_c1[i1] = c[0].clone();
    let f1 = p.substitute(&f, &at_c1, p);
    let mut at_c = at_c1.clone();
    at_c[i2] = c[1].clone();
    let f12 = p.substitute(&f, &at_c, p);
    if !f12.is_zero() {
        return Err(Error::Precondition(format!("section does not land in the curve: F(section) = {}", p.format(&f12))));
    }
    let g1 = divide_by_linear(p, &p.sub(&f, &f1), i1, &c[0]).ok_or_else(|| Error::Precondition("F not in (X1, X2)".into()))?;
    let g2 = divide_by_linear(p, &f1, i2, &c[1]).ok_or_else(|| Error::Precondition("F not in (X1, X2)".into()))?;
    let t = match &r.weights {
        Some(w) => QuotientRing::new(p.clone(), &[], Some(w.clone()))?,
        None => QuotientRing::polynomial(p.clone()),
    };
    let phi = Matrix::from_rows(vec![vec![x2.clone(), g1.clone()], vec![p.neg(&x1), g2.clone()]]);
    let psi = Matrix::from_rows(vec![vec![g2.clone(), p.neg(&g1)], vec![x1.clone(), x2.clone()]]);
    let mf = MatrixFactorization::new(&t, phi, psi, f.clone())?;
    Ok(PlaneCurveData {
        h: h.clone(),
        section: section.clone(),
        f,
        fibre_vars: [i1, i2],
        x: [x1, x2],
        g: [g1, g2],
        mf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::dual_complex;
    use crate::polyring::{Field, MonomialOrder};

    fn ring(vars: &[&str], rel: &[&str]) -> Arc<QuotientRing> {
        let p = Arc::new(PolyRing::new(Field::Rationals, vars, MonomialOrder::DegRevLex).unwrap());
        let gens: Vec<_> = rel.iter().map(|s| p.parse(s).unwrap()).collect();
        QuotientRing::auto(p, &gens)
    }

    fn m(t: &QuotientRing, rows: &[&[&str]]) -> Matrix {
        Matrix::parse(&t.poly, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn node_factorization() {
        let t = ring(&["x", "y"], &[]);
        let f = t.parse("x*y").unwrap();
        let mf = MatrixFactorization::new(&t, m(&t, &[&["y", "y"], &["-x", "0"]]), m(&t, &[&["0", "-y"], &["x", "y"]]), f.clone()).unwrap();
        assert!(mf.determinant_identity());
        assert!(mf.f_is_nonzerodivisor());
        let c = two_periodic(&mf, -4, 4).unwrap();
        assert!(c.certificate.holds(), "{:?}", c.certificate);
        let d = dual_complex(&c.complex);
        let ct = two_periodic(&mf.transpose(), -3, 5).unwrap();
        assert!(d.equals(&ct.complex));
        let bad = MatrixFactorization::new(&t, m(&t, &[&["x"]]), m(&t, &[&["x"]]), f);
        assert!(matches!(bad, Err(Error::NotAFactorization { row: 0, col: 0, .. })));
    }

    #[test]
    fn divided_differences() {
        let p = PolyRing::new(Field::Rationals, &["b", "x"], MonomialOrder::DegRevLex).unwrap();
        let a = p.parse("x^3 - b^3").unwrap();
        let q = divide_by_linear(&p, &a, 1, &p.parse("b").unwrap()).unwrap();
        assert_eq!(p.format(&q), "b^2 + b*x + x^2");
        assert!(divide_by_linear(&p, &p.parse("x^2 + 1").unwrap(), 1, &p.parse("b").unwrap()).is_none());
    }

    #[test]
    fn knudsen_example_data() {
        let s = ring(&["b", "c"], &[]);
        let r = ring(&["b", "c", "x", "y"], &["x*y - b*c"]);
        let h = RingMap::new(s.clone(), r.clone(), vec![r.parse("b").unwrap(), r.parse("c").unwrap()]).unwrap();
        let sec = RingMap::new(r.clone(), s.clone(), vec![s.parse("b").unwrap(), s.parse("c").unwrap(), s.parse("b").unwrap(), s.parse("c").unwrap()]).unwrap();
        let d = plane_curve_mf(&h, &sec).unwrap();
        let p = &r.poly;
        assert_eq!(p.format(&d.g[0]), "y");
        assert_eq!(p.format(&d.g[1]), "b");
        assert!(d.cokernel_is_section_ideal());
        let pts = vec![vec![Coeff::Small(0), Coeff::Small(0)], vec![Coeff::Small(1), Coeff::Small(1)]];
        let cover = RingMap::new(s.clone(), d.mf.ambient.clone(), h.images.clone()).unwrap();
        assert!(fibre_regularity(&d.mf, &cover, &pts).unwrap().holds());
    }

    #[test]
    fn quadratic_form_family() {
        let s = ring(&["s1", "s2"], &[]);
        let r = ring(&["s1", "s2", "x1", "x2"], &["x1^2 + 3*x1*x2 - 2*x2^2 - s1^2 - 3*s1*s2 + 2*s2^2"]);
        let h = RingMap::new(s.clone(), r.clone(), vec![r.parse("s1").unwrap(), r.parse("s2").unwrap()]).unwrap();
        let sec = RingMap::new(r.clone(), s.clone(), vec![s.parse("s1").unwrap(), s.parse("s2").unwrap(), s.parse("s1").unwrap(), s.parse("s2").unwrap()]).unwrap();
        let d = plane_curve_mf(&h, &sec).unwrap();
        let p = &r.poly;
        assert_eq!(d.g[0], p.parse("x1 + 3*x2 + s1").unwrap());
        assert_eq!(d.g[1], p.parse("-2*x2 - 2*s2 + 3*s1").unwrap());
    }
}
