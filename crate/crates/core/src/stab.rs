//! Pointed-singularity invariants, stabilization charts and versal
//! pointed families.

use std::sync::Arc;

use serde::Serialize;

use crate::approx::pointed_approximation;
use crate::complexes::is_regular_sequence_on_fibre;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, eliminate, ideal_gb, Vector};
use crate::matrix::Matrix;
use crate::mf::PlaneCurveData;
use crate::polyring::{Coeff, Monomial, Poly, PolyRing};
use crate::quotmod::{
    base_variables, constant_rank, dual_module, fibre_map, pairing_image, r_lift, r_lift_many, r_syzygies, section_ideal_gens,
    FPModule, Ideal, ModuleHom, QuotientRing, RingMap,
};
use crate::reflexivity::{relative_certificate, Certificate, Flatness, Verdict};

/// `dim_k(M ⊗ k(p))`: generators minus the rank of the presentation at `p`.
pub fn fibre_rank_at(m: &FPModule, point: &[Coeff]) -> usize {
    let p = &m.ring.poly;
    let rows: Vec<Vec<Coeff>> = (0..m.pres.nrows).map(|i| m.pres.row(i).iter().map(|e| p.evaluate(e, point)).collect()).collect();
    m.ngens() - constant_rank(p.field, rows)
}

fn same_ideal(a: &Ideal, b: &Ideal) -> bool {
    a.gens.iter().all(|g| b.contains(g)) && b.gens.iter().all(|g| a.contains(g))
}

fn origin(ring: &QuotientRing) -> Vec<Coeff> {
    vec![Coeff::Small(0); ring.nvars()]
}

/// The fractional element `ε = f/x` of a one-dimensional Gorenstein ring.
#[derive(Clone, Debug)]
pub struct Epsilon {
    /// Socle generator of `A/(x)`, as an element of `A`.
    pub f: Poly,
    /// `u ↦ f·u/x` on the variables, a map `m_A → A`.
    pub hom: ModuleHom,
    pub certificate: Certificate,
}

/// `ε = f x⁻¹` where `f` spans the socle of `A/(x)`: `ε(u)` is the
/// quotient of `f·u ∈ (x)` by `x`.
pub fn socle_epsilon(a: &Arc<QuotientRing>, x: &Poly) -> Result<Epsilon> {
    let p = &a.poly;
    if a.dim() != 1 {
        return Err(Error::Precondition(format!("ring has dimension {}, expected 1", a.dim())));
    }
    let x = a.reduce(x);
    if !x.constant_term().is_zero() {
        return Err(Error::Precondition("element must lie in the maximal ideal".into()));
    }
    if x.is_zero() || !r_syzygies(a, 1, &[vec![x.clone()]]).is_empty() {
        return Err(Error::Precondition(format!("{} is a zero divisor", a.format(&x))));
    }
    let b = Ideal::new(a, vec![x.clone()]).quotient_ring();
    let vars = a.variables();
    let socle: Vec<Poly> = r_syzygies(&b, vars.len(), std::slice::from_ref(&vars)).into_iter().map(|v| b.reduce(&v[0])).filter(|f| !f.is_zero()).collect();
    let count = |r: &QuotientRing| r.ideal.standard_monomials().map(|s| s.len());
    let total = count(&b).ok_or_else(|| Error::Precondition("A/(x) is not zero-dimensional".into()))?;
    let rest = count(&Ideal::new(&b, socle.clone()).quotient_ring()).unwrap_or(0);
    if total - rest != 1 {
        let shown: Vec<String> = socle.iter().map(|f| b.format(f)).collect();
        return Err(Error::Precondition(format!("socle of A/(x) has length {}: ({})", total - rest, shown.join(", "))));
    }
    let f = p.make_monic(&socle[0]);
    let mut values = Vec::new();
    for u in &vars {
        let fu = a.reduce(&p.mul(&f, u));
        let w = r_lift(a, 1, &[fu], &[vec![x.clone()]]).ok_or_else(|| Error::InvalidMap("f·u is not divisible by x".into()))?;
        values.push(a.reduce(&w[0]));
    }
    let m = FPModule::ideal(a, &vars);
    let hom = ModuleHom::new(&m, &FPModule::free(a, 1), Matrix::from_rows(vec![values.clone()]))?;
    let mut cert = Certificate::new(1);
    let ok = generates_modulo_inclusion(&m, &values, &vars);
    cert.push("generates", "m*/A", Verdict::from_bool(ok), "m* is spanned by the inclusion and ε");
    Ok(Epsilon { f, hom, certificate: cert })
}

/// Whether `I*` is generated by the inclusion together with the
/// homomorphism with the given values on the generators of `I`.
fn generates_modulo_inclusion(ideal: &FPModule, values: &[Poly], gens: &[Poly]) -> bool {
    let ring = &ideal.ring;
    let dual = dual_module(ideal);
    let k = gens.len();
    let Some(c) = r_lift_many(ring, k, &[gens.to_vec(), values.to_vec()], &dual.gens.cols()) else {
        return false;
    };
    let src = FPModule::free(ring, 2);
    let map = ModuleHom::new_unchecked(&src, &dual.module, Matrix::from_cols(dual.gens.ncols, &c));
    map.is_surjective()
}

#[derive(Clone, Debug)]
pub struct KnudsenReport {
    /// `I = ker σ`.
    pub ideal: Vec<Poly>,
    /// `I` stably reflexive relative to `h` at the sampled points.
    pub relative: Certificate,
    /// `I*/R` viewed over `S` and its Fitting ideals `Fitt_0, Fitt_1`.
    pub quotient: FPModule,
    pub quotient_fitting: Vec<Ideal>,
    /// Values of a generator of `I*/R` on the generators of `I`.
    pub epsilon: Vec<Poly>,
    /// `I·I*`.
    pub product: Ideal,
    /// Fitting ideals `Fitt_0..Fitt_2` of `I* ⊗_R S`.
    pub dual_fitting: Vec<Ideal>,
    /// The pairing image of the closed fibre and `dim_k(m* ⊗ k)`.
    pub pairing: Ideal,
    pub closed_rank: usize,
    pub singular: bool,
    pub certificate: Certificate,
}

/// Invariants of `I`, `I*` and `I*/R` for a section of a family with
/// one-dimensional Gorenstein closed fibre.
pub fn knudsen_invariants(h: &RingMap, section: &RingMap, points: &[Vec<Coeff>], window: usize) -> Result<KnudsenReport> {
    let ring = h.target.clone();
    let approx = pointed_approximation(h, section)?;
    let mut cert = Certificate::new(window);
    cert.absorb(approx.certificate.clone(), "pointed diagram");
    let diagram = approx.diagram.as_ref().expect("pointed runs carry the diagram");
    let gens = diagram.ideal.clone();
    let ideal = FPModule::ideal(&ring, &gens);

    let relative = relative_certificate(&ideal, h, points, window, Flatness::Witness)?;
    cert.absorb(relative.clone(), "I relative");

    // I*/R as an S-module: free of rank one
    let c = &approx.seq_a.right;
    let quotient = c.base_change(section)?;
    let qf: Vec<Ideal> = (0..2).map(|i| quotient.fitting_ideal(i)).collect();
    cert.push(
        "fitting",
        "I*/R over S",
        Verdict::from_bool(qf[0].is_zero() && qf[1].is_unit()),
        format!("Fitt_0 = ({}), Fitt_1 = ({})", qf[0].basis_strings().join(", "), qf[1].basis_strings().join(", ")),
    );

    // a dual generator that spans I*/R
    let dual = dual_module(&ideal);
    let mut epsilon = None;
    for j in 0..dual.gens.ncols {
        let col = dual.gens.col(j);
        if generates_modulo_inclusion(&ideal, &col, &gens) {
            epsilon = Some(col);
            break;
        }
    }
    let epsilon = epsilon.ok_or_else(|| Error::Precondition("no dual generator spans I*/R".into()))?;
    let shown: Vec<String> = gens.iter().zip(&epsilon).map(|(g, e)| format!("{} -> {}", ring.format(g), ring.format(e))).collect();
    cert.push("epsilon", "I*/R", Verdict::Holds, shown.join(", "));

    let product = pairing_image(&ideal)?;
    let dual_s = dual.module.base_change(section)?;
    let dual_fitting: Vec<Ideal> = (0..3).map(|i| dual_s.fitting_ideal(i)).collect();

    // closed fibre dichotomy
    let fm = fibre_map(h, &origin(&h.source))?;
    let a = fm.target.clone();
    let m_a: Vec<Poly> = gens.iter().map(|g| fm.apply(g)).collect();
    let m_mod = FPModule::ideal(&a, &m_a);
    let pairing = pairing_image(&m_mod)?;
    let pt = section_point(&fm, section, h)?;
    let closed_rank = fibre_rank_at(&dual_module(&m_mod).module, &pt);
    let singular = !pairing.is_unit();
    let maximal = Ideal::new(&a, m_a.clone());
    let dichotomy = if singular { same_ideal(&pairing, &maximal) && closed_rank == 2 } else { closed_rank == 1 };
    cert.push(
        "dichotomy",
        "closed fibre",
        Verdict::from_bool(dichotomy),
        format!(
            "{}: pairing image ({}), dim m*⊗k = {closed_rank}",
            if singular { "singular" } else { "regular" },
            pairing.basis_strings().join(", ")
        ),
    );
    Ok(KnudsenReport {
        ideal: gens,
        relative,
        quotient,
        quotient_fitting: qf,
        epsilon,
        product,
        dual_fitting,
        pairing,
        closed_rank,
        singular,
        certificate: cert,
    })
}

/// Coordinates in the closed fibre of the point picked out by the section.
fn section_point(fm: &RingMap, section: &RingMap, h: &RingMap) -> Result<Vec<Coeff>> {
    let zero = origin(&h.source);
    let sp = &h.source.poly;
    let keep: Vec<usize> = match base_variables(h) {
        Some(b) => (0..h.target.nvars()).filter(|i| !b.contains(i)).collect(),
        None => (0..h.target.nvars()).collect(),
    };
    if keep.len() != fm.target.nvars() {
        return Err(Error::Precondition("fibre variables do not match".into()));
    }
    Ok(keep.iter().map(|&i| sp.evaluate(&section.images[i], &zero)).collect())
}

/// One affine chart of `Proj Sym_R(I*)`.
#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    /// Chart ring over the ambient polynomial ring.
    pub ring: Arc<QuotientRing>,
    /// Its closed fibre.
    pub closed: Arc<QuotientRing>,
    /// The closed fibre after solving for a fibre variable, when one
    /// appears linearly with a constant coefficient.
    pub reduced: Option<Arc<QuotientRing>>,
    pub flatness: bool,
}

#[derive(Clone, Debug)]
pub struct StabilizationReport {
    /// `R[U,V]/(X₂U + G₁V, G₂V − X₁U)`.
    pub sym: Arc<QuotientRing>,
    pub charts: Vec<Chart>,
    /// The section in the `U`-chart: `(v, X₁, X₂)`.
    pub section_ideal: Ideal,
    /// `dim_k(m* ⊗ k)`: 2 when the exceptional fibre is a projective line.
    pub exceptional_rank: usize,
    /// `γ² − 4δ` when the closed fibre is a quadratic form.
    pub discriminant: Option<Coeff>,
    pub certificate: Certificate,
}

fn extend_ring(p: &PolyRing, extra: &[&str]) -> Result<Arc<PolyRing>> {
    let mut names = p.vars.clone();
    names.extend(extra.iter().map(|s| s.to_string()));
    Ok(Arc::new(PolyRing::from_names(p.field, names, p.order.clone())?))
}

fn embed(p: &PolyRing, q: &PolyRing, f: &Poly) -> Poly {
    let images: Vec<Poly> = (0..p.nvars()).map(|i| q.var(i)).collect();
    p.substitute(f, &images, q)
}

/// Solves `c·x_i + rest = 0` for a fibre variable and substitutes it into
/// the remaining generators.
fn solve_linear(p: &Arc<PolyRing>, gens: &[Poly], candidates: &[usize]) -> Option<(usize, Arc<QuotientRing>)> {
    for &v in candidates {
        for (k, g) in gens.iter().enumerate() {
            let lin: Vec<&(Monomial, Coeff)> = g.terms.iter().filter(|(m, _)| m.0[v] > 0).collect();
            if lin.len() != 1 || lin[0].0.degree() != 1 {
                continue;
            }
            let c = lin[0].1.clone();
            let rest = p.sub(g, &p.term(c.clone(), lin[0].0.clone()));
            let val = p.scale(&rest, &p.field.neg(&p.field.inv(&c)));
            let keep: Vec<usize> = (0..p.nvars()).filter(|&i| i != v).collect();
            let names: Vec<String> = keep.iter().map(|&i| p.vars[i].clone()).collect();
            let q = Arc::new(PolyRing::from_names(p.field, names, p.order.clone()).ok()?);
            let mut images = vec![q.zero(); p.nvars()];
            for (j, &i) in keep.iter().enumerate() {
                images[i] = q.var(j);
            }
            images[v] = p.substitute(&val, &images, &q);
            let others: Vec<Poly> = gens.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, g)| p.substitute(g, &images, &q)).collect();
            return Some((v, QuotientRing::auto(q, &others)));
        }
    }
    None
}

/// Local charts of `Proj Sym_R(I*) → Spec S` for a plane-curve family,
/// with their closed fibres and flatness witnesses.
pub fn stabilization(data: &PlaneCurveData) -> Result<StabilizationReport> {
    let h = &data.h;
    let r = &h.target;
    let p = &r.poly;
    let [x1, x2] = &data.x;
    let [g1, g2] = &data.g;
    let mut cert = Certificate::new(1);

    // I* ≅ coker Φᵗ through Ψᵗ
    let ideal = data.section_ideal();
    let dual = dual_module(&ideal);
    let phit = data.mf.phi.transpose();
    let psit = data.mf.psi.transpose();
    let cok = FPModule::new(r, phit.clone(), None)?;
    let iso = r_lift_many(r, 2, &psit.cols(), &dual.gens.cols())
        .map(|c| ModuleHom::new(&cok, &dual.module, Matrix::from_cols(dual.gens.ncols, &c)))
        .transpose()?
        .is_some_and(|m| m.is_iso());
    cert.push("presentation", "I* = coker Phi^t", Verdict::from_bool(iso), "Psi^t induces the isomorphism");

    let sp = extend_ring(p, &["U", "V"])?;
    let (u, v) = (sp.var(p.nvars()), sp.var(p.nvars() + 1));
    let e = |f: &Poly| embed(p, &sp, f);
    let mut sym_gens = r.ideal_gens().iter().map(e).collect::<Vec<_>>();
    sym_gens.push(sp.add(&sp.mul(&e(x2), &u), &sp.mul(&e(g1), &v)));
    sym_gens.push(sp.sub(&sp.mul(&e(g2), &v), &sp.mul(&e(x1), &u)));
    let sym = QuotientRing::auto(sp.clone(), &sym_gens);

    let base = base_variables(h).ok_or_else(|| Error::Precondition("base variables must map to ring variables".into()))?;
    let fibre_vars = data.fibre_vars.to_vec();
    let mut charts = Vec::new();
    let mut section_ideal = None;
    for (name, var) in [("D+(U)", "v"), ("D+(V)", "u")] {
        let cp = extend_ring(p, &[var])?;
        let t = cp.var(p.nvars());
        let e = |f: &Poly| embed(p, &cp, f);
        let gens = if var == "v" {
            vec![cp.add(&e(x2), &cp.mul(&e(g1), &t)), cp.sub(&e(x1), &cp.mul(&e(g2), &t))]
        } else {
            vec![cp.add(&cp.mul(&e(x2), &t), &e(g1)), cp.sub(&cp.mul(&e(x1), &t), &e(g2))]
        };
        let ring = QuotientRing::auto(cp.clone(), &gens);
        let contains_f = ring.is_zero(&e(&data.f));
        cert.push("chart", format!("{name}: F in the chart ideal"), Verdict::from_bool(contains_f), "");
        let poly_chart = QuotientRing::polynomial(cp.clone());
        let hc = RingMap::new(h.source.clone(), poly_chart, h.images.iter().map(e).collect())?;
        let flat = is_regular_sequence_on_fibre(&gens, &hc, &origin(&h.source))?;
        cert.push("flatness", name, Verdict::from_bool(flat), "chart equations regular on the closed fibre");

        let cfm = fibre_map(&RingMap::new(h.source.clone(), ring.clone(), h.images.iter().map(e).collect())?, &origin(&h.source))?;
        let closed = cfm.target.clone();
        // by name: the map's own images are reduced and may vanish
        let cimages: Vec<Poly> = cp.vars.iter().map(|v| closed.poly.var_by_name(v).unwrap_or_else(|_| closed.poly.zero())).collect();
        let cgens: Vec<Poly> = gens.iter().map(|g| cp.substitute(g, &cimages, &closed.poly)).collect();
        let cand: Vec<usize> = fibre_vars.iter().map(|&i| i - base.iter().filter(|&&b| b < i).count()).collect();
        let reduced = solve_linear(&closed.poly, &cgens, &cand).map(|(_, q)| q);
        if var == "v" {
            let mut sec = gens.clone();
            sec.push(t.clone());
            let want = vec![t.clone(), e(x1), e(x2)];
            let got = Ideal::new(&QuotientRing::polynomial(cp.clone()), sec);
            let want = Ideal::new(&QuotientRing::polynomial(cp.clone()), want);
            cert.push("section", "V = 0", Verdict::from_bool(same_ideal(&got, &want)), "chart ideal + (v) = (v, X1, X2)");
            // smooth at x = 0, v = 0 on the closed fibre
            let cpz = &closed.poly;
            let pt = vec![Coeff::Small(0); cpz.nvars()];
            let jac: Vec<Vec<Coeff>> = cgens.iter().map(|g| (0..cpz.nvars()).map(|i| cpz.evaluate(&cpz.derivative(g, i), &pt)).collect()).collect();
            let rank = constant_rank(cpz.field, jac);
            cert.push("section", "closed fibre point", Verdict::from_bool(rank == cgens.len()), format!("Jacobian rank {rank}"));
            section_ideal = Some(want);
        }
        charts.push(Chart {
            name: name.into(),
            ring,
            closed,
            reduced,
            flatness: flat,
        });
    }

    let fm = fibre_map(h, &origin(&h.source))?;
    let m_a = FPModule::ideal(&fm.target, &[fm.apply(x1), fm.apply(x2)]);
    let pt = section_point(&fm, &data.section, h)?;
    let exceptional_rank = fibre_rank_at(&dual_module(&m_a).module, &pt);
    cert.push(
        "exceptional-fibre",
        "m* ⊗ k",
        Verdict::Holds,
        if exceptional_rank == 2 { "dimension 2: projective line".to_string() } else { format!("dimension {exceptional_rank}") },
    );

    let fp = &fm.target.poly;
    let fimages: Vec<Poly> = p.vars.iter().map(|v| fp.var_by_name(v).unwrap_or_else(|_| fp.zero())).collect();
    let discriminant = quadratic_discriminant(&p.substitute(&data.f, &fimages, fp), fp)?;
    if let Some(d) = &discriminant {
        cert.push("discriminant", "closed fibre form", Verdict::from_bool(!d.is_zero()), d.to_string());
    }
    Ok(StabilizationReport {
        sym,
        charts,
        section_ideal: section_ideal.expect("U-chart visited"),
        exceptional_rank,
        discriminant,
        certificate: cert,
    })
}

/// `b² − 4ac` for a binary quadratic form `a x₁² + b x₁x₂ + c x₂²`.
fn quadratic_discriminant(f: &Poly, p: &PolyRing) -> Result<Option<Coeff>> {
    if p.nvars() != 2 || f.is_zero() || !f.terms.iter().all(|(m, _)| m.degree() == 2) {
        return Ok(None);
    }
    if p.field.characteristic() == 2 {
        return Err(Error::Precondition("quadratic-form family needs characteristic other than 2".into()));
    }
    let coeff = |e: [u16; 2]| {
        f.terms
            .iter()
            .find(|(m, _)| m.0.as_slice() == e)
            .map_or(Coeff::zero(), |(_, c)| c.clone())
    };
    let k = p.field;
    let (a, b, c) = (coeff([2, 0]), coeff([1, 1]), coeff([0, 2]));
    Ok(Some(k.sub(&k.mul(&b, &b), &k.mul(&k.from_i64(4), &k.mul(&a, &c)))))
}

/// `A^c / (f·A^c + im ∇f)` with a standard-monomial basis.
#[derive(Clone, Debug, Serialize)]
pub struct T1Basis {
    /// Basis entries as `(component, monomial exponents)`.
    pub basis: Vec<(usize, Vec<u16>)>,
    /// Basis entries other than the unit vectors `e_i`, as vectors.
    #[serde(skip)]
    pub extra: Vec<Vector>,
}

impl T1Basis {
    pub fn n(&self) -> usize {
        self.extra.len()
    }
}

pub fn versal_t1(p: &Arc<PolyRing>, f: &[Poly]) -> Result<T1Basis> {
    let c = f.len();
    let mut gens: Vec<Vector> = Vec::new();
    for fi in f {
        for k in 0..c {
            let mut v = vec![Poly::zero(); c];
            v[k] = fi.clone();
            gens.push(v);
        }
    }
    for j in 0..p.nvars() {
        gens.push(f.iter().map(|fi| p.derivative(fi, j)).collect());
    }
    let gb = buchberger(p, c, &gens);
    let std = gb
        .standard_monomials()
        .ok_or_else(|| Error::Precondition("T1 is not finite-dimensional: the singularity is not isolated".into()))?;
    let one = p.one_monomial();
    let extra = std
        .iter()
        .filter(|(_, m)| *m != one)
        .map(|(k, m)| {
            let mut v = vec![Poly::zero(); c];
            v[*k] = p.term(Coeff::one(), m.clone());
            v
        })
        .collect();
    Ok(T1Basis {
        basis: std.iter().map(|(k, m)| (*k, m.0.to_vec())).collect(),
        extra,
    })
}

/// A family `S → R` with `R = k[x, base]/(ideal)` and the base variables first.
#[derive(Clone, Debug)]
pub struct Family {
    pub h: RingMap,
    /// Section `R → S`, for pointed families.
    pub section: Option<RingMap>,
}

#[derive(Clone, Debug)]
pub struct VersalFamily {
    pub f: Vec<Poly>,
    pub t1: T1Basis,
    /// `F_i(x,t) = f_i + Σ_j t_j g_j^{(i)}` in `deformed_ring = k[t, x]`.
    pub deformed: Vec<Poly>,
    pub deformed_ring: Arc<PolyRing>,
    pub unpointed: Family,
    pub pointed: Family,
}

fn fresh_names(p: &PolyRing, stem: &str, n: usize) -> Vec<String> {
    let mut names: Vec<String> = if n == 1 { vec![stem.to_string()] } else { (1..=n).map(|i| format!("{stem}{i}")).collect() };
    while names.iter().any(|s| p.vars.contains(s)) {
        names = names.iter().map(|s| format!("{s}_")).collect();
    }
    names
}

/// `F_i(x, t)`, the unpointed family over `k[z, t]` and the pointed family
/// `k[s, t] → k[s, t, x]/(F(x,t) − F(s,t))` with section `x ↦ s`.
pub fn versal_family(p: &Arc<PolyRing>, f: &[Poly]) -> Result<VersalFamily> {
    let t1 = versal_t1(p, f)?;
    let n = p.nvars();
    let nt = t1.n();
    let tn = fresh_names(p, "t", nt);
    let zn = fresh_names(p, "z", f.len());
    let sn = fresh_names(p, "s", n);
    let field = p.field;
    let order = p.order.clone();

    // k[t, x]
    let mut names = tn.clone();
    names.extend(p.vars.iter().cloned());
    let tx = Arc::new(PolyRing::from_names(field, names, order.clone())?);
    let xs: Vec<Poly> = (0..n).map(|i| tx.var(nt + i)).collect();
    let deformed: Vec<Poly> = (0..f.len())
        .map(|i| {
            let mut fi = p.substitute(&f[i], &xs, &tx);
            for (j, g) in t1.extra.iter().enumerate() {
                let gi = p.substitute(&g[i], &xs, &tx);
                fi = tx.add(&fi, &tx.mul(&tx.var(j), &gi));
            }
            fi
        })
        .collect();

    // unpointed: k[z, t] → k[z, t, x]/(F_i + z_i)
    let mut bn = zn.clone();
    bn.extend(tn.iter().cloned());
    let nb = bn.len();
    let base = QuotientRing::auto(Arc::new(PolyRing::from_names(field, bn.clone(), order.clone())?), &[]);
    let mut names = bn.clone();
    names.extend(p.vars.iter().cloned());
    let total = Arc::new(PolyRing::from_names(field, names, order.clone())?);
    let into: Vec<Poly> = (0..nt + n).map(|i| total.var(f.len() + i)).collect();
    let gens: Vec<Poly> = deformed.iter().enumerate().map(|(i, d)| total.add(&tx.substitute(d, &into, &total), &total.var(i))).collect();
    let r = QuotientRing::auto(total.clone(), &gens);
    let unpointed = Family {
        h: RingMap::new(base, r, (0..nb).map(|i| total.var(i)).collect())?,
        section: None,
    };

    // pointed: k[s, t] → k[s, t, x]/(F(x,t) − F(s,t))
    let mut bn = sn.clone();
    bn.extend(tn.iter().cloned());
    let nb = bn.len();
    let bp = Arc::new(PolyRing::from_names(field, bn.clone(), order.clone())?);
    let base = QuotientRing::auto(bp.clone(), &[]);
    let mut names = bn.clone();
    names.extend(p.vars.iter().cloned());
    let total = Arc::new(PolyRing::from_names(field, names, order)?);
    let at_x: Vec<Poly> = (0..nt).map(|j| total.var(n + j)).chain((0..n).map(|i| total.var(nb + i))).collect();
    let at_s: Vec<Poly> = (0..nt).map(|j| total.var(n + j)).chain((0..n).map(|i| total.var(i))).collect();
    let gens: Vec<Poly> = deformed.iter().map(|d| total.sub(&tx.substitute(d, &at_x, &total), &tx.substitute(d, &at_s, &total))).collect();
    let r = QuotientRing::auto(total.clone(), &gens);
    let h = RingMap::new(base.clone(), r.clone(), (0..nb).map(|i| total.var(i)).collect())?;
    let mut sec: Vec<Poly> = (0..nb).map(|i| bp.var(i)).collect();
    sec.extend((0..n).map(|i| bp.var(i)));
    let section = RingMap::new(r, base, sec)?;
    Ok(VersalFamily {
        f: f.to_vec(),
        t1,
        deformed,
        deformed_ring: tx,
        unpointed,
        pointed: Family { h, section: Some(section) },
    })
}

/// The pointed versal family, checked to have closed fibre `k[x]/(f)`.
pub fn pointed_versal(p: &Arc<PolyRing>, f: &[Poly]) -> Result<Family> {
    let v = versal_family(p, f)?;
    let fam = v.pointed;
    let fm = fibre_map(&fam.h, &origin(&fam.h.source))?;
    let got = fm.target.ideal_gens();
    let want = ideal_gb(p, f);
    let got_gb = ideal_gb(&fm.target.poly, &got);
    if got_gb.elems != want.elems || fm.target.poly.vars != p.vars {
        return Err(Error::InvalidMap("closed fibre of the pointed family is not k[x]/(f)".into()));
    }
    Ok(fam)
}

/// `R → R ⊗_S R → R`: the second copy's fibre variables are renamed, the
/// ideals summed, and the diagonal identifies the copies.
#[derive(Clone, Debug)]
pub struct SquareTower {
    pub ring: Arc<QuotientRing>,
    pub left: RingMap,
    pub right: RingMap,
    pub diagonal: RingMap,
}

pub fn square_construction(h: &RingMap) -> Result<SquareTower> {
    let r = &h.target;
    let p = &r.poly;
    let base = base_variables(h).ok_or_else(|| Error::Precondition("base variables must map to distinct ring variables".into()))?;
    let fibre: Vec<usize> = (0..p.nvars()).filter(|i| !base.contains(i)).collect();
    let mut names = p.vars.clone();
    for &i in &fibre {
        let mut name = format!("{}_2", p.vars[i]);
        while names.contains(&name) {
            name.push('_');
        }
        names.push(name);
    }
    let tp = Arc::new(PolyRing::from_names(p.field, names, p.order.clone())?);
    let left_img: Vec<Poly> = (0..p.nvars()).map(|i| tp.var(i)).collect();
    let mut right_img = left_img.clone();
    for (k, &i) in fibre.iter().enumerate() {
        right_img[i] = tp.var(p.nvars() + k);
    }
    let mut gens: Vec<Poly> = r.ideal_gens().iter().map(|g| p.substitute(g, &left_img, &tp)).collect();
    gens.extend(r.ideal_gens().iter().map(|g| p.substitute(g, &right_img, &tp)));
    let ring = QuotientRing::auto(tp.clone(), &gens);
    let mut diag: Vec<Poly> = (0..p.nvars()).map(|i| p.var(i)).collect();
    diag.extend(fibre.iter().map(|&i| p.var(i)));
    Ok(SquareTower {
        left: RingMap::new(r.clone(), ring.clone(), left_img)?,
        right: RingMap::new(r.clone(), ring.clone(), right_img)?,
        diagonal: RingMap::new(ring.clone(), r.clone(), diag)?,
        ring,
    })
}

/// Eliminates the given variables from a ring's ideal.
pub fn eliminate_from(ring: &QuotientRing, vars: &[usize]) -> Vec<Poly> {
    eliminate(&ring.poly, &ring.ideal_gens(), vars)
}

/// `I = ker σ` as an ideal of `R`.
pub fn section_ideal(h: &RingMap, section: &RingMap) -> Result<Ideal> {
    Ok(Ideal::new(&h.target, section_ideal_gens(h, section)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mf::plane_curve_mf;
    use crate::polyring::{Field, MonomialOrder};

    fn ring(vars: &[&str], rel: &[&str]) -> Arc<QuotientRing> {
        let p = Arc::new(PolyRing::new(Field::Rationals, vars, MonomialOrder::DegRevLex).unwrap());
        let gens: Vec<_> = rel.iter().map(|s| p.parse(s).unwrap()).collect();
        QuotientRing::auto(p, &gens)
    }

    fn ideal(r: &Arc<QuotientRing>, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| r.parse(g).unwrap()).collect())
    }

    fn knudsen_example() -> (RingMap, RingMap) {
        let s = ring(&["b", "c"], &[]);
        let r = ring(&["b", "c", "x", "y"], &["x*y - b*c"]);
        let h = RingMap::new(s.clone(), r.clone(), vec![r.parse("b").unwrap(), r.parse("c").unwrap()]).unwrap();
        let sec = RingMap::new(r, s.clone(), ["b", "c", "b", "c"].iter().map(|v| s.parse(v).unwrap()).collect()).unwrap();
        (h, sec)
    }

    fn trivial_base(a: &Arc<QuotientRing>) -> (RingMap, RingMap) {
        let k = ring(&[], &[]);
        let h = RingMap::new(k.clone(), a.clone(), vec![]).unwrap();
        let sec = RingMap::new(a.clone(), k.clone(), vec![k.poly.zero(); a.nvars()]).unwrap();
        (h, sec)
    }

    #[test]
    fn socle_elements() {
        let cusp = ring(&["x", "y"], &["y^2 - x^3"]);
        let e = socle_epsilon(&cusp, &cusp.parse("x").unwrap()).unwrap();
        assert_eq!(cusp.format(&e.f), "y");
        let vals: Vec<String> = e.hom.matrix.entries.iter().map(|p| cusp.format(p)).collect();
        assert_eq!(vals, vec!["y", "x^2"]);
        assert!(e.certificate.holds());

        let node = ring(&["x", "y"], &["x*y"]);
        let nzd = node.parse("x + y").unwrap();
        let e = socle_epsilon(&node, &nzd).unwrap();
        // ε(x + y) = f
        let p = &node.poly;
        let at = node.reduce(&p.add(e.hom.matrix.get(0, 0), e.hom.matrix.get(0, 1)));
        assert_eq!(at, node.reduce(&e.f));
        assert!(e.certificate.holds());

        let line = ring(&["x"], &[]);
        let e = socle_epsilon(&line, &line.parse("x").unwrap()).unwrap();
        assert_eq!(line.format(e.hom.matrix.get(0, 0)), "1");
        assert!(socle_epsilon(&node, &node.parse("x").unwrap()).is_err());
    }

    #[test]
    fn knudsen_example_invariants() {
        let (h, sec) = knudsen_example();
        let pts = vec![vec![Coeff::Small(0), Coeff::Small(0)], vec![Coeff::Small(1), Coeff::Small(1)]];
        let rep = knudsen_invariants(&h, &sec, &pts, 3).unwrap();
        assert!(rep.certificate.holds(), "{:?}", rep.certificate.witnesses.iter().filter(|w| w.verdict != Verdict::Holds).collect::<Vec<_>>());
        let r = &h.target;
        assert!(same_ideal(&rep.product, &ideal(r, &["x", "y", "b", "c"])));
        let s = &h.source;
        assert!(rep.dual_fitting[0].is_zero());
        assert!(same_ideal(&rep.dual_fitting[1], &ideal(s, &["b", "c"])));
        assert!(rep.dual_fitting[2].is_unit());
        assert!(rep.singular);
        assert_eq!(rep.closed_rank, 2);
        // ε̃(x - b) = x, ε̃(y - c) = -c is one of the elements spanning I*/R
        let i = FPModule::ideal(r, &rep.ideal);
        let vals = vec![r.parse("x").unwrap(), r.parse("-c").unwrap()];
        assert!(generates_modulo_inclusion(&i, &vals, &rep.ideal));
    }

    #[test]
    fn regular_and_singular_clauses() {
        let node = ring(&["x", "y"], &["x*y"]);
        let (h, sec) = trivial_base(&node);
        let rep = knudsen_invariants(&h, &sec, &[vec![]], 2).unwrap();
        assert!(rep.certificate.holds());
        assert!(same_ideal(&rep.pairing, &ideal(&node, &["x", "y"])));
        assert_eq!(rep.closed_rank, 2);
        let line = ring(&["x"], &[]);
        let (h, sec) = trivial_base(&line);
        let rep = knudsen_invariants(&h, &sec, &[vec![]], 2).unwrap();
        assert!(rep.certificate.holds());
        assert!(rep.pairing.is_unit());
        assert_eq!(rep.closed_rank, 1);
        assert!(!rep.singular);
    }

    #[test]
    fn quadratic_family_charts() {
        let s = ring(&["s1", "s2"], &[]);
        let r = ring(&["s1", "s2", "x1", "x2"], &["x1^2 - x2^2 - s1^2 + s2^2"]);
        let h = RingMap::new(s.clone(), r.clone(), vec![r.parse("s1").unwrap(), r.parse("s2").unwrap()]).unwrap();
        let sec = RingMap::new(r, s.clone(), ["s1", "s2", "s1", "s2"].iter().map(|v| s.parse(v).unwrap()).collect()).unwrap();
        let data = plane_curve_mf(&h, &sec).unwrap();
        let rep = stabilization(&data).unwrap();
        assert!(rep.certificate.holds(), "{:?}", rep.certificate.witnesses);
        let u = rep.charts[0].reduced.as_ref().unwrap();
        assert_eq!(u.poly.vars, vec!["x2", "v"]);
        assert_eq!(u.ideal.elems, ideal_gb(&u.poly, &[u.poly.parse("x2*(1 - v^2)").unwrap()]).elems);
        let v = rep.charts[1].reduced.as_ref().unwrap();
        assert_eq!(v.ideal.elems, ideal_gb(&v.poly, &[v.poly.parse("x2*(u^2 - 1)").unwrap()]).elems);
        assert_eq!(rep.exceptional_rank, 2);
        assert_eq!(rep.discriminant, Some(Coeff::Small(4)));
    }

    #[test]
    fn node_family_charts() {
        let s = ring(&["b", "c"], &[]);
        let r = ring(&["b", "c", "x", "y"], &["x*y - b*c"]);
        let h = RingMap::new(s.clone(), r.clone(), vec![r.parse("b").unwrap(), r.parse("c").unwrap()]).unwrap();
        let sec = RingMap::new(r, s.clone(), ["b", "c", "b", "c"].iter().map(|v| s.parse(v).unwrap()).collect()).unwrap();
        let rep = stabilization(&plane_curve_mf(&h, &sec).unwrap()).unwrap();
        assert!(rep.certificate.holds(), "{:?}", rep.certificate.witnesses);
        assert_eq!(rep.exceptional_rank, 2);
        assert_eq!(rep.discriminant, Some(Coeff::Small(1)));
    }

    #[test]
    fn tangent_spaces() {
        let p = Arc::new(PolyRing::new(Field::Rationals, &["x", "y"], MonomialOrder::DegRevLex).unwrap());
        let t = versal_t1(&p, &[p.parse("x*y").unwrap()]).unwrap();
        assert_eq!(t.n(), 0);
        assert_eq!(t.basis, vec![(0, vec![0, 0])]);
        let t = versal_t1(&p, &[p.parse("y^2 - x^3").unwrap()]).unwrap();
        assert_eq!(t.basis, vec![(0, vec![0, 0]), (0, vec![1, 0])]);
        let t = versal_t1(&p, &[p.parse("x^2").unwrap(), p.parse("y^2").unwrap()]).unwrap();
        assert!(t.basis.contains(&(0, vec![0, 0])) && t.basis.contains(&(1, vec![0, 0])));
        assert!(t.n() > 0);
        assert!(versal_t1(&p, &[p.parse("x^2").unwrap()]).is_err());
    }

    #[test]
    fn pointed_versal_families() {
        let p = Arc::new(PolyRing::new(Field::Rationals, &["x", "y"], MonomialOrder::DegRevLex).unwrap());
        let fam = pointed_versal(&p, &[p.parse("x*y").unwrap()]).unwrap();
        let t = &fam.h.target;
        assert_eq!(t.poly.vars, vec!["s1", "s2", "x", "y"]);
        assert_eq!(t.ideal.elems, ideal_gb(&t.poly, &[t.poly.parse("x*y - s1*s2").unwrap()]).elems);
        let fam = pointed_versal(&p, &[p.parse("y^2 - x^3").unwrap()]).unwrap();
        let t = &fam.h.target;
        assert_eq!(t.poly.vars, vec!["s1", "s2", "t", "x", "y"]);
        let want = t.poly.parse("y^2 - x^3 + t*x - (s2^2 - s1^3 + t*s1)").unwrap();
        assert_eq!(t.ideal.elems, ideal_gb(&t.poly, &[want]).elems);
    }

    #[test]
    fn square_of_the_versal_node() {
        let s = ring(&["z"], &[]);
        let r = ring(&["x", "y", "z"], &["x*y + z"]);
        let h = RingMap::new(s, r.clone(), vec![r.parse("z").unwrap()]).unwrap();
        let sq = square_construction(&h).unwrap();
        assert_eq!(sq.ring.poly.vars, vec!["x", "y", "z", "x_2", "y_2"]);
        assert!(sq.left.then(&sq.diagonal).unwrap().is_identity());
        assert!(sq.right.then(&sq.diagonal).unwrap().is_identity());
        let z = sq.ring.poly.var_index("z").unwrap();
        let elim = eliminate_from(&sq.ring, &[z]);
        let tp = &sq.ring.poly;
        assert_eq!(ideal_gb(tp, &elim).elems, ideal_gb(tp, &[tp.parse("x*y - x_2*y_2").unwrap()]).elems);
    }
}
