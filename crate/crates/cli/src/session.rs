use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use rfx::approx::{approximate, pointed_approximation, ApproximationResult};
use rfx::complexes::{depth_at_irrelevant, dual_complex, ext_table, is_regular_sequence, koszul_complex, resolution_complex, Depth, FreeComplex};
use rfx::matrix::Matrix;
use rfx::mf::{plane_curve_mf, two_periodic, MatrixFactorization};
use rfx::polyring::{parse_rational, Coeff, Field, MonomialOrder, Poly, PolyRing};
use rfx::quotmod::{dual_module, fibre, free_resolution, r_syzygies, section_ideal_gens, syzygy, transpose, FPModule, Ideal, QuotientRing, RingMap};
use rfx::reflexivity::{gorenstein_dim_estimate, hull, is_left_n_orthogonal, is_n_stably_reflexive, is_reflexive, Verdict, Witness};
use rfx::stab::{knudsen_invariants, square_construction, stabilization, versal_family};
use rfx::Error;

use crate::diagnostic::Diagnostic;
use crate::parser::{Check, ComplexDef, Compute, Expr, MatrixExpr, MfDef, ModuleDef, Name, RingDef, Statement, Stmt};
use crate::report::{hilbert_json, matrix_json, matrix_lines, module_json, module_line, Report};

#[derive(Clone, Debug)]
pub struct Options {
    pub window: usize,
    pub order: MonomialOrder,
    pub field: Field,
    pub minimal: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            window: 6,
            order: MonomialOrder::DegRevLex,
            field: Field::Rationals,
            minimal: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RingBinding {
    pub ring: Arc<QuotientRing>,
    /// `S → R` when the ring was declared over a base `S`.
    pub structure: Option<RingMap>,
}

#[derive(Clone, Debug)]
pub enum Binding {
    Ring(RingBinding),
    Map(RingMap),
    Module(FPModule),
    Ideal(Ideal),
    Complex(FreeComplex),
    Mf(MatrixFactorization),
}

enum Fail {
    Semantic(Diagnostic),
    Lib(Error),
}

impl From<Diagnostic> for Fail {
    fn from(d: Diagnostic) -> Self {
        Fail::Semantic(d)
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

type R<T> = Result<T, Fail>;

/// Named bindings plus the reports of every command run so far.
pub struct Session<'a> {
    text: &'a str,
    opts: Options,
    bindings: HashMap<String, Binding>,
    pub log: Vec<Report>,
}

impl<'a> Session<'a> {
    pub fn new(text: &'a str, opts: Options) -> Session<'a> {
        Session {
            text,
            opts,
            bindings: HashMap::new(),
            log: Vec::new(),
        }
    }

    pub fn binding(&self, name: &str) -> Option<&Binding> {
        self.bindings.get(name)
    }

    fn diag(&self, pos: usize, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::at(self.text, pos, msg)
    }

    /// Runs one statement. Bindings produce no report except `mf`, whose
    /// identities are verified on creation.
    pub fn run(&mut self, st: &Statement) -> Result<(), Diagnostic> {
        let command = self.text[st.start..st.end].split_whitespace().collect::<Vec<_>>().join(" ");
        let mut report = Report::new(command);
        let t = Instant::now();
        let outcome = self.execute(&st.stmt, &mut report);
        report.timings.elapsed_ms = t.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(false) => Ok(()),
            Ok(true) => {
                self.log.push(report);
                Ok(())
            }
            Err(Fail::Semantic(d)) => Err(d),
            Err(Fail::Lib(e)) if matches!(st.stmt, Stmt::Ring { .. } | Stmt::Map { .. } | Stmt::Module { .. } | Stmt::Ideal { .. } | Stmt::Complex { .. } | Stmt::Mf { .. }) => {
                Err(self.diag(st.start, e.to_string()))
            }
            Err(Fail::Lib(e)) => {
                let verdict = match e {
                    Error::Precondition(_) | Error::NotAFactorization { .. } | Error::InvalidMap(_) | Error::NotGraded(_) => Verdict::Fails,
                    _ => Verdict::Inconclusive,
                };
                report.verdict = report.verdict.and(verdict);
                report.witnesses.push(Witness {
                    check: "error".into(),
                    subject: report.command.clone(),
                    verdict,
                    detail: e.to_string(),
                });
                self.log.push(report);
                Ok(())
            }
        }
    }

    fn ring(&self, n: &Name) -> R<&RingBinding> {
        match self.bindings.get(&n.id) {
            Some(Binding::Ring(r)) => Ok(r),
            _ => Err(self.diag(n.pos, format!("`{}` is not a ring", n.id)).into()),
        }
    }

    fn module(&self, n: &Name) -> R<&FPModule> {
        match self.bindings.get(&n.id) {
            Some(Binding::Module(m)) => Ok(m),
            _ => Err(self.diag(n.pos, format!("`{}` is not a module", n.id)).into()),
        }
    }

    fn map(&self, n: &Name) -> R<&RingMap> {
        match self.bindings.get(&n.id) {
            Some(Binding::Map(m)) => Ok(m),
            _ => Err(self.diag(n.pos, format!("`{}` is not a map", n.id)).into()),
        }
    }

    fn structure(&self, n: &Name) -> R<RingMap> {
        self.ring(n)?
            .structure
            .clone()
            .ok_or_else(|| self.diag(n.pos, format!("`{}` was not declared over a base ring", n.id)).into())
    }

    /// The structure map of whichever bound ring `ring` is.
    fn structure_of(&self, ring: &Arc<QuotientRing>) -> Option<RingMap> {
        let mut names: Vec<&String> = self.bindings.keys().collect();
        names.sort();
        names.into_iter().find_map(|k| match &self.bindings[k] {
            Binding::Ring(b) if Arc::ptr_eq(&b.ring, ring) || *b.ring == **ring => b.structure.clone(),
            _ => None,
        })
    }

    fn poly_in(&self, p: &PolyRing, e: &Expr) -> Result<Poly, Diagnostic> {
        p.parse(&e.text).map_err(|err| match err {
            Error::Parse { pos, msg } => self.diag(e.pos + pos, msg),
            other => self.diag(e.pos, other.to_string()),
        })
    }

    fn poly(&self, ring: &QuotientRing, e: &Expr) -> Result<Poly, Diagnostic> {
        self.poly_in(&ring.poly, e)
    }

    fn polys(&self, ring: &QuotientRing, es: &[Expr]) -> Result<Vec<Poly>, Diagnostic> {
        es.iter().map(|e| self.poly(ring, e)).collect()
    }

    fn matrix(&self, ring: &QuotientRing, m: &MatrixExpr) -> Result<Matrix, Diagnostic> {
        let rows = m.iter().map(|r| self.polys(ring, r)).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(rows))
    }

    fn coeff(&self, field: Field, e: &Expr) -> Result<Coeff, Diagnostic> {
        let t: String = e.text.split_whitespace().collect();
        let r = parse_rational(&t).ok_or_else(|| self.diag(e.pos, format!("`{}` is not a rational number", e.text)))?;
        field.from_rational(&r).map_err(|err| self.diag(e.pos, err.to_string()))
    }

    fn point(&self, h: &RingMap, es: &[Expr], pos: usize) -> Result<Vec<Coeff>, Diagnostic> {
        let s = &h.source;
        if es.len() != s.nvars() {
            return Err(self.diag(pos, format!("point needs {} coordinates, got {}", s.nvars(), es.len())));
        }
        es.iter().map(|e| self.coeff(s.field(), e)).collect()
    }

    fn bind(&mut self, name: &Name, b: Binding) {
        self.bindings.insert(name.id.clone(), b);
    }

    fn input(&self, report: &mut Report, n: &Name) {
        let desc = match self.bindings.get(&n.id) {
            Some(Binding::Ring(r)) => r.ring.to_string(),
            Some(Binding::Map(m)) => format_map(m),
            Some(Binding::Module(m)) => format!("module over {}: {}", m.ring, module_line(m)),
            Some(Binding::Ideal(i)) => format!("ideal {i}"),
            Some(Binding::Complex(c)) => format!("complex over {} with ranks {:?} from {}", c.ring, c.ranks, c.lo),
            Some(Binding::Mf(m)) => format!("matrix factorization of {} over {}", m.ambient.format(&m.f), m.ambient),
            None => return,
        };
        report.inputs.insert(n.id.clone(), desc);
    }

    /// Returns whether the statement produced a report.
    fn execute(&mut self, stmt: &Stmt, rep: &mut Report) -> R<bool> {
        let w = self.opts.window;
        match stmt {
            Stmt::Ring { name, def } => {
                let b = self.ring_def(def)?;
                self.bind(name, Binding::Ring(b));
                Ok(false)
            }
            Stmt::Map { name, section, source, target, assigns } => {
                let src = self.ring(source)?.clone();
                let tgt = self.ring(target)?.clone();
                let (sp, tp) = (&src.ring.poly, &tgt.ring.poly);
                let mut images: Vec<Option<Poly>> = vec![None; sp.nvars()];
                for (v, e) in assigns {
                    let i = sp.var_index(&v.id).map_err(|_| self.diag(v.pos, format!("`{}` is not a variable of `{}`", v.id, source.id)))?;
                    images[i] = Some(self.poly(&tgt.ring, e)?);
                }
                let images = images
                    .into_iter()
                    .enumerate()
                    .map(|(i, img)| img.or_else(|| tp.var_index(&sp.vars[i]).ok().map(|j| tp.var(j))).ok_or_else(|| self.diag(name.pos, format!("no image given for `{}`", sp.vars[i]))))
                    .collect::<Result<Vec<_>, _>>()?;
                let m = RingMap::new(src.ring.clone(), tgt.ring.clone(), images).map_err(|e| self.diag(name.pos, e.to_string()))?;
                if *section {
                    let h = src.structure.as_ref().ok_or_else(|| self.diag(source.pos, format!("`{}` was not declared over a base ring", source.id)))?;
                    section_ideal_gens(h, &m).map_err(|e| self.diag(name.pos, e.to_string()))?;
                }
                self.bind(name, Binding::Map(m));
                Ok(false)
            }
            Stmt::Module { name, def } => {
                let m = self.module_def(def)?;
                self.bind(name, Binding::Module(m));
                Ok(false)
            }
            Stmt::Ideal { name, ring, gens } => {
                let r = self.ring(ring)?.ring.clone();
                let g = self.polys(&r, gens)?;
                self.bind(name, Binding::Ideal(Ideal::new(&r, g)));
                Ok(false)
            }
            Stmt::Complex { name, def } => {
                let c = self.complex_def(def)?;
                self.bind(name, Binding::Complex(c));
                Ok(false)
            }
            Stmt::Mf { name, def } => {
                let mf = match def {
                    MfDef::Matrices { ring, phi, psi } => {
                        let t = self.ring(ring)?.ring.clone();
                        let (phi, psi) = (self.matrix(&t, phi)?, self.matrix(&t, psi)?);
                        if phi.ncols != psi.nrows || phi.nrows != psi.ncols || phi.nrows == 0 {
                            return Err(self.diag(name.pos, "Φ and Ψ must be square of the same size").into());
                        }
                        let f = t.reduce(phi.mul(&t.poly, &psi).get(0, 0));
                        MatrixFactorization::new(&t, phi, psi, f)?
                    }
                    MfDef::Plane { ring, section } => {
                        let h = self.structure(ring)?;
                        plane_curve_mf(&h, self.map(section)?)?.mf
                    }
                };
                let t = &mf.ambient;
                rep.line(format!("F = {} over {}", t.format(&mf.f), t));
                rep.line("Phi:");
                rep.lines.extend(matrix_lines(t, &mf.phi).into_iter().map(|l| format!("  {l}")));
                rep.line("Psi:");
                rep.lines.extend(matrix_lines(t, &mf.psi).into_iter().map(|l| format!("  {l}")));
                let c = two_periodic(&mf, 0, w as i64)?;
                rep.certificate(&c.certificate);
                rep.result = json!({ "f": t.format(&mf.f), "phi": matrix_json(t, &mf.phi), "psi": matrix_json(t, &mf.psi), "ring": t.to_string() });
                self.bind(name, Binding::Mf(mf));
                Ok(true)
            }
            Stmt::Check(c) => {
                self.check(c, rep)?;
                Ok(true)
            }
            Stmt::Compute(c) => {
                self.compute(c, rep)?;
                Ok(true)
            }
            Stmt::Approximate { module, n, r, minimal } => {
                self.input(rep, module);
                let res = approximate(self.module(module)?, *n, *r, *minimal || self.opts.minimal)?;
                self.approximation(&res, rep);
                Ok(true)
            }
            Stmt::ApproximatePointed { ring, section } => {
                self.input(rep, ring);
                self.input(rep, section);
                let h = self.structure(ring)?;
                let res = pointed_approximation(&h, self.map(section)?)?;
                self.approximation(&res, rep);
                Ok(true)
            }
            Stmt::Stabilize { ring, section } => {
                self.input(rep, ring);
                self.input(rep, section);
                let h = self.structure(ring)?;
                let data = plane_curve_mf(&h, self.map(section)?)?;
                let st = stabilization(&data)?;
                rep.line(format!("Sym(I*) = {}", st.sym));
                let mut charts = Vec::new();
                for c in &st.charts {
                    rep.line(format!("{}: {}", c.name, c.ring));
                    rep.line(format!("  closed fibre: {}", c.closed));
                    if let Some(r) = &c.reduced {
                        rep.line(format!("  after elimination: {r}"));
                    }
                    rep.line(format!("  flat: {}", c.flatness));
                    charts.push(json!({
                        "name": c.name,
                        "ring": c.ring.to_string(),
                        "closed_fibre": c.closed.to_string(),
                        "reduced": c.reduced.as_ref().map(|r| r.to_string()),
                        "flat": c.flatness,
                    }));
                }
                rep.line(format!("section ideal in D+(U): {}", st.section_ideal));
                rep.line(format!("exceptional fibre: dim m* ⊗ k = {}", st.exceptional_rank));
                if let Some(d) = &st.discriminant {
                    rep.line(format!("discriminant of the closed fibre form: {d}"));
                }
                rep.certificate(&st.certificate);
                rep.result = json!({
                    "sym": st.sym.to_string(),
                    "charts": charts,
                    "section_ideal": st.section_ideal.basis_strings(),
                    "exceptional_rank": st.exceptional_rank,
                    "discriminant": st.discriminant.as_ref().map(|d| d.to_string()),
                });
                Ok(true)
            }
            Stmt::Versal { ring } => {
                self.input(rep, ring);
                let a = self.ring(ring)?.ring.clone();
                let f = a.ideal_gens();
                let v = versal_family(&a.poly, &f)?;
                let p = &a.poly;
                let basis: Vec<String> = v
                    .t1
                    .basis
                    .iter()
                    .map(|(c, e)| {
                        let m = p.format_monomial(&rfx::polyring::Monomial::from_exponents(e));
                        if m == "1" {
                            format!("e{}", c + 1)
                        } else {
                            format!("{m}*e{}", c + 1)
                        }
                    })
                    .collect();
                rep.line(format!("T1 basis: {{{}}}", basis.join(", ")));
                rep.line(format!("N = {}", v.t1.n()));
                let deformed: Vec<String> = v.deformed.iter().map(|q| v.deformed_ring.format(q)).collect();
                let up = &v.unpointed.h.target;
                let pt = &v.pointed.h.target;
                rep.line(format!("deformed: {}", deformed.join(", ")));
                rep.line(format!("unpointed family: {up}"));
                rep.line(format!("pointed family: {pt}"));
                if let Some(s) = &v.pointed.section {
                    rep.line(format!("section: {}", format_map(s)));
                }
                rep.result = json!({
                    "t1_basis": basis,
                    "n": v.t1.n(),
                    "deformed": deformed,
                    "unpointed": up.to_string(),
                    "pointed": pt.to_string(),
                    "section": v.pointed.section.as_ref().map(format_map),
                });
                Ok(true)
            }
            Stmt::Square { ring } => {
                self.input(rep, ring);
                let h = self.structure(ring)?;
                let sq = square_construction(&h)?;
                rep.line(format!("R ⊗_S R = {}", sq.ring));
                rep.line(format!("left: {}", format_map(&sq.left)));
                rep.line(format!("right: {}", format_map(&sq.right)));
                rep.line(format!("diagonal: {}", format_map(&sq.diagonal)));
                let ok = sq.left.then(&sq.diagonal)?.is_identity() && sq.right.then(&sq.diagonal)?.is_identity();
                let mut c = rfx::reflexivity::Certificate::new(1);
                c.push("section", "diagonal", Verdict::from_bool(ok), "diagonal splits both inclusions");
                rep.certificate(&c);
                rep.result = json!({
                    "ring": sq.ring.to_string(),
                    "left": format_map(&sq.left),
                    "right": format_map(&sq.right),
                    "diagonal": format_map(&sq.diagonal),
                });
                Ok(true)
            }
        }
    }

    fn ring_def(&self, def: &RingDef) -> R<RingBinding> {
        let order = self.opts.order.clone();
        match def {
            RingDef::Fresh { field, vars, rels } => {
                let field = match field {
                    Some(e) => Field::parse(&e.text).map_err(|err| self.diag(e.pos, err.to_string()))?,
                    None => self.opts.field,
                };
                let names: Vec<String> = vars.iter().map(|v| v.id.clone()).collect();
                let p = Arc::new(PolyRing::from_names(field, names, order).map_err(|e| self.diag(vars.first().map_or(0, |v| v.pos), e.to_string()))?);
                let gens = rels.iter().map(|e| self.poly_in(&p, e)).collect::<Result<Vec<_>, _>>()?;
                Ok(RingBinding {
                    ring: QuotientRing::auto(p, &gens),
                    structure: None,
                })
            }
            RingDef::Over { base, vars, rels } => {
                let b = self.ring(base)?.ring.clone();
                let bp = &b.poly;
                let mut names = bp.vars.clone();
                names.extend(vars.iter().map(|v| v.id.clone()));
                let p = Arc::new(PolyRing::from_names(bp.field, names, order).map_err(|e| self.diag(base.pos, e.to_string()))?);
                let lift: Vec<Poly> = (0..bp.nvars()).map(|i| p.var(i)).collect();
                let mut gens: Vec<Poly> = b.ideal_gens().iter().map(|g| bp.substitute(g, &lift, &p)).collect();
                for e in rels {
                    gens.push(self.poly_in(&p, e)?);
                }
                let ring = QuotientRing::auto(p, &gens);
                let h = RingMap::new(b, ring.clone(), lift).map_err(|e| self.diag(base.pos, e.to_string()))?;
                Ok(RingBinding { ring, structure: Some(h) })
            }
            RingDef::Quotient { base, rels } => {
                let b = self.ring(base)?.clone();
                let p = b.ring.poly.clone();
                let mut gens = b.ring.ideal_gens();
                for e in rels {
                    gens.push(self.poly_in(&p, e)?);
                }
                let ring = QuotientRing::auto(p, &gens);
                let structure = match b.structure {
                    Some(h) => Some(RingMap::new(h.source.clone(), ring.clone(), h.images.clone()).map_err(|e| self.diag(base.pos, e.to_string()))?),
                    None => None,
                };
                Ok(RingBinding { ring, structure })
            }
        }
    }

    fn module_def(&self, def: &ModuleDef) -> R<FPModule> {
        Ok(match def {
            ModuleDef::Coker { ring, matrix, degrees } => {
                let r = self.ring(ring)?.ring.clone();
                let m = self.matrix(&r, matrix)?;
                match degrees {
                    Some(d) if d.len() != m.nrows => return Err(self.diag(ring.pos, format!("{} degrees given for {} generators", d.len(), m.nrows)).into()),
                    Some(d) => FPModule::new(&r, m, Some(d.clone()))?,
                    None => FPModule::auto(&r, m, None),
                }
            }
            ModuleDef::Free { ring, rank } => FPModule::free(&self.ring(ring)?.ring, *rank),
            ModuleDef::Residue { ring } => FPModule::residue_field(&self.ring(ring)?.ring),
            ModuleDef::Ideal { ring, gens } => {
                let r = self.ring(ring)?.ring.clone();
                FPModule::ideal(&r, &self.polys(&r, gens)?)
            }
            ModuleDef::OfIdeal { ideal } => match self.bindings.get(&ideal.id) {
                Some(Binding::Ideal(i)) => FPModule::ideal(&i.ring, &i.gens),
                _ => return Err(self.diag(ideal.pos, format!("`{}` is not an ideal", ideal.id)).into()),
            },
            ModuleDef::Syzygy { module, n } => syzygy(self.module(module)?, *n),
            ModuleDef::Dual { module } => dual_module(self.module(module)?).module,
            ModuleDef::Transpose { module } => transpose(self.module(module)?),
            ModuleDef::Fibre { module, point } => {
                let m = self.module(module)?;
                let h = self.structure_of(&m.ring).ok_or_else(|| self.diag(module.pos, format!("the ring of `{}` has no base", module.id)))?;
                let pt = self.point(&h, point, module.pos)?;
                fibre(m, &h, &pt)?
            }
        })
    }

    fn complex_def(&self, def: &ComplexDef) -> R<FreeComplex> {
        let w = self.opts.window;
        Ok(match def {
            ComplexDef::Resolve { module, length } => resolution_complex(&free_resolution(self.module(module)?, length.unwrap_or(w))),
            ComplexDef::Dual { complex } => match self.bindings.get(&complex.id) {
                Some(Binding::Complex(c)) => dual_complex(c),
                _ => return Err(self.diag(complex.pos, "not a complex").into()),
            },
            ComplexDef::Koszul { ring, seq } => {
                let r = self.ring(ring)?.ring.clone();
                koszul_complex(&r, &self.polys(&r, seq)?)
            }
            ComplexDef::Hull { module } => hull(self.module(module)?, w).complex,
            ComplexDef::Periodic { mf } => match self.bindings.get(&mf.id) {
                Some(Binding::Mf(m)) => two_periodic(m, 0, w as i64)?.complex,
                _ => return Err(self.diag(mf.pos, "not a matrix factorization").into()),
            },
        })
    }

    fn check(&self, c: &Check, rep: &mut Report) -> R<()> {
        let w = self.opts.window;
        let cert = match c {
            Check::Reflexive(m) => {
                self.input(rep, m);
                is_reflexive(self.module(m)?)
            }
            Check::Nstab(m, n) => {
                self.input(rep, m);
                is_n_stably_reflexive(self.module(m)?, *n)?
            }
            Check::Orthogonal(m, n) => {
                self.input(rep, m);
                is_left_n_orthogonal(self.module(m)?, *n)?
            }
            Check::RegularSeq { ring, seq } => {
                self.input(rep, ring);
                let r = self.ring(ring)?.ring.clone();
                let s = self.polys(&r, seq)?;
                let ok = is_regular_sequence(&r, &s);
                let mut c = rfx::reflexivity::Certificate::new(1);
                let shown: Vec<String> = s.iter().map(|p| r.format(p)).collect();
                c.push("koszul", format!("({})", shown.join(", ")), Verdict::from_bool(ok), if ok { "H_1 of the Koszul complex vanishes" } else { "H_1 of the Koszul complex is nonzero" });
                c
            }
            Check::Knudsen { ring, section, points, window } => {
                self.input(rep, ring);
                self.input(rep, section);
                let h = self.structure(ring)?;
                let sec = self.map(section)?;
                let pts = match points {
                    Some(ps) => ps.iter().map(|p| self.point(&h, p, ring.pos)).collect::<Result<Vec<_>, _>>()?,
                    None => vec![vec![Coeff::zero(); h.source.nvars()]],
                };
                let k = knudsen_invariants(&h, sec, &pts, window.unwrap_or(w))?;
                let r = &h.target;
                let s = &h.source;
                let fmt = |ps: &[Poly]| ps.iter().map(|p| r.format(p)).collect::<Vec<_>>();
                rep.line(format!("I = ({})", fmt(&k.ideal).join(", ")));
                rep.line(format!("I*/R: {}", module_line(&k.quotient)));
                rep.line(format!("epsilon on the generators of I: ({})", fmt(&k.epsilon).join(", ")));
                rep.line(format!("I·I* = {}", k.product));
                for (i, f) in k.dual_fitting.iter().enumerate() {
                    rep.line(format!("Fitt_{i}(I* ⊗ S) = {f}"));
                }
                rep.line(format!("pairing image on the closed fibre: {}", k.pairing));
                rep.line(format!("dim m* ⊗ k = {} ({})", k.closed_rank, if k.singular { "singular point" } else { "regular point" }));
                rep.result = json!({
                    "ideal": fmt(&k.ideal),
                    "quotient": module_json(&k.quotient),
                    "quotient_fitting": k.quotient_fitting.iter().map(|i| i.basis_strings()).collect::<Vec<_>>(),
                    "epsilon": fmt(&k.epsilon),
                    "product": k.product.basis_strings(),
                    "dual_fitting": k.dual_fitting.iter().map(|i| i.basis_strings()).collect::<Vec<_>>(),
                    "pairing": k.pairing.basis_strings(),
                    "closed_rank": k.closed_rank,
                    "singular": k.singular,
                    "base": s.to_string(),
                });
                k.certificate
            }
        };
        let shown: Vec<String> = cert.witnesses.iter().map(|w| format!("{} {}: {}", w.check, w.subject, w.verdict)).collect();
        rep.lines.extend(shown);
        rep.certificate(&cert);
        if rep.result.is_null() {
            rep.result = json!({ "window": cert.window });
        }
        Ok(())
    }

    fn compute(&self, c: &Compute, rep: &mut Report) -> R<()> {
        let w = self.opts.window;
        match c {
            Compute::Gb(n) => {
                self.input(rep, n);
                let basis = match self.bindings.get(&n.id) {
                    Some(Binding::Ideal(i)) => i.basis_strings(),
                    Some(Binding::Ring(r)) => r.ring.ideal_gens().iter().map(|g| r.ring.poly.format(g)).collect(),
                    _ => unreachable!("checked by the parser"),
                };
                for b in &basis {
                    rep.line(b.clone());
                }
                rep.result = json!({ "basis": basis });
            }
            Compute::Nf(n, e) => {
                self.input(rep, n);
                let (ring, nf) = match self.bindings.get(&n.id) {
                    Some(Binding::Ideal(i)) => {
                        let f = self.poly(&i.ring, e)?;
                        (i.ring.clone(), i.gb.reduce_poly(&f))
                    }
                    Some(Binding::Ring(r)) => {
                        let f = self.poly(&r.ring, e)?;
                        (r.ring.clone(), r.ring.reduce(&f))
                    }
                    _ => unreachable!("checked by the parser"),
                };
                let s = ring.format(&nf);
                rep.line(s.clone());
                rep.result = json!({ "normal_form": s });
            }
            Compute::Syz(n, m) => {
                self.input(rep, n);
                let r = self.ring(n)?.ring.clone();
                let m = self.matrix(&r, m)?;
                let syz = Matrix::from_cols(m.ncols, &r_syzygies(&r, m.nrows, &m.cols()));
                rep.line(format!("{} syzygies, as columns:", syz.ncols));
                rep.lines.extend(matrix_lines(&r, &syz));
                rep.result = json!({ "syzygies": matrix_json(&r, &syz) });
            }
            Compute::Resolve(n, len) => {
                self.input(rep, n);
                let m = self.module(n)?;
                let res = free_resolution(m, len.unwrap_or(w));
                rep.line(format!("ranks: {:?}{}", res.ranks(), if res.complete { "" } else { " (truncated)" }));
                if let Some(d) = &res.degrees {
                    for (i, di) in d.iter().enumerate() {
                        rep.line(format!("F_{i} degrees: {di:?}"));
                    }
                }
                let mut maps = Vec::new();
                for i in 1..=res.length() {
                    rep.line(format!("d_{i}:"));
                    rep.lines.extend(matrix_lines(&m.ring, &res.map(i)).into_iter().map(|l| format!("  {l}")));
                    maps.push(matrix_json(&m.ring, &res.map(i)));
                }
                rep.result = json!({ "ranks": res.ranks(), "complete": res.complete, "degrees": res.degrees, "maps": maps });
            }
            Compute::Ext(m, n, top) => {
                self.input(rep, m);
                let mm = self.module(m)?;
                let nn = match n {
                    Some(n) => {
                        self.input(rep, n);
                        self.module(n)?.clone()
                    }
                    None => FPModule::free(&mm.ring, 1),
                };
                let table = ext_table(mm, &nn, top.unwrap_or(w))?;
                let mut out = Vec::new();
                for (i, e) in table.iter().enumerate() {
                    rep.line(format!("Ext^{i} = {}", module_line(e)));
                    out.push(module_json(e));
                }
                rep.result = json!({ "ext": out });
            }
            Compute::Dual(n) => {
                self.input(rep, n);
                match self.bindings.get(&n.id) {
                    Some(Binding::Module(m)) => {
                        let d = dual_module(m);
                        rep.line(format!("M* = {}", module_line(&d.module)));
                        rep.line("generators as maps M -> A, one per column:");
                        rep.lines.extend(matrix_lines(&m.ring, &d.gens));
                        rep.result = json!({ "dual": module_json(&d.module), "generators": matrix_json(&m.ring, &d.gens) });
                    }
                    Some(Binding::Complex(c)) => {
                        let d = dual_complex(c);
                        rep.lines.extend(complex_lines(&d));
                        rep.result = complex_json(&d);
                    }
                    _ => unreachable!("checked by the parser"),
                }
            }
            Compute::Transpose(n) => {
                self.input(rep, n);
                let t = transpose(self.module(n)?);
                rep.line(format!("D(M) = {}", module_line(&t)));
                rep.lines.extend(matrix_lines(&t.ring, &t.pres));
                rep.result = json!({ "transpose": module_json(&t) });
            }
            Compute::Hilbert(n) => {
                self.input(rep, n);
                match self.bindings.get(&n.id) {
                    Some(Binding::Module(m)) => {
                        let h = m.hilbert_series()?;
                        rep.line(format!("H(t) = {h}"));
                        rep.result = json!({ "hilbert": hilbert_json(&h) });
                    }
                    Some(Binding::Complex(c)) => {
                        let mut out = serde_json::Map::new();
                        for i in c.lo..=c.hi() {
                            let h = c.cohomology(i);
                            rep.line(format!("H^{i} = {}", module_line(&h)));
                            out.insert(i.to_string(), module_json(&h));
                        }
                        rep.result = json!({ "cohomology": out });
                    }
                    _ => unreachable!("checked by the parser"),
                }
            }
            Compute::Fitting(n, i) => {
                self.input(rep, n);
                let m = self.module(n)?;
                let range: Vec<usize> = match i {
                    Some(i) => vec![*i],
                    None => (0..=m.ngens()).collect(),
                };
                let mut out = serde_json::Map::new();
                for i in range {
                    let f = m.fitting_ideal(i);
                    rep.line(format!("Fitt_{i} = {f}"));
                    out.insert(i.to_string(), json!(f.basis_strings()));
                }
                rep.result = json!({ "fitting": out });
            }
            Compute::Depth(n) => {
                self.input(rep, n);
                match depth_at_irrelevant(self.module(n)?, w)? {
                    Depth::Exact(d) => {
                        rep.line(format!("depth = {d}"));
                        rep.result = json!({ "depth": d, "exact": true });
                    }
                    Depth::AtLeast(d) => {
                        rep.line(format!("depth >= {d}"));
                        rep.result = json!({ "depth": d, "exact": false });
                    }
                }
            }
            Compute::Gdim(n) => {
                self.input(rep, n);
                let g = gorenstein_dim_estimate(self.module(n)?, w)?;
                rep.line(if g.conclusive { format!("G-dim = {}", g.value) } else { format!("G-dim >= {} (Ext does not vanish within the window)", g.value) });
                if !g.conclusive {
                    rep.verdict = rep.verdict.and(Verdict::Inconclusive);
                    rep.witnesses.push(Witness {
                        check: "window".into(),
                        subject: "G-dimension".into(),
                        verdict: Verdict::Inconclusive,
                        detail: format!("Ext^{w}(M,A) does not vanish"),
                    });
                }
                rep.result = json!({ "gdim": g.value, "conclusive": g.conclusive });
            }
        }
        Ok(())
    }

    fn approximation(&self, res: &ApproximationResult, rep: &mut Report) {
        let w = self.opts.window;
        rep.line(format!("n = {}, r = {}, s = {}", res.n, res.r, res.s));
        let mut betti = serde_json::Map::new();
        for (label, m) in [("L", &res.seq_a.left), ("M", &res.seq_a.middle), ("L'", &res.seq_b.middle), ("M'", &res.seq_b.right)] {
            let r = free_resolution(m, w);
            let suffix = if r.complete { "" } else { " ..." };
            rep.line(format!("{label}: betti {:?}{suffix}; {}", r.ranks(), module_line(m)));
            betti.insert(label.to_string(), json!({ "betti": r.ranks(), "complete": r.complete, "module": module_json(m) }));
        }
        rep.certificate(&res.certificate);
        let q = res.q.as_ref().map(complex_json);
        rep.result = json!({ "n": res.n, "r": res.r, "s": res.s, "modules": betti, "q": q });
    }
}

fn format_map(m: &RingMap) -> String {
    let s = &m.source.poly;
    let parts: Vec<String> = s.vars.iter().zip(&m.images).map(|(v, img)| format!("{v} -> {}", m.target.format(img))).collect();
    format!("{{ {} }}", parts.join(", "))
}

fn complex_lines(c: &FreeComplex) -> Vec<String> {
    let mut out = vec![format!("ranks {:?} starting at degree {}", c.ranks, c.lo)];
    for (k, d) in c.diffs.iter().enumerate() {
        out.push(format!("d^{}:", c.lo + k as i64));
        out.extend(matrix_lines(&c.ring, d).into_iter().map(|l| format!("  {l}")));
    }
    out
}

fn complex_json(c: &FreeComplex) -> Value {
    json!({
        "lo": c.lo,
        "ranks": c.ranks,
        "differentials": c.diffs.iter().map(|d| matrix_json(&c.ring, d)).collect::<Vec<_>>(),
        "degrees": c.degrees,
    })
}
