//! Reflexivity certificates: reflexive, n-stably reflexive (absolute and
//! fibrewise), left n-orthogonal modules, hulls and Gorenstein dimension.

use serde::Serialize;

use crate::complexes::{dual_complex, ext_from_resolution, ext_table, is_regular_sequence_on_fibre, splice, FreeComplex};
use crate::error::{Error, Result};
use crate::polyring::{Coeff, Poly};
use crate::quotmod::{dual_module, evaluation_map, fibre, free_resolution, syzygy, transpose, FPModule, QuotientRing, RingMap};
#[cfg(test)]
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    /// Conjunction: any failure wins, then any inconclusive.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Holds,
        }
    }

    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Holds => 0,
            Verdict::Fails => 1,
            Verdict::Inconclusive => 3,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: String,
    pub subject: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub window: usize,
    pub witnesses: Vec<Witness>,
    /// Points of the base at which a relative certificate was sampled.
    pub sampled_points: Vec<Vec<String>>,
}

impl Certificate {
    pub fn new(window: usize) -> Certificate {
        Certificate {
            verdict: Verdict::Holds,
            window,
            witnesses: Vec::new(),
            sampled_points: Vec::new(),
        }
    }

    pub fn push(&mut self, check: impl Into<String>, subject: impl Into<String>, verdict: Verdict, detail: impl Into<String>) {
        self.verdict = self.verdict.and(verdict);
        self.witnesses.push(Witness {
            check: check.into(),
            subject: subject.into(),
            verdict,
            detail: detail.into(),
        });
    }

    pub fn absorb(&mut self, other: Certificate, prefix: &str) {
        for w in other.witnesses {
            let subject = if prefix.is_empty() { w.subject } else { format!("{prefix}: {}", w.subject) };
            self.push(w.check, subject, w.verdict, w.detail);
        }
        self.verdict = self.verdict.and(other.verdict);
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Short description of a module for witness details.
pub fn describe(m: &FPModule) -> String {
    if m.is_zero() {
        return "0".into();
    }
    match m.hilbert_series() {
        Ok(h) => format!("nonzero, Hilbert series {h}"),
        Err(_) => format!("nonzero, {} generators and {} relations", m.ngens(), m.nrels()),
    }
}

fn vanishing(cert: &mut Certificate, check: &str, subject: &str, m: &FPModule) {
    cert.push(check, subject, Verdict::from_bool(m.is_zero()), describe(m));
}

/// `M` is reflexive iff `Ext^1(D(M), A) = 0 = Ext^2(D(M), A)`; the kernel
/// and cokernel of `σ_M` are computed as well and must agree.
pub fn is_reflexive(m: &FPModule) -> Certificate {
    let mut cert = Certificate::new(1);
    let a = FPModule::free(&m.ring, 1);
    let d = transpose(m);
    let exts = ext_table(&d, &a, 2).expect("resolution long enough");
    vanishing(&mut cert, "ext-vanishing", "Ext^1(D(M),A)", &exts[1]);
    vanishing(&mut cert, "ext-vanishing", "Ext^2(D(M),A)", &exts[2]);
    let ev = evaluation_map(m);
    let agree = ev.kernel.is_zero() == exts[1].is_zero() && ev.cokernel.is_zero() == exts[2].is_zero();
    let series_agree = match (ev.kernel.hilbert_series(), exts[1].hilbert_series(), ev.cokernel.hilbert_series(), exts[2].hilbert_series()) {
        (Ok(a), Ok(b), Ok(c), Ok(d)) => a == b && c == d,
        _ => true,
    };
    cert.push(
        "evaluation-cross-check",
        "ker/coker of M -> M**",
        Verdict::from_bool(agree && series_agree),
        format!("ker {}; coker {}", describe(&ev.kernel), describe(&ev.cokernel)),
    );
    cert
}

/// Reflexive with `Ext^i(M, A) = 0 = Ext^i(M*, A)` for `0 < i < n`.
pub fn is_n_stably_reflexive(m: &FPModule, n: usize) -> Result<Certificate> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let mut cert = is_reflexive(m);
    cert.window = n;
    if n > 1 {
        let a = FPModule::free(&m.ring, 1);
        let dual = dual_module(m).module;
        let em = ext_table(m, &a, n - 1)?;
        let ed = ext_table(&dual, &a, n - 1)?;
        for i in 1..n {
            vanishing(&mut cert, "ext-vanishing", &format!("Ext^{i}(M,A)"), &em[i]);
            vanishing(&mut cert, "ext-vanishing", &format!("Ext^{i}(M*,A)"), &ed[i]);
        }
    }
    Ok(cert)
}

/// `Ext^i(N, A) = 0` for `0 < i ≤ n`.
pub fn is_left_n_orthogonal(m: &FPModule, n: usize) -> Result<Certificate> {
    let mut cert = Certificate::new(n);
    let a = FPModule::free(&m.ring, 1);
    let e = ext_table(m, &a, n)?;
    for (i, ei) in e.iter().enumerate().skip(1) {
        vanishing(&mut cert, "ext-vanishing", &format!("Ext^{i}(N,A)"), ei);
    }
    Ok(cert)
}

/// How the flatness of `M` over the base is established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flatness {
    /// Look for a complete-intersection witness.
    Witness,
    /// Taken on the caller's word.
    Asserted,
}

fn polynomial_cover(h: &RingMap) -> Result<RingMap> {
    let r = &h.target;
    let p = match &r.weights {
        Some(w) => QuotientRing::new(r.poly.clone(), &[], Some(w.clone()))?,
        None => QuotientRing::polynomial(r.poly.clone()),
    };
    RingMap::new(h.source.clone(), p, h.images.clone())
}

/// Complete-intersection flatness witness: the ring's relations (and, for an
/// ideal or cyclic module, its generators) form a sequence whose image in
/// the fibre of the ambient polynomial ring is regular.
pub fn flatness_witness(m: &FPModule, h: &RingMap, point: &[Coeff]) -> Result<Option<String>> {
    let cover = polynomial_cover(h)?;
    let rels = h.target.ideal_gens();
    let ring_flat = is_regular_sequence_on_fibre(&rels, &cover, point)?;
    if !ring_flat {
        return Ok(None);
    }
    let p = &h.target.poly;
    let fmt = |v: &[Poly]| v.iter().map(|f| p.format(f)).collect::<Vec<_>>().join(", ");
    if m.nrels() == 0 {
        return Ok(Some(format!("ring relations ({}) regular on the fibre; module free", fmt(&rels))));
    }
    let gens: Option<Vec<Poly>> = m.embedding.clone().or_else(|| {
        // a cyclic module R/(g) is flat when R/(g) is
        (m.ngens() == 1).then(|| m.pres.row(0))
    });
    let Some(gens) = gens else { return Ok(None) };
    let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    let full = crate::groebner::ideal_gb(p, &[rels.clone(), gens.clone()].concat());
    for cand in [gens.clone(), [rels.clone(), gens.clone()].concat()] {
        let same = crate::groebner::ideal_gb(p, &cand).elems == full.elems;
        if same && is_regular_sequence_on_fibre(&cand, &cover, point)? {
            return Ok(Some(format!("quotient cut out by ({}), regular on the fibre", fmt(&cand))));
        }
    }
    Ok(None)
}

/// Fibrewise `n`-stable reflexivity at finitely many sampled points.
pub fn relative_certificate(m: &FPModule, h: &RingMap, points: &[Vec<Coeff>], n: usize, flat: Flatness) -> Result<Certificate> {
    let mut cert = Certificate::new(n);
    for pt in points {
        let label: Vec<String> = pt.iter().map(|c| c.to_string()).collect();
        let name = format!("({})", label.join(","));
        match flat {
            Flatness::Asserted => cert.push("flatness", &name, Verdict::Holds, "asserted by the caller"),
            Flatness::Witness => match flatness_witness(m, h, pt)? {
                Some(w) => cert.push("flatness", &name, Verdict::Holds, w),
                None => cert.push("flatness", &name, Verdict::Inconclusive, "no complete-intersection witness"),
            },
        }
        let f = fibre(m, h, pt)?;
        let sub = is_n_stably_reflexive(&f, n)?;
        cert.absorb(sub, &format!("fibre at {name}"));
        cert.sampled_points.push(label);
    }
    Ok(cert)
}

/// A hull for `M` with its windowed vanishing certificate.
#[derive(Clone, Debug)]
pub struct Hull {
    pub complex: FreeComplex,
    pub certificate: Certificate,
}

/// Splices resolutions of `M` and `M*`, then checks `H^i(E) = 0 = H^i(E^∨)`
/// at every non-edge index.
pub fn hull(m: &FPModule, window: usize) -> Hull {
    let p = free_resolution(m, window + 1);
    let dual = dual_module(m);
    let q = free_resolution(&dual.module, window + 1);
    let e = splice(&p, &q, &dual);
    let mut cert = Certificate::new(window);
    let ev = evaluation_map(m);
    if !ev.kernel.is_zero() {
        cert.push("torsionless", "M -> M**", Verdict::Fails, format!("kernel {}", describe(&ev.kernel)));
    }
    let ed = dual_complex(&e);
    for (name, c) in [("E", &e), ("E^v", &ed)] {
        for i in c.lo..=c.hi() {
            if c.is_edge(i) {
                continue;
            }
            vanishing(&mut cert, "cohomology", &format!("H^{i}({name})"), &c.cohomology(i));
        }
    }
    Hull { complex: e, certificate: cert }
}

/// Gorenstein dimension read off from `Ext^i(N, A)` for `i ≤ window`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GdimEstimate {
    pub value: usize,
    /// False when `Ext^window(N, A) ≠ 0`, so vanishing has not stabilised.
    pub conclusive: bool,
}

pub fn gorenstein_dim_estimate(m: &FPModule, window: usize) -> Result<GdimEstimate> {
    if window == 0 {
        return Err(Error::Window("window must be at least 1".into()));
    }
    let res = free_resolution(m, window + 1);
    let a = FPModule::free(&m.ring, 1);
    let idx: Vec<usize> = (1..=window).collect();
    let exts = ext_from_resolution(&res, &a, &idx)?;
    let last = exts.iter().rposition(|e| !e.is_zero()).map_or(0, |k| k + 1);
    Ok(GdimEstimate {
        value: last,
        conclusive: res.complete || last < window,
    })
}

/// Checks that `N` is left `2n`-orthogonal, then certifies `Ω^{n+1} N`
/// `n`-stably reflexive.
pub fn orthogonal_to_syzygy(m: &FPModule, n: usize) -> Result<Certificate> {
    let hyp = is_left_n_orthogonal(m, 2 * n)?;
    if !hyp.holds() {
        return Err(Error::Precondition(format!("N is not left {}-orthogonal", 2 * n)));
    }
    let mut cert = Certificate::new(n);
    cert.absorb(hyp, "hypothesis");
    let om = syzygy(m, n + 1);
    cert.absorb(is_n_stably_reflexive(&om, n.max(1))?, &format!("Omega^{} N", n + 1));
    Ok(cert)
}
