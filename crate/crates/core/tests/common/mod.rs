//! Seeded randomized suites shared by the property tests and the acceptance run.
#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rfx::approx::ShortExact;
use rfx::complexes::{dual_complex, ext_table, mapping_cone, resolution_complex, ComplexMap, FreeComplex};
use rfx::groebner::{ideal_gb, Vector};
use rfx::matrix::Matrix;
use rfx::polyring::{Coeff, Field, Monomial, MonomialOrder, Poly, PolyRing};
use rfx::quotmod::{evaluation_map, free_resolution, r_syzygies, transpose, FPModule, QuotientRing};
use rfx::reflexivity::{is_n_stably_reflexive, Certificate};

pub const CASES: u64 = 100;

pub type Suite = fn(&mut ChaCha8Rng) -> Result<(), String>;

pub const SUITES: &[(&str, Suite)] = &[
    ("buchberger confluence", gb_confluence),
    ("normal form idempotence", nf_idempotence),
    ("syzygy annihilation", syzygy_annihilation),
    ("d^2 = 0", differential_squares_to_zero),
    ("double dual of complexes", double_dual),
    ("ker/coker of M -> M** against Ext of D(M)", evaluation_series),
    ("two out of three on extensions", two_out_of_three),
];

/// Runs `CASES` cases, seeding each one from its index.
pub fn run(suite: Suite) -> Result<(), String> {
    for case in 0..CASES {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + case);
        suite(&mut rng).map_err(|e| format!("case {case}: {e}"))?;
    }
    Ok(())
}

fn poly_ring(vars: &[&str], field: Field, order: MonomialOrder) -> Arc<PolyRing> {
    Arc::new(PolyRing::new(field, vars, order).unwrap())
}

fn coeff(rng: &mut ChaCha8Rng) -> Coeff {
    let c = rng.gen_range(1..=4);
    Coeff::Small(if rng.gen_bool(0.5) { c } else { -c })
}

fn exponents(rng: &mut ChaCha8Rng, n: usize, deg: u32) -> Monomial {
    let mut e = vec![0u16; n];
    for _ in 0..deg {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::from_exponents(&e)
}

fn random_poly(p: &PolyRing, rng: &mut ChaCha8Rng, max_deg: u32, terms: usize) -> Poly {
    let terms = (0..terms)
        .map(|_| {
            let d = rng.gen_range(0..=max_deg);
            (exponents(rng, p.nvars(), d), coeff(rng))
        })
        .collect();
    p.from_terms(terms)
}

fn random_form(p: &PolyRing, rng: &mut ChaCha8Rng, deg: u32, terms: usize) -> Poly {
    let terms = (0..terms).map(|_| (exponents(rng, p.nvars(), deg), coeff(rng))).collect();
    p.from_terms(terms)
}

fn nonzero(mut f: impl FnMut() -> Poly) -> Poly {
    loop {
        let p = f();
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_field(rng: &mut ChaCha8Rng) -> Field {
    if rng.gen_bool(0.25) {
        Field::prime([7, 101, 32003][rng.gen_range(0..3)]).unwrap()
    } else {
        Field::Rationals
    }
}

pub fn gb_confluence(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let lex = rng.gen_bool(0.3);
    let order = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
    let p = poly_ring(&["x", "y", "z"], random_field(rng), order);
    let count = if lex { 2 } else { rng.gen_range(2..=3) };
    let gens: Vec<Poly> = (0..count).map(|_| nonzero(|| random_poly(&p, rng, 2, 3))).collect();
    let gb = ideal_gb(&p, &gens);
    if !gb.is_confluent() {
        return Err(format!("S-pair left a remainder for {:?}", gens.iter().map(|g| p.format(g)).collect::<Vec<_>>()));
    }
    if let Some(g) = gens.iter().find(|g| !gb.contains_poly(g)) {
        return Err(format!("generator {} not in its own ideal", p.format(g)));
    }
    Ok(())
}

pub fn nf_idempotence(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let p = poly_ring(&["x", "y", "z"], random_field(rng), MonomialOrder::DegRevLex);
    let gens: Vec<Poly> = (0..3).map(|_| nonzero(|| random_poly(&p, rng, 2, 3))).collect();
    let gb = ideal_gb(&p, &gens);
    let f = random_poly(&p, rng, 4, 6);
    let once = gb.reduce_poly(&f);
    if gb.reduce_poly(&once) != once {
        return Err(format!("NF not idempotent on {}", p.format(&f)));
    }
    if !gb.contains_poly(&p.sub(&f, &once)) {
        return Err(format!("f - NF(f) outside the ideal for {}", p.format(&f)));
    }
    Ok(())
}

fn random_quotient(rng: &mut ChaCha8Rng) -> Arc<QuotientRing> {
    let p = poly_ring(&["x", "y", "z"], Field::Rationals, MonomialOrder::DegRevLex);
    if rng.gen_bool(0.3) {
        return QuotientRing::polynomial(p);
    }
    let q = nonzero(|| random_form(&p, rng, 2, 3));
    QuotientRing::auto(p, &[q])
}

fn random_matrix(ring: &QuotientRing, rng: &mut ChaCha8Rng, rows: usize, cols: usize, deg: u32) -> Matrix {
    let p = &ring.poly;
    Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| ring.reduce(&random_form(p, rng, deg, 2))).collect()).collect())
}

pub fn syzygy_annihilation(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let a = random_quotient(rng);
    let p = &a.poly;
    let (rows, cols) = (rng.gen_range(1..=2), rng.gen_range(2..=3));
    let m = Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| random_poly(p, rng, 2, 2)).collect()).collect());
    for v in r_syzygies(&a, rows, &m.cols()) {
        let image: Vector = m.mul_vec(p, &v);
        if image.iter().any(|e| !a.is_zero(e)) {
            return Err(format!("syzygy does not annihilate over {a}"));
        }
    }
    Ok(())
}

fn random_graded_module(rng: &mut ChaCha8Rng, a: &Arc<QuotientRing>) -> FPModule {
    let rows = rng.gen_range(1..=2);
    let cols = rng.gen_range(1..=2);
    FPModule::auto(a, random_matrix(a, rng, rows, cols, 1), Some(vec![0; rows]))
}

pub fn differential_squares_to_zero(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let a = random_quotient(rng);
    let m = random_graded_module(rng, &a);
    let res = free_resolution(&m, 3);
    let p = &a.poly;
    for i in 1..res.length() {
        if !a.reduce_matrix(&res.map(i).mul(p, &res.map(i + 1))).is_zero() {
            return Err(format!("d_{i} d_{} != 0 over {a}", i + 1));
        }
    }
    let e = resolution_complex(&res);
    let cone = mapping_cone(&ComplexMap::identity(&e));
    FreeComplex::new(&a, cone.lo, cone.ranks.clone(), cone.diffs.clone(), None).map_err(|err| format!("cone of the identity: {err}"))?;
    Ok(())
}

pub fn double_dual(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let a = random_quotient(rng);
    let m = random_graded_module(rng, &a);
    let e = resolution_complex(&free_resolution(&m, 3));
    let d = dual_complex(&e);
    FreeComplex::new(&a, d.lo, d.ranks.clone(), d.diffs.clone(), d.degrees.clone()).map_err(|err| format!("dual complex: {err}"))?;
    if !dual_complex(&d).equals(&e) {
        return Err(format!("E^vv differs from E over {a}"));
    }
    Ok(())
}

pub fn evaluation_series(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let p = poly_ring(&["x", "y", "z"], Field::Rationals, MonomialOrder::DegRevLex);
    let rels = [["x*y"], ["x*z - y^2"], ["x^2 + y^2 + z^2"]];
    let r = &rels[rng.gen_range(0..rels.len())];
    let a = QuotientRing::auto(p.clone(), &[p.parse(r[0]).unwrap()]);
    let m = random_graded_module(rng, &a);
    let ev = evaluation_map(&m);
    let exts = ext_table(&transpose(&m), &FPModule::free(&a, 1), 2).map_err(|e| e.to_string())?;
    let series = |x: &FPModule| x.hilbert_series().map_err(|e| e.to_string());
    if series(&ev.kernel)? != series(&exts[1])? {
        return Err(format!("ker σ vs Ext^1(D(M),A) over {a}: {:?}", m.to_strings()));
    }
    if series(&ev.cokernel)? != series(&exts[2])? {
        return Err(format!("coker σ vs Ext^2(D(M),A) over {a}: {:?}", m.to_strings()));
    }
    Ok(())
}

/// Matrix factorizations of `xy - uv`, conjugated by random unimodular matrices.
fn random_mf(rng: &mut ChaCha8Rng, a: &QuotientRing) -> (Matrix, Matrix) {
    let p = &a.poly;
    let pick: [(&[&[&str]], &[&[&str]]); 4] = [
        (&[&["x", "u"], &["v", "y"]], &[&["y", "-u"], &["-v", "x"]]),
        (&[&["y", "-u"], &["-v", "x"]], &[&["x", "u"], &["v", "y"]]),
        (&[&["x", "v"], &["u", "y"]], &[&["y", "-v"], &["-u", "x"]]),
        (&[&["y", "-v"], &["-u", "x"]], &[&["x", "v"], &["u", "y"]]),
    ];
    let (phi, psi) = pick[rng.gen_range(0..4)];
    let parse = |rows: &[&[&str]]| Matrix::parse(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap();
    let (mut phi, mut psi) = (parse(phi), parse(psi));
    // phi -> g phi h, psi -> h^-1 psi g^-1 with g, h unitriangular
    let unit = |c: i64, upper: bool| {
        let mut m = Matrix::identity(p, 2);
        if upper {
            m.set(0, 1, p.from_i64(c));
        } else {
            m.set(1, 0, p.from_i64(c));
        }
        m
    };
    for _ in 0..2 {
        let (c, upper) = (rng.gen_range(-2..=2), rng.gen_bool(0.5));
        let (g, gi) = (unit(c, upper), unit(-c, upper));
        let (c, upper) = (rng.gen_range(-2..=2), rng.gen_bool(0.5));
        let (h, hi) = (unit(c, upper), unit(-c, upper));
        phi = g.mul(p, &phi).mul(p, &h);
        psi = hi.mul(p, &psi).mul(p, &gi);
    }
    (phi, psi)
}

/// `0 → coker Φ₁ → coker [[Φ₁, C], [0, Φ₃]] → coker Φ₃ → 0` with `Ψ₁ C Ψ₃ = 0`,
/// which makes the left map injective.
fn random_extension(rng: &mut ChaCha8Rng, a: &Arc<QuotientRing>) -> Result<ShortExact, String> {
    let p = &a.poly;
    let (phi1, psi1) = random_mf(rng, a);
    let (phi3, psi3) = random_mf(rng, a);
    // vec(Ψ₁ C Ψ₃) = (Ψ₃ᵀ ⊗ Ψ₁) vec(C)
    let k = psi3.transpose().kron(p, &psi1);
    let sols = r_syzygies(a, 4, &k.cols());
    let mut c = vec![p.zero(); 4];
    for s in &sols {
        let w = p.from_i64(rng.gen_range(-2..=2));
        c = c.iter().zip(s).map(|(x, y)| a.reduce(&p.add(x, &p.mul(&w, y)))).collect();
    }
    let c = Matrix::unvec(2, 2, &c);
    let pres = phi1.hconcat(&c).vconcat(&Matrix::zeros(2, 2).hconcat(&phi3));
    let m1 = FPModule::auto(a, phi1, Some(vec![0; 2]));
    let m3 = FPModule::auto(a, phi3, Some(vec![0; 2]));
    let m2 = FPModule::new(a, pres, None).map_err(|e| e.to_string())?;
    let inc = Matrix::identity(p, 2).vconcat(&Matrix::zeros(2, 2));
    let proj = Matrix::zeros(2, 2).hconcat(&Matrix::identity(p, 2));
    Ok(ShortExact {
        left: m1,
        middle: m2,
        right: m3,
        inc,
        proj,
    })
}

pub fn two_out_of_three(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let p = poly_ring(&["x", "y", "u", "v"], Field::Rationals, MonomialOrder::DegRevLex);
    let a = QuotientRing::auto(p.clone(), &[p.parse("x*y - u*v").unwrap()]);
    let seq = random_extension(rng, &a)?;
    let mut cert = Certificate::new(1);
    seq.check(&mut cert, "extension");
    if !cert.holds() {
        return Err("constructed extension is not exact".into());
    }
    let n = 3;
    let stable = |m: &FPModule, n: usize| is_n_stably_reflexive(m, n).map(|c| c.holds()).map_err(|e| e.to_string());
    let (s1, s2, s3) = (stable(&seq.left, n)?, stable(&seq.middle, n)?, stable(&seq.right, n)?);
    if s1 && s3 && !s2 {
        return Err("outer terms stably reflexive but the middle is not".into());
    }
    if s2 && s3 && !stable(&seq.left, n - 1)? {
        return Err("middle and right stably reflexive but the left fails at n - 1".into());
    }
    if !(s1 && s3) {
        return Err("matrix factorization cokernels must be stably reflexive".into());
    }
    Ok(())
}
