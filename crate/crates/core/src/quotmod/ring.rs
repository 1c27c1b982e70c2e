use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{ideal_gb, GroebnerBasis};
use crate::matrix::Matrix;
use crate::polyring::{Coeff, Field, Poly, PolyRing};

/// `P / I` for a polynomial ring `P`, with an optional positive grading.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub poly: Arc<PolyRing>,
    /// Reduced Gröbner basis of the defining ideal.
    pub ideal: GroebnerBasis,
    pub weights: Option<Vec<i64>>,
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && self.ideal.elems == other.ideal.elems && self.weights == other.weights
    }
}

impl Eq for QuotientRing {}

impl QuotientRing {
    /// Validates positivity of the weights and homogeneity of the ideal.
    pub fn new(poly: Arc<PolyRing>, gens: &[Poly], weights: Option<Vec<i64>>) -> Result<Arc<QuotientRing>> {
        if let Some(w) = &weights {
            if w.len() != poly.nvars() {
                return Err(Error::LengthMismatch {
                    expected: poly.nvars(),
                    got: w.len(),
                });
            }
            if w.iter().any(|&x| x <= 0) {
                return Err(Error::NotGraded("weights must be positive".into()));
            }
            if let Some(g) = gens.iter().find(|g| !g.is_homogeneous(w)) {
                return Err(Error::NotGraded(format!(
                    "{} is not homogeneous",
                    poly.format(g)
                )));
            }
        }
        let ideal = ideal_gb(&poly, gens);
        Ok(Arc::new(QuotientRing { poly, ideal, weights }))
    }

    /// Standard grading when every generator is homogeneous, ungraded otherwise.
    pub fn auto(poly: Arc<PolyRing>, gens: &[Poly]) -> Arc<QuotientRing> {
        let w = vec![1; poly.nvars()];
        Self::with_weights_if_homogeneous(poly, gens, w)
    }

    pub fn with_weights_if_homogeneous(poly: Arc<PolyRing>, gens: &[Poly], w: Vec<i64>) -> Arc<QuotientRing> {
        let graded = w.iter().all(|&x| x > 0) && gens.iter().all(|g| g.is_homogeneous(&w));
        let ideal = ideal_gb(&poly, gens);
        Arc::new(QuotientRing {
            poly,
            ideal,
            weights: graded.then_some(w),
        })
    }

    pub fn polynomial(poly: Arc<PolyRing>) -> Arc<QuotientRing> {
        Self::auto(poly, &[])
    }

    pub fn field(&self) -> Field {
        self.poly.field
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn is_graded(&self) -> bool {
        self.weights.is_some()
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        if self.ideal.is_empty() {
            p.clone()
        } else {
            self.ideal.reduce_poly(p)
        }
    }

    pub fn reduce_matrix(&self, m: &Matrix) -> Matrix {
        m.map(|p| self.reduce(p))
    }

    pub fn is_zero(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        Ok(self.reduce(&crate::polyring::parse_poly(&self.poly, s)?))
    }

    pub fn format(&self, p: &Poly) -> String {
        self.poly.format(p)
    }

    pub fn ideal_gens(&self) -> Vec<Poly> {
        self.ideal.elems.iter().map(|v| v[0].clone()).collect()
    }

    /// Weighted degree of a homogeneous element.
    pub fn degree(&self, p: &Poly) -> Option<i64> {
        p.homogeneous_degree(self.weights.as_ref()?)
    }

    /// Krull dimension.
    pub fn dim(&self) -> i64 {
        if self.ideal.is_empty() {
            self.nvars() as i64
        } else {
            self.ideal.lead_ideal_dimension()
        }
    }

    /// Nonzero constants.
    pub fn is_unit(&self, p: &Poly) -> bool {
        let r = self.reduce(p);
        !r.is_zero() && r.is_constant()
    }

    pub fn variables(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.poly.var(i)).collect()
    }

    pub fn constant(&self, c: Coeff) -> Poly {
        self.poly.constant(c)
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = match self.poly.field {
            Field::Rationals => "QQ".to_string(),
            Field::Prime(p) => format!("Fp:{p}"),
        };
        write!(f, "{}[{}]", field, self.poly.vars.join(","))?;
        if !self.ideal.is_empty() {
            let gens: Vec<String> = self.ideal_gens().iter().map(|g| self.format(g)).collect();
            write!(f, "/({})", gens.join(", "))?;
        }
        Ok(())
    }
}

/// Ring homomorphism given by the images of the source variables.
#[derive(Clone, Debug)]
pub struct RingMap {
    pub source: Arc<QuotientRing>,
    pub target: Arc<QuotientRing>,
    pub images: Vec<Poly>,
}

impl RingMap {
    pub fn new(source: Arc<QuotientRing>, target: Arc<QuotientRing>, images: Vec<Poly>) -> Result<RingMap> {
        if images.len() != source.nvars() {
            return Err(Error::LengthMismatch {
                expected: source.nvars(),
                got: images.len(),
            });
        }
        if source.field() != target.field() {
            return Err(Error::RingMismatch("maps must preserve the coefficient field".into()));
        }
        let images: Vec<Poly> = images.iter().map(|p| target.reduce(p)).collect();
        let map = RingMap { source, target, images };
        for g in map.source.ideal_gens() {
            if !map.apply(&g).is_zero() {
                return Err(Error::InvalidMap(format!(
                    "relation {} does not map to zero",
                    map.source.format(&g)
                )));
            }
        }
        Ok(map)
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let q = self.source.poly.substitute(p, &self.images, &self.target.poly);
        self.target.reduce(&q)
    }

    pub fn apply_matrix(&self, m: &Matrix) -> Matrix {
        m.map(|p| self.apply(p))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingMap) -> Result<RingMap> {
        if *self.target != *other.source {
            return Err(Error::RingMismatch("maps are not composable".into()));
        }
        let images = self.images.iter().map(|p| other.apply(p)).collect();
        RingMap::new(self.source.clone(), other.target.clone(), images)
    }

    pub fn is_identity(&self) -> bool {
        *self.source == *self.target
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, p)| *p == self.target.reduce(&self.target.poly.var(i)))
    }

    /// Identity map of a ring.
    pub fn identity(ring: &Arc<QuotientRing>) -> RingMap {
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
            images: ring.variables(),
        }
    }
}

/// Ideal of a quotient ring, stored through a Gröbner basis of its preimage.
#[derive(Clone, Debug)]
pub struct Ideal {
    pub ring: Arc<QuotientRing>,
    pub gens: Vec<Poly>,
    pub gb: GroebnerBasis,
}

impl Ideal {
    pub fn new(ring: &Arc<QuotientRing>, gens: Vec<Poly>) -> Ideal {
        let gens: Vec<Poly> = gens.iter().map(|g| ring.reduce(g)).filter(|g| !g.is_zero()).collect();
        let mut all = gens.clone();
        all.extend(ring.ideal_gens());
        let gb = ideal_gb(&ring.poly, &all);
        Ideal {
            ring: ring.clone(),
            gens,
            gb,
        }
    }

    pub fn unit(ring: &Arc<QuotientRing>) -> Ideal {
        Ideal::new(ring, vec![ring.poly.one()])
    }

    pub fn zero(ring: &Arc<QuotientRing>) -> Ideal {
        Ideal::new(ring, vec![])
    }

    pub fn maximal_at_origin(ring: &Arc<QuotientRing>) -> Ideal {
        Ideal::new(ring, ring.variables())
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.gb.contains_poly(p)
    }

    pub fn is_unit(&self) -> bool {
        self.gb.is_everything()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty() || self.gens.iter().all(|g| self.ring.is_zero(g))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let r = &self.ring.poly;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(r.mul(a, b));
            }
        }
        Ideal::new(&self.ring, g)
    }

    /// Reduced Gröbner basis elements that are nonzero in the ring.
    pub fn basis(&self) -> Vec<Poly> {
        self.gb
            .elems
            .iter()
            .map(|v| v[0].clone())
            .filter(|p| !self.ring.is_zero(p))
            .collect()
    }

    pub fn basis_strings(&self) -> Vec<String> {
        self.basis().iter().map(|p| self.ring.format(p)).collect()
    }

    /// The quotient ring by this ideal.
    pub fn quotient_ring(&self) -> Arc<QuotientRing> {
        let gens: Vec<Poly> = self.gb.elems.iter().map(|v| v[0].clone()).collect();
        match &self.ring.weights {
            Some(w) => QuotientRing::with_weights_if_homogeneous(self.ring.poly.clone(), &gens, w.clone()),
            None => Arc::new(QuotientRing {
                poly: self.ring.poly.clone(),
                ideal: ideal_gb(&self.ring.poly, &gens),
                weights: None,
            }),
        }
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.poly == other.ring.poly && self.gb.elems == other.gb.elems
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.basis_strings();
        if b.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", b.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::MonomialOrder;

    #[test]
    fn node_ring_and_ideals() {
        let p = Arc::new(PolyRing::new(Field::Rationals, &["x", "y"], MonomialOrder::DegRevLex).unwrap());
        let a = QuotientRing::auto(p.clone(), &[p.parse("x*y").unwrap()]);
        assert!(a.is_graded());
        assert_eq!(a.dim(), 1);
        assert_eq!(a.to_string(), "QQ[x,y]/(x*y)");
        assert!(a.is_zero(&p.parse("x^2*y").unwrap()));
        let m = Ideal::maximal_at_origin(&a);
        assert_eq!(m.to_string(), "(y, x)");
        let sq = m.product(&m);
        assert!(!sq.contains(&p.parse("x").unwrap()));
        assert!(sq.contains(&p.parse("x^2 + y^2").unwrap()));
    }

    #[test]
    fn ring_maps_check_relations() {
        let s = Arc::new(PolyRing::new(Field::Rationals, &["b", "c"], MonomialOrder::DegRevLex).unwrap());
        let s = QuotientRing::polynomial(s);
        let p = Arc::new(PolyRing::new(Field::Rationals, &["b", "c", "x", "y"], MonomialOrder::DegRevLex).unwrap());
        let r = QuotientRing::auto(p.clone(), &[p.parse("x*y - b*c").unwrap()]);
        let sp = &s.poly;
        let ok = RingMap::new(r.clone(), s.clone(), vec![sp.parse("b").unwrap(), sp.parse("c").unwrap(), sp.parse("b").unwrap(), sp.parse("c").unwrap()]);
        assert!(ok.is_ok());
        let bad = RingMap::new(r, s.clone(), vec![sp.parse("b").unwrap(), sp.parse("c").unwrap(), sp.parse("1").unwrap(), sp.parse("c").unwrap()]);
        assert!(matches!(bad, Err(Error::InvalidMap(_))));
    }
}
