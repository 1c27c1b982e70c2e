//! Quotient rings, finitely presented modules and the operations on them.

mod hilbert;
mod module;
mod resolve;
mod ring;

pub use hilbert::{monomial_numerator, series_from_leads, HilbertSeries, Laurent};
pub use module::*;
pub use resolve::{base_variables, fibre, fibre_map, free_resolution, section_ideal_gens, syzygy, Resolution};
pub use ring::{Ideal, QuotientRing, RingMap};
