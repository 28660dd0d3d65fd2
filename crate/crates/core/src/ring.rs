//! Graded quotient rings `k[x] / I` handled one internal degree at a time.
//!
//! For each degree `d` the relator ideal's span `I_d` is computed by row
//! reducing all monomial multiples of the relators. Columns are ordered by
//! descending graded-lex order, so pivots are leading monomials and the
//! non-pivot monomials form the standard basis of `S_d`. Normal forms are
//! unique because reduction clears every pivot coordinate.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{collect_sparse, Echelon, SparseVec};
use crate::poly::{hilbert_numerator, monomials_of_degree, IntPoly, Monomial};
use crate::presentation::{Presentation, Relator};

/// A homogeneous polynomial as `(monomial, coefficient)` terms.
pub type Terms<E> = Vec<(Monomial, E)>;

/// Standard-monomial basis of one graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: u32,
    pub basis: Vec<Monomial>,
}

/// Hilbert function values `dim S_d` for `d = 0..=D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTable(pub Vec<usize>);

/// Cached data for one internal degree.
#[derive(Debug)]
pub struct RingPiece<F: Field> {
    pub degree: u32,
    /// All monomials of this degree, largest first.
    pub monomials: Vec<Monomial>,
    monomial_index: HashMap<Monomial, usize>,
    /// Standard monomials (a subsequence of `monomials`).
    pub standard: Vec<Monomial>,
    standard_index: HashMap<Monomial, usize>,
    /// Normal form of each monomial in standard coordinates.
    normal: Vec<SparseVec<F::Elem>>,
    pub ideal_dim: usize,
}

impl<F: Field> RingPiece<F> {
    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn standard_position(&self, m: &Monomial) -> Option<usize> {
        self.standard_index.get(m).copied()
    }

    pub fn normal_form_of(&self, m: &Monomial) -> &SparseVec<F::Elem> {
        &self.normal[self.monomial_index[m]]
    }
}

#[derive(Debug)]
pub struct QuotientRing<F: Field> {
    field: F,
    names: Vec<String>,
    weights: Vec<u32>,
    relators: Vec<(u32, Terms<F::Elem>)>,
    bound: u32,
    pieces: RwLock<BTreeMap<u32, Arc<RingPiece<F>>>>,
}

impl<F: Field> QuotientRing<F> {
    /// The ring cut out by all relators of `pres`.
    pub fn new(field: F, pres: &Presentation, bound: u32) -> Self {
        Self::with_relators(field, pres, pres.relators(), bound)
    }

    /// The ring cut out by the given relators over the variables of `pres`.
    pub fn with_relators(field: F, pres: &Presentation, relators: &[Relator], bound: u32) -> Self {
        let relators = relators.iter().map(|r| (r.degree, convert(&field, &r.poly))).collect();
        QuotientRing {
            field,
            names: pres.names(),
            weights: pres.weights(),
            relators,
            bound,
            pieces: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn convert(&self, p: &IntPoly) -> Terms<F::Elem> {
        convert(&self.field, p)
    }

    /// Data for degree `d`, computed on first use. Not bounds-checked.
    pub fn piece(&self, d: u32) -> Arc<RingPiece<F>> {
        if let Some(p) = self.pieces.read().expect("piece cache poisoned").get(&d) {
            return Arc::clone(p);
        }
        let piece = Arc::new(self.compute_piece(d));
        let mut cache = self.pieces.write().expect("piece cache poisoned");
        Arc::clone(cache.entry(d).or_insert(piece))
    }

    fn compute_piece(&self, d: u32) -> RingPiece<F> {
        let field = &self.field;
        let monomials = monomials_of_degree(&self.weights, d);
        let monomial_index: HashMap<Monomial, usize> =
            monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span = Echelon::new(field.clone());
        for (deg, terms) in &self.relators {
            if *deg > d {
                continue;
            }
            for u in monomials_of_degree(&self.weights, d - deg) {
                let row = collect_sparse(field, terms.iter().map(|(m, c)| (monomial_index[&u.mul(m)], c.clone())));
                span.insert(&row);
            }
        }
        let standard_ids: Vec<usize> = (0..monomials.len()).filter(|i| !span.is_pivot(*i)).collect();
        let position: HashMap<usize, usize> = standard_ids.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let normal = (0..monomials.len())
            .map(|i| {
                span.reduce(&vec![(i, field.one())])
                    .into_iter()
                    .map(|(j, c)| (position[&j], c))
                    .collect()
            })
            .collect();
        let standard: Vec<Monomial> = standard_ids.iter().map(|&i| monomials[i].clone()).collect();
        let standard_index = standard.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        RingPiece { degree: d, monomials, monomial_index, standard, standard_index, normal, ideal_dim: span.rank() }
    }

    /// Standard basis of `S_d`.
    pub fn quotient_basis(&self, d: u32) -> Result<GradedPiece> {
        if d > self.bound {
            return Err(Error::BoundExceeded { what: "internal degree", value: d, bound: self.bound });
        }
        Ok(GradedPiece { degree: d, basis: self.piece(d).standard.clone() })
    }

    /// Minimal generators of the initial ideal through `max_degree`.
    pub fn initial_generators(&self, max_degree: u32) -> Vec<Monomial> {
        let mut gens: Vec<Monomial> = Vec::new();
        for d in 1..=max_degree {
            let piece = self.piece(d);
            for m in &piece.monomials {
                if piece.standard_position(m).is_none() && !gens.iter().any(|g| g.divides(m)) {
                    gens.push(m.clone());
                }
            }
        }
        gens
    }

    /// Exact Hilbert numerator when the computation through `max_degree`
    /// already determines the whole initial ideal: every relator lies in
    /// range and every S-pair of non-coprime initial generators does too.
    pub fn exact_hilbert_numerator(&self, max_degree: u32) -> Option<Vec<i64>> {
        if self.relators.iter().any(|(d, _)| *d > max_degree) {
            return None;
        }
        let gens = self.initial_generators(max_degree);
        for (i, a) in gens.iter().enumerate() {
            let coprime = |b: &Monomial| a.0.iter().zip(&b.0).all(|(x, y)| *x == 0 || *y == 0);
            if gens[i + 1..].iter().any(|b| !coprime(b) && a.lcm(b).degree(&self.weights) > max_degree) {
                return None;
            }
        }
        Some(hilbert_numerator(&gens, &self.weights))
    }

    pub fn hilbert_coefficients(&self, max_degree: u32) -> HilbertTable {
        HilbertTable((0..=max_degree).map(|d| self.piece(d).dim()).collect())
    }

    /// Normal form of a homogeneous polynomial of degree `d`, in standard coordinates.
    pub fn normal_form(&self, d: u32, terms: &[(Monomial, F::Elem)]) -> SparseVec<F::Elem> {
        let piece = self.piece(d);
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (m, c) in terms {
            acc = crate::linalg::axpy(&self.field, &acc, c, piece.normal_form_of(m));
        }
        acc
    }

    /// Normal form of the product of two monomials, as standard-monomial terms.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Terms<F::Elem> {
        let m = a.mul(b);
        let d = m.degree(&self.weights);
        let piece = self.piece(d);
        if piece.standard_position(&m).is_some() {
            return vec![(m, self.field.one())];
        }
        piece.normal_form_of(&m).iter().map(|(k, c)| (piece.standard[*k].clone(), c.clone())).collect()
    }

    /// Standard-coordinate vector back to terms.
    pub fn terms_of(&self, d: u32, v: &SparseVec<F::Elem>) -> Terms<F::Elem> {
        let piece = self.piece(d);
        v.iter().map(|(k, c)| (piece.standard[*k].clone(), c.clone())).collect()
    }

    /// Span of the ideal generated by `gens` inside `S_d`, in standard coordinates.
    pub fn ideal_span(&self, gens: &[(u32, Terms<F::Elem>)], d: u32) -> Echelon<F> {
        let mut span = Echelon::new(self.field.clone());
        for (deg, g) in gens {
            if *deg > d {
                continue;
            }
            for u in self.piece(d - deg).standard.iter() {
                let prod: Terms<F::Elem> = g.iter().map(|(m, c)| (u.mul(m), c.clone())).collect();
                span.insert(&self.normal_form(d, &prod));
            }
        }
        span
    }
}

fn convert<F: Field>(field: &F, p: &IntPoly) -> Terms<F::Elem> {
    p.terms
        .iter()
        .map(|(m, c)| (m.clone(), field.from_bigint(c)))
        .filter(|(_, c)| !field.is_zero(c))
        .collect()
}
