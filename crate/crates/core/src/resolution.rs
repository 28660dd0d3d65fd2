//! Degree-by-degree construction of Koszul complexes, minimal models and
//! acyclic closures.
//!
//! Every construction works through a fixed internal-degree bound `D`:
//! homology is computed exactly in each internal degree `d <= D`, and a new
//! variable is adjoined for each class in a complement of
//! `m*H + (boundaries)` there. Nothing is claimed beyond `D`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::dg::{Bounds, Element, ExtensionTower, NewVariable, TowerFlavor};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{solve_piece, Echelon, SparseVec};
use crate::presentation::Presentation;
use crate::ring::{QuotientRing, Terms};

/// Homology of a tower in one bidegree.
#[derive(Clone, Debug)]
pub struct HomologyPiece<E> {
    pub hdeg: u32,
    pub idim: u32,
    pub dimension: usize,
    /// Cycles whose classes form a basis of `H`.
    pub representatives: Vec<Element<E>>,
    /// Echelon basis of the boundaries.
    pub boundaries: Vec<Element<E>>,
}

/// Cycles whose classes minimally generate `H_n` through the bound.
#[derive(Clone, Debug)]
pub struct MinimalGeneratorSet<E> {
    pub hdeg: u32,
    pub certified_idim: u32,
    /// `(internal degree, cycle)`, ascending in internal degree.
    pub generators: Vec<(u32, Element<E>)>,
}

impl<E> MinimalGeneratorSet<E> {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

struct HomologyData<F: Field> {
    reps: Vec<SparseVec<F::Elem>>,
    boundary: Echelon<F>,
}

fn homology_data<F: Field>(tower: &ExtensionTower<F>, n: u32, d: u32) -> Result<HomologyData<F>> {
    let field = tower.field();
    let mut boundary = Echelon::new(field.clone());
    if tower.piece_basis(n, d)?.is_empty() {
        return Ok(HomologyData { reps: Vec::new(), boundary });
    }
    let cycles = solve_piece(field, &*tower.differential_matrix(n, d)?).kernel;
    for col in &tower.differential_matrix(n + 1, d)?.columns {
        boundary.insert(col);
    }
    let mut quotient = boundary.clone();
    let reps = cycles.iter().filter_map(|z| quotient.insert(z)).collect();
    Ok(HomologyData { reps, boundary })
}

/// Exact homology `H_n` of `tower` in internal degree `d`.
pub fn homology_piece<F: Field>(tower: &ExtensionTower<F>, n: u32, d: u32) -> Result<HomologyPiece<F::Elem>> {
    let data = homology_data(tower, n, d)?;
    let basis = tower.piece_basis(n, d)?;
    Ok(HomologyPiece {
        hdeg: n,
        idim: d,
        dimension: data.reps.len(),
        representatives: data.reps.iter().map(|v| tower.element_from_coordinates(&basis, v)).collect(),
        boundaries: data.boundary.rows().map(|v| tower.element_from_coordinates(&basis, v)).collect(),
    })
}

/// Minimal generators of `H_n(tower)` as a module over the base ring, through
/// internal degree `max_idim`.
///
/// Homology pieces for all internal degrees are computed in parallel; the
/// selection is then sequential in ascending degree. In degree `d` a class is
/// a new generator when it is independent of the boundaries together with
/// all products `x_i * H_(d - deg x_i)`.
pub fn minimal_generators<F: Field>(
    tower: &ExtensionTower<F>,
    n: u32,
    max_idim: u32,
) -> Result<MinimalGeneratorSet<F::Elem>> {
    let data: Vec<HomologyData<F>> =
        (0..=max_idim).into_par_iter().map(|d| homology_data(tower, n, d)).collect::<Result<_>>()?;
    let weights = tower.ring().weights().to_vec();
    let mut generators = Vec::new();
    for d in 0..=max_idim {
        let here = &data[d as usize];
        if here.reps.is_empty() {
            continue;
        }
        let mut span = here.boundary.clone();
        for (i, &w) in weights.iter().enumerate() {
            if w > d {
                continue;
            }
            let lower = &data[(d - w) as usize];
            if lower.reps.is_empty() {
                continue;
            }
            let lower_basis = tower.piece_basis(n, d - w)?;
            let x = tower.base_var(i);
            for rep in &lower.reps {
                let product = tower.multiply(&x, &tower.element_from_coordinates(&lower_basis, rep))?;
                span.insert(&tower.coordinates(n, d, &product)?);
            }
        }
        let basis = tower.piece_basis(n, d)?;
        for rep in &here.reps {
            if let Some(reduced) = span.insert(rep) {
                generators.push((d, tower.element_from_coordinates(&basis, &reduced)));
            }
        }
    }
    Ok(MinimalGeneratorSet { hdeg: n, certified_idim: max_idim, generators })
}

/// Indices (into `kernel`) of a minimal generating subset of the ideal the
/// kernel relators generate in `ring`, keeping the given order.
pub fn minimal_kernel_generators<F: Field>(ring: &QuotientRing<F>, kernel: &[(u32, Terms<F::Elem>)]) -> Vec<usize> {
    let mut degrees: Vec<u32> = kernel.iter().map(|(d, _)| *d).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut chosen = Vec::new();
    for d in degrees {
        let lower: Vec<(u32, Terms<F::Elem>)> = kernel.iter().filter(|(e, _)| *e < d).cloned().collect();
        let mut span = ring.ideal_span(&lower, d);
        for (i, (e, f)) in kernel.iter().enumerate() {
            if *e == d && span.insert(&ring.normal_form(d, f)).is_some() {
                chosen.push(i);
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

fn kernel_terms<F: Field>(ring: &QuotientRing<F>, pres: &Presentation) -> Vec<(u32, Terms<F::Elem>)> {
    pres.kernel_relators().iter().map(|r| (r.degree, ring.convert(&r.poly))).collect()
}

/// Koszul complex on `gens` over `ring`: one exterior variable of bidegree
/// `(1, deg f)` per generator with boundary `f`.
pub fn koszul_tower<F: Field>(
    ring: Arc<QuotientRing<F>>,
    gens: &[(u32, Terms<F::Elem>)],
    bounds: Bounds,
) -> Result<ExtensionTower<F>> {
    let tower = ExtensionTower::new(Arc::clone(&ring), TowerFlavor::Plain, bounds);
    let field = ring.field().clone();
    let vars = gens
        .iter()
        .enumerate()
        .map(|(i, (deg, f))| {
            let nf = ring.terms_of(*deg, &ring.normal_form(*deg, f));
            let differential =
                Element::from_terms(&field, nf.into_iter().map(|(m, c)| (crate::dg::Word::base_only(m), c)));
            NewVariable { name: format!("Y1_{}", i + 1), hdeg: 1, wdeg: *deg, differential }
        })
        .collect();
    tower.adjoin(vars)
}

/// Koszul complex on all relators beyond the base, over the base ring.
pub fn koszul_complex<F: Field>(field: F, pres: &Presentation, max_idim: u32) -> Result<ExtensionTower<F>> {
    let ring = Arc::new(QuotientRing::with_relators(field, pres, pres.base_relators(), max_idim));
    let gens = kernel_terms(&ring, pres);
    let bounds = Bounds { max_hdeg: gens.len() as u32 + 1, max_idim };
    koszul_tower(ring, &gens, bounds)
}

/// Koszul complex on a minimal generating set of the kernel.
pub fn minimal_koszul_complex<F: Field>(field: F, pres: &Presentation, max_idim: u32) -> Result<ExtensionTower<F>> {
    let ring = Arc::new(QuotientRing::with_relators(field, pres, pres.base_relators(), max_idim));
    let all = kernel_terms(&ring, pres);
    let gens: Vec<_> = minimal_kernel_generators(&ring, &all).into_iter().map(|i| all[i].clone()).collect();
    let bounds = Bounds { max_hdeg: gens.len() as u32 + 1, max_idim };
    koszul_tower(ring, &gens, bounds)
}

fn kill_homology<F: Field>(
    mut tower: ExtensionTower<F>,
    prefix: &str,
    from: u32,
    through: u32,
    max_idim: u32,
) -> Result<ExtensionTower<F>> {
    for n in from..=through {
        let gens = minimal_generators(&tower, n - 1, max_idim)?;
        let vars = gens
            .generators
            .into_iter()
            .enumerate()
            .map(|(k, (d, z))| NewVariable { name: format!("{prefix}{n}_{}", k + 1), hdeg: n, wdeg: d, differential: z })
            .collect();
        tower = tower.adjoin(vars)?;
    }
    Ok(tower)
}

/// Minimal model of the surjection `base -> pres` through homological
/// degree `max_hdeg` and internal degree `max_idim`.
///
/// `Y_1` kills a minimal generating set of the kernel; each `Y_n` for
/// `n >= 2` kills minimal generators of `H_(n-1)` of the tower so far.
pub fn build_minimal_model<F: Field>(
    field: F,
    pres: &Presentation,
    max_hdeg: u32,
    max_idim: u32,
) -> Result<ExtensionTower<F>> {
    let ring = Arc::new(QuotientRing::with_relators(field, pres, pres.base_relators(), max_idim));
    let all = kernel_terms(&ring, pres);
    let gens: Vec<_> = minimal_kernel_generators(&ring, &all).into_iter().map(|i| all[i].clone()).collect();
    let bounds = Bounds { max_hdeg: max_hdeg.max(1), max_idim };
    let tower = koszul_tower(ring, &gens, bounds)?;
    kill_homology(tower, "Y", 2, max_hdeg, max_idim)
}

/// Acyclic closure of the residue field over the ring of `pres` (all
/// relators), through homological degree `max_hdeg`.
///
/// `X_1` has one exterior variable per ring variable with boundary that
/// variable; higher `X_n` are divided-power or exterior variables killing
/// minimal generators of `H_(n-1)`.
pub fn build_acyclic_closure<F: Field>(
    field: F,
    pres: &Presentation,
    max_hdeg: u32,
    max_idim: u32,
) -> Result<ExtensionTower<F>> {
    let ring = Arc::new(QuotientRing::new(field, pres, max_idim));
    let bounds = Bounds { max_hdeg: max_hdeg.max(1), max_idim };
    let tower = ExtensionTower::new(Arc::clone(&ring), TowerFlavor::Gamma, bounds);
    let first = (0..ring.nvars())
        .map(|i| NewVariable {
            name: format!("X1_{}", i + 1),
            hdeg: 1,
            wdeg: ring.weights()[i],
            differential: tower.base_var(i),
        })
        .collect();
    let tower = tower.adjoin(first)?;
    kill_homology(tower, "X", 2, max_hdeg, max_idim)
}
