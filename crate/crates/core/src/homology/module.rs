//! Finitely presented modules `coker(A^s -> A^r)`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::groebner::ideal::max_independent_set;
use crate::groebner::{groebner_basis, HilbertSeries, Ideal, ModuleOrder, Reducers, Vector};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{same_ring, RingRef};

use super::matrix::Matrix;
use super::resolution::{free_resolution, FreeComplex};
use super::syzygy::relations_among;

#[derive(Debug)]
struct ModuleGb<C: Coeff> {
    order: ModuleOrder,
    reducers: Reducers<C>,
    /// Minimal leading monomials of the relation module, per component.
    leads: Vec<Vec<Monomial>>,
}

/// The module `A^rank / im(relations)`. The zero module is canonically
/// presented with rank 0 and no relations.
#[derive(Clone, Debug)]
pub struct PresentedModule<C: Coeff> {
    ring: RingRef,
    relations: Matrix<C>,
    gb: OnceLock<Arc<ModuleGb<C>>>,
    resolution: OnceLock<Arc<FreeComplex<C>>>,
}

impl<C: Coeff> PresentedModule<C> {
    pub fn new(relations: Matrix<C>) -> Self {
        PresentedModule {
            ring: relations.ring().clone(),
            relations: relations.without_zero_columns(),
            gb: OnceLock::new(),
            resolution: OnceLock::new(),
        }
    }

    pub fn free(ring: &RingRef, rank: usize) -> Self {
        Self::new(Matrix::zero(ring, rank, 0))
    }

    pub fn zero(ring: &RingRef) -> Self {
        Self::free(ring, 0)
    }

    /// `A/I`.
    pub fn cyclic(ideal: &Ideal<C>) -> Self {
        Self::new(Matrix::row(ideal.ring(), ideal.gens().to_vec()))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.relations.nrows()
    }

    pub fn relations(&self) -> &Matrix<C> {
        &self.relations
    }

    /// Whether this is the canonical presentation of the zero module.
    pub fn is_canonical_zero(&self) -> bool {
        self.rank() == 0 && self.relations.ncols() == 0
    }

    fn gb(&self) -> Result<Arc<ModuleGb<C>>> {
        if let Some(g) = self.gb.get() {
            return Ok(g.clone());
        }
        let order = ModuleOrder::pot(&self.ring);
        let gens: Vec<Vector<C>> = self
            .relations
            .columns()
            .iter()
            .map(|c| Vector::from_column(c, &order))
            .collect();
        let basis = groebner_basis(&self.ring, &order, gens)?;
        let mut leads = vec![Vec::new(); self.rank()];
        for v in &basis {
            let t = v.lead().unwrap();
            leads[t.comp as usize].push(t.mon.clone());
        }
        let leads = leads.iter().map(|l| crate::groebner::hilbert::minimalize(l)).collect();
        let g = Arc::new(ModuleGb {
            order,
            reducers: Reducers::new(basis),
            leads,
        });
        let _ = self.gb.set(g);
        Ok(self.gb.get().unwrap().clone())
    }

    /// The pruned free resolution, computed once.
    pub fn resolution(&self) -> Result<Arc<FreeComplex<C>>> {
        if let Some(r) = self.resolution.get() {
            return Ok(r.clone());
        }
        let r = Arc::new(free_resolution(self)?);
        let _ = self.resolution.set(r);
        Ok(self.resolution.get().unwrap().clone())
    }

    /// Gröbner basis of the relations (position over term) as a matrix.
    pub fn relation_basis(&self) -> Result<Matrix<C>> {
        let g = self.gb()?;
        Ok(Matrix::new(
            &self.ring,
            self.rank(),
            g.reducers
                .elements()
                .iter()
                .map(|v| v.to_column(self.rank(), &self.ring))
                .collect(),
        ))
    }

    /// Normal form of a vector of `A^rank` modulo the relations.
    pub fn normal_form(&self, v: &[Polynomial<C>]) -> Result<Vec<Polynomial<C>>> {
        let g = self.gb()?;
        let r = g
            .reducers
            .reduce(Vector::from_column(v, &g.order), &g.order, self.ring.budget(), true)?;
        Ok(r.to_column(self.rank(), &self.ring))
    }

    /// Whether `v` is zero in the module.
    pub fn is_zero_element(&self, v: &[Polynomial<C>]) -> Result<bool> {
        Ok(self.normal_form(v)?.iter().all(|p| p.is_zero()))
    }

    pub fn is_zero(&self) -> Result<bool> {
        let g = self.gb()?;
        Ok(g.leads.iter().all(|l| l.iter().any(|m| m.is_one())))
    }

    /// Removes generators killed by relations with a unit entry until none
    /// remain; the zero module comes out as the canonical zero.
    pub fn pruned(&self) -> Result<Self> {
        let mut m = self.relations.clone().without_zero_columns();
        loop {
            if let Some((row, col)) = find_unit(&m) {
                eliminate(&mut m, row, col);
                m = m.without_zero_columns();
                continue;
            }
            // a unit may only show up after a basis computation
            let cur = PresentedModule::new(m.clone());
            let basis = cur.relation_basis()?;
            if find_unit(&basis).is_some() {
                m = basis;
                continue;
            }
            let out = PresentedModule::new(basis);
            if out.rank() == 0 {
                return Ok(PresentedModule::zero(&self.ring));
            }
            let _ = out.gb.set(cur.gb()?);
            return Ok(out);
        }
    }

    /// `dim_k` of the module; `InfiniteLength` when infinite.
    pub fn k_dimension(&self) -> Result<u64> {
        let g = self.gb()?;
        let mut total = 0u64;
        for leads in &g.leads {
            let hs = HilbertSeries::of_monomial_ideal(leads, self.ring.nvars());
            match hs.total() {
                Some(t) => total += t as u64,
                None => return Err(Error::InfiniteLength),
            }
        }
        Ok(total)
    }

    /// Krull dimension of the support; `None` for the zero module.
    pub fn krull_dimension(&self) -> Result<Option<usize>> {
        let g = self.gb()?;
        let mut best: Option<usize> = None;
        for leads in &g.leads {
            if leads.iter().any(|m| m.is_one()) {
                continue;
            }
            let d = max_independent_set(leads, self.ring.nvars());
            best = Some(best.map_or(d, |b| b.max(d)));
        }
        Ok(best)
    }

    /// `ann(M)`, the intersection over generators `e_j` of
    /// `(relations : e_j)`.
    pub fn annihilator(&self) -> Result<Ideal<C>> {
        let mut acc = Ideal::unit(&self.ring);
        for j in 0..self.rank() {
            let mut e = vec![Polynomial::zero(&self.ring); self.rank()];
            e[j] = Polynomial::one(&self.ring);
            let ej = Matrix::new(&self.ring, self.rank(), vec![e]);
            let rel = relations_among(&ej, &self.relations)?;
            let q = Ideal::new(&self.ring, rel.columns().iter().map(|c| c[0].clone()).collect());
            acc = if j == 0 { q } else { acc.intersection(&q)? };
        }
        Ok(acc)
    }

    /// `M / qM`.
    pub fn quotient_by_ideal(&self, q: &Ideal<C>) -> Result<Self> {
        if !same_ring(q.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let r = self.rank();
        let mut cols = self.relations.columns().to_vec();
        for j in 0..r {
            for g in q.gens() {
                let mut c = vec![Polynomial::zero(&self.ring); r];
                c[j] = g.clone();
                cols.push(c);
            }
        }
        Ok(PresentedModule::new(Matrix::new(&self.ring, r, cols)))
    }

    /// `M ⊕ N`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !same_ring(other.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let (r1, r2) = (self.rank(), other.rank());
        let z = Polynomial::zero(&self.ring);
        let mut cols = Vec::new();
        for c in self.relations.columns() {
            let mut v = c.clone();
            v.extend(std::iter::repeat_n(z.clone(), r2));
            cols.push(v);
        }
        for c in other.relations.columns() {
            let mut v = vec![z.clone(); r1];
            v.extend(c.iter().cloned());
            cols.push(v);
        }
        Ok(PresentedModule::new(Matrix::new(&self.ring, r1 + r2, cols)))
    }
}

fn find_unit<C: Coeff>(m: &Matrix<C>) -> Option<(usize, usize)> {
    for (j, col) in m.columns().iter().enumerate() {
        for (i, e) in col.iter().enumerate() {
            if e.is_unit() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Uses relation `col`, whose entry at `row` is a unit, to remove generator
/// `row`.
fn eliminate<C: Coeff>(m: &mut Matrix<C>, row: usize, col: usize) {
    let u = m.entry(row, col).leading_coeff().unwrap().clone();
    let inv = u.inv().unwrap();
    for j in 0..m.ncols() {
        if j == col || m.entry(row, j).is_zero() {
            continue;
        }
        let factor = m.entry(row, j).scale(&inv);
        m.column_axpy(j, &factor, col);
    }
    m.remove_column(col);
    m.remove_row(row);
}

impl<C: Coeff> fmt::Display for PresentedModule<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_canonical_zero() {
            return write!(f, "0");
        }
        write!(f, "coker of {}x{} matrix", self.rank(), self.relations.ncols())
    }
}
