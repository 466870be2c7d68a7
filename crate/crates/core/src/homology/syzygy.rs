//! Syzygies of polynomial matrices.

use crate::error::Result;
use crate::field::Coeff;
use crate::groebner::{groebner_basis, ModuleOrder, Term, Vector};
use crate::poly::Polynomial;

use super::matrix::Matrix;

/// Generators of the kernel of `m: A^c -> A^r`, as the columns of a
/// `c x s` matrix.
///
/// Each column `m_j` is extended to `(m_j, e_j)` in `A^{r+c}`; under an
/// order that eliminates the original block, the Gröbner basis elements
/// vanishing on that block carry the syzygies.
pub fn syzygies<C: Coeff>(m: &Matrix<C>) -> Result<Matrix<C>> {
    let ring = m.ring();
    let r = m.nrows();
    let c = m.ncols();
    let order = ModuleOrder::split(ring, r);
    let one = C::one(ring.field());
    let gens: Vec<Vector<C>> = (0..c)
        .map(|j| {
            let mut terms: Vec<(Term, C)> = Vec::new();
            for (i, e) in m.column(j).iter().enumerate() {
                for (mon, coef) in e.terms() {
                    terms.push((Term::new(mon.clone(), i as u32), coef.clone()));
                }
            }
            terms.push((
                Term::new(crate::monomial::Monomial::one(ring.nvars()), (r + j) as u32),
                one.clone(),
            ));
            Vector::from_terms(terms, &order)
        })
        .collect();
    let gb = groebner_basis(ring, &order, gens)?;
    let mut cols = Vec::new();
    for v in gb {
        if v.lead().is_some_and(|t| (t.comp as usize) >= r) {
            let full = v.to_column(r + c, ring);
            cols.push(full[r..].to_vec());
        }
    }
    Ok(Matrix::new(ring, c, cols))
}

/// Submodule of `coker(rels)` generated by the columns of `gens`, as a
/// presentation: the relations among `gens` modulo `rels`.
pub(crate) fn relations_among<C: Coeff>(gens: &Matrix<C>, rels: &Matrix<C>) -> Result<Matrix<C>> {
    let n = gens.ncols();
    let syz = syzygies(&gens.hconcat(rels))?;
    Ok(syz.top_rows(n).without_zero_columns())
}

/// Columns `v` of `A^{cols(phi)}` with `phi v ∈ im(rels)`: the preimage of
/// the relation module.
pub(crate) fn preimage<C: Coeff>(phi: &Matrix<C>, rels: &Matrix<C>) -> Result<Matrix<C>> {
    relations_among(phi, rels)
}

/// Whether `v` lies in the column span of `m`.
pub fn in_column_span<C: Coeff>(m: &Matrix<C>, v: &[Polynomial<C>]) -> Result<bool> {
    let ring = m.ring();
    let order = ModuleOrder::top(ring);
    let gens: Vec<Vector<C>> = m.columns().iter().map(|c| Vector::from_column(c, &order)).collect();
    let gb = groebner_basis(ring, &order, gens)?;
    let red = crate::groebner::Reducers::new(gb);
    let r = red.reduce(Vector::from_column(v, &order), &order, ring.budget(), true)?;
    Ok(r.is_zero())
}
