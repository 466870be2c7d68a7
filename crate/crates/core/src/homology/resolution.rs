//! Free complexes, Schreyer resolutions and Koszul complexes.

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::groebner::buchberger::divide_with_quotients;
use crate::groebner::{groebner_basis, BaseKind, FrameLead, ModuleOrder, SchreyerFrame, Term, Vector};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{same_ring, RingRef};

use super::matrix::Matrix;
use super::module::PresentedModule;
use super::syzygy::{preimage, relations_among};

/// `F_0 <- F_1 <- ... <- F_n`; `differentials[i - 1]` is `d_i : F_i -> F_{i-1}`.
#[derive(Clone, Debug)]
pub struct FreeComplex<C: Coeff> {
    ring: RingRef,
    ranks: Vec<usize>,
    differentials: Vec<Matrix<C>>,
}

impl<C: Coeff> FreeComplex<C> {
    pub fn new(ring: &RingRef, rank0: usize, differentials: Vec<Matrix<C>>) -> Self {
        let mut ranks = vec![rank0];
        for (i, d) in differentials.iter().enumerate() {
            assert_eq!(d.nrows(), ranks[i], "differential {} has the wrong target", i + 1);
            ranks.push(d.ncols());
        }
        FreeComplex {
            ring: ring.clone(),
            ranks,
            differentials,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Index of the last term.
    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    /// `d_i` for `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> &Matrix<C> {
        &self.differentials[i - 1]
    }

    /// Whether `d_{i-1} d_i = 0` for all `i`.
    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// Cancels unit entries: a unit at `(a, b)` of `d_i` splits off the
    /// trivial complex `e_b -> d_i(e_b)`.
    pub fn pruned(mut self) -> Self {
        while let Some((i, a, b)) = self.find_unit() {
            let d = &mut self.differentials[i - 1];
            let inv = d.entry(a, b).leading_coeff().unwrap().inv().unwrap();
            for s in 0..d.ncols() {
                if s == b || d.entry(a, s).is_zero() {
                    continue;
                }
                let factor = d.entry(a, s).scale(&inv);
                d.column_axpy(s, &factor, b);
            }
            d.remove_row(a);
            d.remove_column(b);
            if i >= 2 {
                self.differentials[i - 2].remove_column(a);
            }
            if i < self.differentials.len() {
                self.differentials[i].remove_row(b);
            }
            self.ranks[i] -= 1;
            self.ranks[i - 1] -= 1;
        }
        while self.ranks.len() > 1 && *self.ranks.last().unwrap() == 0 {
            self.ranks.pop();
            self.differentials.pop();
        }
        self
    }

    fn find_unit(&self) -> Option<(usize, usize, usize)> {
        for (k, d) in self.differentials.iter().enumerate() {
            for (b, col) in d.columns().iter().enumerate() {
                for (a, e) in col.iter().enumerate() {
                    if e.is_unit() {
                        return Some((k + 1, a, b));
                    }
                }
            }
        }
        None
    }

    /// `H_i(F ⊗ N)`, pruned.
    pub fn homology_with(&self, n: &PresentedModule<C>, i: usize) -> Result<PresentedModule<C>> {
        if !same_ring(n.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if i > self.length() {
            return Ok(PresentedModule::zero(&self.ring));
        }
        let g0 = n.rank();
        let rel = n.relations();
        let rank_i = self.ranks[i] * g0;
        if rank_i == 0 {
            return Ok(PresentedModule::zero(&self.ring));
        }
        let r_i = rel.block_diagonal(self.ranks[i]);
        let outgoing = if i < self.length() {
            self.differential(i + 1).kron_identity(g0).hconcat(&r_i)
        } else {
            r_i
        };
        let h = if i == 0 {
            PresentedModule::new(outgoing)
        } else {
            let phi = self.differential(i).kron_identity(g0);
            let r_prev = rel.block_diagonal(self.ranks[i - 1]);
            let kernel = preimage(&phi, &r_prev)?;
            if kernel.ncols() == 0 {
                return Ok(PresentedModule::zero(&self.ring));
            }
            PresentedModule::new(relations_among(&kernel, &outgoing)?.with_rows(kernel.ncols()))
        };
        h.pruned()
    }

    /// Applies a ring map entrywise (flat base change of a free complex).
    pub fn map_entries<F: FnMut(&Polynomial<C>) -> Polynomial<C>>(&self, target: &RingRef, mut f: F) -> Self {
        let diffs = self
            .differentials
            .iter()
            .map(|d| d.map_entries(target, &mut f))
            .collect();
        FreeComplex::new(target, self.ranks[0], diffs)
    }
}

impl<C: Coeff> Matrix<C> {
    /// Same columns; asserts the row count (useful for empty matrices).
    pub(crate) fn with_rows(self, rows: usize) -> Matrix<C> {
        if self.ncols() == 0 {
            return Matrix::zero(self.ring(), rows, 0);
        }
        assert_eq!(self.nrows(), rows);
        self
    }
}

fn var_exponent(t: &Term, k: usize) -> u16 {
    t.mon.exponents().get(k).copied().unwrap_or(0)
}

/// Free resolution of `M` by Schreyer's algorithm, with unit entries pruned.
///
/// Generators at level `k` are sorted by the exponent of variable `k - 1` in
/// their leading terms, so leading terms at level `k + 1` avoid the first `k`
/// variables and the frame has at most `n + 1` levels; the last of these is
/// always cancelled by pruning.
pub fn free_resolution<C: Coeff>(m: &PresentedModule<C>) -> Result<FreeComplex<C>> {
    let ring = m.ring().clone();
    let nvars = ring.nvars();
    let budget = ring.budget().clone();
    let r0 = m.rank();
    let order0 = ModuleOrder::top(&ring);
    let gens: Vec<Vector<C>> = m
        .relations()
        .columns()
        .iter()
        .map(|c| Vector::from_column(c, &order0))
        .collect();
    let mut level = groebner_basis(&ring, &order0, gens)?;
    level.sort_by_key(|v| std::cmp::Reverse(var_exponent(v.lead().unwrap(), 0)));

    let mut differentials: Vec<Matrix<C>> = Vec::new();
    let mut prev_rank = r0;
    let mut order = order0;
    let mut frame: Vec<FrameLead> = level
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let t = v.lead().unwrap();
            FrameLead {
                mon: t.mon.clone(),
                comp0: t.comp,
                path: vec![i as u32],
            }
        })
        .collect();

    let mut k = 1;
    loop {
        differentials.push(Matrix::new(
            &ring,
            prev_rank,
            level.iter().map(|v| v.to_column(prev_rank, &ring)).collect(),
        ));
        if level.is_empty() {
            break;
        }
        if k > nvars + 1 {
            return Err(Error::Internal("Schreyer frame longer than the variable count".into()));
        }
        let next_order = ModuleOrder::schreyer(
            &ring,
            SchreyerFrame {
                base: BaseKind::Top,
                leads: frame.clone(),
            },
        );
        let mut next: Vec<Vector<C>> = Vec::new();
        let leads: Vec<&Term> = level.iter().map(|v| v.lead().unwrap()).collect();
        for i in 0..level.len() {
            let mut cands: Vec<(usize, Monomial)> = Vec::new();
            for j in (i + 1)..level.len() {
                if leads[j].comp != leads[i].comp {
                    continue;
                }
                let l = leads[i].mon.lcm(&leads[j].mon);
                cands.push((j, l.quotient(&leads[i].mon).unwrap()));
            }
            let minimal: Vec<&(usize, Monomial)> = cands
                .iter()
                .enumerate()
                .filter(|(pos, (_, mij))| {
                    !cands
                        .iter()
                        .enumerate()
                        .any(|(q, (_, other))| q != *pos && other.divides(mij) && (other != mij || q < *pos))
                })
                .map(|(_, c)| c)
                .collect();
            for (j, mij) in minimal {
                let l = leads[i].mon.mul(mij);
                let mji = l.quotient(&leads[*j].mon).unwrap();
                let ci = level[i].lead_coeff().unwrap().clone();
                let cj = level[*j].lead_coeff().unwrap().clone();
                let ratio = ci.div(&cj).unwrap();
                let s = level[i]
                    .mul_term(mij, &C::one(ring.field()))
                    .add_mul(&ratio.neg(), &mji, &level[*j], &order);
                let (quots, rem) = divide_with_quotients(s, &level, &order, &budget)?;
                if !rem.is_zero() {
                    return Err(Error::Internal("S-pair of a Gröbner basis did not reduce to zero".into()));
                }
                let mut terms: Vec<(Term, C)> = vec![
                    (Term::new(mij.clone(), i as u32), C::one(ring.field())),
                    (Term::new(mji, *j as u32), ratio.neg()),
                ];
                for (l, mon, c) in quots {
                    terms.push((Term::new(mon, l as u32), c.neg()));
                }
                let syz = Vector::from_terms(terms, &next_order);
                debug_assert_eq!(syz.lead(), Some(&Term::new(mij.clone(), i as u32)));
                next.push(syz);
            }
        }
        if k < nvars {
            next.sort_by_key(|v| std::cmp::Reverse(var_exponent(v.lead().unwrap(), k)));
        }
        frame = next
            .iter()
            .enumerate()
            .map(|(idx, v)| {
                let t = v.lead().unwrap();
                let parent = &next_order_frame(&next_order)[t.comp as usize];
                let mut path = parent.path.clone();
                path.push(idx as u32);
                FrameLead {
                    mon: t.mon.mul(&parent.mon),
                    comp0: parent.comp0,
                    path,
                }
            })
            .collect();
        prev_rank = level.len();
        level = next;
        order = next_order;
        k += 1;
    }
    // the final pushed differential has no columns
    if differentials.last().is_some_and(|d| d.ncols() == 0) {
        differentials.pop();
    }
    Ok(FreeComplex::new(&ring, r0, differentials).pruned())
}

fn next_order_frame(o: &ModuleOrder) -> &[FrameLead] {
    match &o.kind {
        crate::groebner::OrderKind::Schreyer(f) => &f.leads,
        _ => unreachable!("syzygy levels use Schreyer orders"),
    }
}

/// Koszul complex of `seq`: `F_i` has the `i`-subsets as basis and
/// `d(e_S) = sum_k (-1)^k f_{s_k} e_{S - s_k}`.
pub fn koszul_complex<C: Coeff>(ring: &RingRef, seq: &[Polynomial<C>]) -> FreeComplex<C> {
    let n = seq.len();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| k_subsets(n, k)).collect();
    let mut diffs = Vec::new();
    for k in 1..=n {
        let rows = subsets[k - 1].len();
        let mut d = Matrix::zero(ring, rows, subsets[k].len());
        for (col, s) in subsets[k].iter().enumerate() {
            for (pos, &idx) in s.iter().enumerate() {
                let mut face = s.clone();
                face.remove(pos);
                let row = subsets[k - 1].iter().position(|t| *t == face).unwrap();
                let entry = if pos % 2 == 0 { seq[idx].clone() } else { -&seq[idx] };
                d.set(row, col, entry);
            }
        }
        diffs.push(d);
    }
    FreeComplex::new(ring, 1, diffs)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
