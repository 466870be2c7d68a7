//! Exponent vectors and global monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 12]>;

/// A monomial `x^a` stored as its exponent vector, with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: smallvec::smallvec![0; nvars],
            deg: 0,
        }
    }

    pub fn from_exponents<I: IntoIterator<Item = u16>>(exps: I) -> Monomial {
        let exps: Exponents = exps.into_iter().collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn variable(nvars: usize, index: usize, power: u16) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[index] = power;
        m.deg = power as u32;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / divisor` when the division is exact.
    pub fn quotient(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        let exps = self
            .exps
            .iter()
            .zip(divisor.exps.iter())
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            exps,
            deg: self.deg - divisor.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.exps.iter().zip(other.exps.iter()).map(|(&a, &b)| a.max(b)))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.exps.iter().zip(other.exps.iter()).map(|(&a, &b)| a.min(b)))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit `i mod 64` is set when variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }

    /// Monomial in a ring with `extra` new variables in front.
    pub fn shifted(&self, extra: usize) -> Monomial {
        let exps = std::iter::repeat_n(0u16, extra)
            .chain(self.exps.iter().copied())
            .collect();
        Monomial { exps, deg: self.deg }
    }

    /// Drops the first `count` variables (their exponents must be zero for
    /// the result to denote the same monomial).
    pub fn truncated_front(&self, count: usize) -> Monomial {
        Monomial::from_exponents(self.exps[count..].iter().copied())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// A global monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    Grevlex,
    /// Pure lexicographic, first variable largest.
    Lex,
    /// Total degree, ties broken lexicographically.
    DegLex,
    /// Block order eliminating the first `k` variables; grevlex inside
    /// each block.
    Elimination(usize),
    /// Weighted degree with positive weights, ties broken by grevlex.
    Weighted(Vec<u32>),
}

#[inline]
fn grevlex_slices(a: &[u16], b: &[u16]) -> Ordering {
    for k in (0..a.len()).rev() {
        if a[k] != b[k] {
            return b[k].cmp(&a[k]);
        }
    }
    Ordering::Equal
}

#[inline]
fn lex_slices(a: &[u16], b: &[u16]) -> Ordering {
    for k in 0..a.len() {
        if a[k] != b[k] {
            return a[k].cmp(&b[k]);
        }
    }
    Ordering::Equal
}

fn block_sum(a: &[u16]) -> u32 {
    a.iter().map(|&e| e as u32).sum()
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a
                .deg
                .cmp(&b.deg)
                .then_with(|| grevlex_slices(&a.exps, &b.exps)),
            MonomialOrder::DegLex => a.deg.cmp(&b.deg).then_with(|| lex_slices(&a.exps, &b.exps)),
            _ => self.cmp_exponents(&a.exps, &b.exps),
        }
    }

    /// Compares two raw exponent vectors of equal length.
    pub fn cmp_exponents(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::Grevlex => block_sum(a)
                .cmp(&block_sum(b))
                .then_with(|| grevlex_slices(a, b)),
            MonomialOrder::Lex => lex_slices(a, b),
            MonomialOrder::DegLex => block_sum(a)
                .cmp(&block_sum(b))
                .then_with(|| lex_slices(a, b)),
            MonomialOrder::Elimination(k) => {
                let k = (*k).min(a.len());
                let (a1, a2) = a.split_at(k);
                let (b1, b2) = b.split_at(k);
                block_sum(a1)
                    .cmp(&block_sum(b1))
                    .then_with(|| grevlex_slices(a1, b1))
                    .then_with(|| block_sum(a2).cmp(&block_sum(b2)))
                    .then_with(|| grevlex_slices(a2, b2))
            }
            MonomialOrder::Weighted(w) => {
                let wa: u64 = a.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum();
                let wb: u64 = b.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum();
                wa.cmp(&wb)
                    .then_with(|| block_sum(a).cmp(&block_sum(b)))
                    .then_with(|| grevlex_slices(a, b))
            }
        }
    }

    /// Compares the products `a * ma` and `b * mb` without allocating.
    pub fn cmp_products(&self, a: &Monomial, ma: &Monomial, b: &Monomial, mb: &Monomial) -> Ordering {
        let pa: SmallVec<[u16; 16]> = a.exps.iter().zip(ma.exps.iter()).map(|(x, y)| x + y).collect();
        let pb: SmallVec<[u16; 16]> = b.exps.iter().zip(mb.exps.iter()).map(|(x, y)| x + y).collect();
        self.cmp_exponents(&pa, &pb)
    }

    /// Whether the order is admissible for a ring with `nvars` variables.
    pub fn validate(&self, nvars: usize) -> Result<(), String> {
        match self {
            MonomialOrder::Weighted(w) => {
                if w.len() != nvars {
                    Err(format!("weight vector has {} entries for {} variables", w.len(), nvars))
                } else if w.iter().any(|&x| x == 0) {
                    Err("weights must be positive".into())
                } else {
                    Ok(())
                }
            }
            MonomialOrder::Elimination(k) if *k > nvars => {
                Err(format!("elimination block {k} larger than {nvars} variables"))
            }
            _ => Ok(()),
        }
    }

    /// The same order with `extra` variables prepended; used when a ring is
    /// extended by auxiliary variables.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex | MonomialOrder::DegLex)
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegLex => write!(f, "deglex"),
            MonomialOrder::Elimination(k) => write!(f, "elim({k})"),
            MonomialOrder::Weighted(w) => write!(f, "weighted({w:?})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.iter().copied())
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::Grevlex;
        // x^2 > xy > y^2 > x > y > 1 in k[x,y]
        let chain = [m(&[2, 0]), m(&[1, 1]), m(&[0, 2]), m(&[1, 0]), m(&[0, 1]), m(&[0, 0])];
        for w in chain.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        // classic grevlex vs deglex difference in three variables: x z vs y^2
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(MonomialOrder::DegLex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_order_prefers_first_block() {
        let o = MonomialOrder::Elimination(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn products_compare_like_materialized_products() {
        let o = MonomialOrder::Grevlex;
        let (a, b, c, d) = (m(&[1, 2, 0]), m(&[0, 1, 3]), m(&[2, 0, 1]), m(&[0, 3, 0]));
        assert_eq!(o.cmp_products(&a, &b, &c, &d), o.cmp(&a.mul(&b), &c.mul(&d)));
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2]);
        let b = m(&[3, 1]);
        assert_eq!(a.lcm(&b), m(&[3, 2]));
        assert_eq!(a.gcd(&b), m(&[1, 1]));
        assert!(a.divides(&a.lcm(&b)));
        assert_eq!(m(&[3, 2]).quotient(&a), Some(m(&[2, 0])));
        assert_eq!(a.quotient(&b), None);
        assert!(m(&[2, 0]).is_coprime(&m(&[0, 4])));
    }
}
