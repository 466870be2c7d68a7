//! Hilbert series of monomial quotients `k[x_1..x_n]/L`.

use std::fmt;

use crate::monomial::Monomial;

/// `numerator(T) / (1 - T)^denominator_exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    /// Coefficients of the numerator, constant term first, no trailing zeros.
    pub numerator: Vec<i64>,
    pub denominator_exponent: usize,
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_add_shifted(a: &[i64], b: &[i64], shift: usize) -> Vec<i64> {
    let mut out = a.to_vec();
    if out.len() < b.len() + shift {
        out.resize(b.len() + shift, 0);
    }
    for (j, y) in b.iter().enumerate() {
        out[j + shift] += y;
    }
    trim(out)
}

/// Removes generators divisible by other generators (keeping one copy of
/// duplicates).
pub fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<&Monomial> = gens.iter().collect();
    sorted.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(m)) {
            out.push(m.clone());
        }
    }
    out
}

/// Numerator `N(T)` with `HS(k[x]/L) = N(T) / (1-T)^n`, by pivoting on a
/// variable shared by several generators:
/// `N(L) = N(L + (x)) + T * N(L : x)`.
fn numerator(gens: Vec<Monomial>) -> Vec<i64> {
    let gens = minimalize(&gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    let nvars = gens[0].nvars();
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let (pivot, &most) = counts
        .iter()
        .enumerate()
        .max_by_key(|&(i, c)| (*c, std::cmp::Reverse(i)))
        .unwrap();
    if most <= 1 {
        // pairwise coprime generators
        let mut n = vec![1i64];
        for g in &gens {
            let mut f = vec![0i64; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            n = poly_mul(&n, &f);
        }
        return n;
    }
    let x = Monomial::variable(nvars, pivot, 1);
    let mut with_x: Vec<Monomial> = gens.iter().filter(|g| g.exponents()[pivot] == 0).cloned().collect();
    with_x.push(x.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| g.quotient(&g.gcd(&x)).unwrap())
        .collect();
    let a = numerator(with_x);
    let b = numerator(colon);
    poly_add_shifted(&a, &b, 1)
}

impl HilbertSeries {
    /// Series of `k[x_1..x_n]/L` for the monomial ideal generated by `gens`,
    /// with denominator `(1-T)^n`.
    pub fn of_monomial_ideal(gens: &[Monomial], nvars: usize) -> HilbertSeries {
        debug_assert!(gens.iter().all(|g| g.nvars() == nvars));
        HilbertSeries {
            numerator: numerator(gens.to_vec()),
            denominator_exponent: nvars,
        }
    }

    /// Cancels common factors `(1 - T)`.
    pub fn reduced(&self) -> HilbertSeries {
        let mut num = self.numerator.clone();
        let mut d = self.denominator_exponent;
        while d > 0 && !num.is_empty() && num.iter().sum::<i64>() == 0 {
            // synthetic division by (1 - T): q_k = sum_{j <= k} n_j
            let mut q = Vec::with_capacity(num.len() - 1);
            let mut acc = 0i64;
            for &c in &num[..num.len() - 1] {
                acc += c;
                q.push(acc);
            }
            num = trim(q);
            d -= 1;
        }
        HilbertSeries {
            numerator: num,
            denominator_exponent: d,
        }
    }

    /// Pole order at `T = 1`: the Krull dimension of the quotient. `None`
    /// for the zero ring.
    pub fn dimension(&self) -> Option<usize> {
        let r = self.reduced();
        if r.numerator.is_empty() {
            None
        } else {
            Some(r.denominator_exponent)
        }
    }

    /// `N(1)` after cancellation: the degree (multiplicity).
    pub fn multiplicity(&self) -> i64 {
        self.reduced().numerator.iter().sum()
    }

    /// Coefficient of `T^k` in the power series expansion.
    pub fn coefficient(&self, k: usize) -> i64 {
        // coefficient of T^m in (1-T)^{-d} is C(m + d - 1, d - 1)
        let d = self.denominator_exponent;
        let mut total = 0i64;
        for (j, &c) in self.numerator.iter().enumerate() {
            if j > k {
                break;
            }
            let m = k - j;
            let b = if d == 0 {
                i64::from(m == 0)
            } else {
                binomial(m + d - 1, d - 1)
            };
            total += c * b;
        }
        total
    }

    /// Total dimension when finite (pole order zero after cancellation).
    pub fn total(&self) -> Option<i64> {
        let r = self.reduced();
        if r.denominator_exponent == 0 || r.numerator.is_empty() {
            Some(r.numerator.iter().sum())
        } else {
            None
        }
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .numerator
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*T"),
                _ => format!("{c}*T^{k}"),
            })
            .collect();
        let num = if terms.is_empty() { "0".to_string() } else { terms.join(" + ").replace("+ -", "- ") };
        write!(f, "({num})/(1-T)^{}", self.denominator_exponent)
    }
}
