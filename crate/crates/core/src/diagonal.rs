//! Reduction to the diagonal over a base `R = k[s]` or `k[s, t]`.
//!
//! With `A = R[x]` and `B = R[y]`, the completed tensor product is modelled
//! by the polynomial ring `C = k[s, x, y]`, and completed Tor over `R` by Tor
//! over `C` of the extended modules. All inputs are supported at the origin,
//! where the polynomial and power series computations agree.

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::groebner::Ideal;
use crate::homology::{chi, koszul_homology, tor_all, PresentedModule};
use crate::monomial::MonomialOrder;
use crate::multiplicity::hs_multiplicity;
use crate::poly::Polynomial;
use crate::report::MultiplicityReport;
use crate::ring::{Budget, Ring, RingRef};

/// The rings `A = k[base, left]`, `B = k[base, right]` and
/// `C = k[base, left, right]`.
#[derive(Clone, Debug)]
pub struct TensorModel {
    base: Vec<String>,
    left: Vec<String>,
    right: Vec<String>,
    big: RingRef,
    left_ring: RingRef,
    right_ring: RingRef,
}

/// Same as [`TensorModel::new`] with no step budget.
pub fn build_tensor_model<S: AsRef<str>>(base: &[S], left: &[S], right: &[S], field: Field) -> Result<TensorModel> {
    TensorModel::new(base, left, right, field, Budget::unlimited())
}

impl TensorModel {
    pub fn new<S: AsRef<str>>(base: &[S], left: &[S], right: &[S], field: Field, budget: Budget) -> Result<Self> {
        let names = |v: &[S]| v.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>();
        let (base, left, right) = (names(base), names(left), names(right));
        if base.len() > 2 {
            return Err(Error::InvalidRing(format!(
                "base has {} variables; at most 2 are supported",
                base.len()
            )));
        }
        let mut all: Vec<&String> = Vec::new();
        for v in base.iter().chain(&left).chain(&right) {
            if all.contains(&v) {
                return Err(Error::NameCollision(v.clone()));
            }
            all.push(v);
        }
        let ring = |vars: Vec<&String>| {
            Ring::with_budget(field, &vars, MonomialOrder::Grevlex, base.len(), budget.clone())
        };
        let left_ring = ring(base.iter().chain(&left).collect())?;
        let right_ring = ring(base.iter().chain(&right).collect())?;
        let big = ring(all)?;
        Ok(TensorModel {
            base,
            left,
            right,
            big,
            left_ring,
            right_ring,
        })
    }

    /// Model for `A ⊗_R A`, where `R` is given by the base variables of `a`.
    /// Each free variable `x` gets a partner named `x_r` (suffixed further if
    /// taken).
    pub fn for_ring(a: &RingRef) -> Result<Self> {
        let base = &a.vars()[..a.base_count()];
        let left = &a.vars()[a.base_count()..];
        let mut taken: Vec<String> = a.vars().to_vec();
        let mut right = Vec::new();
        for x in left {
            let stem = format!("{x}_r");
            let name = if taken.contains(&stem) {
                (1..).map(|i| format!("{stem}{i}")).find(|n| !taken.contains(n)).unwrap()
            } else {
                stem
            };
            taken.push(name.clone());
            right.push(name);
        }
        TensorModel::new(base, left, &right, a.field(), a.budget().clone())
    }

    pub fn base_vars(&self) -> &[String] {
        &self.base
    }

    pub fn left_vars(&self) -> &[String] {
        &self.left
    }

    pub fn right_vars(&self) -> &[String] {
        &self.right
    }

    pub fn big_ring(&self) -> &RingRef {
        &self.big
    }

    pub fn left_ring(&self) -> &RingRef {
        &self.left_ring
    }

    pub fn right_ring(&self) -> &RingRef {
        &self.right_ring
    }

    /// `(x_i - y_i)`; requires as many left as right variables.
    pub fn diagonal<C: Coeff>(&self) -> Result<Ideal<C>> {
        if self.left.len() != self.right.len() {
            return Err(Error::Precondition(
                "the diagonal needs as many right variables as left ones".into(),
            ));
        }
        let gens = self
            .left
            .iter()
            .zip(&self.right)
            .map(|(x, y)| &Polynomial::var_named(&self.big, x) - &Polynomial::var_named(&self.big, y))
            .collect();
        Ok(Ideal::new(&self.big, gens))
    }

    /// Extension to `C` of an ideal of `A` (matched by variable names).
    pub fn embed_left<C: Coeff>(&self, i: &Ideal<C>) -> Result<Ideal<C>> {
        rename(i, &self.left_ring, &self.big, &[])
    }

    /// Extension to `C` of an ideal of `B`.
    pub fn embed_right<C: Coeff>(&self, j: &Ideal<C>) -> Result<Ideal<C>> {
        rename(j, &self.right_ring, &self.big, &[])
    }

    /// The copy in `B` of an ideal of `A`.
    pub fn right_copy<C: Coeff>(&self, i: &Ideal<C>) -> Result<Ideal<C>> {
        rename(i, &self.left_ring, &self.right_ring, &self.pairs(false))
    }

    /// The copy in `A` of an ideal of `B`.
    pub fn identify_right<C: Coeff>(&self, j: &Ideal<C>) -> Result<Ideal<C>> {
        rename(j, &self.right_ring, &self.left_ring, &self.pairs(true))
    }

    fn pairs(&self, right_to_left: bool) -> Vec<(String, String)> {
        self.left
            .iter()
            .zip(&self.right)
            .map(|(x, y)| if right_to_left { (y.clone(), x.clone()) } else { (x.clone(), y.clone()) })
            .collect()
    }
}

/// Maps the generators of `i` into `target`, sending each variable to the
/// variable of the same name unless `renames` says otherwise. Only the
/// variables of `expected` may occur.
fn rename<C: Coeff>(
    i: &Ideal<C>,
    expected: &RingRef,
    target: &RingRef,
    renames: &[(String, String)],
) -> Result<Ideal<C>> {
    let src = i.ring();
    if src.field() != target.field() {
        return Err(Error::RingMismatch);
    }
    let mut images = Vec::with_capacity(src.nvars());
    for (k, v) in src.vars().iter().enumerate() {
        let used = i.gens().iter().any(|g| g.involves(k));
        if expected.var_index(v).is_none() {
            if used {
                return Err(Error::UnmappedVariable(v.clone()));
            }
            images.push(Polynomial::zero(target));
            continue;
        }
        let name = renames.iter().find(|(a, _)| a == v).map_or(v.as_str(), |(_, b)| b.as_str());
        images.push(Polynomial::var_named(target, name));
    }
    i.map(&images, target)
}

/// The completed Tor modules with their diagonal multiplicities, and the
/// two values of `chi` that must agree.
#[derive(Clone, Debug)]
pub struct CompletedTorReport<C: Coeff> {
    /// Completed `Tor_0`, `Tor_1`, `Tor_2`.
    pub modules: Vec<PresentedModule<C>>,
    /// `e_Δ(Tor_q, m)` with `m` the number of left variables.
    pub e_values: Vec<u64>,
    pub chi_via_diagonal: i64,
    pub chi_direct: i64,
    pub direct: MultiplicityReport<C>,
}

/// Completed `Tor_q^R(A/I, B/J)`, as `Tor_q^C(C/IC, C/JC)`.
pub fn completed_tor<C: Coeff>(model: &TensorModel, i: &Ideal<C>, j: &Ideal<C>, q: usize) -> Result<PresentedModule<C>> {
    let m = PresentedModule::cyclic(&model.embed_left(i)?);
    let n = PresentedModule::cyclic(&model.embed_right(j)?);
    crate::homology::tor(&m, &n, q)
}

/// Computes `chi(A/I, A/J')`, with `J'` the copy of `J` in `A`, both directly
/// and as `sum_q (-1)^q e_Δ(completed Tor_q, m)`; unequal values are an
/// `AssertionFailed` error.
pub fn diagonal_decompose<C: Coeff>(model: &TensorModel, i: &Ideal<C>, j: &Ideal<C>) -> Result<CompletedTorReport<C>> {
    let i_a = rename(i, &model.left_ring, &model.left_ring, &[])?;
    let j_a = model.identify_right(j)?;
    let direct = chi(&i_a, &j_a)?;

    let delta = model.diagonal::<C>()?;
    let m = model.left.len();
    let left = PresentedModule::cyclic(&model.embed_left(i)?);
    let right = PresentedModule::cyclic(&model.embed_right(j)?);
    let mut modules = tor_all(&left, &right)?;
    for (q, t) in modules.iter().enumerate().skip(3) {
        if !t.is_canonical_zero() {
            return Err(Error::AssertionFailed(format!("completed Tor_{q} is nonzero")));
        }
    }
    modules.resize_with(3, || PresentedModule::zero(&model.big));
    modules.truncate(3);
    let e_values = modules
        .iter()
        .map(|t| hs_multiplicity(t, &delta, m))
        .collect::<Result<Vec<_>>>()?;
    let chi_via_diagonal = crate::homology::tor::alternating_sum(&e_values);
    if chi_via_diagonal != direct.chi {
        return Err(Error::AssertionFailed(format!(
            "diagonal decomposition gives {chi_via_diagonal} from e-values {e_values:?}, direct chi is {}",
            direct.chi
        )));
    }
    Ok(CompletedTorReport {
        modules,
        e_values,
        chi_via_diagonal,
        chi_direct: direct.chi,
        direct,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatnessReport {
    /// `H_1((s, t); A/I) = 0`.
    pub h1_zero: bool,
    /// `H_2((s, t); A/I) = 0`.
    pub h2_zero: bool,
    /// Both Koszul homologies vanish.
    pub flat: bool,
    /// `dim A/(I + (s, t))`, `None` when that quotient is zero.
    pub fiber_dimension: Option<usize>,
    /// `dim A/I - 2`.
    pub expected_fiber_dimension: i64,
    /// Echo of the caller's claim that `A/I` is normal; not verified.
    pub normal_asserted: bool,
}

/// Flatness of `A/I` over `R = k[s, t]` via the Koszul complex on `s, t`.
pub fn r_flatness_check<C: Coeff>(model: &TensorModel, i: &Ideal<C>, normal_asserted: bool) -> Result<FlatnessReport> {
    if model.base.len() != 2 {
        return Err(Error::Precondition("the flatness check needs a base of two variables".into()));
    }
    let a = &model.left_ring;
    let i = rename(i, a, a, &[])?;
    let m = PresentedModule::cyclic(&i);
    let seq = [Polynomial::var(a, 0), Polynomial::var(a, 1)];
    let h1_zero = koszul_homology(&seq, &m, 1)?.is_canonical_zero();
    let h2_zero = koszul_homology(&seq, &m, 2)?.is_canonical_zero();
    let fiber = i.sum(&Ideal::of_variables(a, &[0, 1]))?;
    let fiber_dimension = if fiber.is_unit()? { None } else { Some(fiber.krull_dimension()?) };
    Ok(FlatnessReport {
        h1_zero,
        h2_zero,
        flat: h1_zero && h2_zero,
        fiber_dimension,
        expected_fiber_dimension: i.krull_dimension()? as i64 - 2,
        normal_asserted,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionBoundReport {
    /// `dim C/(IC + JC)`.
    pub joint_dimension: usize,
    pub left_dimension: usize,
    pub right_dimension: usize,
    /// `dim A/I + dim B/J - |base|`.
    pub bound: i64,
    /// Echo of the caller's claim that both quotients are domains.
    pub domains_asserted: bool,
}

/// Checks `dim C/(IC + JC) >= dim A/I + dim B/J - |base|`.
pub fn dimension_bound_check<C: Coeff>(
    model: &TensorModel,
    i: &Ideal<C>,
    j: &Ideal<C>,
    domains_asserted: bool,
) -> Result<DimensionBoundReport> {
    let left_dimension = rename(i, &model.left_ring, &model.left_ring, &[])?.krull_dimension()?;
    let right_dimension = rename(j, &model.right_ring, &model.right_ring, &[])?.krull_dimension()?;
    let joint = model.embed_left(i)?.sum(&model.embed_right(j)?)?;
    if joint.is_unit()? {
        return Err(Error::AssertionFailed("the joint quotient is zero".into()));
    }
    let joint_dimension = joint.krull_dimension()?;
    let bound = (left_dimension + right_dimension) as i64 - model.base.len() as i64;
    if (joint_dimension as i64) < bound {
        return Err(Error::AssertionFailed(format!(
            "joint dimension {joint_dimension} is below {left_dimension} + {right_dimension} - {}",
            model.base.len()
        )));
    }
    Ok(DimensionBoundReport {
        joint_dimension,
        left_dimension,
        right_dimension,
        bound,
        domains_asserted,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationReport {
    /// `chi` over `A`.
    pub chi_full: i64,
    /// `chi` over `A/(pi)` of `A/I` and `A/(J + (pi))`.
    pub chi_reduced: i64,
}

/// For a variable `pi` in `I` that is a nonzerodivisor modulo `J`, checks
/// `chi^A(A/I, A/J) = chi^{A/pi}(A/I, A/(J + (pi)))`.
pub fn case1_degeneration_check<C: Coeff>(i: &Ideal<C>, j: &Ideal<C>, pi: &Polynomial<C>) -> Result<DegenerationReport> {
    let a = i.ring();
    let Some(k) = (0..a.nvars()).find(|&k| *pi == Polynomial::var(a, k)) else {
        return Err(Error::Precondition(format!("`{pi}` is not a variable")));
    };
    if !i.contains(pi)? {
        return Err(Error::Precondition(format!("`{pi}` is not in the first ideal")));
    }
    if !j.quotient_by(pi)?.equals(j)? {
        return Err(Error::Precondition(format!("`{pi}` is a zero divisor modulo the second ideal")));
    }
    let chi_full = chi(i, j)?.chi;

    let names: Vec<&String> = a.vars().iter().enumerate().filter(|&(l, _)| l != k).map(|(_, v)| v).collect();
    let order = match a.order() {
        o @ (MonomialOrder::Grevlex | MonomialOrder::Lex | MonomialOrder::DegLex) => o.clone(),
        _ => MonomialOrder::Grevlex,
    };
    let small = Ring::with_budget(a.field(), &names, order, 0, a.budget().clone())?;
    let images: Vec<Polynomial<C>> = (0..a.nvars())
        .map(|l| match l.cmp(&k) {
            std::cmp::Ordering::Less => Polynomial::var(&small, l),
            std::cmp::Ordering::Equal => Polynomial::zero(&small),
            std::cmp::Ordering::Greater => Polynomial::var(&small, l - 1),
        })
        .collect();
    let chi_reduced = chi(&i.map(&images, &small)?, &j.map(&images, &small)?)?.chi;
    if chi_full != chi_reduced {
        return Err(Error::AssertionFailed(format!(
            "chi is {chi_full} over the full ring and {chi_reduced} modulo `{pi}`"
        )));
    }
    Ok(DegenerationReport { chi_full, chi_reduced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type P = Polynomial<Rational>;

    fn var(model_ring: &RingRef, name: &str) -> P {
        P::var_named(model_ring, name)
    }

    #[test]
    fn tensor_model_shapes() {
        let m = build_tensor_model::<&str>(&[], &["x"], &["y"], Field::Rationals).unwrap();
        assert_eq!(m.big_ring().vars(), &["x", "y"]);
        let d = m.diagonal::<Rational>().unwrap();
        assert_eq!(d.gens(), &[&var(m.big_ring(), "x") - &var(m.big_ring(), "y")]);

        let m = build_tensor_model(&["s", "t"], &["x"], &["y"], Field::Rationals).unwrap();
        assert_eq!(m.big_ring().vars(), &["s", "t", "x", "y"]);
        assert_eq!(m.big_ring().base_count(), 2);

        assert!(matches!(
            build_tensor_model(&["s", "t", "u"], &["x"], &["y"], Field::Rationals),
            Err(Error::InvalidRing(_))
        ));
        assert_eq!(
            build_tensor_model(&["s"], &["x"], &["x"], Field::Rationals).unwrap_err(),
            Error::NameCollision("x".into())
        );
    }

    #[test]
    fn completed_tor_examples() {
        let m = build_tensor_model::<&str>(&[], &["x"], &["y"], Field::Rationals).unwrap();
        let i = Ideal::principal(var(m.left_ring(), "x"));
        let j = Ideal::principal(var(m.right_ring(), "y"));
        assert_eq!(completed_tor(&m, &i, &j, 0).unwrap().k_dimension().unwrap(), 1);

        let m = build_tensor_model(&["s", "t"], &["x"], &["y"], Field::Rationals).unwrap();
        let (a, b) = (m.left_ring().clone(), m.right_ring().clone());
        let i = Ideal::new(&a, vec![var(&a, "s"), var(&a, "x")]);
        let j = Ideal::principal(var(&b, "t"));
        assert!(completed_tor(&m, &i, &j, 1).unwrap().is_canonical_zero());
        let j = Ideal::new(&b, vec![var(&b, "t"), var(&b, "y")]);
        assert!(completed_tor(&m, &i, &j, 2).unwrap().is_canonical_zero());
    }

    #[test]
    fn diagonal_decompose_examples() {
        let m = build_tensor_model::<&str>(&[], &["x"], &["y"], Field::Rationals).unwrap();
        let i = Ideal::principal(var(m.left_ring(), "x").pow(2));
        let rep = diagonal_decompose(&m, &i, &Ideal::zero(m.right_ring())).unwrap();
        assert_eq!((rep.chi_direct, rep.chi_via_diagonal), (2, 2));
        assert_eq!(rep.e_values, vec![2, 0, 0]);

        let m = build_tensor_model(&["s", "t"], &["x"], &["y"], Field::Rationals).unwrap();
        let (a, b) = (m.left_ring().clone(), m.right_ring().clone());
        let i = Ideal::new(&a, vec![var(&a, "s"), var(&a, "x")]);
        let rep = diagonal_decompose(&m, &i, &Ideal::principal(var(&b, "t"))).unwrap();
        assert_eq!(rep.chi_direct, 1);
        assert_eq!(rep.e_values[0], 1);
        assert!(rep.modules[1].is_canonical_zero());

        // vanishing case: dimensions 1 + 1 < 3
        let j = Ideal::new(&b, vec![var(&b, "t"), var(&b, "y")]);
        let rep = diagonal_decompose(&m, &i, &j).unwrap();
        assert!(rep.direct.classification.vanishing_case);
        assert_eq!((rep.chi_direct, rep.chi_via_diagonal), (0, 0));

        let far = Ideal::principal(var(&a, "x"));
        let j = Ideal::principal(var(&b, "y"));
        assert_eq!(diagonal_decompose(&m, &far, &j).unwrap_err(), Error::SupportNotAtOrigin);
    }

    #[test]
    fn flatness_examples() {
        let m = build_tensor_model(&["s", "t"], &["x"], &["y"], Field::Rationals).unwrap();
        let a = m.left_ring().clone();
        let rep = r_flatness_check(&m, &Ideal::<Rational>::zero(&a), false).unwrap();
        assert!(rep.flat);
        assert_eq!((rep.fiber_dimension, rep.expected_fiber_dimension), (Some(1), 1));

        let twisted = Ideal::principal(&var(&a, "t") - &(&var(&a, "s") * &var(&a, "x")));
        let rep = r_flatness_check(&m, &twisted, false).unwrap();
        assert!(!rep.flat && !rep.h1_zero);
        assert_eq!((rep.fiber_dimension, rep.expected_fiber_dimension), (Some(1), 0));

        let rep = r_flatness_check(&m, &Ideal::principal(var(&a, "x")), true).unwrap();
        assert!(rep.flat && rep.normal_asserted);
        assert_eq!((rep.fiber_dimension, rep.expected_fiber_dimension), (Some(0), 0));
    }

    #[test]
    fn dimension_bound_examples() {
        let m = build_tensor_model(&["s", "t"], &["x"], &["y"], Field::Rationals).unwrap();
        let (a, b) = (m.left_ring().clone(), m.right_ring().clone());
        let rep = dimension_bound_check(
            &m,
            &Ideal::principal(var(&a, "x")),
            &Ideal::principal(var(&b, "y")),
            true,
        )
        .unwrap();
        assert_eq!((rep.joint_dimension, rep.bound), (2, 2));
        let rep = dimension_bound_check(
            &m,
            &Ideal::new(&a, vec![var(&a, "s"), var(&a, "x")]),
            &Ideal::new(&b, vec![var(&b, "t"), var(&b, "y")]),
            true,
        )
        .unwrap();
        assert_eq!((rep.joint_dimension, rep.bound), (0, 0));
        let rep = dimension_bound_check(&m, &Ideal::<Rational>::zero(&a), &Ideal::zero(&b), true).unwrap();
        assert_eq!((rep.joint_dimension, rep.bound), (4, 4));
    }

    #[test]
    fn degeneration_examples() {
        let a = Ring::simple(Field::Rationals, &["s", "x"]).unwrap();
        let s = P::var(&a, 0);
        let x = P::var(&a, 1);
        let i = Ideal::new(&a, vec![s.clone(), x.pow(2)]);
        let rep = case1_degeneration_check(&i, &Ideal::zero(&a), &s).unwrap();
        assert_eq!(rep, DegenerationReport { chi_full: 2, chi_reduced: 2 });

        let rep = case1_degeneration_check(&Ideal::principal(s.clone()), &Ideal::principal(x.clone()), &s).unwrap();
        assert_eq!((rep.chi_full, rep.chi_reduced), (1, 1));

        assert!(matches!(
            case1_degeneration_check(&Ideal::principal(x.clone()), &Ideal::principal(s.clone()), &s),
            Err(Error::Precondition(_))
        ));
    }
}
