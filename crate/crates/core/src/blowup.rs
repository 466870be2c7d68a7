//! Blowing up affine space at the origin.
//!
//! Chart `i` of the blowup of `k^d` has coordinates `v` and `u_j` (`j != i`)
//! with `x_i = v` and `x_j = v u_j`; the exceptional divisor is `v = 0`.
//! A point of the exceptional divisor with homogeneous coordinates
//! `[d_1 : ... : d_d]` lies in every chart with `d_i != 0` and is counted in
//! the chart of its first nonzero coordinate.

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::groebner::Ideal;
use crate::homology::{tor_all, PresentedModule};
use crate::multiplicity::{point_multiplicity, tangent_cone};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring, RingRef};

/// One affine chart of the blowup of the origin.
#[derive(Clone, Debug)]
pub struct BlowupChart<C: Coeff> {
    index: usize,
    source: RingRef,
    ring: RingRef,
    /// `others[k]` is the source variable matched with chart variable `k + 1`.
    others: Vec<usize>,
    substitution: Vec<Polynomial<C>>,
}

/// Chart `index` (1-based) of the blowup of the affine space of `source`.
/// For two variables the chart variables are `v, u`; otherwise `v` and
/// `u<j>` for the source variable `j`.
pub fn chart<C: Coeff>(source: &RingRef, index: usize) -> Result<BlowupChart<C>> {
    let d = source.nvars();
    if index == 0 || index > d {
        return Err(Error::ChartIndex { index, dim: d });
    }
    let i = index - 1;
    let others: Vec<usize> = (0..d).filter(|&j| j != i).collect();
    let mut names = vec!["v".to_string()];
    for &j in &others {
        names.push(if d == 2 { "u".to_string() } else { format!("u{}", j + 1) });
    }
    let ring = Ring::with_budget(
        source.field(),
        &names,
        crate::monomial::MonomialOrder::Grevlex,
        0,
        source.budget().clone(),
    )?;
    let v = Polynomial::var(&ring, 0);
    let mut substitution = vec![Polynomial::zero(&ring); d];
    substitution[i] = v.clone();
    for (k, &j) in others.iter().enumerate() {
        substitution[j] = &v * &Polynomial::var(&ring, k + 1);
    }
    Ok(BlowupChart {
        index,
        source: source.clone(),
        ring,
        others,
        substitution,
    })
}

impl<C: Coeff> BlowupChart<C> {
    /// 1-based chart index.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn source(&self) -> &RingRef {
        &self.source
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Images of the source variables.
    pub fn substitution(&self) -> &[Polynomial<C>] {
        &self.substitution
    }

    /// The exceptional equation `v`.
    pub fn exceptional(&self) -> Polynomial<C> {
        Polynomial::var(&self.ring, 0)
    }

    /// Pullback of a source polynomial.
    pub fn pullback(&self, f: &Polynomial<C>) -> Result<Polynomial<C>> {
        if !same_ring(f.ring(), &self.source) {
            return Err(Error::RingMismatch);
        }
        f.substitute(&self.substitution, &self.ring)
    }

    /// Total transform of an ideal.
    pub fn total_transform(&self, i: &Ideal<C>) -> Result<Ideal<C>> {
        if !same_ring(i.ring(), &self.source) {
            return Err(Error::RingMismatch);
        }
        i.map(&self.substitution, &self.ring)
    }

    /// Homogeneous coordinates on the exceptional divisor of a chart point
    /// with `v = 0`.
    pub fn direction(&self, point: &[C]) -> Vec<C> {
        let field = self.ring.field();
        let mut dir = vec![C::zero(field); self.source.nvars()];
        dir[self.index - 1] = C::one(field);
        for (k, &j) in self.others.iter().enumerate() {
            dir[j] = point[k + 1].clone();
        }
        dir
    }

    /// The point of this chart with the given exceptional direction, if the
    /// direction lies in it.
    pub fn point_of_direction(&self, dir: &[C]) -> Option<Vec<C>> {
        let d_i = &dir[self.index - 1];
        if d_i.is_zero() {
            return None;
        }
        let field = self.ring.field();
        let mut point = vec![C::zero(field)];
        for &j in &self.others {
            point.push(dir[j].div(d_i).expect("nonzero"));
        }
        Some(point)
    }
}

/// `(I·chart) : v^∞`.
pub fn strict_transform<C: Coeff>(i: &Ideal<C>, c: &BlowupChart<C>) -> Result<Ideal<C>> {
    if !i.in_maximal_ideal() {
        return Err(Error::NotInMaximalIdeal);
    }
    c.total_transform(i)?.saturation_by(&c.exceptional())
}

/// `(v, f/v)`, the locus where the strict transform of `V(f)` meets the
/// exceptional divisor; `f` must have order exactly one at the origin.
pub fn vbar_locus<C: Coeff>(f: &Polynomial<C>, c: &BlowupChart<C>) -> Result<Ideal<C>> {
    if f.order_at_origin() != Some(1) {
        return Err(Error::Precondition(format!("`{f}` does not have order one at the origin")));
    }
    let v = c.exceptional();
    let g = c.pullback(f)?;
    let quotient = g.div_exact(&v).expect("every term of the pullback contains v");
    Ideal::new(&c.ring, vec![v, quotient]).reduced()
}

/// Whether the pullback of `f` lies in the square of the maximal ideal of
/// `point`; this must agree with membership of `point` in `vbar_locus`.
pub fn ramification_check<C: Coeff>(f: &Polynomial<C>, c: &BlowupChart<C>, point: &[C]) -> Result<bool> {
    if point.len() != c.ring.nvars() {
        return Err(Error::Precondition(format!(
            "chart {} points have {} coordinates",
            c.index,
            c.ring.nvars()
        )));
    }
    let local = c.pullback(f)?.translate(point);
    let ramified = local.order_at_origin().is_none_or(|o| o >= 2);
    let locus = vbar_locus(f, c)?;
    let on_locus = locus.gens().iter().all(|g| g.evaluate(point).is_zero());
    if ramified != on_locus {
        return Err(Error::AssertionFailed(format!(
            "order of the pullback at the point says {ramified}, the locus says {on_locus}"
        )));
    }
    Ok(ramified)
}

/// A point of the blowup where the strict transforms meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPoint<C> {
    /// Chart owning the point.
    pub chart: usize,
    /// Chart coordinates `(v, u...)`.
    pub coords: Vec<C>,
    /// `dim_k` of the localized Tor modules at the point.
    pub tor_lengths: Vec<u64>,
    pub local_chi: i64,
}

#[derive(Clone, Debug)]
pub struct BlowupIntersectionReport<C: Coeff> {
    pub chart_points: Vec<ChartPoint<C>>,
    pub total_blowup_chi: i64,
    /// Strict transforms `(of I, of J)` per chart.
    pub strict_transforms: Vec<(Ideal<C>, Ideal<C>)>,
    /// `chi(I, J)`, filled in by the Fulton check.
    pub fulton_lhs: Option<i64>,
    /// `e(A/I) e(A/J) + total_blowup_chi`, filled in by the Fulton check.
    pub fulton_rhs: Option<i64>,
    pub e_values: Option<(u64, u64)>,
}

/// Sum of the local intersection multiplicities of the strict transforms of
/// `A/I` and `A/J` over the supplied points, given per chart as
/// `(chart index, coordinates)`. The points must exhaust the intersection.
pub fn blowup_chi<C: Coeff>(
    i: &Ideal<C>,
    j: &Ideal<C>,
    points: &[(usize, Vec<C>)],
) -> Result<BlowupIntersectionReport<C>> {
    let source = i.ring();
    if !same_ring(source, j.ring()) {
        return Err(Error::RingMismatch);
    }
    let d = source.nvars();
    let charts = (1..=d).map(|k| chart::<C>(source, k)).collect::<Result<Vec<_>>>()?;
    let mut strict = Vec::new();
    for c in &charts {
        strict.push((strict_transform(i, c)?, strict_transform(j, c)?));
    }

    // exceptional directions of the supplied points, without repeats
    let mut directions: Vec<Vec<C>> = Vec::new();
    for (k, coords) in points {
        let c = charts.get(k.wrapping_sub(1)).ok_or(Error::ChartIndex { index: *k, dim: d })?;
        if coords.len() != d {
            return Err(Error::Precondition(format!("chart {k} points have {d} coordinates")));
        }
        if !coords[0].is_zero() {
            return Err(Error::Precondition(format!(
                "point {} of chart {k} is off the exceptional divisor",
                show(coords)
            )));
        }
        let dir = normalize(c.direction(coords));
        if !directions.contains(&dir) {
            directions.push(dir);
        }
    }

    let mut chart_points = Vec::new();
    for (c, (si, sj)) in charts.iter().zip(&strict) {
        let sum = si.sum(sj)?;
        if sum.is_unit()? {
            continue;
        }
        if sum.krull_dimension()? > 0 {
            return Err(Error::SupportNotFinite { chart: c.index });
        }
        let here: Vec<Vec<C>> = directions.iter().filter_map(|dir| c.point_of_direction(dir)).collect();
        let mut residual = sum.clone();
        for p in &here {
            if !sum.gens().iter().all(|g| g.evaluate(p).is_zero()) {
                return Err(Error::Precondition(format!(
                    "point {} of chart {} is not on both strict transforms",
                    show(p),
                    c.index
                )));
            }
            residual = residual.saturation(&point_ideal(&c.ring, p))?;
        }
        if !residual.is_unit()? {
            return Err(Error::ResidualSupport(format!(
                "chart {}: the strict transforms also meet outside the given points \
                 (residual ideal {residual}); the missing points may need an extension of the \
                 base field, only rational points are supported",
                c.index
            )));
        }
        for dir in &directions {
            if first_nonzero(dir) + 1 != c.index {
                continue;
            }
            let p = c.point_of_direction(dir).expect("owner chart contains the direction");
            let (tor_lengths, local_chi) = local_chi(si, sj, &p)?;
            chart_points.push(ChartPoint {
                chart: c.index,
                coords: p,
                tor_lengths,
                local_chi,
            });
        }
    }
    // a supplied point that is in no intersection
    for dir in &directions {
        let owner = first_nonzero(dir) + 1;
        if !chart_points.iter().any(|cp| cp.chart == owner && charts[owner - 1].direction(&cp.coords) == *dir) {
            let p = charts[owner - 1].point_of_direction(dir).unwrap();
            return Err(Error::Precondition(format!(
                "point {} of chart {owner} is not on both strict transforms",
                show(&p)
            )));
        }
    }
    let total_blowup_chi = chart_points.iter().map(|p| p.local_chi).sum();
    Ok(BlowupIntersectionReport {
        chart_points,
        total_blowup_chi,
        strict_transforms: strict,
        fulton_lhs: None,
        fulton_rhs: None,
        e_values: None,
    })
}

fn first_nonzero<C: Coeff>(dir: &[C]) -> usize {
    dir.iter().position(|c| !c.is_zero()).expect("directions are nonzero")
}

/// Scales a direction so its first nonzero coordinate is one.
fn normalize<C: Coeff>(dir: Vec<C>) -> Vec<C> {
    let lead = dir[first_nonzero(&dir)].clone();
    dir.into_iter().map(|c| c.div(&lead).expect("nonzero")).collect()
}

fn point_ideal<C: Coeff>(ring: &RingRef, p: &[C]) -> Ideal<C> {
    Ideal::new(
        ring,
        p.iter()
            .enumerate()
            .map(|(k, c)| &Polynomial::var(ring, k) - &Polynomial::constant(ring, c.clone()))
            .collect(),
    )
}

fn show<C: Coeff>(p: &[C]) -> String {
    let parts: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Tor lengths and `chi` at `p` of two ideals whose sum has finite support:
/// after moving `p` to the origin, the part of a finite-length module `T`
/// supported there is `T / m^N T` for `N = dim_k T`.
fn local_chi<C: Coeff>(i: &Ideal<C>, j: &Ideal<C>, p: &[C]) -> Result<(Vec<u64>, i64)> {
    let ring = i.ring();
    let move_ideal = |id: &Ideal<C>| Ideal::new(ring, id.gens().iter().map(|g| g.translate(p)).collect());
    let m = PresentedModule::cyclic(&move_ideal(i));
    let n = PresentedModule::cyclic(&move_ideal(j));
    let maximal = Ideal::maximal(ring);
    let mut lengths = Vec::new();
    for t in tor_all(&m, &n)? {
        let total = t.k_dimension()?;
        let local = if total == 0 {
            0
        } else {
            t.quotient_by_ideal(&maximal.power(total as u32))?.k_dimension()?
        };
        lengths.push(local);
    }
    let chi = crate::homology::tor::alternating_sum(&lengths);
    Ok((lengths, chi))
}

/// Checks `chi(I, J) = e(A/I) e(A/J) + blowup_chi(I, J)`.
pub fn fulton_verify<C: Coeff>(
    i: &Ideal<C>,
    j: &Ideal<C>,
    points: &[(usize, Vec<C>)],
) -> Result<BlowupIntersectionReport<C>> {
    let lhs = crate::homology::chi(i, j)?.chi;
    let e = (point_multiplicity(i)?, point_multiplicity(j)?);
    let mut report = blowup_chi(i, j, points)?;
    let rhs = (e.0 * e.1) as i64 + report.total_blowup_chi;
    report.fulton_lhs = Some(lhs);
    report.fulton_rhs = Some(rhs);
    report.e_values = Some(e);
    if lhs != rhs {
        return Err(Error::AssertionFailed(format!(
            "chi = {lhs} but e·e + blowup chi = {} * {} + {} = {rhs}",
            e.0, e.1, report.total_blowup_chi
        )));
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct CorollaryDReport<C: Coeff> {
    pub chi: i64,
    pub e_product: u64,
    /// Krull dimension of the sum of the tangent cones.
    pub cone_dimension: usize,
    /// `chi = e(A/I) e(A/J)`.
    pub equality: bool,
    pub blowup: BlowupIntersectionReport<C>,
}

/// With at most a line in common between the tangent cones: if
/// `chi = e·e` the strict transforms must be disjoint (so the cones meet
/// only at the vertex), and otherwise every local term on the blowup must be
/// positive.
pub fn corollary_d_check<C: Coeff>(
    i: &Ideal<C>,
    j: &Ideal<C>,
    points: &[(usize, Vec<C>)],
) -> Result<CorollaryDReport<C>> {
    let cone_dimension = tangent_cone(i)?.sum(&tangent_cone(j)?)?.krull_dimension()?;
    if cone_dimension > 1 {
        return Err(Error::Precondition(format!(
            "the tangent cones meet in dimension {cone_dimension}"
        )));
    }
    let blowup = fulton_verify(i, j, points)?;
    let chi = blowup.fulton_lhs.unwrap();
    let (e1, e2) = blowup.e_values.unwrap();
    let e_product = e1 * e2;
    let equality = chi == e_product as i64;
    if equality {
        for (k, (si, sj)) in blowup.strict_transforms.iter().enumerate() {
            if !si.sum(sj)?.is_unit()? {
                return Err(Error::AssertionFailed(format!(
                    "chi = e·e but the strict transforms meet in chart {}",
                    k + 1
                )));
            }
        }
        if blowup.total_blowup_chi != 0 || cone_dimension != 0 {
            return Err(Error::AssertionFailed(format!(
                "chi = e·e with blowup chi {} and cone dimension {cone_dimension}",
                blowup.total_blowup_chi
            )));
        }
    } else if let Some(p) = blowup.chart_points.iter().find(|p| p.local_chi <= 0) {
        return Err(Error::AssertionFailed(format!(
            "local chi {} at {} in chart {} is not positive",
            p.local_chi,
            show(&p.coords),
            p.chart
        )));
    }
    Ok(CorollaryDReport {
        chi,
        e_product,
        cone_dimension,
        equality,
        blowup,
    })
}
