//! Exact lattice-point counting in dilated flow polytopes.
//!
//! The system `A·u = t·b` (optionally extended by a Varshamov block
//! `H·u - p·w = β`) is solved over the integers once: a particular solution
//! plus an echelon kernel basis. Points are then enumerated over kernel
//! coefficients, level by level, where each level's range is the exact
//! interval allowed by every coordinate whose value is fixed at that level.
//! The innermost level is counted in closed form.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{param, Error, Result};
use crate::gram::GramSet;
use crate::graph::{Cycle, DeBruijnGraph};
use crate::intmat;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    /// `u >= 0`, the set `F`.
    Boundary,
    /// `u > 0`, the set `E`.
    Interior,
}

/// Varshamov block: `H·u ≡ β (mod p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrcBlock {
    /// `d × |S|`, entries in `[0, p)`.
    pub h: Vec<Vec<u64>>,
    pub p: u64,
    pub beta: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Variant {
    Plain,
    Grc(GrcBlock),
}

/// `A·x = rhs` with coordinate bounds `lower <= x <= upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSystem {
    pub a: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    /// Number of profile coordinates `|S|`; any further coordinates are auxiliary.
    pub profile_len: usize,
    pub t: u64,
    pub strictness: Strictness,
}

impl LatticeSystem {
    /// `b`: one then zeros, the right-hand side at `t = 1` without `β`.
    pub fn b(&self) -> Vec<i64> {
        let mut b = vec![0; self.a.len()];
        b[0] = 1;
        b
    }
}

/// `A(S)` (ones row over `B(D(S))`), extended by `[H | -p·I]` for the GRC variant.
pub fn build_system(set: &GramSet, variant: &Variant, t: u64, strictness: Strictness) -> Result<LatticeSystem> {
    let graph = DeBruijnGraph::build(set);
    build_system_in(&graph, variant, t, strictness)
}

pub fn build_system_in(graph: &DeBruijnGraph, variant: &Variant, t: u64, strictness: Strictness) -> Result<LatticeSystem> {
    let s = graph.arc_count();
    let ti = i64::try_from(t).map_err(|_| Error::Overflow("dilation t"))?;
    let (d, p) = match variant {
        Variant::Plain => (0, 1),
        Variant::Grc(block) => {
            if block.p < 2 {
                return Err(param("modulus p must be at least 2"));
            }
            if block.h.iter().any(|r| r.len() != s) || block.beta.len() != block.h.len() {
                return Err(param(alloc::format!("H must be d × {s} with a length-d β")));
            }
            if block.h.iter().flatten().chain(&block.beta).any(|&x| x >= block.p) {
                return Err(param("entries of H and β must be reduced mod p"));
            }
            (block.h.len(), block.p)
        }
    };
    let width = s + d;
    let mut a = Vec::with_capacity(1 + graph.node_count() + d);
    let mut ones = vec![0i64; width];
    ones[..s].iter_mut().for_each(|x| *x = 1);
    a.push(ones);
    for row in graph.incidence_matrix() {
        let mut r = row;
        r.resize(width, 0);
        a.push(r);
    }
    let mut rhs = vec![0i64; a.len()];
    rhs[0] = ti;
    let first = match strictness {
        Strictness::Boundary => 0,
        Strictness::Interior => 1,
    };
    let mut lower = vec![first; s];
    let mut upper = vec![ti; s];
    if let Variant::Grc(block) = variant {
        for (r, hr) in block.h.iter().enumerate() {
            let mut row: Vec<i64> = hr.iter().map(|&x| x as i64).collect();
            row.resize(width, 0);
            row[s + r] = -(p as i64);
            a.push(row);
            rhs.push(block.beta[r] as i64);
            let top = hr.iter().copied().max().unwrap_or(0) as u128;
            let bound = top * t as u128 / p as u128;
            upper.push(i64::try_from(bound).map_err(|_| Error::Overflow("auxiliary bound"))?);
            lower.push(0);
        }
    }
    Ok(LatticeSystem {
        a,
        rhs,
        lower,
        upper,
        profile_len: s,
        t,
        strictness,
    })
}

/// Integer solution set of a system: `x = particular + Σ c_k basis[k]`.
#[derive(Debug, Clone)]
pub struct Parametrization {
    /// `None` when `A·x = rhs` has no integer solution.
    pub particular: Option<Vec<i64>>,
    /// Echelon kernel basis with positive pivots at strictly increasing columns.
    pub basis: Vec<Vec<i64>>,
    pub pivots: Vec<usize>,
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    plan: Plan,
}

#[derive(Debug, Clone, Default)]
struct Plan {
    /// Coordinates untouched by the kernel.
    fixed: Vec<usize>,
    /// Per level: `(coordinate, coefficient)` for coordinates whose last
    /// nonzero basis entry is at this level.
    checks: Vec<Vec<(usize, i64)>>,
    /// Per level: `(coordinate, coefficient)` still open after this level.
    updates: Vec<Vec<(usize, i64)>>,
}

impl Parametrization {
    pub fn kernel_rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_feasible(&self) -> bool {
        self.particular.is_some()
    }

    /// Loose bound on enumeration nodes: product of the pivot ranges of all
    /// but the innermost level.
    pub fn box_estimate(&self) -> u128 {
        let levels = self.basis.len();
        (0..levels.saturating_sub(1))
            .map(|k| {
                let j = self.pivots[k];
                ((self.upper[j] - self.lower[j]) / self.basis[k][j] + 1).max(1) as u128
            })
            .fold(1u128, |acc, x| acc.saturating_mul(x))
    }

    /// Admissible range of the outermost coefficient, for splitting work.
    pub fn outer_range(&self) -> Option<RangeInclusive<i64>> {
        let u0 = self.particular.as_ref()?;
        if !self.fixed_ok(u0) {
            return None;
        }
        if self.basis.is_empty() {
            return Some(0..=0);
        }
        let (lo, hi) = self.interval(0, u0);
        (lo <= hi).then_some(lo..=hi)
    }

    fn fixed_ok(&self, u0: &[i64]) -> bool {
        self.plan
            .fixed
            .iter()
            .all(|&j| (self.lower[j]..=self.upper[j]).contains(&u0[j]))
    }

    fn interval(&self, level: usize, partial: &[i64]) -> (i64, i64) {
        let (mut lo, mut hi) = (i64::MIN, i64::MAX);
        for &(j, a) in &self.plan.checks[level] {
            let (from, to) = (self.lower[j] - partial[j], self.upper[j] - partial[j]);
            if a > 0 {
                lo = lo.max(ceil_div(from, a));
                hi = hi.min(floor_div(to, a));
            } else {
                lo = lo.max(ceil_div(to, a));
                hi = hi.min(floor_div(from, a));
            }
        }
        (lo, hi)
    }
}

fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -floor_div(-a, b)
}

pub fn parametrize(system: &LatticeSystem) -> Result<Parametrization> {
    let a = intmat::from_i64(&system.a);
    let echelon = intmat::column_echelon(&a);
    let rhs: Vec<BigInt> = system.rhs.iter().map(|&x| BigInt::from(x)).collect();
    let (basis_big, pivots) = intmat::row_echelon(&echelon.kernel());
    let particular = echelon.solve(&rhs).map(|mut u0| {
        for (w, &j) in basis_big.iter().zip(&pivots) {
            let f = u0[j].div_floor(&w[j]);
            if !f.is_zero() {
                for (x, y) in u0.iter_mut().zip(w) {
                    *x -= &f * y;
                }
            }
        }
        u0
    });
    let to_i64 = |v: &[BigInt]| -> Result<Vec<i64>> {
        v.iter()
            .map(|x| x.to_i64().ok_or(Error::Overflow("lattice parametrization")))
            .collect()
    };
    let basis = basis_big.iter().map(|w| to_i64(w)).collect::<Result<Vec<_>>>()?;
    let particular = particular.map(|u| to_i64(&u)).transpose()?;

    let n = system.lower.len();
    let levels = basis.len();
    let mut plan = Plan {
        fixed: Vec::new(),
        checks: vec![Vec::new(); levels],
        updates: vec![Vec::new(); levels],
    };
    for j in 0..n {
        let deps: Vec<usize> = (0..levels).filter(|&k| basis[k][j] != 0).collect();
        match deps.last() {
            None => plan.fixed.push(j),
            Some(&last) => {
                plan.checks[last].push((j, basis[last][j]));
                for &k in &deps[..deps.len() - 1] {
                    plan.updates[k].push((j, basis[k][j]));
                }
            }
        }
    }
    Ok(Parametrization {
        particular,
        basis,
        pivots,
        lower: system.lower.clone(),
        upper: system.upper.clone(),
        plan,
    })
}

struct Walker<'a> {
    param: &'a Parametrization,
    visited: u64,
    limit: u64,
}

impl Walker<'_> {
    fn count(&mut self, level: usize, partial: &mut [i64]) -> Result<u128> {
        let (lo, hi) = self.param.interval(level, partial);
        if lo > hi {
            return Ok(0);
        }
        self.count_range(level, lo, hi, partial)
    }

    fn count_range(&mut self, level: usize, lo: i64, hi: i64, partial: &mut [i64]) -> Result<u128> {
        if level + 1 == self.param.basis.len() {
            return Ok((hi - lo + 1) as u128);
        }
        self.visited += 1;
        if self.visited > self.limit {
            return Err(self.budget_error());
        }
        let updates = &self.param.plan.updates[level];
        for &(j, a) in updates {
            partial[j] += lo * a;
        }
        let mut total = 0u128;
        for _ in lo..=hi {
            total += self.count(level + 1, partial)?;
            for &(j, a) in updates {
                partial[j] += a;
            }
        }
        for &(j, a) in updates {
            partial[j] -= (hi + 1) * a;
        }
        Ok(total)
    }

    fn visit(&mut self, level: usize, partial: &mut [i64], f: &mut dyn FnMut(&[i64])) -> Result<()> {
        let (lo, hi) = self.param.interval(level, partial);
        if lo > hi {
            return Ok(());
        }
        self.visited += 1;
        if self.visited > self.limit {
            return Err(self.budget_error());
        }
        let last = level + 1 == self.param.basis.len();
        let basis = &self.param.basis[level];
        let touched: Vec<(usize, i64)> = (0..basis.len()).filter(|&j| basis[j] != 0).map(|j| (j, basis[j])).collect();
        for c in lo..=hi {
            for &(j, a) in &touched {
                partial[j] += c * a;
            }
            if last {
                f(partial);
            } else {
                self.visit(level + 1, partial, f)?;
            }
            for &(j, a) in &touched {
                partial[j] -= c * a;
            }
        }
        Ok(())
    }

    fn budget_error(&self) -> Error {
        Error::BudgetExceeded {
            what: "lattice enumeration nodes",
            estimate: self.param.box_estimate().max(self.visited as u128),
            limit: self.limit as u128,
        }
    }
}

/// Number of lattice points; zero when the system is infeasible.
pub fn count_points(system: &LatticeSystem, limits: &Limits) -> Result<u128> {
    let param = parametrize(system)?;
    match param.outer_range() {
        Some(range) => count_points_in(&param, range, limits),
        None => Ok(0),
    }
}

/// Points whose outermost coefficient lies in `range`; ranges that
/// partition [`Parametrization::outer_range`] add up to the full count.
pub fn count_points_in(param: &Parametrization, range: RangeInclusive<i64>, limits: &Limits) -> Result<u128> {
    let Some(u0) = &param.particular else {
        return Ok(0);
    };
    if !param.fixed_ok(u0) {
        return Ok(0);
    }
    if param.basis.is_empty() {
        return Ok(u128::from(range.contains(&0)));
    }
    let (lo, hi) = param.interval(0, u0);
    let (lo, hi) = (lo.max(*range.start()), hi.min(*range.end()));
    if lo > hi {
        return Ok(0);
    }
    let mut walker = Walker {
        param,
        visited: 0,
        limit: limits.lattice_nodes,
    };
    let mut partial = u0.clone();
    walker.count_range(0, lo, hi, &mut partial)
}

/// Calls `f` on every lattice point (profile and auxiliary coordinates).
pub fn for_each_point(system: &LatticeSystem, limits: &Limits, f: &mut dyn FnMut(&[i64])) -> Result<()> {
    let param = parametrize(system)?;
    let Some(u0) = &param.particular else {
        return Ok(());
    };
    if !param.fixed_ok(u0) {
        return Ok(());
    }
    if param.basis.is_empty() {
        f(u0);
        return Ok(());
    }
    let mut walker = Walker {
        param: &param,
        visited: 0,
        limit: limits.lattice_nodes,
    };
    let mut partial = u0.clone();
    walker.visit(0, &mut partial, f)
}

/// A polynomial in `t` valid on the residue class `t ≡ residue (mod period)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasipolynomial {
    pub degree: usize,
    pub period: u64,
    pub residue: u64,
    /// Coefficients of `t^0, t^1, ..`.
    pub coefficients: Vec<BigRational>,
}

impl Quasipolynomial {
    pub fn evaluate(&self, t: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(t));
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    pub fn leading(&self) -> &BigRational {
        &self.coefficients[self.degree]
    }

    /// Coefficients of the same polynomial in `k` where `t = period·k`.
    pub fn coefficients_in_k(&self) -> Vec<BigRational> {
        let lambda = BigRational::from_integer(BigInt::from(self.period));
        let mut power = BigRational::one();
        self.coefficients
            .iter()
            .map(|c| {
                let out = c * &power;
                power *= &lambda;
                out
            })
            .collect()
    }
}

/// Fits the residue-0 polynomial of a quasipolynomial of period `period`
/// from counts at `t = period·k`, `k = 1..=samples`.
///
/// The first `degree + 1` samples determine the polynomial and the rest
/// must agree with it exactly.
pub fn fit_quasipolynomial(
    degree: usize,
    period: u64,
    samples: usize,
    mut count: impl FnMut(u64) -> Result<u128>,
) -> Result<Quasipolynomial> {
    if samples < degree + 2 {
        return Err(param(alloc::format!("{samples} samples cannot fit and verify degree {degree}")));
    }
    if period == 0 {
        return Err(param("period must be positive"));
    }
    let mut points = Vec::with_capacity(samples);
    for k in 1..=samples as u64 {
        let t = period.checked_mul(k).ok_or(Error::Overflow("sample dilation"))?;
        points.push((k as i64, count(t)?));
    }
    fit_from_samples(degree, period, &points)
}

/// Same as [`fit_quasipolynomial`] with precomputed `(k, count)` samples.
pub fn fit_from_samples(degree: usize, period: u64, points: &[(i64, u128)]) -> Result<Quasipolynomial> {
    if points.len() < degree + 2 {
        return Err(param("need at least degree + 2 samples"));
    }
    let xs: Vec<BigRational> = points[..=degree]
        .iter()
        .map(|&(k, _)| BigRational::from_integer(BigInt::from(k)))
        .collect();
    let ys: Vec<BigRational> = points[..=degree]
        .iter()
        .map(|&(_, y)| BigRational::from_integer(BigInt::from(y)))
        .collect();
    let in_k = interpolate(&xs, &ys);
    let lambda = BigRational::from_integer(BigInt::from(period));
    let mut power = BigRational::one();
    let mut coefficients = Vec::with_capacity(degree + 1);
    for c in &in_k {
        coefficients.push(c / &power);
        power *= &lambda;
    }
    let q = Quasipolynomial {
        degree,
        period,
        residue: 0,
        coefficients,
    };
    for &(k, y) in &points[degree + 1..] {
        let t = (period as i64).checked_mul(k).ok_or(Error::Overflow("sample dilation"))?;
        let predicted = q.evaluate(t);
        if predicted != BigRational::from_integer(BigInt::from(y)) {
            return Err(Error::FitMismatch(alloc::format!(
                "degree-{degree} fit predicts {predicted} at t = {t} but the count is {y}"
            )));
        }
    }
    if q.leading().is_zero() {
        return Err(Error::FitMismatch(alloc::format!("leading coefficient of degree {degree} vanishes")));
    }
    Ok(q)
}

/// Monomial coefficients of the interpolating polynomial (Newton form expanded).
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut coeffs = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); n];
        for j in 0..n {
            if coeffs[j].is_zero() {
                continue;
            }
            if j + 1 < n {
                next[j + 1] += &coeffs[j];
            }
            next[j] -= &coeffs[j] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// Values of `t` where `L_F(-t) != (-1)^D L_E(t)`, checked at `t = period·k`.
pub fn reciprocity_check(boundary: &Quasipolynomial, interior: &Quasipolynomial, samples: usize) -> Vec<i64> {
    let sign = if boundary.degree.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
    (1..=samples as i64)
        .map(|k| k * boundary.period as i64)
        .filter(|&t| boundary.evaluate(-t) != &sign * interior.evaluate(t))
        .collect()
}

/// Whether `|F|` is nondecreasing for `t = 1..=t_max`; needs a strongly
/// connected graph with a loop.
pub fn monotonicity_check(set: &GramSet, t_max: u64, limits: &Limits) -> Result<bool> {
    let graph = DeBruijnGraph::build(set);
    if !graph.is_strongly_connected() {
        return Err(param("monotonicity needs a strongly connected graph"));
    }
    if !graph.has_loop() {
        return Err(param("monotonicity needs a loop (a constant gram) in the gram set, and it has none"));
    }
    let mut previous = 0u128;
    for t in 1..=t_max {
        let c = count_points(&build_system_in(&graph, &Variant::Plain, t, Strictness::Boundary)?, limits)?;
        if c < previous {
            return Ok(false);
        }
        previous = c;
    }
    Ok(true)
}

/// A vertex `χ(C)/|C|` of the polytope at `t = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeVertex {
    pub coordinates: Vec<BigRational>,
    pub cycle: Cycle,
}

/// One vertex per simple cycle; the GRC variant appends `H·χ(C)/(p|C|)`.
pub fn polytope_vertices(set: &GramSet, variant: &Variant, limits: &Limits) -> Result<Vec<PolytopeVertex>> {
    let graph = DeBruijnGraph::build(set);
    let cycles = graph.enumerate_cycles(limits)?;
    Ok(cycles
        .into_iter()
        .map(|cycle| {
            let len = BigInt::from(cycle.len());
            let chi = cycle.incidence_vector(graph.arc_count());
            let mut coordinates: Vec<BigRational> = chi
                .iter()
                .map(|&x| BigRational::new(BigInt::from(x), len.clone()))
                .collect();
            if let Variant::Grc(block) = variant {
                for row in &block.h {
                    let dot: u64 = row.iter().zip(&chi).map(|(h, x)| h * x).sum();
                    coordinates.push(BigRational::new(BigInt::from(dot), &len * BigInt::from(block.p)));
                }
            }
            PolytopeVertex { coordinates, cycle }
        })
        .collect())
}

/// `dim P(S) = |S| - |V(S)|` for strongly connected `D(S)`, cross-checked
/// against the integer kernel rank.
pub fn dimension(set: &GramSet) -> Result<usize> {
    let graph = DeBruijnGraph::build(set);
    if !graph.is_strongly_connected() {
        return Err(param("dimension formula needs a strongly connected graph"));
    }
    let dim = graph.arc_count() - graph.node_count();
    let rank = parametrize(&build_system_in(&graph, &Variant::Plain, 1, Strictness::Boundary)?)?.kernel_rank();
    if rank != dim {
        return Err(Error::Internal(alloc::format!("kernel rank {rank} differs from |S| - |V| = {dim}")));
    }
    Ok(dim)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    pub strongly_connected: bool,
    /// `|S| - |V(S)|` when strongly connected.
    pub degree: Option<usize>,
    pub lambda: Option<u64>,
    pub delta_bar: i64,
    pub delta: i64,
}

pub fn growth_report(set: &GramSet, limits: &Limits) -> Result<GrowthReport> {
    let graph = DeBruijnGraph::build(set);
    let strongly_connected = graph.is_strongly_connected();
    let condensation = graph.condensation();
    let (degree, lambda) = if strongly_connected {
        (Some(graph.arc_count() - graph.node_count()), Some(graph.lambda(limits)?))
    } else {
        (None, None)
    };
    Ok(GrowthReport {
        strongly_connected,
        degree,
        lambda,
        delta_bar: condensation.delta_bar,
        delta: condensation.delta,
    })
}

/// Checks `A·x = rhs` for a rational vector, e.g. a polytope vertex at `t = 1`.
pub fn satisfies(system: &LatticeSystem, x: &[BigRational]) -> bool {
    system.a.iter().zip(&system.rhs).all(|(row, &r)| {
        let lhs: BigRational = row
            .iter()
            .zip(x)
            .map(|(&a, v)| v * BigRational::from_integer(BigInt::from(a)))
            .sum();
        lhs == BigRational::from_integer(BigInt::from(r))
    }) && x.iter().all(|v| !v.is_negative())
}
