//! Deterministic globally adaptive quadrature on finite intervals and on
//! `[0, ∞)`, plus the analytic Bose moments the drifted-Planck integrals
//! reduce to.
//!
//! Both rules share one driver: the panel with the largest error estimate is
//! bisected until the summed estimate meets `max(rel_tol·|I|, abs_tol)` or the
//! subdivision budget runs out. No state outlives a call, and the evaluation
//! order depends only on the inputs, so results are bit-reproducible.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::{Error, Result};

/// ζ(3), Apéry's constant.
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;
/// ζ(4) = π⁴/90.
pub const ZETA_4: f64 = PI * PI * PI * PI / 90.0;
/// ζ(5).
pub const ZETA_5: f64 = 1.036_927_755_143_37;

const GAUSS_ORDER: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    #[default]
    AdaptiveSimpson,
    /// 32-point Gauss–Legendre panels, each error-checked against its two
    /// halves.
    GaussLegendre,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::AdaptiveSimpson, Method::GaussLegendre];
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub method: Method,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
            method: Method::AdaptiveSimpson,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize, method: Method) -> Result<Self> {
        let spec = Self { rel_tol, abs_tol, max_subdivisions, method };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_method(self, method: Method) -> Self {
        Self { method, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let tol_ok = |t: f64| t.is_finite() && t > 0.0;
        if !tol_ok(self.rel_tol) || !tol_ok(self.abs_tol) {
            return Err(Error::usage(format!(
                "quadrature tolerances must be positive (rel_tol={}, abs_tol={})",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::usage("quadrature budget must be at least one subdivision"));
        }
        Ok(())
    }

    /// A tighter copy for integrals nested inside an outer quadrature.
    pub(crate) fn inner(&self) -> Self {
        Self {
            rel_tol: self.rel_tol * 1e-2,
            abs_tol: self.abs_tol * 1e-2,
            max_subdivisions: self.max_subdivisions,
            method: self.method,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// `∫₀^∞ xˢ/(eˣ − 1) dx = Γ(s+1) ζ(s+1)` for `s ∈ {2, 3, 4}`.
pub fn bose_moment(s: u32) -> Result<f64> {
    match s {
        2 => Ok(2.0 * ZETA_3),
        3 => Ok(6.0 * ZETA_4),
        4 => Ok(24.0 * ZETA_5),
        _ => Err(Error::usage(format!("bose moment only tabulated for s in {{2, 3, 4}}, got {s}"))),
    }
}

/// `∫₀^∞ xˢ/(e^{ax} − 1) dx = bose_moment(s) / a^{s+1}`.
pub fn scaled_bose_moment(s: u32, a: f64) -> Result<f64> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::usage(format!("bose moment scale must be positive, got {a}")));
    }
    Ok(bose_moment(s)? / a.powi(s as i32 + 1))
}

pub fn integrate_interval<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<IntegrationResult>
where
    F: Fn(f64) -> f64,
{
    try_integrate_interval(|x| Ok(f(x)), a, b, spec)
}

/// Like [`integrate_interval`] for integrands that can fail, typically
/// because they run a quadrature of their own.
pub fn try_integrate_interval<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<IntegrationResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    spec.validate()?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::usage(format!("integration interval must satisfy a < b, got [{a}, {b}]")));
    }
    let mut evaluations = 0usize;
    let mut eval = |x: f64| -> Result<f64> {
        evaluations += 1;
        let y = f(x)?;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Numerical {
                message: format!("integrand is not finite at x = {x}"),
                estimate: f64::NAN,
                error_estimate: f64::INFINITY,
            })
        }
    };
    let (value, error_estimate) = match spec.method {
        Method::AdaptiveSimpson => drive(SimpsonPanel::new(&mut eval, a, b)?, &mut eval, spec)?,
        Method::GaussLegendre => drive(GaussPanel::new(&mut eval, a, b, None)?, &mut eval, spec)?,
    };
    Ok(IntegrationResult { value, error_estimate, evaluations })
}

/// `∫₀^∞ f(x) dx` via `x = t/(1 − t)`, `dx = dt/(1 − t)²`. The integrand at
/// `t = 1` is taken as its limit, zero, so `f` must decay faster than `x⁻²`.
pub fn integrate_semi_infinite<F>(f: F, spec: &QuadratureSpec) -> Result<IntegrationResult>
where
    F: Fn(f64) -> f64,
{
    try_integrate_interval(
        |t| {
            if t >= 1.0 {
                return Ok(0.0);
            }
            let s = 1.0 - t;
            Ok(f(t / s) / (s * s))
        },
        0.0,
        1.0,
        spec,
    )
}

trait Panel: Sized {
    fn bounds(&self) -> (f64, f64);
    fn value(&self) -> f64;
    /// Discretization error estimate, excluding rounding.
    fn truncation(&self) -> f64;
    fn split<E: FnMut(f64) -> Result<f64>>(self, eval: &mut E) -> Result<(Self, Self)>;

    /// Reported error: truncation, but never below what f64 can resolve.
    fn error(&self) -> f64 {
        self.truncation().max(roundoff_floor(self.value()))
    }
}

struct Queued<P> {
    truncation: f64,
    order: u64,
    panel: P,
}

impl<P> PartialEq for Queued<P> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<P> Eq for Queued<P> {}
impl<P> PartialOrd for Queued<P> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<P> Ord for Queued<P> {
    // Largest error first; ties go to the older panel.
    fn cmp(&self, other: &Self) -> Ordering {
        self.truncation
            .total_cmp(&other.truncation)
            .then_with(|| other.order.cmp(&self.order))
    }
}

struct Totals {
    value: f64,
    truncation: f64,
    error: f64,
}

/// Refines until the summed truncation estimate meets the tolerance. Returns
/// the value and the reported error (truncation plus rounding floor).
fn drive<P, E>(first: P, eval: &mut E, spec: &QuadratureSpec) -> Result<(f64, f64)>
where
    P: Panel,
    E: FnMut(f64) -> Result<f64>,
{
    let target = |value: f64| spec.abs_tol.max(spec.rel_tol * value.abs());
    let mut heap = BinaryHeap::new();
    let mut counter = 0u64;
    heap.push(Queued { truncation: first.truncation(), order: counter, panel: first });
    let mut splits = 0usize;
    let Totals { mut value, mut truncation, .. } = totals(&heap);

    loop {
        if truncation <= target(value) {
            // Running sums drift; confirm with a fresh ordered sum.
            let fresh = totals(&heap);
            (value, truncation) = (fresh.value, fresh.truncation);
            if truncation <= target(value) {
                return Ok((fresh.value, fresh.error));
            }
        }
        let worst = heap.peek().expect("heap never empties");
        let (a, b) = worst.panel.bounds();
        let mid = 0.5 * (a + b);
        if splits >= spec.max_subdivisions || !(a < mid && mid < b) {
            let fresh = totals(&heap);
            return Err(Error::Numerical {
                message: format!(
                    "quadrature did not converge after {splits} subdivisions (rel_tol {:e}, abs_tol {:e})",
                    spec.rel_tol, spec.abs_tol
                ),
                estimate: fresh.value,
                error_estimate: fresh.error,
            });
        }
        let worst = heap.pop().expect("peeked above");
        value -= worst.panel.value();
        truncation -= worst.truncation;
        let (left, right) = worst.panel.split(eval)?;
        splits += 1;
        for panel in [left, right] {
            counter += 1;
            value += panel.value();
            truncation += panel.truncation();
            heap.push(Queued { truncation: panel.truncation(), order: counter, panel });
        }
    }
}

// Summed left to right so the total does not depend on heap layout.
fn totals<P: Panel>(heap: &BinaryHeap<Queued<P>>) -> Totals {
    let mut panels: Vec<&P> = heap.iter().map(|q| &q.panel).collect();
    panels.sort_by(|p, q| p.bounds().0.total_cmp(&q.bounds().0));
    panels.iter().fold(Totals { value: 0.0, truncation: 0.0, error: 0.0 }, |t, p| Totals {
        value: t.value + p.value(),
        truncation: t.truncation + p.truncation(),
        error: t.error + p.error(),
    })
}

/// Panel error estimates never claim more than f64 can resolve.
fn roundoff_floor(value: f64) -> f64 {
    50.0 * f64::EPSILON * value.abs()
}

/// Simpson panel holding samples at a, a+h/4, a+h/2, a+3h/4, b.
struct SimpsonPanel {
    a: f64,
    b: f64,
    f: [f64; 5],
    value: f64,
    truncation: f64,
}

impl SimpsonPanel {
    fn new<E: FnMut(f64) -> Result<f64>>(eval: &mut E, a: f64, b: f64) -> Result<Self> {
        let h = b - a;
        let fa = eval(a)?;
        let f1 = eval(a + 0.25 * h)?;
        let fm = eval(a + 0.5 * h)?;
        let f3 = eval(a + 0.75 * h)?;
        let fb = eval(b)?;
        Ok(Self::from_samples(a, b, [fa, f1, fm, f3, fb]))
    }

    fn from_samples(a: f64, b: f64, f: [f64; 5]) -> Self {
        let h = b - a;
        let coarse = h / 6.0 * (f[0] + 4.0 * f[2] + f[4]);
        let fine = h / 12.0 * (f[0] + 4.0 * f[1] + 2.0 * f[2] + 4.0 * f[3] + f[4]);
        let diff = fine - coarse;
        Self { a, b, f, value: fine + diff / 15.0, truncation: diff.abs() / 15.0 }
    }
}

impl Panel for SimpsonPanel {
    fn bounds(&self) -> (f64, f64) {
        (self.a, self.b)
    }
    fn value(&self) -> f64 {
        self.value
    }
    fn truncation(&self) -> f64 {
        self.truncation
    }
    fn split<E: FnMut(f64) -> Result<f64>>(self, eval: &mut E) -> Result<(Self, Self)> {
        let m = 0.5 * (self.a + self.b);
        let q = 0.25 * (m - self.a);
        let [fa, f1, fm, f3, fb] = self.f;
        let l1 = eval(self.a + q)?;
        let l3 = eval(self.a + 3.0 * q)?;
        let r1 = eval(m + q)?;
        let r3 = eval(m + 3.0 * q)?;
        Ok((
            Self::from_samples(self.a, m, [fa, l1, f1, l3, fm]),
            Self::from_samples(m, self.b, [fm, r1, f3, r3, fb]),
        ))
    }
}

struct GaussPanel {
    a: f64,
    b: f64,
    whole: f64,
    halves: (f64, f64),
}

impl GaussPanel {
    fn new<E: FnMut(f64) -> Result<f64>>(eval: &mut E, a: f64, b: f64, whole: Option<f64>) -> Result<Self> {
        let whole = match whole {
            Some(w) => w,
            None => gauss_legendre(eval, a, b)?,
        };
        let m = 0.5 * (a + b);
        let halves = (gauss_legendre(eval, a, m)?, gauss_legendre(eval, m, b)?);
        Ok(Self { a, b, whole, halves })
    }
}

impl Panel for GaussPanel {
    fn bounds(&self) -> (f64, f64) {
        (self.a, self.b)
    }
    fn value(&self) -> f64 {
        self.halves.0 + self.halves.1
    }
    fn truncation(&self) -> f64 {
        (self.value() - self.whole).abs()
    }
    fn split<E: FnMut(f64) -> Result<f64>>(self, eval: &mut E) -> Result<(Self, Self)> {
        let m = 0.5 * (self.a + self.b);
        Ok((
            GaussPanel::new(eval, self.a, m, Some(self.halves.0))?,
            GaussPanel::new(eval, m, self.b, Some(self.halves.1))?,
        ))
    }
}

fn gauss_legendre<E: FnMut(f64) -> Result<f64>>(eval: &mut E, a: f64, b: f64) -> Result<f64> {
    let rule = gauss_legendre_rule();
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut sum = 0.0;
    for (&node, &weight) in rule.nodes.iter().zip(&rule.weights) {
        sum += weight * eval(c + h * node)?;
    }
    Ok(h * sum)
}

struct GaussRule {
    nodes: [f64; GAUSS_ORDER],
    weights: [f64; GAUSS_ORDER],
}

/// Nodes and weights on [−1, 1] by Newton iteration on P₃₂.
fn gauss_legendre_rule() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GAUSS_ORDER;
        let mut nodes = [0.0; GAUSS_ORDER];
        let mut weights = [0.0; GAUSS_ORDER];
        for i in 0..n / 2 {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussRule { nodes, weights }
    })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, e: f64) -> f64 {
        ((a - e) / e).abs()
    }

    #[test]
    fn gauss_rule_integrates_polynomials_exactly() {
        let rule = gauss_legendre_rule();
        let wsum: f64 = rule.weights.iter().sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        // Exact through degree 63.
        for deg in [2, 10, 30, 62] {
            let s: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(x, w)| w * x.powi(deg))
                .sum();
            assert!(rel(s, 2.0 / (deg as f64 + 1.0)) < 1e-13, "degree {deg}: {s}");
        }
    }

    #[test]
    fn bose_moments() {
        assert!(rel(bose_moment(3).unwrap(), PI.powi(4) / 15.0) < 1e-15);
        assert!(rel(bose_moment(3).unwrap(), 6.493_939_402_266_829) < 1e-15);
        assert!(rel(bose_moment(2).unwrap(), 2.404_113_806_319_188_5) < 1e-15);
        assert!(rel(bose_moment(4).unwrap(), 24.886_266_123_440_87) < 1e-15);
        assert!(matches!(bose_moment(1), Err(Error::Usage(_))));
        assert!(matches!(bose_moment(5), Err(Error::Usage(_))));
        assert!(scaled_bose_moment(3, 0.0).is_err());
        assert!(rel(scaled_bose_moment(3, 2.0).unwrap(), bose_moment(3).unwrap() / 16.0) < 1e-15);
    }

    #[test]
    fn polynomial_interval() {
        for method in Method::ALL {
            let spec = QuadratureSpec::default().with_method(method);
            let r = integrate_interval(|x| x * x, 0.0, 1.0, &spec).unwrap();
            assert!(rel(r.value, 1.0 / 3.0) < 1e-12, "{method:?}: {}", r.value);
        }
    }

    #[test]
    fn doppler_weighted_direction_integral() {
        // ∫₋₁¹ μ(1 + βμ)⁻⁴ dμ = −8β / (3(1 − β²)³)
        let beta: f64 = 0.5;
        let exact = -8.0 * beta / (3.0 * (1.0 - beta * beta).powi(3));
        assert!(rel(exact, -3.160_493_827_160_494) < 1e-15);
        for method in Method::ALL {
            let spec = QuadratureSpec::default().with_method(method);
            let r = integrate_interval(|mu| mu / (1.0 + beta * mu).powi(4), -1.0, 1.0, &spec).unwrap();
            assert!(rel(r.value, exact) < 1e-10, "{method:?}: {}", r.value);
        }
    }

    #[test]
    fn zero_integrand() {
        for method in Method::ALL {
            let spec = QuadratureSpec::default().with_method(method);
            let r = integrate_interval(|_| 0.0, -2.0, 5.0, &spec).unwrap();
            assert_eq!(r.value, 0.0);
            assert_eq!(r.error_estimate, 0.0);
        }
    }

    #[test]
    fn semi_infinite_bose_integrals() {
        type Integrand = fn(f64) -> f64;
        let cases: [(Integrand, f64); 3] = [
            (|x| if x == 0.0 { 0.0 } else { x.powi(3) / x.exp_m1() }, PI.powi(4) / 15.0),
            (|x| if x == 0.0 { 0.0 } else { x * x / x.exp_m1() }, 2.0 * ZETA_3),
            (|x| x.powi(3) * (-2.0 * x).exp(), 3.0 / 8.0),
        ];
        for method in Method::ALL {
            let spec = QuadratureSpec::default().with_method(method);
            for (i, (f, exact)) in cases.iter().enumerate() {
                let r = integrate_semi_infinite(f, &spec).unwrap();
                let err = (r.value - exact).abs();
                assert!(err / exact < 1e-10, "{method:?} case {i}: {}", r.value);
                assert!(err <= r.error_estimate.max(1e-15), "{method:?} case {i}: err {err:e} > est {:e}", r.error_estimate);
            }
        }
    }

    #[test]
    fn reported_error_bounds_true_error_on_finite_intervals() {
        let beta: f64 = 0.5;
        let exact = -8.0 * beta / (3.0 * (1.0 - beta * beta).powi(3));
        for method in Method::ALL {
            let spec = QuadratureSpec::default().with_method(method);
            let r = integrate_interval(|x| x * x, 0.0, 1.0, &spec).unwrap();
            assert!((r.value - 1.0 / 3.0).abs() <= r.error_estimate.max(1e-15));
            let r = integrate_interval(|mu| mu / (1.0 + beta * mu).powi(4), -1.0, 1.0, &spec).unwrap();
            assert!((r.value - exact).abs() <= r.error_estimate.max(1e-15), "{method:?}: err {:e} est {:e}", r.value - exact, r.error_estimate);
        }
    }

    #[test]
    fn deterministic() {
        for method in Method::ALL {
            let spec = QuadratureSpec::default().with_method(method);
            let f = |x: f64| (3.0 * x).sin() / (1.0 + x * x);
            let a = integrate_interval(f, -1.0, 4.0, &spec).unwrap();
            let b = integrate_interval(f, -1.0, 4.0, &spec).unwrap();
            assert_eq!(a.value.to_bits(), b.value.to_bits());
            assert_eq!(a.evaluations, b.evaluations);
        }
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let spec = QuadratureSpec::new(1e-15, 1e-300, 3, Method::AdaptiveSimpson).unwrap();
        let err = integrate_interval(|x| (1.0 / (x + 1e-3)).sin(), 0.0, 1.0, &spec).unwrap_err();
        match err {
            Error::Numerical { estimate, error_estimate, .. } => {
                assert!(estimate.is_finite());
                assert!(error_estimate > 0.0);
            }
            other => panic!("expected numerical failure, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        let spec = QuadratureSpec::default();
        assert!(matches!(integrate_interval(|x| x, 1.0, 1.0, &spec), Err(Error::Usage(_))));
        assert!(matches!(integrate_interval(|x| x, 2.0, 1.0, &spec), Err(Error::Usage(_))));
        assert!(QuadratureSpec::new(0.0, 1e-14, 10, Method::GaussLegendre).is_err());
        assert!(QuadratureSpec::new(1e-10, -1.0, 10, Method::GaussLegendre).is_err());
        assert!(QuadratureSpec::new(1e-10, 1e-14, 0, Method::GaussLegendre).is_err());
        assert!(matches!(
            integrate_interval(|x| 1.0 / x, 0.0, 1.0, &spec),
            Err(Error::Numerical { .. })
        ));
    }
}
