//! Adaptive Gauss–Kronrod quadrature on finite intervals, the half-line and
//! the positive quadrant.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::summation::NeumaierSum;

/// Kronrod abscissae on [0, 1]; odd indices are the 10-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208745777681,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

/// Tolerances and subdivision budget for adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self { rel_tol: 1e-8, abs_tol: 1e-12, max_subdivisions: 2000 }
    }
}

impl QuadSpec {
    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= 0.0 && self.abs_tol >= 0.0) || (self.rel_tol == 0.0 && self.abs_tol == 0.0) {
            return Err(Error::invalid("quad_spec", "tolerances must be non-negative and not both zero"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::invalid("max_subdivisions", "must be at least 1"));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Panel> {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs_k = kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_k += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    if !kronrod.is_finite() {
        return Err(Error::Domain(format!("integrand is not finite on [{a}, {b}]")));
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let abs_k = abs_k * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    if abs_k > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs_k);
    }
    Ok(Panel { a, b, value, error })
}

/// Adaptive integral of `f` over `[a, b]`.
pub fn integrate_interval<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<QuadResult> {
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::invalid("interval", "endpoints must be finite"));
    }
    if a == b {
        return Ok(QuadResult { value: 0.0, error: 0.0, subdivisions: 0 });
    }
    let first = gauss_kronrod(&mut f, a, b)?;
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    let mut value = first.value;
    let mut error = first.error;
    heap.push(first);
    let mut subdivisions = 1;

    loop {
        if error <= spec.target(value) {
            break;
        }
        if subdivisions >= spec.max_subdivisions {
            let (v, e) = totals(&heap, &frozen);
            if e <= spec.target(v) {
                break;
            }
            return Err(Error::NoConvergence { estimate: v, error: e, subdivisions });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            frozen.push(worst);
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let left = gauss_kronrod(&mut f, worst.a, mid)?;
        let right = gauss_kronrod(&mut f, mid, worst.b)?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
        if subdivisions % 64 == 0 {
            (value, error) = totals(&heap, &frozen);
        }
    }

    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: NeumaierSum = panels.iter().map(|p| p.value).collect();
    let error: NeumaierSum = panels.iter().map(|p| p.error).collect();
    Ok(QuadResult { value: value.value(), error: error.value(), subdivisions })
}

fn totals(heap: &BinaryHeap<Panel>, frozen: &[Panel]) -> (f64, f64) {
    let mut v = NeumaierSum::new();
    let mut e = NeumaierSum::new();
    for p in heap.iter().chain(frozen) {
        v.add(p.value);
        e.add(p.error);
    }
    (v.value(), e.value())
}

/// `∫₀^∞ f(x) dx` through the map `x = t/(1-t)`.
pub fn integrate_half_line<F: FnMut(f64) -> f64>(mut f: F, spec: &QuadSpec) -> Result<QuadResult> {
    integrate_interval(
        |t| {
            let s = 1.0 - t;
            let v = f(t / s);
            if v == 0.0 {
                0.0
            } else {
                v / (s * s)
            }
        },
        0.0,
        1.0,
        spec,
    )
}

/// `∫₀^∞∫₀^∞ f(x, y) dx dy` by nested adaptive integration; the inner
/// integral is over `x`.
pub fn integrate_quadrant<F: FnMut(f64, f64) -> f64>(mut f: F, spec: &QuadSpec) -> Result<QuadResult> {
    spec.validate()?;
    let inner_spec = QuadSpec { rel_tol: spec.rel_tol * 0.1, abs_tol: spec.abs_tol * 0.1, ..*spec };
    let inner_failure: RefCell<Option<Error>> = RefCell::new(None);
    let inner_error = RefCell::new(0.0f64);
    let outer = integrate_half_line(
        |y| {
            if inner_failure.borrow().is_some() {
                return 0.0;
            }
            match integrate_half_line(|x| f(x, y), &inner_spec) {
                Ok(r) => {
                    let mut e = inner_error.borrow_mut();
                    *e = e.max(r.error / r.value.abs().max(f64::MIN_POSITIVE));
                    r.value
                }
                Err(err) => {
                    *inner_failure.borrow_mut() = Some(err);
                    0.0
                }
            }
        },
        spec,
    );
    if let Some(err) = inner_failure.into_inner() {
        return Err(err);
    }
    let outer = outer?;
    let inner_rel = inner_error.into_inner().min(1.0);
    Ok(QuadResult { error: outer.error + inner_rel * outer.value.abs(), ..outer })
}
