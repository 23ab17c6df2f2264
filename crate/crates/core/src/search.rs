//! Golden-section line search for the convex scalar minimizations used by
//! the norm-based channel-QFI route.

use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// Inverse golden ratio, the interval contraction factor per iteration.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Hard cap on golden-section iterations; reached only for absurd
/// bracket-to-tolerance ratios (the certification paths need about sixty).
const MAX_ITERATIONS: usize = 512;

/// Controls for [`minimize_convex`].
#[derive(Debug, Clone, PartialEq)]
pub struct LineSearch {
    /// Explicit bracket; `None` lets the caller derive one from the problem.
    pub bracket: Option<(f64, f64)>,
    /// Convergence width on the minimizer.
    pub x_tol: f64,
    /// Default bracket half-width as a multiple of the problem's scale.
    pub bracket_scale: f64,
    /// Bracket doublings to attempt before giving up.
    pub max_widenings: usize,
}

impl LineSearch {
    pub fn from_tolerances(tol: &Tolerances) -> Self {
        Self {
            bracket: None,
            x_tol: tol.search_x_tol,
            bracket_scale: tol.bracket_scale,
            max_widenings: 3,
        }
    }
}

impl Default for LineSearch {
    fn default() -> Self {
        Self::from_tolerances(&Tolerances::default())
    }
}

/// Golden-section minimization of a unimodal `f` on `[a, b]`, shrinking the
/// interval to width `x_tol`. Returns the best evaluated `(x, f(x))`.
pub fn golden_section_min(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64, x_tol: f64) -> (f64, f64) {
    assert!(a <= b, "bracket must be ordered");
    assert!(x_tol > 0.0, "x_tol must be positive");
    let (mut a, mut b) = (a, b);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    let mut iterations = 0;
    while b - a > x_tol && iterations < MAX_ITERATIONS {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        let cand = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
        if cand.1 < best.1 {
            best = cand;
        }
        iterations += 1;
    }
    let mid = 0.5 * (a + b);
    let fmid = f(mid);
    if fmid < best.1 {
        best = (mid, fmid);
    }
    best
}

/// Minimizes a convex `f` over a bracket, widening the bracket (doubling per
/// attempt, up to `max_widenings`) whenever `f` is still decreasing toward an
/// endpoint, which signals the minimum lies outside.
pub fn minimize_convex(
    mut f: impl FnMut(f64) -> f64,
    bracket: (f64, f64),
    x_tol: f64,
    max_widenings: usize,
) -> Result<(f64, f64)> {
    let (mut a, mut b) = bracket;
    assert!(a < b, "bracket must have positive width");
    let mut attempts = 0;
    loop {
        let h = 1e-3 * (b - a);
        let escapes_left = f(a) < f(a + h);
        let escapes_right = f(b) < f(b - h);
        if !escapes_left && !escapes_right {
            return Ok(golden_section_min(&mut f, a, b, x_tol));
        }
        if attempts >= max_widenings {
            return Err(Error::BracketFailure { attempts });
        }
        let width = b - a;
        if escapes_left {
            a -= width;
        }
        if escapes_right {
            b += width;
        }
        attempts += 1;
    }
}
