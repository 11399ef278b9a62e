use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// Width of the final sign-change bracket.
    pub bracket: f64,
    pub evaluations: usize,
}

/// Bracketed root of `f` on `[lo, hi]`: bisection safeguarding
/// Illinois-modified secant steps.
///
/// Stops once the bracket is narrower than `xtol` or after `max_evals`
/// function evaluations, whichever comes first. A function error aborts the
/// search.
pub fn find_root<F>(mut f: F, lo: f64, hi: f64, xtol: f64, max_evals: usize) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    let mut evals = 2;
    if fa == 0.0 {
        return Ok(Root { x: a, bracket: 0.0, evaluations: evals });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, bracket: 0.0, evaluations: evals });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo, hi, f_lo: fa, f_hi: fb });
    }

    // Which side kept its endpoint on the previous step (for the Illinois halving).
    let mut retained: i8 = 0;
    let mut best = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };

    while evals < max_evals && (b - a).abs() > xtol {
        let width = (b - a).abs();
        let secant = b - fb * (b - a) / (fb - fa);
        let mid = 0.5 * (a + b);
        // Secant must land strictly inside and away from the edges; otherwise bisect.
        let margin = 0.01 * width;
        let x = if secant.is_finite()
            && secant > a.min(b) + margin
            && secant < a.max(b) - margin
        {
            secant
        } else {
            mid
        };

        let fx = f(x)?;
        evals += 1;
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx == 0.0 {
            return Ok(Root { x, bracket: 0.0, evaluations: evals });
        }

        if fx.signum() == fb.signum() {
            b = x;
            fb = fx;
            if retained == -1 {
                fa *= 0.5;
            }
            retained = -1;
        } else {
            a = x;
            fa = fx;
            if retained == 1 {
                fb *= 0.5;
            }
            retained = 1;
        }

        // Force progress if the secant keeps nibbling at one side.
        if (b - a).abs() > 0.5 * width {
            let mid = 0.5 * (a + b);
            let fm = f(mid)?;
            evals += 1;
            if fm.abs() < best.1.abs() {
                best = (mid, fm);
            }
            if fm == 0.0 {
                return Ok(Root { x: mid, bracket: 0.0, evaluations: evals });
            }
            if fm.signum() == fb.signum() {
                b = mid;
                fb = fm;
            } else {
                a = mid;
                fa = fm;
            }
            retained = 0;
        }
    }

    Ok(Root {
        x: best.0,
        bracket: (b - a).abs(),
        evaluations: evals,
    })
}
