/// Central difference `(f(x+h) − f(x−h)) / 2h`.
pub fn finite_diff<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Richardson-extrapolated central difference from steps `h` and `h/2`;
/// the O(h²) error term cancels, leaving O(h⁴).
pub fn finite_diff_richardson<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let coarse = finite_diff(&f, x, h);
    let fine = finite_diff(&f, x, 0.5 * h);
    (4.0 * fine - coarse) / 3.0
}

/// Richardson-extrapolated central difference of a fallible function.
/// Returns the extrapolated derivative and `|D(h/2) − D_R|` as an error
/// estimate.
pub fn try_finite_diff_richardson<F, E>(mut f: F, x: f64, h: f64) -> Result<(f64, f64), E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let coarse = (f(x + h)? - f(x - h)?) / (2.0 * h);
    let half = 0.5 * h;
    let fine = (f(x + half)? - f(x - half)?) / h;
    let extrapolated = (4.0 * fine - coarse) / 3.0;
    Ok((extrapolated, (fine - extrapolated).abs()))
}

/// Step `|x|·eps^{1/3}`, balancing truncation against rounding.
pub fn default_step(x: f64) -> f64 {
    let h = x.abs() * f64::EPSILON.cbrt();
    if h > 0.0 {
        h
    } else {
        f64::EPSILON.cbrt()
    }
}
