//! Special functions needed by the closed forms: Γ, ζ, the Hurwitz ζ and the
//! solid angle of a sphere.

use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Spacetime dimension `D ≥ 3`; the number of spatial dimensions is `d = D − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimensionD(u32);

impl DimensionD {
    pub fn new(dim: u32) -> Result<Self> {
        if dim < 3 {
            return domain(format!("spacetime dimension must be >= 3, got {dim}"));
        }
        Ok(DimensionD(dim))
    }

    /// Spacetime dimension `D`.
    pub fn get(self) -> u32 {
        self.0
    }

    /// Spatial dimension `d = D − 1`.
    pub fn spatial(self) -> u32 {
        self.0 - 1
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }
}

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_gamma(x: f64) -> f64 {
    // valid for x >= 0.5
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Γ(x) for real `x > 0`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("gamma_fn needs x > 0, got {x}"));
    }
    if x < 0.5 {
        // Γ(x) = Γ(x+1)/x keeps the Lanczos sum in its accurate range
        return Ok(lanczos_gamma(x + 1.0) / x);
    }
    Ok(lanczos_gamma(x))
}

/// Riemann ζ(s) for real `s > 1`.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return domain(format!("riemann_zeta needs s > 1, got {s}"));
    }
    hurwitz_zeta(s, 1.0)
}

/// Hurwitz ζ(s, q) = Σ_{k≥0} (k+q)^{−s} for `s > 1`, `q > 0`.
///
/// Direct partial sum up to `N`, then the Euler–Maclaurin tail
/// `(N+q)^{1−s}/(s−1) + (N+q)^{−s}/2` with the B₂ and B₄ corrections.
/// `N` grows until the first dropped (B₆) correction is below 1e-16 of the
/// result.
pub fn hurwitz_zeta(s: f64, q: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return domain(format!("hurwitz_zeta needs s > 1, got {s}"));
    }
    if !(q > 0.0) || !q.is_finite() {
        return domain(format!("hurwitz_zeta needs q > 0, got {q}"));
    }

    // B₆/6! · s(s+1)…(s+4) · (N+q)^{−s−5} must be tiny relative to the sum,
    // which is at least q^{−s}.
    let poch5 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0);
    let lead = q.powf(-s);
    let mut n: u32 = 8;
    loop {
        let x = n as f64 + q;
        let dropped = poch5 / 30_240.0 * x.powf(-s - 5.0);
        if dropped <= 1e-16 * lead.max(x.powf(1.0 - s) / (s - 1.0)) || n >= 1 << 20 {
            break;
        }
        n *= 2;
    }

    let mut head = 0.0;
    // smallest terms first
    for k in (0..n).rev() {
        head += (k as f64 + q).powf(-s);
    }
    let x = n as f64 + q;
    let tail = x.powf(1.0 - s) / (s - 1.0)
        + 0.5 * x.powf(-s)
        + s / 12.0 * x.powf(-s - 1.0)
        - s * (s + 1.0) * (s + 2.0) / 720.0 * x.powf(-s - 3.0);
    Ok(head + tail)
}

/// Solid angle Ω_{d−1} = 2π^{d/2}/Γ(d/2) of the unit sphere in `d` dimensions.
pub fn solid_angle(d: u32) -> Result<f64> {
    if d < 1 {
        return domain("solid_angle needs d >= 1");
    }
    let half = d as f64 / 2.0;
    Ok(2.0 * PI.powf(half) / gamma_fn(half)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_values() {
        assert!(rel(gamma_fn(2.0).unwrap(), 1.0) < 1e-13);
        assert!(rel(gamma_fn(0.5).unwrap(), PI.sqrt()) < 1e-13);
        assert!(rel(gamma_fn(2.5).unwrap(), 0.75 * PI.sqrt()) < 1e-13);
        assert!((gamma_fn(2.5).unwrap() - 1.3293404).abs() < 1e-7);
        // Γ(n) = (n−1)! across the contract range
        let mut fact = 1.0;
        for n in 1..30u32 {
            if n > 1 {
                fact *= (n - 1) as f64;
            }
            assert!(rel(gamma_fn(n as f64).unwrap(), fact) < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn gamma_recurrence() {
        for x in [0.5, 1.5, 2.5, 3.7, 0.01, 17.3] {
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert!(rel(lhs, rhs) < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn gamma_domain() {
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-1.5).is_err());
    }

    #[test]
    fn zeta_values() {
        assert!(rel(riemann_zeta(4.0).unwrap(), PI.powi(4) / 90.0) < 1e-14);
        assert!(rel(riemann_zeta(2.0).unwrap(), PI * PI / 6.0) < 1e-14);
        assert!(rel(riemann_zeta(8.0).unwrap(), PI.powi(8) / 9450.0) < 1e-14);
        assert!(riemann_zeta(1.0).is_err());
    }

    #[test]
    fn zeta_three_against_direct_sum() {
        // oracle: direct sum to 10⁶ with the midpoint integral tail
        let n = 1_000_000u64;
        let head: f64 = (1..=n).rev().map(|k| (k as f64).powi(-3)).sum();
        let oracle = head + 0.5 / (n as f64 + 0.5).powi(2);
        let z = riemann_zeta(3.0).unwrap();
        assert!(rel(z, oracle) < 1e-13);
        assert!((z - 1.2020569).abs() < 1e-7);
    }

    #[test]
    fn hurwitz_values() {
        let z4 = riemann_zeta(4.0).unwrap();
        assert!(rel(hurwitz_zeta(4.0, 1.0).unwrap(), z4) < 1e-14);
        assert!(rel(hurwitz_zeta(4.0, 0.5).unwrap(), 15.0 * z4) < 1e-13);
        assert!((hurwitz_zeta(4.0, 0.5).unwrap() - 16.2348485).abs() < 1e-7);
    }

    #[test]
    fn hurwitz_against_brute_force() {
        // 10⁶ terms plus the integral tail ∫_{N−1/2}^∞ (x+q)^{−5} dx
        let (s, q) = (5.0, 0.25);
        let n = 1_000_000u64;
        let head: f64 = (0..n).rev().map(|k| (k as f64 + q).powf(-s)).sum();
        let oracle = head + (n as f64 - 0.5 + q).powf(1.0 - s) / (s - 1.0);
        let h = hurwitz_zeta(s, q).unwrap();
        assert!(rel(h, oracle) < 1e-12);
        assert!((h - 1024.348975).abs() < 1e-6);
    }

    #[test]
    fn hurwitz_shift_identity() {
        for &(s, q) in &[(5.0, 0.3), (1.5, 0.7), (8.0, 2.2), (6.0, 0.5)] {
            let lhs = hurwitz_zeta(s, q).unwrap() - q.powf(-s);
            let rhs = hurwitz_zeta(s, q + 1.0).unwrap();
            assert!(rel(lhs, rhs) < 1e-12, "s={s} q={q}");
        }
    }

    #[test]
    fn hurwitz_reflection_pair_symmetric() {
        let f = |q: f64| hurwitz_zeta(6.0, q).unwrap() + hurwitz_zeta(6.0, 1.0 - q).unwrap();
        assert!(rel(f(0.3), f(0.7)) < 1e-14);
    }

    #[test]
    fn hurwitz_leading_divergence() {
        let (s, q) = (5.0_f64, 1e-4_f64);
        let scaled = q.powf(s) * hurwitz_zeta(s, q).unwrap();
        assert!((scaled - 1.0).abs() < 1e-3);
    }

    #[test]
    fn hurwitz_domain() {
        assert!(hurwitz_zeta(1.0, 0.5).is_err());
        assert!(hurwitz_zeta(3.0, 0.0).is_err());
    }

    #[test]
    fn solid_angles() {
        assert!(rel(solid_angle(2).unwrap(), 2.0 * PI) < 1e-14);
        assert!(rel(solid_angle(3).unwrap(), 4.0 * PI) < 1e-14);
        assert!(rel(solid_angle(4).unwrap(), 2.0 * PI * PI) < 1e-14);
        assert!((solid_angle(4).unwrap() - 19.739209).abs() < 1e-6);
        assert!(rel(solid_angle(1).unwrap(), 2.0) < 1e-14);
        assert!(solid_angle(0).is_err());
    }

    #[test]
    fn dimension_newtype() {
        assert!(DimensionD::new(2).is_err());
        let d = DimensionD::new(6).unwrap();
        assert_eq!(d.spatial(), 5);
    }
}
