//! Probability bounds and threshold windows for `N[G(n, p)]`.
//!
//! The two bounds are evaluated in log space, with exact rational versions
//! for small inputs. Windows carry exact rational endpoints whenever the
//! inputs allow it.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{density, is_strictly_balanced, Graph};

const ASYMPTOTIC_NOTE: &str =
    "asymptotic statement: at finite n the window is indicative, not a guarantee";

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::argument(format!("p = {p} is outside [0, 1]")));
    }
    Ok(())
}

fn check_index(name: &str, i: u64, n: u64) -> Result<()> {
    if i < 1 || i > n {
        return Err(Error::argument(format!("{name} = {i} must lie in 1..={n}")));
    }
    Ok(())
}

/// `ln C(n, k)` as a sum of logarithms of the ratios `(n - j + 1) / j`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (1..=k)
        .map(|j| ((n - k + j) as f64 / j as f64).ln())
        .sum()
}

fn binomial_exact(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 1..=k {
        acc = acc * BigInt::from(n - k + j) / BigInt::from(j);
    }
    acc
}

/// `log10` of `C(n, i) (1 - p^i)^(n - i)`; `-inf` when the value is zero.
pub fn theorem1_log10(n: u64, i: u64, p: f64) -> Result<f64> {
    check_index("i", i, n)?;
    check_p(p)?;
    let tail = if n == i {
        0.0
    } else {
        (n - i) as f64 * (-p.powi(i as i32)).ln_1p()
    };
    Ok((ln_binomial(n, i) + tail) / std::f64::consts::LN_10)
}

/// `C(n, i) (1 - p^i)^(n - i)`. Small values mean `N[G(n, p)]` is likely
/// `i`-neighborly.
pub fn theorem1_bound(n: u64, i: u64, p: f64) -> Result<f64> {
    Ok(10f64.powf(theorem1_log10(n, i, p)?))
}

/// Exact value of the first bound at the binary value of `p`.
pub fn theorem1_bound_exact(n: u64, i: u64, p: &BigRational) -> Result<BigRational> {
    check_index("i", i, n)?;
    check_exact_p(p)?;
    let base = BigRational::one() - Pow::pow(p, i as u32);
    Ok(BigRational::from(binomial_exact(n, i)) * Pow::pow(&base, (n - i) as u32))
}

/// `log10` of `C(n, j) C(n, k) p^(jk)`.
pub fn theorem2_log10(n: u64, j: u64, k: u64, p: f64) -> Result<f64> {
    check_index("j", j, n)?;
    check_index("k", k, n)?;
    check_p(p)?;
    let ln = ln_binomial(n, j) + ln_binomial(n, k) + (j * k) as f64 * p.ln();
    Ok(ln / std::f64::consts::LN_10)
}

/// `C(n, j) C(n, k) p^(jk)`. Small values mean the Lovász retract likely has
/// dimension at most `j + k - 3`.
pub fn theorem2_bound(n: u64, j: u64, k: u64, p: f64) -> Result<f64> {
    Ok(10f64.powf(theorem2_log10(n, j, k, p)?))
}

pub fn theorem2_bound_exact(n: u64, j: u64, k: u64, p: &BigRational) -> Result<BigRational> {
    check_index("j", j, n)?;
    check_index("k", k, n)?;
    check_exact_p(p)?;
    let c = binomial_exact(n, j) * binomial_exact(n, k);
    Ok(BigRational::from(c) * Pow::pow(p, (j * k) as u32))
}

fn check_exact_p(p: &BigRational) -> Result<()> {
    if p.is_negative() || *p > BigRational::one() {
        return Err(Error::argument(format!("p = {p} is outside [0, 1]")));
    }
    Ok(())
}

/// The exact rational value of a finite float.
pub fn exact_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::argument(format!("{x} is not finite")))
}

/// Exponent threshold from the second bound at `p = n^α`: the bound tends to
/// zero when `α < -(j + k) / (jk)`.
pub fn theorem2_alpha_threshold(j: u64, k: u64) -> Result<Ratio<i64>> {
    if j == 0 || k == 0 {
        return Err(Error::argument("j and k must be positive"));
    }
    Ok(-Ratio::new((j + k) as i64, (j * k) as i64))
}

/// `n p^(k+2)`, bounding the chance that a fixed `K_{k+2}` extends to a
/// `K_{k+3}`.
pub fn extension_bound(n: u64, p: f64, k: u64) -> Result<f64> {
    check_p(p)?;
    Ok(n as f64 * p.powi(k as i32 + 2))
}

/// `-1/λ` for a strictly balanced graph of density `λ`: `G(n, n^α)`
/// contains a copy exactly above this exponent.
pub fn sharp_threshold_alpha(g: &Graph, caps: &Caps) -> Result<Ratio<i64>> {
    let lambda = density(g)?;
    if lambda.is_zero() {
        return Err(Error::domain("graph has no edges, so no threshold exists"));
    }
    if !is_strictly_balanced(g, caps)? {
        return Err(Error::domain(
            "graph is not strictly balanced; the threshold theorem does not apply",
        ));
    }
    Ok(-lambda.recip())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    Cor1Vanishing,
    Cor2Alpha,
    Cor3Nonvanishing,
    Cor4Alpha,
}

/// Inputs of a window, echoed as given.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct WindowParameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowReport {
    pub kind: WindowKind,
    pub parameters: WindowParameters,
    pub lower: f64,
    pub upper: f64,
    /// Exact endpoints as `a/b` strings, when available.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_lower: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_upper: Option<String>,
    pub precision: String,
    /// Lower end of the clique-order range used in the non-vanishing
    /// argument, `(1 + ε) log2 n`, where it differs from `lower`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proof_lower: Option<f64>,
    pub notes: Vec<String>,
}

impl WindowReport {
    pub fn is_empty(&self) -> bool {
        self.lower >= self.upper
    }
}

fn ratio_string(r: &Ratio<i64>) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ratio_f64(r: &Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn exact_report(
    kind: WindowKind,
    parameters: WindowParameters,
    lower: Ratio<i64>,
    upper: Ratio<i64>,
    notes: Vec<String>,
) -> WindowReport {
    WindowReport {
        kind,
        parameters,
        lower: ratio_f64(&lower),
        upper: ratio_f64(&upper),
        exact_lower: Some(ratio_string(&lower)),
        exact_upper: Some(ratio_string(&upper)),
        precision: "exact".into(),
        proof_lower: None,
        notes,
    }
}

/// `log2 n` when it is an integer.
fn exact_log2(n: u64) -> Option<i64> {
    n.is_power_of_two().then(|| n.trailing_zeros() as i64)
}

/// A small-denominator rational equal to `eps` as printed, if one exists.
fn eps_ratio(eps: f64) -> Option<Ratio<i64>> {
    let r = Ratio::<i64>::approximate_float(eps)?;
    (*r.denom() <= 1_000_000 && ratio_f64(&r) == eps).then_some(r)
}

fn check_eps(eps: f64) -> Result<()> {
    if !eps.is_finite() || eps < 0.0 {
        return Err(Error::argument(format!("eps = {eps} must be a nonnegative number")));
    }
    Ok(())
}

/// At `p = 1/2`, `H̃_l` vanishes for `l` below `(1 - ε) log2 n` and above
/// `(4 + ε) log2 n`.
pub fn cor1_window(n: u64, eps: f64) -> Result<WindowReport> {
    if n < 2 {
        return Err(Error::argument("cor1 window needs n >= 2"));
    }
    check_eps(eps)?;
    let mut notes = vec![
        "homology predicted zero below lower and above upper".to_string(),
        ASYMPTOTIC_NOTE.to_string(),
    ];
    if eps == 0.0 {
        notes.push("eps = 0 is the limiting case".into());
    }
    let parameters = WindowParameters {
        n: Some(n),
        eps: Some(eps),
        ..Default::default()
    };
    if let (Some(t), Some(e)) = (exact_log2(n), eps_ratio(eps)) {
        let t = Ratio::from_integer(t);
        return Ok(exact_report(
            WindowKind::Cor1Vanishing,
            parameters,
            (Ratio::one() - e) * t,
            (Ratio::from_integer(4) + e) * t,
            notes,
        ));
    }
    let l2 = (n as f64).log2();
    Ok(WindowReport {
        kind: WindowKind::Cor1Vanishing,
        parameters,
        lower: (1.0 - eps) * l2,
        upper: (4.0 + eps) * l2,
        exact_lower: None,
        exact_upper: None,
        precision: "f64".into(),
        proof_lower: None,
        notes,
    })
}

/// Thresholds on `α` (with `p = n^α`) beyond which `H̃_l` vanishes: above
/// `upper = -1/(l+2)`, or below `lower`, whose form depends on the parity of
/// `l`.
pub fn cor2_alpha_bounds(l: u64) -> WindowReport {
    let l = l as i64;
    let upper = Ratio::new(-1, l + 2);
    let (lower, parity) = if l % 2 == 0 {
        (Ratio::new(-4, l + 2), "even l: lower = -4/(l+2)")
    } else {
        (
            Ratio::new(-4 * (l + 2), (l + 1) * (l + 3)),
            "odd l: lower = -4(l+2)/((l+1)(l+3))",
        )
    };
    exact_report(
        WindowKind::Cor2Alpha,
        WindowParameters {
            l: Some(l as u64),
            ..Default::default()
        },
        lower,
        upper,
        vec![
            parity.into(),
            "homology predicted zero for alpha above upper or below lower".into(),
            ASYMPTOTIC_NOTE.into(),
        ],
    )
}

/// At `p = 1/2`, `H̃_k` is nonzero for `(4/3 + ε) log2 n < k < (2 - ε) log2 n`.
pub fn cor3_window(n: u64, eps: f64) -> Result<WindowReport> {
    if n < 2 {
        return Err(Error::argument("cor3 window needs n >= 2"));
    }
    check_eps(eps)?;
    if eps >= 1.0 / 3.0 {
        return Err(Error::argument(format!(
            "eps = {eps} >= 1/3 makes 4/3 + eps >= 2 - eps, so the window is empty"
        )));
    }
    let mut notes = vec![
        "homology predicted nonzero for k strictly inside the window".to_string(),
        "proof_lower is the start of the clique-order range, (1 + eps) log2 n".to_string(),
        ASYMPTOTIC_NOTE.to_string(),
    ];
    if eps == 0.0 {
        notes.push("eps = 0 is the limiting case".into());
    }
    let parameters = WindowParameters {
        n: Some(n),
        eps: Some(eps),
        ..Default::default()
    };
    let l2 = (n as f64).log2();
    let proof_lower = Some((1.0 + eps) * l2);
    if let (Some(t), Some(e)) = (exact_log2(n), eps_ratio(eps)) {
        let t = Ratio::from_integer(t);
        let mut r = exact_report(
            WindowKind::Cor3Nonvanishing,
            parameters,
            (Ratio::new(4, 3) + e) * t,
            (Ratio::from_integer(2) - e) * t,
            notes,
        );
        r.proof_lower = proof_lower;
        return Ok(r);
    }
    Ok(WindowReport {
        kind: WindowKind::Cor3Nonvanishing,
        parameters,
        lower: (4.0 / 3.0 + eps) * l2,
        upper: (2.0 - eps) * l2,
        exact_lower: None,
        exact_upper: None,
        precision: "f64".into(),
        proof_lower,
        notes,
    })
}

/// The `α`-window `(-2/(k+1), -4/(3(k+1)))` where `H̃_k` is nonzero.
pub fn cor4_alpha_window(k: u64) -> Result<WindowReport> {
    if k < 1 {
        return Err(Error::argument("cor4 window needs k >= 1"));
    }
    let k1 = k as i64 + 1;
    Ok(exact_report(
        WindowKind::Cor4Alpha,
        WindowParameters {
            k: Some(k),
            ..Default::default()
        },
        Ratio::new(-2, k1),
        Ratio::new(-4, 3 * k1),
        vec![
            "lower is the threshold for K_{k+2}, upper the threshold for X_{k+2}".into(),
            ASYMPTOTIC_NOTE.into(),
        ],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_named_graph, Family};

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn theorem1_examples() {
        assert_eq!(theorem1_bound(7, 7, 0.3).unwrap(), 1.0);
        assert_eq!(theorem1_bound(7, 3, 1.0).unwrap(), 0.0);
        assert!(close(theorem1_bound(4, 1, 0.5).unwrap(), 0.5, 1e-14));
        let exact = theorem1_bound_exact(4, 1, &exact_from_f64(0.5).unwrap()).unwrap();
        assert_eq!(exact, BigRational::new(1.into(), 2.into()));
        assert!(theorem1_bound(4, 0, 0.5).is_err());
        assert!(theorem1_bound(4, 5, 0.5).is_err());
        assert!(theorem1_bound(4, 2, 1.5).is_err());
    }

    #[test]
    fn theorem2_examples() {
        assert_eq!(theorem2_bound(9, 2, 3, 0.0).unwrap(), 0.0);
        assert!(close(theorem2_bound(3, 1, 1, 0.5).unwrap(), 4.5, 1e-14));
        assert!(close(theorem2_bound(10, 3, 4, 1.0).unwrap(), 120.0 * 210.0, 1e-13));
    }

    #[test]
    fn log_space_matches_exact() {
        for n in [5u64, 17, 40] {
            for p in [0.1, 0.5, 0.73] {
                let pe = exact_from_f64(p).unwrap();
                for i in 1..=n {
                    let exact = theorem1_bound_exact(n, i, &pe).unwrap();
                    let e: f64 = num_traits::ToPrimitive::to_f64(&exact).unwrap();
                    assert!(close(theorem1_bound(n, i, p).unwrap(), e, 1e-12), "{n} {i} {p}");
                }
                for j in 1..=4 {
                    let exact = theorem2_bound_exact(n, j, j + 1, &pe).unwrap();
                    let e: f64 = num_traits::ToPrimitive::to_f64(&exact).unwrap();
                    assert!(close(theorem2_bound(n, j, j + 1, p).unwrap(), e, 1e-12));
                }
            }
        }
    }

    #[test]
    fn cor1_examples() {
        let r = cor1_window(1024, 0.0).unwrap();
        assert_eq!((r.lower, r.upper), (10.0, 40.0));
        assert_eq!(r.precision, "exact");
        let r = cor1_window(2, 0.25).unwrap();
        assert_eq!(r.exact_lower.as_deref(), Some("3/4"));
        assert_eq!(r.exact_upper.as_deref(), Some("17/4"));
        let r = cor1_window(1_000_000, 0.1).unwrap();
        assert!((r.lower - 17.938411712391756).abs() < 1e-12);
        assert!((r.upper - 81.71943113422911).abs() < 1e-12);
        assert!(r.notes.iter().any(|s| s.contains("asymptotic")));
    }

    #[test]
    fn cor2_examples() {
        let r = cor2_alpha_bounds(0);
        assert_eq!(r.exact_upper.as_deref(), Some("-1/2"));
        assert_eq!(r.exact_lower.as_deref(), Some("-2"));
        let r = cor2_alpha_bounds(1);
        assert_eq!(r.exact_upper.as_deref(), Some("-1/3"));
        assert_eq!(r.exact_lower.as_deref(), Some("-3/2"));
        assert!(r.notes[0].starts_with("odd"));
        let r = cor2_alpha_bounds(2);
        assert_eq!(r.exact_lower.as_deref(), Some("-1"));
    }

    #[test]
    fn cor2_follows_from_theorem2() {
        for l in 0..30u64 {
            let (j, k) = if l % 2 == 0 {
                ((l + 2) / 2, (l + 2) / 2)
            } else {
                ((l + 1) / 2, (l + 3) / 2)
            };
            let t = theorem2_alpha_threshold(j, k).unwrap();
            assert_eq!(cor2_alpha_bounds(l).exact_lower, Some(ratio_string(&t)));
        }
    }

    #[test]
    fn cor3_examples() {
        let r = cor3_window(4096, 0.0).unwrap();
        assert_eq!((r.lower, r.upper), (16.0, 24.0));
        assert_eq!(r.proof_lower, Some(12.0));
        let r = cor3_window(1 << 30, 0.1).unwrap();
        assert_eq!(r.exact_lower.as_deref(), Some("43"));
        assert_eq!(r.exact_upper.as_deref(), Some("57"));
        assert!(cor3_window(1024, 0.4).is_err());
        assert!(cor3_window(1024, 1.0 / 3.0).is_err());
    }

    #[test]
    fn cor4_matches_density_thresholds() {
        let caps = Caps {
            balance_vertices: 16,
            ..Caps::default()
        };
        let r = cor4_alpha_window(1).unwrap();
        assert_eq!((r.exact_lower.as_deref(), r.exact_upper.as_deref()), (Some("-1"), Some("-2/3")));
        assert_eq!(cor4_alpha_window(2).unwrap().exact_upper.as_deref(), Some("-4/9"));
        assert_eq!(cor4_alpha_window(5).unwrap().exact_lower.as_deref(), Some("-1/3"));
        for k in 1..=6u64 {
            let w = cor4_alpha_window(k).unwrap();
            let kk = make_named_graph(Family::Complete, &[k as usize + 2]).unwrap();
            let xx = make_named_graph(Family::XN, &[k as usize + 2]).unwrap();
            let a = sharp_threshold_alpha(&kk, &caps).unwrap();
            assert_eq!(w.exact_lower, Some(ratio_string(&a)));
            let b = sharp_threshold_alpha(&xx, &caps).unwrap();
            assert_eq!(w.exact_upper, Some(ratio_string(&b)), "k = {k}");
        }
    }

    #[test]
    fn thresholds_and_extension() {
        let caps = Caps::default();
        let k5 = make_named_graph(Family::Complete, &[5]).unwrap();
        assert_eq!(sharp_threshold_alpha(&k5, &caps).unwrap(), Ratio::new(-1, 2));
        let x3 = make_named_graph(Family::XN, &[3]).unwrap();
        assert_eq!(sharp_threshold_alpha(&x3, &caps).unwrap(), Ratio::new(-2, 3));
        let k3 = make_named_graph(Family::Complete, &[3]).unwrap();
        assert!(matches!(
            sharp_threshold_alpha(&k3.disjoint_union(&k3), &caps),
            Err(Error::Domain(_))
        ));
        assert_eq!(extension_bound(16, 0.5, 2).unwrap(), 1.0);
        assert_eq!(extension_bound(9, 0.0, 3).unwrap(), 0.0);
        assert!((extension_bound(100, 0.1, 1).unwrap() - 0.1).abs() < 1e-15);
    }
}
