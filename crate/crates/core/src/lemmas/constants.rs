use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Values this close to an integer are treated as that integer before rounding, so
/// that e.g. `3 / (1/1728)` evaluated in floating point floors to 5184.
const SNAP: f64 = 1e-9;

fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= SNAP * r.abs().max(1.0) {
        r
    } else {
        x
    }
}

fn to_u64(x: f64, what: &str) -> Result<u64> {
    if x.is_finite() && x >= 0.0 && x < u64::MAX as f64 {
        Ok(x as u64)
    } else {
        Err(Error::Overflow(format!("{what} = {x} does not fit in 64 bits")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "formulas", rename_all = "snake_case")]
pub enum Provenance {
    /// From the density exponents of a quasi-smooth family.
    General { alpha: f64, beta: f64, rho: f64, delta: f64 },
    /// From the even cycle length `2 ell`.
    EvenCycle { ell: usize, delta: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedConstants {
    pub ell0: usize,
    pub gamma: f64,
    pub mu: f64,
    #[serde(rename = "bigL")]
    pub big_l: u64,
    pub k0: u64,
    pub provenance: Provenance,
}

impl DerivedConstants {
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.ell0 == 0 {
            return Err("ell0 must be positive".into());
        }
        if !(self.mu > 0.0) {
            return Err(format!("mu must be positive, got {}", self.mu));
        }
        let want = 2 * self.ell0 as u64 + self.big_l + 2;
        if self.k0 != want {
            return Err(format!("k0 = {} but 2*ell0 + L + 2 = {want}", self.k0));
        }
        Ok(())
    }
}

fn check_exponents(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha.is_finite() && beta.is_finite() && 2.0 > alpha && alpha > beta && beta >= 1.0) {
        return Err(Error::input(format!(
            "need 2 > alpha > beta >= 1, got alpha={alpha}, beta={beta}"
        )));
    }
    Ok(())
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::input(format!("{name} must be positive and finite, got {x}")));
    }
    Ok(())
}

/// Number of BFS rounds after which a ball is guaranteed to be linear in `n`.
pub fn ell0(alpha: f64, beta: f64) -> Result<usize> {
    check_exponents(alpha, beta)?;
    let v = if beta == 1.0 {
        snap(1.0 / (alpha - 1.0)).floor() + 1.0
    } else {
        let ratio = (2.0 - beta) * (alpha - 1.0) / (alpha - beta);
        snap(ratio.ln() / beta.ln()).floor() + 2.0
    };
    Ok(to_u64(v, "ell0")? as usize)
}

/// `(delta / 12 rho)^{1/(alpha-1)}`.
pub fn gamma(alpha: f64, rho: f64, delta: f64) -> f64 {
    (delta / (12.0 * rho)).powf(1.0 / (alpha - 1.0))
}

/// Linear fraction guaranteed for two consecutive BFS layers.
pub fn mu(alpha: f64, beta: f64, rho: f64, delta: f64) -> Result<f64> {
    check_exponents(alpha, beta)?;
    check_positive("rho", rho)?;
    check_positive("delta", delta)?;
    let l0 = ell0(alpha, beta)? as f64;
    let g = gamma(alpha, rho, delta);
    let a = 0.5 * (delta / (2.0 * rho)).powf(1.0 / (alpha - 1.0));
    let b = delta / (4.0 * rho) * g.powf(2.0 - alpha);
    let c = g / l0;
    Ok(a.min(b).min(c))
}

pub fn derive_constants(alpha: f64, beta: f64, rho: f64, delta: f64) -> Result<DerivedConstants> {
    let l0 = ell0(alpha, beta)?;
    let m = mu(alpha, beta, rho, delta)?;
    let m_half = mu(alpha, beta, rho, delta / 2.0)?;
    let per_step = to_u64(snap(3.0 / m_half).floor(), "3/mu(delta/2)")?;
    let big_l = per_step
        .checked_mul(l0 as u64)
        .ok_or_else(|| Error::Overflow("L exceeds 64 bits".into()))?;
    let k0 = big_l
        .checked_add(2 * l0 as u64 + 2)
        .ok_or_else(|| Error::Overflow("k0 exceeds 64 bits".into()))?;
    Ok(DerivedConstants {
        ell0: l0,
        gamma: gamma(alpha, rho, delta),
        mu: m,
        big_l,
        k0,
        provenance: Provenance::General { alpha, beta, rho, delta },
    })
}

/// `ceil(3 ell (8 ell / delta)^ell)` in exact rational arithmetic (`delta` is read as
/// the dyadic rational it stores).
fn c2l_big_l(ell: usize, delta: f64) -> Result<u64> {
    let d = BigRational::from_float(delta).ok_or_else(|| Error::input("delta is not finite"))?;
    let base = BigRational::from_integer(BigInt::from(8 * ell)) / d;
    let l = BigRational::from_integer(BigInt::from(3 * ell)) * num_traits::pow(base, ell);
    let c = l.ceil().to_integer();
    c.to_u64().ok_or_else(|| Error::Overflow(format!("L = {c} exceeds 64 bits")))
}

/// Constants for host graphs without `C_{2 ell}`. Here `gamma` is the density of the
/// sparse side-graph and `mu = (delta / 8 ell)^ell` the ball fraction behind `L`.
pub fn derive_constants_c2l(ell: usize, delta: f64) -> Result<DerivedConstants> {
    if ell < 2 {
        return Err(Error::input(format!("need ell >= 2, got {ell}")));
    }
    check_positive("delta", delta)?;
    let big_l = c2l_big_l(ell, delta)?;
    let k0 = big_l
        .checked_add(2 * ell as u64 + 2)
        .ok_or_else(|| Error::Overflow("k0 exceeds 64 bits".into()))?;
    let l = ell as f64;
    let gamma = delta.powf(l + 1.0) / (2f64.powf(6.0 * l + 4.0) * l.powf(2.0 * l));
    let mu = (delta / (8.0 * l)).powf(l);
    if !(mu > 0.0) {
        return Err(Error::Overflow(format!("mu underflows for ell={ell}, delta={delta}")));
    }
    Ok(DerivedConstants {
        ell0: ell,
        gamma,
        mu,
        big_l,
        k0,
        provenance: Provenance::EvenCycle { ell, delta },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let c = derive_constants(1.5, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(c.ell0, 3);
        assert!((c.gamma - 1.0 / 144.0).abs() < 1e-15);
        assert!((c.mu - 1.0 / 432.0).abs() < 1e-15);
        // mu(1/2) = 1/1728
        assert_eq!(c.big_l, 5184 * 3);
        assert_eq!(c.k0, 15560);
        c.validate().unwrap();
    }

    #[test]
    fn ell0_branches() {
        assert_eq!(ell0(1.5, 1.0).unwrap(), 3);
        assert_eq!(ell0(4.0 / 3.0, 1.0).unwrap(), 4);
        assert_eq!(ell0(1.9, 1.0).unwrap(), 2);
        // beta > 1: log_{1.2}(0.8 * 0.5 / 0.3) = log_{1.2}(4/3) = 1.578
        assert_eq!(ell0(1.5, 1.2).unwrap(), 3);
        assert!(ell0(2.0, 1.0).is_err());
        assert!(ell0(1.5, 1.5).is_err());
    }

    #[test]
    fn even_cycle_constants() {
        let c = derive_constants_c2l(2, 1.0).unwrap();
        assert_eq!((c.big_l, c.k0), (1536, 1542));
        let c = derive_constants_c2l(2, 16.0).unwrap();
        assert_eq!((c.big_l, c.k0), (6, 12));
        let c = derive_constants_c2l(3, 1.0).unwrap();
        assert_eq!(c.big_l, 9 * 24u64.pow(3));
        // fractional base rounds up: 6 * (16/3)^2 = 170.67
        assert_eq!(derive_constants_c2l(2, 3.0).unwrap().big_l, 171);
        assert!(derive_constants_c2l(1, 1.0).is_err());
        assert!(derive_constants_c2l(2, 0.0).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(derive_constants_c2l(12, 1e-3), Err(Error::Overflow(_))));
        assert!(matches!(derive_constants(1.01, 1.0, 1e6, 1e-6), Err(Error::Overflow(_))));
    }

    #[test]
    fn domain_errors() {
        assert!(derive_constants(1.5, 1.0, 0.0, 1.0).is_err());
        assert!(derive_constants(1.5, 1.0, 1.0, -1.0).is_err());
        assert!(derive_constants(1.0, 1.0, 1.0, 1.0).is_err());
    }
}
