//! Pearson correlation with a two-sided t-test.

use statrs::distribution::{ContinuousCDF, StudentsT};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Correlation {
    pub r: f64,
    /// Two-sided p-value of `r = 0` against a t distribution with `n - 2`
    /// degrees of freedom.
    pub p_value: f64,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum PearsonError {
    #[error("series lengths differ ({0} vs {1})")]
    Length(usize, usize),

    #[error("need at least 3 points, got {0}")]
    TooShort(usize),

    #[error("a series has zero variance")]
    ZeroVariance,

    #[error("series contain non-finite values")]
    NonFinite,
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<Correlation, PearsonError> {
    if xs.len() != ys.len() {
        return Err(PearsonError::Length(xs.len(), ys.len()));
    }
    let n = xs.len();
    if n < 3 {
        return Err(PearsonError::TooShort(n));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(PearsonError::NonFinite);
    }

    let mean_x = xs.iter().sum::<f64>() / n as f64;
    let mean_y = ys.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(PearsonError::ZeroVariance);
    }
    let r = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);

    let df = (n - 2) as f64;
    let p_value = if r.abs() == 1.0 {
        0.0
    } else {
        let t = r * (df / (1.0 - r * r)).sqrt();
        let dist = StudentsT::new(0.0, 1.0, df).expect("df >= 1");
        (2.0 * (1.0 - dist.cdf(t.abs()))).clamp(0.0, 1.0)
    };

    Ok(Correlation { r, p_value, n })
}
