//! Minimum sample size for estimating a proportion.

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SampleSizeError {
    #[error("margin of error must be in (0, 1), got {0}")]
    Margin(f64),
    #[error("confidence level must be in (0, 1), got {0}")]
    Confidence(f64),
    #[error("population must be at least 1")]
    Population,
}

/// Two-tailed critical value for a confidence level. Common levels use the
/// usual three-decimal table values.
pub fn z_score(confidence: f64) -> Result<f64, SampleSizeError> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(SampleSizeError::Confidence(confidence));
    }
    const TABLE: [(f64, f64); 3] = [(0.90, 1.645), (0.95, 1.960), (0.99, 2.576)];
    if let Some((_, z)) = TABLE.iter().find(|(c, _)| (c - confidence).abs() < 1e-12) {
        return Ok(*z);
    }
    Ok(normal_quantile(1.0 - (1.0 - confidence) / 2.0))
}

/// Standard normal quantile, Acklam's rational approximation
/// (relative error below 1.15e-9).
pub fn normal_quantile(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e1,
        2.209460984245205e2,
        -2.759285104469687e2,
        1.383_577_518_672_69e2,
        -3.066479806614716e1,
        2.506628277459239,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e1,
        1.615858368580409e2,
        -1.556989798598866e2,
        6.680131188771972e1,
        -1.328068155288572e1,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-3,
        -3.223964580411365e-1,
        -2.400758277161838,
        -2.549732539343734,
        4.374664141464968,
        2.938163982698783,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-3,
        3.224671290700398e-1,
        2.445134137142996,
        3.754408661907416,
    ];
    const P_LOW: f64 = 0.02425;

    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    let tail = |q: f64| {
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    if p < P_LOW {
        tail((-2.0 * p.ln()).sqrt())
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -tail((-2.0 * (1.0 - p).ln()).sqrt())
    }
}

/// Sample size for a proportion at p = 0.5, with the finite-population
/// correction when `population` is given.
pub fn sample_size(population: Option<u64>, confidence: f64, margin: f64) -> Result<u64, SampleSizeError> {
    if !(margin > 0.0 && margin < 1.0) {
        return Err(SampleSizeError::Margin(margin));
    }
    if population == Some(0) {
        return Err(SampleSizeError::Population);
    }
    let z = z_score(confidence)?;
    let n0 = z * z * 0.25 / (margin * margin);
    let n = match population {
        Some(pop) => n0 / (1.0 + (n0 - 1.0) / pop as f64),
        None => n0,
    };
    // absorb float noise such as 100.00000000000001
    let n = (n - 1e-9).ceil().max(1.0) as u64;
    Ok(population.map_or(n, |pop| n.min(pop)))
}
