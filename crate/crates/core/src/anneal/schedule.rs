/// Largest `delta / t` for which the acceptance probability is evaluated;
/// beyond it `exp` overflows and the probability is 0.
const MAX_EXPONENT: f64 = 700.0;

/// `t0 * rate^j`.
pub fn temperature(t0: f64, j: usize, rate: f64) -> f64 {
    match i32::try_from(j) {
        Ok(j) => t0 * rate.powi(j),
        Err(_) => t0 * rate.powf(j as f64),
    }
}

/// `1 / (1 + exp(delta / t))`: 1/2 for `delta = 0`, below 1/2 for worse
/// candidates and exactly 0 once `delta / t` exceeds 700.
pub fn acceptance_probability(delta: f64, t: f64) -> f64 {
    let x = delta / t;
    if x > MAX_EXPONENT {
        0.0
    } else {
        1.0 / (1.0 + x.exp())
    }
}
