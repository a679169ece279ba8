//! Numerosity bound for the code family and the prime size selection.

use super::CodeError;

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// The family lower bound `2^{k²-k} / (k+1)^{2√k}` with its ingredients.
#[derive(Clone, Debug, PartialEq)]
pub struct NumerosityBound {
    pub k: u64,
    /// `⌊√k⌋`.
    pub q: u64,
    /// `log₂` of the bound.
    pub log2: f64,
    pub value: f64,
    /// `(ν/2)^{2q}`: code-word choices over the `2q` obliged rows.
    pub obliged_rows: f64,
    /// `2^{(k-1)(k-2q)}`: choices over the free rows.
    pub free_rows: f64,
}

pub fn numerosity_lower_bound(k: u64) -> Result<NumerosityBound, CodeError> {
    if !is_prime(k) {
        return Err(CodeError::Domain(format!("{k} is not prime")));
    }
    let kf = k as f64;
    let q = (1..).take_while(|q: &u64| q * q <= k).last().unwrap_or(1);
    let log2 = kf * kf - kf - 2.0 * kf.sqrt() * (kf + 1.0).log2();
    let half_nu = (2f64.powf(kf - 1.0) - 1.0) / kf;
    let free = (k as i64 - 1) * (k as i64 - 2 * q as i64);
    Ok(NumerosityBound {
        k,
        q,
        log2,
        value: log2.exp2(),
        obliged_rows: half_nu.powi(2 * q as i32),
        free_rows: (free as f64).exp2(),
    })
}

/// The smallest prime in `[4 lg m, 8 lg m]`.
pub fn choose_k(m: u64) -> Result<u64, CodeError> {
    if m < 2 {
        return Err(CodeError::Domain(format!("m = {m} must be at least 2")));
    }
    let lg = (m as f64).log2();
    let lo = (4.0 * lg).ceil() as u64;
    let hi = (8.0 * lg).floor() as u64;
    (lo..=hi).find(|&p| is_prime(p)).ok_or_else(|| CodeError::Domain(format!("no prime in [{lo}, {hi}]")))
}
