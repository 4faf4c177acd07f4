//! Analytic replication-factor bounds.

use crate::error::{domain, Result};

/// Upper bound on the replication factor of greedy-ordered CEP partitions:
/// `(|V| + |E| + k) / |V|`.
pub fn rf_upper_bound(vertex_count: u64, edge_count: u64, k: u64) -> Result<f64> {
    if vertex_count == 0 {
        return domain("bound needs at least one vertex");
    }
    Ok((vertex_count + edge_count + k) as f64 / vertex_count as f64)
}

// B_{2j} / (2j)! for j = 1..=8.
const EM_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

/// Riemann zeta for real `s > 1`, absolute error below `tolerance`.
///
/// Sums `n^-s` for `n < N`, then adds the tail integral
/// `N^(1-s) / (s - 1)` with Euler-Maclaurin corrections. `N` doubles until
/// the first omitted correction is below the tolerance.
pub fn zeta(s: f64, tolerance: f64) -> Result<f64> {
    if s.is_nan() || s <= 1.0 || s.is_infinite() {
        return domain(format!("zeta diverges for s = {s}"));
    }
    if tolerance.is_nan() || tolerance <= 0.0 {
        return domain(format!("tolerance must be positive, got {tolerance}"));
    }
    let used = EM_COEFFS.len() - 1;
    let mut n_terms = 8u64;
    loop {
        let n = n_terms as f64;
        let mut sum: f64 = (1..n_terms).rev().map(|i| (i as f64).powf(-s)).sum();
        sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);

        // rising = s (s+1) ... (s+2j-2), power = N^(-s-2j+1)
        let mut rising = s;
        let mut power = n.powf(-s - 1.0);
        let mut omitted = 0.0;
        for (j, c) in EM_COEFFS.iter().enumerate() {
            let term = c * rising * power;
            if j == used {
                omitted = term.abs();
                break;
            }
            sum += term;
            let a = s + 2.0 * j as f64 + 1.0;
            rising *= a * (a + 1.0);
            power /= n * n;
        }
        if omitted < tolerance || n_terms >= 1 << 24 {
            return Ok(sum);
        }
        n_terms *= 2;
    }
}

/// Expected bound for a power-law graph with exponent `alpha` and minimum
/// degree 1, taking `k / |V|` as negligible: `1 + zeta(alpha-1) / (2 zeta(alpha))`.
pub fn powerlaw_bound(alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha <= 2.0 {
        return domain(format!("power-law exponent must exceed 2, got {alpha}"));
    }
    let tol = 1e-12;
    Ok(1.0 + zeta(alpha - 1.0, tol)? / (2.0 * zeta(alpha, tol)?))
}
