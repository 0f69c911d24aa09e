//! Small numeric helpers: deterministic summation, sample statistics,
//! a chi-square tail probability, and least-squares slopes.

/// Pairwise (cascade) summation. Deterministic for a fixed input order and
/// accurate to O(log n) rounding steps.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// Sample mean and standard error of the mean.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = pairwise_sum(xs) / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let sq: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
    let var = pairwise_sum(&sq) / (n as f64 - 1.0);
    (mean, (var / n as f64).sqrt())
}

/// Slope and intercept of the least-squares line through (x, y).
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(x.len(), y.len());
    assert!(x.len() >= 2);
    let n = x.len() as f64;
    let mx = pairwise_sum(x) / n;
    let my = pairwise_sum(y) / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

fn ln_gamma(x: f64) -> f64 {
    // Lanczos, g = 7, n = 9.
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return pi.ln() - (pi * x).sin().ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = COEF[0];
    let t = x + 7.5;
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Regularized lower incomplete gamma P(a, x), by series for x < a + 1 and by
/// continued fraction (modified Lentz) otherwise.
fn gamma_p(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    if x < a + 1.0 {
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut ap = a;
        for _ in 0..500 {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * 1e-16 {
                break;
            }
        }
        sum * (-x + a * x.ln() - ln_gamma(a)).exp()
    } else {
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        1.0 - (-x + a * x.ln() - ln_gamma(a)).exp() * h
    }
}

/// P(X > stat) for X chi-square with `dof` degrees of freedom.
pub fn chi_square_sf(stat: f64, dof: u32) -> f64 {
    if stat <= 0.0 {
        return 1.0;
    }
    (1.0 - gamma_p(dof as f64 / 2.0, stat / 2.0)).clamp(0.0, 1.0)
}

/// Pearson chi-square independence test on a contingency table
/// (rows x columns of observed counts). Returns (statistic, dof, p-value).
/// Rows or columns with zero margin are dropped.
pub fn chi_square_independence(table: &[Vec<u64>]) -> (f64, u32, f64) {
    let rows: Vec<&Vec<u64>> = table
        .iter()
        .filter(|r| r.iter().sum::<u64>() > 0)
        .collect();
    if rows.is_empty() {
        return (0.0, 0, 1.0);
    }
    let ncol = rows[0].len();
    let col_sums: Vec<u64> = (0..ncol)
        .map(|j| rows.iter().map(|r| r[j]).sum())
        .collect();
    let keep: Vec<usize> = (0..ncol).filter(|&j| col_sums[j] > 0).collect();
    let total: u64 = col_sums.iter().sum();
    if rows.len() < 2 || keep.len() < 2 || total == 0 {
        return (0.0, 0, 1.0);
    }
    let mut stat = 0.0;
    for r in &rows {
        let rsum: u64 = r.iter().sum();
        for &j in &keep {
            let expected = rsum as f64 * col_sums[j] as f64 / total as f64;
            let diff = r[j] as f64 - expected;
            stat += diff * diff / expected;
        }
    }
    let dof = (rows.len() as u32 - 1) * (keep.len() as u32 - 1);
    (stat, dof, chi_square_sf(stat, dof))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_small_inputs() {
        let xs: Vec<f64> = (0..100).map(|i| (i as f64).sin()).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-12);
    }

    #[test]
    fn chi_square_tail_matches_reference_values() {
        // Classic 5% critical values.
        assert!((chi_square_sf(3.841_458_820_694_124, 1) - 0.05).abs() < 1e-9);
        assert!((chi_square_sf(7.814_727_903_251_179, 3) - 0.05).abs() < 1e-9);
        assert!((chi_square_sf(18.307_038_053_275_146, 10) - 0.05).abs() < 1e-9);
        // A 1% value.
        assert!((chi_square_sf(6.634_896_601_021_213, 1) - 0.01).abs() < 1e-9);
    }

    #[test]
    fn linear_fit_recovers_exact_line() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [2.5, 4.5, 6.5, 8.5];
        let (slope, intercept) = linear_fit(&x, &y);
        assert!((slope - 2.0).abs() < 1e-12);
        assert!((intercept - 0.5).abs() < 1e-12);
    }

    #[test]
    fn independence_test_accepts_independent_counts() {
        let table = vec![vec![50u64, 150], vec![100, 300]];
        let (_stat, dof, p) = chi_square_independence(&table);
        assert_eq!(dof, 1);
        assert!(p > 0.99);
    }
}
