use std::f64::consts::PI;
use std::sync::OnceLock;

/// Highest `j` with `B_{2j}` tabulated; covers 30 Euler–Maclaurin correction
/// terms plus the first omitted one used by the remainder bound.
pub const MAX_J: usize = 31;

struct Tables {
    /// `B_{2j} / (2j)!`
    over_fact: [f64; MAX_J + 1],
    /// `B_{2j}`
    plain: [f64; MAX_J + 1],
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut over_fact = [0.0; MAX_J + 1];
        let mut plain = [0.0; MAX_J + 1];
        let mut fact = 1.0f64;
        for j in 1..=MAX_J {
            fact *= ((2 * j - 1) * (2 * j)) as f64;
            let z = zeta_even(j);
            // B_{2j} = (-1)^{j+1} 2 (2j)! ζ(2j) / (2π)^{2j}
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            over_fact[j] = sign * 2.0 * z / (2.0 * PI).powi(2 * j as i32);
            plain[j] = over_fact[j] * fact;
        }
        Tables { over_fact, plain }
    })
}

fn zeta_even(j: usize) -> f64 {
    match j {
        1 => PI * PI / 6.0,
        2 => PI.powi(4) / 90.0,
        3 => PI.powi(6) / 945.0,
        _ => {
            let e = -(2.0 * j as f64);
            (1..=2000).rev().map(|n| (n as f64).powf(e)).sum()
        }
    }
}

pub fn bernoulli_2j_over_factorial(j: usize) -> f64 {
    tables().over_fact[j]
}

pub fn bernoulli_2j(j: usize) -> f64 {
    tables().plain[j]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bernoulli_numbers() {
        let exact = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0];
        for (i, b) in exact.iter().enumerate() {
            let got = bernoulli_2j(i + 1);
            assert!((got - b).abs() <= 1e-15 * b.abs(), "B_{}", 2 * (i + 1));
        }
        // B_60 = -2.139994925722533e34 (exact rational / 56786730)
        assert!((bernoulli_2j(30) / -2.1399949257225333665810744765191097392674e34 - 1.0).abs() < 1e-13);
    }
}
