//! Independent oracles shared by the integration tests. Everything
//! here is deliberately implemented with different algorithms than the
//! crate under test.
#![allow(dead_code)]

/// Trial-division primality, the reference the sieve is judged by.
pub fn trial_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn trial_primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&n| trial_is_prime(n)).collect()
}

/// Logarithmic integral li(x) by the rapidly converging Ramanujan
/// series, accurate to close to f64 precision for x >= 2.
pub fn li(x: f64) -> f64 {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;
    let lnx = x.ln();
    let mut series = 0.0;
    let mut pow = 1.0; // (ln x)^n
    let mut fact = 1.0; // n!
    let mut inner = 0.0; // sum over odd 1/(2k+1) up to floor((n-1)/2)
    for n in 1..=400u32 {
        pow *= lnx;
        fact *= n as f64;
        if n % 2 == 1 {
            inner += 1.0 / (n as f64);
        }
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let term = sign * pow / (fact * 2f64.powi(n as i32 - 1)) * inner;
        series += term;
        if n > 4 && term.abs() < 1e-18 * series.abs() {
            break;
        }
    }
    EULER_GAMMA + lnx.ln() + x.sqrt() * series
}

/// integral_2^x dt/ln(t) via the li series.
pub fn li_from_2(x: f64) -> f64 {
    li(x) - li(2.0)
}

/// integral_2^x dt/ln^2(t) via integration by parts:
/// li(x) - li(2) - x/ln(x) + 2/ln(2).
pub fn li2_from_2(x: f64) -> f64 {
    li_from_2(x) - x / x.ln() + 2.0 / 2f64.ln()
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
