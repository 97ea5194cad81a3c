//! Log-domain arithmetic for probability computations.
//!
//! Probabilities of zero are represented by `-inf` log-weights. All sums of
//! exponentials are performed with a max-shift so that no intermediate
//! underflows, and `0 * log 0` style products follow the `0 log 0 = 0`
//! convention throughout.

pub const LN_2: f64 = std::f64::consts::LN_2;

/// `log(sum(exp(x_i)))` with a max-shift. Empty or all `-inf` input gives `-inf`.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let s: f64 = xs.iter().map(|&x| (x - m).exp()).sum();
    m + s.ln()
}

/// Weighted product `w * x` with the convention that a zero weight kills
/// an infinite magnitude: `0 * (-inf) = 0`.
pub fn wmul(w: f64, x: f64) -> f64 {
    if w == 0.0 {
        0.0
    } else {
        w * x
    }
}

/// `x ln x` with `0 ln 0 = 0`.
pub fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Natural log of `p`, `-inf` for `p <= 0`.
pub fn ln_p(p: f64) -> f64 {
    if p > 0.0 {
        p.ln()
    } else {
        f64::NEG_INFINITY
    }
}

/// Shannon entropy of a pmf in nats. Zero entries contribute nothing.
pub fn entropy_nats(pmf: &[f64]) -> f64 {
    -pmf.iter().map(|&p| xlnx(p)).sum::<f64>()
}

/// Binary entropy in nats.
pub fn h2_nats(p: f64) -> f64 {
    -xlnx(p) - xlnx(1.0 - p)
}

/// Binary convolution `a * b = a(1-b) + (1-a)b`.
pub fn bconv(a: f64, b: f64) -> f64 {
    a * (1.0 - b) + (1.0 - a) * b
}

/// KL divergence `D(p || q)` in nats; `+inf` when `p` puts mass where `q` does not.
pub fn kl_nats(p: &[f64], q: &[f64]) -> f64 {
    let mut d = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        if pi > 0.0 {
            if qi <= 0.0 {
                return f64::INFINITY;
            }
            d += pi * (pi.ln() - qi.ln());
        }
    }
    d
}
