//! Generalized q-ary entropy H_{q,w}.

/// `H_{q,w}(x) = x·log_q(q^w − 1) − x·log_q(x) − (1−x)·log_q(1−x)`, with the
/// endpoints taken as limits.
pub fn entropy_gen(q: f64, w: f64, x: f64) -> f64 {
    let lq = q.ln();
    let mut h = x * (q.powf(w) - 1.0).ln() / lq;
    if x > 0.0 {
        h -= x * x.ln() / lq;
    }
    if x < 1.0 {
        h -= (1.0 - x) * (1.0 - x).ln() / lq;
    }
    h
}

/// Largest argument where H_{q,w} is increasing, 1 − q^{−w}.
pub fn entropy_peak(q: f64, w: f64) -> f64 {
    1.0 - q.powf(-w)
}

/// `points` evenly spaced samples of H_{q,w} on [0, 1].
pub fn entropy_curve(q: f64, w: f64, points: usize) -> Vec<(f64, f64)> {
    let last = points.saturating_sub(1).max(1) as f64;
    (0..points)
        .map(|i| {
            let x = i as f64 / last;
            (x, entropy_gen(q, w, x))
        })
        .collect()
}
