//! Tiny shared vector helpers.

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    // scaled to survive |x_i| far outside the square-safe range
    let m = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if m == 0.0 || !m.is_finite() {
        return m;
    }
    m * a.iter().map(|x| (x / m) * (x / m)).sum::<f64>().sqrt()
}

#[cfg(test)]
pub(crate) fn rel_err(computed: f64, reference: f64) -> f64 {
    (computed - reference).abs() / reference.abs().max(1e-300)
}
