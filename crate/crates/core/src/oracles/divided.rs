/// Divided difference `u[x_0, ..., x_n]` by the textbook recursion on a
/// non-decreasing knot list with repeated entries; `deriv(k, t)` supplies
/// `u^(k)(t)`.
pub fn brute_force_divided_difference(knots: &[f64], deriv: &dyn Fn(usize, f64) -> f64) -> f64 {
    let n = knots.len() - 1;
    if knots[0] == knots[n] {
        let fact: f64 = (1..=n).map(|k| k as f64).product();
        return deriv(n, knots[0]) / fact;
    }
    (brute_force_divided_difference(&knots[1..], deriv) - brute_force_divided_difference(&knots[..n], deriv)) / (knots[n] - knots[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        // u = x^3 on {-1, -1, 1} and {-1, -1, 1, 1}
        let d = |k: usize, t: f64| match k {
            0 => t * t * t,
            1 => 3.0 * t * t,
            2 => 6.0 * t,
            _ => 6.0,
        };
        let f3 = brute_force_divided_difference(&[-1.0, -1.0, 1.0], &d);
        assert!((f3 - ((1.0 - -1.0) / 4.0 - 3.0 / 2.0)).abs() < 1e-15);
        let f4 = brute_force_divided_difference(&[-1.0, -1.0, 1.0, 1.0], &d);
        assert!((f4 - (-1.0 - 1.0 + 3.0 + 3.0) / 4.0).abs() < 1e-15);
        assert_eq!(brute_force_divided_difference(&[0.0, 0.5, 1.0], &|k, _| if k == 0 { 2.0 } else { 0.0 }), 0.0);
    }
}
