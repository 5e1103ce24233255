use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Hilbert series of a finite dimensional graded algebra, by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    coeffs: Vec<usize>,
}

impl HilbertSeries {
    pub fn new(coeffs: Vec<usize>) -> Self {
        HilbertSeries { coeffs }
    }

    pub fn coefficients(&self) -> &[usize] {
        &self.coeffs
    }

    pub fn at(&self, d: usize) -> usize {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.coeffs.iter().sum()
    }
}

/// Coefficients of `t^0 ..= t^through` in the power series `num / den`.
pub fn expand_rational_series(num: &[Rational], den: &[Rational], through: usize) -> Result<Vec<Rational>> {
    let d0 = match den.first() {
        Some(c) if !c.is_zero() => c.clone(),
        _ => return Err(Error::ZeroConstantTerm),
    };
    let inv = d0.recip();
    let mut out: Vec<Rational> = Vec::with_capacity(through + 1);
    for n in 0..=through {
        let mut acc = num.get(n).cloned().unwrap_or_default();
        for k in 1..=n.min(den.len().saturating_sub(1)) {
            acc -= &(&den[k] * &out[n - k]);
        }
        out.push(&acc * &inv);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn geometric_series() {
        let s = expand_rational_series(&qs(&[1]), &qs(&[1, -1]), 4).unwrap();
        assert_eq!(s, qs(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn zero_constant_term_is_rejected() {
        assert_eq!(expand_rational_series(&qs(&[1]), &qs(&[0, 1]), 3), Err(Error::ZeroConstantTerm));
        assert_eq!(expand_rational_series(&qs(&[1]), &[], 3), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn non_unit_constant_term() {
        // 1 / (2 - t) = 1/2 + t/4 + t^2/8 + ...
        let s = expand_rational_series(&qs(&[1]), &qs(&[2, -1]), 2).unwrap();
        assert_eq!(s, vec![Rational::new(1, 2), Rational::new(1, 4), Rational::new(1, 8)]);
    }
}
