use serde::{Deserialize, Serialize};

use super::{Field, FieldElement};
use crate::error::{Error, Result};

/// Dual number `re + eps·ε` with ε² = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualNumber {
    pub re: FieldElement,
    pub eps: FieldElement,
}

impl DualNumber {
    pub fn new(re: FieldElement, eps: FieldElement) -> Self {
        DualNumber { re, eps }
    }

    /// Embeds a field element as `a + 0ε`.
    pub fn real(re: FieldElement) -> Self {
        DualNumber {
            re,
            eps: FieldElement::ZERO,
        }
    }

    pub fn is_unit(&self) -> bool {
        !self.re.is_zero()
    }

    /// True iff the ε-part vanishes.
    pub fn is_real(&self) -> bool {
        self.eps.is_zero()
    }
}

impl Field {
    pub fn dual_add(&self, x: DualNumber, y: DualNumber) -> DualNumber {
        DualNumber::new(self.add(x.re, y.re), self.add(x.eps, y.eps))
    }

    pub fn dual_sub(&self, x: DualNumber, y: DualNumber) -> DualNumber {
        DualNumber::new(self.sub(x.re, y.re), self.sub(x.eps, y.eps))
    }

    /// (a+bε)(c+dε) = ac + (ad+bc)ε
    pub fn dual_mul(&self, x: DualNumber, y: DualNumber) -> DualNumber {
        DualNumber::new(
            self.mul(x.re, y.re),
            self.add(self.mul(x.re, y.eps), self.mul(x.eps, y.re)),
        )
    }

    /// (a+bε)⁻¹ = a⁻¹ − a⁻²b ε
    pub fn dual_inv(&self, x: DualNumber) -> Result<DualNumber> {
        let inv = self.inv(x.re).map_err(|_| Error::NotAUnit(self.format_dual(x)))?;
        let eps = self.neg(self.mul(self.square(inv), x.eps));
        Ok(DualNumber::new(inv, eps))
    }

    pub fn dual_div(&self, x: DualNumber, y: DualNumber) -> Result<DualNumber> {
        Ok(self.dual_mul(x, self.dual_inv(y)?))
    }

    /// a+bε ↦ a−bε
    pub fn dual_conjugate(&self, x: DualNumber) -> DualNumber {
        DualNumber::new(x.re, self.neg(x.eps))
    }

    pub fn format_dual(&self, x: DualNumber) -> String {
        format!("{}+{}ε", self.format(x.re), self.format(x.eps))
    }

    /// Every dual number over this field, ordered by (re, eps).
    pub fn dual_elements(&self) -> impl Iterator<Item = DualNumber> + '_ {
        self.elements()
            .flat_map(move |re| self.elements().map(move |eps| DualNumber::new(re, eps)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(f: &Field, re: u32, eps: u32) -> DualNumber {
        DualNumber::new(f.element(re as u64).unwrap(), f.element(eps as u64).unwrap())
    }

    #[test]
    fn multiplication_example() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.dual_mul(d(&f, 1, 2), d(&f, 3, 4)), d(&f, 3, 0));
    }

    #[test]
    fn inverse_example_multiplies_back() {
        let f = Field::prime(5).unwrap();
        let inv = f.dual_inv(d(&f, 2, 3)).unwrap();
        assert_eq!(inv, d(&f, 3, 3));
        assert_eq!(f.dual_mul(d(&f, 2, 3), inv), d(&f, 1, 0));
    }

    #[test]
    fn non_units_are_rejected() {
        let f = Field::prime(5).unwrap();
        assert!(matches!(f.dual_inv(d(&f, 0, 3)), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn ring_laws_exhaustive() {
        for f in [Field::prime(5).unwrap(), Field::binary(2).unwrap(), Field::prime(3).unwrap()] {
            let one = DualNumber::real(f.one());
            for x in f.dual_elements() {
                assert_eq!(f.dual_conjugate(f.dual_conjugate(x)), x);
                assert!(f.dual_mul(x, f.dual_conjugate(x)).is_real());
                if x.is_unit() {
                    assert_eq!(f.dual_mul(x, f.dual_inv(x).unwrap()), one);
                } else {
                    let sq = f.dual_mul(x, x);
                    assert!(sq.re.is_zero() && sq.eps.is_zero());
                }
            }
        }
    }
}
