//! Exact arithmetic over GF(p) and GF(2^n), plus the dual numbers F[ε].
//!
//! Elements are plain canonical values ([`FieldElement`]); all arithmetic goes
//! through a validated [`Field`] context. Prime fields store least nonnegative
//! residues, binary fields store polynomial-basis bit vectors (bit `i` is the
//! coefficient of `x^i`).
//!
//! ```
//! use geocipher::field::{Field, FieldSpec};
//!
//! let gf8: Field = "2^3".parse::<FieldSpec>().unwrap().build().unwrap();
//! let x = gf8.element(0b010).unwrap();
//! let x2 = gf8.element(0b100).unwrap();
//! assert_eq!(gf8.mul(x, x2).value(), 0b011); // x^3 = x + 1
//! ```

mod dual;

pub use dual::DualNumber;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported prime characteristic.
pub const MAX_PRIME: u32 = 1 << 16;
/// Largest supported binary extension degree.
pub const MAX_DEGREE: u32 = 16;

/// Default reduction polynomials (including the leading term), indexed by degree.
const DEFAULT_MASKS: [u32; 17] = [
    0,       // unused
    0x3,     // x + 1
    0x7,     // x^2 + x + 1
    0xB,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x83,    // x^7 + x + 1
    0x11B,   // x^8 + x^4 + x^3 + x + 1
    0x211,   // x^9 + x^4 + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x201B,  // x^13 + x^4 + x^3 + x + 1
    0x4443,  // x^14 + x^10 + x^6 + x + 1
    0x8003,  // x^15 + x + 1
    0x1100B, // x^16 + x^12 + x^3 + x + 1
];

/// Description of a finite field, in the textual forms `p:7`, `2^3` or `2^3:0xB`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime { p: u32 },
    Binary { n: u32, mask: u32 },
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec::Prime { p }
    }

    /// Binary field with the built-in reduction polynomial for degree `n`.
    pub fn binary(n: u32) -> Self {
        let mask = DEFAULT_MASKS.get(n as usize).copied().unwrap_or(0);
        FieldSpec::Binary { n, mask }
    }

    pub fn binary_with_mask(n: u32, mask: u32) -> Self {
        FieldSpec::Binary { n, mask }
    }

    pub fn default_mask(n: u32) -> Option<u32> {
        match DEFAULT_MASKS.get(n as usize) {
            Some(&m) if n >= 1 => Some(m),
            _ => None,
        }
    }

    pub fn order(&self) -> u32 {
        match *self {
            FieldSpec::Prime { p } => p,
            FieldSpec::Binary { n, .. } => 1 << n,
        }
    }

    /// Validate the description and precompute the arithmetic context.
    pub fn build(self) -> Result<Field> {
        Field::new(self)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FieldSpec::Prime { p } => write!(f, "p:{p}"),
            FieldSpec::Binary { n, mask } if FieldSpec::default_mask(n) == Some(mask) => {
                write!(f, "2^{n}")
            }
            FieldSpec::Binary { n, mask } => write!(f, "2^{n}:0x{mask:X}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "field spec",
            input: s.to_string(),
        };
        let s = s.trim();
        if let Some(p) = s.strip_prefix("p:") {
            let p = p.trim().parse::<u32>().map_err(|_| bad())?;
            return Ok(FieldSpec::Prime { p });
        }
        if let Some(rest) = s.strip_prefix("2^") {
            let (n, mask) = match rest.split_once(':') {
                Some((n, m)) => (n, Some(m)),
                None => (rest, None),
            };
            let n = n.trim().parse::<u32>().map_err(|_| bad())?;
            let mask = match mask {
                Some(m) => parse_uint(m).ok_or_else(bad)?,
                None => FieldSpec::default_mask(n).ok_or_else(bad)? as u64,
            };
            let mask = u32::try_from(mask).map_err(|_| bad())?;
            return Ok(FieldSpec::Binary { n, mask });
        }
        Err(bad())
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Decimal or `0x`-prefixed hexadecimal.
fn parse_uint(s: &str) -> Option<u64> {
    let s = s.trim();
    if let Some(h) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        u64::from_str_radix(h, 16).ok()
    } else {
        s.parse().ok()
    }
}

/// A field element in canonical form. Only meaningful together with its [`Field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a value without range checking; callers must know it is canonical.
    pub(crate) const fn from_raw(v: u32) -> Self {
        FieldElement(v)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Bit `i` of the canonical encoding.
    pub fn bit(self, i: u32) -> bool {
        (self.0 >> i) & 1 == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Prime { p: u32 },
    Binary { n: u32, mask: u32 },
}

/// Validated arithmetic context for one finite field.
///
/// Cloning is cheap; lookup tables are shared.
#[derive(Clone)]
pub struct Field {
    spec: FieldSpec,
    kind: Kind,
    order: u32,
    inverses: Arc<[u32]>,
    // Full multiplication table for small binary fields.
    mul_table: Option<Arc<[u16]>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.spec)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let kind = match spec {
            FieldSpec::Prime { p } => {
                if p > MAX_PRIME {
                    return Err(Error::InvalidField(format!("p = {p} exceeds 2^16")));
                }
                if !is_prime(p) {
                    return Err(Error::InvalidField(format!("{p} is not prime")));
                }
                Kind::Prime { p }
            }
            FieldSpec::Binary { n, mask } => {
                if n == 0 || n > MAX_DEGREE {
                    return Err(Error::InvalidField(format!("degree {n} outside 1..=16")));
                }
                if mask >> n != 1 {
                    return Err(Error::InvalidField(format!(
                        "mask 0x{mask:X} does not have degree {n}"
                    )));
                }
                if !is_irreducible_gf2(mask) {
                    return Err(Error::InvalidField(format!(
                        "mask 0x{mask:X} is reducible over GF(2)"
                    )));
                }
                Kind::Binary { n, mask }
            }
        };
        let order = spec.order();
        let mut field = Field {
            spec,
            kind,
            order,
            inverses: Arc::from(Vec::new()),
            mul_table: None,
        };
        if let Kind::Binary { .. } = kind {
            if order <= 256 {
                let mut table = vec![0u16; (order * order) as usize];
                for a in 0..order {
                    for b in 0..order {
                        table[(a * order + b) as usize] = field.mul_raw(a, b) as u16;
                    }
                }
                field.mul_table = Some(Arc::from(table));
            }
        }
        let mut inverses = vec![0u32; order as usize];
        for a in 1..order {
            inverses[a as usize] = field.inv_raw(a);
        }
        field.inverses = Arc::from(inverses);
        Ok(field)
    }

    /// GF(p) with validation.
    pub fn prime(p: u32) -> Result<Self> {
        FieldSpec::prime(p).build()
    }

    /// GF(2^n) with the built-in reduction polynomial.
    pub fn binary(n: u32) -> Result<Self> {
        FieldSpec::binary(n).build()
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    /// Number of elements q.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_binary(&self) -> bool {
        matches!(self.kind, Kind::Binary { .. })
    }

    /// Extension degree for binary fields, `None` for prime fields.
    pub fn degree(&self) -> Option<u32> {
        match self.kind {
            Kind::Binary { n, .. } => Some(n),
            Kind::Prime { .. } => None,
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self.kind {
            Kind::Prime { p } => p,
            Kind::Binary { .. } => 2,
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value < self.order as u64 {
            Ok(FieldElement(value as u32))
        } else {
            Err(Error::ElementOutOfRange {
                value,
                order: self.order,
            })
        }
    }

    /// All q elements: zero first, then ascending canonical value.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.order).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.order).map(FieldElement)
    }

    /// Uniformly random element.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.order))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match self.kind {
            Kind::Prime { p } => {
                let s = a.0 + b.0;
                FieldElement(if s >= p { s - p } else { s })
            }
            Kind::Binary { .. } => FieldElement(a.0 ^ b.0),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match self.kind {
            Kind::Prime { p } => FieldElement(if a.0 == 0 { 0 } else { p - a.0 }),
            Kind::Binary { .. } => a,
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if let Some(table) = &self.mul_table {
            return FieldElement(table[(a.0 * self.order + b.0) as usize] as u32);
        }
        FieldElement(self.mul_raw(a.0, b.0))
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement(self.inverses[a.0 as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Sum of several elements.
    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, items: I) -> FieldElement {
        items
            .into_iter()
            .fold(FieldElement::ZERO, |acc, x| self.add(acc, x))
    }

    /// Decimal for prime fields, `0x`-hex for binary fields.
    pub fn format(&self, a: FieldElement) -> String {
        match self.kind {
            Kind::Prime { .. } => a.0.to_string(),
            Kind::Binary { .. } => format!("0x{:x}", a.0),
        }
    }

    /// Accepts decimal or `0x`-hex in either kind of field.
    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        let v = parse_uint(s).ok_or_else(|| Error::Parse {
            what: "field element",
            input: s.to_string(),
        })?;
        self.element(v)
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        match self.kind {
            Kind::Prime { p } => ((a as u64 * b as u64) % p as u64) as u32,
            Kind::Binary { n, mask } => {
                let (mut a, mut b, mut acc) = (a, b, 0u32);
                while b != 0 {
                    if b & 1 == 1 {
                        acc ^= a;
                    }
                    b >>= 1;
                    a <<= 1;
                    if a >> n & 1 == 1 {
                        a ^= mask;
                    }
                }
                acc
            }
        }
    }

    fn inv_raw(&self, a: u32) -> u32 {
        match self.kind {
            Kind::Prime { p } => {
                // extended Euclid on (a, p)
                let (mut r0, mut r1) = (p as i64, a as i64);
                let (mut t0, mut t1) = (0i64, 1i64);
                while r1 != 0 {
                    let k = r0 / r1;
                    (r0, r1) = (r1, r0 - k * r1);
                    (t0, t1) = (t1, t0 - k * t1);
                }
                t0.rem_euclid(p as i64) as u32
            }
            Kind::Binary { .. } => {
                // a^(q-2)
                let mut base = a;
                let mut acc = 1;
                let mut e = self.order - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.mul_raw(acc, base);
                    }
                    base = self.mul_raw(base, base);
                    e >>= 1;
                }
                acc
            }
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn degree_gf2(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn rem_gf2(mut a: u32, b: u32) -> u32 {
    let db = degree_gf2(b);
    while a != 0 && degree_gf2(a) >= db {
        a ^= b << (degree_gf2(a) - db);
    }
    a
}

/// Exhaustive trial division by every polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible_gf2(poly: u32) -> bool {
    let n = degree_gf2(poly);
    if n < 1 {
        return false;
    }
    for d in 1..=(n / 2) {
        for divisor in (1u32 << d)..(1u32 << (d + 1)) {
            if rem_gf2(poly, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn e(v: u32) -> FieldElement {
        FieldElement(v)
    }

    #[test]
    fn prime_field_examples() {
        let f = gf(5);
        assert_eq!(f.add(e(3), e(4)), e(2));
        assert_eq!(f.inv(e(2)).unwrap(), e(3));
        assert_eq!(f.sub(e(1), e(3)), e(3));
        assert_eq!(f.neg(e(0)), e(0));
        assert_eq!(f.pow(e(2), 4), e(1));
    }

    /// Schoolbook polynomial product followed by long division, bit by bit.
    fn poly_mul_mod_oracle(a: u32, b: u32, mask: u32) -> u32 {
        let mut prod = 0u64;
        for i in 0..32 {
            if (b >> i) & 1 == 1 {
                prod ^= (a as u64) << i;
            }
        }
        let m = mask as u64;
        let dm = 63 - m.leading_zeros();
        for bit in (dm..64).rev() {
            if (prod >> bit) & 1 == 1 {
                prod ^= m << (bit - dm);
            }
        }
        prod as u32
    }

    #[test]
    fn gf8_multiplication_matches_polynomial_division() {
        let f = Field::binary(3).unwrap();
        assert_eq!(poly_mul_mod_oracle(0b010, 0b100, 0b1011), 0b011);
        assert_eq!(f.mul(e(0b010), e(0b100)), e(0b011));
        for n in [2u32, 3, 4, 8, 9] {
            let f = Field::binary(n).unwrap();
            let mask = FieldSpec::default_mask(n).unwrap();
            let step = if n > 4 { 7 } else { 1 };
            for a in (0..f.order()).step_by(step) {
                for b in (0..f.order()).step_by(step) {
                    assert_eq!(f.mul(e(a), e(b)).value(), poly_mul_mod_oracle(a, b, mask));
                }
            }
        }
    }

    #[test]
    fn iteration_order_and_length() {
        assert_eq!(gf(3).elements().map(|x| x.value()).collect::<Vec<_>>(), [0, 1, 2]);
        let gf4 = FieldSpec::binary_with_mask(2, 0b111).build().unwrap();
        assert_eq!(gf4.elements().map(|x| x.value()).collect::<Vec<_>>(), [0, 1, 2, 3]);
        let seven: Vec<_> = gf(7).elements().collect();
        assert_eq!(seven.len(), 7);
        let mut dedup = seven.clone();
        dedup.dedup();
        assert_eq!(dedup, seven);
    }

    #[test]
    fn default_masks_are_irreducible() {
        for n in 1..=16 {
            let m = FieldSpec::default_mask(n).unwrap();
            assert_eq!(degree_gf2(m), n as i32);
            assert!(is_irreducible_gf2(m), "degree {n}");
        }
        assert_eq!(FieldSpec::default_mask(2), Some(0b111));
        assert_eq!(FieldSpec::default_mask(3), Some(0b1011));
        assert_eq!(FieldSpec::default_mask(4), Some(0b10011));
        assert_eq!(FieldSpec::default_mask(8), Some(0x11B));
    }

    #[test]
    fn rejects_invalid_fields() {
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(15).is_err());
        assert!(Field::prime(65537).is_err());
        assert!(Field::prime(65521).is_ok());
        // x^2 + 1 = (x + 1)^2
        assert!(FieldSpec::binary_with_mask(2, 0b101).build().is_err());
        // wrong degree
        assert!(FieldSpec::binary_with_mask(3, 0b111).build().is_err());
        assert!(FieldSpec::binary_with_mask(17, 0x2_0009).build().is_err());
    }

    #[test]
    fn division_by_zero() {
        let f = gf(7);
        assert!(matches!(f.inv(e(0)), Err(Error::DivisionByZero)));
        assert!(matches!(f.div(e(3), e(0)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn spec_text_round_trip() {
        for s in ["p:7", "2^3", "2^3:0x1", "2^4:0x19"] {
            let spec: std::result::Result<FieldSpec, _> = s.parse();
            if s == "2^3:0x1" {
                // parses, but fails validation
                assert!(spec.unwrap().build().is_err());
                continue;
            }
            assert_eq!(spec.unwrap().to_string(), s);
        }
        assert_eq!("2^3:0xB".parse::<FieldSpec>().unwrap().to_string(), "2^3");
        assert!("q:7".parse::<FieldSpec>().is_err());
        assert!("2^x".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn element_text() {
        let f = gf(5);
        assert_eq!(f.format(e(4)), "4");
        assert_eq!(f.parse("3").unwrap(), e(3));
        assert!(f.parse("5").is_err());
        let g = Field::binary(3).unwrap();
        assert_eq!(g.format(e(6)), "0x6");
        assert_eq!(g.parse("0x6").unwrap(), e(6));
        assert!(g.parse("0x8").is_err());
    }

    fn check_axioms(f: &Field) {
        let elems: Vec<_> = f.elements().collect();
        for &a in &elems {
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            for &b in &elems {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                if f.is_binary() {
                    let s = f.add(a, b);
                    assert_eq!(f.square(s), f.add(f.square(a), f.square(b)));
                }
                for &c in &elems {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for p in [2, 3, 5, 7, 11, 13] {
            check_axioms(&gf(p));
        }
        for n in 1..=4 {
            check_axioms(&Field::binary(n).unwrap());
        }
    }
}
