//! The Laguerre cipher.
//!
//! Messages, ciphertexts and the two key coordinates live on four fixed finite
//! generators `x = g1 .. g4`. A message `m` is the point `(g1, m)`, the key is
//! the pair of points `(g3, k)`, `(g4, l)`, and the ciphertext is the
//! y-coordinate where the cycle through those three points meets `x = g2`.
//! Decryption swaps the roles of `g1` and `g2`.
//!
//! Since the cycle is a parabola through three points, encryption collapses to
//! the Lagrange form `c = λ·m + λ3·k + λ4·l`. The message coefficient λ is
//! fixed by the generators and is exposed as [`LagCipherConfig::lambda`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::laguerre::{LagGenerator, LagPoint, LaguerrePlane};

#[derive(Debug, Clone)]
pub struct LagCipherConfig {
    plane: LaguerrePlane,
    g: [FieldElement; 4],
    lambda: FieldElement,
    key_coeffs: [FieldElement; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LagKey {
    pub k: FieldElement,
    pub l: FieldElement,
}

impl LagKey {
    pub fn new(k: FieldElement, l: FieldElement) -> Self {
        LagKey { k, l }
    }
}

impl LagCipherConfig {
    pub fn new(field: Field, g: [FieldElement; 4]) -> Result<Self> {
        if field.order() < 4 {
            return Err(Error::InvalidConfig(format!(
                "the cipher needs four finite generators, but q = {}",
                field.order()
            )));
        }
        for i in 0..4 {
            if g[i].value() >= field.order() {
                return Err(Error::InvalidConfig(format!(
                    "generator position {} is not a field element",
                    g[i].value()
                )));
            }
            for j in (i + 1)..4 {
                if g[i] == g[j] {
                    return Err(Error::InvalidConfig(
                        "generator positions must be pairwise distinct".into(),
                    ));
                }
            }
        }
        let f = &field;
        let basis_at_g2 = |i: usize, j: usize, k: usize| -> Result<FieldElement> {
            let num = f.mul(f.sub(g[1], g[j]), f.sub(g[1], g[k]));
            let den = f.mul(f.sub(g[i], g[j]), f.sub(g[i], g[k]));
            f.div(num, den)
        };
        let lambda = basis_at_g2(0, 2, 3)?;
        let key_coeffs = [basis_at_g2(2, 0, 3)?, basis_at_g2(3, 0, 2)?];
        if lambda.is_zero() {
            return Err(Error::InvalidConfig("lambda vanished".into()));
        }
        Ok(LagCipherConfig {
            plane: LaguerrePlane::new(field),
            g,
            lambda,
            key_coeffs,
        })
    }

    /// Generators at the four smallest canonical elements.
    pub fn with_default_generators(field: Field) -> Result<Self> {
        let g = [0, 1, 2, 3].map(|v| field.element(v).unwrap_or_default());
        Self::new(field, g)
    }

    pub fn field(&self) -> &Field {
        self.plane.field()
    }

    pub fn plane(&self) -> &LaguerrePlane {
        &self.plane
    }

    pub fn generators(&self) -> [FieldElement; 4] {
        self.g
    }

    /// Coefficient of the message in the closed form.
    pub fn lambda(&self) -> FieldElement {
        self.lambda
    }

    /// Coefficients of `k` and `l` in the closed form.
    pub fn key_coefficients(&self) -> [FieldElement; 2] {
        self.key_coeffs
    }

    fn through_key(&self, key: &LagKey, x: FieldElement, y: FieldElement, target: FieldElement) -> FieldElement {
        let k = LagPoint::finite(self.g[2], key.k);
        let l = LagPoint::finite(self.g[3], key.l);
        let cycle = self
            .plane
            .cycle_through(&k, &l, &LagPoint::finite(x, y))
            .expect("generator positions are pairwise distinct");
        match self.plane.meet_generator(&cycle, LagGenerator::Finite(target)) {
            LagPoint::Finite { y, .. } => y,
            LagPoint::Distant(_) => unreachable!("finite generator"),
        }
    }

    pub fn encrypt(&self, key: &LagKey, m: FieldElement) -> FieldElement {
        self.through_key(key, self.g[0], m, self.g[1])
    }

    pub fn decrypt(&self, key: &LagKey, c: FieldElement) -> FieldElement {
        self.through_key(key, self.g[1], c, self.g[0])
    }

    /// `λ·m + λ3·k + λ4·l`.
    pub fn encrypt_closed_form(&self, key: &LagKey, m: FieldElement) -> FieldElement {
        let f = self.field();
        f.sum([
            f.mul(self.lambda, m),
            f.mul(self.key_coeffs[0], key.k),
            f.mul(self.key_coeffs[1], key.l),
        ])
    }

    /// Uniform key from ChaCha8 seeded with `seed`.
    pub fn keygen(&self, seed: u64) -> LagKey {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = self.field().random(&mut rng);
        let l = self.field().random(&mut rng);
        LagKey { k, l }
    }

    /// Every key in the q² key space, ordered by (k, l).
    pub fn keys(&self) -> impl Iterator<Item = LagKey> + '_ {
        let f = self.field();
        f.elements()
            .flat_map(move |k| f.elements().map(move |l| LagKey { k, l }))
    }
}

/// On-disk key file: `{"field":"p:5","g":[0,1,2,3],"k":"1","l":"3"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagKeyFile {
    pub field: crate::field::FieldSpec,
    pub g: Vec<u32>,
    pub k: String,
    pub l: String,
}

impl LagKeyFile {
    pub fn new(cfg: &LagCipherConfig, key: &LagKey) -> Self {
        let f = cfg.field();
        LagKeyFile {
            field: f.spec(),
            g: cfg.g.iter().map(|x| x.value()).collect(),
            k: f.format(key.k),
            l: f.format(key.l),
        }
    }

    pub fn load(&self) -> Result<(LagCipherConfig, LagKey)> {
        let field = self.field.build()?;
        if self.g.len() != 4 {
            return Err(Error::InvalidConfig("exactly four generator positions required".into()));
        }
        let mut g = [FieldElement::ZERO; 4];
        for (slot, &v) in g.iter_mut().zip(&self.g) {
            *slot = field
                .element(v as u64)
                .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        }
        let key = LagKey::new(field.parse(&self.k)?, field.parse(&self.l)?);
        Ok((LagCipherConfig::new(field, g)?, key))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg5() -> LagCipherConfig {
        LagCipherConfig::with_default_generators(Field::prime(5).unwrap()).unwrap()
    }

    fn e(f: &Field, v: u32) -> FieldElement {
        f.element(v as u64).unwrap()
    }

    #[test]
    fn encryption_example() {
        let cfg = cfg5();
        let f = cfg.field().clone();
        let key = LagKey::new(e(&f, 1), e(&f, 3));
        assert_eq!(cfg.encrypt(&key, e(&f, 4)), e(&f, 3));
        assert_eq!(cfg.encrypt_closed_form(&key, e(&f, 4)), e(&f, 3));
        assert_eq!(cfg.lambda(), e(&f, 2));
        assert_eq!(cfg.key_coefficients(), [e(&f, 1), e(&f, 3)]);
        let zero = LagKey::new(e(&f, 0), e(&f, 0));
        assert_eq!(cfg.encrypt(&zero, e(&f, 0)), e(&f, 0));
    }

    #[test]
    fn decryption_example() {
        let cfg = cfg5();
        let f = cfg.field().clone();
        assert_eq!(cfg.decrypt(&LagKey::new(e(&f, 1), e(&f, 3)), e(&f, 3)), e(&f, 4));
        assert_eq!(cfg.decrypt(&LagKey::new(e(&f, 0), e(&f, 0)), e(&f, 0)), e(&f, 0));
    }

    #[test]
    fn round_trip_gf7() {
        let cfg = LagCipherConfig::with_default_generators(Field::prime(7).unwrap()).unwrap();
        for seed in 0..20 {
            let key = cfg.keygen(seed);
            for m in cfg.field().elements() {
                assert_eq!(cfg.decrypt(&key, cfg.encrypt(&key, m)), m);
            }
        }
    }

    #[test]
    fn config_validation() {
        let f3 = Field::prime(3).unwrap();
        assert!(LagCipherConfig::with_default_generators(f3).is_err());
        let f = Field::prime(5).unwrap();
        let dup = [0, 1, 1, 3].map(|v| e(&f, v));
        assert!(LagCipherConfig::new(f.clone(), dup).is_err());
    }

    #[test]
    fn keygen_is_deterministic() {
        let cfg = cfg5();
        assert_eq!(cfg.keygen(42), cfg.keygen(42));
        for seed in 0..100 {
            let key = cfg.keygen(seed);
            assert!(key.k.value() < 5 && key.l.value() < 5);
        }
    }

    #[test]
    fn keygen_is_uniform() {
        // 10^4 draws over 25 keys: expected 400 each, sigma = sqrt(400 * 24/25)
        let cfg = cfg5();
        let mut counts = [0u32; 25];
        for seed in 0..10_000 {
            let key = cfg.keygen(seed);
            counts[(key.k.value() * 5 + key.l.value()) as usize] += 1;
        }
        let expected = 400.0;
        let sigma = (10_000.0f64 * (1.0 / 25.0) * (24.0 / 25.0)).sqrt();
        for c in counts {
            assert!((c as f64 - expected).abs() <= 5.0 * sigma, "count {c}");
        }
    }

    #[test]
    fn key_file_round_trip() {
        let cfg = cfg5();
        let f = cfg.field().clone();
        let key = LagKey::new(e(&f, 1), e(&f, 3));
        let file = LagKeyFile::new(&cfg, &key);
        let json = serde_json::to_string(&file).unwrap();
        assert_eq!(json, r#"{"field":"p:5","g":[0,1,2,3],"k":"1","l":"3"}"#);
        let (cfg2, key2) = serde_json::from_str::<LagKeyFile>(&json).unwrap().load().unwrap();
        assert_eq!(cfg2.generators(), cfg.generators());
        assert_eq!(key2, key);
    }
}
