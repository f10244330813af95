//! Key counts per (plaintext, ciphertext) pair for both ciphers.

use geocipher::analysis::perfectness::{laguerre_perfectness_audit, minkowski_perfectness_audit};
use geocipher::field::Field;
use geocipher::laguerre_cipher::LagCipherConfig;
use geocipher::minkowski::MinkPoint;
use geocipher::minkowski_cipher::MinkowskiCipher;
use geocipher::report::{emit, Format};

fn main() -> geocipher::Result<()> {
    for f in [Field::prime(5)?, Field::prime(7)?, Field::binary(3)?] {
        let r = laguerre_perfectness_audit(&LagCipherConfig::with_default_generators(f)?);
        println!(
            "Laguerre over {}: keys per (m, c) in {}..{}, verdict {:?}",
            r.field, r.count_min, r.count_max, r.verdict
        );
    }

    let f = Field::prime(7)?;
    let cipher = MinkowskiCipher::new(f.clone());
    let mut pts = [MinkPoint::default(); 3];
    for (slot, t) in pts.iter_mut().zip(["(0,1)", "(1,2)", "(2,4)"]) {
        *slot = MinkPoint::from_text(&f, t)?;
    }
    let msg = cipher.message(pts)?;
    print!("\n{}", emit(&minkowski_perfectness_audit(&cipher, &msg)?, Format::Md)?);
    Ok(())
}
