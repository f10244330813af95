//! Encrypt a three-point message on a hyperbola over GF(5), show which branch
//! each point took, and draw a fresh valid key by rejection sampling.

use geocipher::field::Field;
use geocipher::minkowski::MinkPoint;
use geocipher::minkowski_cipher::{MinkKey, MinkowskiCipher, DEFAULT_MAX_ATTEMPTS};

fn points(f: &Field, texts: [&str; 3]) -> geocipher::Result<[MinkPoint; 3]> {
    let mut out = [MinkPoint::default(); 3];
    for (slot, t) in out.iter_mut().zip(texts) {
        *slot = MinkPoint::from_text(f, t)?;
    }
    Ok(out)
}

fn main() -> geocipher::Result<()> {
    let f = Field::prime(5)?;
    let cipher = MinkowskiCipher::new(f.clone());
    let msg = cipher.message(points(&f, ["(0,1)", "(1,2)", "(2,4)"])?)?;
    println!("message spans {}", msg.cycle().to_text(&f));

    let key = MinkKey::new(points(&f, ["(1,3)", "(0,3)", "(0,3)"])?);
    let (ct, branches) = cipher.encrypt_traced(&msg, &key)?;
    for ((m, c), b) in msg.points().iter().zip(ct.points()).zip(branches) {
        println!("{} -> {} ({b:?})", m.to_text(&f), c.to_text(&f));
    }
    assert_eq!(cipher.decrypt(&ct, &key)?, msg);

    let bad = MinkKey::new(points(&f, ["(1,2)", "(0,3)", "(0,3)"])?);
    if let Err(e) = cipher.encrypt(&msg, &bad) {
        println!("rejected: {e}");
    }

    let drawn = cipher.keygen(&msg, 7, DEFAULT_MAX_ATTEMPTS)?;
    let text: Vec<String> = drawn.key.points.iter().map(|p| p.to_text(&f)).collect();
    println!("drawn key {} after {} attempts", text.join(" "), drawn.attempts);
    Ok(())
}
