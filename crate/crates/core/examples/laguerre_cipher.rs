//! Encrypt and decrypt field elements with the Laguerre cipher over GF(5),
//! then round-trip a generated key through its JSON key file.

use geocipher::field::Field;
use geocipher::laguerre_cipher::{LagCipherConfig, LagKey, LagKeyFile};

fn main() -> geocipher::Result<()> {
    let f = Field::prime(5)?;
    let cfg = LagCipherConfig::with_default_generators(f.clone())?;
    let [a, b] = cfg.key_coefficients();
    println!(
        "c = {}*m + {}*k + {}*l over {}",
        f.format(cfg.lambda()),
        f.format(a),
        f.format(b),
        f.spec()
    );

    let key = LagKey::new(f.parse("1")?, f.parse("3")?);
    for m in f.elements() {
        let c = cfg.encrypt(&key, m);
        assert_eq!(cfg.decrypt(&key, c), m);
        println!("m = {} -> c = {}", f.format(m), f.format(c));
    }

    let drawn = cfg.keygen(42);
    let json = serde_json::to_string(&LagKeyFile::new(&cfg, &drawn))?;
    println!("key file: {json}");
    let (cfg2, key2) = serde_json::from_str::<LagKeyFile>(&json)?.load()?;
    assert_eq!((cfg2.generators(), key2), (cfg.generators(), drawn));
    Ok(())
}
