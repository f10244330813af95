//! Avalanche matrices: Laguerre in both scopes, the Minkowski full cipher at
//! n=2, and the Minkowski equation model at n=3.

use geocipher::analysis::completeness::{
    laguerre_completeness_audit, minkowski_equation_audit, minkowski_full_cipher_audit, replay_minkowski, LagScope,
};
use geocipher::field::Field;
use geocipher::laguerre_cipher::LagCipherConfig;
use geocipher::minkowski_cipher::MinkowskiCipher;
use geocipher::report::{emit, Format};

fn main() -> geocipher::Result<()> {
    let cfg = LagCipherConfig::with_default_generators(Field::binary(3)?)?;
    for scope in [LagScope::FixedGenerators, LagScope::LambdaUniversal] {
        let r = laguerre_completeness_audit(&cfg, scope)?;
        println!("{}", emit(&r, Format::Md)?);
    }

    let cipher = MinkowskiCipher::new(Field::binary(2)?);
    let full = minkowski_full_cipher_audit(&cipher, 0, 0)?;
    println!(
        "Minkowski full cipher over {}: {} pairs, {} true cells, verdict {:?}, witnesses replay: {}",
        full.field,
        full.pairs,
        full.matrix.true_cells(),
        full.verdict,
        replay_minkowski(&cipher, &full)
    );

    print!("\n{}", emit(&minkowski_equation_audit(&Field::binary(3)?)?, Format::Md)?);
    Ok(())
}
