//! Arithmetic in GF(7) and GF(2^3), plus dual numbers over GF(5).

use geocipher::field::{DualNumber, Field};

fn main() -> geocipher::Result<()> {
    let p7 = Field::prime(7)?;
    let (a, b) = (p7.parse("3")?, p7.parse("5")?);
    println!("GF(7): 3 + 5 = {}, 3 * 5 = {}, 3 / 5 = {}", p7.format(p7.add(a, b)), p7.format(p7.mul(a, b)), p7.format(p7.div(a, b)?));

    let g8: Field = "2^3".parse::<geocipher::field::FieldSpec>()?.build()?;
    let x = g8.parse("0x2")?;
    let powers: Vec<String> = (0..7).map(|e| g8.format(g8.pow(x, e))).collect();
    println!("GF(2^3): powers of x = {}", powers.join(" "));
    println!("GF(2^3): 0x6 / 0x3 = {}", g8.format(g8.div(g8.parse("0x6")?, g8.parse("0x3")?)?));

    let p5 = Field::prime(5)?;
    let u = DualNumber::new(p5.parse("2")?, p5.parse("3")?);
    let v = DualNumber::new(p5.parse("4")?, p5.parse("1")?);
    println!("dual: ({}) * ({}) = {}", p5.format_dual(u), p5.format_dual(v), p5.format_dual(p5.dual_mul(u, v)));
    println!("dual: ({})^-1 = {}", p5.format_dual(u), p5.format_dual(p5.dual_inv(u)?));
    Ok(())
}
