//! Brute-force axiom checks for both planes, and what a counterexample looks
//! like once a cycle is removed.

use geocipher::analysis::axioms::{check, laguerre_axiom_audit, minkowski_axiom_audit, recheck, Axiom, Scope};
use geocipher::analysis::incidence::Incidence;
use geocipher::field::Field;
use geocipher::laguerre::LaguerrePlane;
use geocipher::report::{emit, Format};

fn main() -> geocipher::Result<()> {
    let f5 = Field::prime(5)?;
    print!("{}", emit(&laguerre_axiom_audit(&f5), Format::Md)?);
    println!();
    print!("{}", emit(&minkowski_axiom_audit(&Field::prime(3)?, true), Format::Md)?);

    let broken = Incidence::laguerre(&LaguerrePlane::new(f5)).without_cycle(0);
    let v = check(&broken, Axiom::L2, Scope::Full);
    if let Some(cx) = &v.counterexample {
        println!("\nwithout its first cycle L2 fails: {}", cx.description);
        println!("counterexample rechecks: {}", recheck(&broken, Axiom::L2, Scope::Full, cx));
    }
    Ok(())
}
