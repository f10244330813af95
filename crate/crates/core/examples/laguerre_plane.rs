//! The finite Laguerre plane over GF(5): points, generators, the cycle through
//! three points, and the double-ratio membership test.

use geocipher::field::Field;
use geocipher::laguerre::{dr_concyclic, LagGenerator, LagPoint, LaguerrePlane};

fn main() -> geocipher::Result<()> {
    let f = Field::prime(5)?;
    let plane = LaguerrePlane::new(f.clone());
    println!(
        "{} points, {} generators, {} cycles",
        plane.points().len(),
        plane.generators().len(),
        plane.cycles().count()
    );

    let pts = ["(0,1)", "(1,2)", "(3,0)"]
        .map(|s| LagPoint::from_text(&f, s))
        .into_iter()
        .collect::<geocipher::Result<Vec<_>>>()?;
    let cyc = plane.cycle_through(&pts[0], &pts[1], &pts[2])?;
    println!("cycle through {} {} {}: {}", pts[0].to_text(&f), pts[1].to_text(&f), pts[2].to_text(&f), cyc.to_text(&f));
    let on: Vec<String> = plane.cycle_points(&cyc).iter().map(|p| p.to_text(&f)).collect();
    println!("its points: {}", on.join(" "));
    println!("meets the distant generator at {}", plane.meet_generator(&cyc, LagGenerator::Distant).to_text(&f));

    let [a, b, c] = [0, 1, 2].map(|i| pts[i].as_dual().expect("finite"));
    for text in ["(2,0)", "(4,3)"] {
        let z = LagPoint::from_text(&f, text)?;
        let dr = dr_concyclic(&f, a, b, c, z.as_dual().expect("finite"))?;
        println!("{text}: on cycle {}, real double ratio {dr}", plane.incident(&z, &cyc));
    }
    Ok(())
}
