//! Point and cycle counts of both planes against their closed forms.

use geocipher::analysis::census::{laguerre_census, minkowski_census};
use geocipher::field::Field;
use geocipher::report::{emit, Format};

fn main() -> geocipher::Result<()> {
    for q in [3u32, 4, 5, 7, 8] {
        let f = if q.is_power_of_two() { Field::binary(q.trailing_zeros())? } else { Field::prime(q)? };
        let lag = laguerre_census(&f);
        let mink = minkowski_census(&f);
        println!(
            "q={q}: Laguerre {} points / {} cycles, Minkowski {} points / {} cycles, all match: {}",
            lag.measured("points").unwrap_or(0),
            lag.measured("cycles").unwrap_or(0),
            mink.measured("points").unwrap_or(0),
            mink.measured("cycles").unwrap_or(0),
            lag.all_pass() && mink.all_pass()
        );
    }
    print!("{}", emit(&minkowski_census(&Field::prime(5)?), Format::Md)?);
    Ok(())
}
