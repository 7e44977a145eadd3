//! Frequency function of the unit mass: `r_n = |n|` and `Mf(n) = 1/(2|n|+1)`.

use hlfreq::constructions::dirac;
use hlfreq::maxengine::{event_centered, event_uncentered};
use num_bigint::BigInt;

fn main() -> hlfreq::Result<()> {
    let f = dirac();
    println!("{:>4} {:>10} {:>4} {:>6}", "n", "Mf(n)", "r_n", "r~_n");
    for n in [-3i64, -1, 0, 1, 2, 10, 1000] {
        let n = BigInt::from(n);
        let c = event_centered(&f, &n)?;
        let u = event_uncentered(&f, &n)?;
        println!(
            "{:>4} {:>10} {:>4} {:>6}",
            n,
            c.max_value.render(),
            c.r_n,
            hlfreq::rational::format_rat(&u.r_tilde())
        );
    }
    Ok(())
}
