//! Maximal functions of a step function on the line.

use hlfreq::continuum::{maximal_centered_cont, maximal_uncentered_cont, StepFunction};
use hlfreq::rational::{format_rat, rat};

fn main() -> hlfreq::Result<()> {
    let f = StepFunction::indicator(rat(-1, 1), rat(1, 1), rat(1, 1))?;
    for x in [rat(0, 1), rat(1, 1), rat(2, 1), rat(7, 2)] {
        let c = maximal_centered_cont(&f, &x)?;
        let u = maximal_uncentered_cont(&f, &x)?;
        println!(
            "x = {}: Mf = {} at r = {}, uncentered {} at r = {}",
            format_rat(&x),
            format_rat(&c.max_value),
            format_rat(&c.radius),
            format_rat(&u.max_value),
            format_rat(&u.radius)
        );
    }
    Ok(())
}
