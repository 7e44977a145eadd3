//! Power-law blocks in relaxed mode, probed at `n_k = N_k + L_k + 1`.

use hlfreq::constructions::{build_theorem29_lp, Growth, Mode, Relaxation};
use hlfreq::maxengine::event_centered;
use hlfreq::rational::rat;
use hlfreq::signal::Caps;
use num_bigint::BigInt;

fn main() -> hlfreq::Result<()> {
    let mode = Mode::Relaxed(Relaxation {
        n1: Some(BigInt::from(100)),
        growth: Some(Growth::Factor(BigInt::from(10))),
    });
    let (f, cert) = build_theorem29_lp(&rat(2, 1), &rat(3, 5), 4, &mode, &Caps::default())?;
    for c in cert.conditions.iter().filter(|c| c.status.label() != "satisfied") {
        println!("{}: {} ({})", c.name, c.status.label(), c.note);
    }
    for (k, n) in cert.points.iter().enumerate() {
        let c = event_centered(&f, n)?;
        println!(
            "k = {}: n = {n}, r_n = {}, L = {}, Mf in {}, certified {}",
            k + 1,
            c.r_n,
            cert.l[k],
            c.max_value.render(),
            c.certified
        );
    }
    Ok(())
}
