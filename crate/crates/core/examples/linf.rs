//! The bounded construction at scale `N_5 = 2^10000`: `r_{N_k} = L_k`.

use hlfreq::constructions::{build_theorem29_linf, Mode};
use hlfreq::maxengine::event_centered;
use hlfreq::rational::{format_sci, Rat, Rounding};

fn main() -> hlfreq::Result<()> {
    let (f, cert) = build_theorem29_linf(5, &Mode::PaperExact)?;
    for k in 2..=4usize {
        let n = &cert.n[k - 1];
        let c = event_centered(&f, n)?;
        let ratio = Rat::new(c.r_n.clone(), n.clone());
        println!(
            "k = {k}: N has {} bits, r_N == L: {}, r_N / N = {}",
            n.bits(),
            c.r_n == cert.l[k - 1],
            format_sci(&ratio, 12, Rounding::Down)
        );
    }
    Ok(())
}
