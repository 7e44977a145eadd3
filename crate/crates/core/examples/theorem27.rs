//! Builds the log-type construction with four blocks, re-checks its
//! certificate and confirms that the frequency function vanishes on a block.

use hlfreq::analysis::certify_block_zero;
use hlfreq::constructions::{build_theorem27, recheck, recheck_passes, Mode, DEFAULT_CEILING_BITS};
use hlfreq::growth::GrowthSpec;
use hlfreq::maxengine::event_centered;

fn main() -> hlfreq::Result<()> {
    let (built, cert) = build_theorem27(&GrowthSpec::Log, 4, &Mode::PaperExact, false, DEFAULT_CEILING_BITS)?;
    let f = built.blocks().expect("discrete");
    for (k, (n, l)) in cert.n.iter().zip(&cert.l).enumerate() {
        println!("k = {}: N = {n}, L = {l}, a = {}", k + 1, cert.amplitudes[k]);
    }
    println!("re-check passes: {}", recheck_passes(&recheck(&cert)?, true));
    let b = &f.blocks()[2];
    let mid = (&b.start + &b.end) / 2u32;
    let c = event_centered(f, &mid)?;
    println!("at n = {mid}: Mf = {}, r_n = {}", c.max_value.render(), c.r_n);
    for i in 0..f.blocks().len() {
        println!(
            "block {} has r_n = 0 throughout: {}",
            i + 1,
            certify_block_zero(f, i, false)?
        );
    }
    Ok(())
}
