//! Writes a construction and its certificate as JSON, then reads both back.

use hlfreq::constructions::{build_theorem29_linf, recheck, Mode};
use hlfreq::io::{certificate_from_json, certificate_to_json, signal_file_from_json, signal_to_json};
use hlfreq::signal::{AnySignal, Caps};

fn main() -> hlfreq::Result<()> {
    let (f, cert) = build_theorem29_linf(4, &Mode::PaperExact)?;
    let sig = signal_to_json(&AnySignal::Blocks(f));
    let cj = certificate_to_json(&cert);
    println!("{}", serde_json::to_string_pretty(&cj["conditions"])?);
    let back = certificate_from_json(&cj)?;
    let checks = recheck(&back)?;
    println!(
        "round trip equal: {}, {} conditions re-checked",
        back == cert,
        checks.len()
    );
    signal_file_from_json(&sig, &Caps::default())?;
    Ok(())
}
