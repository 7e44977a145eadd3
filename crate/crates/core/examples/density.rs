//! Density table for the log-type construction, written to stdout as CSV.

use hlfreq::analysis::{density_series, write_density_csv, DensityOptions};
use hlfreq::constructions::{build_theorem27, Mode, DEFAULT_CEILING_BITS};
use hlfreq::growth::GrowthSpec;
use hlfreq::signal::AnySignal;
use num_bigint::BigInt;

fn main() -> hlfreq::Result<()> {
    let (built, _) = build_theorem27(&GrowthSpec::Log, 4, &Mode::PaperExact, false, DEFAULT_CEILING_BITS)?;
    let f = AnySignal::Blocks(built.blocks().expect("discrete").clone());
    let opts = DensityOptions {
        growth: Some(GrowthSpec::Log),
        ..DensityOptions::default()
    };
    let ns: Vec<BigInt> = [20u64, 200, 25_000, 509_423_456]
        .into_iter()
        .map(BigInt::from)
        .collect();
    let rows = density_series(&f, &ns, &opts)?;
    write_density_csv(&rows, std::io::stdout())?;
    Ok(())
}
