// Distribution summary and the significance machinery.

use std::error::Error;

use veritrans::stats::{
    bootstrap_ci_bca, cliffs_delta, cliffs_magnitude, hoeffding_bound, summarize, wilcoxon_signed_rank,
    BootstrapConfig, Statistic,
};

pub fn run() -> Result<(), Box<dyn Error>> {
    let baseline = [62.0, 71.5, 80.2, 55.0, 90.1, 67.3, 74.8, 81.0, 59.9, 88.4, 70.0, 77.7];
    let tuned = [70.4, 79.0, 86.1, 61.2, 93.5, 75.0, 80.1, 85.5, 66.0, 90.2, 78.3, 84.0];

    let summary = summarize(&tuned, &[60.0, 75.0, 90.0])?;
    println!("{}", serde_json::to_string_pretty(&summary)?);

    let median_ci = bootstrap_ci_bca(&tuned, Statistic::Median, &BootstrapConfig { resamples: 5000, ..Default::default() })?;
    println!("median 95% CI: [{:.2}, {:.2}]", median_ci.0, median_ci.1);

    let w = wilcoxon_signed_rank(&baseline, &tuned)?;
    println!("wilcoxon W={} p={:.6} exact={} median delta={}", w.w, w.p_value, w.exact, w.median_delta);

    let delta = cliffs_delta(&tuned, &baseline)?;
    println!("cliff's delta {delta:.3} ({:?})", cliffs_magnitude(delta));

    println!("hoeffding n=2100, range 100, eps 5: {:.3e}", hoeffding_bound(2100, 100.0, 5.0)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
