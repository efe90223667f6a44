//! Reliability, Kruskal-Wallis and moderated regression on a synthetic
//! 5-point questionnaire.
//!
//!     cargo run --example survey_statistics

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use zrisk::stats::{
    cronbach_alpha, kruskal_wallis, mean_ranks, moderated_regression, split_by_strategy, ItemMatrix,
    ModelPreset, PresetForm, STRATEGY_THRESHOLD,
};

fn likert(x: f64) -> f64 {
    x.round().clamp(1.0, 5.0)
}

fn main() -> zrisk::Result<()> {
    let mut rng = StdRng::seed_from_u64(42);
    let items: Vec<String> = ["P", "CLS", "DS", "FMCS", "NFMCS"].map(String::from).to_vec();
    let mut rows = Vec::new();
    for _ in 0..120 {
        let cls = rng.gen_range(1.0..5.0);
        let ds = rng.gen_range(1.0..5.0);
        let fm = rng.gen_range(1.0..5.0);
        let nf = likert(0.6 * fm + rng.gen_range(0.0..2.0));
        let p = likert(0.8 + 0.35 * cls + 0.25 * fm + 0.1 * cls * fm / 5.0 + rng.gen_range(-0.7..0.7));
        rows.push(vec![p, likert(cls), likert(ds), likert(fm), nf]);
    }
    let ids = (1..=rows.len()).map(|i| format!("R{i}")).collect();
    let data = ItemMatrix::new(ids, items.clone(), rows)?;

    let alpha = cronbach_alpha(&data)?;
    println!("alpha = {:.3}", alpha.alpha);
    for d in &alpha.items {
        println!("  {:<6} if deleted {:?}", d.item, d.alpha_if_deleted.map(|a| (a * 1000.0).round() / 1000.0));
    }

    let kw = kruskal_wallis(&data.columns())?;
    println!("H = {:.3}, df = {}, p = {:.4}", kw.h, kw.df, kw.p);
    println!("mean ranks {:?}", mean_ranks(&data)?.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>());

    for preset in ModelPreset::ALL {
        let fit = moderated_regression(&preset.spec(PresetForm::Corrected), &data)?;
        println!(
            "{:<10} beta {:?}  R2 {:.3} (main effects {:.3})",
            preset.name(),
            fit.beta.map(|b| (b * 1000.0).round() / 1000.0),
            fit.r_squared,
            fit.r_squared_main_effects
        );
    }

    let split = split_by_strategy(&data.column_by_name("CLS").unwrap(), STRATEGY_THRESHOLD);
    println!("cost leadership {} / differentiation {}", split.cost_leadership.len(), split.differentiation.len());
    Ok(())
}
