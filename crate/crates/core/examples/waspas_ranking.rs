//! Rank four suppliers with Z-WASPAS and with the fuzzy baseline.
//!
//!     cargo run --example waspas_ranking

use zrisk::fuzzy::{RatingTerm as T, ReliabilityTerm as R};
use zrisk::waspas::{run_waspas, Criterion, Direction, MatrixMode, RatingJudgment, WaspasInput, DEFAULT_TIE_TOLERANCE};

fn main() -> zrisk::Result<()> {
    let criteria = vec![
        Criterion::beneficial("quality"),
        Criterion::beneficial("capacity"),
        Criterion { id: "cost".into(), name: "cost".into(), direction: Direction::NonBeneficial },
    ];
    let alternatives: Vec<String> = ["A1", "A2", "A3", "A4"].map(String::from).to_vec();
    let grid = [
        [(T::Good, R::High), (T::Fair, R::High), (T::Poor, R::VeryHigh)],
        [(T::VeryGood, R::Weak), (T::Good, R::Medium), (T::Fair, R::Medium)],
        [(T::MediumGood, R::VeryHigh), (T::MediumGood, R::High), (T::MediumPoor, R::High)],
        [(T::Fair, R::High), (T::VeryGood, R::High), (T::Good, R::High)],
    ];
    let mut judgments = Vec::new();
    for (a, row) in alternatives.iter().zip(grid) {
        for (c, (t, r)) in criteria.iter().zip(row) {
            judgments.push(RatingJudgment::new("E1", a, &c.id, t, Some(r)));
        }
    }
    let input = WaspasInput { alternatives, criteria, judgments };
    let weights = [0.5, 0.2, 0.3];

    for mode in [MatrixMode::Z, MatrixMode::Fuzzy] {
        let run = run_waspas(&input, &weights, mode, DEFAULT_TIE_TOLERANCE)?;
        println!("{mode:?}  lambda = {:.4}", run.ranking.lambda);
        for s in &run.ranking.scores {
            println!("  {}  K = {:.4}  rank {}", s.id, s.k, s.rank);
        }
    }
    Ok(())
}
