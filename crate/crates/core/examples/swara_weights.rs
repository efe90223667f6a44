//! Derive criterion weights from three experts' ranked judgments.
//!
//!     cargo run --example swara_weights

use zrisk::fuzzy::{ImportanceTerm as I, ReliabilityTerm as R};
use zrisk::swara::{derive_weights, CriterionJudgment as J, Recurrence, SwaraOptions};

fn main() -> zrisk::Result<()> {
    let judgments = vec![
        J::top("E1", "S"),
        J::ranked("E1", "D", 2, I::ModeratelyLess, R::High),
        J::ranked("E1", "O", 3, I::Less, R::VeryHigh),
        J::top("E2", "S"),
        J::ranked("E2", "O", 2, I::ModeratelyLess, R::Medium),
        J::ranked("E2", "D", 3, I::Less, R::High),
        J::top("E3", "D"),
        J::ranked("E3", "S", 2, I::EqualImportance, R::High),
        J::ranked("E3", "O", 3, I::VeryLess, R::High),
    ];

    let out = derive_weights(&judgments, SwaraOptions::default())?;
    let w = &out.weights;
    println!("{:<4}{:>28}{:>28}{:>8}", "", "q", "w", "crisp");
    for i in 0..w.criteria.len() {
        let (q, fw) = (format!("{:.4}", w.fuzzy_q[i]), format!("{:.4}", w.fuzzy_w[i]));
        println!("{:<4}{q:>28}{fw:>28}{:>8.4}", w.criteria[i], w.crisp_w[i]);
    }

    // the literal q_j = q_{j-1} / z form flips the ordering
    let opts = SwaraOptions { recurrence: Recurrence::Literal, ..Default::default() };
    let lit = derive_weights(&judgments, opts)?.weights;
    println!("\nliteral recurrence: {:?}", lit.criteria.iter().zip(&lit.crisp_w).collect::<Vec<_>>());
    Ok(())
}
