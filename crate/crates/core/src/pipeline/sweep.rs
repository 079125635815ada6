use serde::{Deserialize, Serialize};

use super::rows::StageRow;
use super::{compile_formula, PipelineError};
use crate::validate::{accept, structural_check, SimilarityScore, ValidationError};

/// Which acceptance gate a sweep applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gate {
    /// `similarity ≥ τ` only.
    Similarity,
    /// The full policy: similarity plus the structural checks on the
    /// recompiled formula.
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub tau: f64,
    pub coverage: f64,
    /// Correctness on accepted items that have a gold label; `None` when
    /// there are none.
    pub accuracy: Option<f64>,
    pub accepted_count: usize,
    pub total_count: usize,
}

/// `tau_min, tau_min + step, …` up to and including `tau_max` (with a
/// small tolerance so `60..95 step 5` ends at 95).
pub fn tau_range(tau_min: f64, tau_max: f64, step: f64) -> Result<Vec<f64>, PipelineError> {
    if step.is_nan() || step <= 0.0 || !tau_min.is_finite() || !tau_max.is_finite() || tau_min > tau_max {
        return Err(PipelineError::Config(format!(
            "bad τ range {tau_min}..{tau_max} step {step}"
        )));
    }
    let count = ((tau_max - tau_min) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|i| tau_min + i as f64 * step).collect())
}

fn check_tau(tau: f64) -> Result<(), PipelineError> {
    if (0.0..=100.0).contains(&tau) {
        Ok(())
    } else {
        Err(ValidationError::TauOutOfRange(tau).into())
    }
}

/// Acceptance test for one row under `gate`; `None` means "never accepted".
fn row_gate(row: &StageRow, gate: Gate) -> Option<Box<dyn Fn(f64) -> bool + '_>> {
    let similarity = row.similarity.filter(|_| row.status.is_ok())?;
    match gate {
        Gate::Similarity => Some(Box::new(move |tau| similarity >= tau)),
        Gate::Full => {
            let compiled = compile_formula(&row.generated_formula).ok()?;
            let verdict = structural_check(&compiled.cnf, &compiled.variables, &row.declared_vars());
            let score = SimilarityScore::new(similarity);
            Some(Box::new(move |tau| {
                accept(score, &verdict, tau).is_ok_and(|d| d.accepted)
            }))
        }
    }
}

/// One [`SweepPoint`] per τ. Rows without a similarity score, or whose
/// status is not `OK`, count toward the total and are never accepted.
pub fn tau_sweep(rows: &[StageRow], taus: &[f64], gate: Gate) -> Result<Vec<SweepPoint>, PipelineError> {
    if rows.is_empty() {
        return Err(PipelineError::EmptyInput);
    }
    for &tau in taus {
        check_tau(tau)?;
    }
    let gates: Vec<_> = rows.iter().map(|r| row_gate(r, gate)).collect();
    Ok(taus
        .iter()
        .map(|&tau| {
            let accepted: Vec<&StageRow> = rows
                .iter()
                .zip(&gates)
                .filter(|(_, g)| g.as_ref().is_some_and(|g| g(tau)))
                .map(|(r, _)| r)
                .collect();
            let judged: Vec<bool> = accepted.iter().filter_map(|r| r.is_correct()).collect();
            let accuracy = (!judged.is_empty())
                .then(|| judged.iter().filter(|&&c| c).count() as f64 / judged.len() as f64);
            SweepPoint {
                tau,
                coverage: accepted.len() as f64 / rows.len() as f64,
                accuracy,
                accepted_count: accepted.len(),
                total_count: rows.len(),
            }
        })
        .collect())
}

/// SAT/UNSAT correctness over rows with a gold label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Correctness {
    pub overall: f64,
    /// `None` when the class does not occur.
    pub sat_only: Option<f64>,
    pub unsat_only: Option<f64>,
    pub labelled: usize,
    pub correct: usize,
    /// Labelled rows without a prediction; counted as incorrect above.
    pub unpredicted: usize,
    /// Rows without a gold label, left out of every figure.
    pub unlabelled: usize,
}

pub fn score_correctness(rows: &[StageRow]) -> Result<Correctness, PipelineError> {
    let labelled: Vec<&StageRow> = rows.iter().filter(|r| r.gold_label.is_some()).collect();
    if labelled.is_empty() {
        return Err(PipelineError::EmptyInput);
    }
    let rate = |sat: Option<bool>| {
        let class: Vec<_> = labelled
            .iter()
            .filter(|r| sat.is_none_or(|s| r.gold_label.is_some_and(|g| g.is_sat() == s)))
            .collect();
        let correct = class.iter().filter(|r| r.is_correct() == Some(true)).count();
        (!class.is_empty()).then(|| correct as f64 / class.len() as f64)
    };
    let correct = labelled.iter().filter(|r| r.is_correct() == Some(true)).count();
    Ok(Correctness {
        overall: correct as f64 / labelled.len() as f64,
        sat_only: rate(Some(true)),
        unsat_only: rate(Some(false)),
        labelled: labelled.len(),
        correct,
        unpredicted: labelled.iter().filter(|r| r.pred_from_script.is_none()).count(),
        unlabelled: rows.len() - labelled.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::Status;
    use crate::sat::Satisfiability::{Sat, Unsat};
    use proptest::prelude::*;

    fn row(sim: Option<f64>, gold: Option<bool>, pred: Option<bool>) -> StageRow {
        let label = |b: bool| if b { Sat } else { Unsat };
        StageRow {
            id: "r".into(),
            generated_formula: "a | b".into(),
            variable_mapping: "a: x\nb: y".into(),
            similarity: sim,
            gold_label: gold.map(label),
            pred_from_script: pred.map(label),
            ..Default::default()
        }
    }

    #[test]
    fn four_item_fixture() {
        let rows: Vec<_> = [100.0, 80.0, 70.0, 60.0]
            .iter()
            .map(|&s| row(Some(s), Some(true), Some(true)))
            .collect();
        for gate in [Gate::Similarity, Gate::Full] {
            let p = &tau_sweep(&rows, &[75.0], gate).unwrap()[0];
            assert_eq!((p.coverage, p.accuracy, p.accepted_count, p.total_count), (0.5, Some(1.0), 2, 4));
        }
    }

    #[test]
    fn range() {
        assert_eq!(tau_range(60.0, 95.0, 5.0).unwrap(), [60.0, 65.0, 70.0, 75.0, 80.0, 85.0, 90.0, 95.0]);
        assert_eq!(tau_range(0.0, 0.3, 0.1).unwrap().len(), 4);
        assert!(tau_range(60.0, 95.0, 0.0).is_err());
        assert!(tau_range(95.0, 60.0, 5.0).is_err());
    }

    #[test]
    fn unscored_rows_only_count_in_total() {
        let mut unparseable = row(Some(100.0), Some(true), Some(true));
        unparseable.status = Status::Unparseable;
        let rows = vec![row(None, None, None), unparseable, row(Some(90.0), Some(true), Some(false))];
        let p = &tau_sweep(&rows, &[0.0], Gate::Similarity).unwrap()[0];
        assert_eq!((p.accepted_count, p.total_count, p.accuracy), (1, 3, Some(0.0)));
        assert!(tau_sweep(&[], &[75.0], Gate::Similarity).is_err());
        assert!(tau_sweep(&rows, &[101.0], Gate::Similarity).is_err());
    }

    #[test]
    fn full_gate_applies_structure() {
        let mut uncovered = row(Some(90.0), Some(true), Some(true));
        uncovered.generated_formula = "a | zzz".into();
        let mut tautology = row(Some(90.0), Some(false), Some(false));
        tautology.generated_formula = "a & !a".into();
        let rows = vec![uncovered, tautology, row(Some(90.0), Some(true), Some(true))];
        let sim = &tau_sweep(&rows, &[75.0], Gate::Similarity).unwrap()[0];
        let full = &tau_sweep(&rows, &[75.0], Gate::Full).unwrap()[0];
        assert_eq!((sim.accepted_count, full.accepted_count), (3, 1));
    }

    #[test]
    fn correctness() {
        let all = vec![row(None, Some(true), Some(true)), row(None, Some(false), Some(false))];
        let c = score_correctness(&all).unwrap();
        assert_eq!((c.overall, c.sat_only, c.unsat_only), (1.0, Some(1.0), Some(1.0)));

        let half = vec![row(None, Some(true), Some(true)), row(None, Some(false), Some(true))];
        assert_eq!(score_correctness(&half).unwrap().overall, 0.5);

        let rows = vec![row(None, Some(true), None), row(None, Some(true), Some(true)), row(None, None, Some(true))];
        let c = score_correctness(&rows).unwrap();
        assert_eq!((c.overall, c.unpredicted, c.unlabelled, c.unsat_only), (0.5, 1, 1, None));
        assert!(score_correctness(&[row(None, None, None)]).is_err());
    }

    proptest! {
        #[test]
        fn coverage_non_increasing(sims in proptest::collection::vec(proptest::option::of(0.0f64..=100.0), 1..40)) {
            let rows: Vec<_> = sims.into_iter().map(|s| row(s, Some(true), Some(true))).collect();
            let taus = tau_range(60.0, 95.0, 5.0).unwrap();
            for gate in [Gate::Similarity, Gate::Full] {
                let pts = tau_sweep(&rows, &taus, gate).unwrap();
                for w in pts.windows(2) {
                    prop_assert!(w[1].coverage <= w[0].coverage);
                    prop_assert_eq!(w[0].coverage, w[0].accepted_count as f64 / w[0].total_count as f64);
                }
            }
        }
    }
}
