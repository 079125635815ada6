use super::{Satisfiability, SolveError};
use crate::cnf::{CnfClauseSet, Literal};

pub const DEFAULT_DECISION_BUDGET: u64 = 10_000_000;

/// A total assignment; index `i` holds the value of variable `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Model(Vec<bool>);

impl Model {
    pub fn new(values: Vec<bool>) -> Self {
        Model(values)
    }

    pub fn value(&self, var: u32) -> Option<bool> {
        let index = (var as usize).checked_sub(1)?;
        self.0.get(index).copied()
    }

    pub fn satisfies(&self, literal: Literal) -> bool {
        self.value(literal.unsigned_abs())
            .is_some_and(|v| v == (literal > 0))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    /// Literals of the model, `1 -2 3 ...`.
    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.0.iter().enumerate().map(|(i, &v)| {
            let id = i as Literal + 1;
            if v {
                id
            } else {
                -id
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: Satisfiability,
    /// Present iff `status` is SAT.
    pub model: Option<Model>,
    pub decisions: u64,
    pub propagations: u64,
}

/// True iff every clause contains a literal the model satisfies. Variables
/// the model does not assign satisfy nothing.
pub fn check_model(cnf: &CnfClauseSet, model: &Model) -> bool {
    cnf.clauses()
        .iter()
        .all(|clause| clause.iter().any(|&l| model.satisfies(l)))
}

/// [`solve_with_budget`] with [`DEFAULT_DECISION_BUDGET`].
pub fn solve(cnf: &CnfClauseSet) -> Result<SolveResult, SolveError> {
    solve_with_budget(cnf, DEFAULT_DECISION_BUDGET)
}

/// DPLL with unit propagation and pure-literal elimination.
///
/// Branches on the lowest unassigned variable, trying true first, so models
/// and counters are reproducible. Variables left free once every clause is
/// satisfied are set to true.
pub fn solve_with_budget(cnf: &CnfClauseSet, budget: u64) -> Result<SolveResult, SolveError> {
    let mut solver = Dpll {
        clauses: cnf.clauses(),
        budget,
        decisions: 0,
        propagations: 0,
    };
    let mut assignment = vec![None; cnf.num_vars()];
    let sat = solver.search(&mut assignment)?;
    let (status, model) = if sat {
        let values = assignment.into_iter().map(|v| v.unwrap_or(true)).collect();
        (Satisfiability::Sat, Some(Model(values)))
    } else {
        (Satisfiability::Unsat, None)
    };
    Ok(SolveResult {
        status,
        model,
        decisions: solver.decisions,
        propagations: solver.propagations,
    })
}

type Assignment = Vec<Option<bool>>;

enum ClauseState {
    Satisfied,
    Conflict,
    Unit(Literal),
    Open,
}

struct Dpll<'a> {
    clauses: &'a [Vec<Literal>],
    budget: u64,
    decisions: u64,
    propagations: u64,
}

fn value_of(assignment: &Assignment, literal: Literal) -> Option<bool> {
    assignment[literal.unsigned_abs() as usize - 1].map(|v| v == (literal > 0))
}

fn assign(assignment: &mut Assignment, literal: Literal) {
    assignment[literal.unsigned_abs() as usize - 1] = Some(literal > 0);
}

impl Dpll<'_> {
    fn clause_state(&self, clause: &[Literal], assignment: &Assignment) -> ClauseState {
        let mut unassigned = None;
        let mut open = 0;
        for &lit in clause {
            match value_of(assignment, lit) {
                Some(true) => return ClauseState::Satisfied,
                Some(false) => {}
                None => {
                    open += 1;
                    unassigned = Some(lit);
                }
            }
        }
        match (open, unassigned) {
            (0, _) => ClauseState::Conflict,
            (1, Some(lit)) => ClauseState::Unit(lit),
            _ => ClauseState::Open,
        }
    }

    /// Unit propagation and pure literals to a fixpoint. Returns false on
    /// conflict, otherwise whether any clause is still open.
    fn simplify(&mut self, assignment: &mut Assignment) -> Option<bool> {
        loop {
            let mut changed = false;
            let mut any_open = false;
            for clause in self.clauses {
                match self.clause_state(clause, assignment) {
                    ClauseState::Satisfied => {}
                    ClauseState::Conflict => return None,
                    ClauseState::Unit(lit) => {
                        assign(assignment, lit);
                        self.propagations += 1;
                        changed = true;
                    }
                    ClauseState::Open => any_open = true,
                }
            }
            if changed {
                continue;
            }
            if !any_open {
                return Some(false);
            }
            // polarity bits per variable over unassigned literals of open clauses
            let mut polarity = vec![0u8; assignment.len()];
            for clause in self.clauses {
                if matches!(self.clause_state(clause, assignment), ClauseState::Satisfied) {
                    continue;
                }
                for &lit in clause {
                    if value_of(assignment, lit).is_none() {
                        polarity[lit.unsigned_abs() as usize - 1] |= if lit > 0 { 1 } else { 2 };
                    }
                }
            }
            for (index, bits) in polarity.into_iter().enumerate() {
                if bits == 1 || bits == 2 {
                    assignment[index] = Some(bits == 1);
                    changed = true;
                }
            }
            if !changed {
                return Some(true);
            }
        }
    }

    fn search(&mut self, assignment: &mut Assignment) -> Result<bool, SolveError> {
        match self.simplify(assignment) {
            None => return Ok(false),
            Some(false) => return Ok(true),
            Some(true) => {}
        }
        let var = assignment
            .iter()
            .position(Option::is_none)
            .expect("open clause implies an unassigned variable");
        for value in [true, false] {
            if self.decisions >= self.budget {
                return Err(SolveError::ResourceExhausted {
                    budget: self.budget,
                });
            }
            self.decisions += 1;
            let mut branch = assignment.clone();
            branch[var] = Some(value);
            if self.search(&mut branch)? {
                *assignment = branch;
                return Ok(true);
            }
        }
        Ok(false)
    }
}
