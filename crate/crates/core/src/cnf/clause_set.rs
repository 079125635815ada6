use indexmap::IndexSet;

use super::NamedClause;

/// DIMACS-style literal: variable id, negative when negated. Never zero.
pub type Literal = i32;

/// Bijection between variable names and ids `1..=len`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolTable {
    names: IndexSet<String>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `name`, assigning the next free one if needed.
    pub fn intern(&mut self, name: &str) -> u32 {
        let (index, _) = self.names.insert_full(name.to_string());
        index as u32 + 1
    }

    pub fn id(&self, name: &str) -> Option<u32> {
        self.names.get_index_of(name).map(|i| i as u32 + 1)
    }

    pub fn name(&self, id: u32) -> Option<&str> {
        let index = (id as usize).checked_sub(1)?;
        self.names.get_index(index).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// `(id, name)` pairs in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &str)> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| (i as u32 + 1, n.as_str()))
    }
}

impl<S: AsRef<str>> FromIterator<S> for SymbolTable {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut table = SymbolTable::new();
        for name in iter {
            table.intern(name.as_ref());
        }
        table
    }
}

/// Integer CNF plus the names behind the ids.
///
/// The symbol table is either empty (anonymous CNF, e.g. foreign DIMACS) or
/// covers exactly `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfClauseSet {
    clauses: Vec<Vec<Literal>>,
    num_vars: usize,
    symbols: SymbolTable,
}

impl CnfClauseSet {
    /// Builds an anonymous clause set; `num_vars` grows to cover every literal.
    pub fn new(clauses: Vec<Vec<Literal>>, num_vars: usize) -> Self {
        let max_var = clauses
            .iter()
            .flatten()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        CnfClauseSet {
            clauses,
            num_vars: num_vars.max(max_var),
            symbols: SymbolTable::new(),
        }
    }

    /// Builds a named clause set without validating it; see
    /// [`CnfClauseSet::is_well_formed`].
    pub fn from_parts(clauses: Vec<Vec<Literal>>, num_vars: usize, symbols: SymbolTable) -> Self {
        CnfClauseSet {
            clauses,
            num_vars,
            symbols,
        }
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    /// Checks the structural invariants: no zero literal, every literal within
    /// `num_vars`, and a symbol table that is empty or covers all ids.
    pub fn is_well_formed(&self) -> bool {
        let literals_ok = self
            .clauses
            .iter()
            .flatten()
            .all(|&l| l != 0 && l.unsigned_abs() as usize <= self.num_vars);
        let symbols_ok = self.symbols.is_empty() || self.symbols.len() == self.num_vars;
        literals_ok && symbols_ok
    }
}

/// Numbers named literals. Names listed in `preferred` that occur in the
/// clauses come first in that order; every other name follows in order of
/// first occurrence. Negation maps to a negative id.
pub fn map_lits_to_ints<S: AsRef<str>>(
    named_clauses: &[NamedClause],
    preferred: &[S],
) -> CnfClauseSet {
    let occurring: IndexSet<&str> = named_clauses
        .iter()
        .flatten()
        .map(|l| l.name.as_str())
        .collect();
    let mut symbols = SymbolTable::new();
    for name in preferred {
        if occurring.contains(name.as_ref()) {
            symbols.intern(name.as_ref());
        }
    }
    for name in &occurring {
        symbols.intern(name);
    }
    let clauses = named_clauses
        .iter()
        .map(|clause| {
            clause
                .iter()
                .map(|lit| {
                    let id = symbols.id(&lit.name).expect("interned above") as Literal;
                    if lit.positive {
                        id
                    } else {
                        -id
                    }
                })
                .collect()
        })
        .collect();
    CnfClauseSet {
        clauses,
        num_vars: symbols.len(),
        symbols,
    }
}
