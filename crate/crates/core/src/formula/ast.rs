use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// A propositional formula over named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ast {
    Var(String),
    Not(Box<Ast>),
    And(Box<Ast>, Box<Ast>),
    Or(Box<Ast>, Box<Ast>),
    Implies(Box<Ast>, Box<Ast>),
    Iff(Box<Ast>, Box<Ast>),
}

/// Truth values for variables, keyed by name.
pub type Assignment = HashMap<String, bool>;

impl Ast {
    pub fn var(name: impl Into<String>) -> Self {
        Ast::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(child: Ast) -> Self {
        Ast::Not(Box::new(child))
    }

    pub fn and(left: Ast, right: Ast) -> Self {
        Ast::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Ast, right: Ast) -> Self {
        Ast::Or(Box::new(left), Box::new(right))
    }

    pub fn implies(left: Ast, right: Ast) -> Self {
        Ast::Implies(Box::new(left), Box::new(right))
    }

    pub fn iff(left: Ast, right: Ast) -> Self {
        Ast::Iff(Box::new(left), Box::new(right))
    }

    /// Distinct variable names, sorted.
    pub fn variables(&self) -> BTreeSet<String> {
        self.variables_in_order().into_iter().collect()
    }

    /// Distinct variable names in left-to-right order of first occurrence.
    pub fn variables_in_order(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.visit_vars(&mut |name| {
            if seen.insert(name.to_string()) {
                out.push(name.to_string());
            }
        });
        out
    }

    fn visit_vars<'a>(&'a self, f: &mut impl FnMut(&'a str)) {
        match self {
            Ast::Var(name) => f(name),
            Ast::Not(child) => child.visit_vars(f),
            Ast::And(l, r) | Ast::Or(l, r) | Ast::Implies(l, r) | Ast::Iff(l, r) => {
                l.visit_vars(f);
                r.visit_vars(f);
            }
        }
    }

    /// Number of nodes in the tree.
    pub fn node_count(&self) -> usize {
        match self {
            Ast::Var(_) => 1,
            Ast::Not(child) => 1 + child.node_count(),
            Ast::And(l, r) | Ast::Or(l, r) | Ast::Implies(l, r) | Ast::Iff(l, r) => {
                1 + l.node_count() + r.node_count()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Ast::Var(_) => 0,
            Ast::Not(child) => 1 + child.depth(),
            Ast::And(l, r) | Ast::Or(l, r) | Ast::Implies(l, r) | Ast::Iff(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    /// Evaluates the formula. Variables missing from `assignment` read as false.
    pub fn eval(&self, assignment: &Assignment) -> bool {
        match self {
            Ast::Var(name) => assignment.get(name).copied().unwrap_or(false),
            Ast::Not(child) => !child.eval(assignment),
            Ast::And(l, r) => l.eval(assignment) && r.eval(assignment),
            Ast::Or(l, r) => l.eval(assignment) || r.eval(assignment),
            Ast::Implies(l, r) => !l.eval(assignment) || r.eval(assignment),
            Ast::Iff(l, r) => l.eval(assignment) == r.eval(assignment),
        }
    }

    /// Fully parenthesized canonical text. `parse(render(t)) == t`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }

    fn render_into(&self, out: &mut String) {
        let (l, r, op) = match self {
            Ast::Var(name) => {
                out.push_str(name);
                return;
            }
            Ast::Not(child) => {
                out.push('!');
                child.render_into(out);
                return;
            }
            Ast::And(l, r) => (l, r, " & "),
            Ast::Or(l, r) => (l, r, " | "),
            Ast::Implies(l, r) => (l, r, " -> "),
            Ast::Iff(l, r) => (l, r, " <-> "),
        };
        out.push('(');
        l.render_into(out);
        out.push_str(op);
        r.render_into(out);
        out.push(')');
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
