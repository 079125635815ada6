#![allow(dead_code)]

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use veritrans::formula::Ast;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// Random formula over `v0..v{max_vars-1}` with depth at most `max_depth`.
pub fn random_ast(rng: &mut impl Rng, max_vars: usize, max_depth: usize) -> Ast {
    if max_depth == 0 || rng.gen_bool(0.25) {
        return Ast::var(format!("v{}", rng.gen_range(0..max_vars)));
    }
    let d = max_depth - 1;
    match rng.gen_range(0..5) {
        0 => Ast::not(random_ast(rng, max_vars, d)),
        1 => Ast::and(random_ast(rng, max_vars, d), random_ast(rng, max_vars, d)),
        2 => Ast::or(random_ast(rng, max_vars, d), random_ast(rng, max_vars, d)),
        3 => Ast::implies(random_ast(rng, max_vars, d), random_ast(rng, max_vars, d)),
        _ => Ast::iff(random_ast(rng, max_vars, d), random_ast(rng, max_vars, d)),
    }
}

/// Balanced conjunction of four random constraints over few variables, depth
/// at most `max_depth`. Much more often unsatisfiable than [`random_ast`].
pub fn random_constraints(rng: &mut impl Rng, max_vars: usize, max_depth: usize) -> Ast {
    let mut part = || random_ast(rng, max_vars, max_depth.saturating_sub(2));
    let (a, b, c, d) = (part(), part(), part(), part());
    Ast::and(Ast::and(a, b), Ast::and(c, d))
}

/// Direct truth-table satisfiability, written against the AST shape only.
pub fn brute_force_sat(ast: &Ast) -> bool {
    fn eval(ast: &Ast, names: &[String], bits: u32) -> bool {
        match ast {
            Ast::Var(v) => bits >> names.iter().position(|n| n == v).unwrap() & 1 == 1,
            Ast::Not(a) => !eval(a, names, bits),
            Ast::And(a, b) => eval(a, names, bits) && eval(b, names, bits),
            Ast::Or(a, b) => eval(a, names, bits) || eval(b, names, bits),
            Ast::Implies(a, b) => !eval(a, names, bits) || eval(b, names, bits),
            Ast::Iff(a, b) => eval(a, names, bits) == eval(b, names, bits),
        }
    }
    let names: Vec<String> = ast.variables().into_iter().collect();
    (0..1u32 << names.len()).any(|bits| eval(ast, &names, bits))
}

/// Average ranks of `values` (1-based), ties sharing the mean rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut ranks = vec![0.0; values.len()];
    for (i, v) in values.iter().enumerate() {
        let below = values.iter().filter(|w| *w < v).count();
        let equal = values.iter().filter(|w| *w == v).count();
        ranks[i] = below as f64 + (equal as f64 + 1.0) / 2.0;
    }
    ranks
}

/// Two-sided signed-rank p by enumerating all 2^m sign patterns.
/// Returns `(W, p)` with `W = min(W+, W-)`.
pub fn wilcoxon_enumerated(a: &[f64], b: &[f64]) -> (f64, f64) {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).filter(|d| *d != 0.0).collect();
    let ranks = average_ranks(&d.iter().map(|x| x.abs()).collect::<Vec<_>>());
    let total: f64 = ranks.iter().sum();
    let w_plus: f64 = d.iter().zip(&ranks).filter(|(x, _)| **x > 0.0).map(|(_, r)| r).sum();
    let w = w_plus.min(total - w_plus);
    let m = d.len();
    let extreme = (0..1u64 << m)
        .filter(|pattern| {
            let s: f64 = (0..m).filter(|i| pattern >> i & 1 == 1).map(|i| ranks[i]).sum();
            s.min(total - s) <= w + 1e-9
        })
        .count();
    (w, extreme as f64 / (1u64 << m) as f64)
}

pub fn cliffs_pairs(a: &[f64], b: &[f64]) -> f64 {
    let mut more = 0i64;
    let mut less = 0i64;
    for x in a {
        for y in b {
            if x > y {
                more += 1;
            } else if x < y {
                less += 1;
            }
        }
    }
    (more - less) as f64 / (a.len() * b.len()) as f64
}

/// Plain percentile bootstrap of the mean with nearest-rank endpoints.
pub fn percentile_bootstrap_mean(samples: &[f64], resamples: usize, confidence: f64, seed: u64) -> (f64, f64) {
    let mut r = rng(seed);
    let n = samples.len();
    let mut means: Vec<f64> = (0..resamples)
        .map(|_| (0..n).map(|_| *samples.choose(&mut r).unwrap()).sum::<f64>() / n as f64)
        .collect();
    means.sort_by(f64::total_cmp);
    let alpha = (1.0 - confidence) / 2.0;
    let at = |q: f64| means[((q * resamples as f64).ceil() as usize).clamp(1, resamples) - 1];
    (at(alpha), at(1.0 - alpha))
}
