//! Degree reduction of cubic pseudo-Boolean polynomials.
//!
//! Each cubic monomial c * a * b * e has a pair (a, b) replaced by an
//! ancilla w, with the Rosenberg penalty
//!
//! ```text
//!   P * (a b - 2 a w - 2 b w + 3 w)
//! ```
//!
//! which is zero exactly when w = a*b and at least P otherwise. Ancillas
//! are shared across monomials selecting the same pair, and each ancilla's
//! penalty is added once. Ancilla indices are assigned in first-use order
//! while iterating monomials in sorted key order, so the layout is a pure
//! function of the input polynomial and the pair rule.
//!
//! Whether the substitution preserves minima depends on the caller's
//! penalty being large enough relative to the coefficients riding on each
//! ancilla; no check is made here.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::{Pubo, Qubo};

/// Chosen pair -> ancilla variable index.
pub type AncillaMap = BTreeMap<(u32, u32), u32>;

/// The default pair rule: the two lowest indices of the triple.
pub fn lowest_pair(triple: [u32; 3]) -> (u32, u32) {
    (triple[0], triple[1])
}

/// Reduce a degree-<=3 polynomial to quadratic form.
pub fn quadratize(
    p: &Pubo,
    penalty: f64,
    pair_rule: impl Fn([u32; 3]) -> (u32, u32),
) -> Result<(Qubo, AncillaMap)> {
    if p.degree() > 3 {
        return Err(Error::DegreeTooHigh { degree: p.degree() });
    }
    if penalty <= 0.0 {
        return Err(Error::InvalidParams("quadratization penalty must be positive".into()));
    }

    let mut ancillas: AncillaMap = BTreeMap::new();
    let mut next_var = p.n_vars() as u32;

    // First pass: fix the ancilla layout.
    for vars in p.terms().keys() {
        if let [a, b, c] = vars.as_slice() {
            let triple = [*a, *b, *c];
            let (u, v) = pair_rule(triple);
            assert!(
                triple.contains(&u) && triple.contains(&v) && u != v,
                "pair rule must select two distinct members of the triple"
            );
            let key = (u.min(v), u.max(v));
            ancillas.entry(key).or_insert_with(|| {
                let w = next_var;
                next_var += 1;
                w
            });
        }
    }

    let mut q = Qubo::new(next_var as usize);
    for (vars, &coeff) in p.terms() {
        match vars.as_slice() {
            [] => q.add_offset(coeff),
            [i] => q.add_linear(*i, coeff),
            [i, j] => q.add_quadratic(*i, *j, coeff),
            [a, b, c] => {
                let triple = [*a, *b, *c];
                let (u, v) = pair_rule(triple);
                let key = (u.min(v), u.max(v));
                let w = ancillas[&key];
                let rest = *triple
                    .iter()
                    .find(|&&t| t != u && t != v)
                    .expect("triple has a third member");
                q.add_quadratic(w, rest, coeff);
            }
            _ => unreachable!("degree checked above"),
        }
    }
    for (&(a, b), &w) in &ancillas {
        q.add_quadratic(a, b, penalty);
        q.add_quadratic(a, w, -2.0 * penalty);
        q.add_quadratic(b, w, -2.0 * penalty);
        q.add_linear(w, 3.0 * penalty);
    }
    Ok((q, ancillas))
}
