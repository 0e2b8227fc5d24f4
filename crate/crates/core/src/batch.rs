//! Batch evaluation over many inputs.
//!
//! With the `parallel` feature (on by default) work is spread across the
//! rayon thread pool; without it, or with [`Execution::Sequential`], the same
//! functions run on the calling thread. Results are always returned in input
//! order, so both paths produce identical output.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::analytic;
use crate::context::PadicContext;
use crate::error::Result;
use crate::hensel::{hensel_lift, HenselResult, IntPolynomial};
use crate::number::PadicNumber;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Order-preserving map over a slice.
pub fn map<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Order-preserving map over `0..n`.
pub fn map_range<U, F>(exec: Execution, n: u64, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u64) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Evaluates `f` at every point.
pub fn eval_many(exec: Execution, f: &IntPolynomial, xs: &[PadicNumber]) -> Vec<PadicNumber> {
    map(exec, xs, |x| f.eval(x))
}

/// Runs the Hensel lift from each seed.
pub fn lift_many(
    exec: Execution,
    f: &IntPolynomial,
    seeds: &[BigInt],
    ctx: &Arc<PadicContext>,
) -> Vec<Result<HenselResult>> {
    map(exec, seeds, |s| hensel_lift(f, s, ctx))
}

pub fn exp_many(exec: Execution, xs: &[PadicNumber]) -> Vec<Result<PadicNumber>> {
    map(exec, xs, analytic::exp)
}

pub fn log_many(exec: Execution, xs: &[PadicNumber]) -> Vec<Result<PadicNumber>> {
    map(exec, xs, analytic::log)
}

pub fn sqrt_many(exec: Execution, xs: &[PadicNumber]) -> Vec<Result<PadicNumber>> {
    map(exec, xs, analytic::sqrt)
}

/// Teichmüller lifts of the residues `1..p`, i.e. all (p-1)-th roots of unity.
pub fn roots_of_unity(exec: Execution, ctx: &Arc<PadicContext>) -> Vec<PadicNumber> {
    map_range(exec, ctx.p() - 1, |a| {
        let x = crate::convert::from_integer(&BigInt::from(a + 1), ctx);
        analytic::teichmuller(&x).expect("nonzero residue is a unit")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::pow_int;
    use crate::context::{make_context, PrintMode};

    #[test]
    fn both_paths_agree() {
        let ctx = make_context(13, 20, PrintMode::Series).unwrap();
        let seq = roots_of_unity(Execution::Sequential, &ctx);
        let par = roots_of_unity(Execution::Parallel, &ctx);
        assert_eq!(seq, par);
        assert_eq!(seq.len(), 12);
        for t in &seq {
            assert_eq!(pow_int(t, 12).unwrap(), PadicNumber::one(&ctx));
        }
    }

    #[test]
    fn lift_many_keeps_order() {
        let ctx = make_context(7, 10, PrintMode::Series).unwrap();
        let f: IntPolynomial = "x^2 - 2".parse().unwrap();
        let seeds: Vec<BigInt> = (0..7).map(BigInt::from).collect();
        let out = lift_many(Execution::Parallel, &f, &seeds, &ctx);
        // 3^2 = 4^2 = 2 mod 7
        let ok: Vec<usize> = out
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_ok())
            .map(|(i, _)| i)
            .collect();
        assert_eq!(ok, vec![3, 4]);
        assert_eq!(out, lift_many(Execution::Sequential, &f, &seeds, &ctx));
    }
}
