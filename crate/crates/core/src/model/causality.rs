//! Causality of stream maps: output index `n` may only depend on input
//! indices `0..=n`.

use num_bigint::BigInt;
use rand::Rng;

use super::{Model, Value};
use crate::laws::{run_trials, LawConfig, LawReport, Witness};
use crate::term::MapTerm;

/// Replaces every stream entry past index `n` with a fresh random entry.
fn perturb_tail<R: Rng + ?Sized>(v: &Value, n: usize, bound: i64, rng: &mut R) -> Value {
    match v {
        Value::Pair(a, b) => {
            let a = perturb_tail(a, n, bound, rng);
            Value::pair(a, perturb_tail(b, n, bound, rng))
        }
        Value::Stream(s) => Value::Stream(
            s.iter()
                .enumerate()
                .map(|(i, x)| {
                    if i <= n {
                        x.clone()
                    } else {
                        BigInt::from(rng.gen_range(-bound..=bound))
                    }
                })
                .collect(),
        ),
        leaf => leaf.clone(),
    }
}

/// Whether every stream leaf of `v` and `w` agrees on indices `0..=n`.
fn agree_upto(v: &Value, w: &Value, n: usize) -> bool {
    match (v, w) {
        (Value::Pair(a, b), Value::Pair(c, d)) => agree_upto(a, c, n) && agree_upto(b, d, n),
        (Value::Stream(s), Value::Stream(t)) => s.iter().zip(t).take(n + 1).all(|(x, y)| x == y),
        _ => v == w,
    }
}

/// Checks that `f` is causal: inputs agreeing up to a random index give
/// outputs agreeing up to the same index.
pub fn stream_causality_check(model: &Model, f: &MapTerm, trials: usize, seed: u64) -> LawReport {
    let cfg = LawConfig::default()
        .with_trials(trials)
        .with_seed(seed)
        .with_depth(f.size());
    let depth = model.stream_depth();
    run_trials("STREAM_CAUSAL", model, &cfg, |_, rng| {
        let n = rng.gen_range(0..depth);
        let a = model.sample_value(f.dom(), rng, &cfg.ranges).ok()?;
        let b = perturb_tail(&a, n, cfg.ranges.stream, rng);
        let (fa, fb) = (model.eval(f, &a), model.eval(f, &b));
        let ok = matches!((&fa, &fb), (Ok(x), Ok(y)) if agree_upto(x, y, n));
        let show = |r: Result<Value, _>| r.map(|v| v.to_literal()).unwrap_or_else(|e| format!("error: {e}"));
        (!ok).then(|| Witness {
            terms: vec![f.to_string()],
            input: format!("{} {} upto {n}", a.to_literal(), b.to_literal()),
            lhs: show(fa),
            rhs: show(fb),
            comparison: format!("prefix 0..={n}"),
        })
    })
}
