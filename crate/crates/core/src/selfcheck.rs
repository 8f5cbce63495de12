//! Property suites that can be run from a release binary.
//!
//! Each suite re-derives its expectations by an independent route (direct
//! enumeration, built-in integer arithmetic, sampling) and reports the first
//! violation it meets.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baker::{baker_creal_fn, baker_iter, baker_step, sensitivity_witness};
use crate::discrete::{grid_iter, min_separation_eta, GridState};
use crate::encoding::{decode_rational, encode_rational, pair, unpair, EncodingId};
use crate::limit::{discontinuity_witness, first_date_below};
use crate::measured::{measure, reach_n, successors, successors_with_witnesses, Readout};
use crate::murec::{corpus, EvalOutcome, RecFn};
use crate::rational::{q, Natural, Rational};
use crate::realfn::check_modulus;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    /// `None` when the suite passed.
    pub failure: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs every suite with the given seed, in a fixed order.
pub fn run_all(seed: u64) -> Vec<SuiteOutcome> {
    let suites: [(&'static str, fn(u64) -> Check); 7] = [
        ("encoding", encoding_suite),
        ("murec", murec_suite),
        ("realfn", realfn_suite),
        ("baker", baker_suite),
        ("discrete", discrete_suite),
        ("measured", measured_suite),
        ("limit", limit_suite),
    ];
    suites
        .iter()
        .map(|(name, suite)| SuiteOutcome {
            name,
            failure: suite(seed).err(),
        })
        .collect()
}

fn encoding_suite(seed: u64) -> Check {
    for c in 0..10_000u64 {
        let c = Natural::from(c);
        let (n, p) = unpair(&c);
        ensure(pair(&n, &p) == c, || format!("pair(unpair({c})) != {c}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..2000 {
        let r = q(rng.random_range(-1_000_000..=1_000_000), rng.random_range(1..=1_000_000));
        for e in EncodingId::ALL {
            let back = decode_rational(&encode_rational(&r, e), e).map_err(|err| err.to_string())?;
            ensure(back == r, || format!("{r} round-trips to {back} under {e}"))?;
        }
    }
    Ok(())
}

fn murec_suite(_seed: u64) -> Check {
    let (add, mul) = (corpus::add(), corpus::mul());
    for x in 0..=20u64 {
        for y in 0..=20u64 {
            let args = [Natural::from(x), Natural::from(y)];
            for (term, want, name) in [(&add, x + y, "add"), (&mul, x * y, "mul")] {
                let got = term.eval(&args, 1_000_000).map_err(|e| e.to_string())?;
                ensure(got == EvalOutcome::Value(Natural::from(want)), || {
                    format!("{name}({x}, {y}) gave {got:?}")
                })?;
            }
        }
    }
    let never: RecFn = "(mu (comp succ proj 2 2))".parse().map_err(|e: crate::Error| e.to_string())?;
    let out = never.eval(&[Natural::from(0u32)], 1000).map_err(|e| e.to_string())?;
    ensure(out == EvalOutcome::Diverged { fuel_spent: 1000 }, || {
        format!("unbounded search returned {out:?}")
    })
}

fn realfn_suite(seed: u64) -> Check {
    let good = baker_creal_fn(2);
    let report = check_modulus(&good, |x| baker_iter(x, 2).expect("in domain"), 500, seed);
    ensure(report.holds(), || {
        format!("modulus ε/4 violated: {:?}", report.counterexamples.first())
    })?;
    let bad = good.with_modulus(|e| e.clone());
    let report = check_modulus(&bad, |x| baker_iter(x, 2).expect("in domain"), 500, seed);
    ensure(!report.holds(), || "modulus ε for b^2 was not refuted".into())
}

fn baker_suite(seed: u64) -> Check {
    for n in 1..=10u32 {
        let report = check_modulus(&baker_creal_fn(n), |x| baker_iter(x, n).expect("in domain"), 200, seed);
        ensure(report.holds(), || format!("n={n}: {:?}", report.counterexamples.first()))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let eta = q(1, rng.random_range(1..=1_000_000_000));
        let d = rng.random_range(1..=1000);
        let a = q(rng.random_range(0..=d), d);
        let ap = q(rng.random_range(0..=d), d);
        let w = sensitivity_witness(&eta, &a, &ap).map_err(|e| e.to_string())?;
        w.verify().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn discrete_suite(_seed: u64) -> Check {
    for n in 1..=50u64 {
        let eta = min_separation_eta(n).map_err(|e| e.to_string())?;
        for i in 0..=n {
            let s = GridState::new(n, i).map_err(|e| e.to_string())?;
            for steps in [1u64, 5, 20] {
                let grid = grid_iter(s, steps).map_err(|e| e.to_string())?.position();
                let exact = baker_iter(&s.position(), steps as u32).map_err(|e| e.to_string())?;
                ensure(grid == exact, || format!("N={n} i={i} n={steps}: {grid} vs {exact}"))?;
            }
            for j in 0..=n {
                let close = (Rational::new(i, n) - Rational::new(j, n)).abs() <= eta;
                ensure(close == (i == j), || format!("N={n}: {i} and {j} within 1/(2N)"))?;
            }
        }
    }
    Ok(())
}

fn measured_suite(seed: u64) -> Check {
    let first = successors(Readout::new(3, 0).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(first.indices().eq([0, 1]), || format!("0.000 -> {first}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for d in 1..=2u32 {
        let scale = 10u64.pow(d);
        for k in 0..=scale {
            let m = Readout::new(d, k).map_err(|e| e.to_string())?;
            let succ = successors_with_witnesses(m).map_err(|e| e.to_string())?;
            let claimed: BTreeSet<u64> = succ.iter().map(|s| s.readout.index()).collect();
            for s in &succ {
                let y = baker_step(&s.witness).map_err(|e| e.to_string())?;
                let got = measure(&y, d).map_err(|e| e.to_string())?;
                ensure(m.cell().contains(&s.witness) && got == s.readout, || {
                    format!("{m}: witness {} does not realize {}", s.witness, s.readout)
                })?;
            }
            for _ in 0..50 {
                let x = if m.is_top() {
                    Rational::one()
                } else {
                    let den: i64 = rng.random_range(1..=1_000_000);
                    (Rational::from_integer(k) + q(rng.random_range(0..den), den))
                        / Rational::from_integer(scale)
                };
                let y = measure(&baker_step(&x).map_err(|e| e.to_string())?, d).map_err(|e| e.to_string())?;
                ensure(claimed.contains(&y.index()), || format!("{m} -> {y} missing"))?;
            }
            let mut next = BTreeSet::new();
            for r in reach_n(m, 2).map_err(|e| e.to_string())?.readouts() {
                next.extend(successors(r).map_err(|e| e.to_string())?.indices());
            }
            let three: BTreeSet<u64> = reach_n(m, 3).map_err(|e| e.to_string())?.indices().collect();
            ensure(three == next, || format!("{m}: reach_3 differs from image of reach_2"))?;
        }
    }
    Ok(())
}

fn limit_suite(_seed: u64) -> Check {
    for j in 1..=6u32 {
        let eta = Rational::inv_pow10(j);
        let w = discontinuity_witness(&eta).map_err(|e| e.to_string())?;
        w.verify().map_err(|e| e.to_string())?;
        ensure(w.gap == 1, || format!("gap {} at eta {eta}", w.gap))?;
    }
    let date = first_date_below(&q(9, 10), &q(1, 1000), 20).map_err(|e| e.to_string())?;
    ensure(date == Some(7), || format!("(9/10)^(2^n) < 1/1000 first at {date:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for outcome in run_all(0) {
            assert!(outcome.passed(), "{}: {:?}", outcome.name, outcome.failure);
        }
    }
}
