//! The tent-shaped baker map `b(x) = 2x` on `[0, 1/2]`, `2 - 2x` on
//! `(1/2, 1]`, evaluated exactly on rationals.

use crate::error::{Error, Result};
use crate::rational::{q, Rational};
use crate::realfn::{CRealFn, Domain};

fn check_unit(x: &Rational, what: &str) -> Result<()> {
    if x.in_unit_interval() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} = {x} is outside [0, 1]")))
    }
}

/// One step of the map. The left branch includes `1/2`.
pub fn baker_step(x: &Rational) -> Result<Rational> {
    check_unit(x, "x")?;
    Ok(step_unchecked(x))
}

fn step_unchecked(x: &Rational) -> Rational {
    if *x <= q(1, 2) {
        x.shl(1)
    } else {
        Rational::from_integer(2) - x.shl(1)
    }
}

/// `n`-fold iterate.
pub fn baker_iter(x: &Rational, n: u32) -> Result<Rational> {
    check_unit(x, "x")?;
    let mut state = x.clone();
    for _ in 0..n {
        state = step_unchecked(&state);
    }
    Ok(state)
}

/// The orbit `x, b(x), ..., b^n(x)`.
pub fn baker_orbit(x: &Rational, n: u32) -> Result<Vec<Rational>> {
    check_unit(x, "x")?;
    let mut orbit = Vec::with_capacity(n as usize + 1);
    orbit.push(x.clone());
    for k in 0..n as usize {
        let next = step_unchecked(&orbit[k]);
        orbit.push(next);
    }
    Ok(orbit)
}

/// `b^n` as a computable real function on `[0, 1]`.
///
/// `b^n` is `2^n`-Lipschitz, so asking for the input to within `ε / 2^n`
/// is enough; the approximation rule clamps `q` into `[0, 1]` and iterates
/// exactly.
pub fn baker_creal_fn(n: u32) -> CRealFn {
    let domain = Domain::unit();
    let d = domain.clone();
    CRealFn::new(
        domain,
        move |_, x| {
            let mut state = d.clamp(x);
            for _ in 0..n {
                state = step_unchecked(&state);
            }
            state
        },
        move |eps| eps.shr(n),
    )
}

/// Two starting points within `eta` of each other that the map sends, after
/// `n` steps, to two prescribed points `a` and `ap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SensitivityWitness {
    pub x0: Rational,
    pub x0p: Rational,
    pub n: u32,
    pub eta: Rational,
    pub a: Rational,
    pub ap: Rational,
}

impl SensitivityWitness {
    /// Re-checks every defining property with exact arithmetic.
    pub fn verify(&self) -> Result<()> {
        let fail = |why: String| Err(Error::Domain(format!("invalid witness: {why}")));
        for (name, v) in [("x0", &self.x0), ("x0p", &self.x0p), ("a", &self.a), ("ap", &self.ap)] {
            if !v.in_unit_interval() {
                return fail(format!("{name} = {v} outside [0, 1]"));
            }
        }
        if Rational::inv_pow2(self.n) > self.eta {
            return fail(format!("1/2^{} exceeds eta = {}", self.n, self.eta));
        }
        if (&self.x0 - &self.x0p).abs() > self.eta {
            return fail("starting points further apart than eta".into());
        }
        if baker_iter(&self.x0, self.n)? != self.a {
            return fail("b^n(x0) differs from a".into());
        }
        if baker_iter(&self.x0p, self.n)? != self.ap {
            return fail("b^n(x0p) differs from ap".into());
        }
        Ok(())
    }
}

/// Least `n` with `1/2^n <= eta`; 0 when `eta >= 1`.
pub fn least_dyadic_exponent(eta: &Rational) -> Result<u32> {
    if !eta.is_positive() {
        return Err(Error::Domain(format!("eta must be positive, got {eta}")));
    }
    let mut n = 0u32;
    while Rational::inv_pow2(n) > *eta {
        n += 1;
    }
    Ok(n)
}

/// Builds the witness `x0 = a / 2^n`, `x0p = ap / 2^n` with the least
/// admissible `n`.
pub fn sensitivity_witness(eta: &Rational, a: &Rational, ap: &Rational) -> Result<SensitivityWitness> {
    check_unit(a, "a")?;
    check_unit(ap, "ap")?;
    let n = least_dyadic_exponent(eta)?;
    Ok(SensitivityWitness {
        x0: a.shr(n),
        x0p: ap.shr(n),
        n,
        eta: eta.clone(),
        a: a.clone(),
        ap: ap.clone(),
    })
}
