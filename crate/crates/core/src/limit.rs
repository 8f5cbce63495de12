//! A dissipative instance, `x -> x^2` on `[0, 1]`, whose limit function is
//! discontinuous at 1.
//!
//! Every orbit converges: to 0 from `x < 1` and to 1 from `x = 1`. States at
//! finite dates are computable to any accuracy, while the limit map jumps
//! by 1 at `x = 1` and so admits no modulus of continuity. The witnesses
//! here certify that jump on explicit rational pairs.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::{q, Rational};
use crate::realfn::{CRealFn, Domain};

/// Squaring stays exact while the denominator has at most this many bits.
pub const EXACT_BITS_CAP: u64 = 4096;

fn check_unit(x: &Rational) -> Result<()> {
    if x.in_unit_interval() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{x} is outside [0, 1]")))
    }
}

pub fn diss_step(x: &Rational) -> Result<Rational> {
    check_unit(x)?;
    Ok(x.square())
}

fn round_down(x: &Rational, bits: u32) -> Rational {
    Rational::new(x.shl(bits).floor(), BigInt::from(1) << bits)
}

fn round_up(x: &Rational, bits: u32) -> Rational {
    Rational::new(x.shl(bits).ceil(), BigInt::from(1) << bits)
}

/// Rational bounds `lo <= x^(2^n) <= hi` with `hi - lo <= width`.
///
/// Squares exactly while the denominator stays under [`EXACT_BITS_CAP`]
/// bits (returning `lo == hi`), then carries a dyadic enclosure, rounding
/// the lower end down and the upper end up after every squaring. Squaring
/// is monotone on `[0, 1]`, so the enclosure stays valid.
pub fn diss_iter_bounds(x: &Rational, n: u32, width: &Rational) -> Result<(Rational, Rational)> {
    check_unit(x)?;
    if !width.is_positive() {
        return Err(Error::Domain(format!("width must be positive, got {width}")));
    }
    let mut exact = x.clone();
    let mut done = 0u32;
    while done < n && exact.denom_bits() * 2 <= EXACT_BITS_CAP {
        exact = exact.square();
        done += 1;
    }
    if done == n {
        return Ok((exact.clone(), exact));
    }

    let remaining = n - done;
    // Each squaring at most doubles the enclosure width; start with enough
    // bits to absorb that and double if it was still not enough.
    let width_bits = u32::try_from((Rational::one() / width).ceil().bits()).unwrap_or(u32::MAX);
    let mut bits = remaining.saturating_add(width_bits).saturating_add(8).min(1 << 20);
    loop {
        let mut lo = round_down(&exact, bits);
        let mut hi = round_up(&exact, bits);
        let mut settled = false;
        for _ in 0..remaining {
            lo = round_down(&lo.square(), bits);
            hi = round_up(&hi.square(), bits);
            if hi <= *width {
                // Later states only shrink toward 0.
                lo = Rational::zero();
                settled = true;
                break;
            }
        }
        if settled || &hi - &lo <= *width {
            return Ok((lo, hi));
        }
        bits = bits.saturating_mul(2);
    }
}

/// A rational within `eps` of `x^(2^n)`.
pub fn diss_iter_approx(x: &Rational, n: u32, eps: &Rational) -> Result<Rational> {
    diss_iter_bounds(x, n, eps).map(|(lo, _)| lo)
}

/// `lim x^(2^n)`: 1 at `x = 1`, 0 elsewhere on `[0, 1]`.
pub fn limit_state(x: &Rational) -> Result<Rational> {
    check_unit(x)?;
    Ok(if *x == 1 {
        Rational::one()
    } else {
        Rational::zero()
    })
}

/// First `n <= max_n` with `x^(2^n) < threshold`, decided from exact values
/// or from enclosures fine enough to separate the state from `threshold`.
pub fn first_date_below(x: &Rational, threshold: &Rational, max_n: u32) -> Result<Option<u32>> {
    check_unit(x)?;
    if !threshold.is_positive() {
        return Err(Error::Domain("threshold must be positive".into()));
    }
    'dates: for n in 0..=max_n {
        let mut width = threshold.clone();
        for _ in 0..256 {
            let (lo, hi) = diss_iter_bounds(x, n, &width)?;
            if hi < *threshold {
                return Ok(Some(n));
            }
            if lo >= *threshold {
                continue 'dates;
            }
            width = width.shr(8);
        }
        return Err(Error::Domain(format!(
            "could not separate x^(2^{n}) from {threshold}"
        )));
    }
    Ok(None)
}

/// `x -> x^(2^n)` as a computable real function on `[0, 1]`.
///
/// The derivative is at most `2^n` there, so an input accuracy of
/// `ε / 2^(n+1)` costs at most `ε/2`; the other `ε/2` goes to
/// [`diss_iter_approx`].
pub fn diss_creal_fn(n: u32) -> CRealFn {
    let domain = Domain::unit();
    let d = domain.clone();
    CRealFn::new(
        domain,
        move |eps, x| {
            diss_iter_approx(&d.clamp(x), n, &eps.shr(1)).expect("clamped into [0, 1]")
        },
        move |eps| eps.shr(n + 1),
    )
}

/// Two points within `eta` whose limit states differ by `gap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitWitness {
    pub x: Rational,
    pub xp: Rational,
    pub eta: Rational,
    pub gap: Rational,
}

impl LimitWitness {
    pub fn verify(&self) -> Result<()> {
        let fail = |why: &str| Err(Error::Domain(format!("invalid limit witness: {why}")));
        if !self.x.in_unit_interval() || !self.xp.in_unit_interval() {
            return fail("point outside [0, 1]");
        }
        if (&self.x - &self.xp).abs() > self.eta {
            return fail("points further apart than eta");
        }
        let gap = (limit_state(&self.x)? - limit_state(&self.xp)?).abs();
        if gap != self.gap {
            return fail("recorded gap differs from the limit states");
        }
        if gap < q(1, 2) {
            return fail("gap below 1/2");
        }
        Ok(())
    }
}

/// `x = 1 - min(eta, 1/2)` and `xp = 1`: within `eta`, limit states 0 and 1.
pub fn discontinuity_witness(eta: &Rational) -> Result<LimitWitness> {
    if !eta.is_positive() {
        return Err(Error::Domain(format!("eta must be positive, got {eta}")));
    }
    let offset = Rational::min_of(eta, &q(1, 2));
    let x = Rational::one() - offset;
    let xp = Rational::one();
    let gap = (limit_state(&x)? - limit_state(&xp)?).abs();
    Ok(LimitWitness {
        x,
        xp,
        eta: eta.clone(),
        gap,
    })
}
