//! Computable reals and computable real functions in approximation-rule /
//! modulus-rule form.
//!
//! A [`CRealFn`] on a closed rational interval is a pair of rules: `approx`
//! maps an output accuracy `ε` and a rational input `q` to a rational, and
//! `modulus` maps `ε` to the input accuracy required. Together they promise
//!
//! ```text
//! |x - q| <= modulus(ε)  implies  |g(x) - approx(ε, q)| <= ε
//! ```
//!
//! for every `x` in the domain. All arithmetic is exact.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{q, Rational};

type ApproxRule = Arc<dyn Fn(&Rational) -> Rational + Send + Sync>;
type FnApproxRule = Arc<dyn Fn(&Rational, &Rational) -> Rational + Send + Sync>;
type ModulusRule = Arc<dyn Fn(&Rational) -> Rational + Send + Sync>;

/// A real number given by arbitrarily accurate rational approximations.
#[derive(Clone)]
pub struct CReal {
    approx: ApproxRule,
    exact: Option<Rational>,
}

impl CReal {
    /// `approx(ε)` must lie within `ε` of the denoted real for every `ε > 0`.
    pub fn from_rule(approx: impl Fn(&Rational) -> Rational + Send + Sync + 'static) -> Self {
        CReal {
            approx: Arc::new(approx),
            exact: None,
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        let value = r.clone();
        CReal {
            approx: Arc::new(move |_| value.clone()),
            exact: Some(r),
        }
    }

    pub fn approx(&self, eps: &Rational) -> Rational {
        match &self.exact {
            Some(r) => r.clone(),
            None => (self.approx)(eps),
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }
}

impl fmt::Debug for CReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => write!(f, "CReal({r})"),
            None => f.write_str("CReal(<rule>)"),
        }
    }
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    pub lo: Rational,
    pub hi: Rational,
}

impl Domain {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty domain [{lo}, {hi}]");
        Domain { lo, hi }
    }

    pub fn unit() -> Self {
        Domain::new(Rational::zero(), Rational::one())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn clamp(&self, x: &Rational) -> Rational {
        x.clamp_to(&self.lo, &self.hi)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

#[derive(Clone)]
pub struct CRealFn {
    approx: FnApproxRule,
    modulus: ModulusRule,
    domain: Domain,
}

impl CRealFn {
    pub fn new(
        domain: Domain,
        approx: impl Fn(&Rational, &Rational) -> Rational + Send + Sync + 'static,
        modulus: impl Fn(&Rational) -> Rational + Send + Sync + 'static,
    ) -> Self {
        CRealFn {
            approx: Arc::new(approx),
            modulus: Arc::new(modulus),
            domain,
        }
    }

    /// Identity on `domain`: approximation `q` clamped, modulus `ε`.
    pub fn identity(domain: Domain) -> Self {
        let d = domain.clone();
        CRealFn::new(domain, move |_, q| d.clamp(q), |eps| eps.clone())
    }

    pub fn constant(domain: Domain, value: Rational) -> Self {
        CRealFn::new(domain, move |_, _| value.clone(), |eps| eps.clone())
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// The approximation rule at accuracy `eps` and rational input `q`.
    pub fn approx_at(&self, eps: &Rational, q: &Rational) -> Rational {
        (self.approx)(eps, q)
    }

    /// The input accuracy required for output accuracy `eps`.
    pub fn modulus(&self, eps: &Rational) -> Rational {
        (self.modulus)(eps)
    }

    /// Same approximation rule, different modulus.
    pub fn with_modulus(
        &self,
        modulus: impl Fn(&Rational) -> Rational + Send + Sync + 'static,
    ) -> Self {
        CRealFn {
            approx: Arc::clone(&self.approx),
            modulus: Arc::new(modulus),
            domain: self.domain.clone(),
        }
    }
}

impl fmt::Debug for CRealFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CRealFn([{}, {}])", self.domain.lo, self.domain.hi)
    }
}

/// Value of `f` at `x` to within `eps`: asks `x` for an approximation at the
/// accuracy `f.modulus(eps)` and feeds it to the approximation rule.
pub fn apply(f: &CRealFn, x: &CReal, eps: &Rational) -> Result<Rational> {
    if !eps.is_positive() {
        return Err(Error::Domain(format!("accuracy must be positive, got {eps}")));
    }
    if let Some(exact) = x.exact() {
        if !f.domain.contains(exact) {
            return Err(Error::Domain(format!(
                "{exact} outside [{}, {}]",
                f.domain.lo, f.domain.hi
            )));
        }
    }
    let eta = f.modulus(eps);
    let q = x.approx(&eta);
    Ok(f.approx_at(eps, &q))
}

/// `outer ∘ inner`. The caller guarantees that the range of `inner` lies in
/// the domain of `outer`.
pub fn compose(outer: &CRealFn, inner: &CRealFn) -> CRealFn {
    let (fa, fm) = (Arc::clone(&outer.approx), Arc::clone(&outer.modulus));
    let (ga, gm) = (Arc::clone(&inner.approx), Arc::clone(&inner.modulus));
    let fm2 = Arc::clone(&fm);
    CRealFn {
        approx: Arc::new(move |eps, q| {
            let mid = fm(eps);
            fa(eps, &ga(&mid, q))
        }),
        modulus: Arc::new(move |eps| gm(&fm2(eps))),
        domain: inner.domain.clone(),
    }
}

/// One sampled violation of the modulus implication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub eps: Rational,
    pub x: Rational,
    pub q: Rational,
    /// Exact `g(x)` from the oracle.
    pub exact: Rational,
    pub approx: Rational,
}

impl Counterexample {
    pub fn error(&self) -> Rational {
        (&self.exact - &self.approx).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusReport {
    pub trials: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl ModulusReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// One `(ε, x, q)` triple with `x` in the domain and `|x - q| <= modulus(ε)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub eps: Rational,
    pub x: Rational,
    pub q: Rational,
}

/// Deterministic sample of `trials` triples for `f`.
///
/// Points are drawn from the domain endpoints, dyadic subdivisions of the
/// domain (where piecewise-linear maps break), offsets of those points by
/// exactly one modulus, and seeded random rationals. Each `q` sits at
/// `x`, `x ± η`, or a random rational in `[x - η, x + η]`.
pub fn sample_triples(f: &CRealFn, trials: usize, seed: u64) -> Vec<Triple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dom = f.domain();
    let width = dom.width();
    let fixed_eps = [q(1, 1), q(1, 2), q(1, 10), q(1, 100), q(1, 1000), q(3, 7)];

    let mut anchors = vec![dom.lo.clone(), dom.hi.clone()];
    for level in 1..=10u32 {
        let parts = 1i64 << level;
        for k in (1..parts).step_by(2) {
            anchors.push(&dom.lo + &width * q(k, parts));
        }
    }

    let mut out = Vec::with_capacity(trials);
    for t in 0..trials {
        let eps = if t % 3 == 0 {
            fixed_eps[(t / 3) % fixed_eps.len()].clone()
        } else {
            let den: i64 = rng.random_range(1..=1_000_000);
            q(rng.random_range(1..=den), den)
        };
        let eta = f.modulus(&eps);

        let mut x = if t % 2 == 0 {
            anchors[(t / 2) % anchors.len()].clone()
        } else {
            let den: i64 = rng.random_range(1..=1_000_000);
            &dom.lo + &width * q(rng.random_range(0..=den), den)
        };
        // Nudge half of the anchors off their breakpoint by one modulus.
        if t % 4 == 2 {
            let side = if rng.random_bool(0.5) { eta.clone() } else { -&eta };
            x = dom.clamp(&(&x + side));
        }

        let offset = match rng.random_range(0..4u8) {
            0 => Rational::zero(),
            1 => eta.clone(),
            2 => -&eta,
            _ => {
                let den: i64 = rng.random_range(1..=1_000_000);
                &eta * q(rng.random_range(-den..=den), den)
            }
        };
        let q = &x + offset;
        out.push(Triple { eps, x, q });
    }
    out
}

/// Tests the modulus implication of `f` on `trials` sampled triples against
/// an exact oracle for the denoted function. Returns every violation found.
pub fn check_modulus(
    f: &CRealFn,
    oracle: impl Fn(&Rational) -> Rational,
    trials: usize,
    seed: u64,
) -> ModulusReport {
    let counterexamples = sample_triples(f, trials, seed)
        .into_iter()
        .filter_map(|Triple { eps, x, q }| {
            let exact = oracle(&x);
            let approx = f.approx_at(&eps, &q);
            ((&exact - &approx).abs() > eps).then_some(Counterexample {
                eps,
                x,
                q,
                exact,
                approx,
            })
        })
        .collect();
    ModulusReport {
        trials,
        counterexamples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baker::{baker_creal_fn, baker_iter};

    #[test]
    fn from_rational_examples() {
        for (r, eps) in [(q(1, 3), q(1, 100)), (Rational::zero(), q(5, 1)), (q(-5, 2), q(1, 1))] {
            let x = CReal::from_rational(r.clone());
            assert_eq!(x.approx(&eps), r);
            assert_eq!(x.exact(), Some(&r));
        }
    }

    #[test]
    fn apply_examples() {
        let third = CReal::from_rational(q(1, 3));
        assert_eq!(apply(&baker_creal_fn(1), &third, &q(1, 8)).unwrap(), q(2, 3));
        assert_eq!(baker_creal_fn(1).modulus(&q(1, 8)), q(1, 16));

        let id = CRealFn::identity(Domain::unit());
        let half = CReal::from_rational(q(1, 2));
        assert_eq!(apply(&id, &half, &q(1, 10)).unwrap(), q(1, 2));

        let quarter = CReal::from_rational(q(1, 4));
        assert_eq!(apply(&baker_creal_fn(2), &quarter, &q(1, 100)).unwrap(), q(1, 1));
    }

    #[test]
    fn apply_errors() {
        let f = baker_creal_fn(1);
        let outside = CReal::from_rational(q(3, 2));
        assert!(matches!(apply(&f, &outside, &q(1, 8)), Err(Error::Domain(_))));
        let inside = CReal::from_rational(q(1, 2));
        assert!(matches!(apply(&f, &inside, &Rational::zero()), Err(Error::Domain(_))));
        assert!(matches!(apply(&f, &inside, &q(-1, 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn apply_with_inexact_argument() {
        // 1/3 given only through truncated binary expansions.
        let third = CReal::from_rule(|eps| {
            let mut k = 0u32;
            while Rational::inv_pow2(k) > *eps {
                k += 1;
            }
            Rational::new(Rational::pow2(k).floor() / 3, Rational::pow2(k).floor())
        });
        for n in 0..8u32 {
            let f = baker_creal_fn(n);
            for eps in [q(1, 10), q(1, 1000), q(1, 1 << 20)] {
                let got = apply(&f, &third, &eps).unwrap();
                let want = baker_iter(&q(1, 3), n).unwrap();
                assert!((&got - &want).abs() <= eps, "n={n} eps={eps}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn compose_moduli() {
        let f = CRealFn::identity(Domain::unit()).with_modulus(|e| e / q(2, 1));
        let g = CRealFn::identity(Domain::unit()).with_modulus(|e| e / q(4, 1));
        let c = compose(&f, &g);
        for eps in [q(1, 1), q(1, 3), q(7, 1000)] {
            assert_eq!(c.modulus(&eps), &eps / q(8, 1));
        }
    }

    #[test]
    fn compose_with_identity_is_neutral() {
        let f = baker_creal_fn(3);
        let c = compose(&CRealFn::identity(Domain::unit()), &f);
        for eps in [q(1, 2), q(1, 100)] {
            for x in [Rational::zero(), q(1, 3), q(5, 7), Rational::one(), q(-1, 9), q(10, 9)] {
                assert_eq!(c.approx_at(&eps, &x), f.approx_at(&eps, &x));
            }
            assert_eq!(c.modulus(&eps), f.modulus(&eps));
        }
    }

    #[test]
    fn composed_bakers_match_iterate() {
        let once = baker_creal_fn(1);
        let twice = compose(&once, &once);
        let direct = baker_creal_fn(2);
        for k in 0..=64i64 {
            let x = q(k, 64);
            let eps = q(1, 100);
            assert_eq!(twice.approx_at(&eps, &x), direct.approx_at(&eps, &x));
        }
        assert!(check_modulus(&twice, |x| baker_iter(x, 2).unwrap(), 2000, 5).holds());
    }

    #[test]
    fn check_modulus_examples() {
        let good = baker_creal_fn(2);
        assert!(check_modulus(&good, |x| baker_iter(x, 2).unwrap(), 1000, 0).holds());

        let bad = good.with_modulus(|e| e.clone());
        let report = check_modulus(&bad, |x| baker_iter(x, 2).unwrap(), 1000, 0);
        assert!(!report.holds());
        for c in &report.counterexamples {
            assert!((&c.x - &c.q).abs() <= c.eps);
            assert!(c.error() > c.eps);
        }

        let zero = CRealFn::constant(Domain::unit(), Rational::zero()).with_modulus(|_| q(1000, 1));
        assert!(check_modulus(&zero, |_| Rational::zero(), 1000, 0).holds());
    }

    #[test]
    fn sampled_triples_respect_modulus_and_seed() {
        let f = baker_creal_fn(4);
        let a = sample_triples(&f, 500, 9);
        assert_eq!(a, sample_triples(&f, 500, 9));
        assert_ne!(a, sample_triples(&f, 500, 10));
        for t in &a {
            assert!(f.domain().contains(&t.x));
            assert!((&t.x - &t.q).abs() <= f.modulus(&t.eps));
            assert!(t.eps.is_positive());
        }
        assert!(a.iter().any(|t| t.x == q(1, 2)));
        assert!(a.iter().any(|t| t.x == Rational::zero()));
    }

    #[test]
    fn sampled_uniform_continuity() {
        // |g(x) - g(x')| <= 2ε whenever |x - x'| <= η(ε), for x' in domain.
        for n in 0..=6u32 {
            let f = baker_creal_fn(n);
            for t in sample_triples(&f, 400, u64::from(n)) {
                if !f.domain().contains(&t.q) {
                    continue;
                }
                let gx = baker_iter(&t.x, n).unwrap();
                let gq = baker_iter(&t.q, n).unwrap();
                assert!((gx - gq).abs() <= &t.eps * q(2, 1));
            }
        }
    }

    #[test]
    fn domain_of_nontrivial_interval() {
        // x -> 3x on [-1, 2] with modulus ε/3.
        let d = Domain::new(q(-1, 1), q(2, 1));
        let dc = d.clone();
        let f = CRealFn::new(d, move |_, x| dc.clamp(x) * q(3, 1), |e| e / q(3, 1));
        assert!(check_modulus(&f, |x| x * q(3, 1), 1000, 1).holds());
        let loose = f.with_modulus(|e| e / q(2, 1));
        assert!(!check_modulus(&loose, |x| x * q(3, 1), 1000, 1).holds());
    }
}
