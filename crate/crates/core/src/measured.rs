//! The map as seen through a `d`-digit measuring device.
//!
//! A readout `k` at `d` digits stands for every position the device reports
//! as `k / 10^d`: the half-open cell `[k/10^d, (k+1)/10^d)`, or `{1}` for the
//! top readout `k = 10^d`. Measurement truncates. Since a cell holds many
//! positions, one readout can be followed by several; the successor relation
//! is computed exactly from the image of the cell under each branch of the
//! map, with open and closed endpoints tracked so that single-point
//! contacts are not lost.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::rational::{q, Rational};

/// Largest supported digit count; `10^d` must fit in a `u64`.
pub const MAX_DIGITS: u32 = 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Readout {
    digits: u32,
    index: u64,
}

impl Readout {
    pub fn new(digits: u32, index: u64) -> Result<Self> {
        if digits == 0 || digits > MAX_DIGITS {
            return Err(Error::InvalidState(format!(
                "digit count {digits} outside 1..={MAX_DIGITS}"
            )));
        }
        let scale = 10u64.pow(digits);
        if index > scale {
            return Err(Error::InvalidState(format!(
                "readout index {index} exceeds 10^{digits}"
            )));
        }
        Ok(Readout { digits, index })
    }

    /// Parses fixed-point text with exactly `digits` fractional digits,
    /// e.g. `0.000` or `1.000` for three digits.
    pub fn parse(text: &str, digits: u32) -> Result<Self> {
        let bad = || {
            Error::Parse(format!(
                "readout {text:?} is not a {digits}-digit value like 0.{}",
                "0".repeat(digits as usize)
            ))
        };
        let (int, frac) = text.trim().split_once('.').ok_or_else(bad)?;
        if frac.len() != digits as usize || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let frac: u64 = frac.parse().map_err(|_| bad())?;
        let index = match int {
            "0" => frac,
            "1" if frac == 0 => 10u64.pow(digits),
            _ => return Err(bad()),
        };
        Readout::new(digits, index)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn scale(&self) -> u64 {
        10u64.pow(self.digits)
    }

    pub fn is_top(&self) -> bool {
        self.index == self.scale()
    }

    /// The reported value `k / 10^d`.
    pub fn value(&self) -> Rational {
        Rational::new(self.index, self.scale())
    }

    /// The set of positions producing this readout.
    pub fn cell(&self) -> Span {
        if self.is_top() {
            Span::point(Rational::one())
        } else {
            Span {
                lo: self.value(),
                lo_closed: true,
                hi: Rational::new(self.index + 1, self.scale()),
                hi_closed: false,
            }
        }
    }
}

impl fmt::Display for Readout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = self.scale();
        write!(
            f,
            "{}.{:0width$}",
            self.index / scale,
            self.index % scale,
            width = self.digits as usize
        )
    }
}

/// An interval of rationals with independently open or closed ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: Rational,
    pub hi_closed: bool,
}

impl Span {
    pub fn point(x: Rational) -> Self {
        Span {
            lo: x.clone(),
            lo_closed: true,
            hi: x,
            hi_closed: true,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { x >= &self.lo } else { x > &self.lo };
        let below = if self.hi_closed { x <= &self.hi } else { x < &self.hi };
        above && below
    }

    pub fn intersect(&self, other: &Span) -> Span {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Greater => (self.lo.clone(), self.lo_closed),
            std::cmp::Ordering::Less => (other.lo.clone(), other.lo_closed),
            std::cmp::Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.hi_closed),
            std::cmp::Ordering::Greater => (other.hi.clone(), other.hi_closed),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Span {
            lo,
            lo_closed,
            hi,
            hi_closed,
        }
    }

    /// Some member of a non-empty span.
    pub fn pick(&self) -> Rational {
        debug_assert!(!self.is_empty());
        if self.lo_closed {
            self.lo.clone()
        } else if self.hi_closed {
            self.hi.clone()
        } else {
            (&self.lo + &self.hi).shr(1)
        }
    }
}

/// Truncating measurement of a position in `[0, 1]`.
pub fn measure(x: &Rational, digits: u32) -> Result<Readout> {
    if !x.in_unit_interval() {
        return Err(Error::Domain(format!("{x} is outside [0, 1]")));
    }
    // Validate the digit count before scaling.
    let top = Readout::new(digits, 0)?.scale();
    let k = (x * Rational::from_integer(top))
        .floor()
        .to_u64()
        .expect("0 <= k <= 10^d");
    Readout::new(digits, k)
}

/// One branch of the map restricted to part of a cell.
#[derive(Debug, Clone)]
struct BranchImage {
    /// Part of the cell handled by this branch.
    image: Span,
    /// `true` for `x -> 2x`, `false` for `x -> 2 - 2x`.
    left: bool,
}

impl BranchImage {
    /// Inverse of the branch, mapping an image point back into the cell.
    fn preimage(&self, y: &Rational) -> Rational {
        if self.left {
            y.shr(1)
        } else {
            Rational::one() - y.shr(1)
        }
    }
}

fn branch_images(cell: &Span) -> Vec<BranchImage> {
    let half = q(1, 2);
    let mut out = Vec::with_capacity(2);

    let left = cell.intersect(&Span {
        lo: Rational::zero(),
        lo_closed: true,
        hi: half.clone(),
        hi_closed: true,
    });
    if !left.is_empty() {
        out.push(BranchImage {
            image: Span {
                lo: left.lo.shl(1),
                lo_closed: left.lo_closed,
                hi: left.hi.shl(1),
                hi_closed: left.hi_closed,
            },
            left: true,
        });
    }

    let right = cell.intersect(&Span {
        lo: half,
        lo_closed: false,
        hi: Rational::one(),
        hi_closed: true,
    });
    if !right.is_empty() {
        let two = Rational::from_integer(2);
        // Decreasing branch: endpoints swap.
        out.push(BranchImage {
            image: Span {
                lo: &two - right.hi.shl(1),
                lo_closed: right.hi_closed,
                hi: &two - right.lo.shl(1),
                hi_closed: right.lo_closed,
            },
            left: false,
        });
    }
    out
}

/// Readout indices met by a non-empty span inside `[0, 1]`.
fn indices_met(span: &Span, digits: u32) -> std::ops::RangeInclusive<u64> {
    let lowest = measure(&span.lo, digits).expect("span inside [0, 1]").index();
    let highest = if span.hi_closed {
        measure(&span.hi, digits).expect("span inside [0, 1]").index()
    } else {
        // Points just below an open end.
        let scaled = &span.hi * Rational::from_integer(10u64.pow(digits));
        let k = scaled.floor().to_u64().expect("bounded");
        if scaled.is_integer() {
            k - 1
        } else {
            k
        }
    };
    lowest..=highest
}

/// A successor readout together with a position in the source cell that
/// realizes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Successor {
    pub readout: Readout,
    pub witness: Rational,
}

/// Every readout that can follow `m`, each with a witnessing position.
pub fn successors_with_witnesses(m: Readout) -> Result<Vec<Successor>> {
    let m = Readout::new(m.digits, m.index)?;
    let mut found: Vec<Successor> = Vec::new();
    for branch in branch_images(&m.cell()) {
        for k in indices_met(&branch.image, m.digits) {
            if found.iter().any(|s| s.readout.index == k) {
                continue;
            }
            let target = Readout::new(m.digits, k)?;
            let meet = branch.image.intersect(&target.cell());
            debug_assert!(!meet.is_empty());
            found.push(Successor {
                readout: target,
                witness: branch.preimage(&meet.pick()),
            });
        }
    }
    found.sort_by_key(|s| s.readout.index);
    Ok(found)
}

/// Sorted non-empty set of readouts at a fixed digit count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessorSet {
    digits: u32,
    members: BTreeSet<u64>,
}

impl SuccessorSet {
    fn singleton(m: Readout) -> Self {
        SuccessorSet {
            digits: m.digits,
            members: BTreeSet::from([m.index]),
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    pub fn readouts(&self) -> impl Iterator<Item = Readout> + '_ {
        let digits = self.digits;
        self.members.iter().map(move |&index| Readout { digits, index })
    }

    pub fn contains(&self, m: Readout) -> bool {
        m.digits == self.digits && self.members.contains(&m.index)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl fmt::Display for SuccessorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for r in self.readouts() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
            first = false;
        }
        Ok(())
    }
}

pub fn successors(m: Readout) -> Result<SuccessorSet> {
    Ok(SuccessorSet {
        digits: m.digits,
        members: successors_with_witnesses(m)?
            .into_iter()
            .map(|s| s.readout.index)
            .collect(),
    })
}

/// The whole successor relation at `digits` digits, one row per readout.
pub fn relation_table(digits: u32) -> Result<Vec<(Readout, SuccessorSet)>> {
    let scale = Readout::new(digits, 0)?.scale();
    (0..=scale)
        .map(|k| {
            let m = Readout::new(digits, k)?;
            Ok((m, successors(m)?))
        })
        .collect()
}

/// Readouts reachable from `m` in exactly `steps` steps.
pub fn reach_n(m: Readout, steps: u32) -> Result<SuccessorSet> {
    let m = Readout::new(m.digits, m.index)?;
    let mut cache: HashMap<u64, SuccessorSet> = HashMap::new();
    let mut frontier = SuccessorSet::singleton(m);
    for _ in 0..steps {
        let mut next = BTreeSet::new();
        for r in frontier.readouts() {
            if !cache.contains_key(&r.index) {
                cache.insert(r.index, successors(r)?);
            }
            next.extend(cache[&r.index].indices());
        }
        frontier = SuccessorSet {
            digits: m.digits,
            members: next,
        };
    }
    Ok(frontier)
}

/// Half the distance between neighbouring readout values, `1 / (2 * 10^d)`.
pub fn readout_separation_eta(digits: u32) -> Result<Rational> {
    let scale = Readout::new(digits, 0)?.scale();
    Ok(Rational::new(1, 2 * u128::from(scale)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baker::baker_step;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(d: u32, k: u64) -> Readout {
        Readout::new(d, k).unwrap()
    }

    fn succ_idx(d: u32, k: u64) -> Vec<u64> {
        successors(r(d, k)).unwrap().indices().collect()
    }

    #[test]
    fn measure_examples() {
        assert_eq!(measure(&q(49, 100_000), 3).unwrap(), r(3, 0));
        assert_eq!(measure(&Rational::one(), 3).unwrap(), r(3, 1000));
        assert_eq!(measure(&q(1, 2), 3).unwrap(), r(3, 500));
        assert_eq!(measure(&q(999_999, 1_000_000), 3).unwrap(), r(3, 999));
        assert!(matches!(measure(&q(11, 10), 3), Err(Error::Domain(_))));
        assert!(matches!(measure(&q(1, 2), 0), Err(Error::InvalidState(_))));
    }

    #[test]
    fn readout_text() {
        assert_eq!(r(3, 0).to_string(), "0.000");
        assert_eq!(r(3, 1000).to_string(), "1.000");
        assert_eq!(r(3, 7).to_string(), "0.007");
        assert_eq!(r(1, 5).to_string(), "0.5");
        assert_eq!(Readout::parse("0.500", 3).unwrap(), r(3, 500));
        assert_eq!(Readout::parse("1.000", 3).unwrap(), r(3, 1000));
        for bad in ["0.50", "1.001", "2.000", "0,500", "0.5000", "-0.500", ".500"] {
            assert!(Readout::parse(bad, 3).is_err(), "{bad}");
        }
        assert!(Readout::new(3, 1001).is_err());
    }

    #[test]
    fn successor_examples() {
        assert_eq!(succ_idx(3, 0), vec![0, 1]);
        assert_eq!(succ_idx(3, 999), vec![0, 1, 2]);
        assert_eq!(succ_idx(3, 500), vec![998, 999, 1000]);
        assert_eq!(succ_idx(3, 1000), vec![0]);
        assert_eq!(successors(r(3, 0)).unwrap().to_string(), "0.000,0.001");
    }

    #[test]
    fn relation_table_d1() {
        let table = relation_table(1).unwrap();
        assert_eq!(table.len(), 11);
        let rows: Vec<Vec<u64>> = table.iter().map(|(_, s)| s.indices().collect()).collect();
        assert_eq!(rows[0], vec![0, 1]);
        assert_eq!(rows[10], vec![0]);
        assert_eq!(rows[5], vec![8, 9, 10]);
        for (m, s) in &table {
            assert!(!s.is_empty(), "{m}");
        }
    }

    #[test]
    fn reach_examples() {
        let m = r(3, 0);
        assert_eq!(reach_n(m, 0).unwrap().indices().collect::<Vec<_>>(), vec![0]);
        assert_eq!(reach_n(m, 2).unwrap().indices().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(reach_n(r(3, 1000), 1).unwrap().indices().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn reach_recurrence() {
        for d in 1..=2u32 {
            for k in 0..=10u64.pow(d) {
                let m = r(d, k);
                for n in 0..6 {
                    let mut expected = BTreeSet::new();
                    for x in reach_n(m, n).unwrap().readouts() {
                        expected.extend(successors(x).unwrap().indices());
                    }
                    let got: BTreeSet<u64> = reach_n(m, n + 1).unwrap().indices().collect();
                    assert_eq!(got, expected);
                }
            }
        }
    }

    #[test]
    fn witnesses_realize_each_successor() {
        for d in 1..=3u32 {
            for k in 0..=10u64.pow(d) {
                let m = r(d, k);
                for s in successors_with_witnesses(m).unwrap() {
                    assert!(m.cell().contains(&s.witness), "{m}: {}", s.witness);
                    assert_eq!(measure(&baker_step(&s.witness).unwrap(), d).unwrap(), s.readout);
                }
            }
        }
    }

    #[test]
    fn sampled_soundness() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 1..=2u32 {
            let scale = 10u64.pow(d);
            for k in 0..=scale {
                let m = r(d, k);
                let succ = successors(m).unwrap();
                for _ in 0..200 {
                    let x = if m.is_top() {
                        Rational::one()
                    } else {
                        let den: i64 = rng.random_range(1..=1_000_000);
                        let t = q(rng.random_range(0..den), den);
                        (Rational::from_integer(k) + t) / Rational::from_integer(scale)
                    };
                    assert!(m.cell().contains(&x));
                    let y = measure(&baker_step(&x).unwrap(), d).unwrap();
                    assert!(succ.contains(y), "{m} -> {y}");
                }
            }
        }
    }

    #[test]
    fn nondeterminism_is_present() {
        let table = relation_table(3).unwrap();
        assert!(table.iter().any(|(_, s)| s.len() >= 2));
        assert!(table.iter().all(|(_, s)| (1..=3).contains(&s.len())));
    }

    #[test]
    fn readout_sensitivity_collapses() {
        for d in 1..=2u32 {
            let eta = readout_separation_eta(d).unwrap();
            let scale = 10u64.pow(d);
            for i in 0..=scale {
                for j in 0..=scale {
                    let close = (r(d, i).value() - r(d, j).value()).abs() <= eta;
                    assert_eq!(close, i == j);
                }
            }
        }
    }

    #[test]
    fn span_basics() {
        let open = Span {
            lo: q(0, 1),
            lo_closed: false,
            hi: q(0, 1),
            hi_closed: true,
        };
        assert!(open.is_empty());
        assert!(!Span::point(q(1, 2)).is_empty());
        let a = r(3, 10).cell();
        assert!(a.contains(&q(1, 100)));
        assert!(!a.contains(&q(11, 1000)));
    }
}
