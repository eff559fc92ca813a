//! n-absorbing and n-OA membership: definition-level sweeps with witnesses,
//! and the structural fast path through locality and powers of the maximal
//! ideal.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{Elem, RingTable};

/// Which route decided the n-OA verdict in a [`ClassReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OaOracle {
    /// The tuple sweep ran and agreed with the fast path.
    BruteForce,
    /// The sweep exceeded its budget; the verdict is the fast path's.
    FastPathOnly,
}

#[derive(Debug, Clone)]
pub struct ClassReport {
    pub ideal: Ideal,
    pub n: usize,
    pub is_prime: bool,
    /// `None` when the sweep exceeded its budget.
    pub is_n_absorbing: Option<bool>,
    pub is_n_oa: bool,
    pub oracle: OaOracle,
    /// Lexicographically least nonunit tuple violating the n-OA condition.
    pub oa_witness: Option<Vec<Elem>>,
    /// Lexicographically least tuple violating n-absorption.
    pub absorbing_witness: Option<Vec<Elem>>,
}

fn check_args(ring: &RingTable, ideal: &Ideal, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be a positive integer".into()));
    }
    if ideal.members().len() != ring.size() {
        return Err(Error::RingMismatch);
    }
    if !ring.is_proper(ideal) {
        return Err(Error::ImproperIdeal);
    }
    Ok(())
}

struct Sweep<'a> {
    ring: &'a RingTable,
    ideal: &'a Ideal,
    nonunits: Vec<Elem>,
    n: usize,
    budget: u64,
    visits: u64,
    prefix: Vec<Elem>,
}

impl Sweep<'_> {
    fn tick(&mut self) -> Result<()> {
        self.visits += 1;
        if self.visits > self.budget {
            Err(Error::BudgetExceeded {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    /// Prefixes are nondecreasing (the prefix product is symmetric); the last
    /// slot ranges over every nonunit. A prefix whose partial product already
    /// lies in the ideal cannot produce a violation.
    fn oa(&mut self, start: usize, partial: Elem) -> Result<Option<Vec<Elem>>> {
        self.tick()?;
        if self.prefix.len() == self.n {
            for k in 0..self.nonunits.len() {
                self.tick()?;
                let a = self.nonunits[k];
                if !self.ideal.contains(a) && self.ideal.contains(self.ring.mul(partial, a)) {
                    let mut w = self.prefix.clone();
                    w.push(a);
                    return Ok(Some(w));
                }
            }
            return Ok(None);
        }
        for k in start..self.nonunits.len() {
            let a = self.nonunits[k];
            let next = self.ring.mul(partial, a);
            if self.ideal.contains(next) {
                self.tick()?;
                continue;
            }
            self.prefix.push(a);
            let found = self.oa(k, next)?;
            self.prefix.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Nondecreasing `(n+1)`-tuples of nonunits. A tuple containing a unit
    /// never violates absorption (drop the unit), and a prefix of length at
    /// most `n` inside the ideal makes the subproduct omitting the last entry
    /// lie in the ideal.
    fn absorbing(&mut self, start: usize, partial: Elem) -> Result<Option<Vec<Elem>>> {
        self.tick()?;
        if self.prefix.len() == self.n + 1 {
            if !self.ideal.contains(partial) {
                return Ok(None);
            }
            let t = &self.prefix;
            let len = t.len();
            let mut suffix = vec![self.ring.one(); len + 1];
            for i in (0..len).rev() {
                suffix[i] = self.ring.mul(t[i], suffix[i + 1]);
            }
            let mut left = self.ring.one();
            for i in 0..len {
                let omit = self.ring.mul(left, suffix[i + 1]);
                if self.ideal.contains(omit) {
                    return Ok(None);
                }
                left = self.ring.mul(left, t[i]);
            }
            return Ok(Some(self.prefix.clone()));
        }
        for k in start..self.nonunits.len() {
            let a = self.nonunits[k];
            let next = self.ring.mul(partial, a);
            if self.prefix.len() < self.n && self.ideal.contains(next) {
                self.tick()?;
                continue;
            }
            self.prefix.push(a);
            let found = self.absorbing(k, next)?;
            self.prefix.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

fn sweep<'a>(ring: &'a RingTable, ideal: &'a Ideal, n: usize) -> Sweep<'a> {
    Sweep {
        ring,
        ideal,
        nonunits: ring.nonunits(),
        n,
        budget: ring.limits().tuple_budget,
        visits: 0,
        prefix: Vec::with_capacity(n + 1),
    }
}

/// Brute-force n-absorbing test: every `(n+1)`-fold product inside `I` has an
/// `n`-fold subproduct inside `I`.
pub fn is_n_absorbing(ring: &RingTable, ideal: &Ideal, n: usize) -> Result<(bool, Option<Vec<Elem>>)> {
    check_args(ring, ideal, n)?;
    let w = sweep(ring, ideal, n).absorbing(0, ring.one())?;
    Ok((w.is_none(), w))
}

/// Brute-force n-OA test over nonunit tuples `(a1, ..., an, a(n+1))`.
pub fn is_n_oa(ring: &RingTable, ideal: &Ideal, n: usize) -> Result<(bool, Option<Vec<Elem>>)> {
    check_args(ring, ideal, n)?;
    let w = sweep(ring, ideal, n).oa(0, ring.one())?;
    Ok((w.is_none(), w))
}

/// Non-local ring: n-OA iff prime. Local ring with maximal ideal `M`: n-OA iff
/// prime or `M^n ⊆ I`.
pub fn is_n_oa_fast(ring: &RingTable, ideal: &Ideal, n: usize) -> Result<bool> {
    check_args(ring, ideal, n)?;
    if ring.is_prime(ideal)? {
        return Ok(true);
    }
    if !ring.is_local() {
        return Ok(false);
    }
    let m = &ring.maximal_ideals()[0];
    let mn = ring.ideal_power(m, n as u32)?;
    Ok(mn.is_subset(ideal))
}

/// Proper n-OA ideals in canonical order (fast path).
pub fn list_n_oa_ideals(ring: &RingTable, n: usize) -> Result<Vec<Ideal>> {
    let mut out = Vec::new();
    for i in ring.proper_ideals()? {
        if is_n_oa_fast(ring, &i, n)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// Checks that a tuple really violates the n-OA condition for `ideal`.
pub fn replay_oa_witness(ring: &RingTable, ideal: &Ideal, n: usize, tuple: &[Elem]) -> bool {
    if tuple.len() != n + 1 || tuple.iter().any(|&a| a >= ring.size() || ring.is_unit(a)) {
        return false;
    }
    let prefix = tuple[..n].iter().fold(ring.one(), |acc, &a| ring.mul(acc, a));
    let last = tuple[n];
    ideal.contains(ring.mul(prefix, last)) && !ideal.contains(prefix) && !ideal.contains(last)
}

/// Checks that a tuple really violates n-absorption for `ideal`.
pub fn replay_absorbing_witness(ring: &RingTable, ideal: &Ideal, n: usize, tuple: &[Elem]) -> bool {
    if tuple.len() != n + 1 || tuple.iter().any(|&a| a >= ring.size()) {
        return false;
    }
    let total = tuple.iter().fold(ring.one(), |acc, &a| ring.mul(acc, a));
    ideal.contains(total)
        && (0..tuple.len()).all(|skip| {
            let sub = tuple
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .fold(ring.one(), |acc, (_, &a)| ring.mul(acc, a));
            !ideal.contains(sub)
        })
}

/// Full class report: the sweeps run when they fit the budget; otherwise the
/// fast path decides and the report says so.
pub fn classify_ideal(ring: &RingTable, ideal: &Ideal, n: usize) -> Result<ClassReport> {
    check_args(ring, ideal, n)?;
    let is_prime = ring.is_prime(ideal)?;
    let fast = is_n_oa_fast(ring, ideal, n)?;
    let (is_n_oa, oracle, oa_witness) = match is_n_oa(ring, ideal, n) {
        Ok((v, w)) => (v, OaOracle::BruteForce, w),
        Err(Error::BudgetExceeded { .. }) => (fast, OaOracle::FastPathOnly, None),
        Err(e) => return Err(e),
    };
    let (is_n_absorbing, absorbing_witness) = match is_n_absorbing(ring, ideal, n) {
        Ok((v, w)) => (Some(v), w),
        Err(Error::BudgetExceeded { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(ClassReport {
        ideal: ideal.clone(),
        n,
        is_prime,
        is_n_absorbing,
        is_n_oa,
        oracle,
        oa_witness,
        absorbing_witness,
    })
}

/// Every ideal is idempotent; the witness is the first one that is not.
pub fn is_von_neumann_regular(ring: &RingTable) -> Result<(bool, Option<Ideal>)> {
    for i in ring.all_ideals()? {
        if !ring.is_idempotent(i)? {
            return Ok((false, Some(i.clone())));
        }
    }
    Ok((true, None))
}

/// All local factors are fields.
pub fn is_product_of_fields(ring: &Arc<RingTable>) -> Result<bool> {
    Ok(ring
        .local_decomposition()?
        .iter()
        .all(|f| f.ring.is_field()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_zmod;
    use crate::spec::RingSpec;
    use crate::Limits;

    #[test]
    fn z8_ideal_four() {
        let r = build_zmod(8, Limits::default()).unwrap();
        let four = r.principal_ideal(4);
        assert!(!r.is_prime(&four).unwrap());
        assert_eq!(is_n_absorbing(&r, &four, 2).unwrap(), (true, None));
        let (ok, w) = is_n_absorbing(&r, &four, 1).unwrap();
        assert!(!ok);
        assert_eq!(w, Some(vec![2, 2]));
    }

    #[test]
    fn square_of_maximal_is_2_absorbing() {
        let r = RingSpec::truncated_bivariate(2, 3).build(Limits::default()).unwrap();
        let m = r.maximal_ideals()[0].clone();
        let m2 = r.ideal_product(&m, &m).unwrap();
        assert_eq!(is_n_absorbing(&r, &m2, 2).unwrap(), (true, None));
        assert!(!is_n_absorbing(&r, &m2, 1).unwrap().0);
    }

    #[test]
    fn z6_zero_ideal_is_never_oa() {
        let r = build_zmod(6, Limits::default()).unwrap();
        let zero = r.zero_ideal();
        for n in 1..=4 {
            assert!(!is_n_oa_fast(&r, &zero, n).unwrap());
            let (ok, w) = is_n_oa(&r, &zero, n).unwrap();
            assert!(!ok);
            assert!(replay_oa_witness(&r, &zero, n, &w.unwrap()));
        }
        assert_eq!(is_n_oa(&r, &zero, 1).unwrap().1, Some(vec![2, 3]));
    }

    #[test]
    fn z4_lists() {
        let r = build_zmod(4, Limits::default()).unwrap();
        let list = list_n_oa_ideals(&r, 2).unwrap();
        assert_eq!(list, vec![r.zero_ideal(), r.principal_ideal(2)]);
        for i in &list {
            assert!(is_n_oa(&r, i, 2).unwrap().0);
        }
        assert_eq!(list_n_oa_ideals(&r, 1).unwrap(), vec![r.principal_ideal(2)]);
    }

    #[test]
    fn field_has_only_zero() {
        let r = build_zmod(5, Limits::default()).unwrap();
        for n in 1..=4 {
            assert_eq!(list_n_oa_ideals(&r, n).unwrap(), vec![r.zero_ideal()]);
        }
        let rep = classify_ideal(&r, &r.zero_ideal(), 3).unwrap();
        assert!(rep.is_prime && rep.is_n_oa && rep.is_n_absorbing == Some(true));
    }

    #[test]
    fn von_neumann_regular_examples() {
        let z6 = build_zmod(6, Limits::default()).unwrap();
        assert_eq!(is_von_neumann_regular(&z6).unwrap(), (true, None));
        assert!(is_product_of_fields(&z6).unwrap());
        let z4 = build_zmod(4, Limits::default()).unwrap();
        assert_eq!(
            is_von_neumann_regular(&z4).unwrap(),
            (false, Some(z4.principal_ideal(2)))
        );
        assert!(!is_product_of_fields(&z4).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let r = build_zmod(
            64,
            Limits {
                tuple_budget: 10,
                ..Limits::default()
            },
        )
        .unwrap();
        assert!(matches!(
            is_n_oa(&r, &r.principal_ideal(8), 3),
            Err(Error::BudgetExceeded { budget: 10 })
        ));
        let rep = classify_ideal(&r, &r.principal_ideal(8), 3).unwrap();
        assert_eq!(rep.oracle, OaOracle::FastPathOnly);
        assert_eq!(rep.is_n_absorbing, None);
    }

    #[test]
    fn rejects_bad_arguments() {
        let r = build_zmod(4, Limits::default()).unwrap();
        assert!(matches!(is_n_oa(&r, &r.zero_ideal(), 0), Err(Error::InvalidArgument(_))));
        assert_eq!(is_n_oa_fast(&r, &r.unit_ideal(), 1), Err(Error::ImproperIdeal));
    }
}
