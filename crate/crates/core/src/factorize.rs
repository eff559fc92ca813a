//! Factorization of ideals into n-OA or prime ideals through the
//! multiplicative closure of the factor class, with replayable certificates.

use std::collections::HashMap;
use std::fmt;

use crate::classify::{self, ClassReport};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::RingTable;

/// The factor class a certificate draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorClass {
    Prime,
    NOa(usize),
}

impl fmt::Display for FactorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorClass::Prime => f.write_str("prime"),
            FactorClass::NOa(n) => write!(f, "n-OA({n})"),
        }
    }
}

impl FactorClass {
    /// Generators of the class: primes come from the lattice filtered by the
    /// prime predicate; n-OA ideals from the fast path.
    pub fn generators(&self, ring: &RingTable) -> Result<Vec<Ideal>> {
        match *self {
            FactorClass::Prime => {
                let mut out = Vec::new();
                for i in ring.proper_ideals()? {
                    if ring.is_prime(&i)? {
                        out.push(i);
                    }
                }
                Ok(out)
            }
            FactorClass::NOa(n) => classify::list_n_oa_ideals(ring, n),
        }
    }

    pub fn admits(&self, ring: &RingTable, ideal: &Ideal) -> Result<bool> {
        match *self {
            FactorClass::Prime => ring.is_prime(ideal),
            FactorClass::NOa(n) => classify::is_n_oa_fast(ring, ideal, n),
        }
    }
}

/// Ideals reachable as finite products of generators, with one recorded
/// derivation each.
#[derive(Debug, Clone)]
pub struct ClosureIndex {
    generators: Vec<Ideal>,
    /// Discovery order.
    order: Vec<Ideal>,
    /// `None` for generators; otherwise `(predecessor, generator index)`.
    parent: HashMap<Ideal, Option<(Ideal, usize)>>,
}

impl ClosureIndex {
    pub fn generators(&self) -> &[Ideal] {
        &self.generators
    }

    pub fn contains(&self, ideal: &Ideal) -> bool {
        self.parent.contains_key(ideal)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Representable ideals in discovery order.
    pub fn iter(&self) -> impl Iterator<Item = &Ideal> {
        self.order.iter()
    }

    /// Factor list recovered from parent links, sorted canonically.
    pub fn factors(&self, target: &Ideal) -> Option<Vec<Ideal>> {
        let mut cur = self.parent.get(target)?;
        let mut out = Vec::new();
        let mut last = target.clone();
        while let Some((pred, g)) = cur {
            out.push(self.generators[*g].clone());
            last = pred.clone();
            cur = &self.parent[pred];
        }
        out.push(last);
        out.sort();
        Some(out)
    }
}

/// Breadth-first closure under multiplication by a generator. Starting from
/// the generators this reaches the whole semigroup they generate.
pub fn multiplicative_closure(ring: &RingTable, generators: &[Ideal]) -> Result<ClosureIndex> {
    let mut gens: Vec<Ideal> = generators.to_vec();
    gens.sort();
    gens.dedup();
    for g in &gens {
        if g.members().len() != ring.size() {
            return Err(Error::RingMismatch);
        }
        if !ring.is_proper(g) {
            return Err(Error::ImproperIdeal);
        }
    }
    let mut parent: HashMap<Ideal, Option<(Ideal, usize)>> = HashMap::new();
    let mut order = Vec::new();
    for g in &gens {
        parent.insert(g.clone(), None);
        order.push(g.clone());
    }
    let mut cursor = 0;
    while cursor < order.len() {
        let current = order[cursor].clone();
        cursor += 1;
        for (gi, g) in gens.iter().enumerate() {
            let p = ring.ideal_product(&current, g)?;
            if !parent.contains_key(&p) {
                parent.insert(p.clone(), Some((current.clone(), gi)));
                order.push(p);
            }
        }
    }
    Ok(ClosureIndex {
        generators: gens,
        order,
        parent,
    })
}

/// Ordered factor list with per-factor class proofs.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub target: Ideal,
    pub factors: Vec<Ideal>,
    pub class: FactorClass,
    pub proofs: Vec<ClassReport>,
}

impl Certificate {
    /// Multiplies the factors back together and re-checks each factor's class.
    pub fn replay(&self, ring: &RingTable) -> Result<bool> {
        if self.factors.is_empty() {
            return Ok(false);
        }
        let mut acc = self.factors[0].clone();
        for f in &self.factors[1..] {
            acc = ring.ideal_product(&acc, f)?;
        }
        if acc != self.target {
            return Ok(false);
        }
        for f in &self.factors {
            if !self.class.admits(ring, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn build_certificate(
    ring: &RingTable,
    target: &Ideal,
    factors: Vec<Ideal>,
    class: FactorClass,
) -> Result<Certificate> {
    let n = match class {
        FactorClass::Prime => 1,
        FactorClass::NOa(n) => n,
    };
    let proofs = factors
        .iter()
        .map(|f| classify::classify_ideal(ring, f, n))
        .collect::<Result<Vec<_>>>()?;
    let cert = Certificate {
        target: target.clone(),
        factors,
        class,
        proofs,
    };
    if !cert.replay(ring)? {
        return Err(Error::InvalidArgument("certificate failed to replay".into()));
    }
    Ok(cert)
}

/// Certificate for `target` from an existing closure, if representable.
pub fn certificate_from_closure(
    ring: &RingTable,
    closure: &ClosureIndex,
    target: &Ideal,
    class: FactorClass,
) -> Result<Option<Certificate>> {
    if !ring.is_proper(target) {
        return Err(Error::ImproperIdeal);
    }
    match closure.factors(target) {
        Some(f) => Ok(Some(build_certificate(ring, target, f, class)?)),
        None => Ok(None),
    }
}

/// Searches for a factorization of `target` into ideals of `class`.
pub fn find_factorization(
    ring: &RingTable,
    target: &Ideal,
    class: FactorClass,
) -> Result<Option<Certificate>> {
    if target.members().len() != ring.size() {
        return Err(Error::RingMismatch);
    }
    if !ring.is_proper(target) {
        return Err(Error::ImproperIdeal);
    }
    let closure = multiplicative_closure(ring, &class.generators(ring)?)?;
    certificate_from_closure(ring, &closure, target, class)
}

/// Whether every proper ideal is representable; otherwise the least
/// unrepresentable proper ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OafVerdict {
    pub holds: bool,
    pub witness: Option<Ideal>,
}

fn representability(ring: &RingTable, class: FactorClass) -> Result<OafVerdict> {
    let closure = multiplicative_closure(ring, &class.generators(ring)?)?;
    let witness = ring
        .all_ideals()?
        .iter()
        .find(|i| ring.is_proper(i) && !closure.contains(i))
        .cloned();
    Ok(OafVerdict {
        holds: witness.is_none(),
        witness,
    })
}

/// Every proper ideal is a product of n-OA ideals.
pub fn is_n_oaf(ring: &RingTable, n: usize) -> Result<OafVerdict> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be a positive integer".into()));
    }
    representability(ring, FactorClass::NOa(n))
}

/// Every proper ideal is a product of prime ideals.
pub fn is_general_zpi(ring: &RingTable) -> Result<OafVerdict> {
    representability(ring, FactorClass::Prime)
}

/// Least `n <= n_max` with `is_n_oaf(ring, n)`. Being n-OAF is monotone in
/// `n`, so the boundary is found by bisection.
pub fn oaf_dim(ring: &RingTable, n_max: usize) -> Result<Option<usize>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let (mut lo, mut hi) = (1usize, n_max + 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if is_n_oaf(ring, mid)?.holds {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok((lo <= n_max).then_some(lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_zmod;
    use crate::Limits;

    #[test]
    fn z12_prime_closure_covers_everything() {
        let r = build_zmod(12, Limits::default()).unwrap();
        let primes = FactorClass::Prime.generators(&r).unwrap();
        assert_eq!(primes, vec![r.principal_ideal(3), r.principal_ideal(2)]);
        let c = multiplicative_closure(&r, &primes).unwrap();
        for i in r.proper_ideals().unwrap() {
            assert!(c.contains(&i), "{}", r.ideal_name(&i));
        }
        let cert = find_factorization(&r, &r.principal_ideal(4), FactorClass::Prime)
            .unwrap()
            .unwrap();
        assert_eq!(cert.factors, vec![r.principal_ideal(2), r.principal_ideal(2)]);
        assert!(cert.replay(&r).unwrap());
    }

    #[test]
    fn empty_generators_give_empty_closure() {
        let r = build_zmod(4, Limits::default()).unwrap();
        assert!(multiplicative_closure(&r, &[]).unwrap().is_empty());
    }

    #[test]
    fn whole_ring_is_not_a_target() {
        let r = build_zmod(4, Limits::default()).unwrap();
        assert!(matches!(
            find_factorization(&r, &r.unit_ideal(), FactorClass::Prime),
            Err(Error::ImproperIdeal)
        ));
    }

    #[test]
    fn oaf_dim_of_small_rings() {
        let z12 = build_zmod(12, Limits::default()).unwrap();
        assert_eq!(oaf_dim(&z12, 4).unwrap(), Some(1));
        let f = build_zmod(7, Limits::default()).unwrap();
        for n in 1..=4 {
            assert!(is_n_oaf(&f, n).unwrap().holds);
        }
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let r = build_zmod(12, Limits::default()).unwrap();
        let mut cert = find_factorization(&r, &r.principal_ideal(6), FactorClass::Prime)
            .unwrap()
            .unwrap();
        cert.factors.pop();
        assert!(!cert.replay(&r).unwrap());
    }
}
