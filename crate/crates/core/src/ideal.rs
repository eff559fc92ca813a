//! Ideals as membership masks, the ideal lattice, ideal arithmetic and the
//! classical predicates.

use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ring::{Elem, RingTable};

/// An ideal of one ring, identified by its member set. Ordering is the
/// canonical lattice order: size first, then the mask as an integer.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Ideal {
    members: BitSet,
}

impl Ideal {
    pub(crate) fn from_members(members: BitSet) -> Self {
        Ideal { members }
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.members.count()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter()
    }
}

/// Projection of a homogeneous ideal `I ∝ V` of a trivial extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousView {
    pub base: Ideal,
    /// Members of `V` as module element ids.
    pub module_part: BitSet,
}

impl RingTable {
    fn same_ring(&self, i: &Ideal) -> Result<()> {
        if i.members.len() == self.size() {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal::from_members(BitSet::from_indices(self.size(), [self.zero()]))
    }

    pub fn unit_ideal(&self) -> Ideal {
        Ideal::from_members(BitSet::full(self.size()))
    }

    pub fn is_proper(&self, i: &Ideal) -> bool {
        !i.contains(self.one())
    }

    /// `R a`, which is already closed under addition.
    pub fn principal_ideal(&self, a: Elem) -> Ideal {
        Ideal::from_members(BitSet::from_indices(
            self.size(),
            self.elements().map(|r| self.mul(r, a)),
        ))
    }

    /// Checks the ideal axioms on an arbitrary subset.
    pub fn is_ideal_subset(&self, set: &BitSet) -> bool {
        set.contains(self.zero())
            && set.iter().all(|a| {
                set.contains(self.neg(a))
                    && set.iter().all(|b| set.contains(self.add(a, b)))
                    && self.elements().all(|r| set.contains(self.mul(r, a)))
            })
    }

    /// Wraps a member set after validating it is an ideal.
    pub fn ideal_from_members(&self, set: BitSet) -> Result<Ideal> {
        if set.len() != self.size() {
            return Err(Error::RingMismatch);
        }
        if !self.is_ideal_subset(&set) {
            return Err(Error::InvalidArgument("subset is not an ideal".into()));
        }
        Ok(Ideal::from_members(set))
    }

    /// Smallest ideal containing `gens`: the sum of the principal ideals.
    pub fn generate_ideal(&self, gens: &[Elem]) -> Ideal {
        let mut acc = self.zero_ideal();
        for &g in gens {
            if !acc.contains(g) {
                acc = self.sum_unchecked(&acc, &self.principal_ideal(g));
            }
        }
        acc
    }

    /// `I + J` assembled coset by coset.
    fn sum_unchecked(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let mut out = i.members.clone();
        let base: Vec<Elem> = i.members.iter().collect();
        for b in j.members.iter() {
            if !out.contains(b) {
                for &a in &base {
                    out.insert(self.add(a, b));
                }
            }
        }
        Ideal::from_members(out)
    }

    pub fn ideal_sum(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.same_ring(i)?;
        self.same_ring(j)?;
        Ok(self.sum_unchecked(i, j))
    }

    pub fn ideal_intersection(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.same_ring(i)?;
        self.same_ring(j)?;
        Ok(Ideal::from_members(i.members.intersection(&j.members)))
    }

    /// `I J = sum over generators g of J of I g`; each `I g` is an ideal.
    pub fn ideal_product(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.same_ring(i)?;
        self.same_ring(j)?;
        let mut acc = self.zero_ideal();
        for g in self.raw_generators(j) {
            let ig = Ideal::from_members(BitSet::from_indices(
                self.size(),
                i.members.iter().map(|a| self.mul(a, g)),
            ));
            acc = self.sum_unchecked(&acc, &ig);
        }
        Ok(acc)
    }

    /// `I^k` with `I^0 = R`.
    pub fn ideal_power(&self, i: &Ideal, k: u32) -> Result<Ideal> {
        self.same_ring(i)?;
        let mut acc = self.unit_ideal();
        for _ in 0..k {
            acc = self.ideal_product(&acc, i)?;
        }
        Ok(acc)
    }

    /// Residual `(I : x) = {r : r x in I}`.
    pub fn ideal_colon(&self, i: &Ideal, x: Elem) -> Result<Ideal> {
        self.same_ring(i)?;
        Ok(Ideal::from_members(BitSet::from_indices(
            self.size(),
            self.elements().filter(|&r| i.contains(self.mul(r, x))),
        )))
    }

    /// `(J : I) = {r : r I ⊆ J}`.
    pub fn ideal_quotient(&self, j: &Ideal, i: &Ideal) -> Result<Ideal> {
        self.same_ring(i)?;
        self.same_ring(j)?;
        Ok(Ideal::from_members(BitSet::from_indices(
            self.size(),
            self.elements()
                .filter(|&r| i.members.iter().all(|a| j.contains(self.mul(r, a)))),
        )))
    }

    /// `{r : r^k in I for some k <= |R|}`.
    pub fn radical(&self, i: &Ideal) -> Result<Ideal> {
        self.same_ring(i)?;
        Ok(Ideal::from_members(BitSet::from_indices(
            self.size(),
            self.elements().filter(|&r| {
                let mut p = r;
                for _ in 0..self.size() {
                    if i.contains(p) {
                        return true;
                    }
                    p = self.mul(p, r);
                }
                false
            }),
        )))
    }

    /// Greedy generators: repeatedly take the least-index member not yet
    /// generated.
    fn raw_generators(&self, i: &Ideal) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut acc = self.zero_ideal();
        for x in i.members.iter() {
            if !acc.contains(x) {
                gens.push(x);
                acc = self.sum_unchecked(&acc, &self.principal_ideal(x));
                if acc == *i {
                    break;
                }
            }
        }
        gens
    }

    /// Canonical generators: the greedy least-index list with redundant
    /// entries dropped (first to last), reported in decreasing index order.
    pub fn generators(&self, i: &Ideal) -> Vec<Elem> {
        let mut gens = self.raw_generators(i);
        let mut k = 0;
        while k < gens.len() {
            let rest: Vec<Elem> = gens
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != k)
                .map(|(_, &g)| g)
                .collect();
            if self.generate_ideal(&rest) == *i {
                gens = rest;
            } else {
                k += 1;
            }
        }
        gens.sort_unstable_by(|a, b| b.cmp(a));
        gens
    }

    /// `(g1, g2, ...)` using element labels; `(0)` for the zero ideal.
    pub fn ideal_name(&self, i: &Ideal) -> String {
        let gens = self.generators(i);
        if gens.is_empty() {
            return "(0)".into();
        }
        let labels: Vec<String> = gens.iter().map(|&g| self.label(g)).collect();
        format!("({})", labels.join(", "))
    }

    /// Every ideal, in canonical order. Computed as the closure of the
    /// principal ideals under sums (every ideal of a finite ring is a finite
    /// sum of principal ideals). Cached per ring.
    pub fn all_ideals(&self) -> Result<&[Ideal]> {
        self.lattice
            .get_or_init(|| self.compute_lattice())
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    fn compute_lattice(&self) -> Result<Vec<Ideal>> {
        let limit = self.limits().max_ideals;
        let mut principals: Vec<Ideal> = Vec::new();
        let mut seen: HashSet<Ideal> = HashSet::new();
        for a in self.elements() {
            let p = self.principal_ideal(a);
            if seen.insert(p.clone()) {
                principals.push(p);
            }
        }
        let mut all = principals.clone();
        if all.len() > limit {
            return Err(Error::LatticeGuard { limit });
        }
        let mut cursor = 0;
        while cursor < all.len() {
            let current = all[cursor].clone();
            cursor += 1;
            for p in &principals {
                if p.is_subset(&current) {
                    continue;
                }
                let s = self.sum_unchecked(&current, p);
                if seen.insert(s.clone()) {
                    all.push(s);
                    if all.len() > limit {
                        return Err(Error::LatticeGuard { limit });
                    }
                }
            }
        }
        all.sort();
        Ok(all)
    }

    pub fn proper_ideals(&self) -> Result<Vec<Ideal>> {
        Ok(self
            .all_ideals()?
            .iter()
            .filter(|i| self.is_proper(i))
            .cloned()
            .collect())
    }

    fn require_proper(&self, i: &Ideal) -> Result<()> {
        self.same_ring(i)?;
        if self.is_proper(i) {
            Ok(())
        } else {
            Err(Error::ImproperIdeal)
        }
    }

    /// `ab in I` forces `a in I` or `b in I`.
    pub fn is_prime(&self, i: &Ideal) -> Result<bool> {
        self.require_proper(i)?;
        let outside: Vec<Elem> = self.elements().filter(|&a| !i.contains(a)).collect();
        Ok(outside
            .iter()
            .all(|&a| outside.iter().all(|&b| !i.contains(self.mul(a, b)))))
    }

    /// No proper ideal strictly above: `I + Ra = R` for every `a` outside `I`.
    pub fn is_maximal(&self, i: &Ideal) -> Result<bool> {
        self.require_proper(i)?;
        Ok(self
            .elements()
            .filter(|&a| !i.contains(a))
            .all(|a| !self.is_proper(&self.sum_unchecked(i, &self.principal_ideal(a)))))
    }

    /// `ab in I` with `a` outside `I` forces `b in √I`.
    pub fn is_primary(&self, i: &Ideal) -> Result<bool> {
        self.require_proper(i)?;
        let rad = self.radical(i)?;
        let outside: Vec<Elem> = self.elements().filter(|&a| !i.contains(a)).collect();
        Ok(outside.iter().all(|&a| {
            self.elements()
                .all(|b| !i.contains(self.mul(a, b)) || rad.contains(b))
        }))
    }

    /// Prime ideals. A finite ring is zero-dimensional, so these are the
    /// maximal ideals.
    pub fn prime_ideals(&self) -> Vec<Ideal> {
        self.maximal_ideals().to_vec()
    }

    /// Minimal primes over `I`.
    pub fn min_primes(&self, i: &Ideal) -> Result<Vec<Ideal>> {
        self.require_proper(i)?;
        let above: Vec<Ideal> = self
            .prime_ideals()
            .into_iter()
            .filter(|p| i.is_subset(p))
            .collect();
        Ok(above
            .iter()
            .filter(|p| !above.iter().any(|q| q != *p && q.is_subset(p)))
            .cloned()
            .collect())
    }

    pub fn is_idempotent(&self, i: &Ideal) -> Result<bool> {
        Ok(self.ideal_product(i, i)? == *i)
    }

    /// Only `I^2` and `I` lie between `I^2` and `I`.
    pub fn is_simple_ideal(&self, i: &Ideal) -> Result<bool> {
        let sq = self.ideal_product(i, i)?;
        Ok(self
            .all_ideals()?
            .iter()
            .filter(|j| sq.is_subset(j) && j.is_subset(i))
            .all(|j| *j == sq || j == i))
    }

    /// Comparable with every ideal. Returns the first incomparable ideal in
    /// canonical order as a witness.
    pub fn is_divided(&self, i: &Ideal) -> Result<(bool, Option<Ideal>)> {
        self.same_ring(i)?;
        let witness = self
            .all_ideals()?
            .iter()
            .find(|j| !j.is_subset(i) && !i.is_subset(j))
            .cloned();
        Ok((witness.is_none(), witness))
    }

    /// Divided test against principal ideals only (least-index generator
    /// first); agrees with [`RingTable::is_divided`].
    pub fn is_divided_principal(&self, i: &Ideal) -> Result<(bool, Option<Elem>)> {
        self.same_ring(i)?;
        let witness = self.elements().find(|&a| {
            let p = self.principal_ideal(a);
            !p.is_subset(i) && !i.is_subset(&p)
        });
        Ok((witness.is_none(), witness))
    }

    /// Every `J ⊆ I` has the form `I L`; `L = (J : I)` is the largest candidate.
    pub fn is_multiplication_ideal(&self, i: &Ideal) -> Result<bool> {
        self.same_ring(i)?;
        for j in self.all_ideals()?.iter().filter(|j| j.is_subset(i)) {
            let l = self.ideal_quotient(j, i)?;
            if self.ideal_product(i, &l)? != *j {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Splits an ideal of `A ∝ E` as `I ∝ V` when it is homogeneous, checking
    /// `I E ⊆ V`.
    pub fn homogeneous_view(&self, h: &Ideal) -> Result<Option<HomogeneousView>> {
        self.same_ring(h)?;
        let (base, module) = self
            .trivial_extension_parts()
            .ok_or(Error::NotTrivialExtension)?;
        let ne = module.size();
        let mut first = BitSet::new(base.size());
        let mut second = BitSet::new(ne);
        for x in h.elements() {
            let (a, e) = (x / ne, x % ne);
            first.insert(a);
            if a == base.zero() {
                second.insert(e);
            }
        }
        let pair_count = first.count() * second.count();
        if pair_count != h.size() {
            return Ok(None);
        }
        for a in first.iter() {
            for e in second.iter() {
                if !h.contains(a * ne + e) {
                    return Ok(None);
                }
            }
        }
        let base_ideal = base.ideal_from_members(first)?;
        if !module.ideal_times_module(&base_ideal).is_subset(&second) {
            return Ok(None);
        }
        Ok(Some(HomogeneousView {
            base: base_ideal,
            module_part: second,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_zmod;
    use crate::Limits;

    fn z(n: usize) -> std::sync::Arc<RingTable> {
        build_zmod(n, Limits::default()).unwrap()
    }

    #[test]
    fn generate_in_z12() {
        let r = z(12);
        let i = r.generate_ideal(&[4]);
        assert_eq!(i.elements().collect::<Vec<_>>(), vec![0, 4, 8]);
        assert_eq!(r.generate_ideal(&[1]), r.unit_ideal());
        assert_eq!(r.generate_ideal(&[]), r.zero_ideal());
        assert_eq!(r.generate_ideal(&[4, 6]), r.principal_ideal(2));
    }

    #[test]
    fn z12_lattice() {
        let r = z(12);
        let names: Vec<String> = r.all_ideals().unwrap().iter().map(|i| r.ideal_name(i)).collect();
        assert_eq!(names, vec!["(0)", "(6)", "(4)", "(3)", "(2)", "(1)"]);
    }

    #[test]
    fn field_lattice_has_two_ideals() {
        let r = z(7);
        assert_eq!(r.all_ideals().unwrap(), &[r.zero_ideal(), r.unit_ideal()]);
        assert!(r.is_prime(&r.zero_ideal()).unwrap());
        assert!(r.is_maximal(&r.zero_ideal()).unwrap());
        assert!(r.is_divided(&r.zero_ideal()).unwrap().0);
    }

    #[test]
    fn colon_and_radical() {
        let r = z(12);
        let four = r.principal_ideal(4);
        assert_eq!(r.ideal_colon(&four, 2).unwrap(), r.principal_ideal(2));
        assert_eq!(r.ideal_colon(&four, 1).unwrap(), four);
        assert_eq!(r.radical(&four).unwrap(), r.principal_ideal(2));
        assert_eq!(r.radical(&r.zero_ideal()).unwrap(), r.principal_ideal(6));
    }

    #[test]
    fn prime_and_primary_in_z12() {
        let r = z(12);
        assert!(r.is_prime(&r.principal_ideal(2)).unwrap());
        assert!(r.is_prime(&r.principal_ideal(3)).unwrap());
        let four = r.principal_ideal(4);
        assert!(!r.is_prime(&four).unwrap());
        assert!(r.is_primary(&four).unwrap());
        assert!(!r.is_primary(&r.zero_ideal()).unwrap());
        assert_eq!(r.is_prime(&r.unit_ideal()), Err(Error::ImproperIdeal));
        assert_eq!(
            r.min_primes(&r.zero_ideal()).unwrap(),
            vec![r.principal_ideal(3), r.principal_ideal(2)]
        );
    }

    #[test]
    fn z4_maximal_is_simple() {
        let r = z(4);
        let m = r.principal_ideal(2);
        assert_eq!(r.ideal_product(&m, &m).unwrap(), r.zero_ideal());
        assert!(r.is_simple_ideal(&m).unwrap());
        assert!(!r.is_idempotent(&m).unwrap());
        assert!(r.is_multiplication_ideal(&m).unwrap());
    }

    #[test]
    fn power_zero_is_whole_ring() {
        let r = z(8);
        let m = r.principal_ideal(2);
        assert_eq!(r.ideal_power(&m, 0).unwrap(), r.unit_ideal());
        assert_eq!(r.ideal_power(&m, 2).unwrap(), r.principal_ideal(4));
        assert_eq!(r.ideal_power(&m, 3).unwrap(), r.zero_ideal());
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let a = z(4);
        let b = z(6);
        assert_eq!(
            a.ideal_sum(&a.zero_ideal(), &b.zero_ideal()),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn lattice_guard() {
        let r = build_zmod(
            60,
            Limits {
                max_ideals: 3,
                ..Limits::default()
            },
        )
        .unwrap();
        assert_eq!(r.all_ideals().unwrap_err(), Error::LatticeGuard { limit: 3 });
    }
}
