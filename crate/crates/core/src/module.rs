//! Finite modules over a [`RingTable`], given by explicit tables.

use std::fmt;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{mixed_digits, Elem, RingTable};

#[derive(Debug, Clone)]
pub enum ModuleOrigin {
    Tables,
    /// The ring acting on itself.
    Regular,
    /// `A / J`, elements are least coset representatives.
    Quotient { reps: Vec<Elem>, projection: Vec<Elem> },
    /// Mixed radix, first summand most significant.
    DirectSum { summands: Vec<Arc<ModuleTable>> },
}

pub struct ModuleTable {
    ring: Arc<RingTable>,
    size: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
    zero: Elem,
    /// Row-major `|A| x size`.
    action: Vec<u16>,
    origin: ModuleOrigin,
}

impl fmt::Debug for ModuleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleTable")
            .field("ring_size", &self.ring.size())
            .field("size", &self.size)
            .finish_non_exhaustive()
    }
}

impl ModuleTable {
    fn assemble(
        ring: &Arc<RingTable>,
        size: usize,
        add: Vec<u16>,
        zero: Elem,
        action: Vec<u16>,
        origin: ModuleOrigin,
    ) -> Result<Self> {
        let mut neg = vec![0u16; size];
        for (e, slot) in neg.iter_mut().enumerate() {
            let inv = (0..size)
                .find(|&f| add[e * size + f] as usize == zero)
                .ok_or_else(|| Error::Axiom(format!("module element {e} has no inverse")))?;
            *slot = inv as u16;
        }
        Ok(ModuleTable {
            ring: Arc::clone(ring),
            size,
            add,
            neg,
            zero,
            action,
            origin,
        })
    }

    /// Module from raw tables; every axiom is checked exhaustively.
    pub fn from_tables(
        ring: &Arc<RingTable>,
        size: usize,
        add: Vec<Elem>,
        zero: Elem,
        action: Vec<Elem>,
    ) -> Result<Arc<Self>> {
        ring.limits().check_size(size as u128)?;
        if add.len() != size * size || action.len() != ring.size() * size || zero >= size {
            return Err(Error::Axiom("module table shapes do not match".into()));
        }
        if add.iter().chain(&action).any(|&x| x >= size) {
            return Err(Error::Axiom("module table entry out of range".into()));
        }
        let m = Self::assemble(
            ring,
            size,
            add.into_iter().map(|x| x as u16).collect(),
            zero,
            action.into_iter().map(|x| x as u16).collect(),
            ModuleOrigin::Tables,
        )?;
        m.verify_axioms()?;
        Ok(Arc::new(m))
    }

    /// The regular module `A` over itself.
    pub fn regular(ring: &Arc<RingTable>) -> Result<Arc<Self>> {
        let n = ring.size();
        let mut add = Vec::with_capacity(n * n);
        let mut action = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(ring.add(a, b) as u16);
                action.push(ring.mul(a, b) as u16);
            }
        }
        Ok(Arc::new(Self::assemble(
            ring,
            n,
            add,
            ring.zero(),
            action,
            ModuleOrigin::Regular,
        )?))
    }

    /// `A / J` with the induced action. `J = A` gives the zero module.
    pub fn quotient(ring: &Arc<RingTable>, ideal: &Ideal) -> Result<Arc<Self>> {
        if ideal.members().len() != ring.size() {
            return Err(Error::RingMismatch);
        }
        let n = ring.size();
        let mut class = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for r in 0..n {
            if class[r] == usize::MAX {
                let id = reps.len();
                reps.push(r);
                for i in ideal.members().iter() {
                    class[ring.add(r, i)] = id;
                }
            }
        }
        let q = reps.len();
        let mut add = vec![0u16; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                add[i * q + j] = class[ring.add(a, b)] as u16;
            }
        }
        let mut action = vec![0u16; n * q];
        for a in 0..n {
            for (j, &b) in reps.iter().enumerate() {
                action[a * q + j] = class[ring.mul(a, b)] as u16;
            }
        }
        let zero = class[ring.zero()];
        Ok(Arc::new(Self::assemble(
            ring,
            q,
            add,
            zero,
            action,
            ModuleOrigin::Quotient {
                reps,
                projection: class,
            },
        )?))
    }

    pub fn direct_sum(ring: &Arc<RingTable>, summands: &[Arc<ModuleTable>]) -> Result<Arc<Self>> {
        if summands.is_empty() {
            return Err(Error::EmptyProduct);
        }
        if summands.iter().any(|s| !Arc::ptr_eq(s.ring(), ring)) {
            return Err(Error::ModuleMismatch);
        }
        let size = ring.limits().check_size(
            summands
                .iter()
                .try_fold(1u128, |acc, s| acc.checked_mul(s.size() as u128))
                .unwrap_or(u128::MAX),
        )?;
        let sizes: Vec<usize> = summands.iter().map(|s| s.size()).collect();
        let coords: Vec<Vec<usize>> = (0..size).map(|x| mixed_digits(x, &sizes)).collect();
        let index = |parts: &mut dyn Iterator<Item = usize>| {
            parts.zip(&sizes).fold(0usize, |acc, (c, &s)| acc * s + c)
        };
        let mut add = vec![0u16; size * size];
        for x in 0..size {
            for y in 0..size {
                add[x * size + y] = index(
                    &mut summands
                        .iter()
                        .enumerate()
                        .map(|(i, s)| s.add(coords[x][i], coords[y][i])),
                ) as u16;
            }
        }
        let n = ring.size();
        let mut action = vec![0u16; n * size];
        for a in 0..n {
            for x in 0..size {
                action[a * size + x] = index(
                    &mut summands
                        .iter()
                        .enumerate()
                        .map(|(i, s)| s.act(a, coords[x][i])),
                ) as u16;
            }
        }
        let zero = index(&mut summands.iter().map(|s| s.zero()));
        Ok(Arc::new(Self::assemble(
            ring,
            size,
            add,
            zero,
            action,
            ModuleOrigin::DirectSum {
                summands: summands.to_vec(),
            },
        )?))
    }

    /// Abelian group axioms plus unital module action, over all triples.
    pub fn verify_axioms(&self) -> Result<()> {
        let r = &self.ring;
        let n = self.size;
        for e in 0..n {
            if self.add(e, self.zero) != e || self.add(e, self.neg(e)) != self.zero {
                return Err(Error::Axiom(format!("module identity/inverse fails at {e}")));
            }
            if self.act(r.one(), e) != e {
                return Err(Error::Axiom(format!("1 * {e} != {e}")));
            }
            for f in 0..n {
                if self.add(e, f) != self.add(f, e) {
                    return Err(Error::Axiom(format!("module addition not commutative at ({e}, {f})")));
                }
                for g in 0..n {
                    if self.add(self.add(e, f), g) != self.add(e, self.add(f, g)) {
                        return Err(Error::Axiom(format!(
                            "module addition not associative at ({e}, {f}, {g})"
                        )));
                    }
                }
                for a in r.elements() {
                    if self.act(a, self.add(e, f)) != self.add(self.act(a, e), self.act(a, f)) {
                        return Err(Error::Axiom(format!("a(e+f) != ae+af at ({a}, {e}, {f})")));
                    }
                }
            }
            for a in r.elements() {
                for b in r.elements() {
                    if self.act(r.add(a, b), e) != self.add(self.act(a, e), self.act(b, e)) {
                        return Err(Error::Axiom(format!("(a+b)e != ae+be at ({a}, {b}, {e})")));
                    }
                    if self.act(r.mul(a, b), e) != self.act(a, self.act(b, e)) {
                        return Err(Error::Axiom(format!("(ab)e != a(be) at ({a}, {b}, {e})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn add(&self, e: Elem, f: Elem) -> Elem {
        self.add[e * self.size + f] as Elem
    }

    #[inline]
    pub fn neg(&self, e: Elem) -> Elem {
        self.neg[e] as Elem
    }

    /// Scalar action `a * e`.
    #[inline]
    pub fn act(&self, a: Elem, e: Elem) -> Elem {
        self.action[a * self.size + e] as Elem
    }

    pub fn origin(&self) -> &ModuleOrigin {
        &self.origin
    }

    pub fn is_zero_module(&self) -> bool {
        self.size == 1
    }

    pub fn label(&self, e: Elem) -> String {
        match &self.origin {
            ModuleOrigin::Tables => e.to_string(),
            ModuleOrigin::Regular => self.ring.label(e),
            ModuleOrigin::Quotient { reps, .. } => self.ring.label(reps[e]),
            ModuleOrigin::DirectSum { summands } => {
                let sizes: Vec<usize> = summands.iter().map(|s| s.size()).collect();
                let parts: Vec<String> = mixed_digits(e, &sizes)
                    .into_iter()
                    .zip(summands)
                    .map(|(p, s)| s.label(p))
                    .collect();
                format!("({})", parts.join(", "))
            }
        }
    }

    /// Additive subgroup generated by `gens`.
    pub fn subgroup(&self, gens: impl IntoIterator<Item = Elem>) -> BitSet {
        let mut set = BitSet::from_indices(self.size, [self.zero]);
        for g in gens {
            if set.contains(g) {
                continue;
            }
            let current: Vec<Elem> = set.iter().collect();
            let mut multiple = g;
            while !set.contains(multiple) {
                for &s in &current {
                    set.insert(self.add(s, multiple));
                }
                multiple = self.add(multiple, g);
            }
        }
        set
    }

    /// `I E`, the submodule generated by all `a e` with `a in I`.
    pub fn ideal_times_module(&self, ideal: &Ideal) -> BitSet {
        let gens: Vec<Elem> = ideal
            .members()
            .iter()
            .flat_map(|a| (0..self.size).map(move |e| (a, e)))
            .map(|(a, e)| self.act(a, e))
            .collect();
        self.subgroup(gens)
    }

    /// `I V` for a subset `V` of the module.
    pub fn ideal_times_subset(&self, ideal: &Ideal, subset: &BitSet) -> BitSet {
        let gens: Vec<Elem> = ideal
            .members()
            .iter()
            .flat_map(|a| subset.iter().map(move |e| (a, e)))
            .map(|(a, e)| self.act(a, e))
            .collect();
        self.subgroup(gens)
    }

    /// `a E`.
    pub fn scalar_image(&self, a: Elem) -> BitSet {
        BitSet::from_indices(self.size, (0..self.size).map(|e| self.act(a, e)))
    }

    /// `{a in A : a E = 0}`.
    pub fn annihilator(&self) -> Ideal {
        Ideal::from_members(BitSet::from_indices(
            self.ring.size(),
            self.ring
                .elements()
                .filter(|&a| (0..self.size).all(|e| self.act(a, e) == self.zero)),
        ))
    }

    /// Some `e` with `A e = E`.
    pub fn cyclic_generator(&self) -> Option<Elem> {
        (0..self.size).find(|&e| {
            BitSet::from_indices(self.size, self.ring.elements().map(|a| self.act(a, e))).count()
                == self.size
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_zmod;
    use crate::Limits;

    #[test]
    fn quotient_module_of_z4_by_2() {
        let z4 = build_zmod(4, Limits::default()).unwrap();
        let e = ModuleTable::quotient(&z4, &z4.principal_ideal(2)).unwrap();
        assert_eq!(e.size(), 2);
        e.verify_axioms().unwrap();
        for x in 0..2 {
            assert_eq!(e.act(2, x), e.zero());
        }
        assert_eq!(e.annihilator(), z4.principal_ideal(2));
        assert!(e.cyclic_generator().is_some());
    }

    #[test]
    fn direct_sum_of_regular_modules() {
        let z2 = build_zmod(2, Limits::default()).unwrap();
        let reg = ModuleTable::regular(&z2).unwrap();
        let sum = ModuleTable::direct_sum(&z2, &[reg.clone(), reg]).unwrap();
        assert_eq!(sum.size(), 4);
        sum.verify_axioms().unwrap();
        for e in 0..4 {
            assert_eq!(sum.act(z2.one(), e), e);
        }
        assert_eq!(sum.cyclic_generator(), None);
        assert_eq!(sum.label(3), "(1, 1)");
    }

    #[test]
    fn improper_quotient_is_zero_module() {
        let z3 = build_zmod(3, Limits::default()).unwrap();
        let e = ModuleTable::quotient(&z3, &z3.unit_ideal()).unwrap();
        assert!(e.is_zero_module());
    }

    #[test]
    fn from_tables_checks_action() {
        let z2 = build_zmod(2, Limits::default()).unwrap();
        // Action of 0 sends everything to 1: not a module.
        let bad = ModuleTable::from_tables(&z2, 2, vec![0, 1, 1, 0], 0, vec![1, 1, 0, 1]);
        assert!(bad.is_err());
        let good = ModuleTable::from_tables(&z2, 2, vec![0, 1, 1, 0], 0, vec![0, 0, 0, 1]);
        assert!(good.is_ok());
    }
}
