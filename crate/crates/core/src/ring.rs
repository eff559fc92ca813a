//! Explicit finite commutative rings and their constructors.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::ModuleTable;
use crate::Limits;

/// Index of an element inside one [`RingTable`].
pub type Elem = usize;

/// How a ring was constructed; drives element labels and coordinate views.
#[derive(Debug, Clone)]
pub enum Origin {
    Tables,
    Zmod {
        n: usize,
    },
    /// Free `Z/mZ`-module on `basis`; element index is the coefficient vector
    /// read as a base-`m` numeral with the first basis element most significant.
    Algebra {
        modulus: usize,
        basis: Vec<String>,
    },
    /// Tuples in mixed radix, first factor most significant.
    Product {
        factors: Vec<Arc<RingTable>>,
    },
    /// Cosets ordered by least representative.
    Quotient {
        base: Arc<RingTable>,
        reps: Vec<Elem>,
        projection: Vec<Elem>,
    },
    /// Pair `(a, e)` has index `a * |E| + e`.
    TrivialExtension {
        base: Arc<RingTable>,
        module: Arc<ModuleTable>,
    },
}

pub struct RingTable {
    size: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
    mul: Vec<u16>,
    zero: Elem,
    one: Elem,
    unit_flags: Vec<bool>,
    origin: Origin,
    limits: Limits,
    notes: Vec<String>,
    nilpotent: OnceLock<Vec<bool>>,
    maximal: OnceLock<Vec<Ideal>>,
    pub(crate) lattice: OnceLock<Result<Vec<Ideal>>>,
}

impl fmt::Debug for RingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingTable")
            .field("size", &self.size)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .field("units", &self.units().len())
            .finish_non_exhaustive()
    }
}

/// One local factor `R e` of a finite ring, realized as `R / R(1 - e)`.
#[derive(Debug, Clone)]
pub struct LocalFactor {
    pub ring: Arc<RingTable>,
    pub idempotent: Elem,
    /// Surjection `R -> R e`.
    pub projection: Vec<Elem>,
}

impl RingTable {
    /// Assembles a ring from tables that are correct by construction.
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        size: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        zero: Elem,
        one: Elem,
        origin: Origin,
        limits: Limits,
        notes: Vec<String>,
    ) -> Result<Self> {
        let mut neg = vec![u16::MAX; size];
        for a in 0..size {
            match (0..size).find(|&b| add[a * size + b] as usize == zero) {
                Some(b) => neg[a] = b as u16,
                None => return Err(Error::Axiom(format!("element {a} has no additive inverse"))),
            }
        }
        let unit_flags = (0..size)
            .map(|a| (0..size).any(|b| mul[a * size + b] as usize == one))
            .collect();
        Ok(RingTable {
            size,
            add,
            neg,
            mul,
            zero,
            one,
            unit_flags,
            origin,
            limits,
            notes,
            nilpotent: OnceLock::new(),
            maximal: OnceLock::new(),
            lattice: OnceLock::new(),
        })
    }

    /// Builds a ring from raw row-major tables, checking every ring axiom
    /// exhaustively.
    pub fn from_tables(
        size: usize,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        zero: Elem,
        one: Elem,
        limits: Limits,
    ) -> Result<Arc<Self>> {
        limits.check_size(size as u128)?;
        if add.len() != size * size || mul.len() != size * size {
            return Err(Error::Axiom("tables must have size*size entries".into()));
        }
        if zero >= size || one >= size {
            return Err(Error::Axiom("zero or one out of range".into()));
        }
        if let Some(bad) = add.iter().chain(&mul).find(|&&x| x >= size) {
            return Err(Error::Axiom(format!("table entry {bad} out of range")));
        }
        let add = add.into_iter().map(|x| x as u16).collect();
        let mul = mul.into_iter().map(|x| x as u16).collect();
        let ring = Self::assemble(size, add, mul, zero, one, Origin::Tables, limits, vec![])?;
        ring.verify_axioms()?;
        Ok(Arc::new(ring))
    }

    /// Exhaustive check of the commutative ring axioms over all triples.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.size;
        if self.zero == self.one {
            return Err(Error::Axiom("1 = 0".into()));
        }
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return Err(Error::Axiom(format!("0 is not an additive identity for {a}")));
            }
            if self.mul(a, self.one) != a {
                return Err(Error::Axiom(format!("1 is not a multiplicative identity for {a}")));
            }
            if self.add(a, self.neg(a)) != self.zero {
                return Err(Error::Axiom(format!("{a} + (-{a}) != 0")));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::Axiom(format!("addition not commutative at ({a}, {b})")));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::Axiom(format!(
                        "multiplication not commutative at ({a}, {b})"
                    )));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(Error::Axiom(format!(
                            "addition not associative at ({a}, {b}, {c})"
                        )));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Axiom(format!(
                            "multiplication not associative at ({a}, {b}, {c})"
                        )));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(Error::Axiom(format!(
                            "distributivity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
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
    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.size + b] as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size + b] as Elem
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a] as Elem
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `k * a` as a repeated sum.
    pub fn scale(&self, a: Elem, k: i64) -> Elem {
        let mut acc = self.zero;
        for _ in 0..k.unsigned_abs() {
            acc = self.add(acc, a);
        }
        if k < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Construction-time warnings (skipped verification sweeps).
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        self.unit_flags[a]
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn nonunits(&self) -> Vec<Elem> {
        self.elements().filter(|&a| !self.is_unit(a)).collect()
    }

    /// True when the nonunits are closed under addition, i.e. they form the
    /// unique maximal ideal.
    pub fn is_local(&self) -> bool {
        let nonunits = self.nonunits();
        nonunits
            .iter()
            .all(|&a| nonunits.iter().all(|&b| !self.is_unit(self.add(a, b))))
    }

    pub fn is_field(&self) -> bool {
        self.elements().all(|a| a == self.zero || self.is_unit(a))
    }

    fn nilpotent_flags(&self) -> &[bool] {
        self.nilpotent.get_or_init(|| {
            (0..self.size)
                .map(|a| {
                    let mut p = a;
                    for _ in 0..self.size {
                        if p == self.zero {
                            return true;
                        }
                        p = self.mul(p, a);
                    }
                    p == self.zero
                })
                .collect()
        })
    }

    pub fn is_nilpotent(&self, a: Elem) -> bool {
        self.nilpotent_flags()[a]
    }

    pub fn nilradical(&self) -> Ideal {
        Ideal::from_members(BitSet::from_indices(
            self.size,
            self.elements().filter(|&a| self.is_nilpotent(a)),
        ))
    }

    /// Intersection of all maximal ideals.
    pub fn jacobson(&self) -> Ideal {
        let mut acc = BitSet::full(self.size);
        for m in self.maximal_ideals() {
            acc = acc.intersection(m.members());
        }
        Ideal::from_members(acc)
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&e| self.mul(e, e) == e).collect()
    }

    /// Nonzero idempotents with no nonzero idempotent strictly below them.
    pub fn primitive_idempotents(&self) -> Vec<Elem> {
        let idem: Vec<Elem> = self
            .idempotents()
            .into_iter()
            .filter(|&e| e != self.zero)
            .collect();
        idem.iter()
            .copied()
            .filter(|&e| !idem.iter().any(|&f| f != e && self.mul(f, e) == f))
            .collect()
    }

    /// Maximal ideals in canonical order. For a primitive idempotent `e` the
    /// ideal `{r : r e nilpotent}` is the maximal ideal belonging to the local
    /// factor `R e`.
    pub fn maximal_ideals(&self) -> &[Ideal] {
        self.maximal.get_or_init(|| {
            let mut out: Vec<Ideal> = self
                .primitive_idempotents()
                .into_iter()
                .map(|e| {
                    Ideal::from_members(BitSet::from_indices(
                        self.size,
                        self.elements().filter(|&r| self.is_nilpotent(self.mul(r, e))),
                    ))
                })
                .collect();
            out.sort();
            out
        })
    }

    /// Splits the ring into its local factors, one per primitive idempotent
    /// (in decreasing index order, so a product's first factor comes first).
    pub fn local_decomposition(self: &Arc<Self>) -> Result<Vec<LocalFactor>> {
        let mut prim = self.primitive_idempotents();
        prim.reverse();
        if prim.len() == 1 {
            return Ok(vec![LocalFactor {
                ring: Arc::clone(self),
                idempotent: self.one,
                projection: self.elements().collect(),
            }]);
        }
        prim.into_iter()
            .map(|e| {
                let complement = self.sub(self.one, e);
                let kernel = self.principal_ideal(complement);
                let (ring, projection) = build_quotient(self, &kernel)?;
                Ok(LocalFactor {
                    ring,
                    idempotent: e,
                    projection,
                })
            })
            .collect()
    }

    /// Coefficient vector of an algebra element.
    pub fn coordinates(&self, x: Elem) -> Option<Vec<usize>> {
        match &self.origin {
            Origin::Algebra { modulus, basis } => Some(digits(x, *modulus, basis.len())),
            _ => None,
        }
    }

    /// Components of a product element.
    pub fn components(&self, x: Elem) -> Option<Vec<Elem>> {
        match &self.origin {
            Origin::Product { factors } => {
                let sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
                Some(mixed_digits(x, &sizes))
            }
            _ => None,
        }
    }

    pub fn tuple_index(&self, parts: &[Elem]) -> Option<Elem> {
        match &self.origin {
            Origin::Product { factors } if parts.len() == factors.len() => {
                let mut idx = 0;
                for (f, &p) in factors.iter().zip(parts) {
                    if p >= f.size() {
                        return None;
                    }
                    idx = idx * f.size() + p;
                }
                Some(idx)
            }
            _ => None,
        }
    }

    /// `(a, e)` coordinates of a trivial-extension element.
    pub fn pair(&self, x: Elem) -> Option<(Elem, Elem)> {
        match &self.origin {
            Origin::TrivialExtension { module, .. } => Some((x / module.size(), x % module.size())),
            _ => None,
        }
    }

    pub fn pair_index(&self, a: Elem, e: Elem) -> Option<Elem> {
        match &self.origin {
            Origin::TrivialExtension { base, module } if a < base.size() && e < module.size() => {
                Some(a * module.size() + e)
            }
            _ => None,
        }
    }

    pub fn trivial_extension_parts(&self) -> Option<(&Arc<RingTable>, &Arc<ModuleTable>)> {
        match &self.origin {
            Origin::TrivialExtension { base, module } => Some((base, module)),
            _ => None,
        }
    }

    /// Human-readable element name following the construction.
    pub fn label(&self, x: Elem) -> String {
        match &self.origin {
            Origin::Tables => x.to_string(),
            Origin::Zmod { .. } => x.to_string(),
            Origin::Algebra { modulus, basis } => {
                format_linear(&digits(x, *modulus, basis.len()), basis)
            }
            Origin::Product { factors } => {
                let parts = self.components(x).unwrap_or_default();
                let inner: Vec<String> = factors
                    .iter()
                    .zip(parts)
                    .map(|(f, p)| f.label(p))
                    .collect();
                format!("({})", inner.join(", "))
            }
            Origin::Quotient { base, reps, .. } => base.label(reps[x]),
            Origin::TrivialExtension { base, module } => {
                let (a, e) = (x / module.size(), x % module.size());
                format!("({}, {})", base.label(a), module.label(e))
            }
        }
    }
}

pub(crate) fn digits(mut x: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = x % radix;
        x /= radix;
    }
    out
}

pub(crate) fn mixed_digits(mut x: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = x % r;
        x /= r;
    }
    out
}

fn format_linear(coeffs: &[usize], basis: &[String]) -> String {
    let mut terms = Vec::new();
    for (&c, name) in coeffs.iter().zip(basis) {
        if c == 0 {
            continue;
        }
        terms.push(match (c, name.as_str()) {
            (c, "1") => c.to_string(),
            (1, name) => name.to_string(),
            (c, name) => format!("{c}*{name}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn to_u16(v: Vec<usize>) -> Vec<u16> {
    v.into_iter().map(|x| x as u16).collect()
}

/// `Z/nZ` with element `k` at index `k`.
pub fn build_zmod(n: usize, limits: Limits) -> Result<Arc<RingTable>> {
    if n < 2 {
        return Err(Error::TrivialRing(n));
    }
    limits.check_size(n as u128)?;
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push((a + b) % n);
            mul.push(a * b % n);
        }
    }
    let ring = RingTable::assemble(
        n,
        to_u16(add),
        to_u16(mul),
        0,
        1,
        Origin::Zmod { n },
        limits,
        vec![],
    )?;
    Ok(Arc::new(ring))
}

/// Element sweeps of algebra associativity run only up to this size.
pub const ALGEBRA_SWEEP_LIMIT: usize = 1024;

/// Structure-constant algebra over `Z/mZ`: `basis[i] * basis[j] =
/// sum_k constants[i][j][k] basis[k]`, with `basis[0]` the identity.
pub fn build_algebra(
    modulus: usize,
    basis: Vec<String>,
    constants: Vec<Vec<Vec<u64>>>,
    limits: Limits,
) -> Result<Arc<RingTable>> {
    if modulus < 2 {
        return Err(Error::TrivialRing(modulus));
    }
    let d = basis.len();
    if d == 0 || basis[0] != "1" {
        return Err(Error::Axiom("basis[0] must be \"1\"".into()));
    }
    for (i, name) in basis.iter().enumerate() {
        if basis[..i].contains(name) {
            return Err(Error::Axiom(format!("duplicate basis name `{name}`")));
        }
    }
    if constants.len() != d
        || constants
            .iter()
            .any(|row| row.len() != d || row.iter().any(|v| v.len() != d))
    {
        return Err(Error::Axiom(format!("structure constants must be {d}x{d}x{d}")));
    }
    for row in &constants {
        for v in row {
            if let Some(&c) = v.iter().find(|&&c| c >= modulus as u64) {
                return Err(Error::CoefficientOutOfRange {
                    value: c as i64,
                    modulus,
                });
            }
        }
    }
    let size = limits.check_size((modulus as u128).checked_pow(d as u32).unwrap_or(u128::MAX))?;
    let m = modulus as u64;

    // Basis-level validation.
    let unit_vec = |j: usize| -> Vec<u64> { (0..d).map(|k| (k == j) as u64).collect() };
    for j in 0..d {
        if constants[0][j] != unit_vec(j) || constants[j][0] != unit_vec(j) {
            return Err(Error::Axiom(format!("`1` is not an identity for `{}`", basis[j])));
        }
    }
    for i in 0..d {
        for j in 0..d {
            if constants[i][j] != constants[j][i] {
                return Err(Error::Axiom(format!(
                    "product not commutative on basis pair ({}, {})",
                    basis[i], basis[j]
                )));
            }
        }
    }
    let times_basis = |v: &[u64], l: usize| -> Vec<u64> {
        let mut out = vec![0u64; d];
        for (k, &c) in v.iter().enumerate() {
            if c != 0 {
                for (t, o) in out.iter_mut().enumerate() {
                    *o = (*o + c * constants[k][l][t]) % m;
                }
            }
        }
        out
    };
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                let left = times_basis(&constants[i][j], l);
                let right = times_basis(&constants[j][l], i);
                if left != right {
                    return Err(Error::Axiom(format!(
                        "product not associative on basis triple ({}, {}, {})",
                        basis[i], basis[j], basis[l]
                    )));
                }
            }
        }
    }

    let index_of = |v: &[u64]| v.iter().fold(0usize, |acc, &c| acc * modulus + c as usize);
    let coords: Vec<Vec<usize>> = (0..size).map(|x| digits(x, modulus, d)).collect();
    let mut add = vec![0u16; size * size];
    for a in 0..size {
        for b in 0..size {
            let v: Vec<u64> = (0..d)
                .map(|k| ((coords[a][k] + coords[b][k]) % modulus) as u64)
                .collect();
            add[a * size + b] = index_of(&v) as u16;
        }
    }
    // Rows of basis elements from the constants, then every other row by
    // additivity: row(a) = row(a - e_k) + row(e_k).
    let mut mul = vec![0u16; size * size];
    let basis_index: Vec<usize> = (0..d).map(|k| index_of(&unit_vec(k))).collect();
    for (k, &ek) in basis_index.iter().enumerate() {
        for b in 0..size {
            let mut v = vec![0u64; d];
            for (l, &c) in coords[b].iter().enumerate() {
                if c != 0 {
                    for (t, o) in v.iter_mut().enumerate() {
                        *o = (*o + c as u64 * constants[k][l][t]) % m;
                    }
                }
            }
            mul[ek * size + b] = index_of(&v) as u16;
        }
    }
    for a in 1..size {
        let k = (0..d).rev().find(|&k| coords[a][k] != 0).unwrap();
        let mut prev = coords[a].clone();
        prev[k] -= 1;
        let p = prev.iter().fold(0usize, |acc, &c| acc * modulus + c);
        if p == 0 {
            continue;
        }
        let ek = basis_index[k];
        for b in 0..size {
            let s = add[mul[p * size + b] as usize * size + mul[ek * size + b] as usize];
            mul[a * size + b] = s;
        }
    }
    let one = basis_index[0];
    let mut notes = Vec::new();
    let ring = RingTable::assemble(
        size,
        add,
        mul,
        0,
        one,
        Origin::Algebra { modulus, basis },
        limits,
        vec![],
    )?;
    if size <= ALGEBRA_SWEEP_LIMIT {
        for a in 0..size {
            for b in 0..size {
                let ab = ring.mul(a, b);
                if ab != ring.mul(b, a) {
                    return Err(Error::Axiom(format!(
                        "product not commutative at ({}, {})",
                        ring.label(a),
                        ring.label(b)
                    )));
                }
                for c in 0..size {
                    if ring.mul(ab, c) != ring.mul(a, ring.mul(b, c)) {
                        return Err(Error::Axiom(format!(
                            "product not associative at ({}, {}, {})",
                            ring.label(a),
                            ring.label(b),
                            ring.label(c)
                        )));
                    }
                }
            }
        }
    } else {
        notes.push(format!(
            "element-level associativity sweep skipped (size {size} > {ALGEBRA_SWEEP_LIMIT})"
        ));
    }
    Ok(Arc::new(RingTable { notes, ..ring }))
}

/// Componentwise product ring.
pub fn build_product(factors: &[Arc<RingTable>]) -> Result<Arc<RingTable>> {
    let first = factors.first().ok_or(Error::EmptyProduct)?;
    let limits = *first.limits();
    let size = limits.check_size(
        factors
            .iter()
            .try_fold(1u128, |acc, f| acc.checked_mul(f.size() as u128))
            .unwrap_or(u128::MAX),
    )?;
    let sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let coords: Vec<Vec<usize>> = (0..size).map(|x| mixed_digits(x, &sizes)).collect();
    let index_of = |v: &mut dyn Iterator<Item = usize>| {
        v.zip(&sizes).fold(0usize, |acc, (c, &s)| acc * s + c)
    };
    let mut add = vec![0u16; size * size];
    let mut mul = vec![0u16; size * size];
    for a in 0..size {
        for b in 0..size {
            let (ca, cb) = (&coords[a], &coords[b]);
            add[a * size + b] = index_of(
                &mut factors.iter().enumerate().map(|(i, f)| f.add(ca[i], cb[i])),
            ) as u16;
            mul[a * size + b] = index_of(
                &mut factors.iter().enumerate().map(|(i, f)| f.mul(ca[i], cb[i])),
            ) as u16;
        }
    }
    let zero = index_of(&mut factors.iter().map(|f| f.zero()));
    let one = index_of(&mut factors.iter().map(|f| f.one()));
    let ring = RingTable::assemble(
        size,
        add,
        mul,
        zero,
        one,
        Origin::Product {
            factors: factors.to_vec(),
        },
        limits,
        vec![],
    )?;
    Ok(Arc::new(ring))
}

/// `R / I` on least-index coset representatives, with the projection map.
pub fn build_quotient(ring: &Arc<RingTable>, ideal: &Ideal) -> Result<(Arc<RingTable>, Vec<Elem>)> {
    if ideal.members().len() != ring.size() {
        return Err(Error::RingMismatch);
    }
    if !ring.is_proper(ideal) {
        return Err(Error::ImproperIdeal);
    }
    let n = ring.size();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for r in 0..n {
        if class[r] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(r);
        for i in ideal.members().iter() {
            class[ring.add(r, i)] = id;
        }
    }
    let q = reps.len();
    let mut add = vec![0u16; q * q];
    let mut mul = vec![0u16; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            add[i * q + j] = class[ring.add(a, b)] as u16;
            mul[i * q + j] = class[ring.mul(a, b)] as u16;
        }
    }
    let quotient = RingTable::assemble(
        q,
        add,
        mul,
        class[ring.zero()],
        class[ring.one()],
        Origin::Quotient {
            base: Arc::clone(ring),
            reps,
            projection: class.clone(),
        },
        *ring.limits(),
        vec![],
    )?;
    Ok((Arc::new(quotient), class))
}

/// `A ∝ E`: pairs `(a, e)` with `(a, e)(b, f) = (ab, af + be)`.
pub fn build_trivial_extension(
    base: &Arc<RingTable>,
    module: &Arc<ModuleTable>,
) -> Result<Arc<RingTable>> {
    if !Arc::ptr_eq(base, module.ring()) {
        return Err(Error::ModuleMismatch);
    }
    let limits = *base.limits();
    let (na, ne) = (base.size(), module.size());
    let size = limits.check_size(na as u128 * ne as u128)?;
    let mut add = vec![0u16; size * size];
    let mut mul = vec![0u16; size * size];
    for x in 0..size {
        let (a, e) = (x / ne, x % ne);
        for y in 0..size {
            let (b, f) = (y / ne, y % ne);
            add[x * size + y] = (base.add(a, b) * ne + module.add(e, f)) as u16;
            let cross = module.add(module.act(a, f), module.act(b, e));
            mul[x * size + y] = (base.mul(a, b) * ne + cross) as u16;
        }
    }
    let ring = RingTable::assemble(
        size,
        add,
        mul,
        base.zero() * ne + module.zero(),
        base.one() * ne + module.zero(),
        Origin::TrivialExtension {
            base: Arc::clone(base),
            module: Arc::clone(module),
        },
        limits,
        vec![],
    )?;
    Ok(Arc::new(ring))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    /// F2[X]/(X^2) from structure constants.
    fn dual_numbers() -> Arc<RingTable> {
        let c = vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 1], vec![0, 0]],
        ];
        build_algebra(2, names(&["1", "x"]), c, lim()).unwrap()
    }

    #[test]
    fn zmod_basics() {
        let z4 = build_zmod(4, lim()).unwrap();
        assert_eq!(z4.size(), 4);
        assert_eq!(z4.units(), vec![1, 3]);
        let z2 = build_zmod(2, lim()).unwrap();
        assert_eq!(z2.units(), vec![1]);
        assert!(z2.is_field());
        z4.verify_axioms().unwrap();
    }

    #[test]
    fn zmod_unit_count_matches_brute_force() {
        let z12 = build_zmod(12, lim()).unwrap();
        let brute = (0..12).filter(|a| (0..12).any(|b| a * b % 12 == 1)).count();
        assert_eq!(brute, 4);
        assert_eq!(z12.units().len(), brute);
    }

    #[test]
    fn zmod_rejects_small_and_oversized() {
        assert_eq!(build_zmod(1, lim()).unwrap_err(), Error::TrivialRing(1));
        assert_eq!(build_zmod(0, lim()).unwrap_err(), Error::TrivialRing(0));
        let small = Limits {
            max_ring_size: 10,
            ..lim()
        };
        assert!(matches!(build_zmod(11, small), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn dual_numbers_from_constants() {
        let r = dual_numbers();
        assert_eq!(r.size(), 4);
        r.verify_axioms().unwrap();
        assert_eq!(r.label(r.one()), "1");
        let x = 1; // coefficient vector (0, 1)
        assert_eq!(r.label(x), "x");
        assert_eq!(r.mul(x, x), r.zero());
        assert!(r.is_local());
    }

    #[test]
    fn algebra_identity_violation_is_reported() {
        // x * 1 = 1 + x breaks both the identity and commutativity.
        let c = vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![1, 1], vec![1, 0]],
        ];
        let err = build_algebra(2, names(&["1", "x"]), c, lim()).unwrap_err();
        assert!(matches!(err, Error::Axiom(ref m) if m.contains("identity")), "{err}");
    }

    #[test]
    fn algebra_associativity_violation_names_triple() {
        // x*x = y, x*y = 0, y*y = y: (x*x)*y = y but x*(x*y) = 0.
        let e = |v: [u64; 3]| v.to_vec();
        let c = vec![
            vec![e([1, 0, 0]), e([0, 1, 0]), e([0, 0, 1])],
            vec![e([0, 1, 0]), e([0, 0, 1]), e([0, 0, 0])],
            vec![e([0, 0, 1]), e([0, 0, 0]), e([0, 0, 1])],
        ];
        let err = build_algebra(2, names(&["1", "x", "y"]), c, lim()).unwrap_err();
        match err {
            Error::Axiom(m) => assert!(m.contains("associative") && m.contains("(x, x, y)"), "{m}"),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn product_sizes_and_units() {
        let z2 = build_zmod(2, lim()).unwrap();
        let z3 = build_zmod(3, lim()).unwrap();
        let p = build_product(&[z2, z3]).unwrap();
        assert_eq!(p.size(), 6);
        assert_eq!(p.units().len(), 2);
        assert!(!p.is_local());
        p.verify_axioms().unwrap();
        assert_eq!(p.components(p.one()), Some(vec![1, 1]));
        assert_eq!(p.tuple_index(&[1, 2]), Some(5));
        assert_eq!(build_product(&[]).unwrap_err(), Error::EmptyProduct);
    }

    #[test]
    fn quotient_of_z12_by_4_matches_z4() {
        let z12 = build_zmod(12, lim()).unwrap();
        let i = z12.principal_ideal(4);
        let (q, proj) = build_quotient(&z12, &i).unwrap();
        let z4 = build_zmod(4, lim()).unwrap();
        assert_eq!(q.size(), 4);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(q.add(a, b), z4.add(a, b));
                assert_eq!(q.mul(a, b), z4.mul(a, b));
            }
        }
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(proj[z12.mul(a, b)], q.mul(proj[a], proj[b]));
                assert_eq!(proj[z12.add(a, b)], q.add(proj[a], proj[b]));
            }
        }
        assert_eq!(proj[z12.one()], q.one());
        let whole = z12.unit_ideal();
        assert_eq!(build_quotient(&z12, &whole).unwrap_err(), Error::ImproperIdeal);
    }

    #[test]
    fn quotient_by_zero_keeps_tables() {
        let r = dual_numbers();
        let (q, proj) = build_quotient(&r, &r.zero_ideal()).unwrap();
        assert_eq!(proj, (0..4).collect::<Vec<_>>());
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(q.mul(a, b), r.mul(a, b));
                assert_eq!(q.add(a, b), r.add(a, b));
            }
        }
    }

    #[test]
    fn z12_structure() {
        let z12 = build_zmod(12, lim()).unwrap();
        assert!(!z12.is_local());
        let max: Vec<Ideal> = z12.maximal_ideals().to_vec();
        assert_eq!(max, vec![z12.principal_ideal(3), z12.principal_ideal(2)]);
        assert_eq!(z12.nilradical(), z12.principal_ideal(6));
        assert_eq!(z12.jacobson(), z12.principal_ideal(6));
        let z8 = build_zmod(8, lim()).unwrap();
        assert!(z8.is_local());
        assert_eq!(z8.maximal_ideals(), &[z8.principal_ideal(2)]);
    }

    #[test]
    fn local_decomposition_of_z12() {
        let z12 = build_zmod(12, lim()).unwrap();
        let parts = z12.local_decomposition().unwrap();
        let sizes: Vec<usize> = parts.iter().map(|p| p.ring.size()).collect();
        assert_eq!(sizes, vec![4, 3]);
        assert_eq!(parts[0].idempotent, 9);
        assert_eq!(parts[1].idempotent, 4);
        for p in &parts {
            assert!(p.ring.is_local());
        }
    }

    #[test]
    fn local_ring_decomposes_to_itself() {
        let z8 = build_zmod(8, lim()).unwrap();
        let parts = z8.local_decomposition().unwrap();
        assert_eq!(parts.len(), 1);
        assert!(Arc::ptr_eq(&parts[0].ring, &z8));
        assert_eq!(parts[0].projection, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn from_tables_rejects_corrupted_multiplication() {
        let z3 = build_zmod(3, lim()).unwrap();
        let add: Vec<Elem> = (0..9).map(|i| z3.add(i / 3, i % 3)).collect();
        let mut mul: Vec<Elem> = (0..9).map(|i| z3.mul(i / 3, i % 3)).collect();
        RingTable::from_tables(3, add.clone(), mul.clone(), 0, 1, lim()).unwrap();
        mul[2 * 3 + 2] = 2; // 2*2 = 2
        assert!(matches!(
            RingTable::from_tables(3, add, mul, 0, 1, lim()),
            Err(Error::Axiom(_))
        ));
    }
}
