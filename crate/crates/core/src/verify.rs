//! Structural checks over a curated corpus of rings. Each check evaluates
//! both sides of a statement with independent computations and reports
//! pass, vacuous pass (hypothesis unmet), fail with a witness, or skipped
//! when a resource guard trips.

use std::cell::{OnceCell, RefCell};
use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::classify;
use crate::error::{Error, Result};
use crate::factorize::{self, OafVerdict};
use crate::ideal::Ideal;
use crate::module::ModuleTable;
use crate::ring::{build_quotient, Origin, RingTable};
use crate::spec::{ModuleSpec, RingSpec};
use crate::Limits;

pub const TAG_LOCAL: &str = "local";
pub const TAG_DOMAIN_LIKE: &str = "domain-like";
pub const TAG_TRIVIAL_EXTENSION: &str = "trivial-extension";
pub const TAG_PRODUCT: &str = "product";
pub const TAG_CHAIN: &str = "chain";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: RingSpec,
    #[serde(default)]
    pub tags: BTreeSet<String>,
}

impl CorpusEntry {
    pub fn new(name: &str, spec: RingSpec, tags: &[&str]) -> Self {
        CorpusEntry {
            name: name.to_string(),
            spec,
            tags: tags.iter().map(|t| t.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// The statement's hypothesis does not hold on this ring.
    VacuousPass,
    Fail,
    /// A resource guard stopped the check.
    Skipped,
    BuildError,
}

impl Verdict {
    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::Fail | Verdict::BuildError)
    }
}

/// Names of the ideals and elements exhibiting a failure.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ideals: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub ring: String,
    pub n: Option<usize>,
    pub verdict: Verdict,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

struct Outcome {
    verdict: Verdict,
    detail: String,
    witness: Option<Witness>,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome {
            verdict: Verdict::Pass,
            detail: detail.into(),
            witness: None,
        }
    }

    fn vacuous(detail: impl Into<String>) -> Self {
        Outcome {
            verdict: Verdict::VacuousPass,
            detail: detail.into(),
            witness: None,
        }
    }

    fn fail(detail: impl Into<String>, witness: Witness) -> Self {
        Outcome {
            verdict: Verdict::Fail,
            detail: detail.into(),
            witness: Some(witness),
        }
    }
}

fn ideal_witness(ring: &RingTable, ideals: &[&Ideal]) -> Witness {
    Witness {
        ideals: ideals.iter().map(|i| ring.ideal_name(i)).collect(),
        elements: Vec::new(),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// A built corpus ring with memoized factorization verdicts.
struct Subject {
    name: String,
    ring: Arc<RingTable>,
    oaf: RefCell<BTreeMap<usize, OafVerdict>>,
    zpi: OnceCell<OafVerdict>,
}

impl Subject {
    fn new(name: &str, ring: Arc<RingTable>) -> Self {
        Subject {
            name: name.to_string(),
            ring,
            oaf: RefCell::new(BTreeMap::new()),
            zpi: OnceCell::new(),
        }
    }

    fn oaf(&self, n: usize) -> Result<OafVerdict> {
        if let Some(v) = self.oaf.borrow().get(&n) {
            return Ok(v.clone());
        }
        let v = factorize::is_n_oaf(&self.ring, n)?;
        self.oaf.borrow_mut().insert(n, v.clone());
        Ok(v)
    }

    fn zpi(&self) -> Result<OafVerdict> {
        if let Some(v) = self.zpi.get() {
            return Ok(v.clone());
        }
        let v = factorize::is_general_zpi(&self.ring)?;
        Ok(self.zpi.get_or_init(|| v).clone())
    }

    fn result(&self, check: &str, n: Option<usize>, outcome: Result<Outcome>) -> CheckResult {
        let (verdict, detail, witness) = match outcome {
            Ok(o) => (o.verdict, o.detail, o.witness),
            Err(e @ (Error::BudgetExceeded { .. } | Error::LatticeGuard { .. } | Error::SizeGuard { .. })) => {
                (Verdict::Skipped, e.to_string(), None)
            }
            Err(e) => (Verdict::Fail, format!("error: {e}"), None),
        };
        CheckResult {
            check: check.to_string(),
            ring: self.name.clone(),
            n,
            verdict,
            detail,
            witness,
        }
    }
}

/// Structural tags computed from the ring itself.
pub fn computed_tags(ring: &RingTable) -> Result<BTreeSet<String>> {
    let mut tags = BTreeSet::new();
    if ring.is_local() {
        tags.insert(TAG_LOCAL.to_string());
    }
    if ring.is_field() {
        tags.insert(TAG_DOMAIN_LIKE.to_string());
    }
    match ring.origin() {
        Origin::TrivialExtension { .. } => {
            tags.insert(TAG_TRIVIAL_EXTENSION.to_string());
        }
        Origin::Product { .. } => {
            tags.insert(TAG_PRODUCT.to_string());
        }
        _ => {}
    }
    let lattice = ring.all_ideals()?;
    let chain = lattice
        .iter()
        .all(|i| lattice.iter().all(|j| i.is_subset(j) || j.is_subset(i)));
    if chain {
        tags.insert(TAG_CHAIN.to_string());
    }
    Ok(tags)
}

fn check_tags(s: &Subject, declared: &BTreeSet<String>) -> Result<Outcome> {
    let computed = computed_tags(&s.ring)?;
    let list = |t: &BTreeSet<String>| t.iter().cloned().collect::<Vec<_>>().join(",");
    if computed == *declared {
        Ok(Outcome::pass(format!("tags [{}]", list(&computed))))
    } else {
        Ok(Outcome::fail(
            format!("declared [{}], computed [{}]", list(declared), list(&computed)),
            Witness::default(),
        ))
    }
}

/// Brute-force n-OA agrees with the structural fast path on every proper
/// ideal; at `n = 1` both also agree with primality.
fn oa_characterization(ring: &RingTable, n: usize) -> Result<Outcome> {
    let proper = ring.proper_ideals()?;
    let mut count = 0;
    for i in &proper {
        let (brute, tuple) = classify::is_n_oa(ring, i, n)?;
        let fast = classify::is_n_oa_fast(ring, i, n)?;
        let prime = ring.is_prime(i)?;
        if brute != fast || (n == 1 && brute != prime) {
            let mut w = ideal_witness(ring, &[i]);
            if let Some(t) = tuple {
                w.elements = t.iter().map(|&a| ring.label(a)).collect();
            }
            return Ok(Outcome::fail(
                format!(
                    "{}: brute {}, fast path {}, prime {}",
                    ring.ideal_name(i),
                    yes_no(brute),
                    yes_no(fast),
                    yes_no(prime)
                ),
                w,
            ));
        }
        count += brute as usize;
    }
    Ok(Outcome::pass(format!(
        "{count} of {} proper ideals are {n}-OA",
        proper.len()
    )))
}

/// Every n-OA ideal has exactly one minimal prime.
fn min_unique(ring: &RingTable, n: usize) -> Result<Outcome> {
    let oa = classify::list_n_oa_ideals(ring, n)?;
    for i in &oa {
        let min = ring.min_primes(i)?;
        if min.len() != 1 {
            let mut all = vec![i];
            all.extend(min.iter());
            return Ok(Outcome::fail(
                format!("{} has {} minimal primes", ring.ideal_name(i), min.len()),
                ideal_witness(ring, &all),
            ));
        }
    }
    Ok(Outcome::pass(format!(
        "{} {n}-OA ideals, each with one minimal prime",
        oa.len()
    )))
}

/// For every ideal with an n-OA factorization `I = I1...Im`, each minimal
/// prime of `I` is minimal over some factor.
fn min_union(ring: &RingTable, n: usize) -> Result<Outcome> {
    let closure = factorize::multiplicative_closure(ring, &classify::list_n_oa_ideals(ring, n)?)?;
    let mut covered = 0;
    for i in ring.proper_ideals()? {
        let Some(factors) = closure.factors(&i) else {
            continue;
        };
        let mut union = BTreeSet::new();
        for f in &factors {
            union.extend(ring.min_primes(f)?);
        }
        for p in ring.min_primes(&i)? {
            if !union.contains(&p) {
                let mut all = vec![&i, &p];
                all.extend(factors.iter());
                return Ok(Outcome::fail(
                    format!(
                        "{} is minimal over {} but over none of its factors",
                        ring.ideal_name(&p),
                        ring.ideal_name(&i)
                    ),
                    ideal_witness(ring, &all),
                ));
            }
        }
        covered += 1;
    }
    if covered == 0 {
        return Ok(Outcome::vacuous(format!("no ideal has a {n}-OA factorization")));
    }
    Ok(Outcome::pass(format!(
        "{covered} factorable ideals, minimal primes covered by the factors"
    )))
}

/// n-OAF verdicts across the range are monotone in `n`, and the prime
/// closure agrees with the 1-OA closure.
fn oaf_profile(s: &Subject, range: &RangeInclusive<usize>) -> Result<Outcome> {
    let mut verdicts = Vec::new();
    for n in range.clone() {
        verdicts.push((n, s.oaf(n)?.holds));
    }
    let text: Vec<String> = verdicts
        .iter()
        .map(|(n, h)| format!("n={n} {}", yes_no(*h)))
        .collect();
    let text = text.join(", ");
    for w in verdicts.windows(2) {
        if w[0].1 && !w[1].1 {
            return Ok(Outcome::fail(
                format!("not monotone: {text}"),
                Witness::default(),
            ));
        }
    }
    let zpi = s.zpi()?;
    if range.contains(&1) {
        let one = s.oaf(1)?;
        if zpi.holds != one.holds {
            let ideals: Vec<&Ideal> = zpi.witness.iter().chain(one.witness.iter()).collect();
            return Ok(Outcome::fail(
                format!(
                    "general ZPI {} but 1-OAF {}",
                    yes_no(zpi.holds),
                    yes_no(one.holds)
                ),
                ideal_witness(&s.ring, &ideals),
            ));
        }
    }
    Ok(Outcome::pass(format!("{text}; general ZPI {}", yes_no(zpi.holds))))
}

/// Quotients of an n-OAF ring are n-OAF.
fn quotient_closure(s: &Subject, n: usize) -> Result<Outcome> {
    if !s.oaf(n)?.holds {
        return Ok(Outcome::vacuous(format!("ring is not {n}-OAF")));
    }
    let proper = s.ring.proper_ideals()?;
    for i in &proper {
        let (q, _) = build_quotient(&s.ring, i)?;
        let v = factorize::is_n_oaf(&q, n)?;
        if !v.holds {
            let mut w = ideal_witness(&s.ring, &[i]);
            if let Some(bad) = &v.witness {
                w.ideals.push(format!("{} in quotient", q.ideal_name(bad)));
            }
            return Ok(Outcome::fail(
                format!("quotient by {} is not {n}-OAF", s.ring.ideal_name(i)),
                w,
            ));
        }
    }
    Ok(Outcome::pass(format!("all {} quotients are {n}-OAF", proper.len())))
}

/// A finite product is n-OAF exactly when every factor is general ZPI.
fn product_rule(s: &Subject, n: usize) -> Result<Option<Outcome>> {
    let Origin::Product { factors } = s.ring.origin() else {
        return Ok(None);
    };
    let lhs = s.oaf(n)?;
    let mut rhs = true;
    let mut parts = Vec::new();
    for f in factors {
        let z = factorize::is_general_zpi(f)?;
        parts.push(yes_no(z.holds));
        rhs &= z.holds;
    }
    let detail = format!(
        "{n}-OAF {}; factors general ZPI [{}]",
        yes_no(lhs.holds),
        parts.join(", ")
    );
    if lhs.holds == rhs {
        Ok(Some(Outcome::pass(detail)))
    } else {
        let w = lhs
            .witness
            .as_ref()
            .map(|i| ideal_witness(&s.ring, &[i]))
            .unwrap_or_default();
        Ok(Some(Outcome::fail(detail, w)))
    }
}

/// Local factors of an n-OAF ring are n-OAF.
fn localization(s: &Subject, n: usize) -> Result<Outcome> {
    if s.ring.is_local() {
        return Ok(Outcome::vacuous("local ring: its only local factor is itself"));
    }
    if !s.oaf(n)?.holds {
        return Ok(Outcome::vacuous(format!("ring is not {n}-OAF")));
    }
    let factors = s.ring.local_decomposition()?;
    for f in &factors {
        let v = factorize::is_n_oaf(&f.ring, n)?;
        if !v.holds {
            return Ok(Outcome::fail(
                format!(
                    "local factor at idempotent {} is not {n}-OAF",
                    s.ring.label(f.idempotent)
                ),
                Witness {
                    ideals: v.witness.iter().map(|i| f.ring.ideal_name(i)).collect(),
                    elements: vec![s.ring.label(f.idempotent)],
                },
            ));
        }
    }
    Ok(Outcome::pass(format!(
        "{} local factors, all {n}-OAF",
        factors.len()
    )))
}

/// Local, `M` nilpotent and `M^n` divided imply n-OAF.
fn pdiv1(s: &Subject, n: usize) -> Result<Outcome> {
    let r = &s.ring;
    if !r.is_local() {
        return Ok(Outcome::vacuous("ring is not local"));
    }
    let m = &r.maximal_ideals()[0];
    let nilpotent = r.ideal_power(m, r.size() as u32)? == r.zero_ideal();
    if !nilpotent {
        return Ok(Outcome::vacuous("maximal ideal is not nilpotent"));
    }
    if n == 1 {
        return Ok(Outcome::vacuous(format!(
            "n = 1 not covered (needs an element of M outside M^n); observed 1-OAF {}",
            yes_no(s.oaf(1)?.holds)
        )));
    }
    let mn = r.ideal_power(m, n as u32)?;
    let (divided, incomparable) = r.is_divided(&mn)?;
    if !divided {
        let other = incomparable.expect("witness for non-divided ideal");
        return Ok(Outcome::vacuous(format!(
            "M^{n} = {} is not divided: incomparable with {}",
            r.ideal_name(&mn),
            r.ideal_name(&other)
        )));
    }
    let v = s.oaf(n)?;
    let detail = format!("M^{n} = {} divided; {n}-OAF {}", r.ideal_name(&mn), yes_no(v.holds));
    if v.holds {
        Ok(Outcome::pass(detail))
    } else {
        let w = ideal_witness(r, &[v.witness.as_ref().expect("witness for non-OAF ring")]);
        Ok(Outcome::fail(detail, w))
    }
}

/// Von Neumann regular, reduced and product of fields coincide (the
/// Noetherian hypothesis is automatic for finite rings).
fn von_neumann_regular(s: &Subject) -> Result<Outcome> {
    let (vnr, bad) = classify::is_von_neumann_regular(&s.ring)?;
    let reduced = s.ring.nilradical() == s.ring.zero_ideal();
    let fields = classify::is_product_of_fields(&s.ring)?;
    let detail = format!(
        "regular {}, reduced {}, product of fields {}",
        yes_no(vnr),
        yes_no(reduced),
        yes_no(fields)
    );
    if vnr == reduced && reduced == fields {
        Ok(Outcome::pass(detail))
    } else {
        let w = bad
            .as_ref()
            .map(|i| ideal_witness(&s.ring, &[i]))
            .unwrap_or_default();
        Ok(Outcome::fail(detail, w))
    }
}

fn extension_parts(r: &RingTable) -> Option<(Arc<RingTable>, Arc<ModuleTable>)> {
    r.trivial_extension_parts()
        .map(|(a, e)| (a.clone(), e.clone()))
}

/// `I ∝ V` as an ideal of `A ∝ E`.
fn homogeneous(r: &RingTable, a: &RingTable, e: &ModuleTable, i: &Ideal, v: &BitSet) -> Ideal {
    let ne = e.size();
    let mut set = BitSet::new(r.size());
    for x in i.elements() {
        for m in v.iter() {
            set.insert(x * ne + m);
        }
    }
    debug_assert_eq!(a.size() * ne, r.size());
    Ideal::from_members(set)
}

/// Whether `ann(E)` is a product of idempotent maximal ideals of `A` (the
/// empty product being `A`).
fn annihilator_is_idempotent_product(a: &RingTable, e: &ModuleTable) -> Result<bool> {
    let ann = e.annihilator();
    let mut reachable = vec![a.unit_ideal()];
    for p in a.maximal_ideals() {
        if !a.is_idempotent(p)? {
            continue;
        }
        let more = reachable
            .iter()
            .map(|q| a.ideal_product(q, p))
            .collect::<Result<Vec<_>>>()?;
        reachable.extend(more);
    }
    Ok(reachable.contains(&ann))
}

/// The idealization condition for `A ∝ E` to be general ZPI.
fn idealization_condition(a: &RingTable, e: &ModuleTable) -> Result<bool> {
    if !factorize::is_general_zpi(a)?.holds {
        return Ok(false);
    }
    if e.is_zero_module() {
        return Ok(true);
    }
    Ok(e.cyclic_generator().is_some() && annihilator_is_idempotent_product(a, e)?)
}

fn idealization_identities(s: &Subject) -> Result<Option<Outcome>> {
    let r = &s.ring;
    let Some((a, e)) = extension_parts(r) else {
        return Ok(None);
    };
    let full_e = BitSet::full(e.size());

    let expected_nil = homogeneous(r, &a, &e, &a.nilradical(), &full_e);
    if r.nilradical() != expected_nil {
        return Ok(Some(Outcome::fail(
            "Nil(R) differs from Nil(A) ∝ E",
            ideal_witness(r, &[&r.nilradical(), &expected_nil]),
        )));
    }

    let lattice = a.all_ideals()?;
    for i in lattice {
        let ie = e.ideal_times_module(i);
        let left = homogeneous(r, &a, &e, i, &full_e);
        for j in lattice {
            let je = e.ideal_times_module(j);
            let product = r.ideal_product(&left, &homogeneous(r, &a, &e, j, &full_e))?;
            let sum = e.subgroup(ie.iter().chain(je.iter()));
            let expected = homogeneous(r, &a, &e, &a.ideal_product(i, j)?, &sum);
            if product != expected {
                return Ok(Some(Outcome::fail(
                    format!(
                        "(I ∝ E)(J ∝ E) != IJ ∝ (IE + JE) for I = {}, J = {}",
                        a.ideal_name(i),
                        a.ideal_name(j)
                    ),
                    Witness {
                        ideals: vec![a.ideal_name(i), a.ideal_name(j)],
                        elements: Vec::new(),
                    },
                )));
            }
        }
    }

    let zero_e = homogeneous(r, &a, &e, &a.zero_ideal(), &full_e);
    let mut above = 0;
    for h in r.all_ideals()?.iter().filter(|h| zero_e.is_subset(h)) {
        above += 1;
        let ok = matches!(r.homogeneous_view(h)?, Some(v) if v.module_part.count() == e.size());
        if !ok {
            return Ok(Some(Outcome::fail(
                "ideal above 0 ∝ E is not of the form I ∝ E",
                ideal_witness(r, &[h]),
            )));
        }
    }

    if r.is_local() != a.is_local() {
        return Ok(Some(Outcome::fail(
            format!(
                "R local {}, A local {}",
                yes_no(r.is_local()),
                yes_no(a.is_local())
            ),
            Witness::default(),
        )));
    }

    let lifted: Vec<Ideal> = a
        .maximal_ideals()
        .iter()
        .map(|p| homogeneous(r, &a, &e, p, &full_e))
        .collect();
    for p in r.maximal_ideals() {
        if !lifted.contains(p) {
            return Ok(Some(Outcome::fail(
                "prime ideal not of the form P ∝ E",
                ideal_witness(r, &[p]),
            )));
        }
    }
    if lifted.len() != r.maximal_ideals().len() {
        return Ok(Some(Outcome::fail(
            "primes of A do not lift bijectively",
            Witness::default(),
        )));
    }

    let zpi = s.zpi()?.holds;
    let condition = idealization_condition(&a, &e)?;
    if zpi != condition {
        return Ok(Some(Outcome::fail(
            format!(
                "R general ZPI {}, idealization condition {}",
                yes_no(zpi),
                yes_no(condition)
            ),
            Witness::default(),
        )));
    }

    Ok(Some(Outcome::pass(format!(
        "nilradical, {} product pairs, {above} ideals above 0 ∝ E, locality, {} primes, general ZPI {}",
        lattice.len() * lattice.len(),
        lifted.len(),
        yes_no(zpi)
    ))))
}

/// `M^(n-1) E ⊆ M x` for every `x` outside `M^(n-1) E`, and
/// `M^(n-1) E ⊆ a E` for every nonzero `a` in `M`.
fn generalid_side_conditions(a: &RingTable, e: &ModuleTable, m: &Ideal, n: usize) -> Result<bool> {
    let sub = e.ideal_times_module(&a.ideal_power(m, n as u32 - 1)?);
    for x in (0..e.size()).filter(|&x| !sub.contains(x)) {
        let mx = BitSet::from_indices(e.size(), m.elements().map(|b| e.act(b, x)));
        if !sub.is_subset(&mx) {
            return Ok(false);
        }
    }
    for z in m.elements().filter(|&z| z != a.zero()) {
        if !sub.is_subset(&e.scalar_image(z)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn generalid(s: &Subject, n: usize) -> Result<Option<Outcome>> {
    let r = &s.ring;
    let Some((a, e)) = extension_parts(r) else {
        return Ok(None);
    };
    let r_oaf = s.oaf(n)?;
    if !a.is_local() {
        let condition = idealization_condition(&a, &e)?;
        let detail = format!(
            "non-local base: {n}-OAF {}, idealization condition {}",
            yes_no(r_oaf.holds),
            yes_no(condition)
        );
        return Ok(Some(if r_oaf.holds == condition {
            Outcome::pass(detail)
        } else {
            let w = r_oaf
                .witness
                .as_ref()
                .map(|i| ideal_witness(r, &[i]))
                .unwrap_or_default();
            Outcome::fail(detail, w)
        }));
    }

    let m = a.maximal_ideals()[0].clone();
    let e_zero = e.is_zero_module();
    let m_nilpotent = a.ideal_power(&m, a.size() as u32)? == a.zero_ideal();
    let mn_zero = a.ideal_power(&m, n as u32)? == a.zero_ideal();
    let a_oaf = factorize::is_n_oaf(&a, n)?.holds;
    let mut notes = Vec::new();

    if r_oaf.holds {
        let all_oa = classify::list_n_oa_ideals(&a, n)?.len() == a.proper_ideals()?.len();
        let ok = a_oaf && ((e_zero && m_nilpotent) || (mn_zero && all_oa));
        if !ok {
            return Ok(Some(Outcome::fail(
                format!(
                    "R {n}-OAF but A {n}-OAF {}, E = 0 {}, M nilpotent {}, M^{n} = 0 {}",
                    yes_no(a_oaf),
                    yes_no(e_zero),
                    yes_no(m_nilpotent),
                    yes_no(mn_zero)
                ),
                Witness::default(),
            )));
        }
        notes.push(format!("forward holds (E = 0 {}, M^{n} = 0 {})", yes_no(e_zero), yes_no(mn_zero)));
    }

    let converse = if e_zero {
        a_oaf
    } else {
        mn_zero && generalid_side_conditions(&a, &e, &m, n)?
    };
    if converse && !e_zero && n == 1 {
        notes.push(format!(
            "converse not asserted at n = 1; observed 1-OAF {}",
            yes_no(r_oaf.holds)
        ));
    } else if converse {
        if !r_oaf.holds {
            let w = ideal_witness(r, &[r_oaf.witness.as_ref().expect("witness for non-OAF ring")]);
            return Ok(Some(Outcome::fail(
                format!("converse hypotheses hold but R is not {n}-OAF"),
                w,
            )));
        }
        notes.push("converse holds".to_string());
    } else if r_oaf.holds {
        notes.push("R is n-OAF without the converse side conditions".to_string());
    }

    if notes.is_empty() {
        Ok(Some(Outcome::vacuous(format!(
            "R not {n}-OAF and converse hypotheses unmet"
        ))))
    } else {
        Ok(Some(Outcome::pass(notes.join("; "))))
    }
}

fn every_proper_ideal_n_oa(r: &RingTable, n: usize) -> Result<bool> {
    for i in r.proper_ideals()? {
        if !classify::is_n_oa(r, &i, n)?.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn cid_cid2(s: &Subject, n: usize) -> Result<Option<Outcome>> {
    let r = &s.ring;
    let Some((a, e)) = extension_parts(r) else {
        return Ok(None);
    };
    if e.is_zero_module() {
        return Ok(Some(Outcome::vacuous("E = 0")));
    }
    if !a.is_local() {
        return Ok(Some(Outcome::vacuous("base ring is not local")));
    }
    let m = &a.maximal_ideals()[0];
    if !e.ideal_times_module(m).iter().all(|x| x == e.zero()) {
        return Ok(Some(Outcome::vacuous("M E != 0")));
    }
    let r_oaf = s.oaf(n)?.holds;
    let all_oa = every_proper_ideal_n_oa(r, n)?;
    let mn_zero = a.ideal_power(m, n as u32)? == a.zero_ideal();
    let mut detail = format!(
        "{n}-OAF {}, M^{n} = 0 {}, every ideal {n}-OA {}",
        yes_no(r_oaf),
        yes_no(mn_zero),
        yes_no(all_oa)
    );
    if n == 1 {
        return Ok(Some(Outcome::vacuous(format!(
            "n = 1 not covered ((M ∝ E)^1 contains 0 ∝ E); observed {detail}"
        ))));
    }
    let mut agree = r_oaf == mn_zero && mn_zero == all_oa;
    if a.is_field() {
        detail.push_str("; base is a field (the only finite domains)");
        agree &= r_oaf && all_oa;
    }
    Ok(Some(if agree {
        Outcome::pass(detail)
    } else {
        Outcome::fail(detail, Witness::default())
    }))
}

pub const CHECK_NAMES: &[&str] = &[
    "tags",
    "von_neumann_regular",
    "oaf_profile",
    "idealization_identities",
    "oa_characterization",
    "min_unique",
    "min_union",
    "quotient_closure",
    "localization",
    "product_rule",
    "pdiv1",
    "generalid",
    "cid_cid2",
];

fn run_check(
    s: &Subject,
    declared: &BTreeSet<String>,
    check: &str,
    n: Option<usize>,
    range: &RangeInclusive<usize>,
) -> Option<CheckResult> {
    let r = &s.ring;
    let outcome: Result<Option<Outcome>> = match (check, n) {
        ("tags", None) => check_tags(s, declared).map(Some),
        ("von_neumann_regular", None) => von_neumann_regular(s).map(Some),
        ("oaf_profile", None) => oaf_profile(s, range).map(Some),
        ("idealization_identities", None) => idealization_identities(s),
        ("oa_characterization", Some(n)) => oa_characterization(r, n).map(Some),
        ("min_unique", Some(n)) => min_unique(r, n).map(Some),
        ("min_union", Some(n)) => min_union(r, n).map(Some),
        ("quotient_closure", Some(n)) => quotient_closure(s, n).map(Some),
        ("localization", Some(n)) => localization(s, n).map(Some),
        ("product_rule", Some(n)) => product_rule(s, n),
        ("pdiv1", Some(n)) => pdiv1(s, n).map(Some),
        ("generalid", Some(n)) => generalid(s, n),
        ("cid_cid2", Some(n)) => cid_cid2(s, n),
        _ => return None,
    };
    match outcome {
        Ok(None) => None,
        Ok(Some(o)) => Some(s.result(check, n, Ok(o))),
        Err(e) => Some(s.result(check, n, Err(e))),
    }
}

fn per_ring_check(check: &str) -> bool {
    matches!(
        check,
        "tags" | "von_neumann_regular" | "oaf_profile" | "idealization_identities"
    )
}

fn run_entry(entry: &CorpusEntry, range: &RangeInclusive<usize>, limits: Limits) -> Vec<CheckResult> {
    let ring = match entry.spec.build(limits) {
        Ok(r) => r,
        Err(e) => {
            return vec![CheckResult {
                check: "build".to_string(),
                ring: entry.name.clone(),
                n: None,
                verdict: Verdict::BuildError,
                detail: e.to_string(),
                witness: None,
            }]
        }
    };
    let s = Subject::new(&entry.name, ring);
    let mut out = Vec::new();
    for check in CHECK_NAMES.iter().filter(|c| per_ring_check(c)) {
        out.extend(run_check(&s, &entry.tags, check, None, range));
    }
    for n in range.clone() {
        for check in CHECK_NAMES.iter().filter(|c| !per_ring_check(c)) {
            out.extend(run_check(&s, &entry.tags, check, Some(n), range));
        }
    }
    out
}

/// Runs every applicable check on every entry, in corpus order. A build
/// failure is reported for its entry and the run continues.
pub fn run_corpus(
    corpus: &[CorpusEntry],
    n_range: RangeInclusive<usize>,
    limits: Limits,
) -> Vec<CheckResult> {
    corpus
        .iter()
        .flat_map(|entry| run_entry(entry, &n_range, limits))
        .collect()
}

/// Re-executes the check that produced `result` on a freshly built ring and
/// reports whether it reproduces the same result.
pub fn rerun(entry: &CorpusEntry, result: &CheckResult, n_range: RangeInclusive<usize>, limits: Limits) -> Result<bool> {
    if result.ring != entry.name {
        return Err(Error::InvalidArgument(format!(
            "result belongs to {}, not {}",
            result.ring, entry.name
        )));
    }
    if result.check == "build" {
        return Ok(entry.spec.build(limits).is_err());
    }
    let s = Subject::new(&entry.name, entry.spec.build(limits)?);
    let again = run_check(&s, &entry.tags, &result.check, result.n, &n_range);
    Ok(again.as_ref() == Some(result))
}

/// The standard corpus.
pub fn default_corpus() -> Vec<CorpusEntry> {
    use RingSpec as S;
    let l = TAG_LOCAL;
    let d = TAG_DOMAIN_LIKE;
    let c = TAG_CHAIN;
    let p = TAG_PRODUCT;
    let t = TAG_TRIVIAL_EXTENSION;
    let mut out = Vec::new();
    for (q, k) in [(2usize, 1u32), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4)] {
        let n = q.pow(k);
        let tags: &[&str] = if k == 1 { &[l, d, c] } else { &[l, c] };
        out.push(CorpusEntry::new(&format!("Z{n}"), S::zmod(n), tags));
    }
    out.push(CorpusEntry::new("Z12", S::zmod(12), &[]));
    out.push(CorpusEntry::new("Z60", S::zmod(60), &[]));
    for q in [2usize, 3] {
        for k in 2..=4u32 {
            out.push(CorpusEntry::new(
                &format!("F{q}[x]/(x^{k})"),
                S::truncated_poly(q, k),
                &[l, c],
            ));
        }
    }
    for k in [2u32, 3] {
        out.push(CorpusEntry::new(
            &format!("F2[x,y]/(x,y)^{k}"),
            S::truncated_bivariate(2, k),
            &[l],
        ));
    }
    out.push(CorpusEntry::new(
        "F2[x,y]/(x^2,xy,y^4)",
        S::two_variable_example(),
        &[l],
    ));
    out.push(CorpusEntry::new(
        "Z4 x Z9",
        S::product(vec![S::zmod(4), S::zmod(9)]),
        &[p],
    ));
    out.push(CorpusEntry::new(
        "F2[x,y]/(x,y)^2 x F2",
        S::product(vec![S::truncated_bivariate(2, 2), S::zmod(2)]),
        &[p],
    ));
    out.push(CorpusEntry::new(
        "Z8 x F2[x]/(x^2)",
        S::product(vec![S::zmod(8), S::truncated_poly(2, 2)]),
        &[p],
    ));
    out.push(CorpusEntry::new(
        "Z4 ∝ Z4/(2)",
        S::trivial_extension(S::zmod(4), ModuleSpec::quotient(&[2])),
        &[l, t],
    ));
    out.push(CorpusEntry::new(
        "Z9 ∝ Z9/(3)",
        S::trivial_extension(S::zmod(9), ModuleSpec::quotient(&[3])),
        &[l, t],
    ));
    out.push(CorpusEntry::new(
        "F2 ∝ F2",
        S::trivial_extension(S::zmod(2), ModuleSpec::Regular),
        &[l, t, c],
    ));
    out.push(CorpusEntry::new(
        "F2 ∝ F2^2",
        S::trivial_extension(
            S::zmod(2),
            ModuleSpec::DirectSum {
                summands: vec![ModuleSpec::Regular, ModuleSpec::Regular],
            },
        ),
        &[l, t],
    ));
    for k in [2u32, 3] {
        out.push(CorpusEntry::new(
            &format!("F2[x]/(x^{k}) ∝ F2[x]/(x^{k})"),
            S::trivial_extension(S::truncated_poly(2, k), ModuleSpec::Regular),
            &[l, t],
        ));
    }
    out.push(CorpusEntry::new(
        "Z6 ∝ Z6",
        S::trivial_extension(S::zmod(6), ModuleSpec::Regular),
        &[t],
    ));
    out.push(CorpusEntry::new(
        "Z6 ∝ Z6/(2)",
        S::trivial_extension(S::zmod(6), ModuleSpec::quotient(&[2])),
        &[t],
    ));
    out.push(CorpusEntry::new(
        "Z6 ∝ (Z6/(2))^2",
        S::trivial_extension(
            S::zmod(6),
            ModuleSpec::DirectSum {
                summands: vec![ModuleSpec::quotient(&[2]), ModuleSpec::quotient(&[2])],
            },
        ),
        &[t],
    ));
    out.push(CorpusEntry::new(
        "Z12 ∝ Z12",
        S::trivial_extension(S::zmod(12), ModuleSpec::Regular),
        &[t],
    ));
    out
}

/// Number of substantive failures (fails and build errors).
pub fn failure_count(results: &[CheckResult]) -> usize {
    results.iter().filter(|r| r.verdict.is_failure()).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::ElementExpr;

    fn entry(name: &str) -> CorpusEntry {
        default_corpus()
            .into_iter()
            .find(|e| e.name == name)
            .unwrap()
    }

    #[test]
    fn empty_corpus_gives_no_results() {
        assert!(run_corpus(&[], 1..=4, Limits::default()).is_empty());
    }

    #[test]
    fn broken_entry_is_reported_and_others_run() {
        let bad = CorpusEntry::new(
            "broken",
            RingSpec::Algebra {
                modulus: 2,
                basis: vec!["1".into(), "x".into(), "y".into()],
                relations: [
                    ("x*x", "y"),
                    ("x*y", "0"),
                    ("y*y", "x"),
                ]
                .into_iter()
                .map(|(k, v)| (k.to_string(), ElementExpr::from(v)))
                .collect(),
                constants: None,
            },
            &[],
        );
        let corpus = vec![entry("Z4"), bad, entry("Z12")];
        let res = run_corpus(&corpus, 1..=2, Limits::default());
        let broken: Vec<_> = res.iter().filter(|r| r.ring == "broken").collect();
        assert_eq!(broken.len(), 1);
        assert_eq!(broken[0].verdict, Verdict::BuildError);
        assert!(res.iter().any(|r| r.ring == "Z12"));
        assert!(res
            .iter()
            .filter(|r| r.ring != "broken")
            .all(|r| !r.verdict.is_failure()));
    }

    #[test]
    fn z6_characterization() {
        let r = crate::ring::build_zmod(6, Limits::default()).unwrap();
        let o = oa_characterization(&r, 2).unwrap();
        assert_eq!(o.verdict, Verdict::Pass);
        assert_eq!(o.detail, "2 of 3 proper ideals are 2-OA");
    }

    #[test]
    fn wrong_tags_fail() {
        let mut e = entry("Z12");
        e.tags.insert(TAG_LOCAL.into());
        let res = run_corpus(&[e], 1..=1, Limits::default());
        let tags = res.iter().find(|r| r.check == "tags").unwrap();
        assert_eq!(tags.verdict, Verdict::Fail);
    }

    #[test]
    fn rerun_reproduces_results() {
        let e = entry("Z4 ∝ Z4/(2)");
        let res = run_corpus(std::slice::from_ref(&e), 1..=2, Limits::default());
        for r in &res {
            assert!(rerun(&e, r, 1..=2, Limits::default()).unwrap(), "{r:?}");
        }
    }
}
