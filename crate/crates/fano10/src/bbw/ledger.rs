//! A declarative ledger of long-exact-sequence bookkeeping.
//!
//! The ledger lists sheaves (some with cohomology known from the
//! Grassmannian computations, some unknown), short exact sequences relating
//! them, duality pairings, and a small set of *rank facts* about specific
//! arrows. The solver expands each short exact sequence into its long exact
//! cohomology sequence and propagates exactness until every unknown
//! dimension is determined, tracking which registered facts each value
//! consumed and reporting any contradiction with the sequence that exposes
//! it.

use super::{bbw_cohomology, decompose_cotangent_power, structure_sheaf, BbwError, CohomTable};
use std::collections::{BTreeMap, BTreeSet};

/// Maximum cohomological degree tracked (the ambient sixfold).
const QMAX: usize = 6;

/// Errors from parsing or solving a ledger.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LedgerError {
    /// Malformed input line.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// Reference to an undeclared name.
    #[error("line {line}: unknown name '{name}'")]
    UnknownReference { line: usize, name: String },
    /// Name declared twice.
    #[error("line {line}: duplicate name '{name}'")]
    DuplicateName { line: usize, name: String },
    /// Exactness cannot hold with the recorded values.
    #[error("contradiction: {context}")]
    Contradiction { context: String },
    /// The constraints do not determine all unknowns.
    #[error("unresolved cells: {}", cells.join(", "))]
    Unresolved { cells: Vec<String> },
    /// Underlying bundle error.
    #[error(transparent)]
    Bbw(#[from] BbwError),
}

/// Classification of a registered fact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactClass {
    /// Supplied by an independent computation elsewhere in the crate.
    External,
    /// Justified by an argument internal to the ledger's geometry.
    Internal,
}

/// A registered rank fact.
#[derive(Debug, Clone, PartialEq)]
pub struct FactDecl {
    /// External or internal.
    pub class: FactClass,
    /// The rank value.
    pub value: u128,
    /// Free-text justification.
    pub provenance: String,
}

/// How an object's cohomology is specified.
#[derive(Debug, Clone, PartialEq)]
pub enum ObjectKind {
    /// Computed on the Grassmannian: `O(t)`, `Ω¹(t)` or `Ω²(t)`.
    Bbw {
        /// 0, 1 or 2 — the cotangent power.
        power: usize,
        /// The twist.
        twist: i64,
    },
    /// A direct sum of `factor` copies of another object.
    Scale {
        /// Multiplicity.
        factor: u128,
        /// Name of the base object.
        base: String,
    },
    /// Unknown, supported on a variety of the given dimension.
    Unknown {
        /// Top possible cohomological degree.
        dim: usize,
    },
}

/// An object declaration.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectDecl {
    /// Name.
    pub name: String,
    /// Specification.
    pub kind: ObjectKind,
}

/// A short exact sequence `0 → a → b → c → 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LesDecl {
    /// Name.
    pub name: String,
    /// The three object names.
    pub terms: [String; 3],
}

/// A rank assertion on the arrow leaving `(from, q)` in a sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct RankDecl {
    /// Sequence name.
    pub les: String,
    /// Source object of the arrow.
    pub from: String,
    /// Cohomological degree.
    pub q: usize,
    /// Name of the registered fact supplying the rank.
    pub fact: String,
}

/// A duality pairing `h^q(a) = h^{n−q}(b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualDecl {
    /// Name.
    pub name: String,
    /// First object.
    pub a: String,
    /// Second object.
    pub b: String,
    /// The reflecting degree.
    pub n: usize,
}

/// A parsed ledger.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CohomLedger {
    /// Object declarations in order.
    pub objects: Vec<ObjectDecl>,
    /// Short exact sequences.
    pub sequences: Vec<LesDecl>,
    /// Rank assertions.
    pub ranks: Vec<RankDecl>,
    /// Registered facts by name.
    pub facts: BTreeMap<String, FactDecl>,
    /// Duality pairings.
    pub duals: Vec<DualDecl>,
}

impl CohomLedger {
    /// Parses the text format.
    ///
    /// Lines: `obj N = bbw O|Omega1|Omega2 <t>`, `obj N = scale <k> <base>`,
    /// `obj N unknown dim <d>`, `les N : A B C`,
    /// `rank les=N from=OBJ q=Q fact=F`,
    /// `fact N class=external|internal value=V provenance="..."`,
    /// `dual N A B <n>`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, LedgerError> {
        let mut ledger = CohomLedger::default();
        let mut names: BTreeSet<String> = BTreeSet::new();
        let err = |line: usize, message: &str| LedgerError::Parse {
            line,
            message: message.to_string(),
        };
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens[0] {
                "obj" => {
                    if tokens.len() < 3 {
                        return Err(err(line_no, "truncated object declaration"));
                    }
                    let name = tokens[1].to_string();
                    if !names.insert(name.clone()) {
                        return Err(LedgerError::DuplicateName { line: line_no, name });
                    }
                    let kind = if tokens[2] == "=" {
                        match tokens.get(3) {
                            Some(&"bbw") => {
                                let family = tokens
                                    .get(4)
                                    .ok_or_else(|| err(line_no, "missing bundle family"))?;
                                let power = match *family {
                                    "O" => 0,
                                    "Omega1" => 1,
                                    "Omega2" => 2,
                                    other => {
                                        return Err(err(
                                            line_no,
                                            &format!("unknown bundle family '{other}'"),
                                        ))
                                    }
                                };
                                let twist = tokens
                                    .get(5)
                                    .and_then(|t| t.parse::<i64>().ok())
                                    .ok_or_else(|| err(line_no, "missing or bad twist"))?;
                                ObjectKind::Bbw { power, twist }
                            }
                            Some(&"scale") => {
                                let factor = tokens
                                    .get(4)
                                    .and_then(|t| t.parse::<u128>().ok())
                                    .ok_or_else(|| err(line_no, "missing or bad factor"))?;
                                let base = tokens
                                    .get(5)
                                    .ok_or_else(|| err(line_no, "missing base object"))?
                                    .to_string();
                                ObjectKind::Scale { factor, base }
                            }
                            _ => return Err(err(line_no, "expected 'bbw' or 'scale'")),
                        }
                    } else if tokens[2] == "unknown" {
                        if tokens.get(3) != Some(&"dim") {
                            return Err(err(line_no, "expected 'unknown dim <d>'"));
                        }
                        let dim = tokens
                            .get(4)
                            .and_then(|t| t.parse::<usize>().ok())
                            .filter(|&d| d <= QMAX)
                            .ok_or_else(|| err(line_no, "missing or bad dimension"))?;
                        ObjectKind::Unknown { dim }
                    } else {
                        return Err(err(line_no, "expected '=' or 'unknown'"));
                    };
                    ledger.objects.push(ObjectDecl { name, kind });
                }
                "les" => {
                    if tokens.len() != 6 || tokens[2] != ":" {
                        return Err(err(line_no, "expected 'les NAME : A B C'"));
                    }
                    let name = tokens[1].to_string();
                    if !names.insert(name.clone()) {
                        return Err(LedgerError::DuplicateName { line: line_no, name });
                    }
                    ledger.sequences.push(LesDecl {
                        name,
                        terms: [
                            tokens[3].to_string(),
                            tokens[4].to_string(),
                            tokens[5].to_string(),
                        ],
                    });
                }
                "rank" => {
                    let mut les = None;
                    let mut from = None;
                    let mut q = None;
                    let mut fact = None;
                    for t in &tokens[1..] {
                        if let Some(v) = t.strip_prefix("les=") {
                            les = Some(v.to_string());
                        } else if let Some(v) = t.strip_prefix("from=") {
                            from = Some(v.to_string());
                        } else if let Some(v) = t.strip_prefix("q=") {
                            q = v.parse::<usize>().ok();
                        } else if let Some(v) = t.strip_prefix("fact=") {
                            fact = Some(v.to_string());
                        } else {
                            return Err(err(line_no, &format!("unknown key '{t}'")));
                        }
                    }
                    match (les, from, q, fact) {
                        (Some(les), Some(from), Some(q), Some(fact)) if q <= QMAX => {
                            ledger.ranks.push(RankDecl { les, from, q, fact })
                        }
                        _ => return Err(err(line_no, "rank needs les=, from=, q=, fact=")),
                    }
                }
                "fact" => {
                    if tokens.len() < 4 {
                        return Err(err(line_no, "truncated fact declaration"));
                    }
                    let name = tokens[1].to_string();
                    if ledger.facts.contains_key(&name) {
                        return Err(LedgerError::DuplicateName { line: line_no, name });
                    }
                    let mut class = None;
                    let mut value = None;
                    for t in &tokens[2..] {
                        if let Some(v) = t.strip_prefix("class=") {
                            class = match v {
                                "external" => Some(FactClass::External),
                                "internal" => Some(FactClass::Internal),
                                _ => None,
                            };
                        } else if let Some(v) = t.strip_prefix("value=") {
                            value = v.parse::<u128>().ok();
                        }
                    }
                    let provenance = line
                        .split_once("provenance=\"")
                        .and_then(|(_, rest)| rest.rsplit_once('"'))
                        .map(|(p, _)| p.to_string())
                        .ok_or_else(|| err(line_no, "fact needs provenance=\"...\""))?;
                    match (class, value) {
                        (Some(class), Some(value)) => {
                            ledger.facts.insert(name, FactDecl { class, value, provenance });
                        }
                        _ => return Err(err(line_no, "fact needs class= and value=")),
                    }
                }
                "dual" => {
                    if tokens.len() != 5 {
                        return Err(err(line_no, "expected 'dual NAME A B n'"));
                    }
                    let n = tokens[4]
                        .parse::<usize>()
                        .ok()
                        .filter(|&n| n <= QMAX)
                        .ok_or_else(|| err(line_no, "bad reflecting degree"))?;
                    ledger.duals.push(DualDecl {
                        name: tokens[1].to_string(),
                        a: tokens[2].to_string(),
                        b: tokens[3].to_string(),
                        n,
                    });
                }
                other => return Err(err(line_no, &format!("unknown directive '{other}'"))),
            }
        }
        ledger.validate()?;
        Ok(ledger)
    }

    fn validate(&self) -> Result<(), LedgerError> {
        let object_names: BTreeSet<&str> =
            self.objects.iter().map(|o| o.name.as_str()).collect();
        let missing = |name: &str| LedgerError::UnknownReference {
            line: 0,
            name: name.to_string(),
        };
        for o in &self.objects {
            if let ObjectKind::Scale { base, .. } = &o.kind {
                if !object_names.contains(base.as_str()) {
                    return Err(missing(base));
                }
            }
        }
        for s in &self.sequences {
            for t in &s.terms {
                if !object_names.contains(t.as_str()) {
                    return Err(missing(t));
                }
            }
        }
        let les_names: BTreeSet<&str> =
            self.sequences.iter().map(|s| s.name.as_str()).collect();
        for r in &self.ranks {
            if !les_names.contains(r.les.as_str()) {
                return Err(missing(&r.les));
            }
            let seq = self.sequences.iter().find(|s| s.name == r.les).unwrap();
            if !seq.terms.contains(&r.from) {
                return Err(missing(&r.from));
            }
            if !self.facts.contains_key(&r.fact) {
                return Err(missing(&r.fact));
            }
        }
        for d in &self.duals {
            for t in [&d.a, &d.b] {
                if !object_names.contains(t.as_str()) {
                    return Err(missing(t));
                }
            }
        }
        Ok(())
    }

    /// The canonical ledger shipped with the crate.
    pub fn canonical() -> CohomLedger {
        CohomLedger::parse(include_str!("cogr.ledger"))
            .expect("the shipped ledger parses")
    }
}

/// A solved dimension together with the facts its derivation consumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvedValue {
    /// The dimension.
    pub value: u128,
    /// Names of registered facts used anywhere in the derivation.
    pub facts: BTreeSet<String>,
}

/// The fully solved ledger.
#[derive(Debug, Clone, PartialEq)]
pub struct SolvedLedger {
    /// Per object: dimensions over degrees `0..=dim`, with provenance.
    pub objects: BTreeMap<String, Vec<SolvedValue>>,
    /// The fact declarations, copied from the input.
    pub facts: BTreeMap<String, FactDecl>,
}

impl SolvedLedger {
    /// Cohomology table of one object.
    pub fn table(&self, name: &str) -> Option<CohomTable> {
        let vals = self.objects.get(name)?;
        let mut t = CohomTable::zero();
        for (q, v) in vals.iter().enumerate() {
            t.set(q, v.value);
        }
        Some(t)
    }

    /// All fact names of the given class consumed by at least one solved
    /// value.
    pub fn consumed_facts(&self, class: FactClass) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for vals in self.objects.values() {
            for v in vals {
                for f in &v.facts {
                    if self.facts.get(f).map(|d| d.class) == Some(class) {
                        out.insert(f.clone());
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Default)]
struct Cell {
    value: Option<u128>,
    facts: BTreeSet<String>,
}

struct Solver {
    /// (object index, q) → cell; q = 0..=QMAX.
    dims: Vec<Vec<Cell>>,
    /// (sequence index, arrow index 0..=19) → cell.
    ranks: Vec<Vec<Cell>>,
    changed: bool,
}

impl Solver {
    fn set(
        cell: &mut Cell,
        value: u128,
        facts: &BTreeSet<String>,
        changed: &mut bool,
        context: impl Fn() -> String,
    ) -> Result<(), LedgerError> {
        match cell.value {
            Some(existing) if existing != value => Err(LedgerError::Contradiction {
                context: format!("{}: {existing} vs {value}", context()),
            }),
            Some(_) => Ok(()),
            None => {
                cell.value = Some(value);
                cell.facts = facts.clone();
                *changed = true;
                Ok(())
            }
        }
    }
}

/// Solves a ledger by exactness propagation, returning every object's
/// cohomology with per-value fact provenance.
pub fn solve_ledger(ledger: &CohomLedger) -> Result<SolvedLedger, LedgerError> {
    let index: BTreeMap<&str, usize> = ledger
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| (o.name.as_str(), i))
        .collect();
    let nobj = ledger.objects.len();
    let mut dims: Vec<Vec<Cell>> = vec![vec![Cell::default(); QMAX + 1]; nobj];
    // Ambient dimension per object (for reporting and zero-padding).
    let mut ambient: Vec<usize> = vec![QMAX; nobj];

    // Initialize known tables.
    for (i, obj) in ledger.objects.iter().enumerate() {
        match &obj.kind {
            ObjectKind::Bbw { power, twist } => {
                let summands = if *power == 0 {
                    structure_sheaf(*twist)
                } else {
                    decompose_cotangent_power(*power, *twist)?
                };
                let table = bbw_cohomology(&summands);
                for q in 0..=QMAX {
                    dims[i][q].value = Some(table.h(q));
                }
            }
            ObjectKind::Unknown { dim } => {
                ambient[i] = *dim;
                for q in dim + 1..=QMAX {
                    dims[i][q].value = Some(0);
                }
            }
            ObjectKind::Scale { .. } => {}
        }
    }
    // Scaled objects inherit the base's ambient dimension (one hop is
    // enough: scales of scales are not used).
    for (i, obj) in ledger.objects.iter().enumerate() {
        if let ObjectKind::Scale { base, .. } = &obj.kind {
            ambient[i] = ambient[index[base.as_str()]];
        }
    }

    // Long exact sequences: 21 terms (A,B,C per degree), 20 interior arrows.
    let nles = ledger.sequences.len();
    let mut ranks: Vec<Vec<Cell>> = vec![vec![Cell::default(); 3 * (QMAX + 1) - 1]; nles];
    let term_of = |seq: &LesDecl, s: usize| -> (usize, usize) {
        (index[seq.terms[s % 3].as_str()], s / 3)
    };

    // Seed rank facts.
    for r in &ledger.ranks {
        let (li, seq) = ledger
            .sequences
            .iter()
            .enumerate()
            .find(|(_, s)| s.name == r.les)
            .expect("validated");
        let pos = seq.terms.iter().position(|t| *t == r.from).expect("validated");
        let s = 3 * r.q + pos;
        let fact = &ledger.facts[&r.fact];
        let mut facts = BTreeSet::new();
        facts.insert(r.fact.clone());
        let mut changed = false;
        Solver::set(&mut ranks[li][s], fact.value, &facts, &mut changed, || {
            format!("rank fact '{}' in sequence '{}'", r.fact, r.les)
        })?;
    }

    let mut solver = Solver { dims, ranks, changed: true };
    let mut passes = 0usize;
    while solver.changed {
        solver.changed = false;
        passes += 1;
        if passes > 10_000 {
            return Err(LedgerError::Contradiction {
                context: "propagation failed to reach a fixpoint".to_string(),
            });
        }

        // Scale links, both directions.
        for (i, obj) in ledger.objects.iter().enumerate() {
            if let ObjectKind::Scale { factor, base } = &obj.kind {
                let bi = index[base.as_str()];
                for q in 0..=QMAX {
                    let (bval, bfacts) =
                        (solver.dims[bi][q].value, solver.dims[bi][q].facts.clone());
                    if let Some(v) = bval {
                        let mut changed = solver.changed;
                        Solver::set(
                            &mut solver.dims[i][q],
                            v * factor,
                            &bfacts,
                            &mut changed,
                            || format!("scaled object '{}' at q={q}", obj.name),
                        )?;
                        solver.changed = changed;
                    }
                    let (sval, sfacts) =
                        (solver.dims[i][q].value, solver.dims[i][q].facts.clone());
                    if let Some(v) = sval {
                        if v % factor != 0 {
                            return Err(LedgerError::Contradiction {
                                context: format!(
                                    "object '{}' at q={q}: {v} not divisible by {factor}",
                                    obj.name
                                ),
                            });
                        }
                        let mut changed = solver.changed;
                        Solver::set(
                            &mut solver.dims[bi][q],
                            v / factor,
                            &sfacts,
                            &mut changed,
                            || format!("base of scaled object '{}' at q={q}", obj.name),
                        )?;
                        solver.changed = changed;
                    }
                }
            }
        }

        // Duality pairings.
        for d in &ledger.duals {
            let (ai, bi) = (index[d.a.as_str()], index[d.b.as_str()]);
            for q in 0..=d.n {
                for (src, dst, qs, qd) in [(ai, bi, q, d.n - q), (bi, ai, d.n - q, q)] {
                    let (val, facts) =
                        (solver.dims[src][qs].value, solver.dims[src][qs].facts.clone());
                    if let Some(v) = val {
                        let mut changed = solver.changed;
                        Solver::set(&mut solver.dims[dst][qd], v, &facts, &mut changed, || {
                            format!("duality '{}' at q={qd}", d.name)
                        })?;
                        solver.changed = changed;
                    }
                }
            }
        }

        // Exactness rules per sequence.
        for (li, seq) in ledger.sequences.iter().enumerate() {
            let nterms = 3 * (QMAX + 1);
            // Rank of the arrow leaving term s (s = nterms-1 has none);
            // boundary conventions: rank into term 0 and out of the last
            // term are zero.
            for s in 0..nterms {
                let (oi, q) = term_of(seq, s);
                let d = solver.dims[oi][q].clone();
                // Rule: zero dimension kills both adjacent arrows.
                if d.value == Some(0) {
                    for r in [s.checked_sub(1), (s + 1 <= nterms - 1).then_some(s)] {
                        if let Some(ri) = r {
                            let mut changed = solver.changed;
                            Solver::set(
                                &mut solver.ranks[li][ri],
                                0,
                                &d.facts,
                                &mut changed,
                                || format!("arrow {ri} in sequence '{}'", seq.name),
                            )?;
                            solver.changed = changed;
                        }
                    }
                }
                // Rule: dimension plus one adjacent rank gives the other.
                let rin = if s == 0 {
                    Cell { value: Some(0), facts: BTreeSet::new() }
                } else {
                    solver.ranks[li][s - 1].clone()
                };
                let rout = if s == nterms - 1 {
                    Cell { value: Some(0), facts: BTreeSet::new() }
                } else {
                    solver.ranks[li][s].clone()
                };
                let ctx_dim = || {
                    format!(
                        "h^{q}({}) via sequence '{}'",
                        ledger.objects[oi].name, seq.name
                    )
                };
                match (d.value, rin.value, rout.value) {
                    (None, Some(a), Some(b)) => {
                        let mut facts = rin.facts.clone();
                        facts.extend(rout.facts.iter().cloned());
                        let mut changed = solver.changed;
                        Solver::set(&mut solver.dims[oi][q], a + b, &facts, &mut changed, ctx_dim)?;
                        solver.changed = changed;
                    }
                    (Some(dv), Some(a), rb) => {
                        if dv < a {
                            return Err(LedgerError::Contradiction {
                                context: format!(
                                    "{}: incoming rank {a} exceeds dimension {dv}",
                                    ctx_dim()
                                ),
                            });
                        }
                        if rb.is_none() && s < nterms - 1 {
                            let mut facts = d.facts.clone();
                            facts.extend(rin.facts.iter().cloned());
                            let mut changed = solver.changed;
                            Solver::set(
                                &mut solver.ranks[li][s],
                                dv - a,
                                &facts,
                                &mut changed,
                                || format!("arrow {s} in sequence '{}'", seq.name),
                            )?;
                            solver.changed = changed;
                        }
                    }
                    _ => {}
                }
                if let (Some(dv), Some(b)) = (d.value, rout.value) {
                    if dv < b {
                        return Err(LedgerError::Contradiction {
                            context: format!(
                                "{}: outgoing rank {b} exceeds dimension {dv}",
                                ctx_dim()
                            ),
                        });
                    }
                    if rin.value.is_none() && s > 0 {
                        let mut facts = d.facts.clone();
                        facts.extend(rout.facts.iter().cloned());
                        let mut changed = solver.changed;
                        Solver::set(
                            &mut solver.ranks[li][s - 1],
                            dv - b,
                            &facts,
                            &mut changed,
                            || format!("arrow {} in sequence '{}'", s - 1, seq.name),
                        )?;
                        solver.changed = changed;
                    }
                }
            }
            // Window rule: between two known arrow ranks, the alternating
            // sum of the dimensions is determined; solve a single missing
            // dimension or verify consistency.
            for a in 0..nterms {
                let rleft = if a == 0 {
                    Cell { value: Some(0), facts: BTreeSet::new() }
                } else {
                    solver.ranks[li][a - 1].clone()
                };
                let Some(rl) = rleft.value else { continue };
                for b in a..nterms {
                    let rright = if b == nterms - 1 {
                        Cell { value: Some(0), facts: BTreeSet::new() }
                    } else {
                        solver.ranks[li][b].clone()
                    };
                    let Some(rr) = rright.value else { continue };
                    let mut unknown: Option<usize> = None;
                    let mut sum: i128 = 0;
                    let mut facts: BTreeSet<String> = rleft.facts.clone();
                    facts.extend(rright.facts.iter().cloned());
                    let mut ok = true;
                    for s in a..=b {
                        let (oi, q) = term_of(seq, s);
                        match solver.dims[oi][q].value {
                            Some(v) => {
                                let sign = if (s - a) % 2 == 0 { 1 } else { -1 };
                                sum += sign * v as i128;
                                facts.extend(solver.dims[oi][q].facts.iter().cloned());
                            }
                            None => {
                                if unknown.is_some() {
                                    ok = false;
                                    break;
                                }
                                unknown = Some(s);
                            }
                        }
                    }
                    if !ok {
                        continue;
                    }
                    let target: i128 =
                        rl as i128 + if (b - a) % 2 == 0 { rr as i128 } else { -(rr as i128) };
                    match unknown {
                        None => {
                            if sum != target {
                                return Err(LedgerError::Contradiction {
                                    context: format!(
                                        "sequence '{}', terms {a}..={b}: alternating sum {sum} \
                                         should be {target}",
                                        seq.name
                                    ),
                                });
                            }
                        }
                        Some(m) => {
                            let sign: i128 = if (m - a) % 2 == 0 { 1 } else { -1 };
                            let v = sign * (target - sum);
                            if v < 0 {
                                return Err(LedgerError::Contradiction {
                                    context: format!(
                                        "sequence '{}', terms {a}..={b}: negative dimension",
                                        seq.name
                                    ),
                                });
                            }
                            let (oi, q) = term_of(seq, m);
                            let mut changed = solver.changed;
                            Solver::set(
                                &mut solver.dims[oi][q],
                                v as u128,
                                &facts,
                                &mut changed,
                                || {
                                    format!(
                                        "h^{q}({}) via window in sequence '{}'",
                                        ledger.objects[oi].name, seq.name
                                    )
                                },
                            )?;
                            solver.changed = changed;
                        }
                    }
                }
            }
        }
    }

    // Collect results; every dimension must be known.
    let mut unresolved = Vec::new();
    let mut objects = BTreeMap::new();
    for (i, obj) in ledger.objects.iter().enumerate() {
        let mut vals = Vec::new();
        for q in 0..=ambient[i] {
            match solver.dims[i][q].value {
                Some(v) => vals.push(SolvedValue {
                    value: v,
                    facts: solver.dims[i][q].facts.clone(),
                }),
                None => unresolved.push(format!("h^{q}({})", obj.name)),
            }
        }
        objects.insert(obj.name.clone(), vals);
    }
    if !unresolved.is_empty() {
        return Err(LedgerError::Unresolved { cells: unresolved });
    }
    Ok(SolvedLedger { objects, facts: ledger.facts.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canonical_solution() -> SolvedLedger {
        solve_ledger(&CohomLedger::canonical()).expect("canonical ledger solves")
    }

    fn dims(s: &SolvedLedger, name: &str) -> Vec<u128> {
        s.objects[name].iter().map(|v| v.value).collect()
    }

    #[test]
    fn canonical_ledger_parses() {
        let ledger = CohomLedger::canonical();
        assert_eq!(ledger.sequences.len(), 16);
        assert_eq!(ledger.facts.len(), 3);
        assert_eq!(ledger.duals.len(), 2);
        assert_eq!(ledger.ranks.len(), 3);
    }

    #[test]
    fn structure_sheaf_chain_solves() {
        let s = canonical_solution();
        assert_eq!(dims(&s, "OW"), vec![1, 0, 0, 0, 0]);
        assert_eq!(dims(&s, "OW1"), vec![8, 0, 0, 0, 0]);
        assert_eq!(dims(&s, "OWm3"), vec![0, 0, 0, 0, 1]);
        assert_eq!(dims(&s, "OWm4"), vec![0, 0, 0, 0, 8]);
    }

    #[test]
    fn restricted_cotangent_values() {
        let s = canonical_solution();
        assert_eq!(dims(&s, "J1res"), vec![0, 0, 0, 0, 0]);
        assert_eq!(dims(&s, "J2res"), vec![0, 0, 0, 0, 24]);
        assert_eq!(dims(&s, "J3res"), vec![0, 0, 0, 5, 0]);
    }

    #[test]
    fn intrinsic_cotangent_values() {
        let s = canonical_solution();
        assert_eq!(dims(&s, "O1Wm2"), vec![0, 0, 0, 2, 0]);
        assert_eq!(dims(&s, "O1Wm3"), vec![0, 0, 0, 0, 8]);
        assert_eq!(dims(&s, "KZm1"), vec![0, 0, 0, 3, 0]);
        assert_eq!(dims(&s, "O2Wm1"), vec![0, 0, 0, 2, 0]);
    }

    #[test]
    fn consumed_external_facts_are_exactly_the_two_rank_inputs() {
        let s = canonical_solution();
        let ext = s.consumed_facts(FactClass::External);
        assert_eq!(
            ext.into_iter().collect::<Vec<_>>(),
            vec!["psi".to_string(), "sl_action".to_string()]
        );
        let int = s.consumed_facts(FactClass::Internal);
        assert_eq!(int.into_iter().collect::<Vec<_>>(), vec!["antisym".to_string()]);
    }

    #[test]
    fn provenance_reaches_the_dependent_values() {
        let s = canonical_solution();
        // H⁴(Ω¹_W(−3)) consumed the action-map rank.
        assert!(s.objects["O1Wm3"][4].facts.contains("sl_action"));
        // H³(Ω²_W(−1)) consumed the squaring-map rank.
        assert!(s.objects["O2Wm1"][3].facts.contains("psi"));
        // The structure-sheaf chain consumed nothing.
        for v in &s.objects["OW"] {
            assert!(v.facts.is_empty());
        }
    }

    #[test]
    fn solution_is_order_independent() {
        let base = canonical_solution();
        let mut ledger = CohomLedger::canonical();
        ledger.sequences.reverse();
        ledger.ranks.reverse();
        ledger.duals.reverse();
        ledger.objects.rotate_left(5);
        let s = solve_ledger(&ledger).expect("shuffled ledger still solves");
        for (name, vals) in &base.objects {
            assert_eq!(
                dims(&s, name),
                vals.iter().map(|v| v.value).collect::<Vec<_>>(),
                "object {name}"
            );
        }
        assert_eq!(
            s.consumed_facts(FactClass::External),
            base.consumed_facts(FactClass::External)
        );
    }

    #[test]
    fn corrupted_value_is_contradicted_with_a_named_sequence() {
        // Claim a wrong rank for the action-map arrow: the sequence cn3
        // (or the dependent chain) must expose it.
        let mut ledger = CohomLedger::canonical();
        ledger.facts.get_mut("sl_action").unwrap().value = 17;
        let err = solve_ledger(&ledger).unwrap_err();
        match err {
            LedgerError::Contradiction { context } => {
                assert!(
                    context.contains("cn3") || context.contains("serre"),
                    "context should name the exposing constraint: {context}"
                );
            }
            other => panic!("expected contradiction, got {other:?}"),
        }
    }

    #[test]
    fn missing_rank_fact_leaves_unresolved_cells() {
        let mut ledger = CohomLedger::canonical();
        ledger.ranks.retain(|r| r.fact != "psi");
        let err = solve_ledger(&ledger).unwrap_err();
        match err {
            LedgerError::Unresolved { cells } => {
                assert!(cells.iter().any(|c| c.contains("O2Wm1")), "{cells:?}");
            }
            other => panic!("expected unresolved, got {other:?}"),
        }
    }

    #[test]
    fn euler_additivity_holds_for_every_sequence() {
        let ledger = CohomLedger::canonical();
        let s = canonical_solution();
        for seq in &ledger.sequences {
            let chi: i128 = seq
                .terms
                .iter()
                .enumerate()
                .map(|(pos, name)| {
                    let sign = if pos == 1 { -1 } else { 1 };
                    sign * s.table(name).unwrap().euler()
                })
                .sum();
            assert_eq!(chi, 0, "sequence {}", seq.name);
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = CohomLedger::parse("obj X = bbw O 0\nles broken : X X\n").unwrap_err();
        assert!(matches!(err, LedgerError::Parse { line: 2, .. }));
    }
}
