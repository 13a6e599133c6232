//! Ansatz solver: `T` is written through its components `𝒯_r`, built from the
//! eight families of `gl(m)`-invariant terms in the pairings
//! `⟨vector, covector⟩`, and the linear conditions on their coefficients are
//! solved exactly. Survivors are converted to candidate operators and checked
//! against the full equivariance constraints.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::candidate::{weight_zero_columns, CandidateOperator, Cell, ColumnKey, TensorIndex};
use super::constraints::{generators_of_degree, reduce, Basis, Engine, RowMode, Stage};
use super::linalg::{rref_rows, Kernel, SparseMatrix, SparseRow};
use super::result::{Bounds, ClassificationResult, SolverPath};
use crate::error::{Error, Result};
use crate::scalar::{accumulate, from_bigint, int, one, Rational};
use crate::tensor::{factorial, Blade, MultiIndex, Polynomial, MAX_VARS};

/// The eight invariant families. `Λ = X₁∧…∧Xₚ`, `ω = ν¹∧…∧ν^q`,
/// `u = ⟨Y,ξ⟩`, `v = ⟨Y,η⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `⟨Λ, ω⟩`, `q = p`
    Pair,
    /// `⟨i_ξ Λ, ω⟩`, `q = p − 1`
    XiPair,
    /// `⟨i_η Λ, ω⟩`, `q = p − 1`
    EtaPair,
    /// `⟨i_ξ i_η Λ, ω⟩`, `q = p − 2`
    XiEtaPair,
    /// `⟨Y ∧ Λ, ω⟩`, `q = p + 1`
    YPair,
    /// `⟨Y ∧ i_ξ Λ, ω⟩`, `q = p`
    YXiPair,
    /// `⟨Y ∧ i_η Λ, ω⟩`, `q = p`
    YEtaPair,
    /// `⟨Y ∧ i_ξ i_η Λ, ω⟩`, `q = p − 1`
    YXiEtaPair,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Pair,
        Family::XiPair,
        Family::EtaPair,
        Family::XiEtaPair,
        Family::YPair,
        Family::YXiPair,
        Family::YEtaPair,
        Family::YXiEtaPair,
    ];

    /// Table label `t.n`: type `t` is 1 without `Y∧`, 2 with.
    pub fn label(self) -> &'static str {
        match self {
            Family::Pair => "1.1",
            Family::XiPair => "1.2",
            Family::EtaPair => "1.3",
            Family::XiEtaPair => "1.4",
            Family::YPair => "2.1",
            Family::YXiPair => "2.2",
            Family::YEtaPair => "2.3",
            Family::YXiEtaPair => "2.4",
        }
    }

    fn with_y(self) -> bool {
        matches!(self, Family::YPair | Family::YXiPair | Family::YEtaPair | Family::YXiEtaPair)
    }

    /// `q − p` for which the family is present.
    pub fn offset(self) -> i64 {
        match self {
            Family::Pair | Family::YXiPair | Family::YEtaPair => 0,
            Family::XiPair | Family::EtaPair | Family::YXiEtaPair => -1,
            Family::XiEtaPair => -2,
            Family::YPair => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Indexing of the pairing variables `⟨v, c⟩`: vectors `0 = Y`, `i = Xᵢ`;
/// covectors `0 = ξ`, `1 = η`, `2 + j = ν^{j+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairingVars {
    pub p: usize,
    pub q: usize,
}

pub const XI: usize = 0;
pub const ETA: usize = 1;

impl PairingVars {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let n = (p + 1) * (q + 2);
        if n > MAX_VARS {
            return Err(Error::InvalidParameters(format!(
                "ansatz for p={p}, q={q} needs {n} pairing variables, at most {MAX_VARS} supported"
            )));
        }
        Ok(Self { p, q })
    }

    pub fn count(&self) -> usize {
        (self.p + 1) * (self.q + 2)
    }

    pub fn index(&self, vector: usize, covector: usize) -> usize {
        vector * (self.q + 2) + covector
    }

    pub fn var(&self, vector: usize, covector: usize) -> Polynomial {
        Polynomial::var(self.count(), self.index(vector, covector))
    }

    pub fn nu(j: usize) -> usize {
        2 + j
    }
}

/// Linear combination of wedge products of the vectors `Y, X₁, …`.
type Multivector = Vec<(Polynomial, Vec<usize>)>;

fn contract(vars: &PairingVars, mv: &Multivector, covector: usize) -> Multivector {
    let mut out = Vec::new();
    for (c, list) in mv {
        for a in 0..list.len() {
            let mut rest = list.clone();
            let v = rest.remove(a);
            let sign = if a % 2 == 0 { one() } else { -one() };
            out.push((c.mul(&vars.var(v, covector)).scale(&sign), rest));
        }
    }
    out
}

fn with_y(mv: &Multivector) -> Multivector {
    mv.iter()
        .map(|(c, list)| {
            let mut l = vec![0];
            l.extend(list);
            (c.clone(), l)
        })
        .collect()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (perm, sign) in permutations(n - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            let moved = (perm.len() - pos) as i64;
            out.push((p, if moved % 2 == 0 { sign } else { -sign }));
        }
    }
    out
}

/// `⟨v₁∧…∧v_q, ν¹∧…∧ν^q⟩ = det⟨v_a, ν^b⟩`.
fn pair_with_omega(vars: &PairingVars, mv: &Multivector) -> Polynomial {
    let perms = permutations(vars.q);
    let mut out = Polynomial::zero(vars.count());
    for (c, list) in mv {
        assert_eq!(list.len(), vars.q, "grades agree");
        for (perm, sign) in &perms {
            let mut t = c.scale(&int(*sign));
            for (a, &b) in perm.iter().enumerate() {
                t = t.mul(&vars.var(list[a], PairingVars::nu(b)));
            }
            out.add_assign(&t);
        }
    }
    out
}

fn family_polynomial(vars: &PairingVars, family: Family) -> Polynomial {
    let lambda: Multivector = vec![(Polynomial::constant(vars.count(), one()), (1..=vars.p).collect())];
    let inner = match family {
        Family::Pair | Family::YPair => lambda,
        Family::XiPair | Family::YXiPair => contract(vars, &lambda, XI),
        Family::EtaPair | Family::YEtaPair => contract(vars, &lambda, ETA),
        Family::XiEtaPair | Family::YXiEtaPair => contract(vars, &contract(vars, &lambda, ETA), XI),
    };
    let mv = if family.with_y() { with_y(&inner) } else { inner };
    pair_with_omega(vars, &mv)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzTerm {
    pub family: Family,
    /// Power of `v = ⟨Y,η⟩`; the power of `u = ⟨Y,ξ⟩` makes the `Y`-degree `r`.
    pub s: usize,
    pub polynomial: Polynomial,
}

/// All invariant terms allowed in `𝒯_r` for forms of degree `p → q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantAnsatz {
    pub p: usize,
    pub q: i64,
    pub r: usize,
    pub terms: Vec<AnsatzTerm>,
}

pub fn ansatz_terms(p: usize, q: i64, r: usize) -> Result<InvariantAnsatz> {
    let mut terms = Vec::new();
    if q >= 0 {
        let vars = PairingVars::new(p, q as usize)?;
        let (u, v) = (vars.var(0, XI), vars.var(0, ETA));
        for family in Family::ALL.into_iter().filter(|f| q - p as i64 == f.offset()) {
            if family.with_y() && r == 0 {
                continue;
            }
            let base = family_polynomial(&vars, family);
            if base.is_zero() {
                continue;
            }
            let y_left = if family.with_y() { r - 1 } else { r };
            for s in 0..=y_left {
                let poly = v.pow(s as u32).mul(&u.pow((y_left - s) as u32)).mul(&base);
                terms.push(AnsatzTerm { family, s, polynomial: poly });
            }
        }
    }
    Ok(InvariantAnsatz { p, q, r, terms })
}

/// One free coefficient: family `family`, power `s`, in `𝒯_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Unknown {
    pub r: usize,
    pub family: Family,
    pub s: usize,
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}^{}", self.family, self.r, self.s)
    }
}

/// The linear system on the ansatz coefficients of one cell.
#[derive(Clone, Debug)]
pub struct AnsatzSystem {
    pub cell: Cell,
    pub vars: PairingVars,
    pub unknowns: Vec<Unknown>,
    polynomials: Vec<Polynomial>,
    pub matrix: SparseMatrix,
}

fn degree_in(vars: &PairingVars, e: &MultiIndex, covector: usize) -> usize {
    (0..=vars.p).map(|v| e.get(vars.index(v, covector)) as usize).sum()
}

impl AnsatzSystem {
    pub fn new(cell: Cell, r_bound: usize) -> Result<Self> {
        let vars = PairingVars::new(cell.p, cell.q)?;
        let mut unknowns = Vec::new();
        let mut polynomials = Vec::new();
        for r in 0..=cell.k {
            for t in ansatz_terms(cell.p, cell.q as i64, r)?.terms {
                unknowns.push(Unknown { r, family: t.family, s: t.s });
                polynomials.push(t.polynomial);
            }
        }
        let mut matrix = SparseMatrix::new(unknowns.len());

        // orders: ξ-degree at most ℓ, η-degree at most R
        for (u, poly) in polynomials.iter().enumerate() {
            let too_high =
                poly.terms().any(|(e, _)| degree_in(&vars, e, XI) > cell.l || degree_in(&vars, e, ETA) > r_bound);
            if too_high {
                matrix.push(vec![(u, one())]);
            }
        }

        let (a0, b0) = (vars.index(0, XI), vars.index(0, ETA));
        let d = |poly: &Polynomial, vs: &[usize]| vs.iter().fold(poly.clone(), |acc, &v| acc.derivative(v));
        type Op<'a> = Box<dyn Fn(&Polynomial) -> Polynomial + 'a>;
        let mut equations: Vec<(Op<'_>, Op<'_>)> = Vec::new();
        let zero_op = |n: usize| -> Op<'_> { Box::new(move |_| Polynomial::zero(n)) };
        let n = vars.count();
        equations.push((Box::new(move |t| d(t, &[b0])), zero_op(n)));
        for i in 1..=cell.p {
            let bi = vars.index(i, ETA);
            equations.push((Box::new(move |t| d(t, &[bi])), zero_op(n)));
        }
        equations.push((Box::new(move |t| d(t, &[a0, a0])), Box::new(move |t| d(t, &[a0]))));
        for i in 1..=cell.p {
            let ai = vars.index(i, XI);
            equations.push((Box::new(move |t| d(t, &[a0, ai])), Box::new(move |t| d(t, &[ai]))));
        }
        for j in 0..cell.q {
            let d0 = vars.index(0, PairingVars::nu(j));
            equations.push((Box::new(move |t| d(t, &[a0, d0]).scale(&int(2))), Box::new(move |t| d(t, &[d0]))));
            for i in 1..=cell.p {
                let ai = vars.index(i, XI);
                let di = vars.index(i, PairingVars::nu(j));
                equations
                    .push((Box::new(move |t| d(t, &[ai, d0]).add(&d(t, &[a0, di]))), Box::new(move |t| d(t, &[di]))));
            }
        }

        for r in 0..=cell.k {
            for (lhs, lower) in &equations {
                let mut rows: BTreeMap<MultiIndex, BTreeMap<usize, Rational>> = BTreeMap::new();
                for (u, (unk, poly)) in unknowns.iter().zip(&polynomials).enumerate() {
                    let contribution = if unk.r == r {
                        lhs(poly)
                    } else if r >= 1 && unk.r == r - 1 {
                        lower(poly).scale(&int(-(r as i64)))
                    } else {
                        continue;
                    };
                    for (e, c) in contribution.terms() {
                        accumulate(rows.entry(*e).or_default(), u, c.clone());
                    }
                }
                for row in rows.into_values() {
                    matrix.push(row.into_iter().collect());
                }
            }
        }
        Ok(Self { cell, vars, unknowns, polynomials, matrix })
    }

    pub fn kernel(&self) -> Kernel {
        self.matrix.kernel()
    }

    pub fn polynomial(&self, u: usize) -> &Polynomial {
        &self.polynomials[u]
    }

    /// Reads a coefficient vector as an operator: the coefficient of
    /// `Y^α X₁^{i₁}⋯Xₚ^{iₚ} ξ^{α′} η^β ν¹_{j₁}⋯ν^q_{j_q}` in `𝒯_r`, times `α!/r!`,
    /// is the coordinate `(β, ξ^α e_I, ξ^{α′} e_J)`.
    pub fn to_candidate(&self, coeffs: &SparseRow, r_bound: usize) -> Result<CandidateOperator> {
        let m = self.cell.m;
        let mut terms: BTreeMap<ColumnKey, Rational> = BTreeMap::new();
        for (u, c) in coeffs {
            let r = self.unknowns[*u].r;
            let r_fact = from_bigint(factorial(r as u32));
            for (e, w) in self.polynomials[*u].terms() {
                for (key, v) in expand_components(&self.vars, m, e) {
                    let factor = from_bigint(key.input.alpha.factorial()) / &r_fact;
                    accumulate(&mut terms, key, c * w * v * factor);
                }
            }
        }
        CandidateOperator::from_terms(self.cell, r_bound, 0, terms)
    }
}

/// Partial state while expanding a pairing monomial in components.
#[derive(Clone)]
struct Expansion {
    y: MultiIndex,
    xi: MultiIndex,
    eta: MultiIndex,
    x: Vec<Option<usize>>,
    nu: Vec<Option<usize>>,
    coeff: Rational,
}

/// `Π⟨v,c⟩^e` written out as `Π(Σₐ vᵃ cₐ)^e`, keeping only the component
/// monomials whose `Xᵢ` and `ν^j` indices are strictly increasing.
fn expand_components(vars: &PairingVars, m: usize, e: &MultiIndex) -> Vec<(ColumnKey, Rational)> {
    let mut factors = Vec::new();
    for v in 0..=vars.p {
        for c in 0..vars.q + 2 {
            for _ in 0..e.get(vars.index(v, c)) {
                factors.push((v, c));
            }
        }
    }
    let mut states = vec![Expansion {
        y: MultiIndex::zero(m),
        xi: MultiIndex::zero(m),
        eta: MultiIndex::zero(m),
        x: vec![None; vars.p],
        nu: vec![None; vars.q],
        coeff: one(),
    }];
    for (v, c) in factors {
        let mut next = Vec::with_capacity(states.len() * m);
        for st in &states {
            for a in 0..m {
                let mut s = st.clone();
                if v == 0 {
                    s.y = s.y.increment(a);
                } else if s.x[v - 1].replace(a).is_some() {
                    continue;
                }
                match c {
                    XI => s.xi = s.xi.increment(a),
                    ETA => s.eta = s.eta.increment(a),
                    _ => {
                        if s.nu[c - 2].replace(a).is_some() {
                            continue;
                        }
                    }
                }
                next.push(s);
            }
        }
        states = next;
    }
    let mut out: BTreeMap<ColumnKey, Rational> = BTreeMap::new();
    for s in states {
        let xs: Option<Vec<usize>> = s.x.iter().copied().collect();
        let nus: Option<Vec<usize>> = s.nu.iter().copied().collect();
        let (Some(xs), Some(nus)) = (xs, nus) else { continue };
        if !xs.windows(2).all(|w| w[0] < w[1]) || !nus.windows(2).all(|w| w[0] < w[1]) {
            continue;
        }
        let key = ColumnKey {
            gamma: MultiIndex::zero(m),
            beta: s.eta,
            input: TensorIndex { alpha: s.y, blade: Blade::from_sorted(&xs, m).expect("increasing") },
            output: TensorIndex { alpha: s.xi, blade: Blade::from_sorted(&nus, m).expect("increasing") },
        };
        accumulate(&mut out, key, s.coeff);
    }
    out.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnsatzOptions {
    pub r_bound: Option<usize>,
    /// Generator degree used for the final check is `g + 1`.
    pub g: usize,
}

impl Default for AnsatzOptions {
    fn default() -> Self {
        Self { r_bound: None, g: 2 }
    }
}

/// Imposes all equivariance constraints up to generator degree `top` on the
/// span of `candidates`; returns the surviving subspace as candidate vectors.
pub(crate) fn verify_span(cell: Cell, candidates: &[CandidateOperator], top: usize) -> (Engine, Basis) {
    let mut cols: Vec<ColumnKey> = candidates.iter().flat_map(|t| t.terms().map(|(k, _)| *k)).collect();
    cols.sort();
    cols.dedup();
    let index: BTreeMap<ColumnKey, usize> = cols.iter().enumerate().map(|(j, k)| (*k, j)).collect();
    let weight_zero: std::collections::BTreeSet<ColumnKey> =
        weight_zero_columns(&cell, cols.iter().map(|c| c.beta.degree()).max().unwrap_or(0), 0).into_iter().collect();
    let reduced_ok = cols.iter().all(|c| c.gamma.is_zero() && weight_zero.contains(c));
    let mode = if reduced_ok { RowMode::TranslationReduced } else { RowMode::Full };
    let engine = Engine::new(cell, cols);
    let mut basis = Basis { vectors: candidates.iter().map(|t| t.to_row(&index).expect("own columns")).collect() };
    for degree in 0..=top {
        let gens = generators_of_degree(cell.m, degree);
        basis = reduce(&engine, &basis, &Stage { generators: &gens, mode });
    }
    (engine, basis)
}

pub fn classify_ansatz(cell: Cell, opts: &AnsatzOptions) -> Result<ClassificationResult> {
    let r_bound = opts.r_bound.unwrap_or(cell.k + cell.l + 2);
    let system = AnsatzSystem::new(cell, r_bound)?;
    let kernel = system.kernel();
    let candidates: Vec<CandidateOperator> =
        kernel.basis.iter().map(|v| system.to_candidate(v, r_bound)).collect::<Result<_>>()?;
    let mut notes = Vec::new();
    let nonzero: Vec<CandidateOperator> = candidates.iter().filter(|t| !t.is_zero()).cloned().collect();
    if nonzero.len() != candidates.len() {
        notes.push(format!("{} ansatz solutions give the zero operator", candidates.len() - nonzero.len()));
    }
    let (engine, verified) = verify_span(cell, &nonzero, opts.g + 1);
    let mut stabilized = true;
    if verified.vectors.len() != nonzero.len() {
        stabilized = false;
        for (v, t) in kernel.basis.iter().zip(&candidates) {
            if verify_span(cell, std::slice::from_ref(t), opts.g + 1).1.vectors.is_empty() {
                let desc: Vec<String> = v.iter().map(|(u, c)| format!("{c}·{}", system.unknowns[*u])).collect();
                notes.push(format!("ansatz solution {} fails the equivariance check", desc.join(" + ")));
            }
        }
    }
    let basis: Vec<CandidateOperator> = rref_rows(verified.vectors)
        .into_iter()
        .map(|v| {
            CandidateOperator::from_terms(cell, r_bound, 0, v.into_iter().map(|(j, c)| (engine.cols[j], c)))
                .expect("columns fit the cell")
        })
        .collect();
    Ok(ClassificationResult {
        cell,
        dimension: basis.len(),
        basis,
        path: SolverPath::Ansatz,
        bounds: Bounds { r_bound, x_deg: 0, g: opts.g },
        stabilized,
        borderline: cell.borderline(),
        notes,
    })
}
