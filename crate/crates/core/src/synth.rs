//! Group synthesis: from a Frobenius digraph to an explicit recipe for a
//! solvable group `G = J ⋊ (U ⋊ T)` realizing it.
//!
//! Sources become cyclic factors of `T`, middle vertices cyclic factors of `U`
//! (each acted on by its in-neighbors), and each sink `v` a module `R_v` over a
//! prime field on which its in-neighbors act without fixed points while its
//! 2-in-neighbors permute a basis.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::{self, is_prime, mod_inv, mod_pow, next_prime_one_mod, prime_factors};
use crate::error::{Error, Result};
use crate::field::FpMatrix;
use crate::graph::{Direction, Orientation, VertexSet};
use crate::realizability::require_valid;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_MAX_RETRIES: usize = 32;

/// Position of a vertex in the orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    /// Source: in-degree zero and some out-arc.
    O,
    /// Both in- and out-arcs.
    D,
    /// Out-degree zero, including isolated vertices.
    I,
}

pub fn roles(o: &Orientation) -> Vec<Role> {
    (0..o.n())
        .map(|v| match (o.in_degree(v) > 0, o.out_degree(v) > 0) {
            (false, true) => Role::O,
            (true, true) => Role::D,
            _ => Role::I,
        })
        .collect()
}

/// Which congruences the primes of middle vertices must satisfy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CongruenceMode {
    /// `q ≡ 1 (mod p)` for each arc `p -> q`.
    #[default]
    PerArc,
    /// `q ≡ 1 (mod p)` for every source prime `p`.
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SynthOptions {
    pub mode: CongruenceMode,
    /// Largest prime the searches may return.
    pub prime_cap: u64,
    /// Module constructions attempted per sink before giving up.
    pub max_retries: usize,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions {
            mode: CongruenceMode::PerArc,
            prime_cap: arith::DEFAULT_PRIME_CAP,
            max_retries: DEFAULT_MAX_RETRIES,
        }
    }
}

impl SynthOptions {
    pub fn strict() -> Self {
        SynthOptions {
            mode: CongruenceMode::Strict,
            ..Self::default()
        }
    }
}

pub(crate) fn phi_idx(o: &Orientation, v: usize) -> (VertexSet, VertexSet) {
    (
        o.directed_neighborhood(v, 1, Direction::In),
        o.directed_neighborhood(v, 2, Direction::In),
    )
}

/// In-neighbors and exact 2-in-neighbors of a sink `v`.
pub fn phi_sets(o: &Orientation, v: &str) -> Result<(Vec<String>, Vec<String>)> {
    let vi = o.vertex(v)?;
    if o.out_degree(vi) > 0 {
        return Err(Error::NotSink(v.to_string()));
    }
    let (a, b) = phi_idx(o, vi);
    let u = o.underlying();
    Ok((u.labels_of(a), u.labels_of(b)))
}

fn product(primes: &[u64], set: VertexSet, cap: u64) -> Result<u64> {
    set.iter().try_fold(1u64, |acc, v| {
        acc.checked_mul(primes[v])
            .filter(|&m| m <= cap)
            .ok_or(Error::PrimeSearchCap { modulus: acc, cap })
    })
}

/// Prime for each vertex (in vertex order): sources take the smallest primes, then
/// middle vertices and then sinks take the smallest unused primes meeting their congruences.
pub fn select_primes(o: &Orientation, opts: &SynthOptions) -> Result<Vec<u64>> {
    require_valid(o)?;
    let role = roles(o);
    let cap = opts.prime_cap;
    let mut used = BTreeSet::new();
    let mut primes = vec![0u64; o.n()];
    let role = &role;
    let of_role = |r: Role| (0..o.n()).filter(move |&v| role[v] == r);
    let mut take = |v: usize, modulus: u64, primes: &mut Vec<u64>| -> Result<()> {
        let p = next_prime_one_mod(modulus, &used, 0, cap)?;
        used.insert(p);
        primes[v] = p;
        Ok(())
    };
    for v in of_role(Role::O) {
        take(v, 1, &mut primes)?;
    }
    let sources: VertexSet = of_role(Role::O).collect();
    for v in of_role(Role::D) {
        let acting = match opts.mode {
            CongruenceMode::PerArc => o.in_neighbors(v).intersection(sources),
            CongruenceMode::Strict => sources,
        };
        let m = product(&primes, acting, cap)?;
        take(v, m, &mut primes)?;
    }
    for v in of_role(Role::I) {
        let m = product(&primes, o.in_neighbors(v), cap)?;
        take(v, m, &mut primes)?;
    }
    Ok(primes)
}

/// Smallest `e > 1` of multiplicative order exactly `p` modulo `q`.
pub fn build_k_action(p: u64, q: u64) -> Result<u64> {
    if !is_prime(p) || !is_prime(q) || !(q - 1).is_multiple_of(p) {
        return Err(Error::Congruence(format!("{q} is not 1 mod {p}")));
    }
    (2..q)
        .find(|&e| mod_pow(e, p, q) == 1)
        .ok_or_else(|| Error::Congruence(format!("no element of order {p} mod {q}")))
}

/// Elements of exact order `m` in the multiplicative group mod `r`, ascending.
fn elements_of_order(m: u64, r: u64) -> impl Iterator<Item = u64> {
    let factors = prime_factors(m);
    (1..r).filter(move |&x| {
        mod_pow(x, m, r) == 1 && factors.iter().all(|&f| mod_pow(x, m / f, r) != 1)
    })
}

/// Module for one sink: an `F_r`-space of dimension `d = ∏ Φ₂ primes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub vertex: usize,
    pub characteristic: u64,
    pub dimension: usize,
    /// Generator of the character: an element of order `∏ Φ₁ primes` in `F_r`.
    pub zeta: u64,
    pub phi1: VertexSet,
    pub phi2: VertexSet,
    /// Matrix of each acting vertex; every other vertex acts trivially.
    pub actions: BTreeMap<usize, FpMatrix>,
}

/// Builds the module of sink `v`, using the `choice`-th smallest element of the right order
/// as the character value, and verifies it.
///
/// `primes` is indexed by vertex; `k_actions` maps arcs `(source, middle)` to exponents.
pub fn build_module(
    o: &Orientation,
    v: usize,
    primes: &[u64],
    k_actions: &BTreeMap<(usize, usize), u64>,
    choice: usize,
) -> Result<ModuleSpec> {
    if o.out_degree(v) > 0 {
        return Err(Error::NotSink(o.label(v).to_string()));
    }
    let (phi1, phi2) = phi_idx(o, v);
    if phi1.is_empty() {
        return Err(Error::InvalidPlan(format!(
            "sink `{}` has no in-neighbors; it is a plain cyclic factor",
            o.label(v)
        )));
    }
    let r = primes[v];
    let m: u64 = phi1.iter().map(|a| primes[a]).product();
    if r % m != 1 {
        return Err(Error::Congruence(format!("{r} is not 1 mod {m}")));
    }
    let zeta = elements_of_order(m, r).nth(choice).ok_or_else(|| {
        Error::ModuleVerification(format!("no character choice {choice} of order {m} mod {r}"))
    })?;
    let twisting: Vec<usize> = phi2.iter().collect();
    let radix: Vec<usize> = twisting.iter().map(|&s| primes[s] as usize).collect();
    let d: usize = radix.iter().product();
    // Basis vector index -> exponent tuple over the Φ₂ primes (mixed radix, first digit fastest).
    let digits = |mut b: usize| -> Vec<u64> {
        radix
            .iter()
            .map(|&k| {
                let x = b % k;
                b /= k;
                x as u64
            })
            .collect()
    };
    let index = |ds: &[u64]| -> usize {
        ds.iter()
            .zip(&radix)
            .rev()
            .fold(0usize, |acc, (&x, &k)| acc * k + x as usize)
    };
    let mut actions = BTreeMap::new();
    for (pos, &s) in twisting.iter().enumerate() {
        let image: Vec<usize> = (0..d)
            .map(|b| {
                let mut ds = digits(b);
                ds[pos] = (ds[pos] + 1) % radix[pos] as u64;
                index(&ds)
            })
            .collect();
        actions.insert(s, FpMatrix::permutation(r, &image));
    }
    for a in phi1.iter() {
        let pa = primes[a];
        let za = mod_pow(zeta, m / pa, r);
        let entries: Vec<u64> = (0..d)
            .map(|b| {
                let ds = digits(b);
                // Exponent ∏ e_{s a}^{-β_s} mod p_a; 1 when no Φ₂ vertex acts on `a`.
                let c = twisting.iter().zip(&ds).fold(1u64, |acc, (&s, &beta)| {
                    let e = k_actions.get(&(s, a)).copied().unwrap_or(1);
                    arith::mod_mul(acc, mod_pow(mod_inv(e, pa), beta, pa), pa)
                });
                mod_pow(za, c, r)
            })
            .collect();
        actions.insert(a, FpMatrix::diagonal(r, &entries));
    }
    let spec = ModuleSpec {
        vertex: v,
        characteristic: r,
        dimension: d,
        zeta,
        phi1,
        phi2,
        actions,
    };
    verify_module(&spec, primes, k_actions)?;
    Ok(spec)
}

/// Checks orders, fixed-point conditions and the defining relations of a module.
pub fn verify_module(
    spec: &ModuleSpec,
    primes: &[u64],
    k_actions: &BTreeMap<(usize, usize), u64>,
) -> Result<()> {
    let fail = |msg: String| Err(Error::ModuleVerification(msg));
    let r = spec.characteristic;
    let expected: VertexSet = spec.phi1.union(spec.phi2);
    let acting: VertexSet = spec.actions.keys().copied().collect();
    if acting != expected {
        return fail(format!("acting vertices {acting:?}, expected {expected:?}"));
    }
    for (&w, mat) in &spec.actions {
        if mat.modulus() != r || mat.rows() != spec.dimension || !mat.is_square() {
            return fail(format!("matrix of vertex {w} has the wrong shape"));
        }
        if !mat.has_prime_order(primes[w]) {
            return fail(format!("matrix of vertex {w} does not have order {}", primes[w]));
        }
    }
    for a in spec.phi1.iter() {
        // Each nontrivial element of the Φ₁ part has a power that is a nontrivial power of
        // one generator, and those share the generator's fixed space.
        if spec.actions[&a].fixed_dim() != 0 {
            return fail(format!("vertex {a} fixes a nonzero vector"));
        }
    }
    for s in spec.phi2.iter() {
        if spec.actions[&s].fixed_dim() == 0 {
            return fail(format!("vertex {s} fixes no nonzero vector"));
        }
    }
    for (&x, mx) in &spec.actions {
        for (&y, my) in spec.actions.range(x + 1..) {
            if !relation_holds(x, mx, y, my, k_actions) {
                return fail(format!("relation between vertices {x} and {y} fails"));
            }
        }
    }
    Ok(())
}

/// `x y x⁻¹ = y^e` when `x` acts on `y` by `e`, the mirror image when `y` acts on `x`,
/// and commutation otherwise.
pub(crate) fn relation_holds(
    x: usize,
    mx: &FpMatrix,
    y: usize,
    my: &FpMatrix,
    k_actions: &BTreeMap<(usize, usize), u64>,
) -> bool {
    match (k_actions.get(&(x, y)), k_actions.get(&(y, x))) {
        (Some(&e), _) => mx.mul(my) == my.pow(e).mul(mx),
        (None, Some(&e)) => my.mul(mx) == mx.pow(e).mul(my),
        (None, None) => mx.mul(my) == my.mul(mx),
    }
}

/// Recipe for a solvable group realizing an orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPlan {
    pub orientation: Orientation,
    pub mode: CongruenceMode,
    pub roles: Vec<Role>,
    /// Prime of each vertex, in vertex order.
    pub primes: Vec<u64>,
    /// Exponent of the action of each source on each middle vertex it points to.
    pub k_actions: BTreeMap<(usize, usize), u64>,
    /// Modules of sinks with in-neighbors, in vertex order.
    pub modules: Vec<ModuleSpec>,
    /// Isolated sinks, realized as plain cyclic factors.
    pub plain: Vec<usize>,
}

fn euler_phi(m: u64) -> u64 {
    prime_factors(m).iter().fold(m, |acc, &p| acc / p * (p - 1))
}

/// Builds the plan for a valid Frobenius orientation.
pub fn synthesize(o: &Orientation, opts: &SynthOptions) -> Result<GroupPlan> {
    let mut primes = select_primes(o, opts)?;
    let role = roles(o);
    let mut k_actions = BTreeMap::new();
    for (p, q) in o.arcs() {
        if role[p] == Role::O && role[q] == Role::D {
            k_actions.insert((p, q), build_k_action(primes[p], primes[q])?);
        }
    }
    let mut modules = Vec::new();
    let mut plain = Vec::new();
    for v in (0..o.n()).filter(|&v| role[v] == Role::I) {
        if o.in_degree(v) == 0 {
            plain.push(v);
            continue;
        }
        let m: u64 = o.in_neighbors(v).iter().map(|a| primes[a]).product();
        let mut choice = 0usize;
        let mut attempts = 0usize;
        let spec = loop {
            match build_module(o, v, &primes, &k_actions, choice) {
                Ok(spec) => break spec,
                Err(Error::ModuleVerification(msg)) => {
                    attempts += 1;
                    if attempts >= opts.max_retries {
                        return Err(Error::ModuleVerification(format!(
                            "sink `{}` failed after {attempts} attempts: {msg}",
                            o.label(v)
                        )));
                    }
                    choice += 1;
                    if choice as u64 >= euler_phi(m) {
                        let used: BTreeSet<u64> = primes.iter().copied().collect();
                        primes[v] = next_prime_one_mod(m, &used, primes[v], opts.prime_cap)?;
                        choice = 0;
                    }
                }
                Err(e) => return Err(e),
            }
        };
        modules.push(spec);
    }
    let plan = GroupPlan {
        orientation: o.clone(),
        mode: opts.mode,
        roles: role,
        primes,
        k_actions,
        modules,
        plain,
    };
    validate_plan(&plan)?;
    Ok(plan)
}

/// Group order: source and middle primes, `r^d` per module, and the plain sink primes.
pub fn estimate_order(plan: &GroupPlan) -> BigUint {
    let mut order = BigUint::from(1u32);
    for (v, &p) in plan.primes.iter().enumerate() {
        if plan.roles[v] != Role::I || plan.plain.contains(&v) {
            order *= p;
        }
    }
    for m in &plan.modules {
        order *= BigUint::from(m.characteristic).pow(m.dimension as u32);
    }
    order
}

/// Re-derives every plan condition from the orientation and the recorded data.
pub fn validate_plan(plan: &GroupPlan) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidPlan(msg));
    let o = &plan.orientation;
    let n = o.n();
    if plan.primes.len() != n || plan.roles.len() != n {
        return bad("one prime and one role per vertex required".into());
    }
    let distinct: BTreeSet<u64> = plan.primes.iter().copied().collect();
    if distinct.len() != n || plan.primes.iter().any(|&p| !is_prime(p)) {
        return bad("primes must be distinct primes".into());
    }
    require_valid(o)?;
    for v in 0..n {
        let expected = match (o.in_degree(v) > 0, o.out_degree(v) > 0) {
            (false, true) => Role::O,
            (true, true) => Role::D,
            _ => Role::I,
        };
        if plan.roles[v] != expected {
            return bad(format!("vertex `{}` has the wrong role", o.label(v)));
        }
    }
    let p = &plan.primes;
    let sources: Vec<usize> = (0..n).filter(|&v| plan.roles[v] == Role::O).collect();
    let mut expected_actions = BTreeSet::new();
    for (a, b) in o.arcs() {
        match (plan.roles[a], plan.roles[b]) {
            (Role::O, Role::D) => {
                expected_actions.insert((a, b));
                if !(p[b] - 1).is_multiple_of(p[a]) {
                    return Err(Error::Congruence(format!("{} is not 1 mod {}", p[b], p[a])));
                }
            }
            (Role::O, Role::I) | (Role::D, Role::I) => {}
            _ => return bad(format!("arc {} > {} joins the wrong roles", o.label(a), o.label(b))),
        }
    }
    if plan.mode == CongruenceMode::Strict {
        for q in (0..n).filter(|&v| plan.roles[v] == Role::D) {
            if let Some(&s) = sources.iter().find(|&&s| !(p[q] - 1).is_multiple_of(p[s])) {
                return Err(Error::Congruence(format!("{} is not 1 mod {}", p[q], p[s])));
            }
        }
    }
    let recorded: BTreeSet<(usize, usize)> = plan.k_actions.keys().copied().collect();
    if recorded != expected_actions {
        return bad("k_actions must list exactly the arcs from sources to middle vertices".into());
    }
    for (&(a, b), &e) in &plan.k_actions {
        if e <= 1 || e >= p[b] || mod_pow(e, p[a], p[b]) != 1 {
            return bad(format!("exponent {e} does not have order {} mod {}", p[a], p[b]));
        }
    }
    let sinks_with_in: Vec<usize> = (0..n)
        .filter(|&v| plan.roles[v] == Role::I && o.in_degree(v) > 0)
        .collect();
    let module_vertices: Vec<usize> = plan.modules.iter().map(|m| m.vertex).collect();
    if module_vertices != sinks_with_in {
        return bad("one module per sink with in-neighbors, in vertex order".into());
    }
    let isolated: Vec<usize> = (0..n)
        .filter(|&v| plan.roles[v] == Role::I && o.in_degree(v) == 0)
        .collect();
    if plan.plain != isolated {
        return bad("plain factors must be exactly the isolated sinks".into());
    }
    for m in &plan.modules {
        let v = m.vertex;
        let (phi1, phi2) = phi_idx(o, v);
        if m.phi1 != phi1 || m.phi2 != phi2 {
            return bad(format!("module of `{}` records the wrong neighborhoods", o.label(v)));
        }
        if m.characteristic != p[v] {
            return bad(format!("module of `{}` has the wrong characteristic", o.label(v)));
        }
        let order: u64 = phi1.iter().map(|a| p[a]).product();
        if p[v] % order != 1 {
            return Err(Error::Congruence(format!("{} is not 1 mod {order}", p[v])));
        }
        let dim: usize = phi2.iter().map(|s| p[s] as usize).product();
        if m.dimension != dim {
            return bad(format!("module of `{}` has dimension {}, expected {dim}", o.label(v), m.dimension));
        }
        verify_module(m, p, &plan.k_actions)?;
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct KActionDoc {
    from: String,
    to: String,
    exponent: String,
}

#[derive(Serialize, Deserialize)]
struct ModuleDoc {
    vertex: String,
    characteristic: String,
    dimension: usize,
    zeta: String,
    phi1: Vec<String>,
    phi2: Vec<String>,
    actions: BTreeMap<String, Vec<Vec<u64>>>,
}

#[derive(Serialize, Deserialize)]
struct PlanDoc {
    schema_version: u32,
    mode: CongruenceMode,
    vertices: Vec<String>,
    arcs: Vec<(String, String)>,
    primes: BTreeMap<String, String>,
    roles: BTreeMap<String, Role>,
    k_actions: Vec<KActionDoc>,
    modules: Vec<ModuleDoc>,
    plain: Vec<String>,
    order: String,
}

fn parse_num(s: &str, what: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| Error::InvalidPlan(format!("{what} `{s}` is not a decimal integer")))
}

impl GroupPlan {
    pub fn label(&self, v: usize) -> &str {
        self.orientation.label(v)
    }

    /// Vertex label -> prime.
    pub fn prime_map(&self) -> BTreeMap<String, u64> {
        (0..self.primes.len())
            .map(|v| (self.label(v).to_string(), self.primes[v]))
            .collect()
    }

    /// The orientation with every vertex renamed to its prime.
    pub fn prime_orientation(&self) -> Orientation {
        self.orientation
            .relabeled(self.primes.iter().map(u64::to_string))
            .expect("primes are distinct")
    }

    pub fn order(&self) -> BigUint {
        estimate_order(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let o = &self.orientation;
        let name = |v: usize| o.label(v).to_string();
        let names = |s: VertexSet| s.iter().map(name).collect::<Vec<_>>();
        let doc = PlanDoc {
            schema_version: SCHEMA_VERSION,
            mode: self.mode,
            vertices: o.labels().to_vec(),
            arcs: o.arcs().into_iter().map(|(a, b)| (name(a), name(b))).collect(),
            primes: self.prime_map().into_iter().map(|(k, p)| (k, p.to_string())).collect(),
            roles: (0..o.n()).map(|v| (name(v), self.roles[v])).collect(),
            k_actions: self
                .k_actions
                .iter()
                .map(|(&(a, b), &e)| KActionDoc {
                    from: name(a),
                    to: name(b),
                    exponent: e.to_string(),
                })
                .collect(),
            modules: self
                .modules
                .iter()
                .map(|m| ModuleDoc {
                    vertex: name(m.vertex),
                    characteristic: m.characteristic.to_string(),
                    dimension: m.dimension,
                    zeta: m.zeta.to_string(),
                    phi1: names(m.phi1),
                    phi2: names(m.phi2),
                    actions: m.actions.iter().map(|(&w, mat)| (name(w), mat.to_rows())).collect(),
                })
                .collect(),
            plain: self.plain.iter().map(|&v| name(v)).collect(),
            order: self.order().to_string(),
        };
        serde_json::to_value(doc).expect("plan serializes")
    }

    /// Reads a plan document and re-validates it.
    pub fn from_json(text: &str) -> Result<GroupPlan> {
        let doc: PlanDoc = serde_json::from_str(text)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidPlan(format!(
                "unsupported schema version {}",
                doc.schema_version
            )));
        }
        let arcs: Vec<(&str, &str)> =
            doc.arcs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let labels: Vec<&str> = doc.vertices.iter().map(String::as_str).collect();
        let o = Orientation::from_arcs(&labels, &arcs)?;
        let idx = |l: &str| o.vertex(l);
        let mut primes = vec![0u64; o.n()];
        let mut roles = vec![Role::I; o.n()];
        for (v, label) in doc.vertices.iter().enumerate() {
            let p = doc
                .primes
                .get(label)
                .ok_or_else(|| Error::InvalidPlan(format!("no prime for `{label}`")))?;
            primes[v] = parse_num(p, "prime")?;
            roles[v] = *doc
                .roles
                .get(label)
                .ok_or_else(|| Error::InvalidPlan(format!("no role for `{label}`")))?;
        }
        let mut k_actions = BTreeMap::new();
        for k in &doc.k_actions {
            k_actions.insert((idx(&k.from)?, idx(&k.to)?), parse_num(&k.exponent, "exponent")?);
        }
        let mut modules = Vec::new();
        for m in &doc.modules {
            let r = parse_num(&m.characteristic, "characteristic")?;
            let mut actions = BTreeMap::new();
            for (w, rows) in &m.actions {
                let mat = FpMatrix::from_rows(r, rows)
                    .ok_or_else(|| Error::InvalidPlan(format!("ragged matrix for `{w}`")))?;
                actions.insert(idx(w)?, mat);
            }
            let set = |ls: &[String]| -> Result<VertexSet> {
                ls.iter().map(|l| idx(l)).collect::<Result<VertexSet>>()
            };
            modules.push(ModuleSpec {
                vertex: idx(&m.vertex)?,
                characteristic: r,
                dimension: m.dimension,
                zeta: parse_num(&m.zeta, "zeta")?,
                phi1: set(&m.phi1)?,
                phi2: set(&m.phi2)?,
                actions,
            });
        }
        let plain = doc.plain.iter().map(|l| idx(l)).collect::<Result<Vec<_>>>()?;
        let plan = GroupPlan {
            orientation: o,
            mode: doc.mode,
            roles,
            primes,
            k_actions,
            modules,
            plain,
        };
        validate_plan(&plan)?;
        if plan.order().to_string() != doc.order {
            return Err(Error::InvalidPlan(format!(
                "recorded order {} differs from {}",
                doc.order,
                plan.order()
            )));
        }
        Ok(plan)
    }
}
