//! Coordinates and arithmetic for plan-shaped groups `G = J ⋊ K`, `K = U ⋊ T`.
//!
//! `T` and `U` are direct products of cyclic groups of prime order, `T` acting on
//! `U` by power maps; `J` is a direct sum of modules over prime fields on which
//! `K` acts through matrices. An element is written `(j, k)` with `k = u·t`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{is_prime, mod_pow};
use crate::error::{Error, Result};
use crate::field::FpMatrix;
use crate::graph::{LabeledGraph, Orientation};
use crate::synth::{relation_holds, GroupPlan, Role};

/// Default element-count limit for exhaustive scans.
pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;
/// Largest prime count `sigma` will search.
pub const MAX_SIGMA_PRIMES: usize = 12;

/// Cyclic factor of `K`: a source (`T`) or middle (`U`) vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KFactor {
    pub label: String,
    pub prime: u64,
    pub role: Role,
}

/// Summand of `J`, with one action matrix per factor of `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleFactor {
    pub label: String,
    pub prime: u64,
    pub dim: usize,
    pub actions: Vec<FpMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModel {
    k_factors: Vec<KFactor>,
    /// `exps[a][b]`: `t_a u_b t_a⁻¹ = u_b^e`; 1 when `a` does not act on `b`.
    exps: Vec<Vec<u64>>,
    modules: Vec<ModuleFactor>,
}

/// Element `(j, k)`: exponents for the factors of `K` and a vector per module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub k: Vec<u64>,
    pub j: Vec<Vec<u64>>,
}

fn shape(msg: impl Into<String>) -> Error {
    Error::ShapeMismatch(msg.into())
}

impl GroupModel {
    /// Builds a model, checking primes, exponents, matrix orders and relations.
    ///
    /// `k_actions` is keyed by positions in `k_factors`: `(t, u)` with `t` in `T`, `u` in `U`.
    pub fn new(
        k_factors: Vec<KFactor>,
        k_actions: &BTreeMap<(usize, usize), u64>,
        modules: Vec<ModuleFactor>,
    ) -> Result<GroupModel> {
        let nk = k_factors.len();
        let all: Vec<u64> = k_factors
            .iter()
            .map(|f| f.prime)
            .chain(modules.iter().map(|m| m.prime))
            .collect();
        let distinct: BTreeSet<u64> = all.iter().copied().collect();
        if distinct.len() != all.len() {
            return Err(shape("primes must be distinct"));
        }
        if let Some(&p) = all.iter().find(|&&p| !is_prime(p) || p >= 1 << 32) {
            return Err(shape(format!("{p} is not a prime below 2^32")));
        }
        if all.len() > 64 {
            return Err(shape("at most 64 primes"));
        }
        if let Some(f) = k_factors.iter().find(|f| f.role == Role::I) {
            return Err(shape(format!("factor `{}` of K cannot be a sink", f.label)));
        }
        let mut exps = vec![vec![1u64; nk]; nk];
        for (&(a, b), &e) in k_actions {
            let (fa, fb) = match (k_factors.get(a), k_factors.get(b)) {
                (Some(fa), Some(fb)) => (fa, fb),
                _ => return Err(shape(format!("action ({a}, {b}) is out of range"))),
            };
            if fa.role != Role::O || fb.role != Role::D {
                return Err(Error::NotPlanShaped(format!(
                    "`{}` acting on `{}` is not a source acting on a middle factor",
                    fa.label, fb.label
                )));
            }
            if e % fb.prime == 0 || mod_pow(e, fa.prime, fb.prime) != 1 {
                return Err(shape(format!("exponent {e} has order not dividing {}", fa.prime)));
            }
            exps[a][b] = e % fb.prime;
        }
        for m in &modules {
            if m.actions.len() != nk || m.dim == 0 {
                return Err(shape(format!("module `{}` needs one matrix per factor", m.label)));
            }
            for (f, mat) in k_factors.iter().zip(&m.actions) {
                if mat.modulus() != m.prime || !mat.is_square() || mat.rows() != m.dim {
                    return Err(shape(format!("matrix of `{}` on `{}` has the wrong shape", f.label, m.label)));
                }
                if !mat.pow(f.prime).is_identity() {
                    return Err(shape(format!("matrix of `{}` on `{}` has the wrong order", f.label, m.label)));
                }
            }
            for a in 0..nk {
                for b in a + 1..nk {
                    if !relation_holds(a, &m.actions[a], b, &m.actions[b], k_actions) {
                        return Err(shape(format!(
                            "matrices of `{}` and `{}` on `{}` violate the relations of K",
                            k_factors[a].label, k_factors[b].label, m.label
                        )));
                    }
                }
            }
        }
        Ok(GroupModel { k_factors, exps, modules })
    }

    /// The model of a synthesized plan; isolated sinks become trivial 1-dimensional modules.
    pub fn from_plan(plan: &GroupPlan) -> Result<GroupModel> {
        let o = &plan.orientation;
        let k_vertices: Vec<usize> = (0..o.n()).filter(|&v| plan.roles[v] != Role::I).collect();
        let pos: BTreeMap<usize, usize> =
            k_vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let k_factors = k_vertices
            .iter()
            .map(|&v| KFactor {
                label: o.label(v).to_string(),
                prime: plan.primes[v],
                role: plan.roles[v],
            })
            .collect();
        let k_actions = plan
            .k_actions
            .iter()
            .map(|(&(a, b), &e)| ((pos[&a], pos[&b]), e))
            .collect();
        let mut modules: Vec<(usize, ModuleFactor)> = plan
            .modules
            .iter()
            .map(|m| {
                let r = m.characteristic;
                let actions = k_vertices
                    .iter()
                    .map(|w| {
                        m.actions
                            .get(w)
                            .cloned()
                            .unwrap_or_else(|| FpMatrix::identity(r, m.dimension))
                    })
                    .collect();
                let factor = ModuleFactor {
                    label: o.label(m.vertex).to_string(),
                    prime: r,
                    dim: m.dimension,
                    actions,
                };
                (m.vertex, factor)
            })
            .collect();
        for &v in &plan.plain {
            let r = plan.primes[v];
            let factor = ModuleFactor {
                label: o.label(v).to_string(),
                prime: r,
                dim: 1,
                actions: vec![FpMatrix::identity(r, 1); k_vertices.len()],
            };
            modules.push((v, factor));
        }
        modules.sort_by_key(|&(v, _)| v);
        GroupModel::new(k_factors, &k_actions, modules.into_iter().map(|(_, m)| m).collect())
    }

    /// Abelian group `∏ C_p`, every factor a trivially acting source.
    pub fn abelian(primes: &[u64]) -> Result<GroupModel> {
        let k_factors = primes
            .iter()
            .map(|&p| KFactor { label: p.to_string(), prime: p, role: Role::O })
            .collect();
        GroupModel::new(k_factors, &BTreeMap::new(), Vec::new())
    }

    pub fn k_factors(&self) -> &[KFactor] {
        &self.k_factors
    }

    pub fn modules(&self) -> &[ModuleFactor] {
        &self.modules
    }

    /// Exponent by which factor `a` acts on factor `b` (1 when it does not).
    pub fn k_exponent(&self, a: usize, b: usize) -> u64 {
        self.exps[a][b]
    }

    /// Primes of `K` factors, then of modules.
    pub fn primes(&self) -> Vec<u64> {
        self.k_factors
            .iter()
            .map(|f| f.prime)
            .chain(self.modules.iter().map(|m| m.prime))
            .collect()
    }

    fn prime_labels(&self) -> Vec<String> {
        self.primes().iter().map(u64::to_string).collect()
    }

    pub fn k_order(&self) -> u128 {
        self.k_factors.iter().map(|f| f.prime as u128).product()
    }

    /// `|G|`, or `None` if it overflows `u128`.
    pub fn order_of_group(&self) -> Option<u128> {
        self.modules.iter().try_fold(self.k_order(), |acc, m| {
            (0..m.dim).try_fold(acc, |a, _| a.checked_mul(m.prime as u128))
        })
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            k: vec![0; self.k_factors.len()],
            j: self.modules.iter().map(|m| vec![0; m.dim]).collect(),
        }
    }

    /// Element number `index` in mixed-radix order (`K` coordinates first).
    pub fn element_from_index(&self, mut index: u128) -> GroupElement {
        let mut digit = |p: u64| {
            let d = (index % p as u128) as u64;
            index /= p as u128;
            d
        };
        let k = self.k_factors.iter().map(|f| digit(f.prime)).collect();
        let j = self
            .modules
            .iter()
            .map(|m| (0..m.dim).map(|_| digit(m.prime)).collect())
            .collect();
        GroupElement { k, j }
    }

    pub fn check_element(&self, x: &GroupElement) -> Result<()> {
        let k_ok = x.k.len() == self.k_factors.len()
            && x.k.iter().zip(&self.k_factors).all(|(&e, f)| e < f.prime);
        let j_ok = x.j.len() == self.modules.len()
            && x.j.iter().zip(&self.modules).all(|(v, m)| {
                v.len() == m.dim && v.iter().all(|&c| c < m.prime)
            });
        if k_ok && j_ok {
            Ok(())
        } else {
            Err(shape("element does not match the model"))
        }
    }

    /// Multiplier `∏_t e_{tq}^{k_t}` by which the `T` part of `k` acts on factor `q`.
    fn conj_factor(&self, k: &[u64], q: usize) -> u64 {
        let p = self.k_factors[q].prime;
        (0..k.len())
            .filter(|&t| self.exps[t][q] != 1 && k[t] != 0)
            .fold(1u64, |acc, t| acc * mod_pow(self.exps[t][q], k[t], p) % p)
    }

    fn k_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.k_factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let p = f.prime;
                match f.role {
                    Role::D => (a[i] + self.conj_factor(a, i) * b[i]) % p,
                    _ => (a[i] + b[i]) % p,
                }
            })
            .collect()
    }

    fn k_inverse(&self, k: &[u64]) -> Vec<u64> {
        let neg = |v: Vec<u64>| -> Vec<u64> {
            v.iter().zip(&self.k_factors).map(|(&e, f)| (f.prime - e) % f.prime).collect()
        };
        let t_only: Vec<u64> = k
            .iter()
            .zip(&self.k_factors)
            .map(|(&e, f)| if f.role == Role::O { e } else { 0 })
            .collect();
        let u_only: Vec<u64> = k
            .iter()
            .zip(&self.k_factors)
            .map(|(&e, f)| if f.role == Role::D { e } else { 0 })
            .collect();
        // (u t)⁻¹ = t⁻¹ u⁻¹
        self.k_mul(&neg(t_only), &neg(u_only))
    }

    /// Matrix of `k = u·t` on each module: `∏_U M^u · ∏_T M^t`.
    pub fn rho(&self, k: &[u64]) -> Vec<FpMatrix> {
        let order: Vec<usize> = (0..k.len())
            .filter(|&i| self.k_factors[i].role == Role::D)
            .chain((0..k.len()).filter(|&i| self.k_factors[i].role == Role::O))
            .collect();
        self.modules
            .iter()
            .map(|m| {
                order
                    .iter()
                    .filter(|&&i| k[i] != 0)
                    .fold(FpMatrix::identity(m.prime, m.dim), |acc, &i| {
                        acc.mul(&m.actions[i].pow(k[i]))
                    })
            })
            .collect()
    }

    /// `(j₁, k₁)(j₂, k₂) = (j₁ + k₁·j₂, k₁k₂)`.
    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    fn mul_unchecked(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let rho = self.rho(&x.k);
        let j = self
            .modules
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let moved = rho[i].apply(&y.j[i]);
                x.j[i].iter().zip(moved).map(|(&a, b)| (a + b) % m.prime).collect()
            })
            .collect();
        GroupElement { k: self.k_mul(&x.k, &y.k), j }
    }

    /// `(j, k)⁻¹ = (−k⁻¹·j, k⁻¹)`.
    pub fn inverse(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check_element(x)?;
        let k = self.k_inverse(&x.k);
        let rho = self.rho(&k);
        let j = self
            .modules
            .iter()
            .enumerate()
            .map(|(i, m)| {
                rho[i].apply(&x.j[i]).iter().map(|&c| (m.prime - c) % m.prime).collect()
            })
            .collect();
        Ok(GroupElement { k, j })
    }

    pub fn pow(&self, x: &GroupElement, mut n: u128) -> Result<GroupElement> {
        self.check_element(x)?;
        let mut base = x.clone();
        let mut acc = self.identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_unchecked(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul_unchecked(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Element order from the structure: the order of the `K` part, times the module
    /// primes on which the corresponding power of `x` is nonzero.
    pub fn order(&self, x: &GroupElement) -> Result<u128> {
        self.check_element(x)?;
        let t_order: u128 = self
            .k_factors
            .iter()
            .zip(&x.k)
            .filter(|(f, &e)| f.role == Role::O && e != 0)
            .map(|(f, _)| f.prime as u128)
            .product();
        // A middle coordinate survives the t-order power exactly when t centralizes it.
        let n_k = (0..self.k_factors.len())
            .filter(|&q| {
                self.k_factors[q].role == Role::D && x.k[q] != 0 && self.conj_factor(&x.k, q) == 1
            })
            .fold(t_order, |acc, q| acc * self.k_factors[q].prime as u128);
        // The module part of x^n_k is the transfer sum Σ_{i<n_k} ρ(k)^i j.
        let rho = self.rho(&x.k);
        Ok(self
            .modules
            .iter()
            .zip(&rho)
            .zip(&x.j)
            .filter(|((_, r), v)| geometric_sum(r, n_k).apply(v).iter().any(|&c| c != 0))
            .fold(n_k, |acc, ((m, _), _)| acc * m.prime as u128))
    }

    /// Element order by repeated left multiplication with `x`.
    pub fn iterative_order(&self, x: &GroupElement) -> Result<u128> {
        self.check_element(x)?;
        let rho: Vec<Vec<u64>> = self.rho(&x.k).iter().map(|m| m.to_rows().concat()).collect();
        // Left multiplication by x sends k' to x.k + c·k' coordinatewise, c = 1 on T.
        let conj: Vec<u64> = (0..x.k.len())
            .map(|q| match self.k_factors[q].role {
                Role::D => self.conj_factor(&x.k, q),
                _ => 1,
            })
            .collect();
        let mut k = x.k.clone();
        let mut j = x.j.clone();
        let mut scratch: Vec<Vec<u64>> = j.clone();
        let mut n = 1u128;
        while k.iter().any(|&e| e != 0) || j.iter().flatten().any(|&c| c != 0) {
            for (i, f) in self.k_factors.iter().enumerate() {
                k[i] = (x.k[i] + conj[i] * k[i]) % f.prime;
            }
            for (idx, m) in self.modules.iter().enumerate() {
                let (p, d) = (m.prime, m.dim);
                for r in 0..d {
                    let row = &rho[idx][r * d..(r + 1) * d];
                    let moved = row.iter().zip(&j[idx]).fold(0u64, |acc, (&a, &c)| (acc + a * c) % p);
                    scratch[idx][r] = (x.j[idx][r] + moved) % p;
                }
            }
            std::mem::swap(&mut j, &mut scratch);
            n += 1;
        }
        Ok(n)
    }

    /// Whether some nontrivial power of factor `s` fixes a nonzero vector of module `j`.
    pub fn factor_fixes_vectors(&self, s: usize, j: usize) -> bool {
        let m = &self.modules[j].actions[s];
        (1..self.k_factors[s].prime).any(|a| m.pow(a).fixed_dim() > 0)
    }

    /// Whether factors `a` and `b` of `K` generate a cyclic group of order `p_a p_b`.
    fn k_adjacent(&self, a: usize, b: usize) -> bool {
        self.exps[a][b] == 1 && self.exps[b][a] == 1
    }

    /// Prime graph from the structural rules, on vertices labeled by the primes.
    pub fn compute_prime_graph(&self) -> LabeledGraph {
        let nk = self.k_factors.len();
        let labels = self.prime_labels();
        let mut g = LabeledGraph::new(labels).expect("distinct primes");
        for a in 0..nk {
            for b in a + 1..nk {
                if self.k_adjacent(a, b) {
                    g.add_edge(a, b).expect("fresh edge");
                }
            }
        }
        for j in 0..self.modules.len() {
            for s in 0..nk {
                if self.factor_fixes_vectors(s, j) {
                    g.add_edge(s, nk + j).expect("fresh edge");
                }
            }
            for i in 0..j {
                g.add_edge(nk + i, nk + j).expect("fresh edge");
            }
        }
        g
    }

    /// Orients every non-edge of the prime graph from the acting prime to the acted-on one.
    pub fn compute_frobenius_digraph(&self) -> Result<Orientation> {
        let g = self.compute_prime_graph();
        let nk = self.k_factors.len();
        let mut o = Orientation::new(self.prime_labels())?;
        for (a, b) in g.complement().edges() {
            let (from, to) = if b >= nk {
                // Module vertices are always adjacent to each other.
                (a, b)
            } else if self.exps[a][b] != 1 {
                (a, b)
            } else if self.exps[b][a] != 1 {
                (b, a)
            } else {
                return Err(Error::NotPlanShaped(format!(
                    "non-edge {}-{} has no acting factor",
                    g.label(a),
                    g.label(b)
                )));
            };
            o.add_arc(from, to)?;
        }
        Ok(o)
    }

    /// Largest number of distinct primes dividing one element order, by a search over
    /// commuting sets of `K` generators and the modules their product fixes vectors in.
    pub fn sigma(&self) -> Result<usize> {
        let total = self.k_factors.len() + self.modules.len();
        if total > MAX_SIGMA_PRIMES {
            return Err(Error::TooManyPrimes(total, MAX_SIGMA_PRIMES));
        }
        let nk = self.k_factors.len();
        let mut best = 0;
        for mask in 0u32..1 << nk {
            let chosen: Vec<usize> = (0..nk).filter(|i| mask >> i & 1 == 1).collect();
            let commuting = chosen
                .iter()
                .enumerate()
                .all(|(x, &a)| chosen[x + 1..].iter().all(|&b| self.k_adjacent(a, b)));
            if !commuting {
                continue;
            }
            let k: Vec<u64> = (0..nk).map(|i| u64::from(mask >> i & 1)).collect();
            let fixed = self.rho(&k).iter().filter(|m| m.fixed_dim() > 0).count();
            best = best.max(chosen.len() + fixed);
        }
        Ok(best)
    }

    /// Computes every element order by repeated multiplication and collects which
    /// prime sets occur together.
    pub fn brute_force(&self, cap: u64) -> Result<BruteForceScan> {
        let size = self
            .order_of_group()
            .filter(|&s| s <= cap as u128)
            .ok_or_else(|| Error::EnumerationCap {
                order: self.order_of_group().map_or("overflow".into(), |s| s.to_string()),
                cap,
            })?;
        let k_size = self.k_order() as u64;
        let j_size = (size / self.k_order()) as u64;
        let offsets: Vec<usize> = self
            .modules
            .iter()
            .scan(0usize, |acc, m| {
                let start = *acc;
                *acc += m.dim;
                Some(start)
            })
            .collect();
        let dims: usize = self.modules.iter().map(|m| m.dim).sum();
        let radix: Vec<u64> = self
            .modules
            .iter()
            .flat_map(|m| std::iter::repeat_n(m.prime, m.dim))
            .collect();
        let primes = self.primes();
        let nk = self.k_factors.len();
        let masks: BTreeSet<u64> = (0..k_size)
            .into_par_iter()
            .map(|ki| {
                let k = self.element_from_index(ki as u128).k;
                let rho = self.rho(&k);
                let dense: Vec<(u64, usize, Vec<u64>)> = self
                    .modules
                    .iter()
                    .zip(&rho)
                    .map(|(m, r)| (m.prime, m.dim, r.to_rows().concat()))
                    .collect();
                let mut k_cur = k.clone();
                let mut k_order = 1u64;
                while k_cur.iter().any(|&e| e != 0) {
                    k_cur = self.k_mul(&k, &k_cur);
                    k_order += 1;
                }
                let k_mask = (0..nk)
                    .filter(|&i| k_order.is_multiple_of(primes[i]))
                    .fold(0u64, |acc, i| acc | 1 << i);
                let mut local = BTreeSet::new();
                let mut j = vec![0u64; dims];
                let mut cur = vec![0u64; dims];
                let mut next = vec![0u64; dims];
                // One-dimensional modules step through a lookup table c -> j + a c.
                let mut tables: Vec<Vec<u64>> = dense
                    .iter()
                    .map(|&(p, d, _)| if d == 1 && p <= 1 << 16 { vec![0; p as usize] } else { vec![] })
                    .collect();
                for _ in 0..j_size {
                    for (idx, (p, _, mat)) in dense.iter().enumerate() {
                        let (off, table) = (offsets[idx], &mut tables[idx]);
                        for (c, t) in table.iter_mut().enumerate() {
                            *t = (j[off] + mat[0] * c as u64) % p;
                        }
                    }
                    cur.copy_from_slice(&j);
                    let mut n = 1u64;
                    let mut until_k_identity = k_order - 1;
                    loop {
                        if until_k_identity == 0 {
                            if cur.iter().all(|&c| c == 0) {
                                break;
                            }
                            until_k_identity = k_order;
                        }
                        for (idx, (p, d, mat)) in dense.iter().enumerate() {
                            let off = offsets[idx];
                            if !tables[idx].is_empty() {
                                next[off] = tables[idx][cur[off] as usize];
                                continue;
                            }
                            let src = &cur[off..off + d];
                            for r in 0..*d {
                                let row = &mat[r * d..(r + 1) * d];
                                let moved =
                                    row.iter().zip(src).fold(0u64, |acc, (&a, &c)| (acc + a * c) % p);
                                next[off + r] = (j[off + r] + moved) % p;
                            }
                        }
                        std::mem::swap(&mut cur, &mut next);
                        n += 1;
                        until_k_identity -= 1;
                    }
                    let mask = (nk..primes.len())
                        .filter(|&i| n.is_multiple_of(primes[i]))
                        .fold(k_mask, |acc, i| acc | 1 << i);
                    local.insert(mask);
                    for (c, &p) in j.iter_mut().zip(&radix) {
                        *c += 1;
                        if *c < p {
                            break;
                        }
                        *c = 0;
                    }
                }
                local
            })
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        let mut graph = LabeledGraph::new(self.prime_labels()).expect("distinct primes");
        for &mask in &masks {
            for a in 0..primes.len() {
                for b in a + 1..primes.len() {
                    if mask >> a & 1 == 1 && mask >> b & 1 == 1 && !graph.has_edge(a, b) {
                        graph.add_edge(a, b).expect("fresh edge");
                    }
                }
            }
        }
        let sigma = masks.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0);
        Ok(BruteForceScan {
            graph,
            sigma,
            elements: size,
        })
    }

    pub fn brute_force_prime_graph(&self, cap: u64) -> Result<LabeledGraph> {
        Ok(self.brute_force(cap)?.graph)
    }
}

/// `I + m + … + m^(n-1)`.
fn geometric_sum(m: &FpMatrix, n: u128) -> FpMatrix {
    let id = FpMatrix::identity(m.modulus(), m.rows());
    // (m^k, Σ_{i<k} m^i) for k built from the bits of n, most significant first.
    let mut power = id.clone();
    let mut sum = FpMatrix::zero(m.modulus(), m.rows(), m.cols());
    for bit in (0..128 - n.leading_zeros()).rev() {
        sum = sum.add(&power.mul(&sum));
        power = power.mul(&power);
        if n >> bit & 1 == 1 {
            sum = id.add(&m.mul(&sum));
            power = power.mul(m);
        }
    }
    sum
}

/// Result of an exhaustive scan over all elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceScan {
    pub graph: LabeledGraph,
    pub sigma: usize,
    pub elements: u128,
}

fn edge_labels(g: &LabeledGraph) -> BTreeSet<(String, String)> {
    g.edges()
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (g.label(a).to_string(), g.label(b).to_string());
            if x <= y { (x, y) } else { (y, x) }
        })
        .collect()
}

fn label_set(labels: &[String]) -> BTreeSet<&str> {
    labels.iter().map(String::as_str).collect()
}

/// Equality of graphs as labeled objects, ignoring vertex order.
pub fn same_labeled_graph(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    label_set(a.labels()) == label_set(b.labels()) && edge_labels(a) == edge_labels(b)
}

/// Equality of orientations as labeled objects, ignoring vertex order.
pub fn same_labeled_orientation(a: &Orientation, b: &Orientation) -> bool {
    let arcs = |o: &Orientation| -> BTreeSet<(String, String)> {
        o.arcs()
            .into_iter()
            .map(|(x, y)| (o.label(x).to_string(), o.label(y).to_string()))
            .collect()
    };
    label_set(a.labels()) == label_set(b.labels()) && arcs(a) == arcs(b)
}

/// Comparison of a plan's target with what its model actually produces.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub expected_graph: LabeledGraph,
    pub computed_graph: LabeledGraph,
    pub expected_digraph: Orientation,
    pub computed_digraph: Orientation,
    /// Exhaustive scan agreement, when requested and within the cap.
    pub brute_force: Option<bool>,
}

impl RoundTrip {
    pub fn graph_matches(&self) -> bool {
        same_labeled_graph(&self.expected_graph, &self.computed_graph)
    }

    pub fn digraph_matches(&self) -> bool {
        same_labeled_orientation(&self.expected_digraph, &self.computed_digraph)
    }

    pub fn ok(&self) -> bool {
        self.graph_matches() && self.digraph_matches() && self.brute_force != Some(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": 1,
            "ok": self.ok(),
            "prime_graph_matches": self.graph_matches(),
            "digraph_matches": self.digraph_matches(),
            "brute_force_matches": self.brute_force,
            "expected_edges": edge_labels(&self.expected_graph),
            "computed_edges": edge_labels(&self.computed_graph),
        })
    }
}

/// Builds the model of `plan` and compares its prime graph and Frobenius digraph with
/// the plan's orientation relabeled by primes. With `brute_cap`, small models are also
/// scanned exhaustively.
pub fn verify_round_trip(plan: &GroupPlan, brute_cap: Option<u64>) -> Result<RoundTrip> {
    let model = GroupModel::from_plan(plan)?;
    let expected_digraph = plan.prime_orientation();
    let expected_graph = expected_digraph.underlying().complement();
    let computed_graph = model.compute_prime_graph();
    let computed_digraph = model.compute_frobenius_digraph()?;
    let brute_force = match brute_cap {
        Some(cap) => match model.brute_force(cap) {
            Ok(scan) => Some(same_labeled_graph(&scan.graph, &computed_graph)),
            Err(Error::EnumerationCap { .. }) => None,
            Err(e) => return Err(e),
        },
        None => None,
    };
    Ok(RoundTrip {
        expected_graph,
        computed_graph,
        expected_digraph,
        computed_digraph,
        brute_force,
    })
}
