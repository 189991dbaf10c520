//! Hardness gadgets built from 3-PARTITION and PARTITION instances, with
//! brute-force oracles for the underlying combinatorial problems.

use num_bigint::BigInt;

use crate::eqnorm::{parse_equation, EquationAst};
use crate::error::{Error, Result};
use crate::expsolve::{separation_constant, unique_power_sum};
use crate::nadic::Base;

/// Search cap for the separation constant.
pub const SEPARATION_CAP: u64 = 16;

/// `3k` positive integers with `L = Σ/k` and `L/4 < a_i < L/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePartInstance {
    items: Vec<u64>,
    k: u64,
    l: u64,
}

impl ThreePartInstance {
    pub fn new(items: Vec<u64>) -> Result<Self> {
        if items.is_empty() || !items.len().is_multiple_of(3) {
            return Err(Error::InvalidInstance(format!(
                "3-partition needs 3k items, got {}",
                items.len()
            )));
        }
        let k = items.len() as u64 / 3;
        let total: u64 = items.iter().sum();
        if !total.is_multiple_of(k) {
            return Err(Error::InvalidInstance(format!(
                "sum {total} is not divisible by k = {k}"
            )));
        }
        let l = total / k;
        if let Some(&bad) = items.iter().find(|&&a| !(4 * a > l && 2 * a < l)) {
            return Err(Error::InvalidInstance(format!(
                "item {bad} outside ({l}/4, {l}/2)"
            )));
        }
        Ok(ThreePartInstance { items, k, l })
    }

    pub fn items(&self) -> &[u64] {
        &self.items
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn target(&self) -> u64 {
        self.l
    }
}

/// Exhaustive search for a split into triples summing to `L`.
pub fn brute_3part(inst: &ThreePartInstance) -> bool {
    fn go(items: &[u64], used: &mut [bool], l: u64) -> bool {
        let Some(i) = used.iter().position(|u| !u) else {
            return true;
        };
        used[i] = true;
        for j in i + 1..items.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            for m in j + 1..items.len() {
                if !used[m] && items[i] + items[j] + items[m] == l {
                    used[m] = true;
                    if go(items, used, l) {
                        return true;
                    }
                    used[m] = false;
                }
            }
            used[j] = false;
        }
        used[i] = false;
        false
    }
    let mut used = vec![false; inst.items.len()];
    go(&inst.items, &mut used, inst.l)
}

/// Whether `s` splits into two halves of equal sum.
pub fn brute_partition(s: &[u64]) -> bool {
    let total: u64 = s.iter().sum();
    if !total.is_multiple_of(2) {
        return false;
    }
    let half = (total / 2) as usize;
    let mut reach = vec![false; half + 1];
    reach[0] = true;
    for &v in s {
        let v = v as usize;
        for t in (v..=half).rev() {
            reach[t] |= reach[t - v];
        }
    }
    reach[half]
}

/// All valid instances with `k ≤ max_k` and `L ≤ max_l`, items nondecreasing.
pub fn enumerate_3part(max_k: u64, max_l: u64) -> Vec<ThreePartInstance> {
    fn go(cur: &mut Vec<u64>, len: usize, lo: u64, hi: u64, total: u64, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            if cur.iter().sum::<u64>() == total {
                out.push(cur.clone());
            }
            return;
        }
        let used: u64 = cur.iter().sum();
        for v in lo..=hi {
            if used + v * (len - cur.len()) as u64 > total {
                break;
            }
            cur.push(v);
            go(cur, len, v, hi, total, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 1..=max_k {
        for l in 1..=max_l {
            // L/4 < a < L/2
            let lo = l / 4 + 1;
            let hi = (l - 1) / 2;
            if lo > hi {
                continue;
            }
            let mut raw = Vec::new();
            go(&mut Vec::new(), 3 * k as usize, lo, hi, k * l, &mut raw);
            out.extend(raw.into_iter().filter_map(|v| ThreePartInstance::new(v).ok()));
        }
    }
    out
}

/// All multisets of positive integers with total in `1..=max_total`.
pub fn enumerate_multisets(max_total: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, max_part: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max_part.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for t in 1..=max_total {
        go(t, t, &mut Vec::new(), &mut out);
    }
    out
}

/// Spacing `c` for `s = Lk` powers, certified on the gadget's right-hand side.
pub fn gadget_separation(inst: &ThreePartInstance, n: i64) -> Result<u64> {
    let s = (inst.k * inst.l) as usize;
    let mut c = separation_constant(s, n, SEPARATION_CAP)?;
    while c <= SEPARATION_CAP {
        if unique_power_sum(n, &rhs_exponents(inst, c)) {
            return Ok(c);
        }
        c += 1;
    }
    Err(Error::CapExceeded {
        what: "separation constant",
        cap: SEPARATION_CAP,
    })
}

/// Powers of `n` in `r n^{4ckL}`: `4ckL - c(2iL + j)` for `i < k`, `j < L`.
fn rhs_exponents(inst: &ThreePartInstance, c: u64) -> Vec<u64> {
    let (k, l) = (inst.k, inst.l);
    let top = 4 * c * k * l;
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..l {
            out.push(top - c * (2 * i * l + j));
        }
    }
    out
}

fn check_base(n: i64) -> Result<Base> {
    if n.unsigned_abs() < 2 {
        return Err(Error::InvalidArgument(format!(
            "gadget needs |n| ≥ 2, got {n}"
        )));
    }
    Base::new(n)
}

/// `∏ z_i^-1 a^{b_i} z_i = a^b` with `b_i = q_{a_i} n^{4ckL}`, `b = r n^{4ckL}`
/// and `q_y = Σ_{j<y} n^{-jc}`.
pub fn gen_spherical_from_3part(inst: &ThreePartInstance, n: i64) -> Result<EquationAst> {
    let base = check_base(n)?;
    let c = gadget_separation(inst, n)?;
    let (k, l) = (inst.k, inst.l);
    let top = 4 * c * k * l;
    let q = |y: u64| -> BigInt { (0..y).map(|j| base.pow(top - j * c)).sum() };
    let b: BigInt = (0..k)
        .flat_map(|i| (0..l).map(move |j| (i, j)))
        .map(|(i, j)| base.pow(top - c * (2 * i * l + j)))
        .sum();
    let mut parts = Vec::new();
    for (i, &a) in inst.items.iter().enumerate() {
        parts.push(format!("Z{} a^{} z{}", i + 1, q(a), i + 1));
    }
    parts.push(format!("a^{}", -b));
    parse_equation(&parts.join(" "))
}

/// `x^2 (y^-1 t^{2M} y) a^{-A*} ∏ z_i^-1 a^{A(a_i)} z_i` with
/// `A(s) = Σ_{i=1}^s n^{ikL}`, `A* = Σ_{i<k} n^{ikL(L+1)} A(L)`, `M = k²L(L+1)`.
pub fn gen_genus1_from_3part(inst: &ThreePartInstance, n: i64) -> Result<EquationAst> {
    let base = check_base(n)?;
    let (k, l) = (inst.k, inst.l);
    let big_a = |s: u64| -> BigInt { (1..=s).map(|i| base.pow(i * k * l)).sum() };
    let a_star: BigInt = (0..k).map(|i| base.pow(i * k * l * (l + 1)) * big_a(l)).sum();
    let m = k * k * l * (l + 1);
    let mut text = format!("x^2 Y t^{} y a^{}", 2 * m, -a_star);
    for (i, &a) in inst.items.iter().enumerate() {
        text.push_str(&format!(" Z{} a^{} z{}", i + 1, big_a(a), i + 1));
    }
    parse_equation(&text)
}

/// `∏ z_i^-1 a^{s_i} z_i`, read over BS(1,-1).
pub fn gen_spherical_from_part(s: &[u64]) -> Result<EquationAst> {
    if s.is_empty() || s.contains(&0) {
        return Err(Error::InvalidInstance(
            "partition needs a nonempty set of positive integers".into(),
        ));
    }
    let text: Vec<String> = s
        .iter()
        .enumerate()
        .map(|(i, v)| format!("Z{} a^{} z{}", i + 1, v, i + 1))
        .collect();
    parse_equation(&text.join(" "))
}

/// Exponents `u_i` with `z_i = t^{u_i}` solving the genus-1 gadget for a
/// positive instance, or `None` when no split exists.
pub fn genus1_witness(inst: &ThreePartInstance) -> Option<Vec<u64>> {
    let (k, l) = (inst.k, inst.l);
    let triples = split_triples(inst)?;
    let mut u = vec![0u64; inst.items.len()];
    for (i, t) in triples.iter().enumerate() {
        let i = i as u64;
        let mut off = i * (l + 1);
        for &idx in t {
            u[idx] = k * l * off;
            off += inst.items[idx];
        }
    }
    Some(u)
}

/// Index triples of a split into sums `L`.
pub fn split_triples(inst: &ThreePartInstance) -> Option<Vec<[usize; 3]>> {
    fn go(items: &[u64], used: &mut [bool], l: u64, acc: &mut Vec<[usize; 3]>) -> bool {
        let Some(i) = used.iter().position(|u| !u) else {
            return true;
        };
        used[i] = true;
        for j in i + 1..items.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            for m in j + 1..items.len() {
                if !used[m] && items[i] + items[j] + items[m] == l {
                    used[m] = true;
                    acc.push([i, j, m]);
                    if go(items, used, l, acc) {
                        return true;
                    }
                    acc.pop();
                    used[m] = false;
                }
            }
            used[j] = false;
        }
        used[i] = false;
        false
    }
    let mut used = vec![false; inst.items.len()];
    let mut acc = Vec::new();
    go(&inst.items, &mut used, inst.l, &mut acc).then_some(acc)
}

/// Recovered gadget exponents span at most `2ckL`.
pub fn exponent_span_ok(inst: &ThreePartInstance, c: u64, x: &[u64]) -> bool {
    let lo = x.iter().min().copied().unwrap_or(0);
    let hi = x.iter().max().copied().unwrap_or(0);
    hi - lo <= 2 * c * inst.k * inst.l
}
