//! Exponent equations `q1 n^x1 + ... + qk n^xk = 0` and their congruence
//! versions modulo `M`, bounded Bezout coefficients and the empirical
//! separation constant used by the 3-partition gadgets.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::nadic::{Base, NAdic};

/// Work caps for the exponential searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest exponent bound the level search will walk.
    pub max_exponent: u64,
    /// Node / state budget for any single search.
    pub max_states: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_exponent: 4096,
            max_states: 20_000_000,
        }
    }
}

/// `Σ q_i α^{x_i} = target`, or a congruence when `modulus > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpEquation {
    pub coeffs: Vec<BigInt>,
    pub base: i64,
    pub target: BigInt,
    pub modulus: BigInt,
}

impl ExpEquation {
    pub fn homogeneous(coeffs: Vec<BigInt>, base: i64) -> Self {
        ExpEquation {
            coeffs,
            base,
            target: BigInt::zero(),
            modulus: BigInt::zero(),
        }
    }

    /// Left-hand side at nonnegative exponents.
    pub fn evaluate(&self, x: &[u64]) -> BigInt {
        let b = BigInt::from(self.base);
        self.coeffs
            .iter()
            .zip(x)
            .map(|(q, &e)| q * num_traits::pow::pow(b.clone(), e as usize))
            .sum()
    }

    pub fn holds(&self, x: &[u64]) -> bool {
        let lhs = self.evaluate(x) - &self.target;
        if self.modulus.is_zero() {
            lhs.is_zero()
        } else {
            lhs.mod_floor(&self.modulus).is_zero()
        }
    }
}

/// `⌈log_b(m)⌉` for `m ≥ 1`, `b ≥ 2`.
fn ceil_log(b: u64, m: &BigInt) -> u64 {
    let b = BigInt::from(b);
    let mut p = BigInt::one();
    let mut e = 0;
    while &p < m {
        p *= &b;
        e += 1;
    }
    e
}

/// `Σ ⌈log_|α| (|q_i| + 1)⌉`, an integer upper bound for the exponents of
/// some solution of a solvable homogeneous equation.
pub fn semenov_bound(eq: &ExpEquation) -> Result<u64> {
    if eq.base.unsigned_abs() < 2 {
        return Err(Error::InvalidArgument(format!(
            "exponent bound needs |base| ≥ 2, got {}",
            eq.base
        )));
    }
    if !eq.target.is_zero() || !eq.modulus.is_zero() {
        return Err(Error::InvalidArgument(
            "exponent bound applies to homogeneous exact equations".into(),
        ));
    }
    let b = eq.base.unsigned_abs();
    Ok(eq
        .coeffs
        .iter()
        .map(|q| ceil_log(b, &(q.abs() + 1)))
        .sum())
}

/// Lexicographically smallest solution in `[0, semenov_bound]^k`.
pub fn solve_exact(eq: &ExpEquation, limits: &Limits) -> Result<Option<Vec<u64>>> {
    if !eq.target.is_zero() || !eq.modulus.is_zero() {
        return Err(Error::InvalidArgument(
            "solve_exact takes a homogeneous exact equation".into(),
        ));
    }
    let k = eq.coeffs.len();
    match eq.base {
        0 => return Err(Error::ZeroBase),
        1 => {
            let s: BigInt = eq.coeffs.iter().sum();
            return Ok(s.is_zero().then(|| vec![0; k]));
        }
        -1 => return signs_lexmin(&eq.coeffs, limits),
        _ => {}
    }
    let bound = semenov_bound(eq)?;
    if bound > limits.max_exponent {
        return Err(Error::CapExceeded {
            what: "exponent bound",
            cap: limits.max_exponent,
        });
    }
    let mut fixed: Vec<Option<u64>> = vec![None; k];
    let mut search = LevelSearch::new(&eq.coeffs, eq.base, bound, limits);
    if search.run(&fixed, false)?.is_none() {
        return Ok(None);
    }
    for i in 0..k {
        let mut chosen = None;
        for v in 0..=bound {
            fixed[i] = Some(v);
            if search.run(&fixed, false)?.is_some() {
                chosen = Some(v);
                break;
            }
        }
        fixed[i] = Some(chosen.ok_or_else(|| {
            Error::Internal("prefix search lost a feasible solution".into())
        })?);
    }
    Ok(Some(fixed.into_iter().map(|v| v.unwrap()).collect()))
}

/// Some nonnegative solution of `Σ q_i n^{x_i} = 0`, chosen deterministically
/// but not necessarily lexicographically first.
pub fn find_exact(coeffs: &[BigInt], n: i64, limits: &Limits) -> Result<Option<Vec<u64>>> {
    let k = coeffs.len();
    let live: Vec<usize> = (0..k).filter(|&i| !coeffs[i].is_zero()).collect();
    let mut out = vec![0u64; k];
    if live.is_empty() {
        return Ok(Some(out));
    }
    let q: Vec<BigInt> = live.iter().map(|&i| coeffs[i].clone()).collect();
    let sol = match n {
        0 => return Err(Error::ZeroBase),
        1 => {
            let s: BigInt = q.iter().sum();
            s.is_zero().then(|| vec![0; q.len()])
        }
        -1 => signs_lexmin(&q, limits)?,
        _ => {
            let g = q.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            let q: Vec<BigInt> = q.iter().map(|x| x / &g).collect();
            let pos = q.iter().filter(|x| x.is_positive()).count();
            if n > 0 && (pos == 1 || pos + 1 == q.len()) && q.len() > 1 {
                magnitude_search(&q, n, limits)?
            } else {
                let eq = ExpEquation::homogeneous(q.clone(), n);
                let bound = semenov_bound(&eq)?;
                if bound > limits.max_exponent {
                    return Err(Error::CapExceeded {
                        what: "exponent bound",
                        cap: limits.max_exponent,
                    });
                }
                let fixed = vec![None; q.len()];
                LevelSearch::new(&q, n, bound, limits).run(&fixed, true)?
            }
        }
    };
    Ok(sol.map(|x| {
        for (j, &i) in live.iter().enumerate() {
            out[i] = x[j];
        }
        out
    }))
}

/// `Σ q_i (-1)^{x_i} = 0` with `x_i ∈ {0,1}`, lexicographically first.
fn signs_lexmin(q: &[BigInt], limits: &Limits) -> Result<Option<Vec<u64>>> {
    let total: BigInt = q.iter().map(|x| x.abs()).sum();
    let span = total
        .to_u64()
        .filter(|t| t.saturating_mul(q.len() as u64 + 1) <= limits.max_states)
        .ok_or(Error::CapExceeded {
            what: "sign search",
            cap: limits.max_states,
        })? as i64;
    let k = q.len();
    let qi: Vec<i64> = q.iter().map(|x| x.to_i64().unwrap()).collect();
    let width = (2 * span + 1) as usize;
    // reach[i][s + span]: the suffix from i can produce s
    let mut reach = vec![vec![false; width]; k + 1];
    reach[k][span as usize] = true;
    for i in (0..k).rev() {
        for s in 0..width {
            if reach[i + 1][s] {
                for sign in [1i64, -1] {
                    let t = s as i64 + sign * qi[i];
                    if (0..width as i64).contains(&t) {
                        reach[i][t as usize] = true;
                    }
                }
            }
        }
    }
    if !reach[0][span as usize] {
        return Ok(None);
    }
    let mut need = 0i64;
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        for (x, sign) in [(0u64, 1i64), (1, -1)] {
            let rest = need - sign * qi[i];
            let idx = rest + span;
            if (0..width as i64).contains(&idx) && reach[i + 1][idx as usize] {
                out.push(x);
                need = rest;
                break;
            }
        }
    }
    Ok(Some(out))
}

/// Bottom-up search over exponent levels with an integer carry.
///
/// After levels `< e` the chosen terms sum to `carry · n^e`; at level `e` a
/// subset joins and the new carry must again be divisible by `n`.
struct LevelSearch<'a> {
    q: &'a [BigInt],
    n: BigInt,
    bound: u64,
    cap: u64,
    nodes: u64,
    dead: HashSet<(u64, u64, BigInt)>,
}

impl<'a> LevelSearch<'a> {
    fn new(q: &'a [BigInt], n: i64, bound: u64, limits: &Limits) -> Self {
        assert!(q.len() < 64, "too many terms for the level search");
        LevelSearch {
            q,
            n: BigInt::from(n),
            bound,
            cap: limits.max_states,
            nodes: 0,
            dead: HashSet::new(),
        }
    }

    fn run(&mut self, fixed: &[Option<u64>], shift_free: bool) -> Result<Option<Vec<u64>>> {
        self.dead.clear();
        let full = if self.q.is_empty() {
            0
        } else {
            u64::MAX >> (64 - self.q.len())
        };
        let mut x = vec![0u64; self.q.len()];
        let found = self.dfs(0, full, BigInt::zero(), fixed, shift_free, &mut x)?;
        Ok(found.then_some(x))
    }

    fn dfs(
        &mut self,
        e: u64,
        mask: u64,
        carry: BigInt,
        fixed: &[Option<u64>],
        shift_free: bool,
        x: &mut [u64],
    ) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::CapExceeded {
                what: "exponent search",
                cap: self.cap,
            });
        }
        let key = (e, mask, carry.clone());
        if self.dead.contains(&key) {
            return Ok(false);
        }
        let mut forced = 0u64;
        let mut free = 0u64;
        for i in 0..self.q.len() {
            if mask >> i & 1 == 1 {
                match fixed[i] {
                    Some(v) if v == e => forced |= 1 << i,
                    Some(_) => {}
                    None => free |= 1 << i,
                }
            }
        }
        // submasks of `free`, smallest first
        let mut subs = Vec::new();
        let mut s = free;
        loop {
            subs.push(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & free;
        }
        subs.reverse();
        for s in subs {
            let take = forced | s;
            if e == 0 && shift_free && take == 0 {
                continue;
            }
            let mut total = carry.clone();
            for i in 0..self.q.len() {
                if take >> i & 1 == 1 {
                    total += &self.q[i];
                }
            }
            let rest = mask & !take;
            if rest == 0 {
                if total.is_zero() {
                    for i in 0..self.q.len() {
                        if take >> i & 1 == 1 {
                            x[i] = e;
                        }
                    }
                    return Ok(true);
                }
                continue;
            }
            if e == self.bound {
                continue;
            }
            let (quot, r) = total.div_rem(&self.n);
            if !r.is_zero() {
                continue;
            }
            if self.dfs(e + 1, rest, quot, fixed, shift_free, x)? {
                for i in 0..self.q.len() {
                    if take >> i & 1 == 1 {
                        x[i] = e;
                    }
                }
                return Ok(true);
            }
        }
        self.dead.insert(key);
        Ok(false)
    }
}

/// Complete search for `n > 0` when exactly one coefficient has the odd sign:
/// that term is pinned at exponent 0 and the others are placed largest value
/// first, each within `[R/remaining, R]` of the remainder `R`.
fn magnitude_search(q: &[BigInt], n: i64, limits: &Limits) -> Result<Option<Vec<u64>>> {
    let pos = q.iter().filter(|x| x.is_positive()).count();
    let flip = pos == 1 && q.len() > 2;
    let q: Vec<BigInt> = if flip { q.iter().map(|x| -x).collect() } else { q.to_vec() };
    let lone = q.iter().position(|x| x.is_negative()).unwrap();
    let base = Base::new(n)?;
    // group equal coefficients so permutations are explored once
    let mut classes: Vec<(BigInt, Vec<usize>)> = Vec::new();
    for (i, c) in q.iter().enumerate() {
        if i == lone {
            continue;
        }
        match classes.iter_mut().find(|(v, _)| v == c) {
            Some((_, idx)) => idx.push(i),
            None => classes.push((c.clone(), vec![i])),
        }
    }
    classes.sort_by(|a, b| b.0.cmp(&a.0));
    let mut st = Magnitude {
        base,
        classes,
        left: Vec::new(),
        picks: Vec::new(),
        nodes: 0,
        cap: limits.max_states,
    };
    st.left = st.classes.iter().map(|(_, v)| v.len()).collect();
    let r = NAdic::from_int(-&q[lone]);
    let total: usize = st.left.iter().sum();
    if !st.go(r, total, None)? {
        return Ok(None);
    }
    let mut x = vec![0i64; q.len()];
    let mut cursor = vec![0usize; st.classes.len()];
    for (c, e) in &st.picks {
        let idx = st.classes[*c].1[cursor[*c]];
        cursor[*c] += 1;
        x[idx] = *e;
    }
    let lo = *x.iter().min().unwrap();
    Ok(Some(x.into_iter().map(|v| (v - lo) as u64).collect()))
}

struct Magnitude {
    base: Base,
    classes: Vec<(BigInt, Vec<usize>)>,
    left: Vec<usize>,
    picks: Vec<(usize, i64)>,
    nodes: u64,
    cap: u64,
}

impl Magnitude {
    /// Largest `x` with `q n^x ≤ r` (`q, r > 0`).
    fn max_exp(&self, q: &BigInt, r: &NAdic) -> i64 {
        let n = self.base.as_bigint();
        let num = r.num();
        let d = r.exp() as i64;
        // largest y with q n^y ≤ num, then x = y - d
        let y = if q <= num {
            let mut y = 0i64;
            let mut p = q * n;
            while &p <= num {
                p *= n;
                y += 1;
            }
            y
        } else {
            let mut z = 1i64;
            let mut p = num * n;
            while &p < q {
                p *= n;
                z += 1;
            }
            -z
        };
        y - d
    }

    fn go(&mut self, r: NAdic, remaining: usize, cap: Option<(NAdic, usize)>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::CapExceeded {
                what: "magnitude search",
                cap: self.cap,
            });
        }
        if remaining == 0 {
            return Ok(r.is_zero());
        }
        if !r.num().is_positive() {
            return Ok(false);
        }
        let rem = BigInt::from(remaining as u64);
        for c in 0..self.classes.len() {
            if self.left[c] == 0 {
                continue;
            }
            let qc = self.classes[c].0.clone();
            let hi = self.max_exp(&qc, &r);
            let mut e = hi;
            loop {
                let v = self.base.canonicalize(qc.clone(), -e);
                // value must stay ≥ R / remaining
                let scaled = self.base.mul_int(&v, &rem);
                if self.base.sub(&scaled, &r).num().is_negative() {
                    break;
                }
                let ordered = match &cap {
                    None => true,
                    Some((cv, cc)) => {
                        let diff = self.base.sub(cv, &v);
                        diff.num().is_positive() || (diff.is_zero() && c >= *cc)
                    }
                };
                if ordered {
                    self.left[c] -= 1;
                    self.picks.push((c, e));
                    let next = self.base.sub(&r, &v);
                    if self.go(next, remaining - 1, Some((v.clone(), c)))? {
                        return Ok(true);
                    }
                    self.picks.pop();
                    self.left[c] += 1;
                }
                e -= 1;
            }
        }
        Ok(false)
    }
}

/// Least `p ≥ 1` with `n^p ≡ 1 (mod m)`, searched up to `limit`.
pub fn multiplicative_order(n: i64, m: &BigInt, limit: u64) -> Option<u64> {
    let m = m.abs();
    if m.is_one() {
        return Some(1);
    }
    let nb = BigInt::from(n).mod_floor(&m);
    let mut p = nb.clone();
    for e in 1..=limit {
        if p.is_one() {
            return Some(e);
        }
        p = (&p * &nb).mod_floor(&m);
    }
    None
}

/// Lexicographically first `x ∈ [0,P)^k` with `Σ c_i n^{x_i} ≡ 0 (mod M)`.
pub fn solve_congruence(
    coeffs: &[BigInt],
    n: i64,
    m: &BigInt,
    period: u64,
    cap: u64,
) -> Result<Option<Vec<u64>>> {
    let k = coeffs.len();
    if !m.is_positive() || period == 0 {
        return Err(Error::InvalidArgument(
            "congruence needs M ≥ 1 and P ≥ 1".into(),
        ));
    }
    let pw = BigInt::from(n).modpow(&BigInt::from(period), m);
    if !m.is_one() && !pw.is_one() {
        return Err(Error::InvalidArgument(format!(
            "n^P ≢ 1 (mod M) for n = {n}, P = {period}"
        )));
    }
    if m.is_one() {
        return Ok(Some(vec![0; k]));
    }
    let dp_cost = m
        .to_u64()
        .and_then(|mm| mm.checked_mul(k as u64 + 1))
        .and_then(|v| v.checked_mul(period));
    if let (Some(cost), Some(mm)) = (dp_cost, m.to_u64()) {
        if cost <= cap {
            return Ok(congruence_dp(coeffs, n, mm, period));
        }
    }
    let enum_cost = (period as f64).powi(k as i32);
    if enum_cost <= cap as f64 {
        return Ok(congruence_enum(coeffs, n, m, period));
    }
    Err(Error::CapExceeded {
        what: "congruence search",
        cap,
    })
}

fn congruence_dp(coeffs: &[BigInt], n: i64, m: u64, period: u64) -> Option<Vec<u64>> {
    let k = coeffs.len();
    let mb = BigInt::from(m);
    let r: Vec<u64> = coeffs
        .iter()
        .map(|c| c.mod_floor(&mb).to_u64().unwrap())
        .collect();
    let nm = BigInt::from(n).mod_floor(&mb).to_u64().unwrap() as u128;
    let mut pw = Vec::with_capacity(period as usize);
    let mut p = 1u128 % m as u128;
    for _ in 0..period {
        pw.push(p as u64);
        p = p * nm % m as u128;
    }
    let mul = |a: u64, b: u64| (a as u128 * b as u128 % m as u128) as u64;
    let mut reach = vec![vec![false; m as usize]; k + 1];
    reach[k][0] = true;
    for i in (0..k).rev() {
        let (head, tail) = reach.split_at_mut(i + 1);
        let next = &tail[0];
        let cur = &mut head[i];
        let terms: HashSet<u64> = pw.iter().map(|&w| mul(r[i], w)).collect();
        for (s, &ok) in next.iter().enumerate() {
            if ok {
                for &t in &terms {
                    cur[((s as u64 + t) % m) as usize] = true;
                }
            }
        }
    }
    if !reach[0][0] {
        return None;
    }
    let mut need = 0u64;
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let x = (0..period as usize).find(|&x| {
            let rest = (need + m - mul(r[i], pw[x])) % m;
            reach[i + 1][rest as usize]
        })?;
        need = (need + m - mul(r[i], pw[x])) % m;
        out.push(x as u64);
    }
    Some(out)
}

fn congruence_enum(coeffs: &[BigInt], n: i64, m: &BigInt, period: u64) -> Option<Vec<u64>> {
    let k = coeffs.len();
    let nb = BigInt::from(n);
    let pw: Vec<BigInt> = (0..period)
        .map(|x| nb.modpow(&BigInt::from(x), m))
        .collect();
    let terms: Vec<Vec<BigInt>> = coeffs
        .iter()
        .map(|c| pw.iter().map(|w| (c * w).mod_floor(m)).collect())
        .collect();
    let mut x = vec![0u64; k];
    loop {
        let s: BigInt = (0..k).map(|i| &terms[i][x[i] as usize]).sum();
        if s.mod_floor(m).is_zero() {
            return Some(x);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            x[i] += 1;
            if x[i] < period {
                break;
            }
            x[i] = 0;
        }
    }
}

/// Bezout coefficients with `Σ s_i β_i = gcd` and `|s_i| < Σ |β_j|`.
pub fn bezout_bounded(betas: &[BigInt]) -> Result<(Vec<BigInt>, BigInt)> {
    let k = betas.len();
    let mut order: Vec<usize> = (0..k).filter(|&i| !betas[i].is_zero()).collect();
    if order.is_empty() {
        return Err(Error::InvalidArgument(
            "Bezout coefficients need a nonzero entry".into(),
        ));
    }
    order.sort_by(|&a, &b| betas[b].abs().cmp(&betas[a].abs()).then(a.cmp(&b)));
    let g = order.iter().fold(BigInt::zero(), |g, &i| g.gcd(&betas[i]));
    let b: Vec<BigInt> = order.iter().map(|&i| betas[i].abs() / &g).collect();
    // iterated extended gcd on the sorted, scaled values
    let mut s = vec![BigInt::one()];
    let mut acc = b[0].clone();
    for bi in &b[1..] {
        let e = acc.extended_gcd(bi);
        for v in s.iter_mut() {
            *v *= &e.x;
        }
        s.push(e.y);
        acc = e.gcd;
    }
    // |s_i| < b_{i-1} for i = k..2
    for i in (1..b.len()).rev() {
        let c = &s[i] / &b[i - 1];
        let adj = &c * &b[i];
        s[i - 1] += adj;
        let adj = &c * &b[i - 1];
        s[i] -= adj;
    }
    let mut out = vec![BigInt::zero(); k];
    for (j, &i) in order.iter().enumerate() {
        out[i] = if betas[i].is_negative() {
            -s[j].clone()
        } else {
            s[j].clone()
        };
    }
    Ok((out, g))
}

/// Number of multisets of `s` powers `n^x` with `x ∈ [0, hi]` summing to
/// `target`, counted up to `limit`.
fn count_power_sums(n: i64, target: &BigInt, s: usize, hi: u64, limit: u64) -> u64 {
    let nb = BigInt::from(n);
    let mut memo: HashMap<(u64, BigInt, usize), u64> = HashMap::new();
    fn go(
        e: u64,
        r: BigInt,
        left: usize,
        hi: u64,
        nb: &BigInt,
        limit: u64,
        memo: &mut HashMap<(u64, BigInt, usize), u64>,
    ) -> u64 {
        if left == 0 {
            return r.is_zero() as u64;
        }
        if e > hi {
            return 0;
        }
        let key = (e, r.clone(), left);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut total = 0u64;
        for m in 0..=left {
            let rest = &r - BigInt::from(m as u64);
            let (q, rem) = rest.div_rem(nb);
            if left == m {
                total += rest.is_zero() as u64;
            } else if rem.is_zero() {
                total += go(e + 1, q, left - m, hi, nb, limit, memo);
            }
            if total >= limit {
                total = limit;
                break;
            }
        }
        memo.insert(key, total);
        total
    }
    go(0, target.clone(), s, hi, &nb, limit, &mut memo)
}

/// Whether `Σ n^{p_i}` has the multiset `{p_i}` as its only representation
/// by `s = |p|` powers with exponents in `[min p - 2s, max p + 2s]`.
pub fn unique_power_sum(n: i64, exps: &[u64]) -> bool {
    let s = exps.len();
    if s == 0 {
        return true;
    }
    let pad = 2 * s as u64;
    let hi = exps.iter().max().unwrap() + 2 * pad;
    let nb = BigInt::from(n);
    let target: BigInt = exps
        .iter()
        .map(|&p| num_traits::pow::pow(nb.clone(), (p + pad) as usize))
        .sum();
    count_power_sums(n, &target, s, hi, 2) == 1
}

/// Patterns are checked exhaustively up to this many powers.
pub const SEPARATION_CHECK_LIMIT: usize = 6;

/// Least `c ≤ cap` for which every exponent pattern with `p_1 = 0` and gaps
/// in `{c, c+1}` has a unique power-sum representation, checked at scale
/// `min(s, SEPARATION_CHECK_LIMIT)`.
pub fn separation_constant(s: usize, alpha: i64, cap: u64) -> Result<u64> {
    if alpha.unsigned_abs() < 2 {
        return Err(Error::InvalidArgument(format!(
            "separation needs |alpha| ≥ 2, got {alpha}"
        )));
    }
    if s <= 1 {
        return Ok(1);
    }
    let s = s.min(SEPARATION_CHECK_LIMIT);
    'c: for c in 1..=cap {
        for pattern in 0u64..(1 << (s - 1)) {
            let mut p = vec![0u64];
            for i in 0..s - 1 {
                let gap = c + (pattern >> i & 1);
                p.push(p[i] + gap);
            }
            if !unique_power_sum(alpha, &p) {
                continue 'c;
            }
        }
        return Ok(c);
    }
    Err(Error::CapExceeded {
        what: "separation constant",
        cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn brute(q: &[i64], n: i64, bound: u64) -> Option<Vec<u64>> {
        let eq = ExpEquation::homogeneous(bi(q), n);
        let k = q.len();
        let mut x = vec![0u64; k];
        loop {
            if eq.holds(&x) {
                return Some(x);
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                x[i] += 1;
                if x[i] <= bound {
                    break;
                }
                x[i] = 0;
            }
        }
    }

    #[test]
    fn semenov_examples() {
        let b = semenov_bound(&ExpEquation::homogeneous(bi(&[1, 1, -4]), 2)).unwrap();
        assert!(b >= 4);
        assert_eq!(semenov_bound(&ExpEquation::homogeneous(bi(&[1]), 2)).unwrap(), 1);
        assert!(semenov_bound(&ExpEquation::homogeneous(bi(&[1, -1]), 3)).unwrap() >= 1);
        assert!(semenov_bound(&ExpEquation::homogeneous(bi(&[1]), -1)).is_err());
    }

    #[test]
    fn solve_exact_examples() {
        let l = Limits::default();
        let x = solve_exact(&ExpEquation::homogeneous(bi(&[1, 1, -4]), 2), &l).unwrap();
        assert_eq!(x, Some(vec![1, 1, 0]));
        assert_eq!(
            solve_exact(&ExpEquation::homogeneous(bi(&[1, 1, 1]), 2), &l).unwrap(),
            None
        );
        assert_eq!(
            solve_exact(&ExpEquation::homogeneous(bi(&[1, 1]), -1), &l).unwrap(),
            Some(vec![0, 1])
        );
    }

    #[test]
    fn solve_exact_matches_brute_force() {
        let l = Limits::default();
        let cases: &[(&[i64], i64)] = &[
            (&[1, 1, -4], 2),
            (&[3, -1, -2], 2),
            (&[1, -3], 3),
            (&[2, 1, -9, 3], 3),
            (&[1, 2, -3], -2),
            (&[5, -1, -1], -2),
            (&[1, -1, 4, -4], 2),
            (&[7, -3], 2),
        ];
        for (q, n) in cases {
            let eq = ExpEquation::homogeneous(bi(q), *n);
            let bound = semenov_bound(&eq).unwrap();
            let want = brute(q, *n, bound);
            assert_eq!(solve_exact(&eq, &l).unwrap(), want, "{q:?} base {n}");
            let any = find_exact(&bi(q), *n, &l).unwrap();
            assert_eq!(any.is_some(), want.is_some(), "{q:?} base {n}");
            if let Some(x) = any {
                assert!(eq.holds(&x));
            }
        }
    }

    #[test]
    fn magnitude_search_handles_big_coefficients() {
        let l = Limits::default();
        let big: BigInt = num_traits::pow::pow(BigInt::from(2), 200);
        let q: Vec<BigInt> = vec![big.clone(), &big * 3u32, -(&big * 7u32)];
        let x = find_exact(&q, 2, &l).unwrap().unwrap();
        assert!(ExpEquation::homogeneous(q, 2).holds(&x));
    }

    #[test]
    fn congruence_examples() {
        let x = solve_congruence(&bi(&[1, 1, 1]), 2, &BigInt::from(3), 2, 1 << 20).unwrap();
        assert_eq!(x, Some(vec![0, 0, 0]));
        let x = solve_congruence(&bi(&[1, 2, 4]), 2, &BigInt::from(7), 3, 1 << 20).unwrap();
        assert_eq!(x, Some(vec![0, 0, 0]));
        assert_eq!(
            solve_congruence(&bi(&[1]), 2, &BigInt::from(3), 2, 1 << 20).unwrap(),
            None
        );
        assert!(solve_congruence(&bi(&[1]), 2, &BigInt::from(7), 2, 1 << 20).is_err());
    }

    #[test]
    fn congruence_dp_agrees_with_enumeration() {
        for m in [3u64, 5, 7, 9, 15, 31, 63] {
            for n in [2i64, -2, 4] {
                let Some(p) = multiplicative_order(n, &BigInt::from(m), 100) else {
                    continue;
                };
                for c in [[1i64, 2, 3], [1, 1, 1], [3, 0, 5], [1, 6, 6]] {
                    let c = bi(&c);
                    let dp = congruence_dp(&c, n, m, p);
                    let en = congruence_enum(&c, n, &BigInt::from(m), p);
                    assert_eq!(dp, en, "m {m} n {n} {c:?}");
                }
            }
        }
    }

    #[test]
    fn bezout_examples() {
        let (s, g) = bezout_bounded(&bi(&[6, 10, 15])).unwrap();
        assert_eq!(g, BigInt::from(1));
        assert_eq!(&s[0] * 6 + &s[1] * 10 + &s[2] * 15, BigInt::from(1));
        assert!(s.iter().all(|v| v.abs() < BigInt::from(31)));
        assert_eq!(bezout_bounded(&bi(&[5])).unwrap(), (bi(&[1]), BigInt::from(5)));
        let (s, g) = bezout_bounded(&bi(&[4, 6])).unwrap();
        assert_eq!((s, g), (bi(&[-1, 1]), BigInt::from(2)));
        assert!(bezout_bounded(&bi(&[0, 0])).is_err());
    }

    #[test]
    fn separation_examples() {
        assert!(separation_constant(2, 2, 4).unwrap() <= 4);
        assert_eq!(separation_constant(1, 2, 4).unwrap(), 1);
        assert!(separation_constant(3, -2, 8).is_ok());
        assert!(unique_power_sum(2, &[0, 1, 2]));
        assert!(!unique_power_sum(-2, &[1, 2]));
    }
}
