//! Exhaustive ground truth for small equations: every cyclically reduced
//! quadratic word up to a length, and a brute-force search over short
//! assignments in fixed-denominator `i128` arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::eqnorm::{Kind, StandardForm};
use crate::expsolve::{multiplicative_order, semenov_bound, ExpEquation};
use crate::group::Group;

/// Letters `a A t T` are 0..4; variables carry an id and a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tok {
    L(u8),
    V(u8, bool),
}

fn inverse_letter(l: u8) -> u8 {
    l ^ 1
}

fn cancels(x: Tok, y: Tok) -> bool {
    match (x, y) {
        (Tok::L(a), Tok::L(b)) => inverse_letter(a) == b,
        (Tok::V(i, s), Tok::V(j, t)) => i == j && s != t,
        _ => false,
    }
}

/// Rename variables by first appearance, first occurrence positive.
fn normalize(seq: &[Tok]) -> Vec<Tok> {
    let mut map: Vec<Option<(u8, bool)>> = vec![None; 8];
    let mut next = 0u8;
    seq.iter()
        .map(|&t| match t {
            Tok::L(_) => t,
            Tok::V(i, inv) => {
                let (id, flip) = *map[i as usize].get_or_insert_with(|| {
                    next += 1;
                    (next - 1, inv)
                });
                Tok::V(id, inv != flip)
            }
        })
        .collect()
}

fn invert(seq: &[Tok]) -> Vec<Tok> {
    seq.iter()
        .rev()
        .map(|&t| match t {
            Tok::L(l) => Tok::L(inverse_letter(l)),
            Tok::V(i, s) => Tok::V(i, !s),
        })
        .collect()
}

/// Least representative under rotation, inversion and renaming.
fn canonical(seq: &[Tok]) -> Vec<Tok> {
    let mut best = normalize(seq);
    for base in [seq.to_vec(), invert(seq)] {
        for r in 0..base.len() {
            let mut rot = base.clone();
            rot.rotate_left(r);
            let c = normalize(&rot);
            if c < best {
                best = c;
            }
        }
    }
    best
}

/// Cyclically reduced quadratic words of length `1..=max_len`, one per class.
pub fn enumerate_equations(max_len: usize) -> Vec<Vec<Tok>> {
    fn go(seq: &mut Vec<Tok>, open: &mut Vec<u8>, vars: u8, max_len: usize, out: &mut Vec<Vec<Tok>>) {
        if open.is_empty()
            && !seq.is_empty()
            && !cancels(*seq.last().unwrap(), seq[0])
            && canonical(seq) == *seq
        {
            out.push(seq.clone());
        }
        // every open variable still needs a slot to close
        let room = max_len - seq.len();
        let mut cands: Vec<Tok> = Vec::new();
        if room > open.len() {
            cands.extend((0..4).map(Tok::L));
        }
        if room > open.len() + 1 {
            cands.push(Tok::V(vars, false));
        }
        for &v in open.iter() {
            cands.push(Tok::V(v, false));
            cands.push(Tok::V(v, true));
        }
        for t in cands {
            if seq.last().is_some_and(|&p| cancels(p, t)) {
                continue;
            }
            seq.push(t);
            match t {
                Tok::V(v, _) if v == vars => {
                    open.push(v);
                    go(seq, open, vars + 1, max_len, out);
                    open.pop();
                }
                Tok::V(v, _) => {
                    let at = open.iter().position(|&o| o == v).unwrap();
                    open.remove(at);
                    go(seq, open, vars, max_len, out);
                    open.insert(at, v);
                }
                Tok::L(_) => go(seq, open, vars, max_len, out),
            }
            seq.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut Vec::new(), 0, max_len, &mut out);
    out
}

pub fn render(seq: &[Tok]) -> String {
    seq.iter()
        .map(|t| match t {
            Tok::L(l) => ["a", "A", "t", "T"][*l as usize].to_string(),
            Tok::V(i, false) => format!("x{}", i + 1),
            Tok::V(i, true) => format!("X{}", i + 1),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Elements `(A / n^D, b)` with a fixed denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Fx {
    a: i128,
    b: i32,
}

/// Brute-force solver over assignments of total word length `≤ budget`.
pub struct Brute {
    n: i128,
    d: i32,
    pow: Vec<i128>,
    /// (length, value, inverse value, letters)
    words: Vec<(usize, Fx, Fx, Vec<u8>)>,
    budget: usize,
}

impl Brute {
    /// Exact for equations of length `eq_len` with `budget` letters of assignment.
    pub fn new(n: i64, budget: usize, eq_len: usize) -> Self {
        let d = (eq_len + 2 * budget) as i32;
        let n128 = n as i128;
        let pow: Vec<i128> = (0..=(2 * d + budget as i32 + 2))
            .map(|k| n128.checked_pow(k as u32).expect("denominator overflow"))
            .collect();
        let mut me = Brute {
            n: n128,
            d,
            pow,
            words: Vec::new(),
            budget,
        };
        let mut layer: Vec<Vec<u8>> = vec![vec![]];
        let mut all = vec![vec![]];
        for _ in 0..budget {
            let mut next = Vec::new();
            for w in &layer {
                for l in 0..4u8 {
                    if w.last().is_some_and(|&p| inverse_letter(p) == l) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        me.words = all
            .into_iter()
            .map(|w| {
                let mut g = Fx { a: 0, b: 0 };
                for &l in &w {
                    g = me.mul_letter(g, l);
                }
                let inv: Vec<u8> = w.iter().rev().map(|&l| inverse_letter(l)).collect();
                let mut h = Fx { a: 0, b: 0 };
                for &l in &inv {
                    h = me.mul_letter(h, l);
                }
                (w.len(), g, h, w)
            })
            .collect();
        me
    }

    /// `n^k` for `k ≥ 0`, used as `n^{D - b}`.
    fn npow(&self, k: i32) -> i128 {
        self.pow[k as usize]
    }

    fn mul_letter(&self, g: Fx, l: u8) -> Fx {
        match l {
            0 => Fx { a: g.a + self.npow(self.d - g.b), b: g.b },
            1 => Fx { a: g.a - self.npow(self.d - g.b), b: g.b },
            2 => Fx { a: g.a, b: g.b + 1 },
            _ => Fx { a: g.a, b: g.b - 1 },
        }
    }

    /// `(v1, b1)(v2, b2) = (v1 + v2 n^{-b1}, b1 + b2)`.
    fn mul(&self, g: Fx, h: Fx) -> Fx {
        let a = if g.b <= 0 {
            h.a * self.npow(-g.b)
        } else {
            let p = self.npow(g.b);
            debug_assert_eq!(h.a % p, 0);
            h.a / p
        };
        Fx { a: g.a + a, b: g.b + h.b }
    }

    fn eval(&self, seq: &[Tok], pick: &[usize]) -> Fx {
        let mut g = Fx { a: 0, b: 0 };
        for t in seq {
            g = match *t {
                Tok::L(l) => self.mul_letter(g, l),
                Tok::V(i, inv) => {
                    let w = &self.words[pick[i as usize]];
                    self.mul(g, if inv { w.2 } else { w.1 })
                }
            };
        }
        g
    }

    /// Some assignment (as letter words) within the budget, if one exists.
    pub fn search(&self, seq: &[Tok]) -> Option<Vec<Vec<u8>>> {
        let nv = seq
            .iter()
            .filter_map(|t| match t {
                Tok::V(i, _) => Some(*i as usize + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        let mut pick = vec![0usize; nv];
        if self.go(seq, &mut pick, 0, self.budget) {
            Some(pick.iter().map(|&p| self.words[p].3.clone()).collect())
        } else {
            None
        }
    }

    fn go(&self, seq: &[Tok], pick: &mut [usize], i: usize, left: usize) -> bool {
        if i == pick.len() {
            let g = self.eval(seq, pick);
            return g.a == 0 && g.b == 0;
        }
        for (idx, w) in self.words.iter().enumerate() {
            if w.0 > left {
                break;
            }
            pick[i] = idx;
            if self.go(seq, pick, i + 1, left - w.0) {
                return true;
            }
        }
        false
    }

    pub fn base(&self) -> i128 {
        self.n
    }
}

/// Independent check that a spherical or genus-1 form has no solution:
/// brute force over exponents in `[0, Semenov]` or over residues mod `K`.
/// `None` when the form is of another shape or the search would be too big.
pub fn confirm_no(grp: &Group, sf: &StandardForm, cap: u64) -> Option<bool> {
    let genus1 = match (sf.kind, sf.genus) {
        (Kind::Spherical, _) => false,
        (Kind::Nonorientable, 1) => true,
        _ => return None,
    };
    let b = grp.base();
    let betas: Vec<i64> = sf.constants.iter().map(|c| c.beta).collect();
    let sigma: i64 = betas.iter().sum();
    if (!genus1 && sigma != 0) || (genus1 && sigma % 2 != 0) {
        return Some(true);
    }
    let mut m: Vec<BigInt> = betas
        .iter()
        .map(|&x| b.pow(x.unsigned_abs()) - 1)
        .collect();
    if genus1 {
        m.push(b.pow((sigma / 2).unsigned_abs()) + 1);
    }
    let k_mod = m.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let e = sf.constants.iter().map(|c| c.alpha.exp()).max().unwrap_or(0);
    let q: Vec<BigInt> = sf
        .constants
        .iter()
        .map(|c| b.to_integer(&c.alpha, e).unwrap())
        .collect();
    let n = grp.n();
    let (range, modulus) = if k_mod.is_zero() {
        let r = match n {
            1 => 1,
            -1 => 2,
            _ => semenov_bound(&ExpEquation::homogeneous(q.clone(), n)).ok()? + 1,
        };
        (r, None)
    } else {
        let km = b.coprime_part(&k_mod);
        let p = multiplicative_order(n, &km, 10_000)?;
        (p, Some(km))
    };
    let total = (range as f64).powi(q.len() as i32);
    if total > cap as f64 {
        return None;
    }
    let nb = BigInt::from(n);
    let mut x = vec![0u64; q.len()];
    loop {
        let s: BigInt = q
            .iter()
            .zip(&x)
            .map(|(c, &xi)| c * num_traits::pow::pow(nb.clone(), xi as usize))
            .sum();
        let hit = match &modulus {
            None => s.is_zero(),
            Some(km) => km.is_one() || s.mod_floor(km).is_zero(),
        };
        if hit {
            return Some(false);
        }
        let mut i = q.len();
        loop {
            if i == 0 {
                return Some(true);
            }
            i -= 1;
            x[i] += 1;
            if x[i] < range {
                break;
            }
            x[i] = 0;
        }
    }
}

/// Decision from exponent sums of the letters alone, for orientable genus
/// `≥ 1` and nonorientable genus `≥ 2` words.
pub fn parity_decision(n: i64, seq: &[Tok], orientable: bool) -> bool {
    let mut sa = 0i64;
    let mut st = 0i64;
    for t in seq {
        match t {
            Tok::L(0) => sa += 1,
            Tok::L(1) => sa -= 1,
            Tok::L(2) => st += 1,
            Tok::L(_) => st -= 1,
            _ => {}
        }
    }
    if orientable {
        let m = (n - 1).abs();
        st == 0 && if m == 0 { sa == 0 } else { sa % m == 0 }
    } else {
        st % 2 == 0 && (n % 2 == 0 || sa % 2 == 0)
    }
}
