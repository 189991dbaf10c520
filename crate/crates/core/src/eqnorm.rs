//! Parsing quadratic equations and reducing them to standard form.
//!
//! The normaliser keeps the equation as `B R`: `B` is a list of finished
//! blocks (`x^2`, `[x,y]`, `z^-1 c z`) with pairwise disjoint variables and
//! `R` is the unprocessed remainder. Every change is a single-variable move
//! `v := expr`, recorded so a standard-form solution can be replayed back to
//! the original variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::group::{Element, Group, Word};
use crate::syntax::{self, Raw};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Var { id: usize, inverse: bool },
    Const(Word),
}

impl Factor {
    fn var(id: usize) -> Factor {
        Factor::Var { id, inverse: false }
    }

    fn var_inv(id: usize) -> Factor {
        Factor::Var { id, inverse: true }
    }

    fn inverse(&self) -> Factor {
        match self {
            Factor::Var { id, inverse } => Factor::Var {
                id: *id,
                inverse: !inverse,
            },
            Factor::Const(w) => Factor::Const(w.inverse()),
        }
    }
}

fn invert(seq: &[Factor]) -> Vec<Factor> {
    seq.iter().rev().map(Factor::inverse).collect()
}

/// Free reduction in `F(vars) * F(a,t)`.
fn reduce(seq: Vec<Factor>) -> Vec<Factor> {
    let mut out: Vec<Factor> = Vec::with_capacity(seq.len());
    for f in seq {
        match (out.last_mut(), f) {
            (Some(Factor::Const(top)), Factor::Const(w)) => {
                top.append(&w);
                if top.is_empty() {
                    out.pop();
                }
            }
            (
                Some(Factor::Var { id: a, inverse: s }),
                Factor::Var {
                    id: b,
                    inverse: t,
                },
            ) if *a == b && *s != t => {
                out.pop();
            }
            (_, Factor::Const(w)) if w.is_empty() => {}
            (_, f) => out.push(f),
        }
    }
    out
}

fn render_factors(seq: &[Factor], names: &[String]) -> String {
    if seq.is_empty() {
        return "1".into();
    }
    seq.iter()
        .map(|f| match f {
            Factor::Var { id, inverse } => var_text(&names[*id], *inverse),
            Factor::Const(w) => w.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn var_text(name: &str, inverse: bool) -> String {
    if !inverse {
        return name.to_string();
    }
    let mut c = name.chars();
    match c.next() {
        Some(h) => h.to_ascii_uppercase().to_string() + c.as_str(),
        None => String::new(),
    }
}

/// A parsed equation `W = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationAst {
    pub factors: Vec<Factor>,
    pub vars: Vec<String>,
}

pub fn parse_equation(text: &str) -> Result<EquationAst> {
    let raw = syntax::parse(text)?;
    let mut vars: Vec<String> = Vec::new();
    let mut index: std::collections::HashMap<String, usize> = std::collections::HashMap::new();
    let mut factors = Vec::new();
    let mut pending = Word::new();
    for r in raw {
        match r {
            Raw::Var { name, inverse } => {
                if !pending.is_empty() {
                    factors.push(Factor::Const(std::mem::take(&mut pending)));
                }
                let id = *index.entry(name.clone()).or_insert_with(|| {
                    vars.push(name);
                    vars.len() - 1
                });
                factors.push(Factor::Var { id, inverse });
            }
            gen => pending.append(&Word::from_raw(&[gen])?),
        }
    }
    if !pending.is_empty() {
        factors.push(Factor::Const(pending));
    }
    Ok(EquationAst { factors, vars })
}

impl EquationAst {
    /// Letter count, with `a^K` counted as `|K|` letters.
    pub fn length(&self) -> BigUint {
        let mut n = BigUint::from(0u32);
        for f in &self.factors {
            match f {
                Factor::Var { .. } => n += 1u32,
                Factor::Const(w) => n += w.len(),
            }
        }
        n
    }

    /// Positive and negative occurrence counts per variable.
    pub fn occurrences(&self) -> Vec<(usize, usize)> {
        let mut occ = vec![(0, 0); self.vars.len()];
        for f in &self.factors {
            if let Factor::Var { id, inverse } = f {
                if *inverse {
                    occ[*id].1 += 1;
                } else {
                    occ[*id].0 += 1;
                }
            }
        }
        occ
    }

    /// All constant letters in order, ignoring variables.
    pub fn constant_word(&self) -> Word {
        let mut w = Word::new();
        for f in &self.factors {
            if let Factor::Const(c) = f {
                w.append(c);
            }
        }
        w
    }

    pub fn var_id(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

impl fmt::Display for EquationAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_factors(&self.factors, &self.vars))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub quadratic: bool,
    pub orientable: bool,
}

pub fn classify(ast: &EquationAst) -> Classification {
    let occ = ast.occurrences();
    Classification {
        quadratic: occ.iter().all(|(p, m)| p + m == 2),
        orientable: occ.iter().all(|(p, m)| *p == 1 && *m == 1),
    }
}

pub fn require_quadratic(ast: &EquationAst) -> Result<()> {
    for (i, (p, m)) in ast.occurrences().into_iter().enumerate() {
        if p + m != 2 {
            return Err(Error::NotQuadratic(format!(
                "variable `{}` occurs {} times",
                ast.vars[i],
                p + m
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// `W` freely trivial after reduction: no constants, no genus.
    Trivial,
    Spherical,
    Orientable,
    Nonorientable,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Trivial => "trivial",
            Kind::Spherical => "spherical",
            Kind::Orientable => "orientable",
            Kind::Nonorientable => "nonorientable",
        })
    }
}

/// `∏ x_i^2 ∏ z_j^-1 c_j z_j`, `∏ [x_i,y_i] ∏ z_j^-1 c_j z_j` or
/// `∏ z_j^-1 c_j z_j`. Variables are ids into [`Substitution::names`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub kind: Kind,
    pub genus: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    pub const_words: Vec<Word>,
    pub constants: Vec<Element>,
}

/// Values for the standard-form variables, index-aligned with `x`, `y`, `z`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SfSolution {
    pub x: Vec<Element>,
    pub y: Vec<Element>,
    pub z: Vec<Element>,
}

impl SfSolution {
    pub fn identity(sf: &StandardForm) -> Self {
        SfSolution {
            x: vec![Element::identity(); sf.x.len()],
            y: vec![Element::identity(); sf.y.len()],
            z: vec![Element::identity(); sf.z.len()],
        }
    }
}

impl StandardForm {
    pub fn k(&self) -> usize {
        self.constants.len()
    }

    /// Letter count of the form with constants written as stored words.
    pub fn length(&self) -> BigUint {
        let genus_letters = match self.kind {
            Kind::Orientable => 4 * self.genus,
            Kind::Nonorientable => 2 * self.genus,
            _ => 0,
        };
        let mut n = BigUint::from(genus_letters + 2 * self.k());
        for w in &self.const_words {
            n += w.len();
        }
        n
    }

    pub fn constant_product(&self, grp: &Group) -> Element {
        grp.product(&self.constants)
    }

    /// Value of the left-hand side under `sol`.
    pub fn evaluate(&self, grp: &Group, sol: &SfSolution) -> Element {
        let mut acc = Element::identity();
        match self.kind {
            Kind::Orientable => {
                for (x, y) in sol.x.iter().zip(&sol.y) {
                    acc = grp.mul(&acc, &grp.commutator(x, y));
                }
            }
            Kind::Nonorientable => {
                for x in &sol.x {
                    acc = grp.mul(&acc, &grp.mul(x, x));
                }
            }
            _ => {}
        }
        for (c, z) in self.constants.iter().zip(&sol.z) {
            acc = grp.mul(&acc, &grp.conj(c, z));
        }
        acc
    }

    pub fn render(&self, sub: &Substitution, grp: &Group) -> String {
        let name = |id: usize, inv: bool| var_text(&sub.names[id], inv);
        let mut parts = Vec::new();
        match self.kind {
            Kind::Orientable => {
                for (x, y) in self.x.iter().zip(&self.y) {
                    parts.push(format!("[{},{}]", name(*x, false), name(*y, false)));
                }
            }
            Kind::Nonorientable => {
                for x in &self.x {
                    parts.push(format!("{}^2", name(*x, false)));
                }
            }
            _ => {}
        }
        for (c, z) in self.constants.iter().zip(&self.z) {
            parts.push(format!(
                "{} {} {}",
                name(*z, true),
                grp.element_to_word(c),
                name(*z, false)
            ));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

/// One elementary move: the old value of `var` is `expr` in the new variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub var: usize,
    pub expr: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    /// Original variables first, then any fresh ones.
    pub names: Vec<String>,
    pub original: usize,
    pub moves: Vec<Move>,
}

impl Substitution {
    pub fn identity(ast: &EquationAst) -> Self {
        Substitution {
            names: ast.vars.clone(),
            original: ast.vars.len(),
            moves: Vec::new(),
        }
    }

    pub fn render_moves(&self) -> Vec<String> {
        self.moves
            .iter()
            .map(|m| format!("{} := {}", self.names[m.var], render_factors(&m.expr, &self.names)))
            .collect()
    }
}

/// Assignment of elements to variable names.
pub type Assignment = BTreeMap<String, Element>;

fn eval_factors(grp: &Group, seq: &[Factor], values: &[Element]) -> Element {
    let mut acc = Element::identity();
    for f in seq {
        let g = match f {
            Factor::Var { id, inverse: false } => values[*id].clone(),
            Factor::Var { id, inverse: true } => grp.inv(&values[*id]),
            Factor::Const(w) => grp.eval_word(w),
        };
        acc = grp.mul(&acc, &g);
    }
    acc
}

/// Replay the moves backwards to turn a standard-form solution into values
/// for the original variables; variables absent from the form get `1`.
pub fn pull_back(
    grp: &Group,
    sub: &Substitution,
    sf: &StandardForm,
    sol: &SfSolution,
) -> Result<Assignment> {
    let mut values = vec![Element::identity(); sub.names.len()];
    let pairs = sf
        .x
        .iter()
        .zip(&sol.x)
        .chain(sf.y.iter().zip(&sol.y))
        .chain(sf.z.iter().zip(&sol.z));
    for (id, v) in pairs {
        values[*id] = v.clone();
    }
    if sol.x.len() != sf.x.len() || sol.y.len() != sf.y.len() || sol.z.len() != sf.z.len() {
        return Err(Error::InvalidArgument(
            "solution shape does not match the standard form".into(),
        ));
    }
    for m in sub.moves.iter().rev() {
        values[m.var] = eval_factors(grp, &m.expr, &values);
    }
    Ok(sub.names[..sub.original]
        .iter()
        .cloned()
        .zip(values)
        .collect())
}

/// Substitute `assignment` into `ast` and evaluate.
pub fn evaluate(grp: &Group, ast: &EquationAst, assignment: &Assignment) -> Result<Element> {
    let mut values = Vec::with_capacity(ast.vars.len());
    for v in &ast.vars {
        values.push(
            assignment
                .get(v)
                .cloned()
                .ok_or_else(|| Error::MissingBinding(v.clone()))?,
        );
    }
    Ok(eval_factors(grp, &ast.factors, &values))
}

#[derive(Clone, Debug)]
enum Block {
    Square(usize),
    Comm(usize, usize),
    Conj(usize, Word),
}

impl Block {
    fn is_genus(&self) -> bool {
        !matches!(self, Block::Conj(..))
    }

    fn factors(&self) -> Vec<Factor> {
        match self {
            Block::Square(x) => vec![Factor::var(*x), Factor::var(*x)],
            Block::Comm(x, y) => vec![
                Factor::var_inv(*x),
                Factor::var_inv(*y),
                Factor::var(*x),
                Factor::var(*y),
            ],
            Block::Conj(z, c) => vec![
                Factor::var_inv(*z),
                Factor::Const(c.clone()),
                Factor::var(*z),
            ],
        }
    }
}

struct Normalizer {
    names: Vec<String>,
    moves: Vec<Move>,
    blocks: Vec<Block>,
    rest: Vec<Factor>,
}

impl Normalizer {
    fn substitute(&mut self, var: usize, expr: Vec<Factor>) {
        let inv = invert(&expr);
        if self
            .rest
            .iter()
            .any(|f| matches!(f, Factor::Var { id, .. } if *id == var))
        {
            let mut out = Vec::with_capacity(self.rest.len() + 2 * expr.len());
            for f in self.rest.drain(..) {
                match f {
                    Factor::Var { id, inverse } if id == var => {
                        out.extend(if inverse { inv.iter() } else { expr.iter() }.cloned())
                    }
                    other => out.push(other),
                }
            }
            self.rest = reduce(out);
        }
        self.moves.push(Move { var, expr });
    }

    fn rename_inverse(&mut self, var: usize) {
        self.substitute(var, vec![Factor::var_inv(var)]);
    }

    /// Substitute block variables so that `X` becomes `A^-1 X A`.
    fn conj_block_left(&mut self, idx: usize, a: &[Factor]) {
        if a.is_empty() {
            return;
        }
        let a_inv = invert(a);
        let vars: Vec<usize> = match &self.blocks[idx] {
            Block::Square(x) => vec![*x],
            Block::Comm(x, y) => vec![*x, *y],
            Block::Conj(z, _) => {
                let z = *z;
                let mut e = vec![Factor::var(z)];
                e.extend(a.iter().cloned());
                self.substitute(z, reduce(e));
                return;
            }
        };
        for v in vars {
            let mut e = a_inv.clone();
            e.push(Factor::var(v));
            e.extend(a.iter().cloned());
            self.substitute(v, reduce(e));
        }
    }

    /// Substitute block variables so that `X` becomes `A X A^-1`.
    fn conj_block_right(&mut self, idx: usize, a: &[Factor]) {
        self.conj_block_left(idx, &invert(a));
    }

    /// `B R1 R2` to `B R2 R1` where `R1 = rest[..k]`.
    fn rotate(&mut self, k: usize) {
        if k == 0 {
            return;
        }
        // B A R2 = A (A^-1 B A) R2, conjugate to B' R2 A with B = A B' A^-1
        let a: Vec<Factor> = self.rest[..k].to_vec();
        for i in 0..self.blocks.len() {
            self.conj_block_right(i, &a);
        }
        self.rest.rotate_left(k);
        self.rest = reduce(std::mem::take(&mut self.rest));
    }

    fn positions(&self) -> BTreeMap<usize, Vec<(usize, bool)>> {
        let mut pos: BTreeMap<usize, Vec<(usize, bool)>> = BTreeMap::new();
        for (i, f) in self.rest.iter().enumerate() {
            if let Factor::Var { id, inverse } = f {
                pos.entry(*id).or_default().push((i, *inverse));
            }
        }
        pos
    }

    fn step(&mut self) -> Result<bool> {
        let pos = self.positions();
        if pos.is_empty() {
            return Ok(false);
        }
        let bad = || Error::Internal("normalisation lost track of a variable pair".into());
        for p in pos.values() {
            if p.len() != 2 {
                return Err(bad());
            }
        }
        // same-sign pair with the widest gap
        let same = pos
            .iter()
            .filter(|(_, p)| p[0].1 == p[1].1)
            .max_by_key(|(_, p)| (p[1].0 - p[0].0, std::cmp::Reverse(p[0].0)));
        if let Some((&x, p)) = same {
            let (i, j) = (p[0].0, p[1].0);
            self.rotate(i);
            if p[0].1 {
                self.rename_inverse(x);
            }
            let j = j - i;
            let u = self.rest[1..j].to_vec();
            let mut e = vec![Factor::var(x)];
            e.extend(invert(&u));
            self.substitute(x, e);
            if self.rest.get(..2) != Some(&[Factor::var(x), Factor::var(x)][..]) {
                return Err(bad());
            }
            self.rest.drain(..2);
            self.blocks.push(Block::Square(x));
            return Ok(true);
        }
        // linked opposite pair x .. y .. x^-1 .. y^-1
        let linked = pos.iter().find_map(|(&x, p)| {
            let (i, j) = (p[0].0, p[1].0);
            pos.iter()
                .find(|(_, q)| (i < q[0].0 && q[0].0 < j) != (i < q[1].0 && q[1].0 < j))
                .map(|(&y, _)| (x, i, y))
        });
        if let Some((x, i, y)) = linked {
            self.rotate(i);
            if self.rest[0] != Factor::var(x) {
                self.rename_inverse(x);
            }
            let find = |rest: &[Factor], v: usize| -> Vec<usize> {
                rest.iter()
                    .enumerate()
                    .filter(|(_, f)| matches!(f, Factor::Var { id, .. } if *id == v))
                    .map(|(i, _)| i)
                    .collect()
            };
            let px = find(&self.rest, x)[1];
            let q = find(&self.rest, y);
            let (q0, q1) = if q[0] < px { (q[0], q[1]) } else { (q[1], q[0]) };
            if self.rest[q0] != Factor::var(y) {
                self.rename_inverse(y);
            }
            let b1 = self.rest[1..q0].to_vec();
            let b2 = self.rest[q0 + 1..px].to_vec();
            let c1 = self.rest[px + 1..q1].to_vec();
            let mut e = vec![Factor::var(x)];
            e.extend(invert(&b1));
            self.substitute(x, e);
            let mut d = b2;
            d.extend(b1);
            let mut e = vec![Factor::var(y)];
            e.extend(invert(&d));
            self.substitute(y, e);
            let mut big_e = c1;
            big_e.extend(d);
            let mut e = reduce(big_e);
            e.push(Factor::var(x));
            self.substitute(x, e);
            self.rename_inverse(x);
            self.rename_inverse(y);
            let target = Block::Comm(x, y).factors();
            let at = self
                .rest
                .windows(4)
                .position(|w| w == target.as_slice())
                .ok_or_else(bad)?;
            self.rotate(at);
            self.rest.drain(..4);
            self.blocks.push(Block::Comm(x, y));
            return Ok(true);
        }
        // innermost x^e c x^-e
        let (x, i) = pos
            .iter()
            .find_map(|(&x, p)| {
                let (i, j) = (p[0].0, p[1].0);
                (j == i + 2).then_some((x, i))
            })
            .ok_or_else(bad)?;
        self.rotate(i);
        if self.rest[0] == Factor::var(x) {
            self.rename_inverse(x);
        }
        let c = match &self.rest[1] {
            Factor::Const(c) => c.clone(),
            _ => return Err(bad()),
        };
        self.rest.drain(..3);
        self.blocks.push(Block::Conj(x, c));
        Ok(true)
    }

    fn run(&mut self) -> Result<()> {
        self.rest = reduce(std::mem::take(&mut self.rest));
        while self.step()? {}
        Ok(())
    }

    /// Move block `idx` out of `B` to the front of `R`.
    fn reopen(&mut self, idx: usize) {
        let after: Vec<Factor> = self.blocks[idx + 1..]
            .iter()
            .flat_map(Block::factors)
            .collect();
        self.conj_block_right(idx, &after);
        let b = self.blocks.remove(idx);
        let mut r = b.factors();
        r.append(&mut self.rest);
        self.rest = r;
    }

    fn fresh_name(&self) -> String {
        let taken = |s: &str| self.names.iter().any(|n| n == s);
        if !taken("z") {
            return "z".into();
        }
        (0..)
            .map(|i| format!("z{i}"))
            .find(|s| !taken(s))
            .unwrap()
    }
}

/// Normalise a quadratic equation.
pub fn to_standard_form(grp: &Group, ast: &EquationAst) -> Result<(StandardForm, Substitution)> {
    require_quadratic(ast)?;
    let mut nz = Normalizer {
        names: ast.vars.clone(),
        moves: Vec::new(),
        blocks: Vec::new(),
        rest: ast.factors.clone(),
    };
    nz.run()?;
    // x^2 [y,z] becomes three squares
    loop {
        let sq = nz.blocks.iter().position(|b| matches!(b, Block::Square(_)));
        let cm = nz.blocks.iter().position(|b| matches!(b, Block::Comm(..)));
        let (Some(_), Some(cm)) = (sq, cm) else { break };
        let Block::Comm(y, _) = nz.blocks[cm] else { unreachable!() };
        nz.reopen(cm);
        let sq = nz
            .blocks
            .iter()
            .position(|b| matches!(b, Block::Square(_)))
            .unwrap();
        let Block::Square(x) = nz.blocks[sq] else { unreachable!() };
        nz.reopen(sq);
        nz.substitute(x, vec![Factor::var(x), Factor::var(y)]);
        let before = nz.blocks.iter().filter(|b| matches!(b, Block::Comm(..))).count();
        nz.run()?;
        let after = nz.blocks.iter().filter(|b| matches!(b, Block::Comm(..))).count();
        if after > before {
            return Err(Error::Internal("square/commutator exchange made no progress".into()));
        }
    }
    // a leftover constant gets a fresh conjugator
    if let [Factor::Const(c)] = nz.rest.as_slice() {
        let c = c.clone();
        let z = nz.names.len();
        let name = nz.fresh_name();
        nz.names.push(name);
        for i in 0..nz.blocks.len() {
            nz.conj_block_right(i, &[Factor::var(z)]);
        }
        nz.rest.clear();
        nz.blocks.push(Block::Conj(z, c));
    } else if !nz.rest.is_empty() {
        return Err(Error::Internal("remainder still holds variables".into()));
    }
    // genus blocks before constant blocks
    while let Some(p) = nz.blocks.iter().position(|b| !b.is_genus()) {
        let Some(q) = (p..nz.blocks.len()).find(|&q| nz.blocks[q].is_genus()) else {
            break;
        };
        let a: Vec<Factor> = nz.blocks[p..q].iter().flat_map(Block::factors).collect();
        nz.conj_block_left(q, &a);
        let b = nz.blocks.remove(q);
        nz.blocks.insert(p, b);
    }
    let mut sf = StandardForm {
        kind: Kind::Trivial,
        genus: 0,
        x: Vec::new(),
        y: Vec::new(),
        z: Vec::new(),
        const_words: Vec::new(),
        constants: Vec::new(),
    };
    let mut squares = 0;
    let mut comms = 0;
    for b in &nz.blocks {
        match b {
            Block::Square(x) => {
                squares += 1;
                sf.x.push(*x);
            }
            Block::Comm(x, y) => {
                comms += 1;
                sf.x.push(*x);
                sf.y.push(*y);
            }
            Block::Conj(z, c) => {
                let value = grp.eval_word(c);
                if !value.is_identity() {
                    sf.z.push(*z);
                    sf.const_words.push(c.clone());
                    sf.constants.push(value);
                }
            }
        }
    }
    if squares > 0 && comms > 0 {
        return Err(Error::Internal("mixed genus blocks survived".into()));
    }
    (sf.kind, sf.genus) = if squares > 0 {
        (Kind::Nonorientable, squares)
    } else if comms > 0 {
        (Kind::Orientable, comms)
    } else if !sf.constants.is_empty() {
        (Kind::Spherical, 0)
    } else {
        (Kind::Trivial, 0)
    };
    let sub = Substitution {
        names: nz.names,
        original: ast.vars.len(),
        moves: nz.moves,
    };
    Ok((sf, sub))
}

/// Surface data read off the equation in linear time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Topology {
    pub orientable: bool,
    /// Euler characteristic after capping every boundary component.
    pub euler: i64,
    pub genus: usize,
}

/// Genus from the polygon with paired variable sides, without normalising.
///
/// Constant sides are contracted, which caps each boundary circle with a
/// disc, so `V - E + 1` is the Euler characteristic of the closed surface.
pub fn topology(ast: &EquationAst) -> Result<Topology> {
    require_quadratic(ast)?;
    let m = ast.factors.len();
    let orientable = classify(ast).orientable;
    if ast.vars.is_empty() {
        return Ok(Topology {
            orientable: true,
            euler: 2,
            genus: 0,
        });
    }
    let mut uf: UnionFind<usize> = UnionFind::new(m);
    let mut ends: Vec<Option<(usize, usize)>> = vec![None; ast.vars.len()];
    for (i, f) in ast.factors.iter().enumerate() {
        let next = (i + 1) % m;
        match f {
            Factor::Const(_) => {
                uf.union(i, next);
            }
            Factor::Var { id, inverse } => {
                let (tail, head) = if *inverse { (next, i) } else { (i, next) };
                match ends[*id] {
                    None => ends[*id] = Some((tail, head)),
                    Some((t0, h0)) => {
                        uf.union(t0, tail);
                        uf.union(h0, head);
                    }
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..m).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    let euler = roots.len() as i64 - ast.vars.len() as i64 + 1;
    let genus = if orientable { (2 - euler) / 2 } else { 2 - euler };
    Ok(Topology {
        orientable,
        euler,
        genus: genus.max(0) as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ast(s: &str) -> EquationAst {
        parse_equation(s).unwrap()
    }

    fn normal(n: i64, s: &str) -> (StandardForm, Substitution) {
        to_standard_form(&Group::new(n).unwrap(), &ast(s)).unwrap()
    }

    #[test]
    fn parse_examples() {
        let e = ast("[x,y] z^-1 a^2 z");
        assert_eq!(e.vars, vec!["x", "y", "z"]);
        assert_eq!(
            e.factors.iter().filter(|f| matches!(f, Factor::Const(_))).count(),
            1
        );
        let e = ast("x^2 Z a z");
        assert_eq!(e.occurrences(), vec![(2, 0), (1, 1)]);
        let e = ast("a t A T");
        assert!(e.vars.is_empty());
        assert_eq!(e.factors.len(), 1);
        assert!(ast("a A").factors.is_empty());
    }

    #[test]
    fn classify_examples() {
        let c = classify(&ast("[x,y] Z a z"));
        assert_eq!((c.quadratic, c.orientable), (true, true));
        let c = classify(&ast("x a x a"));
        assert_eq!((c.quadratic, c.orientable), (true, false));
        assert!(!classify(&ast("x y x")).quadratic);
    }

    #[test]
    fn standard_form_examples() {
        let (sf, _) = normal(2, "Z a z W a w");
        assert_eq!((sf.kind, sf.genus, sf.k()), (Kind::Spherical, 0, 2));
        assert_eq!(sf.constants, vec![Element::a_pow(1), Element::a_pow(1)]);
        let (sf, _) = normal(2, "x a x");
        assert_eq!((sf.kind, sf.genus, sf.k()), (Kind::Nonorientable, 1, 1));
        let (sf, _) = normal(2, "x y X Y");
        assert_eq!((sf.kind, sf.genus, sf.k()), (Kind::Orientable, 1, 0));
        let (sf, _) = normal(2, "x X");
        assert_eq!(sf.kind, Kind::Trivial);
    }

    #[test]
    fn nonquadratic_rejected() {
        let g = Group::new(2).unwrap();
        assert!(matches!(
            to_standard_form(&g, &ast("x y x")),
            Err(Error::NotQuadratic(_))
        ));
    }

    #[test]
    fn mixed_genus_becomes_squares() {
        let (sf, _) = normal(3, "x x [y,z] a");
        assert_eq!((sf.kind, sf.genus, sf.k()), (Kind::Nonorientable, 3, 1));
        let (sf, _) = normal(3, "[u,v] x a x [y,z]");
        assert_eq!((sf.kind, sf.genus, sf.k()), (Kind::Nonorientable, 5, 1));
    }

    #[test]
    fn pull_back_identity_moves() {
        let g = Group::new(2).unwrap();
        let e = ast("Z a z W A w");
        let (sf, sub) = to_standard_form(&g, &e).unwrap();
        let mut sol = SfSolution::identity(&sf);
        sol.z = vec![Element::t_pow(1), Element::t_pow(1)];
        assert!(sf.evaluate(&g, &sol).is_identity());
        let back = pull_back(&g, &sub, &sf, &sol).unwrap();
        assert!(evaluate(&g, &e, &back).unwrap().is_identity());
    }

    #[test]
    fn pull_back_through_moves() {
        // x a x has x = a^-1 z^-1 ... style solutions; use a brute solution
        let g = Group::new(2).unwrap();
        let e = ast("x a x");
        let (sf, sub) = to_standard_form(&g, &e).unwrap();
        // x = t^-1 a^-1 ... search small elements of the standard form
        let mut found = false;
        'outer: for xa in -4i64..5 {
            for xb in -2..3 {
                for za in -4i64..5 {
                    for zb in -2..3 {
                        let sol = SfSolution {
                            x: vec![Element::new(g.base().canonicalize(xa.into(), 1), xb)],
                            y: vec![],
                            z: vec![Element::new(g.base().canonicalize(za.into(), 1), zb)],
                        };
                        if sf.evaluate(&g, &sol).is_identity() {
                            let back = pull_back(&g, &sub, &sf, &sol).unwrap();
                            assert!(evaluate(&g, &e, &back).unwrap().is_identity());
                            found = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn topology_matches_examples() {
        let t = topology(&ast("x x")).unwrap();
        assert_eq!((t.orientable, t.genus), (false, 1));
        let t = topology(&ast("[x,y]")).unwrap();
        assert_eq!((t.orientable, t.genus), (true, 1));
        let t = topology(&ast("x a X t")).unwrap();
        assert_eq!((t.orientable, t.genus), (true, 0));
        let t = topology(&ast("x x y y z a Z")).unwrap();
        assert_eq!((t.orientable, t.genus), (false, 2));
        let t = topology(&ast("[x,y] [u,v] a")).unwrap();
        assert_eq!((t.orientable, t.genus), (true, 2));
    }

    #[test]
    fn fresh_conjugator_name_avoids_clashes() {
        let (sf, sub) = normal(2, "z a Z x t X a^2");
        assert_eq!(sf.k(), 3);
        let names: Vec<&String> = sf.z.iter().map(|&i| &sub.names[i]).collect();
        assert!(names.iter().any(|n| n.as_str() == "z0"));
    }
}
