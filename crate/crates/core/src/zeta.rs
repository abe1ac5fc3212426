//! The dual Steenrod algebra in ζ-generators.
//!
//! Monomials are exponent vectors in ζ_1, ζ_2, … with |ζ_i| = 2^i − 1 and
//! weight ω(ζ_i) = 2^{i−1}, ω multiplicative-additive. The right action of the
//! total Steenrod square is given on generators by ζ_n · Sq = Σ_{i=0}^{n}
//! ζ_{n−i}^{2^i} (with ζ_0 = 1) and extends multiplicatively; Sq^k acts on a
//! homogeneous element as the degree-(d − k) component of the total square.

use crate::error::{Error, Result};
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// A monomial ζ_1^{e_1} ζ_2^{e_2} ⋯ ; trailing zero exponents are trimmed, the
/// empty vector is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZetaMonomial {
    exps: Vec<u32>,
}

impl ZetaMonomial {
    pub fn one() -> Self {
        ZetaMonomial { exps: Vec::new() }
    }

    /// ζ_i^e (generator index i ≥ 1).
    pub fn zeta(i: u32, e: u32) -> Self {
        assert!(i >= 1, "generator index starts at 1");
        let mut exps = vec![0; i as usize];
        exps[i as usize - 1] = e;
        let mut m = ZetaMonomial { exps };
        m.trim();
        m
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        let mut m = ZetaMonomial { exps };
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of ζ_i.
    pub fn exponent(&self, i: u32) -> u32 {
        self.exps.get(i as usize - 1).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Σ e_i (2^i − 1).
    pub fn degree(&self) -> i32 {
        self.exps
            .iter()
            .enumerate()
            .map(|(k, &e)| e as i32 * ((1i32 << (k + 1)) - 1))
            .sum()
    }

    /// Σ e_i 2^{i−1}.
    pub fn weight(&self) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .map(|(k, &e)| e << k)
            .sum()
    }

    pub fn mul(&self, other: &ZetaMonomial) -> ZetaMonomial {
        let n = self.exps.len().max(other.exps.len());
        let mut exps = vec![0u32; n];
        for (k, e) in exps.iter_mut().enumerate() {
            *e = self.exps.get(k).copied().unwrap_or(0) + other.exps.get(k).copied().unwrap_or(0);
        }
        ZetaMonomial { exps }
    }

    /// The Frobenius power m^{2^b}.
    pub fn frobenius(&self, b: u32) -> ZetaMonomial {
        ZetaMonomial { exps: self.exps.iter().map(|&e| e << b).collect() }
    }

    /// The ring map ζ_1 ↦ 1, ζ_i ↦ ζ_{i−1} applied to a single monomial.
    pub fn verschiebung(&self) -> ZetaMonomial {
        if self.exps.is_empty() {
            return ZetaMonomial::one();
        }
        ZetaMonomial { exps: self.exps[1..].to_vec() }
    }

    /// Text form: `z1^8 z2^4`, `z2`, `1`.
    pub fn text(&self) -> String {
        if self.is_one() {
            return String::from("1");
        }
        let mut parts = Vec::new();
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 1 {
                parts.push(alloc::format!("z{}", k + 1));
            } else if e > 1 {
                parts.push(alloc::format!("z{}^{}", k + 1, e));
            }
        }
        parts.join(" ")
    }

    pub fn parse(s: &str) -> Result<ZetaMonomial> {
        let s = s.trim();
        if s == "1" {
            return Ok(ZetaMonomial::one());
        }
        let mut exps: Vec<u32> = Vec::new();
        for tok in s.split_whitespace() {
            let rest = tok
                .strip_prefix('z')
                .ok_or_else(|| Error::Parse(alloc::format!("bad monomial factor `{tok}`")))?;
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e),
                None => (rest, "1"),
            };
            let i: usize = idx.parse().map_err(|_| Error::Parse(alloc::format!("bad index in `{tok}`")))?;
            let e: u32 = exp.parse().map_err(|_| Error::Parse(alloc::format!("bad exponent in `{tok}`")))?;
            if i == 0 {
                return Err(Error::Parse(String::from("generator index starts at 1")));
            }
            if exps.len() < i {
                exps.resize(i, 0);
            }
            exps[i - 1] += e;
        }
        Ok(ZetaMonomial::from_exponents(exps))
    }
}

impl fmt::Display for ZetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// Global monomial order: by degree, then reverse-lexicographic on exponent
/// vectors read from the highest generator index down. Fixed once so all
/// serialized bases are deterministic.
impl Ord for ZetaMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let n = self.exps.len().max(other.exps.len());
        for k in (0..n).rev() {
            let a = self.exps.get(k).copied().unwrap_or(0);
            let b = other.exps.get(k).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ZetaMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An F2 sum of monomials; presence in the set means coefficient 1.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ZetaPolynomial {
    terms: BTreeSet<ZetaMonomial>,
}

impl ZetaPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        ZetaPolynomial::from(ZetaMonomial::one())
    }

    pub fn from_terms<I: IntoIterator<Item = ZetaMonomial>>(terms: I) -> Self {
        let mut p = Self::zero();
        for t in terms {
            p.toggle(t);
        }
        p
    }

    pub fn toggle(&mut self, m: ZetaMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &ZetaMonomial> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn contains(&self, m: &ZetaMonomial) -> bool {
        self.terms.contains(m)
    }

    pub fn add(&self, other: &ZetaPolynomial) -> ZetaPolynomial {
        let mut out = self.clone();
        for t in &other.terms {
            out.toggle(t.clone());
        }
        out
    }

    pub fn mul(&self, other: &ZetaPolynomial) -> ZetaPolynomial {
        let mut out = ZetaPolynomial::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    /// Degree if homogeneous (the zero polynomial counts as homogeneous).
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut it = self.terms.iter();
        let d = it.next()?.degree();
        if it.all(|m| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    /// The degree-d part.
    pub fn component(&self, d: i32) -> ZetaPolynomial {
        ZetaPolynomial {
            terms: self.terms.iter().filter(|m| m.degree() == d).cloned().collect(),
        }
    }

    pub fn text(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|m| m.text()).collect();
        parts.join(" + ")
    }
}

impl From<ZetaMonomial> for ZetaPolynomial {
    fn from(m: ZetaMonomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        ZetaPolynomial { terms }
    }
}

/// ζ_n · Sq = Σ_{i=0}^{n} ζ_{n−i}^{2^i}, with the i = n summand equal to 1.
fn generator_total_square(n: u32) -> ZetaPolynomial {
    let mut p = ZetaPolynomial::zero();
    for i in 0..=n {
        if i == n {
            p.toggle(ZetaMonomial::one());
        } else {
            p.toggle(ZetaMonomial::zeta(n - i, 1).frobenius(i));
        }
    }
    p
}

/// Total-square action on a single monomial, extended multiplicatively.
pub fn total_square_monomial(m: &ZetaMonomial) -> ZetaPolynomial {
    let mut out = ZetaPolynomial::one();
    for (k, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let gen_sq = generator_total_square(k as u32 + 1);
        // (x·Sq)^e via the binary expansion of e; squaring is the Frobenius.
        let mut bit = 0u32;
        let mut rem = e;
        while rem != 0 {
            if rem & 1 == 1 {
                let powered = ZetaPolynomial::from_terms(gen_sq.terms().map(|t| t.frobenius(bit)));
                out = out.mul(&powered);
            }
            rem >>= 1;
            bit += 1;
        }
    }
    out
}

/// Total-square action extended additively to polynomials.
pub fn total_square(p: &ZetaPolynomial) -> ZetaPolynomial {
    let mut out = ZetaPolynomial::zero();
    for m in p.terms() {
        out = out.add(&total_square_monomial(m));
    }
    out
}

/// The component Sq^k of the total square on a homogeneous polynomial: the
/// degree-(d − k) part of p · Sq. Sq^0 is the identity; the result is zero for
/// k < 0 or k > d.
pub fn sq_action(p: &ZetaPolynomial, k: i32) -> Result<ZetaPolynomial> {
    if p.is_zero() {
        return Ok(ZetaPolynomial::zero());
    }
    let d = p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if k < 0 || k > d {
        return Ok(ZetaPolynomial::zero());
    }
    Ok(total_square(p).component(d - k))
}

/// The ring map V: ζ_1 ↦ 1, ζ_i ↦ ζ_{i−1}, extended additively (terms may
/// cancel in pairs).
pub fn verschiebung(p: &ZetaPolynomial) -> ZetaPolynomial {
    let mut out = ZetaPolynomial::zero();
    for m in p.terms() {
        out.toggle(m.verschiebung());
    }
    out
}

/// All monomials of the full dual with degree ≤ bound, grouped by degree.
/// Entry d lists the degree-d monomials in the global order.
pub fn dual_basis(bound: i32) -> Vec<Vec<ZetaMonomial>> {
    monomial_basis_by_degree(bound, &subring_generators(1, bound))
}

/// Generators (as monomials) of the level-`level` subring that fit under the
/// degree bound: exponent 2^{max(0, level − i)} on ζ_i. Level 1 is the whole
/// dual, level 2 is the image ring for HZ, 3 for bo, 4 for tmf.
pub fn subring_generators(level: u32, bound: i32) -> Vec<ZetaMonomial> {
    let mut gens = Vec::new();
    for i in 1.. {
        let e = 1u32 << level.saturating_sub(i).min(30);
        let g = ZetaMonomial::zeta(i, e);
        if g.degree() > bound {
            break;
        }
        gens.push(g);
    }
    gens
}

/// All products of the given generator monomials with degree ≤ bound, grouped
/// and sorted by degree.
pub fn monomial_basis_by_degree(bound: i32, gens: &[ZetaMonomial]) -> Vec<Vec<ZetaMonomial>> {
    let mut by_degree: Vec<Vec<ZetaMonomial>> = vec![Vec::new(); (bound.max(0) + 1) as usize];
    let mut current = ZetaMonomial::one();
    enumerate_products(gens, 0, &mut current, 0, bound, &mut |m| {
        by_degree[m.degree() as usize].push(m.clone());
    });
    for row in by_degree.iter_mut() {
        row.sort();
    }
    by_degree
}

/// All products of the generators with weight ≤ weight_bound (no degree bound
/// needed: weights bound the exponents).
pub fn monomial_basis_by_weight(weight_bound: u32, gens: &[ZetaMonomial]) -> Vec<ZetaMonomial> {
    let mut out = Vec::new();
    let gens: Vec<&ZetaMonomial> = gens.iter().filter(|g| g.weight() <= weight_bound && !g.is_one()).collect();
    fn rec(gens: &[&ZetaMonomial], k: usize, cur: &ZetaMonomial, w: u32, bound: u32, out: &mut Vec<ZetaMonomial>) {
        if k == gens.len() {
            out.push(cur.clone());
            return;
        }
        let gw = gens[k].weight();
        let mut m = cur.clone();
        let mut total = w;
        loop {
            rec(gens, k + 1, &m, total, bound, out);
            total += gw;
            if total > bound {
                break;
            }
            m = m.mul(gens[k]);
        }
    }
    rec(&gens, 0, &ZetaMonomial::one(), 0, weight_bound, &mut out);
    out.sort();
    out
}

fn enumerate_products(
    gens: &[ZetaMonomial],
    k: usize,
    cur: &mut ZetaMonomial,
    deg: i32,
    bound: i32,
    f: &mut impl FnMut(&ZetaMonomial),
) {
    if k == gens.len() {
        f(cur);
        return;
    }
    let gd = gens[k].degree();
    let mut m = cur.clone();
    let mut total = deg;
    loop {
        enumerate_products(gens, k + 1, &mut m, total, bound, f);
        total += gd;
        if total > bound {
            break;
        }
        m = m.mul(&gens[k]);
    }
}
