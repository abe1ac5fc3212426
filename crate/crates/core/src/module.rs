//! Bounded graded F2-modules over A(1) or A(2).
//!
//! A module stores a labelled basis per degree together with one matrix per
//! algebra generator and degree. On the homology side (`Lowering`) the right
//! action of Sq^k maps degree d to d − k; `dualize` produces the cohomology
//! side (`Raising`) used as input to resolutions, with transposed matrices.

use crate::error::{Error, Result};
use crate::f2::{express, BitMatrix, BitVec, Eliminator};
use crate::steenrod::OperatorAlgebra;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Algebra {
    A1,
    A2,
}

impl Algebra {
    /// Degrees of the module-level generators tracked for this tag.
    pub fn generator_degrees(self) -> &'static [i32] {
        match self {
            Algebra::A1 => &[1, 2],
            Algebra::A2 => &[1, 2, 4],
        }
    }

    pub fn text(self) -> &'static str {
        match self {
            Algebra::A1 => "A(1)",
            Algebra::A2 => "A(2)",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variance {
    /// Homology convention: Sq^k lowers degree by k.
    Lowering,
    /// Cohomology convention: Sq^k raises degree by k.
    Raising,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedModule {
    pub name: String,
    pub algebra: Algebra,
    pub variance: Variance,
    min: i32,
    max: i32,
    /// Some(D) when the module is a degree-≤D truncation of something larger.
    pub truncated: Option<i32>,
    basis: Vec<Vec<String>>,
    /// act[k] = (g, mats): mats[idx] is the matrix at degree min+idx for the
    /// generator of degree g.
    act: Vec<(i32, Vec<BitMatrix>)>,
}

impl GradedModule {
    /// Build from explicit per-degree data. `action(g, d)` must return the
    /// matrix of Sq^g from degree d (dims checked).
    pub fn build(
        name: &str,
        algebra: Algebra,
        variance: Variance,
        min: i32,
        max: i32,
        basis: Vec<Vec<String>>,
        mut action: impl FnMut(i32, i32) -> BitMatrix,
    ) -> Self {
        assert_eq!(basis.len(), (max - min + 1) as usize);
        let mut act = Vec::new();
        for &g in algebra.generator_degrees() {
            let mut mats = Vec::new();
            for d in min..=max {
                let m = action(g, d);
                let rows = basis[(d - min) as usize].len();
                let t = match variance {
                    Variance::Lowering => d - g,
                    Variance::Raising => d + g,
                };
                let cols = if t >= min && t <= max { basis[(t - min) as usize].len() } else { 0 };
                assert_eq!((m.rows(), m.cols()), (rows, cols), "action dims at degree {d}");
                mats.push(m);
            }
            act.push((g, mats));
        }
        GradedModule {
            name: name.to_string(),
            algebra,
            variance,
            min,
            max,
            truncated: None,
            basis,
            act,
        }
    }

    pub fn min_degree(&self) -> i32 {
        self.min
    }

    pub fn max_degree(&self) -> i32 {
        self.max
    }

    pub fn dim(&self, d: i32) -> usize {
        if d < self.min || d > self.max {
            0
        } else {
            self.basis[(d - self.min) as usize].len()
        }
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().map(|b| b.len()).sum()
    }

    pub fn dims(&self) -> Vec<(i32, usize)> {
        (self.min..=self.max).map(|d| (d, self.dim(d))).collect()
    }

    pub fn labels(&self, d: i32) -> &[String] {
        static EMPTY: [String; 0] = [];
        if d < self.min || d > self.max {
            &EMPTY
        } else {
            &self.basis[(d - self.min) as usize]
        }
    }

    pub fn label_index(&self, d: i32, label: &str) -> Option<usize> {
        self.labels(d).iter().position(|l| l == label)
    }

    /// Matrix of the degree-g generator from degree d. Out-of-range degrees
    /// give an empty matrix.
    pub fn action(&self, g: i32, d: i32) -> BitMatrix {
        if d < self.min || d > self.max {
            let t = match self.variance {
                Variance::Lowering => d - g,
                Variance::Raising => d + g,
            };
            let cols = if t >= self.min && t <= self.max { self.dim(t) } else { 0 };
            return BitMatrix::zeros(0, cols);
        }
        for (gg, mats) in &self.act {
            if *gg == g {
                return mats[(d - self.min) as usize].clone();
            }
        }
        panic!("no action of degree {g} on {}", self.name);
    }

    pub fn target_degree(&self, g: i32, d: i32) -> i32 {
        match self.variance {
            Variance::Lowering => d - g,
            Variance::Raising => d + g,
        }
    }

    /// Matrix of Sq^k for k = 0..=4, composing stored generators where needed:
    /// Sq^3 = (apply Sq^1, then Sq^2) as a right action.
    pub fn partial_action(&self, k: i32, d: i32) -> BitMatrix {
        match k {
            0 => BitMatrix::identity(self.dim(d)),
            1 | 2 => self.action(k, d),
            4 => self.action(4, d),
            3 => match self.variance {
                Variance::Lowering => self.action(1, d).mul(&self.action(2, d - 1)),
                Variance::Raising => self.action(2, d).mul(&self.action(1, d + 2)),
            },
            _ => panic!("partial_action only supports k ≤ 4"),
        }
    }

    /// Matrix of a word in the generators (entries are generator degrees) from
    /// degree d. On the Lowering side a word [a, b] means "apply Sq^a, then
    /// Sq^b", realizing the right action of the product Sq^a·Sq^b. On the
    /// Raising side the same algebra element acts on the left, so the word is
    /// applied in reverse order.
    pub fn word_action(&self, word: &[i32], d: i32) -> BitMatrix {
        match self.variance {
            Variance::Lowering => {
                let mut m = BitMatrix::identity(self.dim(d));
                let mut at = d;
                for &g in word {
                    m = m.mul(&self.action(g, at));
                    at -= g;
                }
                m
            }
            Variance::Raising => {
                let mut m = BitMatrix::identity(self.dim(d));
                let mut at = d;
                for &g in word.iter().rev() {
                    m = m.mul(&self.action(g, at));
                    at += g;
                }
                m
            }
        }
    }

    /// Re-grade by +k.
    pub fn suspend(&self, k: i32) -> GradedModule {
        let mut out = self.clone();
        out.min += k;
        out.max += k;
        out.truncated = self.truncated.map(|d| d + k);
        out.name = if k == 0 { self.name.clone() } else { format!("S{k}({})", self.name) };
        out
    }

    /// Swap variance, transposing every action matrix.
    pub fn dualize(&self) -> GradedModule {
        let variance = match self.variance {
            Variance::Lowering => Variance::Raising,
            Variance::Raising => Variance::Lowering,
        };
        let mut act = Vec::new();
        for &(g, _) in &self.act {
            let mut mats = Vec::new();
            for d in self.min..=self.max {
                // The dual matrix at degree d is the transpose of the
                // original matrix landing in degree d.
                let src = match variance {
                    Variance::Raising => d + g,
                    Variance::Lowering => d - g,
                };
                if src >= self.min && src <= self.max {
                    mats.push(self.action(g, src).transpose());
                } else {
                    let t = match variance {
                        Variance::Lowering => d - g,
                        Variance::Raising => d + g,
                    };
                    let cols = if t >= self.min && t <= self.max { self.dim(t) } else { 0 };
                    mats.push(BitMatrix::zeros(self.dim(d), cols));
                }
            }
            act.push((g, mats));
        }
        let name = match self.name.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{}*", self.name),
        };
        GradedModule { name, variance, act, ..self.clone() }
    }

    /// Restrict an A(2)-certified module to its A(1) structure.
    pub fn restrict_to_a1(&self) -> GradedModule {
        let mut out = self.clone();
        out.algebra = Algebra::A1;
        out.act.retain(|(g, _)| *g != 4);
        out
    }

    /// Degreewise concatenation with block-diagonal actions. Labels are
    /// prefixed with the summand index.
    pub fn direct_sum(summands: &[GradedModule]) -> Result<GradedModule> {
        assert!(!summands.is_empty());
        let algebra = summands[0].algebra;
        let variance = summands[0].variance;
        if summands.iter().any(|m| m.algebra != algebra) {
            return Err(Error::MixedAlgebraTags);
        }
        if summands.iter().any(|m| m.variance != variance) {
            return Err(Error::WrongVariance);
        }
        if summands.len() == 1 {
            return Ok(summands[0].clone());
        }
        let min = summands.iter().map(|m| m.min).min().unwrap();
        let max = summands.iter().map(|m| m.max).max().unwrap();
        let mut basis = Vec::new();
        for d in min..=max {
            let mut row = Vec::new();
            for (i, m) in summands.iter().enumerate() {
                for l in m.labels(d) {
                    row.push(format!("{i}.{l}"));
                }
            }
            basis.push(row);
        }
        let mut module = GradedModule::build(
            "sum",
            algebra,
            variance,
            min,
            max,
            basis,
            |g, d| {
                let t = match variance {
                    Variance::Lowering => d - g,
                    Variance::Raising => d + g,
                };
                let rows: usize = summands.iter().map(|m| m.dim(d)).sum();
                let cols: usize = if t >= min && t <= max {
                    summands.iter().map(|m| m.dim(t)).sum()
                } else {
                    0
                };
                let mut out = BitMatrix::zeros(rows, cols);
                let mut r0 = 0;
                let mut c0 = 0;
                for m in summands {
                    let blk = m.action(g, d);
                    let bc = if t >= min && t <= max { m.dim(t) } else { 0 };
                    for i in 0..m.dim(d) {
                        for j in 0..bc.min(blk.cols()) {
                            if blk.get(i, j) {
                                out.set(r0 + i, c0 + j, true);
                            }
                        }
                    }
                    r0 += m.dim(d);
                    c0 += bc;
                }
                out
            },
        );
        module.truncated = summands.iter().filter_map(|m| m.truncated).min();
        Ok(module)
    }

    /// Tensor product with the Cartan action: Sq^g(x⊗y) = Σ_{a+b=g}
    /// (x·Sq^a)⊗(y·Sq^b). Both factors must share the tag and be on the
    /// homology side. If either factor is truncated the product is clamped at
    /// the smaller bound and marked truncated.
    pub fn tensor(&self, other: &GradedModule) -> Result<GradedModule> {
        if self.algebra != other.algebra {
            return Err(Error::MixedAlgebraTags);
        }
        if self.variance != Variance::Lowering || other.variance != Variance::Lowering {
            return Err(Error::WrongVariance);
        }
        let clamp = match (self.truncated, other.truncated) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(i32::MAX).min(b.unwrap_or(i32::MAX))),
        };
        let min = self.min + other.min;
        let max = clamp.unwrap_or(self.max + other.max).min(self.max + other.max);
        let pairs = |d: i32| -> Vec<(i32, usize, usize)> {
            let mut out = Vec::new();
            for da in self.min..=self.max {
                let db = d - da;
                if db < other.min || db > other.max {
                    continue;
                }
                for i in 0..self.dim(da) {
                    for j in 0..other.dim(db) {
                        out.push((da, i, j));
                    }
                }
            }
            out
        };
        let mut basis = Vec::new();
        for d in min..=max {
            basis.push(
                pairs(d)
                    .into_iter()
                    .map(|(da, i, j)| format!("{}|{}", self.labels(da)[i], other.labels(d - da)[j]))
                    .collect::<Vec<_>>(),
            );
        }
        let index_of = |d: i32, da: i32, i: usize, j: usize| -> usize {
            let mut at = 0;
            for pa in self.min..da {
                let pb = d - pa;
                if pb >= other.min && pb <= other.max {
                    at += self.dim(pa) * other.dim(pb);
                }
            }
            at + i * other.dim(d - da) + j
        };
        let mut module = GradedModule::build(
            &format!("({})x({})", self.name, other.name),
            self.algebra,
            Variance::Lowering,
            min,
            max,
            basis,
            |g, d| {
                let t = d - g;
                let src = pairs(d);
                let cols = if t >= min && t <= max { pairs(t).len() } else { 0 };
                let mut m = BitMatrix::zeros(src.len(), cols);
                if cols == 0 {
                    return m;
                }
                for (r, &(da, i, j)) in src.iter().enumerate() {
                    let db = d - da;
                    for a in 0..=g.min(4) {
                        let b = g - a;
                        if b > 4 {
                            continue;
                        }
                        let ma = self.partial_action(a, da);
                        let mb = other.partial_action(b, db);
                        if ma.rows() == 0 || mb.rows() == 0 {
                            continue;
                        }
                        for ii in 0..ma.cols() {
                            if !ma.get(i, ii) {
                                continue;
                            }
                            for jj in 0..mb.cols() {
                                if mb.get(j, jj) {
                                    let c = index_of(t, da - a, ii, jj);
                                    let cur = m.get(r, c);
                                    m.set(r, c, !cur);
                                }
                            }
                        }
                    }
                }
                m
            },
        );
        module.truncated = clamp;
        Ok(module)
    }

    /// Quotient by the per-degree row span of a submodule.
    fn quotient(&self, span: &[Vec<BitVec>]) -> GradedModule {
        assert_eq!(self.variance, Variance::Lowering);
        let mut elims: Vec<Eliminator> = Vec::new();
        let mut keep: Vec<Vec<usize>> = Vec::new();
        for d in self.min..=self.max {
            let idx = (d - self.min) as usize;
            let mut e = Eliminator::new(self.dim(d));
            for v in &span[idx] {
                e.insert(v.clone());
            }
            let kept: Vec<usize> = (0..self.dim(d)).filter(|i| !e.pivots().contains(i)).collect();
            elims.push(e);
            keep.push(kept);
        }
        let reduce_coords = |d: i32, v: &BitVec| -> BitVec {
            if d < self.min || d > self.max {
                return BitVec::zeros(0);
            }
            let idx = (d - self.min) as usize;
            let mut v = v.clone();
            elims[idx].reduce(&mut v);
            let mut out = BitVec::zeros(keep[idx].len());
            for (c, &i) in keep[idx].iter().enumerate() {
                if v.get(i) {
                    out.set(c, true);
                }
            }
            out
        };
        let basis: Vec<Vec<String>> = (self.min..=self.max)
            .map(|d| {
                let idx = (d - self.min) as usize;
                keep[idx].iter().map(|&i| self.labels(d)[i].clone()).collect()
            })
            .collect();
        let mut out = GradedModule::build(
            &self.name,
            self.algebra,
            Variance::Lowering,
            self.min,
            self.max,
            basis,
            |g, d| {
                let idx = (d - self.min) as usize;
                let t = d - g;
                let cols = if t >= self.min && t <= self.max {
                    keep[(t - self.min) as usize].len()
                } else {
                    0
                };
                let full = self.action(g, d);
                let mut m = BitMatrix::zeros(keep[idx].len(), cols);
                if cols == 0 {
                    return m;
                }
                for (r, &i) in keep[idx].iter().enumerate() {
                    let image = reduce_coords(t, &full.row_vec(i));
                    m.set_row(r, &image);
                }
                m
            },
        );
        out.truncated = self.truncated;
        out
    }

    pub fn rename(mut self, name: &str) -> GradedModule {
        self.name = name.to_string();
        self
    }
}

/// The two-cell module joined by Sq^1, in degrees 0 and 1.
pub fn moore() -> GradedModule {
    GradedModule::build(
        "moore",
        Algebra::A1,
        Variance::Lowering,
        0,
        1,
        vec![vec!["m0".to_string()], vec!["m1".to_string()]],
        |g, d| {
            let rows = 1;
            let t = d - g;
            let cols = if (0..=1).contains(&t) { 1 } else { 0 };
            let mut m = BitMatrix::zeros(rows, cols);
            if g == 1 && d == 1 {
                m.set(0, 0, true);
            }
            m
        },
    )
}

/// The trivial one-dimensional module concentrated in degree 0.
pub fn trivial_module(algebra: Algebra) -> GradedModule {
    GradedModule::build(
        "F2",
        algebra,
        Variance::Lowering,
        0,
        0,
        vec![vec!["1".to_string()]],
        |_, _| BitMatrix::zeros(1, 0),
    )
}

/// The rank-one free module over the given operator algebra with its bottom
/// class in degree `bottom`; the cyclic generator sits at the top.
pub fn free_module(alg: &OperatorAlgebra, bottom: i32) -> GradedModule {
    let top_deg = alg.top_degree();
    let n = alg.dim();
    let degree_of = |i: usize| bottom + top_deg - alg.op(i).degree;
    let min = bottom;
    let max = bottom + top_deg;
    let mut basis: Vec<Vec<String>> = vec![Vec::new(); (top_deg + 1) as usize];
    let mut index: Vec<Vec<usize>> = vec![Vec::new(); (top_deg + 1) as usize];
    for i in 0..n {
        let d = degree_of(i);
        basis[(d - min) as usize].push(format!("e{i}"));
        index[(d - min) as usize].push(i);
    }
    let gen_indices = alg.generator_indices();
    GradedModule::build(
        &format!("free[{bottom}]"),
        if alg.n == 2 { Algebra::A2 } else { Algebra::A1 },
        Variance::Lowering,
        min,
        max,
        basis.clone(),
        |g, d| {
            let rows = basis[(d - min) as usize].len();
            let t = d - g;
            let cols = if t >= min && t <= max { basis[(t - min) as usize].len() } else { 0 };
            let mut m = BitMatrix::zeros(rows, cols);
            if cols == 0 {
                return m;
            }
            let gi = match g {
                1 => gen_indices[0],
                2 => gen_indices[1],
                4 => gen_indices[2],
                _ => unreachable!(),
            };
            for (r, &i) in index[(d - min) as usize].iter().enumerate() {
                for &k in &alg.table()[i][gi] {
                    let c = index[(t - min) as usize].iter().position(|&x| x == k).unwrap();
                    m.set(r, c, true);
                }
            }
            m
        },
    )
}

/// A degree-shifting map of graded modules: source degree d lands in target
/// degree d + shift.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub name: String,
    pub source: GradedModule,
    pub target: GradedModule,
    pub shift: i32,
    mats: Vec<BitMatrix>,
}

impl ModuleMap {
    pub fn build(
        name: &str,
        source: &GradedModule,
        target: &GradedModule,
        shift: i32,
        mut map: impl FnMut(i32) -> BitMatrix,
    ) -> Self {
        let mut mats = Vec::new();
        for d in source.min_degree()..=source.max_degree() {
            let m = map(d);
            assert_eq!(m.rows(), source.dim(d));
            assert_eq!(m.cols(), target.dim(d + shift), "map dims at degree {d}");
            mats.push(m);
        }
        ModuleMap {
            name: name.to_string(),
            source: source.clone(),
            target: target.clone(),
            shift,
            mats,
        }
    }

    pub fn matrix(&self, d: i32) -> BitMatrix {
        if d < self.source.min_degree() || d > self.source.max_degree() {
            return BitMatrix::zeros(0, self.target.dim(d + self.shift));
        }
        self.mats[(d - self.source.min_degree()) as usize].clone()
    }

    pub fn identity(m: &GradedModule) -> Self {
        ModuleMap::build("id", m, m, 0, |d| BitMatrix::identity(m.dim(d)))
    }

    pub fn zero(source: &GradedModule, target: &GradedModule, shift: i32) -> Self {
        ModuleMap::build("0", source, target, shift, |d| {
            BitMatrix::zeros(source.dim(d), target.dim(d + shift))
        })
    }

    /// Check commutation with every generator action of the weaker of the two
    /// certified tags, for source degrees d_lo..=d_hi.
    pub fn check_linear_through(&self, d_lo: i32, d_hi: i32) -> Result<()> {
        let algebra = self.source.algebra.min(self.target.algebra);
        for &g in algebra.generator_degrees() {
            for d in d_lo..=d_hi {
                if d < self.source.min_degree() || d > self.source.max_degree() {
                    continue;
                }
                let lhs = self.matrix(d).mul(&self.target.action(g, d + self.shift));
                let rhs = self.source.action(g, d).mul(&self.matrix(self.source.target_degree(g, d)));
                if lhs != rhs {
                    let diff = lhs.add(&rhs);
                    let row = (0..diff.rows()).find(|&i| !diff.row_vec(i).is_zero()).unwrap_or(0);
                    return Err(Error::NotLinear { generator: g as u8, degree: d, row });
                }
            }
        }
        Ok(())
    }

    pub fn check_linear(&self) -> Result<()> {
        self.check_linear_through(self.source.min_degree(), self.source.max_degree())
    }

    /// Linearity plus degreewise bijectivity over the given source range.
    pub fn is_isomorphic_via_through(&self, d_lo: i32, d_hi: i32) -> Result<()> {
        self.check_linear_through(d_lo, d_hi)?;
        for d in d_lo..=d_hi {
            let m = self.matrix(d);
            let (r, c) = (self.source.dim(d), self.target.dim(d + self.shift));
            if r != c || m.rank() != r {
                return Err(Error::NotBijective { degree: d });
            }
        }
        Ok(())
    }

    pub fn is_isomorphic_via(&self) -> Result<()> {
        let lo = self.source.min_degree().min(self.target.min_degree() - self.shift);
        let hi = self.source.max_degree().max(self.target.max_degree() - self.shift);
        self.is_isomorphic_via_through(lo, hi)
    }

    /// Per-degree dimensions of the cokernel, indexed by target degree.
    pub fn cokernel_dims(&self) -> Vec<(i32, usize)> {
        (self.target.min_degree()..=self.target.max_degree())
            .map(|t| {
                let d = t - self.shift;
                let rank = self.matrix(d).rank();
                (t, self.target.dim(t) - rank)
            })
            .collect()
    }
}

/// A short exact sequence 0 → A → B → C → 0 with verified exactness.
pub struct ShortExactSequence {
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

impl ShortExactSequence {
    pub fn verify(&self) -> Result<()> {
        let i = &self.inclusion;
        let p = &self.projection;
        if i.shift != 0 || p.shift != 0 {
            return Err(Error::Internal("exact sequences are degree-preserving".into()));
        }
        let lo = i.source.min_degree().min(p.source.min_degree());
        let hi = i.source.max_degree().max(p.source.max_degree());
        for d in lo..=hi {
            let a = i.source.dim(d);
            let b = p.source.dim(d);
            let c = p.target.dim(d);
            if b != a + c {
                return Err(Error::Internal(format!("dim mismatch at degree {d}")));
            }
            let mi = i.matrix(d);
            let mp = p.matrix(d);
            if mi.rank() != a {
                return Err(Error::Internal(format!("inclusion not injective at {d}")));
            }
            if mp.rank() != c {
                return Err(Error::Internal(format!("projection not surjective at {d}")));
            }
            if a > 0 && !mi.mul(&mp).is_zero() {
                return Err(Error::Internal(format!("p∘i nonzero at {d}")));
            }
            // With p∘i = 0, im i ⊆ ker p; dim ker p = b − c = a forces equality.
        }
        i.check_linear()?;
        p.check_linear()
    }
}

/// Margolis differentials: Q0 = Sq^1, Q1 = Sq^1 Sq^2 + Sq^2 Sq^1 as right
/// actions; the matrix of the differential out of degree d.
pub fn margolis_matrix(m: &GradedModule, which: u8, d: i32) -> BitMatrix {
    assert_eq!(m.variance, Variance::Lowering);
    match which {
        0 => m.action(1, d),
        1 => {
            let a = m.action(1, d).mul(&m.action(2, d - 1));
            let b = m.action(2, d).mul(&m.action(1, d - 2));
            a.add(&b)
        }
        _ => panic!("Margolis index is 0 or 1"),
    }
}

/// Per-degree dimensions of the Margolis homology H(M, Q_i).
pub fn margolis_homology(m: &GradedModule, which: u8) -> Vec<(i32, usize)> {
    let step = if which == 0 { 1 } else { 3 };
    let mut out = Vec::new();
    for d in m.min_degree()..=m.max_degree() {
        let outgoing = margolis_matrix(m, which, d);
        let incoming = margolis_matrix(m, which, d + step);
        let kernel = outgoing.rows() - outgoing.rank();
        out.push((d, kernel - incoming.rank()));
    }
    out
}

pub fn margolis_vanishes(m: &GradedModule) -> bool {
    margolis_homology(m, 0).iter().all(|&(_, k)| k == 0)
        && margolis_homology(m, 1).iter().all(|&(_, k)| k == 0)
}

/// Split off free A(1)-summands: repeatedly locate a lowest-degree element on
/// which the top operator of A(1) acts nontrivially, split off the free cyclic
/// module it generates, and continue in the quotient. Returns the reduced
/// module and the bottom degrees of the split summands (sorted).
pub fn strip_free_summands(
    m: &GradedModule,
    alg: &OperatorAlgebra,
) -> Result<(GradedModule, Vec<i32>)> {
    assert_eq!(alg.n, 1, "free-summand stripping runs over A(1)");
    if m.variance != Variance::Lowering {
        return Err(Error::WrongVariance);
    }
    let top = alg
        .sole_op_of_degree(alg.top_degree())
        .ok_or_else(|| Error::Internal("top of A(1) is one-dimensional".into()))?;
    let top_word: Vec<i32> = alg.op(top).word.iter().map(|&k| 1i32 << k).collect();
    let top_deg = alg.top_degree();

    let mut current = if m.algebra == Algebra::A2 { m.restrict_to_a1() } else { m.clone() };
    let mut bottoms = Vec::new();
    loop {
        let mut found = None;
        for d in current.min_degree()..=current.max_degree() {
            let t = current.word_action(&top_word, d);
            if !t.is_zero() {
                let row = (0..t.rows()).find(|&i| !t.row_vec(i).is_zero()).unwrap();
                found = Some((d, row));
                break;
            }
        }
        let Some((d, row)) = found else { break };
        // x·A(1) is free of rank one; collect its span per degree.
        let x = BitVec::unit(current.dim(d), row);
        let mut span: Vec<Vec<BitVec>> =
            vec![Vec::new(); (current.max_degree() - current.min_degree() + 1) as usize];
        for i in 0..alg.dim() {
            let word: Vec<i32> = alg.op(i).word.iter().map(|&k| 1i32 << k).collect();
            let td = d - alg.op(i).degree;
            let v = current.word_action(&word, d).apply(&x);
            if v.is_zero() {
                return Err(Error::Internal(
                    "cyclic module is not free despite nonzero top action".into(),
                ));
            }
            span[(td - current.min_degree()) as usize].push(v);
        }
        bottoms.push(d - top_deg);
        current = current.quotient(&span);
    }
    bottoms.sort_unstable();
    let name = format!("{}~", m.name);
    Ok((current.rename(&name), bottoms))
}

/// Check every identity of the operator-algebra multiplication table against
/// the module's action matrices.
pub fn check_operator_relations(m: &GradedModule, alg: &OperatorAlgebra) -> Result<()> {
    let word_of = |i: usize| -> Vec<i32> { alg.op(i).word.iter().map(|&k| 1i32 << k).collect() };
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            for d in m.min_degree()..=m.max_degree() {
                let mut composite = word_of(i);
                composite.extend(word_of(j));
                let lhs = m.word_action(&composite, d);
                let total = alg.op(i).degree + alg.op(j).degree;
                let t = m.target_degree(total, d);
                let cols = m.dim(t);
                let mut rhs = BitMatrix::zeros(m.dim(d), cols);
                for &k in &alg.table()[i][j] {
                    rhs = rhs.add(&m.word_action(&word_of(k), d));
                }
                if lhs != rhs {
                    return Err(Error::Internal(format!(
                        "operator relation {i}∘{j} fails on {} at degree {d}",
                        m.name
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Dimension-only comparison over a degree range.
pub fn dims_equal(a: &GradedModule, b: &GradedModule, lo: i32, hi: i32) -> bool {
    (lo..=hi).all(|d| a.dim(d) == b.dim(d))
}

/// Membership of every row of `sub` in the row span of `ambient`.
pub fn span_contains(ambient: &BitMatrix, sub: &BitMatrix) -> bool {
    express(ambient, sub).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steenrod::subalgebra_operators;

    fn a1() -> OperatorAlgebra {
        subalgebra_operators(1, 12).unwrap()
    }

    #[test]
    fn suspend_basics() {
        let m = moore();
        assert_eq!(m.suspend(0).dims(), m.dims());
        let s = trivial_module(Algebra::A1).suspend(8);
        assert_eq!(s.dims(), vec![(8, 1)]);
        let t = m.suspend(8).suspend(4);
        assert_eq!(t.min_degree(), 12);
        assert_eq!(t.dim(12), 1);
    }

    #[test]
    fn direct_sum_dims() {
        let a = trivial_module(Algebra::A1);
        let b = trivial_module(Algebra::A1).suspend(2);
        let s = GradedModule::direct_sum(&[a.clone(), b]).unwrap();
        assert_eq!(s.dims(), vec![(0, 1), (1, 0), (2, 1)]);
        let one = GradedModule::direct_sum(&[a.clone()]).unwrap();
        assert_eq!(one, a);
    }

    #[test]
    fn tensor_unit_and_moore() {
        let f2 = trivial_module(Algebra::A1);
        let m = moore();
        let t = f2.tensor(&m).unwrap();
        assert_eq!(t.dims(), m.dims());
        assert_eq!(t.action(1, 1), m.action(1, 1));

        let mm = m.tensor(&m).unwrap();
        assert_eq!(mm.dims(), vec![(0, 1), (1, 2), (2, 1)]);
        assert_eq!(mm.action(1, 1).rank(), 1);
        assert_eq!(mm.action(1, 2).rank(), 1);
        // Q0-homology of moore⊗moore vanishes (Künneth).
        assert!(margolis_homology(&mm, 0).iter().all(|&(_, k)| k == 0));
    }

    #[test]
    fn dualize_involution() {
        let m = moore();
        let d = m.dualize();
        assert_eq!(d.variance, Variance::Raising);
        assert_eq!(d.action(1, 0).rank(), 1);
        assert_eq!(d.dualize(), m);
    }

    #[test]
    fn check_linear_identity_and_zero() {
        let m = moore();
        assert!(ModuleMap::identity(&m).check_linear().is_ok());
        assert!(ModuleMap::zero(&m, &m, 0).check_linear().is_ok());
        assert!(ModuleMap::identity(&m).is_isomorphic_via().is_ok());
    }

    #[test]
    fn degree_shift_map_fails_linearity() {
        // Raw degree-shifting map m0 ↦ m1 with shift +1: then f(m0)·Sq^1 = m0
        // while f(m0·Sq^1) = 0, so linearity must be rejected.
        let m = moore();
        let f = ModuleMap::build("raw", &m, &m, 1, |d| {
            let t = d + 1;
            let cols = if (0..=1).contains(&t) { 1 } else { 0 };
            let mut mat = BitMatrix::zeros(m.dim(d), cols);
            if d == 0 {
                mat.set(0, 0, true);
            }
            mat
        });
        assert!(matches!(f.check_linear(), Err(Error::NotLinear { generator: 1, .. })));
    }

    #[test]
    fn margolis_of_free_vanishes() {
        let alg = a1();
        let f = free_module(&alg, 0);
        assert_eq!(f.total_dim(), 8);
        assert_eq!((f.min_degree(), f.max_degree()), (0, 6));
        assert!(margolis_vanishes(&f));
    }

    #[test]
    fn margolis_of_f2_and_moore() {
        let f2 = trivial_module(Algebra::A1);
        assert_eq!(margolis_homology(&f2, 0), vec![(0, 1)]);
        let m = moore();
        // The degree-1 class maps onto the degree-0 class: kernel = image.
        assert!(margolis_homology(&m, 0).iter().all(|&(_, k)| k == 0));
        // Q1 vanishes identically on the two-cell module.
        assert_eq!(margolis_homology(&m, 1), vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn strip_free_and_trivial() {
        let alg = a1();
        let f = free_module(&alg, 0);
        let (reduced, bottoms) = strip_free_summands(&f, &alg).unwrap();
        assert_eq!(reduced.total_dim(), 0);
        assert_eq!(bottoms, vec![0]);

        let f2 = trivial_module(Algebra::A1);
        let (reduced, bottoms) = strip_free_summands(&f2, &alg).unwrap();
        assert_eq!(reduced.total_dim(), 1);
        assert!(bottoms.is_empty());

        let (again, more) = strip_free_summands(&reduced, &alg).unwrap();
        assert!(more.is_empty());
        assert_eq!(again.total_dim(), reduced.total_dim());
    }

    #[test]
    fn strip_direct_sum_of_frees() {
        let alg = a1();
        let f = free_module(&alg, 0);
        let g = free_module(&alg, 3);
        let s = GradedModule::direct_sum(&[f, g]).unwrap();
        let (reduced, bottoms) = strip_free_summands(&s, &alg).unwrap();
        assert_eq!(reduced.total_dim(), 0);
        assert_eq!(bottoms, vec![0, 3]);
    }

    #[test]
    fn free_module_relations_and_margolis_sum() {
        let alg = a1();
        let f = free_module(&alg, 0);
        assert!(check_operator_relations(&f, &alg).is_ok());
        // Margolis homology of a sum is the sum of Margolis homologies.
        let m = moore();
        let s = GradedModule::direct_sum(&[f.clone(), m.clone()]).unwrap();
        for which in [0u8, 1] {
            let hs = margolis_homology(&s, which);
            for (d, k) in hs {
                let kf = margolis_homology(&f, which)
                    .iter()
                    .find(|&&(dd, _)| dd == d)
                    .map_or(0, |&(_, k)| k);
                let km = margolis_homology(&m, which)
                    .iter()
                    .find(|&&(dd, _)| dd == d)
                    .map_or(0, |&(_, k)| k);
                assert_eq!(k, kf + km, "at degree {d} for Q{which}");
            }
        }
    }

    #[test]
    fn ses_of_moore() {
        let m = moore();
        let f2 = trivial_module(Algebra::A1);
        let sigma_f2 = trivial_module(Algebra::A1).suspend(1);
        let i = ModuleMap::build("i", &f2, &m, 0, |d| {
            let mut mat = BitMatrix::zeros(f2.dim(d), m.dim(d));
            if d == 0 {
                mat.set(0, 0, true);
            }
            mat
        });
        let p = ModuleMap::build("p", &m, &sigma_f2, 0, |d| {
            let mut mat = BitMatrix::zeros(m.dim(d), sigma_f2.dim(d));
            if d == 1 {
                mat.set(0, 0, true);
            }
            mat
        });
        let ses = ShortExactSequence { inclusion: i, projection: p };
        assert!(ses.verify().is_ok());
    }

    #[test]
    fn mixed_tags_rejected() {
        let a = trivial_module(Algebra::A1);
        let b = trivial_module(Algebra::A2);
        assert_eq!(
            GradedModule::direct_sum(&[a.clone(), b.clone()]),
            Err(Error::MixedAlgebraTags)
        );
        assert!(matches!(a.tensor(&b), Err(Error::MixedAlgebraTags)));
        // Tensor needs the homology side on both factors.
        assert!(matches!(a.tensor(&a.dualize()), Err(Error::WrongVariance)));
    }

    #[test]
    fn tensor_clamps_at_truncation() {
        // A truncated factor caps the product: degrees above the bound are
        // dropped and the result is marked truncated.
        let mut a = moore().suspend(0);
        a.truncated = Some(3);
        let m = moore();
        let t = a.tensor(&m).unwrap();
        assert_eq!(t.truncated, Some(3));
        assert_eq!(t.max_degree(), 2);
        assert_eq!(t.dims(), vec![(0, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn dual_swaps_injective_surjective() {
        let m = moore();
        let d = m.dualize();
        // Rank of Sq^1 out of degree 1 (homology) equals rank of Sq^1 out of
        // degree 0 (cohomology); transposes preserve rank.
        assert_eq!(m.action(1, 1).rank(), d.action(1, 0).rank());
        assert_eq!(m.total_dim(), d.total_dim());
    }
}
