//! The subalgebras A(n) realized as operator algebras on the truncated dual.
//!
//! A(n) is generated under composition by the actions of Sq^1, Sq^2, …,
//! Sq^{2^n} on the degree-truncated dual; the basis is extracted by Gaussian
//! elimination over the generated span, one internal degree at a time, and the
//! multiplication table is solved against that basis. No Adem-relation
//! rewriting is involved: the relations are whatever the action satisfies.

use crate::error::{Error, Result};
use crate::f2::{express, BitMatrix, BitVec, Eliminator};
use crate::zeta::{dual_basis, sq_action, ZetaMonomial, ZetaPolynomial};
use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

/// An operator of homogeneous internal degree on the truncated dual. The
/// right action lowers degree: block `d` maps the degree-d piece to degree
/// d − degree. `word` records it as a composite of the generators Sq^{2^k}
/// (entries are the exponents k, applied left to right).
#[derive(Clone, Debug)]
pub struct Operator {
    pub degree: i32,
    pub word: Vec<u32>,
    blocks: Vec<BitMatrix>,
}

impl Operator {
    pub fn block(&self, d: i32) -> &BitMatrix {
        &self.blocks[d as usize]
    }

    fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    fn flatten(&self) -> BitVec {
        let mut out = BitVec::zeros(self.blocks.iter().map(|b| b.rows() * b.cols()).sum());
        let mut at = 0;
        for b in &self.blocks {
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    if b.get(i, j) {
                        out.set(at + i * b.cols() + j, true);
                    }
                }
            }
            at += b.rows() * b.cols();
        }
        out
    }
}

/// The operator algebra A(n) on the degree-≤ trunc dual.
pub struct OperatorAlgebra {
    pub n: u32,
    pub trunc: i32,
    dual: Vec<Vec<ZetaMonomial>>,
    ops: Vec<Operator>,
    /// table[i][j] = basis indices in the expansion of "apply op i, then op j".
    table: Vec<Vec<Vec<usize>>>,
}

/// 2^{(n+1)(n+2)/2}: 2, 8, 64 for n = 0, 1, 2.
pub fn expected_dimension(n: u32) -> usize {
    1usize << ((n + 1) * (n + 2) / 2)
}

/// Degree of the top class of A(n): 1, 6, 23.
pub fn top_degree(n: u32) -> i32 {
    (1..=n + 1)
        .map(|j| ((1i32 << j) - 1) * ((1i32 << (n + 2 - j)) - 1))
        .sum()
}

/// Faithfulness margin enforced on the truncation degree.
pub fn faithfulness_margin(n: u32) -> i32 {
    2 * ((1i32 << (n + 1)) - 2)
}

pub fn subalgebra_operators(n: u32, trunc: i32) -> Result<OperatorAlgebra> {
    if n > 2 {
        return Err(Error::UnsupportedSubalgebra(n));
    }
    let margin = faithfulness_margin(n);
    if trunc < margin {
        return Err(Error::TruncationTooSmall { n, given: trunc, required: margin });
    }
    let dual = dual_basis(trunc);
    let index: Vec<BTreeMap<ZetaMonomial, usize>> = dual
        .iter()
        .map(|row| row.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
        .collect();

    let dims: Vec<usize> = dual.iter().map(|r| r.len()).collect();
    let identity = Operator {
        degree: 0,
        word: Vec::new(),
        blocks: dims.iter().map(|&d| BitMatrix::identity(d)).collect(),
    };
    let mut gens = Vec::new();
    for k in 0..=n {
        gens.push(generator_operator(k, &dual, &index)?);
    }

    // Breadth-first closure of the span under right multiplication by the
    // generators, eliminating per internal degree.
    let mut ops = vec![identity];
    let mut elims: BTreeMap<i32, Eliminator> = BTreeMap::new();
    elims
        .entry(0)
        .or_insert_with(|| Eliminator::new(ops[0].flatten().len()))
        .insert(ops[0].flatten());
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let nd = ops[i].degree + g.degree;
            if nd > trunc {
                continue;
            }
            let cand = compose(&ops[i], g, &dims);
            if cand.is_zero() {
                continue;
            }
            let flat = cand.flatten();
            let elim = elims.entry(nd).or_insert_with(|| Eliminator::new(flat.len()));
            if elim.insert(flat) {
                let mut word = ops[i].word.clone();
                word.push(g.word[0]);
                ops.push(Operator { degree: nd, word, blocks: cand.blocks });
                queue.push_back(ops.len() - 1);
            }
        }
    }

    ops.sort_by(|a, b| a.degree.cmp(&b.degree).then(a.word.cmp(&b.word)));

    if trunc >= 2 * top_degree(n) {
        let expected = expected_dimension(n);
        if ops.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: ops.len() });
        }
    }

    let mut alg = OperatorAlgebra { n, trunc, dual, ops, table: Vec::new() };
    alg.table = alg.build_table()?;
    Ok(alg)
}

fn generator_operator(
    k: u32,
    dual: &[Vec<ZetaMonomial>],
    index: &[BTreeMap<ZetaMonomial, usize>],
) -> Result<Operator> {
    let sq = 1i32 << k;
    let mut blocks = Vec::with_capacity(dual.len());
    for (d, row) in dual.iter().enumerate() {
        let d = d as i32;
        let tcols = if d >= sq { dual[(d - sq) as usize].len() } else { 0 };
        let mut m = BitMatrix::zeros(row.len(), tcols);
        if d >= sq {
            for (i, mono) in row.iter().enumerate() {
                let image = sq_action(&ZetaPolynomial::from(mono.clone()), sq)?;
                for t in image.terms() {
                    let j = index[(d - sq) as usize][t];
                    m.set(i, j, true);
                }
            }
        }
        blocks.push(m);
    }
    Ok(Operator { degree: sq, word: vec![k], blocks })
}

/// Apply `a`, then `b`.
fn compose(a: &Operator, b: &Operator, dims: &[usize]) -> Operator {
    let nd = a.degree + b.degree;
    let mut blocks = Vec::with_capacity(dims.len());
    for (d, &rows) in dims.iter().enumerate() {
        let d = d as i32;
        if d < nd {
            blocks.push(BitMatrix::zeros(rows, 0));
        } else {
            blocks.push(a.block(d).mul(b.block(d - a.degree)));
        }
    }
    let mut word = a.word.clone();
    word.extend_from_slice(&b.word);
    Operator { degree: nd, word, blocks }
}

impl OperatorAlgebra {
    pub fn dim(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[Operator] {
        &self.ops
    }

    pub fn op(&self, i: usize) -> &Operator {
        &self.ops[i]
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.ops.iter().map(|o| o.degree).collect()
    }

    pub fn top_degree(&self) -> i32 {
        self.ops.iter().map(|o| o.degree).max().unwrap_or(0)
    }

    pub fn identity_index(&self) -> usize {
        self.ops.iter().position(|o| o.degree == 0).expect("identity present")
    }

    /// Indices of the generator operators Sq^{2^k}, k = 0..=n.
    pub fn generator_indices(&self) -> Vec<usize> {
        (0..=self.n)
            .map(|k| {
                self.ops
                    .iter()
                    .position(|o| o.word.as_slice() == [k])
                    .expect("generators are basis elements")
            })
            .collect()
    }

    /// The unique basis operator of a given degree, if unique.
    pub fn sole_op_of_degree(&self, d: i32) -> Option<usize> {
        let mut found = None;
        for (i, o) in self.ops.iter().enumerate() {
            if o.degree == d {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn table(&self) -> &[Vec<Vec<usize>>] {
        &self.table
    }

    pub fn dual_dims(&self) -> Vec<usize> {
        self.dual.iter().map(|r| r.len()).collect()
    }

    pub fn dual_monomials(&self, d: i32) -> &[ZetaMonomial] {
        &self.dual[d as usize]
    }

    /// Whether the truncation certifies the abstract dimension and table.
    pub fn certified(&self) -> bool {
        self.trunc >= 2 * top_degree(self.n)
    }

    fn build_table(&self) -> Result<Vec<Vec<Vec<usize>>>> {
        let dims: Vec<usize> = self.dual.iter().map(|r| r.len()).collect();
        // Flattened basis per degree for coefficient solves.
        let mut per_degree: BTreeMap<i32, (Vec<usize>, BitMatrix)> = BTreeMap::new();
        for (i, o) in self.ops.iter().enumerate() {
            let flat = o.flatten();
            let entry = per_degree
                .entry(o.degree)
                .or_insert_with(|| (Vec::new(), BitMatrix::zeros(0, flat.len())));
            let rows = entry.1.rows();
            let mut m = BitMatrix::zeros(rows + 1, flat.len());
            for r in 0..rows {
                m.set_row(r, &entry.1.row_vec(r));
            }
            m.set_row(rows, &flat);
            entry.0.push(i);
            entry.1 = m;
        }
        let mut table = vec![vec![Vec::new(); self.ops.len()]; self.ops.len()];
        for i in 0..self.ops.len() {
            for j in 0..self.ops.len() {
                let nd = self.ops[i].degree + self.ops[j].degree;
                let prod = compose(&self.ops[i], &self.ops[j], &dims);
                if prod.is_zero() {
                    continue;
                }
                let (indices, basis) = per_degree.get(&nd).ok_or_else(|| {
                    Error::Internal(alloc::format!(
                        "nonzero product of degrees {} and {} above the span",
                        self.ops[i].degree, self.ops[j].degree
                    ))
                })?;
                let target = BitMatrix::from_rows(&[prod.flatten()], basis.cols());
                let coeffs = express(basis, &target).ok_or_else(|| {
                    Error::Internal(alloc::string::String::from(
                        "composition escapes the generated span",
                    ))
                })?;
                for (c, &idx) in indices.iter().enumerate() {
                    if coeffs.get(0, c) {
                        table[i][j].push(idx);
                    }
                }
            }
        }
        Ok(table)
    }
}
