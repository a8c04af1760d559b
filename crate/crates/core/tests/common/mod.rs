//! Shared helpers for the integration tests, plus a brute-force oracle.
//!
//! The oracle works on plain index matrices built straight from a parsed
//! document. It never calls into the engines: its own transitive closure,
//! bound search, residual search, filter predicates and congruence blocks,
//! all written the obvious (slow) way.
#![allow(dead_code)]

use std::path::PathBuf;

use il_algebra::{build_algebra, parse_spec, AlgebraSpecDocument, BuildMode, ElementSet, FiniteILAlgebra};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_path(name: &str) -> PathBuf {
    fixture_dir().join(format!("{name}.alg"))
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture(name: &str) -> AlgebraSpecDocument {
    parse_spec(&fixture_text(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every fixture in the corpus, sorted by name.
pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "alg").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
}

/// Fixtures expected to pass a strict build.
pub const VALID: [&str; 9] =
    ["chain2", "ex1", "ex2", "ex3-corrected", "ex4-corrected", "ex5", "goedel3", "lukasiewicz3", "one"];

pub fn strict(name: &str) -> FiniteILAlgebra {
    build_algebra(&fixture(name), BuildMode::Strict).unwrap_or_else(|e| panic!("{name}: {e}")).algebra
}

pub fn set(alg: &FiniteILAlgebra, names: &[&str]) -> ElementSet {
    alg.set_of(names.iter().copied()).unwrap()
}

pub struct Oracle {
    pub names: Vec<String>,
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    pub star: Vec<Vec<usize>>,
    /// The given arrow table, or the derived one when the document has none.
    pub arrow: Vec<Vec<usize>>,
    pub unit: usize,
}

impl Oracle {
    pub fn new(doc: &AlgebraSpecDocument) -> Oracle {
        let names = doc.elements.clone();
        let n = names.len();
        let ix = |s: &str| names.iter().position(|e| e == s).unwrap();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in &doc.order {
            leq[ix(a)][ix(b)] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        let table = |rows: &[il_algebra::TableRow]| {
            names
                .iter()
                .map(|r| {
                    let row = rows.iter().find(|t| &t.row == r).unwrap();
                    row.entries.iter().map(|v| ix(v)).collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        };
        let star = table(&doc.star);
        let given = doc.arrow.as_deref().map(table);
        let unit = ix(&doc.unit);
        let mut o = Oracle { names: names.clone(), n, leq, star, arrow: Vec::new(), unit };
        o.arrow = match given {
            Some(t) => t,
            None => o.derived_arrow().expect("oracle: star is not residuated"),
        };
        o
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    fn greatest(&self, cands: &[usize]) -> Option<usize> {
        cands.iter().copied().find(|&g| cands.iter().all(|&c| self.leq[c][g]))
    }

    fn least(&self, cands: &[usize]) -> Option<usize> {
        cands.iter().copied().find(|&l| cands.iter().all(|&c| self.leq[l][c]))
    }

    pub fn try_join(&self, x: usize, y: usize) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.n).filter(|&z| self.leq[x][z] && self.leq[y][z]).collect();
        self.least(&ubs)
    }

    pub fn try_meet(&self, x: usize, y: usize) -> Option<usize> {
        let lbs: Vec<usize> = (0..self.n).filter(|&z| self.leq[z][x] && self.leq[z][y]).collect();
        self.greatest(&lbs)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.try_join(x, y).unwrap()
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.try_meet(x, y).unwrap()
    }

    pub fn is_lattice(&self) -> bool {
        let antisym = (0..self.n).all(|x| (0..self.n).all(|y| x == y || !(self.leq[x][y] && self.leq[y][x])));
        antisym
            && self.bot().is_some()
            && (0..self.n).all(|x| (0..self.n).all(|y| self.try_join(x, y).is_some() && self.try_meet(x, y).is_some()))
    }

    pub fn bot(&self) -> Option<usize> {
        (0..self.n).find(|&b| (0..self.n).all(|x| self.leq[b][x]))
    }

    pub fn top(&self) -> usize {
        let b = self.bot().unwrap();
        self.arrow[b][b]
    }

    pub fn s(&self, x: usize, y: usize) -> usize {
        self.star[x][y]
    }

    pub fn a(&self, x: usize, y: usize) -> usize {
        self.arrow[x][y]
    }

    pub fn residual(&self, x: usize, z: usize) -> Option<usize> {
        let ws: Vec<usize> = (0..self.n).filter(|&w| self.leq[self.star[x][w]][z]).collect();
        self.greatest(&ws)
    }

    pub fn derived_arrow(&self) -> Option<Vec<Vec<usize>>> {
        (0..self.n).map(|x| (0..self.n).map(|z| self.residual(x, z)).collect()).collect()
    }

    /// Monoid and residuation axioms.
    pub fn is_il_algebra(&self) -> bool {
        let n = self.n;
        let r = 0..n;
        self.is_lattice()
            && r.clone().all(|x| self.s(x, self.unit) == x)
            && r.clone().all(|x| r.clone().all(|y| self.s(x, y) == self.s(y, x)))
            && r.clone()
                .all(|x| r.clone().all(|y| r.clone().all(|z| self.s(self.s(x, y), z) == self.s(x, self.s(y, z)))))
            && r.clone()
                .all(|x| r.clone().all(|y| r.clone().all(|z| self.leq[self.s(x, y)][z] == self.leq[x][self.a(y, z)])))
    }

    /// Which of the ten basic identities fail, 1-based: item k is in the result
    /// when some tuple violates it.
    pub fn failing_identities(&self) -> Vec<usize> {
        let n = self.n;
        let l = &self.leq;
        let (bot, top, u) = (self.bot().unwrap(), self.top(), self.unit);
        let mut bad = std::collections::BTreeSet::new();
        for x in 0..n {
            if self.s(x, bot) != bot {
                bad.insert(1);
            }
            if !l[x][top] {
                bad.insert(2);
            }
            if self.a(u, x) != x {
                bad.insert(6);
            }
            if !l[u][self.a(x, x)] {
                bad.insert(10);
            }
            for y in 0..n {
                if l[x][u] && l[y][u] && !l[self.s(x, y)][self.meet(x, y)] {
                    bad.insert(3);
                }
                if l[u][x] && l[u][y] && !l[self.join(x, y)][self.s(x, y)] {
                    bad.insert(4);
                }
                if !l[self.s(x, self.a(x, y))][y] {
                    bad.insert(9);
                }
                for z in 0..n {
                    if self.s(x, self.join(y, z)) != self.join(self.s(x, y), self.s(x, z)) {
                        bad.insert(1);
                    }
                    if !l[self.s(self.a(x, y), self.a(y, z))][self.a(x, z)] {
                        bad.insert(5);
                    }
                    if self.a(x, self.a(y, z)) != self.a(self.s(x, y), z) {
                        bad.insert(8);
                    }
                }
            }
        }
        for (x, x1, y, y1) in itertools::iproduct!(0..n, 0..n, 0..n, 0..n) {
            if l[x][x1] && l[y][y1] && (!l[self.s(x, y)][self.s(x1, y1)] || !l[self.a(x1, y)][self.a(x, y1)]) {
                bad.insert(7);
            }
        }
        bad.into_iter().collect()
    }

    pub fn members(&self, f: u64) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| f >> i & 1 == 1)
    }

    pub fn has(&self, f: u64, x: usize) -> bool {
        f >> x & 1 == 1
    }

    pub fn is_filter(&self, f: u64) -> bool {
        let n = self.n;
        self.has(f, self.unit)
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    !(self.has(f, x) && self.has(f, y)) || (self.has(f, self.s(x, y)) && self.has(f, self.meet(x, y)))
                })
            })
            && (0..n).all(|x| (0..n).all(|y| !(self.has(f, x) && self.leq[x][y]) || self.has(f, y)))
    }

    /// All filters, by sweeping every subset of the carrier.
    pub fn filters(&self) -> Vec<u64> {
        (0..1u64 << self.n).filter(|&f| self.is_filter(f)).collect()
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn distributive(&self, f: u64) -> bool {
        itertools::iproduct!(0..self.n, 0..self.n, 0..self.n).all(|(x, y, z)| {
            let lhs = self.meet(self.join(x, y), self.join(x, z));
            let rhs = self.join(x, self.meet(y, z));
            self.has(f, self.a(lhs, rhs))
        })
    }

    pub fn prime(&self, f: u64) -> bool {
        itertools::iproduct!(0..self.n, 0..self.n).all(|(x, y)| self.has(f, self.a(x, y)) || self.has(f, self.a(y, x)))
    }

    /// Proper and not strictly inside another proper filter.
    pub fn maximal(&self, f: u64) -> bool {
        f != self.full() && self.filters().into_iter().all(|g| g == self.full() || g == f || g & f != f)
    }

    pub fn implicative(&self, f: u64) -> bool {
        itertools::iproduct!(0..self.n, 0..self.n, 0..self.n).all(|(x, y, z)| {
            !(self.has(f, self.a(x, self.a(y, z))) && self.has(f, self.a(x, y))) || self.has(f, self.a(x, z))
        })
    }

    pub fn affine(&self, f: u64) -> bool {
        self.has(f, self.a(self.top(), self.unit))
    }

    pub fn flags(&self, f: u64) -> [bool; 5] {
        [self.distributive(f), self.prime(f), self.maximal(f), self.implicative(f), self.affine(f)]
    }

    pub fn related(&self, f: u64, x: usize, y: usize) -> bool {
        self.has(f, self.a(x, y)) && self.has(f, self.a(y, x))
    }

    /// Congruence blocks as bitmasks, ordered by least member.
    pub fn blocks(&self, f: u64) -> Vec<u64> {
        let mut blocks: Vec<u64> = Vec::new();
        for x in 0..self.n {
            if blocks.iter().any(|b| b >> x & 1 == 1) {
                continue;
            }
            blocks.push((0..self.n).filter(|&y| self.related(f, x, y)).fold(0, |b, y| b | 1 << y));
        }
        blocks
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.n).all(|x| self.s(x, x) == x)
    }

    pub fn integral(&self) -> bool {
        itertools::iproduct!(0..self.n, 0..self.n).all(|(x, y)| self.leq[self.s(x, y)][x])
    }
}
