//! Integer linear algebra computed without the library's HNF/SNF code.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;

pub type IMat = Vec<Vec<i64>>;

fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn minor(a: &IMat, rows: &[usize], cols: &[usize]) -> i128 {
    bareiss_det(
        rows.iter()
            .map(|&i| cols.iter().map(|&j| a[i][j] as i128).collect())
            .collect(),
    )
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinantal divisors `D_1, …, D_r` (gcd of all k×k minors), stopping at
/// the rank `r`.
pub fn determinantal_divisors(a: &IMat, ncols: usize) -> Vec<i128> {
    let nrows = a.len();
    let mut out = Vec::new();
    for k in 1..=nrows.min(ncols) {
        let mut g = 0i128;
        'scan: for rows in combinations(nrows, k) {
            for cols in combinations(ncols, k) {
                g = g.gcd(&minor(a, &rows, &cols));
                if g == 1 {
                    break 'scan;
                }
            }
        }
        if g == 0 {
            break;
        }
        out.push(g);
    }
    out
}

/// `(free_rank, torsion)` of `ℤ^ncols / rowspan(a)` from determinantal
/// divisors; torsion lists the invariant factors greater than one.
pub fn cokernel_by_minors(a: &IMat, ncols: usize) -> (usize, Vec<i128>) {
    let d = determinantal_divisors(a, ncols);
    let mut prev = 1i128;
    let mut torsion = Vec::new();
    for &dk in &d {
        let f = dk / prev;
        if f != 1 {
            torsion.push(f);
        }
        prev = dk;
    }
    (ncols - d.len(), torsion)
}

/// Coset table of the abelian group `⟨x_1..x_n | commutators, rows of a⟩`
/// over the trivial subgroup, built by Felsch-style Todd–Coxeter
/// enumeration.
pub struct CosetTable {
    ngens: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<Option<(usize, usize)>>,
}

const UNDEF: usize = usize::MAX;

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    fwd: Vec<usize>,
    deductions: Vec<(usize, usize)>,
    /// Cyclic conjugates of the relators and their inverses, by first letter.
    starting: Vec<Vec<Vec<usize>>>,
    limit: usize,
}

fn inv(x: usize) -> usize {
    x ^ 1
}

impl Enumerator {
    fn live(&self, c: usize) -> bool {
        self.fwd[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.fwd[r] != r {
            r = self.fwd[r];
        }
        let mut c = c;
        while self.fwd[c] != r {
            let next = self.fwd[c];
            self.fwd[c] = r;
            c = next;
        }
        r
    }

    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c][x] = d;
        self.table[d][inv(x)] = c;
        self.deductions.push((c, x));
    }

    fn define(&mut self, c: usize, x: usize) -> bool {
        if self.table.len() >= self.limit {
            return false;
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.fwd.push(d);
        self.set(c, x, d);
        true
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.fwd[hi] = lo;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == UNDEF {
                    continue;
                }
                self.table[f][inv(x)] = UNDEF;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != UNDEF {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][inv(x)] != UNDEF {
                    let t = self.table[f1][inv(x)];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.set(e1, x, f1);
                }
            }
        }
    }

    /// Traces `w` from `c` in both directions without defining cosets,
    /// recording a deduction or coincidence when one appears.
    fn scan(&mut self, c: usize, w: &[usize]) {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len());
        while i < j && self.table[f][w[i]] != UNDEF {
            f = self.table[f][w[i]];
            i += 1;
        }
        if i == j {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        while j > i && self.table[b][inv(w[j - 1])] != UNDEF {
            b = self.table[b][inv(w[j - 1])];
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            self.set(f, w[i], b);
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.live(c) {
                continue;
            }
            for k in 0..self.starting[x].len() {
                if !self.live(c) {
                    break;
                }
                let w = std::mem::take(&mut self.starting[x][k]);
                self.scan(c, &w);
                self.starting[x][k] = w;
            }
            let d = self.table[c][x];
            if d == UNDEF || !self.live(d) {
                continue;
            }
            for k in 0..self.starting[inv(x)].len() {
                if !self.live(d) {
                    break;
                }
                let w = std::mem::take(&mut self.starting[inv(x)][k]);
                self.scan(d, &w);
                self.starting[inv(x)][k] = w;
            }
        }
    }
}

fn l1(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

/// Greedy size reduction: replaces `r_i` by `r_i ± r_j` while that shortens
/// it in the L1 norm. Elementary row operations keep the row lattice.
pub fn shorten_rows(a: &IMat) -> IMat {
    let mut rows: IMat = a.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    loop {
        let mut improved = false;
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                if i == j {
                    continue;
                }
                for sign in [1, -1] {
                    let cand: Vec<i64> = rows[i].iter().zip(&rows[j]).map(|(x, y)| x + sign * y).collect();
                    if l1(&cand) < l1(&rows[i]) {
                        rows[i] = cand;
                        improved = true;
                    }
                }
            }
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
        if !improved {
            break;
        }
    }
    rows.sort_by_key(|r| l1(r));
    rows
}

fn power_word(x: usize, k: i64) -> impl Iterator<Item = usize> {
    let letter = if k >= 0 { 2 * x } else { 2 * x + 1 };
    std::iter::repeat_n(letter, k.unsigned_abs() as usize)
}

impl CosetTable {
    /// Enumerates the cosets; `None` when more than `limit` cosets are
    /// defined along the way.
    pub fn enumerate(a: &IMat, ngens: usize, limit: usize) -> Option<Self> {
        let mut relators: Vec<Vec<usize>> = Vec::new();
        for i in 0..ngens {
            for j in i + 1..ngens {
                relators.push(vec![2 * i, 2 * j, 2 * i + 1, 2 * j + 1]);
            }
        }
        for row in &shorten_rows(a) {
            let w: Vec<usize> = row.iter().enumerate().flat_map(|(i, &k)| power_word(i, k)).collect();
            if !w.is_empty() {
                relators.push(w);
            }
        }
        let cols = 2 * ngens;
        let mut starting = vec![Vec::new(); cols];
        for r in &relators {
            let inverse: Vec<usize> = r.iter().rev().map(|&x| inv(x)).collect();
            for w in [r, &inverse] {
                for k in 0..w.len() {
                    let rotated: Vec<usize> = w[k..].iter().chain(&w[..k]).copied().collect();
                    starting[rotated[0]].push(rotated);
                }
            }
        }
        let mut e = Enumerator {
            cols,
            table: vec![vec![UNDEF; cols]],
            fwd: vec![0],
            deductions: Vec::new(),
            starting,
            limit,
        };
        for w in &relators {
            e.scan(0, w);
        }
        e.process_deductions();
        let mut c = 0;
        while c < e.table.len() {
            for x in 0..cols {
                if e.live(c) && e.table[c][x] == UNDEF {
                    if !e.define(c, x) {
                        return None;
                    }
                    e.process_deductions();
                }
            }
            c += 1;
        }
        let live: Vec<usize> = (0..e.table.len()).filter(|&c| e.fwd[c] == c).collect();
        let mut index = vec![UNDEF; e.table.len()];
        for (k, &c) in live.iter().enumerate() {
            index[c] = k;
        }
        let table: Vec<Vec<usize>> = live
            .iter()
            .map(|&c| e.table[c].iter().map(|&d| index[d]).collect())
            .collect();
        let mut parent = vec![None; table.len()];
        let mut seen = vec![false; table.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for x in 0..cols {
                let d = table[c][x];
                if !seen[d] {
                    seen[d] = true;
                    parent[d] = Some((c, x));
                    queue.push_back(d);
                }
            }
        }
        Some(CosetTable { ngens, table, parent })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    fn apply(&self, mut c: usize, word: &[usize]) -> usize {
        for &x in word {
            c = self.table[c][x];
        }
        c
    }

    fn word_of(&self, mut c: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, x)) = self.parent[c] {
            w.push(x);
            c = p;
        }
        w.reverse();
        w
    }

    /// Whether `v` is trivial in the enumerated group.
    pub fn is_trivial(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.ngens);
        let w: Vec<usize> = v.iter().enumerate().flat_map(|(i, &k)| power_word(i, k)).collect();
        self.apply(0, &w) == 0
    }

    /// Sorted element orders.
    pub fn element_orders(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.order())
            .map(|c| {
                let w = self.word_of(c);
                let mut k = 1;
                let mut d = self.apply(0, &w);
                while d != 0 {
                    d = self.apply(d, &w);
                    k += 1;
                }
                k
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Sorted element orders of `ℤ/d_1 × … × ℤ/d_k`.
pub fn element_orders_of(factors: &[u64]) -> Vec<usize> {
    let mut orders = vec![1u64];
    for &d in factors {
        let mut next = Vec::with_capacity(orders.len() * d as usize);
        for &o in &orders {
            for a in 0..d {
                next.push(o.lcm(&(d / a.gcd(&d))));
            }
        }
        orders = next;
    }
    let mut out: Vec<usize> = orders.into_iter().map(|o| o as usize).collect();
    out.sort_unstable();
    out
}

/// Membership for a matrix of full row rank: solves `c·a = v` by Cramer's
/// rule and checks integrality. `None` when the rows are dependent.
pub fn member_full_row_rank(a: &IMat, ncols: usize, v: &[i64]) -> Option<bool> {
    let m = a.len();
    if m == 0 {
        return Some(v.iter().all(|&x| x == 0));
    }
    if m > ncols {
        return None;
    }
    let rows: Vec<usize> = (0..m).collect();
    let cols = combinations(ncols, m)
        .into_iter()
        .find(|cols| minor(a, &rows, cols) != 0)?;
    let det = minor(a, &rows, &cols);
    let mut c = Vec::with_capacity(m);
    for i in 0..m {
        let mut replaced = a.clone();
        replaced[i] = v.to_vec();
        let num = minor(&replaced, &rows, &cols);
        if num % det != 0 {
            return Some(false);
        }
        c.push(num / det);
    }
    let in_span = (0..ncols).all(|j| (0..m).map(|i| c[i] * a[i][j] as i128).sum::<i128>() == v[j] as i128);
    Some(in_span)
}

/// Every combination `Σ c_i a_i` with `c_i ∈ [-k, k]`.
pub fn box_combinations(a: &IMat, ncols: usize, k: i64) -> HashSet<Vec<i64>> {
    let mut out = HashSet::from([vec![0i64; ncols]]);
    for row in a {
        let mut next = HashSet::with_capacity(out.len() * (2 * k as usize + 1));
        for v in &out {
            for c in -k..=k {
                next.insert(v.iter().zip(row).map(|(x, r)| x + c * r).collect());
            }
        }
        out = next;
    }
    out
}
