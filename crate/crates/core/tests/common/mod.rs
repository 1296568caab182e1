//! Independent reference implementations, written directly from the
//! defining formulas and sharing no code paths with the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

pub type Terms<B> = BTreeMap<B, i64>;

pub fn add<B: Ord>(t: &mut Terms<B>, b: B, c: i64) {
    let e = t.entry(b).or_insert(0);
    *e += c;
}

pub fn clean<B: Ord>(mut t: Terms<B>) -> Terms<B> {
    t.retain(|_, c| *c != 0);
    t
}

pub fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Signature by counting inversions.
pub fn signature(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    sign(inv)
}

/// `(u ∘_k v)(i)`: insert `v` shifted by `k−1` at the slot of `k` in `u`,
/// shifting the values of `u` above `k` by `s−1`.
pub fn perm_compose(u: &[usize], k: usize, v: &[usize]) -> Vec<usize> {
    let s = v.len();
    let mut out = Vec::new();
    for &x in u {
        if x == k {
            out.extend(v.iter().map(|&y| y + k - 1));
        } else if x > k {
            out.push(x + s - 1);
        } else {
            out.push(x);
        }
    }
    out
}

/// Bar differential `Σ (−1)^i (w_0,…,ŵ_i,…,w_d)`, dropping faces with equal neighbours.
pub fn e_differential(w: &[Vec<usize>]) -> Terms<Vec<Vec<usize>>> {
    let mut out = Terms::new();
    if w.len() < 2 {
        return out;
    }
    for i in 0..w.len() {
        let mut face = w.to_vec();
        face.remove(i);
        if face.windows(2).all(|p| p[0] != p[1]) {
            add(&mut out, face, sign(i));
        }
    }
    clean(out)
}

/// Surjection differential: omit one entry at a time. Caesuras carry
/// alternating signs `+,−,+,…` in reading order; the final occurrence of a
/// repeated value carries the sign opposite to its last caesura.
pub fn x_differential(u: &[usize]) -> Terms<Vec<usize>> {
    let n = u.len();
    let is_final = |i: usize| !u[i + 1..].contains(&u[i]);
    let mut marks = vec![0i64; n];
    let mut next = 1;
    let mut last_caesura = BTreeMap::new();
    for i in 0..n {
        if !is_final(i) {
            marks[i] = next;
            last_caesura.insert(u[i], next);
            next = -next;
        }
    }
    for i in 0..n {
        if is_final(i) {
            if let Some(&c) = last_caesura.get(&u[i]) {
                marks[i] = -c;
            }
        }
    }
    let mut out = Terms::new();
    for i in 0..n {
        if marks[i] == 0 {
            continue;
        }
        let mut v = u.to_vec();
        v.remove(i);
        if v.windows(2).all(|p| p[0] != p[1]) {
            add(&mut out, v, marks[i]);
        }
    }
    clean(out)
}

/// Table reduction by direct enumeration of the row lengths.
pub fn table_reduction(w: &[Vec<usize>]) -> Terms<Vec<usize>> {
    let r = w[0].len();
    let d = w.len() - 1;
    let mut out = Terms::new();
    let mut lengths = vec![vec![]];
    for _ in 0..=d {
        lengths = lengths
            .into_iter()
            .flat_map(|l: Vec<usize>| (1..=r).map(move |x| [l.clone(), vec![x]].concat()))
            .collect();
    }
    for ls in lengths.into_iter().filter(|l| l.iter().sum::<usize>() == r + d) {
        let mut finished: Vec<usize> = Vec::new();
        let mut seq = Vec::new();
        let mut ok = true;
        for (i, &len) in ls.iter().enumerate() {
            let row: Vec<usize> = w[i].iter().copied().filter(|x| !finished.contains(x)).take(len).collect();
            if row.len() < len {
                ok = false;
                break;
            }
            finished.extend(&row[..len - 1]);
            seq.extend(row);
        }
        let surjective = (1..=r).all(|x| seq.contains(&x));
        if ok && surjective && seq.windows(2).all(|p| p[0] != p[1]) {
            add(&mut out, seq, 1);
        }
    }
    clean(out)
}

/// Interval-cut operation of `u` on `Δ(0,…,n)`: every cut
/// `0 = n_0 ≤ … ≤ n_L = n` gives factors made of the vertex runs of the
/// intervals labelled `j`, signed by sorting the intervals by label (lengths
/// as degrees, inner intervals one longer) and by `(−1)^{n_i}` for each
/// inner interval `[n_{i−1}, n_i]`.
pub fn interval_cut(u: &[usize], n: usize) -> Terms<Vec<Vec<usize>>> {
    let len = u.len();
    let r = *u.iter().max().unwrap();
    let inner: Vec<bool> = (0..len).map(|i| u[i + 1..].contains(&u[i])).collect();
    let mut out = Terms::new();
    let mut cuts = vec![vec![0usize]];
    for _ in 1..len {
        cuts = cuts
            .into_iter()
            .flat_map(|c: Vec<usize>| {
                let last = *c.last().unwrap();
                (last..=n).map(move |x| [c.clone(), vec![x]].concat())
            })
            .collect();
    }
    for mut c in cuts {
        c.push(n);
        let lengths: Vec<usize> = (0..len).map(|i| c[i + 1] - c[i] + usize::from(inner[i])).collect();
        let mut exponent = 0;
        for i in 0..len {
            for j in i + 1..len {
                if u[i] > u[j] {
                    exponent += lengths[i] * lengths[j];
                }
            }
            if inner[i] {
                exponent += c[i + 1];
            }
        }
        let factors: Vec<Vec<usize>> = (1..=r)
            .map(|label| (0..len).filter(|&i| u[i] == label).flat_map(|i| c[i]..=c[i + 1]).collect())
            .collect();
        add(&mut out, factors, sign(exponent));
    }
    clean(out)
}

/// Classical Alexander–Whitney diagonal on `Δ(v_0,…,v_n)`.
pub fn alexander_whitney(v: &[usize]) -> Terms<Vec<Vec<usize>>> {
    (0..v.len()).map(|i| (vec![v[..=i].to_vec(), v[i..].to_vec()], 1)).collect()
}

/// Classical cup-1 product over F₂ on a simplex `v` of dimension `p+q−1`:
/// `Σ_{i<j} f(v_0…v_i v_j…v_n)·g(v_i…v_j)`.
pub fn cup1_f2(f: impl Fn(&[usize]) -> i64, g: impl Fn(&[usize]) -> i64, v: &[usize]) -> i64 {
    let n = v.len() - 1;
    let mut total = 0;
    for i in 0..=n {
        for j in i + 1..=n {
            let front: Vec<usize> = v[..=i].iter().chain(&v[j..]).copied().collect();
            total += f(&front) * g(&v[i..=j]);
        }
    }
    total.rem_euclid(2)
}

/// `ε_s(w)`: the signature of `(w_0(1),…,w_{s−1}(1))` if `w` has degree
/// `s−1` and these are `1,…,s` in some order; `ε_0` is the augmentation.
pub fn epsilon(s: usize, w: &[Vec<usize>]) -> i64 {
    if s == 0 {
        return i64::from(w.len() == 1);
    }
    if w.len() != s {
        return 0;
    }
    let firsts: Vec<usize> = w.iter().map(|p| p[0]).collect();
    let mut sorted = firsts.clone();
    sorted.sort();
    if sorted != (1..=s).collect::<Vec<_>>() {
        return 0;
    }
    signature(&firsts)
}

/// `ε_s ∩ w = ε_s(w_0,…,w_{s−1})·(w_{s−1},…,w_d)`.
pub fn cap_epsilon(s: usize, w: &[Vec<usize>]) -> Option<(Vec<Vec<usize>>, i64)> {
    let front = if s == 0 { 1 } else { s };
    if w.len() < front {
        return None;
    }
    let c = epsilon(s, &w[..front]);
    (c != 0).then(|| (w[front - 1..].to_vec(), c))
}

/// Arity-one brace `f{g}(a_1,…) = Σ_i (−1)^{(n−1)·i} f(a_1,…,a_i, g(a_{i+1},…,a_{i+n}),…)`
/// on tables indexed as in the library (`Σ a_k·dim^{m−k}`).
pub fn brace1(f: &[Vec<i64>], m: usize, g: &[Vec<i64>], n: usize, dim: usize) -> Vec<Vec<i64>> {
    let arity = m + n - 1;
    let row = |args: &[usize]| args.iter().fold(0, |acc, &a| acc * dim + a);
    let mut out = vec![vec![0; dim]; dim.pow(arity as u32)];
    for (r, slot) in out.iter_mut().enumerate() {
        let mut args = vec![0; arity];
        let mut x = r;
        for a in args.iter_mut().rev() {
            *a = x % dim;
            x /= dim;
        }
        for i in 0..m {
            let inner = &g[row(&args[i..i + n])];
            let s = sign((n + 1) * i);
            for (b, &c) in inner.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut outer = args[..i].to_vec();
                outer.push(b);
                outer.extend(&args[i + n..]);
                for (k, &v) in f[row(&outer)].iter().enumerate() {
                    slot[k] += s * c * v;
                }
            }
        }
    }
    out
}

/// Whether `(ab)c = a(bc)` on all basis triples of a bilinear table.
pub fn associative(mu: &[Vec<i64>], dim: usize) -> bool {
    let prod = |a: &[i64], b: &[i64]| {
        let mut out = vec![0; dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    out[k] += a[i] * b[j] * mu[i * dim + j][k];
                }
            }
        }
        out
    };
    let e = |i: usize| (0..dim).map(|k| i64::from(k == i)).collect::<Vec<_>>();
    (0..dim).all(|a| (0..dim).all(|b| (0..dim).all(|c| prod(&prod(&e(a), &e(b)), &e(c)) == prod(&e(a), &prod(&e(b), &e(c))))))
}

/// All tuples of `d+1` permutations of `1..=r` with no equal neighbours.
pub fn bar_basis(r: usize, d: usize) -> Vec<Vec<Vec<usize>>> {
    let perms = permutations(r);
    let mut out: Vec<Vec<Vec<usize>>> = perms.iter().map(|p| vec![p.clone()]).collect();
    for _ in 0..d {
        let mut next = Vec::new();
        for w in out {
            for p in perms.iter().filter(|p| *p != w.last().unwrap()) {
                next.push([w.clone(), vec![p.clone()]].concat());
            }
        }
        out = next;
    }
    out
}

pub fn permutations(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(r - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, r);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// All nondegenerate surjections onto `1..=r` of length `r+d`.
pub fn surjection_basis(r: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..r + d {
        let mut next = Vec::new();
        for s in out {
            for x in (1..=r).filter(|&x| s.last() != Some(&x)) {
                next.push([s.clone(), vec![x]].concat());
            }
        }
        out = next;
    }
    out.retain(|s| (1..=r).all(|x| s.contains(&x)));
    out
}
