//! Vector enumeration: exact Fincke–Pohst for definite forms, bounded boxes
//! for everything else, and a small-support ordering used by witness searches.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::matrix::{Int, IntMatrix, Rat};

/// All nonzero `x` with `xᵀ·A·x ≤ bound` for a positive-definite `A`.
///
/// Works on the exact rational LDLᵀ decomposition
/// `Q(x) = Σ qᵢᵢ (xᵢ + Σ_{j>i} qᵢⱼ xⱼ)²`, fixing coordinates from the last
/// one down. Output is in lexicographic order.
pub fn fincke_pohst(gram: &IntMatrix, bound: &Int) -> Vec<Vec<Int>> {
    let n = gram.rows();
    if n == 0 || bound.is_negative() {
        return Vec::new();
    }
    let mut q = gram.to_rational();
    for i in 0..n {
        assert!(q[(i, i)].is_positive(), "fincke_pohst needs a positive-definite form");
        for j in i + 1..n {
            q[(j, i)] = q[(i, j)].clone();
            q[(i, j)] = &q[(i, j)] / &q[(i, i)];
        }
        for k in i + 1..n {
            for l in k..n {
                let v = &q[(k, i)] * &q[(i, l)];
                q[(k, l)] -= v;
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![Int::zero(); n];
    descend(&q, n - 1, &Rat::from_integer(bound.clone()), &mut x, &mut out);
    out.retain(|v| v.iter().any(|c| !c.is_zero()));
    out.sort();
    out
}

fn descend(q: &crate::matrix::RatMatrix, i: usize, budget: &Rat, x: &mut Vec<Int>, out: &mut Vec<Vec<Int>>) {
    let n = x.len();
    let mut center = Rat::zero();
    for j in i + 1..n {
        if !x[j].is_zero() {
            center -= &q[(i, j)] * Rat::from_integer(x[j].clone());
        }
    }
    let qii = &q[(i, i)];
    let cost = |t: &Int| {
        let d = Rat::from_integer(t.clone()) - &center;
        qii * &d * &d
    };
    let start = center.floor().to_integer();
    // walk down from floor(center), then up from floor(center)+1
    let mut t = start.clone();
    while cost(&t) <= *budget {
        visit(q, i, budget, &cost(&t), &t, x, out);
        t -= 1;
    }
    let mut t = start + 1;
    while cost(&t) <= *budget {
        visit(q, i, budget, &cost(&t), &t, x, out);
        t += 1;
    }
}

fn visit(
    q: &crate::matrix::RatMatrix,
    i: usize,
    budget: &Rat,
    spent: &Rat,
    t: &Int,
    x: &mut Vec<Int>,
    out: &mut Vec<Vec<Int>>,
) {
    x[i] = t.clone();
    if i == 0 {
        out.push(x.clone());
    } else {
        descend(q, i - 1, &(budget - spent), x, out);
    }
    x[i] = Int::zero();
}

/// Value of the quadratic form `xᵀ·G·x`.
pub(crate) fn quadratic(gram: &IntMatrix, x: &[Int]) -> Int {
    let gx = gram.mul_vec(x);
    x.iter().zip(&gx).map(|(a, b)| a * b).sum()
}

/// Integer solutions `t ∈ [-h, h]` of `g·t² + 2·b·t + c = 0`.
fn solve_last(g: &Int, b: &Int, c: &Int, h: &Int) -> Vec<Int> {
    let mut sols = Vec::new();
    let in_box = |t: &Int| t.abs() <= *h;
    if g.is_zero() {
        if b.is_zero() {
            if c.is_zero() {
                let mut t = -h.clone();
                while t <= *h {
                    sols.push(t.clone());
                    t += 1;
                }
            }
        } else {
            let num = -c;
            let den: Int = b * 2;
            if num.is_multiple_of(&den) {
                let t = num / den;
                if in_box(&t) {
                    sols.push(t);
                }
            }
        }
        return sols;
    }
    // t = (-b ± sqrt(b² - g·c)) / g
    let disc = b * b - g * c;
    if disc.is_negative() {
        return sols;
    }
    let s = disc.sqrt();
    if &s * &s != disc {
        return sols;
    }
    for num in [-b - &s, -b + &s] {
        if num.is_multiple_of(g) {
            let t = num / g;
            if in_box(&t) && !sols.contains(&t) {
                sols.push(t);
            }
        }
    }
    sols.sort();
    sols
}

/// All `x` with `max|xᵢ| ≤ height` and `xᵀ·G·x = value`, for any form.
///
/// Runs over the first `rank − 1` coordinates of the box and solves the
/// last one exactly. Output is in lexicographic order.
pub fn box_search(gram: &IntMatrix, value: &Int, height: u64) -> Vec<Vec<Int>> {
    let n = gram.rows();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let h = Int::from(height);
    let last = n - 1;
    let g = gram[(last, last)].clone();
    let mut head = vec![-(h.clone()); last];
    loop {
        let mut x: Vec<Int> = head.clone();
        x.push(Int::zero());
        let c = quadratic(gram, &x) - value;
        let b: Int = (0..last).map(|j| &gram[(last, j)] * &x[j]).sum();
        for t in solve_last(&g, &b, &c, &h) {
            let mut v = head.clone();
            v.push(t);
            out.push(v);
        }
        // odometer
        let mut k = last;
        loop {
            if k == 0 {
                out.sort();
                out.dedup();
                return out;
            }
            k -= 1;
            if head[k] < h {
                head[k] += 1;
                break;
            }
            head[k] = -(h.clone());
        }
    }
}

/// Draws a random `x` with `max|xᵢ| ≤ height` and `xᵀ·G·x = value`.
///
/// Each draw fills the box uniformly and then tries to re-solve one
/// coordinate exactly, in random order; gives up after `attempts` draws.
pub fn random_vector_of_square<R: Rng + ?Sized>(
    gram: &IntMatrix,
    value: &Int,
    height: u64,
    attempts: usize,
    rng: &mut R,
) -> Option<Vec<Int>> {
    random_sparse_vector_of_square(gram, value, height, gram.rows(), attempts, rng)
}

/// As [`random_vector_of_square`], but each draw fills only `support`
/// random coordinates before solving for one more. Much more productive in
/// large ranks, where a full box draw rarely lands near the target square.
pub fn random_sparse_vector_of_square<R: Rng + ?Sized>(
    gram: &IntMatrix,
    value: &Int,
    height: u64,
    support: usize,
    attempts: usize,
    rng: &mut R,
) -> Option<Vec<Int>> {
    let n = gram.rows();
    if n == 0 {
        return None;
    }
    let support = support.min(n);
    let h = height as i64;
    let hb = Int::from(height);
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..attempts {
        let mut x = vec![Int::zero(); n];
        for i in rand::seq::index::sample(rng, n, support) {
            x[i] = Int::from(rng.gen_range(-h..=h));
        }
        let gx = gram.mul_vec(&x);
        let q: Int = x.iter().zip(&gx).map(|(a, b)| a * b).sum();
        order.shuffle(rng);
        for &j in &order {
            // with x_j = 0: Q = q − 2·x_j·(Gx)_j + G_jj·x_j²
            let g = &gram[(j, j)];
            let b = &gx[j] - g * &x[j];
            let c = &q - Int::from(2) * &x[j] * &gx[j] + g * &x[j] * &x[j] - value;
            let sols = solve_last(g, &b, &c, &hb);
            if !sols.is_empty() {
                x[j] = sols[rng.gen_range(0..sols.len())].clone();
                return Some(x);
            }
        }
    }
    None
}

/// Iterator over the nonzero integer vectors of a given length with
/// `max|xᵢ| ≤ height` and at most `max_support` nonzero coordinates.
///
/// Order: by support size, then by support positions (lexicographic), then
/// by the values (lexicographic, each running `-h..=h` without 0).
pub struct SmallSupportVectors {
    len: usize,
    height: i64,
    max_support: usize,
    support: Vec<usize>,
    values: Vec<i64>,
    done: bool,
}

impl SmallSupportVectors {
    pub fn new(len: usize, height: u64, max_support: usize) -> Self {
        let height = height.to_i64().unwrap_or(i64::MAX);
        let done = height == 0 || len == 0 || max_support == 0;
        let mut it = SmallSupportVectors { len, height, max_support, support: Vec::new(), values: Vec::new(), done };
        if !done {
            it.reset_support(1);
        }
        it
    }

    fn reset_support(&mut self, size: usize) {
        self.support = (0..size).collect();
        self.values = vec![-self.height; size];
    }

    fn advance(&mut self) {
        // values first
        for k in (0..self.values.len()).rev() {
            let mut v = self.values[k] + 1;
            if v == 0 {
                v = 1;
            }
            if v <= self.height {
                self.values[k] = v;
                for w in self.values.iter_mut().skip(k + 1) {
                    *w = -self.height;
                }
                return;
            }
        }
        // then positions
        let s = self.support.len();
        for k in (0..s).rev() {
            if self.support[k] < self.len - (s - k) {
                self.support[k] += 1;
                for l in k + 1..s {
                    self.support[l] = self.support[l - 1] + 1;
                }
                self.values = vec![-self.height; s];
                return;
            }
        }
        // then support size
        if s < self.max_support && s < self.len {
            self.reset_support(s + 1);
        } else {
            self.done = true;
        }
    }
}

impl Iterator for SmallSupportVectors {
    type Item = Vec<Int>;

    fn next(&mut self) -> Option<Vec<Int>> {
        if self.done {
            return None;
        }
        let mut v = vec![Int::zero(); self.len];
        for (&pos, &val) in self.support.iter().zip(&self.values) {
            v[pos] = Int::from(val);
        }
        self.advance();
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ints;

    #[test]
    fn a2_short_vectors() {
        let a2 = IntMatrix::from_i64_rows(&[&[2, -1], &[-1, 2]]);
        let v = fincke_pohst(&a2, &Int::from(2));
        assert_eq!(v.len(), 6);
        assert!(v.iter().all(|x| quadratic(&a2, x) == Int::from(2)));
    }

    #[test]
    fn fincke_pohst_matches_box_on_small_form() {
        let g = IntMatrix::from_i64_rows(&[&[2, 1, 0], &[1, 4, 1], &[0, 1, 6]]);
        for bound in 1..=12 {
            let fp = fincke_pohst(&g, &Int::from(bound));
            let mut brute = Vec::new();
            for value in 1..=bound {
                brute.extend(box_search(&g, &Int::from(value), 4));
            }
            brute.sort();
            assert_eq!(fp, brute, "bound {bound}");
        }
    }

    #[test]
    fn box_in_hyperbolic_plane() {
        let u = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(box_search(&u, &Int::from(-2), 1), vec![ints(&[-1, 1]), ints(&[1, -1])]);
        // isotropic: every (a, 0) and (0, b)
        assert_eq!(box_search(&u, &Int::from(0), 1).len(), 5);
    }

    #[test]
    fn small_support_order() {
        let all: Vec<_> = SmallSupportVectors::new(2, 1, 2).collect();
        assert_eq!(
            all,
            vec![ints(&[-1, 0]), ints(&[1, 0]), ints(&[0, -1]), ints(&[0, 1]), ints(&[-1, -1]), ints(&[-1, 1]), ints(&[1, -1]), ints(&[1, 1])]
        );
        assert_eq!(SmallSupportVectors::new(5, 0, 3).count(), 0);
        // 3 positions choose 2, 4 values each at height 2, plus 3·4 singles
        assert_eq!(SmallSupportVectors::new(3, 2, 2).count(), 12 + 3 * 16);
    }
}
