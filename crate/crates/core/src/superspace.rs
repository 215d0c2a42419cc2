//! Z- and Z2-graded vector spaces, duals, tensor products, and the super
//! wedge powers Lambda_s^p with their canonical bases and Koszul signs.
//!
//! Lambda_s of a space is the exterior algebra on the even part tensored
//! with the symmetric algebra on the odd part; on a purely odd space it is
//! unbounded in the degree, so every operation here takes an explicit p and
//! never materializes the whole algebra.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn from_degree(d: i64) -> Parity {
        if d.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// (-1)^{self * other} as an i32 sign.
    pub fn koszul(self, other: Parity) -> i32 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisLabel {
    pub label: String,
    pub degree: i64,
    pub parity: Parity,
}

/// An ordered basis of a Z2-graded (and optionally Z-graded) vector space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperSpace {
    pub basis: Vec<BasisLabel>,
}

impl SuperSpace {
    pub fn new(basis: Vec<BasisLabel>) -> Self {
        let mut seen = std::collections::BTreeSet::new();
        for b in &basis {
            assert!(seen.insert(b.label.clone()), "duplicate basis label {}", b.label);
        }
        SuperSpace { basis }
    }

    /// Space with consistent Z-grading, parity read off the degree mod 2.
    pub fn from_degrees(labels: Vec<(String, i64)>) -> Self {
        SuperSpace::new(
            labels
                .into_iter()
                .map(|(label, degree)| BasisLabel {
                    label,
                    degree,
                    parity: Parity::from_degree(degree),
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn even_dim(&self) -> usize {
        self.basis.iter().filter(|b| b.parity == Parity::Even).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.basis.iter().filter(|b| b.parity == Parity::Odd).count()
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i) == Parity::Even).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i) == Parity::Odd).collect()
    }

    /// Dual basis: same parity, negated Z-degree.
    pub fn dual(&self) -> SuperSpace {
        SuperSpace::new(
            self.basis
                .iter()
                .map(|b| BasisLabel {
                    label: format!("{}*", b.label),
                    degree: -b.degree,
                    parity: b.parity,
                })
                .collect(),
        )
    }

    /// Tensor product basis in row-major order (self index outer).
    pub fn tensor(&self, other: &SuperSpace) -> SuperSpace {
        let mut basis = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.basis {
            for b in &other.basis {
                basis.push(BasisLabel {
                    label: format!("{}\u{2297}{}", a.label, b.label),
                    degree: a.degree + b.degree,
                    parity: a.parity.add(b.parity),
                });
            }
        }
        SuperSpace::new(basis)
    }

    /// Parity flip of every basis vector (the functor Pi). Degrees kept.
    pub fn parity_flip(&self) -> SuperSpace {
        SuperSpace::new(
            self.basis
                .iter()
                .map(|b| BasisLabel {
                    label: b.label.clone(),
                    degree: b.degree,
                    parity: b.parity.flip(),
                })
                .collect(),
        )
    }
}

/// Canonical basis monomial of Lambda_s^p: a strictly increasing list of
/// even-parity indices wedged with a weakly increasing multiset of odd ones.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WedgeElt {
    pub even: Vec<u16>,
    pub odd: Vec<u16>,
}

impl WedgeElt {
    pub fn degree(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_degree(self.odd.len() as i64)
    }

    /// The monomial as a word of space indices, evens first.
    pub fn word(&self) -> Vec<usize> {
        self.even
            .iter()
            .chain(self.odd.iter())
            .map(|&i| i as usize)
            .collect()
    }

    pub fn label(&self, space: &SuperSpace) -> String {
        if self.degree() == 0 {
            return "1".to_string();
        }
        self.word()
            .iter()
            .map(|&i| space.basis[i].label.clone())
            .collect::<Vec<_>>()
            .join("\u{2227}")
    }
}

/// Enumerates the canonical basis of Lambda_s^p(V) in lexicographic order of
/// (even part, odd part).
pub fn wedge_basis(space: &SuperSpace, p: usize) -> Vec<WedgeElt> {
    let evens = space.even_indices();
    let odds = space.odd_indices();
    let mut out = Vec::new();
    for k in 0..=p.min(evens.len()) {
        let even_choices = combinations(&evens, k);
        let odd_choices = multisets(&odds, p - k);
        for e in &even_choices {
            for o in &odd_choices {
                out.push(WedgeElt {
                    even: e.iter().map(|&i| i as u16).collect(),
                    odd: o.iter().map(|&i| i as u16).collect(),
                });
            }
        }
    }
    out.sort();
    out
}

/// dim Lambda_s^p(V) by the binomial sum, without enumeration.
pub fn wedge_dim(even_dim: usize, odd_dim: usize, p: usize) -> u128 {
    let mut total: u128 = 0;
    for k in 0..=p.min(even_dim) {
        let stars = p - k;
        total += binom(even_dim as u128, k as u128)
            * binom((odd_dim + stars).saturating_sub(1) as u128, stars as u128);
    }
    total
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

fn multisets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.is_empty() {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// Sorts a word of basis indices into canonical form, accumulating the
/// Koszul sign: transposing adjacent x, y contributes -(-1)^{x̄ȳ}, so two
/// odd factors commute and everything else skew-commutes. Returns sign 0
/// for a repeated even factor.
pub fn normalize_wedge(space: &SuperSpace, word: &[usize]) -> (i32, WedgeElt) {
    // key orders evens (by index) before odds (by index)
    let key = |i: usize| (space.parity(i).is_odd(), i);
    let mut w: Vec<usize> = word.to_vec();
    let mut sign = 1i32;
    // insertion sort with adjacent transpositions
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && key(w[j - 1]) > key(w[j]) {
            sign *= -space.parity(w[j - 1]).koszul(space.parity(w[j]));
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for &i in &w {
        if space.parity(i).is_odd() {
            odd.push(i as u16);
        } else {
            if even.last() == Some(&(i as u16)) {
                return (0, WedgeElt { even: vec![], odd: vec![] });
            }
            even.push(i as u16);
        }
    }
    (sign, WedgeElt { even, odd })
}
