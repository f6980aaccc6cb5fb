//! Finite pair groupoids, global bisections (permutations) and local
//! bisections (partial injections). Objects carry 1-based labels.
//!
//! The arrow `(i, j)` points from `j` to `i`, so arrows compose like matrix
//! blocks: `(i, j) ∘ (j, k) = (i, k)`.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairGroupoid {
    p: usize,
}

impl PairGroupoid {
    pub fn new(p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::Input("a pair groupoid needs at least one object".into()));
        }
        Ok(Self { p })
    }

    pub fn objects(&self) -> usize {
        self.p
    }

    pub fn arrow(&self, range: usize, domain: usize) -> Result<Arrow> {
        for x in [range, domain] {
            if x == 0 || x > self.p {
                return Err(Error::Input(format!("object {x} outside 1..={}", self.p)));
            }
        }
        Ok(Arrow { range, domain })
    }

    /// All `p²` arrows in row-major order.
    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        (1..=self.p).flat_map(|i| (1..=self.p).map(move |j| Arrow { range: i, domain: j }))
    }

    pub fn units(&self) -> impl Iterator<Item = Arrow> + '_ {
        (1..=self.p).map(Arrow::unit)
    }

    /// All composable pairs `((i, j), (j, k))`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (Arrow, Arrow)> + '_ {
        let p = self.p;
        (1..=p).flat_map(move |i| {
            (1..=p).flat_map(move |j| {
                (1..=p).map(move |k| (Arrow { range: i, domain: j }, Arrow { range: j, domain: k }))
            })
        })
    }
}

/// Arrow `(range, domain)` of a pair groupoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub range: usize,
    pub domain: usize,
}

impl Arrow {
    pub fn new(range: usize, domain: usize) -> Self {
        Self { range, domain }
    }

    pub fn unit(i: usize) -> Self {
        Self { range: i, domain: i }
    }

    pub fn inverse(self) -> Self {
        Self {
            range: self.domain,
            domain: self.range,
        }
    }

    pub fn is_unit(self) -> bool {
        self.range == self.domain
    }

    /// `"i,j"`, the key used in JSON files.
    pub fn key(self) -> String {
        format!("{},{}", self.range, self.domain)
    }

    pub fn parse_key(key: &str) -> Result<Self> {
        let bad = || Error::Input(format!("arrow key {key:?} is not of the form \"i,j\""));
        let (a, b) = key.split_once(',').ok_or_else(bad)?;
        let range = a.trim().parse().map_err(|_| bad())?;
        let domain = b.trim().parse().map_err(|_| bad())?;
        Ok(Self { range, domain })
    }
}

/// `g ∘ h`, defined when `d(g) = r(h)`.
pub fn compose_arrows(g: Arrow, h: Arrow) -> Result<Arrow> {
    if g.domain != h.range {
        return Err(Error::NotComposable(g.range, g.domain, h.range, h.domain));
    }
    Ok(Arrow {
        range: g.range,
        domain: h.domain,
    })
}

/// Global bisection of the pair groupoid: the arrows `(π(j), j)` for a permutation π.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Bisection {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Bisection {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::new(images)
    }
}

impl From<Bisection> for Vec<usize> {
    fn from(b: Bisection) -> Self {
        b.images
    }
}

impl Bisection {
    /// `images[j-1] = π(j)`, 1-based.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let p = images.len();
        if p == 0 {
            return Err(Error::Input("empty bisection".into()));
        }
        let mut seen = vec![false; p];
        for &x in &images {
            if x == 0 || x > p {
                return Err(Error::Input(format!("image {x} outside 1..={p}")));
            }
            if std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::Input(format!("image {x} repeated; not a bijection")));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(p: usize) -> Self {
        Self {
            images: (1..=p).collect(),
        }
    }

    /// Swap of objects `a` and `b`.
    pub fn transposition(p: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=p).collect();
        if a == 0 || b == 0 || a > p || b > p {
            return Err(Error::Input(format!("transposition ({a} {b}) outside 1..={p}")));
        }
        images.swap(a - 1, b - 1);
        Ok(Self { images })
    }

    /// Every permutation of `p` objects (`p!` bisections) in lexicographic order.
    pub fn all(p: usize) -> Vec<Self> {
        (1..=p)
            .permutations(p)
            .map(|images| Self { images })
            .collect()
    }

    pub fn objects(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        self.images
            .iter()
            .enumerate()
            .map(|(j, &i)| Arrow::new(i, j + 1))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (j, &i) in self.images.iter().enumerate() {
            inv[i - 1] = j + 1;
        }
        Self { images: inv }
    }

    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(j, &i)| self.images[i - 1] == j + 1)
    }
}

/// `(x ∘ y)(j) = x(y(j))`.
pub fn compose_bisections(x: &Bisection, y: &Bisection) -> Result<Bisection> {
    if x.objects() != y.objects() {
        return Err(Error::Input(format!(
            "bisections over {} and {} objects",
            x.objects(),
            y.objects()
        )));
    }
    Ok(Bisection {
        images: y.images.iter().map(|&j| x.image(j)).collect(),
    })
}

/// Local bisection: a partial injective map on `{1..p}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalBisection {
    p: usize,
    map: BTreeMap<usize, usize>,
}

impl LocalBisection {
    pub fn new(p: usize, map: BTreeMap<usize, usize>) -> Result<Self> {
        if !is_local_bisection(&map, p)? {
            return Err(Error::Input("partial map is not injective".into()));
        }
        Ok(Self { p, map })
    }

    pub fn empty(p: usize) -> Self {
        Self {
            p,
            map: BTreeMap::new(),
        }
    }

    pub fn map(&self) -> &BTreeMap<usize, usize> {
        &self.map
    }

    pub fn get(&self, j: usize) -> Option<usize> {
        self.map.get(&j).copied()
    }

    /// `(self ∘ other)(j) = self(other(j))` where both are defined.
    pub fn compose(&self, other: &Self) -> Self {
        let map = other
            .map
            .iter()
            .filter_map(|(&j, &k)| self.get(k).map(|i| (j, i)))
            .collect();
        Self { p: self.p, map }
    }

    /// The reversed partial map, the unique generalised inverse.
    pub fn inverse(&self) -> Self {
        Self {
            p: self.p,
            map: self.map.iter().map(|(&j, &i)| (i, j)).collect(),
        }
    }

    /// Every partial injection on `p` objects.
    pub fn all(p: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for domain in (1..=p).powerset() {
            for image in (1..=p).permutations(domain.len()) {
                out.push(Self {
                    p,
                    map: domain.iter().copied().zip(image).collect(),
                });
            }
        }
        out
    }
}

impl From<&Bisection> for LocalBisection {
    fn from(b: &Bisection) -> Self {
        Self {
            p: b.objects(),
            map: b.arrows().map(|a| (a.domain, a.range)).collect(),
        }
    }
}

/// True iff `m` is injective on its domain of definition.
pub fn is_local_bisection(m: &BTreeMap<usize, usize>, p: usize) -> Result<bool> {
    let mut seen = vec![false; p];
    let mut injective = true;
    for (&j, &i) in m {
        for x in [j, i] {
            if x == 0 || x > p {
                return Err(Error::Input(format!("label {x} outside 1..={p}")));
            }
        }
        if std::mem::replace(&mut seen[i - 1], true) {
            injective = false;
        }
    }
    Ok(injective)
}
