//! Arithmetic on finite abelian groups `Z_{n_1} x ... x Z_{n_m}`.
//!
//! Elements are enumerated lexicographically (last coordinate fastest) and
//! most of the crate works with element *indices* into that enumeration.
//! The dual group is identified with the group itself through the pairing
//! `<x, k> = exp(+2 pi i sum_j x_j k_j / n_j)`.

use std::collections::{HashSet, VecDeque};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::signal::{SignalVector, C64};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    orders: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
    /// lcm of the orders; phases are integers modulo this.
    period: usize,
}

/// A group element as a residue tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<usize>);

/// A character of the group, named by the element it is identified with.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualElement(Vec<usize>);

impl GroupElement {
    pub fn new(g: &GroupSpec, coords: &[i64]) -> Result<Self> {
        g.check_coords(coords).map(GroupElement)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

impl DualElement {
    pub fn new(g: &GroupSpec, coords: &[i64]) -> Result<Self> {
        g.check_coords(coords).map(DualElement)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `exp(2 pi i r / period)`, exact at quarter turns.
pub(crate) fn root_of_unity(r: usize, period: usize) -> C64 {
    let r = r % period;
    if (4 * r).is_multiple_of(period) {
        return match 4 * r / period {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    let theta = 2.0 * PI * (r as f64) / (period as f64);
    C64::new(theta.cos(), theta.sin())
}

impl GroupSpec {
    /// Builds `Z_{n_1} x ... x Z_{n_m}`.
    pub fn new(orders: &[usize]) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidOrders("order list is empty".into()));
        }
        if let Some(bad) = orders.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidOrders(format!("order {bad} is not positive")));
        }
        let mut strides = vec![1; orders.len()];
        for j in (0..orders.len() - 1).rev() {
            strides[j] = strides[j + 1] * orders[j + 1];
        }
        let size = orders.iter().product();
        let period = orders.iter().fold(1, |l, &n| l / gcd(l, n) * n);
        Ok(GroupSpec {
            orders: orders.to_vec(),
            strides,
            size,
            period,
        })
    }

    /// Like [`GroupSpec::new`], for signed input such as parsed JSON.
    pub fn from_signed(orders: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(orders.len());
        for &n in orders {
            if n < 1 {
                return Err(Error::InvalidOrders(format!("order {n} is not positive")));
            }
            out.push(n as usize);
        }
        Self::new(&out)
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// `|G|`.
    pub fn order(&self) -> usize {
        self.size
    }

    fn check_coords(&self, coords: &[i64]) -> Result<Vec<usize>> {
        let in_range = coords.len() == self.orders.len()
            && coords
                .iter()
                .zip(&self.orders)
                .all(|(&c, &n)| c >= 0 && (c as usize) < n);
        if !in_range {
            return Err(Error::ElementOutOfRange {
                coords: coords.to_vec(),
                orders: self.orders.clone(),
            });
        }
        Ok(coords.iter().map(|&c| c as usize).collect())
    }

    pub fn element(&self, index: usize) -> GroupElement {
        GroupElement(self.coords_of(index))
    }

    pub fn dual_element(&self, index: usize) -> DualElement {
        DualElement(self.coords_of(index))
    }

    pub fn coords_of(&self, index: usize) -> Vec<usize> {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| (index / s) % n)
            .collect()
    }

    fn index_of_coords(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.orders.len() || coords.iter().zip(&self.orders).any(|(c, n)| c >= n) {
            return Err(Error::ElementOutOfRange {
                coords: coords.iter().map(|&c| c as i64).collect(),
                orders: self.orders.clone(),
            });
        }
        Ok(coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum())
    }

    pub fn index_of(&self, x: &GroupElement) -> Result<usize> {
        self.index_of_coords(&x.0)
    }

    pub fn dual_index_of(&self, k: &DualElement) -> Result<usize> {
        self.index_of_coords(&k.0)
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size).map(move |i| self.element(i))
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| (((a / s) % n + (b / s) % n) % n) * s)
            .sum()
    }

    pub fn neg(&self, a: usize) -> usize {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| ((n - (a / s) % n) % n) * s)
            .sum()
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Phase of `<x, k>` as an integer modulo the lcm of the orders.
    fn phase(&self, x: usize, k: usize) -> usize {
        let mut r = 0;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let xj = (x / s) % n;
            let kj = (k / s) % n;
            r = (r + (xj * kj % n) * (self.period / n)) % self.period;
        }
        r
    }

    /// `<x, k>` on element indices.
    pub fn pairing_index(&self, x: usize, k: usize) -> C64 {
        root_of_unity(self.phase(x, k), self.period)
    }

    /// True when `<x, k> = 1`, decided in exact integer arithmetic.
    pub fn pairs_trivially(&self, x: usize, k: usize) -> bool {
        self.phase(x, k) == 0
    }

    pub fn pairing(&self, x: &GroupElement, k: &DualElement) -> Result<C64> {
        Ok(self.pairing_index(self.index_of(x)?, self.dual_index_of(k)?))
    }
}

/// A subgroup stored by its full element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: GroupSpec,
    generators: Vec<usize>,
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl Subgroup {
    /// Closure of `gens` under addition.
    pub fn generated(g: &GroupSpec, gens: &[GroupElement]) -> Result<Self> {
        let idx = gens.iter().map(|x| g.index_of(x)).collect::<Result<Vec<_>>>()?;
        Ok(Self::generated_by_indices(g, &idx))
    }

    pub fn generated_by_indices(g: &GroupSpec, gens: &[usize]) -> Self {
        let mut member = vec![false; g.order()];
        member[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = g.add(x, s);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Self::from_membership(g, gens.to_vec(), member)
    }

    /// Builds a subgroup from a closed element set, picking generators greedily.
    fn from_closed_set(g: &GroupSpec, member: Vec<bool>) -> Self {
        let mut gens = Vec::new();
        let mut span = vec![false; g.order()];
        span[0] = true;
        for x in 0..g.order() {
            if member[x] && !span[x] {
                gens.push(x);
                span = Self::generated_by_indices(g, &gens).member;
            }
        }
        Self::from_membership(g, gens, member)
    }

    fn from_membership(g: &GroupSpec, generators: Vec<usize>, member: Vec<bool>) -> Self {
        let elements = (0..g.order()).filter(|&i| member[i]).collect();
        Subgroup {
            ambient: g.clone(),
            generators,
            elements,
            member,
        }
    }

    pub fn ambient(&self) -> &GroupSpec {
        &self.ambient
    }

    /// Element indices in lexicographic order.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.member.get(index).copied().unwrap_or(false)
    }

    pub fn element_coords(&self) -> Vec<Vec<usize>> {
        self.elements.iter().map(|&i| self.ambient.coords_of(i)).collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }
}

/// `Gamma*`: the characters trivial on every element of `gamma`.
pub fn annihilator(g: &GroupSpec, gamma: &Subgroup) -> Subgroup {
    let member = (0..g.order())
        .map(|k| gamma.elements().iter().all(|&x| g.pairs_trivially(x, k)))
        .collect();
    Subgroup::from_closed_set(g, member)
}

/// Every subgroup of `g`, ordered by size then element list.
pub fn all_subgroups(g: &GroupSpec) -> Vec<Subgroup> {
    let trivial = Subgroup::generated_by_indices(g, &[]);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([trivial.elements.clone()]);
    let mut out = vec![trivial.clone()];
    let mut queue = VecDeque::from([trivial]);
    while let Some(h) = queue.pop_front() {
        for x in 0..g.order() {
            if h.contains(x) {
                continue;
            }
            let mut gens = h.generators.clone();
            gens.push(x);
            let bigger = Subgroup::generated_by_indices(g, &gens);
            if seen.insert(bigger.elements.clone()) {
                out.push(bigger.clone());
                queue.push_back(bigger);
            }
        }
    }
    out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    out
}

/// Coset representatives of `G / H`, each the smallest member of its coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    subgroup: Subgroup,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
}

impl Transversal {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Representative indices, increasing.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Position in `reps` of the coset containing `x`.
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    pub fn rep_coords(&self) -> Vec<Vec<usize>> {
        self.reps.iter().map(|&i| self.subgroup.ambient.coords_of(i)).collect()
    }
}

pub fn transversal(g: &GroupSpec, h: &Subgroup) -> Transversal {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &y in h.elements() {
            coset_of[g.add(x, y)] = reps.len();
        }
        reps.push(x);
    }
    Transversal {
        subgroup: h.clone(),
        reps,
        coset_of,
    }
}

/// `(T_t f)(x) = f(x - t)`.
pub fn translate(g: &GroupSpec, f: &SignalVector, t: &GroupElement) -> Result<SignalVector> {
    let t = g.index_of(t)?;
    translate_index(g, f, t)
}

pub fn translate_index(g: &GroupSpec, f: &SignalVector, t: usize) -> Result<SignalVector> {
    if f.len() != g.order() {
        return Err(Error::LengthMismatch {
            expected: g.order(),
            actual: f.len(),
        });
    }
    Ok(SignalVector::new((0..g.order()).map(|x| f[g.sub(x, t)]).collect()))
}
