use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hilbert::{Label, Window};

/// Finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    elements: Vec<Label>,
    index: HashMap<Label, usize>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    window: Window,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(elements: Vec<Label>, table: Vec<Vec<Label>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidGroup("no elements".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, g) in elements.iter().enumerate() {
            if index.insert(g.clone(), i).is_some() {
                return Err(Error::InvalidGroup(format!("duplicate element {}", g)));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup(format!("table must be {}x{}", n, n)));
        }
        let table = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| index.get(x).copied().ok_or_else(|| Error::InvalidGroup(format!("{} is not an element", x))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(elements, index, table)
    }

    fn from_indices(elements: Vec<Label>, index: HashMap<Label, usize>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("{} has no inverse", elements[g])))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        let window = Window::new(elements.clone(), 0)?;
        Ok(FiniteGroup { elements, index, table, identity, inverse, window })
    }

    fn from_fn(elements: Vec<Label>, mul: impl Fn(usize, usize) -> usize) -> Self {
        let n = elements.len();
        let index = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::from_indices(elements, index, table).expect("built-in group")
    }

    /// `Z/n` with elements `0, ..., n-1`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let elements = (0..n as i64).map(Label::Int).collect();
        Ok(Self::from_fn(elements, |a, b| (a + b) % n))
    }

    /// Dihedral group of order `2n`: rotations `r0..` and reflections
    /// `s0..` with `s_k = s r^k`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGroup("dihedral group needs n >= 2".into()));
        }
        let elements = (0..n)
            .map(|k| Label::Str(format!("r{}", k)))
            .chain((0..n).map(|k| Label::Str(format!("s{}", k))))
            .collect();
        // r^a r^b = r^{a+b}, r^a s r^b = s r^{b-a}, s r^a r^b = s r^{a+b}, s r^a s r^b = r^{b-a}
        Ok(Self::from_fn(elements, |x, y| {
            let (fx, a) = (x >= n, x % n);
            let (fy, b) = (y >= n, y % n);
            match (fx, fy) {
                (false, false) => (a + b) % n,
                (false, true) => n + (b + n - a) % n,
                (true, false) => n + (a + b) % n,
                (true, true) => (b + n - a) % n,
            }
        }))
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"];
        let elements = names.iter().map(|&s| Label::from(s)).collect();
        // unit products among 1, i, j, k as (sign, unit)
        const UNITS: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        Self::from_fn(elements, |x, y| {
            let (neg, u) = UNITS[x % 4][y % 4];
            let sign = neg ^ (x >= 4) ^ (y >= 4);
            u + if sign { 4 } else { 0 }
        })
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let m = b.order();
        let elements = a
            .elements
            .iter()
            .flat_map(|x| b.elements.iter().map(move |y| Label::pair(x.clone(), y.clone())))
            .collect();
        Self::from_fn(elements, |x, y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Label] {
        &self.elements
    }

    pub fn label(&self, g: usize) -> &Label {
        &self.elements[g]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|g| (0..self.order()).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Multiplication table as labels, row `g`, column `h` holding `gh`.
    pub fn table_labels(&self) -> Vec<Vec<Label>> {
        self.table.iter().map(|row| row.iter().map(|&x| self.elements[x].clone()).collect()).collect()
    }

    /// The group itself as a window, the carrier of the regular representation.
    pub fn window(&self) -> Window {
        self.window.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_groups() {
        for g in [
            FiniteGroup::cyclic(1).unwrap(),
            FiniteGroup::cyclic(12).unwrap(),
            FiniteGroup::dihedral(3).unwrap(),
            FiniteGroup::dihedral(6).unwrap(),
            FiniteGroup::quaternion(),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(3).unwrap(), &FiniteGroup::cyclic(3).unwrap()),
        ] {
            let rebuilt = FiniteGroup::from_table(g.elements().to_vec(), g.table_labels()).unwrap();
            assert_eq!(rebuilt, g);
        }
    }

    #[test]
    fn nonabelian_fixtures() {
        assert!(!FiniteGroup::dihedral(3).unwrap().is_abelian());
        assert!(!FiniteGroup::quaternion().is_abelian());
        assert!(FiniteGroup::cyclic(6).unwrap().is_abelian());
        let q = FiniteGroup::quaternion();
        let i = q.index_of(&Label::from("i")).unwrap();
        let minus_one = q.index_of(&Label::from("-1")).unwrap();
        assert_eq!(q.mul(i, i), minus_one);
        assert_eq!(q.inv(i), q.index_of(&Label::from("-i")).unwrap());
    }

    #[test]
    fn rejects_bad_tables() {
        let l = |n: i64| Label::Int(n);
        let no_inverse = vec![vec![l(0), l(1)], vec![l(1), l(1)]];
        assert!(matches!(FiniteGroup::from_table(vec![l(0), l(1)], no_inverse), Err(Error::InvalidGroup(_))));
        let unknown = vec![vec![l(0), l(1)], vec![l(1), l(7)]];
        assert!(FiniteGroup::from_table(vec![l(0), l(1)], unknown).is_err());
        // Latin square without associativity
        let els: Vec<Label> = (0..5).map(l).collect();
        let t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]];
        let table = t.iter().map(|r| r.iter().map(|&x| l(x)).collect()).collect();
        assert!(FiniteGroup::from_table(els, table).is_err());
    }
}
