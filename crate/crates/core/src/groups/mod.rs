//! Finite groups, commuting two-sided actions on finite point sets, the
//! orbit-space tensor product, invertibility, isomorphism search, and
//! Picard group computation against the independently computed outer
//! automorphism group.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is not square")]
    NotSquare,
    #[error("table entry out of range")]
    EntryRange,
    #[error("multiplication is not associative")]
    NotAssociative,
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("left action is invalid")]
    BadLeftAction,
    #[error("right action is invalid")]
    BadRightAction,
    #[error("left and right actions do not commute")]
    ActionsDontCommute,
    #[error("bispaces are not composable: right group differs from left group")]
    NotComposable,
    #[error("group order {0} exceeds cap {1}")]
    OrderCap(usize, usize),
}

/// A finite group given by its multiplication table, with identity and
/// inverses derived and validated at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mult: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(mult: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = mult.len();
        if mult.iter().any(|row| row.len() != n) {
            return Err(GroupError::NotSquare);
        }
        if mult.iter().flatten().any(|&x| x >= n) {
            return Err(GroupError::EntryRange);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mult[e][x] == x && mult[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| mult[x][y] == identity && mult[y][x] == identity)
                .ok_or(GroupError::NoInverse(x))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(GroupError::NotAssociative);
                    }
                }
            }
        }
        Ok(FiniteGroup {
            mult,
            identity,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn cyclic(n: usize) -> Self {
        let mult = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteGroup::from_table(mult).expect("cyclic table is a group")
    }

    /// Dihedral group of order `2n`, elements `r^i s^e` encoded as
    /// `i + n·e`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let order = 2 * n;
        let mut mult = vec![vec![0usize; order]; order];
        for i in 0..n {
            for e in 0..2 {
                for j in 0..n {
                    for f in 0..2 {
                        let a = i + n * e;
                        let b = j + n * f;
                        // (r^i s^e)(r^j s^f) = r^(i ± j) s^(e+f).
                        let rot = if e == 0 {
                            (i + j) % n
                        } else {
                            (i + n - j % n) % n
                        };
                        mult[a][b] = rot + n * ((e + f) % 2);
                    }
                }
            }
        }
        FiniteGroup::from_table(mult).expect("dihedral table is a group")
    }

    pub fn symmetric3() -> Self {
        FiniteGroup::dihedral(3)
    }

    pub fn klein() -> Self {
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
    }

    /// The eight-element quaternion group.
    pub fn quaternion() -> Self {
        // Encode ±1, ±i, ±j, ±k as (axis, sign): index = axis + 4·sign.
        let mul_unit = |a: usize, b: usize| -> (usize, bool) {
            // Axis table for 1,i,j,k with the extra sign of the product.
            match (a, b) {
                (0, x) => (x, false),
                (x, 0) => (x, false),
                (1, 1) => (0, true),
                (2, 2) => (0, true),
                (3, 3) => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let mut mult = vec![vec![0usize; 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                let (axis, flip) = mul_unit(a % 4, b % 4);
                let sign = (a / 4 + b / 4 + usize::from(flip)) % 2;
                mult[a][b] = axis + 4 * sign;
            }
        }
        FiniteGroup::from_table(mult).expect("quaternion table is a group")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let na = a.order();
        let nb = b.order();
        let idx = |x: usize, y: usize| x * nb + y;
        let mut mult = vec![vec![0usize; na * nb]; na * nb];
        for x1 in 0..na {
            for y1 in 0..nb {
                for x2 in 0..na {
                    for y2 in 0..nb {
                        mult[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
                    }
                }
            }
        }
        FiniteGroup::from_table(mult).expect("product table is a group")
    }

    /// A small generating set, chosen greedily.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut closure = BTreeSet::from([self.identity]);
        for x in 0..self.order() {
            if closure.contains(&x) {
                continue;
            }
            gens.push(x);
            // Close under multiplication.
            loop {
                let items: Vec<usize> = closure.iter().copied().collect();
                let before = closure.len();
                for &a in &items {
                    for &g in &gens {
                        closure.insert(self.mul(a, g));
                        closure.insert(self.mul(g, a));
                    }
                }
                let items: Vec<usize> = closure.iter().copied().collect();
                for &a in &items {
                    for &b in &items {
                        closure.insert(self.mul(a, b));
                    }
                }
                if closure.len() == before {
                    break;
                }
            }
            if closure.len() == self.order() {
                break;
            }
        }
        gens
    }

    /// All isomorphisms from `self` onto `other`, as image tables.
    pub fn isomorphisms_to(&self, other: &FiniteGroup) -> Vec<Vec<usize>> {
        if self.order() != other.order() {
            return Vec::new();
        }
        let gens = self.generating_set();
        let mut results = Vec::new();
        let mut partial = vec![usize::MAX; self.order()];
        partial[self.identity] = other.identity;
        self.extend_iso(&gens, 0, partial, other, &mut results);
        results
    }

    fn extend_iso(
        &self,
        gens: &[usize],
        k: usize,
        partial: Vec<usize>,
        other: &FiniteGroup,
        results: &mut Vec<Vec<usize>>,
    ) {
        if k == gens.len() {
            if partial.iter().all(|&v| v != usize::MAX) && self.is_isomorphism(&partial, other) {
                results.push(partial);
            }
            return;
        }
        let g = gens[k];
        let ord = self.element_order(g);
        for image in 0..other.order() {
            if other.element_order(image) != ord {
                continue;
            }
            let mut next = partial.clone();
            next[g] = image;
            if self.close_map(&mut next, other) {
                self.extend_iso(gens, k + 1, next, other, results);
            }
        }
    }

    /// Propagate a partial multiplicative map to its closure; false on
    /// conflict.
    fn close_map(&self, map: &mut [usize], other: &FiniteGroup) -> bool {
        loop {
            let mut changed = false;
            let known: Vec<usize> = (0..self.order())
                .filter(|&x| map[x] != usize::MAX)
                .collect();
            for &a in &known {
                for &b in &known {
                    let ab = self.mul(a, b);
                    let image = other.mul(map[a], map[b]);
                    if map[ab] == usize::MAX {
                        map[ab] = image;
                        changed = true;
                    } else if map[ab] != image {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn is_isomorphism(&self, map: &[usize], other: &FiniteGroup) -> bool {
        let mut seen = vec![false; other.order()];
        for &v in map {
            if v == usize::MAX || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        for a in 0..self.order() {
            for b in 0..self.order() {
                if map[self.mul(a, b)] != other.mul(map[a], map[b]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        self.isomorphisms_to(self)
    }

    /// Conjugation maps, deduplicated.
    pub fn inner_automorphisms(&self) -> Vec<Vec<usize>> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in 0..self.order() {
            let conj: Vec<usize> = (0..self.order())
                .map(|x| self.mul(self.mul(g, x), self.inv(g)))
                .collect();
            set.insert(conj);
        }
        set.into_iter().collect()
    }

    pub fn outer_order(&self) -> usize {
        self.automorphisms().len() / self.inner_automorphisms().len()
    }

    pub fn is_isomorphic_to(&self, other: &FiniteGroup) -> bool {
        !self.isomorphisms_to(other).is_empty()
    }
}

/// A finite set with commuting left and right group actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bispace {
    left: FiniteGroup,
    right: FiniteGroup,
    points: usize,
    l_act: Vec<Vec<usize>>,
    r_act: Vec<Vec<usize>>,
}

impl Bispace {
    pub fn new(
        left: FiniteGroup,
        right: FiniteGroup,
        points: usize,
        l_act: Vec<Vec<usize>>,
        r_act: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        if l_act.len() != left.order() || l_act.iter().any(|r| r.len() != points) {
            return Err(GroupError::BadLeftAction);
        }
        if r_act.len() != points || r_act.iter().any(|r| r.len() != right.order()) {
            return Err(GroupError::BadRightAction);
        }
        for x in 0..points {
            if l_act[left.identity()][x] != x {
                return Err(GroupError::BadLeftAction);
            }
            if r_act[x][right.identity()] != x {
                return Err(GroupError::BadRightAction);
            }
        }
        for g1 in 0..left.order() {
            for g2 in 0..left.order() {
                for x in 0..points {
                    if l_act[g1][l_act[g2][x]] != l_act[left.mul(g1, g2)][x] {
                        return Err(GroupError::BadLeftAction);
                    }
                }
            }
        }
        for h1 in 0..right.order() {
            for h2 in 0..right.order() {
                for x in 0..points {
                    if r_act[r_act[x][h1]][h2] != r_act[x][right.mul(h1, h2)] {
                        return Err(GroupError::BadRightAction);
                    }
                }
            }
        }
        for g in 0..left.order() {
            for x in 0..points {
                for h in 0..right.order() {
                    if r_act[l_act[g][x]][h] != l_act[g][r_act[x][h]] {
                        return Err(GroupError::ActionsDontCommute);
                    }
                }
            }
        }
        Ok(Bispace {
            left,
            right,
            points,
            l_act,
            r_act,
        })
    }

    pub fn left(&self) -> &FiniteGroup {
        &self.left
    }

    pub fn right(&self) -> &FiniteGroup {
        &self.right
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn act_left(&self, g: usize, x: usize) -> usize {
        self.l_act[g][x]
    }

    pub fn act_right(&self, x: usize, h: usize) -> usize {
        self.r_act[x][h]
    }

    /// The group acting on itself by left and right multiplication; the
    /// unit for the tensor product.
    pub fn regular(g: &FiniteGroup) -> Self {
        let n = g.order();
        let l_act = (0..n)
            .map(|a| (0..n).map(|x| g.mul(a, x)).collect())
            .collect();
        let r_act = (0..n)
            .map(|x| (0..n).map(|h| g.mul(x, h)).collect())
            .collect();
        Bispace::new(g.clone(), g.clone(), n, l_act, r_act).expect("regular bispace is valid")
    }

    /// Left action twisted through a map `q` (an automorphism when the
    /// result should be invertible), right action regular.
    pub fn twisted(g: &FiniteGroup, q: &[usize]) -> Result<Self, GroupError> {
        let n = g.order();
        let l_act = (0..n)
            .map(|a| (0..n).map(|x| g.mul(q[a], x)).collect())
            .collect();
        let r_act = (0..n)
            .map(|x| (0..n).map(|h| g.mul(x, h)).collect())
            .collect();
        Bispace::new(g.clone(), g.clone(), n, l_act, r_act)
    }

    /// Swap the two sides, inverting both actions.
    pub fn flip(&self) -> Self {
        let l_act = (0..self.right.order())
            .map(|h| {
                (0..self.points)
                    .map(|x| self.r_act[x][self.right.inv(h)])
                    .collect()
            })
            .collect();
        let r_act = (0..self.points)
            .map(|x| {
                (0..self.left.order())
                    .map(|g| self.l_act[self.left.inv(g)][x])
                    .collect()
            })
            .collect();
        Bispace::new(
            self.right.clone(),
            self.left.clone(),
            self.points,
            l_act,
            r_act,
        )
        .expect("flip of a valid bispace is valid")
    }

    /// Disjoint union with matching groups.
    pub fn disjoint_union(&self, other: &Bispace) -> Result<Self, GroupError> {
        if self.left != other.left || self.right != other.right {
            return Err(GroupError::NotComposable);
        }
        let total = self.points + other.points;
        let l_act = (0..self.left.order())
            .map(|g| {
                (0..total)
                    .map(|x| {
                        if x < self.points {
                            self.l_act[g][x]
                        } else {
                            self.points + other.l_act[g][x - self.points]
                        }
                    })
                    .collect()
            })
            .collect();
        let r_act = (0..total)
            .map(|x| {
                (0..self.right.order())
                    .map(|h| {
                        if x < self.points {
                            self.r_act[x][h]
                        } else {
                            self.points + other.r_act[x - self.points][h]
                        }
                    })
                    .collect()
            })
            .collect();
        Bispace::new(self.left.clone(), self.right.clone(), total, l_act, r_act)
    }

    pub fn left_action_free(&self) -> bool {
        (0..self.left.order())
            .all(|g| g == self.left.identity() || (0..self.points).all(|x| self.l_act[g][x] != x))
    }

    pub fn right_action_free(&self) -> bool {
        (0..self.right.order())
            .all(|h| h == self.right.identity() || (0..self.points).all(|x| self.r_act[x][h] != x))
    }

    pub fn left_action_transitive(&self) -> bool {
        if self.points == 0 {
            return false;
        }
        let orbit: BTreeSet<usize> = (0..self.left.order()).map(|g| self.l_act[g][0]).collect();
        orbit.len() == self.points
    }

    pub fn right_action_transitive(&self) -> bool {
        if self.points == 0 {
            return false;
        }
        let orbit: BTreeSet<usize> = (0..self.right.order()).map(|h| self.r_act[0][h]).collect();
        orbit.len() == self.points
    }

    /// Invertible exactly when both actions are free and transitive.
    pub fn is_invertible(&self) -> bool {
        self.left_action_free()
            && self.right_action_free()
            && self.left_action_transitive()
            && self.right_action_transitive()
    }

    /// Orbit-space tensor product over the shared middle group: the
    /// quotient of the product by `(x·h, y) ~ (x, h·y)`.
    pub fn tensor(&self, other: &Bispace) -> Result<Bispace, GroupError> {
        if self.right != other.left {
            return Err(GroupError::NotComposable);
        }
        let h_group = &self.right;
        let nx = self.points;
        let ny = other.points;
        let idx = |x: usize, y: usize| x * ny + y;
        let mut uf = UnionFind::new(nx * ny);
        for x in 0..nx {
            for y in 0..ny {
                for h in 0..h_group.order() {
                    let moved = idx(self.r_act[x][h], other.l_act[h_group.inv(h)][y]);
                    uf.union(idx(x, y), moved);
                }
            }
        }
        let reps = uf.representatives();
        let class_of = |p: usize, uf: &mut UnionFind| -> usize {
            let root = uf.find(p);
            reps.iter().position(|&r| r == root).expect("root listed")
        };
        let points = reps.len();
        let mut l_act = vec![vec![0usize; points]; self.left.order()];
        let mut r_act = vec![vec![0usize; other.right.order()]; points];
        for (ci, &rep) in reps.iter().enumerate() {
            let (x, y) = (rep / ny, rep % ny);
            for g in 0..self.left.order() {
                l_act[g][ci] = class_of(idx(self.l_act[g][x], y), &mut uf);
            }
            for k in 0..other.right.order() {
                r_act[ci][k] = class_of(idx(x, other.r_act[y][k]), &mut uf);
            }
        }
        // Well-definedness: the induced actions must not depend on the
        // chosen orbit representatives.
        for (ci, &rep) in reps.iter().enumerate() {
            let members: Vec<usize> = (0..nx * ny)
                .filter(|&p| uf.find(p) == uf.find(rep))
                .collect();
            for &m in &members {
                let (x, y) = (m / ny, m % ny);
                for g in 0..self.left.order() {
                    assert_eq!(
                        l_act[g][ci],
                        class_of(idx(self.l_act[g][x], y), &mut uf),
                        "left action must be well defined on orbits"
                    );
                }
                for k in 0..other.right.order() {
                    assert_eq!(
                        r_act[ci][k],
                        class_of(idx(x, other.r_act[y][k]), &mut uf),
                        "right action must be well defined on orbits"
                    );
                }
            }
        }
        Bispace::new(self.left.clone(), other.right.clone(), points, l_act, r_act)
    }

    /// Search for an equivariant bijection onto `other`; the witness maps
    /// point indices of `self` to point indices of `other`.
    pub fn isomorphism_to(&self, other: &Bispace) -> Option<Vec<usize>> {
        if self.left != other.left || self.right != other.right || self.points != other.points {
            return None;
        }
        let mut map = vec![usize::MAX; self.points];
        let mut used = vec![false; self.points];
        if self.extend_point_map(other, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn extend_point_map(&self, other: &Bispace, map: &mut [usize], used: &mut [bool]) -> bool {
        let Some(seed) = (0..self.points).find(|&p| map[p] == usize::MAX) else {
            return true;
        };
        for target in 0..self.points {
            if used[target] {
                continue;
            }
            let mut trial = map.to_vec();
            let mut trial_used = used.to_vec();
            if self.propagate(other, seed, target, &mut trial, &mut trial_used)
                && self.extend_point_map(other, &mut trial, &mut trial_used)
            {
                map.copy_from_slice(&trial);
                used.copy_from_slice(&trial_used);
                return true;
            }
        }
        false
    }

    /// Propagate `seed -> target` through both actions; false on clash.
    fn propagate(
        &self,
        other: &Bispace,
        seed: usize,
        target: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let mut queue = vec![(seed, target)];
        while let Some((p, q)) = queue.pop() {
            if map[p] != usize::MAX {
                if map[p] != q {
                    return false;
                }
                continue;
            }
            if used[q] {
                return false;
            }
            map[p] = q;
            used[q] = true;
            for g in 0..self.left.order() {
                queue.push((self.l_act[g][p], other.l_act[g][q]));
            }
            for h in 0..self.right.order() {
                queue.push((self.r_act[p][h], other.r_act[q][h]));
            }
        }
        true
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn representatives(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut reps: Vec<usize> = (0..n).filter(|&x| self.find(x) == x).collect();
        reps.sort_unstable();
        reps
    }
}

/// The Picard group of a finite group: isomorphism classes of invertible
/// self-bispaces under the tensor product.
#[derive(Debug, Clone, Serialize)]
pub struct PicardGroup {
    /// One automorphism per class, as an image table.
    pub class_reps: Vec<Vec<usize>>,
    /// Composition table on class indices, computed through the tensor
    /// product of representative bispaces.
    pub table: Vec<Vec<usize>>,
}

impl PicardGroup {
    pub fn order(&self) -> usize {
        self.class_reps.len()
    }
}

pub const DEFAULT_ORDER_CAP: usize = 24;

/// Enumerate invertible self-bispaces up to equivariant bijection and
/// compose them with the tensor product. The result is checked against
/// the independently computed outer automorphism count.
pub fn picard_group(g: &FiniteGroup, cap: usize) -> Result<PicardGroup, GroupError> {
    if g.order() > cap {
        return Err(GroupError::OrderCap(g.order(), cap));
    }
    // Every invertible self-bispace trivializes the right action to the
    // regular one, leaving a twisted left action by an automorphism; the
    // classes below therefore exhaust the invertible bispaces.
    let auts = g.automorphisms();
    let spaces: Vec<Bispace> = auts
        .iter()
        .map(|q| Bispace::twisted(g, q).expect("automorphism twist is valid"))
        .collect();
    for s in &spaces {
        assert!(s.is_invertible(), "automorphism twists are invertible");
    }
    let mut class_of_aut = vec![usize::MAX; auts.len()];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..auts.len() {
        if class_of_aut[i] != usize::MAX {
            continue;
        }
        let class = reps.len();
        class_of_aut[i] = class;
        reps.push(i);
        for j in (i + 1)..auts.len() {
            if class_of_aut[j] == usize::MAX && spaces[i].isomorphism_to(&spaces[j]).is_some() {
                class_of_aut[j] = class;
            }
        }
    }
    // Cross-check against Aut/Inn computed directly.
    assert_eq!(
        reps.len(),
        g.outer_order(),
        "bispace classes must biject with outer automorphisms"
    );
    // Composition on classes through the tensor product.
    let classify = |space: &Bispace| -> usize {
        for (ci, &rep) in reps.iter().enumerate() {
            if spaces[rep].isomorphism_to(space).is_some() {
                return ci;
            }
        }
        panic!("tensor product of invertible bispaces must land in a known class");
    };
    let k = reps.len();
    let mut table = vec![vec![0usize; k]; k];
    for (i, &ri) in reps.iter().enumerate() {
        for (j, &rj) in reps.iter().enumerate() {
            let prod = spaces[ri].tensor(&spaces[rj])?;
            assert!(prod.is_invertible());
            table[i][j] = classify(&prod);
        }
    }
    Ok(PicardGroup {
        class_reps: reps.iter().map(|&r| auts[r].clone()).collect(),
        table,
    })
}

/// Does an invertible `(G, H)`-bispace exist? Equivalent to the groups
/// being isomorphic; the witness is the twisted bispace of an
/// isomorphism.
pub fn exists_invertible_bispace(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    g.is_isomorphic_to(h)
}
