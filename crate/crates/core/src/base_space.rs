//! Finite measure spaces, finite groups given by Cayley table, group
//! actions by point transformations, and the dynamical axioms (freedom,
//! ergodicity, measure invariance) with explicit witnesses.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// A finite measure space: labelled points with nonnegative masses.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSpace {
    points: Vec<String>,
    masses: Vec<f64>,
}

impl MeasureSpace {
    /// Validates labels/masses and total positivity.
    pub fn new(points: Vec<String>, masses: Vec<f64>) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::InvalidSpace(String::from("no points")));
        }
        if points.len() != masses.len() {
            return Err(Error::InvalidSpace(format!(
                "{} points but {} masses",
                points.len(),
                masses.len()
            )));
        }
        let mut total = 0.0;
        for (i, &m) in masses.iter().enumerate() {
            if !m.is_finite() || m < 0.0 {
                return Err(Error::InvalidSpace(format!(
                    "mass of point {i} must be finite and nonnegative, got {m}"
                )));
            }
            total += m;
        }
        if total <= 0.0 {
            return Err(Error::InvalidSpace(String::from("total mass must be positive")));
        }
        Ok(MeasureSpace { points, masses })
    }

    /// Uniform masses 1/n on n anonymous points.
    pub fn uniform(n: usize) -> Self {
        let masses = vec![1.0 / n as f64; n];
        let points = (0..n).map(|i| format!("x{i}")).collect();
        MeasureSpace { points, masses }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.points[x]
    }

    pub fn mass(&self, x: usize) -> f64 {
        self.masses[x]
    }

    /// Σ_{x∈s} μ(x), accumulated in ascending point order so repeated runs
    /// are bit-identical.
    pub fn measure(&self, s: &SubsetOfX) -> f64 {
        debug_assert_eq!(s.ambient_len(), self.len());
        let mut total = 0.0;
        for x in 0..self.len() {
            if s.contains(x) {
                total += self.masses[x];
            }
        }
        total
    }

    /// Total mass μ(X).
    pub fn total_mass(&self) -> f64 {
        self.measure(&SubsetOfX::full(self.len()))
    }

    /// Indices of positive-mass points.
    pub fn support(&self) -> SubsetOfX {
        let mut s = SubsetOfX::empty(self.len());
        for x in 0..self.len() {
            if self.masses[x] > 0.0 {
                s.insert(x);
            }
        }
        s
    }
}

/// A subset of the point set, with its ambient size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetOfX {
    member: Vec<bool>,
}

impl SubsetOfX {
    pub fn empty(n: usize) -> Self {
        SubsetOfX {
            member: vec![false; n],
        }
    }

    pub fn full(n: usize) -> Self {
        SubsetOfX {
            member: vec![true; n],
        }
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        let mut s = SubsetOfX::empty(n);
        s.insert(x);
        s
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self, Error> {
        let mut s = SubsetOfX::empty(n);
        for &x in indices {
            if x >= n {
                return Err(Error::InvalidSpace(format!(
                    "subset index {x} out of range for {n} points"
                )));
            }
            s.insert(x);
        }
        Ok(s)
    }

    pub fn ambient_len(&self) -> usize {
        self.member.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.member[x]
    }

    pub fn insert(&mut self, x: usize) {
        self.member[x] = true;
    }

    /// Number of member points.
    pub fn card(&self) -> usize {
        self.member.iter().filter(|&&b| b).count()
    }

    pub fn is_emptyset(&self) -> bool {
        self.member.iter().all(|&b| !b)
    }

    /// Member indices in ascending order.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.member.len()).filter(|&x| self.member[x]).collect()
    }

    pub fn complement(&self) -> SubsetOfX {
        SubsetOfX {
            member: self.member.iter().map(|&b| !b).collect(),
        }
    }

    pub fn union(&self, other: &SubsetOfX) -> SubsetOfX {
        debug_assert_eq!(self.ambient_len(), other.ambient_len());
        SubsetOfX {
            member: self
                .member
                .iter()
                .zip(other.member.iter())
                .map(|(&a, &b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &SubsetOfX) -> SubsetOfX {
        debug_assert_eq!(self.ambient_len(), other.ambient_len());
        SubsetOfX {
            member: self
                .member
                .iter()
                .zip(other.member.iter())
                .map(|(&a, &b)| a & b)
                .collect(),
        }
    }

    /// Set difference self − other.
    pub fn minus(&self, other: &SubsetOfX) -> SubsetOfX {
        debug_assert_eq!(self.ambient_len(), other.ambient_len());
        SubsetOfX {
            member: self
                .member
                .iter()
                .zip(other.member.iter())
                .map(|(&a, &b)| a & !b)
                .collect(),
        }
    }

    pub fn symmetric_difference(&self, other: &SubsetOfX) -> SubsetOfX {
        SubsetOfX {
            member: self
                .member
                .iter()
                .zip(other.member.iter())
                .map(|(&a, &b)| a ^ b)
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &SubsetOfX) -> bool {
        self.member
            .iter()
            .zip(other.member.iter())
            .all(|(&a, &b)| !a || b)
    }

    /// The translated set gS = {x : g·x ∈ S}.  This is the convention
    /// under which conjugating a subset projector by the translation
    /// unitary lands on the translated subset's projector; it is the
    /// image of S under the inverse point map.
    pub fn translate(&self, action: &GroupAction, g: usize) -> SubsetOfX {
        let mut out = SubsetOfX::empty(self.ambient_len());
        for x in 0..self.ambient_len() {
            if self.contains(action.act(g, x)) {
                out.insert(x);
            }
        }
        out
    }
}

/// A finite group, presented by its Cayley table.  Element 0 is the
/// identity; `table[a * n + b]` is the product a·b.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroup {
    elements: Vec<String>,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table: dimensions, closure range, identity at index
    /// 0, Latin-square rows/columns, two-sided inverses, associativity.
    pub fn new(elements: Vec<String>, table: Vec<usize>) -> Result<Self, Error> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidGroup(String::from("no elements")));
        }
        if table.len() != n * n {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        for (k, &v) in table.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidGroup(format!(
                    "table entry {v} at position {k} out of range"
                )));
            }
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            if mul(0, a) != a || mul(a, 0) != a {
                return Err(Error::InvalidGroup(format!(
                    "element 0 is not a two-sided identity at element {a}"
                )));
            }
        }
        for a in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for b in 0..n {
                seen_row[mul(a, b)] = true;
                seen_col[mul(b, a)] = true;
            }
            if seen_row.iter().any(|&s| !s) || seen_col.iter().any(|&s| !s) {
                return Err(Error::InvalidGroup(format!(
                    "row or column {a} is not a permutation"
                )));
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul(a, b) == 0 && mul(b, a) == 0 {
                    inverses[a] = b;
                }
            }
            if inverses[a] == usize::MAX {
                return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            elements,
            table,
            inverses,
        })
    }

    /// The cyclic group Z_n with elements labelled g0..g(n-1), g0 = id.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let elements = (0..n).map(|i| format!("g{i}")).collect();
        let mut table = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = (a + b) % n;
            }
        }
        FiniteGroup::new(elements, table).expect("cyclic table is always valid")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn label(&self, g: usize) -> &str {
        &self.elements[g]
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// An action of a finite group on the points of a finite space, given by
/// a table `act[g * n_x + x] = g·x` and validated against the action
/// axioms (identity, compatibility with the product, bijectivity).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAction {
    n_points: usize,
    act: Vec<usize>,
}

impl GroupAction {
    pub fn new(group: &FiniteGroup, n_points: usize, act: Vec<usize>) -> Result<Self, Error> {
        let ng = group.order();
        if act.len() != ng * n_points {
            return Err(Error::InvalidAction(format!(
                "action table has {} entries, expected {}",
                act.len(),
                ng * n_points
            )));
        }
        for (k, &v) in act.iter().enumerate() {
            if v >= n_points {
                return Err(Error::InvalidAction(format!(
                    "action entry {v} at position {k} out of range"
                )));
            }
        }
        let a = |g: usize, x: usize| act[g * n_points + x];
        for x in 0..n_points {
            if a(0, x) != x {
                return Err(Error::InvalidAction(format!("identity moves point {x}")));
            }
        }
        for g in 0..ng {
            let mut seen = vec![false; n_points];
            for x in 0..n_points {
                seen[a(g, x)] = true;
            }
            if seen.iter().any(|&s| !s) {
                return Err(Error::InvalidAction(format!(
                    "element {g} does not act bijectively"
                )));
            }
        }
        for g in 0..ng {
            for h in 0..ng {
                let gh = group.mul(g, h);
                for x in 0..n_points {
                    if a(g, a(h, x)) != a(gh, x) {
                        return Err(Error::InvalidAction(format!(
                            "composition fails: g={g}, h={h}, x={x}"
                        )));
                    }
                }
            }
        }
        Ok(GroupAction { n_points, act })
    }

    /// The group acting on itself by left translation: g·h = gh.
    pub fn left_translation(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut act = vec![0usize; n * n];
        for g in 0..n {
            for h in 0..n {
                act[g * n + h] = group.mul(g, h);
            }
        }
        GroupAction {
            n_points: n,
            act,
        }
    }

    /// Z_n rotating n points: g_k · x_j = x_{(j+k) mod n}.
    pub fn cyclic_rotation(n: usize) -> (FiniteGroup, Self) {
        let group = FiniteGroup::cyclic(n);
        let action = GroupAction::left_translation(&group);
        (group, action)
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.n_points + x]
    }
}

/// Verdict of the freedom axiom: every non-identity element must move
/// every positive-mass point.
#[derive(Debug, Clone, PartialEq)]
pub enum Freedom {
    Free,
    /// Witness: a non-identity g fixing a positive-mass point x.
    FixedPoint { g: usize, x: usize },
}

/// Verdict of the ergodicity axiom.
#[derive(Debug, Clone, PartialEq)]
pub enum Ergodicity {
    Ergodic,
    /// Witness: an invariant subset with 0 < μ(S) < μ(X).
    InvariantSubset { subset: SubsetOfX },
}

/// Verdict of the measure-invariance axiom.
#[derive(Debug, Clone, PartialEq)]
pub enum Invariance {
    Invariant,
    /// Witness: μ(g·x) ≠ μ(x).
    Scaled {
        g: usize,
        x: usize,
        before: f64,
        after: f64,
    },
}

/// Checks freedom: for every g ≠ 1 the fixed set has measure zero.
pub fn check_freedom(space: &MeasureSpace, group: &FiniteGroup, action: &GroupAction) -> Freedom {
    for g in 1..group.order() {
        for x in 0..space.len() {
            if space.mass(x) > 0.0 && action.act(g, x) == x {
                return Freedom::FixedPoint { g, x };
            }
        }
    }
    Freedom::Free
}

/// Orbit partition of all points under the group.
pub fn orbits(group: &FiniteGroup, action: &GroupAction) -> Vec<Vec<usize>> {
    let n = action.n_points();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut orbit = Vec::new();
        for g in 0..group.order() {
            let y = action.act(g, x);
            if !seen[y] {
                seen[y] = true;
                orbit.push(y);
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Checks ergodicity via the orbit criterion: an invariant subset is a
/// union of orbits, so the action is ergodic exactly when at most one
/// orbit carries positive mass.  Returns the first positive-mass orbit as
/// the witness otherwise.
pub fn check_ergodicity(
    space: &MeasureSpace,
    group: &FiniteGroup,
    action: &GroupAction,
) -> Ergodicity {
    let mut positive: Vec<Vec<usize>> = Vec::new();
    for orbit in orbits(group, action) {
        if orbit.iter().any(|&x| space.mass(x) > 0.0) {
            positive.push(orbit);
        }
    }
    if positive.len() <= 1 {
        Ergodicity::Ergodic
    } else {
        let mut subset = SubsetOfX::empty(space.len());
        for &x in &positive[0] {
            subset.insert(x);
        }
        Ergodicity::InvariantSubset { subset }
    }
}

/// Exhaustive ergodicity check over all 2^|X| subsets; exponential, meant
/// as a cross-check oracle for small spaces.
pub fn check_ergodicity_exhaustive(
    space: &MeasureSpace,
    group: &FiniteGroup,
    action: &GroupAction,
) -> Ergodicity {
    let n = space.len();
    assert!(n <= 20, "exhaustive ergodicity oracle is limited to 20 points");
    let total = space.total_mass();
    for bits in 0u32..(1u32 << n) {
        let mut s = SubsetOfX::empty(n);
        for x in 0..n {
            if bits & (1 << x) != 0 {
                s.insert(x);
            }
        }
        // Invariance up to measure zero: μ(gS − S) = 0 for all g.
        let invariant = (0..group.order()).all(|g| {
            let moved = s.translate(action, g).minus(&s);
            space.measure(&moved) == 0.0
        });
        if !invariant {
            continue;
        }
        let m = space.measure(&s);
        if m > 0.0 && m < total {
            return Ergodicity::InvariantSubset { subset: s };
        }
    }
    Ergodicity::Ergodic
}

/// Checks measure invariance μ(g·x) = μ(x) for all g, x.
pub fn check_invariance(
    space: &MeasureSpace,
    group: &FiniteGroup,
    action: &GroupAction,
) -> Invariance {
    let tol = 1e-12 * space.total_mass().max(1.0);
    for g in 0..group.order() {
        for x in 0..space.len() {
            let before = space.mass(x);
            let after = space.mass(action.act(g, x));
            if libm::fabs(after - before) > tol {
                return Invariance::Scaled { g, x, before, after };
            }
        }
    }
    Invariance::Invariant
}

/// Radon–Nikodym factor κ_g(x) = μ(gx)/μ(x).  By convention κ = 1 on
/// zero-mass points mapping to zero-mass points.
pub fn radon_nikodym(
    space: &MeasureSpace,
    action: &GroupAction,
    g: usize,
    x: usize,
) -> Result<f64, Error> {
    let num = space.mass(action.act(g, x));
    let den = space.mass(x);
    if den == 0.0 {
        if num == 0.0 {
            Ok(1.0)
        } else {
            Err(Error::ZeroMassDivision { point: x })
        }
    } else {
        Ok(num / den)
    }
}
