//! Smash products `R#kG`, `R#(kG)°`, the integral idempotent and pertinency.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::action::GroupAction;
use crate::algebra::{
    gk_estimate, reconstruct_series, Confidence, GkDim, GradedAlgebra, GrowthEstimate, Provenance,
    SeriesKind,
};
use crate::error::{Error, Result};
use crate::kernel::rewriting::CompletionOptions;
use crate::kernel::{CycloScalar, Matrix, NcPoly, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmashKind {
    Group,
    DualGroup,
}

impl SmashKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SmashKind::Group => "GROUP",
            SmashKind::DualGroup => "DUAL_GROUP",
        }
    }
}

/// Multiplication table of a finite group; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
}

fn matrix_key(m: &Matrix) -> String {
    format!("{m:?}")
}

impl GroupTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<GroupTable> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidInput("malformed group table".into()));
        }
        if (0..n).any(|i| table[0][i] != i || table[i][0] != i) {
            return Err(Error::InvalidInput("element 0 must be the identity".into()));
        }
        for row in &table {
            let mut seen = vec![false; n];
            for &x in row {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidInput("group table is not a Latin square".into()));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidInput("group table is not associative".into()));
                    }
                }
            }
        }
        Ok(GroupTable { table })
    }

    pub fn trivial() -> GroupTable {
        GroupTable {
            table: vec![vec![0]],
        }
    }

    /// `Z/n_1 × ⋯ × Z/n_k`, elements indexed in mixed radix (first factor fastest).
    pub fn cyclic_product(orders: &[usize]) -> Result<GroupTable> {
        if orders.iter().any(|&n| n == 0) {
            return Err(Error::InvalidInput("cyclic factor of order 0".into()));
        }
        let n: usize = orders.iter().product();
        let digits = |mut x: usize| -> Vec<usize> {
            orders
                .iter()
                .map(|&m| {
                    let d = x % m;
                    x /= m;
                    d
                })
                .collect()
        };
        let index = |d: &[usize]| -> usize {
            let mut x = 0;
            for (k, &m) in orders.iter().enumerate().rev() {
                x = x * m + d[k];
            }
            x
        };
        let table = (0..n)
            .map(|a| {
                let da = digits(a);
                (0..n)
                    .map(|b| {
                        let db = digits(b);
                        let s: Vec<usize> = (0..orders.len())
                            .map(|k| (da[k] + db[k]) % orders[k])
                            .collect();
                        index(&s)
                    })
                    .collect()
            })
            .collect();
        Ok(GroupTable { table })
    }

    /// Element index of a tuple in [`GroupTable::cyclic_product`].
    pub fn cyclic_index(orders: &[usize], digits: &[i64]) -> usize {
        let mut x = 0;
        for (k, &m) in orders.iter().enumerate().rev() {
            x = x * m + digits[k].rem_euclid(m as i64) as usize;
        }
        x
    }

    /// Abstract group generated by invertible matrices (BFS order, identity first).
    /// Returns the table and the indices of the generators.
    pub fn from_matrices(gens: &[Matrix], max_size: usize) -> Result<(GroupTable, Vec<usize>)> {
        let size = gens.first().map_or(1, |m| m.rows());
        let mut elements = vec![Matrix::identity(size)];
        let mut index: HashMap<String, usize> = HashMap::new();
        index.insert(matrix_key(&elements[0]), 0);
        let mut gen_idx = Vec::new();
        for m in gens {
            if m.rows() != size || m.cols() != size || m.inverse().is_none() {
                return Err(Error::InvalidInput("grading group matrices must be invertible and of equal size".into()));
            }
            let k = matrix_key(m);
            let i = *index.entry(k).or_insert_with(|| {
                elements.push(m.clone());
                elements.len() - 1
            });
            gen_idx.push(i);
        }
        let mut next = 1;
        while next < elements.len() {
            for s in gens {
                let p = elements[next].mul(s);
                let k = matrix_key(&p);
                if !index.contains_key(&k) {
                    if elements.len() >= max_size {
                        return Err(Error::GroupTooLarge { max_size });
                    }
                    elements.push(p);
                    index.insert(k, elements.len() - 1);
                }
            }
            next += 1;
        }
        let n = elements.len();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| index[&matrix_key(&elements[i].mul(&elements[j]))])
                    .collect()
            })
            .collect();
        Ok((GroupTable { table }, gen_idx))
    }

    pub fn of_action(g: &GroupAction) -> GroupTable {
        let n = g.order();
        GroupTable {
            table: (0..n).map(|i| (0..n).map(|j| g.product(i, j)).collect()).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.table[a].iter().position(|&x| x == 0).unwrap()
    }
}

/// A grading of the generators of `R` by a finite group (declaration order).
#[derive(Clone, Debug)]
pub struct GroupGrading {
    pub group: GroupTable,
    pub degrees: Vec<usize>,
}

#[derive(Debug)]
pub struct SmashAlgebra {
    base: Arc<GradedAlgebra>,
    kind: SmashKind,
    carrier: GradedAlgebra,
    e: NcPoly,
    dims0: usize,
    group_order: usize,
}

impl SmashAlgebra {
    pub fn base(&self) -> &Arc<GradedAlgebra> {
        &self.base
    }

    pub fn kind(&self) -> SmashKind {
        self.kind
    }

    /// The presentation of `B = R#H`.
    pub fn carrier(&self) -> &GradedAlgebra {
        &self.carrier
    }

    /// The integral idempotent in the carrier's letters.
    pub fn idempotent(&self) -> &NcPoly {
        &self.e
    }

    pub fn dims0(&self) -> usize {
        self.dims0
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// Whether `e² − e` reduces to zero.
    pub fn idempotent_checks(&self) -> Result<bool> {
        let e2 = &self.e * &self.e;
        Ok(self.carrier.normal_form(&(&e2 - &self.e))?.is_zero())
    }

    fn verify_dims(&self) -> Result<()> {
        let n = self.carrier.complete_to();
        for d in 0..=n {
            let b = self.carrier.dim(d)?;
            let r = self.base.dim(d)?;
            if b != self.group_order * r {
                return Err(Error::Inconsistent(format!(
                    "dim B_{d} = {b} but |G|·dim R_{d} = {}",
                    self.group_order * r
                )));
            }
        }
        Ok(())
    }

    /// Presentation of `B/(e)` with the same degree bound.
    pub fn quotient(&self, max_rules: Option<usize>) -> Result<GradedAlgebra> {
        let mut rels = self.carrier.relations().to_vec();
        rels.push(self.e.clone());
        let opts = CompletionOptions {
            degree_bound: self.carrier.degree_bound(),
            max_rules,
        };
        GradedAlgebra::from_internal(
            self.carrier.names().to_vec(),
            self.carrier.degrees().to_vec(),
            rels,
            opts,
            Provenance::Derived("smash_quotient".into()),
            false,
        )
    }
}

fn carrier_word(letters: &[u16], degrees: &[u32]) -> NcPoly {
    NcPoly::word(Word::new(letters, degrees))
}

/// `R#kG`: group letters have degree 0 and sit below every generator of `R`.
pub fn smash_group(g: &GroupAction, max_rules: Option<usize>) -> Result<SmashAlgebra> {
    let r = g.algebra().clone();
    let ng = r.num_generators();
    let order = g.order();
    let mut names = r.names().to_vec();
    let mut degrees = r.degrees().to_vec();
    // element i ≠ identity has letter ng + i - 1
    let letter = |i: usize| -> Option<u16> { (i != 0).then(|| (ng + i - 1) as u16) };
    for i in 1..order {
        names.push(format!("g{i}"));
        degrees.push(0);
    }
    let mut rels = r.relations().to_vec();
    for i in 1..order {
        let t = letter(i).unwrap();
        let inv = g.element(g.inverse(i));
        for xi in 0..ng {
            // x_i g = g · g⁻¹(x_i)
            let mut tail = NcPoly::zero();
            for k in 0..ng {
                let c = inv.get(k, xi);
                if !c.is_zero() {
                    tail.add_term(Word::new(&[t, k as u16], &degrees), c);
                }
            }
            rels.push(&carrier_word(&[xi as u16, t], &degrees) - &tail);
        }
        for j in 1..order {
            let u = letter(j).unwrap();
            let p = g.product(i, j);
            let rhs = match letter(p) {
                Some(l) => carrier_word(&[l], &degrees),
                None => NcPoly::one(),
            };
            rels.push(&carrier_word(&[t, u], &degrees) - &rhs);
        }
    }
    let opts = CompletionOptions {
        degree_bound: r.degree_bound(),
        max_rules,
    };
    let carrier = GradedAlgebra::from_internal(
        names,
        degrees.clone(),
        rels,
        opts,
        Provenance::Derived("smash_group".into()),
        false,
    )?;
    if carrier.rewriting_system().budget_exceeded() {
        return Err(Error::Budget("smash product completion".into()));
    }
    let mut e = NcPoly::one();
    for i in 1..order {
        e = &e + &carrier_word(&[letter(i).unwrap()], &degrees);
    }
    let e = e.scale(&CycloScalar::from_ratio(1, order as i64));
    let s = SmashAlgebra {
        base: r,
        kind: SmashKind::Group,
        carrier,
        e,
        dims0: order,
        group_order: order,
    };
    s.verify_dims()?;
    Ok(s)
}

/// `R#(kG)°` for a `G`-grading of `R`; `e = p_identity`.
pub fn smash_dual_group(
    r: Arc<GradedAlgebra>,
    grading: &GroupGrading,
    max_rules: Option<usize>,
) -> Result<SmashAlgebra> {
    let ng = r.num_generators();
    let grp = &grading.group;
    let order = grp.order();
    if grading.degrees.len() != ng || grading.degrees.iter().any(|&d| d >= order) {
        return Err(Error::InvalidInput(
            "grading must assign a group element to every generator".into(),
        ));
    }
    let declared = r.declared_order();
    let gdeg: Vec<usize> = (0..ng).map(|l| grading.degrees[declared[l]]).collect();
    for rel in r.relations() {
        let mut degs = rel.terms().map(|(w, _)| {
            w.letters()
                .iter()
                .fold(0usize, |acc, &l| grp.mul(acc, gdeg[l as usize]))
        });
        if let Some(first) = degs.next() {
            if degs.any(|d| d != first) {
                return Err(Error::Presentation(format!(
                    "relation {} is not homogeneous for the group grading",
                    r.display(rel)
                )));
            }
        }
    }
    let mut names = r.names().to_vec();
    let mut degrees = r.degrees().to_vec();
    for h in 0..order {
        names.push(format!("p{h}"));
        degrees.push(0);
    }
    let p = |h: usize| (ng + h) as u16;
    let mut rels = r.relations().to_vec();
    for (xi, &gamma) in gdeg.iter().enumerate() {
        for h in 0..order {
            // x p_h = p_{γh} x
            rels.push(
                &carrier_word(&[xi as u16, p(h)], &degrees)
                    - &carrier_word(&[p(grp.mul(gamma, h)), xi as u16], &degrees),
            );
        }
    }
    for a in 0..order {
        for b in 0..order {
            let mut rel = carrier_word(&[p(a), p(b)], &degrees);
            if a == b {
                rel = &rel - &carrier_word(&[p(a)], &degrees);
            }
            rels.push(rel);
        }
    }
    let mut unit = NcPoly::zero();
    for h in 0..order {
        unit = &unit + &carrier_word(&[p(h)], &degrees);
    }
    rels.push(&unit - &NcPoly::one());
    let opts = CompletionOptions {
        degree_bound: r.degree_bound(),
        max_rules,
    };
    let carrier = GradedAlgebra::from_internal(
        names,
        degrees.clone(),
        rels,
        opts,
        Provenance::Derived("smash_dual_group".into()),
        false,
    )?;
    if carrier.rewriting_system().budget_exceeded() {
        return Err(Error::Budget("smash product completion".into()));
    }
    let s = SmashAlgebra {
        base: r,
        kind: SmashKind::DualGroup,
        carrier,
        e: carrier_word(&[p(0)], &degrees),
        dims0: order,
        group_order: order,
    };
    s.verify_dims()?;
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certainty {
    Exact,
    LowerBound,
    Heuristic,
}

impl Certainty {
    pub fn as_str(self) -> &'static str {
        match self {
            Certainty::Exact => "EXACT",
            Certainty::LowerBound => "LOWER_BOUND",
            Certainty::Heuristic => "HEURISTIC",
        }
    }
}

impl fmt::Display for Certainty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Pty {
    Value(i64),
    Approx(f64),
    Undecided,
}

impl Pty {
    pub fn value(self) -> Option<i64> {
        match self {
            Pty::Value(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Pty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pty::Value(v) => write!(f, "{v}"),
            Pty::Approx(x) => write!(f, "~{x:.3}"),
            Pty::Undecided => f.write_str("UNDECIDED"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PertinencyReport {
    pub quotient_dims: Vec<usize>,
    pub quotient_complete_to: u32,
    pub quotient_gk: GrowthEstimate,
    pub base_gk: GrowthEstimate,
    pub pty: Pty,
    pub certainty: Certainty,
    /// The quotient is zero (trivial group): pty is reported as GKdim R.
    pub degenerate: bool,
    /// Which algebra the quotient dimension was computed over.
    pub computed_over: &'static str,
}

/// `Pty = GKdim R − GKdim B/(e)`.
pub fn pertinency(s: &SmashAlgebra, guard: usize, max_rules: Option<usize>) -> Result<PertinencyReport> {
    let base = s.base();
    let base_gk = gk_estimate(base, guard)?;
    let q = s.quotient(max_rules)?;
    let quotient_dims = q.dims()?;
    let coeffs: Vec<CycloScalar> = quotient_dims
        .iter()
        .map(|&d| CycloScalar::from_i64(d as i64))
        .collect();
    let kind = SeriesKind::Hilbert {
        max_generator_degree: base.max_generator_degree(),
    };
    let quotient_gk = reconstruct_series(&coeffs, guard, kind)?;
    let heuristic = |g: &GrowthEstimate| g.confidence == Confidence::Heuristic;
    let truncated = q.complete_to() < q.degree_bound();
    let mut degenerate = false;
    let pty = match (base_gk.gkdim, quotient_gk.gkdim) {
        (GkDim::Exact(b), GkDim::NegInfinity) => {
            degenerate = true;
            Pty::Value(b as i64)
        }
        (GkDim::Exact(b), GkDim::Exact(qd)) => Pty::Value(b as i64 - qd as i64),
        (b, qd) => match (b.as_f64(), qd.as_f64()) {
            (Some(x), Some(y)) if x.is_finite() && y.is_finite() => Pty::Approx(x - y),
            _ => Pty::Undecided,
        },
    };
    let certainty = if heuristic(&base_gk) || heuristic(&quotient_gk) || !matches!(pty, Pty::Value(_)) {
        Certainty::Heuristic
    } else if truncated {
        Certainty::LowerBound
    } else {
        Certainty::Exact
    };
    Ok(PertinencyReport {
        quotient_dims,
        quotient_complete_to: q.complete_to(),
        quotient_gk,
        base_gk,
        pty,
        certainty,
        degenerate,
        computed_over: "B",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::close_group;
    use crate::algebra::{catalog, make_algebra, Family};

    fn s(v: i64) -> CycloScalar {
        CycloScalar::from_i64(v)
    }

    fn swap() -> Matrix {
        Matrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]])
    }

    fn minus_one_plane(n: u32) -> Arc<GradedAlgebra> {
        Arc::new(catalog(&Family::uniform_skew(2, &s(-1)), n).unwrap().0)
    }

    #[test]
    fn trivial_group_smash_is_base() {
        let g = close_group(minus_one_plane(6), &[], 2).unwrap();
        let b = smash_group(&g, None).unwrap();
        assert_eq!(b.carrier().dims().unwrap(), b.base().dims().unwrap());
        assert_eq!(b.idempotent(), &NcPoly::one());
        let p = pertinency(&b, 5, None).unwrap();
        assert!(p.degenerate);
        assert_eq!(p.pty, Pty::Value(2));
    }

    #[test]
    fn swap_smash_dims_and_idempotent() {
        let g = close_group(minus_one_plane(8), &[swap()], 4).unwrap();
        let b = smash_group(&g, None).unwrap();
        let dims = b.carrier().dims().unwrap();
        assert_eq!(dims, (0..=8).map(|n| 2 * (n + 1)).collect::<Vec<_>>());
        assert!(b.idempotent_checks().unwrap());
    }

    #[test]
    fn swap_pertinency_is_two() {
        let g = close_group(minus_one_plane(10), &[swap()], 4).unwrap();
        let b = smash_group(&g, None).unwrap();
        let p = pertinency(&b, 5, None).unwrap();
        assert_eq!(p.pty, Pty::Value(2));
        assert_eq!(p.certainty, Certainty::Exact);
        assert!(p.quotient_gk.finite_dimensional);
    }

    #[test]
    fn dual_group_toy() {
        let a = Arc::new(make_algebra(vec![("x".into(), 1)], vec![], 8).unwrap());
        let grading = GroupGrading {
            group: GroupTable::cyclic_product(&[2]).unwrap(),
            degrees: vec![1],
        };
        let b = smash_dual_group(a, &grading, None).unwrap();
        let q = b.quotient(None).unwrap();
        assert_eq!(q.dims().unwrap(), vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
        let p = pertinency(&b, 5, None).unwrap();
        assert_eq!(p.pty, Pty::Value(1));
        assert_eq!(p.certainty, Certainty::Exact);
        let unit = b.carrier().names().iter().filter(|n| n.starts_with('p')).count();
        assert_eq!(unit, 2);
    }

    #[test]
    fn group_tables() {
        let t = GroupTable::cyclic_product(&[2, 3]).unwrap();
        assert_eq!(t.order(), 6);
        assert!(GroupTable::new(t.table.clone()).is_ok());
        let i = CycloScalar::root_of_unity(4, 1);
        let (t, gens) = GroupTable::from_matrices(&[Matrix::diagonal(&[i])], 16).unwrap();
        assert_eq!(t.order(), 4);
        assert_eq!(gens, vec![1]);
    }
}
