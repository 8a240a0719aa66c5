//! Defining representations of the b, c, d families in Cartan-Weyl layout.
//!
//! The construction follows the standard recipe: Cartan generators down the
//! main diagonal (mirrored with a sign about the antidiagonal, with a single
//! central zero for b_n), simple-root ladders down the first sub-diagonal,
//! and every remaining lower cell carrying the ladder whose root equals the
//! difference of the diagonal weights it connects — equivalently the multiset
//! sum of the simple labels on the sub-diagonal segment it subtends. Signs
//! are solved from the transpose constraint `x^T = −G x G^{-1}` rather than
//! copied from a pattern, and `√2` normalisation factors fall out of
//! `Tr x_i x_j = 2δ_ij`.

use crate::matrix::SurdMat;
use crate::rootsys::{Family, RootLabel, RootSystem};
use crate::scalar::{rat, rat_int, Surd};
use crate::{Error, Result};

/// Content of one lower-triangular layout cell.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CellContent {
    Zero,
    Cartan { index: usize, negated: bool },
    Ladder { label: RootLabel, sign: i8, double: bool },
}

/// One cell of the L-matrix layout (1-based indices, lower triangle).
#[derive(Clone, Debug)]
pub struct LayoutCell {
    pub row: usize,
    pub col: usize,
    pub content: CellContent,
}

fn weights(family: Family, n: usize) -> Vec<Vec<i64>> {
    let dim = family.defining_dim(n);
    let mut w = Vec::with_capacity(dim);
    for k in 0..n {
        let mut v = vec![0i64; n];
        v[k] = 1;
        w.push(v);
    }
    if family == Family::B {
        w.push(vec![0i64; n]);
    }
    for k in (0..n).rev() {
        let mut v = vec![0i64; n];
        v[k] = -1;
        w.push(v);
    }
    debug_assert_eq!(w.len(), dim);
    w
}

/// Sign relation imposed by `x^T = −G x G^{-1}` between a lower cell `(p,q)`
/// and its antidiagonal mirror `(D+1−q, D+1−p)` (1-based).
fn mirror_factor(family: Family, dim: usize, p: usize, q: usize) -> i64 {
    match family {
        Family::C => {
            let n = dim / 2;
            let sigma = |a: usize| if a <= n { 1i64 } else { -1 };
            -sigma(p) * sigma(q)
        }
        Family::B | Family::D => -1,
        Family::A => unreachable!("no layout recipe for the a family"),
    }
}

/// Builds the lower-triangular layout (diagonal included) for b, c, d.
pub fn build_layout(family: Family, n: usize) -> Result<Vec<LayoutCell>> {
    if family == Family::A {
        return Err(Error::FamilyMismatch(
            "the a-family defining basis is the hermitian su(n+1) set, not a layout".into(),
        ));
    }
    let roots = RootSystem::new(family, n)?;
    let dim = family.defining_dim(n);
    let wts = weights(family, n);
    let mut cells = Vec::new();
    // diagonal
    for k in 1..=dim {
        let content = if family == Family::B && k == n + 1 {
            CellContent::Zero
        } else if k <= n {
            CellContent::Cartan {
                index: k,
                negated: false,
            }
        } else {
            CellContent::Cartan {
                index: dim + 1 - k,
                negated: true,
            }
        };
        cells.push(LayoutCell {
            row: k,
            col: k,
            content,
        });
    }
    // ladder cells, grouped per positive root so the transpose constraint can
    // fix the relative signs within each group
    let mut group: Vec<Vec<(usize, usize)>> = vec![Vec::new(); roots.positive.len()];
    for i in 2..=dim {
        for j in 1..i {
            let diff: Vec<i64> = (0..n).map(|k| wts[j - 1][k] - wts[i - 1][k]).collect();
            match roots.index_of_vector(&diff) {
                Some(a) => group[a].push((i, j)),
                None => cells.push(LayoutCell {
                    row: i,
                    col: j,
                    content: CellContent::Zero,
                }),
            }
        }
    }
    for (a, cell_list) in group.iter().enumerate() {
        let label = &roots.positive[a].label;
        if cell_list.is_empty() || cell_list.len() > 2 {
            return Err(Error::Construction(format!(
                "root {label} occupies {} cells",
                cell_list.len()
            )));
        }
        let double = cell_list.len() == 1;
        let mut signs: Vec<(usize, usize, i8)> = Vec::new();
        let mut assigned: std::collections::HashMap<(usize, usize), i8> =
            std::collections::HashMap::new();
        for &(p, q) in cell_list {
            if assigned.contains_key(&(p, q)) {
                continue;
            }
            assigned.insert((p, q), 1);
            let mirror = (dim + 1 - q, dim + 1 - p);
            let factor = mirror_factor(family, dim, p, q) as i8;
            if mirror == (p, q) {
                if factor != 1 {
                    return Err(Error::Construction(format!(
                        "transpose constraint forces cell ({p},{q}) of {label} to vanish"
                    )));
                }
            } else {
                assigned.insert(mirror, factor);
            }
        }
        for &(p, q) in cell_list {
            signs.push((p, q, assigned[&(p, q)]));
        }
        for (p, q, sign) in signs {
            cells.push(LayoutCell {
                row: p,
                col: q,
                content: CellContent::Ladder {
                    label: label.clone(),
                    sign,
                    double,
                },
            });
        }
    }
    cells.sort_by_key(|c| (c.row, c.col));
    Ok(cells)
}

/// Renders the lower-triangular layout as a grid of words: `"x"` for Cartan
/// cells, `"0"` for zeros, and the signed root word (with an optional `√2`
/// marker) otherwise. Used to compare against frozen schematic displays.
pub fn layout_label_grid(cells: &[LayoutCell], dim: usize) -> Vec<Vec<String>> {
    let mut grid = vec![vec![String::new(); dim]; dim];
    for cell in cells {
        let s = match &cell.content {
            CellContent::Zero => "0".to_string(),
            CellContent::Cartan { .. } => "x".to_string(),
            CellContent::Ladder { label, sign, double } => {
                let mut s = String::new();
                if *sign < 0 {
                    s.push('-');
                }
                if *double {
                    s.push_str("r2*");
                }
                s.push_str(&label.word());
                s
            }
        };
        grid[cell.row - 1][cell.col - 1] = s;
    }
    grid
}

/// The metric form: the symplectic `J` for c_n (antidiagonal `+1` in the top
/// half, `−1` in the bottom half) or the symmetric antidiagonal `M` for b/d.
pub fn metric_form(family: Family, n: usize) -> Result<SurdMat> {
    family.check_rank(n)?;
    let dim = family.defining_dim(n);
    let mut m = SurdMat::zeros(dim, dim);
    for a in 0..dim {
        let sign = match family {
            Family::C => {
                if a < dim / 2 {
                    1
                } else {
                    -1
                }
            }
            Family::B | Family::D => 1,
            Family::A => {
                return Err(Error::FamilyMismatch("no metric form for the a family".into()))
            }
        };
        m.set(a, dim - 1 - a, Surd::from_int(sign));
    }
    Ok(m)
}

/// A ladder pair `e_{+α}, e_{−α}` for one positive root.
#[derive(Clone, Debug)]
pub struct LadderPair {
    pub label: RootLabel,
    pub plus: SurdMat,
    pub minus: SurdMat,
}

/// The defining-representation package: metric, Cartan matrices, ladder
/// pairs, and the orthonormal hermitian basis `x_i` (order: `h_1..h_n`, then
/// `u_α, v_α` pairs in positive-root order).
#[derive(Clone, Debug)]
pub struct RepBundle {
    pub family: Family,
    pub rank: usize,
    pub dim_v: usize,
    pub metric: SurdMat,
    pub cartan: Vec<SurdMat>,
    pub ladders: Vec<LadderPair>,
    pub basis_x: Vec<SurdMat>,
    pub roots: RootSystem,
}

impl RepBundle {
    pub fn dim_g(&self) -> usize {
        self.basis_x.len()
    }

    /// Index of `u_α` in `basis_x`.
    pub fn u_index(&self, alpha: usize) -> usize {
        self.rank + 2 * alpha
    }

    /// Index of `v_α` in `basis_x`.
    pub fn v_index(&self, alpha: usize) -> usize {
        self.rank + 2 * alpha + 1
    }

    fn metric_inverse(&self) -> SurdMat {
        match self.family {
            Family::C => self.metric.neg(),
            _ => self.metric.clone(),
        }
    }

    /// `G m G^{-1}` with `G^{-1} = ∓G` folded in exactly.
    pub fn metric_conjugate(&self, m: &SurdMat) -> SurdMat {
        self.metric.matmul(m).matmul(&self.metric_inverse())
    }

    /// The involution `σ(m) = G m^T G^{-1}`; the `x_i` span its −1 eigenspace
    /// and the completion basis spans the +1 eigenspace.
    pub fn metric_conj_transpose(&self, m: &SurdMat) -> SurdMat {
        self.metric.matmul(&m.transpose()).matmul(&self.metric_inverse())
    }
}

/// Realises the layout as exact matrices and assembles the hermitian basis,
/// verifying hermiticity, tracelessness, the trace normalisation and the
/// transpose constraint. Construction fails on the first violated invariant.
pub fn build_rep(family: Family, n: usize) -> Result<RepBundle> {
    let cells = build_layout(family, n)?;
    let roots = RootSystem::new(family, n)?;
    let dim = family.defining_dim(n);
    let metric = metric_form(family, n)?;

    let mut cartan = vec![SurdMat::zeros(dim, dim); n];
    let mut minus = vec![SurdMat::zeros(dim, dim); roots.positive.len()];
    let sqrt2 = Surd::sqrt_int(2)?;
    for cell in &cells {
        match &cell.content {
            CellContent::Zero => {}
            CellContent::Cartan { index, negated } => {
                let v = Surd::from_int(if *negated { -1 } else { 1 });
                cartan[*index - 1].set(cell.row - 1, cell.col - 1, v);
            }
            CellContent::Ladder { label, sign, double } => {
                let a = roots
                    .index_of_label(&label.word())
                    .ok_or_else(|| Error::Construction(format!("unknown label {label}")))?;
                let mut v = Surd::from_int(*sign as i64);
                if *double {
                    v = &v * &sqrt2;
                }
                minus[a].set(cell.row - 1, cell.col - 1, v);
            }
        }
    }

    let ladders: Vec<LadderPair> = roots
        .positive
        .iter()
        .zip(minus)
        .map(|(p, m)| LadderPair {
            label: p.label.clone(),
            plus: m.dagger(),
            minus: m,
        })
        .collect();

    // x basis: h_1..h_n then u_α, v_α with √2 e_{±α} = u_α ± i v_α
    let half_sqrt2 = Surd::sqrt_of_rational(&rat(1, 2))?;
    let mut basis_x: Vec<SurdMat> = cartan.clone();
    for lp in &ladders {
        let u = lp.plus.add(&lp.minus).scale(&half_sqrt2);
        let v = lp
            .plus
            .sub(&lp.minus)
            .scale(&half_sqrt2.mul_i())
            .neg();
        basis_x.push(u);
        basis_x.push(v);
    }

    let bundle = RepBundle {
        family,
        rank: n,
        dim_v: dim,
        metric,
        cartan,
        ladders,
        basis_x,
        roots,
    };
    verify_bundle(&bundle)?;
    Ok(bundle)
}

fn verify_bundle(rep: &RepBundle) -> Result<()> {
    // metric² = −1 (C) or +1 (B/D)
    let m2 = rep.metric.matmul(&rep.metric);
    let want = match rep.family {
        Family::C => SurdMat::scaled_identity(rep.dim_v, Surd::from_int(-1)),
        _ => SurdMat::identity(rep.dim_v),
    };
    if m2 != want {
        return Err(Error::Construction("metric square mismatch".into()));
    }
    for (i, x) in rep.basis_x.iter().enumerate() {
        if x.dagger() != *x {
            return Err(Error::Construction(format!("x_{i} is not hermitian")));
        }
        if !x.trace().is_zero() {
            return Err(Error::Construction(format!("x_{i} has nonzero trace")));
        }
        if x.transpose() != rep.metric_conjugate(x).neg() {
            return Err(Error::Construction(format!(
                "x_{i} violates the transpose constraint"
            )));
        }
        for (j, y) in rep.basis_x.iter().enumerate().skip(i) {
            let t = x.matmul(y).trace();
            let want = if i == j { Surd::from_int(2) } else { Surd::zero() };
            if t != want {
                return Err(Error::Construction(format!(
                    "Tr x_{i} x_{j} = {t}, expected {want}"
                )));
            }
        }
    }
    Ok(())
}

/// The generalized Gell-Mann basis of su(n): for each size step k = 2..n the
/// symmetric and antisymmetric pair matrices, then the diagonal matrix, all
/// normalised to `Tr λ_i λ_j = 2δ_ij`.
pub fn gellmann_basis(n: usize) -> Result<Vec<SurdMat>> {
    if n < 2 {
        return Err(Error::InvalidRank {
            family: 'a',
            rank: n,
        });
    }
    let mut out = Vec::with_capacity(n * n - 1);
    for k in 2..=n {
        for a in 1..k {
            let mut s = SurdMat::zeros(n, n);
            s.set(a - 1, k - 1, Surd::one());
            s.set(k - 1, a - 1, Surd::one());
            out.push(s);
            let mut t = SurdMat::zeros(n, n);
            t.set(a - 1, k - 1, -Surd::i());
            t.set(k - 1, a - 1, Surd::i());
            out.push(t);
        }
        let norm = Surd::sqrt_of_rational(&rat(2, (k * (k - 1)) as i64))?;
        let mut d = SurdMat::zeros(n, n);
        for t in 0..(k - 1) {
            d.set(t, t, norm.clone());
        }
        d.set(k - 1, k - 1, norm.scale(&rat_int(-((k - 1) as i64))));
        out.push(d);
    }
    Ok(out)
}

/// One verified commutation relation.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub description: String,
    pub pass: bool,
    /// Structure coefficient when the relation is a ladder-ladder closure.
    pub coefficient: Option<Surd>,
}

#[derive(Clone, Debug)]
pub struct CartanWeylReport {
    pub relations: Vec<RelationCheck>,
    pub pass: bool,
}

impl CartanWeylReport {
    /// Coefficient of a verified `[e_α, e_β] = N e_{α+β}` closure.
    pub fn closure_coefficient(&self, description: &str) -> Option<&Surd> {
        self.relations
            .iter()
            .find(|r| r.description == description)
            .and_then(|r| r.coefficient.as_ref())
    }
}

/// Verifies every Cartan-Weyl relation of the bundle exactly:
/// `[h_r, e_{±α}] = ±(r_α)_r e_{±α}`, `[e_α, e_{−α}] = r_α·h`, and for every
/// ladder pair that `[e_{±α}, e_{±β}]` is a nonzero multiple of the ladder of
/// the summed root exactly when that sum is a root, and zero otherwise.
pub fn check_cartan_weyl(rep: &RepBundle) -> CartanWeylReport {
    let mut relations = Vec::new();
    let roots = &rep.roots;
    let npos = roots.positive.len();
    let signed = |a: usize, s: i64| -> (&SurdMat, Vec<i64>, String) {
        let p = &roots.positive[a];
        let vec: Vec<i64> = p.vector.iter().map(|c| c * s).collect();
        if s > 0 {
            (&rep.ladders[a].plus, vec, format!("e[{}]", p.label))
        } else {
            (&rep.ladders[a].minus, vec, format!("e[-{}]", p.label))
        }
    };

    for a in 0..npos {
        for s in [1i64, -1] {
            let (e, vec, name) = signed(a, s);
            for (r, h) in rep.cartan.iter().enumerate() {
                let comm = SurdMat::commutator(h, e);
                let want = e.scale_rational(&rat_int(vec[r]));
                relations.push(RelationCheck {
                    description: format!("[h_{}, {name}] = {}·{name}", r + 1, vec[r]),
                    pass: comm == want,
                    coefficient: None,
                });
            }
        }
        // [e_α, e_{−α}] = r_α · h
        let comm = SurdMat::commutator(&rep.ladders[a].plus, &rep.ladders[a].minus);
        let mut want = SurdMat::zeros(rep.dim_v, rep.dim_v);
        for (r, h) in rep.cartan.iter().enumerate() {
            want = want.add(&h.scale_rational(&rat_int(roots.positive[a].vector[r])));
        }
        relations.push(RelationCheck {
            description: format!(
                "[e[{0}], e[-{0}]] = r·h",
                roots.positive[a].label
            ),
            pass: comm == want,
            coefficient: None,
        });
    }

    // ladder-ladder closure
    for a in 0..npos {
        for b in 0..npos {
            for (sa, sb) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                if a == b && sa != sb {
                    continue; // [e_α, e_{−α}] handled above
                }
                let (ea, va, na) = signed(a, sa);
                let (eb, vb, nb) = signed(b, sb);
                let sum: Vec<i64> = va.iter().zip(&vb).map(|(x, y)| x + y).collect();
                let comm = SurdMat::commutator(ea, eb);
                let (pass, coefficient, target) = match lookup_signed_root(roots, &sum) {
                    Some((c, sc)) => {
                        let (ec, _, nc) = signed(c, sc);
                        match proportionality(&comm, ec) {
                            Some(coef) if !coef.is_zero() => (true, Some(coef), nc),
                            _ => (false, None, nc),
                        }
                    }
                    None => (comm.is_zero(), None, "0".to_string()),
                };
                relations.push(RelationCheck {
                    description: format!("[{na}, {nb}] ∝ {target}"),
                    pass,
                    coefficient,
                });
            }
        }
    }

    let pass = relations.iter().all(|r| r.pass);
    CartanWeylReport { relations, pass }
}

fn lookup_signed_root(roots: &RootSystem, v: &[i64]) -> Option<(usize, i64)> {
    if let Some(a) = roots.index_of_vector(v) {
        return Some((a, 1));
    }
    let neg: Vec<i64> = v.iter().map(|c| -c).collect();
    roots.index_of_vector(&neg).map(|a| (a, -1))
}

/// `Some(k)` when `m = k·target` exactly with `target ≠ 0`.
fn proportionality(m: &SurdMat, target: &SurdMat) -> Option<Surd> {
    let (r, c, v) = target.iter().next()?;
    let k = m.get(r, c) * v.recip_single().ok()?;
    if m.sub(&target.scale(&k)).is_zero() {
        Some(k)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_layout_cells() {
        let cells = build_layout(Family::C, 2).unwrap();
        let grid = layout_label_grid(&cells, 4);
        assert_eq!(grid[1][0], "1");
        assert_eq!(grid[2][1], "r2*2");
        assert_eq!(grid[3][0], "r2*112");
        assert_eq!(grid[3][2], "-1");
        assert_eq!(grid[2][0], "12");
        assert_eq!(grid[3][1], "12");
    }

    #[test]
    fn b3_zero_corner_and_d4_fishtail_zero() {
        let cells = build_layout(Family::B, 3).unwrap();
        let grid = layout_label_grid(&cells, 7);
        assert_eq!(grid[6][0], "0");
        let cells = build_layout(Family::D, 4).unwrap();
        let grid = layout_label_grid(&cells, 8);
        assert_eq!(grid[4][3], "0");
    }

    #[test]
    fn metric_forms() {
        let j = metric_form(Family::C, 2).unwrap();
        assert_eq!(j.get(0, 3), Surd::from_int(1));
        assert_eq!(j.get(3, 0), Surd::from_int(-1));
        let m = metric_form(Family::B, 2).unwrap();
        for a in 0..5 {
            assert_eq!(m.get(a, 4 - a), Surd::from_int(1));
        }
        let j3 = metric_form(Family::C, 3).unwrap();
        assert_eq!(j3.get(2, 3), Surd::from_int(1));
        assert_eq!(j3.get(3, 2), Surd::from_int(-1));
    }

    #[test]
    fn build_rep_dimensions() {
        let rep = build_rep(Family::D, 3).unwrap();
        assert_eq!(rep.dim_v, 6);
        assert_eq!(rep.dim_g(), 15);
        let rep = build_rep(Family::B, 2).unwrap();
        assert_eq!(rep.dim_v, 5);
        assert_eq!(rep.dim_g(), 10);
    }

    #[test]
    fn cartan_weyl_c2_sqrt2_closure() {
        let rep = build_rep(Family::C, 2).unwrap();
        let report = check_cartan_weyl(&rep);
        assert!(report.pass);
        let coef = report
            .closure_coefficient("[e[1], e[2]] ∝ e[12]")
            .expect("closure coefficient");
        assert_eq!(coef, &Surd::sqrt_int(2).unwrap());
    }

    #[test]
    fn gellmann_su3_count_and_norm() {
        let basis = gellmann_basis(3).unwrap();
        assert_eq!(basis.len(), 8);
        for (i, a) in basis.iter().enumerate() {
            assert_eq!(a.dagger(), *a);
            assert!(a.trace().is_zero());
            for (j, b) in basis.iter().enumerate() {
                let want = if i == j { Surd::from_int(2) } else { Surd::zero() };
                assert_eq!(a.matmul(b).trace(), want);
            }
        }
    }
}
