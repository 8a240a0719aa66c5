//! Truncated bosonic and exact fermionic Fock spaces, and the oscillator
//! representations built on them.
//!
//! Bosonic spaces are truncated by total occupation `Σm ≤ Λ`. Bilinear
//! operator products are computed in an internally padded space (cutoff Λ+2)
//! and restricted back, so every stored operator equals `Π X Π` for the exact
//! infinite-dimensional `X`. With that convention the algebra relations hold
//! exactly on all columns with `Σm ≤ Λ − 2` (the interior contract);
//! fermionic spaces are exact everywhere.

use std::collections::HashMap;

use crate::definingrep::{gellmann_basis, RepBundle};
use crate::matrix::SurdMat;
use crate::rootsys::Family;
use crate::scalar::{rat, Rational, Surd};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FockKind {
    Bosonic { modes: usize, cutoff: usize },
    Fermionic { modes: usize, majorana: bool },
}

/// Occupation-number basis, graded by total occupation then lexicographic.
#[derive(Clone, Debug)]
pub struct FockSpace {
    pub kind: FockKind,
    pub basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

fn graded_bosonic_basis(modes: usize, cutoff: usize) -> Vec<Vec<u32>> {
    let mut basis = Vec::new();
    for total in 0..=cutoff {
        let mut level = Vec::new();
        enumerate_level(modes, total as u32, &mut Vec::new(), &mut level);
        level.sort();
        basis.extend(level);
    }
    basis
}

fn enumerate_level(modes: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if modes == 1 {
        let mut v = prefix.clone();
        v.push(remaining);
        out.push(v);
        return;
    }
    for k in 0..=remaining {
        prefix.push(k);
        enumerate_level(modes - 1, remaining - k, prefix, out);
        prefix.pop();
    }
}

impl FockSpace {
    fn from_basis(kind: FockKind, basis: Vec<Vec<u32>>) -> Self {
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        FockSpace { kind, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn modes(&self) -> usize {
        match self.kind {
            FockKind::Bosonic { modes, .. } => modes,
            FockKind::Fermionic { modes, majorana } => modes + usize::from(majorana),
        }
    }

    pub fn index_of(&self, occ: &[u32]) -> Option<usize> {
        self.index.get(occ).copied()
    }

    pub fn total_occupation(&self, idx: usize) -> u32 {
        self.basis[idx].iter().sum()
    }

    /// Column indices with total occupation at most `cutoff − depth`
    /// (every column for fermionic spaces).
    pub fn interior(&self, depth: usize) -> Vec<usize> {
        match self.kind {
            FockKind::Bosonic { cutoff, .. } => {
                let bound = cutoff.saturating_sub(depth) as u32;
                (0..self.dim())
                    .filter(|&i| self.total_occupation(i) <= bound)
                    .collect()
            }
            FockKind::Fermionic { .. } => (0..self.dim()).collect(),
        }
    }

    pub fn level_indices(&self, level: u32) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.total_occupation(i) == level)
            .collect()
    }

    pub fn parity_indices(&self, parity: u32) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.total_occupation(i) % 2 == parity)
            .collect()
    }

    fn creator_on(&self, mu: usize) -> SurdMat {
        let dim = self.dim();
        let mut m = SurdMat::zeros(dim, dim);
        match self.kind {
            FockKind::Bosonic { cutoff, .. } => {
                for (i, occ) in self.basis.iter().enumerate() {
                    let total: u32 = occ.iter().sum();
                    if total as usize >= cutoff {
                        continue;
                    }
                    let mut target = occ.clone();
                    target[mu] += 1;
                    if let Some(j) = self.index_of(&target) {
                        let amp = Surd::sqrt_int((occ[mu] + 1) as i64).expect("positive radicand");
                        m.set(j, i, amp);
                    }
                }
            }
            FockKind::Fermionic { .. } => {
                for (i, occ) in self.basis.iter().enumerate() {
                    if occ[mu] == 1 {
                        continue;
                    }
                    let mut target = occ.clone();
                    target[mu] = 1;
                    let sign: i64 = if occ[..mu].iter().sum::<u32>() % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                    if let Some(j) = self.index_of(&target) {
                        m.set(j, i, Surd::from_int(sign));
                    }
                }
            }
        }
        m
    }
}

/// A Fock space bundled with its ladder matrices.
#[derive(Clone, Debug)]
pub struct LadderAlgebra {
    pub space: FockSpace,
    pub creators: Vec<SurdMat>,
    pub annihilators: Vec<SurdMat>,
    /// The self-adjoint extra mode `c = (f + f†)/√2`, when present.
    pub majorana: Option<SurdMat>,
}

/// Truncated bosonic Fock space with `a†_μ |m⟩ = √(m_μ+1) |m+e_μ⟩`
/// (components above the cutoff dropped). Requires `Λ ≥ 4` so that the
/// quadratic-identity checks keep interior headroom.
pub fn bosonic_space(modes: usize, cutoff: usize) -> Result<LadderAlgebra> {
    if modes == 0 {
        return Err(Error::Dimension("bosonic space needs at least one mode".into()));
    }
    if cutoff < 4 {
        return Err(Error::CutoffTooSmall(format!(
            "cutoff {cutoff} < 4 leaves no interior for quadratic identities"
        )));
    }
    let space = FockSpace::from_basis(
        FockKind::Bosonic { modes, cutoff },
        graded_bosonic_basis(modes, cutoff),
    );
    let creators: Vec<SurdMat> = (0..modes).map(|mu| space.creator_on(mu)).collect();
    let annihilators: Vec<SurdMat> = creators.iter().map(SurdMat::dagger).collect();
    Ok(LadderAlgebra {
        space,
        creators,
        annihilators,
        majorana: None,
    })
}

/// Exact fermionic Fock space with mode-ordered string signs; with the
/// majorana flag an auxiliary mode is appended and `c = (f + f†)/√2`.
pub fn fermionic_space(modes: usize, majorana: bool) -> Result<LadderAlgebra> {
    if modes == 0 {
        return Err(Error::Dimension("fermionic space needs at least one mode".into()));
    }
    let total_modes = modes + usize::from(majorana);
    let mut basis: Vec<Vec<u32>> = (0..(1usize << total_modes))
        .map(|s| (0..total_modes).map(|k| ((s >> k) & 1) as u32).collect())
        .collect();
    basis.sort_by_key(|b| (b.iter().sum::<u32>(), b.clone()));
    let space = FockSpace::from_basis(FockKind::Fermionic { modes, majorana }, basis);
    let creators: Vec<SurdMat> = (0..modes).map(|mu| space.creator_on(mu)).collect();
    let annihilators: Vec<SurdMat> = creators.iter().map(SurdMat::dagger).collect();
    let majorana_op = if majorana {
        let f = space.creator_on(modes);
        let half_sqrt2 = Surd::sqrt_of_rational(&rat(1, 2))?;
        Some(f.add(&f.dagger()).scale(&half_sqrt2))
    } else {
        None
    };
    Ok(LadderAlgebra {
        space,
        creators,
        annihilators,
        majorana: majorana_op,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OscKind {
    Metaplectic,
    SpinorD,
    SpinorB,
    SuOscillator,
}

/// An oscillator representation: one Fock-space matrix per basis element of
/// the algebra, indexed identically to `RepBundle::basis_x`.
#[derive(Clone, Debug)]
pub struct OperatorRep {
    pub space: FockSpace,
    pub family: Family,
    pub rank: usize,
    pub x_ops: Vec<SurdMat>,
    /// Identities are exact on columns with `Σm ≤ Λ − interior_depth`
    /// (0 for fermionic spaces).
    pub interior_depth: usize,
    pub kind: OscKind,
    /// The oscillator vector v (and the padded copy used for products).
    v_ops_padded: Vec<SurdMat>,
    padded_dim: usize,
}

impl OperatorRep {
    pub fn dim_h(&self) -> usize {
        self.space.dim()
    }

    pub fn dim_g(&self) -> usize {
        self.x_ops.len()
    }

    /// Bilinear `v_a (Gv)_b` (metric-contracted second slot), computed in the
    /// padded space and restricted; `gv_row` holds the metric row pattern.
    fn padded_product(&self, a: usize, gv: &[SurdMat], b: usize) -> SurdMat {
        let prod = self.v_ops_padded[a].matmul(&gv[b]);
        restrict(&prod, self.dim_h())
    }

    /// Operator ladder pair `(E_{+α}, E_{−α})` reconstructed from the
    /// hermitian operators via `√2 E_{±α} = U_α ± i V_α`.
    pub fn ladder_ops(&self, alpha: usize) -> (SurdMat, SurdMat) {
        let u = &self.x_ops[self.rank + 2 * alpha];
        let v = &self.x_ops[self.rank + 2 * alpha + 1];
        let half_sqrt2 = Surd::sqrt_of_rational(&rat(1, 2)).unwrap();
        let plus = u.add(&v.scale(&Surd::i())).scale(&half_sqrt2);
        let minus = u.sub(&v.scale(&Surd::i())).scale(&half_sqrt2);
        (plus, minus)
    }

    pub fn cartan_op(&self, r: usize) -> &SurdMat {
        &self.x_ops[r]
    }

    /// Interior column set at the given extra depth beyond the rep's own.
    pub fn interior(&self, depth: usize) -> Vec<usize> {
        self.space.interior(depth)
    }
}

fn restrict(m: &SurdMat, dim: usize) -> SurdMat {
    let idx: Vec<usize> = (0..dim).collect();
    m.submatrix(&idx, &idx)
}

/// Shared bilinear construction `X_i = ½ vᵀ x_i (Gv)` from a vector of
/// (padded) oscillator operators and the metric.
fn bilinear_rep(
    rep: &RepBundle,
    v_padded: Vec<SurdMat>,
    space: FockSpace,
    kind: OscKind,
    interior_depth: usize,
) -> Result<OperatorRep> {
    let dim_v = rep.dim_v;
    if v_padded.len() != dim_v {
        return Err(Error::Dimension(format!(
            "oscillator vector has {} slots, defining dimension is {dim_v}",
            v_padded.len()
        )));
    }
    let padded_dim = v_padded[0].nrows();
    // (Gv)_b = Σ_c G_bc v_c
    let gv: Vec<SurdMat> = (0..dim_v)
        .map(|b| {
            let mut acc = SurdMat::zeros(padded_dim, padded_dim);
            for (bb, c, g) in rep.metric.iter() {
                if bb == b {
                    acc = acc.add(&v_padded[c].scale(g));
                }
            }
            acc
        })
        .collect();
    let dim_h = space.dim();
    let half = rat(1, 2);
    // cache padded pair products for the cells that actually appear
    let mut cache: HashMap<(usize, usize), SurdMat> = HashMap::new();
    let mut x_ops = Vec::with_capacity(rep.basis_x.len());
    for x in &rep.basis_x {
        let mut acc = SurdMat::zeros(dim_h, dim_h);
        for (a, b, coef) in x.iter() {
            let pair = cache
                .entry((a, b))
                .or_insert_with(|| restrict(&v_padded[a].matmul(&gv[b]), dim_h));
            acc = acc.add(&pair.scale(coef));
        }
        x_ops.push(acc.scale_rational(&half));
    }
    Ok(OperatorRep {
        space,
        family: rep.family,
        rank: rep.rank,
        x_ops,
        interior_depth,
        kind,
        v_ops_padded: v_padded,
        padded_dim,
    })
}

/// The metaplectic representation of c_n on the truncated bosonic space:
/// `v = (a†_1..a†_n, a_n..a_1)ᵀ`, `X_i = ½ vᵀ x_i (Jv)`.
pub fn metaplectic_rep(n: usize, cutoff: usize, rep: &RepBundle) -> Result<OperatorRep> {
    if rep.family != Family::C || rep.rank != n {
        return Err(Error::FamilyMismatch(format!(
            "metaplectic construction needs the c-family bundle of rank {n}"
        )));
    }
    let padded = bosonic_space(n, cutoff + 2)?;
    let visible = bosonic_space(n, cutoff)?;
    let mut v = Vec::with_capacity(2 * n);
    for mu in 0..n {
        v.push(padded.creators[mu].clone());
    }
    for mu in (0..n).rev() {
        v.push(padded.annihilators[mu].clone());
    }
    bilinear_rep(rep, v, visible.space, OscKind::Metaplectic, 2)
}

/// The spinor representation of d_n on the fermionic space:
/// `v = (c_1..c_n, π_n..π_1)ᵀ`, `X_i = ½ vᵀ x_i (Mv)`.
pub fn spinor_rep_d(n: usize, rep: &RepBundle) -> Result<OperatorRep> {
    if rep.family != Family::D || rep.rank != n {
        return Err(Error::FamilyMismatch(format!(
            "spinor construction needs the d-family bundle of rank {n}"
        )));
    }
    let alg = fermionic_space(n, false)?;
    let mut v = Vec::with_capacity(2 * n);
    for mu in 0..n {
        v.push(alg.creators[mu].clone());
    }
    for mu in (0..n).rev() {
        v.push(alg.annihilators[mu].clone());
    }
    bilinear_rep(rep, v, alg.space, OscKind::SpinorD, 0)
}

/// The spinor representation of b_n: the d-style vector with the Majorana
/// mode in the middle slot, on the doubled fermionic space.
pub fn spinor_rep_b(n: usize, rep: &RepBundle) -> Result<OperatorRep> {
    if rep.family != Family::B || rep.rank != n {
        return Err(Error::FamilyMismatch(format!(
            "spinor construction needs the b-family bundle of rank {n}"
        )));
    }
    let alg = fermionic_space(n, true)?;
    let majorana = alg.majorana.clone().expect("majorana mode");
    let mut v = Vec::with_capacity(2 * n + 1);
    for mu in 0..n {
        v.push(alg.creators[mu].clone());
    }
    v.push(majorana);
    for mu in (0..n).rev() {
        v.push(alg.annihilators[mu].clone());
    }
    bilinear_rep(rep, v, alg.space, OscKind::SpinorB, 0)
}

/// The su(n) oscillator representation `X_i = ½ A† λ_i A` on the truncated
/// bosonic space. Level subspaces are invariant, so the truncation is exact
/// on every column.
pub fn su_oscillator_rep(n: usize, cutoff: usize) -> Result<SuOscillatorRep> {
    if n < 2 {
        return Err(Error::InvalidRank {
            family: 'a',
            rank: n,
        });
    }
    if cutoff < 4 {
        return Err(Error::CutoffTooSmall(format!(
            "cutoff {cutoff} < 4 leaves no level headroom"
        )));
    }
    let basis = gellmann_basis(n)?;
    let alg = bosonic_space(n, cutoff)?;
    let half = rat(1, 2);
    let mut x_ops = Vec::with_capacity(basis.len());
    for lam in &basis {
        let mut acc = SurdMat::zeros(alg.space.dim(), alg.space.dim());
        for (a, b, coef) in lam.iter() {
            // a†_a a_b conserves total occupation: no padding needed
            let pair = alg.creators[a].matmul(&alg.annihilators[b]);
            acc = acc.add(&pair.scale(coef));
        }
        x_ops.push(acc.scale_rational(&half));
    }
    Ok(SuOscillatorRep {
        space: alg.space,
        n,
        basis,
        x_ops,
    })
}

/// The su(n) oscillator representation with its defining basis.
#[derive(Clone, Debug)]
pub struct SuOscillatorRep {
    pub space: FockSpace,
    pub n: usize,
    pub basis: Vec<SurdMat>,
    pub x_ops: Vec<SurdMat>,
}

impl SuOscillatorRep {
    pub fn dim_h(&self) -> usize {
        self.space.dim()
    }

    pub fn number_operator(&self) -> SurdMat {
        let dim = self.space.dim();
        let mut m = SurdMat::zeros(dim, dim);
        for i in 0..dim {
            m.set(
                i,
                i,
                Surd::from_int(self.space.total_occupation(i) as i64),
            );
        }
        m
    }
}

/// Even/odd split of the quantum space under total-occupation parity, with
/// the block-restricted operators. Errors if any operator has a cross-block
/// matrix element.
#[derive(Clone, Debug)]
pub struct ChiralitySplit {
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
    pub even_ops: Vec<SurdMat>,
    pub odd_ops: Vec<SurdMat>,
}

pub fn chirality_blocks(op: &OperatorRep) -> Result<ChiralitySplit> {
    let even = op.space.parity_indices(0);
    let odd = op.space.parity_indices(1);
    for (i, x) in op.x_ops.iter().enumerate() {
        let cross_a = x.submatrix(&even, &odd);
        let cross_b = x.submatrix(&odd, &even);
        if !cross_a.is_zero() || !cross_b.is_zero() {
            return Err(Error::Consistency(format!(
                "generator {i} has a nonzero cross-parity matrix element"
            )));
        }
    }
    let even_ops = op.x_ops.iter().map(|x| x.submatrix(&even, &even)).collect();
    let odd_ops = op.x_ops.iter().map(|x| x.submatrix(&odd, &odd)).collect();
    Ok(ChiralitySplit {
        even,
        odd,
        even_ops,
        odd_ops,
    })
}

/// The scalar value of `vᵀ G v` as an operator identity on the interior:
/// `−n` for the metaplectic vector, `n` for d_n, `n + ½` for b_n.
pub fn oscillator_metric_scalar(rep: &RepBundle, op: &OperatorRep) -> Result<(SurdMat, Rational)> {
    let dim_v = rep.dim_v;
    let padded_dim = op.padded_dim;
    let gv: Vec<SurdMat> = (0..dim_v)
        .map(|b| {
            let mut acc = SurdMat::zeros(padded_dim, padded_dim);
            for (bb, c, g) in rep.metric.iter() {
                if bb == b {
                    acc = acc.add(&op.v_ops_padded[c].scale(g));
                }
            }
            acc
        })
        .collect();
    let mut acc = SurdMat::zeros(op.dim_h(), op.dim_h());
    for a in 0..dim_v {
        acc = acc.add(&op.padded_product(a, &gv, a));
    }
    let expected = match op.kind {
        OscKind::Metaplectic => -rat(op.rank as i64, 1),
        OscKind::SpinorD => rat(op.rank as i64, 1),
        OscKind::SpinorB => rat(2 * op.rank as i64 + 1, 2),
        OscKind::SuOscillator => {
            return Err(Error::FamilyMismatch(
                "metric scalar is defined for the bilinear constructions".into(),
            ))
        }
    };
    Ok((acc, expected))
}

/// Bilinear pair table used by the closed-form L construction: the matrix of
/// `(Gv)_a v_b` restricted to the visible space.
pub fn metric_pair_table(rep: &RepBundle, op: &OperatorRep) -> Result<Vec<Vec<SurdMat>>> {
    let dim_v = rep.dim_v;
    let padded_dim = op.padded_dim;
    let gv: Vec<SurdMat> = (0..dim_v)
        .map(|a| {
            let mut acc = SurdMat::zeros(padded_dim, padded_dim);
            for (aa, c, g) in rep.metric.iter() {
                if aa == a {
                    acc = acc.add(&op.v_ops_padded[c].scale(g));
                }
            }
            acc
        })
        .collect();
    let dim_h = op.dim_h();
    Ok((0..dim_v)
        .map(|a| {
            (0..dim_v)
                .map(|b| restrict(&gv[a].matmul(&op.v_ops_padded[b]), dim_h))
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::definingrep::build_rep;
    use crate::scalar::rat_int;

    #[test]
    fn bosonic_dimension_and_ladder() {
        let alg = bosonic_space(2, 8).unwrap();
        assert_eq!(alg.space.dim(), 45); // C(10,2)
        let alg1 = bosonic_space(1, 4).unwrap();
        // a† |1⟩ = √2 |2⟩
        let one = alg1.space.index_of(&[1]).unwrap();
        let two = alg1.space.index_of(&[2]).unwrap();
        assert_eq!(alg1.creators[0].get(two, one), Surd::sqrt_int(2).unwrap());
    }

    #[test]
    fn bosonic_cutoff_validation() {
        assert!(matches!(
            bosonic_space(2, 3),
            Err(Error::CutoffTooSmall(_))
        ));
    }

    #[test]
    fn commutator_boundary_artifact() {
        let alg = bosonic_space(1, 4).unwrap();
        let comm = SurdMat::commutator(&alg.annihilators[0], &alg.creators[0]);
        let interior = alg.space.interior(1);
        let id = SurdMat::identity(alg.space.dim());
        assert!(comm.sub(&id).columns_are_zero(&interior));
        // at the boundary the canonical commutation relation fails
        let top = alg.space.index_of(&[4]).unwrap();
        assert_ne!(comm.get(top, top), Surd::one());
    }

    #[test]
    fn fermionic_dimensions_and_nilpotency() {
        let alg = fermionic_space(3, false).unwrap();
        assert_eq!(alg.space.dim(), 8);
        let with_maj = fermionic_space(3, true).unwrap();
        assert_eq!(with_maj.space.dim(), 16);
        for mu in 0..3 {
            for nu in 0..3 {
                let anti = SurdMat::anticommutator(&alg.creators[mu], &alg.creators[nu]);
                assert!(anti.is_zero(), "creators fail nilpotency at {mu},{nu}");
                let mixed = SurdMat::anticommutator(&alg.creators[mu], &alg.annihilators[nu]);
                let want = if mu == nu {
                    SurdMat::identity(8)
                } else {
                    SurdMat::zeros(8, 8)
                };
                assert_eq!(mixed, want);
            }
        }
    }

    #[test]
    fn majorana_relations() {
        let alg = fermionic_space(2, true).unwrap();
        let c = alg.majorana.as_ref().unwrap();
        let half = SurdMat::scaled_identity(8, Surd::from_rational(rat(1, 2)));
        assert_eq!(c.matmul(c), half);
        assert_eq!(c.dagger(), *c);
        for mu in 0..2 {
            assert!(SurdMat::anticommutator(c, &alg.creators[mu]).is_zero());
            assert!(SurdMat::anticommutator(c, &alg.annihilators[mu]).is_zero());
        }
    }

    #[test]
    fn metaplectic_family_mismatch() {
        let rep = build_rep(Family::D, 3).unwrap();
        assert!(metaplectic_rep(3, 6, &rep).is_err());
    }

    #[test]
    fn su_oscillator_number_invariant() {
        let rep = su_oscillator_rep(2, 4).unwrap();
        let nop = rep.number_operator();
        for x in &rep.x_ops {
            assert!(SurdMat::commutator(&nop, x).is_zero());
        }
        // level dimension C(n+λ−1, λ)
        assert_eq!(rep.space.level_indices(3).len(), 4);
    }

    #[test]
    fn metric_scalar_values() {
        let rep = build_rep(Family::B, 2).unwrap();
        let op = spinor_rep_b(2, &rep).unwrap();
        let (acc, expected) = oscillator_metric_scalar(&rep, &op).unwrap();
        let want = SurdMat::scaled_identity(op.dim_h(), Surd::from_rational(expected));
        assert_eq!(acc, want);
        let repd = build_rep(Family::D, 3).unwrap();
        let opd = spinor_rep_d(3, &repd).unwrap();
        let (acc, expected) = oscillator_metric_scalar(&repd, &opd).unwrap();
        assert_eq!(expected, rat_int(3));
        let want = SurdMat::scaled_identity(opd.dim_h(), Surd::from_rational(expected));
        assert_eq!(acc, want);
    }
}
