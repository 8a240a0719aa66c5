//! L-operators on V⊗H, their closed forms, quadratic relations, spectral
//! structure, and the Casimir / operator product laws they induce.
//!
//! Composite index layout: row/column `a·dimH + h` with `a` the auxiliary
//! (defining-representation) index — the slow factor of the Kronecker
//! product.

use crate::definingrep::RepBundle;
use crate::fock::{metric_pair_table, OperatorRep, OscKind, SuOscillatorRep};
use crate::matrix::{complex_rank, SurdMat};
use crate::report::{CheckLine, Report};
use crate::rootsys::Family;
use crate::scalar::{rat, rat_int, rational_to_string, Rational, Surd};
use crate::tensors::{su_symmetric_d, StructureTensors};
use crate::{Error, Result};

/// Which oscillator system an L-operator was built from.
#[derive(Clone, Debug)]
pub struct LOperator {
    pub mat: SurdMat,
    pub dim_v: usize,
    pub dim_h: usize,
    /// Quadratic identities are exact on columns whose quantum level is at
    /// most `cutoff − interior_depth`; 0 for fermionic quantum spaces.
    pub interior_depth: usize,
    pub family: Family,
    pub rank: usize,
    pub kind: OscKind,
    /// Quantum level of each H-basis state (total occupation).
    pub levels: Vec<u32>,
    /// Bosonic cutoff when the quantum space is truncated.
    pub cutoff: Option<usize>,
}

impl LOperator {
    pub fn dim(&self) -> usize {
        self.dim_v * self.dim_h
    }

    /// Composite column indices whose quantum level is ≤ cutoff − depth
    /// (all columns for exact spaces).
    pub fn interior_cols(&self, depth: usize) -> Vec<usize> {
        match self.cutoff {
            None => (0..self.dim()).collect(),
            Some(cutoff) => {
                let bound = cutoff.saturating_sub(depth) as u32;
                let mut out = Vec::new();
                for a in 0..self.dim_v {
                    for (h, &lvl) in self.levels.iter().enumerate() {
                        if lvl <= bound {
                            out.push(a * self.dim_h + h);
                        }
                    }
                }
                out
            }
        }
    }

    /// Composite indices restricted to the given quantum-space indices.
    pub fn cols_for_quantum(&self, quantum: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        for a in 0..self.dim_v {
            for &h in quantum {
                out.push(a * self.dim_h + h);
            }
        }
        out
    }
}

fn levels_of(op_space_levels: impl Iterator<Item = u32>) -> Vec<u32> {
    op_space_levels.collect()
}

/// `L = Σ_i x_i ⊗ X_i`.
pub fn build_l(rep: &RepBundle, op: &OperatorRep) -> Result<LOperator> {
    if rep.family != op.family || rep.rank != op.rank {
        return Err(Error::FamilyMismatch(
            "representation bundle and operator representation disagree".into(),
        ));
    }
    if rep.basis_x.len() != op.x_ops.len() {
        return Err(Error::Dimension("basis size mismatch".into()));
    }
    let dim = rep.dim_v * op.dim_h();
    let mut l = SurdMat::zeros(dim, dim);
    for (x, xop) in rep.basis_x.iter().zip(&op.x_ops) {
        l = l.add(&x.kron(xop));
    }
    let cutoff = match op.space.kind {
        crate::fock::FockKind::Bosonic { cutoff, .. } => Some(cutoff),
        crate::fock::FockKind::Fermionic { .. } => None,
    };
    Ok(LOperator {
        mat: l,
        dim_v: rep.dim_v,
        dim_h: op.dim_h(),
        interior_depth: op.interior_depth,
        family: rep.family,
        rank: rep.rank,
        kind: op.kind,
        levels: levels_of((0..op.dim_h()).map(|i| op.space.total_occupation(i))),
        cutoff,
    })
}

/// `L = Σ_i λ_i ⊗ X_i` for the su(n) oscillator system.
pub fn build_l_su(rep: &SuOscillatorRep) -> Result<LOperator> {
    let dim = rep.n * rep.dim_h();
    let mut l = SurdMat::zeros(dim, dim);
    for (x, xop) in rep.basis.iter().zip(&rep.x_ops) {
        l = l.add(&x.kron(xop));
    }
    let cutoff = match rep.space.kind {
        crate::fock::FockKind::Bosonic { cutoff, .. } => Some(cutoff),
        _ => None,
    };
    Ok(LOperator {
        mat: l,
        dim_v: rep.n,
        dim_h: rep.dim_h(),
        interior_depth: 0,
        family: Family::A,
        rank: rep.n - 1,
        kind: OscKind::SuOscillator,
        levels: levels_of((0..rep.dim_h()).map(|i| rep.space.total_occupation(i))),
        cutoff,
    })
}

/// The closed form: `L_ab = (Jv)_a v_b − ½δ_ab` for c_n and
/// `L = ½ − (Mv)vᵀ` for so(N). Equals `build_l` exactly (the bilinears are
/// computed with padding, so both sides are the projection of the same exact
/// operator).
pub fn closed_form_l(rep: &RepBundle, op: &OperatorRep) -> Result<LOperator> {
    let pair = metric_pair_table(rep, op)?;
    let dim_h = op.dim_h();
    let dim = rep.dim_v * dim_h;
    let mut l = SurdMat::zeros(dim, dim);
    let half = rat(1, 2);
    for a in 0..rep.dim_v {
        for b in 0..rep.dim_v {
            let block = match op.kind {
                OscKind::Metaplectic => {
                    let mut m = pair[a][b].clone();
                    if a == b {
                        m = m.sub(&SurdMat::scaled_identity(
                            dim_h,
                            Surd::from_rational(half.clone()),
                        ));
                    }
                    m
                }
                OscKind::SpinorD | OscKind::SpinorB => {
                    let mut m = pair[a][b].neg();
                    if a == b {
                        m = m.add(&SurdMat::scaled_identity(
                            dim_h,
                            Surd::from_rational(half.clone()),
                        ));
                    }
                    m
                }
                OscKind::SuOscillator => {
                    return Err(Error::FamilyMismatch(
                        "closed form applies to the metaplectic and spinor systems".into(),
                    ))
                }
            };
            for (h, hp, v) in block.iter() {
                l.set(a * dim_h + h, b * dim_h + hp, v.clone());
            }
        }
    }
    let cutoff = match op.space.kind {
        crate::fock::FockKind::Bosonic { cutoff, .. } => Some(cutoff),
        crate::fock::FockKind::Fermionic { .. } => None,
    };
    Ok(LOperator {
        mat: l,
        dim_v: rep.dim_v,
        dim_h,
        interior_depth: op.interior_depth,
        family: rep.family,
        rank: rep.rank,
        kind: op.kind,
        levels: levels_of((0..dim_h).map(|i| op.space.total_occupation(i))),
        cutoff,
    })
}

/// Coefficients `(p, q)` of `L² + pL + q = 0` with the eigenvalue pair
/// `(λ₊, λ₋)` of the quadratic.
#[derive(Clone, Debug)]
pub struct QuadraticSpec {
    pub p: Rational,
    pub q: Rational,
    pub lam_plus: Rational,
    pub lam_minus: Rational,
}

impl QuadraticSpec {
    fn from_roots(lam_plus: Rational, lam_minus: Rational) -> Self {
        QuadraticSpec {
            p: -(&lam_plus + &lam_minus),
            q: &lam_plus * &lam_minus,
            lam_plus,
            lam_minus,
        }
    }

    /// c_n metaplectic: `L² + (n+1)L + (2n+1)/4 = 0`, roots −½, −(2n+1)/2.
    pub fn symplectic(n: usize) -> Self {
        Self::from_roots(rat(-1, 2), rat(-(2 * n as i64 + 1), 2))
    }

    /// so(N) spinor: `L² + ½(N−2)L − ¼(N−1) = 0`, roots ½, −(N−1)/2.
    pub fn orthogonal(big_n: usize) -> Self {
        Self::from_roots(rat(1, 2), rat(-(big_n as i64 - 1), 2))
    }

    /// su(n) at level λ: `(L + 1 + λ/n)(L + λ/n − λ) = 0`.
    pub fn su_level(n: usize, level: u32) -> Self {
        let lam = rat_int(level as i64);
        let shift = &lam / rat_int(n as i64);
        Self::from_roots(&lam - &shift, -(rat_int(1) + shift))
    }

    /// su(2) with the level written as 2j: roots j and −(j+1).
    pub fn su2_spin(two_j: u32) -> Self {
        Self::su_level(2, two_j)
    }

    pub fn for_l(l: &LOperator) -> Result<Self> {
        match l.kind {
            OscKind::Metaplectic => Ok(Self::symplectic(l.rank)),
            OscKind::SpinorD | OscKind::SpinorB => Ok(Self::orthogonal(l.dim_v)),
            OscKind::SuOscillator => Err(Error::FamilyMismatch(
                "su(n) quadratics are per level; use su_level".into(),
            )),
        }
    }
}

/// `L² + pL + q·Id`, restricted to nothing — callers pick the columns.
pub fn quadratic_residual_matrix(l: &LOperator, spec: &QuadraticSpec) -> SurdMat {
    let dim = l.dim();
    l.mat
        .matmul(&l.mat)
        .add(&l.mat.scale_rational(&spec.p))
        .add(&SurdMat::scaled_identity(
            dim,
            Surd::from_rational(spec.q.clone()),
        ))
}

/// Verifies the quadratic relation on the appropriate interior columns
/// (depth 2 for truncated bosonic spaces, everything for fermionic).
pub fn quadratic_residual(l: &LOperator, spec: &QuadraticSpec) -> CheckLine {
    let residual = quadratic_residual_matrix(l, spec);
    let cols = l.interior_cols(l.interior_depth);
    CheckLine::exact_on_columns(
        "quadratic",
        &format!(
            "L² + ({})L + ({}) = 0",
            rational_to_string(&spec.p),
            rational_to_string(&spec.q)
        ),
        &residual,
        &cols,
    )
}

/// Per-level quadratic verification for the su(n) oscillator system: on each
/// level block the number operator is the scalar λ and the level quadratic
/// must vanish exactly.
pub fn quadratic_residual_su(rep: &SuOscillatorRep, l: &LOperator) -> Report {
    let mut report = Report::new("su-quadratic");
    report.set_param("n", rep.n.to_string());
    let cutoff = match rep.space.kind {
        crate::fock::FockKind::Bosonic { cutoff, .. } => cutoff,
        _ => 0,
    };
    for level in 0..=(cutoff as u32) {
        let idx = rep.space.level_indices(level);
        let cols = l.cols_for_quantum(&idx);
        let block = l.mat.submatrix(&cols, &cols);
        let spec = QuadraticSpec::su_level(rep.n, level);
        let residual = block
            .matmul(&block)
            .add(&block.scale_rational(&spec.p))
            .add(&SurdMat::scaled_identity(
                cols.len(),
                Surd::from_rational(spec.q.clone()),
            ));
        report.push(CheckLine::exact(
            &format!("su-quadratic-level-{level}"),
            &format!(
                "(L + 1 + λ/n)(L + λ/n − λ) = 0 at λ = {level}"
            ),
            &residual,
        ));
    }
    report
}

/// Exact spectral data of an L block: the two eigenvalues with their
/// multiplicities, solved from the trace system and cross-checked by a
/// floating-point rank computation at tolerance 1e−8.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenStructure {
    pub lam_plus: Rational,
    pub mult_plus: usize,
    pub lam_minus: Rational,
    pub mult_minus: usize,
}

/// Solves `m₊ + m₋ = dim`, `λ₊m₊ + λ₋m₋ = Tr L` on an exactly-invariant
/// block given by composite column indices. The block must satisfy the
/// quadratic exactly (checked), which pins its spectrum to `{λ₊, λ₋}`.
pub fn eigen_structure(
    l: &LOperator,
    spec: &QuadraticSpec,
    block_cols: &[usize],
) -> Result<EigenStructure> {
    let block = l.mat.submatrix(block_cols, block_cols);
    let dim = block_cols.len();
    let residual = block
        .matmul(&block)
        .add(&block.scale_rational(&spec.p))
        .add(&SurdMat::scaled_identity(
            dim,
            Surd::from_rational(spec.q.clone()),
        ));
    if !residual.is_zero() {
        return Err(Error::Spectrum(
            "block does not satisfy its quadratic exactly".into(),
        ));
    }
    let trace = block
        .trace()
        .rational_part()
        .ok_or_else(|| Error::Spectrum("block trace is not rational".into()))?;
    let denom = &spec.lam_plus - &spec.lam_minus;
    let m_plus_rat = (&trace - &spec.lam_minus * rat_int(dim as i64)) / denom;
    if !m_plus_rat.is_integer() {
        return Err(Error::Spectrum(format!(
            "trace system gives non-integer multiplicity {m_plus_rat}"
        )));
    }
    let m_plus: usize = {
        use num::ToPrimitive;
        m_plus_rat
            .to_integer()
            .to_usize()
            .ok_or_else(|| Error::Spectrum("negative multiplicity from the trace system".into()))?
    };
    if m_plus > dim {
        return Err(Error::Spectrum("multiplicity exceeds block dimension".into()));
    }
    let m_minus = dim - m_plus;

    // float cross-check: rank(L − λ₊) = dim − m₊
    let to_f = |r: &Rational| {
        use num::ToPrimitive;
        r.to_f64().unwrap_or(f64::NAN)
    };
    let mut shifted = block.clone();
    for k in 0..dim {
        let v = shifted.get(k, k) - Surd::from_rational(spec.lam_plus.clone());
        shifted.set(k, k, v);
    }
    let rank = complex_rank(&shifted.to_complex_dense(), 1e-8);
    if rank != dim - m_plus {
        return Err(Error::Spectrum(format!(
            "float rank {rank} disagrees with multiplicity {m_plus} of eigenvalue {}",
            to_f(&spec.lam_plus)
        )));
    }
    Ok(EigenStructure {
        lam_plus: spec.lam_plus.clone(),
        mult_plus: m_plus,
        lam_minus: spec.lam_minus.clone(),
        mult_minus: m_minus,
    })
}

/// Exactly-invariant finite blocks of V⊗H on which the L spectrum can be
/// solved, grouped per parity sector.
///
/// Fermionic systems: the two quantum-space parity blocks. Metaplectic: the
/// conserved grading is the total occupation plus the auxiliary weight sum
/// (±1), so each parity sector is a union of exact finite grade blocks with
/// grade ≤ Λ−2.
pub fn spectral_blocks(l: &LOperator, op: &OperatorRep) -> Vec<(String, Vec<usize>)> {
    match l.kind {
        OscKind::SpinorD | OscKind::SpinorB => {
            let even = op.space.parity_indices(0);
            let odd = op.space.parity_indices(1);
            vec![
                ("even".to_string(), l.cols_for_quantum(&even)),
                ("odd".to_string(), l.cols_for_quantum(&odd)),
            ]
        }
        OscKind::Metaplectic => {
            let cutoff = l.cutoff.unwrap_or(0) as i64;
            let n = l.rank;
            let mut blocks: Vec<(String, Vec<usize>)> = Vec::new();
            for parity in 0..2i64 {
                let mut cols = Vec::new();
                for a in 0..l.dim_v {
                    let w: i64 = if a < n { 1 } else { -1 };
                    for (h, &lvl) in l.levels.iter().enumerate() {
                        let grade = lvl as i64 + w;
                        if grade <= cutoff - 2 && grade.rem_euclid(2) == parity {
                            cols.push(a * l.dim_h + h);
                        }
                    }
                }
                let name = if parity == 0 { "even" } else { "odd" };
                blocks.push((name.to_string(), cols));
            }
            blocks
        }
        OscKind::SuOscillator => Vec::new(),
    }
}

/// Casimir checks: the metaplectic C₂ value, the Casimir decomposition of
/// the tensor-product space, and (for c_n) the quartic contraction.
pub fn casimir_checks(
    rep: &RepBundle,
    op: &OperatorRep,
    st: &StructureTensors,
    l: &LOperator,
) -> Result<Report> {
    let mut report = Report::new("casimir");
    report.set_param("family", rep.family.to_string());
    report.set_param("rank", rep.rank.to_string());
    let dim_h = op.dim_h();
    let interior_h = op.interior(2);

    // C₂(H) = Σ X_i X_i
    let mut c2 = SurdMat::zeros(dim_h, dim_h);
    for x in &op.x_ops {
        c2 = c2.add(&x.matmul(x));
    }
    if op.kind == OscKind::Metaplectic {
        let n = rep.rank as i64;
        let want = rat(-n * (2 * n + 1), 4);
        let residual = c2.sub(&SurdMat::scaled_identity(dim_h, Surd::from_rational(want.clone())));
        report.push(
            CheckLine::exact_on_columns(
                "metaplectic-casimir",
                &format!("Σ X_i X_i = {} · Id", rational_to_string(&want)),
                &residual,
                &interior_h,
            ),
        );
    }

    // C₂(V⊗H) = C₂(V)⊗1 + 1⊗C₂(H) + 2L, entrywise
    let dim = l.dim();
    let mut c2_joint = SurdMat::zeros(dim, dim);
    for (x, xop) in rep.basis_x.iter().zip(&op.x_ops) {
        let joint = x
            .kron(&SurdMat::identity(dim_h))
            .add(&SurdMat::identity(rep.dim_v).kron(xop));
        c2_joint = c2_joint.add(&joint.matmul(&joint));
    }
    let mut c2_v = SurdMat::zeros(rep.dim_v, rep.dim_v);
    for x in &rep.basis_x {
        c2_v = c2_v.add(&x.matmul(x));
    }
    let rhs = c2_v
        .kron(&SurdMat::identity(dim_h))
        .add(&SurdMat::identity(rep.dim_v).kron(&c2))
        .add(&l.mat.scale_rational(&rat_int(2)));
    let cols = l.interior_cols(2);
    report.push(CheckLine::exact_on_columns(
        "casimir-decomposition",
        "C₂(V⊗H) = C₂(V)⊗1 + 1⊗C₂(H) + 2L",
        &c2_joint.sub(&rhs),
        &cols,
    ));

    // quartic contraction for the metaplectic system
    if op.kind == OscKind::Metaplectic {
        let quartic = quartic_contraction(op, st)?;
        let n = rep.rank as i64;
        let chain_value = rat((n * n - 1) * (n + 2) * (2 * n + 1), 3);
        let interior4 = op.interior(4);
        let residual = quartic.sub(&SurdMat::scaled_identity(
            dim_h,
            Surd::from_rational(chain_value.clone()),
        ));
        report.push(CheckLine::exact_on_columns(
            "quartic-contraction",
            &format!(
                "d_α(ij d_kl)α X_iX_jX_kX_l = {} · Id",
                rational_to_string(&chain_value)
            ),
            &residual,
            &interior4,
        ));
    }
    Ok(report)
}

/// `d_{α(ij} d_{kl)α} X_i X_j X_k X_l` with the symmetrisation averaged over
/// the four contracted indices (one third of the three pair matchings).
pub fn quartic_contraction(op: &OperatorRep, st: &StructureTensors) -> Result<SurdMat> {
    let dim_h = op.dim_h();
    let xo = &op.x_ops;
    // nonzero d entries grouped per α
    let mut per_alpha: Vec<Vec<(usize, usize, Surd)>> = vec![Vec::new(); st.dim_y];
    for (i, j, al, v) in st.d_xxy.iter_expanded() {
        per_alpha[al].push((i, j, v));
    }
    let pair_products: Vec<Vec<SurdMat>> = xo
        .iter()
        .map(|a| xo.iter().map(|b| a.matmul(b)).collect())
        .collect();
    let mut total = SurdMat::zeros(dim_h, dim_h);
    for entries in &per_alpha {
        for (i, j, vij) in entries {
            for (k, l, vkl) in entries {
                // pairing (ij)(kl): X_iX_j · X_kX_l
                let c1 = vij * vkl;
                total = total.add(&pair_products[*i][*j].matmul(&pair_products[*k][*l]).scale(&c1));
            }
        }
        // pairing (ik)(jl): Σ d_ikα d_jlα X_iX_jX_kX_l
        for (i, k, vik) in entries {
            for (j, l, vjl) in entries {
                let c2 = vik * vjl;
                let m = xo[*i].matmul(&pair_products[*j][*k]).matmul(&xo[*l]);
                total = total.add(&m.scale(&c2));
            }
        }
        // pairing (il)(jk): Σ d_ilα d_jkα X_iX_jX_kX_l
        for (i, l, vil) in entries {
            for (j, k, vjk) in entries {
                let c3 = vil * vjk;
                let m = xo[*i].matmul(&pair_products[*j][*k]).matmul(&xo[*l]);
                total = total.add(&m.scale(&c3));
            }
        }
    }
    Ok(total.scale_rational(&rat(1, 3)))
}

/// Operator product laws for the metaplectic system:
/// `d_ijα X_iX_j = 0` and `i c_ijk X_iX_j = −2(n+1) X_k`, the latter also
/// cross-derived through the c·c contraction.
pub fn operator_product_laws(
    rep: &RepBundle,
    op: &OperatorRep,
    st: &StructureTensors,
) -> Result<Report> {
    if op.kind != OscKind::Metaplectic {
        return Err(Error::FamilyMismatch(
            "operator product laws apply to the metaplectic system".into(),
        ));
    }
    let mut report = Report::new("product-laws");
    report.set_param("family", rep.family.to_string());
    report.set_param("rank", rep.rank.to_string());
    let dim_h = op.dim_h();
    let interior = op.interior(2);
    let xo = &op.x_ops;
    let ng = st.dim_g;

    let pair_products: Vec<Vec<SurdMat>> = xo
        .iter()
        .map(|a| xo.iter().map(|b| a.matmul(b)).collect())
        .collect();

    let mut d_ok = true;
    for al in 0..st.dim_y {
        let mut acc = SurdMat::zeros(dim_h, dim_h);
        for i in 0..ng {
            for j in 0..ng {
                let v = st.d_xxy.get(i, j, al);
                if !v.is_zero() {
                    acc = acc.add(&pair_products[i][j].scale(&v));
                }
            }
        }
        if !acc.columns_are_zero(&interior) {
            d_ok = false;
        }
    }
    report.push(
        CheckLine::flag("d-law", "d_ijα X_i X_j = 0", d_ok).with_interior(interior.len()),
    );

    let n = rep.rank as i64;
    let factor = rat_int(-2 * (n + 1));
    let mut c_ok = true;
    let mut cross_ok = true;
    for k in 0..ng {
        let mut acc = SurdMat::zeros(dim_h, dim_h);
        for i in 0..ng {
            for j in 0..ng {
                let v = st.c.get(i, j, k);
                if !v.is_zero() {
                    acc = acc.add(&pair_products[i][j].scale(&v.mul_i()));
                }
            }
        }
        let want = xo[k].scale_rational(&factor);
        if !acc.sub(&want).columns_are_zero(&interior) {
            c_ok = false;
        }
        // cross-derivation: i c_ijk X_iX_j = −½ (c_ijk c_ijl) X_l
        let mut cc = SurdMat::zeros(dim_h, dim_h);
        for lix in 0..ng {
            let mut coeff = Surd::zero();
            for i in 0..ng {
                for j in 0..ng {
                    coeff += &(&st.c.get(i, j, k) * &st.c.get(i, j, lix));
                }
            }
            if !coeff.is_zero() {
                cc = cc.add(&xo[lix].scale(&coeff.scale(&rat(-1, 2))));
            }
        }
        if !acc.sub(&cc).columns_are_zero(&interior) {
            cross_ok = false;
        }
    }
    report.push(
        CheckLine::flag(
            "c-law",
            &format!("i c_ijk X_i X_j = {} X_k", rational_to_string(&factor)),
            c_ok,
        )
        .with_interior(interior.len()),
    );
    report.push(CheckLine::flag(
        "c-law-antisymmetry-route",
        "the c contraction agrees with its antisymmetry derivation",
        cross_ok,
    ));
    Ok(report)
}

/// su(n) level laws: `Σ X_iX_i`, `d_ijk X_iX_j` and the cubic Casimir value
/// on every level block.
pub fn su_level_laws(rep: &SuOscillatorRep) -> Result<Report> {
    let mut report = Report::new("su-level-laws");
    report.set_param("n", rep.n.to_string());
    let n = rep.n as i64;
    let dsu = su_symmetric_d(&rep.basis)?;
    let ng = rep.basis.len();
    let dim_h = rep.dim_h();
    let cutoff = match rep.space.kind {
        crate::fock::FockKind::Bosonic { cutoff, .. } => cutoff,
        _ => 0,
    };

    let mut c2 = SurdMat::zeros(dim_h, dim_h);
    for x in &rep.x_ops {
        c2 = c2.add(&x.matmul(x));
    }
    let mut dxx: Vec<SurdMat> = Vec::with_capacity(ng);
    for k in 0..ng {
        let mut acc = SurdMat::zeros(dim_h, dim_h);
        for i in 0..ng {
            for j in 0..ng {
                let v = dsu.get(i, j, k);
                if !v.is_zero() {
                    acc = acc.add(&rep.x_ops[i].matmul(&rep.x_ops[j]).scale(&v));
                }
            }
        }
        dxx.push(acc);
    }
    let mut c3 = SurdMat::zeros(dim_h, dim_h);
    for (k, d) in dxx.iter().enumerate() {
        c3 = c3.add(&d.matmul(&rep.x_ops[k]));
    }

    for level in 0..=(cutoff as u32) {
        let idx = rep.space.level_indices(level);
        let lam = level as i64;
        // C₂ = ½(n−1)λ(1+λ/n)
        let c2_want = rat((n - 1) * lam * (n + lam), 2 * n);
        let block = c2.submatrix(&idx, &idx);
        report.push(CheckLine::exact(
            &format!("su-casimir2-level-{level}"),
            &format!("Σ X_iX_i = {} on level {level}", rational_to_string(&c2_want)),
            &block.sub(&SurdMat::scaled_identity(
                idx.len(),
                Surd::from_rational(c2_want),
            )),
        ));
        // d_ijk X_iX_j = ((n+2λ)(n−2)/2n) X_k
        let coef = rat((n + 2 * lam) * (n - 2), 2 * n);
        let mut ok = true;
        for (k, d) in dxx.iter().enumerate() {
            let lhs = d.submatrix(&idx, &idx);
            let rhs = rep.x_ops[k].submatrix(&idx, &idx).scale_rational(&coef);
            if lhs != rhs {
                ok = false;
            }
        }
        report.push(CheckLine::flag(
            &format!("su-d-law-level-{level}"),
            &format!(
                "d_ijk X_iX_j = ({})·X_k on level {level}",
                rational_to_string(&coef)
            ),
            ok,
        ));
        // C₃ = ¼(n−1)(n−2)λ(1+λ/n)(1+2λ/n)
        let c3_want = rat(
            (n - 1) * (n - 2) * lam * (n + lam) * (n + 2 * lam),
            4 * n * n,
        );
        let block = c3.submatrix(&idx, &idx);
        report.push(CheckLine::exact(
            &format!("su-casimir3-level-{level}"),
            &format!(
                "d_ijk X_iX_jX_k = {} on level {level}",
                rational_to_string(&c3_want)
            ),
            &block.sub(&SurdMat::scaled_identity(
                idx.len(),
                Surd::from_rational(c3_want),
            )),
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::definingrep::build_rep;
    use crate::fock::{metaplectic_rep, spinor_rep_d, su_oscillator_rep};

    #[test]
    fn quadratic_roots_consistent() {
        for spec in [
            QuadraticSpec::symplectic(2),
            QuadraticSpec::orthogonal(6),
            QuadraticSpec::su_level(3, 4),
        ] {
            assert_eq!(&spec.lam_plus + &spec.lam_minus, -spec.p.clone());
            assert_eq!(&spec.lam_plus * &spec.lam_minus, spec.q.clone());
        }
        let s = QuadraticSpec::symplectic(2);
        assert_eq!(s.p, rat_int(3));
        assert_eq!(s.q, rat(5, 4));
        let o = QuadraticSpec::orthogonal(6);
        assert_eq!(o.lam_plus, rat(1, 2));
        assert_eq!(o.lam_minus, rat(-5, 2));
    }

    #[test]
    fn su2_spin_eigenvalues() {
        let s = QuadraticSpec::su2_spin(5); // j = 5/2
        assert_eq!(s.lam_plus, rat(5, 2));
        assert_eq!(s.lam_minus, rat(-7, 2));
    }

    #[test]
    fn build_l_dimension_bookkeeping() {
        let rep = build_rep(Family::D, 3).unwrap();
        let op = spinor_rep_d(3, &rep).unwrap();
        let l = build_l(&rep, &op).unwrap();
        assert_eq!((l.dim_v, l.dim_h), (6, 8));
        // Tr_V L = 0: partial trace over the auxiliary space
        let mut partial = SurdMat::zeros(8, 8);
        for a in 0..6 {
            let cols: Vec<usize> = (0..8).map(|h| a * 8 + h).collect();
            partial = partial.add(&l.mat.submatrix(&cols, &cols));
        }
        assert!(partial.is_zero());
    }

    #[test]
    fn family_mismatch_rejected() {
        let rep = build_rep(Family::D, 3).unwrap();
        let repb = build_rep(Family::B, 2).unwrap();
        let op = spinor_rep_d(3, &rep).unwrap();
        assert!(build_l(&repb, &op).is_err());
    }

    #[test]
    fn metaplectic_quadratic_and_closed_form() {
        let rep = build_rep(Family::C, 2).unwrap();
        let op = metaplectic_rep(2, 6, &rep).unwrap();
        let l = build_l(&rep, &op).unwrap();
        let cf = closed_form_l(&rep, &op).unwrap();
        assert_eq!(l.mat, cf.mat);
        let spec = QuadraticSpec::for_l(&l).unwrap();
        let line = quadratic_residual(&l, &spec);
        assert!(line.pass, "{}", line.max_residual);
    }

    #[test]
    fn su_levels_quadratic() {
        let rep = su_oscillator_rep(2, 4).unwrap();
        let l = build_l_su(&rep).unwrap();
        let report = quadratic_residual_su(&rep, &l);
        assert!(report.pass);
    }

    #[test]
    fn eigen_structure_spinor() {
        let rep = build_rep(Family::D, 3).unwrap();
        let op = spinor_rep_d(3, &rep).unwrap();
        let l = build_l(&rep, &op).unwrap();
        let spec = QuadraticSpec::for_l(&l).unwrap();
        let all: Vec<usize> = (0..l.dim()).collect();
        let eig = eigen_structure(&l, &spec, &all).unwrap();
        assert_eq!(eig.mult_plus, 40);
        assert_eq!(eig.mult_minus, 8);
    }
}
