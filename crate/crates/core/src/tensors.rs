//! Completion basis `y_α`, ad-invariant tensors, and the identity suite.
//!
//! The `y_α` span the orthogonal complement of the `x_i` inside the traceless
//! hermitian matrices subject to the metric symmetry condition
//! (`G y G^{-1} = y^T`), orthonormalised to `Tr y_α y_β = 2δ_αβ`. All tensors
//! are computed by traces and stored sparsely, keyed by a canonical sorted
//! index with symmetry-class sign reconstruction.

use std::collections::BTreeMap;

use crate::definingrep::RepBundle;
use crate::matrix::SurdMat;
use crate::report::{CheckLine, Report};
use crate::rootsys::Family;
use crate::scalar::{rat, rat_int, rational_to_string, Rational, Surd};
use crate::{Error, Result};

/// Completion of the `x_i` basis inside traceless hermitian matrices.
#[derive(Clone, Debug)]
pub struct CompletionBasis {
    pub matrices: Vec<SurdMat>,
}

impl CompletionBasis {
    pub fn count(&self) -> usize {
        self.matrices.len()
    }
}

/// Expected number of `y_α` matrices.
pub fn completion_count(family: Family, n: usize) -> Result<usize> {
    match family {
        Family::C => Ok((2 * n + 1) * (n - 1)),
        Family::B | Family::D => {
            let nn = family.defining_dim(n);
            Ok((nn - 1) * (nn + 2) / 2)
        }
        Family::A => Err(Error::FamilyMismatch(
            "completion basis is defined for b, c, d".into(),
        )),
    }
}

/// The hermitian spanning set of dim×dim matrices: symmetric and
/// antisymmetric off-diagonal pairs, then the traceless diagonal steps.
fn hermitian_spanning_set(dim: usize) -> Vec<SurdMat> {
    let mut out = Vec::new();
    for a in 0..dim {
        for b in (a + 1)..dim {
            let mut s = SurdMat::zeros(dim, dim);
            s.set(a, b, Surd::one());
            s.set(b, a, Surd::one());
            out.push(s);
            let mut t = SurdMat::zeros(dim, dim);
            t.set(a, b, -Surd::i());
            t.set(b, a, Surd::i());
            out.push(t);
        }
    }
    for k in 0..(dim - 1) {
        let mut d = SurdMat::zeros(dim, dim);
        d.set(k, k, Surd::one());
        d.set(k + 1, k + 1, Surd::from_int(-1));
        out.push(d);
    }
    out
}

fn real_trace_product(a: &SurdMat, b: &SurdMat) -> Result<Rational> {
    a.matmul(b).trace().rational_part().ok_or_else(|| {
        Error::Consistency("trace inner product is not rational".into())
    })
}

/// Builds the `y_α`: project the hermitian spanning set onto the
/// `G y G^{-1} = y^T` subspace, Gram-Schmidt under `⟨A,B⟩ = Tr AB` in exact
/// rational arithmetic, then normalise each vector to `Tr y² = 2`.
pub fn complete_basis(rep: &RepBundle) -> Result<CompletionBasis> {
    let expected = completion_count(rep.family, rep.rank)?;
    let mut kept: Vec<(SurdMat, Rational)> = Vec::new();
    for cand in hermitian_spanning_set(rep.dim_v) {
        // (1 + σ)/2 with σ(y) = G^{-1} y^T G; σ-even matrices are exactly
        // those satisfying the symmetry condition, and are automatically
        // trace-orthogonal to every x_i (σ-odd).
        let mut w = cand.add(&rep.metric_conj_transpose(&cand)).scale_rational(&rat(1, 2));
        for (basis_vec, norm2) in &kept {
            let coef = real_trace_product(&w, basis_vec)? / norm2;
            w = w.sub(&basis_vec.scale_rational(&coef));
        }
        if w.is_zero() {
            continue;
        }
        let norm2 = real_trace_product(&w, &w)?;
        kept.push((w, norm2));
    }
    if kept.len() != expected {
        return Err(Error::Construction(format!(
            "completion basis has {} elements, expected {expected}",
            kept.len()
        )));
    }
    let matrices = kept
        .into_iter()
        .map(|(w, norm2)| {
            let scale = Surd::sqrt_of_rational(&(rat_int(2) / norm2))?;
            Ok(w.scale(&scale))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CompletionBasis { matrices })
}

/// Symmetry classes for sparse 3-tensor storage.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sym3 {
    /// Totally antisymmetric (c_ijk, d_αβγ-style sign rules do not apply).
    AntisymmetricAll,
    /// Symmetric in the first two indices (d_ijα).
    SymmetricFirstTwo,
    /// Antisymmetric in the last two indices (h_iαβ).
    AntisymmetricLastTwo,
    /// Totally symmetric (d_αβγ).
    SymmetricAll,
}

/// Sparse real 3-tensor keyed by canonical (sorted) index.
#[derive(Clone, Debug)]
pub struct SparseSym3 {
    pub dims: (usize, usize, usize),
    pub sym: Sym3,
    map: BTreeMap<(usize, usize, usize), Surd>,
}

impl SparseSym3 {
    fn new(dims: (usize, usize, usize), sym: Sym3) -> Self {
        SparseSym3 {
            dims,
            sym,
            map: BTreeMap::new(),
        }
    }

    fn canonical(&self, i: usize, j: usize, k: usize) -> ((usize, usize, usize), i64) {
        match self.sym {
            Sym3::AntisymmetricAll => {
                let mut idx = [(i, 0usize), (j, 1), (k, 2)];
                idx.sort_by_key(|(v, _)| *v);
                let perm = [idx[0].1, idx[1].1, idx[2].1];
                let sign = permutation_sign(&perm);
                ((idx[0].0, idx[1].0, idx[2].0), sign)
            }
            Sym3::SymmetricFirstTwo => ((i.min(j), i.max(j), k), 1),
            Sym3::AntisymmetricLastTwo => {
                if j <= k {
                    ((i, j, k), 1)
                } else {
                    ((i, k, j), -1)
                }
            }
            Sym3::SymmetricAll => {
                let mut v = [i, j, k];
                v.sort_unstable();
                ((v[0], v[1], v[2]), 1)
            }
        }
    }

    fn insert_canonical(&mut self, i: usize, j: usize, k: usize, v: Surd) {
        if !v.is_zero() {
            self.map.insert((i, j, k), v);
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Surd {
        let (key, sign) = self.canonical(i, j, k);
        match self.sym {
            Sym3::AntisymmetricAll if key.0 == key.1 || key.1 == key.2 => return Surd::zero(),
            Sym3::AntisymmetricLastTwo if key.1 == key.2 => return Surd::zero(),
            _ => {}
        }
        match self.map.get(&key) {
            Some(v) if sign < 0 => -v,
            Some(v) => v.clone(),
            None => Surd::zero(),
        }
    }

    /// Canonical nonzero entries.
    pub fn iter_canonical(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Surd)> {
        self.map.iter()
    }

    /// All nonzero entries with symmetry copies expanded.
    pub fn iter_expanded(&self) -> Vec<(usize, usize, usize, Surd)> {
        let mut out = Vec::new();
        for (&(i, j, k), v) in &self.map {
            match self.sym {
                Sym3::SymmetricFirstTwo => {
                    out.push((i, j, k, v.clone()));
                    if i != j {
                        out.push((j, i, k, v.clone()));
                    }
                }
                Sym3::AntisymmetricLastTwo => {
                    out.push((i, j, k, v.clone()));
                    if j != k {
                        out.push((i, k, j, -v));
                    }
                }
                Sym3::AntisymmetricAll => {
                    for (perm, sign) in permutations3() {
                        let idx = [i, j, k];
                        let (a, b, c) = (idx[perm[0]], idx[perm[1]], idx[perm[2]]);
                        if (a, b, c) != (i, j, k) || sign == 1 {
                            let w = if sign == 1 { v.clone() } else { -v };
                            out.push((a, b, c, w));
                        }
                    }
                }
                Sym3::SymmetricAll => {
                    let mut seen = std::collections::BTreeSet::new();
                    for (perm, _) in permutations3() {
                        let idx = [i, j, k];
                        let key = (idx[perm[0]], idx[perm[1]], idx[perm[2]]);
                        if seen.insert(key) {
                            out.push((key.0, key.1, key.2, v.clone()));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn nnz_canonical(&self) -> usize {
        self.map.len()
    }
}

fn permutation_sign(perm: &[usize; 3]) -> i64 {
    let mut sign = 1i64;
    let mut p = *perm;
    for i in 0..3 {
        while p[i] != i {
            let j = p[i];
            p.swap(i, j);
            sign = -sign;
        }
    }
    sign
}

fn permutations3() -> [([usize; 3], i64); 6] {
    [
        ([0, 1, 2], 1),
        ([0, 2, 1], -1),
        ([1, 0, 2], -1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([2, 1, 0], -1),
    ]
}

/// The four ad-invariant tensor tables.
#[derive(Clone, Debug)]
pub struct StructureTensors {
    /// `c_ijk = −i Tr x_i x_j x_k`, totally antisymmetric.
    pub c: SparseSym3,
    /// `d_ijα = Tr x_i x_j y_α`, symmetric in `(i,j)`.
    pub d_xxy: SparseSym3,
    /// `h_iαβ = −i Tr x_i y_α y_β`, antisymmetric in `(α,β)`.
    pub h_xyy: SparseSym3,
    /// `d_αβγ = Tr y_α y_β y_γ`, totally symmetric.
    pub d_yyy: SparseSym3,
    pub dim_g: usize,
    pub dim_y: usize,
}

fn real_checked(v: Surd, what: &str) -> Result<Surd> {
    if v.is_real() {
        Ok(v)
    } else {
        Err(Error::Consistency(format!(
            "{what} has a nonzero imaginary part: {v}"
        )))
    }
}

/// Computes all four tensor tables by traces.
pub fn structure_tensors(rep: &RepBundle, comp: &CompletionBasis) -> Result<StructureTensors> {
    let xs = &rep.basis_x;
    let ys = &comp.matrices;
    let ng = xs.len();
    let ny = ys.len();

    let xx: Vec<Vec<SurdMat>> = xs
        .iter()
        .map(|a| xs.iter().map(|b| a.matmul(b)).collect())
        .collect();

    let mut c = SparseSym3::new((ng, ng, ng), Sym3::AntisymmetricAll);
    for i in 0..ng {
        for j in (i + 1)..ng {
            for k in (j + 1)..ng {
                let v = real_checked(-xx[i][j].matmul(&xs[k]).trace().mul_i(), "c_ijk")?;
                c.insert_canonical(i, j, k, v);
            }
        }
    }

    let mut d_xxy = SparseSym3::new((ng, ng, ny), Sym3::SymmetricFirstTwo);
    for i in 0..ng {
        for j in i..ng {
            for (al, y) in ys.iter().enumerate() {
                let v = real_checked(xx[i][j].matmul(y).trace(), "d_ijα")?;
                d_xxy.insert_canonical(i, j, al, v);
            }
        }
    }

    let yy: Vec<Vec<SurdMat>> = ys
        .iter()
        .map(|a| ys.iter().map(|b| a.matmul(b)).collect())
        .collect();

    let mut h_xyy = SparseSym3::new((ng, ny, ny), Sym3::AntisymmetricLastTwo);
    for (i, x) in xs.iter().enumerate() {
        for al in 0..ny {
            for be in (al + 1)..ny {
                let v = real_checked(-x.matmul(&yy[al][be]).trace().mul_i(), "h_iαβ")?;
                h_xyy.insert_canonical(i, al, be, v);
            }
        }
    }

    let mut d_yyy = SparseSym3::new((ny, ny, ny), Sym3::SymmetricAll);
    for al in 0..ny {
        for be in al..ny {
            for ga in be..ny {
                let v = real_checked(yy[al][be].matmul(&ys[ga]).trace(), "d_αβγ")?;
                d_yyy.insert_canonical(al, be, ga, v);
            }
        }
    }

    Ok(StructureTensors {
        c,
        d_xxy,
        h_xyy,
        d_yyy,
        dim_g: ng,
        dim_y: ny,
    })
}

/// Leading coefficient of the `x_i x_j` product law: `1/n` for c_n and `2/N`
/// for so(N).
pub fn product_law_leading(rep: &RepBundle) -> Rational {
    match rep.family {
        Family::C => rat(1, rep.rank as i64),
        _ => rat(2, rep.dim_v as i64),
    }
}

/// The permutation operator `P_{ac,bd} = δ_ad δ_cb` on V⊗V.
pub fn permutation_operator(dim: usize) -> SurdMat {
    let mut p = SurdMat::zeros(dim * dim, dim * dim);
    for a in 0..dim {
        for c in 0..dim {
            p.set(a * dim + c, c * dim + a, Surd::one());
        }
    }
    p
}

/// The metric-built projector `K_{ac,bd} = G_ac G_bd` on V⊗V.
pub fn metric_projector(metric: &SurdMat) -> SurdMat {
    let dim = metric.nrows();
    let mut k = SurdMat::zeros(dim * dim, dim * dim);
    for (a, c, v) in metric.iter() {
        for (b, d, w) in metric.iter() {
            k.set(a * dim + c, b * dim + d, v * w);
        }
    }
    k
}

/// Verifies the completeness relations
/// `Σ x_i⊗x_i = P − K` and `Σ y_α⊗y_α = P + K − leading·I` exactly.
pub fn verify_completeness(rep: &RepBundle, comp: &CompletionBasis) -> Report {
    let mut report = Report::new("completeness");
    report.set_param("family", rep.family.to_string());
    report.set_param("rank", rep.rank.to_string());
    let dim = rep.dim_v;
    let p = permutation_operator(dim);
    let k = metric_projector(&rep.metric);

    let mut sum_xx = SurdMat::zeros(dim * dim, dim * dim);
    for x in &rep.basis_x {
        sum_xx = sum_xx.add(&x.kron(x));
    }
    let res_x = sum_xx.sub(&p.sub(&k));
    report.push(CheckLine::exact(
        "completeness-x",
        "sum_i x_i⊗x_i = P − K",
        &res_x,
    ));

    let mut sum_yy = SurdMat::zeros(dim * dim, dim * dim);
    for y in &comp.matrices {
        sum_yy = sum_yy.add(&y.kron(y));
    }
    let lead = product_law_leading(rep);
    let target = p
        .add(&k)
        .sub(&SurdMat::scaled_identity(dim * dim, Surd::from_rational(lead)));
    report.push(CheckLine::exact(
        "completeness-y",
        "sum_α y_α⊗y_α = P + K − leading·I",
        &sum_yy.sub(&target),
    ));

    // contraction over b=c reproduces sum_i x_i x_i
    let mut xsq = SurdMat::zeros(dim, dim);
    for x in &rep.basis_x {
        xsq = xsq.add(&x.matmul(x));
    }
    let casimir = match rep.family {
        Family::C => rat_int(2 * rep.rank as i64 + 1),
        _ => rat_int(dim as i64 - 1),
    };
    report.push(CheckLine::exact(
        "completeness-contraction",
        "sum_i x_i x_i equals the defining Casimir value",
        &xsq.sub(&SurdMat::scaled_identity(dim, Surd::from_rational(casimir))),
    ));
    report
}

/// The closed-form contraction constants, as rational functions of the rank
/// data, for both families. `m` is the defining dimension (2n for c_n, N for
/// so(N)); the c_n constants are written in terms of m so that the duality
/// substitution `m ↦ −N` can be checked mechanically.
struct ContractionConstants;

impl ContractionConstants {
    /// (name, c-family value as function of m = 2n, so-family value as function of N)
    #[allow(clippy::type_complexity)]
    fn table() -> Vec<(&'static str, fn(&Rational) -> Rational, fn(&Rational) -> Rational)> {
        vec![
            ("xx-casimir", |m| m + rat_int(1), |n| n - rat_int(1)),
            (
                "yy-casimir",
                |m| (m + rat_int(1)) * (m - rat_int(2)) / m,
                |n| (n + rat_int(2)) * (n - rat_int(1)) / n,
            ),
            ("xxx-sandwich", |_| -rat_int(1), |_| rat_int(1)),
            (
                "yxy-sandwich",
                |m| rat_int(1) - rat(2, 1) / m,
                |n| -(rat_int(1) + rat(2, 1) / n),
            ),
            ("xyx-sandwich", |_| rat_int(1), |_| -rat_int(1)),
            (
                "yyy-sandwich",
                |m| -(rat_int(1) + rat(2, 1) / m),
                |n| rat_int(1) - rat(2, 1) / n,
            ),
            ("cc", |m| rat_int(2) * m + rat_int(4), |n| rat_int(2) * (n - rat_int(2))),
            ("dd-yy", |m| rat_int(2) * m + rat_int(4), |n| rat_int(2) * (n - rat_int(2))),
            (
                "dd-xx",
                |m| rat_int(2) * (m * m - rat_int(4)) / m,
                |n| rat_int(2) * (n * n - rat_int(4)) / n,
            ),
            ("hh-xx", |m| rat_int(2) * m - rat_int(4), |n| rat_int(2) * (n + rat_int(2))),
            ("hh-yy", |m| rat_int(2) * m, |n| rat_int(2) * n),
            (
                "dyy-dyy",
                |m| rat_int(2) * (m - rat_int(4)) * (m + rat_int(2)) / m,
                |n| rat_int(2) * (n - rat_int(2)) * (n + rat_int(4)) / n,
            ),
        ]
    }
}

fn family_m(rep: &RepBundle) -> Rational {
    rat_int(rep.dim_v as i64)
}

fn constant_for(rep: &RepBundle, name: &str) -> Rational {
    let m = family_m(rep);
    for (n, fc, fso) in ContractionConstants::table() {
        if n == name {
            return match rep.family {
                Family::C => fc(&m),
                _ => fso(&m),
            };
        }
    }
    unreachable!("unknown constant {name}")
}

/// Checks that substituting `m = 2n ↦ −N` into each c-family contraction
/// constant reproduces the so(N) constant up to an overall sign, at every
/// sample point (enough points to pin the rational functions).
pub fn verify_duality_substitution() -> Report {
    let mut report = Report::new("duality-substitution");
    for (name, fc, fso) in ContractionConstants::table() {
        let mut ok = true;
        for nn in 3..=20i64 {
            let n = rat_int(nn);
            if fc(&(-n.clone())) != -fso(&n) {
                ok = false;
            }
        }
        report.push(CheckLine::flag(
            &format!("duality-{name}"),
            "c-family constant at m=−N equals minus the so constant",
            ok,
        ));
    }
    report
}

/// Verifies the full identity suite exactly: Casimir sums, sandwich
/// identities, the six pairwise contractions, the y-reconstruction, the cubic
/// contractions and the cc expansion (the last two for c_n only).
pub fn verify_identities(
    st: &StructureTensors,
    rep: &RepBundle,
    comp: &CompletionBasis,
) -> Result<Report> {
    let mut report = Report::new("identity-suite");
    report.set_param("family", rep.family.to_string());
    report.set_param("rank", rep.rank.to_string());
    let xs = &rep.basis_x;
    let ys = &comp.matrices;
    let (ng, ny) = (st.dim_g, st.dim_y);
    let dim = rep.dim_v;

    // product-law reconstruction for all pairs
    let lead = product_law_leading(rep);
    let half = rat(1, 2);
    let mut law_ok = true;
    for i in 0..ng {
        for j in 0..ng {
            let mut rhs = SurdMat::zeros(dim, dim);
            if i == j {
                rhs = rhs.add(&SurdMat::scaled_identity(dim, Surd::from_rational(lead.clone())));
            }
            for k in 0..ng {
                let cv = st.c.get(i, j, k);
                if !cv.is_zero() {
                    rhs = rhs.add(&xs[k].scale(&cv.mul_i().scale(&half)));
                }
            }
            for al in 0..ny {
                let dv = st.d_xxy.get(i, j, al);
                if !dv.is_zero() {
                    rhs = rhs.add(&ys[al].scale(&dv.scale(&half)));
                }
            }
            if xs[i].matmul(&xs[j]) != rhs {
                law_ok = false;
            }
        }
    }
    report.push(CheckLine::flag(
        "product-law-xx",
        "x_i x_j reconstructed from tensor tables",
        law_ok,
    ));

    let mut law_xy = true;
    for i in 0..ng {
        for al in 0..ny {
            let mut rhs = SurdMat::zeros(dim, dim);
            for be in 0..ny {
                let hv = st.h_xyy.get(i, al, be);
                if !hv.is_zero() {
                    rhs = rhs.add(&ys[be].scale(&hv.mul_i().scale(&half)));
                }
            }
            for j in 0..ng {
                let dv = st.d_xxy.get(i, j, al);
                if !dv.is_zero() {
                    rhs = rhs.add(&xs[j].scale(&dv.scale(&half)));
                }
            }
            if xs[i].matmul(&ys[al]) != rhs {
                law_xy = false;
            }
        }
    }
    report.push(CheckLine::flag(
        "product-law-xy",
        "x_i y_α reconstructed from tensor tables",
        law_xy,
    ));

    let mut law_yy = true;
    for al in 0..ny {
        for be in 0..ny {
            let mut rhs = SurdMat::zeros(dim, dim);
            if al == be {
                rhs = rhs.add(&SurdMat::scaled_identity(dim, Surd::from_rational(lead.clone())));
            }
            for i in 0..ng {
                let hv = st.h_xyy.get(i, al, be);
                if !hv.is_zero() {
                    rhs = rhs.add(&xs[i].scale(&hv.mul_i().scale(&half)));
                }
            }
            for ga in 0..ny {
                let dv = st.d_yyy.get(al, be, ga);
                if !dv.is_zero() {
                    rhs = rhs.add(&ys[ga].scale(&dv.scale(&half)));
                }
            }
            if ys[al].matmul(&ys[be]) != rhs {
                law_yy = false;
            }
        }
    }
    report.push(CheckLine::flag(
        "product-law-yy",
        "y_α y_β reconstructed from tensor tables",
        law_yy,
    ));

    // trace contractions of the tensor tables
    let mut sum_xsq = SurdMat::zeros(dim, dim);
    for x in xs {
        sum_xsq = sum_xsq.add(&x.matmul(x));
    }
    report.push(CheckLine::exact(
        "casimir-sum-x",
        "sum_i x_i x_i",
        &sum_xsq.sub(&SurdMat::scaled_identity(
            dim,
            Surd::from_rational(constant_for(rep, "xx-casimir")),
        )),
    ));
    let mut sum_ysq = SurdMat::zeros(dim, dim);
    for y in ys {
        sum_ysq = sum_ysq.add(&y.matmul(y));
    }
    report.push(CheckLine::exact(
        "casimir-sum-y",
        "sum_α y_α y_α",
        &sum_ysq.sub(&SurdMat::scaled_identity(
            dim,
            Surd::from_rational(constant_for(rep, "yy-casimir")),
        )),
    ));

    // sandwich identities on every basis element
    let sandwich = |mats: &[SurdMat], mid: &SurdMat| -> SurdMat {
        let mut s = SurdMat::zeros(dim, dim);
        for m in mats {
            s = s.add(&m.matmul(mid).matmul(m));
        }
        s
    };
    let mut ok = true;
    let cval = constant_for(rep, "xxx-sandwich");
    for x in xs {
        if sandwich(xs, x) != x.scale_rational(&cval) {
            ok = false;
        }
    }
    report.push(CheckLine::flag("sandwich-xxx", "sum_i x_i x_j x_i", ok));
    let mut ok = true;
    let cval = constant_for(rep, "yxy-sandwich");
    for x in xs {
        if sandwich(ys, x) != x.scale_rational(&cval) {
            ok = false;
        }
    }
    report.push(CheckLine::flag("sandwich-yxy", "sum_α y_α x_i y_α", ok));
    let mut ok = true;
    let cval = constant_for(rep, "xyx-sandwich");
    for y in ys {
        if sandwich(xs, y) != y.scale_rational(&cval) {
            ok = false;
        }
    }
    report.push(CheckLine::flag("sandwich-xyx", "sum_i x_i y_α x_i", ok));
    let mut ok = true;
    let cval = constant_for(rep, "yyy-sandwich");
    for y in ys {
        if sandwich(ys, y) != y.scale_rational(&cval) {
            ok = false;
        }
    }
    report.push(CheckLine::flag("sandwich-yyy", "sum_α y_α y_β y_α", ok));

    // pairwise contractions
    report.push(contraction_check("cc", st, rep, ContractionKind::CC)?);
    report.push(contraction_check("dd-yy", st, rep, ContractionKind::DDyy)?);
    report.push(contraction_check("dd-xx", st, rep, ContractionKind::DDxx)?);
    report.push(contraction_check("hh-xx", st, rep, ContractionKind::HHxx)?);
    report.push(contraction_check("hh-yy", st, rep, ContractionKind::HHyy)?);
    report.push(contraction_check("dyy-dyy", st, rep, ContractionKind::DyyDyy)?);

    // y reconstruction: 2(n+1) y_α = d_ijα x_i x_j
    if rep.family == Family::C {
        let factor = rat_int(2 * (rep.rank as i64 + 1));
        let mut ok = true;
        for (al, y) in ys.iter().enumerate() {
            let mut s = SurdMat::zeros(dim, dim);
            for i in 0..ng {
                for j in 0..ng {
                    let dv = st.d_xxy.get(i, j, al);
                    if !dv.is_zero() {
                        s = s.add(&xs[i].matmul(&xs[j]).scale(&dv));
                    }
                }
            }
            if s != y.scale_rational(&factor) {
                ok = false;
            }
        }
        report.push(CheckLine::flag(
            "y-reconstruction",
            "2(n+1)·y_α = d_ijα x_i x_j",
            ok,
        ));

        // cubic contractions
        report.push(cubic_ccc_check(st, rep));
        report.push(cubic_cdd_check(st, rep));
        report.push(cc_expansion_check(st, rep));
    }

    Ok(report)
}

enum ContractionKind {
    CC,
    DDyy,
    DDxx,
    HHxx,
    HHyy,
    DyyDyy,
}

fn contraction_check(
    name: &str,
    st: &StructureTensors,
    rep: &RepBundle,
    kind: ContractionKind,
) -> Result<CheckLine> {
    let target = Surd::from_rational(constant_for(rep, name));
    let (dim_out, gram) = match kind {
        ContractionKind::CC => (st.dim_g, pair_gram(&st.c, st.dim_g, 2)),
        ContractionKind::DDyy => (st.dim_y, pair_gram(&st.d_xxy, st.dim_y, 2)),
        ContractionKind::DDxx => (st.dim_g, pair_gram_mixed_d(st)),
        ContractionKind::HHxx => (st.dim_g, pair_gram(&st.h_xyy, st.dim_g, 0)),
        ContractionKind::HHyy => (st.dim_y, pair_gram_mixed_h(st)),
        ContractionKind::DyyDyy => (st.dim_y, pair_gram(&st.d_yyy, st.dim_y, 2)),
    };
    let mut residual = gram;
    for k in 0..dim_out {
        let v = residual.get(k, k) - &target;
        residual.set(k, k, v);
    }
    Ok(CheckLine::exact(
        name,
        "tensor pair contraction equals its closed-form constant",
        &residual,
    ))
}

/// Gram matrix `G_kl = Σ t_{..k} t_{..l}` contracting all indices except the
/// one in position `pos`.
fn pair_gram(t: &SparseSym3, dim_out: usize, pos: usize) -> SurdMat {
    let mut g = SurdMat::zeros(dim_out, dim_out);
    let entries = t.iter_expanded();
    use std::collections::HashMap;
    let mut by_rest: HashMap<(usize, usize), Vec<(usize, Surd)>> = HashMap::new();
    for (i, j, k, v) in entries {
        let (rest, out) = match pos {
            0 => ((j, k), i),
            2 => ((i, j), k),
            _ => unreachable!(),
        };
        by_rest.entry(rest).or_default().push((out, v));
    }
    for list in by_rest.values() {
        for (k, v) in list {
            for (l, w) in list {
                g.add_at(*k, *l, &(v * w));
            }
        }
    }
    g
}

/// `Σ_{i,α} d_ijα d_ikα` over the second x index.
fn pair_gram_mixed_d(st: &StructureTensors) -> SurdMat {
    let mut g = SurdMat::zeros(st.dim_g, st.dim_g);
    use std::collections::HashMap;
    let mut by_rest: HashMap<(usize, usize), Vec<(usize, Surd)>> = HashMap::new();
    for (i, j, al, v) in st.d_xxy.iter_expanded() {
        by_rest.entry((i, al)).or_default().push((j, v));
    }
    for list in by_rest.values() {
        for (k, v) in list {
            for (l, w) in list {
                g.add_at(*k, *l, &(v * w));
            }
        }
    }
    g
}

/// `Σ_{i,α} h_iαβ h_iαγ` over the second y index.
fn pair_gram_mixed_h(st: &StructureTensors) -> SurdMat {
    let mut g = SurdMat::zeros(st.dim_y, st.dim_y);
    use std::collections::HashMap;
    let mut by_rest: HashMap<(usize, usize), Vec<(usize, Surd)>> = HashMap::new();
    for (i, al, be, v) in st.h_xyy.iter_expanded() {
        by_rest.entry((i, al)).or_default().push((be, v));
    }
    for list in by_rest.values() {
        for (k, v) in list {
            for (l, w) in list {
                g.add_at(*k, *l, &(v * w));
            }
        }
    }
    g
}

/// `c_piq c_qjr c_rkp = −2(n+1) c_ijk`.
fn cubic_ccc_check(st: &StructureTensors, rep: &RepBundle) -> CheckLine {
    let ng = st.dim_g;
    // (C_i)_pq = c_piq
    let cmats: Vec<SurdMat> = (0..ng)
        .map(|i| {
            SurdMat::from_triplets(
                ng,
                ng,
                (0..ng).flat_map(|p| {
                    (0..ng).filter_map(move |q| {
                        let v = st.c.get(p, i, q);
                        (!v.is_zero()).then_some((p, q, v))
                    })
                }),
            )
        })
        .collect();
    let factor = Surd::from_rational(rat_int(-2 * (rep.rank as i64 + 1)));
    let mut ok = true;
    for i in 0..ng {
        for j in 0..ng {
            let pij = cmats[i].matmul(&cmats[j]);
            for k in 0..ng {
                // Tr(C_i C_j C_k)
                let lhs = pij.matmul(&cmats[k]).trace();
                if lhs != &factor * &st.c.get(i, j, k) {
                    ok = false;
                }
            }
        }
    }
    CheckLine::flag("ccc-cubic", "c_piq c_qjr c_rkp = −2(n+1) c_ijk", ok)
}

/// `c_pqk d_ipα d_jqα = (2/n)(n+2)(n−1) c_ijk`.
fn cubic_cdd_check(st: &StructureTensors, rep: &RepBundle) -> CheckLine {
    let ng = st.dim_g;
    let n = rep.rank as i64;
    let factor = Surd::from_rational(rat(2 * (n + 2) * (n - 1), n));
    // D_α as matrices (d symmetric)
    let dmats: Vec<SurdMat> = (0..st.dim_y)
        .map(|al| {
            SurdMat::from_triplets(
                ng,
                ng,
                (0..ng).flat_map(|i| {
                    (0..ng).filter_map(move |p| {
                        let v = st.d_xxy.get(i, p, al);
                        (!v.is_zero()).then_some((i, p, v))
                    })
                }),
            )
        })
        .collect();
    let mut ok = true;
    for k in 0..ng {
        let ck = SurdMat::from_triplets(
            ng,
            ng,
            (0..ng).flat_map(|p| {
                (0..ng).filter_map(move |q| {
                    let v = st.c.get(p, q, k);
                    (!v.is_zero()).then_some((p, q, v))
                })
            }),
        );
        let mut lhs = SurdMat::zeros(ng, ng);
        for d in &dmats {
            lhs = lhs.add(&d.matmul(&ck).matmul(&d.transpose()));
        }
        let mut rhs = SurdMat::zeros(ng, ng);
        for i in 0..ng {
            for j in 0..ng {
                let v = &factor * &st.c.get(i, j, k);
                if !v.is_zero() {
                    rhs.set(i, j, v);
                }
            }
        }
        if lhs != rhs {
            ok = false;
        }
    }
    CheckLine::flag("cdd-cubic", "c_pqk d_ipα d_jqα = (2/n)(n+2)(n−1) c_ijk", ok)
}

/// `c_ijl c_kml = (4/n)(δ_ik δ_jm − δ_im δ_jk) + d_ikα d_jmα − d_imα d_jkα`.
fn cc_expansion_check(st: &StructureTensors, rep: &RepBundle) -> CheckLine {
    let ng = st.dim_g;
    let four_over_n = rat(4, rep.rank as i64);
    use std::collections::HashMap;
    let mut lhs: HashMap<(usize, usize, usize, usize), Surd> = HashMap::new();
    let mut by_l: HashMap<usize, Vec<(usize, usize, Surd)>> = HashMap::new();
    for (i, j, l, v) in st.c.iter_expanded() {
        by_l.entry(l).or_default().push((i, j, v));
    }
    for list in by_l.values() {
        for (i, j, v) in list {
            for (k, m, w) in list {
                let e = lhs.entry((*i, *j, *k, *m)).or_insert_with(Surd::zero);
                *e += &(v * w);
            }
        }
    }
    let dv = |i: usize, k: usize, j: usize, m: usize| -> Surd {
        let mut s = Surd::zero();
        for al in 0..st.dim_y {
            s += &(&st.d_xxy.get(i, k, al) * &st.d_xxy.get(j, m, al));
        }
        s
    };
    let mut ok = true;
    for i in 0..ng {
        for j in 0..ng {
            for k in 0..ng {
                for m in 0..ng {
                    let mut rhs = &dv(i, k, j, m) - &dv(i, m, j, k);
                    if i == k && j == m {
                        rhs += &Surd::from_rational(four_over_n.clone());
                    }
                    if i == m && j == k {
                        rhs -= &Surd::from_rational(four_over_n.clone());
                    }
                    let l = lhs
                        .get(&(i, j, k, m))
                        .cloned()
                        .unwrap_or_else(Surd::zero);
                    if l != rhs {
                        ok = false;
                    }
                }
            }
        }
    }
    CheckLine::flag(
        "cc-expansion",
        "c_ijl c_kml expands into delta and d·d terms",
        ok,
    )
}

/// Totally symmetric sparse 4-tensor keyed by sorted index.
#[derive(Clone, Debug)]
pub struct SymTensor4 {
    pub dim: usize,
    map: BTreeMap<[usize; 4], Surd>,
}

impl SymTensor4 {
    pub fn get(&self, mut idx: [usize; 4]) -> Surd {
        idx.sort_unstable();
        self.map.get(&idx).cloned().unwrap_or_else(Surd::zero)
    }

    pub fn iter_canonical(&self) -> impl Iterator<Item = (&[usize; 4], &Surd)> {
        self.map.iter()
    }

    pub fn nnz_canonical(&self) -> usize {
        self.map.len()
    }
}

/// Computes the totally symmetric fourth-rank tensor two ways — the
/// symmetrised trace `v_ijkl = ½·avg_σ Tr(x_σ…)` and the closed form
/// `leading·δ_(ij δ_k)l + ¼ d_α(ij d_k)lα` (symmetrisations are averages over
/// the enclosed indices) — and verifies the two agree entrywise.
pub fn v_tensor(st: &StructureTensors, rep: &RepBundle) -> Result<SymTensor4> {
    let xs = &rep.basis_x;
    let ng = xs.len();
    let lead = product_law_leading(rep);
    let third = rat(1, 3);
    let twelfth = rat(1, 12);

    let xx: Vec<Vec<SurdMat>> = xs
        .iter()
        .map(|a| xs.iter().map(|b| a.matmul(b)).collect())
        .collect();
    let tr4 = |a: usize, b: usize, c: usize, d: usize| -> Surd { xx[a][b].matmul(&xx[c][d]).trace() };

    let mut map = BTreeMap::new();
    for i in 0..ng {
        for j in i..ng {
            for k in j..ng {
                for l in k..ng {
                    // six cyclic classes of S4, each appearing four times
                    let sum = &(&(&tr4(i, j, k, l) + &tr4(i, j, l, k)) + &(&tr4(i, k, j, l) + &tr4(i, k, l, j)))
                        + &(&tr4(i, l, j, k) + &tr4(i, l, k, j));
                    let trace_form = sum.scale(&rat(1, 12));

                    let mut dd = Surd::zero();
                    for al in 0..st.dim_y {
                        dd += &(&st.d_xxy.get(i, j, al) * &st.d_xxy.get(k, l, al));
                        dd += &(&st.d_xxy.get(j, k, al) * &st.d_xxy.get(i, l, al));
                        dd += &(&st.d_xxy.get(k, i, al) * &st.d_xxy.get(j, l, al));
                    }
                    let mut deltas = 0i64;
                    if i == j && k == l {
                        deltas += 1;
                    }
                    if j == k && i == l {
                        deltas += 1;
                    }
                    if k == i && j == l {
                        deltas += 1;
                    }
                    let closed = &Surd::from_rational(&lead * &third * rat_int(deltas))
                        + &dd.scale(&twelfth);

                    if trace_form != closed {
                        return Err(Error::Consistency(format!(
                            "v tensor trace and closed forms disagree at ({i},{j},{k},{l}): {trace_form} vs {closed}"
                        )));
                    }
                    if !trace_form.is_real() {
                        return Err(Error::Consistency(format!(
                            "v_{i}{j}{k}{l} is not real: {trace_form}"
                        )));
                    }
                    if !trace_form.is_zero() {
                        map.insert([i, j, k, l], trace_form);
                    }
                }
            }
        }
    }
    Ok(SymTensor4 { dim: ng, map })
}

/// Evaluates the totally symmetric sixth-rank component
/// `d_αβγ d_(ij^α d_kl^β d_pq)^γ` at one index tuple (average over the 6!
/// permutations, computed via the 15 pair matchings) without materialising
/// the tensor.
pub fn sextic_component(st: &StructureTensors, idx: [usize; 6]) -> Result<Surd> {
    for &i in &idx {
        if i >= st.dim_g {
            return Err(Error::IndexRange(format!(
                "index {i} out of range (dim {})",
                st.dim_g
            )));
        }
    }
    let ny = st.dim_y;
    let dvec = |a: usize, b: usize| -> Vec<Surd> {
        (0..ny).map(|al| st.d_xxy.get(a, b, al)).collect()
    };
    let triple = |u: &[Surd], v: &[Surd], w: &[Surd]| -> Surd {
        let mut s = Surd::zero();
        for (&(al, be, ga), t) in st.d_yyy.iter_canonical() {
            // expand the symmetric orbit of (al, be, ga)
            let mut orbit: Vec<(usize, usize, usize)> = vec![
                (al, be, ga),
                (al, ga, be),
                (be, al, ga),
                (be, ga, al),
                (ga, al, be),
                (ga, be, al),
            ];
            orbit.sort_unstable();
            orbit.dedup();
            for (a, b, c) in orbit {
                s += &(&(&u[a] * &v[b]) * &(&w[c] * t));
            }
        }
        s
    };
    let mut total = Surd::zero();
    let mut count = 0i64;
    for matching in pair_matchings(&idx) {
        let [(a, b), (c, d), (e, f)] = matching;
        total += &triple(&dvec(a, b), &dvec(c, d), &dvec(e, f));
        count += 1;
    }
    total.div_rational(&rat_int(count))
}

/// The 15 perfect matchings of six items.
fn pair_matchings(idx: &[usize; 6]) -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::with_capacity(15);
    let rest: Vec<usize> = (1..6).collect();
    for (p, &first) in rest.iter().enumerate() {
        let rem: Vec<usize> = rest.iter().copied().filter(|&r| r != first).collect();
        // pair 0-first, then match the remaining four
        for q in 1..4 {
            let second = rem[0];
            let partner = rem[q];
            let others: Vec<usize> = rem[1..].iter().copied().filter(|&r| r != partner).collect();
            out.push([
                (idx[0], idx[first]),
                (idx[second], idx[partner]),
                (idx[others[0]], idx[others[1]]),
            ]);
        }
        let _ = p;
    }
    out
}

/// The adjoint matrices `(F_i)_jk = −i c_ijk` and the h-representation
/// `(R_i)_αβ = −i h_iαβ`, verified to satisfy the algebra commutation
/// relations exactly along with their Casimir contractions.
#[derive(Clone, Debug)]
pub struct DerivedReps {
    pub adjoint: Vec<SurdMat>,
    pub h_rep: Vec<SurdMat>,
    pub adjoint_casimir: Rational,
    pub h_rep_casimir: Rational,
}

pub fn derived_reps(st: &StructureTensors, rep: &RepBundle) -> Result<DerivedReps> {
    let ng = st.dim_g;
    let ny = st.dim_y;
    let adjoint: Vec<SurdMat> = (0..ng)
        .map(|i| {
            SurdMat::from_triplets(
                ng,
                ng,
                (0..ng).flat_map(|j| {
                    (0..ng).filter_map(move |k| {
                        let v = -st.c.get(i, j, k).mul_i();
                        (!v.is_zero()).then_some((j, k, v))
                    })
                }),
            )
        })
        .collect();
    let h_rep: Vec<SurdMat> = (0..ng)
        .map(|i| {
            SurdMat::from_triplets(
                ny,
                ny,
                (0..ny).flat_map(|al| {
                    (0..ny).filter_map(move |be| {
                        let v = -st.h_xyy.get(i, al, be).mul_i();
                        (!v.is_zero()).then_some((al, be, v))
                    })
                }),
            )
        })
        .collect();

    for mats in [&adjoint, &h_rep] {
        for i in 0..ng {
            for j in (i + 1)..ng {
                let comm = SurdMat::commutator(&mats[i], &mats[j]);
                let mut want = SurdMat::zeros(mats[i].nrows(), mats[i].ncols());
                for k in 0..ng {
                    let cv = st.c.get(i, j, k);
                    if !cv.is_zero() {
                        want = want.add(&mats[k].scale(&cv.mul_i()));
                    }
                }
                if comm != want {
                    return Err(Error::Consistency(format!(
                        "derived representation violates the algebra at pair ({i},{j})"
                    )));
                }
            }
        }
    }

    let adjoint_casimir = constant_for(rep, "cc");
    let h_rep_casimir = constant_for(rep, "hh-yy");
    let check_casimir = |mats: &[SurdMat], value: &Rational| -> bool {
        let dim = mats[0].nrows();
        let mut s = SurdMat::zeros(dim, dim);
        for m in mats {
            s = s.add(&m.matmul(m));
        }
        s == SurdMat::scaled_identity(dim, Surd::from_rational(value.clone()))
    };
    if !check_casimir(&adjoint, &adjoint_casimir) {
        return Err(Error::Consistency("adjoint Casimir mismatch".into()));
    }
    if !check_casimir(&h_rep, &h_rep_casimir) {
        return Err(Error::Consistency("h-representation Casimir mismatch".into()));
    }
    Ok(DerivedReps {
        adjoint,
        h_rep,
        adjoint_casimir,
        h_rep_casimir,
    })
}

/// The totally symmetric su(n) d-tensor `d_ijk = ¼ Tr({λ_i,λ_j} λ_k)` for a
/// hermitian basis with `Tr λ_i λ_j = 2δ_ij`.
pub fn su_symmetric_d(basis: &[SurdMat]) -> Result<SparseSym3> {
    let ng = basis.len();
    let mut t = SparseSym3::new((ng, ng, ng), Sym3::SymmetricAll);
    let quarter = rat(1, 4);
    for i in 0..ng {
        for j in i..ng {
            let anti = SurdMat::anticommutator(&basis[i], &basis[j]);
            for k in j..ng {
                let v = real_checked(
                    anti.matmul(&basis[k]).trace().scale(&quarter),
                    "su d_ijk",
                )?;
                t.insert_canonical(i, j, k, v);
            }
        }
    }
    Ok(t)
}

/// Summary constants for Casimir eigenvalue reporting.
pub fn casimir_eigenvalues(rep: &RepBundle) -> Vec<(String, Rational)> {
    vec![
        ("defining".to_string(), constant_for(rep, "xx-casimir")),
        ("h-rep".to_string(), constant_for(rep, "hh-yy")),
        ("adjoint-contraction".to_string(), constant_for(rep, "cc")),
    ]
}

/// Human-readable rational constant (for report text).
pub fn constant_string(r: &Rational) -> String {
    rational_to_string(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::definingrep::build_rep;

    #[test]
    fn completion_counts() {
        let rep = build_rep(Family::C, 2).unwrap();
        let comp = complete_basis(&rep).unwrap();
        assert_eq!(comp.count(), 5);
        let rep = build_rep(Family::B, 2).unwrap();
        let comp = complete_basis(&rep).unwrap();
        assert_eq!(comp.count(), 14);
    }

    #[test]
    fn completion_trace_properties() {
        let rep = build_rep(Family::C, 2).unwrap();
        let comp = complete_basis(&rep).unwrap();
        for (a, y) in comp.matrices.iter().enumerate() {
            assert_eq!(y.dagger(), *y);
            assert!(y.trace().is_zero());
            assert_eq!(rep.metric_conjugate(y), y.transpose());
            for x in &rep.basis_x {
                assert!(x.matmul(y).trace().is_zero());
            }
            for (b, z) in comp.matrices.iter().enumerate() {
                let want = if a == b { Surd::from_int(2) } else { Surd::zero() };
                assert_eq!(y.matmul(z).trace(), want);
            }
        }
    }

    #[test]
    fn contracted_d_traces_vanish() {
        let rep = build_rep(Family::C, 2).unwrap();
        let comp = complete_basis(&rep).unwrap();
        let st = structure_tensors(&rep, &comp).unwrap();
        for al in 0..st.dim_y {
            let mut s = Surd::zero();
            for i in 0..st.dim_g {
                s += &st.d_xxy.get(i, i, al);
            }
            assert!(s.is_zero(), "sum_i d_iiα nonzero for α={al}");
        }
        for ga in 0..st.dim_y {
            let mut s = Surd::zero();
            for al in 0..st.dim_y {
                s += &st.d_yyy.get(al, al, ga);
            }
            assert!(s.is_zero(), "sum_α d_ααγ nonzero for γ={ga}");
        }
    }

    #[test]
    fn antisymmetry_and_symmetry_reconstruction() {
        let rep = build_rep(Family::C, 2).unwrap();
        let comp = complete_basis(&rep).unwrap();
        let st = structure_tensors(&rep, &comp).unwrap();
        assert_eq!(st.c.get(0, 2, 3), -st.c.get(2, 0, 3));
        assert_eq!(st.c.get(1, 1, 4), Surd::zero());
        assert_eq!(st.d_xxy.get(2, 0, 1), st.d_xxy.get(0, 2, 1));
        assert_eq!(st.h_xyy.get(0, 2, 1), -st.h_xyy.get(0, 1, 2));
    }

    #[test]
    fn sextic_symmetry_and_matchings() {
        let rep = build_rep(Family::C, 2).unwrap();
        let comp = complete_basis(&rep).unwrap();
        let st = structure_tensors(&rep, &comp).unwrap();
        assert_eq!(pair_matchings(&[0, 1, 2, 3, 4, 5]).len(), 15);
        let v1 = sextic_component(&st, [0, 2, 3, 4, 5, 6]).unwrap();
        let v2 = sextic_component(&st, [4, 2, 6, 0, 5, 3]).unwrap();
        assert_eq!(v1, v2);
        // all six indices on one Cartan direction evaluates to zero for c_2
        let v = sextic_component(&st, [0; 6]).unwrap();
        assert!(v.is_zero());
        assert!(sextic_component(&st, [0, 1, 2, 3, 4, 99]).is_err());
    }
}
