//! Composed verification pipelines: everything the library can check for a
//! given family and rank, bundled into machine-readable reports.

use crate::definingrep::{build_rep, check_cartan_weyl, RepBundle};
use crate::fock::{
    chirality_blocks, metaplectic_rep, oscillator_metric_scalar, spinor_rep_b, spinor_rep_d,
    su_oscillator_rep, OperatorRep, OscKind,
};
use crate::loper::{
    build_l, build_l_su, casimir_checks, closed_form_l, eigen_structure, operator_product_laws,
    quadratic_residual, quadratic_residual_su, spectral_blocks, su_level_laws, LOperator,
    QuadraticSpec,
};
use crate::matrix::SurdMat;
use crate::report::{CheckLine, Report};
use crate::rootsys::Family;
use crate::rtt::{
    check_pk_algebra, check_rtt, check_rtt_monodromy, check_rtt_su, check_ybe, check_ybe_su,
    invariant_form, monodromy, r_matrix, sample_parameters,
};
use crate::scalar::{Rational, Surd};
use crate::tensors::{
    complete_basis, derived_reps, structure_tensors, v_tensor, verify_completeness,
    verify_duality_substitution, verify_identities,
};
use crate::{Error, Result};

/// Default bosonic cutoff when a family needs one and none was given.
pub const DEFAULT_CUTOFF: usize = 6;

/// Builds the oscillator representation appropriate for a family.
pub fn oscillator_for(rep: &RepBundle, cutoff: Option<usize>) -> Result<OperatorRep> {
    match rep.family {
        Family::C => metaplectic_rep(rep.rank, cutoff.unwrap_or(DEFAULT_CUTOFF), rep),
        Family::B => spinor_rep_b(rep.rank, rep),
        Family::D => spinor_rep_d(rep.rank, rep),
        Family::A => Err(Error::FamilyMismatch(
            "the a family uses the su oscillator pipeline".into(),
        )),
    }
}

/// Verifies the Cartan-Weyl relations plus the basis trace/transpose
/// properties for one family and rank.
pub fn construction_report(family: Family, rank: usize) -> Result<Report> {
    let rep = build_rep(family, rank)?;
    let mut report = Report::new("construction");
    report.set_param("family", family.to_string());
    report.set_param("rank", rank.to_string());
    let cw = check_cartan_weyl(&rep);
    let failures = cw.relations.iter().filter(|r| !r.pass).count();
    report.push(CheckLine::flag(
        "cartan-weyl",
        &format!(
            "{} commutation relations verified exactly",
            cw.relations.len()
        ),
        failures == 0,
    ));
    // build_rep already enforces the trace/transpose invariants; re-assert
    // them here so the report stands on its own.
    let mut trace_ok = true;
    for (i, x) in rep.basis_x.iter().enumerate() {
        if x.dagger() != *x || !x.trace().is_zero() {
            trace_ok = false;
        }
        for (j, y) in rep.basis_x.iter().enumerate() {
            let want = if i == j { Surd::from_int(2) } else { Surd::zero() };
            if x.matmul(y).trace() != want {
                trace_ok = false;
            }
        }
    }
    report.push(CheckLine::flag(
        "trace-orthonormality",
        "x_i hermitian, traceless, Tr x_i x_j = 2δ_ij",
        trace_ok,
    ));
    let mut transpose_ok = true;
    for x in &rep.basis_x {
        if x.transpose() != rep.metric_conjugate(x).neg() {
            transpose_ok = false;
        }
    }
    report.push(CheckLine::flag(
        "transpose-constraint",
        "x^T = −G x G^{-1} for every basis element",
        transpose_ok,
    ));
    Ok(report)
}

/// Completeness, identity suite, derived representations and Casimir list.
pub fn tensor_report(family: Family, rank: usize) -> Result<Report> {
    let rep = build_rep(family, rank)?;
    let comp = complete_basis(&rep)?;
    let st = structure_tensors(&rep, &comp)?;
    let mut report = verify_completeness(&rep, &comp);
    report.merge(verify_identities(&st, &rep, &comp)?);
    match derived_reps(&st, &rep) {
        Ok(_) => report.push(CheckLine::flag(
            "derived-reps",
            "adjoint and h-representation with exact commutators and Casimirs",
            true,
        )),
        Err(e) => report.push(CheckLine::flag("derived-reps", &format!("{e}"), false)),
    }
    Ok(report)
}

/// Oscillator representation checks: commutators against the structure
/// constants, hermiticity pairings, parity invariance, and the metric scalar.
pub fn oscillator_report(family: Family, rank: usize, cutoff: Option<usize>) -> Result<Report> {
    let rep = build_rep(family, rank)?;
    let comp = complete_basis(&rep)?;
    let st = structure_tensors(&rep, &comp)?;
    let op = oscillator_for(&rep, cutoff)?;
    let mut report = Report::new("oscillator");
    report.set_param("family", family.to_string());
    report.set_param("rank", rank.to_string());
    if let Some(c) = cutoff {
        report.set_param("cutoff", c.to_string());
    }

    let interior = op.interior(op.interior_depth);
    let ng = rep.dim_g();
    let mut comm_ok = true;
    for i in 0..ng {
        for j in (i + 1)..ng {
            let comm = SurdMat::commutator(&op.x_ops[i], &op.x_ops[j]);
            let mut want = SurdMat::zeros(op.dim_h(), op.dim_h());
            for k in 0..ng {
                let cv = st.c.get(i, j, k);
                if !cv.is_zero() {
                    want = want.add(&op.x_ops[k].scale(&cv.mul_i()));
                }
            }
            if !comm.sub(&want).columns_are_zero(&interior) {
                comm_ok = false;
            }
        }
    }
    report.push(
        CheckLine::flag(
            "oscillator-commutators",
            "[X_i, X_j] = i c_ijk X_k against the tensor table",
            comm_ok,
        )
        .with_interior(interior.len()),
    );

    // hermiticity pairing per positive root
    let compact = |vector: &[i64]| vector.iter().sum::<i64>() == 0;
    let mut herm_ok = true;
    for (alpha, root) in rep.roots.positive.iter().enumerate() {
        let (plus, minus) = op.ladder_ops(alpha);
        let expect = match op.kind {
            OscKind::Metaplectic => {
                if compact(&root.vector) {
                    plus.dagger()
                } else {
                    plus.dagger().neg()
                }
            }
            _ => plus.dagger(),
        };
        if minus != expect {
            herm_ok = false;
        }
    }
    report.push(CheckLine::flag(
        "hermiticity-pairing",
        "ladder adjoints match the compact/non-compact classification",
        herm_ok,
    ));

    // parity split
    match chirality_blocks(&op) {
        Ok(split) => {
            report.push(CheckLine::flag(
                "parity-blocks",
                &format!(
                    "block dimensions {} and {}",
                    split.even.len(),
                    split.odd.len()
                ),
                true,
            ));
        }
        Err(e) => report.push(CheckLine::flag("parity-blocks", &format!("{e}"), false)),
    }

    // vᵀGv scalar
    let (mat, expected) = oscillator_metric_scalar(&rep, &op)?;
    let residual = mat.sub(&SurdMat::scaled_identity(
        op.dim_h(),
        Surd::from_rational(expected),
    ));
    report.push(CheckLine::exact_on_columns(
        "metric-scalar",
        "vᵀGv is the family scalar on the interior",
        &residual,
        &op.interior(1),
    ));

    // raising-sector commutativity: exact for C/D, a nonzero witness for B
    let raising: Vec<usize> = rep
        .roots
        .positive
        .iter()
        .enumerate()
        .filter(|(_, r)| !compact(&r.vector))
        .map(|(a, _)| a)
        .collect();
    let mut max_comm_zero = true;
    let mut witness = false;
    for &a in &raising {
        for &b in &raising {
            let (ea, _) = op.ladder_ops(a);
            let (eb, _) = op.ladder_ops(b);
            let comm = SurdMat::commutator(&ea, &eb);
            if !comm.columns_are_zero(&interior) {
                max_comm_zero = false;
                witness = true;
            }
        }
    }
    match family {
        Family::B => report.push(CheckLine::flag(
            "raising-sector",
            "the raising sector is not commutative (witness found)",
            witness,
        )),
        _ => report.push(CheckLine::flag(
            "raising-sector",
            "all raising-sector generators commute",
            max_comm_zero,
        )),
    }
    Ok(report)
}

/// L-operator checks: closed form, quadratic relation, Casimir suite,
/// product laws, spectral structure.
pub fn l_operator_report(family: Family, rank: usize, cutoff: Option<usize>) -> Result<Report> {
    let rep = build_rep(family, rank)?;
    let comp = complete_basis(&rep)?;
    let st = structure_tensors(&rep, &comp)?;
    let op = oscillator_for(&rep, cutoff)?;
    let l = build_l(&rep, &op)?;
    let mut report = Report::new("l-operator");
    report.set_param("family", family.to_string());
    report.set_param("rank", rank.to_string());
    if let Some(c) = cutoff {
        report.set_param("cutoff", c.to_string());
    }

    let cf = closed_form_l(&rep, &op)?;
    report.push(CheckLine::exact(
        "closed-form",
        "L = Σ x_i⊗X_i equals its metric closed form",
        &l.mat.sub(&cf.mat),
    ));

    let spec = QuadraticSpec::for_l(&l)?;
    report.push(quadratic_residual(&l, &spec));
    report.merge(casimir_checks(&rep, &op, &st, &l)?);
    if op.kind == OscKind::Metaplectic {
        report.merge(operator_product_laws(&rep, &op, &st)?);
    }
    report.merge(spectrum_report_from(&rep, &op, &l)?);
    Ok(report)
}

/// Spectral structure on each parity sector: exactly two eigenvalues with
/// integer multiplicities from the trace system.
pub fn spectrum_report_from(
    rep: &RepBundle,
    op: &OperatorRep,
    l: &LOperator,
) -> Result<Report> {
    let mut report = Report::new("spectrum");
    report.set_param("family", rep.family.to_string());
    report.set_param("rank", rep.rank.to_string());
    let spec = QuadraticSpec::for_l(l)?;
    for (name, cols) in spectral_blocks(l, op) {
        if cols.is_empty() {
            continue;
        }
        match eigen_structure(l, &spec, &cols) {
            Ok(eig) => {
                report.push(CheckLine::flag(
                    &format!("spectrum-{name}"),
                    &format!(
                        "eigenvalue {} with multiplicity {}, eigenvalue {} with multiplicity {}",
                        eig.lam_plus, eig.mult_plus, eig.lam_minus, eig.mult_minus
                    ),
                    eig.mult_plus + eig.mult_minus == cols.len(),
                ));
            }
            Err(e) => {
                report.push(CheckLine::flag(
                    &format!("spectrum-{name}"),
                    &format!("{e}"),
                    false,
                ));
            }
        }
    }
    Ok(report)
}

/// Seeded Yang-Baxter verification.
pub fn ybe_report(family: Family, rank: usize, samples: usize, seed: u64) -> Result<Report> {
    let rep = build_rep(family, rank)?;
    let mut report = Report::new("ybe");
    report.set_param("family", family.to_string());
    report.set_param("rank", rank.to_string());
    report.set_param("seed", seed.to_string());
    report.set_param("samples", samples.to_string());
    for line in check_pk_algebra(&rep) {
        report.push(line);
    }
    for (u, v, eta) in sample_parameters(&rep, seed, samples) {
        report.push(check_ybe(&rep, &u, &v, &eta)?);
    }
    Ok(report)
}

/// Seeded RTT verification, including the invariant decomposition of R for
/// the c family.
pub fn rtt_report(
    family: Family,
    rank: usize,
    cutoff: Option<usize>,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let rep = build_rep(family, rank)?;
    let op = oscillator_for(&rep, cutoff)?;
    let l = build_l(&rep, &op)?;
    let mut report = Report::new("rtt");
    report.set_param("family", family.to_string());
    report.set_param("rank", rank.to_string());
    report.set_param("seed", seed.to_string());
    if let Some(c) = cutoff {
        report.set_param("cutoff", c.to_string());
    }
    for (u, v, eta) in sample_parameters(&rep, seed, samples) {
        report.push(check_rtt(&rep, &l, &u, &v, &eta)?);
    }
    if family == Family::C {
        let comp = complete_basis(&rep)?;
        let (u, v, eta) = sample_parameters(&rep, seed.wrapping_add(1), 1)[0].clone();
        let _ = v;
        let r = r_matrix(&rep, &u, &eta)?;
        match invariant_form(&r, &rep, &comp) {
            Ok(_) => report.push(CheckLine::flag(
                "invariant-form",
                "R decomposes exactly over I, Σx⊗x, Σy⊗y",
                true,
            )),
            Err(e) => report.push(CheckLine::flag("invariant-form", &format!("{e}"), false)),
        }
    }
    Ok(report)
}

/// Monodromy RTT for an N-site homogeneous chain.
pub fn monodromy_report(
    family: Family,
    rank: usize,
    sites: usize,
    cutoff: Option<usize>,
    u: &Rational,
    v: &Rational,
    eta: &Rational,
) -> Result<Report> {
    let rep = build_rep(family, rank)?;
    let op = oscillator_for(&rep, cutoff)?;
    let l = build_l(&rep, &op)?;
    let ls: Vec<&LOperator> = std::iter::repeat_n(&l, sites).collect();
    let mut report = Report::new("monodromy");
    report.set_param("family", family.to_string());
    report.set_param("rank", rank.to_string());
    report.set_param("sites", sites.to_string());
    // the product reduces to build_t for one site
    let t = monodromy(&ls, u, eta)?;
    if sites == 1 {
        let direct = crate::rtt::build_t(&l, u, eta);
        report.push(CheckLine::exact(
            "monodromy-single-site",
            "one-site monodromy reduces to T(u) = u + ηL",
            &t.mat.sub(&direct.mat),
        ));
    }
    report.push(check_rtt_monodromy(&rep, &ls, u, v, eta)?);
    Ok(report)
}

/// su(n) oscillator pipeline: level laws, quadratics, and the Yangian RTT.
pub fn su_report(n: usize, cutoff: usize, seed: u64) -> Result<Report> {
    let rep = su_oscillator_rep(n, cutoff)?;
    let l = build_l_su(&rep)?;
    let mut report = Report::new("su-oscillator");
    report.set_param("n", n.to_string());
    report.set_param("cutoff", cutoff.to_string());
    let nop = rep.number_operator();
    let mut ok = true;
    for x in &rep.x_ops {
        if !SurdMat::commutator(&nop, x).is_zero() {
            ok = false;
        }
    }
    report.push(CheckLine::flag(
        "number-invariant",
        "[N, X_i] = 0 for every generator",
        ok,
    ));
    report.merge(quadratic_residual_su(&rep, &l));
    report.merge(su_level_laws(&rep)?);
    // seeded RTT with the permutation R-matrix
    let mut rng_params = Vec::new();
    {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        while rng_params.len() < 3 {
            let mut draw = || {
                let num: i64 = loop {
                    let k = rng.gen_range(-5..=5);
                    if k != 0 {
                        break k;
                    }
                };
                Rational::new(num.into(), rng.gen_range(1..=2).into())
            };
            let u = draw();
            let v = draw();
            let eta = draw();
            if u != v {
                rng_params.push((u, v, eta));
            }
        }
    }
    for (u, v, eta) in rng_params {
        report.push(check_ybe_su(n, &u, &v, &eta)?);
        report.push(check_rtt_su(n, &l, &u, &v, &eta)?);
    }
    // per-level spectrum from the trace system
    for level in 0..=(cutoff as u32) {
        let idx = rep.space.level_indices(level);
        let cols = l.cols_for_quantum(&idx);
        let spec = QuadraticSpec::su_level(n, level);
        match eigen_structure(&l, &spec, &cols) {
            Ok(eig) => report.push(CheckLine::flag(
                &format!("su-spectrum-level-{level}"),
                &format!(
                    "eigenvalues {} (×{}) and {} (×{})",
                    eig.lam_plus, eig.mult_plus, eig.lam_minus, eig.mult_minus
                ),
                true,
            )),
            Err(e) => report.push(CheckLine::flag(
                &format!("su-spectrum-level-{level}"),
                &format!("{e}"),
                false,
            )),
        }
    }
    Ok(report)
}

/// The complete verification pipeline for one family and rank.
pub fn verify_all(
    family: Family,
    rank: usize,
    cutoff: Option<usize>,
    seed: u64,
) -> Result<Report> {
    let mut report = Report::new("verify-all");
    report.set_param("family", family.to_string());
    report.set_param("rank", rank.to_string());
    report.set_param("seed", seed.to_string());
    if let Some(c) = cutoff {
        report.set_param("cutoff", c.to_string());
    }
    if family == Family::A {
        let su_n = rank + 1;
        report.merge(su_report(su_n, cutoff.unwrap_or(DEFAULT_CUTOFF), seed)?);
        report.push(CheckLine::flag(
            "verify-all",
            "a-family pipeline complete",
            report.pass,
        ));
        return Ok(report);
    }
    report.merge(construction_report(family, rank)?);
    report.merge(tensor_report(family, rank)?);
    report.merge(verify_duality_substitution());
    report.merge(oscillator_report(family, rank, cutoff)?);
    report.merge(l_operator_report(family, rank, cutoff)?);
    report.merge(ybe_report(family, rank, 5, seed)?);
    report.merge(rtt_report(family, rank, cutoff, 3, seed)?);
    let v_small = family == Family::C && rank == 2 || family == Family::D && rank == 3;
    if v_small {
        let rep = build_rep(family, rank)?;
        let comp = complete_basis(&rep)?;
        let st = structure_tensors(&rep, &comp)?;
        match v_tensor(&st, &rep) {
            Ok(_) => report.push(CheckLine::flag(
                "v-tensor",
                "trace and closed forms agree entrywise",
                true,
            )),
            Err(e) => report.push(CheckLine::flag("v-tensor", &format!("{e}"), false)),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_report_b2() {
        let r = construction_report(Family::B, 2).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn invalid_rank_bubbles_up() {
        assert!(construction_report(Family::D, 2).is_err());
    }
}
