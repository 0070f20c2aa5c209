//! The checks behind each suite name.

use std::fmt::Display;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CliError, SuiteConfig, Task};
use crate::classical::{
    classical_limit_check, loop_normalize, monomial_independence_check, psi_apply, psi_closed_form,
    ClassicalError, ClosedFamily,
};
use crate::coeffring::{rat, Field, HbarPoly, Ring, Scalar};
use crate::filtration::{
    congruence_outcome, graded_yangian_target, scong_target, tbar_congruence_check,
    twisted_phi_target, zeta_target, Bounds, CongruenceEngine, Flip,
};
use crate::freealg::{Case, Certificate, MembershipError, NCPoly};
use crate::qloop::{
    certify_rs_target, check_lemma_srm, divide_uniform, expand_qloop_relation, lemma_rhs,
    qloop_relation_component, raw_component, rs_identity, srm_expand, stilde_expand, trm_expand,
    tt_display_family, verify_twisted_images, LemmaOutcome, QKind, QLoopElem, RsError, TrmFamily,
};
use crate::report::{Check, Status};
use crate::rmat::{check_unitarity, ybe_defect, RKind, RelKey, RelationFamily};
use crate::yangian::{
    certify_in_relations, commutator_rule, embed_twisted_yangian_scaled, expand_yangian_relation,
    is_normal, normalize_with, quads_pub, t as yt, verify_twisted_embedding,
    verify_twisted_embedding_with, yangian_relation, yangian_relation_family, Strategy,
    TwistedCaps, YangianElem,
};

pub(super) fn tasks(name: &str, c: &SuiteConfig) -> Result<Vec<Task>, CliError> {
    Ok(match name {
        "ybe" => ybe(c),
        "rtt-expansion" => rtt_expansion(c),
        "yangian-pbw" => yangian_pbw(c),
        "embed-ytw" => embed_ytw(c),
        "qloop-classical-limit" => classical_limit(c),
        "rs-identity" => rs_identities(c),
        "graded-relation" => graded_relation(c),
        "scong" => scong(c),
        "twisted-phi" => twisted_phi(c),
        "separation" => separation(c),
        _ => return Err(CliError::UnknownSuite(name.into())),
    })
}

type Quad = (usize, usize, usize, usize);

fn pass() -> Check {
    Check::pass("")
}

fn fail(d: impl Into<String>) -> Check {
    Check::fail("", d)
}

fn inconclusive(e: impl Display) -> Check {
    Check::new("", Status::Inconclusive).with_detail(e.to_string())
}

fn anonymous(mut c: Check) -> Check {
    c.name.clear();
    c
}

/// Long expansions are cut for the report.
fn show(p: &impl Display) -> String {
    let s = p.to_string();
    match s.char_indices().nth(600) {
        Some((cut, _)) => format!("{}…", &s[..cut]),
        None => s,
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect()
}

fn quad_name((i, j, k, l): Quad) -> String {
    format!("{i}{j}{k}{l}")
}

/// Negate the coefficient of the leading term.
fn negate_first_term<C: Scalar>(p: &NCPoly<C>) -> NCPoly<C> {
    let mut out = p.clone();
    if let Some((w, c)) = p.terms().iter().next() {
        out.add_term(w.clone(), c.neg());
        out.add_term(w.clone(), c.neg());
    }
    out
}

fn membership<C: Field>(r: Result<Certificate<C>, MembershipError<C>>) -> Check {
    match r {
        Ok(cert) => pass().with_certificate(cert.summary()),
        Err(MembershipError::NotInSpan { residual }) => fail(format!(
            "not in the relation span; residual {}",
            show(&residual)
        )),
        Err(e) => inconclusive(e),
    }
}

fn ybe(c: &SuiteConfig) -> Vec<Task> {
    let n = c.n;
    let task = |label: &str, kind: RKind, flip: bool| {
        Task::one(label, move || match ybe_defect(kind, n, flip) {
            Ok(None) => pass(),
            Ok(Some((row, col))) => fail(format!(
                "R12 R13 R23 - R23 R13 R12 is nonzero at row {row:?}, column {col:?}"
            )),
            Err(e) => inconclusive(e),
        })
        .param("n", n)
    };
    let mut yangian = task("yangian", RKind::Yangian, c.negative_control);
    if c.negative_control {
        yangian = yangian.param("flipped", "R13 entry E12⊗E21");
    }
    vec![
        yangian,
        task("quantum", RKind::Quantum, false),
        Task::one("unitarity", move || match check_unitarity(n) {
            Ok(ok) => {
                Check::from_bool("", ok, || "R(u) R(-u) differs from (1 - ħ² u^-2) Id".into())
            }
            Err(e) => inconclusive(e),
        })
        .param("n", n),
    ]
}

fn family_check<C: Scalar>(
    got: Result<RelationFamily<C>, impl Display>,
    expect: RelationFamily<C>,
) -> Check {
    let got = match got {
        Ok(f) => f,
        Err(e) => return inconclusive(e),
    };
    let diff = got.differences(&expect);
    match diff.first() {
        None => pass().with_detail(format!("{} components", got.len())),
        Some(k) => {
            let zero = NCPoly::zero();
            let a = got.members.get(k).unwrap_or(&zero);
            let b = expect.members.get(k).unwrap_or(&zero);
            fail(format!(
                "{} components differ; at {k}, expansion minus display = {}",
                diff.len(),
                show(&a.sub(b))
            ))
        }
    }
}

/// The displayed relation with the sign of its `ħ` term reversed.
fn flipped_yangian_relation((i, j, k, l): Quad, m: i32, n: i32) -> YangianElem {
    let quad = yt(k, j, m)
        .mul(&yt(i, l, n))
        .sub(&yt(k, j, n).mul(&yt(i, l, m)));
    yangian_relation(i, j, k, l, m, n)
        .add(&quad.scale(&HbarPoly::hbar().mul(&HbarPoly::from_int(2))))
}

fn raw_family(kind: QKind, n: usize, order: u32) -> RelationFamily<crate::coeffring::RatFun> {
    let mut fam = RelationFamily::new(kind.name());
    let [wu, wv] = kind.window(order);
    for idx in quads_pub(n) {
        for a in wu.0..=wu.1 {
            for b in wv.0..=wv.1 {
                fam.insert(
                    RelKey::new(idx.0, idx.1, idx.2, idx.3, [a, b, 0]),
                    raw_component(kind, idx, a, b),
                );
            }
        }
    }
    fam
}

fn rtt_expansion(c: &SuiteConfig) -> Vec<Task> {
    let (n, order, flip) = (c.n, c.rmax as u32, c.negative_control);
    let mut yangian = Task::one("yangian", move || {
        let mut expect = yangian_relation_family(n, order);
        if flip {
            expect.members.insert(
                RelKey::new(1, 2, 2, 1, [-1, 0, 0]),
                flipped_yangian_relation((1, 2, 2, 1), 1, 0),
            );
        }
        family_check(expand_yangian_relation(n, order), expect)
    })
    .param("n", n)
    .param("levels", order);
    if flip {
        yangian = yangian.param("flipped", "ħ term of [1221;1,0]");
    }
    let mut tasks = vec![yangian];
    for kind in [QKind::TT, QKind::TbarTbar, QKind::TbarT] {
        tasks.push(
            Task::one(format!("quantum-{}", kind.name()), move || {
                let expect = if kind == QKind::TT {
                    tt_display_family(n, order)
                } else {
                    raw_family(kind, n, order)
                };
                family_check(expand_qloop_relation(kind, n, order), expect)
            })
            .param("n", n)
            .param("levels", order),
        );
    }
    tasks
}

fn yangian_pbw(c: &SuiteConfig) -> Vec<Task> {
    let (n, top) = (c.n, c.rmax + 2);
    let mut tasks = Vec::new();
    for idx @ (i, j, k, l) in quads_pub(n) {
        for r in 1..top {
            for s in 1..=top - r {
                let flip = c.negative_control && idx == (1, 2, 2, 1) && (r, s) == (1, 1);
                let mut task = Task::one(format!("rule[{}];{r},{s}", quad_name(idx)), move || {
                    let mut rule = commutator_rule(i, j, r, k, l, s);
                    if flip {
                        rule = rule.neg();
                    }
                    let target = yt(i, j, r).commutator(&yt(k, l, s)).sub(&rule);
                    membership(certify_in_relations(n, &target, r + s))
                });
                if flip {
                    task = task.param("flipped", "sign of the rule");
                }
                tasks.push(task);
            }
        }
    }
    let (seed, samples, rmax) = (c.seed, c.samples, c.rmax);
    tasks.push(
        Task::one("confluence", move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for k in 0..samples {
                let len = rng.gen_range(1..=3);
                let mut p = YangianElem::constant(HbarPoly::one());
                for _ in 0..len {
                    p = p.mul(&yt(
                        rng.gen_range(1..=n),
                        rng.gen_range(1..=n),
                        rng.gen_range(1..=rmax),
                    ));
                }
                let a = normalize_with(&p, Strategy::Leftmost);
                let b = normalize_with(&p, Strategy::Rightmost);
                if a != b || !is_normal(&a) {
                    return fail(format!(
                        "sample {k}: {p} normalizes to {} and {}",
                        show(&a),
                        show(&b)
                    ));
                }
            }
            pass().with_detail(format!("{samples} products"))
        })
        .param("seed", seed)
        .param("samples", samples),
    );
    tasks
}

fn embed_ytw(c: &SuiteConfig) -> Vec<Task> {
    let caps = TwistedCaps {
        sym_rmax: c.rmax,
        quat_rmax: c.rmax,
    };
    let n = c.n;
    c.cases()
        .into_iter()
        .enumerate()
        .map(|(pos, case)| {
            let flip = c.negative_control && pos == 0;
            let task = Task::many(case.name(), move || {
                let out = if flip {
                    let minus = HbarPoly::from_int(-1);
                    verify_twisted_embedding_with(case, n, caps, |i, j, r| {
                        embed_twisted_yangian_scaled(case, n, i, j, r, &minus)
                    })
                } else {
                    verify_twisted_embedding(case, n, caps)
                };
                match out {
                    Ok(r) => r.checks,
                    Err(e) => vec![inconclusive(e)],
                }
            })
            .param("n", n)
            .param("rmax", caps.sym_rmax);
            if flip {
                task.param("flipped", "sign of the quadratic part")
            } else {
                task
            }
        })
        .collect()
}

fn closed_family_expansion(
    fam: ClosedFamily,
    case: Case,
    n: usize,
    (i, j): (usize, usize),
    r: i32,
    m: i32,
) -> Result<QLoopElem, ClassicalError> {
    Ok(match fam {
        ClosedFamily::T => trm_expand(TrmFamily::T, i, j, r, m)?,
        ClosedFamily::TBar => trm_expand(TrmFamily::TBar, i, j, r, m)?,
        ClosedFamily::TTilde => trm_expand(TrmFamily::TTilde, i, j, r, m)?,
        ClosedFamily::S => srm_expand(case, n, i, j, r, m)?,
        ClosedFamily::STilde => stilde_expand(case, n, i, j, r, m)?,
    })
}

fn closed_forms(fam: ClosedFamily, case: Case, n: usize, rmax: i32, m: i32, flip: bool) -> Check {
    let tilde = matches!(fam, ClosedFamily::TTilde | ClosedFamily::STilde);
    for ij in pairs(n) {
        for r in 0..=if tilde { m } else { rmax } {
            let got =
                match closed_family_expansion(fam, case, n, ij, r, m).and_then(|p| psi_apply(&p)) {
                    Ok(p) => p,
                    Err(e) => return inconclusive(e),
                };
            let mut want = psi_closed_form(fam, case, ij.0, ij.1, r, m);
            if flip && ij == (1, 2) && r == 0 {
                want = want.scale(&rat(-1));
            }
            let want = loop_normalize(&want);
            if got != want {
                return fail(format!(
                    "{}{} r={r}: ψ image minus closed form = {}",
                    ij.0,
                    ij.1,
                    show(&got.sub(&want))
                ));
            }
        }
    }
    pass()
}

fn classical_limit(c: &SuiteConfig) -> Vec<Task> {
    let (n, order, rmax, mmax) = (c.n, c.rmax as u32, c.rmax, c.mmax);
    let mut tasks = Vec::new();
    for kind in [QKind::TT, QKind::TbarTbar, QKind::TbarT] {
        for idx in quads_pub(n) {
            let task = Task::one(format!("{}[{}]", kind.name(), quad_name(idx)), move || {
                let [wu, wv] = kind.window(order);
                let mut count = 0;
                for a in wu.0..=wu.1 {
                    for b in wv.0..=wv.1 {
                        let p = qloop_relation_component(kind, idx, a, b);
                        if p.is_zero() {
                            continue;
                        }
                        count += 1;
                        match classical_limit_check(&p) {
                            Ok(true) => {}
                            Ok(false) => {
                                let image = psi_apply(&divide_uniform(&p).0)
                                    .map(|x| show(&x))
                                    .unwrap_or_default();
                                return fail(format!(
                                    "component at u^{a} v^{b} specializes to {image}"
                                ));
                            }
                            Err(e) => {
                                return inconclusive(format!("component at u^{a} v^{b}: {e}"))
                            }
                        }
                    }
                }
                pass().with_detail(format!("{count} components"))
            });
            tasks.push(task.param("levels", order));
        }
    }
    let families = [
        (ClosedFamily::T, mmax + 1, false),
        (ClosedFamily::TBar, mmax + 1, false),
        (ClosedFamily::TTilde, mmax + 1, false),
        (ClosedFamily::S, mmax, true),
        (ClosedFamily::STilde, mmax, true),
    ];
    for (fam, mtop, twisted) in families {
        let cases = if twisted { c.cases() } else { vec![Case::O] };
        for case in cases {
            for m in 0..=mtop {
                let flip = c.negative_control && fam == ClosedFamily::T && m == 1;
                let label = if twisted {
                    format!("psi-{fam:?}-{}", case.name())
                } else {
                    format!("psi-{fam:?}")
                };
                let mut task = Task::one(label, move || closed_forms(fam, case, n, rmax, m, flip))
                    .param("m", m);
                if flip {
                    task = task.param("flipped", "closed form of 12 at r=0");
                }
                tasks.push(task);
            }
        }
    }
    tasks
}

fn rs_identities(c: &SuiteConfig) -> Vec<Task> {
    let mtop = (c.mmax - 1).max(0);
    let mut tasks = Vec::new();
    for idx in quads_pub(c.n) {
        for r in 1..=2 {
            for s in 1..=2 {
                for m in 0..=mtop {
                    for nn in 0..=mtop {
                        let flip = c.negative_control
                            && idx == (1, 2, 2, 1)
                            && (r, s, m, nn) == (1, 1, 0, 0);
                        let mut task = Task::one(
                            format!("rs[{}];({r},{m}),({s},{nn})", quad_name(idx)),
                            move || {
                                let target = match rs_identity(idx, (r, m), (s, nn)) {
                                    Ok(t) if flip => negate_first_term(&t),
                                    Ok(t) => t,
                                    Err(e) => return inconclusive(e),
                                };
                                match certify_rs_target(&target, idx, (r, m), (s, nn)) {
                                    Ok(cert) => pass().with_certificate(cert.summary()),
                                    Err(RsError::NotCertified { residual }) => fail(format!(
                                        "not in the relation span; residual {}",
                                        show(&residual)
                                    )),
                                    Err(e) => inconclusive(e),
                                }
                            },
                        );
                        if flip {
                            task = task.param("flipped", "leading term");
                        }
                        tasks.push(task);
                    }
                }
            }
        }
    }
    tasks
}

fn engine(c: &SuiteConfig) -> Arc<CongruenceEngine> {
    Arc::new(CongruenceEngine::new(Bounds {
        n: c.n,
        level_slack: c.level_slack,
    }))
}

/// Certify `x ∈ 𝐊_threshold`, or refute it by a probe.
fn congruence_task(
    name: String,
    engine: &Arc<CongruenceEngine>,
    threshold: i32,
    flip: bool,
    target: impl FnOnce() -> Result<QLoopElem, crate::filtration::FiltError> + Send + 'static,
) -> Task {
    let engine = engine.clone();
    let id = name.clone();
    let task = Task::one(name, move || match target() {
        Ok(x) => anonymous(congruence_outcome(&engine, &id, &x, threshold as u32)),
        Err(e) => inconclusive(e),
    })
    .param("threshold", threshold);
    if flip {
        task.param("flipped", "one term")
    } else {
        task
    }
}

fn flip_of(b: bool) -> Flip {
    if b {
        Flip::Sign
    } else {
        Flip::None
    }
}

fn graded_relation(c: &SuiteConfig) -> Vec<Task> {
    let (n, mmax) = (c.n, c.mmax);
    let engine = engine(c);
    let mut tasks = Vec::new();
    let flipped = (mmax.min(1), 0);
    for idx in quads_pub(n) {
        for m in 0..=mmax {
            for nn in 0..=mmax - m {
                let flip = c.negative_control && idx == (1, 2, 2, 1) && (m, nn) == flipped;
                let name = crate::filtration::yangian_id(idx, m, nn);
                tasks.push(congruence_task(
                    name,
                    &engine,
                    m + nn + 2,
                    flip,
                    move || graded_yangian_target(idx, m, nn, flip_of(flip)).expand(n),
                ));
            }
        }
    }
    for m in 0..=mmax + 1 {
        for (i, j) in pairs(n) {
            tasks.push(Task::one(
                format!("tbar[{i}{j};{m}]"),
                move || match tbar_congruence_check(i, j, m, Flip::None) {
                    Ok(ok) => Check::from_bool("", ok, || {
                        format!(
                            "ψ of a pairwise difference of T̄, ±T, T̃ at m={m} is not in 𝖪_{}",
                            m + 1
                        )
                    }),
                    Err(e) => inconclusive(e),
                },
            ));
        }
    }
    tasks.extend(independence(c, false));
    tasks
}

fn independence(c: &SuiteConfig, flip: bool) -> Vec<Task> {
    let n = c.n;
    (1..=c.mmax.max(1) as u32)
        .map(|m| {
            let dup = flip && m == 1;
            let task = Task::one(
                "monomial-independence",
                move || match monomial_independence_check(m, n, 2, 1, dup) {
                    Ok(r) => pass().with_detail(format!("{} ordered monomials", r.checks.len())),
                    Err(e @ ClassicalError::RankDeficient { .. }) => fail(e.to_string()),
                    Err(e) => inconclusive(e),
                },
            )
            .param("m", m)
            .param("max_len", 2);
            if dup {
                task.param("flipped", "duplicated monomial")
            } else {
                task
            }
        })
        .collect()
}

fn scong(c: &SuiteConfig) -> Vec<Task> {
    let (n, mmax) = (c.n, c.mmax);
    let engine = engine(c);
    let mut tasks = Vec::new();
    let cases = c.cases();
    for &case in &cases {
        for (i, j) in pairs(n) {
            for r in 1..=2 {
                for m in 0..=mmax {
                    tasks.push(Task::one(
                        format!("lemma-{}[{i}{j};{r},{m}]", case.name()),
                        move || match check_lemma_srm(case, n, i, j, r, m) {
                            Ok(LemmaOutcome::Free) => {
                                pass().with_detail("equal in the free algebra")
                            }
                            Ok(LemmaOutcome::ModRelations(v)) => {
                                pass().with_detail(format!("equal modulo {} relations", v.len()))
                            }
                            Ok(LemmaOutcome::Failed) => {
                                let d = srm_expand(case, n, i, j, r, m)
                                    .and_then(|s| Ok(s.sub(&lemma_rhs(case, n, i, j, r, m)?)));
                                fail(format!(
                                    "difference {}",
                                    d.map(|x| show(&x)).unwrap_or_default()
                                ))
                            }
                            Err(e) => inconclusive(e),
                        },
                    ));
                }
            }
        }
    }
    let flipped = (cases[0], (1, 2), 1, mmax.min(1));
    for &case in &cases {
        for (i, j) in pairs(n) {
            for m in 0..=mmax {
                for r in 1..=2 {
                    let flip = c.negative_control && (case, (i, j), r, m) == flipped;
                    let name = format!("scong-{}[{i}{j};{r},{m}]", case.name());
                    tasks.push(congruence_task(name, &engine, m + 1, flip, move || {
                        scong_target(case, n, i, j, r, m, flip_of(flip))
                    }));
                }
                let name = format!("zeta-{}[{i}{j};{m}]", case.name());
                tasks.push(congruence_task(name, &engine, m + 1, false, move || {
                    zeta_target(case, n, i, j, m, (1, 2), Flip::None)
                }));
            }
        }
    }
    tasks
}

fn twisted_phi(c: &SuiteConfig) -> Vec<Task> {
    let (n, mmax) = (c.n, c.mmax);
    let engine = engine(c);
    let mut tasks = Vec::new();
    let cases = c.cases();
    let flipped = (cases[0], (1, 2), mmax.min(1));
    for &case in &cases {
        for (i, j) in pairs(n) {
            for m in 0..=mmax {
                let flip = c.negative_control && (case, (i, j), m) == flipped;
                let name = format!("phi-{}[{i}{j};{m}]", case.name());
                tasks.push(congruence_task(name, &engine, m + 1, flip, move || {
                    twisted_phi_target(case, n, i, j, m, flip_of(flip))
                }));
            }
        }
    }
    let order = mmax.max(1) as u32;
    for &case in &cases {
        tasks.push(
            Task::many(
                format!("images-{}", case.name()),
                move || match verify_twisted_images(case, n, order, &[rat(2), rat(-3)]) {
                    Ok(r) => r.checks,
                    Err(e) => vec![inconclusive(e)],
                },
            )
            .param("levels", order)
            .param("points", "2,-3"),
        );
    }
    tasks
}

fn separation(c: &SuiteConfig) -> Vec<Task> {
    independence(c, c.negative_control)
}
