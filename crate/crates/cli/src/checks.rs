use clap::ValueEnum;
use rayon::prelude::*;

use macdonald_core::exactfield::{LaurentPoly, Weight};
use macdonald_core::kadell::{self, Outcome, Verdict};
use macdonald_core::rootdata::{build_root_system, RootError, RootSystem};
use macdonald_core::symfun::{monomial_symmetric, SymPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    KadellI,
    KadellIi,
    JackKadell,
    IotaMu,
    AntiProduct,
    PsiConj,
    LhConjugation,
}

impl Check {
    pub fn uses_k(self) -> bool {
        matches!(self, Check::IotaMu | Check::PsiConj | Check::LhConjugation)
    }
}

/// One independent unit of work.
#[derive(Clone, Debug)]
pub struct Job {
    pub label: String,
    pub check: Check,
    pub b: Weight,
    pub m: Vec<i64>,
    pub k: i64,
}

pub fn plan(sys: &RootSystem, check: Check, weights: &[Weight], m: &[i64], k: i64) -> Vec<Job> {
    let job = |b: Weight| Job { label: sys.label.clone(), check, b, m: m.to_vec(), k };
    match check {
        Check::KadellI | Check::KadellIi | Check::JackKadell => weights.iter().map(|b| job(*b)).collect(),
        _ => vec![job(Weight::zero())],
    }
}

fn small_tests(sys: &RootSystem) -> (Vec<LaurentPoly>, Vec<SymPoly>) {
    let b1 = sys.coweight(0);
    let syms = vec![SymPoly::basis(Weight::zero()), SymPoly::basis(b1), SymPoly::basis(b1.scale(2))];
    let laurent = vec![
        LaurentPoly::one(),
        LaurentPoly::monomial(b1),
        monomial_symmetric(sys, &b1.scale(2)).expect("dominant"),
    ];
    (laurent, syms)
}

fn run_one(job: &Job) -> Verdict {
    let sys = build_root_system(&job.label).expect("label checked when planning");
    match job.check {
        Check::KadellI => kadell::verify_kadell_i(&sys, &job.b, &job.m),
        Check::KadellIi => kadell::verify_kadell_ii(&sys, &job.b, &job.m),
        Check::JackKadell => kadell::verify_jack_kadell(&sys, &job.b, &job.m),
        Check::AntiProduct => kadell::verify_anti_product(&sys, &job.m),
        Check::LhConjugation => kadell::verify_lh_conjugation(&sys, job.k),
        Check::IotaMu => kadell::verify_iota_mu(&sys, job.k, &small_tests(&sys).0),
        Check::PsiConj => {
            let f = SymPoly::basis(sys.coweight(0));
            kadell::verify_psi_conj(&sys, &f, job.k, &small_tests(&sys).1)
        }
    }
}

/// Runs on the current rayon pool; output order follows the plan.
pub fn run(jobs: Vec<Job>) -> Vec<Verdict> {
    jobs.par_iter().map(run_one).collect()
}

pub fn exit_code(vs: &[Verdict]) -> u8 {
    if vs.iter().any(|v| v.result == Outcome::Violated) {
        1
    } else if vs.iter().any(|v| matches!(v.result, Outcome::Error | Outcome::Skipped)) {
        2
    } else {
        0
    }
}

/// The standard battery, in a fixed order.
pub fn suite_plan() -> Result<Vec<Job>, RootError> {
    let mut jobs = Vec::new();
    for label in ["A1", "A2"] {
        let sys = build_root_system(label)?;
        let ws = sys.dominant_up_to(2);
        jobs.extend(plan(&sys, Check::KadellI, &ws, &[1], 1));
        jobs.extend(plan(&sys, Check::KadellIi, &ws, &[0], 1));
        jobs.extend(plan(&sys, Check::JackKadell, &ws, &[1], 1));
        jobs.extend(plan(&sys, Check::IotaMu, &ws, &[0], 1));
        jobs.extend(plan(&sys, Check::AntiProduct, &ws, &[1], 1));
        jobs.extend(plan(&sys, Check::LhConjugation, &ws, &[0], 1));
    }
    let a1 = build_root_system("A1")?;
    let ws = a1.dominant_up_to(2);
    jobs.extend(plan(&a1, Check::KadellIi, &ws, &[1], 1));
    for k in 1..=2 {
        jobs.extend(plan(&a1, Check::PsiConj, &ws, &[0], k));
    }
    Ok(jobs)
}
