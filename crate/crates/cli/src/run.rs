//! Runs the analyses of a job in dependency order and assembles the report.

use std::sync::Arc;

use nckit_core::action::{close_group, reflection_data, GroupAction, ReflectionKind, ReflectionReport};
use nckit_core::algebra::{catalog, gk_estimate, is_normal_element, zhang_twist, GradedAlgebra, GrowthEstimate, Provenance};
use nckit_core::homology::{
    auslander_check, grade_and_hsmall, AuslanderReport, AuslanderVerdict, GradeOptions, GradeReport,
};
use nckit_core::kernel::{CycloScalar, Matrix};
use nckit_core::smash::{pertinency, smash_dual_group, smash_group, Certainty, PertinencyReport, Pty, SmashAlgebra};
use serde_json::{json, Map, Value};

use crate::error::{CliError, StageExt};
use crate::job::{grading, matrices, twist_data, ActionJob, Analysis, JobSpec};

pub const SCHEMA_VERSION: u32 = 1;

/// A finished run: the JSON report and the values left undecided.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub undecided: Vec<String>,
}

fn scalars(v: &[CycloScalar]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn matrix_json(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| scalars(m.row(i))).collect()
}

fn growth_json(g: &GrowthEstimate) -> Value {
    json!({
        "gkdim": g.gkdim.to_string(),
        "confidence": g.confidence.as_str(),
        "pole_order_at_1": g.pole_order_at_1,
        "finite_dimensional": g.finite_dimensional,
        "series": g.rational.as_ref().map(|(n, d)| format!("({n}) / ({d})")),
    })
}

fn provenance(p: &Provenance) -> String {
    match p {
        Provenance::Catalog(n) => format!("catalog:{n}"),
        Provenance::User => "user".into(),
        Provenance::Derived(n) => format!("derived:{n}"),
    }
}

struct Run<'a> {
    job: &'a JobSpec,
    algebra: Arc<GradedAlgebra>,
    group: Option<GroupAction>,
    smash: Option<SmashAlgebra>,
    pertinency: Option<PertinencyReport>,
    reflections: Option<ReflectionReport>,
    grade: Option<GradeReport>,
    auslander: Option<AuslanderReport>,
    analyses: Map<String, Value>,
    undecided: Vec<String>,
}

pub fn run(job: &JobSpec) -> Result<Outcome, CliError> {
    job.validate()?;
    let mut down_up = None;
    let algebra = match job.family()? {
        Some(f) => {
            let (a, d) = catalog(&f, job.degree_bound).stage("algebra")?;
            down_up = d;
            a
        }
        None => {
            let spec = job.presentation()?.expect("presentation");
            GradedAlgebra::build(spec).stage("algebra")?
        }
    };
    let mut r = Run {
        job,
        algebra: Arc::new(algebra),
        group: None,
        smash: None,
        pertinency: None,
        reflections: None,
        grade: None,
        auslander: None,
        analyses: Map::new(),
        undecided: Vec::new(),
    };
    r.build_action()?;
    let selected = job.selected();
    for a in &selected {
        match a {
            Analysis::Hilbert => r.hilbert(down_up.as_ref())?,
            Analysis::Smallness => r.smallness(),
            Analysis::Trace => r.trace()?,
            Analysis::Rpf => r.rpf()?,
            Analysis::Pertinency => r.pertinency_json()?,
            Analysis::Hsmall => r.hsmall()?,
            Analysis::Auslander => r.auslander_json()?,
            Analysis::TwistCheck => r.twist_check()?,
        }
    }
    let cross = r.cross_check()?;
    let a = &r.algebra;
    let environment = json!({
        "degree_bound": job.degree_bound,
        "guard": job.guard,
        "field": job.field_order(),
        "complete_to": a.complete_to(),
        "fully_complete": a.complete_to() >= a.degree_bound(),
        "algebra": {
            "generators": (0..a.num_generators()).map(|i| declared_name(a, i)).collect::<Vec<_>>(),
            "provenance": provenance(a.provenance()),
            "relations": a.relations().len(),
        },
        "group_order": r.group.as_ref().map(GroupAction::order).or_else(|| r.smash.as_ref().map(SmashAlgebra::group_order)),
        "smash_kind": r.smash.as_ref().map(|s| s.kind().as_str()),
    });
    let mut top = Map::new();
    top.insert("schema".into(), json!(SCHEMA_VERSION));
    top.insert("name".into(), json!(job.name));
    top.insert("environment".into(), environment);
    top.insert(
        "analyses_requested".into(),
        json!(selected.iter().map(|a| a.as_str()).collect::<Vec<_>>()),
    );
    top.insert("analyses".into(), Value::Object(r.analyses));
    top.insert("cross_check".into(), cross);
    top.insert("undecided".into(), json!(r.undecided));
    Ok(Outcome {
        report: Value::Object(top),
        undecided: r.undecided,
    })
}

/// Name of the generator declared at position `i`.
fn declared_name(a: &GradedAlgebra, i: usize) -> String {
    let l = a.declared_order().iter().position(|&d| d == i).unwrap();
    a.names()[l].clone()
}

impl Run<'_> {
    fn build_action(&mut self) -> Result<(), CliError> {
        let opts = &self.job.options;
        match &self.job.action {
            None => {}
            Some(ActionJob::Group { generators }) => {
                let gens = matrices(generators, "action.generators")?;
                let g = close_group(self.algebra.clone(), &gens, opts.max_group).stage("action")?;
                self.group = Some(g);
            }
            Some(ActionJob::DualGroup { group, degrees }) => {
                let gr = grading(group, degrees, opts.max_group)?;
                let s = smash_dual_group(self.algebra.clone(), &gr, opts.max_rules).stage("smash")?;
                self.smash = Some(s);
            }
        }
        Ok(())
    }

    fn smash(&mut self) -> Result<&SmashAlgebra, CliError> {
        if self.smash.is_none() {
            let g = self.group.as_ref().expect("validated group action");
            self.smash = Some(smash_group(g, self.job.options.max_rules).stage("smash")?);
        }
        Ok(self.smash.as_ref().unwrap())
    }

    fn group(&self) -> &GroupAction {
        self.group.as_ref().expect("validated group action")
    }

    fn hilbert(&mut self, down_up: Option<&nckit_core::algebra::DownUpData>) -> Result<(), CliError> {
        let a = &self.algebra;
        let dims = a.dims().stage("hilbert")?;
        let gk = gk_estimate(a, self.job.guard).stage("hilbert")?;
        let mut v = json!({
            "dims": dims,
            "complete_to": a.complete_to(),
            "growth": growth_json(&gk),
            "cohen_macaulay_certificate": a.is_cm(),
        });
        if let Some(d) = down_up {
            let normal = is_normal_element(a, &d.omega).stage("hilbert")?;
            v["down_up"] = json!({
                "alpha": d.alpha.to_string(),
                "beta": d.beta.to_string(),
                "a": d.a.to_string(),
                "b": d.b.to_string(),
                "omega": a.display(&d.omega),
                "omega_normal": normal,
                "autgr_case": d.autgr_case.as_str(),
            });
        }
        self.analyses.insert("hilbert".into(), v);
        Ok(())
    }

    fn smallness(&mut self) {
        let g = self.group();
        let s = g.smallness();
        let witnesses: Vec<Value> = s
            .witnesses
            .iter()
            .map(|&i| json!({"element": i, "matrix": matrix_json(&g.declared_element(i))}))
            .collect();
        let v = json!({
            "small": s.small,
            "witnesses": witnesses,
            "certainty": "EXACT",
        });
        self.analyses.insert("smallness".into(), v);
    }

    fn reflections(&mut self) -> Result<&ReflectionReport, CliError> {
        if self.reflections.is_none() {
            let rep = reflection_data(self.group(), self.job.guard).stage("trace")?;
            self.reflections = Some(rep);
        }
        Ok(self.reflections.as_ref().unwrap())
    }

    fn trace(&mut self) -> Result<(), CliError> {
        self.reflections()?;
        let g = self.group();
        let rep = self.reflections.as_ref().unwrap();
        let n = self.algebra.degree_bound().min(self.algebra.complete_to());
        let elements: Vec<Value> = rep
            .elements
            .iter()
            .map(|e| {
                let t = &e.trace;
                json!({
                    "element": t.g,
                    "order": g.element_order(t.g),
                    "matrix": matrix_json(&g.declared_element(t.g)),
                    "coeffs": scalars(&t.coeffs),
                    "series": growth_json(&t.estimate)["series"],
                    "pole_order": t.pole_order(),
                    "confidence": t.estimate.confidence.as_str(),
                })
            })
            .collect();
        let v = json!({"complete_to": n, "elements": elements});
        self.analyses.insert("trace".into(), v);
        Ok(())
    }

    fn rpf(&mut self) -> Result<(), CliError> {
        self.reflections()?;
        let rep = self.reflections.as_ref().unwrap();
        let elements: Vec<Value> = rep
            .elements
            .iter()
            .map(|e| {
                json!({
                    "element": e.trace.g,
                    "rpf": e.trace.rpf,
                    "kind": e.kind.as_str(),
                })
            })
            .collect();
        for e in &rep.elements[1..] {
            if e.kind == ReflectionKind::Undecided {
                self.undecided.push(format!("rpf.element[{}]", e.trace.g));
            }
        }
        if rep.c_small.is_none() {
            self.undecided.push("rpf.c_small".into());
        }
        let v = json!({
            "gk": growth_json(&rep.gk),
            "elements": elements,
            "group_rpf": rep.group_rpf,
            "c_small": rep.c_small,
            "degenerate": rep.degenerate,
        });
        self.analyses.insert("rpf".into(), v);
        Ok(())
    }

    fn pertinency(&mut self) -> Result<&PertinencyReport, CliError> {
        if self.pertinency.is_none() {
            let (guard, max_rules) = (self.job.guard, self.job.options.max_rules);
            let s = self.smash()?;
            let p = pertinency(s, guard, max_rules).stage("pertinency")?;
            self.pertinency = Some(p);
        }
        Ok(self.pertinency.as_ref().unwrap())
    }

    fn pertinency_json(&mut self) -> Result<(), CliError> {
        let p = self.pertinency()?.clone();
        if p.pty == Pty::Undecided {
            self.undecided.push("pertinency.pty".into());
        }
        let v = json!({
            "quotient_dims": p.quotient_dims,
            "quotient_complete_to": p.quotient_complete_to,
            "quotient_growth": growth_json(&p.quotient_gk),
            "base_growth": growth_json(&p.base_gk),
            "pty": p.pty.to_string(),
            "certainty": p.certainty.as_str(),
            "degenerate": p.degenerate,
            "computed_over": p.computed_over,
        });
        self.analyses.insert("pertinency".into(), v);
        Ok(())
    }

    fn hsmall(&mut self) -> Result<(), CliError> {
        let p = self.pertinency()?.clone();
        let opts = GradeOptions {
            ext_budget: self.job.options.ext_budget,
            margin: self.job.options.margin,
        };
        let max_rules = self.job.options.max_rules;
        let s = self.smash()?;
        let h = grade_and_hsmall(s, &p, max_rules, opts).stage("hsmall")?;
        if h.h_small.is_none() {
            self.undecided.push("hsmall.h_small".into());
        }
        let routes: Vec<Value> = h
            .routes
            .iter()
            .map(|r| json!({"name": r.name, "grade": r.grade.map(|g| g.to_string()), "note": r.note}))
            .collect();
        let v = json!({
            "grade": h.grade.map(|g| g.to_string()),
            "h_small": h.h_small,
            "routes": routes,
            "degenerate": h.degenerate,
            "certainty": if h.h_small.is_some() { "EXACT" } else { "UNDECIDED" },
        });
        self.analyses.insert("hsmall".into(), v);
        self.grade = Some(h);
        Ok(())
    }

    fn auslander_json(&mut self) -> Result<(), CliError> {
        let o = &self.job.options;
        let a = auslander_check(self.group(), o.margin, o.hom_budget).stage("auslander")?;
        if a.verdict == AuslanderVerdict::Undecided {
            self.undecided.push("auslander.verdict".into());
        }
        let hom: Vec<Value> = a
            .hom_dims
            .iter()
            .map(|h| {
                json!({
                    "degree": h.degree,
                    "dim": h.dim,
                    "expected": h.expected,
                    "stability": h.stability.as_str(),
                })
            })
            .collect();
        let witness = a.negative_witness.as_ref().map(|(d, images)| {
            json!({
                "degree": d,
                "images": images.iter().map(|(m, im)| json!([m, im])).collect::<Vec<_>>(),
            })
        });
        let v = json!({
            "verdict": a.verdict.as_str(),
            "reason": a.reason,
            "injective_to": a.injective_to,
            "hom_dims": hom,
            "negative_witness": witness,
            "fixed_generator_degrees": a.fixed_generator_degrees,
            "module_generator_degrees": a.module_generator_degrees,
        });
        self.analyses.insert("auslander".into(), v);
        self.auslander = Some(a);
        Ok(())
    }

    fn twist_check(&mut self) -> Result<(), CliError> {
        let t = twist_data(self.job.twist.as_ref().expect("validated twist"))?;
        let gens: Vec<Matrix> = match &self.job.action {
            Some(ActionJob::Group { generators }) => matrices(generators, "action.generators")?,
            _ => unreachable!("validated group action"),
        };
        let commutes = gens.iter().all(|g| t.commutes_with(g));
        let twisted = Arc::new(zhang_twist(&self.algebra, &t).stage("twist_check")?);
        let base_dims = self.algebra.dims().stage("twist_check")?;
        let twisted_dims = twisted.dims().stage("twist_check")?;
        let mut v = json!({
            "commutes": commutes,
            "twisted_relations": twisted.relations().iter().map(|p| twisted.display(p)).collect::<Vec<_>>(),
            "twisted_dims": twisted_dims,
            "dims_equal": base_dims == twisted_dims,
        });
        if commutes {
            let max_rules = self.job.options.max_rules;
            let tg = close_group(twisted, &gens, self.job.options.max_group).stage("twist_check")?;
            let tq = smash_group(&tg, max_rules)
                .and_then(|s| s.quotient(max_rules))
                .stage("twist_check")?;
            let q = self.smash()?.quotient(max_rules).stage("twist_check")?;
            let upto = q.complete_to().min(tq.complete_to()).min(self.job.degree_bound);
            let qd: Vec<usize> = (0..=upto).map(|n| q.dim(n)).collect::<Result<_, _>>().stage("twist_check")?;
            let tqd: Vec<usize> = (0..=upto).map(|n| tq.dim(n)).collect::<Result<_, _>>().stage("twist_check")?;
            v["quotient_compared_to"] = json!(upto);
            v["quotient_dims"] = json!(qd);
            v["twisted_quotient_dims"] = json!(tqd);
            v["quotient_dims_equal"] = json!(qd == tqd);
        }
        self.analyses.insert("twist_check".into(), v);
        Ok(())
    }

    /// Pty ≥ 2, h.small and the Auslander isomorphism must agree whenever
    /// two of them are certified.
    fn cross_check(&self) -> Result<Value, CliError> {
        if self.group.is_none() {
            return Ok(json!({"status": "NOT_APPLICABLE"}));
        }
        let pty2 = self.pertinency.as_ref().and_then(|p| match (p.pty, p.certainty) {
            (Pty::Value(v), Certainty::Exact) => Some(v >= 2),
            (Pty::Value(v), Certainty::LowerBound) if v >= 2 => Some(true),
            _ => None,
        });
        let hs = self.grade.as_ref().and_then(|g| g.h_small);
        let aus = self.auslander.as_ref().and_then(|a| match a.verdict {
            AuslanderVerdict::Fails => Some(false),
            _ => None,
        });
        let consistent_up_to_n = self
            .auslander
            .as_ref()
            .map(|a| a.verdict == AuslanderVerdict::ConsistentUpToN);
        let named = [("pty_at_least_2", pty2), ("h_small", hs), ("auslander", aus)];
        let known: Vec<(&str, bool)> = named.iter().filter_map(|(n, v)| v.map(|b| (*n, b))).collect();
        if let Some(&(n0, b0)) = known.first() {
            if let Some(&(n1, _)) = known.iter().find(|(_, b)| *b != b0) {
                return Err(CliError::Violation(format!("{n0} = {b0} but {n1} = {}", !b0)));
            }
        }
        let status = if consistent_up_to_n == Some(true) && known.iter().any(|(_, b)| !*b) {
            // a failure above the window is still possible
            "UNCONFIRMED"
        } else if known.len() >= 2 || (consistent_up_to_n == Some(true) && !known.is_empty()) {
            "CONSISTENT"
        } else {
            "INSUFFICIENT"
        };
        Ok(json!({
            "status": status,
            "pty_at_least_2": pty2,
            "h_small": hs,
            "auslander_fails": aus.map(|b| !b),
            "auslander_consistent_up_to_n": consistent_up_to_n,
        }))
    }
}
