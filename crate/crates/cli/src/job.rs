//! Job files: what to build and which analyses to run.

use std::collections::BTreeSet;

use nckit_core::algebra::{AlgebraSpec, Family, TwistData};
use nckit_core::kernel::{CycloScalar, Matrix, NcPoly};
use nckit_core::smash::{GroupGrading, GroupTable};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::parse::{parse_poly, parse_scalar, zeta_orders};

pub const DEFAULT_DEGREE_BOUND: u32 = 12;
pub const DEFAULT_GUARD: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Analysis {
    Hilbert,
    Smallness,
    Trace,
    Rpf,
    Pertinency,
    Hsmall,
    Auslander,
    TwistCheck,
}

impl Analysis {
    pub fn as_str(self) -> &'static str {
        match self {
            Analysis::Hilbert => "hilbert",
            Analysis::Smallness => "smallness",
            Analysis::Trace => "trace",
            Analysis::Rpf => "rpf",
            Analysis::Pertinency => "pertinency",
            Analysis::Hsmall => "hsmall",
            Analysis::Auslander => "auslander",
            Analysis::TwistCheck => "twist_check",
        }
    }

    fn needs_group(self) -> bool {
        matches!(
            self,
            Analysis::Smallness | Analysis::Trace | Analysis::Rpf | Analysis::Auslander | Analysis::TwistCheck
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family", deny_unknown_fields)]
pub enum CatalogJob {
    Polynomial {
        n: usize,
    },
    /// Either one `q` for all pairs or an upper-triangular `q_matrix`.
    SkewPolynomial {
        n: usize,
        #[serde(default)]
        q: Option<String>,
        #[serde(default)]
        q_matrix: Option<Vec<Vec<String>>>,
    },
    DownUp {
        alpha: String,
        beta: String,
    },
    DownUpAssocGraded {
        alpha: String,
        beta: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorJob {
    Name(String),
    Graded { name: String, degree: u32 },
}

impl GeneratorJob {
    fn pair(&self) -> (String, u32) {
        match self {
            GeneratorJob::Name(n) => (n.clone(), 1),
            GeneratorJob::Graded { name, degree } => (name.clone(), *degree),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationJob {
    pub generators: Vec<GeneratorJob>,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraJob {
    Catalog(CatalogJob),
    Presentation(PresentationJob),
}

/// Matrix rows of scalar expressions, declaration order, column convention.
pub type MatrixJob = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupJob {
    Cyclic(Vec<usize>),
    Matrices(Vec<MatrixJob>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", deny_unknown_fields)]
pub enum ActionJob {
    Group {
        generators: Vec<MatrixJob>,
    },
    /// `degrees[i]` lists exponents `a_1..a_r`: generator `i` has degree
    /// `g_1^{a_1} ⋯ g_r^{a_r}` in the group's generators.
    DualGroup {
        group: GroupJob,
        degrees: Vec<Vec<i64>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistJob {
    pub multidegrees: Vec<Vec<i64>>,
    pub twists: Vec<MatrixJob>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_max_group")]
    pub max_group: usize,
    #[serde(default)]
    pub max_rules: Option<usize>,
    #[serde(default = "default_ext_budget")]
    pub ext_budget: usize,
    #[serde(default = "default_hom_budget")]
    pub hom_budget: usize,
    #[serde(default = "default_margin")]
    pub margin: u32,
}

fn default_max_group() -> usize {
    nckit_core::action::DEFAULT_MAX_GROUP
}
fn default_ext_budget() -> usize {
    nckit_core::homology::DEFAULT_EXT_BUDGET
}
fn default_hom_budget() -> usize {
    5000
}
fn default_margin() -> u32 {
    nckit_core::homology::DEFAULT_MARGIN
}
fn default_degree_bound() -> u32 {
    DEFAULT_DEGREE_BOUND
}
fn default_guard() -> usize {
    DEFAULT_GUARD
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_group: default_max_group(),
            max_rules: None,
            ext_budget: default_ext_budget(),
            hom_budget: default_hom_budget(),
            margin: default_margin(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default)]
    pub name: Option<String>,
    /// Order `m` of the cyclotomic field `Q(ζ_m)`; inferred when absent.
    #[serde(default)]
    pub field: Option<u32>,
    pub algebra: AlgebraJob,
    #[serde(default)]
    pub action: Option<ActionJob>,
    #[serde(default)]
    pub twist: Option<TwistJob>,
    pub analyses: Vec<Analysis>,
    #[serde(default = "default_degree_bound")]
    pub degree_bound: u32,
    #[serde(default = "default_guard")]
    pub guard: usize,
    #[serde(default)]
    pub options: Options,
}

impl JobSpec {
    pub fn from_json(src: &str) -> Result<JobSpec, CliError> {
        let job: JobSpec = serde_json::from_str(src).map_err(CliError::Json)?;
        job.validate()?;
        Ok(job)
    }

    /// Requested analyses, deduplicated, in dependency order.
    pub fn selected(&self) -> Vec<Analysis> {
        let set: BTreeSet<Analysis> = self.analyses.iter().copied().collect();
        set.into_iter().collect()
    }

    fn expressions(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        match &self.algebra {
            AlgebraJob::Catalog(c) => match c {
                CatalogJob::Polynomial { .. } => {}
                CatalogJob::SkewPolynomial { q, q_matrix, .. } => {
                    out.extend(q.iter().map(String::as_str));
                    for row in q_matrix.iter().flatten() {
                        out.extend(row.iter().map(String::as_str));
                    }
                }
                CatalogJob::DownUp { alpha, beta } | CatalogJob::DownUpAssocGraded { alpha, beta } => {
                    out.push(alpha);
                    out.push(beta);
                }
            },
            AlgebraJob::Presentation(p) => out.extend(p.relations.iter().map(String::as_str)),
        }
        let mats: Vec<&MatrixJob> = match &self.action {
            Some(ActionJob::Group { generators }) => generators.iter().collect(),
            Some(ActionJob::DualGroup {
                group: GroupJob::Matrices(m),
                ..
            }) => m.iter().collect(),
            _ => Vec::new(),
        };
        let twist: Vec<&MatrixJob> = self.twist.iter().flat_map(|t| t.twists.iter()).collect();
        for m in mats.into_iter().chain(twist) {
            for row in m {
                out.extend(row.iter().map(String::as_str));
            }
        }
        out
    }

    /// Smallest cyclotomic order containing every literal of the job.
    pub fn required_field(&self) -> u32 {
        self.expressions()
            .into_iter()
            .flat_map(zeta_orders)
            .fold(1, num::integer::lcm)
    }

    /// The cyclotomic order computations run over.
    pub fn field_order(&self) -> u32 {
        self.field.unwrap_or_else(|| self.required_field())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Validation(m));
        if self.analyses.is_empty() {
            return bad("no analyses requested".into());
        }
        if self.degree_bound == 0 {
            return bad("degree_bound must be positive".into());
        }
        if self.guard == 0 {
            return bad("guard must be positive".into());
        }
        let need = self.required_field();
        if let Some(m) = self.field {
            if m == 0 {
                return bad("field order must be positive".into());
            }
            if m % need != 0 {
                return Err(CliError::Stage {
                    stage: "validate",
                    source: nckit_core::Error::IncompatibleField(format!(
                        "literals need Q(zeta_{need}), which is not contained in Q(zeta_{m})"
                    )),
                });
            }
        }
        for a in self.selected() {
            if a.needs_group() && !matches!(self.action, Some(ActionJob::Group { .. })) {
                return bad(format!("analysis '{}' needs a group action", a.as_str()));
            }
            if matches!(a, Analysis::Pertinency | Analysis::Hsmall) && self.action.is_none() {
                return bad(format!("analysis '{}' needs an action", a.as_str()));
            }
        }
        if self.selected().contains(&Analysis::TwistCheck) && self.twist.is_none() {
            return bad("analysis 'twist_check' needs a twist block".into());
        }
        if let AlgebraJob::Presentation(p) = &self.algebra {
            if p.generators.is_empty() {
                return bad("presentation has no generators".into());
            }
            let mut seen = BTreeSet::new();
            for g in &p.generators {
                let (n, _) = g.pair();
                if n == "zeta" || !seen.insert(n.clone()) {
                    return bad(format!("invalid or duplicate generator name '{n}'"));
                }
            }
        }
        Ok(())
    }

    /// Catalog family, if the algebra comes from the catalog.
    pub fn family(&self) -> Result<Option<Family>, CliError> {
        let c = match &self.algebra {
            AlgebraJob::Catalog(c) => c,
            AlgebraJob::Presentation(_) => return Ok(None),
        };
        let f = match c {
            CatalogJob::Polynomial { n } => Family::Polynomial(*n),
            CatalogJob::SkewPolynomial { n, q, q_matrix } => match (q, q_matrix) {
                (Some(q), None) => Family::uniform_skew(*n, &scalar(q, "algebra.q")?),
                (None, Some(rows)) => {
                    if rows.len() != *n || rows.iter().any(|r| r.len() != *n) {
                        return Err(CliError::Validation(format!("q_matrix must be {n}x{n}")));
                    }
                    let mut q = vec![vec![CycloScalar::one(); *n]; *n];
                    for i in 0..*n {
                        for j in i + 1..*n {
                            q[i][j] = scalar(&rows[i][j], "algebra.q_matrix")?;
                        }
                    }
                    Family::SkewPolynomial(q)
                }
                _ => {
                    return Err(CliError::Validation(
                        "skew_polynomial needs exactly one of q, q_matrix".into(),
                    ))
                }
            },
            CatalogJob::DownUp { alpha, beta } => Family::DownUp {
                alpha: scalar(alpha, "algebra.alpha")?,
                beta: scalar(beta, "algebra.beta")?,
            },
            CatalogJob::DownUpAssocGraded { alpha, beta } => Family::DownUpAssocGraded {
                alpha: scalar(alpha, "algebra.alpha")?,
                beta: scalar(beta, "algebra.beta")?,
            },
        };
        Ok(Some(f))
    }

    /// Builder input for a raw presentation.
    pub fn presentation(&self) -> Result<Option<AlgebraSpec>, CliError> {
        let p = match &self.algebra {
            AlgebraJob::Presentation(p) => p,
            AlgebraJob::Catalog(_) => return Ok(None),
        };
        let gens: Vec<(String, u32)> = p.generators.iter().map(GeneratorJob::pair).collect();
        let names: Vec<String> = gens.iter().map(|g| g.0.clone()).collect();
        let degrees: Vec<u32> = gens.iter().map(|g| g.1).collect();
        let rels = p
            .relations
            .iter()
            .enumerate()
            .map(|(i, r)| {
                parse_poly(r, &names, &degrees).map_err(|e| CliError::Parse {
                    context: format!("algebra.relations[{i}]"),
                    source: e,
                })
            })
            .collect::<Result<Vec<NcPoly>, _>>()?;
        let mut spec = AlgebraSpec::new(gens, rels, self.degree_bound);
        spec.max_rules = self.options.max_rules;
        Ok(Some(spec))
    }
}

fn scalar(src: &str, context: &str) -> Result<CycloScalar, CliError> {
    parse_scalar(src).map_err(|e| CliError::Parse {
        context: context.into(),
        source: e,
    })
}

pub fn matrix(m: &MatrixJob, context: &str) -> Result<Matrix, CliError> {
    if m.is_empty() || m.iter().any(|r| r.len() != m.len()) {
        return Err(CliError::Validation(format!("{context}: matrix must be square")));
    }
    let rows = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, e)| scalar(e, &format!("{context}[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows))
}

pub fn matrices(ms: &[MatrixJob], context: &str) -> Result<Vec<Matrix>, CliError> {
    ms.iter()
        .enumerate()
        .map(|(k, m)| matrix(m, &format!("{context}[{k}]")))
        .collect()
}

/// Builds the group grading of a dual-group action.
pub fn grading(group: &GroupJob, degrees: &[Vec<i64>], max_group: usize) -> Result<GroupGrading, CliError> {
    let stage = |e| CliError::Stage {
        stage: "action",
        source: e,
    };
    let (table, gens) = match group {
        GroupJob::Cyclic(orders) => {
            let t = GroupTable::cyclic_product(orders).map_err(stage)?;
            let gens = (0..orders.len())
                .map(|k| {
                    let digits: Vec<i64> = (0..orders.len()).map(|j| i64::from(j == k)).collect();
                    GroupTable::cyclic_index(orders, &digits)
                })
                .collect();
            (t, gens)
        }
        GroupJob::Matrices(ms) => {
            let ms = matrices(ms, "action.group.matrices")?;
            GroupTable::from_matrices(&ms, max_group).map_err(stage)?
        }
    };
    let id = (0..table.order())
        .find(|&a| (0..table.order()).all(|b| table.mul(a, b) == b))
        .unwrap_or(0);
    let mut out = Vec::with_capacity(degrees.len());
    for (i, exps) in degrees.iter().enumerate() {
        if exps.len() != gens.len() {
            return Err(CliError::Validation(format!(
                "action.degrees[{i}] needs {} exponents",
                gens.len()
            )));
        }
        let mut el = id;
        for (&g, &a) in gens.iter().zip(exps) {
            let base = if a < 0 { table.inverse(g) } else { g };
            for _ in 0..a.unsigned_abs() {
                el = table.mul(el, base);
            }
        }
        out.push(el);
    }
    Ok(GroupGrading {
        group: table,
        degrees: out,
    })
}

pub fn twist_data(t: &TwistJob) -> Result<TwistData, CliError> {
    Ok(TwistData {
        multidegrees: t.multidegrees.clone(),
        twists: matrices(&t.twists, "twist.twists")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_job_parses_with_defaults() {
        let j = JobSpec::from_json(
            r#"{"algebra": {"family": "polynomial", "n": 2}, "action": {"kind": "group",
                "generators": [[["0","1"],["1","0"]]]}, "analyses": ["smallness"]}"#,
        )
        .unwrap();
        assert_eq!(j.degree_bound, 12);
        assert_eq!(j.guard, 5);
        assert_eq!(j.field_order(), 1);
        assert_eq!(j.family().unwrap(), Some(Family::Polynomial(2)));
    }

    #[test]
    fn empty_analyses_rejected() {
        let e = JobSpec::from_json(r#"{"algebra": {"family": "polynomial", "n": 2}, "analyses": []}"#);
        assert!(matches!(e, Err(CliError::Validation(_))));
    }

    #[test]
    fn field_must_contain_literals() {
        let src = r#"{"field": 2, "algebra": {"family": "skew_polynomial", "n": 2, "q": "zeta(4)"},
            "analyses": ["hilbert"]}"#;
        assert!(matches!(JobSpec::from_json(src), Err(CliError::Stage { .. })));
        let ok = src.replace("\"field\": 2", "\"field\": 8");
        assert_eq!(JobSpec::from_json(&ok).unwrap().field_order(), 8);
    }

    #[test]
    fn presentation_relations_are_parsed() {
        let j = JobSpec::from_json(
            r#"{"algebra": {"generators": ["x", {"name": "y", "degree": 1}],
                "relations": ["x*y + y*x"]}, "analyses": ["hilbert"]}"#,
        )
        .unwrap();
        let spec = j.presentation().unwrap().unwrap();
        assert_eq!(spec.relations.len(), 1);
        let bad = r#"{"algebra": {"generators": ["x"], "relations": ["x*q"]}, "analyses": ["hilbert"]}"#;
        let bad = JobSpec::from_json(bad).unwrap().presentation();
        assert!(matches!(bad, Err(CliError::Parse { .. })));
    }

    #[test]
    fn group_analyses_need_a_group() {
        let e = JobSpec::from_json(r#"{"algebra": {"family": "polynomial", "n": 1}, "analyses": ["trace"]}"#);
        assert!(matches!(e, Err(CliError::Validation(_))));
    }

    #[test]
    fn cyclic_grading_degrees() {
        let g = grading(&GroupJob::Cyclic(vec![2, 3]), &[vec![1, 0], vec![1, 2]], 64).unwrap();
        assert_eq!(g.group.order(), 6);
        assert_eq!(g.degrees[0], GroupTable::cyclic_index(&[2, 3], &[1, 0]));
        assert_eq!(g.degrees[1], GroupTable::cyclic_index(&[2, 3], &[1, 2]));
    }
}
