//! The tensor-square engine: enumerate the double-copy group, extract the
//! crossed-commutator subgroup as a multiplication table, and derive the
//! diagonal subgroup, exterior square, commutator-map kernel and Schur
//! multiplier, cross-checking every exact-sequence identity along the way.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{gamma_whitehead, theorem_order_exponents, FiniteAbelianGroup};
use crate::coset::{
    enumerate, regular_representation, subgroup_index, CosetTable, EnumerationConfig,
    EnumerationError, EnumerationStats,
};
use crate::exec::Parallelism;
use crate::group::{
    abelian_group, direct_product, is_isomorphic, recognize_structure, GroupError, GroupTable,
    Homomorphism, StructureDescriptor, Subgroup,
};
use crate::presentation::{nu_presentation, NuPresentation, Presentation};


mod realization;

use realization::NuRealization;

pub const BIDERIVATION_SAMPLES: usize = 200;
pub const KAPPA_SAMPLES: usize = 500;

#[derive(Debug, Error)]
pub enum TensorError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

#[derive(Debug, Clone, Default)]
pub struct TensorConfig {
    pub enumeration: EnumerationConfig,
    pub parallelism: Parallelism,
}

impl TensorConfig {
    pub fn sequential() -> Self {
        TensorConfig {
            parallelism: Parallelism::Sequential,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Pass,
            detail: detail.into(),
        }
    }

    fn fail(name: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Fail,
            detail: detail.into(),
        }
    }

    fn not_applicable(name: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::NotApplicable,
            detail: detail.into(),
        }
    }

    fn of(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Self::pass(name, detail)
        } else {
            Self::fail(name, detail)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComputationMode {
    Full,
    OrderOnly,
}

/// Order and recognized structure of one piece of the diagram.
#[derive(Debug, Clone)]
pub struct PieceSummary {
    pub order: u64,
    pub structure: StructureDescriptor,
    pub invariant_factors: Option<Vec<u64>>,
}

impl PieceSummary {
    fn of(table: &GroupTable) -> Result<Self, GroupError> {
        Ok(PieceSummary {
            order: table.order() as u64,
            structure: recognize_structure(table)?,
            invariant_factors: table
                .abelian_invariants()
                .map(|a| a.invariant_factors().to_vec()),
        })
    }
}

/// Everything the full pipeline produces beyond the order.
#[derive(Debug, Clone)]
pub struct FullDetail {
    pub tensor: PieceSummary,
    pub exterior: PieceSummary,
    pub nabla: PieceSummary,
    pub j2: PieceSummary,
    pub schur_multiplier: FiniteAbelianGroup,
    pub tensor_table: GroupTable,
    pub exterior_table: GroupTable,
    pub kappa: Homomorphism,
    pub tensor_exponent: u64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ReportStats {
    pub nu_order: Option<u64>,
    pub strategy: String,
    pub enumeration: EnumerationStats,
}

/// All computed invariants of one group.
#[derive(Debug, Clone)]
pub struct TensorSquareReport {
    pub group_name: String,
    pub group_order: u64,
    pub presentation_text: String,
    pub group_table: Option<GroupTable>,
    pub mode: ComputationMode,
    pub tensor_order: u64,
    pub detail: Option<FullDetail>,
    pub checks: Vec<CheckResult>,
    pub stats: ReportStats,
}

impl TensorSquareReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.status != CheckStatus::Fail)
    }

    pub fn schur_multiplier(&self) -> Option<&FiniteAbelianGroup> {
        self.detail.as_ref().map(|d| &d.schur_multiplier)
    }
}

/// `|G (x) G|` by enumerating the double-copy group over the second copy:
/// the index is `|G| * |G (x) G|`.
pub fn order_only_tensor(
    p: &Presentation,
    config: &EnumerationConfig,
) -> Result<(u64, u64, EnumerationStats), TensorError> {
    let (g_order, _) = subgroup_index(p, &[], config)?;
    let nu = nu_presentation(p);
    let second_copy: Vec<_> = nu
        .second_copy()
        .map(crate::presentation::Word::generator)
        .collect();
    let (index, stats) = subgroup_index(nu.presentation(), &second_copy, config)?;
    if index % g_order != 0 {
        return Err(TensorError::Inconsistency(format!(
            "index {index} of the second copy is not divisible by |G| = {g_order}"
        )));
    }
    Ok(((index / g_order) as u64, g_order as u64, stats))
}

/// Full computation of the tensor square and the diagram around it. Falls
/// back to the order-only path when the double-copy enumeration exceeds the
/// coset limit.
pub fn compute_tensor_square(
    p: &Presentation,
    config: &TensorConfig,
) -> Result<TensorSquareReport, TensorError> {
    let (g_table, _) = regular_representation(p, &config.enumeration)?;
    compute_with_table(p, g_table, None, config)
}

/// As `compute_tensor_square`, with a group name for reporting.
pub fn compute_named(
    p: &Presentation,
    name: &str,
    config: &TensorConfig,
) -> Result<TensorSquareReport, TensorError> {
    let (g_table, _) = regular_representation(p, &config.enumeration)?;
    compute_with_table(p, g_table, Some(name.to_string()), config)
}

/// Order-only report (no structure fields), used both as the explicit fast
/// path and as the degraded fallback.
pub fn compute_order_only(
    p: &Presentation,
    name: Option<String>,
    config: &EnumerationConfig,
) -> Result<TensorSquareReport, TensorError> {
    let (tensor_order, g_order, stats) = order_only_tensor(p, config)?;
    Ok(TensorSquareReport {
        group_name: name.unwrap_or_else(|| format!("order-{g_order} group")),
        group_order: g_order,
        presentation_text: p.to_string(),
        group_table: None,
        mode: ComputationMode::OrderOnly,
        tensor_order,
        detail: None,
        checks: vec![CheckResult::not_applicable(
            "full-structure",
            "order-only mode: structure not computed",
        )],
        stats: ReportStats {
            nu_order: Some(g_order * g_order * tensor_order),
            strategy: config.strategy.to_string(),
            enumeration: stats,
        },
    })
}

pub fn compute_with_table(
    p: &Presentation,
    g_table: GroupTable,
    name: Option<String>,
    config: &TensorConfig,
) -> Result<TensorSquareReport, TensorError> {
    let nu = nu_presentation(p);
    let enumerated = enumerate(nu.presentation(), &[], &config.enumeration);
    let (nu_table, stats) = match enumerated {
        Ok(ok) => ok,
        Err(EnumerationError::CosetLimitExceeded { .. }) => {
            let mut report = compute_order_only(p, name, &config.enumeration)?;
            report.checks.insert(
                0,
                CheckResult::not_applicable(
                    "full-enumeration",
                    "coset limit exceeded; fell back to the order-only path",
                ),
            );
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    let name = name.unwrap_or_else(|| format!("order-{} group", g_table.order()));
    build_full_report(p, &nu, nu_table, stats, g_table, name, config)
}

fn build_full_report(
    p: &Presentation,
    nu: &NuPresentation,
    nu_table: CosetTable,
    enum_stats: EnumerationStats,
    g_table: GroupTable,
    name: String,
    config: &TensorConfig,
) -> Result<TensorSquareReport, TensorError> {
    let real = NuRealization::build(nu, nu_table, &g_table, config.parallelism)?;
    let mut checks = Vec::new();

    let n = g_table.order() as u64;
    let t = real.tensor_table.order() as u64;
    let nu_order = real.nu_order() as u64;
    checks.push(CheckResult::of(
        "nu-order",
        nu_order == n * n * t,
        format!("|nu(G)| = {nu_order}, |G|^2 |GxG| = {}", n * n * t),
    ));

    // kappa and its image.
    let derived = g_table.derived_subgroup();
    let kappa_image = real.kappa.image_elements();
    checks.push(CheckResult::of(
        "kappa-image",
        kappa_image == derived.elements(),
        format!(
            "im(kappa) has order {}, G' has order {}",
            kappa_image.len(),
            derived.order()
        ),
    ));
    let j2 = real.kappa.kernel(&real.tensor_table);

    // nabla and the exterior square.
    let nabla = &real.nabla;
    checks.push(CheckResult::of(
        "diagram-nabla-in-j2",
        nabla.is_subset_of(&j2),
        format!("|nabla| = {}, |J2| = {}", nabla.order(), j2.order()),
    ));
    let (exterior_table, projection) = real.tensor_table.quotient(nabla)?;
    let kappa_prime = induced_on_quotient(&real.tensor_table, &exterior_table, &projection, &real.kappa, &g_table)?;

    // Schur multiplier M = J2 / nabla.
    let (j2_table, j2_map) = real.tensor_table.subgroup_table(&j2);
    let nabla_in_j2: Vec<u32> = nabla
        .elements()
        .iter()
        .map(|&x| {
            j2_map
                .binary_search(&x)
                .map(|i| i as u32)
                .map_err(|_| TensorError::Inconsistency("nabla element outside J2".into()))
        })
        .collect::<Result<_, _>>()?;
    let nabla_sub_j2 = j2_table.subgroup_generated(&nabla_in_j2);
    let (m_table, _) = j2_table.quotient(&nabla_sub_j2)?;
    let multiplier = m_table.abelian_invariants();
    checks.push(CheckResult::of(
        "diagram-multiplier-abelian",
        multiplier.is_some(),
        format!("J2/nabla of order {}", m_table.order()),
    ));
    let multiplier = multiplier.unwrap_or_else(FiniteAbelianGroup::trivial);
    let m = multiplier.order();

    let d = derived.order() as u64;
    checks.push(CheckResult::of(
        "diagram-order-product",
        t == nabla.order() as u64 * m * d,
        format!(
            "|GxG| = {t}, |nabla| |M| |G'| = {} * {m} * {d}",
            nabla.order()
        ),
    ));

    // Exterior square order and ker(kappa') = M.
    let kp_kernel = kappa_prime.kernel(&exterior_table);
    let (kp_kernel_table, _) = exterior_table.subgroup_table(&kp_kernel);
    let kp_kernel_inv = kp_kernel_table.abelian_invariants();
    let exterior_ok = exterior_table.order() as u64 == m * d
        && kp_kernel_inv.as_ref() == Some(&multiplier);
    checks.push(CheckResult::of(
        "diagram-exterior",
        exterior_ok,
        format!(
            "|G^G| = {} (expect {}), ker(kappa') = {}",
            exterior_table.order(),
            m * d,
            kp_kernel_inv
                .map(|a| a.to_string())
                .unwrap_or_else(|| "non-abelian".into())
        ),
    ));

    // Gamma bound on nabla.
    let (ab, _, _) = g_table.abelianization();
    let gamma = gamma_whitehead(&ab);
    let (nabla_table, _) = real.tensor_table.subgroup_table(nabla);
    let nabla_inv = nabla_table.abelian_invariants();
    let gamma_ok = match &nabla_inv {
        Some(inv) => gamma.order() % inv.order() == 0 && gamma.exponent() % inv.exponent() == 0,
        None => false,
    };
    checks.push(CheckResult::of(
        "diagram-gamma-bound",
        gamma_ok,
        format!(
            "nabla = {}, Gamma(G^ab) = {gamma}",
            nabla_inv
                .as_ref()
                .map(|a| a.to_string())
                .unwrap_or_else(|| "non-abelian".into())
        ),
    ));

    checks.push(theorem_complement_check(
        &g_table,
        &derived,
        &exterior_table,
        &ab,
        &real.tensor_table,
        t,
        m,
    )?);
    checks.push(theorem_odd_order_check(&ab, n, t, m));
    checks.push(pi_epimorphism_check(&ab, t));
    let tensor_derived = real.tensor_table.derived_subgroup();
    checks.push(CheckResult::of(
        "tensor-derived-in-j2",
        tensor_derived.is_subset_of(&j2),
        format!("|(GxG)'| = {}", tensor_derived.order()),
    ));

    checks.push(real.biderivation_check(&g_table, BIDERIVATION_SAMPLES));
    checks.push(real.kappa_commutator_check(&g_table, KAPPA_SAMPLES));

    // Cross-check against the order-only route.
    let (order_only, _, _) = order_only_tensor(p, &config.enumeration)?;
    checks.push(CheckResult::of(
        "order-only-agreement",
        order_only == t,
        format!("order-only path gives {order_only}, full path gives {t}"),
    ));

    let detail = FullDetail {
        tensor: PieceSummary::of(&real.tensor_table)?,
        exterior: PieceSummary::of(&exterior_table)?,
        nabla: PieceSummary::of(&nabla_table)?,
        j2: PieceSummary::of(&j2_table)?,
        schur_multiplier: multiplier,
        tensor_exponent: real.tensor_table.exponent(),
        tensor_table: real.tensor_table,
        exterior_table,
        kappa: real.kappa,
    };
    Ok(TensorSquareReport {
        group_name: name,
        group_order: n,
        presentation_text: p.to_string(),
        group_table: Some(g_table),
        mode: ComputationMode::Full,
        tensor_order: t,
        detail: Some(detail),
        checks,
        stats: ReportStats {
            nu_order: Some(nu_order),
            strategy: config.enumeration.strategy.to_string(),
            enumeration: enum_stats,
        },
    })
}

/// The map the quotient inherits from `kappa`: well-defined exactly because
/// the quotient kernel sits inside ker(kappa), verified on construction.
fn induced_on_quotient(
    source: &GroupTable,
    quotient: &GroupTable,
    projection: &Homomorphism,
    kappa: &Homomorphism,
    target: &GroupTable,
) -> Result<Homomorphism, TensorError> {
    let mut images = vec![u32::MAX; quotient.order()];
    for x in 0..source.order() {
        let q = projection.image_of(x);
        let k = kappa.image_of(x) as u32;
        if images[q] == u32::MAX {
            images[q] = k;
        } else if images[q] != k {
            return Err(TensorError::Inconsistency(
                "kappa is not constant on nabla-cosets".into(),
            ));
        }
    }
    Ok(Homomorphism::new(quotient, target, images)?)
}

fn theorem_complement_check(
    g_table: &GroupTable,
    derived: &Subgroup,
    exterior_table: &GroupTable,
    ab: &FiniteAbelianGroup,
    tensor_table: &GroupTable,
    t: u64,
    m: u64,
) -> Result<CheckResult, TensorError> {
    const NAME: &str = "theorem-complement-order";
    let complement = match g_table.find_complement(derived) {
        Ok(c) => c,
        Err(GroupError::SearchBoundExceeded(b)) => {
            return Ok(CheckResult::not_applicable(
                NAME,
                format!("complement search exceeded bound {b}"),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let Some(h) = complement else {
        return Ok(CheckResult::not_applicable(NAME, "G' has no complement"));
    };
    let (h_table, _) = g_table.subgroup_table(&h);
    let cyclic = (0..h_table.order()).any(|x| h_table.element_order(x) == h_table.order() as u64);
    if !cyclic {
        // Single-element seeds are searched first, so a non-cyclic result
        // means no cyclic complement exists.
        return Ok(CheckResult::not_applicable(
            NAME,
            "no cyclic complement of G'",
        ));
    }
    let order_ok = t == g_table.order() as u64 * m;
    let candidate = direct_product(exterior_table, &abelian_group(ab.invariant_factors())?);
    let structure_ok = is_isomorphic(tensor_table, &candidate)?;
    Ok(CheckResult::of(
        NAME,
        order_ok && structure_ok,
        format!(
            "|GxG| = {t} vs |G| |M| = {}; GxG = (G^G) x G^ab: {structure_ok}",
            g_table.order() as u64 * m
        ),
    ))
}

fn theorem_odd_order_check(ab: &FiniteAbelianGroup, n: u64, t: u64, m: u64) -> CheckResult {
    const NAME: &str = "theorem-odd-order-formula";
    let exponents = theorem_order_exponents(ab);
    if exponents.values().any(Option::is_none) {
        return CheckResult::not_applicable(NAME, "2 divides |G^ab|");
    }
    let mut prod = 1u64;
    for (p, d) in &exponents {
        prod *= p.pow(d.unwrap() as u32);
    }
    CheckResult::of(
        NAME,
        t == prod * n * m,
        format!("|GxG| = {t} vs (prod p^d) |G| |M| = {prod} * {n} * {m}"),
    )
}

fn pi_epimorphism_check(ab: &FiniteAbelianGroup, t: u64) -> CheckResult {
    let t_ab = ab.tensor(ab);
    CheckResult::of(
        "pi-epimorphism",
        t % t_ab.order() == 0,
        format!("|G^ab (x) G^ab| = {} divides |GxG| = {t}", t_ab.order()),
    )
}
