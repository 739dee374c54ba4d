//! Builds the objects a scenario names, runs the matching pipeline and
//! assembles the report.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::config::{
    ActionConfig, AutomorphismSource, ConfigError, HorizonConfig, MetricConfig, ScenarioConfig,
    ScenarioKind, SystemConfig,
};
use super::oracle::{complexity_profile, oracle_language};
use super::report::{Check, Report};
use crate::action::{ActionKind, GroupAction};
use crate::automorphism::{read_letter_maps, LetterMap};
use crate::constructions::{
    build_block_hierarchy, build_direct_product, build_fibered_system, build_product_normalizer,
    build_profinite_realization, classify_translation_family, hierarchy_checks, right_translations,
    run_sadic_embedding, verify_product_relations, ComponentSystem, ConstructionError,
    HierarchyCaps, Horizons, ProfiniteReport,
};
use crate::group::{AssocCheck, Elem, FiniteGroup, GroupSpec};
use crate::language::{generate_language, Budget, SubshiftError, BUDGET_ENV};
use crate::metric::AlphabetMetric;
use crate::substitution::SubstitutionSequence;
use crate::tower::QuotientTower;

const DEFAULT_RECURRENCE: usize = 64;
const DEFAULT_P_MAX: usize = 8;
const DEFAULT_APERIODICITY_LEN: usize = 16;
const DEFAULT_ENUMERATION_CAP: usize = 200_000;

/// A group action with its generator schedule and candidate automorphisms.
#[derive(Debug, Clone)]
pub struct BuiltSystem {
    pub action: GroupAction,
    pub schedule: Vec<Vec<Elem>>,
    pub auts: Vec<LetterMap>,
}

struct Recorder {
    checks: Vec<Check>,
    timing: BTreeMap<String, u64>,
}

impl Recorder {
    fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        let ms = start.elapsed().as_millis().try_into().unwrap_or(u64::MAX);
        *self.timing.entry(stage.to_string()).or_default() += ms;
        out
    }

    fn push(&mut self, c: Check) {
        self.checks.push(c);
    }
}

fn read_file(base_dir: &Path, path: &Path) -> Result<String, ConfigError> {
    let full = base_dir.join(path);
    std::fs::read_to_string(&full).map_err(|source| ConfigError::Io { path: full, source })
}

/// `CANTOR_BUDGET` if set, else `caps.budget`, else the default.
pub fn resolve_budget(config: &ScenarioConfig) -> Budget {
    if std::env::var(BUDGET_ENV).is_ok() {
        return Budget::from_env();
    }
    config
        .caps
        .budget
        .map(|max_letters| Budget { max_letters })
        .unwrap_or_default()
}

fn assoc_check(config: &ScenarioConfig) -> AssocCheck {
    let mut check = AssocCheck {
        seed: config.seed.unwrap_or(0),
        ..AssocCheck::default()
    };
    if let Some(limit) = config.caps.assoc_exhaustive_limit {
        check.exhaustive_limit = limit;
    }
    check
}

fn build_group_of(
    sys: &SystemConfig,
    prefix: &str,
    config: &ScenarioConfig,
    base_dir: &Path,
) -> Result<FiniteGroup, ConfigError> {
    let check = assoc_check(config);
    if let Some(spec) = &sys.group {
        let spec: GroupSpec = spec.parse().map_err(|e: crate::group::GroupError| {
            ConfigError::invalid(format!("{prefix}.group"), e.to_string())
        })?;
        return spec
            .build(&check)
            .map_err(|e| ConfigError::invalid(format!("{prefix}.group"), e.to_string()));
    }
    let path = sys
        .group_table
        .as_ref()
        .expect("validated: group or group_table");
    let text = read_file(base_dir, path)?;
    let order = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .and_then(|l| l.trim().parse::<usize>().ok());
    if order.is_some_and(|n| n > check.exhaustive_limit) && config.seed.is_none() {
        return Err(ConfigError::invalid(
            "seed",
            "required when a group table is large enough for sampled associativity checks",
        ));
    }
    FiniteGroup::from_table_text(&text, &path.display().to_string(), &check)
        .map_err(|e| ConfigError::invalid(format!("{prefix}.group_table"), e.to_string()))
}

/// Builds the group, action, schedule and automorphisms of a system section.
pub fn build_system(
    sys: &SystemConfig,
    prefix: &str,
    config: &ScenarioConfig,
    base_dir: &Path,
) -> Result<BuiltSystem, ConfigError> {
    let group = build_group_of(sys, prefix, config, base_dir)?;
    let field = format!("{prefix}.action");
    let kind = match &sys.action {
        ActionConfig::LeftTranslation => ActionKind::LeftTranslation,
        ActionConfig::Trivial { alphabet_size } => ActionKind::Trivial {
            alphabet_size: *alphabet_size,
        },
        ActionConfig::Coset { subgroup } => ActionKind::CosetSpace {
            subgroup: subgroup.clone(),
        },
        ActionConfig::Quotient {
            quotient,
            projection,
        } => {
            let q: GroupSpec = quotient.parse().map_err(|e: crate::group::GroupError| {
                ConfigError::invalid(&field, e.to_string())
            })?;
            ActionKind::Quotient {
                quotient: q
                    .build(&assoc_check(config))
                    .map_err(|e| ConfigError::invalid(&field, e.to_string()))?,
                projection: projection.clone(),
            }
        }
        ActionConfig::Table { path } => {
            let text = read_file(base_dir, path)?;
            let action = GroupAction::from_table_text(group.clone(), &text)
                .map_err(|e| ConfigError::invalid(&field, e.to_string()))?;
            return finish_system(sys, prefix, action, base_dir);
        }
    };
    let action =
        GroupAction::new(group, kind).map_err(|e| ConfigError::invalid(&field, e.to_string()))?;
    finish_system(sys, prefix, action, base_dir)
}

fn finish_system(
    sys: &SystemConfig,
    prefix: &str,
    action: GroupAction,
    base_dir: &Path,
) -> Result<BuiltSystem, ConfigError> {
    let schedule = sys
        .schedule
        .clone()
        .unwrap_or_else(|| vec![action.group().default_symmetric_generators()]);
    let n = action.alphabet_size();
    let left = matches!(sys.action, ActionConfig::LeftTranslation);
    let auts = if let Some(path) = &sys.automorphisms_file {
        let text = read_file(base_dir, path)?;
        read_letter_maps(&text).map_err(|e| {
            ConfigError::invalid(format!("{prefix}.automorphisms_file"), e.to_string())
        })?
    } else {
        let field = format!("{prefix}.automorphisms");
        match &sys.automorphisms {
            Some(AutomorphismSource::Preset(p)) if p == "right-translations" => {
                if !left {
                    return Err(ConfigError::invalid(
                        field,
                        "right-translations needs the left-translation action",
                    ));
                }
                right_translations(action.group())
            }
            Some(AutomorphismSource::Preset(_)) => vec![LetterMap::identity(n)],
            Some(AutomorphismSource::Maps(maps)) => maps
                .iter()
                .enumerate()
                .map(|(i, m)| LetterMap::new(m.clone(), format!("h{i}")))
                .collect::<Result<_, _>>()
                .map_err(|e| ConfigError::invalid(&field, e.to_string()))?,
            None if left => right_translations(action.group()),
            None => vec![LetterMap::identity(n)],
        }
    };
    if let Some(bad) = auts.iter().find(|h| h.alphabet_size() != n) {
        return Err(ConfigError::invalid(
            format!("{prefix}.automorphisms"),
            format!(
                "`{}` acts on {} letters, the action has {n}",
                bad.label(),
                bad.alphabet_size()
            ),
        ));
    }
    Ok(BuiltSystem {
        action,
        schedule,
        auts,
    })
}

fn horizons_of(h: &HorizonConfig) -> Horizons {
    Horizons {
        max_len: h.max_len,
        depth: h.depth,
        recurrence: h.recurrence.unwrap_or(DEFAULT_RECURRENCE),
        p_max: h.p_max.unwrap_or(DEFAULT_P_MAX),
        aperiodicity_len: h.aperiodicity_len.unwrap_or(DEFAULT_APERIODICITY_LEN),
    }
}

fn subshift_check(name: &str, e: &SubshiftError) -> Check {
    match e {
        SubshiftError::BudgetExceeded { .. } => Check::inconclusive(name, e.to_string()),
        _ => Check::fail(name, e.to_string()),
    }
}

fn construction_check(name: &str, e: &ConstructionError) -> Check {
    match e {
        ConstructionError::Subshift(s) => subshift_check(name, s),
        _ => Check::fail(name, e.to_string()),
    }
}

/// `generate_language` against `oracle_language` for every seed, then the
/// complexity profile of the seed-0 language.
fn oracle_checks(
    rec: &mut Recorder,
    seq: &SubstitutionSequence,
    max_len: usize,
    depth: usize,
    budget: &Budget,
) {
    let mut failure = None;
    let mut words = 0usize;
    let mut first = None;
    let result = rec.timed("oracle", || {
        for seed in 0..seq.alphabet_size() {
            let generated = generate_language(seq, seed, max_len, depth, budget)?;
            let oracle = oracle_language(seq, seed, max_len, depth, budget)?;
            words += generated.counts().iter().sum::<usize>();
            if let Some((len, w, in_generated)) = generated.first_difference(&oracle) {
                let side = if in_generated { "generator" } else { "oracle" };
                failure = Some(format!(
                    "seed {seed}: `{w}` of length {len} only from the {side}"
                ));
                break;
            }
            first.get_or_insert(generated);
        }
        Ok::<(), SubshiftError>(())
    });
    rec.push(match result {
        Ok(()) => Check::from_failure("oracle-agreement", failure)
            .count("seeds", seq.alphabet_size())
            .count("words", words),
        Err(e) => subshift_check("oracle-agreement", &e),
    });
    if let Some(lang) = first {
        let p = complexity_profile(&lang);
        let mut c = match p.decrease_at {
            None => Check::pass("complexity"),
            Some(l) => Check::inconclusive(
                "complexity",
                format!("p({}) < p({l}): generation horizon too short", l + 1),
            ),
        };
        for (i, v) in p.counts.iter().enumerate() {
            c = c.count(&format!("p{:02}", i + 1), *v);
        }
        rec.push(c);
    }
}

fn sadic(rec: &mut Recorder, sys: &BuiltSystem, h: &HorizonConfig, budget: &Budget) {
    let horizons = horizons_of(h);
    let report = rec.timed("pipeline", || {
        run_sadic_embedding(&sys.action, &sys.schedule, &sys.auts, horizons, budget)
    });
    let built = report.checks.len() > 1;
    for c in report.checks {
        rec.push(c);
    }
    if built {
        let seq = SubstitutionSequence::from_action_schedule(&sys.action, &sys.schedule)
            .expect("pipeline built it");
        oracle_checks(rec, &seq, h.max_len, h.depth, budget);
    }
}

fn oracle_compare(rec: &mut Recorder, sys: &BuiltSystem, h: &HorizonConfig, budget: &Budget) {
    match SubstitutionSequence::from_action_schedule(&sys.action, &sys.schedule) {
        Ok(seq) => {
            rec.push(Check::pass("substitution").count("alphabet", seq.alphabet_size()));
            oracle_checks(rec, &seq, h.max_len, h.depth, budget);
        }
        Err(e) => rec.push(subshift_check("substitution", &e)),
    }
}

fn tower_of(config: &ScenarioConfig) -> Result<Option<QuotientTower>, ConfigError> {
    config
        .tower
        .as_ref()
        .map(|t| {
            QuotientTower::cyclic_chain(&t.moduli)
                .map_err(|e| ConfigError::invalid("tower.moduli", e.to_string()))
        })
        .transpose()
}

fn ratio_counts(c: Check, key: &str, r: &BigRational) -> Check {
    let num = r.numer().to_u64().unwrap_or(u64::MAX);
    let den = r.denom().to_u64().unwrap_or(u64::MAX);
    c.count(&format!("{key}_num"), num)
        .count(&format!("{key}_den"), den)
}

fn big_count(n: &BigUint) -> u64 {
    n.to_u64().unwrap_or(u64::MAX)
}

fn block_hierarchy(
    rec: &mut Recorder,
    config: &ScenarioConfig,
    sys: &BuiltSystem,
) -> Result<(), ConfigError> {
    let hc = config.hierarchy.as_ref().expect("validated");
    let metric = match hc.metric {
        MetricConfig::Discrete => AlphabetMetric::Discrete,
        MetricConfig::Tower => {
            let tower = tower_of(config)?.expect("validated");
            if tower.top().order() != sys.action.alphabet_size() {
                return Err(ConfigError::invalid(
                    "tower.moduli",
                    format!(
                        "top level has {} elements, the alphabet has {}",
                        tower.top().order(),
                        sys.action.alphabet_size()
                    ),
                ));
            }
            AlphabetMetric::tower(&tower)
        }
    };
    let densities = hc
        .densities
        .iter()
        .enumerate()
        .map(|(i, d)| {
            if d == "auto" {
                Ok(None)
            } else {
                BigRational::from_str(d).map(Some).map_err(|e| {
                    ConfigError::invalid(format!("hierarchy.densities[{i}]"), e.to_string())
                })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let caps = HierarchyCaps {
        levels: hc.levels,
        marker_cap: config
            .caps
            .marker_cap
            .unwrap_or(HierarchyCaps::default().marker_cap),
        enumeration_cap: config
            .caps
            .enumeration_cap
            .unwrap_or(DEFAULT_ENUMERATION_CAP),
    };
    let h = match rec.timed("build", || {
        build_block_hierarchy(&sys.action, metric, caps, &densities)
    }) {
        Ok(h) => h,
        Err(e) => {
            rec.push(construction_check("construction", &e));
            return Ok(());
        }
    };
    let needs_sampling = h.levels().iter().any(|l| !l.is_enumerated());
    let sample_budget = match hc.sample_budget {
        Some(b) => b,
        None if needs_sampling => {
            return Err(ConfigError::invalid(
                "hierarchy.sample_budget",
                "a level exceeds the enumeration cap; set sample_budget and seed",
            ))
        }
        None => caps.enumeration_cap,
    };
    let mut built = Check::pass("construction");
    for level in h.levels() {
        built = built
            .count(&format!("len{}", level.n), level.block_len)
            .count(&format!("words{}", level.n), big_count(&level.count))
            .count(&format!("markers{}", level.n), level.marker_count());
    }
    rec.push(built);

    let r = rec.timed("checks", || {
        hierarchy_checks(&h, sample_budget, config.seed.unwrap_or(0))
    });
    rec.push(Check::from_failure(
        "lengths",
        r.length_failure
            .map(|(n, want, got)| format!("level {n}: expected length {want}, found {got}")),
    ));
    rec.push(Check::from_failure(
        "decomposition",
        r.decomposition_failure
            .as_ref()
            .map(|(n, w)| format!("level {n}: `{w}` repeats or leaves the block grid")),
    ));
    rec.push(Check::from_failure(
        "markers",
        r.marker_failure.as_ref().map(|(n, g, w)| {
            format!("level {n}: element {g} moves marker `{w}` out of the marker set")
        }),
    ));
    rec.push(
        Check::from_failure(
            "invariance",
            r.invariance_failure
                .as_ref()
                .map(|(n, g, w)| format!("level {n}: element {g} maps `{w}` outside the level")),
        )
        .count("tests", r.invariance_tests)
        .count("exhaustive", u64::from(r.invariance_exhaustive)),
    );
    for claim in &r.claims {
        let name = format!("claim-level-{}", claim.level);
        let c = match &claim.witness {
            Some((u, v)) if !claim.holds() => {
                Check::fail(&name, format!("`{u}` is farther than the bound from `{v}`"))
            }
            _ if !claim.holds() => Check::fail(&name, "bound exceeded"),
            _ => Check::pass(&name),
        };
        let c = ratio_counts(c, "worst", &claim.worst);
        let c = ratio_counts(c, "bound", &claim.bound);
        rec.push(
            c.count("pairs", claim.pairs)
                .count("exhaustive", u64::from(claim.exhaustive)),
        );
    }
    let unseparated: Vec<String> = r
        .faithfulness
        .iter()
        .filter(|(_, w)| w.is_none())
        .map(|(g, _)| g.to_string())
        .collect();
    rec.push(
        Check::from_failure(
            "faithfulness",
            (!unseparated.is_empty())
                .then(|| format!("no moved marker for elements {}", unseparated.join(", "))),
        )
        .count("elements", r.faithfulness.len()),
    );
    Ok(())
}

fn product_normalizer(rec: &mut Recorder, config: &ScenarioConfig, sys: &BuiltSystem) {
    let pc = config.product.as_ref().expect("validated");
    let fibered = match build_fibered_system(sys.action.group(), pc.modulus) {
        Ok(f) => f,
        Err(e) => return rec.push(construction_check("fibered-system", &e)),
    };
    rec.push(
        Check::from_failure(
            "fibered-system",
            fibered
                .commutation_failure()
                .map(|(g, p)| format!("rotation does not commute with element {g} at point {p}")),
        )
        .count("points", fibered.point_count()),
    );
    let components = fibered.components();
    let base_idx = pc.base_component.unwrap_or(0);
    let Some(base) = components.get(base_idx) else {
        return rec.push(Check::fail(
            "normalizer",
            format!(
                "base component {base_idx} out of range ({} components)",
                components.len()
            ),
        ));
    };
    let cap = config
        .caps
        .enumeration_cap
        .unwrap_or(DEFAULT_ENUMERATION_CAP);
    let sampling = pc.samples.map(|n| (config.seed.expect("validated"), n));
    let ps = match rec.timed("build", || {
        build_product_normalizer(&fibered, base, cap, sampling)
    }) {
        Ok(ps) => ps,
        Err(e) => return rec.push(construction_check("normalizer", &e)),
    };
    rec.push(
        Check::pass("normalizer")
            .count("components", components.len())
            .count("index", ps.index_len())
            .count("states", ps.states().len())
            .count("stabilizer", ps.stabilizer().len()),
    );
    let r = rec.timed("relations", || verify_product_relations(&ps, None));
    let show = |v: &[usize]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let showi = |v: &[i64]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    rec.push(
        Check::from_failure(
            "relations",
            r.relation_failure
                .as_ref()
                .map(|(g, n, y)| format!("g = {g}, n = ({}), y = ({})", showi(n), show(y))),
        )
        .count("instances", r.instances),
    );
    let pair = |name: &str, f: Option<(Elem, Elem)>, what: &str| {
        Check::from_failure(name, f.map(|(a, b)| format!("{what} fails for ({a}, {b})")))
    };
    rec.push(pair(
        "homomorphism",
        r.homomorphism_failure,
        "T(gh) = T(g)T(h)",
    ));
    rec.push(pair("injectivity", r.injectivity_failure, "distinct maps"));
    rec.push(pair("alpha", r.alpha_failure, "α multiplicativity"));
    rec.push(pair("sigma-law", r.sigma_law_failure, "σ composition law"));
    rec.push(Check::from_failure(
        "freeness",
        r.freeness_failure
            .as_ref()
            .map(|(n, y)| format!("S^({}) fixes ({})", showi(n), show(y))),
    ));
    rec.push(Check::from_failure(
        "components",
        r.component_failure.map(|(g, i)| {
            format!("element {g} does not carry component σ_g({i}) onto component {i}")
        }),
    ));
}

fn profinite_checks(rec: &mut Recorder, r: &ProfiniteReport) {
    rec.push(
        Check::from_failure(
            "centralizer",
            if !r.misclassified.is_empty() {
                Some(format!("misclassified: {}", r.misclassified.join(", ")))
            } else if r.centralizer_count != r.order {
                Some(format!("{} of {} accepted", r.centralizer_count, r.order))
            } else {
                None
            },
        )
        .count("accepted", r.centralizer_count),
    );
    rec.push(Check::from_failure(
        "free",
        (!r.free).then(|| "a non-identity right translation fixes a letter".to_string()),
    ));
    rec.push(Check::from_failure(
        "transitive",
        (!r.transitive).then(|| "some letter is not reached from the identity".to_string()),
    ));
    rec.push(
        Check::from_failure(
            "conjugations",
            (!r.rejected_conjugations.is_empty())
                .then(|| format!("rejected: {}", r.rejected_conjugations.join(", "))),
        )
        .count("proper_normalizer", r.proper_normalizer.len())
        .count("central", r.central_conjugations),
    );
}

fn profinite(
    rec: &mut Recorder,
    config: &ScenarioConfig,
    base_dir: &Path,
) -> Result<(), ConfigError> {
    let result = if let Some(tower) = tower_of(config)? {
        let depth = config
            .tower
            .as_ref()
            .and_then(|t| t.depth)
            .unwrap_or(tower.depth());
        rec.timed("classify", || build_profinite_realization(&tower, depth))
    } else {
        let sys = config.system.as_ref().expect("validated");
        let group = build_group_of(sys, "system", config, base_dir)?;
        rec.timed("classify", || classify_translation_family(&group))
    };
    match result {
        Ok((_, _, r)) => profinite_checks(rec, &r),
        Err(e) => rec.push(construction_check("centralizer", &e)),
    }
    Ok(())
}

fn direct_product(
    rec: &mut Recorder,
    config: &ScenarioConfig,
    a: BuiltSystem,
    b: BuiltSystem,
    budget: &Budget,
) {
    let component = |s: BuiltSystem| ComponentSystem {
        action: s.action,
        gens: s
            .schedule
            .into_iter()
            .next()
            .expect("validated: schedule not empty"),
        auts: s.auts,
    };
    let (a, b) = (component(a), component(b));
    let (product, r) = match rec.timed("build", || build_direct_product(&a, &b)) {
        Ok(x) => x,
        Err(e) => return rec.push(construction_check("components", &e)),
    };
    rec.push(
        Check::pass("components")
            .count("left_maps", a.auts.len())
            .count("right_maps", b.auts.len()),
    );
    rec.push(
        Check::from_failure(
            "equivariance",
            r.equivariance_failures
                .first()
                .map(|(l, x)| format!("`{l}` fails at letter {x}")),
        )
        .count("pairs", r.pair_count)
        .count("generators", r.generators.len()),
    );
    rec.push(
        Check::from_failure(
            "pairing-injective",
            r.duplicate
                .as_ref()
                .map(|(x, y)| format!("`{x}` and `{y}` coincide")),
        )
        .count("distinct", r.pair_count),
    );
    rec.push(Check::from_failure(
        "identity-pair",
        (!r.identity_pair_is_identity).then(|| "(id, id) is not the identity".to_string()),
    ));
    if let Some(h) = &config.horizons {
        let report = rec.timed("pipeline", || {
            run_sadic_embedding(
                &product.action,
                std::slice::from_ref(&product.gens),
                &product.auts,
                horizons_of(h),
                budget,
            )
        });
        for mut c in report.checks {
            c.name = format!("product-{}", c.name);
            rec.push(c);
        }
    }
}

/// Runs `config`; relative paths resolve against `base_dir`. Configuration
/// problems are errors, everything found while running is a check.
pub fn run_scenario(config: &ScenarioConfig, base_dir: &Path) -> Result<Report, ConfigError> {
    config.validate()?;
    let budget = resolve_budget(config);
    let mut rec = Recorder {
        checks: Vec::new(),
        timing: BTreeMap::new(),
    };
    let total = Instant::now();
    let system = |prefix: &str, s: &Option<SystemConfig>| -> Result<BuiltSystem, ConfigError> {
        build_system(s.as_ref().expect("validated"), prefix, config, base_dir)
    };
    match config.kind {
        ScenarioKind::SadicEmbedding => {
            let sys = system("system", &config.system)?;
            sadic(
                &mut rec,
                &sys,
                config.horizons.as_ref().expect("validated"),
                &budget,
            );
        }
        ScenarioKind::OracleCompare => {
            let sys = system("system", &config.system)?;
            oracle_compare(
                &mut rec,
                &sys,
                config.horizons.as_ref().expect("validated"),
                &budget,
            );
        }
        ScenarioKind::BlockHierarchy => {
            let sys = system("system", &config.system)?;
            block_hierarchy(&mut rec, config, &sys)?;
        }
        ScenarioKind::ProductNormalizer => {
            let sys = system("system", &config.system)?;
            product_normalizer(&mut rec, config, &sys);
        }
        ScenarioKind::Profinite => profinite(&mut rec, config, base_dir)?,
        ScenarioKind::DirectProduct => {
            let a = system("system", &config.system)?;
            let b = system("second", &config.second)?;
            direct_product(&mut rec, config, a, b, &budget);
        }
    }
    rec.timing.insert(
        "total".into(),
        total.elapsed().as_millis().try_into().unwrap_or(u64::MAX),
    );
    let echo = serde_json::to_value(config).expect("config serializes");
    Ok(Report::new(echo, rec.checks, rec.timing))
}

/// Where the report goes: `override_path`, else `config.output`.
pub fn output_path(
    config: &ScenarioConfig,
    base_dir: &Path,
    override_path: Option<&Path>,
) -> Option<PathBuf> {
    override_path
        .map(Path::to_path_buf)
        .or_else(|| config.output.as_ref().map(|p| base_dir.join(p)))
}

pub fn write_report(report: &Report, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, report.to_json())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::report::Status;

    fn run(text: &str) -> Report {
        run_scenario(&ScenarioConfig::from_toml(text).unwrap(), Path::new(".")).unwrap()
    }

    #[test]
    fn z4_sadic_embedding_passes() {
        let r = run(r#"
kind = "sadic-embedding"
[system]
group = "cyclic 4"
[horizons]
max_len = 8
depth = 6
recurrence = 16
"#);
        assert_eq!(r.status, Status::Pass, "{}", r.summary());
        for name in [
            "substitution",
            "primitivity",
            "language",
            "independence",
            "recurrence",
            "aperiodicity",
            "embedding",
            "oracle-agreement",
            "complexity",
        ] {
            assert!(r.checks.iter().any(|c| c.name == name), "missing {name}");
        }
    }

    #[test]
    fn determinism_up_to_timing() {
        let text = r#"
kind = "oracle-compare"
[system]
group = "cyclic 4"
[horizons]
max_len = 6
depth = 3
"#;
        let (a, b) = (run(text), run(text));
        assert_eq!(a.deterministic_json(), b.deterministic_json());
        assert!(a.verify_digest());
    }

    #[test]
    fn s3_product_normalizer_counts() {
        let r = run(r#"
kind = "product-normalizer"
[system]
group = "symmetric 3"
[product]
modulus = 3
"#);
        assert_eq!(r.status, Status::Pass, "{}", r.summary());
        let rel = r.checks.iter().find(|c| c.name == "relations").unwrap();
        assert_eq!(rel.counts["instances"], 6 * 12 * 729);
    }

    #[test]
    fn right_translations_need_left_action() {
        let c = ScenarioConfig::from_toml(
            r#"
kind = "sadic-embedding"
[system]
group = "cyclic 4"
action = "trivial"
automorphisms = "right-translations"
[horizons]
max_len = 3
depth = 1
"#,
        );
        // `trivial` needs an alphabet size, so this fails at the schema stage
        assert!(c.is_err());
        let c = ScenarioConfig::from_toml(
            r#"
kind = "sadic-embedding"
[system]
group = "cyclic 4"
action = { coset = { subgroup = [0, 2] } }
automorphisms = "right-translations"
[horizons]
max_len = 3
depth = 1
"#,
        )
        .unwrap();
        let e = run_scenario(&c, Path::new(".")).unwrap_err();
        assert_eq!(e.field(), Some("system.automorphisms"));
    }

    #[test]
    fn bad_group_spec_is_config_error() {
        let c =
            ScenarioConfig::from_toml("kind = \"profinite\"\n[system]\ngroup = \"cyclic zero\"\n")
                .unwrap();
        assert_eq!(
            run_scenario(&c, Path::new(".")).unwrap_err().field(),
            Some("system.group")
        );
    }

    #[test]
    fn profinite_tower() {
        let r = run("kind = \"profinite\"\n[tower]\nmoduli = [2, 4, 8]\ndepth = 3\n");
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.checks[0].counts["accepted"], 8);
    }

    #[test]
    fn direct_product_z4_z2() {
        let r = run(r#"
kind = "direct-product"
[system]
group = "cyclic 4"
[second]
group = "cyclic 2"
"#);
        assert_eq!(r.status, Status::Pass, "{}", r.summary());
        let eq = r.checks.iter().find(|c| c.name == "equivariance").unwrap();
        assert_eq!(eq.counts["pairs"], 8);
    }

    #[test]
    fn hierarchy_z4() {
        let r = run(
            "kind = \"block-hierarchy\"\n[system]\ngroup = \"cyclic 4\"\n[hierarchy]\nlevels = 2\n",
        );
        assert_eq!(r.status, Status::Pass, "{}", r.summary());
        let c = &r.checks[0];
        assert_eq!(c.counts["len2"], 10);
        assert_eq!(c.counts["words2"], 384);
    }
}
