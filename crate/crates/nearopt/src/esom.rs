//! Miniature multi-sector energy system model.
//!
//! A declarative [`EnergyModelSpec`] (weighted representative periods,
//! resources, conversion technologies, carrier demands, an emission cap)
//! compiles into a two-objective [`LinearProgram`]: total annual cost and
//! annual invested energy. The compiled program also carries a registry of
//! named selectors over the resource-use variables (endogenous, exogenous,
//! and each single resource), which is what the necessary-condition layer
//! consumes.
//!
//! Structure of the compiled program, per period `p`:
//!
//! - `cap[j]`   technology capacity, MW of fuel intake;
//! - `disp[j,p]` technology fuel intake, MWh;
//! - `use[i,p]`  resource supply, MWh of fuel.
//!
//! Every carrier (the two demand carriers plus each fuel pool) gets a
//! balance row `supply - consumption >= demand`; dispatch is limited by
//! `cap * capacity_factor * hours`; finite resource potentials cap annual
//! use; one row caps life-cycle emissions. Costs and invested energy have
//! a per-MW capacity part and a per-MWh operation part.

use crate::conditions::Selector;
use crate::lp::{
    evaluate, LinearConstraint, LinearObjective, LinearProgram, ModelError, Sense, SolveOutcome,
    Variable,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Hours in one year; period weights must add up to this.
pub const HOURS_PER_YEAR: f64 = 8760.0;

#[derive(Debug, Error, PartialEq)]
pub enum EsomError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("technology `{tech}` consumes `{input}`, which no resource pool or carrier provides")]
    DanglingInput { tech: String, input: String },
    #[error("demand on `{0}` but no technology or resource supplies that carrier")]
    DanglingDemand(String),
    #[error("period `{0}` has nonpositive weight")]
    ZeroWeightPeriod(String),
    #[error("period weights sum to {got} hours, expected {expected}")]
    WeightSum { got: f64, expected: f64 },
    #[error("technology `{0}` needs an efficiency in (0, 1]")]
    BadEfficiency(String),
    #[error("technology `{tech}` has {got} capacity factors for {expected} periods")]
    CapacityFactorArity { tech: String, got: usize, expected: usize },
    #[error("technology `{0}` has a capacity factor outside [0, 1]")]
    BadCapacityFactor(String),
    #[error("demand on `{carrier}` has {got} entries for {expected} periods")]
    DemandArity { carrier: String, got: usize, expected: usize },
    #[error("`{name}` has a negative parameter `{field}`")]
    NegativeParameter { name: String, field: &'static str },
    #[error("the model has no periods")]
    NoPeriods,
    #[error("technology `{tech}` outputs `{output}`; outputs must be `electricity` or `heat`")]
    BadOutput { tech: String, output: String },
    #[error("accounting needs an Optimal outcome, got {0:?}")]
    NotOptimal(crate::lp::SolveStatus),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Whether a resource is domestically available or imported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResourceClass {
    Endogenous,
    Exogenous,
}

/// One primary energy resource.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Resource {
    pub name: String,
    /// Cost of one MWh of fuel.
    pub c_op: f64,
    /// Energy invested to obtain one MWh of fuel.
    pub e_op: f64,
    /// Emissions per MWh of fuel (tCO2-eq).
    pub gwp_op: f64,
    /// Annual potential in MWh; `None` means unlimited.
    pub potential: Option<f64>,
    pub class: ResourceClass,
    /// Carrier pool the resource feeds. Defaults to the resource's own
    /// name; a resource that directly is a demand carrier (imported
    /// electricity) names that carrier here.
    #[serde(default)]
    pub pool: Option<String>,
}

impl Resource {
    pub fn pool_name(&self) -> &str {
        self.pool.as_deref().unwrap_or(&self.name)
    }
}

/// One conversion technology with annualized construction footprints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Technology {
    pub name: String,
    /// Carrier consumed: a fuel pool or `electricity`.
    pub input: String,
    /// Carrier produced: `electricity` or `heat`.
    pub output: String,
    /// Output per unit of input, in (0, 1].
    pub efficiency: f64,
    /// Annualized investment cost per MW of intake capacity.
    pub c_inv: f64,
    /// Yearly maintenance cost per MW.
    pub c_maint: f64,
    /// Annualized construction energy per MW (MWh/MW/y).
    pub e_constr: f64,
    /// Annualized construction emissions per MW (t/MW/y).
    pub gwp_constr: f64,
    /// Capacity bound in MW; `None` means unlimited.
    pub max_capacity: Option<f64>,
    /// Availability per period, each in [0, 1].
    pub capacity_factor: Vec<f64>,
}

/// Demand for one carrier, per representative period (MWh).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemandProfile {
    pub carrier: String,
    pub per_period: Vec<f64>,
}

/// A weighted representative period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Period {
    pub id: String,
    pub hours: f64,
}

/// Declarative miniature energy system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyModelSpec {
    pub periods: Vec<Period>,
    pub resources: Vec<Resource>,
    pub technologies: Vec<Technology>,
    pub demands: Vec<DemandProfile>,
    /// Emission cap, tCO2-eq per year.
    pub gwp_cap: f64,
}

impl EnergyModelSpec {
    pub fn validate(&self) -> Result<(), EsomError> {
        if self.periods.is_empty() {
            return Err(EsomError::NoPeriods);
        }
        let n_periods = self.periods.len();
        let mut hours = 0.0;
        for p in &self.periods {
            if !(p.hours > 0.0) {
                return Err(EsomError::ZeroWeightPeriod(p.id.clone()));
            }
            hours += p.hours;
        }
        if (hours - HOURS_PER_YEAR).abs() > 1e-6 {
            return Err(EsomError::WeightSum { got: hours, expected: HOURS_PER_YEAR });
        }

        let mut names: Vec<&str> = Vec::new();
        for name in self
            .resources
            .iter()
            .map(|r| r.name.as_str())
            .chain(self.technologies.iter().map(|t| t.name.as_str()))
        {
            if names.contains(&name) {
                return Err(EsomError::DuplicateName(name.into()));
            }
            names.push(name);
        }

        for r in &self.resources {
            for (value, field) in [(r.c_op, "c_op"), (r.e_op, "e_op"), (r.gwp_op, "gwp_op")] {
                if value < 0.0 {
                    return Err(EsomError::NegativeParameter { name: r.name.clone(), field });
                }
            }
            if let Some(p) = r.potential {
                if p < 0.0 {
                    return Err(EsomError::NegativeParameter {
                        name: r.name.clone(),
                        field: "potential",
                    });
                }
            }
        }

        let carriers = self.carriers();
        for t in &self.technologies {
            if !(t.efficiency > 0.0 && t.efficiency <= 1.0) {
                return Err(EsomError::BadEfficiency(t.name.clone()));
            }
            if t.output != "electricity" && t.output != "heat" {
                return Err(EsomError::BadOutput { tech: t.name.clone(), output: t.output.clone() });
            }
            if t.capacity_factor.len() != n_periods {
                return Err(EsomError::CapacityFactorArity {
                    tech: t.name.clone(),
                    got: t.capacity_factor.len(),
                    expected: n_periods,
                });
            }
            if t.capacity_factor.iter().any(|&cf| !(0.0..=1.0).contains(&cf)) {
                return Err(EsomError::BadCapacityFactor(t.name.clone()));
            }
            for (value, field) in [
                (t.c_inv, "c_inv"),
                (t.c_maint, "c_maint"),
                (t.e_constr, "e_constr"),
                (t.gwp_constr, "gwp_constr"),
            ] {
                if value < 0.0 {
                    return Err(EsomError::NegativeParameter { name: t.name.clone(), field });
                }
            }
            if !carriers.contains(&t.input) {
                return Err(EsomError::DanglingInput {
                    tech: t.name.clone(),
                    input: t.input.clone(),
                });
            }
        }

        for d in &self.demands {
            if d.per_period.len() != n_periods {
                return Err(EsomError::DemandArity {
                    carrier: d.carrier.clone(),
                    got: d.per_period.len(),
                    expected: n_periods,
                });
            }
            if d.per_period.iter().any(|&v| v < 0.0) {
                return Err(EsomError::NegativeParameter {
                    name: d.carrier.clone(),
                    field: "demand",
                });
            }
            if !carriers.contains(&d.carrier) {
                return Err(EsomError::DanglingDemand(d.carrier.clone()));
            }
        }
        Ok(())
    }

    /// Every carrier in the model: fuel pools, technology outputs and
    /// technology inputs that are themselves carriers.
    fn carriers(&self) -> Vec<String> {
        let mut carriers: Vec<String> = Vec::new();
        let mut push = |name: &str| {
            if !carriers.iter().any(|c| c == name) {
                carriers.push(name.to_string());
            }
        };
        for r in &self.resources {
            push(r.pool_name());
        }
        for t in &self.technologies {
            push(&t.output);
        }
        carriers
    }
}

/// Compiled model: the two-objective program plus bookkeeping to read
/// solutions back in energy terms.
#[derive(Debug, Clone)]
pub struct CompiledModel {
    pub lp: LinearProgram,
    /// Named selectors over the resource-use variables: `endogenous`,
    /// `exogenous`, and one per resource.
    pub selectors: BTreeMap<String, Selector>,
    pub spec: EnergyModelSpec,
    cap_index: Vec<usize>,
    use_index: Vec<Vec<usize>>,
}

/// Index of the cost objective in a compiled model.
pub const COST_OBJECTIVE: usize = 0;
/// Index of the invested-energy objective in a compiled model.
pub const ENERGY_OBJECTIVE: usize = 1;

/// Compile the declarative model into a linear program with `C_tot` and
/// `E_in` objectives and the selector registry.
pub fn compile(spec: &EnergyModelSpec) -> Result<CompiledModel, EsomError> {
    spec.validate()?;
    let _n_periods = spec.periods.len();
    let mut lp = LinearProgram::new();

    let cap_index: Vec<usize> = spec
        .technologies
        .iter()
        .map(|t| {
            lp.add_variable(match t.max_capacity {
                Some(limit) => Variable::bounded(format!("cap_{}", t.name), 0.0, limit),
                None => Variable::nonneg(format!("cap_{}", t.name)),
            })
        })
        .collect();
    let disp_index: Vec<Vec<usize>> = spec
        .technologies
        .iter()
        .map(|t| {
            spec.periods
                .iter()
                .map(|p| lp.add_variable(Variable::nonneg(format!("disp_{}_{}", t.name, p.id))))
                .collect()
        })
        .collect();
    let use_index: Vec<Vec<usize>> = spec
        .resources
        .iter()
        .map(|r| {
            spec.periods
                .iter()
                .map(|p| lp.add_variable(Variable::nonneg(format!("use_{}_{}", r.name, p.id))))
                .collect()
        })
        .collect();

    // Carrier balances: supply - consumption >= demand.
    for carrier in spec.carriers() {
        for (pi, _) in spec.periods.iter().enumerate() {
            let mut terms: Vec<(usize, f64)> = Vec::new();
            for (ti, t) in spec.technologies.iter().enumerate() {
                if t.output == carrier {
                    terms.push((disp_index[ti][pi], t.efficiency));
                }
                if t.input == carrier {
                    terms.push((disp_index[ti][pi], -1.0));
                }
            }
            for (ri, r) in spec.resources.iter().enumerate() {
                if r.pool_name() == carrier {
                    terms.push((use_index[ri][pi], 1.0));
                }
            }
            let demand = spec
                .demands
                .iter()
                .filter(|d| d.carrier == carrier)
                .map(|d| d.per_period[pi])
                .sum::<f64>();
            if terms.is_empty() {
                continue;
            }
            lp.add_row(LinearConstraint::new(terms, Sense::Ge, demand));
        }
    }

    // Dispatch limited by capacity, availability and period length.
    for (ti, t) in spec.technologies.iter().enumerate() {
        for (pi, p) in spec.periods.iter().enumerate() {
            let cf = t.capacity_factor[pi];
            let mut terms = vec![(disp_index[ti][pi], 1.0)];
            if cf > 0.0 {
                terms.push((cap_index[ti], -cf * p.hours));
            }
            lp.add_row(LinearConstraint::new(terms, Sense::Le, 0.0));
        }
    }

    // Finite annual resource potentials.
    for (ri, r) in spec.resources.iter().enumerate() {
        if let Some(potential) = r.potential {
            let terms: Vec<(usize, f64)> =
                use_index[ri].iter().map(|&v| (v, 1.0)).collect();
            lp.add_row(LinearConstraint::new(terms, Sense::Le, potential));
        }
    }

    // Life-cycle emission cap over construction and operation.
    let mut gwp_terms: Vec<(usize, f64)> = Vec::new();
    for (ti, t) in spec.technologies.iter().enumerate() {
        if t.gwp_constr > 0.0 {
            gwp_terms.push((cap_index[ti], t.gwp_constr));
        }
    }
    for (ri, r) in spec.resources.iter().enumerate() {
        if r.gwp_op > 0.0 {
            for &v in &use_index[ri] {
                gwp_terms.push((v, r.gwp_op));
            }
        }
    }
    if !gwp_terms.is_empty() {
        lp.add_row(LinearConstraint::new(gwp_terms, Sense::Le, spec.gwp_cap));
    }

    // Objectives: annual cost and annual invested energy.
    let n = lp.num_variables();
    let mut cost = vec![0.0; n];
    let mut energy = vec![0.0; n];
    for (ti, t) in spec.technologies.iter().enumerate() {
        cost[cap_index[ti]] = t.c_inv + t.c_maint;
        energy[cap_index[ti]] = t.e_constr;
    }
    for (ri, r) in spec.resources.iter().enumerate() {
        for &v in &use_index[ri] {
            cost[v] = r.c_op;
            energy[v] = r.e_op;
        }
    }
    lp.add_objective(LinearObjective::new("C_tot", cost, 0.0));
    lp.add_objective(LinearObjective::new("E_in", energy, 0.0));

    // Selector registry over the resource-use variables.
    let mut selectors = BTreeMap::new();
    let class_mask = |class: ResourceClass| -> Vec<bool> {
        let mut mask = vec![false; n];
        for (ri, r) in spec.resources.iter().enumerate() {
            if r.class == class {
                for &v in &use_index[ri] {
                    mask[v] = true;
                }
            }
        }
        mask
    };
    if spec.resources.iter().any(|r| r.class == ResourceClass::Endogenous) {
        selectors.insert(
            "endogenous".to_string(),
            Selector::new(class_mask(ResourceClass::Endogenous)).expect("nonempty class"),
        );
    }
    if spec.resources.iter().any(|r| r.class == ResourceClass::Exogenous) {
        selectors.insert(
            "exogenous".to_string(),
            Selector::new(class_mask(ResourceClass::Exogenous)).expect("nonempty class"),
        );
    }
    for (ri, r) in spec.resources.iter().enumerate() {
        let mut mask = vec![false; n];
        for &v in &use_index[ri] {
            mask[v] = true;
        }
        selectors.insert(r.name.clone(), Selector::new(mask).expect("resource has periods"));
    }

    Ok(CompiledModel { lp, selectors, spec: spec.clone(), cap_index, use_index })
}

/// Annual energy drawn from one resource at a solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceUsage {
    pub name: String,
    pub class: ResourceClass,
    pub annual_mwh: f64,
}

/// Energy accounting at an optimal point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub per_resource: Vec<ResourceUsage>,
    pub endogenous_mwh: f64,
    pub exogenous_mwh: f64,
    pub total_cost: f64,
    pub invested_energy: f64,
    pub gwp_used: f64,
    pub gwp_cap: f64,
    pub capacities_mw: Vec<(String, f64)>,
}

impl CompiledModel {
    /// Summarize an optimal outcome in energy terms.
    pub fn report(&self, outcome: &SolveOutcome) -> Result<EnergyReport, EsomError> {
        if !outcome.is_optimal() {
            return Err(EsomError::NotOptimal(outcome.status));
        }
        let x = outcome.expect_point();
        let per_resource: Vec<ResourceUsage> = self
            .spec
            .resources
            .iter()
            .zip(&self.use_index)
            .map(|(r, vars)| ResourceUsage {
                name: r.name.clone(),
                class: r.class,
                annual_mwh: vars.iter().map(|&v| x[v]).sum(),
            })
            .collect();
        let class_total = |class: ResourceClass| {
            per_resource
                .iter()
                .filter(|u| u.class == class)
                .map(|u| u.annual_mwh)
                .sum::<f64>()
        };
        let gwp_used = self
            .spec
            .technologies
            .iter()
            .zip(&self.cap_index)
            .map(|(t, &v)| t.gwp_constr * x[v])
            .sum::<f64>()
            + self
                .spec
                .resources
                .iter()
                .zip(&self.use_index)
                .map(|(r, vars)| r.gwp_op * vars.iter().map(|&v| x[v]).sum::<f64>())
                .sum::<f64>();
        Ok(EnergyReport {
            endogenous_mwh: class_total(ResourceClass::Endogenous),
            exogenous_mwh: class_total(ResourceClass::Exogenous),
            total_cost: evaluate(&self.lp.objectives[COST_OBJECTIVE], x)?,
            invested_energy: evaluate(&self.lp.objectives[ENERGY_OBJECTIVE], x)?,
            gwp_used,
            gwp_cap: self.spec.gwp_cap,
            capacities_mw: self
                .spec
                .technologies
                .iter()
                .zip(&self.cap_index)
                .map(|(t, &v)| (t.name.clone(), x[v]))
                .collect(),
            per_resource,
        })
    }

    /// Annual use of one resource at a point, via its selector.
    pub fn resource_use(&self, name: &str, x: &[f64]) -> Option<f64> {
        self.selectors.get(name).and_then(|s| s.sum(x).ok())
    }
}

/// The bundled four-period default model: two demand carriers, seven
/// resources, seven technologies. Resource cost and invested-energy
/// coefficients are 2035-study values; technology parameters are fixture
/// constants picked for a feasible, clearly non-degenerate toy and carry
/// no external meaning.
pub fn fixture() -> EnergyModelSpec {
    let periods = vec![
        Period { id: "winter_day".into(), hours: 2190.0 },
        Period { id: "winter_night".into(), hours: 2190.0 },
        Period { id: "summer_day".into(), hours: 2190.0 },
        Period { id: "summer_night".into(), hours: 2190.0 },
    ];
    let resources = vec![
        Resource {
            name: "solar".into(),
            c_op: 50.0,
            e_op: 0.147,
            gwp_op: 0.0,
            potential: None,
            class: ResourceClass::Endogenous,
            pool: None,
        },
        Resource {
            name: "wind".into(),
            c_op: 47.0,
            e_op: 0.035,
            gwp_op: 0.0,
            potential: None,
            class: ResourceClass::Endogenous,
            pool: None,
        },
        Resource {
            name: "wood".into(),
            c_op: 32.8,
            e_op: 0.0491,
            gwp_op: 0.01,
            potential: Some(40_000.0),
            class: ResourceClass::Endogenous,
            pool: None,
        },
        Resource {
            name: "gas".into(),
            c_op: 44.3,
            e_op: 0.0608,
            gwp_op: 0.25,
            potential: None,
            class: ResourceClass::Exogenous,
            pool: Some("gas_pool".into()),
        },
        Resource {
            name: "gas_re".into(),
            c_op: 118.0,
            e_op: 0.147,
            gwp_op: 0.02,
            potential: None,
            class: ResourceClass::Exogenous,
            pool: Some("gas_pool".into()),
        },
        Resource {
            name: "h2_re".into(),
            c_op: 119.0,
            e_op: 0.134,
            gwp_op: 0.02,
            potential: None,
            class: ResourceClass::Exogenous,
            pool: Some("h2".into()),
        },
        Resource {
            name: "elec_import".into(),
            c_op: 84.3,
            e_op: 0.123,
            gwp_op: 0.02,
            potential: Some(60_000.0),
            class: ResourceClass::Exogenous,
            pool: Some("electricity".into()),
        },
    ];
    let technologies = vec![
        Technology {
            name: "pv".into(),
            input: "solar".into(),
            output: "electricity".into(),
            efficiency: 1.0,
            c_inv: 12_000.0,
            c_maint: 2_000.0,
            e_constr: 120.0,
            gwp_constr: 1.5,
            max_capacity: Some(45.0),
            capacity_factor: vec![0.10, 0.0, 0.25, 0.0],
        },
        Technology {
            name: "wind_turbine".into(),
            input: "wind".into(),
            output: "electricity".into(),
            efficiency: 1.0,
            c_inv: 25_000.0,
            c_maint: 5_000.0,
            e_constr: 40.0,
            gwp_constr: 1.5,
            max_capacity: Some(10.0),
            capacity_factor: vec![0.35, 0.35, 0.20, 0.20],
        },
        Technology {
            name: "wood_boiler".into(),
            input: "wood".into(),
            output: "heat".into(),
            efficiency: 0.85,
            c_inv: 8_000.0,
            c_maint: 1_500.0,
            e_constr: 30.0,
            gwp_constr: 1.0,
            max_capacity: None,
            capacity_factor: vec![1.0, 1.0, 1.0, 1.0],
        },
        Technology {
            name: "ccgt".into(),
            input: "gas_pool".into(),
            output: "electricity".into(),
            efficiency: 0.55,
            c_inv: 30_000.0,
            c_maint: 6_000.0,
            e_constr: 80.0,
            gwp_constr: 2.0,
            max_capacity: None,
            capacity_factor: vec![1.0, 1.0, 1.0, 1.0],
        },
        Technology {
            name: "gas_boiler".into(),
            input: "gas_pool".into(),
            output: "heat".into(),
            efficiency: 0.90,
            c_inv: 5_000.0,
            c_maint: 1_000.0,
            e_constr: 20.0,
            gwp_constr: 0.8,
            max_capacity: None,
            capacity_factor: vec![1.0, 1.0, 1.0, 1.0],
        },
        Technology {
            name: "electric_heater".into(),
            input: "electricity".into(),
            output: "heat".into(),
            efficiency: 0.95,
            c_inv: 3_000.0,
            c_maint: 500.0,
            e_constr: 15.0,
            gwp_constr: 0.5,
            max_capacity: None,
            capacity_factor: vec![1.0, 1.0, 1.0, 1.0],
        },
        Technology {
            name: "h2_chp".into(),
            input: "h2".into(),
            output: "electricity".into(),
            efficiency: 0.50,
            c_inv: 20_000.0,
            c_maint: 4_000.0,
            e_constr: 50.0,
            gwp_constr: 1.5,
            max_capacity: None,
            capacity_factor: vec![1.0, 1.0, 1.0, 1.0],
        },
    ];
    let demands = vec![
        DemandProfile {
            carrier: "electricity".into(),
            per_period: vec![30_000.0, 26_000.0, 24_000.0, 20_000.0],
        },
        DemandProfile {
            carrier: "heat".into(),
            per_period: vec![45_000.0, 40_000.0, 10_000.0, 5_000.0],
        },
    ];
    EnergyModelSpec { periods, resources, technologies, demands, gwp_cap: 6_000.0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{DenseSimplex, Direction, LpBackend, SolveStatus};

    fn backend() -> DenseSimplex {
        DenseSimplex::default()
    }

    /// One period, one demand, one technology, one resource.
    fn single_turbine_spec() -> EnergyModelSpec {
        EnergyModelSpec {
            periods: vec![Period { id: "year".into(), hours: HOURS_PER_YEAR }],
            resources: vec![Resource {
                name: "gas".into(),
                c_op: 40.0,
                e_op: 0.06,
                gwp_op: 0.2,
                potential: None,
                class: ResourceClass::Exogenous,
                pool: None,
            }],
            technologies: vec![Technology {
                name: "turbine".into(),
                input: "gas".into(),
                output: "electricity".into(),
                efficiency: 0.5,
                c_inv: 100.0,
                c_maint: 10.0,
                e_constr: 5.0,
                gwp_constr: 0.1,
                max_capacity: None,
                capacity_factor: vec![1.0],
            }],
            demands: vec![DemandProfile { carrier: "electricity".into(), per_period: vec![1.0] }],
            gwp_cap: 1_000.0,
        }
    }

    #[test]
    fn forced_balance_uses_two_units_of_fuel() {
        let compiled = compile(&single_turbine_spec()).unwrap();
        let out = backend().solve(&compiled.lp, COST_OBJECTIVE, Direction::Min).unwrap();
        let gas = compiled.resource_use("gas", out.expect_point()).unwrap();
        assert!((gas - 2.0).abs() < 1e-7, "gas use {gas}");
    }

    #[test]
    fn zero_emission_cap_with_only_fossil_supply_is_infeasible() {
        let mut spec = single_turbine_spec();
        spec.gwp_cap = 0.0;
        let compiled = compile(&spec).unwrap();
        let out = backend().solve(&compiled.lp, COST_OBJECTIVE, Direction::Min).unwrap();
        assert_eq!(out.status, SolveStatus::Infeasible);
    }

    #[test]
    fn default_model_solves_both_objectives() {
        let compiled = compile(&fixture()).unwrap();
        let b = backend();
        let cost = b.solve(&compiled.lp, COST_OBJECTIVE, Direction::Min).unwrap();
        let energy = b.solve(&compiled.lp, ENERGY_OBJECTIVE, Direction::Min).unwrap();
        assert!(cost.is_optimal() && energy.is_optimal());

        let report = compiled.report(&cost).unwrap();
        let total = report.endogenous_mwh + report.exogenous_mwh;
        assert!(report.endogenous_mwh / total < 1.0, "imports must appear");
        assert!(report.exogenous_mwh > 0.0);
    }

    #[test]
    fn reported_objectives_match_the_solver_exactly() {
        let compiled = compile(&fixture()).unwrap();
        let b = backend();
        let cost = b.solve(&compiled.lp, COST_OBJECTIVE, Direction::Min).unwrap();
        let energy = b.solve(&compiled.lp, ENERGY_OBJECTIVE, Direction::Min).unwrap();
        assert_eq!(compiled.report(&cost).unwrap().total_cost, cost.expect_value());
        assert_eq!(compiled.report(&energy).unwrap().invested_energy, energy.expect_value());
    }

    #[test]
    fn cross_table_has_optimal_diagonal() {
        let compiled = compile(&fixture()).unwrap();
        let optima =
            crate::pareto::individual_optima(&compiled.lp, &backend()).unwrap();
        for k in 0..2 {
            for i in 0..2 {
                assert!(
                    optima.cross[i][k] >= optima.cross[k][k] - 1e-9,
                    "objective {k} beats its own optimum at optimum {i}"
                );
            }
        }
        // The trade-off is real: each off-diagonal entry is strictly worse.
        assert!(optima.cross[1][0] > optima.cross[0][0] * 1.01);
        assert!(optima.cross[0][1] > optima.cross[1][1] * 1.01);
    }

    #[test]
    fn relative_budget_cap_is_respected_at_the_constrained_solution() {
        use crate::scalarize::{epsilon_constraint, CapMode, EpsilonConstraintSpec};
        let compiled = compile(&fixture()).unwrap();
        let b = backend();
        let cost_opt = b.solve(&compiled.lp, COST_OBJECTIVE, Direction::Min).unwrap();
        let reference = cost_opt.expect_value();
        let spec = EpsilonConstraintSpec {
            free_objective: ENERGY_OBJECTIVE,
            mode: CapMode::Relative {
                epsilons: vec![0.05, 0.0],
                references: vec![reference, 0.0],
            },
        };
        let capped = epsilon_constraint(&compiled.lp, &spec).unwrap();
        let out = b.solve(&capped, 0, Direction::Min).unwrap();
        let cost_at_solution =
            evaluate(&compiled.lp.objectives[COST_OBJECTIVE], out.expect_point()).unwrap();
        let cap = 1.05 * reference;
        assert!(
            cost_at_solution <= cap + 1e-7 * cap,
            "cost {cost_at_solution} exceeds the cap {cap}"
        );
        // A nonzero budget buys a real invested-energy improvement.
        let energy_opt_free =
            b.solve(&compiled.lp, ENERGY_OBJECTIVE, Direction::Min).unwrap().expect_value();
        let energy_at_cost_opt =
            evaluate(&compiled.lp.objectives[ENERGY_OBJECTIVE], cost_opt.expect_point()).unwrap();
        assert!(out.expect_value() < energy_at_cost_opt);
        assert!(out.expect_value() >= energy_opt_free - 1e-9);
    }

    #[test]
    fn report_partitions_resources() {
        let compiled = compile(&fixture()).unwrap();
        let out = backend().solve(&compiled.lp, COST_OBJECTIVE, Direction::Min).unwrap();
        let report = compiled.report(&out).unwrap();
        let sum: f64 = report.per_resource.iter().map(|u| u.annual_mwh).sum();
        assert!((sum - (report.endogenous_mwh + report.exogenous_mwh)).abs() < 1e-6);

        // Subtotals agree with the selector view of the same solution.
        let x = out.expect_point();
        let endo = compiled.selectors["endogenous"].sum(x).unwrap();
        let exo = compiled.selectors["exogenous"].sum(x).unwrap();
        assert!((endo - report.endogenous_mwh).abs() < 1e-9);
        assert!((exo - report.exogenous_mwh).abs() < 1e-9);
    }

    #[test]
    fn selector_partition_covers_all_use_variables() {
        let compiled = compile(&fixture()).unwrap();
        let endo = &compiled.selectors["endogenous"];
        let exo = &compiled.selectors["exogenous"];
        let union: Vec<bool> =
            endo.mask.iter().zip(&exo.mask).map(|(a, b)| *a || *b).collect();
        let expected: Vec<bool> = compiled
            .lp
            .variables
            .iter()
            .map(|v| v.name.starts_with("use_"))
            .collect();
        assert_eq!(union, expected);
        assert!(endo.mask.iter().zip(&exo.mask).all(|(a, b)| !(*a && *b)));
    }

    #[test]
    fn gwp_row_is_honored() {
        let compiled = compile(&fixture()).unwrap();
        let out = backend().solve(&compiled.lp, COST_OBJECTIVE, Direction::Min).unwrap();
        let report = compiled.report(&out).unwrap();
        assert!(report.gwp_used <= report.gwp_cap + 1e-6);
    }

    #[test]
    fn cost_optimum_leaves_no_slack_on_paid_balances() {
        let compiled = compile(&fixture()).unwrap();
        let out = backend().solve(&compiled.lp, COST_OBJECTIVE, Direction::Min).unwrap();
        let x = out.expect_point();
        // Every supplying resource has a positive cost, so paid slack on a
        // demand-carrier balance would contradict optimality.
        for (row_idx, row) in compiled.lp.constraints.iter().enumerate() {
            if row.sense == Sense::Ge && row.rhs > 0.0 {
                let residual = row.residual(x);
                assert!(
                    residual <= 1e-7 * row.rhs.max(1.0),
                    "balance row {row_idx} has paid slack {residual}"
                );
            }
        }
    }

    #[test]
    fn domestic_total_condition_holds_at_the_cost_optimum() {
        use crate::conditions::{holds, ConditionSpec};
        let compiled = compile(&fixture()).unwrap();
        let out = backend().solve(&compiled.lp, COST_OBJECTIVE, Direction::Min).unwrap();
        let x = out.expect_point();
        let selector = compiled.selectors["endogenous"].clone();
        let total = selector.sum(x).unwrap();
        let cond = ConditionSpec::new(selector, total);
        assert!(holds(&cond, x, 1e-7).unwrap());
    }

    #[test]
    fn demand_scaling_scales_operation_linearly() {
        // Variant with no binding capacity or potential limits and a slack
        // emission cap; the optimal solution is then homogeneous in demand.
        let mut spec = fixture();
        for r in &mut spec.resources {
            r.potential = None;
        }
        for t in &mut spec.technologies {
            t.max_capacity = None;
        }
        spec.gwp_cap = 1e9;

        let alpha = 2.5;
        let mut scaled = spec.clone();
        for d in &mut scaled.demands {
            for v in &mut d.per_period {
                *v *= alpha;
            }
        }
        let b = backend();
        let base = compile(&spec).unwrap();
        let big = compile(&scaled).unwrap();
        let out_base = b.solve(&base.lp, COST_OBJECTIVE, Direction::Min).unwrap();
        let out_big = b.solve(&big.lp, COST_OBJECTIVE, Direction::Min).unwrap();
        let rep_base = base.report(&out_base).unwrap();
        let rep_big = big.report(&out_big).unwrap();
        for (u_base, u_big) in rep_base.per_resource.iter().zip(&rep_big.per_resource) {
            assert!(
                (u_big.annual_mwh - alpha * u_base.annual_mwh).abs()
                    <= 1e-6 * (1.0 + u_big.annual_mwh.abs()),
                "{}: {} vs {}",
                u_base.name,
                u_big.annual_mwh,
                alpha * u_base.annual_mwh
            );
        }
    }

    #[test]
    fn validation_catches_dangling_input() {
        let mut spec = single_turbine_spec();
        spec.technologies[0].input = "unobtainium".into();
        assert!(matches!(compile(&spec).unwrap_err(), EsomError::DanglingInput { .. }));
    }

    #[test]
    fn validation_catches_bad_weights() {
        let mut spec = single_turbine_spec();
        spec.periods[0].hours = 100.0;
        assert!(matches!(compile(&spec).unwrap_err(), EsomError::WeightSum { .. }));
        spec.periods[0].hours = 0.0;
        assert!(matches!(compile(&spec).unwrap_err(), EsomError::ZeroWeightPeriod(_)));
    }
}
