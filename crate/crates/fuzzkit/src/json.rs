//! JSON encodings of the domain types. Field names here are the wire
//! contract; see the schema section of the README.

use crate::error::{FuzzyError, Result};
use crate::hedge::Kernel;
use crate::inference::{FuzzyRule, RuleInput};
use crate::relation::FuzzyRelation;
use crate::set::FuzzySet;
use crate::universe::{Point, Universe};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointDto {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coord: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UniverseDto {
    pub label: String,
    pub points: Vec<PointDto>,
}

impl UniverseDto {
    pub fn from_universe(u: &Universe) -> UniverseDto {
        UniverseDto {
            label: u.label().to_string(),
            points: u
                .points()
                .iter()
                .map(|p| PointDto {
                    label: p.label.clone(),
                    coord: p.coord,
                })
                .collect(),
        }
    }

    pub fn to_universe(&self) -> Result<Arc<Universe>> {
        Universe::new(
            self.label.clone(),
            self.points
                .iter()
                .map(|p| Point {
                    label: p.label.clone(),
                    coord: p.coord,
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FuzzySetDto {
    pub universe: UniverseDto,
    pub grades: Vec<f64>,
}

impl FuzzySetDto {
    pub fn from_set(s: &FuzzySet) -> FuzzySetDto {
        FuzzySetDto {
            universe: UniverseDto::from_universe(s.universe()),
            grades: s.values(),
        }
    }

    pub fn to_set(&self) -> Result<FuzzySet> {
        FuzzySet::from_values(self.universe.to_universe()?, &self.grades)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KernelDto {
    pub universe: UniverseDto,
    /// Point label → grades of the image set over the same universe.
    pub images: HashMap<String, Vec<f64>>,
}

impl KernelDto {
    pub fn to_kernel(&self) -> Result<Kernel> {
        let universe = self.universe.to_universe()?;
        let mut kernel = Kernel::new(Arc::clone(&universe));
        for (label, grades) in &self.images {
            kernel.set_image(label, FuzzySet::from_values(Arc::clone(&universe), grades)?)?;
        }
        Ok(kernel)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationDto {
    pub rows: UniverseDto,
    pub cols: UniverseDto,
    pub grades: Vec<Vec<f64>>,
}

impl RelationDto {
    pub fn from_relation(r: &FuzzyRelation) -> RelationDto {
        RelationDto {
            rows: UniverseDto::from_universe(r.row_universe()),
            cols: UniverseDto::from_universe(r.col_universe()),
            grades: r.values(),
        }
    }

    pub fn to_relation(&self) -> Result<FuzzyRelation> {
        FuzzyRelation::from_rows(self.rows.to_universe()?, self.cols.to_universe()?, &self.grades)
    }
}

/// gmp/gmt/ite case file: the rule sets plus the observed premise.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InferCaseDto {
    pub a: FuzzySetDto,
    pub b: FuzzySetDto,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<FuzzySetDto>,
    /// A' for gmp/ite, B' for gmt.
    pub premise: FuzzySetDto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlotDto {
    pub name: String,
    pub universe: UniverseDto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RuleDto {
    /// slot name → antecedent grades over the slot universe.
    pub antecedents: HashMap<String, Vec<f64>>,
    pub consequent: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RuleInputDto {
    Singleton { singleton: f64 },
    Set { grades: Vec<f64> },
}

/// A multi-rule inference case: slot declarations, the rule base, the output
/// universe, and per-slot inputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RuleBaseDto {
    pub slots: Vec<SlotDto>,
    pub output: UniverseDto,
    pub rules: Vec<RuleDto>,
    pub inputs: HashMap<String, RuleInputDto>,
}

impl RuleBaseDto {
    pub fn to_rules(&self) -> Result<(Vec<FuzzyRule>, HashMap<String, RuleInput>)> {
        let mut slot_universes: HashMap<&str, Arc<Universe>> = HashMap::new();
        for slot in &self.slots {
            slot_universes.insert(slot.name.as_str(), slot.universe.to_universe()?);
        }
        let output = self.output.to_universe()?;
        let mut rules = Vec::with_capacity(self.rules.len());
        for rule in &self.rules {
            let mut antecedents = Vec::new();
            for (slot, grades) in &rule.antecedents {
                let u = slot_universes
                    .get(slot.as_str())
                    .ok_or_else(|| FuzzyError::MissingInput(slot.clone()))?;
                antecedents.push((slot.clone(), FuzzySet::from_values(Arc::clone(u), grades)?));
            }
            antecedents.sort_by(|a, b| a.0.cmp(&b.0));
            rules.push(FuzzyRule::new(
                antecedents,
                FuzzySet::from_values(Arc::clone(&output), &rule.consequent)?,
            )?);
        }
        let mut inputs = HashMap::new();
        for (slot, input) in &self.inputs {
            let u = slot_universes
                .get(slot.as_str())
                .ok_or_else(|| FuzzyError::MissingInput(slot.clone()))?;
            let value = match input {
                RuleInputDto::Singleton { singleton } => RuleInput::Singleton(*singleton),
                RuleInputDto::Set { grades } => {
                    RuleInput::Set(FuzzySet::from_values(Arc::clone(u), grades)?)
                }
            };
            inputs.insert(slot.clone(), value);
        }
        Ok((rules, inputs))
    }
}
