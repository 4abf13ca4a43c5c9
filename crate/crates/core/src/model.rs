//! Per-type bundle of the section, its lattice data and the compiled charge table.

use crate::charge::ChargeTable;
use crate::error::Result;
use crate::quiver_core::{coxeter_data, section_quiver, CoxeterData, StarQuiver, WeightData};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone)]
pub struct Lattice {
    pub weights: WeightData,
    pub section: StarQuiver,
    pub cox: CoxeterData,
    pub charges: ChargeTable,
}

impl Lattice {
    pub fn new(weights: &WeightData) -> Result<Self> {
        let section = section_quiver(weights);
        let cox = coxeter_data(&section, weights)?;
        let charges = ChargeTable::new(&cox);
        Ok(Self { weights: weights.clone(), section, cox, charges })
    }

    /// Shared instance per weight type; construction runs once per process.
    pub fn cached(weights: &WeightData) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<WeightData, Arc<Lattice>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(hit) = cache.lock().expect("lattice cache poisoned").get(weights) {
            return Ok(hit.clone());
        }
        let built = Arc::new(Self::new(weights)?);
        Ok(cache.lock().expect("lattice cache poisoned").entry(weights.clone()).or_insert(built).clone())
    }

    pub fn period(&self) -> i64 {
        self.cox.period as i64
    }
}
