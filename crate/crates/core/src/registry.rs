//! Named algorithm variants, selected at runtime.

use std::sync::Arc;

use serde::Serialize;

use crate::certify::{Certifier, Elimination, Modular};
use crate::error::{Error, Result};
use crate::indexcore::{
    ClassSolver, Deg0Method, EliminationSolver, FlatSum, HodgeTrace, InverseDft,
    OrthogonalitySolver, RootCount, SigmaRow,
};
use crate::reptheory::{CharacterDft, ClosedForm, MultiplicityMethod};

struct Entry<T: ?Sized> {
    name: &'static str,
    description: &'static str,
    value: Arc<T>,
}

/// Name → implementation table for one strategy family. The first entry
/// registered is the default.
pub struct Registry<T: ?Sized> {
    family: &'static str,
    entries: Vec<Entry<T>>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(family: &'static str) -> Self {
        Registry {
            family,
            entries: Vec::new(),
        }
    }

    pub fn register(&mut self, name: &'static str, description: &'static str, value: Arc<T>) {
        self.entries.retain(|e| e.name != name);
        self.entries.push(Entry {
            name,
            description,
            value,
        });
    }

    pub fn family(&self) -> &'static str {
        self.family
    }

    pub fn get(&self, name: &str) -> Result<Arc<T>> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.value.clone())
            .ok_or_else(|| Error::UnknownStrategy {
                family: self.family,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn default_name(&self) -> &'static str {
        self.entries.first().map(|e| e.name).unwrap_or("")
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name).collect()
    }

    pub fn describe(&self) -> Vec<(&'static str, &'static str)> {
        self.entries
            .iter()
            .map(|e| (e.name, e.description))
            .collect()
    }
}

macro_rules! register_all {
    ($reg:expr, $($imp:expr),+ $(,)?) => {
        $(
            let v = Arc::new($imp);
            $reg.register(v.name(), v.description(), v);
        )+
    };
}

/// Every strategy family with its built-in implementations.
pub struct Registries {
    pub sigma_row: Registry<dyn SigmaRow>,
    pub deg0: Registry<dyn Deg0Method>,
    pub multiplicity: Registry<dyn MultiplicityMethod>,
    pub certifier: Registry<dyn Certifier>,
    pub solver: Registry<dyn ClassSolver>,
}

impl Registries {
    pub fn builtin() -> Registries {
        let mut sigma_row: Registry<dyn SigmaRow> = Registry::new("sigma-row");
        register_all!(sigma_row, HodgeTrace, FlatSum);
        let mut deg0: Registry<dyn Deg0Method> = Registry::new("deg0");
        register_all!(deg0, InverseDft, RootCount);
        let mut multiplicity: Registry<dyn MultiplicityMethod> = Registry::new("multiplicity");
        register_all!(multiplicity, CharacterDft, ClosedForm);
        let mut certifier: Registry<dyn Certifier> = Registry::new("certifier");
        register_all!(certifier, Modular::default(), Elimination);
        let mut solver: Registry<dyn ClassSolver> = Registry::new("solver");
        register_all!(solver, EliminationSolver, OrthogonalitySolver);
        Registries {
            sigma_row,
            deg0,
            multiplicity,
            certifier,
            solver,
        }
    }

    pub fn defaults(&self) -> StrategyNames {
        StrategyNames {
            sigma_row: self.sigma_row.default_name().into(),
            deg0: self.deg0.default_name().into(),
            multiplicity: self.multiplicity.default_name().into(),
            certifier: self.certifier.default_name().into(),
            solver: self.solver.default_name().into(),
        }
    }

    pub fn resolve(&self, names: &StrategyNames) -> Result<Strategies> {
        Ok(Strategies {
            sigma_row: self.sigma_row.get(&names.sigma_row)?,
            deg0: self.deg0.get(&names.deg0)?,
            multiplicity: self.multiplicity.get(&names.multiplicity)?,
            certifier: self.certifier.get(&names.certifier)?,
            solver: self.solver.get(&names.solver)?,
        })
    }

    /// (family, [(name, description)]) for listing.
    pub fn catalog(&self) -> Vec<(&'static str, Vec<(&'static str, &'static str)>)> {
        vec![
            (self.sigma_row.family(), self.sigma_row.describe()),
            (self.deg0.family(), self.deg0.describe()),
            (self.multiplicity.family(), self.multiplicity.describe()),
            (self.certifier.family(), self.certifier.describe()),
            (self.solver.family(), self.solver.describe()),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrategyNames {
    pub sigma_row: String,
    pub deg0: String,
    pub multiplicity: String,
    pub certifier: String,
    pub solver: String,
}

impl Default for StrategyNames {
    fn default() -> Self {
        Registries::builtin().defaults()
    }
}

/// One chosen implementation per family.
#[derive(Clone)]
pub struct Strategies {
    pub sigma_row: Arc<dyn SigmaRow>,
    pub deg0: Arc<dyn Deg0Method>,
    pub multiplicity: Arc<dyn MultiplicityMethod>,
    pub certifier: Arc<dyn Certifier>,
    pub solver: Arc<dyn ClassSolver>,
}

impl Strategies {
    pub fn names(&self) -> StrategyNames {
        StrategyNames {
            sigma_row: self.sigma_row.name().into(),
            deg0: self.deg0.name().into(),
            multiplicity: self.multiplicity.name().into(),
            certifier: self.certifier.name().into(),
            solver: self.solver.name().into(),
        }
    }
}

impl Default for Strategies {
    fn default() -> Self {
        let r = Registries::builtin();
        r.resolve(&r.defaults()).expect("defaults are registered")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_lookup() {
        let r = Registries::builtin();
        let d = r.defaults();
        assert_eq!(d.sigma_row, "hodge-trace");
        assert_eq!(d.deg0, "inverse-dft");
        assert_eq!(d.multiplicity, "character-dft");
        assert_eq!(d.certifier, "modular");
        assert_eq!(d.solver, "elimination");
        assert_eq!(Strategies::default().names(), d);
        assert_eq!(r.sigma_row.get("flat-sum").unwrap().name(), "flat-sum");
    }

    #[test]
    fn unknown_name() {
        let r = Registries::builtin();
        match r.certifier.get("magic") {
            Err(Error::UnknownStrategy {
                family, available, ..
            }) => {
                assert_eq!(family, "certifier");
                assert_eq!(available, "modular, elimination");
            }
            _ => panic!("expected an unknown-strategy error"),
        }
    }

    #[test]
    fn re_registration_replaces() {
        let mut reg: Registry<dyn SigmaRow> = Registry::new("sigma-row");
        reg.register("x", "first", Arc::new(HodgeTrace));
        reg.register("x", "second", Arc::new(FlatSum));
        assert_eq!(reg.names(), vec!["x"]);
        assert_eq!(reg.get("x").unwrap().name(), "flat-sum");
    }
}
