//! Name-keyed registries for the interchangeable density models and
//! apparatus-state methods, so front ends can select them at runtime.

use crate::apparatus::{ApparatusMethod, ClosedFormMethod, QuadratureMethod};
use crate::density::DensityModel;
use crate::dephasing::dephased_density_analytic;
use crate::error::{Error, Result};
use crate::measurement::{measured_density, MeasurementModel};
use crate::params::ModelParams;
use crate::wavepacket::free_density;

/// An ordered list of named entries.
pub struct Registry<T> {
    kind: &'static str,
    entries: Vec<(&'static str, T)>,
}

impl<T> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry {
            kind,
            entries: Vec::new(),
        }
    }

    /// Adds an entry, replacing any existing one with the same name.
    pub fn register(&mut self, name: &'static str, entry: T) -> &mut Self {
        if let Some(slot) = self.entries.iter_mut().find(|(n, _)| *n == name) {
            slot.1 = entry;
        } else {
            self.entries.push((name, entry));
        }
        self
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, e)| e)
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }
}

pub type DensityFactory = fn(&ModelParams) -> Result<Box<dyn DensityModel>>;

/// `free` (ignores σ, γ), `measured` (uses σ) and `dephased` (uses γ).
pub fn density_registry() -> Registry<DensityFactory> {
    let mut r: Registry<DensityFactory> = Registry::new("density model");
    r.register("free", |p| Ok(Box::new(free_density(p.l, p.t)?)))
        .register("measured", |p| {
            Ok(Box::new(measured_density(
                &MeasurementModel::new(p.sigma, p.l)?,
                p.t,
            )?))
        })
        .register("dephased", |p| {
            Ok(Box::new(dephased_density_analytic(p.l, p.gamma, p.t)?))
        });
    r
}

/// Builds an apparatus method from a quadrature tolerance.
pub type ApparatusFactory = fn(f64) -> Box<dyn ApparatusMethod>;

/// `exact` (adaptive quadrature) and `approx` (closed form in β).
pub fn apparatus_registry() -> Registry<ApparatusFactory> {
    let mut r: Registry<ApparatusFactory> = Registry::new("apparatus method");
    r.register("exact", |tol| Box::new(QuadratureMethod { tol }))
        .register("approx", |_| Box::new(ClosedFormMethod));
    r
}
