//! Solution catalog: stable ids, per-case parameters with defaults, and the
//! glue that turns a case into discretized fields or a benchmark setup.

use std::collections::BTreeMap;

use crate::channel::{ChannelSpec, FrictionLaw};
use crate::diagnostics::{critical_height, friction_slope, FlowRegime};
use crate::error::{Error, Result};
use crate::gvf::{integrate_backwater, GvfProblem};
use crate::harness::BoundarySide;
use crate::num::Real;
use crate::profile::{Grid1, Grid2, SolutionField2, SolutionProfile};
use crate::steady::{
    bump_flow, lake_at_rest, macdonald_topography, regime_sequence, BumpRegime, ConstantDepth,
    DepthAnsatz, GaussianBump, GaussianDepth, TanhDepth,
};
use crate::transient::{
    ritter, stoker_at, DamBreakSetup, Dimensionality, DresslerWave, StokerWave, ThackerSetup,
    ThackerVariant,
};

/// One tunable parameter of a catalog case.
#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub key: &'static str,
    pub default: f64,
    pub help: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseDim {
    OneD,
    TwoD,
}

/// Catalog entry metadata.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub dim: CaseDim,
    pub regime: &'static str,
    pub summary: &'static str,
    /// Default snapshot instant for transients; `None` for steady cases.
    pub reference_time: Option<f64>,
    pub params: &'static [ParamSpec],
}

impl CatalogEntry {
    /// Merges defaults with overrides; unknown keys are errors.
    pub fn resolve(&self, overrides: &[(String, f64)]) -> Result<Params> {
        let mut map = BTreeMap::new();
        for p in self.params {
            map.insert(p.key.to_string(), p.default);
        }
        for (key, value) in overrides {
            if !map.contains_key(key.as_str()) {
                return Err(Error::InvalidParam {
                    key: key.clone(),
                    reason: format!(
                        "case `{}` accepts only: {}",
                        self.id,
                        self.params
                            .iter()
                            .map(|p| p.key)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                });
            }
            if !value.is_finite() {
                return Err(Error::InvalidParam {
                    key: key.clone(),
                    reason: "value must be finite".into(),
                });
            }
            map.insert(key.clone(), *value);
        }
        Ok(Params(map))
    }
}

/// Resolved parameter set of a case.
#[derive(Debug, Clone)]
pub struct Params(BTreeMap<String, f64>);

impl Params {
    fn get(&self, key: &str) -> f64 {
        self.0[key]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

/// Discretized output of a catalog case.
#[derive(Debug, Clone)]
pub enum Generated<R> {
    OneD(SolutionProfile<R>),
    TwoD(SolutionField2<R>),
}

/// Generated solution together with the channel it lives in.
#[derive(Debug, Clone)]
pub struct Built<R> {
    pub spec: ChannelSpec<R>,
    pub solution: Generated<R>,
    /// Case-specific metadata lines (shock positions, masked intervals).
    pub notes: Vec<String>,
}

macro_rules! p {
    ($key:literal, $default:expr, $help:literal) => {
        ParamSpec { key: $key, default: $default, help: $help }
    };
}

const GVF_PARAMS: &[ParamSpec] = &[
    p!("n", 0.03, "Manning roughness"),
    p!("q0", 1.0, "unit discharge [m^2/s]"),
    p!("boundary_depth", f64::NAN, "depth at the control section (per-type default)"),
    p!("reach", f64::NAN, "reach length [m] (per-type default)"),
];

static ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        id: "steady/lake-at-rest",
        dim: CaseDim::OneD,
        regime: "at rest, wet/dry",
        summary: "still water over a dyadic-quantized bump, optionally emerged",
        reference_time: None,
        params: &[
            p!("eta", 1.0, "free-surface elevation [m]"),
            p!("bump_height", 0.8, "topography bump height [m]"),
            p!("length", 25.0, "domain length [m]"),
        ],
    },
    CatalogEntry {
        id: "steady/macdonald/uniform",
        dim: CaseDim::OneD,
        regime: "subcritical",
        summary: "uniform Manning flow: constant depth on its normal slope",
        reference_time: None,
        params: &[
            p!("h0", 0.9, "uniform depth [m]"),
            p!("q0", 1.0, "unit discharge [m^2/s]"),
            p!("n", 0.03, "Manning roughness"),
            p!("length", 100.0, "domain length [m]"),
        ],
    },
    CatalogEntry {
        id: "steady/macdonald/subcritical",
        dim: CaseDim::OneD,
        regime: "subcritical",
        summary: "manufactured Gaussian depth hump with Manning friction",
        reference_time: None,
        params: &[
            p!("h0", 0.8, "base depth [m]"),
            p!("amplitude", 0.3, "relative hump amplitude"),
            p!("width", 10.0, "hump width [m]"),
            p!("q0", 1.5, "unit discharge [m^2/s]"),
            p!("n", 0.03, "Manning roughness"),
            p!("length", 100.0, "domain length [m]"),
        ],
    },
    CatalogEntry {
        id: "steady/macdonald/subcritical-dw",
        dim: CaseDim::OneD,
        regime: "subcritical",
        summary: "manufactured Gaussian depth hump with Darcy-Weisbach friction",
        reference_time: None,
        params: &[
            p!("h0", 0.8, "base depth [m]"),
            p!("amplitude", 0.25, "relative hump amplitude"),
            p!("width", 10.0, "hump width [m]"),
            p!("q0", 1.2, "unit discharge [m^2/s]"),
            p!("f", 0.093, "Darcy-Weisbach coefficient"),
            p!("length", 100.0, "domain length [m]"),
        ],
    },
    CatalogEntry {
        id: "steady/macdonald/supercritical",
        dim: CaseDim::OneD,
        regime: "supercritical",
        summary: "manufactured tanh depth transition on a steep manufactured bed",
        reference_time: None,
        params: &[
            p!("h0", 0.45, "upstream depth [m]"),
            p!("dh", 0.1, "depth increase across the transition [m]"),
            p!("width", 8.0, "transition width [m]"),
            p!("q0", 2.5, "unit discharge [m^2/s]"),
            p!("n", 0.03, "Manning roughness"),
            p!("length", 100.0, "domain length [m]"),
        ],
    },
    CatalogEntry {
        id: "steady/macdonald/rain",
        dim: CaseDim::OneD,
        regime: "subcritical, rain-forced",
        summary: "manufactured depth with uniform rain: q(x) = R x + q0",
        reference_time: None,
        params: &[
            p!("h0", 0.9, "base depth [m]"),
            p!("amplitude", 0.2, "relative hump amplitude"),
            p!("width", 12.0, "hump width [m]"),
            p!("q0", 1.0, "inflow unit discharge [m^2/s]"),
            p!("rain", 0.001, "rain intensity [m/s]"),
            p!("n", 0.03, "Manning roughness"),
            p!("length", 100.0, "domain length [m]"),
        ],
    },
    CatalogEntry {
        id: "steady/macdonald/viscous",
        dim: CaseDim::OneD,
        regime: "subcritical, viscous",
        summary: "manufactured depth including the diffusive momentum term",
        reference_time: None,
        params: &[
            p!("h0", 0.8, "base depth [m]"),
            p!("amplitude", 0.25, "relative hump amplitude"),
            p!("width", 12.0, "hump width [m]"),
            p!("q0", 1.2, "unit discharge [m^2/s]"),
            p!("n", 0.03, "Manning roughness"),
            p!("viscosity", 0.01, "kinematic viscosity [m^2/s]"),
            p!("length", 100.0, "domain length [m]"),
        ],
    },
    CatalogEntry {
        id: "steady/bump/subcritical",
        dim: CaseDim::OneD,
        regime: "subcritical",
        summary: "frictionless flow over a Gaussian bump, subcritical throughout",
        reference_time: None,
        params: &[
            p!("q0", 1.0, "unit discharge [m^2/s]"),
            p!("h_out", 1.2, "outlet depth [m]"),
            p!("bump_height", 0.2, "bump height [m]"),
            p!("bump_width", 3.0, "bump width [m]"),
            p!("length", 25.0, "domain length [m]"),
        ],
    },
    CatalogEntry {
        id: "steady/bump/transcritical",
        dim: CaseDim::OneD,
        regime: "transcritical, no shock",
        summary: "frictionless bump flow passing through critical depth at the crest",
        reference_time: None,
        params: &[
            p!("q0", 1.0, "unit discharge [m^2/s]"),
            p!("bump_height", 0.2, "bump height [m]"),
            p!("bump_width", 3.0, "bump width [m]"),
            p!("length", 25.0, "domain length [m]"),
        ],
    },
    CatalogEntry {
        id: "steady/bump/transcritical-shock",
        dim: CaseDim::OneD,
        regime: "transcritical with shock",
        summary: "frictionless bump flow with a stationary hydraulic jump",
        reference_time: None,
        params: &[
            p!("q0", 0.18, "unit discharge [m^2/s]"),
            p!("h_out", 0.33, "outlet depth [m]"),
            p!("bump_height", 0.2, "bump height [m]"),
            p!("bump_width", 3.0, "bump width [m]"),
            p!("length", 25.0, "domain length [m]"),
        ],
    },
    CatalogEntry {
        id: "gvf/M1",
        dim: CaseDim::OneD,
        regime: "subcritical",
        summary: "backwater curve above normal depth on a mild slope",
        reference_time: None,
        params: GVF_PARAMS,
    },
    CatalogEntry {
        id: "gvf/M2",
        dim: CaseDim::OneD,
        regime: "subcritical",
        summary: "drawdown between critical and normal depth on a mild slope",
        reference_time: None,
        params: GVF_PARAMS,
    },
    CatalogEntry {
        id: "gvf/M3",
        dim: CaseDim::OneD,
        regime: "supercritical",
        summary: "supercritical profile rising toward critical depth on a mild slope",
        reference_time: None,
        params: GVF_PARAMS,
    },
    CatalogEntry {
        id: "gvf/S1",
        dim: CaseDim::OneD,
        regime: "subcritical",
        summary: "backwater above both lines on a steep slope",
        reference_time: None,
        params: GVF_PARAMS,
    },
    CatalogEntry {
        id: "gvf/S2",
        dim: CaseDim::OneD,
        regime: "supercritical",
        summary: "drawdown between critical and normal depth on a steep slope",
        reference_time: None,
        params: GVF_PARAMS,
    },
    CatalogEntry {
        id: "gvf/S3",
        dim: CaseDim::OneD,
        regime: "supercritical",
        summary: "profile rising toward normal depth on a steep slope",
        reference_time: None,
        params: GVF_PARAMS,
    },
    CatalogEntry {
        id: "gvf/C1",
        dim: CaseDim::OneD,
        regime: "subcritical",
        summary: "backwater above the coincident lines on a critical slope",
        reference_time: None,
        params: GVF_PARAMS,
    },
    CatalogEntry {
        id: "gvf/C2",
        dim: CaseDim::OneD,
        regime: "critical",
        summary: "uniform flow at critical depth on a critical slope",
        reference_time: None,
        params: GVF_PARAMS,
    },
    CatalogEntry {
        id: "gvf/C3",
        dim: CaseDim::OneD,
        regime: "supercritical",
        summary: "profile rising toward the coincident lines on a critical slope",
        reference_time: None,
        params: GVF_PARAMS,
    },
    CatalogEntry {
        id: "gvf/H2",
        dim: CaseDim::OneD,
        regime: "subcritical",
        summary: "drawdown toward critical depth on a horizontal bed",
        reference_time: None,
        params: GVF_PARAMS,
    },
    CatalogEntry {
        id: "gvf/H3",
        dim: CaseDim::OneD,
        regime: "supercritical",
        summary: "supercritical profile rising on a horizontal bed",
        reference_time: None,
        params: GVF_PARAMS,
    },
    CatalogEntry {
        id: "gvf/A2",
        dim: CaseDim::OneD,
        regime: "subcritical",
        summary: "drawdown toward critical depth on an adverse slope",
        reference_time: None,
        params: GVF_PARAMS,
    },
    CatalogEntry {
        id: "gvf/A3",
        dim: CaseDim::OneD,
        regime: "supercritical",
        summary: "supercritical profile rising on an adverse slope",
        reference_time: None,
        params: GVF_PARAMS,
    },
    CatalogEntry {
        id: "transient/dambreak/ritter",
        dim: CaseDim::OneD,
        regime: "transcritical, moving wet/dry front",
        summary: "dry-bed dam break: rarefaction fan onto a dry channel",
        reference_time: Some(0.6),
        params: &[
            p!("h_left", 1.0, "reservoir depth [m]"),
            p!("x0", 5.0, "dam position [m]"),
            p!("length", 10.0, "domain length [m]"),
        ],
    },
    CatalogEntry {
        id: "transient/dambreak/stoker",
        dim: CaseDim::OneD,
        regime: "transcritical, moving shock",
        summary: "wet-bed dam break: fan, intermediate plateau and shock",
        reference_time: Some(0.6),
        params: &[
            p!("h_left", 1.0, "reservoir depth [m]"),
            p!("h_right", 0.1, "tailwater depth [m]"),
            p!("x0", 5.0, "dam position [m]"),
            p!("length", 10.0, "domain length [m]"),
        ],
    },
    CatalogEntry {
        id: "transient/dambreak/dressler",
        dim: CaseDim::OneD,
        regime: "transcritical, friction-corrected front",
        summary: "dry-bed dam break with Chezy resistance corrections",
        reference_time: Some(0.6),
        params: &[
            p!("h_left", 1.0, "reservoir depth [m]"),
            p!("chezy", 40.0, "Chezy coefficient [m^(1/2)/s]"),
            p!("x0", 5.0, "dam position [m]"),
            p!("length", 10.0, "domain length [m]"),
        ],
    },
    CatalogEntry {
        id: "transient/thacker/planar-1d",
        dim: CaseDim::OneD,
        regime: "oscillating, moving shorelines",
        summary: "planar surface sloshing in a parabolic basin",
        reference_time: Some(3.364),
        params: &[
            p!("a", 3.0, "basin half-length [m]"),
            p!("h0", 0.1, "reference depth [m]"),
            p!("amplitude", 0.05, "velocity amplitude [m/s]"),
            p!("domain_half", 4.0, "computational half-extent [m]"),
        ],
    },
    CatalogEntry {
        id: "transient/thacker/planar-2d",
        dim: CaseDim::TwoD,
        regime: "rotating, moving shorelines",
        summary: "planar surface rotating in a paraboloid basin",
        reference_time: Some(2.243),
        params: &[
            p!("a", 2.0, "basin half-length [m]"),
            p!("h0", 0.1, "reference depth [m]"),
            p!("amplitude", 0.1, "velocity amplitude [m/s]"),
            p!("domain_half", 3.0, "computational half-extent [m]"),
        ],
    },
    CatalogEntry {
        id: "transient/thacker/curved-2d",
        dim: CaseDim::TwoD,
        regime: "pulsating, moving shorelines",
        summary: "radially symmetric curved surface in a paraboloid basin",
        reference_time: Some(0.561),
        params: &[
            p!("a", 1.0, "basin half-length [m]"),
            p!("h0", 0.1, "reference depth [m]"),
            p!("amplitude", 0.15, "dimensionless amplitude in (0,1)"),
            p!("domain_half", 1.3, "computational half-extent [m]"),
        ],
    },
];

/// All registered cases.
pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn find(id: &str) -> Result<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownCase(id.to_string()))
}

/// Depth ansatz families the catalog can instantiate.
enum AnyDepth<R> {
    Constant(ConstantDepth<R>),
    Gaussian(GaussianDepth<R>),
    Tanh(TanhDepth<R>),
}

impl<R: Real> DepthAnsatz<R> for AnyDepth<R> {
    fn depth(&self, x: R) -> R {
        match self {
            AnyDepth::Constant(a) => a.depth(x),
            AnyDepth::Gaussian(a) => a.depth(x),
            AnyDepth::Tanh(a) => a.depth(x),
        }
    }
    fn depth_prime(&self, x: R) -> R {
        match self {
            AnyDepth::Constant(a) => a.depth_prime(x),
            AnyDepth::Gaussian(a) => a.depth_prime(x),
            AnyDepth::Tanh(a) => a.depth_prime(x),
        }
    }
    fn depth_second(&self, x: R) -> R {
        match self {
            AnyDepth::Constant(a) => a.depth_second(x),
            AnyDepth::Gaussian(a) => a.depth_second(x),
            AnyDepth::Tanh(a) => a.depth_second(x),
        }
    }
}

/// Snaps a value to the nearest multiple of 2^-20 so sums like h + z stay
/// exactly representable.
fn quantize_dyadic<R: Real>(value: R) -> R {
    let scale = R::of(1_048_576.0);
    (value * scale).round() / scale
}

struct MacdonaldCase<R> {
    spec: ChannelSpec<R>,
    q0: R,
    ansatz: AnyDepth<R>,
    expect: &'static [FlowRegime],
}

fn macdonald_case<R: Real>(id: &str, params: &Params) -> Result<MacdonaldCase<R>> {
    let length = R::of(params.get("length"));
    let q0 = R::of(params.get("q0"));
    let (spec, ansatz, expect): (ChannelSpec<R>, AnyDepth<R>, &'static [FlowRegime]) = match id {
        "steady/macdonald/uniform" => (
            ChannelSpec::new(length).with_friction(FrictionLaw::Manning(R::of(params.get("n")))),
            AnyDepth::Constant(ConstantDepth(R::of(params.get("h0")))),
            &[FlowRegime::Subcritical],
        ),
        "steady/macdonald/subcritical" => (
            ChannelSpec::new(length).with_friction(FrictionLaw::Manning(R::of(params.get("n")))),
            AnyDepth::Gaussian(GaussianDepth {
                h0: R::of(params.get("h0")),
                amplitude: R::of(params.get("amplitude")),
                center: length.half(),
                width: R::of(params.get("width")),
            }),
            &[FlowRegime::Subcritical],
        ),
        "steady/macdonald/subcritical-dw" => (
            ChannelSpec::new(length)
                .with_friction(FrictionLaw::DarcyWeisbach(R::of(params.get("f")))),
            AnyDepth::Gaussian(GaussianDepth {
                h0: R::of(params.get("h0")),
                amplitude: R::of(params.get("amplitude")),
                center: length.half(),
                width: R::of(params.get("width")),
            }),
            &[FlowRegime::Subcritical],
        ),
        "steady/macdonald/supercritical" => (
            ChannelSpec::new(length).with_friction(FrictionLaw::Manning(R::of(params.get("n")))),
            AnyDepth::Tanh(TanhDepth {
                h0: R::of(params.get("h0")),
                dh: R::of(params.get("dh")),
                center: length.half(),
                width: R::of(params.get("width")),
            }),
            &[FlowRegime::Supercritical],
        ),
        "steady/macdonald/rain" => (
            ChannelSpec::new(length)
                .with_friction(FrictionLaw::Manning(R::of(params.get("n"))))
                .with_rain(R::of(params.get("rain"))),
            AnyDepth::Gaussian(GaussianDepth {
                h0: R::of(params.get("h0")),
                amplitude: R::of(params.get("amplitude")),
                center: length.half(),
                width: R::of(params.get("width")),
            }),
            &[FlowRegime::Subcritical],
        ),
        "steady/macdonald/viscous" => (
            ChannelSpec::new(length)
                .with_friction(FrictionLaw::Manning(R::of(params.get("n"))))
                .with_viscosity(R::of(params.get("viscosity"))),
            AnyDepth::Gaussian(GaussianDepth {
                h0: R::of(params.get("h0")),
                amplitude: R::of(params.get("amplitude")),
                center: length.half(),
                width: R::of(params.get("width")),
            }),
            &[FlowRegime::Subcritical],
        ),
        _ => return Err(Error::UnknownCase(id.to_string())),
    };
    Ok(MacdonaldCase { spec, q0, ansatz, expect })
}

fn check_regimes<R: Real>(
    id: &str,
    profile: &SolutionProfile<R>,
    spec: &ChannelSpec<R>,
    expect: &[FlowRegime],
) -> Result<()> {
    let got = regime_sequence(profile, spec);
    if got != expect {
        return Err(Error::InvalidConfig(format!(
            "case `{id}` declares regimes {expect:?} but generated {got:?}"
        )));
    }
    Ok(())
}

/// Per-type defaults for the backwater cases with Manning n = 0.03 and
/// q0 = 1: `(s0, boundary_depth, reach_length)`. Reaches that run into the
/// critical-depth singularity are kept short enough to stay clear of it.
fn gvf_defaults(type_label: &str, n: f64, q0: f64) -> (f64, f64, f64) {
    let g = 9.81;
    let hc = critical_height(q0, g);
    let critical_slope =
        friction_slope(&FrictionLaw::Manning(n), hc, q0, g, 1e-12).unwrap_or(0.0);
    match type_label {
        "M1" => (0.001, 1.5, 1000.0),
        "M2" => (0.001, 0.7, 500.0),
        "M3" => (0.001, 0.3, 4.0),
        "S1" => (0.05, 0.8, 3.0),
        "S2" => (0.05, 0.45, 20.0),
        "S3" => (0.05, 0.2, 20.0),
        "C1" => (critical_slope, 0.8, 15.0),
        "C2" => (critical_slope, hc, 100.0),
        "C3" => (critical_slope, 0.25, 6.0),
        "H2" => (0.0, 0.8, 300.0),
        "H3" => (0.0, 0.25, 5.0),
        "A2" => (-0.01, 0.8, 50.0),
        "A3" => (-0.01, 0.25, 4.0),
        _ => (f64::NAN, f64::NAN, f64::NAN),
    }
}

fn gvf_problem<R: Real>(id: &str, params: &Params, n_cells: usize) -> Result<GvfProblem<R>> {
    let type_label = id.trim_start_matches("gvf/");
    let n = params.get("n");
    let q0 = params.get("q0");
    let (s0, bd_default, reach_default) = gvf_defaults(type_label, n, q0);
    if s0.is_nan() {
        return Err(Error::UnknownCase(id.to_string()));
    }
    let bd = if params.get("boundary_depth").is_nan() {
        bd_default
    } else {
        params.get("boundary_depth")
    };
    let reach = if params.get("reach").is_nan() { reach_default } else { params.get("reach") };
    Ok(GvfProblem {
        spec: ChannelSpec::new(R::of(reach)).with_friction(FrictionLaw::Manning(R::of(n))),
        q0: R::of(q0),
        s0: R::of(s0),
        boundary_depth: R::of(bd),
        reach_length: R::of(reach),
        n_cells,
    })
}

fn dam_break_setup<R: Real>(id: &str, params: &Params) -> Result<DamBreakSetup<R>> {
    let mut setup = DamBreakSetup::frictionless(
        R::of(params.get("h_left")),
        if id.ends_with("stoker") { R::of(params.get("h_right")) } else { R::zero() },
        R::of(params.get("x0")),
        R::of(params.get("length")),
    );
    if id.ends_with("dressler") {
        setup.friction = FrictionLaw::Chezy(R::of(params.get("chezy")));
    }
    setup.validate()?;
    Ok(setup)
}

fn thacker_setup<R: Real>(id: &str, params: &Params) -> Result<ThackerSetup<R>> {
    let (variant, dim) = match id {
        "transient/thacker/planar-1d" => (ThackerVariant::PlanarSurface, Dimensionality::OneD),
        "transient/thacker/planar-2d" => (ThackerVariant::PlanarSurface, Dimensionality::TwoD),
        "transient/thacker/curved-2d" => (ThackerVariant::CurvedSurface, Dimensionality::TwoD),
        _ => return Err(Error::UnknownCase(id.to_string())),
    };
    ThackerSetup::new(
        R::of(params.get("a")),
        R::of(params.get("h0")),
        variant,
        dim,
        R::of(params.get("amplitude")),
        R::of(9.81),
        R::of(params.get("domain_half")),
    )
}

/// Generates the discretized solution of a case.
///
/// `cells` is the x resolution; `cells_y` applies to two-dimensional cases
/// (default: same as `cells`); `time` overrides the entry's reference time
/// for transients and is rejected for steady cases.
pub fn generate<R: Real>(
    id: &str,
    params: &Params,
    cells: usize,
    cells_y: Option<usize>,
    time: Option<f64>,
) -> Result<Built<R>> {
    let entry = find(id)?;
    if entry.reference_time.is_none() && time.is_some() {
        return Err(Error::InvalidConfig(format!("case `{id}` is steady; --time does not apply")));
    }
    if entry.dim == CaseDim::OneD && cells_y.is_some() {
        return Err(Error::InvalidConfig(format!(
            "case `{id}` is one-dimensional; --cells-y does not apply"
        )));
    }
    if cells == 0 {
        return Err(Error::InvalidConfig("need at least one cell".into()));
    }
    let t_eval = time.or(entry.reference_time);

    match id {
        "steady/lake-at-rest" => {
            let length = R::of(params.get("length"));
            let eta = R::of(params.get("eta"));
            let height = R::of(params.get("bump_height"));
            let grid = Grid1::new(R::zero(), length, cells)?;
            let center = length.half();
            let width = length / R::of(10.0);
            let z: Vec<R> = grid
                .centers()
                .map(|x| {
                    let s = (x - center) / width;
                    quantize_dyadic(height * (-s * s).exp())
                })
                .collect();
            let profile = lake_at_rest(grid, z, eta)?;
            Ok(Built {
                spec: ChannelSpec::new(length),
                solution: Generated::OneD(profile),
                notes: Vec::new(),
            })
        }
        _ if id.starts_with("steady/macdonald/") => {
            let case = macdonald_case::<R>(id, params)?;
            let profile = macdonald_topography(&case.spec, case.q0, &case.ansatz, cells)?;
            check_regimes(id, &profile, &case.spec, case.expect)?;
            Ok(Built { spec: case.spec, solution: Generated::OneD(profile), notes: Vec::new() })
        }
        _ if id.starts_with("steady/bump/") => {
            let length = R::of(params.get("length"));
            let spec = ChannelSpec::new(length);
            let topo = GaussianBump {
                height: R::of(params.get("bump_height")),
                center: length.half(),
                width: R::of(params.get("bump_width")),
            };
            let q0 = R::of(params.get("q0"));
            let regime = match id {
                "steady/bump/subcritical" => {
                    BumpRegime::Subcritical { downstream_depth: R::of(params.get("h_out")) }
                }
                "steady/bump/transcritical" => BumpRegime::TranscriticalNoShock,
                "steady/bump/transcritical-shock" => {
                    BumpRegime::TranscriticalShock { downstream_depth: R::of(params.get("h_out")) }
                }
                _ => return Err(Error::UnknownCase(id.to_string())),
            };
            let flow = bump_flow(&spec, q0, &topo, regime, cells)?;
            let expect: &[FlowRegime] = match id {
                "steady/bump/subcritical" => &[FlowRegime::Subcritical],
                "steady/bump/transcritical" => {
                    &[FlowRegime::Subcritical, FlowRegime::Supercritical]
                }
                _ => &[
                    FlowRegime::Subcritical,
                    FlowRegime::Supercritical,
                    FlowRegime::Subcritical,
                ],
            };
            check_regimes(id, &flow.profile, &spec, expect)?;
            let notes = flow
                .shock_position
                .map(|x| vec![format!("stationary shock at x = {x}")])
                .unwrap_or_default();
            Ok(Built { spec, solution: Generated::OneD(flow.profile), notes })
        }
        _ if id.starts_with("gvf/") => {
            let problem = gvf_problem::<R>(id, params, cells)?;
            let profile = integrate_backwater(&problem)?;
            let spec = problem.spec.clone();
            Ok(Built { spec, solution: Generated::OneD(profile), notes: Vec::new() })
        }
        "transient/dambreak/ritter" | "transient/dambreak/stoker"
        | "transient/dambreak/dressler" => {
            let setup = dam_break_setup::<R>(id, params)?;
            let t = R::of(t_eval.expect("transient entries carry a reference time"));
            let grid = Grid1::new(R::zero(), setup.length, cells)?;
            let spec = ChannelSpec::new(setup.length).with_friction(setup.friction);
            let mut notes = Vec::new();
            let profile = if t == R::zero() {
                SolutionProfile::from_fn(grid, t, |_| R::zero(), |x| setup.initial_state(x))?
            } else {
                match id {
                    "transient/dambreak/ritter" => SolutionProfile::from_fn(
                        grid,
                        t,
                        |_| R::zero(),
                        |x| ritter(&setup, x, t).expect("validated setup"),
                    )?,
                    "transient/dambreak/stoker" => {
                        let wave = StokerWave::solve(&setup)?;
                        notes.push(format!(
                            "shock at x = {} moving at {}",
                            setup.dam_position + wave.shock_speed * t,
                            wave.shock_speed
                        ));
                        SolutionProfile::from_fn(
                            grid,
                            t,
                            |_| R::zero(),
                            |x| stoker_at(&setup, &wave, x, t),
                        )?
                    }
                    _ => {
                        let wave = DresslerWave::at(&setup, t)?;
                        let (tip_lo, tip_hi) = wave.tip_interval();
                        notes.push(format!(
                            "wave-tip closure masks x in [{tip_lo}, {tip_hi}]"
                        ));
                        SolutionProfile::from_fn(grid, t, |_| R::zero(), |x| wave.eval(x))?
                    }
                }
            };
            Ok(Built { spec, solution: Generated::OneD(profile), notes })
        }
        "transient/thacker/planar-1d" => {
            let setup = thacker_setup::<R>(id, params)?;
            let t = R::of(t_eval.expect("transient entries carry a reference time"));
            let half = setup.domain_half();
            let grid = Grid1::new(-half, R::of(2.0) * half, cells)?;
            let profile = SolutionProfile::from_fn(
                grid,
                t,
                |x| setup.topography(x.abs()),
                |x| setup.eval_1d(x, t).expect("1d setup"),
            )?;
            Ok(Built {
                spec: ChannelSpec::new(R::of(2.0) * half),
                solution: Generated::OneD(profile),
                notes: Vec::new(),
            })
        }
        "transient/thacker/planar-2d" | "transient/thacker/curved-2d" => {
            let setup = thacker_setup::<R>(id, params)?;
            let t = R::of(t_eval.expect("transient entries carry a reference time"));
            let half = setup.domain_half();
            let ny = cells_y.unwrap_or(cells);
            let grid = Grid2::new(-half, -half, R::of(2.0) * half, R::of(2.0) * half, cells, ny)?;
            let field = SolutionField2::from_fn(
                grid,
                t,
                |x, y| setup.topography((x * x + y * y).sqrt()),
                |x, y| setup.eval_2d(x, y, t).expect("2d setup"),
            )?;
            let spec = ChannelSpec::new(R::of(2.0) * half).with_width(R::of(2.0) * half);
            Ok(Built { spec, solution: Generated::TwoD(field), notes: Vec::new() })
        }
        other => Err(Error::UnknownCase(other.to_string())),
    }
}

/// How a case is benchmarked by the solver harness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BenchMode<R> {
    /// Initialize at the exact solution and check it is preserved.
    SteadyPreserve { horizon: R },
    /// Initialize at a perturbed steady state, relax, compare.
    SteadyRelax { perturbation: R },
    /// March from the exact initial condition to `t_end`.
    Transient { t_end: R },
}

/// Everything the harness needs to benchmark one case at one resolution.
#[derive(Debug, Clone)]
pub struct BenchSetup<R> {
    pub spec: ChannelSpec<R>,
    pub initial: SolutionProfile<R>,
    pub exact: SolutionProfile<R>,
    pub boundaries: (BoundarySide<R>, BoundarySide<R>),
    pub mode: BenchMode<R>,
    /// Expected L1(h) convergence-order band, when the case supports one.
    pub order_band: Option<(f64, f64)>,
    /// Whether the well-balancing verdict applies (lake at rest).
    pub well_balance: bool,
}

/// Builds the benchmark setup of a one-dimensional case at resolution
/// `cells`. Two-dimensional cases are generate-only.
pub fn bench_setup<R: Real>(id: &str, params: &Params, cells: usize) -> Result<BenchSetup<R>> {
    let entry = find(id)?;
    if entry.dim == CaseDim::TwoD {
        return Err(Error::InvalidConfig(format!(
            "case `{id}` is two-dimensional; the solver harness is one-dimensional"
        )));
    }
    let built = generate::<R>(id, params, cells, None, None)?;
    let exact = match built.solution {
        Generated::OneD(p) => p,
        Generated::TwoD(_) => unreachable!("dimension checked above"),
    };
    let spec = built.spec;

    if id == "steady/lake-at-rest" {
        let length = exact.grid.length();
        let horizon = R::of(8.0) * length / (spec.gravity * R::of(params.get("eta"))).sqrt();
        return Ok(BenchSetup {
            spec,
            initial: exact.clone(),
            exact,
            boundaries: (BoundarySide::Wall, BoundarySide::Wall),
            mode: BenchMode::SteadyPreserve { horizon },
            order_band: None,
            well_balance: true,
        });
    }

    if entry.reference_time.is_none() {
        // Flowing steady case: subcritical inflow imposes q, outflow imposes
        // h; the ghost logic upgrades to the supercritical rules on its own.
        let n = exact.grid.n;
        let boundaries = (
            BoundarySide::Inflow { q: exact.q(0), h: exact.h[0] },
            BoundarySide::Outflow { h: exact.h[n - 1] },
        );
        let order_band = match id {
            "steady/macdonald/uniform"
            | "steady/macdonald/subcritical"
            | "steady/macdonald/subcritical-dw"
            | "steady/macdonald/supercritical" => Some((0.8, 1.2)),
            id if id.starts_with("gvf/") && id != "gvf/C2" => Some((0.7, 1.3)),
            // Rain and viscous cases solve a different momentum balance than
            // the rain-free inviscid solver, and the bump cases pin the
            // profile to criticality at the crest; no order verdict there.
            _ => None,
        };
        return Ok(BenchSetup {
            spec,
            initial: exact.clone(),
            exact,
            boundaries,
            mode: BenchMode::SteadyRelax { perturbation: R::of(0.02) },
            order_band,
            well_balance: false,
        });
    }

    // Transient: march from the exact t = 0 state.
    let t_end = R::of(entry.reference_time.expect("transient"));
    let grid = exact.grid;
    let initial = match id {
        "transient/dambreak/ritter" | "transient/dambreak/stoker"
        | "transient/dambreak/dressler" => {
            let setup = dam_break_setup::<R>(id, params)?;
            SolutionProfile::from_fn(grid, R::zero(), |_| R::zero(), |x| setup.initial_state(x))?
        }
        "transient/thacker/planar-1d" => {
            let setup = thacker_setup::<R>(id, params)?;
            SolutionProfile::from_fn(
                grid,
                R::zero(),
                |x| setup.topography(x.abs()),
                |x| setup.eval_1d(x, R::zero()).expect("1d setup"),
            )?
        }
        other => return Err(Error::UnknownCase(other.to_string())),
    };
    let order_band = match id {
        "transient/dambreak/stoker" => Some((0.5, 1.0)),
        "transient/dambreak/ritter" => Some((0.5, 1.1)),
        _ => None,
    };
    let boundaries = if id.starts_with("transient/thacker") {
        (BoundarySide::Wall, BoundarySide::Wall)
    } else {
        (BoundarySide::Free, BoundarySide::Free)
    };
    Ok(BenchSetup {
        spec,
        initial,
        exact,
        boundaries,
        mode: BenchMode::Transient { t_end },
        order_band,
        well_balance: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_families_covered() {
        let mut seen = std::collections::HashSet::new();
        for e in entries() {
            assert!(seen.insert(e.id), "duplicate id {}", e.id);
        }
        for family in ["steady/", "gvf/", "transient/"] {
            assert!(entries().iter().any(|e| e.id.starts_with(family)));
        }
    }

    #[test]
    fn unknown_id_and_param_are_rejected() {
        assert!(matches!(find("nope"), Err(Error::UnknownCase(_))));
        let entry = find("steady/lake-at-rest").unwrap();
        let err = entry.resolve(&[("bogus".to_string(), 1.0)]);
        assert!(matches!(err, Err(Error::InvalidParam { .. })));
    }

    #[test]
    fn every_entry_generates_with_defaults() {
        for e in entries() {
            let params = e.resolve(&[]).unwrap();
            let built = generate::<f64>(e.id, &params, 64, None, None);
            assert!(built.is_ok(), "{} failed: {:?}", e.id, built.err());
        }
    }

    #[test]
    fn steady_cases_reject_time_override() {
        let entry = find("steady/bump/subcritical").unwrap();
        let params = entry.resolve(&[]).unwrap();
        assert!(generate::<f64>(entry.id, &params, 32, None, Some(1.0)).is_err());
    }

    #[test]
    fn two_d_cases_refuse_bench() {
        let entry = find("transient/thacker/curved-2d").unwrap();
        let params = entry.resolve(&[]).unwrap();
        assert!(bench_setup::<f64>(entry.id, &params, 32).is_err());
    }

    #[test]
    fn gvf_defaults_classify_as_labelled() {
        use crate::gvf::classify_profile;
        for e in entries().iter().filter(|e| e.id.starts_with("gvf/")) {
            let params = e.resolve(&[]).unwrap();
            let problem = gvf_problem::<f64>(e.id, &params, 32).unwrap();
            let label = e.id.trim_start_matches("gvf/");
            let got = classify_profile(&problem).unwrap().label();
            assert_eq!(got, label, "case {}", e.id);
        }
    }
}
