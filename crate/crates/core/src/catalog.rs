//! Named instances, normalised so that the graph is the incidence graph of its
//! adjacency design, and their on-disk form.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{
    affine_space_design, build_design, selfdual_design, subspace_orbit, AffineError, AffineInstance,
    ConstructionInput,
};
use crate::graphs::{adjacency_design, incidence_graph, subdivision, subdivision_group, to_dot, BipartiteGraph, Graph};
use crate::graphs::GraphError;
use crate::incidence::fixtures::{complete_design, degenerate_design, grid_design};
use crate::incidence::{Design, DesignError};
use crate::permgroup::{direct_product, GroupError, PermGroup, Permutation};
use crate::REPORT_SCHEMA_VERSION;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSpec {
    AffineSpace {
        d: usize,
        p: u32,
    },
    Selfdual {
        d: usize,
        p: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        u: Option<Vec<u32>>,
    },
    Construction(ConstructionInput),
    Degenerate {
        k: usize,
        l: usize,
    },
    Grid {
        k: usize,
        l: usize,
    },
    Complete {
        v: usize,
    },
    /// `S(C_{2ℓ})`, a cycle of length `4ℓ`.
    CycleSubdivision {
        l: usize,
    },
    CompleteBipartite {
        n: usize,
        m: usize,
    },
    FromFile {
        dir: PathBuf,
    },
}

impl InstanceSpec {
    pub fn name(&self) -> String {
        match self {
            InstanceSpec::AffineSpace { d, p } => format!("affine_space({d},{p})"),
            InstanceSpec::Selfdual { d, p, u: None } => format!("selfdual({d},{p})"),
            InstanceSpec::Selfdual { d, p, u: Some(u) } => format!("selfdual({d},{p},{u:?})"),
            InstanceSpec::Construction(c) => format!("construction({},{})", c.d, c.p),
            InstanceSpec::Degenerate { k, l } => format!("degenerate({k},{l})"),
            InstanceSpec::Grid { k, l } => format!("grid({k},{l})"),
            InstanceSpec::Complete { v } => format!("complete({v})"),
            InstanceSpec::CycleSubdivision { l } => format!("cycle_subdivision({l})"),
            InstanceSpec::CompleteBipartite { n, m } => format!("complete_bipartite({n},{m})"),
            InstanceSpec::FromFile { dir } => format!("from_file({})", dir.display()),
        }
    }

    /// Rejects parameters outside each kind's range before anything is built.
    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |m: &str| Err(CatalogError::Invalid(m.to_string()));
        match *self {
            InstanceSpec::AffineSpace { d, p } | InstanceSpec::Selfdual { d, p, .. } => {
                if d < 3 {
                    return bad("affine designs need d >= 3");
                }
                if !crate::affine::is_prime(p) {
                    return bad("p must be prime");
                }
                if let InstanceSpec::Selfdual { u: Some(ref u), .. } = *self {
                    if u.len() != d {
                        return bad("u must have d coordinates");
                    }
                    if u.iter().all(|&x| x % p == 0) {
                        return bad("u must be nonzero");
                    }
                }
                Ok(())
            }
            InstanceSpec::Construction(ref c) => {
                if !crate::affine::is_prime(c.p) {
                    return bad("p must be prime");
                }
                if c.d == 0 {
                    return bad("d must be positive");
                }
                Ok(())
            }
            InstanceSpec::Degenerate { k, l } => {
                if k < 1 || l < 2 {
                    bad("degenerate designs need k >= 1 and l >= 2")
                } else {
                    Ok(())
                }
            }
            InstanceSpec::Grid { k, l } => {
                if k > l && l > 1 {
                    Ok(())
                } else {
                    bad("grid designs need k > l > 1")
                }
            }
            InstanceSpec::Complete { v } => {
                if v < 3 {
                    bad("complete designs need v >= 3")
                } else {
                    Ok(())
                }
            }
            InstanceSpec::CycleSubdivision { l } => {
                if l < 2 {
                    bad("cycle subdivision needs l >= 2")
                } else {
                    Ok(())
                }
            }
            InstanceSpec::CompleteBipartite { n, m } => {
                if n < 1 || m < 1 {
                    bad("complete bipartite graphs need n, m >= 1")
                } else {
                    Ok(())
                }
            }
            InstanceSpec::FromFile { .. } => Ok(()),
        }
    }
}

/// A design with `G` and `N` acting on points⊔blocks. The graph is its incidence graph.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub spec: Option<InstanceSpec>,
    pub design: Design,
    pub g: PermGroup,
    pub n: PermGroup,
}

impl Instance {
    /// Normalises a bipartite graph with groups through its adjacency design.
    pub fn from_graph(
        name: impl Into<String>,
        graph: &BipartiteGraph,
        g: &PermGroup,
        n: &PermGroup,
    ) -> Result<Instance, CatalogError> {
        graph.check_automorphisms(g)?;
        graph.check_automorphisms(n)?;
        let ad = adjacency_design(graph)?;
        Ok(Instance {
            name: name.into(),
            spec: None,
            g: ad.transport(g),
            n: ad.transport(n),
            design: ad.design,
        })
    }

    pub fn from_design(name: impl Into<String>, design: Design, g: PermGroup, n: PermGroup) -> Result<Instance, CatalogError> {
        let graph = incidence_graph(&design);
        Instance::from_graph(name, &graph, &g, &n)
    }

    pub fn graph(&self) -> BipartiteGraph {
        incidence_graph(&self.design)
    }

    pub fn dot(&self) -> String {
        to_dot(&self.graph(), Some(&self.n), self.design.labels())
    }

    pub fn design_file(&self) -> DesignFile {
        DesignFile {
            schema_version: REPORT_SCHEMA_VERSION,
            name: self.name.clone(),
            spec: self.spec.clone(),
            design: self.design.clone(),
        }
    }

    pub fn groups_file(&self) -> GroupsFile {
        GroupsFile {
            schema_version: REPORT_SCHEMA_VERSION,
            degree: self.design.vertex_count(),
            g: self.g.clone(),
            n: self.n.clone(),
        }
    }

    /// Writes `design.json`, `groups.json` and `graph.dot` into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<(), CatalogError> {
        let io = |path: &Path, e: std::io::Error| CatalogError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        };
        fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
        for (file, text) in [
            (DESIGN_FILE, to_json(&self.design_file())),
            (GROUPS_FILE, to_json(&self.groups_file())),
            (DOT_FILE, self.dot()),
        ] {
            let path = dir.join(file);
            fs::write(&path, text).map_err(|e| io(&path, e))?;
        }
        Ok(())
    }

    pub fn read_from(dir: &Path) -> Result<Instance, CatalogError> {
        let design_file: DesignFile = read_json(&dir.join(DESIGN_FILE))?;
        let groups_file: GroupsFile = read_json(&dir.join(GROUPS_FILE))?;
        let design = design_file.design;
        let degree = design.vertex_count();
        for (label, grp) in [("G", &groups_file.g), ("N", &groups_file.n)] {
            if grp.degree() != degree || groups_file.degree != degree {
                return Err(CatalogError::Invalid(format!(
                    "group {label} has degree {} but the design has {degree} vertices",
                    grp.degree()
                )));
            }
            design
                .check_automorphisms(grp)
                .map_err(|e| CatalogError::Invalid(format!("group {label}: {e}")))?;
        }
        Ok(Instance {
            name: design_file.name,
            spec: design_file.spec,
            design,
            g: groups_file.g,
            n: groups_file.n,
        })
    }
}

pub const DESIGN_FILE: &str = "design.json";
pub const GROUPS_FILE: &str = "groups.json";
pub const DOT_FILE: &str = "graph.dot";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignFile {
    pub schema_version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<InstanceSpec>,
    pub design: Design,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupsFile {
    pub schema_version: u32,
    pub degree: usize,
    #[serde(rename = "G")]
    pub g: PermGroup,
    #[serde(rename = "N")]
    pub n: PermGroup,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("catalog types serialise");
    s.push('\n');
    s
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CatalogError> {
    let text = fs::read_to_string(path).map_err(|e| CatalogError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CatalogError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn from_affine(name: String, inst: AffineInstance) -> Result<Instance, CatalogError> {
    Instance::from_design(name, inst.design, inst.g, inst.n)
}

/// `(0 1 .. n-1)` and `x -> -x` on `Z_n`, optionally with the rotation squared.
fn dihedral(n: usize, even_rotations_only: bool) -> Result<PermGroup, GroupError> {
    let step = if even_rotations_only { 2 } else { 1 };
    let rot = Permutation::from_images((0..n).map(|x| (x + step) % n).collect())?;
    let refl = Permutation::from_images((0..n).map(|x| (n - x) % n).collect())?;
    PermGroup::new(n, vec![rot, refl])
}

/// `S_n` on `offset..offset+n` inside a group of the given degree.
fn symmetric_on(degree: usize, offset: usize, n: usize) -> Result<Vec<Permutation>, GroupError> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(degree, &[vec![offset, offset + 1]])?);
    }
    if n >= 3 {
        gens.push(Permutation::from_cycles(degree, &[(offset..offset + n).collect()])?);
    }
    Ok(gens)
}

/// `K_{n,m}` with `S_n × S_m` and `S_n × 1`.
pub fn complete_bipartite_instance(n: usize, m: usize) -> Result<Instance, CatalogError> {
    let graph = BipartiteGraph::complete_bipartite(n, m)?;
    let sn = PermGroup::new(n, symmetric_on(n, 0, n)?)?;
    let sm = PermGroup::new(m, symmetric_on(m, 0, m)?)?;
    let g = direct_product(&sn, &sm);
    let n_grp = direct_product(&sn, &PermGroup::trivial(m));
    Instance::from_graph(format!("complete_bipartite({n},{m})"), &graph, &g, &n_grp)
}

/// `S(C_{2ℓ})` with the lift of `Aut(C_{2ℓ})` and of its subgroup fixing the two biparts of `C_{2ℓ}`.
pub fn cycle_subdivision_instance(l: usize) -> Result<Instance, CatalogError> {
    let sigma = Graph::cycle(2 * l)?;
    let gamma = subdivision(&sigma);
    let g = subdivision_group(&sigma, &dihedral(2 * l, false)?)?;
    let n = subdivision_group(&sigma, &dihedral(2 * l, true)?)?;
    Instance::from_graph(format!("cycle_subdivision({l})"), &gamma, &g, &n)
}

/// `S(K_{n,n})` with the lift of `S_n wr S_2` and of `S_n × S_n`.
pub fn complete_bipartite_subdivision_instance(n: usize) -> Result<Instance, CatalogError> {
    let sigma = BipartiteGraph::complete_bipartite(n, n)?;
    let mut n_gens = symmetric_on(2 * n, 0, n)?;
    n_gens.extend(symmetric_on(2 * n, n, n)?);
    let swap = Permutation::from_images((0..2 * n).map(|x| (x + n) % (2 * n)).collect())?;
    let mut g_gens = n_gens.clone();
    g_gens.push(swap);
    let g = subdivision_group(&sigma, &PermGroup::new(2 * n, g_gens)?)?;
    let n_grp = subdivision_group(&sigma, &PermGroup::new(2 * n, n_gens)?)?;
    Instance::from_graph(format!("subdivision(K_{{{n},{n}}})"), &subdivision(&sigma), &g, &n_grp)
}

pub fn build(spec: &InstanceSpec) -> Result<Instance, CatalogError> {
    spec.validate()?;
    let name = spec.name();
    let mut inst = match spec {
        InstanceSpec::AffineSpace { d, p } => from_affine(name, affine_space_design(*d, *p)?)?,
        InstanceSpec::Selfdual { d, p, u } => {
            let u = u.clone().unwrap_or_else(|| {
                let mut e1 = vec![0; *d];
                e1[0] = 1;
                e1
            });
            from_affine(name, selfdual_design(*d, *p, &u)?.instance)?
        }
        InstanceSpec::Construction(input) => {
            let gens = input.matrices()?;
            let m1 = input.m1()?;
            if m1.d != input.d {
                return Err(CatalogError::Invalid("M1_basis vectors must have d coordinates".into()));
            }
            let orbit = subspace_orbit(&m1, &gens);
            from_affine(name, build_design(input.d, input.p, &gens, &orbit)?)?
        }
        InstanceSpec::Degenerate { k, l } => {
            let (d, g) = degenerate_design(*k, *l)?;
            Instance::from_design(name, d, g.clone(), g)?
        }
        InstanceSpec::Grid { k, l } => {
            let (d, n) = grid_design(*k, *l)?;
            Instance::from_design(name, d, n.clone(), n)?
        }
        InstanceSpec::Complete { v } => {
            let (d, g) = complete_design(*v)?;
            Instance::from_design(name, d, g.clone(), g)?
        }
        InstanceSpec::CycleSubdivision { l } => cycle_subdivision_instance(*l)?,
        InstanceSpec::CompleteBipartite { n, m } => complete_bipartite_instance(*n, *m)?,
        InstanceSpec::FromFile { dir } => return Instance::read_from(dir),
    };
    inst.spec = Some(spec.clone());
    Ok(inst)
}
