use serde::Serialize;

use super::quotient::check_normal;
use super::{
    adjacency_design, is_s_arc_transitive, is_starlike, local_distance_transitivity, recover_base,
    BipartiteGraph, GraphError, LocalDtReport,
};
use crate::incidence::{is_nicely_affine, is_pairwise_transitive, NicelyAffine, NotNicelyAffine, PairwiseReport};
use crate::permgroup::PermGroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub connected: bool,
    pub g_automorphisms: bool,
    pub n_bipart_preserving: bool,
    pub n_nontrivial: bool,
    pub n_normal: bool,
    /// Number of `N`-orbits on `B'`.
    pub r: Option<usize>,
    pub r_at_least_3: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MainReport {
    pub hypotheses: Hypotheses,
    pub starlike: Option<usize>,
    pub local_dt: Option<LocalDtReport>,
    pub cond_a: bool,
    pub pairwise: Option<PairwiseReport>,
    pub nicely_affine: Option<NicelyAffine>,
    pub not_nicely_affine: Option<NotNicelyAffine>,
    pub cond_b: bool,
    pub notes: Vec<String>,
}

impl MainReport {
    pub fn passes(&self) -> bool {
        self.hypotheses.holds && self.cond_a && self.cond_b
    }
}

/// Evaluates the hypotheses and both sides of the starlike/pairwise-transitive
/// equivalence independently. Side (a) reads only the graph; side (b) reads only
/// the adjacency design.
pub fn theorem_main_check(g: &BipartiteGraph, grp: &PermGroup, n: &PermGroup) -> MainReport {
    let mut notes = Vec::new();
    let connected = g.is_connected();
    let g_automorphisms = g.check_automorphisms(grp).is_ok();
    let n_bipart_preserving = match g.check_bipart_preserving(n) {
        Ok(()) => true,
        Err(e) => {
            notes.push(format!("N: {e}"));
            false
        }
    };
    let n_nontrivial = n.order() > 1;
    let n_normal = g_automorphisms && check_normal(n, grp).is_ok();
    let r = if n_bipart_preserving {
        n.orbits_on(&g.bp_vertices()).ok().map(|o| o.len())
    } else {
        None
    };
    let r_at_least_3 = r.is_some_and(|r| r >= 3);
    let hypotheses = Hypotheses {
        connected,
        g_automorphisms,
        n_bipart_preserving,
        n_nontrivial,
        n_normal,
        r,
        r_at_least_3,
        holds: connected && g_automorphisms && n_bipart_preserving && n_nontrivial && n_normal && r_at_least_3,
    };

    let starlike = if n_bipart_preserving {
        is_starlike(g, n).unwrap_or(None)
    } else {
        None
    };
    let local_dt = match local_distance_transitivity(g, grp, 4) {
        Ok(rep) => Some(rep),
        Err(e) => {
            notes.push(format!("local distance transitivity: {e}"));
            None
        }
    };
    let cond_a = starlike.is_some() && starlike == r && local_dt.as_ref().is_some_and(|l| l.holds);

    let (mut pairwise, mut nicely_affine, mut not_nicely_affine) = (None, None, None);
    match adjacency_design(g) {
        Ok(ad) => {
            let design = &ad.design;
            match is_pairwise_transitive(design, &ad.transport(grp)) {
                Ok(rep) => pairwise = Some(rep),
                Err(e) => notes.push(format!("pairwise transitivity: {e}")),
            }
            match is_nicely_affine(design, &ad.transport(n)) {
                Ok(na) => nicely_affine = Some(na),
                Err(e) => not_nicely_affine = Some(e),
            }
        }
        Err(e) => notes.push(format!("adjacency design: {e}")),
    }
    let cond_b = pairwise.as_ref().is_some_and(|p| p.overall)
        && nicely_affine
            .as_ref()
            .is_some_and(|na| Some(na.classes.len()) == r);
    MainReport {
        hypotheses,
        starlike,
        local_dt,
        cond_a,
        pairwise,
        nicely_affine,
        not_nicely_affine,
        cond_b,
        notes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertiesReport {
    pub rank_on_b: usize,
    pub rank_on_b_ok: bool,
    pub faithful_on_b: bool,
    pub faithful_on_bp: bool,
    pub rank_on_bp: usize,
    pub rank_on_bp_ok: bool,
    /// The `N`-orbits on `B'` form a nontrivial `G`-invariant partition.
    pub orbit_partition_invariant: bool,
    pub local_degree: usize,
    pub local_two_transitive: bool,
    pub holds: bool,
}

/// Rank and faithfulness consequences of the equivalence.
pub fn theorem_properties_check(
    g: &BipartiteGraph,
    grp: &PermGroup,
    n: &PermGroup,
) -> Result<PropertiesReport, GraphError> {
    let main = theorem_main_check(g, grp, n);
    if !main.passes() {
        let reason = if !main.hypotheses.holds {
            match main.hypotheses.r {
                Some(r) if r < 3 => format!("r = {r}, need r >= 3"),
                _ => "hypotheses fail".to_string(),
            }
        } else {
            "conditions (a) and (b) do not hold".to_string()
        };
        return Err(GraphError::Precondition(reason));
    }
    let b = g.b_vertices();
    let bp = g.bp_vertices();
    let rank_on_b = grp.rank(&b)?;
    let rank_on_bp = grp.rank(&bp)?;
    let singletons = |vs: &[usize]| vs.iter().map(|&x| vec![x]).collect::<Vec<_>>();
    let faithful_on_b = grp.induced_action(&singletons(&b))?.faithful;
    let faithful_on_bp = grp.induced_action(&singletons(&bp))?.faithful;
    let classes = n.orbits_on(&bp)?;
    let orbit_partition_invariant =
        classes.len() > 1 && classes.len() < bp.len() && grp.induced_action(&classes).is_ok();
    let x = b[0];
    let local_degree = g.degree(x);
    let mut triples = Vec::new();
    for &u in &b {
        let nb = g.neighbors(u);
        for &y in nb {
            for &z in nb {
                if y != z {
                    triples.push(vec![u, y, z]);
                }
            }
        }
    }
    let local_two_transitive = grp.is_transitive_on(&triples)?;
    let rank_on_b_ok = rank_on_b == 2 || rank_on_b == 3;
    let rank_on_bp_ok = rank_on_bp == 3;
    Ok(PropertiesReport {
        rank_on_b,
        rank_on_b_ok,
        faithful_on_b,
        faithful_on_bp,
        rank_on_bp,
        rank_on_bp_ok,
        orbit_partition_invariant,
        local_degree,
        local_two_transitive,
        holds: rank_on_b_ok
            && rank_on_bp_ok
            && faithful_on_b
            && faithful_on_bp
            && orbit_partition_invariant
            && local_two_transitive,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiSymmetry {
    pub lambda2: Option<usize>,
    pub intersection_numbers: Vec<usize>,
    pub holds: bool,
}

/// When a `B`-vertex has eccentricity 3 the adjacency design should be a
/// 2-design with two block intersection sizes, one of them 0. `None` otherwise.
pub fn quasisymmetry_check(g: &BipartiteGraph) -> Result<Option<QuasiSymmetry>, GraphError> {
    if g.n_b() == 0 || g.eccentricity(0) != 3 {
        return Ok(None);
    }
    let design = adjacency_design(g)?.design;
    let lambda2 = design.parameters().lambda2;
    let intersection_numbers = design.intersection_numbers()?;
    let holds = lambda2.is_some() && intersection_numbers.len() == 2 && intersection_numbers[0] == 0;
    Ok(Some(QuasiSymmetry {
        lambda2,
        intersection_numbers,
        holds,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum R2Shape {
    CompleteBipartite { n: usize },
    Cycle { length: usize },
    Subdivision {
        sigma_order: usize,
        sigma_valency: Option<usize>,
        arc_s: usize,
        arc_transitive: bool,
        /// Arc transitivity is forced only when `s < diam`.
        required: bool,
    },
    Unrecognized { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct R2Report {
    pub s: usize,
    pub diameter: usize,
    pub shape: R2Shape,
    pub s_bound: bool,
    pub consistent: bool,
}

/// Structure of a 2-starlike, locally `(G, s)`-distance transitive graph.
pub fn r2_analysis(g: &BipartiteGraph, grp: &PermGroup, n: &PermGroup, s: usize) -> Result<R2Report, GraphError> {
    if is_starlike(g, n)? != Some(2) {
        return Err(GraphError::Precondition("not 2-starlike".into()));
    }
    check_normal(n, grp)?;
    let diameter = g.diameter().ok_or(GraphError::Disconnected)?;
    if s < 2 || s > diameter {
        return Err(GraphError::Precondition(format!("need 2 <= s <= diam = {diameter}")));
    }
    let dt = local_distance_transitivity(g, grp, s)?;
    if !dt.holds {
        return Err(GraphError::Precondition(format!("not locally (G,{s})-distance transitive")));
    }
    let is_cycle = g.is_connected() && (0..g.order()).all(|x| g.degree(x) == 2);
    let shape = if g.n_bp() == 2 && g.edge_count() == 2 * g.n_b() {
        R2Shape::CompleteBipartite { n: g.n_b() }
    } else if is_cycle {
        R2Shape::Cycle { length: g.order() }
    } else {
        match recover_base(g) {
            Ok(sigma) => {
                let degrees: Vec<usize> = (0..sigma.order()).map(|x| sigma.degree(x)).collect();
                let sigma_valency = degrees.iter().all(|&d| d == degrees[0]).then_some(degrees[0]);
                let arc_s = (s + 2) / 2;
                let on_sigma = grp.restrict(&g.bp_vertices())?;
                let arc_transitive = is_s_arc_transitive(&sigma, &on_sigma, arc_s)?;
                R2Shape::Subdivision {
                    sigma_order: sigma.order(),
                    sigma_valency,
                    arc_s,
                    arc_transitive,
                    required: s < diameter,
                }
            }
            Err(e) => R2Shape::Unrecognized { reason: e.to_string() },
        }
    };
    let s_bound = s <= 14 || (is_cycle && g.order().is_multiple_of(4) && g.order() >= 2 * s);
    let shape_ok = match &shape {
        R2Shape::CompleteBipartite { .. } => s == 2,
        R2Shape::Cycle { length } => length % 4 == 0,
        R2Shape::Subdivision {
            arc_transitive,
            required,
            ..
        } => !required || *arc_transitive,
        R2Shape::Unrecognized { .. } => false,
    };
    Ok(R2Report {
        s,
        diameter,
        consistent: shape_ok && s_bound,
        shape,
        s_bound,
    })
}
