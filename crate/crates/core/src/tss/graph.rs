use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::marching::{edge_crossed, sample_grid};
use super::{find_zero_curves, modular_period, ScalarField, TssError, TssParams};

/// A leaf of the structure: a connected component of the complement of
/// the zero set, labeled by its genus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TssVertex {
    pub genus: usize,
}

/// Oriented labeled multigraph classifying the structure: one vertex per
/// two-dimensional leaf, one edge per zero curve pointing toward the leaf
/// where the structure is positive, labeled by the modular period.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TssGraph {
    pub vertices: Vec<TssVertex>,
    pub edges: Vec<TssEdge>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TssEdge {
    pub from: usize,
    pub to: usize,
    pub period: f64,
}

impl TssGraph {
    /// DOT rendering: vertices labeled by genus, arrowheads toward the
    /// positive side, edges labeled by period.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph tss {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{} [label=\"genus {}\"];\n", i, v.genus));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  v{} -> v{} [label=\"{:.9}\"];\n",
                e.from, e.to, e.period
            ));
        }
        out.push_str("}\n");
        out
    }
}

struct CellComponents {
    grid: usize,
    /// Offset of the sample grid the cells were derived from.
    offset: f64,
    /// Component id per cell, indexed `[i][j]`.
    label: Vec<Vec<usize>>,
    count: usize,
}

fn component_cells<F: ScalarField>(f: &F, params: &TssParams) -> Result<CellComponents, TssError> {
    let sg = sample_grid(f, params.grid)?;
    let g = params.grid;
    // Cell sign from its center.
    let step = 1.0 / g as f64;
    let positive: Vec<Vec<bool>> = (0..g)
        .map(|i| {
            (0..g)
                .map(|j| f.value(sg.coord(i) + 0.5 * step, sg.coord(j) + 0.5 * step) > 0.0)
                .collect()
        })
        .collect();
    // Union-find over cells not separated by a crossed edge.
    let mut parent: Vec<usize> = (0..g * g).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let ra = find(parent, a);
        let rb = find(parent, b);
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    let idx = |i: usize, j: usize| (i % g) * g + (j % g);
    for i in 0..g {
        for j in 0..g {
            // Right neighbour across the vertical grid edge at i+1.
            if positive[i][j] == positive[(i + 1) % g][j] && !edge_crossed(&sg, false, i + 1, j) {
                union(&mut parent, idx(i, j), idx(i + 1, j));
            }
            // Upper neighbour across the horizontal grid edge at j+1.
            if positive[i][j] == positive[i][(j + 1) % g] && !edge_crossed(&sg, true, i, j + 1) {
                union(&mut parent, idx(i, j), idx(i, j + 1));
            }
        }
    }
    let mut remap: HashMap<usize, usize> = HashMap::new();
    let mut label = vec![vec![0usize; g]; g];
    for i in 0..g {
        for j in 0..g {
            let root = find(&mut parent, idx(i, j));
            let next = remap.len();
            let id = *remap.entry(root).or_insert(next);
            label[i][j] = id;
        }
    }
    Ok(CellComponents {
        grid: g,
        offset: sg.offset,
        label,
        count: remap.len(),
    })
}

/// Euler characteristic of the closed-cell complex of one component on
/// the torus grid.
fn component_chi(cells: &CellComponents, comp: usize) -> i64 {
    let g = cells.grid;
    let mut faces = 0i64;
    let mut verts: HashSet<(usize, usize)> = HashSet::new();
    let mut edges: HashSet<(bool, usize, usize)> = HashSet::new();
    for i in 0..g {
        for j in 0..g {
            if cells.label[i][j] != comp {
                continue;
            }
            faces += 1;
            for (di, dj) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                verts.insert(((i + di) % g, (j + dj) % g));
            }
            // Horizontal edges at the bottom and top, vertical at both
            // sides.
            edges.insert((true, i, j));
            edges.insert((true, i, (j + 1) % g));
            edges.insert((false, i, j));
            edges.insert((false, (i + 1) % g, j));
        }
    }
    verts.len() as i64 - edges.len() as i64 + faces
}

/// Build the classifying graph: vertices from the complement components
/// with genus from the Euler characteristic and boundary count, edges
/// from the zero curves labeled by modular periods and pointing toward
/// the positive side.
pub fn build_graph<F: ScalarField>(f: &F, params: &TssParams) -> Result<TssGraph, TssError> {
    let curves = find_zero_curves(f, params)?;
    let cells = component_cells(f, params)?;
    let g = cells.grid;
    let cell_of = |x: f64, y: f64| -> usize {
        // Invert the offset sampling to locate the containing cell.
        let i = ((x.rem_euclid(1.0)) * g as f64 - cells.offset).rem_euclid(g as f64) as usize;
        let j = ((y.rem_euclid(1.0)) * g as f64 - cells.offset).rem_euclid(g as f64) as usize;
        cells.label[i.min(g - 1)][j.min(g - 1)]
    };
    let mut boundary_count = vec![0usize; cells.count];
    let mut edges = Vec::with_capacity(curves.len());
    let eps = 1.5 / g as f64;
    for curve in &curves {
        let (x, y) = curve.points[0];
        let (gx, gy) = f.gradient(x, y);
        let norm = (gx * gx + gy * gy).sqrt();
        let pos_side = cell_of(x + eps * gx / norm, y + eps * gy / norm);
        let neg_side = cell_of(x - eps * gx / norm, y - eps * gy / norm);
        boundary_count[pos_side] += 1;
        boundary_count[neg_side] += 1;
        let period = modular_period(f, curve, params)?;
        edges.push(TssEdge {
            from: neg_side,
            to: pos_side,
            period: period.value,
        });
    }
    let mut vertices = Vec::with_capacity(cells.count);
    let mut chi_total = 0i64;
    for comp in 0..cells.count {
        let chi = component_chi(&cells, comp);
        chi_total += chi;
        let b = boundary_count[comp];
        let numerator = 2 - chi - b as i64;
        if numerator < 0 || numerator % 2 != 0 {
            return Err(TssError::BadComponent { chi, boundary: b });
        }
        vertices.push(TssVertex {
            genus: (numerator / 2) as usize,
        });
    }
    // The component complexes overlap on the zero curves, which are
    // circles; the characteristics must sum to that of the torus.
    if chi_total != 0 {
        return Err(TssError::BadComponent {
            chi: chi_total,
            boundary: curves.len(),
        });
    }
    Ok(TssGraph { vertices, edges })
}

/// A successful graph matching: vertex and edge correspondences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphIsomorphism {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

/// Backtracking search for an isomorphism preserving genus labels, edge
/// orientation, and periods within the tolerance.
pub fn graphs_isomorphic(a: &TssGraph, b: &TssGraph, period_tol: f64) -> Option<GraphIsomorphism> {
    if a.vertices.len() != b.vertices.len() || a.edges.len() != b.edges.len() {
        return None;
    }
    let n = a.vertices.len();
    let mut vertex_map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !assign(a, b, 0, &mut vertex_map, &mut used, period_tol) {
        return None;
    }
    let edge_map = match_edges(a, b, &vertex_map, period_tol)?;
    Some(GraphIsomorphism {
        vertex_map,
        edge_map,
    })
}

fn assign(
    a: &TssGraph,
    b: &TssGraph,
    v: usize,
    vertex_map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    tol: f64,
) -> bool {
    if v == a.vertices.len() {
        return match_edges(a, b, vertex_map, tol).is_some();
    }
    for target in 0..b.vertices.len() {
        if used[target] || a.vertices[v].genus != b.vertices[target].genus {
            continue;
        }
        vertex_map[v] = target;
        used[target] = true;
        // Quick degree screen before descending.
        let deg_ok = {
            let (aout, ain) = degree(a, v);
            let (bout, bin) = degree(b, target);
            aout == bout && ain == bin
        };
        if deg_ok && assign(a, b, v + 1, vertex_map, used, tol) {
            return true;
        }
        vertex_map[v] = usize::MAX;
        used[target] = false;
    }
    false
}

fn degree(g: &TssGraph, v: usize) -> (usize, usize) {
    let out = g.edges.iter().filter(|e| e.from == v).count();
    let inn = g.edges.iter().filter(|e| e.to == v).count();
    (out, inn)
}

/// For a fixed vertex bijection, match parallel edges between each
/// ordered vertex pair by sorted periods within the tolerance.
fn match_edges(a: &TssGraph, b: &TssGraph, vertex_map: &[usize], tol: f64) -> Option<Vec<usize>> {
    let mut edge_map = vec![usize::MAX; a.edges.len()];
    let mut taken = vec![false; b.edges.len()];
    let mut buckets: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (ei, e) in a.edges.iter().enumerate() {
        buckets
            .entry((vertex_map[e.from], vertex_map[e.to]))
            .or_default()
            .push(ei);
    }
    for ((bf, bt), mut a_edges) in buckets {
        let mut b_edges: Vec<usize> = b
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.from == bf && e.to == bt)
            .map(|(i, _)| i)
            .collect();
        if a_edges.len() != b_edges.len() {
            return None;
        }
        a_edges.sort_by(|&x, &y| a.edges[x].period.total_cmp(&a.edges[y].period));
        b_edges.sort_by(|&x, &y| b.edges[x].period.total_cmp(&b.edges[y].period));
        for (&ea, &eb) in a_edges.iter().zip(&b_edges) {
            if (a.edges[ea].period - b.edges[eb].period).abs() > tol {
                return None;
            }
            edge_map[ea] = eb;
            taken[eb] = true;
        }
    }
    Some(edge_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tss::TorusFunction;
    use std::f64::consts::PI;

    fn sine_graph(scale: f64, grid: usize) -> TssGraph {
        let f = TorusFunction::sin_mode(0, 1).scale(scale);
        let params = TssParams {
            grid,
            ..TssParams::default()
        };
        build_graph(&f, &params).unwrap()
    }

    #[test]
    fn sine_gives_two_annuli_joined_by_two_edges() {
        let g = sine_graph(1.0, 128);
        assert_eq!(g.vertices.len(), 2);
        assert!(g.vertices.iter().all(|v| v.genus == 0));
        assert_eq!(g.edges.len(), 2);
        for e in &g.edges {
            assert!((e.period - 1.0 / (2.0 * PI)).abs() < 1e-6);
            assert_ne!(e.from, e.to);
        }
        // Both edges point into the same (positive) leaf.
        assert_eq!(g.edges[0].to, g.edges[1].to);
        assert_eq!(g.edges[0].from, g.edges[1].from);
    }

    #[test]
    fn positive_function_is_one_torus_vertex() {
        let f = TorusFunction::sin_mode(1, 0).add(&TorusFunction::constant(3.0));
        let params = TssParams {
            grid: 64,
            ..TssParams::default()
        };
        let g = build_graph(&f, &params).unwrap();
        assert_eq!(g.vertices.len(), 1);
        assert_eq!(g.vertices[0].genus, 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn parallel_curve_cycle_from_a_faster_sine() {
        // sin(4πy) gives four parallel curves and four alternating
        // annuli in a cycle.
        let f = TorusFunction::sin_mode(0, 2);
        let params = TssParams {
            grid: 256,
            ..TssParams::default()
        };
        let g = build_graph(&f, &params).unwrap();
        assert_eq!(g.vertices.len(), 4);
        assert!(g.vertices.iter().all(|v| v.genus == 0));
        assert_eq!(g.edges.len(), 4);
        // Each vertex is incident to exactly two edges.
        for v in 0..4 {
            let inc = g.edges.iter().filter(|e| e.from == v || e.to == v).count();
            assert_eq!(inc, 2);
        }
    }

    #[test]
    fn self_isomorphism_and_relabeling() {
        let g = sine_graph(1.0, 128);
        let iso = graphs_isomorphic(&g, &g, 1e-6).unwrap();
        assert_eq!(iso.vertex_map, vec![0, 1]);
        // Relabel vertices and permute edges.
        let relabeled = TssGraph {
            vertices: vec![g.vertices[1].clone(), g.vertices[0].clone()],
            edges: vec![
                TssEdge {
                    from: 1 - g.edges[1].from,
                    to: 1 - g.edges[1].to,
                    period: g.edges[1].period,
                },
                TssEdge {
                    from: 1 - g.edges[0].from,
                    to: 1 - g.edges[0].to,
                    period: g.edges[0].period,
                },
            ],
        };
        assert!(graphs_isomorphic(&g, &relabeled, 1e-6).is_some());
    }

    #[test]
    fn halved_period_is_not_isomorphic() {
        let g1 = sine_graph(1.0, 128);
        let g2 = sine_graph(2.0, 128);
        assert!(graphs_isomorphic(&g1, &g2, 1e-6).is_none());
        // Same shape, different labels: the mismatch is purely metric.
        assert_eq!(g1.vertices.len(), g2.vertices.len());
        assert_eq!(g1.edges.len(), g2.edges.len());
    }

    #[test]
    fn genus_mismatch_blocks_isomorphism() {
        let annuli = sine_graph(1.0, 128);
        let torus = {
            let f = TorusFunction::constant(1.0);
            let params = TssParams {
                grid: 64,
                ..TssParams::default()
            };
            build_graph(&f, &params).unwrap()
        };
        assert!(graphs_isomorphic(&annuli, &torus, 1e-6).is_none());
    }

    #[test]
    fn dot_rendering_mentions_every_edge() {
        let g = sine_graph(1.0, 128);
        let dot = g.to_dot();
        assert!(dot.contains("genus 0"));
        assert_eq!(dot.matches("->").count(), 2);
    }
}
