//! Incidence representation of a finite simply connected patch.
//!
//! Invariants maintained across growth:
//! * every tile has exactly `p` edges and `p` distinct vertices,
//! * every edge has one or two incident tiles; the one-tile edges are the
//!   perimeter and form a single closed cycle,
//! * interior vertices touch exactly `q` tiles, perimeter vertices fewer,
//! * `V - E + F = 1`.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::census::LayerCensus;
use super::SimError;
use crate::schlafli::SchlafliPair;

/// The three canonical simply connected seeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedKind {
    /// One tile.
    SingleTile,
    /// Two tiles sharing an edge.
    EdgePair,
    /// `q` tiles around a common vertex.
    VertexStar,
}

#[derive(Debug, Clone, Copy)]
struct Arc {
    edge: usize,
    from: usize,
    to: usize,
}

#[derive(Debug)]
struct TileRec {
    layer: u32,
    edges: Vec<usize>,
}

#[derive(Debug)]
struct EdgeRec {
    ends: [usize; 2],
    tiles: [Option<usize>; 2],
}

#[derive(Debug, Default)]
struct VertRec {
    degree: u32,
}

pub struct CombinatorialMap {
    pq: SchlafliPair,
    tiles: Vec<TileRec>,
    edges: Vec<EdgeRec>,
    verts: Vec<VertRec>,
    /// Oriented perimeter cycle: `boundary[i].to == boundary[i+1].from`.
    boundary: Vec<Arc>,
    layer: u32,
}

impl CombinatorialMap {
    /// Build one of the canonical seeds. Layer index 0.
    pub fn seed(pq: SchlafliPair, kind: SeedKind) -> Result<Self, SimError> {
        if !pq.is_hyperbolic() {
            return Err(SimError::NotHyperbolic { pair: pq, curvature: pq.classify() });
        }
        let p = pq.p() as usize;
        let q = pq.q() as usize;
        let mut map = CombinatorialMap {
            pq,
            tiles: Vec::new(),
            edges: Vec::new(),
            verts: Vec::new(),
            boundary: Vec::new(),
            layer: 0,
        };
        match kind {
            SeedKind::SingleTile => {
                let vs: Vec<usize> = (0..p).map(|_| map.new_vertex()).collect();
                let mut tile_edges = Vec::with_capacity(p);
                for i in 0..p {
                    let (a, b) = (vs[i], vs[(i + 1) % p]);
                    let e = map.new_edge(a, b)?;
                    map.attach_tile_to_edge(e, 0)?;
                    map.boundary.push(Arc { edge: e, from: a, to: b });
                    tile_edges.push(e);
                }
                for &v in &vs {
                    map.verts[v].degree = 1;
                }
                map.tiles.push(TileRec { layer: 0, edges: tile_edges });
            }
            SeedKind::EdgePair => {
                let vs: Vec<usize> = (0..p).map(|_| map.new_vertex()).collect();
                let mut a_edges = Vec::with_capacity(p);
                for i in 0..p {
                    let e = map.new_edge(vs[i], vs[(i + 1) % p])?;
                    map.attach_tile_to_edge(e, 0)?;
                    a_edges.push(e);
                }
                let shared = a_edges[0]; // (vs[0], vs[1])
                map.tiles.push(TileRec { layer: 0, edges: a_edges.clone() });
                // second tile runs vs[1] -> vs[0] over the shared edge, then
                // back outside through p-2 fresh vertices
                let ws: Vec<usize> = (0..p - 2).map(|_| map.new_vertex()).collect();
                let outside: Vec<usize> = std::iter::once(vs[0])
                    .chain(ws.iter().copied())
                    .chain(std::iter::once(vs[1]))
                    .collect();
                let mut b_edges = vec![shared];
                map.attach_tile_to_edge(shared, 1)?;
                let mut b_arcs = Vec::new();
                for w in outside.windows(2) {
                    let e = map.new_edge(w[0], w[1])?;
                    map.attach_tile_to_edge(e, 1)?;
                    b_edges.push(e);
                    b_arcs.push(Arc { edge: e, from: w[0], to: w[1] });
                }
                map.tiles.push(TileRec { layer: 0, edges: b_edges });
                for &v in &vs {
                    map.verts[v].degree = 1;
                }
                for &w in &ws {
                    map.verts[w].degree = 1;
                }
                map.verts[vs[0]].degree = 2;
                map.verts[vs[1]].degree = 2;
                // perimeter: around tile A from vs[1], then around tile B
                for i in 1..p {
                    map.boundary.push(Arc {
                        edge: a_edges[i],
                        from: vs[i],
                        to: vs[(i + 1) % p],
                    });
                }
                map.boundary.extend(b_arcs);
            }
            SeedKind::VertexStar => {
                let center = map.new_vertex();
                let ring: Vec<usize> = (0..q).map(|_| map.new_vertex()).collect();
                let radial: Vec<usize> = (0..q)
                    .map(|i| map.new_edge(center, ring[i]))
                    .collect::<Result<_, _>>()?;
                map.verts[center].degree = q as u32;
                for i in 0..q {
                    let tile_id = i;
                    let next = (i + 1) % q;
                    let chain_mid: Vec<usize> = (0..p - 3).map(|_| map.new_vertex()).collect();
                    let chain: Vec<usize> = std::iter::once(ring[i])
                        .chain(chain_mid.iter().copied())
                        .chain(std::iter::once(ring[next]))
                        .collect();
                    let mut tile_edges = vec![radial[i]];
                    map.attach_tile_to_edge(radial[i], tile_id)?;
                    for w in chain.windows(2) {
                        let e = map.new_edge(w[0], w[1])?;
                        map.attach_tile_to_edge(e, tile_id)?;
                        tile_edges.push(e);
                        map.boundary.push(Arc { edge: e, from: w[0], to: w[1] });
                    }
                    tile_edges.push(radial[next]);
                    map.attach_tile_to_edge(radial[next], tile_id)?;
                    map.tiles.push(TileRec { layer: 0, edges: tile_edges });
                    for &v in &chain_mid {
                        map.verts[v].degree = 1;
                    }
                    map.verts[ring[i]].degree = 2;
                }
            }
        }
        Ok(map)
    }

    pub fn pq(&self) -> SchlafliPair {
        self.pq
    }

    pub fn layer(&self) -> u32 {
        self.layer
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn perimeter_len(&self) -> usize {
        self.boundary.len()
    }

    pub fn boundary_vertex_count(&self) -> usize {
        // each perimeter vertex appears exactly once as an arc origin
        self.boundary.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.verts.len() as i64 - self.edges.len() as i64 + self.tiles.len() as i64
    }

    fn new_vertex(&mut self) -> usize {
        self.verts.push(VertRec::default());
        self.verts.len() - 1
    }

    fn new_edge(&mut self, a: usize, b: usize) -> Result<usize, SimError> {
        if a == b {
            return Err(SimError::internal(format!("loop edge at vertex {a}")));
        }
        self.edges.push(EdgeRec { ends: [a, b], tiles: [None, None] });
        Ok(self.edges.len() - 1)
    }

    fn attach_tile_to_edge(&mut self, e: usize, t: usize) -> Result<(), SimError> {
        let rec = &mut self.edges[e];
        if rec.tiles[0].is_none() {
            rec.tiles[0] = Some(t);
        } else if rec.tiles[1].is_none() {
            rec.tiles[1] = Some(t);
        } else {
            return Err(SimError::internal(format!("edge {e} glued to a third tile {t}")));
        }
        Ok(())
    }

    /// Census of the tiles added in the current layer (for the seed, the
    /// seed tiles themselves). Dangling-edge classes recounted from the
    /// incidence structure.
    pub fn current_layer_census(&self) -> LayerCensus {
        let mut class_counts: BTreeMap<u64, u64> = BTreeMap::new();
        let mut new_tiles = 0u64;
        for t in self.tiles.iter().filter(|t| t.layer == self.layer) {
            new_tiles += 1;
            let dangling = t
                .edges
                .iter()
                .filter(|&&e| self.edges[e].tiles[1].is_none())
                .count() as u64;
            *class_counts.entry(dangling).or_insert(0) += 1;
        }
        LayerCensus {
            layer: self.layer,
            new_tiles: BigUint::from(new_tiles),
            class_counts: class_counts
                .into_iter()
                .map(|(k, v)| (k, BigUint::from(v)))
                .collect(),
            perimeter_edges: BigUint::from(self.boundary.len() as u64),
            cumulative_tiles: BigUint::from(self.tiles.len() as u64),
        }
    }

    /// Add every tile of the infinite tiling that shares at least one vertex
    /// with the current patch: one sweep of tile completion.
    ///
    /// The sweep walks the perimeter cycle. Around boundary vertex `v` with
    /// tile degree `d` there are `q - d` missing tiles forming a fan, and
    /// consecutive fans share their boundary tile, so the new tiles around
    /// the whole perimeter form one cyclic sequence separated by `q - d - 1`
    /// new "spoke" edges per vertex. Each new tile is glued along the run of
    /// old perimeter edges between its two bounding spokes (possibly none)
    /// and carries the rest of its edges outside as the new perimeter.
    pub fn grow_layer(&mut self) -> Result<LayerCensus, SimError> {
        let p = self.pq.p() as usize;
        let q = self.pq.q() as u32;
        let old = std::mem::take(&mut self.boundary);
        let m = old.len();
        if m < 3 {
            return Err(SimError::internal(format!("perimeter cycle of length {m}")));
        }

        let mut missing = Vec::with_capacity(m);
        for arc in &old {
            let d = self.verts[arc.from].degree;
            if d >= q {
                return Err(SimError::internal(format!(
                    "boundary vertex {} already saturated at degree {d}",
                    arc.from
                )));
            }
            missing.push(q - d);
        }

        #[derive(Clone, Copy)]
        enum Tok {
            Spoke(usize),
            OldArc(usize),
        }
        let spokes_total: usize = missing.iter().map(|&n| (n - 1) as usize).sum();
        if spokes_total == 0 {
            return Err(SimError::internal(
                "layer would close the patch: every boundary vertex is one tile short",
            ));
        }
        let mut toks = Vec::with_capacity(spokes_total + m);
        for (i, arc) in old.iter().enumerate() {
            for _ in 0..missing[i] - 1 {
                toks.push(Tok::Spoke(arc.from));
            }
            toks.push(Tok::OldArc(i));
        }
        let first_spoke = toks
            .iter()
            .position(|t| matches!(t, Tok::Spoke(_)))
            .expect("spokes_total > 0");
        toks.rotate_left(first_spoke);

        // one spec per new tile: the vertex of its opening spoke and the old
        // arcs it is glued along
        let mut specs: Vec<(usize, Vec<usize>)> = Vec::with_capacity(spokes_total);
        for tok in toks {
            match tok {
                Tok::Spoke(v) => specs.push((v, Vec::new())),
                Tok::OldArc(i) => {
                    specs.last_mut().expect("first token is a spoke").1.push(i)
                }
            }
        }

        // The final tile's outer path must close into the opening spoke's
        // outer vertex, which requires it to carry at least one dangling
        // edge; rotate the cyclic sequence to make that so.
        let last_with_dangling = specs
            .iter()
            .rposition(|s| p.checked_sub(s.1.len() + 2).is_some_and(|l| l > 0));
        let Some(last_with_dangling) = last_with_dangling else {
            return Err(SimError::internal(
                "no tile in the new layer carries a dangling edge",
            ));
        };
        let shift = (last_with_dangling + 1) % specs.len();
        specs.rotate_left(shift);

        let ntiles = specs.len();
        let new_layer = self.layer + 1;
        let opening_vertex = specs[0].0;
        let x0 = self.new_vertex();
        let spoke0 = self.new_edge(opening_vertex, x0)?;
        let mut cur_spoke = spoke0;
        let mut cur_x = x0;
        let mut class_counts: BTreeMap<u64, u64> = BTreeMap::new();
        let mut new_boundary: Vec<Arc> = Vec::new();

        for (j, (a, arcs)) in specs.iter().enumerate() {
            let c = arcs.len();
            let Some(dangling) = p.checked_sub(c + 2) else {
                return Err(SimError::internal(format!(
                    "tile glued along {c} edges of a {p}-gon"
                )));
            };
            let b = if c > 0 { old[*arcs.last().unwrap()].to } else { *a };
            if b != specs[(j + 1) % ntiles].0 {
                return Err(SimError::internal(
                    "fan walk out of step with the perimeter cycle",
                ));
            }
            let last = j + 1 == ntiles;
            let tile_id = self.tiles.len();

            for &ai in arcs {
                self.attach_tile_to_edge(old[ai].edge, tile_id)?;
            }

            let (end_spoke, x_end) = if last {
                if dangling == 0 {
                    return Err(SimError::internal(
                        "final tile carries no dangling edge after rotation",
                    ));
                }
                (spoke0, x0)
            } else if dangling == 0 {
                (self.new_edge(b, cur_x)?, cur_x)
            } else {
                let x = self.new_vertex();
                (self.new_edge(b, x)?, x)
            };

            // outer path cur_x -> ... -> x_end: the dangling edges
            let mut outer: Vec<Arc> = Vec::with_capacity(dangling);
            let mut prev = cur_x;
            for k in 0..dangling {
                let nxt = if k + 1 == dangling { x_end } else { self.new_vertex() };
                let e = self.new_edge(prev, nxt)?;
                outer.push(Arc { edge: e, from: prev, to: nxt });
                prev = nxt;
            }

            // p-gon edge cycle: glued run a..b, closing spoke, outer path
            // walked back, opening spoke
            let mut tile_edges: Vec<usize> = arcs.iter().map(|&ai| old[ai].edge).collect();
            tile_edges.push(end_spoke);
            tile_edges.extend(outer.iter().rev().map(|arc| arc.edge));
            tile_edges.push(cur_spoke);
            debug_assert_eq!(tile_edges.len(), p);

            self.attach_tile_to_edge(end_spoke, tile_id)?;
            for arc in &outer {
                self.attach_tile_to_edge(arc.edge, tile_id)?;
            }
            self.attach_tile_to_edge(cur_spoke, tile_id)?;

            // one new incident tile for each distinct vertex of the tile
            for &ai in arcs {
                self.verts[old[ai].from].degree += 1;
            }
            self.verts[b].degree += 1;
            self.verts[cur_x].degree += 1;
            for arc in &outer {
                self.verts[arc.to].degree += 1;
            }

            *class_counts.entry(dangling as u64).or_insert(0) += 1;
            new_boundary.extend(outer.iter().copied());
            self.tiles.push(TileRec { layer: new_layer, edges: tile_edges });
            cur_spoke = end_spoke;
            cur_x = x_end;
        }

        for (i, arc) in old.iter().enumerate() {
            let d = self.verts[arc.from].degree;
            if d != q {
                return Err(SimError::internal(format!(
                    "vertex {} finished the layer at degree {d}, expected {q}",
                    arc.from
                )));
            }
            if self.edges[arc.edge].tiles[1].is_none() {
                return Err(SimError::internal(format!(
                    "old perimeter edge {i} still dangling after the sweep"
                )));
            }
        }

        self.boundary = new_boundary;
        self.layer = new_layer;

        let census = self.current_layer_census();
        // cross-check the classes gathered during the sweep against the
        // recount from the incidence structure
        let swept: BTreeMap<u64, BigUint> = class_counts
            .into_iter()
            .map(|(k, v)| (k, BigUint::from(v)))
            .collect();
        if swept != census.class_counts {
            return Err(SimError::internal(
                "sweep census disagrees with the incidence recount",
            ));
        }
        Ok(census)
    }

    /// Full structural audit; `Err` always means a simulator bug.
    pub fn validate(&self) -> Result<(), SimError> {
        let p = self.pq.p() as usize;
        let q = self.pq.q() as u32;

        let mut degree = vec![0u32; self.verts.len()];
        for (ti, t) in self.tiles.iter().enumerate() {
            if t.edges.len() != p {
                return Err(SimError::internal(format!(
                    "tile {ti} has {} edges, expected {p}",
                    t.edges.len()
                )));
            }
            let mut vset: Vec<usize> = Vec::with_capacity(2 * p);
            for &e in &t.edges {
                let rec = self.edges.get(e).ok_or_else(|| {
                    SimError::internal(format!("tile {ti} references missing edge {e}"))
                })?;
                if !rec.tiles.contains(&Some(ti)) {
                    return Err(SimError::internal(format!(
                        "edge {e} does not list its tile {ti}"
                    )));
                }
                vset.extend_from_slice(&rec.ends);
            }
            vset.sort_unstable();
            vset.dedup();
            if vset.len() != p {
                return Err(SimError::internal(format!(
                    "tile {ti} has {} distinct vertices, expected {p}",
                    vset.len()
                )));
            }
            for v in vset {
                degree[v] += 1;
            }
        }

        let mut perimeter_edges = 0usize;
        for (ei, e) in self.edges.iter().enumerate() {
            if e.ends[0] == e.ends[1] {
                return Err(SimError::internal(format!("edge {ei} is a loop")));
            }
            match e.tiles {
                [None, _] => {
                    return Err(SimError::internal(format!("edge {ei} has no incident tile")))
                }
                [Some(a), Some(b)] if a == b => {
                    return Err(SimError::internal(format!(
                        "edge {ei} glued to tile {a} on both sides"
                    )))
                }
                [Some(_), None] => perimeter_edges += 1,
                _ => {}
            }
        }

        for (v, rec) in self.verts.iter().enumerate() {
            if rec.degree != degree[v] {
                return Err(SimError::internal(format!(
                    "vertex {v} records degree {}, recount gives {}",
                    rec.degree, degree[v]
                )));
            }
        }

        if self.boundary.len() != perimeter_edges {
            return Err(SimError::internal(format!(
                "boundary cycle length {} vs {perimeter_edges} perimeter edges",
                self.boundary.len()
            )));
        }
        let mut seen = vec![false; self.edges.len()];
        let mut on_boundary = vec![false; self.verts.len()];
        for (i, arc) in self.boundary.iter().enumerate() {
            let next = &self.boundary[(i + 1) % self.boundary.len()];
            if arc.to != next.from {
                return Err(SimError::internal("perimeter is not a single cycle"));
            }
            let e = &self.edges[arc.edge];
            if e.tiles[1].is_some() {
                return Err(SimError::internal(format!(
                    "interior edge {} sits on the boundary cycle",
                    arc.edge
                )));
            }
            if e.ends != [arc.from, arc.to] && e.ends != [arc.to, arc.from] {
                return Err(SimError::internal(format!(
                    "boundary arc {i} disagrees with edge {} endpoints",
                    arc.edge
                )));
            }
            if seen[arc.edge] {
                return Err(SimError::internal(format!(
                    "edge {} appears twice on the boundary",
                    arc.edge
                )));
            }
            seen[arc.edge] = true;
            on_boundary[arc.from] = true;
            on_boundary[arc.to] = true;
        }

        for (v, rec) in self.verts.iter().enumerate() {
            if on_boundary[v] {
                if rec.degree >= q {
                    return Err(SimError::internal(format!(
                        "boundary vertex {v} already at degree {}",
                        rec.degree
                    )));
                }
            } else if rec.degree != q {
                return Err(SimError::internal(format!(
                    "interior vertex {v} has degree {}, expected {q}",
                    rec.degree
                )));
            }
        }

        if self.euler_characteristic() != 1 {
            return Err(SimError::internal(format!(
                "Euler characteristic {} of a disk patch",
                self.euler_characteristic()
            )));
        }
        Ok(())
    }
}
