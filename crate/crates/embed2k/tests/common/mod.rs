//! Shared generators for the integration suites: deterministic random
//! complexes, planar graphs with a construction certificate, and random
//! matrices.

use embed2k::complex::SimplicialComplex;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random 1-complex with at most `max_edges` edges on at most `max_vertices`
/// vertices. Never empty.
pub fn random_graph(rng: &mut ChaCha8Rng, max_vertices: usize, max_edges: usize) -> SimplicialComplex {
    loop {
        let v = rng.gen_range(2..=max_vertices);
        let mut all: Vec<(usize, usize)> = (0..v)
            .flat_map(|a| ((a + 1)..v).map(move |b| (a, b)))
            .collect();
        all.shuffle(rng);
        let e = rng.gen_range(1..=max_edges.min(all.len()));
        let faces = all[..e].iter().map(|&(a, b)| vec![a, b]).collect();
        let c = SimplicialComplex::new(1, faces).expect("valid");
        if !c.is_empty() {
            return c;
        }
    }
}

/// A planar graph together with its construction certificate.
///
/// Built as a stacked triangulation: start from a triangle and repeatedly
/// place a new vertex inside a random face, joining it to the three corners.
/// The face list is maintained throughout, so planarity holds by
/// construction; the Euler count V - E + F = 2 is the checkable certificate.
pub struct PlanarGraph {
    pub complex: SimplicialComplex,
    pub vertices: usize,
    pub edges: usize,
}

pub fn random_planar(rng: &mut ChaCha8Rng, extra_vertices: usize, drop_edges: usize) -> PlanarGraph {
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (1, 2)];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];
    let mut next = 3;
    for _ in 0..extra_vertices {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(f);
        for x in [a, b, c] {
            edges.push((x.min(next), x.max(next)));
        }
        faces.push([a, b, next]);
        faces.push([a, c, next]);
        faces.push([b, c, next]);
        next += 1;
    }
    // Certificate of the construction: Euler's relation for the maintained
    // embedding (bounded faces + the outer face).
    let v = next;
    let e = edges.len();
    let f = faces.len() + 1;
    assert_eq!(v + f, e + 2, "stacked triangulation must satisfy Euler's relation");

    // Subgraphs of a planar graph are planar.
    edges.shuffle(rng);
    let keep = edges.len().saturating_sub(drop_edges).max(1);
    let complex = SimplicialComplex::new(
        1,
        edges[..keep].iter().map(|&(a, b)| vec![a, b]).collect(),
    )
    .expect("valid");
    PlanarGraph { complex, vertices: v, edges: e }
}
