//! The graph catalog, bipartitions, text round trips and subgraph search.

use distgraph::graphs::{bipartition, contains_induced_subgraph, cycle_graph, hypercube_graph, path_graph, recognize, Graph, SubgraphSearch};

fn main() {
    let q3 = hypercube_graph(3).unwrap();
    let b = bipartition(&q3).unwrap();
    println!("Q3: {} vertices, {} edges, sides {:?} / {:?}", q3.vertex_count(), q3.edge_count(), b.part_x, b.part_y);

    let c6 = cycle_graph(6).unwrap();
    let found = SubgraphSearch::new().run(&q3, &c6);
    if let Some(e) = found.witness() {
        let image: Vec<usize> = (0..6).map(|v| e.image(v)).collect();
        println!("C6 sits inside Q3 at {image:?}");
    }
    let p3 = path_graph(3).unwrap();
    println!("induced P3 in C6: {}", contains_induced_subgraph(&c6, &p3).is_found());
    println!("C5 in Q3: {:?}", SubgraphSearch::new().run(&q3, &cycle_graph(5).unwrap()));

    let text = "# a relabeled 4-cycle\n4 4\n0 2\n1 2\n1 3\n0 3\n";
    let g = Graph::from_text(text).unwrap();
    println!("parsed graph recognized as {:?}", recognize(&g).map(|c| c.to_string()));
    print!("{}", g.to_text());
}
