use mixvol::cone::{af_polytope, enumerate_vertices, vertex_document, VertexDocument};
use mixvol::index::{act, Configuration, Permutation, Scale};
use mixvol::published::af3_representatives;
use mixvol::rational;

const GOLDEN: &str = include_str!("../data/af3_vertices.json");

#[test]
fn engine_output_matches_golden_bytes() {
    let vs = enumerate_vertices(&af_polytope(3)).unwrap();
    assert_eq!(vertex_document(3, &vs.vertices).unwrap(), GOLDEN);
}

#[test]
fn golden_is_the_union_of_published_orbits() {
    let doc: VertexDocument = serde_json::from_str(GOLDEN).unwrap();
    assert_eq!((doc.d, doc.count, doc.vertices.len()), (3, 24, 24));
    let golden: Vec<Configuration> = doc
        .vertices
        .iter()
        .map(|row| {
            let values = row.iter().map(|s| rational::parse(s).unwrap()).collect();
            Configuration::from_values(3, 3, Scale::Logarithmic, values).unwrap()
        })
        .collect();
    let mut expected = Vec::new();
    for v in af3_representatives() {
        for sigma in Permutation::all(3) {
            let img = act(&sigma, &v).unwrap();
            if !expected.contains(&img) {
                expected.push(img);
            }
        }
    }
    assert_eq!(expected.len(), 24);
    assert!(expected.iter().all(|c| golden.contains(c)));
}
