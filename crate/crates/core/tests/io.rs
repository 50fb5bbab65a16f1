use listcol::gen::{generate, random_lists, rng, GenParams};
use listcol::io::{parse_certificate, parse_graph, parse_instance, write_certificate, write_graph, write_instance};
use listcol::{Colouring, Graph, Instance, VertexId};
use proptest::prelude::*;

fn same_graph(a: &Graph, b: &Graph) -> bool {
    a.vertices().eq(b.vertices()) && a.edges().eq(b.edges())
}

proptest! {
    #[test]
    fn instances_round_trip(seed in 0u64..100_000, n in 1usize..30, dense in 0.0f64..0.6, k in 1u8..=5, min in 0usize..=3) {
        let g = generate(&GenParams::new(n, dense, vec![], false, seed)).unwrap();
        let mut r = rng(seed);
        let lists = random_lists(&g, k, min.min(k as usize), &mut r);
        let inst = Instance::with_lists(g.clone(), lists, k).unwrap();
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap().into_instance(3).unwrap();
        prop_assert!(same_graph(back.graph(), &g));
        prop_assert_eq!(back.k(), k);
        for v in g.vertices() {
            prop_assert_eq!(back.list(v), inst.list(v));
        }
        prop_assert_eq!(write_instance(&back), text);
        prop_assert!(same_graph(&parse_graph(&write_graph(&g)).unwrap(), &g));
    }

    #[test]
    fn certificates_round_trip(colours in proptest::collection::vec(1u8..=5, 0..40)) {
        let mut col = Colouring::new();
        for (i, &c) in colours.iter().enumerate() {
            col.set(VertexId(i as u32), c);
        }
        prop_assert_eq!(parse_certificate(&write_certificate(&col)).unwrap(), col);
    }
}

#[test]
fn malformed_files_are_rejected() {
    for text in ["", "e 1 2\n", "p 2 1\ne 1 3\n", "p 2 1\np 2 1\n", "p 2 0\nl 1 7\n", "p x 1\n", "p 2 1\ne 1 1\n"] {
        let parsed = parse_instance(text).and_then(|f| f.into_instance(3));
        assert!(parsed.is_err(), "{text:?}");
    }
}
