use proptest::prelude::*;
use vacillating::diagrams::SetPartitionDiagram;
use vacillating::growth::{growth_diagram, reconstruct, staircase_paths};
use vacillating::{di_insert, di_invert, vac_insert, vac_invert};

fn diagram() -> impl Strategy<Value = SetPartitionDiagram> {
    (1usize..=6).prop_flat_map(|k| {
        proptest::collection::vec(0usize..2 * k, 2 * k).prop_map(move |raw| {
            let mut labels = Vec::with_capacity(2 * k);
            let mut next = 0;
            for r in raw {
                let block = r.min(next);
                if block == next {
                    next += 1;
                }
                labels.push(block);
            }
            let mut blocks = vec![Vec::new(); next];
            for (i, b) in labels.into_iter().enumerate() {
                blocks[b].push(i + 1);
            }
            SetPartitionDiagram::from_standard_blocks(k, blocks).unwrap()
        })
    })
}

fn sequence() -> impl Strategy<Value = (Vec<u32>, u32)> {
    (1usize..=5, 0u32..4).prop_flat_map(|(k, extra)| {
        let n = 2 * k as u32 + extra;
        (proptest::collection::vec(1..=n, k), Just(n))
    })
}

proptest! {
    #[test]
    fn insertion_inverts(d in diagram()) {
        let (p, q) = vac_insert(&d);
        prop_assert_eq!(p.final_shape(), q.final_shape());
        prop_assert_eq!(p.final_shape().size() as usize, d.propagating_number());
        prop_assert_eq!(vac_invert(&p, &q).unwrap(), d);
    }

    #[test]
    fn flip_swaps_paths(d in diagram()) {
        let (p, q) = vac_insert(&d);
        prop_assert_eq!(vac_insert(&d.flip()), (q, p));
    }

    #[test]
    fn growth_agrees_with_insertion(d in diagram()) {
        let g = growth_diagram(&d);
        let (p, q) = staircase_paths(&g).unwrap();
        prop_assert_eq!((p.clone(), q.clone()), vac_insert(&d));
        prop_assert_eq!(reconstruct(&p, &q).unwrap(), d);
    }

    #[test]
    fn text_form_round_trips(d in diagram()) {
        prop_assert_eq!(d.to_string().parse::<SetPartitionDiagram>().unwrap(), d.clone());
        let json = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<SetPartitionDiagram>(&json).unwrap(), d);
    }

    #[test]
    fn di_inverts((seq, n) in sequence()) {
        let (t, p) = di_insert(&seq, n).unwrap();
        prop_assert_eq!(t.len() as u32, n);
        prop_assert_eq!(di_invert(&t, &p).unwrap(), seq);
    }
}
