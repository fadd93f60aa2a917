use std::collections::BTreeMap;

use omega_cli::document::{CacheReport, Field, Output, ResultDocument, Status};
use proptest::prelude::*;

fn arb_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        (any::<i64>(), 1i64..1000).prop_map(|(p, q)| Field::Rational(format!("{p}/{q}"))),
        proptest::collection::vec(any::<i32>().prop_map(|x| x.to_string()), 0..6).prop_map(Field::Polynomial),
        any::<bool>().prop_map(Field::Bool),
        any::<i64>().prop_map(Field::Integer),
        proptest::collection::vec(any::<u32>(), 0..5).prop_map(Field::Exponents),
        ".*".prop_map(Field::Text),
    ]
}

fn arb_doc() -> impl Strategy<Value = ResultDocument> {
    let output = (".*", proptest::collection::btree_map("[a-z_]{1,8}", arb_field(), 0..4))
        .prop_map(|(label, fields)| Output { label, fields });
    (
        proptest::collection::vec(".*", 0..5),
        proptest::collection::btree_map("[a-z]{1,6}", ".*", 0..4),
        proptest::collection::vec(output, 0..4),
        prop_oneof![Just(Status::Ok), Just(Status::Mismatch), Just(Status::InvalidInput), Just(Status::Error)],
        proptest::option::of(".*"),
        any::<u64>(),
        (any::<bool>(), proptest::option::of("[a-z/]{1,12}"), any::<[u64; 5]>()),
    )
        .prop_map(|(command, inputs, outputs, status, message, wall_time_us, (enabled, path, n))| ResultDocument {
            command,
            inputs: inputs.into_iter().collect::<BTreeMap<_, _>>(),
            outputs,
            status,
            message,
            wall_time_us,
            cache: CacheReport { enabled, path, loaded: n[0], entries: n[1], hits: n[2], misses: n[3], appended: n[4] },
        })
}

proptest! {
    #[test]
    fn json_round_trip(doc in arb_doc()) {
        let back = ResultDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(back, doc);
    }
}
