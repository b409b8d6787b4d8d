//! Parser and serializer round-trips for every file format.

use dualbar::{complex_io, diagram_io, field_io, image_io, CliError};
use dualbar_core::complex::ExtendedValue;
use dualbar_core::persistence::{Bar, Construction, Diagram};
use proptest::prelude::*;

#[test]
fn dense_image_round_trip() {
    let text = "# comment\ndims: 2 3\n1 2 3\n4 5 6\n";
    let image = image_io::parse_image("t", text).unwrap();
    assert_eq!(image.shape(), &[2, 3]);
    assert_eq!(image.get(&[1, 2]), 6.0);
    let echoed = image_io::parse_image("t", &image_io::serialize_image(&image)).unwrap();
    assert_eq!(echoed.shape(), image.shape());
    assert_eq!(echoed.values(), image.values());
}

#[test]
fn pgm_and_dense_agree() {
    let dense = image_io::parse_image("t", "dims: 2 2\n10 20\n30 40\n").unwrap();
    let pgm = image_io::parse_image("t", "P2\n2 2 # width height\n255\n10 20 30 40\n").unwrap();
    assert_eq!(dense.shape(), pgm.shape());
    assert_eq!(dense.values(), pgm.values());
}

#[test]
fn image_errors_name_the_line() {
    let err = image_io::parse_image("img.txt", "dims: 2 2\n1 2\nthree 4\n").unwrap_err();
    assert_eq!(err.to_string(), "img.txt:3: bad value \"three\"");
    assert_eq!(err.exit_code(), 2);

    let err = image_io::parse_image("img.txt", "1 2 3\n").unwrap_err();
    assert!(err.to_string().contains("dims:"));

    let err = image_io::parse_image("img.pgm", "P2\n2 2\n70000\n1 2 3 4\n").unwrap_err();
    assert!(err.to_string().contains("maxval"));
}

#[test]
fn diagram_round_trip_with_infinite_endpoints() {
    let mut diagram = Diagram::new(
        2,
        Construction::DualT,
        vec![
            Bar::essential(2, ExtendedValue::finite(-1.0)),
            Bar::new(1, ExtendedValue::NegInf, ExtendedValue::finite(-3.5)),
            Bar::finite(0, -9.0, -8.0),
        ],
    );
    diagram.reduced = true;
    let text = diagram_io::serialize_diagram(&diagram);
    let echoed = diagram_io::parse_diagram("t", &text).unwrap();
    assert_eq!(echoed.ambient_dim, 2);
    assert_eq!(echoed.construction, Construction::DualT);
    assert!(echoed.reduced);
    assert!(echoed.same_bars(&diagram));
    assert_eq!(diagram_io::serialize_diagram(&echoed), text);
}

#[test]
fn diagram_parse_rejects_malformed_documents() {
    assert!(matches!(
        diagram_io::parse_diagram("t", "{\"d\": 2,").unwrap_err(),
        CliError::Parse { .. }
    ));
    let text = r#"{"d": 2, "construction": "W", "reduced": false, "bars": []}"#;
    assert!(diagram_io::parse_diagram("t", text)
        .unwrap_err()
        .to_string()
        .contains("unknown construction"));
    let text = r#"{"d": 2, "construction": "V", "reduced": false,
                   "bars": [{"dim": 0, "birth": 5, "death": 3}]}"#;
    assert!(diagram_io::parse_diagram("t", text)
        .unwrap_err()
        .to_string()
        .contains("exceeds"));
}

#[test]
fn complex_round_trip() {
    let text = "# two cells\nv 0 1.5\nw 0 -inf\ne 1 inf v w\n";
    let complex = complex_io::parse_complex("t", text, None).unwrap();
    assert_eq!(complex.len(), 3);
    assert_eq!(complex.ambient_dim(), 1);
    let echoed =
        complex_io::parse_complex("t", &complex_io::serialize_complex(&complex), Some(1)).unwrap();
    assert_eq!(echoed.cells(), complex.cells());
}

#[test]
fn complex_parse_surfaces_validation() {
    let err = complex_io::parse_complex("t", "e 1 3 v w\n", None).unwrap_err();
    assert_eq!(err.exit_code(), 1);
    assert!(err.to_string().contains('v'));
}

#[test]
fn field_round_trip() {
    let field = field_io::parse_field("t", "# pairs\nv2 e12\n\nv3 e23\n").unwrap();
    assert_eq!(field.len(), 2);
    let echoed = field_io::parse_field("t", &field_io::serialize_field(&field)).unwrap();
    assert_eq!(echoed.pairs(), field.pairs());
    assert!(field_io::parse_field("t", "v2 e12 extra\n").is_err());
    assert!(field_io::parse_field("t", "").unwrap().pairs().is_empty());
}

fn arbitrary_endpoint() -> impl Strategy<Value = ExtendedValue> {
    prop_oneof![
        Just(ExtendedValue::NegInf),
        Just(ExtendedValue::PosInf),
        (-1e6..1e6f64).prop_map(ExtendedValue::finite),
    ]
}

proptest! {
    #[test]
    fn diagram_serialization_round_trips(
        d in 0usize..5,
        reduced in any::<bool>(),
        endpoints in proptest::collection::vec((0usize..4, arbitrary_endpoint(), arbitrary_endpoint()), 0..12),
    ) {
        let bars: Vec<Bar> = endpoints
            .into_iter()
            .map(|(dim, a, b)| Bar::new(dim, a.min(b), a.max(b)))
            .collect();
        let mut diagram = Diagram::new(d, Construction::Abstract, bars);
        diagram.reduced = reduced;
        let text = diagram_io::serialize_diagram(&diagram);
        let echoed = diagram_io::parse_diagram("t", &text).unwrap();
        prop_assert_eq!(echoed.ambient_dim, diagram.ambient_dim);
        prop_assert_eq!(echoed.reduced, diagram.reduced);
        prop_assert!(echoed.same_bars(&diagram));
        prop_assert_eq!(diagram_io::serialize_diagram(&echoed), text);
    }
}

