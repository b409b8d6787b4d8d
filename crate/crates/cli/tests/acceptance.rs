//! The release gate: one test per shipped guarantee, each printing a
//! PASS/FAIL line. Golden values come from the worked examples in the
//! fixtures; randomized checks regenerate their inputs from fixed seeds.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use dualbar_core::complex::{CellId, ExtendedValue, FilteredComplex};
use dualbar_core::cubical::{
    build_t, build_v, default_pad_value, negate, pad, ImageArray,
};
use dualbar_core::dualize::{compactify_t, dual_complex};
use dualbar_core::morse::{
    build_gradient, critical_cells, dual_field, morse_complex, validate_field,
};
use dualbar_core::persistence::{
    compute_barcode, counting_identity_holds, drop_sentinel, reduce_diagram, Bar, Diagram,
};
use dualbar_core::transform::{convert_t_to_v, convert_v_to_t, dual_barcode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: usize, body: impl FnOnce() + UnwindSafe) {
    let result = catch_unwind(body);
    println!("criterion {n}: {}", if result.is_ok() { "PASS" } else { "FAIL" });
    if let Err(panic) = result {
        resume_unwind(panic);
    }
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn sample_image() -> ImageArray {
    ImageArray::new(vec![3, 3], vec![5.0, 1.0, 6.0, 2.0, 9.0, 4.0, 8.0, 3.0, 7.0]).unwrap()
}

fn cube() -> FilteredComplex {
    dualbar::complex_io::read_complex(&fixture("cube.cplx"), Some(2)).unwrap()
}

fn bars(spec: &[(usize, f64, f64)], essential: &[(usize, f64)]) -> Vec<Bar> {
    let mut bars: Vec<Bar> = spec
        .iter()
        .map(|&(dim, b, d)| Bar::finite(dim, b, d))
        .collect();
    bars.extend(
        essential
            .iter()
            .map(|&(dim, b)| Bar::essential(dim, ExtendedValue::finite(b))),
    );
    bars.sort();
    bars
}

fn dual_pipeline_diagram() -> Diagram {
    let image = sample_image();
    let sentinel = default_pad_value(&image);
    let diagram = compute_barcode(&build_t(&pad(&negate(&image), -sentinel))).unwrap();
    drop_sentinel(&diagram, sentinel).unwrap()
}

fn random_image(rng: &mut ChaCha8Rng, max_extent: usize, d: usize) -> ImageArray {
    let shape: Vec<usize> = (0..d).map(|_| rng.gen_range(1..=max_extent)).collect();
    let len = shape.iter().product();
    let values: Vec<f64> = (0..len).map(|_| rng.gen_range(1..=99) as f64).collect();
    ImageArray::new(shape, values).unwrap()
}

/// The images exercised by the randomized two-construction check; the
/// counting-identity criterion re-walks the same sequence.
fn bijection_images() -> Vec<ImageArray> {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let mut images: Vec<ImageArray> = (0..200).map(|_| random_image(&mut rng, 8, 2)).collect();
    images.extend((0..50).map(|_| random_image(&mut rng, 4, 3)));
    images
}

fn sphere_complexes() -> Vec<(FilteredComplex, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    (0..50)
        .map(|round| {
            let d = if round % 3 == 2 { 3 } else { 2 };
            let image = random_image(&mut rng, 4, d);
            let cap = ExtendedValue::finite(default_pad_value(&image));
            (compactify_t(&build_t(&image), cap), d)
        })
        .collect()
}

fn greedy_complexes() -> Vec<FilteredComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    (0..100)
        .map(|round| {
            let d = if round % 4 == 3 { 3 } else { 2 };
            let image = random_image(&mut rng, if d == 2 { 5 } else { 3 }, d);
            if round % 2 == 0 {
                build_v(&image)
            } else {
                build_t(&image)
            }
        })
        .collect()
}

fn check_both_bijections(image: &ImageArray) {
    let d = image.dim();
    let sentinel = default_pad_value(image);
    let direct = |use_t: bool| {
        let padded = pad(&negate(image), -sentinel);
        let complex = if use_t { build_t(&padded) } else { build_v(&padded) };
        drop_sentinel(
            &reduce_diagram(&compute_barcode(&complex).unwrap()).unwrap(),
            sentinel,
        )
        .unwrap()
    };
    let from_v = convert_v_to_t(&compute_barcode(&build_v(image)).unwrap(), d).unwrap();
    assert!(from_v.same_bars(&direct(true)));
    let from_t = convert_t_to_v(&compute_barcode(&build_t(image)).unwrap(), d).unwrap();
    assert!(from_t.same_bars(&direct(false)));
}

#[test]
fn criterion_01_golden_v_barcode() {
    report(1, || {
        let image = sample_image();
        let start = Instant::now();
        let diagram = compute_barcode(&build_v(&image)).unwrap();
        let elapsed = start.elapsed();
        let expected = bars(
            &[(0, 2.0, 5.0), (0, 3.0, 7.0), (0, 4.0, 6.0), (1, 8.0, 9.0)],
            &[(0, 1.0)],
        );
        assert_eq!(diagram.sorted_bars(), expected);
        assert!(elapsed.as_millis() < 10, "took {elapsed:?}");
    });
}

#[test]
fn criterion_02_golden_t_barcode() {
    report(2, || {
        let diagram = compute_barcode(&build_t(&sample_image())).unwrap();
        assert_eq!(diagram.sorted_bars(), bars(&[(1, 4.0, 9.0)], &[(0, 1.0)]));
    });
}

#[test]
fn criterion_03_golden_dual_pipeline() {
    report(3, || {
        let mut expected = vec![
            Bar::new(0, ExtendedValue::NegInf, ExtendedValue::PosInf),
            Bar::finite(0, -9.0, -8.0),
            Bar::new(1, ExtendedValue::NegInf, ExtendedValue::finite(-1.0)),
            Bar::finite(1, -5.0, -2.0),
            Bar::finite(1, -7.0, -3.0),
            Bar::finite(1, -6.0, -4.0),
        ];
        expected.sort();
        assert_eq!(dual_pipeline_diagram().sorted_bars(), expected);
    });
}

#[test]
fn criterion_04_conversion_matches_pipeline() {
    report(4, || {
        let v_diagram = compute_barcode(&build_v(&sample_image())).unwrap();
        let converted = convert_v_to_t(&v_diagram, 2).unwrap();
        let reduced = reduce_diagram(&dual_pipeline_diagram()).unwrap();
        assert_eq!(converted.sorted_bars(), reduced.sorted_bars());
    });
}

#[test]
fn criterion_05_cube_duality() {
    report(5, || {
        let cube = cube();
        let primal = compute_barcode(&cube).unwrap();
        assert_eq!(
            primal.sorted_bars(),
            bars(&[(1, 6.0, 7.0)], &[(0, 1.0), (2, 8.0)])
        );
        let dual = compute_barcode(&dual_complex(&cube, 2).unwrap()).unwrap();
        assert_eq!(
            dual.sorted_bars(),
            bars(&[(0, -7.0, -6.0)], &[(0, -8.0), (2, -1.0)])
        );
        assert!(dual_barcode(&primal, 2).unwrap().same_bars(&dual));
        assert!(dual_barcode(&dual, 2).unwrap().same_bars(&primal));
    });
}

#[test]
fn criterion_06_randomized_bijections() {
    report(6, || {
        let start = Instant::now();
        for image in &bijection_images() {
            check_both_bijections(image);
        }
        let elapsed = start.elapsed();
        assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    });
}

#[test]
fn criterion_07_randomized_sphere_duality() {
    report(7, || {
        for (sphere, d) in &sphere_complexes() {
            let lhs = dual_barcode(&compute_barcode(sphere).unwrap(), *d).unwrap();
            let rhs = compute_barcode(&dual_complex(sphere, *d).unwrap()).unwrap();
            assert!(lhs.same_bars(&rhs));
        }
    });
}

#[test]
fn criterion_08_morse_machinery() {
    report(8, || {
        let cube = cube();
        let field = dualbar::field_io::read_field(&fixture("cube_field.vf")).unwrap();
        assert!(validate_field(&field, &cube).is_empty());

        let critical = critical_cells(&field, &cube).unwrap();
        let expected: Vec<CellId> = ["a", "b", "c", "d"].map(CellId::from).into();
        assert_eq!(critical, expected);

        let morse = morse_complex(&field, &cube).unwrap();
        let boundary = |id: &str| -> BTreeSet<String> {
            morse
                .get(&CellId::from(id))
                .unwrap()
                .boundary
                .iter()
                .map(|c| c.as_str().to_string())
                .collect()
        };
        assert!(boundary("b").is_empty());
        assert_eq!(boundary("c"), BTreeSet::from(["b".to_string()]));
        assert_eq!(boundary("d"), BTreeSet::from(["b".to_string()]));
        assert!(compute_barcode(&morse)
            .unwrap()
            .same_bars(&compute_barcode(&cube).unwrap()));

        let dual = dual_complex(&cube, 2).unwrap();
        let flipped = dual_field(&field, &cube, 2).unwrap();
        let dual_critical = critical_cells(&flipped, &dual).unwrap();
        let reversed: Vec<CellId> = expected.into_iter().rev().collect();
        assert_eq!(dual_critical, reversed);

        for complex in &greedy_complexes() {
            let field = build_gradient(complex).unwrap();
            assert!(validate_field(&field, complex).is_empty());
            let morse = morse_complex(&field, complex).unwrap();
            assert!(compute_barcode(&morse)
                .unwrap()
                .same_bars(&compute_barcode(complex).unwrap()));
        }
    });
}

#[test]
fn criterion_09_counting_identity() {
    report(9, || {
        for image in &bijection_images() {
            let sentinel = default_pad_value(image);
            let padded = pad(&negate(image), -sentinel);
            for complex in [
                build_v(image),
                build_t(image),
                build_v(&padded),
                build_t(&padded),
            ] {
                assert!(counting_identity_holds(&complex).unwrap());
            }
        }
        for (sphere, _) in &sphere_complexes() {
            assert!(counting_identity_holds(sphere).unwrap());
        }
        for complex in &greedy_complexes() {
            assert!(counting_identity_holds(complex).unwrap());
        }
    });
}

#[test]
fn criterion_10_byte_identical_outputs() {
    report(10, || {
        let runs: Vec<Vec<String>> = vec![
            vec!["barcode".into(), fixture("sample3x3.txt"), "--construction".into(), "V".into()],
            vec!["barcode".into(), fixture("sample3x3.txt"), "--construction".into(), "T".into()],
            vec![
                "barcode".into(),
                fixture("sample3x3.txt"),
                "--construction".into(),
                "T".into(),
                "--dual".into(),
            ],
            vec![
                "convert".into(),
                fixture("sample3x3_v.json"),
                "--direction".into(),
                "v-to-t".into(),
                "--d".into(),
                "2".into(),
            ],
            vec![
                "morse".into(),
                fixture("cube.cplx"),
                "--field".into(),
                fixture("cube_field.vf"),
                "--action".into(),
                "reduce".into(),
            ],
            vec!["dualize".into(), fixture("cube.cplx"), "--d".into(), "2".into()],
        ];
        for args in runs {
            let run = || {
                let out = Command::new(env!("CARGO_BIN_EXE_dualbar"))
                    .args(&args)
                    .output()
                    .unwrap();
                assert!(out.status.success(), "args {args:?}");
                out.stdout
            };
            let first = run();
            assert!(!first.is_empty());
            assert_eq!(first, run(), "args {args:?}");
        }
    });
}
