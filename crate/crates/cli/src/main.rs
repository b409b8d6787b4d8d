use clap::{Parser, Subcommand, ValueEnum};
use dualbar::{complex_io, diagram_io, field_io, image_io, write_output, CliError};
use dualbar_core::cubical::{build_t, build_v, default_pad_value, negate, pad, ImageArray};
use dualbar_core::dualize::dual_complex;
use dualbar_core::morse::{
    build_gradient, critical_cells, dual_field, morse_complex, validate_field,
};
use dualbar_core::persistence::{
    compute_barcode_with, drop_sentinel, reduce_diagram, Bar, Construction, Diagram,
    ReductionOptions,
};
use dualbar_core::transform::{convert_t_to_v, convert_v_to_t, invert_conversion};
use dualbar_core::FilteredComplex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "dualbar",
    version,
    about = "Persistence barcodes of greyscale images under the T- and V-constructions, \
             with the duality conversions between them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionArg {
    #[value(name = "V", alias = "v")]
    V,
    #[value(name = "T", alias = "t")]
    T,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    VToT,
    TToV,
    Invert,
}

#[derive(Clone, Copy, ValueEnum)]
enum MorseAction {
    Validate,
    Dualize,
    Critical,
    Reduce,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the barcode of an image file
    Barcode {
        image: String,
        #[arg(long, value_enum)]
        construction: ConstructionArg,
        /// Compute the barcode of the padded, negated image instead,
        /// translating the sentinel into infinite endpoints
        #[arg(long)]
        dual: bool,
        /// Remove the everlasting connected component before output
        #[arg(long)]
        reduced: bool,
        /// Padding sentinel; defaults to max absolute value plus one
        #[arg(long)]
        pad_value: Option<f64>,
        /// Keep pairs whose birth and death values coincide
        #[arg(long)]
        keep_zero_bars: bool,
        #[arg(long)]
        output: Option<String>,
    },
    /// Convert a diagram file between the two constructions
    Convert {
        diagram: String,
        #[arg(long, value_enum)]
        direction: Direction,
        /// Ambient dimension of the originating image
        #[arg(long)]
        d: usize,
        #[arg(long)]
        output: Option<String>,
    },
    /// Check both barcode bijections on an image by direct double computation
    Verify {
        image: String,
        /// Expected image dimension; mismatch is an error
        #[arg(long)]
        d: Option<usize>,
        /// Also check randomly generated images of the same dimension
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write the dual of an abstract complex file
    Dualize {
        complex: String,
        /// Top dimension of the complex
        #[arg(long)]
        d: usize,
        #[arg(long)]
        output: Option<String>,
    },
    /// Discrete vector field operations on a complex or image file
    Morse {
        /// Abstract complex file, or an image (built with --construction)
        input: String,
        /// Vector field file; omitted, a greedy filtered field is built
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum)]
        action: MorseAction,
        /// Top dimension, required by the dualize action
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_enum, default_value = "V")]
        construction: ConstructionArg,
        #[arg(long)]
        output: Option<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli.command) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Barcode {
            image,
            construction,
            dual,
            reduced,
            pad_value,
            keep_zero_bars,
            output,
        } => cmd_barcode(
            &image,
            construction,
            dual,
            reduced,
            pad_value,
            keep_zero_bars,
            output.as_deref(),
        ),
        Command::Convert {
            diagram,
            direction,
            d,
            output,
        } => cmd_convert(&diagram, direction, d, output.as_deref()),
        Command::Verify { image, d, seed } => cmd_verify(&image, d, seed),
        Command::Dualize { complex, d, output } => cmd_dualize(&complex, d, output.as_deref()),
        Command::Morse {
            input,
            field,
            action,
            d,
            construction,
            output,
        } => cmd_morse(&input, field.as_deref(), action, d, construction, output.as_deref()),
    }
}

fn build(image: &ImageArray, construction: ConstructionArg) -> FilteredComplex {
    match construction {
        ConstructionArg::V => build_v(image),
        ConstructionArg::T => build_t(image),
    }
}

fn cmd_barcode(
    image_path: &str,
    construction: ConstructionArg,
    dual: bool,
    reduced: bool,
    pad_value: Option<f64>,
    keep_zero_bars: bool,
    output: Option<&str>,
) -> Result<(), CliError> {
    let image = image_io::read_image(image_path)?;
    let options = ReductionOptions { keep_zero_bars };
    let mut diagram = if dual {
        let sentinel = pad_value.unwrap_or_else(|| default_pad_value(&image));
        let padded = pad(&negate(&image), -sentinel);
        let mut diagram = compute_barcode_with(&build(&padded, construction), options)
            .map_err(CliError::invalid)?;
        if reduced {
            diagram = reduce_diagram(&diagram).map_err(CliError::invalid)?;
        }
        drop_sentinel(&diagram, sentinel).map_err(CliError::invalid)?
    } else {
        let mut diagram =
            compute_barcode_with(&build(&image, construction), options).map_err(CliError::invalid)?;
        if reduced {
            diagram = reduce_diagram(&diagram).map_err(CliError::invalid)?;
        }
        diagram
    };
    diagram.construction = match (construction, dual) {
        (ConstructionArg::V, false) => Construction::V,
        (ConstructionArg::T, false) => Construction::T,
        (ConstructionArg::V, true) => Construction::DualV,
        (ConstructionArg::T, true) => Construction::DualT,
    };
    write_output(output, &diagram_io::serialize_diagram(&diagram))
}

fn cmd_convert(
    diagram_path: &str,
    direction: Direction,
    d: usize,
    output: Option<&str>,
) -> Result<(), CliError> {
    let diagram = diagram_io::read_diagram(diagram_path)?;
    let converted = match direction {
        Direction::VToT => convert_v_to_t(&diagram, d),
        Direction::TToV => convert_t_to_v(&diagram, d),
        Direction::Invert => invert_conversion(&diagram, d),
    }
    .map_err(CliError::invalid)?;
    write_output(output, &diagram_io::serialize_diagram(&converted))
}

/// The right-hand side of either bijection, computed from scratch.
fn direct_dual_diagram(image: &ImageArray, construction: ConstructionArg) -> Result<Diagram, CliError> {
    let sentinel = default_pad_value(image);
    let padded = pad(&negate(image), -sentinel);
    let diagram = compute_barcode_with(&build(&padded, construction), ReductionOptions::default())
        .map_err(CliError::invalid)?;
    let diagram = reduce_diagram(&diagram).map_err(CliError::invalid)?;
    drop_sentinel(&diagram, sentinel).map_err(CliError::invalid)
}

fn first_mismatch(lhs: &Diagram, rhs: &Diagram) -> Option<Bar> {
    let a = lhs.sorted_bars();
    let b = rhs.sorted_bars();
    a.iter()
        .zip(b.iter())
        .find(|(x, y)| x != y)
        .map(|(x, _)| *x)
        .or_else(|| a.get(b.len()).copied())
        .or_else(|| b.get(a.len()).copied())
}

fn check_bijection(image: &ImageArray, direction: Direction) -> Result<Option<Bar>, CliError> {
    let d = image.dim();
    let (via_transform, direct) = match direction {
        Direction::VToT => {
            let source = compute_barcode_with(&build_v(image), ReductionOptions::default())
                .map_err(CliError::invalid)?;
            (
                convert_v_to_t(&source, d).map_err(CliError::invalid)?,
                direct_dual_diagram(image, ConstructionArg::T)?,
            )
        }
        Direction::TToV => {
            let source = compute_barcode_with(&build_t(image), ReductionOptions::default())
                .map_err(CliError::invalid)?;
            (
                convert_t_to_v(&source, d).map_err(CliError::invalid)?,
                direct_dual_diagram(image, ConstructionArg::V)?,
            )
        }
        Direction::Invert => unreachable!(),
    };
    if via_transform.same_bars(&direct) {
        Ok(None)
    } else {
        Ok(first_mismatch(&via_transform, &direct))
    }
}

fn cmd_verify(image_path: &str, d: Option<usize>, seed: Option<u64>) -> Result<(), CliError> {
    let image = image_io::read_image(image_path)?;
    if let Some(d) = d {
        if image.dim() != d {
            return Err(CliError::invalid(format!(
                "image has dimension {}, expected {d}",
                image.dim()
            )));
        }
    }
    let mut images = vec![image];
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = images[0].dim();
        for _ in 0..5 {
            let shape: Vec<usize> = (0..dim).map(|_| rng.gen_range(1..=4)).collect();
            let len = shape.iter().product();
            let values: Vec<f64> = (0..len).map(|_| rng.gen_range(1..=99) as f64).collect();
            images.push(ImageArray::new(shape, values).unwrap());
        }
    }
    let mut failure: Option<Bar> = None;
    for direction in [Direction::VToT, Direction::TToV] {
        let mut mismatch = None;
        for image in &images {
            if mismatch.is_none() {
                mismatch = check_bijection(image, direction)?;
            }
        }
        let label = match direction {
            Direction::VToT => "v-to-t",
            Direction::TToV => "t-to-v",
            Direction::Invert => unreachable!(),
        };
        println!("{label}: {}", if mismatch.is_none() { "PASS" } else { "FAIL" });
        failure = failure.or(mismatch);
    }
    match failure {
        None => Ok(()),
        Some(bar) => Err(CliError::invalid(format!("first mismatching bar: {bar}"))),
    }
}

fn cmd_dualize(complex_path: &str, d: usize, output: Option<&str>) -> Result<(), CliError> {
    let complex = complex_io::read_complex(complex_path, Some(d))?;
    let dual = dual_complex(&complex, d).map_err(CliError::invalid)?;
    write_output(output, &complex_io::serialize_complex(&dual))
}

/// An image file is recognised by its first token; anything else is an
/// abstract complex file.
fn read_morse_input(
    path: &str,
    d: Option<usize>,
    construction: ConstructionArg,
) -> Result<FilteredComplex, CliError> {
    let text = dualbar::read_to_string(path)?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with("dims:") || l.starts_with("P2") => {
            Ok(build(&image_io::parse_image(path, &text)?, construction))
        }
        _ => complex_io::parse_complex(path, &text, d),
    }
}

fn cmd_morse(
    input: &str,
    field_path: Option<&str>,
    action: MorseAction,
    d: Option<usize>,
    construction: ConstructionArg,
    output: Option<&str>,
) -> Result<(), CliError> {
    let complex = read_morse_input(input, d, construction)?;
    let field = match field_path {
        Some(path) => field_io::read_field(path)?,
        None => build_gradient(&complex).map_err(CliError::invalid)?,
    };
    match action {
        MorseAction::Validate => {
            let report = validate_field(&field, &complex);
            write_output(output, &format!("{report}\n"))?;
            if report.is_empty() {
                Ok(())
            } else {
                Err(CliError::invalid("vector field is invalid"))
            }
        }
        MorseAction::Dualize => {
            let d = d.ok_or_else(|| CliError::invalid("--d is required for dualize"))?;
            let dual = dual_field(&field, &complex, d).map_err(CliError::invalid)?;
            write_output(output, &field_io::serialize_field(&dual))
        }
        MorseAction::Critical => {
            let critical = critical_cells(&field, &complex).map_err(CliError::invalid)?;
            let mut out = String::new();
            for id in critical {
                let cell = complex.get(&id).unwrap();
                out.push_str(&format!("{} {} {}\n", cell.id, cell.dim, cell.value));
            }
            write_output(output, &out)
        }
        MorseAction::Reduce => {
            let morse = morse_complex(&field, &complex).map_err(CliError::invalid)?;
            let diagram = compute_barcode_with(&morse, ReductionOptions::default())
                .map_err(CliError::invalid)?;
            write_output(output, &diagram_io::serialize_diagram(&diagram))
        }
    }
}
