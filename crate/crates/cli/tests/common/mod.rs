//! The golden command suite, shared by the golden and acceptance tests.

#![allow(dead_code)]

use std::io;
use std::path::{Path, PathBuf};
use std::process::Command;

use polycalc_cli::Outcome;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
}

impl Case {
    pub fn command_line(&self) -> String {
        self.args.join(" ")
    }
}

macro_rules! cases {
    ($($name:literal => [$($arg:literal),*],)*) => {
        vec![$(Case { name: $name, args: &[$($arg),*] },)*]
    };
}

pub fn suite() -> Vec<Case> {
    cases! {
        "convert_square_hrep" => ["convert", "square.hrep"],
        "convert_triangle_vrep" => ["convert", "triangle.vrep"],
        "convert_line_vrep" => ["convert", "line.vrep"],
        "canonical_square_vrep" => ["canonical", "square.vrep"],
        "canonical_abs" => ["canonical", "abs.fn"],
        "canonical_max3" => ["canonical", "max3.fn"],
        "contains_inside" => ["contains", "square.hrep", "v:1/2,1"],
        "contains_outside" => ["contains", "square.hrep", "v:2,0"],
        "empty_true" => ["empty", "empty.hrep"],
        "empty_false" => ["empty", "quadrant.hrep"],
        "equal_square" => ["equal", "square.hrep", "square.vrep"],
        "sum_square_triangle" => ["sum", "square.hrep", "triangle.vrep"],
        "intersect_square_triangle" => ["intersect", "square.hrep", "triangle.vrep"],
        "hull_union_squares" => ["hull-union", "square.hrep", "far_square.hrep"],
        "image_square" => ["image", "square.hrep", "proj.map"],
        "preimage_unit" => ["preimage", "unit.hrep", "proj.map"],
        "recession_line" => ["recession", "line.vrep"],
        "recession_quadrant" => ["recession", "quadrant.hrep"],
        "cone_triangle" => ["cone", "triangle.vrep"],
        "tangent_square_corner" => ["tangent", "square.hrep", "v:0,0"],
        "normal_square_corner" => ["normal", "square.hrep", "v:1,1"],
        "polar_triangle" => ["polar", "triangle.vrep"],
        "separate_disjoint" => ["separate", "square.hrep", "far_square.hrep"],
        "separate_meeting" => ["separate", "square.hrep", "triangle.vrep"],
        "faces_square" => ["faces", "square.hrep", "--oracle"],
        "faces_quadrant" => ["faces", "quadrant.hrep", "--oracle"],
        "expose_square_vertex" => ["expose", "square.hrep", "0,1"],
        "expose_whole" => ["expose", "triangle.vrep", "{}"],
        "ripoint_triangle" => ["ripoint", "triangle.vrep"],
        "feval_abs" => ["feval", "abs.fn", "v:-2"],
        "feval_outside" => ["feval", "seg.fn", "v:3/2"],
        "fsum_abs" => ["fsum", "abs.fn", "abs.fn"],
        "fconj_abs" => ["fconj", "abs.fn", "--oracle"],
        "fconj_l1" => ["fconj", "l1.fn", "--oracle"],
        "fconj_plane" => ["fconj", "plane.fn", "--oracle"],
        "fsubdiff_abs_kink" => ["fsubdiff", "abs.fn", "v:0"],
        "fsubdiff_plane" => ["fsubdiff", "plane.fn", "v:1,1"],
        "fdirderiv_max3" => ["fdirderiv", "max3.fn", "v:1", "--oracle"],
        "fdirderiv_l1" => ["fdirderiv", "l1.fn", "v:3,0", "--oracle"],
        "finfconv_abs_seg" => ["finfconv", "abs.fn", "seg.fn"],
        "finfconv_improper" => ["finfconv", "ident.fn", "double.fn"],
        "findicator_square" => ["findicator", "square.hrep"],
        "fycheck_member" => ["fycheck", "abs.fn", "v:0", "half.vec"],
        "fycheck_nonmember" => ["fycheck", "abs.fn", "v:0", "v:2"],
        "error_ripoint_empty" => ["ripoint", "empty.hrep"],
        "error_parse" => ["empty", "bad.hrep"],
        "error_dimension" => ["feval", "abs.fn", "v:1,2"],
        "error_not_in_domain" => ["fsubdiff", "seg.fn", "v:2"],
        "error_usage" => ["frobnicate", "square.hrep"],
    }
}

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// In-process run, with fixture names turned into absolute paths.
pub fn run_case(case: &Case) -> Outcome {
    let dir = fixtures();
    let args: Vec<String> = case
        .args
        .iter()
        .map(|a| {
            let p = dir.join(a);
            if p.is_file() {
                p.to_string_lossy().into_owned()
            } else {
                a.to_string()
            }
        })
        .collect();
    polycalc_cli::run(&args, &mut io::empty())
}

/// Run of the built binary from inside the fixture directory.
pub fn run_case_with(case: &Case, mut exe: Command) -> io::Result<Outcome> {
    let out = exe.args(case.args).current_dir(fixtures()).output()?;
    Ok(Outcome {
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        code: out.status.code().unwrap_or(-1),
    })
}

/// What a golden file records: the command, its output streams and status.
pub fn render(case: &Case, out: &Outcome) -> String {
    format!(
        "$ polycalc {}\n{}--- stderr\n{}--- exit {}\n",
        case.command_line(),
        out.stdout,
        out.stderr,
        out.code
    )
}
