//! Writes an indicator file, marks it and reads back the marked indices.
//!
//! Usage: `cargo run --example mark_file [-- PATH [THETA]]`; without a path
//! a temporary text file is generated.

use std::env;
use std::path::PathBuf;

use doerfler::io::{mark_file, write_indicators};
use doerfler::Algorithm;

fn main() {
    let mut args = env::args().skip(1);
    let path = match args.next() {
        Some(p) => PathBuf::from(p),
        None => {
            let p = env::temp_dir().join("doerfler-example.txt");
            write_indicators(&p, &[0.3, 0.05, 0.9, 0.0, 0.41, 0.12, 0.6]).unwrap();
            p
        }
    };
    let theta: f64 = args.next().map_or(0.6, |t| t.parse().expect("theta"));
    match mark_file(&path, Algorithm::XStar, theta, 0.5, None) {
        Ok(report) => {
            println!("{report}");
            println!("indices: {}", std::fs::read_to_string(&report.output).unwrap().replace('\n', " "));
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
