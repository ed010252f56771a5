mod common;

use common::*;
use tiltgather::render::{frame, frame_name, frames};
use tiltgather::sim::{apply, format_sequence, is_gathered, parse_sequence, step, SequenceError};
use tiltgather::{Command, Configuration};

use Command::*;

#[test]
fn blocked_particle_stays_and_then_merges() {
    let p = row3();
    let a = conf(&p, &[(0, 0), (2, 0)]);
    let b = step(&p, &a, R);
    assert_eq!(pts(&p, &b), vec![(1, 0), (2, 0)]);
    assert!(!is_gathered(&b));
    let c = step(&p, &b, R);
    assert_eq!(pts(&p, &c), vec![(2, 0)]);
    assert!(is_gathered(&c));
}

#[test]
fn single_cell_never_moves() {
    let p = poly(&["."]);
    let a = conf(&p, &[(0, 0)]);
    for c in Command::ALL {
        assert_eq!(step(&p, &a, c), a);
    }
}

#[test]
fn apply_examples() {
    let l = l_tromino();
    let (end, _) = apply(&l, &conf(&l, &[(0, 0), (1, 1)]), &[R, U], false);
    assert_eq!(pts(&l, &end), vec![(1, 1)]);

    let a = conf(&l, &[(0, 0), (1, 1)]);
    assert_eq!(apply(&l, &a, &[], false).0, a);

    let sq = square(2, 2);
    let (end, trace) = apply(&sq, &Configuration::full(&sq), &[L, U], true);
    assert_eq!(pts(&sq, &end), vec![(0, 1)]);
    assert_eq!(trace.unwrap(), vec![2, 1]);
    assert!(end.is_gathered());
}

#[test]
fn unit_vectors_follow_y_up() {
    assert_eq!(U.delta(), (0, 1));
    assert_eq!(D.delta(), (0, -1));
    assert_eq!(L.delta(), (-1, 0));
    assert_eq!(R.delta(), (1, 0));
}

#[test]
fn sequence_format() {
    assert_eq!(parse_sequence("uD l\nR\n").unwrap(), vec![U, D, L, R]);
    assert_eq!(parse_sequence("").unwrap(), vec![]);
    assert_eq!(parse_sequence("UX").unwrap_err(), SequenceError::BadChar { pos: 1, ch: 'X' });
    assert_eq!(format_sequence(&[R, R, U]), "RRU");
}

#[test]
fn render_row3_without_sequence() {
    let p = row3();
    let f = frame(&p, &conf(&p, &[(0, 0), (2, 0)]));
    assert_eq!(f, "P2\n3 1\n255\n255 200 255\n");
}

#[test]
fn render_frames_count_and_final_state() {
    let p = row3();
    let fs = frames(&p, &conf(&p, &[(0, 0), (2, 0)]), &[R, R], 1);
    assert_eq!(fs.len(), 3);
    assert_eq!(fs[2].matches("255").count(), 2); // maxval header + one cell
    assert_eq!(fs[2].lines().last().unwrap(), "200 200 255");
    assert_eq!(frames(&p, &conf(&p, &[(0, 0)]), &[R, R, R, R, R], 2).len(), 3);
    assert_eq!(frame_name(7), "frame_000007.pgm");
}

#[test]
fn render_flips_rows_for_display() {
    let sq = poly(&["..", ".#"]);
    let fs = frames(&sq, &Configuration::full(&sq), &[L, U], 1);
    assert_eq!(fs.last().unwrap(), "P2\n2 2\n255\n255 200\n200 0\n");
}
