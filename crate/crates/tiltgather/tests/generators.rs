mod common;

use common::*;
use tiltgather::decomp::is_simple;
use tiltgather::generators::{
    assignment_sequence, gen_chimney, gen_dsp_adversarial, gen_hardness, gen_random_config, gen_random_polyomino,
    CnfFormula, GenError, HardnessMeta,
};
use tiltgather::sim::apply;
use tiltgather::strategies::dsp;
use tiltgather::{Cell, Configuration, Polyomino};

fn fig2() -> CnfFormula {
    CnfFormula::new(4, vec![[1, 2, -3], [-2, 3, 4]]).unwrap()
}

fn no_2x2_block(p: &Polyomino) -> bool {
    p.cells().iter().all(|&c| {
        ![c.offset(1, 0), c.offset(0, 1), c.offset(1, 1)].iter().all(|&d| p.is_free(d))
    })
}

#[test]
fn dimacs_parsing() {
    let f = CnfFormula::parse_dimacs("c example\np cnf 4 2\n1 2 -3 0\n-2 3\n4 0\n").unwrap();
    assert_eq!(f, fig2());
    assert!(matches!(CnfFormula::parse_dimacs("1 2 3 0\n").unwrap_err(), GenError::Dimacs { line: 1, .. }));
    assert_eq!(
        CnfFormula::parse_dimacs("p cnf 3 1\n1 2 0\n").unwrap_err(),
        GenError::ClauseWidth { clause: 0, len: 2 }
    );
    assert_eq!(
        CnfFormula::parse_dimacs("p cnf 2 1\n1 2 3 0\n").unwrap_err(),
        GenError::BadLiteral { clause: 0, literal: 3, vars: 2 }
    );
    assert_eq!(CnfFormula::new(2, vec![]).unwrap_err(), GenError::NoClauses);
    assert_eq!(CnfFormula::parse_dimacs("p cnf 2 0\n").unwrap_err(), GenError::NoClauses);
}

#[test]
fn hardness_structure_for_the_two_clause_formula() {
    let (inst, meta) = gen_hardness(&fig2()).unwrap();
    let p = &inst.polyomino;
    assert_eq!(p.diameter(), meta.diameter);
    assert_eq!(p.dist(meta.red[0], meta.red[1]).unwrap(), meta.diameter);
    assert_eq!((meta.diameter + meta.b) % 2, 0);
    assert_eq!(meta.ell, (meta.diameter + meta.b) / 2);
    // Two red particles plus one per clause.
    assert_eq!(inst.particles.len(), 4);
    assert!(no_2x2_block(p));
    assert_eq!(inst.meta["corridor_width"], "1");
    assert_eq!(HardnessMeta::from_meta(&inst.meta).unwrap(), meta);
    // Frozen layout for this formula.
    assert_eq!((meta.diameter, meta.b, meta.ell), (194, 60, 127));
    assert_eq!(meta.half_widths, vec![9, 7, 5, 3]);
}

#[test]
fn hardness_certificates() {
    let f = fig2();
    let (inst, meta) = gen_hardness(&f).unwrap();
    let p = &inst.polyomino;
    let good = assignment_sequence(&meta, &[true; 4]).unwrap();
    assert_eq!(good.len(), meta.ell as usize);
    assert!(apply(p, &inst.particles, &good, false).0.is_gathered());
    // x1 = x2 = false, x3 = true violates the first clause.
    let bad_assignment = [false, false, true, true];
    assert!(!f.is_satisfied_by(&bad_assignment));
    let bad = assignment_sequence(&meta, &bad_assignment).unwrap();
    assert_eq!(bad.len(), meta.ell as usize);
    let end = apply(p, &inst.particles, &bad, false).0;
    assert_eq!(end.len(), 2);
    // The red particles meet on the bottom row; the first clause's particle
    // is stuck at the foot of its channel, just above its exit arm.
    let bottom = p.cells()[0].y;
    let cells = end.cells(p);
    assert_eq!(cells[0].y, bottom);
    assert_eq!(cells[1], Cell::new(29, bottom + 2));
    assert_eq!(
        assignment_sequence(&meta, &[true]).unwrap_err(),
        GenError::Arity { expected: 4, got: 1 }
    );
}

#[test]
fn hardness_single_clause_and_tautology() {
    let (inst, meta) = gen_hardness(&CnfFormula::new(1, vec![[1, 1, 1]]).unwrap()).unwrap();
    let seq = assignment_sequence(&meta, &[true]).unwrap();
    assert_eq!(seq.len(), meta.ell as usize);
    assert!(apply(&inst.polyomino, &inst.particles, &seq, false).0.is_gathered());
    let seq = assignment_sequence(&meta, &[false]).unwrap();
    assert!(!apply(&inst.polyomino, &inst.particles, &seq, false).0.is_gathered());

    let (inst, meta) = gen_hardness(&CnfFormula::new(1, vec![[1, -1, 1]]).unwrap()).unwrap();
    for value in [true, false] {
        let seq = assignment_sequence(&meta, &[value]).unwrap();
        assert!(apply(&inst.polyomino, &inst.particles, &seq, false).0.is_gathered(), "x1 = {value}");
    }
}

#[test]
fn hardness_meta_errors() {
    let (inst, _) = gen_hardness(&fig2()).unwrap();
    let mut meta = inst.meta.clone();
    meta.remove("b");
    assert_eq!(HardnessMeta::from_meta(&meta).unwrap_err(), GenError::Meta("b".into()));
}

#[test]
fn chimney_dimensions() {
    for (h, s, d) in [(1u32, 6u32, 36u32), (3, 10, 80)] {
        let (inst, [a, b]) = gen_chimney(h).unwrap();
        let p = &inst.polyomino;
        assert_eq!(p.n() as u32, (2 * h + 4) * s + 6 * s);
        assert_eq!(p.diameter(), d);
        assert_eq!(p.diameter(), (h + 5) * (2 * h + 4));
        assert_eq!(p.dist(a, b).unwrap(), d);
        assert_eq!(inst.meta["D"], d.to_string());
        assert_eq!(inst.meta["S"], s.to_string());
    }
    assert_eq!(gen_chimney(2).unwrap_err(), GenError::ChimneyHeight(2));
    assert_eq!(gen_chimney(0).unwrap_err(), GenError::ChimneyHeight(0));
}

#[test]
fn adversarial_maze() {
    let (inst, [red, green]) = gen_dsp_adversarial(4, 6, 4).unwrap();
    let p = &inst.polyomino;
    assert!(!is_simple(p));
    assert_eq!(p.hole_count(), 4);
    assert_eq!(inst.particles.cells(p), {
        let mut v = vec![red, green];
        v.sort();
        v
    });
    assert_eq!(inst.meta["dsp_lower_bound"], "123");
    let d = p.diameter() as usize;
    assert_eq!(inst.meta["D"], d.to_string());
    let r = dsp(p, &inst.particles, 100_000).unwrap();
    assert!(r.gathered);
    assert!(r.length >= 123);
    assert!(r.length >= 2 * d);
    for h in [1, 2] {
        let (small, _) = gen_dsp_adversarial(2, 3, h).unwrap();
        assert!(!is_simple(&small.polyomino));
    }
    assert!(matches!(gen_dsp_adversarial(1, 6, 4).unwrap_err(), GenError::Dimensions(_)));
}

#[test]
fn random_polyominoes() {
    let a = gen_random_polyomino(20, 20, 0.5, false, 1).unwrap();
    assert!(is_simple(&a.polyomino));
    assert_eq!(a, gen_random_polyomino(20, 20, 0.5, false, 1).unwrap());
    assert_ne!(a.polyomino, gen_random_polyomino(20, 20, 0.5, false, 2).unwrap().polyomino);

    let h = gen_random_polyomino(40, 40, 0.6, true, 3).unwrap();
    assert!(h.polyomino.hole_count() >= 1);
    assert!(!is_simple(&h.polyomino));
    assert!(h.particles.is_empty());
    assert!(matches!(gen_random_polyomino(0, 5, 0.5, false, 1).unwrap_err(), GenError::Dimensions(_)));
    assert!(matches!(gen_random_polyomino(5, 5, 1.5, false, 1).unwrap_err(), GenError::InfeasibleFill(_)));
}

#[test]
fn random_configurations() {
    let p = gen_random_polyomino(20, 20, 0.6, true, 4).unwrap().polyomino;
    assert_eq!(gen_random_config(&p, 1, 0).len(), 1);
    assert_eq!(gen_random_config(&p, p.n(), 0), Configuration::full(&p));
    assert_eq!(gen_random_config(&p, 30, 5), gen_random_config(&p, 30, 5));
    let sq = square(40, 40);
    let a = gen_random_config(&sq, 1000, 1);
    assert_eq!(a.len(), 1000);
    assert!(a.cells(&sq).iter().all(|&c| sq.is_free(c)));
}
