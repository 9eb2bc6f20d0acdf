use firefighter::adversaries::{AdversarySpec, Fixed};
use firefighter::analysis::certify;
use firefighter::config::RunConfig;
use firefighter::engine::{run_game, Outcome};
use firefighter::lattice::Cell;
use firefighter::strategies::{Strategy, StrategySpec, WallStrategy, WallVariant};
use firefighter::trace::Trace;

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}.trace", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn wall_trace(budgets: &[u32]) -> Trace {
    let cfg = RunConfig::new(
        StrategySpec::Wall(WallVariant::Diagonal),
        AdversarySpec::Fixed(budgets.to_vec()),
        20,
    );
    cfg.run().unwrap().1
}

#[test]
fn single_walls_is_reproduced_byte_for_byte() {
    let t = wall_trace(&[1, 1, 1, 13]);
    assert_eq!(t.to_string(), golden("single_walls"));
}

#[test]
fn surplus_walls_is_reproduced_byte_for_byte() {
    let t = wall_trace(&[1, 1, 4, 1, 1, 1, 15]);
    assert_eq!(t.to_string(), golden("surplus_walls"));
}

#[test]
fn goldens_parse_replay_and_certify() {
    for name in ["single_walls", "surplus_walls"] {
        let text = golden(name);
        let t: Trace = text.parse().unwrap();
        assert_eq!(t.to_string(), text);
        assert!(t.replay().is_ok());
        assert_eq!(certify(&t, 8).exit_code(), 0);
    }
}

#[test]
fn golden_placements_are_the_diagonal_walls() {
    let t: Trace = golden("single_walls").parse().unwrap();
    let walls: Vec<Cell> = t.records[..3].iter().flat_map(|r| r.placed.clone()).collect();
    assert_eq!(walls, vec![Cell::new(1, 0), Cell::new(2, 1), Cell::new(2, -1)]);
    assert_eq!(t.records[3].placed.len(), 13);
    assert!(t.records[3].placed.iter().all(|c| c.norm() == 4));
}

#[test]
fn literal_formula_leaks_on_single_walls_budgets() {
    let mut s = WallStrategy::new(WallVariant::Formula);
    let run = run_game(Cell::ORIGIN, &mut s, &mut Fixed::new(vec![1, 1, 1, 13]), 20).unwrap();
    assert_eq!(s.id(), "wall:formula");
    // (2,0) at turn 2 leaves (2,-1) open; the closure at turn 4 cannot cover the leak
    assert_eq!(run.records[1].placements, vec![Cell::new(2, 0)]);
    assert!(matches!(run.outcome, Outcome::Escaped { turn: 4, .. }));
}
