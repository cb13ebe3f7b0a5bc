use proptest::prelude::*;

use hyperqueens::analysis::{density_map, regularity_check};
use hyperqueens::bounds::{crop, KnownTable};
use hyperqueens::construct::{regular_solution, shift_class, RegularSpec};
use hyperqueens::geometry::{
    attack_lines, attacked_squares, attacks, modular_attacks, queen_graph, verify_certificate, BoardSymmetry,
};
use hyperqueens::ipmodel::{
    add_cube_cliques, add_layer_inequalities, add_odd_cycle_inequalities, add_star_cliques,
    add_subsolution_inequalities, build_base, chordless_odd_cycles, evaluate, export_lp, parse_lp, ModelMode,
};
use hyperqueens::{BoardSpec, Placement, SearchOptions, Square};

fn board_and_square(max_n: usize, max_d: usize) -> impl Strategy<Value = (BoardSpec, Square)> {
    (1..=max_n, 1..=max_d).prop_flat_map(|(n, d)| {
        proptest::collection::vec(1..=n, d).prop_map(move |c| (BoardSpec::new(n, d).unwrap(), Square::new(c)))
    })
}

fn board_and_pair(max_n: usize, max_d: usize) -> impl Strategy<Value = (BoardSpec, Square, Square)> {
    (1..=max_n, 1..=max_d).prop_flat_map(|(n, d)| {
        (proptest::collection::vec(1..=n, d), proptest::collection::vec(1..=n, d))
            .prop_map(move |(a, b)| (BoardSpec::new(n, d).unwrap(), Square::new(a), Square::new(b)))
    })
}

fn rook_attacks(a: &Square, b: &Square) -> bool {
    a.coords().iter().zip(b.coords()).filter(|(x, y)| x != y).count() == 1
}

/// A valid placement from a greedy pass over the squares in a shuffled order.
fn greedy_placement(board: BoardSpec, order: &[usize]) -> Placement {
    let squares: Vec<Square> = board.squares().collect();
    let mut chosen: Vec<Square> = Vec::new();
    for &i in order {
        let s = &squares[i % squares.len()];
        if chosen.iter().all(|q| q != s && !attacks(q, s, board).unwrap()) {
            chosen.push(s.clone());
        }
    }
    Placement::new(board, chosen).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn attack_relation((board, a, b) in board_and_pair(6, 3)) {
        let ab = attacks(&a, &b, board).unwrap();
        prop_assert_eq!(ab, attacks(&b, &a, board).unwrap());
        if ab {
            prop_assert!(modular_attacks(&a, &b, board).unwrap());
        }
        if rook_attacks(&a, &b) {
            prop_assert!(ab);
        }
        prop_assert_eq!(attacked_squares(&a, board, false).unwrap().contains(&b), ab || a == b);
    }

    #[test]
    fn attacked_square_counts((board, q) in board_and_square(7, 4)) {
        let (n, d) = (board.n(), board.d());
        let count = attacked_squares(&q, board, false).unwrap().len();
        let lines = (3usize.pow(d as u32) - 1) / 2;
        prop_assert!(count >= 1 + d * (n - 1));
        prop_assert!(count <= 1 + lines * (n - 1));
        let modular = attacked_squares(&q, board, true).unwrap().len();
        prop_assert!(modular >= count);
    }

    #[test]
    fn random_placements_verify(n in 2usize..7, d in 1usize..4, order in proptest::collection::vec(0usize..1000, 0..60)) {
        let board = BoardSpec::new(n, d).unwrap();
        let p = greedy_placement(board, &order);
        prop_assert!(verify_certificate(&p, false).unwrap().is_valid());
        let board_squares: Vec<Square> = board.squares().collect();
        if let Some(extra) = board_squares.iter().find(|s| !p.contains(s) && p.queens().iter().any(|q| attacks(q, s, board).unwrap())) {
            let mut queens = p.queens().to_vec();
            queens.push(extra.clone());
            let bad = Placement::new(board, queens).unwrap();
            prop_assert!(!verify_certificate(&bad, false).unwrap().is_valid());
        }
    }

    #[test]
    fn regular_solutions_are_regular(n in 2usize..=13, d in 2usize..=3, pick in 0usize..1000, shift in 0usize..13) {
        let admissible: Vec<RegularSpec> = (0..n.pow(d as u32 - 1))
            .map(|i| (0..d - 1).map(|j| i / n.pow(j as u32) % n).collect::<Vec<_>>())
            .map(|c| RegularSpec::new(n, d, c, shift % n).unwrap())
            .filter(|s| s.check_admissible().is_ok())
            .collect();
        if admissible.is_empty() {
            return Ok(());
        }
        let spec = &admissible[pick % admissible.len()];
        let p = regular_solution(spec).unwrap();
        prop_assert!(verify_certificate(&p, false).unwrap().is_valid());
        prop_assert!(verify_certificate(&p, true).unwrap().is_valid());
        prop_assert!(regularity_check(&p).unwrap().is_regular());
        let mut q = p.clone();
        for _ in 0..n {
            q = shift_class(&q, d, 1).unwrap();
        }
        prop_assert_eq!(q, p);
    }

    #[test]
    fn crops_stay_valid(k in 1usize..5, shifts in proptest::collection::vec(-20i64..20, 3), coeffs in prop_oneof![Just(vec![3, 5]), Just(vec![2, 4]), Just(vec![5, 8])]) {
        let p = regular_solution(&RegularSpec::new(11, 3, coeffs, 0).unwrap()).unwrap();
        let c = crop(&p, k, &shifts).unwrap();
        prop_assert_eq!(c.board(), BoardSpec::new(11 - k, 3).unwrap());
        prop_assert!(verify_certificate(&c, false).unwrap().is_valid());
    }

    #[test]
    fn lp_roundtrip(n in 1usize..6, d in 1usize..4, mode in 0usize..3, cube: bool, star: bool) {
        let board = BoardSpec::new(n, d).unwrap();
        let mode = match mode {
            0 => ModelMode::Max,
            1 => ModelMode::Fixed(n),
            _ => ModelMode::Refute(board.full_size() + 1),
        };
        let mut m = build_base(board, mode).unwrap();
        if cube {
            add_cube_cliques(&mut m);
        }
        if star {
            add_star_cliques(&mut m);
        }
        let text = export_lp(&m);
        prop_assert_eq!(&text, &export_lp(&build_again(board, mode, cube, star)));
        prop_assert_eq!(parse_lp(&text).unwrap(), m);
    }

    #[test]
    fn valid_placements_satisfy_cuts(n in 3usize..6, order in proptest::collection::vec(0usize..1000, 0..80)) {
        let board = BoardSpec::new(n, 3).unwrap();
        let table = KnownTable::vendored();
        let mut m = build_base(board, ModelMode::Max).unwrap();
        add_cube_cliques(&mut m);
        add_star_cliques(&mut m);
        add_layer_inequalities(&mut m, &table).unwrap();
        add_subsolution_inequalities(&mut m, &table, &[2, n - 1]).unwrap();
        add_odd_cycle_inequalities(&mut m, &chordless_odd_cycles(board, 200)).unwrap();
        let p = greedy_placement(board, &order);
        prop_assert!(evaluate(&m, &p).unwrap().is_feasible());
    }

    #[test]
    fn class_counts_respect_symmetry((board, sq) in board_and_square(4, 3), g in 0usize..48) {
        prop_assume!(board.d() >= 2 && board.n() >= 3);
        let syms = BoardSymmetry::all(board.d());
        let g = &syms[g % syms.len()];
        let k = match (board.n(), board.d()) {
            (3, 2) => 2,
            (3, 3) => 4,
            (4, 2) => 4,
            _ => 7,
        };
        let o = SearchOptions { threads: 1, ..SearchOptions::default() };
        let a = density_map(board, k, Some(&sq), &o).unwrap();
        let b = density_map(board, k, Some(&g.apply(&sq, board.n())), &o).unwrap();
        prop_assert_eq!(a.total_solutions, b.total_solutions);
    }
}

fn build_again(board: BoardSpec, mode: ModelMode, cube: bool, star: bool) -> hyperqueens::ipmodel::IpModel {
    let mut m = build_base(board, mode).unwrap();
    if cube {
        add_cube_cliques(&mut m);
    }
    if star {
        add_star_cliques(&mut m);
    }
    m
}

#[test]
fn attacking_pairs_share_exactly_one_line() {
    for (n, d) in [(4, 2), (5, 2), (3, 3), (4, 3)] {
        let board = BoardSpec::new(n, d).unwrap();
        let lines = attack_lines(board);
        let squares: Vec<Square> = board.squares().collect();
        for a in &squares {
            for b in squares.iter().filter(|b| *b > a) {
                let shared = lines
                    .iter()
                    .flat_map(|(_, ls)| ls.iter())
                    .filter(|l| l.contains(a) && l.contains(b))
                    .count();
                assert_eq!(shared, usize::from(attacks(a, b, board).unwrap()), "{a} {b}");
            }
        }
    }
}

#[test]
fn graph_degrees() {
    for (n, d) in [(5, 2), (4, 3), (3, 4)] {
        let board = BoardSpec::new(n, d).unwrap();
        let g = queen_graph(board);
        for (v, sq) in board.squares().enumerate() {
            assert_eq!(g.degree(v), attacked_squares(&sq, board, false).unwrap().len() - 1);
        }
    }
}
