use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isoconv::actions::{apply_action, apply_all, compose_actions, invert_action, ActionKind, ActionSpec};
use isoconv::analysis::{build_windows, window_length};
use isoconv::erasure::ErasedWord;
use isoconv::json::{
    element_from_json, element_to_json, matrix_from_json, matrix_to_json, poly_matrix_from_json, poly_matrix_to_json,
    stream_from_jsonl, stream_to_jsonl, system_from_json, system_to_json, system_to_string,
};
use isoconv::system::{random_element, random_invertible, random_matrix, random_system};
use isoconv::{FieldSpec, IsoSystem, Matrix, Poly, PolyMatrix};

const FIELDS: [(u64, usize); 8] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)];
const SHAPES: [(usize, usize, usize); 4] = [(2, 1, 1), (3, 2, 3), (3, 1, 2), (4, 2, 2)];

fn field(i: usize) -> FieldSpec {
    let (p, r) = FIELDS[i % FIELDS.len()];
    FieldSpec::new(p, r, None).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn system(f: &FieldSpec, shape: usize, r: &mut ChaCha8Rng) -> IsoSystem {
    let (n, k, delta) = SHAPES[shape % SHAPES.len()];
    random_system(f, n, k, delta, r).unwrap()
}

fn random_poly_matrix(f: &FieldSpec, rows: usize, cols: usize, deg: usize, r: &mut ChaCha8Rng) -> PolyMatrix {
    PolyMatrix::from_fn(f, rows, cols, |_, _| {
        Poly::new(f.clone(), (0..=deg).map(|_| random_element(f, r)).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(fi in 0usize..8, seed in any::<u64>()) {
        let f = field(fi);
        let mut r = rng(seed);
        let q = f.size_u64().unwrap() as i64;
        for _ in 0..20 {
            let (a, b, c) = (random_element(&f, &mut r), random_element(&f, &mut r), random_element(&f, &mut r));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a + &(-&a)).is_zero());
            prop_assert_eq!(&a - &b, &a + &(-&b));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
                prop_assert!(a.pow(q - 1).unwrap().is_one());
            } else {
                prop_assert!(a.inv().is_err());
            }
        }
    }

    #[test]
    fn rank_kernel_and_inverse(fi in 0usize..8, seed in any::<u64>(), rows in 1usize..6, cols in 1usize..7) {
        let f = field(fi);
        let mut r = rng(seed);
        let m = random_matrix(&f, rows, cols, &mut r);
        let rank = m.rank();
        prop_assert_eq!(rank, m.transpose().rank());
        let k = m.kernel();
        prop_assert_eq!(k.cols(), cols - rank);
        if k.cols() > 0 {
            prop_assert!(m.try_mul(&k).unwrap().is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }
        let s = random_invertible(&f, rows, &mut r);
        prop_assert_eq!(s.try_mul(&m).unwrap().rank(), rank);
        prop_assert_eq!(s.try_mul(&s.inverse().unwrap()).unwrap(), Matrix::identity(&f, rows));
    }

    #[test]
    fn encoded_words_are_members(fi in 0usize..8, shape in 0usize..4, seed in any::<u64>(), deg in 0usize..4) {
        let f = field(fi);
        let mut r = rng(seed);
        let sys = system(&f, shape, &mut r);
        let u = random_poly_matrix(&f, sys.k(), 1, deg, &mut r);
        match sys.encode(&u) {
            Ok(v) => prop_assert!(sys.contains(&v).unwrap()),
            Err(isoconv::Error::StateNotFlushed(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
        if !sys.is_reachable() {
            prop_assert!(matches!(sys.extract_encoder(), Err(isoconv::Error::NotReachable)));
            return Ok(());
        }
        let g = sys.extract_encoder().unwrap();
        prop_assert!(sys.contains_all(&g).unwrap());
        let w = g.mul(&random_poly_matrix(&f, g.cols(), 1, deg, &mut r)).unwrap();
        prop_assert!(sys.contains(&w).unwrap());
    }

    #[test]
    fn action_group_laws(fi in 0usize..8, shape in 0usize..4, seed in any::<u64>(), kind in 0usize..3) {
        let f = field(fi);
        let mut r = rng(seed);
        let sys = system(&f, shape, &mut r);
        let kind = [ActionKind::State, ActionKind::Parity, ActionKind::Information][kind];
        let size = kind.size_for(&sys);
        let a1 = ActionSpec::new(kind, random_invertible(&f, size, &mut r)).unwrap();
        let a2 = ActionSpec::new(kind, random_invertible(&f, size, &mut r)).unwrap();
        let there = apply_action(&sys, &a1).unwrap();
        prop_assert_eq!(&apply_action(&there, &invert_action(&a1)).unwrap(), &sys);
        let merged = compose_actions(&a1, &a2).unwrap();
        prop_assert_eq!(merged.len(), 1);
        prop_assert_eq!(apply_all(&sys, &[a1, a2]).unwrap(), apply_all(&sys, &merged).unwrap());
        let identity = ActionSpec::new(kind, Matrix::identity(&f, size)).unwrap();
        prop_assert_eq!(&apply_action(&sys, &identity).unwrap(), &sys);
    }

    #[test]
    fn window_ranks_are_invariant(fi in 0usize..8, shape in 0usize..4, seed in any::<u64>()) {
        let f = field(fi);
        let mut r = rng(seed);
        let sys = system(&f, shape, &mut r);
        let l = window_length(sys.n(), sys.k(), sys.delta());
        let w = build_windows(&sys, l);
        for kind in [ActionKind::State, ActionKind::Parity, ActionKind::Information] {
            let act = ActionSpec::new(kind, random_invertible(&f, kind.size_for(&sys), &mut r)).unwrap();
            let out = apply_action(&sys, &act).unwrap();
            let wo = build_windows(&out, l);
            prop_assert_eq!(wo.t.rank(), w.t.rank());
            prop_assert_eq!(wo.f.rank(), w.f.rank());
            prop_assert_eq!(out.is_reachable(), sys.is_reachable());
            prop_assert_eq!(out.is_observable(), sys.is_observable());
        }
    }

    #[test]
    fn json_round_trips(fi in 0usize..8, shape in 0usize..4, seed in any::<u64>()) {
        let f = field(fi);
        let mut r = rng(seed);
        let sys = system(&f, shape, &mut r);
        prop_assert_eq!(&system_from_json(&system_to_json(&sys)).unwrap(), &sys);
        let text = system_to_string(&sys);
        prop_assert_eq!(&system_from_json(&serde_json::from_str(&text).unwrap()).unwrap(), &sys);
        let e = random_element(&f, &mut r);
        prop_assert_eq!(element_from_json(&f, &element_to_json(&e)).unwrap(), e);
        let m = random_matrix(&f, 2, 3, &mut r);
        prop_assert_eq!(matrix_from_json(&f, &matrix_to_json(&m)).unwrap(), m);
        let pm = random_poly_matrix(&f, 2, 2, 3, &mut r);
        prop_assert_eq!(poly_matrix_from_json(&f, &poly_matrix_to_json(&pm)).unwrap(), pm);
        let symbols = (0..4 * sys.n())
            .map(|_| if r.gen_bool(0.3) { None } else { Some(random_element(&f, &mut r)) })
            .collect();
        let word = ErasedWord::new(sys.n(), symbols).unwrap();
        let back = stream_from_jsonl(&f, sys.n(), &stream_to_jsonl(&word)).unwrap();
        prop_assert_eq!(back.symbols, word.symbols);
    }
}
