use proptest::prelude::*;
use proptest::sample::subsequence;

use mds_selfdual::arith::odd_prime_powers;
use mds_selfdual::constructions::th1_code;
use mds_selfdual::grs::{
    check_self_dual, generator_matrix, lagrange_l, lemma1_multipliers, lemma2_multipliers, min_distance, CodeRecord,
    EvalSet,
};
use mds_selfdual::search::{catalog, square_clique_greedy, Status};
use mds_selfdual::{make_field, FieldElement, FieldSpec, Limits};

const ORDERS: [(u64, u32); 6] = [(3, 1), (13, 1), (5, 2), (3, 3), (29, 1), (7, 2)];

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    (0..ORDERS.len()).prop_map(|i| make_field(ORDERS[i].0, ORDERS[i].1).unwrap())
}

fn with_elements(k: usize) -> impl Strategy<Value = (FieldSpec, Vec<FieldElement>)> {
    field_strategy().prop_flat_map(move |f| {
        let q = f.q();
        proptest::collection::vec(0..q, k).prop_map(move |codes| {
            let xs = codes.iter().map(|&c| f.element(c).unwrap()).collect();
            (f.clone(), xs)
        })
    })
}

fn subset(max_len: usize) -> impl Strategy<Value = (FieldSpec, Vec<FieldElement>)> {
    field_strategy().prop_flat_map(move |f| {
        let all: Vec<u64> = (0..f.q()).collect();
        let hi = max_len.min(all.len() - 1);
        subsequence(all, 1..=hi).prop_map(move |codes| {
            let xs = codes.iter().map(|&c| f.element(c).unwrap()).collect();
            (f.clone(), xs)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms((f, xs) in with_elements(3)) {
        let (x, y, z) = (xs[0], xs[1], xs[2]);
        prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.sub(f.add(x, y), y), x);
        prop_assert_eq!(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
        if !x.is_zero() {
            prop_assert_eq!(f.mul(x, f.inv(x)), f.one());
            match f.sqrt(x) {
                Some(r) => {
                    prop_assert_eq!(f.mul(r, r), x);
                    prop_assert_eq!(f.eta(x), 1);
                }
                None => prop_assert_eq!(f.eta(x), -1),
            }
            if !y.is_zero() {
                prop_assert_eq!(f.eta(f.mul(x, y)), f.eta(x) * f.eta(y));
            }
        }
    }

    #[test]
    fn lemma1_sound_and_complete((f, a) in subset(10)) {
        prop_assume!(a.len() % 2 == 0);
        let l = lagrange_l(&f, &a).unwrap();
        let constant = l.iter().all(|&x| f.eta(x) == f.eta(l[0]));
        match lemma1_multipliers(&f, &a).unwrap() {
            Some((_, v)) => {
                prop_assert!(constant);
                let es = EvalSet::new(&f, a.clone(), false).unwrap().with_multipliers(v).unwrap();
                let g = generator_matrix(&es, a.len() / 2).unwrap();
                prop_assert!(check_self_dual(&g).unwrap());
            }
            None => prop_assert!(!constant),
        }
    }

    #[test]
    fn lemma2_sound((f, a) in subset(9)) {
        prop_assume!(a.len() % 2 == 1);
        let l = lagrange_l(&f, &a).unwrap();
        let all_square = l.iter().all(|&x| f.eta(f.neg(x)) == 1);
        match lemma2_multipliers(&f, &a).unwrap() {
            Some(v) => {
                let es = EvalSet::new(&f, a.clone(), true).unwrap().with_multipliers(v).unwrap();
                let g = generator_matrix(&es, a.len().div_ceil(2)).unwrap();
                prop_assert!(check_self_dual(&g).unwrap());
            }
            None => prop_assert!(!all_square),
        }
    }

    #[test]
    fn grs_codes_are_mds((f, a) in subset(6), seed in any::<u64>(), k_pick in 1usize..6) {
        let n = a.len();
        let k = 1 + k_pick % n;
        prop_assume!(f.q().checked_pow(k as u32).is_some_and(|s| s <= 200_000));
        let v: Vec<FieldElement> = (0..n).map(|i| f.exp(((seed >> (i * 5)) % (f.q() - 1)) as i64)).collect();
        let es = EvalSet::new(&f, a, false).unwrap().with_multipliers(v).unwrap();
        let g = generator_matrix(&es, k).unwrap();
        prop_assert_eq!(min_distance(&g, 1_000_000).unwrap(), n - k + 1);
    }

    #[test]
    fn greedy_cliques_are_pairwise_square(f in field_strategy(), n in 2usize..8) {
        if let Some(c) = square_clique_greedy(&f, n) {
            prop_assert_eq!(c.len(), n);
            for i in 0..n {
                for j in i + 1..n {
                    prop_assert_eq!(f.eta(f.sub(c[j], c[i])), 1);
                }
            }
        }
    }

    #[test]
    fn records_round_trip(i in 0usize..4) {
        let (r, m, e, t) = [(13, 1, 0, 3), (9, 2, 1, 2), (5, 2, 1, 1), (13, 2, 1, 2)][i];
        let code = th1_code(r, m, e, t, &Limits::default()).unwrap();
        let rec = CodeRecord::from_json(&code.to_json()).unwrap();
        prop_assert_eq!(&rec, &code.to_record());
        let es = rec.eval_set(Limits::default().table_limit).unwrap();
        prop_assert_eq!(es.points(), code.eval_set().points());
        prop_assert_eq!(es.multipliers(), code.eval_set().multipliers());
    }

    #[test]
    fn no_forbidden_length_is_constructed(q in proptest::sample::select(odd_prime_powers(200))) {
        let cat = catalog(q, q + 1, &Limits::default()).unwrap();
        prop_assert!(cat.flagged.is_empty());
        for e in &cat.entries {
            if q % 4 == 3 && e.n % 4 == 2 {
                prop_assert_eq!(e.status, Status::Nonexistent);
            }
            if e.status == Status::Constructed {
                let g = e.certificate.as_ref().unwrap().generator_matrix(1 << 22).unwrap();
                prop_assert!(check_self_dual(&g).unwrap());
            }
        }
    }
}
