use proptest::prelude::*;
use rand::SeedableRng;
use sgcodes::codes::{self, LinearCode, Method, SweepConfig};
use sgcodes::forms::{self, AlternatingForm};
use sgcodes::grassmann::{self, PluckerMap};
use sgcodes::linalg::{dot, enumerate_projective_points, rank, Matrix};
use sgcodes::{formulas, Field, WeightEnumerator};

fn gf(q: u32) -> Field {
    Field::new(q).unwrap()
}

fn both(code: &LinearCode) -> (WeightEnumerator, WeightEnumerator) {
    let cfg = SweepConfig::default();
    (
        codes::weight_enumerator(code, Method::CodewordSweep, &cfg).unwrap(),
        codes::weight_enumerator(code, Method::HyperplaneSweep, &cfg).unwrap(),
    )
}

fn naive(code: &LinearCode) -> WeightEnumerator {
    let f = code.field();
    let k = code.dimension();
    let q = f.order() as usize;
    let mut e = WeightEnumerator::default();
    for idx in 0..q.pow(k as u32) {
        let msg: Vec<u8> = (0..k).map(|i| ((idx / q.pow(i as u32)) % q) as u8).collect();
        let w = (0..code.length())
            .filter(|&j| {
                let col: Vec<u8> = (0..k).map(|i| code.generator().get(i, j)).collect();
                dot(&msg, &col, f) != 0
            })
            .count();
        e.add(w as u64, 1);
    }
    e
}

fn check_rules(e: &WeightEnumerator, code: &LinearCode) {
    let q = code.field().order() as u128;
    assert_eq!(e.total(), q.pow(code.dimension() as u32));
    assert_eq!(e.get(0), 1);
    for (w, c) in e.iter() {
        if w > 0 {
            assert_eq!(c % (q - 1), 0, "count at weight {w}");
        }
    }
    assert!(e.max_weight().unwrap() <= code.length() as u64);
}

#[test]
fn methods_agree_on_symplectic_codes() {
    for (n, k, q) in [(2, 2, 2), (2, 2, 3), (3, 3, 2), (2, 1, 4), (3, 2, 2)] {
        let code = codes::build_code(n, k, &gf(q)).unwrap();
        let (a, b) = both(&code);
        assert_eq!(a, b, "W({n},{k}) q={q}");
        check_rules(&a, &code);
    }
}

/// d_min = N - max |points on a hyperplane|, with hyperplanes taken in the
/// full Plücker coordinate space and the points read from the embedding.
#[test]
fn minimum_distance_from_hyperplane_sections() {
    for q in [2u32, 3] {
        let f = gf(q);
        let map = PluckerMap::new(4, 2);
        let pts: Vec<Vec<u8>> = grassmann::enumerate_isotropic(2, 2, &f)
            .unwrap()
            .iter()
            .map(|s| map.point(s, &f).coords().to_vec())
            .collect();
        let n = pts.len();
        let mut best = 0;
        for h in enumerate_projective_points(map.len(), &f) {
            let on = pts.iter().filter(|p| dot(p, &h, &f) == 0).count();
            if on < n {
                best = best.max(on);
            }
        }
        let code = codes::build_code(2, 2, &f).unwrap();
        let d = codes::min_distance(&code, None, &SweepConfig::default()).unwrap();
        assert_eq!(d as usize, n - best, "q={q}");
        assert_eq!(d as u128, formulas::dmin_line(2, q as u64).unwrap());
    }
}

#[test]
fn form_codeword_weight_counts_common_isotropic_lines() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for (n, q) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2)] {
        let f = gf(q);
        let sigma = AlternatingForm::standard(n, &f);
        let code = codes::build_code(n, 2, &f).unwrap();
        for _ in 0..25 {
            let theta = forms::random_alternating(n, &f, &mut rng);
            let (word, wt) = codes::codeword_from_form(&code, &theta).unwrap();
            let eta = forms::count_common_isotropic_lines(&sigma, &theta, &f).unwrap();
            assert_eq!(wt as u128, code.length() as u128 - eta);
            assert!(code.contains(&word));
            assert!(wt as u128 >= formulas::dmin_line(n, q as u64).unwrap() || wt == 0);
        }
    }
}

fn arb_code() -> impl Strategy<Value = LinearCode> {
    (
        prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9, 16]),
        1usize..5,
        1usize..24,
    )
        .prop_flat_map(|(q, k, extra)| {
            let n = k + extra;
            prop::collection::vec(0..q as u8, k * n).prop_map(move |data| (q, k, n, data))
        })
        .prop_filter_map("full rank", |(q, k, n, data)| {
            let f = gf(q);
            let m = Matrix::from_vec(k, n, data).unwrap();
            (rank(&m, &f) == k).then(|| LinearCode::from_generator(f, m).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sweeps_match_naive_encoding(code in arb_code()) {
        let (a, b) = both(&code);
        let want = naive(&code);
        prop_assert_eq!(&a, &want);
        prop_assert_eq!(&b, &want);
        check_rules(&a, &code);
        let d = codes::min_distance(&code, None, &SweepConfig::default()).unwrap();
        prop_assert_eq!(Some(d), want.min_nonzero());
    }

    #[test]
    fn thread_count_is_irrelevant(code in arb_code(), threads in 1usize..4) {
        let cfg = SweepConfig { threads: Some(threads), ..SweepConfig::default() };
        let a = codes::weight_enumerator(&code, Method::CodewordSweep, &cfg).unwrap();
        prop_assert_eq!(a, codes::weight_enumerator(&code, Method::CodewordSweep, &SweepConfig::default()).unwrap());
    }
}
