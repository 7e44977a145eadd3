use hlfreq::continuum::{average_ball, maximal_centered_cont, maximal_uncentered_cont, StepFunction};
use hlfreq::maxengine::{event_centered, event_uncentered, oracle_centered, oracle_uncentered};
use hlfreq::rational::{int, rat};
use hlfreq::signal::{Block, BlockSignal, DenseSignal, Signal};
use hlfreq::{Rat, Value};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn dense() -> impl Strategy<Value = DenseSignal> {
    (-20i64..20, prop::collection::vec((0i64..=8, 1i64..=8), 1..16)).prop_map(|(lo, vals)| {
        let mut values: Vec<Rat> = vals.into_iter().map(|(p, q)| rat(p, q)).collect();
        if values.iter().all(Zero::is_zero) {
            values[0] = rat(1, 1);
        }
        DenseSignal::new(int(lo), values).unwrap()
    })
}

fn step() -> impl Strategy<Value = StepFunction> {
    prop::collection::btree_set(-32i64..=32, 2..7).prop_flat_map(|cuts| {
        let cuts: Vec<i64> = cuts.into_iter().collect();
        let n = cuts.len() - 1;
        prop::collection::vec((1i64..=8, 1i64..=8), n).prop_map(move |vals| {
            StepFunction::new(
                cuts.iter().map(|&c| rat(c, 16)).collect(),
                vals.into_iter().map(|(p, q)| rat(p, q)).collect(),
            )
            .unwrap()
        })
    })
}

fn probe(d: &DenseSignal) -> std::ops::Range<i64> {
    let lo: i64 = d.lo().try_into().unwrap();
    let w = d.width() as i64;
    lo - w - 2..lo + 2 * w + 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn window_sums_add(d in dense(), a in -40i64..40, len1 in 0i64..30, len2 in 0i64..30) {
        let b = d.to_blocks();
        let (m, c) = (a + len1, a + len1 + len2);
        for s in [&d as &dyn Signal, &b as &dyn Signal] {
            let left = s.window_sum(&int(a), &int(m)).unwrap();
            let right = s.window_sum(&int(m + 1), &int(c)).unwrap();
            prop_assert_eq!(left.add(&right), s.window_sum(&int(a), &int(c)).unwrap());
        }
    }

    #[test]
    fn dense_and_block_engines_agree(d in dense()) {
        let b = d.to_blocks();
        for n in probe(&d) {
            let n = int(n);
            let (o, e) = (oracle_centered(&d, &n).unwrap(), event_centered(&b, &n).unwrap());
            prop_assert_eq!((o.max_value, o.r_n), (e.max_value, e.r_n));
            let (o, e) = (oracle_uncentered(&d, &n).unwrap(), event_uncentered(&b, &n).unwrap());
            prop_assert_eq!((o.max_value, o.min_diameter), (e.max_value, e.min_diameter));
        }
    }

    #[test]
    fn adding_mass_never_lowers_the_maximum(d in dense(), extra in dense()) {
        let lo = d.lo().min(extra.lo()).clone();
        let hi = (d.lo() + d.width()).max(extra.lo() + extra.width());
        let mut values = Vec::new();
        let mut n = lo.clone();
        while n < hi {
            values.push(d.eval(&n).lo() + extra.eval(&n).lo());
            n += 1;
        }
        let sum = DenseSignal::new(lo, values).unwrap();
        for n in probe(&d) {
            let n = int(n);
            let (a, b) = (oracle_centered(&d, &n).unwrap(), oracle_centered(&sum, &n).unwrap());
            prop_assert!(a.max_value.hi() <= b.max_value.lo());
        }
    }

    #[test]
    fn radii_survive_scaling_translation_and_reflection(d in dense(), p in 1i64..9, q in 1i64..9, m in -50i64..50) {
        let b = d.to_blocks();
        let scaled = d.scaled(&rat(p, q)).unwrap().to_blocks();
        let moved = d.shifted(&int(m)).to_blocks();
        let mirrored = d.reflected().to_blocks();
        for n in probe(&d) {
            let nb = int(n);
            let c = event_centered(&b, &nb).unwrap();
            let u = event_uncentered(&b, &nb).unwrap();
            let cs = event_centered(&scaled, &nb).unwrap();
            prop_assert_eq!(&cs.r_n, &c.r_n);
            prop_assert_eq!(cs.max_value, c.max_value.scale(&rat(p, q)));
            let ct = event_centered(&moved, &int(n + m)).unwrap();
            prop_assert_eq!((&ct.r_n, &ct.max_value), (&c.r_n, &c.max_value));
            let cr = event_centered(&mirrored, &int(-n)).unwrap();
            let ur = event_uncentered(&mirrored, &int(-n)).unwrap();
            prop_assert_eq!((&cr.r_n, &cr.max_value), (&c.r_n, &c.max_value));
            prop_assert_eq!((&ur.min_diameter, &ur.max_value), (&u.min_diameter, &u.max_value));
        }
    }

    #[test]
    fn uncentered_dominates_centered(d in dense()) {
        let b = d.to_blocks();
        for n in probe(&d) {
            let n = int(n);
            let c = event_centered(&b, &n).unwrap();
            let u = event_uncentered(&b, &n).unwrap();
            prop_assert!(u.max_value.lo() >= c.max_value.hi());
            if u.max_value == c.max_value {
                // the centered window attains the uncentered maximum
                prop_assert!(u.min_diameter <= &c.r_n * 2u32);
            }
        }
    }

    #[test]
    fn mass_near_the_origin_bounds_mf_below(d in dense()) {
        let total = d.window_sum_exact(d.lo(), &(d.lo() + d.width()));
        let mut r = BigInt::zero();
        while d.window_sum_exact(&-&r, &r) * rat(2, 1) < total {
            r += 1;
        }
        let b = d.to_blocks();
        for n in probe(&d) {
            let nb = int(n);
            if nb.abs() <= r {
                continue;
            }
            let c = event_centered(&b, &nb).unwrap();
            let bound = &total / Rat::from_integer(int(2) * (nb.abs() * 4 + 1));
            prop_assert!(*c.max_value.lo() >= bound);
        }
    }

    #[test]
    fn continuous_maximum_dominates_every_ball(s in step(), x in -48i64..=48, r in 1i64..200) {
        let x = rat(x, 16);
        let c = maximal_centered_cont(&s, &x).unwrap();
        let u = maximal_uncentered_cont(&s, &x).unwrap();
        let a = average_ball(&s, &x, &rat(r, 32)).unwrap();
        prop_assert!(a <= c.max_value);
        prop_assert!(c.max_value <= u.max_value);
        prop_assert!(u.max_value <= s.norm_sup());
        prop_assert!(u.radius <= c.radius || u.max_value > c.max_value);
    }

    #[test]
    fn power_law_sums_bracket_floats(start in 1i64..2000, len in 1i64..400, num in 1i64..10) {
        let alpha = rat(num, 10);
        let b = BlockSignal::new(vec![Block::power_law(int(start), int(start + len - 1), alpha)]).unwrap();
        let v = b.window_sum(&int(start), &int(start + len - 1)).unwrap();
        let want: f64 = (start..start + len).map(|m| (m as f64).powf(-(num as f64) / 10.0)).sum();
        let (lo, hi) = (hlfreq::rational::to_f64(v.lo()), hlfreq::rational::to_f64(v.hi()));
        prop_assert!(lo <= want * (1.0 + 1e-12) && want * (1.0 - 1e-12) <= hi);
    }
}

#[test]
fn larger_uncentered_maximum_can_need_a_longer_window() {
    // f(0) = 1, f(1) = 2: the centered maximum at 0 is attained at radius 0,
    // the uncentered one only by [0, 1]
    let d = DenseSignal::new(int(0), vec![rat(1, 1), rat(2, 1)]).unwrap();
    let c = oracle_centered(&d, &int(0)).unwrap();
    let u = oracle_uncentered(&d, &int(0)).unwrap();
    assert_eq!((c.max_value, c.r_n), (Value::Exact(rat(1, 1)), int(0)));
    assert_eq!((u.max_value, u.min_diameter), (Value::Exact(rat(3, 2)), int(1)));
}
