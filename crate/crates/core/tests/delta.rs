use ghost_slopes::chars::{EpsilonChar, WStarProfile};
use ghost_slopes::delta::{
    ab_values, delta_hull, delta_increment, delta_prime, f_value, near_steinberg, near_steinberg_from_table, p_kl,
};
use ghost_slopes::dims::SParam;
use ghost_slopes::padic::Valuation;

fn example() -> (SParam, ghost_slopes::chars::WeightK) {
    let e = EpsilonChar::new(7, 0, 4).unwrap();
    (SParam::new(e, 3).unwrap(), e.weight(16).unwrap())
}

#[test]
fn worked_example() {
    let (sp, k) = example();
    let v: Vec<String> = (-2..=2).map(|l| delta_prime(&sp, &k, l).unwrap().to_string()).collect();
    assert_eq!(v, ["14", "9", "6", "9", "14"]);
    assert!(delta_prime(&sp, &k, 3).is_err());
    assert_eq!(delta_increment(&sp, &k, 1).unwrap(), Valuation::int(3));
    assert_eq!(delta_increment(&sp, &k, 2).unwrap(), Valuation::int(5));
    assert!(delta_increment(&sp, &k, 0).is_err());
    assert_eq!(ab_values(&sp, &k, 1), (5, 9));
    assert_eq!(ab_values(&sp, &k, 2).1, 13);
    assert_eq!(p_kl(&sp.eps(), &k, 1).unwrap(), Valuation::int(4));
    assert_eq!(f_value(&sp, &k, 1, 0).unwrap(), Valuation::int(6));
    assert!(f_value(&sp, &k, 3, 0).is_err());
    let t = delta_hull(&sp, &k).unwrap();
    assert_eq!(t.to_tsv(), "l\tdelta\thull\n-2\t14\t14\n-1\t9\t9\n0\t6\t6\n1\t9\t9\n2\t14\t14\n");
    let slopes: Vec<String> = t.hull.slope_list().iter().map(|v| v.to_string()).collect();
    assert_eq!(slopes, ["-5", "-3", "3", "5"]);
}

#[test]
fn near_steinberg_examples() {
    let (sp, k) = example();
    let t = delta_hull(&sp, &k).unwrap();
    let ns = near_steinberg_from_table(&t, &Valuation::int(3)).unwrap();
    assert_eq!((ns.l, ns.lo, ns.hi), (1, 2, 4));
    assert!(near_steinberg_from_table(&t, &Valuation::int(1)).is_none());
    let ns = near_steinberg_from_table(&t, &Valuation::int(5)).unwrap();
    assert_eq!((ns.l, ns.lo, ns.hi), (2, 1, 5));
}

fn each_table(mut f: impl FnMut(&EpsilonChar, &SParam, i64)) {
    for p in [7i64, 11] {
        for k0 in 2..=p {
            let e = EpsilonChar::new(p, 0, k0).unwrap();
            for s in e.s_set() {
                let sp = SParam::new(e, s).unwrap();
                for kb in 0..=120 {
                    f(&e, &sp, kb);
                }
            }
        }
    }
}

/// `B_{k,ℓ}` moves monotonically across `S`, direction set by parity.
#[test]
fn b_is_monotone_in_s() {
    for p in [7i64, 11] {
        for k0 in 2..=p {
            let e = EpsilonChar::new(p, 0, k0).unwrap();
            let sps: Vec<SParam> = e.s_set().into_iter().map(|s| SParam::new(e, s).unwrap()).collect();
            for kb in 0..=200 {
                let k = e.weight_bullet(kb).unwrap();
                for l in -30..30 {
                    let b: Vec<i64> = sps.iter().map(|sp| ab_values(sp, &k, l).1).collect();
                    let ok = if (kb - l).rem_euclid(2) == 0 {
                        b.windows(2).all(|w| w[0] >= w[1])
                    } else {
                        b.windows(2).all(|w| w[0] <= w[1])
                    };
                    assert!(ok, "p={p} k0={k0} kb={kb} l={l}: {b:?}");
                }
            }
        }
    }
}

#[test]
fn increments_grow_at_least_linearly() {
    each_table(|e, sp, kb| {
        let k = e.weight_bullet(kb).unwrap();
        let t = delta_hull(sp, &k).unwrap();
        let ctx = e.ctx();
        let inc: Vec<Valuation> = (1..=t.half).map(|l| t.value(l).unwrap() - t.value(l - 1).unwrap()).collect();
        for l1 in 1..=t.half {
            for l2 in l1 + 1..=t.half {
                let bound = Valuation::ratio((e.p() - 3) * (l2 - l1 - 1), 2)
                    - Valuation::int(2 * ctx.vp_range_sum((l1 - 1) as u64, (l2 - 1) as u64).unwrap() as i64)
                    + Valuation::one();
                let diff = &inc[(l2 - 1) as usize] - &inc[(l1 - 1) as usize];
                assert!(diff >= bound, "p={} s={} kb={kb} ({l1},{l2}): {diff} < {bound}", e.p(), sp.s());
            }
        }
    });
}

/// Near-Steinberg ranges collected over weights are nested or disjoint.
#[test]
fn near_steinberg_ranges_nest() {
    let profiles =
        [(None, "1/2"), (None, "7/2"), (Some(6), "9/2"), (Some(17), "6"), (Some(57), "13/3"), (Some(200), "11/2")];
    let mut failures = vec![];
    for (p, k0, s) in [(7, 4, 3), (7, 7, 4), (7, 7, 5), (11, 4, 3), (11, 4, 5), (11, 9, 7)] {
        let e = EpsilonChar::new(p, 0, k0).unwrap();
        let sp = SParam::new(e, s).unwrap();
        for (anchor, t) in profiles {
            let prof = match anchor {
                None => format!("origin:t={t}"),
                Some(kb) => format!("k={}:t={t}", e.weight_bullet(kb).unwrap().k()),
            };
            let w = WStarProfile::parse(&e, &prof).unwrap();
            let mut ranges = vec![];
            for kb in 0..=200 {
                let k = e.weight_bullet(kb).unwrap();
                if k.k() == w.anchor().center() {
                    continue;
                }
                if let Some(ns) = near_steinberg(&sp, &k, &w).unwrap() {
                    ranges.push((ns.lo, ns.hi, kb));
                }
            }
            for (i, a) in ranges.iter().enumerate() {
                for b in &ranges[i + 1..] {
                    let disjoint = a.1 <= b.0 + 1 || b.1 <= a.0 + 1;
                    let nested = (a.0 <= b.0 && b.1 <= a.1) || (b.0 <= a.0 && a.1 <= b.1);
                    if !disjoint && !nested {
                        failures.push(format!("p={p} k0={k0} s={s} {prof}: {a:?} vs {b:?}"));
                    }
                }
            }
        }
    }
    assert!(failures.is_empty(), "{} overlapping pairs, first: {}", failures.len(), failures[0]);
}
