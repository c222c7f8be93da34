use ghost_slopes::chars::EpsilonChar;
use ghost_slopes::delta::theta;
use ghost_slopes::dims::{ModuleSpec, SParam};

fn all_params() -> Vec<SParam> {
    let mut v = vec![];
    for p in [7i64, 11, 13] {
        for k0 in 2..=p {
            let e = EpsilonChar::new(p, 0, k0).unwrap();
            for s in 0..=p - 2 {
                v.push(SParam::new(e, s).unwrap());
            }
        }
    }
    v
}

/// Number of `j ≤ kb` in the progression `t, t + q, t + 2q, …`.
fn progression_count(t: i64, q: i64, kb: i64) -> i64 {
    let mut n = 0;
    let mut j = t;
    while j <= kb {
        n += 1;
        j += q;
    }
    n
}

#[test]
fn dims_are_nonnegative_and_monotone() {
    for sp in all_params() {
        let mut last = i64::MIN;
        for kb in 0..=5000 {
            let (ur, iw) = (sp.d_ur_kb(kb), sp.d_iw_kb(kb));
            assert!(ur >= 0 && iw - 2 * ur >= 0, "s={} kb={kb}: ({ur}, {iw})", sp.s());
            assert!(ur >= last);
            last = ur;
            let (ur_d, iw_d) = sp.d_dagger_kb(kb);
            assert_eq!(iw_d, iw + 2 * sp.delta());
            assert_eq!(ur_d, ur + sp.delta());
        }
    }
}

#[test]
fn d_ur_counts_two_progressions() {
    for sp in all_params() {
        let q = sp.eps().p() + 1;
        for kb in 0..=600 {
            let want = progression_count(sp.t1(), q, kb) + progression_count(sp.t2(), q, kb);
            assert_eq!(sp.d_ur_kb(kb), want, "p={} k0={} s={} kb={kb}", sp.eps().p(), sp.eps().k0(), sp.s());
        }
    }
}

#[test]
fn theta_takes_two_values() {
    for sp in all_params() {
        let e = sp.eps();
        let a = e.a_of(sp.s());
        for kb in 0..60 {
            let k = e.weight_bullet(kb).unwrap();
            for l in -40..40 {
                let th = theta(&sp, &k, l);
                assert!(th == a + 2 || th == e.p() - 1 - a, "s={} kb={kb} l={l}: {th}", sp.s());
                assert_eq!(th + theta(&sp, &k, l + 1), e.p() + 1);
            }
        }
    }
}

#[test]
fn spec_text_round_trips() {
    let e = EpsilonChar::new(11, 0, 4).unwrap();
    let s = ModuleSpec::parse(e, "s:3x2+s:0").unwrap();
    assert_eq!(s.to_string(), "s:0+s:3x2");
    assert_eq!(ModuleSpec::parse(e, &s.to_string()).unwrap(), s);
    assert_eq!(s.flatten(), vec![0, 3, 3]);
    assert_eq!(s.total_mult(), 3);
    for bad in ["", "s:", "s:99", "q:1", "s:1x0", "ab:1"] {
        assert!(ModuleSpec::parse(e, bad).is_err(), "{bad:?}");
    }
}

#[test]
fn joint_dims_are_sums() {
    let e = EpsilonChar::new(11, 0, 6).unwrap();
    let parts =
        [ModuleSpec::single(e, 4).unwrap(), ModuleSpec::single(e, 5).unwrap(), ModuleSpec::single(e, 4).unwrap()];
    let joint = ModuleSpec::join(&parts).unwrap();
    for kb in 0..300 {
        for dagger in [false, true] {
            let sum = parts.iter().map(|p| p.dims_kb(kb, dagger)).fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
            assert_eq!(joint.dims_kb(kb, dagger), sum);
        }
    }
}
