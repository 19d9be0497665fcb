use an_wiretap::randmat::{hermitian_eigenvalues, sample_complex_gaussian, CMatrix, RngStream, C64};
use an_wiretap::wiretap::{
    build_ane_projector, build_precoder, rate_bob_an, rate_eve_an_ane, rates_no_an, rates_no_an_with, secrecy_rate,
    AneProjector, ChannelRealization,
};
use an_wiretap::{Error, NoAnModel, Regime, SystemConfig};

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn cfg(n_a: u32, n_b: u32, n_e: u32) -> SystemConfig {
    SystemConfig::new(n_a, n_b, n_e, 100.0, 1.0, 1.0).unwrap()
}

/// log2 |det(I + s X X^H)| by LU.
fn log2det_lu(x: &CMatrix, s: f64) -> f64 {
    let m = CMatrix::identity(x.nrows(), x.nrows()) + x * x.adjoint() * C64::new(s, 0.0);
    m.lu().determinant().norm().log2()
}

#[test]
fn config_invariants() {
    let err = SystemConfig::new(8, 8, 4, 1.0, 1.0, 1.0).unwrap_err();
    assert!(matches!(&err, Error::InvalidConfig(m) if m.contains("N_a > N_b")));
    assert!(SystemConfig::new(8, 0, 4, 1.0, 1.0, 1.0).is_err());
    assert!(SystemConfig::new(8, 4, 0, 1.0, 1.0, 1.0).is_err());
    assert!(SystemConfig::new(8, 4, 2, 0.0, 1.0, 1.0).is_err());
    assert!(SystemConfig::new(8, 4, 2, 1.0, -1.0, 1.0).is_err());
    assert!(SystemConfig::new(8, 4, 2, 1.0, 1.0, 0.0).is_err());
    assert!(SystemConfig::new(8, 4, 2, 1.0, 0.0, 1.0).is_ok());

    assert_eq!(cfg(16, 8, 8).regime(), Regime::Residual);
    assert_eq!(cfg(16, 8, 9).regime(), Regime::CompleteElimination);
    let c = SystemConfig::new(16, 8, 4, 2.0, 3.0, 0.5).unwrap();
    assert!((c.eta() - 2.0 * 0.5 * 16.0 * (1.0 + 3.0 * 8.0 / 8.0)).abs() < 1e-12);
    assert!((c.signal_power() - 2.0 * 0.5 * 8.0).abs() < 1e-12);
    assert!((c.noise_power() - 2.0 * 3.0 * 0.5 * 8.0).abs() < 1e-12);
}

#[test]
fn nulling_over_many_draws() {
    for (k, &(n_a, n_b, n_e)) in [(4, 2, 3), (16, 8, 12), (16, 8, 4), (12, 4, 6)].iter().enumerate() {
        let c = cfg(n_a, n_b, n_e);
        for t in 0..250 {
            let ch = ChannelRealization::sample(&c, RngStream::new(100 + k as u64, t)).unwrap();
            let p = build_precoder(&ch.h, &c).unwrap();
            let mut v = CMatrix::zeros(n_a as usize, n_a as usize);
            v.columns_mut(0, n_b as usize).copy_from(&p.v1);
            v.columns_mut(n_b as usize, (n_a - n_b) as usize).copy_from(&p.v0);
            assert!(max_abs(&(v.adjoint() * &v - CMatrix::identity(n_a as usize, n_a as usize))) <= 1e-10);
            assert!(max_abs(&(&ch.h * &p.v0)) <= 1e-9 * ch.h.norm());
            let gv0 = &ch.g * &p.v0;
            match build_ane_projector(&ch.g, &p, &c).unwrap() {
                AneProjector::CompleteElimination { w } => {
                    assert_eq!(w.shape(), ((n_e + n_b - n_a) as usize, n_e as usize));
                    assert!(max_abs(&(&w * &gv0)) <= 1e-8);
                    assert!(max_abs(&(&w * w.adjoint() - CMatrix::identity(w.nrows(), w.nrows()))) <= 1e-10);
                    let obj = (&w * &gv0 * gv0.adjoint() * w.adjoint()).trace().re;
                    assert!(obj <= 1e-14 * ch.g.norm_squared());
                }
                AneProjector::Residual { w, lambda_min_sq } => {
                    let m = &gv0 * gv0.adjoint();
                    let eig = hermitian_eigenvalues(&m).unwrap();
                    let smallest = eig.iter().copied().fold(f64::INFINITY, f64::min);
                    assert!((lambda_min_sq - smallest).abs() <= 1e-8 * smallest.max(1e-300));
                    assert!((w.norm() - 1.0).abs() <= 1e-12);
                    let obj = (w.adjoint() * &m * &w)[(0, 0)].re;
                    assert!((obj - lambda_min_sq).abs() <= 1e-8 * m.norm());
                }
            }
        }
    }
}

#[test]
fn identity_channel_precoder() {
    let c = cfg(6, 2, 3);
    let mut h = CMatrix::zeros(2, 6);
    h[(0, 0)] = C64::new(1.0, 0.0);
    h[(1, 1)] = C64::new(1.0, 0.0);
    let p = build_precoder(&h, &c).unwrap();
    assert!(max_abs(&(&h * &p.v0)) < 1e-15);
    assert!(p.v0.rows(0, 2).norm() < 1e-12);
}

#[test]
fn residual_projection_is_optimal() {
    let c = cfg(16, 8, 4);
    let ch = ChannelRealization::sample(&c, RngStream::new(7, 0)).unwrap();
    let p = build_precoder(&ch.h, &c).unwrap();
    let AneProjector::Residual { lambda_min_sq, .. } = build_ane_projector(&ch.g, &p, &c).unwrap() else {
        panic!("expected residual regime")
    };
    let gv0 = &ch.g * &p.v0;
    let m = &gv0 * gv0.adjoint();
    let mut rng = RngStream::new(7, 1).rng();
    for _ in 0..100 {
        let u = sample_complex_gaussian(4, 1, &mut rng).unwrap();
        let u = &u / C64::new(u.norm(), 0.0);
        assert!((u.adjoint() * &m * &u)[(0, 0)].re >= lambda_min_sq - 1e-8);
    }
}

#[test]
fn single_eavesdropper_antenna() {
    let c = cfg(16, 8, 1);
    let ch = ChannelRealization::sample(&c, RngStream::new(8, 0)).unwrap();
    let p = build_precoder(&ch.h, &c).unwrap();
    let AneProjector::Residual { w, lambda_min_sq } = build_ane_projector(&ch.g, &p, &c).unwrap() else {
        panic!("expected residual regime")
    };
    assert!((w[0].norm() - 1.0).abs() < 1e-12);
    let want = (&ch.g * &p.v0).norm_squared();
    assert!((lambda_min_sq - want).abs() < 1e-10 * want);
}

#[test]
fn rates_against_lu_oracle() {
    let c = cfg(16, 8, 12);
    for t in 0..20 {
        let ch = ChannelRealization::sample(&c, RngStream::new(9, t)).unwrap();
        let p = build_precoder(&ch.h, &c).unwrap();
        let bob = rate_bob_an(&ch.h, &p, &c).unwrap();
        let want = log2det_lu(&ch.h, 100.0);
        assert!((bob - want).abs() <= 1e-9 * want);
    }
    let c = SystemConfig::new(16, 12, 10, 2.0, 1.0, 1.0).unwrap();
    for t in 0..20 {
        let ch = ChannelRealization::sample(&c, RngStream::new(10, t)).unwrap();
        let p = build_precoder(&ch.h, &c).unwrap();
        let s = c.eta() / 16.0;
        let (rb, re) = rates_no_an(&ch.h, &ch.g, &p, &c).unwrap();
        assert!((rb - log2det_lu(&ch.h, s)).abs() <= 1e-9 * rb);
        assert!((re - log2det_lu(&ch.g, s)).abs() <= 1e-9 * re);
        let (_, re1) = rates_no_an_with(&ch.h, &ch.g, &p, &c, NoAnModel::Precoded).unwrap();
        let want = log2det_lu(&(&ch.g * &p.v1), s);
        assert!((re1 - want).abs() <= 1e-9 * want);
    }
}

#[test]
fn trivial_rates() {
    let c = SystemConfig::new(16, 1, 4, 3.0, 1.0, 1.0).unwrap();
    let mut h = CMatrix::zeros(1, 16);
    h[(0, 0)] = C64::new(1.0, 0.0);
    let p = build_precoder(&h, &c).unwrap();
    assert!((rate_bob_an(&h, &p, &c).unwrap() - 2.0).abs() < 1e-14);

    for n_e in [4, 12] {
        let c = cfg(16, 8, n_e);
        let h = CMatrix::zeros(8, 16);
        let g = CMatrix::zeros(n_e as usize, 16);
        let p = build_precoder(&h, &c).unwrap();
        assert_eq!(rate_bob_an(&h, &p, &c).unwrap(), 0.0);
        let proj = build_ane_projector(&g, &p, &c).unwrap();
        assert_eq!(rate_eve_an_ane(&g, &p, &proj, &c).unwrap(), 0.0);
        assert_eq!(rates_no_an(&h, &g, &p, &c).unwrap(), (0.0, 0.0));
    }

    assert_eq!(secrecy_rate(3.0, 1.0), 2.0);
    assert_eq!(secrecy_rate(1.0, 3.0), 0.0);
    assert_eq!(secrecy_rate(1.5, 1.5), 0.0);
}

#[test]
fn regime_mismatch_is_an_error() {
    let ce = cfg(16, 8, 12);
    let res = cfg(16, 8, 4);
    let ch = ChannelRealization::sample(&ce, RngStream::new(1, 1)).unwrap();
    let p = build_precoder(&ch.h, &ce).unwrap();
    let proj = build_ane_projector(&ch.g, &p, &ce).unwrap();
    let ch4 = ChannelRealization::sample(&res, RngStream::new(1, 1)).unwrap();
    let p4 = build_precoder(&ch4.h, &res).unwrap();
    assert!(matches!(rate_eve_an_ane(&ch4.g, &p4, &proj, &res), Err(Error::RegimeMismatch(_))));
    let proj4 = build_ane_projector(&ch4.g, &p4, &res).unwrap();
    assert!(matches!(rate_eve_an_ane(&ch.g, &p, &proj4, &ce), Err(Error::RegimeMismatch(_))));
}

#[test]
fn beta_behaviour_per_realization() {
    for t in 0..50 {
        let base = cfg(16, 8, 12);
        let ch = ChannelRealization::sample(&base, RngStream::new(12, t)).unwrap();
        let rates: Vec<u64> = [0.5, 2.0, 8.0]
            .iter()
            .map(|&beta| {
                let c = SystemConfig { beta, ..base };
                let p = build_precoder(&ch.h, &c).unwrap();
                let proj = build_ane_projector(&ch.g, &p, &c).unwrap();
                rate_eve_an_ane(&ch.g, &p, &proj, &c).unwrap().to_bits()
            })
            .collect();
        assert!(rates.iter().all(|&r| r == rates[0]));

        let base = cfg(16, 8, 4);
        let ch = ChannelRealization::sample(&base, RngStream::new(13, t)).unwrap();
        let p = build_precoder(&ch.h, &base).unwrap();
        let proj = build_ane_projector(&ch.g, &p, &base).unwrap();
        let mut prev = f64::INFINITY;
        for beta in [0.0, 0.1, 0.5, 1.0, 2.0, 10.0, 1e3] {
            let r = rate_eve_an_ane(&ch.g, &p, &proj, &SystemConfig { beta, ..base }).unwrap();
            assert!(r < prev);
            prev = r;
        }
        assert!(rate_eve_an_ane(&ch.g, &p, &proj, &SystemConfig { beta: 1e12, ..base }).unwrap() <= 1e-6);
    }
}

#[test]
fn no_an_bob_equals_an_bob_without_noise_power() {
    let c = SystemConfig::new(16, 8, 6, 5.0, 0.0, 2.0).unwrap();
    for t in 0..10 {
        let ch = ChannelRealization::sample(&c, RngStream::new(14, t)).unwrap();
        let p = build_precoder(&ch.h, &c).unwrap();
        let (rb, _) = rates_no_an(&ch.h, &ch.g, &p, &c).unwrap();
        assert!((rb - rate_bob_an(&ch.h, &p, &c).unwrap()).abs() < 1e-10 * rb);
    }
}

#[test]
fn eliminated_channel_statistics() {
    let c = cfg(16, 8, 12);
    let (mut sum, mut sq, mut n) = (C64::new(0.0, 0.0), 0.0, 0.0);
    for t in 0..4000 {
        let ch = ChannelRealization::sample(&c, RngStream::new(15, t)).unwrap();
        let p = build_precoder(&ch.h, &c).unwrap();
        let AneProjector::CompleteElimination { w } = build_ane_projector(&ch.g, &p, &c).unwrap() else {
            unreachable!()
        };
        let g1 = w * &ch.g * &p.v1;
        for z in g1.iter() {
            sum += z;
            sq += z.norm_sqr();
            n += 1.0;
        }
    }
    assert!((sum / n).norm() < 0.02);
    assert!((sq / n - 1.0).abs() < 0.03, "variance {}", sq / n);
}
