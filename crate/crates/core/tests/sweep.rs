use internal_waves::dispersion::Branch;
use internal_waves::setup::WaveSetup;
use internal_waves::verify::{run_all, VerifyConfig};
use internal_waves::Error;

#[test]
fn every_check_passes_across_sites_and_branches() {
    for lat in [-60.0f64, -30.0, -5.0, 0.0, 10.0, 45.0, 70.0] {
        for branch in [Branch::Positive, Branch::Negative] {
            for amplitude in [0.0, 3.0, 12.0] {
                let setup = WaveSetup {
                    latitude: lat.to_radians(),
                    amplitude,
                    branch,
                    ..WaveSetup::reference()
                };
                let wave = setup.solve().unwrap().wave;
                let summary = run_all(&wave, &VerifyConfig::default());
                let failures: Vec<_> = summary.failures().collect();
                assert!(
                    failures.is_empty(),
                    "lat {lat} {branch:?} a {amplitude}: {failures:?}"
                );
            }
        }
    }
}

#[test]
fn shorter_and_longer_waves() {
    for wavelength in [20.0, 50.0, 200.0, 1000.0] {
        let k = 2.0 * std::f64::consts::PI / wavelength;
        let base = WaveSetup {
            k,
            amplitude: 0.0,
            ..WaveSetup::reference()
        }
        .solve()
        .unwrap()
        .wave;
        let amplitude = 0.5 / base.params.m;
        let wave = WaveSetup {
            k,
            amplitude,
            ..WaveSetup::reference()
        }
        .solve()
        .unwrap()
        .wave;
        let summary = run_all(&wave, &VerifyConfig::default());
        assert!(
            summary.all_passed,
            "{wavelength}: {:?}",
            summary.failures().collect::<Vec<_>>()
        );
    }
}

#[test]
fn domain_errors_are_not_numeric() {
    let cases = [
        WaveSetup {
            rho_plus: 990.0,
            ..WaveSetup::reference()
        },
        WaveSetup {
            amplitude: 1e3,
            ..WaveSetup::reference()
        },
        WaveSetup {
            k: 1e-8,
            ..WaveSetup::reference()
        },
        WaveSetup {
            latitude: 2.0,
            ..WaveSetup::reference()
        },
    ];
    for setup in cases {
        let err: Error = setup.solve().unwrap_err();
        assert!(!err.is_numeric(), "{err}");
    }
}
