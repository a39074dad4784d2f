use labelweight_hss::codes::goppa::{goppa_build, GoppaPolynomial, SupportSet};
use labelweight_hss::codes::hermitian::hermitian_build;
use labelweight_hss::codes::rs::rs_build;
use labelweight_hss::codes::{LabeledCode, Labeling};
use labelweight_hss::error::{DecodeError, Error};
use labelweight_hss::galois::{Fe, Field};
use labelweight_hss::hss::serialize::{read_scheme, write_scheme};
use labelweight_hss::hss::{
    check_mds_like, materialize_block_system, privacy_audit, run_end_to_end, synthesize_eval,
    synthesize_eval_with, HssParams, HssScheme, LabelweightCheck, LabelweightStatus,
};
use labelweight_hss::matrix::Matrix;
use labelweight_hss::protocol::{
    replay, simulate, simulate_with, MessageKind, Schedule, SimOptions, Transcript, WireMessage,
};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn secrets(field: &Field, p: &HssParams, seed: u64) -> Vec<Vec<Fe>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..p.ell).map(|_| (0..p.m).map(|_| Fe(rng.random_range(0..field.order()))).collect()).collect()
}

fn rs_scheme() -> HssScheme {
    let code = rs_build(5, 5, 2).unwrap();
    synthesize_eval(&code, &HssParams::new(5, 1, 2, 2, 2).unwrap()).unwrap()
}

fn hermitian_scheme() -> HssScheme {
    let code = hermitian_build(2, 5).unwrap().code;
    synthesize_eval(&code, &HssParams::new(8, 1, 2, 5, 2).unwrap()).unwrap()
}

#[test]
fn end_to_end_on_every_family() {
    let goppa = goppa_build(3, 1, GoppaPolynomial::Auto, SupportSet::AllOfField).unwrap().code;
    let schemes = [
        synthesize_eval(&goppa, &HssParams::new(7, 1, 1, 4, 1).unwrap()).unwrap(),
        rs_scheme(),
        hermitian_scheme(),
    ];
    for sch in &schemes {
        for seed in 0..20 {
            let run = run_end_to_end(sch, &secrets(sch.field(), &sch.params, seed), seed).unwrap();
            assert!(run.passed, "seed {seed}: {:?} vs {:?}", run.outputs, run.expected);
        }
    }
}

#[test]
fn outputs_are_products_of_targets() {
    let code = rs_build(7, 7, 2).unwrap();
    let p = HssParams::with_targets(7, 2, 2, 2, 2, vec![1, 1]).unwrap();
    let sch = synthesize_eval(&code, &p).unwrap();
    let f = sch.field().clone();
    let x = vec![vec![Fe(2), Fe(3)], vec![Fe(5), Fe(6)]];
    let run = run_end_to_end(&sch, &x, 9).unwrap();
    // 3·3 = 2, 6·6 = 1 (mod 7)
    assert_eq!(run.outputs, vec![Fe(2), Fe(1)]);
    assert!(run.passed);
    assert_eq!(f.order(), 7);
}

#[test]
fn rate_and_locality() {
    let sch = hermitian_scheme();
    assert_eq!(sch.rate().unwrap(), Ratio::new(5, 8));
    assert_eq!(sch.labelweight, LabelweightStatus::Verified(3));
    sch.validate_locality().unwrap();
    let skipped = synthesize_eval_with(&sch.code, &sch.params, LabelweightCheck::Skip).unwrap();
    assert_eq!(skipped.labelweight, LabelweightStatus::Skipped);
    assert_eq!(skipped.eval, sch.eval);
}

#[test]
fn insufficient_labelweight_is_rejected() {
    let code = rs_build(5, 5, 4).unwrap();
    let err = synthesize_eval(&code, &HssParams::new(5, 1, 2, 4, 2).unwrap()).unwrap_err();
    assert!(matches!(err, Error::InsufficientLabelweight(_)));
    let err = synthesize_eval_with(&code, &HssParams::new(5, 1, 2, 4, 2).unwrap(), LabelweightCheck::Skip)
        .unwrap_err();
    assert!(matches!(err, Error::InsufficientLabelweight(_)));
}

#[test]
fn block_system_is_satisfied() {
    for sch in [rs_scheme(), {
        let f = Field::prime(3).unwrap();
        let g = Matrix::from_values(&f, &[&[1, 1, 1]]).unwrap();
        let code = LabeledCode::new(g, Labeling::identity(3)).unwrap();
        synthesize_eval(&code, &HssParams::new(3, 1, 2, 1, 2).unwrap()).unwrap()
    }] {
        let sys = materialize_block_system(&sch).unwrap();
        assert!(sys.satisfied().unwrap());
        assert_eq!(sys.s_matrix.mul_vec(&sys.e).unwrap(), sys.g);
    }
}

#[test]
fn mds_like_property() {
    let rs = rs_build(5, 5, 2).unwrap();
    assert!(check_mds_like(&rs, 2).unwrap().holds());
    let rs3 = rs_build(5, 5, 3).unwrap();
    let rep = check_mds_like(&rs3, 3).unwrap();
    assert_eq!(rep.checked, 10);
    assert_eq!(rep.failures.len(), 10);
}

#[test]
fn privacy_of_cnf() {
    for (s, t, q) in [(2usize, 1usize, 2u64), (3, 1, 2), (4, 2, 3)] {
        let rep = privacy_audit(&Field::of_order(q).unwrap(), s, t).unwrap();
        assert!(rep.all_equal(), "s={s}, t={t}, q={q}");
        assert!(!rep.comparisons.is_empty());
    }
}

#[test]
fn simulation_matches_direct_evaluation() {
    for sch in [rs_scheme(), hermitian_scheme()] {
        for seed in 0..5 {
            let x = secrets(sch.field(), &sch.params, seed);
            let direct = run_end_to_end(&sch, &x, seed).unwrap();
            let sim = simulate(&sch, &x, seed).unwrap();
            assert_eq!(sim.outputs, direct.outputs);
            assert_eq!(sim.z, direct.z);
            assert_eq!(sim.transcript.download_symbols, sch.n() as u64);
            assert_eq!(sim.transcript.measured_rate(sch.params.ell), sch.rate().unwrap());
        }
    }
}

#[test]
fn shuffled_schedule_gives_the_same_result() {
    let sch = hermitian_scheme();
    let x = secrets(sch.field(), &sch.params, 4);
    let base = simulate(&sch, &x, 4).unwrap();
    for seed in 0..5 {
        let opts = SimOptions { schedule: Schedule::Shuffled(seed), tamper: None };
        let sim = simulate_with(&sch, &x, 4, opts).unwrap();
        assert_eq!(sim.outputs, base.outputs);
        assert_eq!(sim.z, base.z);
        assert_eq!(sim.transcript.link_bytes, base.transcript.link_bytes);
    }
}

#[test]
fn tampered_frames_are_rejected() {
    let sch = rs_scheme();
    let x = secrets(sch.field(), &sch.params, 1);
    type Expect = fn(&Error) -> bool;
    let cases: [(usize, u8, Expect); 3] = [
        (0, 0, |e| matches!(e, Error::Decode(DecodeError::BadVersion(_)))),
        (1, 1, |e| matches!(e, Error::Decode(DecodeError::BadKind(_)))),
        (2, 11, |e| matches!(e, Error::Decode(DecodeError::ElementOutOfRange { .. }))),
    ];
    for (frame, byte, check) in cases {
        let hook = Box::new(move |i: usize, f: &mut Vec<u8>| {
            if i == frame {
                f[byte as usize] = 0xee;
            }
        });
        let opts = SimOptions { schedule: Schedule::RoundRobin, tamper: Some(hook) };
        let err = simulate_with(&sch, &x, 1, opts).unwrap_err();
        assert!(check(&err), "frame {frame}: {err}");
    }
    let hook = Box::new(|i: usize, f: &mut Vec<u8>| {
        if i == 0 {
            f.pop();
        }
    });
    let err = simulate_with(&sch, &x, 1, SimOptions { schedule: Schedule::RoundRobin, tamper: Some(hook) })
        .unwrap_err();
    assert!(matches!(err, Error::Decode(DecodeError::Truncated { .. })));
}

#[test]
fn replay_detects_a_lying_server() {
    let sch = rs_scheme();
    let x = secrets(sch.field(), &sch.params, 2);
    let sim = simulate(&sch, &x, 2).unwrap();
    let frames = Transcript::parse_dump(&sim.transcript.dump()).unwrap();
    let honest = replay(&sch, &frames).unwrap();
    assert!(honest.consistent());
    assert_eq!(honest.outputs, sim.outputs);

    let mut forged = frames.clone();
    let idx = forged
        .iter()
        .position(|f| {
            let m = WireMessage::decode(f).unwrap();
            m.kind == MessageKind::OutputShares && m.sender == 3
        })
        .unwrap();
    let last = forged[idx].len() - 1;
    forged[idx][last] = (forged[idx][last] + 1) % 5;
    let rep = replay(&sch, &forged).unwrap();
    assert_eq!(rep.mismatched_servers, vec![3]);
    assert!(!rep.consistent());
}

#[test]
fn scheme_text_round_trip_preserves_behaviour() {
    let sch = hermitian_scheme();
    let text = write_scheme(&sch);
    let back = read_scheme(&text).unwrap();
    assert_eq!(write_scheme(&back), text);
    let x = secrets(sch.field(), &sch.params, 3);
    assert_eq!(run_end_to_end(&back, &x, 3).unwrap().outputs, run_end_to_end(&sch, &x, 3).unwrap().outputs);
}
