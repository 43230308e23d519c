use latcheck_core::characterize::{check_polynomial, equivalence_harness, Budget};
use latcheck_core::multilinear::{polarize, HomogeneousPolynomial};
use latcheck_core::polynomials::{generate, perturbed_index, InstanceKind, InstanceSpec};
use latcheck_core::tolerance::Tolerance;
use latcheck_core::{ComplexElement, LatticeElement};

fn spec(kind: InstanceKind, d: usize, n: usize, m: usize, seed: u64) -> InstanceSpec {
    let s = InstanceSpec::new(kind, d, n, m, seed);
    if kind == InstanceKind::Perturbed {
        s.with_epsilon(1e-3)
    } else {
        s
    }
}

#[test]
fn generated_tensors_survive_polarization() {
    for kind in InstanceKind::ALL {
        for (d, n, m) in [(2, 2, 1), (3, 4, 2), (4, 3, 3)] {
            let p = generate(&spec(kind, d, n, m, 17)).unwrap();
            let back = polarize(n, &|x| p.eval(x).unwrap(), d, m).unwrap();
            for index in latcheck_core::combinatorics::sorted_multi_indices(d, n) {
                let (got, want) = (back.get(&index).unwrap(), p.map().get(&index).unwrap());
                if kind == InstanceKind::Perturbed {
                    // ε is not an integer, so the probe sums round.
                    assert!(Tolerance::default().close_slices(&got, &want), "{index:?}: {got:?} vs {want:?}");
                } else {
                    assert_eq!(got, want, "{kind} {index:?}");
                }
            }
        }
    }
}

#[test]
fn verdicts_do_not_depend_on_probe_seed() {
    for kind in InstanceKind::ALL {
        let s = spec(kind, 3, 3, 2, 8);
        let base = equivalence_harness(&s, &Budget::default()).unwrap();
        for seed in 1..4 {
            let other = equivalence_harness(&s, &Budget::default().with_seed(seed)).unwrap();
            assert_eq!(other.verdicts, base.verdicts, "{kind}, seed {seed}");
        }
    }
}

#[test]
fn harness_is_deterministic() {
    let s = spec(InstanceKind::Random, 4, 4, 2, 99);
    let a = equivalence_harness(&s, &Budget::default()).unwrap();
    let b = equivalence_harness(&s, &Budget::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn perturbation_witnesses_point_at_the_mixed_index() {
    let s = spec(InstanceKind::Perturbed, 4, 3, 1, 5);
    let report = equivalence_harness(&s, &Budget::default()).unwrap();
    assert_eq!(report.verdicts, [false; 4]);
    let mixed = perturbed_index(&s).unwrap();
    // Every witness of condition (iv) must touch both halves of the index.
    let w = report.witnesses[3].as_ref().unwrap();
    let support = |v: &Vec<f64>| (0..v.len()).filter(|&j| v[j] != 0.0).collect::<Vec<_>>();
    let (f, g) = (support(&w.inputs[0]), support(&w.inputs[1]));
    assert!(mixed.iter().any(|j| f.contains(j)) && mixed.iter().any(|j| g.contains(j)), "{w:?}");
}

#[test]
fn sum_of_oa_and_mixed_term_is_detected_by_every_condition() {
    // A hand-built non-OA quadratic: P(x) = x0^2 - x1^2 + 2·x0·x1.
    let mut t = latcheck_core::SymmetricMultilinearMap::diagonal(2, &[vec![1.0], vec![-1.0]]).unwrap();
    t.set(vec![0, 1], vec![1.0]).unwrap();
    let p = HomogeneousPolynomial::new(t);
    let s = InstanceSpec::new(InstanceKind::Random, 2, 2, 1, 0);
    let r = check_polynomial("hand", &s, &p, &Budget::default()).unwrap();
    assert_eq!(r.verdicts, [false; 4]);
    assert!(r.agree && r.passed);
    // z = e_0 + i e_1: P(|z|) = P(1, 1) = 2, while T_C(z, z̄) = P(e_0) + P(e_1) = 0.
    let z = ComplexElement::new(
        LatticeElement::new(vec![1.0, 0.0]).unwrap(),
        LatticeElement::new(vec![0.0, 1.0]).unwrap(),
    )
    .unwrap();
    let rhs = latcheck_core::characterize::complex_side(p.map(), &z).unwrap();
    let lhs = p.eval(&z.modulus()).unwrap();
    assert_eq!(lhs, vec![2.0]);
    assert_ne!(rhs.re, lhs);
}
