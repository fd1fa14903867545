//! Worked examples for every operation, checked against hand computations.

use std::sync::Arc;

use extalg_core::finite::*;
use extalg_core::mixed::*;
use extalg_core::props::*;
use extalg_core::prufer::*;
use extalg_core::AlgebraError;

const CAP: usize = DEFAULT_SIZE_CAP;

fn zn(n: u64) -> Arc<FiniteRing> {
    Arc::new(FiniteRing::integers_mod(n).unwrap())
}

fn same(r: &Arc<FiniteRing>) -> Arc<Extension> {
    Extension::trivial(r.clone())
}

fn f2_squared() -> Arc<Ambient> {
    let c = AmbientComponent::integers(2, 1).unwrap();
    Arc::new(Ambient::new(vec![c.clone(), c]))
}

/// `K ⊆ K²` through the diagonal, `K = F₂`.
fn diagonal() -> Arc<Extension> {
    let amb = f2_squared();
    let a = FiniteRing::close_subring(amb.clone(), &[], CAP).unwrap();
    let b = FiniteRing::whole(amb, CAP).unwrap();
    Extension::new(Arc::new(a), Arc::new(b)).unwrap()
}

fn empty_tail() -> Arc<Extension> {
    let r = FiniteRing::whole(Arc::new(Ambient::new(vec![])), CAP).unwrap();
    Extension::trivial(Arc::new(r))
}

fn z_in_q() -> MixedExtension {
    MixedExtension::new(vec![SlotFlavor::Integers], empty_tail())
}

fn z_times_z6() -> MixedExtension {
    MixedExtension::new(vec![SlotFlavor::Integers], same(&zn(6)))
}

fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

fn ideal_of(r: &FiniteRing, ks: &[i64]) -> fixedbitset::FixedBitSet {
    ideal_closure(r, &ks.iter().map(|&k| r.integer(k)).collect::<Vec<_>>())
}

fn module(ext: &Arc<Extension>, ks: &[i64]) -> Submodule {
    Submodule::ideal_from_a_set(ext, &ideal_of(ext.a(), ks))
}

fn mixed(u: &MixedExtension, value: Q, tail: &[i64]) -> MixedIdeal {
    let gens: Vec<usize> = tail.iter().map(|&k| u.tail().b().integer(k)).collect();
    u.ideal(&[value], &gens).unwrap()
}

fn members(r: &FiniteRing, set: &fixedbitset::FixedBitSet) -> Vec<String> {
    set.ones().map(|i| r.display(i)).collect()
}

// finite_core

#[test]
fn subring_closure() {
    let f2 = Arc::new(Ambient::new(vec![AmbientComponent::integers(2, 1).unwrap()]));
    assert_eq!(FiniteRing::close_subring(f2.clone(), &[f2.one()], CAP).unwrap().size(), 2);
    let z6 = Arc::new(Ambient::new(vec![AmbientComponent::integers(2, 1).unwrap(), AmbientComponent::integers(3, 1).unwrap()]));
    assert_eq!(FiniteRing::close_subring(z6.clone(), &[z6.one()], CAP).unwrap().size(), 6);
    let amb = f2_squared();
    let diag = FiniteRing::close_subring(amb.clone(), &[amb.one()], CAP).unwrap();
    assert_eq!(diag.size(), 2);
    assert_eq!(diag.display(1), "(1, 1)");
}

#[test]
fn submodule_closure() {
    let ext = same(&zn(6));
    let two = ext.b().integer(2);
    assert_eq!(Submodule::closure(&ext, &[two]).members(), &ideal_of(ext.b(), &[2]));
    assert_eq!(members(ext.b(), Submodule::closure(&ext, &[two]).members()), ["(0, 0)", "(0, 1)", "(0, 2)"]);
    let diag = diagonal();
    let e = diag.b().index_of(&diag.b().ambient().element(&[vec![1], vec![0]]).unwrap()).unwrap();
    assert_eq!(members(diag.b(), Submodule::closure(&diag, &[e]).members()), ["(0, 0)", "(1, 0)"]);
    assert_eq!(Submodule::closure(&ext, &[]).size(), 1);
}

#[test]
fn sums_products_colons() {
    let ext = same(&zn(6));
    let (two, three) = (module(&ext, &[2]), module(&ext, &[3]));
    assert_eq!(two.product(&two).unwrap(), two);
    assert_eq!(two.sum(&Submodule::zero(&ext)).unwrap(), two);
    assert_eq!(two.sum(&three).unwrap(), Submodule::ring_a(&ext));
    assert_eq!(two.colon(&three).unwrap(), two);
    let diag = diagonal();
    let a = Submodule::ring_a(&diag);
    assert_eq!(a.colon(&a).unwrap(), a);
}

#[test]
fn maximal_ideals_examples() {
    let z6 = zn(6);
    let max: Vec<_> = maximal_ideals(&z6).into_iter().map(|m| m.members).collect();
    assert_eq!(max.len(), 2);
    assert!(max.contains(&ideal_of(&z6, &[2])));
    assert!(max.contains(&ideal_of(&z6, &[3])));
    let diag = diagonal();
    assert_eq!(maximal_ideals(diag.a()).len(), 1);
    assert_eq!(maximal_ideals(diag.a())[0].members.count_ones(..), 1);
    let dual = AmbientComponent::new(2, 1, &[0, 0, 1]).unwrap();
    let r = FiniteRing::whole(Arc::new(Ambient::new(vec![dual])), CAP).unwrap();
    let m = maximal_ideals(&r);
    assert_eq!(m.len(), 1);
    assert_eq!(m[0].members.count_ones(..), 2);
}

#[test]
fn localization_examples() {
    let z6 = zn(6);
    let loc = localize(&z6, &ideal_of(&z6, &[2])).unwrap();
    assert_eq!(loc.size(), 2);
    assert_eq!(loc.kernel(), &ideal_of(&z6, &[2]));
    let z12 = zn(12);
    let loc = localize(&z12, &ideal_of(&z12, &[2])).unwrap();
    assert_eq!(loc.size(), 4);
    assert_eq!(loc.kernel(), &ideal_of(&z12, &[4]));
    assert!(matches!(localize(&z6, &ideal_of(&z6, &[0])), Err(AlgebraError::NotMaximal)));
}

#[test]
fn localized_submodules() {
    let ext = same(&zn(6));
    let two = module(&ext, &[2]);
    assert_eq!(localize_submodule(&two, &ideal_of(ext.a(), &[2])).unwrap().count_ones(..), 1);
    let at3 = localize_submodule(&two, &ideal_of(ext.a(), &[3])).unwrap();
    assert_eq!(at3.count_ones(..), localize(ext.a(), &ideal_of(ext.a(), &[3])).unwrap().size());
}

#[test]
fn generalized_localization_examples() {
    let diag = diagonal();
    let zero = diag.a().set_from([diag.a().zero()]);
    assert_eq!(generalized_localization(&diag, &zero).unwrap().size(), 2);
    let ext = same(&zn(6));
    assert_eq!(generalized_localization(&ext, &ideal_of(ext.a(), &[3])).unwrap().size(), 6);
    assert!(matches!(generalized_localization(&ext, &ideal_of(ext.a(), &[0])), Err(AlgebraError::NotPrime(_))));
}

// module_props

#[test]
fn b_regularity() {
    let ext = same(&zn(6));
    assert!(is_b_regular(&ext, &Submodule::ring_a(&ext)).unwrap().holds);
    assert!(!is_b_regular(&ext, &module(&ext, &[2])).unwrap().holds);
    let u = z_in_q();
    assert!(is_b_regular(&u, &mixed(&u, q(6, 1), &[])).unwrap().holds);
}

#[test]
fn b_invertibility() {
    let u = z_in_q();
    let (v, inverse) = is_b_invertible(&u, &mixed(&u, q(6, 1), &[])).unwrap();
    assert!(v.holds);
    assert_eq!(inverse.unwrap(), mixed(&u, q(1, 6), &[]));
    let diag = diagonal();
    assert!(!is_b_invertible(&diag, &Submodule::zero(&diag)).unwrap().0.holds);
    let w = z_times_z6();
    let (v, inverse) = is_b_invertible(&w, &mixed(&w, q(12, 1), &[1])).unwrap();
    assert!(v.holds);
    assert_eq!(inverse.unwrap(), mixed(&w, q(1, 12), &[1]));
}

#[test]
fn partitions_of_unity() {
    let ext = same(&zn(6));
    let a = Submodule::ring_a(&ext);
    let pou = partition_of_unity(&ext, &a).unwrap();
    assert_eq!(pou.render(&ext).pairs, vec![("(1, 1)".to_string(), "(1, 1)".to_string())]);
    let u = z_in_q();
    let six = mixed(&u, q(6, 1), &[]);
    let pou = partition_of_unity(&u, &six).unwrap();
    assert_eq!(pou.render(&u).pairs, vec![("6".to_string(), "1/6".to_string())]);
    let four_six = u.generated(&[u.slot_element(0, q(4, 1)), u.slot_element(0, q(6, 1))]);
    let pou = partition_of_unity(&u, &four_six).unwrap();
    assert!(verify_partition(&u, &four_six, &pou).unwrap());
    assert_eq!(pou.pairs.len(), 2);
    assert!(matches!(partition_of_unity(&ext, &module(&ext, &[2])), Err(AlgebraError::NotInvertible)));
}

/// `F₂[x,y]/(x², xy, y²)` inside `F₂[x]/(x²) × F₂[y]/(y²)`.
fn square_zero_plane() -> (Arc<Extension>, Submodule) {
    let dual = AmbientComponent::new(2, 1, &[0, 0, 1]).unwrap();
    let amb = Arc::new(Ambient::new(vec![dual.clone(), dual]));
    let x = amb.element(&[vec![0, 1], vec![0]]).unwrap();
    let y = amb.element(&[vec![0], vec![0, 1]]).unwrap();
    let a = Arc::new(FiniteRing::close_subring(amb, &[x.clone(), y.clone()], CAP).unwrap());
    assert_eq!(a.size(), 8);
    let ext = same(&a);
    let gens = [a.index_of(&x).unwrap(), a.index_of(&y).unwrap()];
    (ext.clone(), Submodule::closure(&ext, &gens))
}

#[test]
fn local_principality() {
    let ext = same(&zn(6));
    assert!(is_locally_principal(&ext, &module(&ext, &[2])).unwrap().holds);
    let (plane, xy) = square_zero_plane();
    assert!(!is_locally_principal(&plane, &xy).unwrap().holds);
    let u = z_in_q();
    assert!(is_locally_principal(&u, &mixed(&u, q(12, 1), &[])).unwrap().holds);
}

#[test]
fn flatness() {
    let ext = same(&zn(6));
    assert!(is_flat(&ext, &module(&ext, &[2])).unwrap().holds);
    let z4 = same(&zn(4));
    let v = is_flat(&z4, &module(&z4, &[2])).unwrap();
    assert!(!v.holds);
    assert!(v.witness.is_some());
    let u = z_in_q();
    for n in 1..20 {
        assert!(is_flat(&u, &mixed(&u, q(n, 1), &[])).unwrap().holds);
    }
}

#[test]
fn oracle_examples() {
    let z6 = zn(6);
    assert!(flatness_oracle(&z6, &ideal_of(&z6, &[2]), DEFAULT_ORACLE_CAP).unwrap().holds);
    let z4 = zn(4);
    let v = flatness_oracle(&z4, &ideal_of(&z4, &[2]), DEFAULT_ORACLE_CAP).unwrap();
    assert!(!v.holds);
    assert!(matches!(v.witness, Some(Witness::Tensor { .. })));
    assert!(flatness_oracle(&z4, &ideal_of(&z4, &[]), DEFAULT_ORACLE_CAP).unwrap().holds);
}

#[test]
fn faithful_flatness() {
    let ext = same(&zn(6));
    let v = is_faithfully_flat(&ext, &module(&ext, &[2])).unwrap();
    assert!(!v.holds);
    let expected = maximal_ideals(ext.a()).into_iter().find(|m| m.members == ideal_of(ext.a(), &[2])).unwrap();
    assert_eq!(v.witness, Some(Witness::Maximal { ideal: expected.describe(ext.a()) }));
    let u = z_in_q();
    assert!(is_faithfully_flat(&u, &mixed(&u, q(12, 1), &[])).unwrap().holds);
    let z4 = same(&zn(4));
    assert!(!is_faithfully_flat(&z4, &module(&z4, &[2])).unwrap().holds);
}

#[test]
fn regular_ideals() {
    let ext = same(&zn(6));
    assert!(!is_regular_ideal(&ext, &module(&ext, &[2])).holds);
    let w = z_times_z6();
    let v = is_regular_ideal(&w, &mixed(&w, q(12, 1), &[1]));
    assert!(v.holds);
    assert_eq!(v.witness, Some(Witness::Element { value: "(12 | 1, 1)".into() }));
    assert!(is_regular_ideal(&ext, &Submodule::ring_a(&ext)).holds);
}

// mixed_symbolic

#[test]
fn mixed_arithmetic() {
    let u = z_in_q();
    let c = u.colon(&mixed(&u, q(4, 1), &[]), &mixed(&u, q(6, 1), &[])).unwrap();
    assert_eq!(c, mixed(&u, q(2, 3), &[]));
    assert_eq!(u.sum(&mixed(&u, q(12, 1), &[]), &mixed(&u, q(18, 1), &[])).unwrap(), mixed(&u, q(6, 1), &[]));
    let w = z_times_z6();
    let p = w.product(&mixed(&w, q(12, 1), &[1]), &mixed(&w, q(1, 12), &[1])).unwrap();
    assert_eq!(p, w.ring_a());
    assert_eq!(w.intersection(&mixed(&w, q(4, 1), &[1]), &mixed(&w, q(6, 1), &[2])).unwrap(), mixed(&w, q(12, 1), &[2]));
}

#[test]
fn mixed_support() {
    let u = z_in_q();
    let s = u.support(&mixed(&u, q(12, 1), &[])).unwrap();
    assert_eq!(s, vec![MixedMaximal::Slot { slot: 0, prime: 2 }, MixedMaximal::Slot { slot: 0, prime: 3 }]);
    let w = z_times_z6();
    assert_eq!(w.support(&mixed(&w, q(30, 1), &[1])).unwrap().len(), 3);
    assert!(w.support(&w.ring_a()).unwrap().is_empty());
    assert!(matches!(u.support(&mixed(&u, q(1, 2), &[])), Err(AlgebraError::NotIntegral)));
}

#[test]
fn mixed_localization() {
    let u = z_in_q();
    let twelve = mixed(&u, q(12, 1), &[]);
    let at = |p| u.localize_ideal(&twelve, &MixedMaximal::Slot { slot: 0, prime: p }).unwrap();
    assert_eq!(at(2), MixedLocalIdeal::Slot { valuation: Some(2) });
    assert_eq!(at(5), MixedLocalIdeal::Slot { valuation: Some(0) });
    let w = z_times_z6();
    let m = maximal_ideals(w.tail().a()).into_iter().find(|m| m.members == ideal_of(w.tail().a(), &[3])).unwrap();
    let local = localize(w.tail().a(), &m.members).unwrap();
    match w.localize_ideal(&mixed(&w, q(12, 1), &[1]), &MixedMaximal::Tail(m)).unwrap() {
        MixedLocalIdeal::Tail(set) => assert_eq!(set.count_ones(..), local.size()),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(u.localize_ideal(&twelve, &MixedMaximal::Slot { slot: 0, prime: 4 }), Err(AlgebraError::NotMaximal)));
}

#[test]
fn total_quotient_rings() {
    let z = MixedRing::new(vec![SlotFlavor::Integers], empty_tail().a().clone());
    assert_eq!(total_quotient_ring(&z).describe(), "Z ⊆ Q");
    let z6 = MixedRing::new(vec![SlotFlavor::Integers], zn(6));
    let t = total_quotient_ring(&z6);
    assert_eq!(t.tail().b().size(), 6);
    assert!(t.is_regular(&t.element(vec![q(3, 1)], t.tail().b().integer(5)).unwrap()));
    assert!(!t.is_regular(&t.element(vec![q(3, 1)], t.tail().b().integer(2)).unwrap()));
    let f = MixedRing::new(vec![], zn(6));
    let t = total_quotient_ring(&f);
    assert_eq!(t.rank(), 0);
    assert_eq!(t.tail().a().size(), t.tail().b().size());
}

// prufer_theory

#[test]
fn valuation_examples() {
    let amb = f2_squared();
    let b = FiniteRing::whole(amb, CAP).unwrap();
    let table = (0..b.size())
        .map(|x| Some(if b.element(x).0[0] != 0 { Value::Finite(vec![0]) } else { Value::Infinity }))
        .collect();
    let (v, pair) = check_manis_valuation(&ManisValuationData { rank: 1, assignment: Assignment::Table(table) }, &b).unwrap();
    assert!(v.holds);
    let pair = pair.unwrap();
    assert!(is_manis_pair_finite(&b, &pair.ring, &pair.prime).unwrap().holds);

    let u = z_in_q();
    let padic = ManisValuationData { rank: 1, assignment: Assignment::PAdic { slot: 0, prime: 2 } };
    assert!(check_padic_valuation(&padic, &u, 0).unwrap().holds);

    let z6 = FiniteRing::integers_mod(6).unwrap();
    let table = (0..6).map(|x| Some(if x == z6.zero() { Value::Infinity } else { Value::Finite(vec![1]) })).collect();
    let (v, _) = check_manis_valuation(&ManisValuationData { rank: 1, assignment: Assignment::Table(table) }, &z6).unwrap();
    assert!(!v.holds);
}

#[test]
fn manis_pair_examples() {
    assert!(is_manis_pair_slot(&SlotFlavor::LocalAt(2), 2).unwrap().holds);
    let v = is_manis_pair_slot(&SlotFlavor::Integers, 2).unwrap();
    assert!(!v.holds);
    assert_eq!(v.witness, Some(Witness::Element { value: "1/3".into() }));
    let b = FiniteRing::whole(f2_squared(), CAP).unwrap();
    let all = b.set_from(0..b.size());
    let prime = b.set_from((0..b.size()).filter(|&x| b.element(x).0[0] == 0));
    assert!(is_manis_pair_finite(&b, &all, &prime).unwrap().holds);
    let bad = b.set_from([b.zero()]);
    assert!(matches!(is_manis_pair_finite(&b, &all, &bad), Err(AlgebraError::NotPrime(_))));
}

#[test]
fn weak_surjectivity() {
    let diag = diagonal();
    let v = is_weakly_surjective(&diag).unwrap();
    assert!(!v.holds);
    let m = &maximal_ideals(diag.a())[0];
    assert_eq!(v.witness, Some(Witness::ElementAt { ideal: m.describe(diag.a()), value: "(1, 0)".into() }));
    let u = z_in_q();
    let v = is_weakly_surjective(&u).unwrap();
    assert!(v.holds && v.vacuous);
    assert!(is_weakly_surjective(&z_times_z6()).unwrap().holds);
    assert!(weak_surjectivity_crosscheck(&diag).unwrap().holds);
}

#[test]
fn prufer_and_almost_prufer() {
    let diag = diagonal();
    assert!(is_almost_prufer(&diag).unwrap().holds);
    assert!(!is_prufer(&diag).unwrap().holds);
    for u in [z_in_q(), z_times_z6()] {
        assert!(is_almost_prufer(&u).unwrap().holds);
        assert!(is_prufer(&u).unwrap().holds);
    }
}

#[test]
fn theorem_2_1() {
    let v = verify_theorem_2_1(&diagonal()).unwrap();
    assert!(v.holds);
    assert!(v.notes.contains(&"prufer = false".to_string()));
    assert!(verify_theorem_2_1(&z_in_q()).unwrap().holds);
    assert!(verify_theorem_2_1(&z_times_z6()).unwrap().holds);
}

#[test]
fn finite_character() {
    let u = z_in_q();
    assert_eq!(u.support(&mixed(&u, q(12, 1), &[])).unwrap().len(), 2);
    assert!(has_finite_character(&u).unwrap().holds);
    let v = has_finite_character(&diagonal()).unwrap();
    assert!(v.holds && v.vacuous);
    let w = z_times_z6();
    assert_eq!(w.support(&mixed(&w, q(30, 1), &[1])).unwrap().len(), 3);
    assert!(has_finite_character(&w).unwrap().holds);
}

#[test]
fn i_f_examples() {
    let u = z_in_q();
    let a = mixed(&u, q(12, 1), &[]);
    let f = ComaximalFamily::new(&u, a.clone(), vec![mixed(&u, q(3, 1), &[])]).unwrap();
    let fix = compute_i_f(&u, &f).unwrap();
    assert_eq!(fix.ideal, mixed(&u, q(4, 1), &[]));
    assert_eq!(fix.stages, 1);
    let f = ComaximalFamily::new(&u, a.clone(), vec![mixed(&u, q(4, 1), &[]), mixed(&u, q(3, 1), &[])]).unwrap();
    assert_eq!(compute_i_f(&u, &f).unwrap().ideal, u.ring_a());
    let ext = same(&zn(12));
    let b = module(&ext, &[4]);
    let f = ComaximalFamily::new(&ext, b.clone(), vec![Submodule::ring_a(&ext)]).unwrap();
    assert_eq!(compute_i_f(&ext, &f).unwrap().ideal, b);
    let err = ComaximalFamily::new(&u, a, vec![mixed(&u, q(2, 1), &[]), mixed(&u, q(4, 1), &[])]);
    assert!(matches!(err, Err(AlgebraError::NotComaximal(_))));
}

#[test]
fn lemma_technical() {
    let u = z_in_q();
    let a = mixed(&u, q(12, 1), &[]);
    let f = ComaximalFamily::new(&u, a.clone(), vec![mixed(&u, q(3, 1), &[])]).unwrap();
    let report = verify_lemma_technical(&u, &f).unwrap();
    assert!(report.holds());
    assert_eq!(report.exponents, Some(vec![1]));
    let f = ComaximalFamily::new(&u, a, vec![mixed(&u, q(4, 1), &[]), mixed(&u, q(3, 1), &[])]).unwrap();
    assert!(verify_lemma_technical(&u, &f).unwrap().holds());
    let ext = same(&zn(12));
    let f = ComaximalFamily::new(&ext, module(&ext, &[4]), vec![Submodule::ring_a(&ext)]).unwrap();
    let report = verify_lemma_technical(&ext, &f).unwrap();
    assert!(report.holds());
    let bad = ComaximalFamily::new(&ext, module(&ext, &[4]), vec![module(&ext, &[2])]).unwrap();
    assert!(matches!(verify_lemma_technical(&ext, &bad), Err(AlgebraError::NotInvertibleMember(_))));
}

#[test]
fn lemma_local_form_needs_saturation() {
    // i_F = 3Z while [12Z : 2Z] = 6Z, and the two differ at 2
    let u = z_in_q();
    let f = ComaximalFamily::new(&u, mixed(&u, q(12, 1), &[]), vec![mixed(&u, q(2, 1), &[])]).unwrap();
    let report = verify_lemma_technical(&u, &f).unwrap();
    assert_eq!(report.i_f.ideal, mixed(&u, q(3, 1), &[]));
    assert_eq!(report.exponents, Some(vec![2]));
    assert!(report.holds());
    assert!(report.part_b.notes.iter().any(|n| n.contains("at 1 of them")));
}

#[test]
fn high_powers_of_large_members_stay_in_range() {
    // 9973^64 does not fit in i128; the colon never forms it
    let u = z_in_q();
    let f = ComaximalFamily::new(&u, mixed(&u, q(2 * 9973, 1), &[]), vec![mixed(&u, q(9973, 1), &[])]).unwrap();
    assert_eq!(extalg_core::prufer::family::colon_by_powers(&u, &f, &[64]).unwrap(), mixed(&u, q(2, 1), &[]));
    assert!(verify_lemma_technical(&u, &f).unwrap().holds());
}

#[test]
fn finite_generators() {
    let u = z_in_q();
    let a = mixed(&u, q(12, 1), &[]);
    let a0 = mixed(&u, q(24, 1), &[]);
    let built = construct_finite_generators(&u, &a, Some(&a0)).unwrap();
    let locals: Vec<MixedIdeal> = built.local.iter().map(|(_, m)| m.clone()).collect();
    assert_eq!(locals, vec![mixed(&u, q(36, 1), &[]), mixed(&u, q(24, 1), &[])]);
    assert!(built.extra.is_empty());
    assert!(built.reproduces(&a));

    let built = construct_finite_generators(&u, &a0, Some(&a0)).unwrap();
    assert!(built.reproduces(&a0));

    let w = z_times_z6();
    let a = mixed(&w, q(12, 1), &[1]);
    let built = construct_finite_generators(&w, &a, None).unwrap();
    assert!(built.reproduces(&a));

    let ext = same(&zn(6));
    assert!(matches!(
        construct_finite_generators(&ext, &module(&ext, &[2]), None),
        Err(AlgebraError::NoRegularSubideal)
    ));
}

#[test]
fn main_theorem() {
    for v in [verify_main_theorem(&z_in_q()).unwrap(), verify_main_theorem(&z_times_z6()).unwrap()] {
        assert!(v.holds && !v.vacuous);
        assert!(v.notes.iter().any(|n| n == DESK_SCALE_NOTE));
    }
    let v = verify_main_theorem(&diagonal()).unwrap();
    assert!(v.holds && v.vacuous);
}

#[test]
fn prufer_ring_corollary() {
    let sweep = SweepBounds::default();
    let z = MixedRing::new(vec![SlotFlavor::Integers], empty_tail().a().clone());
    assert!(verify_prufer_ring_corollary(&z, sweep.clone()).unwrap().holds);
    let z6 = MixedRing::new(vec![SlotFlavor::Integers], zn(6));
    assert!(verify_prufer_ring_corollary(&z6, sweep.clone()).unwrap().holds);
    let f = MixedRing::new(vec![], zn(6));
    let v = verify_prufer_ring_corollary(&f, sweep).unwrap();
    assert!(v.holds && v.vacuous);
}

// poset_finiteness

use extalg_core::poset::*;

/// Proper ideals `dZ`, `d | 60`, `d > 1`, ordered by inclusion.
fn divisor_poset() -> FinitePoset {
    let ds: Vec<u64> = (2..=60).filter(|d| 60 % d == 0).collect();
    let labels = ds.iter().map(|d| format!("{d}Z")).collect();
    let leq: Vec<Vec<usize>> =
        ds.iter().map(|&x| (0..ds.len()).filter(|&j| x % ds[j] == 0).collect()).collect();
    FinitePoset::from_relation(labels, &leq, &(0..ds.len()).collect::<Vec<_>>()).unwrap()
}

#[test]
fn divisor_poset_examples() {
    let p = divisor_poset();
    let max: Vec<&str> = p.maximal_elements().into_iter().map(|x| p.label(x)).collect();
    assert_eq!(max, ["2Z", "3Z", "5Z"]);
    assert!(p.are_comaximal(p.index_of("4Z").unwrap(), p.index_of("3Z").unwrap()));
    assert!(check_hypotheses(&p).unwrap().all_hold());
    let report = check_equivalence(&p).unwrap();
    assert!(report.verdict.holds);
    let row = report.rows.iter().find(|r| r.element == "30Z").unwrap();
    assert_eq!((row.maximal_above, row.largest_comaximal), (3, 3));
}

#[test]
fn chain_equivalence() {
    let labels = vec!["a".to_string(), "b".into(), "c".into()];
    let p = FinitePoset::from_covers(labels, &[(0, 1), (1, 2)], &[0, 1, 2]).unwrap();
    let row = &check_equivalence(&p).unwrap().rows[0];
    assert_eq!((row.maximal_above, row.largest_comaximal), (1, 1));
}

#[test]
fn regular_ideal_posets() {
    let u = z_in_q();
    let built = build_regular_ideal_poset(&u, 60).unwrap();
    assert_eq!(built.poset.len(), 59);
    assert_eq!(built.poset.gamma().count_ones(..), 59);
    assert!(built.claims_hold());
    assert!(check_hypotheses(&built.poset).unwrap().all_hold());
    assert!(check_equivalence(&built.poset).unwrap().verdict.holds);

    let built = build_regular_ideal_poset(&diagonal(), 60).unwrap();
    assert!(built.poset.is_empty());
    assert!(matches!(check_hypotheses(&built.poset), Err(AlgebraError::EmptyGamma)));

    let w = z_times_z6();
    let built = build_regular_ideal_poset(&w, 30).unwrap();
    assert_eq!(built.poset.len(), 29);
    assert!(built.claims_hold());
    assert!(check_hypotheses(&built.poset).unwrap().all_hold());

    assert!(matches!(build_regular_ideal_poset(&u, 1), Err(AlgebraError::BoundTooSmall(1))));
}
