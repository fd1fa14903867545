//! Property tests over randomly generated finite and mixed extensions.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use extalg_core::finite::*;
use extalg_core::mixed::*;
use extalg_core::poset::*;
use extalg_core::props::*;
use extalg_core::prufer::*;

/// `(p, k, f)` with `f` given low degree first.
const POOL: &[(u64, u32, &[i64])] = &[
    (2, 1, &[0, 1]),
    (2, 2, &[0, 1]),
    (3, 1, &[0, 1]),
    (2, 1, &[0, 0, 1]),
    (2, 1, &[1, 1, 1]),
    (5, 1, &[0, 1]),
    (2, 3, &[0, 1]),
    (3, 2, &[0, 1]),
];

fn random_element(amb: &Ambient, rng: &mut ChaCha8Rng) -> RingElement {
    let coords: Vec<Vec<i64>> = amb
        .components()
        .iter()
        .map(|c| (0..c.degree()).map(|_| rng.gen_range(0..c.modulus() as i64)).collect())
        .collect();
    amb.element(&coords).unwrap()
}

/// A random `A ⊆ B` with `|B| ≤ 64`.
fn build_extension(picks: &[usize], seed: u64) -> Option<Arc<Extension>> {
    let comps: Vec<AmbientComponent> =
        picks.iter().map(|&i| AmbientComponent::new(POOL[i].0, POOL[i].1, POOL[i].2).unwrap()).collect();
    let amb = Arc::new(Ambient::new(comps));
    if amb.cardinality() > 64 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = if rng.gen_bool(0.5) {
        FiniteRing::whole(amb.clone(), DEFAULT_SIZE_CAP).unwrap()
    } else {
        let gens: Vec<RingElement> = (0..2).map(|_| random_element(&amb, &mut rng)).collect();
        FiniteRing::close_subring(amb.clone(), &gens, DEFAULT_SIZE_CAP).unwrap()
    };
    let k = rng.gen_range(0..=2);
    let gens: Vec<RingElement> = (0..k).map(|_| b.element(rng.gen_range(0..b.size())).clone()).collect();
    let a = FiniteRing::close_subring(amb, &gens, DEFAULT_SIZE_CAP).unwrap();
    Some(Extension::new(Arc::new(a), Arc::new(b)).unwrap())
}

fn extensions() -> impl Strategy<Value = Arc<Extension>> {
    (prop::collection::vec(0..POOL.len(), 1..=2), any::<u64>())
        .prop_filter_map("ambient too large", |(picks, seed)| build_extension(&picks, seed))
}

fn rings() -> impl Strategy<Value = Arc<Extension>> {
    extensions().prop_map(|e| Extension::trivial(e.b().clone()))
}

fn ideals(ext: &Arc<Extension>) -> Vec<Submodule> {
    all_ideals(ext.a()).iter().map(|s| Submodule::ideal_from_a_set(ext, s)).collect()
}

fn random_submodule(ext: &Arc<Extension>, seed: u64) -> Submodule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(0..=2);
    let gens: Vec<usize> = (0..k).map(|_| rng.gen_range(0..ext.b().size())).collect();
    Submodule::closure(ext, &gens)
}

const FLAVORS: &[&[u64]] = &[&[], &[2], &[3, 5]];

fn flavor(i: usize) -> SlotFlavor {
    match i {
        0..=2 => SlotFlavor::inverted(FLAVORS[i]).unwrap(),
        3 => SlotFlavor::local_at(2).unwrap(),
        _ => SlotFlavor::local_at(3).unwrap(),
    }
}

fn tail(n: u64) -> Arc<Extension> {
    let ring = if n == 1 {
        FiniteRing::whole(Arc::new(Ambient::new(vec![])), DEFAULT_SIZE_CAP).unwrap()
    } else {
        FiniteRing::integers_mod(n).unwrap()
    };
    Extension::trivial(Arc::new(ring))
}

fn mixed_extensions() -> impl Strategy<Value = MixedExtension> {
    (prop::collection::vec(0..5usize, 1..=2), prop::sample::select(vec![1u64, 2, 4, 6])).prop_map(|(fl, n)| {
        let sweep = SweepBounds { exhaustive: 12, samples: 4, max_ideals: 120, ..SweepBounds::default() };
        MixedExtension::new(fl.into_iter().map(flavor).collect(), tail(n)).with_sweep(sweep)
    })
}

/// An integral ideal with nonzero slots from `values` and tail generators.
fn mixed_ideal(u: &MixedExtension, values: &[i128], tail_gens: &[usize]) -> MixedIdeal {
    let qs: Vec<Q> = (0..u.rank()).map(|i| Q::from_integer(values[i % values.len()])).collect();
    let t: Vec<usize> = tail_gens.iter().map(|&g| g % u.tail().b().size()).collect();
    u.ideal(&qs, &t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, .. ProptestConfig::default() })]

    #[test]
    fn closure_is_idempotent(ext in extensions(), seed in any::<u64>()) {
        let s = random_submodule(&ext, seed);
        let members: Vec<usize> = s.members().ones().collect();
        prop_assert_eq!(&Submodule::closure(&ext, &members), &s);
        prop_assert_eq!(&Submodule::closure(&ext, s.generators()), &s);
        let again = FiniteRing::close_subring(ext.a().ambient().clone(), ext.a().elements(), DEFAULT_SIZE_CAP).unwrap();
        prop_assert_eq!(&again, ext.a().as_ref());
    }

    #[test]
    fn colon_adjunction(ext in extensions(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let s = random_submodule(&ext, s1);
        let t = random_submodule(&ext, s2);
        let c = s.colon(&t).unwrap();
        prop_assert!(t.product(&c).unwrap().is_subset(&s));
        prop_assert!(s.is_subset(&s.product(&t).unwrap().colon(&t).unwrap()));
    }

    #[test]
    fn sum_and_product_laws(ext in extensions(), s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (s, t, r) = (random_submodule(&ext, s1), random_submodule(&ext, s2), random_submodule(&ext, s3));
        prop_assert_eq!(s.sum(&t).unwrap(), t.sum(&s).unwrap());
        prop_assert_eq!(s.product(&t).unwrap(), t.product(&s).unwrap());
        prop_assert_eq!(s.product(&t).unwrap().product(&r).unwrap(), s.product(&t.product(&r).unwrap()).unwrap());
        prop_assert_eq!(s.sum(&Submodule::zero(&ext)).unwrap(), s.clone());
    }

    #[test]
    fn localization_is_sound(ext in rings()) {
        let a = ext.a();
        for m in maximal_ideals(a) {
            let loc = localize(a, &m.members).unwrap();
            let kernel = a.set_from((0..a.size()).filter(|&x| {
                (0..a.size()).any(|s| !m.contains(s) && a.mul(s, x) == a.zero())
            }));
            prop_assert_eq!(loc.kernel(), &kernel);
            for x in 0..a.size() {
                prop_assert_eq!(loc.class(x) == loc.zero(), kernel.contains(x));
                for y in 0..a.size() {
                    prop_assert_eq!(loc.class(a.add(x, y)), loc.add(loc.class(x), loc.class(y)));
                    prop_assert_eq!(loc.class(a.mul(x, y)), loc.mul(loc.class(x), loc.class(y)));
                }
                if !m.contains(x) {
                    prop_assert!(loc.is_unit(loc.class(x)));
                }
            }
        }
    }

    #[test]
    fn local_global(ext in rings()) {
        let all = ideals(&ext);
        let max = maximal_ideals(ext.a());
        for a in &all {
            for b in &all {
                let locally = max.iter().all(|m| {
                    localize_submodule(a, &m.members).unwrap() == localize_submodule(b, &m.members).unwrap()
                });
                prop_assert_eq!(locally, a == b);
            }
        }
    }

    #[test]
    fn maximal_ideals_are_complete(ext in rings()) {
        let a = ext.a();
        let max = maximal_ideals(a);
        let whole = a.set_from(0..a.size());
        for s in all_ideals(a) {
            if *s != whole {
                prop_assert!(max.iter().any(|m| s.is_subset(&m.members)));
            }
        }
        for m in &max {
            prop_assert!(is_maximal_ideal(a, &m.members));
        }
    }

    #[test]
    fn generalized_localization_matches_fraction_rings(ext in extensions()) {
        for m in maximal_ideals(ext.a()) {
            let gl = generalized_localization(&ext, &m.members).unwrap();
            let direct = preimage_of_localization(&ext, &m.members);
            prop_assert_eq!(gl.size(), direct.count_ones(..));
            prop_assert!(gl.elements().iter().all(|e| direct.contains(ext.b().index_of(e).unwrap())));
        }
        prop_assert!(weak_surjectivity_crosscheck(&ext).unwrap().holds);
    }

    #[test]
    fn oracle_agrees_with_is_flat(ext in rings()) {
        prop_assume!(ext.a().size() <= DEFAULT_ORACLE_CAP);
        for a in ideals(&ext) {
            let set = a.a_set().unwrap();
            let oracle = flatness_oracle(ext.a(), &set, DEFAULT_ORACLE_CAP).unwrap();
            prop_assert_eq!(oracle.holds, is_flat(&ext, &a).unwrap().holds, "{}", a.describe());
        }
    }

    #[test]
    fn ideal_laws_finite(ext in extensions()) {
        for a in ideals(&ext) {
            check_ideal_laws(&ext, &a)?;
        }
    }

    #[test]
    fn ideal_laws_mixed(u in mixed_extensions(), values in prop::collection::vec(0i128..40, 1..3), t in prop::collection::vec(0usize..6, 0..2)) {
        let a = mixed_ideal(&u, &values, &t);
        check_ideal_laws(&u, &a)?;
    }

    #[test]
    fn canonical_forms_are_unique(u in mixed_extensions(), gens in prop::collection::vec((1i128..200, 1i128..20), 1..4)) {
        let elements: Vec<MixedElement> = gens
            .iter()
            .map(|&(n, d)| MixedElement { slots: vec![Q::new(n, d); u.rank()], tail: u.tail().b().one() })
            .collect();
        let a = u.generated(&elements);
        let mut reversed = elements.clone();
        reversed.reverse();
        reversed.push(u.add(&elements[0], &elements[0]));
        prop_assert_eq!(&u.generated(&reversed), &a);
        let g = elements.iter().skip(1).fold(elements[0].slots[0], |acc, e| gcd_q(&acc, &e.slots[0]));
        prop_assert_eq!(&u.ideal(&vec![g; u.rank()], &[u.tail().b().one()]).unwrap(), &a);
    }

    #[test]
    fn theorem_2_1_finite(ext in extensions()) {
        prop_assert!(verify_theorem_2_1(&ext).unwrap().holds);
        prop_assert!(verify_main_theorem(&ext).unwrap().holds);
    }

    #[test]
    fn theorem_2_1_mixed(u in mixed_extensions()) {
        prop_assert!(verify_theorem_2_1(&u).unwrap().holds);
        prop_assert!(verify_main_theorem(&u).unwrap().holds);
    }

    #[test]
    fn prime_indicators_are_valuations(ext in rings()) {
        let b = ext.b();
        for p in all_ideals(b).iter().filter(|s| is_prime_ideal(b, s)) {
            let table = (0..b.size())
                .map(|x| Some(if p.contains(x) { Value::Infinity } else { Value::Finite(vec![]) }))
                .collect();
            let data = ManisValuationData { rank: 0, assignment: Assignment::Table(table) };
            let (verdict, pair) = check_manis_valuation(&data, b).unwrap();
            prop_assert!(verdict.holds);
            let pair = pair.unwrap();
            prop_assert!(is_prime_ideal(b, &pair.prime) || pair.prime == *p);
            prop_assert!(is_manis_pair_finite(b, &pair.ring, &pair.prime).unwrap().holds);
        }
    }

    #[test]
    fn accepted_tables_give_manis_pairs(ext in rings(), seed in any::<u64>()) {
        let b = ext.b();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = (0..b.size())
            .map(|x| Some(if x == b.zero() || rng.gen_bool(0.3) { Value::Infinity } else { Value::Finite(vec![0]) }))
            .collect();
        let data = ManisValuationData { rank: 1, assignment: Assignment::Table(table) };
        let (verdict, pair) = check_manis_valuation(&data, b).unwrap();
        if verdict.holds {
            let pair = pair.unwrap();
            prop_assert!(is_manis_pair_finite(b, &pair.ring, &pair.prime).unwrap().holds);
        }
    }

    #[test]
    fn i_f_is_a_monotone_fixpoint(u in mixed_extensions(), base in 1i128..300, members in prop::collection::vec(1i128..30, 0..3)) {
        let one = u.tail().b().one();
        let a = mixed_ideal(&u, &[base], &[one]);
        let mut family: Vec<MixedIdeal> = Vec::new();
        for m in members {
            let candidate = mixed_ideal(&u, &[num_integer::gcd(m, base)], &[one]);
            let ok = u.is_subset(&a, &candidate)
                && family.iter().all(|f| u.comaximal_split(f, &candidate).is_some());
            if ok && !family.contains(&candidate) {
                family.push(candidate);
            }
        }
        let fam = ComaximalFamily::new(&u, a.clone(), family).unwrap();
        let fix = compute_i_f(&u, &fam).unwrap();
        prop_assert!(u.is_subset(&a, &fix.ideal));
        let p = fam.product(&u).unwrap();
        let mut c = a.clone();
        for _ in 0..=fix.stages + 1 {
            let next = u.intersect_a(&u.colon(&c, &p).unwrap());
            prop_assert!(u.is_subset(&c, &next));
            c = next;
        }
        prop_assert_eq!(&c, &fix.ideal);
        for b in &fam.members {
            prop_assert!(u.is_subset(&u.intersect_a(&u.colon(&a, b).unwrap()), &fix.ideal));
        }
        let report = verify_lemma_technical(&u, &fam).unwrap();
        prop_assert!(report.holds());
    }

    #[test]
    fn finite_generators_reproduce(u in mixed_extensions(), value in 1i128..500) {
        let a = mixed_ideal(&u, &[value], &[u.tail().b().one()]);
        let built = construct_finite_generators(&u, &a, None).unwrap();
        prop_assert!(built.reproduces(&a));
        prop_assert_eq!(&u.generated(&built.generators), &a);
    }

    #[test]
    fn comaximal_enumeration_is_exhaustive(n in 1usize..=12, edges in prop::collection::vec((0usize..12, 0usize..12), 0..20), gamma_mask in any::<u16>()) {
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let covers: Vec<(usize, usize)> =
            edges.into_iter().filter(|&(x, y)| x < y && y < n).collect();
        let gamma: Vec<usize> = (0..n).filter(|i| gamma_mask >> i & 1 == 1).collect();
        let p = FinitePoset::from_covers(labels, &covers, &gamma).unwrap();
        for a in 0..n {
            let candidates: Vec<usize> = (0..n).filter(|&x| p.in_gamma(x) && p.leq(a, x)).collect();
            let comaximal = |set: &[usize]| set.iter().enumerate().all(|(i, &x)| set[i + 1..].iter().all(|&y| p.are_comaximal(x, y)));
            let mut brute: Vec<Vec<usize>> = Vec::new();
            for mask in 1u32..(1 << candidates.len()) {
                let set: Vec<usize> = (0..candidates.len()).filter(|i| mask >> i & 1 == 1).map(|i| candidates[i]).collect();
                if !comaximal(&set) {
                    continue;
                }
                let maximal = candidates.iter().all(|c| {
                    set.contains(c) || {
                        let mut bigger = set.clone();
                        bigger.push(*c);
                        !comaximal(&bigger)
                    }
                });
                if maximal {
                    brute.push(set);
                }
            }
            brute.sort();
            prop_assert_eq!(p.comaximal_subsets(a), brute);
        }
        if !gamma.is_empty() {
            if let Ok(report) = check_equivalence(&p) {
                prop_assert!(report.verdict.holds);
            }
        }
    }

    #[test]
    fn relation_tables_are_validated(n in 1usize..6, bits in prop::collection::vec(any::<bool>(), 36)) {
        let leq: Vec<Vec<usize>> = (0..n).map(|x| (0..n).filter(|&y| x == y || bits[x * 6 + y]).collect()).collect();
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let valid = (0..n).all(|x| {
            leq[x].iter().all(|&y| leq[y].iter().all(|z| leq[x].contains(z)) && (y == x || !leq[y].contains(&x)))
        });
        prop_assert_eq!(FinitePoset::from_relation(labels, &leq, &[]).is_ok(), valid);
    }
}

fn check_ideal_laws<U: RingUniverse>(u: &U, a: &U::Module) -> Result<(), TestCaseError> {
    let (inv, inverse) = is_b_invertible(u, a).unwrap();
    let regular = is_b_regular(u, a).unwrap().holds;
    let flat = is_flat(u, a).unwrap().holds;
    prop_assert_eq!(inv.holds, regular && flat, "inv-flat at {}", u.describe_module(a));
    if inv.holds {
        prop_assert!(regular && u.generators(a).is_some());
        let pou = partition_of_unity(u, a).unwrap();
        prop_assert!(verify_partition(u, a, &pou).unwrap());
        prop_assert_eq!(u.product(a, &inverse.unwrap()).unwrap(), u.ring_a());
    }
    let ff = is_faithfully_flat(u, a).unwrap().holds;
    let lp = is_locally_principal(u, a).unwrap().holds;
    if ff {
        prop_assert!(lp, "faithfully flat but not locally principal: {}", u.describe_module(a));
    }
    if regular {
        prop_assert_eq!(ff, lp, "regular ideal {}", u.describe_module(a));
    }
    Ok(())
}

#[test]
fn empty_fixedbitset_helper_is_consistent() {
    let set = FixedBitSet::with_capacity(4);
    assert_eq!(set.count_ones(..), 0);
}
