//! Randomized and exhaustive invariants across the library.

use std::sync::Arc;

use fncodes::bounds::pless_verify;
use fncodes::constructions::{lambda_bar, lambda_bar_walsh, ScalarTriple, VectorialPair};
use fncodes::functions::{fn_compose, FnKind, FnSpec, Space};
use fncodes::galois::chars::{gauss_sum, weil_sum, weil_sum_closed};
use fncodes::linearcode::{macwilliams, weight_distribution, LinearCode};
use fncodes::walsh::component_values;
use fncodes::{CycInt, Elem, FieldCtx, Level};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_table(rng: &mut ChaCha8Rng, len: usize, values: u32) -> Vec<Elem> {
    (0..len).map(|_| Elem(rng.gen_range(0..values))).collect()
}

fn random_vectorial(ctx: &Arc<FieldCtx>, rng: &mut ChaCha8Rng) -> FnSpec {
    let size = ctx.size();
    let table = random_table(rng, size as usize, size);
    FnSpec::from_table(FnKind::Vectorial, Space::Field(ctx.clone()), Space::Field(ctx.clone()), table, "random")
        .unwrap()
}

fn random_scalar(ctx: &Arc<FieldCtx>, rng: &mut ChaCha8Rng) -> FnSpec {
    let sub = ctx.sub_elements().to_vec();
    let table = (0..ctx.size()).map(|_| sub[rng.gen_range(0..sub.len())]).collect();
    FnSpec::from_table(FnKind::Scalar, Space::Field(ctx.clone()), Space::Subfield(ctx.clone()), table, "random")
        .unwrap()
}

fn random_permutation(ctx: &Arc<FieldCtx>, rng: &mut ChaCha8Rng) -> FnSpec {
    let mut table: Vec<Elem> = ctx.elements().collect();
    for i in (1..table.len()).rev() {
        table.swap(i, rng.gen_range(0..=i));
    }
    FnSpec::from_table(FnKind::Vectorial, Space::Field(ctx.clone()), Space::Field(ctx.clone()), table, "perm")
        .unwrap()
}

/// (p, r, m) for the towers exercised below.
const TOWERS: &[(u32, u32, u32)] = &[(2, 1, 4), (2, 2, 2), (3, 1, 3), (3, 2, 1), (5, 1, 2), (7, 1, 1)];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(t in 0..TOWERS.len(), xs in prop::array::uniform3(any::<u32>())) {
        let (p, r, m) = TOWERS[t];
        let ctx = FieldCtx::new(p, r, m).unwrap();
        let [a, b, c] = xs.map(|x| Elem(x % ctx.size()));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.mul(a, ctx.mul(b, c)), ctx.mul(ctx.mul(a, b), c));
        prop_assert_eq!(ctx.add(a, ctx.neg(a)), Elem::ZERO);
        if let Some(inv) = ctx.inv(a) {
            prop_assert_eq!(ctx.mul(a, inv), Elem::ONE);
        } else {
            prop_assert!(a.is_zero());
        }
        // Frobenius is additive and the trace lands in the intermediate field.
        prop_assert_eq!(ctx.frobenius(ctx.add(a, b), 1), ctx.add(ctx.frobenius(a, 1), ctx.frobenius(b, 1)));
        prop_assert!(ctx.in_level(ctx.trace(a, Level::Sub), Level::Sub));
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = FieldCtx::new(2, 1, 3).unwrap();
        let (f, g, h) = (random_vectorial(&ctx, &mut rng), random_vectorial(&ctx, &mut rng), random_vectorial(&ctx, &mut rng));
        let left = fn_compose(&f, &fn_compose(&g, &h).unwrap()).unwrap();
        let right = fn_compose(&fn_compose(&f, &g).unwrap(), &h).unwrap();
        prop_assert_eq!(left.table(), right.table());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Σ_λ |W(v, λ)|² = |domain|² for every component.
    #[test]
    fn parseval(seed in any::<u64>(), which in 0..6usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, r, m) = [(2, 1, 12), (2, 1, 7), (2, 2, 3), (3, 1, 4), (5, 1, 2), (7, 1, 2)][which];
        let ctx = FieldCtx::new(p, r, m).unwrap();
        let f = if which == 2 { random_scalar(&ctx, &mut rng) } else { random_vectorial(&ctx, &mut rng) };
        let v = if which == 2 { Elem::ONE } else { Elem(rng.gen_range(1..ctx.size())) };
        // Single |W|² values can be irrational for p odd; only the sum is an integer.
        let mut total = CycInt::zero(p);
        for w in component_values(&f, v).unwrap() {
            total += w.norm2();
        }
        let size = ctx.size() as i64;
        prop_assert_eq!(total.as_integer(), Some(size * size));
    }
}

fn random_code(rng: &mut ChaCha8Rng) -> LinearCode {
    let (p, r, m) = [(2, 1, 1), (3, 1, 1), (2, 1, 2), (5, 1, 1)][rng.gen_range(0..4)];
    let ctx = FieldCtx::new(p, r, m).unwrap();
    let n = rng.gen_range(3..=10);
    let rows = rng.gen_range(1..=n);
    let gen = (0..rows).map(|_| random_table(rng, n, ctx.size())).collect();
    LinearCode::from_rows(&ctx, Level::Top, n, gen).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn macwilliams_matches_the_enumerated_dual(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_code(&mut rng);
        let wd = weight_distribution(&c).unwrap();
        let direct = weight_distribution(&c.dual()).unwrap();
        prop_assert_eq!(&macwilliams(&wd).unwrap(), &direct);
        prop_assert!(pless_verify(&wd, &direct).holds);
        prop_assert!(pless_verify(&direct, &wd).holds);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// The weight formula is an identity for arbitrary functions, not only plateaued ones.
    #[test]
    fn scalar_weight_formula_for_random_triples(seed in any::<u64>(), odd in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = if odd { FieldCtx::new(3, 1, 2).unwrap() } else { FieldCtx::new(2, 1, 2).unwrap() };
        let fs: Vec<FnSpec> = (0..3).map(|_| random_scalar(&ctx, &mut rng)).collect();
        let t = ScalarTriple::new(&fs[0], &fs[1], &fs[2]).unwrap();
        prop_assert_eq!(t.sums().unwrap().defining_set_size().unwrap(), t.defining_set().size() as u64);
        prop_assert!(t.formula_mismatches().unwrap().is_empty());
    }

    #[test]
    fn vectorial_weight_formula_for_random_pairs(seed in any::<u64>(), which in 0..3usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, r, m) = [(2, 1, 3), (2, 1, 4), (3, 1, 2)][which];
        let ctx = FieldCtx::new(p, r, m).unwrap();
        let (f, g) = (random_vectorial(&ctx, &mut rng), random_vectorial(&ctx, &mut rng));
        let t = VectorialPair::new(&f, &g).unwrap();
        prop_assert_eq!(t.sums().unwrap().defining_set_size().unwrap(), t.defining_set().size() as u64);
        prop_assert!(t.formula_mismatches().unwrap().is_empty());
    }

    /// For a permutation f the correlation sum reduces to a Walsh value of f⁻¹∘g.
    #[test]
    fn lambda_bar_walsh_form(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = FieldCtx::new(2, 1, 3).unwrap();
        let f = random_permutation(&ctx, &mut rng);
        let g = random_vectorial(&ctx, &mut rng);
        for a in [Elem::ZERO, Elem::ONE] {
            for b in ctx.elements() {
                for c in ctx.elements() {
                    prop_assert_eq!(
                        lambda_bar(&f, &g, a, b, c).unwrap(),
                        lambda_bar_walsh(&f, &g, a, b, c).unwrap()
                    );
                }
            }
        }
    }
}

/// Every branch of the quadratic Weil sum, for all arguments.
#[test]
fn weil_sum_closed_form_exhaustive() {
    for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)] {
        let ctx = FieldCtx::new(p, 1, m).unwrap();
        for b in ctx.elements().skip(1) {
            for a2 in ctx.elements().skip(1) {
                for a1 in ctx.elements() {
                    for a0 in ctx.elements() {
                        assert_eq!(
                            weil_sum(&ctx, b, a2, a1, a0),
                            weil_sum_closed(&ctx, b, a2, a1, a0).unwrap(),
                            "q={} b={b:?} a2={a2:?} a1={a1:?} a0={a0:?}",
                            ctx.size()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn gauss_sum_magnitude() {
    for (p, m) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
        let ctx = FieldCtx::new(p, 1, m).unwrap();
        for b in ctx.elements().skip(1) {
            let g = gauss_sum(&ctx, b).unwrap();
            assert_eq!(g.norm2().as_integer(), Some(ctx.size() as i64), "q={} b={b:?}", ctx.size());
        }
    }
}
