//! The worked-examples regression bundle.
//!
//! Each check rebuilds a small instance and compares exact values. A
//! check that needs a lattice beyond the configured cap is skipped with a
//! notice. With `corrupt` set, chain-uniform shares use a perturbed ratio
//! table so that the affected checks fail by name.

use std::sync::Arc;

use lattice_games::coresep::{
    core_contains, core_feasible, core_system, separability_test, separating_variant, verify_certificate,
    CoreOutcome, Separability, SeparatingFamily,
};
use lattice_games::games::{additive_global, is_supermodular, is_symmetric, is_totally_positive, Check};
use lattice_games::lattice::chains::pair_ratio_closed_form;
use lattice_games::lattice::{class_count, subset};
use lattice_games::rational::{binomial, from_biguint, int, ratio, render};
use lattice_games::solutions::{
    cu, cu_chain_oracle, cu_with_ratios, egalitarian, expand, is_fixed_point, shapley_chain, shapley_dividends,
    su, symmetric_solution, transport_solution_to_plus, Solver,
};
use lattice_games::transform::{mobius, zeta_expand, zeta_game, MobiusCoefficients};
use lattice_games::{ClassVector, Element, Error, Lattice, LatticeGame, LatticeKind, Limits, Rational, Solution};
use num_traits::{One, Zero};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub name: &'static str,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Options {
    pub limits: Limits,
    pub corrupt: bool,
}

enum Failure {
    Mismatch(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run = Result<(), Failure>;

struct Ctx {
    opts: Options,
}

impl Ctx {
    fn lattice(&self, kind: LatticeKind, n: usize) -> Result<Arc<Lattice>, Failure> {
        Ok(Lattice::new(kind, n, &self.opts.limits)?)
    }

    fn cu(&self, f: &LatticeGame) -> Solution {
        if self.opts.corrupt {
            let n = f.lattice().n();
            cu_with_ratios(f, |l, x| pair_ratio_closed_form(n, l.element(x)) * ratio(11, 10))
        } else {
            cu(f)
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Run {
    if cond {
        Ok(())
    } else {
        Err(Failure::Mismatch(msg()))
    }
}

fn shares(sol: &Solution) -> Vec<String> {
    sol.shares().iter().map(render).collect()
}

fn expect_shares(what: &str, sol: &Solution, want: &[&str]) -> Run {
    let got = shares(sol);
    ensure(got == want, || format!("{what}: expected ({}), got ({})", want.join(", "), got.join(", ")))
}

fn element(l: &Lattice, text: &str) -> Result<usize, Failure> {
    Ok(l.parse_element(text)?)
}

fn upset(f: &LatticeGame) -> Vec<String> {
    let l = f.lattice();
    (0..l.len())
        .filter(|&x| f.value(x).is_one())
        .map(|x| l.element(x).to_string())
        .collect()
}

fn coalition_size(l: &Lattice, x: usize) -> usize {
    match l.element(x) {
        Element::Subset(m) => m.count_ones() as usize,
        _ => unreachable!("coalition lattice"),
    }
}

fn by_coalition_size(v: &LatticeGame, want: impl Fn(usize) -> Rational) -> Run {
    let l = v.lattice();
    for x in 0..l.len() {
        let k = coalition_size(l, x);
        let expected = want(k);
        ensure(v.value(x) == &expected, || {
            format!("coalition {}: expected {}, got {}", l.element(x), render(&expected), render(v.value(x)))
        })?;
    }
    Ok(())
}

fn example_game(ctx: &Ctx) -> Result<LatticeGame, Failure> {
    let l = ctx.lattice(LatticeKind::Partitions, 3)?;
    Ok(LatticeGame::new(l, vec![int(0), int(1), int(1), int(1), int(2)])?)
}

fn family(f: &LatticeGame) -> Result<SeparatingFamily, Failure> {
    match separability_test(f)? {
        Separability::Separable(fam) => Ok(fam),
        Separability::NotSeparable { element, .. } => Err(Failure::Mismatch(format!(
            "not separable at {}",
            f.lattice().element(element)
        ))),
    }
}

fn alternating(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

fn partition_elements(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Partitions, 3)?;
    let names: Vec<String> = l.elements().iter().map(|e| e.to_string()).collect();
    let want = ["1|2|3", "1,2|3", "1,3|2", "1|2,3", "1,2,3"];
    ensure(names == want && l.num_atoms() == 3, || format!("elements {names:?}, {} atoms", l.num_atoms()))
}

fn join_of_atoms(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Partitions, 3)?;
    let j = l.join(element(&l, "1,2|3")?, element(&l, "1,3|2")?)?;
    ensure(j == l.top(), || format!("join is {}", l.element(j)))
}

fn top_size_and_rank(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Partitions, 3)?;
    ensure(l.size(l.top()) == 3 && l.rank(l.top()) == 2, || {
        format!("size {}, rank {}", l.size(l.top()), l.rank(l.top()))
    })
}

fn atom_class_count(_: &Ctx) -> Run {
    let c = class_count(&ClassVector::from_block_sizes(3, &[2, 1]));
    ensure(c == 3u32.into(), || format!("class count {c}"))
}

fn ratios_sum_to_one(ctx: &Ctx, kind: LatticeKind, n: usize) -> Run {
    let l = ctx.lattice(kind, n)?;
    for a in 0..l.num_atoms() {
        let mut sum = Rational::zero();
        for x in 0..l.len() {
            if !l.atom_below(a, x) {
                sum += l.chain_pair_ratio(x, a)?;
            }
        }
        ensure(sum.is_one(), || format!("atom {}: ratios sum to {}", l.atom_key(a), render(&sum)))?;
    }
    Ok(())
}

fn embedded_atoms(ctx: &Ctx) -> Run {
    let e = ctx.lattice(LatticeKind::Embedded, 2)?;
    let images: Vec<String> = e
        .atoms()
        .iter()
        .map(|&x| match e.element(x) {
            Element::Embedded(s) => s.to_plus_partition().to_string(),
            _ => unreachable!(),
        })
        .collect();
    let keys: Vec<String> = (0..e.num_atoms()).map(|a| e.atom_key(a)).collect();
    ensure(
        keys == ["{1}:1|2", "{2}:1|2", "{}:1,2"] && images == ["1,3|2", "1|2,3", "1,2|3"],
        || format!("atoms {keys:?} map to {images:?}"),
    )
}

fn size_mobius_on_atoms(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Partitions, 4)?;
    let mu = mobius(&LatticeGame::size(l.clone()));
    for x in 0..l.len() {
        let want = if l.atom_position(x).is_some() { int(1) } else { int(0) };
        ensure(mu.get(x) == &want, || format!("μ({}) = {}", l.element(x), render(mu.get(x))))?;
    }
    Ok(())
}

fn atom_mass_expands(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Partitions, 4)?;
    let weights: Vec<Rational> = (0..l.num_atoms()).map(|a| ratio(a as i64 + 1, 3)).collect();
    let mut coeffs = vec![Rational::zero(); l.len()];
    for (a, w) in weights.iter().enumerate() {
        coeffs[l.atoms()[a]] = w.clone();
    }
    let f = zeta_expand(&MobiusCoefficients::new(l.clone(), coeffs)?);
    let g = expand(&Solution::new(l, weights)?);
    ensure(f == g, || "atom weights do not expand to sums over atoms".into())
}

fn zeta_of_pair(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Partitions, 3)?;
    let z = zeta_game(&l, element(&l, "1,2|3")?)?;
    let got = upset(&z);
    ensure(got == ["1,2|3", "1,2,3"], || format!("support {got:?}"))
}

fn zeta_of_embedded_pair(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Embedded, 2)?;
    let z = zeta_game(&l, element(&l, "{}:1,2")?)?;
    let got = upset(&z);
    ensure(got == ["{}:1,2", "{1,2}:1,2"], || format!("support {got:?}"))
}

fn additive_rank_and_size(ctx: &Ctx) -> Run {
    let p = ctx.lattice(LatticeKind::Partitions, 4)?;
    let sets = ctx.lattice(LatticeKind::Subsets, 4)?;
    let minus_one = LatticeGame::from_fn(sets.clone(), |x| int(coalition_size(&sets, x) as i64 - 1));
    let pairs = LatticeGame::from_fn(sets.clone(), |x| from_biguint(&binomial(coalition_size(&sets, x), 2)));
    ensure(additive_global(&minus_one, &p)? == LatticeGame::rank(p.clone()), || "|A|−1 does not give the rank".into())?;
    ensure(additive_global(&pairs, &p)? == LatticeGame::size(p.clone()), || "C(|A|,2) does not give the size".into())
}

fn rank_and_size_symmetric(ctx: &Ctx) -> Run {
    let p = ctx.lattice(LatticeKind::Partitions, 4)?;
    let e = ctx.lattice(LatticeKind::Embedded, 3)?;
    for l in [p, e] {
        ensure(is_symmetric(&LatticeGame::rank(l.clone())).is_some(), || format!("rank on {} is not symmetric", l.kind()))?;
        ensure(is_symmetric(&LatticeGame::size(l.clone())).is_some(), || format!("size on {} is not symmetric", l.kind()))?;
    }
    Ok(())
}

fn supermodular_not_positive(ctx: &Ctx) -> Run {
    let f = example_game(ctx)?;
    let l = f.lattice();
    ensure(is_supermodular(&f).holds(), || "not supermodular".into())?;
    ensure(is_totally_positive(&f) == Check::FailsAt(l.top()), || "total positivity should fail at the top".into())?;
    let mu = mobius(&f);
    ensure(mu.get(l.top()) == &int(-1), || format!("μ(top) = {}", render(mu.get(l.top()))))
}

fn size_totally_positive(ctx: &Ctx) -> Run {
    for (kind, n) in [(LatticeKind::Partitions, 4), (LatticeKind::Embedded, 3)] {
        let l = ctx.lattice(kind, n)?;
        ensure(is_totally_positive(&LatticeGame::size(l)).holds(), || format!("size on {kind} not totally positive"))?;
    }
    Ok(())
}

fn shapley_on_zeta(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Subsets, 4)?;
    for x in 1..l.len() {
        let Element::Subset(mask) = *l.element(x) else { unreachable!() };
        let z = zeta_game(&l, x)?;
        let k = mask.count_ones() as i64;
        let want: Vec<Rational> = (0..4).map(|i| if mask >> i & 1 == 1 { ratio(1, k) } else { int(0) }).collect();
        for (form, sol) in [("marginal", shapley_chain(&z)?), ("dividend", shapley_dividends(&z)?)] {
            ensure(sol.shares() == want.as_slice(), || {
                format!("{form} form on ζ_{}: ({})", subset::render(mask), shares(&sol).join(", "))
            })?;
        }
    }
    Ok(())
}

fn shapley_fixes_inessential(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Subsets, 3)?;
    let own = [int(1), ratio(-1, 2), int(3)];
    let v = LatticeGame::from_fn(l.clone(), |x| {
        let Element::Subset(mask) = *l.element(x) else { unreachable!() };
        subset::members(mask).iter().map(|&i| own[i - 1].clone()).sum()
    });
    let sol = shapley_dividends(&v)?;
    ensure(sol.shares() == own.as_slice(), || format!("got ({})", shares(&sol).join(", ")))
}

fn su_pair_zeta(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Partitions, 3)?;
    expect_shares("su", &su(&zeta_game(&l, element(&l, "1,2|3")?)?), &["1", "0", "0"])
}

fn rank_two_thirds(ctx: &Ctx) -> Run {
    for (kind, n) in [(LatticeKind::Partitions, 3), (LatticeKind::Embedded, 2)] {
        let l = ctx.lattice(kind, n)?;
        let r = LatticeGame::rank(l.clone());
        let want = ["2/3", "2/3", "2/3"];
        expect_shares(&format!("su on {kind}"), &su(&r), &want)?;
        expect_shares(&format!("cu on {kind}"), &ctx.cu(&r), &want)?;
        expect_shares(&format!("egalitarian on {kind}"), &egalitarian(&r), &want)?;
        let g = is_symmetric(&r).ok_or_else(|| Failure::Mismatch("rank not symmetric".into()))?;
        expect_shares(&format!("symmetric closed form on {kind}"), &symmetric_solution(&g, &l)?, &want)?;
    }
    Ok(())
}

fn su_embedded_zeta(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Embedded, 2)?;
    expect_shares("su", &su(&zeta_game(&l, element(&l, "{}:1,2")?)?), &["0", "0", "1"])
}

fn cu_pair_zeta(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Partitions, 3)?;
    let z = zeta_game(&l, element(&l, "1,2|3")?)?;
    expect_shares("cu", &ctx.cu(&z), &["2/3", "1/6", "1/6"])?;
    expect_shares("chain enumeration", &cu_chain_oracle(&z)?, &["2/3", "1/6", "1/6"])
}

fn cu_embedded_zeta(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Embedded, 2)?;
    let z = zeta_game(&l, element(&l, "{}:1,2")?)?;
    expect_shares("cu", &ctx.cu(&z), &["1/6", "1/6", "2/3"])?;
    expect_shares("chain enumeration", &cu_chain_oracle(&z)?, &["1/6", "1/6", "2/3"])
}

fn cu_on_scaled_size(ctx: &Ctx) -> Run {
    for (kind, n) in [(LatticeKind::Partitions, 4), (LatticeKind::Embedded, 3)] {
        let l = ctx.lattice(kind, n)?;
        let alpha = ratio(5, 2);
        let sol = ctx.cu(&LatticeGame::size(l.clone()).scaled(&alpha));
        let want = vec![alpha.clone(); l.num_atoms()];
        ensure(sol.shares() == want.as_slice(), || format!("cu on {kind}: ({})", shares(&sol).join(", ")))?;
    }
    Ok(())
}

fn egalitarian_top_zeta(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Partitions, 4)?;
    let f = zeta_game(&l, l.top())?.scaled(&int(6));
    let sol = egalitarian(&f);
    ensure(expand(&sol) == LatticeGame::size(l), || format!("got ({})", shares(&sol).join(", ")))
}

fn unit_shares_give_size(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Partitions, 4)?;
    let ones = Solution::new(l.clone(), vec![int(1); l.num_atoms()])?;
    ensure(expand(&ones) == LatticeGame::size(l), || "expansion differs from the size".into())
}

fn shapley_expands_inessential(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Subsets, 3)?;
    let v = LatticeGame::from_fn(l.clone(), |x| int((x * x) as i64 % 7));
    let sol = shapley_dividends(&v)?;
    let w = expand(&sol);
    for x in 0..l.len() {
        let Element::Subset(mask) = *l.element(x) else { unreachable!() };
        let sum: Rational = subset::members(mask).iter().map(|&i| sol.share(i - 1)).sum();
        ensure(w.value(x) == &sum, || format!("coalition {}", l.element(x)))?;
    }
    Ok(())
}

fn fixed_points(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Partitions, 3)?;
    let mut coeffs = vec![Rational::zero(); l.len()];
    for (a, &x) in l.atoms().iter().enumerate() {
        coeffs[x] = int(a as i64 + 2);
    }
    let atomic = zeta_expand(&MobiusCoefficients::new(l.clone(), coeffs)?);
    ensure(is_fixed_point(Solver::Su, &atomic)?, || "su does not fix an atom-supported game".into())?;
    let z = zeta_game(&l, element(&l, "1,2|3")?)?;
    ensure(expand(&ctx.cu(&z)) != z, || "cu fixes the [12] zeta game".into())?;
    let five = LatticeGame::size(l).scaled(&int(5));
    ensure(expand(&ctx.cu(&five)) == five, || "cu does not fix 5·s".into())
}

fn transport(ctx: &Ctx) -> Run {
    let e = ctx.lattice(LatticeKind::Embedded, 2)?;
    let p = ctx.lattice(LatticeKind::Partitions, 3)?;
    let ze = zeta_game(&e, element(&e, "{}:1,2")?)?;
    let zp = zeta_game(&p, element(&p, "1,2|3")?)?;
    let moved = transport_solution_to_plus(&su(&ze), &p)?;
    ensure(moved == su(&zp), || format!("su moves to ({})", shares(&moved).join(", ")))?;
    let moved = transport_solution_to_plus(&ctx.cu(&ze), &p)?;
    ensure(moved == ctx.cu(&zp), || format!("cu moves to ({})", shares(&moved).join(", ")))
}

fn coalitional_core_shape(ctx: &Ctx) -> Run {
    let l = ctx.lattice(LatticeKind::Subsets, 3)?;
    let sys = core_system(&LatticeGame::zero(l));
    ensure(sys.constraints.len() == 8 && sys.variables == 3, || {
        format!("{} constraints over {} variables", sys.constraints.len(), sys.variables)
    })
}

fn empty_core(ctx: &Ctx) -> Run {
    let f = example_game(ctx)?;
    match core_feasible(&f)? {
        CoreOutcome::Empty(cert) => ensure(verify_certificate(&f, &cert), || "certificate does not verify".into())?,
        CoreOutcome::Nonempty(w) => return Err(Failure::Mismatch(format!("witness ({})", shares(&w).join(", ")))),
    }
    let even = Solution::new(f.lattice().clone(), vec![ratio(2, 3); 3])?;
    ensure(!core_contains(&f, &even)?.holds(), || "(2/3, 2/3, 2/3) lies in the core".into())
}

fn rank_separators(ctx: &Ctx) -> Run {
    let p = ctx.lattice(LatticeKind::Partitions, 4)?;
    let fam = family(&LatticeGame::rank(p))?;
    let base = fam.base();
    let dividends = LatticeGame::new(base.lattice().clone(), mobius(base).coeffs().to_vec())?;
    by_coalition_size(&dividends, |k| if k <= 1 { int(0) } else { alternating(k) })?;
    let v = separating_variant(&fam, &[int(0), int(0), int(0), int(0)], int(-1))?;
    by_coalition_size(&v, |k| int(k as i64 - 1))
}

fn size_separators(ctx: &Ctx) -> Run {
    let p = ctx.lattice(LatticeKind::Partitions, 4)?;
    let fam = family(&LatticeGame::size(p))?;
    by_coalition_size(fam.base(), |k| from_biguint(&binomial(k, 2)))?;
    let v = separating_variant(&fam, &[int(0), int(0), int(0), int(0)], int(-1))?;
    let dividends = LatticeGame::new(v.lattice().clone(), mobius(&v).coeffs().to_vec())?;
    by_coalition_size(&dividends, |k| if k == 2 { int(0) } else { -alternating(k) })
}

fn convex_separators(ctx: &Ctx) -> Run {
    let p = ctx.lattice(LatticeKind::Partitions, 4)?;
    let fam = family(&LatticeGame::size(p.clone()))?;
    let v = separating_variant(&fam, &[int(1), int(-1), int(2), int(-2)], int(3))?;
    let w = fam.base();
    let alpha = ratio(1, 3);
    let mix = LatticeGame::from_fn(w.lattice().clone(), |x| &alpha * v.value(x) + (int(1) - &alpha) * w.value(x));
    ensure(additive_global(&mix, &p)? == LatticeGame::size(p), || "mixture does not separate".into())
}

type CheckFn = fn(&Ctx) -> Run;

const CHECKS: &[(&str, CheckFn)] = &[
    ("P^3 lists five partitions with three atoms", partition_elements),
    ("[12] join [13] is the top of P^3", join_of_atoms),
    ("top of P^3 has size 3 and rank 2", top_size_and_rank),
    ("the atom class of P^3 holds three partitions", atom_class_count),
    ("chain ratios sum to one for every atom of P^4", |c| ratios_sum_to_one(c, LatticeKind::Partitions, 4)),
    ("chain ratios sum to one for every atom of E^3", |c| ratios_sum_to_one(c, LatticeKind::Embedded, 3)),
    ("E^2 atoms are [13], [23], [12] of P^3", embedded_atoms),
    ("Möbius inversion of the size is 1 on atoms, 0 elsewhere", size_mobius_on_atoms),
    ("atom-supported Möbius mass expands to sums over atoms", atom_mass_expands),
    ("zeta game of [12] is 1 exactly on [12] and the top", zeta_of_pair),
    ("zeta game of (∅,[12]) is 1 exactly above (∅,[12])", zeta_of_embedded_pair),
    ("|A|−1 and C(|A|,2) add up to rank and size", additive_rank_and_size),
    ("rank and size are symmetric", rank_and_size_symmetric),
    ("(0;1,1,1;2) is supermodular with μ(top) = −1", supermodular_not_positive),
    ("size is totally positive", size_totally_positive),
    ("Shapley gives 1/|A| to each member on zeta games", shapley_on_zeta),
    ("Shapley fixes inessential games", shapley_fixes_inessential),
    ("su of the [12] zeta game on P^3 is (1, 0, 0)", su_pair_zeta),
    ("su, cu, egalitarian and the closed form give 2/3 on the rank", rank_two_thirds),
    ("su of the (∅,[12]) zeta game on E^2 is (0, 0, 1)", su_embedded_zeta),
    ("cu of the [12] zeta game on P^3 is (2/3, 1/6, 1/6)", cu_pair_zeta),
    ("cu of the (∅,[12]) zeta game on E^2 is (1/6, 1/6, 2/3)", cu_embedded_zeta),
    ("cu gives α per atom on α·s", cu_on_scaled_size),
    ("egalitarian of C(n,2)·ζ_top expands to the size", egalitarian_top_zeta),
    ("unit shares expand to the size", unit_shares_give_size),
    ("Shapley expands to an inessential game", shapley_expands_inessential),
    ("su fixes atom games, cu fixes 5·s but not ζ_[12]", fixed_points),
    ("su and cu commute with the E^2 to P^3 transport", transport),
    ("the coalitional core on 3 players has 8 constraints", coalitional_core_shape),
    ("(0;1,1,1;2) has an empty core with a valid certificate", empty_core),
    ("rank is separated by |A|−1 and by alternating dividends", rank_separators),
    ("size is separated by C(|A|,2) and by its variant", size_separators),
    ("mixtures of separating functions separate", convex_separators),
];

pub fn run(opts: &Options) -> Vec<Outcome> {
    let ctx = Ctx { opts: *opts };
    CHECKS
        .iter()
        .map(|&(name, check)| {
            let verdict = match check(&ctx) {
                Ok(()) => Verdict::Pass,
                Err(Failure::Mismatch(msg)) => Verdict::Fail(msg),
                Err(Failure::Lib(e @ Error::SizeLimit { .. })) => Verdict::Skip(e.to_string()),
                Err(Failure::Lib(e)) => Verdict::Fail(e.to_string()),
            };
            Outcome { name, verdict }
        })
        .collect()
}

pub fn all_passed(outcomes: &[Outcome]) -> bool {
    outcomes.iter().all(|o| !matches!(o.verdict, Verdict::Fail(_)))
}

pub fn render_text(outcomes: &[Outcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let line = match &o.verdict {
            Verdict::Pass => format!("PASS  {}\n", o.name),
            Verdict::Fail(msg) => format!("FAIL  {}: {msg}\n", o.name),
            Verdict::Skip(msg) => format!("SKIP  {}: {msg}\n", o.name),
        };
        out.push_str(&line);
    }
    let count = |f: fn(&Verdict) -> bool| outcomes.iter().filter(|o| f(&o.verdict)).count();
    out.push_str(&format!(
        "{} passed, {} failed, {} skipped\n",
        count(|v| *v == Verdict::Pass),
        count(|v| matches!(v, Verdict::Fail(_))),
        count(|v| matches!(v, Verdict::Skip(_)))
    ));
    out
}

pub fn render_json(outcomes: &[Outcome]) -> Value {
    let results: Vec<Value> = outcomes
        .iter()
        .map(|o| match &o.verdict {
            Verdict::Pass => json!({"name": o.name, "status": "pass"}),
            Verdict::Fail(msg) => json!({"name": o.name, "status": "fail", "detail": msg}),
            Verdict::Skip(msg) => json!({"name": o.name, "status": "skip", "detail": msg}),
        })
        .collect();
    json!({"command": "worked-examples", "allPassed": all_passed(outcomes), "results": results})
}
