mod common;

use std::sync::atomic::{AtomicU64, Ordering};

use common::colourable;
use listcol::detect::{contains_k4, find_induced_path, Pattern};
use listcol::gen::{generate, random_lists, rng, GenParams};
use listcol::oracle::Budget;
use listcol::rules::{applicable, apply_rule, Rule, RuleContext, RuleObserver, Step};
use listcol::{solve_with, Instance, SolveOptions, Target};
use rand::Rng;

#[test]
fn identification_k4_check_matches_a_global_search() {
    let (mut fired, mut refused) = (0, 0);
    for seed in 0..3000u64 {
        let params = GenParams::new(9 + (seed % 5) as usize, 0.35, vec![Pattern::k4()], true, seed);
        let Ok(g) = generate(&params) else { continue };
        let mut r = rng(seed);
        let lists = random_lists(&g, 3, 2 + (seed % 2) as usize, &mut r);
        let mut inst = Instance::with_lists(g.clone(), lists, 3).unwrap();
        let path = find_induced_path(&g, 7).unwrap();
        inst.set_n0(path.vertices.try_into().unwrap()).unwrap();
        let ctx = RuleContext::phase4(r.gen_range(1..=3), Budget::default());
        while applicable(Rule::Identify, &inst, &ctx) {
            let step = apply_rule(Rule::Identify, &mut inst, &ctx).unwrap();
            fired += 1;
            assert_eq!(step == Step::No, contains_k4(inst.graph()).is_some(), "seed {seed}");
            if step == Step::No {
                refused += 1;
                break;
            }
        }
    }
    assert!(fired >= 200 && refused > 0, "{fired} identifications, {refused} refused");
}

#[derive(Default)]
struct Recorder {
    fired: [AtomicU64; 13],
    checked: AtomicU64,
    broken: AtomicU64,
}

impl RuleObserver for Recorder {
    fn wants(&self, rule: Rule) -> bool {
        rule.number() >= 8
    }

    fn observe(&self, _rule: Rule, before: &Instance, step: &Step, after: &Instance) {
        let had = colourable(before.graph(), before.lists());
        let ok = match step {
            Step::No => !had,
            Step::Yes(_) => had,
            Step::Changed => had == colourable(after.graph(), after.lists()),
            Step::NoChange => false,
        };
        self.checked.fetch_add(1, Ordering::Relaxed);
        if !ok {
            self.broken.fetch_add(1, Ordering::Relaxed);
        }
    }

    fn fired(&self, rule: Rule) {
        self.fired[rule.number() as usize - 1].fetch_add(1, Ordering::Relaxed);
    }
}

#[test]
fn observer_sees_every_firing() {
    let mut checked = 0;
    for seed in 0..60u64 {
        let target = if seed % 2 == 0 { Target::P2P5 } else { Target::P3P4 };
        let params = GenParams::new(12, 0.3, vec![Pattern::k4(), target.pattern()], true, seed);
        let Ok(g) = generate(&params) else { continue };
        let lists = random_lists(&g, 3, 2, &mut rng(seed));
        let inst = Instance::with_lists(g, lists, 3).unwrap();
        let rec = Recorder::default();
        let opts = SolveOptions {
            target: Some(target),
            ..SolveOptions::default()
        };
        let rep = solve_with(&inst, &opts, &rec).unwrap();
        let seen: Vec<u64> = rec.fired.iter().map(|a| a.load(Ordering::Relaxed)).collect();
        assert_eq!(seen, rep.stats.rule_firings, "seed {seed}");
        assert_eq!(rec.broken.load(Ordering::Relaxed), 0, "seed {seed}");
        checked += rec.checked.load(Ordering::Relaxed);
    }
    assert!(checked > 0);
}
