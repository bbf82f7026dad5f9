//! Reduced-scale verification suite behind `minhom selftest`: the same
//! cross-checks as the full acceptance tests, sized to finish in seconds.
//! Prints one deterministic line per stage.

use minhom_core::*;

const ORACLE_BUDGET: u64 = 1 << 26;

type Stage = fn() -> Result<String, String>;

pub fn run_all() -> bool {
    let stages: [(&str, Stage); 6] = [
        ("dichotomy agreement (exhaustive n<=3)", dichotomy_exhaustive),
        ("dichotomy agreement (sampled n in 4..=5)", dichotomy_sampled),
        ("solver vs oracle", solver_oracle),
        ("cycle solver vs oracle", cycle_oracle),
        ("reduction cost identities", reductions),
        ("proper interval recognition", recognition),
    ];
    let mut ok = true;
    for (name, stage) in stages {
        match stage() {
            Ok(detail) => println!("selftest {name}: ok ({detail})"),
            Err(e) => {
                println!("selftest {name}: FAILED ({e})");
                ok = false;
            }
        }
    }
    ok
}

fn dichotomy_exhaustive() -> Result<String, String> {
    let mut count = 0usize;
    for n in 1..=3 {
        for h in all_semicomplete_wpl(n) {
            let direct = classify_wpl(&h).map_err(|e| e.to_string())?;
            let composed = classify_via_composition(&h).map_err(|e| e.to_string())?;
            if direct.is_polynomial() != composed {
                return Err(format!("routes disagree on {h:?}"));
            }
            direct.verify(&h).map_err(|e| format!("{h:?}: {e}"))?;
            count += 1;
        }
    }
    let w = Digraph::from_arcs(2, [(0, 1), (1, 0), (1, 1)]).expect("in range");
    if classify_wpl(&w).map_err(|e| e.to_string())?.is_polynomial() {
        return Err("symmetric pair with one loop misclassified".into());
    }
    if classify_wpl(&Digraph::directed_cycle(3)).map_err(|e| e.to_string())?
        != (Classification::PolynomialCycle { k: 3 })
    {
        return Err("loopless 3-cycle misclassified".into());
    }
    Ok(format!("{count} digraphs"))
}

fn dichotomy_sampled() -> Result<String, String> {
    for seed in 0..60u64 {
        let n = 4 + (seed as usize) % 2;
        let h = random_semicomplete_wpl(seed, n, 0.35, 0.4);
        let direct = classify_wpl(&h).map_err(|e| e.to_string())?;
        let composed = classify_via_composition(&h).map_err(|e| e.to_string())?;
        if direct.is_polynomial() != composed {
            return Err(format!("routes disagree on seed {seed}"));
        }
        direct.verify(&h).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    Ok("60 samples".into())
}

fn solver_oracle() -> Result<String, String> {
    let mut targets = Vec::new();
    for n in 1..=3 {
        for h in all_semicomplete_wpl(n) {
            if let Classification::PolynomialMinMax { ordering } =
                classify_wpl(&h).map_err(|e| e.to_string())?
            {
                targets.push((h, ordering));
            }
            if targets.len() >= 25 {
                break;
            }
        }
    }
    let mut comparisons = 0usize;
    for (ti, (h, ord)) in targets.iter().enumerate() {
        for inst in 0..8u64 {
            let seed = ti as u64 * 100 + inst;
            let nd = 1 + (seed as usize) % 5;
            let d = random_digraph(seed ^ 0x51, nd, 0.5, 0.2);
            let costs = random_costs(seed ^ 0x52, nd, h.n(), 9, 0.05);
            let fast = solve_minmax(h, ord, &d, &costs).map_err(|e| e.to_string())?;
            let slow =
                solve_bruteforce(h, &d, &costs, ORACLE_BUDGET).map_err(|e| e.to_string())?;
            match (&fast, &slow) {
                (Some(a), Some(b)) if a.cost == b.cost => {}
                (None, None) => {}
                _ => return Err(format!("disagreement on target {ti} instance {inst}")),
            }
            comparisons += 1;
        }
    }
    Ok(format!("{comparisons} comparisons"))
}

fn cycle_oracle() -> Result<String, String> {
    for k in [2usize, 3] {
        let ck = Digraph::directed_cycle(k);
        for seed in 0..60u64 {
            let nd = 1 + (seed as usize) % 6;
            let d = random_digraph(seed.wrapping_mul(31 + k as u64), nd, 0.4, 0.1);
            let costs = random_costs(seed ^ 0x53, nd, k, 9, 0.05);
            let fast = solve_cycle(k, &d, &costs).map_err(|e| e.to_string())?;
            let slow =
                solve_bruteforce(&ck, &d, &costs, ORACLE_BUDGET).map_err(|e| e.to_string())?;
            match (&fast, &slow) {
                (Some(a), Some(b)) if a.cost == b.cost => {}
                (None, None) => {}
                _ => return Err(format!("disagreement at k {k} seed {seed}")),
            }
        }
    }
    Ok("120 comparisons".into())
}

fn reductions() -> Result<String, String> {
    let mut count = 0usize;
    for n in 1..=3 {
        for g in all_simple_graphs(n) {
            let (alpha, _) = mis_bruteforce(&g).map_err(|e| e.to_string())?;
            for loop_at_first in [false, true] {
                let inst = reduce_mis_rprime(&g, loop_at_first).map_err(|e| e.to_string())?;
                let opt = solve_bruteforce(&inst.h, &inst.d, &inst.costs, ORACLE_BUDGET)
                    .map_err(|e| e.to_string())?
                    .ok_or("reduction instance infeasible")?;
                if opt.cost != 4 * g.n() as u64 - alpha as u64 {
                    return Err(format!("two-layer cost identity failed on n={n}"));
                }
                let set = extract_independent_set(&inst, &opt);
                if !is_independent(&g, &set) || set.len() != alpha {
                    return Err(format!("extraction failed on n={n}"));
                }
            }
            count += 2;
        }
    }
    let k2 = Graph::from_edges(2, [(0, 1)]).expect("in range");
    let inst = reduce_mis_gadget(&k2).map_err(|e| e.to_string())?;
    let opt = solve_bruteforce(&inst.h, &inst.d, &inst.costs, ORACLE_BUDGET)
        .map_err(|e| e.to_string())?
        .ok_or("gadget instance infeasible")?;
    if opt.cost != 1 {
        return Err(format!("gadget cost identity failed: {}", opt.cost));
    }
    Ok(format!("{count} two-layer instances, 1 gadget instance"))
}

fn recognition() -> Result<String, String> {
    let mut checked = 0usize;
    let mut check = |g: &Graph, label: String| -> Result<(), String> {
        let mut reflexive = g.clone();
        reflexive.make_reflexive();
        let outcome = umbrella_ordering(&reflexive).map_err(|e| e.to_string())?;
        let witness = find_pig_witness(&reflexive);
        match (&outcome, &witness) {
            (UmbrellaOutcome::Ordering(ord), None) => {
                if check_umbrella(&reflexive, ord).is_some() {
                    return Err(format!("{label}: ordering fails its own check"));
                }
            }
            (UmbrellaOutcome::Witness(w), Some(_)) => {
                w.verify(&reflexive).map_err(|e| format!("{label}: {e}"))?;
            }
            _ => return Err(format!("{label}: recognition routes disagree")),
        }
        checked += 1;
        Ok(())
    };
    for n in 1..=4 {
        for g in all_simple_graphs(n) {
            check(&g, format!("exhaustive n={n}"))?;
        }
    }
    for seed in 0..100u64 {
        let g = random_graph(seed ^ 0x54, 6, 0.45);
        check(&g, format!("sampled seed={seed}"))?;
    }
    Ok(format!("{checked} reflexive graphs"))
}
