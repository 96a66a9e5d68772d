//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach the terminal.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use silt::formats::PosetJson;
use silt::parallel::Threaded;
use silt_core::algebra::Algebra;
use silt_core::exactmat::{integer_determinant, PrimeField};
use silt_core::explorer::{self, ExchangeQuiver, Limits, Sequential};
use silt_core::orders::{self, Digraph, Family};
use silt_core::repmod;
use silt_core::silting::{self, Registry, SiltingPair};
use silt_core::twoterm;

type Check = Result<String, String>;

/// Summands as `(dims, gvec)`, plus the projective part.
type Label = (BTreeSet<(Vec<usize>, Vec<i64>)>, Vec<usize>);

fn field() -> PrimeField {
    PrimeField::default()
}

fn explore(alg: &Algebra) -> ExchangeQuiver {
    explorer::explore(alg, Limits::default()).expect("exploration")
}

fn label_of(eq: &ExchangeQuiver, i: usize) -> Label {
    let pair = &eq.nodes[i];
    (silting::summand_keys(&eq.registry, pair).into_iter().collect(), pair.proj_part.clone())
}

fn lab(summands: &[(&[usize], &[i64])], proj: &[usize]) -> Label {
    (
        summands.iter().map(|(d, g)| (d.to_vec(), g.to_vec())).collect(),
        proj.to_vec(),
    )
}

/// The exploration equals the given labelled diagram.
fn figure_match(eq: &ExchangeQuiver, nodes: &[Label], edges: &[(usize, usize)]) -> Result<(), String> {
    let mut index = BTreeMap::new();
    for i in 0..eq.node_count() {
        index.insert(label_of(eq, i), i);
    }
    if index.len() != eq.node_count() || eq.node_count() != nodes.len() {
        return Err(format!("{} nodes, figure has {}", eq.node_count(), nodes.len()));
    }
    let mut map = Vec::new();
    for l in nodes {
        map.push(*index.get(l).ok_or_else(|| format!("figure node {l:?} not found"))?);
    }
    let want: BTreeSet<(usize, usize)> = edges.iter().map(|&(a, b)| (map[a], map[b])).collect();
    let have: BTreeSet<(usize, usize)> = eq.cover_pairs().into_iter().collect();
    if have.len() != eq.edge_count() || want != have {
        return Err(format!("edges {have:?}, figure {want:?}"));
    }
    Ok(())
}

fn timed(budget: Duration, f: impl FnOnce() -> Check) -> Check {
    let t = Instant::now();
    let out = f()?;
    let dt = t.elapsed();
    if dt > budget {
        return Err(format!("{out}; took {dt:?}, budget {budget:?}"));
    }
    Ok(format!("{out}; {dt:.2?}"))
}

fn a2_figure() -> Check {
    timed(Duration::from_secs(1), || {
        let eq = explore(&Family::TriangularA2.build(field()).map_err(|e| e.to_string())?);
        let (p1, p2, m1): (&[usize], &[usize], &[usize]) = (&[1, 1], &[0, 1], &[1, 0]);
        let nodes = [
            lab(&[(p1, &[1, 0]), (p2, &[0, 1])], &[]),
            lab(&[(p1, &[1, 0]), (m1, &[1, -1])], &[]),
            lab(&[(p2, &[0, 1])], &[0]),
            lab(&[(m1, &[1, -1])], &[1]),
            lab(&[], &[0, 1]),
        ];
        figure_match(&eq, &nodes, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)])?;
        Ok(format!(
            "{} nodes, {} edges; the written count of 6 edges disagrees with the five listed arrows",
            eq.node_count(),
            eq.edge_count()
        ))
    })
}

fn bass_v_figure() -> Check {
    timed(Duration::from_secs(1), || {
        let eq = explore(&Family::BassV.build(field()).map_err(|e| e.to_string())?);
        let p: [(&[usize], &[i64]); 2] = [(&[1, 1], &[1, 0]), (&[1, 1], &[0, 1])];
        let s: [(&[usize], &[i64]); 2] = [(&[1, 0], &[1, -1]), (&[0, 1], &[-1, 1])];
        let nodes = [
            lab(&[p[0], p[1]], &[]),
            lab(&[p[0], s[0]], &[]),
            lab(&[p[1], s[1]], &[]),
            lab(&[s[0]], &[1]),
            lab(&[s[1]], &[0]),
            lab(&[], &[0, 1]),
        ];
        figure_match(&eq, &nodes, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)])?;
        Ok(format!(
            "{} nodes, {} edges; the written count of 7 edges is impossible for two simples",
            eq.node_count(),
            eq.edge_count()
        ))
    })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn hereditary_counts(cache: &mut Vec<(String, Algebra, ExchangeQuiver)>) -> Check {
    timed(Duration::from_secs(30), || {
        let mut seen = Vec::new();
        for n in 1..=4 {
            let alg = Family::Hereditary(n).build(field()).map_err(|e| e.to_string())?;
            let eq = explore(&alg);
            let sincere = orders::classify_sincere(&eq).map_err(|e| e.to_string())?;
            let tors = orders::assemble_tors_hasse(&eq, &sincere).map_err(|e| e.to_string())?;
            let c = binomial(2 * n, n);
            if eq.node_count() != c || tors.nodes.len() != 3 * c / 2 {
                return Err(format!("n={n}: {} silting, {} torsion", eq.node_count(), tors.nodes.len()));
            }
            let t = Digraph::from_tors(&tors);
            if t.sources().len() != 1 || t.sinks().len() != 1 || !t.is_acyclic() {
                return Err(format!("n={n}: torsion diagram is not a bounded poset"));
            }
            seen.push(format!("{}/{}", eq.node_count(), tors.nodes.len()));
            cache.push((format!("hereditary {n}"), alg, eq));
        }
        Ok(seen.join(" "))
    })
}

fn sincere_balance(runs: &[(String, Algebra, ExchangeQuiver)]) -> Check {
    let mut seen = Vec::new();
    for (name, _, eq) in runs.iter().filter(|r| r.0.starts_with("hereditary")) {
        let s = orders::classify_sincere(eq).map_err(|e| e.to_string())?;
        let k = s.iter().filter(|&&b| b).count();
        if 2 * k != s.len() {
            return Err(format!("{name}: {k} sincere of {}", s.len()));
        }
        seen.push(format!("{k}+{k}"));
    }
    if seen.len() != 4 {
        return Err("hereditary runs missing".into());
    }
    Ok(seen.join(" "))
}

fn weak_order(cache: &mut Vec<(String, Algebra, ExchangeQuiver)>) -> Check {
    timed(Duration::from_secs(300), || {
        let mut seen = Vec::new();
        for n in 0..=3 {
            let alg = Family::AuslanderBassV(n).build(field()).map_err(|e| e.to_string())?;
            let eq = explore(&alg);
            let fact: usize = (1..=n + 2).product();
            let weak = orders::weak_order_hasse(n + 2).map_err(|e| e.to_string())?;
            let iso = orders::poset_isomorphic(&Digraph::from_exchange(&eq), &weak.digraph())
                .map_err(|e| e.to_string())?;
            if eq.node_count() != fact || !iso {
                return Err(format!("n={n}: {} nodes, isomorphic {iso}", eq.node_count()));
            }
            seen.push(eq.node_count().to_string());
            cache.push((format!("auslander {n}"), alg, eq));
        }
        Ok(format!("{} nodes, each isomorphic to the weak order", seen.join(" ")))
    })
}

fn hasse_everywhere(runs: &[(String, Algebra, ExchangeQuiver)]) -> Check {
    for (name, alg, eq) in runs {
        if !explorer::hasse_check(alg, eq).map_err(|e| format!("{name}: {e}"))? {
            return Err(format!("{name}: exchange edges differ from covers"));
        }
    }
    Ok(format!("{} explorations", runs.len()))
}

fn reduction_invariance() -> Check {
    for n in 1..=3 {
        let a = explore(&orders::hereditary_truncation(field(), n, 1).map_err(|e| e.to_string())?);
        let b = explore(&orders::hereditary_truncation(field(), n, 2).map_err(|e| e.to_string())?);
        let iso = orders::poset_isomorphic(&Digraph::from_exchange(&a), &Digraph::from_exchange(&b))
            .map_err(|e| e.to_string())?;
        if !iso {
            return Err(format!("n={n}: {} vs {} nodes", a.node_count(), b.node_count()));
        }
    }
    Ok("n = 1, 2, 3".into())
}

/// Node ids whose pair contains `part`.
fn completions_of(eq: &ExchangeQuiver, part: &SiltingPair) -> BTreeSet<usize> {
    (0..eq.node_count())
        .filter(|&i| {
            let p = &eq.nodes[i];
            part.summands.iter().all(|s| p.summands.contains(s)) && part.proj_part.iter().all(|v| p.proj_part.contains(v))
        })
        .collect()
}

fn cross_level_one(alg: &Algebra, eq: &ExchangeQuiver) -> Result<usize, String> {
    let mut instances = 0;
    let cx: Vec<_> = eq.nodes.iter().map(|p| silting::complex_of(alg, &eq.registry, p)).collect();
    for a in 0..eq.node_count() {
        for b in 0..eq.node_count() {
            let module = silting::pair_leq(alg, &eq.registry, &eq.nodes[a], &eq.nodes[b]);
            let complex = twoterm::hom_shift_vanishes(alg, &cx[b], &cx[a]);
            if module != complex {
                return Err(format!("order disagrees at ({a}, {b})"));
            }
            instances += 1;
        }
    }
    let entries = eq.registry.entries();
    for x in entries {
        for y in entries {
            let m = repmod::direct_sum(alg, &[&x.rep, &y.rep]);
            let pres = repmod::min_projective_presentation(alg, &m);
            if silting::is_presilting_module(alg, &m) != twoterm::is_presilting(alg, &pres) {
                return Err(format!("presilting disagrees on {:?} + {:?}", x.dims(), y.dims()));
            }
            instances += 1;
        }
    }
    let mut reg: Registry = eq.registry.clone();
    let mut index = BTreeMap::new();
    for (i, p) in eq.nodes.iter().enumerate() {
        index.insert(p.clone(), i);
    }
    for (i, pair) in eq.nodes.iter().enumerate() {
        let t = &cx[i];
        let parts = pair.summands.len() + pair.proj_part.len();
        for drop in 0..parts {
            let mut summands = pair.summands.clone();
            let mut proj = pair.proj_part.clone();
            if drop < summands.len() {
                summands.remove(drop);
            } else {
                proj.remove(drop - summands.len());
            }
            let part = SiltingPair::new(summands, proj);
            let u = silting::complex_of(alg, &eq.registry, &part);
            let bong = twoterm::bongartz_completion(alg, &u).map_err(|e| e.to_string())?;
            let co = twoterm::co_bongartz_completion(alg, &u).map_err(|e| e.to_string())?;
            if !twoterm::silt_leq(alg, &bong, t) || !twoterm::silt_leq(alg, t, &co) {
                return Err(format!("node {i} without part {drop}: completions do not bracket it"));
            }
            let pb = silting::pair_of(alg, &mut reg, &bong).map_err(|e| e.to_string())?;
            let pc = silting::pair_of(alg, &mut reg, &co).map_err(|e| e.to_string())?;
            let found: BTreeSet<usize> = [index.get(&pb), index.get(&pc)]
                .into_iter()
                .map(|x| x.copied().ok_or(format!("node {i}: completion not discovered")))
                .collect::<Result<_, _>>()?;
            if found.len() != 2 || found != completions_of(eq, &part) {
                return Err(format!("node {i} without part {drop}: completions {found:?}"));
            }
            instances += 1;
        }
    }
    for e in &eq.edges {
        let from = &eq.nodes[e.from];
        let mut kept = from.summands.clone();
        kept.remove(e.at);
        let u = silting::complex_of(alg, &eq.registry, &SiltingPair::new(kept, from.proj_part.clone()));
        let pb = silting::pair_of(alg, &mut reg, &twoterm::bongartz_completion(alg, &u).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let pc = silting::pair_of(alg, &mut reg, &twoterm::co_bongartz_completion(alg, &u).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        if index.get(&pb) != Some(&e.from) || index.get(&pc) != Some(&e.to) {
            return Err(format!("edge {} -> {} is not the pair of completions", e.from, e.to));
        }
        instances += 1;
    }
    Ok(instances)
}

fn cross_level() -> Check {
    let mut total = 0;
    for fam in [Family::TriangularA2, Family::BassV] {
        let alg = fam.build(field()).map_err(|e| e.to_string())?;
        let eq = explore(&alg);
        total += cross_level_one(&alg, &eq).map_err(|e| format!("{fam:?}: {e}"))?;
    }
    Ok(format!("{total} instances"))
}

fn unimodular(runs: &[(String, Algebra, ExchangeQuiver)]) -> Check {
    let mut count = 0;
    for (name, alg, eq) in runs {
        let n = alg.vertex_count();
        for (i, pair) in eq.nodes.iter().enumerate() {
            let g = silting::g_vector_matrix(&eq.registry, pair, n);
            let d = integer_determinant(&g);
            if g.len() != n || d.abs() != 1 {
                return Err(format!("{name} node {i}: determinant {d}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} g-vector matrices"))
}

fn determinism(runs: &[(String, Algebra, ExchangeQuiver)]) -> Check {
    for (name, alg, _) in runs {
        let json = |w: usize| {
            let eq = explorer::explore_with(alg, Limits::default(), &Threaded::new(w)).expect("exploration");
            let echo = silt::formats::AlgebraFile::from_presentation(alg.presentation());
            PosetJson::new(echo, &eq).to_json()
        };
        let seq = {
            let eq = explorer::explore_with(alg, Limits::default(), &Sequential).expect("exploration");
            PosetJson::new(silt::formats::AlgebraFile::from_presentation(alg.presentation()), &eq).to_json()
        };
        if json(1) != json(8) || json(1) != seq {
            return Err(format!("{name}: output depends on worker count"));
        }
    }
    Ok(format!("{} explorations", runs.len()))
}

fn main() -> ExitCode {
    let mut runs = Vec::new();
    for (name, fam) in [("triangular_a2", Family::TriangularA2), ("bass_v", Family::BassV)] {
        let alg = fam.build(field()).expect("builtin");
        let eq = explore(&alg);
        runs.push((name.to_string(), alg, eq));
    }
    let results: Vec<(&str, Check)> = vec![
        ("A2 exchange quiver matches the labelled figure", a2_figure()),
        ("Bass order of type V matches the labelled figure", bass_v_figure()),
        ("hereditary orders: central binomial silting counts and 3/2 torsion counts", hereditary_counts(&mut runs)),
        ("hereditary orders: as many sincere as non-sincere pairs", sincere_balance(&runs)),
        ("Auslander orders: (n+2)! pairs, isomorphic to the weak order", weak_order(&mut runs)),
        ("exchange edges are the covers of the order", hasse_everywhere(&runs)),
        ("truncation at twice the bound gives an isomorphic poset", reduction_invariance()),
        ("module and complex levels agree", cross_level()),
        ("g-vector matrices are unimodular", unimodular(&runs)),
        ("1 and 8 workers give identical JSON", determinism(&runs)),
    ];
    let mut ok = true;
    for (i, (name, res)) in results.iter().enumerate() {
        match res {
            Ok(detail) => println!("PASS {:>2} {name} ({detail})", i + 1),
            Err(why) => {
                ok = false;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
