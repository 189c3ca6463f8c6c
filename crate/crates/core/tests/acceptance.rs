//! Acceptance criteria, one line each. Run with
//! `cargo test -p kalmanson-core --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use kalmanson::{
    best_fit_pc_tree, CircularOrdering, DissimilarityMap, IndexedFamily, LinearOrdering, PcKind, Rational, Rooting,
    SetFamily, Split, SplitSystem, Subset, TaxonSet, WeightedSplitSystem,
};
use kalmanson_oracle::{
    all_pc_shapes, all_pq_shapes, brute_maximally_linked, definitional_alpha, definitional_beta, gen_kalmanson,
    gen_robinsonian, gen_tree_metric, gen_wcss, kalmanson_rings, minimal_rooted_closure_bruteforce,
    minimal_split_closure_bruteforce,
};

type Outcome = Result<String, String>;

/// Every pyramid built by τ anywhere in the run, for the predecessor bound.
#[derive(Default)]
struct PyramidLog {
    pyramids: usize,
    most_predecessors: usize,
    offender: Option<String>,
}

impl PyramidLog {
    fn record(&mut self, f: &IndexedFamily, ord: &LinearOrdering) {
        let fam = f.family();
        if fam.is_pyramid(ord).is_err() {
            return;
        }
        self.pyramids += 1;
        for (member, preds) in fam.predecessors() {
            if preds.len() > self.most_predecessors {
                self.most_predecessors = preds.len();
            }
            if preds.len() > 2 && self.offender.is_none() {
                self.offender = Some(format!("{} has {} predecessors", fam.format_member(member), preds.len()));
            }
        }
    }
}

fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Sizes cycle through `lo..=hi` with the seed.
fn size(seed: u64, lo: usize, hi: usize) -> usize {
    lo + (seed as usize) % (hi - lo + 1)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gromov_and_pyramid(
    d: &DissimilarityMap,
    base: usize,
    ring: &CircularOrdering,
    log: &mut PyramidLog,
) -> Result<(Rooting, IndexedFamily), String> {
    let rooting = Rooting::new(d.taxa(), base).map_err(|e| e.to_string())?;
    let r = d.gromov_product(&rooting).map_err(|e| e.to_string())?;
    let ord = rooting.cut(ring).map_err(|e| e.to_string())?;
    let pyramid = r.maximally_linked_sets(&ord).map_err(|e| e.to_string())?;
    log.record(&pyramid, &ord);
    Ok((rooting, pyramid))
}

fn criterion_1() -> Outcome {
    for seed in 0..200 {
        let n = size(seed, 4, 8);
        let (w, ring) = gen_wcss(seed, n).map_err(|e| e.to_string())?;
        let xi = w.evaluate().kalmanson_decompose(&ring).map_err(|e| format!("seed {seed}: {e}"))?;
        for s in SplitSystem::circular_splits_of(w.taxa().clone(), &ring).unwrap().iter() {
            let (a, b) = (w.weight(s).unwrap_or(int(0)), xi.weight(s).unwrap_or(int(0)));
            ensure(a == b, || format!("seed {seed}: split {} weight {a} recovered as {b}", s.format(w.taxa())))?;
        }
    }
    Ok("200 systems, n in 4..=8, every weight exact".into())
}

fn criterion_2() -> Outcome {
    for seed in 0..200 {
        let n = size(seed, 3, 8);
        let (d, _) = gen_kalmanson(seed, n).map_err(|e| e.to_string())?;
        let rooting = Rooting::new(d.taxa(), seed as usize % n).unwrap();
        let r = d.gromov_product(&rooting).unwrap();
        let back = r.inverse_gromov(&rooting).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(back == d, || format!("seed {seed}: psi(phi(D)) != D"))?;
        let again = back.gromov_product(&rooting).unwrap();
        ensure(again == r, || format!("seed {seed}: phi(psi(R)) != R"))?;
    }
    Ok("200 maps, n in 3..=8, both compositions exact".into())
}

fn criterion_3(log: &mut PyramidLog) -> Outcome {
    let mut strong = 0;
    for seed in 0..200 {
        let n = size(seed, 2, 8);
        let (r, ord, source) = gen_robinsonian(seed, n).map_err(|e| e.to_string())?;
        let tau = r.maximally_linked_sets(&ord).map_err(|e| format!("seed {seed}: {e}"))?;
        log.record(&tau, &ord);
        ensure(tau == source, || format!("seed {seed}: tau(mu(F)) != F"))?;
        ensure(tau.to_matrix().unwrap() == r, || format!("seed {seed}: mu(tau(R)) != R"))?;
        let brute = brute_maximally_linked(&r).unwrap();
        ensure(brute == tau, || format!("seed {seed}: subset oracle disagrees with tau"))?;
        let is_strong = r.is_strong_robinsonian(&ord).is_ok();
        let is_pyramid = brute.family().is_pyramid(&ord).is_ok();
        ensure(is_strong == is_pyramid, || {
            format!("seed {seed}: strong = {is_strong} but pyramid = {is_pyramid}")
        })?;
        strong += usize::from(is_strong);
    }
    Ok(format!("200 matrices, n in 2..=8, {strong} strong, all round trips exact"))
}

fn criterion_4(log: &mut PyramidLog) -> Outcome {
    for seed in 0..200 {
        let n = size(seed, 3, 8);
        let (d, ring) = gen_kalmanson(seed, n).map_err(|e| e.to_string())?;
        let (rooting, pyramid) = gromov_and_pyramid(&d, ring.last().unwrap(), &ring, log)?;
        let eta = pyramid.to_weighted_splits(&rooting).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(eta.evaluate() == d, || format!("seed {seed}: nu(eta(tau(phi(D)))) != D"))?;
    }
    Ok("200 maps, n in 3..=8, exact".into())
}

fn criterion_5(log: &mut PyramidLog) -> Outcome {
    for seed in 0..200 {
        let n = size(seed, 3, 8);
        let (d, ring) = gen_kalmanson(seed, n).map_err(|e| e.to_string())?;
        let (rooting, pyramid) = gromov_and_pyramid(&d, ring.last().unwrap(), &ring, log)?;
        let left = pyramid.family().rooted_closure().to_split_system(&rooting).unwrap();
        let right = d.kalmanson_decompose(&ring).unwrap().system().closure();
        ensure(left == right, || format!("seed {seed}: split sets differ"))?;
    }
    Ok("200 maps, n in 3..=8, equal split sets".into())
}

fn criterion_6(log: &mut PyramidLog) -> Outcome {
    let start = Instant::now();
    for seed in 0..100 {
        let n = size(seed, 3, 10);
        let source = gen_tree_metric(seed, n).map_err(|e| e.to_string())?;
        let report = best_fit_pc_tree(&source.map, None, None).map_err(|e| format!("seed {seed}: {e}"))?;
        gromov_and_pyramid(&source.map, report.base, &report.ring, log)?;
        ensure(report.all_passed(), || format!("seed {seed}: a diagram check failed"))?;
        ensure(report.tree.count_kind(PcKind::C) == 0, || format!("seed {seed}: C-vertex present"))?;
        ensure(report.closure_additions.is_empty(), || format!("seed {seed}: closure added splits"))?;
        ensure(report.tree.canonical_form() == source.tree.canonical_form(), || {
            format!("seed {seed}: {} vs source {}", report.tree, source.tree)
        })?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.2} s, budget 10 s"))?;
    Ok(format!("100 trees, n in 3..=10, all recovered in {secs:.2} s"))
}

fn criterion_7(log: &mut PyramidLog) -> Outcome {
    let quartet = DissimilarityMap::from_fn(TaxonSet::numbered(4), |i, j| {
        let rows = [[0, 2, 3, 3], [2, 0, 3, 3], [3, 3, 0, 2], [3, 3, 2, 0]];
        int(rows[i][j])
    })
    .unwrap();
    let report = best_fit_pc_tree(&quartet, None, None).map_err(|e| e.to_string())?;
    gromov_and_pyramid(&quartet, report.base, &report.ring, log)?;
    ensure(report.all_passed(), || "DQ: a diagram check failed".into())?;
    ensure(report.tree.canonical_form() == "((3,4)P,1,2)P!;", || format!("DQ tree {}", report.tree))?;
    ensure(report.closure_additions.is_empty(), || "DQ: closure added splits".into())?;
    let weights: Vec<Rational> = report.decomposition.iter().map(|(_, w)| w).collect();
    ensure(weights.len() == 5 && weights.iter().all(|w| *w == int(1)), || format!("DQ weights {weights:?}"))?;

    let taxa = TaxonSet::numbered(5);
    let block = |items: &[usize]| Split::new(items.iter().copied().collect::<Subset>(), 5).unwrap();
    let mut e5: Vec<(Split, Rational)> = (0..5).map(|i| (Split::trivial(i, 5).unwrap(), int(1))).collect();
    e5.push((block(&[0, 1]), int(1)));
    e5.push((block(&[1, 2]), int(1)));
    let d = WeightedSplitSystem::new(taxa.clone(), e5).unwrap().evaluate();
    let ring = CircularOrdering::new(vec![0, 1, 2, 3, 4]).unwrap();
    let report = best_fit_pc_tree(&d, None, Some(&ring)).map_err(|e| e.to_string())?;
    gromov_and_pyramid(&d, report.base, &report.ring, log)?;
    ensure(report.all_passed(), || "E5: a diagram check failed".into())?;
    ensure(report.closure_additions == vec![block(&[0, 1, 2])], || {
        format!("E5 closure additions {:?}", report.closure_additions)
    })?;
    let tree = &report.tree;
    let c: Vec<usize> = tree.internal_vertices().filter(|&v| tree.kind(v) == Some(PcKind::C)).collect();
    ensure(c.len() == 1 && tree.neighbors(c[0]).len() == 4, || format!("E5 tree {tree}"))?;
    Ok(format!("DQ -> {}, E5 -> {} with zero split 1,2,3|4,5", "((3,4)P,1,2)P!;", tree))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let (mut pq, mut pc) = (0, 0);
    for n in 1..=6 {
        for t in all_pq_shapes(n).unwrap() {
            ensure(t.alpha() == definitional_alpha(&t).unwrap(), || format!("alpha differs on {t}"))?;
            pq += 1;
        }
    }
    for n in 2..=6 {
        for t in all_pc_shapes(n).unwrap() {
            ensure(t.beta() == definitional_beta(&t).unwrap(), || format!("beta differs on {t}"))?;
            pc += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.2} s, budget 60 s"))?;
    Ok(format!("{pq} PQ-trees and {pc} PC-trees with at most 6 leaves agree in {secs:.2} s"))
}

fn criterion_9(log: &mut PyramidLog) -> Outcome {
    let mut found = 0;
    let mut seed = 0;
    let mut most = 0;
    while found < 50 {
        let n = size(seed, 5, 7);
        let (d, _) = gen_kalmanson(seed, n).map_err(|e| e.to_string())?;
        seed += 1;
        let rings = kalmanson_rings(&d).unwrap();
        if rings.len() < 2 {
            continue;
        }
        found += 1;
        most = most.max(rings.len());
        let reference = d.kalmanson_decompose(&rings[0]).unwrap().positive();
        for ring in &rings[1..] {
            let other = d.kalmanson_decompose(ring).unwrap().positive();
            ensure(other == reference, || {
                format!("seed {}: positive splits differ between rings {} and {}", seed - 1, rings[0].format(d.taxa()), ring.format(d.taxa()))
            })?;
            gromov_and_pyramid(&d, ring.last().unwrap(), ring, log)?;
        }
    }
    Ok(format!("50 maps with 2..={most} rings each, identical positive splits ({seed} seeds drawn)"))
}

fn criterion_10(log: &PyramidLog) -> Outcome {
    match &log.offender {
        Some(o) => Err(o.clone()),
        None if log.pyramids == 0 => Err("no pyramids were produced".into()),
        None => Ok(format!(
            "{} pyramids, at most {} predecessors per member",
            log.pyramids, log.most_predecessors
        )),
    }
}

fn criterion_11() -> Outcome {
    let taxa = TaxonSet::numbered(5);
    let rooting = Rooting::new(&taxa, 4).unwrap();
    let nontrivial: Vec<Split> = (0u128..16)
        .map(|b| Subset::from_bits((b << 1) | 1))
        .filter_map(|s| Split::new(s, 5).ok())
        .filter(|s| !s.is_trivial())
        .collect();
    let mut systems = 0;
    for k in 0..=3 {
        for pick in combinations(nontrivial.len(), k) {
            let s = SplitSystem::new(taxa.clone(), pick.iter().map(|&i| nontrivial[i])).unwrap();
            if s.find_circular_witness(8).unwrap().is_none() {
                continue;
            }
            systems += 1;
            let brute = minimal_split_closure_bruteforce(&s).unwrap();
            ensure(s.closure() == brute, || format!("iota differs from brute force on {s}"))?;
            let f: SetFamily = s.to_rooted_family(&rooting).unwrap();
            let brute = minimal_rooted_closure_bruteforce(&f).unwrap();
            ensure(f.rooted_closure() == brute, || format!("theta differs from brute force on {f}"))?;
        }
    }
    Ok(format!("{systems} circular systems on 5 taxa, split and rooted closures minimal"))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn main() -> ExitCode {
    let mut log = PyramidLog::default();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    results.push((1, "decomposition recovers weights", criterion_1()));
    results.push((2, "Gromov product inverse pair", criterion_2()));
    results.push((3, "maximally linked sets and matrix inverse pair", criterion_3(&mut log)));
    results.push((4, "split weights of the pyramid evaluate to the map", criterion_4(&mut log)));
    results.push((5, "rooted closure agrees with split closure", criterion_5(&mut log)));
    results.push((6, "tree metrics recover their trees", criterion_6(&mut log)));
    results.push((7, "worked examples", criterion_7(&mut log)));
    results.push((8, "structural and definitional interval maps agree", criterion_8()));
    results.push((9, "positive splits independent of the ring", criterion_9(&mut log)));
    results.push((10, "pyramid members have at most two predecessors", criterion_10(&log)));
    results.push((11, "closures are minimal", criterion_11()));
    let mut failed = 0;
    for (k, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {k:>2} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {k:>2} FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
