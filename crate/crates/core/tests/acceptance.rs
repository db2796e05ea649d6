//! Acceptance gate: one line per criterion, non-zero exit if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use hdalang::algebra::{
    coherent_closure, presentation_to_hda, suffix_presentation, transition_category,
    syntactic_category, Presentation,
};
use hdalang::corpus;
use hdalang::fo::{complement_p2n, p2n, p2n_family, prop31, FoLanguage};
use hdalang::hda::Hda;
use hdalang::ipomset::{
    downward_closure, parse_alphabet, Conclist, Ipomset, Label, PomsetEnumerator, PomsetSet,
    StKind, StLetter, Subset,
};
use hdalang::st::StAutomaton;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn universe(alphabet: &str, max_events: usize, max_dim: usize) -> PomsetEnumerator {
    PomsetEnumerator::new(&parse_alphabet(alphabet)).max_events(max_events).max_dim(max_dim).bound(64)
}

fn by_source(ps: Vec<Ipomset>) -> BTreeMap<Conclist, Vec<Ipomset>> {
    let mut out: BTreeMap<Conclist, Vec<Ipomset>> = BTreeMap::new();
    for p in ps {
        out.entry(p.source_conclist()).or_default().push(p);
    }
    out
}

fn c(s: &str) -> Conclist {
    Conclist::from_chars(s)
}

fn s(ix: &[usize]) -> Subset {
    Subset::from_indices(ix.iter().copied())
}

fn fig1() -> Outcome {
    let glued = corpus::fig1_left().glue(&corpus::fig1_right()).map_err(|e| e.to_string())?;
    let expected = corpus::fig1_result();
    ensure(glued.canonical_form() == expected.canonical_form(), format!("got {glued}, expected {expected}"))?;
    Ok(format!("{glued}"))
}

fn fig3() -> Outcome {
    let p = corpus::fig3_pomset();
    let w = p.st_decompose_sparse();
    let expected = vec![
        StLetter::starter(c("ab"), s(&[0, 1])),
        StLetter::terminator(c("ab"), s(&[0])),
        StLetter::starter(c("cb"), s(&[0])),
        StLetter::terminator(c("cb"), s(&[1])),
        StLetter::starter(c("ca"), s(&[1])),
        StLetter::terminator(c("ca"), s(&[0])),
    ];
    ensure(w.letters() == expected.as_slice(), format!("decomposition {w}"))?;
    ensure(w.glue().is_isomorphic(&p), "glue does not invert")?;
    Ok(format!("{w}"))
}

fn round_trip() -> Outcome {
    // each class is visited once through its sparse form w, so
    // decompose(glue(w)) = w for all w is the round trip for all P
    let seen = AtomicUsize::new(0);
    let bad = universe("ab", 6, 3)
        .find_violation(|w| {
            seen.fetch_add(1, Ordering::Relaxed);
            let back = w.glue().st_decompose_sparse();
            back == *w && back.is_sparse()
        })
        .map_err(|e| e.to_string())?;
    if let Some(w) = bad {
        return Err(format!("round trip fails on {w}"));
    }
    Ok(format!("{} pomsets", seen.into_inner()))
}

fn membership() -> Outcome {
    let x = corpus::fig2_hda();
    let mut by_paths = PomsetSet::new();
    let mut paths = 0usize;
    for &i in x.initial() {
        x.visit_paths(i, 10, &mut |path| {
            paths += 1;
            if x.accepting().contains(&path.end()) {
                by_paths.insert(x.ev_path(path).expect("visited paths are valid"));
            }
        });
    }
    // every pomset with ≤ 5 events has a sparse path of ≤ 10 steps
    let small: PomsetSet = by_paths.iter().filter(|p| p.len() <= 5).cloned().collect();
    ensure(by_paths.iter().all(|p| x.accepts(p)), "a path pomset is rejected")?;
    let accepted: PomsetSet = universe("abc", 5, 2)
        .source(Conclist::empty())
        .filter(|p| x.accepts(p))
        .map_err(|e| e.to_string())?
        .into_iter()
        .collect();
    ensure(accepted == small, format!("{} accepted vs {} from paths", accepted.len(), small.len()))?;
    ensure(x.accepts(&corpus::fig3_pomset()), "fig2 pomset rejected")?;
    Ok(format!("{paths} paths, {} accepted pomsets ≤ 5 events", accepted.len()))
}

fn fig5() -> Outcome {
    let m = corpus::fig5a_presentation();
    ensure(m.validate(4).is_valid(), "fig5a presentation fails the module laws")?;
    ensure(m.is_counter_free(), "fig5a presentation has a counter")?;
    let x = presentation_to_hda(&coherent_closure(&m).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(x.is_isomorphic(&corpus::fig5b_hda()), "HDA differs from fig5b")?;
    let w = x.counter_witness().ok_or("HDA is counter-free")?;
    ensure(w.witness.period == 2, format!("period {}", w.witness.period))?;
    let cycling: BTreeSet<&str> = w.cells.iter().map(|&c| x.name(c)).collect();
    // the red edges run between the two accepting vertices e20 and e22
    ensure(cycling == BTreeSet::from(["e20", "e22"]), format!("cycling cells {cycling:?}"))?;
    let red: BTreeSet<&str> = x
        .cells()
        .filter(|&e| x.conclist(e).len() == 1)
        .filter(|&e| w.cells.contains(&x.lower_face(e, s(&[0]))) && w.cells.contains(&x.upper_face(e, s(&[0]))))
        .map(|e| x.name(e))
        .collect();
    ensure(red == BTreeSet::from(["e21", "e31"]), format!("red edges {red:?}"))?;

    let sp = suffix_presentation(&x);
    // each accepting cell, wherever it occurs in a reachable set, lies in one class
    let mut merged = BTreeSet::new();
    for n in ["e20", "e22", "e40"] {
        let c = x.cell(n).unwrap();
        let classes: BTreeSet<_> = sp.classes().filter(|(_, set, _)| set.contains(&c)).map(|t| t.2).collect();
        ensure(classes.len() == 1, format!("{n} lies in {} classes", classes.len()))?;
        merged.extend(classes);
    }
    ensure(merged.len() == 1, "accepting cells not merged")?;
    let y = presentation_to_hda(&coherent_closure(&sp.presentation).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(y.is_counter_free(), "merged HDA has a counter")?;
    let (lx, ly) = (x.enumerate_language(6).unwrap(), y.enumerate_language(6).unwrap());
    ensure(lx == ly, "languages differ up to 6 events")?;
    Ok(format!("{} → {} cells, {} pomsets ≤ 6 events", x.len(), y.len(), lx.len()))
}

fn routes() -> Outcome {
    let mut out = Vec::new();
    for (name, x) in corpus::hdas() {
        let h = x.is_counter_free();
        let a = StAutomaton::from_hda(&x).is_counter_free();
        let t = transition_category(&x).category.is_aperiodic();
        ensure(h == a && a == t, format!("{name}: hda {h}, st {a}, category {t}"))?;
        out.push(format!("{name}={h}"));
    }
    Ok(out.join(" "))
}

fn prop31_anchor() -> Outcome {
    let syn = |x: &Hda| syntactic_category(&transition_category(x)).category.aperiodicity();
    ensure(syn(&corpus::word_a_star()).is_aperiodic(), "a* not aperiodic")?;
    let w = syn(&corpus::word_aa_star()).witness.ok_or("(aa)* aperiodic")?;
    ensure(w.period == 2, format!("period {}", w.period))?;
    let a = parse_alphabet("a");
    let models = FoLanguage::new(&a, 8, 2)
        .bound(8)
        .source(Conclist::empty())
        .models(&prop31())
        .map_err(|e| e.to_string())?;
    let mut words = PomsetSet::new();
    for p in &models {
        for q in downward_closure(p).iter() {
            if q.is_word() {
                words.insert(q.clone());
            }
        }
    }
    let even: PomsetSet = (0..=4).map(|n| Ipomset::word(&vec![Label::new("a"); 2 * n])).collect();
    ensure(words == even, format!("{} words in the closure", words.len()))?;
    Ok(format!("{} models, words a^0 … a^8 of even length", models.len()))
}

fn p2n_family_check() -> Outcome {
    let a = parse_alphabet("a");
    let lang = FoLanguage::new(&a, 10, 2).bound(10).source(Conclist::empty());
    let models: PomsetSet = lang.models(&p2n_family()).map_err(|e| e.to_string())?.into_iter().collect();
    let expected: PomsetSet = (0..=5).map(p2n).collect();
    ensure(models == expected, format!("{} models", models.len()))?;
    let rest: PomsetSet = lang.models(&complement_p2n()).map_err(|e| e.to_string())?.into_iter().collect();
    let all = PomsetEnumerator::new(&a).max_events(10).max_dim(2).bound(10).source(Conclist::empty());
    let total = all.filter(|p| p.target_events().is_empty()).map_err(|e| e.to_string())?.len();
    ensure(rest.len() + models.len() == total, format!("{} + {} ≠ {total}", rest.len(), models.len()))?;
    ensure(expected.iter().all(|p| !rest.contains(p)), "complement contains some P_2n")?;
    // with every source interface allowed, models still have empty interfaces
    let wide = FoLanguage::new(&a, 6, 2).models(&p2n_family()).map_err(|e| e.to_string())?;
    ensure(wide.len() == 4, format!("{} models over all sources", wide.len()))?;
    Ok(format!("P_0 … P_10 among {total} pomsets with empty interfaces"))
}

/// Every starter and terminator with source `u` and conclist width ≤ `max`.
fn letters_from(u: &Conclist, alphabet: &[Label], max: usize) -> Vec<StLetter> {
    let mut out = Vec::new();
    for a in u.full().subsets().filter(|a| !a.is_empty()) {
        out.push(StLetter::terminator(u.clone(), a));
    }
    for total in u.len() + 1..=max {
        for pos in Subset::full(total).subsets().filter(|p| p.len() == total - u.len()) {
            let mut fills = vec![Vec::new()];
            for _ in 0..pos.len() {
                fills = fills
                    .into_iter()
                    .flat_map(|f: Vec<Label>| {
                        alphabet.iter().map(move |l| {
                            let mut f = f.clone();
                            f.push(l.clone());
                            f
                        })
                    })
                    .collect();
            }
            for fill in fills {
                let (mut old, mut new) = (u.labels().iter(), fill.iter());
                let labels = (0..total)
                    .map(|i| if pos.contains(i) { new.next() } else { old.next() }.unwrap().clone())
                    .collect();
                out.push(StLetter::starter(Conclist::new(labels), pos));
            }
        }
    }
    out
}

fn act(m: &Presentation, e: Option<usize>, p: &Ipomset) -> Option<usize> {
    m.act_word(e, p.st_decompose_sparse().letters())
}

fn algebra_laws() -> Outcome {
    let mut checked = [0usize; 4];

    // functoriality of t, and t(P) against reach sets
    for x in [corpus::fig2_hda(), corpus::fig5b_hda()] {
        let t = transition_category(&x);
        let ps = universe("abc", 3, 2).collect().unwrap();
        let qs = by_source(universe("abc", 2, 2).collect().unwrap());
        for p in &ps {
            let Some(tp) = t.eval(p) else { continue };
            let src = t.object(&p.source_conclist()).unwrap();
            for (i, &cell) in t.cells(src).iter().enumerate() {
                let reach = x.reach_set(cell, p).unwrap();
                let tgt_cells = t.cells(t.object(&p.target_conclist()).unwrap());
                for (j, y) in tgt_cells.iter().enumerate() {
                    ensure(t.relation(tp).contains(i, j) == reach.contains(y), format!("t({p}) vs reach"))?;
                }
            }
            for q in qs.get(&p.target_conclist()).into_iter().flatten() {
                let Some(tq) = t.eval(q) else { continue };
                let pq = p.glue(q).unwrap();
                ensure(t.eval(&pq) == t.category.compose(tp, tq), format!("t({p} ∗ {q})"))?;
                checked[0] += 1;
            }
        }
    }

    // module identity and associativity
    let fig5b = corpus::fig5b_hda();
    let suffix = suffix_presentation(&fig5b);
    let ps = by_source(universe("ab", 3, 2).collect().unwrap());
    let qs = by_source(universe("ab", 2, 2).collect().unwrap());
    for m in [corpus::fig5a_presentation(), suffix.presentation.clone()] {
        ensure(m.validate(4).is_valid(), "module laws on words of ≤ 4 letters")?;
        for e in 0..m.len() {
            let u = m.tgt(e).clone();
            ensure(act(&m, Some(e), &Ipomset::identity(&u)) == Some(e), "identity")?;
            for p in ps.get(&u).into_iter().flatten() {
                let mp = act(&m, Some(e), p);
                for q in qs.get(&p.target_conclist()).into_iter().flatten() {
                    let pq = p.glue(q).unwrap();
                    ensure(act(&m, mp, q) == act(&m, Some(e), &pq), format!("({e}·{p})·{q}"))?;
                    checked[1] += 1;
                }
            }
        }
    }

    // exchange laws for removing target events
    let ab = parse_alphabet("ab");
    for p in universe("ab", 4, 3).collect().unwrap() {
        for l in letters_from(&p.target_conclist(), &ab, 3) {
            let u = l.conclist().clone();
            let b = l.subset();
            let pl = p.glue(&l.to_ipomset()).unwrap();
            let removable = match l.kind() {
                StKind::Starter => u.full(),
                _ => u.full().minus(b),
            };
            for a in removable.subsets() {
                let lhs = match l.kind() {
                    StKind::Starter => pl.remove_target_positions(a),
                    _ => pl.remove_target_positions(a.compress(u.full().minus(b))),
                }
                .unwrap();
                let rhs = match l.kind() {
                    StKind::Starter => {
                        let keep = u.full().minus(b);
                        let p2 = p.remove_target_positions(a.minus(b).compress(keep)).unwrap();
                        let rest = u.full().minus(a);
                        p2.glue(&StLetter::starter(u.remove(a), b.minus(a).compress(rest)).to_ipomset())
                    }
                    _ => {
                        let p2 = p.remove_target_positions(a).unwrap();
                        let rest = u.full().minus(a);
                        p2.glue(&StLetter::terminator(u.remove(a), b.compress(rest)).to_ipomset())
                    }
                }
                .unwrap();
                ensure(lhs.is_isomorphic(&rhs), format!("({p} ∗ {l}) − {a:?}"))?;
                checked[2] += 1;
            }
        }
    }

    // P\L · Q = (P ∗ Q)\L, plus the typing, initial and accepting clauses
    let x = &fig5b;
    let m = &suffix.presentation;
    let empty = Conclist::empty();
    let start = x.start_set(&empty);
    let phi = |p: &Ipomset| suffix.element_of(&empty, &x.run(start.clone(), p.st_decompose_sparse().letters()));
    ensure(phi(&Ipomset::empty()) == m.initial(&empty), "initial clause")?;
    let qs = by_source(universe("ab", 3, 2).collect().unwrap());
    for p in universe("ab", 4, 2).source(empty.clone()).collect().unwrap() {
        let e = phi(&p);
        ensure(m.is_accepting(e) == x.accepts(&p), format!("accepting clause on {p}"))?;
        if let Some(e) = e {
            ensure(m.src(e).is_empty() && *m.tgt(e) == p.target_conclist(), format!("typing on {p}"))?;
        }
        for q in qs.get(&p.target_conclist()).into_iter().flatten() {
            let pq = p.glue(q).unwrap();
            ensure(m.act_word(e, q.st_decompose_sparse().letters()) == phi(&pq), format!("{p} \\ L · {q}"))?;
            checked[3] += 1;
        }
    }
    Ok(format!(
        "functor {} pairs, module {} triples, exchange {} cases, suffix clause {} pairs",
        checked[0], checked[1], checked[2], checked[3]
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("fig1 gluing", fig1),
        ("fig3 sparse decomposition", fig3),
        ("round trip ≤ 6 events, dim ≤ 3, {a,b}", round_trip),
        ("membership soundness on fig2", membership),
        ("fig5 counterexample end to end", fig5),
        ("three counter-freeness routes agree", routes),
        ("aperiodicity of a* and (aa)*, [a∥a]* closure", prop31_anchor),
        ("P_2n family and its complement", p2n_family_check),
        ("algebra laws", algebra_laws),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
