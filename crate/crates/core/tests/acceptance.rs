//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

mod common;

use std::time::Instant;

use common::*;
use num_traits::One;
use rand::Rng;
use rulealg::algebra::{dagger, superpose, superpose_power};
use rulealg::catalog::*;
use rulealg::graph::automorphism_count;
use rulealg::hopf::{antipode, coproduct, counit};
use rulealg::par;
use rulealg::verify::{self, Report, Table};
use rulealg::{compose_d, compose_r, reduce, Coeff, Element, RewritingType};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Outcome {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }

    fn from_reports(reports: &[Report]) -> Outcome {
        let total: usize = reports.iter().map(|r| r.checks.len()).sum();
        let bad: Vec<String> = reports
            .iter()
            .flat_map(|r| {
                r.failures()
                    .map(move |c| format!("{} / {}: expected {} computed {}", r.title, c.cell, c.expected, c.computed))
            })
            .collect();
        let detail = if bad.is_empty() {
            format!("{total} cells")
        } else {
            format!("{} of {total} cells differ; first: {}", bad.len(), bad[0])
        };
        Outcome::new(bad.is_empty(), detail)
    }

    fn and(self, other: Outcome) -> Outcome {
        Outcome::new(self.passed && other.passed, format!("{}; {}", self.detail, other.detail))
    }
}

/// Count of seeds for which `f` fails, with the first failing seed.
fn sweep(n: usize, base: u64, f: impl Fn(u64) -> Result<(), String> + Sync + Send) -> Outcome {
    let seeds: Vec<u64> = (0..n as u64).map(|i| base.wrapping_mul(1_000_003).wrapping_add(i)).collect();
    let results = par::map(&seeds, |&s| f(s).map_err(|e| format!("seed {s}: {e}")));
    let bad: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    match bad.first() {
        None => Outcome::new(true, format!("{n} samples")),
        Some(e) => Outcome::new(false, format!("{} of {n} samples fail; {e}", bad.len())),
    }
}

fn check(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn hw_normal_ordering() -> Outcome {
    let mut jobs = Vec::new();
    for i in 0..4096usize {
        let v: Vec<usize> = (0..6).map(|k| (i >> (2 * k)) & 3).collect();
        jobs.push(v);
    }
    let bad = par::map(&jobs, |v| {
        let got = compose_d(&hw_element(v[0], v[1], v[2]), &hw_element(v[3], v[4], v[5]));
        (got != hw_compose_closed_form(v[0], v[1], v[2], v[3], v[4], v[5])).then(|| v.clone())
    });
    let bad: Vec<_> = bad.into_iter().flatten().collect();
    Outcome::new(
        bad.is_empty(),
        format!(
            "{} cases, {} mismatches{}",
            jobs.len(),
            bad.len(),
            bad.first().map(|v| format!(", first {v:?}")).unwrap_or_default()
        ),
    )
}

fn hw_rule_algebra() -> Outcome {
    let reports: Vec<Report> = RewritingType::ALL.into_iter().map(|t| verify::verify_hw_rules(t, 3)).collect();
    Outcome::from_reports(&reports)
}

fn computed_cells(table: Table, t: RewritingType) -> Vec<Element> {
    let (rows, cols, _) = verify::expected_table(table, t);
    let mut out = Vec::new();
    for (_, x) in &rows {
        for (_, y) in &cols {
            out.push(&compose_r(x, y, t).unwrap() - &superpose(x, y));
        }
    }
    out
}

fn vertex_algebra() -> Outcome {
    let mut reports = Vec::new();
    for t in RewritingType::ALL {
        reports.push(verify::verify_table(Table::Vertex, t));
        reports.push(verify::verify_vertex_commutators(t));
    }
    let dpo = computed_cells(Table::Vertex, RewritingType::Dpo);
    let same = RewritingType::ALL.into_iter().all(|t| computed_cells(Table::Vertex, t) == dpo);
    Outcome::from_reports(&reports).and(Outcome::new(
        same,
        if same { "identical for all types" } else { "differs between types" },
    ))
}

fn loop_and_coupling() -> Outcome {
    let mut reports = Vec::new();
    for t in RewritingType::ALL {
        reports.push(verify::verify_table(Table::Loop, t));
        reports.push(verify::verify_table(Table::VertexLoop, t));
    }
    Outcome::from_reports(&reports)
}

fn edge_composition() -> Outcome {
    Outcome::from_reports(&[verify::verify_edge_composition()])
}

fn structural() -> Outcome {
    let graphs = structural_graphs();
    let small = graphs.iter().filter(|(_, g)| g.vertex_count() <= 5).count();
    let aut_ok = graphs.iter().all(|(_, g)| automorphism_count(g) == brute_automorphisms(g));
    let report = verify::verify_structural(&graphs);
    Outcome::new(small >= 10, format!("{small} connected catalog graphs"))
        .and(Outcome::new(
            aut_ok,
            if aut_ok {
                "|Aut| agrees with permutation oracle"
            } else {
                "|Aut| disagrees with permutation oracle"
            },
        ))
        .and(Outcome::from_reports(&[report]))
}

fn property_suite(n: usize) -> Outcome {
    sweep(n, 7, |seed| {
        let mut r = rng(seed);
        let x = Element::basis(&random_diagram(&mut r, 3));
        let y = Element::basis(&random_diagram(&mut r, 3));
        let z = Element::basis(&random_diagram(&mut r, 3));
        check(
            compose_d(&compose_d(&x, &y), &z) == compose_d(&x, &compose_d(&y, &z)),
            "*_D associativity",
        )?;
        let xy = compose_d(&x, &y);
        for t in RewritingType::ALL {
            check(
                reduce(&xy, t) == compose_r(&reduce(&x, t), &reduce(&y, t), t).unwrap(),
                "homomorphism",
            )?;
        }
        let (a, b, c) = (
            Element::basis(&random_rule_diagram(&mut r)),
            Element::basis(&random_rule_diagram(&mut r)),
            Element::basis(&random_rule_diagram(&mut r)),
        );
        for t in RewritingType::ALL {
            let left = compose_r(&compose_r(&a, &b, t).unwrap(), &c, t).unwrap();
            let right = compose_r(&a, &compose_r(&b, &c, t).unwrap(), t).unwrap();
            check(left == right, "*_T associativity")?;
        }
        check(dagger(&xy) == compose_d(&dagger(&y), &dagger(&x)), "dagger reverses products")?;
        check(dagger(&dagger(&x)) == x, "dagger is an involution")?;
        let (dx, dy) = (x.terms().next().unwrap().2.clone(), y.terms().next().unwrap().2.clone());
        let (rx, ry) = (random_relabel(&mut r, &dx), random_relabel(&mut r, &dy));
        check(
            library_composites(&dx, &dy) == library_composites(&rx, &ry),
            "representative independence",
        )?;
        Ok(())
    })
}

/// `Σ_k (-1)^k Σ_{ordered partitions (X_1..X_k)} d_{X_1} * … * d_{X_k}` over the components.
fn explicit_antipode(parts: &[Element]) -> Element {
    fn go(rest: &[usize], parts: &[Element], acc: Element, sign: &Coeff, out: &mut Element) {
        if rest.is_empty() {
            *out = &*out + &acc.scale(sign);
            return;
        }
        for mask in 1..(1u32 << rest.len()) {
            let block = rest
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(Element::unit(), |a, (_, &j)| superpose(&a, &parts[j]));
            let left: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 0)
                .map(|(_, &j)| j)
                .collect();
            go(&left, parts, compose_d(&acc, &block), &-sign.clone(), out);
        }
    }
    let mut out = Element::zero();
    let idx: Vec<usize> = (0..parts.len()).collect();
    go(&idx, parts, Element::unit(), &Coeff::one(), &mut out);
    out
}

fn hopf_suite(n: usize) -> Outcome {
    let laws = sweep(n, 11, |seed| {
        let mut r = rng(seed);
        let x = Element::basis(&random_diagram(&mut r, 3));
        let d = coproduct(&x);
        check(contract_counit(&d, 0) == x && contract_counit(&d, 1) == x, "counit laws")?;
        check(d.reversed() == d, "cocommutativity")?;
        check(d.map_factor(0, coproduct) == d.map_factor(1, coproduct), "coassociativity")?;
        let y = Element::basis(&random_diagram(&mut r, 2));
        if x.max_degree() + y.max_degree() <= 4 {
            check(
                coproduct(&compose_d(&x, &y)) == d.product(&coproduct(&y)),
                "bialgebra compatibility",
            )?;
        }
        if x.max_degree() <= 3 {
            let e = Element::unit().scale(&counit(&x));
            check(convolve(&x, antipode, |z| z.clone()) == e, "S ⋆ Id = ηε")?;
            check(convolve(&x, |z| z.clone(), antipode) == e, "Id ⋆ S = ηε")?;
        }
        let k = r.gen_range(1..=3);
        let ds: Vec<Element> = (0..k).map(|_| Element::basis(&random_diagram(&mut r, 2).components()[0])).collect();
        let fwd = ds.iter().fold(Element::unit(), |a, d| compose_d(&a, d));
        let bwd = ds.iter().rev().fold(Element::unit(), |a, d| compose_d(&a, d));
        let sign = if k % 2 == 0 { Coeff::one() } else { -Coeff::one() };
        check(antipode(&fwd) == bwd.scale(&sign), "antipode reversal")?;
        let m = r.gen_range(0..=3);
        let parts: Vec<Element> = (0..m).map(|_| Element::basis(&random_diagram(&mut r, 2).components()[0])).collect();
        let sup = parts.iter().fold(Element::unit(), |a, p| superpose(&a, p));
        let conv = convolution_antipode(&sup);
        check(conv == explicit_antipode(&parts), "convolution antipode vs explicit sum")?;
        if m == 3 {
            check(
                conv == degree3_antipode([&parts[0], &parts[1], &parts[2]]),
                "degree-3 shuffle formula",
            )?;
        }
        check(antipode(&sup) == conv, "recursive vs convolution antipode")?;
        Ok(())
    });
    let mut hw_ok = true;
    let mut printed_differs = 0;
    for r in 0..=2 {
        for s in 0..=2 {
            for t in 0..=2 {
                let d = hw_element(r, s, t);
                let s_d = antipode(&d);
                hw_ok &= s_d == hw_antipode_closed_form(r, s, t) && convolution_antipode(&d) == s_d;
                printed_differs += usize::from(s_d != hw_antipode_fixed_t(r, s, t));
            }
        }
    }
    println!("info: HW antipode with the d_e count held at t disagrees with the computed antipode in {printed_differs} of 27 cases (e.g. S(d(1,1,0)) = d(1,1,0) + d_e)");
    laws.and(Outcome::new(
        hw_ok,
        if hw_ok {
            "HW antipode closed form r,s,t≤2"
        } else {
            "HW antipode closed form differs"
        },
    ))
}

fn pbw_suite() -> Outcome {
    let round_trip = sweep(50, 13, |seed| {
        let mut r = rng(seed);
        let k = r.gen_range(1..=3);
        let x = (0..k).fold(Element::unit(), |a, _| {
            superpose(&a, &Element::basis(&random_diagram(&mut r, 2).components()[0]))
        });
        check(rulealg::hopf::pbw_normal_form(&x).evaluate() == x, "PBW round trip")
    });
    let mut stirling_ok = true;
    for n in 0..=5 {
        let coeffs = falling_factorial_coefficients(n);
        for t in RewritingType::ALL {
            let mut power = Element::unit();
            let mut rhs = Element::zero();
            for c in &coeffs {
                rhs = &rhs + &power.scale(&Coeff::from_integer(c.clone()));
                power = compose_r(&power, &vertex_identity(), t).unwrap();
            }
            stirling_ok &= superpose_power(&vertex_identity(), n) == rhs;
        }
    }
    round_trip.and(Outcome::new(
        stirling_ok,
        if stirling_ok {
            "I^⊎n falling factorials n≤5"
        } else {
            "I^⊎n expansion differs"
        },
    ))
}

fn no_counit() -> Outcome {
    let reports: Vec<Report> = RewritingType::ALL.into_iter().map(verify::demonstrate_no_counit).collect();
    for r in &reports {
        println!(
            "info: {}: {}",
            r.title,
            r.checks
                .iter()
                .map(|c| format!("{} = {}", c.cell, c.computed))
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    Outcome::from_reports(&reports)
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn main() {
    let n = samples(200);
    let criteria: Vec<Criterion> = vec![
        ("HW normal ordering, indices ≤3", Box::new(hw_normal_ordering)),
        ("HW rule algebra, all types, indices ≤3", Box::new(hw_rule_algebra)),
        ("vertex table and commutators, all types", Box::new(vertex_algebra)),
        ("loop and vertex-loop tables, all types", Box::new(loop_and_coupling)),
        ("edge composition e>⊛E> has 7 terms", Box::new(edge_composition)),
        ("structural DPO relations", Box::new(structural)),
        ("diagram and rule algebra properties", Box::new(move || property_suite(n))),
        ("Hopf laws and antipode", Box::new(move || hopf_suite(n))),
        ("PBW round trip and vertex falling factorials", Box::new(pbw_suite)),
        ("no consistent counit, all types", Box::new(no_counit)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let mark = if out.passed { "PASS" } else { "FAIL" };
        println!("{mark} {:>2}. {name} ({}; {:.1?})", i + 1, out.detail, start.elapsed());
        failed += usize::from(!out.passed);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
