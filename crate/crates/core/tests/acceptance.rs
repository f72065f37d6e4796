mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use trop_core::convexity::{
    hrep_to_vrep, is_member, member, orthant_hull, unsigned_member, unsigned_of, vrep_to_hrep,
    Membership, Unsigned,
};
use trop_core::elimination::{
    back_substitute, experimental_signed_leq_solutions, farkas, fm_step_nonstrict, fm_step_strict,
    in_nnker, nnker_solve, rows_from_matrix, AffineRow, Certificate,
};
use trop_core::hyperfield::{cancellative_sum, hconv_check};
use trop_core::linalg::xi;
use trop_core::puiseux::{lift_construct, lift_verify};
use trop_core::semiring::Sign;
use trop_core::{SymMatrix, SymNum};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn farkas_exclusivity() -> Check {
    let mats = all_matrices(2, 3, &small_grid());
    ensure(mats.len() == 15_625, || format!("{} matrices", mats.len()))?;
    for a in &mats {
        let cert = farkas(a).map_err(|e| format!("{a}: {e}"))?;
        ensure(cert.verify(a), || format!("unverified certificate for\n{a}"))?;
        let (sep, ker) = (brute_sep_2(a), brute_nnker(a));
        ensure(sep.is_some() != ker.is_some(), || format!("oracle found {sep:?} and {ker:?} for\n{a}"))?;
        ensure(cert.is_kernel() == ker.is_some(), || format!("kind disagrees with oracle for\n{a}"))?;
    }
    Ok(())
}

fn fm_worked_example() -> Check {
    let got = fm_step_strict(&m("3 ~1 ~4; 3 ~0 ~2"), 0);
    ensure(got == m("0 0") && got.to_string().trim_end() == "0 0", || format!("got {got}"))
}

fn nonstrict_worked_example() -> Check {
    let rows = rows_from_matrix(
        &m("_ ~0 1 ~0; _ 0 ~1 0; ~0 0 0 _; 0 ~0 ~0 _; _ 0 _ _; _ _ 0 _"),
        false,
    );
    let first = fm_step_nonstrict(&rows, 1).map_err(|e| e.to_string())?;
    ensure(first.len() == 7, || format!("{} rows after the first step", first.len()))?;
    let kept: Vec<AffineRow> = first.into_iter().filter(|r| !r.is_tautology()).collect();
    let last = fm_step_nonstrict(&kept, 1).map_err(|e| e.to_string())?;
    let target = rows_from_matrix(&m("-1 -1; 0 ~-1"), false);
    let hull = m("~0 1");
    for z in all_points(1, &signed_values(&half_steps(-3, 3))) {
        let ours = last.iter().all(|r| r.satisfied_by(&z));
        let theirs = target.iter().all(|r| r.satisfied_by(&z));
        let inside = is_member(&hull, &z).map_err(|e| e.to_string())?;
        ensure(ours == theirs && ours == inside, || format!("disagreement at {z:?}"))?;
    }
    Ok(())
}

fn tropical_lp_fixture() -> Check {
    let a = m("0 0; ~0 0; 0 ~0; ~0 ~0");
    let b = v("~0 ~0 ~0 ~0");
    let grid = signed_values(&half_steps(-3, 3));
    let found = experimental_signed_leq_solutions(&a, &b, &grid);
    ensure(found.is_empty(), || format!("unexpected solution {:?}", found[0]))?;
    let ext = m("0 0 ~0 ~0 0 _ _ _; ~0 0 0 ~0 _ 0 _ _; 0 ~0 ~0 0 _ _ 0 _; ~0 ~0 0 0 _ _ _ 0");
    let zeros = vec![SymNum::one(); 8];
    let prod = ext.mul_vec(&zeros).map_err(|e| e.to_string())?;
    ensure(prod.iter().zip(&b).all(|(p, bi)| p.balance(bi)), || format!("product {prod:?}"))?;
    let aug = ext
        .hconcat(&SymMatrix::column_vector(b.iter().map(SymNum::negate).collect()))
        .map_err(|e| e.to_string())?;
    ensure(in_nnker(&aug, &vec![SymNum::one(); 9]), || "all-zero witness rejected".into())?;
    let x = nnker_solve(&aug).ok_or("solver found no kernel")?;
    ensure(in_nnker(&aug, &x), || "solver kernel does not verify".into())
}

fn decide_sep(a: &SymMatrix) -> Result<Option<Vec<SymNum>>, String> {
    match farkas(a).map_err(|e| e.to_string())? {
        c if !c.verify(a) => Err(format!("unverified certificate for\n{a}")),
        Certificate::Separator(y) => Ok(Some(y)),
        Certificate::Kernel(_) => Ok(None),
    }
}

fn projection_soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let a = random_matrix(&mut rng, 3, 4, -3, 3, &ALL_SIGNS);
        let full = decide_sep(&a)?;
        let signed = xi(&a);
        for i in 0..3 {
            let p = fm_step_strict(&a, i);
            let proj = decide_sep(&p)?;
            ensure(full.is_some() == proj.is_some(), || format!("row {i} of\n{a}"))?;
            if let Some(rest) = proj {
                let yi = back_substitute(&signed, i, &rest).ok_or_else(|| format!("no extension, row {i} of\n{a}"))?;
                let mut y = rest.clone();
                y.insert(i, yi);
                ensure(a.vec_mul(&y).unwrap().iter().all(SymNum::is_pos), || format!("bad extension {y:?}"))?;
            }
        }
    }
    Ok(())
}

fn corner_choices(p: &SymNum) -> Vec<SymNum> {
    match p {
        SymNum::Bal(m) => {
            let mut out = vec![SymNum::Pos(m.clone()), SymNum::Neg(m.clone()), SymNum::Zero];
            let below = m - num_rational::BigRational::from_integer(1.into());
            out.push(SymNum::Pos(below.clone()));
            out.push(SymNum::Neg(below));
            out
        }
        other => vec![other.clone()],
    }
}

fn lift_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let weights = v("_ 0 -1 -2");
    let bal_pair = v("0 ~0");
    let mut tampered = 0;
    let mut cases = 0;
    while cases < 100 {
        let mut a = random_matrix(&mut rng, 2, 3, -2, 2, &SIGNED);
        if cases % 2 == 0 {
            a.set(0, 1, bal_pair[1].clone());
            a.set(0, 0, bal_pair[0].clone());
        }
        let mut x: Vec<SymNum> = (0..3).map(|_| weights[rng.gen_range(0..4)].clone()).collect();
        x[rng.gen_range(0..3)] = SymNum::one();
        let p = a.mul_vec(&x).unwrap();
        let b: Vec<SymNum> = p
            .iter()
            .map(|pi| {
                let c = corner_choices(pi);
                c[rng.gen_range(0..c.len())].clone()
            })
            .collect();
        let witness = member(&a, &b).map_err(|e| e.to_string())?;
        let Membership::Member(wx) = witness else {
            return Err(format!("{b:?} not a member of\n{a}"));
        };
        for (xx, label) in [(&x, "grid"), (&wx, "witness")] {
            let lift = lift_construct(&a, xx, &b).map_err(|e| format!("{label}: {e}"))?;
            ensure(lift_verify(&a, &lift, xx, &b), || format!("{label} lift fails for {b:?}\n{a}"))?;
        }
        let lift = lift_construct(&a, &x, &b).unwrap();
        let i = rng.gen_range(0..2);
        let mut bad = b.clone();
        bad[i] = match &p[i] {
            SymNum::Zero => SymNum::one(),
            other => SymNum::Pos(other.mag().unwrap() + num_rational::BigRational::from_integer(1.into())),
        };
        ensure(!p[i].uncomp().contains(&bad[i]), || "tampering stayed inside U".into())?;
        ensure(!lift_verify(&a, &lift, &x, &bad), || format!("tampered {bad:?} verified"))?;
        ensure(lift_construct(&a, &x, &bad).is_err(), || "tampered point lifted".into())?;
        tampered += 1;
        cases += 1;
    }
    ensure(tampered == 100, || format!("{tampered} tampered cases"))
}

fn hyperfield_oracle() -> Check {
    let lambdas = [v("0 _"), v("0 -1"), v("0 0"), v("-1 0"), v("_ 0")];
    let zs = all_points(2, &v("_ -1 ~-1 0 ~0 1 ~1 2 ~2"));
    let mut count = 0usize;
    for vm in all_matrices(2, 2, &small_grid()) {
        for l in &lambdas {
            let p = vm.mul_vec(l).unwrap();
            for z in &zs {
                let expected = p.iter().zip(z).all(|(pi, zi)| pi.uncomp().contains(zi));
                let got = hconv_check(&vm, l, z).map_err(|e| e.to_string())?;
                ensure(got == expected, || format!("{vm} {l:?} {z:?}"))?;
                count += 1;
            }
        }
    }
    ensure(count == 625 * 5 * 81, || format!("{count} checks"))
}

fn orthant_decomposition() -> Check {
    let mset = m("3 ~1 ~4; 3 ~0 ~2");
    let oh = orthant_hull(&mset).map_err(|e| e.to_string())?;
    let as_set = |gens: &[Unsigned]| gens.iter().cloned().collect::<BTreeSet<_>>();
    let listed = |pts: &str| -> BTreeSet<Unsigned> {
        pts.split(';').map(|p| unsigned_of(&v(p))).collect()
    };
    let pp = listed("3 3; _ 3; _ 1");
    let mp = listed("~1 0; _ 1; _ 3; ~4 _");
    let mm = listed("~1 ~0; ~4 ~2; ~1 _; ~4 _");
    ensure(as_set(oh.cell(&[Sign::Pos, Sign::Pos]).unwrap()) == pp, || "(+,+) cell differs".into())?;
    ensure(as_set(oh.cell(&[Sign::Neg, Sign::Neg]).unwrap()) == mm, || "(-,-) cell differs".into())?;
    ensure(oh.cell(&[Sign::Pos, Sign::Neg]).unwrap().is_empty(), || "(+,-) cell not empty".into())?;
    let listed: Vec<(Vec<Sign>, Vec<Unsigned>)> = vec![
        (vec![Sign::Pos, Sign::Pos], pp.into_iter().collect()),
        (vec![Sign::Neg, Sign::Pos], mp.into_iter().collect()),
        (vec![Sign::Neg, Sign::Neg], mm.into_iter().collect()),
    ];
    let ours_mp: Vec<Unsigned> = oh.cell(&[Sign::Neg, Sign::Pos]).unwrap().to_vec();
    for g in &listed[1].1 {
        ensure(unsigned_member(&ours_mp, g), || format!("listed generator {g:?} outside the (-,+) cell"))?;
    }
    for p in all_points(2, &v("~3 ~2 ~1 ~0 _ 0 1 2 3")) {
        let truth = is_member(&mset, &p).map_err(|e| e.to_string())?;
        ensure(oh.contains(&p) == truth, || format!("orthant hull disagrees at {p:?}"))?;
        let in_listed = listed.iter().any(|(eps, gens)| {
            p.iter().zip(eps).all(|(x, e)| x.is_zero() || x.sign() == *e)
                && unsigned_member(gens, &unsigned_of(&p))
        });
        ensure(in_listed == truth, || format!("listed hulls disagree at {p:?}"))?;
    }
    Ok(())
}

fn regression_fixtures() -> Check {
    let a = v("1 ~2 0");
    let p = v("2 1 _");
    let q = v("~2 ~1 _");
    let hyp = |x: &[SymNum]| {
        SymNum::sum(a.iter().zip(x).map(|(ai, xi)| ai.mul(xi)).collect::<Vec<_>>().iter()).is_balanced_or_zero()
    };
    let flipped = v("~2 1 _");
    let pq = SymMatrix::from_columns(3, vec![p.clone(), q.clone()]).unwrap();
    ensure(hyp(&p) && hyp(&q), || "p or q not on the hyperplane".into())?;
    ensure(!hyp(&flipped), || "(a2, a1) on the hyperplane".into())?;
    ensure(is_member(&pq, &flipped).unwrap(), || "(a2, a1) not in tconv(p, q)".into())?;

    let h = AffineRow::nonstrict(v("~0 0 0"));
    let corners = m("~1 1; 1 ~1");
    ensure(h.satisfied_by(&v("~1 1")) && h.satisfied_by(&v("1 ~1")), || "corners violate".into())?;
    ensure(!h.satisfied_by(&v("_ _")), || "origin satisfies".into())?;
    ensure(is_member(&corners, &v("_ _")).unwrap(), || "origin not in hull".into())?;

    let (x, y, z) = (s("0"), s("~0"), s("-1"));
    let right = cancellative_sum(&x, &cancellative_sum(&y, &z).unwrap()).unwrap();
    let left = cancellative_sum(&cancellative_sum(&x, &y).unwrap(), &z).unwrap();
    ensure(right == SymNum::Zero && left == s("-1"), || format!("{right} vs {left}"))?;

    let g1 = m("0 ~0; 0 ~0");
    let g2 = m("0 ~0; ~0 0");
    for pt in sampling_grid(2) {
        ensure(is_member(&g1, &pt).unwrap() == is_member(&g2, &pt).unwrap(), || format!("{pt:?}"))?;
    }
    Ok(())
}

fn round_trip() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let grid = sampling_grid(2);
    for case in 0..20 {
        let n = rng.gen_range(1..=3);
        let signs: &[Option<trop_core::semiring::Sign>] = if case % 4 == 3 { &SIGNED } else { &NONZERO };
        let vm = random_matrix(&mut rng, 2, n, -2, 2, signs);
        let rows = vrep_to_hrep(&vm).map_err(|e| format!("V->H for\n{vm}: {e}"))?;
        let back = hrep_to_vrep(&rows).map_err(|e| format!("H->V for\n{vm}: {e}"))?;
        for p in &grid {
            let truth = is_member(&vm, p).unwrap();
            ensure(rows.iter().all(|r| r.satisfied_by(p)) == truth, || format!("H disagrees at {p:?} for\n{vm}"))?;
            ensure(is_member(&back, p).unwrap() == truth, || format!("round trip disagrees at {p:?} for\n{vm}\nback\n{back}"))?;
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 10] = [
        ("farkas exclusivity over all 2x3 matrices", farkas_exclusivity),
        ("strict FM worked example", fm_worked_example),
        ("non-strict FM worked example", nonstrict_worked_example),
        ("tropical LP fixture", tropical_lp_fixture),
        ("strict projection soundness", projection_soundness),
        ("membership and lift oracle", lift_oracle),
        ("hyperfield oracle", hyperfield_oracle),
        ("orthant decomposition", orthant_decomposition),
        ("regression fixtures", regression_fixtures),
        ("V to H to V round trip", round_trip),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", k + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {e}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
