//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use mospher::numeric::{c_int, int, rat, real, Rational};
use mospher::poly::{ConstMatrix, Poly, PolyMatrix};
use mospher::quadrature::{exact_gram, gram, gram_table, required_nodes, sn_symmetry_residual, so4_symmetry_residual, QuadWeight};
use mospher::sn::{self, SnFundamentalCase};
use mospher::so4::{self, apply_operator, So4, So4Operator};
use mospher::special::hahn_matrix;
use mospher::zonal::{correspondence_report, zonal_phi, Space, ZonalFamily};
use num_traits::Zero;

const SO4_GRAM_TOL: f64 = 1e-12;
const SN_GRAM_TOL: f64 = 1e-10;
const SYMMETRY_TOL: f64 = 1e-10;
const MASS_TOL: f64 = 1e-13;
const SYMMETRY_DEGREE: usize = 6;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lambda_w(ell: usize, w: usize) -> ConstMatrix {
    ConstMatrix::diag((0..=ell).map(|k| c_int(-(((w + k) * (w + k + 2)) as i64))).collect())
}

fn mu_w(ell: usize, w: usize) -> ConstMatrix {
    let l = int(ell as i64);
    ConstMatrix::diag(
        (0..=ell)
            .map(|k| {
                let (w, k) = (int(w as i64), int(k as i64));
                real(w * (l.clone() / int(2) - k.clone()) - k * (l.clone() / int(2) + int(1)))
            })
            .collect(),
    )
}

fn criterion_1() -> Outcome {
    for ell in 0..=10usize {
        let u = hahn_matrix(ell).u;
        let l = ell as i64;
        let at = |j: i64, k: i64| {
            if j < 0 || k < 0 || j > l || k > l {
                Rational::zero()
            } else {
                u.get(j as usize, k as usize).clone()
            }
        };
        for j in 0..=l {
            for k in 0..=l {
                let r1 = int(j * (l - j + 1) + (j + 1) * (l - j) - k * (k + 1)) * at(j, k)
                    - int(j * (l - j + 1)) * at(j - 1, k)
                    - int((j + 1) * (l - j)) * at(j + 1, k);
                let r2 = int(l - 2 * j) * at(j, k)
                    - rat(k * (l + k + 1), 2 * k + 1) * at(j, k - 1)
                    - rat((k + 1) * (l - k), 2 * k + 1) * at(j, k + 1);
                let r3 = int(k * (l - j) - k * (k + j + 1) + 2 * (j + 1) * (l - j)) * at(j, k)
                    - int(2 * (j + 1) * (l - j)) * at(j + 1, k)
                    - int(k * (k + l + 1)) * at(j, k - 1);
                ensure(r1.is_zero() && r2.is_zero() && r3.is_zero(), || format!("recurrence at ell={ell} j={j} k={k}"))?;
            }
        }
        let s = so4::so4_structure(ell);
        let uc = u.to_complex();
        let d = ConstMatrix::diag((0..=ell).map(|k| c_int(-((k * (k + 1)) as i64))).collect());
        ensure(s.c0.add(&s.c1).mul(&uc) == uc.mul(&d), || format!("eigen relation at ell={ell}"))?;
        let h = hahn_matrix(ell);
        ensure(so4::hahn_conjugations(&s, &h).iter().all(|m| m.is_zero()), || format!("conjugations at ell={ell}"))?;
    }
    Ok("ell <= 10, residuals exactly zero".into())
}

fn criterion_2() -> Outcome {
    for ell in 0..=4 {
        let so4 = So4::new(ell);
        let s = &so4.structure;
        ensure(so4.tilde_p(0) == PolyMatrix::identity(ell + 1), || format!("tilde P_0 != I at ell={ell}"))?;
        for w in 0..=6 {
            let (lw, mw) = (lambda_w(ell, w), mu_w(ell, w));
            let p = so4.p(w);
            let pt = so4.tilde_p(w);
            for (op, m, name, f) in [
                (So4Operator::Dbar, &lw, "Dbar", &p),
                (So4Operator::Ebar, &mw, "Ebar", &p),
                (So4Operator::Dtilde, &lw, "Dtilde", &pt),
                (So4Operator::Etilde, &mw, "Etilde", &pt),
            ] {
                let lhs = apply_operator(op, s, f).map_err(|e| e.to_string())?;
                ensure(lhs == f.mul_const_right(m), || format!("{name} at ell={ell} w={w}"))?;
            }
        }
    }
    Ok("ell <= 4, w <= 6, four operators exact".into())
}

fn criterion_3() -> Outcome {
    for ell in 0..=10 {
        let s = so4::so4_structure(ell);
        let psi = so4::psi(ell);
        ensure(so4::hypergeometrization_residuals(&s, &psi).iter().all(PolyMatrix::is_zero), || format!("paraD/paraE at ell={ell}"))?;
        let d = apply_operator(So4Operator::Dbar, &s, &psi).map_err(|e| e.to_string())?;
        ensure(d == psi.mul_const_right(&lambda_w(ell, 0)), || format!("Dbar Psi at ell={ell}"))?;
        let e = apply_operator(So4Operator::Ebar, &s, &psi).map_err(|e| e.to_string())?;
        ensure(e == psi.mul_const_right(&mu_w(ell, 0)), || format!("Ebar Psi at ell={ell}"))?;
    }
    Ok("ell <= 10".into())
}

fn criterion_4() -> Outcome {
    for ell in 0..=4 {
        for n in 0..=8 {
            ensure(so4::spectrum_residual(ell, n).map_err(|e| e.to_string())?.is_zero(), || format!("admissible set at ell={ell} n={n}"))?;
            let lm = so4::l_matrix(ell, n);
            for k in 0..=ell.min(n) {
                let mu = so4::mu_wk(ell, n - k, k);
                let a = so4::coefficient_vector_n(ell, n, &real(mu.clone())).map_err(|e| e.to_string())?;
                ensure(a[0] == c_int(1), || "a_0 != 1".into())?;
                let la = lm.mul_vec(&a);
                ensure(la.iter().zip(&a).all(|(x, y)| *x == real(mu.clone()) * y.clone()), || format!("L a != mu a at ell={ell} n={n} k={k}"))?;
                ensure(a.iter().skip(n + 1).all(Zero::is_zero), || format!("a_j != 0 past n at ell={ell} n={n} k={k}"))?;
            }
        }
        for k in 0..=ell {
            let a = so4::coefficient_vector(ell, 0, k, &real(so4::mu_wk(ell, 0, k))).map_err(|e| e.to_string())?;
            ensure(a == so4::coefficient_vector_w0(ell, k), || format!("w=0 closed form at ell={ell} k={k}"))?;
        }
    }
    Ok("ell <= 4, n <= 8".into())
}

fn criterion_5() -> Outcome {
    let mut worst: f64 = 0.0;
    for ell in 0..=3 {
        let so4 = So4::new(ell);
        let weight = so4.weight();
        let family: Vec<PolyMatrix> = (0..=5).map(|w| so4.tilde_p(w)).collect();
        let table = gram_table(&weight, &family, None).map_err(|e| e.to_string())?;
        for r in &table {
            worst = worst.max(r.max_offdiag);
            ensure(r.max_offdiag < SO4_GRAM_TOL, || format!("off-diagonal {:.3e} at ell={ell} w={} w'={}", r.max_offdiag, r.w, r.w_prime))?;
            if r.w == r.w_prime {
                ensure(r.diag.iter().all(|&d| d > 0.0), || format!("diagonal not positive at ell={ell} w={}", r.w))?;
                let scale = r.diag.iter().fold(0.0f64, |a, d| a.max(d.abs()));
                ensure(r.max_diag_imag <= SO4_GRAM_TOL * scale, || format!("diagonal not real at ell={ell}"))?;
            }
        }
        for a in 0..=5 {
            for b in 0..a {
                ensure(exact_gram(&weight, &family[a], &family[b]).is_zero(), || format!("exact Gram block nonzero at ell={ell}"))?;
            }
        }
    }
    let so4 = So4::new(0);
    let one = PolyMatrix::identity(1);
    let g = gram(&so4.weight(), &one, &one, 1).map_err(|e| e.to_string())?;
    let mass_err = (g[(0, 0)].re - 1.0).abs();
    ensure(mass_err < MASS_TOL, || format!("mass error {mass_err:.3e}"))?;
    Ok(format!("max off-diagonal {worst:.3e}, mass error {mass_err:.3e}"))
}

fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    for ell in 0..=3 {
        let so4 = So4::new(ell);
        for op in [So4Operator::Dtilde, So4Operator::Etilde] {
            let r = so4_symmetry_residual(&so4, op, SYMMETRY_DEGREE, None).map_err(|e| e.to_string())?;
            worst = worst.max(r);
            ensure(r < SYMMETRY_TOL, || format!("{op:?} at ell={ell}: {r:.3e}"))?;
        }
    }
    for n in 4..=7 {
        for p in 1..n / 2 {
            let case = SnFundamentalCase::new(n, p).map_err(|e| e.to_string())?;
            let w = sn::sn_weight(n, p).map_err(|e| e.to_string())?;
            let r = sn_symmetry_residual(&case, &w, SYMMETRY_DEGREE, None).map_err(|e| e.to_string())?;
            worst = worst.max(r);
            ensure(r < SYMMETRY_TOL, || format!("D on S^{n}, p={p}: {r:.3e}"))?;
        }
    }
    Ok(format!("max residual {worst:.3e}"))
}

fn criterion_7() -> Outcome {
    for ell in 2..=4 {
        for p in 0..=ell {
            for w in p..=p + 6 {
                let h = sn::scalar_h(ell, p, w).map_err(|e| e.to_string())?;
                ensure(h.residual().is_zero() && h.poly.eval(&c_int(1)) == c_int(1), || format!("scalar ell={ell} p={p} w={w}"))?;
            }
        }
    }
    let four = Poly::from_ints(&[0, 4, -4]);
    for n in 4..=7 {
        for p in 1..n / 2 {
            let case = SnFundamentalCase::new(n, p).map_err(|e| e.to_string())?;
            let psi = case.psi();
            let eig = ConstMatrix::diag(vec![c_int(-(p as i64)), c_int(p as i64 - n as i64)]);
            ensure(case.apply_scaled(&psi) == psi.mul_const_right(&eig).scale_poly(&four), || format!("Psi relation n={n} p={p}"))?;
            for w in 0..=5 {
                for delta in [0, 1] {
                    let s = sn::fundamental_p(n, p, w, delta).map_err(|e| e.to_string())?;
                    let lead = s.leading();
                    let d = delta as usize;
                    ensure(s.degree == w, || format!("degree n={n} p={p} w={w}"))?;
                    ensure(lead[1 - d].is_zero() && !lead[d].is_zero(), || format!("leading direction n={n} p={p} w={w} delta={delta}"))?;
                    ensure(s.residual().map_err(|e| e.to_string())?.is_zero(), || format!("ODE residual n={n} p={p} w={w} delta={delta}"))?;
                }
            }
        }
    }
    // F_0 = (cos s, 1), F_1 = (1, cos s) after y = (1 + cos s)/2
    for (delta, expect) in [(0, [true, false]), (1, [false, true])] {
        let h = sn::fundamental_p(4, 1, 0, delta).map_err(|e| e.to_string())?.h();
        for i in 0..=20 {
            let s = i as f64 * std::f64::consts::PI / 20.0;
            let v = h.eval_f64((1.0 + s.cos()) / 2.0);
            for (row, is_cos) in expect.iter().enumerate() {
                let target = if *is_cos { s.cos() } else { 1.0 };
                ensure((v[(row, 0)].re - target).abs() < 1e-15, || format!("F_{delta} at s={s}"))?;
            }
        }
    }
    Ok("scalar, Psi and fundamental identities exact".into())
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn criterion_8() -> Outcome {
    let mut count = 0;
    for n in 4..=13u64 {
        for p in 1..n / 2 {
            for j in [p, n - p] {
                for w in 0..=50u64 {
                    let d = (2 * w + n + 1).pow(2) + 4 * n - 8 * j;
                    ensure(isqrt(d).pow(2) != d, || format!("square discriminant n={n} j={j} w={w}"))?;
                    count += 1;
                }
            }
        }
    }
    for ell in 1..=6usize {
        let t = sn::triple111_operator(2 * ell + 1).map_err(|e| e.to_string())?;
        for w in 0..=20 {
            for delta in [-1, 0, 1] {
                let d: u64 = t.discriminant(w, delta).try_into().map_err(|_| "discriminant too large".to_string())?;
                ensure(isqrt(d).pow(2) != d, || format!("square discriminant ell={ell} w={w} delta={delta}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} discriminants, none a perfect square"))
}

fn criterion_9() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in [4usize, 5] {
        let weight = sn::sn_weight(n, 1).map_err(|e| e.to_string())?;
        let family: Vec<PolyMatrix> = (0..=4).map(|w| sn::fundamental_p_matrix(n, 1, w)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let table = gram_table(&weight, &family, None).map_err(|e| e.to_string())?;
        for r in &table {
            worst = worst.max(r.max_offdiag);
            ensure(r.max_offdiag < SN_GRAM_TOL, || format!("off-diagonal {:.3e} at n={n} w={} w'={}", r.max_offdiag, r.w, r.w_prime))?;
        }
        let m = required_nodes(&weight, &family[0], &family[0]);
        let mass = weight.rule(m).map_err(|e| e.to_string())?.integrate(|y| weight.node_factor(y));
        ensure((mass - 1.0).abs() < MASS_TOL, || format!("normalization {mass} at n={n}"))?;
    }
    Ok(format!("max off-diagonal {worst:.3e}"))
}

fn legendre_bonnet(k: usize) -> Vec<Poly> {
    let mut out = vec![Poly::one(), Poly::x()];
    while out.len() <= k {
        let m = out.len() - 1;
        let a = (&Poly::x() * &out[m]).scale(&real(rat(2 * m as i64 + 1, m as i64 + 1)));
        let b = out[m - 1].scale(&real(rat(m as i64, m as i64 + 1)));
        out.push(&a - &b);
    }
    out
}

fn criterion_10() -> Outcome {
    for n in 2..=9 {
        for k in 0..=8 {
            let r = correspondence_report(n, k).map_err(|e| e.to_string())?;
            ensure(r.holds(), || format!("correspondence n={n} k={k}"))?;
        }
    }
    let sphere = ZonalFamily::new(Space::Sphere, 2).map_err(|e| e.to_string())?;
    let legendre = legendre_bonnet(8);
    for (k, p) in legendre.iter().enumerate() {
        ensure(&zonal_phi(&sphere, k) == p, || format!("Legendre at k={k}"))?;
    }
    Ok("n <= 9, k <= 8".into())
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = mospher::cli::run(std::iter::once("mospher").chain(args.iter().copied()), &mut out, &mut err);
    (code, out)
}

fn criterion_11() -> Outcome {
    let cases: [(&[&str], &str); 3] = [
        (&["so4", "gen", "--ell", "2", "--w", "1"], include_str!("golden/so4_gen_ell2_w1.json")),
        (&["sn", "fundamental", "--n", "4", "--p", "1", "--w", "1", "--delta", "0"], include_str!("golden/sn_fundamental_n4_p1_w1_d0.json")),
        (&["zonal", "check", "--n", "3", "--max-k", "6"], include_str!("golden/zonal_check_n3_k6.txt")),
    ];
    for (args, golden) in cases {
        let (code, out) = run_cli(args);
        ensure(code == 0, || format!("{args:?} exited with {code}"))?;
        ensure(out == golden.as_bytes(), || format!("{args:?} differs from its golden file"))?;
        let bin = std::process::Command::new(env!("CARGO_BIN_EXE_mospher")).args(args).output().map_err(|e| e.to_string())?;
        ensure(bin.status.success() && bin.stdout == golden.as_bytes(), || format!("binary output for {args:?} differs"))?;
    }
    Ok("3 golden files reproduced byte-for-byte".into())
}

fn main() -> ExitCode {
    assert_eq!(SO4_GRAM_TOL, mospher::verify::SO4_GRAM_TOL);
    assert_eq!(SN_GRAM_TOL, mospher::verify::SN_GRAM_TOL);
    assert_eq!(SYMMETRY_TOL, mospher::verify::SYMMETRY_TOL);
    assert_eq!(MASS_TOL, mospher::verify::MASS_TOL);
    let criteria: [Criterion; 11] = [
        ("Hahn suite", criterion_1),
        ("SO(4) eigen suite", criterion_2),
        ("hypergeometrization identities", criterion_3),
        ("L(lambda) spectrum", criterion_4),
        ("SO(4) orthogonality", criterion_5),
        ("operator symmetry", criterion_6),
        ("S^n suite", criterion_7),
        ("discriminant scan", criterion_8),
        ("S^n orthogonality", criterion_9),
        ("zonal correspondence", criterion_10),
        ("CLI golden files", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
