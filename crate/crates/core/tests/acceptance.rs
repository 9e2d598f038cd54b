//! Acceptance run: every criterion prints one `criterion N: pass|FAIL` line.
//! Expected values come from oracles written here, independently of the
//! library code paths they check.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::Instant;

use findim::complex::{cone, direct_sum, ChainMap, Complex, Degree, GradedDims};
use findim::filtration::{cube_quotient_check, filtration_report, verify_main_theorem};
use findim::group_algebra::{check_system, idempotent_system, GroupAlgebraElement};
use findim::linalg::{Matrix, Rational};
use findim::powers::{extreme_power, parity_flip_check, PowerContext, Sign};
use findim::random::Gen;
use findim::symgroup::{character, hook_dimension, partitions_of, Partition, Permutation};
use findim::Limits;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// Oracles

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Pascal's triangle.
fn choose(n: usize, k: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![1usize; row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

/// Graded dimensions of the `n`-th wedge (`+`) or symmetric (`-`) power of a
/// graded space, read off the generating function
/// `Π (1 + t q^k)` over exterior-type basis vectors times
/// `Π 1/(1 - t q^k)` over the others. A vector of degree `k` is exterior-type
/// for wedge powers when `k` is even and for symmetric powers when `k` is odd.
fn power_oracle(dims: &GradedDims, n: usize, sign: Sign) -> GradedDims {
    // poly[j] maps q-degree to coefficient of t^j q^deg
    let mut poly: Vec<BTreeMap<Degree, usize>> = vec![BTreeMap::new(); n + 1];
    poly[0].insert(0, 1);
    for (k, d) in dims.iter() {
        let exterior = (k.rem_euclid(2) == 0) == (sign == Sign::Plus);
        for _ in 0..d {
            let mut next: Vec<BTreeMap<Degree, usize>> = vec![BTreeMap::new(); n + 1];
            for (j, terms) in poly.iter().enumerate() {
                let max_r = if exterior { 1 } else { n - j };
                for r in 0..=max_r.min(n - j) {
                    for (&deg, &c) in terms {
                        *next[j + r].entry(deg + r as Degree * k).or_insert(0) += c;
                    }
                }
            }
            poly = next;
        }
    }
    poly[n].iter().filter(|(_, &c)| c > 0).map(|(&k, &c)| (k, c)).collect()
}

/// Product of Poincaré polynomials.
fn times(a: &GradedDims, b: &GradedDims) -> GradedDims {
    let mut out: BTreeMap<Degree, usize> = BTreeMap::new();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            *out.entry(i + j).or_insert(0) += x * y;
        }
    }
    out.into_iter().filter(|&(_, c)| c > 0).collect()
}

fn pow(a: &GradedDims, n: usize) -> GradedDims {
    (0..n).fold([(0, 1)].into_iter().collect(), |acc, _| times(&acc, a))
}

fn scale(a: &GradedDims, s: usize) -> GradedDims {
    a.iter().map(|(k, c)| (k, c * s)).filter(|&(_, c)| c > 0).collect()
}

/// `Y - X` degreewise.
fn difference(y: &GradedDims, x: &GradedDims) -> GradedDims {
    y.iter().map(|(k, c)| (k, c - x.get(k))).filter(|&(_, c)| c > 0).collect()
}

/// Homology dimensions from ranks of the differentials, degree by degree.
fn homology_by_rank(c: &Complex) -> GradedDims {
    c.degrees().map(|k| (k, c.dim(k) - c.d(k).rank() - c.d(k + 1).rank())).filter(|&(_, h)| h > 0).collect()
}

fn random_permutation(g: &mut Gen, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        images.swap(i, g.index(i + 1));
    }
    Permutation::new(images).expect("a shuffle is a permutation")
}

fn random_element(g: &mut Gen, n: usize, support: usize) -> GroupAlgebraElement {
    let terms: Vec<(Permutation, Rational)> =
        (0..support).map(|_| (random_permutation(g, n), Rational::new(g.int(-3, 3), g.int(1, 2)))).collect();
    GroupAlgebraElement::from_terms(n, terms).expect("degrees agree")
}

/// A complex of total dimension exactly `dim` in degrees `-1..=1`: lines,
/// plus contractible pairs when `pairs` is set, in a random basis.
fn sized_complex(g: &mut Gen, dim: usize, pairs: bool) -> Complex {
    let mut c = Complex::zero();
    while c.total_dim() < dim {
        if pairs && dim - c.total_dim() >= 2 && g.coin() {
            let k = g.int(0, 1) as Degree;
            let s = [-2, -1, 1, 2][g.index(4)];
            let pair = Complex::new([(k, 1), (k - 1, 1)], [(k, Matrix::from_i64(&[&[s]]))]).unwrap();
            c = direct_sum(&c, &pair);
        } else {
            c = direct_sum(&c, &Complex::line(g.int(-1, 1) as Degree));
        }
    }
    g.disguise(&c)
}

/// An injection `X -> Y` with `dim X = x` and `dim Y = y`. With
/// `twisted` unset, `X`, `Z` and `Y` have zero differential and `f` is an
/// inclusion seen through a random basis of `Y`; otherwise `Y` is a random
/// extension of random complexes.
fn injection(g: &mut Gen, x: usize, y: usize, twisted: bool) -> ChainMap {
    if twisted {
        let xc = sized_complex(g, x, true);
        let zc = sized_complex(g, y - x, true);
        return g.extension(&xc, &zc).f;
    }
    let xc = sized_complex(g, x, false);
    let zc = sized_complex(g, y - x, false);
    let yc = Arc::new(direct_sum(&xc, &zc));
    let blocks: Vec<_> = xc
        .degrees()
        .map(|k| {
            let inc = Matrix::identity(xc.dim(k)).vstack(&Matrix::zeros(zc.dim(k), xc.dim(k))).unwrap();
            (k, g.invertible(yc.dim(k)).mul(&inc).unwrap())
        })
        .collect();
    ChainMap::new(Arc::new(xc), yc, blocks).expect("zero differentials")
}

/// A complex whose homology is concentrated in degrees of the given parity,
/// with total homology dimension `h`, plus some contractible pairs.
fn parity_complex(g: &mut Gen, h: usize, parity: Degree, pairs: usize) -> Complex {
    let mut c = Complex::zero();
    for _ in 0..h {
        let k = 2 * g.int(-1, 0) as Degree + parity;
        c = direct_sum(&c, &Complex::line(k));
    }
    for _ in 0..pairs {
        let k = g.int(0, 1) as Degree;
        let pair = Complex::new([(k, 1), (k - 1, 1)], [(k, Matrix::from_i64(&[&[1]]))]).unwrap();
        c = direct_sum(&c, &pair);
    }
    g.disguise(&c)
}

// ---------------------------------------------------------------------------
// Criteria

fn idempotent_system_check() -> Check {
    let limits = Limits::default();
    for n in 1..=6 {
        let r = ok(check_system(n, &limits))?;
        ensure!(r.pass, "n = {n}: {r:?}");
        ensure!(r.rows.len() == partitions_of(n).len(), "n = {n}: one row per partition");
    }
    // direct products in the group algebra, with centrality tested against
    // every transposition
    for n in 1..=4 {
        let system = ok(idempotent_system(n, &limits))?;
        let mut total = GroupAlgebraElement::zero(n);
        for (i, (lambda, e)) in system.iter().enumerate() {
            for (j, (_, f)) in system.iter().enumerate() {
                let p = ok(e.multiply(f))?;
                let expected = if i == j { e.clone() } else { GroupAlgebraElement::zero(n) };
                ensure!(p == expected, "n = {n}: e_i e_j for {i}, {j}");
            }
            for a in 0..n {
                for b in a + 1..n {
                    let t = Permutation::transposition(n, a, b);
                    ensure!(e.conjugate_by(&t) == *e, "n = {n}: {lambda} not central");
                }
            }
            total = ok(total.add(e))?;
        }
        ensure!(total == GroupAlgebraElement::one(n), "n = {n}: sum is not 1");
    }
    Ok(())
}

fn hook_squares() -> Check {
    for n in 1..=8 {
        let mut sum = 0u128;
        for lambda in partitions_of(n) {
            let f = hook_dimension(&lambda);
            let chi = ok(character(&lambda, &Partition::from_unsorted(vec![1; n])))?;
            ensure!(f as i64 == chi, "n = {n}: hook length {f} vs character degree {chi} for {lambda}");
            sum += f * f;
        }
        ensure!(sum == factorial(n as u64) as u128, "n = {n}: Σ f² = {sum}");
    }
    Ok(())
}

fn representation_property() -> Check {
    let limits = Limits::default();
    let mut g = Gen::new(0x5eed_0003);
    for case in 0..25 {
        let m = 2 + case % 3;
        let c = Arc::new(sized_complex(&mut g, 1 + (case / 3) % 3, true));
        let ctx = ok(PowerContext::new(c, m, &limits))?;
        let (sa, sb) = (1 + g.index(4), 1 + g.index(4));
        let a = random_element(&mut g, m, sa);
        let b = random_element(&mut g, m, sb);
        let ab = ok(ctx.action(&ok(a.multiply(&b))?))?;
        let composed = ok(ok(ctx.action(&a))?.compose(&ok(ctx.action(&b))?))?;
        ensure!(ab == composed, "case {case}: Γ(ab) ≠ Γ(a)Γ(b), m = {m}");
        let one = ok(ctx.action(&GroupAlgebraElement::one(m)))?;
        ensure!(one == ChainMap::identity(ctx.complex().clone()), "case {case}: Γ(1) ≠ id");
    }
    Ok(())
}

fn classical_ranks() -> Check {
    let limits = Limits::default();
    for p in 0..=4 {
        for k in 1..=4 {
            for parity in [0, 1] {
                let v = Complex::graded([(parity, p)]);
                let wedge = ok(extreme_power(&v, k, Sign::Plus, &limits))?.total_dim();
                let sym = ok(extreme_power(&v, k, Sign::Minus, &limits))?.total_dim();
                let (exterior, polynomial) = (choose(p, k), choose(p + k - 1, k));
                let (w, s) = if parity == 0 { (exterior, polynomial) } else { (polynomial, exterior) };
                ensure!(wedge == w, "Λ^{k} of dim {p} in degree {parity}: {wedge} vs {w}");
                ensure!(sym == s, "Sym^{k} of dim {p} in degree {parity}: {sym} vs {s}");
            }
        }
    }
    Ok(())
}

fn cube_quotients() -> Check {
    let limits = Limits::default();
    let mut g = Gen::new(0x5eed_0005);
    for case in 0..25 {
        let y = 1 + case % 4;
        let x = g.index(y + 1);
        let f = injection(&mut g, x, y, case % 2 == 1);
        let (x, y) = (f.source().dims(), f.target().dims());
        let z = difference(&y, &x);
        // for an injection the cone is quasi-isomorphic to the quotient
        let hx = homology_by_rank(f.source());
        let hz = homology_by_rank(&ok(cone(&f))?.complex);
        for m in 1..=4 {
            for i in 1..=m {
                let r = ok(cube_quotient_check(&f, m, i, &limits))?;
                ensure!(r.pass, "case {case}, m = {m}, i = {i}: {r:?}");
                let dims = scale(&times(&pow(&x, i - 1), &pow(&z, m - i + 1)), choose(m, i - 1));
                ensure!(r.quotient_dims == dims, "case {case}, m = {m}, i = {i}: dims {} vs {dims}", r.quotient_dims);
                let h = scale(&times(&pow(&hx, i - 1), &pow(&hz, m - i + 1)), choose(m, i - 1));
                ensure!(
                    r.quotient_homology == h,
                    "case {case}, m = {m}, i = {i}: homology {} vs {h}",
                    r.quotient_homology
                );
            }
        }
    }
    Ok(())
}

fn filtrations() -> Check {
    let limits = Limits::default();
    let mut g = Gen::new(0x5eed_0006);
    for case in 0..50 {
        let y = 2 + case % 3;
        let x = g.index(y + 1);
        let f = injection(&mut g, x, y, case % 2 == 1);
        let zero_differential = f.target().has_zero_differential();
        let (x, y) = (f.source().dims(), f.target().dims());
        let z = difference(&y, &x);
        let m = 1 + (case / 2) % 4;
        for sign in [Sign::Plus, Sign::Minus] {
            let r = ok(filtration_report(&f, m, sign, &limits))?;
            let tag = format!("case {case}, m = {m}, {sign:?}");
            ensure!(r.verdict, "{tag}: {r:?}");
            ensure!(r.levels.len() == m + 2, "{tag}: levels");
            ensure!(r.power_dims == power_oracle(&y, m, sign), "{tag}: power dims");
            let hy = homology_by_rank(f.target());
            ensure!(r.power_homology == power_oracle(&hy, m, sign), "{tag}: power homology");
            // tier (a): each piece against the oracle, and Vandermonde per degree
            let mut sum: BTreeMap<Degree, usize> = BTreeMap::new();
            for i in 0..=m {
                let level = &r.levels[i + 1];
                let expected = times(&power_oracle(&z, m - i, sign), &power_oracle(&x, i, sign));
                ensure!(level.dims_j.as_ref() == Some(&expected), "{tag}: piece {i}");
                for (k, c) in expected.iter() {
                    *sum.entry(k).or_insert(0) += c;
                }
                // tier (b): u ∘ d = C(m,i) on every input
                let s = level.scalar_check.as_ref().ok_or(format!("{tag}: no scalar check at {i}"))?;
                ensure!(s.pass && s.u_after_d && s.scalar as usize == choose(m, i), "{tag}: scalar at {i}: {s:?}");
            }
            let sum: GradedDims = sum.into_iter().filter(|&(_, c)| c > 0).collect();
            ensure!(sum == r.power_dims, "{tag}: graded pieces do not add up");
            if zero_differential {
                ensure!(r.power_homology == r.power_dims, "{tag}: zero differential");
            }
        }
    }
    Ok(())
}

fn main_theorem() -> Check {
    let limits = Limits::default();
    let mut g = Gen::new(0x5eed_0007);
    for case in 0..25 {
        for (sign, parity) in [(Sign::Plus, 0), (Sign::Minus, 1)] {
            let hx = g.index(3);
            let hz = g.index(4 - hx);
            let pairs = g.index(2);
            let x = parity_complex(&mut g, hx, parity, pairs);
            let z = parity_complex(&mut g, hz, parity, 1 - pairs);
            let f = g.extension(&x, &z).f;
            let (a, b) = (hx + 1, hz + 1);
            let tag = format!("case {case}, {sign:?}, a = {a}, b = {b}");
            ensure!(ok(extreme_power(&x, a, sign, &limits))?.is_acyclic(), "{tag}: X power not acyclic");
            ensure!(ok(extreme_power(&z, b, sign, &limits))?.is_acyclic(), "{tag}: Z power not acyclic");
            let r = ok(verify_main_theorem(&f, a, b, sign, &limits))?;
            ensure!(r.pass && r.pieces_acyclic && r.power_acyclic && r.m == a + b - 1, "{tag}: {r:?}");
            let direct = ok(extreme_power(f.target(), a + b - 1, sign, &limits))?;
            ensure!(homology_by_rank(&direct).is_zero(), "{tag}: direct power has homology");
        }
    }
    Ok(())
}

fn schur_complements() -> Check {
    let mut g = Gen::new(0x5eed_0008);
    for case in 0..100 {
        let a = sized_complex(&mut g, 1 + case % 3, true);
        let (nb, nc) = (g.index(4), g.index(4));
        let b = sized_complex(&mut g, nb, true);
        let c = sized_complex(&mut g, nc, true);
        let input = g.block_input(&a, &b, &c);
        let (t, report) = ok(findim::complex::schur_split(&input))?;
        ensure!(report.agree, "case {case}: {report:?}");
        // t = d - c a⁻¹ b degree by degree, and cone homology by ranks
        for k in input.b.source().degrees() {
            let a_inv = input.a.block(k).inverse().ok_or(format!("case {case}: a singular in degree {k}"))?;
            let cab = ok(ok(input.c.block(k).mul(&a_inv))?.mul(&input.b.block(k)))?;
            let expected = ok(input.d.block(k).sub(&cab))?;
            ensure!(t.block(k) == expected, "case {case}: t in degree {k}");
        }
        let full = ok(input.full_map())?;
        let h_full = homology_by_rank(&ok(cone(&full))?.complex);
        let h_t = homology_by_rank(&ok(cone(&t))?.complex);
        ensure!(h_full == h_t && h_full == report.homology_full_cone, "case {case}: cone homology");
    }
    Ok(())
}

fn parity_flips() -> Check {
    let limits = Limits::default();
    let mut g = Gen::new(0x5eed_0009);
    for case in 0..20 {
        let c = sized_complex(&mut g, 1 + case % 3, true);
        let n = 1 + (case / 3) % 3;
        let r = ok(parity_flip_check(&c, n, &limits))?;
        ensure!(r.pass, "case {case}: {r:?}");
        let shifted = c.dims().shift(1);
        ensure!(r.wedge_of_shift == power_oracle(&shifted, n, Sign::Plus), "case {case}: Λ^{n}(ΣC)");
        ensure!(r.sym_of_shift == power_oracle(&shifted, n, Sign::Minus), "case {case}: Sym^{n}(ΣC)");
        ensure!(r.shifted_sym == power_oracle(&c.dims(), n, Sign::Minus).shift(n as Degree), "case {case}");
        ensure!(r.shifted_wedge == power_oracle(&c.dims(), n, Sign::Plus).shift(n as Degree), "case {case}");
    }
    Ok(())
}

fn cli_contract() -> Check {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let instance = |name: &str| root.join("../../docs/instances").join(format!("{name}.json"));
    let engine = |args: &[&str], inst: &str| {
        Command::new(env!("CARGO_BIN_EXE_engine")).args(args).arg(instance(inst)).output().expect("engine runs")
    };
    let golden: &[(&str, &str)] = &[
        ("filtration", "plane"),
        ("verify", "plane"),
        ("filtration", "zero_subobject"),
        ("powers", "powers"),
        ("dim", "dim"),
        ("verify", "verify"),
        ("idempotents", "idempotents"),
        ("split", "split"),
    ];
    for &(cmd, inst) in golden {
        for (flags, ext) in [(&[][..], "txt"), (&["--json"][..], "json")] {
            let mut args = vec![cmd];
            args.extend_from_slice(flags);
            let out = engine(&args, inst);
            let path = root.join("tests/golden").join(format!("{cmd}_{inst}.{ext}"));
            let expected = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            ensure!(out.status.code() == Some(0), "{cmd} {inst}: exit {:?}", out.status.code());
            ensure!(out.stdout == expected, "{cmd} {inst}: output differs from {}", path.display());
        }
    }
    let codes: &[(&[&str], &str, i32)] = &[
        (&["filtration"], "non_injective", 2),
        (&["split"], "split_singular", 2),
        (&["powers"], "powers_cap", 3),
        (&["idempotents"], "idempotents_cap", 3),
        (&["filtration", "--cap-m", "1"], "plane", 3),
        (&["verify"], "verify_mixed", 5),
    ];
    for (args, inst, code) in codes {
        let got = engine(args, inst).status.code();
        ensure!(got == Some(*code), "{args:?} {inst}: exit {got:?}, expected {code}");
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("idempotent system for n ≤ 6", idempotent_system_check),
        ("Σ f_λ² = n! for n ≤ 8", hook_squares),
        ("Γ(ab) = Γ(a)Γ(b)", representation_property),
        ("classical power ranks", classical_ranks),
        ("cube quotients", cube_quotients),
        ("filtration, both tiers", filtrations),
        ("acyclic extreme power of an extension", main_theorem),
        ("Schur complement splitting", schur_complements),
        ("parity flip under suspension", parity_flips),
        ("CLI golden files and exit codes", cli_contract),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {}: pass  {name}  ({secs:.2} s)", n + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}  ({secs:.2} s): {e}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
