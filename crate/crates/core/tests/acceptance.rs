//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector, Rotation3, Unit, Vector3};
use nearness::engine::{
    antipodal_cell, antipodal_string_family, but_search, corner_region_descriptor,
    fixed_point_search, shape_descriptor, wired_friend_pipeline, ButObjects, Reducer,
    RegionDescriptor,
};
use nearness::geometry::{sphere_sample, strings_antipodal, Point, StringPath};
use nearness::proximity::{
    check_axioms, sample_region_pairs, DescriptiveSpace, Family, Feature, FeatureMap,
};
use nearness::surfaces::{
    bend_to_torus, eeg_twist_lift, project_xz, roll_worldsheet, torus_measures, torus_residual,
    twist, TorusParams, TwistSpec,
};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A random space on distinct cells of a `w × h` grid, labeled at random and
/// described by the 4-neighbour count.
fn random_space(rng: &mut ChaCha8Rng, size: usize) -> DescriptiveSpace {
    let (w, h) = (6, 6);
    let mut cells = index::sample(rng, w * h, size).into_vec();
    cells.sort_unstable();
    let pts = cells
        .iter()
        .map(|&c| Point::from_slice(&[(c % w) as f64, (c / w) as f64]))
        .collect();
    let labels = (0..size).map(|_| rng.random_bool(0.6)).collect();
    DescriptiveSpace::new(
        pts,
        labels,
        FeatureMap::exact(Feature::AdjacencyCount {
            width: w,
            height: h,
        }),
    )
    .unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut exhaustive, mut checks) = (0, 0);
    for s in 0..20 {
        let size = if s % 2 == 0 {
            rng.random_range(2..=6)
        } else {
            rng.random_range(7..=20)
        };
        let space = random_space(&mut rng, size);
        for family in Family::ALL {
            let r = check_axioms(&space, family, 1000, s as u64).map_err(|e| e.to_string())?;
            ensure(r.passed(), || {
                format!("space {s} {family:?}: {:?}", r.violations.first())
            })?;
            ensure(r.exhaustive == (size <= 6), || {
                format!("space {s}: exhaustive flag")
            })?;
            exhaustive += usize::from(r.exhaustive);
            checks += r.axioms.len();
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{checks} axiom checks, {exhaustive} exhaustive, {elapsed:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut agree = 0;
    for k in 0..10 {
        let size = rng.random_range(3..=20);
        let space = random_space(&mut rng, size);
        for (a, b) in sample_region_pairs(&space, 1000, k) {
            let near = space.dnear(&a, &b).map_err(|e| e.to_string())?;
            let meet = !space
                .descriptive_intersection(&a, &b)
                .map_err(|e| e.to_string())?
                .is_empty();
            ensure(near == meet, || format!("space {k}: {a:?} / {b:?}"))?;
            agree += 1;
        }
    }
    Ok(format!("{agree} pairs agree"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let grid = sphere_sample(1, 32).map_err(|e| e.to_string())?;
    let strings = antipodal_string_family(&grid, 4).map_err(|e| e.to_string())?;
    ensure(strings.len() == 16, || format!("{} strings", strings.len()))?;
    for reducer in [Reducer::Mean, Reducer::MinMax] {
        let f =
            RegionDescriptor::new(FeatureMap::exact(Feature::EvenCoords), reducer, 0.0).unwrap();
        let r = but_search(ButObjects::Strings(&strings), &f).map_err(|e| e.to_string())?;
        for i in 0..strings.len() {
            let zero = r
                .pairs
                .iter()
                .any(|p| (p.a == i || p.b == i) && p.distance == 0.0);
            ensure(zero, || {
                format!("{reducer:?}: string {i} has no partner at distance 0")
            })?;
        }
        let mut oracle = Vec::new();
        for i in 0..strings.len() {
            for j in i + 1..strings.len() {
                if strings_antipodal(&strings[i], &strings[j])
                    && even_summary(&strings[i], reducer) == even_summary(&strings[j], reducer)
                {
                    oracle.push((i, j));
                }
            }
        }
        let got: Vec<_> = r.pairs.iter().map(|p| (p.a, p.b)).collect();
        ensure(got == oracle, || {
            format!("{reducer:?}: {got:?} vs oracle {oracle:?}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("16 strings, all partnered, {elapsed:.2?}"))
}

/// `|x|` per coordinate summarized by the sorted mean or by min and max.
fn even_summary(s: &StringPath, reducer: Reducer) -> Vec<f64> {
    let dim = s.dim();
    let mut cols: Vec<Vec<f64>> = vec![Vec::new(); dim];
    for p in s.vertices() {
        for (c, x) in cols.iter_mut().zip(p.coords()) {
            c.push(x.abs());
        }
    }
    for c in &mut cols {
        c.sort_by(f64::total_cmp);
    }
    match reducer {
        Reducer::Mean => cols
            .iter()
            .map(|c| c.iter().sum::<f64>() / c.len() as f64)
            .collect(),
        _ => cols.iter().flat_map(|c| [c[0], c[c.len() - 1]]).collect(),
    }
}

fn criterion_4() -> Outcome {
    let mut cells = 0;
    for w in 2..=6 {
        for h in 2..=6 {
            for i in 0..w {
                for j in 0..h {
                    let borders =
                        usize::from(i == 0 || i == w - 1) + usize::from(j == 0 || j == h - 1);
                    let want = [4.0, 3.0, 2.0][borders];
                    let d = corner_region_descriptor(w, h, (i, j)).map_err(|e| e.to_string())?;
                    ensure(d == vec![want], || format!("{w}x{h} ({i},{j}): {d:?}"))?;
                    let opp = antipodal_cell(w, h, (i, j)).map_err(|e| e.to_string())?;
                    let matched =
                        corner_region_descriptor(w, h, opp).map_err(|e| e.to_string())? == d;
                    ensure(matched, || format!("{w}x{h} ({i},{j}) vs {opp:?}"))?;
                    cells += 1;
                }
            }
        }
    }
    Ok(format!("{cells} cells on 25 grids"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for n in 1..=2 {
        for k in 0..20 {
            // Frobenius scaling bounds the operator norm; ‖M‖ + ‖b‖ ≤ 1 keeps B_n invariant.
            let m: DMatrix<f64> = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
            let op = rng.random_range(0.05..0.9);
            let m = &m * (op / m.norm());
            let b: DVector<f64> = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
            let b = &b * (rng.random_range(0.0..1.0 - op) / b.norm());
            let f = |x: &[f64]| {
                (&m * DVector::from_column_slice(x) + &b)
                    .as_slice()
                    .to_vec()
            };
            let fp = fixed_point_search(f, n, 1e-10, 60).map_err(|e| format!("n={n} #{k}: {e}"))?;
            let exact = (DMatrix::identity(n, n) - &m)
                .lu()
                .solve(&b)
                .ok_or("singular I - M")?;
            let err = (DVector::from_column_slice(&fp.point) - exact).norm();
            ensure(err <= 1e-6, || format!("n={n} #{k}: error {err}"))?;
            worst = worst.max(err);
        }
    }
    let fp = fixed_point_search(|x| vec![x[0].cos()], 1, 1e-10, 60).map_err(|e| e.to_string())?;
    ensure((fp.point[0] - 0.7390851332).abs() <= 1e-6, || {
        format!("cos: {}", fp.point[0])
    })?;
    Ok(format!(
        "40 contractions, worst error {worst:.1e}; cos fixed point {:.10}",
        fp.point[0]
    ))
}

fn criterion_6() -> Outcome {
    let m = torus_measures(&TorusParams::new(2.0, 1.0).map_err(|e| e.to_string())?);
    let (area, volume) = (8.0 * PI * PI, 4.0 * PI * PI);
    ensure((m.area - area).abs() <= 1e-12 * area, || {
        format!("area {}", m.area)
    })?;
    ensure((m.volume - volume).abs() <= 1e-12 * volume, || {
        format!("volume {}", m.volume)
    })?;

    // Midpoint rule on the parametrization: area element r(c + r cos v), and
    // the volume as the integral of z·n_z over the surface.
    let (c, r, n) = (2.0, 1.0, 512);
    let step = 2.0 * PI / n as f64;
    // Neither integrand depends on u, so each v row is summed n times.
    let (mut a, mut v) = (0.0, 0.0);
    for _ in 0..n {
        for j in 0..n {
            let t = (j as f64 + 0.5) * step;
            let ring = c + r * t.cos();
            a += r * ring;
            let z = r * t.sin();
            let nz = ring * r * t.sin();
            v += z * nz;
        }
    }
    let (a, v) = (a * step * step, v * step * step);
    ensure((m.area - a).abs() <= 1e-3 * a, || {
        format!("area {} vs quadrature {a}", m.area)
    })?;
    ensure((m.volume - v).abs() <= 1e-3 * v, || {
        format!("volume {} vs quadrature {v}", m.volume)
    })?;
    Ok(format!("area {:.6}, volume {:.6}", m.area, m.volume))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let t = TorusParams::new(2.0, 1.0).unwrap();
    let mut worst_bend: f64 = 0.0;
    for _ in 0..10_000 {
        let (u, v) = (
            rng.random_range(0.0..=2.0 * PI),
            rng.random_range(0.0..=2.0 * PI),
        );
        let p = bend_to_torus(&t, u, v).map_err(|e| e.to_string())?;
        worst_bend = worst_bend.max(torus_residual(p.coords().try_into().unwrap(), &t));
    }
    ensure(worst_bend <= 1e-12, || {
        format!("bend residual {worst_bend:e}")
    })?;
    let mut worst_roll: f64 = 0.0;
    for _ in 0..10_000 {
        let (w, h) = (rng.random_range(0.5..10.0), rng.random_range(0.5..10.0));
        let p = roll_worldsheet(rng.random_range(0.0..=w), rng.random_range(0.0..=h), w, h)
            .map_err(|e| e.to_string())?;
        let r = w / (2.0 * PI);
        let c = p.coords();
        worst_roll = worst_roll.max((c[0] * c[0] + c[1] * c[1] - r * r).abs());
    }
    ensure(worst_roll <= 1e-12, || {
        format!("roll residual {worst_roll:e}")
    })?;
    Ok(format!(
        "worst bend {worst_bend:.1e}, worst roll {worst_roll:.1e}"
    ))
}

fn criterion_8() -> Outcome {
    let spec = TwistSpec::default();
    ensure(twist(0.0, 1.0, &spec) == 0.0, || "twist(0, 1) != 0".into())?;
    for k in -1000..=1000 {
        let z = k as f64 / 1000.0;
        let w = twist(PI / 5.0, z, &spec);
        ensure(w == -1.2, || format!("twist(π/5, {z}) = {w}"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let trace: Vec<(f64, f64)> = (0..1000)
        .map(|_| (rng.random_range(-10.0..10.0), rng.random_range(-1.0..1.0)))
        .collect();
    let lifted = eeg_twist_lift(&trace, &spec).map_err(|e| e.to_string())?;
    ensure(project_xz(&lifted) == trace, || {
        "lift/project round trip is not exact".into()
    })?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let csv = dir.path().join("trace.csv");
    let obj = dir.path().join("trace.obj");
    let rows: String = (0..64)
        .map(|i| {
            let t = i as f64 / 64.0;
            format!("{t},{},{}\n", (7.0 * t).sin(), (3.0 * t).cos() * 0.5)
        })
        .collect();
    std::fs::write(&csv, format!("t,x,z\n{rows}")).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_nearness"))
        .args([
            "eeg",
            "torus",
            "--c",
            "2",
            "--r",
            "1",
            "--strings",
            "8",
            "--in",
        ])
        .arg(&csv)
        .arg("--out")
        .arg(&obj)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    let params = TorusParams::new(2.0, 1.0).unwrap();
    let text = std::fs::read_to_string(&obj).map_err(|e| e.to_string())?;
    let (mut vertices, mut faces, mut worst) = (0usize, Vec::new(), 0.0f64);
    for line in text.lines() {
        let fields: Vec<&str> = line.split(' ').collect();
        match fields[0] {
            "v" if fields.len() == 4 => {
                let p: Vec<f64> = fields[1..]
                    .iter()
                    .map(|s| s.parse().unwrap_or(f64::NAN))
                    .collect();
                worst = worst.max(torus_residual([p[0], p[1], p[2]], &params));
                vertices += 1;
            }
            "f" if fields.len() == 5 => {
                faces.extend(fields[1..].iter().map(|s| s.parse::<usize>().unwrap_or(0)))
            }
            _ => return Err(format!("bad OBJ line `{line}`")),
        }
    }
    ensure(vertices == 8 * 64, || format!("{vertices} vertices"))?;
    ensure(
        !faces.is_empty() && faces.iter().all(|&i| (1..=vertices).contains(&i)),
        || "face index out of range".into(),
    )?;
    // Nine significant digits leave up to 5e-9 of rounding in coordinates
    // near 3, so the residual of re-read vertices is about 2r times that.
    ensure(worst <= 1e-9, || {
        format!("OBJ vertex residual {worst:.2e} after 9-digit rounding")
    })?;
    Ok(format!(
        "twist exact on 2001 samples, OBJ worst residual {worst:.1e}"
    ))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for s in 0..100 {
        let n = rng.random_range(2..12);
        let verts: Vec<Point> = (0..n)
            .map(|_| {
                Point::from_slice(&[
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                ])
            })
            .collect();
        let closed = n >= 3 && rng.random_bool(0.3);
        let Ok(string) = StringPath::new(verts, closed) else {
            continue;
        };
        let base = shape_descriptor(&string);
        let friend = wired_friend_pipeline(&string);
        ensure(
            friend.ball_ok && nearness_norm(&friend.description) < 1.0,
            || format!("string {s} outside ball"),
        )?;
        for _ in 0..10 {
            let axis = Unit::new_normalize(Vector3::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ));
            let rot = Rotation3::from_axis_angle(&axis, rng.random_range(-PI..PI));
            let shift = Vector3::new(
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
            );
            let moved = string
                .map_vertices(|p| {
                    let q = rot * Vector3::from_column_slice(p.coords()) + shift;
                    Point::from_slice(q.as_slice())
                })
                .map_err(|e| e.to_string())?;
            let d = shape_descriptor(&moved);
            let diff = base
                .iter()
                .zip(&d)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            ensure(diff <= 1e-9, || {
                format!("string {s}: shape moved by {diff:e}")
            })?;
            let g = wired_friend_pipeline(&moved).description;
            ensure(nearness_norm(&g) < 1.0, || {
                format!("string {s}: moved copy outside ball")
            })?;
            worst = worst.max(diff);
        }
    }
    Ok(format!(
        "1000 congruent copies, worst variation {worst:.1e}"
    ))
}

fn nearness_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        match c() {
            Ok(detail) => println!("criterion {}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
