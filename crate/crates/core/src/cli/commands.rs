use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::instance::{Instance, PowerKind, Task};
use super::table::{mark, render};
use super::Outcome;
use crate::complex::{quotient, schur_split, BlockTriangleInput, Degree, GradedDims};
use crate::error::{Error, Result};
use crate::filtration::{filtration_report, verify_main_theorem};
use crate::group_algebra::check_system;
use crate::limits::Limits;
use crate::linalg::Matrix;
use crate::powers::{extreme_power, kimura_profile, schur_power, Sign};
use crate::symgroup::Partition;

pub fn run_task(inst: &Instance, task: &Task, limits: &Limits) -> Result<Outcome> {
    match task {
        Task::Powers { object, kind, n, partition } => powers(inst, object, *kind, *n, partition.as_deref(), limits),
        Task::Dim { object } => dim(inst, object, limits),
        Task::Filtration { map, m, sign } => filtration(inst, map, *m, *sign, limits),
        Task::Verify { map, sign, a_x, b_z } => verify(inst, map, *sign, *a_x, *b_z, limits),
        Task::Idempotents { n } => idempotents(*n, limits),
        Task::Split { a, b, c, d } => split(inst, [a, b, c, d]),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn powers(
    inst: &Instance,
    object: &str,
    kind: PowerKind,
    n: Option<usize>,
    partition: Option<&[usize]>,
    limits: &Limits,
) -> Result<Outcome> {
    let c = inst.object(object);
    let (power, n, lambda) = match kind {
        PowerKind::Schur => {
            let parts = partition.ok_or_else(|| Error::Parse("schur power needs a partition".into()))?;
            let lambda = Partition::new(parts.to_vec())?;
            if n.is_some_and(|n| n != lambda.size()) {
                return Err(Error::Parse(format!("n does not match the size of the partition {lambda}")));
            }
            (schur_power(c, &lambda, limits)?, lambda.size(), Some(lambda))
        }
        PowerKind::Wedge | PowerKind::Sym => {
            if partition.is_some() {
                return Err(Error::Parse("a partition is only meaningful for schur powers".into()));
            }
            let n = n.ok_or_else(|| Error::Parse(format!("{} power needs n", kind.name())))?;
            let sign = if kind == PowerKind::Wedge { Sign::Plus } else { Sign::Minus };
            (extreme_power(c, n, sign, limits)?, n, None)
        }
    };
    let (dims, homology) = (power.dims(), power.homology());
    let verdict = if power.is_zero() {
        "vanishes"
    } else if homology.is_zero() {
        "acyclic"
    } else {
        "nonzero"
    };
    let record = json!({
        "object": object,
        "kind": kind.name(),
        "n": n,
        "partition": lambda.as_ref().map(|l| l.parts().to_vec()),
        "dims": to_value(&dims),
        "homology": to_value(&homology),
        "verdict": verdict,
    });
    let label = lambda.map_or_else(|| n.to_string(), |l| l.to_string());
    let table = render(
        &["object", "kind", "n", "dims", "homology", "verdict"],
        &[vec![object.into(), kind.name().into(), label, dims.to_string(), homology.to_string(), verdict.into()]],
    );
    Ok(Outcome { record, table, pass: true })
}

fn dim(inst: &Instance, object: &str, limits: &Limits) -> Result<Outcome> {
    let p = kimura_profile(inst.object(object), limits)?;
    let mut record = to_value(&p);
    record["object"] = json!(object);
    let witness = match &p.witness {
        Some(w) => format!(
            "Λ^{} even / Sym^{} odd: {}",
            w.wedge_of_even_part_vanishes_at,
            w.sym_of_odd_part_vanishes_at,
            mark(w.verified)
        ),
        None => "beyond caps".into(),
    };
    let table = render(
        &["object", "even", "odd", "dimension", "parity", "witness"],
        &[vec![
            object.into(),
            p.even_dimension.to_string(),
            p.odd_dimension.to_string(),
            p.dimension.to_string(),
            p.parity.to_string(),
            witness,
        ]],
    );
    let pass = p.witness.as_ref().is_none_or(|w| w.verified);
    Ok(Outcome { record, table, pass })
}

fn opt(d: &Option<GradedDims>) -> String {
    d.as_ref().map_or_else(|| "-".into(), GradedDims::to_string)
}

fn filtration(inst: &Instance, map: &str, m: usize, sign: Sign, limits: &Limits) -> Result<Outcome> {
    let r = filtration_report(inst.map(map), m, sign, limits)?;
    let mut record = to_value(&r);
    record["map"] = json!(map);
    let rows: Vec<Vec<String>> = r.levels[1..]
        .iter()
        .map(|l| {
            vec![
                (l.i - 1).to_string(),
                l.dims_i.to_string(),
                opt(&l.dims_j),
                opt(&l.expected_dims),
                opt(&l.homology_j),
                l.scalar_check.as_ref().map_or_else(|| "-".into(), |s| format!("{} {}", s.scalar, mark(s.pass))),
                mark(l.verdict),
            ]
        })
        .collect();
    let mut table = format!(
        "filtration of the {} power of {} along {map}, m = {m}\n",
        sign.power_name(),
        inst.map(map).target().dims()
    );
    table += &render(&["piece", "I(i+1)", "graded", "expected", "homology", "scalar", "verdict"], &rows);
    table += &format!(
        "power dims {}  homology {}  telescoping {}  boundary {}  verdict {}\n",
        r.power_dims,
        r.power_homology,
        mark(r.telescoping),
        mark(r.boundary),
        mark(r.verdict)
    );
    Ok(Outcome { record, table, pass: r.verdict })
}

fn verify(
    inst: &Instance,
    map: &str,
    sign: Sign,
    a_x: Option<usize>,
    b_z: Option<usize>,
    limits: &Limits,
) -> Result<Outcome> {
    let f = inst.map(map);
    f.check_injective()?;
    let exponent = |given: Option<usize>, c: &crate::complex::Complex, what: &str| -> Result<usize> {
        match given {
            Some(a) => Ok(a),
            None => kimura_profile(c, limits)?
                .vanishing_exponent(sign)
                .ok_or_else(|| Error::Inapplicable(format!("{what} has no vanishing {} power", sign.power_name()))),
        }
    };
    let a = exponent(a_x, f.source(), "X")?;
    let z = quotient(f.target(), &f.image()?)?.complex;
    let b = exponent(b_z, &z, "Z")?;
    let r = verify_main_theorem(f, a, b, sign, limits)?;
    let mut record = to_value(&r);
    record["map"] = json!(map);
    let table = render(
        &["map", "sign", "a_X", "b_Z", "m", "pieces acyclic", "power homology", "verdict"],
        &[vec![
            map.into(),
            sign.to_string(),
            a.to_string(),
            b.to_string(),
            r.m.to_string(),
            mark(r.pieces_acyclic),
            r.power_homology.to_string(),
            mark(r.pass),
        ]],
    );
    Ok(Outcome { record, table, pass: r.pass })
}

fn idempotents(n: usize, limits: &Limits) -> Result<Outcome> {
    let r = check_system(n, limits)?;
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            let lambda = Partition::new(row.partition.clone())
                .map_or_else(|_| format!("{:?}", row.partition), |p| p.to_string());
            vec![lambda, row.dimension.to_string(), mark(row.idempotent), mark(row.central)]
        })
        .collect();
    let mut table = format!("central idempotents of Q[S_{n}]\n");
    table += &render(&["partition", "dimension", "idempotent", "central"], &rows);
    table += &format!(
        "orthogonal {}  complete {}  sum of squares {} = {}! = {}\n",
        mark(r.orthogonal),
        mark(r.complete),
        r.dimension_square_sum,
        n,
        r.group_order
    );
    Ok(Outcome { record: to_value(&r), table, pass: r.pass })
}

fn blocks_value(m: &crate::complex::ChainMap) -> BTreeMap<Degree, Matrix> {
    m.blocks().filter(|(_, b)| b.rows() > 0 && b.cols() > 0).map(|(k, b)| (k, b.clone())).collect()
}

fn split(inst: &Instance, names: [&String; 4]) -> Result<Outcome> {
    let [a, b, c, d] = names.map(|n| inst.map(n).clone());
    let input = BlockTriangleInput { a, b, c, d };
    let (t, report) = schur_split(&input)?;
    let record = json!({
        "blocks": { "a": names[0], "b": names[1], "c": names[2], "d": names[3] },
        "t": to_value(&blocks_value(&t)),
        "homology_full_cone": to_value(&report.homology_full_cone),
        "homology_reduced_cone": to_value(&report.homology_reduced_cone),
        "agree": report.agree,
    });
    let t_text: Vec<String> = blocks_value(&t)
        .iter()
        .map(|(k, m)| format!("{k}: {}", serde_json::to_string(m).expect("matrix serializes")))
        .collect();
    let table = render(
        &["t", "full cone homology", "reduced cone homology", "agree"],
        &[vec![
            if t_text.is_empty() { "0".into() } else { t_text.join(" ") },
            report.homology_full_cone.to_string(),
            report.homology_reduced_cone.to_string(),
            mark(report.agree),
        ]],
    );
    Ok(Outcome { record, table, pass: report.agree })
}
