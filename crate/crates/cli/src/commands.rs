use std::path::Path;

use serde_json::{json, Value};

use orbitope::elab2::{
    affine_symmetry_order_of_cut_polytope, caterpillar_complement, class_t_check, count_ideal_orbit_bound,
    cut_size_bounds_check, cut_space, diag_rep, hamming_gamma, index_to_vector, is_ideal_character, permutation_rep,
    verify_admissible, ClassTCertificate, Graph,
};
use orbitope::exactmath::Rational;
use orbitope::grpalg::{
    bigsym_lower_bound, gale_symmetry_groups, gamma_character, has_inversion_symmetry, reppoly_symgroup,
    splitting_idempotent, standard_symmetries,
};
use orbitope::orbit::{
    affsym_group, centered_orbit_family, default_generic_mode, generic_closure_check, generic_linsym, genericity,
    orbit_family, realize_affine, GenericMode, GenericSymmetry, MatrixGroup, SymbolicCaps,
};
use orbitope::perm::{PermGroup, Permutation};
use orbitope::symcore::{
    color_matrix, image_on_distinct_points, is_linear_symmetry, linsym_group_of_span, realize, VectorFamily,
};
use orbitope::Error;

use crate::input::{self, Inputs};
use crate::report::{self, Mode};
use crate::{CliError, Command, GroupOnly, GroupPoint, Options, DEFAULT_SAMPLES};

type Outcome = Result<(Mode, Value), CliError>;

pub(crate) fn run(command: &Command, opts: &Options, inputs: &mut Inputs) -> Outcome {
    match command {
        Command::Linsym { family } => linsym(family, opts, inputs),
        Command::OrbitSym(a) => orbit_sym(a, opts, inputs),
        Command::GenericSym(a) => generic_sym(a, opts, inputs),
        Command::IsGeneric(a) => is_generic(a, opts, inputs),
        Command::ClosureCheck(a) => closure_check(a, opts, inputs),
        Command::ReppolySym(a) => reppoly_sym(a, opts, inputs),
        Command::Idempotent(a) => idempotent(a, opts, inputs),
        Command::InversionTest(a) => inversion_test(a, opts, inputs),
        Command::GaleCheck(a) => gale_check(a, opts, inputs),
        Command::Cutpoly { graph, cap } => cutpoly(graph, *cap, inputs),
        Command::Elab2Sym { c_matrix, permutation } => elab2_sym(c_matrix, *permutation, inputs),
        Command::ClassTCheck { graph } => class_t(graph, inputs),
        Command::Caterpillar { n } => caterpillar(*n, inputs),
        Command::CountIdealBound { n, d } => count_ideal_bound(*n, *d, inputs),
    }
}

fn load_group(path: &Path, opts: &Options, inputs: &mut Inputs) -> Result<MatrixGroup, CliError> {
    let text = inputs.read("group", path)?;
    input::parse_group(&text, opts.max_order)
}

fn load_group_point(a: &GroupPoint, opts: &Options, inputs: &mut Inputs) -> Result<(MatrixGroup, Vec<Rational>), CliError> {
    let g = load_group(&a.group, opts, inputs)?;
    inputs.record("point", a.point.as_bytes());
    let v = input::parse_point(&a.point)?;
    if v.len() != g.dim() {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, group acts on dimension {}",
            v.len(),
            g.dim()
        ))
        .into());
    }
    Ok((g, v))
}

fn load_graph(path: &Path, inputs: &mut Inputs) -> Result<Graph, CliError> {
    input::parse_graph(&inputs.read("graph", path)?)
}

fn caps(opts: &Options) -> SymbolicCaps {
    let default = SymbolicCaps::default();
    SymbolicCaps {
        max_dim: opts.max_dim.unwrap_or(default.max_dim),
        ..default
    }
}

fn generic_mode(g: &MatrixGroup, opts: &Options) -> GenericMode {
    if opts.exact {
        return GenericMode::Exact;
    }
    let mode = match opts.samples {
        Some(samples) => GenericMode::MonteCarlo {
            samples,
            seed: opts.seed,
            threads: 0,
        },
        None => default_generic_mode(g, caps(opts), DEFAULT_SAMPLES, opts.seed),
    };
    match mode {
        GenericMode::MonteCarlo { samples, seed, .. } => GenericMode::MonteCarlo {
            samples,
            seed,
            threads: opts.threads,
        },
        exact => exact,
    }
}

fn mode_of(mode: GenericMode, certified: bool) -> Mode {
    match mode {
        GenericMode::Exact => Mode::Exact,
        GenericMode::MonteCarlo { samples, seed, .. } => Mode::MonteCarlo {
            seed,
            samples,
            certified,
        },
    }
}

fn elements(g: &MatrixGroup) -> Value {
    Value::Array(g.elements().iter().map(report::matrix).collect())
}

/// `γ(π(a)⁻¹π(b)) = γ(a⁻¹b)` for all `a, b`, rechecked from the values.
fn preserves_quotients<T: PartialEq>(g: &MatrixGroup, f: &[T], p: &Permutation) -> bool {
    let n = g.order();
    p.degree() == n
        && (0..n).all(|a| {
            let pa = g.inverse(p.apply(a));
            let ia = g.inverse(a);
            (0..n).all(|b| f[g.mul(pa, p.apply(b))] == f[g.mul(ia, b)])
        })
}

/// One representative per distinct point, in order of first occurrence.
fn distinct_family(family: &VectorFamily<Rational>) -> VectorFamily<Rational> {
    let class = family.distinct_points();
    let mut reps = Vec::new();
    for (i, &c) in class.iter().enumerate() {
        if c == reps.len() {
            reps.push(family.vector(i));
        }
    }
    VectorFamily::from_vectors(family.dim(), &reps)
}

/// Linear-symmetry check against the color matrix of the row-space
/// reduction; every permutation passes when the family spans nothing.
fn span_checker(family: &VectorFamily<Rational>) -> Result<impl Fn(&Permutation) -> Option<bool>, CliError> {
    let reduced = family.reduce_to_row_space();
    let colors = (reduced.dim() > 0).then(|| color_matrix(&reduced)).transpose()?;
    Ok(move |p: &Permutation| Some(colors.as_ref().is_none_or(|w| is_linear_symmetry(w, p))))
}

fn linsym(path: &Path, opts: &Options, inputs: &mut Inputs) -> Outcome {
    let family = input::parse_family(&inputs.read("family", path)?)?;
    let group = linsym_group_of_span(&family);
    let distinct = image_on_distinct_points(&family, &group)?;
    let mut result = json!({
        "points": family.len(),
        "dim": family.dim(),
        "spanning": family.spans(),
        "group": report::group(&group, span_checker(&family)?),
        "distinct_points": report::group(&distinct, span_checker(&distinct_family(&family))?),
    });
    if opts.emit_matrices && family.spans() {
        let realizations = group
            .generators()
            .iter()
            .map(|p| realize(&family, p).map(|a| report::matrix(&a)))
            .collect::<Result<Vec<_>, _>>()?;
        result["realizations"] = Value::Array(realizations);
    }
    Ok((Mode::Exact, result))
}

fn orbit_sym(a: &GroupPoint, opts: &Options, inputs: &mut Inputs) -> Outcome {
    let (g, v) = load_group_point(a, opts, inputs)?;
    let group = affsym_group(&g, &v)?;
    let centered = centered_orbit_family(&g, &v);
    let family = orbit_family(&g, &v);
    let distinct = image_on_distinct_points(&family, &group)?;
    let mut result = json!({
        "group_order": g.order(),
        "orbit": (0..g.order()).map(|i| report::rationals(&family.vector(i))).collect::<Vec<_>>(),
        "group": report::group(&group, span_checker(&centered)?),
        "distinct_points": report::group(&distinct, span_checker(&distinct_family(&centered))?),
    });
    if opts.emit_matrices {
        let realizations = group
            .generators()
            .iter()
            .map(|p| {
                realize_affine(&g, &v, p).map(|m| {
                    json!({ "linear": report::matrix(&m.linear), "translation": report::rationals(&m.translation) })
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        result["realizations"] = Value::Array(realizations);
        result["elements"] = elements(&g);
    }
    Ok((Mode::Exact, result))
}

fn generic_result(g: &MatrixGroup, sym: &GenericSymmetry) -> Value {
    let status: Vec<(Permutation, Option<bool>)> =
        sym.group.generators().iter().cloned().zip(sym.verified.iter().copied()).collect();
    let verify = |p: &Permutation| status.iter().find(|(q, _)| q == p).and_then(|(_, s)| *s);
    json!({
        "group_order": g.order(),
        "group": report::group(&sym.group, verify),
        "sampled_points": sym.samples.iter().map(|v| report::rationals(v)).collect::<Vec<_>>(),
    })
}

fn generic_sym(a: &GroupOnly, opts: &Options, inputs: &mut Inputs) -> Outcome {
    let g = load_group(&a.group, opts, inputs)?;
    let mode = generic_mode(&g, opts);
    let sym = generic_linsym(&g, mode, caps(opts))?;
    let mut result = generic_result(&g, &sym);
    if opts.emit_matrices {
        result["elements"] = elements(&g);
    }
    Ok((mode_of(mode, sym.exact), result))
}

fn is_generic(a: &GroupPoint, opts: &Options, inputs: &mut Inputs) -> Outcome {
    let (g, v) = load_group_point(a, opts, inputs)?;
    let mode = generic_mode(&g, opts);
    let r = genericity(&g, &v, mode, caps(opts))?;
    let result = json!({
        "generic": r.is_generic(),
        "generating": r.generating,
        "trivial_stabilizer": r.trivial_stabilizer,
        "no_extra_symmetry": r.no_extra_symmetry,
    });
    // Early rejections need no sampling and are exact.
    let mode = if r.no_extra_symmetry.is_none() {
        Mode::Exact
    } else {
        mode_of(mode, r.exact)
    };
    Ok((mode, result))
}

fn closure_check(a: &GroupPoint, opts: &Options, inputs: &mut Inputs) -> Outcome {
    let (g, v) = load_group_point(a, opts, inputs)?;
    let r = generic_closure_check(&g, &v, opts.seed)?;
    let mut result = json!({
        "affsym_order": r.affsym_order.to_string(),
        "hat_group_order": r.hat_group.order().to_string(),
        "closed": r.closed,
        "witnesses": r
            .witnesses
            .iter()
            .map(|(w, order)| json!({ "point": report::rationals(w), "order": order.to_string() }))
            .collect::<Vec<_>>(),
        "certificate": "a witness orbit of the linear parts has exactly |Ĝ| symmetries",
    });
    if opts.emit_matrices {
        result["realizations"] = Value::Array(
            r.realizations
                .iter()
                .map(|(p, m)| {
                    json!({
                        "permutation": report::permutation(p),
                        "linear": report::matrix(&m.linear),
                        "translation": report::rationals(&m.translation),
                    })
                })
                .collect(),
        );
        result["hat_group_elements"] = elements(&r.hat_group);
    }
    // The witness points are drawn from the seed; the certificate is exact.
    Ok((Mode::Exact, result))
}

fn gamma_map(gamma: &[i64]) -> Value {
    let mut map = serde_json::Map::new();
    for (i, x) in gamma.iter().enumerate() {
        map.insert(i.to_string(), json!(x));
    }
    Value::Object(map)
}

fn reppoly_result(d: &MatrixGroup, gamma: &[i64], group: &PermGroup) -> Result<Value, CliError> {
    let standard = standard_symmetries(d);
    Ok(json!({
        "group_order": d.order(),
        "gamma": gamma_map(gamma),
        "group": report::group(group, |p| Some(preserves_quotients(d, gamma, p))),
        "standard_subgroup_order": standard.order().to_string(),
        "contains_standard": group.contains_group(&standard)?,
        "lower_bound": bigsym_lower_bound(d).to_string(),
    }))
}

fn reppoly_sym(a: &GroupOnly, opts: &Options, inputs: &mut Inputs) -> Outcome {
    let d = load_group(&a.group, opts, inputs)?;
    let gamma = gamma_character(&d)?;
    let group = reppoly_symgroup(&d)?;
    let mut result = reppoly_result(&d, &gamma, &group)?;
    if opts.emit_matrices {
        result["elements"] = elements(&d);
    }
    Ok((Mode::Exact, result))
}

fn idempotent(a: &GroupPoint, opts: &Options, inputs: &mut Inputs) -> Outcome {
    let (g, v) = load_group_point(a, opts, inputs)?;
    let split = splitting_idempotent(&g, &v)?;
    let c = split.certificate;
    let mut result = json!({
        "coefficients": report::rationals(split.element.coeffs()),
        "certificate": {
            "idempotent": c.idempotent,
            "fixes_point": c.fixes_point,
            "orthogonal": c.orthogonal,
        },
        "central": split.element.is_central(),
    });
    if opts.emit_matrices {
        result["elements"] = elements(&g);
    }
    Ok((Mode::Exact, result))
}

fn inversion_test(a: &GroupPoint, opts: &Options, inputs: &mut Inputs) -> Outcome {
    let (g, v) = load_group_point(a, opts, inputs)?;
    let symmetric = has_inversion_symmetry(&g, &v)?;
    Ok((
        Mode::Exact,
        json!({
            "inversion_symmetry": symmetric,
            "inversion": report::permutation(&g.inversion()),
            "certificate": "color criterion and centrality of the splitting idempotent agree",
        }),
    ))
}

fn gale_check(a: &GroupPoint, opts: &Options, inputs: &mut Inputs) -> Outcome {
    let (g, v) = load_group_point(a, opts, inputs)?;
    let split = splitting_idempotent(&g, &v)?;
    let (f, complement) = gale_symmetry_groups(&split.element)?;
    let equal = f.contains_group(&complement)? && complement.contains_group(&f)?;
    Ok((
        Mode::Exact,
        json!({
            "idempotent_group": report::group(&f, |_| None),
            "complement_group": report::group(&complement, |_| None),
            "equal": equal,
        }),
    ))
}

fn certificate(c: &ClassTCertificate) -> Value {
    json!({
        "at_least_seven_vertices": c.at_least_seven_vertices,
        "complement_is_tree": c.complement_is_tree,
        "cover_number_exceeds_three": c.cover_number_exceeds_three,
        "in_class": c.in_class(),
    })
}

fn cutpoly(path: &Path, cap: usize, inputs: &mut Inputs) -> Outcome {
    let g = load_graph(path, inputs)?;
    inputs.record("cap", cap.to_string().as_bytes());
    let (order, adm) = affine_symmetry_order_of_cut_polytope(&g, cap)?;
    let space = cut_space(&g);
    let sets = space.enumerate(cap)?;
    let class = class_t_check(&g);
    let cut_sizes = if class.in_class() {
        let r = cut_size_bounds_check(&g, cap)?;
        json!({
            "max_principal": r.max_principal,
            "min_non_principal": r.min_non_principal,
            "has_four_cycle_cut": r.has_four_cycle_cut,
            "all_bipartite": r.all_bipartite,
        })
    } else {
        Value::Null
    };
    Ok((
        Mode::Exact,
        json!({
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "cut_space_dim": space.dim(),
            "cut_sets": sets.len(),
            "affine_order": order.to_string(),
            "admissible": report::group(&adm, |p| Some(verify_admissible(&sets, p))),
            "vertex_stabilizer_trivial": adm.is_trivial(),
            "automorphism_group_order": g.automorphism_group().order().to_string(),
            "class_t": certificate(&class),
            "cut_sizes": cut_sizes,
        }),
    ))
}

fn elab2_sym(path: &Path, permutation: bool, inputs: &mut Inputs) -> Outcome {
    let c = input::parse_gf2(&inputs.read("c-matrix", path)?)?;
    inputs.record("representation", if permutation { b"permutation" } else { b"diagonal" });
    let d = if permutation { permutation_rep(&c)? } else { diag_rep(&c)? };
    let gamma = gamma_character(&d)?;
    let group = reppoly_symgroup(&d)?;
    let faithful = c.is_faithful();
    // With a faithful C the elements are indexed by x in lexicographic order.
    let crosscheck = (faithful && !permutation).then(|| {
        gamma
            .iter()
            .enumerate()
            .all(|(idx, &value)| value == hamming_gamma(&c, &index_to_vector(c.cols(), idx)))
    });
    let mut result = reppoly_result(&d, &gamma, &group)?;
    result["representation"] = json!(if permutation { "permutation" } else { "diagonal" });
    result["rows"] = json!(c.rows());
    result["rank"] = json!(c.cols());
    result["faithful"] = json!(faithful);
    result["ideal"] = json!(is_ideal_character(&c));
    result["gamma_crosscheck"] = json!(crosscheck);
    Ok((Mode::Exact, result))
}

fn class_t(path: &Path, inputs: &mut Inputs) -> Outcome {
    let g = load_graph(path, inputs)?;
    Ok((
        Mode::Exact,
        json!({
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "class_t": certificate(&class_t_check(&g)),
        }),
    ))
}

fn caterpillar(n: usize, inputs: &mut Inputs) -> Outcome {
    inputs.record("n", n.to_string().as_bytes());
    let g = caterpillar_complement(n)?;
    let edge_list: String = g.edges().iter().map(|(a, b)| format!("{a} {b}\n")).collect();
    Ok((
        Mode::Exact,
        json!({
            "n": n,
            "edges": g.edges().iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "edge_list": format!("{n}\n{edge_list}"),
            "class_t": certificate(&class_t_check(&g)),
        }),
    ))
}

fn count_ideal_bound(n: u32, d: u64, inputs: &mut Inputs) -> Outcome {
    inputs.record("n", n.to_string().as_bytes());
    inputs.record("d", d.to_string().as_bytes());
    let b = count_ideal_orbit_bound(n, d)?;
    Ok((
        Mode::Exact,
        json!({
            "n": n,
            "d": d,
            "count": b.count.to_string(),
            "gl_order": b.gl_order.to_string(),
            "forced_stabilizer": b.forced_stabilizer,
        }),
    ))
}
