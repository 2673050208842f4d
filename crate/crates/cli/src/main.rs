//! `hecke0` — exact computations in finite Coxeter groups and their
//! 0-Hecke algebras: twisted conjugacy classes, minimal-length strata,
//! center and cocenter bases, class polynomials, trace matrices, and a
//! self-verification battery.
//!
//! Exit codes: 0 success, 1 verification failure, 2 malformed input.
//! Errors are written to stderr as one-line JSON objects.

mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::One;
use serde_json::{json, Value};

use hecke0::conjugacy::{
    class_polynomials, conj_move, gamma_set, max_param, reduce_to_min, sigma_table,
    ApproxClass, TwistedClasses,
};
use hecke0::coxeter::{
    build_group, diagram_aut, identity_aut, matrix_from_file, parse_delta_spec,
    parse_group_spec, CoxeterGroup, DiagramAut, GenSet,
};
use hecke0::hecke::zero::{center_basis, cocenter, grading_check, is_central, reduce_tw};
use hecke0::linalg::Q;
use hecke0::reps::trace_matrix;
use hecke0::verify::{run_battery, CheckStatus, VerifyOptions};
use hecke0::Error;

use render::{emit, obj, Format, Rendered, Section};

#[derive(Parser)]
#[command(
    name = "hecke0",
    version,
    about = "Exact 0-Hecke center/cocenter computations on finite Coxeter groups",
    arg_required_else_help = true
)]
struct Cli {
    /// Group by Cartan-style label, e.g. A2, B3, D4, G2, I2(7), H3, A2xA1.
    #[arg(long = "type", value_name = "SPEC", global = true)]
    group_type: Option<String>,

    /// Group by Coxeter matrix from a JSON file shaped
    /// `{"size": n, "m": [[1,3],[3,1]]}`.
    #[arg(long, value_name = "PATH", global = true, conflicts_with = "group_type")]
    matrix_file: Option<String>,

    /// Diagram automorphism as comma-separated 0-based generator images,
    /// e.g. `1,0` for the rank-2 swap.  Defaults to the identity.
    #[arg(long, value_name = "IMAGES", global = true)]
    delta: Option<String>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Abort group enumeration beyond this many elements.
    #[arg(long, value_name = "N", default_value_t = hecke0::DEFAULT_SIZE_LIMIT, global = true)]
    size_limit: usize,

    /// Seed for the randomized verification checks.
    #[arg(long, value_name = "N", default_value_t = 0, global = true)]
    seed: u64,

    /// Run the expensive verification checks on large groups too.
    #[arg(long, global = true)]
    slow: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group summary: rank, order, positive roots, longest element.
    Info,
    /// Twisted conjugacy classes with length strata and block counts.
    Classes,
    /// Blocks of the minimal-length stratum of every class.
    Min,
    /// Blocks of the maximal-length stratum of every class.
    Max,
    /// The parameter set of pairs (J, C) for both the minimal and the
    /// maximal side, with the block bijections.
    Gamma,
    /// Explicit basis of the center of the 0-Hecke algebra, with a
    /// centrality verdict per element.
    Center,
    /// Cocenter dimensions, minimal-representative basis, and the
    /// support-grading verdict for the commutator space.
    Cocenter,
    /// Class polynomials: one row per element, one column per class.
    Classpoly,
    /// Reduce a word to a minimal-length class representative: image pair,
    /// sign, and the conjugation path.
    Reduce {
        /// Word in 1-based generators joined by dots, e.g. `1.2.1`;
        /// `e` is the identity.
        word: String,
    },
    /// Trace pairing matrix against induced sign characters, with rank and
    /// kernel (untwisted only).
    Trace,
    /// Run the named verification battery; exits 1 if any check fails.
    Verify,
}

struct Context {
    label: String,
    group: CoxeterGroup,
    delta: DiagramAut,
}

fn build_context(cli: &Cli) -> hecke0::Result<Context> {
    let (matrix, label) = match (&cli.group_type, &cli.matrix_file) {
        (Some(spec), None) => (parse_group_spec(spec)?, spec.clone()),
        (None, Some(path)) => (matrix_from_file(path)?, format!("matrix:{path}")),
        _ => {
            return Err(Error::InvalidSpec {
                spec: String::new(),
                reason: "exactly one of --type or --matrix-file is required".into(),
            })
        }
    };
    let group = build_group(matrix, cli.size_limit)?;
    let delta = match &cli.delta {
        Some(spec) => diagram_aut(&group, &parse_delta_spec(spec, group.rank())?)?,
        None => identity_aut(&group),
    };
    Ok(Context { label, group, delta })
}

// ---------------------------------------------------------------------------
// rendering helpers

fn word_human(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join(".")
    }
}

fn word_json(word: &[usize]) -> Value {
    Value::Array(word.iter().map(|&s| Value::from(s as u64)).collect())
}

fn element_human(g: &CoxeterGroup, w: usize) -> String {
    word_human(&g.word_idx(w))
}

fn element_json(g: &CoxeterGroup, w: usize) -> Value {
    word_json(&g.word_idx(w))
}

/// Generator subset as a bitstring, character `i` for generator `i+1`.
fn genset_bits(j: GenSet, rank: usize) -> String {
    (0..rank).map(|i| if j.contains(i) { '1' } else { '0' }).collect()
}

fn genset_json(j: GenSet) -> Value {
    Value::Array(j.iter().map(|s| Value::from(s as u64)).collect())
}

fn delta_human(delta: &DiagramAut) -> String {
    delta
        .gen_images()
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn delta_json(delta: &DiagramAut) -> Value {
    Value::Array(delta.gen_images().iter().map(|&s| Value::from(s as u64)).collect())
}

fn rational(q: &Q) -> String {
    q.to_string()
}

fn preamble(ctx: &Context) -> Vec<(&'static str, Value)> {
    vec![
        ("group", Value::String(ctx.label.clone())),
        ("delta", delta_json(&ctx.delta)),
    ]
}

// ---------------------------------------------------------------------------
// commands

fn cmd_info(ctx: &Context) -> hecke0::Result<Rendered> {
    let g = &ctx.group;
    let w0 = g.longest_index();
    let w0_word = g.word_idx(w0);
    let matrix_rows: Vec<Value> = (0..g.rank())
        .map(|s| {
            Value::Array(
                (0..g.rank()).map(|t| Value::from(g.matrix().entry(s, t))).collect(),
            )
        })
        .collect();

    let mut fields = preamble(ctx);
    fields.extend([
        ("rank", Value::from(g.rank() as u64)),
        ("order", Value::from(g.order() as u64)),
        ("positiveRoots", Value::from(g.num_positive_roots() as u64)),
        ("longestLength", Value::from(g.len_idx(w0))),
        ("longestWord", word_json(&w0_word)),
        ("deltaOrder", Value::from(ctx.delta.order())),
        ("coxeterMatrix", Value::Array(matrix_rows)),
    ]);

    let rows = vec![
        vec!["group".into(), ctx.label.clone()],
        vec!["rank".into(), g.rank().to_string()],
        vec!["order".into(), g.order().to_string()],
        vec!["positiveRoots".into(), g.num_positive_roots().to_string()],
        vec!["longestLength".into(), g.len_idx(w0).to_string()],
        vec!["longestWord".into(), word_human(&w0_word)],
        vec!["delta".into(), delta_human(&ctx.delta)],
        vec!["deltaOrder".into(), ctx.delta.order().to_string()],
    ];
    Ok(Rendered {
        json: obj(fields),
        sections: vec![Section::new(None, &["field", "value"], rows)],
    })
}

fn cmd_classes(ctx: &Context) -> hecke0::Result<Rendered> {
    let g = &ctx.group;
    let classes = TwistedClasses::compute(g, &ctx.delta)?;
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for c in &classes.classes {
        let rep = c.min_set[0] as usize;
        rows.push(vec![
            c.id.to_string(),
            c.members.len().to_string(),
            c.min_length.to_string(),
            c.max_length.to_string(),
            c.elliptic.to_string(),
            c.min_set.len().to_string(),
            c.max_set.len().to_string(),
            c.min_blocks.len().to_string(),
            c.max_blocks.len().to_string(),
            element_human(g, rep),
        ]);
        items.push(obj([
            ("id", Value::from(c.id as u64)),
            ("size", Value::from(c.members.len() as u64)),
            ("minLength", Value::from(c.min_length)),
            ("maxLength", Value::from(c.max_length)),
            ("elliptic", Value::Bool(c.elliptic)),
            ("minElements", Value::from(c.min_set.len() as u64)),
            ("maxElements", Value::from(c.max_set.len() as u64)),
            ("minBlocks", Value::from(c.min_blocks.len() as u64)),
            ("maxBlocks", Value::from(c.max_blocks.len() as u64)),
            ("minRep", element_json(g, rep)),
        ]));
    }
    let mut fields = preamble(ctx);
    fields.extend([
        ("classCount", Value::from(classes.num_classes() as u64)),
        ("classes", Value::Array(items)),
    ]);
    Ok(Rendered {
        json: obj(fields),
        sections: vec![Section::new(
            None,
            &[
                "id", "size", "minLen", "maxLen", "elliptic", "minElts", "maxElts",
                "minBlocks", "maxBlocks", "rep",
            ],
            rows,
        )],
    })
}

fn stratum_rendered(
    ctx: &Context,
    blocks: &[ApproxClass],
    which: &str,
) -> Rendered {
    let g = &ctx.group;
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for b in blocks {
        let members_h: Vec<String> =
            b.members.iter().map(|&w| element_human(g, w as usize)).collect();
        rows.push(vec![
            b.id.to_string(),
            b.class.to_string(),
            b.length.to_string(),
            b.members.len().to_string(),
            members_h.join(" "),
        ]);
        items.push(obj([
            ("id", Value::from(b.id as u64)),
            ("class", Value::from(b.class as u64)),
            ("length", Value::from(b.length)),
            ("size", Value::from(b.members.len() as u64)),
            (
                "members",
                Value::Array(
                    b.members.iter().map(|&w| element_json(g, w as usize)).collect(),
                ),
            ),
        ]));
    }
    let mut fields = preamble(ctx);
    fields.extend([
        ("stratum", Value::String(which.to_string())),
        ("blockCount", Value::from(blocks.len() as u64)),
        ("blocks", Value::Array(items)),
    ]);
    Rendered {
        json: obj(fields),
        sections: vec![Section::new(
            None,
            &["block", "class", "length", "size", "members"],
            rows,
        )],
    }
}

fn cmd_stratum(ctx: &Context, which: &str) -> hecke0::Result<Rendered> {
    let classes = TwistedClasses::compute(&ctx.group, &ctx.delta)?;
    let blocks = if which == "min" { &classes.min_approx } else { &classes.max_approx };
    Ok(stratum_rendered(ctx, blocks, which))
}

fn cmd_gamma(ctx: &Context) -> hecke0::Result<Rendered> {
    let g = &ctx.group;
    let rank = g.rank();
    let classes = TwistedClasses::compute(g, &ctx.delta)?;
    let gamma = gamma_set(g, &ctx.delta, &classes)?;
    let maxp = max_param(g, &ctx.delta, &classes)?;

    let mut min_rows = Vec::new();
    let mut min_items = Vec::new();
    for (i, p) in gamma.pairs.iter().enumerate() {
        min_rows.push(vec![
            i.to_string(),
            genset_bits(p.j, rank),
            element_human(g, p.rep as usize),
            p.length.to_string(),
            p.class.to_string(),
            p.min_block.to_string(),
            p.min_elements.len().to_string(),
        ]);
        min_items.push(obj([
            ("pair", Value::from(i as u64)),
            ("J", genset_json(p.j)),
            ("rep", element_json(g, p.rep as usize)),
            ("length", Value::from(p.length)),
            ("class", Value::from(p.class as u64)),
            ("minBlock", Value::from(p.min_block as u64)),
            ("minElements", Value::from(p.min_elements.len() as u64)),
        ]));
    }

    let mut max_rows = Vec::new();
    let mut max_items = Vec::new();
    for (i, p) in maxp.gamma_prime.pairs.iter().enumerate() {
        let target = maxp.targets[i];
        let block = &classes.max_approx[target];
        max_rows.push(vec![
            i.to_string(),
            genset_bits(p.j, rank),
            element_human(g, p.rep as usize),
            target.to_string(),
            block.class.to_string(),
            block.length.to_string(),
            element_human(g, block.members[0] as usize),
        ]);
        max_items.push(obj([
            ("pair", Value::from(i as u64)),
            ("J", genset_json(p.j)),
            ("rep", element_json(g, p.rep as usize)),
            ("maxBlock", Value::from(target as u64)),
            ("class", Value::from(block.class as u64)),
            ("maxLength", Value::from(block.length)),
            ("maxRep", element_json(g, block.members[0] as usize)),
        ]));
    }

    let mut fields = preamble(ctx);
    fields.extend([
        ("minPairCount", Value::from(gamma.pairs.len() as u64)),
        ("maxPairCount", Value::from(maxp.gamma_prime.pairs.len() as u64)),
        ("minBijection", Value::Bool(gamma.is_min_bijection(&classes))),
        ("maxBijection", Value::Bool(maxp.is_max_bijection(&classes))),
        ("minPairs", Value::Array(min_items)),
        ("maxPairs", Value::Array(max_items)),
    ]);
    Ok(Rendered {
        json: obj(fields),
        sections: vec![
            Section::new(
                Some("minimal-side pairs (J, C)"),
                &["pair", "J", "rep", "length", "class", "minBlock", "minElts"],
                min_rows,
            ),
            Section::new(
                Some("maximal-side pairs (via the longest-element twist)"),
                &["pair", "J'", "rep'", "maxBlock", "class", "maxLength", "maxRep"],
                max_rows,
            ),
        ],
    })
}

fn cmd_center(ctx: &Context) -> hecke0::Result<Rendered> {
    let g = &ctx.group;
    let classes = TwistedClasses::compute(g, &ctx.delta)?;
    let basis = center_basis(g, &classes)?;
    let mut rows = Vec::new();
    let mut items = Vec::new();
    let mut all_central = true;
    for (i, (b, block)) in basis.iter().zip(&classes.max_approx).enumerate() {
        let central = is_central(g, &ctx.delta, b)?;
        all_central &= central;
        rows.push(vec![
            i.to_string(),
            block.class.to_string(),
            block.length.to_string(),
            element_human(g, block.members[0] as usize),
            b.num_terms().to_string(),
            central.to_string(),
        ]);
        let one = Q::one();
        let terms: Vec<Value> = b
            .iter()
            .map(|(w, c)| {
                obj([
                    ("word", element_json(g, w)),
                    (
                        "coeff",
                        if *c == one {
                            Value::from(1u64)
                        } else {
                            Value::String(rational(c))
                        },
                    ),
                ])
            })
            .collect();
        items.push(obj([
            ("index", Value::from(i as u64)),
            ("maxBlock", Value::from(block.id as u64)),
            ("class", Value::from(block.class as u64)),
            ("blockLength", Value::from(block.length)),
            ("numTerms", Value::from(b.num_terms() as u64)),
            ("central", Value::Bool(central)),
            ("terms", Value::Array(terms)),
        ]));
    }
    let mut fields = preamble(ctx);
    fields.extend([
        ("dim", Value::from(basis.len() as u64)),
        ("allCentral", Value::Bool(all_central)),
        ("basis", Value::Array(items)),
    ]);
    Ok(Rendered {
        json: obj(fields),
        sections: vec![Section::new(
            None,
            &["index", "class", "blockLength", "blockRep", "terms", "central"],
            rows,
        )],
    })
}

fn cmd_cocenter(ctx: &Context) -> hecke0::Result<Rendered> {
    let g = &ctx.group;
    let rank = g.rank();
    let classes = TwistedClasses::compute(g, &ctx.delta)?;
    let gamma = gamma_set(g, &ctx.delta, &classes)?;
    let coc = cocenter(g, &ctx.delta, &gamma)?;
    let grading = grading_check(g, &ctx.delta, &coc.commutators)?;

    let summary_rows = vec![
        vec!["order".into(), g.order().to_string()],
        vec!["dimCocenter".into(), coc.dim().to_string()],
        vec!["dimCommutators".into(), coc.commutators.rank().to_string()],
        vec!["gradingCheck".into(), grading.to_string()],
    ];
    let mut basis_rows = Vec::new();
    let mut items = Vec::new();
    for (i, p) in gamma.pairs.iter().enumerate() {
        basis_rows.push(vec![
            i.to_string(),
            genset_bits(p.j, rank),
            element_human(g, p.rep as usize),
            p.length.to_string(),
            p.class.to_string(),
        ]);
        items.push(obj([
            ("pair", Value::from(i as u64)),
            ("J", genset_json(p.j)),
            ("rep", element_json(g, p.rep as usize)),
            ("length", Value::from(p.length)),
            ("class", Value::from(p.class as u64)),
        ]));
    }
    let mut fields = preamble(ctx);
    fields.extend([
        ("order", Value::from(g.order() as u64)),
        ("dimCocenter", Value::from(coc.dim() as u64)),
        ("dimCommutators", Value::from(coc.commutators.rank() as u64)),
        ("gradingCheck", Value::Bool(grading)),
        ("basis", Value::Array(items)),
    ]);
    Ok(Rendered {
        json: obj(fields),
        sections: vec![
            Section::new(Some("dimensions"), &["field", "value"], summary_rows),
            Section::new(
                Some("minimal-representative basis"),
                &["pair", "J", "rep", "length", "class"],
                basis_rows,
            ),
        ],
    })
}

fn cmd_classpoly(ctx: &Context) -> hecke0::Result<Rendered> {
    let g = &ctx.group;
    let classes = TwistedClasses::compute(g, &ctx.delta)?;
    let table = class_polynomials(g, &ctx.delta, &classes)?;
    let ncl = classes.num_classes();
    let mut header: Vec<String> = vec!["word".into()];
    header.extend((0..ncl).map(|o| format!("class{o}")));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();

    let mut rows = Vec::new();
    let mut items = Vec::new();
    for w in 0..g.order() {
        let mut row = vec![element_human(g, w)];
        row.extend(table.rows[w].iter().map(|p| p.to_string()));
        rows.push(row);
        items.push(obj([
            ("word", element_json(g, w)),
            (
                "polys",
                Value::Array(
                    table.rows[w].iter().map(|p| Value::String(p.to_string())).collect(),
                ),
            ),
        ]));
    }
    let mut fields = preamble(ctx);
    fields.extend([
        ("classCount", Value::from(ncl as u64)),
        ("rows", Value::Array(items)),
    ]);
    Ok(Rendered {
        json: obj(fields),
        sections: vec![Section::new(None, &header_refs, rows)],
    })
}

fn cmd_reduce(ctx: &Context, word: &str) -> hecke0::Result<Rendered> {
    let g = &ctx.group;
    let rank = g.rank();
    let letters = parse_cli_word(word, rank)?;
    let w = g.element_from_word_idx(&letters)?;

    let classes = TwistedClasses::compute(g, &ctx.delta)?;
    let gamma = gamma_set(g, &ctx.delta, &classes)?;
    let sigma = sigma_table(g, &ctx.delta, &classes)?;
    let (pair_idx, sign) = reduce_tw(&gamma, &sigma, w)?;
    let pair = &gamma.pairs[pair_idx];
    let (min_elt, path) = reduce_to_min(g, &ctx.delta, &classes, w)?;

    let mut path_rows = Vec::new();
    let mut path_elements = Vec::new();
    let mut cur = w;
    for (i, &s) in path.iter().enumerate() {
        cur = conj_move(g, &ctx.delta, cur, s);
        path_rows.push(vec![
            (i + 1).to_string(),
            (s + 1).to_string(),
            element_human(g, cur),
            g.len_idx(cur).to_string(),
        ]);
        path_elements.push(element_json(g, cur));
    }

    let summary_rows = vec![
        vec!["word".into(), element_human(g, w)],
        vec!["length".into(), g.len_idx(w).to_string()],
        vec!["class".into(), classes.class_of(w).to_string()],
        vec!["imageBlock".into(), sigma.block_of(w).to_string()],
        vec!["imagePair".into(), pair_idx.to_string()],
        vec!["J".into(), genset_bits(pair.j, rank)],
        vec!["pairRep".into(), element_human(g, pair.rep as usize)],
        vec!["sign".into(), sign.to_string()],
        vec!["minimal".into(), element_human(g, min_elt)],
        vec!["minimalLength".into(), g.len_idx(min_elt).to_string()],
    ];
    let mut fields = preamble(ctx);
    fields.extend([
        ("word", element_json(g, w)),
        ("length", Value::from(g.len_idx(w))),
        ("class", Value::from(classes.class_of(w) as u64)),
        ("imageBlock", Value::from(sigma.block_of(w) as u64)),
        ("imagePair", Value::from(pair_idx as u64)),
        ("J", genset_json(pair.j)),
        ("pairRep", element_json(g, pair.rep as usize)),
        ("sign", Value::from(sign as i64)),
        ("minimal", element_json(g, min_elt)),
        (
            "path",
            Value::Array(path.iter().map(|&s| Value::from(s as u64)).collect()),
        ),
        ("pathElements", Value::Array(path_elements)),
    ]);
    Ok(Rendered {
        json: obj(fields),
        sections: vec![
            Section::new(None, &["field", "value"], summary_rows),
            Section::new(
                Some("conjugation path"),
                &["step", "generator", "element", "length"],
                path_rows,
            ),
        ],
    })
}

fn cmd_trace(ctx: &Context) -> hecke0::Result<Rendered> {
    let g = &ctx.group;
    let rank = g.rank();
    let classes = TwistedClasses::compute(g, &ctx.delta)?;
    let gamma = gamma_set(g, &ctx.delta, &classes)?;
    let tm = trace_matrix(g, &ctx.delta, &gamma)?;
    let tm_rank = tm.rank();
    let kernel = tm.left_kernel()?;

    let col_labels: Vec<String> = (0..(1u64 << rank))
        .map(|bits| genset_bits(GenSet::from_bits(bits), rank))
        .collect();
    let row_labels: Vec<String> = gamma
        .pairs
        .iter()
        .map(|p| format!("{}:{}", genset_bits(p.j, rank), element_human(g, p.rep as usize)))
        .collect();

    let mut matrix_header: Vec<String> = vec!["pair".into()];
    matrix_header.extend(col_labels.iter().cloned());
    let matrix_header_refs: Vec<&str> =
        matrix_header.iter().map(String::as_str).collect();
    let matrix_rows: Vec<Vec<String>> = tm
        .entries
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = vec![row_labels[i].clone()];
            r.extend(row.iter().map(|e| e.to_string()));
            r
        })
        .collect();

    let summary_rows = vec![
        vec!["rows".into(), tm.num_rows().to_string()],
        vec!["cols".into(), tm.num_cols().to_string()],
        vec!["rank".into(), tm_rank.to_string()],
        vec!["surjective".into(), (tm_rank == tm.num_cols()).to_string()],
        vec!["kernelDim".into(), kernel.len().to_string()],
    ];

    let mut kernel_header: Vec<String> = vec!["vector".into()];
    kernel_header.extend(row_labels.iter().cloned());
    let kernel_header_refs: Vec<&str> =
        kernel_header.iter().map(String::as_str).collect();
    let kernel_rows: Vec<Vec<String>> = kernel
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let mut r = vec![k.to_string()];
            r.extend((0..tm.num_rows()).map(|i| rational(&v.get(i))));
            r
        })
        .collect();

    let mut fields = preamble(ctx);
    fields.extend([
        ("rows", Value::from(tm.num_rows() as u64)),
        ("cols", Value::from(tm.num_cols() as u64)),
        ("rank", Value::from(tm_rank as u64)),
        ("surjective", Value::Bool(tm_rank == tm.num_cols())),
        (
            "rowLabels",
            Value::Array(row_labels.iter().map(|l| Value::String(l.clone())).collect()),
        ),
        (
            "colLabels",
            Value::Array(col_labels.iter().map(|l| Value::String(l.clone())).collect()),
        ),
        (
            "matrix",
            Value::Array(
                tm.entries
                    .iter()
                    .map(|row| {
                        Value::Array(row.iter().map(|&e| Value::from(e)).collect())
                    })
                    .collect(),
            ),
        ),
        (
            "kernel",
            Value::Array(
                kernel
                    .iter()
                    .map(|v| {
                        Value::Array(
                            (0..tm.num_rows())
                                .map(|i| Value::String(rational(&v.get(i))))
                                .collect(),
                        )
                    })
                    .collect(),
            ),
        ),
    ]);
    Ok(Rendered {
        json: obj(fields),
        sections: vec![
            Section::new(Some("trace matrix"), &matrix_header_refs, matrix_rows),
            Section::new(Some("summary"), &["field", "value"], summary_rows),
            Section::new(Some("kernel basis"), &kernel_header_refs, kernel_rows),
        ],
    })
}

fn cmd_verify(ctx: &Context, opts: VerifyOptions) -> hecke0::Result<(Rendered, u8)> {
    let reports = run_battery(&ctx.group, &ctx.delta, opts)?;
    let all_passed = hecke0::verify::all_passed(&reports);
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| vec![r.name.to_string(), r.status.to_string(), r.detail.clone()])
        .collect();
    let items: Vec<Value> = reports
        .iter()
        .map(|r| {
            obj([
                ("name", Value::String(r.name.to_string())),
                ("status", Value::String(r.status.to_string())),
                ("detail", Value::String(r.detail.clone())),
            ])
        })
        .collect();
    let counts = |status: CheckStatus| {
        reports.iter().filter(|r| r.status == status).count() as u64
    };
    let mut fields = preamble(ctx);
    fields.extend([
        ("passed", Value::from(counts(CheckStatus::Pass))),
        ("failed", Value::from(counts(CheckStatus::Fail))),
        ("skipped", Value::from(counts(CheckStatus::Skip))),
        ("allPassed", Value::Bool(all_passed)),
        ("checks", Value::Array(items)),
    ]);
    let rendered = Rendered {
        json: obj(fields),
        sections: vec![Section::new(None, &["check", "status", "detail"], rows)],
    };
    Ok((rendered, if all_passed { 0 } else { 1 }))
}

/// Parse a CLI word: dot-joined 1-based generator numbers, or `e`.
fn parse_cli_word(s: &str, rank: usize) -> hecke0::Result<Vec<usize>> {
    if s == "e" {
        return Ok(Vec::new());
    }
    s.split('.')
        .map(|part| {
            let n: usize = part.parse().map_err(|_| Error::InvalidSpec {
                spec: s.to_string(),
                reason: format!("`{part}` is not a generator number"),
            })?;
            if n == 0 || n > rank {
                return Err(Error::InvalidSpec {
                    spec: s.to_string(),
                    reason: format!(
                        "generator {n} out of range 1..={rank} (words are 1-based)"
                    ),
                });
            }
            Ok(n - 1)
        })
        .collect()
}

fn run(cli: &Cli) -> hecke0::Result<(Rendered, u8)> {
    let ctx = build_context(cli)?;
    match &cli.command {
        Command::Info => Ok((cmd_info(&ctx)?, 0)),
        Command::Classes => Ok((cmd_classes(&ctx)?, 0)),
        Command::Min => Ok((cmd_stratum(&ctx, "min")?, 0)),
        Command::Max => Ok((cmd_stratum(&ctx, "max")?, 0)),
        Command::Gamma => Ok((cmd_gamma(&ctx)?, 0)),
        Command::Center => Ok((cmd_center(&ctx)?, 0)),
        Command::Cocenter => Ok((cmd_cocenter(&ctx)?, 0)),
        Command::Classpoly => Ok((cmd_classpoly(&ctx)?, 0)),
        Command::Reduce { word } => Ok((cmd_reduce(&ctx, word)?, 0)),
        Command::Trace => Ok((cmd_trace(&ctx)?, 0)),
        Command::Verify => {
            cmd_verify(&ctx, VerifyOptions { seed: cli.seed, slow: cli.slow })
        }
    }
}

fn report_error(kind: &str, message: &str) {
    let payload = json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{payload}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = e.print();
                    return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
                }
                _ => {
                    report_error("UsageError", &e.to_string());
                    return ExitCode::from(2);
                }
            }
        }
    };
    match run(&cli) {
        Ok((rendered, code)) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = emit(&mut out, cli.format, &rendered) {
                report_error("IoError", &e.to_string());
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            report_error(e.kind(), &e.to_string());
            ExitCode::from(if e.is_verification_failure() { 1 } else { 2 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn words_parse_both_ways() {
        assert_eq!(parse_cli_word("e", 3).unwrap(), Vec::<usize>::new());
        assert_eq!(parse_cli_word("1.2.1", 3).unwrap(), vec![0, 1, 0]);
        assert!(parse_cli_word("0", 3).is_err());
        assert!(parse_cli_word("4", 3).is_err());
        assert!(parse_cli_word("x", 3).is_err());
        assert_eq!(word_human(&[]), "e");
        assert_eq!(word_human(&[0, 1, 0]), "1.2.1");
    }
}
