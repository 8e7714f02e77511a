use std::path::Path;

use num_bigint::BigUint;

use kclab::automata::{dfa_to_text, machines, parse_machine, CombineOp, Dfa, Dpda, Machine, RunOptions, RunOutcome, StepKind};
use kclab::charseq::{self, Synthesis, VerdictOptions};
use kclab::codec;
use kclab::dcfl::{self, Case, DiffResult, ExperimentParams, Verification};
use kclab::kolmogorov::{self, ResidualDecoder, ResidualOrder, Suite};
use kclab::rec::{self, SemiDecider};
use kclab::zoo::{self, Enumerator, Language, ResidualQuery};
use kclab::{Alphabet, Word};

use crate::{
    ChiArgs, Command, DcflCmd, Decode, DfaCmd, DpdaCmd, Encode, Failure, KcCmd, MachineSource, OtherSource, RecCmd,
    Report, ResidualSource, TableArgs, VerdictArgs, ZooCmd,
};

type Outcome = Result<Report, Failure>;

pub fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Encode(c) => encode(c),
        Command::Decode(c) => decode(c),
        Command::Dfa(c) => dfa_cmd(c),
        Command::Dpda(c) => dpda_cmd(c),
        Command::Zoo(c) => zoo_cmd(c),
        Command::Chi(a) => chi(a),
        Command::Table(a) => table(a),
        Command::Synth(a) => synth(a),
        Command::Verdict(a) => verdict(a),
        Command::Kc(c) => kc_cmd(c),
        Command::Dcfl(c) => dcfl_cmd(c),
        Command::Rec(c) => rec_cmd(c),
    }
}

fn word(s: &str) -> Result<Word, Failure> {
    Ok(s.parse::<Word>()?)
}

fn lang(name: &str) -> Result<Language, Failure> {
    Ok(zoo::oracle(name)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn load(file: Option<&Path>, name: Option<&str>) -> Result<Machine, Failure> {
    match (file, name) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))?;
            Ok(parse_machine(&text)?)
        }
        (None, Some(name)) => machines::load(name).ok_or_else(|| {
            Failure::Domain(format!("unknown machine {name:?}; shipped: {}", machines::names().join(", ")))
        }),
        (None, None) => Err(Failure::Usage("give --file or --machine".to_string())),
    }
}

fn source_name(file: Option<&Path>, name: Option<&str>) -> String {
    match (file, name) {
        (Some(p), _) => p.display().to_string(),
        (None, Some(n)) => n.to_string(),
        (None, None) => String::new(),
    }
}

fn expect_dfa(m: Machine) -> Result<Dfa, Failure> {
    let kind = m.kind();
    m.into_dfa().ok_or_else(|| Failure::Domain(format!("expected a dfa, got a {kind}")))
}

fn expect_dpda(m: Machine) -> Result<Dpda, Failure> {
    let kind = m.kind();
    m.into_dpda().ok_or_else(|| Failure::Domain(format!("expected a dpda, got a {kind}")))
}

fn dfa_of(s: &MachineSource) -> Result<Dfa, Failure> {
    expect_dfa(load(s.file.as_deref(), s.machine.as_deref())?)
}

fn dpda_of(s: &MachineSource) -> Result<Dpda, Failure> {
    expect_dpda(load(s.file.as_deref(), s.machine.as_deref())?)
}

fn other_dfa(o: &OtherSource) -> Result<Option<Dfa>, Failure> {
    if o.other.is_none() && o.other_machine.is_none() {
        return Ok(None);
    }
    Ok(Some(expect_dfa(load(o.other.as_deref(), o.other_machine.as_deref())?)?))
}

fn encode(c: &Encode) -> Outcome {
    let mut r = Report::new();
    match c {
        Encode::Bij { n } => {
            let w = codec::nat_to_word(n);
            r.primary("word", &w).value("length", w.len());
        }
        Encode::Selfdelim { x } => {
            let code = codec::self_delim(&word(x)?)?;
            r.primary("code", &code).value("length", code.len());
        }
        Encode::Pair { x, y, z } => {
            let (x, y) = (word(x)?, word(y)?);
            let n = match z {
                Some(z) => codec::triple(&x, &y, &word(z)?)?,
                None => codec::pair(&x, &y)?,
            };
            r.primary("pair", &n).value("word", codec::nat_to_word(&n));
        }
    }
    Ok(r)
}

fn decode(c: &Decode) -> Outcome {
    let mut r = Report::new();
    match c {
        Decode::Bij { w } => {
            r.primary("n", codec::word_to_nat(&word(w)?)?);
        }
        Decode::Selfdelim { s } => {
            let (x, rest) = codec::self_delim_decode(&word(s)?)?;
            r.value("x", x).value("rest", rest);
        }
        Decode::Pair { n, triple } => {
            if *triple {
                let (x, y, z) = codec::untriple(n)?;
                r.value("x", x).value("y", y).value("z", z);
            } else {
                let (x, y) = codec::unpair(n)?;
                r.value("x", x).value("y", y);
            }
        }
    }
    Ok(r)
}

fn dfa_cmd(c: &DfaCmd) -> Outcome {
    let mut r = Report::new();
    match c {
        DfaCmd::Run { source, input } => {
            let d = dfa_of(source)?;
            let run = d.run(&word(input)?)?;
            r.primary("accepted", yes_no(run.accepted)).value("state", run.state);
        }
        DfaCmd::Combine { source, op, other } => {
            let op: CombineOp = op.parse().map_err(Failure::Usage)?;
            let d = dfa_of(source)?;
            let o = other_dfa(other)?;
            let out = d.combine(op, o.as_ref())?;
            r.value("operation", op.name()).value("states", out.state_count()).block("machine", dfa_to_text(&out));
        }
        DfaCmd::Minimize { source } => {
            let d = dfa_of(source)?;
            let min = d.minimize();
            r.value("states_before", d.state_count()).value("states", min.state_count()).block("machine", dfa_to_text(&min));
        }
        DfaCmd::Equiv { source, other } => {
            let d = dfa_of(source)?;
            let o = other_dfa(other)?.ok_or_else(|| Failure::Usage("give --other or --other-machine".to_string()))?;
            match d.distinguishing_word(&o)? {
                None => {
                    r.primary("equivalent", "yes");
                }
                Some(w) => {
                    r.primary("equivalent", "no").value("witness", format!("{w:?}"));
                }
            }
        }
    }
    Ok(r)
}

fn dpda_cmd(c: &DpdaCmd) -> Outcome {
    let DpdaCmd::Run { source, input, epsilon_limit } = c;
    let m = dpda_of(source)?;
    let opts = RunOptions { epsilon_limit: *epsilon_limit, checkpoints: Vec::new() };
    let trace = m.run_with(&word(input)?, &opts)?;
    let rows = trace
        .steps
        .iter()
        .map(|s| {
            let kind = match s.kind {
                StepKind::Start => "start".to_string(),
                StepKind::Input(a) => format!("read {}", a as char),
                StepKind::Epsilon => "eps".to_string(),
            };
            vec![s.position.to_string(), kind, s.state.to_string(), s.height.to_string()]
        })
        .collect();
    let mut r = Report::new();
    r.primary("accepted", yes_no(trace.accepted))
        .value("final_state", trace.final_state)
        .value("final_stack", &trace.final_stack)
        .value(
            "outcome",
            match trace.outcome {
                RunOutcome::Completed => "completed".to_string(),
                RunOutcome::Stuck { position } => format!("stuck at {position}"),
            },
        )
        .table("trace", &["pos", "step", "state", "height"], rows);
    Ok(r)
}

fn zoo_cmd(c: &ZooCmd) -> Outcome {
    let mut r = Report::new();
    match c {
        ZooCmd::List { verbose: false } => {
            r.block("languages", zoo::names().join("\n"));
        }
        ZooCmd::List { verbose: true } => {
            let rows = zoo::all()
                .iter()
                .map(|l| {
                    vec![
                        l.name().to_string(),
                        l.class().name().to_string(),
                        l.alphabet().symbols().iter().map(|&s| s as char).collect(),
                        l.description().to_string(),
                    ]
                })
                .collect();
            r.table("languages", &["name", "class", "alphabet", "description"], rows);
        }
        ZooCmd::Member { lang: name, word: w } => {
            let l = lang(name)?;
            r.primary("member", yes_no(l.member(&word(w)?)?)).value("class", l.class().name());
        }
        ZooCmd::Enumerate { enumerator, i, alphabet } => {
            let a = Alphabet::new(alphabet.as_bytes())?;
            let e = Enumerator::parse(enumerator, &a)?;
            r.primary("word", e.enumerate_big(i)?).value("enumerator", e.name());
        }
        ZooCmd::Nth { lang: name, x, n, enumerator, complement, include_empty, budget } => {
            let l = lang(name)?;
            let x = word(x)?;
            let e = Enumerator::parse(enumerator, l.alphabet())?;
            let q = ResidualQuery {
                language: &l,
                x: &x,
                enumerator: &e,
                complement: *complement,
                include_empty: *include_empty,
                budget: *budget,
            };
            let hit = q.nth(*n)?;
            r.primary("y", &hit.word).value("index", hit.index).value("length", hit.word.len());
        }
    }
    Ok(r)
}

fn chi(a: &ChiArgs) -> Outcome {
    let seq = charseq::chi_prefix(&lang(&a.lang)?, &word(&a.x)?, a.n)?;
    let mut r = Report::new();
    r.primary("chi", &seq.bits);
    Ok(r)
}

fn table(a: &TableArgs) -> Outcome {
    let t = charseq::residual_table(&lang(&a.lang)?, a.p, a.n, a.budget)?;
    let rows = t.labels.iter().zip(&t.rows).map(|(l, b)| vec![format!("{l:?}"), b.to_string()]).collect();
    let mut r = Report::new();
    r.value("language", &t.language)
        .value("p", t.p)
        .value("n", t.n)
        .value("distinct_rows", t.distinct_row_count())
        .table("rows", &["x", "chi"], rows);
    Ok(r)
}

fn synth(a: &TableArgs) -> Outcome {
    let mut r = Report::new();
    match charseq::synthesize_dfa(&lang(&a.lang)?, a.p, a.n, a.budget)? {
        Synthesis::Dfa(d) => {
            r.primary("result", format!("dfa with {} states", d.state_count())).block("machine", dfa_to_text(&d));
        }
        Synthesis::Inconclusive { failure, row } => {
            r.primary("result", format!("inconclusive ({failure})")).value("row", format!("{row:?}"));
        }
    }
    Ok(r)
}

fn verdict(a: &VerdictArgs) -> Outcome {
    let opts = VerdictOptions { cell_budget: a.budget, ..Default::default() };
    let v = charseq::regularity_verdict(&lang(&a.lang)?, a.p_max, a.n, &Suite::standard(), &opts)?;
    let counts = v.counts.iter().map(|c| vec![c.p.to_string(), c.rows.to_string(), c.distinct.to_string()]).collect();
    let rows = v
        .rows
        .iter()
        .map(|c| vec![format!("{:?}", c.label), c.bits.to_string(), c.c.to_string(), c.c_given_n.to_string()])
        .collect();
    let mut r = Report::new();
    r.primary("verdict", v.verdict)
        .value("language", &v.language)
        .value("p_max", v.p_max)
        .value("n", v.n)
        .value("suite", &v.suite_version)
        .table("counts", &["P", "rows", "distinct"], counts)
        .table("rows", &["x", "chi", "C", "C|n"], rows)
        .value("max_C", v.max_c)
        .value("max_C_given_n", v.max_c_given_n);
    match &v.synthesis {
        Synthesis::Dfa(d) => r.block("hypothesis", dfa_to_text(d)),
        Synthesis::Inconclusive { failure, row } => r.value("synthesis", format!("{failure} at {row:?}")),
    };
    Ok(r)
}

fn estimate_report(r: &mut Report, e: &kolmogorov::Estimate) {
    let (tag, program) = e.witness_hex();
    r.primary("C", e.value)
        .value("decoder", &e.decoder_label)
        .value("suite", &e.suite_version)
        .value("tag", tag)
        .value("program", program);
}

fn kc_cmd(c: &KcCmd) -> Outcome {
    let suite = Suite::standard();
    let mut r = Report::new();
    match c {
        KcCmd::Estimate { word: w, side, alphabet } => {
            let x = word(w)?;
            let e = match alphabet {
                Some(a) => suite.estimate_over(&Alphabet::new(a.as_bytes())?, &x, side.as_ref())?,
                None => suite.estimate(&x, side.as_ref())?,
            };
            estimate_report(&mut r, &e);
        }
        KcCmd::Residual { source, x, n, order, prime_budget } => residual(&mut r, source, x, n, order, *prime_budget)?,
        KcCmd::Incompressible { n, side } => {
            let inc = kolmogorov::find_incompressible(*n, &suite, side.as_ref())?;
            r.primary("word", &inc.word).value("compressible", inc.compressible).value("total", 1u64 << n);
        }
        KcCmd::Census { n_max, c } => {
            let rows = kolmogorov::a_n_census(*n_max, c, &suite)?
                .iter()
                .map(|row| {
                    vec![
                        row.n.to_string(),
                        row.c.to_string(),
                        row.threshold.to_string(),
                        row.count.to_string(),
                        row.prefix_closed.to_string(),
                        row.floor_log_bound().to_string(),
                    ]
                })
                .collect();
            r.value("suite", suite.version())
                .table("census", &["n", "c", "threshold", "d(A_n)", "prefix_closed", "2^(floor_log_n+c+1)"], rows);
        }
        KcCmd::Substring { word: w, split } => {
            let [u, v, wl] = split[..] else {
                return Err(Failure::Usage("--split takes three lengths".to_string()));
            };
            let rep = kolmogorov::substring_bound_check(&suite, &word(w)?, (u, v, wl))?;
            r.primary("holds", yes_no(rep.holds()))
                .value("C(x)", rep.c_x)
                .value("C(x) base suite", rep.c_x_base)
                .value("C(v)", rep.c_v)
                .value("l(uw)", rep.l_uw)
                .value("composite", rep.composite)
                .value("log_term", rep.log_term)
                .value("log_bound", rep.log_bound)
                .value("within_log_bound", yes_no(rep.within_log_bound()))
                .value("suite", &rep.suite_version);
        }
    }
    Ok(r)
}

fn residual(r: &mut Report, source: &ResidualSource, x: &str, n: &BigUint, order: &str, prime_budget: u64) -> Result<(), Failure> {
    let (name, dfa) = match &source.lang {
        Some(l) => {
            let l = lang(l)?;
            let d = l.reference_dfa().ok_or_else(|| Failure::Domain(format!("{} has no reference dfa", l.name())))?;
            (l.name().to_string(), d)
        }
        None => {
            let d = expect_dfa(load(source.file.as_deref(), source.machine.as_deref())?)?;
            (source_name(source.file.as_deref(), source.machine.as_deref()), d)
        }
    };
    let order = match order {
        "length-lex" => ResidualOrder::LengthLex,
        "prime" => ResidualOrder::Prime { budget: prime_budget },
        other => return Err(Failure::Usage(format!("unknown order {other:?}"))),
    };
    let x = word(x)?;
    let q = dfa.run(&x)?.state;
    let dec = ResidualDecoder::new(&name, dfa, order);
    let y = dec
        .nth_from_state(q, n, kolmogorov::RESIDUAL_MAX_LEN)
        .ok_or_else(|| Failure::Domain(format!("no {n}-th word of L_x within the decoder's range")))?;
    let program = dec.program(q, n);
    let suite = Suite::standard().with(dec);
    let e = suite.estimate(&y, None)?;
    let sd = codec::self_delim_natural(n).len();
    r.primary("y", &y)
        .value("state", q)
        .value("C(y)", e.value)
        .value("l(self_delim(n))", sd)
        .value("overhead", e.value as i64 - sd as i64)
        .value("witness_len", suite.tag(suite.len() - 1).len() + program.len())
        .value("decoder", &e.decoder_label)
        .value("suite", suite.version());
    Ok(())
}

fn dcfl_cmd(c: &DcflCmd) -> Outcome {
    let mut r = Report::new();
    match c {
        DcflCmd::Profile { source, input } => {
            let m = dpda_of(source)?;
            let p = dcfl::stack_profile(&m, &word(input)?)?;
            r.primary("profile", p.sparkline())
                .value("heights", join(&p.heights))
                .value("never_popped", join(&p.suffix_min))
                .value("final_stack", &p.final_stack)
                .value("accepted", yes_no(p.accepted));
            if let RunOutcome::Stuck { position } = p.outcome {
                r.value("stuck_at", position);
            }
        }
        DcflCmd::Classify { source, u, v, c1 } => {
            let m = dpda_of(source)?;
            let c1 = c1.unwrap_or_else(|| dcfl::default_c1(&m));
            let cl = dcfl::case_classify(&m, &word(u)?, &word(v)?, c1)?;
            r.primary("case", cl.case.name()).value("c1", cl.c1).value("height_after_u", cl.height_after_u);
            match cl.case {
                Case::Case1 { position, height } => r.value("position", position).value("height", height),
                Case::Case2 { min_height } => r.value("min_height", min_height),
            };
            r.value("v_heights", join(&cl.v_heights));
        }
        DcflCmd::Cycle { source, x, y, max_blocks } => {
            let m = dpda_of(source)?;
            match dcfl::cycle_detect(&m, &word(x)?, &word(y)?, *max_blocks)? {
                None => {
                    r.primary("cycle", "none (bounded stack)").value("reading_order", "y^k x");
                }
                Some(c) => {
                    r.primary("cycle", format!("preamble {} period {} growth {}", c.preamble, c.period, c.growth))
                        .value("triple", format!("({}, {}, {})", c.triple.state, c.triple.offset, c.triple.top as char))
                        .value("heights", format!("{} -> {}", c.heights.0, c.heights.1))
                        .value("triple_space", c.triple_space)
                        .value("within_triple_bound", yes_no(c.within_triple_bound()))
                        .value("reading_order", "y^k x");
                }
            }
        }
        DcflCmd::Experiment { source, x, y, blocks, omega, n, c1, max_blocks, w_budget, oracle, oracle_len } => {
            let m = dpda_of(source)?;
            let mut p = ExperimentParams::new(word(x)?, word(y)?, *blocks, word(omega)?, *n);
            p.c1 = *c1;
            p.max_blocks = *max_blocks;
            p.w_budget = *w_budget;
            if let Some(o) = oracle {
                p.oracle = Some((lang(o)?, *oracle_len));
            }
            experiment(&mut r, &m, &p, source)?;
        }
        DcflCmd::Diff { source, lang: name, max_len } => {
            let m = dpda_of(source)?;
            match dcfl::dpda_vs_oracle_diff(&m, &lang(name)?, *max_len)? {
                DiffResult::Agreement { checked, max_len } => {
                    r.primary("result", "agreement").value("checked", checked).value("lengths", format!("0..{max_len}"));
                }
                DiffResult::Disagreement { word: w, machine, oracle, checked } => {
                    r.primary("result", "disagreement")
                        .value("word", format!("{w:?}"))
                        .value("machine", yes_no(machine))
                        .value("oracle", yes_no(oracle))
                        .value("checked", checked);
                }
            }
        }
    }
    Ok(r)
}

fn experiment(r: &mut Report, m: &Dpda, p: &ExperimentParams, source: &MachineSource) -> Result<(), Failure> {
    let e = dcfl::kcdcfl_experiment(m, p, &Suite::standard())?;
    r.primary("case", e.classification.case.name())
        .value("machine", source_name(source.file.as_deref(), source.machine.as_deref()))
        .value("reading_order", "u = y^k x")
        .value("u", format!("{:?}", e.u))
        .value("v", format!("{:?}", e.v))
        .value("c1", e.classification.c1)
        .value("profile_v", e.classification.v_heights.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" "))
        .value("stack_u", &e.stack_u)
        .value("stack_uv", &e.stack_uv)
        .value("acceptance", &e.acceptance);
    match &e.verification {
        Verification::NotNeeded => {
            r.value("verification", "not needed (Case1)");
        }
        Verification::BoundedStack => {
            r.value("verification", "bounded stack along y");
        }
        Verification::Checked(t) => {
            r.value("verification", if t.verified() { "passed" } else { "failed" })
                .value("cycle", format!("preamble {} period {} growth {}", t.cycle.preamble, t.cycle.period, t.cycle.growth))
                .value("u_prime_blocks", t.blocks)
                .value("l(u_prime)", t.u_len)
                .value("C(l(u_prime))", t.c_len)
                .value("stack_u_prime", &t.stack_u_prime)
                .value("same_state", yes_no(t.same_state))
                .value("same_top", yes_no(t.same_top))
                .value("same_stream", yes_no(t.same_stream));
        }
    }
    r.value("w", e.w.as_ref().map_or("none within budget".to_string(), |w| format!("{w:?}")))
        .value("C(v)", e.c_v)
        .value("C(w)", e.c_w.map_or("-".to_string(), |c| c.to_string()))
        .value("2loglog(l(u))", format!("{:.3}", e.log_log_reference))
        .value("bits_per_stack_symbol", e.bits_per_symbol)
        .value("suite", &e.suite_version);
    Ok(())
}

fn join(v: &[usize]) -> String {
    v.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" ")
}

fn rec_cmd(c: &RecCmd) -> Outcome {
    let suite = Suite::standard();
    let mut r = Report::new();
    match c {
        RecCmd::Lambda { lang: name, n } => {
            let l = rec::lambda_prefix(&lang(name)?, *n, &suite)?;
            r.primary("lambda", &l.sequence.bits)
                .value("provenance", &l.sequence.provenance)
                .value("C(lambda|n)", l.c_given_n.value)
                .value("decoder", &l.c_given_n.decoder_label);
            if let Some(e) = &l.c_given_n_installed {
                r.value("C(lambda|n) installed", e.value).value("installed_suite", &e.suite_version);
            }
        }
        RecCmd::Halting { t, n } => {
            let k = rec::halting_prefix(*t, *n)?;
            r.primary("k", &k.bits).value("provenance", &k.provenance);
        }
        RecCmd::Sparse { n, kbits, t } => {
            let k = match kbits {
                Some(k) => word(k)?,
                None => rec::halting_prefix(*t, rec::sparse_positions(*n).len())?.bits,
            };
            let s = rec::sparse_sequence(&k, *n, &suite)?;
            r.primary("h", &s.sequence.bits)
                .value("provenance", &s.sequence.provenance)
                .value("positions", join(&s.positions))
                .value("kbits", &k)
                .value("C(h)", s.c.as_ref().map_or("-".to_string(), |e| e.value.to_string()))
                .value("loglog(n)", format!("{:.3}", s.log_log_n()));
        }
        RecCmd::Reprobe { semi, n, t } => {
            let s = SemiDecider::parse(semi)?;
            let p = rec::re_upperbound_probe(&s, *n, *t, &suite)?;
            r.primary("C(lambda|n)", p.estimate.value)
                .value("semi", &p.semi)
                .value("lambda", &p.lambda)
                .value("m", p.m)
                .value("witness_len", p.witness_len)
                .value("floor_log_n", p.floor_log_n)
                .value("c", p.c)
                .value("holds", yes_no(p.holds()))
                .value("replays", yes_no(p.replays))
                .value("decoder", &p.estimate.decoder_label)
                .value("suite", &p.estimate.suite_version);
        }
    }
    Ok(r)
}
