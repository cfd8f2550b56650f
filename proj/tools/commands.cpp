#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qpmd/derive.hpp"
#include "qpmd/design.hpp"
#include "qpmd/flats.hpp"
#include "qpmd/io.hpp"
#include "qpmd/qcount.hpp"
#include "qpmd/qmatroid.hpp"

namespace qpmd::cli {

void Report::line(const std::string& key, const std::string& value, const std::string& label) {
    if (machine_)
        out_ << key << '=' << value << '\n';
    else
        out_ << (label.empty() ? key : label) << ": " << value << '\n';
}

void Report::text(const std::string& s) {
    if (!machine_) out_ << s << '\n';
}

namespace {

using Clock = std::chrono::steady_clock;

std::string ms_since(Clock::time_point start) {
    const auto us = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", static_cast<double>(us) / 1000.0);
    return buf;
}

// Timing goes to stderr so that stdout stays byte-identical across runs.
void timing(Io io, const std::string& what, Clock::time_point start) { io.err << "time " << what << ": " << ms_since(start) << " ms\n"; }

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string slurp(Io io, const std::string& input) {
    std::ostringstream ss;
    if (input.empty() || input == "-") {
        ss << io.in.rdbuf();
    } else {
        std::ifstream f(input, std::ios::binary);
        if (!f) throw UsageError("cannot open '" + input + "'");
        ss << f.rdbuf();
    }
    return ss.str();
}

DesignFile parse_design_text(const std::string& text) {
    std::istringstream in(text);
    try {
        return read_design(in);
    } catch (const FormatError& e) {
        throw UsageError(std::string("bad design file: ") + e.what());
    }
}

DesignOptions design_opts(const Globals& g) { return {g.max_subspaces, g.jobs}; }

void emit(Io io, const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        io.out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + out_path + "'");
    f << text;
}

std::string verdict_text(const Verdict& v) { return v.ok ? "pass" : v.str(); }

std::optional<SteinerSystem> as_steiner(const Design& d, const Globals& g, Report& rep) {
    if (d.params().lambda != 1) {
        rep.line("steiner", "no (lambda != 1)", "Steiner system");
        return std::nullopt;
    }
    try {
        return SteinerSystem::from_design(d, design_opts(g));
    } catch (const std::invalid_argument& e) {
        rep.line("steiner", std::string("no (") + e.what() + ")", "Steiner system");
        return std::nullopt;
    }
}

}  // namespace

int cmd_qbinom(const Globals& g, Io io, unsigned n, unsigned m, unsigned q) {
    field_of_order(q);
    Report rep(io.out, g.machine);
    rep.line("value", to_string(gaussian_binomial(n, m, q)),
             "[" + std::to_string(n) + "," + std::to_string(m) + "]_" + std::to_string(q));
    return ok;
}

int cmd_params(const Globals& g, Io io, unsigned t, unsigned n, unsigned k, const std::string& lambda, unsigned q) {
    const DesignParams p = DesignParams::make(t, n, k, BigInt(lambda), q);
    Report rep(io.out, g.machine);
    rep.line("params", p.str(), "parameters");
    const Admissibility adm = is_admissible(p);
    rep.line("admissible", adm.admissible ? "yes" : "no");
    for (unsigned i = 0; i < adm.lambdas.size(); ++i) rep.line("lambda_" + std::to_string(i), to_string(adm.lambdas[i]));
    if (adm.admissible) rep.line("blocks", to_string(adm.lambdas[0]));
    try {
        rep.line("supplementary", supplementary_params(p).str());
    } catch (const std::exception& e) {
        rep.line("supplementary", std::string("undefined (") + e.what() + ")");
    }
    try {
        rep.line("dual", dual_params(p).str());
    } catch (const std::exception& e) {
        rep.line("dual", std::string("undefined (") + e.what() + ")");
    }
    if (p.lambda == 1 && t < k && k < n) {
        for (auto kind : {DerivedKind::independent_t1, DerivedKind::circuit_t1, DerivedKind::circuit_t2}) {
            const std::string key = "derived." + to_string(kind);
            try {
                rep.line(key, derived_params(p, kind).str());
                rep.line(key + ".blocks", to_string(derived_block_count(p, kind)));
            } catch (const std::exception& e) {
                rep.line(key, std::string("undefined (") + e.what() + ")");
            }
        }
    }
    return ok;
}

int cmd_admissible(const Globals& g, Io io, unsigned n, unsigned q) {
    if (n < 3) throw UsageError("STS admissibility needs n >= 3");
    Report rep(io.out, g.machine);
    rep.line("sts_admissible", sts_admissible(n) ? "yes" : "no", "STS(" + std::to_string(n) + ";" + std::to_string(q) + ") admissible");
    if (n >= 7) {
        const CorollaryParams c = corollary_sts_params(n, q);
        rep.line("corollary_admissible", c.admissible ? "yes" : "no", "derived parameter sets admissible");
        for (std::size_t i = 0; i < c.sets.size(); ++i) {
            const std::string key = "set" + std::to_string(i + 1);
            rep.line(key, c.sets[i].str());
            rep.line(key + ".admissible", is_admissible(c.sets[i]).admissible ? "yes" : "no");
        }
    }
    return ok;
}

int cmd_tables(const Globals& g, Io io) {
    Report rep(io.out, g.machine);
    rep.text("Designs from an STS(13;2)");
    const auto t1 = corollary_sts_params(13, 2);
    for (std::size_t i = 0; i < t1.sets.size(); ++i) rep.line("sts13." + std::to_string(i + 1), t1.sets[i].str(), "  (" + std::to_string(i + 1) + ")");
    rep.text("Designs from an STS(7;q)");
    for (unsigned q = 2; q <= 5; ++q) {
        const auto t2 = corollary_sts_params(7, q);
        for (std::size_t i = 0; i < t2.sets.size(); ++i)
            rep.line("sts7.q" + std::to_string(q) + "." + std::to_string(i + 1), t2.sets[i].str(),
                     "  q=" + std::to_string(q) + " (" + std::to_string(i + 1) + ")");
    }
    return ok;
}

int cmd_spread(const Globals& g, Io io, unsigned n, unsigned k, unsigned q, const std::string& out_path) {
    const auto start = Clock::now();
    const FieldSpec spec = field_of_order(q);
    const SteinerSystem s = desarguesian_spread(n, k, spec);
    emit(io, out_path, format_design(s.design()));
    if (!out_path.empty() && out_path != "-") {
        Report rep(io.out, g.machine);
        rep.line("params", s.params().str(), "spread");
        rep.line("blocks", std::to_string(s.design().block_count()));
    }
    timing(io, "spread", start);
    return ok;
}

int cmd_verify(const Globals& g, Io io, const std::string& input) {
    const auto start = Clock::now();
    const DesignFile f = parse_design_text(slurp(io, input));
    const Design& d = f.design;
    Report rep(io.out, g.machine);
    rep.line("params", d.params().str(), "parameters");
    rep.line("blocks", std::to_string(d.block_count()));
    const DesignVerification v = verify_design(d, design_opts(g));
    rep.line("strategy", v.strategy);
    if (v.ok) {
        rep.line("verified", "yes");
    } else {
        rep.line("verified", "no");
        rep.line("failing_t_space", format_subspace(*v.failing), "failing t-space");
        rep.line("failing_count", std::to_string(v.count), "blocks through it");
    }
    timing(io, "verify", start);
    return v.ok ? ok : failed;
}

int cmd_derive(const Globals& g, Io io, const std::string& input, const std::string& kind_name, const std::string& out_path) {
    const auto start = Clock::now();
    DerivedKind kind;
    try {
        kind = parse_derived_kind(kind_name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const std::string text = slurp(io, input);
    const DesignFile f = parse_design_text(text);
    // With the design on stdout the report moves to stderr.
    const bool to_stdout = out_path.empty() || out_path == "-";
    Report rep(to_stdout ? io.err : io.out, g.machine);
    rep.line("source", f.design.params().str(), "source");
    const auto s = as_steiner(f.design, g, rep);
    if (!s) return failed;

    const Design d = derive_design(*s, kind, design_opts(g));
    const DesignVerification v = verify_design(d, design_opts(g));
    rep.line("derived", d.params().str(), "derived design");
    rep.line("kind", to_string(kind));
    rep.line("lambda", to_string(d.params().lambda));
    rep.line("blocks", std::to_string(d.block_count()));
    rep.line("expected_blocks", to_string(derived_block_count(s->params(), kind)), "expected blocks");
    rep.line("verified", v.ok ? "yes" : "no (t-space [" + format_subspace(*v.failing) + "] in " + std::to_string(v.count) + " blocks)");
    emit(io, out_path, format_design(d, {"derived kind=" + to_string(kind) + " from=" + hex64(fnv1a(text))}));
    timing(io, "derive", start);
    const bool count_ok = BigInt(d.block_count()) == derived_block_count(s->params(), kind);
    return v.ok && count_ok ? ok : failed;
}

int cmd_flats(const Globals& g, Io io, const std::string& input, const std::string& out_path) {
    const auto start = Clock::now();
    const std::string text = slurp(io, input);
    Report rep(io.out, g.machine);
    std::optional<FlatFamily> fam;
    if (text.rfind("FLATS v1", 0) == 0) {
        std::istringstream in(text);
        try {
            fam = read_flats(in);
        } catch (const FormatError& e) {
            throw UsageError(std::string("bad flats file: ") + e.what());
        }
        rep.line("source", "explicit family");
    } else {
        const DesignFile f = parse_design_text(text);
        const auto s = as_steiner(f.design, g, rep);
        if (!s) return failed;
        rep.line("source", "induced by " + s->params().str());
        fam = induced_flat_family(*s, g.max_subspaces);
    }
    rep.line("members", std::to_string(fam->members().size()));
    const Verdict fv = check_flat_axioms(*fam);
    rep.line("flat_axioms", verdict_text(fv), "(F1)-(F3)");
    bool good = fv.ok;
    if (fv.ok) {
        const Verdict sm = check_semimodular(*fam), jd = check_jordan_dedekind(*fam);
        rep.line("semimodular", verdict_text(sm));
        rep.line("jordan_dedekind", verdict_text(jd), "Jordan-Dedekind");
        rep.line("rank", std::to_string(rank_from_flats(*fam, Subspace::full(fam->spec(), fam->ambient_dim()))));
        good = sm.ok && jd.ok;
    }
    if (!out_path.empty()) emit(io, out_path, format_flats(*fam));
    timing(io, "flats", start);
    return good ? ok : failed;
}

namespace {

RankOracle load_matroid(const Globals& g, Io io, const MatroidArgs& m) {
    const auto colon = m.preset.find(':');
    const std::string kind = m.preset.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : m.preset.substr(colon + 1);
    auto need_ambient = [&] {
        if (m.n == 0 || m.q == 0) throw UsageError("preset '" + kind + "' needs --n and --q");
        return field_of_order(m.q);
    };
    if (kind == "uniform") {
        if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos) throw UsageError("use uniform:<k>");
        const unsigned k = static_cast<unsigned>(std::stoul(arg));
        if (k > m.n) throw UsageError("uniform rank k exceeds n");
        return uniform_matroid(need_ambient(), m.n, k);
    }
    if (kind == "free") return free_matroid(need_ambient(), m.n);
    if (kind == "representable") {
        Matrix gm = [&] {
            try {
                return read_matrix_file(arg);
            } catch (const FormatError& e) {
                throw UsageError(std::string("bad matrix file: ") + e.what());
            } catch (const std::runtime_error& e) {
                throw UsageError(e.what());
            }
        }();
        const FieldSpec base(gm.spec().p(), 1);
        return representable_matroid(gm, base, static_cast<unsigned>(gm.cols()));
    }
    if (kind == "steiner") {
        const DesignFile f = parse_design_text(slurp(io, arg));
        Report rep(io.err, g.machine);
        const auto s = as_steiner(f.design, g, rep);
        if (!s) throw UsageError("'" + arg + "' is not a Steiner system");
        return induced_rank_oracle(*s);
    }
    throw UsageError("unknown matroid preset '" + m.preset + "' (uniform:<k>, free, representable:<file>, steiner:<file>)");
}

}  // namespace

int cmd_rank(const Globals& g, Io io, const MatroidArgs& m, const std::string& subspace) {
    const RankOracle r = load_matroid(g, io, m);
    Subspace a = Subspace::zero(r.spec(), r.ambient_dim());
    try {
        a = parse_subspace(subspace, r.spec(), r.ambient_dim());
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad subspace: ") + e.what());
    }
    Report rep(io.out, g.machine);
    rep.line("subspace", format_subspace(a));
    rep.line("dim", std::to_string(a.dim()));
    rep.line("rank", std::to_string(r.rank(a)));
    rep.line("independent", is_independent(r, a) ? "yes" : "no");
    rep.line("circuit", is_circuit(r, a) ? "yes" : "no");
    rep.line("flat", is_flat(r, a) ? "yes" : "no");
    const Subspace c = closure(r, a);
    rep.line("closure", c.dim() == 0 ? std::string(r.ambient_dim(), '0') : format_subspace(c));
    return ok;
}

int cmd_axioms(const Globals& g, Io io, const MatroidArgs& m, int pair_dim, std::uint64_t sample_pairs, std::uint64_t seed) {
    const auto start = Clock::now();
    const RankOracle r = load_matroid(g, io, m);
    Report rep(io.out, g.machine);
    rep.line("matroid", r.name().empty() ? m.preset : r.name());
    RankAxiomOptions opts;
    opts.max_subspaces = g.max_subspaces;
    opts.exhaustive_pair_dim = pair_dim;
    opts.sample_pairs = sample_pairs;
    opts.seed = seed;
    opts.jobs = g.jobs;
    const Verdict rv = check_rank_axioms(r, opts);
    rep.line("rank_axioms", verdict_text(rv), "(R1)-(R3)");
    if (!rv.ok) {
        timing(io, "axioms", start);
        return failed;
    }
    const Verdict crypto = cryptomorphism_roundtrip(r, g.max_subspaces);
    rep.line("cryptomorphism", verdict_text(crypto), "flats round trip");
    const Verdict pmd = is_qpmd(r, g.max_subspaces);
    rep.line("qpmd", pmd.ok ? "yes" : "no", "q-PMD");
    timing(io, "axioms", start);
    return crypto.ok ? ok : failed;
}

int cmd_aut(const Globals& g, Io io, const std::string& input, bool transfer) {
    const auto start = Clock::now();
    const DesignFile f = parse_design_text(slurp(io, input));
    Report rep(io.out, g.machine);
    AutOptions ao;
    ao.jobs = g.jobs;
    rep.line("params", f.design.params().str(), "parameters");
    rep.line("gl_order", to_string(general_linear_order(f.design.params().n, f.design.params().q)), "|GL(n,q)|");
    const AutomorphismGroup grp = automorphism_group(f.design, ao);
    rep.line("aut_order", std::to_string(grp.order()), "|Aut(D)|");
    const bool group = is_group(grp.elements);
    rep.line("is_group", group ? "yes" : "no", "closed under products");
    bool good = group;
    if (transfer) {
        const auto s = as_steiner(f.design, g, rep);
        if (!s) return failed;
        const TransferReport tr = check_aut_transfer(*s, ao, design_opts(g));
        for (const auto& e : tr.entries)
            rep.line("transfer." + e.name,
                     to_string(e.status) + (e.status == CheckStatus::not_applicable ? " (empty design)" : " (order " + std::to_string(e.order) + ")"),
                     "Aut(S) = Aut(" + e.name + ")");
        good = good && tr.ok();
    }
    timing(io, "aut", start);
    return good ? ok : failed;
}

}  // namespace qpmd::cli
