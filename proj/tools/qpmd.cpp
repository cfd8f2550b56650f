// qpmd: q-matroids, subspace designs and the designs derived from q-Steiner systems.
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qpmd/linalg.hpp"

using namespace qpmd::cli;

int main(int argc, char** argv) {
    CLI::App app{"q-matroids, subspace designs and derived designs over finite fields"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    std::string jobs = "auto";
    app.add_flag("--machine", g.machine, "key=value output");
    app.add_option("--max-subspaces", g.max_subspaces, "bound on exhaustive enumerations")->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads, or 'auto'")->capture_default_str();

    unsigned n = 0, k = 0, t = 0, q = 2, m = 0;
    std::string lambda = "1", input = "-", out_path, kind, subspace;

    auto* qbinom = app.add_subcommand("qbinom", "Gaussian binomial [N,M]_q");
    qbinom->add_option("N", n)->required();
    qbinom->add_option("M", m)->required();
    qbinom->add_option("--q", q)->capture_default_str();

    auto* params = app.add_subcommand("params", "design parameters, admissibility and derived parameters");
    params->add_option("--t", t)->required();
    params->add_option("--n", n)->required();
    params->add_option("--k", k)->required();
    params->add_option("--lambda", lambda)->capture_default_str();
    params->add_option("--q", q)->capture_default_str();

    auto* adm = app.add_subcommand("admissible", "STS(n;q) admissibility and the three implied 2-designs");
    adm->add_option("--n", n)->required();
    adm->add_option("--q", q)->capture_default_str();

    auto* tables = app.add_subcommand("tables", "parameter tables for STS(13;2) and STS(7;q)");

    auto* spread = app.add_subcommand("spread", "Desarguesian spread S(1,k,n;q) as a design file");
    spread->add_option("--n", n)->required();
    spread->add_option("--k", k)->required();
    spread->add_option("--q", q)->capture_default_str();
    spread->add_option("--out,-o", out_path, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "check that every t-space lies in exactly lambda blocks");
    verify->add_option("input", input, "design file, '-' for stdin")->capture_default_str();

    auto* derive = app.add_subcommand("derive", "derived design of a q-Steiner system");
    derive->add_option("input", input, "design file, '-' for stdin")->capture_default_str();
    derive->add_option("--kind", kind, "independent | circuit-t1 | circuit-t2")->required();
    derive->add_option("--out,-o", out_path, "output file (default stdout; the report then goes to stderr)");

    auto* flats = app.add_subcommand("flats", "flat axioms and lattice checks for a FLATS file or a Steiner system");
    flats->add_option("input", input, "FLATS or design file, '-' for stdin")->capture_default_str();
    flats->add_option("--out,-o", out_path, "write the family as a FLATS file");

    MatroidArgs ma;
    auto add_matroid = [&](CLI::App* c) {
        c->add_option("--matroid", ma.preset, "uniform:<k> | free | representable:<file> | steiner:<file>")->required();
        c->add_option("--n", ma.n, "ambient dimension for uniform and free");
        c->add_option("--q", ma.q, "field order for uniform and free");
    };
    auto* rank = app.add_subcommand("rank", "rank, classification and closure of one subspace");
    add_matroid(rank);
    rank->add_option("--subspace", subspace, "RREF rows joined by ';'")->required();

    int pair_dim = -1;
    std::uint64_t samples = 0, seed = 1;
    auto* axioms = app.add_subcommand("axioms", "rank axioms, flats round trip and the q-PMD property");
    add_matroid(axioms);
    axioms->add_option("--pair-dim", pair_dim, "check (R3) on all pairs up to this dimension (-1: all pairs)");
    axioms->add_option("--sample-pairs", samples, "extra random pairs for (R3)");
    axioms->add_option("--seed", seed)->capture_default_str();

    bool transfer = false;
    auto* aut = app.add_subcommand("aut", "automorphism group inside GL(n,q)");
    aut->add_option("input", input, "design file, '-' for stdin")->capture_default_str();
    aut->add_flag("--transfer", transfer, "compare with the groups of the derived designs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    if (jobs == "auto") {
        g.jobs = 0;
    } else {
        try {
            g.jobs = static_cast<unsigned>(std::stoul(jobs));
        } catch (const std::exception&) {
            std::cerr << "error: --jobs must be a number or 'auto'\n";
            return usage;
        }
    }

    const Io io{std::cin, std::cout, std::cerr};
    try {
        if (*qbinom) return cmd_qbinom(g, io, n, m, q);
        if (*params) return cmd_params(g, io, t, n, k, lambda, q);
        if (*adm) return cmd_admissible(g, io, n, q);
        if (*tables) return cmd_tables(g, io);
        if (*spread) return cmd_spread(g, io, n, k, q, out_path);
        if (*verify) return cmd_verify(g, io, input);
        if (*derive) return cmd_derive(g, io, input, kind, out_path);
        if (*flats) return cmd_flats(g, io, input, out_path);
        if (*rank) return cmd_rank(g, io, ma, subspace);
        if (*axioms) return cmd_axioms(g, io, ma, pair_dim, samples, seed);
        if (*aut) return cmd_aut(g, io, input, transfer);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const qpmd::EnumerationLimitError& e) {
        std::cerr << "error: " << e.what() << " (raise --max-subspaces)\n";
        return usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}
