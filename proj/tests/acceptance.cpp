// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "commands.hpp"
#include "qpmd/derive.hpp"
#include "qpmd/design.hpp"
#include "qpmd/flats.hpp"
#include "qpmd/qcount.hpp"
#include "qpmd/qmatroid.hpp"

using namespace qpmd;

namespace {

// Runtime limits in seconds. All numeric comparisons below are exact.
constexpr double limit_tables = 1.0;
constexpr double limit_examples = 1.0;
constexpr double limit_admissibility = 10.0;
constexpr double limit_theorem = 300.0;
constexpr double limit_cryptomorphism = 30.0;
constexpr double limit_lattice = 30.0;
constexpr double limit_intersection = 10.0;
constexpr double limit_automorphism = 120.0;
constexpr double limit_proof_count = 60.0;

// Rank axiom sampling on F_2^6.
constexpr int n6_pair_dim = 3;
constexpr std::uint64_t n6_sample_pairs = 100000;

const FieldSpec F2(2, 1), F4(2, 2);

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;

void run(int id, const std::string& name, double limit, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= limit) o.require(false, "runtime limit exceeded");
    if (!o.ok) ++failures;
    std::printf("%s criterion %d: %s (%.2f s, limit %.0f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), secs, limit,
                o.ok ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
}

bool same_elements(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
    if (a.size() != b.size()) return false;
    const std::unordered_set<Matrix, MatrixHash> sa(a.begin(), a.end());
    for (const auto& m : b)
        if (!sa.count(m)) return false;
    return true;
}

std::vector<std::pair<std::string, RankOracle>> criterion5_oracles() {
    return {{"U(2,4)", uniform_matroid(F2, 4, 2)},
            {"free(3)", free_matroid(F2, 3)},
            {"representable", representable_matroid(Matrix(F4, 2, 4, {1, 0, 1, 2, 0, 1, 2, 1}), F2, 4)},
            {"spread(4,2)", induced_rank_oracle(desarguesian_spread(4, 2, F2))}};
}

void tables(Outcome& o) {
    std::ostringstream out, err;
    std::istringstream in;
    o.require(cli::cmd_tables({}, {in, out, err}) == 0, "tables exit status");
    const std::string text = out.str();
    for (const char* want : {"2-(13,4,692912;2)", "2-(13,4,5115;2)", "2-(13,9,6347715;2)", "2-(7,4,80;2)", "2-(7,4,75;2)",
                             "2-(7,3,15;2)", "2-(7,4,810;3)", "2-(7,4,400;3)", "2-(7,3,40;3)", "2-(7,4,4352;4)",
                             "2-(7,4,1445;4)", "2-(7,3,85;4)", "2-(7,4,16250;5)", "2-(7,4,4056;5)", "2-(7,3,156;5)"})
        o.require(text.find(want) != std::string::npos, std::string("missing ") + want);
}

void examples(Outcome& o) {
    const DesignParams s13 = DesignParams::make(2, 13, 3, 1, 2), s7 = DesignParams::make(2, 7, 3, 1, 2);
    o.require(lambda_independent(s13) == 2046, "lambda S(2,3,13;2)");
    o.require(derived_block_count(s13, DerivedKind::independent_t1) == BigInt("3267963270"), "blocks S(2,3,13;2)");
    o.require(lambda_independent(s7) == 30, "lambda S(2,3,7;2)");
    o.require(derived_block_count(s7, DerivedKind::independent_t1) == 11430, "blocks S(2,3,7;2)");
}

void admissibility(Outcome& o) {
    for (unsigned n = 3; n <= 100; ++n) {
        o.require(sts_admissible(n) == (n % 6 == 1 || n % 6 == 3), "sts_admissible n=" + std::to_string(n));
        o.require(sts_admissible(n) == is_admissible(DesignParams::make(2, n, 3, 1, 2)).admissible, "sweep n=" + std::to_string(n));
    }
    for (unsigned q : {2u, 3u, 4u, 5u})
        for (unsigned n = 7; n <= 40; ++n) {
            const auto c = corollary_sts_params(n, q);
            const unsigned r = n % 6;
            const std::string at = " n=" + std::to_string(n) + " q=" + std::to_string(q);
            o.require(c.admissible == (r == 0 || r == 1 || r == 3 || r == 4), "corollary verdict" + at);
            bool sweep = true;
            for (const auto& p : c.sets) sweep = sweep && is_admissible(p).admissible;
            o.require(c.admissible == sweep, "integrality sweep" + at);
        }
}

void theorem(Outcome& o) {
    struct Case {
        unsigned n, k;
        unsigned lambdas[3];
    };
    for (const Case& c : {Case{4, 2, {6, 1, 0}}, Case{6, 3, {28, 3, 56}}, Case{6, 2, {30, 1, 120}}}) {
        const std::string at = " S(1," + std::to_string(c.k) + "," + std::to_string(c.n) + ";2)";
        const SteinerSystem s = desarguesian_spread(c.n, c.k, F2);
        const FlatFamily f = induced_flat_family(s);
        o.require(check_flat_axioms(f).ok, "flat axioms" + at);
        RankAxiomOptions ro;
        if (c.n == 6) {
            ro.exhaustive_pair_dim = n6_pair_dim;
            ro.sample_pairs = n6_sample_pairs;
        }
        const RankOracle r = induced_rank_oracle(s);
        o.require(check_rank_axioms(r, ro).ok, "rank axioms" + at);
        o.require(is_qpmd(r).ok, "q-PMD" + at);
        const DerivedKind kinds[] = {DerivedKind::independent_t1, DerivedKind::circuit_t1, DerivedKind::circuit_t2};
        for (int i = 0; i < 3; ++i) {
            const Design d = derive_design(s, kinds[i]);
            o.require(d.params().lambda == c.lambdas[i] && d.params().lambda == derived_lambda(s.params(), kinds[i]),
                      "lambda " + to_string(kinds[i]) + at);
            o.require(verify_design(d).ok, "verify " + to_string(kinds[i]) + at);
        }
    }
}

void cryptomorphism(Outcome& o) {
    for (const auto& [name, r] : criterion5_oracles()) {
        o.require(cryptomorphism_roundtrip(r).ok, "rank round trip " + name);
        const FlatFamily f = flats_from_rank(r);
        o.require(check_flat_axioms(f).ok && family_roundtrip(f).ok, "flat round trip " + name);
    }
}

void lattice(Outcome& o) {
    for (const auto& [name, r] : criterion5_oracles()) {
        const FlatFamily f = flats_from_rank(r);
        o.require(check_flat_axioms(f).ok, "validation " + name);
        o.require(check_semimodular(f).ok, "semimodular " + name);
        o.require(check_jordan_dedekind(f).ok, "Jordan-Dedekind " + name);
    }
}

void intersections(Outcome& o) {
    const Design d = desarguesian_spread(4, 2, F2).design();
    o.require(check_intersection_numbers(d).ok, "library brute force");
    // Direct counts for (0,0), (1,0) and (0,1).
    o.require(Rational(d.block_count()) == intersection_number(d.params(), 0, 0), "lambda_00");
    Grassmannian(4, 1, F2).for_each([&](const Subspace& line) {
        unsigned through = 0, avoid = 0;
        for (const auto& b : d.blocks()) {
            through += contains(b, line) ? 1 : 0;
            avoid += intersect(b, line).dim() == 0 ? 1 : 0;
        }
        o.require(Rational(through) == intersection_number(d.params(), 1, 0), "lambda_10 at " + format_subspace(line));
        o.require(Rational(avoid) == intersection_number(d.params(), 0, 1), "lambda_01 at " + format_subspace(line));
    });
}

void automorphisms(Outcome& o) {
    const SteinerSystem s = desarguesian_spread(4, 2, F2);
    const Design ind = derive_design(s, DerivedKind::independent_t1);
    const Design c1 = derive_design(s, DerivedKind::circuit_t1);
    const auto g = automorphism_group(s.design()).elements;
    o.require(is_group(g), "Aut(spread) is a group");
    o.require(same_elements(g, automorphism_group(ind).elements), "Aut(spread) = Aut(independent)");
    o.require(same_elements(g, automorphism_group(c1).elements), "Aut(spread) = Aut(circuit_t1)");
    for (const Design* d : {&s.design(), &ind, &c1})
        o.require(same_elements(automorphism_group(*d).elements, automorphism_group(supplementary_design(*d)).elements),
                  "Aut(D) = Aut(supplement) for " + d->params().str());
    o.require(check_aut_transfer(s).ok(), "transfer report");
}

void proof_count(Outcome& o) {
    const auto rep = check_circuit_count_identity(desarguesian_spread(6, 3, F2));
    o.require(rep.ok, "identity");
    o.require(rep.rows.size() == 63, "every 1-space checked");
    for (const auto& row : rep.rows) o.require(row.pair_count == 3 * row.circuit_count, "N(A) = 3 lambda at " + format_subspace(row.t_space));
}

}  // namespace

int main() {
    run(1, "table reproduction", limit_tables, tables);
    run(2, "example lambda and block counts", limit_examples, examples);
    run(3, "admissibility", limit_admissibility, admissibility);
    run(4, "end-to-end verification on spreads", limit_theorem, theorem);
    run(5, "cryptomorphism round trips", limit_cryptomorphism, cryptomorphism);
    run(6, "semimodularity and Jordan-Dedekind", limit_lattice, lattice);
    run(7, "intersection numbers on S(1,2,4;2)", limit_intersection, intersections);
    run(8, "automorphism transfer on S(1,2,4;2)", limit_automorphism, automorphisms);
    run(9, "N(A) = (q+1) lambda(A) on S(1,3,6;2)", limit_proof_count, proof_count);
    return failures == 0 ? 0 : 1;
}
