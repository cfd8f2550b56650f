#include "qpmd/qmatroid.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <shared_mutex>
#include <unordered_map>

#include "qpmd/parallel.hpp"

namespace qpmd {

struct RankOracle::Memo {
    static constexpr std::size_t kShards = 16;
    struct Shard {
        std::shared_mutex mu;
        std::unordered_map<Subspace, int, SubspaceHash> values;
    };
    std::array<Shard, kShards> shards;
};

RankOracle::RankOracle(FieldSpec spec, unsigned n, Fn fn, std::string name, bool memoize)
    : spec_(std::move(spec)), n_(n), fn_(std::move(fn)), name_(std::move(name)) {
    if (memoize) memo_ = std::make_shared<Memo>();
}

int RankOracle::rank(const Subspace& a) const {
    if (a.ambient_dim() != n_ || a.spec() != spec_) throw std::invalid_argument("subspace does not live in the oracle's ambient space");
    if (!memo_) return fn_(a);
    auto& shard = memo_->shards[a.hash() % Memo::kShards];
    {
        std::shared_lock lock(shard.mu);
        if (auto it = shard.values.find(a); it != shard.values.end()) return it->second;
    }
    const int r = fn_(a);
    std::unique_lock lock(shard.mu);
    shard.values.emplace(a, r);
    return r;
}

unsigned uniform_rank(unsigned k, const Subspace& a) { return std::min(a.dim(), k); }

RankOracle uniform_matroid(FieldSpec spec, unsigned n, unsigned k) {
    if (k > n) throw std::invalid_argument("uniform q-matroid needs k <= n");
    return RankOracle(
        std::move(spec), n, [k](const Subspace& a) { return static_cast<int>(uniform_rank(k, a)); },
        "U_{" + std::to_string(k) + "," + std::to_string(n) + "}", false);
}

RankOracle free_matroid(FieldSpec spec, unsigned n) {
    return RankOracle(
        std::move(spec), n, [](const Subspace& a) { return static_cast<int>(a.dim()); }, "free", false);
}

namespace {

void check_liftable(const FieldSpec& ext, const FieldSpec& base) {
    if (base == ext) return;
    if (base.m() == 1 && base.p() == ext.p()) return;
    throw std::invalid_argument("representable q-matroid: " + base.name() + " is not the prime subfield of " +
                                ext.name());
}

}  // namespace

unsigned representable_rank(const Matrix& g, const Subspace& a) {
    check_liftable(g.spec(), a.spec());
    if (g.cols() != a.ambient_dim())
        throw std::invalid_argument("generator matrix has " + std::to_string(g.cols()) + " columns but the ambient space has dimension " +
                                    std::to_string(a.ambient_dim()));
    if (a.dim() == 0) return 0;
    // Prime-field elements keep their integer code as constant polynomials.
    Matrix yt(g.spec(), a.ambient_dim(), a.dim());
    for (unsigned i = 0; i < a.dim(); ++i)
        for (unsigned j = 0; j < a.ambient_dim(); ++j) yt(j, i) = a.at(i, j);
    return static_cast<unsigned>(matrix_rank(g * yt));
}

RankOracle representable_matroid(const Matrix& g, FieldSpec base, unsigned n) {
    check_liftable(g.spec(), base);
    if (g.cols() != n) throw std::invalid_argument("generator matrix column count must equal n");
    if (matrix_rank(g) != g.rows()) throw std::invalid_argument("generator matrix is not of full rank");
    return RankOracle(
        std::move(base), n, [g](const Subspace& a) { return static_cast<int>(representable_rank(g, a)); },
        "representable", true);
}

namespace {

struct PairViolation {
    std::uint64_t order;  // position in the checking sequence
    Subspace a, b;
    int lhs, rhs;
};

}  // namespace

Verdict check_rank_axioms(const RankOracle& m, const RankAxiomOptions& opts) {
    const unsigned n = m.ambient_dim();
    const auto all = all_subspaces(n, m.spec(), opts.max_subspaces);
    const auto lines = enumerate_grassmannian(n, 1, m.spec());

    std::vector<int> r(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) r[i] = m.rank(all[i]);

    for (std::size_t i = 0; i < all.size(); ++i)
        if (r[i] < 0 || r[i] > static_cast<int>(all[i].dim()))
            return Verdict::fail("R1", "r(A)=" + std::to_string(r[i]) + " outside [0, dim A=" + std::to_string(all[i].dim()) + "]",
                                 {all[i]});

    for (std::size_t i = 0; i < all.size(); ++i) {
        for (const auto& x : lines) {
            if (contains(all[i], x)) continue;
            const Subspace ax = sum(all[i], x);
            const int rax = m.rank(ax);
            if (rax < r[i])
                return Verdict::fail("R2", "r(A)=" + std::to_string(r[i]) + " > r(A+x)=" + std::to_string(rax), {all[i], ax});
        }
    }

    // (R3) over index pairs.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> sampled;
    std::size_t prefix = all.size();
    if (opts.exhaustive_pair_dim >= 0 || opts.sample_pairs > 0) {
        prefix = 0;
        while (prefix < all.size() && static_cast<int>(all[prefix].dim()) <= opts.exhaustive_pair_dim) ++prefix;
        std::mt19937_64 rng(opts.seed);
        std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(all.size() - 1));
        sampled.reserve(opts.sample_pairs);
        for (std::uint64_t s = 0; s < opts.sample_pairs; ++s) sampled.emplace_back(pick(rng), pick(rng));
    }

    auto check_pair = [&](std::size_t i, std::size_t j) -> std::optional<std::pair<int, int>> {
        const int lhs = m.rank(sum(all[i], all[j])) + m.rank(intersect(all[i], all[j]));
        const int rhs = r[i] + r[j];
        if (lhs > rhs) return std::make_pair(lhs, rhs);
        return std::nullopt;
    };

    const std::uint64_t total = prefix + sampled.size();
    std::vector<std::optional<PairViolation>> found(resolve_jobs(opts.jobs));
    parallel_chunks(total, opts.jobs, [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
        for (std::uint64_t u = lo; u < hi; ++u) {
            if (u < prefix) {
                for (std::size_t j = u; j < prefix; ++j)
                    if (auto v = check_pair(u, j)) {
                        found[w] = PairViolation{u, all[u], all[j], v->first, v->second};
                        return;
                    }
            } else {
                const auto [i, j] = sampled[u - prefix];
                if (auto v = check_pair(i, j)) {
                    found[w] = PairViolation{u, all[i], all[j], v->first, v->second};
                    return;
                }
            }
        }
    });
    const PairViolation* first = nullptr;
    for (const auto& f : found)
        if (f && (!first || f->order < first->order)) first = &*f;
    if (first)
        return Verdict::fail("R3", "r(A+B)+r(A∩B)=" + std::to_string(first->lhs) + " > r(A)+r(B)=" + std::to_string(first->rhs),
                             {first->a, first->b});
    return Verdict::pass();
}

bool is_independent(const RankOracle& m, const Subspace& a) { return m.rank(a) == static_cast<int>(a.dim()); }

bool is_circuit(const RankOracle& m, const Subspace& c) {
    if (is_independent(m, c)) return false;
    for (const auto& h : subspaces_of(c, c.dim() - 1))
        if (!is_independent(m, h)) return false;
    return true;
}

bool is_flat(const RankOracle& m, const Subspace& f) {
    const int rf = m.rank(f);
    bool flat = true;
    Grassmannian(f.ambient_dim(), 1, f.spec()).for_each([&](const Subspace& x) {
        if (!flat || contains(f, x)) return;
        if (m.rank(sum(f, x)) <= rf) flat = false;
    });
    return flat;
}

Subspace closure(const RankOracle& m, const Subspace& a) {
    const int ra = m.rank(a);
    Subspace cl = a;
    Grassmannian(a.ambient_dim(), 1, a.spec()).for_each([&](const Subspace& x) {
        if (contains(cl, x)) return;
        if (m.rank(sum(a, x)) == ra) cl = sum(cl, x);
    });
    if (m.rank(cl) != ra || !is_flat(m, cl))
        throw std::logic_error("closure of [" + format_subspace(a) + "] is not a flat of equal rank; the oracle is not a q-matroid");
    return cl;
}

}  // namespace qpmd
