#include "qpmd/design.hpp"

#include <algorithm>
#include <map>

#include "qpmd/parallel.hpp"

namespace qpmd {

Design::Design(DesignParams params, FieldSpec spec, std::vector<Subspace> blocks)
    : params_(std::move(params)), spec_(std::move(spec)), blocks_(std::move(blocks)) {
    if (spec_.q() != params_.q) throw std::invalid_argument("design field order does not match q");
    for (const auto& b : blocks_) {
        if (b.spec() != spec_ || b.ambient_dim() != params_.n) throw std::invalid_argument("block outside the ambient space");
        if (b.dim() != params_.k)
            throw std::invalid_argument("block [" + format_subspace(b) + "] has dimension " + std::to_string(b.dim()) +
                                        ", expected " + std::to_string(params_.k));
    }
    std::sort(blocks_.begin(), blocks_.end(), canonical_less);
    auto index = std::make_shared<std::unordered_map<Subspace, std::size_t, SubspaceHash>>();
    index->reserve(blocks_.size());
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        if (!index->emplace(blocks_[i], i).second)
            throw std::invalid_argument("duplicate block [" + format_subspace(blocks_[i]) + "]");
    index_ = std::move(index);
}

bool Design::has_block(const Subspace& b) const { return index_->count(b) != 0; }

namespace {

void guard(std::uint64_t count, std::uint64_t max, const std::string& what) {
    if (count > max)
        throw EnumerationLimitError(what + " has " + std::to_string(count) + " members, above the bound " + std::to_string(max));
}

struct Failure {
    std::uint64_t index;
    Subspace t_space;
    std::uint64_t count;
};

}  // namespace

DesignVerification verify_design(const Design& d, const DesignOptions& opts) {
    const auto& p = d.params();
    const unsigned q = p.q;
    const Grassmannian tg(p.n, p.t, d.spec());
    guard(tg.size(), opts.max_subspaces, "the t-Grassmannian");

    const std::uint64_t per_t = gaussian_count(p.n - p.t, p.k - p.t, q);
    const std::uint64_t cost_super = per_t == UINT64_MAX ? UINT64_MAX : tg.size() * per_t;
    const std::uint64_t cost_scan = d.block_count() * gaussian_count(p.k, p.t, q) + tg.size();
    const bool by_superspaces = cost_super <= cost_scan;

    const BigInt& lambda = p.lambda;
    std::unordered_map<Subspace, std::uint64_t, SubspaceHash> tally;
    if (!by_superspaces) {
        for (const auto& b : d.blocks())
            for (auto& s : subspaces_of(b, p.t)) ++tally[std::move(s)];
    }

    std::vector<std::optional<Failure>> found(resolve_jobs(opts.jobs));
    parallel_chunks(tg.size(), opts.jobs, [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
        std::uint64_t idx = lo;
        tg.for_range(lo, hi, [&](const Subspace& t_space) {
            const std::uint64_t here = idx++;
            if (found[w]) return;
            std::uint64_t count = 0;
            if (by_superspaces) {
                for (const auto& s : superspaces_of(t_space, p.k)) count += d.has_block(s) ? 1 : 0;
            } else if (auto it = tally.find(t_space); it != tally.end()) {
                count = it->second;
            }
            if (BigInt(count) != lambda) found[w] = Failure{here, t_space, count};
        });
    });

    DesignVerification out;
    out.strategy = by_superspaces ? "superspaces" : "block-scan";
    // Workers own increasing index ranges, so the first hit is the earliest.
    for (const auto& f : found)
        if (f) {
            out.ok = false;
            out.failing = f->t_space;
            out.count = f->count;
            break;
        }
    return out;
}

Design supplementary_design(const Design& d, const DesignOptions& opts) {
    const auto& p = d.params();
    const Grassmannian kg(p.n, p.k, d.spec());
    guard(kg.size(), opts.max_subspaces, "the k-Grassmannian");
    std::vector<Subspace> blocks;
    kg.for_each([&](const Subspace& s) {
        if (!d.has_block(s)) blocks.push_back(s);
    });
    return Design(supplementary_params(p), d.spec(), std::move(blocks));
}

Design dual_design(const Design& d) {
    std::vector<Subspace> blocks;
    blocks.reserve(d.block_count());
    for (const auto& b : d.blocks()) blocks.push_back(orthogonal(b));
    return Design(dual_params(d.params()), d.spec(), std::move(blocks));
}

// ---------------------------------------------------------------- Steiner systems

SteinerSystem SteinerSystem::from_design(Design d, const DesignOptions& opts) {
    if (d.params().lambda != 1) throw std::invalid_argument("a Steiner system needs lambda = 1, got " + d.params().str());
    if (auto v = verify_design(d, opts); !v.ok)
        throw std::invalid_argument("design " + d.params().str() + " fails verification at [" + format_subspace(*v.failing) +
                                    "] (count " + std::to_string(v.count) + ")");
    SteinerSystem s;
    auto map = std::make_shared<std::unordered_map<Subspace, std::size_t, SubspaceHash>>();
    for (std::size_t i = 0; i < d.blocks().size(); ++i)
        for (auto& sub : subspaces_of(d.blocks()[i], d.params().t)) map->emplace(std::move(sub), i);
    s.by_t_space_ = std::move(map);
    s.d_ = std::make_shared<const Design>(std::move(d));
    return s;
}

std::optional<Subspace> SteinerSystem::block_containing(const Subspace& a) const {
    const unsigned t = this->t();
    if (a.dim() < t) throw std::invalid_argument("block_containing needs dim A >= t");
    const unsigned n = a.ambient_dim();
    std::vector<Elem> head(a.basis().begin(), a.basis().begin() + static_cast<std::ptrdiff_t>(t) * n);
    const Subspace t_space = Subspace::from_rref(a.spec(), n, t, std::move(head));
    auto it = by_t_space_->find(t_space);
    if (it == by_t_space_->end()) return std::nullopt;
    const Subspace& b = d_->blocks()[it->second];
    if (!contains(b, a)) return std::nullopt;
    return b;
}

namespace {

void append_expansion(std::vector<Elem>& out, Elem x, const FieldSpec& ext) {
    for (auto d : ext.digits(x)) out.push_back(d);
}

}  // namespace

SteinerSystem desarguesian_spread(unsigned n, unsigned k, const FieldSpec& spec) {
    if (spec.m() != 1) throw std::invalid_argument("desarguesian_spread supports prime q only");
    if (k == 0 || n % k != 0) throw std::invalid_argument("spread needs k to divide n");
    const FieldSpec ext(spec.p(), k);
    const unsigned big_n = n / k;
    std::vector<Subspace> blocks;
    const Elem x = k > 1 ? static_cast<Elem>(spec.p()) : 1;  // the polynomial "x" in F_{q^k}
    Grassmannian(big_n, 1, ext).for_each([&](const Subspace& point) {
        std::vector<std::vector<Elem>> gens;
        for (unsigned j = 0; j < k; ++j) {
            const Elem beta = ext.pow(x, j);
            std::vector<Elem> v;
            for (unsigned i = 0; i < big_n; ++i) append_expansion(v, ext.mul(beta, point.at(0, i)), ext);
            gens.push_back(std::move(v));
        }
        blocks.push_back(Subspace::span(spec, n, gens));
    });
    Design d(DesignParams::make(1, n, k, 1, spec.q()), spec, std::move(blocks));
    return SteinerSystem::from_design(std::move(d), {UINT64_MAX, 1});
}

Matrix expand_linear_map(const Matrix& a, const FieldSpec& base) {
    const FieldSpec& ext = a.spec();
    if (base.m() != 1 || base.p() != ext.p()) throw std::invalid_argument("expand_linear_map needs the prime subfield as base");
    if (a.rows() != a.cols()) throw std::invalid_argument("expand_linear_map needs a square matrix");
    const unsigned k = ext.m(), big_n = static_cast<unsigned>(a.rows()), n = big_n * k;
    std::vector<Elem> out;
    out.reserve(static_cast<std::size_t>(n) * n);
    for (unsigned i = 0; i < big_n; ++i)
        for (unsigned j = 0; j < k; ++j) {
            const Elem beta = k == 1 ? 1 : ext.pow(ext.p(), j);
            for (unsigned l = 0; l < big_n; ++l) append_expansion(out, ext.mul(beta, a(i, l)), ext);
        }
    return Matrix(base, n, n, std::move(out));
}

// ---------------------------------------------------------------- induced q-matroid

FlatFamily induced_flat_family(const SteinerSystem& s, std::uint64_t max_subspaces) {
    const unsigned n = s.n(), t = s.t();
    return FlatFamily::from_predicate(
        s.spec(), n,
        [s, n, t](const Subspace& f) { return f.dim() == n || f.dim() + 1 <= t || s.design().has_block(f); },
        max_subspaces);
}

unsigned induced_rank(const SteinerSystem& s, const Subspace& a) {
    const unsigned t = s.t();
    if (a.dim() <= t) return a.dim();
    return s.block_containing(a) ? t : t + 1;
}

RankOracle induced_rank_oracle(const SteinerSystem& s) {
    return RankOracle(
        s.spec(), s.n(), [s](const Subspace& a) { return static_cast<int>(induced_rank(s, a)); },
        "steiner " + s.params().str(), false);
}

Verdict is_qpmd(const RankOracle& m, std::uint64_t max_subspaces) {
    const FlatFamily fam = flats_from_rank(m, max_subspaces);
    std::map<int, const Subspace*> first_of_rank;
    for (const auto& f : fam.members()) {
        const int r = m.rank(f);
        auto [it, fresh] = first_of_rank.emplace(r, &f);
        if (!fresh && it->second->dim() != f.dim())
            return Verdict::fail("q-PMD", "two flats of rank " + std::to_string(r) + " with dimensions " +
                                              std::to_string(it->second->dim()) + " and " + std::to_string(f.dim()),
                                 {*it->second, f});
    }
    return Verdict::pass();
}

Verdict check_intersection_numbers(const Design& d, const DesignOptions& opts) {
    const auto& p = d.params();
    for (unsigned i = 0; i <= p.t; ++i)
        for (unsigned j = 0; i + j <= p.t; ++j) {
            const Rational expected = intersection_number(p, i, j);
            const Grassmannian gi(p.n, i, d.spec()), gj(p.n, j, d.spec());
            guard(gi.size(), opts.max_subspaces, "the i-Grassmannian");
            guard(gj.size(), opts.max_subspaces, "the j-Grassmannian");
            const auto is = gi.all();
            const auto js = gj.all();
            for (const auto& ii : is)
                for (const auto& jj : js) {
                    if (intersect(ii, jj).dim() != 0) continue;
                    std::uint64_t count = 0;
                    for (const auto& b : d.blocks())
                        if (contains(b, ii) && intersect(jj, b).dim() == 0) ++count;
                    if (Rational(count) != expected)
                        return Verdict::fail("intersection-number",
                                             "lambda_{" + std::to_string(i) + "," + std::to_string(j) + "} counted " +
                                                 std::to_string(count) + ", formula gives " + to_string(expected),
                                             {ii, jj});
                }
        }
    return Verdict::pass();
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace qpmd
