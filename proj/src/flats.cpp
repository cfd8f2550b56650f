#include "qpmd/flats.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <unordered_map>

namespace qpmd {

struct FlatFamily::State {
    FieldSpec spec;
    unsigned n = 0;
    Predicate pred;  // empty for explicit families
    std::uint64_t max_subspaces = 0;

    std::once_flag members_once;
    std::vector<Subspace> members;
    std::unordered_map<Subspace, std::size_t, SubspaceHash> index;

    std::once_flag covers_once;
    std::vector<std::vector<std::size_t>> covers;

    std::atomic<bool> validated{false};

    State(FieldSpec s, unsigned dim) : spec(std::move(s)), n(dim) {}

    void ensure_members() {
        std::call_once(members_once, [this] {
            if (pred) {
                for (auto& a : all_subspaces(n, spec, max_subspaces))
                    if (pred(a)) members.push_back(std::move(a));
            }
            for (std::size_t i = 0; i < members.size(); ++i) index.emplace(members[i], i);
        });
    }

    void ensure_covers() {
        ensure_members();
        std::call_once(covers_once, [this] {
            covers.assign(members.size(), {});
            for (std::size_t i = 0; i < members.size(); ++i) {
                std::vector<std::size_t> above;
                for (std::size_t j = 0; j < members.size(); ++j)
                    if (members[j].dim() > members[i].dim() && contains(members[j], members[i])) above.push_back(j);
                // Members are in canonical order, so `above` is sorted by dimension.
                for (std::size_t u = 0; u < above.size(); ++u) {
                    const auto& cand = members[above[u]];
                    bool minimal = true;
                    for (std::size_t v = 0; v < u && minimal; ++v) {
                        const auto& mid = members[above[v]];
                        if (mid.dim() < cand.dim() && contains(cand, mid)) minimal = false;
                    }
                    if (minimal) covers[i].push_back(above[u]);
                }
            }
        });
    }
};

FlatFamily FlatFamily::from_members(FieldSpec spec, unsigned n, std::vector<Subspace> members) {
    for (const auto& m : members)
        if (m.ambient_dim() != n || m.spec() != spec) throw std::invalid_argument("family member outside the ambient space");
    std::sort(members.begin(), members.end(), canonical_less);
    members.erase(std::unique(members.begin(), members.end()), members.end());
    auto s = std::make_shared<State>(std::move(spec), n);
    s->members = std::move(members);
    s->ensure_members();
    return FlatFamily(std::move(s));
}

FlatFamily FlatFamily::from_predicate(FieldSpec spec, unsigned n, Predicate pred, std::uint64_t max_subspaces) {
    auto s = std::make_shared<State>(std::move(spec), n);
    s->pred = std::move(pred);
    s->max_subspaces = max_subspaces;
    return FlatFamily(std::move(s));
}

const FieldSpec& FlatFamily::spec() const noexcept { return s_->spec; }
unsigned FlatFamily::ambient_dim() const noexcept { return s_->n; }

bool FlatFamily::is_member(const Subspace& a) const {
    if (s_->pred) return s_->pred(a);
    return s_->index.count(a) != 0;
}

const std::vector<Subspace>& FlatFamily::members() const {
    s_->ensure_members();
    return s_->members;
}

std::optional<std::size_t> FlatFamily::index_of(const Subspace& a) const {
    s_->ensure_members();
    auto it = s_->index.find(a);
    if (it == s_->index.end()) return std::nullopt;
    return it->second;
}

const std::vector<std::vector<std::size_t>>& FlatFamily::covers() const {
    s_->ensure_covers();
    return s_->covers;
}

bool FlatFamily::validated() const noexcept { return s_->validated.load(); }

Verdict check_flat_axioms(const FlatFamily& f) {
    const FieldSpec& spec = f.spec();
    const unsigned n = f.ambient_dim();
    const Subspace e = Subspace::full(spec, n);
    if (!f.is_member(e)) return Verdict::fail("F1", "the ambient space is not a member", {e});

    const auto& mem = f.members();
    for (std::size_t i = 0; i < mem.size(); ++i)
        for (std::size_t j = i + 1; j < mem.size(); ++j) {
            Subspace m = intersect(mem[i], mem[j]);
            if (!f.index_of(m)) return Verdict::fail("F2", "intersection of two members is not a member", {mem[i], mem[j], m});
        }

    const auto& cov = f.covers();
    const auto lines = enumerate_grassmannian(n, 1, spec);
    for (std::size_t i = 0; i < mem.size(); ++i)
        for (const auto& x : lines) {
            if (contains(mem[i], x)) continue;
            std::size_t hits = 0;
            for (auto c : cov[i]) hits += contains(mem[c], x) ? 1 : 0;
            if (hits != 1)
                return Verdict::fail("F3", std::to_string(hits) + " members cover F and contain x (need exactly 1)", {mem[i], x});
        }

    f.s_->validated.store(true);
    return Verdict::pass();
}

Subspace family_closure(const FlatFamily& f, const Subspace& a) {
    Subspace cl = Subspace::full(f.spec(), f.ambient_dim());
    bool any = false;
    for (const auto& m : f.members())
        if (contains(m, a)) {
            cl = intersect(cl, m);
            any = true;
        }
    if (!any) throw std::invalid_argument("no member of the family contains [" + format_subspace(a) + "]");
    return cl;
}

namespace {

std::size_t require_member(const FlatFamily& f, const Subspace& a) {
    auto idx = f.index_of(a);
    if (!idx) throw std::invalid_argument("[" + format_subspace(a) + "] is not a member of the family");
    return *idx;
}

void require_validated(const FlatFamily& f) {
    if (!f.validated()) throw std::logic_error("flat family has not passed check_flat_axioms");
}

bool covers_member(const FlatFamily& f, std::size_t upper, std::size_t lower) {
    const auto& c = f.covers()[lower];
    return std::find(c.begin(), c.end(), upper) != c.end();
}

}  // namespace

Subspace lattice_meet(const FlatFamily& f, const Subspace& a, const Subspace& b) {
    require_member(f, a);
    require_member(f, b);
    Subspace m = intersect(a, b);
    require_member(f, m);
    return m;
}

Subspace lattice_join(const FlatFamily& f, const Subspace& a, const Subspace& b) {
    require_member(f, a);
    require_member(f, b);
    return family_closure(f, sum(a, b));
}

Verdict check_semimodular(const FlatFamily& f) {
    const auto& mem = f.members();
    for (std::size_t i = 0; i < mem.size(); ++i)
        for (std::size_t j = 0; j < mem.size(); ++j) {
            if (i == j) continue;
            auto meet = f.index_of(intersect(mem[i], mem[j]));
            if (!meet) return Verdict::fail("F2", "meet is not a member", {mem[i], mem[j]});
            if (!covers_member(f, i, *meet)) continue;
            const std::size_t join = require_member(f, family_closure(f, sum(mem[i], mem[j])));
            if (!covers_member(f, join, j))
                return Verdict::fail("semimodular", "a covers a∧b but a∨b does not cover b", {mem[i], mem[j]});
        }
    return Verdict::pass();
}

namespace {

constexpr unsigned kNone = std::numeric_limits<unsigned>::max();

// Shortest and longest cover-chain lengths from every member to `target`
// (kNone when the member is not below target).
void chain_lengths(const FlatFamily& f, std::size_t target, std::vector<unsigned>& shortest, std::vector<unsigned>& longest) {
    const auto& mem = f.members();
    const auto& cov = f.covers();
    shortest.assign(mem.size(), kNone);
    longest.assign(mem.size(), kNone);
    shortest[target] = longest[target] = 0;
    // Canonical order is by dimension, so walking backwards sees covers first.
    for (std::size_t i = mem.size(); i-- > 0;) {
        if (i == target || mem[i].dim() >= mem[target].dim()) continue;
        for (auto c : cov[i]) {
            if (longest[c] == kNone) continue;
            shortest[i] = std::min(shortest[i], shortest[c] + 1);
            longest[i] = longest[i] == kNone ? longest[c] + 1 : std::max(longest[i], longest[c] + 1);
        }
    }
}

}  // namespace

Verdict check_jordan_dedekind(const FlatFamily& f) {
    const auto& mem = f.members();
    std::vector<unsigned> shortest, longest;
    for (std::size_t b = 0; b < mem.size(); ++b) {
        chain_lengths(f, b, shortest, longest);
        for (std::size_t a = 0; a < mem.size(); ++a)
            if (longest[a] != kNone && shortest[a] != longest[a])
                return Verdict::fail("jordan-dedekind",
                                     "maximal chains of lengths " + std::to_string(shortest[a]) + " and " +
                                         std::to_string(longest[a]),
                                     {mem[a], mem[b]});
    }
    return Verdict::pass();
}

std::vector<Subspace> greedy_chain(const FlatFamily& f, const Subspace& a, LineOrder order) {
    require_validated(f);
    const auto& mem = f.members();
    const auto& cov = f.covers();
    std::size_t cur = require_member(f, family_closure(f, Subspace::zero(f.spec(), f.ambient_dim())));
    std::vector<Subspace> chain{mem[cur]};
    auto lines = one_dim_subspaces_of(a);
    if (order == LineOrder::reverse) std::reverse(lines.begin(), lines.end());
    while (!contains(mem[cur], a)) {
        auto x = std::find_if(lines.begin(), lines.end(), [&](const Subspace& l) { return !contains(mem[cur], l); });
        std::optional<std::size_t> next;
        for (auto c : cov[cur])
            if (contains(mem[c], *x)) {
                if (next) throw std::logic_error("two covers contain the same line; family violates (F3)");
                next = c;
            }
        if (!next) throw std::logic_error("no cover contains the line; family violates (F3)");
        cur = *next;
        chain.push_back(mem[cur]);
    }
    return chain;
}

unsigned rank_from_flats(const FlatFamily& f, const Subspace& a, LineOrder order) {
    return static_cast<unsigned>(greedy_chain(f, a, order).size() - 1);
}

unsigned rank_from_flats_exhaustive(const FlatFamily& f, const Subspace& a) {
    const std::size_t start = require_member(f, family_closure(f, Subspace::zero(f.spec(), f.ambient_dim())));
    const std::size_t target = require_member(f, family_closure(f, a));
    std::vector<unsigned> shortest, longest;
    chain_lengths(f, target, shortest, longest);
    return longest[start];
}

RankOracle rank_oracle_of(const FlatFamily& f) {
    require_validated(f);
    return RankOracle(
        f.spec(), f.ambient_dim(), [f](const Subspace& a) { return static_cast<int>(rank_from_flats(f, a)); }, "flats", true);
}

FlatFamily flats_from_rank(const RankOracle& m, std::uint64_t max_subspaces) {
    std::vector<Subspace> flats;
    for (auto& a : all_subspaces(m.ambient_dim(), m.spec(), max_subspaces))
        if (is_flat(m, a)) flats.push_back(std::move(a));
    return FlatFamily::from_members(m.spec(), m.ambient_dim(), std::move(flats));
}

Verdict cryptomorphism_roundtrip(const RankOracle& m, std::uint64_t max_subspaces) {
    const FlatFamily fam = flats_from_rank(m, max_subspaces);
    if (auto v = check_flat_axioms(fam); !v) return v;
    for (const auto& a : all_subspaces(m.ambient_dim(), m.spec(), max_subspaces)) {
        const int r = m.rank(a);
        const unsigned rf = rank_from_flats(fam, a);
        if (r != static_cast<int>(rf))
            return Verdict::fail("roundtrip", "r(A)=" + std::to_string(r) + " but the flats give " + std::to_string(rf), {a});
    }
    return Verdict::pass();
}

Verdict family_roundtrip(const FlatFamily& f, std::uint64_t max_subspaces) {
    if (auto v = check_flat_axioms(f); !v) return v;
    const FlatFamily back = flats_from_rank(rank_oracle_of(f), max_subspaces);
    const auto& a = f.members();
    const auto& b = back.members();
    for (const auto& m : a)
        if (!back.index_of(m)) return Verdict::fail("roundtrip", "member is not a flat of r_F", {m});
    for (const auto& m : b)
        if (!f.index_of(m)) return Verdict::fail("roundtrip", "flat of r_F is not a member", {m});
    return a.size() == b.size() ? Verdict::pass() : Verdict::fail("roundtrip", "member counts differ");
}

}  // namespace qpmd
