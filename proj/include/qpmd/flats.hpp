#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "qpmd/linalg.hpp"
#include "qpmd/qmatroid.hpp"
#include "qpmd/verdict.hpp"

namespace qpmd {

/// A family of subspaces of F_q^n, candidate for the flat axioms (F1)-(F3).
///
/// Either listed explicitly or given by a membership predicate; predicate
/// families enumerate their members lazily (all subspaces, dimension by
/// dimension) the first time the member list is needed. Handles are cheap to
/// copy and share their state.
class FlatFamily {
public:
    using Predicate = std::function<bool(const Subspace&)>;

    static FlatFamily from_members(FieldSpec spec, unsigned n, std::vector<Subspace> members);
    static FlatFamily from_predicate(FieldSpec spec, unsigned n, Predicate pred,
                                     std::uint64_t max_subspaces = 100000);

    const FieldSpec& spec() const noexcept;
    unsigned ambient_dim() const noexcept;

    bool is_member(const Subspace& a) const;
    /// Members in canonical order. Throws EnumerationLimitError for predicate
    /// families whose ambient space is too large.
    const std::vector<Subspace>& members() const;
    std::optional<std::size_t> index_of(const Subspace& a) const;
    /// covers()[i] lists the members covering members()[i] inside the family.
    const std::vector<std::vector<std::size_t>>& covers() const;

    /// Set once check_flat_axioms has passed on this family.
    bool validated() const noexcept;

private:
    struct State;
    friend Verdict check_flat_axioms(const FlatFamily& f);
    explicit FlatFamily(std::shared_ptr<State> s) : s_(std::move(s)) {}
    std::shared_ptr<State> s_;
};

/// (F1) E is a member; (F2) closed under intersection; (F3) for every member
/// F and line x not in F exactly one member covering F contains x.
Verdict check_flat_axioms(const FlatFamily& f);

/// Intersection of every member containing A.
Subspace family_closure(const FlatFamily& f, const Subspace& a);

Subspace lattice_meet(const FlatFamily& f, const Subspace& a, const Subspace& b);
Subspace lattice_join(const FlatFamily& f, const Subspace& a, const Subspace& b);

/// If a covers a∧b then a∨b covers b, for every pair of members.
Verdict check_semimodular(const FlatFamily& f);
/// All maximal chains between two comparable members have the same length.
Verdict check_jordan_dedekind(const FlatFamily& f);

enum class LineOrder { forward, reverse };

/// Greedy chain C(0) = F_0 < F_1 < ... < F_r ⊇ A where each step moves to
/// the unique cover containing the first line of A (in the given order) not
/// yet covered. Requires a validated family.
std::vector<Subspace> greedy_chain(const FlatFamily& f, const Subspace& a, LineOrder order = LineOrder::forward);

/// Length of a maximal chain of members from C(0) to C(A).
unsigned rank_from_flats(const FlatFamily& f, const Subspace& a, LineOrder order = LineOrder::forward);
/// Same quantity from an exhaustive longest-path search over the cover graph.
unsigned rank_from_flats_exhaustive(const FlatFamily& f, const Subspace& a);

/// Rank oracle r_F of a validated family.
RankOracle rank_oracle_of(const FlatFamily& f);

/// Every flat of the q-matroid, as an explicit family.
FlatFamily flats_from_rank(const RankOracle& m, std::uint64_t max_subspaces = 100000);

/// r = r_{F_r} on every subspace, with F_r passing (F1)-(F3).
Verdict cryptomorphism_roundtrip(const RankOracle& m, std::uint64_t max_subspaces = 100000);
/// F = F_{r_F} as sets, for a family that passes (F1)-(F3).
Verdict family_roundtrip(const FlatFamily& f, std::uint64_t max_subspaces = 100000);

}  // namespace qpmd
