#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qpmd/flats.hpp"
#include "qpmd/linalg.hpp"
#include "qpmd/qcount.hpp"
#include "qpmd/qmatroid.hpp"
#include "qpmd/verdict.hpp"

namespace qpmd {

/// A t-(n,k,lambda;q) subspace design: parameters plus a block list kept in
/// canonical order with a hash index for membership.
class Design {
public:
    /// Throws std::invalid_argument on a block of the wrong dimension or field,
    /// or on duplicate blocks. Blocks may be given in any order.
    Design(DesignParams params, FieldSpec spec, std::vector<Subspace> blocks);

    const DesignParams& params() const noexcept { return params_; }
    const FieldSpec& spec() const noexcept { return spec_; }
    const std::vector<Subspace>& blocks() const noexcept { return blocks_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    bool has_block(const Subspace& b) const;

    bool operator==(const Design& o) const { return params_ == o.params_ && blocks_ == o.blocks_; }

private:
    DesignParams params_;
    FieldSpec spec_;
    std::vector<Subspace> blocks_;
    std::shared_ptr<const std::unordered_map<Subspace, std::size_t, SubspaceHash>> index_;
};

struct DesignOptions {
    std::uint64_t max_subspaces = 100000;
    unsigned jobs = 0;
};

struct DesignVerification {
    bool ok = true;
    std::optional<Subspace> failing;  // first t-subspace (canonical order) with the wrong count
    std::uint64_t count = 0;          // its block count
    std::string strategy;             // "superspaces" or "block-scan"
};

/// Checks that every t-subspace lies in exactly lambda blocks. Picks between
/// scanning the superspaces of each t-subspace and tallying the t-subspaces
/// of each block, whichever is cheaper.
DesignVerification verify_design(const Design& d, const DesignOptions& opts = {});

/// Complement of the block set in the k-Grassmannian.
Design supplementary_design(const Design& d, const DesignOptions& opts = {});
/// Orthogonal complements of the blocks.
Design dual_design(const Design& d);

/// A q-Steiner system: a design with lambda = 1 that has been verified.
class SteinerSystem {
public:
    /// Throws std::invalid_argument unless lambda = 1 and the design verifies.
    static SteinerSystem from_design(Design d, const DesignOptions& opts = {});

    const Design& design() const noexcept { return *d_; }
    const DesignParams& params() const noexcept { return d_->params(); }
    unsigned t() const noexcept { return params().t; }
    unsigned k() const noexcept { return params().k; }
    unsigned n() const noexcept { return params().n; }
    const FieldSpec& spec() const noexcept { return d_->spec(); }

    /// The unique block containing A, for dim A >= t; nullopt if none does.
    std::optional<Subspace> block_containing(const Subspace& a) const;

private:
    SteinerSystem() = default;
    std::shared_ptr<const Design> d_;
    std::shared_ptr<const std::unordered_map<Subspace, std::size_t, SubspaceHash>> by_t_space_;
};

/// Desarguesian spread S(1,k,n;q) for prime q and k | n: the F_q-expansions of
/// the points of PG(n/k - 1, q^k).
SteinerSystem desarguesian_spread(unsigned n, unsigned k, const FieldSpec& spec);

/// F_q-matrix of the F_{q^k}-linear map v -> v A on (F_{q^k})^N, using the
/// same coordinate expansion as desarguesian_spread.
Matrix expand_linear_map(const Matrix& a, const FieldSpec& base);

/// Flats of the q-matroid induced by a Steiner system: E, the blocks, and
/// every subspace of dimension at most t - 1.
FlatFamily induced_flat_family(const SteinerSystem& s, std::uint64_t max_subspaces = 100000);

/// dim A if dim A <= t; t if A lies in a block; t + 1 otherwise.
unsigned induced_rank(const SteinerSystem& s, const Subspace& a);
RankOracle induced_rank_oracle(const SteinerSystem& s);

/// All flats of equal rank have equal dimension.
Verdict is_qpmd(const RankOracle& m, std::uint64_t max_subspaces = 100000);

/// Brute-force lambda_{i,j} for every i + j <= t over all admissible (I, J)
/// pairs, compared with the closed form.
Verdict check_intersection_numbers(const Design& d, const DesignOptions& opts = {});

/// 64-bit FNV-1a digest, used for provenance comments.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace qpmd
