#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "qpmd/linalg.hpp"
#include "qpmd/verdict.hpp"

namespace qpmd {

/// A q-matroid presented by its rank function on the subspaces of F_q^n.
///
/// The function must be pure. Values are cached by canonical subspace when
/// memoization is on; the cache is safe for concurrent use.
class RankOracle {
public:
    using Fn = std::function<int(const Subspace&)>;

    RankOracle(FieldSpec spec, unsigned n, Fn fn, std::string name = "", bool memoize = true);

    int rank(const Subspace& a) const;
    int operator()(const Subspace& a) const { return rank(a); }

    const FieldSpec& spec() const noexcept { return spec_; }
    unsigned ambient_dim() const noexcept { return n_; }
    const std::string& name() const noexcept { return name_; }

private:
    struct Memo;
    FieldSpec spec_;
    unsigned n_;
    Fn fn_;
    std::string name_;
    std::shared_ptr<Memo> memo_;
};

unsigned uniform_rank(unsigned k, const Subspace& a);
RankOracle uniform_matroid(FieldSpec spec, unsigned n, unsigned k);
/// r(A) = dim A.
RankOracle free_matroid(FieldSpec spec, unsigned n);

/// Rank of A in the q-matroid represented by a full-rank k x n matrix G over
/// an extension F_{q^m}: rank of G Y^T where the rows of Y span A. G is read
/// with its n columns indexing the coordinates of E. A must live over the
/// prime field of G's field (or over G's field itself).
unsigned representable_rank(const Matrix& g, const Subspace& a);
RankOracle representable_matroid(const Matrix& g, FieldSpec base, unsigned n);

struct RankAxiomOptions {
    std::uint64_t max_subspaces = 100000;
    /// When both are at their defaults every pair is checked for (R3).
    /// Otherwise (R3) covers all pairs with both dimensions <= exhaustive_pair_dim
    /// plus sample_pairs uniformly random pairs.
    int exhaustive_pair_dim = -1;
    std::uint64_t sample_pairs = 0;
    std::uint64_t seed = 1;
    unsigned jobs = 0;
};

/// Exhaustive check of (R1) boundedness, (R2) monotonicity and (R3)
/// submodularity. (R2) is checked on every cover pair A < A + x, which
/// implies it for every comparable pair.
Verdict check_rank_axioms(const RankOracle& m, const RankAxiomOptions& opts = {});

bool is_independent(const RankOracle& m, const Subspace& a);
/// Dependent, with every codimension-1 subspace independent.
bool is_circuit(const RankOracle& m, const Subspace& c);
bool is_flat(const RankOracle& m, const Subspace& f);
/// Smallest flat containing A, built as A plus every line that keeps the
/// rank unchanged. Throws std::logic_error if the result is not a flat of
/// the same rank (which only happens for oracles that are not q-matroids).
Subspace closure(const RankOracle& m, const Subspace& a);

}  // namespace qpmd
