#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qpmd/design.hpp"
#include "qpmd/linalg.hpp"
#include "qpmd/qcount.hpp"
#include "qpmd/verdict.hpp"

namespace qpmd {

/// Which structure of the Steiner-induced q-PMD a derived design collects.
enum class DerivedKind {
    independent_t1,  // independent (t+1)-spaces
    circuit_t1,      // (t+1)-dimensional circuits
    circuit_t2,      // (t+2)-dimensional circuits
};

std::string to_string(DerivedKind k);
/// Accepts the tag names plus the CLI spellings "independent", "circuit-t1", "circuit-t2".
DerivedKind parse_derived_kind(const std::string& s);
unsigned block_dimension(DerivedKind k, unsigned t);

enum class SubspaceClass { independent, circuit, dependent_noncircuit };
std::string to_string(SubspaceClass c);

struct Classification {
    SubspaceClass cls;
    unsigned rank;
};

/// Classifies A in the q-PMD induced by S from the block structure alone.
Classification classify_subspace(const SteinerSystem& s, const Subspace& a);

// Lambda of each derived design from the Steiner parameters S(t,k,n;q).
// Each asserts exact divisibility and throws std::domain_error otherwise.
BigInt lambda_independent(const DesignParams& steiner);
BigInt lambda_circuit_t1(const DesignParams& steiner);
BigInt lambda_circuit_t2(const DesignParams& steiner);
BigInt derived_lambda(const DesignParams& steiner, DerivedKind kind);
/// t-(n, d, lambda; q) with d the block dimension of the kind.
DesignParams derived_params(const DesignParams& steiner, DerivedKind kind);
/// lambda [n,t]_q / [d,t]_q.
BigInt derived_block_count(const DesignParams& steiner, DerivedKind kind);

/// Collects the members of the (t+1)- or (t+2)-Grassmannian of the given kind.
/// The result carries the calculator's lambda; run verify_design to confirm it.
Design derive_design(const SteinerSystem& s, DerivedKind kind, const DesignOptions& opts = {});

/// The independent-space design is the supplement of the (t+1)-circuit design.
Verdict check_supplementary_remark(const SteinerSystem& s, const DesignOptions& opts = {});

/// An invertible n x n matrix acting on subspaces by v -> v M.
class LatticeMap {
public:
    /// Throws std::invalid_argument for a singular or non-square matrix.
    explicit LatticeMap(Matrix m);

    const Matrix& matrix() const noexcept { return m_; }
    Subspace operator()(const Subspace& a) const { return image(a, m_); }

private:
    Matrix m_;
};

bool is_automorphism(const LatticeMap& phi, const Design& d);

/// Order of GL(n, q).
BigInt general_linear_order(unsigned n, unsigned q);

/// Calls fn on every invertible n x n matrix over the field, rows chosen in
/// lexicographic order. Throws EnumerationLimitError if |GL(n,q)| > max_order.
void for_each_invertible(unsigned n, const FieldSpec& spec, std::uint64_t max_order,
                         const std::function<void(const Matrix&)>& fn);

struct AutOptions {
    std::uint64_t max_group_order = 100000000;
    unsigned jobs = 0;
};

struct AutomorphismGroup {
    std::vector<Matrix> elements;  // in enumeration order
    std::uint64_t order() const noexcept { return elements.size(); }
};

/// Every element of GL(n,q) that maps the block set onto itself.
AutomorphismGroup automorphism_group(const Design& d, const AutOptions& opts = {});

/// True iff the matrices form a group under multiplication (contain the
/// identity and are closed under products).
bool is_group(const std::vector<Matrix>& elements);

enum class CheckStatus { pass, fail, not_applicable };
std::string to_string(CheckStatus s);

struct TransferEntry {
    std::string name;  // which design is compared with the Steiner system
    CheckStatus status;
    std::uint64_t order;  // automorphism group order of that design
};

struct TransferReport {
    std::uint64_t steiner_order = 0;
    std::vector<TransferEntry> entries;
    bool ok() const;
};

/// Compares Aut(S) with the automorphism groups of the derived designs (and
/// the supplement of S) as sets of matrices. Empty derived designs are
/// reported as not applicable.
TransferReport check_aut_transfer(const SteinerSystem& s, const AutOptions& opts = {},
                                  const DesignOptions& dopts = {});

struct SampledTransfer {
    std::uint64_t samples = 0;
    std::uint64_t agreements = 0;
    std::uint64_t automorphisms = 0;  // samples that preserve S
    bool ok() const { return samples == agreements; }
};

/// For ambients where GL(n,q) is too large: draws random words in two
/// generator sets (one preserving S, one generating all of GL(n,q)) and checks
/// that each word preserves S exactly when it preserves `derived`.
SampledTransfer sampled_aut_transfer(const Design& steiner, const Design& derived,
                                     const std::vector<Matrix>& stabilizer_gens,
                                     const std::vector<Matrix>& all_gens, std::uint64_t samples,
                                     std::uint64_t seed, unsigned word_length = 16);

/// Generators of GL(n,q) for prime q: elementary transvections I + E_ij and a
/// primitive diagonal scaling.
std::vector<Matrix> general_linear_generators(unsigned n, const FieldSpec& spec);
/// Generators of the Desarguesian spread stabilizer in GL(Nk, q): expanded
/// elementary matrices and scalings of GL(N, q^k), plus the Frobenius map.
std::vector<Matrix> spread_stabilizer_generators(unsigned n, unsigned k, const FieldSpec& spec);

struct CircuitCountRow {
    Subspace t_space;
    BigInt pair_count;     // N(A): pairs (I, C) with A < I < C, I independent, C a (t+2)-circuit
    BigInt circuit_count;  // (t+2)-circuits through A
};

struct CircuitCountReport {
    std::vector<CircuitCountRow> rows;
    BigInt expected_pair_count;  // q^{k-t} [n-k,1] ([n-t-1,1] - [t+1,1][k-t,1])
    bool ok = true;              // every row has N = (q+1) count, N = expected
};

/// Double count of (t+2)-circuits around every t-subspace.
CircuitCountReport check_circuit_count_identity(const SteinerSystem& s, const DesignOptions& opts = {});

}  // namespace qpmd
