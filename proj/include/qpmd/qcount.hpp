#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qpmd {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parameters t-(n,k,lambda;q) of a subspace design.
struct DesignParams {
    unsigned t = 0, n = 0, k = 0;
    BigInt lambda = 0;
    unsigned q = 0;

    /// Validates 1 <= t <= k <= n, lambda >= 0 and q a prime power.
    static DesignParams make(unsigned t, unsigned n, unsigned k, BigInt lambda, unsigned q);

    /// "t-(n,k,lambda;q)"
    std::string str() const;
    bool operator==(const DesignParams&) const = default;
};

/// Number of M-dimensional subspaces of F_q^N; 0 when M > N.
BigInt gaussian_binomial(unsigned N, unsigned M, unsigned q);
BigInt q_power(unsigned q, unsigned e);

/// Number of s-subspaces of F_q^n containing a fixed t-subspace.
BigInt count_superspaces(unsigned n, unsigned t, unsigned s, unsigned q);

/// lambda_{i,j}: blocks through a fixed i-space that meet a fixed disjoint
/// j-space trivially. Returned as an exact rational; integrality is what
/// admissibility is about, so it is not assumed here.
Rational intersection_number(const DesignParams& p, unsigned i, unsigned j);

/// Every lambda_{i,j} with i + j <= t, keyed row-major by (i, j).
struct IntersectionTable {
    DesignParams params;
    std::vector<std::vector<Rational>> values;  // values[i][j], i + j <= t
    const Rational& at(unsigned i, unsigned j) const { return values.at(i).at(j); }
};
IntersectionTable intersection_table(const DesignParams& p);

struct Admissibility {
    bool admissible = true;
    std::optional<unsigned> first_failing_i;
    std::vector<Rational> lambdas;  // lambda_i = lambda_{i,0}, i = 0..t
};

/// Integrality conditions: lambda_{i,0} a nonnegative integer for 0 <= i <= t.
Admissibility is_admissible(const DesignParams& p);

/// STS(n;q) admissibility: n = 1 or 3 mod 6. Requires n >= 3.
bool sts_admissible(unsigned n);

struct CorollaryParams {
    std::array<DesignParams, 3> sets;
    bool admissible = false;  // n = 0, 1, 3, 4 mod 6
};

/// The three 2-designs implied by an STS(n;q): two with k = 4 (a design and
/// its supplement) and the dual of the supplement with k = n - 4. Requires n >= 7.
CorollaryParams corollary_sts_params(unsigned n, unsigned q);

DesignParams supplementary_params(const DesignParams& p);
/// Throws std::domain_error when the dual lambda is not an integer.
DesignParams dual_params(const DesignParams& p);

std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);

}  // namespace qpmd
