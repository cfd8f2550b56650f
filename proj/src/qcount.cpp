#include "qpmd/qcount.hpp"

#include <stdexcept>

#include "qpmd/field.hpp"

namespace qpmd {

namespace {

bool is_prime_power(unsigned q) {
    if (q < 2) return false;
    unsigned p = 2;
    while (q % p != 0) ++p;
    while (q % p == 0) q /= p;
    return q == 1;
}

BigInt exact_div(const BigInt& num, const BigInt& den, const char* what) {
    if (den == 0 || num % den != 0) throw std::domain_error(std::string(what) + " is not an integer");
    return num / den;
}

}  // namespace

DesignParams DesignParams::make(unsigned t, unsigned n, unsigned k, BigInt lambda, unsigned q) {
    if (t < 1 || t > k || k > n)
        throw std::invalid_argument("design parameters need 1 <= t <= k <= n, got t=" + std::to_string(t) +
                                    " n=" + std::to_string(n) + " k=" + std::to_string(k));
    if (lambda < 0) throw std::invalid_argument("design lambda must be nonnegative");
    if (!is_prime_power(q)) throw std::invalid_argument("q=" + std::to_string(q) + " is not a prime power");
    return DesignParams{t, n, k, std::move(lambda), q};
}

std::string DesignParams::str() const {
    return std::to_string(t) + "-(" + std::to_string(n) + "," + std::to_string(k) + "," + to_string(lambda) + ";" +
           std::to_string(q) + ")";
}

BigInt q_power(unsigned q, unsigned e) {
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i) r *= q;
    return r;
}

BigInt gaussian_binomial(unsigned N, unsigned M, unsigned q) {
    if (M > N) return 0;
    BigInt num = 1, den = 1;
    for (unsigned i = 0; i < M; ++i) {
        num *= q_power(q, N) - q_power(q, i);
        den *= q_power(q, M) - q_power(q, i);
    }
    return num / den;
}

BigInt count_superspaces(unsigned n, unsigned t, unsigned s, unsigned q) {
    if (!(t <= s && s <= n)) throw std::invalid_argument("count_superspaces needs t <= s <= n");
    return gaussian_binomial(n - t, s - t, q);
}

Rational intersection_number(const DesignParams& p, unsigned i, unsigned j) {
    if (i + j > p.t) throw std::invalid_argument("intersection number needs i + j <= t");
    const BigInt num = q_power(p.q, j * (p.k - i)) * p.lambda * gaussian_binomial(p.n - i - j, p.k - i, p.q);
    const BigInt den = gaussian_binomial(p.n - p.t, p.k - p.t, p.q);
    return Rational(num, den);
}

IntersectionTable intersection_table(const DesignParams& p) {
    IntersectionTable tab{p, {}};
    for (unsigned i = 0; i <= p.t; ++i) {
        tab.values.emplace_back();
        for (unsigned j = 0; i + j <= p.t; ++j) tab.values.back().push_back(intersection_number(p, i, j));
    }
    return tab;
}

Admissibility is_admissible(const DesignParams& p) {
    Admissibility out;
    for (unsigned i = 0; i <= p.t; ++i) {
        Rational v = intersection_number(p, i, 0);
        const bool ok = denominator(v) == 1 && v >= 0;
        if (!ok && out.admissible) {
            out.admissible = false;
            out.first_failing_i = i;
        }
        out.lambdas.push_back(std::move(v));
    }
    return out;
}

bool sts_admissible(unsigned n) {
    if (n < 3) throw std::invalid_argument("STS admissibility needs n >= 3");
    return n % 6 == 1 || n % 6 == 3;
}

CorollaryParams corollary_sts_params(unsigned n, unsigned q) {
    if (n < 7) throw std::invalid_argument("corollary parameters need n >= 7");
    const BigInt q2m1 = q_power(q, 2) - 1, qm1 = BigInt(q) - 1;
    const BigInt l1 = exact_div(q_power(q, 4) * (q_power(q, n - 3) - 1) * (q_power(q, n - 6) - 1), q2m1 * qm1,
                                "corollary lambda (1)");
    const BigInt l2 = exact_div((q_power(q, n - 3) - 1) * (q_power(q, 4) - 1), q2m1 * qm1, "corollary lambda (2)");
    const BigInt l3 = gaussian_binomial(n - 3, 3, q);
    CorollaryParams out{{DesignParams::make(2, n, 4, l1, q), DesignParams::make(2, n, 4, l2, q),
                         DesignParams::make(2, n, n - 4, l3, q)},
                        false};
    const unsigned r = n % 6;
    out.admissible = r == 0 || r == 1 || r == 3 || r == 4;
    return out;
}

DesignParams supplementary_params(const DesignParams& p) {
    return DesignParams::make(p.t, p.n, p.k, gaussian_binomial(p.n - p.t, p.k - p.t, p.q) - p.lambda, p.q);
}

DesignParams dual_params(const DesignParams& p) {
    const BigInt lam = exact_div(p.lambda * gaussian_binomial(p.n - p.t, p.k, p.q),
                                 gaussian_binomial(p.n - p.t, p.k - p.t, p.q), "dual design lambda");
    return DesignParams::make(p.t, p.n, p.n - p.k, lam, p.q);
}

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& v) {
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

}  // namespace qpmd
