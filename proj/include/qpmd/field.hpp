#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace qpmd {

using Elem = std::uint32_t;

struct FieldTables;

/// A finite field F_q with q = p^m, q <= 2^16.
///
/// Elements are encoded as integers in [0, q): the polynomial
/// c_0 + c_1 x + ... + c_{m-1} x^{m-1} is stored as sum c_i p^i.
/// The reduction polynomial is the smallest monic irreducible of degree m
/// when its lower coefficients are read as a base-p integer (constant term
/// least significant), so a given (p, m) always produces the same encoding.
///
/// FieldSpec is a cheap shared handle; copies refer to the same tables.
class FieldSpec {
public:
    FieldSpec(unsigned p, unsigned m);

    unsigned p() const noexcept;
    unsigned m() const noexcept;
    unsigned q() const noexcept;
    /// Coefficients c_0..c_m of the monic modulus (c_m = 1). Just {0, 1} for m = 1.
    const std::vector<unsigned>& modulus() const noexcept;

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept;
    /// Throws std::domain_error for a == 0.
    Elem inv(Elem a) const;
    Elem pow(Elem a, std::uint64_t e) const noexcept;

    /// Base-p digits of a, c_0 first.
    std::vector<unsigned> digits(Elem a) const;
    Elem from_digits(const std::vector<unsigned>& c) const;

    bool operator==(const FieldSpec& o) const noexcept { return p() == o.p() && m() == o.m(); }
    bool operator!=(const FieldSpec& o) const noexcept { return !(*this == o); }

    std::string name() const;

private:
    std::shared_ptr<const FieldTables> t_;
};

/// Convenience constructor; same as FieldSpec(p, m).
FieldSpec field_new(unsigned p, unsigned m);

/// Field for a prime power q; throws std::invalid_argument if q is not one.
FieldSpec field_of_order(unsigned q);

bool is_prime(unsigned n) noexcept;

/// Trial-division irreducibility test for a monic polynomial over F_p
/// (coefficients c_0 first).
bool is_irreducible(const std::vector<unsigned>& poly, unsigned p);

/// A field element bound to its field. Mostly used at API boundaries; inner
/// loops work on raw Elem values through FieldSpec.
class FieldElement {
public:
    FieldElement(FieldSpec spec, Elem repr);

    const FieldSpec& spec() const noexcept { return spec_; }
    Elem repr() const noexcept { return repr_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;

    bool operator==(const FieldElement& o) const noexcept {
        return spec_ == o.spec_ && repr_ == o.repr_;
    }

private:
    void check_same(const FieldElement& o) const;

    FieldSpec spec_;
    Elem repr_;
};

}  // namespace qpmd
