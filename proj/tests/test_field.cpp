#include "doctest.h"
#include "qpmd/field.hpp"

#include <stdexcept>
#include <vector>

using namespace qpmd;

namespace {

// Schoolbook product of digit vectors reduced by the monic modulus.
Elem poly_mul(const FieldSpec& f, Elem a, Elem b) {
    const unsigned p = f.p(), m = f.m();
    const auto da = f.digits(a), db = f.digits(b);
    std::vector<unsigned> prod(2 * m, 0);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    const auto& mod = f.modulus();
    for (unsigned d = 2 * m - 1; d >= m; --d) {
        const unsigned c = prod[d];
        if (c == 0) continue;
        for (unsigned i = 0; i <= m; ++i) prod[d - m + i] = (prod[d - m + i] + p * p - c * mod[i] % p) % p;
    }
    prod.resize(m);
    return f.from_digits(prod);
}

const std::vector<unsigned> small_orders = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

}  // namespace

TEST_CASE("field_new examples") {
    const FieldSpec f2 = field_new(2, 1);
    CHECK(f2.q() == 2);
    const FieldSpec f4 = field_new(2, 2);
    CHECK(f4.q() == 4);
    CHECK(f4.modulus() == std::vector<unsigned>{1, 1, 1});  // x^2 + x + 1
    CHECK(field_new(3, 1).q() == 3);
    CHECK(f4.name() == "F_4");
}

TEST_CASE("field_new rejects bad input") {
    CHECK_THROWS_AS(field_new(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(field_new(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(field_new(2, 17), std::invalid_argument);
    CHECK_THROWS_AS(field_of_order(6), std::invalid_argument);
    CHECK_THROWS_AS(field_of_order(1), std::invalid_argument);
    CHECK(field_of_order(65536).q() == 65536);
}

TEST_CASE("arithmetic examples") {
    const FieldSpec f2(2, 1), f3(3, 1), f4(2, 2);
    CHECK(f2.add(1, 1) == 0);
    CHECK(f4.mul(2, 2) == 3);
    CHECK(f3.inv(2) == 2);
    CHECK_THROWS_AS(f3.inv(0), std::domain_error);

    const FieldElement x(f4, 2);
    CHECK((x * x).repr() == 3);
    CHECK((x * x.inverse()).repr() == 1);
    CHECK((-x + x).repr() == 0);
    CHECK_THROWS_AS(x + FieldElement(f2, 1), std::invalid_argument);
    CHECK_THROWS_AS(FieldElement(f4, 4), std::invalid_argument);
}

TEST_CASE("modulus is the smallest monic irreducible") {
    for (unsigned q : small_orders) {
        const FieldSpec f = field_of_order(q);
        if (f.m() == 1) continue;
        CHECK(is_irreducible(f.modulus(), f.p()));
        // Every smaller candidate (lower coefficients as a base-p integer) is reducible.
        const unsigned m = f.m(), p = f.p();
        unsigned code = 0;
        for (unsigned i = m; i-- > 0;) code = code * p + f.modulus()[i];
        for (unsigned c = 0; c < code; ++c) {
            std::vector<unsigned> poly(m + 1, 0);
            unsigned x = c;
            for (unsigned i = 0; i < m; ++i, x /= p) poly[i] = x % p;
            poly[m] = 1;
            CHECK_FALSE(is_irreducible(poly, p));
        }
    }
    CHECK(field_new(2, 3).modulus() == std::vector<unsigned>{1, 1, 0, 1});  // x^3 + x + 1
    CHECK(field_new(3, 2).modulus() == std::vector<unsigned>{1, 0, 1});     // x^2 + 1
}

TEST_CASE("field axioms hold exhaustively for q <= 16") {
    for (unsigned q : small_orders) {
        CAPTURE(q);
        const FieldSpec f = field_of_order(q);
        bool ok = true;
        for (Elem a = 0; a < q && ok; ++a) {
            ok = ok && f.add(a, 0) == a && f.mul(a, 1) == a && f.add(a, f.neg(a)) == 0;
            if (a != 0) ok = ok && f.mul(a, f.inv(a)) == 1;
            for (Elem b = 0; b < q && ok; ++b) {
                ok = ok && f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
                ok = ok && f.mul(a, b) == poly_mul(f, a, b);
                ok = ok && f.sub(f.add(a, b), b) == a;
                for (Elem c = 0; c < q && ok; ++c) {
                    ok = ok && f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
                    ok = ok && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
                    ok = ok && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
                }
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("Frobenius is additive") {
    for (unsigned q : small_orders) {
        const FieldSpec f = field_of_order(q);
        for (Elem a = 0; a < q; ++a)
            for (Elem b = 0; b < q; ++b) CHECK(f.pow(f.add(a, b), f.p()) == f.add(f.pow(a, f.p()), f.pow(b, f.p())));
    }
}

TEST_CASE("digits round trip and the same spec yields the same tables") {
    const FieldSpec f(3, 2);
    for (Elem a = 0; a < 9; ++a) CHECK(f.from_digits(f.digits(a)) == a);
    CHECK(f.digits(5) == std::vector<unsigned>{2, 1});
    const FieldSpec g(3, 2);
    CHECK(f == g);
    for (Elem a = 0; a < 9; ++a)
        for (Elem b = 0; b < 9; ++b) CHECK(f.mul(a, b) == g.mul(a, b));
}
