#include "doctest.h"
#include "oracle.hpp"
#include "qpmd/linalg.hpp"

#include <random>
#include <set>
#include <unordered_set>

using namespace qpmd;

namespace {

const FieldSpec F2(2, 1), F3(3, 1), F4(2, 2);

Subspace S(const std::string& s, unsigned n, const FieldSpec& f = F2) { return parse_subspace(s, f, n); }

Matrix M(const FieldSpec& f, std::size_t r, std::size_t c, std::vector<Elem> e) { return Matrix(f, r, c, std::move(e)); }

}  // namespace

TEST_CASE("canonicalize examples") {
    CHECK(canonicalize(M(F2, 2, 3, {1, 1, 0, 0, 1, 0})) == S("100;010", 3));
    const Subspace z = canonicalize(M(F2, 1, 3, {0, 0, 0}));
    CHECK(z.dim() == 0);
    CHECK(z.basis().empty());
    CHECK(canonicalize(Matrix::identity(F2, 3)) == Subspace::full(F2, 3));
    CHECK_THROWS_AS(canonicalize(M(F2, 1, 3, {1, 0, 0}), 4), std::invalid_argument);
}

TEST_CASE("sum, intersect, contains examples") {
    const Subspace e1 = S("100", 3), e2 = S("010", 3), e3 = S("001", 3);
    const Subspace a = S("110;011", 3);
    CHECK(sum(a, Subspace::zero(F2, 3)) == a);
    CHECK(sum(e1, e2) == S("100;010", 3));
    CHECK(sum(S("110", 3), e2) == S("100;010", 3));
    CHECK(intersect(a, Subspace::full(F2, 3)) == a);
    CHECK(intersect(e1, e2).dim() == 0);
    CHECK(intersect(sum(e1, e2), sum(e2, e3)) == e2);
    CHECK(contains(Subspace::full(F2, 3), a));
    CHECK(contains(a, a));
    CHECK_FALSE(contains(e1, e2));
    CHECK_THROWS_AS(sum(e1, S("1000", 4)), std::invalid_argument);
}

TEST_CASE("orthogonal examples") {
    CHECK(orthogonal(Subspace::zero(F2, 3)) == Subspace::full(F2, 3));
    CHECK(orthogonal(S("100", 3)) == S("010;001", 3));
    // A self-orthogonal line: <(1,1),(1,1)> = 0 over F_2.
    CHECK(orthogonal(S("11", 2)) == S("11", 2));
}

TEST_CASE("matrix rank and inverse") {
    CHECK(matrix_rank(Matrix(F3, 2, 3)) == 0);
    CHECK(matrix_rank(Matrix::identity(F3, 4)) == 4);
    CHECK(matrix_rank(M(F2, 2, 2, {1, 1, 1, 1})) == 1);
    const Matrix a = M(F3, 2, 2, {1, 2, 0, 1});
    CHECK(a * matrix_inverse(a) == Matrix::identity(F3, 2));
    CHECK_THROWS_AS(matrix_inverse(M(F2, 2, 2, {1, 1, 1, 1})), std::domain_error);
}

TEST_CASE("Grassmannian examples and counts") {
    CHECK(enumerate_grassmannian(4, 2, F2).size() == 35);
    const auto zero = enumerate_grassmannian(5, 0, F3);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].dim() == 0);
    CHECK(enumerate_grassmannian(3, 1, F2).size() == 7);
    CHECK_THROWS(Grassmannian(3, 4, F2));

    for (const FieldSpec& f : {F2, F3})
        for (unsigned n = 0; n <= 6; ++n)
            for (unsigned k = 0; k <= n; ++k) {
                if (f.q() == 3 && n == 6 && (k == 3)) continue;  // 33880 members, covered by the size() check below
                const Grassmannian g(n, k, f);
                CHECK(g.size() == gaussian_count(n, k, f.q()));
                std::unordered_set<Subspace, SubspaceHash> seen;
                g.for_each([&](const Subspace& s) {
                    CHECK(s.dim() == k);
                    seen.insert(s);
                });
                CHECK(seen.size() == g.size());
            }
    CHECK(Grassmannian(6, 3, F3).size() == 33880);
}

TEST_CASE("Grassmannian matches brute-force span sets") {
    for (const FieldSpec& f : {F2, F3, F4})
        for (unsigned n = 1; n <= (f.q() == 2 ? 4u : 3u); ++n)
            for (unsigned k = 0; k <= n; ++k) {
                std::set<oracle::VecSet> got;
                for (const auto& s : enumerate_grassmannian(n, k, f)) got.insert(oracle::vectors_of(s));
                CHECK(got == oracle::all_spans(f, n, k));
            }
}

TEST_CASE("Grassmannian order is canonical and random access agrees") {
    const Grassmannian g(5, 2, F3);
    const auto all = g.all();
    for (std::size_t i = 0; i + 1 < all.size(); ++i) CHECK(canonical_less(all[i], all[i + 1]));
    for (std::uint64_t i = 0; i < g.size(); i += 37) CHECK(g.at(i) == all[i]);
    std::vector<Subspace> part;
    g.for_range(100, 140, [&](const Subspace& s) { part.push_back(s); });
    REQUIRE(part.size() == 40);
    for (std::size_t i = 0; i < part.size(); ++i) CHECK(part[i] == all[100 + i]);
    // Lowest pivots first.
    CHECK(all.front() == S("10000;01000", 5, F3));
}

TEST_CASE("one-dimensional subspaces") {
    CHECK(one_dim_subspaces_of(Subspace::zero(F2, 3)).empty());
    CHECK(one_dim_subspaces_of(Subspace::full(F2, 3)).size() == 7);
    CHECK(one_dim_subspaces_of(Subspace::full(F3, 2)).size() == 4);
    CHECK(one_dim_subspaces_of(S("1010;0101", 4, F3)).size() == 4);
}

TEST_CASE("subspaces_of and superspaces_of agree with filtering") {
    for (const FieldSpec& f : {F2, F3}) {
        const unsigned n = f.q() == 2 ? 5 : 4;
        const auto lines = enumerate_grassmannian(n, 1, f);
        const auto planes = enumerate_grassmannian(n, 2, f);
        const auto solids = enumerate_grassmannian(n, 3, f);
        for (std::size_t i = 0; i < planes.size(); i += 3) {
            const Subspace& a = planes[i];
            std::set<std::string> want_sub, got_sub, want_sup, got_sup;
            for (const auto& l : lines)
                if (contains(a, l)) want_sub.insert(format_subspace(l));
            for (const auto& l : subspaces_of(a, 1)) got_sub.insert(format_subspace(l));
            for (const auto& s : solids)
                if (contains(s, a)) want_sup.insert(format_subspace(s));
            for (const auto& s : superspaces_of(a, 3)) got_sup.insert(format_subspace(s));
            CHECK(got_sub == want_sub);
            CHECK(got_sup == want_sup);
            CHECK(superspaces_of(a, 3).size() == want_sup.size());
        }
    }
}

TEST_CASE("lattice operations match vector-set oracles on all pairs in F_2^4") {
    const auto all = all_subspaces(4, F2, 1000);
    REQUIRE(all.size() == 67);
    for (const auto& a : all) {
        const auto va = oracle::vectors_of(a);
        for (const auto& b : all) {
            const auto vb = oracle::vectors_of(b);
            oracle::VecSet meet;
            std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::inserter(meet, meet.end()));
            const Subspace i = intersect(a, b), s = sum(a, b);
            CHECK(oracle::vectors_of(i) == meet);
            CHECK(oracle::subset(va, oracle::vectors_of(s)));
            CHECK(oracle::subset(vb, oracle::vectors_of(s)));
            CHECK(s.dim() + i.dim() == a.dim() + b.dim());
            CHECK(contains(a, b) == oracle::subset(vb, va));
            if (contains(a, b) && contains(b, a)) CHECK(a == b);
        }
    }
}

TEST_CASE("orthogonal complement properties") {
    for (const FieldSpec& f : {F2, F3, F4}) {
        const unsigned n = f.q() == 2 ? 4 : 3;
        const auto vs = oracle::all_vectors(n, f.q());
        for (const auto& u : all_subspaces(n, f, 10000)) {
            const Subspace w = orthogonal(u);
            CHECK(w.dim() == n - u.dim());
            CHECK(orthogonal(w) == u);
            for (unsigned i = 0; i < u.dim(); ++i)
                for (unsigned j = 0; j < w.dim(); ++j) {
                    Elem dot = 0;
                    for (unsigned c = 0; c < n; ++c) dot = f.add(dot, f.mul(u.at(i, c), w.at(j, c)));
                    CHECK(dot == 0);
                }
        }
    }
}

TEST_CASE("canonicalize is invariant under row operations") {
    std::mt19937 rng(7);
    for (const FieldSpec& f : {F2, F3, F4}) {
        std::uniform_int_distribution<Elem> digit(0, f.q() - 1);
        for (int trial = 0; trial < 200; ++trial) {
            const unsigned n = 5, r = 3;
            Matrix a(f, r, n);
            for (unsigned i = 0; i < r; ++i)
                for (unsigned j = 0; j < n; ++j) a(i, j) = digit(rng);
            Matrix g(f, r, r);
            do {
                for (unsigned i = 0; i < r; ++i)
                    for (unsigned j = 0; j < r; ++j) g(i, j) = digit(rng);
            } while (matrix_rank(g) != r);
            const Subspace s = canonicalize(a);
            CHECK(canonicalize(g * a) == s);
            CHECK(canonicalize(s.basis_matrix()) == s);
            CHECK(s.dim() == matrix_rank(a));
        }
    }
}

TEST_CASE("RREF invariants hold for canonical bases") {
    for (const auto& s : all_subspaces(4, F3, 1000)) {
        for (unsigned i = 0; i < s.dim(); ++i) {
            const unsigned p = s.pivots()[i];
            CHECK(s.at(i, p) == 1);
            for (unsigned j = 0; j < p; ++j) CHECK(s.at(i, j) == 0);
            for (unsigned k = 0; k < s.dim(); ++k)
                if (k != i) CHECK(s.at(k, p) == 0);
            if (i > 0) CHECK(s.pivots()[i - 1] < p);
        }
    }
}

TEST_CASE("image under an invertible matrix") {
    const Matrix swap = M(F2, 3, 3, {0, 1, 0, 1, 0, 0, 0, 0, 1});
    CHECK(image(S("100", 3), swap) == S("010", 3));
    CHECK(image(S("110;001", 3), swap) == S("110;001", 3));
}

TEST_CASE("text forms") {
    CHECK(format_subspace(S("1010", 4)) == "1010");
    CHECK(format_subspace(Subspace::zero(F2, 4)).empty());
    CHECK(parse_subspace("", F2, 3).dim() == 0);
    CHECK(parse_subspace("000", F2, 3).dim() == 0);
    CHECK(parse_vector("1a2", 11) == std::vector<Elem>{1, 10, 2});
    CHECK(format_vector(std::vector<Elem>{0, 3, 1}, 4) == "031");
    CHECK_THROWS_AS(parse_vector("12", 2), std::invalid_argument);
    CHECK_THROWS_AS(parse_subspace("10;1", F2, 2), std::invalid_argument);
    for (const auto& s : all_subspaces(3, F4, 1000)) CHECK(parse_subspace(format_subspace(s), F4, 3) == s);
}

TEST_CASE("GF(2) fast path agrees with the generic path") {
    // F_2 subspaces of 70 columns exceed one machine word and take the generic path.
    std::mt19937 rng(3);
    std::bernoulli_distribution bit(0.5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<Elem>> rows(4, std::vector<Elem>(70));
        for (auto& r : rows)
            for (auto& x : r) x = bit(rng);
        std::vector<std::vector<Elem>> small;
        for (const auto& r : rows) small.emplace_back(r.begin(), r.begin() + 60);
        std::vector<std::vector<Elem>> padded;
        for (const auto& r : small) {
            auto v = r;
            v.resize(70, 0);
            padded.push_back(v);
        }
        const Subspace a = Subspace::span(F2, 60, small), b = Subspace::span(F2, 70, padded);
        REQUIRE(a.dim() == b.dim());
        for (unsigned i = 0; i < a.dim(); ++i)
            for (unsigned j = 0; j < 70; ++j) CHECK(b.at(i, j) == (j < 60 ? a.at(i, j) : 0));
    }
}

TEST_CASE("all_subspaces respects its bound") {
    CHECK(all_subspaces(4, F2, 67).size() == 67);
    CHECK_THROWS_AS(all_subspaces(4, F2, 66), EnumerationLimitError);
    CHECK(count_subspaces(6, 2) == 2825);
}
