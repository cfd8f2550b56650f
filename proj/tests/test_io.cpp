#include "doctest.h"
#include "qpmd/io.hpp"

#include <sstream>

using namespace qpmd;

namespace {

const FieldSpec F2(2, 1), F3(3, 1), F4(2, 2);

const char* spread_text =
    "QDESIGN v1\n"
    "q=2 n=4 t=1 k=2 lambda=1\n"
    "1000;0100\n"
    "1001;0111\n"
    "1010;0101\n"
    "1011;0110\n"
    "0010;0001\n";

DesignFile parse(const std::string& s) {
    std::istringstream in(s);
    return read_design(in);
}

std::string error_of(const std::string& s) {
    try {
        parse(s);
    } catch (const FormatError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("design round trip is byte-identical") {
    const DesignFile f = parse(spread_text);
    CHECK(f.design == desarguesian_spread(4, 2, F2).design());
    CHECK(format_design(f.design) == spread_text);
    for (auto [n, k, spec] : {std::tuple{6u, 3u, F2}, std::tuple{6u, 2u, F2}, std::tuple{4u, 2u, F3}}) {
        const Design d = desarguesian_spread(n, k, spec).design();
        const std::string text = format_design(d, {"from a test"});
        const DesignFile back = parse(text);
        CHECK(back.design == d);
        CHECK(format_design(back.design, back.comments) == text);
    }
    std::ostringstream out;
    write_design(out, f.design);
    CHECK(out.str() == spread_text);
}

TEST_CASE("comments and blank lines") {
    const std::string text = std::string("QDESIGN v1\n# first\nq=2 n=4 t=1 k=2 lambda=1\n\n#second\n") + (spread_text + 36);
    const DesignFile f = parse(text);
    REQUIRE(f.comments.size() == 2);
    CHECK(f.comments[0] == "first");
    CHECK(f.comments[1] == "second");
    const std::string canon = format_design(f.design, f.comments);
    CHECK(canon.rfind("QDESIGN v1\nq=2 n=4 t=1 k=2 lambda=1\n# first\n# second\n1000;0100\n", 0) == 0);
    CHECK(format_design(parse(canon).design, parse(canon).comments) == canon);
}

TEST_CASE("blocks are canonicalized on read") {
    const DesignFile f = parse(
        "QDESIGN v1\nq=2 n=4 t=1 k=2 lambda=1\n"
        "0010;0001\n0100;1000\n1011;0110\n1010;0101\n1110;0111\n");
    CHECK(format_design(f.design) == spread_text);
}

TEST_CASE("format errors carry line numbers") {
    CHECK(error_of("QDESIGN v2\n").rfind("line 1:", 0) == 0);
    CHECK(error_of("").rfind("line 1:", 0) == 0);
    CHECK(error_of("QDESIGN v1\nq=2 n=4 t=1 k=2\n").rfind("line 2:", 0) == 0);
    CHECK(error_of("QDESIGN v1\nq=2 n=4 t=1 k=2 lambda=1 extra=3\n").rfind("line 2:", 0) == 0);
    CHECK(error_of("QDESIGN v1\nq=2 n=4 t=1 k=2 lambda=1\n1000;0100\n1000;01\n").rfind("line 4:", 0) == 0);
    CHECK(error_of("QDESIGN v1\nq=2 n=4 t=1 k=2 lambda=1\n1000;0200\n").rfind("line 3:", 0) == 0);
    // Dimension mismatch and duplicates.
    CHECK(error_of("QDESIGN v1\nq=2 n=4 t=1 k=2 lambda=1\n1000\n").rfind("line 3:", 0) == 0);
    CHECK(error_of("QDESIGN v1\nq=2 n=4 t=1 k=2 lambda=1\n1000;0100\n0100;1000\n").rfind("line 4:", 0) == 0);
    CHECK(error_of("QDESIGN v1\nq=6 n=4 t=1 k=2 lambda=1\n").rfind("line 2:", 0) == 0);
    CHECK_THROWS_AS(read_design_file("/nonexistent/file"), std::runtime_error);
}

TEST_CASE("flats round trip") {
    const FlatFamily f = induced_flat_family(desarguesian_spread(4, 2, F2));
    const std::string text = format_flats(f);
    CHECK(text.rfind("FLATS v1\nq=2 n=4\n0000\n", 0) == 0);
    std::istringstream in(text);
    const FlatFamily back = read_flats(in);
    CHECK(back.members() == f.members());
    CHECK(format_flats(back) == text);
    std::istringstream bad("FLATS v1\nq=2 n=4\n100\n");
    CHECK_THROWS_AS(read_flats(bad), FormatError);
}

TEST_CASE("matrix round trip") {
    const Matrix g(F4, 2, 4, {1, 0, 1, 2, 0, 1, 2, 1});
    const std::string text = format_matrix(g);
    CHECK(text == "QMATRIX v1\nq=4 rows=2 cols=4\n1012\n0121\n");
    std::istringstream in(text);
    CHECK(read_matrix(in) == g);
    std::istringstream bad("QMATRIX v1\nq=4 rows=2 cols=4\n1012\n");
    CHECK_THROWS_AS(read_matrix(bad), FormatError);
    std::istringstream digit("QMATRIX v1\nq=3 rows=1 cols=2\n13\n");
    CHECK_THROWS_AS(read_matrix(digit), FormatError);
}
