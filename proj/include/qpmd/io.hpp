#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpmd/design.hpp"
#include "qpmd/flats.hpp"
#include "qpmd/linalg.hpp"

namespace qpmd {

/// Malformed input file; the message carries the line number.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// QDESIGN v1:
//   QDESIGN v1
//   q=<int> n=<int> t=<int> k=<int> lambda=<int>
//   one block per line, RREF rows joined by ';'
// '#' lines are comments, blank lines are ignored.

/// Comment lines (without the leading '#') read alongside a design.
struct DesignFile {
    Design design;
    std::vector<std::string> comments;
};

DesignFile read_design(std::istream& in);
DesignFile read_design_file(const std::string& path);
/// Canonical text: header, comments, blocks in canonical order.
std::string format_design(const Design& d, const std::vector<std::string>& comments = {});
void write_design(std::ostream& out, const Design& d, const std::vector<std::string>& comments = {});

// FLATS v1: same layout with header line 2 `q=<int> n=<int>`; the zero space
// is written as n zeros since an empty line would be skipped.
FlatFamily read_flats(std::istream& in);
std::string format_flats(const FlatFamily& f);

// QMATRIX v1: header line 2 `q=<int> rows=<int> cols=<int>`, then one row of
// base-q digits per line.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);
std::string format_matrix(const Matrix& m);

}  // namespace qpmd
