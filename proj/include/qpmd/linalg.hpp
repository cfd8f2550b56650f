#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpmd/field.hpp"

namespace qpmd {

/// Raised when an exhaustive sweep would exceed its configured bound.
class EnumerationLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense row-major matrix over a small finite field.
class Matrix {
public:
    Matrix(FieldSpec spec, std::size_t rows, std::size_t cols);
    Matrix(FieldSpec spec, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

    static Matrix identity(FieldSpec spec, std::size_t n);

    const FieldSpec& spec() const noexcept { return spec_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Elem operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * cols_ + j]; }
    Elem& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * cols_ + j]; }
    std::span<const Elem> row(std::size_t i) const noexcept { return {a_.data() + i * cols_, cols_}; }
    const std::vector<Elem>& entries() const noexcept { return a_; }

    Matrix operator*(const Matrix& o) const;
    Matrix transpose() const;

    bool operator==(const Matrix& o) const noexcept {
        return spec_ == o.spec_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    std::size_t hash() const noexcept;

private:
    FieldSpec spec_;
    std::size_t rows_, cols_;
    std::vector<Elem> a_;
};

std::size_t matrix_rank(const Matrix& m);

/// Inverse of a square matrix; throws std::domain_error when singular.
Matrix matrix_inverse(const Matrix& m);

/// A subspace of F_q^n held by its reduced row echelon basis.
///
/// Two Subspace values are equal as sets exactly when their bases are
/// identical, so == and hash() give set semantics.
class Subspace {
public:
    static Subspace zero(FieldSpec spec, unsigned n);
    static Subspace full(FieldSpec spec, unsigned n);
    /// Row space of the given generators (each of length n).
    static Subspace span(FieldSpec spec, unsigned n, const std::vector<std::vector<Elem>>& rows);
    /// Wraps a basis that is already in RREF. Only checked in debug builds.
    static Subspace from_rref(FieldSpec spec, unsigned n, unsigned dim, std::vector<Elem> basis);

    const FieldSpec& spec() const noexcept { return spec_; }
    unsigned ambient_dim() const noexcept { return n_; }
    unsigned dim() const noexcept { return dim_; }

    Elem at(unsigned i, unsigned j) const noexcept { return basis_[i * n_ + j]; }
    std::span<const Elem> row(unsigned i) const noexcept { return {basis_.data() + i * n_, n_}; }
    const std::vector<Elem>& basis() const noexcept { return basis_; }
    const std::vector<unsigned>& pivots() const noexcept { return pivots_; }
    Matrix basis_matrix() const;

    bool contains_vector(std::span<const Elem> v) const;

    bool operator==(const Subspace& o) const noexcept {
        return n_ == o.n_ && dim_ == o.dim_ && basis_ == o.basis_ && spec_ == o.spec_;
    }
    bool operator!=(const Subspace& o) const noexcept { return !(*this == o); }
    std::size_t hash() const noexcept;

private:
    Subspace(FieldSpec spec, unsigned n, unsigned dim, std::vector<Elem> basis);

    FieldSpec spec_;
    unsigned n_ = 0;
    unsigned dim_ = 0;
    std::vector<Elem> basis_;
    std::vector<unsigned> pivots_;
};

/// Order used for canonical listings: by dimension, then pivot columns
/// lexicographically, then basis entries row-major. Within one dimension this
/// is exactly the Grassmannian enumeration order.
bool canonical_less(const Subspace& a, const Subspace& b) noexcept;

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const noexcept { return s.hash(); }
};
struct MatrixHash {
    std::size_t operator()(const Matrix& m) const noexcept { return m.hash(); }
};

/// Row space of `rows` as a subspace of F_q^n; throws on column mismatch.
Subspace canonicalize(const Matrix& rows, unsigned n);
Subspace canonicalize(const Matrix& rows);

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// True iff b is a subspace of a.
bool contains(const Subspace& a, const Subspace& b);
/// Orthogonal complement for the standard bilinear form sum u_i v_i.
Subspace orthogonal(const Subspace& u);
/// Image {v M : v in a} for a row-vector action by an n x n matrix.
Subspace image(const Subspace& a, const Matrix& m);

/// Number of subspaces of F_q^n of every dimension; saturates at UINT64_MAX.
std::uint64_t count_subspaces(unsigned n, unsigned q);
/// Gaussian binomial as a machine integer; saturates at UINT64_MAX.
std::uint64_t gaussian_count(unsigned n, unsigned k, unsigned q);

/// The k-subspaces of F_q^n in a fixed order: pivot column sets in
/// lexicographic order, then free entries counted in base q with the first
/// free entry (row-major) most significant. Supports random access so that
/// sweeps can be split by index range.
class Grassmannian {
public:
    Grassmannian(unsigned n, unsigned k, FieldSpec spec);

    std::uint64_t size() const noexcept { return size_; }
    unsigned n() const noexcept { return n_; }
    unsigned k() const noexcept { return k_; }
    const FieldSpec& spec() const noexcept { return spec_; }

    Subspace at(std::uint64_t index) const;

    /// Calls fn on every member with index in [lo, hi), in order.
    void for_range(std::uint64_t lo, std::uint64_t hi, const std::function<void(const Subspace&)>& fn) const;
    void for_each(const std::function<void(const Subspace&)>& fn) const { for_range(0, size_, fn); }
    std::vector<Subspace> all() const;

private:
    struct Cursor;
    Cursor seek(std::uint64_t index) const;

    unsigned n_, k_;
    FieldSpec spec_;
    std::uint64_t size_;
};

std::vector<Subspace> enumerate_grassmannian(unsigned n, unsigned k, const FieldSpec& spec);

/// All subspaces of F_q^n, by dimension then Grassmannian order. Throws
/// EnumerationLimitError when the count exceeds max_count.
std::vector<Subspace> all_subspaces(unsigned n, const FieldSpec& spec, std::uint64_t max_count);

/// The s-dimensional subspaces of a.
std::vector<Subspace> subspaces_of(const Subspace& a, unsigned s);
std::vector<Subspace> one_dim_subspaces_of(const Subspace& a);
/// The s-dimensional subspaces of the ambient space that contain a.
std::vector<Subspace> superspaces_of(const Subspace& a, unsigned s);

/// Standard basis vector e_{i+1} spans; convenience for tests and presets.
Subspace coordinate_span(FieldSpec spec, unsigned n, const std::vector<unsigned>& coords);

// Text forms: a vector is n base-q digits (0-9, then a-z), coordinate 1
// first; a subspace is its RREF rows joined by ';' ("" for the zero space).
std::string format_vector(std::span<const Elem> v, unsigned q);
std::vector<Elem> parse_vector(const std::string& s, unsigned q);
std::string format_subspace(const Subspace& a);
Subspace parse_subspace(const std::string& s, const FieldSpec& spec, unsigned n);

}  // namespace qpmd
