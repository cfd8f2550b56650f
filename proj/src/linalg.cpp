#include "qpmd/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <utility>

namespace qpmd {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    return __builtin_mul_overflow(a, b, &r) ? kSaturated : r;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    return __builtin_add_overflow(a, b, &r) ? kSaturated : r;
}

std::uint64_t sat_pow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r = sat_mul(r, b);
    return r;
}

void hash_mix(std::size_t& h, std::size_t v) noexcept {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

// GF(2) elimination on packed rows; bit j of a word is column j.
unsigned rref_gf2(std::vector<std::uint64_t>& w, unsigned cols) {
    unsigned rank = 0;
    const auto r = static_cast<unsigned>(w.size());
    for (unsigned c = 0; c < cols && rank < r; ++c) {
        const std::uint64_t bit = std::uint64_t{1} << c;
        unsigned piv = rank;
        while (piv < r && !(w[piv] & bit)) ++piv;
        if (piv == r) continue;
        std::swap(w[piv], w[rank]);
        for (unsigned i = 0; i < r; ++i)
            if (i != rank && (w[i] & bit)) w[i] ^= w[rank];
        ++rank;
    }
    w.resize(rank);
    return rank;
}

std::vector<std::uint64_t> pack(const std::vector<Elem>& a, unsigned rows, unsigned cols) {
    std::vector<std::uint64_t> w(rows, 0);
    for (unsigned i = 0; i < rows; ++i)
        for (unsigned j = 0; j < cols; ++j)
            if (a[i * cols + j]) w[i] |= std::uint64_t{1} << j;
    return w;
}

std::vector<Elem> unpack(const std::vector<std::uint64_t>& w, unsigned cols) {
    std::vector<Elem> a(w.size() * cols, 0);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (unsigned j = 0; j < cols; ++j) a[i * cols + j] = (w[i] >> j) & 1u;
    return a;
}

// Reduces an r x c row-major matrix to RREF, drops zero rows, returns rank.
unsigned rref(const FieldSpec& f, std::vector<Elem>& a, unsigned r, unsigned c) {
    if (f.q() == 2 && c <= 64) {
        auto w = pack(a, r, c);
        const unsigned rank = rref_gf2(w, c);
        a = unpack(w, c);
        return rank;
    }
    unsigned rank = 0;
    for (unsigned col = 0; col < c && rank < r; ++col) {
        unsigned piv = rank;
        while (piv < r && a[piv * c + col] == 0) ++piv;
        if (piv == r) continue;
        if (piv != rank)
            std::swap_ranges(a.begin() + piv * c, a.begin() + (piv + 1) * c, a.begin() + rank * c);
        const Elem s = f.inv(a[rank * c + col]);
        for (unsigned j = col; j < c; ++j) a[rank * c + j] = f.mul(a[rank * c + j], s);
        for (unsigned i = 0; i < r; ++i) {
            if (i == rank) continue;
            const Elem factor = a[i * c + col];
            if (factor == 0) continue;
            const Elem nf = f.neg(factor);
            for (unsigned j = col; j < c; ++j)
                a[i * c + j] = f.add(a[i * c + j], f.mul(nf, a[rank * c + j]));
        }
        ++rank;
    }
    a.resize(static_cast<std::size_t>(rank) * c);
    return rank;
}

void check_compatible(const Subspace& a, const Subspace& b) {
    if (a.spec() != b.spec()) throw std::invalid_argument("subspaces over different fields");
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("subspaces of different ambient dimension");
}

}  // namespace

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(FieldSpec spec, std::size_t rows, std::size_t cols)
    : spec_(std::move(spec)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

Matrix::Matrix(FieldSpec spec, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : spec_(std::move(spec)), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_) throw std::invalid_argument("matrix entry count does not match shape");
    for (auto e : a_)
        if (e >= spec_.q()) throw std::invalid_argument("matrix entry outside the field");
}

Matrix Matrix::identity(FieldSpec spec, std::size_t n) {
    Matrix m(std::move(spec), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (spec_ != o.spec_) throw std::invalid_argument("matrices over different fields");
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shapes do not conform");
    Matrix r(spec_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t l = 0; l < cols_; ++l) {
            const Elem x = (*this)(i, l);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r(i, j) = spec_.add(r(i, j), spec_.mul(x, o(l, j)));
        }
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(spec_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

std::size_t Matrix::hash() const noexcept {
    std::size_t h = rows_ * 131 + cols_;
    for (auto e : a_) hash_mix(h, e);
    return h;
}

std::size_t matrix_rank(const Matrix& m) {
    auto a = m.entries();
    return rref(m.spec(), a, static_cast<unsigned>(m.rows()), static_cast<unsigned>(m.cols()));
}

Matrix matrix_inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    const auto n = static_cast<unsigned>(m.rows());
    const FieldSpec& f = m.spec();
    std::vector<Elem> aug(static_cast<std::size_t>(n) * 2 * n, 0);
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) aug[i * 2 * n + j] = m(i, j);
        aug[i * 2 * n + n + i] = 1;
    }
    if (rref(f, aug, n, 2 * n) != n) throw std::domain_error("matrix is singular");
    for (unsigned i = 0; i < n; ++i)
        if (aug[i * 2 * n + i] != 1) throw std::domain_error("matrix is singular");
    Matrix r(f, n, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) r(i, j) = aug[i * 2 * n + n + j];
    return r;
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(FieldSpec spec, unsigned n, unsigned dim, std::vector<Elem> basis)
    : spec_(std::move(spec)), n_(n), dim_(dim), basis_(std::move(basis)) {
    pivots_.reserve(dim_);
    for (unsigned i = 0; i < dim_; ++i) {
        unsigned j = 0;
        while (j < n_ && basis_[i * n_ + j] == 0) ++j;
        assert(j < n_);
        pivots_.push_back(j);
    }
}

Subspace Subspace::zero(FieldSpec spec, unsigned n) { return Subspace(std::move(spec), n, 0, {}); }

Subspace Subspace::full(FieldSpec spec, unsigned n) {
    std::vector<Elem> b(static_cast<std::size_t>(n) * n, 0);
    for (unsigned i = 0; i < n; ++i) b[i * n + i] = 1;
    return Subspace(std::move(spec), n, n, std::move(b));
}

Subspace Subspace::span(FieldSpec spec, unsigned n, const std::vector<std::vector<Elem>>& rows) {
    std::vector<Elem> a;
    a.reserve(rows.size() * n);
    for (const auto& r : rows) {
        if (r.size() != n) throw std::invalid_argument("generator length does not match ambient dimension");
        for (auto e : r) {
            if (e >= spec.q()) throw std::invalid_argument("vector entry outside the field");
            a.push_back(e);
        }
    }
    const unsigned rank = rref(spec, a, static_cast<unsigned>(rows.size()), n);
    return Subspace(std::move(spec), n, rank, std::move(a));
}

Subspace Subspace::from_rref(FieldSpec spec, unsigned n, unsigned dim, std::vector<Elem> basis) {
    return Subspace(std::move(spec), n, dim, std::move(basis));
}

Matrix Subspace::basis_matrix() const { return Matrix(spec_, dim_, n_, basis_); }

bool Subspace::contains_vector(std::span<const Elem> v) const {
    std::vector<Elem> w(v.begin(), v.end());
    for (unsigned i = 0; i < dim_; ++i) {
        const Elem c = v[pivots_[i]];
        if (c == 0) continue;
        const Elem nc = spec_.neg(c);
        for (unsigned j = pivots_[i]; j < n_; ++j) w[j] = spec_.add(w[j], spec_.mul(nc, basis_[i * n_ + j]));
    }
    return std::all_of(w.begin(), w.end(), [](Elem e) { return e == 0; });
}

std::size_t Subspace::hash() const noexcept {
    std::size_t h = n_ * 1009 + dim_;
    for (auto e : basis_) hash_mix(h, e);
    return h;
}

bool canonical_less(const Subspace& a, const Subspace& b) noexcept {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    if (a.pivots() != b.pivots()) return a.pivots() < b.pivots();
    return a.basis() < b.basis();
}

Subspace canonicalize(const Matrix& rows, unsigned n) {
    if (rows.cols() != n) throw std::invalid_argument("generator matrix has the wrong number of columns");
    auto a = rows.entries();
    const unsigned rank = rref(rows.spec(), a, static_cast<unsigned>(rows.rows()), n);
    return Subspace::from_rref(rows.spec(), n, rank, std::move(a));
}

Subspace canonicalize(const Matrix& rows) { return canonicalize(rows, static_cast<unsigned>(rows.cols())); }

Subspace sum(const Subspace& a, const Subspace& b) {
    check_compatible(a, b);
    if (b.dim() == 0) return a;
    if (a.dim() == 0) return b;
    const unsigned n = a.ambient_dim();
    std::vector<Elem> m;
    m.reserve(a.basis().size() + b.basis().size());
    m.insert(m.end(), a.basis().begin(), a.basis().end());
    m.insert(m.end(), b.basis().begin(), b.basis().end());
    const unsigned rank = rref(a.spec(), m, a.dim() + b.dim(), n);
    return Subspace::from_rref(a.spec(), n, rank, std::move(m));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    check_compatible(a, b);
    const unsigned n = a.ambient_dim();
    if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.spec(), n);
    if (a.dim() == n) return b;
    if (b.dim() == n) return a;
    // Zassenhaus: rows [a | a] and [b | 0]; rows whose left half vanishes
    // after elimination span a ∩ b in their right half.
    const unsigned w = 2 * n, r = a.dim() + b.dim();
    std::vector<Elem> m(static_cast<std::size_t>(r) * w, 0);
    for (unsigned i = 0; i < a.dim(); ++i)
        for (unsigned j = 0; j < n; ++j) m[i * w + j] = m[i * w + n + j] = a.at(i, j);
    for (unsigned i = 0; i < b.dim(); ++i)
        for (unsigned j = 0; j < n; ++j) m[(a.dim() + i) * w + j] = b.at(i, j);
    const unsigned rank = rref(a.spec(), m, r, w);
    std::vector<Elem> out;
    unsigned dim = 0;
    for (unsigned i = 0; i < rank; ++i) {
        bool left_zero = true;
        for (unsigned j = 0; j < n && left_zero; ++j) left_zero = m[i * w + j] == 0;
        if (!left_zero) continue;
        out.insert(out.end(), m.begin() + i * w + n, m.begin() + (i + 1) * w);
        ++dim;
    }
    // The right halves come out of a full RREF of the stacked matrix, so they
    // are already reduced among themselves.
    return Subspace::from_rref(a.spec(), n, dim, std::move(out));
}

bool contains(const Subspace& a, const Subspace& b) {
    check_compatible(a, b);
    if (b.dim() > a.dim()) return false;
    for (unsigned i = 0; i < b.dim(); ++i)
        if (!a.contains_vector(b.row(i))) return false;
    return true;
}

Subspace orthogonal(const Subspace& u) {
    const unsigned n = u.ambient_dim(), d = u.dim();
    const FieldSpec& f = u.spec();
    std::vector<bool> is_pivot(n, false);
    for (auto p : u.pivots()) is_pivot[p] = true;
    std::vector<std::vector<Elem>> gens;
    for (unsigned col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        std::vector<Elem> v(n, 0);
        v[col] = 1;
        for (unsigned i = 0; i < d; ++i) v[u.pivots()[i]] = f.neg(u.at(i, col));
        gens.push_back(std::move(v));
    }
    return Subspace::span(f, n, gens);
}

Subspace image(const Subspace& a, const Matrix& m) {
    const unsigned n = a.ambient_dim();
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("map dimension does not match ambient dimension");
    if (m.spec() != a.spec()) throw std::invalid_argument("map over a different field");
    if (a.dim() == 0) return a;
    return canonicalize(a.basis_matrix() * m, n);
}

// ---------------------------------------------------------------- counting

std::uint64_t gaussian_count(unsigned n, unsigned k, unsigned q) {
    if (k > n) return 0;
    // [n,k] = [n-1,k-1] + q^k [n-1,k]
    std::vector<std::uint64_t> row(k + 1, 0);
    row[0] = 1;
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = std::min(i, k); j >= 1; --j) row[j] = sat_add(row[j - 1], sat_mul(sat_pow(q, j), row[j]));
    return row[k];
}

std::uint64_t count_subspaces(unsigned n, unsigned q) {
    std::uint64_t total = 0;
    for (unsigned k = 0; k <= n; ++k) total = sat_add(total, gaussian_count(n, k, q));
    return total;
}

// ---------------------------------------------------------------- Grassmannian

struct Grassmannian::Cursor {
    std::vector<unsigned> pivots;
    std::vector<std::pair<unsigned, unsigned>> free;  // (row, col), row-major
    std::vector<Elem> digits;
    bool done = false;
};

namespace {

std::vector<std::pair<unsigned, unsigned>> free_positions(const std::vector<unsigned>& piv, unsigned n) {
    std::vector<bool> is_pivot(n, false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned i = 0; i < piv.size(); ++i)
        for (unsigned c = piv[i] + 1; c < n; ++c)
            if (!is_pivot[c]) out.emplace_back(i, c);
    return out;
}

bool next_combination(std::vector<unsigned>& c, unsigned n) {
    const auto k = static_cast<unsigned>(c.size());
    for (unsigned i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (unsigned j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

Grassmannian::Grassmannian(unsigned n, unsigned k, FieldSpec spec) : n_(n), k_(k), spec_(std::move(spec)) {
    if (k > n) throw std::invalid_argument("subspace dimension exceeds ambient dimension");
    size_ = gaussian_count(n, k, spec_.q());
    if (size_ == kSaturated) throw EnumerationLimitError("Grassmannian too large to index");
}

Grassmannian::Cursor Grassmannian::seek(std::uint64_t index) const {
    Cursor c;
    if (index >= size_) {
        c.done = true;
        return c;
    }
    c.pivots.resize(k_);
    for (unsigned i = 0; i < k_; ++i) c.pivots[i] = i;
    while (true) {
        c.free = free_positions(c.pivots, n_);
        const std::uint64_t block = sat_pow(spec_.q(), static_cast<unsigned>(c.free.size()));
        if (index < block) break;
        index -= block;
        next_combination(c.pivots, n_);
    }
    c.digits.assign(c.free.size(), 0);
    for (std::size_t i = c.free.size(); i-- > 0;) {
        c.digits[i] = static_cast<Elem>(index % spec_.q());
        index /= spec_.q();
    }
    return c;
}

Subspace Grassmannian::at(std::uint64_t index) const {
    if (index >= size_) throw std::out_of_range("Grassmannian index out of range");
    Subspace out = Subspace::zero(spec_, n_);
    for_range(index, index + 1, [&](const Subspace& s) { out = s; });
    return out;
}

void Grassmannian::for_range(std::uint64_t lo, std::uint64_t hi,
                             const std::function<void(const Subspace&)>& fn) const {
    hi = std::min(hi, size_);
    if (lo >= hi) return;
    Cursor c = seek(lo);
    const unsigned q = spec_.q();
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        std::vector<Elem> b(static_cast<std::size_t>(k_) * n_, 0);
        for (unsigned i = 0; i < k_; ++i) b[i * n_ + c.pivots[i]] = 1;
        for (std::size_t f = 0; f < c.free.size(); ++f) b[c.free[f].first * n_ + c.free[f].second] = c.digits[f];
        fn(Subspace::from_rref(spec_, n_, k_, std::move(b)));

        bool advanced = false;
        for (std::size_t pos = c.digits.size(); pos-- > 0;) {
            if (++c.digits[pos] < q) {
                advanced = true;
                break;
            }
            c.digits[pos] = 0;
        }
        if (!advanced) {
            if (!next_combination(c.pivots, n_)) break;
            c.free = free_positions(c.pivots, n_);
            c.digits.assign(c.free.size(), 0);
        }
    }
}

std::vector<Subspace> Grassmannian::all() const {
    std::vector<Subspace> out;
    out.reserve(static_cast<std::size_t>(size_));
    for_each([&](const Subspace& s) { out.push_back(s); });
    return out;
}

std::vector<Subspace> enumerate_grassmannian(unsigned n, unsigned k, const FieldSpec& spec) {
    return Grassmannian(n, k, spec).all();
}

std::vector<Subspace> all_subspaces(unsigned n, const FieldSpec& spec, std::uint64_t max_count) {
    const std::uint64_t total = count_subspaces(n, spec.q());
    if (total > max_count)
        throw EnumerationLimitError("F_" + std::to_string(spec.q()) + "^" + std::to_string(n) + " has " +
                                    (total == kSaturated ? std::string("too many") : std::to_string(total)) +
                                    " subspaces, above the bound " + std::to_string(max_count));
    std::vector<Subspace> out;
    out.reserve(static_cast<std::size_t>(total));
    for (unsigned k = 0; k <= n; ++k) Grassmannian(n, k, spec).for_each([&](const Subspace& s) { out.push_back(s); });
    return out;
}

std::vector<Subspace> subspaces_of(const Subspace& a, unsigned s) {
    if (s > a.dim()) return {};
    const Matrix basis = a.basis_matrix();
    std::vector<Subspace> out;
    Grassmannian(a.dim(), s, a.spec()).for_each([&](const Subspace& coeffs) {
        if (s == 0) {
            out.push_back(Subspace::zero(a.spec(), a.ambient_dim()));
            return;
        }
        out.push_back(canonicalize(coeffs.basis_matrix() * basis, a.ambient_dim()));
    });
    return out;
}

std::vector<Subspace> one_dim_subspaces_of(const Subspace& a) { return subspaces_of(a, 1); }

std::vector<Subspace> superspaces_of(const Subspace& a, unsigned s) {
    const unsigned n = a.ambient_dim(), d = a.dim();
    if (s < d || s > n) return {};
    std::vector<bool> is_pivot(n, false);
    for (auto p : a.pivots()) is_pivot[p] = true;
    std::vector<unsigned> quotient_cols;
    for (unsigned c = 0; c < n; ++c)
        if (!is_pivot[c]) quotient_cols.push_back(c);
    std::vector<Subspace> out;
    Grassmannian(n - d, s - d, a.spec()).for_each([&](const Subspace& w) {
        std::vector<Elem> m = a.basis();
        m.resize(static_cast<std::size_t>(s) * n, 0);
        for (unsigned i = 0; i < w.dim(); ++i)
            for (unsigned j = 0; j < n - d; ++j) m[(d + i) * n + quotient_cols[j]] = w.at(i, j);
        out.push_back(canonicalize(Matrix(a.spec(), s, n, std::move(m)), n));
    });
    return out;
}

Subspace coordinate_span(FieldSpec spec, unsigned n, const std::vector<unsigned>& coords) {
    std::vector<std::vector<Elem>> rows;
    for (auto c : coords) {
        if (c >= n) throw std::invalid_argument("coordinate out of range");
        std::vector<Elem> v(n, 0);
        v[c] = 1;
        rows.push_back(std::move(v));
    }
    return Subspace::span(std::move(spec), n, rows);
}

// ---------------------------------------------------------------- text forms

namespace {

char digit_char(Elem d) { return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + (d - 10)); }

Elem digit_value(char ch, unsigned q) {
    Elem v;
    if (ch >= '0' && ch <= '9') v = static_cast<Elem>(ch - '0');
    else if (ch >= 'a' && ch <= 'z') v = static_cast<Elem>(ch - 'a' + 10);
    else throw std::invalid_argument(std::string("invalid digit '") + ch + "'");
    if (v >= q) throw std::invalid_argument(std::string("digit '") + ch + "' out of range for q=" + std::to_string(q));
    return v;
}

void check_text_order(unsigned q) {
    if (q > 36) throw std::invalid_argument("text vector format supports q <= 36");
}

}  // namespace

std::string format_vector(std::span<const Elem> v, unsigned q) {
    check_text_order(q);
    std::string s;
    s.reserve(v.size());
    for (auto e : v) s.push_back(digit_char(e));
    return s;
}

std::vector<Elem> parse_vector(const std::string& s, unsigned q) {
    check_text_order(q);
    std::vector<Elem> v;
    v.reserve(s.size());
    for (char ch : s) v.push_back(digit_value(ch, q));
    return v;
}

std::string format_subspace(const Subspace& a) {
    std::string s;
    for (unsigned i = 0; i < a.dim(); ++i) {
        if (i) s.push_back(';');
        s += format_vector(a.row(i), a.spec().q());
    }
    return s;
}

Subspace parse_subspace(const std::string& s, const FieldSpec& spec, unsigned n) {
    std::vector<std::vector<Elem>> rows;
    std::size_t start = 0;
    while (start <= s.size() && !s.empty()) {
        const auto end = s.find(';', start);
        const std::string tok = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
        auto v = parse_vector(tok, spec.q());
        if (v.size() != n)
            throw std::invalid_argument("vector '" + tok + "' has length " + std::to_string(v.size()) + ", expected " +
                                        std::to_string(n));
        rows.push_back(std::move(v));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return Subspace::span(spec, n, rows);
}

}  // namespace qpmd
