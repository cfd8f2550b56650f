#include "qpmd/field.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace qpmd {

struct FieldTables {
    unsigned p = 0, m = 0, q = 0;
    std::vector<unsigned> modulus;
    std::vector<Elem> exp;  // exp[i] = g^i, length 2(q-1)
    std::vector<std::uint32_t> log;
    std::vector<Elem> neg;
    std::vector<Elem> add;  // q*q table when q <= 256, empty otherwise
};

namespace {

constexpr unsigned kMaxOrder = 1u << 16;
constexpr unsigned kAddTableLimit = 256;

std::vector<unsigned> to_digits(Elem a, unsigned p, unsigned m) {
    std::vector<unsigned> c(m);
    for (unsigned i = 0; i < m; ++i) {
        c[i] = a % p;
        a /= p;
    }
    return c;
}

Elem from_digits_raw(const std::vector<unsigned>& c, unsigned p) {
    Elem v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * p + *it;
    return v;
}

Elem digit_add(Elem a, Elem b, unsigned p, unsigned m) {
    if (p == 2) return a ^ b;
    Elem r = 0, scale = 1;
    for (unsigned i = 0; i < m; ++i) {
        r += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    return r;
}

// Multiply two reduced polynomials and reduce modulo the monic modulus.
Elem poly_mulmod(Elem a, Elem b, unsigned p, const std::vector<unsigned>& mod) {
    const unsigned m = static_cast<unsigned>(mod.size()) - 1;
    auto ca = to_digits(a, p, m), cb = to_digits(b, p, m);
    std::vector<unsigned> prod(2 * m, 0);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
    for (unsigned d = 2 * m - 1; d >= m; --d) {
        const unsigned c = prod[d];
        if (c == 0) continue;
        for (unsigned i = 0; i <= m; ++i)
            prod[d - m + i] = (prod[d - m + i] + (p - (c * mod[i]) % p)) % p;
    }
    prod.resize(m);
    return from_digits_raw(prod, p);
}

// Remainder of a modulo b over F_p (b nonzero, coefficients c_0 first).
std::vector<unsigned> poly_rem(std::vector<unsigned> a, const std::vector<unsigned>& b, unsigned p) {
    auto deg = [](const std::vector<unsigned>& v) {
        int d = static_cast<int>(v.size()) - 1;
        while (d >= 0 && v[d] == 0) --d;
        return d;
    };
    const int db = deg(b);
    unsigned lead_inv = 1;
    while ((lead_inv * b[db]) % p != 1) ++lead_inv;
    for (int da = deg(a); da >= db; da = deg(a)) {
        const unsigned c = (a[da] * lead_inv) % p;
        for (int i = 0; i <= db; ++i)
            a[da - db + i] = (a[da - db + i] + p - (c * b[i]) % p) % p;
    }
    return a;
}

std::shared_ptr<const FieldTables> build(unsigned p, unsigned m) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (m < 1) throw std::invalid_argument("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
        q *= p;
        if (q > kMaxOrder) throw std::invalid_argument("field order exceeds 2^16");
    }
    auto t = std::make_shared<FieldTables>();
    t->p = p;
    t->m = m;
    t->q = static_cast<unsigned>(q);

    if (m == 1) {
        t->modulus = {0, 1};
    } else {
        for (Elem low = 0; low < q; ++low) {
            auto c = to_digits(low, p, m);
            c.push_back(1);
            if (is_irreducible(c, p)) {
                t->modulus = std::move(c);
                break;
            }
        }
    }

    auto mul = [&](Elem a, Elem b) -> Elem {
        if (m == 1) return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p);
        return poly_mulmod(a, b, p, t->modulus);
    };

    // Primitive element search.
    const unsigned order = t->q - 1;
    t->log.assign(t->q, 0);
    t->exp.assign(2 * static_cast<std::size_t>(order), 0);
    for (Elem g = 1; g < t->q; ++g) {
        Elem x = 1;
        unsigned k = 0;
        do {
            t->exp[k] = x;
            x = mul(x, g);
            ++k;
        } while (x != 1 && k < order);
        if (k == order && x == 1) break;
    }
    for (unsigned i = 0; i < order; ++i) {
        t->exp[i + order] = t->exp[i];
        t->log[t->exp[i]] = i;
    }

    t->neg.resize(t->q);
    for (Elem a = 0; a < t->q; ++a) {
        auto c = to_digits(a, p, m);
        for (auto& d : c) d = (p - d) % p;
        t->neg[a] = from_digits_raw(c, p);
    }
    if (t->q <= kAddTableLimit) {
        t->add.resize(static_cast<std::size_t>(t->q) * t->q);
        for (Elem a = 0; a < t->q; ++a)
            for (Elem b = 0; b < t->q; ++b) t->add[a * t->q + b] = digit_add(a, b, p, m);
    }
    return t;
}

}  // namespace

bool is_prime(unsigned n) noexcept {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible(const std::vector<unsigned>& poly, unsigned p) {
    int deg = static_cast<int>(poly.size()) - 1;
    while (deg >= 0 && poly[deg] == 0) --deg;
    if (deg < 1) return false;
    if (deg == 1) return true;
    // Try every monic divisor of degree 1..deg/2.
    for (int d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::uint64_t low = 0; low < count; ++low) {
            std::vector<unsigned> div(d + 1);
            std::uint64_t v = low;
            for (int i = 0; i < d; ++i) {
                div[i] = static_cast<unsigned>(v % p);
                v /= p;
            }
            div[d] = 1;
            auto r = poly_rem(poly, div, p);
            bool zero = true;
            for (auto c : r) zero = zero && c == 0;
            if (zero) return false;
        }
    }
    return true;
}

FieldSpec::FieldSpec(unsigned p, unsigned m) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const FieldTables>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{p, m}];
    if (!slot) slot = build(p, m);
    t_ = slot;
}

unsigned FieldSpec::p() const noexcept { return t_->p; }
unsigned FieldSpec::m() const noexcept { return t_->m; }
unsigned FieldSpec::q() const noexcept { return t_->q; }
const std::vector<unsigned>& FieldSpec::modulus() const noexcept { return t_->modulus; }

Elem FieldSpec::add(Elem a, Elem b) const noexcept {
    if (t_->p == 2) return a ^ b;
    if (!t_->add.empty()) return t_->add[a * t_->q + b];
    return digit_add(a, b, t_->p, t_->m);
}

Elem FieldSpec::neg(Elem a) const noexcept { return t_->neg[a]; }

Elem FieldSpec::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem FieldSpec::mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return t_->exp[t_->log[a] + t_->log[b]];
}

Elem FieldSpec::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    const unsigned order = t_->q - 1;
    return t_->exp[(order - t_->log[a]) % order];
}

Elem FieldSpec::pow(Elem a, std::uint64_t e) const noexcept {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t order = t_->q - 1;
    return t_->exp[static_cast<std::size_t>((t_->log[a] * (e % order)) % order)];
}

std::vector<unsigned> FieldSpec::digits(Elem a) const { return to_digits(a, t_->p, t_->m); }

Elem FieldSpec::from_digits(const std::vector<unsigned>& c) const {
    if (c.size() != t_->m) throw std::invalid_argument("digit vector length must equal extension degree");
    for (auto d : c)
        if (d >= t_->p) throw std::invalid_argument("digit out of range");
    return from_digits_raw(c, t_->p);
}

std::string FieldSpec::name() const {
    return "F_" + std::to_string(t_->q);
}

FieldSpec field_new(unsigned p, unsigned m) { return FieldSpec(p, m); }

FieldSpec field_of_order(unsigned q) {
    if (q < 2) throw std::invalid_argument("field order must be at least 2");
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned m = 0, r = q;
    while (r % p == 0) {
        r /= p;
        ++m;
    }
    if (r != 1) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
    return FieldSpec(p, m);
}

FieldElement::FieldElement(FieldSpec spec, Elem repr) : spec_(std::move(spec)), repr_(repr) {
    if (repr_ >= spec_.q()) throw std::invalid_argument("field element out of range");
}

void FieldElement::check_same(const FieldElement& o) const {
    if (spec_ != o.spec_) throw std::invalid_argument("field elements from different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(o);
    return {spec_, spec_.add(repr_, o.repr_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same(o);
    return {spec_, spec_.sub(repr_, o.repr_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(o);
    return {spec_, spec_.mul(repr_, o.repr_)};
}

FieldElement FieldElement::operator-() const { return {spec_, spec_.neg(repr_)}; }

FieldElement FieldElement::inverse() const { return {spec_, spec_.inv(repr_)}; }

}  // namespace qpmd
