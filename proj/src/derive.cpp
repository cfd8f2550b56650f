#include "qpmd/derive.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <unordered_set>

#include "qpmd/parallel.hpp"

namespace qpmd {

std::string to_string(DerivedKind k) {
    switch (k) {
        case DerivedKind::independent_t1: return "independent_t1";
        case DerivedKind::circuit_t1: return "circuit_t1";
        case DerivedKind::circuit_t2: return "circuit_t2";
    }
    return "?";
}

DerivedKind parse_derived_kind(const std::string& s) {
    if (s == "independent_t1" || s == "independent" || s == "independent-t1") return DerivedKind::independent_t1;
    if (s == "circuit_t1" || s == "circuit-t1") return DerivedKind::circuit_t1;
    if (s == "circuit_t2" || s == "circuit-t2") return DerivedKind::circuit_t2;
    throw std::invalid_argument("unknown derived kind '" + s + "' (independent, circuit-t1, circuit-t2)");
}

unsigned block_dimension(DerivedKind k, unsigned t) { return k == DerivedKind::circuit_t2 ? t + 2 : t + 1; }

std::string to_string(SubspaceClass c) {
    switch (c) {
        case SubspaceClass::independent: return "independent";
        case SubspaceClass::circuit: return "circuit";
        case SubspaceClass::dependent_noncircuit: return "dependent-noncircuit";
    }
    return "?";
}

Classification classify_subspace(const SteinerSystem& s, const Subspace& a) {
    const unsigned t = s.t(), d = a.dim();
    const unsigned r = induced_rank(s, a);
    if (d <= t) return {SubspaceClass::independent, r};
    if (d == t + 1) return {r == d ? SubspaceClass::independent : SubspaceClass::circuit, r};
    if (d == t + 2 && r == t + 1) {
        for (const auto& h : subspaces_of(a, t + 1))
            if (s.block_containing(h)) return {SubspaceClass::dependent_noncircuit, r};
        return {SubspaceClass::circuit, r};
    }
    return {SubspaceClass::dependent_noncircuit, r};
}

// ---------------------------------------------------------------- lambda calculators

namespace {

BigInt qbin1(unsigned n, unsigned q) { return gaussian_binomial(n, 1, q); }

BigInt exact_div(const BigInt& num, const BigInt& den, const std::string& what) {
    if (den == 0 || num % den != 0)
        throw std::domain_error(what + ": " + to_string(num) + " is not divisible by " + to_string(den));
    return num / den;
}

}  // namespace

BigInt lambda_independent(const DesignParams& p) {
    if (!(p.t < p.k && p.k < p.n)) throw std::invalid_argument("lambda_independent needs t < k < n");
    return exact_div(q_power(p.q, p.n - p.t) - q_power(p.q, p.k - p.t), p.q - 1, "lambda_independent");
}

BigInt lambda_circuit_t1(const DesignParams& p) {
    if (!(p.t < p.k)) throw std::invalid_argument("lambda_circuit_t1 needs t < k");
    return qbin1(p.k - p.t, p.q);
}

BigInt lambda_circuit_t2(const DesignParams& p) {
    if (!(p.t < p.k && p.t + 2 <= p.n)) throw std::invalid_argument("lambda_circuit_t2 needs t < k and t + 2 <= n");
    const unsigned q = p.q;
    const BigInt inner = qbin1(p.n - p.t - 1, q) - qbin1(p.k - p.t, q) * qbin1(p.t + 1, q);
    const BigInt num = q_power(q, p.k - p.t) * qbin1(p.n - p.k, q) * inner;
    if (num < 0) throw std::domain_error("lambda_circuit_t2: negative value for " + p.str());
    return exact_div(num, q + 1, "lambda_circuit_t2");
}

BigInt derived_lambda(const DesignParams& p, DerivedKind kind) {
    switch (kind) {
        case DerivedKind::independent_t1: return lambda_independent(p);
        case DerivedKind::circuit_t1: return lambda_circuit_t1(p);
        case DerivedKind::circuit_t2: return lambda_circuit_t2(p);
    }
    throw std::logic_error("bad kind");
}

DesignParams derived_params(const DesignParams& p, DerivedKind kind) {
    return DesignParams::make(p.t, p.n, block_dimension(kind, p.t), derived_lambda(p, kind), p.q);
}

BigInt derived_block_count(const DesignParams& p, DerivedKind kind) {
    const unsigned d = block_dimension(kind, p.t);
    return exact_div(derived_lambda(p, kind) * gaussian_binomial(p.n, p.t, p.q), gaussian_binomial(d, p.t, p.q),
                     "derived block count");
}

Design derive_design(const SteinerSystem& s, DerivedKind kind, const DesignOptions& opts) {
    const DesignParams params = derived_params(s.params(), kind);
    const Grassmannian g(s.n(), params.k, s.spec());
    if (g.size() > opts.max_subspaces)
        throw EnumerationLimitError("the " + std::to_string(params.k) + "-Grassmannian has " + std::to_string(g.size()) +
                                    " members, above the bound " + std::to_string(opts.max_subspaces));
    const SubspaceClass want = kind == DerivedKind::independent_t1 ? SubspaceClass::independent : SubspaceClass::circuit;

    std::vector<std::vector<Subspace>> parts(resolve_jobs(opts.jobs));
    parallel_chunks(g.size(), opts.jobs, [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
        g.for_range(lo, hi, [&](const Subspace& a) {
            if (classify_subspace(s, a).cls == want) parts[w].push_back(a);
        });
    });
    std::vector<Subspace> blocks;
    for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(blocks));
    return Design(params, s.spec(), std::move(blocks));
}

Verdict check_supplementary_remark(const SteinerSystem& s, const DesignOptions& opts) {
    const Design indep = derive_design(s, DerivedKind::independent_t1, opts);
    const Design supp = supplementary_design(derive_design(s, DerivedKind::circuit_t1, opts), opts);
    if (indep.params() != supp.params())
        return Verdict::fail("supplementary", "parameters differ: " + indep.params().str() + " vs " + supp.params().str());
    for (std::size_t i = 0; i < std::min(indep.block_count(), supp.block_count()); ++i)
        if (indep.blocks()[i] != supp.blocks()[i])
            return Verdict::fail("supplementary", "block lists differ at position " + std::to_string(i),
                                 {indep.blocks()[i], supp.blocks()[i]});
    if (indep.block_count() != supp.block_count())
        return Verdict::fail("supplementary", "block counts differ: " + std::to_string(indep.block_count()) + " vs " +
                                                  std::to_string(supp.block_count()));
    return Verdict::pass();
}

// ---------------------------------------------------------------- automorphisms

LatticeMap::LatticeMap(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("lattice map needs a square matrix");
    if (matrix_rank(m_) != m_.rows()) throw std::invalid_argument("lattice map needs an invertible matrix");
}

bool is_automorphism(const LatticeMap& phi, const Design& d) {
    if (phi.matrix().rows() != d.params().n || phi.matrix().spec() != d.spec())
        throw std::invalid_argument("map and design live in different ambient spaces");
    // phi is injective on subspaces, so mapping B into B means mapping it onto B.
    return std::all_of(d.blocks().begin(), d.blocks().end(), [&](const Subspace& b) { return d.has_block(phi(b)); });
}

BigInt general_linear_order(unsigned n, unsigned q) {
    BigInt out = 1;
    const BigInt qn = q_power(q, n);
    for (unsigned i = 0; i < n; ++i) out *= qn - q_power(q, i);
    return out;
}

namespace {

struct VectorSpace {
    unsigned n, q;
    std::uint64_t size;
    std::vector<std::vector<Elem>> vecs;  // vecs[i] = base-q digits of i, coordinate 1 most significant
    FieldSpec spec;

    VectorSpace(unsigned n_, const FieldSpec& s) : n(n_), q(s.q()), size(1), spec(s) {
        for (unsigned i = 0; i < n; ++i) size *= q;
        vecs.resize(size);
        for (std::uint64_t i = 0; i < size; ++i) {
            std::vector<Elem> v(n);
            std::uint64_t x = i;
            for (unsigned j = n; j-- > 0;) {
                v[j] = static_cast<Elem>(x % q);
                x /= q;
            }
            vecs[i] = std::move(v);
        }
    }

    std::uint64_t index(const std::vector<Elem>& v) const {
        std::uint64_t x = 0;
        for (auto c : v) x = x * q + c;
        return x;
    }

    // span ∪ (span + c v) for all c.
    std::vector<char> extend(const std::vector<char>& in_span, std::uint64_t v) const {
        std::vector<char> out(in_span);
        std::vector<Elem> w(n);
        for (std::uint64_t s = 0; s < size; ++s) {
            if (!in_span[s]) continue;
            for (Elem c = 1; c < q; ++c) {
                for (unsigned j = 0; j < n; ++j) w[j] = spec.add(vecs[s][j], spec.mul(c, vecs[v][j]));
                out[index(w)] = 1;
            }
        }
        return out;
    }
};

void invertible_dfs(const VectorSpace& vs, std::vector<std::uint64_t>& rows, const std::vector<char>& in_span,
                    const std::function<void(const Matrix&)>& fn) {
    if (rows.size() == vs.n) {
        std::vector<Elem> e;
        e.reserve(static_cast<std::size_t>(vs.n) * vs.n);
        for (auto r : rows) e.insert(e.end(), vs.vecs[r].begin(), vs.vecs[r].end());
        fn(Matrix(vs.spec, vs.n, vs.n, std::move(e)));
        return;
    }
    for (std::uint64_t v = 1; v < vs.size; ++v) {
        if (in_span[v]) continue;
        rows.push_back(v);
        invertible_dfs(vs, rows, vs.extend(in_span, v), fn);
        rows.pop_back();
    }
}

void check_gl_bound(unsigned n, unsigned q, std::uint64_t max_order) {
    const BigInt order = general_linear_order(n, q);
    if (order > max_order)
        throw EnumerationLimitError("GL(" + std::to_string(n) + "," + std::to_string(q) + ") has " + to_string(order) +
                                    " elements, above the bound " + std::to_string(max_order));
}

// Invertible matrices whose first row is vecs[first].
void for_each_with_first_row(const VectorSpace& vs, std::uint64_t first, const std::function<void(const Matrix&)>& fn) {
    std::vector<char> zero(vs.size, 0);
    zero[0] = 1;
    std::vector<std::uint64_t> rows{first};
    invertible_dfs(vs, rows, vs.extend(zero, first), fn);
}

}  // namespace

void for_each_invertible(unsigned n, const FieldSpec& spec, std::uint64_t max_order,
                         const std::function<void(const Matrix&)>& fn) {
    check_gl_bound(n, spec.q(), max_order);
    const VectorSpace vs(n, spec);
    for (std::uint64_t first = 1; first < vs.size; ++first) for_each_with_first_row(vs, first, fn);
}

AutomorphismGroup automorphism_group(const Design& d, const AutOptions& opts) {
    const unsigned n = d.params().n;
    check_gl_bound(n, d.spec().q(), opts.max_group_order);
    const VectorSpace vs(n, d.spec());
    std::vector<std::vector<Matrix>> parts(resolve_jobs(opts.jobs));
    parallel_chunks(vs.size - 1, opts.jobs, [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
        for (std::uint64_t i = lo; i < hi; ++i)
            for_each_with_first_row(vs, i + 1, [&](const Matrix& m) {
                const bool keep = std::all_of(d.blocks().begin(), d.blocks().end(),
                                              [&](const Subspace& b) { return d.has_block(image(b, m)); });
                if (keep) parts[w].push_back(m);
            });
    });
    AutomorphismGroup g;
    for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(g.elements));
    return g;
}

bool is_group(const std::vector<Matrix>& elements) {
    if (elements.empty()) return false;
    const std::unordered_set<Matrix, MatrixHash> members(elements.begin(), elements.end());
    if (members.size() != elements.size()) return false;
    const Matrix id = Matrix::identity(elements.front().spec(), elements.front().rows());
    if (!members.count(id)) return false;

    // Grow the subgroup generated by a greedy generating set; the list is a
    // group exactly when that subgroup stays inside it and reaches all of it.
    std::vector<Matrix> gens;
    std::unordered_set<Matrix, MatrixHash> generated{id};
    for (const auto& g : elements) {
        if (generated.count(g)) continue;
        gens.push_back(g);
        std::vector<Matrix> frontier(generated.begin(), generated.end());
        while (!frontier.empty()) {
            std::vector<Matrix> next;
            for (const auto& h : frontier)
                for (const auto& s : gens) {
                    Matrix p = h * s;
                    if (generated.count(p)) continue;
                    if (!members.count(p)) return false;
                    generated.insert(p);
                    next.push_back(std::move(p));
                }
            frontier = std::move(next);
        }
    }
    return generated.size() == members.size();
}

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::not_applicable: return "not-applicable";
    }
    return "?";
}

bool TransferReport::ok() const {
    return std::none_of(entries.begin(), entries.end(), [](const TransferEntry& e) { return e.status == CheckStatus::fail; });
}

namespace {

bool same_set(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
    if (a.size() != b.size()) return false;
    const std::unordered_set<Matrix, MatrixHash> sa(a.begin(), a.end());
    return std::all_of(b.begin(), b.end(), [&](const Matrix& m) { return sa.count(m) != 0; });
}

}  // namespace

TransferReport check_aut_transfer(const SteinerSystem& s, const AutOptions& opts, const DesignOptions& dopts) {
    TransferReport rep;
    const AutomorphismGroup base = automorphism_group(s.design(), opts);
    rep.steiner_order = base.order();
    const bool base_is_group = is_group(base.elements);

    auto compare = [&](const std::string& name, const Design& d) {
        if (d.block_count() == 0) {
            rep.entries.push_back({name, CheckStatus::not_applicable, 0});
            return;
        }
        const AutomorphismGroup g = automorphism_group(d, opts);
        const bool ok = base_is_group && same_set(base.elements, g.elements);
        rep.entries.push_back({name, ok ? CheckStatus::pass : CheckStatus::fail, g.order()});
    };
    for (auto kind : {DerivedKind::independent_t1, DerivedKind::circuit_t1, DerivedKind::circuit_t2})
        compare(to_string(kind), derive_design(s, kind, dopts));
    compare("supplementary", supplementary_design(s.design(), dopts));
    return rep;
}

SampledTransfer sampled_aut_transfer(const Design& steiner, const Design& derived, const std::vector<Matrix>& stabilizer_gens,
                                     const std::vector<Matrix>& all_gens, std::uint64_t samples, std::uint64_t seed,
                                     unsigned word_length) {
    if (stabilizer_gens.empty() || all_gens.empty()) throw std::invalid_argument("generator sets must be nonempty");
    std::vector<Matrix> mixed(stabilizer_gens);
    mixed.insert(mixed.end(), all_gens.begin(), all_gens.end());
    std::mt19937_64 rng(seed);
    const Matrix id = Matrix::identity(steiner.spec(), steiner.params().n);

    SampledTransfer out;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const auto& pool = i % 2 == 0 ? stabilizer_gens : mixed;
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        Matrix m = id;
        for (unsigned j = 0; j < word_length; ++j) m = m * pool[pick(rng)];
        const LatticeMap phi(std::move(m));
        const bool a = is_automorphism(phi, steiner), b = is_automorphism(phi, derived);
        ++out.samples;
        out.agreements += a == b ? 1 : 0;
        out.automorphisms += a ? 1 : 0;
    }
    return out;
}

namespace {

Elem primitive_element(const FieldSpec& f) {
    const std::uint64_t order = f.q() - 1;
    for (Elem g = 2; g < f.q(); ++g) {
        bool prim = true;
        for (std::uint64_t d = 1; d < order && prim; ++d)
            if (order % d == 0 && f.pow(g, d) == 1) prim = false;
        if (prim) return g;
    }
    return 1;  // F_2
}

std::vector<Matrix> elementary_generators(unsigned n, const FieldSpec& f, const std::vector<Elem>& coeffs) {
    std::vector<Matrix> out;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            if (i == j) continue;
            for (auto c : coeffs) {
                Matrix m = Matrix::identity(f, n);
                m(i, j) = c;
                out.push_back(std::move(m));
            }
        }
    const Elem w = primitive_element(f);
    if (w != 1) {
        Matrix m = Matrix::identity(f, n);
        m(0, 0) = w;
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace

std::vector<Matrix> general_linear_generators(unsigned n, const FieldSpec& spec) {
    if (spec.m() != 1) throw std::invalid_argument("general_linear_generators supports prime q only");
    return elementary_generators(n, spec, {1});
}

std::vector<Matrix> spread_stabilizer_generators(unsigned n, unsigned k, const FieldSpec& spec) {
    if (spec.m() != 1) throw std::invalid_argument("spread_stabilizer_generators supports prime q only");
    if (k == 0 || n % k != 0) throw std::invalid_argument("spread needs k to divide n");
    const FieldSpec ext(spec.p(), k);
    const unsigned big_n = n / k;
    const Elem x = k > 1 ? static_cast<Elem>(spec.p()) : 1;
    std::vector<Elem> basis;
    for (unsigned j = 0; j < k; ++j) basis.push_back(ext.pow(x, j));

    std::vector<Matrix> out;
    for (const auto& m : elementary_generators(big_n, ext, basis)) out.push_back(expand_linear_map(m, spec));
    if (big_n == 1) {
        // elementary_generators only gives the scaling here; add multiplication by x.
        Matrix m = Matrix::identity(ext, 1);
        m(0, 0) = x;
        out.push_back(expand_linear_map(m, spec));
    }
    // Frobenius a -> a^p on each coordinate: F_p-linear, maps F_{q^k}-lines to F_{q^k}-lines.
    if (k > 1) {
        std::vector<Elem> e(static_cast<std::size_t>(n) * n, 0);
        for (unsigned i = 0; i < big_n; ++i)
            for (unsigned j = 0; j < k; ++j) {
                const auto img = ext.digits(ext.pow(basis[j], spec.p()));
                const std::size_t row = static_cast<std::size_t>(i) * k + j;
                for (unsigned l = 0; l < k; ++l) e[row * n + static_cast<std::size_t>(i) * k + l] = img[l];
            }
        out.emplace_back(spec, n, n, std::move(e));
    }
    return out;
}

CircuitCountReport check_circuit_count_identity(const SteinerSystem& s, const DesignOptions& opts) {
    const auto& p = s.params();
    const unsigned t = p.t, q = p.q;
    CircuitCountReport rep;
    rep.expected_pair_count = q_power(q, p.k - t) * qbin1(p.n - p.k, q) *
                              (qbin1(p.n - t - 1, q) - qbin1(t + 1, q) * qbin1(p.k - t, q));
    const Grassmannian tg(p.n, t, s.spec());
    if (tg.size() > opts.max_subspaces) throw EnumerationLimitError("the t-Grassmannian is above the bound");

    std::vector<std::optional<CircuitCountRow>> rows(tg.size());
    parallel_chunks(tg.size(), opts.jobs, [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
        std::uint64_t idx = lo;
        tg.for_range(lo, hi, [&](const Subspace& a) {
            // Proof-style count through the independent (t+1)-spaces over A.
            std::uint64_t pairs = 0;
            for (const auto& i : superspaces_of(a, t + 1)) {
                if (classify_subspace(s, i).cls != SubspaceClass::independent) continue;
                for (const auto& c : superspaces_of(i, t + 2))
                    if (classify_subspace(s, c).cls == SubspaceClass::circuit) ++pairs;
            }
            // Direct count of the circuits over A.
            std::uint64_t circuits = 0;
            for (const auto& c : superspaces_of(a, t + 2))
                if (classify_subspace(s, c).cls == SubspaceClass::circuit) ++circuits;
            rows[idx++] = CircuitCountRow{a, pairs, circuits};
        });
    });
    for (auto& r : rows) {
        if (r->pair_count != BigInt(q + 1) * r->circuit_count || r->pair_count != rep.expected_pair_count) rep.ok = false;
        rep.rows.push_back(std::move(*r));
    }
    return rep;
}

}  // namespace qpmd
