#include "qpmd/io.hpp"

#include <fstream>
#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qpmd {

namespace {

struct Reader {
    explicit Reader(std::istream& s) : in(s) {}

    std::istream& in;
    unsigned lineno = 0;
    std::vector<std::string> comments;

    // Next non-blank, non-comment line; false at end of input.
    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos) continue;
            if (line[first] == '#') {
                std::string c = line.substr(first + 1);
                if (!c.empty() && c.front() == ' ') c.erase(0, 1);
                comments.push_back(std::move(c));
                continue;
            }
            const auto last = line.find_last_not_of(" \t");
            line = line.substr(first, last - first + 1);
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw FormatError("line " + std::to_string(std::max(lineno, 1u)) + ": " + msg);
    }

    void expect_magic(const std::string& magic) {
        std::string line;
        if (!next(line)) fail("empty input, expected '" + magic + "'");
        if (line != magic) fail("expected '" + magic + "', got '" + line + "'");
    }

    std::map<std::string, std::string> header(const std::vector<std::string>& keys) {
        std::string line;
        if (!next(line)) fail("missing header line");
        std::map<std::string, std::string> kv;
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0) fail("malformed header field '" + tok + "'");
            if (!kv.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second) fail("duplicate header field '" + tok + "'");
        }
        for (const auto& k : keys)
            if (!kv.count(k)) fail("header is missing '" + k + "='");
        if (kv.size() != keys.size()) fail("unexpected header field in '" + line + "'");
        return kv;
    }

    unsigned number(const std::string& key, const std::string& v) const {
        if (v.empty() || v.size() > 9 || v.find_first_not_of("0123456789") != std::string::npos)
            fail("'" + key + "' must be a small non-negative integer, got '" + v + "'");
        return static_cast<unsigned>(std::stoul(v));
    }

    FieldSpec field(const std::string& v) const {
        const unsigned q = number("q", v);
        if (q > 36) fail("q must be at most 36 for the digit format");
        try {
            return field_of_order(q);
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }

    Subspace subspace(const std::string& line, const FieldSpec& spec, unsigned n) const {
        try {
            return parse_subspace(line, spec, n);
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }
};

void put_header(std::ostream& out, const std::string& magic, const std::string& fields) { out << magic << '\n' << fields << '\n'; }

}  // namespace

DesignFile read_design(std::istream& in) {
    Reader r(in);
    r.expect_magic("QDESIGN v1");
    const auto kv = r.header({"q", "n", "t", "k", "lambda"});
    const FieldSpec spec = r.field(kv.at("q"));
    const unsigned n = r.number("n", kv.at("n")), t = r.number("t", kv.at("t")), k = r.number("k", kv.at("k"));
    const std::string& ls = kv.at("lambda");
    if (ls.empty() || ls.find_first_not_of("0123456789") != std::string::npos) r.fail("lambda must be a non-negative integer");
    DesignParams params;
    try {
        params = DesignParams::make(t, n, k, BigInt(ls), spec.q());
    } catch (const std::exception& e) {
        r.fail(e.what());
    }
    std::vector<Subspace> blocks;
    std::set<std::string> seen;
    std::string line;
    while (r.next(line)) {
        Subspace b = r.subspace(line, spec, n);
        if (b.dim() != k) r.fail("block spans dimension " + std::to_string(b.dim()) + ", expected " + std::to_string(k));
        if (!seen.insert(format_subspace(b)).second) r.fail("duplicate block [" + format_subspace(b) + "]");
        blocks.push_back(std::move(b));
    }
    try {
        return DesignFile{Design(params, spec, std::move(blocks)), std::move(r.comments)};
    } catch (const std::exception& e) {
        throw FormatError(e.what());
    }
}

DesignFile read_design_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_design(in);
}

std::string format_design(const Design& d, const std::vector<std::string>& comments) {
    std::ostringstream out;
    write_design(out, d, comments);
    return out.str();
}

void write_design(std::ostream& out, const Design& d, const std::vector<std::string>& comments) {
    const auto& p = d.params();
    put_header(out, "QDESIGN v1",
               "q=" + std::to_string(p.q) + " n=" + std::to_string(p.n) + " t=" + std::to_string(p.t) +
                   " k=" + std::to_string(p.k) + " lambda=" + to_string(p.lambda));
    for (const auto& c : comments) out << "# " << c << '\n';
    for (const auto& b : d.blocks()) out << format_subspace(b) << '\n';
}

FlatFamily read_flats(std::istream& in) {
    Reader r(in);
    r.expect_magic("FLATS v1");
    const auto kv = r.header({"q", "n"});
    const FieldSpec spec = r.field(kv.at("q"));
    const unsigned n = r.number("n", kv.at("n"));
    std::vector<Subspace> members;
    std::string line;
    while (r.next(line)) members.push_back(r.subspace(line, spec, n));
    return FlatFamily::from_members(spec, n, std::move(members));
}

std::string format_flats(const FlatFamily& f) {
    std::ostringstream out;
    const unsigned n = f.ambient_dim();
    put_header(out, "FLATS v1", "q=" + std::to_string(f.spec().q()) + " n=" + std::to_string(n));
    for (const auto& m : f.members()) out << (m.dim() == 0 ? std::string(n, '0') : format_subspace(m)) << '\n';
    return out.str();
}

Matrix read_matrix(std::istream& in) {
    Reader r(in);
    r.expect_magic("QMATRIX v1");
    const auto kv = r.header({"q", "rows", "cols"});
    const FieldSpec spec = r.field(kv.at("q"));
    const unsigned rows = r.number("rows", kv.at("rows")), cols = r.number("cols", kv.at("cols"));
    std::vector<Elem> e;
    std::string line;
    unsigned got = 0;
    while (r.next(line)) {
        std::vector<Elem> v;
        try {
            v = parse_vector(line, spec.q());
        } catch (const std::exception& ex) {
            r.fail(ex.what());
        }
        if (v.size() != cols) r.fail("row has " + std::to_string(v.size()) + " entries, expected " + std::to_string(cols));
        e.insert(e.end(), v.begin(), v.end());
        ++got;
    }
    if (got != rows) r.fail("found " + std::to_string(got) + " rows, expected " + std::to_string(rows));
    return Matrix(spec, rows, cols, std::move(e));
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_matrix(in);
}

std::string format_matrix(const Matrix& m) {
    std::ostringstream out;
    put_header(out, "QMATRIX v1",
               "q=" + std::to_string(m.spec().q()) + " rows=" + std::to_string(m.rows()) + " cols=" + std::to_string(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) out << format_vector(m.row(i), m.spec().q()) << '\n';
    return out.str();
}

}  // namespace qpmd
