#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qpmd::cli {

enum ExitCode { ok = 0, failed = 1, usage = 2 };

/// Thrown for bad user input; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    bool machine = false;
    std::uint64_t max_subspaces = 100000;
    unsigned jobs = 0;
};

/// Report lines: "label: value" for people, "key=value" with --machine.
class Report {
public:
    Report(std::ostream& out, bool machine) : out_(out), machine_(machine) {}
    void line(const std::string& key, const std::string& value, const std::string& label = "");
    void text(const std::string& s);  // human mode only

private:
    std::ostream& out_;
    bool machine_;
};

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

int cmd_qbinom(const Globals& g, Io io, unsigned n, unsigned m, unsigned q);
int cmd_params(const Globals& g, Io io, unsigned t, unsigned n, unsigned k, const std::string& lambda, unsigned q);
int cmd_admissible(const Globals& g, Io io, unsigned n, unsigned q);
int cmd_tables(const Globals& g, Io io);
int cmd_spread(const Globals& g, Io io, unsigned n, unsigned k, unsigned q, const std::string& out_path);
int cmd_verify(const Globals& g, Io io, const std::string& input);
int cmd_derive(const Globals& g, Io io, const std::string& input, const std::string& kind, const std::string& out_path);
int cmd_flats(const Globals& g, Io io, const std::string& input, const std::string& out_path);

struct MatroidArgs {
    std::string preset;  // uniform:<k> | free | representable:<file> | steiner:<file>
    unsigned n = 0, q = 0;  // ambient for uniform and free
};

int cmd_rank(const Globals& g, Io io, const MatroidArgs& m, const std::string& subspace);
int cmd_axioms(const Globals& g, Io io, const MatroidArgs& m, int pair_dim, std::uint64_t sample_pairs, std::uint64_t seed);
int cmd_aut(const Globals& g, Io io, const std::string& input, bool transfer);

}  // namespace qpmd::cli
