#pragma once

#include <optional>
#include <stdexcept>
#include <ostream>
#include <string>
#include <vector>

namespace steklov::cli {

enum class Command {
    Spectrum,
    Branch,
    Slope,
    Figure,
    VerifyCrossprod,
    VerifyRemainder,
    OracleCompare,
    Eigenfunction,
};

enum class Format { Csv, Json };

std::string command_name(Command c);

struct IndexRange {
    int first;
    int last;
};

struct RealRange {
    double first;
    double last;
};

/// Everything one invocation needs.
struct RunSpec {
    Command command = Command::Spectrum;
    int dimension = 2;
    std::string mass = "pi";
    IndexRange l{1, 1};
    int l_max = 4;
    std::optional<double> epsilon;
    RealRange eps_range{0.005, 0.995};
    int eps_count = 200;
    std::vector<double> eps_list;
    double eps_max = 0.5;
    int steps = 200;
    double lambda_max = 50.0;
    int samples = 1000;
    int k_max = 6;
    int points = 201;
    std::string output;  ///< empty means stdout
    Format format = Format::Csv;
};

/// Flag values that parse but contradict each other.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "3" or "0..6"
IndexRange parse_index_range(const std::string& text);
/// "0.1" or "0.005..0.995"
RealRange parse_real_range(const std::string& text);

/// Executes one command. Returns the process exit status: 0 on success,
/// 2 for invalid input, 3 for a numerical failure. Errors are written to
/// `err` as one JSON object {code, message, context}.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and dispatches to run().
int main_entry(int argc, char** argv);

}  // namespace steklov::cli
