#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "allpass/blaschke.hpp"
#include "allpass/tolerances.hpp"

namespace allpass::cli {

/// Process exit codes.
enum Exit : int {
    ok = 0,
    usage = 1,
    parse_error = 2,
    singular = 3,
    on_circle = 4,
    breach = 5,
    numerical = 6,
};

struct Config {
    Method method = Method::polynomial;
    double tol = 1e-8;  // acceptance threshold for every reported residual
    int n_samples = 64;
    unsigned long long seed = 0;
};

/// Runs the command line `args` (without the program name); JSON goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace allpass::cli
