// Prints the Lorentz d(1/n, p) growth experiment: blocks at levels n_k = k+3
// keep a 2^-k fraction of their coordinates, so in lp the prefix values stay
// below 1 (the control column) while the Lorentz values keep climbing.

#include <cstdio>
#include <vector>

#include "jfx/ccp.hpp"

int main() {
    const double p = 2.0;
    std::vector<unsigned> schedule;
    for (unsigned k = 1; k <= 8; ++k)
        schedule.push_back(k + 3);
    std::printf("%2s  %12s  %12s  %12s\n", "K", "value", "lp control", "annotation");
    for (const auto& row : jfx::lorentz_growth(p, schedule))
        std::printf("%2zu  %12.8f  %12.8f  %12.8f\n", row.K, row.value, row.control,
                    row.annotation);
    return 0;
}
