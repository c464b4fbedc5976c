// Prints the norms of Haar partial sums sum_{i<=n} a_i h_i with a fixed
// coefficient pattern, in a few sequence spaces.  The columns grow
// monotonically in n: the Haar system is a monotone basis for these norms.

#include <cstdio>
#include <vector>

#include "jfx/jf_norm.hpp"

int main() {
    using jfx::Rational;
    const auto spaces = {jfx::SymmetricSpace::lp(2.0), jfx::SymmetricSpace::lp(3.0),
                         jfx::SymmetricSpace::lorentz(2.0)};
    std::vector<Rational> coeffs;
    std::vector<jfx::StepFunction1D> haars;
    for (uint64_t n = 1; n <= 16; ++n) {
        haars.push_back(jfx::haar(n));
        // Alternating pattern 1, -1/2, 1/3, ...
        coeffs.push_back(Rational((n % 2) ? 1 : -1, static_cast<long>(n)));
    }
    std::printf("%3s", "n");
    for (const auto& s : spaces)
        std::printf("  %22s", s.descriptor().c_str());
    std::printf("\n");
    for (size_t n = 1; n <= haars.size(); ++n) {
        const std::vector<Rational> head(coeffs.begin(), coeffs.begin() + n);
        const std::vector<jfx::StepFunction1D> gens(haars.begin(), haars.begin() + n);
        const auto sum = jfx::linear_combination(head, gens);
        std::printf("%3zu", n);
        for (const auto& s : spaces)
            std::printf("  %22.15f", jfx::norm1d(s, sum, {}).value);
        std::printf("\n");
    }
    return 0;
}
