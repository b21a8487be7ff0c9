// Rank of the level-3 signature of the axis path e1, e2, e3: the plain
// flattenings only see 3, the Koszul flattening lifts the bound to 4, and the
// three-segment decomposition has 4 terms.

#include "sigrank.hpp"

#include <iostream>

using namespace sigrank;

int main() {
    const std::vector<Vec> axes{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const Tensor t = pwl_signature(Path(3, axes), 3).level(3);

    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        if (sgn(t[flat]) == 0) continue;
        std::cout << "  e";
        for (auto i : t.multi_index(flat)) std::cout << i + 1;
        std::cout << "  " << to_string(t[flat]) << "\n";
    }

    std::size_t koszul = 0;
    for (std::size_t p = 0; p < 3; ++p) koszul = std::max(koszul, matrix_rank(koszul_flatten(t, p)));
    std::cout << "flattening bound " << flattening_lower_bound(t) << ", Koszul flattening rank " << koszul
              << " -> bound " << koszul_lower_bound(t) << "\n";

    const auto dec = decompose_three_segments(axes[0], axes[1], axes[2], 3);
    const auto cert = certify_rank(t, dec);
    std::cout << "witness with " << dec.length() << " terms; rank in [" << cert.lower << ", " << cert.upper << "]"
              << (cert.exact() ? " (exact)" : "") << "\n";
}
