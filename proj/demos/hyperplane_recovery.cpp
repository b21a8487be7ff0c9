// A path that never leaves a hyperplane: its signature alone gives the
// hyperplane back, and every divisor level stays confined to it.

#include "random.hpp"
#include "sigrank.hpp"

#include <iostream>

using namespace sigrank;

int main() {
    Sampler s(2024);
    // Increments orthogonal to n = (1, -1, 2, 0).
    const std::vector<Vec> inc{{1, 1, 0, 0}, {0, 2, 1, 0}, {0, 0, 0, 1}, {2, 0, -1, 3}};
    const auto sig = pwl_signature(Path(4, inc), 6);

    const auto rec = hyperplane_recovery(sig);
    if (!rec.subspace) {
        std::cout << "signature spans everything up to level " << rec.certified_up_to << "\n";
        return 1;
    }
    std::cout << "recovered a " << rec.subspace->dim() << "-dim subspace (certified up to level "
              << rec.certified_up_to << "), basis:\n";
    for (std::size_t r = 0; r < rec.subspace->dim(); ++r) {
        std::cout << " ";
        for (std::size_t c = 0; c < 4; ++c) std::cout << " " << to_string(rec.subspace->basis()(r, c));
        std::cout << "\n";
    }
    const auto prop = divisor_propagation_check(sig, 6, *rec.subspace);
    std::cout << "levels dividing 6 confined: " << (prop.holds ? "yes" : "no") << "\n";
    return prop.holds ? 0 : 1;
}
