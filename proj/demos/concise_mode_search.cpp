// Random search among pure 3-volume signatures in dimension 3 for tensors
// that are symmetrically concise while some single mode is deficient, the
// situation of the e1⊗[e2,e3] − [e2,e3]⊗e1 example.

#include "random.hpp"
#include "sigrank.hpp"

#include <cstdlib>
#include <iostream>

using namespace sigrank;

int main(int argc, char** argv) {
    const int trials = argc > 1 ? std::atoi(argv[1]) : 400;
    Sampler s(argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 7);

    int symmetric_concise = 0, deficient = 0;
    std::optional<Tensor> first;
    for (int i = 0; i < trials; ++i) {
        // Coefficients in {-1, 0, 1} keep the Lyndon combinations sparse.
        const Tensor t = s.lie_element(3, 3, -1, 1);
        if (t.is_zero() || !symmetric_conciseness(t).is_full()) continue;
        ++symmetric_concise;
        if (is_concise(t)) continue;
        ++deficient;
        if (!first) first = t;
    }
    std::cout << trials << " samples: " << symmetric_concise << " symmetrically concise, " << deficient
              << " of them with a deficient mode\n";
    if (!first) return 0;

    std::cout << "first hit:\n";
    for (std::size_t flat = 0; flat < first->size(); ++flat) {
        if (sgn((*first)[flat]) == 0) continue;
        std::cout << "  e";
        for (auto i : first->multi_index(flat)) std::cout << i + 1;
        std::cout << "  " << to_string((*first)[flat]) << "\n";
    }
    const auto modes = mode_subspaces(*first);
    for (std::size_t p = 0; p < modes.size(); ++p) std::cout << "  mode " << p + 1 << " spans dim " << modes[p].dim() << "\n";
}
