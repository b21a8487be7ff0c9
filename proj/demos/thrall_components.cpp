// Splits a signature level into its Thrall components f_λ and flags the
// partitions whose module can hold no nonzero signature on its own.

#include "random.hpp"
#include "sigrank.hpp"

#include <cstdlib>
#include <iostream>

using namespace sigrank;

int main(int argc, char** argv) {
    const std::size_t k = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 5;
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
    if (k == 0 || k > 7) {
        std::cerr << "usage: demo_thrall_components [k in 1..7] [seed]\n";
        return 2;
    }
    Sampler s(seed);
    const auto l = s.log_signature(2, k, -2, 2);
    const Tensor level = exp_log_signature(l).level(k);

    Tensor sum(k, 2);
    std::cout << "level " << k << " of a random 2-dim signature\n";
    for (const auto& lam : partitions_of(k)) {
        const Tensor f = f_lambda(l, lam);
        sum += f;
        std::size_t support = 0;
        for (std::size_t i = 0; i < f.size(); ++i) support += sgn(f[i]) != 0;
        std::cout << "  " << to_string(lam) << "  nonzero entries " << support
                  << (thrall_forced_zero(lam, k) ? "  [no signature lives here alone]" : "") << "\n";
    }
    std::cout << (sum == level ? "components add up to the level" : "MISMATCH") << "\n";
    return sum == level ? 0 : 1;
}
