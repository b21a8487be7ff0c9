#pragma once

// Everything except the JSON layer (io.hpp), which needs nlohmann/json.

#include "conciseness.hpp"
#include "decomposition.hpp"
#include "exact.hpp"
#include "flatten.hpp"
#include "lie.hpp"
#include "matrix.hpp"
#include "random.hpp"
#include "rank.hpp"
#include "signature.hpp"
#include "symmetry.hpp"
#include "tensor.hpp"
#include "words.hpp"
