#pragma once

#include "toepsv/matrix_core.hpp"

#include <string>
#include <vector>

namespace toepsv {

/// One of the eight published parameter sets (periods 2 through 9, all with mu = 100 - 1/6).
struct ReferenceSet {
    std::string label;  ///< "i2" .. "i9"
    std::string mu;
    std::vector<std::string> a;

    [[nodiscard]] MatrixSpec spec(std::size_t n) const;
};

const std::vector<ReferenceSet>& reference_sets();

}  // namespace toepsv
