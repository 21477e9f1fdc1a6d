#pragma once

#include <cstdint>
#include <vector>

namespace pacsim {

// One bit per element, values restricted to 0/1.
using BitVec = std::vector<std::uint8_t>;

}  // namespace pacsim
