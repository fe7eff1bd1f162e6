#include "kanpinn/grid_field.hpp"

#include "kanpinn/error.hpp"

namespace kpinn {

GridField::GridField(int n, double fill) : n_(n), values_(static_cast<std::size_t>(n) * n, fill) {
  if (n < 2) throw ConfigError("grid size must be at least 2");
}

}  // namespace kpinn
