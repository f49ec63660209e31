#pragma once

#include <memory>
#include <string>

#include "core/provider.hpp"

namespace schreier::experiment {

// Factor names: grigorchuk, Z (alias cycle), Z/k, H2 / houghton2 (any r >= 2),
// lamplighter (p = 2, d = 1) or lamplighter:p:d. Throws ConfigError otherwise.
std::shared_ptr<const ActionProvider> make_provider(const std::string& name);

}  // namespace schreier::experiment
