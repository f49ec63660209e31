#include "experiment/factors.hpp"

#include <regex>

#include "core/cyclic_providers.hpp"
#include "core/errors.hpp"
#include "grigorchuk/grigorchuk.hpp"
#include "houghton/houghton.hpp"
#include "lamplighter/lamplighter.hpp"

namespace schreier::experiment {

std::shared_ptr<const ActionProvider> make_provider(const std::string& name) {
  static const std::regex cyclic(R"(Z/(\d+)Z?)");
  static const std::regex houghton(R"((?:H|houghton)(\d+))");
  static const std::regex lamp(R"(lamplighter:(\d+):(\d+))");
  std::smatch m;
  try {
    if (name == "grigorchuk") return std::make_shared<grigorchuk::GrigorchukProvider>();
    if (name == "Z" || name == "cycle") return std::make_shared<IntegerProvider>();
    if (name == "lamplighter") return std::make_shared<lamplighter::LamplighterProvider>(2, 1);
    if (std::regex_match(name, m, cyclic)) return std::make_shared<FiniteCyclicProvider>(std::stoll(m[1]));
    if (std::regex_match(name, m, houghton)) return std::make_shared<houghton::HoughtonProvider>(std::stoi(m[1]));
    if (std::regex_match(name, m, lamp)) {
      return std::make_shared<lamplighter::LamplighterProvider>(std::stoll(m[1]), std::stoi(m[2]));
    }
  } catch (const DomainError& e) {
    throw ConfigError("factor " + name + ": " + e.what());
  } catch (const std::out_of_range&) {
    throw ConfigError("factor " + name + ": parameter out of range");
  }
  throw ConfigError("unknown factor " + name);
}

}  // namespace schreier::experiment
