#include "schreier/schreier.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "core/cyclic_providers.hpp"
#include "core/errors.hpp"
#include "experiment/runner.hpp"
#include "gluing/gluing.hpp"
#include "grigorchuk/grigorchuk.hpp"
#include "growth/growth.hpp"
#include "houghton/houghton.hpp"
#include "lamplighter/lamplighter.hpp"

struct sch_graph {
  schreier::FiniteGraph graph;
};

struct sch_houghton {
  schreier::houghton::Element element;
};

namespace {

thread_local std::string last_error;

sch_status fail(sch_status code, const std::string& message) {
  last_error = message;
  return code;
}

// Runs fn and maps core exceptions to status codes.
template <typename Fn>
sch_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return SCH_OK;
  } catch (const schreier::ConfigError& e) {
    return fail(SCH_ERR_CONFIG, e.what());
  } catch (const schreier::DomainError& e) {
    return fail(SCH_ERR_DOMAIN, e.what());
  } catch (const schreier::CapabilityError& e) {
    return fail(SCH_ERR_CAPABILITY, e.what());
  } catch (const schreier::VerificationError& e) {
    return fail(SCH_ERR_VERIFICATION, e.what());
  } catch (const schreier::CapExceeded& e) {
    return fail(SCH_ERR_RESOURCE_CAP, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SCH_ERR_RESOURCE_CAP, "out of memory");
  } catch (const nlohmann::json::exception& e) {
    return fail(SCH_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(SCH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SCH_ERR_INTERNAL, "unknown error");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define SCH_REQUIRE(cond) \
  if (!(cond)) return fail(SCH_ERR_INVALID_ARGUMENT, "null argument: " #cond)

}  // namespace

extern "C" {

const char* sch_last_error(void) { return last_error.c_str(); }

void sch_string_free(char* s) { std::free(s); }

sch_status sch_run_experiment(const char* config_json, const char* out_dir, unsigned jobs, int* passed,
                              char** summary_json) {
  SCH_REQUIRE(config_json && passed);
  return guarded([&] {
    const auto config = schreier::experiment::parse_config_text(config_json);
    const auto run = schreier::experiment::run_experiment(config, out_dir ? out_dir : "", jobs);
    *passed = run.passed ? 1 : 0;
    if (summary_json) *summary_json = dup(run.summary.dump(2));
  });
}

sch_status sch_config_digest(const char* config_json, char** hex) {
  SCH_REQUIRE(config_json && hex);
  return guarded([&] {
    *hex = dup(schreier::experiment::config_digest(schreier::experiment::parse_config_text(config_json)));
  });
}

sch_status sch_grigorchuk_level_graph(int level, sch_graph** out) {
  SCH_REQUIRE(out);
  return guarded([&] {
    if (level < 1) throw schreier::DomainError("level must be at least 1");
    *out = new sch_graph{schreier::grigorchuk::level_graph(level).graph};
  });
}

sch_status sch_lamplighter_coset_graph(int64_t p, int d, int64_t m, sch_graph** out) {
  SCH_REQUIRE(out);
  return guarded([&] {
    const schreier::lamplighter::Group group(p, d);
    *out = new sch_graph{schreier::lamplighter::build_X_m(group, m)};
  });
}

sch_status sch_cycle_graph(int64_t m, sch_graph** out) {
  SCH_REQUIRE(out);
  return guarded([&] {
    if (m < 1) throw schreier::DomainError("cycle length must be at least 1");
    *out = new sch_graph{schreier::IntegerProvider().materialize_orbit(m)};
  });
}

void sch_graph_free(sch_graph* g) { delete g; }

sch_status sch_graph_size(const sch_graph* g, size_t* size) {
  SCH_REQUIRE(g && size);
  *size = g->graph.size();
  last_error.clear();
  return SCH_OK;
}

sch_status sch_graph_key(const sch_graph* g, size_t vertex, char** key) {
  SCH_REQUIRE(g && key);
  if (vertex >= g->graph.size()) return fail(SCH_ERR_INVALID_ARGUMENT, "vertex out of range");
  return guarded([&] { *key = dup(g->graph.key(vertex)); });
}

sch_status sch_graph_diameter(const sch_graph* g, int64_t* diameter) {
  SCH_REQUIRE(g && diameter);
  return guarded([&] {
    std::int64_t best = 0;
    for (std::size_t v = 0; v < g->graph.size(); ++v) {
      best = std::max(best, schreier::eccentricity(g->graph, v));
    }
    *diameter = best;
  });
}

sch_status sch_graph_ball_size(const sch_graph* g, const char* key, int64_t radius, uint64_t* size) {
  SCH_REQUIRE(g && key && size);
  return guarded([&] {
    const auto v = g->graph.find(key);
    if (!v) throw schreier::DomainError(std::string("no vertex ") + key);
    if (radius < 0) throw schreier::DomainError("radius must be nonnegative");
    *size = schreier::ball_profile(g->graph, *v, radius).back();
  });
}

sch_status sch_graph_vol_table(const sch_graph* g, int64_t n_max, uint64_t* vol) {
  SCH_REQUIRE(g && vol);
  return guarded([&] {
    if (n_max < 0) throw schreier::DomainError("n_max must be nonnegative");
    const auto table = schreier::growth::vol_table(g->graph, n_max);
    std::copy(table.vol.begin(), table.vol.end(), vol);
  });
}

sch_status sch_graph_to_dot(const sch_graph* g, const char* name, char** dot) {
  SCH_REQUIRE(g && dot);
  return guarded([&] { *dot = dup(schreier::to_dot(g->graph, name ? name : "G")); });
}

sch_status sch_grigorchuk_act(const char* g, const char* vertex, char** image) {
  SCH_REQUIRE(g && vertex && image);
  return guarded([&] { *image = dup(schreier::grigorchuk::act(g, vertex)); });
}

sch_status sch_grigorchuk_is_trivial(const char* g, int* trivial) {
  SCH_REQUIRE(g && trivial);
  return guarded([&] { *trivial = schreier::grigorchuk::is_trivial(g) ? 1 : 0; });
}

sch_status sch_grigorchuk_displacement(const char* g, int max_level, int* level, char** vertex,
                                       int64_t* displacement, int64_t* diameter) {
  SCH_REQUIRE(g && level && displacement && diameter);
  return guarded([&] {
    const auto w = schreier::grigorchuk::displacement_witness(g, max_level);
    *level = w.level;
    *displacement = w.displacement;
    *diameter = w.diameter;
    if (vertex) *vertex = dup(w.vertex);
  });
}

sch_status sch_lamplighter_certified_ratio(int64_t p, int d, double* ratio) {
  SCH_REQUIRE(ratio);
  return guarded([&] { *ratio = schreier::lamplighter::certified_ratio(p, d); });
}

sch_status sch_houghton_word(int r, const int* letters, size_t length, sch_houghton** out) {
  SCH_REQUIRE(out && (letters || length == 0));
  return guarded([&] {
    const schreier::Word w(letters, letters + length);
    *out = new sch_houghton{schreier::houghton::evaluate(r, w)};
  });
}

sch_status sch_houghton_gamma(int r, int ray, int n, sch_houghton** out) {
  SCH_REQUIRE(out);
  return guarded([&] { *out = new sch_houghton{schreier::houghton::gamma(r, ray, n)}; });
}

sch_status sch_houghton_from_json(const char* json, sch_houghton** out) {
  SCH_REQUIRE(json && out);
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw schreier::ConfigError(e.what());
    }
    *out = new sch_houghton{schreier::houghton::Element::from_json(j)};
  });
}

sch_status sch_houghton_compose(const sch_houghton* g, const sch_houghton* h, sch_houghton** out) {
  SCH_REQUIRE(g && h && out);
  return guarded([&] { *out = new sch_houghton{schreier::houghton::compose(g->element, h->element)}; });
}

sch_status sch_houghton_invert(const sch_houghton* g, sch_houghton** out) {
  SCH_REQUIRE(g && out);
  return guarded([&] { *out = new sch_houghton{schreier::houghton::invert(g->element)}; });
}

void sch_houghton_free(sch_houghton* g) { delete g; }

sch_status sch_houghton_to_json(const sch_houghton* g, char** json) {
  SCH_REQUIRE(g && json);
  return guarded([&] { *json = dup(g->element.to_json().dump()); });
}

sch_status sch_houghton_act(const sch_houghton* g, const char* vertex, char** image) {
  SCH_REQUIRE(g && vertex && image);
  return guarded([&] {
    const int r = g->element.rays();
    const auto v = schreier::houghton::parse_vertex_key(r, vertex);
    *image = dup(schreier::houghton::vertex_key(r, g->element.act(v)));
  });
}

sch_status sch_houghton_is_identity(const sch_houghton* g, int* identity) {
  SCH_REQUIRE(g && identity);
  *identity = g->element.is_identity() ? 1 : 0;
  last_error.clear();
  return SCH_OK;
}

sch_status sch_houghton_pair_bound(int r, int n, int64_t* count, int64_t* radius) {
  SCH_REQUIRE(count && radius);
  return guarded([&] {
    const auto b = schreier::houghton::pair_ball_lower_bound(r, n);
    *count = b.count;
    *radius = b.radius;
  });
}

sch_status sch_fit_loglog(const double* xs, const double* ys, size_t count, double* slope, double* stderr_) {
  SCH_REQUIRE(xs && ys && slope);
  return guarded([&] {
    const auto f = schreier::growth::fit_loglog({xs, xs + count}, {ys, ys + count});
    *slope = f.slope;
    if (stderr_) *stderr_ = f.stderr_;
  });
}

sch_status sch_partition_check_power(double alpha, const double* candidates, size_t count, int* holds, double* c1) {
  SCH_REQUIRE(candidates && holds);
  return guarded([&] {
    const auto result = schreier::gluing::check_partition_condition(schreier::gluing::GrowthFunction::power(alpha),
                                                                    {candidates, candidates + count});
    *holds = result.holds ? 1 : 0;
    if (c1) *c1 = result.c1.value_or(0.0);
  });
}

}  // extern "C"
