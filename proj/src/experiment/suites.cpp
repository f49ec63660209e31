#include "experiment/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include "core/cyclic_providers.hpp"
#include "core/errors.hpp"
#include "experiment/factors.hpp"
#include "experiment/parallel.hpp"
#include "gluing/gluing.hpp"
#include "grigorchuk/grigorchuk.hpp"
#include "growth/growth.hpp"
#include "houghton/houghton.hpp"
#include "lamplighter/lamplighter.hpp"

namespace schreier::experiment {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::json fit_json(const growth::Fit& f) {
  return {{"slope", f.slope}, {"stderr", f.stderr_}, {"points", f.points}};
}

ProviderMap providers_for(const std::vector<std::string>& names, std::set<FactorId>& ids) {
  ProviderMap out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto id = static_cast<FactorId>(i + 1);
    out[id] = make_provider(names[i]);
    ids.insert(id);
  }
  return out;
}

}  // namespace

SuiteResult verify_grigorchuk(const GrigorchukParams& params, unsigned jobs) {
  using namespace grigorchuk;
  if (params.max_level < 1 || params.max_level > kDefaultLevelCap) throw ConfigError("max_level out of range");
  SuiteResult result;

  std::ostringstream levels;
  levels << "level,vertices,diameter,endpoints,gray_rule_match,ok\n";
  bool structure_ok = true;
  for (int n = 1; n <= params.max_level; ++n) {
    bool ok = true;
    std::string endpoints;
    std::int64_t diameter = -1;
    std::size_t vertices = 0;
    bool gray = false;
    try {
      const LevelGraph lg = level_graph(n);
      vertices = lg.graph.size();
      diameter = component_diameter(lg.graph, 0);
      std::set<std::string> ends;
      for (std::size_t v = 0; v < lg.graph.size(); ++v) {
        if (lg.graph.degree(v) == 1) ends.insert(lg.graph.key(v));
      }
      const std::set<std::string> expected{std::string(static_cast<std::size_t>(n), '1'),
                                           std::string(static_cast<std::size_t>(n - 1), '1') + "0"};
      for (const auto& e : ends) endpoints += (endpoints.empty() ? "" : " ") + e;
      gray = gray_rule_edges(n) == action_edges(n);
      ok = vertices == (std::size_t{1} << n) && diameter == (std::int64_t{1} << n) - 1 && ends == expected && gray;
    } catch (const VerificationError&) {
      ok = false;
    }
    structure_ok = structure_ok && ok;
    levels << n << "," << vertices << "," << diameter << "," << endpoints << "," << (gray ? 1 : 0) << ","
           << (ok ? 1 : 0) << "\n";
  }
  result.artifacts.push_back({"grigorchuk_levels.csv", levels.str(), std::nullopt});

  const LevelAtlas atlas;
  const WordProblem solver;
  std::vector<std::string> words;
  for (const auto& w : all_words(params.max_word)) {
    if (!solver.is_trivial(w)) words.push_back(w);
  }
  struct Row {
    bool ok;
    std::string line;
    double ratio;
  };
  const auto rows = parallel_map<Row>(words.size(), jobs, [&](std::size_t i) {
    try {
      const auto w = displacement_witness(words[i], params.max_level, atlas, solver);
      const bool ok = 8 * w.displacement >= w.diameter;
      return Row{ok,
                 words[i] + "," + std::to_string(w.level) + "," + std::to_string(w.displacement) +
                     "," + std::to_string(w.diameter) + "," + num(w.ratio()),
                 w.ratio()};
    } catch (const CapExceeded&) {
      return Row{false, words[i] + ",none,,,", 0.0};
    }
  });
  std::ostringstream disp;
  disp << "g,level,displacement,diameter,ratio\n";
  std::size_t failures = 0;
  double min_ratio = 1.0;
  for (const auto& r : rows) {
    disp << r.line << "\n";
    if (!r.ok) ++failures;
    min_ratio = std::min(min_ratio, r.ratio);
  }
  result.artifacts.push_back({"grigorchuk_displacement.csv", disp.str(), std::nullopt});
  result.passed = structure_ok && failures == 0;
  result.summary = {{"levels_ok", structure_ok},
                    {"nontrivial_words", words.size()},
                    {"displacement_failures", failures},
                    {"min_ratio", min_ratio}};
  return result;
}

SuiteResult verify_lamplighter(const LamplighterParams& params, unsigned jobs) {
  using namespace lamplighter;
  const Group group(params.p, params.d);
  double certified = 0.0;
  try {
    certified = certified_ratio(params.p, params.d);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  SuiteResult result;

  std::ostringstream structure;
  structure << "m,vertices,expected,structure_ok,diameter\n";
  bool structure_ok = true;
  for (std::int64_t m = 2; m <= params.m_max; ++m) {
    const FiniteGraph x = build_X_m(group, m);
    std::int64_t expected = params.p;
    for (int i = 0; i < params.d; ++i) expected *= m;
    const bool ok = static_cast<std::int64_t>(x.size()) == expected && verify_structure(group, m, x);
    structure_ok = structure_ok && ok;
    structure << m << "," << x.size() << "," << expected << "," << (ok ? 1 : 0) << "," << component_diameter(x, 0)
              << "\n";
  }
  result.artifacts.push_back({"lamplighter_structure.csv", structure.str(), std::nullopt});

  const auto ball = cayley_ball(group, params.max_length);
  const CdOracle oracle(group);
  struct Row {
    int length;
    double ratio;
    std::string element;
  };
  const auto rows = parallel_map<Row>(ball.size(), jobs, [&](std::size_t i) {
    const auto& [g, length] = ball[i];
    if (group.is_identity(g)) return Row{0, 1.0, ""};
    return Row{length, oracle.witness(g).ratio(), group.format(g)};
  });
  std::map<int, std::pair<std::size_t, Row>> by_length;
  bool cd_ok = true;
  for (const auto& r : rows) {
    if (r.length == 0) continue;
    auto [it, fresh] = by_length.emplace(r.length, std::make_pair(std::size_t{0}, r));
    ++it->second.first;
    if (r.ratio < it->second.second.ratio) it->second.second = r;
    if (r.ratio + 1e-12 < certified) cd_ok = false;
  }
  std::ostringstream cd;
  cd << "length,elements,min_ratio,worst_element\n";
  double min_ratio = 1.0;
  for (const auto& [length, entry] : by_length) {
    cd << length << "," << entry.first << "," << num(entry.second.ratio) << "," << csv_field(entry.second.element)
       << "\n";
    min_ratio = std::min(min_ratio, entry.second.ratio);
  }
  result.artifacts.push_back({"lamplighter_cd.csv", cd.str(), std::nullopt});
  result.passed = structure_ok && cd_ok;
  result.summary = {{"structure_ok", structure_ok},
                    {"elements", ball.size() - 1},
                    {"certified_ratio", certified},
                    {"min_ratio", min_ratio},
                    {"cd_ok", cd_ok}};
  return result;
}

SuiteResult verify_houghton(const HoughtonParams& params, unsigned jobs) {
  using namespace houghton;
  SuiteResult result;
  const HoughtonProvider provider(2);
  const LazyGraph line = provider.orbit_graph(0);
  int levels = 1;
  while ((1 << (levels - 1)) < params.n_max) ++levels;
  const auto table = growth::vol_table(line, params.n_max, growth::ladder_basepoints(line, "0", levels));
  std::ostringstream linear;
  linear << "n,vol,bound\n";
  bool linear_ok = true;
  for (int n = 0; n <= params.n_max; ++n) {
    const auto bound = static_cast<std::uint64_t>(2 * n + 1);
    linear << n << "," << table.vol[static_cast<std::size_t>(n)] << "," << bound << "\n";
    if (table.vol[static_cast<std::size_t>(n)] > bound) linear_ok = false;
  }
  result.artifacts.push_back({"houghton_linear.csv", linear.str(), std::nullopt});

  const auto bounds = parallel_map<PairBound>(static_cast<std::size_t>(params.pair_n_max) + 1, jobs,
                                              [](std::size_t n) { return pair_ball_lower_bound(2, static_cast<int>(n)); });
  const std::int64_t c = gamma_length_constant(2);
  std::ostringstream pairs;
  pairs << "n,count,lower_bound,radius,radius_bound\n";
  bool pairs_ok = true;
  std::vector<double> xs, ys;
  for (const auto& b : bounds) {
    const std::int64_t lower = static_cast<std::int64_t>(b.n + 1) * (b.n + 1);
    const std::int64_t radius_bound = 2 * c * std::max(b.n, 1);
    pairs << b.n << "," << b.count << "," << lower << "," << b.radius << "," << radius_bound << "\n";
    if (b.count < lower || b.radius > radius_bound) pairs_ok = false;
    if (b.n >= params.fit_lo) {
      xs.push_back(static_cast<double>(b.radius));
      ys.push_back(static_cast<double>(b.count));
    }
  }
  result.artifacts.push_back({"houghton_pairs.csv", pairs.str(), std::nullopt});
  const growth::Fit fit = growth::fit_loglog(xs, ys);
  const bool slope_ok = fit.slope >= params.min_slope;
  result.passed = linear_ok && pairs_ok && slope_ok;
  result.summary = {{"linear_ok", linear_ok},
                    {"pairs_ok", pairs_ok},
                    {"pair_fit", fit_json(fit)},
                    {"min_slope", params.min_slope},
                    {"gamma_length_constant", c}};
  return result;
}

SuiteResult faithfulness_trials(const FaithfulnessParams& params, std::uint64_t seed, unsigned jobs) {
  std::set<FactorId> ids;
  const ProviderMap providers = providers_for(params.factors, ids);
  std::mt19937_64 rng(seed);
  struct Trial {
    GraphProductSpec spec;
    SyllableWord word;
  };
  std::vector<Trial> trials;
  std::size_t redraws = 0;
  const std::vector<FactorId> id_list(ids.begin(), ids.end());
  while (static_cast<int>(trials.size()) < params.words) {
    std::vector<std::pair<FactorId, FactorId>> commuting;
    if (params.commuting) {
      for (const auto& [a, b] : *params.commuting) {
        if (!ids.count(a) || !ids.count(b) || a == b) {
          throw ConfigError("commuting pair " + std::to_string(a) + "-" + std::to_string(b) + " is not a pair of factors");
        }
        commuting.emplace_back(a, b);
      }
    }
    for (std::size_t i = 0; !params.commuting && i < id_list.size(); ++i) {
      for (std::size_t j = i + 1; j < id_list.size(); ++j) {
        if (static_cast<double>(rng() % 1000000) < params.commute_probability * 1e6) {
          commuting.emplace_back(id_list[i], id_list[j]);
        }
      }
    }
    GraphProductSpec spec(ids, commuting);
    SyllableWord w;
    const auto syllables = 1 + rng() % static_cast<std::uint64_t>(params.max_syllables);
    for (std::uint64_t k = 0; k < syllables; ++k) {
      const FactorId f = id_list[rng() % id_list.size()];
      const auto& gens = provider_for(providers, f).generators();
      Word element;
      const auto letters = 1 + rng() % static_cast<std::uint64_t>(params.max_letters);
      for (std::uint64_t l = 0; l < letters; ++l) element.push_back(static_cast<int>(rng() % gens.size()));
      w.syllables.push_back({f, element});
    }
    if (reduce_to_normal_form(w, spec, providers).empty()) {
      ++redraws;
      continue;
    }
    trials.push_back({std::move(spec), std::move(w)});
  }

  struct Row {
    bool ok;
    std::string line;
  };
  const auto rows = parallel_map<Row>(trials.size(), jobs, [&](std::size_t i) {
    const Trial& t = trials[i];
    std::string commuting;
    for (const auto& [a, b] : t.spec.commuting_pairs()) {
      commuting += (commuting.empty() ? "" : " ") + std::to_string(a) + "-" + std::to_string(b);
    }
    std::string prefix = std::to_string(i) + "," + csv_field(commuting) + "," + csv_field(format_word(t.word, providers));
    try {
      const auto w = gluing::faithfulness_witness(t.word, t.spec, providers);
      return Row{true, prefix + "," + std::to_string(w.space.length()) + "," + csv_field(w.start) + "," +
                           csv_field(w.end) + ",1"};
    } catch (const VerificationError&) {
      return Row{false, prefix + ",,,,0"};
    }
  });
  std::ostringstream csv;
  csv << "trial,commuting,word,pieces,start,end,ok\n";
  std::size_t failures = 0;
  for (const auto& r : rows) {
    csv << r.line << "\n";
    if (!r.ok) ++failures;
  }
  SuiteResult result;
  result.artifacts.push_back({"gluing_faithfulness.csv", csv.str(), std::nullopt});
  result.passed = failures == 0;
  result.summary = {{"trials", trials.size()}, {"redrawn_trivial", redraws}, {"failures", failures}};
  return result;
}

namespace {

// Exhaustive vol table of a finite orbit, cached per (factor, orbit).
class PieceTables {
 public:
  PieceTables(const ProviderMap& providers, std::int64_t radius) : providers_(providers), radius_(radius) {}

  const growth::GrowthTable& at(FactorId factor, OrbitId orbit) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(factor, orbit);
    auto it = tables_.find(key);
    if (it == tables_.end()) {
      const FiniteGraph g = provider_for(providers_, factor).materialize_orbit(orbit);
      it = tables_.emplace(key, growth::vol_table(g, radius_)).first;
    }
    return it->second;
  }

 private:
  const ProviderMap& providers_;
  std::int64_t radius_;
  std::mutex mutex_;
  std::map<std::pair<FactorId, OrbitId>, growth::GrowthTable> tables_;
};

}  // namespace

SuiteResult gluing_growth_bound(const GrowthBoundParams& params, std::uint64_t seed, unsigned jobs) {
  std::set<FactorId> ids;
  const ProviderMap providers = providers_for(params.factors, ids);
  const GraphProductSpec spec = GraphProductSpec::free_product(ids);
  gluing::FamilyBudget budget;
  budget.q_max = static_cast<std::size_t>(params.q_max);
  budget.piece_size_cap = static_cast<std::size_t>(params.piece_cap);
  budget.count_cap = static_cast<std::size_t>(params.gluings);
  gluing::GluingFamily family(spec, providers, budget, seed);
  const auto gluings = family.all();
  PieceTables pieces(providers, params.radius);

  struct Row {
    bool ok;
    std::string line;
  };
  const auto rows = parallel_map<Row>(gluings.size(), jobs, [&](std::size_t i) {
    const auto& space = gluings[i];
    std::vector<std::uint64_t> f(static_cast<std::size_t>(params.radius) + 1, 0);
    for (const auto& p : space.pieces()) {
      const auto& t = pieces.at(p.factor, p.orbit);
      for (std::size_t n = 0; n < f.size(); ++n) f[n] = std::max(f[n], t.vol[n]);
    }
    const auto table = growth::vol_table(space.materialize(), params.radius);
    bool ok = true;
    double worst = 0.0;
    std::size_t worst_n = 0;
    for (std::size_t n = 0; n < f.size(); ++n) {
      const double bound = static_cast<double>(2 * n + 1) * static_cast<double>(f[n]);
      const double ratio = static_cast<double>(table.vol[n]) / bound;
      if (n > 0 && ratio > worst) {
        worst = ratio;
        worst_n = n;
      }
      if (static_cast<double>(table.vol[n]) > bound) ok = false;
    }
    return Row{ok, std::to_string(i) + "," + std::to_string(space.length()) + "," +
                       std::to_string(space.vertex_count()) + "," + std::to_string(worst_n) + "," + num(worst) + "," +
                       (ok ? "1" : "0")};
  });
  std::ostringstream csv;
  csv << "gluing,pieces,vertices,worst_n,worst_ratio,ok\n";
  std::size_t failures = 0;
  for (const auto& r : rows) {
    csv << r.line << "\n";
    if (!r.ok) ++failures;
  }
  SuiteResult result;
  result.artifacts.push_back({"gluing_growth_bound.csv", csv.str(), std::nullopt});
  result.passed = failures == 0 && !gluings.empty();
  result.summary = {{"gluings", gluings.size()}, {"failures", failures}, {"radius", params.radius}};
  return result;
}

namespace {

std::vector<gluing::GluingSpace> cd_family(const CdGrowthParams& params, std::uint64_t seed, ProviderMap& providers) {
  std::set<FactorId> ids;
  providers = providers_for(params.factors, ids);
  gluing::FamilyBudget budget;
  budget.q_min = budget.q_max = static_cast<std::size_t>(params.pieces);
  budget.piece_size_cap = static_cast<std::size_t>(params.piece_cap);
  budget.count_cap = static_cast<std::size_t>(params.gluings);
  budget.marking = gluing::Marking::Diametral;
  gluing::GluingFamily family(GraphProductSpec::free_product(ids), providers, budget, seed);
  return family.all();
}

}  // namespace

SuiteResult cd_gluing_growth(const CdGrowthParams& params, std::uint64_t seed, unsigned jobs) {
  ProviderMap providers;
  const auto gluings = cd_family(params, seed, providers);
  struct Row {
    growth::GrowthTable table;
    growth::Fit fit;
    std::size_t vertices;
    std::size_t pieces;
  };
  const auto rows = parallel_map<Row>(gluings.size(), jobs, [&](std::size_t i) {
    const auto table = growth::vol_table(gluings[i].materialize(), params.fit_hi);
    return Row{table, growth::fit_exponent(table, params.fit_lo, params.fit_hi), gluings[i].vertex_count(),
               gluings[i].length()};
  });
  std::ostringstream csv;
  csv << "gluing,pieces,vertices,slope,stderr,ok\n";
  bool ok = !rows.empty();
  double max_slope = 0.0;
  growth::GrowthTable merged;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool row_ok = rows[i].fit.slope <= params.max_slope;
    ok = ok && row_ok;
    max_slope = std::max(max_slope, rows[i].fit.slope);
    merged = i == 0 ? rows[i].table : growth::merge_max(merged, rows[i].table);
    csv << i << "," << rows[i].pieces << "," << rows[i].vertices << "," << num(rows[i].fit.slope) << ","
        << num(rows[i].fit.stderr_) << "," << (row_ok ? 1 : 0) << "\n";
  }
  SuiteResult result;
  result.artifacts.push_back({"gluing_cd_growth.csv", csv.str(), std::nullopt});
  if (!rows.empty()) result.artifacts.push_back({"gluing_cd_vol.csv", growth::to_csv(merged), std::nullopt});
  result.passed = ok;
  result.summary = {{"gluings", rows.size()},
                    {"max_slope", max_slope},
                    {"slope_cap", params.max_slope},
                    {"fit_range", {params.fit_lo, params.fit_hi}}};
  return result;
}

SuiteResult verify_gluing(const GluingParams& params, std::uint64_t seed, unsigned jobs) {
  SuiteResult out;
  const std::pair<const char*, SuiteResult> parts[] = {
      {"faithfulness", faithfulness_trials(params.faithfulness, seed, jobs)},
      {"growth_bound", gluing_growth_bound(params.growth_bound, seed, jobs)},
      {"cd_growth", cd_gluing_growth(params.cd_growth, seed, jobs)},
  };
  for (const auto& [name, part] : parts) {
    out.passed = out.passed && part.passed;
    out.summary[name] = part.summary;
    out.summary[name]["passed"] = part.passed;
    out.artifacts.insert(out.artifacts.end(), part.artifacts.begin(), part.artifacts.end());
  }
  return out;
}

SuiteResult growth_family(const GrowthParams& params, std::uint64_t seed, unsigned jobs) {
  SuiteResult result;
  growth::GrowthTable table;
  double expected = 1.0;
  std::int64_t fit_hi = params.n_max;
  std::int64_t fit_lo = params.fit_lo;
  std::size_t gens = 0;
  if (params.family == "lamplighter") {
    const lamplighter::Group group(params.p, params.d);
    gens = group.generators().size();
    const std::int64_t m_max = params.m_max > 0 ? params.m_max : 2 * params.n_max + 2;
    std::vector<std::int64_t> moduli;
    for (std::int64_t m = 2; m < m_max; m *= 2) moduli.push_back(m);
    moduli.push_back(m_max);
    const auto tables = parallel_map<growth::GrowthTable>(moduli.size(), jobs, [&](std::size_t i) {
      const std::int64_t m = moduli[i];
      const FiniteGraph x = lamplighter::build_X_m(group, m);
      lamplighter::CosetPoint far{0, lamplighter::Vec(static_cast<std::size_t>(params.d), m / 2), m};
      return growth::vol_table(x, params.n_max,
                               {group.key({0, lamplighter::Vec(static_cast<std::size_t>(params.d), 0), m}), group.key(far)});
    });
    table = tables.front();
    for (std::size_t i = 1; i < tables.size(); ++i) table = growth::merge_max(table, tables[i]);
    expected = params.d;
    result.summary["m_max"] = m_max;
  } else if (params.family == "grigorchuk") {
    std::vector<int> levels;
    for (int n = 1; n <= params.max_level; ++n) levels.push_back(n);
    const auto tables = parallel_map<growth::GrowthTable>(levels.size(), jobs, [&](std::size_t i) {
      return growth::vol_table(grigorchuk::level_graph(levels[i]).graph, params.n_max);
    });
    table = tables.front();
    for (std::size_t i = 1; i < tables.size(); ++i) table = growth::merge_max(table, tables[i]);
    gens = 4;
    fit_hi = std::min<std::int64_t>(params.n_max, ((std::int64_t{1} << params.max_level) - 1) / 2);
  } else if (params.family == "houghton") {
    const houghton::HoughtonProvider provider(2);
    const LazyGraph line = provider.orbit_graph(0);
    int levels = 1;
    while ((1 << (levels - 1)) < params.n_max) ++levels;
    table = growth::vol_table(line, params.n_max, growth::ladder_basepoints(line, "0", levels));
    gens = provider.generators().size();
  } else if (params.family == "gluing-cd") {
    ProviderMap providers;
    const auto gluings = cd_family(params.cd, seed, providers);
    const auto tables = parallel_map<growth::GrowthTable>(gluings.size(), jobs, [&](std::size_t i) {
      return growth::vol_table(gluings[i].materialize(), params.cd.fit_hi);
    });
    if (tables.empty()) throw ConfigError("gluing family is empty");
    gens = gluings.front().alphabet().size();
    table = tables.front();
    for (std::size_t i = 1; i < tables.size(); ++i) table = growth::merge_max(table, tables[i]);
    fit_lo = params.cd.fit_lo;
    fit_hi = params.cd.fit_hi;
  } else {
    throw ConfigError("unknown growth family " + params.family);
  }
  if (fit_hi <= fit_lo) throw ConfigError("fit range [" + std::to_string(fit_lo) + "," + std::to_string(fit_hi) + "] is empty");
  const growth::Fit fit = growth::fit_exponent(table, fit_lo, fit_hi);
  bool ok = growth::is_valid(table, gens);
  if (params.family == "gluing-cd") {
    ok = ok && fit.slope <= params.cd.max_slope;
  } else {
    ok = ok && std::abs(fit.slope - expected) <= params.tolerance;
    result.summary["expected_exponent"] = expected;
    result.summary["tolerance"] = params.tolerance;
  }
  result.artifacts.push_back({"growth.csv", growth::to_csv(table), std::nullopt});
  result.passed = ok;
  result.summary["family"] = params.family;
  result.summary["fit"] = fit_json(fit);
  result.summary["fit_range"] = {fit_lo, fit_hi};
  result.summary["basepoints"] = table.basepoints.size();
  result.summary["exhaustive"] = table.exhaustive;
  return result;
}

SuiteResult probe_free_product(const ProbeParams& params, unsigned jobs) {
  const auto left = make_provider(params.left);
  const auto right = make_provider(params.right);
  const auto* h2 = dynamic_cast<const houghton::HoughtonProvider*>(left.get());
  if (h2 == nullptr || h2->rays() != 2) throw ConfigError("probe: left factor must be houghton2");
  if (dynamic_cast<const IntegerProvider*>(right.get()) == nullptr) throw ConfigError("probe: right factor must be Z");
  const ProviderMap providers{{1, left}, {2, right}};
  const GraphProductSpec spec = GraphProductSpec::free_product({1, 2});

  // g = s t s t^-1 in H_2; t is the generator of Z
  const Word g{2, 0, 2, 1};
  const std::int64_t r_max = *std::max_element(params.radii.begin(), params.radii.end());
  SyllableWord h{{{1, g}, {2, {0}}, {1, left->invert(g)}, {2, {1}}}};
  SyllableWord power;
  for (std::int64_t i = 0; i <= r_max; ++i) power = concat(power, h);
  const auto witness = gluing::faithfulness_witness(power, spec, providers);

  growth::SparseParams sp;
  sp.c = params.c;
  sp.d = params.d;
  const growth::ProbeSetup setup{&witness.space, 1, 2, g, 0, witness.start};
  const auto certs = parallel_map<growth::LowerBoundCertificate>(params.radii.size(), jobs, [&](std::size_t i) {
    return growth::sparse_support_probe(setup, params.radii[i], sp);
  });

  SuiteResult result;
  std::ostringstream csv;
  csv << "R,certified,direct,components,C1,replay_ok\n";
  nlohmann::json list = nlohmann::json::array();
  std::vector<double> xs, ys;
  bool ok = true;
  for (const auto& c : certs) {
    const bool replay = growth::replay_certificate(setup, c);
    ok = ok && replay && (!c.direct || c.certified <= *c.direct);
    csv << c.r << "," << c.certified << "," << (c.direct ? std::to_string(*c.direct) : "") << "," << c.component_count
        << "," << c.c1 << "," << (replay ? 1 : 0) << "\n";
    list.push_back(c.to_json());
    xs.push_back(static_cast<double>(c.r));
    ys.push_back(static_cast<double>(c.certified));
  }
  nlohmann::json fit = nullptr;
  if (xs.size() >= 2) {
    const auto f = growth::fit_loglog(xs, ys);
    fit = fit_json(f);
    ok = ok && f.slope >= params.min_slope;
  }
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& p : witness.space.pieces()) {
    pieces.push_back({{"factor", p.factor}, {"orbit", p.orbit}, {"entry", p.entry}, {"exit", p.exit}});
  }
  result.artifacts.push_back({"probe.csv", csv.str(), std::nullopt});
  result.artifacts.push_back(
      {"probe_certificates.json", "",
       nlohmann::json{{"left", params.left},
                      {"right", params.right},
                      {"g", left->generators().format(g)},
                      {"t", right->generators().format({0})},
                      {"gluing", pieces},
                      {"certificates", list},
                      {"fit", fit}}});
  result.passed = ok;
  result.summary = {{"radii", params.radii}, {"fit", fit}, {"min_slope", params.min_slope}};
  return result;
}

SuiteResult export_dot(const ExportParams& params, std::uint64_t seed) {
  SuiteResult result;
  std::string dot;
  if (params.graph == "grigorchuk") {
    dot = to_dot(grigorchuk::level_graph(params.level).graph, "grigorchuk_level_" + std::to_string(params.level));
  } else if (params.graph == "lamplighter") {
    const lamplighter::Group group(params.p, params.d);
    dot = to_dot(lamplighter::build_X_m(group, params.m), "lamplighter_X_" + std::to_string(params.m));
  } else if (params.graph == "cycle") {
    dot = to_dot(IntegerProvider().materialize_orbit(params.m), "cycle_" + std::to_string(params.m));
  } else if (params.graph == "gluing") {
    std::set<FactorId> ids;
    const ProviderMap providers = providers_for(params.factors, ids);
    gluing::FamilyBudget budget;
    budget.q_min = budget.q_max = static_cast<std::size_t>(params.q_max);
    budget.piece_size_cap = static_cast<std::size_t>(params.piece_cap);
    budget.count_cap = 1;
    gluing::GluingFamily family(GraphProductSpec::free_product(ids), providers, budget, seed);
    const auto space = family.next();
    if (!space) throw ConfigError("no factor has an orbit within piece_cap");
    dot = to_dot(space->materialize(), "gluing");
  } else {
    throw ConfigError("unknown graph kind " + params.graph);
  }
  result.artifacts.push_back({"graph.dot", dot, std::nullopt});
  result.summary = {{"graph", params.graph}};
  return result;
}

}  // namespace schreier::experiment
