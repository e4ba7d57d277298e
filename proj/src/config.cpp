#include "bcl/config.hpp"

#include <algorithm>
#include <initializer_list>

#include "bcl/error.hpp"

namespace bcl {

namespace {

using nlohmann::json;

std::size_t line_at(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of the first `"key"` at or after `from`; 0 if absent.
std::size_t line_of_key(const std::string& text, const std::string& key, std::size_t from = 0) {
  const auto pos = text.find('"' + key + '"', from);
  return pos == std::string::npos ? 0 : line_at(text, pos);
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& key, const std::string& message, const std::string& parent = {}) const {
    std::size_t from = 0;
    if (!parent.empty()) {
      const auto p = text_.find('"' + parent + '"');
      if (p != std::string::npos) from = p;
    }
    throw ConfigError(line_of_key(text_, key, from), message);
  }

  void only(const json& object, std::initializer_list<const char*> allowed, const std::string& parent = {}) const {
    for (const auto& [key, value] : object.items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
        fail(key, "unknown key '" + (parent.empty() ? key : parent + "." + key) + "'", parent);
      }
    }
  }

  std::string string(const json& object, const std::string& key, const std::string& parent = {}) const {
    const json& v = object.at(key);
    if (!v.is_string()) fail(key, "'" + key + "' must be a string", parent);
    return v.get<std::string>();
  }

  std::uint64_t unsigned_integer(const json& object, const std::string& key, const std::string& parent = {}) const {
    const json& v = object.at(key);
    if (!v.is_number_unsigned()) fail(key, "'" + key + "' must be a non-negative integer", parent);
    return v.get<std::uint64_t>();
  }

  bool boolean(const json& object, const std::string& key, const std::string& parent = {}) const {
    const json& v = object.at(key);
    if (!v.is_boolean()) fail(key, "'" + key + "' must be true or false", parent);
    return v.get<bool>();
  }

  template <typename F>
  auto guarded(const std::string& key, F&& parse, const std::string& parent = {}) const {
    try {
      return parse();
    } catch (const InvalidArgument& e) {
      fail(key, e.what(), parent);
    }
  }

 private:
  const std::string& text_;
};

const char* method_name(SolverMethod m) {
  switch (m) {
    case SolverMethod::LocalSearch:
      return "local_search";
    case SolverMethod::TvDescent:
      return "tv_descent";
    case SolverMethod::Auto:
      break;
  }
  return "auto";
}

}  // namespace

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(line_at(text, e.byte > 0 ? e.byte - 1 : 0), "malformed JSON");
  }
  if (!root.is_object()) throw ConfigError(1, "configuration must be a JSON object");
  const Reader r(text);
  r.only(root, {"domain", "objective", "kernel", "regime", "n_values", "trials_per_n", "base_seed", "solver",
                "diagnostics"});

  ExperimentConfig c;
  if (root.contains("domain")) {
    c.domain = r.guarded("domain", [&] { return RectDomain::parse(r.string(root, "domain")); });
  }
  if (root.contains("objective")) {
    c.objective = r.guarded("objective", [&] { return ObjectiveKind::parse(r.string(root, "objective")); });
  }
  if (root.contains("kernel")) {
    c.kernel = r.guarded("kernel", [&] { return Kernel::parse(r.string(root, "kernel")); });
  }
  if (root.contains("regime")) {
    c.regime = r.guarded("regime", [&] { return ScalingRegime::parse(r.string(root, "regime")); });
  }
  if (!root.contains("n_values")) throw ConfigError(1, "missing required key 'n_values'");
  {
    const json& ns = root.at("n_values");
    if (!ns.is_array() || ns.empty()) r.fail("n_values", "'n_values' must be a nonempty array");
    c.n_values.clear();
    for (const json& v : ns) {
      if (!v.is_number_unsigned()) r.fail("n_values", "'n_values' entries must be positive integers");
      c.n_values.push_back(v.get<std::size_t>());
    }
  }
  if (root.contains("trials_per_n")) c.trials_per_n = r.unsigned_integer(root, "trials_per_n");
  if (root.contains("base_seed")) c.base_seed = r.unsigned_integer(root, "base_seed");

  if (root.contains("solver")) {
    const json& s = root.at("solver");
    if (!s.is_object()) r.fail("solver", "'solver' must be an object");
    r.only(s, {"init", "max_sweeps", "stall_sweeps_to_stop", "move_rule", "method"}, "solver");
    if (s.contains("init")) {
      const auto v = r.string(s, "init", "solver");
      if (v == "ground_truth") {
        c.solver.init = InitKind::GroundTruth;
      } else if (v == "random") {
        c.solver.init = InitKind::Random;
      } else {
        r.fail("init", "solver.init must be 'ground_truth' or 'random'", "solver");
      }
    }
    if (s.contains("max_sweeps")) c.solver.max_sweeps = r.unsigned_integer(s, "max_sweeps", "solver");
    if (s.contains("stall_sweeps_to_stop")) {
      c.solver.stall_sweeps_to_stop = r.unsigned_integer(s, "stall_sweeps_to_stop", "solver");
    }
    if (s.contains("move_rule")) {
      const auto v = r.string(s, "move_rule", "solver");
      if (v == "best") {
        c.solver.move_rule = MoveRule::BestImprovement;
      } else if (v == "first") {
        c.solver.move_rule = MoveRule::FirstImprovement;
      } else {
        r.fail("move_rule", "solver.move_rule must be 'best' or 'first'", "solver");
      }
    }
    if (s.contains("method")) {
      const auto v = r.string(s, "method", "solver");
      if (v == "auto") {
        c.solver.method = SolverMethod::Auto;
      } else if (v == "local_search") {
        c.solver.method = SolverMethod::LocalSearch;
      } else if (v == "tv_descent") {
        c.solver.method = SolverMethod::TvDescent;
      } else {
        r.fail("method", "solver.method must be 'auto', 'local_search' or 'tv_descent'", "solver");
      }
    }
  }
  if (root.contains("diagnostics")) {
    const json& d = root.at("diagnostics");
    if (!d.is_object()) r.fail("diagnostics", "'diagnostics' must be an object");
    r.only(d, {"degree_stats", "giant_component", "rescaled_constant", "bottleneck"}, "diagnostics");
    if (d.contains("degree_stats")) c.diagnostics.degree_stats = r.boolean(d, "degree_stats", "diagnostics");
    if (d.contains("giant_component")) c.diagnostics.giant_component = r.boolean(d, "giant_component", "diagnostics");
    if (d.contains("rescaled_constant")) {
      c.diagnostics.rescaled_constant = r.boolean(d, "rescaled_constant", "diagnostics");
    }
    if (d.contains("bottleneck")) c.diagnostics.bottleneck = r.boolean(d, "bottleneck", "diagnostics");
  }

  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    std::string key = "n_values";
    if (msg.find("trials_per_n") != std::string::npos) key = "trials_per_n";
    if (msg.find("stall") != std::string::npos) key = "stall_sweeps_to_stop";
    if (msg.find("init") != std::string::npos) key = "init";
    if (msg.find("classes") != std::string::npos) key = "objective";
    if (msg.find("tv_descent") != std::string::npos) key = "method";
    r.fail(key, msg);
  }
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  return json{
      {"domain", c.domain.label()},
      {"objective", c.objective.label()},
      {"kernel", c.kernel.name()},
      {"regime", c.regime.label()},
      {"n_values", c.n_values},
      {"trials_per_n", c.trials_per_n},
      {"base_seed", c.base_seed},
      {"solver",
       {{"init", c.solver.init == InitKind::GroundTruth ? "ground_truth" : "random"},
        {"max_sweeps", c.solver.max_sweeps},
        {"stall_sweeps_to_stop", c.solver.stall_sweeps_to_stop},
        {"move_rule", c.solver.move_rule == MoveRule::BestImprovement ? "best" : "first"},
        {"method", method_name(c.solver.method)}}},
      {"diagnostics",
       {{"degree_stats", c.diagnostics.degree_stats},
        {"giant_component", c.diagnostics.giant_component},
        {"rescaled_constant", c.diagnostics.rescaled_constant},
        {"bottleneck", c.diagnostics.bottleneck}}},
  };
}

}  // namespace bcl
