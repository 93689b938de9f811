#include "spis/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace spis {

namespace {

struct Value {
  std::string raw;                  // scalar token
  std::vector<std::string> items;   // list tokens
  bool is_list = false;
  int line = 0;
};

using Section = std::map<std::string, Value>;
using Tree = std::map<std::string, Section>;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

Tree parse_tree(const std::string& text) {
  Tree tree;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("line " + std::to_string(lineno), "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail("line " + std::to_string(lineno), "empty section name");
      tree[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail("line " + std::to_string(lineno), "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string rhs = trim(line.substr(eq + 1));
    if (key.empty()) fail("line " + std::to_string(lineno), "empty key");
    Value v;
    v.line = lineno;
    if (!rhs.empty() && rhs.front() == '[') {
      if (rhs.back() != ']') fail("line " + std::to_string(lineno), "unterminated list");
      v.is_list = true;
      std::string body = rhs.substr(1, rhs.size() - 2);
      std::string item;
      std::istringstream items(body);
      while (std::getline(items, item, ',')) {
        item = trim(item);
        if (!item.empty()) v.items.push_back(item);
      }
    } else {
      v.raw = rhs;
    }
    tree[section][key] = v;
  }
  return tree;
}

class Reader {
 public:
  explicit Reader(Tree tree) : tree_(std::move(tree)) {}

  bool has_section(const std::string& s) const { return tree_.count(s) > 0; }

  const Value* find(const std::string& section, const std::string& key) const {
    auto sit = tree_.find(section);
    if (sit == tree_.end()) return nullptr;
    auto kit = sit->second.find(key);
    return kit == sit->second.end() ? nullptr : &kit->second;
  }

  static std::string path_of(const std::string& section, const std::string& key) {
    return section.empty() ? key : section + "." + key;
  }

  std::string require_string(const std::string& section, const std::string& key) const {
    const Value* v = find(section, key);
    if (!v) fail(path_of(section, key), "missing required field");
    if (v->is_list) fail(path_of(section, key), "expected a scalar, found a list");
    return v->raw;
  }

  std::optional<std::string> get_string(const std::string& section, const std::string& key) const {
    const Value* v = find(section, key);
    if (!v) return std::nullopt;
    if (v->is_list) fail(path_of(section, key), "expected a scalar, found a list");
    return v->raw;
  }

  double require_number(const std::string& section, const std::string& key) const {
    return to_number(require_string(section, key), path_of(section, key));
  }

  std::optional<double> get_number(const std::string& section, const std::string& key) const {
    auto s = get_string(section, key);
    if (!s) return std::nullopt;
    return to_number(*s, path_of(section, key));
  }

  std::vector<double> require_numbers(const std::string& section, const std::string& key) const {
    const Value* v = find(section, key);
    if (!v) fail(path_of(section, key), "missing required field");
    std::vector<std::string> toks = v->is_list ? v->items : std::vector<std::string>{v->raw};
    std::vector<double> out;
    for (std::size_t i = 0; i < toks.size(); ++i)
      out.push_back(to_number(toks[i], path_of(section, key) + "[" + std::to_string(i) + "]"));
    return out;
  }

  std::vector<std::string> require_list(const std::string& section, const std::string& key) const {
    const Value* v = find(section, key);
    if (!v) fail(path_of(section, key), "missing required field");
    if (!v->is_list) return {v->raw};
    return v->items;
  }

  std::vector<std::string> sections_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [name, _] : tree_)
      if (name.rfind(prefix, 0) == 0) out.push_back(name);
    return out;
  }

 private:
  static double to_number(const std::string& s, const std::string& path) {
    try {
      std::size_t used = 0;
      const double x = std::stod(s, &used);
      if (used != s.size()) fail(path, "not a number: '" + s + "'");
      return x;
    } catch (const ConfigError&) {
      throw;
    } catch (...) {
      fail(path, "not a number: '" + s + "'");
    }
  }

  Tree tree_;
};

Vec to_vec(const std::vector<double>& xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
  return v;
}

Mat to_square_matrix(const std::vector<double>& xs, const std::string& path) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(xs.size()))));
  if (d * d != static_cast<Eigen::Index>(xs.size()))
    fail(path, "row-major matrix must have a square number of entries");
  Mat m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = xs[static_cast<std::size_t>(r * d + c)];
  return m;
}

std::vector<ModelPtr> make_components(const Reader& r, const std::string& section,
                                      const std::string& family) {
  std::vector<ModelPtr> comps;
  if (family == "iid_exponential") {
    for (double rate : r.require_numbers(section, "rates")) comps.push_back(make_exponential(rate));
  } else if (family == "iid_gamma") {
    const auto shapes = r.require_numbers(section, "shapes");
    const auto scales = r.require_numbers(section, "scales");
    if (shapes.size() != scales.size())
      fail(section + ".scales", "shapes and scales must have equal length");
    for (std::size_t i = 0; i < shapes.size(); ++i)
      comps.push_back(make_gamma(shapes[i], scales[i]));
  } else if (family == "iid_normal") {
    const auto means = r.require_numbers(section, "means");
    const auto vars = r.require_numbers(section, "variances");
    if (means.size() != vars.size())
      fail(section + ".variances", "means and variances must have equal length");
    for (std::size_t i = 0; i < means.size(); ++i)
      comps.push_back(make_normal(means[i], vars[i]));
  } else {
    fail(section + ".family", "unknown component family '" + family + "'");
  }
  return comps;
}

ModelPtr build_model(const Reader& r, const std::string& section) {
  const std::string family = lower(r.require_string(section, "family"));
  try {
    if (family == "exponential") return make_exponential(r.get_number(section, "rate").value_or(1.0));
    if (family == "gamma")
      return make_gamma(r.require_number(section, "shape"), r.require_number(section, "scale"));
    if (family == "normal")
      return make_normal(r.require_number(section, "mean"), r.require_number(section, "variance"));
    if (family == "iid_exponential" || family == "iid_gamma" || family == "iid_normal")
      return make_iid_product(make_components(r, section, family));
    if (family == "linear_map") {
      const std::string base = lower(r.require_string(section, "base"));
      ModelPtr base_model = make_iid_product(make_components(r, section, base));
      const Mat b = to_square_matrix(r.require_numbers(section, "B"), section + ".B");
      return make_linear_map(std::move(base_model), b);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(section, e.what());
  }
  fail(section + ".family", "unknown family '" + family + "'");
}

TailSet build_tail_set(const Reader& r, const std::string& section) {
  const std::string kind = lower(r.require_string(section, "set"));
  const Vec x0 = to_vec(r.require_numbers(section, "x0"));
  try {
    if (kind == "full_orthant") return TailSet::full_orthant(x0);
    if (kind == "partial_orthant") {
      const double dp = r.require_number(section, "d_prime");
      return TailSet::partial_orthant(x0, static_cast<int>(dp));
    }
    if (kind == "affine_orthant")
      return TailSet::affine_orthant(x0, to_square_matrix(r.require_numbers(section, "B"),
                                                          section + ".B"));
    if (kind == "rectangle")
      return TailSet::rectangle(x0, to_vec(r.require_numbers(section, "widths")));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(section, e.what());
  }
  fail(section + ".set", "unknown set kind '" + kind + "'");
}

void check_admissible(const ExperimentConfig& cfg) {
  const int d = cfg.model->dim();
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    const std::string path = "methods.list[" + std::to_string(i) + "]";
    const Method m = cfg.methods[i];
    switch (cfg.target) {
      case TargetKind::density:
        if (m != Method::spis && m != Method::cmc)
          fail(path, "only spis and cmc estimate densities");
        if (m == Method::cmc && !cfg.model->has_marginal_density())
          fail(path, "cmc requires a model with a marginal density");
        break;
      case TargetKind::tail:
        if (m == Method::cmc) fail(path, "cmc only estimates densities");
        if (m == Method::bgl && d != 1) fail(path, "bgl supports d = 1 tails only");
        break;
      case TargetKind::overshoot:
        if (m != Method::spis && m != Method::naive)
          fail(path, "only spis and naive estimate the expected overshoot");
        if (d != 1) fail("target.kind", "overshoot targets require a 1-d model");
        break;
      case TargetKind::signed_combination:
        if (m != Method::spis)
          fail(path, "signed combinations are estimated with spis term by term");
        break;
    }
  }
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::spis: return "spis";
    case Method::naive: return "naive";
    case Method::cmc: return "cmc";
    case Method::oet: return "oet";
    case Method::bgl: return "bgl";
  }
  return "?";
}

std::optional<Method> method_from_name(const std::string& name) {
  const std::string n = lower(name);
  if (n == "spis") return Method::spis;
  if (n == "naive") return Method::naive;
  if (n == "cmc") return Method::cmc;
  if (n == "oet") return Method::oet;
  if (n == "bgl") return Method::bgl;
  return std::nullopt;
}

ExperimentConfig parse_experiment_text(const std::string& text) {
  Reader r(parse_tree(text));
  ExperimentConfig cfg;

  cfg.scenario = r.require_string("", "scenario");
  if (cfg.scenario.empty()) fail("scenario", "scenario id must not be empty");

  const std::string seed_str = r.require_string("", "seed");
  try {
    cfg.seed = std::stoull(seed_str);
  } catch (...) {
    fail("seed", "not a 64-bit unsigned integer: '" + seed_str + "'");
  }

  if (auto ref = r.get_string("", "reference")) {
    cfg.reference = method_from_name(*ref);
    if (!cfg.reference) fail("reference", "unknown method '" + *ref + "'");
  }

  cfg.model = build_model(r, "model");

  const std::string kind = lower(r.require_string("target", "kind"));
  const int d = cfg.model->dim();
  if (kind == "density") {
    cfg.target = TargetKind::density;
    if (r.find("target", "points")) {
      if (d != 1) fail("target.points", "sweeps are supported for 1-d models only");
      for (double x : r.require_numbers("target", "points"))
        cfg.density_points.push_back(Vec::Constant(1, x));
      if (cfg.density_points.empty()) fail("target.points", "empty sweep");
    } else {
      Vec point = to_vec(r.require_numbers("target", "point"));
      if (point.size() != d) fail("target.point", "dimension mismatch with the model");
      cfg.density_points.push_back(std::move(point));
    }
  } else if (kind == "tail") {
    cfg.target = TargetKind::tail;
    cfg.tail = build_tail_set(r, "target");
    if (cfg.tail.dim() != d) fail("target.x0", "dimension mismatch with the model");
  } else if (kind == "overshoot") {
    cfg.target = TargetKind::overshoot;
    cfg.overshoot_threshold = r.require_number("target", "threshold");
  } else if (kind == "signed_combination") {
    cfg.target = TargetKind::signed_combination;
    auto term_sections = r.sections_with_prefix("term.");
    std::sort(term_sections.begin(), term_sections.end(),
              [](const std::string& a, const std::string& b) {
                return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
    for (const std::string& sec : term_sections) {
      SignedTerm term;
      const double sign = r.require_number(sec, "sign");
      if (sign != 1.0 && sign != -1.0) fail(sec + ".sign", "sign must be 1 or -1");
      term.sign = static_cast<int>(sign);
      term.set = build_tail_set(r, sec);
      if (term.set.dim() != d) fail(sec + ".x0", "dimension mismatch with the model");
      cfg.terms.push_back(std::move(term));
    }
    if (cfg.terms.empty()) fail("term", "signed_combination needs at least one [term.k] section");
  } else {
    fail("target.kind", "unknown target kind '" + kind + "'");
  }

  for (double n : r.require_numbers("grid", "n")) {
    if (n < 1 || n != std::floor(n)) fail("grid.n", "n values must be positive integers");
    cfg.n_values.push_back(static_cast<long>(n));
  }
  for (double nn : r.require_numbers("grid", "N")) {
    if (nn < 2 || nn != std::floor(nn)) fail("grid.N", "N values must be integers >= 2");
    cfg.sample_counts.push_back(static_cast<std::size_t>(nn));
  }

  const auto method_tokens = r.require_list("methods", "list");
  if (method_tokens.empty()) fail("methods.list", "at least one method is required");
  for (std::size_t i = 0; i < method_tokens.size(); ++i) {
    auto m = method_from_name(method_tokens[i]);
    if (!m) fail("methods.list[" + std::to_string(i) + "]",
                 "unknown method '" + method_tokens[i] + "'");
    cfg.methods.push_back(*m);
  }
  if (cfg.reference &&
      std::find(cfg.methods.begin(), cfg.methods.end(), *cfg.reference) == cfg.methods.end())
    fail("reference", "reference method must appear in methods.list");

  cfg.is_overrides.alpha = r.get_number("is_params", "alpha");
  cfg.is_overrides.a = r.get_number("is_params", "a");
  cfg.is_overrides.p = r.get_number("is_params", "p");
  if (auto anti = r.get_string("is_params", "antithetic")) {
    const std::string t = lower(*anti);
    if (t != "true" && t != "false") fail("is_params.antithetic", "expected true or false");
    cfg.antithetic = t == "true";
  }

  if (auto w = r.get_number("run", "workers")) {
    if (*w < 1 || *w != std::floor(*w)) fail("run.workers", "workers must be a positive integer");
    cfg.workers = static_cast<int>(*w);
  }
  cfg.output_stem = r.get_string("run", "output").value_or(cfg.scenario);

  check_admissible(cfg);
  return cfg;
}

ExperimentConfig parse_experiment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_text(ss.str());
}

}  // namespace spis
