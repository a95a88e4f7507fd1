#include "snowfake/config.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace snowfake {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parseNumber(std::string_view text) {
  text = trim(text);
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

int parseInt(std::string_view text) { return parseNumber<int>(text); }
std::int64_t parseInt64(std::string_view text) { return parseNumber<std::int64_t>(text); }
double parseDouble(std::string_view text) { return parseNumber<double>(text); }

bool parseBool(std::string_view text) {
  text = trim(text);
  if (text == "true") return true;
  if (text == "false") return false;
  throw std::invalid_argument("expected true or false, got '" + std::string(text) + "'");
}

ConfigTable parseTable(std::string_view text) {
  std::vector<double> values;
  while (true) {
    const auto comma = text.find(',');
    values.push_back(parseDouble(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (values.size() == 1) return ConfigTable(values[0]);
  if (values.size() != 7) {
    throw std::invalid_argument("expected 1 or 7 values (01, 10, 20, 30, 11, 21, 31), got " +
                                std::to_string(values.size()));
  }
  std::array<double, 7> a{};
  std::copy(values.begin(), values.end(), a.begin());
  return ConfigTable(a);
}

std::string formatTable(const ConfigTable& t) {
  std::string out;
  for (double x : t.values()) {
    if (!out.empty()) out += ", ";
    out += formatDouble(x);
  }
  return out;
}

using Setter = std::function<void(RunConfig&, ModelParams&, std::string_view)>;

struct Key {
  std::string section;
  std::string name;
  Setter set;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> list = {
      {"domain", "radius", [](RunConfig& c, ModelParams&, std::string_view v) { c.domain.radius = parseInt(v); }},
      {"domain", "half_height", [](RunConfig& c, ModelParams&, std::string_view v) { c.domain.halfHeight = parseInt(v); }},
      {"domain", "fold", [](RunConfig& c, ModelParams&, std::string_view v) { c.domain.mode = parseFoldMode(trim(v)); }},
      {"seed", "kind", [](RunConfig& c, ModelParams&, std::string_view v) {
         v = trim(v);
         if (v == "canonical") c.seed.kind = SeedKind::Canonical;
         else if (v == "prism") c.seed.kind = SeedKind::Prism;
         else throw std::invalid_argument("seed kind must be canonical or prism");
       }},
      {"seed", "radius_top", [](RunConfig& c, ModelParams&, std::string_view v) { c.seed.hexRadiusTop = parseInt(v); }},
      {"seed", "radius_bottom", [](RunConfig& c, ModelParams&, std::string_view v) { c.seed.hexRadiusBottom = parseInt(v); }},
      {"seed", "height", [](RunConfig& c, ModelParams&, std::string_view v) { c.seed.height = parseInt(v); }},
      {"stage", "start", nullptr},
      {"stage", "beta", [](RunConfig&, ModelParams& p, std::string_view v) { p.beta = parseTable(v); }},
      {"stage", "kappa", [](RunConfig&, ModelParams& p, std::string_view v) { p.kappa = parseTable(v); }},
      {"stage", "mu", [](RunConfig&, ModelParams& p, std::string_view v) { p.mu = parseTable(v); }},
      {"stage", "rho", [](RunConfig&, ModelParams& p, std::string_view v) { p.rho = parseDouble(v); }},
      {"stage", "phi", [](RunConfig&, ModelParams& p, std::string_view v) { p.phi = parseDouble(v); }},
      {"stage", "epsilon", [](RunConfig&, ModelParams& p, std::string_view v) { p.epsilon = parseDouble(v); }},
      {"stage", "uniform", [](RunConfig&, ModelParams& p, std::string_view v) { p.uniformVariant = parseBool(v); }},
      {"stage", "rng_seed", [](RunConfig&, ModelParams& p, std::string_view v) { p.rngSeed = parseNumber<std::uint64_t>(v); }},
      {"stop", "edge_density_fraction", [](RunConfig& c, ModelParams&, std::string_view v) { c.stop.edgeDensityFraction = parseDouble(v); }},
      {"stop", "radius_fraction", [](RunConfig& c, ModelParams&, std::string_view v) { c.stop.radiusFraction = parseDouble(v); }},
      {"stop", "max_time", [](RunConfig& c, ModelParams&, std::string_view v) { c.stop.maxTime = parseInt64(v); }},
      {"output", "checkpoint_every", [](RunConfig& c, ModelParams&, std::string_view v) { c.outputs.checkpointEvery = parseInt64(v); }},
      {"output", "metrics_every", [](RunConfig& c, ModelParams&, std::string_view v) { c.outputs.metricsEvery = parseInt64(v); }},
      {"output", "dir", [](RunConfig& c, ModelParams&, std::string_view v) { c.outputs.directory = std::string(trim(v)); }},
      {"output", "name", [](RunConfig& c, ModelParams&, std::string_view v) { c.outputs.name = std::string(trim(v)); }},
  };
  return list;
}

const Key* findKey(std::string_view section, std::string_view name) {
  for (const auto& k : keys()) {
    if (k.section == section && k.name == name) return &k;
  }
  return nullptr;
}

}  // namespace

std::string formatDouble(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

RunConfig parseRunConfig(std::string_view text) {
  RunConfig config;
  config.schedule.stages.clear();
  std::string section;
  std::set<std::string> seen;
  std::set<std::string> sections;
  std::vector<int> stageLines;
  bool haveStart = false;
  ModelParams scratch;
  int lineNo = 0;

  auto closeStage = [&]() {
    if (section == "stage" && !haveStart) {
      throw ConfigError(stageLines.back(), "[stage] without a start key");
    }
  };

  while (!text.empty()) {
    ++lineNo;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(lineNo, "malformed section header");
      closeStage();
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "domain" && section != "seed" && section != "stage" && section != "stop" &&
          section != "output") {
        throw ConfigError(lineNo, "unknown section [" + section + "]");
      }
      if (section == "stage") {
        config.schedule.stages.emplace_back();
        stageLines.push_back(lineNo);
        haveStart = false;
      } else if (!sections.insert(section).second) {
        throw ConfigError(lineNo, "duplicate section [" + section + "]");
      }
      seen.clear();
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(lineNo, "expected key = value");
    const std::string name(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(lineNo, "key '" + name + "' outside any section");
    const Key* key = findKey(section, name);
    if (!key) throw ConfigError(lineNo, "unknown key '" + name + "' in [" + section + "]");
    if (!seen.insert(name).second) throw ConfigError(lineNo, "duplicate key '" + name + "'");
    try {
      if (section == "stage") {
        ScheduleStage& stage = config.schedule.stages.back();
        if (name == "start") {
          stage.startTime = parseInt64(value);
          haveStart = true;
        } else {
          key->set(config, stage.params, value);
        }
      } else {
        key->set(config, scratch, value);
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(lineNo, name + ": " + e.what());
    }
  }
  closeStage();

  if (!sections.contains("domain")) throw ConfigError(0, "missing [domain] section");
  if (config.schedule.stages.empty()) throw ConfigError(0, "missing [stage] section");
  const auto& stages = config.schedule.stages;
  if (stages.front().startTime != 0) throw ConfigError(stageLines.front(), "first stage must start at 0");
  for (std::size_t i = 1; i < stages.size(); ++i) {
    if (stages[i].startTime <= stages[i - 1].startTime) {
      throw ConfigError(stageLines[i], "stage start times must increase");
    }
  }
  return config;
}

std::string renderRunConfig(const RunConfig& c) {
  std::ostringstream out;
  out << "[domain]\n"
      << "radius = " << c.domain.radius << "\n"
      << "half_height = " << c.domain.halfHeight << "\n"
      << "fold = " << foldModeName(c.domain.mode) << "\n\n"
      << "[seed]\n"
      << "kind = " << (c.seed.kind == SeedKind::Canonical ? "canonical" : "prism") << "\n"
      << "radius_top = " << c.seed.hexRadiusTop << "\n"
      << "radius_bottom = " << c.seed.hexRadiusBottom << "\n"
      << "height = " << c.seed.height << "\n";
  for (const auto& stage : c.schedule.stages) {
    const ModelParams& p = stage.params;
    out << "\n[stage]\n"
        << "start = " << stage.startTime << "\n"
        << "beta = " << formatTable(p.beta) << "\n"
        << "kappa = " << formatTable(p.kappa) << "\n"
        << "mu = " << formatTable(p.mu) << "\n"
        << "rho = " << formatDouble(p.rho) << "\n"
        << "phi = " << formatDouble(p.phi) << "\n"
        << "epsilon = " << formatDouble(p.epsilon) << "\n"
        << "uniform = " << (p.uniformVariant ? "true" : "false") << "\n"
        << "rng_seed = " << p.rngSeed << "\n";
  }
  out << "\n[stop]\n"
      << "edge_density_fraction = " << formatDouble(c.stop.edgeDensityFraction) << "\n"
      << "radius_fraction = " << formatDouble(c.stop.radiusFraction) << "\n"
      << "max_time = " << c.stop.maxTime << "\n\n"
      << "[output]\n"
      << "checkpoint_every = " << c.outputs.checkpointEvery << "\n"
      << "metrics_every = " << c.outputs.metricsEvery << "\n"
      << "dir = " << c.outputs.directory << "\n"
      << "name = " << c.outputs.name << "\n";
  return out.str();
}

void applyOverride(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError(0, "override must look like key=value");
  const std::string path(trim(assignment.substr(0, eq)));
  const std::string_view value = trim(assignment.substr(eq + 1));

  std::string section;
  std::string name = path;
  std::size_t stageIndex = 0;
  if (const auto dot = path.find('.'); dot != std::string::npos) {
    section = path.substr(0, dot);
    name = path.substr(dot + 1);
    if (section.rfind("stage", 0) == 0 && section.size() > 5) {
      try {
        stageIndex = static_cast<std::size_t>(parseInt(section.substr(5)));
      } catch (const std::invalid_argument&) {
        throw ConfigError(0, "unknown override key '" + path + "'");
      }
      section = "stage";
    }
  } else {
    for (const auto& k : keys()) {
      if (k.name == name) section = k.section;
    }
  }
  const Key* key = findKey(section, name);
  if (!key) throw ConfigError(0, "unknown override key '" + path + "'");
  try {
    if (section == "stage") {
      if (stageIndex >= config.schedule.stages.size()) {
        throw ConfigError(0, "override '" + path + "' names a missing stage");
      }
      ScheduleStage& stage = config.schedule.stages[stageIndex];
      if (name == "start") stage.startTime = parseInt64(value);
      else key->set(config, stage.params, value);
    } else {
      ModelParams scratch;
      key->set(config, scratch, value);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, path + ": " + e.what());
  }
}

}  // namespace snowfake
