#include "lieheat/errors.hpp"
#include "lieheat/harness.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace lieheat {

namespace {

constexpr std::string_view kKeys[] = {"problem", "T_i", "T_s",   "q0pp",  "k",
                                      "rho",     "c_heat", "alpha", "L",     "dx",
                                      "dt",      "theta",  "t_end", "snapshot_times",
                                      "output_dir"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, std::string_view key, int line) {
  text = trim(text);
  double v = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(v))
    throw ConfigError("cannot parse value '" + std::string(text) + "' for key " + std::string(key),
                      line);
  return v;
}

struct Entry {
  std::string value;
  int line;
};

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buf, ptr);
}

RunConfig default_run(Problem p) {
  RunConfig rc;
  rc.problem = p;
  rc.thermal = ThermalConfig::aisi304();
  rc.grid = GridSpec::defaults(p);
  rc.thermal.L = rc.grid.L;
  if (p == Problem::ibvp2) {
    rc.thermal.T_i = 0.0;
    rc.thermal.T_s = 0.0;
  }
  return rc;
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Entry, std::less<>> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys))
      throw ConfigError("unknown key '" + std::string(key) + "'", line_no);
    if (entries.count(key)) throw ConfigError("duplicate key '" + std::string(key) + "'", line_no);
    if (value.empty()) throw ConfigError("empty value for key " + std::string(key), line_no);
    entries.emplace(std::string(key), Entry{std::string(value), line_no});
  }

  auto find = [&](std::string_view key) -> const Entry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto number = [&](std::string_view key) -> std::optional<double> {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    return parse_number(e->value, key, e->line);
  };
  auto line_of = [&](std::string_view key) { return find(key) ? find(key)->line : 0; };

  const Entry* problem_entry = find("problem");
  if (!problem_entry)
    throw ConfigError(
        "missing required keys: problem (ibvp1 needs T_i and T_s, ibvp2 needs q0pp); optional: "
        "k, rho, c_heat, alpha, L, dx, dt, theta, t_end, snapshot_times, output_dir");
  const auto problem = problem_from_name(problem_entry->value);
  if (!problem)
    throw ConfigError("problem must be ibvp1 or ibvp2, got '" + problem_entry->value + "'",
                      problem_entry->line);

  std::vector<std::string> missing;
  if (*problem == Problem::ibvp1) {
    if (!find("T_i")) missing.emplace_back("T_i");
    if (!find("T_s")) missing.emplace_back("T_s");
  } else if (!find("q0pp")) {
    missing.emplace_back("q0pp");
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw ConfigError("missing required keys for " + std::string(name(*problem)) + ": " + list);
  }

  RunConfig rc = default_run(*problem);
  const ThermalConfig base = rc.thermal;
  const double kcond = number("k").value_or(base.kcond);
  const double rho = number("rho").value_or(base.rho);
  const double c_heat = number("c_heat").value_or(base.c_heat);
  const auto alpha = number("alpha");

  if (!(kcond > 0.0)) throw ConfigError("k must be positive", line_of("k"));
  if (!alpha) {
    if (!(rho > 0.0)) throw ConfigError("rho must be positive", line_of("rho"));
    if (!(c_heat > 0.0)) throw ConfigError("c_heat must be positive", line_of("c_heat"));
  } else if (!(*alpha > 0.0)) {
    throw ConfigError("alpha must be positive", line_of("alpha"));
  }

  auto& g = rc.grid;
  g.L = number("L").value_or(g.L);
  g.dx = number("dx").value_or(g.dx);
  g.dt = number("dt").value_or(g.dt);
  g.theta = number("theta").value_or(g.theta);
  g.t_end = number("t_end").value_or(g.t_end);
  if (!(g.L > 0.0)) throw ConfigError("L must be positive", line_of("L"));
  if (!(g.dx > 0.0)) throw ConfigError("dx must be positive", line_of("dx"));
  if (!(g.dt > 0.0)) throw ConfigError("dt must be positive", line_of("dt"));
  if (!(g.theta >= 0.0 && g.theta <= 1.0))
    throw ConfigError("theta must lie in [0, 1]", line_of("theta"));
  if (!(g.t_end > 0.0)) throw ConfigError("t_end must be positive", line_of("t_end"));

  if (const Entry* e = find("snapshot_times")) {
    g.snapshot_times.clear();
    std::string_view rest = e->value;
    while (true) {
      const auto comma = rest.find(',');
      g.snapshot_times.push_back(parse_number(rest.substr(0, comma), "snapshot_times", e->line));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }

  double T_i = number("T_i").value_or(*problem == Problem::ibvp1 ? base.T_i : 0.0);
  double T_s = number("T_s").value_or(0.0);
  if (*problem == Problem::ibvp2 && T_i != 0.0)
    throw ConfigError("ibvp2 starts from T = 0; T_i must be 0", line_of("T_i"));
  const double q0pp = number("q0pp").value_or(0.0);

  try {
    rc.thermal = ThermalConfig::make(alpha, kcond, rho, c_heat, T_i, T_s, q0pp, g.L);
  } catch (const NonphysicalParams& ex) {
    throw ConfigError(ex.what(), line_of("alpha"));
  }
  try {
    g.validate(rc.thermal.alpha);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& ex) {
    throw ConfigError(ex.what(), line_of("dt"));
  }

  if (const Entry* e = find("output_dir")) {
    rc.output_dir = e->value;
    if (std::filesystem::exists(rc.output_dir) && !std::filesystem::is_directory(rc.output_dir))
      throw ConfigError("output_dir exists and is not a directory", e->line);
  }
  return rc;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace lieheat
