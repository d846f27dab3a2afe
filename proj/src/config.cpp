// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace hs {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno != 0)
    throw Error(ErrorKind::Config, "'" + key + "' expects a number, got '" + v + "'");
  return x;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno != 0 || x < 0)
    throw Error(ErrorKind::Config, "'" + key + "' expects a nonnegative integer, got '" + v + "'");
  return static_cast<std::size_t>(x);
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const std::string& item : split(v, ',')) out.push_back(to_double(key, item));
  return out;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open table '" + path + "'");
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(split(line, ','));
  }
  // A first row that does not start with a number is a header.
  if (!rows.empty() && !rows[0].empty()) {
    const std::string& first = rows[0][0];
    char* end = nullptr;
    std::strtod(first.c_str(), &end);
    if (first.empty() || *end != '\0') rows.erase(rows.begin());
  }
  return rows;
}

std::string resolve(const std::string& base, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base) / p).string();
}

std::vector<std::pair<double, double>> read_profile(const std::string& key, const std::string& path) {
  std::vector<std::pair<double, double>> table;
  for (const auto& row : read_csv(path)) {
    if (row.size() != 2) throw Error(ErrorKind::Config, "profile table rows need omega,value");
    table.emplace_back(to_double(key, row[0]), to_double(key, row[1]));
  }
  std::sort(table.begin(), table.end());
  return table;
}

IncomingSpec::Kind family(const std::string& name) {
  if (name == "null") return IncomingSpec::Kind::Null;
  if (name == "plus") return IncomingSpec::Kind::Plus;
  if (name == "minus") return IncomingSpec::Kind::Minus;
  throw Error(ErrorKind::Config, "unknown mode family '" + name + "'");
}

void set_incoming(RunConfig& cfg, const std::string& value) {
  IncomingSpec& in = cfg.boundary.incoming;
  const std::vector<std::string> parts = split(lower(value), ':');
  auto index = [&](const std::string& s) {
    const std::size_t i = to_count("boundary.incoming", s);
    if (i == 0) throw Error(ErrorKind::Config, "mode indices start at 1");
    return i - 1;
  };
  using Kind = IncomingSpec::Kind;
  if (parts.size() == 1 && parts[0] == "zero") {
    in.kind = Kind::Zero;
  } else if (parts.size() == 1 && parts[0] == "polynomial") {
    in.kind = Kind::Polynomial;
  } else if (parts.size() == 1 && parts[0] == "table") {
    in.kind = Kind::Table;
  } else if (parts.size() == 2) {
    in.kind = family(parts[0]);
    in.index = index(parts[1]);
  } else if (parts.size() == 3 && parts[0] == "shifted") {
    in.kind = Kind::Shifted;
    in.shifted_of = family(parts[1]);
    in.index = index(parts[2]);
  } else {
    throw Error(ErrorKind::Config, "cannot parse boundary.incoming '" + value + "'");
  }
}

}  // namespace

std::vector<std::size_t> parse_count_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const std::string& item : split(text, ',')) out.push_back(to_count("n_list", item));
  return out;
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = lower(trim(raw_key));
  const std::string value = trim(raw_value);
  if (key == "model.name") {
    cfg.model = parse_model_name(lower(value));
  } else if (key == "model.n") {
    cfg.n = to_count(key, value);
  } else if (key == "model.k") {
    cfg.k = to_count(key, value);
  } else if (key == "phonon.n_omega" || key == "model.n_omega") {
    cfg.phonon.n_omega = to_count(key, value);
  } else if (key == "phonon.omega_min") {
    cfg.phonon.omega_min = to_double(key, value);
  } else if (key == "phonon.omega_max") {
    cfg.phonon.omega_max = to_double(key, value);
  } else if (key == "phonon.profile") {
    if (lower(value) != "example431")
      throw Error(ErrorKind::Config, "unknown phonon preset '" + value + "'");
    cfg.phonon.c_over_tau = Profile{"example431", {}};
    cfg.phonon.beta = Profile{"example431", {}};
  } else if (key == "phonon.c_over_tau") {
    cfg.phonon.c_over_tau = Profile{"", read_profile(key, resolve(cfg.base_dir, value))};
  } else if (key == "phonon.beta") {
    cfg.phonon.beta = Profile{"", read_profile(key, resolve(cfg.base_dir, value))};
  } else if (key == "solver.alpha") {
    cfg.alpha = to_double(key, value);
  } else if (key == "boundary.alpha_d") {
    cfg.boundary.alpha_d = to_double(key, value);
  } else if (key == "boundary.alpha_s") {
    cfg.boundary.alpha_s = to_double(key, value);
  } else if (key == "boundary.incoming") {
    set_incoming(cfg, value);
  } else if (key == "boundary.polynomial") {
    cfg.boundary.incoming.polynomial.clear();
    for (const std::string& species : split(value, ';'))
      cfg.boundary.incoming.polynomial.push_back(to_doubles(key, species));
  } else if (key == "boundary.table") {
    cfg.boundary.incoming.table.clear();
    for (const auto& row : read_csv(resolve(cfg.base_dir, value))) {
      IncomingSpec::TableRow r;
      if (row.size() == 3) {
        r.mu = to_double(key, row[0]);
        r.species = to_count(key, row[1]);
        r.value = to_double(key, row[2]);
      } else if (row.size() == 4) {
        r.mu = to_double(key, row[0]);
        r.second = to_double(key, row[1]);
        r.species = to_count(key, row[2]);
        r.value = to_double(key, row[3]);
      } else {
        throw Error(ErrorKind::Config, "incoming table rows need mu[,v_y|omega],species,value");
      }
      cfg.boundary.incoming.table.push_back(r);
    }
  } else if (key == "output.dir") {
    cfg.out_dir = resolve(cfg.base_dir, value);
  } else if (key == "output.x_grid") {
    cfg.x_grid.clear();
    if (lower(value) != "auto") cfg.x_grid = to_doubles(key, value);
  } else if (key == "run.seed") {
    cfg.seed = to_count(key, value);
  } else if (key == "run.n_list") {
    cfg.n_list = parse_count_list(value);
  } else {
    throw Error(ErrorKind::Config, "unknown configuration key '" + key + "'");
  }
}

void RunConfig::validate() const {
  if (n < 1) throw Error(ErrorKind::Config, "model.N must be at least 1");
  if (model == ModelKind::Bgk2d && k < 1) throw Error(ErrorKind::Config, "model.K must be at least 1");
  if (model == ModelKind::Phonon && phonon.n_omega < 2)
    throw Error(ErrorKind::Config, "phonon.n_omega must be at least 2");
  if (!(alpha >= 0.0)) throw Error(ErrorKind::Config, "solver.alpha must be nonnegative");
  boundary.validate();
  for (double x : x_grid)
    if (!(x >= 0.0)) throw Error(ErrorKind::Config, "output.x_grid entries must be nonnegative");
  if (n_list.size() < 2) throw Error(ErrorKind::Config, "run.n_list needs two or more entries");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw Error(ErrorKind::Config, "run.n_list entries must be positive");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw Error(ErrorKind::Config, "run.n_list must be strictly ascending");
  }
}

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  RunConfig cfg;
  cfg.base_dir = base_dir;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Only '#' starts a comment: ';' separates polynomial species.
    std::string body = line;
    const auto comment = body.find('#');
    if (comment != std::string::npos) body = body.substr(0, comment);
    body = trim(body);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']')
        throw Error(ErrorKind::Config, "line " + std::to_string(lineno) + ": malformed section");
      section = lower(trim(body.substr(1, body.size() - 2)));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::Config, "line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw Error(ErrorKind::Config, "line " + std::to_string(lineno) + ": key outside a section");
    try {
      apply_setting(cfg, section + "." + trim(body.substr(0, eq)), body.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(lineno) + ": " + e.what(), e.value(), e.index());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::filesystem::path p(path);
  const std::string base = p.has_parent_path() ? p.parent_path().string() : ".";
  return parse_config(buf.str(), base);
}

}  // namespace hs
