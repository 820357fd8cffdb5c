// Copyright 2026 The rdseries Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli_support.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace rdscli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

template <class T>
bool parse_number(const std::string& text, T& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto r = std::from_chars(first, last, out);
  return r.ec == std::errc() && r.ptr == last && first != last;
}

}  // namespace

void check(rds_status status) {
  if (status != RDS_OK) throw LibraryError(status, rds_last_error());
}

Options::Options(std::string command, std::vector<OptionSpec> specs)
    : command_(std::move(command)), specs_(std::move(specs)) {}

const OptionSpec* Options::find(const std::string& name) const {
  for (const auto& s : specs_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

void Options::set_flag(const std::string& name, const std::string& text) {
  values_[name] = {text, "--" + name};
}

void Options::merge_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = path + ":" + std::to_string(line_no) + ": ";
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(where + "expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string text = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(where + "empty key");
    if (key == "config" || find(key) == nullptr) {
      throw UsageError(where + "unknown key '" + key + "' for command '" + command_ + "'");
    }
    const auto it = values_.find(key);
    if (it != values_.end() && it->second.origin.rfind("--", 0) == 0) continue;
    values_[key] = {text, "config line " + std::to_string(line_no)};
  }
}

void Options::finalize() {
  std::string missing;
  for (const auto& s : specs_) {
    if (values_.count(s.name)) continue;
    if (s.required) {
      missing += (missing.empty() ? "--" : ", --") + s.name;
      continue;
    }
    values_[s.name] = {s.fallback, "default"};
  }
  if (!missing.empty()) {
    throw UsageError("missing required option(s) for '" + command_ + "': " + missing);
  }
}

bool Options::has(const std::string& name) const { return values_.count(name) != 0; }

const Value& Options::get(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) throw std::logic_error("option not registered: " + name);
  return it->second;
}

void Options::bad(const std::string& name, const std::string& why) const {
  const Value& v = get(name);
  throw UsageError("invalid value '" + v.text + "' for " + name + " (" + v.origin +
                   "): " + why);
}

std::string Options::str(const std::string& name) const { return get(name).text; }

double Options::real(const std::string& name) const {
  double x = 0.0;
  if (!parse_number(get(name).text, x) || !std::isfinite(x)) {
    bad(name, "expected a finite real number");
  }
  return x;
}

std::int64_t Options::integer(const std::string& name) const {
  std::int64_t x = 0;
  if (!parse_number(get(name).text, x)) bad(name, "expected an integer");
  return x;
}

std::uint64_t Options::unsigned_integer(const std::string& name) const {
  std::uint64_t x = 0;
  if (!parse_number(get(name).text, x)) bad(name, "expected a non-negative integer");
  return x;
}

std::vector<double> Options::real_list(const std::string& name) const {
  std::vector<double> out;
  for (const auto& item : split(get(name).text, ',')) {
    double x = 0.0;
    if (!parse_number(item, x) || !std::isfinite(x)) {
      bad(name, "expected a comma-separated list of reals");
    }
    out.push_back(x);
  }
  if (out.empty()) bad(name, "empty list");
  return out;
}

std::vector<std::pair<double, double>> Options::range_list(const std::string& name) const {
  std::vector<std::pair<double, double>> out;
  for (const auto& item : split(get(name).text, ',')) {
    const auto parts = split(item, ':');
    double lo = 0.0, hi = 0.0;
    if (parts.size() != 2 || !parse_number(parts[0], lo) || !parse_number(parts[1], hi) ||
        !(lo < hi)) {
      bad(name, "expected lo:hi pairs with lo < hi");
    }
    out.emplace_back(lo, hi);
  }
  if (out.empty()) bad(name, "empty list");
  return out;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

Table::Table(std::string file_name, std::vector<std::string> header)
    : file_name_(std::move(file_name)), header_(std::move(header)) {}

Table& Table::row() {
  rows_.emplace_back();
  rows_.back().reserve(header_.size());
  return *this;
}

Table& Table::add(double x) { return add(format_real(x)); }

Table& Table::add(std::uint64_t x) { return add(std::to_string(x)); }

Table& Table::add(const std::string& s) {
  if (rows_.empty()) row();
  rows_.back().push_back(s);
  return *this;
}

std::string Table::render() const {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += field(cells[i]);
    }
    return out + "\r\n";
  };
  std::string out = line(header_);
  for (const auto& r : rows_) {
    if (r.size() != header_.size()) {
      throw std::logic_error(file_name_ + ": row width does not match header");
    }
    out += line(r);
  }
  return out;
}

bool RunResult::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

void write_outputs(const Options& opts, const RunResult& result, double wall_seconds) {
  namespace fs = std::filesystem;
  const fs::path dir = opts.str("out");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory '" + dir.string() + "'");

  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw UsageError("cannot write '" + (dir / name).string() + "'");
  };
  for (const auto& t : result.tables) write(t.file_name(), t.render());

  auto number = [](double x) {
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
  };
  nlohmann::json config = nlohmann::json::object();
  config["command"] = opts.command();
  for (const auto& [k, v] : opts.values()) config[k] = v.text;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : result.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"value", number(c.value)},
                      {"tolerance", number(c.tolerance)}});
  }
  nlohmann::json summary = {{"config", config},
                            {"checks", checks},
                            {"passed", result.all_passed()},
                            {"seed", opts.unsigned_integer("seed")},
                            {"version", rds_version()},
                            {"wall_seconds", wall_seconds}};
  write("summary.json", summary.dump(2) + "\n");
}

TrialRng::TrialRng(std::uint64_t seed) : state_(seed) {}

double TrialRng::uniform() {
  // SplitMix64
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double TrialRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t TrialRng::below(std::uint64_t bound) {
  const auto r = static_cast<std::uint64_t>(uniform() * static_cast<double>(bound));
  return r < bound ? r : bound - 1;
}

Innovation::Innovation(const Options& opts)
    : Innovation(opts.str("innovation"), opts.real("sigma"), opts.real("p")) {}

Innovation::Innovation(const std::string& family, double sigma, double p) {
  check(rds_innovation_from_name(family.c_str(), sigma, p, &ptr));
}

}  // namespace rdscli
