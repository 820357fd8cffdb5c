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


// Plumbing shared by the subcommands: option tables merged from flags and a
// key=value config file, in-memory CSV tables and the JSON summary.

#ifndef RDSERIES_TOOLS_CLI_SUPPORT_HPP_
#define RDSERIES_TOOLS_CLI_SUPPORT_HPP_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdseries/rdseries.h"

namespace rdscli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;

// Bad flags, bad config lines, infeasible requests: exit 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A non-OK status from the library, message kept verbatim.
class LibraryError : public std::runtime_error {
 public:
  LibraryError(rds_status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  rds_status status() const { return status_; }

 private:
  rds_status status_;
};

void check(rds_status status);

struct OptionSpec {
  std::string name;  // without leading dashes
  std::string help;
  std::string fallback;  // empty + required = must be supplied
  bool required = false;
};

struct Value {
  std::string text;
  std::string origin;  // "--name", "config line N" or "default"
};

class Options {
 public:
  Options(std::string command, std::vector<OptionSpec> specs);

  const std::string& command() const { return command_; }
  const std::vector<OptionSpec>& specs() const { return specs_; }

  void set_flag(const std::string& name, const std::string& text);
  // Reads key=value lines ('#' comments). Flags already set win.
  void merge_config_file(const std::string& path);
  // Fills defaults; throws UsageError naming every missing required option.
  void finalize();

  bool has(const std::string& name) const;
  std::string str(const std::string& name) const;
  double real(const std::string& name) const;
  std::int64_t integer(const std::string& name) const;
  std::uint64_t unsigned_integer(const std::string& name) const;
  std::vector<double> real_list(const std::string& name) const;
  // "lo:hi,lo:hi"
  std::vector<std::pair<double, double>> range_list(const std::string& name) const;

  // Resolved values, for the summary echo.
  const std::map<std::string, Value>& values() const { return values_; }

 private:
  const OptionSpec* find(const std::string& name) const;
  const Value& get(const std::string& name) const;
  [[noreturn]] void bad(const std::string& name, const std::string& why) const;

  std::string command_;
  std::vector<OptionSpec> specs_;
  std::map<std::string, Value> values_;
};

// Round-trip decimal text of a double.
std::string format_real(double x);

class Table {
 public:
  Table(std::string file_name, std::vector<std::string> header);

  Table& row();
  Table& add(double x);
  Table& add(std::uint64_t x);
  Table& add(const std::string& s);

  const std::string& file_name() const { return file_name_; }
  // RFC-4180 text, CRLF line ends.
  std::string render() const;

 private:
  std::string file_name_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
};

struct RunResult {
  std::vector<Table> tables;
  std::vector<Check> checks;
  bool all_passed() const;
};

// Creates the output directory, writes every table and summary.json.
void write_outputs(const Options& opts, const RunResult& result, double wall_seconds);

// Deterministic uniform draws for randomized trial configurations.
class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed);
  double uniform();                          // [0, 1)
  double uniform(double lo, double hi);      // [lo, hi)
  std::uint64_t below(std::uint64_t bound);  // [0, bound)

 private:
  std::uint64_t state_;
};

// Owning handle wrappers.
struct Innovation {
  rds_innovation* ptr = nullptr;
  explicit Innovation(const Options& opts);
  Innovation(const std::string& family, double sigma, double p);
  ~Innovation() { rds_innovation_destroy(ptr); }
  Innovation(const Innovation&) = delete;
  Innovation& operator=(const Innovation&) = delete;
};

}  // namespace rdscli

#endif  // RDSERIES_TOOLS_CLI_SUPPORT_HPP_
