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


#include <chrono>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "cli_commands.hpp"
#include "cli_support.hpp"

namespace {

struct Bound {
  const rdscli::Command* command = nullptr;
  CLI::App* sub = nullptr;
  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> flags;
  std::string config;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace rdscli;

  CLI::App app{"Random Dirichlet series experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rds_version());

  std::vector<std::unique_ptr<Bound>> bound;
  for (const auto& cmd : commands()) {
    auto b = std::make_unique<Bound>();
    b->command = &cmd;
    b->sub = app.add_subcommand(cmd.name, cmd.description);
    for (const auto& spec : cmd.options) {
      std::string help = spec.help;
      if (spec.required) {
        help += " (required)";
      } else if (!spec.fallback.empty()) {
        help += " [" + spec.fallback + "]";
      }
      b->flags[spec.name] = b->sub->add_option("--" + spec.name, b->raw[spec.name], help);
    }
    b->sub->add_option("--config", b->config, "key = value file; flags win");
    bound.push_back(std::move(b));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  for (const auto& b : bound) {
    if (!b->sub->parsed()) continue;
    const Command& cmd = *b->command;
    try {
      Options opts(cmd.name, cmd.options);
      for (const auto& [name, opt] : b->flags) {
        if (opt->count() > 0) opts.set_flag(name, b->raw[name]);
      }
      if (!b->config.empty()) opts.merge_config_file(b->config);
      opts.finalize();
      const std::int64_t threads = opts.integer("threads");
      if (threads < 0 || threads > 4096) throw UsageError("--threads out of range");
      rds_set_threads(static_cast<unsigned>(threads));

      const auto start = std::chrono::steady_clock::now();
      const RunResult result = cmd.run(opts);
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_outputs(opts, result, wall);
      for (const auto& c : result.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << format_real(c.value)
                  << " tolerance=" << format_real(c.tolerance) << "\n";
      }
      return result.all_passed() ? kExitPass : kExitCheckFailed;
    } catch (const UsageError& e) {
      std::cerr << "rdseries " << cmd.name << ": " << e.what() << "\n";
      return kExitUsage;
    } catch (const LibraryError& e) {
      std::cerr << "rdseries " << cmd.name << ": " << rds_status_name(e.status()) << ": "
                << e.what() << "\n";
      if (e.status() == RDS_ERR_FEASIBILITY) {
        std::cerr << "  minimal log N: " << format_real(rds_last_error_value())
                  << "; largest usable s_big: " << format_real(rds_last_error_aux()) << "\n";
      }
      return kExitUsage;
    } catch (const std::exception& e) {
      std::cerr << "rdseries " << cmd.name << ": internal error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return kExitUsage;
}
