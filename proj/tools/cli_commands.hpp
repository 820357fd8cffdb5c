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


#ifndef RDSERIES_TOOLS_CLI_COMMANDS_HPP_
#define RDSERIES_TOOLS_CLI_COMMANDS_HPP_

#include <string>
#include <vector>

#include "cli_support.hpp"

namespace rdscli {

struct Command {
  std::string name;
  std::string description;
  std::vector<OptionSpec> options;
  RunResult (*run)(const Options&);
};

const std::vector<Command>& commands();

RunResult run_covariance(const Options& opts);
RunResult run_flt(const Options& opts);
RunResult run_limit_sim(const Options& opts);
RunResult run_lil(const Options& opts);
RunResult run_zeros(const Options& opts);
RunResult run_lemmas(const Options& opts);

}  // namespace rdscli

#endif  // RDSERIES_TOOLS_CLI_COMMANDS_HPP_
