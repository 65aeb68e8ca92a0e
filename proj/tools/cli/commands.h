// Copyright 2026 The herodet Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HERODET_TOOLS_CLI_COMMANDS_H_
#define HERODET_TOOLS_CLI_COMMANDS_H_

#include <functional>
#include <vector>

#include "CLI11.hpp"

namespace herodet::cli {

// A registered subcommand and the action to run when it was selected.
struct Command {
  CLI::App* app;
  std::function<int()> run;
};

void add_frame_commands(CLI::App& root, std::vector<Command>& out);
void add_data_commands(CLI::App& root, std::vector<Command>& out);

// Parses argv and runs the selected subcommand; returns the exit code.
int run_cli(int argc, char** argv);

}  // namespace herodet::cli

#endif  // HERODET_TOOLS_CLI_COMMANDS_H_
