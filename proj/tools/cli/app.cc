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

#include <iostream>

#include "cli/commands.h"

namespace herodet::cli {

int run_cli(int argc, char** argv) {
  CLI::App app{"Blood-bar hero detection and recognition for game videos",
               "herodet"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "herodet 0.1.0");
  std::vector<Command> commands;
  add_frame_commands(app, commands);
  add_data_commands(app, commands);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; every usage error exits 2.
    return app.exit(e) == 0 ? 0 : 2;
  }
  for (const Command& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      return c.run();
    } catch (const std::exception& e) {
      std::cerr << "herodet " << c.app->get_name() << ": error: " << e.what()
                << "\n";
      return 1;
    }
  }
  return 1;
}

}  // namespace herodet::cli
