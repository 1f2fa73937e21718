// Copyright 2026 The hbepp-link Authors
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

// hbepp-link <subcommand> [--config FILE] [--set key=value]... [--out FILE]

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hbepp/errors.hpp"
#include "hbepp/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write to a sibling temporary, then rename over the target.
void write_atomically(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Click statistics, CHSH values and BBM92 key rates for a bright entangled pair "
               "source over asymmetric lossy channels"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  bool print_config = false;

  const char* descriptions[] = {
      "16 click-pattern probabilities (optionally swept)",
      "CHSH value vs gain for the Squash and Discard models",
      "QBER, sifted and secure key rate vs gain",
      "Secure-rate-optimal nonlinear gain for the configured channel",
      "Fixed-brightness vs optimal secure rate along Bob's loss",
      "Maximum deviation between the closed form and the Fock-space oracle",
  };
  std::size_t i = 0;
  for (std::string_view name : hbepp::kSubcommands) {
    CLI::App* sub = app.add_subcommand(std::string(name), descriptions[i++]);
    sub->add_option("--config", config_path, "key = value scenario file");
    sub->add_option("--set", overrides, "override one key, e.g. --set source.g=0.3")
        ->allow_extra_args(false);
    sub->add_option("--out", out_path, "write results to FILE instead of stdout");
    sub->add_flag("--print-config", print_config, "echo the resolved configuration to stderr");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    hbepp::ScenarioConfig config;
    if (!config_path.empty()) config = hbepp::parse_config(read_file(config_path), config);
    if (!overrides.empty()) {
      std::string text;
      for (const std::string& o : overrides) text += o + "\n";
      config = hbepp::parse_config(text, config);
    }
    if (print_config) std::cerr << hbepp::serialize_config(config);

    const std::string name = app.get_subcommands().front()->get_name();
    const std::string result = hbepp::run_subcommand(name, config);
    if (out_path.empty()) {
      std::cout << result;
      std::cout.flush();
    } else {
      write_atomically(out_path, result);
    }
  } catch (const std::exception& e) {
    std::cerr << "hbepp-link: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
