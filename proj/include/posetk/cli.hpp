#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace posetk {

enum class Command { quotient, poset_check, bratteli, spectrum, k0, cone, member, roundtrip };
enum class OutputFormat { text, dot, json_lines };

struct RunConfig {
  Command command = Command::poset_check;
  std::string input_path;
  std::optional<std::string> matrix_path;
  std::vector<std::string> vectors;
  std::optional<std::size_t> depth;
  int m_max = 64;
  double tolerance = 1e-12;
  std::optional<std::string> output;
  OutputFormat format = OutputFormat::text;
};

// Exit status: 0 on success, 1 on domain errors, 2 on parse errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Argument parsing plus run(); --help lists every flag.
int cli_main(int argc, char** argv);

}  // namespace posetk
