#include <iostream>

#include "diraclab/cli/config.hpp"
#include "diraclab/cli/run.hpp"

int main(int argc, char** argv) {
  const auto parsed = dlab::cli::parse_command_line(argc, argv);
  if (parsed.exit_now) return parsed.exit_code;
  return dlab::cli::run(parsed.config, std::cout);
}
