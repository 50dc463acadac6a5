#include <iostream>

#include "mixsim/cli.hpp"

int main(int argc, char** argv) {
  mixsim::cli::CliConfig config;
  try {
    config = mixsim::cli::parse_args(argc, argv);
  } catch (const mixsim::cli::CliExit& e) {
    (e.status() == 0 ? std::cout : std::cerr) << e.text();
    return e.status();
  }
  return mixsim::cli::run(config, std::cout, std::cerr);
}
