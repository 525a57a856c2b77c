#include <iostream>

#include "mecsched/cli.hpp"

int main(int argc, char** argv) {
  return mecsched::cli_main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
