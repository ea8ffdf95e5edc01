#include <string>
#include <vector>

#include "sullivan/cli.hpp"

int main(int argc, char** argv) {
  return sullivan::run_command(std::vector<std::string>(argv + 1, argv + argc));
}
