#include <iostream>
#include <string>
#include <vector>

#include "acl/cli.hpp"

int main(int argc, char** argv) {
  return acl::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
