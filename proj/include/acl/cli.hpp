#pragma once

// Command-line front end. `run_cli` returns the process exit code:
// 0 ok, 1 validation failure, 2 parse error, 3 capability missing.

#include <iosfwd>
#include <string>
#include <vector>

#include "acl/category.hpp"

namespace acl {

/// "n->m:digits" as a map of finite sets or ordinals ("set" or "ord").
Morphism parse_fin_map(const std::string& category, const std::string& text);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acl
