#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyx::cli {

/// Runs one `hyx` invocation. args excludes the program name.
/// Returns 0 on success, 1 on a domain error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace hyx::cli
