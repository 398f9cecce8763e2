#pragma once

#include <iosfwd>

namespace qcqa {

/// Entry point of the qcqa tool: crawl, summarize, index, ask, serve, eval.
/// Returns 0 on success, 1 on a usage error and 2 on an I/O or format error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcqa
