#pragma once

namespace ektau {

/// Entry point of the command-line tool; returns the process exit code
/// (0 ok / verification passed, 2 verification failed, 1 usage or domain
/// error).
int run_cli(int argc, const char* const* argv);

}  // namespace ektau
