#pragma once

namespace spdc {

/// Full command-line front end; returns the process exit code.
/// 0 = success, 2 = usage/config error, 3 = data error.
int run_cli(int argc, const char* const* argv);

}  // namespace spdc
