#pragma once

namespace satotate::cli {

/// Exit status: 0 success / all flags pass, 1 a verification flag failed,
/// 2 usage or input error, 3 data or I/O failure.
int run_cli(int argc, const char* const* argv);

}  // namespace satotate::cli
