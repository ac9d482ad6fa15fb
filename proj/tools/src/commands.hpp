#pragma once

namespace antbif::cli {

// Exit codes: 0 success, 2 validation failure, 3 numerical failure.
int run(int argc, char** argv);

}  // namespace antbif::cli
