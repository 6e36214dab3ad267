#pragma once

// Batch command-line driver.  Subcommands: classify, census, genus,
// verify, spectrum, scan, formula, catalog list.  Exit codes: 0 success,
// 2 usage/parse error, 3 non-integral engine genus, 4 closure cap
// exceeded.

namespace hq {

int run_cli(int argc, const char* const* argv);

}  // namespace hq
