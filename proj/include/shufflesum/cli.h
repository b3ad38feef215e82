// Copyright 2026 The shufflesum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHUFFLESUM_CLI_H_
#define SHUFFLESUM_CLI_H_

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace shufflesum::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;  // a checked bound or invariant failed
inline constexpr int kExitUsage = 2;      // invalid or over-budget parameters

// Entry point shared by the binary and the tests. `args` excludes argv[0].
//
//   plan     --sigma S --n N (--m M | --m-bits B) [--format F]
//   simulate --n N --k K (--m M | --m-bits B) [--variant plain|randomized]
//            [--seed S] [--runs R] [--inputs x1,x2,...] [--out PATH]
//   verify   graph-dist|graph-exp|tv-exact|chain --n N --k K
//            [--m M | --m-bits B] [--samples S] [--seed S] [--shards T]
//
// F is table (default), json or csv.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Depth-first (path, value) pairs of every scalar in `j`; object keys and
// array indices are joined with '.'. Strings are emitted unquoted, other
// scalars via dump(). Arrays named "histogram" are skipped when
// `skip_histogram` is set.
std::vector<std::pair<std::string, std::string>> Flatten(
    const nlohmann::json& j, bool skip_histogram = false);

// Emitters used by --format. A report carrying a "histogram" array is
// written as "# path=value" metadata lines followed by a
// c,count,frequency,lemma4_bound table; any other report as field,value rows.
std::string ToCsv(const nlohmann::json& report);
std::string ToTable(const nlohmann::json& report);

}  // namespace shufflesum::cli

#endif  // SHUFFLESUM_CLI_H_
