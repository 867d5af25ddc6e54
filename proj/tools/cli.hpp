/**
 * Copyright 2026 The Biphoton Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace biphoton::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kIoError = 3, kContractMismatch = 4 };

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  /// Whether `in` carries piped records (simulate forwards them).
  bool in_is_pipe = false;
};

/// `args` excludes the program name.  `env_seed` is the value of
/// BIPHOTON_SEED, if set.
int run(const std::vector<std::string>& args, Streams io,
        const std::optional<std::string>& env_seed = std::nullopt);

}  // namespace biphoton::cli
