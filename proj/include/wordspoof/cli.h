// Copyright 2026 The wordspoof Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WORDSPOOF_CLI_H_
#define WORDSPOOF_CLI_H_

#include <iosfwd>

namespace wordspoof {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;  // bad flags or unusable input
inline constexpr int kExitIo = 3;     // output could not be written

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wordspoof

#endif  // WORDSPOOF_CLI_H_
