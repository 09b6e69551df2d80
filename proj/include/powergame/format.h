// Copyright 2026 The powergame Authors
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

#ifndef POWERGAME_FORMAT_H_
#define POWERGAME_FORMAT_H_

#include <string>

namespace powergame {

// Shortest decimal string that parses back to exactly `value` (std::to_chars
// without a precision argument). Non-finite values print as "nan", "inf" or
// "-inf".
std::string FormatNumber(double value);

}  // namespace powergame

#endif  // POWERGAME_FORMAT_H_
