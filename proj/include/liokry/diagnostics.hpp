// Copyright 2026 The liokry Authors
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

#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace liokry {

// Non-fatal conditions (truncation tails, degenerate null spaces, logarithm
// winding) are reported through a process-wide sink. The default prints to
// stderr; tests and the CLI install their own.
using WarningSink = std::function<void(std::string_view code, const std::string& message)>;

void set_warning_sink(WarningSink sink);
void reset_warning_sink();
void warn(std::string_view code, const std::string& message);

/// Installs a sink for the lifetime of the guard and restores the previous one.
class ScopedWarningSink {
 public:
  explicit ScopedWarningSink(WarningSink sink);
  ~ScopedWarningSink();
  ScopedWarningSink(const ScopedWarningSink&) = delete;
  ScopedWarningSink& operator=(const ScopedWarningSink&) = delete;

 private:
  WarningSink previous_;
};

}  // namespace liokry
