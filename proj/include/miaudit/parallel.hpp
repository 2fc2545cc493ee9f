// Copyright 2026 The mi-audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "miaudit/common.hpp"

#include <functional>

namespace miaudit {

/// 0 means "all hardware threads".
unsigned resolve_threads(unsigned requested);

/// Runs body(begin, end) over contiguous blocks of [0, count) on up to
/// `threads` workers. If any block throws, the exception from the block with
/// the lowest begin index is rethrown after all workers have joined.
void parallel_for(Index count, unsigned threads,
                  const std::function<void(Index begin, Index end)>& body);

}  // namespace miaudit
