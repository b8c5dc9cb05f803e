// Copyright 2026 The dhg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <string>
#include <string_view>

#include "dhg/types.h"

namespace dhg {

/// Accepts integer epoch seconds ("1564632000") or ISO-8601 UTC
/// ("2019-08-01T04:00:00", optional fractional seconds, optional "Z" or
/// "+00:00"; a space may replace the "T"; a bare date means midnight).
/// Throws Error(kBadTimestamp).
Timestamp parse_timestamp(std::string_view text);

/// "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(Timestamp t);

}  // namespace dhg
